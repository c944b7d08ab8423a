//! Signed Gauss codes.
//!
//! Text form: a header `knotoid:` (open code, tail to head) or `knot:`
//! (cyclic code) followed by whitespace-separated tokens `[OU]<label>[+-]`.
//! A plane-mode diagram may add `outer=<k>` to pick its outer face.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pass {
    Over,
    Under,
}

impl Pass {
    pub fn flip(self) -> Pass {
        match self {
            Pass::Over => Pass::Under,
            Pass::Under => Pass::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub label: u32,
    pub pass: Pass,
    pub sign: Sign,
}

impl Token {
    pub fn new(label: u32, pass: Pass, sign: Sign) -> Self {
        Token { label, pass, sign }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Knotoid: tail to head.
    Open,
    /// Closed knot.
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussCode {
    pub shape: Shape,
    pub tokens: Vec<Token>,
}

impl GaussCode {
    pub fn new(shape: Shape, tokens: Vec<Token>) -> Result<Self> {
        let c = GaussCode { shape, tokens };
        c.validate()?;
        Ok(c)
    }

    pub fn trivial_knotoid() -> Self {
        GaussCode { shape: Shape::Open, tokens: vec![] }
    }

    pub fn unknot() -> Self {
        GaussCode { shape: Shape::Cyclic, tokens: vec![] }
    }

    pub fn crossing_count(&self) -> usize {
        self.tokens.len() / 2
    }

    pub fn is_open(&self) -> bool {
        self.shape == Shape::Open
    }

    /// Positions of the two occurrences of every label, in label order.
    pub fn occurrences(&self) -> BTreeMap<u32, (usize, usize)> {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (i, t) in self.tokens.iter().enumerate() {
            match first.get(&t.label) {
                Some(&j) => {
                    out.insert(t.label, (j, i));
                }
                None => {
                    first.insert(t.label, i);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen: BTreeMap<u32, Vec<&Token>> = BTreeMap::new();
        for t in &self.tokens {
            seen.entry(t.label).or_default().push(t);
        }
        for (label, ts) in &seen {
            if ts.len() != 2 {
                return Err(Error::Label(format!("label {label} appears {} times", ts.len())));
            }
            if ts[0].pass == ts[1].pass {
                let which = if ts[0].pass == Pass::Over { "Over" } else { "Under" };
                return Err(Error::Label(format!("label {label} appears twice as {which}")));
            }
            if ts[0].sign != ts[1].sign {
                return Err(Error::Label(format!("label {label} carries both signs")));
            }
        }
        Ok(())
    }

    /// Relabels crossings 1, 2, ... in order of first visit.
    pub fn normalized(&self) -> GaussCode {
        let mut map = BTreeMap::new();
        let mut next = 1;
        let tokens = self
            .tokens
            .iter()
            .map(|t| {
                let l = *map.entry(t.label).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                Token { label: l, ..*t }
            })
            .collect();
        GaussCode { shape: self.shape, tokens }
    }

    pub fn header(&self) -> &'static str {
        match self.shape {
            Shape::Open => "knotoid:",
            Shape::Cyclic => "knot:",
        }
    }

    pub fn body(&self) -> String {
        self.tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.pass {
            Pass::Over => 'O',
            Pass::Under => 'U',
        };
        let s = match self.sign {
            Sign::Pos => '+',
            Sign::Neg => '-',
        };
        write!(f, "{p}{}{s}", self.label)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            write!(f, "{}", self.header())
        } else {
            write!(f, "{} {}", self.header(), self.body())
        }
    }
}

/// Every code with `n` crossings labelled in order of first visit: all
/// chord patterns, all over/under choices and all signs.
pub fn all_codes(n: usize, shape: Shape) -> Vec<GaussCode> {
    fn patterns(seq: &mut Vec<u32>, open: &mut Vec<u32>, next: u32, n: u32, out: &mut Vec<Vec<u32>>) {
        if seq.len() == 2 * n as usize {
            out.push(seq.clone());
            return;
        }
        if next <= n {
            seq.push(next);
            open.push(next);
            patterns(seq, open, next + 1, n, out);
            open.pop();
            seq.pop();
        }
        for i in 0..open.len() {
            let l = open.remove(i);
            seq.push(l);
            patterns(seq, open, next, n, out);
            seq.pop();
            open.insert(i, l);
        }
    }
    let mut pats = vec![];
    patterns(&mut vec![], &mut vec![], 1, n as u32, &mut pats);
    let mut out = vec![];
    for pat in pats {
        for mask in 0..(1u32 << (2 * n)) {
            let tokens = pat
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    let first = pat.iter().position(|&x| x == l) == Some(i);
                    let over = (mask >> (l - 1)) & 1 == 0;
                    let pass = if over == first { Pass::Over } else { Pass::Under };
                    let sign = if (mask >> (n as u32 + l - 1)) & 1 == 0 { Sign::Pos } else { Sign::Neg };
                    Token::new(l, pass, sign)
                })
                .collect();
            out.push(GaussCode { shape, tokens });
        }
    }
    out
}

fn parse_token(s: &str) -> Result<Token> {
    let bad = || Error::Syntax(format!("bad token `{s}`"));
    let mut chars = s.chars();
    let pass = match chars.next() {
        Some('O') => Pass::Over,
        Some('U') => Pass::Under,
        _ => return Err(bad()),
    };
    let rest = chars.as_str();
    let sign = match rest.chars().last() {
        Some('+') => Sign::Pos,
        Some('-') => Sign::Neg,
        _ => return Err(bad()),
    };
    let digits = &rest[..rest.len() - 1];
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let label = digits.parse::<u32>().map_err(|_| bad())?;
    Ok(Token { label, pass, sign })
}

/// Parses a code together with an optional `outer=<k>` selector.
pub fn parse_gauss_with_outer(text: &str) -> Result<(GaussCode, Option<usize>)> {
    let text = text.trim();
    let (shape, body) = if let Some(rest) = text.strip_prefix("knotoid:") {
        (Shape::Open, rest)
    } else if let Some(rest) = text.strip_prefix("knot:") {
        (Shape::Cyclic, rest)
    } else {
        return Err(Error::Syntax("expected header `knotoid:` or `knot:`".into()));
    };
    let mut tokens = vec![];
    let mut outer = None;
    for word in body.split_whitespace() {
        if let Some(k) = word.strip_prefix("outer=") {
            if outer.is_some() {
                return Err(Error::Syntax("`outer=` given twice".into()));
            }
            outer = Some(
                k.parse::<usize>()
                    .map_err(|_| Error::Syntax(format!("bad outer face index `{k}`")))?,
            );
        } else {
            tokens.push(parse_token(word)?);
        }
    }
    Ok((GaussCode::new(shape, tokens)?, outer))
}

pub fn parse_gauss(text: &str) -> Result<GaussCode> {
    parse_gauss_with_outer(text).map(|(c, _)| c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_counts() {
        assert_eq!(all_codes(0, Shape::Open).len(), 1);
        assert_eq!(all_codes(1, Shape::Open).len(), 4);
        assert_eq!(all_codes(2, Shape::Open).len(), 3 * 16);
        assert!(all_codes(3, Shape::Open).iter().all(|c| c.validate().is_ok()));
    }

    #[test]
    fn parses_two_crossing_knotoid() {
        let c = parse_gauss("knotoid: O1+ U2+ U1+ O2+").unwrap();
        assert_eq!(c.tokens.len(), 4);
        assert_eq!(c.shape, Shape::Open);
        assert!(c.tokens.iter().all(|t| t.sign == Sign::Pos));
        let labels: Vec<u32> = c.occurrences().keys().copied().collect();
        assert_eq!(labels, vec![1, 2]);
        assert_eq!(c.to_string(), "knotoid: O1+ U2+ U1+ O2+");
    }

    #[test]
    fn empty_body() {
        let c = parse_gauss("knotoid:").unwrap();
        assert!(c.tokens.is_empty());
        assert_eq!(c.to_string(), "knotoid:");
    }

    #[test]
    fn label_errors() {
        assert!(matches!(parse_gauss("knotoid: O1+ O1+"), Err(Error::Label(_))));
        assert!(matches!(parse_gauss("knotoid: O1+ U1-"), Err(Error::Label(_))));
        assert!(matches!(parse_gauss("knotoid: O1+"), Err(Error::Label(_))));
        assert!(matches!(parse_gauss("knot: O1+ U1+ O1+"), Err(Error::Label(_))));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_gauss("O1+ U1+"), Err(Error::Syntax(_))));
        assert!(matches!(parse_gauss("knotoid: O1 U1+"), Err(Error::Syntax(_))));
        assert!(matches!(parse_gauss("knotoid: X1+ U1+"), Err(Error::Syntax(_))));
        assert!(matches!(parse_gauss("knotoid: O+ U+"), Err(Error::Syntax(_))));
        assert!(matches!(parse_gauss("knotoid: O1+ U1+ outer=x"), Err(Error::Syntax(_))));
    }

    #[test]
    fn outer_selector() {
        let (c, o) = parse_gauss_with_outer("knotoid: O1+ U1+ outer=2").unwrap();
        assert_eq!(c.crossing_count(), 1);
        assert_eq!(o, Some(2));
    }

    #[test]
    fn normalizes_labels() {
        let c = parse_gauss("knot: U7- O3+ O7- U3+").unwrap();
        assert_eq!(c.normalized().to_string(), "knot: U1- O2+ O1- U2+");
    }
}
