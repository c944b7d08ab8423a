//! Exact Laurent polynomials in `A` with the loop variable `O` and the
//! arrow variables.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Circular component with `n` surviving zig-zags.
    K(u32),
    /// Long component with `n` surviving zig-zags; chirality is `0` when not tracked.
    L(u32, i8),
    /// Long component with zig-zags, enclosed by circular components.
    NL(u32, i8),
}

impl Var {
    fn mirrored(self) -> Var {
        match self {
            Var::K(n) => Var::K(n),
            Var::L(n, c) => Var::L(n, -c),
            Var::NL(n, c) => Var::NL(n, -c),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chir = |c: i8| match c {
            1 => "+",
            -1 => "-",
            _ => "",
        };
        match *self {
            Var::K(n) => write!(f, "K{n}"),
            Var::L(n, c) => write!(f, "L{n}{}", chir(c)),
            Var::NL(n, c) => write!(f, "NL{n}{}", chir(c)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: i32,
    pub o: u32,
    /// Sorted by variable, positive exponents.
    pub vars: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.a == 0 && self.o == 0 && self.vars.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars: BTreeMap<Var, u32> = self.vars.iter().copied().collect();
        for &(v, e) in &other.vars {
            *vars.entry(v).or_insert(0) += e;
        }
        Monomial { a: self.a + other.a, o: self.o + other.o, vars: vars.into_iter().collect() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Monomial::one(), 1)
    }

    pub fn constant(c: i64) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: i64) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// `A^k`
    pub fn a_pow(k: i32) -> Self {
        Poly::monomial(Monomial { a: k, ..Monomial::one() }, 1)
    }

    pub fn o() -> Self {
        Poly::monomial(Monomial { o: 1, ..Monomial::one() }, 1)
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial { vars: vec![(v, 1)], ..Monomial::one() }, 1)
    }

    /// Sum of `c * A^k` over the given pairs.
    pub fn laurent(terms: &[(i32, i64)]) -> Self {
        let mut p = Poly::zero();
        for &(k, c) in terms {
            p.add_term(Monomial { a: k, ..Monomial::one() }, c);
        }
        p
    }

    /// The loop value `d = -A^2 - A^-2`.
    pub fn loop_value() -> Self {
        Poly::laurent(&[(2, -1), (-2, -1)])
    }

    /// `d^k`, cached for small `k` by callers if needed.
    pub fn loop_pow(k: u32) -> Self {
        Poly::loop_value().pow(k)
    }

    /// Writhe normalization `(-A^3)^(-w)`.
    pub fn writhe_factor(w: i32) -> Self {
        let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
        Poly::laurent(&[(-3 * w, sign)])
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            let key = self.terms.iter().find(|(_, &v)| v == 0).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()) == Some(&1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: i64) -> Poly {
        let mut p = Poly::zero();
        for (m, v) in self.terms() {
            p.add_term(m.clone(), v * c);
        }
        p
    }

    /// Multiplies by `c * A^k`.
    pub fn shift(&self, k: i32, c: i64) -> Poly {
        let mut p = Poly::zero();
        for (m, v) in self.terms() {
            p.add_term(Monomial { a: m.a + k, ..m.clone() }, v * c);
        }
        p
    }

    /// Evaluates every monomial through `f` and sums.
    pub fn substitute(&self, f: impl Fn(&Monomial) -> Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            out += f(m).scale(c);
        }
        out
    }

    /// `A ↦ A^-1`.
    pub fn invert_a(&self) -> Poly {
        self.substitute(|m| Poly::monomial(Monomial { a: -m.a, ..m.clone() }, 1))
    }

    /// `O ↦ p`.
    pub fn substitute_o(&self, p: &Poly) -> Poly {
        self.substitute(|m| Poly::monomial(Monomial { o: 0, ..m.clone() }, 1) * p.pow(m.o))
    }

    /// Every arrow variable ↦ 1.
    pub fn forget_arrows(&self) -> Poly {
        self.substitute(|m| Poly::monomial(Monomial { vars: vec![], ..m.clone() }, 1))
    }

    /// `NLn± ↦ Ln±`.
    pub fn unnest(&self) -> Poly {
        self.map_vars(|v| match v {
            Var::NL(n, c) => Var::L(n, c),
            v => v,
        })
    }

    /// Chirality swap `Ln+ ↔ Ln-`.
    pub fn swap_chirality(&self) -> Poly {
        self.map_vars(Var::mirrored)
    }

    /// Drops chirality flags.
    pub fn forget_chirality(&self) -> Poly {
        self.map_vars(|v| match v {
            Var::L(n, _) => Var::L(n, 0),
            Var::NL(n, _) => Var::NL(n, 0),
            v => v,
        })
    }

    fn map_vars(&self, f: impl Fn(Var) -> Var) -> Poly {
        self.substitute(|m| {
            let mut out = Monomial { vars: vec![], ..m.clone() };
            for &(v, e) in &m.vars {
                out = out.mul(&Monomial { vars: vec![(f(v), e)], ..Monomial::one() });
            }
            Poly::monomial(out, 1)
        })
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p += rhs.clone();
        p
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in rhs.terms() {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec![];
        match self.a {
            0 => {}
            1 => parts.push("A".into()),
            k => parts.push(format!("A^{k}")),
        }
        match self.o {
            0 => {}
            1 => parts.push("O".into()),
            k => parts.push(format!("O^{k}")),
        }
        for (v, e) in &self.vars {
            if *e == 1 {
                parts.push(v.to_string());
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
