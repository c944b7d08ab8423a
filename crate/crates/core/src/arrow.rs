//! Arrow and loop arrow polynomials.
//!
//! A smoothing that joins two incoming or two outgoing darts is
//! disoriented and leaves a cusp on the new arc. Walking along a state
//! component, a cusp is recorded as `+1` when the arc turns counterclockwise
//! around its vertex (the cusp points to the left of the walk) and `-1`
//! otherwise. Adjacent cusps on the same side cancel; what survives on a
//! component alternates, and `2n` survivors give the variable of index `n`.
//! On the long component the first survivor fixes the chirality.

use std::collections::HashMap;

use crate::combmap::Dart;
use crate::diagram::{Diagram, DartRole};
use crate::error::Result;
use crate::poly::{Monomial, Poly, Var};
use crate::state::{fold_states, trace, Choice, Slots, StateComponent};

fn is_incoming(d: &Diagram, x: Dart) -> bool {
    matches!(d.dart_role(x), DartRole::In(_) | DartRole::Head)
}

/// Cusp word of a component in walking order.
pub fn cusp_word(d: &Diagram, comp: &StateComponent) -> Vec<i8> {
    let map = d.map();
    let n = comp.darts.len();
    let mut word = vec![];
    for i in 0..n {
        let x = comp.darts[i];
        let y = map.alpha(x);
        let z = if i + 1 < n {
            comp.darts[i + 1]
        } else if comp.long {
            break;
        } else {
            comp.darts[0]
        };
        if is_incoming(d, y) == is_incoming(d, z) {
            word.push(if map.sigma(y) == z { 1 } else { -1 });
        }
    }
    word
}

/// Cancels adjacent equal cusps; cyclically for closed components.
pub fn reduce_cusps(word: &[i8], cyclic: bool) -> Vec<i8> {
    let mut stack: Vec<i8> = vec![];
    for &c in word {
        if stack.last() == Some(&c) {
            stack.pop();
        } else {
            stack.push(c);
        }
    }
    if cyclic {
        while stack.len() >= 2 && stack.first() == stack.last() {
            stack.pop();
            stack.remove(0);
        }
    }
    stack
}

type Census = HashMap<(i32, u32, u32, Vec<(Var, u32)>), i64>;

fn arrow_census(d: &Diagram, chiral: bool, route: Option<&[Dart]>) -> Census {
    let slots = Slots::new(d);
    let n = d.crossing_count();
    let free: Vec<usize> = (0..n).collect();
    fold_states(
        n,
        &free,
        &[],
        |acc: &mut Census, ch| {
            let (comps, edge_comp) = trace(d, &slots, ch);
            let nests = match route {
                Some(r) => crate::brackets::nesting(r, &comps, &edge_comp),
                None => vec![false; comps.len()],
            };
            let q = nests.iter().filter(|&&x| x).count() as u32;
            let mut vars: Vec<Var> = vec![];
            for c in &comps {
                let word = cusp_word(d, c);
                debug_assert!(word.len() % 2 == 0, "odd cusp count");
                let red = reduce_cusps(&word, !c.long);
                if red.is_empty() {
                    continue;
                }
                let k = (red.len() / 2) as u32;
                if c.long {
                    let chir = if chiral { red[0] } else { 0 };
                    vars.push(if q > 0 { Var::NL(k, chir) } else { Var::L(k, chir) });
                } else {
                    vars.push(Var::K(k));
                }
            }
            vars.sort();
            let mut grouped: Vec<(Var, u32)> = vec![];
            for v in vars {
                match grouped.last_mut() {
                    Some((w, e)) if *w == v => *e += 1,
                    _ => grouped.push((v, 1)),
                }
            }
            let sigma: i32 = ch.iter().map(|&c| if c == Choice::A { 1 } else { -1 }).sum();
            let circles = comps.iter().filter(|c| !c.long).count() as u32;
            *acc.entry((sigma, circles - q, q, grouped)).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )
}

fn census_poly(c: Census, loops_offset: i32) -> Poly {
    let mut out = Poly::zero();
    for ((sigma, p, q, vars), count) in c {
        let p = (p as i32 + loops_offset).max(0) as u32;
        let m = Monomial { a: sigma, o: q, vars };
        out += (Poly::loop_pow(p) * Poly::monomial(m, 1)).scale(count);
    }
    out
}

/// Normalized arrow polynomial; with `chiral` the long variables carry chirality.
pub fn arrow_polynomial(d: &Diagram, chiral: bool) -> Poly {
    if d.map().num_darts() == 0 {
        return Poly::one();
    }
    let offset = if d.is_knotoid() { 0 } else { -1 };
    census_poly(arrow_census(d, chiral, None), offset) * Poly::writhe_factor(d.writhe())
}

/// Normalized loop arrow polynomial of a plane knotoid diagram: `O` per
/// circle enclosing the long component, `NL` for a long component with
/// zig-zags when such circles exist.
pub fn loop_arrow_polynomial(d: &Diagram, chiral: bool) -> Result<Poly> {
    let route = crate::brackets::plane_route(d)?;
    Ok(census_poly(arrow_census(d, chiral, Some(&route)), 0) * Poly::writhe_factor(d.writhe()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::normalized_bracket;

    #[test]
    fn reduction() {
        assert_eq!(reduce_cusps(&[1, 1], false), Vec::<i8>::new());
        assert_eq!(reduce_cusps(&[1, -1], false), vec![1, -1]);
        assert_eq!(reduce_cusps(&[1, -1, -1, 1], false), Vec::<i8>::new());
        assert_eq!(reduce_cusps(&[1, -1, 1], true), vec![-1]);
        assert_eq!(reduce_cusps(&[-1, 1, -1, 1], true), vec![-1, 1, -1, 1]);
    }

    #[test]
    fn collapses_to_bracket() {
        for s in [
            "knotoid: O1+ U2+ U1+ O2+",
            "knotoid: O1- U2- O3- U1- O2- U3-",
            "knot: O1+ U2+ O3+ U1+ O2+ U3+",
        ] {
            let d = Diagram::parse(s).unwrap();
            let a = arrow_polynomial(&d, true);
            assert_eq!(a.forget_arrows(), normalized_bracket(&d), "{s}");
        }
    }

    #[test]
    fn two_crossing_knotoid_has_zigzag() {
        let d = Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap();
        let a = arrow_polynomial(&d, false);
        assert!(a.terms().any(|(m, _)| m.vars.iter().any(|&(v, _)| v == Var::L(1, 0))));
    }

    #[test]
    fn classical_knots_have_no_arrows() {
        let d = Diagram::parse("knot: O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(arrow_polynomial(&d, true), normalized_bracket(&d));
    }

    #[test]
    fn mirror_swaps_chirality() {
        let d = Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap();
        let a = arrow_polynomial(&d, true);
        let m = arrow_polynomial(&d.mirror(), true);
        assert_eq!(m, a.invert_a().swap_chirality());
    }

    #[test]
    fn loop_arrow_collapses() {
        let d = Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap();
        for p in d.plane_versions() {
            let la = loop_arrow_polynomial(&p, true).unwrap();
            assert_eq!(la.substitute_o(&Poly::loop_value()).unnest(), arrow_polynomial(&d, true));
        }
    }
}
