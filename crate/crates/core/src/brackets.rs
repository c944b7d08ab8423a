//! Kauffman bracket and loop bracket state sums.

use std::collections::HashMap;

use crate::combmap::Dart;
use crate::diagram::{Diagram, Mode};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::state::{crossing_parity, fold_states, trace, Choice, Slots, StateComponent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingState {
    pub choice: Vec<Choice>,
    /// The long component (knotoids only) comes first.
    pub components: Vec<StateComponent>,
    /// Per component: a circle enclosing the long component (plane mode only).
    pub nests: Vec<bool>,
}

impl SmoothingState {
    /// `#A - #B`.
    pub fn sigma(&self) -> i32 {
        self.choice
            .iter()
            .map(|c| match c {
                Choice::A => 1,
                Choice::B => -1,
                Choice::Node => 0,
            })
            .sum()
    }

    pub fn circles(&self) -> usize {
        self.components.iter().filter(|c| !c.long).count()
    }

    /// Circles not nesting around the long component.
    pub fn p(&self) -> usize {
        self.circles() - self.q()
    }

    /// Circles nesting around the long component.
    pub fn q(&self) -> usize {
        self.components.iter().zip(&self.nests).filter(|(c, &n)| !c.long && n).count()
    }
}

/// Route from the outer face to the face of the tail, used to decide which
/// circles enclose the long component.
pub(crate) fn nesting_route(d: &Diagram) -> Result<Option<Vec<Dart>>> {
    match d.mode() {
        Mode::Plane { outer } => {
            let tail = d.tail_dart().ok_or(Error::OuterFaceRequired)?;
            let faces = d.faces();
            Ok(d.dual_route(faces.face_of[outer], faces.face_of[tail]))
        }
        _ => Ok(None),
    }
}

pub(crate) fn plane_route(d: &Diagram) -> Result<Vec<Dart>> {
    if !d.is_knotoid() {
        return Err(Error::OuterFaceRequired);
    }
    nesting_route(d)?.ok_or(Error::OuterFaceRequired)
}

/// Circles separating the outer face from the long component. Disjoint simple
/// curves in the plane: a circle separates iff a route crosses it an odd number of times.
pub fn nesting(route: &[Dart], comps: &[StateComponent], edge_comp: &[usize]) -> Vec<bool> {
    let odd = crossing_parity(route, edge_comp, comps.len());
    comps.iter().zip(odd).map(|(c, o)| !c.long && o).collect()
}

/// Every A/B state with its components; nesting is filled in for plane diagrams.
pub fn enumerate_states(d: &Diagram) -> Result<Vec<SmoothingState>> {
    let route = nesting_route(d)?;
    let slots = Slots::new(d);
    let n = d.crossing_count();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0..(1u64 << n) {
        let choice = crate::state::choices_from_mask(n, mask);
        let (components, edge_comp) = trace(d, &slots, &choice);
        let nests = match &route {
            Some(r) => nesting(r, &components, &edge_comp),
            None => vec![false; components.len()],
        };
        out.push(SmoothingState { choice, components, nests });
    }
    Ok(out)
}

/// Counts of states by `(sigma, p, q)`.
type Census = HashMap<(i32, u32, u32), i64>;

fn census(d: &Diagram, route: Option<&[Dart]>) -> Census {
    let slots = Slots::new(d);
    let n = d.crossing_count();
    let free: Vec<usize> = (0..n).collect();
    fold_states(
        n,
        &free,
        &[],
        |acc: &mut Census, ch| {
            let (comps, edge_comp) = trace(d, &slots, ch);
            let sigma: i32 = ch.iter().map(|&c| if c == Choice::A { 1 } else { -1 }).sum();
            let circles = comps.iter().filter(|c| !c.long).count() as u32;
            let q = match route {
                Some(r) => nesting(r, &comps, &edge_comp).iter().filter(|&&x| x).count() as u32,
                None => 0,
            };
            *acc.entry((sigma, circles - q, q)).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )
}

fn census_poly(c: &Census, loops_offset: i32) -> Poly {
    let mut out = Poly::zero();
    for (&(sigma, p, q), &count) in c {
        let p = (p as i32 + loops_offset).max(0) as u32;
        let term = Poly::loop_pow(p) * Poly::monomial(Monomial { a: sigma, o: q, vars: vec![] }, 1);
        out += term.scale(count);
    }
    out
}

/// `<K> = Σ A^σ(s) d^#circles`; for closed diagrams one circle is not counted.
pub fn kauffman_bracket(d: &Diagram) -> Poly {
    if d.map().num_darts() == 0 {
        return Poly::one();
    }
    let offset = if d.is_knotoid() { 0 } else { -1 };
    let c = census(d, None);
    let mut merged: Census = HashMap::new();
    for ((s, p, q), v) in c {
        *merged.entry((s, p + q, 0)).or_insert(0) += v;
    }
    census_poly(&merged, offset)
}

/// `(-A^3)^(-wr) <K>`.
pub fn normalized_bracket(d: &Diagram) -> Poly {
    kauffman_bracket(d) * Poly::writhe_factor(d.writhe())
}

/// `Σ A^σ(s) d^p(s) O^q(s)` for a plane knotoid diagram.
pub fn loop_state_sum(d: &Diagram) -> Result<Poly> {
    let route = plane_route(d)?;
    Ok(census_poly(&census(d, Some(&route)), 0))
}

/// The loop bracket `(-A^3)^(-wr) Σ A^σ(s) d^p(s) O^q(s)`.
pub fn loop_bracket(d: &Diagram) -> Result<Poly> {
    Ok(loop_state_sum(d)? * Poly::writhe_factor(d.writhe()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert!(normalized_bracket(&Diagram::trivial()).is_one());
        let p = Diagram::trivial().with_outer_face(0).unwrap();
        assert!(loop_bracket(&p).unwrap().is_one());
        let u = Diagram::parse("knot:").unwrap();
        assert!(normalized_bracket(&u).is_one());
    }

    #[test]
    fn right_trefoil_matches_jones() {
        // V = t + t^3 - t^4 at t = A^-4.
        let d = Diagram::parse("knot: O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(normalized_bracket(&d), Poly::laurent(&[(-4, 1), (-12, 1), (-16, -1)]));
        assert_eq!(
            normalized_bracket(&d.mirror()),
            Poly::laurent(&[(4, 1), (12, 1), (16, -1)])
        );
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let d = Diagram::parse("knot: O1- U2- O3+ U4+ O2- U1- O4+ U3+").unwrap();
        let b = normalized_bracket(&d);
        assert_eq!(b, b.invert_a());
        assert_eq!(b, Poly::laurent(&[(-8, 1), (-4, -1), (0, 1), (4, -1), (8, 1)]));
    }

    #[test]
    fn kink_is_invisible() {
        for s in ["knotoid: O1+ U1+", "knotoid: U1- O1-", "knot: O1+ U1+"] {
            let d = Diagram::parse(s).unwrap();
            assert!(normalized_bracket(&d).is_one(), "{s}");
        }
    }

    #[test]
    fn loop_sum_collapses_to_bracket() {
        let d = Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap();
        for p in d.plane_versions() {
            let l = loop_bracket(&p).unwrap();
            assert_eq!(l.substitute_o(&Poly::loop_value()), normalized_bracket(&d));
        }
    }

    #[test]
    fn loop_bracket_needs_outer_face() {
        let d = Diagram::parse("knotoid: O1+ U1+").unwrap();
        assert_eq!(loop_bracket(&d), Err(Error::OuterFaceRequired));
    }

    #[test]
    fn state_count() {
        let d = Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap();
        let states = enumerate_states(&d).unwrap();
        assert_eq!(states.len(), 4);
        assert!(states.iter().all(|s| s.components.iter().filter(|c| c.long).count() == 1));
    }
}
