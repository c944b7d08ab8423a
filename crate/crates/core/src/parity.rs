//! Gaussian parity and the odd writhe.

use std::collections::BTreeMap;

use crate::diagram::{Diagram, Mode};
use crate::error::{Error, Result};
use crate::gauss::{GaussCode, Shape};

/// Parity of every crossing label: 0 even, 1 odd.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityAssignment {
    pub parity: BTreeMap<u32, u8>,
}

impl ParityAssignment {
    pub fn is_odd(&self, label: u32) -> bool {
        self.parity.get(&label) == Some(&1)
    }

    pub fn odd_labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.parity.iter().filter(|(_, &p)| p == 1).map(|(&l, _)| l)
    }
}

pub fn gaussian_parity(code: &GaussCode) -> Result<ParityAssignment> {
    let m = code.tokens.len();
    let mut parity = BTreeMap::new();
    for (label, (a, b)) in code.occurrences() {
        let inner = b - a - 1;
        if code.shape == Shape::Cyclic {
            let outer = m - (b - a) - 1;
            if inner % 2 != outer % 2 {
                return Err(Error::Parity(format!(
                    "label {label}: arcs of length {inner} and {outer} disagree"
                )));
            }
        }
        parity.insert(label, (inner % 2) as u8);
    }
    Ok(ParityAssignment { parity })
}

pub fn is_evenly_intersticed(code: &GaussCode) -> bool {
    code.occurrences().values().all(|&(a, b)| (b - a - 1) % 2 == 0)
}

/// Parity of every crossing of `d`, indexed like `d.crossings()`.
pub fn crossing_parities(d: &Diagram) -> Vec<bool> {
    d.crossings().iter().map(|c| (c.second_pos() - c.first_pos() - 1) % 2 == 1).collect()
}

/// Sum of the signs of the odd crossings. A closed diagram in the sphere
/// has only even crossings; anything else is reported as a parity error.
pub fn odd_writhe(d: &Diagram) -> Result<i32> {
    let odd = crossing_parities(d);
    if !d.is_knotoid() && d.mode() != Mode::Surface && odd.iter().any(|&o| o) {
        return Err(Error::Parity("classical knot diagram with an odd crossing".into()));
    }
    Ok(d.crossings().iter().zip(&odd).filter(|(_, &o)| o).map(|(c, _)| c.sign.value()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss;

    #[test]
    fn both_crossings_odd() {
        let c = parse_gauss("knotoid: O1+ U2+ U1+ O2+").unwrap();
        let p = gaussian_parity(&c).unwrap();
        assert!(p.is_odd(1) && p.is_odd(2));
        assert!(!is_evenly_intersticed(&c));
        let d = Diagram::realize(c).unwrap();
        assert_eq!(odd_writhe(&d).unwrap(), 2);
        assert_eq!(odd_writhe(&d.mirror()).unwrap(), -2);
    }

    #[test]
    fn open_trefoil_code_is_evenly_intersticed() {
        let c = parse_gauss("knotoid: O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert!(is_evenly_intersticed(&c));
        assert_eq!(gaussian_parity(&c).unwrap().odd_labels().count(), 0);
        assert_eq!(odd_writhe(&Diagram::realize(c).unwrap()).unwrap(), 0);
    }

    #[test]
    fn empty_code() {
        let c = GaussCode::trivial_knotoid();
        assert!(gaussian_parity(&c).unwrap().parity.is_empty());
        assert!(is_evenly_intersticed(&c));
    }

    #[test]
    fn cyclic_virtual_code_has_odd_crossings() {
        let c = parse_gauss("knot: O1+ U2+ U1+ O2+").unwrap();
        let p = gaussian_parity(&c).unwrap();
        assert_eq!(p.odd_labels().count(), 2);
        let d = Diagram::from_code(c).unwrap();
        assert_eq!(odd_writhe(&d).unwrap(), 2);
    }
}
