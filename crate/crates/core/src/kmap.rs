//! KMAP: a diagram as an explicit map, written as a key-sorted JSON document.
//!
//! Vertices list their darts counterclockwise (endpoints are one-dart
//! vertices); each crossing names its over-strand's incoming dart. Torus
//! diagrams add one `[p, q]` weight per dart.

use serde::{Deserialize, Serialize};

use crate::combmap::Dart;
use crate::diagram::{Diagram, Mode};
use crate::error::{Error, Result};
use crate::gauss::{GaussCode, Pass, Shape, Sign, Token};
use crate::torus::TorusDiagram;

// Fields stay in alphabetical order so the output is key-sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kmap {
    pub alpha: Vec<[Dart; 2]>,
    pub head: Option<Dart>,
    pub mode: String,
    pub outer_dart: Option<Dart>,
    pub over: Vec<Dart>,
    pub tail: Option<Dart>,
    pub vertices: Vec<Vec<Dart>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<[i64; 2]>>,
}

impl Kmap {
    pub fn from_diagram(d: &Diagram) -> Kmap {
        let map = d.map();
        let mut vertices: Vec<Vec<Dart>> = d.crossings().iter().map(|c| c.darts.to_vec()).collect();
        vertices.extend(d.tail_dart().map(|t| vec![t]));
        vertices.extend(d.head_dart().map(|h| vec![h]));
        let (mode, outer) = match d.mode() {
            Mode::Sphere => ("sphere", None),
            Mode::Plane { outer } => ("plane", Some(outer)),
            Mode::Surface => ("surface", None),
        };
        Kmap {
            alpha: (0..map.num_darts() / 2).map(|e| [2 * e, 2 * e + 1]).collect(),
            head: d.head_dart(),
            mode: mode.to_string(),
            outer_dart: outer,
            over: d.crossings().iter().map(|c| c.darts[0]).collect(),
            tail: d.tail_dart(),
            vertices,
            weights: None,
        }
    }

    pub fn from_torus(t: &TorusDiagram) -> Kmap {
        let mut k = Kmap::from_diagram(&t.diagram);
        k.weights = Some(t.weight.iter().map(|&(p, q)| [p, q]).collect());
        k
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("kmap serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Kmap> {
        serde_json::from_str(text).map_err(|e| Error::Kmap(e.to_string()))
    }

    /// Rebuilds the diagram by walking the strand; returns it with the map
    /// from KMAP darts to the rebuilt diagram's darts.
    pub fn to_diagram(&self) -> Result<(Diagram, Vec<Dart>)> {
        let bad = |why: String| Error::Kmap(why);
        let n = 2 * self.alpha.len();
        let mut alpha = vec![usize::MAX; n];
        for &[a, b] in &self.alpha {
            if a >= n || b >= n || alpha[a] != usize::MAX || alpha[b] != usize::MAX || a == b {
                return Err(bad(format!("bad alpha pair [{a}, {b}]")));
            }
            alpha[a] = b;
            alpha[b] = a;
        }
        let mut vertex = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        for (v, ds) in self.vertices.iter().enumerate() {
            if ds.len() != 1 && ds.len() != 4 {
                return Err(bad(format!("vertex {v} has {} darts", ds.len())));
            }
            for (i, &x) in ds.iter().enumerate() {
                if x >= n || vertex[x] != usize::MAX {
                    return Err(bad(format!("dart {x} misplaced")));
                }
                vertex[x] = v;
                pos[x] = i;
            }
        }
        if vertex.contains(&usize::MAX) {
            return Err(bad("some dart lies on no vertex".into()));
        }
        let crossing_vertices: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.vertices[v].len() == 4).collect();
        if crossing_vertices.len() != self.over.len() {
            return Err(bad("one over dart per crossing".into()));
        }
        let opposite = |x: Dart| self.vertices[vertex[x]][(pos[x] + 2) % 4];
        let open = match (self.tail, self.head) {
            (Some(_), Some(_)) => true,
            (None, None) => false,
            _ => return Err(bad("tail and head go together".into())),
        };
        // Walk: leaving darts in order, and the arriving dart at each token.
        let start = if open { self.tail.unwrap() } else { 0 };
        let mut leaving = vec![];
        let mut arriving = vec![];
        let mut x = start;
        if n > 0 {
            loop {
                leaving.push(x);
                let y = alpha[x];
                if self.vertices[vertex[y]].len() == 1 {
                    arriving.push(y);
                    break;
                }
                arriving.push(y);
                x = opposite(y);
                if !open && x == start {
                    break;
                }
                if leaving.len() > n {
                    return Err(bad("strand does not close".into()));
                }
            }
        }
        if 2 * leaving.len() != n {
            return Err(bad("diagram has more than one strand".into()));
        }
        let incoming: Vec<bool> = {
            let mut v = vec![false; n];
            for &y in &arriving {
                v[y] = true;
            }
            v
        };
        // A closed walk starts by leaving the first token's vertex through dart 0.
        let tokens_at: Vec<Dart> = if open {
            arriving[..arriving.len() - 1].to_vec()
        } else {
            arriving.iter().rev().take(1).chain(&arriving[..arriving.len().saturating_sub(1)]).copied().collect()
        };
        let mut label_of = vec![0u32; self.vertices.len()];
        for (i, &v) in crossing_vertices.iter().enumerate() {
            label_of[v] = i as u32 + 1;
        }
        let mut tokens = vec![];
        for &y in &tokens_at {
            let v = vertex[y];
            let ci = crossing_vertices.iter().position(|&c| c == v).expect("crossing vertex");
            let oi = self.over[ci];
            if vertex[oi] != v || !incoming[oi] {
                return Err(bad(format!("over dart {oi} is not incoming at its crossing")));
            }
            let pass = if y == oi { Pass::Over } else { Pass::Under };
            let next = self.vertices[v][(pos[oi] + 1) % 4];
            let sign = if incoming[next] { Sign::Pos } else { Sign::Neg };
            tokens.push(Token::new(label_of[v], pass, sign));
        }
        let shape = if open { Shape::Open } else { Shape::Cyclic };
        let code = GaussCode::new(shape, tokens)?;
        let mut relabel = vec![0; n];
        for (e, (&l, &a)) in leaving.iter().zip(&arriving).enumerate() {
            relabel[l] = 2 * e;
            relabel[a] = 2 * e + 1;
        }
        let d = Diagram::from_code(code)?;
        let d = match (self.mode.as_str(), self.outer_dart) {
            ("plane", Some(o)) if o < n => d.with_outer_dart(relabel[o])?,
            ("plane", _) => return Err(Error::OuterFaceRequired),
            ("sphere", _) if d.mode() == Mode::Surface => return Err(Error::NonPlanar(d.genus())),
            ("sphere" | "surface", _) => d,
            (other, _) => return Err(bad(format!("unknown mode `{other}`"))),
        };
        Ok((d, relabel))
    }

    pub fn to_torus(&self) -> Result<TorusDiagram> {
        let (d, relabel) = self.to_diagram()?;
        let w = self.weights.as_ref().ok_or_else(|| Error::Kmap("no weights".into()))?;
        if w.len() != relabel.len() {
            return Err(Error::Kmap("one weight per dart".into()));
        }
        let mut weight = vec![(0, 0); w.len()];
        for (x, &[p, q]) in w.iter().enumerate() {
            weight[relabel[x]] = (p, q);
        }
        TorusDiagram::new(d, weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::virtualize;

    #[test]
    fn round_trips() {
        for s in [
            "knotoid: O1+ U2+ U1+ O2+",
            "knotoid: O1+ U2+ U1+ O2+ outer=1",
            "knot: O1+ U2+ O3+ U1+ O2+ U3+",
            "knotoid:",
        ] {
            let d = Diagram::parse(s).unwrap();
            let k = Kmap::from_diagram(&d);
            let back = Kmap::parse(&k.to_text()).unwrap().to_diagram().unwrap().0;
            assert_eq!(back.to_text(), d.to_text(), "{s}");
        }
    }

    #[test]
    fn torus_round_trip() {
        let k = Diagram::parse("knot: O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let t = virtualize(&k, 0).unwrap();
        let text = Kmap::from_torus(&t).to_text();
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"weights\"").unwrap());
        assert_eq!(Kmap::parse(&text).unwrap().to_torus().unwrap(), t);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(Kmap::parse("{"), Err(Error::Kmap(_))));
    }
}
