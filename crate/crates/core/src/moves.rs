//! Reidemeister moves acting on Gauss codes, with sites read off the faces
//! of the diagram's map. Endpoint faces are never used as move discs, so the
//! forbidden moves cannot occur. Plane diagrams carry their outer face
//! through every move; discs are never the outer face.

use std::fmt;

use crate::combmap::Dart;
use crate::diagram::{Diagram, Mode};
use crate::error::{Error, Result};
use crate::gauss::{GaussCode, Pass, Shape, Sign, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Kink on edge `edge`; the first passage is `first`.
    R1Add { edge: usize, first: Pass, sign: Sign },
    /// Removes the kink bounding the monogon on the right of `dart`.
    R1Del { dart: Dart },
    /// Pushes the edge of `over` across the edge of `under` through the face
    /// on the right of both darts.
    R2Add { over: Dart, under: Dart },
    /// Removes the bigon on the right of `dart`.
    R2Del { dart: Dart },
    /// Moves a strand across the crossing opposite the triangle on the right of `dart`.
    R3 { dart: Dart },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::R1Add { .. } => "R1add",
            Move::R1Del { .. } => "R1del",
            Move::R2Add { .. } => "R2add",
            Move::R2Del { .. } => "R2del",
            Move::R3 { .. } => "R3",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::R1Add { edge, first, sign } => write!(
                f,
                "R1add(edge={edge},{}{})",
                if first == Pass::Over { "O" } else { "U" },
                if sign == Sign::Pos { "+" } else { "-" }
            ),
            Move::R1Del { dart } => write!(f, "R1del(dart={dart})"),
            Move::R2Add { over, under } => write!(f, "R2add(over={over},under={under})"),
            Move::R2Del { dart } => write!(f, "R2del(dart={dart})"),
            Move::R3 { dart } => write!(f, "R3(dart={dart})"),
        }
    }
}

/// Token indices at the start and end of edge `e` (`None` at an endpoint).
fn edge_tokens(shape: Shape, m: usize, e: usize) -> (Option<usize>, Option<usize>) {
    match shape {
        Shape::Open => ((e > 0).then(|| e - 1), (e < m).then_some(e)),
        Shape::Cyclic => (Some(e), Some((e + 1) % m)),
    }
}

fn face_orbit(d: &Diagram, x: Dart) -> Vec<Dart> {
    let map = d.map();
    let mut face = vec![x];
    let mut y = map.phi(x);
    while y != x {
        face.push(y);
        y = map.phi(y);
    }
    face
}

fn is_outer(d: &Diagram, face: &[Dart]) -> bool {
    match d.mode() {
        Mode::Plane { outer } => face.contains(&outer),
        _ => false,
    }
}

/// Gauss code editor that follows every original edge to its current index.
struct Editor {
    shape: Shape,
    tokens: Vec<Token>,
    edge_map: Vec<usize>,
}

impl Editor {
    fn new(code: &GaussCode) -> Self {
        let edges = match code.shape {
            Shape::Open => code.tokens.len() + 1,
            Shape::Cyclic => code.tokens.len(),
        };
        Editor { shape: code.shape, tokens: code.tokens.clone(), edge_map: (0..edges).collect() }
    }

    /// Inserts `new` on current edge `e`; pieces of `e` after the first get new indices.
    fn insert(&mut self, e: usize, new: &[Token]) {
        let idx = match self.shape {
            Shape::Open => e,
            Shape::Cyclic => e + 1,
        };
        let k = new.len();
        for (i, t) in new.iter().enumerate() {
            self.tokens.insert(idx + i, *t);
        }
        for v in self.edge_map.iter_mut() {
            if *v > e {
                *v += k;
            }
        }
    }

    /// Removes the token at index `j`, merging its two edges.
    fn delete(&mut self, j: usize) {
        let m = self.tokens.len();
        self.tokens.remove(j);
        for v in self.edge_map.iter_mut() {
            *v = match self.shape {
                Shape::Open => {
                    if *v <= j {
                        *v
                    } else {
                        *v - 1
                    }
                }
                Shape::Cyclic => {
                    if m == 1 {
                        0
                    } else if j == 0 {
                        (*v + m - 2) % (m - 1)
                    } else if *v < j {
                        *v
                    } else {
                        *v - 1
                    }
                }
            };
        }
    }

    fn delete_all(&mut self, mut idx: Vec<usize>) {
        idx.sort_unstable();
        for j in idx.into_iter().rev() {
            self.delete(j);
        }
    }
}

fn next_label(code: &GaussCode) -> u32 {
    code.tokens.iter().map(|t| t.label).max().unwrap_or(0) + 1
}

/// Checks the monogon at `x`; returns the two token indices of its crossing and the loop edge.
fn r1_site(d: &Diagram, x: Dart) -> Option<([usize; 2], usize)> {
    let map = d.map();
    if x >= map.num_darts() || map.phi(x) != x || is_outer(d, &[x]) {
        return None;
    }
    let e = x / 2;
    let (s, t) = edge_tokens(d.code().shape, d.token_count(), e);
    let (s, t) = (s?, t?);
    (s != t && d.code().tokens[s].label == d.code().tokens[t].label).then_some(([s, t], e))
}

fn r2_site(d: &Diagram, x: Dart) -> Option<([usize; 4], [usize; 2])> {
    let map = d.map();
    if x >= map.num_darts() {
        return None;
    }
    let face = face_orbit(d, x);
    if face.len() != 2 || is_outer(d, &face) {
        return None;
    }
    let (e1, e2) = (face[0] / 2, face[1] / 2);
    if e1 == e2 {
        return None;
    }
    let shape = d.code().shape;
    let m = d.token_count();
    let (a, b) = edge_tokens(shape, m, e1);
    let (c, dd) = edge_tokens(shape, m, e2);
    let (a, b, c, dd) = (a?, b?, c?, dd?);
    let toks = &d.code().tokens;
    let ca = d.crossing_of_token(a);
    let cb = d.crossing_of_token(b);
    if ca == cb {
        return None;
    }
    let mut idx = [a, b, c, dd];
    let xs: Vec<usize> = idx.iter().map(|&i| d.crossing_of_token(i)).collect();
    let mut pair = [xs[0], xs[1]];
    let mut other = [xs[2], xs[3]];
    pair.sort_unstable();
    other.sort_unstable();
    if pair != other {
        return None;
    }
    let over1 = toks[a].pass == Pass::Over && toks[b].pass == Pass::Over;
    let under1 = toks[a].pass == Pass::Under && toks[b].pass == Pass::Under;
    if !(over1 || under1) {
        return None;
    }
    idx.sort_unstable();
    let mut distinct = idx.to_vec();
    distinct.dedup();
    (distinct.len() == 4).then_some((idx, [e1, e2]))
}

fn r3_site(d: &Diagram, x: Dart) -> Option<([(usize, usize); 3], [usize; 3])> {
    let map = d.map();
    if x >= map.num_darts() {
        return None;
    }
    let face = face_orbit(d, x);
    if face.len() != 3 || is_outer(d, &face) {
        return None;
    }
    let shape = d.code().shape;
    let m = d.token_count();
    let toks = &d.code().tokens;
    let mut pairs = [(0, 0); 3];
    let mut edges = [0; 3];
    let mut crossings = vec![];
    for (i, &y) in face.iter().enumerate() {
        let e = y / 2;
        let (s, t) = edge_tokens(shape, m, e);
        let (s, t) = (s?, t?);
        if d.crossing_of_token(s) == d.crossing_of_token(t) {
            return None;
        }
        pairs[i] = (s, t);
        edges[i] = e;
        crossings.push(d.crossing_of_token(s));
    }
    let mut cs = crossings.clone();
    cs.sort_unstable();
    cs.dedup();
    let mut es = edges.to_vec();
    es.sort_unstable();
    es.dedup();
    if cs.len() != 3 || es.len() != 3 {
        return None;
    }
    let passes: Vec<(Pass, Pass)> = pairs.iter().map(|&(s, t)| (toks[s].pass, toks[t].pass)).collect();
    let top = passes.iter().filter(|p| **p == (Pass::Over, Pass::Over)).count();
    let bottom = passes.iter().filter(|p| **p == (Pass::Under, Pass::Under)).count();
    (top == 1 && bottom == 1).then_some((pairs, edges))
}

/// Every legal move at `d`, in a deterministic order.
pub fn moves_available(d: &Diagram) -> Vec<Move> {
    let mut out = vec![];
    let n_edges = d.edge_count();
    for edge in 0..n_edges {
        for first in [Pass::Over, Pass::Under] {
            for sign in [Sign::Pos, Sign::Neg] {
                out.push(Move::R1Add { edge, first, sign });
            }
        }
    }
    let faces = d.faces();
    for face in &faces.faces {
        let x = face[0];
        if r1_site(d, x).is_some() {
            out.push(Move::R1Del { dart: x });
        }
        if r2_site(d, x).is_some() {
            out.push(Move::R2Del { dart: x });
        }
        if r3_site(d, x).is_some() {
            out.push(Move::R3 { dart: x });
        }
        for &p in face {
            for &q in face {
                if p / 2 != q / 2 {
                    out.push(Move::R2Add { over: p, under: q });
                }
            }
        }
    }
    if d.map().num_darts() == 0 {
        out.clear();
    }
    out
}

/// Applies `mv`; the result keeps the mode (and outer face) of `d`.
pub fn apply_move(d: &Diagram, mv: &Move) -> Result<Diagram> {
    let bad = || Error::InvalidSite(mv.to_string());
    let code = d.code();
    let mut ed = Editor::new(code);
    let mut interior: Vec<usize> = vec![];
    match *mv {
        Move::R1Add { edge, first, sign } => {
            if edge >= d.edge_count() {
                return Err(bad());
            }
            let l = next_label(code);
            ed.insert(edge, &[Token::new(l, first, sign), Token::new(l, first.flip(), sign)]);
        }
        Move::R1Del { dart } => {
            let (idx, e) = r1_site(d, dart).ok_or_else(bad)?;
            interior.push(e);
            ed.delete_all(idx.to_vec());
        }
        Move::R2Add { over, under } => {
            let n = d.map().num_darts();
            if over >= n || under >= n || over / 2 == under / 2 {
                return Err(bad());
            }
            let faces = d.faces();
            if faces.face_of[over] != faces.face_of[under] {
                return Err(bad());
            }
            let (e1, e2) = (over / 2, under / 2);
            let eps1 = if over % 2 == 0 { 1 } else { -1 };
            let eps2 = if under % 2 == 0 { 1 } else { -1 };
            let l = next_label(code);
            let (w, e) = (l, l + 1);
            let sw = if eps1 * eps2 == 1 { Sign::Neg } else { Sign::Pos };
            let se = sw.flip();
            let s1 = if eps1 == 1 { [(w, sw), (e, se)] } else { [(e, se), (w, sw)] };
            let s2 = if eps2 == 1 { [(e, se), (w, sw)] } else { [(w, sw), (e, se)] };
            let t1: Vec<Token> = s1.iter().map(|&(l, s)| Token::new(l, Pass::Over, s)).collect();
            let t2: Vec<Token> = s2.iter().map(|&(l, s)| Token::new(l, Pass::Under, s)).collect();
            let cur1 = ed.edge_map[e1];
            ed.insert(cur1, &t1);
            let cur2 = ed.edge_map[e2];
            ed.insert(cur2, &t2);
        }
        Move::R2Del { dart } => {
            let (idx, es) = r2_site(d, dart).ok_or_else(bad)?;
            interior.extend(es);
            ed.delete_all(idx.to_vec());
        }
        Move::R3 { dart } => {
            let (pairs, es) = r3_site(d, dart).ok_or_else(bad)?;
            interior.extend(es);
            for (s, t) in pairs {
                ed.tokens.swap(s, t);
            }
        }
    }
    let new_code = GaussCode::new(code.shape, ed.tokens.clone())?;
    let nd = Diagram::from_code(new_code)?;
    if d.mode() != Mode::Surface && nd.mode() == Mode::Surface {
        return Err(Error::InvalidSite(format!("{mv} leaves the sphere")));
    }
    match d.mode() {
        Mode::Plane { outer } => {
            let face = face_orbit(d, outer);
            let x = face
                .iter()
                .copied()
                .find(|&x| !interior.contains(&(x / 2)))
                .ok_or_else(bad)?;
            let new_outer = 2 * ed.edge_map[x / 2] + (x & 1);
            nd.with_outer_dart(new_outer)
        }
        _ => Ok(nd),
    }
}

/// Replays `moves` from `d`.
pub fn apply_moves(d: &Diagram, moves: &[Move]) -> Result<Diagram> {
    let mut cur = d.clone();
    for m in moves {
        cur = apply_move(&cur, m)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::gaussian_parity;

    fn fig_gauss() -> Diagram {
        Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap()
    }

    #[test]
    fn trivial_knotoid_only_adds() {
        let d = Diagram::trivial();
        let ms = moves_available(&d);
        assert!(!ms.is_empty());
        assert!(ms.iter().all(|m| matches!(m, Move::R1Add { .. } | Move::R2Add { .. })));
    }

    #[test]
    fn every_move_stays_spherical() {
        let d = fig_gauss();
        for m in moves_available(&d) {
            let nd = apply_move(&d, &m).unwrap_or_else(|e| panic!("{m}: {e}"));
            assert_eq!(nd.genus(), 0, "{m}");
        }
    }

    #[test]
    fn no_deletions_on_fig_gauss() {
        let ms = moves_available(&fig_gauss());
        assert!(!ms.iter().any(|m| matches!(m, Move::R2Del { .. } | Move::R1Del { .. })));
    }

    #[test]
    fn kink_round_trip() {
        let d = fig_gauss();
        let e = apply_move(&d, &Move::R1Add { edge: 2, first: Pass::Under, sign: Sign::Neg }).unwrap();
        let del: Vec<Move> =
            moves_available(&e).into_iter().filter(|m| matches!(m, Move::R1Del { .. })).collect();
        assert_eq!(del.len(), 1);
        let back = apply_move(&e, &del[0]).unwrap();
        assert_eq!(back.canonical_code(), d.canonical_code());
    }

    #[test]
    fn r2_round_trip_and_parity() {
        let d = fig_gauss();
        for m in moves_available(&d) {
            if let Move::R2Add { .. } = m {
                let e = apply_move(&d, &m).unwrap();
                let p = gaussian_parity(e.code()).unwrap();
                let l = next_label(d.code());
                assert_eq!(p.is_odd(l), p.is_odd(l + 1));
                let dels: Vec<Move> = moves_available(&e)
                    .into_iter()
                    .filter(|m| matches!(m, Move::R2Del { .. }))
                    .collect();
                assert!(!dels.is_empty(), "{m} made no bigon");
                let back: Vec<_> = dels
                    .iter()
                    .map(|x| apply_move(&e, x).unwrap().canonical_code())
                    .collect();
                assert!(back.contains(&d.canonical_code()), "{m}");
            }
        }
    }

    #[test]
    fn plane_moves_keep_an_outer_face() {
        let d = fig_gauss();
        for p in d.plane_versions() {
            for m in moves_available(&p) {
                let e = apply_move(&p, &m).unwrap();
                assert!(e.is_plane());
            }
        }
    }

    #[test]
    fn invalid_site() {
        let d = fig_gauss();
        assert!(matches!(apply_move(&d, &Move::R1Del { dart: 0 }), Err(Error::InvalidSite(_))));
    }
}
