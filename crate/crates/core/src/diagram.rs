//! Knotoid and knot diagrams realized from signed Gauss codes.
//!
//! Dart numbering is fixed by the code. For an open code with `m` tokens the
//! strand has edges `0..=m`; edge `e` runs from position `e` to `e + 1`
//! (position 0 is the tail, position `t + 1` is token `t`, position `m + 1` is
//! the head). Dart `2e` sits at the start of edge `e`, dart `2e + 1` at its
//! end, so `alpha(d) = d ^ 1`. Cyclic codes use edges `0..m`, edge `e` joining
//! token `e` to token `e + 1 (mod m)`.
//!
//! At a crossing the counterclockwise dart order is
//! `(over-in, under-in, over-out, under-out)` for a positive crossing and
//! `(over-in, under-out, over-out, under-in)` for a negative one.

use crate::combmap::{CanonicalCode, CombMap, Dart, FaceSet, RootPolicy};
use crate::error::{Error, Result};
use crate::gauss::{parse_gauss_with_outer, GaussCode, Pass, Shape, Sign, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Sphere,
    /// Plane diagram; the outer face is the face containing this dart.
    Plane { outer: Dart },
    /// Realized on the closed surface of its rotation system (genus may be > 0).
    Surface,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Mirror,
    Reverse,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DartRole {
    Tail,
    Head,
    In(usize),
    Out(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub label: u32,
    pub sign: Sign,
    pub over_pos: usize,
    pub under_pos: usize,
    /// Counterclockwise, starting at the over-strand's incoming dart.
    pub darts: [Dart; 4],
}

impl Crossing {
    pub fn over_in(&self) -> Dart {
        self.darts[0]
    }

    pub fn over_out(&self) -> Dart {
        self.darts[2]
    }

    pub fn under_in(&self) -> Dart {
        match self.sign {
            Sign::Pos => self.darts[1],
            Sign::Neg => self.darts[3],
        }
    }

    pub fn under_out(&self) -> Dart {
        match self.sign {
            Sign::Pos => self.darts[3],
            Sign::Neg => self.darts[1],
        }
    }

    pub fn first_pos(&self) -> usize {
        self.over_pos.min(self.under_pos)
    }

    pub fn second_pos(&self) -> usize {
        self.over_pos.max(self.under_pos)
    }
}

#[derive(Clone, Debug)]
pub struct Diagram {
    code: GaussCode,
    map: CombMap,
    crossings: Vec<Crossing>,
    /// Crossing index of every token.
    token_crossing: Vec<usize>,
    mode: Mode,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.mode == other.mode
    }
}

pub(crate) fn in_dart(shape: Shape, m: usize, t: usize) -> Dart {
    match shape {
        Shape::Open => 2 * t + 1,
        Shape::Cyclic => 2 * ((t + m - 1) % m) + 1,
    }
}

pub(crate) fn out_dart(shape: Shape, _m: usize, t: usize) -> Dart {
    match shape {
        Shape::Open => 2 * t + 2,
        Shape::Cyclic => 2 * t,
    }
}

impl Diagram {
    /// Builds the diagram on the closed surface determined by its rotation system.
    pub fn from_code(code: GaussCode) -> Result<Diagram> {
        code.validate()?;
        let m = code.tokens.len();
        let shape = code.shape;
        let n_darts = match shape {
            Shape::Open => 2 * (m + 1),
            Shape::Cyclic => 2 * m,
        };
        let alpha: Vec<Dart> = (0..n_darts).map(|d| d ^ 1).collect();
        let mut sigma: Vec<Dart> = (0..n_darts).collect();
        let occ = code.occurrences();
        let mut crossings = Vec::with_capacity(occ.len());
        let mut token_crossing = vec![0; m];
        let mut by_first: Vec<(usize, u32, usize)> =
            occ.iter().map(|(&l, &(a, b))| (a, l, b)).collect();
        by_first.sort();
        for (idx, &(a, label, b)) in by_first.iter().enumerate() {
            let (over_pos, under_pos) =
                if code.tokens[a].pass == Pass::Over { (a, b) } else { (b, a) };
            let sign = code.tokens[a].sign;
            let oi = in_dart(shape, m, over_pos);
            let oo = out_dart(shape, m, over_pos);
            let ui = in_dart(shape, m, under_pos);
            let uo = out_dart(shape, m, under_pos);
            let darts = match sign {
                Sign::Pos => [oi, ui, oo, uo],
                Sign::Neg => [oi, uo, oo, ui],
            };
            for k in 0..4 {
                sigma[darts[k]] = darts[(k + 1) % 4];
            }
            token_crossing[a] = idx;
            token_crossing[b] = idx;
            crossings.push(Crossing { label, sign, over_pos, under_pos, darts });
        }
        let map = CombMap::new(alpha, sigma)?;
        let mode = if m == 0 || map.genus()? == 0 { Mode::Sphere } else { Mode::Surface };
        Ok(Diagram { code, map, crossings, token_crossing, mode })
    }

    /// Realizes a code in the sphere; fails when its rotation system has positive genus.
    pub fn realize(code: GaussCode) -> Result<Diagram> {
        let d = Diagram::from_code(code)?;
        match d.mode {
            Mode::Surface => Err(Error::NonPlanar(d.genus())),
            _ => Ok(d),
        }
    }

    /// Parses `knotoid: ...` / `knot: ...` text, honouring `outer=<k>`.
    pub fn parse(text: &str) -> Result<Diagram> {
        let (code, outer) = parse_gauss_with_outer(text)?;
        let d = Diagram::realize(code)?;
        match outer {
            Some(k) => d.with_outer_face(k),
            None => Ok(d),
        }
    }

    pub fn trivial() -> Diagram {
        Diagram::from_code(GaussCode::trivial_knotoid()).expect("trivial knotoid")
    }

    /// Plane version of a spherical diagram, with outer face `k` in face order.
    pub fn with_outer_face(&self, k: usize) -> Result<Diagram> {
        if self.mode == Mode::Surface {
            return Err(Error::NonPlanar(self.genus()));
        }
        let faces = self.map.faces();
        let face = faces.faces.get(k).ok_or_else(|| {
            Error::Syntax(format!("outer face {k} out of range ({} faces)", faces.len()))
        })?;
        self.with_outer_dart(face[0])
    }

    pub fn with_outer_dart(&self, dart: Dart) -> Result<Diagram> {
        if dart >= self.map.num_darts() {
            return Err(Error::MalformedMap(format!("outer dart {dart} out of range")));
        }
        let mut d = self.clone();
        d.map = d.map.clone().with_outer(dart)?;
        d.mode = Mode::Plane { outer: dart };
        Ok(d)
    }

    /// Forgets the outer face.
    pub fn to_sphere(&self) -> Diagram {
        Diagram::from_code(self.code.clone()).expect("valid code")
    }

    /// Every plane version of this diagram, one per face.
    pub fn plane_versions(&self) -> Vec<Diagram> {
        let n = self.map.faces().len();
        (0..n).filter_map(|k| self.with_outer_face(k).ok()).collect()
    }

    pub fn code(&self) -> &GaussCode {
        &self.code
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_plane(&self) -> bool {
        matches!(self.mode, Mode::Plane { .. })
    }

    pub fn is_knotoid(&self) -> bool {
        self.code.shape == Shape::Open
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn token_count(&self) -> usize {
        self.code.tokens.len()
    }

    pub fn crossing_of_token(&self, t: usize) -> usize {
        self.token_crossing[t]
    }

    pub fn edge_count(&self) -> usize {
        self.map.num_edges()
    }

    pub fn in_dart(&self, t: usize) -> Dart {
        in_dart(self.code.shape, self.token_count(), t)
    }

    pub fn out_dart(&self, t: usize) -> Dart {
        out_dart(self.code.shape, self.token_count(), t)
    }

    pub fn tail_dart(&self) -> Option<Dart> {
        self.is_knotoid().then_some(0)
    }

    pub fn head_dart(&self) -> Option<Dart> {
        self.is_knotoid().then(|| 2 * self.token_count() + 1)
    }

    pub fn dart_role(&self, d: Dart) -> DartRole {
        let m = self.token_count();
        match self.code.shape {
            Shape::Open => {
                if d == 0 {
                    DartRole::Tail
                } else if d == 2 * m + 1 {
                    DartRole::Head
                } else if d % 2 == 1 {
                    DartRole::In((d - 1) / 2)
                } else {
                    DartRole::Out((d - 2) / 2)
                }
            }
            Shape::Cyclic => {
                if d % 2 == 0 {
                    DartRole::Out(d / 2)
                } else {
                    DartRole::In(((d - 1) / 2 + 1) % m)
                }
            }
        }
    }

    /// Crossing index at the vertex of `d`, or `None` for an endpoint.
    pub fn crossing_at(&self, d: Dart) -> Option<usize> {
        match self.dart_role(d) {
            DartRole::In(t) | DartRole::Out(t) => Some(self.token_crossing[t]),
            _ => None,
        }
    }

    pub fn faces(&self) -> FaceSet {
        self.map.faces()
    }

    pub fn genus(&self) -> usize {
        if self.map.num_darts() == 0 {
            return 0;
        }
        self.map.genus().expect("diagram maps are connected")
    }

    pub fn outer_face_index(&self) -> Option<usize> {
        match self.mode {
            Mode::Plane { outer } => Some(self.map.faces().face_of[outer]),
            _ => None,
        }
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// The code relabelled by first visit.
    pub fn emit_gauss(&self) -> GaussCode {
        self.code.normalized()
    }

    /// Text form, including `outer=<k>` in plane mode.
    pub fn to_text(&self) -> String {
        let mut s = self.emit_gauss().to_string();
        if let Some(k) = self.outer_face_index() {
            s.push_str(&format!(" outer={k}"));
        }
        s
    }

    fn dart_attr(&self, d: Dart) -> u32 {
        match self.dart_role(d) {
            DartRole::Tail => 5,
            DartRole::Head => 6,
            DartRole::In(t) => {
                if self.code.tokens[t].pass == Pass::Over {
                    1
                } else {
                    3
                }
            }
            DartRole::Out(t) => {
                if self.code.tokens[t].pass == Pass::Over {
                    2
                } else {
                    4
                }
            }
        }
    }

    /// Isotopy class key: sphere maps are rooted anywhere, plane maps on the outer face.
    pub fn canonical_code(&self) -> CanonicalCode {
        if self.map.num_darts() == 0 {
            return CanonicalCode { code: vec![] };
        }
        let policy = match self.mode {
            Mode::Plane { .. } => RootPolicy::OuterFace,
            _ => RootPolicy::AllRoots,
        };
        self.map
            .canonical_code_with(policy, &|d| self.dart_attr(d))
            .expect("diagram maps are connected")
    }

    fn rebuild(&self, code: GaussCode, outer: Option<Dart>) -> Diagram {
        let d = Diagram::from_code(code).expect("symmetry preserves validity");
        match outer {
            Some(o) => d.with_outer_dart(o).expect("outer dart in range"),
            None => d,
        }
    }

    fn outer_dart(&self) -> Option<Dart> {
        match self.mode {
            Mode::Plane { outer } => Some(outer),
            _ => None,
        }
    }

    /// Reflection of the ambient surface: rotations reverse, signs negate.
    pub fn mirror(&self) -> Diagram {
        let tokens = self
            .code
            .tokens
            .iter()
            .map(|t| Token { sign: t.sign.flip(), ..*t })
            .collect();
        let code = GaussCode { shape: self.code.shape, tokens };
        let outer = self.outer_dart().map(|o| self.map.sigma_inv(o));
        self.rebuild(code, outer)
    }

    /// Orientation reversal: tail and head swap.
    pub fn reverse(&self) -> Diagram {
        let mut tokens = self.code.tokens.clone();
        tokens.reverse();
        let code = GaussCode { shape: self.code.shape, tokens };
        let m = self.token_count();
        let outer = self.outer_dart().map(|o| match self.code.shape {
            Shape::Open => 4 * (m / 2) + 1 - o,
            Shape::Cyclic => {
                let e = o / 2;
                let e2 = (2 * m - 2 - e) % m;
                if o % 2 == 0 {
                    2 * e2 + 1
                } else {
                    2 * e2
                }
            }
        });
        self.rebuild(code, outer)
    }

    pub fn symmetric(&self, kind: Symmetry) -> Diagram {
        match kind {
            Symmetry::Mirror => self.mirror(),
            Symmetry::Reverse => self.reverse(),
            Symmetry::Both => self.mirror().reverse(),
        }
    }

    /// Shortest path in the dual graph from face `from` to face `to`, as the
    /// darts of the edges crossed: dart `x` lies in the face being left and
    /// `alpha(x)` in the face entered. Ties go to smaller face ids and darts.
    pub fn dual_route(&self, from: usize, to: usize) -> Option<Vec<Dart>> {
        let faces = self.map.faces();
        let nf = faces.len();
        if from >= nf || to >= nf {
            return None;
        }
        let mut prev: Vec<Option<Dart>> = vec![None; nf];
        let mut seen = vec![false; nf];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(f) = queue.pop_front() {
            if f == to {
                break;
            }
            let mut darts = faces.faces[f].clone();
            darts.sort_unstable();
            let mut next: Vec<(usize, Dart)> = darts
                .into_iter()
                .map(|x| (faces.face_of[self.map.alpha(x)], x))
                .filter(|&(g, _)| g != f)
                .collect();
            next.sort_unstable();
            for (g, x) in next {
                if !seen[g] {
                    seen[g] = true;
                    prev[g] = Some(x);
                    queue.push_back(g);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut route = vec![];
        let mut f = to;
        while f != from {
            let x = prev[f].expect("bfs parent");
            route.push(x);
            f = faces.face_of[x];
        }
        route.reverse();
        Some(route)
    }

    /// Face containing each endpoint (knotoids only).
    pub fn endpoint_faces(&self) -> Option<(usize, usize)> {
        let faces = self.map.faces();
        Some((faces.face_of[self.tail_dart()?], faces.face_of[self.head_dart()?]))
    }
}

impl std::fmt::Display for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss;

    fn fig_gauss() -> Diagram {
        Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap()
    }

    #[test]
    fn two_crossing_knotoid_is_spherical() {
        let d = fig_gauss();
        assert_eq!(d.mode(), Mode::Sphere);
        assert_eq!(d.faces().len(), 3);
        assert_eq!(d.genus(), 0);
        assert_eq!(d.emit_gauss().to_string(), "knotoid: O1+ U2+ U1+ O2+");
    }

    #[test]
    fn trivial_knotoid() {
        let d = Diagram::trivial();
        assert_eq!(d.faces().len(), 1);
        assert_eq!(d.genus(), 0);
        assert!(d.emit_gauss().tokens.is_empty());
    }

    #[test]
    fn virtual_trefoil_is_nonplanar() {
        let c = parse_gauss("knot: O1+ U2+ U1+ O2+").unwrap();
        assert_eq!(Diagram::realize(c), Err(Error::NonPlanar(1)));
    }

    #[test]
    fn mirror_negates_signs_and_is_involutive() {
        let d = fig_gauss();
        let m = d.mirror();
        for (a, b) in d.crossings().iter().zip(m.crossings()) {
            assert_eq!(a.sign.flip(), b.sign);
        }
        assert_eq!(m.mirror().canonical_code(), d.canonical_code());
        for p in d.plane_versions() {
            assert_eq!(p.mirror().mirror().canonical_code(), p.canonical_code());
            assert_eq!(p.reverse().reverse().canonical_code(), p.canonical_code());
        }
    }

    #[test]
    fn plane_versions_have_distinct_outer_faces() {
        let d = fig_gauss();
        let ps = d.plane_versions();
        assert_eq!(ps.len(), 3);
        let idx: Vec<_> = ps.iter().map(|p| p.outer_face_index().unwrap()).collect();
        assert_eq!(idx, vec![0, 1, 2]);
    }
}
