//! Oriented combinatorial maps.
//!
//! A map is a pair of permutations on a finite set of darts `0..n`:
//! `alpha` is a fixed-point-free involution pairing the two darts of each
//! edge, and `sigma` lists the darts around each vertex in counterclockwise
//! order. Faces are the orbits of `phi = sigma ∘ alpha`; the face of a dart
//! lies to its right when walking away from its vertex.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Dart = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombMap {
    alpha: Vec<Dart>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    outer: Option<Dart>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    /// Faces in order of their smallest dart; each face lists its darts in `phi` order.
    pub faces: Vec<Vec<Dart>>,
    /// Face id of every dart.
    pub face_of: Vec<usize>,
    pub outer: Option<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootPolicy {
    Fixed(Dart),
    AllRoots,
    OuterFace,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub code: Vec<u32>,
}

impl CombMap {
    pub fn new(alpha: Vec<Dart>, sigma: Vec<Dart>) -> Result<Self> {
        let n = alpha.len();
        if sigma.len() != n {
            return Err(Error::MalformedMap(format!(
                "alpha has {} darts, sigma has {}",
                n,
                sigma.len()
            )));
        }
        for (d, &a) in alpha.iter().enumerate() {
            if a >= n {
                return Err(Error::MalformedMap(format!("alpha({d}) = {a} out of range")));
            }
            if a == d {
                return Err(Error::MalformedMap(format!("alpha fixes dart {d}")));
            }
            if alpha[a] != d {
                return Err(Error::MalformedMap(format!("alpha is not an involution at {d}")));
            }
        }
        let mut sigma_inv = vec![usize::MAX; n];
        for (d, &s) in sigma.iter().enumerate() {
            if s >= n || sigma_inv[s] != usize::MAX {
                return Err(Error::MalformedMap(format!("sigma is not a permutation at {d}")));
            }
            sigma_inv[s] = d;
        }
        Ok(CombMap { alpha, sigma, sigma_inv, outer: None })
    }

    /// Marks the face containing `dart` as the outer face.
    pub fn with_outer(mut self, dart: Dart) -> Result<Self> {
        if dart >= self.num_darts() {
            return Err(Error::MalformedMap(format!("outer dart {dart} out of range")));
        }
        self.outer = Some(dart);
        Ok(self)
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn num_darts(&self) -> usize {
        self.alpha.len()
    }

    pub fn num_edges(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }

    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d]]
    }

    pub fn alphas(&self) -> &[Dart] {
        &self.alpha
    }

    pub fn sigmas(&self) -> &[Dart] {
        &self.sigma
    }

    fn orbits(&self, next: impl Fn(Dart) -> Dart) -> Vec<Vec<Dart>> {
        let n = self.num_darts();
        let mut seen = vec![false; n];
        let mut out = vec![];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![];
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                orbit.push(d);
                d = next(d);
            }
            out.push(orbit);
        }
        out
    }

    /// Sigma orbits, ordered by smallest dart.
    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.sigma[d])
    }

    pub fn vertex_of(&self) -> Vec<usize> {
        let mut v = vec![0; self.num_darts()];
        for (i, orbit) in self.vertices().iter().enumerate() {
            for &d in orbit {
                v[d] = i;
            }
        }
        v
    }

    pub fn faces(&self) -> FaceSet {
        let faces = self.orbits(|d| self.phi(d));
        let mut face_of = vec![0; self.num_darts()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f {
                face_of[d] = i;
            }
        }
        let outer = self.outer.map(|d| face_of[d]);
        FaceSet { faces, face_of, outer }
    }

    /// Faces traced backwards with `alpha ∘ sigma⁻¹`, reversed into `phi` order.
    pub fn faces_by_backward_walk(&self) -> Vec<Vec<Dart>> {
        let mut faces = self.orbits(|d| self.alpha[self.sigma_inv[d]]);
        for f in faces.iter_mut() {
            f.reverse();
            let k = f.iter().enumerate().min_by_key(|(_, &d)| d).map(|(i, _)| i).unwrap_or(0);
            f.rotate_left(k);
        }
        faces.sort();
        faces
    }

    /// Connected components as sorted dart lists.
    pub fn components(&self) -> Vec<Vec<Dart>> {
        let n = self.num_darts();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<Dart>> = vec![];
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut darts = vec![];
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(d) = stack.pop() {
                darts.push(d);
                for e in [self.alpha[d], self.sigma[d], self.sigma_inv[d]] {
                    if comp[e] == usize::MAX {
                        comp[e] = id;
                        stack.push(e);
                    }
                }
            }
            darts.sort_unstable();
            out.push(darts);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices().len() as i64;
        let e = self.num_edges() as i64;
        let f = self.faces().len() as i64;
        v - e + f
    }

    pub fn genus(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.num_darts() == 0 {
            return Ok(0);
        }
        let defect = 2 - self.euler_characteristic();
        if defect < 0 || defect % 2 != 0 {
            return Err(Error::MalformedMap(format!("Euler defect {defect} is not a genus")));
        }
        Ok((defect / 2) as usize)
    }

    /// Breadth-first labelling from `root`: the code lists, for every dart in
    /// label order, the labels of its sigma-successor and alpha-partner plus
    /// the attribute. Returns the code and the darts in label order.
    pub fn rooted_code(&self, root: Dart, attr: &dyn Fn(Dart) -> u32) -> (Vec<u32>, Vec<Dart>) {
        let n = self.num_darts();
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        label[root] = 0;
        order.push(root);
        queue.push_back(root);
        while let Some(d) = queue.pop_front() {
            for e in [self.sigma[d], self.alpha[d]] {
                if label[e] == u32::MAX {
                    label[e] = order.len() as u32;
                    order.push(e);
                    queue.push_back(e);
                }
            }
        }
        let mut code = Vec::with_capacity(3 * order.len());
        for &d in &order {
            code.push(label[self.sigma[d]]);
            code.push(label[self.alpha[d]]);
            code.push(attr(d));
        }
        (code, order)
    }

    pub fn canonical_code(&self, policy: RootPolicy) -> Result<CanonicalCode> {
        self.canonical_code_with(policy, &|_| 0)
    }

    pub fn canonical_code_with(
        &self,
        policy: RootPolicy,
        attr: &dyn Fn(Dart) -> u32,
    ) -> Result<CanonicalCode> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let roots: Vec<Dart> = match policy {
            RootPolicy::Fixed(d) => {
                if d >= self.num_darts() {
                    return Err(Error::MalformedMap(format!("root {d} out of range")));
                }
                vec![d]
            }
            RootPolicy::AllRoots => (0..self.num_darts()).collect(),
            RootPolicy::OuterFace => {
                let outer = self.outer.ok_or(Error::MissingOuterFace)?;
                let mut face = vec![outer];
                let mut d = self.phi(outer);
                while d != outer {
                    face.push(d);
                    d = self.phi(d);
                }
                face
            }
        };
        let code = roots
            .into_iter()
            .map(|r| self.rooted_code(r, attr).0)
            .min()
            .unwrap_or_default();
        Ok(CanonicalCode { code })
    }

    /// Renames dart `d` to `perm[d]`.
    pub fn relabel(&self, perm: &[Dart]) -> Result<CombMap> {
        let n = self.num_darts();
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for d in 0..n {
            alpha[perm[d]] = perm[self.alpha[d]];
            sigma[perm[d]] = perm[self.sigma[d]];
        }
        let m = CombMap::new(alpha, sigma)?;
        match self.outer {
            Some(o) => m.with_outer(perm[o]),
            None => Ok(m),
        }
    }

    /// Orientation-reversed map (every vertex rotation reversed). The outer
    /// marker follows the same geometric corner.
    pub fn reflected(&self) -> CombMap {
        let mut m = CombMap {
            alpha: self.alpha.clone(),
            sigma: self.sigma_inv.clone(),
            sigma_inv: self.sigma.clone(),
            outer: None,
        };
        m.outer = self.outer.map(|o| self.sigma_inv[o]);
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> CombMap {
        CombMap::new(vec![1, 0], vec![0, 1]).unwrap()
    }

    // one transversal self-crossing: darts 0..4 ccw, loops join adjacent darts
    fn figure_eight_curve() -> CombMap {
        CombMap::new(vec![1, 0, 3, 2], vec![1, 2, 3, 0]).unwrap()
    }

    #[test]
    fn interval_faces() {
        let m = interval();
        assert_eq!(m.faces().len(), 1);
        assert_eq!(m.genus().unwrap(), 0);
    }

    #[test]
    fn figure_eight_faces() {
        let m = figure_eight_curve();
        assert_eq!(m.faces().len(), 3);
        assert_eq!(m.genus().unwrap(), 0);
    }

    #[test]
    fn interleaved_loops_are_toroidal() {
        let m = CombMap::new(vec![2, 3, 0, 1], vec![1, 2, 3, 0]).unwrap();
        assert_eq!(m.faces().len(), 1);
        assert_eq!(m.genus().unwrap(), 1);
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(matches!(CombMap::new(vec![0, 1], vec![0, 1]), Err(Error::MalformedMap(_))));
        assert!(matches!(CombMap::new(vec![1, 1], vec![0, 1]), Err(Error::MalformedMap(_))));
        assert!(matches!(CombMap::new(vec![1, 0], vec![1, 1]), Err(Error::MalformedMap(_))));
    }

    #[test]
    fn disconnected_genus() {
        let m = CombMap::new(vec![1, 0, 3, 2], vec![0, 1, 2, 3]).unwrap();
        assert_eq!(m.genus(), Err(Error::Disconnected));
    }

    #[test]
    fn outer_face_required() {
        let m = interval();
        assert_eq!(m.canonical_code(RootPolicy::OuterFace), Err(Error::MissingOuterFace));
        assert!(m.with_outer(0).unwrap().canonical_code(RootPolicy::OuterFace).is_ok());
    }

    #[test]
    fn relabel_invariance() {
        let m = figure_eight_curve();
        let r = m.relabel(&[2, 0, 3, 1]).unwrap();
        assert_eq!(
            m.canonical_code(RootPolicy::AllRoots).unwrap(),
            r.canonical_code(RootPolicy::AllRoots).unwrap()
        );
    }

    #[test]
    fn backward_walk_agrees() {
        let m = figure_eight_curve();
        let mut f = m.faces().faces;
        f.sort();
        assert_eq!(f, m.faces_by_backward_walk());
    }
}
