//! Diagrams on the torus with homology weights, the standard torus
//! representation of a knotoid's virtual closure, virtualization, and the
//! multiplicity test on surface bracket states.
//!
//! Homology is read off intersection numbers with two fixed dual curves: a
//! dart carries the pair of signed intersections of its edge (walked from
//! that dart) with them. A state curve's class is the sum along the curve.

use std::collections::VecDeque;
use std::fmt;

use crate::closure::{default_route, virtual_closure};
use crate::combmap::Dart;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::gauss::{GaussCode, Shape, Token};
use crate::state::{choices_from_mask, trace, Choice, Slots};

pub type Class = (i64, i64);

#[derive(Clone, Debug, PartialEq)]
pub struct TorusDiagram {
    /// Cyclic diagram on the surface of its rotation system.
    pub diagram: Diagram,
    /// Per dart; `weight[alpha(d)] == -weight[d]`.
    pub weight: Vec<Class>,
    /// Class of the curve when there are no crossings.
    pub bare_class: Class,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `m` with `class = m · primitive`; 0 for the trivial class.
pub fn multiplicity(c: Class) -> i64 {
    gcd(c.0, c.1)
}

impl TorusDiagram {
    pub fn new(diagram: Diagram, weight: Vec<Class>) -> Result<TorusDiagram> {
        if diagram.is_knotoid() {
            return Err(Error::Torus("torus diagrams are closed".into()));
        }
        if diagram.genus() > 1 {
            return Err(Error::Torus(format!("genus {} exceeds 1", diagram.genus())));
        }
        let map = diagram.map();
        if weight.len() != map.num_darts() {
            return Err(Error::Torus("one weight per dart".into()));
        }
        for x in 0..weight.len() {
            let (w, v) = (weight[x], weight[map.alpha(x)]);
            if w.0 != -v.0 || w.1 != -v.1 {
                return Err(Error::Torus(format!("weights of dart {x} not antisymmetric")));
            }
        }
        Ok(TorusDiagram { diagram, weight, bare_class: (0, 0) })
    }

    /// Weight sums around the faces; all zero when the map fills the torus.
    pub fn face_sums(&self) -> Vec<Class> {
        self.diagram
            .faces()
            .faces
            .iter()
            .map(|f| f.iter().fold((0, 0), |s, &x| (s.0 + self.weight[x].0, s.1 + self.weight[x].1)))
            .collect()
    }

    pub fn face_sums_vanish(&self) -> bool {
        self.diagram.genus() == 0 || self.face_sums().iter().all(|&s| s == (0, 0))
    }

    /// Expresses weights in a new basis: `(p, q) ↦ m · (p, q)` for a unimodular `m`.
    pub fn change_basis(&self, m: [[i64; 2]; 2]) -> TorusDiagram {
        let f = |(p, q): Class| (m[0][0] * p + m[0][1] * q, m[1][0] * p + m[1][1] * q);
        TorusDiagram {
            diagram: self.diagram.clone(),
            weight: self.weight.iter().map(|&w| f(w)).collect(),
            bare_class: f(self.bare_class),
        }
    }

    pub fn curve_class(&self, darts: &[Dart]) -> Class {
        darts.iter().fold((0, 0), |s, &x| (s.0 + self.weight[x].0, s.1 + self.weight[x].1))
    }
}

fn closure_weights(k: &Diagram, route: &[Dart]) -> TorusDiagram {
    let v = virtual_closure(k);
    let n = v.map().num_darts();
    if n == 0 {
        return TorusDiagram { diagram: v, weight: vec![], bare_class: (1, 0) };
    }
    let m = k.token_count();
    let mut weight = vec![(0, 0); n];
    // The closure edge runs from the last token to the first.
    weight[2 * (m - 1)] = (1, 0);
    weight[2 * m - 1] = (-1, 0);
    for &x in route {
        // Open edge e (between tokens e-1 and e) is closed edge e-1.
        let y = x - 2;
        weight[y].1 += 1;
        weight[y ^ 1].1 -= 1;
    }
    TorusDiagram { diagram: v, weight, bare_class: (0, 0) }
}

/// The closure drawn on the sphere with a handle joining the endpoint disks:
/// the closure arc has class `(1, 0)`; strands crossing the dual route from
/// the head's face to the tail's face carry `±(0, 1)`.
pub fn standard_torus_representation(k: &Diagram) -> Result<TorusDiagram> {
    let route = default_route(k)?;
    Ok(closure_weights(k, &route))
}

/// As [`standard_torus_representation`], with the second dual curve along `route`.
pub fn standard_torus_representation_along(k: &Diagram, route: &[Dart]) -> Result<TorusDiagram> {
    let faces = k.faces();
    let (tail, head) = k.endpoint_faces().ok_or(Error::InvalidRoute("no endpoints".into()))?;
    let mut at = head;
    for &x in route {
        if x >= k.map().num_darts() || faces.face_of[x] != at {
            return Err(Error::InvalidRoute(format!("dart {x} does not leave face {at}")));
        }
        at = faces.face_of[k.map().alpha(x)];
    }
    if at != tail {
        return Err(Error::InvalidRoute("route must end at the tail's face".into()));
    }
    Ok(closure_weights(k, route))
}

/// Cohomology basis of a genus-one map from a tree–cotree decomposition:
/// each leftover edge closes a dual cycle through the cotree.
fn cocycle_weights(d: &Diagram) -> Vec<Class> {
    let map = d.map();
    let n = map.num_darts();
    let mut weight = vec![(0, 0); n];
    if n == 0 || d.genus() == 0 {
        return weight;
    }
    let vertex_of = map.vertex_of();
    let nv = vertex_of.iter().max().map_or(0, |&v| v + 1);
    let mut in_tree = vec![false; n / 2];
    let mut seen = vec![false; nv];
    seen[vertex_of[0]] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x0) = queue.pop_front() {
        let mut x = x0;
        loop {
            let y = map.alpha(x);
            if !seen[vertex_of[y]] {
                seen[vertex_of[y]] = true;
                in_tree[x / 2] = true;
                queue.push_back(y);
            }
            x = map.sigma(x);
            if x == x0 {
                break;
            }
        }
    }
    let faces = map.faces();
    let nf = faces.len();
    let mut in_cotree = vec![false; n / 2];
    let mut fseen = vec![false; nf];
    let mut parent: Vec<Option<Dart>> = vec![None; nf];
    fseen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        for &x in &faces.faces[f] {
            let g = faces.face_of[map.alpha(x)];
            if !in_tree[x / 2] && !fseen[g] {
                fseen[g] = true;
                in_cotree[x / 2] = true;
                parent[g] = Some(x);
                queue.push_back(g);
            }
        }
    }
    let leftover: Vec<usize> = (0..n / 2).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
    debug_assert_eq!(leftover.len(), 2);
    let path_to_root = |mut f: usize| {
        let mut out = vec![];
        while let Some(x) = parent[f] {
            out.push(x);
            f = faces.face_of[x];
        }
        out
    };
    for (i, &e) in leftover.iter().enumerate() {
        let x = 2 * e;
        // Cross the leftover edge from face_of[x], then return through the cotree.
        let mut cross = vec![x];
        for y in path_to_root(faces.face_of[map.alpha(x)]) {
            cross.push(map.alpha(y));
        }
        let mut back = path_to_root(faces.face_of[x]);
        back.reverse();
        cross.extend(back);
        for c in cross {
            let (a, b) = (c, map.alpha(c));
            if i == 0 {
                weight[a].0 += 1;
                weight[b].0 -= 1;
            } else {
                weight[a].1 += 1;
                weight[b].1 -= 1;
            }
        }
    }
    weight
}

/// Switches crossing `c` (in crossing order) and flanks it with two virtual
/// crossings: over and under exchange while the local writhe stays, which
/// reverses the rotation at that crossing.
pub fn virtualize(k: &Diagram, c: usize) -> Result<TorusDiagram> {
    let crossing = k
        .crossings()
        .get(c)
        .ok_or_else(|| Error::Torus(format!("no crossing {c}")))?;
    let label = crossing.label;
    let tokens: Vec<Token> = k
        .code()
        .tokens
        .iter()
        .map(|t| if t.label == label { Token { pass: t.pass.flip(), ..*t } } else { *t })
        .collect();
    let d = Diagram::from_code(GaussCode::new(Shape::Cyclic, tokens)?)?;
    let weight = cocycle_weights(&d);
    let t = TorusDiagram::new(d, weight)?;
    Ok(adapt_basis(&t))
}

/// Re-expresses weights so the first two directions of states with
/// multiplicity ≥ 2 become the coordinate axes, when they span the lattice.
fn adapt_basis(t: &TorusDiagram) -> TorusDiagram {
    let mut dirs: Vec<Class> = vec![];
    for s in surface_bracket_states(t) {
        let c = s.total();
        let m = multiplicity(c);
        if m >= 2 {
            let p = (c.0 / m, c.1 / m);
            if !dirs.contains(&p) {
                dirs.push(p);
            }
        }
    }
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            let (a, b) = (dirs[i], dirs[j]);
            let det = a.0 * b.1 - a.1 * b.0;
            if det.abs() == 1 {
                // Inverse of the matrix with columns a, b.
                let inv = [[b.1 * det, -b.0 * det], [-a.1 * det, a.0 * det]];
                return t.change_basis(inv);
            }
        }
    }
    t.clone()
}

/// One A/B state with the classes of its curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceState {
    pub choice: Vec<Choice>,
    pub classes: Vec<Class>,
}

/// State curves are unoriented: classes are taken up to sign, first nonzero coordinate positive.
pub fn unoriented(c: Class) -> Class {
    if c.0 < 0 || (c.0 == 0 && c.1 < 0) {
        (-c.0, -c.1)
    } else {
        c
    }
}

impl SurfaceState {
    /// Classes of the curves not bounding a disk.
    pub fn nontrivial(&self) -> Vec<Class> {
        self.classes.iter().copied().filter(|&c| c != (0, 0)).map(unoriented).collect()
    }

    /// The state's essential curves as one class; they are parallel, so this
    /// is `k · a` for `k` curves of class `a`.
    pub fn total(&self) -> Class {
        self.nontrivial().iter().fold((0, 0), |s, c| (s.0 + c.0, s.1 + c.1))
    }
}

pub fn surface_bracket_states(t: &TorusDiagram) -> Vec<SurfaceState> {
    let d = &t.diagram;
    if d.map().num_darts() == 0 {
        return vec![SurfaceState { choice: vec![], classes: vec![t.bare_class] }];
    }
    let slots = Slots::new(d);
    let n = d.crossing_count();
    (0..1u64 << n)
        .map(|mask| {
            let choice = choices_from_mask(n, mask);
            let (comps, _) = trace(d, &slots, &choice);
            let classes = comps.iter().map(|c| t.curve_class(&c.darts)).collect();
            SurfaceState { choice, classes }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A state whose essential curves add up to a class of multiplicity ≥ 2.
    NotInImage { state: usize, witness: Class },
    /// Every state has at most one essential curve and it is primitive;
    /// necessary for lying in the image, not sufficient.
    PassesNecessaryCondition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    /// Essential curve classes of every state.
    pub states: Vec<Vec<Class>>,
    /// Every essential curve is primitive.
    pub all_primitive: bool,
    /// Every essential curve has the form `(±1, k)`.
    pub all_unit_lambda: bool,
}

pub fn image_obstruction_test(t: &TorusDiagram) -> ObstructionReport {
    let states: Vec<Vec<Class>> = surface_bracket_states(t).iter().map(|s| s.nontrivial()).collect();
    let verdict = surface_bracket_states(t)
        .iter()
        .enumerate()
        .find(|(_, s)| {
            let nt = s.nontrivial();
            nt.len() >= 2 || nt.iter().any(|&c| multiplicity(c) >= 2)
        })
        .map(|(i, s)| Verdict::NotInImage { state: i, witness: s.total() })
        .unwrap_or(Verdict::PassesNecessaryCondition);
    let all = || states.iter().flatten();
    ObstructionReport {
        all_primitive: all().all(|&c| multiplicity(c) == 1),
        all_unit_lambda: all().all(|&c| c.0.abs() == 1),
        verdict,
        states,
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotInImage { witness: (p, q), .. } => write!(f, "NOT_IN_IMAGE witness=({p},{q})"),
            Verdict::PassesNecessaryCondition => f.write_str("PASSES_NECESSARY_CONDITION"),
        }
    }
}
