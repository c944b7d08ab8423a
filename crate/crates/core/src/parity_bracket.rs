//! Parity bracket: odd crossings become rigid nodes, even crossings are
//! smoothed, and each state's graph is reduced by removing node bigons.
//!
//! A state is kept as an arrangement drawn on the diagram's surface: the
//! node graph (chains of diagram edges between nodes and endpoints) plus the
//! regions of the complement, tracked as unions of diagram faces. Graph
//! coefficients are compared through a canonical key of the arrangement, up
//! to sphere isotopy or plane isotopy fixing the outer region.

use std::collections::BTreeMap;
use std::fmt;

use crate::combmap::{CombMap, Dart};
use crate::diagram::{Diagram, DartRole, Mode};
use crate::error::{Error, Result};
use crate::parity::crossing_parities;
use crate::poly::Poly;
use crate::state::{fold_states, trace, Choice, Slots};

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphMode {
    Sphere,
    Plane,
}

/// Canonical key of a graph coefficient; empty for the node-free state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphKey(pub Vec<u32>);

impl GraphKey {
    pub fn is_node_free(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GraphKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("[]");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&x| match x {
                OPEN => "(".to_string(),
                CLOSE => ")".to_string(),
                R_OPEN => "{".to_string(),
                R_CLOSE => "}".to_string(),
                x => x.to_string(),
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

const OPEN: u32 = u32::MAX;
const CLOSE: u32 = u32::MAX - 1;
const R_OPEN: u32 = u32::MAX - 2;
const R_CLOSE: u32 = u32::MAX - 3;

/// A removable bigon: chains `x1–y1` and `x2–y2` between nodes, with `x2`
/// following `x1` counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bigon {
    pub x1: Dart,
    pub x2: Dart,
    pub y1: Dart,
    pub y2: Dart,
}

/// The node graph of one state, embedded in the diagram's surface.
#[derive(Clone, Debug)]
pub struct ParityGraph {
    sigma: Vec<Dart>,
    /// Dart at the other end of the chain leaving each live vertex dart.
    link: Vec<Option<Dart>>,
    is_node: Vec<bool>,
    attr: Vec<u32>,
    face_of: Vec<usize>,
    regions: UnionFind,
    outer_face: Option<usize>,
    tail: Option<Dart>,
    head: Option<Dart>,
    /// Node-free circles, including those freed by bigon reduction.
    pub free_loops: u32,
}

impl ParityGraph {
    /// Builds the graph of the state `choices`, where odd crossings carry
    /// `Choice::Node`. In sphere mode the outer face is ignored.
    pub fn from_state(d: &Diagram, slots: &Slots, choices: &[Choice], mode: GraphMode) -> ParityGraph {
        let map = d.map();
        let n = map.num_darts();
        let faces = d.faces();
        let mut regions = UnionFind::new(faces.len());
        for (c, x) in d.crossings().iter().enumerate() {
            if choices[c] == Choice::Node {
                continue;
            }
            let open: Vec<usize> = (0..4)
                .filter(|&k| choices[c].partner(k) != (k + 1) % 4)
                .map(|k| faces.face_of[x.darts[(k + 1) % 4]])
                .collect();
            regions.union(open[0], open[1]);
        }
        let (comps, _) = trace(d, slots, choices);
        let mut live = vec![false; n];
        let mut free_loops = 0;
        let mut tail = None;
        let mut head = None;
        for comp in &comps {
            if comp.has_node(slots, choices) {
                for &x in &comp.darts {
                    if let Some((c, _)) = slots.slot(x) {
                        if choices[c] == Choice::Node {
                            live[x] = true;
                        }
                    }
                    let y = map.alpha(x);
                    if let Some((c, _)) = slots.slot(y) {
                        if choices[c] == Choice::Node {
                            live[y] = true;
                        }
                    }
                }
                if comp.long {
                    tail = d.tail_dart();
                    head = d.head_dart();
                }
            } else {
                for &x in &comp.darts {
                    regions.union(faces.face_of[x], faces.face_of[map.alpha(x)]);
                }
                if !comp.long {
                    free_loops += 1;
                }
            }
        }
        for e in [tail, head].into_iter().flatten() {
            live[e] = true;
        }
        let mut link = vec![None; n];
        for x in 0..n {
            if !live[x] {
                continue;
            }
            let mut w = x;
            loop {
                let y = map.alpha(w);
                if live[y] {
                    link[x] = Some(y);
                    break;
                }
                w = slots.junction(choices, y).expect("chains end at live darts");
            }
        }
        let attr = (0..n)
            .map(|x| match d.dart_role(x) {
                DartRole::Tail => 5,
                DartRole::Head => 6,
                _ => 1,
            })
            .collect();
        let is_node = (0..n)
            .map(|x| slots.slot(x).is_some_and(|(c, _)| choices[c] == Choice::Node))
            .collect();
        let outer_face = match (d.mode(), mode) {
            (Mode::Plane { outer }, GraphMode::Plane) => Some(faces.face_of[outer]),
            _ => None,
        };
        ParityGraph {
            sigma: (0..n).map(|x| map.sigma(x)).collect(),
            link,
            is_node,
            attr,
            face_of: faces.face_of,
            regions,
            outer_face,
            tail,
            head,
            free_loops,
        }
    }

    fn live(&self, x: Dart) -> bool {
        self.link[x].is_some()
    }

    pub fn node_count(&self) -> usize {
        (0..self.link.len()).filter(|&x| self.live(x) && self.is_node[x]).count() / 4
    }

    pub fn is_node_free(&self) -> bool {
        self.node_count() == 0
    }

    fn region(&mut self, x: Dart) -> usize {
        self.regions.find(self.face_of[x])
    }

    /// Region of the corner between `x` and its counterclockwise successor.
    fn corner(&mut self, x: Dart) -> usize {
        let s = self.sigma[x];
        self.region(s)
    }

    fn outer_region(&mut self) -> Option<usize> {
        self.outer_face.map(|f| self.regions.find(f))
    }

    /// Bigons available for reduction, in dart order.
    pub fn bigons(&mut self) -> Vec<Bigon> {
        let n = self.link.len();
        let mut sides: BTreeMap<usize, Vec<(Dart, Dart)>> = BTreeMap::new();
        for x in 0..n {
            let Some(y) = self.link[x] else { continue };
            if x > y {
                continue;
            }
            // Corner regions on both sides of the chain, seen from `x`.
            let right = self.region(x);
            let left = self.corner(x);
            sides.entry(right).or_default().push((x, y));
            sides.entry(left).or_default().push((x, y));
        }
        let outer = self.outer_region();
        let mut out = vec![];
        for (r, s) in sides {
            if s.len() != 2 || s[0] == s[1] || Some(r) == outer {
                continue;
            }
            let (a, b) = (s[0], s[1]);
            let candidates = [
                (a.0, a.1, b.0, b.1),
                (a.0, a.1, b.1, b.0),
                (a.1, a.0, b.0, b.1),
                (a.1, a.0, b.1, b.0),
            ];
            for (x1, y1, x2, y2) in candidates {
                if !(self.is_node[x1] && self.is_node[x2] && self.is_node[y1] && self.is_node[y2]) {
                    continue;
                }
                if self.sigma[x1] != x2 {
                    continue;
                }
                let vx = self.vertex(x1);
                let vy = self.vertex(y1);
                if vx == vy || self.vertex(y2) != vy {
                    continue;
                }
                if !(self.sigma[y1] == y2 || self.sigma[y2] == y1) {
                    continue;
                }
                if self.corner(x1) != r {
                    continue;
                }
                let ry = if self.sigma[y1] == y2 { self.corner(y1) } else { self.corner(y2) };
                if ry != r {
                    continue;
                }
                out.push(Bigon { x1, x2, y1, y2 });
                break;
            }
        }
        out
    }

    /// Smallest dart at the vertex of `x`.
    fn vertex(&self, x: Dart) -> Dart {
        let mut m = x;
        let mut y = self.sigma[x];
        while y != x {
            m = m.min(y);
            y = self.sigma[y];
        }
        m
    }

    fn opposite(&self, x: Dart) -> Dart {
        self.sigma[self.sigma[x]]
    }

    /// Removes the two nodes of `b`, joining the through-strands in parallel.
    pub fn reduce(&mut self, b: Bigon) {
        let Bigon { x1, x2, y1, y2 } = b;
        // Regions between the parallel strands merge with the bigon.
        let r = self.corner(x1);
        let q = self.corner(self.opposite(x1));
        let qy = if self.sigma[y1] == y2 {
            self.corner(self.opposite(y1))
        } else {
            self.corner(self.opposite(y2))
        };
        self.regions.union(r, q);
        self.regions.union(r, qy);
        let mut through = BTreeMap::new();
        for (a, c) in [(x1, y1), (x2, y2)] {
            let (oa, oc) = (self.opposite(a), self.opposite(c));
            through.insert(oa, oc);
            through.insert(oc, oa);
        }
        let removed: Vec<Dart> = [x1, y1]
            .iter()
            .flat_map(|&v| {
                let mut ds = vec![v];
                let mut y = self.sigma[v];
                while y != v {
                    ds.push(y);
                    y = self.sigma[y];
                }
                ds
            })
            .collect();
        let gone = |x: Dart| removed.contains(&x);
        let mut visited: Vec<Dart> = vec![];
        let mut updates = vec![];
        for p in 0..self.link.len() {
            let Some(mut z) = self.link[p] else { continue };
            if gone(p) || !gone(z) {
                continue;
            }
            loop {
                visited.push(z);
                let w = through[&z];
                visited.push(w);
                let next = self.link[w].expect("live");
                if gone(next) {
                    z = next;
                } else {
                    updates.push((p, next));
                    break;
                }
            }
        }
        for (p, q) in updates {
            self.link[p] = Some(q);
        }
        // Closed strands made only of removed ports become free circles.
        for &z in through.keys() {
            if visited.contains(&z) {
                continue;
            }
            let mut cur = z;
            loop {
                visited.push(cur);
                let w = through[&cur];
                visited.push(w);
                cur = self.link[w].expect("live");
                if cur == z {
                    break;
                }
            }
            self.free_loops += 1;
        }
        for x in removed {
            self.link[x] = None;
        }
        self.drop_free_long();
    }

    /// A long strand with no nodes left leaves the graph.
    fn drop_free_long(&mut self) {
        if let (Some(t), Some(h)) = (self.tail, self.head) {
            if self.link[t] == Some(h) {
                let a = self.region(t);
                let b = self.corner(t);
                self.regions.union(a, b);
                self.link[t] = None;
                self.link[h] = None;
                self.tail = None;
                self.head = None;
            }
        }
    }

    /// Reduces bigons, always taking the first available one, until none remain.
    pub fn reduce_all(&mut self) {
        self.drop_free_long();
        while let Some(b) = self.bigons().first().copied() {
            self.reduce(b);
        }
    }

    /// Live darts renumbered into a map, with attributes.
    fn to_map(&self) -> (CombMap, Vec<Dart>, Vec<u32>) {
        let darts: Vec<Dart> = (0..self.link.len()).filter(|&x| self.live(x)).collect();
        let mut index = vec![usize::MAX; self.link.len()];
        for (i, &x) in darts.iter().enumerate() {
            index[x] = i;
        }
        let alpha = darts.iter().map(|&x| index[self.link[x].unwrap()]).collect();
        let sigma = darts.iter().map(|&x| index[self.sigma[x]]).collect();
        let attr = darts.iter().map(|&x| self.attr[x]).collect();
        (CombMap::new(alpha, sigma).expect("graph map"), darts, attr)
    }

    /// Canonical key of the arrangement (after reduction).
    pub fn key(&mut self, mode: GraphMode) -> GraphKey {
        if self.link.iter().all(|l| l.is_none()) {
            return GraphKey::default();
        }
        let (map, darts, attr) = self.to_map();
        let region: Vec<usize> = darts.iter().map(|&x| self.region(x)).collect();
        let outer = self.outer_region();
        let arr = Arrangement::new(&map, &attr, &region);
        match mode {
            GraphMode::Sphere => GraphKey(arr.sphere_key()),
            GraphMode::Plane => {
                let outer = outer.expect("plane graphs carry an outer face");
                GraphKey(arr.plane_key(outer))
            }
        }
    }
}

/// Components of an embedded (possibly disconnected) graph, each with its
/// faces labelled by the complementary region they open onto.
struct Arrangement {
    comps: Vec<Piece>,
    /// Region → (component, face) pairs adjacent to it.
    by_region: BTreeMap<usize, Vec<(usize, usize)>>,
}

struct Piece {
    map: CombMap,
    attr: Vec<u32>,
    face_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
    face_region: Vec<usize>,
}

impl Arrangement {
    fn new(map: &CombMap, attr: &[u32], region: &[usize]) -> Arrangement {
        let mut comps = vec![];
        let mut by_region: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for ds in map.components() {
            let mut index = vec![usize::MAX; map.num_darts()];
            for (i, &x) in ds.iter().enumerate() {
                index[x] = i;
            }
            let alpha = ds.iter().map(|&x| index[map.alpha(x)]).collect();
            let sigma = ds.iter().map(|&x| index[map.sigma(x)]).collect();
            let sub = CombMap::new(alpha, sigma).expect("component map");
            let fs = sub.faces();
            let face_region: Vec<usize> = fs.faces.iter().map(|f| region[ds[f[0]]]).collect();
            let ci = comps.len();
            for (fi, &r) in face_region.iter().enumerate() {
                by_region.entry(r).or_default().push((ci, fi));
            }
            comps.push(Piece {
                map: sub,
                attr: ds.iter().map(|&x| attr[x]).collect(),
                face_of: fs.face_of,
                faces: fs.faces,
                face_region,
            });
        }
        Arrangement { comps, by_region }
    }

    fn enc_comp(&self, c: usize, entry: Option<usize>) -> Vec<u32> {
        let p = &self.comps[c];
        let roots: Vec<Dart> = match entry {
            Some(f) => p.faces[f].clone(),
            None => (0..p.map.num_darts()).collect(),
        };
        let mut best: Option<Vec<u32>> = None;
        for r in roots {
            let (code, order) = p.map.rooted_code(r, &|x| p.attr[x]);
            let mut out = vec![OPEN];
            out.extend(code);
            let mut seen = vec![false; p.faces.len()];
            if let Some(f) = entry {
                seen[f] = true;
            }
            for &x in &order {
                let f = p.face_of[x];
                if seen[f] {
                    continue;
                }
                seen[f] = true;
                out.extend(self.enc_region(p.face_region[f], c));
            }
            out.push(CLOSE);
            if best.as_ref().is_none_or(|b| out < *b) {
                best = Some(out);
            }
        }
        best.unwrap_or_default()
    }

    fn enc_region(&self, r: usize, from: usize) -> Vec<u32> {
        let mut kids: Vec<Vec<u32>> = self.by_region[&r]
            .iter()
            .filter(|&&(c, _)| c != from)
            .map(|&(c, f)| self.enc_comp(c, Some(f)))
            .collect();
        kids.sort();
        let mut out = vec![R_OPEN];
        for k in kids {
            out.extend(k);
        }
        out.push(R_CLOSE);
        out
    }

    fn sphere_key(&self) -> Vec<u32> {
        (0..self.comps.len()).map(|c| self.enc_comp(c, None)).min().unwrap_or_default()
    }

    fn plane_key(&self, outer: usize) -> Vec<u32> {
        match self.by_region.get(&outer) {
            Some(_) => self.enc_region(outer, usize::MAX),
            None => vec![],
        }
    }
}

/// One parity state: the choices at even crossings and the reduced graph.
#[derive(Clone, Debug)]
pub struct ParityState {
    pub choice: Vec<Choice>,
    pub graph: ParityGraph,
}

impl ParityState {
    /// `#A - #B` over the smoothed crossings.
    pub fn n(&self) -> i32 {
        self.choice
            .iter()
            .map(|c| match c {
                Choice::A => 1,
                Choice::B => -1,
                Choice::Node => 0,
            })
            .sum()
    }
}

fn node_choices(d: &Diagram) -> (Vec<Choice>, Vec<usize>) {
    let odd = crossing_parities(d);
    let fixed = odd.iter().map(|&o| if o { Choice::Node } else { Choice::A }).collect();
    let free = odd.iter().enumerate().filter(|(_, &o)| !o).map(|(i, _)| i).collect();
    (fixed, free)
}

/// All states with unreduced graphs: odd crossings are nodes, even ones smoothed both ways.
pub fn parity_states(d: &Diagram, mode: GraphMode) -> Vec<ParityState> {
    let slots = Slots::new(d);
    let (fixed, free) = node_choices(d);
    let mut out = vec![];
    for mask in 0..(1u64 << free.len()) {
        let mut choice = fixed.clone();
        for (bit, &c) in free.iter().enumerate() {
            choice[c] = if mask >> bit & 1 == 1 { Choice::B } else { Choice::A };
        }
        let graph = ParityGraph::from_state(d, &slots, &choice, mode);
        out.push(ParityState { choice, graph });
    }
    out
}

/// Bigon-reduced copy of `g`.
pub fn reduce_bigons(g: &ParityGraph) -> ParityGraph {
    let mut h = g.clone();
    h.reduce_all();
    h
}

/// Sum of graph-weighted Laurent polynomials, keyed by canonical graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityStateSum {
    pub terms: BTreeMap<GraphKey, Poly>,
}

impl ParityStateSum {
    fn add(&mut self, key: GraphKey, p: Poly) {
        let e = self.terms.entry(key.clone()).or_default();
        *e += p;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn merge(mut self, other: ParityStateSum) -> ParityStateSum {
        for (k, p) in other.terms {
            self.add(k, p);
        }
        self
    }

    pub fn scale(&self, p: &Poly) -> ParityStateSum {
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * p)).collect();
        ParityStateSum { terms }
    }

    /// Coefficients other than the node-free one.
    pub fn graph_count(&self) -> usize {
        self.terms.keys().filter(|k| !k.is_node_free()).count()
    }

    /// The coefficient of the node-free graph.
    pub fn node_free_part(&self) -> Poly {
        self.terms.get(&GraphKey::default()).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.node_free_part().is_one()
    }
}

impl fmt::Display for ParityStateSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let lines: Vec<String> = self.terms.iter().map(|(k, p)| format!("{k}: {p}")).collect();
        f.write_str(&lines.join("\n"))
    }
}

fn graph_mode(d: &Diagram, mode: GraphMode) -> Result<()> {
    if mode == GraphMode::Plane && !matches!(d.mode(), Mode::Plane { .. }) {
        return Err(Error::OuterFaceRequired);
    }
    Ok(())
}

/// `Σ_S A^n(S) d^l(S) G(S)` with graphs compared in `mode`.
pub fn parity_bracket(d: &Diagram, mode: GraphMode) -> Result<ParityStateSum> {
    graph_mode(d, mode)?;
    if d.map().num_darts() == 0 {
        return Ok(ParityStateSum { terms: BTreeMap::from([(GraphKey::default(), Poly::one())]) });
    }
    let slots = Slots::new(d);
    let (fixed, free) = node_choices(d);
    let closed = !d.is_knotoid();
    let sum = fold_states(
        fixed.len(),
        &free,
        &fixed,
        |acc: &mut ParityStateSum, ch| {
            let mut g = ParityGraph::from_state(d, &slots, ch, mode);
            g.reduce_all();
            let key = g.key(mode);
            let n: i32 = ch
                .iter()
                .map(|c| match c {
                    Choice::A => 1,
                    Choice::B => -1,
                    Choice::Node => 0,
                })
                .sum();
            let loops = if closed && key.is_node_free() {
                g.free_loops.saturating_sub(1)
            } else {
                g.free_loops
            };
            acc.add(key, Poly::loop_pow(loops).shift(n, 1));
        },
        ParityStateSum::merge,
    );
    Ok(sum)
}

/// `(-A^3)^(-wr) <K>_P`.
pub fn normalized_parity_bracket(d: &Diagram, mode: GraphMode) -> Result<ParityStateSum> {
    Ok(parity_bracket(d, mode)?.scale(&Poly::writhe_factor(d.writhe())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::normalized_bracket;

    fn fig_gauss() -> Diagram {
        Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap()
    }

    #[test]
    fn all_even_is_the_bracket() {
        let d = Diagram::parse("knotoid: O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let p = normalized_parity_bracket(&d, GraphMode::Sphere).unwrap();
        assert_eq!(p.graph_count(), 0);
        assert_eq!(p.node_free_part(), normalized_bracket(&d));
        let k = Diagram::parse("knot: O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let p = normalized_parity_bracket(&k, GraphMode::Sphere).unwrap();
        assert_eq!(p.node_free_part(), normalized_bracket(&k));
    }

    #[test]
    fn two_odd_crossings_one_state() {
        let d = fig_gauss();
        let states = parity_states(&d, GraphMode::Sphere);
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].graph.node_count(), 2);
    }

    #[test]
    fn sphere_has_no_graph_coefficient() {
        let p = normalized_parity_bracket(&fig_gauss(), GraphMode::Sphere).unwrap();
        assert_eq!(p.graph_count(), 0, "{p}");
    }

    #[test]
    fn sphere_ignores_outer_face() {
        let d = fig_gauss();
        let s = normalized_parity_bracket(&d, GraphMode::Sphere).unwrap();
        for p in d.plane_versions() {
            assert_eq!(normalized_parity_bracket(&p, GraphMode::Sphere).unwrap(), s);
        }
    }

    #[test]
    fn plane_needs_outer_face() {
        assert_eq!(parity_bracket(&fig_gauss(), GraphMode::Plane), Err(Error::OuterFaceRequired));
    }

    #[test]
    fn reduction_order_is_irrelevant() {
        for seed in 0..30 {
            let d = crate::walk::random_knotoid(7, 50, seed);
            for st in parity_states(&d, GraphMode::Sphere) {
                let first = reduce_bigons(&st.graph);
                let mut last = st.graph.clone();
                last.drop_free_long();
                while let Some(b) = last.bigons().last().copied() {
                    last.reduce(b);
                }
                let (mut a, mut b) = (first.clone(), last.clone());
                assert_eq!(a.key(GraphMode::Sphere), b.key(GraphMode::Sphere));
                assert_eq!(first.free_loops, last.free_loops);
            }
        }
    }

    #[test]
    fn trivial_is_one() {
        assert!(normalized_parity_bracket(&Diagram::trivial(), GraphMode::Sphere).unwrap().is_one());
        let p = Diagram::trivial().with_outer_face(0).unwrap();
        assert!(normalized_parity_bracket(&p, GraphMode::Plane).unwrap().is_one());
    }
}
