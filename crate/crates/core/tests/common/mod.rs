//! Brute-force strand tracer working straight from Gauss tokens, plus shared
//! helpers for the integration suites. It shares no state-sum code with the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use knotoid::diagram::Diagram;
use knotoid::gauss::{all_codes, GaussCode, Pass, Shape, Sign};
use knotoid::poly::Poly;

/// `(A exponent, O exponent, sorted variable names) -> coefficient`.
pub type Table = BTreeMap<(i32, u32, Vec<String>), i64>;

fn add(t: &mut Table, k: (i32, u32, Vec<String>), c: i64) {
    let e = t.entry(k.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        t.remove(&k);
    }
}

/// Library polynomial in the oracle's table form.
pub fn table_of(p: &Poly) -> Table {
    let mut t = Table::new();
    for (m, c) in p.terms() {
        let mut vars = vec![];
        for (v, e) in &m.vars {
            for _ in 0..*e {
                vars.push(v.to_string());
            }
        }
        vars.sort();
        add(&mut t, (m.a, m.o, vars), c);
    }
    t
}

/// `(-A^2 - A^-2)^p` as exponent → coefficient.
fn loop_power(p: u32) -> BTreeMap<i32, i64> {
    let mut out = BTreeMap::from([(0, 1i64)]);
    for _ in 0..p {
        let mut next = BTreeMap::new();
        for (&k, &c) in &out {
            *next.entry(k + 2).or_insert(0) -= c;
            *next.entry(k - 2).or_insert(0) -= c;
        }
        out = next;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Strand ends: edge `e` runs from end `2e` to end `2e + 1`; a token's
/// incoming end is odd, its outgoing end even.
struct Ends {
    m: usize,
    open: bool,
    /// Per crossing: ends counterclockwise starting at the over-strand's incoming end.
    rot: Vec<[usize; 4]>,
    signs: Vec<i32>,
}

impl Ends {
    fn new(code: &GaussCode) -> Ends {
        let m = code.tokens.len();
        let open = code.shape == Shape::Open;
        let inn = |t: usize| 2 * t + 1;
        let out = |t: usize| if open { 2 * (t + 1) } else { 2 * ((t + 1) % m) };
        let mut by_label: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (t, tok) in code.tokens.iter().enumerate() {
            by_label.entry(tok.label).or_default().push(t);
        }
        let mut rot = vec![];
        let mut signs = vec![];
        for ts in by_label.values() {
            let (a, b) = if code.tokens[ts[0]].pass == Pass::Over { (ts[0], ts[1]) } else { (ts[1], ts[0]) };
            let (oi, oo, ui, uo) = (inn(a), out(a), inn(b), out(b));
            if code.tokens[a].sign == Sign::Pos {
                rot.push([oi, ui, oo, uo]);
                signs.push(1);
            } else {
                rot.push([oi, uo, oo, ui]);
                signs.push(-1);
            }
        }
        // Cyclic codes number edges from the token they enter.
        Ends { m, open, rot, signs }
    }

    fn n_ends(&self) -> usize {
        if self.open {
            2 * (self.m + 1)
        } else {
            2 * self.m
        }
    }

    /// Joins at every crossing for a state (`true` = A).
    fn joins(&self, state: &[bool]) -> Vec<usize> {
        let mut j = vec![usize::MAX; self.n_ends()];
        for (r, &a) in self.rot.iter().zip(state) {
            let pairs = if a { [(0, 3), (1, 2)] } else { [(0, 1), (2, 3)] };
            for (p, q) in pairs {
                j[r[p]] = r[q];
                j[r[q]] = r[p];
            }
        }
        j
    }

    fn ccw_next(&self, x: usize) -> usize {
        for r in &self.rot {
            if let Some(i) = r.iter().position(|&y| y == x) {
                return r[(i + 1) % 4];
            }
        }
        unreachable!()
    }
}

struct Component {
    long: bool,
    edges: Vec<usize>,
    cusps: Vec<i8>,
}

fn components(ends: &Ends, state: &[bool]) -> Vec<Component> {
    let j = ends.joins(state);
    let n = ends.n_ends();
    let mut used = vec![false; n / 2];
    let mut out = vec![];
    let mut starts: Vec<usize> = vec![];
    if ends.open {
        starts.push(0);
    }
    starts.extend((0..n).step_by(2));
    for s in starts {
        if used[s / 2] {
            continue;
        }
        let long = ends.open && s == 0;
        let mut x = s;
        let mut edges = vec![];
        let mut cusps = vec![];
        loop {
            used[x / 2] = true;
            edges.push(x / 2);
            let y = x ^ 1;
            if long && y == n - 1 {
                break;
            }
            let p = j[y];
            if y % 2 == p % 2 {
                cusps.push(if ends.ccw_next(y) == p { 1 } else { -1 });
            }
            x = p;
            if x == s {
                break;
            }
        }
        out.push(Component { long, edges, cusps });
    }
    out
}

fn cancel(mut w: Vec<i8>, cyclic: bool) -> Vec<i8> {
    loop {
        let n = w.len();
        let mut hit = None;
        for i in 0..n.saturating_sub(1) {
            if w[i] == w[i + 1] {
                hit = Some((i, i + 1));
                break;
            }
        }
        if hit.is_none() && cyclic && n >= 2 && w[0] == w[n - 1] {
            hit = Some((0, n - 1));
        }
        match hit {
            Some((i, k)) => {
                w.remove(k);
                w.remove(i);
            }
            None => return w,
        }
    }
}

/// Normalized state sums `(bracket, arrow)`. `nest_route` lists the edges
/// crossed by a path from the outer face to one endpoint (plane knotoids
/// only): circles crossed an odd number of times enclose the long component.
pub fn oracle_both(code: &GaussCode, nest_route: Option<&[usize]>) -> (Table, Table) {
    let ends = Ends::new(code);
    let n = ends.rot.len();
    let w: i32 = ends.signs.iter().sum();
    let mut tb = Table::new();
    let mut ta = Table::new();
    if ends.n_ends() == 0 {
        add(&mut tb, (0, 0, vec![]), 1);
        add(&mut ta, (0, 0, vec![]), 1);
        return (tb, ta);
    }
    for mask in 0..(1u32 << n) {
        let state: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 0).collect();
        let sigma: i32 = state.iter().map(|&a| if a { 1 } else { -1 }).sum();
        let comps = components(&ends, &state);
        let circles = comps.iter().filter(|c| !c.long).count() as u32;
        let q = q_of(&comps, nest_route) as u32;
        let mut vars = vec![];
        for c in &comps {
            let red = cancel(c.cusps.clone(), !c.long);
            if red.is_empty() {
                continue;
            }
            let k = red.len() / 2;
            vars.push(if c.long {
                let s = if red[0] > 0 { "+" } else { "-" };
                let pre = if q > 0 { "NL" } else { "L" };
                format!("{pre}{k}{s}")
            } else {
                format!("K{k}")
            });
        }
        vars.sort();
        let mut p = circles - q;
        if !ends.open {
            p -= 1;
        }
        for (k, c) in loop_power(p) {
            add(&mut tb, (sigma + k, q, vec![]), c);
            add(&mut ta, (sigma + k, q, vars.clone()), c);
        }
    }
    // (-A^3)^(-w)
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let norm = |t: Table| -> Table { t.into_iter().map(|((a, o, v), c)| ((a - 3 * w, o, v), c * sign)).collect() };
    (norm(tb), norm(ta))
}

fn q_of(comps: &[Component], route: Option<&[usize]>) -> usize {
    let Some(r) = route else { return 0 };
    comps
        .iter()
        .filter(|c| !c.long && r.iter().filter(|e| c.edges.contains(e)).count() % 2 == 1)
        .count()
}

/// Edges crossed by the dual route from the outer face to the head's face.
pub fn head_route_edges(d: &Diagram) -> Vec<usize> {
    let faces = d.faces();
    let outer = d.outer_face_index().expect("plane diagram");
    let head = faces.face_of[d.head_dart().expect("knotoid")];
    d.dual_route(outer, head).expect("connected").iter().map(|x| x / 2).collect()
}

/// Every spherical diagram with at most `n` crossings of the given shape.
pub fn spherical_diagrams(n: usize, shape: Shape) -> Vec<Diagram> {
    (0..=n).flat_map(|k| all_codes(k, shape)).filter_map(|c| Diagram::realize(c).ok()).collect()
}

/// Every plane diagram of a knotoid with at most `n` crossings.
pub fn plane_diagrams(n: usize) -> Vec<Diagram> {
    spherical_diagrams(n, Shape::Open).iter().flat_map(|d| d.plane_versions()).collect()
}

/// A random simple dual path from the head's face to the tail's face
/// (depth-first with shuffled branches).
pub fn random_route(d: &Diagram, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let faces = d.faces();
    let (tail, head) = d.endpoint_faces().unwrap();
    let map = d.map();
    fn go(
        f: usize,
        goal: usize,
        faces: &knotoid::combmap::FaceSet,
        map: &knotoid::combmap::CombMap,
        seen: &mut Vec<bool>,
        path: &mut Vec<usize>,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> bool {
        if f == goal {
            return true;
        }
        let mut darts = faces.faces[f].clone();
        darts.shuffle(rng);
        for x in darts {
            let g = faces.face_of[map.alpha(x)];
            if seen[g] || path.iter().any(|&y| y / 2 == x / 2) {
                continue;
            }
            seen[g] = true;
            path.push(x);
            if go(g, goal, faces, map, seen, path, rng) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut seen = vec![false; faces.len()];
    seen[head] = true;
    let mut path = vec![];
    assert!(go(head, tail, &faces, map, &mut seen, &mut path, &mut rng));
    path
}
