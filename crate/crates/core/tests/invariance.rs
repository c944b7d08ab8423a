use knotoid::arrow::{arrow_polynomial, loop_arrow_polynomial};
use knotoid::brackets::{loop_bracket, normalized_bracket};
use knotoid::diagram::Diagram;
use knotoid::parity::odd_writhe;
use knotoid::walk::random_walk;

#[test]
fn sphere_walks_preserve_invariants() {
    let start = Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap();
    for seed in 0..20 {
        let b0 = normalized_bracket(&start);
        let a0 = arrow_polynomial(&start, true);
        let j0 = odd_writhe(&start).unwrap();
        for s in random_walk(&start, 60, 7, seed) {
            let d = &s.diagram;
            assert_eq!(odd_writhe(d).unwrap(), j0, "seed {seed} {} -> {d}", s.mv);
            assert_eq!(normalized_bracket(d), b0, "seed {seed} {} -> {d}", s.mv);
            assert_eq!(arrow_polynomial(d, true), a0, "seed {seed} {} -> {d}", s.mv);
        }
    }
}

#[test]
fn plane_walks_preserve_invariants() {
    let start = Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap();
    for p in start.plane_versions() {
        let l0 = loop_bracket(&p).unwrap();
        let la0 = loop_arrow_polynomial(&p, true).unwrap();
        for seed in 0..10 {
            for s in random_walk(&p, 60, 7, seed) {
                let d = &s.diagram;
                assert_eq!(loop_bracket(d).unwrap(), l0, "seed {seed} {} -> {d}", s.mv);
                assert_eq!(loop_arrow_polynomial(d, true).unwrap(), la0, "seed {seed} {} -> {d}", s.mv);
            }
        }
    }
}

#[test]
fn walks_use_every_move_kind() {
    let start = Diagram::parse("knotoid: O1+ U2+ U1+ O2+").unwrap();
    let mut kinds = std::collections::BTreeMap::new();
    for seed in 0..10 {
        for s in random_walk(&start, 100, 8, seed) {
            *kinds.entry(s.mv.kind()).or_insert(0) += 1;
        }
    }
    println!("{kinds:?}");
    assert_eq!(kinds.len(), 5, "{kinds:?}");
}

#[test]
fn walks_preserve_parity_bracket() {
    use knotoid::parity_bracket::{normalized_parity_bracket, GraphMode};
    let mut graphs = 0;
    for k in 0..12 {
        let start = knotoid::walk::random_knotoid(6, 40, 100 + k);
        let p0 = normalized_parity_bracket(&start, GraphMode::Sphere).unwrap();
        graphs += p0.graph_count();
        for s in random_walk(&start, 40, 7, k) {
            let d = &s.diagram;
            let p = normalized_parity_bracket(d, GraphMode::Sphere).unwrap();
            assert_eq!(p, p0, "start {start} seed {k} {} -> {d}\n{p}\nvs\n{p0}", s.mv);
        }
        for pv in start.plane_versions() {
            let q0 = normalized_parity_bracket(&pv, GraphMode::Plane).unwrap();
            graphs += q0.graph_count();
            for s in random_walk(&pv, 30, 7, k) {
                let d = &s.diagram;
                let q = normalized_parity_bracket(d, GraphMode::Plane).unwrap();
                assert_eq!(q, q0, "start {pv} seed {k} {} -> {d}\n{q}\nvs\n{q0}", s.mv);
            }
        }
    }
    println!("graph coefficients seen: {graphs}");
    assert!(graphs > 0);
}
