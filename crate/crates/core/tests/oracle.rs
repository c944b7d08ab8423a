mod common;

use common::{head_route_edges, oracle_both, plane_diagrams, spherical_diagrams, table_of};
use knotoid::arrow::{arrow_polynomial, loop_arrow_polynomial};
use knotoid::brackets::{loop_bracket, normalized_bracket};
use knotoid::gauss::Shape;

// The acceptance target repeats this exhaustively at five crossings.
const N: usize = 4;

#[test]
fn sphere_sums_match_strand_tracer() {
    for shape in [Shape::Open, Shape::Cyclic] {
        for d in spherical_diagrams(N, shape) {
            let (b, a) = oracle_both(d.code(), None);
            assert_eq!(table_of(&normalized_bracket(&d)), b, "{d}");
            assert_eq!(table_of(&arrow_polynomial(&d, true)), a, "{d}");
        }
    }
}

#[test]
fn loop_sums_match_strand_tracer() {
    for d in plane_diagrams(N) {
        let (b, a) = oracle_both(d.code(), Some(&head_route_edges(&d)));
        assert_eq!(table_of(&loop_bracket(&d).unwrap()), b, "{d}");
        assert_eq!(table_of(&loop_arrow_polynomial(&d, true).unwrap()), a, "{d}");
    }
}
