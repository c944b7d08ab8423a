use knotoid::brackets::normalized_bracket;
use knotoid::closure::{underpass_closure, virtual_closure};
use knotoid::kmap::Kmap;
use knotoid::parity::{crossing_parities, is_evenly_intersticed};
use knotoid::walk::random_knotoid;
use knotoid::Diagram;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let d = random_knotoid(7, 40, seed);
        let back = Diagram::parse(&d.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), d.to_text());
        let k = Kmap::parse(&Kmap::from_diagram(&d).to_text()).unwrap().to_diagram().unwrap().0;
        prop_assert_eq!(k.to_text(), d.to_text());
    }

    #[test]
    fn mirror_inverts_a(seed in any::<u64>()) {
        let d = random_knotoid(6, 40, seed);
        prop_assert_eq!(normalized_bracket(&d.mirror()), normalized_bracket(&d).invert_a());
    }

    #[test]
    fn evenly_intersticed_iff_shared_face(seed in any::<u64>()) {
        let d = random_knotoid(7, 40, seed);
        let (t, h) = d.endpoint_faces().unwrap();
        prop_assert_eq!(is_evenly_intersticed(d.code()), t == h);
    }

    #[test]
    fn knot_type_knotoids_close_to_the_same_knot(seed in any::<u64>()) {
        let d = random_knotoid(6, 40, seed);
        let (t, h) = d.endpoint_faces().unwrap();
        prop_assume!(t == h);
        prop_assert!(crossing_parities(&d).iter().all(|&o| !o));
        let v = virtual_closure(&d);
        prop_assert_eq!(v.genus(), 0);
        prop_assert_eq!(normalized_bracket(&v), normalized_bracket(&underpass_closure(&d, None).unwrap()));
    }
}
