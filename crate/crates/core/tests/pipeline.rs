//! Documents in, brackets and Hopf quotients out.

use hopfcube::birkhoff::BirkhoffDatum;
use hopfcube::dsl::{cube_to_document, parse_cube, parse_element};
use hopfcube::harness::random_cube;
use hopfcube::{higher, hopf};
use proptest::prelude::*;

const D4_SQUARE: &str = r#"{
    "dim": 2,
    "top": "D4",
    "normal": { "R": ["(0 1 2 3)"], "V": ["(0 2)(1 3)", "(0 1)(2 3)"] },
    "vertices": { "{0,1}": "top", "{0}": "top / V", "{1}": "top / R", "{}": "top / R V" }
}"#;

fn coordinate_cube(extra: &str) -> String {
    format!(
        r#"{{
        "dim": 3,
        "top": "Z2^3",
        "normal": {{ "A": [1], "B": [2], "C": [{extra}] }},
        "vertices": {{
            "{{0,1,2}}": "top",
            "{{1,2}}": "top / A", "{{0,2}}": "top / B", "{{0,1}}": "top / C",
            "{{2}}": "top / A B", "{{1}}": "top / A C", "{{0}}": "top / B C",
            "{{}}": "top / A B C"
        }}
    }}"#
    )
}

#[test]
fn d4_square_bracket_is_the_centre() {
    let c = parse_cube(D4_SQUARE).unwrap();
    let ab = BirkhoffDatum::Ab;
    let r = higher::bracket_report(&c, ab).unwrap();
    assert!(r.agree);
    let b = r.explicit.unwrap();
    let r2 = parse_element(c.top(), "(0 2)(1 3)").unwrap();
    assert_eq!(b.members(), &{
        let mut m = vec![c.top().identity(), r2];
        m.sort();
        m
    }[..]);
    assert!(!higher::is_n_fold_central(&c, ab).unwrap());

    let central = higher::centralize_n(&c, ab).unwrap();
    assert_eq!(central.cube.top().order(), 4);
    assert!(higher::is_n_fold_central(&central.cube, ab).unwrap());
    let h = hopf::hopf_delta_n(&c, ab).unwrap();
    assert_eq!(h.quotient.order(), 1);
}

#[test]
fn coordinate_three_cubes() {
    let ab = BirkhoffDatum::Ab;
    // the three coordinate lines of Z2^3: a 3-fold extension, trivially central
    let c = parse_cube(&coordinate_cube("4")).unwrap();
    assert!(c.is_n_fold_extension().unwrap());
    assert!(higher::is_n_fold_central(&c, ab).unwrap());
    assert!(higher::bracket_report(&c, ab).unwrap().agree);
    // three lines in one plane: every face is fine, the cube is not
    let c = parse_cube(&coordinate_cube("3")).unwrap();
    assert!(!c.is_n_fold_extension().unwrap());
    let st: Vec<bool> = (0..3).map(|i| c.is_extension_via(i).unwrap()).collect();
    assert_eq!(st, vec![false; 3]);
}

#[test]
fn q8_presentation_of_the_klein_group() {
    let doc = r#"{
        "dim": 1,
        "top": "Q8",
        "normal": { "Z": ["(0 3)(1 6)(2 7)(4 5)"] },
        "vertices": { "{0}": "top", "{}": "top / Z" }
    }"#;
    let c = parse_cube(doc).unwrap();
    let h = hopf::hopf_delta(c.a(0), BirkhoffDatum::Ab).unwrap();
    // matches the Schur multiplier of Z2 × Z2
    assert_eq!(h.abelian_invariants.unwrap().divisors, vec![2]);
    let via = hopf::hopf_via_trivialization(c.a(0), BirkhoffDatum::Ab).unwrap();
    assert_eq!(via.order(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn documents_round_trip(seed in any::<u64>(), dim in 1usize..=3, mutate in any::<bool>()) {
        let r = random_cube(dim, seed, 12, mutate).unwrap();
        let doc = cube_to_document(&r.cube);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back = parse_cube(&text).unwrap();
        prop_assert!(back.same_as(&r.cube));
        prop_assert_eq!(back.is_n_fold_extension().unwrap(), !mutate);
    }
}
