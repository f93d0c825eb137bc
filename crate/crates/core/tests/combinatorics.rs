mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{all_wirings, braid, krupp_circles, random_wiring};
use realcert::arrangements::{
    align_labels, circle_cell_labels, matching_permutation, max_labels, topes_from_wiring,
    unbounded_tope, wiring_faces, Eps,
};
use realcert::rational::int;
use realcert::Disk;

#[test]
fn small_diagrams_have_the_generic_face_and_tope_counts() {
    for n in 1..=5 {
        for w in all_wirings(n) {
            let faces = wiring_faces(&w).unwrap();
            assert_eq!(faces.len(), 1 + n + n * (n - 1) / 2, "{:?}", w.swaps);
            let topes = topes_from_wiring(&w).unwrap();
            assert_eq!(topes.len(), n * (n - 1) + 2);
            assert_eq!(topes.negated(), topes);
        }
    }
}

#[test]
fn every_diagram_count_matches_up_to_five_wires() {
    // reduced words of the longest permutation: 1, 1, 2, 16, 768
    let counts: Vec<usize> = (1..=5).map(|n| all_wirings(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 16, 768]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_diagrams_meet_the_label_bound(seed in any::<u64>(), n in 2usize..=8) {
        let w = random_wiring(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let topes = topes_from_wiring(&w).unwrap();
        prop_assert_eq!(topes.len(), max_labels(n));
        prop_assert!(topes.contains(&unbounded_tope(n)));
    }
}

#[test]
fn krupp_cells_are_the_braid_topes() {
    let cells = circle_cell_labels(&krupp_circles(), Eps::Auto).unwrap();
    let topes = topes_from_wiring(&braid()).unwrap();
    let aligned = align_labels(&cells.labels, &cells.far_label, &unbounded_tope(3));
    assert_eq!(aligned.len(), 8);
    assert!(matching_permutation(&aligned, &topes).is_some());
}

#[test]
fn four_unit_circles_on_a_unit_square() {
    let c = |x, y| Disk::new(int(x), int(y), int(1)).unwrap();
    let circles = [c(0, 0), c(1, 0), c(1, 1), c(0, 1)];
    let cells = circle_cell_labels(&circles, Eps::Auto).unwrap();
    let mut got: Vec<String> = cells.labels.iter().map(|v| v.to_string()).collect();
    got.sort();
    let expected = [
        "++++", "+++-", "++-+", "++--", "+-++", "+--+", "+---", "-+++", "-++-", "-+--", "--++",
        "--+-", "---+", "----",
    ];
    assert_eq!(got, expected);
    assert_eq!(got.len(), max_labels(4));
    // opposite corners never share a cell without their neighbours
    assert!(!got.iter().any(|s| s == "+-+-" || s == "-+-+"));
}
