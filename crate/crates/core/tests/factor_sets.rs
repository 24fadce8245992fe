mod common;

use common::suites;

#[test]
fn idempotent_factor_sets_correspond_to_ideals() {
    assert!(suites::idempotents_match_ideals(4) > 0);
}

#[test]
fn idempotent_condition_is_closure_under_the_action() {
    let scope = suites::condition_matches_closure(5, 4000, 6);
    assert_eq!(scope.exhaustive, vec![1, 2, 3, 4, 5]);
}

#[test]
fn modifications_are_units_over_a_nilpotent_ideal() {
    assert!(suites::modification_structure() > 0);
}
