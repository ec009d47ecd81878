//! End-to-end acceptance gate: one test per harness criterion, so `cargo
//! test --test acceptance` prints one pass/fail line for each. The CLI
//! `verify` subcommand runs the same list.

use translucent::harness;

#[test]
fn criterion_01_ladder_deletion_rounds_and_certificates() {
    harness::ladder_deletion_rounds_and_certificates();
}

#[test]
fn criterion_02_cooperation_rational_exactly_when_the_leak_is_large() {
    harness::cooperation_rational_exactly_when_the_leak_is_large();
}

#[test]
fn criterion_03_every_terminating_sequence_reaches_the_fixpoint() {
    harness::every_terminating_sequence_reaches_the_fixpoint();
}

#[test]
fn criterion_04_survivor_pool_matches_full_pool_round_by_round() {
    harness::survivor_pool_matches_full_pool_round_by_round();
}

#[test]
fn criterion_05_deletion_survivors_equal_rationalizable_profiles() {
    harness::deletion_survivors_equal_rationalizable_profiles();
}

#[test]
fn criterion_06_canonical_witnesses_pass_for_every_survivor() {
    harness::canonical_witnesses_pass_for_every_survivor();
}

#[test]
fn criterion_07_tower_members_play_deletion_survivors() {
    harness::tower_members_play_deletion_survivors();
}

#[test]
fn criterion_08_common_belief_of_rationality_equals_the_weak_tower() {
    harness::common_belief_of_rationality_equals_the_weak_tower();
}

#[test]
fn criterion_09_introspection_and_monotonicity_schemas_are_valid() {
    harness::introspection_and_monotonicity_schemas_are_valid();
}

#[test]
fn criterion_10_structural_laws_hold_on_every_tested_structure() {
    harness::structural_laws_hold_on_every_tested_structure();
}

#[test]
fn criterion_11_translucency_is_the_leak_and_vanishes_without_side_effects() {
    harness::translucency_is_the_leak_and_vanishes_without_side_effects();
}
