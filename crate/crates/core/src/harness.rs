//! End-to-end verification harness. Each criterion is one runnable check
//! over the solver and model checker; the `acceptance` integration test
//! target runs them as individual tests and the CLI `verify` subcommand runs
//! the same list as a pass/fail table.
//!
//! Randomized coverage is reproducible: games come from `random_game(seed)`
//! with the seed ranges written at each call site, and the structure drawn
//! over the game from seed `s` uses structure seed `10_000 + s`. Sequence
//! trials over game seed `s` use sequence seed `1_000 * s + trial`. All
//! quantities are exact rationals, so every comparison below is exact
//! equality; no tolerances apply.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::domination::{
    nsd_fixpoint, nsd_levels, random_terminating_sequence, restricted_pool_agrees,
    validate_deletion_sequence, verify_certificate,
};
use crate::game::{ladder, random_game, translucent_pd, Game, Profile};
use crate::logic::{
    holds_at, parse_formula, rat_equivalence_check, rat_holds, satisfying_states, srat_sets,
    validity_spotchecks, wrat_joint_sets, EvalMode,
};
use crate::minimax_rat::minimax_rationalizable_profiles;
use crate::structures::{
    pd_naive_structure, random_appropriate_structure, translucent_pd_structure,
    unilateral_product_structure, CounterfactualStructure, StateId,
};
use crate::witness::{build_canonical_witness, family_witness_sets, verify_ccbr_witness};
use crate::Rational;

/// The full criterion list in run order, named for reporting.
pub const CRITERIA: &[(&str, fn())] = &[
    ("ladder deletion rounds and certificates", ladder_deletion_rounds_and_certificates),
    (
        "cooperation rational exactly when the leak is large",
        cooperation_rational_exactly_when_the_leak_is_large,
    ),
    ("every terminating sequence reaches the fixpoint", every_terminating_sequence_reaches_the_fixpoint),
    ("survivor pool matches full pool round by round", survivor_pool_matches_full_pool_round_by_round),
    ("deletion survivors equal rationalizable profiles", deletion_survivors_equal_rationalizable_profiles),
    ("canonical witnesses pass for every survivor", canonical_witnesses_pass_for_every_survivor),
    ("tower members play deletion survivors", tower_members_play_deletion_survivors),
    (
        "common belief of rationality equals the weak tower",
        common_belief_of_rationality_equals_the_weak_tower,
    ),
    (
        "introspection and monotonicity schemas are valid",
        introspection_and_monotonicity_schemas_are_valid,
    ),
    ("structural laws hold on every tested structure", structural_laws_hold_on_every_tested_structure),
    (
        "translucency is the leak and vanishes without side effects",
        translucency_is_the_leak_and_vanishes_without_side_effects,
    ),
];

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Fixed example structures exercised by several criteria.
fn fixture_structures() -> Vec<CounterfactualStructure> {
    let game = translucent_pd(&r("1"), &r("5"));
    vec![
        translucent_pd_structure(&r("1"), &r("5"), &r("1/4")).unwrap().0,
        translucent_pd_structure(&r("1"), &r("5"), &r("1/10")).unwrap().0,
        pd_naive_structure(&r("1"), &r("5")).0,
        unilateral_product_structure(&game),
    ]
}

/// One appropriate structure per game seed, 2 to 6 states (raised when the
/// game needs more to cover every strategy).
fn random_structures(seeds: Range<u64>) -> Vec<(Game, CounterfactualStructure, u64)> {
    seeds
        .map(|seed| {
            let game = random_game(seed);
            let needed = game.players().map(|p| game.strategy_count(p)).max().unwrap();
            let states = (2 + (seed as usize % 5)).max(needed);
            let m = random_appropriate_structure(&game, 10_000 + seed, states).unwrap();
            (game, m, seed)
        })
        .collect()
}

fn intersect(a: &BTreeSet<StateId>, b: &BTreeSet<StateId>) -> BTreeSet<StateId> {
    a.intersection(b).copied().collect()
}

pub fn ladder_deletion_rounds_and_certificates() {
    for k in 2..=7 {
        let game = ladder(k, &r("1/2")).unwrap();
        let trace = nsd_fixpoint(&game);
        assert_eq!(trace.round_count(), k - 1, "ladder({k}) round count");
        for player in 0..2 {
            let survivors: Vec<_> =
                trace.final_family().set(player).iter().copied().collect();
            assert_eq!(survivors, vec![k - 1], "ladder({k}) survivors");
        }
        // Round 1 removes the bottom rung: the rung above earns at least 3/2
        // in its worst case while the bottom rung tops out at 1.
        for player in 0..2 {
            let cert = trace
                .certificates
                .iter()
                .find(|c| c.round == 1 && c.player == player && c.deleted == 0)
                .expect("bottom rung is deleted in round 1");
            assert_eq!(cert.dominator, 1);
            assert_eq!(cert.min, r("3/2"));
            assert_eq!(cert.max, r("1"));
            assert!(cert.min > cert.max);
            assert!(verify_certificate(&game, &trace, cert));
        }
    }
}

pub fn cooperation_rational_exactly_when_the_leak_is_large() {
    // Keeping cooperation is worth 0. A switch is seen with probability eps
    // and then punished, netting r - eps*p: -1/4 at eps=1/4, +1/2 at
    // eps=1/10.
    let (strong, coop) = translucent_pd_structure(&r("1"), &r("5"), &r("1/4")).unwrap();
    for player in 0..2 {
        assert!(rat_holds(&strong, coop, player, EvalMode::Counterfactual));
        assert!(
            !rat_holds(&strong, coop, player, EvalMode::Probability),
            "ignoring the switch's visibility must make defection look better"
        );
    }
    let (weak, coop) = translucent_pd_structure(&r("1"), &r("5"), &r("1/10")).unwrap();
    for player in 0..2 {
        assert!(!rat_holds(&weak, coop, player, EvalMode::Counterfactual));
    }
}

pub fn every_terminating_sequence_reaches_the_fixpoint() {
    for seed in 0..500u64 {
        let game = random_game(seed);
        let trace = nsd_fixpoint(&game);
        for trial in 0..10u64 {
            let seq = random_terminating_sequence(&game, 1_000 * seed + trial);
            validate_deletion_sequence(&game, &seq)
                .unwrap_or_else(|e| panic!("seed {seed} trial {trial}: {e}"));
            assert_eq!(
                seq.last().unwrap(),
                trace.final_family(),
                "seed {seed} trial {trial} ends elsewhere"
            );
        }
    }
}

pub fn survivor_pool_matches_full_pool_round_by_round() {
    for seed in 500..1000u64 {
        let game = random_game(seed);
        assert!(restricted_pool_agrees(&game), "seed {seed}");
    }
}

pub fn deletion_survivors_equal_rationalizable_profiles() {
    for seed in 2000..2300u64 {
        let game = random_game(seed);
        let surviving: BTreeSet<Profile> =
            nsd_fixpoint(&game).final_family().profiles().into_iter().collect();
        let rationalizable: BTreeSet<Profile> = minimax_rationalizable_profiles(&game, 5)
            .unwrap()
            .into_keys()
            .collect();
        assert_eq!(surviving, rationalizable, "seed {seed}");
    }
}

pub fn canonical_witnesses_pass_for_every_survivor() {
    for seed in 2000..2300u64 {
        let game = random_game(seed);
        let family = nsd_fixpoint(&game).final_family().clone();
        let sets = family_witness_sets(&game, &family);
        for profile in family.profiles() {
            let witness = build_canonical_witness(&game, &profile, &sets);
            let report = verify_ccbr_witness(&witness);
            assert!(report.passes(), "seed {seed} profile {profile:?}: {report:?}");
        }
    }
}

pub fn tower_members_play_deletion_survivors() {
    for (game, m, seed) in random_structures(0..500) {
        let tower = srat_sets(&m, 4);
        let levels = nsd_levels(&game, 4);
        for (k, level) in levels.iter().enumerate() {
            for i in game.players() {
                for &w in &tower[k][i] {
                    assert!(
                        level.contains(i, m.strategy(w, i)),
                        "seed {seed}: level-{k} state plays a deleted strategy"
                    );
                }
            }
        }
    }
}

pub fn common_belief_of_rationality_equals_the_weak_tower() {
    let mut pool = fixture_structures();
    pool.extend(random_structures(500..1000).into_iter().map(|(_, m, _)| m));
    let cb_rat = parse_formula("CB RAT").unwrap();
    for m in &pool {
        let direct = satisfying_states(m, &cb_rat, EvalMode::Counterfactual).unwrap();
        let levels = wrat_joint_sets(m, m.state_count() + 1, EvalMode::Counterfactual);
        let limit =
            levels.iter().fold(m.states().collect::<BTreeSet<_>>(), |acc, s| intersect(&acc, s));
        assert_eq!(direct, limit);
    }
}

pub fn introspection_and_monotonicity_schemas_are_valid() {
    let mut pool = fixture_structures();
    pool.extend(random_structures(1000..1150).into_iter().map(|(_, m, _)| m));
    for m in &pool {
        for (instance, ok) in validity_spotchecks(m) {
            assert!(ok, "schema {instance} failed");
        }
    }
    // Separation: strong rationality at a state without switched belief in
    // it.
    let (naive, w0) = pd_naive_structure(&r("1"), &r("5"));
    let exhibit = parse_formula("SRAT_1^1 & !B*_1 SRAT_1^1").unwrap();
    assert!(holds_at(&naive, w0, &exhibit, EvalMode::Counterfactual).unwrap());
}

pub fn structural_laws_hold_on_every_tested_structure() {
    let mut pool = fixture_structures();
    pool.extend(random_structures(0..500).into_iter().map(|(_, m, _)| m));
    for m in &pool {
        assert!(rat_equivalence_check(m));
        for w in m.states() {
            for i in m.game().players() {
                for s in 0..m.game().strategy_count(i) {
                    let switched = m.counterfactual_belief(w, i, s);
                    assert_eq!(switched.total(), Rational::one(), "mass conservation");
                    let image: BTreeSet<StateId> =
                        m.belief(i, w).support().map(|t| m.closest_state(t, i, s)).collect();
                    let support: BTreeSet<StateId> = switched.support().collect();
                    assert_eq!(support, image, "support law");
                    for t in &support {
                        assert_eq!(m.strategy(*t, i), s, "switch knowledge");
                    }
                }
            }
        }
        // Belief determinism: states sharing a belief share every switched
        // belief.
        for i in m.game().players() {
            for w1 in m.states() {
                for w2 in m.states().filter(|&w2| w2 > w1) {
                    if m.belief(i, w1) == m.belief(i, w2) {
                        for s in 0..m.game().strategy_count(i) {
                            assert_eq!(
                                m.counterfactual_belief(w1, i, s),
                                m.counterfactual_belief(w2, i, s),
                                "belief determinism"
                            );
                        }
                    }
                }
            }
        }
    }
}

pub fn translucency_is_the_leak_and_vanishes_without_side_effects() {
    let (m, _) = translucent_pd_structure(&r("1"), &r("5"), &r("1/4")).unwrap();
    assert_eq!(m.translucency_epsilon(), r("1/4"));

    let mut pool = fixture_structures();
    pool.extend(random_structures(0..500).into_iter().map(|(_, m, _)| m));
    for seed in 0..25 {
        let product = unilateral_product_structure(&random_game(seed));
        assert!(product.respects_unilateral_deviations());
        pool.push(product);
    }
    for m in &pool {
        if m.respects_unilateral_deviations() {
            assert_eq!(m.translucency_epsilon(), Rational::zero());
        }
    }
}
