//! Canonical structure construction for witness families.
//!
//! Given a profile and a witness family containing it, this module builds a
//! small counterfactual structure whose designated state plays the profile
//! and where, when the family is valid, every player is rational at every
//! level of the switch-aware tower. The structure anchors each player's
//! belief in a "showcase" state where their strategy earns its best case
//! within the family, and routes every switch to a "punishment" state where
//! the new strategy earns its worst case, so rationality at the designated
//! state reduces exactly to the family's max-min inequality.

use std::collections::BTreeMap;

use crate::domination::StrategyFamily;
use crate::game::{insert_strategy, Game, OpponentProfile, PlayerId, Profile, StrategyId};
use crate::logic::{ccbr_states, rat_equivalence_check};
use crate::minimax_rat::WitnessSets;
use crate::structures::{BeliefDistribution, CounterfactualStructure, StateId};

/// A built witness structure with its designated state.
pub struct CanonicalWitness {
    pub structure: CounterfactualStructure,
    pub designated: StateId,
}

/// Opponent profiles drawn from the family's sets, mixed-radix order with
/// the last opponent varying fastest.
fn restricted_opponents(
    game: &Game,
    sets: &WitnessSets,
    player: PlayerId,
) -> Vec<OpponentProfile> {
    let pools: Vec<&[StrategyId]> =
        game.players().filter(|&j| j != player).map(|j| sets.set(j)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; pools.len()];
    'outer: loop {
        out.push(idx.iter().zip(&pools).map(|(&i, pool)| pool[i]).collect());
        let mut k = pools.len();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < pools[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    out
}

/// Builds the canonical structure for `profile` under the family `sets`.
///
/// States, one per entry plus the designated state `d`:
///
/// * `b{i}_{s}` for every `s` in player i's set: i plays `s` against the
///   family opponents maximizing i's payoff (first such profile in
///   enumeration order);
/// * `p{i}_{s}` for every strategy `s` of player i: i plays `s` against the
///   family opponents minimizing i's payoff.
///
/// Beliefs are point beliefs: at `p{i}_{s}` player i believes that very
/// state; everywhere else player i believes `b{i}_{own strategy}` when the
/// strategy is in their set and `p{i}_{own strategy}` otherwise. A switch to
/// a different strategy always lands in the matching punishment state.
///
/// The construction never fails and is always appropriate and strongly
/// appropriate; whether the designated state survives the rationality tower
/// is exactly what [`verify_ccbr_witness`] reports.
pub fn build_canonical_witness(
    game: &Game,
    profile: &Profile,
    sets: &WitnessSets,
) -> CanonicalWitness {
    assert_eq!(profile.len(), game.player_count());
    for (i, &s) in profile.iter().enumerate() {
        assert!(s < game.strategy_count(i), "profile strategy out of range");
    }

    let mut states: Vec<(String, Profile)> = Vec::new();
    let mut showcase: BTreeMap<(PlayerId, StrategyId), StateId> = BTreeMap::new();
    let mut punishment: BTreeMap<(PlayerId, StrategyId), StateId> = BTreeMap::new();

    for i in game.players() {
        let opponents = restricted_opponents(game, sets, i);
        for &s in sets.set(i) {
            let best = opponents
                .iter()
                .max_by_key(|opp| game.utility_rank_vs(i, s, opp))
                .expect("witness sets are nonempty");
            showcase.insert((i, s), states.len());
            states.push((
                format!("b{}_{}", i + 1, game.strategy_name(i, s)),
                insert_strategy(best, i, s),
            ));
        }
    }
    for i in game.players() {
        let opponents = restricted_opponents(game, sets, i);
        for s in 0..game.strategy_count(i) {
            let worst = opponents
                .iter()
                .min_by_key(|opp| game.utility_rank_vs(i, s, opp))
                .expect("witness sets are nonempty");
            punishment.insert((i, s), states.len());
            states.push((
                format!("p{}_{}", i + 1, game.strategy_name(i, s)),
                insert_strategy(worst, i, s),
            ));
        }
    }
    let designated = states.len();
    states.push(("d".to_owned(), profile.clone()));

    let m = states.len();
    let anchor = |i: PlayerId, s: StrategyId| -> StateId {
        *showcase.get(&(i, s)).unwrap_or_else(|| &punishment[&(i, s)])
    };
    let beliefs: Vec<Vec<BeliefDistribution>> = game
        .players()
        .map(|i| {
            (0..m)
                .map(|w| {
                    let own = states[w].1[i];
                    let target = if punishment.get(&(i, own)) == Some(&w) {
                        // Every own punishment state is believed outright, so
                        // switched beliefs land on self-evident beliefs.
                        w
                    } else {
                        anchor(i, own)
                    };
                    BeliefDistribution::point(m, target)
                })
                .collect()
        })
        .collect();
    let closest: Vec<Vec<Vec<StateId>>> = (0..m)
        .map(|w| {
            game.players()
                .map(|i| {
                    (0..game.strategy_count(i))
                        .map(|s| if s == states[w].1[i] { w } else { punishment[&(i, s)] })
                        .collect()
                })
                .collect()
        })
        .collect();

    let structure = CounterfactualStructure::new(game.clone(), states, beliefs, closest)
        .expect("canonical witness shape is well-formed");
    debug_assert!(structure.is_appropriate());
    CanonicalWitness { structure, designated }
}

/// What [`verify_ccbr_witness`] established about a built witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub appropriate: bool,
    pub strongly_appropriate: bool,
    pub switch_routes_agree: bool,
    pub designated_in_ccbr: bool,
}

impl WitnessReport {
    pub fn passes(&self) -> bool {
        self.appropriate
            && self.strongly_appropriate
            && self.switch_routes_agree
            && self.designated_in_ccbr
    }
}

/// Checks the built structure from scratch: both appropriateness levels, the
/// two switch-value computations, and membership of the designated state in
/// the common switch-aware rationality set.
pub fn verify_ccbr_witness(witness: &CanonicalWitness) -> WitnessReport {
    let m = &witness.structure;
    WitnessReport {
        appropriate: m.is_appropriate(),
        strongly_appropriate: m.is_strongly_appropriate(),
        switch_routes_agree: rat_equivalence_check(m),
        designated_in_ccbr: ccbr_states(m).contains(&witness.designated),
    }
}

/// Reads a deletion-fixpoint family as a witness family. Survivor sets are
/// never empty, so the conversion cannot fail.
pub fn family_witness_sets(game: &Game, family: &StrategyFamily) -> WitnessSets {
    let sets = game.players().map(|i| family.set(i).iter().copied().collect()).collect();
    WitnessSets::new(game, sets).expect("survivor families are valid witness families")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::nsd_fixpoint;
    use crate::game::{ladder, translucent_pd};
    use crate::logic::{holds_at, parse_formula, EvalMode};
    use crate::minimax_rat::minimax_rationalizable_profiles;
    use crate::rational::Rational;
    use crate::structures::{parse_structure, serialize_structure};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn witness_for_mutual_cooperation_passes() {
        let game = translucent_pd(&r("1"), &r("5"));
        let sets = WitnessSets::new(&game, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let witness = build_canonical_witness(&game, &vec![0, 0], &sets);
        // 2 showcase states per player, 2 punishment states per player, d.
        assert_eq!(witness.structure.state_count(), 9);
        assert_eq!(witness.structure.state_id(witness.designated), "d");
        assert_eq!(witness.structure.profile(witness.designated), &vec![0, 0]);
        let report = verify_ccbr_witness(&witness);
        assert!(report.passes(), "{report:?}");
    }

    #[test]
    fn every_rationalizable_profile_gets_a_passing_witness() {
        let games = [
            translucent_pd(&r("1"), &r("5")),
            ladder(4, &r("1/2")).unwrap(),
            Game::new(vec![vec!["a".into(), "b".into()]; 3], |_| {
                vec![Rational::zero(); 3]
            })
            .unwrap(),
        ];
        for game in &games {
            let trace = nsd_fixpoint(game);
            let sets = family_witness_sets(game, trace.final_family());
            for (profile, _) in minimax_rationalizable_profiles(game, 5).unwrap() {
                let witness = build_canonical_witness(game, &profile, &sets);
                let report = verify_ccbr_witness(&witness);
                assert!(report.passes(), "profile {profile:?}: {report:?}");
            }
        }
    }

    #[test]
    fn invalid_family_fails_only_at_rationality() {
        // Bottom-rung singletons: the structure is still strongly
        // appropriate, but keeping the rung pays 1 while switching up pays
        // 3/2 even in the worst case, so the designated state drops out of
        // the tower at level 1.
        let game = ladder(3, &r("1/2")).unwrap();
        let sets = WitnessSets::new(&game, vec![vec![0], vec![0]]).unwrap();
        let witness = build_canonical_witness(&game, &vec![0, 0], &sets);
        let report = verify_ccbr_witness(&witness);
        assert!(report.appropriate);
        assert!(report.strongly_appropriate);
        assert!(report.switch_routes_agree);
        assert!(!report.designated_in_ccbr);
        assert!(!report.passes());
        assert!(!holds_at(
            &witness.structure,
            witness.designated,
            &parse_formula("RAT_1").unwrap(),
            EvalMode::Counterfactual
        )
        .unwrap());
        assert!(holds_at(
            &witness.structure,
            witness.designated,
            &parse_formula("SRAT_1^0").unwrap(),
            EvalMode::Counterfactual
        )
        .unwrap());
    }

    #[test]
    fn witness_structures_serialize_and_round_trip() {
        let game = translucent_pd(&r("1"), &r("5"));
        let sets = family_witness_sets(&game, nsd_fixpoint(&game).final_family());
        let witness = build_canonical_witness(&game, &vec![1, 1], &sets);
        let text = serialize_structure(&witness.structure);
        assert_eq!(parse_structure(&text, None).unwrap(), witness.structure);
    }

    use crate::game::Game;
}
