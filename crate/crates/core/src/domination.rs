//! Minimax domination and iterated deletion.
//!
//! A strategy is minimax dominated with respect to a set of opponent profiles
//! when some other strategy's worst case against that set is strictly better
//! than the candidate's best case. Deletion is simultaneous and maximal per
//! round; dominators are drawn from the player's full strategy list, which
//! yields the same rounds as restricting to survivors (see
//! [`restricted_pool_agrees`]).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Game, PlayerId, Profile, StrategyId};
use crate::rational::Rational;

/// Per-player sets of surviving strategies.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrategyFamily {
    sets: Vec<BTreeSet<StrategyId>>,
}

impl StrategyFamily {
    pub fn full(game: &Game) -> Self {
        StrategyFamily {
            sets: game
                .players()
                .map(|p| (0..game.strategy_count(p)).collect())
                .collect(),
        }
    }

    pub fn from_sets(sets: Vec<BTreeSet<StrategyId>>) -> Self {
        StrategyFamily { sets }
    }

    pub fn player_count(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, player: PlayerId) -> &BTreeSet<StrategyId> {
        &self.sets[player]
    }

    pub fn contains(&self, player: PlayerId, strategy: StrategyId) -> bool {
        self.sets[player].contains(&strategy)
    }

    pub fn remove(&mut self, player: PlayerId, strategy: StrategyId) -> bool {
        self.sets[player].remove(&strategy)
    }

    /// Pointwise subset.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.sets
            .iter()
            .zip(&other.sets)
            .all(|(mine, theirs)| mine.is_subset(theirs))
    }

    /// Pointwise subset with at least one player strictly smaller.
    pub fn is_proper_subset_of(&self, other: &Self) -> bool {
        self.is_subset_of(other) && self.sets != other.sets
    }

    /// All opponent index profiles for `player` drawn from the family,
    /// original player order with `player` removed.
    pub fn opponent_profiles(&self, player: PlayerId) -> Vec<Vec<StrategyId>> {
        let choices: Vec<Vec<StrategyId>> = self
            .sets
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != player)
            .map(|(_, set)| set.iter().copied().collect())
            .collect();
        let mut out = vec![Vec::new()];
        for options in &choices {
            let mut next = Vec::with_capacity(out.len() * options.len());
            for prefix in &out {
                for &choice in options {
                    let mut item = prefix.clone();
                    item.push(choice);
                    next.push(item);
                }
            }
            out = next;
        }
        out
    }

    /// All full profiles drawn from the family, lexicographic by index.
    pub fn profiles(&self) -> Vec<Profile> {
        let mut out = vec![Vec::new()];
        for set in &self.sets {
            let mut next = Vec::with_capacity(out.len() * set.len());
            for prefix in &out {
                for &choice in set {
                    let mut item = prefix.clone();
                    item.push(choice);
                    next.push(item);
                }
            }
            out = next;
        }
        out
    }

    pub fn to_names(&self, game: &Game) -> Vec<Vec<String>> {
        self.sets
            .iter()
            .enumerate()
            .map(|(p, set)| set.iter().map(|&s| game.strategy_name(p, s).to_owned()).collect())
            .collect()
    }

    pub fn from_names(game: &Game, names: &[Vec<String>]) -> Result<Self, crate::game::GameError> {
        let mut sets = Vec::with_capacity(names.len());
        for (player, list) in names.iter().enumerate() {
            let mut set = BTreeSet::new();
            for name in list {
                set.insert(game.strategy_index(player, name)?);
            }
            sets.push(set);
        }
        Ok(StrategyFamily { sets })
    }
}

/// Why a strategy was deleted: the dominator and the two payoff bounds whose
/// strict comparison justifies the deletion.
///
/// For minimax rounds `min` is the dominator's worst case against the round's
/// family and `max` is the deleted strategy's best case. For the classical
/// strict-dominance baseline `min` is the smallest pointwise payoff margin
/// and `max` is zero. In both readings the certificate is valid iff
/// `min > max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub player: PlayerId,
    pub deleted: StrategyId,
    pub dominator: StrategyId,
    pub min: Rational,
    pub max: Rational,
    /// 1-based deletion round.
    pub round: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionKind {
    Minimax,
    Strict,
}

/// Record of an iterated deletion run: the family before each round plus a
/// certificate for every deleted strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionTrace {
    pub kind: DeletionKind,
    /// `rounds[0]` is the full family; `rounds[r]` the survivors after round
    /// `r`.
    pub rounds: Vec<StrategyFamily>,
    pub certificates: Vec<Certificate>,
}

impl DeletionTrace {
    pub fn round_count(&self) -> usize {
        self.rounds.len() - 1
    }

    pub fn final_family(&self) -> &StrategyFamily {
        self.rounds.last().expect("traces have at least one round")
    }
}

/// Finds the first strategy in `pool` (strategy-list order) whose worst case
/// against `family`'s opponent profiles strictly beats the best case of
/// `strategy`. Returns the dominator and the two bounds.
pub fn is_minimax_dominated(
    game: &Game,
    player: PlayerId,
    strategy: StrategyId,
    family: &StrategyFamily,
    pool: &BTreeSet<StrategyId>,
) -> Option<(StrategyId, Rational, Rational)> {
    let opponents = family.opponent_profiles(player);
    dominated_against(game, player, strategy, &opponents, pool)
}

fn dominated_against(
    game: &Game,
    player: PlayerId,
    strategy: StrategyId,
    opponents: &[Vec<StrategyId>],
    pool: &BTreeSet<StrategyId>,
) -> Option<(StrategyId, Rational, Rational)> {
    debug_assert!(!opponents.is_empty());
    let max_rank = opponents
        .iter()
        .map(|opp| game.utility_rank_vs(player, strategy, opp))
        .max()?;
    for &candidate in pool {
        if candidate == strategy {
            continue;
        }
        let min_rank = opponents
            .iter()
            .map(|opp| game.utility_rank_vs(player, candidate, opp))
            .min()
            .expect("nonempty opponent profiles");
        if min_rank > max_rank {
            let min = opponents
                .iter()
                .map(|opp| game.utility_vs(player, candidate, opp).clone())
                .min()
                .expect("nonempty opponent profiles");
            let max = opponents
                .iter()
                .map(|opp| game.utility_vs(player, strategy, opp).clone())
                .max()
                .expect("nonempty opponent profiles");
            return Some((candidate, min, max));
        }
    }
    None
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PoolRule {
    FullList,
    Survivors,
}

fn dominated_in_round(
    game: &Game,
    family: &StrategyFamily,
    rule: PoolRule,
) -> Vec<(PlayerId, StrategyId, StrategyId, Rational, Rational)> {
    let mut out = Vec::new();
    for player in game.players() {
        let opponents = family.opponent_profiles(player);
        let pool: BTreeSet<StrategyId> = match rule {
            PoolRule::FullList => (0..game.strategy_count(player)).collect(),
            PoolRule::Survivors => family.set(player).clone(),
        };
        for &strategy in family.set(player) {
            if let Some((dominator, min, max)) =
                dominated_against(game, player, strategy, &opponents, &pool)
            {
                out.push((player, strategy, dominator, min, max));
            }
        }
    }
    out
}

/// One round of simultaneous maximal deletion. Returns the shrunk family and
/// the certificates (without round numbers).
pub fn nsd_step(game: &Game, family: &StrategyFamily) -> (StrategyFamily, Vec<Certificate>) {
    nsd_step_with_rule(game, family, PoolRule::FullList)
}

fn nsd_step_with_rule(
    game: &Game,
    family: &StrategyFamily,
    rule: PoolRule,
) -> (StrategyFamily, Vec<Certificate>) {
    let mut next = family.clone();
    let mut certificates = Vec::new();
    for (player, deleted, dominator, min, max) in dominated_in_round(game, family, rule) {
        next.remove(player, deleted);
        certificates.push(Certificate { player, deleted, dominator, min, max, round: 0 });
    }
    (next, certificates)
}

/// Runs minimax deletion to its fixpoint, recording every round.
pub fn nsd_fixpoint(game: &Game) -> DeletionTrace {
    trace_with(game, |g, family| nsd_step_with_rule(g, family, PoolRule::FullList))
        .with_kind(DeletionKind::Minimax)
}

/// Survivor families after `0..=k_max` rounds; the final family repeats once
/// the fixpoint is reached.
pub fn nsd_levels(game: &Game, k_max: usize) -> Vec<StrategyFamily> {
    let trace = nsd_fixpoint(game);
    (0..=k_max)
        .map(|k| trace.rounds[k.min(trace.rounds.len() - 1)].clone())
        .collect()
}

struct RawTrace {
    rounds: Vec<StrategyFamily>,
    certificates: Vec<Certificate>,
}

impl RawTrace {
    fn with_kind(self, kind: DeletionKind) -> DeletionTrace {
        DeletionTrace { kind, rounds: self.rounds, certificates: self.certificates }
    }
}

fn trace_with(
    game: &Game,
    step: impl Fn(&Game, &StrategyFamily) -> (StrategyFamily, Vec<Certificate>),
) -> RawTrace {
    let mut rounds = vec![StrategyFamily::full(game)];
    let mut certificates = Vec::new();
    loop {
        let current = rounds.last().expect("nonempty");
        let (next, mut certs) = step(game, current);
        if certs.is_empty() {
            debug_assert_eq!(&next, current);
            break;
        }
        let round = rounds.len();
        for cert in &mut certs {
            cert.round = round;
        }
        certificates.extend(certs);
        rounds.push(next);
    }
    RawTrace { rounds, certificates }
}

/// Re-runs the deletion with the dominator pool restricted to each round's
/// survivors and checks that every round produces the same family as the
/// full-pool run. Restricting the pool never changes the result; this
/// verifies that claim on a concrete game.
pub fn restricted_pool_agrees(game: &Game) -> bool {
    let full = trace_with(game, |g, f| nsd_step_with_rule(g, f, PoolRule::FullList));
    let restricted = trace_with(game, |g, f| nsd_step_with_rule(g, f, PoolRule::Survivors));
    full.rounds == restricted.rounds
}

/// Classical iterated strict dominance (pure dominators from the surviving
/// set), as a baseline for comparison. Certificates store the smallest
/// pointwise margin in `min` and zero in `max`.
pub fn iterated_strict_dominance(game: &Game) -> DeletionTrace {
    let step = |g: &Game, family: &StrategyFamily| {
        let mut next = family.clone();
        let mut certificates = Vec::new();
        for player in g.players() {
            let opponents = family.opponent_profiles(player);
            for &strategy in family.set(player) {
                let found = family.set(player).iter().copied().find_map(|candidate| {
                    if candidate == strategy {
                        return None;
                    }
                    let margin = opponents
                        .iter()
                        .map(|opp| {
                            g.utility_vs(player, candidate, opp)
                                - g.utility_vs(player, strategy, opp)
                        })
                        .min()
                        .expect("nonempty opponent profiles");
                    margin.is_positive().then_some((candidate, margin))
                });
                if let Some((dominator, margin)) = found {
                    next.remove(player, strategy);
                    certificates.push(Certificate {
                        player,
                        deleted: strategy,
                        dominator,
                        min: margin,
                        max: Rational::zero(),
                        round: 0,
                    });
                }
            }
        }
        (next, certificates)
    };
    trace_with(game, step).with_kind(DeletionKind::Strict)
}

/// Recomputes a certificate's bounds from the family it was issued against
/// and checks the strict comparison still holds.
pub fn verify_certificate(game: &Game, trace: &DeletionTrace, cert: &Certificate) -> bool {
    if cert.round == 0 || cert.round >= trace.rounds.len() {
        return false;
    }
    let family = &trace.rounds[cert.round - 1];
    let opponents = family.opponent_profiles(cert.player);
    let (min, max) = match trace.kind {
        DeletionKind::Minimax => {
            let min = opponents
                .iter()
                .map(|opp| game.utility_vs(cert.player, cert.dominator, opp).clone())
                .min();
            let max = opponents
                .iter()
                .map(|opp| game.utility_vs(cert.player, cert.deleted, opp).clone())
                .max();
            match (min, max) {
                (Some(min), Some(max)) => (min, max),
                _ => return false,
            }
        }
        DeletionKind::Strict => {
            let margin = opponents
                .iter()
                .map(|opp| {
                    game.utility_vs(cert.player, cert.dominator, opp)
                        - game.utility_vs(cert.player, cert.deleted, opp)
                })
                .min();
            match margin {
                Some(margin) => (margin, Rational::zero()),
                None => return false,
            }
        }
    };
    min == cert.min && max == cert.max && min > max
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("deletion sequence is empty")]
    Empty,
    #[error("deletion sequence must start from the full strategy sets")]
    FirstNotFull,
    #[error("step {step}: family is not a proper subset of its predecessor")]
    NotProperSubset { step: usize },
    #[error("step {step}: deleted strategy {strategy} of player {player} was not dominated")]
    DeletedUndominated { step: usize, player: PlayerId, strategy: StrategyId },
    #[error("final family still has dominated strategy {strategy} of player {player}")]
    FinalHasDominated { player: PlayerId, strategy: StrategyId },
}

/// Checks that `seq` is a terminating deletion sequence: starts full, each
/// step deletes only currently dominated strategies (it may keep some), every
/// step shrinks, and the last family has no dominated strategy left.
pub fn validate_deletion_sequence(game: &Game, seq: &[StrategyFamily]) -> Result<(), SequenceError> {
    if seq.is_empty() {
        return Err(SequenceError::Empty);
    }
    if seq[0] != StrategyFamily::full(game) {
        return Err(SequenceError::FirstNotFull);
    }
    for step in 1..seq.len() {
        let (prev, next) = (&seq[step - 1], &seq[step]);
        if !next.is_proper_subset_of(prev) {
            return Err(SequenceError::NotProperSubset { step });
        }
        let dominated: BTreeSet<(PlayerId, StrategyId)> =
            dominated_in_round(game, prev, PoolRule::FullList)
                .into_iter()
                .map(|(player, strategy, ..)| (player, strategy))
                .collect();
        for player in game.players() {
            for &strategy in prev.set(player) {
                let kept = next.contains(player, strategy);
                if !kept && !dominated.contains(&(player, strategy)) {
                    return Err(SequenceError::DeletedUndominated { step, player, strategy });
                }
            }
        }
    }
    let last = seq.last().expect("nonempty");
    if let Some((player, strategy, ..)) =
        dominated_in_round(game, last, PoolRule::FullList).into_iter().next()
    {
        return Err(SequenceError::FinalHasDominated { player, strategy });
    }
    Ok(())
}

/// Draws a random terminating deletion sequence: each round deletes a random
/// nonempty subset of the currently dominated strategies, until none remain.
/// Deterministic per seed.
pub fn random_terminating_sequence(game: &Game, seed: u64) -> Vec<StrategyFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq = vec![StrategyFamily::full(game)];
    loop {
        let current = seq.last().expect("nonempty");
        let dominated: Vec<(PlayerId, StrategyId)> =
            dominated_in_round(game, current, PoolRule::FullList)
                .into_iter()
                .map(|(player, strategy, ..)| (player, strategy))
                .collect();
        if dominated.is_empty() {
            break;
        }
        let mut chosen: Vec<(PlayerId, StrategyId)> =
            dominated.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if chosen.is_empty() {
            chosen.push(*dominated.choose(&mut rng).expect("nonempty"));
        }
        let mut next = current.clone();
        for (player, strategy) in chosen {
            next.remove(player, strategy);
        }
        seq.push(next);
    }
    seq
}

// --- trace file format ---------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TraceFile {
    kind: DeletionKind,
    rounds: Vec<Vec<Vec<String>>>,
    certificates: Vec<CertificateEntry>,
}

#[derive(Serialize, Deserialize)]
struct CertificateEntry {
    player: usize,
    deleted: String,
    dominator: String,
    min: Rational,
    max: Rational,
    round: usize,
}

/// Canonical JSON for a trace. Players are 1-based and strategies appear by
/// name.
pub fn serialize_trace(game: &Game, trace: &DeletionTrace) -> String {
    let file = TraceFile {
        kind: trace.kind,
        rounds: trace.rounds.iter().map(|family| family.to_names(game)).collect(),
        certificates: trace
            .certificates
            .iter()
            .map(|c| CertificateEntry {
                player: c.player + 1,
                deleted: game.strategy_name(c.player, c.deleted).to_owned(),
                dominator: game.strategy_name(c.player, c.dominator).to_owned(),
                min: c.min.clone(),
                max: c.max.clone(),
                round: c.round,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("trace serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{ladder, translucent_pd};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn ladder_deletes_bottom_up() {
        let g = ladder(5, &r("1/2")).unwrap();
        let trace = nsd_fixpoint(&g);
        assert_eq!(trace.round_count(), 4);
        assert_eq!(trace.final_family().to_names(&g), vec![vec!["5"], vec!["5"]]);
        // Round r deletes rung r for both players.
        for round in 1..=4 {
            let certs: Vec<_> =
                trace.certificates.iter().filter(|c| c.round == round).collect();
            assert_eq!(certs.len(), 2);
            for cert in certs {
                assert_eq!(g.strategy_name(cert.player, cert.deleted), round.to_string());
            }
        }
    }

    #[test]
    fn ladder_round_one_certificate() {
        let g = ladder(3, &r("1/2")).unwrap();
        let trace = nsd_fixpoint(&g);
        let cert = trace
            .certificates
            .iter()
            .find(|c| c.player == 0 && c.round == 1)
            .expect("player 0 deletes in round 1");
        assert_eq!(g.strategy_name(0, cert.deleted), "1");
        assert_eq!(g.strategy_name(0, cert.dominator), "2");
        assert_eq!(cert.min, r("3/2"));
        assert_eq!(cert.max, r("1"));
        assert!(verify_certificate(&g, &trace, cert));
    }

    #[test]
    fn translucent_pd_deletes_nothing() {
        let g = translucent_pd(&r("1"), &r("5"));
        let trace = nsd_fixpoint(&g);
        assert_eq!(trace.round_count(), 0);
        assert_eq!(trace.final_family(), &StrategyFamily::full(&g));
        assert!(trace.certificates.is_empty());
    }

    #[test]
    fn strict_baseline_collapses_translucent_pd() {
        let g = translucent_pd(&r("1"), &r("5"));
        let trace = iterated_strict_dominance(&g);
        assert_eq!(trace.round_count(), 1);
        assert_eq!(trace.final_family().to_names(&g), vec![vec!["S"], vec!["S"]]);
        let cert = &trace.certificates[0];
        assert_eq!(g.strategy_name(cert.player, cert.deleted), "C");
        assert_eq!(g.strategy_name(cert.player, cert.dominator), "S");
        assert_eq!(cert.min, r("1"));
        assert_eq!(cert.max, r("0"));
        assert!(verify_certificate(&g, &trace, cert));
    }

    #[test]
    fn strict_baseline_matches_minimax_on_ladder() {
        let g = ladder(3, &r("1/2")).unwrap();
        let strict = iterated_strict_dominance(&g);
        let minimax = nsd_fixpoint(&g);
        assert_eq!(strict.final_family(), minimax.final_family());
    }

    #[test]
    fn all_trace_certificates_verify() {
        for game in [
            ladder(6, &r("1/2")).unwrap(),
            ladder(2, &r("3")).unwrap(),
            translucent_pd(&r("2"), &r("1")),
        ] {
            let trace = nsd_fixpoint(&game);
            for cert in &trace.certificates {
                assert!(verify_certificate(&game, &trace, cert));
            }
            let strict = iterated_strict_dominance(&game);
            for cert in &strict.certificates {
                assert!(verify_certificate(&game, &strict, cert));
            }
        }
    }

    #[test]
    fn maximin_strategy_survives_every_round() {
        let g = ladder(5, &r("1/2")).unwrap();
        let trace = nsd_fixpoint(&g);
        for window in trace.rounds.windows(2) {
            let (before, after) = (&window[0], &window[1]);
            for player in g.players() {
                let opponents = before.opponent_profiles(player);
                let maximin = before
                    .set(player)
                    .iter()
                    .copied()
                    .max_by_key(|&s| {
                        opponents.iter().map(|o| g.utility_rank_vs(player, s, o)).min().unwrap()
                    })
                    .unwrap();
                assert!(after.contains(player, maximin));
            }
        }
    }

    #[test]
    fn restricted_pool_matches_full_pool() {
        for game in [
            ladder(5, &r("1/2")).unwrap(),
            translucent_pd(&r("1"), &r("5")),
            ladder(2, &r("2")).unwrap(),
        ] {
            assert!(restricted_pool_agrees(&game));
        }
    }

    #[test]
    fn nsd_levels_saturate_at_fixpoint() {
        let g = ladder(3, &r("1/2")).unwrap();
        let levels = nsd_levels(&g, 5);
        assert_eq!(levels.len(), 6);
        assert_eq!(levels[0], StrategyFamily::full(&g));
        assert_eq!(levels[2], levels[5]);
        assert_eq!(levels[2].to_names(&g), vec![vec!["3"], vec!["3"]]);
    }

    #[test]
    fn fixpoint_trace_is_a_valid_sequence() {
        let g = ladder(4, &r("1/2")).unwrap();
        let trace = nsd_fixpoint(&g);
        assert_eq!(validate_deletion_sequence(&g, &trace.rounds), Ok(()));
    }

    #[test]
    fn random_sequences_terminate_at_the_fixpoint() {
        let g = ladder(4, &r("1/2")).unwrap();
        let fixpoint = nsd_fixpoint(&g);
        for seed in 0..20 {
            let seq = random_terminating_sequence(&g, seed);
            assert_eq!(validate_deletion_sequence(&g, &seq), Ok(()));
            assert_eq!(seq.last().unwrap(), fixpoint.final_family());
        }
    }

    #[test]
    fn random_sequences_are_deterministic_per_seed() {
        let g = ladder(5, &r("1/2")).unwrap();
        assert_eq!(random_terminating_sequence(&g, 7), random_terminating_sequence(&g, 7));
    }

    #[test]
    fn sequence_validation_rejects_bad_sequences() {
        let g = ladder(3, &r("1/2")).unwrap();
        let full = StrategyFamily::full(&g);

        assert_eq!(validate_deletion_sequence(&g, &[]), Err(SequenceError::Empty));

        let mut not_full = full.clone();
        not_full.remove(0, 0);
        assert_eq!(
            validate_deletion_sequence(&g, &[not_full.clone()]),
            Err(SequenceError::FirstNotFull)
        );

        // Deleting the top rung: never dominated.
        let mut bad = full.clone();
        bad.remove(0, 2);
        assert_eq!(
            validate_deletion_sequence(&g, &[full.clone(), bad]),
            Err(SequenceError::DeletedUndominated { step: 1, player: 0, strategy: 2 })
        );

        // Repeating the same family is not a proper subset.
        assert_eq!(
            validate_deletion_sequence(&g, &[full.clone(), full.clone()]),
            Err(SequenceError::NotProperSubset { step: 1 })
        );

        // Stopping early leaves dominated strategies behind (player 1's
        // bottom rung is still dominated after player 0's was deleted).
        let mut partial = full.clone();
        partial.remove(0, 0);
        assert_eq!(
            validate_deletion_sequence(&g, &[full.clone(), partial]),
            Err(SequenceError::FinalHasDominated { player: 1, strategy: 0 })
        );
    }

    #[test]
    fn trace_serialization_shape() {
        let g = ladder(2, &r("1/2")).unwrap();
        let trace = nsd_fixpoint(&g);
        let text = serialize_trace(&g, &trace);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["kind"], "minimax");
        assert_eq!(doc["rounds"].as_array().unwrap().len(), 2);
        let cert = &doc["certificates"][0];
        assert_eq!(cert["player"], 1);
        assert_eq!(cert["deleted"], "1");
        assert_eq!(cert["dominator"], "2");
        assert_eq!(cert["min"], "3/2");
        assert_eq!(cert["max"], "1");
        assert_eq!(cert["round"], 1);
    }
}
