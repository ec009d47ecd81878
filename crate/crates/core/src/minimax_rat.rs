//! Minimax rationalizability by exhaustive witness search.
//!
//! A profile is minimax rationalizable when there are per-player witness sets
//! `Z_i` containing it such that no member of any `Z_i` has a best case
//! (against the others' witness sets) below the worst case of *any* strategy
//! of that player. The search enumerates every combination of nonempty
//! subsets, so it is intentionally independent of the deletion machinery in
//! [`crate::domination`]; agreement between the two is checked by the
//! acceptance suite rather than shared code.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::game::{Game, PlayerId, Profile, StrategyId};
use crate::rational::Rational;

/// Default per-player strategy-count budget for the exhaustive search.
pub const DEFAULT_WITNESS_BUDGET: usize = 5;

/// Per-player candidate sets `Z_i`, each nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSets {
    sets: Vec<Vec<StrategyId>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessSetsError {
    #[error("expected {expected} witness sets, got {got}")]
    WrongPlayerCount { expected: usize, got: usize },
    #[error("witness set for player {player} is empty")]
    EmptySet { player: PlayerId },
    #[error("witness set for player {player} mentions strategy index {strategy}, out of range")]
    OutOfRange { player: PlayerId, strategy: StrategyId },
}

impl WitnessSets {
    pub fn new(game: &Game, sets: Vec<Vec<StrategyId>>) -> Result<Self, WitnessSetsError> {
        if sets.len() != game.player_count() {
            return Err(WitnessSetsError::WrongPlayerCount {
                expected: game.player_count(),
                got: sets.len(),
            });
        }
        let mut normalized = Vec::with_capacity(sets.len());
        for (player, set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(WitnessSetsError::EmptySet { player });
            }
            let mut set: Vec<StrategyId> = set;
            set.sort_unstable();
            set.dedup();
            if let Some(&strategy) = set.iter().find(|&&s| s >= game.strategy_count(player)) {
                return Err(WitnessSetsError::OutOfRange { player, strategy });
            }
            normalized.push(set);
        }
        Ok(WitnessSets { sets: normalized })
    }

    pub fn from_names(game: &Game, names: &[Vec<String>]) -> Result<Self, WitnessSetsError> {
        let mut sets = Vec::with_capacity(names.len());
        for (player, list) in names.iter().enumerate() {
            let mut set = Vec::with_capacity(list.len());
            for name in list {
                match game.strategy_index(player, name) {
                    Ok(s) => set.push(s),
                    Err(_) => {
                        return Err(WitnessSetsError::OutOfRange {
                            player,
                            strategy: usize::MAX,
                        })
                    }
                }
            }
            sets.push(set);
        }
        WitnessSets::new(game, sets)
    }

    pub fn set(&self, player: PlayerId) -> &[StrategyId] {
        &self.sets[player]
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, profile: &[StrategyId]) -> bool {
        profile
            .iter()
            .enumerate()
            .all(|(player, s)| self.sets[player].contains(s))
    }

    pub fn to_names(&self, game: &Game) -> Vec<Vec<String>> {
        self.sets
            .iter()
            .enumerate()
            .map(|(p, set)| set.iter().map(|&s| game.strategy_name(p, s).to_owned()).collect())
            .collect()
    }

    /// Opponent index profiles drawn from the witness sets, player `player`
    /// removed.
    fn opponent_profiles(&self, player: PlayerId) -> Vec<Vec<StrategyId>> {
        let mut out = vec![Vec::new()];
        for (j, set) in self.sets.iter().enumerate() {
            if j == player {
                continue;
            }
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
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error(
    "player {player} has {strategies} strategies, above the search budget of {budget}"
)]
pub struct BudgetExceeded {
    pub player: PlayerId,
    pub strategies: usize,
    pub budget: usize,
}

/// Why a candidate family fails.
#[derive(Debug, PartialEq, Eq)]
pub enum WitnessViolation {
    /// The profile strays outside the sets.
    ProfileOutsideSets { player: PlayerId, strategy: StrategyId },
    /// Member `member` of `Z_player` has a best case `max` strictly below the
    /// worst case `min` of `challenger`.
    Inequality {
        player: PlayerId,
        member: StrategyId,
        challenger: StrategyId,
        max: Rational,
        min: Rational,
    },
}

/// Checks membership and the witness inequality, reporting the first
/// violation found (players in order, then members, then challengers in
/// strategy-list order).
// Violations carry the offending payoffs; the error path is cold.
#[allow(clippy::result_large_err)]
pub fn check_witness_sets(
    game: &Game,
    profile: &[StrategyId],
    witness: &WitnessSets,
) -> Result<(), WitnessViolation> {
    for (player, &strategy) in profile.iter().enumerate() {
        if !witness.set(player).contains(&strategy) {
            return Err(WitnessViolation::ProfileOutsideSets { player, strategy });
        }
    }
    for player in game.players() {
        let opponents = witness.opponent_profiles(player);
        for &member in witness.set(player) {
            let best_case = opponents
                .iter()
                .map(|opp| game.utility_vs(player, member, opp))
                .max()
                .expect("nonempty witness sets");
            for challenger in 0..game.strategy_count(player) {
                let worst_case = opponents
                    .iter()
                    .map(|opp| game.utility_vs(player, challenger, opp))
                    .min()
                    .expect("nonempty witness sets");
                if worst_case > best_case {
                    return Err(WitnessViolation::Inequality {
                        player,
                        member,
                        challenger,
                        max: best_case.clone(),
                        min: worst_case.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Enumeration order for the exhaustive search: total size ascending, then
/// lexicographic over per-player sets (each set as its sorted index list).
fn all_families(game: &Game) -> Vec<Vec<Vec<StrategyId>>> {
    let per_player: Vec<Vec<Vec<StrategyId>>> = game
        .players()
        .map(|p| {
            let s = game.strategy_count(p);
            (1u32..(1 << s))
                .map(|mask| (0..s).filter(|&i| mask >> i & 1 == 1).collect())
                .collect()
        })
        .collect();
    let mut families = vec![Vec::new()];
    for options in &per_player {
        let mut next = Vec::with_capacity(families.len() * options.len());
        for prefix in &families {
            for option in options {
                let mut family = prefix.clone();
                family.push(option.clone());
                next.push(family);
            }
        }
        families = next;
    }
    families.sort_by(|a, b| {
        let size = |f: &Vec<Vec<StrategyId>>| f.iter().map(Vec::len).sum::<usize>();
        size(a).cmp(&size(b)).then_with(|| a.cmp(b))
    });
    families
}

fn check_budget(game: &Game, budget: usize) -> Result<(), BudgetExceeded> {
    for player in game.players() {
        let strategies = game.strategy_count(player);
        if strategies > budget {
            return Err(BudgetExceeded { player, strategies, budget });
        }
    }
    Ok(())
}

/// A player together with the opponents' sets, encoded as sorted index
/// lists.
type RankKey = (PlayerId, Vec<Vec<StrategyId>>);
/// Per-strategy (min_rank, max_rank) over the keyed opponent profiles.
type RankBounds = Vec<(usize, usize)>;

/// Rank tables over the witness family's opponent profiles, used so the
/// inner loop compares precomputed ranks instead of rationals.
struct RankCache {
    entries: BTreeMap<RankKey, RankBounds>,
}

impl RankCache {
    fn new() -> Self {
        RankCache { entries: BTreeMap::new() }
    }

    fn bounds<'a>(
        &'a mut self,
        game: &Game,
        player: PlayerId,
        family: &[Vec<StrategyId>],
    ) -> &'a [(usize, usize)] {
        let others: Vec<Vec<StrategyId>> = family
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != player)
            .map(|(_, set)| set.clone())
            .collect();
        self.entries
            .entry((player, others.clone()))
            .or_insert_with(|| {
                let mut opponents = vec![Vec::new()];
                for set in &others {
                    let mut next = Vec::with_capacity(opponents.len() * set.len());
                    for prefix in &opponents {
                        for &choice in set {
                            let mut item = prefix.clone();
                            item.push(choice);
                            next.push(item);
                        }
                    }
                    opponents = next;
                }
                (0..game.strategy_count(player))
                    .map(|s| {
                        let ranks =
                            opponents.iter().map(|opp| game.utility_rank_vs(player, s, opp));
                        let min = ranks.clone().min().expect("nonempty");
                        let max = ranks.max().expect("nonempty");
                        (min, max)
                    })
                    .collect()
            })
    }
}

fn family_is_valid(game: &Game, family: &[Vec<StrategyId>], cache: &mut RankCache) -> bool {
    for player in game.players() {
        let bounds = cache.bounds(game, player, family);
        let toughest_worst_case =
            bounds.iter().map(|&(min, _)| min).max().expect("players have strategies");
        if family[player].iter().any(|&member| bounds[member].1 < toughest_worst_case) {
            return false;
        }
    }
    true
}

/// Finds the first witness family (in enumeration order) containing
/// `profile` and passing [`check_witness_sets`], or `None` if no family
/// works within the per-player `budget`.
pub fn find_witness_sets(
    game: &Game,
    profile: &[StrategyId],
    budget: usize,
) -> Result<Option<WitnessSets>, BudgetExceeded> {
    check_budget(game, budget)?;
    let mut cache = RankCache::new();
    for family in all_families(game) {
        let contains = profile
            .iter()
            .enumerate()
            .all(|(player, s)| family[player].contains(s));
        if contains && family_is_valid(game, &family, &mut cache) {
            let witness = WitnessSets { sets: family };
            debug_assert_eq!(check_witness_sets(game, profile, &witness), Ok(()));
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// All minimax-rationalizable profiles, each with the first witness family
/// (in enumeration order) that contains it.
pub fn minimax_rationalizable_profiles(
    game: &Game,
    budget: usize,
) -> Result<BTreeMap<Profile, WitnessSets>, BudgetExceeded> {
    check_budget(game, budget)?;
    let mut cache = RankCache::new();
    let mut witnesses: BTreeMap<Profile, WitnessSets> = BTreeMap::new();
    for family in all_families(game) {
        if !family_is_valid(game, &family, &mut cache) {
            continue;
        }
        let mut members = vec![Vec::new()];
        for set in &family {
            let mut next = Vec::with_capacity(members.len() * set.len());
            for prefix in &members {
                for &choice in set {
                    let mut item = prefix.clone();
                    item.push(choice);
                    next.push(item);
                }
            }
            members = next;
        }
        for profile in members {
            witnesses
                .entry(profile)
                .or_insert_with(|| WitnessSets { sets: family.clone() });
        }
    }
    Ok(witnesses)
}
