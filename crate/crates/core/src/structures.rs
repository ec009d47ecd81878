//! Counterfactual belief structures over a game.
//!
//! A structure carries a finite state space; each state fixes a strategy
//! profile, each player holds a belief (probability distribution over
//! states), and a closest-state map says where a state "moves" when one
//! player switches strategy. Two belief conditions make a structure
//! appropriate:
//!
//! 1. a player's belief puts mass 1 on states where they play their actual
//!    strategy, and
//! 2. mass 1 on states where they hold this same belief.
//!
//! The closest-state map must send a switch to a state where the switching
//! player plays the new strategy, and must be the identity when the "switch"
//! is to the strategy already played.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{
    parse_game, remove_strategy, serialize_game, Game, GameError, OpponentBelief, PlayerId,
    Profile, StrategyId,
};
use crate::rational::Rational;

pub type StateId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("invalid structure JSON: {0}")]
    Syntax(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("structure document has no game and none was provided")]
    NoGame,
    #[error("provided game differs from the game embedded in the document")]
    GameMismatch,
    #[error("structure references game file {0:?}; resolve it and pass the game in")]
    GamePathUnresolved(String),
    #[error("structure has no states")]
    NoStates,
    #[error("duplicate state id {0:?}")]
    DuplicateStateId(String),
    #[error("unknown state id {0:?}")]
    UnknownStateId(String),
    #[error("beliefs for player {player} are missing")]
    MissingBeliefPlayer { player: usize },
    #[error("beliefs listed for unknown player key {key:?}")]
    UnknownBeliefPlayer { key: String },
    #[error("player {player} has no belief at state {state:?}")]
    MissingBelief { player: usize, state: String },
    #[error("belief of player {player} at state {state:?} sums to {total}, not 1")]
    BadMass { player: usize, state: String, total: Rational },
    #[error("belief of player {player} at state {state:?} gives {target:?} negative mass")]
    NegativeMass { player: usize, state: String, target: String },
    #[error("no closest-state entry for state {state:?}, player {player}, strategy {strategy:?}")]
    MissingClosest { state: String, player: usize, strategy: String },
    #[error("duplicate closest-state entry for state {state:?}, player {player}, strategy {strategy:?}")]
    DuplicateClosest { state: String, player: usize, strategy: String },
    #[error(
        "closest state for ({state:?}, player {player}, {strategy:?}) is {to:?}, where the player does not play {strategy:?}"
    )]
    ClosestWrongStrategy { state: String, player: usize, strategy: String, to: String },
    #[error("closest state for ({state:?}, player {player}) under its own strategy must be {state:?}, not {to:?}")]
    ClosestNotIdentity { state: String, player: usize, to: String },
    #[error("{got} states cannot cover every strategy; the game needs at least {needed}")]
    InfeasibleStateCount { needed: usize, got: usize },
    #[error("leak probability must be strictly between 0 and 1, got {0}")]
    BadEpsilon(Rational),
}

/// A probability distribution over states, stored densely so equality is
/// plain structural equality of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BeliefDistribution {
    mass: Vec<Rational>,
}

impl fmt::Debug for BeliefDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .mass
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(w, p)| format!("{w}:{p}"))
            .collect();
        write!(f, "{{{}}}", entries.join(", "))
    }
}

impl BeliefDistribution {
    pub fn point(state_count: usize, state: StateId) -> Self {
        let mut mass = vec![Rational::zero(); state_count];
        mass[state] = Rational::one();
        BeliefDistribution { mass }
    }

    /// Builds a distribution from (state, mass) entries; masses must be
    /// nonnegative and sum to exactly 1.
    pub fn from_entries(
        state_count: usize,
        entries: &[(StateId, Rational)],
    ) -> Option<Self> {
        let mut mass = vec![Rational::zero(); state_count];
        for (state, p) in entries {
            if *state >= state_count || p.is_negative() {
                return None;
            }
            mass[*state] += p;
        }
        let total: Rational = mass.iter().cloned().sum();
        (total == Rational::one()).then_some(BeliefDistribution { mass })
    }

    pub fn prob(&self, state: StateId) -> &Rational {
        &self.mass[state]
    }

    pub fn support(&self) -> impl Iterator<Item = StateId> + '_ {
        self.mass.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(w, _)| w)
    }

    /// Exact total mass; 1 for any well-formed belief.
    pub fn total(&self) -> Rational {
        self.mass.iter().cloned().sum()
    }

    /// Mass 1 on `set`, i.e. the support lies inside it.
    pub fn certain_of(&self, set: &BTreeSet<StateId>) -> bool {
        self.support().all(|w| set.contains(&w))
    }
}

/// How a structure can fail the appropriateness or strong-appropriateness
/// conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Support state where the player plays a different strategy.
    BeliefOffOwnStrategy { player: PlayerId, state: StateId, offending: StateId },
    /// Support state where the player holds a different belief.
    BeliefNotIntrospective { player: PlayerId, state: StateId, offending: StateId },
    /// Switch target where the switching player does not play the new
    /// strategy.
    ClosestWrongStrategy { state: StateId, player: PlayerId, strategy: StrategyId },
    /// Switching to the strategy already played must stay put.
    ClosestNotIdentity { state: StateId, player: PlayerId },
    /// After a switch, some state in the new belief's support carries a
    /// belief other than that new belief.
    SwitchedBeliefNotSelfEvident {
        state: StateId,
        player: PlayerId,
        strategy: StrategyId,
        offending: StateId,
    },
}

/// A game together with states, per-state profiles, per-player beliefs, and
/// the closest-state map.
#[derive(Clone, PartialEq, Eq)]
pub struct CounterfactualStructure {
    game: Game,
    state_ids: Vec<String>,
    profiles: Vec<Profile>,
    /// `[state][player][strategy] -> state`
    closest: Vec<Vec<Vec<StateId>>>,
    /// `[player][state]`
    beliefs: Vec<Vec<BeliefDistribution>>,
}

impl fmt::Debug for CounterfactualStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CounterfactualStructure")
            .field("states", &self.state_ids)
            .finish_non_exhaustive()
    }
}

impl CounterfactualStructure {
    /// Builds a structure, checking well-formedness (shapes, index ranges,
    /// exact unit masses) but not the appropriateness conditions; see
    /// [`CounterfactualStructure::validate_appropriate`].
    pub fn new(
        game: Game,
        states: Vec<(String, Profile)>,
        beliefs: Vec<Vec<BeliefDistribution>>,
        closest: Vec<Vec<Vec<StateId>>>,
    ) -> Result<Self, StructureError> {
        if states.is_empty() {
            return Err(StructureError::NoStates);
        }
        let n = game.player_count();
        let m = states.len();
        let mut ids = BTreeSet::new();
        for (id, profile) in &states {
            if !ids.insert(id.clone()) {
                return Err(StructureError::DuplicateStateId(id.clone()));
            }
            if profile.len() != n
                || profile.iter().enumerate().any(|(p, &s)| s >= game.strategy_count(p))
            {
                return Err(StructureError::Syntax(format!(
                    "state {id:?} has an invalid profile"
                )));
            }
        }
        assert_eq!(beliefs.len(), n, "one belief table per player");
        for (player, per_state) in beliefs.iter().enumerate() {
            assert_eq!(per_state.len(), m, "one belief per state");
            for (w, dist) in per_state.iter().enumerate() {
                assert_eq!(dist.mass.len(), m, "beliefs range over the state space");
                if let Some(bad) = dist.mass.iter().position(|p| p.is_negative()) {
                    return Err(StructureError::NegativeMass {
                        player: player + 1,
                        state: states[w].0.clone(),
                        target: states[bad].0.clone(),
                    });
                }
                let total = dist.total();
                if total != Rational::one() {
                    return Err(StructureError::BadMass {
                        player: player + 1,
                        state: states[w].0.clone(),
                        total,
                    });
                }
            }
        }
        assert_eq!(closest.len(), m, "closest map covers every state");
        for (w, per_player) in closest.iter().enumerate() {
            assert_eq!(per_player.len(), n);
            for (player, per_strategy) in per_player.iter().enumerate() {
                assert_eq!(per_strategy.len(), game.strategy_count(player));
                for &target in per_strategy {
                    assert!(target < m, "closest target in range");
                }
                let _ = (w, player);
            }
        }
        let (state_ids, profiles) = states.into_iter().unzip();
        Ok(CounterfactualStructure { game, state_ids, profiles, closest, beliefs })
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn state_count(&self) -> usize {
        self.state_ids.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        0..self.state_count()
    }

    pub fn state_id(&self, state: StateId) -> &str {
        &self.state_ids[state]
    }

    pub fn state_index(&self, id: &str) -> Option<StateId> {
        self.state_ids.iter().position(|s| s == id)
    }

    pub fn profile(&self, state: StateId) -> &Profile {
        &self.profiles[state]
    }

    /// `s_i(state)`: the strategy `player` plays at `state`.
    pub fn strategy(&self, state: StateId, player: PlayerId) -> StrategyId {
        self.profiles[state][player]
    }

    /// `f(state, player, strategy)`.
    pub fn closest_state(&self, state: StateId, player: PlayerId, strategy: StrategyId) -> StateId {
        self.closest[state][player][strategy]
    }

    /// `PR_player(state)`.
    pub fn belief(&self, player: PlayerId, state: StateId) -> &BeliefDistribution {
        &self.beliefs[player][state]
    }

    /// Replaces one belief; shape-checked, semantics left to the validators.
    pub fn set_belief(&mut self, player: PlayerId, state: StateId, dist: BeliefDistribution) {
        assert_eq!(dist.mass.len(), self.state_count());
        self.beliefs[player][state] = dist;
    }

    /// Redirects one closest-state entry; range-checked only.
    pub fn set_closest(
        &mut self,
        state: StateId,
        player: PlayerId,
        strategy: StrategyId,
        target: StateId,
    ) {
        assert!(target < self.state_count());
        self.closest[state][player][strategy] = target;
    }

    /// The belief `player` would hold at `state` after switching to
    /// `strategy`: the current belief pushed through the closest-state map.
    pub fn counterfactual_belief(
        &self,
        state: StateId,
        player: PlayerId,
        strategy: StrategyId,
    ) -> BeliefDistribution {
        let current = &self.beliefs[player][state];
        let mut mass = vec![Rational::zero(); self.state_count()];
        for w in current.support() {
            let target = self.closest[w][player][strategy];
            mass[target] += current.prob(w);
        }
        BeliefDistribution { mass }
    }

    /// Checks the two belief conditions and the two closest-state conditions
    /// exhaustively, returning every violation.
    pub fn validate_appropriate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for player in self.game.players() {
            for state in self.states() {
                let dist = &self.beliefs[player][state];
                let own = self.strategy(state, player);
                for w in dist.support() {
                    if self.strategy(w, player) != own {
                        out.push(Violation::BeliefOffOwnStrategy { player, state, offending: w });
                    }
                    if self.beliefs[player][w] != *dist {
                        out.push(Violation::BeliefNotIntrospective { player, state, offending: w });
                    }
                }
                for strategy in 0..self.game.strategy_count(player) {
                    let target = self.closest[state][player][strategy];
                    if self.strategy(target, player) != strategy {
                        out.push(Violation::ClosestWrongStrategy { state, player, strategy });
                    }
                    if strategy == own && target != state {
                        out.push(Violation::ClosestNotIdentity { state, player });
                    }
                }
            }
        }
        out
    }

    pub fn is_appropriate(&self) -> bool {
        self.validate_appropriate().is_empty()
    }

    /// Appropriateness plus the strong condition: every switched belief puts
    /// mass 1 on states whose holder-belief equals that switched belief.
    pub fn validate_strongly_appropriate(&self) -> Vec<Violation> {
        let mut out = self.validate_appropriate();
        for player in self.game.players() {
            for state in self.states() {
                for strategy in 0..self.game.strategy_count(player) {
                    let switched = self.counterfactual_belief(state, player, strategy);
                    for w in switched.support() {
                        if self.beliefs[player][w] != switched {
                            out.push(Violation::SwitchedBeliefNotSelfEvident {
                                state,
                                player,
                                strategy,
                                offending: w,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_strongly_appropriate(&self) -> bool {
        self.validate_strongly_appropriate().is_empty()
    }

    /// True when every switch leaves the other players' strategies and
    /// beliefs untouched: `f(w, i, s)` keeps `s_j` and `PR_j` for all
    /// `j != i`.
    pub fn respects_unilateral_deviations(&self) -> bool {
        self.states().all(|state| {
            self.game.players().all(|player| {
                (0..self.game.strategy_count(player)).all(|strategy| {
                    let target = self.closest[state][player][strategy];
                    self.game.players().filter(|&j| j != player).all(|j| {
                        self.strategy(target, j) == self.strategy(state, j)
                            && self.beliefs[j][target] == self.beliefs[j][state]
                    })
                })
            })
        })
    }

    /// Per-player projection classes: states are equivalent for `player`
    /// when the others play the same strategies and hold the same beliefs.
    fn projection_classes(&self, player: PlayerId) -> Vec<usize> {
        let mut keys: BTreeMap<(Vec<StrategyId>, Vec<&BeliefDistribution>), usize> =
            BTreeMap::new();
        self.states()
            .map(|state| {
                let strategies: Vec<StrategyId> = self
                    .game
                    .players()
                    .filter(|&j| j != player)
                    .map(|j| self.strategy(state, j))
                    .collect();
                let beliefs: Vec<&BeliefDistribution> = self
                    .game
                    .players()
                    .filter(|&j| j != player)
                    .map(|j| &self.beliefs[j][state])
                    .collect();
                let next = keys.len();
                *keys.entry((strategies, beliefs)).or_insert(next)
            })
            .collect()
    }

    /// Largest total-variation distance, over all states, players, and
    /// switches, between the switched belief and the current belief once both
    /// are projected onto the other players' strategies and beliefs. Always
    /// in `[0, 1]`; exactly 0 when the structure respects unilateral
    /// deviations.
    pub fn translucency_epsilon(&self) -> Rational {
        let mut worst = Rational::zero();
        for player in self.game.players() {
            let classes = self.projection_classes(player);
            let class_count = classes.iter().max().map_or(0, |&c| c + 1);
            let project = |dist: &BeliefDistribution| {
                let mut projected = vec![Rational::zero(); class_count];
                for w in dist.support() {
                    projected[classes[w]] += dist.prob(w);
                }
                projected
            };
            for state in self.states() {
                let actual = project(&self.beliefs[player][state]);
                for strategy in 0..self.game.strategy_count(player) {
                    let switched =
                        project(&self.counterfactual_belief(state, player, strategy));
                    let l1: Rational = actual
                        .iter()
                        .zip(&switched)
                        .map(|(a, b)| (a - b).abs())
                        .sum();
                    let tv = l1 / Rational::from_integer(2);
                    worst = worst.max(tv);
                }
            }
        }
        worst
    }

    /// Projects the belief at `state` onto opponent strategy profiles.
    pub fn induced_opponent_belief(&self, state: StateId, player: PlayerId) -> OpponentBelief {
        let dist = &self.beliefs[player][state];
        let mut probs: BTreeMap<Vec<StrategyId>, Rational> = BTreeMap::new();
        for w in dist.support() {
            let opp = remove_strategy(self.profile(w), player);
            *probs.entry(opp).or_insert_with(Rational::zero) += dist.prob(w);
        }
        self.game
            .opponent_belief(player, probs.into_iter().collect())
            .expect("projection of a unit-mass belief is a unit-mass belief")
    }
}

// --- built-in structures ---------------------------------------------------

/// The cooperate scenario: both players cooperate; each expects a switch to
/// leak with probability `eps`, in which case the other player retaliates
/// immediately. Returns the structure and its designated state.
///
/// States: `coop`/`coop_leak` (both cooperate; whether a switch would leak),
/// `defect1`/`defect2` (one player switched unnoticed), `war` (a leak
/// happened; mutual switching, common knowledge), `relent1`/`relent2` (one
/// player returns to cooperating while the other still fights).
pub fn translucent_pd_structure(
    r: &Rational,
    p: &Rational,
    eps: &Rational,
) -> Result<(CounterfactualStructure, StateId), StructureError> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(StructureError::BadEpsilon(eps.clone()));
    }
    let game = crate::game::translucent_pd(r, p);
    let c = 0; // strategy indices in the fixed ["C", "S"] lists
    let s = 1;
    let states: Vec<(String, Profile)> = vec![
        ("coop".into(), vec![c, c]),
        ("coop_leak".into(), vec![c, c]),
        ("defect1".into(), vec![s, c]),
        ("defect2".into(), vec![c, s]),
        ("war".into(), vec![s, s]),
        ("relent1".into(), vec![c, s]),
        ("relent2".into(), vec![s, c]),
    ];
    let m = states.len();
    let (coop, coop_leak, defect1, defect2, war, relent1, relent2) = (0, 1, 2, 3, 4, 5, 6);
    let mu = BeliefDistribution::from_entries(
        m,
        &[(coop, Rational::one() - eps), (coop_leak, eps.clone())],
    )
    .expect("eps in (0,1) yields a unit mass");
    let point = |w| BeliefDistribution::point(m, w);
    let beliefs = vec![
        vec![
            mu.clone(),      // coop
            mu.clone(),      // coop_leak
            point(defect1),  // defect1: player 1 knows they switched
            mu.clone(),      // defect2: player 1 has not noticed
            point(war),      // war
            point(relent1),  // relent1
            point(war),      // relent2: player 1 has not noticed the retreat
        ],
        vec![
            mu.clone(),
            mu.clone(),
            mu,              // defect1: player 2 has not noticed
            point(defect2),
            point(war),
            point(war),      // relent1: player 2 has not noticed the retreat
            point(relent2),
        ],
    ];
    // closest[state][player] = [target when playing C, target when playing S]
    let closest = vec![
        vec![vec![coop, defect1], vec![coop, defect2]],
        vec![vec![coop_leak, war], vec![coop_leak, war]],
        vec![vec![coop, defect1], vec![defect1, war]],
        vec![vec![defect2, war], vec![coop, defect2]],
        vec![vec![relent1, war], vec![relent2, war]],
        vec![vec![relent1, war], vec![relent2, relent1]],
        vec![vec![relent1, relent2], vec![relent2, war]],
    ];
    let structure = CounterfactualStructure::new(game, states, beliefs, closest)?;
    debug_assert!(structure.is_appropriate());
    Ok((structure, coop))
}

/// Two-state scenario: both cooperate at `w0`, both switch at `w1`, and any
/// switch by either player lands in the other state. Point beliefs
/// everywhere. Returns the structure and its designated state `w0`.
pub fn pd_naive_structure(r: &Rational, p: &Rational) -> (CounterfactualStructure, StateId) {
    let game = crate::game::translucent_pd(r, p);
    let (c, s) = (0, 1);
    let states: Vec<(String, Profile)> =
        vec![("w0".into(), vec![c, c]), ("w1".into(), vec![s, s])];
    let point = |w| BeliefDistribution::point(2, w);
    let beliefs = vec![vec![point(0), point(1)], vec![point(0), point(1)]];
    let closest = vec![
        vec![vec![0, 1], vec![0, 1]],
        vec![vec![0, 1], vec![0, 1]],
    ];
    let structure =
        CounterfactualStructure::new(game, states, beliefs, closest).expect("fixed shape");
    debug_assert!(structure.is_appropriate());
    (structure, 0)
}

/// One state per profile; switches relabel only the switching player's
/// coordinate, and each player's belief is uniform over the states sharing
/// their own strategy. Respects unilateral deviations by construction.
pub fn unilateral_product_structure(game: &Game) -> CounterfactualStructure {
    let profiles: Vec<Profile> = game.profiles().collect();
    let m = profiles.len();
    let index: BTreeMap<&Profile, StateId> =
        profiles.iter().enumerate().map(|(w, p)| (p, w)).collect();
    let states: Vec<(String, Profile)> = profiles
        .iter()
        .enumerate()
        .map(|(w, p)| (format!("w{w}"), p.clone()))
        .collect();
    let beliefs = game
        .players()
        .map(|player| {
            (0..m)
                .map(|state| {
                    let same: Vec<StateId> = (0..m)
                        .filter(|&w| profiles[w][player] == profiles[state][player])
                        .collect();
                    let share = Rational::one() / Rational::from_integer(same.len() as i64);
                    let entries: Vec<(StateId, Rational)> =
                        same.into_iter().map(|w| (w, share.clone())).collect();
                    BeliefDistribution::from_entries(m, &entries).expect("uniform unit mass")
                })
                .collect()
        })
        .collect();
    let closest = (0..m)
        .map(|state| {
            game.players()
                .map(|player| {
                    (0..game.strategy_count(player))
                        .map(|strategy| {
                            let mut target = profiles[state].clone();
                            target[player] = strategy;
                            index[&target]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let structure = CounterfactualStructure::new(game.clone(), states, beliefs, closest)
        .expect("product shape is well-formed");
    debug_assert!(structure.is_appropriate());
    structure
}

// --- random structures -----------------------------------------------------

/// Draws a random appropriate structure: profiles cover every strategy of
/// every player, beliefs are built per player from cells of constant own
/// strategy (one distribution per cell, supported inside the cell), and the
/// closest-state map is drawn uniformly among valid targets. Deterministic
/// per seed.
pub fn random_appropriate_structure(
    game: &Game,
    seed: u64,
    state_count: usize,
) -> Result<CounterfactualStructure, StructureError> {
    let needed = game.players().map(|p| game.strategy_count(p)).max().unwrap_or(0);
    if state_count < needed {
        return Err(StructureError::InfeasibleStateCount { needed, got: state_count });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = state_count;

    // Profiles: every strategy appears at least once per player.
    let mut choices: Vec<Vec<StrategyId>> = Vec::new();
    for player in game.players() {
        let count = game.strategy_count(player);
        let mut slots: Vec<usize> = (0..m).collect();
        slots.shuffle(&mut rng);
        let mut per_state = vec![usize::MAX; m];
        for (i, &slot) in slots.iter().enumerate() {
            per_state[slot] =
                if i < count { i } else { rng.gen_range(0..count) };
        }
        choices.push(per_state);
    }
    let profiles: Vec<Profile> =
        (0..m).map(|w| game.players().map(|p| choices[p][w]).collect()).collect();

    // Beliefs: split each own-strategy class into cells; give each cell one
    // distribution supported inside it.
    let beliefs = game
        .players()
        .map(|player| {
            let mut dists: Vec<Option<BeliefDistribution>> = vec![None; m];
            for strategy in 0..game.strategy_count(player) {
                let mut class: Vec<StateId> =
                    (0..m).filter(|&w| profiles[w][player] == strategy).collect();
                class.shuffle(&mut rng);
                let mut cells: Vec<Vec<StateId>> = Vec::new();
                for &w in &class {
                    if cells.is_empty() || rng.gen_bool(0.5) {
                        cells.push(Vec::new());
                    }
                    cells.last_mut().expect("just pushed").push(w);
                }
                for cell in cells {
                    let mut support: Vec<StateId> =
                        cell.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                    if support.is_empty() {
                        support.push(*cell.choose(&mut rng).expect("cells are nonempty"));
                    }
                    let weights: Vec<i64> =
                        support.iter().map(|_| rng.gen_range(1..=4)).collect();
                    let total: i64 = weights.iter().sum();
                    let entries: Vec<(StateId, Rational)> = support
                        .iter()
                        .zip(&weights)
                        .map(|(&w, &k)| (w, Rational::new(k, total)))
                        .collect();
                    let dist = BeliefDistribution::from_entries(m, &entries)
                        .expect("weights sum to the total");
                    for &w in &cell {
                        dists[w] = Some(dist.clone());
                    }
                }
            }
            dists.into_iter().map(|d| d.expect("every state sits in a cell")).collect()
        })
        .collect();

    // Closest map: identity on the own strategy, random valid target
    // otherwise.
    let closest = (0..m)
        .map(|state| {
            game.players()
                .map(|player| {
                    (0..game.strategy_count(player))
                        .map(|strategy| {
                            if strategy == profiles[state][player] {
                                state
                            } else {
                                let candidates: Vec<StateId> = (0..m)
                                    .filter(|&w| profiles[w][player] == strategy)
                                    .collect();
                                *candidates.choose(&mut rng).expect("strategies are covered")
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let states = (0..m).map(|w| (format!("w{w}"), profiles[w].clone())).collect();
    let structure = CounterfactualStructure::new(game.clone(), states, beliefs, closest)?;
    debug_assert!(structure.is_appropriate());
    Ok(structure)
}

// --- file format -----------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct StructureFile {
    game: serde_json::Value,
    states: Vec<StateEntry>,
    beliefs: BTreeMap<String, BTreeMap<String, BTreeMap<String, Rational>>>,
    closest: Vec<ClosestEntry>,
}

#[derive(Serialize, Deserialize)]
struct StateEntry {
    id: String,
    profile: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ClosestEntry {
    state: String,
    player: usize,
    strategy: String,
    to: String,
}

/// A parsed structure document whose game may still need resolving.
pub struct StructureDoc {
    file: StructureFile,
}

impl StructureDoc {
    pub fn parse(text: &str) -> Result<Self, StructureError> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| StructureError::Syntax(e.to_string()))?;
        Ok(StructureDoc { file })
    }

    /// Present when the document references an external game file.
    pub fn game_path(&self) -> Option<&str> {
        self.file.game.as_str()
    }

    /// Builds the structure. `game` takes precedence over an embedded game
    /// but must match it; a path reference requires `game`.
    pub fn instantiate(
        &self,
        game: Option<Game>,
    ) -> Result<CounterfactualStructure, StructureError> {
        let embedded = if self.file.game.is_null() {
            None
        } else if let Some(path) = self.file.game.as_str() {
            if game.is_none() {
                return Err(StructureError::GamePathUnresolved(path.to_owned()));
            }
            None
        } else {
            Some(parse_game(&self.file.game.to_string())?)
        };
        let game = match (game, embedded) {
            (Some(given), Some(inline)) if given != inline => {
                return Err(StructureError::GameMismatch)
            }
            (Some(given), _) => given,
            (None, Some(inline)) => inline,
            (None, None) => return Err(StructureError::NoGame),
        };
        build_structure(game, &self.file)
    }
}

fn build_structure(
    game: Game,
    file: &StructureFile,
) -> Result<CounterfactualStructure, StructureError> {
    if file.states.is_empty() {
        return Err(StructureError::NoStates);
    }
    let n = game.player_count();
    let m = file.states.len();
    let mut index: BTreeMap<&str, StateId> = BTreeMap::new();
    for (w, entry) in file.states.iter().enumerate() {
        if index.insert(&entry.id, w).is_some() {
            return Err(StructureError::DuplicateStateId(entry.id.clone()));
        }
    }
    let mut states = Vec::with_capacity(m);
    for entry in &file.states {
        let profile = game.profile_from_names(&entry.profile)?;
        states.push((entry.id.clone(), profile));
    }

    for key in file.beliefs.keys() {
        match key.parse::<usize>() {
            Ok(p) if (1..=n).contains(&p) => {}
            _ => return Err(StructureError::UnknownBeliefPlayer { key: key.clone() }),
        }
    }
    let mut beliefs = Vec::with_capacity(n);
    for player in 1..=n {
        let table = file
            .beliefs
            .get(&player.to_string())
            .ok_or(StructureError::MissingBeliefPlayer { player })?;
        for id in table.keys() {
            if !index.contains_key(id.as_str()) {
                return Err(StructureError::UnknownStateId(id.clone()));
            }
        }
        let mut per_state = Vec::with_capacity(m);
        for (w, entry) in file.states.iter().enumerate() {
            let dist = table
                .get(&entry.id)
                .ok_or_else(|| StructureError::MissingBelief {
                    player,
                    state: entry.id.clone(),
                })?;
            let mut mass = vec![Rational::zero(); m];
            for (target_id, p) in dist {
                let &target = index
                    .get(target_id.as_str())
                    .ok_or_else(|| StructureError::UnknownStateId(target_id.clone()))?;
                if p.is_negative() {
                    return Err(StructureError::NegativeMass {
                        player,
                        state: entry.id.clone(),
                        target: target_id.clone(),
                    });
                }
                mass[target] = p.clone();
            }
            let total: Rational = mass.iter().cloned().sum();
            if total != Rational::one() {
                return Err(StructureError::BadMass {
                    player,
                    state: entry.id.clone(),
                    total,
                });
            }
            per_state.push(BeliefDistribution { mass });
            let _ = w;
        }
        beliefs.push(per_state);
    }

    // Closest map: explicit entries, identity defaults for own strategies.
    let mut closest: Vec<Vec<Vec<Option<StateId>>>> = (0..m)
        .map(|_| (0..n).map(|p| vec![None; game.strategy_count(p)]).collect())
        .collect();
    for entry in &file.closest {
        let &state = index
            .get(entry.state.as_str())
            .ok_or_else(|| StructureError::UnknownStateId(entry.state.clone()))?;
        if !(1..=n).contains(&entry.player) {
            return Err(StructureError::Game(GameError::UnknownPlayer {
                player: entry.player,
                count: n,
            }));
        }
        let player = entry.player - 1;
        let strategy = game.strategy_index(player, &entry.strategy)?;
        let &target = index
            .get(entry.to.as_str())
            .ok_or_else(|| StructureError::UnknownStateId(entry.to.clone()))?;
        let slot = &mut closest[state][player][strategy];
        if slot.is_some() {
            return Err(StructureError::DuplicateClosest {
                state: entry.state.clone(),
                player: entry.player,
                strategy: entry.strategy.clone(),
            });
        }
        *slot = Some(target);
    }
    let mut resolved: Vec<Vec<Vec<StateId>>> = Vec::with_capacity(m);
    for (w, per_player) in closest.into_iter().enumerate() {
        let own_profile = &states[w].1;
        let mut rows = Vec::with_capacity(n);
        for (player, row) in per_player.into_iter().enumerate() {
            let mut filled = Vec::with_capacity(row.len());
            for (strategy, slot) in row.into_iter().enumerate() {
                let target = match slot {
                    Some(t) => t,
                    None if strategy == own_profile[player] => w,
                    None => {
                        return Err(StructureError::MissingClosest {
                            state: states[w].0.clone(),
                            player: player + 1,
                            strategy: game.strategy_name(player, strategy).to_owned(),
                        })
                    }
                };
                // Closest-state conditions are enforced at parse time so a
                // document cannot describe an incoherent switch.
                if states[target].1[player] != strategy {
                    return Err(StructureError::ClosestWrongStrategy {
                        state: states[w].0.clone(),
                        player: player + 1,
                        strategy: game.strategy_name(player, strategy).to_owned(),
                        to: states[target].0.clone(),
                    });
                }
                if strategy == own_profile[player] && target != w {
                    return Err(StructureError::ClosestNotIdentity {
                        state: states[w].0.clone(),
                        player: player + 1,
                        to: states[target].0.clone(),
                    });
                }
                filled.push(target);
            }
            rows.push(filled);
        }
        resolved.push(rows);
    }

    CounterfactualStructure::new(game, states, beliefs, resolved)
}

/// One-shot parse. Pass the game when the document references an external
/// file (or embeds nothing).
pub fn parse_structure(
    text: &str,
    game: Option<Game>,
) -> Result<CounterfactualStructure, StructureError> {
    StructureDoc::parse(text)?.instantiate(game)
}

/// Canonical JSON: the game inline, states in order, beliefs keyed by player
/// then state id, closest entries sorted by (state id, player, strategy
/// name) with identity entries omitted.
pub fn serialize_structure(structure: &CounterfactualStructure) -> String {
    let game = structure.game();
    let game_value: serde_json::Value =
        serde_json::from_str(&serialize_game(game)).expect("canonical game JSON parses");
    let states: Vec<StateEntry> = structure
        .states()
        .map(|w| StateEntry {
            id: structure.state_id(w).to_owned(),
            profile: game.profile_names(structure.profile(w)),
        })
        .collect();
    let mut beliefs: BTreeMap<String, BTreeMap<String, BTreeMap<String, Rational>>> =
        BTreeMap::new();
    for player in game.players() {
        let mut per_state = BTreeMap::new();
        for w in structure.states() {
            let dist = structure.belief(player, w);
            let entries: BTreeMap<String, Rational> = dist
                .support()
                .map(|t| (structure.state_id(t).to_owned(), dist.prob(t).clone()))
                .collect();
            per_state.insert(structure.state_id(w).to_owned(), entries);
        }
        beliefs.insert((player + 1).to_string(), per_state);
    }
    let mut closest: Vec<ClosestEntry> = Vec::new();
    for w in structure.states() {
        for player in game.players() {
            for strategy in 0..game.strategy_count(player) {
                if strategy == structure.strategy(w, player) {
                    continue;
                }
                closest.push(ClosestEntry {
                    state: structure.state_id(w).to_owned(),
                    player: player + 1,
                    strategy: game.strategy_name(player, strategy).to_owned(),
                    to: structure.state_id(structure.closest_state(w, player, strategy)).to_owned(),
                });
            }
        }
    }
    closest.sort_by(|a, b| {
        (&a.state, a.player, &a.strategy).cmp(&(&b.state, b.player, &b.strategy))
    });
    let file = StructureFile { game: game_value, states, beliefs, closest };
    serde_json::to_string_pretty(&file).expect("structure serialization cannot fail")
}
