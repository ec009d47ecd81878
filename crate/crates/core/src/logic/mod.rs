//! Epistemic formulas over counterfactual structures, and their model
//! checker.
//!
//! Two evaluation modes share one formula language. In counterfactual mode a
//! player is rational (`RAT_i`) when no switch, judged under the switched
//! belief, beats their actual strategy judged under the current belief. In
//! probability mode rationality is classical best response to the belief
//! projected onto opponent profiles, and the switch-aware operators (`B*`,
//! `CB*`, `SRAT`, `CCBR`) are rejected.
//!
//! Belief operators use exact mass-1 semantics, which over rational-valued
//! distributions is support inclusion. Common-belief operators are computed
//! by two independent routes (iterated everyone-believes and reachability
//! over belief supports) and the routes are asserted to agree on every call.

mod parser;

pub use parser::{parse_formula, ParseError};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{remove_strategy, Game, PlayerId, StrategyId};
use crate::rational::Rational;
use crate::structures::{CounterfactualStructure, StateId};

/// Formula tree. Player indices are 0-based here and 1-based in the concrete
/// syntax.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Formula {
    True,
    /// The player plays this strategy (by name).
    Play(PlayerId, String),
    /// One player is rational.
    Rat(PlayerId),
    /// Every player is rational.
    RatAll,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// `B_i`: full belief under the current belief.
    Believes(PlayerId, Box<Formula>),
    /// `B*_i`: full belief under every switched belief.
    CfBelieves(PlayerId, Box<Formula>),
    /// `CB`: everybody believes it, believes that everybody believes it, ...
    CommonBelief(Box<Formula>),
    /// `CB*`: the same tower built from switched beliefs.
    CfCommonBelief(Box<Formula>),
    /// `SRAT_i^k`: level-k strong rationality (switch-aware belief in the
    /// others' previous level).
    Srat(PlayerId, u32),
    /// `WRAT_i^k`: level-k weak rationality (current-belief version).
    Wrat(PlayerId, u32),
    /// All players strongly rational at every level.
    Ccbr,
}

/// `a -> b` encoded as `!(a & !b)`.
pub fn implies(premise: Formula, conclusion: Formula) -> Formula {
    Formula::Not(Box::new(Formula::And(
        Box::new(premise),
        Box::new(Formula::Not(Box::new(conclusion))),
    )))
}

/// Wraps conjunctions in parentheses where an operand needs them.
struct Operand<'a>(&'a Formula);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if matches!(self.0, Formula::And(..)) {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::Play(i, name) => write!(f, "play_{}({})", i + 1, name),
            Formula::Rat(i) => write!(f, "RAT_{}", i + 1),
            Formula::RatAll => write!(f, "RAT"),
            Formula::Not(g) => write!(f, "!{}", Operand(g)),
            // Left-associative, so the left operand never needs parentheses.
            Formula::And(l, r) => write!(f, "{} & {}", l, Operand(r)),
            Formula::Believes(i, g) => write!(f, "B_{} {}", i + 1, Operand(g)),
            Formula::CfBelieves(i, g) => write!(f, "B*_{} {}", i + 1, Operand(g)),
            Formula::CommonBelief(g) => write!(f, "CB {}", Operand(g)),
            Formula::CfCommonBelief(g) => write!(f, "CB* {}", Operand(g)),
            Formula::Srat(i, k) => write!(f, "SRAT_{}^{}", i + 1, k),
            Formula::Wrat(i, k) => write!(f, "WRAT_{}^{}", i + 1, k),
            Formula::Ccbr => write!(f, "CCBR"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("formula mentions player {player}, but the game has {count} players")]
    UnknownPlayer { player: usize, count: usize },
    #[error("player {player} has no strategy named {name:?}")]
    UnknownStrategy { player: usize, name: String },
    #[error("{construct} is only meaningful in counterfactual mode")]
    ModeViolation { construct: String },
    #[error("unknown evaluation mode {0:?}; use \"counterfactual\" or \"probability\"")]
    UnknownMode(String),
}

impl Formula {
    /// Checks player indices and strategy names against a game.
    pub fn validate_for(&self, game: &Game) -> Result<(), LogicError> {
        let check_player = |i: PlayerId| {
            if i < game.player_count() {
                Ok(())
            } else {
                Err(LogicError::UnknownPlayer { player: i + 1, count: game.player_count() })
            }
        };
        match self {
            Formula::True | Formula::RatAll | Formula::Ccbr => Ok(()),
            Formula::Rat(i) | Formula::Srat(i, _) | Formula::Wrat(i, _) => check_player(*i),
            Formula::Play(i, name) => {
                check_player(*i)?;
                game.strategy_index(*i, name).map(|_| ()).map_err(|_| {
                    LogicError::UnknownStrategy { player: *i + 1, name: name.clone() }
                })
            }
            Formula::Believes(i, g) | Formula::CfBelieves(i, g) => {
                check_player(*i)?;
                g.validate_for(game)
            }
            Formula::Not(g) | Formula::CommonBelief(g) | Formula::CfCommonBelief(g) => {
                g.validate_for(game)
            }
            Formula::And(l, r) => {
                l.validate_for(game)?;
                r.validate_for(game)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Counterfactual,
    Probability,
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalMode::Counterfactual => write!(f, "counterfactual"),
            EvalMode::Probability => write!(f, "probability"),
        }
    }
}

impl FromStr for EvalMode {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "counterfactual" => Ok(EvalMode::Counterfactual),
            "probability" => Ok(EvalMode::Probability),
            other => Err(LogicError::UnknownMode(other.to_owned())),
        }
    }
}

fn mode_check(formula: &Formula, mode: EvalMode) -> Result<(), LogicError> {
    if mode == EvalMode::Counterfactual {
        return Ok(());
    }
    match formula {
        Formula::CfBelieves(i, _) => {
            Err(LogicError::ModeViolation { construct: format!("B*_{}", i + 1) })
        }
        Formula::CfCommonBelief(_) => {
            Err(LogicError::ModeViolation { construct: "CB*".to_owned() })
        }
        Formula::Srat(i, k) => {
            Err(LogicError::ModeViolation { construct: format!("SRAT_{}^{}", i + 1, k) })
        }
        Formula::Ccbr => Err(LogicError::ModeViolation { construct: "CCBR".to_owned() }),
        Formula::Not(g) | Formula::Believes(_, g) | Formula::CommonBelief(g) => {
            mode_check(g, mode)
        }
        Formula::And(l, r) => {
            mode_check(l, mode)?;
            mode_check(r, mode)
        }
        Formula::True | Formula::Play(..) | Formula::Rat(_) | Formula::RatAll
        | Formula::Wrat(..) => Ok(()),
    }
}

// --- rationality -----------------------------------------------------------

/// Expected utility of keeping the actual strategy, under the current
/// belief.
fn keep_value(m: &CounterfactualStructure, state: StateId, player: PlayerId) -> Rational {
    let dist = m.belief(player, state);
    let own = m.strategy(state, player);
    dist.support()
        .map(|w| {
            dist.prob(w) * m.game().utility_vs(player, own, &remove_strategy(m.profile(w), player))
        })
        .sum()
}

/// Expected utility of `strategy`, under the belief after switching to it.
fn switch_value(
    m: &CounterfactualStructure,
    state: StateId,
    player: PlayerId,
    strategy: StrategyId,
) -> Rational {
    let dist = m.counterfactual_belief(state, player, strategy);
    dist.support()
        .map(|w| {
            dist.prob(w)
                * m.game().utility_vs(player, strategy, &remove_strategy(m.profile(w), player))
        })
        .sum()
}

pub fn rat_holds(
    m: &CounterfactualStructure,
    state: StateId,
    player: PlayerId,
    mode: EvalMode,
) -> bool {
    match mode {
        EvalMode::Counterfactual => {
            let keep = keep_value(m, state, player);
            (0..m.game().strategy_count(player))
                .all(|strategy| switch_value(m, state, player, strategy) <= keep)
        }
        EvalMode::Probability => {
            let belief = m.induced_opponent_belief(state, player);
            let keep = m.game().expected_utility(player, m.strategy(state, player), &belief);
            (0..m.game().strategy_count(player))
                .all(|strategy| m.game().expected_utility(player, strategy, &belief) <= keep)
        }
    }
}

pub fn rat_states(
    m: &CounterfactualStructure,
    player: PlayerId,
    mode: EvalMode,
) -> BTreeSet<StateId> {
    m.states().filter(|&w| rat_holds(m, w, player, mode)).collect()
}

/// The switch value can be computed two ways: push the belief forward and
/// read payoffs at the image states, or stay on the original support and
/// read payoffs at each state's switch target. Both are evaluated for every
/// (state, player, strategy) triple; returns whether they always agree.
pub fn rat_equivalence_check(m: &CounterfactualStructure) -> bool {
    m.states().all(|state| {
        m.game().players().all(|player| {
            (0..m.game().strategy_count(player)).all(|strategy| {
                let pushed = switch_value(m, state, player, strategy);
                let dist = m.belief(player, state);
                let relocated: Rational = dist
                    .support()
                    .map(|w| {
                        let target = m.closest_state(w, player, strategy);
                        dist.prob(w)
                            * m.game().utility_vs(
                                player,
                                strategy,
                                &remove_strategy(m.profile(target), player),
                            )
                    })
                    .sum();
                pushed == relocated
            })
        })
    })
}

// --- belief operators ------------------------------------------------------

fn intersect(a: &BTreeSet<StateId>, b: &BTreeSet<StateId>) -> BTreeSet<StateId> {
    a.intersection(b).copied().collect()
}

/// `[[B_player target]]`: the belief's support lies inside `target`.
pub fn believes_states(
    m: &CounterfactualStructure,
    player: PlayerId,
    target: &BTreeSet<StateId>,
) -> BTreeSet<StateId> {
    m.states()
        .filter(|&w| m.belief(player, w).support().all(|t| target.contains(&t)))
        .collect()
}

/// `[[B*_player target]]`: every switched belief's support lies inside
/// `target`. The switched support is the image of the current support under
/// the closest-state map.
pub fn cf_believes_states(
    m: &CounterfactualStructure,
    player: PlayerId,
    target: &BTreeSet<StateId>,
) -> BTreeSet<StateId> {
    m.states()
        .filter(|&w| {
            (0..m.game().strategy_count(player)).all(|strategy| {
                m.belief(player, w)
                    .support()
                    .all(|t| target.contains(&m.closest_state(t, player, strategy)))
            })
        })
        .collect()
}

/// Everyone-believes: the conjunction over players.
fn everyone_believes(m: &CounterfactualStructure, target: &BTreeSet<StateId>) -> BTreeSet<StateId> {
    m.game()
        .players()
        .map(|i| believes_states(m, i, target))
        .reduce(|a, b| intersect(&a, &b))
        .expect("games have players")
}

fn cf_everyone_believes(
    m: &CounterfactualStructure,
    target: &BTreeSet<StateId>,
) -> BTreeSet<StateId> {
    m.game()
        .players()
        .map(|i| cf_believes_states(m, i, target))
        .reduce(|a, b| intersect(&a, &b))
        .expect("games have players")
}

/// Computes the common-belief set twice and insists the answers match:
/// once by iterating `Y_1 = E(target)`, `Y_{k+1} = Y_1 ∩ E(Y_k)` to its
/// fixpoint (sound because mass-1 belief distributes over intersections),
/// and once as the states whose forward closure under `succ` stays inside
/// `target`.
fn common_belief_dual(
    m: &CounterfactualStructure,
    target: &BTreeSet<StateId>,
    succ: &[BTreeSet<StateId>],
    everybody: impl Fn(&BTreeSet<StateId>) -> BTreeSet<StateId>,
) -> BTreeSet<StateId> {
    let first = everybody(target);
    let mut fix = first.clone();
    loop {
        let refined = intersect(&first, &everybody(&fix));
        if refined == fix {
            break;
        }
        fix = refined;
    }

    let mut reach_ok = BTreeSet::new();
    for w in m.states() {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<StateId> = succ[w].iter().copied().collect();
        let mut ok = true;
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            if !target.contains(&v) {
                ok = false;
                break;
            }
            stack.extend(succ[v].iter().copied());
        }
        if ok {
            reach_ok.insert(w);
        }
    }

    assert_eq!(fix, reach_ok, "common-belief computations disagree");
    fix
}

pub fn common_belief_states(
    m: &CounterfactualStructure,
    target: &BTreeSet<StateId>,
) -> BTreeSet<StateId> {
    let succ: Vec<BTreeSet<StateId>> = m
        .states()
        .map(|w| m.game().players().flat_map(|i| m.belief(i, w).support()).collect())
        .collect();
    common_belief_dual(m, target, &succ, |set| everyone_believes(m, set))
}

pub fn cf_common_belief_states(
    m: &CounterfactualStructure,
    target: &BTreeSet<StateId>,
) -> BTreeSet<StateId> {
    let succ: Vec<BTreeSet<StateId>> = m
        .states()
        .map(|w| {
            m.game()
                .players()
                .flat_map(|i| {
                    m.belief(i, w).support().flat_map(move |t| {
                        (0..m.game().strategy_count(i)).map(move |s| m.closest_state(t, i, s))
                    })
                })
                .collect()
        })
        .collect();
    common_belief_dual(m, target, &succ, |set| cf_everyone_believes(m, set))
}

// --- rationality towers ----------------------------------------------------

#[derive(Clone, Copy)]
struct TowerRule {
    /// Condition the belief requirement on every switched belief rather than
    /// the current one.
    switch_aware: bool,
    /// Require belief in every player's previous level, not only the other
    /// players'. Kept as a consistency variant; provably equivalent for the
    /// current-belief tower.
    include_self: bool,
}

/// Levels of the per-player rationality tower, level 0 being all states.
/// Stops once one step leaves every player's set unchanged; when `k_max` is
/// given, levels are padded or truncated so that exactly `k_max + 1` levels
/// return.
fn build_tower(
    m: &CounterfactualStructure,
    mode: EvalMode,
    rule: TowerRule,
    k_max: Option<usize>,
) -> Vec<Vec<BTreeSet<StateId>>> {
    let n = m.game().player_count();
    let all: BTreeSet<StateId> = m.states().collect();
    let rat: Vec<BTreeSet<StateId>> =
        m.game().players().map(|i| rat_states(m, i, mode)).collect();
    let mut levels = vec![vec![all; n]];
    loop {
        if let Some(k) = k_max {
            if levels.len() > k {
                break;
            }
        }
        let prev = levels.last().expect("seeded with level 0");
        let next: Vec<BTreeSet<StateId>> = (0..n)
            .map(|i| {
                let target = (0..n)
                    .filter(|&j| rule.include_self || j != i)
                    .map(|j| prev[j].clone())
                    .reduce(|a, b| intersect(&a, &b))
                    .unwrap_or_else(|| (0..m.state_count()).collect());
                rat[i]
                    .iter()
                    .copied()
                    .filter(|&w| {
                        if rule.switch_aware {
                            (0..m.game().strategy_count(i)).all(|s| {
                                m.belief(i, w)
                                    .support()
                                    .all(|t| target.contains(&m.closest_state(t, i, s)))
                            })
                        } else {
                            m.belief(i, w).support().all(|t| target.contains(&t))
                        }
                    })
                    .collect()
            })
            .collect();
        let flat = next == *prev;
        levels.push(next);
        if flat {
            break;
        }
        assert!(
            levels.len() <= n * m.state_count() + 2,
            "rationality tower failed to stabilize"
        );
    }
    if let Some(k) = k_max {
        while levels.len() <= k {
            let last = levels.last().expect("nonempty").clone();
            levels.push(last);
        }
    }
    levels
}

const SRAT_RULE: TowerRule = TowerRule { switch_aware: true, include_self: false };
const WRAT_RULE: TowerRule = TowerRule { switch_aware: false, include_self: false };

/// `[k][player]` sets for `SRAT_player^k`, `k = 0 ..= k_max`.
pub fn srat_sets(m: &CounterfactualStructure, k_max: usize) -> Vec<Vec<BTreeSet<StateId>>> {
    build_tower(m, EvalMode::Counterfactual, SRAT_RULE, Some(k_max))
}

/// `[k][player]` sets for `WRAT_player^k`, `k = 0 ..= k_max`.
pub fn wrat_sets(
    m: &CounterfactualStructure,
    k_max: usize,
    mode: EvalMode,
) -> Vec<Vec<BTreeSet<StateId>>> {
    build_tower(m, mode, WRAT_RULE, Some(k_max))
}

/// Variant of [`wrat_sets`] that also requires belief in one's own previous
/// level; agreement with [`wrat_sets`] is a checkable identity.
pub fn wrat_sets_including_self(
    m: &CounterfactualStructure,
    k_max: usize,
    mode: EvalMode,
) -> Vec<Vec<BTreeSet<StateId>>> {
    build_tower(m, mode, TowerRule { switch_aware: false, include_self: true }, Some(k_max))
}

/// Joint form `W_0 = Ω`, `W_{k+1} = [[RAT]] ∩ [[everyone believes W_k]]`;
/// level k equals the intersection over players of [`wrat_sets`] level k.
pub fn wrat_joint_sets(
    m: &CounterfactualStructure,
    k_max: usize,
    mode: EvalMode,
) -> Vec<BTreeSet<StateId>> {
    let rat_all = m
        .game()
        .players()
        .map(|i| rat_states(m, i, mode))
        .reduce(|a, b| intersect(&a, &b))
        .expect("games have players");
    let mut levels: Vec<BTreeSet<StateId>> = vec![m.states().collect()];
    for _ in 0..k_max {
        let prev = levels.last().expect("seeded");
        levels.push(intersect(&rat_all, &everyone_believes(m, prev)));
    }
    levels
}

/// Per-player limits of the switch-aware tower.
pub fn srat_fixpoint(m: &CounterfactualStructure) -> Vec<BTreeSet<StateId>> {
    build_tower(m, EvalMode::Counterfactual, SRAT_RULE, None)
        .pop()
        .expect("towers have at least level 0")
}

/// States where every player sits in their switch-aware tower limit.
pub fn ccbr_states(m: &CounterfactualStructure) -> BTreeSet<StateId> {
    srat_fixpoint(m).iter().fold(m.states().collect(), |acc, set| intersect(&acc, set))
}

// --- the evaluator ---------------------------------------------------------

struct Evaluator<'a> {
    m: &'a CounterfactualStructure,
    mode: EvalMode,
    all: BTreeSet<StateId>,
    cache: std::collections::BTreeMap<Formula, BTreeSet<StateId>>,
    srat_tower: Option<Vec<Vec<BTreeSet<StateId>>>>,
    wrat_tower: Option<Vec<Vec<BTreeSet<StateId>>>>,
}

impl<'a> Evaluator<'a> {
    fn new(m: &'a CounterfactualStructure, mode: EvalMode) -> Self {
        Evaluator {
            m,
            mode,
            all: m.states().collect(),
            cache: Default::default(),
            srat_tower: None,
            wrat_tower: None,
        }
    }

    fn srat_level(&mut self, k: u32, player: PlayerId) -> BTreeSet<StateId> {
        if self.srat_tower.is_none() {
            self.srat_tower =
                Some(build_tower(self.m, EvalMode::Counterfactual, SRAT_RULE, None));
        }
        let tower = self.srat_tower.as_ref().expect("just built");
        // Stabilized, so deeper levels repeat the last one.
        let idx = (k as usize).min(tower.len() - 1);
        tower[idx][player].clone()
    }

    fn wrat_level(&mut self, k: u32, player: PlayerId) -> BTreeSet<StateId> {
        if self.wrat_tower.is_none() {
            self.wrat_tower = Some(build_tower(self.m, self.mode, WRAT_RULE, None));
        }
        let tower = self.wrat_tower.as_ref().expect("just built");
        let idx = (k as usize).min(tower.len() - 1);
        tower[idx][player].clone()
    }

    fn eval(&mut self, formula: &Formula) -> BTreeSet<StateId> {
        if let Some(hit) = self.cache.get(formula) {
            return hit.clone();
        }
        let out = match formula {
            Formula::True => self.all.clone(),
            Formula::Play(i, name) => {
                let strategy =
                    self.m.game().strategy_index(*i, name).expect("validated before eval");
                self.m.states().filter(|&w| self.m.strategy(w, *i) == strategy).collect()
            }
            Formula::Rat(i) => rat_states(self.m, *i, self.mode),
            Formula::RatAll => {
                let mut out = self.all.clone();
                for i in self.m.game().players() {
                    out = intersect(&out, &self.eval(&Formula::Rat(i)));
                }
                out
            }
            Formula::Not(g) => {
                let sub = self.eval(g);
                self.all.iter().copied().filter(|w| !sub.contains(w)).collect()
            }
            Formula::And(l, r) => intersect(&self.eval(l), &self.eval(r)),
            Formula::Believes(i, g) => {
                let sub = self.eval(g);
                believes_states(self.m, *i, &sub)
            }
            Formula::CfBelieves(i, g) => {
                let sub = self.eval(g);
                cf_believes_states(self.m, *i, &sub)
            }
            Formula::CommonBelief(g) => {
                let sub = self.eval(g);
                common_belief_states(self.m, &sub)
            }
            Formula::CfCommonBelief(g) => {
                let sub = self.eval(g);
                cf_common_belief_states(self.m, &sub)
            }
            Formula::Srat(i, k) => self.srat_level(*k, *i),
            Formula::Wrat(i, k) => self.wrat_level(*k, *i),
            Formula::Ccbr => ccbr_states(self.m),
        };
        self.cache.insert(formula.clone(), out.clone());
        out
    }
}

/// The set of states satisfying `formula`, after validating it against the
/// structure's game and the evaluation mode.
pub fn satisfying_states(
    m: &CounterfactualStructure,
    formula: &Formula,
    mode: EvalMode,
) -> Result<BTreeSet<StateId>, LogicError> {
    formula.validate_for(m.game())?;
    mode_check(formula, mode)?;
    Ok(Evaluator::new(m, mode).eval(formula))
}

pub fn holds_at(
    m: &CounterfactualStructure,
    state: StateId,
    formula: &Formula,
    mode: EvalMode,
) -> Result<bool, LogicError> {
    assert!(state < m.state_count());
    Ok(satisfying_states(m, formula, mode)?.contains(&state))
}

// --- schema checks ----------------------------------------------------------

/// Instantiates a bounded family of schemas expected to hold at every state
/// of an appropriate structure and evaluates each one:
///
/// * switched-belief introspection: `B*_i phi -> B_i B*_i phi`, with `phi`
///   drawn from a depth-bounded pool of atoms, negated atoms, and single
///   belief operators;
/// * tower monotonicity: `SRAT_i^{k+1} -> SRAT_i^k` for small k.
///
/// Returns each instance with whether it held at every state.
pub fn validity_spotchecks(m: &CounterfactualStructure) -> Vec<(Formula, bool)> {
    let game = m.game();
    let mut atoms = vec![Formula::True, Formula::RatAll];
    for j in game.players() {
        atoms.push(Formula::Rat(j));
        atoms.push(Formula::Play(j, game.strategy_name(j, 0).to_owned()));
    }
    let mut pool = atoms.clone();
    pool.extend(atoms.iter().cloned().map(|a| Formula::Not(Box::new(a))));
    for j in game.players() {
        pool.push(Formula::Believes(j, Box::new(Formula::RatAll)));
        pool.push(Formula::CfBelieves(j, Box::new(Formula::RatAll)));
    }

    let all: BTreeSet<StateId> = m.states().collect();
    let holds_everywhere = |instance: Formula| {
        let ok = satisfying_states(m, &instance, EvalMode::Counterfactual)
            .expect("instances are built for this game")
            == all;
        (instance, ok)
    };

    let mut out = Vec::new();
    for phi in &pool {
        for i in game.players() {
            let premise = Formula::CfBelieves(i, Box::new(phi.clone()));
            let conclusion = Formula::Believes(i, Box::new(premise.clone()));
            out.push(holds_everywhere(implies(premise, conclusion)));
        }
    }
    for i in game.players() {
        for k in 0..4 {
            out.push(holds_everywhere(implies(Formula::Srat(i, k + 1), Formula::Srat(i, k))));
        }
    }
    out
}
