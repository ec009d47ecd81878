//! Finite normal-form games with exact rational payoffs.
//!
//! Players are indexed 0-based throughout the API. File formats, formulas,
//! and CLI output use 1-based player numbers; the conversion happens at the
//! serialization boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

pub type PlayerId = usize;
pub type StrategyId = usize;

/// One strategy per player, in player order.
pub type Profile = Vec<StrategyId>;

/// One strategy per *opponent*, in original player order with one player
/// removed.
pub type OpponentProfile = Vec<StrategyId>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("invalid game JSON: {0}")]
    Syntax(String),
    #[error("a game needs at least two players, got {0}")]
    PlayerCount(usize),
    #[error("player {player} has no strategies")]
    EmptyStrategyList { player: usize },
    #[error("player {player} lists strategy {name:?} twice")]
    DuplicateStrategy { player: usize, name: String },
    #[error("player {player} has no strategy named {name:?}")]
    UnknownStrategy { player: usize, name: String },
    #[error("profile {profile:?} has {got} entries, expected {expected}")]
    ProfileLength { profile: Vec<String>, expected: usize, got: usize },
    #[error("payoff table lists profile {profile:?} twice")]
    DuplicateProfile { profile: Vec<String> },
    #[error("payoff table is missing profile {profile:?}")]
    MissingProfile { profile: Vec<String> },
    #[error("profile {profile:?} has {got} utilities, expected {expected}")]
    UtilityLength { profile: Vec<String>, expected: usize, got: usize },
    #[error("no player {player}; the game has {count} players")]
    UnknownPlayer { player: usize, count: usize },
    #[error("ladder games need at least one rung, got {0}")]
    LadderTooShort(usize),
    #[error("ladder reward must be positive, got {0}")]
    LadderReward(Rational),
    #[error("belief {reason}")]
    BadBelief { reason: String },
}

/// A finite normal-form game: per-player strategy lists and a complete
/// payoff table.
#[derive(Clone, PartialEq, Eq)]
pub struct Game {
    strategies: Vec<Vec<String>>,
    /// Flat mixed-radix profile index -> per-player utility vector.
    payoffs: Vec<Vec<Rational>>,
    /// Rank of each utility in the sorted set of all payoff values.
    /// Comparing ranks is equivalent to comparing the rationals and avoids
    /// bignum work in deletion loops.
    ranks: Vec<Vec<usize>>,
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Game")
            .field("strategies", &self.strategies)
            .finish_non_exhaustive()
    }
}

impl Game {
    /// Builds a game from strategy lists and a payoff function over index
    /// profiles.
    pub fn new(
        strategies: Vec<Vec<String>>,
        mut payoff: impl FnMut(&[StrategyId]) -> Vec<Rational>,
    ) -> Result<Self, GameError> {
        if strategies.len() < 2 {
            return Err(GameError::PlayerCount(strategies.len()));
        }
        for (player, names) in strategies.iter().enumerate() {
            if names.is_empty() {
                return Err(GameError::EmptyStrategyList { player });
            }
            let mut seen = BTreeSet::new();
            for name in names {
                if !seen.insert(name) {
                    return Err(GameError::DuplicateStrategy { player, name: name.clone() });
                }
            }
        }
        let n = strategies.len();
        let total: usize = strategies.iter().map(Vec::len).product();
        let mut payoffs = Vec::with_capacity(total);
        let mut game = Game { strategies, payoffs: Vec::new(), ranks: Vec::new() };
        for profile in game.profiles() {
            let u = payoff(&profile);
            assert_eq!(u.len(), n, "payoff function returned wrong arity");
            payoffs.push(u);
        }
        game.payoffs = payoffs;
        game.ranks = Self::rank_table(&game.payoffs);
        Ok(game)
    }

    fn rank_table(payoffs: &[Vec<Rational>]) -> Vec<Vec<usize>> {
        let mut values: Vec<&Rational> = payoffs.iter().flatten().collect();
        values.sort();
        values.dedup();
        payoffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|u| values.binary_search(&u).expect("value present"))
                    .collect()
            })
            .collect()
    }

    pub fn player_count(&self) -> usize {
        self.strategies.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        0..self.player_count()
    }

    pub fn strategy_count(&self, player: PlayerId) -> usize {
        self.strategies[player].len()
    }

    pub fn strategy_names(&self, player: PlayerId) -> &[String] {
        &self.strategies[player]
    }

    pub fn strategy_name(&self, player: PlayerId, strategy: StrategyId) -> &str {
        &self.strategies[player][strategy]
    }

    pub fn strategy_index(&self, player: PlayerId, name: &str) -> Result<StrategyId, GameError> {
        if player >= self.player_count() {
            return Err(GameError::UnknownPlayer { player: player + 1, count: self.player_count() });
        }
        self.strategies[player]
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| GameError::UnknownStrategy { player, name: name.to_owned() })
    }

    fn flat_index(&self, profile: &[StrategyId]) -> usize {
        debug_assert_eq!(profile.len(), self.player_count());
        let mut idx = 0;
        for (player, &s) in profile.iter().enumerate() {
            debug_assert!(s < self.strategy_count(player));
            idx = idx * self.strategy_count(player) + s;
        }
        idx
    }

    /// Utility of `player` at a full strategy profile.
    pub fn utility(&self, profile: &[StrategyId], player: PlayerId) -> &Rational {
        &self.payoffs[self.flat_index(profile)][player]
    }

    /// Utility of `player` playing `strategy` against an opponent profile.
    pub fn utility_vs(
        &self,
        player: PlayerId,
        strategy: StrategyId,
        opponents: &[StrategyId],
    ) -> &Rational {
        let profile = insert_strategy(opponents, player, strategy);
        self.utility(&profile, player)
    }

    /// Order rank of `utility(profile, player)` among all payoff values.
    pub fn utility_rank(&self, profile: &[StrategyId], player: PlayerId) -> usize {
        self.ranks[self.flat_index(profile)][player]
    }

    pub fn utility_rank_vs(
        &self,
        player: PlayerId,
        strategy: StrategyId,
        opponents: &[StrategyId],
    ) -> usize {
        let profile = insert_strategy(opponents, player, strategy);
        self.utility_rank(&profile, player)
    }

    /// All full profiles, in mixed-radix order (last player varies fastest).
    pub fn profiles(&self) -> ProfileIter {
        ProfileIter::new(self.strategies.iter().map(Vec::len).collect())
    }

    /// All opponent profiles for `player`, original player order minus that
    /// player.
    pub fn opponent_profiles(&self, player: PlayerId) -> ProfileIter {
        ProfileIter::new(
            self.strategies
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != player)
                .map(|(_, s)| s.len())
                .collect(),
        )
    }

    pub fn profile_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Profile, GameError> {
        if names.len() != self.player_count() {
            return Err(GameError::ProfileLength {
                profile: names.iter().map(|s| s.as_ref().to_owned()).collect(),
                expected: self.player_count(),
                got: names.len(),
            });
        }
        names
            .iter()
            .enumerate()
            .map(|(player, name)| self.strategy_index(player, name.as_ref()))
            .collect()
    }

    pub fn profile_names(&self, profile: &[StrategyId]) -> Vec<String> {
        profile
            .iter()
            .enumerate()
            .map(|(player, &s)| self.strategies[player][s].clone())
            .collect()
    }

    /// Expected utility of `player` playing `strategy` under a belief about
    /// the opponents.
    pub fn expected_utility(
        &self,
        player: PlayerId,
        strategy: StrategyId,
        belief: &OpponentBelief,
    ) -> Rational {
        debug_assert_eq!(belief.player, player);
        let mut total = Rational::zero();
        for (opponents, prob) in &belief.probs {
            total += prob * self.utility_vs(player, strategy, opponents);
        }
        total
    }

    /// A belief for `player` over opponent profiles. Probabilities must be
    /// nonnegative and sum to exactly 1.
    pub fn opponent_belief(
        &self,
        player: PlayerId,
        entries: Vec<(OpponentProfile, Rational)>,
    ) -> Result<OpponentBelief, GameError> {
        let mut probs = BTreeMap::new();
        let mut total = Rational::zero();
        for (opponents, prob) in entries {
            if opponents.len() != self.player_count() - 1 {
                return Err(GameError::BadBelief {
                    reason: format!(
                        "opponent profile {opponents:?} has wrong length for player {player}"
                    ),
                });
            }
            for (slot, &s) in opponents.iter().enumerate() {
                let other = if slot < player { slot } else { slot + 1 };
                if s >= self.strategy_count(other) {
                    return Err(GameError::BadBelief {
                        reason: format!("strategy index {s} out of range for player {other}"),
                    });
                }
            }
            if prob.is_negative() {
                return Err(GameError::BadBelief {
                    reason: format!("probability {prob} is negative"),
                });
            }
            total += &prob;
            if probs.insert(opponents.clone(), prob).is_some() {
                return Err(GameError::BadBelief {
                    reason: format!("opponent profile {opponents:?} listed twice"),
                });
            }
        }
        if total != Rational::one() {
            return Err(GameError::BadBelief { reason: format!("mass sums to {total}, not 1") });
        }
        Ok(OpponentBelief { player, probs })
    }
}

/// Splices `strategy` for `player` into an opponent profile, producing a full
/// profile.
pub fn insert_strategy(
    opponents: &[StrategyId],
    player: PlayerId,
    strategy: StrategyId,
) -> Profile {
    let mut profile = Vec::with_capacity(opponents.len() + 1);
    profile.extend_from_slice(&opponents[..player]);
    profile.push(strategy);
    profile.extend_from_slice(&opponents[player..]);
    profile
}

/// Drops `player`'s entry from a full profile.
pub fn remove_strategy(profile: &[StrategyId], player: PlayerId) -> OpponentProfile {
    let mut opponents = Vec::with_capacity(profile.len() - 1);
    opponents.extend_from_slice(&profile[..player]);
    opponents.extend_from_slice(&profile[player + 1..]);
    opponents
}

/// Iterator over index vectors in mixed-radix order.
pub struct ProfileIter {
    sizes: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl ProfileIter {
    fn new(sizes: Vec<usize>) -> Self {
        let current = if sizes.contains(&0) {
            None
        } else {
            Some(vec![0; sizes.len()])
        };
        ProfileIter { sizes, current }
    }
}

impl Iterator for ProfileIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.as_mut()?;
        let item = current.clone();
        let mut exhausted = true;
        for slot in (0..self.sizes.len()).rev() {
            current[slot] += 1;
            if current[slot] < self.sizes[slot] {
                exhausted = false;
                break;
            }
            current[slot] = 0;
        }
        if exhausted {
            self.current = None;
        }
        Some(item)
    }
}

/// A probability distribution over opponent profiles, from one player's
/// point of view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpponentBelief {
    player: PlayerId,
    probs: BTreeMap<OpponentProfile, Rational>,
}

impl OpponentBelief {
    pub fn player(&self) -> PlayerId {
        self.player
    }

    pub fn entries(&self) -> impl Iterator<Item = (&OpponentProfile, &Rational)> {
        self.probs.iter()
    }
}

// --- file format ---------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GameFile {
    players: Vec<Vec<String>>,
    payoffs: Vec<PayoffEntry>,
}

#[derive(Serialize, Deserialize)]
struct PayoffEntry {
    profile: Vec<String>,
    u: Vec<Rational>,
}

/// Parses a game document.
///
/// ```json
/// {
///   "players": [["C", "S"], ["C", "S"]],
///   "payoffs": [
///     {"profile": ["C", "C"], "u": ["0", "0"]},
///     ...
///   ]
/// }
/// ```
///
/// The payoff table must be complete and free of duplicates; rationals are
/// strings like `"3/4"` or `"-2"`.
pub fn parse_game(text: &str) -> Result<Game, GameError> {
    let file: GameFile =
        serde_json::from_str(text).map_err(|e| GameError::Syntax(e.to_string()))?;
    game_from_file(file)
}

fn game_from_file(file: GameFile) -> Result<Game, GameError> {
    // Validate strategy lists by building a placeholder game first.
    let zero = |_: &[StrategyId]| vec![Rational::zero(); file.players.len()];
    let skeleton = Game::new(file.players.clone(), zero)?;
    let n = skeleton.player_count();

    let mut table: BTreeMap<Profile, Vec<Rational>> = BTreeMap::new();
    for entry in file.payoffs {
        let profile = skeleton.profile_from_names(&entry.profile)?;
        if entry.u.len() != n {
            return Err(GameError::UtilityLength {
                profile: entry.profile.clone(),
                expected: n,
                got: entry.u.len(),
            });
        }
        if table.insert(profile, entry.u).is_some() {
            return Err(GameError::DuplicateProfile { profile: entry.profile });
        }
    }
    for profile in skeleton.profiles() {
        if !table.contains_key(&profile) {
            return Err(GameError::MissingProfile {
                profile: skeleton.profile_names(&profile),
            });
        }
    }
    Game::new(file.players, |profile| table[profile].clone())
}

/// Canonical serialization: payoff entries sorted lexicographically by
/// profile (strategy-list order), two-space indentation. Parsing the output
/// and re-serializing reproduces it byte for byte.
pub fn serialize_game(game: &Game) -> String {
    let payoffs = game
        .profiles()
        .map(|profile| PayoffEntry {
            profile: game.profile_names(&profile),
            u: game.payoffs[game.flat_index(&profile)].clone(),
        })
        .collect();
    let file = GameFile { players: game.strategies.clone(), payoffs };
    serde_json::to_string_pretty(&file).expect("game serialization cannot fail")
}

// --- built-in games ------------------------------------------------------

/// Two-player dilemma used throughout the crate: `C` cooperate, `S` switch.
/// Switching gains `r` for the switcher and costs the other player `p`.
pub fn translucent_pd(r: &Rational, p: &Rational) -> Game {
    let names = vec![vec!["C".to_owned(), "S".to_owned()]; 2];
    let zero = Rational::zero();
    Game::new(names, |profile| match (profile[0], profile[1]) {
        (0, 0) => vec![zero.clone(), zero.clone()],
        (0, 1) => vec![-p, r.clone()],
        (1, 0) => vec![r.clone(), -p],
        (1, 1) => vec![r - p, r - p],
        _ => unreachable!(),
    })
    .expect("fixed strategy lists are valid")
}

/// Symmetric announcement game on rungs `1..=k`: announcing below the other
/// player earns a reward `p` on top of your own announcement; announcing
/// above earns the other player the reward.
pub fn ladder(k: usize, p: &Rational) -> Result<Game, GameError> {
    if k < 1 {
        return Err(GameError::LadderTooShort(k));
    }
    if !p.is_positive() {
        return Err(GameError::LadderReward(p.clone()));
    }
    let names: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    Game::new(vec![names.clone(), names], |profile| {
        let x = Rational::from_integer(profile[0] as i64 + 1);
        let y = Rational::from_integer(profile[1] as i64 + 1);
        if x > y {
            vec![&y + p, y]
        } else if y > x {
            vec![x.clone(), &x + p]
        } else {
            vec![x.clone(), x]
        }
    })
}

/// Draws a game with 2 or 3 players, 2 to 4 strategies each (named `s1`,
/// `s2`, ...), and integer payoffs uniform in `[-9, 9]`. Deterministic per
/// seed.
pub fn random_game(seed: u64) -> Game {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let players = rng.gen_range(2..=3);
    let strategies: Vec<Vec<String>> = (0..players)
        .map(|_| {
            let count = rng.gen_range(2..=4);
            (1..=count).map(|s| format!("s{s}")).collect()
        })
        .collect();
    Game::new(strategies, |_| {
        (0..players).map(|_| Rational::from_integer(rng.gen_range(-9..=9))).collect()
    })
    .expect("generated shape is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pd() -> Game {
        translucent_pd(&r("1"), &r("5"))
    }

    #[test]
    fn translucent_pd_payoffs() {
        let g = pd();
        let u = |a: &str, b: &str, player| {
            g.utility(&g.profile_from_names(&[a, b]).unwrap(), player).clone()
        };
        assert_eq!(u("C", "C", 0), r("0"));
        assert_eq!(u("C", "C", 1), r("0"));
        assert_eq!(u("C", "S", 0), r("-5"));
        assert_eq!(u("C", "S", 1), r("1"));
        assert_eq!(u("S", "C", 0), r("1"));
        assert_eq!(u("S", "C", 1), r("-5"));
        assert_eq!(u("S", "S", 0), r("-4"));
        assert_eq!(u("S", "S", 1), r("-4"));
    }

    #[test]
    fn ladder_payoffs() {
        let g = ladder(3, &r("1/2")).unwrap();
        assert_eq!(g.strategy_names(0), ["1", "2", "3"]);
        let u = |a: &str, b: &str, player| {
            g.utility(&g.profile_from_names(&[a, b]).unwrap(), player).clone()
        };
        assert_eq!(u("2", "1", 0), r("3/2"));
        assert_eq!(u("2", "1", 1), r("1"));
        assert_eq!(u("3", "2", 0), r("5/2"));
        assert_eq!(u("1", "3", 0), r("1"));
        assert_eq!(u("1", "3", 1), r("3/2"));
        for s in ["1", "2", "3"] {
            assert_eq!(u(s, s, 0), r(s));
            assert_eq!(u(s, s, 1), r(s));
        }
    }

    #[test]
    fn ladder_edge_cases() {
        let g = ladder(1, &r("1/2")).unwrap();
        assert_eq!(g.utility(&[0, 0], 0), &r("1"));
        assert_eq!(ladder(0, &r("1/2")), Err(GameError::LadderTooShort(0)));
        assert_eq!(ladder(3, &r("0")), Err(GameError::LadderReward(r("0"))));
        assert_eq!(ladder(3, &r("-1")), Err(GameError::LadderReward(r("-1"))));
    }

    #[test]
    fn expected_utility_oracles() {
        let g = pd();
        let s = g.strategy_index(0, "S").unwrap();
        let c = g.strategy_index(0, "C").unwrap();
        // Player 0 plays S against {C: 3/4, S: 1/4}: 3/4*1 + 1/4*(-4) = -1/4.
        let belief = g
            .opponent_belief(0, vec![(vec![0], r("3/4")), (vec![1], r("1/4"))])
            .unwrap();
        assert_eq!(g.expected_utility(0, s, &belief), r("-1/4"));
        // Player 0 plays C against uniform: (0 + -5)/2 = -5/2.
        let uniform = g
            .opponent_belief(0, vec![(vec![0], r("1/2")), (vec![1], r("1/2"))])
            .unwrap();
        assert_eq!(g.expected_utility(0, c, &uniform), r("-5/2"));
    }

    #[test]
    fn belief_validation() {
        let g = pd();
        let bad_mass = g.opponent_belief(0, vec![(vec![0], r("1/2"))]);
        assert!(matches!(bad_mass, Err(GameError::BadBelief { .. })));
        let negative =
            g.opponent_belief(0, vec![(vec![0], r("3/2")), (vec![1], r("-1/2"))]);
        assert!(matches!(negative, Err(GameError::BadBelief { .. })));
        let dup = g.opponent_belief(0, vec![(vec![0], r("1/2")), (vec![0], r("1/2"))]);
        assert!(matches!(dup, Err(GameError::BadBelief { .. })));
    }

    #[test]
    fn profile_enumeration_order() {
        let g = ladder(2, &r("1")).unwrap();
        let all: Vec<_> = g.profiles().collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn opponent_profiles_skip_the_player() {
        let names = |list: &[&str]| list.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let g = Game::new(
            vec![names(&["a", "b"]), names(&["x"]), names(&["u", "v", "w"])],
            |_| vec![Rational::zero(); 3],
        )
        .unwrap();
        let opp: Vec<_> = g.opponent_profiles(1).collect();
        assert_eq!(opp.len(), 6);
        assert_eq!(opp[0], vec![0, 0]);
        assert_eq!(opp[5], vec![1, 2]);
        assert_eq!(insert_strategy(&opp[5], 1, 0), vec![1, 0, 2]);
        assert_eq!(remove_strategy(&[1, 0, 2], 1), vec![1, 2]);
    }

    #[test]
    fn utility_ranks_match_value_order() {
        let g = ladder(3, &r("1/2")).unwrap();
        for p1 in g.profiles() {
            for p2 in g.profiles() {
                for player in g.players() {
                    let by_value = g.utility(&p1, player).cmp(g.utility(&p2, player));
                    let by_rank = g.utility_rank(&p1, player).cmp(&g.utility_rank(&p2, player));
                    assert_eq!(by_value, by_rank);
                }
            }
        }
    }

    #[test]
    fn parse_serialize_round_trip() {
        let g = pd();
        let text = serialize_game(&g);
        let parsed = parse_game(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(serialize_game(&parsed), text);
    }

    #[test]
    fn canonical_output_sorts_payoff_entries() {
        let shuffled = r#"{
            "players": [["C","S"],["C","S"]],
            "payoffs": [
                {"profile": ["S","S"], "u": ["-4","-4"]},
                {"profile": ["C","S"], "u": ["-5","1"]},
                {"profile": ["S","C"], "u": ["1","-5"]},
                {"profile": ["C","C"], "u": ["0","0"]}
            ]
        }"#;
        let g = parse_game(shuffled).unwrap();
        assert_eq!(g, pd());
        let canonical = serialize_game(&g);
        let doc: serde_json::Value = serde_json::from_str(&canonical).unwrap();
        let profiles: Vec<Vec<&str>> = doc["payoffs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e["profile"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect())
            .collect();
        assert_eq!(
            profiles,
            vec![vec!["C", "C"], vec!["C", "S"], vec!["S", "C"], vec!["S", "S"]]
        );
    }

    #[test]
    fn parse_rejects_malformed_documents() {
        assert!(matches!(parse_game("{"), Err(GameError::Syntax(_))));
        assert!(matches!(
            parse_game(r#"{"players": [["C"]], "payoffs": []}"#),
            Err(GameError::PlayerCount(1))
        ));
        assert!(matches!(
            parse_game(r#"{"players": [["C","C"],["C"]], "payoffs": []}"#),
            Err(GameError::DuplicateStrategy { player: 0, .. })
        ));
        let incomplete = r#"{
            "players": [["C","S"],["C","S"]],
            "payoffs": [{"profile": ["C","C"], "u": ["0","0"]}]
        }"#;
        assert!(matches!(parse_game(incomplete), Err(GameError::MissingProfile { .. })));
        let unknown = r#"{
            "players": [["C","S"],["C","S"]],
            "payoffs": [{"profile": ["C","X"], "u": ["0","0"]}]
        }"#;
        assert!(matches!(
            parse_game(unknown),
            Err(GameError::UnknownStrategy { player: 1, .. })
        ));
        let wrong_arity = r#"{
            "players": [["C","S"],["C","S"]],
            "payoffs": [{"profile": ["C","C"], "u": ["0"]}]
        }"#;
        assert!(matches!(parse_game(wrong_arity), Err(GameError::UtilityLength { .. })));
        let bad_rational = r#"{
            "players": [["C","S"],["C","S"]],
            "payoffs": [{"profile": ["C","C"], "u": ["0.5","0"]}]
        }"#;
        assert!(matches!(parse_game(bad_rational), Err(GameError::Syntax(_))));
    }

    #[test]
    fn duplicate_profile_rejected() {
        let doc = r#"{
            "players": [["C","S"],["C","S"]],
            "payoffs": [
                {"profile": ["C","C"], "u": ["0","0"]},
                {"profile": ["C","C"], "u": ["1","1"]}
            ]
        }"#;
        assert!(matches!(parse_game(doc), Err(GameError::DuplicateProfile { .. })));
    }

    #[test]
    fn random_games_are_bounded_and_deterministic() {
        for seed in 0..30 {
            let g = random_game(seed);
            assert!((2..=3).contains(&g.player_count()));
            for p in g.players() {
                assert!((2..=4).contains(&g.strategy_count(p)));
            }
            for profile in g.profiles() {
                for p in g.players() {
                    let u = g.utility(&profile, p);
                    assert!(*u >= r("-9") && *u <= r("9"));
                }
            }
            assert_eq!(serialize_game(&g), serialize_game(&random_game(seed)));
        }
    }
}
