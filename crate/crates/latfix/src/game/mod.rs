//! Finite games with lattice strategy spaces, exact rational payoffs, and a
//! feasible set that may be a proper sublattice of the strategy product.
//!
//! Everything downstream leans on three structural invariants validated at
//! construction: the feasible set is nonempty and closed under
//! componentwise meet and join, every projection onto a player's strategy
//! lattice is surjective, and payoffs are defined on exactly the feasible
//! set. Payoffs are rationals compared exactly; there is no tolerance
//! anywhere in this module.

mod checks;
mod gen;
mod solve;

pub use checks::{check_increasing_differences, check_supermodular};
pub use gen::{gen_game, run_game_suite, GameGenConfig, GameSuiteReport};
pub use solve::{aggregate_argmax, nash_brute, nash_via_fixpoint, verify_nash_lattice, EquilibriumSet};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::doc::{GameDoc, LatticeDoc};
use crate::lattice::{FiniteLattice, SubsetView};
use crate::poset::{OrderError, Poset};
use crate::report::CheckReport;

/// Exact payoff value.
pub type Rational = num_rational::Ratio<i64>;

/// Parses a canonical rational literal: `p/q` or a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<Rational, GameError> {
    let bad = || GameError::BadRational(text.to_string());
    match text.split_once('/') {
        None => text.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
        Some((num, den)) => {
            let n: i64 = num.parse().map_err(|_| bad())?;
            let d: i64 = den.parse().map_err(|_| bad())?;
            if d <= 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical literal for a rational: `p` when the denominator is 1, else
/// `p/q` in lowest terms with a positive denominator.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("duplicate player `{0}`")]
    DuplicatePlayer(String),
    #[error("no strategy lattice for player `{0}`")]
    MissingStrategyLattice(String),
    #[error("strategy lattice listed for unknown player `{0}`")]
    UnknownPlayer(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("the feasible set is empty")]
    EmptyFeasible,
    #[error("feasible profile `{0}` does not have one strategy per player")]
    BadProfile(String),
    #[error("duplicate feasible profile `{0}`")]
    DuplicateProfile(String),
    #[error("unknown strategy `{strategy}` for player `{player}`")]
    UnknownStrategy { player: String, strategy: String },
    #[error("feasible set not closed: {bound} of `{a}` and `{b}` is `{c}`, which is not feasible")]
    FeasibleNotSublattice { a: String, b: String, c: String, bound: &'static str },
    #[error("projection onto player `{player}` misses strategy `{strategy}`")]
    ProjectionNotSurjective { player: String, strategy: String },
    #[error("payoff missing for player `{player}` at profile `{profile}`")]
    PayoffMissing { player: String, profile: String },
    #[error("payoff listed for player `{player}` at infeasible profile `{profile}`")]
    PayoffOutsideFeasible { player: String, profile: String },
    #[error("bad rational literal `{0}`")]
    BadRational(String),
    #[error("empty section: no feasible completion for player `{player}` against `{others}`")]
    EmptySection { player: String, others: String },
    #[error("profile `{0}` is not feasible")]
    InfeasibleProfile(String),
    #[error("hypothesis violated ({hypothesis}): {}", report.detail)]
    HypothesisViolated { hypothesis: String, report: CheckReport },
    #[error("fixed-point equilibria differ from brute force: {0}")]
    EquivalenceViolation(String),
}

/// Validated game. Profiles are stored as per-player strategy indices; the
/// joint lattice orders the feasible profiles componentwise and its element
/// ids are the comma-joined strategy ids in player order.
#[derive(Debug, Clone)]
pub struct Game {
    players: Vec<String>,
    strategies: Vec<Arc<FiniteLattice>>,
    profiles: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    payoffs: Vec<Vec<Rational>>,
    joint: Arc<FiniteLattice>,
}

/// Builds and fully validates a game from its document.
pub fn build_game(doc: &GameDoc) -> Result<Game, GameError> {
    if doc.players.is_empty() {
        return Err(GameError::NoPlayers);
    }
    for (k, p) in doc.players.iter().enumerate() {
        if doc.players[..k].contains(p) {
            return Err(GameError::DuplicatePlayer(p.clone()));
        }
    }
    for p in doc.strategies.keys() {
        if !doc.players.contains(p) {
            return Err(GameError::UnknownPlayer(p.clone()));
        }
    }
    let mut strategies = Vec::with_capacity(doc.players.len());
    for p in &doc.players {
        let latdoc = doc
            .strategies
            .get(p)
            .ok_or_else(|| GameError::MissingStrategyLattice(p.clone()))?;
        strategies.push(Arc::new(latdoc.to_lattice()?));
    }

    if doc.feasible.is_empty() {
        return Err(GameError::EmptyFeasible);
    }
    let mut profiles: Vec<Vec<usize>> = Vec::with_capacity(doc.feasible.len());
    for row in &doc.feasible {
        if row.len() != doc.players.len() {
            return Err(GameError::BadProfile(row.join(",")));
        }
        let mut profile = Vec::with_capacity(row.len());
        for (i, s) in row.iter().enumerate() {
            let idx = strategies[i].index_of(s).ok_or_else(|| GameError::UnknownStrategy {
                player: doc.players[i].clone(),
                strategy: s.clone(),
            })?;
            profile.push(idx);
        }
        profiles.push(profile);
    }
    profiles.sort();
    for w in profiles.windows(2) {
        if w[0] == w[1] {
            let key = key_of(&strategies, &w[0]);
            return Err(GameError::DuplicateProfile(key));
        }
    }

    let game = Game::assemble(doc.players.clone(), strategies, profiles)?;
    game.attach_payoffs(doc)
}

fn key_of(strategies: &[Arc<FiniteLattice>], profile: &[usize]) -> String {
    profile
        .iter()
        .enumerate()
        .map(|(i, &s)| strategies[i].id(s))
        .collect::<Vec<_>>()
        .join(",")
}

impl Game {
    fn assemble(
        players: Vec<String>,
        strategies: Vec<Arc<FiniteLattice>>,
        profiles: Vec<Vec<usize>>,
    ) -> Result<Game, GameError> {
        let lookup: HashMap<Vec<usize>, usize> =
            profiles.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();

        // Componentwise closure: the feasible set must be a sublattice of
        // the strategy product. Finite, so subcompleteness then follows.
        for a in &profiles {
            for b in &profiles {
                let meet: Vec<usize> =
                    a.iter().zip(b).enumerate().map(|(i, (&x, &y))| strategies[i].meet(x, y)).collect();
                let join: Vec<usize> =
                    a.iter().zip(b).enumerate().map(|(i, (&x, &y))| strategies[i].join(x, y)).collect();
                for (c, bound) in [(meet, "meet"), (join, "join")] {
                    if !lookup.contains_key(&c) {
                        return Err(GameError::FeasibleNotSublattice {
                            a: key_of(&strategies, a),
                            b: key_of(&strategies, b),
                            c: key_of(&strategies, &c),
                            bound,
                        });
                    }
                }
            }
        }

        for (i, lattice) in strategies.iter().enumerate() {
            for s in 0..lattice.len() {
                if !profiles.iter().any(|p| p[i] == s) {
                    return Err(GameError::ProjectionNotSurjective {
                        player: players[i].clone(),
                        strategy: lattice.id(s).to_string(),
                    });
                }
            }
        }

        let ids: Vec<String> = profiles.iter().map(|p| key_of(&strategies, p)).collect();
        let poset = Poset::from_relation(ids, |x, y| {
            profiles[x].iter().zip(&profiles[y]).enumerate().all(|(i, (&a, &b))| strategies[i].le(a, b))
        })?;
        let joint = Arc::new(FiniteLattice::from_poset(poset)?);

        Ok(Game { players, strategies, profiles, lookup, payoffs: Vec::new(), joint })
    }

    fn attach_payoffs(mut self, doc: &GameDoc) -> Result<Game, GameError> {
        let mut payoffs = Vec::with_capacity(self.players.len());
        for player in &self.players {
            let table = doc.payoffs.get(player).ok_or_else(|| GameError::PayoffMissing {
                player: player.clone(),
                profile: self.profile_key(0),
            })?;
            for key in table.keys() {
                if !(0..self.profiles.len()).any(|k| self.profile_key(k) == *key) {
                    return Err(GameError::PayoffOutsideFeasible {
                        player: player.clone(),
                        profile: key.clone(),
                    });
                }
            }
            let mut row = Vec::with_capacity(self.profiles.len());
            for k in 0..self.profiles.len() {
                let key = self.profile_key(k);
                let literal = table.get(&key).ok_or_else(|| GameError::PayoffMissing {
                    player: player.clone(),
                    profile: key.clone(),
                })?;
                row.push(parse_rational(literal)?);
            }
            payoffs.push(row);
        }
        self.payoffs = payoffs;
        Ok(self)
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn strategy_lattice(&self, i: usize) -> &Arc<FiniteLattice> {
        &self.strategies[i]
    }

    /// The feasible set as a lattice in its own right; element k is
    /// profile k.
    pub fn joint(&self) -> &Arc<FiniteLattice> {
        &self.joint
    }

    pub fn num_profiles(&self) -> usize {
        self.profiles.len()
    }

    /// Strategy indices of feasible profile `k`, one per player.
    pub fn profile(&self, k: usize) -> &[usize] {
        &self.profiles[k]
    }

    pub fn profile_key(&self, k: usize) -> String {
        self.joint.id(k).to_string()
    }

    pub fn profile_ids(&self, k: usize) -> Vec<String> {
        self.profiles[k]
            .iter()
            .enumerate()
            .map(|(i, &s)| self.strategies[i].id(s).to_string())
            .collect()
    }

    pub fn profile_index(&self, profile: &[usize]) -> Option<usize> {
        self.lookup.get(profile).copied()
    }

    pub fn payoff(&self, player: usize, profile_index: usize) -> Rational {
        self.payoffs[player][profile_index]
    }

    fn render_others(&self, player: usize, profile: &[usize]) -> String {
        profile
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != player)
            .map(|(i, &s)| format!("{}={}", self.players[i], self.strategies[i].id(s)))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Own strategies feasible against the others' part of `profile` (the
    /// `player` coordinate of `profile` is ignored). Asserted to be a
    /// subcomplete sublattice of the player's strategy lattice.
    pub fn section_strategies(&self, player: usize, profile: &[usize]) -> Result<SubsetView, GameError> {
        if profile.len() != self.players.len()
            || profile.iter().enumerate().any(|(i, &s)| s >= self.strategies[i].len())
        {
            return Err(GameError::BadProfile(format!("{profile:?}")));
        }
        let lattice = &self.strategies[player];
        let mut own: Vec<usize> = Vec::new();
        let mut candidate = profile.to_vec();
        for s in 0..lattice.len() {
            candidate[player] = s;
            if self.lookup.contains_key(&candidate) {
                own.push(s);
            }
        }
        if own.is_empty() {
            return Err(GameError::EmptySection {
                player: self.players[player].clone(),
                others: self.render_others(player, profile),
            });
        }
        for (k, &y) in own.iter().enumerate() {
            for &yp in &own[k..] {
                assert!(
                    own.contains(&lattice.meet(y, yp)) && own.contains(&lattice.join(y, yp)),
                    "section must be a sublattice when the feasible set is closed"
                );
            }
        }
        Ok(lattice.subset_from_indices(own))
    }

    /// The search region of the aggregate argmax at feasible profile `x`:
    /// profiles feasible and componentwise inside every player's section.
    /// Asserted to be a sublattice of the joint lattice; contains `x`.
    pub fn joint_section(&self, x: usize) -> Result<SubsetView, GameError> {
        if x >= self.profiles.len() {
            return Err(GameError::InfeasibleProfile(format!("#{x}")));
        }
        let profile = self.profiles[x].clone();
        let mut sections: Vec<Vec<usize>> = Vec::with_capacity(self.players.len());
        for i in 0..self.players.len() {
            sections.push(self.section_strategies(i, &profile)?.indices());
        }
        let members: Vec<usize> = (0..self.profiles.len())
            .filter(|&k| {
                self.profiles[k].iter().enumerate().all(|(i, s)| sections[i].contains(s))
            })
            .collect();
        let l = &self.joint;
        for (a, &y) in members.iter().enumerate() {
            for &yp in &members[a..] {
                assert!(
                    members.contains(&l.meet(y, yp)) && members.contains(&l.join(y, yp)),
                    "joint section must be a sublattice when the feasible set is closed"
                );
            }
        }
        debug_assert!(members.contains(&x));
        Ok(l.subset_from_indices(members))
    }

    /// Canonical document for this game.
    pub fn doc(&self) -> GameDoc {
        let mut strategies = BTreeMap::new();
        for (i, p) in self.players.iter().enumerate() {
            strategies.insert(p.clone(), LatticeDoc::from_lattice(&self.strategies[i]));
        }
        let mut feasible: Vec<Vec<String>> = (0..self.profiles.len()).map(|k| self.profile_ids(k)).collect();
        feasible.sort();
        let mut payoffs = BTreeMap::new();
        for (i, p) in self.players.iter().enumerate() {
            let mut table = BTreeMap::new();
            for k in 0..self.profiles.len() {
                table.insert(self.profile_key(k), format_rational(&self.payoffs[i][k]));
            }
            payoffs.insert(p.clone(), table);
        }
        GameDoc { players: self.players.clone(), strategies, feasible, payoffs }
    }
}

/// Convenience constructor: every player's strategy lattice is an integer
/// box (a product of chains given by `boxes[i]`), the feasible set is either
/// the full product (`None`) or the given profiles, and payoffs come from a
/// total function evaluated on the feasible set. The result passes through
/// the full `build_game` validation.
pub fn topkis_box_game(
    boxes: &[Vec<usize>],
    feasible: Option<&[Vec<String>]>,
    payoff: impl Fn(usize, &[&str]) -> Rational,
) -> Result<Game, GameError> {
    if boxes.is_empty() {
        return Err(GameError::NoPlayers);
    }
    let players: Vec<String> = (0..boxes.len()).map(|i| format!("p{}", i + 1)).collect();
    let lattices: Vec<FiniteLattice> =
        boxes.iter().map(|b| FiniteLattice::product_of_chains(b)).collect();
    let mut strategies = BTreeMap::new();
    for (p, l) in players.iter().zip(&lattices) {
        strategies.insert(p.clone(), LatticeDoc::from_lattice(l));
    }
    let feasible: Vec<Vec<String>> = match feasible {
        Some(rows) => rows.to_vec(),
        None => {
            let mut rows: Vec<Vec<String>> = vec![Vec::new()];
            for l in &lattices {
                let mut next = Vec::with_capacity(rows.len() * l.len());
                for row in &rows {
                    for s in 0..l.len() {
                        let mut r = row.clone();
                        r.push(l.id(s).to_string());
                        next.push(r);
                    }
                }
                rows = next;
            }
            rows
        }
    };
    let mut payoffs: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for (i, p) in players.iter().enumerate() {
        let mut table = BTreeMap::new();
        for row in &feasible {
            let borrowed: Vec<&str> = row.iter().map(String::as_str).collect();
            table.insert(row.join(","), format_rational(&payoff(i, &borrowed)));
        }
        payoffs.insert(p.clone(), table);
    }
    build_game(&GameDoc { players, strategies, feasible, payoffs })
}

/// The same game with payoffs `alpha * f_i + beta_i`. A common positive
/// scale and per-player shifts never change best responses, argmax sets, or
/// the Nash set; the suites assert exactly that.
pub fn affine_transformed(g: &Game, alpha: Rational, betas: &[Rational]) -> Result<Game, GameError> {
    assert!(alpha > Rational::from_integer(0), "scale must be positive");
    assert_eq!(betas.len(), g.num_players(), "one shift per player");
    let mut doc = g.doc();
    for (i, player) in g.players().iter().enumerate() {
        let table = doc.payoffs.get_mut(player).expect("doc lists every player");
        for k in 0..g.num_profiles() {
            let key = g.profile_key(k);
            let v = alpha * g.payoff(i, k) + betas[i];
            table.insert(key, format_rational(&v));
        }
    }
    build_game(&doc)
}

#[cfg(test)]
pub(crate) mod test_games {
    use super::*;

    /// Two players on {0,1} chains, full product, f_i = x1 * x2.
    pub(crate) fn coordination() -> Game {
        topkis_box_game(&[vec![2], vec![2]], None, |_, profile| {
            let x1: i64 = profile[0].parse().unwrap();
            let x2: i64 = profile[1].parse().unwrap();
            Rational::from_integer(x1 * x2)
        })
        .unwrap()
    }

    /// Two players on {0,1} chains, feasible set the 3-profile chain
    /// {(0,0),(0,1),(1,1)}, f_i = x1 + x2 for both players.
    pub(crate) fn chain_feasible() -> Game {
        let feasible = vec![
            vec!["0".to_string(), "0".to_string()],
            vec!["0".to_string(), "1".to_string()],
            vec!["1".to_string(), "1".to_string()],
        ];
        topkis_box_game(&[vec![2], vec![2]], Some(&feasible), |_, profile| {
            let x1: i64 = profile[0].parse().unwrap();
            let x2: i64 = profile[1].parse().unwrap();
            Rational::from_integer(x1 + x2)
        })
        .unwrap()
    }
}
