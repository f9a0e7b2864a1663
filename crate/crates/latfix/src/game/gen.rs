//! Seeded generation of games that satisfy both hypotheses by construction,
//! plus a batch runner that cross-checks every solver claim on each one.
//!
//! Payoffs are drawn from a family that is exactly supermodular in own
//! strategy and has exactly increasing differences against the others:
//!
//!   f_i = gamma_i * level_i(s_i) * M_i(s_-i) + P_i(s_i) + Q_i(s_-i)
//!
//! where level is the coordinate sum (modular), M is a nonnegative-weight
//! sum of the others' levels plus a constant (monotone, nonnegative), P is
//! linear in own coordinates plus a nonnegative multiple of their product
//! (supermodular on a box: prod(max) * prod(min) = prod(a) * prod(b) and
//! t + ab/t increases for t >= sqrt(ab)), and Q is an arbitrary rational
//! table over the others' part (cancels from every inequality). The cross
//! difference collapses to gamma * (level(y') - level(y)) * (M(x') - M(x))
//! which is nonnegative for every comparable quadruple, feasible or not.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::solve::{nash_brute, nash_via_fixpoint};
use super::{
    affine_transformed, check_increasing_differences, check_supermodular, topkis_box_game, Game,
    GameError, Rational,
};
use crate::lattice::FiniteLattice;
use crate::rng::{trial_seed, Stream};

pub(crate) const TAG_GAME: u64 = 0x4741_4D45;

/// Size caps for generated games. Profile counts stay small enough that
/// the brute equilibrium scan is the oracle, not the bottleneck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameGenConfig {
    pub seed: u64,
    pub max_players: usize,
    pub max_strategies: usize,
}

impl Default for GameGenConfig {
    fn default() -> Self {
        GameGenConfig { seed: crate::generate::DEFAULT_SEED, max_players: 3, max_strategies: 4 }
    }
}

fn coords(id: &str) -> Vec<i64> {
    id.split('.').map(|c| c.parse::<i64>().expect("box ids are dotted decimals")).collect()
}

fn level(id: &str) -> i64 {
    coords(id).into_iter().sum()
}

fn others_key(profile: &[&str], player: usize) -> String {
    let mut parts = Vec::with_capacity(profile.len().saturating_sub(1));
    for (j, id) in profile.iter().enumerate() {
        if j != player {
            parts.push(*id);
        }
    }
    parts.join("|")
}

struct PayoffSpec {
    gamma: Rational,
    weight0: i64,
    weights: Vec<i64>,
    linear: Vec<i64>,
    prod_coeff: i64,
    den: i64,
    table: BTreeMap<String, Rational>,
}

impl PayoffSpec {
    fn eval(&self, player: usize, profile: &[&str]) -> Rational {
        let own = coords(profile[player]);
        let mut m = self.weight0;
        let mut pos = 0;
        for (j, id) in profile.iter().enumerate() {
            if j != player {
                m += self.weights[pos] * level(id);
                pos += 1;
            }
        }
        let mut total = self.gamma * Rational::from_integer(level(profile[player]) * m);
        let lin: i64 = own.iter().zip(&self.linear).map(|(c, a)| c * a).sum();
        let prod: i64 = own.iter().product();
        total += Rational::new(lin + self.prod_coeff * prod, self.den);
        total + self.table[&others_key(profile, player)]
    }
}

fn draw_shape(rng: &mut Stream, max_strategies: usize) -> Vec<usize> {
    let mut shapes: Vec<Vec<usize>> = vec![vec![2]];
    if max_strategies >= 3 {
        shapes.push(vec![3]);
    }
    if max_strategies >= 4 {
        shapes.push(vec![4]);
        shapes.push(vec![2, 2]);
    }
    rng.pick(&shapes).clone()
}

fn product_feasible(boxes: &[Vec<usize>]) -> Vec<Vec<String>> {
    let lattices: Vec<_> =
        boxes.iter().map(|b| FiniteLattice::product_of_chains(b)).collect();
    let mut rows: Vec<Vec<String>> = vec![Vec::new()];
    for l in &lattices {
        let mut next = Vec::with_capacity(rows.len() * l.len());
        for row in &rows {
            for k in 0..l.len() {
                let mut r = row.clone();
                r.push(l.id(k).to_string());
                next.push(r);
            }
        }
        rows = next;
    }
    rows
}

/// Diagonal of a shared lattice plus a few random profiles, closed under
/// componentwise meet and join. Every lattice element appears on the
/// diagonal, so projections stay surjective after closure.
fn diagonal_feasible(rng: &mut Stream, shape: &[usize], players: usize) -> Vec<Vec<String>> {
    let l = FiniteLattice::product_of_chains(shape);
    let index: BTreeMap<String, usize> =
        (0..l.len()).map(|k| (l.id(k).to_string(), k)).collect();
    let mut rows: BTreeSet<Vec<String>> = (0..l.len())
        .map(|k| vec![l.id(k).to_string(); players])
        .collect();
    for _ in 0..rng.range(0, 2) {
        rows.insert((0..players).map(|_| l.id(rng.below(l.len())).to_string()).collect());
    }
    loop {
        let snapshot: Vec<Vec<String>> = rows.iter().cloned().collect();
        let before = rows.len();
        for a in &snapshot {
            for b in &snapshot {
                let mut meet = Vec::with_capacity(players);
                let mut join = Vec::with_capacity(players);
                for (x, y) in a.iter().zip(b) {
                    meet.push(l.id(l.meet(index[x], index[y])).to_string());
                    join.push(l.id(l.join(index[x], index[y])).to_string());
                }
                rows.insert(meet);
                rows.insert(join);
            }
        }
        if rows.len() == before {
            break;
        }
    }
    rows.into_iter().collect()
}

/// Generates one game satisfying both hypotheses. Three feasible-set
/// recipes: the full product, a diagonal closure over a shared lattice,
/// and a staircase chain over heterogeneous chains.
pub fn gen_game(cfg: &GameGenConfig) -> Game {
    assert!(cfg.max_players >= 1 && cfg.max_strategies >= 2);
    let mut rng = Stream::new(cfg.seed ^ TAG_GAME);
    let mode = if cfg.max_players == 1 { 0 } else { rng.below(3) };

    let (boxes, feasible): (Vec<Vec<usize>>, Option<Vec<Vec<String>>>) = match mode {
        0 => {
            let players = rng.range(1, cfg.max_players);
            let boxes: Vec<_> = (0..players).map(|_| draw_shape(&mut rng, cfg.max_strategies)).collect();
            (boxes, None)
        }
        1 => {
            let players = rng.range(2, cfg.max_players);
            let shape = draw_shape(&mut rng, cfg.max_strategies);
            let rows = diagonal_feasible(&mut rng, &shape, players);
            (vec![shape; players], Some(rows))
        }
        _ => {
            let players = rng.range(2, cfg.max_players);
            let lengths: Vec<_> =
                (0..players).map(|_| rng.range(2, cfg.max_strategies)).collect();
            let top = *lengths.iter().max().unwrap();
            let rows: Vec<Vec<String>> = (0..top)
                .map(|r| lengths.iter().map(|&k| r.min(k - 1).to_string()).collect())
                .collect();
            (lengths.into_iter().map(|k| vec![k]).collect(), Some(rows))
        }
    };

    let rows = match &feasible {
        Some(rows) => rows.clone(),
        None => product_feasible(&boxes),
    };
    let players = boxes.len();
    let specs: Vec<PayoffSpec> = (0..players)
        .map(|i| {
            let gamma = Rational::new(rng.range(0, 3) as i64, *rng.pick(&[1i64, 2, 3]));
            let weight0 = rng.range(0, 1) as i64;
            let weights = (0..players - 1).map(|_| rng.range(0, 2) as i64).collect();
            let linear = (0..boxes[i].len()).map(|_| rng.range(0, 4) as i64 - 2).collect();
            let prod_coeff = rng.range(0, 2) as i64;
            let den = *rng.pick(&[1i64, 2, 3]);
            let mut table = BTreeMap::new();
            for row in &rows {
                let refs: Vec<&str> = row.iter().map(String::as_str).collect();
                let key = others_key(&refs, i);
                table
                    .entry(key)
                    .or_insert_with(|| Rational::new(rng.range(0, 8) as i64 - 4, *rng.pick(&[1i64, 2, 3])));
            }
            PayoffSpec { gamma, weight0, weights, linear, prod_coeff, den, table }
        })
        .collect();

    topkis_box_game(&boxes, feasible.as_deref(), |i, profile| specs[i].eval(i, profile))
        .expect("generated games validate by construction")
}

/// Batch report. A healthy run has every failure counter at zero;
/// `witnesses` carries one reproduction line (game index and seed) per
/// failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSuiteReport {
    pub seed: u64,
    pub games: u64,
    pub product_form: u64,
    pub non_product_form: u64,
    pub hypothesis_failures: u64,
    pub equivalence_failures: u64,
    pub lattice_failures: u64,
    pub affine_failures: u64,
    pub aggregate_failures: u64,
    pub witnesses: Vec<String>,
}

impl GameSuiteReport {
    pub fn all_green(&self) -> bool {
        self.hypothesis_failures == 0
            && self.equivalence_failures == 0
            && self.lattice_failures == 0
            && self.affine_failures == 0
            && self.aggregate_failures == 0
    }
}

fn aggregate_supermodular_at(g: &Game, x: usize) -> Result<bool, GameError> {
    let region = g.joint_section(x)?.indices();
    let base = g.profile(x).to_vec();
    let score = |y: usize| -> Rational {
        let yprof = g.profile(y);
        let mut total = Rational::from_integer(0);
        for i in 0..g.num_players() {
            let mut p = base.clone();
            p[i] = yprof[i];
            total += g.payoff(i, g.profile_index(&p).expect("corner feasible"));
        }
        total
    };
    let joint = g.joint();
    for (a, &y) in region.iter().enumerate() {
        for &yp in &region[a + 1..] {
            let up = joint.join(y, yp);
            let down = joint.meet(y, yp);
            if score(up) + score(down) < score(y) + score(yp) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Generates `games` games from per-index seeds and runs the full
/// cross-check battery on each: hypothesis checkers, both equilibrium
/// routes, the induced-order lattice claim, positive affine invariance,
/// and a spot check that the aggregate objective is supermodular on
/// sampled joint sections.
pub fn run_game_suite(cfg: &GameGenConfig, games: u64) -> GameSuiteReport {
    let mut report = GameSuiteReport {
        seed: cfg.seed,
        games,
        product_form: 0,
        non_product_form: 0,
        hypothesis_failures: 0,
        equivalence_failures: 0,
        lattice_failures: 0,
        affine_failures: 0,
        aggregate_failures: 0,
        witnesses: Vec::new(),
    };
    for t in 0..games {
        let sub = GameGenConfig { seed: trial_seed(cfg.seed, t), ..*cfg };
        let g = gen_game(&sub);
        let full: usize = (0..g.num_players()).map(|i| g.strategy_lattice(i).len()).product();
        if g.num_profiles() == full {
            report.product_form += 1;
        } else {
            report.non_product_form += 1;
        }

        let sup = check_supermodular(&g);
        let diffs = check_increasing_differences(&g);
        if !sup.holds || !diffs.holds {
            report.hypothesis_failures += 1;
            report.witnesses.push(format!("game {t} (seed {}): hypothesis checker failed", sub.seed));
            continue;
        }

        let solved = match nash_via_fixpoint(&g) {
            Ok(set) => set,
            Err(GameError::HypothesisViolated { hypothesis, .. }) => {
                report.hypothesis_failures += 1;
                report.witnesses.push(format!("game {t} (seed {}): {hypothesis} violated", sub.seed));
                continue;
            }
            Err(err) => {
                report.equivalence_failures += 1;
                report.witnesses.push(format!("game {t} (seed {}): {err}", sub.seed));
                continue;
            }
        };
        if solved.members.is_empty() || !solved.is_complete_lattice {
            report.lattice_failures += 1;
            report.witnesses.push(format!(
                "game {t} (seed {}): equilibrium set {:?} not a nonempty complete lattice",
                sub.seed, solved.members
            ));
        }

        let mut arng = Stream::new(trial_seed(sub.seed, 7));
        let alpha = Rational::new(arng.range(1, 3) as i64, *arng.pick(&[1i64, 2, 3]));
        let betas: Vec<Rational> = (0..g.num_players())
            .map(|_| Rational::new(arng.range(0, 6) as i64 - 3, *arng.pick(&[1i64, 2])))
            .collect();
        let transformed = affine_transformed(&g, alpha, &betas).expect("transform keeps the game valid");
        let preserved = check_supermodular(&transformed).holds
            && check_increasing_differences(&transformed).holds
            && nash_brute(&transformed).members == solved.members;
        if !preserved {
            report.affine_failures += 1;
            report.witnesses.push(format!("game {t} (seed {}): affine transform broke invariance", sub.seed));
        }

        for x in [0, g.num_profiles() - 1] {
            match aggregate_supermodular_at(&g, x) {
                Ok(true) => {}
                _ => {
                    report.aggregate_failures += 1;
                    report.witnesses.push(format!(
                        "game {t} (seed {}): aggregate not supermodular at profile {}",
                        sub.seed,
                        g.profile_key(x)
                    ));
                    break;
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::super::solve::aggregate_argmax;
    use super::*;

    #[test]
    fn generated_games_always_satisfy_both_hypotheses() {
        for seed in 0..60 {
            let g = gen_game(&GameGenConfig { seed, ..GameGenConfig::default() });
            assert!(check_supermodular(&g).holds, "seed {seed}");
            assert!(check_increasing_differences(&g).holds, "seed {seed}");
            assert!(g.num_players() <= 3);
            for i in 0..g.num_players() {
                assert!(g.strategy_lattice(i).len() <= 4);
            }
        }
    }

    #[test]
    fn both_feasible_set_forms_appear() {
        let cfg = GameGenConfig::default();
        let report = run_game_suite(&cfg, 40);
        assert!(report.product_form > 0, "{report:?}");
        assert!(report.non_product_form > 0, "{report:?}");
    }

    #[test]
    fn small_suite_runs_green() {
        let report = run_game_suite(&GameGenConfig::default(), 40);
        assert!(report.all_green(), "{:?}", report.witnesses);
        assert_eq!(report.games, 40);
        assert_eq!(report.product_form + report.non_product_form, 40);
    }

    #[test]
    fn suite_reports_are_deterministic() {
        let cfg = GameGenConfig { seed: 99, ..GameGenConfig::default() };
        let a = serde_json::to_string(&run_game_suite(&cfg, 25)).unwrap();
        let b = serde_json::to_string(&run_game_suite(&cfg, 25)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn diagonal_closure_yields_a_valid_non_product_game() {
        // Hunt for a diagonal-mode game and confirm it solved cleanly with
        // a strictly smaller feasible set than the full product.
        let mut found = false;
        for seed in 0..80 {
            let g = gen_game(&GameGenConfig { seed, ..GameGenConfig::default() });
            let full: usize = (0..g.num_players()).map(|i| g.strategy_lattice(i).len()).product();
            if g.num_profiles() < full {
                found = true;
                let solved = nash_via_fixpoint(&g).unwrap();
                assert!(!solved.members.is_empty());
                break;
            }
        }
        assert!(found, "no non-product game in 80 seeds");
    }

    #[test]
    fn aggregate_argmax_feeds_the_spot_check() {
        let g = gen_game(&GameGenConfig { seed: 5, ..GameGenConfig::default() });
        for x in 0..g.num_profiles() {
            assert!(!aggregate_argmax(&g, x).unwrap().is_empty());
            assert!(aggregate_supermodular_at(&g, x).unwrap());
        }
    }
}
