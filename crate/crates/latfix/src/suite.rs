//! Seeded theorem suites and hypothesis-drop counterexample search.
//!
//! A suite trial generates one (lattice, correspondence) instance, checks
//! the chosen hypothesis set, and, when it holds, verifies the fixed-set
//! conclusion by brute force. A conclusion violation would falsify a
//! published theorem or, far more likely, expose a bug here, so the pass
//! condition is always zero violations and every violation carries a full
//! instance document for offline re-checking.
//!
//! The counterexample search deliberately breaks one hypothesis and hunts
//! for instances whose fixed set is empty or fails induced completeness.
//! Finding none proves nothing; reports say so.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::correspondence::Correspondence;
use crate::doc::LatticeDoc;
use crate::fixpoint::{induced_inf_within, induced_sup_within, verify_fix_complete, FixTheorem};
use crate::generate::{gen_correspondence, gen_lattice, GenError, GeneratorConfig};
use crate::lattice::FiniteLattice;
use crate::poset::{OrderError, Poset};
use crate::report::TheoremOutcome;
use crate::rng::{trial_seed, Stream};

/// Stream domain tag for the raw-candidate sampler, distinct from the
/// generator's own tags.
const TAG_SEARCH: u64 = 0x5345_4152;

/// Tally of one theorem suite run. `conclusion_violations == 0` is the pass
/// condition; hits that neither verify nor violate do not exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub theorem: FixTheorem,
    pub seed: u64,
    pub trials: u64,
    pub hypothesis_hits: u64,
    pub conclusion_verified: u64,
    pub conclusion_violations: u64,
    /// Trials abandoned because instance repair hit its attempt cap.
    /// Reported so a biased stream is visible, never silent.
    pub generation_skipped: u64,
    pub witnesses: Vec<InstanceWitness>,
}

/// Full instance document attached to a conclusion violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceWitness {
    pub trial: u64,
    pub lattice: LatticeDoc,
    pub map: BTreeMap<String, Vec<String>>,
    pub detail: String,
}

/// The instance a suite examines for one sub-seeded config. Exposed so
/// oracle tests can replay the exact stream a suite saw.
pub fn generate_trial(cfg: &GeneratorConfig) -> Result<(Arc<FiniteLattice>, Correspondence), GenError> {
    let l = Arc::new(gen_lattice(cfg));
    let f = gen_correspondence(cfg, &l)?;
    Ok((l, f))
}

pub fn run_theorem_suite(theorem: FixTheorem, cfg: &GeneratorConfig, trials: u64) -> TrialReport {
    let mut report = TrialReport {
        theorem,
        seed: cfg.seed,
        trials,
        hypothesis_hits: 0,
        conclusion_verified: 0,
        conclusion_violations: 0,
        generation_skipped: 0,
        witnesses: Vec::new(),
    };
    for t in 0..trials {
        let tcfg = cfg.with_seed(trial_seed(cfg.seed, t));
        let (l, f) = match generate_trial(&tcfg) {
            Ok(pair) => pair,
            Err(GenError::GenerationExhausted { .. }) => {
                report.generation_skipped += 1;
                continue;
            }
        };
        match verify_fix_complete(&f, theorem) {
            TheoremOutcome::HypothesesNotMet { .. } => {}
            TheoremOutcome::Verified { .. } => {
                report.hypothesis_hits += 1;
                report.conclusion_verified += 1;
            }
            TheoremOutcome::ConclusionViolated { report: why } => {
                report.hypothesis_hits += 1;
                report.conclusion_violations += 1;
                let mut map = f.map_ids();
                for v in map.values_mut() {
                    v.sort();
                }
                report.witnesses.push(InstanceWitness {
                    trial: t,
                    lattice: LatticeDoc::from_lattice(&l),
                    map,
                    detail: why.detail,
                });
            }
        }
    }
    report
}

/// Which hypothesis the counterexample search abandons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DroppedHypothesis {
    LowerV,
    UpperV,
    NonemptyValues,
}

/// A found counterexample, stored as plain documents so it can be
/// re-verified without re-running the search. Values may be empty lists
/// when the dropped hypothesis is nonemptiness; such instances cannot be
/// expressed as a `Correspondence`, by design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleWitness {
    pub dropped: DroppedHypothesis,
    pub trial: u64,
    pub lattice: LatticeDoc,
    pub values: BTreeMap<String, Vec<String>>,
    pub failure: String,
}

impl CounterexampleWitness {
    /// Rebuilds the instance from the stored documents and re-checks both
    /// sides: the dropped hypothesis really fails and the fixed set really
    /// is empty or induced-incomplete.
    pub fn reverify(&self) -> Result<bool, OrderError> {
        let l = self.lattice.to_lattice()?;
        let mut values = vec![Vec::new(); l.len()];
        for (id, vs) in &self.values {
            let x = l.index_of(id).ok_or_else(|| OrderError::UnknownElement(id.clone()))?;
            for v in vs {
                let y = l.index_of(v).ok_or_else(|| OrderError::UnknownElement(v.clone()))?;
                values[x].push(y);
            }
        }
        let broken = match self.dropped {
            DroppedHypothesis::LowerV => !raw_lower_v(&l, &values),
            DroppedHypothesis::UpperV => !raw_upper_v(&l, &values),
            DroppedHypothesis::NonemptyValues => values.iter().any(|v| v.is_empty()),
        };
        Ok(broken && conclusion_fails(&l, &values).is_some())
    }
}

/// Searches seeded candidates that violate the dropped hypothesis for one
/// whose fixed set is empty or not complete in its induced order. Trial 0
/// is a hand-built instance per hypothesis (the two-chain swap for the
/// lower condition), so the searches are never flaky; later trials sample.
/// `None` after all trials means the search was inconclusive, nothing more.
pub fn search_counterexample(
    dropped: DroppedHypothesis,
    cfg: &GeneratorConfig,
    trials: u64,
) -> Option<CounterexampleWitness> {
    for t in 0..trials {
        let tcfg = cfg.with_seed(trial_seed(cfg.seed, t));
        let (l, values) = candidate(dropped, t, &tcfg);
        let broken = match dropped {
            DroppedHypothesis::LowerV => !raw_lower_v(&l, &values),
            DroppedHypothesis::UpperV => !raw_upper_v(&l, &values),
            DroppedHypothesis::NonemptyValues => values.iter().any(|v| v.is_empty()),
        };
        if !broken {
            continue;
        }
        if let Some(failure) = conclusion_fails(&l, &values) {
            let mut rendered: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for (x, vs) in values.iter().enumerate() {
                let mut ids: Vec<String> = vs.iter().map(|&y| l.id(y).to_string()).collect();
                ids.sort();
                rendered.insert(l.id(x).to_string(), ids);
            }
            return Some(CounterexampleWitness {
                dropped,
                trial: t,
                lattice: LatticeDoc::from_lattice(&l),
                values: rendered,
                failure,
            });
        }
    }
    None
}

/// Candidate instance for one search trial, as raw index-valued sets so
/// empty values are expressible.
fn candidate(
    dropped: DroppedHypothesis,
    trial: u64,
    cfg: &GeneratorConfig,
) -> (Arc<FiniteLattice>, Vec<Vec<usize>>) {
    if trial == 0 {
        return canned(dropped);
    }
    let l = Arc::new(gen_lattice(cfg));
    let mut rng = Stream::new(cfg.seed ^ TAG_SEARCH);
    let n = l.len();
    let values: Vec<Vec<usize>> = match dropped {
        // Up-closed values satisfy the upper condition for free, so any
        // violation found is the lower condition alone.
        DroppedHypothesis::LowerV => (0..n)
            .map(|_| {
                let p = rng.below(n);
                (0..n).filter(|&y| l.le(p, y)).collect()
            })
            .collect(),
        // Dually, down-closed values satisfy the lower condition for free.
        DroppedHypothesis::UpperV => (0..n)
            .map(|_| {
                let p = rng.below(n);
                (0..n).filter(|&y| l.le(y, p)).collect()
            })
            .collect(),
        // Interval values with monotone endpoints satisfy both comparison
        // conditions on the pairs that remain; only nonemptiness is lost.
        DroppedHypothesis::NonemptyValues => {
            let mut s: Vec<usize> = (0..n).collect();
            let a = rng.below(n);
            let c = l.join(a, rng.below(n));
            for x in s.iter_mut() {
                *x = l.meet(l.join(*x, a), c);
            }
            let e = rng.below(n);
            (0..n)
                .map(|x| {
                    if rng.chance(1, 2) {
                        Vec::new()
                    } else {
                        let hi = l.join(s[x], e);
                        (0..n).filter(|&y| l.le(s[x], y) && l.le(y, hi)).collect()
                    }
                })
                .collect()
        }
    };
    (l, values)
}

fn canned(dropped: DroppedHypothesis) -> (Arc<FiniteLattice>, Vec<Vec<usize>>) {
    match dropped {
        // Two-chain swap: no fixed points at all.
        DroppedHypothesis::LowerV => {
            let l = Arc::new(FiniteLattice::chain(2));
            (l, vec![vec![1], vec![0]])
        }
        // Down-valued diamond whose fixed set {0, a, b} has no induced
        // join of a and b.
        DroppedHypothesis::UpperV => {
            let ids: Vec<String> = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
            let poset =
                Poset::from_pairs(ids, &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
                    .expect("diamond is a poset");
            let l = Arc::new(FiniteLattice::from_poset(poset).expect("diamond is a lattice"));
            (l, vec![vec![0], vec![0, 1], vec![0, 2], vec![0]])
        }
        // Entirely empty values: vacuously monotone, no fixed points.
        DroppedHypothesis::NonemptyValues => {
            let l = Arc::new(FiniteLattice::chain(2));
            (l, vec![Vec::new(), Vec::new()])
        }
    }
}

/// The lower comparison condition on raw values; empty values are vacuous.
fn raw_lower_v(l: &FiniteLattice, values: &[Vec<usize>]) -> bool {
    for x in 0..l.len() {
        for xp in 0..l.len() {
            if !l.lt(x, xp) {
                continue;
            }
            for &y in &values[x] {
                for &yp in &values[xp] {
                    if !values[x].contains(&l.meet(y, yp)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn raw_upper_v(l: &FiniteLattice, values: &[Vec<usize>]) -> bool {
    for x in 0..l.len() {
        for xp in 0..l.len() {
            if !l.lt(x, xp) {
                continue;
            }
            for &y in &values[x] {
                for &yp in &values[xp] {
                    if !values[xp].contains(&l.join(y, yp)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Why the fixed-set conclusion fails on this instance, if it does.
fn conclusion_fails(l: &FiniteLattice, values: &[Vec<usize>]) -> Option<String> {
    let fix: Vec<usize> = (0..l.len()).filter(|&s| values[s].contains(&s)).collect();
    if fix.is_empty() {
        return Some("the fixed set is empty".into());
    }
    for (k, &u) in fix.iter().enumerate() {
        for &v in &fix[k..] {
            if induced_sup_within(l, &fix, &[u, v]).is_none() {
                return Some(format!(
                    "no least upper bound of `{}`, `{}` within the fixed set",
                    l.id(u),
                    l.id(v)
                ));
            }
            if induced_inf_within(l, &fix, &[u, v]).is_none() {
                return Some(format!(
                    "no greatest lower bound of `{}`, `{}` within the fixed set",
                    l.id(u),
                    l.id(v)
                ));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::TargetClass;

    fn small_cfg(seed: u64) -> GeneratorConfig {
        GeneratorConfig { seed, max_lattice_size: 6, ..GeneratorConfig::default() }
    }

    #[test]
    fn small_suites_verify_without_violations() {
        for theorem in FixTheorem::all() {
            let report = run_theorem_suite(theorem, &small_cfg(11), 60);
            assert_eq!(report.conclusion_violations, 0, "{theorem:?}");
            assert!(report.witnesses.is_empty());
            assert_eq!(report.hypothesis_hits, report.conclusion_verified);
            assert!(report.hypothesis_hits > 0, "{theorem:?} never fired");
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_theorem_suite(FixTheorem::ChainValues, &small_cfg(3), 40);
        let b = run_theorem_suite(FixTheorem::ChainValues, &small_cfg(3), 40);
        assert_eq!(a, b);
    }

    #[test]
    fn hypothesis_nesting_on_a_shared_stream() {
        let cfg = small_cfg(17);
        let strong = run_theorem_suite(FixTheorem::Zhou, &cfg, 80);
        let weak = run_theorem_suite(FixTheorem::ChainValues, &cfg, 80);
        assert!(strong.hypothesis_hits <= weak.hypothesis_hits);
    }

    #[test]
    fn dropped_lower_finds_the_swap_immediately() {
        let w = search_counterexample(DroppedHypothesis::LowerV, &small_cfg(0), 1)
            .expect("trial 0 is canned");
        assert_eq!(w.trial, 0);
        assert_eq!(w.failure, "the fixed set is empty");
        assert_eq!(w.values["0"], vec!["1"]);
        assert_eq!(w.values["1"], vec!["0"]);
        assert!(w.reverify().unwrap());
    }

    #[test]
    fn dropped_upper_witness_is_induced_incompleteness() {
        let w = search_counterexample(DroppedHypothesis::UpperV, &small_cfg(0), 1)
            .expect("trial 0 is canned");
        assert!(w.failure.contains("least upper bound"), "{}", w.failure);
        assert!(w.reverify().unwrap());
    }

    #[test]
    fn dropped_nonempty_witness_has_an_empty_value() {
        let w = search_counterexample(DroppedHypothesis::NonemptyValues, &small_cfg(0), 1)
            .expect("trial 0 is canned");
        assert!(w.values.values().any(|v| v.is_empty()));
        assert!(w.reverify().unwrap());
    }

    #[test]
    fn sampled_candidates_can_witness_too() {
        // The public search always returns the canned trial first, so this
        // drives the sampler directly: across a modest seed range, the
        // rigged candidate families must produce at least one genuine
        // witness per dropped hypothesis.
        for dropped in [DroppedHypothesis::LowerV, DroppedHypothesis::UpperV] {
            let mut found = false;
            'seeds: for seed in 0..30u64 {
                let cfg = small_cfg(seed);
                for t in 1..40 {
                    let tcfg = cfg.with_seed(trial_seed(cfg.seed, t));
                    let (l, values) = candidate(dropped, t, &tcfg);
                    let broken = match dropped {
                        DroppedHypothesis::LowerV => !raw_lower_v(&l, &values),
                        DroppedHypothesis::UpperV => !raw_upper_v(&l, &values),
                        DroppedHypothesis::NonemptyValues => unreachable!(),
                    };
                    // The rigging must hold: the complementary condition
                    // stays intact on every sampled candidate.
                    match dropped {
                        DroppedHypothesis::LowerV => assert!(raw_upper_v(&l, &values)),
                        DroppedHypothesis::UpperV => assert!(raw_lower_v(&l, &values)),
                        DroppedHypothesis::NonemptyValues => unreachable!(),
                    }
                    if broken && conclusion_fails(&l, &values).is_some() {
                        found = true;
                        break 'seeds;
                    }
                }
            }
            assert!(found, "no sampled witness for {dropped:?} in the scanned range");
        }
    }

    #[test]
    fn search_is_deterministic() {
        let a = search_counterexample(DroppedHypothesis::UpperV, &small_cfg(5), 30);
        let b = search_counterexample(DroppedHypothesis::UpperV, &small_cfg(5), 30);
        assert_eq!(a, b);
    }

    #[test]
    fn trial_accounting_is_exact() {
        // A cramped value budget makes rejection plausible; whatever
        // happens, every trial is accounted for in exactly one bucket.
        let cfg = GeneratorConfig {
            max_value_size: 1,
            target_class: TargetClass::VAscending,
            ..small_cfg(23)
        };
        let report = run_theorem_suite(FixTheorem::ChainValues, &cfg, 50);
        let examined = report.trials - report.generation_skipped;
        assert!(report.hypothesis_hits <= examined);
        assert_eq!(report.conclusion_verified + report.conclusion_violations, report.hypothesis_hits);
    }
}
