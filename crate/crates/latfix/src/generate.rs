//! Seeded random lattices and correspondences for the probe suites.
//!
//! Generation is a pure function of the config: the same seed yields the
//! same instance, bit for bit, and per-trial sub-seeds keep trials
//! independent so parallel and serial suite runs agree. Correspondences are
//! grown from a monotone selection and repaired toward the requested class
//! by rejection sampling with a hard attempt cap; callers see skipped
//! trials explicitly rather than silently biased streams.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::correspondence::{is_ascending, is_v_ascending, Correspondence};
use crate::lattice::FiniteLattice;
use crate::poset::Poset;
use crate::rng::Stream;

/// Default seed for bare invocations. Fixed and documented so reports are
/// reproducible without any flags.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Rejection-sampling budget per correspondence instance.
const REPAIR_CAP: usize = 1000;

/// Attempt budget for lattice skeletons before falling back to a chain.
const SKELETON_CAP: usize = 64;

/// Stream domain tags so the lattice and the correspondence drawn for one
/// seed do not replay each other's draws.
const TAG_LATTICE: u64 = 0x4C41_5454;
const TAG_CORR: u64 = 0x434F_5252;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("generation exhausted: {attempts} candidates rejected for target class {target:?}")]
    GenerationExhausted { attempts: usize, target: TargetClass },
}

/// Which monotonicity class the generated correspondence must validate
/// against before it is returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetClass {
    Ascending,
    VAscending,
    Unconstrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeStrategy {
    /// Random subset of a small product of chains, closed under
    /// componentwise meet and join: a genuine sublattice of the product.
    ChainProductClosure,
    /// Down-sets of a random poset on at most five points, ordered by
    /// inclusion: a distributive lattice.
    RandomPosetDownsets,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Upper bound on carrier size; must be at least 1.
    pub max_lattice_size: usize,
    /// Upper bound on |F(x)|; candidates with larger values are rejected.
    pub max_value_size: usize,
    pub target_class: TargetClass,
    pub strategy: LatticeStrategy,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: DEFAULT_SEED,
            max_lattice_size: 8,
            max_value_size: 8,
            target_class: TargetClass::VAscending,
            strategy: LatticeStrategy::ChainProductClosure,
        }
    }
}

impl GeneratorConfig {
    /// Same config reseeded; the suites derive one per trial.
    pub fn with_seed(&self, seed: u64) -> GeneratorConfig {
        GeneratorConfig { seed, ..self.clone() }
    }
}

/// Deterministic random lattice within the configured size bound.
///
/// Both strategies retry on oversize skeletons and fall back to a chain, so
/// generation always succeeds. Panics if `max_lattice_size` is 0.
pub fn gen_lattice(cfg: &GeneratorConfig) -> FiniteLattice {
    assert!(cfg.max_lattice_size >= 1, "max_lattice_size must be at least 1");
    let mut rng = Stream::new(cfg.seed ^ TAG_LATTICE);
    for _ in 0..SKELETON_CAP {
        let candidate = match cfg.strategy {
            LatticeStrategy::ChainProductClosure => chain_product_closure(&mut rng, cfg),
            LatticeStrategy::RandomPosetDownsets => random_poset_downsets(&mut rng, cfg),
        };
        if let Some(l) = candidate {
            debug_assert!(!l.is_empty() && l.len() <= cfg.max_lattice_size);
            return l;
        }
    }
    FiniteLattice::chain(rng.range(1, cfg.max_lattice_size))
}

/// One closure attempt; None when the closure outgrows the bound.
fn chain_product_closure(rng: &mut Stream, cfg: &GeneratorConfig) -> Option<FiniteLattice> {
    let factors = rng.range(1, 3);
    let lengths: Vec<usize> = (0..factors).map(|_| rng.range(2, 4)).collect();
    let want = rng.range(1, cfg.max_lattice_size);
    let mut points: Vec<Vec<usize>> = Vec::new();
    for _ in 0..want {
        let p: Vec<usize> = lengths.iter().map(|&n| rng.below(n)).collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    // Close under componentwise min and max.
    loop {
        let mut grew = false;
        let snapshot = points.clone();
        for x in &snapshot {
            for y in &snapshot {
                let lo: Vec<usize> = x.iter().zip(y).map(|(&a, &b)| a.min(b)).collect();
                let hi: Vec<usize> = x.iter().zip(y).map(|(&a, &b)| a.max(b)).collect();
                for p in [lo, hi] {
                    if !points.contains(&p) {
                        points.push(p);
                        grew = true;
                    }
                }
            }
        }
        if points.len() > cfg.max_lattice_size {
            return None;
        }
        if !grew {
            break;
        }
    }
    points.sort();
    let ids: Vec<String> = points.iter().map(|p| crate::lattice::coord_id(p)).collect();
    let poset = Poset::from_relation(ids, |x, y| {
        points[x].iter().zip(&points[y]).all(|(&a, &b)| a <= b)
    })
    .expect("componentwise order on distinct tuples is a partial order");
    Some(FiniteLattice::from_poset(poset).expect("closure under min/max is a lattice"))
}

/// One down-set attempt; None when there are too many down-sets.
fn random_poset_downsets(rng: &mut Stream, cfg: &GeneratorConfig) -> Option<FiniteLattice> {
    let n = rng.below(6);
    // Random DAG on 0..n with edges i -> j only for i < j, then reachability.
    let mut le = vec![false; n * n];
    for i in 0..n {
        le[i * n + i] = true;
        for j in (i + 1)..n {
            if rng.chance(1, 3) {
                le[i * n + j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i * n + k] && le[k * n + j] {
                    le[i * n + j] = true;
                }
            }
        }
    }
    let mut masks: Vec<u32> = Vec::new();
    'mask: for mask in 0u32..(1 << n) {
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            for i in 0..n {
                if le[i * n + j] && mask & (1 << i) == 0 {
                    continue 'mask;
                }
            }
        }
        masks.push(mask);
        if masks.len() > cfg.max_lattice_size {
            return None;
        }
    }
    let ids: Vec<String> = masks.iter().map(|m| format!("d{m}")).collect();
    let poset = Poset::from_relation(ids, |x, y| masks[x] & !masks[y] == 0)
        .expect("inclusion of down-sets is a partial order");
    Some(FiniteLattice::from_poset(poset).expect("down-sets form a lattice under inclusion"))
}

/// Random monotone self-map: a composition of clamps x -> (x v a) ^ b.
/// Each round is monotone, so the composite is.
fn monotone_selection(rng: &mut Stream, l: &FiniteLattice) -> Vec<usize> {
    let rounds = rng.range(1, 2);
    let mut map: Vec<usize> = (0..l.len()).collect();
    for _ in 0..rounds {
        let a = rng.below(l.len());
        let b = rng.below(l.len());
        for x in map.iter_mut() {
            *x = l.meet(l.join(*x, a), l.join(b, a));
        }
    }
    map
}

fn interval(l: &FiniteLattice, lo: usize, hi: usize) -> Vec<usize> {
    (0..l.len()).filter(|&y| l.le(lo, y) && l.le(y, hi)).collect()
}

/// Incomparable pairs whose strict down-sets and strict up-sets coincide.
/// Such twins can share a value set: every third element compares to both
/// of them the same way, so the strict-pair closure conditions survive.
fn twin_pairs(l: &FiniteLattice) -> Vec<(usize, usize)> {
    let n = l.len();
    let mut out = Vec::new();
    for a in 0..n {
        'candidates: for b in (a + 1)..n {
            if l.le(a, b) || l.le(b, a) {
                continue;
            }
            for x in 0..n {
                if x != a && x != b && (l.lt(x, a) != l.lt(x, b) || l.lt(a, x) != l.lt(b, x)) {
                    continue 'candidates;
                }
            }
            out.push((a, b));
        }
    }
    out
}

/// Random correspondence on `l`, repaired toward the configured target
/// class by rejection sampling.
///
/// Candidates start from a monotone selection s and come in five shapes:
/// the selection itself, the interval [s(x), s(x) v e] for a monotone upper
/// companion, a randomly thinned interval, and two twin-pair patterns that
/// are weakly monotone but deliberately not strongly: an identity map whose
/// twins share the two-element antichain value {a, b} (no within-value
/// bounds at all), and an escape pattern whose twins share {meet, a, b, top}
/// while everything from join(a, b) up to the top maps to {top} (value
/// bounds exist but differ from the ambient ones). The first two shapes
/// validate as ascending; thinning can break everything, which is the point
/// for the weaker target classes. Every returned instance has been
/// re-validated against the target class, whatever shape produced it.
pub fn gen_correspondence(cfg: &GeneratorConfig, l: &Arc<FiniteLattice>) -> Result<Correspondence, GenError> {
    gen_correspondence_capped(cfg, l, REPAIR_CAP)
}

pub(crate) fn gen_correspondence_capped(
    cfg: &GeneratorConfig,
    l: &Arc<FiniteLattice>,
    cap: usize,
) -> Result<Correspondence, GenError> {
    assert!(cfg.max_value_size >= 1, "max_value_size must be at least 1");
    let mut rng = Stream::new(cfg.seed ^ TAG_CORR);
    let mut attempts = 0;
    while attempts < cap {
        attempts += 1;
        let s = monotone_selection(&mut rng, l);
        let shape = match cfg.target_class {
            TargetClass::Ascending => rng.below(2),
            _ => rng.below(5),
        };
        let mut values: Vec<Vec<usize>> = Vec::with_capacity(l.len());
        match shape {
            0 => {
                for &sx in &s {
                    values.push(vec![sx]);
                }
            }
            1 | 2 => {
                let e = rng.below(l.len());
                for &sx in &s {
                    let mut v = interval(l, sx, l.join(sx, e));
                    if shape == 2 {
                        // Thin the interior: endpoints stay so the value
                        // is never empty.
                        v.retain(|&y| y == sx || y == l.join(sx, e) || rng.chance(1, 2));
                    }
                    values.push(v);
                }
            }
            _ => {
                let mut twins = twin_pairs(l);
                if shape == 4 {
                    // The escape pattern needs room above the twins' join.
                    twins.retain(|&(a, b)| l.join(a, b) != l.top());
                }
                if twins.is_empty() {
                    // No usable twins on this carrier; degrade to the
                    // selection shape rather than burn the attempt.
                    for &sx in &s {
                        values.push(vec![sx]);
                    }
                } else {
                    let &(a, b) = rng.pick(&twins);
                    if shape == 3 {
                        for x in 0..l.len() {
                            values.push(if x == a || x == b { vec![a, b] } else { vec![x] });
                        }
                    } else {
                        let bottom_of_value = l.meet(a, b);
                        let escape_from = l.join(a, b);
                        let top = l.top();
                        for x in 0..l.len() {
                            values.push(if x == a || x == b {
                                vec![bottom_of_value, a, b, top]
                            } else if l.le(escape_from, x) && x != top {
                                vec![top]
                            } else {
                                vec![x]
                            });
                        }
                    }
                }
            }
        }
        if values.iter().any(|v| v.len() > cfg.max_value_size) {
            continue;
        }
        let f = Correspondence::from_index_values(Arc::clone(l), values)
            .expect("candidate values are nonempty by construction");
        let accepted = match cfg.target_class {
            TargetClass::Ascending => is_ascending(&f).holds,
            TargetClass::VAscending => is_v_ascending(&f).is_v_ascending(),
            TargetClass::Unconstrained => true,
        };
        if accepted {
            return Ok(f);
        }
    }
    Err(GenError::GenerationExhausted { attempts, target: cfg.target_class })
}
