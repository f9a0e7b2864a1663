//! Shared fixtures and oracles for the integration suites: the two worked
//! examples, the swap counterexample, a curated small-lattice corpus, and
//! the definitional scans the faster library routines are checked against.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use latfix::{
    fixed_points_brute, gen_lattice, greatest_fixed_point, least_fixed_point_via_min_selection,
    least_fixed_point_via_prefixed_points, sup_of_fixed_subset, Correspondence,
    CorrespondenceError, FiniteLattice, GeneratorConfig, LfpMethod, Poset, SupVariant,
};

pub fn lattice_from_pairs(ids: &[&str], pairs: &[(&str, &str)]) -> Arc<FiniteLattice> {
    let poset = Poset::from_pairs(ids.iter().map(|s| s.to_string()).collect(), pairs).unwrap();
    Arc::new(FiniteLattice::from_poset(poset).unwrap())
}

/// 0 below incomparable a, b below 1.
pub fn diamond() -> Arc<FiniteLattice> {
    lattice_from_pairs(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
}

/// Diamond with an extra point 2 above 1.
pub fn capped_diamond() -> Arc<FiniteLattice> {
    lattice_from_pairs(
        &["0", "a", "b", "1", "2"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("1", "2")],
    )
}

pub fn corr(l: &Arc<FiniteLattice>, map: &[(&str, &[&str])]) -> Correspondence {
    let map: BTreeMap<String, Vec<String>> = map
        .iter()
        .map(|(k, vs)| (k.to_string(), vs.iter().map(|v| v.to_string()).collect()))
        .collect();
    Correspondence::new(l.clone(), &map).unwrap()
}

/// First worked example: weakly monotone but not strongly, every point
/// fixed, the middle value not a sublattice.
pub fn golden_diamond() -> Correspondence {
    let l = diamond();
    corr(&l, &[("0", &["0"]), ("a", &["a", "b"]), ("b", &["a", "b"]), ("1", &["1"])])
}

/// Second worked example with the top-of-diamond value tightened to {2}
/// so the strict-pair conditions actually hold; see the dedicated
/// regression test for the looser variant.
pub fn golden_capped() -> Correspondence {
    let l = capped_diamond();
    corr(
        &l,
        &[
            ("0", &["0"]),
            ("a", &["0", "a", "b", "2"]),
            ("b", &["0", "a", "b", "2"]),
            ("1", &["2"]),
            ("2", &["2"]),
        ],
    )
}

/// Looser variant with F(1) = {1, 2}: same fixed set, but the strict
/// lower condition fails at the pair (a, 1) through y = 2, y' = 1.
pub fn loose_capped() -> Correspondence {
    let l = capped_diamond();
    corr(
        &l,
        &[
            ("0", &["0"]),
            ("a", &["0", "a", "b", "2"]),
            ("b", &["0", "a", "b", "2"]),
            ("1", &["1", "2"]),
            ("2", &["2"]),
        ],
    )
}

/// The two-chain swap: no fixed points at all.
pub fn two_chain_swap() -> Correspondence {
    let l = lattice_from_pairs(&["0", "1"], &[("0", "1")]);
    corr(&l, &[("0", &["1"]), ("1", &["0"])])
}

/// Five-element modular non-distributive lattice: three incomparable
/// atoms between bottom and top.
pub fn m3() -> Arc<FiniteLattice> {
    lattice_from_pairs(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
}

/// Pentagon: 0 < a < c < 1 with b incomparable to both a and c.
pub fn n5() -> Arc<FiniteLattice> {
    lattice_from_pairs(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
}

/// Chains 1..=6, the diamond, the capped diamond, M3, N5, and a 2x3 grid:
/// every lattice here has at most six elements, so exhaustive subset
/// scans stay cheap.
pub fn curated_corpus() -> Vec<Arc<FiniteLattice>> {
    let mut out: Vec<Arc<FiniteLattice>> = (1..=6).map(|n| Arc::new(FiniteLattice::chain(n))).collect();
    out.push(diamond());
    out.push(capped_diamond());
    out.push(m3());
    out.push(n5());
    out.push(Arc::new(FiniteLattice::product_of_chains(&[2, 3])));
    out
}

pub fn random_corpus(count: u64) -> Vec<Arc<FiniteLattice>> {
    let base = GeneratorConfig::default();
    (0..count)
        .map(|t| Arc::new(gen_lattice(&base.with_seed(latfix::DEFAULT_SEED.wrapping_add(t)))))
        .collect()
}

pub fn assert_laws(l: &FiniteLattice) {
    let n = l.len();
    for x in 0..n {
        assert_eq!(l.meet(x, x), x, "idempotent meet");
        assert_eq!(l.join(x, x), x, "idempotent join");
        assert!(l.le(l.bottom(), x) && l.le(x, l.top()));
        for y in 0..n {
            assert_eq!(l.meet(x, y), l.meet(y, x), "commutative meet");
            assert_eq!(l.join(x, y), l.join(y, x), "commutative join");
            assert_eq!(l.meet(x, l.join(x, y)), x, "absorption");
            assert_eq!(l.join(x, l.meet(x, y)), x, "absorption");
            // Order consistency: x <= y iff meet picks x iff join picks y.
            assert_eq!(l.le(x, y), l.meet(x, y) == x);
            assert_eq!(l.le(x, y), l.join(x, y) == y);
            for z in 0..n {
                assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)), "associative meet");
                assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)), "associative join");
            }
        }
    }
}

/// Definitional least upper bound: minimum of the common upper bounds,
/// found by scanning, not by the meet/join tables.
pub fn scan_sup(l: &FiniteLattice, subset: &[usize]) -> Option<usize> {
    let uppers: Vec<usize> =
        (0..l.len()).filter(|&u| subset.iter().all(|&s| l.le(s, u))).collect();
    uppers.iter().copied().find(|&u| uppers.iter().all(|&v| l.le(u, v)))
}

pub fn scan_inf(l: &FiniteLattice, subset: &[usize]) -> Option<usize> {
    let lowers: Vec<usize> =
        (0..l.len()).filter(|&u| subset.iter().all(|&s| l.le(u, s))).collect();
    lowers.iter().copied().find(|&u| lowers.iter().all(|&v| l.le(v, u)))
}

/// Every nonempty subset's table-driven sup and inf against the scans.
pub fn assert_subset_bounds(l: &FiniteLattice) {
    let n = l.len();
    assert!(n <= 16, "exhaustive subset scan needs a small lattice");
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let view = l.subset_from_indices(subset.iter().copied());
        let sup = l.sup_of(&view).unwrap();
        let inf = l.inf_of(&view).unwrap();
        assert_eq!(Some(sup), scan_sup(l, &subset), "sup mismatch on {subset:?}");
        assert_eq!(Some(inf), scan_inf(l, &subset), "inf mismatch on {subset:?}");
    }
}

/// Within-set least upper bound, straight from the definition: among the
/// fixed points dominating all of `subset`, the one below every other.
pub fn within_fix_lub(f: &Correspondence, fix: &[usize], subset: &[usize]) -> Option<usize> {
    let l = f.lattice();
    let uppers: Vec<usize> = fix
        .iter()
        .copied()
        .filter(|&t| subset.iter().all(|&u| l.le(u, t)))
        .collect();
    uppers.iter().copied().find(|&t| uppers.iter().all(|&v| l.le(t, v)))
}

/// Both ordered routes against the brute scan's extremes. The selection
/// route may refuse its gate (values without minima); a refusal is fine,
/// a wrong answer is not.
pub fn assert_routes_match(f: &Correspondence) {
    let brute = fixed_points_brute(f);
    let least = brute.least.expect("hypothesis-passing instances have a least fixed point");
    let greatest = brute.greatest.expect("and a greatest one");

    assert_eq!(least_fixed_point_via_prefixed_points(f).unwrap(), least);
    assert_eq!(greatest_fixed_point(f, LfpMethod::PrefixedPoints).unwrap(), greatest);
    match least_fixed_point_via_min_selection(f) {
        Ok(got) => assert_eq!(got, least),
        Err(CorrespondenceError::HypothesisViolated { .. }) => {}
        Err(other) => panic!("unexpected error {other:?}"),
    }
    match greatest_fixed_point(f, LfpMethod::MinSelection) {
        Ok(got) => assert_eq!(got, greatest),
        Err(CorrespondenceError::HypothesisViolated { .. }) => {}
        Err(other) => panic!("unexpected error {other:?}"),
    }
}

/// The restricted supremum against the definitional within-set bound, for
/// every nonempty subset of the fixed set (skipped above 8 members).
pub fn assert_sup_oracle(f: &Correspondence) {
    let brute = fixed_points_brute(f);
    let fix = brute.members.indices();
    if fix.is_empty() || fix.len() > 8 {
        return;
    }
    let l = f.lattice();
    for mask in 1u32..(1 << fix.len()) {
        let subset: Vec<usize> =
            (0..fix.len()).filter(|&i| mask & (1 << i) != 0).map(|i| fix[i]).collect();
        let expected = within_fix_lub(f, &fix, &subset)
            .expect("complete fixed sets have within-set bounds");
        let view = l.subset_from_indices(subset.iter().copied());
        let got = sup_of_fixed_subset(f, &view, SupVariant::ChainSubcomplete).unwrap();
        assert_eq!(got, expected, "subset {subset:?}");
        match sup_of_fixed_subset(f, &view, SupVariant::CompleteValues) {
            Ok(got) => assert_eq!(got, expected, "subset {subset:?}"),
            Err(CorrespondenceError::HypothesisViolated { .. }) => {}
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }
}
