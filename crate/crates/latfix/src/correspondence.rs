//! Set-valued maps F: S -> 2^S on a finite lattice and their monotonicity.
//!
//! Two strengths of monotonicity matter here. The strong form quantifies
//! over all comparable pairs including x = x', which forces every value to
//! be a sublattice. The weak form only constrains strictly comparable
//! pairs, so values can be antichains; the strong form implies the weak one
//! but not conversely.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::BitSet;
use crate::lattice::{FiniteLattice, SubsetView};
use crate::poset::OrderError;
use crate::report::CheckReport;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CorrespondenceError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("no value listed for element `{0}`: the map must be total")]
    MissingValue(String),
    #[error("value at `{0}` is empty: values must be nonempty")]
    EmptyValue(String),
    #[error("hypothesis violated ({hypothesis}): {}", report.detail)]
    HypothesisViolated { hypothesis: String, report: CheckReport },
    #[error("the requested subset contains non-fixed points: {0:?}")]
    NotFixedPoints(Vec<String>),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

/// Total correspondence with nonempty values, all within one lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    lattice: Arc<FiniteLattice>,
    values: Vec<BitSet>,
}

impl Correspondence {
    /// Builds from an id-keyed map. The map must mention every element of
    /// the lattice exactly once and every value must be nonempty.
    pub fn new(
        lattice: Arc<FiniteLattice>,
        map: &BTreeMap<String, Vec<String>>,
    ) -> Result<Self, CorrespondenceError> {
        for key in map.keys() {
            if lattice.index_of(key).is_none() {
                return Err(OrderError::UnknownElement(key.clone()).into());
            }
        }
        let mut values = Vec::with_capacity(lattice.len());
        for x in 0..lattice.len() {
            let id = lattice.id(x);
            let val_ids = map.get(id).ok_or_else(|| CorrespondenceError::MissingValue(id.to_string()))?;
            if val_ids.is_empty() {
                return Err(CorrespondenceError::EmptyValue(id.to_string()));
            }
            let mut bits = BitSet::new(lattice.len());
            for v in val_ids {
                let vi = lattice
                    .index_of(v)
                    .ok_or_else(|| OrderError::UnknownElement(v.clone()))?;
                bits.insert(vi);
            }
            values.push(bits);
        }
        Ok(Correspondence { lattice, values })
    }

    /// Builds from index-valued sets, one per element in order.
    pub fn from_index_values(
        lattice: Arc<FiniteLattice>,
        value_sets: Vec<Vec<usize>>,
    ) -> Result<Self, CorrespondenceError> {
        assert_eq!(value_sets.len(), lattice.len(), "one value set per element");
        let mut values = Vec::with_capacity(lattice.len());
        for (x, set) in value_sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(CorrespondenceError::EmptyValue(lattice.id(x).to_string()));
            }
            values.push(BitSet::from_indices(lattice.len(), set));
        }
        Ok(Correspondence { lattice, values })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> Arc<FiniteLattice> {
        Arc::clone(&self.lattice)
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// Membership test y in F(x).
    pub fn value_contains(&self, x: usize, y: usize) -> bool {
        self.values[x].contains(y)
    }

    /// The value F(x) as ascending indices.
    pub fn value(&self, x: usize) -> Vec<usize> {
        self.values[x].iter().collect()
    }

    pub fn value_view(&self, x: usize) -> SubsetView {
        self.lattice.subset_from_indices(self.values[x].iter())
    }

    /// Same values over the dual lattice.
    pub fn dual(&self) -> Correspondence {
        let dual = Arc::new(self.lattice.dual());
        let values = self
            .values
            .iter()
            .map(|v| BitSet::from_indices(dual.len(), v.iter()))
            .collect();
        Correspondence { lattice: dual, values }
    }

    /// Id-keyed rendering of the map, for serialization.
    pub fn map_ids(&self) -> BTreeMap<String, Vec<String>> {
        (0..self.len())
            .map(|x| {
                (
                    self.lattice.id(x).to_string(),
                    self.values[x].iter().map(|y| self.lattice.id(y).to_string()).collect(),
                )
            })
            .collect()
    }
}

/// Strong monotonicity: for every x <= x' (including x = x'), every
/// y in F(x) and y' in F(x'), meet(y, y') is in F(x) and join(y, y') is in
/// F(x'). Witness order on failure: [x, x', y, y'].
pub fn is_ascending(f: &Correspondence) -> CheckReport {
    let l = f.lattice();
    for x in 0..l.len() {
        for xp in 0..l.len() {
            if !l.le(x, xp) {
                continue;
            }
            for y in f.value(x) {
                for yp in f.value(xp) {
                    let m = l.meet(y, yp);
                    if !f.value_contains(x, m) {
                        return CheckReport::fail(
                            l.id_vec([x, xp, y, yp]),
                            format!(
                                "meet(`{}`, `{}`) = `{}` is not in F(`{}`)",
                                l.id(y), l.id(yp), l.id(m), l.id(x)
                            ),
                        );
                    }
                    let j = l.join(y, yp);
                    if !f.value_contains(xp, j) {
                        return CheckReport::fail(
                            l.id_vec([x, xp, y, yp]),
                            format!(
                                "join(`{}`, `{}`) = `{}` is not in F(`{}`)",
                                l.id(y), l.id(yp), l.id(j), l.id(xp)
                            ),
                        );
                    }
                }
            }
        }
    }
    CheckReport::pass("meets land in the lower value, joins in the upper, for all comparable pairs")
}

/// Weak monotonicity report: the two strict-pair conditions separately,
/// plus the strong check for reference.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AscendingReport {
    pub ascending: CheckReport,
    pub lower_v: CheckReport,
    pub upper_v: CheckReport,
}

impl AscendingReport {
    /// Both strict-pair conditions hold.
    pub fn is_v_ascending(&self) -> bool {
        self.lower_v.holds && self.upper_v.holds
    }
}

/// Checks the strict-pair conditions: for every x < x', y in F(x) and
/// y' in F(x'), the lower condition asks meet(y, y') in F(x) and the upper
/// condition asks join(y, y') in F(x'). Witness order: [x, x', y, y'].
pub fn is_v_ascending(f: &Correspondence) -> AscendingReport {
    AscendingReport {
        ascending: is_ascending(f),
        lower_v: lower_v_report(f),
        upper_v: upper_v_report(f),
    }
}

pub(crate) fn lower_v_report(f: &Correspondence) -> CheckReport {
    let l = f.lattice();
    for x in 0..l.len() {
        for xp in 0..l.len() {
            if !l.lt(x, xp) {
                continue;
            }
            for y in f.value(x) {
                for yp in f.value(xp) {
                    let m = l.meet(y, yp);
                    if !f.value_contains(x, m) {
                        return CheckReport::fail(
                            l.id_vec([x, xp, y, yp]),
                            format!(
                                "meet(`{}`, `{}`) = `{}` is not in F(`{}`)",
                                l.id(y), l.id(yp), l.id(m), l.id(x)
                            ),
                        );
                    }
                }
            }
        }
    }
    CheckReport::pass("meets across strictly comparable pairs land in the lower value")
}

pub(crate) fn upper_v_report(f: &Correspondence) -> CheckReport {
    let l = f.lattice();
    for x in 0..l.len() {
        for xp in 0..l.len() {
            if !l.lt(x, xp) {
                continue;
            }
            for y in f.value(x) {
                for yp in f.value(xp) {
                    let j = l.join(y, yp);
                    if !f.value_contains(xp, j) {
                        return CheckReport::fail(
                            l.id_vec([x, xp, y, yp]),
                            format!(
                                "join(`{}`, `{}`) = `{}` is not in F(`{}`)",
                                l.id(y), l.id(yp), l.id(j), l.id(xp)
                            ),
                        );
                    }
                }
            }
        }
    }
    CheckReport::pass("joins across strictly comparable pairs land in the upper value")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn lattice(elems: &[&str], pairs: &[(&str, &str)]) -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::from_poset(Poset::from_pairs(ids(elems), pairs).unwrap()).unwrap())
    }

    fn diamond() -> Arc<FiniteLattice> {
        lattice(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    }

    fn corr(l: &Arc<FiniteLattice>, pairs: &[(&str, &[&str])]) -> Correspondence {
        let map: BTreeMap<String, Vec<String>> = pairs
            .iter()
            .map(|(k, vs)| (k.to_string(), vs.iter().map(|v| v.to_string()).collect()))
            .collect();
        Correspondence::new(Arc::clone(l), &map).unwrap()
    }

    /// The antichain-valued correspondence on the diamond.
    fn diamond_antichain() -> Correspondence {
        let l = diamond();
        corr(&l, &[("0", &["0"]), ("a", &["a", "b"]), ("b", &["a", "b"]), ("1", &["1"])])
    }

    #[test]
    fn identity_is_ascending() {
        let l = diamond();
        let f = corr(&l, &[("0", &["0"]), ("a", &["a"]), ("b", &["b"]), ("1", &["1"])]);
        assert!(is_ascending(&f).holds);
        let r = is_v_ascending(&f);
        assert!(r.is_v_ascending() && r.ascending.holds);
    }

    #[test]
    fn constant_sublattice_value_is_ascending() {
        let l = diamond();
        let f = corr(&l, &[("0", &["0", "a"]), ("a", &["0", "a"]), ("b", &["0", "a"]), ("1", &["0", "a"])]);
        assert!(is_ascending(&f).holds);
    }

    #[test]
    fn antichain_values_are_weakly_but_not_strongly_monotone() {
        let f = diamond_antichain();
        let r = is_v_ascending(&f);
        assert!(r.is_v_ascending());
        assert!(!r.ascending.holds);
        // The failure is the reflexive pair at `a`: meet(a, b) = 0 escapes.
        let w = r.ascending.witness.clone().unwrap();
        assert_eq!(w[0], w[1], "witness should be a reflexive pair, got {w:?}");
    }

    #[test]
    fn two_chain_swap_fails_lower_v() {
        let l = lattice(&["0", "1"], &[("0", "1")]);
        let f = corr(&l, &[("0", &["1"]), ("1", &["0"])]);
        let r = is_v_ascending(&f);
        assert!(!r.lower_v.holds);
        assert_eq!(r.lower_v.witness, Some(ids(&["0", "1", "1", "0"])));
    }

    #[test]
    fn totality_and_nonemptiness_are_enforced() {
        let l = diamond();
        let mut map = BTreeMap::new();
        map.insert("0".to_string(), vec!["0".to_string()]);
        assert_eq!(
            Correspondence::new(Arc::clone(&l), &map),
            Err(CorrespondenceError::MissingValue("a".into()))
        );
        let full: BTreeMap<String, Vec<String>> = [
            ("0", vec!["0"]),
            ("a", vec![]),
            ("b", vec!["b"]),
            ("1", vec!["1"]),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.into_iter().map(String::from).collect()))
        .collect();
        assert_eq!(
            Correspondence::new(Arc::clone(&l), &full),
            Err(CorrespondenceError::EmptyValue("a".into()))
        );
    }

    #[test]
    fn unknown_value_element_is_rejected() {
        let l = diamond();
        let map: BTreeMap<String, Vec<String>> = [
            ("0", vec!["zz"]),
            ("a", vec!["a"]),
            ("b", vec!["b"]),
            ("1", vec!["1"]),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.into_iter().map(String::from).collect()))
        .collect();
        assert!(matches!(
            Correspondence::new(Arc::clone(&l), &map),
            Err(CorrespondenceError::Order(OrderError::UnknownElement(_)))
        ));
    }

    #[test]
    fn dual_swaps_the_two_weak_conditions() {
        let l = lattice(&["0", "1"], &[("0", "1")]);
        // Lower fails here (meet(1, 0) = 0 escapes F(0)) while upper holds,
        // so the dual must show the mirror image.
        let f = corr(&l, &[("0", &["1"]), ("1", &["0", "1"])]);
        let r = is_v_ascending(&f);
        let rd = is_v_ascending(&f.dual());
        assert_eq!(r.lower_v.holds, rd.upper_v.holds);
        assert_eq!(r.upper_v.holds, rd.lower_v.holds);
    }

    #[test]
    fn map_ids_round_trips() {
        let f = diamond_antichain();
        let map = f.map_ids();
        let rebuilt = Correspondence::new(f.lattice_arc(), &map).unwrap();
        assert_eq!(f, rebuilt);
    }
}
