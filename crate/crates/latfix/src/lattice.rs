//! Finite lattices with precomputed meet/join tables.
//!
//! Construction proves the poset is a lattice by locating the least upper
//! bound and greatest lower bound of every pair; the failing pair is
//! reported otherwise. All later operations are table lookups, so the
//! randomized suites can afford millions of queries.

use crate::bits::BitSet;
use crate::poset::{BoundKind, OrderError, Poset};

/// Finite lattice. Meet and join are total n*n tables over element indices.
///
/// Order-consistency invariant: x <= y iff meet(x,y) = x iff join(x,y) = y;
/// the law suite asserts this by full table scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: Poset,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: u32,
    top: u32,
    fingerprint: u64,
}

/// Subset of a specific lattice's elements. The view remembers which lattice
/// it was built from (by fingerprint), so using it against another lattice
/// is reported as a foreign subset instead of silently reading wrong tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetView {
    pub(crate) fingerprint: u64,
    pub(crate) members: BitSet,
}

impl SubsetView {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(index)
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().collect()
    }
}

impl FiniteLattice {
    /// Proves `poset` is a lattice and precomputes its tables.
    pub fn from_poset(poset: Poset) -> Result<Self, OrderError> {
        let n = poset.len();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let j = poset.sup_in(&[x, y]).ok_or_else(|| OrderError::NotALattice {
                    x: poset.id(x).to_string(),
                    y: poset.id(y).to_string(),
                    bound: BoundKind::Join,
                })? as u32;
                let m = poset.inf_in(&[x, y]).ok_or_else(|| OrderError::NotALattice {
                    x: poset.id(x).to_string(),
                    y: poset.id(y).to_string(),
                    bound: BoundKind::Meet,
                })? as u32;
                join[x * n + y] = j;
                join[y * n + x] = j;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
            }
        }
        // A finite lattice has global extremes: fold the tables.
        let mut bottom = 0u32;
        let mut top = 0u32;
        for x in 1..n {
            bottom = meet[bottom as usize * n + x];
            top = join[top as usize * n + x];
        }
        let fingerprint = fingerprint(&poset);
        Ok(FiniteLattice { poset, meet, join, bottom, top, fingerprint })
    }

    /// Chain 0 < 1 < ... < n-1 with decimal ids.
    pub fn chain(n: usize) -> FiniteLattice {
        let ids = (0..n).map(|i| i.to_string()).collect();
        let poset = Poset::from_relation(ids, |x, y| x <= y).expect("chain is a poset");
        FiniteLattice::from_poset(poset).expect("chain is a lattice")
    }

    /// Product of chains with the componentwise order. Element ids are the
    /// coordinate tuples joined with '.', e.g. "1.0.2".
    pub fn product_of_chains(lengths: &[usize]) -> FiniteLattice {
        assert!(!lengths.is_empty() && lengths.iter().all(|&l| l > 0));
        let coords = enumerate_coords(lengths);
        let ids = coords.iter().map(|c| coord_id(c)).collect();
        let poset = Poset::from_relation(ids, |x, y| {
            coords[x].iter().zip(&coords[y]).all(|(a, b)| a <= b)
        })
        .expect("chain product is a poset");
        FiniteLattice::from_poset(poset).expect("chain product is a lattice")
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn ids(&self) -> &[String] {
        self.poset.ids()
    }

    pub fn id(&self, i: usize) -> &str {
        self.poset.id(i)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.poset.index_of(id)
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.poset.le(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.poset.lt(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom as usize
    }

    pub fn top(&self) -> usize {
        self.top as usize
    }

    /// Builds a subset view from element ids.
    pub fn subset_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<SubsetView, OrderError> {
        let mut members = BitSet::new(self.len());
        for id in ids {
            let i = self
                .index_of(id.as_ref())
                .ok_or_else(|| OrderError::UnknownElement(id.as_ref().to_string()))?;
            members.insert(i);
        }
        Ok(SubsetView { fingerprint: self.fingerprint, members })
    }

    /// Builds a subset view from indices. Panics on out-of-range indices;
    /// use `subset_from_ids` for unvalidated input.
    pub fn subset_from_indices(&self, indices: impl IntoIterator<Item = usize>) -> SubsetView {
        SubsetView {
            fingerprint: self.fingerprint,
            members: BitSet::from_indices(self.len(), indices),
        }
    }

    pub fn full_subset(&self) -> SubsetView {
        self.subset_from_indices(0..self.len())
    }

    /// Rejects views built from a different lattice.
    pub(crate) fn check_subset(&self, view: &SubsetView) -> Result<(), OrderError> {
        if view.fingerprint != self.fingerprint || view.members.universe() != self.len() {
            return Err(OrderError::ForeignSubset);
        }
        Ok(())
    }

    /// Supremum of a subset. The empty supremum is the bottom element.
    pub fn sup_of(&self, view: &SubsetView) -> Result<usize, OrderError> {
        self.check_subset(view)?;
        Ok(view.members.iter().fold(self.bottom(), |acc, x| self.join(acc, x)))
    }

    /// Infimum of a subset. The empty infimum is the top element.
    pub fn inf_of(&self, view: &SubsetView) -> Result<usize, OrderError> {
        self.check_subset(view)?;
        Ok(view.members.iter().fold(self.top(), |acc, x| self.meet(acc, x)))
    }

    /// Order dual: same elements, reversed relation, meet and join swapped.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.len();
        let poset = Poset::from_relation(self.ids().to_vec(), |x, y| self.le(y, x))
            .expect("dual of a poset is a poset");
        let mut lat = FiniteLattice {
            poset,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
            fingerprint: 0,
        };
        lat.fingerprint = fingerprint(&lat.poset);
        debug_assert_eq!(lat.len(), n);
        lat
    }

    /// The interval [b, top] as a lattice of its own, with a map from new
    /// indices back to indices of `self`. Intervals are closed under meet
    /// and join, so the restriction is again a lattice.
    pub fn up_interval(&self, b: usize) -> (FiniteLattice, Vec<usize>) {
        let old: Vec<usize> = (0..self.len()).filter(|&s| self.le(b, s)).collect();
        let ids = old.iter().map(|&i| self.id(i).to_string()).collect();
        let poset =
            Poset::from_relation(ids, |x, y| self.le(old[x], old[y])).expect("interval inherits the order");
        let lat = FiniteLattice::from_poset(poset).expect("interval of a lattice is a lattice");
        (lat, old)
    }

    pub(crate) fn id_vec(&self, indices: impl IntoIterator<Item = usize>) -> Vec<String> {
        self.poset.id_vec(indices)
    }
}

fn fingerprint(poset: &Poset) -> u64 {
    // FNV-1a over the element ids and the relation matrix; deterministic
    // across runs so serialized reports stay reproducible.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |byte: u8| {
        h ^= byte as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    for id in poset.ids() {
        for b in id.as_bytes() {
            eat(*b);
        }
        eat(0xff);
    }
    let n = poset.len();
    for x in 0..n {
        for y in 0..n {
            eat(poset.le(x, y) as u8);
        }
    }
    h
}

fn enumerate_coords(lengths: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &len in lengths {
        let mut next = Vec::with_capacity(out.len() * len);
        for prefix in &out {
            for v in 0..len {
                let mut c = prefix.clone();
                c.push(v);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn coord_id(coords: &[usize]) -> String {
    coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn diamond() -> FiniteLattice {
        let p = Poset::from_pairs(ids(&["0", "a", "b", "1"]), &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
            .unwrap();
        FiniteLattice::from_poset(p).unwrap()
    }

    fn capped_diamond() -> FiniteLattice {
        let p = Poset::from_pairs(
            ids(&["0", "a", "b", "1", "2"]),
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("1", "2")],
        )
        .unwrap();
        FiniteLattice::from_poset(p).unwrap()
    }

    #[test]
    fn diamond_tables() {
        let l = diamond();
        let (z, a, b, o) = (0, 1, 2, 3);
        assert_eq!(l.meet(a, b), z);
        assert_eq!(l.join(a, b), o);
        assert_eq!(l.meet(a, o), a);
        assert_eq!(l.join(a, z), a);
        assert_eq!(l.bottom(), z);
        assert_eq!(l.top(), o);
    }

    #[test]
    fn antichain_pair_is_not_a_lattice() {
        let p = Poset::from_pairs(ids(&["x", "y"]), &[] as &[(&str, &str)]).unwrap();
        match FiniteLattice::from_poset(p) {
            Err(OrderError::NotALattice { x, y, .. }) => {
                assert_eq!((x.as_str(), y.as_str()), ("x", "y"));
            }
            other => panic!("expected NotALattice, got {other:?}"),
        }
    }

    #[test]
    fn sup_inf_with_empty_conventions() {
        let l = capped_diamond();
        let empty = l.subset_from_indices([]);
        assert_eq!(l.sup_of(&empty).unwrap(), l.bottom());
        assert_eq!(l.inf_of(&empty).unwrap(), l.top());
        // {a, b, 2}: only common upper bound is 2; lower bounds are {0}.
        let v = l.subset_from_ids(&["a", "b", "2"]).unwrap();
        assert_eq!(l.id(l.sup_of(&v).unwrap()), "2");
        assert_eq!(l.id(l.inf_of(&v).unwrap()), "0");
    }

    #[test]
    fn foreign_subsets_are_rejected() {
        let l1 = diamond();
        let l2 = FiniteLattice::chain(4);
        let view = l2.full_subset();
        assert_eq!(l1.sup_of(&view), Err(OrderError::ForeignSubset));
    }

    #[test]
    fn unknown_subset_member() {
        let l = diamond();
        assert_eq!(l.subset_from_ids(&["0", "zz"]), Err(OrderError::UnknownElement("zz".into())));
    }

    #[test]
    fn dual_swaps_everything() {
        let l = capped_diamond();
        let d = l.dual();
        assert_eq!(d.bottom(), l.top());
        assert_eq!(d.top(), l.bottom());
        let (a, b) = (1, 2);
        assert_eq!(d.meet(a, b), l.join(a, b));
        assert_eq!(d.join(a, b), l.meet(a, b));
        assert!(d.le(4, 0), "top <= bottom in the dual");
        // Involution restores the original tables.
        assert_eq!(d.dual(), l);
    }

    #[test]
    fn up_interval_of_capped_diamond() {
        let l = capped_diamond();
        let a = l.index_of("a").unwrap();
        let (interval, back) = l.up_interval(a);
        let got: Vec<&str> = back.iter().map(|&i| l.id(i)).collect();
        assert_eq!(got, vec!["a", "1", "2"]);
        assert_eq!(interval.bottom(), 0);
        assert_eq!(interval.id(interval.top()), "2");
    }

    #[test]
    fn product_of_chains_is_componentwise() {
        let l = FiniteLattice::product_of_chains(&[2, 2]);
        assert_eq!(l.len(), 4);
        let lo = l.index_of("0.1").unwrap();
        let hi = l.index_of("1.0").unwrap();
        assert_eq!(l.id(l.join(lo, hi)), "1.1");
        assert_eq!(l.id(l.meet(lo, hi)), "0.0");
    }

    #[test]
    fn singleton_lattice() {
        let l = FiniteLattice::chain(1);
        assert_eq!(l.bottom(), l.top());
        assert_eq!(l.sup_of(&l.full_subset()).unwrap(), 0);
    }
}
