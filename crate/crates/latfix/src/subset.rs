//! Closure properties of subsets of a finite lattice.
//!
//! Subcompleteness asks that arbitrary nonempty sups and infs of a subset
//! stay inside it. On a finite lattice that is equivalent to closure under
//! the binary operations (finite bounds are folds of binary ones), so the
//! checkers scan pairs; the exhaustive subset scan survives as a test-time
//! oracle up to the shared size cap.

use crate::lattice::{FiniteLattice, SubsetView};
use crate::poset::{OrderError, EXHAUSTIVE_CAP};
use crate::report::{CheckReport, Direction, TheoremOutcome};

/// Is `t` closed under binary meet and join?
pub fn is_sublattice(l: &FiniteLattice, t: &SubsetView) -> Result<CheckReport, OrderError> {
    pairwise_closed(l, t, "sublattice")
}

/// Is every nonempty sup and inf of members of `t` again in `t`?
///
/// Equivalent to pairwise closure on a finite lattice; the exhaustive
/// subset scan is kept as a test oracle rather than shipped here.
pub fn is_subcomplete(l: &FiniteLattice, t: &SubsetView) -> Result<CheckReport, OrderError> {
    pairwise_closed(l, t, "subcomplete sublattice")
}

fn pairwise_closed(l: &FiniteLattice, t: &SubsetView, what: &str) -> Result<CheckReport, OrderError> {
    l.check_subset(t)?;
    if t.is_empty() {
        return Err(OrderError::EmptySubset);
    }
    let members = t.indices();
    for (k, &x) in members.iter().enumerate() {
        for &y in &members[k..] {
            let m = l.meet(x, y);
            if !t.contains(m) {
                return Ok(CheckReport::fail(
                    l.id_vec([x, y]),
                    format!("not a {what}: meet(`{}`, `{}`) = `{}` escapes the subset", l.id(x), l.id(y), l.id(m)),
                ));
            }
            let j = l.join(x, y);
            if !t.contains(j) {
                return Ok(CheckReport::fail(
                    l.id_vec([x, y]),
                    format!("not a {what}: join(`{}`, `{}`) = `{}` escapes the subset", l.id(x), l.id(y), l.id(j)),
                ));
            }
        }
    }
    Ok(CheckReport::pass(format!("{what}: closed under meet and join")))
}

/// Does every nonempty chain in `t` have its sup (upwards) and/or inf
/// (downwards) inside `t`?
///
/// On a finite carrier every nonempty chain contains its own endpoints, so
/// this holds for every nonempty subset. Up to the size cap the check still
/// enumerates chains so the triviality is verified rather than assumed; the
/// classical failures need infinite chains, e.g. an interval of the reals
/// with one endpoint removed, which is out of scope for this crate.
pub fn is_chain_subcomplete(
    l: &FiniteLattice,
    t: &SubsetView,
    direction: Direction,
) -> Result<CheckReport, OrderError> {
    l.check_subset(t)?;
    if t.is_empty() {
        return Err(OrderError::EmptySubset);
    }
    let members = t.indices();
    let k = members.len();
    if k > EXHAUSTIVE_CAP {
        return Ok(CheckReport::pass(
            "finite chains contain their endpoints; holds for every nonempty subset",
        ));
    }
    for mask in 1u64..(1 << k) {
        let chain: Vec<usize> =
            (0..k).filter(|i| mask & (1 << i) != 0).map(|i| members[i]).collect();
        let is_chain =
            chain.iter().all(|&x| chain.iter().all(|&y| l.le(x, y) || l.le(y, x)));
        if !is_chain {
            continue;
        }
        if direction.covers_up() {
            let sup = chain.iter().fold(l.bottom(), |acc, &x| l.join(acc, x));
            if !t.contains(sup) {
                return Ok(CheckReport::fail(l.id_vec(chain), "chain sup escapes the subset"));
            }
        }
        if direction.covers_down() {
            let inf = chain.iter().fold(l.top(), |acc, &x| l.meet(acc, x));
            if !t.contains(inf) {
                return Ok(CheckReport::fail(l.id_vec(chain), "chain inf escapes the subset"));
            }
        }
    }
    Ok(CheckReport::pass("every nonempty chain keeps its bounds in the subset"))
}

/// Bound-transport check between two subsets sharing a point.
///
/// Downwards: if `b` is chain-closed downwards and meet(a, y) lands in `b`
/// for every a in `a_set` other than `x` and every y in `b`, then the
/// infimum of `a_set` (taken in the whole lattice) must lie in `b`.
/// Upwards is the order dual. `Both` runs the two checks in sequence.
pub fn veinott_check(
    l: &FiniteLattice,
    a_set: &SubsetView,
    b_set: &SubsetView,
    x: usize,
    direction: Direction,
) -> Result<TheoremOutcome, OrderError> {
    l.check_subset(a_set)?;
    l.check_subset(b_set)?;
    if a_set.is_empty() || b_set.is_empty() {
        return Err(OrderError::EmptySubset);
    }
    if !a_set.contains(x) || !b_set.contains(x) {
        return Err(OrderError::XNotInIntersection(l.id(x).to_string()));
    }
    if direction.covers_down() {
        let out = veinott_one_way(l, a_set, b_set, x, false)?;
        if !out.is_verified() {
            return Ok(out);
        }
    }
    if direction.covers_up() {
        let out = veinott_one_way(l, a_set, b_set, x, true)?;
        if !out.is_verified() {
            return Ok(out);
        }
    }
    Ok(TheoremOutcome::Verified {
        detail: "the transported bound of the first subset lies in the second".into(),
    })
}

fn veinott_one_way(
    l: &FiniteLattice,
    a_set: &SubsetView,
    b_set: &SubsetView,
    x: usize,
    upwards: bool,
) -> Result<TheoremOutcome, OrderError> {
    let chain_dir = if upwards { Direction::Up } else { Direction::Down };
    let chains = is_chain_subcomplete(l, b_set, chain_dir)?;
    if !chains.holds {
        return Ok(TheoremOutcome::HypothesesNotMet {
            hypothesis: format!("second subset is chain-closed {}", if upwards { "upwards" } else { "downwards" }),
            report: chains,
        });
    }
    for a in a_set.indices() {
        if a == x {
            continue;
        }
        for b in b_set.indices() {
            let bound = if upwards { l.join(a, b) } else { l.meet(a, b) };
            if !b_set.contains(bound) {
                let op = if upwards { "join" } else { "meet" };
                return Ok(TheoremOutcome::HypothesesNotMet {
                    hypothesis: format!("{op}s of the first subset into the second stay in the second"),
                    report: CheckReport::fail(
                        l.id_vec([a, b]),
                        format!("{op}(`{}`, `{}`) = `{}` escapes", l.id(a), l.id(b), l.id(if upwards { l.join(a, b) } else { l.meet(a, b) })),
                    ),
                });
            }
        }
    }
    let bound = if upwards { l.sup_of(a_set)? } else { l.inf_of(a_set)? };
    if !b_set.contains(bound) {
        return Ok(TheoremOutcome::ConclusionViolated {
            report: CheckReport::fail(
                vec![l.id(bound).to_string()],
                format!(
                    "{} of the first subset is `{}`, outside the second subset",
                    if upwards { "sup" } else { "inf" },
                    l.id(bound)
                ),
            ),
        });
    }
    Ok(TheoremOutcome::Verified { detail: "bound lies in the second subset".into() })
}
