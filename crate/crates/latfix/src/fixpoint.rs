//! Fixed points of set-valued maps and the order structure of the fixed set.
//!
//! Everything about the fixed set is measured in the induced order: bounds
//! are least upper bounds *within* the set, not ambient meets and joins
//! projected onto it. A set like {0, a, b, 2} inside a larger lattice can be
//! a complete lattice in its own right while the ambient join of a and b
//! escapes it, so conflating the two orders silently accepts wrong answers.
//! Helpers here always scan within the member set.

use serde::{Deserialize, Serialize};

use crate::correspondence::{lower_v_report, upper_v_report, Correspondence, CorrespondenceError};
use crate::lattice::{FiniteLattice, SubsetView};
use crate::poset::EXHAUSTIVE_CAP;
use crate::report::{CheckReport, Direction, TheoremOutcome};
use crate::subset::{is_chain_subcomplete, is_subcomplete};

/// The fixed set Fix(F) = { s : s in F(s) } with its induced-order summary.
///
/// `least`/`greatest` are genuine minimum/maximum members when those exist;
/// a nonempty fixed set without a minimum reports `least: None`.
/// `is_complete_lattice` asks for induced pairwise bounds within the
/// members (a nonempty finite lattice is complete); the empty set is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointSet {
    pub members: SubsetView,
    pub least: Option<usize>,
    pub greatest: Option<usize>,
    pub is_complete_lattice: bool,
}

/// Exhaustive fixed-point scan. No hypotheses: works for any correspondence.
pub fn fixed_points_brute(f: &Correspondence) -> FixedPointSet {
    let l = f.lattice();
    let fixed: Vec<usize> = (0..l.len()).filter(|&s| f.value_contains(s, s)).collect();
    let members = l.subset_from_indices(fixed.iter().copied());
    let least = fixed.iter().copied().find(|&m| fixed.iter().all(|&e| l.le(m, e)));
    let greatest = fixed.iter().copied().find(|&m| fixed.iter().all(|&e| l.le(e, m)));
    let is_complete_lattice = induced_complete(l, &members).holds;
    FixedPointSet { members, least, greatest, is_complete_lattice }
}

/// Least upper bound of `of` within `within`, under the induced order:
/// the least member of `within` that dominates everything in `of`.
pub(crate) fn induced_sup_within(l: &FiniteLattice, within: &[usize], of: &[usize]) -> Option<usize> {
    let uppers: Vec<usize> = within
        .iter()
        .copied()
        .filter(|&w| of.iter().all(|&a| l.le(a, w)))
        .collect();
    uppers.iter().copied().find(|&u| uppers.iter().all(|&v| l.le(u, v)))
}

pub(crate) fn induced_inf_within(l: &FiniteLattice, within: &[usize], of: &[usize]) -> Option<usize> {
    let lowers: Vec<usize> = within
        .iter()
        .copied()
        .filter(|&w| of.iter().all(|&a| l.le(w, a)))
        .collect();
    lowers.iter().copied().find(|&u| lowers.iter().all(|&v| l.le(v, u)))
}

/// Is `set` a complete lattice under the induced order?
///
/// Pairwise induced bounds suffice on a finite carrier (finite induced
/// lattices are complete); the exhaustive subset scan is used by callers
/// that verify conclusions, and by tests as an independent oracle. This
/// deliberately does not reuse the ambient meet/join tables.
pub fn induced_complete(l: &FiniteLattice, set: &SubsetView) -> CheckReport {
    if set.is_empty() {
        return CheckReport::fail(vec![], "the set is empty");
    }
    let members = set.indices();
    for (k, &u) in members.iter().enumerate() {
        for &v in &members[k..] {
            if induced_sup_within(l, &members, &[u, v]).is_none() {
                return CheckReport::fail(
                    l.id_vec([u, v]),
                    format!("no least upper bound of `{}`, `{}` within the set", l.id(u), l.id(v)),
                );
            }
            if induced_inf_within(l, &members, &[u, v]).is_none() {
                return CheckReport::fail(
                    l.id_vec([u, v]),
                    format!("no greatest lower bound of `{}`, `{}` within the set", l.id(u), l.id(v)),
                );
            }
        }
    }
    CheckReport::pass("nonempty and closed under induced pairwise bounds")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LfpMethod {
    /// Infimum of the points that weakly dominate one of their own values.
    PrefixedPoints,
    /// Infimum of the points whose value minimum sits weakly below them.
    MinSelection,
}

/// Least fixed point as the lattice infimum of
/// C = { c : some y in F(c) has y <= c }.
///
/// Requires the lower weak-monotonicity condition (checked; values are
/// nonempty by construction and chain bounds are automatic on finite
/// carriers). The result is asserted to be a fixed point and a minimum of
/// the fixed set before it is returned.
pub fn least_fixed_point_via_prefixed_points(f: &Correspondence) -> Result<usize, CorrespondenceError> {
    let lower = lower_v_report(f);
    if !lower.holds {
        return Err(CorrespondenceError::HypothesisViolated {
            hypothesis: "lower weak monotonicity".into(),
            report: lower,
        });
    }
    let l = f.lattice();
    let prefixed: Vec<usize> =
        (0..l.len()).filter(|&c| f.value(c).into_iter().any(|y| l.le(y, c))).collect();
    // The top element always qualifies, so the fold below is never empty.
    let a = prefixed.iter().fold(l.top(), |acc, &c| l.meet(acc, c));
    certify_least(f, a)?;
    Ok(a)
}

/// Least fixed point through the minimum selection x -> min F(x):
/// the infimum of A = { x : min F(x) <= x }.
///
/// Requires lower weak monotonicity and a least element in every value.
pub fn least_fixed_point_via_min_selection(f: &Correspondence) -> Result<usize, CorrespondenceError> {
    let lower = lower_v_report(f);
    if !lower.holds {
        return Err(CorrespondenceError::HypothesisViolated {
            hypothesis: "lower weak monotonicity".into(),
            report: lower,
        });
    }
    let l = f.lattice();
    let mut mins = Vec::with_capacity(l.len());
    for x in 0..l.len() {
        let value = f.value(x);
        match value.iter().copied().find(|&m| value.iter().all(|&y| l.le(m, y))) {
            Some(m) => mins.push(m),
            None => {
                return Err(CorrespondenceError::HypothesisViolated {
                    hypothesis: "every value has a least element".into(),
                    report: CheckReport::fail(
                        vec![l.id(x).to_string()],
                        format!("F(`{}`) has no least element", l.id(x)),
                    ),
                })
            }
        }
    }
    let dominated: Vec<usize> = (0..l.len()).filter(|&x| l.le(mins[x], x)).collect();
    let star = dominated.iter().fold(l.top(), |acc, &x| l.meet(acc, x));
    certify_least(f, star)?;
    Ok(star)
}

fn certify_least(f: &Correspondence, a: usize) -> Result<(), CorrespondenceError> {
    let l = f.lattice();
    if !f.value_contains(a, a) {
        return Err(CorrespondenceError::InternalContradiction(format!(
            "computed point `{}` is not a fixed point",
            l.id(a)
        )));
    }
    for e in 0..l.len() {
        if f.value_contains(e, e) && !l.le(a, e) {
            return Err(CorrespondenceError::InternalContradiction(format!(
                "computed point `{}` does not sit below the fixed point `{}`",
                l.id(a),
                l.id(e)
            )));
        }
    }
    Ok(())
}

/// Greatest fixed point: the chosen method run on the order dual.
pub fn greatest_fixed_point(f: &Correspondence, method: LfpMethod) -> Result<usize, CorrespondenceError> {
    let dual = f.dual();
    let out = match method {
        LfpMethod::PrefixedPoints => least_fixed_point_via_prefixed_points(&dual),
        LfpMethod::MinSelection => least_fixed_point_via_min_selection(&dual),
    };
    out.map_err(|e| match e {
        // The dual run phrases its hypotheses in dual terms; translate back.
        CorrespondenceError::HypothesisViolated { hypothesis, report } => {
            let hypothesis = match hypothesis.as_str() {
                "lower weak monotonicity" => "upper weak monotonicity".to_string(),
                "every value has a least element" => "every value has a greatest element".to_string(),
                other => other.to_string(),
            };
            CorrespondenceError::HypothesisViolated { hypothesis, report }
        }
        other => other,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupVariant {
    /// Values need only be chain-closed (automatic on finite carriers).
    ChainSubcomplete,
    /// Every value must be a complete lattice in its induced order.
    CompleteValues,
}

/// Least upper bound, within the fixed set, of a set `u` of fixed points.
///
/// Computes b = sup(u) in the ambient lattice; if b is fixed it is the
/// answer. Otherwise the correspondence is restricted to the interval
/// [b, top] and the least fixed point of the restriction is returned. For
/// `CompleteValues` the nonemptiness of each restricted value is certified
/// constructively: v(x) = induced sup within F(x) of { join(t, min F(x)) :
/// t in u } lands in F(x) above b. The result is certified against a direct
/// within-fixed-set bound scan before being returned.
pub fn sup_of_fixed_subset(
    f: &Correspondence,
    u: &SubsetView,
    variant: SupVariant,
) -> Result<usize, CorrespondenceError> {
    let l = f.lattice();
    l.check_subset(u)?;
    if u.is_empty() {
        return Err(CorrespondenceError::Order(crate::poset::OrderError::EmptySubset));
    }
    check_sup_hypotheses(f, variant)?;
    let not_fixed: Vec<String> = u
        .indices()
        .into_iter()
        .filter(|&t| !f.value_contains(t, t))
        .map(|t| l.id(t).to_string())
        .collect();
    if !not_fixed.is_empty() {
        return Err(CorrespondenceError::NotFixedPoints(not_fixed));
    }

    let b = l.sup_of(u)?;
    let result = if f.value_contains(b, b) {
        b
    } else {
        restricted_least_fixed_point(f, u, b, variant)?
    };

    // Certify: result is the least fixed point dominating all of u.
    let fixed: Vec<usize> = (0..l.len()).filter(|&s| f.value_contains(s, s)).collect();
    let u_indices = u.indices();
    let ok = f.value_contains(result, result)
        && u_indices.iter().all(|&t| l.le(t, result))
        && fixed
            .iter()
            .all(|&e| !(u_indices.iter().all(|&t| l.le(t, e))) || l.le(result, e));
    if !ok {
        return Err(CorrespondenceError::InternalContradiction(format!(
            "`{}` is not the least fixed point above the given set",
            l.id(result)
        )));
    }
    Ok(result)
}

fn check_sup_hypotheses(f: &Correspondence, variant: SupVariant) -> Result<(), CorrespondenceError> {
    let lower = lower_v_report(f);
    if !lower.holds {
        return Err(CorrespondenceError::HypothesisViolated {
            hypothesis: "lower weak monotonicity".into(),
            report: lower,
        });
    }
    let upper = upper_v_report(f);
    if !upper.holds {
        return Err(CorrespondenceError::HypothesisViolated {
            hypothesis: "upper weak monotonicity".into(),
            report: upper,
        });
    }
    let l = f.lattice();
    for x in 0..l.len() {
        let view = f.value_view(x);
        let report = match variant {
            SupVariant::ChainSubcomplete => is_chain_subcomplete(l, &view, Direction::Both)?,
            SupVariant::CompleteValues => induced_complete(l, &view),
        };
        if !report.holds {
            let hypothesis = match variant {
                SupVariant::ChainSubcomplete => "values are chain-closed",
                SupVariant::CompleteValues => "values are complete lattices in their induced order",
            };
            return Err(CorrespondenceError::HypothesisViolated { hypothesis: hypothesis.into(), report });
        }
    }
    Ok(())
}

fn restricted_least_fixed_point(
    f: &Correspondence,
    u: &SubsetView,
    b: usize,
    variant: SupVariant,
) -> Result<usize, CorrespondenceError> {
    let l = f.lattice();
    let (interval, back) = l.up_interval(b);
    let mut fwd = vec![usize::MAX; l.len()];
    for (new, &old) in back.iter().enumerate() {
        fwd[old] = new;
    }

    if let SupVariant::CompleteValues = variant {
        // Certify each restricted value nonempty via its constructive
        // witness v(x) before relying on the restriction.
        for &old in &back {
            let value = f.value(old);
            let min = value
                .iter()
                .copied()
                .find(|&m| value.iter().all(|&y| l.le(m, y)))
                .ok_or_else(|| {
                    CorrespondenceError::InternalContradiction(format!(
                        "complete value F(`{}`) lost its least element",
                        l.id(old)
                    ))
                })?;
            let targets: Vec<usize> = u.indices().into_iter().map(|t| l.join(t, min)).collect();
            for &t in &targets {
                if !f.value_contains(old, t) {
                    return Err(CorrespondenceError::InternalContradiction(format!(
                        "join of a fixed point into F(`{}`) escaped the value",
                        l.id(old)
                    )));
                }
            }
            let v = induced_sup_within(l, &value, &targets).ok_or_else(|| {
                CorrespondenceError::InternalContradiction(format!(
                    "no induced sup inside the complete value F(`{}`)",
                    l.id(old)
                ))
            })?;
            if !l.le(b, v) {
                return Err(CorrespondenceError::InternalContradiction(
                    "constructive witness fell below the interval".into(),
                ));
            }
        }
    }

    let mut sets = Vec::with_capacity(interval.len());
    for &old in &back {
        let restricted: Vec<usize> =
            f.value(old).into_iter().filter(|&y| l.le(b, y)).map(|y| fwd[y]).collect();
        if restricted.is_empty() {
            return Err(CorrespondenceError::InternalContradiction(format!(
                "restricted value at `{}` is empty despite the hypotheses",
                l.id(old)
            )));
        }
        sets.push(restricted);
    }
    let restricted =
        Correspondence::from_index_values(std::sync::Arc::new(interval), sets)?;
    let lfp = match variant {
        SupVariant::ChainSubcomplete => least_fixed_point_via_prefixed_points(&restricted),
        SupVariant::CompleteValues => least_fixed_point_via_min_selection(&restricted),
    };
    match lfp {
        Ok(new) => Ok(back[new]),
        Err(CorrespondenceError::HypothesisViolated { report, .. }) => {
            Err(CorrespondenceError::InternalContradiction(format!(
                "restriction lost the hypotheses: {}",
                report.detail
            )))
        }
        Err(other) => Err(other),
    }
}

/// Which hypothesis set to verify before asserting the fixed set is a
/// nonempty complete lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixTheorem {
    /// Strong monotonicity with subcomplete values.
    #[serde(rename = "fact-zhou")]
    Zhou,
    /// Weak monotonicity with chain-closed values.
    #[serde(rename = "myzhou")]
    ChainValues,
    /// Weak monotonicity with values complete in their induced order.
    #[serde(rename = "cpltval")]
    CompleteValues,
}

impl FixTheorem {
    pub fn all() -> [FixTheorem; 3] {
        [FixTheorem::Zhou, FixTheorem::ChainValues, FixTheorem::CompleteValues]
    }
}

/// Checks the hypothesis set of `theorem` on `f`. `Err` carries the failing
/// hypothesis name and its report.
pub fn check_theorem_hypotheses(
    f: &Correspondence,
    theorem: FixTheorem,
) -> Result<(), (String, CheckReport)> {
    let l = f.lattice();
    match theorem {
        FixTheorem::Zhou => {
            // Value closure first: a map that is not even valuewise closed
            // gets blamed on the offending value, not on monotonicity.
            for x in 0..l.len() {
                let view = f.value_view(x);
                let sub = is_subcomplete(l, &view).expect("values are nonempty by construction");
                if !sub.holds {
                    return Err((
                        format!("F(`{}`) is a subcomplete sublattice", l.id(x)),
                        sub,
                    ));
                }
            }
            let asc = crate::correspondence::is_ascending(f);
            if !asc.holds {
                return Err(("F is strongly monotone".into(), asc));
            }
        }
        FixTheorem::ChainValues => {
            let lower = lower_v_report(f);
            if !lower.holds {
                return Err(("F is lower weakly monotone".into(), lower));
            }
            let upper = upper_v_report(f);
            if !upper.holds {
                return Err(("F is upper weakly monotone".into(), upper));
            }
            for x in 0..l.len() {
                let view = f.value_view(x);
                let chains = is_chain_subcomplete(l, &view, Direction::Both)
                    .expect("values are nonempty by construction");
                if !chains.holds {
                    return Err((format!("F(`{}`) is chain-closed", l.id(x)), chains));
                }
            }
        }
        FixTheorem::CompleteValues => {
            let lower = lower_v_report(f);
            if !lower.holds {
                return Err(("F is lower weakly monotone".into(), lower));
            }
            let upper = upper_v_report(f);
            if !upper.holds {
                return Err(("F is upper weakly monotone".into(), upper));
            }
            for x in 0..l.len() {
                let view = f.value_view(x);
                let complete = induced_complete(l, &view);
                if !complete.holds {
                    return Err((
                        format!("F(`{}`) is a complete lattice in its induced order", l.id(x)),
                        complete,
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Verifies by brute force that the fixed set is a nonempty complete
/// lattice in the induced order, once the chosen hypothesis set holds.
/// Exhaustive over subsets of the fixed set up to the shared size cap.
pub fn verify_fix_complete(f: &Correspondence, theorem: FixTheorem) -> TheoremOutcome {
    if let Err((hypothesis, report)) = check_theorem_hypotheses(f, theorem) {
        return TheoremOutcome::HypothesesNotMet { hypothesis, report };
    }
    let l = f.lattice();
    let fix = fixed_points_brute(f);
    if fix.members.is_empty() {
        return TheoremOutcome::ConclusionViolated {
            report: CheckReport::fail(vec![], "the fixed set is empty"),
        };
    }
    let pairwise = induced_complete(l, &fix.members);
    if !pairwise.holds {
        return TheoremOutcome::ConclusionViolated { report: pairwise };
    }
    let members = fix.members.indices();
    if members.len() <= EXHAUSTIVE_CAP {
        for mask in 1u64..(1 << members.len()) {
            let sub: Vec<usize> = (0..members.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| members[i])
                .collect();
            if induced_sup_within(l, &members, &sub).is_none()
                || induced_inf_within(l, &members, &sub).is_none()
            {
                return TheoremOutcome::ConclusionViolated {
                    report: CheckReport::fail(
                        l.id_vec(sub),
                        "a subset of the fixed set lacks an induced bound",
                    ),
                };
            }
        }
    }
    TheoremOutcome::Verified {
        detail: format!(
            "Fix = {{{}}}; complete lattice",
            members.iter().map(|&i| l.id(i)).collect::<Vec<_>>().join(",")
        ),
    }
}
