//! Equilibrium computation by two independent routes.
//!
//! The brute route scans every feasible profile against every feasible
//! unilateral deviation. The fixed-point route builds the aggregate
//! best-response correspondence on the joint lattice and takes its fixed
//! points through the correspondence engine. The two agree by a short
//! argument (a profitable deviation embeds into the aggregate search
//! region), but the agreement is asserted on every run instead of trusted:
//! a mismatch surfaces as an error, never a silent reconciliation.

use serde::{Deserialize, Serialize};

use super::{check_increasing_differences, check_supermodular, Game, GameError, Rational};
use crate::correspondence::{is_ascending, Correspondence};
use crate::fixpoint::{fixed_points_brute, induced_inf_within, induced_sup_within};
use crate::report::{CheckReport, TheoremOutcome};

/// Nash equilibria with their induced-order summary. Profiles are rendered
/// as per-player strategy ids in player order; `members` is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumSet {
    pub members: Vec<Vec<String>>,
    pub least: Option<Vec<String>>,
    pub greatest: Option<Vec<String>>,
    pub is_complete_lattice: bool,
}

fn summarize(g: &Game, mut members: Vec<usize>) -> EquilibriumSet {
    members.sort_unstable();
    let l = g.joint();
    let least = members
        .iter()
        .copied()
        .find(|&m| members.iter().all(|&e| l.le(m, e)))
        .map(|m| g.profile_ids(m));
    let greatest = members
        .iter()
        .copied()
        .find(|&m| members.iter().all(|&e| l.le(e, m)))
        .map(|m| g.profile_ids(m));
    let mut complete = !members.is_empty();
    'pairs: for (a, &y) in members.iter().enumerate() {
        for &yp in &members[a..] {
            if induced_sup_within(l, &members, &[y, yp]).is_none()
                || induced_inf_within(l, &members, &[y, yp]).is_none()
            {
                complete = false;
                break 'pairs;
            }
        }
    }
    EquilibriumSet {
        members: members.iter().map(|&k| g.profile_ids(k)).collect(),
        least,
        greatest,
        is_complete_lattice: complete,
    }
}

/// Every feasible profile against every feasible unilateral deviation,
/// exact payoff comparisons. No hypotheses needed.
pub fn nash_brute(g: &Game) -> EquilibriumSet {
    let mut equilibria = Vec::new();
    'profiles: for k in 0..g.num_profiles() {
        let profile = g.profile(k).to_vec();
        for i in 0..g.num_players() {
            let section = g
                .section_strategies(i, &profile)
                .expect("feasible profiles have nonempty sections")
                .indices();
            let current = g.payoff(i, k);
            for own in section {
                let mut dev = profile.clone();
                dev[i] = own;
                let d = g.profile_index(&dev).expect("section members are feasible");
                if g.payoff(i, d) > current {
                    continue 'profiles;
                }
            }
        }
        equilibria.push(k);
    }
    summarize(g, equilibria)
}

/// Argmax of the aggregate y -> sum_i f_i(y_i, x_-i) over the joint
/// section at feasible profile `x`. Full tie set, no tie-breaking.
pub fn aggregate_argmax(g: &Game, x: usize) -> Result<Vec<usize>, GameError> {
    let region = g.joint_section(x)?.indices();
    let base = g.profile(x).to_vec();
    let score = |y: usize| -> Rational {
        let yprof = g.profile(y);
        let mut total = Rational::from_integer(0);
        for i in 0..g.num_players() {
            let mut p = base.clone();
            p[i] = yprof[i];
            let k = g
                .profile_index(&p)
                .expect("aggregate corners are feasible inside the joint section");
            total += g.payoff(i, k);
        }
        total
    };
    let best = region
        .iter()
        .map(|&y| score(y))
        .max()
        .expect("joint sections are nonempty");
    Ok(region.into_iter().filter(|&y| score(y) == best).collect())
}

/// Fixed points of the aggregate best-response correspondence.
///
/// Requires both game hypotheses; the correspondence's strong monotonicity
/// is re-validated at runtime rather than taken from the theory. The
/// result is compared against `nash_brute` on every call.
pub fn nash_via_fixpoint(g: &Game) -> Result<EquilibriumSet, GameError> {
    let sup = check_supermodular(g);
    if !sup.holds {
        return Err(GameError::HypothesisViolated {
            hypothesis: "sectionwise supermodularity".into(),
            report: sup,
        });
    }
    let diffs = check_increasing_differences(g);
    if !diffs.holds {
        return Err(GameError::HypothesisViolated {
            hypothesis: "increasing differences relative to the feasible set".into(),
            report: diffs,
        });
    }

    let mut values = Vec::with_capacity(g.num_profiles());
    for x in 0..g.num_profiles() {
        values.push(aggregate_argmax(g, x)?);
    }
    let best_response = Correspondence::from_index_values(g.joint().clone(), values)
        .expect("argmax sets are nonempty");
    let ascending = is_ascending(&best_response);
    if !ascending.holds {
        return Err(GameError::HypothesisViolated {
            hypothesis: "aggregate best response is ascending".into(),
            report: ascending,
        });
    }

    let fix = fixed_points_brute(&best_response);
    let from_fixpoint = summarize(g, fix.members.indices());
    let brute = nash_brute(g);
    if from_fixpoint.members != brute.members {
        return Err(GameError::EquivalenceViolation(format!(
            "fixed points {:?} vs brute equilibria {:?}",
            from_fixpoint.members, brute.members
        )));
    }
    Ok(from_fixpoint)
}

/// Checks the two game hypotheses; when they hold, verifies that the Nash
/// set is nonempty and a complete lattice in its induced order. Order
/// semicontinuity hypotheses from the infinite theory are automatic on
/// finite carriers and not represented.
pub fn verify_nash_lattice(g: &Game) -> TheoremOutcome {
    let sup = check_supermodular(g);
    if !sup.holds {
        return TheoremOutcome::HypothesesNotMet {
            hypothesis: "sectionwise supermodularity".into(),
            report: sup,
        };
    }
    let diffs = check_increasing_differences(g);
    if !diffs.holds {
        return TheoremOutcome::HypothesesNotMet {
            hypothesis: "increasing differences relative to the feasible set".into(),
            report: diffs,
        };
    }
    let nash = nash_brute(g);
    if nash.members.is_empty() {
        return TheoremOutcome::ConclusionViolated {
            report: CheckReport::fail(vec![], "no equilibria despite the hypotheses"),
        };
    }
    if !nash.is_complete_lattice {
        return TheoremOutcome::ConclusionViolated {
            report: CheckReport::fail(
                nash.members.iter().map(|m| m.join(",")).collect(),
                "equilibrium set is not a complete lattice in its induced order",
            ),
        };
    }
    TheoremOutcome::Verified {
        detail: format!(
            "Nash = {{{}}}; complete lattice",
            nash.members.iter().map(|m| m.join(",")).collect::<Vec<_>>().join(" ")
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_games::{chain_feasible, coordination};
    use super::super::{topkis_box_game, Rational};
    use super::*;

    fn ids(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn coordination_equilibria_by_both_routes() {
        let g = coordination();
        let brute = nash_brute(&g);
        assert_eq!(brute.members, ids(&[&["0", "0"], &["1", "1"]]));
        assert_eq!(brute.least, Some(vec!["0".to_string(), "0".to_string()]));
        assert_eq!(brute.greatest, Some(vec!["1".to_string(), "1".to_string()]));
        assert!(brute.is_complete_lattice);
        let fixed = nash_via_fixpoint(&g).unwrap();
        assert_eq!(fixed, brute);
    }

    #[test]
    fn chain_feasible_has_the_top_equilibrium_only() {
        let g = chain_feasible();
        let brute = nash_brute(&g);
        assert_eq!(brute.members, ids(&[&["1", "1"]]));
        assert_eq!(nash_via_fixpoint(&g).unwrap(), brute);
    }

    #[test]
    fn aggregate_argmax_matches_the_hand_scan() {
        // At x = (0,0) the region is {(0,0),(0,1)} and the aggregate picks
        // (0,1).
        let g = chain_feasible();
        let x = g.profile_index(&[0, 0]).unwrap();
        let argmax = aggregate_argmax(&g, x).unwrap();
        assert_eq!(argmax, vec![g.profile_index(&[0, 1]).unwrap()]);
    }

    #[test]
    fn constant_payoffs_make_everything_an_equilibrium() {
        let g = topkis_box_game(&[vec![2], vec![2]], None, |_, _| Rational::from_integer(3)).unwrap();
        let brute = nash_brute(&g);
        assert_eq!(brute.members.len(), 4);
        assert!(brute.is_complete_lattice);
        let fixed = nash_via_fixpoint(&g).unwrap();
        assert_eq!(fixed, brute);
    }

    #[test]
    fn single_player_game_reduces_to_argmax() {
        let g = topkis_box_game(&[vec![3]], None, |_, profile| {
            // 0 -> 0, 1 -> 2, 2 -> 1: peak in the middle.
            let s: i64 = profile[0].parse().unwrap();
            Rational::from_integer(match s {
                0 => 0,
                1 => 2,
                _ => 1,
            })
        })
        .unwrap();
        let brute = nash_brute(&g);
        assert_eq!(brute.members, ids(&[&["1"]]));
        assert_eq!(nash_via_fixpoint(&g).unwrap(), brute);
    }

    #[test]
    fn hypothesis_failures_are_reported_before_solving() {
        let g = topkis_box_game(&[vec![2], vec![2]], None, |i, profile| {
            let x1: i64 = profile[0].parse().unwrap();
            let x2: i64 = profile[1].parse().unwrap();
            if i == 0 {
                Rational::from_integer(-x1 * x2)
            } else {
                Rational::from_integer(0)
            }
        })
        .unwrap();
        match nash_via_fixpoint(&g) {
            Err(GameError::HypothesisViolated { hypothesis, .. }) => {
                assert!(hypothesis.contains("increasing differences"), "{hypothesis}");
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
        assert!(verify_nash_lattice(&g).is_hypotheses_not_met());
    }

    #[test]
    fn verify_nash_lattice_on_the_golden_games() {
        assert!(verify_nash_lattice(&coordination()).is_verified());
        assert!(verify_nash_lattice(&chain_feasible()).is_verified());
    }

    #[test]
    fn affine_transforms_leave_equilibria_alone() {
        let g = coordination();
        let brute = nash_brute(&g);
        let t = super::super::affine_transformed(
            &g,
            Rational::new(7, 2),
            &[Rational::from_integer(-4), Rational::new(5, 3)],
        )
        .unwrap();
        assert_eq!(nash_brute(&t).members, brute.members);
        assert_eq!(nash_via_fixpoint(&t).unwrap().members, brute.members);
    }
}
