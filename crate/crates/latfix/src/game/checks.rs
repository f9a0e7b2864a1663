//! The two hypothesis checkers of the supermodular-game model: sectionwise
//! supermodularity in own strategies and increasing differences between own
//! and others' strategies, the latter quantified only over quadruples whose
//! four corners are all feasible.

use std::collections::BTreeMap;

use super::Game;
use crate::report::CheckReport;

/// Others' part of a profile: the coordinates of everyone except `player`.
fn others(profile: &[usize], player: usize) -> Vec<usize> {
    profile
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != player)
        .map(|(_, &s)| s)
        .collect()
}

/// One representative full profile per distinct others-part for `player`.
fn others_classes(g: &Game, player: usize) -> Vec<Vec<usize>> {
    let mut reps: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for p in &g.profiles {
        reps.entry(others(p, player)).or_insert_with(|| p.clone());
    }
    reps.into_values().collect()
}

/// For every player and every others-part, the own-strategy payoff section
/// must satisfy f(join) + f(meet) >= f(y) + f(y'), exactly.
pub fn check_supermodular(g: &Game) -> CheckReport {
    for i in 0..g.num_players() {
        let lattice = g.strategy_lattice(i).clone();
        for rep in others_classes(g, i) {
            let section = g
                .section_strategies(i, &rep)
                .expect("a feasible profile always has a nonempty section")
                .indices();
            let pay = |own: usize| {
                let mut p = rep.clone();
                p[i] = own;
                let k = g.profile_index(&p).expect("section members are feasible");
                g.payoff(i, k)
            };
            for (a, &y) in section.iter().enumerate() {
                for &yp in &section[a + 1..] {
                    let hi = pay(lattice.join(y, yp)) + pay(lattice.meet(y, yp));
                    let lo = pay(y) + pay(yp);
                    if hi < lo {
                        return CheckReport::fail(
                            vec![
                                g.players[i].clone(),
                                g.render_others(i, &rep),
                                lattice.id(y).to_string(),
                                lattice.id(yp).to_string(),
                            ],
                            format!(
                                "player `{}` against {}: f(join) + f(meet) = {} falls below f(`{}`) + f(`{}`) = {}",
                                g.players[i],
                                g.render_others(i, &rep),
                                hi,
                                lattice.id(y),
                                lattice.id(yp),
                                lo
                            ),
                        );
                    }
                }
            }
        }
    }
    CheckReport::pass("every own-strategy section is supermodular for every player")
}

/// For every player, own strategies y <= y' and others-parts X <= X' with
/// all four corner profiles feasible:
/// f(y', X) + f(y, X') <= f(y, X) + f(y', X'), exactly. Quadruples with an
/// infeasible corner are outside the hypothesis and are skipped.
pub fn check_increasing_differences(g: &Game) -> CheckReport {
    for i in 0..g.num_players() {
        let lattice = g.strategy_lattice(i).clone();
        let classes = others_classes(g, i);
        let le_others = |a: &[usize], b: &[usize]| {
            others(a, i)
                .iter()
                .zip(others(b, i))
                .enumerate()
                .all(|(j_rel, (&x, xp))| {
                    let j = if j_rel < i { j_rel } else { j_rel + 1 };
                    g.strategy_lattice(j).le(x, xp)
                })
        };
        for y in 0..lattice.len() {
            for yp in 0..lattice.len() {
                if y == yp || !lattice.le(y, yp) {
                    continue;
                }
                for x in &classes {
                    for xp in &classes {
                        if x == xp || !le_others(x, xp) {
                            continue;
                        }
                        let corner = |own: usize, rep: &[usize]| {
                            let mut p = rep.to_vec();
                            p[i] = own;
                            g.profile_index(&p)
                        };
                        let (f_y_x, f_yp_x, f_y_xp, f_yp_xp) = match (
                            corner(y, x),
                            corner(yp, x),
                            corner(y, xp),
                            corner(yp, xp),
                        ) {
                            (Some(a), Some(b), Some(c), Some(d)) => (
                                g.payoff(i, a),
                                g.payoff(i, b),
                                g.payoff(i, c),
                                g.payoff(i, d),
                            ),
                            _ => continue,
                        };
                        if f_yp_x + f_y_xp > f_y_x + f_yp_xp {
                            return CheckReport::fail(
                                vec![
                                    g.players[i].clone(),
                                    lattice.id(y).to_string(),
                                    lattice.id(yp).to_string(),
                                    g.render_others(i, x),
                                    g.render_others(i, xp),
                                ],
                                format!(
                                    "player `{}`: moving `{}` -> `{}` pays {} against {} but only {} against {}",
                                    g.players[i],
                                    lattice.id(y),
                                    lattice.id(yp),
                                    f_yp_x - f_y_x,
                                    g.render_others(i, x),
                                    f_yp_xp - f_y_xp,
                                    g.render_others(i, xp)
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    CheckReport::pass("cross differences are monotone over all feasible quadruples")
}

#[cfg(test)]
mod tests {
    use super::super::test_games::{chain_feasible, coordination};
    use super::super::{topkis_box_game, Rational};
    use super::*;

    fn coords(id: &str) -> Vec<i64> {
        id.split('.').map(|c| c.parse().unwrap()).collect()
    }

    #[test]
    fn product_payoffs_pass_both_checks() {
        let g = coordination();
        assert!(check_supermodular(&g).holds);
        assert!(check_increasing_differences(&g).holds);
    }

    #[test]
    fn chain_strategies_are_vacuously_supermodular() {
        let g = chain_feasible();
        let r = check_supermodular(&g);
        assert!(r.holds, "{}", r.detail);
        assert!(check_increasing_differences(&g).holds);
    }

    #[test]
    fn separable_payoffs_have_constant_differences() {
        let g = topkis_box_game(&[vec![3], vec![3]], None, |i, profile| {
            let own: i64 = profile[i].parse().unwrap();
            let other: i64 = profile[1 - i].parse().unwrap();
            Rational::from_integer(2 * own - 3 * other)
        })
        .unwrap();
        assert!(check_supermodular(&g).holds);
        assert!(check_increasing_differences(&g).holds);
    }

    #[test]
    fn negated_product_fails_increasing_differences_with_a_quadruple() {
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
        let r = check_increasing_differences(&g);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w[0], "p1");
        assert_eq!((w[1].as_str(), w[2].as_str()), ("0", "1"));
    }

    #[test]
    fn concave_coordinate_product_fails_supermodularity_on_a_box() {
        // Single player on the 2x2 box; f = -(c1 * c2) loses strictly on
        // the incomparable pair (0.1, 1.0).
        let g = topkis_box_game(&[vec![2, 2]], None, |_, profile| {
            let c = coords(profile[0]);
            Rational::from_integer(-(c[0] * c[1]))
        })
        .unwrap();
        let r = check_supermodular(&g);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w[0], "p1");
        let pair = [w[2].as_str(), w[3].as_str()];
        assert!(pair.contains(&"0.1") && pair.contains(&"1.0"), "{pair:?}");
        // Increasing differences is vacuous with a single player.
        assert!(check_increasing_differences(&g).holds);
    }

    #[test]
    fn skipped_corners_keep_restricted_quadruples_out() {
        // On the chain feasible set, the quadruple y=0,y'=1, x2=0,x2'=1 has
        // the infeasible corner (1,0); a payoff that would violate the
        // inequality there must still pass, because the hypothesis is
        // relative to the feasible set.
        let feasible = vec![
            vec!["0".to_string(), "0".to_string()],
            vec!["0".to_string(), "1".to_string()],
            vec!["1".to_string(), "1".to_string()],
        ];
        let g = topkis_box_game(&[vec![2], vec![2]], Some(&feasible), |i, profile| {
            let x1: i64 = profile[0].parse().unwrap();
            let x2: i64 = profile[1].parse().unwrap();
            if i == 0 {
                Rational::from_integer(-5 * x1 * x2)
            } else {
                Rational::from_integer(x1 + x2)
            }
        })
        .unwrap();
        let r = check_increasing_differences(&g);
        assert!(r.holds, "{}", r.detail);
    }
}
