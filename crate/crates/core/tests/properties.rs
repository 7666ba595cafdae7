use std::collections::BTreeMap;

use fairprice_core::core_lp::{core_contains, core_is_nonempty, CoreNonEmptiness};
use fairprice_core::fair_division::{nash_bargaining_for_game, shapley};
use fairprice_core::game::{build_general, build_linear, Coalition, Game, PayoffVector, Roster};
use fairprice_core::rational::{decimal_string, exact_string, parse_rational, Rational};
use fairprice_core::trust::{evaluate_policy, mc_simulate, Policy, TrustParams};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn ratio() -> impl Strategy<Value = Rational> {
    (0i64..40, 1i64..9).prop_map(|(n, d)| rat(n, d))
}

/// Tables over `players` players with worth only on seller coalitions.
fn table(players: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(ratio(), 1 << players).prop_map(|mut t| {
        for (m, w) in t.iter_mut().enumerate() {
            if m & 1 == 0 {
                *w = Rational::zero();
            }
        }
        t
    })
}

fn game(players: usize, t: Vec<Rational>) -> Game {
    Game::from_table(Roster::standard(players - 1), t).unwrap()
}

fn sized_table() -> impl Strategy<Value = (usize, Vec<Rational>)> {
    (2usize..=5).prop_flat_map(|n| (Just(n), table(n)))
}

fn payoff_sum(x: &PayoffVector) -> Rational {
    x.values().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shapley_is_efficient((n, t) in sized_table()) {
        let g = game(n, t);
        prop_assert_eq!(payoff_sum(&shapley(&g).unwrap()), g.grand_worth().clone());
    }

    #[test]
    fn shapley_is_additive((n, t) in sized_table(), seed in any::<u64>()) {
        let v = game(n, t);
        let w_table: Vec<Rational> = v.worth_table().iter().enumerate()
            .map(|(m, x)| if m as u64 % 3 == seed % 3 { x * rat(2, 1) } else { x / rat(3, 1) })
            .collect();
        let w = game(n, w_table);
        let sum = shapley(&v.add(&w).unwrap()).unwrap();
        let (a, b) = (shapley(&v).unwrap(), shapley(&w).unwrap());
        for ((s, x), y) in sum.values().zip(a.values()).zip(b.values()) {
            prop_assert_eq!(s.clone(), x + y);
        }
    }

    #[test]
    fn shapley_scales_with_the_game((n, t) in sized_table(), factor in ratio()) {
        let g = game(n, t);
        let scaled = shapley(&g.scale(&factor).unwrap()).unwrap();
        for (s, x) in scaled.values().zip(shapley(&g).unwrap().values()) {
            prop_assert_eq!(s.clone(), x * &factor);
        }
    }

    #[test]
    fn null_recommender_gets_nothing((n, t) in sized_table()) {
        let last = n - 1;
        let t: Vec<Rational> = (0..t.len()).map(|m| t[m & !(1 << last)].clone()).collect();
        let phi = shapley(&game(n, t)).unwrap();
        prop_assert!(phi.values().nth(last).unwrap().is_zero());
    }

    #[test]
    fn core_membership_matches_brute_force((n, t) in (2usize..=4).prop_flat_map(|n| (Just(n), table(n))),
                                           x in proptest::collection::vec(ratio(), 4), efficient in any::<bool>()) {
        let g = game(n, t);
        let mut x: Vec<Rational> = x[..n].to_vec();
        if efficient {
            let rest: Rational = x[1..].iter().sum();
            x[0] = g.grand_worth() - rest;
        }
        let brute = x.iter().sum::<Rational>() == *g.grand_worth()
            && (1..1usize << n).all(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| &x[i]).sum::<Rational>() >= g.worth_table()[m]);
        prop_assert_eq!(core_contains(&g, &PayoffVector::for_game(&g, x)).unwrap().in_core, brute);
    }

    #[test]
    fn core_answer_carries_a_valid_certificate((n, t) in (2usize..=5).prop_flat_map(|n| (Just(n), table(n)))) {
        let g = game(n, t);
        match core_is_nonempty(&g).unwrap() {
            CoreNonEmptiness::NonEmpty { point } => prop_assert!(core_contains(&g, &point).unwrap().in_core),
            CoreNonEmptiness::Empty { certificate } => {
                prop_assert!(certificate.verify(&g));
                let w = certificate.balanced_weights(&g).unwrap();
                prop_assert!(w.is_balanced(n));
                prop_assert!(w.weighted_worth(&g) > *g.grand_worth());
            }
        }
    }

    #[test]
    fn linear_core_is_nonempty(p in 0i64..=5, qs in proptest::collection::vec(0i64..=2, 1..=4), delta in ratio()) {
        let g = build_linear(rat(p, 10), delta, qs.iter().map(|&x| rat(x, 10)).collect()).unwrap();
        prop_assert!(core_is_nonempty(&g).unwrap().is_nonempty());
    }

    #[test]
    fn two_player_nash_equals_shapley(p in 0i64..=10, f in 0i64..=10, delta in ratio()) {
        prop_assume!(p + f <= 10);
        let g = build_general(rat(p, 10), delta, 1, BTreeMap::from([(Coalition(0b11), rat(f, 10))])).unwrap();
        prop_assert_eq!(nash_bargaining_for_game(&g).unwrap(), shapley(&g).unwrap());
    }

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = rat(n, d);
        prop_assert_eq!(parse_rational(&exact_string(&x)).unwrap(), x.clone());
        let approx = parse_rational(&decimal_string(&x, 12)).unwrap();
        prop_assert!((approx - &x).abs() <= x.abs() * rat(1, 100_000_000_000) + rat(1, 1_000_000_000_000));
    }
}

#[test]
fn monte_carlo_is_reproducible() {
    let tp = TrustParams::new(0.5, 0.66, 1.33, 1.0, true).unwrap();
    let a = mc_simulate(&tp, &Policy::EveryK(2), 60, 3000, 11).unwrap();
    let b = mc_simulate(&tp, &Policy::EveryK(2), 60, 3000, 11).unwrap();
    assert_eq!(a.curve, b.curve);
    assert_eq!(a.stderr, b.stderr);
    let c = mc_simulate(&tp, &Policy::EveryK(2), 60, 3000, 12).unwrap();
    assert_ne!(a.curve, c.curve);
}

#[test]
fn monte_carlo_tracks_exact_curve() {
    let tp = TrustParams::new(0.4, 0.7, 1.2, 2.0, false).unwrap();
    let exact = evaluate_policy(&tp, &Policy::All, 80);
    let mc = mc_simulate(&tp, &Policy::All, 80, 40_000, 5).unwrap();
    for t in [1, 20, 40, 80] {
        let z = (mc.curve.at(t) - exact.at(t)).abs() / mc.stderr[t - 1];
        assert!(z < 4.0, "step {t}: z = {z}");
    }
}
