use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::DivisionError;
use crate::game::{check_player_count, Game, PayoffVector};
use crate::rational::Rational;

/// Exact Shapley value of every player of `game`.
pub fn shapley(game: &Game) -> Result<PayoffVector, DivisionError> {
    check_player_count(game.player_count())?;
    let values = shapley_from_table(game.player_count(), game.worth_table());
    Ok(PayoffVector::for_game(game, values))
}

/// Shapley values of an `n`-player game given as a dense worth table indexed
/// by coalition bitmask.
///
/// Uses the subset-sum form
/// `phi_i = sum_{S not containing i} |S|! (n-1-|S|)! / n! * (v(S+i) - v(S))`.
/// Worths are first scaled to integers over their common denominator and
/// marginal contributions are summed per coalition size, so the only
/// rational divisions happen once per player at the end.
pub fn shapley_from_table(n: usize, table: &[Rational]) -> Vec<Rational> {
    assert_eq!(table.len(), 1usize << n, "worth table must have 2^n entries");
    if n == 0 {
        return Vec::new();
    }
    let denom = table.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled: Vec<BigInt> = table.iter().map(|w| w.numer() * (&denom / w.denom())).collect();

    // by_size[i][k]: sum of v(S+i) - v(S) over S not containing i with |S| = k.
    let mut by_size = vec![vec![BigInt::zero(); n]; n];
    for mask in 0..scaled.len() {
        let k = (mask as u32).count_ones() as usize;
        if k == n {
            continue;
        }
        for (i, sums) in by_size.iter_mut().enumerate() {
            if mask >> i & 1 == 0 {
                sums[k] += &scaled[mask | 1 << i] - &scaled[mask];
            }
        }
    }

    let fact: Vec<BigInt> = (0..=n)
        .scan(BigInt::one(), |acc, i| {
            if i > 0 {
                *acc *= i;
            }
            Some(acc.clone())
        })
        .collect();
    let total_denom = &fact[n] * &denom;
    by_size
        .into_iter()
        .map(|sums| {
            let numer =
                sums.into_iter().enumerate().fold(BigInt::zero(), |acc, (k, s)| acc + s * &fact[k] * &fact[n - 1 - k]);
            Rational::new(numer, total_denom.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{build_general, build_linear, build_threshold, Coalition};
    use std::collections::BTreeMap;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Averages marginal contributions over all n! orderings.
    fn permutation_oracle(n: usize, table: &[Rational]) -> Vec<Rational> {
        fn permute(order: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == order.len() {
                out.push(order.clone());
                return;
            }
            for i in k..order.len() {
                order.swap(k, i);
                permute(order, k + 1, out);
                order.swap(k, i);
            }
        }
        let mut orders = Vec::new();
        permute(&mut (0..n).collect(), 0, &mut orders);
        let mut acc = vec![Rational::zero(); n];
        for order in &orders {
            let mut mask = 0usize;
            for &i in order {
                acc[i] += &table[mask | 1 << i] - &table[mask];
                mask |= 1 << i;
            }
        }
        let count = Rational::from_integer(BigInt::from(orders.len()));
        acc.into_iter().map(|a| a / &count).collect()
    }

    #[test]
    fn two_player_general_gives_half_the_increment() {
        let g =
            build_general(q(1, 2), q(10, 1), 1, BTreeMap::from([(Coalition::from_indices([0, 1]), q(3, 10))])).unwrap();
        let x = shapley(&g).unwrap();
        assert_eq!(x.get("s"), Some(&q(13, 2)));
        assert_eq!(x.get("r1"), Some(&q(3, 2)));
    }

    #[test]
    fn linear_example_matches_permutation_oracle() {
        let g = build_linear(q(1, 2), q(1, 1), vec![q(1, 5), q(1, 10)]).unwrap();
        let oracle = permutation_oracle(3, g.worth_table());
        assert_eq!(oracle, vec![q(13, 20), q(1, 10), q(1, 20)]);
        let x = shapley(&g).unwrap();
        assert_eq!(x.values().cloned().collect::<Vec<_>>(), oracle);
    }

    #[test]
    fn threshold_two_of_two() {
        let g = build_threshold(q(1, 10), q(10, 1), 2, 2, q(2, 5)).unwrap();
        let oracle = permutation_oracle(3, g.worth_table());
        assert_eq!(oracle[1], q(4, 3));
        assert_eq!(oracle[2], q(4, 3));
        let x = shapley(&g).unwrap();
        assert_eq!(x.get("r1"), Some(&q(4, 3)));
        assert_eq!(x.get("r2"), Some(&q(4, 3)));
        assert_eq!(x.get("s"), Some(&q(7, 3)));
    }

    #[test]
    fn zero_increment_recommender_is_dummy() {
        let g = build_linear(q(1, 4), q(3, 1), vec![q(1, 5), q(0, 1), q(1, 10)]).unwrap();
        let x = shapley(&g).unwrap();
        assert_eq!(x.get("r2"), Some(&q(0, 1)));
    }

    #[test]
    fn matches_oracle_on_four_player_threshold_games() {
        for k in 1..=3 {
            let g = build_threshold(q(1, 5), q(7, 2), 3, k, q(3, 5)).unwrap();
            let x = shapley(&g).unwrap();
            let oracle = permutation_oracle(4, g.worth_table());
            assert_eq!(x.values().cloned().collect::<Vec<_>>(), oracle, "k = {k}");
            assert_eq!(x.total(), *g.grand_worth());
        }
    }
}
