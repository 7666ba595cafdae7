use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{random_rational, Claim, Claims};
use crate::core_lp::{core_contains, core_is_nonempty, CoreNonEmptiness};
use crate::fair_division::{
    shapley, truthfulness_probe, DivisionError, ProbeOutcome, ReportGrid, ShapleyPricing, ZeroPricing,
};
use crate::game::{Coalition, Game, PayoffVector, Roster, Scenario};
use crate::rational::Rational;

/// `k / 10` with `k` in `0..=max`.
fn tenths(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    Rational::new(rng.gen_range(0..=max).into(), 10.into())
}

/// Linear, Threshold or General scenario with `n` recommenders and
/// increments in `[0, 1 - p]`.
fn random_scenario(rng: &mut ChaCha8Rng, n: usize) -> Scenario {
    let p = tenths(rng, 4);
    let delta = random_rational(rng, 20, 4) + Rational::one();
    let room = Rational::one() - &p;
    let share = |rng: &mut ChaCha8Rng, parts: usize| {
        &room * random_rational(rng, 10, 10).min(Rational::one()) / Rational::from_integer(parts.into())
    };
    match rng.gen_range(0..3) {
        0 => {
            let q = (0..n).map(|_| share(rng, n)).collect();
            Scenario::Linear { p, delta, q }
        }
        1 => {
            let k = rng.gen_range(1..=n);
            Scenario::Threshold { p, delta, k, q: share(rng, 1) }
        }
        _ => {
            let mut f = BTreeMap::new();
            for mask in 1u32..1 << n {
                f.insert(Coalition((mask << 1) | 1), share(rng, 1));
            }
            Scenario::General { p, delta, f }
        }
    }
}

/// Arbitrary non-negative worths on seller coalitions.
fn random_table_game(rng: &mut ChaCha8Rng, players: usize) -> Game {
    let table =
        (0..1u32 << players).map(|m| if m & 1 == 1 { random_rational(rng, 12, 3) } else { Rational::zero() }).collect();
    Game::from_table(Roster::standard(players - 1), table).expect("random worths are valid")
}

fn brute_force_core(game: &Game, x: &[Rational]) -> bool {
    let total: Rational = x.iter().sum();
    if total != *game.grand_worth() {
        return false;
    }
    (1..1u32 << game.player_count()).all(|m| {
        let c = Coalition(m);
        let paid: Rational = c.members().map(|i| &x[i]).sum();
        paid >= *game.worth(c).expect("in range")
    })
}

/// Non-negative vector summing to `v(N)`.
fn random_split(rng: &mut ChaCha8Rng, game: &Game) -> Vec<Rational> {
    let weights: Vec<Rational> = (0..game.player_count()).map(|_| random_rational(rng, 5, 1)).collect();
    let sum: Rational = weights.iter().sum();
    if sum.is_zero() {
        let mut x = vec![Rational::zero(); weights.len()];
        x[0] = game.grand_worth().clone();
        return x;
    }
    weights.iter().map(|w| w * game.grand_worth() / &sum).collect()
}

pub(super) fn truthfulness(seed: u64) -> Vec<Claim> {
    let mut c = Claims::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut games = Vec::new();
    while games.len() < 100 {
        let n = rng.gen_range(1..=4);
        let scenario = random_scenario(&mut rng, n);
        let roster = Roster::standard(n);
        let Ok(game) = scenario.build(&roster) else { continue };
        let Ok(phi) = shapley(&game) else { continue };
        let paid: Rational = phi.values().skip(1).sum();
        if paid.is_positive() {
            games.push((scenario, roster));
        }
    }

    c.run("Shapley pricing: a profitable misreport with delta' = 0 exists", || {
        let mut found = 0;
        for (truth, roster) in &games {
            let grid = ReportGrid::new(vec![truth.p().clone()], vec![Rational::one()], vec![]);
            if matches!(truthfulness_probe(truth, roster, &ShapleyPricing, &grid)?, ProbeOutcome::Found(_)) {
                found += 1;
            }
        }
        Ok::<_, DivisionError>((found == games.len(), format!("{found}/{} games", games.len())))
    });

    c.run("zero pricing: no profitable misreport on the default grid", || {
        let mut found = 0;
        for (truth, roster) in &games {
            let grid = ReportGrid::around(truth);
            if matches!(truthfulness_probe(truth, roster, &ZeroPricing, &grid)?, ProbeOutcome::Found(_)) {
                found += 1;
            }
        }
        Ok::<_, DivisionError>((found == 0, format!("{found}/{} games with a deviation", games.len())))
    });

    c.0
}

pub(super) fn core_laws(seed: u64) -> Vec<Claim> {
    let mut c = Claims::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut disagreements = 0;
    let mut inside = 0;
    for _ in 0..500 {
        let players = rng.gen_range(2..=4);
        let game = random_table_game(&mut rng, players);
        let x = match rng.gen_range(0..3) {
            0 => match core_is_nonempty(&game) {
                Ok(CoreNonEmptiness::NonEmpty { point }) => point.values().cloned().collect(),
                _ => random_split(&mut rng, &game),
            },
            1 => {
                let mut x = vec![Rational::zero(); game.player_count()];
                x[0] = game.grand_worth().clone();
                x
            }
            _ => random_split(&mut rng, &game),
        };
        let expected = brute_force_core(&game, &x);
        inside += usize::from(expected);
        match core_contains(&game, &PayoffVector::for_game(&game, x)) {
            Ok(check) if check.in_core == expected => {}
            _ => disagreements += 1,
        }
    }
    c.check(
        "core_contains agrees with brute force on 500 games",
        disagreements == 0,
        format!("{disagreements} disagreements, {inside} vectors in the Core"),
    );

    let mut empty = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let scenario = match random_scenario(&mut rng, n) {
            Scenario::General { p, delta, .. } => Scenario::Linear { p, delta, q: vec![Rational::zero(); n] },
            s => s,
        };
        let nonempty = scenario
            .build(&Roster::standard(n))
            .map_err(|e| e.to_string())
            .and_then(|g| core_is_nonempty(&g).map_err(|e| e.to_string()))
            .map(|r| r.is_nonempty());
        if nonempty != Ok(true) {
            empty += 1;
        }
    }
    c.check("Linear and Threshold games have a non-empty Core", empty == 0, format!("{empty}/100 empty"));

    c.run("non-monotone f: Core empty with a valid certificate", || {
        let half = Rational::new(1.into(), 2.into());
        let f = BTreeMap::from([
            (Coalition(0b011), half.clone()),
            (Coalition(0b101), half),
            (Coalition(0b111), Rational::zero()),
        ]);
        let game = Scenario::General { p: Rational::zero(), delta: Rational::one(), f }
            .build(&Roster::standard(2))
            .map_err(|e| e.to_string())?;
        Ok::<_, String>(match core_is_nonempty(&game).map_err(|e| e.to_string())? {
            CoreNonEmptiness::Empty { certificate } => {
                let valid = certificate.verify(&game);
                let balanced = certificate.balanced_weights(&game).is_some_and(|w| {
                    w.is_balanced(game.player_count()) && w.weighted_worth(&game) > *game.grand_worth()
                });
                (valid && balanced, format!("certificate valid: {valid}, balanced weights: {balanced}"))
            }
            CoreNonEmptiness::NonEmpty { point } => (false, format!("found Core point {point}")),
        })
    });

    let mut accepted = 0;
    let mut seller_ok = 0;
    let mut tried = 0;
    while tried < 200 {
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..n);
        let p = tenths(&mut rng, 4);
        let q = (Rational::one() - &p) * tenths(&mut rng, 9).max(Rational::new(1.into(), 10.into()));
        let Ok(game) = (Scenario::Threshold { p, delta: Rational::one(), k, q }).build(&Roster::standard(n)) else {
            continue;
        };
        tried += 1;
        let mut x = random_split(&mut rng, &game);
        if x[1..].iter().all(Zero::is_zero) {
            let moved = &x[0] / Rational::from_integer(2.into());
            x[0] -= &moved;
            x[1] += moved;
        }
        if core_contains(&game, &PayoffVector::for_game(&game, x)).map_or(true, |c| c.in_core) {
            accepted += 1;
        }
        if core_contains(&game, &PayoffVector::seller_takes_all(&game)).is_ok_and(|c| c.in_core) {
            seller_ok += 1;
        }
    }
    c.check(
        "Threshold k < n: only seller-takes-all is in the Core",
        accepted == 0 && seller_ok == tried,
        format!(
            "{accepted}/{tried} vectors paying a recommender accepted, seller-takes-all accepted {seller_ok}/{tried}"
        ),
    );

    c.0
}

pub(super) fn shapley_axioms(seed: u64) -> Vec<Claim> {
    let mut c = Claims::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut efficiency, mut dummy, mut symmetry, mut additivity) = (0, 0, 0, 0);
    for _ in 0..100 {
        let players = rng.gen_range(2..=5);
        let v = random_table_game(&mut rng, players);
        let w = random_table_game(&mut rng, players);
        let roster = v.roster().clone();
        let Ok(phi) = shapley(&v) else { continue };

        let total: Rational = phi.values().sum();
        efficiency += usize::from(total != *v.grand_worth());

        // Player d adds nothing to any coalition.
        let d = rng.gen_range(1..players);
        let dummy_game = Game::from_worths(roster.clone(), |s| v.worth(s.without(d)).expect("in range").clone())
            .expect("valid worths");
        let phi_d = shapley(&dummy_game).map(|x| x.values().nth(d).cloned());
        dummy += usize::from(phi_d != Ok(Some(Rational::zero())));

        // Players i and j are interchangeable.
        let i = rng.gen_range(1..players);
        let j = if i + 1 < players { i + 1 } else { 1 };
        let swap = |s: Coalition| {
            let mut t = s.without(i).without(j);
            if s.contains(i) {
                t = t.with(j);
            }
            if s.contains(j) {
                t = t.with(i);
            }
            t
        };
        let sym =
            Game::from_worths(roster.clone(), |s| v.worth(s).expect("in range") + v.worth(swap(s)).expect("in range"))
                .expect("valid worths");
        let same = shapley(&sym).map(|x| x.values().nth(i) == x.values().nth(j));
        symmetry += usize::from(same != Ok(true) && i != j);

        let sum = v.add(&w).expect("same roster");
        let lhs = shapley(&sum).map(|x| x.values().cloned().collect::<Vec<_>>());
        let rhs = shapley(&w).map(|y| phi.values().zip(y.values()).map(|(a, b)| a + b).collect::<Vec<_>>());
        additivity += usize::from(lhs != rhs || lhs.is_err());
    }
    c.check("efficiency: sum of shares = v(N)", efficiency == 0, format!("{efficiency}/100 violations"));
    c.check("dummy player gets 0", dummy == 0, format!("{dummy}/100 violations"));
    c.check("symmetric players get equal shares", symmetry == 0, format!("{symmetry}/100 violations"));
    c.check("additivity: phi(v + w) = phi(v) + phi(w)", additivity == 0, format!("{additivity}/100 violations"));
    c.0
}
