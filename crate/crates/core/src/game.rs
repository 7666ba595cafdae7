//! Coalitional games with transferable payoff between one seller and a set
//! of recommenders.
//!
//! A [`Game`] stores its characteristic function as a dense table indexed by
//! [`Coalition`] bitmasks. Bit `i` is player `i` of the game's roster, and the
//! seller is always player 0.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{exact_string, Rational};

/// Player cap used when `FAIRPRICE_MAX_PLAYERS` is unset.
pub const DEFAULT_MAX_PLAYERS: usize = 16;
/// Environment variable overriding [`DEFAULT_MAX_PLAYERS`].
pub const MAX_PLAYERS_ENV: &str = "FAIRPRICE_MAX_PLAYERS";
/// Upper bound accepted for the override. Coalitions are `u32` bitmasks and
/// the worth table has `2^n` entries.
pub const HARD_MAX_PLAYERS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error(
        "{count} players exceeds the limit of {max} (set {MAX_PLAYERS_ENV} to raise it, up to {HARD_MAX_PLAYERS})"
    )]
    TooManyPlayers { count: usize, max: usize },
    #[error("invalid {MAX_PLAYERS_ENV} value `{0}`: expected an integer in 1..={HARD_MAX_PLAYERS}")]
    InvalidPlayerCap(String),
    #[error("a game needs a seller and at least one recommender")]
    NoRecommenders,
    #[error("duplicate player id `{0}`")]
    DuplicatePlayer(String),
    #[error("unknown player id `{0}`")]
    UnknownPlayer(String),
    #[error("coalition refers to player index {0}, outside the game")]
    CoalitionOutOfRange(usize),
    #[error("{what} must be non-negative, got {value}")]
    Negative { what: &'static str, value: String },
    #[error("{what} must lie in [0, 1], got {value}")]
    NotAProbability { what: &'static str, value: String },
    #[error("success probability overflows 1: p + increments = {0}")]
    ProbabilityOverflow(String),
    #[error("threshold k = {k} must satisfy 1 <= k <= n = {n}")]
    ThresholdOutOfRange { k: usize, n: usize },
    #[error("f({{s}}) must be 0, got {0}")]
    SellerAloneHasIncrement(String),
    #[error("f value {value} for coalition {coalition} is outside [0, 1 - p]")]
    IncrementOutOfRange { coalition: String, value: String },
    #[error("f is only defined on coalitions containing the seller; got {0}")]
    IncrementWithoutSeller(String),
    #[error("worth table has {got} entries, expected {expected}")]
    WorthTableSize { got: usize, expected: usize },
    #[error("worth of {coalition} is {value}; {reason}")]
    InvalidWorth { coalition: String, value: String, reason: &'static str },
}

/// Reads the player cap from [`MAX_PLAYERS_ENV`], falling back to
/// [`DEFAULT_MAX_PLAYERS`].
pub fn max_players() -> Result<usize, GameError> {
    match std::env::var(MAX_PLAYERS_ENV) {
        Err(_) => Ok(DEFAULT_MAX_PLAYERS),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if (1..=HARD_MAX_PLAYERS).contains(&n) => Ok(n),
            _ => Err(GameError::InvalidPlayerCap(raw)),
        },
    }
}

pub(crate) fn check_player_count(count: usize) -> Result<(), GameError> {
    let max = max_players()?;
    if count > max {
        return Err(GameError::TooManyPlayers { count, max });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlayerKind {
    Seller,
    Recommender,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Player {
    pub id: String,
    pub kind: PlayerKind,
}

/// A subset of a game's players, as a bitmask over roster positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn grand(n: usize) -> Self {
        Coalition(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Self {
        Coalition(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Coalition(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Coalition(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Coalition(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// Orders coalitions by their sorted member-index sequences, so that
    /// `{0} < {0,1} < {0,1,2} < {0,2} < {1}`.
    pub fn lex_cmp(self, other: Coalition) -> std::cmp::Ordering {
        self.members().cmp(other.members())
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The scenario a game was built from, kept so that prices can be derived
/// from `p + f(N)` after the fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scenario {
    /// Each recommender `i` adds `q[i]` to the sale probability.
    Linear { p: Rational, delta: Rational, q: Vec<Rational> },
    /// At least `k` recommenders together add `q` to the sale probability.
    Threshold { p: Rational, delta: Rational, k: usize, q: Rational },
    /// Arbitrary increment `f(S)` for seller-containing coalitions; entries
    /// not listed are 0.
    General { p: Rational, delta: Rational, f: BTreeMap<Coalition, Rational> },
}

impl Scenario {
    pub fn p(&self) -> &Rational {
        match self {
            Scenario::Linear { p, .. } | Scenario::Threshold { p, .. } | Scenario::General { p, .. } => p,
        }
    }

    pub fn delta(&self) -> &Rational {
        match self {
            Scenario::Linear { delta, .. } | Scenario::Threshold { delta, .. } | Scenario::General { delta, .. } => {
                delta
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Linear { .. } => "linear",
            Scenario::Threshold { .. } => "threshold",
            Scenario::General { .. } => "general",
        }
    }

    pub fn recommender_count(&self) -> Option<usize> {
        match self {
            Scenario::Linear { q, .. } => Some(q.len()),
            _ => None,
        }
    }

    /// Increment `f(S)` for a coalition that contains the seller (bit 0).
    pub fn increment(&self, s: Coalition) -> Rational {
        match self {
            Scenario::Linear { q, .. } => {
                s.members().filter(|&i| i > 0).map(|i| q[i - 1].clone()).fold(Rational::zero(), |acc, x| acc + x)
            }
            Scenario::Threshold { k, q, .. } => {
                if s.len() > *k {
                    q.clone()
                } else {
                    Rational::zero()
                }
            }
            Scenario::General { f, .. } => f.get(&s).cloned().unwrap_or_else(Rational::zero),
        }
    }

    /// Same scenario with `p`, `delta` and every increment replaced. Used by
    /// the truthfulness probe to build misreported games.
    pub fn with_report(&self, p: Rational, delta: Rational, f_scale: &Rational) -> Scenario {
        match self {
            Scenario::Linear { q, .. } => Scenario::Linear { p, delta, q: q.iter().map(|x| x * f_scale).collect() },
            Scenario::Threshold { k, q, .. } => Scenario::Threshold { p, delta, k: *k, q: q * f_scale },
            Scenario::General { f, .. } => {
                Scenario::General { p, delta, f: f.iter().map(|(c, x)| (*c, x * f_scale)).collect() }
            }
        }
    }

    /// Builds the game for `roster`, checking every scenario precondition.
    pub fn build(&self, roster: &Roster) -> Result<Game, GameError> {
        let n = roster.recommenders.len();
        check_probability("p", self.p())?;
        check_nonnegative("delta", self.delta())?;
        let p = self.p();
        match self {
            Scenario::Linear { q, .. } => {
                if q.len() != n {
                    return Err(GameError::WorthTableSize { got: q.len(), expected: n });
                }
                for x in q {
                    check_nonnegative("q_i", x)?;
                }
                let total = q.iter().fold(p.clone(), |acc, x| acc + x);
                if total > Rational::one() {
                    return Err(GameError::ProbabilityOverflow(exact_string(&total)));
                }
            }
            Scenario::Threshold { k, q, .. } => {
                if *k < 1 || *k > n {
                    return Err(GameError::ThresholdOutOfRange { k: *k, n });
                }
                check_nonnegative("q", q)?;
                let total = p + q;
                if total > Rational::one() {
                    return Err(GameError::ProbabilityOverflow(exact_string(&total)));
                }
            }
            Scenario::General { f, .. } => {
                let cap = Rational::one() - p;
                for (c, value) in f {
                    let label = roster.label(*c);
                    if c.index() >> (n + 1) != 0 {
                        return Err(GameError::CoalitionOutOfRange(31 - c.0.leading_zeros() as usize));
                    }
                    if !c.contains(0) {
                        return Err(GameError::IncrementWithoutSeller(label));
                    }
                    if *c == Coalition::singleton(0) && !value.is_zero() {
                        return Err(GameError::SellerAloneHasIncrement(exact_string(value)));
                    }
                    if value.is_negative() || *value > cap {
                        return Err(GameError::IncrementOutOfRange { coalition: label, value: exact_string(value) });
                    }
                }
            }
        }
        let delta = self.delta();
        Game::from_worths(roster.clone(), |s| {
            if s.contains(0) {
                (p + self.increment(s)) * delta
            } else {
                Rational::zero()
            }
        })
        .map(|g| g.with_scenario(self.clone()))
    }
}

/// Player ids for a game: the seller first, then the recommenders in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Roster {
    pub seller: String,
    pub recommenders: Vec<String>,
}

impl Roster {
    pub fn new(seller: impl Into<String>, recommenders: Vec<String>) -> Self {
        Roster { seller: seller.into(), recommenders }
    }

    /// `s, r1, ..., rn`.
    pub fn standard(n: usize) -> Self {
        Roster::new("s", (1..=n).map(|i| format!("r{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.recommenders.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn id(&self, i: usize) -> &str {
        if i == 0 {
            &self.seller
        } else {
            &self.recommenders[i - 1]
        }
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        if id == self.seller {
            Some(0)
        } else {
            self.recommenders.iter().position(|r| r == id).map(|i| i + 1)
        }
    }

    pub fn label(&self, s: Coalition) -> String {
        let ids: Vec<&str> = s.members().filter(|&i| i < self.len()).map(|i| self.id(i)).collect();
        format!("{{{}}}", ids.join(","))
    }

    fn validate(&self) -> Result<(), GameError> {
        if self.recommenders.is_empty() {
            return Err(GameError::NoRecommenders);
        }
        check_player_count(self.len())?;
        let mut seen = std::collections::HashSet::new();
        for id in std::iter::once(&self.seller).chain(&self.recommenders) {
            if !seen.insert(id.as_str()) {
                return Err(GameError::DuplicatePlayer(id.clone()));
            }
        }
        Ok(())
    }
}

/// A coalitional game `<N, v>` with one seller (player 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    roster: Roster,
    worth: Vec<Rational>,
    scenario: Option<Scenario>,
}

impl Game {
    /// Tabulates `worth` over all `2^n` coalitions and checks the game
    /// invariants: `v(S) >= 0`, and `v(S) = 0` whenever the seller is absent.
    pub fn from_worths<F>(roster: Roster, worth: F) -> Result<Game, GameError>
    where
        F: Fn(Coalition) -> Rational,
    {
        roster.validate()?;
        let table = (0..1u32 << roster.len()).map(|m| worth(Coalition(m))).collect();
        Game::from_table(roster, table)
    }

    pub fn from_table(roster: Roster, worth: Vec<Rational>) -> Result<Game, GameError> {
        roster.validate()?;
        let expected = 1usize << roster.len();
        if worth.len() != expected {
            return Err(GameError::WorthTableSize { got: worth.len(), expected });
        }
        for (m, value) in worth.iter().enumerate() {
            let c = Coalition(m as u32);
            if value.is_negative() {
                return Err(GameError::InvalidWorth {
                    coalition: roster.label(c),
                    value: exact_string(value),
                    reason: "worths must be non-negative",
                });
            }
            if !c.contains(0) && !value.is_zero() {
                return Err(GameError::InvalidWorth {
                    coalition: roster.label(c),
                    value: exact_string(value),
                    reason: "coalitions without the seller are worth 0",
                });
            }
        }
        Ok(Game { roster, worth, scenario: None })
    }

    fn with_scenario(mut self, scenario: Scenario) -> Self {
        self.scenario = Some(scenario);
        self
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn scenario(&self) -> Option<&Scenario> {
        self.scenario.as_ref()
    }

    pub fn player_count(&self) -> usize {
        self.roster.len()
    }

    pub fn players(&self) -> Vec<Player> {
        (0..self.player_count())
            .map(|i| Player {
                id: self.roster.id(i).to_string(),
                kind: if i == 0 { PlayerKind::Seller } else { PlayerKind::Recommender },
            })
            .collect()
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::grand(self.player_count())
    }

    pub fn worth(&self, s: Coalition) -> Result<&Rational, GameError> {
        self.worth.get(s.index()).ok_or_else(|| GameError::CoalitionOutOfRange(31 - s.0.leading_zeros() as usize))
    }

    /// Worth of the coalition named by player ids.
    pub fn worth_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<&Rational, GameError> {
        let s = self.coalition_of(ids)?;
        self.worth(s)
    }

    pub fn coalition_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Coalition, GameError> {
        ids.iter().try_fold(Coalition::EMPTY, |c, id| {
            let id = id.as_ref();
            self.roster.index_of(id).map(|i| c.with(i)).ok_or_else(|| GameError::UnknownPlayer(id.to_string()))
        })
    }

    pub fn grand_worth(&self) -> &Rational {
        &self.worth[self.grand_coalition().index()]
    }

    /// Dense worth table, indexed by coalition bitmask.
    pub fn worth_table(&self) -> &[Rational] {
        &self.worth
    }

    /// Sale probability `p + f(N)` of the grand coalition, when known.
    pub fn grand_success_probability(&self) -> Option<Rational> {
        self.scenario.as_ref().map(|sc| sc.p() + sc.increment(self.grand_coalition()))
    }

    /// Pointwise sum of two games on the same roster.
    pub fn add(&self, other: &Game) -> Result<Game, GameError> {
        if self.roster != other.roster {
            return Err(GameError::WorthTableSize { got: other.worth.len(), expected: self.worth.len() });
        }
        let table = self.worth.iter().zip(&other.worth).map(|(a, b)| a + b).collect();
        Game::from_table(self.roster.clone(), table)
    }

    /// Every worth multiplied by `factor >= 0`.
    pub fn scale(&self, factor: &Rational) -> Result<Game, GameError> {
        check_nonnegative("scale factor", factor)?;
        let table = self.worth.iter().map(|w| w * factor).collect();
        let scenario =
            self.scenario.as_ref().map(|sc| sc.with_report(sc.p().clone(), sc.delta() * factor, &Rational::one()));
        Ok(Game { roster: self.roster.clone(), worth: table, scenario })
    }
}

/// Linear scenario with the standard roster `s, r1, ..., rn`.
pub fn build_linear(p: Rational, delta: Rational, qs: Vec<Rational>) -> Result<Game, GameError> {
    let roster = Roster::standard(qs.len());
    Scenario::Linear { p, delta, q: qs }.build(&roster)
}

/// Threshold scenario with the standard roster `s, r1, ..., rn`.
pub fn build_threshold(p: Rational, delta: Rational, n: usize, k: usize, q: Rational) -> Result<Game, GameError> {
    Scenario::Threshold { p, delta, k, q }.build(&Roster::standard(n))
}

/// General scenario with the standard roster `s, r1, ..., rn`. Coalitions in
/// `f` are bitmasks over that roster and must contain the seller.
pub fn build_general(
    p: Rational,
    delta: Rational,
    n: usize,
    f: BTreeMap<Coalition, Rational>,
) -> Result<Game, GameError> {
    Scenario::General { p, delta, f }.build(&Roster::standard(n))
}

fn check_nonnegative(what: &'static str, x: &Rational) -> Result<(), GameError> {
    if x.is_negative() {
        return Err(GameError::Negative { what, value: exact_string(x) });
    }
    Ok(())
}

fn check_probability(what: &'static str, x: &Rational) -> Result<(), GameError> {
    if x.is_negative() || *x > Rational::one() {
        return Err(GameError::NotAProbability { what, value: exact_string(x) });
    }
    Ok(())
}

/// Expected payoff per player, in roster order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffVector {
    entries: Vec<(String, Rational)>,
}

impl PayoffVector {
    pub fn new(entries: Vec<(String, Rational)>) -> Self {
        PayoffVector { entries }
    }

    /// Pairs `values` with the game's roster.
    pub fn for_game(game: &Game, values: Vec<Rational>) -> Self {
        let ids = (0..game.player_count()).map(|i| game.roster().id(i).to_string());
        PayoffVector { entries: ids.zip(values).collect() }
    }

    /// Seller receives `v(N)`, recommenders receive 0.
    pub fn seller_takes_all(game: &Game) -> Self {
        let mut values = vec![Rational::zero(); game.player_count()];
        values[0] = game.grand_worth().clone();
        PayoffVector::for_game(game, values)
    }

    pub fn entries(&self) -> &[(String, Rational)] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&Rational> {
        self.entries.iter().find(|(k, _)| k == id).map(|(_, v)| v)
    }

    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter().map(|(_, v)| v)
    }

    pub fn total(&self) -> Rational {
        self.values().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Values aligned with the game's roster; `None` if ids do not match.
    pub fn aligned(&self, game: &Game) -> Option<Vec<Rational>> {
        if self.entries.len() != game.player_count() {
            return None;
        }
        (0..game.player_count()).map(|i| self.get(game.roster().id(i)).cloned()).collect()
    }

    /// `sum_i x_i = v(N)`.
    pub fn is_feasible(&self, game: &Game) -> bool {
        self.aligned(game).is_some() && self.total() == *game.grand_worth()
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(k, v)| format!("{k}={}", exact_string(v))).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn linear_example() -> Game {
        build_linear(q(1, 2), q(1, 1), vec![q(1, 5), q(1, 10)]).unwrap()
    }

    #[test]
    fn linear_matches_table_one() {
        let g = linear_example();
        assert_eq!(g.worth_of(&["s", "r1"]).unwrap(), &q(7, 10));
        assert_eq!(g.worth_of(&["r1", "r2"]).unwrap(), &q(0, 1));
        assert_eq!(g.worth_of(&["s", "r1", "r2"]).unwrap(), &q(4, 5));
        assert_eq!(g.worth_of(&["s"]).unwrap(), &q(1, 2));
        assert_eq!(g.worth_of::<&str>(&[]).unwrap(), &q(0, 1));
    }

    #[test]
    fn zero_margin_linear_is_all_zero() {
        let g = build_linear(q(0, 1), q(0, 1), vec![q(0, 1)]).unwrap();
        assert!(g.worth_table().iter().all(|w| w.is_zero()));
    }

    #[test]
    fn linear_rejects_overflow_and_negatives() {
        assert!(matches!(
            build_linear(q(1, 2), q(1, 1), vec![q(3, 10), q(3, 10)]),
            Err(GameError::ProbabilityOverflow(_))
        ));
        assert!(matches!(build_linear(q(1, 2), q(1, 1), vec![q(-1, 10)]), Err(GameError::Negative { .. })));
        assert!(matches!(build_linear(q(1, 2), q(-1, 1), vec![q(1, 10)]), Err(GameError::Negative { .. })));
    }

    #[test]
    fn threshold_matches_table_one() {
        let (p, qq, d) = (q(1, 10), q(2, 5), q(10, 1));
        let g = build_threshold(p.clone(), d.clone(), 2, 2, qq.clone()).unwrap();
        assert_eq!(g.worth_of(&["s", "r1"]).unwrap(), &(&p * &d));
        assert_eq!(g.worth_of(&["s", "r2"]).unwrap(), &q(1, 1));
        assert_eq!(g.worth_of(&["s", "r1", "r2"]).unwrap(), &((&p + &qq) * &d));
        assert_eq!(g.worth_of(&["r1", "r2"]).unwrap(), &q(0, 1));

        let g1 = build_threshold(p.clone(), d.clone(), 2, 1, qq.clone()).unwrap();
        assert_eq!(g1.worth_of(&["s", "r1"]).unwrap(), &((&p + &qq) * &d));
    }

    #[test]
    fn threshold_rejects_bad_k_and_overflow() {
        assert!(matches!(
            build_threshold(q(1, 2), q(1, 1), 2, 3, q(1, 10)),
            Err(GameError::ThresholdOutOfRange { k: 3, n: 2 })
        ));
        assert!(matches!(
            build_threshold(q(1, 2), q(1, 1), 2, 0, q(1, 10)),
            Err(GameError::ThresholdOutOfRange { .. })
        ));
        assert!(matches!(build_threshold(q(1, 2), q(1, 1), 2, 1, q(3, 5)), Err(GameError::ProbabilityOverflow(_))));
    }

    #[test]
    fn general_uses_sparse_f() {
        let s_r1 = Coalition::from_indices([0, 1]);
        let g = build_general(q(1, 2), q(2, 1), 1, BTreeMap::from([(s_r1, q(3, 10))])).unwrap();
        assert_eq!(g.worth(s_r1).unwrap(), &q(8, 5));

        let empty = build_general(q(1, 2), q(3, 1), 2, BTreeMap::new()).unwrap();
        assert_eq!(empty.worth_of(&["s", "r2"]).unwrap(), &q(3, 2));
        assert_eq!(empty.grand_worth(), &q(3, 2));

        let full = Coalition::grand(3);
        let g = build_general(q(1, 2), q(10, 1), 2, BTreeMap::from([(full, q(2, 5))])).unwrap();
        assert_eq!(g.grand_worth(), &q(9, 1));
    }

    #[test]
    fn general_rejects_bad_f() {
        let s = Coalition::singleton(0);
        assert!(matches!(
            build_general(q(1, 2), q(1, 1), 1, BTreeMap::from([(s, q(1, 10))])),
            Err(GameError::SellerAloneHasIncrement(_))
        ));
        let sr = Coalition::from_indices([0, 1]);
        assert!(matches!(
            build_general(q(1, 2), q(1, 1), 1, BTreeMap::from([(sr, q(3, 5))])),
            Err(GameError::IncrementOutOfRange { .. })
        ));
        let r = Coalition::from_indices([1]);
        assert!(matches!(
            build_general(q(1, 2), q(1, 1), 1, BTreeMap::from([(r, q(1, 10))])),
            Err(GameError::IncrementWithoutSeller(_))
        ));
    }

    #[test]
    fn unknown_ids_are_reported() {
        let g = linear_example();
        assert_eq!(g.worth_of(&["s", "r9"]), Err(GameError::UnknownPlayer("r9".into())));
        assert!(g.worth(Coalition(0b1000)).is_err());
    }

    #[test]
    fn from_table_enforces_seller_rule() {
        let roster = Roster::standard(1);
        let bad = vec![q(0, 1), q(1, 1), q(1, 1), q(2, 1)];
        assert!(matches!(Game::from_table(roster, bad), Err(GameError::InvalidWorth { .. })));
    }

    #[test]
    fn coalition_lex_order() {
        let a = Coalition::from_indices([0]);
        let b = Coalition::from_indices([0, 1]);
        let c = Coalition::from_indices([0, 2]);
        let d = Coalition::from_indices([1]);
        assert!(a.lex_cmp(b).is_lt());
        assert!(b.lex_cmp(c).is_lt());
        assert!(c.lex_cmp(d).is_lt());
    }

    #[test]
    fn seller_takes_all_is_feasible() {
        let g = linear_example();
        let x = PayoffVector::seller_takes_all(&g);
        assert!(x.is_feasible(&g));
        assert_eq!(x.get("s"), Some(&q(4, 5)));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let roster = Roster::new("s", vec!["a".into(), "a".into()]);
        let sc = Scenario::Linear { p: q(0, 1), delta: q(1, 1), q: vec![q(0, 1), q(0, 1)] };
        assert_eq!(sc.build(&roster), Err(GameError::DuplicatePlayer("a".into())));
    }
}
