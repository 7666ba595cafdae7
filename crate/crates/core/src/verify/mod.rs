//! Self-checks bundled with the tool: each suite evaluates a list of claims
//! and reports the measured values.

mod games;
mod trust;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bounds,
    Truthfulness,
    Figure2,
    CoreLaws,
    ShapleyAxioms,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Bounds, Suite::Truthfulness, Suite::Figure2, Suite::CoreLaws, Suite::ShapleyAxioms];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Truthfulness => "truthfulness",
            Suite::Figure2 => "figure2",
            Suite::CoreLaws => "core-laws",
            Suite::ShapleyAxioms => "shapley-axioms",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.as_str()).collect();
            format!("unknown suite `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Seed for random games and Monte Carlo runs.
    pub seed: u64,
    /// Monte Carlo trials for the figure2 cross-checks.
    pub trials: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 1, trials: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub measured: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub claims: Vec<Claim>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            writeln!(f, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.measured)?;
        }
        let passed = self.claims.iter().filter(|c| c.pass).count();
        writeln!(f, "{}: {passed}/{} claims passed", self.suite.as_str(), self.claims.len())
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let claims = match suite {
        Suite::Bounds => trust::bounds(),
        Suite::Figure2 => trust::figure2(opts),
        Suite::Truthfulness => games::truthfulness(opts.seed),
        Suite::CoreLaws => games::core_laws(opts.seed),
        Suite::ShapleyAxioms => games::shapley_axioms(opts.seed),
    };
    SuiteReport { suite, claims }
}

/// Collects claims; errors turn into failed claims carrying the message.
#[derive(Default)]
struct Claims(Vec<Claim>);

impl Claims {
    fn check(&mut self, name: &str, pass: bool, measured: impl Into<String>) {
        self.0.push(Claim { name: name.to_string(), pass, measured: measured.into() });
    }

    fn run<E: fmt::Display>(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String), E>) {
        match f() {
            Ok((pass, measured)) => self.check(name, pass, measured),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }
}

/// Random rational `num / den` with `num` in `0..=max_num` and `den` in
/// `1..=max_den`.
fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    Rational::new(rng.gen_range(0..=max_num).into(), rng.gen_range(1..=max_den).into())
}
