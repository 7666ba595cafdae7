use std::process::ExitCode;

use fairprice_core::core_lp::{core_contains, core_is_nonempty, CoreNonEmptiness, CoreViolation};
use fairprice_core::fair_division::{
    anonymity_proof_shapley, nash_bargaining_for_game, shapley, shapley_arguments, to_prices, ArgumentGame, PaymentMode,
};
use fairprice_core::game::{Game, PayoffVector};
use fairprice_core::io::{parse_spec, price_report_csv, price_report_json, MethodResult, Spec};
use fairprice_core::rational::{exact_string, parse_rational, Rational};

use crate::error::CliError;
use crate::{emit, Format, PriceArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Shapley,
    AnonShapley,
    Nash,
    CoreCheck,
    CoreNonEmpty,
}

impl Method {
    fn parse(name: &str) -> Result<Method, CliError> {
        Ok(match name.trim() {
            "shapley" => Method::Shapley,
            "anon-shapley" => Method::AnonShapley,
            "nash" => Method::Nash,
            "core-check" => Method::CoreCheck,
            "core-nonempty" => Method::CoreNonEmpty,
            other => {
                return Err(CliError::Invalid(format!(
                    "unknown method `{other}`; expected shapley, anon-shapley, nash, core-check or core-nonempty"
                )))
            }
        })
    }

    fn name(self) -> &'static str {
        match self {
            Method::Shapley => "shapley",
            Method::AnonShapley => "anon-shapley",
            Method::Nash => "nash",
            Method::CoreCheck => "core-check",
            Method::CoreNonEmpty => "core-nonempty",
        }
    }
}

pub fn run(args: &PriceArgs) -> Result<ExitCode, CliError> {
    let methods = args.method.split(',').map(Method::parse).collect::<Result<Vec<_>, _>>()?;
    let mode: PaymentMode = args.payment.parse().map_err(CliError::Invalid)?;
    let path = args.game.display();
    let text = std::fs::read_to_string(&args.game).map_err(|e| CliError::Invalid(format!("{path}: {e}")))?;
    let spec = parse_spec(&text).map_err(|e| match CliError::from(e) {
        CliError::Invalid(m) => CliError::Invalid(format!("{path}: {m}")),
        other => other,
    })?;
    let results = match &spec {
        Spec::Game(game) => price_game(game, &methods, mode, args.payoff.as_deref())?,
        Spec::Arguments(ag) => price_arguments(ag, &methods, mode)?,
    };
    let doc = match args.format {
        Format::Json => price_report_json(spec.kind(), mode.as_str(), &results),
        Format::Csv => price_report_csv(&results),
    };
    emit(args.out.as_ref(), &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn payoffs(method: Method, game: &Game, x: PayoffVector, mode: PaymentMode) -> Result<MethodResult, CliError> {
    let prices = to_prices(&x, game, mode)?;
    Ok(MethodResult::Payoffs { method: method.name().into(), payoffs: x, prices: Some(prices), per_argument: None })
}

fn price_game(
    game: &Game,
    methods: &[Method],
    mode: PaymentMode,
    payoff: Option<&str>,
) -> Result<Vec<MethodResult>, CliError> {
    let mut results = Vec::new();
    for &m in methods {
        match m {
            Method::Shapley => results.push(payoffs(m, game, shapley(game)?, mode)?),
            Method::Nash => results.push(payoffs(m, game, nash_bargaining_for_game(game)?, mode)?),
            Method::AnonShapley => {
                return Err(CliError::Invalid(
                    "anon-shapley needs an argument game (a spec with `arguments` and `ownership`)".into(),
                ))
            }
            Method::CoreCheck | Method::CoreNonEmpty => {}
        }
    }
    let computed: Vec<(String, PayoffVector)> = results
        .iter()
        .filter_map(|r| match r {
            MethodResult::Payoffs { method, payoffs, .. } => Some((method.clone(), payoffs.clone())),
            _ => None,
        })
        .collect();

    let mut out = Vec::new();
    let mut payoff_results = results.into_iter();
    for &m in methods {
        match m {
            Method::Shapley | Method::Nash => out.extend(payoff_results.next()),
            Method::AnonShapley => {}
            Method::CoreCheck => {
                let first = match payoff {
                    Some(text) => ("payoff".to_string(), parse_payoff(game, text)?),
                    None => ("seller-takes-all".to_string(), PayoffVector::seller_takes_all(game)),
                };
                for (label, x) in std::iter::once(first).chain(computed.iter().cloned()) {
                    out.push(core_check(game, label, &x)?);
                }
            }
            Method::CoreNonEmpty => out.push(match core_is_nonempty(game)? {
                CoreNonEmptiness::NonEmpty { point } => {
                    MethodResult::CoreNonEmpty { nonempty: true, point: Some(point), certificate: None }
                }
                CoreNonEmptiness::Empty { certificate } => {
                    let weights = certificate
                        .balanced_weights(game)
                        .map(|w| w.weights.iter().map(|(c, x)| (game.roster().label(*c), x.clone())).collect());
                    MethodResult::CoreNonEmpty { nonempty: false, point: None, certificate: weights }
                }
            }),
        }
    }
    Ok(out)
}

fn core_check(game: &Game, label: String, x: &PayoffVector) -> Result<MethodResult, CliError> {
    let check = core_contains(game, x)?;
    let violation = check.violation.map(|v| match v {
        CoreViolation::Infeasible { total, grand_worth } => {
            format!("payoffs sum to {} but v(N) = {}", exact_string(&total), exact_string(&grand_worth))
        }
        CoreViolation::Blocking { coalition, worth, payoff } => format!(
            "{} is worth {} but is paid {}",
            game.roster().label(coalition),
            exact_string(&worth),
            exact_string(&payoff)
        ),
    });
    Ok(MethodResult::CoreCheck { vector: label, in_core: check.in_core, violation })
}

/// `id=value,...` in roster order; players not listed get 0.
fn parse_payoff(game: &Game, text: &str) -> Result<PayoffVector, CliError> {
    let roster = game.roster();
    let mut values = vec![None; game.player_count()];
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (id, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Invalid(format!("--payoff entry `{part}` is not `id=value`")))?;
        let i = roster
            .index_of(id.trim())
            .ok_or_else(|| CliError::Invalid(format!("--payoff names unknown player `{}`", id.trim())))?;
        let x =
            parse_rational(value).map_err(|e| CliError::Invalid(format!("--payoff value for `{}`: {e}", id.trim())))?;
        if values[i].replace(x).is_some() {
            return Err(CliError::Invalid(format!("--payoff lists `{}` twice", id.trim())));
        }
    }
    let values = values.into_iter().map(Option::unwrap_or_default).collect::<Vec<Rational>>();
    Ok(PayoffVector::for_game(game, values))
}

fn price_arguments(ag: &ArgumentGame, methods: &[Method], mode: PaymentMode) -> Result<Vec<MethodResult>, CliError> {
    if mode == PaymentMode::PerSale {
        return Err(CliError::Invalid(
            "per-sale prices need a sale probability, which argument games do not have".into(),
        ));
    }
    methods
        .iter()
        .map(|&m| match m {
            Method::Shapley => Ok(MethodResult::Payoffs {
                method: m.name().into(),
                payoffs: ag.plain_shapley_payoffs()?,
                prices: None,
                per_argument: Some(shapley_arguments(ag)?),
            }),
            Method::AnonShapley => {
                let shares = anonymity_proof_shapley(ag)?;
                Ok(MethodResult::Payoffs {
                    method: m.name().into(),
                    payoffs: shares.per_recommender,
                    prices: None,
                    per_argument: Some(shares.per_argument),
                })
            }
            other => Err(CliError::Invalid(format!(
                "{} needs a coalitional game; argument games support shapley and anon-shapley",
                other.name()
            ))),
        })
        .collect()
}
