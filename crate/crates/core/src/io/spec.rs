//! JSON game specifications.
//!
//! A coalitional game:
//!
//! ```json
//! {
//!   "players": ["s", "r1", "r2"],
//!   "scenario": "linear",
//!   "p": "1/2",
//!   "delta": 1,
//!   "q": [0.1, 0.05]
//! }
//! ```
//!
//! `players` lists the seller first and defaults to `s, r1, ..., rn`.
//! `scenario` is one of
//!
//! * `linear`: `q` holds one increment per recommender;
//! * `threshold`: `k` and a single increment `q`, plus `n` when `players` is
//!   absent;
//! * `general`: `f` maps comma-joined recommender ids to the increment of the
//!   coalition of those recommenders with the seller (`""` is the seller
//!   alone), plus `n` when `players` is absent;
//! * `table`: `worth` maps comma-joined player ids, seller included, to an
//!   arbitrary worth.
//!
//! An argument game has `arguments`, `worth` keyed by comma-joined argument
//! names, and `ownership` mapping each recommender to its arguments:
//!
//! ```json
//! {
//!   "arguments": ["a", "b", "c"],
//!   "worth": {"a,b": 1, "a,c": 1, "a,b,c": 1},
//!   "ownership": {"r1": ["a"], "r2": ["b", "c"]}
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings such as `"3/5"`; both are read
//! exactly.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde_json::{Map, Value};

use super::IoError;
use crate::fair_division::ArgumentGame;
use crate::game::{check_player_count, Coalition, Game, Roster, Scenario};
use crate::rational::{parse_rational, Rational};

/// A parsed specification file.
#[derive(Debug, Clone)]
pub enum Spec {
    Game(Game),
    Arguments(ArgumentGame),
}

impl Spec {
    pub fn kind(&self) -> &'static str {
        match self {
            Spec::Game(g) => g.scenario().map_or("table", Scenario::kind),
            Spec::Arguments(_) => "arguments",
        }
    }
}

pub fn parse_spec(text: &str) -> Result<Spec, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| field("(top level)", "expected a JSON object"))?;
    if obj.contains_key("arguments") {
        Ok(Spec::Arguments(argument_game(obj)?))
    } else {
        Ok(Spec::Game(game(obj)?))
    }
}

pub fn parse_game(text: &str) -> Result<Game, IoError> {
    match parse_spec(text)? {
        Spec::Game(g) => Ok(g),
        Spec::Arguments(_) => Err(field("arguments", "expected a coalitional game, found an argument game")),
    }
}

fn field(name: &str, message: impl Into<String>) -> IoError {
    IoError::Field { field: name.to_string(), message: message.into() }
}

fn get<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, IoError> {
    obj.get(name).ok_or_else(|| field(name, "missing"))
}

fn rational(value: &Value, name: &str) -> Result<Rational, IoError> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(field(name, "expected a number or a string such as \"3/5\"")),
    };
    parse_rational(&text).map_err(|e| field(name, e.to_string()))
}

fn count(value: &Value, name: &str) -> Result<usize, IoError> {
    value.as_u64().and_then(|x| usize::try_from(x).ok()).ok_or_else(|| field(name, "expected a non-negative integer"))
}

fn string_list(value: &Value, name: &str) -> Result<Vec<String>, IoError> {
    let items = value.as_array().ok_or_else(|| field(name, "expected an array of strings"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| v.as_str().map(str::to_string).ok_or_else(|| field(&format!("{name}[{i}]"), "expected a string")))
        .collect()
}

fn object<'a>(value: &'a Value, name: &str) -> Result<&'a Map<String, Value>, IoError> {
    value.as_object().ok_or_else(|| field(name, "expected an object"))
}

/// Splits `"a, b"` into trimmed names; `""` is the empty set.
fn names(key: &str) -> Vec<&str> {
    key.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn roster(obj: &Map<String, Value>, n: Option<usize>) -> Result<Roster, IoError> {
    match (obj.get("players"), n) {
        (Some(players), _) => {
            let ids = string_list(players, "players")?;
            let Some((seller, recommenders)) = ids.split_first() else {
                return Err(field("players", "needs a seller and at least one recommender"));
            };
            let roster = Roster::new(seller.clone(), recommenders.to_vec());
            if let Some(n) = n {
                if n != roster.recommenders.len() {
                    return Err(field(
                        "n",
                        format!("is {n} but `players` lists {} recommenders", roster.recommenders.len()),
                    ));
                }
            }
            Ok(roster)
        }
        (None, Some(n)) => standard_roster(n),
        (None, None) => Err(field("players", "missing (or give `n`)")),
    }
}

fn standard_roster(n: usize) -> Result<Roster, IoError> {
    check_player_count(n.saturating_add(1)).map_err(IoError::Game)?;
    Ok(Roster::standard(n))
}

fn coalition(roster: &Roster, key: &str, name: &str, with_seller: bool) -> Result<Coalition, IoError> {
    let mut c = if with_seller { Coalition::singleton(0) } else { Coalition::EMPTY };
    for id in names(key) {
        let i = roster.index_of(id).ok_or_else(|| field(name, format!("unknown player `{id}`")))?;
        if with_seller && i == 0 {
            return Err(field(name, "keys list recommenders only; the seller is implied"));
        }
        c = c.with(i);
    }
    Ok(c)
}

fn game(obj: &Map<String, Value>) -> Result<Game, IoError> {
    let kind = get(obj, "scenario")?.as_str().ok_or_else(|| field("scenario", "expected a string"))?;
    let n = obj.get("n").map(|v| count(v, "n")).transpose()?;
    if kind == "table" {
        let roster = roster(obj, n)?;
        check_player_count(roster.len()).map_err(IoError::Game)?;
        let worths = object(get(obj, "worth")?, "worth")?;
        let mut table = vec![Rational::zero(); 1 << roster.len()];
        for (key, value) in worths {
            let name = format!("worth.{key}");
            let c = coalition(&roster, key, &name, false)?;
            table[c.index()] = rational(value, &name)?;
        }
        return Game::from_table(roster, table).map_err(IoError::Game);
    }
    let p = rational(get(obj, "p")?, "p")?;
    let delta = rational(get(obj, "delta")?, "delta")?;
    let (scenario, roster) = match kind {
        "linear" => {
            let items = get(obj, "q")?.as_array().ok_or_else(|| field("q", "expected an array"))?;
            let q = items
                .iter()
                .enumerate()
                .map(|(i, v)| rational(v, &format!("q[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let roster =
                if obj.contains_key("players") { roster(obj, n)? } else { standard_roster(n.unwrap_or(q.len()))? };
            (Scenario::Linear { p, delta, q }, roster)
        }
        "threshold" => {
            let k = count(get(obj, "k")?, "k")?;
            let q = rational(get(obj, "q")?, "q")?;
            (Scenario::Threshold { p, delta, k, q }, roster(obj, n)?)
        }
        "general" => {
            let roster = roster(obj, n)?;
            let mut f = BTreeMap::new();
            for (key, value) in object(get(obj, "f")?, "f")? {
                let name = format!("f.{key}");
                let c = coalition(&roster, key, &name, true)?;
                if f.insert(c, rational(value, &name)?).is_some() {
                    return Err(field(&name, "the same coalition is listed twice"));
                }
            }
            (Scenario::General { p, delta, f }, roster)
        }
        other => {
            return Err(field(
                "scenario",
                format!("unknown scenario `{other}`; expected linear, threshold, general or table"),
            ))
        }
    };
    scenario.build(&roster).map_err(IoError::Game)
}

fn argument_game(obj: &Map<String, Value>) -> Result<ArgumentGame, IoError> {
    let arguments = string_list(get(obj, "arguments")?, "arguments")?;
    let mut worths = BTreeMap::new();
    for (key, value) in object(get(obj, "worth")?, "worth")? {
        let name = format!("worth.{key}");
        let set: BTreeSet<String> = names(key).into_iter().map(str::to_string).collect();
        if worths.insert(set, rational(value, &name)?).is_some() {
            return Err(field(&name, "the same argument set is listed twice"));
        }
    }
    let ownership = object(get(obj, "ownership")?, "ownership")?
        .iter()
        .map(|(r, args)| Ok((r.clone(), string_list(args, &format!("ownership.{r}"))?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    ArgumentGame::new(arguments, &worths, ownership).map_err(IoError::Division)
}
