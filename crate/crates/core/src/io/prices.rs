use serde_json::{json, Map, Value};

use crate::fair_division::PriceSchedule;
use crate::game::PayoffVector;
use crate::rational::{decimal_string, exact_string, Rational};

/// Significant digits of decimal renderings.
const DIGITS: usize = 12;

/// Outcome of one pricing method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MethodResult {
    Payoffs {
        method: String,
        payoffs: PayoffVector,
        prices: Option<PriceSchedule>,
        /// Per-argument shares, for argument games.
        per_argument: Option<Vec<(String, Rational)>>,
    },
    CoreCheck {
        /// Which vector was checked, such as `seller-takes-all` or `shapley`.
        vector: String,
        in_core: bool,
        violation: Option<String>,
    },
    CoreNonEmpty {
        nonempty: bool,
        point: Option<PayoffVector>,
        /// Balanced weights `(coalition, weight)` when the Core is empty.
        certificate: Option<Vec<(String, Rational)>>,
    },
}

fn number(r: &Rational) -> Value {
    json!({ "exact": exact_string(r), "decimal": decimal_string(r, DIGITS) })
}

fn entries(list: &[(String, Rational)]) -> Value {
    Value::Array(
        list.iter()
            .map(|(id, r)| {
                let mut m = Map::new();
                m.insert("id".into(), Value::String(id.clone()));
                if let Value::Object(n) = number(r) {
                    m.extend(n);
                }
                Value::Object(m)
            })
            .collect(),
    )
}

/// JSON document with exact (`"3/5"`) and decimal renderings of every value.
pub fn price_report_json(game_kind: &str, payment: &str, results: &[MethodResult]) -> String {
    let results: Vec<Value> = results
        .iter()
        .map(|r| match r {
            MethodResult::Payoffs { method, payoffs, prices, per_argument } => {
                let mut m = Map::new();
                m.insert("method".into(), json!(method));
                m.insert("payoffs".into(), entries(payoffs.entries()));
                if let Some(p) = prices {
                    m.insert("prices".into(), entries(&p.price));
                }
                if let Some(a) = per_argument {
                    m.insert("arguments".into(), entries(a));
                }
                Value::Object(m)
            }
            MethodResult::CoreCheck { vector, in_core, violation } => json!({
                "method": "core-check",
                "vector": vector,
                "in_core": in_core,
                "violation": violation,
            }),
            MethodResult::CoreNonEmpty { nonempty, point, certificate } => {
                let mut m = Map::new();
                m.insert("method".into(), json!("core-nonempty"));
                m.insert("nonempty".into(), json!(nonempty));
                if let Some(p) = point {
                    m.insert("point".into(), entries(p.entries()));
                }
                if let Some(c) = certificate {
                    m.insert("balanced_weights".into(), entries(c));
                }
                Value::Object(m)
            }
        })
        .collect();
    let doc = json!({ "game": game_kind, "payment": payment, "results": results });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

/// Long-format CSV `method,id,quantity,value` with decimal values. Payoff
/// rows have quantity `payoff`, price rows `price`, and the Core methods
/// `in_core`, `nonempty`, `point` or `weight`.
pub fn price_report_csv(results: &[MethodResult]) -> String {
    let mut out = String::from("method,id,quantity,value\n");
    let mut row = |method: &str, id: &str, quantity: &str, value: String| {
        out.push_str(&format!("{},{},{},{}\n", csv_field(method), csv_field(id), quantity, value));
    };
    for r in results {
        match r {
            MethodResult::Payoffs { method, payoffs, prices, per_argument } => {
                for (id, x) in payoffs.entries() {
                    row(method, id, "payoff", decimal_string(x, DIGITS));
                }
                for (id, x) in prices.iter().flat_map(|p| &p.price) {
                    row(method, id, "price", decimal_string(x, DIGITS));
                }
                for (id, x) in per_argument.iter().flatten() {
                    row(method, id, "argument", decimal_string(x, DIGITS));
                }
            }
            MethodResult::CoreCheck { vector, in_core, .. } => {
                row("core-check", vector, "in_core", in_core.to_string());
            }
            MethodResult::CoreNonEmpty { nonempty, point, certificate } => {
                row("core-nonempty", "", "nonempty", nonempty.to_string());
                for (id, x) in point.iter().flat_map(|p| p.entries()) {
                    row("core-nonempty", id, "point", decimal_string(x, DIGITS));
                }
                for (id, x) in certificate.iter().flatten() {
                    row("core-nonempty", id, "weight", decimal_string(x, DIGITS));
                }
            }
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
