use super::IoError;
use crate::rational::format_f64;
use crate::trust::{McResult, RewardCurve};

pub const REWARD_HEADER: &str = "step,policy,expected_cumulative_reward,stderr";
pub const REWARD_HEADER_MC: &str = "step,policy,expected_cumulative_reward,stderr,mc_mean,mc_stderr";

/// One CSV row. `mc` holds the Monte Carlo mean and its standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardRow {
    pub step: usize,
    pub policy: String,
    pub value: f64,
    pub stderr: f64,
    pub mc: Option<(f64, f64)>,
}

/// Rows for an exactly evaluated curve (standard error 0), optionally
/// paired with a Monte Carlo run of the same policy.
pub fn reward_rows(policy: &str, curve: &RewardCurve, mc: Option<&McResult>) -> Vec<RewardRow> {
    curve
        .points()
        .map(|(step, value)| RewardRow {
            step,
            policy: policy.to_string(),
            value,
            stderr: 0.0,
            mc: mc.map(|m| (m.curve.at(step), m.stderr[step - 1])),
        })
        .collect()
}

/// Values are written with 12 significant digits. The MC columns are added
/// when any row carries them.
pub fn write_reward_csv(rows: &[RewardRow]) -> String {
    let with_mc = rows.iter().any(|r| r.mc.is_some());
    let mut out = String::from(if with_mc { REWARD_HEADER_MC } else { REWARD_HEADER });
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{},{}", r.step, r.policy, format_f64(r.value), format_f64(r.stderr)));
        if with_mc {
            let (m, e) = r.mc.map_or((String::new(), String::new()), |(m, e)| (format_f64(m), format_f64(e)));
            out.push_str(&format!(",{m},{e}"));
        }
        out.push('\n');
    }
    out
}

pub fn read_reward_csv(text: &str) -> Result<Vec<RewardRow>, IoError> {
    let mut lines = text.lines().enumerate();
    let with_mc = match lines.next() {
        Some((_, h)) if h.trim_end() == REWARD_HEADER => false,
        Some((_, h)) if h.trim_end() == REWARD_HEADER_MC => true,
        _ => return Err(IoError::Csv { line: 1, message: format!("expected header `{REWARD_HEADER}`") }),
    };
    let width = if with_mc { 6 } else { 4 };
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| IoError::Csv { line: line_no, message };
        let cells: Vec<&str> = line.trim_end().split(',').collect();
        if cells.len() != width {
            return Err(err(format!("expected {width} fields, found {}", cells.len())));
        }
        let float = |j: usize| cells[j].parse::<f64>().map_err(|_| err(format!("invalid number `{}`", cells[j])));
        let step = cells[0].parse().map_err(|_| err(format!("invalid step `{}`", cells[0])))?;
        let mc = if with_mc && !cells[4].is_empty() { Some((float(4)?, float(5)?)) } else { None };
        rows.push(RewardRow { step, policy: cells[1].to_string(), value: float(2)?, stderr: float(3)?, mc });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_within_twelve_digits() {
        let curve = RewardCurve { values: vec![0.5, 0.83, 1.0 / 3.0] };
        let rows = reward_rows("all", &curve, None);
        let text = write_reward_csv(&rows);
        assert!(text.starts_with("step,policy,expected_cumulative_reward,stderr\n1,all,0.5,0\n"));
        let back = read_reward_csv(&text).unwrap();
        assert_eq!(back.len(), 3);
        assert_eq!(back[2].value, 0.333333333333);
        assert_eq!(write_reward_csv(&back), text);
    }

    #[test]
    fn mc_columns() {
        let curve = RewardCurve { values: vec![0.5, 1.0] };
        let mc =
            McResult { curve: RewardCurve { values: vec![0.49, 1.01] }, stderr: vec![0.01, 0.02], trials: 10, seed: 1 };
        let text = write_reward_csv(&reward_rows("every-k:2", &curve, Some(&mc)));
        assert!(text.contains("2,every-k:2,1,0,1.01,0.02\n"));
        let back = read_reward_csv(&text).unwrap();
        assert_eq!(back[0].mc, Some((0.49, 0.01)));
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_reward_csv("a,b\n").is_err());
        let err = read_reward_csv(&format!("{REWARD_HEADER}\n1,all,0.5,0\n2,all,x,0\n")).unwrap_err();
        assert_eq!(err, IoError::Csv { line: 3, message: "invalid number `x`".into() });
    }
}
