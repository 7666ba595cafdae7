use std::process::ExitCode;

use fairprice_core::verify::{run_suite, Suite, VerifyOptions};

use crate::error::CliError;
use crate::{emit, VerifyArgs};

pub fn run(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    let suites = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse::<Suite>().map_err(CliError::Invalid)?]
    };
    if args.trials == 0 {
        return Err(CliError::Invalid("--trials must be at least 1".into()));
    }
    let opts = VerifyOptions { seed: args.seed, trials: args.trials };
    let mut text = String::new();
    let mut ok = true;
    for suite in suites {
        let report = run_suite(suite, &opts);
        ok &= report.all_pass();
        text.push_str(&report.to_string());
    }
    emit(args.out.as_ref(), &text)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
