//! A quick pass of the sampled law suite.

use blendkit::laws::run_all;
use blendkit::RunConfig;

fn main() -> blendkit::Result<()> {
    let report = run_all(7, 20, &RunConfig::default())?;
    print!("{report}");
    std::process::exit(if report.passed() { 0 } else { 1 });
}
