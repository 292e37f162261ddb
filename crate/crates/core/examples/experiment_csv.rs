// Drive the experiment harness from code: a custom node sweep to CSV, then a
// slice of the invariant suite.

use fraclag::experiments::{run, run_suites, Command, RunConfig};

pub fn run_example() -> fraclag::Result<()> {
    let config = RunConfig {
        theta: Some(vec![0.0]),
        beta: Some(vec![1.0, 20.0]),
        gamma: Some(vec![1.0 / 3.0]),
        ..RunConfig::new(Command::Nodes)
    };
    let csv = run(&config)?.table.to_csv(&config);
    for line in csv.lines().take(5) {
        println!("{line}");
    }
    println!("... {} lines", csv.lines().count());

    let report = run_suites(&RunConfig::new(Command::Verify), Some(&["classical.moments", "special.ml_erfc"]))?;
    for s in &report.suites {
        println!("{:<20} {:>5} cases  max {:.2e}  {}", s.name, s.cases, s.max_residual, if s.passed { "ok" } else { "FAILED" });
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fraclag::Result<()> {
    run_example()
}
