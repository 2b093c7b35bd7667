//! Runs one structural scenario and prints a line per case.
//!
//! cargo run --release --example scenario -- small-semioval-classes 7 --reduced

use std::time::Instant;

use semiarc::search::scenarios::{verify_scenario, Scenario, ScenarioOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name: Scenario = args.first().map(String::as_str).unwrap_or("two-line-semiarcs").parse()?;
    let q: usize = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let opts = ScenarioOptions {
        workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        reduced: args.iter().any(|a| a == "--reduced"),
        ..Default::default()
    };
    let start = Instant::now();
    let report = verify_scenario(name, q, &opts)?;
    for c in &report.cases {
        let outcome = match (&c.skipped, c.passed) {
            (Some(why), _) => format!("skipped ({why})"),
            (None, true) => "ok".into(),
            (None, false) => "FAIL".into(),
        };
        println!("{:<28} witnesses {:>6} conforming {:>6} nodes {:>12}  {outcome}", c.label, c.witnesses, c.conforming, c.nodes);
    }
    println!("{name} q={q}: {:?} in {:.2?}", report.status, start.elapsed());
    Ok(())
}
