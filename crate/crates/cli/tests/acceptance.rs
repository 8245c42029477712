//! One line per acceptance criterion; exits nonzero when any fails.

use foliation_lab::acceptance::run_all;

fn main() {
    let seed = std::env::var("FOLIATION_LAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(2024);
    let outcomes = run_all(seed);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
