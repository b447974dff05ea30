//! One PASS/FAIL line per acceptance criterion. `ACCEPTANCE_SCALE=quick`
//! runs a tenth of each sample.

use std::path::Path;

use twoterm::acceptance::{run, run_cli, Scale};

fn main() {
    let scale = match std::env::var("ACCEPTANCE_SCALE").as_deref() {
        Ok("quick") => Scale::Quick,
        _ => Scale::Full,
    };
    let mut reports: Vec<_> = (1..=9).map(|id| run(id, scale)).inspect(|r| println!("{r}")).collect();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cli = run_cli(Path::new(env!("CARGO_BIN_EXE_twoterm")), &golden, scale);
    println!("{cli}");
    reports.push(cli);
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria passed", reports.len() - failed.len(), reports.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
