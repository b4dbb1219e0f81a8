// Driving the command line from code: a job spec, its rendered report, and
// the exit codes the binary would return.

use clap::Parser;
use cohomforge::cli::{execute, exit_code, JobSpec};

pub fn run_example() -> cohomforge::Result<()> {
    let job = JobSpec::parse_from(["cohomforge", "cohomology", "--group", "C4", "--module", "Z/4", "--theory", "exterior", "--max-degree", "5", "--format", "csv"]);
    print!("{}", execute(&job)?.body);

    let job = JobSpec::parse_from(["cohomforge", "compare", "--group", "C3", "--module", "Z", "--max-degree", "2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&execute(&job)?.body)?;
    println!("β^2 iso for C3: {}", json["beta"]["degrees"][2]["is_iso"]);

    let too_big = JobSpec::parse_from(["cohomforge", "cohomology", "--group", "S3", "--module", "Z", "--max-degree", "8"]);
    let err = execute(&too_big).err().expect("guard trips");
    println!("exit {}: {err}", exit_code(&err));

    println!("round trip: {}", job.to_args().join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("command line example");
}
