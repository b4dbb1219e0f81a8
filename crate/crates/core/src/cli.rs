//! The `cohomforge` command line: `cohomology`, `compare`, `e1` and `papercheck`.

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, ValueEnum};

use crate::cohom::{comparison_maps, compute_table, Theory};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::gmod::{GModule, ModuleSpec};
use crate::grp::Group;
use crate::papercheck;
use crate::ss::e1_page;

pub const THREADS_ENV: &str = "COHOMFORGE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// One cohomology table
    Cohomology,
    /// The maps α, β, γ and the δ-projection
    Compare,
    /// The E1 page of the exterior spectral sequence
    E1,
    /// Recompute every reproduced claim
    Papercheck,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// One invocation of the tool.
#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(name = "cohomforge", version, about = "Exact classical, symmetric, exterior and δ-cohomology of finite groups")]
pub struct JobSpec {
    #[arg(value_enum)]
    pub command: Command,

    /// C<n>, D<n>, S<n>, products like C2xC2, or @table.json
    #[arg(long)]
    pub group: Option<String>,

    /// Z, Z/<k>, F2, Zsign, ZG or @module.json
    #[arg(long)]
    pub module: Option<String>,

    /// classical, normalized, symmetric, exterior, delta or ks
    #[arg(long, default_value = "classical")]
    pub theory: Theory,

    #[arg(long = "max-degree", default_value_t = 6)]
    pub max_degree: usize,

    #[arg(long, default_value_t = 5)]
    pub pmax: usize,

    #[arg(long, default_value_t = 4)]
    pub qmax: usize,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Worker threads; falls back to COHOMFORGE_THREADS, then to all cores
    #[arg(long)]
    pub threads: Option<usize>,

    /// Largest basis of any based module
    #[arg(long = "max-basis")]
    pub max_basis: Option<u128>,
}

impl JobSpec {
    /// Arguments that parse back to this job.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec![
            "cohomforge".to_string(),
            self.command.to_possible_value().expect("no skipped variants").get_name().to_string(),
        ];
        let mut push = |flag: &str, value: String| {
            out.push(format!("--{flag}"));
            out.push(value);
        };
        if let Some(g) = &self.group {
            push("group", g.clone());
        }
        if let Some(m) = &self.module {
            push("module", m.clone());
        }
        push("theory", self.theory.name().to_string());
        push("max-degree", self.max_degree.to_string());
        push("pmax", self.pmax.to_string());
        push("qmax", self.qmax.to_string());
        push("format", self.format.to_possible_value().expect("no skipped variants").get_name().to_string());
        if let Some(p) = &self.out {
            push("out", p.display().to_string());
        }
        if let Some(t) = self.threads {
            push("threads", t.to_string());
        }
        if let Some(b) = self.max_basis {
            push("max-basis", b.to_string());
        }
        out
    }

    pub fn limits(&self) -> Limits {
        self.max_basis.map_or_else(Limits::default, Limits::with_max_basis)
    }

    fn coefficients(&self) -> Result<GModule> {
        let g = self.group.as_deref().ok_or_else(|| Error::Parse("--group is required".into()))?;
        let m = self.module.as_deref().ok_or_else(|| Error::Parse("--module is required".into()))?;
        let group = Arc::new(Group::parse_spec(g)?);
        ModuleSpec::parse(m)?.build(&group)
    }

    fn threads(&self) -> Result<Option<usize>> {
        if self.threads.is_some() {
            return Ok(self.threads);
        }
        match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| Error::Parse(format!("{THREADS_ENV}={v} is not a thread count"))),
            Err(_) => Ok(None),
        }
    }
}

/// A rendered report and whether the run counts as a success.
pub struct Report {
    pub body: String,
    pub success: bool,
}

/// Runs `job` on a pool of the requested size.
pub fn execute(job: &JobSpec) -> Result<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = job.threads()? {
        if n == 0 {
            return Err(Error::Parse("thread count must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Mismatch(format!("thread pool: {e}")))?;
    pool.install(|| render(job))
}

fn render(job: &JobSpec) -> Result<Report> {
    let limits = job.limits();
    let body = match job.command {
        Command::Cohomology => {
            let t = compute_table(job.theory, &job.coefficients()?, job.max_degree, &limits)?;
            pick(job.format, || t.to_text(), || t.to_json(), || t.to_csv())
        }
        Command::Compare => {
            let c = comparison_maps(&job.coefficients()?, job.max_degree, &limits)?;
            pick(job.format, || c.to_text(), || serde_json::to_string_pretty(&c).expect("reports serialize"), || c.to_csv())
        }
        Command::E1 => {
            let p = e1_page(&job.coefficients()?, job.pmax, job.qmax, &limits)?;
            pick(job.format, || p.to_text(), || p.to_json(), || p.to_csv())
        }
        Command::Papercheck => {
            let m = papercheck::run_all(&limits);
            let body = pick(job.format, || m.to_text(), || m.to_json(), || m.to_csv());
            return Ok(Report { body, success: m.all_pass });
        }
    };
    Ok(Report { body, success: true })
}

fn pick(format: Format, text: impl FnOnce() -> String, json: impl FnOnce() -> String, csv: impl FnOnce() -> String) -> String {
    match format {
        Format::Text => text(),
        Format::Json => {
            let mut s = json();
            s.push('\n');
            s
        }
        Format::Csv => csv(),
    }
}

/// 2 for bad input, 3 for a size guard, 1 for anything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidGroup(_) | Error::InvalidModule(_) => 2,
        Error::Guard { .. } => 3,
        _ => 1,
    }
}

/// Parses `args`, runs the job and writes the report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let job = match JobSpec::try_parse_from(args) {
        Ok(job) => job,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let report = match execute(&job) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &job.out {
        Some(path) => std::fs::write(path, &report.body),
        None => {
            print!("{}", report.body);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    if report.success {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> JobSpec {
        JobSpec::try_parse_from(std::iter::once("cohomforge").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults() {
        let j = parse(&["cohomology", "--group", "C2", "--module", "F2"]);
        assert_eq!((j.max_degree, j.pmax, j.qmax), (6, 5, 4));
        assert_eq!(j.format, Format::Text);
        assert_eq!(j.theory, Theory::Classical);
        assert_eq!(j.limits(), Limits::default());
    }

    #[test]
    fn round_trip() {
        let jobs = [
            parse(&["e1", "--group", "S3", "--module", "Z", "--pmax", "3", "--qmax", "2", "--format", "json"]),
            parse(&["cohomology", "--group", "C5", "--module", "Z/5", "--theory", "exterior", "--max-basis", "99"]),
            parse(&["compare", "--group", "C2", "--module", "F2", "--out", "/tmp/x.csv", "--threads", "2"]),
            parse(&["papercheck"]),
        ];
        for j in jobs {
            assert_eq!(JobSpec::try_parse_from(j.to_args()).unwrap(), j);
        }
    }

    #[test]
    fn bad_input() {
        assert!(JobSpec::try_parse_from(["cohomforge", "cohomology", "--theory", "nope"]).is_err());
        assert!(JobSpec::try_parse_from(["cohomforge", "frobnicate"]).is_err());
        let j = parse(&["cohomology", "--group", "Q7", "--module", "Z"]);
        assert_eq!(exit_code(&execute(&j).err().unwrap()), 2);
        let j = parse(&["cohomology", "--group", "C2"]);
        assert_eq!(exit_code(&execute(&j).err().unwrap()), 2);
    }

    #[test]
    fn guard_exit_code() {
        let j = parse(&["cohomology", "--group", "S3", "--module", "Z", "--max-degree", "9"]);
        let e = execute(&j).err().unwrap();
        assert_eq!(exit_code(&e), 3);
        assert!(e.to_string().contains("--max-basis"));
    }

    #[test]
    fn trivial_group_table() {
        let j = parse(&["cohomology", "--group", "C1", "--module", "Z", "--max-degree", "3", "--format", "csv"]);
        let body = execute(&j).unwrap().body;
        let rows: Vec<&str> = body.lines().skip(1).collect();
        assert_eq!(rows, ["H,C1,Z,0,1,", "H,C1,Z,1,0,", "H,C1,Z,2,0,", "H,C1,Z,3,0,"]);
    }
}
