//! The `radicals` command line front end.
//!
//! ```text
//! radicals [--base q|fp:<p>] [--json] [--seed N] [--jobs N] [--max-degree N] <verb> ...
//! ```
//!
//! Group specs are comma-separated radical expressions. Exit codes: 0 ok,
//! 1 engine/oracle mismatch (`verify`, `batch`), 2 domain or parse error,
//! 3 resource bound exceeded.

mod report;
mod verbs;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use crate::arith::{is_prime_u64, pow_mod};
use crate::error::{Error, Result};
use crate::oracle::{compositum_degree, DEFAULT_SEED};
use crate::radical::Radical;
use crate::rgroup::{BaseField, FiniteFieldGroup};

pub use report::{exit_code, ErrorBody, Provenance, Report, Status, SCHEMA};
use report::{render_failure, Failure, Outcome};

/// Source of independent degrees for `verify`.
pub trait DegreeOracle: Sync {
    /// `[ℚ(gens):ℚ]`.
    fn degree(&self, gens: &[Radical], max_degree: usize, seed: u64) -> Result<u64>;
    /// `[𝔽_p(Γ):𝔽_p]`.
    fn degree_ff(&self, gamma: &FiniteFieldGroup) -> Result<u64>;
}

/// Primitive elements over ℚ, and brute-force order search over 𝔽_p.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactOracle;

impl DegreeOracle for ExactOracle {
    fn degree(&self, gens: &[Radical], max_degree: usize, seed: u64) -> Result<u64> {
        Ok(compositum_degree(gens, max_degree, seed)?.degree as u64)
    }

    fn degree_ff(&self, gamma: &FiniteFieldGroup) -> Result<u64> {
        let (p, e) = (gamma.p(), gamma.order());
        Ok((1..=e).find(|&d| pow_mod(p % e, d, e) == 1 % e).expect("p is a unit mod e"))
    }
}

fn parse_base(s: &str) -> std::result::Result<BaseField, String> {
    match s {
        "q" | "Q" => Ok(BaseField::Rationals),
        _ => {
            let p = s
                .strip_prefix("fp:")
                .and_then(|t| t.parse::<u64>().ok())
                .ok_or_else(|| format!("expected 'q' or 'fp:<p>', got '{s}'"))?;
            if is_prime_u64(p) {
                Ok(BaseField::Fp(p))
            } else {
                Err(format!("{p} is not prime"))
            }
        }
    }
}

fn base_arg(b: BaseField) -> String {
    match b {
        BaseField::Rationals => "q".into(),
        BaseField::Fp(p) => format!("fp:{p}"),
    }
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Base field: `q` or `fp:<p>`
    #[arg(long, global = true, default_value = "q", value_parser = parse_base)]
    pub base: BaseField,
    /// Emit one JSON object per command
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized oracle steps
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for `batch`
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Oracle degree bound
    #[arg(long, global = true, default_value_t = 64)]
    pub max_degree: usize,
}

#[derive(Parser, Debug)]
#[command(name = "radicals", version, about = "Degrees and entanglement of radical extensions", args_override_self = true)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Degree of K(Gamma)/K with the per-prime breakdown
    Degree { group: String },
    /// Index |Gamma:K*|
    Index { group: String },
    /// Generators of the radicals inside K(zeta(2P))
    Entangle {
        ell: u64,
        /// Restrict to the part inside Q(zeta(N))
        #[arg(long)]
        conductor: Option<u64>,
    },
    /// Minimal polynomial over Q of a sum of radicals (oracle)
    Minpoly {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Kneser's condition
    CheckKneser { group: String },
    /// Schinzel's criterion for Q(zeta(n), a^(1/n))
    CheckAbelian {
        #[arg(allow_hyphen_values = true)]
        a: String,
        n: u32,
    },
    /// Irreducibility of x^n - a over Q
    Irreducible {
        #[arg(allow_hyphen_values = true)]
        a: String,
        n: u32,
    },
    /// Quadratic Gauss sum for an odd prime
    Gauss { p: u64 },
    /// Explicit expression of a radical in a cyclotomic field
    Express {
        #[arg(allow_hyphen_values = true)]
        radical: String,
    },
    /// Intermediate fields of K(Gamma)
    Subfields { group: String },
    /// Compare engine and oracle degrees
    Verify { group: String },
    /// Degree over F_p of <F_p*, zeta(e)>
    Ff { p: u64, e: u64 },
    /// Run newline-delimited commands from a file
    Batch { file: PathBuf },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Degree { .. } => "degree",
            Command::Index { .. } => "index",
            Command::Entangle { .. } => "entangle",
            Command::Minpoly { .. } => "minpoly",
            Command::CheckKneser { .. } => "check-kneser",
            Command::CheckAbelian { .. } => "check-abelian",
            Command::Irreducible { .. } => "irreducible",
            Command::Gauss { .. } => "gauss",
            Command::Express { .. } => "express",
            Command::Subfields { .. } => "subfields",
            Command::Verify { .. } => "verify",
            Command::Ff { .. } => "ff",
            Command::Batch { .. } => "batch",
        }
    }
}

fn dispatch(opts: &Options, cmd: &Command, oracle: &dyn DegreeOracle) -> std::result::Result<Outcome, Failure> {
    match cmd {
        Command::Degree { group } => verbs::degree(opts, group),
        Command::Index { group } => verbs::index(opts, group),
        Command::Entangle { ell, conductor } => verbs::entangle(opts, *ell, *conductor),
        Command::Minpoly { expr } => verbs::minpoly(opts, expr),
        Command::CheckKneser { group } => verbs::check_kneser(opts, group),
        Command::CheckAbelian { a, n } => verbs::check_abelian(opts, a, *n),
        Command::Irreducible { a, n } => verbs::irreducible(opts, a, *n),
        Command::Gauss { p } => verbs::gauss(*p),
        Command::Express { radical } => verbs::express(opts, radical),
        Command::Subfields { group } => verbs::subfields(opts, group),
        Command::Verify { group } => verbs::verify(opts, group, oracle),
        Command::Ff { p, e } => verbs::ff(*p, *e),
        Command::Batch { .. } => Err(Error::Domain("batch files cannot nest".into()).into()),
    }
}

/// Output of one command: rendered text and exit code.
struct Rendered {
    out: String,
    code: i32,
}

fn execute(opts: &Options, cmd: &Command, oracle: &dyn DegreeOracle) -> Rendered {
    let verb = cmd.verb();
    match dispatch(opts, cmd, oracle) {
        Ok(o) => {
            let out = if opts.json {
                serde_json::to_string(&Report::ok(verb, &o)).expect("report serializes") + "\n"
            } else {
                o.text.clone()
            };
            Rendered { out, code: o.code }
        }
        Err(f) => {
            let out = if opts.json {
                serde_json::to_string(&Report::failed(verb, &f)).expect("report serializes") + "\n"
            } else {
                render_failure(&f)
            };
            Rendered { out, code: exit_code(&f.error) }
        }
    }
}

fn parse_argv<I, T>(argv: I) -> std::result::Result<Cli, Rendered>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv).map_err(|e| Rendered { out: e.render().to_string(), code: if e.use_stderr() { 2 } else { 0 } })
}

fn batch_line(opts: &Options, line: &str, oracle: &dyn DegreeOracle) -> Rendered {
    let Some(tokens) = shlex::split(line) else {
        let f = Failure { error: Error::Parse { offset: 0, message: "unbalanced quotes".into() }, input: Some(line.into()) };
        let out = if opts.json {
            serde_json::to_string(&Report::failed("batch", &f)).expect("report serializes") + "\n"
        } else {
            render_failure(&f)
        };
        return Rendered { out, code: 2 };
    };
    let mut argv: Vec<String> =
        vec!["radicals".into(), "--base".into(), base_arg(opts.base), "--seed".into(), opts.seed.to_string()];
    argv.extend(["--max-degree".into(), opts.max_degree.to_string()]);
    if opts.json {
        argv.push("--json".into());
    }
    argv.extend(tokens);
    match parse_argv(argv) {
        Ok(cli) => execute(&cli.opts, &cli.command, oracle),
        Err(r) => r,
    }
}

fn batch(opts: &Options, path: &Path, oracle: &dyn DegreeOracle) -> Rendered {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Rendered { out: format!("error: cannot read {}: {e}\n", path.display()), code: 2 },
    };
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let run_all = || -> Vec<Rendered> { lines.par_iter().map(|l| batch_line(opts, l, oracle)).collect() };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build() {
        Ok(pool) => pool.install(run_all),
        Err(_) => lines.iter().map(|l| batch_line(opts, l, oracle)).collect(),
    };
    let ok = results.iter().filter(|r| r.code == 0).count();
    let mismatch = results.iter().filter(|r| r.code == 1).count();
    let errors = results.len() - ok - mismatch;
    let mut out = String::new();
    for (line, r) in lines.iter().zip(&results) {
        if !opts.json {
            out.push_str(&format!("> {line}\n"));
        }
        out.push_str(&r.out);
    }
    let summary = json!({"lines": results.len(), "ok": ok, "mismatch": mismatch, "error": errors});
    if opts.json {
        let report = json!({"schema": SCHEMA, "command": "batch", "status": "ok", "provenance": "both", "payload": summary});
        out.push_str(&format!("{report}\n"));
    } else {
        out.push_str(&format!("summary: {ok} ok, {mismatch} mismatch, {errors} error\n"));
    }
    let code = if mismatch > 0 { 1 } else { results.iter().map(|r| r.code).find(|&c| c != 0).unwrap_or(0) };
    Rendered { out, code }
}

/// Run with an explicit oracle, writing every report to `out`.
pub fn run_with<I, T>(argv: I, oracle: &dyn DegreeOracle, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let r = match parse_argv(argv) {
        Ok(cli) => match &cli.command {
            Command::Batch { file } => batch(&cli.opts, file, oracle),
            cmd => execute(&cli.opts, cmd, oracle),
        },
        Err(r) => r,
    };
    let _ = out.write_all(r.out.as_bytes());
    let _ = out.flush();
    r.code
}

/// Run against [`ExactOracle`], writing to stdout.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &ExactOracle, &mut std::io::stdout().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let mut argv = vec!["radicals"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &ExactOracle, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    fn json_of(args: &[&str]) -> (i32, serde_json::Value) {
        let mut a = vec!["--json"];
        a.extend_from_slice(args);
        let (code, out) = capture(&a);
        (code, serde_json::from_str(out.trim()).unwrap())
    }

    #[test]
    fn degree_report() {
        let (code, v) = json_of(&["degree", "zeta(4), rt(2,4)"]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["total"], 8);
        assert_eq!(v["payload"]["kneser"], true);
        assert!(v["payload"]["perPrime"]["2"].is_object());
        assert_eq!(v["provenance"], "engine");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(capture(&["degree", "rt(2,"]).0, 2);
        assert_eq!(capture(&["gauss", "9"]).0, 2);
        assert_eq!(capture(&["--max-degree", "2", "minpoly", "rt(2,3)"]).0, 3);
        assert_eq!(capture(&["verify", "rt(-4,4)"]).0, 0);
        assert_eq!(capture(&["--base", "fp:7", "verify", "zeta(5)"]).0, 0);
        assert_eq!(capture(&["--base", "fp:8", "degree", ""]).0, 2);
    }

    #[test]
    fn parse_error_offset() {
        let (_, v) = json_of(&["degree", "zeta(4), rt(2,x)"]);
        assert_eq!(v["status"], "error");
        assert_eq!(v["error"]["kind"], "parse");
        assert!(v["error"]["offset"].as_u64().unwrap() >= 9);
    }

    #[test]
    fn ff_base() {
        let (_, v) = json_of(&["--base", "fp:7", "degree", "zeta(5)"]);
        assert_eq!(v["payload"]["total"], 4);
        let (_, v) = json_of(&["ff", "7", "30"]);
        assert_eq!(v["payload"]["total"], 4);
    }
}
