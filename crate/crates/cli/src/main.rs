//! `gerst`: checks and computations for cochains of left bialgebroids.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage, parse, shape or resource errors.

mod failure;
mod load;
mod report;
mod run;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gerst_core::field::{Field, Fp, Q};

use failure::Failure;
use report::{Caps, Report};
use run::{Selection, Task};
use spec::Document;

const BUNDLED_NAME: &str = "<bundled dual_numbers.spec>";
const BUNDLED: &str = include_str!("../fixtures/dual_numbers.spec");

#[derive(Parser, Debug)]
#[command(
    name = "gerst",
    version,
    about = "Cup products, brackets and extension checks for left bialgebroids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized checks. Defaults to the task block's seed, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Scalar field, `Q` or `F(p)`. Overrides the input file; GERST_FIELD applies when neither sets it.
    #[arg(long, global = true)]
    field: Option<String>,

    #[arg(long, global = true)]
    bialgebroid: Option<String>,

    #[arg(long, global = true)]
    coefficients: Option<String>,

    #[arg(long, global = true, env = "GERST_MAX_DIM_U", default_value_t = 8)]
    max_dim_u: usize,

    #[arg(long, global = true, env = "GERST_MAX_BAR_DEGREE", default_value_t = 5)]
    max_bar_degree: usize,

    /// Bound on the unreduced dimension of each bar level.
    #[arg(
        long,
        global = true,
        env = "GERST_MAX_AMBIENT",
        default_value_t = 20_000
    )]
    max_ambient: usize,

    /// Add the wall-clock time to the report. Reports are then no longer reproducible byte for byte.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every algebra, the bialgebroid and the coefficients of a spec.
    CheckAxioms { spec: Option<PathBuf> },
    /// Dimensions of Ext with cocycle representatives.
    Ext {
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Cup products of basis classes.
    Cup {
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Gerstenhaber brackets of basis classes.
    Bracket {
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Operad axioms on random cochains of degree at most `cap`.
    VerifyOperad {
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
    },
    /// Gerstenhaber algebra identities on basis classes.
    VerifyGerstenhaber {
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        /// Top degree of Ext to compute; defaults to `cap`.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// The cup product and bracket recovered from extensions of lengths p and q.
    VerifyExtensionLoop {
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// Hochschild cohomology of an algebra: the enveloping bialgebroid with unit coefficients.
    Hochschild {
        spec: Option<PathBuf>,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

impl Command {
    fn split(self) -> (Option<PathBuf>, Task, Option<String>) {
        match self {
            Command::CheckAxioms { spec } => (spec, Task::CheckAxioms, None),
            Command::Ext { spec, max_degree } => (spec, Task::Ext { max_degree }, None),
            Command::Cup { spec, max_degree } => (spec, Task::Cup { max_degree }, None),
            Command::Bracket { spec, max_degree } => (spec, Task::Bracket { max_degree }, None),
            Command::VerifyOperad { spec, trials, cap } => {
                (spec, Task::VerifyOperad { trials, cap }, None)
            }
            Command::VerifyGerstenhaber {
                spec,
                cap,
                max_degree,
            } => (
                spec,
                Task::VerifyGerstenhaber {
                    cap,
                    max_degree: max_degree.unwrap_or(cap),
                },
                None,
            ),
            Command::VerifyExtensionLoop { spec, p, q } => {
                (spec, Task::VerifyExtensionLoop { p, q }, None)
            }
            Command::Hochschild {
                spec,
                algebra,
                max_degree,
            } => (spec, Task::Hochschild { max_degree }, algebra),
        }
    }
}

/// Reads `Q`, `F(p)` or `GF(p)` for the supported primes.
fn field_name(s: &str) -> Option<String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "Q" || s == "ℚ" {
        return Some("Q".into());
    }
    let inner = s
        .strip_prefix("GF(")
        .or_else(|| s.strip_prefix("F("))
        .and_then(|r| r.strip_suffix(')'))?;
    let p: u64 = inner.parse().ok()?;
    [2, 3, 5, 7, 11, 13, 101]
        .contains(&p)
        .then(|| format!("F({p})"))
}

const FIELD_HELP: &str = "expected Q or F(p) with p one of 2, 3, 5, 7, 11, 13, 101";

/// The field from the flag, the input file, or GERST_FIELD, in that order.
fn choose_field(flag: Option<&str>, doc: &Document) -> Result<String, Failure> {
    if let Some(f) = flag {
        return field_name(f).ok_or_else(|| Failure::Usage(format!("--field {f}: {FIELD_HELP}")));
    }
    if let Some(t) = &doc.field {
        return field_name(&t.text)
            .ok_or_else(|| Failure::at(t, format!("unknown field `{}`: {FIELD_HELP}", t.text)));
    }
    match std::env::var("GERST_FIELD") {
        Ok(f) => {
            field_name(&f).ok_or_else(|| Failure::Usage(format!("GERST_FIELD={f}: {FIELD_HELP}")))
        }
        Err(_) => Ok("Q".into()),
    }
}

fn dispatch(
    field: &str,
    doc: &Document,
    task: &Task,
    sel: &Selection,
    out: &mut Report,
) -> Result<(), Failure> {
    fn go<F: Field>(
        doc: &Document,
        task: &Task,
        sel: &Selection,
        out: &mut Report,
    ) -> Result<(), Failure> {
        run::run::<F>(doc, task, sel, out)
    }
    match field {
        "Q" => go::<Q>(doc, task, sel, out),
        "F(2)" => go::<Fp<2>>(doc, task, sel, out),
        "F(3)" => go::<Fp<3>>(doc, task, sel, out),
        "F(5)" => go::<Fp<5>>(doc, task, sel, out),
        "F(7)" => go::<Fp<7>>(doc, task, sel, out),
        "F(11)" => go::<Fp<11>>(doc, task, sel, out),
        "F(13)" => go::<Fp<13>>(doc, task, sel, out),
        "F(101)" => go::<Fp<101>>(doc, task, sel, out),
        other => Err(Failure::Usage(format!("unsupported field {other}"))),
    }
}

fn execute(cli: Cli) -> (Report, u8) {
    let start = Instant::now();
    let caps = Caps {
        max_dim_u: cli.max_dim_u,
        max_bar_degree: cli.max_bar_degree,
        max_ambient: cli.max_ambient,
    };
    let timing = cli.timing;
    let field_flag = cli.field.clone();
    let (path, task, algebra) = cli.command.split();
    let spec_label = path
        .as_ref()
        .map_or(BUNDLED_NAME.to_string(), |p| p.display().to_string());
    let mut out = Report::new(task.echo(), spec_label, caps);
    let sel = Selection {
        algebra,
        bialgebroid: cli.bialgebroid,
        coefficients: cli.coefficients,
        seed: cli.seed,
    };

    let result = (|| -> Result<(), Failure> {
        let src = match &path {
            None => BUNDLED.to_string(),
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?,
        };
        let doc = spec::parse(&src)?;
        let field = choose_field(field_flag.as_deref(), &doc)?;
        dispatch(&field, &doc, &task, &sel, &mut out)
    })();
    let code = out.finish(result.as_ref().err());
    if timing {
        out.elapsed_ms = Some(start.elapsed().as_millis());
    }
    (out, code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let (report, code) = execute(cli);
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
        if let Some(e) = &report.error {
            eprintln!("gerst: {} error: {}", e.kind, e.message);
        }
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_names() {
        assert_eq!(field_name("Q").as_deref(), Some("Q"));
        assert_eq!(field_name("F(7)").as_deref(), Some("F(7)"));
        assert_eq!(field_name("GF( 101 )").as_deref(), Some("F(101)"));
        assert_eq!(field_name("F(17)"), None);
        assert_eq!(field_name("F(4)"), None);
        assert_eq!(field_name("R"), None);
    }

    #[test]
    fn the_bundled_fixture_parses() {
        let doc = spec::parse(BUNDLED).unwrap();
        assert_eq!(choose_field(None, &doc).unwrap(), "Q");
        assert_eq!(choose_field(Some("F(3)"), &doc).unwrap(), "F(3)");
        assert!(matches!(
            choose_field(Some("F(9)"), &doc),
            Err(Failure::Usage(_))
        ));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
