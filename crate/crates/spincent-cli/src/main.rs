use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spincent::algebra::multiply_diagrams;
use spincent::characters::{dim_cpk, spin_irrep_dimension, supported_rule_cases, tensor_oracle, tensor_rule, updown_table, IrrepKind, IrrepLabel};
use spincent::clifford::SpaceSpec;
use spincent::diagrams::{enumerate_gb, gb_count, parse_diagram, Parametrization};
use spincent::ops::{realize, Family};
use spincent::verify::{self, SuiteReport};

#[derive(Parser)]
#[command(name = "spincent", version, about = "Exact computations in Pin(N)/Spin(N) centralizer algebras")]
struct Cli {
    /// Human-readable table instead of JSON
    #[arg(long, global = true)]
    table: bool,
    /// Also write the JSON report here
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Default directory for reports when --out is not given
    #[arg(long, global = true, env = "SPINCENT_OUT_DIR")]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Odd,
    Even,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Odd => Family::Odd,
            FamilyArg::Even => Family::Even,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Rt,
    Inv,
}

#[derive(Subcommand)]
enum Cmd {
    /// dim CP_k = |GB^k_k|; with --n and --N also the up-down counts and irrep dimensions
    Dims {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
    },
    /// List GB^k_l
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Product lhs * rhs (lhs applied after rhs) in the generic algebra
    Multiply {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        k: usize,
        /// y1..y10 or a JSON diagram
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Matrix of a diagram on Delta (x) V^k, as COO
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        diagram: String,
        #[arg(long, value_enum, default_value = "rt")]
        param: ParamArg,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form tensor rules against the character oracle
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 3)]
        max: u32,
    },
    /// dim T^0_{k,s} and, for even N, its A-split, against the predicted sums
    T0 {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: Option<usize>,
    },
}

/// A report plus whether it counts as a failure.
struct Outcome {
    name: &'static str,
    report: Value,
    ok: bool,
}

fn spec(n: usize, big_n: usize) -> Result<SpaceSpec> {
    SpaceSpec::new(n, big_n).with_context(|| format!("bad rank n = {n}, N = {big_n}"))
}

fn suite(name: &'static str, r: SuiteReport) -> Outcome {
    let ok = r.passed;
    Outcome { name, report: serde_json::to_value(r).expect("plain data"), ok }
}

fn run(cmd: &Cmd) -> Result<Outcome> {
    Ok(match *cmd {
        Cmd::Dims { k, n, big_n } => {
            let mut report = json!({ "k": k, "dim_cpk": dim_cpk(k).to_string(), "gb_count": gb_count(k, k).to_string() });
            if let (Some(n), Some(nn)) = (n, big_n) {
                spec(n, nn)?;
                let mut rows = vec![];
                for (lam, m) in updown_table(n, nn, k) {
                    let label = IrrepLabel::new(IrrepKind::DeltaBracket, lam.clone(), n, nn)?;
                    rows.push(json!({ "lambda": lam.to_string(), "walks": m.to_string(), "dim": spin_irrep_dimension(&label)? }));
                }
                report["n"] = json!(n);
                report["N"] = json!(nn);
                report["updown"] = Value::Array(rows);
            }
            Outcome { name: "dims", report, ok: true }
        }
        Cmd::Enumerate { k, l } => {
            let rows: Vec<Value> = enumerate_gb(k, l.unwrap_or(k))
                .iter()
                .enumerate()
                .map(|(i, d)| json!({ "index": i, "name": d.to_string(), "through": d.through_count(), "isolated": d.isolated_count(), "diagram": d }))
                .collect();
            Outcome { name: "enumerate", report: Value::Array(rows), ok: true }
        }
        Cmd::Multiply { family, k, ref lhs, ref rhs } => {
            let (a, b) = (parse_diagram(lhs)?, parse_diagram(rhs)?);
            if a.l != k || b.k != k {
                bail!("shapes {}x{} and {}x{} do not compose through k = {k}", a.k, a.l, b.k, b.l);
            }
            let p = multiply_diagrams(family.into(), &a, &b)?;
            Outcome { name: "multiply", report: json!({ "lhs": a.to_string(), "rhs": b.to_string(), "product": p.to_string(), "expr": p }), ok: true }
        }
        Cmd::Realize { n, big_n, ref diagram, param } => {
            let sp = spec(n, big_n)?;
            let d = parse_diagram(diagram)?;
            let param = match param {
                ParamArg::Rt => Parametrization::Rt,
                ParamArg::Inv => Parametrization::Inv,
            };
            Outcome { name: "realize", report: realize(&sp, &d, param)?.to_coo_json(), ok: true }
        }
        Cmd::Verify { suite: ref suite_name, n, big_n, k, seed } => {
            spec(n, big_n)?;
            let r = verify::run_suite(suite_name, n, big_n, k, seed).map_err(anyhow::Error::msg)?;
            suite("verify", r)
        }
        Cmd::Decompose { n, big_n, max } => {
            spec(n, big_n)?;
            let mut rows = vec![];
            let mut ok = true;
            for (a, b) in supported_rule_cases(n, big_n, max) {
                let rule = tensor_rule(&a, &b)?.to_irreducible();
                let oracle = tensor_oracle(&a, &b)?;
                ok &= rule == oracle;
                rows.push(json!({ "lhs": a.to_string(), "rhs": b.to_string(), "rule": rule.to_string(), "oracle": oracle.to_string(), "agree": rule == oracle }));
            }
            Outcome { name: "decompose", report: Value::Array(rows), ok }
        }
        Cmd::T0 { n, big_n, k, s } => suite("t0", verify::dual_pair(&spec(n, big_n)?, k, s.unwrap_or(k))),
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_string) => format!("{} = {}", cell(&a[0]), cell(&a[1])),
        Value::Array(a) if a.len() > 4 => format!("[{} items]", a.len()),
        other => other.to_string(),
    }
}

fn table(v: &Value, out: &mut String) {
    match v {
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let cols: Vec<&String> = rows[0].as_object().expect("object").keys().collect();
            let cells: Vec<Vec<String>> = rows.iter().map(|r| cols.iter().map(|c| cell(&r[c.as_str()])).collect()).collect();
            let widths: Vec<usize> = cols.iter().enumerate().map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0)).collect();
            let line = |r: Vec<&str>| r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ");
            let _ = writeln!(out, "{}", line(cols.iter().map(|c| c.as_str()).collect()));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
            }
        }
        Value::Object(m) => {
            let w = m.keys().map(String::len).max().unwrap_or(0);
            for (k, x) in m {
                match x {
                    Value::Array(a) if a.iter().all(Value::is_object) && !a.is_empty() => {
                        let _ = writeln!(out, "{k}:");
                        table(x, out);
                    }
                    Value::Array(a) if !a.is_empty() => {
                        let _ = writeln!(out, "{k}:");
                        for e in a {
                            let _ = writeln!(out, "  {}", cell(e));
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{k:<w$}  {}", cell(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{}", cell(other));
        }
    }
}

fn emit(cli: &Cli, name: &str, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    let shown = if cli.table {
        let mut s = String::new();
        table(v, &mut s);
        s
    } else {
        text.clone() + "\n"
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(shown.as_bytes());
    let path = cli.out.clone().or_else(|| cli.out_dir.as_ref().map(|d| d.join(format!("{name}.json"))));
    if let Some(p) = path {
        std::fs::write(&p, &text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(o) => {
            if let Err(e) = emit(&cli, o.name, &o.report) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            let record = json!({ "ok": false, "error": format!("{e:#}") });
            let _ = emit(&cli, "error", &record);
            ExitCode::from(2)
        }
    }
}
