//! `ncsplit`: command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! unparseable input (the message carries the offending position).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncsplit::catalog::{example1_suite, example2_suite, SuiteReport};
use ncsplit::centralizer::centralizer_of_set;
use ncsplit::endo::{Battery, Format};
use ncsplit::notation::parse_poly_arg;
use ncsplit::ring::{Ring, Value};
use ncsplit::search::{enumerate_splittings, find_roots, SearchMode, SearchTask};
use ncsplit::splitting::{corollary_hom_check, SplittingWitness};
use ncsplit::{verify_cyclic_theorem, Error, NcPoly};
use serde_json::{json, Value as Json};

/// Seed for sampled checks when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "ncsplit", version, about = "Splittings of polynomials with noncommutative coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Right,
    Left,
    Commuting,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a witness `c (X - a_1) ... (X - a_n)`.
    Expand {
        #[arg(long)]
        witness: String,
    },
    /// Rotate a witness cyclically by `k` places.
    Rotate {
        #[arg(long)]
        witness: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        k: i64,
    },
    /// Divide by `X - a` on one side: `f = q (X - a) + r` or `f = (X - a) q + r`.
    Divide {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Evaluate at an element, on the right, the left, or as a substitution.
    Eval {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Check a witness: rotations, roots, and the substitution homomorphism.
    Verify {
        #[arg(long)]
        witness: String,
        /// Number of sampled polynomials for the homomorphism check.
        #[arg(long, default_value_t = 6)]
        samples: usize,
    },
    /// Enumerate splittings of a polynomial over a finite ring.
    Search {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "all")]
        mode: String,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Elements that are both right and left roots.
    Roots {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        poly: String,
    },
    /// Centralizer of a set of elements given as a JSON array.
    Centralizer {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        gens: String,
    },
    /// Endomorphisms of the three-dimensional table algebra over Z/p.
    Endos {
        #[arg(long)]
        p: u64,
    },
    /// The X^3 - X^2 example; with `--p` also the endomorphism battery.
    Example1 {
        #[arg(long, default_value = "UT:2:Z")]
        ring: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// The X^3 - 4 example.
    Example2 {
        #[arg(long, default_value = "Mat:3:Z")]
        ring: String,
    },
    /// Export the endomorphism battery tables.
    Export {
        #[arg(long)]
        p: u64,
        /// Only this table (endomorphisms, monoid, root_action, cycle_action,
        /// minpoly, roots, cycles, checks).
        #[arg(long)]
        table: Option<String>,
    },
}

struct Outcome {
    output: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, failure: None }
    }
}

fn payload(arg: &str) -> Result<String, Error> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parse_json(text: &str) -> Result<Json, Error> {
    serde_json::from_str(text).map_err(|e| {
        let offset: usize = text.lines().take(e.line().saturating_sub(1)).map(|l| l.len() + 1).sum();
        Error::Parse { pos: offset + e.column().saturating_sub(1), msg: e.to_string() }
    })
}

fn ring_arg(spec: Option<&str>) -> Result<Option<Ring>, Error> {
    spec.map(Ring::parse_spec).transpose()
}

fn poly_arg(ring: Option<&Ring>, arg: &str) -> Result<NcPoly, Error> {
    parse_poly_arg(ring, payload(arg)?.trim())
}

fn witness_arg(arg: &str) -> Result<SplittingWitness, Error> {
    SplittingWitness::from_json(&parse_json(&payload(arg)?)?)
}

fn element_arg(ring: &Ring, arg: &str) -> Result<Value, Error> {
    ring.parse_value(&parse_json(&payload(arg)?)?)
}

fn pretty(j: &Json) -> String {
    serde_json::to_string_pretty(j).expect("json value")
}

fn csv_line(cells: &[String]) -> String {
    let quoted: Vec<String> = cells
        .iter()
        .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
        .collect();
    quoted.join(",") + "\n"
}

fn suite_output(rep: &SuiteReport, format: OutFormat) -> String {
    match format {
        OutFormat::Text => rep.text(),
        OutFormat::Json => pretty(&rep.to_json()),
        OutFormat::Csv => {
            let mut s = csv_line(&["check".into(), "result".into(), "detail".into()]);
            for c in &rep.checks {
                s.push_str(&csv_line(&[c.name.clone(), if c.pass { "PASS" } else { "FAIL" }.into(), c.detail.clone()]));
            }
            s
        }
    }
}

fn poly_output(f: &NcPoly, format: OutFormat) -> String {
    match format {
        OutFormat::Text => format!("{f}\n"),
        OutFormat::Json => pretty(&f.to_json()),
        OutFormat::Csv => {
            let mut s = csv_line(&["degree".into(), "coefficient".into()]);
            for (i, c) in f.coeffs().iter().enumerate() {
                s.push_str(&csv_line(&[i.to_string(), c.to_json().to_string()]));
            }
            s
        }
    }
}

fn values_output(label: &str, xs: &[Value], format: OutFormat) -> String {
    match format {
        OutFormat::Text => xs.iter().map(|x| format!("{x}\n")).collect(),
        OutFormat::Json => pretty(&json!({ label: xs.iter().map(Value::to_json).collect::<Vec<_>>() })),
        OutFormat::Csv => {
            let mut s = csv_line(&["index".into(), label.into()]);
            for (i, x) in xs.iter().enumerate() {
                s.push_str(&csv_line(&[(i + 1).to_string(), x.to_json().to_string()]));
            }
            s
        }
    }
}

fn battery_format(format: OutFormat) -> Format {
    match format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
    }
}

/// Scalar-coefficient polynomials of degree at most 3 from `seed`.
fn sample_polys(ring: &Ring, n: usize, seed: u64) -> Vec<NcPoly> {
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 7) as i64 - 3
    };
    (0..n)
        .map(|_| {
            let coeffs: Vec<Value> = (0..4).map(|_| ring.from_int(next())).collect();
            NcPoly::new(ring.clone(), coeffs).expect("scalar coefficients")
        })
        .collect()
}

fn execute(cmd: &Command, common: &Common) -> Result<Outcome, Error> {
    let format = common.format;
    Ok(match cmd {
        Command::Expand { witness } => Outcome::ok(poly_output(&witness_arg(witness)?.expand(), format)),
        Command::Rotate { witness, k } => {
            let w = witness_arg(witness)?.rotate(*k);
            Outcome::ok(match format {
                OutFormat::Csv => values_output("pseudoroot", w.pseudoroots(), format),
                _ => pretty(&w.to_json()),
            })
        }
        Command::Divide { ring, poly, element, side } => {
            let ring = ring_arg(ring.as_deref())?;
            let f = poly_arg(ring.as_ref(), poly)?;
            let a = element_arg(f.ring(), element)?;
            let (q, r) = match side {
                Side::Right => f.right_divide_linear(&a)?,
                Side::Left => f.left_divide_linear(&a)?,
                Side::Commuting => return Err(Error::Unsupported("division side is right or left".into())),
            };
            Outcome::ok(match format {
                OutFormat::Text => format!("quotient: {q}\nremainder: {r}\n"),
                OutFormat::Json => pretty(&json!({ "quotient": q.to_json(), "remainder": r.to_json() })),
                OutFormat::Csv => {
                    csv_line(&["quotient".into(), "remainder".into()])
                        + &csv_line(&[q.to_json()["coeffs"].to_string(), r.to_json().to_string()])
                }
            })
        }
        Command::Eval { ring, poly, element, side } => {
            let ring = ring_arg(ring.as_deref())?;
            let f = poly_arg(ring.as_ref(), poly)?;
            let a = element_arg(f.ring(), element)?;
            let v = match side {
                Side::Right => f.right_eval(&a)?,
                Side::Left => f.left_eval(&a)?,
                Side::Commuting => f.eval_commuting(&a)?,
            };
            Outcome::ok(values_output("value", &[v], format))
        }
        Command::Verify { witness, samples } => {
            let w = witness_arg(witness)?;
            let rep = verify_cyclic_theorem(&w);
            let corollary = if rep.commutation_ok {
                Some(corollary_hom_check(&w, &sample_polys(w.ring(), *samples, common.seed))?)
            } else {
                None
            };
            let failure = if let Some(k) = rep.first_differing_rotation {
                Some(format!("rotation {k} expands differently"))
            } else if let Some(i) = rep.first_nonroot() {
                Some(format!("pseudoroot {i} is not a {}", rep.root_label().trim_end_matches('s')))
            } else if corollary.as_ref().is_some_and(|c| !c.ok()) {
                Some("substitution map is not a ring homomorphism on the samples".into())
            } else {
                None
            };
            let mut j = rep.to_json();
            j["theorem_holds"] = json!(rep.theorem_holds());
            if let Some(c) = &corollary {
                j["homomorphism"] = json!({
                    "seed": common.seed,
                    "samples": samples,
                    "additive": c.additive,
                    "multiplicative": c.multiplicative,
                    "unital": c.unital,
                    "kills_f": c.kills_f,
                    "rotation_permutes": c.rotation_permutes,
                });
            }
            let output = match format {
                OutFormat::Json => pretty(&j),
                _ => {
                    let mut s = String::new();
                    let _ = writeln!(s, "expanded: {}", rep.expanded);
                    let _ = writeln!(s, "commutation hypothesis: {}", if rep.commutation_ok { "holds" } else { "fails" });
                    for (i, k) in &rep.violations {
                        let _ = writeln!(s, "  coefficient {i} does not commute with pseudoroot {k}");
                    }
                    let _ = writeln!(s, "rotations equal: {}", rep.rotations_equal);
                    for v in &rep.roots {
                        let _ = writeln!(s, "value at pseudoroot {}: {}", v.index, v.value);
                    }
                    for (i, o) in rep.obstructions.iter().enumerate() {
                        let _ = writeln!(s, "[a{}, a{}] = {o}", i + 1, (i + 1) % rep.obstructions.len() + 1);
                    }
                    if let Some(c) = &corollary {
                        let _ = writeln!(s, "substitution homomorphism on {samples} samples (seed {}): {}", common.seed, c.ok());
                    }
                    if format == OutFormat::Csv {
                        let mut t = csv_line(&["index".into(), "value".into()]);
                        for v in &rep.roots {
                            t.push_str(&csv_line(&[v.index.to_string(), v.value.to_json().to_string()]));
                        }
                        t
                    } else {
                        s
                    }
                }
            };
            Outcome { output, failure }
        }
        Command::Search { ring, poly, mode, workers } => {
            let ring = ring_arg(ring.as_deref())?;
            let f = poly_arg(ring.as_ref(), poly)?;
            let mode: SearchMode = mode.parse()?;
            let mut task = SearchTask::new(f, mode)?;
            if let Some(n) = workers {
                task = task.with_workers(*n);
            }
            let out = enumerate_splittings(&task)?;
            Outcome::ok(match format {
                OutFormat::Json => out.json_lines().join("\n") + "\n",
                OutFormat::Text => {
                    let mut s = String::new();
                    if mode == SearchMode::RootsOnly {
                        for r in &out.roots {
                            let _ = writeln!(s, "{r}");
                        }
                    }
                    for sp in &out.splittings {
                        let roots: Vec<String> = sp.witness.pseudoroots().iter().map(|a| format!("(X - {a})")).collect();
                        let _ = writeln!(s, "class {}: {}", sp.class, roots.join(""));
                    }
                    if mode == SearchMode::RootsOnly {
                        let _ = writeln!(s, "{} roots", out.roots.len());
                    } else {
                        let _ = writeln!(s, "{} splittings, {} cycle classes ({mode})", out.splittings.len(), out.cycle_classes);
                    }
                    s
                }
                OutFormat::Csv => {
                    let mut s = csv_line(&["cycle_class".into(), "pseudoroots".into()]);
                    for sp in &out.splittings {
                        let roots: Vec<Json> = sp.witness.pseudoroots().iter().map(Value::to_json).collect();
                        s.push_str(&csv_line(&[sp.class.to_string(), Json::from(roots).to_string()]));
                    }
                    s
                }
            })
        }
        Command::Roots { ring, poly } => {
            let ring = ring_arg(ring.as_deref())?;
            let f = poly_arg(ring.as_ref(), poly)?;
            Outcome::ok(values_output("root", &find_roots(&f)?, format))
        }
        Command::Centralizer { ring, gens } => {
            let ring = Ring::parse_spec(ring)?;
            let list = parse_json(&payload(gens)?)?;
            let gens: Vec<Value> = list
                .as_array()
                .ok_or_else(|| Error::Json("generators must be a JSON array".into()))?
                .iter()
                .map(|g| ring.parse_value(g))
                .collect::<Result<_, _>>()?;
            let desc = centralizer_of_set(&ring, &gens)?;
            let (kind, xs) = match (desc.elements(), desc.basis()) {
                (Some(xs), _) => ("elements", xs),
                (None, Some(xs)) => ("basis", xs),
                (None, None) => unreachable!("description has elements or a basis"),
            };
            Outcome::ok(match format {
                OutFormat::Json => pretty(&serde_json::to_value(&desc).map_err(|e| Error::Json(e.to_string()))?),
                OutFormat::Text => {
                    let mut s = format!("{} {kind}{}\n", xs.len(), if desc.is_scalars(&ring) { " (the scalars)" } else { "" });
                    for x in xs {
                        let _ = writeln!(s, "{x}");
                    }
                    s
                }
                OutFormat::Csv => values_output(kind, xs, format),
            })
        }
        Command::Endos { p } => {
            let b = Battery::run(*p)?;
            Outcome::ok(b.render(battery_format(format), Some("endomorphisms"))?)
        }
        Command::Example1 { ring, p } => {
            let rep = example1_suite(&Ring::parse_spec(ring)?)?;
            let mut output = suite_output(&rep, format);
            let mut failure = rep.first_failure().map(|c| c.name.clone());
            if let Some(p) = p {
                let b = Battery::run(*p)?;
                output.push('\n');
                output.push_str(&b.render(battery_format(format), None)?);
                if failure.is_none() {
                    failure = b.checks().into_iter().find(|c| !c.1).map(|c| c.0);
                }
            }
            Outcome { output, failure }
        }
        Command::Example2 { ring } => {
            let rep = example2_suite(&Ring::parse_spec(ring)?)?;
            Outcome { output: suite_output(&rep, format), failure: rep.first_failure().map(|c| c.name.clone()) }
        }
        Command::Export { p, table } => {
            let b = Battery::run(*p)?;
            Outcome::ok(b.render(battery_format(format), table.as_deref())?)
        }
    })
}

fn input_text(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Divide { poly, .. } | Command::Eval { poly, .. } | Command::Search { poly, .. } | Command::Roots { poly, .. } => {
            Some(poly)
        }
        _ => None,
    }
}

/// Runs one invocation, writing the report to `out` (or `--out`) and
/// diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(&cli.command, &cli.common) {
        Ok(outcome) => {
            let written = match &cli.common.out {
                Some(path) => std::fs::write(path, &outcome.output),
                None => out.write_all(outcome.output.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            match outcome.failure {
                Some(item) => {
                    let _ = writeln!(err, "check failed: {item}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let (Error::Parse { pos, .. }, Some(text)) = (&e, input_text(&cli.command)) {
                if !text.starts_with('@') && !text.trim_start().starts_with('{') {
                    let _ = writeln!(err, "  {text}\n  {}^", " ".repeat(*pos));
                }
            }
            2
        }
    }
}

fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
