//! `qlie`: JSON in, JSON or aligned text out.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on input or usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qlie_core::classify::appendix::{appendix_checks, AppendixScope};
use qlie_core::classify::{canonical_form, table_emit, ClassifyError};
use qlie_core::envelope::{bg_conditions, ideal_truncation, sq_graded_dims, sq_presentation, uq_relations, DEFAULT_BUFFER};
use qlie_core::io::{mat_to_json, qlie_from_json, qlie_to_json, scalar_to_json, space_from_json, tensor_to_json};
use qlie_core::nichols::{nichols_dims, primitives_of_quotient};
use qlie_core::qlie::verify_lifted;
use qlie_core::{Field, LiftedQLie};

const DEFAULT_SEED: u64 = 0x5eed_2012;

#[derive(Parser)]
#[command(name = "qlie", version, about = "Lifted quadratic Lie algebras over exact fields")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    /// T(V)/(h(c)(z) - β(z)).
    Uq,
    /// T(V)/(E₂).
    Sq,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the lifted bracket axioms.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Reduce a two-dimensional bracket with one-dimensional image to its table row.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Relations, filtration dimensions and the PBW comparison of U_Q.
    Envelope {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_BUFFER)]
        buffer: usize,
    },
    /// Primitive elements of the truncated quotient.
    Primitives {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Algebra::Sq)]
        algebra: Algebra,
    },
    /// The eight normal forms instantiated at gamma.
    Table {
        #[arg(long, default_value = "2")]
        gamma: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Exhaustive and randomized checks for surjective brackets.
    Search {
        #[arg(long, default_value = "GF3")]
        field: String,
        #[arg(long, default_value = "case_families")]
        scope: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compare quantum symmetrizer ranks with dim S_Q^n.
    NicholsCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
}

enum Failure {
    Usage(String),
    Math(Value),
}

type Outcome = Result<Value, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// `--input` is a file path, or inline JSON when it starts with `{`.
fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let inline = path.to_str().filter(|s| s.trim_start().starts_with('{'));
    let text = match inline {
        Some(s) => s.to_string(),
        None => std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?,
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: invalid JSON: {e}", path.display())))
}

fn read_qlie(path: &PathBuf) -> Result<LiftedQLie, Failure> {
    let v = read_json(path)?;
    qlie_from_json(&v).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_field(s: &str) -> Result<Field, Failure> {
    s.parse::<Field>().map_err(|e| usage(format!("--field {s}: {e}")))
}

fn verdict(report: Value, ok: bool) -> Outcome {
    if ok {
        Ok(report)
    } else {
        Err(Failure::Math(report))
    }
}

fn cmd_verify(input: &PathBuf) -> Outcome {
    let q = read_qlie(input)?;
    let r = verify_lifted(&q);
    let report = json!({
        "yang_baxter": r.yang_baxter,
        "antisymmetry": r.antisymmetry,
        "bracket_left": r.bracket_left,
        "bracket_right": r.bracket_right,
        "jacobi": r.jacobi,
        "failed": r.failures(),
    });
    verdict(report, r.all())
}

fn cmd_classify(input: &PathBuf) -> Outcome {
    let q = read_qlie(input)?;
    match canonical_form(&q) {
        Ok(cf) => Ok(json!({
            "row": cf.row,
            "gamma": cf.gamma.as_ref().map(scalar_to_json),
            "alpha": mat_to_json(&cf.alpha),
            "gamma_square_class_only": cf.gamma_square_class,
            "path": cf.path,
        })),
        Err(e @ (ClassifyError::PreconditionViolated(_) | ClassifyError::InternalContradiction { .. } | ClassifyError::NotClassifiable(_))) => {
            Err(Failure::Math(json!({ "error": e.to_string() })))
        }
        Err(e) => Err(usage(e)),
    }
}

fn cmd_envelope(input: &PathBuf, degree: usize, buffer: usize) -> Outcome {
    let q = read_qlie(input)?;
    let p = uq_relations(&q).map_err(usage)?;
    let trunc = ideal_truncation(&p, degree, buffer).map_err(|e| Failure::Math(json!({ "error": e.to_string() })))?;
    let filtration = trunc.graded_quotient_dims();
    let graded = sq_graded_dims(&q.space, degree);
    let bg = bg_conditions(&p);
    let pbw = filtration == graded;
    let report = json!({
        "relations": p.relations.iter().map(tensor_to_json).collect::<Vec<_>>(),
        "relations_text": p.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "filtration_dims": filtration,
        "sq_dims": graded,
        "bg": { "i": bg.i, "j": bg.j },
        "pbw": pbw,
    });
    verdict(report, pbw && bg.i && bg.j)
}

fn cmd_primitives(input: &PathBuf, degree: usize, algebra: Algebra) -> Outcome {
    let v = read_json(input)?;
    let p = match algebra {
        Algebra::Sq => sq_presentation(&space_from_json(&v).map_err(|e| usage(format!("{}: {e}", input.display())))?),
        Algebra::Uq => uq_relations(&qlie_from_json(&v).map_err(|e| usage(format!("{}: {e}", input.display())))?).map_err(usage)?,
    };
    let r = primitives_of_quotient(&p, degree).map_err(|e| Failure::Math(json!({ "error": e.to_string() })))?;
    let ok = r.equals_image_of_v();
    let report = json!({
        "degree": degree,
        "basis": r.basis.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "level_dims": r.level_dims,
        "equals_v": ok,
    });
    verdict(report, ok)
}

fn cmd_table(gamma: &str, field: &str) -> Outcome {
    let f = parse_field(field)?;
    let g = f.parse(gamma).map_err(|e| usage(format!("--gamma {gamma}: {e}")))?;
    let rows = table_emit(f, &g).map_err(usage)?;
    let mut out = Vec::new();
    let mut all_ok = true;
    for r in &rows {
        let rep = verify_lifted(&r.algebra);
        all_ok &= rep.all();
        out.push(json!({
            "row": r.row,
            "gamma": r.gamma.as_ref().map(scalar_to_json),
            "gamma_rule": r.gamma_rule.describe(),
            "f": r.minpoly.to_string(),
            "c": mat_to_json(r.algebra.space.c()),
            "beta": mat_to_json(&r.algebra.beta),
            "relations": r.relations.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "verified": rep.all(),
        }));
    }
    verdict(json!({ "field": f.to_string(), "rows": out }), all_ok)
}

fn cmd_search(field: &str, scope: &str, seed: u64) -> Outcome {
    let f = parse_field(field)?;
    let scope: AppendixScope = scope.parse().map_err(usage)?;
    let rep = appendix_checks(f, scope, seed).map_err(usage)?;
    let families: Vec<Value> = rep
        .families
        .iter()
        .map(|fam| {
            json!({
                "family": fam.name,
                "braidings": fam.braidings,
                "admitted": fam.admitted,
                "beta_checked": fam.beta_checked,
                "survivors": fam.survivors.iter().map(qlie_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let report = json!({
        "field": f.to_string(),
        "seed": seed,
        "udu": rep.udu.as_ref().map(|u| json!({ "trials": u.trials, "failures": u.failures })),
        "families": families,
        "survey": rep.survey.as_ref().map(|s| json!({
            "samples": s.samples,
            "admitted": s.admitted,
            "verified": s.verified,
            "rank_two": s.rank_two,
            "image_failures": s.image_failures,
            "kernel_failures": s.kernel_failures,
        })),
        "holds": rep.holds(),
    });
    verdict(report, rep.holds())
}

fn cmd_nichols(input: &PathBuf, degree: usize) -> Outcome {
    let v = read_json(input)?;
    let b = space_from_json(&v).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let ranks = nichols_dims(&b, degree);
    let sq = sq_graded_dims(&b, degree);
    let ok = ranks == sq;
    verdict(json!({ "symmetrizer_ranks": ranks, "sq_dims": sq, "quadratic": ok }), ok)
}

/// Aligned `key  value` lines; nested values stay compact JSON.
fn render_text(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let width = m.keys().map(String::len).max().unwrap_or(0);
            m.iter()
                .map(|(k, x)| match x {
                    Value::Array(a) if a.iter().any(Value::is_object) => {
                        let body: Vec<String> = a.iter().map(|e| indent(&render_text(e))).collect();
                        format!("{k}:\n{}", body.join("\n\n"))
                    }
                    Value::Object(_) => format!("{k}:\n{}", indent(&render_text(x))),
                    Value::String(s) => format!("{k:<width$}  {s}"),
                    _ => format!("{k:<width$}  {x}"),
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        _ => v.to_string(),
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

fn emit(v: &Value, format: Format) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable"),
        Format::Text => render_text(v),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("thread pool is configured once");
    }
    let outcome = match &cli.cmd {
        Cmd::Verify { input } => cmd_verify(input),
        Cmd::Classify { input } => cmd_classify(input),
        Cmd::Envelope { input, degree, buffer } => cmd_envelope(input, *degree, *buffer),
        Cmd::Primitives { input, degree, algebra } => cmd_primitives(input, *degree, *algebra),
        Cmd::Table { gamma, field } => cmd_table(gamma, field),
        Cmd::Search { field, scope, seed } => cmd_search(field, scope, *seed),
        Cmd::NicholsCheck { input, degree } => cmd_nichols(input, *degree),
    };
    match outcome {
        Ok(v) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Math(v)) => {
            emit(&v, cli.format);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
