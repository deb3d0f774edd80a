//! Command-line front end: exact index computation, polygon inspection,
//! Monte Carlo probing, batch/accumulation exploration, lattice enumeration.
//!
//! Exit codes: 0 success, 1 input error (bad expression, bad flags, missing
//! file), 2 internal assertion failure (conditions the engine proves
//! impossible, reported so they are never silently wrong).

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lct_core::adapt::{AdaptError, StepAction};
use lct_core::chains;
use lct_core::newton::{self, MainFaceKind};
use lct_core::rational::{self, Rational};
use lct_core::{compute_lct, BivarPoly, Field, LctResult, Normalization, Threshold};

use lct::probe::{self, ProbeConfig};

#[derive(Parser)]
#[command(name = "lct", version, about = "Exact critical integrability indices (log-canonical thresholds) of bivariate polynomial germs at the origin")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum FieldArg {
    #[default]
    Complex,
    Real,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::Complex => Field::Complex,
            FieldArg::Real => Field::Real,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum NormArg {
    /// The integrability index itself (complex value is twice the algebraic lct).
    #[default]
    Paper,
    /// The algebraic log-canonical threshold (halves complex values).
    Lct,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Normalization {
        match n {
            NormArg::Paper => Normalization::PaperIndex,
            NormArg::Lct => Normalization::Lct,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the exact index of one polynomial germ.
    Compute {
        /// Polynomial in x and y, e.g. "y^2 - x^3".
        expr: String,
        #[arg(long, value_enum, default_value_t)]
        field: FieldArg,
        #[arg(long, value_enum, default_value_t)]
        normalization: NormArg,
        /// Print one record per adaptation-loop pass.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the Newton polygon and the main face of one polynomial.
    Polygon {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo trend check of ∫|f|^{-c} over shrinking balls.
    Probe {
        expr: String,
        /// Exponent c, as a rational "5/3" or a decimal.
        #[arg(long)]
        c: String,
        #[arg(long, value_enum, default_value_t)]
        field: FieldArg,
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        /// Samples per radial shell.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compute indices for a file of polynomials (one per line, '#' comments).
    Batch {
        file: String,
        #[arg(long, value_enum, default_value_t)]
        field: FieldArg,
        #[arg(long, value_enum, default_value_t)]
        normalization: NormArg,
        #[arg(long)]
        json: bool,
    },
    /// Batch a file, sort the indices, and report accumulation candidates
    /// against the one-variable threshold set.
    Accumulate {
        file: String,
        #[arg(long, value_enum, default_value_t)]
        field: FieldArg,
        /// Cluster width, a rational like "1/100".
        #[arg(long, default_value = "1/100")]
        tol: String,
        /// Minimum cluster size to report.
        #[arg(long, default_value_t = 10)]
        min_count: usize,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the lattice {(p,q) : 0 <= p <= q <= N}.
    Lattice {
        n: u32,
        #[arg(long)]
        json: bool,
    },
}

/// Input problems exit 1; engine assertions exit 2.
enum CmdError {
    Input(String),
    Internal(String),
}

impl From<AdaptError> for CmdError {
    fn from(e: AdaptError) -> Self {
        match e {
            AdaptError::ZeroPolynomial => CmdError::Input(e.to_string()),
            _ => CmdError::Internal(e.to_string()),
        }
    }
}

fn parse_poly(expr: &str) -> Result<BivarPoly, CmdError> {
    BivarPoly::parse(expr).map_err(|e| CmdError::Input(e.to_string()))
}

fn rat_str(r: &Rational) -> String {
    rational::format(r)
}

fn threshold_str(t: &Threshold) -> String {
    t.to_string() // "num/den" or "inf"
}

fn main_kind_str(kind: &MainFaceKind) -> &'static str {
    match kind {
        MainFaceKind::Vertex(_) => "VERTEX",
        MainFaceKind::CompactFace(_) => "COMPACT_FACE",
        MainFaceKind::VerticalRay => "VERTICAL_RAY",
        MainFaceKind::HorizontalRay => "HORIZONTAL_RAY",
    }
}

fn action_json(a: &StepAction) -> Value {
    match a {
        StepAction::Adapted => json!({"kind": "ADAPTED"}),
        StepAction::Transposed => json!({"kind": "TRANSPOSED"}),
        StepAction::Shear {
            b,
            exponent,
            multiplicity,
        } => json!({
            "kind": "SHEAR",
            "b": rat_str(b),
            "exponent": exponent,
            "multiplicity": multiplicity,
        }),
        StepAction::SeriesBranch { multiplicity } => json!({
            "kind": "SERIES_BRANCH",
            "multiplicity": multiplicity,
        }),
    }
}

fn action_text(a: &StepAction) -> String {
    match a {
        StepAction::Adapted => "adapted".into(),
        StepAction::Transposed => "transposed".into(),
        StepAction::Shear {
            b,
            exponent,
            multiplicity,
        } => format!(
            "shear by {}*x^{} (root multiplicity {})",
            rat_str(b),
            exponent,
            multiplicity
        ),
        StepAction::SeriesBranch { multiplicity } => format!(
            "single series branch of multiplicity {}; index attained in the limit",
            multiplicity
        ),
    }
}

fn trace_json(result: &LctResult) -> Value {
    let records: Vec<Value> = result
        .trace
        .iter()
        .map(|rec| {
            json!({
                "vertices": rec.vertices,
                "main_face": main_kind_str(&rec.main_kind),
                "t_star": rat_str(&rec.t_star),
                "face_poly": rec.face_poly.as_ref().map(|p| p.to_string()),
                "action": action_json(&rec.action),
            })
        })
        .collect();
    Value::Array(records)
}

fn result_json(
    expr: &str,
    result: &LctResult,
    field: Field,
    norm: Normalization,
    with_trace: bool,
) -> Value {
    let c0 = result.c0_normalized(norm);
    let terms: Vec<Value> = result
        .coordinate_change
        .iter()
        .map(|t| json!([rat_str(&t.coefficient), t.exponent]))
        .collect();
    let axis = result
        .coordinate_change
        .first()
        .map(|t| t.axis.to_string())
        .unwrap_or_else(|| "y".into());
    let mut out = json!({
        "input": expr,
        "field": field.to_string(),
        "normalization": match norm {
            Normalization::PaperIndex => "paper",
            Normalization::Lct => "lct",
        },
        "c0": threshold_str(&c0),
        "delta_inv": result
            .delta_inv_final
            .as_ref()
            .map(|r| rat_str(r))
            .unwrap_or_else(|| "inf".into()),
        "order": result.order,
        "coordinate_change": {"axis": axis, "terms": terms},
    });
    if with_trace {
        out["trace"] = trace_json(result);
    }
    out
}

fn cmd_compute(
    expr: &str,
    field: Field,
    norm: Normalization,
    trace: bool,
    json_out: bool,
) -> Result<(), CmdError> {
    let f = parse_poly(expr)?;
    let result = compute_lct(&f, field)?;
    if json_out {
        println!("{}", result_json(expr, &result, field, norm, trace));
        return Ok(());
    }
    let c0 = result.c0_normalized(norm);
    let label = match (field, norm) {
        (Field::Complex, Normalization::PaperIndex) => "complex integrability index",
        (Field::Real, Normalization::PaperIndex) => "real integrability index",
        (Field::Complex, Normalization::Lct) => "complex log-canonical threshold",
        (Field::Real, Normalization::Lct) => "real log-canonical threshold",
    };
    println!("c0 = {} ({})", threshold_str(&c0), label);
    if !result.coordinate_change.is_empty() {
        let t0 = &result.coordinate_change[0];
        let sum: Vec<String> = result
            .coordinate_change
            .iter()
            .map(|t| {
                format!(
                    "{}*{}^{}",
                    rat_str(&t.coefficient),
                    match t.axis {
                        lct_core::Axis::Y => "x",
                        lct_core::Axis::X => "y",
                    },
                    t.exponent
                )
            })
            .collect();
        println!("adapted by {} -> {} + {}", t0.axis, t0.axis, sum.join(" + "));
    }
    if trace {
        for (i, rec) in result.trace.iter().enumerate() {
            println!(
                "  [{}] t* = {} at {}; {}",
                i,
                rat_str(&rec.t_star),
                main_kind_str(&rec.main_kind),
                action_text(&rec.action)
            );
        }
    }
    Ok(())
}

fn cmd_polygon(expr: &str, json_out: bool) -> Result<(), CmdError> {
    let f = parse_poly(expr)?;
    let poly = newton::polygon(&f).map_err(|e| CmdError::Input(e.to_string()))?;
    let main = newton::newton_distance(&poly);
    if json_out {
        let faces: Vec<Value> = poly
            .faces
            .iter()
            .map(|face| {
                json!({
                    "left": face.left,
                    "right": face.right,
                    "p_nu": face.p_nu,
                    "q_nu": face.q_nu,
                    "a": rat_str(&face.leading_exponent()),
                    "A": face.coord_a(),
                    "B": face.coord_b(),
                    "delta_inv": rat_str(&face.delta_inv()),
                })
            })
            .collect();
        let out = json!({
            "input": expr,
            "polygon": {
                "vertices": poly.vertices,
                "alpha": poly.alpha,
                "beta": poly.beta,
                "faces": faces,
            },
            "t_star": rat_str(&main.t_star),
            "main_face": main_kind_str(&main.kind),
        });
        println!("{out}");
        return Ok(());
    }
    println!("vertices: {:?}", poly.vertices);
    println!("alpha = {}, beta = {}", poly.alpha, poly.beta);
    for face in &poly.faces {
        println!(
            "face {:?} -> {:?}: direction ({}, {}), delta_inv = {}",
            face.left,
            face.right,
            face.p_nu,
            face.q_nu,
            rat_str(&face.delta_inv())
        );
    }
    println!(
        "t* = {} at {}",
        rat_str(&main.t_star),
        main_kind_str(&main.kind)
    );
    Ok(())
}

fn parse_c(c: &str) -> Result<f64, CmdError> {
    if let Some(r) = rational::parse(c) {
        return Ok(rational::to_f64(&r));
    }
    c.parse::<f64>()
        .map_err(|_| CmdError::Input(format!("cannot parse exponent '{c}'")))
}

fn cmd_probe(
    expr: &str,
    c: &str,
    field: Field,
    seed: u64,
    samples: usize,
    json_out: bool,
) -> Result<(), CmdError> {
    let f = parse_poly(expr)?;
    let cfg = ProbeConfig {
        seed,
        samples_per_shell: samples,
        ..ProbeConfig::new(field, parse_c(c)?)
    };
    let verdict =
        probe::divergence_probe_with(&f, &cfg).map_err(|e| CmdError::Input(e.to_string()))?;
    if json_out {
        let estimates: Vec<Value> = verdict
            .estimates
            .iter()
            .map(|e| json!({"radius": e.radius, "estimate": e.estimate, "stderr": e.stderr}))
            .collect();
        println!(
            "{}",
            json!({
                "input": expr,
                "field": field.to_string(),
                "c": cfg.c,
                "seed": seed,
                "samples_per_shell": samples,
                "estimates": estimates,
                "verdict": verdict.verdict.to_string(),
            })
        );
        return Ok(());
    }
    for e in &verdict.estimates {
        println!(
            "r = {:<8} estimate = {:<14.6e} stderr = {:.3e}",
            e.radius, e.estimate, e.stderr
        );
    }
    println!("verdict: {}", verdict.verdict);
    Ok(())
}

fn read_batch_file(path: &str) -> Result<Vec<(String, BivarPoly)>, CmdError> {
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| CmdError::Input(format!("cannot read {path}: {e}")))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let poly = BivarPoly::parse(line)
            .map_err(|e| CmdError::Input(format!("{path}:{}: {e}", lineno + 1)))?;
        out.push((line.to_string(), poly));
    }
    Ok(out)
}

fn normalized(t: &Threshold, field: Field, norm: Normalization) -> Threshold {
    match (t, norm, field) {
        (Threshold::Finite(r), Normalization::Lct, Field::Complex) => {
            Threshold::Finite(r / Rational::from_integer(2.into()))
        }
        (t, _, _) => t.clone(),
    }
}

fn cmd_batch(
    path: &str,
    field: Field,
    norm: Normalization,
    json_out: bool,
) -> Result<(), CmdError> {
    let entries = read_batch_file(path)?;
    let polys: Vec<BivarPoly> = entries.iter().map(|(_, p)| p.clone()).collect();
    let set = chains::batch_lct(&polys, field);
    if json_out {
        let rows: Vec<Value> = entries
            .iter()
            .zip(&set.entries)
            .map(|((text, _), entry)| match &entry.outcome {
                Ok(c0) => json!({
                    "input": text,
                    "c0": threshold_str(&normalized(c0, field, norm)),
                }),
                Err(e) => json!({"input": text, "error": e}),
            })
            .collect();
        println!(
            "{}",
            json!({"field": field.to_string(), "entries": rows})
        );
        return Ok(());
    }
    for ((text, _), entry) in entries.iter().zip(&set.entries) {
        match &entry.outcome {
            Ok(c0) => println!("{text}: c0 = {}", threshold_str(&normalized(c0, field, norm))),
            Err(e) => println!("{text}: error: {e}"),
        }
    }
    Ok(())
}

fn cmd_accumulate(
    path: &str,
    field: Field,
    tol: &str,
    min_count: usize,
    json_out: bool,
) -> Result<(), CmdError> {
    let tol = rational::parse(tol)
        .ok_or_else(|| CmdError::Input(format!("cannot parse tolerance '{tol}'")))?;
    let entries = read_batch_file(path)?;
    let polys: Vec<BivarPoly> = entries.iter().map(|(_, p)| p.clone()).collect();
    let set = chains::batch_lct(&polys, field);
    let mut values: Vec<Rational> = Vec::new();
    for entry in &set.entries {
        if let Ok(Threshold::Finite(r)) = &entry.outcome {
            values.push(r.clone());
        }
    }
    values.sort();
    let candidates = chains::accumulation_points(&values, &tol, field, min_count)
        .map_err(|e| CmdError::Input(e.to_string()))?;
    if json_out {
        let rows: Vec<Value> = candidates
            .iter()
            .map(|c| {
                json!({
                    "limit": rat_str(&c.limit),
                    "count": c.count,
                    "nearest_c1": rat_str(&c.nearest_c1),
                    "gap": rat_str(&c.gap),
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "field": field.to_string(),
                "tol": rat_str(&tol),
                "values": values.iter().map(rat_str).collect::<Vec<_>>(),
                "candidates": rows,
            })
        );
        return Ok(());
    }
    println!("{} values", values.len());
    for c in &candidates {
        println!(
            "cluster of {} near {} (nearest one-variable index {}, gap {})",
            c.count,
            rat_str(&c.limit),
            rat_str(&c.nearest_c1),
            rat_str(&c.gap)
        );
    }
    Ok(())
}

fn cmd_lattice(n: u32, json_out: bool) -> Result<(), CmdError> {
    if n == 0 {
        return Err(CmdError::Input("N must be positive".into()));
    }
    let lattice = chains::lattice_l(n);
    if json_out {
        println!(
            "{}",
            json!({"N": n, "count": lattice.points.len(), "points": lattice.points})
        );
        return Ok(());
    }
    println!("N = {}: {} points", n, lattice.points.len());
    for (p, q) in &lattice.points {
        println!("({p}, {q})");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.cmd {
        Cmd::Compute {
            expr,
            field,
            normalization,
            trace,
            json,
        } => cmd_compute(&expr, field.into(), normalization.into(), trace, json),
        Cmd::Polygon { expr, json } => cmd_polygon(&expr, json),
        Cmd::Probe {
            expr,
            c,
            field,
            seed,
            samples,
            json,
        } => cmd_probe(&expr, &c, field.into(), seed, samples, json),
        Cmd::Batch {
            file,
            field,
            normalization,
            json,
        } => cmd_batch(&file, field.into(), normalization.into(), json),
        Cmd::Accumulate {
            file,
            field,
            tol,
            min_count,
            json,
        } => cmd_accumulate(&file, field.into(), &tol, min_count, json),
        Cmd::Lattice { n, json } => cmd_lattice(n, json),
    }
}

fn main() -> ExitCode {
    // usage problems are input errors (exit 1); help/version exit 0
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
