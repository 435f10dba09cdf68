//! `gabor`: command line front end. JSON goes to stdout (or --out), short
//! summaries to stderr.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gabor_core::domains::{nested_domains, verify_packing, verify_tiling, CellComplex, NestedDomains};
use gabor_core::frames::{
    bump_signals, density_check, frame_check, grid_frame_check, synthesize_parseval, FiberField, SynthesisConfig,
};
use gabor_core::group::{build_context, GroupContext, GroupElement};
use gabor_core::induced::{
    commutant_dimension, intertwiner_dimension, induced_matrix, regular_rep_report, unitarity_defect, RepPoint,
};
use gabor_core::ratlin::{parse_matrix, parse_vector, rat_to_f64, Lattice, RatMatrix};
use gabor_core::signal::{SampledSignal, SignalFile};
use gabor_core::zak::{check_intertwining, zak, zak_inverse, ZakFile};
use gabor_core::Error;
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gabor", version, about = "Exact analysis and Parseval window synthesis for rational Gabor systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct MatrixArgs {
    /// Matrix B as a literal, e.g. "[[2/3, 0], [0, 3/2]]".
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<String>,
    /// File holding a matrix literal or a JSON object with a "B" field.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RepCheck {
    Commutant,
    Intertwiner,
    Matrix,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice constants, density verdict and decomposition of the regular representation.
    Analyze {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nested fundamental domains Σ₁ ⊆ Σ₂ for L1, L2 (columns generate), or Zᵈ and B*Zᵈ with --B.
    Domains {
        #[arg(long = "L1", allow_hyphen_values = true)]
        l1: Option<String>,
        #[arg(long = "L2", allow_hyphen_values = true)]
        l2: Option<String>,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: Option<String>,
        /// Only verify the cell complex(es) in --file against both lattices.
        #[arg(long)]
        verify_only: bool,
        /// Cell complex JSON ({"fine", "offsets"}) or an earlier `domains` output.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Include cell corner coordinates for plotting.
        #[arg(long)]
        plot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fiber representation checks at a point (x, w): first d entries x, next d entries w.
    Rep {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "commutant")]
        check: RepCheck,
        /// Central character index λ₁ (the Gabor fibers have λ₁ = 1).
        #[arg(long, default_value_t = 1)]
        lambda1: u64,
        /// Second point for --check intertwiner.
        #[arg(long, allow_hyphen_values = true)]
        point2: Option<String>,
        /// Group element "theta;l1,..;k1,.." for --check matrix (default: all generators).
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zak transform of a signal file (or a seeded random signal), or its inverse.
    Zak {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Signal JSON; with --inverse, a Zak JSON produced by this command.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        inverse: bool,
        /// Grid density for the random signal (default: 4·N0).
        #[arg(long = "N")]
        n: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also report intertwining residuals for the 2d+1 generators.
        #[arg(long)]
        check: bool,
        /// Emit CSV rows (x index, coset, w index, x, w, re, im) instead of JSON.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parseval window from a fiber field (default: standard basis vectors).
    Synthesize {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Grid density; must be a multiple of N0 (default: first multiple ≥ 96 for d = 1, ≥ 24 otherwise).
        #[arg(long = "N")]
        n: Option<u64>,
        /// JSON list of ell orthonormal vectors, each a list of [re, im].
        #[arg(long)]
        field: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frame-bound estimate for a window on seeded bump test signals.
    Verify {
        /// Window JSON, normally from `synthesize`.
        #[arg(long)]
        window: PathBuf,
        /// Overrides the "B" recorded in the window file.
        #[arg(long = "B", allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long = "Lmod", default_value_t = 64)]
        l_mod: u64,
        #[arg(long = "Ltrans", default_value_t = 64)]
        l_trans: u64,
        /// Sum l over one full modulation period instead of |l| ≤ Lmod.
        #[arg(long)]
        grid_exact: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Support box [lo, hi] per axis for the bumps.
        #[arg(long, default_value = "-4,4", allow_hyphen_values = true)]
        support: String,
        /// Bump radius range.
        #[arg(long, default_value = "1,4")]
        radius: String,
        /// JSON list of signal files to use instead of bumps.
        #[arg(long)]
        tests: Option<PathBuf>,
        /// Exit 1 unless all ratios lie within tol of 1.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Lib(e) => match e {
            Error::Parse(_) | Error::SingularMatrix | Error::DimensionMismatch { .. } => 2,
            Error::IncommensurableLattices(_) => 3,
            Error::DensityObstruction { .. } => 4,
            Error::GridMismatch(_) => 5,
            Error::IllConditioned(_) => 6,
            _ => 1,
        },
        Failure::Usage(_) => 2,
        Failure::Io(_) | Failure::Check(_) => 1,
    }
}

fn message(f: &Failure) -> String {
    match f {
        Failure::Lib(e) => e.to_string(),
        Failure::Usage(s) | Failure::Io(s) | Failure::Check(s) => s.clone(),
    }
}

fn read(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Failure::Lib(Error::Parse(format!("{what}: {e}"))))
}

fn matrix_from_text(text: &str) -> CliResult<RatMatrix> {
    if let Ok(Value::Object(obj)) = serde_json::from_str::<Value>(text) {
        let b = obj.get("B").ok_or_else(|| Failure::Usage("JSON object has no \"B\" field".into()))?;
        return Ok(serde_json::from_value(b.clone()).map_err(|e| Error::Parse(format!("B: {e}")))?);
    }
    Ok(parse_matrix(text.trim())?)
}

fn load_matrix(m: &MatrixArgs) -> CliResult<RatMatrix> {
    match (&m.b, &m.file) {
        (Some(b), None) => Ok(parse_matrix(b)?),
        (None, Some(p)) => matrix_from_text(&read(p)?),
        _ => Err(Failure::Usage("give exactly one of --B or --file".into())),
    }
}

fn context(m: &MatrixArgs) -> CliResult<GroupContext> {
    Ok(build_context(&load_matrix(m)?)?)
}

fn emit(value: &Value, out: &Option<PathBuf>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    emit_text(&text, out)
}

fn emit_text(text: &str, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn analyze(matrix: &MatrixArgs, out: &Option<PathBuf>) -> CliResult<()> {
    let ctx = context(matrix)?;
    let verdict = density_check(&ctx);
    let report = regular_rep_report(&ctx)?;
    eprintln!(
        "m = {}, |det A| = {}, ell = {}, |det B| = {}: {}",
        ctx.m(),
        ctx.det_a(),
        ctx.ell(),
        verdict.det_b,
        if verdict.feasible { "Parseval windows exist" } else { "no Parseval window" }
    );
    emit(
        &json!({
            "context": to_value(&ctx.report()),
            "density": to_value(&verdict),
            "decomposition": to_value(&report),
        }),
        out,
    )
}

fn lattice_arg(s: &str) -> CliResult<Lattice> {
    Ok(Lattice::new(&parse_matrix(s)?)?)
}

fn domain_lattices(l1: &Option<String>, l2: &Option<String>, b: &Option<String>) -> CliResult<(Lattice, Lattice)> {
    match (l1, l2, b) {
        (Some(a), Some(c), None) => Ok((lattice_arg(a)?, lattice_arg(c)?)),
        (None, None, Some(b)) => {
            let ctx = build_context(&parse_matrix(b)?)?;
            Ok((Lattice::integer(ctx.dim()), ctx.b_star_lattice().clone()))
        }
        _ => Err(Failure::Usage("give --L1 and --L2, or --B".into())),
    }
}

fn complex_report(name: &str, c: &CellComplex, l1: &Lattice, l2: &Lattice) -> CliResult<Value> {
    Ok(json!({
        "name": name,
        "cells": c.offsets.len(),
        "measure": gabor_core::ratlin::format_rat(&c.measure()),
        "tiles_L1": verify_tiling(c, l1)?,
        "packs_L1": verify_packing(c, l1)?,
        "tiles_L2": verify_tiling(c, l2)?,
        "packs_L2": verify_packing(c, l2)?,
    }))
}

#[allow(clippy::too_many_arguments)]
fn domains(
    l1: &Option<String>,
    l2: &Option<String>,
    b: &Option<String>,
    verify_only: bool,
    file: &Option<PathBuf>,
    plot: bool,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    let (l1, l2) = domain_lattices(l1, l2, b)?;
    if l1.dim() != l2.dim() {
        return Err(Error::IncommensurableLattices(format!("dimensions {} and {}", l1.dim(), l2.dim())).into());
    }
    if verify_only {
        let path = file.as_ref().ok_or_else(|| Failure::Usage("--verify-only needs --file".into()))?;
        let v: Value = from_json(&read(path)?, "cell complex")?;
        let named: Vec<(String, Value)> = match v.get("sigma1") {
            Some(s1) => vec![("sigma1".into(), s1.clone()), ("sigma2".into(), v["sigma2"].clone())],
            None => vec![("complex".into(), v)],
        };
        let mut reports = Vec::new();
        for (name, c) in named {
            let c: CellComplex = serde_json::from_value(c).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
            reports.push(complex_report(&name, &c, &l1, &l2)?);
        }
        for r in &reports {
            eprintln!("{}: tiles L1 {}, tiles L2 {}", r["name"].as_str().unwrap_or(""), r["tiles_L1"], r["tiles_L2"]);
        }
        return emit(&json!({ "L1": to_value(&l1), "L2": to_value(&l2), "complexes": reports }), out);
    }
    let nd: NestedDomains = nested_domains(&l1, &l2)?;
    eprintln!(
        "|Σ₁| = {} cells, |Σ₂| = {} cells, |F/(L1∩L2)| = {}",
        nd.sigma1.offsets.len(),
        nd.sigma2.offsets.len(),
        nd.group_order
    );
    let mut v = to_value(&nd);
    if plot {
        v["plot"] = json!({ "sigma1": nd.sigma1.plot_data(), "sigma2": nd.sigma2.plot_data() });
    }
    emit(&v, out)
}

fn floats(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<f64>() {
            Ok(x) => Ok(x),
            Err(_) => parse_vector(t).map(|v| rat_to_f64(&v[0])).map_err(Failure::from),
        })
        .collect()
}

fn point(ctx: &GroupContext, s: &str) -> CliResult<RepPoint> {
    let v = floats(s)?;
    let d = ctx.dim();
    if v.len() != 2 * d {
        return Err(Error::DimensionMismatch { expected: 2 * d, found: v.len() }.into());
    }
    Ok(RepPoint::new(ctx, &v[..d], &v[d..])?)
}

fn ints(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Failure::Lib(Error::Parse(format!("{t:?}: {e}")))))
        .collect()
}

fn element(ctx: &GroupContext, s: &str) -> CliResult<GroupElement> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(Error::Parse("element must be \"theta;l1,..;k1,..\"".into()).into());
    }
    let theta = parts[0].trim().parse::<u64>().map_err(|e| Error::Parse(e.to_string()))?;
    let (l, k) = (ints(parts[1])?, ints(parts[2])?);
    if l.len() != ctx.dim() || k.len() != ctx.dim() {
        return Err(Error::DimensionMismatch { expected: ctx.dim(), found: l.len().min(k.len()) }.into());
    }
    Ok(ctx.reduce(&GroupElement::new(theta, l, k)))
}

#[allow(clippy::too_many_arguments)]
fn rep(
    matrix: &MatrixArgs,
    pt: &str,
    check: RepCheck,
    lambda1: u64,
    point2: &Option<String>,
    elem: &Option<String>,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    let ctx = context(matrix)?;
    let p = point(&ctx, pt)?;
    let v = match check {
        RepCheck::Commutant => {
            let dim = commutant_dimension(&ctx, &p, lambda1)?;
            eprintln!("commutant dimension {dim}");
            json!({ "check": "commutant", "point": to_value(&p), "lambda1": lambda1, "dimension": dim })
        }
        RepCheck::Intertwiner => {
            let s = point2.as_ref().ok_or_else(|| Failure::Usage("--check intertwiner needs --point2".into()))?;
            let q = point(&ctx, s)?;
            let dim = intertwiner_dimension(&ctx, &p, &q)?;
            eprintln!("intertwiner dimension {dim}");
            json!({ "check": "intertwiner", "point": to_value(&p), "point2": to_value(&q), "dimension": dim })
        }
        RepCheck::Matrix => {
            let elems = match elem {
                Some(s) => vec![element(&ctx, s)?],
                None => GroupElement::generators(ctx.dim()),
            };
            let mats: Vec<Value> = elems
                .iter()
                .map(|g| {
                    let m = induced_matrix(&ctx, lambda1, &p, g);
                    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
                        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
                        .collect();
                    json!({ "element": to_value(g), "matrix": rows, "unitarity_defect": unitarity_defect(&m) })
                })
                .collect();
            eprintln!("{} matrices of size {}", mats.len(), ctx.index());
            json!({ "check": "matrix", "point": to_value(&p), "lambda1": lambda1, "matrices": mats })
        }
    };
    emit(&v, out)
}

fn random_signal(ctx: &GroupContext, n: u64, seed: u64) -> CliResult<SampledSignal> {
    use rand_like::Lcg;
    let d = ctx.dim();
    let side = 2 * n as usize;
    let mut rng = Lcg::new(seed);
    let len = side.pow(d as u32);
    let values = (0..len).map(|_| Complex64::new(rng.next_f64() * 2.0 - 1.0, rng.next_f64() * 2.0 - 1.0)).collect();
    Ok(SampledSignal::new(n, vec![-(n as i64); d], vec![side; d], values)?)
}

/// Tiny deterministic generator for the demo signal; the library's seeded
/// suites use ChaCha.
mod rand_like {
    pub struct Lcg(u64);

    impl Lcg {
        pub fn new(seed: u64) -> Self {
            Lcg(seed ^ 0x9e37_79b9_7f4a_7c15)
        }

        pub fn next_f64(&mut self) -> f64 {
            self.0 = self.0.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            (self.0 >> 11) as f64 / (1u64 << 53) as f64
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn zak_cmd(
    matrix: &MatrixArgs,
    input: &Option<PathBuf>,
    inverse: bool,
    n: Option<u64>,
    seed: u64,
    check: bool,
    csv: bool,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    let ctx = context(matrix)?;
    if inverse {
        let path = input.as_ref().ok_or_else(|| Failure::Usage("--inverse needs --input".into()))?;
        let zf: ZakFile = from_json(&read(path)?, "Zak file")?;
        let f = zak_inverse(&ctx, &zf.to_array(&ctx)?)?;
        eprintln!("signal with {} samples, ‖f‖² = {:.12}", f.len(), f.norm_sq());
        return emit(&to_value(&SignalFile::from_signal(&f, Some(ctx.b()))), out);
    }
    let f = match input {
        Some(p) => from_json::<SignalFile>(&read(p)?, "signal file")?.to_signal()?,
        None => random_signal(&ctx, n.unwrap_or(4 * ctx.n0()), seed)?,
    };
    let z = zak(&ctx, &f)?;
    eprintln!("‖f‖² = {:.12}, ‖Zf‖² = {:.12}", f.norm_sq(), z.norm_sq());
    if csv {
        let mut text = String::from("a,j,r");
        let d = ctx.dim();
        for i in 0..d {
            text += &format!(",x{i}");
        }
        for i in 0..d {
            text += &format!(",w{i}");
        }
        text += ",re,im\n";
        let nf = f.n_grid() as f64;
        let ws: Vec<Vec<f64>> = (0..z.w_count()).map(|r| z.w_point(&ctx, r)).collect();
        for a in 0..z.x_count() {
            let x: Vec<String> = z.x_point(a).iter().map(|&v| format!("{}", v as f64 / nf)).collect();
            for j in 0..z.n_cosets() {
                for (r, w) in ws.iter().enumerate() {
                    let v = z.get(a, j, r);
                    let w: Vec<String> = w.iter().map(|t| format!("{t}")).collect();
                    text += &format!("{a},{j},{r},{},{},{},{}\n", x.join(","), w.join(","), v.re, v.im);
                }
            }
        }
        return emit_text(&text, out);
    }
    let mut v = to_value(&ZakFile::from_array(&ctx, &z));
    if check {
        let res = GroupElement::generators(ctx.dim())
            .iter()
            .map(|g| Ok(json!({ "element": to_value(g), "residual": check_intertwining(&ctx, &f, g)? })))
            .collect::<CliResult<Vec<Value>>>()?;
        v["intertwining"] = Value::Array(res);
    }
    emit(&v, out)
}

fn default_grid(ctx: &GroupContext) -> u64 {
    let target: u64 = if ctx.dim() == 1 { 96 } else { 24 };
    target.div_ceil(ctx.n0()) * ctx.n0()
}

fn synthesize(matrix: &MatrixArgs, n: Option<u64>, field: &Option<PathBuf>, out: &Option<PathBuf>) -> CliResult<()> {
    let ctx = context(matrix)?;
    let n = n.unwrap_or_else(|| default_grid(&ctx));
    let field = match field {
        None => FiberField::Standard,
        Some(p) => {
            let raw: Vec<Vec<[f64; 2]>> = from_json(&read(p)?, "fiber field")?;
            FiberField::Constant(raw.iter().map(|v| v.iter().map(|c| Complex64::new(c[0], c[1])).collect()).collect())
        }
    };
    let g = synthesize_parseval(&ctx, &field, &SynthesisConfig::new(&ctx, n))?;
    eprintln!("window on N = {n}: {} samples, ‖g‖² = {:.12}", g.len(), g.norm_sq());
    emit(&to_value(&SignalFile::from_signal(&g, Some(ctx.b()))), out)
}

fn pair(s: &str) -> CliResult<(f64, f64)> {
    let v = floats(s)?;
    match v[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two numbers, got {s:?}")).into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    window: &PathBuf,
    b: &Option<String>,
    l_mod: u64,
    l_trans: u64,
    grid_exact: bool,
    seed: u64,
    count: usize,
    support: &str,
    radius: &str,
    tests: &Option<PathBuf>,
    tol: f64,
    out: &Option<PathBuf>,
) -> CliResult<()> {
    let file: SignalFile = from_json(&read(window)?, "window file")?;
    let bm = match (b, &file.b) {
        (Some(s), _) => parse_matrix(s)?,
        (None, Some(m)) => m.clone(),
        (None, None) => return Err(Failure::Usage("window file has no \"B\"; pass --B".into())),
    };
    let ctx = build_context(&bm)?;
    let g = file.to_signal()?;
    let hs = match tests {
        Some(p) => from_json::<Vec<SignalFile>>(&read(p)?, "test signals")?
            .iter()
            .map(|s| s.to_signal())
            .collect::<Result<Vec<_>, _>>()?,
        None => bump_signals(ctx.dim(), g.n_grid(), count, seed, pair(support)?, pair(radius)?)?,
    };
    let rep = if grid_exact { grid_frame_check(&ctx, &g, &hs, l_trans)? } else { frame_check(&ctx, &g, &hs, l_mod, l_trans)? };
    let ok = rep.max_deviation <= tol;
    eprintln!("frame ratios in [{:.6}, {:.6}]", rep.lower_ratio, rep.upper_ratio);
    let mut v = to_value(&rep);
    v["tol"] = json!(tol);
    v["within_tol"] = json!(ok);
    emit(&v, out)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(format!("frame ratios deviate from 1 by {:.3e} > tol {tol:e}", rep.max_deviation)))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Analyze { matrix, out } => analyze(matrix, out),
        Command::Domains { l1, l2, b, verify_only, file, plot, out } => domains(l1, l2, b, *verify_only, file, *plot, out),
        Command::Rep { matrix, point, check, lambda1, point2, element, out } => {
            rep(matrix, point, *check, *lambda1, point2, element, out)
        }
        Command::Zak { matrix, input, inverse, n, seed, check, csv, out } => {
            zak_cmd(matrix, input, *inverse, *n, *seed, *check, *csv, out)
        }
        Command::Synthesize { matrix, n, field, out } => synthesize(matrix, *n, field, out),
        Command::Verify { window, b, l_mod, l_trans, grid_exact, seed, count, support, radius, tests, tol, out } => {
            verify(window, b, *l_mod, *l_trans, *grid_exact, *seed, *count, support, radius, tests, *tol, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = std::env::var("GABOR_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if t > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", message(&f));
            ExitCode::from(exit_code(&f))
        }
    }
}
