//! Command-line front end. `run` returns the process exit code:
//! 0 when the outcome matched expectations, 1 on an unexpected outcome,
//! 2 on usage, input or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::convexity::{hull, CheckConfig, MapSpec, RegionSpec, Verdict};
use crate::error::{GeomError, Result};
use crate::exec::ExecPolicy;
use crate::geometry::{Geometry, Hyperbolic, Model, Spherical};
use crate::io::{read_points, read_region, MapFactory, PointSet, RegionDoc};
use crate::lemmas::{run_lemma_suite, Lemma, ParamRanges};
use crate::numerics::{Seed, Tolerances};
use crate::plot;
use crate::verify::{
    now_unix, run_conjecture_scan, run_counterexample, run_proof_consistency, run_theorem1_suite, run_theorem2_suite, write_atomic, CaseId,
    ConjectureParams, ConsistencyTolerances, Expectation, SuiteReport, TheoremParams,
};

/// Seed used when neither `--seed` nor `GEOCVX_SEED` is given.
pub const DEFAULT_SEED: u64 = 2019;

#[derive(Debug, Parser)]
#[command(name = "geocvx", version, about = "Dilations and convexity in the hyperbolic and spherical planes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, env = "GEOCVX_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output file (written atomically). Without it, output goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also print the JSON result to stdout when --out is given.
    #[arg(long, global = true)]
    pub json: bool,
    /// Leave the timestamp out of reports.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[arg(long, global = true)]
    pub eq_abs: Option<f64>,
    /// Minimum escape margin for a violation.
    #[arg(long, global = true)]
    pub margin: Option<f64>,
    #[arg(long, global = true)]
    pub fd_step: Option<f64>,
    #[arg(long, global = true)]
    pub fd_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Render an SVG.
    Plot(PlotArgs),
    /// Convex hull of a point list.
    Hull(HullArgs),
    /// Dilate a point list.
    Dilate(DilateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Lemma3,
    Lemma4,
    Counterexamples,
    ProofConsistency,
    Conjecture,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long)]
    pub model: Option<Model>,
    /// Segment trials per polygon; tuples for lemma suites; samples for
    /// proof-consistency.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Number of random polygons.
    #[arg(long)]
    pub polygons: Option<usize>,
    /// Points checked along each segment.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Fixed dilation factor.
    #[arg(long, conflicts_with = "k_range")]
    pub k: Option<f64>,
    /// Factor range `lo,hi`; the first factor for conjecture scans.
    #[arg(long, value_parser = parse_range)]
    pub k_range: Option<(f64, f64)>,
    /// Second factor range for conjecture scans.
    #[arg(long, value_parser = parse_range)]
    pub k2_range: Option<(f64, f64)>,
    /// A single counterexample.
    #[arg(long, value_parser = parse_case)]
    pub case: Option<CaseId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotTarget {
    Figure1,
    Region,
    SuiteWitness,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    pub target: PlotTarget,
    /// Region JSON for `region`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Dilate the region: `k`, `c,k` (centre on the real axis) or `cx,cy,k`.
    #[arg(long, value_parser = parse_numbers, allow_hyphen_values = true)]
    pub dilate: Option<Numbers>,
    /// Suite report JSON for `suite-witness`.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Run to draw; defaults to the first violating run.
    #[arg(long)]
    pub index: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HullArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub model: Option<Model>,
}

#[derive(Debug, Args)]
pub struct DilateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub model: Option<Model>,
    /// Centre `x,y`.
    #[arg(long, value_parser = parse_numbers, allow_hyphen_values = true, default_value = "0,0")]
    pub center: Numbers,
    #[arg(long, required_unless_present = "k1")]
    pub k: Option<f64>,
    /// Asymmetric factors, applied in geodesic polar coordinates.
    #[arg(long, requires = "k2", conflicts_with = "k")]
    pub k1: Option<f64>,
    #[arg(long, requires = "k1")]
    pub k2: Option<f64>,
}

/// Comma-separated list of numbers, e.g. `0.1,-0.2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Numbers(pub Vec<f64>);

fn parse_numbers(s: &str) -> std::result::Result<Numbers, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"))).collect::<std::result::Result<_, _>>().map(Numbers)
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    match *parse_numbers(s)?.0.as_slice() {
        [lo, hi] if lo <= hi => Ok((lo, hi)),
        [lo, hi] => Err(format!("range {lo},{hi} is not ordered")),
        _ => Err("expected lo,hi".into()),
    }
}

fn parse_case(s: &str) -> std::result::Result<CaseId, String> {
    s.parse().map_err(|e: GeomError| e.to_string())
}

/// Outcome of a command before it is written out.
enum Output {
    Json { value: Value, met: bool, summary: String },
    Svg(String),
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli).and_then(|o| emit(&cli.global, o)) {
        Ok(met) => {
            if met {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(g: &Global, out: Output) -> Result<bool> {
    let stdout = std::io::stdout();
    match out {
        Output::Json { value, met, summary } => {
            let text = serde_json::to_string_pretty(&value)? + "\n";
            match &g.out {
                Some(path) => {
                    write_atomic(path, text.as_bytes())?;
                    if g.json {
                        stdout.lock().write_all(text.as_bytes())?;
                    } else {
                        eprintln!("{summary}");
                    }
                }
                None => stdout.lock().write_all(text.as_bytes())?,
            }
            Ok(met)
        }
        Output::Svg(svg) => {
            match &g.out {
                Some(path) => write_atomic(path, svg.as_bytes())?,
                None => stdout.lock().write_all(svg.as_bytes())?,
            }
            Ok(true)
        }
    }
}

fn tolerances(g: &Global) -> Result<Tolerances> {
    let mut t = Tolerances::default();
    if let Some(v) = g.eq_abs {
        t.eq_abs = v;
    }
    if let Some(v) = g.margin {
        t.margin = v;
    }
    if let Some(v) = g.fd_step {
        t.fd_step = v;
    }
    if let Some(v) = g.fd_tol {
        t.fd_tol = v;
    }
    t.validate()?;
    Ok(t)
}

fn policy(g: &Global) -> ExecPolicy {
    if g.sequential {
        ExecPolicy::Sequential
    } else {
        ExecPolicy::default()
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify(a) => verify(g, a),
        Command::Plot(a) => plot_cmd(a).map(|f| Output::Svg(f.to_svg())),
        Command::Hull(a) => hull_cmd(g, a),
        Command::Dilate(a) => dilate_cmd(a),
    }
}

fn finish(g: &Global, mut r: SuiteReport) -> Result<Output> {
    if !g.no_timestamp {
        r.timestamp = Some(now_unix());
    }
    let summary = format!(
        "{}: {} (expected {}), worst margin {}",
        r.suite,
        serde_json::to_value(r.verdict)?.as_str().unwrap_or("?"),
        serde_json::to_value(r.expectation)?.as_str().unwrap_or("?"),
        r.worst_margin.map_or("n/a".into(), |m| format!("{m:.3e}"))
    );
    Ok(Output::Json { met: r.expectation_met, value: serde_json::to_value(&r)?, summary })
}

fn verify(g: &Global, a: &VerifyArgs) -> Result<Output> {
    let seed = Seed(g.seed);
    let tol = tolerances(g)?;
    let pol = policy(g);
    let theorem = |base: TheoremParams| -> TheoremParams {
        let mut p = TheoremParams { tol, policy: pol, ..base };
        if let Some(t) = a.trials {
            p.trials = t;
        }
        if let Some(n) = a.polygons {
            p.polygons = n;
        }
        if let Some(s) = a.samples {
            p.samples_per_segment = s;
        }
        if let Some(k) = a.k {
            p.k_range = (k, k);
        }
        if let Some(r) = a.k_range {
            p.k_range = r;
        }
        p
    };
    match a.suite {
        Suite::Theorem1 => finish(g, run_theorem1_suite(&theorem(TheoremParams::hyperbolic(seed)))?),
        Suite::Theorem2 => finish(g, run_theorem2_suite(&theorem(TheoremParams::spherical(seed)))?),
        Suite::Lemma3 | Suite::Lemma4 => {
            let lemma = if a.suite == Suite::Lemma3 { Lemma::Hyp } else { Lemma::Sph };
            let rep = run_lemma_suite(lemma, a.trials.unwrap_or(200), seed, &ParamRanges::default(), &tol, pol)?;
            let verdict = if rep.pass { Verdict::NoViolationFound } else { Verdict::Violation };
            let worst = rep.worst.as_ref().map(|w| w.worst_value);
            let params = json!({"tuples": rep.tuples, "ranges": rep.ranges, "tol": tol});
            let name = if lemma == Lemma::Hyp { "lemma3" } else { "lemma4" };
            finish(g, SuiteReport::new(name, seed, params, vec![serde_json::to_value(&rep)?], verdict, Expectation::NoViolation, worst))
        }
        Suite::Counterexamples => {
            let cases: Vec<CaseId> = a.case.map_or(CaseId::ALL.to_vec(), |c| vec![c]);
            let mut cfg = CheckConfig::new(a.trials.unwrap_or(2000), a.samples.unwrap_or(15), seed);
            cfg.tol = tol;
            cfg.policy = pol;
            let results = cases.iter().map(|&c| run_counterexample(c, &cfg)).collect::<Result<Vec<_>>>()?;
            let all = results.iter().all(|r| r.met);
            let weakest = results.iter().filter_map(|r| r.margin).reduce(f64::min);
            let verdict = if all { Verdict::Violation } else { Verdict::NoViolationFound };
            let params = json!({"cases": cases, "trials": cfg.trials, "samples_per_segment": cfg.samples_per_segment, "min_margin": 1e-3, "tol": tol});
            let runs = results.iter().map(serde_json::to_value).collect::<std::result::Result<Vec<_>, _>>()?;
            finish(g, SuiteReport::new("counterexamples", seed, params, runs, verdict, Expectation::Violation, weakest))
        }
        Suite::ProofConsistency => {
            let models = a.model.map_or(vec![Model::Hyperbolic, Model::Spherical], |m| vec![m]);
            let ctol = ConsistencyTolerances { fd: tol, ..Default::default() };
            let samples = a.trials.unwrap_or(10_000);
            let reps = models.iter().map(|&m| run_proof_consistency(m, samples, seed, &ctol, pol)).collect::<Result<Vec<_>>>()?;
            let pass = reps.iter().all(|r| r.pass);
            let verdict = if pass { Verdict::NoViolationFound } else { Verdict::Violation };
            let params = json!({"models": models, "samples": samples, "tolerances": ctol});
            let runs = reps.iter().map(serde_json::to_value).collect::<std::result::Result<Vec<_>, _>>()?;
            finish(g, SuiteReport::new("proof-consistency", seed, params, runs, verdict, Expectation::NoViolation, None))
        }
        Suite::Conjecture => {
            let model = a.model.unwrap_or(Model::Hyperbolic);
            let mut p = ConjectureParams::new(model, seed);
            p.suite = theorem(p.suite);
            p.suite.polygons = a.polygons.unwrap_or(50);
            p.k1_range = p.suite.k_range;
            p.k2_range = a.k2_range.unwrap_or(p.suite.k_range);
            finish(g, run_conjecture_scan(&p)?)
        }
    }
}

fn plot_cmd(a: &PlotArgs) -> Result<plot::Figure> {
    match a.target {
        PlotTarget::Figure1 => plot::figure1(),
        PlotTarget::Region => {
            let path = a.input.as_ref().ok_or_else(|| GeomError::InvalidParams("plot region needs --input".into()))?;
            let title = path.file_name().and_then(|n| n.to_str()).unwrap_or("region").to_string();
            match read_region(path)? {
                RegionDoc::Hyperbolic(spec) => {
                    let spec = with_dilation::<Hyperbolic>(spec, a.dilate.as_ref().map(|n| n.0.as_slice()))?;
                    plot::region_figure::<Hyperbolic>(&title, &spec)
                }
                RegionDoc::Spherical(spec) => {
                    let spec = with_dilation::<Spherical>(spec, a.dilate.as_ref().map(|n| n.0.as_slice()))?;
                    plot::region_figure::<Spherical>(&title, &spec)
                }
            }
        }
        PlotTarget::SuiteWitness => {
            let path = a.report.as_ref().ok_or_else(|| GeomError::InvalidParams("plot suite-witness needs --report".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| GeomError::Io(format!("{}: {e}", path.display())))?;
            let report: Value = serde_json::from_str(&text)?;
            plot::suite_witness_figure(&report, a.index)
        }
    }
}

fn with_dilation<G: MapFactory>(spec: RegionSpec<G::Point>, dilate: Option<&[f64]>) -> Result<RegionSpec<G::Point>> {
    let Some(d) = dilate else { return Ok(spec) };
    let (c, k) = match *d {
        [k] => (Complex64::new(0.0, 0.0), k),
        [c, k] => (Complex64::new(c, 0.0), k),
        [x, y, k] => (Complex64::new(x, y), k),
        _ => return Err(GeomError::InvalidParams("--dilate takes k, c,k or cx,cy,k".into())),
    };
    let map = MapSpec::Dilation { center: G::from_plane(c)?, k };
    G::build_map(&map)?;
    Ok(RegionSpec::Dilated { base: Box::new(spec), map })
}

fn check_model(file: Model, flag: Option<Model>) -> Result<()> {
    match flag {
        Some(m) if m != file => Err(GeomError::InvalidParams(format!("--model {m} does not match the input's model {file}"))),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct HullOut<P> {
    model: Model,
    vertices: Vec<P>,
    indices: Vec<usize>,
    perturbed: usize,
}

fn hull_json<G: Geometry>(points: &[G::Point], eq_abs: f64) -> Result<Value> {
    let h = hull::<G>(points, eq_abs)?;
    Ok(serde_json::to_value(HullOut { model: G::MODEL, vertices: h.vertices, indices: h.indices, perturbed: h.perturbed })?)
}

fn hull_cmd(g: &Global, a: &HullArgs) -> Result<Output> {
    let eq = tolerances(g)?.eq_abs;
    let value = match read_points(&a.input)? {
        PointSet::Hyperbolic(p) => {
            check_model(Model::Hyperbolic, a.model)?;
            hull_json::<Hyperbolic>(&p, eq)?
        }
        PointSet::Spherical(p) => {
            check_model(Model::Spherical, a.model)?;
            hull_json::<Spherical>(&p, eq)?
        }
    };
    let n = value["vertices"].as_array().map_or(0, Vec::len);
    Ok(Output::Json { value, met: true, summary: format!("hull: {n} vertices") })
}

fn dilate_json<G: MapFactory>(points: &[G::Point], a: &DilateArgs) -> Result<Value> {
    let center = match *a.center.0.as_slice() {
        [x, y] => G::from_plane(Complex64::new(x, y))?,
        _ => return Err(GeomError::InvalidParams("--center takes x,y".into())),
    };
    let spec = match (a.k, a.k1, a.k2) {
        (Some(k), _, _) => MapSpec::Dilation { center, k },
        (None, Some(k1), Some(k2)) => MapSpec::Asymmetric { center, k1, k2, interpretation: crate::verify::INTERPRETATION.into() },
        _ => return Err(GeomError::InvalidParams("give --k or both --k1 and --k2".into())),
    };
    let map = G::build_map(&spec)?;
    let results: Vec<Value> = points
        .iter()
        .map(|&p| match map.forward(p) {
            Ok(q) => json!({"input": p, "output": q}),
            Err(e) => json!({"input": p, "output": null, "error": e.to_string()}),
        })
        .collect();
    Ok(json!({"model": G::MODEL, "map": spec, "results": results}))
}

fn dilate_cmd(a: &DilateArgs) -> Result<Output> {
    let value = match read_points(&a.input)? {
        PointSet::Hyperbolic(p) => {
            check_model(Model::Hyperbolic, a.model)?;
            dilate_json::<Hyperbolic>(&p, a)?
        }
        PointSet::Spherical(p) => {
            check_model(Model::Spherical, a.model)?;
            dilate_json::<Spherical>(&p, a)?
        }
    };
    let n = value["results"].as_array().map_or(0, Vec::len);
    Ok(Output::Json { value, met: true, summary: format!("dilate: {n} points") })
}
