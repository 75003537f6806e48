use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use ordnung::bv::{jordan_decompose, metric_variation, restricted_variation, variation, ChainFunction, FunctionFamily};
use ordnung::gallery::{
    gen_cantor_projections, gen_helly_powers, gen_random_bv, gen_random_monotone, gen_rademacher,
    gen_random_topology, Seed,
};
use ordnung::order::{interval_topology, FiniteTopology, PointSet};
use ordnung::representation::{diagonal_embed, is_fragmented, is_fragmented_metric, verify_claims};
use ordnung::selection::{
    diagonal_select_stream, pigeonhole_floor, select_bv, select_metric_valued, select_monotone,
    select_poset_valued, FnStream, SelectionResult,
};
use ordnung::tameness::{
    dlp_violation, independence_at, independence_search, l1_constant, max_independent_size,
    IndependenceCheck, IndependenceWitness,
};
use ordnung::Exact;
use serde_json::{json, Value};

use crate::decimal::format as dec;
use crate::ingest::{self, Dataset, Format, IngestError, Input};
use crate::report::{digest, AnalysisReport, InvariantCheck, TOOL_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Variation,
    Jordan,
    Independence,
    Maxindep,
    L1const,
    Dlp,
    SelectMonotone,
    SelectBv,
    SelectPoset,
    SelectMetric,
    StreamSelect,
    Embed,
    Fragcheck,
    Gallery,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GalleryKind {
    Rademacher,
    Cantor,
    Helly,
    Monotone,
    Bv,
    Topology,
}

/// Analyses of function families on finite chains.
#[derive(Debug, Clone, Parser)]
#[command(name = "ordnung", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Dataset file (JSON or CSV); not used by `gallery`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma separated chain points.
    #[arg(long, value_delimiter = ',')]
    pub samples: Option<Vec<usize>>,
    /// Comma separated member indices.
    #[arg(long, value_delimiter = ',')]
    pub indices: Option<Vec<usize>>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub auto_augment: bool,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, value_enum)]
    pub kind: Option<GalleryKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub chain_size: Option<usize>,
    /// Where `gallery` writes the generated dataset.
    #[arg(long)]
    pub emit: Option<PathBuf>,
    #[arg(long, env = "ORDNUNG_MAX_GROUND", default_value_t = ordnung::representation::DEFAULT_MAX_GROUND)]
    pub max_ground: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("ingest: {0}")]
    Ingest(#[from] IngestError),
    #[error("{module}: {source}")]
    Core { module: &'static str, source: ordnung::Error },
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn core(module: &'static str) -> impl Fn(ordnung::Error) -> CliError {
    move |source| CliError::Core { module, source }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

struct Outcome {
    result: Value,
    checks: Vec<InvariantCheck>,
    negative: bool,
}

impl Outcome {
    fn positive(result: Value, checks: Vec<InvariantCheck>) -> Self {
        Outcome { result, checks, negative: false }
    }
}

fn nums(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(dec(*v))).collect())
}

fn exact_to_f64(x: &Exact) -> f64 {
    ordnung::Scalar::approx(x)
}

fn real(input: &Input) -> Result<&FunctionFamily<f64>> {
    match &input.dataset {
        Dataset::Real(f) => Ok(f),
        other => Err(usage(format!("this command needs a real-valued family, got a {} dataset", other.kind()))),
    }
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| usage(format!("missing --{flag}")))
}

impl Cli {
    pub fn parameters(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                p.insert(k.to_string(), v);
            }
        };
        put("epsilon", self.epsilon.map(dec));
        put("r", self.r.map(dec));
        put("k", self.k.map(|k| k.to_string()));
        put("a", self.a.map(dec));
        put("b", self.b.map(dec));
        put("seed", Some(self.seed.to_string()));
        let list = |v: &Option<Vec<usize>>| v.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        put("samples", list(&self.samples));
        put("indices", list(&self.indices));
        put("tolerance", self.tolerance.map(dec));
        put("auto-augment", self.auto_augment.then(|| "true".to_string()));
        put("depth", self.depth.map(|v| v.to_string()));
        put("budget", self.budget.map(|v| v.to_string()));
        put("kind", self.kind.map(|k| format!("{k:?}").to_lowercase()));
        put("n", self.n.map(|v| v.to_string()));
        put("grid", self.grid.map(|v| v.to_string()));
        put("count", self.count.map(|v| v.to_string()));
        put("chain-size", self.chain_size.map(|v| v.to_string()));
        put("max-ground", Some(self.max_ground.to_string()));
        p
    }
}

/// Runs one command, returning the report and the exit status.
pub fn execute(cli: &Cli) -> Result<(AnalysisReport, i32)> {
    let start = Instant::now();
    let (outcome, input_digest) = if cli.command == Command::Gallery {
        gallery(cli)?
    } else {
        let path = cli.input.as_ref().ok_or_else(|| usage("missing input file"))?;
        let (input, bytes) = ingest::read(path, cli.format)?;
        (dispatch(cli, &input)?, digest(&bytes))
    };
    let report = AnalysisReport {
        command: cli.command.to_possible_value().expect("commands have names").get_name().to_string(),
        input_digest,
        parameters: cli.parameters(),
        result: outcome.result,
        invariant_checks: outcome.checks,
        tool_version: TOOL_VERSION.to_string(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    let code = if outcome.negative { EXIT_NEGATIVE } else { EXIT_OK };
    Ok((report, code))
}

/// Parses arguments, runs, writes the report; returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let text = report.to_json();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_ERROR;
                    }
                }
                None => print!("{text}"),
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, input: &Input) -> Result<Outcome> {
    match cli.command {
        Command::Variation => cmd_variation(input),
        Command::Jordan => cmd_jordan(input),
        Command::Independence => cmd_independence(cli, input),
        Command::Maxindep => cmd_maxindep(input),
        Command::L1const => cmd_l1const(cli, input),
        Command::Dlp => cmd_dlp(cli, input),
        Command::SelectMonotone => cmd_select_monotone(cli, input),
        Command::SelectBv => cmd_select_bv(cli, input),
        Command::SelectPoset => cmd_select_poset(cli, input),
        Command::SelectMetric => cmd_select_metric(cli, input),
        Command::StreamSelect => cmd_stream_select(cli, input),
        Command::Embed => cmd_embed(cli, input),
        Command::Fragcheck => cmd_fragcheck(cli, input),
        Command::Gallery => unreachable!("handled before ingest"),
    }
}

fn cmd_variation(input: &Input) -> Result<Outcome> {
    match &input.dataset {
        Dataset::Real(f) => {
            let vars: Vec<f64> = f.members().iter().map(variation).collect();
            let last = f.chain().size() - 1;
            let consistent = f
                .members()
                .iter()
                .zip(&vars)
                .all(|(m, v)| restricted_variation(m, last).map(|r| r == *v).unwrap_or(false));
            Ok(Outcome::positive(
                json!({ "variations": nums(&vars), "max": dec(vars.iter().copied().fold(0.0, f64::max)) }),
                vec![InvariantCheck::new("restricted-variation-at-top-equals-variation", consistent, "")],
            ))
        }
        Dataset::Metric { members, .. } => {
            let vars: Vec<f64> = members.iter().map(metric_variation).collect();
            Ok(Outcome::positive(
                json!({ "variations": nums(&vars), "max": dec(vars.iter().copied().fold(0.0, f64::max)) }),
                Vec::new(),
            ))
        }
        Dataset::Poset { .. } => Err(usage("variation needs a real or metric dataset")),
    }
}

fn cmd_jordan(input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    let mut parts = Vec::new();
    let mut exact = true;
    let mut increasing = true;
    for m in fam.members() {
        // decompose over the rationals so that u - v == f holds exactly
        let values: Vec<Exact> = m.values().iter().map(|&v| ordnung::Scalar::lit(v)).collect();
        let f = ChainFunction::fitted(m.chain().clone(), values).map_err(core("bv"))?;
        let (u, v) = jordan_decompose(&f);
        exact &= f.chain().points().all(|x| u.value(x).clone() - v.value(x).clone() == *f.value(x));
        increasing &= u.is_increasing() && v.is_increasing();
        let u: Vec<f64> = u.values().iter().map(exact_to_f64).collect();
        let v: Vec<f64> = v.values().iter().map(exact_to_f64).collect();
        parts.push(json!({ "u": nums(&u), "v": nums(&v) }));
    }
    Ok(Outcome::positive(
        json!({ "parts": parts }),
        vec![
            InvariantCheck::new("parts-increasing", increasing, ""),
            InvariantCheck::new("u-minus-v-equals-f-exactly", exact, "computed over the rationals"),
        ],
    ))
}

fn witness_json(w: &IndependenceWitness<f64>) -> Value {
    json!({
        "indices": w.indices,
        "a": dec(w.a),
        "b": dec(w.b),
        "pattern_points": w.pattern_points,
    })
}

fn cmd_independence(cli: &Cli, input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    match (cli.a, cli.b) {
        (Some(a), Some(b)) => {
            let indices = cli.indices.clone().unwrap_or_else(|| (0..fam.len()).collect());
            match independence_at(fam, &indices, &a, &b).map_err(core("tameness"))? {
                IndependenceCheck::Independent(w) => {
                    let ok = w.validate(fam).is_ok();
                    Ok(Outcome::positive(
                        json!({ "independent": true, "witness": witness_json(&w) }),
                        vec![InvariantCheck::new("witness-revalidates", ok, "")],
                    ))
                }
                IndependenceCheck::Refused(p) => Ok(Outcome {
                    result: json!({
                        "independent": false,
                        "unrealised_pattern": { "below": p.below().iter().map(|&j| indices[j]).collect::<Vec<_>>(),
                                                "above": p.above().iter().map(|&j| indices[j]).collect::<Vec<_>>() },
                    }),
                    checks: Vec::new(),
                    negative: true,
                }),
            }
        }
        (None, None) => {
            let k = cli.k.unwrap_or(2);
            match independence_search(fam, k).map_err(core("tameness"))? {
                Some(w) => {
                    let ok = w.validate(fam).is_ok();
                    Ok(Outcome::positive(
                        json!({ "independent": true, "k": k, "witness": witness_json(&w) }),
                        vec![InvariantCheck::new("witness-revalidates", ok, "")],
                    ))
                }
                None => Ok(Outcome {
                    result: json!({ "independent": false, "k": k, "tame_at_k": true }),
                    checks: Vec::new(),
                    negative: true,
                }),
            }
        }
        _ => Err(usage("--a and --b go together")),
    }
}

fn cmd_maxindep(input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    let (size, witness) = max_independent_size(fam);
    let checks = witness
        .as_ref()
        .map(|w| vec![InvariantCheck::new("witness-revalidates", w.validate(fam).is_ok(), "")])
        .unwrap_or_default();
    Ok(Outcome {
        result: json!({ "max_independent_size": size, "witness": witness.as_ref().map(witness_json) }),
        checks,
        negative: size == 0,
    })
}

fn cmd_l1const(cli: &Cli, input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    let sub = match &cli.indices {
        Some(ix) => fam.subfamily(ix).map_err(core("tameness"))?,
        None => fam.clone(),
    };
    let tol = cli.tolerance.unwrap_or(1e-6);
    let cert = l1_constant(&sub, tol).map_err(core("tameness"))?;
    let smallest_norm = sub
        .members()
        .iter()
        .map(|m| m.values().iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
        .fold(f64::INFINITY, f64::min);
    Ok(Outcome::positive(
        json!({
            "constant": dec(cert.constant),
            "lower_bound": dec(cert.lower_bound),
            "coefficients": nums(&cert.coefficients),
            "tolerance": dec(tol),
        }),
        vec![InvariantCheck::new(
            "constant-at-most-smallest-member-norm",
            cert.constant <= smallest_norm + tol,
            format!("smallest norm {}", dec(smallest_norm)),
        )],
    ))
}

fn cmd_dlp(cli: &Cli, input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    let delta = required(cli.epsilon, "epsilon")?;
    let tol = cli.tolerance.unwrap_or(0.0);
    let k = cli.k.unwrap_or(2);
    let rows = fam.rows();
    match dlp_violation(&rows, &delta, &tol, k).map_err(core("tameness"))? {
        Some(w) => {
            let ok = w.validate(&rows, &delta, &tol).is_ok();
            Ok(Outcome::positive(
                json!({ "violation": true, "rows": w.rows, "cols": w.cols, "alpha": dec(w.alpha), "beta": dec(w.beta) }),
                vec![InvariantCheck::new("witness-revalidates", ok, "")],
            ))
        }
        None => Ok(Outcome { result: json!({ "violation": false, "k": k }), checks: Vec::new(), negative: true }),
    }
}

fn selection_json(s: &SelectionResult<f64>) -> Value {
    json!({
        "selected": s.selected,
        "size": s.len(),
        "epsilon": dec(s.epsilon),
        "sample_points": s.sample_points,
        "trace": s.trace.iter().map(|t| json!({
            "stage": t.stage, "point": t.point, "bin": t.bin, "survivors": t.survivors,
        })).collect::<Vec<_>>(),
    })
}

fn pairwise_check(violation: Option<(usize, usize, usize)>) -> InvariantCheck {
    let detail = violation.map(|(i, j, x)| format!("members {i} and {j} differ at point {x}")).unwrap_or_default();
    InvariantCheck::new("pairwise-within-epsilon", violation.is_none(), detail)
}

fn cmd_select_monotone(cli: &Cli, input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    let eps = required(cli.epsilon, "epsilon")?;
    let s = select_monotone(fam, &eps, cli.samples.as_deref()).map_err(core("selection"))?;
    let (c, d) = *fam.range();
    let bins = if d > c { (1..).find(|&b| b as f64 * eps >= d - c).unwrap_or(1) } else { 1 };
    let floor = pigeonhole_floor(fam.len(), bins, s.sample_points.len());
    let mut result = selection_json(&s);
    result["pigeonhole_floor"] = json!(floor);
    Ok(Outcome::positive(
        result,
        vec![
            pairwise_check(s.validate(fam)),
            InvariantCheck::new("at-least-pigeonhole-floor", s.len() >= floor, format!("floor {floor}")),
        ],
    ))
}

fn cmd_select_bv(cli: &Cli, input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    let eps = required(cli.epsilon, "epsilon")?;
    let r = required(cli.r, "r")?;
    let s = select_bv(fam, &r, &eps, cli.samples.as_deref()).map_err(core("selection"))?;
    Ok(Outcome::positive(selection_json(&s), vec![pairwise_check(s.validate(fam))]))
}

fn cmd_select_poset(cli: &Cli, input: &Input) -> Result<Outcome> {
    let Dataset::Poset { members, .. } = &input.dataset else {
        return Err(usage("select-poset needs a poset dataset"));
    };
    let eps = cli.epsilon.unwrap_or(0.5);
    let s = select_poset_valued(members, &eps, cli.samples.as_deref()).map_err(core("selection"))?;
    let same = s.selected.iter().all(|&n| {
        s.sample_points.iter().all(|&x| members[n].values()[x] == members[s.selected[0]].values()[x])
    });
    let mut checks = Vec::new();
    if eps < 1.0 {
        checks.push(InvariantCheck::new("selected-maps-agree-on-samples", same, ""));
    }
    Ok(Outcome::positive(selection_json(&s), checks))
}

fn cmd_select_metric(cli: &Cli, input: &Input) -> Result<Outcome> {
    let Dataset::Metric { members, .. } = &input.dataset else {
        return Err(usage("select-metric needs a metric dataset"));
    };
    let eps = required(cli.epsilon, "epsilon")?;
    let r = required(cli.r, "r")?;
    let s = select_metric_valued(members, &r, &eps, cli.samples.as_deref()).map_err(core("selection"))?;
    Ok(Outcome::positive(selection_json(&s), vec![pairwise_check(s.validate_metric(members))]))
}

fn cmd_stream_select(cli: &Cli, input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    let points: Vec<usize> = cli.samples.clone().unwrap_or_else(|| fam.chain().points().collect());
    let first = cli.epsilon.unwrap_or(0.5);
    let depth = cli.depth.unwrap_or(points.len().min(8));
    let schedule: Vec<f64> = (0..depth).map(|m| first / 2f64.powi(m as i32)).collect();
    let budget = cli.budget.unwrap_or(fam.len()).min(fam.len());
    let stream = FnStream::new(*fam.range(), |n, x| *fam.value(n, x));
    let out = diagonal_select_stream(&stream, &points, &schedule, budget).map_err(core("selection"))?;
    let nested = out.stages.windows(2).all(|w| w[1].iter().all(|n| w[0].contains(n)));
    let mut diagonal_ok = true;
    for (m, eps) in schedule.iter().enumerate() {
        for &i in &out.diagonal[m..] {
            for &j in &out.diagonal[m..] {
                diagonal_ok &= out.points[..=m].iter().all(|&x| (fam.value(i, x) - fam.value(j, x)).abs() <= *eps);
            }
        }
    }
    Ok(Outcome::positive(
        json!({
            "points": out.points,
            "schedule": nums(&out.schedule),
            "stages": out.stages,
            "diagonal": out.diagonal,
            "draws": out.draws,
        }),
        vec![
            InvariantCheck::new("stages-nested", nested, ""),
            InvariantCheck::new("diagonal-tails-within-schedule", diagonal_ok, ""),
        ],
    ))
}

fn cmd_embed(cli: &Cli, input: &Input) -> Result<Outcome> {
    let fam = real(input)?;
    let e = diagonal_embed(fam.chain(), fam, cli.auto_augment).map_err(core("representation"))?;
    let report = verify_claims(&e);
    let first_appended = e.family.len() - e.appended.len();
    let appended: Vec<Value> = e
        .appended
        .iter()
        .enumerate()
        .map(|(i, &y)| json!({ "upper_point": y, "indicator": nums(e.family.member(first_appended + i).values()) }))
        .collect();
    let describe = |c: &Option<_>| c.as_ref().map(|c| format!("{c:?}"));
    let claims = json!({
        "partial_order": { "holds": report.partial_order.is_none(), "counterexample": describe(&report.partial_order), "closedness": "vacuous on a finite image" },
        "linear": { "holds": report.linear.is_none(), "counterexample": describe(&report.linear) },
        "extensions": { "holds": report.extensions.is_none(), "counterexample": describe(&report.extensions) },
        "topologies_agree": { "holds": true, "degenerate": report.topology_degenerate },
        "density": "not falsifiable on a finite image",
    });
    let negative = !report.all_pass();
    Ok(Outcome {
        result: json!({
            "image_points": e.image_points.iter().map(|p| nums(p)).collect::<Vec<_>>(),
            "relation_size": e.induced_relation.len(),
            "appended": appended,
            "claims": claims,
        }),
        checks: vec![
            InvariantCheck::new("order-linearity-extension-claims", report.substantive_pass(), ""),
            InvariantCheck::new("relation-is-product-order", report.product_order.is_none(), ""),
            InvariantCheck::new("order-fidelity", report.order_fidelity.is_none(), ""),
        ],
        negative,
    })
}

fn cmd_fragcheck(cli: &Cli, input: &Input) -> Result<Outcome> {
    let eps = required(cli.epsilon, "epsilon")?;
    let chain = input.dataset.chain();
    let topology = match &input.topology {
        Some(t) => t.clone(),
        None => interval_topology(&chain).map_err(core("order"))?,
    };
    let members: Vec<Value> = match &input.dataset {
        Dataset::Real(f) => f
            .members()
            .iter()
            .map(|m| is_fragmented(m.values(), &topology, &eps, cli.max_ground))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(core("representation"))?
            .into_iter()
            .map(|r| json!({ "fragmented": r.holds(), "witness": r.witness.map(|w| w.iter().collect::<Vec<_>>()) }))
            .collect(),
        Dataset::Metric { space, members } => members
            .iter()
            .map(|m| is_fragmented_metric(m.values(), space, &topology, &eps, cli.max_ground))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(core("representation"))?
            .into_iter()
            .map(|r| json!({ "fragmented": r.holds(), "witness": r.witness.map(|w| w.iter().collect::<Vec<_>>()) }))
            .collect(),
        Dataset::Poset { .. } => return Err(usage("fragcheck needs a real or metric dataset")),
    };
    let all = members.iter().all(|m| m["fragmented"] == json!(true));
    Ok(Outcome {
        result: json!({ "all_fragmented": all, "members": members, "open_sets": topology.opens().len() }),
        checks: Vec::new(),
        negative: !all,
    })
}

fn gallery(cli: &Cli) -> Result<(Outcome, String)> {
    let kind = required(cli.kind, "kind")?;
    let seed = Seed(cli.seed);
    let gen = core("gallery");
    let input = match kind {
        GalleryKind::Rademacher => {
            let n = cli.n.unwrap_or(3);
            Input::family(gen_rademacher(n, cli.grid.unwrap_or(1 << (n + 1))).map_err(&gen)?)
        }
        GalleryKind::Cantor => Input::family(gen_cantor_projections(cli.n.unwrap_or(2)).map_err(&gen)?),
        GalleryKind::Helly => {
            let g = cli.grid.unwrap_or(5);
            let grid: Vec<f64> = if g <= 1 { vec![0.0] } else { (0..g).map(|j| j as f64 / (g - 1) as f64).collect() };
            Input::family(gen_helly_powers(cli.n.unwrap_or(5), &grid).map_err(&gen)?)
        }
        GalleryKind::Monotone => Input::family(
            gen_random_monotone(cli.count.unwrap_or(10), cli.chain_size.unwrap_or(8), seed).map_err(&gen)?,
        ),
        GalleryKind::Bv => Input::family(
            gen_random_bv(cli.count.unwrap_or(10), cli.chain_size.unwrap_or(8), &cli.r.unwrap_or(1.0), seed)
                .map_err(&gen)?,
        ),
        GalleryKind::Topology => {
            let n = cli.chain_size.unwrap_or(4);
            let t: FiniteTopology = gen_random_topology(n, cli.count.unwrap_or(3), seed).map_err(&gen)?;
            let chain = Arc::new(ordnung::order::Chain::new(n).map_err(&gen)?);
            Input {
                dataset: Dataset::Real(FunctionFamily::empty(chain, (0.0, 0.0)).map_err(&gen)?),
                topology: Some(t),
            }
        }
    };
    let json_text = ingest::to_json(&input);
    let reloads = ingest::from_json(&json_text).map(|back| back == input).unwrap_or(false);
    if let Some(path) = &cli.emit {
        let text = ingest::serialize(&input, cli.format.unwrap_or_else(|| Format::infer(path)))?;
        std::fs::write(path, text)?;
    }
    let opens = input
        .topology
        .as_ref()
        .map(|t| t.opens().iter().map(|o: &PointSet| o.iter().collect::<Vec<_>>()).collect::<Vec<_>>());
    let outcome = Outcome::positive(
        json!({ "dataset": ingest::to_json_value(&input), "open_sets": opens.map(|o| o.len()) }),
        vec![InvariantCheck::new("dataset-round-trips", reloads, "")],
    );
    Ok((outcome, digest(json_text.as_bytes())))
}
