//! Command-line front end.
//!
//! Five subcommands operate on a matrix file `{"A": [[...],[...]]}`:
//! `umbrella` (faces and facets with witnesses), `slopes` (parametric sweep
//! along coordinate subspaces), `cycle` (multiplicity table and degree),
//! `gb` (marked Gröbner basis with component verification), and `plot`
//! (deterministic SVG for planar configurations).
//!
//! Conventions shared by every subcommand: column indices are 1-based in
//! all input flags and all output, rationals are `p/q` strings (never
//! floats), JSON reports embed the input echo and the library version, and
//! output bytes are identical for identical input. Exit codes: 0 success,
//! 2 validation failure (with a machine-readable `reason` on stderr),
//! 3 internal consistency failure, 4 power budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::exactmath::{format_rat, parse_rat, rat, rat_int, Int, Rat};
use crate::multiplicity::char_cycle;
use crate::projective::slopes_at_infinity;
use crate::slopes::SlopeReport;
use crate::toric::{initial_ideal, toric_ideal, verify_components_with_budget};
use crate::umbrella::{umbrella_facet_sets, FaceDim, ToricMatrix, UmbrellaError};
use crate::{multiplicity::MultiplicityError, projective::ProjectiveError, slopes::SlopeError, toric::ToricError};

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

/// A failed command: an exit code, a stable machine-readable reason, and a
/// human-readable detail line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub reason: String,
    pub detail: String,
}

impl CliError {
    fn validation(reason: &str, detail: impl Into<String>) -> Self {
        CliError {
            code: 2,
            reason: reason.to_string(),
            detail: detail.into(),
        }
    }

    fn internal(reason: &str, detail: impl Into<String>) -> Self {
        CliError {
            code: 3,
            reason: reason.to_string(),
            detail: detail.into(),
        }
    }

    fn budget(detail: impl Into<String>) -> Self {
        CliError {
            code: 4,
            reason: "budget-exceeded".to_string(),
            detail: detail.into(),
        }
    }

    fn to_json(&self) -> Value {
        json!({"error": {"reason": self.reason, "detail": self.detail, "exit": self.code}})
    }
}

impl From<UmbrellaError> for CliError {
    fn from(e: UmbrellaError) -> Self {
        let reason = match &e {
            UmbrellaError::ZeroColumn(_) => "zero-column",
            UmbrellaError::NotFullRowRank => "not-full-rank",
            UmbrellaError::NotPointed => "not-pointed",
            UmbrellaError::LatticeNotFull => "lattice-not-full",
            UmbrellaError::WeightCount { .. } => "weight-count",
            UmbrellaError::ColumnOutOfRange(_) => "index-out-of-range",
        };
        CliError::validation(reason, e.to_string())
    }
}

impl From<SlopeError> for CliError {
    fn from(e: SlopeError) -> Self {
        match e {
            SlopeError::OverlappingSupports(_) => {
                CliError::validation("overlapping-supports", e.to_string())
            }
            SlopeError::IndexOutOfRange(_) => {
                CliError::validation("index-out-of-range", e.to_string())
            }
            SlopeError::IntervalNotConstant { .. } => {
                CliError::internal("interval-not-constant", e.to_string())
            }
            SlopeError::Umbrella(inner) => inner.into(),
        }
    }
}

impl From<MultiplicityError> for CliError {
    fn from(e: MultiplicityError) -> Self {
        match e {
            MultiplicityError::NotAFacet | MultiplicityError::NotAFace => {
                CliError::validation("not-a-face", e.to_string())
            }
            MultiplicityError::NonIntegerVolume(_) => {
                CliError::internal("non-integer-volume", e.to_string())
            }
            MultiplicityError::Inconsistency(_) => {
                CliError::internal("internal-inconsistency", e.to_string())
            }
            MultiplicityError::Umbrella(inner) => inner.into(),
            MultiplicityError::Exact(inner) => {
                CliError::internal("internal-arithmetic", inner.to_string())
            }
        }
    }
}

impl From<ToricError> for CliError {
    fn from(e: ToricError) -> Self {
        match e {
            ToricError::WeightCount { .. } => CliError::validation("weight-count", e.to_string()),
            ToricError::ColumnOutOfRange(_) => {
                CliError::validation("index-out-of-range", e.to_string())
            }
            ToricError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            ToricError::Umbrella(inner) => inner.into(),
        }
    }
}

impl From<ProjectiveError> for CliError {
    fn from(e: ProjectiveError) -> Self {
        match e {
            ProjectiveError::ChartMissesY => CliError::validation("chart-misses-y", e.to_string()),
            ProjectiveError::IndexOutOfRange(_) => {
                CliError::validation("index-out-of-range", e.to_string())
            }
            ProjectiveError::Slope(inner) => inner.into(),
            ProjectiveError::Umbrella(inner) => inner.into(),
        }
    }
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "gkz-umbrella",
    version,
    about = "Umbrellas, slopes and characteristic cycles of pointed integer matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All faces of the (A, L)-umbrella with supporting witnesses.
    Umbrella(WeightedArgs),
    /// Slopes along a coordinate subspace: sweep the weight family w(s).
    Slopes(SlopesArgs),
    /// Multiplicity table of the L-characteristic cycle, with the degree.
    Cycle(CycleArgs),
    /// Reduced Gröbner basis of the toric ideal, marked initial forms, and
    /// component verification.
    Gb(WeightedArgs),
    /// Deterministic SVG picture of a planar configuration (d = 2 only).
    Plot(PlotArgs),
}

#[derive(Args)]
struct WeightedArgs {
    /// Input JSON file with schema {"A": [[...],[...]]}.
    #[arg(long = "A", value_name = "FILE")]
    matrix: PathBuf,
    /// Weight vector: comma-separated rationals, e.g. 1,1,1,2 or 1/2,1/2,1.
    #[arg(long = "L", value_name = "W,W,...")]
    weights: Option<String>,
    /// Write the report to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SlopesArgs {
    /// Input JSON file with schema {"A": [[...],[...]]}.
    #[arg(long = "A", value_name = "FILE")]
    matrix: PathBuf,
    /// Vanishing coordinates (1-based, comma-separated), e.g. 4 or 1,2.
    #[arg(long = "v0", value_name = "J,J,...")]
    v0: Option<String>,
    /// Coordinates at infinity (1-based, comma-separated).
    #[arg(long = "vinf", value_name = "J,J,...")]
    vinf: Option<String>,
    /// Write the report to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CycleArgs {
    #[command(flatten)]
    common: WeightedArgs,
    /// Output format for the multiplicity table.
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    format: TableFormat,
}

#[derive(Args)]
struct PlotArgs {
    /// Input JSON file with schema {"A": [[...],[...]]}.
    #[arg(long = "A", value_name = "FILE")]
    matrix: PathBuf,
    /// Weight vector: comma-separated nonnegative rationals.
    #[arg(long = "L", value_name = "W,W,...")]
    weights: Option<String>,
    /// Write the SVG to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Output format of the `cycle` table.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
}

/// Parsed and validated command input. Indices are 0-based internally; the
/// original rows are kept for the input echo.
#[derive(Debug)]
pub struct InputSpec {
    pub rows: Vec<Vec<i64>>,
    pub matrix: ToricMatrix,
    pub weights: Option<Vec<Rat>>,
    pub v0: Vec<usize>,
    pub vinf: Vec<usize>,
}

impl InputSpec {
    /// Builds an `InputSpec` from already-parsed parts (used by the loader
    /// and by tests). Index lists here are 1-based, as on the command line.
    pub fn from_parts(
        rows: Vec<Vec<i64>>,
        weights: Option<Vec<Rat>>,
        v0_one_based: &[usize],
        vinf_one_based: &[usize],
    ) -> Result<Self, CliError> {
        let d = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if d == 0 || n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(CliError::validation(
                "bad-dimensions",
                "the matrix must be rectangular and non-empty",
            ));
        }
        let matrix = ToricMatrix::from_rows(&rows)?;
        if let Some(w) = &weights {
            if w.len() != n {
                return Err(CliError::validation(
                    "weight-count",
                    format!("expected {} weights, got {}", n, w.len()),
                ));
            }
        }
        let v0 = to_zero_based(v0_one_based, n)?;
        let vinf = to_zero_based(vinf_one_based, n)?;
        Ok(InputSpec {
            rows,
            matrix,
            weights,
            v0,
            vinf,
        })
    }

    fn load(
        path: &Path,
        weights_flag: Option<&str>,
        v0_flag: Option<&str>,
        vinf_flag: Option<&str>,
    ) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::validation("io-error", format!("cannot read {}: {}", path.display(), e))
        })?;
        let file: MatrixFile = serde_json::from_str(&text).map_err(|e| {
            CliError::validation("invalid-json", format!("{}: {}", path.display(), e))
        })?;
        let weights = weights_flag.map(parse_weights).transpose()?;
        let v0 = v0_flag.map(parse_indices).transpose()?.unwrap_or_default();
        let vinf = vinf_flag.map(parse_indices).transpose()?.unwrap_or_default();
        InputSpec::from_parts(file.a, weights, &v0, &vinf)
    }

    fn require_weights(&self) -> Result<&[Rat], CliError> {
        self.weights.as_deref().ok_or_else(|| {
            CliError::validation("weight-required", "this command needs a weight vector --L")
        })
    }

    /// The input echo embedded in every JSON report.
    fn echo(&self) -> Value {
        json!({
            "A": self.rows,
            "L": self.weights.as_ref().map(|w| rat_strings(w)),
            "v0": one_based(&self.v0),
            "vinf": one_based(&self.vinf),
        })
    }
}

fn parse_weights(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|part| {
            parse_rat(part).map_err(|e| CliError::validation("bad-rational", e))
        })
        .collect()
}

fn parse_indices(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CliError::validation("bad-index", format!("invalid index {part:?}")))
        })
        .collect()
}

fn to_zero_based(one_based: &[usize], n: usize) -> Result<Vec<usize>, CliError> {
    one_based
        .iter()
        .map(|&j| {
            if j == 0 || j > n {
                Err(CliError::validation(
                    "index-out-of-range",
                    format!("column index {j} out of range (columns are 1..={n})"),
                ))
            } else {
                Ok(j - 1)
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Shared JSON helpers
// ---------------------------------------------------------------------------

fn one_based(members: &[usize]) -> Vec<usize> {
    members.iter().map(|&j| j + 1).collect()
}

fn one_based_sets<'a, I: IntoIterator<Item = &'a Vec<usize>>>(sets: I) -> Vec<Vec<usize>> {
    sets.into_iter().map(|s| one_based(s)).collect()
}

fn rat_strings(values: &[Rat]) -> Vec<String> {
    values.iter().map(format_rat).collect()
}

fn dim_value(dim: &FaceDim) -> Value {
    match dim {
        FaceDim::Empty => json!("empty"),
        FaceDim::Dim(k) => json!(k),
    }
}

/// Wraps a payload into the common report envelope.
fn envelope(command: &str, input: &InputSpec, payload: Map<String, Value>) -> Value {
    let mut map = Map::new();
    map.insert("version".to_string(), json!(env!("CARGO_PKG_VERSION")));
    map.insert("command".to_string(), json!(command));
    map.insert("input".to_string(), input.echo());
    map.extend(payload);
    Value::Object(map)
}

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

/// `umbrella`: every face with its dimension and witness, plus the facets.
pub fn cmd_umbrella(input: &InputSpec) -> Result<Value, CliError> {
    let weights = input.require_weights()?.to_vec();
    input.matrix.require_full_lattice()?;
    let umbrella = crate::umbrella::compute_umbrella(&input.matrix, &weights)?;
    let faces: Vec<Value> = umbrella
        .faces()
        .iter()
        .map(|f| {
            json!({
                "members": one_based(&f.members),
                "dim": dim_value(&f.dim),
                "witness_h": rat_strings(&f.witness),
            })
        })
        .collect();
    let facets = one_based_sets(&umbrella.facet_sets());
    let mut payload = Map::new();
    payload.insert("dim".to_string(), json!(input.matrix.dim()));
    payload.insert("num_columns".to_string(), json!(input.matrix.num_columns()));
    payload.insert("faces".to_string(), json!(faces));
    payload.insert("facets".to_string(), json!(facets));
    Ok(envelope("umbrella", input, payload))
}

/// Slopes 1/s*, listed in the order of the critical values so that
/// `slopes[i]` pairs with `critical_s[i]`.
fn slope_strings(report: &SlopeReport) -> Vec<String> {
    report
        .critical_values
        .iter()
        .map(|s| format_rat(&(Rat::one() / s)))
        .collect()
}

fn report_json(report: &SlopeReport) -> Map<String, Value> {
    let intervals: Vec<Value> = report
        .intervals
        .iter()
        .map(|iv| {
            let upper = iv
                .upper
                .as_ref()
                .map_or_else(|| "inf".to_string(), format_rat);
            json!({
                "s_range": [format_rat(&iv.lower), upper],
                "sample": format_rat(&iv.sample),
                "facets": one_based_sets(&iv.facets),
            })
        })
        .collect();
    let candidates: Vec<Value> = report
        .candidates
        .iter()
        .map(|c| {
            json!({
                "s": format_rat(&c.s),
                "slope": format_rat(&c.slope),
                "jump": c.jump,
                "facets_at": one_based_sets(&c.facets_at),
            })
        })
        .collect();
    let mut payload = Map::new();
    payload.insert("slopes".to_string(), json!(slope_strings(report)));
    payload.insert(
        "critical_s".to_string(),
        json!(rat_strings(&report.critical_values)),
    );
    payload.insert("intervals".to_string(), json!(intervals));
    payload.insert("candidates".to_string(), json!(candidates));
    payload.insert("conjectural".to_string(), json!(report.conjectural));
    payload
}

/// `slopes`: sweep along the chosen coordinate subspace. Needs --v0 and/or
/// --vinf; with variables at infinity the headline list is the unfiltered
/// one and the pyramid-filtered slopes are reported alongside.
pub fn cmd_slopes(input: &InputSpec) -> Result<Value, CliError> {
    if input.v0.is_empty() && input.vinf.is_empty() {
        return Err(CliError::validation(
            "support-required",
            "provide --v0 and/or --vinf to select a coordinate subspace",
        ));
    }
    let infinity = slopes_at_infinity(&input.matrix, &input.v0, &input.vinf)?;
    let mut payload = report_json(&infinity.report);
    payload.insert(
        "filtered_slopes".to_string(),
        json!(slope_strings(&infinity.filtered)),
    );
    Ok(envelope("slopes", input, payload))
}

/// `cycle`: the multiplicity table of the L-characteristic cycle.
pub fn cmd_cycle(input: &InputSpec, format: TableFormat) -> Result<CmdOutput, CliError> {
    let weights = input.require_weights()?.to_vec();
    input.matrix.require_full_lattice()?;
    let cycle = char_cycle(&input.matrix, &weights)?;
    let degree = cycle.degree();
    match format {
        TableFormat::Json => {
            let entries: Vec<Value> = cycle
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "members": one_based(&e.members),
                        "dim": dim_value(&e.dim),
                        "mu": e.mu.to_string(),
                    })
                })
                .collect();
            let mut payload = Map::new();
            payload.insert("entries".to_string(), json!(entries));
            payload.insert("degree".to_string(), json!(degree.to_string()));
            Ok(CmdOutput::Json(envelope("cycle", input, payload)))
        }
        TableFormat::Csv => {
            let mut out = String::from("members,dim,mu\n");
            for e in &cycle.entries {
                let members = one_based(&e.members)
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                let dim = match &e.dim {
                    FaceDim::Empty => "empty".to_string(),
                    FaceDim::Dim(k) => k.to_string(),
                };
                let _ = writeln!(out, "{members},{dim},{}", e.mu);
            }
            let _ = writeln!(out, "# degree = {degree}");
            Ok(CmdOutput::Text(out))
        }
    }
}

/// `gb`: the toric ideal, the reduced weight-marked Gröbner basis, its
/// initial forms, and the component verification summary. Exits with the
/// budget code when any radical witness stays undecided.
pub fn cmd_gb(input: &InputSpec, budget: Option<usize>) -> Result<Value, CliError> {
    let weights = input.require_weights()?.to_vec();
    let generators = toric_ideal(&input.matrix);
    let gb = initial_ideal(&generators, &weights)?;
    let umbrella = crate::umbrella::compute_umbrella(&input.matrix, &weights)?;
    let report = verify_components_with_budget(&gb, &umbrella, budget);
    let undecided: Vec<Vec<usize>> = report
        .witness_checks
        .iter()
        .filter(|w| w.witness.is_none())
        .map(|w| one_based(&w.subset))
        .collect();
    if !undecided.is_empty() {
        return Err(CliError::budget(format!(
            "radical witness undecided for subsets {undecided:?}; raise UMBRELLA_NMAX"
        )));
    }
    let toric: Vec<Value> = generators
        .iter()
        .map(|b| {
            json!({
                "text": b.to_string(),
                "vector": b.vector().iter().map(Int::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    let marked: Vec<Value> = gb
        .generators
        .iter()
        .map(|g| {
            json!({
                "lead": g.lead.to_string(),
                "tail": g.tail.to_string(),
                "l_homogeneous": g.l_homogeneous,
            })
        })
        .collect();
    let initial_forms: Vec<String> = gb.initial_forms().iter().map(|f| f.to_string()).collect();
    let facet_checks: Vec<Value> = report
        .facet_checks
        .iter()
        .map(|c| json!({"facet": one_based(&c.facet), "pass": c.pass}))
        .collect();
    let failed_witnesses: Vec<Vec<usize>> = report
        .witness_checks
        .iter()
        .filter(|w| !w.pass)
        .map(|w| one_based(&w.subset))
        .collect();
    let mut payload = Map::new();
    payload.insert("toric_ideal".to_string(), json!(toric));
    payload.insert("generators".to_string(), json!(marked));
    payload.insert("initial_forms".to_string(), json!(initial_forms));
    payload.insert("reduced".to_string(), json!(gb.reduced));
    payload.insert(
        "verification".to_string(),
        json!({
            "pass": report.pass,
            "facet_checks": facet_checks,
            "witness_checks": {
                "total": report.witness_checks.len(),
                "failed": failed_witnesses,
            },
        }),
    );
    Ok(envelope("gb", input, payload))
}

/// `plot`: a deterministic SVG of a planar configuration.
pub fn cmd_plot(input: &InputSpec) -> Result<String, CliError> {
    let weights = input.require_weights()?.to_vec();
    render_svg(&input.matrix, &weights)
}

// ---------------------------------------------------------------------------
// SVG rendering (d = 2 only)
// ---------------------------------------------------------------------------

type Pt = (Rat, Rat);

fn dot(g: &Pt, p: &Pt) -> Rat {
    &g.0 * &p.0 + &g.1 * &p.1
}

fn cross(u: &Pt, v: &Pt) -> Rat {
    &u.0 * &v.1 - &u.1 * &v.0
}

/// Renders a rational as a fixed three-decimal string (half-up rounding);
/// pure integer arithmetic keeps the bytes deterministic.
fn fmt3(r: &Rat) -> String {
    let rounded: Int = (r * rat_int(1000) + rat(1, 2)).floor().to_integer();
    let sign = if rounded.is_negative() { "-" } else { "" };
    let abs = rounded.abs();
    let q = &abs / Int::from(1000);
    let rem = (&abs % Int::from(1000)).to_string();
    format!("{sign}{q}.{}{rem}", "0".repeat(3 - rem.len()))
}

/// One Sutherland–Hodgman pass: keeps the part of `poly` with g·x ≤ c.
fn clip_halfplane(poly: &[Pt], g: &Pt, c: &Rat) -> Vec<Pt> {
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let dp = dot(g, p);
        let dq = dot(g, q);
        let p_in = &dp <= c;
        let q_in = &dq <= c;
        if p_in {
            out.push(p.clone());
        }
        if p_in != q_in {
            let t = (c - &dp) / (&dq - &dp);
            out.push((&p.0 + &t * (&q.0 - &p.0), &p.1 + &t * (&q.1 - &p.1)));
        }
    }
    // Vertices on the clip line get emitted twice; drop the duplicates.
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Clips the ray base + t·dir (t ≥ 0) to the bounding box, returning the
/// exit point. The base must lie inside the box.
fn clip_ray(base: &Pt, dir: &Pt, box_planes: &[(Pt, Rat)]) -> Pt {
    let mut t_max: Option<Rat> = None;
    for (g, c) in box_planes {
        let slope = dot(g, dir);
        if slope.is_positive() {
            let t = (c - &dot(g, base)) / slope;
            if t_max.as_ref().is_none_or(|m| &t < m) {
                t_max = Some(t);
            }
        }
    }
    let t = t_max.expect("direction is nonzero, so some box side is exited");
    (&base.0 + &t * &dir.0, &base.1 + &t * &dir.1)
}

fn render_svg(a: &ToricMatrix, weights: &[Rat]) -> Result<String, CliError> {
    if a.dim() != 2 {
        return Err(CliError::validation(
            "plot-requires-d2",
            format!("plotting needs a 2-row matrix, got {} rows", a.dim()),
        ));
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(CliError::validation(
            "plot-weight-negative",
            "plotting needs nonnegative weights",
        ));
    }
    let facets = umbrella_facet_sets(a, weights)?;
    let n = a.num_columns();
    let zero = Rat::zero();
    let origin: Pt = (zero.clone(), zero.clone());
    let cols: Vec<Pt> = (0..n)
        .map(|j| {
            let c = a.column_rat(j);
            (c[0].clone(), c[1].clone())
        })
        .collect();
    let scaled: Vec<Option<Pt>> = (0..n)
        .map(|j| {
            weights[j]
                .is_positive()
                .then(|| (&cols[j].0 / &weights[j], &cols[j].1 / &weights[j]))
        })
        .collect();

    // Padded bounding box over the origin and every plotted point.
    let mut pts: Vec<Pt> = vec![origin.clone()];
    pts.extend(cols.iter().cloned());
    pts.extend(scaled.iter().flatten().cloned());
    let one = Rat::one();
    let min_x = pts.iter().map(|p| &p.0).min().unwrap() - &one;
    let max_x = pts.iter().map(|p| &p.0).max().unwrap() + &one;
    let min_y = pts.iter().map(|p| &p.1).min().unwrap() - &one;
    let max_y = pts.iter().map(|p| &p.1).max().unwrap() + &one;
    let box_planes: Vec<(Pt, Rat)> = vec![
        ((one.clone(), zero.clone()), max_x.clone()),
        ((-one.clone(), zero.clone()), -min_x.clone()),
        ((zero.clone(), one.clone()), max_y.clone()),
        ((zero.clone(), -one.clone()), -min_y.clone()),
    ];

    // The shaded region: the weighted hull, cut out of the box by its facet
    // half-planes h·x ≤ 1 and the two edges of the column cone.
    let mut poly: Vec<Pt> = vec![
        (min_x.clone(), min_y.clone()),
        (max_x.clone(), min_y.clone()),
        (max_x.clone(), max_y.clone()),
        (min_x.clone(), max_y.clone()),
    ];
    for h in facets.values() {
        let g = (h[0].clone(), h[1].clone());
        poly = clip_halfplane(&poly, &g, &one);
    }
    let ccw_extreme = cols
        .iter()
        .find(|c| cols.iter().all(|o| !cross(c, o).is_negative()))
        .expect("a pointed planar cone has extreme rays");
    let cw_extreme = cols
        .iter()
        .find(|c| cols.iter().all(|o| !cross(c, o).is_positive()))
        .expect("a pointed planar cone has extreme rays");
    poly = clip_halfplane(&poly, &(ccw_extreme.1.clone(), -ccw_extreme.0.clone()), &zero);
    poly = clip_halfplane(&poly, &(-cw_extreme.1.clone(), cw_extreme.0.clone()), &zero);

    // World → SVG: scale by 60, flip the y axis.
    let scale = rat_int(60);
    let to_svg = |p: &Pt| -> Pt { ((&p.0 - &min_x) * &scale, (&max_y - &p.1) * &scale) };
    let width = (&max_x - &min_x) * &scale;
    let height = (&max_y - &min_y) * &scale;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\">",
        fmt3(&width),
        fmt3(&height),
        fmt3(&width),
        fmt3(&height)
    );
    let _ = writeln!(svg, "<!-- gkz-umbrella {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        fmt3(&width),
        fmt3(&height)
    );

    // Integer lattice dots (skipped if the viewport is unreasonably large).
    let gx0 = min_x.ceil().to_integer();
    let gx1 = max_x.floor().to_integer();
    let gy0 = min_y.ceil().to_integer();
    let gy1 = max_y.floor().to_integer();
    let grid_count = (&gx1 - &gx0 + Int::one()) * (&gy1 - &gy0 + Int::one());
    if grid_count <= Int::from(2048) && grid_count.is_positive() {
        let (gx0, gx1) = (i64::try_from(&gx0).unwrap(), i64::try_from(&gx1).unwrap());
        let (gy0, gy1) = (i64::try_from(&gy0).unwrap(), i64::try_from(&gy1).unwrap());
        for x in gx0..=gx1 {
            for y in gy0..=gy1 {
                let (sx, sy) = to_svg(&(rat_int(x), rat_int(y)));
                let _ = writeln!(
                    svg,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"#d0d0d0\"/>",
                    fmt3(&sx),
                    fmt3(&sy)
                );
            }
        }
    }

    if poly.len() >= 3 {
        let points = poly
            .iter()
            .map(|p| {
                let (sx, sy) = to_svg(p);
                format!("{},{}", fmt3(&sx), fmt3(&sy))
            })
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(svg, "<polygon points=\"{points}\" fill=\"#bcd8f0\"/>");
    }

    // Thin dashed rays from the origin for zero-weight columns.
    for j in 0..n {
        if weights[j].is_zero() {
            let end = clip_ray(&origin, &cols[j], &box_planes);
            let (x1, y1) = to_svg(&origin);
            let (x2, y2) = to_svg(&end);
            let _ = writeln!(
                svg,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#777777\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
                fmt3(&x1), fmt3(&y1), fmt3(&x2), fmt3(&y2)
            );
        }
    }

    // Bold umbrella boundary: each facet contributes a segment through its
    // weighted points, extended along zero-weight directions.
    for members in facets.keys() {
        let mut finite: Vec<Pt> = members
            .iter()
            .filter_map(|&j| scaled[j].clone())
            .collect();
        finite.sort();
        finite.dedup();
        if finite.len() >= 2 {
            let points = finite
                .iter()
                .map(|p| {
                    let (sx, sy) = to_svg(p);
                    format!("{},{}", fmt3(&sx), fmt3(&sy))
                })
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                svg,
                "<polyline points=\"{points}\" fill=\"none\" stroke=\"black\" stroke-width=\"4\" stroke-linecap=\"round\"/>"
            );
        }
        for &j in members {
            if weights[j].is_zero() {
                let dir = &cols[j];
                let base = finite
                    .iter()
                    .max_by(|p, q| dot(p, dir).cmp(&dot(q, dir)))
                    .cloned()
                    .unwrap_or_else(|| origin.clone());
                let end = clip_ray(&base, dir, &box_planes);
                let (x1, y1) = to_svg(&base);
                let (x2, y2) = to_svg(&end);
                let _ = writeln!(
                    svg,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"4\" stroke-linecap=\"round\"/>",
                    fmt3(&x1), fmt3(&y1), fmt3(&x2), fmt3(&y2)
                );
            }
        }
    }

    // Origin, columns, and weighted points with labels.
    let (ox, oy) = to_svg(&origin);
    let _ = writeln!(
        svg,
        "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#555555\"/>",
        fmt3(&ox),
        fmt3(&oy)
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"16\">0</text>",
        fmt3(&(&ox + rat_int(8))),
        fmt3(&(&oy + rat_int(20)))
    );
    for (j, col) in cols.iter().enumerate() {
        let (sx, sy) = to_svg(col);
        let _ = writeln!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"4.5\" fill=\"black\"/>",
            fmt3(&sx),
            fmt3(&sy)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"16\">a{}</text>",
            fmt3(&(&sx + rat_int(8))),
            fmt3(&(&sy - rat_int(8))),
            j + 1
        );
    }
    for j in 0..n {
        if let Some(p) = &scaled[j] {
            if *p != cols[j] {
                let (sx, sy) = to_svg(p);
                let _ = writeln!(
                    svg,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"4.5\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>",
                    fmt3(&sx),
                    fmt3(&sy)
                );
                let _ = writeln!(
                    svg,
                    "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"16\">a{}'</text>",
                    fmt3(&(&sx + rat_int(8))),
                    fmt3(&(&sy - rat_int(8))),
                    j + 1
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Rendered output of one subcommand.
pub enum CmdOutput {
    Json(Value),
    Text(String),
}

impl CmdOutput {
    /// The exact bytes a successful command prints.
    pub fn render(&self) -> String {
        match self {
            CmdOutput::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("serializable report");
                s.push('\n');
                s
            }
            CmdOutput::Text(s) => s.clone(),
        }
    }
}

fn budget_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("UMBRELLA_NMAX") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::validation("bad-budget", format!("invalid UMBRELLA_NMAX {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn dispatch(cli: Cli) -> Result<(CmdOutput, Option<PathBuf>), CliError> {
    match cli.command {
        Command::Umbrella(args) => {
            let input = InputSpec::load(&args.matrix, args.weights.as_deref(), None, None)?;
            Ok((CmdOutput::Json(cmd_umbrella(&input)?), args.out))
        }
        Command::Slopes(args) => {
            let input = InputSpec::load(
                &args.matrix,
                None,
                args.v0.as_deref(),
                args.vinf.as_deref(),
            )?;
            Ok((CmdOutput::Json(cmd_slopes(&input)?), args.out))
        }
        Command::Cycle(args) => {
            let input =
                InputSpec::load(&args.common.matrix, args.common.weights.as_deref(), None, None)?;
            Ok((cmd_cycle(&input, args.format)?, args.common.out))
        }
        Command::Gb(args) => {
            let input = InputSpec::load(&args.matrix, args.weights.as_deref(), None, None)?;
            let budget = budget_from_env()?;
            Ok((CmdOutput::Json(cmd_gb(&input, budget)?), args.out))
        }
        Command::Plot(args) => {
            let input = InputSpec::load(&args.matrix, args.weights.as_deref(), None, None)?;
            Ok((CmdOutput::Text(cmd_plot(&input)?), args.out))
        }
    }
}

/// Parses arguments, runs the selected subcommand, prints the report to
/// stdout (or `--out`), and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok((output, out_path)) => {
            let rendered = output.render();
            match out_path {
                Some(path) => {
                    if let Err(e) = fs::write(&path, rendered) {
                        let err = CliError::validation(
                            "io-error",
                            format!("cannot write {}: {}", path.display(), e),
                        );
                        eprintln!("{}", err.to_json());
                        return err.code;
                    }
                    0
                }
                None => {
                    print!("{rendered}");
                    0
                }
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code
        }
    }
}
