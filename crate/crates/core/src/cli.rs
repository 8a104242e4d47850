//! Command implementations behind the `posettop` binary.
//!
//! Every command returns a report that renders either as an aligned text
//! table or as JSON carrying `"schema": 1`. Reports depend only on the input,
//! the seed and the caps, never on the thread count.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::builtins::builtin;
use crate::comparison::Comparison;
use crate::cubical::{CubicalComplex, DEFAULT_CUBE_CAP};
use crate::error::{Error, Result};
use crate::homotopy::{null_homotopy_search, Hurewicz, Loop, SearchOutcome};
use crate::linalg::{ClassCoordinates, HomologyGroup};
use crate::poset::{random_poset_with, rng_from_seed, ElementId, Poset};
use crate::simplicial::SimplicialComplex;

pub const SCHEMA: u32 = 1;
pub const DEFAULT_MAX_DIM: usize = 2;
pub const DEFAULT_RADIUS_CAP: usize = 3;
pub const DEFAULT_STEP_CAP: usize = 100_000;
pub const DEFAULT_SHRINK_BUDGET: usize = 200;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const CAP: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

/// Exit code for an error: 2 for malformed input (posets, loops, names,
/// arguments), 3 for an exceeded cap, 4 for a failed internal check.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Json(_)
        | Error::UnknownLabel(_)
        | Error::DuplicateLabel(_)
        | Error::CycleDetected(_)
        | Error::EmptyPoset
        | Error::UnknownBuiltin(_)
        | Error::InvalidLoop(_)
        | Error::BasepointMismatch => exit::PARSE,
        Error::CapExceeded { .. } | Error::BudgetExhausted(_) => exit::CAP,
        Error::InternalInvariantViolation(_) | Error::NotAComplex(_) => exit::INTERNAL,
        _ => exit::OTHER,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format `{s}` (expected text or json)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Builtin(String),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: Option<Source>,
    pub max_dim: usize,
    pub cap: usize,
    pub format: Format,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            source: None,
            max_dim: DEFAULT_MAX_DIM,
            cap: DEFAULT_CUBE_CAP,
            format: Format::Text,
            seed: 0,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn builtin(name: &str) -> RunConfig {
        RunConfig { source: Some(Source::Builtin(name.to_string())), ..RunConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            return Err(Error::Parse("--cap must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Parse("--threads must be positive".into()));
        }
        Ok(())
    }

    pub fn source_name(&self) -> String {
        match &self.source {
            Some(Source::File(p)) => p.display().to_string(),
            Some(Source::Builtin(name)) => format!("builtin:{name}"),
            None => "-".into(),
        }
    }

    pub fn load(&self) -> Result<Poset> {
        self.validate()?;
        match &self.source {
            Some(Source::File(p)) => load_poset_file(p),
            Some(Source::Builtin(name)) => builtin(name),
            None => Err(Error::Parse("no input: pass --input FILE or --builtin NAME".into())),
        }
    }
}

/// Reads a poset in the JSON format, or the `x < y` text format when the
/// content does not start with `{`.
pub fn load_poset_file(path: &Path) -> Result<Poset> {
    let s = fs::read_to_string(path)?;
    if s.trim_start().starts_with('{') {
        Poset::from_json(&s)
    } else {
        Poset::from_text(&s)
    }
}

pub trait Report: Serialize {
    fn to_text(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn key_values(rows: &[(&str, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}

fn torsion_strings(g: &HomologyGroup) -> Vec<String> {
    g.torsion.iter().map(BigInt::to_string).collect()
}

fn torsion_cell(t: &Option<Vec<String>>) -> String {
    match t {
        None => String::new(),
        Some(t) if t.is_empty() => "-".into(),
        Some(t) => t.join(","),
    }
}

fn opt_cell(b: Option<usize>) -> String {
    b.map_or(String::new(), |b| b.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Cube,
    Simpl,
    Both,
}

impl std::str::FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theory> {
        match s {
            "cube" => Ok(Theory::Cube),
            "simpl" => Ok(Theory::Simpl),
            "both" => Ok(Theory::Both),
            _ => Err(Error::Parse(format!("unknown theory `{s}` (expected cube, simpl or both)"))),
        }
    }
}

/// One row of a homology or comparison table. Missing theories are omitted
/// from JSON and left blank in text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_cube: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_cube: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_simpl: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_simpl: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi_star: Option<String>,
}

impl DegreeRow {
    fn new(degree: usize, cube: Option<&HomologyGroup>, simpl: Option<&HomologyGroup>) -> DegreeRow {
        DegreeRow {
            degree,
            betti_cube: cube.map(|g| g.betti),
            torsion_cube: cube.map(torsion_strings),
            betti_simpl: simpl.map(|g| g.betti),
            torsion_simpl: simpl.map(torsion_strings),
            psi_star: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub schema: u32,
    pub input: String,
    pub theory: String,
    pub max_dim: usize,
    pub degrees: Vec<DegreeRow>,
}

impl Report for HomologyReport {
    fn to_text(&self) -> String {
        let cube = self.theory != "simpl";
        let simpl = self.theory != "cube";
        let mut headers = vec!["degree"];
        if cube {
            headers.extend(["betti_cube", "torsion_cube"]);
        }
        if simpl {
            headers.extend(["betti_simpl", "torsion_simpl"]);
        }
        let rows: Vec<Vec<String>> = self
            .degrees
            .iter()
            .map(|r| {
                let mut row = vec![r.degree.to_string()];
                if cube {
                    row.extend([opt_cell(r.betti_cube), torsion_cell(&r.torsion_cube)]);
                }
                if simpl {
                    row.extend([opt_cell(r.betti_simpl), torsion_cell(&r.torsion_simpl)]);
                }
                row
            })
            .collect();
        format!("# {} homology of {}\n", self.theory, self.input) + &table(&headers, &rows)
    }
}

/// `H_0 .. H_max_dim` of the order complex.
pub fn simplicial_groups(poset: &Poset, max_dim: usize) -> Result<Vec<HomologyGroup>> {
    let k = SimplicialComplex::order_complex(poset)?;
    (0..=max_dim).map(|n| k.homology(n)).collect()
}

/// `H_0 .. H_max_dim` of the cube complex.
pub fn cube_groups(poset: &Poset, max_dim: usize, cap: usize) -> Result<Vec<HomologyGroup>> {
    let cx = CubicalComplex::build(poset, max_dim + 1, cap)?;
    (0..=max_dim).map(|n| cx.homology(n)).collect()
}

pub fn cmd_homology(config: &RunConfig, theory: Theory) -> Result<HomologyReport> {
    let poset = config.load()?;
    let t = Instant::now();
    let cube = match theory {
        Theory::Simpl => None,
        _ => Some(cube_groups(&poset, config.max_dim, config.cap)?),
    };
    let simpl = match theory {
        Theory::Cube => None,
        _ => Some(simplicial_groups(&poset, config.max_dim)?),
    };
    log::info!("homology of {} in {:?}", config.source_name(), t.elapsed());
    let degrees = (0..=config.max_dim)
        .map(|n| DegreeRow::new(n, cube.as_ref().map(|g| &g[n]), simpl.as_ref().map(|g| &g[n])))
        .collect();
    let theory = match theory {
        Theory::Cube => "cube",
        Theory::Simpl => "simpl",
        Theory::Both => "both",
    };
    Ok(HomologyReport {
        schema: SCHEMA,
        input: config.source_name(),
        theory: theory.into(),
        max_dim: config.max_dim,
        degrees,
    })
}

/// Writes `d_n` of both complexes for `n = 0..=max_dim + 1` as MatrixMarket
/// files `cube_d{n}.mtx` and `simpl_d{n}.mtx`.
pub fn dump_boundaries(config: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let poset = config.load()?;
    let cx = CubicalComplex::build(&poset, config.max_dim + 1, config.cap)?;
    let k = SimplicialComplex::order_complex(&poset)?;
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for n in 0..=config.max_dim + 1 {
        for (name, m) in [("cube", cx.boundary_matrix(n)?), ("simpl", k.boundary_matrix(n))] {
            let path = dir.join(format!("{name}_d{n}.mtx"));
            fs::write(&path, m.to_matrix_market())?;
            written.push(path);
        }
    }
    Ok(written)
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub schema: u32,
    pub input: String,
    pub max_dim: usize,
    pub degrees: Vec<DegreeRow>,
}

impl Report for CompareReport {
    fn to_text(&self) -> String {
        let headers = ["degree", "betti_cube", "torsion_cube", "betti_simpl", "torsion_simpl", "psi_star"];
        let rows: Vec<Vec<String>> = self
            .degrees
            .iter()
            .map(|r| {
                vec![
                    r.degree.to_string(),
                    opt_cell(r.betti_cube),
                    torsion_cell(&r.torsion_cube),
                    opt_cell(r.betti_simpl),
                    torsion_cell(&r.torsion_simpl),
                    r.psi_star.clone().unwrap_or_default(),
                ]
            })
            .collect();
        format!("# psi_* for {}\n", self.input) + &table(&headers, &rows)
    }
}

pub fn cmd_compare(config: &RunConfig) -> Result<CompareReport> {
    let poset = config.load()?;
    let t = Instant::now();
    let cmp = Comparison::new(&poset, config.max_dim + 1, config.cap)?;
    let mut degrees = Vec::new();
    for p in 0..=config.max_dim {
        let m = cmp.induced_map(p)?;
        let mut row = DegreeRow::new(p, Some(&m.cube), Some(&m.simpl));
        row.psi_star = Some(m.status().to_string());
        degrees.push(row);
    }
    log::info!("comparison for {} in {:?}", config.source_name(), t.elapsed());
    Ok(CompareReport { schema: SCHEMA, input: config.source_name(), max_dim: config.max_dim, degrees })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopAction {
    Validate,
    Hurewicz,
    Reduce,
}

impl std::str::FromStr for LoopAction {
    type Err = Error;

    fn from_str(s: &str) -> Result<LoopAction> {
        match s {
            "validate" => Ok(LoopAction::Validate),
            "hurewicz" => Ok(LoopAction::Hurewicz),
            "reduce" => Ok(LoopAction::Reduce),
            _ => Err(Error::Parse(format!("unknown loop action `{s}` (expected validate, hurewicz or reduce)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoopArgs {
    pub action: LoopAction,
    /// a literal such as `b > d < a > c < b`, or the JSON loop form
    pub literal: String,
    pub basepoint: Option<String>,
    /// defaults to the larger of 3 and the loop's radius
    pub radius_cap: Option<usize>,
    pub step_cap: usize,
}

impl LoopArgs {
    pub fn new(action: LoopAction, literal: &str) -> LoopArgs {
        LoopArgs { action, literal: literal.to_string(), basepoint: None, radius_cap: None, step_cap: DEFAULT_STEP_CAP }
    }
}

pub fn parse_loop(poset: &Poset, literal: &str, basepoint: Option<&str>) -> Result<Loop> {
    if literal.trim_start().starts_with('{') {
        if basepoint.is_some() {
            return Err(Error::Parse("--basepoint is given inside the JSON loop form".into()));
        }
        Loop::from_json(poset, literal)
    } else {
        Loop::parse(poset, literal, basepoint)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "action", rename_all = "lowercase")]
pub enum LoopReport {
    Validate {
        schema: u32,
        input: String,
        #[serde(rename = "loop")]
        display: String,
        basepoint: String,
        radius: usize,
        valid: bool,
        violations: Vec<String>,
    },
    Hurewicz {
        schema: u32,
        input: String,
        #[serde(rename = "loop")]
        display: String,
        h1_cube: String,
        chain: Value,
        chain_text: String,
        class_free: Vec<String>,
        /// `[residue, order]` pairs
        class_torsion: Vec<[String; 2]>,
        is_zero: bool,
    },
    Reduce {
        schema: u32,
        input: String,
        #[serde(rename = "loop")]
        display: String,
        radius_cap: usize,
        step_cap: usize,
        found: bool,
        certificate: Vec<String>,
        explored: Option<usize>,
        exhausted: Option<bool>,
    },
}

fn class_text(c: &ClassCoordinates) -> String {
    let mut parts: Vec<String> = c.free.iter().map(BigInt::to_string).collect();
    parts.extend(c.torsion.iter().map(|(r, t)| format!("{r} mod {t}")));
    format!("[{}]", parts.join(", "))
}

impl Report for LoopReport {
    fn to_text(&self) -> String {
        match self {
            LoopReport::Validate { display, basepoint, radius, valid, violations, .. } => {
                let mut out = key_values(&[
                    ("loop", display.clone()),
                    ("basepoint", basepoint.clone()),
                    ("radius", radius.to_string()),
                    ("valid", valid.to_string()),
                ]);
                for v in violations {
                    out += &format!("violation  {v}\n");
                }
                out
            }
            LoopReport::Hurewicz { display, h1_cube, chain_text, class_free, class_torsion, .. } => {
                let class = ClassCoordinates {
                    free: class_free.iter().map(|s| s.parse().expect("decimal")).collect(),
                    torsion: class_torsion
                        .iter()
                        .map(|[r, t]| (r.parse().expect("decimal"), t.parse().expect("decimal")))
                        .collect(),
                };
                key_values(&[
                    ("loop", display.clone()),
                    ("H_1^Cube", h1_cube.clone()),
                    ("phi(T f)", if chain_text.is_empty() { "0".into() } else { chain_text.clone() }),
                    ("class", class_text(&class)),
                ])
            }
            LoopReport::Reduce { display, radius_cap, step_cap, found, certificate, explored, exhausted, .. } => {
                let mut rows = vec![
                    ("loop", display.clone()),
                    ("radius_cap", radius_cap.to_string()),
                    ("step_cap", step_cap.to_string()),
                    ("found", found.to_string()),
                ];
                if let Some(e) = explored {
                    rows.push(("explored", e.to_string()));
                }
                if let Some(e) = exhausted {
                    rows.push(("exhausted", e.to_string()));
                }
                let mut out = key_values(&rows);
                for (i, row) in certificate.iter().enumerate() {
                    out += &format!("row {i}  {row}\n");
                }
                out
            }
        }
    }
}

pub fn cmd_loop(config: &RunConfig, args: &LoopArgs) -> Result<LoopReport> {
    let poset = config.load()?;
    let f = parse_loop(&poset, &args.literal, args.basepoint.as_deref())?;
    let input = config.source_name();
    let display = f.display(&poset);
    match args.action {
        LoopAction::Validate => {
            let r = f.validate(&poset);
            Ok(LoopReport::Validate {
                schema: SCHEMA,
                input,
                display,
                basepoint: poset.label(f.basepoint()).to_string(),
                radius: f.radius(),
                valid: r.valid,
                violations: r.violations,
            })
        }
        LoopAction::Hurewicz => {
            let h = Hurewicz::new(&poset, config.cap)?;
            let image = h.apply(&f)?;
            Ok(LoopReport::Hurewicz {
                schema: SCHEMA,
                input,
                display,
                h1_cube: h.group().to_string(),
                chain: image.chain.to_json(&poset),
                chain_text: image.chain.display(&poset),
                class_free: image.class.free.iter().map(BigInt::to_string).collect(),
                class_torsion: image.class.torsion.iter().map(|(r, t)| [r.to_string(), t.to_string()]).collect(),
                is_zero: image.class.is_zero(),
            })
        }
        LoopAction::Reduce => {
            let radius_cap = args.radius_cap.unwrap_or(DEFAULT_RADIUS_CAP.max(f.radius()));
            let t = Instant::now();
            let outcome = null_homotopy_search(&poset, &f, radius_cap, args.step_cap)?;
            log::info!("null-homotopy search in {:?}", t.elapsed());
            let (found, certificate, explored, exhausted) = match outcome {
                SearchOutcome::Found(cert) => (true, cert.display(&poset), None, None),
                SearchOutcome::NotFoundWithinBounds { explored, exhausted } => {
                    (false, Vec::new(), Some(explored), Some(exhausted))
                }
            };
            Ok(LoopReport::Reduce {
                schema: SCHEMA,
                input,
                display,
                radius_cap,
                step_cap: args.step_cap,
                found,
                certificate,
                explored,
                exhausted,
            })
        }
    }
}

#[derive(Clone, Debug)]
pub struct MineArgs {
    pub trials: usize,
    pub size: usize,
    pub density: f64,
    /// builtin posets inserted among the trials
    pub plant: Vec<String>,
    pub shrink_budget: usize,
}

impl Default for MineArgs {
    fn default() -> Self {
        MineArgs { trials: 100, size: 7, density: 0.3, plant: Vec::new(), shrink_budget: DEFAULT_SHRINK_BUDGET }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub trial: usize,
    pub origin: String,
    pub degrees: Vec<usize>,
    pub cube: Vec<String>,
    pub simpl: Vec<String>,
    pub poset: Value,
    pub shrunk: Value,
    pub shrunk_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MineReport {
    pub schema: u32,
    pub seed: u64,
    pub trials: usize,
    pub size: usize,
    pub density: f64,
    pub max_dim: usize,
    pub checked: usize,
    pub skipped: usize,
    pub findings: Vec<Finding>,
    /// planted posets with their outcome, `mismatch` or `no mismatch`
    pub planted: Vec<(String, String)>,
}

impl Report for MineReport {
    fn to_text(&self) -> String {
        let mut out = key_values(&[
            ("seed", self.seed.to_string()),
            ("trials", self.trials.to_string()),
            ("size", self.size.to_string()),
            ("density", self.density.to_string()),
            ("max_dim", self.max_dim.to_string()),
            ("checked", self.checked.to_string()),
            ("skipped", self.skipped.to_string()),
            ("findings", self.findings.len().to_string()),
        ]);
        for (name, outcome) in &self.planted {
            out += &format!("planted {name}: {outcome}\n");
        }
        if !self.findings.is_empty() {
            let rows: Vec<Vec<String>> = self
                .findings
                .iter()
                .map(|f| {
                    vec![
                        f.trial.to_string(),
                        f.origin.clone(),
                        f.degrees.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                        f.cube.join(" | "),
                        f.simpl.join(" | "),
                        f.shrunk_size.to_string(),
                    ]
                })
                .collect();
            out += &table(&["trial", "origin", "degrees", "cube", "simpl", "shrunk_size"], &rows);
        }
        out
    }
}

/// Disagreeing degrees, then the cube and simplicial groups.
type Mismatch = (Vec<usize>, Vec<HomologyGroup>, Vec<HomologyGroup>);

/// `None` when a cap was hit.
fn mismatch(poset: &Poset, max_dim: usize, cap: usize) -> Result<Option<Mismatch>> {
    let cube = match cube_groups(poset, max_dim, cap) {
        Err(Error::CapExceeded { .. }) => return Ok(None),
        r => r?,
    };
    let simpl = simplicial_groups(poset, max_dim)?;
    let degrees = (0..=max_dim).filter(|&n| cube[n] != simpl[n]).collect();
    Ok(Some((degrees, cube, simpl)))
}

/// Beat-point removal, then greedy single-element deletion keeping some
/// mismatch, with at most `budget` re-checks.
fn shrink(poset: &Poset, max_dim: usize, cap: usize, budget: usize) -> Result<Poset> {
    let still = |p: &Poset| -> Result<bool> {
        Ok(!p.is_empty() && matches!(mismatch(p, max_dim, cap)?, Some((d, _, _)) if !d.is_empty()))
    };
    let mut current = poset.clone();
    let mut checks = 0;
    let reduced = poset.remove_beat_points();
    if reduced.len() < current.len() {
        checks += 1;
        if still(&reduced)? {
            current = reduced;
        }
    }
    let mut i = 0;
    while i < current.len() && checks < budget {
        let candidate = current.without(ElementId(i));
        checks += 1;
        if still(&candidate)? {
            current = candidate;
        } else {
            i += 1;
        }
    }
    Ok(current)
}

fn poset_value(p: &Poset) -> Value {
    serde_json::from_str(&p.to_json()).expect("poset json")
}

/// Trial `t` draws from ChaCha8 stream `t` of the seed, so each trial is
/// independent of how the others are scheduled.
pub fn trial_poset(seed: u64, trial: usize, size: usize, density: f64) -> Poset {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(trial as u64);
    random_poset_with(size, density, &mut rng)
}

pub fn cmd_mine(config: &RunConfig, args: &MineArgs) -> Result<MineReport> {
    config.validate()?;
    if args.trials == 0 {
        return Err(Error::Parse("--trials must be at least 1".into()));
    }
    // planted posets take the indices after the random trials
    let mut jobs: Vec<(usize, String, Poset)> = (0..args.trials)
        .map(|t| (t, "random".to_string(), trial_poset(config.seed, t, args.size, args.density)))
        .collect();
    for (k, name) in args.plant.iter().enumerate() {
        jobs.push((args.trials + k, format!("planted:{name}"), builtin(name)?));
    }
    let results: Vec<Result<Option<Finding>>> = jobs
        .par_iter()
        .map(|(trial, origin, poset)| {
            let Some((degrees, cube, simpl)) = mismatch(poset, config.max_dim, config.cap)? else {
                return Ok(None);
            };
            let text = |g: &[HomologyGroup]| g.iter().map(HomologyGroup::to_string).collect::<Vec<_>>();
            let shrunk = if degrees.is_empty() {
                poset.clone()
            } else {
                shrink(poset, config.max_dim, config.cap, args.shrink_budget)?
            };
            Ok(Some(Finding {
                trial: *trial,
                origin: origin.clone(),
                degrees,
                cube: text(&cube),
                simpl: text(&simpl),
                poset: poset_value(poset),
                shrunk_size: shrunk.len(),
                shrunk: poset_value(&shrunk),
            }))
        })
        .collect();
    let mut checked = 0;
    let mut skipped = 0;
    let mut findings = Vec::new();
    let mut planted = Vec::new();
    for r in results {
        match r? {
            None => skipped += 1,
            Some(f) => {
                checked += 1;
                if let Some(name) = f.origin.strip_prefix("planted:") {
                    let outcome = if f.degrees.is_empty() { "no mismatch" } else { "mismatch" };
                    planted.push((name.to_string(), outcome.to_string()));
                }
                if !f.degrees.is_empty() {
                    findings.push(f);
                }
            }
        }
    }
    log::info!("mined {checked} posets, skipped {skipped}, {} findings", findings.len());
    Ok(MineReport {
        schema: SCHEMA,
        seed: config.seed,
        trials: args.trials,
        size: args.size,
        density: args.density,
        max_dim: config.max_dim,
        checked,
        skipped,
        findings,
        planted,
    })
}

/// The poset JSON of a builtin.
pub fn cmd_gen(name: &str) -> Result<String> {
    Ok(builtin(name)?.to_json() + "\n")
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Parse(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;

    fn cfg(name: &str) -> RunConfig {
        RunConfig::builtin(name)
    }

    #[test]
    fn homology_tables() {
        let mut c = cfg("circle4");
        c.max_dim = 1;
        let r = cmd_homology(&c, Theory::Both).unwrap();
        assert_eq!(r.degrees[1].betti_cube, Some(1));
        assert_eq!(r.degrees[1].betti_simpl, Some(1));
        let text = r.to_text();
        assert!(text.contains("degree  betti_cube  torsion_cube  betti_simpl  torsion_simpl"), "{text}");
        let j: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(j["schema"], 1);
        assert_eq!(j["degrees"][1]["torsion_cube"], json!([]));
        let r = cmd_homology(&cfg("chain3"), Theory::Cube).unwrap();
        assert!(r.degrees.iter().skip(1).all(|d| d.betti_cube == Some(0) && d.betti_simpl.is_none()));
    }

    #[test]
    fn compare_status() {
        let mut c = cfg("circle4");
        c.max_dim = 1;
        let r = cmd_compare(&c).unwrap();
        assert!(r.degrees.iter().all(|d| d.psi_star.as_deref() == Some("iso")));
    }

    #[test]
    fn loop_actions() {
        let c = cfg("circle4");
        let e = "b > d < a > c < b";
        let LoopReport::Hurewicz { class_free, is_zero, .. } =
            cmd_loop(&c, &LoopArgs::new(LoopAction::Hurewicz, e)).unwrap()
        else {
            panic!()
        };
        assert!(!is_zero);
        assert!(class_free == ["1"] || class_free == ["-1"]);
        let LoopReport::Reduce { found, certificate, .. } =
            cmd_loop(&c, &LoopArgs::new(LoopAction::Reduce, "b > c < a > c < b")).unwrap()
        else {
            panic!()
        };
        assert!(found);
        assert_eq!(certificate.len(), 3);
        let LoopReport::Validate { valid, .. } =
            cmd_loop(&c, &LoopArgs::new(LoopAction::Validate, "a > a < a")).unwrap()
        else {
            panic!()
        };
        assert!(valid);
        let err = cmd_loop(&c, &LoopArgs::new(LoopAction::Hurewicz, "b > d > a")).unwrap_err();
        assert_eq!(exit_code(&err), exit::PARSE);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::CapExceeded { dim: 1, cap: 1, partial: 2 }), exit::CAP);
        assert_eq!(exit_code(&Error::InternalInvariantViolation("x".into())), exit::INTERNAL);
        assert_eq!(exit_code(&builtin("nope").unwrap_err()), exit::PARSE);
        let mut c = cfg("qcube3");
        c.cap = 5;
        assert_eq!(exit_code(&cmd_homology(&c, Theory::Cube).unwrap_err()), exit::CAP);
    }

    #[test]
    fn mining_is_deterministic_across_threads() {
        let mut c = RunConfig { seed: 11, max_dim: 1, ..RunConfig::default() };
        let args = MineArgs { trials: 12, size: 6, plant: vec!["sphere6".into()], ..MineArgs::default() };
        let one = with_threads(Some(1), || cmd_mine(&c, &args)).unwrap().unwrap().render(Format::Json);
        c.threads = Some(4);
        let four = with_threads(Some(4), || cmd_mine(&c, &args)).unwrap().unwrap().render(Format::Json);
        assert_eq!(one, four);
        let chains = MineArgs { trials: 5, density: 1.0, ..MineArgs::default() };
        assert!(cmd_mine(&c, &chains).unwrap().findings.is_empty());
    }

    #[test]
    fn gen_round_trips() {
        for name in ["chain3", "circle4", "sphere6", "max5", "fence5", "qcube2"] {
            let p = Poset::from_json(&cmd_gen(name).unwrap()).unwrap();
            assert_eq!(p.to_json(), builtin(name).unwrap().to_json());
        }
    }
}
