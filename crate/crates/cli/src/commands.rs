use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use curvecount::catalog::{Catalog, SingularityType};
use curvecount::fit::{
    fit_nodes, threshold_scan, threshold_scan_quadric, FitProblem, FitResult, RowFilter, ScanReport,
};
use curvecount::germ::{Analyzer, GermPoly, InvariantReport};
use curvecount::series::{assemble_from_table, assemble_t, ATable, ChernPolynomial, ChernVector, Parts, SeriesJson};
use curvecount::severi::{
    floor_diagram_oracle, pencil_discriminant_oracle, Degree, EvalStats, PencilReport, SeveriEngine, SeveriError,
};
use serde::Serialize;

use crate::args::{Cli, Command, FitCommand, FitData, GermCommand, Global, SeriesCommand, SeveriCommand, Surface};
use crate::failure::Failure;

pub const OUTPUT_FORMAT: &str = "curvecount-cli";
pub const OUTPUT_VERSION: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    format: &'static str,
    version: u32,
    command: &'a str,
    result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<EvalStats>,
}

/// Rendered output of one command: JSON payload plus a plain-text table.
struct Report<T: Serialize> {
    command: &'static str,
    result: T,
    table: String,
    stats: Option<EvalStats>,
}

impl<T: Serialize> Report<T> {
    fn render(self, json: bool) -> Result<String, Failure> {
        if !json {
            let mut table = self.table.trim_end().to_string();
            if let Some(s) = self.stats {
                let _ =
                    write!(table, "\nstats: {} evaluations, {} entries, {} loaded", s.evaluations, s.entries, s.loaded);
            }
            return Ok(table);
        }
        let envelope = Envelope {
            format: OUTPUT_FORMAT,
            version: OUTPUT_VERSION,
            command: self.command,
            result: self.result,
            stats: self.stats,
        };
        serde_json::to_string_pretty(&envelope).map_err(|e| Failure::inconsistent(e.to_string()))
    }
}

pub fn run(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Germ(GermCommand::Analyze { expr, k }) => germ_analyze(g, expr, *k)?.render(g.json),
        Command::Germ(GermCommand::Catalog { labels }) => germ_catalog(labels)?.render(g.json),
        Command::Severi(cmd) => with_engine(g, |engine| severi(g, engine, cmd)),
        Command::Fit(FitCommand::Nodes { data }) => with_engine(g, |engine| fit_report(g, engine, data)),
        Command::Fit(FitCommand::Scan { r, surface, range, data }) => {
            with_engine(g, |engine| scan_report(g, engine, *r, *surface, range.clone(), data))
        }
        Command::Series(SeriesCommand::Eval { a_table, parts, chern }) => {
            series_eval(a_table, parts, chern)?.render(g.json)
        }
        Command::Series(SeriesCommand::Assemble { a_table, truncation }) => {
            series_assemble(a_table, *truncation)?.render(g.json)
        }
    }
}

/// Runs a Severi-backed command with the cache loaded before and saved after.
fn with_engine<F>(g: &Global, body: F) -> Result<String, Failure>
where
    F: FnOnce(&SeveriEngine) -> Result<String, Failure>,
{
    let engine = SeveriEngine::with_ceiling(g.ceiling);
    if let Some(path) = &g.cache {
        if path.exists() {
            engine.store().load_file(path)?;
        }
    }
    let out = body(&engine)?;
    if let Some(path) = &g.cache {
        engine.store().save_file(path)?;
    }
    Ok(out)
}

fn germ_analyze(g: &Global, expr: &str, k: Option<u32>) -> Result<Report<InvariantReport>, Failure> {
    let f: GermPoly = expr.parse()?;
    let report = Analyzer::with_ceiling(g.jet_ceiling).analyze(&f, k)?;
    let mut t = String::new();
    let _ = writeln!(t, "germ               {}", report.germ);
    let _ = writeln!(t, "multiplicity       {}", report.multiplicity);
    let _ = writeln!(t, "milnor (mu)        {}", report.milnor);
    let _ = writeln!(t, "tjurina (tau)      {}", report.tjurina);
    let (lo, hi) = report.determinacy_window;
    let _ = writeln!(t, "determinacy        ({lo}, {hi})");
    let _ = writeln!(t, "k used             {}", report.k_used);
    for (kk, n) in &report.scheme_length_at {
        let _ = writeln!(t, "N at k={kk:<11} {n}");
    }
    let _ = writeln!(t, "orbit tangent dim  {}", report.orbit_tangent_dim);
    let _ = writeln!(t, "dim S0             {}", report.dim_s0);
    let _ = writeln!(t, "dim S0 = N - tau   {}", report.dim_s0_identity_holds);
    Ok(Report { command: "germ analyze", result: report, table: t, stats: None })
}

fn germ_catalog(labels: &[String]) -> Result<Report<Vec<SingularityType>>, Failure> {
    let catalog = Catalog::builtin();
    let entries: Vec<SingularityType> = if labels.is_empty() {
        catalog.entries().to_vec()
    } else {
        labels.iter().map(|l| catalog.lookup(l).cloned()).collect::<Result<_, _>>()?
    };
    let mut t = format!(
        "{:<18} {:<12} {:>3} {:>3} {:>3} {:>3} {:>5}  normal form\n",
        "label", "flavor", "k", "mu", "tau", "N", "codim"
    );
    for e in &entries {
        let _ = writeln!(
            t,
            "{:<18} {:<12} {:>3} {:>3} {:>3} {:>3} {:>5}  {}",
            e.label,
            e.flavor.to_string(),
            e.k_used,
            e.milnor,
            e.tjurina,
            e.n,
            e.codim,
            e.normal_form
        );
    }
    Ok(Report { command: "germ catalog", result: entries, table: t, stats: None })
}

#[derive(Serialize)]
struct SeveriResult {
    surface: &'static str,
    degree: Degree,
    nodes: u32,
    points: u32,
    /// Decimal string; counts outgrow JSON numbers.
    count: String,
}

fn severi_value(engine: &SeveriEngine, degree: Degree, nodes: u32) -> Result<SeveriResult, Failure> {
    let count = engine.severi(degree, nodes)?;
    Ok(SeveriResult {
        surface: degree.surface_name(),
        degree,
        nodes,
        points: degree.system_dim() - nodes,
        count: count.to_string(),
    })
}

fn severi_table(r: &SeveriResult) -> String {
    format!(
        "{} curves of degree {} with {} nodes through {} points: {}",
        r.surface, r.degree, r.nodes, r.points, r.count
    )
}

#[derive(Serialize)]
struct OracleResult {
    surface: &'static str,
    degree: Degree,
    nodes: u32,
    recursion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    floor_diagrams: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pencil: Option<PencilReport>,
    agree: bool,
}

fn oracle_degree(surface: Surface, d: Option<u32>, a: Option<u32>, b: Option<u32>) -> Result<Degree, Failure> {
    match (surface, d, a, b) {
        (Surface::P2, Some(d), None, None) => Ok(Degree::Plane(d)),
        (Surface::P1xp1, None, Some(a), Some(b)) => Ok(Degree::Quadric(a, b)),
        (Surface::P2, ..) => Err(Failure::input("the plane needs -d and no bidegree")),
        (Surface::P1xp1, ..) => Err(Failure::input("P1xP1 needs -a and -b and no -d")),
    }
}

fn oracle(g: &Global, engine: &SeveriEngine, degree: Degree, nodes: u32) -> Result<OracleResult, Failure> {
    let recursion = engine.severi(degree, nodes)?;
    let floor = match degree {
        Degree::Plane(d) => match floor_diagram_oracle(d, nodes) {
            Ok(v) => Some(v),
            Err(SeveriError::OracleRange { .. }) => None,
            Err(e) => return Err(e.into()),
        },
        Degree::Quadric(..) => None,
    };
    let pencil = if nodes == 1 {
        match pencil_discriminant_oracle(degree, g.seed) {
            Ok(report) => Some(report),
            Err(SeveriError::OracleRange { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    if floor.is_none() && pencil.is_none() {
        return Err(SeveriError::OracleRange {
            supported:
                "floor diagrams: plane d <= 6, delta <= 4; pencils: one node, plane d <= 5 or bidegree up to (3, 3)"
                    .into(),
            requested: format!("{} {degree}, {nodes} nodes", degree.surface_name()),
        }
        .into());
    }
    let agree =
        floor.as_ref().is_none_or(|v| *v == recursion) && pencil.as_ref().is_none_or(|p| recursion == p.count.into());
    Ok(OracleResult {
        surface: degree.surface_name(),
        degree,
        nodes,
        recursion: recursion.to_string(),
        floor_diagrams: floor.map(|v| v.to_string()),
        pencil,
        agree,
    })
}

fn severi(g: &Global, engine: &SeveriEngine, cmd: &SeveriCommand) -> Result<String, Failure> {
    match *cmd {
        SeveriCommand::P2 { d, nodes } => {
            let r = severi_value(engine, Degree::Plane(d), nodes)?;
            let table = severi_table(&r);
            Report { command: "severi p2", result: r, table, stats: Some(engine.stats()) }.render(g.json)
        }
        SeveriCommand::P1xp1 { a, b, nodes } => {
            let r = severi_value(engine, Degree::Quadric(a, b), nodes)?;
            let table = severi_table(&r);
            Report { command: "severi p1xp1", result: r, table, stats: Some(engine.stats()) }.render(g.json)
        }
        SeveriCommand::Oracle { surface, d, a, b, nodes } => {
            let degree = oracle_degree(surface, d, a, b)?;
            let r = oracle(g, engine, degree, nodes)?;
            let mut table =
                format!("{} {} with {} nodes\nrecursion          {}\n", r.surface, r.degree, r.nodes, r.recursion);
            if let Some(f) = &r.floor_diagrams {
                let _ = writeln!(table, "floor diagrams     {f}");
            }
            if let Some(p) = &r.pencil {
                let _ = writeln!(
                    table,
                    "pencil (seed {})   {} (samples {:?}, {} draws)",
                    p.seed, p.count, p.samples, p.attempts
                );
            }
            let _ = writeln!(table, "agree              {}", r.agree);
            let agree = r.agree;
            let text =
                Report { command: "severi oracle", result: r, table, stats: Some(engine.stats()) }.render(g.json)?;
            if agree {
                Ok(text)
            } else {
                println!("{text}");
                Err(Failure::inconsistent("recursion and oracle disagree"))
            }
        }
    }
}

fn quadric_square(range: &RangeInclusive<u32>) -> Vec<(u32, u32)> {
    range.clone().flat_map(|a| range.clone().map(move |b| (a, b))).collect()
}

fn run_fit(engine: &SeveriEngine, r_max: u32, data: &FitData) -> Result<FitResult, Failure> {
    let mut problem = FitProblem::new(r_max, data.plane.clone().collect(), quadric_square(&data.quadric));
    if data.all_rows {
        problem = problem.with_filter(RowFilter { plane_offset: 0, quadric_offset: 0 });
    }
    for c in problem.plane_degrees.iter().map(|&d| Degree::Plane(d)) {
        engine.check(c, 0)?;
    }
    for &(a, b) in &problem.quadric_bidegrees {
        engine.check(Degree::Quadric(a, b), 0)?;
    }
    Ok(fit_nodes(engine, &problem)?)
}

fn fit_table(fit: &FitResult) -> String {
    let mut t = String::new();
    for (r, a) in &fit.a {
        let _ = writeln!(t, "a{r} = {a}");
    }
    for (r, p) in &fit.t {
        let _ = writeln!(t, "T{r} = {p}");
    }
    for o in &fit.orders {
        let _ = writeln!(t, "order {}: {} rows, rank {}", o.r, o.equations, o.rank);
    }
    let _ = writeln!(t, "consistent = {}", fit.residual_consistent);
    t
}

fn fit_report(g: &Global, engine: &SeveriEngine, data: &FitData) -> Result<String, Failure> {
    let fit = run_fit(engine, g.max_r, data)?;
    let table = fit_table(&fit);
    Report { command: "fit nodes", result: fit.to_json(), table, stats: Some(engine.stats()) }.render(g.json)
}

fn scan_report(
    g: &Global,
    engine: &SeveriEngine,
    r: u32,
    surface: Surface,
    range: RangeInclusive<u32>,
    data: &FitData,
) -> Result<String, Failure> {
    let fit = run_fit(engine, g.max_r.max(r), data)?;
    let hi = *range.end();
    let probe = match surface {
        Surface::P2 => Degree::Plane(hi),
        Surface::P1xp1 => Degree::Quadric(hi, hi),
    };
    engine.check(probe, 0)?;
    let scan: ScanReport = match surface {
        Surface::P2 => threshold_scan(engine, &fit, r, range)?,
        Surface::P1xp1 => threshold_scan_quadric(engine, &fit, r, range)?,
    };
    let mut table = format!("T{r} = {}\n", fit.t[&r]);
    for row in &scan.rows {
        let mark = if row.agrees { "=" } else { "!=" };
        let _ = writeln!(table, "{:<8} severi {} {mark} T {}", row.degree.to_string(), row.severi, row.predicted);
    }
    let _ = writeln!(table, "threshold {}", scan.threshold);
    Report { command: "fit scan", result: scan, table, stats: Some(engine.stats()) }.render(g.json)
}

/// Reads an a-table file: a bare `{"a_table": [...]}` object or the JSON
/// output of `fit nodes`, whose `result` carries the table.
fn read_table(path: &Path) -> Result<BTreeMap<Parts, ChernPolynomial>, Failure> {
    let bad = |e: &dyn std::fmt::Display| Failure::input(format!("{}: {e}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| bad(&e))?;
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(&e))?;
    if value.get("a_table").is_none() {
        if let Some(inner) = value.get_mut("result").map(serde_json::Value::take) {
            value = inner;
        }
    }
    let table: ATable = serde_json::from_value(value).map_err(|e| bad(&e))?;
    Ok(table.to_map())
}

#[derive(Serialize)]
struct EvalResult {
    parts: Parts,
    chern: ChernVector,
    value: String,
    integral: bool,
}

fn series_eval(path: &Path, parts: &str, chern: &str) -> Result<Report<EvalResult>, Failure> {
    let table = read_table(path)?;
    let parts: Parts = parts.parse()?;
    let chern: ChernVector = chern.parse()?;
    let value = assemble_from_table(&table, &chern, &parts)?;
    let table_text = format!("{parts} at {chern}: {value}");
    let result = EvalResult { integral: value.is_integer(), value: value.to_string(), parts, chern };
    Ok(Report { command: "series eval", result, table: table_text, stats: None })
}

fn series_assemble(path: &Path, truncation: u32) -> Result<Report<SeriesJson>, Failure> {
    let table = read_table(path)?;
    let catalog = Catalog::builtin();
    let mut weights = BTreeMap::new();
    for label in table.keys().flat_map(|p| p.labels()) {
        weights.insert(label.clone(), catalog.lookup(label)?.codim);
    }
    let series = assemble_t(&table, &weights, truncation)?;
    let mut t = String::new();
    for (parts, poly) in series.terms() {
        let shown = if parts.is_empty() { "1".to_string() } else { parts.to_string() };
        let _ = writeln!(t, "{shown:<24} {poly}");
    }
    Ok(Report { command: "series assemble", result: series.to_json(), table: t, stats: None })
}
