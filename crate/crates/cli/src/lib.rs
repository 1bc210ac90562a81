//! The `toroidal` command line.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad arguments, unreadable
//! files, unknown catalog names), 2 when an input file is invalid or a tower
//! fails validation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use toroidal::catalog;
use toroidal::diagrams::Diagram;
use toroidal::knots::{GenusValue, KnotExpr};
use toroidal::report::Report;
use toroidal::towers::Tower;

/// Environment variable naming a directory of extra `*.json` towers.
pub const CATALOG_DIR_VAR: &str = "TOROIDAL_CATALOG_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "toroidal",
    version,
    about = "Knots, towers of solid tori and attractor obstructions"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of a knot expression such as "sum(torus(2,3); table(4_1))".
    #[command(subcommand)]
    Knot(KnotCmd),
    /// Invariants of a PD (`.pd`) or signed Gauss (`.gauss`) diagram file.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Towers read from JSON files.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Built-in example towers.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand, Debug)]
enum KnotCmd {
    Genus { expr: String },
    Alexander { expr: String },
}

#[derive(Subcommand, Debug)]
enum DiagramCmd {
    Alexander { file: PathBuf },
    Genus { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum TowerCmd {
    /// Validate a tower and run every classifier on it.
    Report { file: PathBuf },
    /// Only validate.
    Validate { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    /// Report one tower, or every tower when no name is given.
    /// `mask:<bits>` builds a connected-sum tower.
    Report {
        name: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Invalid(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) => m,
        }
    }
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Knot(cmd) => knot(cmd, cli.json),
        Command::Diagram(cmd) => diagram(cmd, cli.json),
        Command::Tower(cmd) => tower(cmd, cli.json),
        Command::Catalog(cmd) => catalog_cmd(cmd, cli.json),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serializes");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_knot(expr: &str) -> Result<KnotExpr, Failure> {
    expr.parse::<KnotExpr>()
        .and_then(|k| k.normalize())
        .map_err(|e| Failure::Usage(format!("knot expression: {e}")))
}

fn knot(cmd: &KnotCmd, as_json: bool) -> Result<String, Failure> {
    match cmd {
        KnotCmd::Genus { expr } => {
            let k = parse_knot(expr)?;
            let g = k.genus();
            if as_json {
                return Ok(pretty(&json!({
                    "knot": k.to_string(),
                    "genus": g.exact(),
                    "genus_lower": g.lower(),
                    "genus_upper": g.upper(),
                })));
            }
            Ok(match g {
                GenusValue::Exact(g) => format!("{g}\n"),
                GenusValue::Unknown { lower, upper: Some(u) } => format!("unknown ({lower} <= g <= {u})\n"),
                GenusValue::Unknown { lower, upper: None } => format!("unknown (g >= {lower})\n"),
            })
        }
        KnotCmd::Alexander { expr } => {
            let k = parse_knot(expr)?;
            let delta = k.alexander().map_err(|e| Failure::Invalid(e.to_string()))?;
            if as_json {
                return Ok(pretty(&json!({"knot": k.to_string(), "alexander": delta.to_string()})));
            }
            Ok(format!("{delta}\n"))
        }
    }
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    let text = read(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "gauss") {
        Diagram::parse_gauss(&text)
    } else {
        Diagram::parse_pd(&text)
    };
    parsed.map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn diagram(cmd: &DiagramCmd, as_json: bool) -> Result<String, Failure> {
    match cmd {
        DiagramCmd::Alexander { file } => {
            let d = load_diagram(file)?;
            let delta = d.alexander();
            if as_json {
                return Ok(pretty(
                    &json!({"crossings": d.crossing_count(), "alexander": delta.to_string()}),
                ));
            }
            Ok(format!("{delta}\n"))
        }
        DiagramCmd::Genus { file } => {
            let d = load_diagram(file)?;
            let (lower, upper) = d.genus_bounds().map_err(|e| Failure::Invalid(e.to_string()))?;
            if as_json {
                return Ok(pretty(&json!({
                    "crossings": d.crossing_count(),
                    "seifert_circles": d.seifert_circles(),
                    "genus_lower": lower,
                    "genus_upper": upper,
                    "genus": (lower == upper).then_some(lower),
                })));
            }
            Ok(if lower == upper {
                format!("{lower}\n")
            } else {
                format!("{lower} <= g <= {upper}\n")
            })
        }
    }
}

fn load_tower(path: &Path) -> Result<Tower, Failure> {
    let text = read(path)?;
    Tower::from_json(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn report_for(tower: Tower) -> Result<Report, Failure> {
    let name = tower.name.clone();
    let valid = tower
        .into_valid()
        .map_err(|r| Failure::Invalid(format!("tower '{name}' is invalid:\n{r}")))?;
    Ok(Report::new(&valid))
}

fn render(reports: &[Report], as_json: bool, single: bool) -> String {
    if as_json {
        if single {
            return reports[0].to_json();
        }
        return pretty(&Value::Array(reports.iter().map(Report::to_json_value).collect()));
    }
    reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
}

fn tower(cmd: &TowerCmd, as_json: bool) -> Result<String, Failure> {
    match cmd {
        TowerCmd::Report { file } => {
            let report = report_for(load_tower(file)?)?;
            Ok(render(&[report], as_json, true))
        }
        TowerCmd::Validate { file } => {
            let t = load_tower(file)?;
            let report = t.validate();
            if !report.is_ok() {
                return Err(Failure::Invalid(format!("tower '{}' is invalid:\n{report}", t.name)));
            }
            if as_json {
                return Ok(pretty(&json!({"name": t.name, "valid": true})));
            }
            Ok(format!("{}: OK\n", t.name))
        }
    }
}

/// Built-in towers, overridden or extended by `*.json` files in
/// `$TOROIDAL_CATALOG_DIR`.
fn full_catalog() -> Result<Vec<(String, String, Tower)>, Failure> {
    let mut entries: Vec<(String, String, Tower)> = catalog::entries()
        .into_iter()
        .map(|e| (e.name.to_string(), e.summary.to_string(), e.tower))
        .collect();
    let Some(dir) = std::env::var_os(CATALOG_DIR_VAR) else {
        return Ok(entries);
    };
    let dir = PathBuf::from(dir);
    let listing =
        std::fs::read_dir(&dir).map_err(|e| Failure::Usage(format!("{CATALOG_DIR_VAR}={}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut extra = BTreeMap::new();
    for path in files {
        let t = load_tower(&path)?;
        extra.insert(t.name.clone(), (path, t));
    }
    for (name, (path, t)) in extra {
        let summary = format!("from {}", path.display());
        match entries.iter_mut().find(|e| e.0 == name) {
            Some(slot) => *slot = (name, summary, t),
            None => entries.push((name, summary, t)),
        }
    }
    Ok(entries)
}

fn catalog_cmd(cmd: &CatalogCmd, as_json: bool) -> Result<String, Failure> {
    let entries = full_catalog()?;
    match cmd {
        CatalogCmd::List => {
            if as_json {
                let list: Vec<Value> = entries
                    .iter()
                    .map(|(name, summary, _)| json!({"name": name, "summary": summary}))
                    .collect();
                return Ok(pretty(&Value::Array(list)));
            }
            let width = entries.iter().map(|e| e.0.len()).max().unwrap_or(0);
            Ok(entries
                .iter()
                .map(|(name, summary, _)| format!("{name:width$}  {summary}\n"))
                .collect())
        }
        CatalogCmd::Report { name: Some(name) } => {
            let tower = entries
                .into_iter()
                .find(|e| &e.0 == name)
                .map(|e| e.2)
                .or_else(|| catalog::get(name))
                .ok_or_else(|| Failure::Usage(format!("unknown catalog tower '{name}'")))?;
            Ok(render(&[report_for(tower)?], as_json, true))
        }
        CatalogCmd::Report { name: None } => {
            let reports = entries
                .into_par_iter()
                .map(|(_, _, t)| report_for(t))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(render(&reports, as_json, false))
        }
    }
}
