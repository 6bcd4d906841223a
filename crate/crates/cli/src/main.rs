//! `peelkit` command-line front end.
//!
//! Exit codes: 0 success, 1 expectation mismatch, 2 usage error or start
//! faces that are out of range or not adjacent, 3 unknown solid or unreadable
//! input file, 4 Hamiltonian search timed out, 10 peel did not complete.

mod manifest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use log::info;
use peelkit::catalog::{self, Family};
use peelkit::classify::{
    classify_records, expected_hamiltonian, failure_classes, pattern_classes, ClassificationRow,
    ClassificationTable, PeelabilityVerdict,
};
use peelkit::formats::{read_json, read_off};
use peelkit::graph::{hamiltonian_path, skeleton, HamiltonianStatus, DEFAULT_BUDGET};
use peelkit::peel::{peel, peel_all_pairs, Handedness, PeelConfig};
use peelkit::planar::embed;
use peelkit::unfold::{partial_unfold, unfold};
use peelkit::{Polyhedron, DEFAULT_TOLERANCE};

use crate::manifest::RunManifest;

const EXIT_MISMATCH: u8 = 1;
const EXIT_BAD_FACES: u8 = 2;
const EXIT_UNKNOWN_SOLID: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;
const EXIT_INCOMPLETE: u8 = 10;

#[derive(Parser)]
#[command(
    name = "peelkit",
    version,
    about = "Apple-peel unfolding of convex polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog solids, or the faces of one solid.
    List {
        #[arg(long)]
        family: Option<String>,
        /// Print the gon count of every face of SOLID instead.
        #[arg(long, value_name = "SOLID")]
        faces: Option<String>,
    },
    /// Peel one solid from a start pair.
    Peel(PeelArgs),
    /// Re-run a peel recorded with `peel --manifest`.
    Replay { manifest: PathBuf },
    /// Classify solids by how many start pairs peel completely.
    Classify {
        /// A solid, a family name, or `all`.
        scope: String,
        #[command(flatten)]
        peel: PeelOptions,
        /// Compare verdicts with the published table and exit 1 on mismatch.
        #[arg(long, value_parser = ["table1"])]
        expect: Option<String>,
        /// Print the pattern classes of each solid, grouped by start face.
        #[arg(long)]
        patterns: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search Hamiltonian paths of solid skeletons.
    Graph {
        /// A solid, a family name, or `all`.
        scope: String,
        /// Compare path availability with the published table and exit 1 on
        /// mismatch.
        #[arg(long, value_parser = ["table1"])]
        expect: Option<String>,
        /// Search nodes per solid before giving up.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct PeelOptions {
    #[arg(long, default_value = "right", value_parser = parse_handedness)]
    handedness: Handedness,
    #[arg(long, env = "PEELKIT_TOLERANCE", default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Use the mirror image of the solid (the other enantiomorph for chiral
    /// solids).
    #[arg(long)]
    mirror: bool,
}

impl PeelOptions {
    fn config(&self) -> PeelConfig {
        PeelConfig {
            handedness: self.handedness,
            tolerance: self.tolerance,
            ..PeelConfig::default()
        }
    }
}

#[derive(Args)]
struct PeelArgs {
    /// Catalog name or index, or a path to an .off or .json file.
    solid: String,
    #[arg(long)]
    f1: usize,
    #[arg(long)]
    f2: usize,
    #[command(flatten)]
    options: PeelOptions,
    /// Write the peel report as JSON here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the unfolded net as SVG.
    #[arg(long)]
    net: Option<PathBuf>,
    /// Write the Tutte drawing of the skeleton with the peel trace as SVG.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Write the partially unfolded solid as OBJ.
    #[arg(long)]
    obj: Option<PathBuf>,
    /// Number of faces folded flat in the OBJ output (default: all but the
    /// last).
    #[arg(long)]
    step: Option<usize>,
    /// Record this invocation so `replay` can reproduce it.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

fn parse_handedness(s: &str) -> std::result::Result<Handedness, String> {
    Handedness::parse(s).ok_or_else(|| format!("expected `right` or `left`, got `{s}`"))
}

/// An error carrying the process exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Failure {
        code,
        message: message.into(),
    })
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(f) = err.downcast_ref::<Failure>() {
        return f.code;
    }
    match err.downcast_ref::<peelkit::Error>() {
        Some(peelkit::Error::NotAdjacent { .. } | peelkit::Error::FaceOutOfRange { .. }) => {
            EXIT_BAD_FACES
        }
        Some(peelkit::Error::InvalidTolerance(_)) => EXIT_BAD_FACES,
        Some(
            peelkit::Error::UnknownSolid(_)
            | peelkit::Error::Parse { .. }
            | peelkit::Error::Json(_),
        ) => EXIT_UNKNOWN_SOLID,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List { family, faces } => cmd_list(family.as_deref(), faces.as_deref()),
        Command::Peel(args) => cmd_peel(&args),
        Command::Replay { manifest } => cmd_replay(&manifest),
        Command::Classify {
            scope,
            peel,
            expect,
            patterns,
            csv,
            json,
        } => cmd_classify(&scope, &peel, expect.is_some(), patterns, csv, json),
        Command::Graph {
            scope,
            expect,
            budget,
            json,
        } => cmd_graph(&scope, expect.is_some(), budget, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = exit_code(&err);
            eprintln!("peelkit: {err:#}");
            ExitCode::from(code)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    info!("wrote {}", path.display());
    Ok(())
}

/// Resolves a catalog identifier or a path to a mesh file.
fn load_solid(solid: &str, mirror: bool) -> Result<Polyhedron> {
    let path = Path::new(solid);
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    let p = match ext.as_deref() {
        Some(ext @ ("off" | "json")) if path.is_file() => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {solid}"))?;
            let parsed = if ext == "off" {
                read_off(&text)
            } else {
                read_json(&text)
            };
            let p = parsed.with_context(|| format!("parsing {solid}"))?;
            if p.name().is_some() {
                p
            } else {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(solid);
                p.with_name(stem)
            }
        }
        _ => catalog::lookup(solid)?.polyhedron.clone(),
    };
    Ok(if mirror { p.mirror() } else { p })
}

/// Catalog records selected by `all`, a family name, or a single solid.
fn scope_records(scope: &str) -> Result<Vec<&'static catalog::SolidRecord>> {
    if scope.eq_ignore_ascii_case("all") {
        return Ok(catalog::all().iter().collect());
    }
    if let Some(family) = Family::parse(scope) {
        return Ok(catalog::family(family).collect());
    }
    Ok(vec![catalog::lookup(scope)?])
}

fn cmd_list(family: Option<&str>, faces: Option<&str>) -> Result<()> {
    if let Some(solid) = faces {
        let p = load_solid(solid, false)?;
        println!("face,gon,neighbors");
        for f in 0..p.face_count() {
            let nb: Vec<String> = p.adjacency().faces(f).map(|g| g.to_string()).collect();
            println!("{f},{},{}", p.gon(f), nb.join(" "));
        }
        return Ok(());
    }
    let records: Vec<_> = match family {
        Some(name) => {
            let fam = Family::parse(name)
                .ok_or_else(|| fail(EXIT_UNKNOWN_SOLID, format!("unknown family `{name}`")))?;
            catalog::family(fam).collect()
        }
        None => catalog::all().iter().collect(),
    };
    println!("name,index,family,vertices,edges,faces");
    for r in records {
        let p = &r.polyhedron;
        println!(
            "{},\"{}\",{},{},{},{}",
            r.name,
            r.index,
            r.family,
            p.vertex_count(),
            p.edge_count(),
            p.face_count()
        );
    }
    Ok(())
}

fn cmd_peel(args: &PeelArgs) -> Result<()> {
    let m = RunManifest::from_args(args);
    if let Some(path) = &args.manifest {
        write_file(path, &m.to_json())?;
    }
    run_peel(&m)
}

fn cmd_replay(path: &Path) -> Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = RunManifest::from_json(&text)?;
    run_peel(&m)
}

fn run_peel(m: &RunManifest) -> Result<()> {
    let p = load_solid(&m.solid, m.mirror)?;
    let cfg = PeelConfig {
        handedness: m.handedness,
        tolerance: m.tolerance,
        ..PeelConfig::default()
    };
    let seq = peel(&p, m.f1, m.f2, &cfg)?;
    if seq.has_ties() {
        log::warn!("centroid height ties were broken by face index");
    }
    let report = seq.report().to_json();
    match &m.outputs.json {
        Some(path) => write_file(path, &format!("{report}\n"))?,
        None => println!("{report}"),
    }
    if let Some(path) = &m.outputs.net {
        write_file(path, &unfold(&p, &seq)?.to_svg())?;
    }
    if let Some(path) = &m.outputs.graph {
        write_file(path, &embed(&p, &seq)?.to_svg())?;
    }
    if let Some(path) = &m.outputs.obj {
        let step = m.outputs.step.unwrap_or(seq.len().saturating_sub(1));
        write_file(path, &partial_unfold(&p, &seq, step)?.to_obj())?;
    }
    if seq.is_complete() {
        Ok(())
    } else {
        Err(fail(
            EXIT_INCOMPLETE,
            format!(
                "peel {}: {} of {} faces selected, {} remaining",
                seq.outcome,
                seq.len(),
                seq.face_count,
                seq.remaining.len()
            ),
        ))
    }
}

fn cmd_classify(
    scope: &str,
    options: &PeelOptions,
    expect: bool,
    patterns: bool,
    csv: Option<PathBuf>,
    json: Option<PathBuf>,
) -> Result<()> {
    let cfg = options.config();
    let custom = Path::new(scope).is_file();
    let table = if custom {
        let p = load_solid(scope, options.mirror)?;
        let v = peelkit::classify::classify(&p, &cfg)?;
        ClassificationTable {
            rows: vec![custom_row(&v)],
        }
    } else {
        let records: Vec<catalog::SolidRecord> = scope_records(scope)?
            .into_iter()
            .map(|r| {
                if options.mirror {
                    r.mirrored()
                } else {
                    r.clone()
                }
            })
            .collect();
        classify_records(&records, &cfg)?
    };
    if let Some(path) = &csv {
        write_file(path, &table.to_csv())?;
    }
    if let Some(path) = &json {
        write_file(path, &format!("{}\n", table.to_json()))?;
    }
    if csv.is_none() && json.is_none() {
        print!("{}", table.to_csv());
    }
    if patterns {
        let solids: Vec<Polyhedron> = if custom {
            vec![load_solid(scope, options.mirror)?]
        } else {
            scope_records(scope)?
                .into_iter()
                .map(|r| {
                    let p = r.polyhedron.clone();
                    if options.mirror {
                        p.mirror()
                    } else {
                        p
                    }
                })
                .collect()
        };
        for p in &solids {
            print!("{}", pattern_report(p, &cfg)?);
        }
    }
    if expect && !custom {
        let bad: Vec<String> = table
            .mismatches()
            .map(|r| {
                format!(
                    "{} {}: got {}, expected {}",
                    r.name, r.index, r.verdict, r.expected
                )
            })
            .collect();
        if !bad.is_empty() {
            return Err(fail(
                EXIT_MISMATCH,
                format!("verdict mismatch: {}", bad.join("; ")),
            ));
        }
    }
    Ok(())
}

fn custom_row(v: &PeelabilityVerdict) -> ClassificationRow {
    ClassificationRow {
        name: v.solid.clone(),
        index: String::new(),
        family: Family::Platonic,
        verdict: v.verdict,
        complete_pairs: v.complete,
        total_pairs: v.total,
        expected: v.verdict,
    }
}

/// Pattern classes of all runs, grouped by the gon count of the start face.
fn pattern_report(p: &Polyhedron, cfg: &PeelConfig) -> Result<String> {
    let runs = peel_all_pairs(p, cfg)?;
    let mut out = format!("# {}\n", p.name().unwrap_or("solid"));
    let mut start_gons: Vec<usize> = runs.iter().map(|r| p.gon(r.f1())).collect();
    start_gons.sort_unstable();
    start_gons.dedup();
    for gon in start_gons {
        let group: Vec<_> = runs
            .iter()
            .filter(|r| p.gon(r.f1()) == gon)
            .cloned()
            .collect();
        let complete = group.iter().filter(|r| r.is_complete()).count();
        out.push_str(&format!(
            "start {gon}-gon: {} runs, {complete} complete\n",
            group.len()
        ));
        for c in pattern_classes(p, &group) {
            let gons: Vec<String> = c.signature.gons.iter().map(|g| g.to_string()).collect();
            out.push_str(&format!(
                "  {} x{} from ({}, {}): {}\n",
                c.signature.outcome,
                c.count,
                c.representative.0,
                c.representative.1,
                gons.join(" ")
            ));
        }
        for (key, count) in failure_classes(p, &group) {
            out.push_str(&format!(
                "  failure x{count}: {} selected, {} remaining\n",
                key.prefix_gons.len(),
                key.remaining
            ));
        }
    }
    Ok(out)
}

fn cmd_graph(scope: &str, expect: bool, budget: u64, json: Option<PathBuf>) -> Result<()> {
    let records = scope_records(scope)?;
    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    let mut timeouts = Vec::new();
    for r in &records {
        let g = skeleton(&r.polyhedron);
        let report = hamiltonian_path(&g, budget);
        info!(
            "{}: {} after {} steps",
            r.name,
            report.label(),
            report.steps
        );
        if report.status == HamiltonianStatus::TimedOut {
            timeouts.push(r.name);
        }
        if let Some(want) = expected_hamiltonian(r) {
            if report.status != HamiltonianStatus::TimedOut && report.found() != want {
                mismatches.push(format!("{} {}: {}", r.name, r.index, report.label()));
            }
        }
        reports.push(report.json(r.name, g.vertex_count()));
    }
    match &json {
        Some(path) => {
            let text = serde_json::to_string(&reports).context("serializing reports")?;
            write_file(path, &format!("{text}\n"))?;
        }
        None => {
            for rep in &reports {
                println!(
                    "{}",
                    serde_json::to_string(rep).context("serializing report")?
                );
            }
        }
    }
    let found = reports.iter().filter(|r| r.hamiltonian == "found").count();
    eprintln!(
        "{found} of {} skeletons have a Hamiltonian path",
        reports.len()
    );
    if !timeouts.is_empty() {
        return Err(fail(
            EXIT_TIMEOUT,
            format!(
                "search budget of {budget} exhausted for {}",
                timeouts.join(", ")
            ),
        ));
    }
    if expect && !mismatches.is_empty() {
        return Err(fail(
            EXIT_MISMATCH,
            format!("availability mismatch: {}", mismatches.join("; ")),
        ));
    }
    Ok(())
}
