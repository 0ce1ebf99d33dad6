//! Command-line driver behind the `rise` binary.
//!
//! ```text
//! rise run      --scenario a30.json --structure es --mode dynamic --map m.csv --cdf c.csv
//! rise run      --scenario a30.json --compare ss1,ss2,es,dee --mode fixed
//! rise compare  --scenario a30.json [--compare ss1,es] [--mode fixed --beam-strategy search]
//! rise generate A_corner_30m --out a30.json
//! rise generate all --out scenarios/
//! ```
//!
//! Flags left unset fall back to the `options` block of the scenario file.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{
    evaluate_region_with, resolve_mode, compare_structures_with, BeamMode, ComparisonRow,
    EvalOptions, RegionMode,
};
use crate::error::{Error, Result};
use crate::export::{format_summary, save_cdf_csv, save_map_csv, save_pgm};
use crate::scenario::{
    generate_canonical, load_scenario, CanonicalScene, ModeEntry, Scenario, StrategyEntry,
};
use crate::stats::cdf;

#[derive(Debug, Parser)]
#[command(name = "rise", version, about = "Coverage maps for metasurface-assisted links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one structure (or several with --compare) over the region.
    Run(RunArgs),
    /// Print the summary table for several structures.
    Compare(CompareArgs),
    /// Write a canonical scenario file.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Dynamic,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Centroid,
    Search,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long = "beam-strategy", value_enum)]
    pub beam_strategy: Option<StrategyArg>,
    /// Only analyse cells whose direct path from the base station is blocked.
    #[arg(long = "shadow-only")]
    pub shadow_only: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub eval: EvalArgs,
    #[arg(long, required_unless_present = "compare", conflicts_with = "compare")]
    pub structure: Option<String>,
    /// Comma-separated structure names.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["map", "cdf", "heatmap"])]
    pub compare: Option<Vec<String>>,
    #[arg(long)]
    pub map: Option<PathBuf>,
    #[arg(long)]
    pub cdf: Option<PathBuf>,
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub eval: EvalArgs,
    /// Comma-separated structure names; all structures when omitted.
    #[arg(long, value_delimiter = ',')]
    pub compare: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// A_corner_30m, A_corner_50m, B_wall, or `all`.
    pub id: String,
    /// Output file, or directory for `all`; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

struct Resolved {
    scenario: Scenario,
    mode: RegionMode,
    options: EvalOptions,
}

fn resolve(args: &EvalArgs) -> Result<Resolved> {
    let scenario = load_scenario(&args.scenario)?;
    let mut opts = scenario.file.options;
    if let Some(m) = args.mode {
        opts.mode = match m {
            ModeArg::Dynamic => ModeEntry::Dynamic,
            ModeArg::Fixed => ModeEntry::Fixed,
        };
    }
    if let Some(s) = args.beam_strategy {
        opts.beam_strategy = match s {
            StrategyArg::Centroid => StrategyEntry::Centroid,
            StrategyArg::Search => StrategyEntry::Search,
        };
    }
    opts.shadow_only |= args.shadow_only;
    Ok(Resolved {
        mode: opts.region_mode(),
        options: opts.eval_options(),
        scenario,
    })
}

fn describe_beam(out: &mut dyn Write, name: &str, mode: BeamMode) -> Result<()> {
    if let BeamMode::Fixed(beam) = mode {
        writeln!(
            out,
            "fixed beam {name}: {:.2} deg from normal",
            beam.desired.signed().to_degrees()
        )
        .map_err(stdout_err)?;
    }
    Ok(())
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io(Path::new("<stdout>"), e)
}

fn compare(r: &Resolved, names: Option<&[String]>, out: &mut dyn Write) -> Result<()> {
    let scene = &r.scenario.scene;
    let names: Vec<&str> = match names {
        Some(n) => n.iter().map(String::as_str).collect(),
        None => scene.structures.keys().map(String::as_str).collect(),
    };
    let rows = compare_structures_with(scene, &names, r.mode, r.options)?;
    out.write_all(format_summary(&rows).as_bytes()).map_err(stdout_err)
}

fn run(args: &RunArgs, out: &mut dyn Write) -> Result<()> {
    let r = resolve(&args.eval)?;
    let Some(name) = &args.structure else {
        return compare(&r, args.compare.as_deref(), out);
    };
    let scene = &r.scenario.scene;
    let beam = resolve_mode(scene, name, r.mode, r.options)?;
    let map = evaluate_region_with(scene, name, beam, r.options)?;
    if let Some(path) = &args.map {
        save_map_csv(&map, path)?;
    }
    if let Some(path) = &args.cdf {
        save_cdf_csv(&cdf(&map)?, path)?;
    }
    if let Some(path) = &args.heatmap {
        save_pgm(&map, path)?;
    }
    describe_beam(out, name, beam)?;
    let row = ComparisonRow::from_map(name, &map)?;
    out.write_all(format_summary(&[row]).as_bytes()).map_err(stdout_err)
}

fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<()> {
    if args.id.eq_ignore_ascii_case("all") {
        let dir = args
            .out
            .as_deref()
            .ok_or_else(|| Error::invalid("--out", "a directory is required with `all`"))?;
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for id in CanonicalScene::ALL {
            let path = dir.join(format!("{}.json", id.id()));
            generate_canonical(id).save(&path)?;
            writeln!(out, "wrote {}", path.display()).map_err(stdout_err)?;
        }
        return Ok(());
    }
    let id = CanonicalScene::from_id(&args.id)
        .ok_or_else(|| Error::invalid("id", format!("unknown canonical scene `{}`", args.id)))?;
    let file = generate_canonical(id);
    match &args.out {
        Some(path) => file.save(path),
        None => out.write_all(file.to_json().as_bytes()).map_err(stdout_err),
    }
}

/// Executes a parsed command, writing human-readable output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Run(a) => run(a, out),
        Command::Compare(a) => compare(&resolve(&a.eval)?, a.compare.as_deref(), out),
        Command::Generate(a) => generate(a, out),
    }
}
