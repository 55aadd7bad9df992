use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use buildings::oracle::{verify_case, VerifyReport};
use buildings::{generate, BuildingSpec, Error, Family, GenerateOptions, Layout, Limits, PairMode, SceneDocument, SceneFormat};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "buildings", version, about = "Generate, inspect and verify chambers of Tits buildings")]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a scene and write it as JSON or OBJ.
    Build(BuildArgs),
    /// Print the stats block of a generated or saved scene.
    Stats(StatsArgs),
    /// Distance and lexicographically least minimal gallery between two chambers.
    Path(PathArgs),
    /// Brute-force checks of GL_3(F_p) against the label pipeline.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Obj,
}

#[derive(Debug, Args)]
struct LayoutArgs {
    /// Vertical offset per unit of gallery distance (affine families).
    #[arg(long, default_value_t = Layout::default().height_step)]
    height_step: f64,
    /// Radial growth per unit of gallery distance (spherical families).
    #[arg(long, default_value_t = Layout::default().radial_step)]
    radial_step: f64,
    /// Add the centre of the sphere as a vertex (sph-a2 only).
    #[arg(long)]
    embed_center: bool,
    /// Test every chamber pair for adjacency instead of Weyl neighbours only.
    #[arg(long)]
    exhaustive_adjacency: bool,
    /// Largest radius accepted for affine families.
    #[arg(long, default_value_t = Limits::default().max_affine_radius)]
    max_radius: usize,
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// sph-a2, sph-a3, aff-a1 or aff-a2.
    #[arg(long)]
    family: Family,
    /// The prime.
    #[arg(long)]
    p: u32,
    /// Gallery distance from the base chamber.
    #[arg(long)]
    radius: usize,
    #[command(flatten)]
    layout: LayoutArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Read a JSON scene instead of generating one.
    #[arg(long, conflicts_with_all = ["family", "p", "radius"])]
    scene: Option<PathBuf>,
    #[arg(long, required_unless_present = "scene")]
    family: Option<Family>,
    #[arg(long, required_unless_present = "scene")]
    p: Option<u32>,
    #[arg(long, required_unless_present = "scene")]
    radius: Option<usize>,
    #[command(flatten)]
    layout: LayoutArgs,
}

#[derive(Debug, Args)]
struct PathArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    /// Also print the chambers along the gallery.
    #[arg(long)]
    chambers: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// `n,p`; 3,2 or 3,3. Both run when omitted.
    #[arg(long, value_parser = parse_case)]
    case: Option<(usize, u32)>,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn parse_case(s: &str) -> Result<(usize, u32), String> {
    let (n, p) = s.split_once(',').ok_or_else(|| format!("expected n,p but got {s:?}"))?;
    let n = n.trim().parse().map_err(|e| format!("bad n in {s:?}: {e}"))?;
    let p = p.trim().parse().map_err(|e| format!("bad p in {s:?}: {e}"))?;
    Ok((n, p))
}

fn options(radius: usize, layout: &LayoutArgs) -> GenerateOptions {
    GenerateOptions {
        radius,
        layout: Layout { height_step: layout.height_step, radial_step: layout.radial_step, embed_center: layout.embed_center },
        pair_mode: if layout.exhaustive_adjacency { PairMode::Exhaustive } else { PairMode::Pruned },
        limits: Limits { max_affine_radius: layout.max_radius, ..Limits::default() },
    }
}

fn scene_for(family: Family, p: u32, radius: usize, layout: &LayoutArgs) -> anyhow::Result<SceneDocument> {
    let spec = BuildingSpec::new(family, p)?;
    let start = Instant::now();
    let run = generate(spec, &options(radius, layout))?;
    log::info!("generated {family} p={p} radius={radius} in {:.2?}", start.elapsed());
    Ok(SceneDocument::from_generated(&run))
}

fn read_scene(path: &Path) -> anyhow::Result<SceneDocument> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    SceneDocument::from_json(&bytes).with_context(|| format!("loading scene {}", path.display()))
}

fn build(args: &BuildArgs) -> anyhow::Result<u8> {
    let doc = scene_for(args.family, args.p, args.radius, &args.layout)?;
    let format = match args.format {
        Format::Json => SceneFormat::Json,
        Format::Obj => SceneFormat::Obj,
    };
    std::fs::write(&args.out, doc.to_bytes(format)?).with_context(|| format!("writing {}", args.out.display()))?;
    let s = doc.stats;
    println!(
        "wrote {}: {} chambers, {} vertices, {} edges, max distance {}",
        args.out.display(),
        s.chamber_count,
        s.vertex_count,
        s.edge_count,
        s.max_distance_from_base
    );
    Ok(0)
}

fn stats(args: &StatsArgs) -> anyhow::Result<u8> {
    let doc = match (&args.scene, args.family, args.p, args.radius) {
        (Some(path), ..) => read_scene(path)?,
        (None, Some(family), Some(p), Some(radius)) => scene_for(family, p, radius, &args.layout)?,
        _ => bail!("either --scene or all of --family, --p and --radius are required"),
    };
    println!("{}", serde_json::to_string_pretty(&doc.stats)?);
    Ok(0)
}

fn path(args: &PathArgs) -> anyhow::Result<u8> {
    let graph = read_scene(&args.scene)?.graph()?;
    let gallery = graph.shortest_gallery(args.from, args.to)?;
    println!("{}, {:?}", gallery.distance, gallery.word);
    if args.chambers {
        println!("chambers: {:?}", gallery.chambers);
    }
    Ok(0)
}

fn verify(args: &VerifyArgs) -> anyhow::Result<u8> {
    let cases = match args.case {
        Some(case) => vec![case],
        None => buildings::oracle::SUPPORTED_CASES.to_vec(),
    };
    let mut reports: Vec<VerifyReport> = Vec::new();
    for (n, p) in cases {
        let start = Instant::now();
        let report = verify_case(n, p)?;
        print!("{}", report.to_text());
        println!("({:.2?})", start.elapsed());
        reports.push(report);
    }
    let passed = reports.iter().all(|r| r.passed);
    if let Some(out) = &args.report {
        let json = serde_json::json!({ "passed": passed, "cases": reports });
        let mut bytes = serde_json::to_vec_pretty(&json)?;
        bytes.push(b'\n');
        std::fs::write(out, bytes).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(if passed { 0 } else { EXIT_VERIFY })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceCap { .. }) => EXIT_CAP,
        Some(
            Error::ProfileInconsistency { .. } | Error::DuplicateCoset { .. } | Error::IdentificationConflict { .. },
        ) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    let result = match &cli.command {
        Command::Build(args) => build(args),
        Command::Stats(args) => stats(args),
        Command::Path(args) => path(args),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
