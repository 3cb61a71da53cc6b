use capmono::config::RunConfig;
use capmono::energy::energy_report;
use capmono::geom::AmbientKind;
use capmono::mono::ball::ball_profile;
use capmono::mono::halfspace::g_profile;
use capmono::report::{fmt12, fmt_pi, identity_suite, write_ball_profile, write_checks, write_halfspace_profile};
use capmono::surface::io::{load_surface, save_surface, SURFACE_FILE};
use capmono::surface::{contact_check, sample_chart, SampledSurface};
use capmono::wetted::{write_curves, WettedRegion};
use capmono::{Error, Result};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "capmono", version, about = "Monotonicity, Willmore and area checks for capillary surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides [output] dir).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "CAPMONO_THREADS")]
    threads: Option<usize>,
    /// Bound on normalized identity residuals.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for random probes.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Args, Debug, Default)]
struct Overrides {
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long = "R")]
    radius: Option<f64>,
    #[arg(long)]
    latitude: Option<f64>,
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    mode: Option<u32>,
    #[arg(long)]
    nu: Option<usize>,
    #[arg(long)]
    nv: Option<usize>,
    #[arg(long)]
    rule: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a generator and write surface, boundary and curve tables.
    Generate {
        /// cap, hemisphere, flat-disk-ball or cap-ball.
        generator: Option<String>,
        #[command(flatten)]
        o: Overrides,
    },
    /// Energy report as JSON.
    Energy {
        #[command(flatten)]
        o: Overrides,
    },
    /// One profile CSV per probe point.
    Monotonicity {
        #[command(flatten)]
        o: Overrides,
    },
    /// Identity residuals with pass/fail per check.
    IdentitySuite {
        #[command(flatten)]
        o: Overrides,
    },
    /// Human-readable summary with π-multiples.
    Report {
        #[command(flatten)]
        o: Overrides,
    },
}

fn build_config(g: &Global, generator: Option<&String>, o: &Overrides) -> Result<RunConfig> {
    let mut c = match &g.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(name) = generator {
        c.generator.name = name.clone();
    }
    if let Some(v) = o.theta {
        c.run.theta = v;
    }
    if let Some(v) = o.radius {
        c.generator.radius = v;
    }
    if let Some(v) = o.latitude {
        c.generator.latitude = v;
    }
    if let Some(v) = o.amplitude {
        c.generator.amplitude = v;
    }
    if let Some(v) = o.mode {
        c.generator.mode = v;
    }
    if let Some(v) = o.nu {
        c.quadrature.nu = v;
    }
    if let Some(v) = o.nv {
        c.quadrature.nv = v;
    }
    if let Some(v) = &o.rule {
        c.quadrature.rule = v.clone();
    }
    if let Some(v) = g.tolerance {
        c.tolerance.residual = v;
    }
    if let Some(v) = g.seed {
        c.run.seed = v;
    }
    if let Some(v) = &g.out {
        c.output.dir = v.display().to_string();
    }
    c.validate()?;
    Ok(c)
}

/// Surface files from the output directory when present, otherwise a fresh sample.
fn surface_for(c: &RunConfig) -> Result<SampledSurface> {
    let dir = Path::new(&c.output.dir);
    if dir.join(SURFACE_FILE).exists() {
        load_surface(dir)
    } else {
        c.sample()
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, bytes)?;
    Ok(())
}

fn generate(c: &RunConfig) -> Result<bool> {
    let chart = c.chart()?;
    let s = sample_chart(&chart, c.quadrature.nu, c.quadrature.nv, c.rule())?;
    let coarse = sample_chart(&chart, c.quadrature.nu / 2, c.quadrature.nv / 2, c.rule()).ok();
    let region = WettedRegion::from_surface(&s)?;
    let dir = Path::new(&c.output.dir);
    save_surface(&s, dir)?;
    let mut buf = Vec::new();
    write_curves(&region, &mut buf)?;
    write_file(&dir.join("curves.csv"), &buf)?;
    write_file(&dir.join("config.toml"), c.to_canonical().as_bytes())?;
    println!("generator = {}", s.meta.generator);
    println!("samples = {} interior, {} boundary", s.interior.len(), s.boundary.len());
    println!("contact residual = {}", fmt12(contact_check(&s)));
    println!("area = {}", fmt_pi(s.area()));
    println!("boundary length = {}", fmt_pi(s.boundary_length()));
    println!("wetted area = {}", fmt_pi(region.area()?));
    if let Some(k) = coarse {
        println!("area change from half resolution = {}", fmt12(s.area() - k.area()));
    }
    Ok(true)
}

fn energy(c: &RunConfig) -> Result<bool> {
    let s = surface_for(c)?;
    let region = WettedRegion::from_surface(&s)?;
    let rep = energy_report(&s, &region)?;
    let json = serde_json::to_string_pretty(&rep).map_err(|e| Error::Parse(e.to_string()))? + "\n";
    write_file(&Path::new(&c.output.dir).join("energy.json"), json.as_bytes())?;
    print!("{json}");
    Ok(true)
}

fn monotonicity(c: &RunConfig) -> Result<bool> {
    let s = surface_for(c)?;
    let region = WettedRegion::from_surface(&s)?;
    let grid = c.r_grid();
    let dir = Path::new(&c.output.dir);
    let probes = c.probe_points(&s);
    let mut worst_drop: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    let mut violations = 0usize;
    for (k, p) in probes.iter().enumerate() {
        let mut buf = Vec::new();
        let (min_fd, n_viol) = match s.ambient.kind {
            AmbientKind::HalfSpace => {
                let prof = g_profile(&s, &region, *p, &grid)?;
                write_halfspace_profile(&prof, &mut buf)?;
                (prof.min_forward_difference, prof.violations.len())
            }
            AmbientKind::UnitBall => {
                let prof = ball_profile(&s, &region, *p, &grid)?;
                write_ball_profile(&prof, &mut buf)?;
                (prof.min_forward_difference, prof.violations.len())
            }
        };
        write_file(&dir.join(format!("profile_{k:03}.csv")), &buf)?;
        worst_drop = worst_drop.min(min_fd);
        violations += n_viol;
        for pair in &c.radii.pairs {
            let r = match s.ambient.kind {
                AmbientKind::HalfSpace => capmono::mono::halfspace::simon_residual(&s, &region, *p, pair[0], pair[1])?,
                AmbientKind::UnitBall => capmono::mono::ball::ball_identity_residual(&s, &region, *p, pair[0], pair[1])?,
            };
            worst_residual = worst_residual.max(r.normalized.abs());
        }
        println!("probe {k}: ({}, {}, {}) min forward difference {}", fmt12(p.x), fmt12(p.y), fmt12(p.z), fmt12(min_fd));
    }
    let ok = worst_residual <= c.tolerance.residual;
    println!(
        "summary: probes {} worst drop {} violations {} worst residual {} tolerance {} {}",
        probes.len(),
        fmt12(worst_drop),
        violations,
        fmt12(worst_residual),
        fmt12(c.tolerance.residual),
        if ok { "PASS" } else { "FAIL" }
    );
    Ok(ok)
}

fn suite(c: &RunConfig) -> Result<bool> {
    let s = surface_for(c)?;
    let region = WettedRegion::from_surface(&s)?;
    let checks = identity_suite(&s, &region, &c.probe_points(&s), &c.radii.pairs, c.tolerance.residual)?;
    let mut buf = Vec::new();
    write_checks(&checks, &mut buf)?;
    write_file(&Path::new(&c.output.dir).join("identity_suite.csv"), &buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    let failed = checks.iter().filter(|k| !k.pass()).count();
    println!("summary: {} checks, {} failed", checks.len(), failed);
    Ok(failed == 0)
}

fn report(c: &RunConfig) -> Result<bool> {
    let s = surface_for(c)?;
    let region = WettedRegion::from_surface(&s)?;
    let r = energy_report(&s, &region)?;
    let mut out = String::new();
    out += &format!("generator = {}\n", r.generator);
    out += &format!("theta = {}\n", fmt_pi(r.theta));
    out += &format!("willmore = {}\n", fmt_pi(r.willmore));
    out += &format!("willmore bulk = {}\n", fmt_pi(r.willmore_bulk));
    out += &format!("area = {}\n", fmt_pi(r.area));
    out += &format!("boundary length = {}\n", fmt_pi(r.boundary_length));
    out += &format!("oriented wetted area = {}\n", fmt_pi(r.oriented_wetted_area));
    out += &format!("li-yau margin = {}\n", fmt_pi(r.li_yau_margin));
    out += &format!("li-yau global margin = {}\n", fmt_pi(r.li_yau_global_margin));
    out += &format!("boundary density = {}\n", fmt12(r.boundary_density));
    if let Some(m) = r.area_estimate_margin {
        out += &format!("area estimate margin = {}\n", fmt_pi(m));
    }
    if let Some(m) = r.brendle_margin {
        out += &format!("brendle margin = {}\n", fmt_pi(m));
    }
    write_file(&Path::new(&c.output.dir).join("report.txt"), out.as_bytes())?;
    print!("{out}");
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(Error::Config("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::Config(e.to_string()))?;
    }
    match &cli.command {
        Command::Generate { generator, o } => generate(&build_config(&cli.global, generator.as_ref(), o)?),
        Command::Energy { o } => energy(&build_config(&cli.global, None, o)?),
        Command::Monotonicity { o } => monotonicity(&build_config(&cli.global, None, o)?),
        Command::IdentitySuite { o } => suite(&build_config(&cli.global, None, o)?),
        Command::Report { o } => report(&build_config(&cli.global, None, o)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
