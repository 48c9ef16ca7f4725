use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use kinkscat::asymptotics::{write_asymptotic_csv, write_crosscheck_csv};
use kinkscat::harness::{self, RunConfig};
use kinkscat::pde::{write_ray_csv, write_snapshot_csv};
use kinkscat::scattering::ScatteringData;

const CONFIG_HELP: &str = "\
Config file (JSON). Keys:
  profile      {\"kind\": \"pure_kink\" | \"perturbed_kink\", \"amplitude\": [re, im],
                \"center\": c, \"width\": w}  or  {\"file\": \"profile.csv\"}
  L            half-width of the evolution domain [-L, L]
  dx           evolution grid spacing
  dt_factor    dt / dx^2 (default 0.2)
  z_grid       {\"min\", \"max\", \"n\", \"exclusion_radius\"}
  xi_values    rays x = 2 xi t, each |xi| > 1
  t_values     strictly increasing sample times
  output_dir   default output directory (default \"out\")
  fit_t_min    first time used in decay fits (default: upper half of t_values)
  scatter      {\"half_width\", \"dx\", \"background_tolerance\", \"arc_samples\"}
  sponge       {\"width\", \"rate\"}";

#[derive(Parser)]
#[command(name = "kinkscat", version = concat!(env!("CARGO_PKG_VERSION"), " (", env!("CARGO_PKG_NAME"), ")"))]
#[command(about = "Scattering data, ray asymptotics and reference evolution for defocusing NLS on a kink background")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_name = "PATH", help = "JSON run configuration", long_help = CONFIG_HELP)]
    config: PathBuf,
    /// Output directory; overrides output_dir from the config.
    #[arg(long, value_name = "DIR")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reflection table and discrete spectrum of the initial profile.
    Scatter {
        #[command(flatten)]
        common: Common,
    },
    /// Asymptotic profile along each ray.
    Asym {
        #[command(flatten)]
        common: Common,
        /// Scattering JSON; defaults to <output>/scattering.json.
        #[arg(long, value_name = "PATH")]
        scattering: Option<PathBuf>,
        /// Scattering JSON of the mirrored profile, for rays with xi < -1.
        #[arg(long, value_name = "PATH")]
        mirrored: Option<PathBuf>,
    },
    /// Reference PDE evolution sampled along each ray.
    Evolve {
        #[command(flatten)]
        common: Common,
        /// Also write the full field at every sample time.
        #[arg(long)]
        snapshots: bool,
    },
    /// Compare PDE samples with the asymptotic values.
    Compare {
        #[command(flatten)]
        common: Common,
        /// PDE ray samples; defaults to <output>/ray.csv.
        #[arg(long, value_name = "PATH")]
        ray: Option<PathBuf>,
        /// Asymptotic rows; defaults to <output>/asymptotic.csv.
        #[arg(long, value_name = "PATH")]
        asym: Option<PathBuf>,
    },
}

/// Failure classified for the exit status.
struct Failure {
    input: bool,
    err: anyhow::Error,
}

impl From<kinkscat::Error> for Failure {
    fn from(e: kinkscat::Error) -> Self {
        Self { input: e.is_input_error(), err: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let input = err.downcast_ref::<kinkscat::Error>().map_or(true, |e| e.is_input_error());
        Self { input, err }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(if f.input { 2 } else { 3 })
        }
    }
}

fn setup(common: &Common) -> Result<(RunConfig, PathBuf), Failure> {
    let cfg = RunConfig::load(&common.config)?;
    let dir = common.output.clone().unwrap_or_else(|| cfg.output_dir.clone());
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok((cfg, dir))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Scatter { common } => {
            let (cfg, dir) = setup(&common)?;
            let field = harness::profile_field(&cfg)?;
            let data = harness::scatter(&cfg, &field)?;
            let path = dir.join("scattering.json");
            data.write(&path)?;
            println!("unitarity max violation: {:e}", data.table.max_unitarity_defect());
            println!("eigenvalues: {}", data.spectrum.len());
            println!("wrote {}", path.display());
            if cfg.xi_values.iter().any(|&xi| xi < 0.0) {
                let path = dir.join("scattering_mirrored.json");
                harness::scatter_mirrored(&cfg, &field)?.write(&path)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Asym { common, scattering, mirrored } => {
            let (cfg, dir) = setup(&common)?;
            let data = ScatteringData::read(&scattering.unwrap_or_else(|| dir.join("scattering.json")))?;
            let mirrored = if cfg.xi_values.iter().any(|&xi| xi < 0.0) {
                Some(ScatteringData::read(&mirrored.unwrap_or_else(|| dir.join("scattering_mirrored.json")))?)
            } else {
                None
            };
            let rows = harness::asymptotic_rows(&cfg, &data, mirrored.as_ref())?;
            let path = dir.join("asymptotic.csv");
            write_asymptotic_csv(&path, &rows.points)?;
            write_crosscheck_csv(&dir.join("asymptotic_crosscheck.csv"), &rows.crosscheck)?;
            let worst = rows
                .crosscheck
                .iter()
                .map(|r| (r.correction - r.closed_form).norm())
                .fold(0.0, f64::max);
            println!("closed-form cross-check max difference: {worst:e}");
            println!("exp(-i alpha) vs T(inf)^-2 max difference: {:e}", rows.max_identity_defect);
            println!("wrote {}", path.display());
        }
        Command::Evolve { common, snapshots } => {
            let (cfg, dir) = setup(&common)?;
            let mut k = 0;
            let samples = harness::evolve_rays(&cfg, |state| {
                if snapshots {
                    write_snapshot_csv(&dir.join(format!("snapshot_{k:03}.csv")), &state.grid)?;
                }
                k += 1;
                Ok(())
            })?;
            let path = dir.join("ray.csv");
            write_ray_csv(&path, &samples)?;
            println!("wrote {}", path.display());
        }
        Command::Compare { common, ray, asym } => {
            let (cfg, dir) = setup(&common)?;
            let rays = harness::read_ray_csv(&ray.unwrap_or_else(|| dir.join("ray.csv")))?;
            let asym = harness::read_asymptotic_csv(&asym.unwrap_or_else(|| dir.join("asymptotic.csv")))?;
            let report = harness::compare(&rays, &asym, cfg.fit_t_min)?;
            report.write_csv(&dir.join("comparison.csv"))?;
            report.write_summary_json(&dir.join("summary.json"))?;
            for s in report.summary() {
                let fmt = |p: Option<f64>| p.map_or("n/a".to_string(), |p| format!("{p:.3}"));
                println!(
                    "xi = {}: p_leading = {}, p_corrected = {}, max_err_corrected = {:.3e}, {}{}",
                    s.xi,
                    fmt(s.p_leading),
                    fmt(s.p_corrected),
                    s.max_err_corrected,
                    if s.pass { "pass" } else { "fail" },
                    if s.exact_match { " (exact match)" } else { "" }
                );
            }
        }
    }
    Ok(())
}
