use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pblab::{
    parse_scene, render_scene, run_dualize, run_orbit, run_perturb, run_scan, run_verify, service, LabError,
    NumericMode, PerturbParams, RenderOptions, Scene,
};
use serde::Serialize;

/// Exit codes: 0 success, 1 orbit not periodic (verify), 2 usage,
/// 3 schema error, 4 validation error, 5 I/O error.
#[derive(Parser)]
#[command(name = "pblab", version, about = "Projective billiards laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Mode {
    Exact,
    Float,
}

impl From<Mode> for NumericMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Exact => NumericMode::Exact,
            Mode::Float => NumericMode::Float,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the scene's chord and print the orbit.
    Orbit {
        scene: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Exit 0 iff the orbit is m-periodic.
    Verify {
        scene: PathBuf,
        #[arg(long)]
        period: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Periodicity over a grid of starting chords.
    Scan {
        scene: PathBuf,
        #[arg(long)]
        period: Option<usize>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Orbit together with its polar dual about the origin.
    Dualize {
        scene: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Fraction of randomly perturbed tables that stay periodic.
    Perturb {
        scene: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        period: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write an SVG picture of the table and orbit.
    Render {
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Serve the JSON API on the loopback interface.
    Serve {
        #[arg(long, env = "PBLAB_PORT", default_value_t = service::DEFAULT_PORT)]
        port: u16,
    },
}

enum Failure {
    Lab(LabError),
    Io(PathBuf, std::io::Error),
}

impl From<LabError> for Failure {
    fn from(err: LabError) -> Self {
        Failure::Lab(err)
    }
}

fn load(path: &PathBuf) -> Result<Scene, Failure> {
    let mut bytes = Vec::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    read.map_err(|e| Failure::Io(path.clone(), e))?;
    Ok(parse_scene(&bytes)?)
}

fn print<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("results serialize");
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn execute(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Orbit { scene, steps, mode } => print(&run_orbit(&load(&scene)?, steps, mode.map(Into::into))?),
        Command::Verify { scene, period, mode } => {
            let report = run_verify(&load(&scene)?, period, mode.map(Into::into))?;
            print(&report);
            if !report.is_periodic {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Scan {
            scene,
            period,
            grid,
            mode,
        } => print(&run_scan(&load(&scene)?, period, grid, mode.map(Into::into))?),
        Command::Dualize { scene, steps, mode } => print(&run_dualize(&load(&scene)?, steps, mode.map(Into::into))?),
        Command::Perturb {
            scene,
            vertex,
            radius,
            samples,
            period,
            seed,
        } => {
            let params = PerturbParams {
                vertex,
                radius,
                samples,
                period,
                seed,
            };
            print(&run_perturb(&load(&scene)?, params)?)
        }
        Command::Render {
            scene,
            out,
            steps,
            samples,
        } => {
            let options = RenderOptions {
                transverse_samples: samples,
                ..RenderOptions::default()
            };
            let svg = render_scene(&load(&scene)?, steps, &options)?;
            std::fs::write(&out, svg).map_err(|e| Failure::Io(out.clone(), e))?;
        }
        Command::Serve { port } => {
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(PathBuf::new(), e))?;
            runtime
                .block_on(service::serve(port))
                .map_err(|e| Failure::Io(PathBuf::new(), e))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Lab(err)) => {
            eprintln!("{}", serde_json::to_string(&err.body()).expect("errors serialize"));
            ExitCode::from(match err {
                LabError::Schema { .. } => 3,
                LabError::Validation(_) => 4,
            })
        }
        Err(Failure::Io(path, err)) => {
            let body = serde_json::json!({
                "error": "io",
                "path": path.display().to_string(),
                "message": err.to_string(),
            });
            eprintln!("{body}");
            ExitCode::from(5)
        }
    }
}
