//! Scene files, command workflows, SVG export and the local JSON service
//! built on [`pblab_core`].

mod error;
pub mod run;
pub mod scene;
pub mod service;
pub mod svg;

pub use error::{ErrorBody, LabError};
pub use run::{run_dualize, run_orbit, run_perturb, run_scan, run_verify, PerturbParams, RunResult};
pub use scene::{parse_scene, NumericMode, Scene};
pub use svg::{render_scene, render_svg, RenderOptions};
