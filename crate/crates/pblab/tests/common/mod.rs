#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn scenes_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenes")
}

/// Every bundled scene, sorted by file name.
pub fn corpus() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(scenes_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
}

pub fn scene_path(name: &str) -> PathBuf {
    scenes_dir().join(format!("{name}.json"))
}

pub fn load(name: &str) -> pblab::Scene {
    pblab::parse_scene(&std::fs::read(scene_path(name)).unwrap()).unwrap()
}

pub fn pblab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pblab"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn is_error_scene(path: &std::path::Path) -> bool {
    path.file_name().unwrap().to_string_lossy().starts_with("error_")
}
