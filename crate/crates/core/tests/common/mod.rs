#![allow(dead_code)]

pub mod generator;
pub mod props;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
}

pub fn drawing_shapes() -> PathBuf {
    fixtures_dir().join("drawing-shapes")
}

/// The oracle's tag table for the drawing-shapes fixture, frozen as CSV.
pub fn expected_drawing_tags() -> Vec<(String, usize)> {
    let mut rdr = csv::Reader::from_path(fixtures_dir().join("drawing-shapes.tags.csv"))
        .expect("frozen table");
    rdr.records()
        .map(|r| {
            let r = r.expect("csv row");
            (r[0].to_owned(), r[1].parse().expect("weight"))
        })
        .collect()
}

pub fn codecloud() -> Command {
    Command::new(env!("CARGO_BIN_EXE_codecloud"))
}

pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    codecloud().args(args).output().expect("spawn codecloud")
}

pub fn run_sequential<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    codecloud()
        .env("CODECLOUD_NO_PARALLEL", "1")
        .args(args)
        .output()
        .expect("spawn codecloud")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}
