//! Helpers shared by the command-line tests.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

pub fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(p).expect("golden file")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `fole` binary with `args`; `@name` expands to a data file path.
pub fn fole(args: &[&str]) -> Run {
    let args: Vec<String> = args
        .iter()
        .map(|a| a.strip_prefix('@').map_or_else(|| a.to_string(), data))
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_fole")).args(&args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("UTF-8 output"),
        stderr: String::from_utf8(out.stderr).expect("UTF-8 output"),
    }
}

/// Every subcommand against an input for each exit code it can produce.
/// `extent` has no exit-1 path: it reads a classification and checks nothing.
pub const EXIT_MATRIX: &[(&[&str], i32)] = &[
    (&["validate", "@fixture.fole"], 0),
    (&["validate", "@arity_drop.fole"], 1),
    (&["validate", "@malformed.fole"], 2),
    (&["check-morphism", "@renaming.morph.json"], 0),
    (&["check-morphism", "@broken_entity.morph.json"], 1),
    (&["check-morphism", "@partial.morph.json"], 1),
    (&["check-morphism", "@renaming.morph.json", "--fiber", "schema"], 0),
    (&["check-morphism", "@renaming.morph.json", "--fiber", "universe"], 1),
    (&["check-morphism", "@missing_ref.morph.json"], 2),
    (&["reduct", "@reduct.morph.json"], 0),
    (&["reduct", "@bad_reduct.morph.json"], 1),
    (&["reduct", "@missing_ref.morph.json"], 2),
    (&["image", "@image.morph.json"], 0),
    (&["image", "@bad_image.morph.json"], 1),
    (&["image", "@missing_ref.morph.json"], 2),
    (&["embed-keys", "@fixture.fole"], 0),
    (&["embed-keys", "@arity_drop.fole"], 1),
    (&["embed-keys", "@reserved.fole"], 2),
    (&["interpret", "@fixture.fole", "--type", "Act"], 0),
    (&["interpret", "@arity_drop.fole", "--type", "Act"], 1),
    (&["interpret", "@fixture.fole", "--type", "Str"], 2),
    (&["interpret", "@fixture.fole", "--type", "Act", "--embed", "--relation"], 2),
    (&["extent", "@fixture.fole", "--type", "Str", "--side", "attr"], 0),
    (&["extent", "@fixture.fole", "--type", "Str"], 2),
    (&["integrity", "@fixture.fole"], 0),
    (&["integrity", "@stray_fk.fole"], 1),
    (&["integrity", "@malformed.fole"], 2),
    (&["factorize", "@renaming.morph.json"], 0),
    (&["factorize", "@broken_entity.morph.json"], 1),
    (&["factorize", "@missing_ref.morph.json"], 2),
    (&["linearize", "@fixture.fole"], 0),
    (&["linearize", "@arity_drop.fole"], 1),
    (&["linearize", "@fixture.fole", "--format", "turtle"], 2),
    (&["olog", "@unified.fole"], 0),
    (&["olog", "@fixture.fole"], 1),
    (&["olog", "@malformed.fole"], 2),
    (&["unify", "@fixture.fole"], 0),
    (&["unify", "@unify_conflict.fole"], 1),
    (&["unify", "@reserved.fole"], 2),
    (&["--help"], 0),
    (&[], 2),
    (&["frobnicate"], 2),
];

pub const SUBCOMMANDS: [&str; 12] = [
    "validate",
    "check-morphism",
    "reduct",
    "image",
    "embed-keys",
    "interpret",
    "extent",
    "integrity",
    "factorize",
    "linearize",
    "olog",
    "unify",
];
