//! Command-line driver.
//!
//! ```text
//! api-evolve --generate-patch <deprecated> <updated> --input <example> --output <patch>
//! api-evolve --apply-patch <deprecated> <updated> --input <target> --patch <patch> --output <file> [--report <json>]
//! api-evolve --run-corpus <root> [--report <json>]
//! ```
//!
//! Exit codes: 0 success, 1 nothing updated, 2 I/O or parse failure,
//! 3 unusable example or patch, 64 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::harness;
use crate::jast;
use crate::patchgen::{self, GenOptions};
use crate::pipeline::{self, UpdateError};
use crate::sigmap::ApiMapping;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOTHING_UPDATED: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_UNUSABLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "api-evolve", version, about = "Migrate deprecated Java API calls by example")]
struct Args {
    /// Synthesize a semantic patch from an after-update example.
    #[arg(long, conflicts_with_all = ["apply_patch", "run_corpus"])]
    generate_patch: bool,
    /// Apply a semantic patch to a target file.
    #[arg(long, conflicts_with = "run_corpus")]
    apply_patch: bool,
    /// Run the golden corpus rooted at this directory.
    #[arg(long, value_name = "ROOT")]
    run_corpus: Option<PathBuf>,
    /// Deprecated and updated API signatures (`pkg.Class#method(types)`).
    #[arg(value_name = "SIGNATURE")]
    signatures: Vec<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    patch: Option<PathBuf>,
    /// Write a JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Keep new arguments symbolic when their value comes from an old one.
    #[arg(long)]
    rewire_shared_args: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    GeneratePatch,
    ApplyPatch,
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub mode: Mode,
    pub deprecated_sig: String,
    pub updated_sig: String,
    pub input_path: PathBuf,
    pub output_path: PathBuf,
    pub patch_path: Option<PathBuf>,
    pub rewire_shared_args: bool,
    pub report_path: Option<PathBuf>,
}

/// A failed command: exit code and diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn usage(message: impl Into<String>) -> Failure {
    fail(EXIT_USAGE, format!("usage: {}", message.into()))
}

/// Parse arguments, run, and return the process exit code. Diagnostics go
/// to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(root) = &args.run_corpus {
        return report_result(run_corpus(root, args.report.as_deref()));
    }
    match config(args) {
        Ok(cfg) => report_result(match cfg.mode {
            Mode::GeneratePatch => run_generate(&cfg),
            Mode::ApplyPatch => run_apply(&cfg),
        }),
        Err(f) => report_result(Err(f)),
    }
}

fn report_result(r: Result<i32, Failure>) -> i32 {
    match r {
        Ok(code) => code,
        Err(f) => {
            eprintln!("api-evolve: {}", f.message);
            f.code
        }
    }
}

fn config(a: Args) -> Result<CliConfig, Failure> {
    let mode = match (a.generate_patch, a.apply_patch) {
        (true, false) => Mode::GeneratePatch,
        (false, true) => Mode::ApplyPatch,
        _ => return Err(usage("one of --generate-patch, --apply-patch or --run-corpus is required")),
    };
    let [dep, upd] = <[String; 2]>::try_from(a.signatures)
        .map_err(|s| usage(format!("expected 2 signatures (deprecated, updated), got {}", s.len())))?;
    let input_path = a.input.ok_or_else(|| usage("--input is required"))?;
    let output_path = a.output.ok_or_else(|| usage("--output is required"))?;
    match (mode, &a.patch) {
        (Mode::ApplyPatch, None) => return Err(usage("--patch is required with --apply-patch")),
        (Mode::GeneratePatch, Some(_)) => return Err(usage("--patch is only valid with --apply-patch")),
        _ => {}
    }
    Ok(CliConfig {
        mode,
        deprecated_sig: dep,
        updated_sig: upd,
        input_path,
        output_path,
        patch_path: a.patch,
        rewire_shared_args: a.rewire_shared_args,
        report_path: a.report,
    })
}

fn mapping(cfg: &CliConfig) -> Result<ApiMapping, Failure> {
    ApiMapping::parse(&cfg.deprecated_sig, &cfg.updated_sig).map_err(|e| fail(EXIT_USAGE, e.to_string()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

/// Write through a temporary file in the destination directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    write_atomic(path, contents).map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

pub fn run_generate(cfg: &CliConfig) -> Result<i32, Failure> {
    let m = mapping(cfg)?;
    let text = read(&cfg.input_path)?;
    let unit = jast::parse(&text).map_err(|e| fail(EXIT_IO, format!("{}: {e}", cfg.input_path.display())))?;
    let opts = GenOptions { rewire_shared_args: cfg.rewire_shared_args };
    let patch = patchgen::generate_patch(&unit, &m, opts).map_err(|e| {
        let code = if matches!(e, patchgen::PatchGenError::Parse(_)) { EXIT_IO } else { EXIT_UNUSABLE };
        fail(code, format!("{}: {e}", cfg.input_path.display()))
    })?;
    write(&cfg.output_path, &patchgen::render_patch(&patch))?;
    Ok(EXIT_OK)
}

pub fn run_apply(cfg: &CliConfig) -> Result<i32, Failure> {
    let m = mapping(cfg)?;
    let patch_path = cfg.patch_path.as_deref().expect("config requires --patch in apply mode");
    let patch_text = read(patch_path)?;
    let patch = patchgen::parse_patch(&patch_text).map_err(|e| fail(EXIT_UNUSABLE, format!("{}: {e}", patch_path.display())))?;
    let text = read(&cfg.input_path)?;
    let file = cfg.input_path.display().to_string();
    let outcome = pipeline::update_text(&patch, &m, &text, &file).map_err(|e| {
        let code = match e {
            UpdateError::AnchorMismatch { .. } => EXIT_UNUSABLE,
            UpdateError::Parse(_) | UpdateError::Denormalize(_) => EXIT_IO,
        };
        fail(code, format!("{file}: {e}"))
    })?;
    write(&cfg.output_path, &outcome.text)?;
    if let Some(r) = &cfg.report_path {
        let json = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        write(r, &format!("{json}\n"))?;
    }
    let r = &outcome.report;
    eprintln!("{file}: {} of {} sites updated", r.sites_updated, r.sites_found);
    Ok(if r.sites_updated > 0 { EXIT_OK } else { EXIT_NOTHING_UPDATED })
}

fn run_corpus(root: &Path, report: Option<&Path>) -> Result<i32, Failure> {
    let summary = harness::run_corpus(root).map_err(|e| fail(EXIT_IO, e.to_string()))?;
    print!("{}", summary.to_table());
    if let Some(r) = report {
        let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
        write(r, &format!("{json}\n"))?;
    }
    Ok(if summary.all_passed() { EXIT_OK } else { EXIT_NOTHING_UPDATED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("api-evolve".to_string()).chain(s.split_whitespace().map(str::to_string)).collect()
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run(argv("--generate-patch a.B#c() a.B#d() --input x.java")), EXIT_USAGE);
        assert_eq!(run(argv("--apply-patch a.B#c() a.B#d() --input x --output y")), EXIT_USAGE);
        assert_eq!(run(argv("--generate-patch a.B#c() --input x --output y")), EXIT_USAGE);
        assert_eq!(run(argv("--bogus")), EXIT_USAGE);
        assert_eq!(run(argv("--input x --output y a.B#c() a.B#d()")), EXIT_USAGE);
    }

    #[test]
    fn malformed_signature_is_a_usage_error() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("e.java");
        std::fs::write(&input, "class E {}").unwrap();
        let out = dir.path().join("p.cocci");
        let args = argv(&format!("--generate-patch nohash a.B#d() --input {} --output {}", input.display(), out.display()));
        assert_eq!(run(args), EXIT_USAGE);
        assert!(!out.exists());
    }

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.txt");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
