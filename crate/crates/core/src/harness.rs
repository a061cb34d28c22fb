//! Golden-corpus runner.
//!
//! Layout: `<root>/cases/<name>/` holding `mapping.txt` (deprecated
//! signature on line 1, replacement on line 2), `example.java`,
//! `targets/*.java`, `expected/*.java` with matching file names, and an
//! optional `options.txt` (`rewire-shared-args` enables that option).
//! Outputs are compared to expected files after whitespace normalization.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::patchgen::GenOptions;
use crate::pipeline;
use crate::sigmap::ApiMapping;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus root {0} is not a directory")]
    NotADirectory(PathBuf),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub name: String,
    pub mapping: ApiMapping,
    pub example_path: PathBuf,
    pub options: GenOptions,
    /// (target, expected) pairs sorted by file name.
    pub targets: Vec<(PathBuf, PathBuf)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetResult {
    pub target: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Layout or generation problem that prevented running the case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub targets: Vec<TargetResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub total: usize,
    pub accuracy: f64,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.failed == 0 && c.error.is_none())
    }

    pub fn to_table(&self) -> String {
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:>6}  {:>6}  status", "case", "passed", "failed");
        for c in &self.cases {
            let status = match (&c.error, c.failed) {
                (Some(e), _) => format!("ERROR: {e}"),
                (None, 0) => "ok".to_string(),
                (None, _) => {
                    let bad: Vec<_> = c.targets.iter().filter(|t| !t.passed).map(|t| t.target.as_str()).collect();
                    format!("FAIL: {}", bad.join(", "))
                }
            };
            let _ = writeln!(out, "{:<width$}  {:>6}  {:>6}  {status}", c.name, c.passed, c.failed);
        }
        let _ = writeln!(
            out,
            "total: {}/{} targets correct ({:.1}%), {} cases",
            self.passed,
            self.total,
            self.accuracy * 100.0,
            self.cases.len()
        );
        out
    }
}

/// Collapse blank runs within lines, drop trailing blanks and trailing
/// empty lines.
pub fn normalize_whitespace(text: &str) -> String {
    let lines: Vec<String> = text
        .lines()
        .map(|l| l.split([' ', '\t']).filter(|w| !w.is_empty()).collect::<Vec<_>>().join(" "))
        .collect();
    let end = lines.iter().rposition(|l| !l.is_empty()).map_or(0, |i| i + 1);
    lines[..end].join("\n")
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let rd = fs::read_dir(dir).map_err(|e| format!("cannot list {}: {e}", dir.display()))?;
    let mut out: Vec<PathBuf> = rd.filter_map(|e| e.ok().map(|e| e.path())).collect();
    out.sort();
    Ok(out)
}

/// Load one case directory.
pub fn load_case(dir: &Path) -> Result<CorpusCase, String> {
    let name = dir.file_name().map_or(String::new(), |n| n.to_string_lossy().into_owned());
    let mapping_text = read(&dir.join("mapping.txt"))?;
    let mut sigs = mapping_text.lines().map(str::trim).filter(|l| !l.is_empty());
    let (Some(dep), Some(rep)) = (sigs.next(), sigs.next()) else {
        return Err("mapping.txt needs two signature lines".to_string());
    };
    let mapping = ApiMapping::parse(dep, rep).map_err(|e| format!("mapping.txt: {e}"))?;
    let example_path = dir.join("example.java");
    if !example_path.is_file() {
        return Err("missing example.java".to_string());
    }
    let options_path = dir.join("options.txt");
    let mut options = GenOptions::default();
    if options_path.is_file() {
        for opt in read(&options_path)?.split_whitespace() {
            match opt {
                "rewire-shared-args" => options.rewire_shared_args = true,
                other => return Err(format!("options.txt: unknown option `{other}`")),
            }
        }
    }
    let mut targets = Vec::new();
    for t in sorted_entries(&dir.join("targets"))? {
        if t.extension().is_some_and(|e| e == "java") {
            let expected = dir.join("expected").join(t.file_name().expect("listed file has a name"));
            if !expected.is_file() {
                return Err(format!("no expected file for {}", t.display()));
            }
            targets.push((t, expected));
        }
    }
    Ok(CorpusCase { name, mapping, example_path, options, targets })
}

fn run_target(case: &CorpusCase, patch: &crate::patchgen::SemanticPatch, target: &Path, expected: &Path) -> TargetResult {
    let name = target.file_name().map_or(String::new(), |n| n.to_string_lossy().into_owned());
    let fail = |detail: String| TargetResult { target: name.clone(), passed: false, detail: Some(detail) };
    let (src, want) = match (read(target), read(expected)) {
        (Ok(s), Ok(w)) => (s, w),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    match pipeline::update_text(patch, &case.mapping, &src, &name) {
        Ok(out) if normalize_whitespace(&out.text) == normalize_whitespace(&want) => {
            TargetResult { target: name, passed: true, detail: None }
        }
        Ok(out) => {
            let got = normalize_whitespace(&out.text);
            let want = normalize_whitespace(&want);
            let line = got.lines().zip(want.lines()).position(|(a, b)| a != b).unwrap_or(got.lines().count().min(want.lines().count()));
            fail(format!("output differs from expected at line {}", line + 1))
        }
        Err(e) => fail(e.to_string()),
    }
}

/// Run one case: generate the patch once, apply it to every target.
pub fn run_case(dir: &Path) -> CaseResult {
    let name = dir.file_name().map_or(String::new(), |n| n.to_string_lossy().into_owned());
    let errored = |e: String| CaseResult { name: name.clone(), passed: 0, failed: 0, error: Some(e), targets: Vec::new() };
    let case = match load_case(dir) {
        Ok(c) => c,
        Err(e) => return errored(e),
    };
    let example = match read(&case.example_path) {
        Ok(t) => t,
        Err(e) => return errored(e),
    };
    let patch = match pipeline::generate_from_text(&example, &case.mapping, case.options) {
        Ok(p) => p,
        Err(e) => return errored(format!("patch generation: {e}")),
    };
    let targets: Vec<TargetResult> =
        case.targets.iter().map(|(t, e)| run_target(&case, &patch, t, e)).collect();
    let passed = targets.iter().filter(|t| t.passed).count();
    CaseResult { name, passed, failed: targets.len() - passed, error: None, targets }
}

/// Run every case under `<root>/cases`, in name order.
pub fn run_corpus(root: &Path) -> Result<CorpusSummary, CorpusError> {
    if !root.is_dir() {
        return Err(CorpusError::NotADirectory(root.to_path_buf()));
    }
    let cases_dir = root.join("cases");
    let mut dirs = Vec::new();
    if cases_dir.is_dir() {
        let rd = fs::read_dir(&cases_dir).map_err(|source| CorpusError::Io { path: cases_dir.clone(), source })?;
        dirs = rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.is_dir()).collect();
        dirs.sort();
    }
    let cases: Vec<CaseResult> = dirs.iter().map(|d| run_case(d)).collect();
    let passed = cases.iter().map(|c| c.passed).sum();
    let total = cases.iter().map(|c| c.passed + c.failed).sum();
    let accuracy = if total == 0 { 1.0 } else { passed as f64 / total as f64 };
    Ok(CorpusSummary { cases, passed, total, accuracy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patchgen::tests::VIBRATE_EXAMPLE;

    const TARGET: &str = "class A {\n    void m(Vibrator v, long a) {\n        v.vibrate(a);\n    }\n}\n";
    const EXPECTED: &str = "import android.os.VibrationEffect;

class A {
    void m(Vibrator v, long a) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            v.vibrate(VibrationEffect.createOneShot(50,   175));
        } else {
            v.vibrate(a);
        }
    }
}


";

    fn write_case(root: &Path, name: &str, expected: &str) {
        let dir = root.join("cases").join(name);
        fs::create_dir_all(dir.join("targets")).unwrap();
        fs::create_dir_all(dir.join("expected")).unwrap();
        fs::write(
            dir.join("mapping.txt"),
            "android.os.Vibrator#vibrate(long)\nandroid.os.Vibrator#vibrate(android.os.VibrationEffect)\n",
        )
        .unwrap();
        fs::write(dir.join("example.java"), VIBRATE_EXAMPLE).unwrap();
        fs::write(dir.join("targets/A.java"), TARGET).unwrap();
        fs::write(dir.join("expected/A.java"), expected).unwrap();
        fs::write(dir.join("targets/B.java"), TARGET.replace("class A", "class B")).unwrap();
        fs::write(dir.join("expected/B.java"), EXPECTED.replace("class A", "class B")).unwrap();
    }

    #[test]
    fn whitespace_normalization() {
        assert_eq!(normalize_whitespace("a  b \t\n\n  c\n\n\n"), "a b\n\nc");
    }

    #[test]
    fn passing_and_failing_cases_are_isolated() {
        let root = tempfile::tempdir().unwrap();
        write_case(root.path(), "good", EXPECTED);
        write_case(root.path(), "wrong", &EXPECTED.replace("175", "176"));
        let s = run_corpus(root.path()).unwrap();
        assert_eq!(s.cases.len(), 2);
        assert_eq!((s.cases[0].passed, s.cases[0].failed), (2, 0));
        assert_eq!((s.cases[1].passed, s.cases[1].failed), (1, 1));
        assert!(!s.all_passed());
        assert_eq!(s.passed, 3);
        assert!(s.to_table().contains("FAIL: A.java"));
        let again = run_corpus(root.path()).unwrap();
        assert_eq!(s.to_table(), again.to_table());
        assert_eq!(serde_json::to_string(&s).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn empty_corpus_is_vacuously_fine() {
        let root = tempfile::tempdir().unwrap();
        let s = run_corpus(root.path()).unwrap();
        assert!(s.cases.is_empty());
        assert!(s.all_passed());
        assert!(run_corpus(&root.path().join("missing")).is_err());
    }

    #[test]
    fn layout_errors_stay_in_their_case() {
        let root = tempfile::tempdir().unwrap();
        write_case(root.path(), "good", EXPECTED);
        let bad = root.path().join("cases/broken");
        fs::create_dir_all(&bad).unwrap();
        fs::write(bad.join("mapping.txt"), "only.one#line()\n").unwrap();
        let s = run_corpus(root.path()).unwrap();
        assert!(s.cases[0].error.as_deref().unwrap().contains("two signature lines"));
        assert_eq!(s.cases[1].passed, 2);
    }
}
