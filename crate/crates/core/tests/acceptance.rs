//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use api_evolve::dataflow::{resolve_expression, ResolutionContext};
use api_evolve::harness::{self, normalize_whitespace};
use api_evolve::jast::{self, Expr, ExprKind, Stmt, StmtKind};
use api_evolve::normal;
use api_evolve::patchgen::{self, GenOptions, SemanticPatch};
use api_evolve::pipeline;
use api_evolve::sigmap::{self, ApiMapping};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn case_dir(name: &str) -> PathBuf {
    corpus().join("cases").join(name)
}

fn read(p: &Path) -> Result<String, String> {
    fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
}

fn mapping_of(case: &Path) -> Result<ApiMapping, String> {
    let text = read(&case.join("mapping.txt"))?;
    let mut l = text.lines();
    ApiMapping::parse(l.next().unwrap_or(""), l.next().unwrap_or("")).map_err(|e| e.to_string())
}

fn patch_of(case: &Path) -> Result<(SemanticPatch, ApiMapping), String> {
    let m = mapping_of(case)?;
    let opts = GenOptions { rewire_shared_args: case.join("options.txt").exists() };
    let p = pipeline::generate_from_text(&read(&case.join("example.java"))?, &m, opts).map_err(|e| e.to_string())?;
    Ok((p, m))
}

fn java_files(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let Ok(rd) = fs::read_dir(dir) else { return out };
    for e in rd.flatten() {
        let p = e.path();
        if p.is_dir() {
            out.extend(java_files(&p));
        } else if p.extension().is_some_and(|x| x == "java") {
            out.push(p);
        }
    }
    out.sort();
    out
}

fn case_dirs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(corpus().join("cases"))
        .map(|rd| rd.flatten().map(|e| e.path()).filter(|p| p.is_dir()).collect())
        .unwrap_or_default();
    v.sort();
    v
}

fn vibrate_mapping() -> ApiMapping {
    ApiMapping::parse("android.os.Vibrator#vibrate(long)", "android.os.Vibrator#vibrate(android.os.VibrationEffect)").unwrap()
}

fn tokens_equal(a: &str, b: &str) -> bool {
    let toks = |s: &str| -> Vec<String> {
        jast::lexer::tokenize(s).map(|ts| ts.iter().map(|t| t.text(s).to_string()).collect()).unwrap_or_default()
    };
    toks(a) == toks(b)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let example = read(&case_dir("vibrate").join("example.java"))?;
    let p = pipeline::generate_from_text(&example, &vibrate_mapping(), GenOptions::default()).map_err(|e| e.to_string())?;
    let text = patchgen::render_patch(&p);
    let elapsed = start.elapsed();
    let lines: Vec<&str> = text.lines().collect();
    let has = |want: &str, prefix: &str| {
        lines.iter().any(|l| l.strip_prefix(prefix).is_some_and(|rest| tokens_equal(rest, want)))
    };
    let wanted = [
        ("VibrationEffect newParameterVariable0 = VibrationEffect.createOneShot(50, 175);", "+"),
        ("classIden.vibrate(newParameterVariable0);", "+"),
        ("if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {", "+"),
        ("classIden.vibrate(iden0);", ""),
    ];
    for (w, prefix) in wanted {
        let prefixed_ok = if prefix.is_empty() { lines.iter().any(|l| !l.starts_with('+') && tokens_equal(l, w)) } else { has(w, prefix) };
        if !prefixed_ok {
            return Err(format!("missing line `{w}` in:\n{text}"));
        }
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("patch lines present, {elapsed:?}"))
}

fn sdk_if_spans(stmts: &[Stmt], out: &mut Vec<jast::Span>) {
    for s in stmts {
        s.for_each_stmt(&mut |x| {
            if let StmtKind::If(i) = &x.kind {
                if sigmap::mentions_sdk_int(&i.cond) {
                    out.push(x.span);
                }
            }
        });
    }
}

fn block_stmts(s: &Stmt) -> Vec<&Stmt> {
    match &s.kind {
        StmtKind::Block(b) => b.stmts.iter().collect(),
        _ => vec![s],
    }
}

fn criterion_2() -> Check {
    let case = case_dir("vibrate");
    let (p, m) = patch_of(&case)?;
    let src = read(&case.join("targets/Main.java"))?;
    if !src.contains("MyVibrator.vibrate(milliseconds);") || !src.contains("hasVibrator()") {
        return Err("target lacks the hasVibrator() call site".into());
    }
    let out = pipeline::update_text(&p, &m, &src, "Main.java").map_err(|e| e.to_string())?;
    let unit = jast::parse(&out.text).map_err(|e| e.to_string())?;
    let mut found = Vec::new();
    for t in unit.types() {
        for meth in t.methods() {
            if let Some(b) = &meth.body {
                sdk_if_spans(&b.stmts, &mut found);
            }
        }
    }
    let [span] = found.as_slice() else {
        return Err(format!("expected one guarded block, found {}", found.len()));
    };
    let stmts = jast::parse_statements(&out.text[span.start..span.end]).map_err(|e| e.to_string())?;
    let StmtKind::If(i) = &stmts[0].kind else { return Err("not an if".into()) };
    let then_b = block_stmts(&i.then_branch);
    let else_b = block_stmts(i.else_branch.as_ref().ok_or("no else")?);
    let snippet = &out.text[span.start..span.end];
    let text_of = |s: &Stmt| &snippet[s.span.start..s.span.end];
    if else_b.len() != 1 || text_of(else_b[0]) != "MyVibrator.vibrate(milliseconds);" {
        return Err(format!("else branch differs:\n{snippet}"));
    }
    if then_b.len() != 1 || text_of(then_b[0]) != "MyVibrator.vibrate(VibrationEffect.createOneShot(50, 175));" {
        return Err(format!("then branch is not a single inlined call:\n{snippet}"));
    }
    if out.text.contains("newParameterVariable") || out.text.contains("normArg") {
        return Err("temporaries remain".into());
    }
    Ok("else branch byte-identical, then branch inlined".into())
}

fn criterion_3() -> Check {
    let case = case_dir("get_current_minute");
    let (p, m) = patch_of(&case)?;
    let src = read(&case.join("targets/Fresh.java"))?;
    if !src.contains("x = p.getCurrentMinute();") {
        return Err("fresh target lacks `x = p.getCurrentMinute();`".into());
    }
    let want = read(&case.join("expected/Fresh.java"))?;
    let out = pipeline::update_text(&p, &m, &src, "Fresh.java").map_err(|e| e.to_string())?;
    if out.text != want {
        return Err(format!("golden mismatch:\n{}", out.text));
    }
    let guarded_then = "if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {\n            x = p.getMinute();";
    if !out.text.contains(guarded_then) {
        return Err("then branch does not call getMinute()".into());
    }
    Ok("golden file equal".into())
}

fn criterion_4() -> Check {
    let src = "class Three {
    void m(Vibrator v, long a, long b) {
        v.vibrate(a);
        log(a);
        v.vibrate(b);
        if (a > b) {
            v.vibrate(a + b);
        }
    }
}
";
    let (p, m) = patch_of(&case_dir("vibrate"))?;
    let out = pipeline::update_text(&p, &m, src, "Three.java").map_err(|e| e.to_string())?;
    let blocks = out.text.matches("SDK_INT").count();
    if out.report.sites_updated != 3 || blocks != 3 {
        return Err(format!("sitesUpdated={}, guarded blocks={blocks}", out.report.sites_updated));
    }
    Ok("sitesUpdated=3, 3 guarded blocks".into())
}

fn criterion_5() -> Check {
    let mut n = 0;
    for case in case_dirs() {
        let (p, m) = patch_of(&case)?;
        for t in java_files(&case.join("targets")) {
            let once = pipeline::update_text(&p, &m, &read(&t)?, "t").map_err(|e| format!("{}: {e}", t.display()))?;
            let twice = pipeline::update_text(&p, &m, &once.text, "t").map_err(|e| format!("{}: {e}", t.display()))?;
            if twice.text != once.text {
                return Err(format!("{} changed on second application", t.display()));
            }
            n += 1;
        }
    }
    Ok(format!("{n} targets idempotent"))
}

#[derive(Clone, Copy)]
enum Rhs {
    Lit(i64),
    Var(usize),
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_da7a);
    let mut checked = 0;
    for prog_no in 0..200 {
        let steps = rng.gen_range(1..=8);
        let mut env: Vec<i64> = Vec::new();
        let mut body = String::new();
        for _ in 0..steps {
            let rhs = if env.is_empty() || rng.gen_bool(0.5) {
                Rhs::Lit(rng.gen_range(-50..100))
            } else {
                Rhs::Var(rng.gen_range(0..env.len()))
            };
            let (text, value) = match rhs {
                Rhs::Lit(v) => (v.to_string(), v),
                Rhs::Var(i) => (format!("v{i}"), env[i]),
            };
            if !env.is_empty() && rng.gen_bool(0.4) {
                let t = rng.gen_range(0..env.len());
                body.push_str(&format!("        v{t} = {text};\n"));
                env[t] = value;
            } else {
                body.push_str(&format!("        long v{} = {text};\n", env.len()));
                env.push(value);
            }
        }
        for (i, want) in env.iter().enumerate() {
            let src = format!("class P {{\n    void m() {{\n{body}        probe(v{i});\n    }}\n}}\n");
            let unit = jast::parse(&src).map_err(|e| e.to_string())?;
            let sites = sigmap::find_calls(&unit, "probe", 1);
            let site = sites.first().ok_or("probe call not found")?;
            let ctx = ResolutionContext::new(&unit, site.frames.clone());
            let v = resolve_expression(&site.args()[0], &ctx);
            if literal_value(&v.expr) != Some(*want) {
                return Err(format!("program {prog_no}, v{i}: resolved `{}`, expected {want}\n{src}", jast::render_expr(&v.expr)));
            }
            checked += 1;
        }
    }
    Ok(format!("200 programs, {checked} variables agree"))
}

fn literal_value(e: &Expr) -> Option<i64> {
    match &e.kind {
        ExprKind::Literal { lexeme, .. } => lexeme.parse().ok(),
        ExprKind::Unary { op, operand, postfix: false } if op == "-" => literal_value(operand).map(|v| -v),
        ExprKind::Paren(x) => literal_value(x),
        _ => None,
    }
}

fn criterion_7() -> Check {
    let mut files = 0;
    let mut updated = 0;
    let vib = vibrate_mapping();
    let mut groups: Vec<(ApiMapping, Vec<PathBuf>)> = Vec::new();
    for case in case_dirs() {
        groups.push((mapping_of(&case)?, java_files(&case)));
    }
    groups.push((vib, java_files(&corpus().join("fixtures"))));
    for (m, paths) in &groups {
        for f in paths {
            let text = read(f)?;
            let unit = jast::parse(&text).map_err(|e| format!("{}: {e}", f.display()))?;
            let sites = sigmap::find_invocations(&unit, &m.deprecated);
            let (norm, map) = normal::normalize(&unit, &sites, m).map_err(|e| e.to_string())?;
            let back = normal::denormalize(&norm, &map, &[]).map_err(|e| format!("{}: {e}", f.display()))?;
            if jast::print(&back) != text {
                return Err(format!("{} not restored by denormalize", f.display()));
            }
            files += 1;
        }
    }
    for case in case_dirs() {
        let (p, m) = patch_of(&case)?;
        for t in java_files(&case.join("targets")) {
            let out = pipeline::update_text(&p, &m, &read(&t)?, "t").map_err(|e| e.to_string())?;
            if out.report.sites_updated > 0 {
                updated += 1;
                if out.text.contains("normArg") || out.text.contains("newParameterVariable") {
                    return Err(format!("{}: temporaries remain", t.display()));
                }
            }
        }
    }
    Ok(format!("{files} files restored, {updated} updated outputs free of temporaries"))
}

fn criterion_8() -> Check {
    let files = java_files(&corpus());
    let mut opaque = 0;
    for f in &files {
        let text = read(f)?;
        let unit = jast::parse(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        if jast::print(&unit) != text {
            return Err(format!("{} does not round-trip", f.display()));
        }
        let mut has_opaque = unit.items.iter().any(|i| matches!(i, jast::Item::Opaque(_)));
        for t in unit.types() {
            for meth in t.methods() {
                if let Some(b) = &meth.body {
                    for s in &b.stmts {
                        s.for_each_stmt(&mut |x| has_opaque |= matches!(x.kind, StmtKind::Opaque(_)));
                    }
                }
            }
        }
        opaque += usize::from(has_opaque);
    }
    if opaque == 0 {
        return Err("no fixture exercises opaque statements".into());
    }
    Ok(format!("{} files byte-identical, {opaque} with opaque statements", files.len()))
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let s = harness::run_corpus(&corpus()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if s.cases.len() < 5 || s.total < 20 {
        return Err(format!("corpus too small: {} cases, {} targets", s.cases.len(), s.total));
    }
    if !s.all_passed() {
        return Err(format!("not all targets pass:\n{}", s.to_table()));
    }
    if elapsed >= Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} cases, {}/{} targets, {elapsed:?}", s.cases.len(), s.passed, s.total))
}

fn criterion_10() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let case = case_dir("vibrate");
    fs::copy(case.join("example.java"), dir.path().join("example.java")).map_err(|e| e.to_string())?;
    fs::copy(case.join("targets/Main.java"), dir.path().join("main.java")).map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_api-evolve");
    let run = |args: &str| {
        Command::new(bin)
            .args(args.split_whitespace())
            .current_dir(dir.path())
            .output()
            .map_err(|e| e.to_string())
    };
    let gen = run("--generate-patch android.os.Vibrator#vibrate(long) android.os.Vibrator#vibrate(android.os.VibrationEffect) --input example.java --output vibrate_update.cocci")?;
    if gen.status.code() != Some(0) || !dir.path().join("vibrate_update.cocci").is_file() {
        return Err(format!("generate: {:?} {}", gen.status, String::from_utf8_lossy(&gen.stderr)));
    }
    let apply = run("--apply-patch android.os.Vibrator#vibrate(long) android.os.Vibrator#vibrate(android.os.VibrationEffect) --input main.java --patch vibrate_update.cocci --output main_updated.java")?;
    if apply.status.code() != Some(0) {
        return Err(format!("apply: {:?} {}", apply.status, String::from_utf8_lossy(&apply.stderr)));
    }
    let got = read(&dir.path().join("main_updated.java"))?;
    let want = read(&case.join("expected/Main.java"))?;
    if normalize_whitespace(&got) != normalize_whitespace(&want) {
        return Err(format!("main_updated.java differs:\n{got}"));
    }
    Ok("both commands exit 0, artifacts written".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 vibrate patch synthesis", criterion_1),
        ("2 guarded application with inlined temporaries", criterion_2),
        ("3 getCurrentMinute end to end", criterion_3),
        ("4 multiple sites in one file", criterion_4),
        ("5 idempotence over corpus targets", criterion_5),
        ("6 dataflow vs forward interpreter", criterion_6),
        ("7 normalize/denormalize inverse", criterion_7),
        ("8 parser round-trip", criterion_8),
        ("9 corpus accuracy", criterion_9),
        ("10 command lines", criterion_10),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
