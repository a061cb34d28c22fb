//! Patch application.
//!
//! Each call to the anchor method (the deepest call in the context pattern)
//! is traced to its enclosing statement, which is unified with the context
//! pattern. On a match the statement is replaced by the hunk's guarded
//! `if`/`else`, with the original statement kept verbatim in its branch.
//! Definitions and imports listed in the patch's `@needs@` section are
//! transplanted once at least one site was updated.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dataflow::{DefKind, Definition};
use crate::jast::lexer;
use crate::jast::render::INDENT;
use crate::jast::{self, render_expr, CompilationUnit, Edit, Expr, ExprKind, Frame, Span, Stmt, StmtKind, TypeDecl};
use crate::normal::fresh_name;
use crate::patchgen::{Fragment, MetaKind, MetaVar, PatchLine, SemanticPatch, PATCH_TEMP_PREFIX};
use crate::sigmap::{self, CallSite};

/// Suffix given to a transplanted method whose name clashes with an
/// existing method of different arity.
pub const RENAME_SUFFIX: &str = "_apievolve";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetaBinding {
    pub assignments: BTreeMap<String, Expr>,
}

impl MetaBinding {
    pub fn get(&self, name: &str) -> Option<&Expr> {
        self.assignments.get(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SkipReason {
    AlreadyGuarded,
    NoMatch,
    NonStatementContext,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedSite {
    #[serde(skip)]
    pub span: Span,
    pub line: usize,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UpdateReport {
    pub file: String,
    pub sites_found: usize,
    pub sites_updated: usize,
    pub skipped: Vec<SkippedSite>,
    pub copied: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Applied {
    pub unit: CompilationUnit,
    pub report: UpdateReport,
    /// Fresh names given to the patch's temporaries, for denormalization.
    pub patch_temps: Vec<String>,
}

fn kind_of(metavars: &[MetaVar], name: &str) -> Option<MetaKind> {
    metavars.iter().find(|m| m.name == name).map(|m| m.kind)
}

/// Unify `pattern` with `target`. Identifier metavariables bind only simple
/// names; a metavariable used twice must bind the same (canonical) text.
pub fn match_statement(pattern: &Stmt, metavars: &[MetaVar], target: &Stmt) -> Option<MetaBinding> {
    let mut b = MetaBinding::default();
    let ok = match (&pattern.kind, &target.kind) {
        (StmtKind::Expr(p), StmtKind::Expr(t)) => unify(p, t, metavars, &mut b),
        (StmtKind::Return(Some(p)), StmtKind::Return(Some(t))) => unify(p, t, metavars, &mut b),
        (StmtKind::Return(None), StmtKind::Return(None)) => true,
        (StmtKind::LocalVar(p), StmtKind::LocalVar(t)) => {
            p.ty.text == t.ty.text
                && p.vars.len() == t.vars.len()
                && p.vars.iter().zip(&t.vars).all(|(pv, tv)| {
                    pv.name == tv.name
                        && match (&pv.init, &tv.init) {
                            (Some(pi), Some(ti)) => unify(pi, ti, metavars, &mut b),
                            (None, None) => true,
                            _ => false,
                        }
                })
        }
        _ => false,
    };
    ok.then_some(b)
}

fn bind(name: &str, t: &Expr, b: &mut MetaBinding) -> bool {
    match b.assignments.get(name) {
        Some(prev) => render_expr(prev) == render_expr(t),
        None => {
            b.assignments.insert(name.to_string(), t.clone());
            true
        }
    }
}

fn unify_all(ps: &[Expr], ts: &[Expr], mv: &[MetaVar], b: &mut MetaBinding) -> bool {
    ps.len() == ts.len() && ps.iter().zip(ts).all(|(p, t)| unify(p, t, mv, b))
}

fn unify(p: &Expr, t: &Expr, mv: &[MetaVar], b: &mut MetaBinding) -> bool {
    use ExprKind::*;
    if let Name(n) = &p.kind {
        match kind_of(mv, n) {
            Some(MetaKind::Identifier) => return matches!(t.kind, Name(_)) && bind(n, t, b),
            Some(MetaKind::Expression) => return bind(n, t, b),
            None => {}
        }
    }
    match (&p.kind, &t.kind) {
        (Literal { kind: pk, lexeme: pl }, Literal { kind: tk, lexeme: tl }) => pk == tk && pl == tl,
        (Name(a), Name(c)) => a == c,
        (FieldAccess { receiver: pr, name: pn }, FieldAccess { receiver: tr, name: tn }) => {
            pn == tn && unify(pr, tr, mv, b)
        }
        (
            MethodCall { receiver: pr, name: pn, args: pa },
            MethodCall { receiver: tr, name: tn, args: ta },
        ) => {
            pn == tn
                && match (pr, tr) {
                    (Some(pr), Some(tr)) => unify(pr, tr, mv, b),
                    (None, None) => true,
                    _ => false,
                }
                && unify_all(pa, ta, mv, b)
        }
        (
            New { ty: pt, args: pa, body_text: pb, .. },
            New { ty: tt, args: ta, body_text: tb, .. },
        ) => pt.text == tt.text && pb == tb && unify_all(pa, ta, mv, b),
        (Binary { op: po, lhs: pl, rhs: pr }, Binary { op: to, lhs: tl, rhs: tr }) => {
            po == to && unify(pl, tl, mv, b) && unify(pr, tr, mv, b)
        }
        (
            Unary { op: po, operand: pe, postfix: pp },
            Unary { op: to, operand: te, postfix: tp },
        ) => po == to && pp == tp && unify(pe, te, mv, b),
        (Assign { op: po, lhs: pl, rhs: pr }, Assign { op: to, lhs: tl, rhs: tr }) => {
            po == to && unify(pl, tl, mv, b) && unify(pr, tr, mv, b)
        }
        (Cast { ty: pt, operand: pe }, Cast { ty: tt, operand: te }) => pt.text == tt.text && unify(pe, te, mv, b),
        (Paren(pe), Paren(te)) => unify(pe, te, mv, b),
        (
            Conditional { cond: pc, then: pt, otherwise: po },
            Conditional { cond: tc, then: tt, otherwise: to },
        ) => unify(pc, tc, mv, b) && unify(pt, tt, mv, b) && unify(po, to, mv, b),
        (ArrayAccess { array: pa, index: pi }, ArrayAccess { array: ta, index: ti }) => {
            unify(pa, ta, mv, b) && unify(pi, ti, mv, b)
        }
        (InstanceOf { operand: pe, ty: pt }, InstanceOf { operand: te, ty: tt }) => {
            pt.text == tt.text && unify(pe, te, mv, b)
        }
        (Opaque(a), Opaque(c)) => a.split_whitespace().eq(c.split_whitespace()),
        _ => false,
    }
}

/// Replace metavariable names in `e` by their bindings.
pub fn substitute_expr(e: &mut Expr, b: &MetaBinding) {
    if let ExprKind::Name(n) = &e.kind {
        if let Some(v) = b.get(n) {
            *e = v.clone();
            return;
        }
    }
    for c in e.children_mut() {
        substitute_expr(c, b);
    }
}

/// Instantiate a pattern statement; declared variables named in `b` are
/// renamed to the bound name.
pub fn substitute_stmt(s: &Stmt, b: &MetaBinding) -> Stmt {
    let mut s = s.clone();
    match &mut s.kind {
        StmtKind::LocalVar(d) => {
            for v in &mut d.vars {
                if let Some(n) = b.get(&v.name).and_then(Expr::as_name) {
                    v.name = n.to_string();
                }
                if let Some(init) = &mut v.init {
                    substitute_expr(init, b);
                }
            }
        }
        StmtKind::Expr(e) | StmtKind::Return(Some(e)) => substitute_expr(e, b),
        _ => {}
    }
    s
}

/// The statement directly holding a call, unless a member boundary
/// (field initializer, method, type) comes first.
fn holding_stmt<'a>(frames: &[Frame<'a>]) -> Option<&'a Stmt> {
    for f in frames.iter().rev() {
        match *f {
            Frame::Stmt { stmt, .. } => return Some(stmt),
            Frame::Branch { .. } => {}
            Frame::Type(_) | Frame::Method(_) | Frame::Field(_) => return None,
        }
    }
    None
}

/// The type that receives transplanted members: the first public top-level
/// type, else the first top-level type.
fn primary_type(unit: &CompilationUnit) -> Option<&TypeDecl> {
    unit.types()
        .find(|t| t.modifiers.has(jast::Modifier::Public))
        .or_else(|| unit.types().next())
}

fn all_types(unit: &CompilationUnit) -> Vec<&TypeDecl> {
    fn go<'a>(t: &'a TypeDecl, out: &mut Vec<&'a TypeDecl>) {
        out.push(t);
        for n in t.nested() {
            go(n, out);
        }
    }
    let mut out = Vec::new();
    for t in unit.types() {
        go(t, &mut out);
    }
    out
}

/// What to copy and under which names.
struct Transplant {
    copies: Vec<Definition>,
    renames: Vec<(String, String)>,
    /// Simple names to write fully qualified instead of importing.
    qualify: Vec<(String, String)>,
    imports: Vec<String>,
}

fn plan_transplant(unit: &CompilationUnit, patch: &SemanticPatch) -> Transplant {
    let primary = primary_type(unit);
    let types = all_types(unit);
    let mut copies = Vec::new();
    let mut renames = Vec::new();
    for d in &patch.needs.definitions {
        let exists = match d.kind {
            DefKind::Method { arity } => {
                let same: Vec<_> = primary.into_iter().flat_map(|t| t.methods()).filter(|m| m.name == d.name).collect();
                if same.iter().any(|m| m.arity() == arity) {
                    true
                } else {
                    if !same.is_empty() {
                        renames.push((d.name.clone(), format!("{}{RENAME_SUFFIX}", d.name)));
                    }
                    false
                }
            }
            DefKind::Field => primary.is_some_and(|t| t.field(&d.name).is_some()),
            DefKind::Type => types.iter().any(|t| t.name == d.name),
        };
        if !exists {
            copies.push(d.clone());
        }
    }
    let package = unit.package.as_ref().map(|p| p.name.as_str());
    let mut qualify = Vec::new();
    let mut imports = Vec::new();
    for fqn in &patch.needs.imports {
        let Some((pkg, simple)) = fqn.rsplit_once('.') else { continue };
        let present = unit.imports.iter().any(|i| {
            !i.is_static && ((i.name == *fqn && !i.wildcard) || (i.wildcard && i.name == pkg))
        });
        if present || package == Some(pkg) {
            continue;
        }
        let shadowed = unit.imports.iter().any(|i| !i.is_static && !i.wildcard && i.name.rsplit('.').next() == Some(simple))
            || types.iter().any(|t| t.name == simple);
        if shadowed {
            qualify.push((simple.to_string(), fqn.clone()));
        } else {
            imports.push(fqn.clone());
        }
    }
    Transplant { copies, renames, qualify, imports }
}

impl Transplant {
    fn rewrite(&self, text: &str) -> String {
        let renamed = lexer::rename_identifiers(
            text,
            &|n| self.renames.iter().find(|(a, _)| a == n).map(|(_, b)| b.clone()),
            true,
        );
        lexer::rename_identifiers(&renamed, &|n| self.qualify.iter().find(|(a, _)| a == n).map(|(_, b)| b.clone()), false)
    }

    fn edits(&self, unit: &CompilationUnit, copied: &mut Vec<String>) -> Vec<Edit> {
        let text = &unit.text;
        let nl = unit.newline();
        let mut edits = Vec::new();
        let primary = primary_type(unit);
        let mut members = String::new();
        let mut tail = String::new();
        let member_indent = primary
            .and_then(|t| t.members.first())
            .map(|m| jast::line_indent(text, m.span().start).to_string())
            .or_else(|| primary.map(|t| format!("{}{INDENT}", jast::line_indent(text, t.body_end))))
            .unwrap_or_default();
        for d in &self.copies {
            let name = self.renames.iter().find(|(a, _)| *a == d.name).map_or(d.name.clone(), |(_, b)| b.clone());
            let body = self.rewrite(&d.text);
            match d.kind {
                DefKind::Type => {
                    let body = strip_leading_modifiers(&body);
                    tail.push_str(nl);
                    tail.push_str(&reindent(&body, "", nl));
                    tail.push_str(nl);
                }
                _ if primary.is_some() => {
                    members.push_str(nl);
                    members.push_str(&member_indent);
                    members.push_str(&reindent(&body, &member_indent, nl));
                    members.push_str(nl);
                }
                _ => {
                    tail.push_str(nl);
                    tail.push_str(&reindent(&body, "", nl));
                    tail.push_str(nl);
                }
            }
            copied.push(name);
        }
        if !members.is_empty() {
            let t = primary.expect("members only collected with a primary type");
            if t.kind == jast::TypeKind::Implicit {
                tail.insert_str(0, &members);
            } else if jast::starts_line(text, t.body_end) {
                let line_start = text[..t.body_end].rfind('\n').map_or(0, |i| i + 1);
                edits.push(Edit::insert(line_start, members));
            } else {
                edits.push(Edit::insert(t.body_end, members));
            }
        }
        if !tail.is_empty() {
            let lead = if text.ends_with('\n') { "" } else { nl };
            edits.push(Edit::insert(text.len(), format!("{lead}{}", tail)));
        }
        if !self.imports.is_empty() {
            let lines: String = self.imports.iter().map(|i| format!("import {i};")).collect::<Vec<_>>().join(nl);
            let edit = if let Some(last) = unit.imports.last() {
                Edit::insert(last.span.end, format!("{nl}{lines}"))
            } else if let Some(p) = &unit.package {
                let semi = text[p.span.end..].find(';').map_or(p.span.end, |i| p.span.end + i + 1);
                Edit::insert(semi, format!("{nl}{nl}{lines}"))
            } else {
                Edit::insert(0, format!("{lines}{nl}{nl}"))
            };
            edits.push(edit);
        }
        edits
    }
}

/// Remove access and `static` modifiers from the front of a declaration.
fn strip_leading_modifiers(text: &str) -> String {
    let mut rest = text;
    loop {
        let trimmed = rest.trim_start();
        let word_end = trimmed.find(|c: char| !c.is_alphanumeric()).unwrap_or(trimmed.len());
        match &trimmed[..word_end] {
            "public" | "private" | "protected" | "static" => rest = &trimmed[word_end..],
            _ => return trimmed.to_string(),
        }
    }
}

/// Re-indent continuation lines of a verbatim member so that its last line
/// sits at `indent`.
fn reindent(text: &str, indent: &str, nl: &str) -> String {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() < 2 {
        return text.trim().to_string();
    }
    let last = lines[lines.len() - 1];
    let base = last.len() - last.trim_start().len();
    let mut out = lines[0].trim_end().to_string();
    for l in &lines[1..] {
        out.push_str(nl);
        if l.trim().is_empty() {
            continue;
        }
        let lead = l.len() - l.trim_start().len();
        out.push_str(indent);
        out.push_str(l[lead.min(base)..].trim_end());
    }
    out
}

/// Apply `patch` to every matching site of a (normalized) unit.
pub fn apply_patch(patch: &SemanticPatch, unit: &CompilationUnit, file: &str) -> Applied {
    let mut report = UpdateReport { file: file.to_string(), ..Default::default() };
    let Some((anchor, arity)) = patch.anchor() else {
        return Applied { unit: unit.clone(), report, patch_temps: Vec::new() };
    };
    let text = &unit.text;
    let nl = unit.newline();
    let sites: Vec<CallSite<'_>> = sigmap::find_calls(unit, &anchor, arity);
    report.sites_found = sites.len();
    let plan = plan_transplant(unit, patch);
    let context = patch.context();
    let patch_temps = patch.temps();
    let guard = jast::parse_expression(&patch.guard_cond).map_or(patch.guard_cond.clone(), |e| render_expr(&e));
    let guard = plan.rewrite(&guard);
    let mut counter = 0;
    let mut fresh_temps = Vec::new();
    let mut edits: Vec<Edit> = Vec::new();
    let skip = |site: &CallSite<'_>, reason| {
        let line = lexer::line_of(text, site.call.span.start);
        SkippedSite { span: site.call.span, line, reason }
    };
    for site in &sites {
        if site.already_guarded() {
            report.skipped.push(skip(site, SkipReason::AlreadyGuarded));
            continue;
        }
        let Some(stmt) = holding_stmt(&site.frames) else {
            report.skipped.push(skip(site, SkipReason::NonStatementContext));
            continue;
        };
        let taken = edits.iter().any(|e| e.span.overlaps(stmt.span));
        let binding = if taken { None } else { match_statement(&context.stmt, &patch.metavars, stmt) };
        let Some(mut binding) = binding else {
            report.skipped.push(skip(site, SkipReason::NoMatch));
            continue;
        };
        for t in &patch_temps {
            let fresh = fresh_name(text, PATCH_TEMP_PREFIX, &mut counter);
            binding.assignments.insert(t.clone(), Expr::name(fresh.clone()));
            fresh_temps.push(fresh);
        }
        let base = jast::line_indent(text, stmt.span.start);
        let original = unit.slice(stmt.span);
        let mut out = String::new();
        let mut depth = 0usize;
        let mut first = true;
        let mut line = |out: &mut String, depth: usize, s: &str| {
            if !first {
                out.push_str(nl);
                out.push_str(base);
                out.push_str(&INDENT.repeat(depth));
            }
            first = false;
            out.push_str(s);
        };
        for l in &patch.hunk {
            match l {
                PatchLine::Ellipsis | PatchLine::Remove(_) => {}
                PatchLine::Context(_) => line(&mut out, depth, original),
                PatchLine::Add(Fragment::GuardOpen(_)) => {
                    line(&mut out, depth, &format!("if ({guard}) {{"));
                    depth += 1;
                }
                PatchLine::Add(Fragment::ElseOpen) => line(&mut out, depth.saturating_sub(1), "} else {"),
                PatchLine::Add(Fragment::Close) => {
                    depth = depth.saturating_sub(1);
                    line(&mut out, depth, "}");
                }
                PatchLine::Add(Fragment::Stmt(p)) => {
                    let indent = format!("{base}{}", INDENT.repeat(depth));
                    let s = jast::render_stmt(&substitute_stmt(&p.stmt, &binding), &indent, nl);
                    line(&mut out, depth, &plan.rewrite(&s));
                }
            }
        }
        edits.push(Edit::replace(stmt.span, out));
        report.sites_updated += 1;
    }
    if report.sites_updated > 0 {
        edits.extend(plan.edits(unit, &mut report.copied));
    }
    let out = jast::splice(unit, &edits).expect("site edits are disjoint");
    let new_unit = jast::parse(&out).expect("replacement text is balanced");
    Applied { unit: new_unit, report, patch_temps: fresh_temps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jast::parse;
    use crate::patchgen::{generate_patch, parse_patch, GenOptions};
    use crate::sigmap::ApiMapping;
    use proptest::prelude::*;

    fn stmt(s: &str) -> Stmt {
        jast::parse_statements(s).unwrap().remove(0)
    }

    fn ids(names: &[&str]) -> Vec<MetaVar> {
        names
            .iter()
            .map(|n| MetaVar {
                kind: if n.starts_with("exp") { MetaKind::Expression } else { MetaKind::Identifier },
                name: n.to_string(),
            })
            .collect()
    }

    fn bound(b: &MetaBinding) -> Vec<(String, String)> {
        b.assignments.iter().map(|(k, v)| (k.clone(), render_expr(v))).collect()
    }

    #[test]
    fn binds_receiver_and_argument() {
        let mv = ids(&["iden0", "classIden"]);
        let b = match_statement(&stmt("classIden.vibrate(iden0);"), &mv, &stmt("MyVibrator.vibrate(milliseconds);")).unwrap();
        assert_eq!(
            bound(&b),
            vec![("classIden".into(), "MyVibrator".into()), ("iden0".into(), "milliseconds".into())]
        );
        assert!(match_statement(&stmt("classIden.vibrate(iden0);"), &mv, &stmt("MyVibrator.vibrate(a, b);")).is_none());
    }

    #[test]
    fn expression_metavariable_on_assignment_target() {
        let mv = ids(&["exp0", "classIden"]);
        let b = match_statement(
            &stmt("exp0 = classIden.getCurrentMinute();"),
            &mv,
            &stmt("minutes = picker.getCurrentMinute();"),
        )
        .unwrap();
        assert_eq!(bound(&b), vec![("classIden".into(), "picker".into()), ("exp0".into(), "minutes".into())]);
        let b = match_statement(&stmt("exp0 = classIden.getCurrentMinute();"), &mv, &stmt("a[i] = p.getCurrentMinute();"));
        assert!(b.is_some());
    }

    #[test]
    fn identifier_metavariables_reject_complex_arguments() {
        let mv = ids(&["iden0", "classIden"]);
        assert!(match_statement(&stmt("classIden.vibrate(iden0);"), &mv, &stmt("v.vibrate(a + 1);")).is_none());
        assert!(match_statement(&stmt("classIden.vibrate(iden0);"), &mv, &stmt("get().vibrate(a);")).is_none());
    }

    /// Brute force over a three-name universe: a repeated metavariable
    /// matches exactly when both arguments are the same name.
    #[test]
    fn repeated_metavariable_must_agree() {
        let mv = ids(&["iden0", "classIden"]);
        let pat = stmt("classIden.f(iden0, iden0);");
        for a in ["x", "y", "z"] {
            for b in ["x", "y", "z"] {
                let m = match_statement(&pat, &mv, &stmt(&format!("o.f({a}, {b});")));
                assert_eq!(m.is_some(), a == b, "{a} {b}");
                if let Some(m) = m {
                    let back = substitute_stmt(&pat, &m);
                    assert_eq!(jast::render_stmt(&back, "", "\n"), format!("o.f({a}, {a});"));
                }
            }
        }
    }

    fn vibrate_patch() -> SemanticPatch {
        let m = ApiMapping::parse("android.os.Vibrator#vibrate(long)", "android.os.Vibrator#vibrate(android.os.VibrationEffect)")
            .unwrap();
        let ex = parse(crate::patchgen::tests::VIBRATE_EXAMPLE).unwrap();
        generate_patch(&ex, &m, GenOptions::default()).unwrap()
    }

    const TARGET: &str = "import android.os.Vibrator;

public class Main {
    void buzz(Vibrator MyVibrator, long milliseconds) {
        if (MyVibrator.hasVibrator()) {
            MyVibrator.vibrate(milliseconds);
        }
    }
}
";

    #[test]
    fn wraps_a_site_in_the_guard() {
        let p = vibrate_patch();
        let a = apply_patch(&p, &parse(TARGET).unwrap(), "Main.java");
        assert_eq!(a.report.sites_found, 1);
        assert_eq!(a.report.sites_updated, 1);
        assert_eq!(a.patch_temps, vec!["newParameterVariable0"]);
        assert_eq!(
            a.unit.text,
            "import android.os.Vibrator;
import android.os.VibrationEffect;

public class Main {
    void buzz(Vibrator MyVibrator, long milliseconds) {
        if (MyVibrator.hasVibrator()) {
            if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
                VibrationEffect newParameterVariable0 = VibrationEffect.createOneShot(50, 175);
                MyVibrator.vibrate(newParameterVariable0);
            } else {
                MyVibrator.vibrate(milliseconds);
            }
        }
    }
}
"
        );
    }

    #[test]
    fn second_application_skips_guarded_sites() {
        let p = vibrate_patch();
        let once = apply_patch(&p, &parse(TARGET).unwrap(), "Main.java");
        let twice = apply_patch(&p, &once.unit, "Main.java");
        assert_eq!(twice.unit.text, once.unit.text);
        assert_eq!(twice.report.sites_updated, 0);
        assert!(twice.report.skipped.iter().all(|s| s.reason == SkipReason::AlreadyGuarded));
        assert_eq!(twice.report.sites_found, 2);
    }

    #[test]
    fn field_initializers_and_mismatches_are_reported() {
        let p = vibrate_patch();
        let src = "class A {
    Object o = v.vibrate(1);
    void m(Vibrator v, long a) {
        long x = v.vibrate(a);
        v.vibrate(a);
    }
}
";
        let a = apply_patch(&p, &parse(src).unwrap(), "A.java");
        let reasons: Vec<_> = a.report.skipped.iter().map(|s| (s.line, s.reason)).collect();
        assert_eq!(reasons, vec![(2, SkipReason::NonStatementContext), (4, SkipReason::NoMatch)]);
        assert_eq!(a.report.sites_updated + a.report.skipped.len(), a.report.sites_found);
    }

    #[test]
    fn multiple_sites_get_distinct_temporaries() {
        let p = vibrate_patch();
        let src = "class A {
    void m(Vibrator v, long a, long b) {
        v.vibrate(a);
        v.vibrate(b);
        v.vibrate(a);
    }
}
";
        let a = apply_patch(&p, &parse(src).unwrap(), "A.java");
        assert_eq!(a.report.sites_updated, 3);
        assert_eq!(a.unit.text.matches("SDK_INT").count(), 3);
        assert_eq!(a.patch_temps, vec!["newParameterVariable0", "newParameterVariable1", "newParameterVariable2"]);
    }

    const HELPER_PATCH: &str = "@update_requestAudioFocus@
identifier iden0, iden1, iden2, classIden;
@@
...
+ if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.O) {
+ AudioFocusRequest newParameterVariable0 = buildRequest(AudioAttributes.USAGE_GAME);
+ classIden.requestAudioFocus(newParameterVariable0);
+ } else {
classIden.requestAudioFocus(iden0, iden1, iden2);
+ }
@needs@
import android.media.AudioAttributes;
import android.media.AudioFocusRequest;
import android.os.Build;

private static AudioFocusRequest buildRequest(int usage) {
    return new AudioFocusRequest.Builder(AudioManager.AUDIOFOCUS_GAIN).setAudioAttributes(attrs(usage)).build();
}

private static AudioAttributes attrs(int usage) {
    return new AudioAttributes.Builder().setUsage(usage).build();
}
";

    #[test]
    fn helpers_are_copied_once() {
        let p = parse_patch(HELPER_PATCH).unwrap();
        let src = "package app;

import android.media.AudioManager;

public class Player {
    void play(AudioManager am, AudioManager.OnAudioFocusChangeListener l, int s, int g) {
        am.requestAudioFocus(l, s, g);
    }
}
";
        let a = apply_patch(&p, &parse(src).unwrap(), "Player.java");
        assert_eq!(a.report.copied, vec!["buildRequest", "attrs"]);
        let out = &a.unit.text;
        assert_eq!(lexer::find_identifier(out, "buildRequest").len(), 2);
        assert!(out.contains("import android.media.AudioManager;\nimport android.media.AudioAttributes;\nimport android.media.AudioFocusRequest;\nimport android.os.Build;\n"));
        assert!(out.contains("    }\n\n    private static AudioFocusRequest buildRequest(int usage) {\n        return new"), "{out}");
        assert!(out.ends_with("        return new AudioAttributes.Builder().setUsage(usage).build();\n    }\n}\n"), "{out}");
        // Applying again copies nothing.
        let again = apply_patch(&p, &a.unit, "Player.java");
        assert_eq!(again.unit.text, *out);
    }

    #[test]
    fn existing_helpers_are_reused_and_clashes_renamed() {
        let p = parse_patch(HELPER_PATCH).unwrap();
        let src = "public class Player {
    static AudioFocusRequest buildRequest(int usage) { return null; }
    static int attrs() { return 0; }
    void play(AudioManager am, Listener l, int s, int g) {
        am.requestAudioFocus(l, s, g);
    }
}
";
        let a = apply_patch(&p, &parse(src).unwrap(), "Player.java");
        assert_eq!(a.report.copied, vec!["attrs_apievolve"]);
        assert!(!a.unit.text.contains("static AudioFocusRequest buildRequest(int usage) {\n        return new"));
        assert!(a.unit.text.contains("private static AudioAttributes attrs_apievolve(int usage)"));
    }

    #[test]
    fn shadowed_imports_are_written_qualified() {
        let p = parse_patch(HELPER_PATCH).unwrap();
        let src = "import com.example.AudioAttributes;
public class Player {
    void play(AudioManager am, Listener l, int s, int g) {
        am.requestAudioFocus(l, s, g);
    }
}
";
        let a = apply_patch(&p, &parse(src).unwrap(), "Player.java");
        let out = &a.unit.text;
        assert!(!out.contains("import android.media.AudioAttributes;"));
        assert!(out.contains("buildRequest(android.media.AudioAttributes.USAGE_GAME)"), "{out}");
        assert!(out.contains("private static android.media.AudioAttributes attrs(int usage)"), "{out}");
    }

    #[test]
    fn nested_types_are_appended_without_access_modifiers() {
        let patch = "@r@
identifier iden0, classIden;
@@
+ if (Build.VERSION.SDK_INT >= 26) {
+ Effect newParameterVariable0 = new Maker().make();
+ classIden.vibrate(newParameterVariable0);
+ } else {
classIden.vibrate(iden0);
+ }
@needs@

private static class Maker {
    Effect make() { return null; }
}
";
        let p = parse_patch(patch).unwrap();
        let src = "class A {\n    void m(V v, long a) {\n        v.vibrate(a);\n    }\n}\n";
        let a = apply_patch(&p, &parse(src).unwrap(), "A.java");
        assert_eq!(a.report.copied, vec!["Maker"]);
        assert!(a.unit.text.ends_with("}\n\nclass Maker {\n    Effect make() { return null; }\n}\n"), "{}", a.unit.text);
    }

    #[test]
    fn strips_modifiers() {
        assert_eq!(strip_leading_modifiers("private static final class X {}"), "final class X {}");
        assert_eq!(strip_leading_modifiers("class X {}"), "class X {}");
    }

    proptest! {
        /// Substituting a binding back into the pattern reproduces the
        /// matched statement.
        #[test]
        fn binding_substitution_reproduces_target(
            recv in "[a-z][a-zA-Z0-9]{0,5}",
            arg in "[a-z][a-zA-Z0-9]{0,5}",
            lit in 0u32..1000,
        ) {
            prop_assume!(!lexer::is_keyword(&recv) && !lexer::is_keyword(&arg));
            let pat = stmt("exp0 = classIden.f(iden0, 7);");
            let mv = ids(&["exp0", "iden0", "classIden"]);
            let target = stmt(&format!("this.out[{lit}] = {recv}.f({arg}, 7);"));
            let b = match_statement(&pat, &mv, &target).unwrap();
            let back = substitute_stmt(&pat, &b);
            prop_assert_eq!(jast::render_stmt(&back, "", "\n"), jast::render_stmt(&target, "", "\n"));
        }
    }
}
