//! Text form of a [`SemanticPatch`].
//!
//! ```text
//! @update_vibrate@
//! identifier iden0, classIden;
//! @@
//! ...
//! + if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
//! + VibrationEffect newParameterVariable0 = VibrationEffect.createOneShot(50, 175);
//! + classIden.vibrate(newParameterVariable0);
//! + } else {
//! classIden.vibrate(iden0);
//! + }
//! @needs@
//! import android.os.VibrationEffect;
//! ```
//!
//! Added code may wrap over several `+` lines; consecutive `+` lines are
//! joined before being split into logical fragments. The optional `@needs@`
//! section lists imports followed by verbatim member and type definitions.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{collapse_ws, Fragment, MetaKind, MetaVar, Needs, PatchLine, SemanticPatch, StmtPattern};
use crate::dataflow::{DefKind, Definition};
use crate::jast::lexer::{self, Token};
use crate::jast::{self, Member, StmtKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed patch at line {line}: {message}")]
pub struct MalformedPatch {
    pub line: usize,
    pub message: String,
}

fn malformed(line: usize, message: impl Into<String>) -> MalformedPatch {
    MalformedPatch { line, message: message.into() }
}

pub fn render_patch(p: &SemanticPatch) -> String {
    let mut out = format!("@{}@\n", p.rule_name);
    for kind in [MetaKind::Expression, MetaKind::Identifier] {
        let names: Vec<&str> = p.metavars.iter().filter(|m| m.kind == kind).map(|m| m.name.as_str()).collect();
        if !names.is_empty() {
            let kw = if kind == MetaKind::Expression { "expression" } else { "identifier" };
            out.push_str(&format!("{kw} {};\n", names.join(", ")));
        }
    }
    out.push_str("@@\n");
    for line in &p.hunk {
        match line {
            PatchLine::Ellipsis => out.push_str("...\n"),
            PatchLine::Context(s) => push_prefixed(&mut out, "", &s.text),
            PatchLine::Remove(s) => push_prefixed(&mut out, "- ", &s.text),
            PatchLine::Add(f) => {
                let text = match f {
                    Fragment::GuardOpen(c) => format!("if ({c}) {{"),
                    Fragment::ElseOpen => "} else {".to_string(),
                    Fragment::Close => "}".to_string(),
                    Fragment::Stmt(s) => s.text.clone(),
                };
                push_prefixed(&mut out, "+ ", &text);
            }
        }
    }
    if !p.needs.is_empty() {
        out.push_str("@needs@\n");
        for i in &p.needs.imports {
            out.push_str(&format!("import {i};\n"));
        }
        for d in &p.needs.definitions {
            out.push('\n');
            out.push_str(d.text.trim_end());
            out.push('\n');
        }
    }
    out
}

fn push_prefixed(out: &mut String, prefix: &str, text: &str) {
    for l in text.lines() {
        out.push_str(prefix);
        out.push_str(l);
        out.push('\n');
    }
}

enum Section {
    Header,
    Hunk,
    Needs,
}

pub fn parse_patch(text: &str) -> Result<SemanticPatch, MalformedPatch> {
    let lines: Vec<&str> = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    let mut i = 0;
    while i < lines.len() && lines[i].trim().is_empty() {
        i += 1;
    }
    let first = lines.get(i).ok_or_else(|| malformed(1, "empty patch"))?.trim();
    let rule_name = first
        .strip_prefix('@')
        .and_then(|s| s.strip_suffix('@'))
        .filter(|n| !n.is_empty() && n.chars().all(|c| c.is_alphanumeric() || c == '_'))
        .ok_or_else(|| malformed(i + 1, "expected `@<rule name>@`"))?
        .to_string();
    i += 1;

    let mut declared: Vec<MetaVar> = Vec::new();
    let mut section = Section::Header;
    let mut hunk: Vec<PatchLine> = Vec::new();
    let mut add_run: Vec<(usize, &str)> = Vec::new();
    let mut ctx_run: Vec<(usize, &str, bool)> = Vec::new();
    let mut needs_start = None;
    for (n, raw) in lines.iter().enumerate().skip(i) {
        let line_no = n + 1;
        let t = raw.trim();
        match section {
            Section::Header => {
                if t.is_empty() {
                    continue;
                }
                if t == "@@" {
                    section = Section::Hunk;
                    continue;
                }
                let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
                let kind = match kw {
                    "expression" => MetaKind::Expression,
                    "identifier" => MetaKind::Identifier,
                    _ => return Err(malformed(line_no, format!("unknown directive `{t}`"))),
                };
                let names = rest.trim().strip_suffix(';').ok_or_else(|| malformed(line_no, "missing `;`"))?;
                for name in names.split(',').map(str::trim) {
                    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(malformed(line_no, format!("bad metavariable name `{name}`")));
                    }
                    declared.push(MetaVar { kind, name: name.to_string() });
                }
            }
            Section::Hunk => {
                if t == "@needs@" {
                    flush_add(&mut add_run, &mut hunk)?;
                    flush_ctx(&mut ctx_run, &mut hunk)?;
                    needs_start = Some(n + 1);
                    section = Section::Needs;
                    continue;
                }
                if t.starts_with('@') {
                    return Err(malformed(line_no, format!("unknown directive `{t}`")));
                }
                if let Some(rest) = raw.strip_prefix('+') {
                    flush_ctx(&mut ctx_run, &mut hunk)?;
                    add_run.push((line_no, rest.strip_prefix(' ').unwrap_or(rest)));
                    continue;
                }
                flush_add(&mut add_run, &mut hunk)?;
                if t.is_empty() {
                    flush_ctx(&mut ctx_run, &mut hunk)?;
                } else if t == "..." {
                    flush_ctx(&mut ctx_run, &mut hunk)?;
                    hunk.push(PatchLine::Ellipsis);
                } else if let Some(rest) = raw.strip_prefix('-') {
                    if ctx_run.last().is_some_and(|c| !c.2) {
                        flush_ctx(&mut ctx_run, &mut hunk)?;
                    }
                    ctx_run.push((line_no, rest, true));
                } else {
                    if ctx_run.last().is_some_and(|c| c.2) {
                        flush_ctx(&mut ctx_run, &mut hunk)?;
                    }
                    ctx_run.push((line_no, raw, false));
                }
            }
            Section::Needs => break,
        }
    }
    if matches!(section, Section::Header) {
        return Err(malformed(lines.len().max(1), "missing `@@`"));
    }
    flush_add(&mut add_run, &mut hunk)?;
    flush_ctx(&mut ctx_run, &mut hunk)?;
    let last_line = lines.len().max(1);
    let guard_cond = validate_hunk(&hunk, last_line)?;

    let needs = match needs_start {
        Some(start) => parse_needs(&lines[start..], start)?,
        None => Needs::default(),
    };

    // Keep only metavariables that the hunk actually uses.
    let used = used_names(&hunk);
    let mut metavars: Vec<MetaVar> = Vec::new();
    for m in declared {
        if used.contains(&m.name) && !metavars.iter().any(|x| x.name == m.name) {
            metavars.push(m);
        }
    }
    Ok(SemanticPatch { rule_name, metavars, guard_cond, hunk, needs })
}

fn flush_ctx(run: &mut Vec<(usize, &str, bool)>, hunk: &mut Vec<PatchLine>) -> Result<(), MalformedPatch> {
    if run.is_empty() {
        return Ok(());
    }
    let line = run[0].0;
    let remove = run[0].2;
    let text: String = run.iter().map(|(_, l, _)| *l).collect::<Vec<_>>().join("\n");
    run.clear();
    let stmts = jast::parse_statements(&text).map_err(|e| malformed(line, e.to_string()))?;
    if stmts.is_empty() {
        return Err(malformed(line, "expected a statement"));
    }
    for s in stmts {
        if matches!(s.kind, StmtKind::Opaque(_)) {
            return Err(malformed(line, format!("unsupported pattern statement `{}`", collapse_ws(&text))));
        }
        let p = StmtPattern::new(s);
        hunk.push(if remove { PatchLine::Remove(p) } else { PatchLine::Context(p) });
    }
    Ok(())
}

fn flush_add(run: &mut Vec<(usize, &str)>, hunk: &mut Vec<PatchLine>) -> Result<(), MalformedPatch> {
    if run.is_empty() {
        return Ok(());
    }
    let first_line = run[0].0;
    let text: String = run.iter().map(|(_, l)| *l).collect::<Vec<_>>().join("\n");
    let line_at = |offset: usize| first_line + lexer::line_of(&text, offset) - 1;
    run.clear();
    let toks = lexer::scan(&text).map_err(|e| malformed(first_line, e.to_string()))?;
    let tt = |i: usize| toks.get(i).map_or("", |t: &Token| t.text(&text));
    let mut i = 0;
    while i < toks.len() {
        let at = toks[i].span.start;
        if tt(i) == "}" && tt(i + 1) == "else" && tt(i + 2) == "{" {
            hunk.push(PatchLine::Add(Fragment::ElseOpen));
            i += 3;
            continue;
        }
        if tt(i) == "}" {
            hunk.push(PatchLine::Add(Fragment::Close));
            i += 1;
            continue;
        }
        if tt(i) == "if" && tt(i + 1) == "(" {
            let close = matching(&toks, &text, i + 1).ok_or_else(|| malformed(line_at(at), "unclosed `(`"))?;
            let open_block = |b: usize| match matching(&toks, &text, b) {
                None => true,
                Some(e) => tt(e + 1) == "else" && tt(e + 2) == "{" && matching(&toks, &text, e + 2).is_none(),
            };
            if tt(close + 1) == "{" && open_block(close + 1) {
                let cond = &text[toks[i + 1].span.end..toks[close].span.start];
                hunk.push(PatchLine::Add(Fragment::GuardOpen(collapse_ws(cond))));
                i = close + 2;
                continue;
            }
        }
        let end = statement_end(&toks, &text, i).ok_or_else(|| malformed(line_at(at), "unterminated statement"))?;
        let stmt_text = &text[at..toks[end].span.end];
        let p = StmtPattern::parse(stmt_text)
            .ok_or_else(|| malformed(line_at(at), format!("cannot parse `{}`", collapse_ws(stmt_text))))?;
        hunk.push(PatchLine::Add(Fragment::Stmt(p)));
        i = end + 1;
    }
    Ok(())
}

/// Index of the token closing the bracket opened at `open`.
fn matching(toks: &[Token], text: &str, open: usize) -> Option<usize> {
    let mut depth = 0i32;
    for (j, t) in toks.iter().enumerate().skip(open) {
        match t.text(text) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => {
                depth -= 1;
                if depth == 0 {
                    return Some(j);
                }
            }
            _ => {}
        }
    }
    None
}

/// Last token of the statement starting at `start`: a `;` at depth zero or
/// the `}` closing a top-level block not followed by `else`.
fn statement_end(toks: &[Token], text: &str, start: usize) -> Option<usize> {
    let mut depth = 0i32;
    for j in start..toks.len() {
        match toks[j].text(text) {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" => depth -= 1,
            "}" => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
                let next = toks.get(j + 1).map(|t| t.text(text));
                if depth == 0 && next != Some("else") && next != Some(";") && next != Some(")") {
                    return Some(j);
                }
            }
            ";" if depth == 0 => return Some(j),
            _ => {}
        }
    }
    None
}

/// Check fragment nesting and the context count; returns the guard.
fn validate_hunk(hunk: &[PatchLine], last_line: usize) -> Result<String, MalformedPatch> {
    if hunk.iter().all(|l| matches!(l, PatchLine::Ellipsis)) {
        return Err(malformed(last_line, "empty hunk"));
    }
    let contexts =
        hunk.iter().filter(|l| matches!(l, PatchLine::Context(_) | PatchLine::Remove(_))).count();
    if contexts != 1 {
        return Err(malformed(last_line, format!("expected exactly one context statement, found {contexts}")));
    }
    let mut guard = None;
    let mut depth = 0i32;
    let mut saw_else = false;
    for l in hunk {
        match l {
            PatchLine::Add(Fragment::GuardOpen(c)) => {
                if guard.is_some() {
                    return Err(malformed(last_line, "more than one guard"));
                }
                if !jast::parse_expression(c).is_some_and(|e| crate::sigmap::mentions_sdk_int(&e)) {
                    return Err(malformed(last_line, "guard does not test SDK_INT"));
                }
                guard = Some(c.clone());
                depth += 1;
            }
            PatchLine::Add(Fragment::ElseOpen) => {
                if depth != 1 || saw_else {
                    return Err(malformed(last_line, "`} else {` outside the guard"));
                }
                saw_else = true;
            }
            PatchLine::Add(Fragment::Close) => {
                depth -= 1;
                if depth < 0 {
                    return Err(malformed(last_line, "unbalanced `}`"));
                }
            }
            PatchLine::Context(_) | PatchLine::Remove(_) | PatchLine::Add(Fragment::Stmt(_)) if depth == 0 => {
                return Err(malformed(last_line, "statement outside the guard"));
            }
            _ => {}
        }
    }
    if depth != 0 || !saw_else {
        return Err(malformed(last_line, "incomplete if/else in hunk"));
    }
    guard.ok_or_else(|| malformed(last_line, "missing guard"))
}

fn used_names(hunk: &[PatchLine]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for l in hunk {
        let text = match l {
            PatchLine::Context(p) | PatchLine::Remove(p) | PatchLine::Add(Fragment::Stmt(p)) => &p.text,
            PatchLine::Add(Fragment::GuardOpen(c)) => c,
            _ => continue,
        };
        if let Ok(toks) = lexer::scan(text) {
            out.extend(toks.iter().map(|t| t.text(text).to_string()));
        }
    }
    out
}

fn parse_needs(lines: &[&str], first_index: usize) -> Result<Needs, MalformedPatch> {
    let mut imports = Vec::new();
    let mut k = 0;
    while k < lines.len() {
        let t = lines[k].trim();
        if t.is_empty() {
            k += 1;
            continue;
        }
        let Some(rest) = t.strip_prefix("import ") else { break };
        let name = rest
            .trim()
            .strip_suffix(';')
            .map(str::trim)
            .filter(|n| !n.is_empty() && n.split('.').all(|s| !s.is_empty()))
            .ok_or_else(|| malformed(first_index + k + 1, "bad import"))?;
        imports.push(name.to_string());
        k += 1;
    }
    let body = lines[k..].join("\n");
    let mut definitions = Vec::new();
    if !body.trim().is_empty() {
        let wrapped = format!("class Needs {{\n{body}\n}}");
        let unit = jast::parse(&wrapped).map_err(|e| malformed(first_index + k + 1, e.to_string()))?;
        let t = unit.types().next().ok_or_else(|| malformed(first_index + k + 1, "unparsable definitions"))?;
        for m in &t.members {
            let text = super::dedent_member(unit.slice(m.span()));
            let def = match m {
                Member::Method(m) => Definition { kind: DefKind::Method { arity: m.arity() }, name: m.name.clone(), text },
                Member::Field(f) => Definition { kind: DefKind::Field, name: f.vars[0].name.clone(), text },
                Member::Type(t) => Definition { kind: DefKind::Type, name: t.name.clone(), text },
                Member::Opaque(_) => {
                    let line = first_index + k + lexer::line_of(&wrapped, m.span().start) - 1;
                    return Err(malformed(line, "unsupported definition"));
                }
            };
            definitions.push(def);
        }
    }
    Ok(Needs { imports, definitions })
}
