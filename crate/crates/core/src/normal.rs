//! Argument normalization and temporary inlining.
//!
//! `normalize` hoists every non-name argument of a deprecated call into a
//! fresh `normArg<N>` local declared just before the enclosing statement, so
//! patterns whose arguments are identifier metavariables can match.
//! `denormalize` undoes this (and removes patch-introduced temporaries) by
//! substituting each temporary's initializer text at its uses and deleting the
//! declaration.

use thiserror::Error;

use crate::jast::lexer::{self, TokenKind};
use crate::jast::walk::{self, Frame, Visitor};
use crate::jast::{self, prec, CompilationUnit, Edit, Expr, ExprKind, ParseError, Span, Stmt, StmtKind};
use crate::sigmap::{ApiMapping, CallSite};

pub const NORM_PREFIX: &str = "normArg";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenormError {
    #[error("temporary `{temp}` is used {uses} times outside exclusive branches")]
    MultipleUse { temp: String, uses: usize },
    #[error("temporary `{0}` has no single-variable declaration in a statement list")]
    MissingDeclaration(String),
    #[error("temporaries reference each other cyclically: {0}")]
    Cyclic(String),
    #[error("intermediate text failed to parse: {0}")]
    Parse(#[from] ParseError),
    #[error("internal edit conflict: {0}")]
    Splice(#[from] jast::SpliceError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormEntry {
    pub temp: String,
    pub ty: String,
    /// Verbatim source text of the hoisted argument.
    pub original: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormSkip {
    /// The call is not inside a statement list (field initializer,
    /// unbraced branch) and has arguments that would need hoisting.
    NonStatementContext,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizationMap {
    pub entries: Vec<NormEntry>,
    /// Edits made, as (original span, replacement length), sorted.
    pub changes: Vec<(Span, usize)>,
    /// Call spans (original coordinates) that could not be normalized.
    pub skipped: Vec<(Span, NormSkip)>,
}

impl NormalizationMap {
    pub fn temps(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.temp.as_str())
    }

    /// Map an offset in the normalized text back to the original text.
    /// Offsets inside replaced text map to the start of the replaced span.
    pub fn original_offset(&self, normalized: usize) -> usize {
        let mut delta: isize = 0;
        for &(span, len) in &self.changes {
            let start = (span.start as isize + delta) as usize;
            if normalized < start {
                break;
            }
            if normalized < start + len {
                return span.start;
            }
            delta += len as isize - span.len() as isize;
        }
        (normalized as isize - delta) as usize
    }
}

/// Simple-name form of a signature type (`java.util.List<a.B>` to
/// `List<B>`, varargs `T...` to `T[]`).
pub fn simple_type(ty: &str) -> String {
    let ty = ty.trim();
    let (base, varargs) = match ty.strip_suffix("...") {
        Some(b) => (b.trim_end(), true),
        None => (ty, false),
    };
    let mut out = String::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        out.push_str(word.rsplit('.').next().unwrap_or(""));
        word.clear();
    };
    for c in base.chars() {
        if c.is_alphanumeric() || c == '_' || c == '$' || c == '.' {
            word.push(c);
        } else {
            flush(&mut word, &mut out);
            out.push(c);
        }
    }
    flush(&mut word, &mut out);
    if varargs {
        out.push_str("[]");
    }
    out
}

fn is_simple_arg(e: &Expr) -> bool {
    matches!(e.kind, ExprKind::Name(_))
}

/// First `prefix<N>` with N >= `from` not present as an identifier in `text`.
pub fn fresh_name(text: &str, prefix: &str, from: &mut usize) -> String {
    loop {
        let cand = format!("{prefix}{from}");
        *from += 1;
        if lexer::find_identifier(text, &cand).is_empty() && !text.contains(&format!(".{cand}")) {
            return cand;
        }
    }
}

/// Hoist complex arguments of `sites` (found against `mapping.deprecated`)
/// into temporaries. Sites inside an existing SDK guard are left alone.
pub fn normalize(
    unit: &CompilationUnit,
    sites: &[CallSite<'_>],
    mapping: &ApiMapping,
) -> Result<(CompilationUnit, NormalizationMap), ParseError> {
    let text = &unit.text;
    let nl = unit.newline();
    let mut map = NormalizationMap::default();
    let mut counter = 0;
    // (insert offset, text) grouped per enclosing statement.
    let mut inserts: Vec<(usize, String)> = Vec::new();
    let mut edits: Vec<Edit> = Vec::new();
    let mut hoisted: Vec<Span> = Vec::new();
    for site in sites {
        if site.already_guarded() || hoisted.iter().any(|h| h.overlaps(site.call.span)) {
            continue;
        }
        let complex: Vec<(usize, &Expr)> =
            site.args().iter().enumerate().filter(|(_, a)| !is_simple_arg(a)).collect();
        if complex.is_empty() {
            continue;
        }
        let Some((stmt, _, _)) = walk::enclosing_list_stmt(&site.frames) else {
            map.skipped.push((site.call.span, NormSkip::NonStatementContext));
            continue;
        };
        let sep = if jast::starts_line(text, stmt.span.start) {
            format!("{nl}{}", jast::line_indent(text, stmt.span.start))
        } else {
            " ".to_string()
        };
        for (i, arg) in complex {
            let temp = fresh_name(text, NORM_PREFIX, &mut counter);
            let ty = simple_type(mapping.deprecated.param_types.get(i).map_or("Object", |s| s));
            let original = unit.slice(arg.span).to_string();
            let decl = format!("{ty} {temp} = {original};{sep}");
            match inserts.iter_mut().find(|(at, _)| *at == stmt.span.start) {
                Some((_, t)) => t.push_str(&decl),
                None => inserts.push((stmt.span.start, decl)),
            }
            edits.push(Edit::replace(arg.span, temp.clone()));
            hoisted.push(arg.span);
            map.entries.push(NormEntry { temp, ty, original });
        }
    }
    edits.extend(inserts.into_iter().map(|(at, t)| Edit::insert(at, t)));
    edits.sort_by_key(|e| (e.span.start, e.span.end));
    map.changes = edits.iter().map(|e| (e.span, e.text.len())).collect();
    let out = jast::splice(unit, &edits).expect("normalization edits are disjoint");
    Ok((jast::parse(&out)?, map))
}

struct Decl<'a> {
    stmt: &'a Stmt,
    name_span: Span,
    init: &'a Expr,
}

struct DeclFinder<'a, 'n> {
    name: &'n str,
    found: Vec<Decl<'a>>,
}

impl<'a> Visitor<'a> for DeclFinder<'a, '_> {
    fn stmt(&mut self, s: &'a Stmt, frames: &[Frame<'a>]) {
        if let StmtKind::LocalVar(d) = &s.kind {
            if let [v] = d.vars.as_slice() {
                let listed = matches!(frames.last(), Some(Frame::Stmt { list: Some(_), .. }));
                if v.name == self.name && listed {
                    if let Some(init) = &v.init {
                        self.found.push(Decl { stmt: s, name_span: v.name_span, init });
                    }
                }
            }
        }
    }
}

/// Inline every temporary of `map` and `patch_temps` and delete their
/// declarations. Temporaries whose initializers mention other pending
/// temporaries are inlined after those.
pub fn denormalize(
    unit: &CompilationUnit,
    map: &NormalizationMap,
    patch_temps: &[String],
) -> Result<CompilationUnit, DenormError> {
    let mut pending: Vec<String> = map.temps().map(str::to_string).chain(patch_temps.iter().cloned()).collect();
    let mut unit = unit.clone();
    while !pending.is_empty() {
        // Drop temporaries that no longer occur at all.
        pending.retain(|t| !lexer::find_identifier(&unit.text, t).is_empty());
        if pending.is_empty() {
            break;
        }
        let mut progressed = false;
        for idx in 0..pending.len() {
            let temp = pending[idx].clone();
            let mut finder = DeclFinder { name: &temp, found: Vec::new() };
            walk::walk_unit(&unit, &mut finder);
            let decl = match finder.found.as_slice() {
                [d] => d,
                _ => return Err(DenormError::MissingDeclaration(temp)),
            };
            let init_text = unit.slice(decl.init.span);
            let blocked = pending
                .iter()
                .any(|other| other != &temp && !lexer::find_identifier(init_text, other).is_empty());
            if blocked {
                continue;
            }
            let text = inline_one(&unit, &temp, decl)?;
            unit = jast::parse(&text)?;
            pending.remove(idx);
            progressed = true;
            break;
        }
        if !progressed {
            return Err(DenormError::Cyclic(pending.join(", ")));
        }
    }
    Ok(unit)
}

fn inline_one(unit: &CompilationUnit, temp: &str, decl: &Decl<'_>) -> Result<String, DenormError> {
    let text = &unit.text;
    let uses: Vec<Span> = lexer::find_identifier(text, temp)
        .into_iter()
        .filter(|s| *s != decl.name_span && !decl.stmt.span.contains(*s))
        .collect();
    if uses.len() > 1 {
        let paths: Vec<_> = uses
            .iter()
            .map(|s| walk::find_expr(unit, *s).map(|(_, f)| walk::branch_path(&f)).unwrap_or_default())
            .collect();
        let exclusive = (0..paths.len())
            .all(|i| (0..paths.len()).all(|j| i == j || walk::mutually_exclusive(&paths[i], &paths[j])));
        if !exclusive {
            return Err(DenormError::MultipleUse { temp: temp.to_string(), uses: uses.len() });
        }
    }
    let init_text = unit.slice(decl.init.span);
    let toks = lexer::scan(text)?;
    let mut edits = vec![deletion(text, decl.stmt.span)];
    for u in uses {
        let needs_parens = decl.init.precedence() < prec::POSTFIX && !delimited(text, &toks, u);
        let rep = if needs_parens { format!("({init_text})") } else { init_text.to_string() };
        edits.push(Edit::replace(u, rep));
    }
    Ok(jast::splice_text(text, &edits)?)
}

/// True if the use at `span` sits in a slot where any expression may appear
/// unparenthesized (an argument, initializer, right side of `=`, return
/// value, or the whole of a parenthesized expression).
fn delimited(text: &str, toks: &[lexer::Token], span: Span) -> bool {
    let Some(i) = toks.iter().position(|t| t.span == span) else {
        return false;
    };
    let prev = if i > 0 { toks[i - 1].text(text) } else { "" };
    let next = toks.get(i + 1).map_or("", |t| t.text(text));
    let before_ok = matches!(prev, "(" | "," | "=" | "return");
    let after_ok = matches!(next, ")" | "," | ";");
    before_ok && after_ok && toks[i].kind == TokenKind::Ident
}

/// Edit removing a statement: its whole line when it stands alone on that
/// line, otherwise the statement and one following space.
fn deletion(text: &str, span: Span) -> Edit {
    let line_start = text[..span.start].rfind('\n').map_or(0, |i| i + 1);
    let rest = &text[span.end..];
    let eol = rest.find('\n');
    let alone_before = text[line_start..span.start].chars().all(|c| c == ' ' || c == '\t');
    let alone_after = eol.is_some_and(|e| rest[..e].trim().is_empty());
    if alone_before && alone_after {
        let end = span.end + eol.unwrap_or(0) + 1;
        Edit::replace(Span::new(line_start, end), "")
    } else if rest.starts_with(' ') {
        Edit::replace(Span::new(span.start, span.end + 1), "")
    } else {
        Edit::replace(span, "")
    }
}
