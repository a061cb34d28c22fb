//! Java-subset syntax: lossless parsing, canonical rendering of synthesized
//! code, and span-based splicing.
//!
//! A [`CompilationUnit`] owns its source text and every node points back into
//! it, so printing an unedited unit is the identity. Transformations are
//! expressed as span edits ([`splice`]) followed by a re-parse.

pub mod ast;
pub mod lexer;
mod parser;
pub mod render;
pub mod walk;

use std::path::{Path, PathBuf};

pub use ast::*;
pub use render::{render_expr, render_stmt};
pub use walk::{Branch, Frame};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: unbalanced source: {detail}")]
    UnbalancedSource { line: usize, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpliceError {
    #[error("overlapping edits at {first} and {second}")]
    OverlappingEdits { first: Span, second: Span },
    #[error("edit {0} lies outside the source text")]
    OutOfBounds(Span),
}

/// Parse a Java-subset source file.
pub fn parse(text: &str) -> Result<CompilationUnit, ParseError> {
    Ok(parser::Parser::new(text)?.parse_unit())
}

/// Parse a sequence of statements (used for patch hunks).
pub fn parse_statements(text: &str) -> Result<Vec<Stmt>, ParseError> {
    Ok(parser::Parser::new(text)?.statements())
}

/// Parse a single complete expression; `None` if `text` is not exactly one.
pub fn parse_expression(text: &str) -> Option<Expr> {
    parser::Parser::new(text).ok()?.whole_expr()
}

/// Text of the unit. Units are immutable snapshots, so this reproduces the
/// parsed source byte-for-byte; edits go through [`splice`].
pub fn print(unit: &CompilationUnit) -> String {
    unit.text.clone()
}

/// A replacement of `span` (possibly empty, i.e. an insertion) by `text`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edit {
    pub span: Span,
    pub text: String,
}

impl Edit {
    pub fn replace(span: Span, text: impl Into<String>) -> Self {
        Edit { span, text: text.into() }
    }

    pub fn insert(at: usize, text: impl Into<String>) -> Self {
        Edit { span: Span::new(at, at), text: text.into() }
    }
}

/// Apply edits to the unit's text in ascending span order.
///
/// Insertions at the same offset are applied in the order given. An insertion
/// may touch the boundary of a replacement but not fall strictly inside it.
pub fn splice(unit: &CompilationUnit, edits: &[Edit]) -> Result<String, SpliceError> {
    splice_text(&unit.text, edits)
}

pub fn splice_text(text: &str, edits: &[Edit]) -> Result<String, SpliceError> {
    let mut order: Vec<usize> = (0..edits.len()).collect();
    order.sort_by_key(|&i| (edits[i].span.start, edits[i].span.end, i));
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    let mut prev: Option<Span> = None;
    for i in order {
        let e = &edits[i];
        if e.span.end > text.len() {
            return Err(SpliceError::OutOfBounds(e.span));
        }
        if let Some(p) = prev {
            if e.span.start < p.end || (p.is_empty() && !e.span.is_empty() && e.span.start < p.start) {
                return Err(SpliceError::OverlappingEdits { first: p, second: e.span });
            }
        }
        out.push_str(&text[cursor..e.span.start]);
        out.push_str(&e.text);
        cursor = e.span.end;
        prev = Some(e.span);
    }
    out.push_str(&text[cursor..]);
    Ok(out)
}

/// A source file on disk together with its parsed unit.
#[derive(Debug, Clone)]
pub struct SourceFile {
    pub path: PathBuf,
    pub unit: CompilationUnit,
}

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
}

impl SourceFile {
    pub fn load(path: &Path) -> Result<Self, SourceError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| SourceError::Io { path: path.to_path_buf(), source })?;
        let unit = parse(&text).map_err(|source| SourceError::Parse { path: path.to_path_buf(), source })?;
        Ok(SourceFile { path: path.to_path_buf(), unit })
    }
}

/// Leading whitespace of the line containing `offset`.
pub fn line_indent(text: &str, offset: usize) -> &str {
    let line_start = text[..offset].rfind('\n').map_or(0, |i| i + 1);
    let line = &text[line_start..];
    let end = line.find(|c: char| c != ' ' && c != '\t').unwrap_or(line.len());
    &line[..end]
}

/// True if only spaces/tabs precede `offset` on its line.
pub fn starts_line(text: &str, offset: usize) -> bool {
    let line_start = text[..offset].rfind('\n').map_or(0, |i| i + 1);
    text[line_start..offset].chars().all(|c| c == ' ' || c == '\t')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn method_body(unit: &CompilationUnit) -> &[Stmt] {
        let t = unit.types().next().unwrap();
        &t.methods().next().unwrap().body.as_ref().unwrap().stmts
    }

    #[test]
    fn minimal_call_statement() {
        let u = parse("class A { void m() { v.vibrate(5); } }").unwrap();
        let t = u.types().next().unwrap();
        assert_eq!(t.name, "A");
        assert_eq!(t.methods().count(), 1);
        let body = method_body(&u);
        assert_eq!(body.len(), 1);
        let StmtKind::Expr(e) = &body[0].kind else { panic!("expected expression statement") };
        let ExprKind::MethodCall { receiver, name, args } = &e.kind else { panic!() };
        assert_eq!(receiver.as_ref().unwrap().as_name(), Some("v"));
        assert_eq!(name, "vibrate");
        assert!(matches!(&args[0].kind, ExprKind::Literal { kind: LitKind::Int, lexeme } if lexeme == "5"));
    }

    const VIBRATE_EXAMPLE: &str = "private static final int DURATION = 50;
private static final int AMPLITUDE = 175;
public static void itemActivated(Context context) {
    long milliseconds = DURATION;
    if (android.os.Build.VERSION.SDK_INT >=
            android.os.Build.VERSION_CODES.O) {
        int amplitude = AMPLITUDE;
        VibrationEffect effect = VibrationEffect.
                createOneShot(milliseconds, amplitude);
        vibrator.vibrate(effect);
    } else {
        vibrator.vibrate(milliseconds);
    }
}
";

    #[test]
    fn snippet_members_form_an_implicit_type() {
        let u = parse(VIBRATE_EXAMPLE).unwrap();
        let t = u.types().next().unwrap();
        assert_eq!(t.kind, TypeKind::Implicit);
        let fields: Vec<_> = t.fields().flat_map(|f| f.vars.iter()).collect();
        assert_eq!(fields.len(), 2);
        assert_eq!(fields[0].name, "DURATION");
        assert_eq!(render_expr(fields[0].init.as_ref().unwrap()), "50");
        assert_eq!(fields[1].name, "AMPLITUDE");
        assert_eq!(render_expr(fields[1].init.as_ref().unwrap()), "175");
        let m = t.methods().next().unwrap();
        assert_eq!(m.name, "itemActivated");
        let body = &m.body.as_ref().unwrap().stmts;
        assert!(matches!(body[0].kind, StmtKind::LocalVar(_)));
        assert!(matches!(body[1].kind, StmtKind::If(_)));
        assert_eq!(print(&u), VIBRATE_EXAMPLE);
    }

    #[test]
    fn unsupported_statement_is_opaque_and_preserved() {
        let src = "class A { synchronized void weird() { assert x; } }";
        let u = parse(src).unwrap();
        let body = method_body(&u);
        assert_eq!(body.len(), 1);
        assert!(matches!(&body[0].kind, StmtKind::Opaque(t) if t == "assert x;"));
        assert_eq!(print(&u), src);
    }

    #[test]
    fn opaque_loops_do_not_swallow_following_statements() {
        let src = "class A { void m() { for (int i = 0; i < 3; i++) { a(); } b(); try { c(); } catch (E e) { d(); } finally { } f(); } }";
        let u = parse(src).unwrap();
        let body = method_body(&u);
        let kinds: Vec<_> = body.iter().map(|s| matches!(s.kind, StmtKind::Opaque(_))).collect();
        assert_eq!(kinds, vec![true, false, true, false]);
    }

    #[test]
    fn annotations_generics_and_anonymous_classes() {
        let src = "package p.q;\nimport a.b.C;\nimport static x.Y.*;\n@SuppressWarnings(\"x\")\npublic class A extends B<C> implements D {\n  private Map<String, List<Integer>> m = new HashMap<>();\n  @Override\n  public <T> T get(final int x, String... rest) throws E { return (T) m.get(x); }\n  void h() { btn.set(new OnClick() { public void on(View v) { v.vibrate(1); } }); }\n  enum E { X, Y }\n}\n";
        let u = parse(src).unwrap();
        assert_eq!(u.package.as_ref().unwrap().name, "p.q");
        assert_eq!(u.imports.len(), 2);
        assert!(u.imports[1].is_static && u.imports[1].wildcard);
        let t = u.types().next().unwrap();
        assert_eq!(t.fields().next().unwrap().ty.text, "Map<String, List<Integer>>");
        assert_eq!(t.methods().count(), 2);
        assert!(t.members.iter().any(|m| matches!(m, Member::Opaque(_))));
        let h = t.methods().nth(1).unwrap();
        let StmtKind::Expr(e) = &h.body.as_ref().unwrap().stmts[0].kind else { panic!() };
        let ExprKind::MethodCall { args, .. } = &e.kind else { panic!() };
        assert!(matches!(&args[0].kind, ExprKind::New { body: Some(_), .. }));
        assert_eq!(print(&u), src);
    }

    #[test]
    fn shifts_and_comparisons_from_single_gt_tokens() {
        let e = parse_expression("a >> 2 >= b >>> 1").unwrap();
        assert_eq!(render_expr(&e), "a >> 2 >= b >>> 1");
        let ExprKind::Binary { op, .. } = e.kind else { panic!() };
        assert_eq!(op, BinaryOp::Ge);
    }

    #[test]
    fn lambdas_and_method_refs_become_opaque_arguments() {
        let e = parse_expression("list.forEach(x -> { use(x); })").unwrap();
        let ExprKind::MethodCall { args, .. } = &e.kind else { panic!() };
        assert!(matches!(&args[0].kind, ExprKind::Opaque(t) if t == "x -> { use(x); }"));
        let e = parse_expression("s.map(String::valueOf)").unwrap();
        let ExprKind::MethodCall { args, .. } = &e.kind else { panic!() };
        assert!(matches!(&args[0].kind, ExprKind::Opaque(_)));
    }

    #[test]
    fn casts_versus_parentheses() {
        let e = parse_expression("(int) x + (a) - 1").unwrap();
        assert_eq!(render_expr(&e), "(int) x + (a) - 1");
        let ExprKind::Binary { lhs, .. } = &e.kind else { panic!() };
        let ExprKind::Binary { lhs: cast, rhs: paren, .. } = &lhs.kind else { panic!() };
        assert!(matches!(cast.kind, ExprKind::Cast { .. }));
        assert!(matches!(paren.kind, ExprKind::Paren(_)));
    }

    #[test]
    fn unbalanced_source_is_an_error() {
        assert!(parse("class A { void m() { ").is_err());
    }

    #[test]
    fn splice_applies_in_ascending_order() {
        let u = parse("class A { void m() { a(); b(); } }").unwrap();
        let body = method_body(&u);
        let e1 = Edit::replace(body[1].span, "B();");
        let e0 = Edit::replace(body[0].span, "A();");
        assert_eq!(splice(&u, &[e1.clone(), e0.clone()]).unwrap(), "class A { void m() { A(); B(); } }");
        assert_eq!(splice(&u, &[]).unwrap(), u.text);
        let clash = Edit::replace(Span::new(body[0].span.start, body[1].span.end), "x");
        assert!(matches!(splice(&u, &[e0, clash]), Err(SpliceError::OverlappingEdits { .. })));
    }

    #[test]
    fn crlf_is_detected() {
        let u = parse("class A {\r\n}\r\n").unwrap();
        assert_eq!(u.newline(), "\r\n");
    }
}
