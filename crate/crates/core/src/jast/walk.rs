//! Tree traversal with an explicit ancestor stack.

use super::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Then,
    Else,
}

/// One level of ancestry, outermost first in a frame stack.
#[derive(Debug, Clone, Copy)]
pub enum Frame<'a> {
    Type(&'a TypeDecl),
    Method(&'a MethodDecl),
    Field(&'a FieldDecl),
    /// A statement; `list` is set when it is an element of a block or method
    /// body (rather than an unbraced `if` branch).
    Stmt { stmt: &'a Stmt, list: Option<(&'a [Stmt], usize)> },
    Branch { stmt: &'a Stmt, cond: &'a Expr, branch: Branch },
}

pub trait Visitor<'a> {
    fn stmt(&mut self, _stmt: &'a Stmt, _frames: &[Frame<'a>]) {}
    fn expr(&mut self, _expr: &'a Expr, _frames: &[Frame<'a>]) {}
}

pub fn walk_unit<'a, V: Visitor<'a>>(unit: &'a CompilationUnit, v: &mut V) {
    let mut w = Walker { frames: Vec::new(), v };
    for t in unit.types() {
        w.type_decl(t);
    }
}

struct Walker<'a, 'v, V> {
    frames: Vec<Frame<'a>>,
    v: &'v mut V,
}

impl<'a, V: Visitor<'a>> Walker<'a, '_, V> {
    fn type_decl(&mut self, t: &'a TypeDecl) {
        self.frames.push(Frame::Type(t));
        for m in &t.members {
            match m {
                Member::Field(f) => {
                    self.frames.push(Frame::Field(f));
                    for init in f.vars.iter().filter_map(|v| v.init.as_ref()) {
                        self.expr(init);
                    }
                    self.frames.pop();
                }
                Member::Method(m) => {
                    self.frames.push(Frame::Method(m));
                    if let Some(b) = &m.body {
                        self.list(&b.stmts);
                    }
                    self.frames.pop();
                }
                Member::Type(t) => self.type_decl(t),
                Member::Opaque(_) => {}
            }
        }
        self.frames.pop();
    }

    fn list(&mut self, stmts: &'a [Stmt]) {
        for (i, s) in stmts.iter().enumerate() {
            self.stmt(s, Some((stmts, i)));
        }
    }

    fn stmt(&mut self, s: &'a Stmt, list: Option<(&'a [Stmt], usize)>) {
        self.frames.push(Frame::Stmt { stmt: s, list });
        self.v.stmt(s, &self.frames);
        match &s.kind {
            StmtKind::LocalVar(_) | StmtKind::Expr(_) | StmtKind::Return(_) => {
                for e in s.exprs() {
                    self.expr(e);
                }
            }
            StmtKind::If(i) => {
                self.expr(&i.cond);
                self.frames.push(Frame::Branch { stmt: s, cond: &i.cond, branch: Branch::Then });
                self.stmt(&i.then_branch, None);
                self.frames.pop();
                if let Some(e) = &i.else_branch {
                    self.frames.push(Frame::Branch { stmt: s, cond: &i.cond, branch: Branch::Else });
                    self.stmt(e, None);
                    self.frames.pop();
                }
            }
            StmtKind::Block(b) => self.list(&b.stmts),
            StmtKind::Opaque(_) => {}
        }
        self.frames.pop();
    }

    fn expr(&mut self, e: &'a Expr) {
        self.v.expr(e, &self.frames);
        for c in e.children() {
            self.expr(c);
        }
        if let ExprKind::New { body: Some(b), .. } = &e.kind {
            self.type_decl(b);
        }
    }
}

/// The statement-list element that directly encloses the innermost frame,
/// or `None` when the position is not inside a statement list (field
/// initializer, unbraced `if` branch).
pub fn enclosing_list_stmt<'a>(frames: &[Frame<'a>]) -> Option<(&'a Stmt, &'a [Stmt], usize)> {
    for f in frames.iter().rev() {
        match *f {
            Frame::Stmt { stmt, list: Some((l, i)) } => return Some((stmt, l, i)),
            Frame::Stmt { list: None, .. } => {
                // Nested blocks are themselves unlisted statements: keep
                // looking only if this frame is a braced block.
                if !matches!(f, Frame::Stmt { stmt: Stmt { kind: StmtKind::Block(_), .. }, .. }) {
                    return None;
                }
            }
            Frame::Branch { .. } => {}
            Frame::Type(_) | Frame::Method(_) | Frame::Field(_) => return None,
        }
    }
    None
}

pub fn enclosing_method<'a>(frames: &[Frame<'a>]) -> Option<&'a MethodDecl> {
    frames.iter().rev().find_map(|f| match f {
        Frame::Method(m) => Some(*m),
        _ => None,
    })
}

pub fn enclosing_type<'a>(frames: &[Frame<'a>]) -> Option<&'a TypeDecl> {
    frames.iter().rev().find_map(|f| match f {
        Frame::Type(t) => Some(*t),
        _ => None,
    })
}

/// Conditions of every `if` whose branch encloses the position.
pub fn enclosing_conditions<'a>(frames: &[Frame<'a>]) -> Vec<&'a Expr> {
    frames
        .iter()
        .filter_map(|f| match f {
            Frame::Branch { cond, .. } => Some(*cond),
            _ => None,
        })
        .collect()
}

/// `(if statement span, branch)` pairs enclosing the position.
pub fn branch_path(frames: &[Frame<'_>]) -> Vec<(Span, Branch)> {
    frames
        .iter()
        .filter_map(|f| match f {
            Frame::Branch { stmt, branch, .. } => Some((stmt.span, *branch)),
            _ => None,
        })
        .collect()
}

/// True if two positions lie in different branches of a common `if`.
pub fn mutually_exclusive(a: &[(Span, Branch)], b: &[(Span, Branch)]) -> bool {
    a.iter().any(|(sa, ba)| b.iter().any(|(sb, bb)| sa == sb && ba != bb))
}

struct FindStmt<'a> {
    span: Span,
    found: Option<Vec<Frame<'a>>>,
}

impl<'a> Visitor<'a> for FindStmt<'a> {
    fn stmt(&mut self, s: &'a Stmt, frames: &[Frame<'a>]) {
        if s.span == self.span && self.found.is_none() {
            self.found = Some(frames.to_vec());
        }
    }
}

/// Frame stack of the statement with exactly this span (its own frame last).
pub fn frames_of_stmt(unit: &CompilationUnit, span: Span) -> Option<Vec<Frame<'_>>> {
    let mut f = FindStmt { span, found: None };
    walk_unit(unit, &mut f);
    f.found
}

struct FindExpr<'a> {
    span: Span,
    found: Option<(&'a Expr, Vec<Frame<'a>>)>,
}

impl<'a> Visitor<'a> for FindExpr<'a> {
    fn expr(&mut self, e: &'a Expr, frames: &[Frame<'a>]) {
        if e.span == self.span && self.found.is_none() {
            self.found = Some((e, frames.to_vec()));
        }
    }
}

/// The outermost expression with exactly this span and its frame stack.
pub fn find_expr(unit: &CompilationUnit, span: Span) -> Option<(&Expr, Vec<Frame<'_>>)> {
    let mut f = FindExpr { span, found: None };
    walk_unit(unit, &mut f);
    f.found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jast::parse;

    struct Calls<'a>(Vec<(&'a Expr, Vec<Frame<'a>>)>);
    impl<'a> Visitor<'a> for Calls<'a> {
        fn expr(&mut self, e: &'a Expr, frames: &[Frame<'a>]) {
            if matches!(e.kind, ExprKind::MethodCall { .. }) {
                self.0.push((e, frames.to_vec()));
            }
        }
    }

    #[test]
    fn list_context_and_guards() {
        let u = parse("class A { int f = g(); void m() { if (c) { a(); } else b(); } }").unwrap();
        let mut calls = Calls(Vec::new());
        walk_unit(&u, &mut calls);
        let names: Vec<_> = calls.0.iter().map(|(e, _)| crate::jast::render_expr(e)).collect();
        assert_eq!(names, vec!["g()", "a()", "b()"]);
        assert!(enclosing_list_stmt(&calls.0[0].1).is_none());
        assert!(enclosing_list_stmt(&calls.0[1].1).is_some());
        assert!(enclosing_list_stmt(&calls.0[2].1).is_none());
        assert_eq!(enclosing_conditions(&calls.0[1].1).len(), 1);
        let pa = branch_path(&calls.0[1].1);
        let pb = branch_path(&calls.0[2].1);
        assert!(mutually_exclusive(&pa, &pb));
        assert!(!mutually_exclusive(&pa, &pa));
    }
}
