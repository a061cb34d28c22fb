//! Bottom-up def-use resolution of expressions in an example unit.
//!
//! A name is chased to its nearest preceding definition in the enclosing
//! statement lists, then to fields of the enclosing types, and the defining
//! expression is resolved recursively. The result is a *ground* expression:
//! it mentions no local variables, only literals, static members, calls and
//! object creations. Helper methods, fields and types of the example that the
//! ground expression refers to are reported as [`Definition`]s so they can be
//! copied into target files.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::jast::lexer::{self, TokenKind};
use crate::jast::walk::{self, Frame};
use crate::jast::{CompilationUnit, Expr, ExprKind, FieldDecl, Member, MethodDecl, Stmt, StmtKind, TypeDecl, TypeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValueKind {
    Literal,
    StaticMember,
    MethodInvocation,
    ObjectCreation,
    /// Arithmetic or other operator expression over ground operands; not folded.
    Compound,
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DefKind {
    Method { arity: usize },
    Field,
    Type,
}

/// A member or type of the example unit, carried as verbatim source text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Definition {
    pub kind: DefKind,
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedValue {
    pub kind: ValueKind,
    /// Ground replacement expression, or the original one when unresolved.
    pub expr: Expr,
    /// Example definitions referenced directly by `expr`.
    pub needs: Vec<Definition>,
}

impl ResolvedValue {
    pub fn is_resolved(&self) -> bool {
        self.kind != ValueKind::Unresolved
    }
}

/// Where an expression sits: the example unit and the ancestor frames of the
/// expression (outermost first).
#[derive(Debug, Clone)]
pub struct ResolutionContext<'a> {
    pub unit: &'a CompilationUnit,
    pub frames: Vec<Frame<'a>>,
}

impl<'a> ResolutionContext<'a> {
    pub fn new(unit: &'a CompilationUnit, frames: Vec<Frame<'a>>) -> Self {
        ResolutionContext { unit, frames }
    }

    /// Context of the expression with exactly this span, if any.
    pub fn at_expr(unit: &'a CompilationUnit, span: crate::jast::Span) -> Option<(&'a Expr, Self)> {
        let (e, frames) = walk::find_expr(unit, span)?;
        Some((e, ResolutionContext { unit, frames }))
    }

    pub fn enclosing_method(&self) -> Option<&'a MethodDecl> {
        walk::enclosing_method(&self.frames)
    }

    pub fn enclosing_type(&self) -> Option<&'a TypeDecl> {
        walk::enclosing_type(&self.frames)
    }
}

pub fn resolve_expression(e: &Expr, ctx: &ResolutionContext<'_>) -> ResolvedValue {
    resolve_with_stops(e, ctx, &HashMap::new())
}

/// Like [`resolve_expression`], but a variable whose name is a key of `stops`
/// resolves to the mapped expression instead of being chased.
pub fn resolve_with_stops(e: &Expr, ctx: &ResolutionContext<'_>, stops: &HashMap<String, Expr>) -> ResolvedValue {
    let mut r = Resolver { unit: ctx.unit, stops, memo: HashMap::new() };
    match r.expr(e, &ctx.frames) {
        Some(ground) => {
            let needs = direct_needs(ctx.unit, &ground, &ctx.frames);
            ResolvedValue { kind: classify(&ground), expr: ground, needs }
        }
        None => ResolvedValue { kind: ValueKind::Unresolved, expr: e.clone(), needs: Vec::new() },
    }
}

fn classify(e: &Expr) -> ValueKind {
    match &e.kind {
        ExprKind::Literal { .. } => ValueKind::Literal,
        ExprKind::MethodCall { .. } => ValueKind::MethodInvocation,
        ExprKind::New { .. } => ValueKind::ObjectCreation,
        ExprKind::Name(_) => ValueKind::StaticMember,
        ExprKind::FieldAccess { .. } if static_chain(e) => ValueKind::StaticMember,
        _ => ValueKind::Compound,
    }
}

fn static_chain(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Name(_) => true,
        ExprKind::FieldAccess { receiver, .. } => static_chain(receiver),
        _ => false,
    }
}

#[derive(Clone, Copy)]
enum Lookup<'a> {
    /// Defined by this expression, to be resolved in the given frames.
    Value(&'a Expr, usize),
    /// A variable exists but has no single reaching value.
    Dead,
    /// Not a variable in scope.
    Unknown,
}

struct Resolver<'a, 's> {
    unit: &'a CompilationUnit,
    stops: &'s HashMap<String, Expr>,
    /// Keyed by definition offset; `None` while in progress or unresolved.
    memo: HashMap<usize, Option<Expr>>,
}

impl<'a> Resolver<'a, '_> {
    fn expr(&mut self, e: &Expr, frames: &[Frame<'a>]) -> Option<Expr> {
        let k = |kind| Some(Expr::new(kind, e.span));
        match &e.kind {
            ExprKind::Literal { .. } => Some(e.clone()),
            ExprKind::Name(n) if n == "this" || n == "super" => Some(e.clone()),
            ExprKind::Name(n) => self.name(n, frames, false),
            ExprKind::FieldAccess { receiver, name } => {
                if receiver.as_name() == Some("this") {
                    return self.field_in_types(name, frames);
                }
                if let Some(t) = receiver.as_name().and_then(|r| self.local_type(r, frames)) {
                    if let Some(found) = self.type_field(t, name, frames) {
                        return found;
                    }
                }
                let r = self.receiver(receiver, frames)?;
                k(ExprKind::FieldAccess { receiver: Box::new(r), name: name.clone() })
            }
            ExprKind::MethodCall { receiver, name, args } => {
                let args = args.iter().map(|a| self.expr(a, frames)).collect::<Option<Vec<_>>>()?;
                let receiver = match receiver.as_deref() {
                    None => None,
                    Some(r) if r.as_name() == Some("this") => None,
                    Some(r) if r.as_name().is_some_and(|n| self.is_enclosing_type(n, frames)) => None,
                    Some(r) => Some(Box::new(self.receiver(r, frames)?)),
                };
                k(ExprKind::MethodCall { receiver, name: name.clone(), args })
            }
            ExprKind::New { ty, args, body, body_text } => {
                if body.is_some() || body_text.is_some() {
                    return None;
                }
                let args = args.iter().map(|a| self.expr(a, frames)).collect::<Option<Vec<_>>>()?;
                k(ExprKind::New { ty: ty.clone(), args, body: None, body_text: None })
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let (lhs, rhs) = (self.expr(lhs, frames)?, self.expr(rhs, frames)?);
                k(ExprKind::Binary { op: *op, lhs: Box::new(lhs), rhs: Box::new(rhs) })
            }
            ExprKind::Unary { op, .. } if op == "++" || op == "--" => None,
            ExprKind::Unary { op, operand, postfix } => {
                let operand = Box::new(self.expr(operand, frames)?);
                k(ExprKind::Unary { op: op.clone(), operand, postfix: *postfix })
            }
            ExprKind::Assign { .. } | ExprKind::Opaque(_) => None,
            ExprKind::Cast { ty, operand } => {
                let operand = Box::new(self.expr(operand, frames)?);
                k(ExprKind::Cast { ty: ty.clone(), operand })
            }
            ExprKind::Paren(inner) => {
                let inner = self.expr(inner, frames)?;
                // Parentheses around a primary are noise once substituted.
                if inner.precedence() == crate::jast::prec::POSTFIX {
                    Some(inner)
                } else {
                    k(ExprKind::Paren(Box::new(inner)))
                }
            }
            ExprKind::Conditional { cond, then, otherwise } => {
                let cond = Box::new(self.expr(cond, frames)?);
                let then = Box::new(self.expr(then, frames)?);
                let otherwise = Box::new(self.expr(otherwise, frames)?);
                k(ExprKind::Conditional { cond, then, otherwise })
            }
            ExprKind::ArrayAccess { array, index } => {
                let array = Box::new(self.expr(array, frames)?);
                let index = Box::new(self.expr(index, frames)?);
                k(ExprKind::ArrayAccess { array, index })
            }
            ExprKind::InstanceOf { operand, ty } => {
                let operand = Box::new(self.expr(operand, frames)?);
                k(ExprKind::InstanceOf { operand, ty: ty.clone() })
            }
        }
    }

    /// A receiver position: names that are not variables are kept as static
    /// roots (`VibrationEffect`, `android`).
    fn receiver(&mut self, e: &Expr, frames: &[Frame<'a>]) -> Option<Expr> {
        match &e.kind {
            ExprKind::Name(n) if n != "this" && n != "super" => self.name(n, frames, true),
            ExprKind::FieldAccess { receiver, name } if static_chain(e) => {
                let root = root_name(e);
                match self.lookup(root, frames) {
                    Lookup::Unknown if self.local_type(root, frames).is_none() => Some(e.clone()),
                    _ => {
                        let r = self.receiver(receiver, frames)?;
                        Some(Expr::new(ExprKind::FieldAccess { receiver: Box::new(r), name: name.clone() }, e.span))
                    }
                }
            }
            _ => self.expr(e, frames),
        }
    }

    fn name(&mut self, n: &str, frames: &[Frame<'a>], receiver: bool) -> Option<Expr> {
        if let Some(s) = self.stops.get(n) {
            return Some(s.clone());
        }
        match self.lookup(n, frames) {
            Lookup::Value(init, depth) => {
                let key = init.span.start;
                if let Some(done) = self.memo.get(&key) {
                    return done.clone();
                }
                self.memo.insert(key, None);
                let ctx = self.def_frames(frames, depth, init);
                let out = self.expr(init, &ctx);
                self.memo.insert(key, out.clone());
                out
            }
            Lookup::Dead => None,
            Lookup::Unknown if receiver => Some(Expr::name(n)),
            Lookup::Unknown => None,
        }
    }

    /// Frames in which a found definition's initializer is evaluated.
    fn def_frames(&self, frames: &[Frame<'a>], depth: usize, init: &'a Expr) -> Vec<Frame<'a>> {
        let mut out = frames[..depth].to_vec();
        match frames[depth] {
            Frame::Stmt { list: Some((l, _)), .. } => {
                let j = l.iter().position(|s| s.span.contains(init.span)).unwrap_or(0);
                out.push(Frame::Stmt { stmt: &l[j], list: Some((l, j)) });
            }
            Frame::Type(t) => {
                out.push(Frame::Type(t));
                if let Some(f) = t.fields().find(|f| f.span.contains(init.span)) {
                    out.push(Frame::Field(f));
                }
            }
            _ => out.push(frames[depth]),
        }
        out
    }

    /// Find the reaching definition of `n`; the returned depth indexes the
    /// frame (statement list or type) where it was found.
    fn lookup(&self, n: &str, frames: &[Frame<'a>]) -> Lookup<'a> {
        for depth in (0..frames.len()).rev() {
            match frames[depth] {
                Frame::Stmt { list: Some((l, i)), .. } => {
                    for s in l[..i].iter().rev() {
                        match definition_in(s, n) {
                            Some(Some(init)) => return Lookup::Value(init, depth),
                            Some(None) => return Lookup::Dead,
                            None => {}
                        }
                    }
                }
                Frame::Method(m) => {
                    if m.params.iter().any(|p| p.name == n) {
                        return Lookup::Dead;
                    }
                }
                Frame::Type(t) => {
                    if let Some((_, v)) = t.field(n) {
                        return match &v.init {
                            Some(init) => Lookup::Value(init, depth),
                            None => Lookup::Dead,
                        };
                    }
                }
                Frame::Stmt { list: None, .. } | Frame::Branch { .. } | Frame::Field(_) => {}
            }
        }
        Lookup::Unknown
    }

    fn field_in_types(&mut self, n: &str, frames: &[Frame<'a>]) -> Option<Expr> {
        let depth = frames.iter().rposition(|f| matches!(f, Frame::Type(_)))?;
        self.name(n, &frames[..=depth], false)
    }

    /// A named type of the unit visible from `frames`, unless `n` is shadowed
    /// by a variable.
    fn local_type(&self, n: &str, frames: &[Frame<'a>]) -> Option<&'a TypeDecl> {
        if !matches!(self.lookup(n, frames), Lookup::Unknown) {
            return None;
        }
        find_type(self.unit, n)
    }

    /// `Type.FIELD` for a type declared in the unit. `None` if the type has no
    /// such field; `Some(None)` if it exists but cannot be resolved.
    fn type_field(&mut self, t: &'a TypeDecl, name: &str, frames: &[Frame<'a>]) -> Option<Option<Expr>> {
        let (_, v) = t.field(name)?;
        let Some(init) = &v.init else {
            return Some(None);
        };
        let key = init.span.start;
        if let Some(done) = self.memo.get(&key) {
            return Some(done.clone());
        }
        self.memo.insert(key, None);
        let mut ctx = type_frames(t, frames);
        if let Some(f) = t.fields().find(|f| f.span.contains(init.span)) {
            ctx.push(Frame::Field(f));
        }
        let out = self.expr(init, &ctx);
        self.memo.insert(key, out.clone());
        Some(out)
    }

    fn is_enclosing_type(&self, n: &str, frames: &[Frame<'a>]) -> bool {
        matches!(self.lookup(n, frames), Lookup::Unknown)
            && frames.iter().any(|f| matches!(f, Frame::Type(t) if t.name == n && t.kind != TypeKind::Anonymous))
    }
}

/// Frames for evaluating a member of `t`: the prefix of `frames` up to `t`
/// if `t` encloses the position, otherwise `t` alone.
fn type_frames<'a>(t: &'a TypeDecl, frames: &[Frame<'a>]) -> Vec<Frame<'a>> {
    match frames.iter().position(|f| matches!(f, Frame::Type(x) if std::ptr::eq(*x, t))) {
        Some(i) => frames[..=i].to_vec(),
        None => vec![Frame::Type(t)],
    }
}

/// Whether statement `s` defines `n`: `Some(Some(init))` for a single plain
/// definition, `Some(None)` for any other write, `None` if untouched.
fn definition_in<'a>(s: &'a Stmt, n: &str) -> Option<Option<&'a Expr>> {
    match &s.kind {
        StmtKind::LocalVar(d) => {
            if let Some(v) = d.vars.iter().rev().find(|v| v.name == n) {
                return Some(v.init.as_ref());
            }
            if d.vars.iter().filter_map(|v| v.init.as_ref()).any(|e| writes(e, n)) {
                return Some(None);
            }
            None
        }
        StmtKind::Expr(Expr { kind: ExprKind::Assign { op, lhs, rhs }, .. })
            if op == "=" && lhs.as_name() == Some(n) && !writes(rhs, n) =>
        {
            Some(Some(rhs))
        }
        _ => {
            let mut hit = false;
            s.for_each_stmt(&mut |x| {
                hit |= x.exprs().iter().any(|e| writes(e, n));
                if let StmtKind::Opaque(text) = &x.kind {
                    hit |= opaque_writes(text, n);
                }
            });
            hit.then_some(None)
        }
    }
}

fn writes(e: &Expr, n: &str) -> bool {
    e.any(&|x| match &x.kind {
        ExprKind::Assign { lhs, .. } => lhs.as_name() == Some(n),
        ExprKind::Unary { op, operand, .. } => (op == "++" || op == "--") && operand.as_name() == Some(n),
        ExprKind::Opaque(t) => opaque_writes(t, n),
        _ => false,
    })
}

/// Token scan of unparsed text for `n =`, `n += ...`, `n++`, `++n`, or a
/// declaration of `n`.
fn opaque_writes(text: &str, n: &str) -> bool {
    let Ok(toks) = lexer::scan(text) else {
        return text.contains(n);
    };
    let t = |i: usize| toks.get(i).map(|t| t.text(text)).unwrap_or("");
    (0..toks.len()).any(|i| {
        toks[i].kind == TokenKind::Ident
            && t(i) == n
            && (i == 0 || t(i - 1) != ".")
            && (matches!(t(i + 1), "=" | "+=" | "-=" | "*=" | "/=" | "%=" | "&=" | "|=" | "^=" | "<<=" | "++" | "--" | ":")
                || (i > 0 && matches!(t(i - 1), "++" | "--"))
                || (t(i + 1) == ">" && t(i + 2) == ">"))
    })
}

fn root_name(e: &Expr) -> &str {
    match &e.kind {
        ExprKind::Name(n) => n,
        ExprKind::FieldAccess { receiver, .. } => root_name(receiver),
        _ => "",
    }
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

fn find_type<'a>(unit: &'a CompilationUnit, name: &str) -> Option<&'a TypeDecl> {
    all_types(unit).into_iter().find(|t| t.name == name && matches!(t.kind, TypeKind::Class | TypeKind::Interface))
}

/// Type that owns the member at `span`.
fn owner_of(unit: &CompilationUnit, span: crate::jast::Span) -> Option<&TypeDecl> {
    all_types(unit).into_iter().rfind(|t| t.members.iter().any(|m| m.span() == span))
}

/// Identifier-level references made by an expression.
#[derive(Default)]
struct Refs {
    /// Unqualified (or `this.`) calls: name, arity.
    calls: BTreeSet<(String, usize)>,
    /// Leading identifiers of type references and static chains.
    types: BTreeSet<String>,
    /// Bare names and `this.x` selections.
    names: BTreeSet<String>,
}

impl Refs {
    fn expr(&mut self, e: &Expr) {
        e.for_each(&mut |x| match &x.kind {
            ExprKind::Name(n) => {
                self.names.insert(n.clone());
                self.types.insert(n.clone());
            }
            ExprKind::FieldAccess { receiver, name } if receiver.as_name() == Some("this") => {
                self.names.insert(name.clone());
            }
            ExprKind::MethodCall { receiver, name, args } => {
                if receiver.as_deref().is_none_or(|r| r.as_name() == Some("this")) {
                    self.calls.insert((name.clone(), args.len()));
                }
            }
            ExprKind::New { ty, body, .. } => {
                self.type_text(&ty.text);
                if let Some(b) = body {
                    self.type_decl(b);
                }
            }
            ExprKind::Cast { ty, .. } | ExprKind::InstanceOf { ty, .. } => self.type_text(&ty.text),
            ExprKind::Opaque(t) => {
                if let Ok(toks) = lexer::scan(t) {
                    for (i, tok) in toks.iter().enumerate() {
                        if tok.kind != TokenKind::Ident || (i > 0 && toks[i - 1].text(t) == ".") {
                            continue;
                        }
                        let s = tok.text(t).to_string();
                        if toks.get(i + 1).is_some_and(|n| n.text(t) == "(") {
                            // Arity is unknown inside opaque text; match any.
                            self.calls.insert((s, usize::MAX));
                        } else {
                            self.names.insert(s.clone());
                            self.types.insert(s);
                        }
                    }
                }
            }
            _ => {}
        });
    }

    fn type_text(&mut self, text: &str) {
        for w in text.split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '$' || c == '.')) {
            if let Some(root) = w.split('.').next().filter(|r| !r.is_empty()) {
                self.types.insert(root.to_string());
            }
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        s.for_each_stmt(&mut |x| {
            if let StmtKind::LocalVar(d) = &x.kind {
                self.type_text(&d.ty.text);
            }
            for e in x.exprs() {
                self.expr(e);
            }
            if let StmtKind::Opaque(t) = &x.kind {
                self.expr(&Expr::new(ExprKind::Opaque(t.clone()), x.span));
            }
        });
    }

    fn method(&mut self, m: &MethodDecl) {
        if let Some(t) = &m.return_type {
            self.type_text(&t.text);
        }
        for p in &m.params {
            self.type_text(&p.ty.text);
        }
        for s in m.body.iter().flat_map(|b| &b.stmts) {
            self.stmt(s);
        }
    }

    fn field(&mut self, f: &FieldDecl) {
        self.type_text(&f.ty.text);
        for init in f.vars.iter().filter_map(|v| v.init.as_ref()) {
            self.expr(init);
        }
    }

    fn type_decl(&mut self, t: &TypeDecl) {
        for m in &t.members {
            match m {
                Member::Field(f) => self.field(f),
                Member::Method(m) => self.method(m),
                Member::Type(t) => self.type_decl(t),
                Member::Opaque(_) => {}
            }
        }
    }
}

/// Names declared locally by a method (parameters and local variables).
fn method_locals(m: &MethodDecl) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = m.params.iter().map(|p| p.name.clone()).collect();
    for s in m.body.iter().flat_map(|b| &b.stmts) {
        s.for_each_stmt(&mut |x| {
            if let StmtKind::LocalVar(d) = &x.kind {
                out.extend(d.vars.iter().map(|v| v.name.clone()));
            }
        });
    }
    out
}

/// A located definition: owner type (if a member) plus the member.
#[derive(Clone, Copy)]
enum DefRef<'a> {
    Method(&'a TypeDecl, &'a MethodDecl),
    Field(&'a TypeDecl, &'a FieldDecl, &'a str),
    Type(&'a TypeDecl),
}

impl DefRef<'_> {
    fn span_start(&self) -> usize {
        match self {
            DefRef::Method(_, m) => m.span.start,
            DefRef::Field(_, f, _) => f.span.start,
            DefRef::Type(t) => t.span.start,
        }
    }

    fn to_definition(self, unit: &CompilationUnit) -> Definition {
        match self {
            DefRef::Method(_, m) => Definition {
                kind: DefKind::Method { arity: m.arity() },
                name: m.name.clone(),
                text: unit.slice(m.span).to_string(),
            },
            DefRef::Field(_, f, n) => Definition { kind: DefKind::Field, name: n.to_string(), text: unit.slice(f.span).to_string() },
            DefRef::Type(t) => Definition { kind: DefKind::Type, name: t.name.clone(), text: unit.slice(t.span).to_string() },
        }
    }
}

/// Definitions referenced by `refs`, looked up from the member scope `scope`
/// (innermost type last); `locals` are names that shadow fields.
fn referenced<'a>(
    unit: &'a CompilationUnit,
    refs: &Refs,
    scope: &[&'a TypeDecl],
    locals: &BTreeSet<String>,
    excluded_types: &[&'a TypeDecl],
) -> Vec<DefRef<'a>> {
    let mut out = Vec::new();
    for (name, arity) in &refs.calls {
        for t in scope.iter().rev() {
            if let Some(m) = t.methods().find(|m| &m.name == name && (*arity == usize::MAX || m.arity() == *arity) && m.body.is_some()) {
                out.push(DefRef::Method(t, m));
                break;
            }
        }
    }
    for n in refs.names.iter().filter(|n| !locals.contains(*n)) {
        for t in scope.iter().rev() {
            if let Some((f, v)) = t.field(n) {
                out.push(DefRef::Field(t, f, &v.name));
                break;
            }
        }
    }
    for n in &refs.types {
        if let Some(t) = find_type(unit, n) {
            if !excluded_types.iter().any(|x| std::ptr::eq(*x, t)) {
                out.push(DefRef::Type(t));
            }
        }
    }
    out
}

fn scope_of<'a>(frames: &[Frame<'a>]) -> Vec<&'a TypeDecl> {
    frames
        .iter()
        .filter_map(|f| match f {
            Frame::Type(t) => Some(*t),
            _ => None,
        })
        .collect()
}

/// Example definitions a ground expression refers to directly. Fields are
/// not reported here: resolution already replaced them by their values.
fn direct_needs(unit: &CompilationUnit, ground: &Expr, frames: &[Frame<'_>]) -> Vec<Definition> {
    let mut refs = Refs::default();
    refs.expr(ground);
    refs.names.clear();
    let scope = scope_of(frames);
    let mut defs = referenced(unit, &refs, &scope, &BTreeSet::new(), &scope);
    defs.sort_by_key(|d| d.span_start());
    let mut out: Vec<Definition> = Vec::new();
    for d in defs {
        let d = d.to_definition(unit);
        if !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

/// Transitive closure of the definitions `v` needs: helpers called or
/// referenced by already-collected definitions are added until nothing
/// changes. Output is in source order of the example.
pub fn collect_dependencies(v: &ResolvedValue, unit: &CompilationUnit) -> Vec<Definition> {
    close_definitions(&v.needs, unit)
}

pub fn close_definitions(seed: &[Definition], unit: &CompilationUnit) -> Vec<Definition> {
    let mut found: Vec<DefRef<'_>> = seed.iter().filter_map(|d| locate(unit, d)).collect();
    let mut i = 0;
    while i < found.len() {
        let next = match found[i] {
            DefRef::Method(owner, m) => {
                let mut refs = Refs::default();
                refs.method(m);
                let scope = type_chain(unit, owner);
                referenced(unit, &refs, &scope, &method_locals(m), &scope)
            }
            DefRef::Field(owner, f, _) => {
                let mut refs = Refs::default();
                refs.field(f);
                let scope = type_chain(unit, owner);
                referenced(unit, &refs, &scope, &BTreeSet::new(), &scope)
            }
            DefRef::Type(t) => {
                let mut refs = Refs::default();
                refs.type_decl(t);
                // Members of the copied type travel with it.
                let mut scope = type_chain(unit, t);
                scope.pop();
                let mut own = vec![t];
                own.extend(scope.iter().copied());
                referenced(unit, &refs, &scope, &own_member_names(t), &own)
            }
        };
        for d in next {
            if !found.iter().any(|f| same_def(f, &d)) {
                found.push(d);
            }
        }
        i += 1;
    }
    found.sort_by_key(|d| d.span_start());
    let mut out: Vec<Definition> = Vec::new();
    for d in found {
        let d = d.to_definition(unit);
        if !out.iter().any(|o| o.kind == d.kind && o.name == d.name) {
            out.push(d);
        }
    }
    out
}

fn own_member_names(t: &TypeDecl) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in t.fields() {
        out.extend(f.vars.iter().map(|v| v.name.clone()));
    }
    out
}

fn same_def(a: &DefRef<'_>, b: &DefRef<'_>) -> bool {
    match (a, b) {
        (DefRef::Method(_, x), DefRef::Method(_, y)) => std::ptr::eq(*x, *y),
        (DefRef::Field(_, x, n), DefRef::Field(_, y, m)) => std::ptr::eq(*x, *y) && n == m,
        (DefRef::Type(x), DefRef::Type(y)) => std::ptr::eq(*x, *y),
        _ => false,
    }
}

/// Enclosing named types of `t`, outermost first, ending with `t`.
fn type_chain<'a>(unit: &'a CompilationUnit, t: &'a TypeDecl) -> Vec<&'a TypeDecl> {
    let mut chain = vec![t];
    let mut cur = t;
    while let Some(o) = owner_of(unit, cur.span) {
        chain.push(o);
        cur = o;
    }
    chain.reverse();
    chain
}

fn locate<'a>(unit: &'a CompilationUnit, d: &Definition) -> Option<DefRef<'a>> {
    for t in all_types(unit) {
        match d.kind {
            DefKind::Type if t.name == d.name && unit.slice(t.span) == d.text => return Some(DefRef::Type(t)),
            DefKind::Method { .. } => {
                if let Some(m) = t.methods().find(|m| unit.slice(m.span) == d.text) {
                    return Some(DefRef::Method(t, m));
                }
            }
            DefKind::Field => {
                if let Some(f) = t.fields().find(|f| unit.slice(f.span) == d.text) {
                    let n = f.vars.iter().find(|v| v.name == d.name)?;
                    return Some(DefRef::Field(t, f, &n.name));
                }
            }
            _ => {}
        }
    }
    None
}
