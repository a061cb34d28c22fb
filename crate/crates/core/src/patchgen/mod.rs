//! Semantic patch synthesis from an after-update example.
//!
//! The example holds an `if` on `SDK_INT` with the replacement API in one
//! branch and the deprecated API in the other. The deprecated statement
//! becomes the context pattern (receiver `classIden`, arguments `iden<i>`,
//! other parts `exp<N>`), and the replacement statement becomes added code
//! in which new arguments are replaced by example values found through
//! [`dataflow`](crate::dataflow) and bound to `newParameterVariable<K>`
//! temporaries.

mod format;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use format::{parse_patch, render_patch, MalformedPatch};

use crate::dataflow::{self, DefKind, Definition, ResolutionContext};
use crate::jast::lexer::{self, TokenKind};
use crate::jast::walk::{Branch, Frame};
use crate::jast::{self, render_expr, BinaryOp, CompilationUnit, Expr, ExprKind, Stmt, StmtKind};
use crate::normal::simple_type;
use crate::sigmap::{self, ApiMapping, CallSite};

pub const PATCH_TEMP_PREFIX: &str = "newParameterVariable";
pub const RECEIVER_METAVAR: &str = "classIden";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatchGenError {
    #[error("example shape: {0}")]
    ExampleShape(String),
    #[error("line {line}: cannot resolve `{expr}` to a value usable outside the example")]
    Resolution { expr: String, line: usize },
    #[error("example: {0}")]
    Parse(#[from] jast::ParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MetaKind {
    Expression,
    Identifier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaVar {
    pub kind: MetaKind,
    pub name: String,
}

/// A statement pattern; equality is by canonical text.
#[derive(Debug, Clone)]
pub struct StmtPattern {
    pub text: String,
    pub stmt: Stmt,
}

impl StmtPattern {
    pub fn new(stmt: Stmt) -> Self {
        StmtPattern { text: jast::render_stmt(&stmt, "", "\n"), stmt }
    }

    /// Parse exactly one statement.
    pub fn parse(text: &str) -> Option<Self> {
        let mut stmts = jast::parse_statements(text).ok()?;
        if stmts.len() != 1 || matches!(stmts[0].kind, StmtKind::Opaque(_)) {
            return None;
        }
        Some(StmtPattern::new(stmts.remove(0)))
    }
}

impl PartialEq for StmtPattern {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl fmt::Display for StmtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// One logical piece of added code.
#[derive(Debug, Clone, PartialEq)]
pub enum Fragment {
    /// `if (<cond>) {`
    GuardOpen(String),
    /// `} else {`
    ElseOpen,
    /// `}`
    Close,
    Stmt(StmtPattern),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PatchLine {
    Context(StmtPattern),
    Add(Fragment),
    Remove(StmtPattern),
    Ellipsis,
}

/// What a target needs for added code to compile: imports and definitions
/// copied from the example.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Needs {
    pub imports: Vec<String>,
    pub definitions: Vec<Definition>,
}

impl Needs {
    pub fn is_empty(&self) -> bool {
        self.imports.is_empty() && self.definitions.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemanticPatch {
    pub rule_name: String,
    pub metavars: Vec<MetaVar>,
    /// The guard condition with whitespace runs collapsed to one space.
    pub guard_cond: String,
    pub hunk: Vec<PatchLine>,
    pub needs: Needs,
}

impl SemanticPatch {
    /// The single context (or remove) pattern.
    pub fn context(&self) -> &StmtPattern {
        self.hunk
            .iter()
            .find_map(|l| match l {
                PatchLine::Context(p) | PatchLine::Remove(p) => Some(p),
                _ => None,
            })
            .expect("validated patch has a context line")
    }

    pub fn is_metavar(&self, name: &str) -> Option<MetaKind> {
        self.metavars.iter().find(|m| m.name == name).map(|m| m.kind)
    }

    /// Names of the temporaries declared by added statements.
    pub fn temps(&self) -> Vec<String> {
        self.hunk
            .iter()
            .filter_map(|l| match l {
                PatchLine::Add(Fragment::Stmt(p)) => match &p.stmt.kind {
                    StmtKind::LocalVar(d) => Some(d.vars.iter().map(|v| v.name.clone()).collect::<Vec<_>>()),
                    _ => None,
                },
                _ => None,
            })
            .flatten()
            .collect()
    }

    /// Method name and arity of the deepest call in the context pattern.
    pub fn anchor(&self) -> Option<(String, usize)> {
        let mut found = None;
        for e in self.context().stmt.exprs() {
            e.for_each(&mut |x| {
                if let ExprKind::MethodCall { name, args, .. } = &x.kind {
                    found = Some((name.clone(), args.len()));
                }
            });
        }
        found
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GenOptions {
    /// Keep deprecated-call arguments symbolic (`iden<i>`) when a new
    /// argument's value flows from them, instead of using example values.
    pub rewire_shared_args: bool,
}

/// Collapse runs of whitespace to a single space.
pub fn collapse_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Which branch of an `SDK_INT` comparison runs on newer platforms.
fn newer_branch(cond: &Expr) -> Branch {
    fn flip(b: Branch) -> Branch {
        match b {
            Branch::Then => Branch::Else,
            Branch::Else => Branch::Then,
        }
    }
    match &cond.kind {
        ExprKind::Paren(inner) => newer_branch(inner),
        ExprKind::Unary { op, operand, .. } if op == "!" => flip(newer_branch(operand)),
        ExprKind::Binary { op, lhs, rhs } => {
            let (l, r) = (sigmap::mentions_sdk_int(lhs), sigmap::mentions_sdk_int(rhs));
            match op {
                BinaryOp::Ge | BinaryOp::Gt if l => Branch::Then,
                BinaryOp::Le | BinaryOp::Lt if l => Branch::Else,
                BinaryOp::Le | BinaryOp::Lt if r => Branch::Then,
                BinaryOp::Ge | BinaryOp::Gt if r => Branch::Else,
                BinaryOp::And | BinaryOp::Or if l => newer_branch(lhs),
                BinaryOp::And | BinaryOp::Or if r => newer_branch(rhs),
                _ => Branch::Then,
            }
        }
        _ => Branch::Then,
    }
}

/// Innermost SDK guard with `a` and `b` in opposite branches.
fn common_guard<'a>(a: &CallSite<'a>, b: &CallSite<'a>) -> Option<(&'a Stmt, &'a Expr, Branch)> {
    let guards = |s: &CallSite<'a>| -> Vec<(&'a Stmt, &'a Expr, Branch)> {
        s.frames
            .iter()
            .filter_map(|f| match *f {
                Frame::Branch { stmt, cond, branch } => Some((stmt, cond, branch)),
                _ => None,
            })
            .collect()
    };
    let gb = guards(b);
    guards(a).into_iter().rev().find(|(stmt, cond, branch)| {
        sigmap::mentions_sdk_int(cond) && gb.iter().any(|(s2, _, b2)| std::ptr::eq(*stmt, *s2) && b2 != branch)
    })
}

/// The statement holding a call directly (nearest statement frame).
fn holding_stmt<'a>(site: &CallSite<'a>) -> Option<&'a Stmt> {
    site.frames.iter().rev().find_map(|f| match *f {
        Frame::Stmt { stmt, .. } => Some(stmt),
        _ => None,
    })
}

struct Pair<'a> {
    dep: CallSite<'a>,
    upd: CallSite<'a>,
    cond: &'a Expr,
    /// Branch holding the replacement call.
    upd_branch: Branch,
}

fn find_pair<'a>(unit: &'a CompilationUnit, mapping: &ApiMapping) -> Option<Pair<'a>> {
    let deps = sigmap::find_invocations(unit, &mapping.deprecated);
    let upds = sigmap::find_invocations(unit, &mapping.replacement);
    let mut candidates = Vec::new();
    for d in &deps {
        for u in &upds {
            if std::ptr::eq(d.call, u.call) {
                continue;
            }
            if let Some((_, cond, dep_branch)) = common_guard(d, u) {
                let upd_branch = if dep_branch == Branch::Then { Branch::Else } else { Branch::Then };
                candidates.push(Pair { dep: d.clone(), upd: u.clone(), cond, upd_branch });
            }
        }
    }
    // Same-name mappings pair each call both ways; the guard's direction
    // tells which side is new.
    let preferred = candidates.iter().position(|p| p.upd_branch == newer_branch(p.cond));
    match preferred {
        Some(i) => Some(candidates.swap_remove(i)),
        None => candidates.into_iter().next(),
    }
}

fn line_of(unit: &CompilationUnit, e: &Expr) -> usize {
    lexer::line_of(&unit.text, e.span.start)
}

/// Generate a patch from `example` for `mapping`.
pub fn generate_patch(
    example: &CompilationUnit,
    mapping: &ApiMapping,
    opts: GenOptions,
) -> Result<SemanticPatch, PatchGenError> {
    if let Some(pair) = find_pair(example, mapping) {
        return Generator::new(example, mapping, opts).run(pair);
    }
    // Snippet examples consisting of bare statements.
    let wrapped = format!("class Example {{\nvoid example() {{\n{}\n}}\n}}\n", example.text);
    if let Ok(unit) = jast::parse(&wrapped) {
        if let Some(pair) = find_pair(&unit, mapping) {
            return Generator::new(&unit, mapping, opts).run(pair);
        }
    }
    Err(PatchGenError::ExampleShape(format!(
        "no if/else on SDK_INT with `{}` in one branch and `{}` in the other",
        mapping.replacement, mapping.deprecated
    )))
}

struct Generator<'a, 'm> {
    unit: &'a CompilationUnit,
    mapping: &'m ApiMapping,
    opts: GenOptions,
    /// Canonical text of deprecated-statement parts to their metavariable.
    bound: HashMap<String, String>,
    exp_count: usize,
    used: BTreeSet<String>,
    needs: Vec<Definition>,
}

impl<'a, 'm> Generator<'a, 'm> {
    fn new(unit: &'a CompilationUnit, mapping: &'m ApiMapping, opts: GenOptions) -> Self {
        Generator { unit, mapping, opts, bound: HashMap::new(), exp_count: 0, used: BTreeSet::new(), needs: Vec::new() }
    }

    fn run(mut self, pair: Pair<'a>) -> Result<SemanticPatch, PatchGenError> {
        let dep_stmt = self.checked_stmt(&pair.dep, "deprecated")?;
        let upd_stmt = self.checked_stmt(&pair.upd, "replacement")?;

        let context = self.abstract_stmt(dep_stmt, &mut |g, e| g.abstract_dep(e, pair.dep.call))?;
        let mut temps: Vec<Stmt> = Vec::new();
        let updated = self.abstract_stmt(upd_stmt, &mut |g, e| g.abstract_upd(e, &pair.upd, &mut temps))?;

        let guard_cond = collapse_ws(self.unit.slice(pair.cond.span));
        let mut new_side: Vec<PatchLine> =
            temps.into_iter().map(|s| PatchLine::Add(Fragment::Stmt(StmtPattern::new(s)))).collect();
        new_side.push(PatchLine::Add(Fragment::Stmt(StmtPattern::new(updated))));
        let old_side = vec![PatchLine::Context(StmtPattern::new(context))];
        let (then_side, else_side) = match pair.upd_branch {
            Branch::Then => (new_side, old_side),
            Branch::Else => (old_side, new_side),
        };
        let mut hunk = vec![PatchLine::Ellipsis, PatchLine::Add(Fragment::GuardOpen(guard_cond.clone()))];
        hunk.extend(then_side);
        hunk.push(PatchLine::Add(Fragment::ElseOpen));
        hunk.extend(else_side);
        hunk.push(PatchLine::Add(Fragment::Close));

        let definitions = canonical_definitions(dataflow::close_definitions(&self.needs, self.unit));
        let mut patch = SemanticPatch {
            rule_name: format!("update_{}", self.mapping.deprecated.method_name),
            metavars: self.declared_metavars(),
            guard_cond,
            hunk,
            needs: Needs { imports: Vec::new(), definitions },
        };
        patch.needs.imports = required_imports(&patch, self.unit, self.mapping);
        Ok(patch)
    }

    fn checked_stmt(&self, site: &CallSite<'a>, which: &str) -> Result<&'a Stmt, PatchGenError> {
        let stmt = holding_stmt(site)
            .ok_or_else(|| PatchGenError::ExampleShape(format!("the {which} call is not inside a statement")))?;
        match &stmt.kind {
            StmtKind::Expr(_) | StmtKind::Return(Some(_)) => Ok(stmt),
            _ => Err(PatchGenError::ExampleShape(format!(
                "line {}: the {which} call must be an expression or return statement inside the if/else, found `{}`",
                lexer::line_of(&self.unit.text, stmt.span.start),
                collapse_ws(self.unit.slice(stmt.span))
            ))),
        }
    }

    fn abstract_stmt(
        &mut self,
        stmt: &Stmt,
        f: &mut dyn FnMut(&mut Self, &Expr) -> Result<Expr, PatchGenError>,
    ) -> Result<Stmt, PatchGenError> {
        let kind = match &stmt.kind {
            StmtKind::Expr(e) => StmtKind::Expr(f(self, e)?),
            StmtKind::Return(Some(e)) => StmtKind::Return(Some(f(self, e)?)),
            _ => unreachable!("checked_stmt admits only expression and return statements"),
        };
        Ok(Stmt { kind, span: stmt.span })
    }

    fn metavar(&mut self, name: String) -> Expr {
        self.used.insert(name.clone());
        Expr::name(name)
    }

    fn bind(&mut self, e: &Expr, name: String) -> Expr {
        self.bound.entry(render_expr(e)).or_insert_with(|| name.clone());
        self.metavar(name)
    }

    fn abstract_dep(&mut self, e: &Expr, call: &Expr) -> Result<Expr, PatchGenError> {
        if std::ptr::eq(e, call) {
            let ExprKind::MethodCall { receiver, name, args } = &e.kind else { unreachable!() };
            let receiver = receiver.as_deref().map(|r| Box::new(self.bind(r, RECEIVER_METAVAR.to_string())));
            let args = args.iter().enumerate().map(|(i, a)| self.bind(a, format!("iden{i}"))).collect();
            return Ok(Expr::new(ExprKind::MethodCall { receiver, name: name.clone(), args }, e.span));
        }
        if e.span.contains(call.span) {
            return self.rebuild(e, &mut |g, c| g.abstract_dep(c, call));
        }
        if let Some(mv) = self.bound.get(&render_expr(e)).cloned() {
            return Ok(self.metavar(mv));
        }
        let name = format!("exp{}", self.exp_count);
        self.exp_count += 1;
        Ok(self.bind(e, name))
    }

    fn abstract_upd(&mut self, e: &Expr, site: &CallSite<'a>, temps: &mut Vec<Stmt>) -> Result<Expr, PatchGenError> {
        if let Some(mv) = self.bound.get(&render_expr(e)).cloned() {
            return Ok(self.metavar(mv));
        }
        if std::ptr::eq(e, site.call) {
            let ExprKind::MethodCall { receiver, name, args } = &e.kind else { unreachable!() };
            let receiver = match receiver.as_deref() {
                Some(r) => Some(Box::new(self.shared_or_resolved(r, site)?)),
                None => None,
            };
            let mut new_args = Vec::new();
            for (j, a) in args.iter().enumerate() {
                if let Some(mv) = self.bound.get(&render_expr(a)).cloned() {
                    new_args.push(self.metavar(mv));
                    continue;
                }
                let value = self.resolve(a, site)?;
                let temp = format!("{PATCH_TEMP_PREFIX}{}", temps.len());
                let ty = simple_type(self.mapping.replacement.param_types.get(j).map_or("Object", |s| s));
                let decl = format!("{ty} {temp} = {};", render_expr(&value));
                let stmt = StmtPattern::parse(&decl).expect("synthesized declaration parses").stmt;
                temps.push(stmt);
                new_args.push(Expr::name(temp));
            }
            return Ok(Expr::new(ExprKind::MethodCall { receiver, name: name.clone(), args: new_args }, e.span));
        }
        if e.span.contains(site.call.span) {
            if let ExprKind::Assign { lhs, .. } = &e.kind {
                if !self.bound.contains_key(&render_expr(lhs)) {
                    return Err(PatchGenError::ExampleShape(format!(
                        "line {}: the branches assign different targets (`{}`)",
                        line_of(self.unit, e),
                        render_expr(lhs)
                    )));
                }
            }
            return self.rebuild(e, &mut |g, c| g.abstract_upd(c, site, temps));
        }
        self.shared_or_resolved(e, site)
    }

    fn shared_or_resolved(&mut self, e: &Expr, site: &CallSite<'a>) -> Result<Expr, PatchGenError> {
        if let Some(mv) = self.bound.get(&render_expr(e)).cloned() {
            return Ok(self.metavar(mv));
        }
        self.resolve(e, site)
    }

    fn resolve(&mut self, e: &Expr, site: &CallSite<'a>) -> Result<Expr, PatchGenError> {
        let ctx = ResolutionContext::new(self.unit, site.frames.clone());
        let stops: HashMap<String, Expr> = if self.opts.rewire_shared_args {
            self.bound
                .iter()
                .filter(|(k, v)| v.starts_with("iden") && jast::parse_expression(k).is_some_and(|x| x.as_name().is_some()))
                .map(|(k, v)| (k.clone(), Expr::name(v.clone())))
                .collect()
        } else {
            HashMap::new()
        };
        let v = dataflow::resolve_with_stops(e, &ctx, &stops);
        if !v.is_resolved() {
            return Err(PatchGenError::Resolution { expr: collapse_ws(self.unit.slice(e.span)), line: line_of(self.unit, e) });
        }
        // Metavariables introduced through stops count as used.
        v.expr.for_each(&mut |x| {
            if let Some(n) = x.as_name() {
                if stops.values().any(|s| s.as_name() == Some(n)) {
                    self.used.insert(n.to_string());
                }
            }
        });
        for d in v.needs {
            if !self.needs.contains(&d) {
                self.needs.push(d);
            }
        }
        Ok(v.expr)
    }

    /// Copy `e` with each direct child replaced by `f(child)`.
    fn rebuild(
        &mut self,
        e: &Expr,
        f: &mut dyn FnMut(&mut Self, &Expr) -> Result<Expr, PatchGenError>,
    ) -> Result<Expr, PatchGenError> {
        let mut out = e.clone();
        let originals = e.children();
        let mut new_children = Vec::with_capacity(originals.len());
        for c in originals {
            new_children.push(f(self, c)?);
        }
        for (slot, new) in out.children_mut().into_iter().zip(new_children) {
            *slot = new;
        }
        Ok(out)
    }

    fn declared_metavars(&self) -> Vec<MetaVar> {
        let mut out = Vec::new();
        let mut exps: Vec<&String> = self.used.iter().filter(|n| n.starts_with("exp")).collect();
        exps.sort_by_key(|n| n[3..].parse::<usize>().unwrap_or(0));
        out.extend(exps.into_iter().map(|n| MetaVar { kind: MetaKind::Expression, name: n.clone() }));
        let mut idens: Vec<&String> = self.used.iter().filter(|n| n.starts_with("iden")).collect();
        idens.sort_by_key(|n| n[4..].parse::<usize>().unwrap_or(0));
        out.extend(idens.into_iter().map(|n| MetaVar { kind: MetaKind::Identifier, name: n.clone() }));
        if self.used.contains(RECEIVER_METAVAR) {
            out.push(MetaVar { kind: MetaKind::Identifier, name: RECEIVER_METAVAR.to_string() });
        }
        out
    }
}

/// Field definitions are keyed by their declaration text (named after its
/// first declarator) so that multi-variable declarations are copied once.
pub fn canonical_definitions(defs: Vec<Definition>) -> Vec<Definition> {
    let mut out: Vec<Definition> = Vec::new();
    for mut d in defs {
        d.text = dedent_member(&d.text);
        if d.kind == DefKind::Field {
            if out.iter().any(|o| o.kind == DefKind::Field && o.text == d.text) {
                continue;
            }
            if let Some(first) = first_declarator(&d.text) {
                d.name = first;
            }
        }
        out.push(d);
    }
    out
}

/// Shift continuation lines of a member left so that its last line (the
/// closing brace, for methods and types) has no indentation.
pub(crate) fn dedent_member(text: &str) -> String {
    let lines: Vec<&str> = text.trim_end().lines().collect();
    let Some(last) = lines.last().filter(|_| lines.len() > 1) else {
        return text.trim().to_string();
    };
    let base = last.len() - last.trim_start().len();
    let mut out = lines[0].trim_end().to_string();
    for l in &lines[1..] {
        out.push('\n');
        let lead = l.len() - l.trim_start().len();
        out.push_str(l[lead.min(base)..].trim_end());
    }
    out
}

fn first_declarator(field_text: &str) -> Option<String> {
    let unit = jast::parse(&format!("class N {{ {field_text} }}")).ok()?;
    let t = unit.types().next()?;
    let f = t.fields().next()?;
    f.vars.first().map(|v| v.name.clone())
}

/// Fully qualified names for simple type names used by added code and
/// copied definitions, from the example's imports and the API signatures.
fn required_imports(patch: &SemanticPatch, example: &CompilationUnit, mapping: &ApiMapping) -> Vec<String> {
    let mut known: HashMap<String, String> = HashMap::new();
    let mut learn = |fqn: &str| {
        if let Some((pkg, simple)) = fqn.rsplit_once('.') {
            if pkg != "java.lang" && !known.contains_key(simple) {
                known.insert(simple.to_string(), fqn.to_string());
            }
        }
    };
    for i in example.imports.iter().filter(|i| !i.is_static && !i.wildcard) {
        learn(&i.name);
    }
    let sigs = [&mapping.replacement, &mapping.deprecated];
    for s in sigs {
        learn(&s.class_name);
        for p in &s.param_types {
            for w in p.split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '$' || c == '.')) {
                if w.contains('.') {
                    learn(w);
                }
            }
        }
    }
    let defined: BTreeSet<&str> =
        patch.needs.definitions.iter().filter(|d| d.kind == DefKind::Type).map(|d| d.name.as_str()).collect();
    let mut texts: Vec<String> = vec![patch.guard_cond.clone()];
    for l in &patch.hunk {
        if let PatchLine::Add(Fragment::Stmt(p)) = l {
            texts.push(p.text.clone());
        }
    }
    texts.extend(patch.needs.definitions.iter().map(|d| d.text.clone()));
    let mut out = BTreeSet::new();
    for t in &texts {
        let Ok(toks) = lexer::scan(t) else { continue };
        for (i, tok) in toks.iter().enumerate() {
            let s = tok.text(t);
            let selected = i > 0 && toks[i - 1].text(t) == ".";
            if tok.kind != TokenKind::Ident || selected || !s.starts_with(|c: char| c.is_uppercase()) {
                continue;
            }
            if let Some(fqn) = known.get(s) {
                if !defined.contains(s) {
                    out.insert(fqn.clone());
                }
            }
        }
    }
    out.into_iter().collect()
}
