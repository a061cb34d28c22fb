//! Tolerant recursive-descent parser.
//!
//! Constructs outside the subset never cause a failure: the enclosing
//! statement, member or argument is re-scanned as a balanced token run and
//! kept as an opaque node. The only hard error is unbalanced delimiters,
//! which the lexer reports before parsing starts.

use super::ast::*;
use super::lexer::{self, is_keyword, Token, TokenKind};
use super::ParseError;

pub(super) struct Backtrack;
type PResult<T> = Result<T, Backtrack>;

const PRIMITIVES: &[&str] = &["boolean", "byte", "char", "short", "int", "long", "float", "double", "void"];

pub(super) struct Parser<'s> {
    src: &'s str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'s> Parser<'s> {
    pub(super) fn new(src: &'s str) -> Result<Self, ParseError> {
        Ok(Parser { src, toks: lexer::tokenize(src)?, pos: 0 })
    }

    fn text_at(&self, i: usize) -> &'s str {
        self.toks.get(i).map_or("", |t| t.text(self.src))
    }

    fn text(&self) -> &'s str {
        self.text_at(self.pos)
    }

    fn kind_at(&self, i: usize) -> Option<TokenKind> {
        self.toks.get(i).map(|t| t.kind)
    }

    fn at(&self, s: &str) -> bool {
        self.toks.get(self.pos).is_some_and(|t| t.kind != TokenKind::Str && t.text(self.src) == s)
    }

    fn at_eof(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos];
        self.pos += 1;
        t
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.at(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> PResult<Token> {
        if self.at(s) {
            Ok(self.bump())
        } else {
            Err(Backtrack)
        }
    }

    fn start(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.span.start)
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn span_from(&self, start: usize) -> Span {
        Span::new(start, self.prev_end().max(start))
    }

    /// Tokens `i` and `i + 1` touch without intervening trivia.
    fn glued(&self, i: usize) -> bool {
        match (self.toks.get(i), self.toks.get(i + 1)) {
            (Some(a), Some(b)) => a.span.end == b.span.start,
            _ => false,
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.toks.get(self.pos) {
            Some(t) if t.kind == TokenKind::Ident && !is_keyword(t.text(self.src)) => {
                self.pos += 1;
                Ok((t.text(self.src).to_string(), t.span))
            }
            _ => Err(Backtrack),
        }
    }

    fn is_ident_at(&self, i: usize) -> bool {
        self.kind_at(i) == Some(TokenKind::Ident) && !is_keyword(self.text_at(i))
    }

    /// Consume an opener and everything up to its matching closer.
    fn skip_balanced(&mut self) -> PResult<()> {
        let mut depth = 0usize;
        loop {
            if self.at_eof() {
                return Err(Backtrack);
            }
            match self.bump().text(self.src) {
                "(" | "[" | "{" => depth += 1,
                ")" | "]" | "}" => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(());
                    }
                }
                _ => {}
            }
            if depth == 0 {
                return Err(Backtrack);
            }
        }
    }

    // ---------------------------------------------------------------- units

    pub(super) fn parse_unit(mut self) -> CompilationUnit {
        let mut package = None;
        let mut imports = Vec::new();
        let mut items: Vec<Item> = Vec::new();
        while !self.at_eof() {
            let save = self.pos;
            if self.at("package") {
                if let Ok(q) = self.package_decl() {
                    package = Some(q);
                    continue;
                }
                self.pos = save;
            } else if self.at("import") {
                if let Ok(i) = self.import_decl() {
                    imports.push(i);
                    continue;
                }
                self.pos = save;
            } else if self.at(";") {
                let t = self.bump();
                items.push(Item::Opaque(t.span));
                continue;
            }
            match self.member() {
                Member::Type(t) => items.push(Item::Type(t)),
                Member::Opaque(s) => items.push(Item::Opaque(s)),
                m => {
                    let span = m.span();
                    match items.last_mut() {
                        Some(Item::Type(t)) if t.kind == TypeKind::Implicit => {
                            t.members.push(m);
                            t.span.end = span.end;
                            t.body_end = span.end;
                        }
                        _ => items.push(Item::Type(TypeDecl {
                            kind: TypeKind::Implicit,
                            modifiers: Modifiers::default(),
                            name: String::new(),
                            members: vec![m],
                            span,
                            keyword_start: span.start,
                            body_end: span.end,
                        })),
                    }
                }
            }
        }
        CompilationUnit { text: self.src.to_string(), package, imports, items }
    }

    fn qualified(&mut self) -> PResult<String> {
        let (mut name, _) = self.ident()?;
        while self.at(".") && self.is_ident_at(self.pos + 1) {
            self.bump();
            name.push('.');
            name.push_str(&self.ident()?.0);
        }
        Ok(name)
    }

    fn package_decl(&mut self) -> PResult<QualifiedName> {
        self.expect("package")?;
        let start = self.start();
        let name = self.qualified()?;
        let span = self.span_from(start);
        self.expect(";")?;
        Ok(QualifiedName { name, span })
    }

    fn import_decl(&mut self) -> PResult<ImportDecl> {
        let start = self.start();
        self.expect("import")?;
        let is_static = self.eat("static");
        let name = self.qualified()?;
        let wildcard = if self.at(".") && self.text_at(self.pos + 1) == "*" {
            self.pos += 2;
            true
        } else {
            false
        };
        self.expect(";")?;
        Ok(ImportDecl { name, is_static, wildcard, span: self.span_from(start) })
    }

    // -------------------------------------------------------------- members

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut mods = Modifiers::default();
        loop {
            if self.at("@") {
                if self.text_at(self.pos + 1) == "interface" {
                    return Err(Backtrack);
                }
                let start = self.start();
                self.bump();
                self.qualified()?;
                if self.at("(") {
                    self.skip_balanced()?;
                }
                mods.annotations.push(self.src[self.span_from(start).start..self.prev_end()].to_string());
            } else if let Some(m) = Modifier::from_keyword(self.text()) {
                self.bump();
                mods.set.insert(m);
            } else {
                return Ok(mods);
            }
        }
    }

    fn member(&mut self) -> Member {
        let save = self.pos;
        match self.try_member() {
            Ok(m) => m,
            Err(Backtrack) => {
                self.pos = save;
                Member::Opaque(self.opaque_scan())
            }
        }
    }

    fn try_member(&mut self) -> PResult<Member> {
        let start = self.start();
        let modifiers = self.modifiers()?;
        if self.at("class") || self.at("interface") {
            return self.type_decl(modifiers, start).map(Member::Type);
        }
        if self.at("<") {
            self.type_args()?;
        }
        if self.is_ident_at(self.pos) && self.text_at(self.pos + 1) == "(" {
            let (name, _) = self.ident()?;
            return self.method_rest(modifiers, None, name, start).map(Member::Method);
        }
        let ty = self.parse_type()?;
        let (name, name_span) = self.ident()?;
        if self.at("(") {
            return self.method_rest(modifiers, Some(ty), name, start).map(Member::Method);
        }
        let vars = self.declarators(name, name_span)?;
        self.expect(";")?;
        Ok(Member::Field(FieldDecl { modifiers, ty, vars, span: self.span_from(start) }))
    }

    fn type_decl(&mut self, modifiers: Modifiers, start: usize) -> PResult<TypeDecl> {
        let kw = self.bump();
        let kind = if kw.text(self.src) == "class" { TypeKind::Class } else { TypeKind::Interface };
        let (name, _) = self.ident()?;
        while !self.at("{") {
            if self.at_eof() || self.at(";") || self.at("}") {
                return Err(Backtrack);
            }
            self.bump();
        }
        let (members, body_end) = self.class_body()?;
        Ok(TypeDecl {
            kind,
            modifiers,
            name,
            members,
            span: self.span_from(start),
            keyword_start: kw.span.start,
            body_end,
        })
    }

    fn class_body(&mut self) -> PResult<(Vec<Member>, usize)> {
        self.expect("{")?;
        let mut members = Vec::new();
        while !self.at("}") {
            if self.at_eof() {
                return Err(Backtrack);
            }
            if self.at(";") {
                self.bump();
                continue;
            }
            members.push(self.member());
        }
        let close = self.bump();
        Ok((members, close.span.start))
    }

    fn method_rest(
        &mut self,
        modifiers: Modifiers,
        return_type: Option<TypeRef>,
        name: String,
        start: usize,
    ) -> PResult<MethodDecl> {
        self.expect("(")?;
        let mut params = Vec::new();
        if !self.eat(")") {
            loop {
                self.modifiers()?;
                let ty = self.parse_type()?;
                let varargs = self.eat("...");
                let (pname, _) = self.ident()?;
                self.dims();
                params.push(Param { ty, name: pname, varargs });
                if self.eat(",") {
                    continue;
                }
                self.expect(")")?;
                break;
            }
        }
        self.dims();
        if self.eat("throws") {
            loop {
                self.parse_type()?;
                if !self.eat(",") {
                    break;
                }
            }
        }
        let body = if self.at("{") {
            Some(self.block()?)
        } else {
            self.expect(";")?;
            None
        };
        Ok(MethodDecl { modifiers, return_type, name, params, body, span: self.span_from(start) })
    }

    fn dims(&mut self) {
        while self.at("[") && self.text_at(self.pos + 1) == "]" {
            self.pos += 2;
        }
    }

    fn declarators(&mut self, first: String, first_span: Span) -> PResult<Vec<VarDeclarator>> {
        let mut vars = Vec::new();
        let (mut name, mut name_span) = (first, first_span);
        loop {
            self.dims();
            let init = if self.eat("=") { Some(self.var_init()?) } else { None };
            vars.push(VarDeclarator { name, name_span, init, span: self.span_from(name_span.start) });
            if !self.eat(",") {
                return Ok(vars);
            }
            (name, name_span) = self.ident()?;
        }
    }

    fn var_init(&mut self) -> PResult<Expr> {
        if self.at("{") {
            let start = self.start();
            self.skip_balanced()?;
            let span = self.span_from(start);
            return Ok(Expr::new(ExprKind::Opaque(self.src[span.start..span.end].to_string()), span));
        }
        self.expr()
    }

    // ---------------------------------------------------------------- types

    fn parse_type(&mut self) -> PResult<TypeRef> {
        while self.at("@") {
            self.bump();
            self.qualified()?;
            if self.at("(") {
                self.skip_balanced()?;
            }
        }
        let first = self.pos;
        if PRIMITIVES.contains(&self.text()) {
            self.bump();
        } else {
            if !(self.is_ident_at(self.pos)) {
                return Err(Backtrack);
            }
            self.bump();
            if self.at("<") {
                self.type_args()?;
            }
            while self.at(".") && self.is_ident_at(self.pos + 1) {
                self.pos += 2;
                if self.at("<") {
                    self.type_args()?;
                }
            }
        }
        self.dims();
        Ok(self.type_ref(first))
    }

    fn type_args(&mut self) -> PResult<()> {
        self.expect("<")?;
        if self.eat(">") {
            return Ok(());
        }
        loop {
            if self.eat("?") {
                if self.eat("extends") || self.eat("super") {
                    self.parse_type()?;
                }
            } else {
                self.parse_type()?;
            }
            if self.eat(",") {
                continue;
            }
            self.expect(">")?;
            return Ok(());
        }
    }

    fn type_ref(&self, first: usize) -> TypeRef {
        let mut text = String::new();
        let mut prev: Option<&Token> = None;
        for t in &self.toks[first..self.pos] {
            if let Some(p) = prev {
                let pt = p.text(self.src);
                let word = |k: &Token| k.kind == TokenKind::Ident;
                if (word(p) && word(t)) || pt == "," || (pt == "?" && word(t)) {
                    text.push(' ');
                }
            }
            text.push_str(t.text(self.src));
            prev = Some(t);
        }
        let span = Span::new(self.toks[first].span.start, self.prev_end());
        TypeRef { text, span }
    }

    // ----------------------------------------------------------- statements

    fn block(&mut self) -> PResult<Block> {
        let start = self.start();
        self.expect("{")?;
        let mut stmts = Vec::new();
        while !self.at("}") {
            if self.at_eof() {
                return Err(Backtrack);
            }
            stmts.push(self.stmt());
        }
        self.bump();
        Ok(Block { stmts, span: self.span_from(start) })
    }

    pub(super) fn stmt(&mut self) -> Stmt {
        let save = self.pos;
        match self.try_stmt() {
            Ok(s) => s,
            Err(Backtrack) => {
                self.pos = save;
                let span = self.opaque_scan();
                Stmt { kind: StmtKind::Opaque(self.src[span.start..span.end].to_string()), span }
            }
        }
    }

    fn try_stmt(&mut self) -> PResult<Stmt> {
        let start = self.start();
        let kind = match self.text() {
            "{" => StmtKind::Block(self.block()?),
            "if" => {
                self.bump();
                self.expect("(")?;
                let cond = self.expr()?;
                self.expect(")")?;
                let then_branch = Box::new(self.stmt());
                let else_branch = if self.eat("else") { Some(Box::new(self.stmt())) } else { None };
                StmtKind::If(IfStmt { cond, then_branch, else_branch })
            }
            "return" => {
                self.bump();
                let value = if self.at(";") { None } else { Some(self.expr()?) };
                self.expect(";")?;
                StmtKind::Return(value)
            }
            t if is_keyword(t) && !matches!(t, "final" | "this" | "super" | "new") && !PRIMITIVES.contains(&t) => {
                return Err(Backtrack)
            }
            _ => {
                let save = self.pos;
                match self.local_var() {
                    Ok(d) => StmtKind::LocalVar(d),
                    Err(Backtrack) => {
                        self.pos = save;
                        let e = self.expr()?;
                        self.expect(";")?;
                        StmtKind::Expr(e)
                    }
                }
            }
        };
        Ok(Stmt { kind, span: self.span_from(start) })
    }

    fn local_var(&mut self) -> PResult<LocalVarDecl> {
        let modifiers = self.modifiers()?;
        let ty = self.parse_type()?;
        let (name, name_span) = self.ident()?;
        if !(self.at("=") || self.at(";") || self.at(",") || self.at("[")) {
            return Err(Backtrack);
        }
        let vars = self.declarators(name, name_span)?;
        self.expect(";")?;
        Ok(LocalVarDecl { modifiers, ty, vars })
    }

    /// Consume one unsupported statement or member as a balanced token run.
    fn opaque_scan(&mut self) -> Span {
        let start = self.start();
        let first = self.pos;
        let starts_with_do = self.at("do");
        let mut depth = 0usize;
        while !self.at_eof() {
            let s = self.text();
            if depth == 0 && s == "}" && self.pos > first {
                break;
            }
            self.bump();
            match s {
                "(" | "[" | "{" => depth += 1,
                ")" | "]" => depth = depth.saturating_sub(1),
                "}" => {
                    depth = depth.saturating_sub(1);
                    if depth == 0 {
                        let next = self.text();
                        let continues = matches!(next, "." | ")" | "," | "(" | "[" | "else" | "catch" | "finally")
                            || (starts_with_do && next == "while");
                        if self.at(";") {
                            self.bump();
                            break;
                        }
                        if !continues {
                            break;
                        }
                    }
                }
                ";" if depth == 0
                    && !self.at("else") => {
                        break;
                    }
                _ => {}
            }
        }
        self.span_from(start)
    }

    // ---------------------------------------------------------- expressions

    pub(super) fn expr(&mut self) -> PResult<Expr> {
        if let Some(e) = self.lambda()? {
            return Ok(e);
        }
        let lhs = self.conditional()?;
        if let Some((op, n)) = self.assign_op() {
            self.pos += n;
            let rhs = self.expr()?;
            let span = lhs.span.to(rhs.span);
            return Ok(Expr::new(ExprKind::Assign { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, span));
        }
        Ok(lhs)
    }

    fn lambda(&mut self) -> PResult<Option<Expr>> {
        let start = self.start();
        let arrow_at = if self.is_ident_at(self.pos) && self.text_at(self.pos + 1) == "->" {
            self.pos + 1
        } else if self.at("(") {
            let mut depth = 0usize;
            let mut i = self.pos;
            loop {
                match self.text_at(i) {
                    "(" => depth += 1,
                    ")" => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    "" => return Ok(None),
                    _ => {}
                }
                i += 1;
            }
            if self.text_at(i + 1) != "->" {
                return Ok(None);
            }
            i + 1
        } else {
            return Ok(None);
        };
        self.pos = arrow_at + 1;
        if self.at("{") {
            self.skip_balanced()?;
        } else {
            self.expr()?;
        }
        let span = self.span_from(start);
        Ok(Some(Expr::new(ExprKind::Opaque(self.src[span.start..span.end].to_string()), span)))
    }

    fn assign_op(&self) -> Option<(String, usize)> {
        let t = self.text();
        if self.kind_at(self.pos) != Some(TokenKind::Punct) {
            return None;
        }
        match t {
            "=" | "+=" | "-=" | "*=" | "/=" | "%=" | "&=" | "|=" | "^=" | "<<=" => Some((t.to_string(), 1)),
            ">" => {
                let mut n = 1;
                while n < 4 && self.glued(self.pos + n - 1) && self.text_at(self.pos + n) == ">" {
                    n += 1;
                }
                if (n == 2 || n == 3) && self.glued(self.pos + n - 1) && self.text_at(self.pos + n) == "=" {
                    Some((format!("{}=", ">".repeat(n)), n + 1))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn binary_op(&self) -> Option<(BinaryOp, usize)> {
        if self.kind_at(self.pos) != Some(TokenKind::Punct) {
            return None;
        }
        let t = self.text();
        if t == ">" {
            if self.assign_op().is_some() {
                return None;
            }
            let next_glued = |k: usize| self.glued(self.pos + k - 1);
            if next_glued(1) && self.text_at(self.pos + 1) == ">" {
                if next_glued(2) && self.text_at(self.pos + 2) == ">" {
                    return Some((BinaryOp::UShr, 3));
                }
                return Some((BinaryOp::Shr, 2));
            }
            if next_glued(1) && self.text_at(self.pos + 1) == "=" {
                return Some((BinaryOp::Ge, 2));
            }
            return Some((BinaryOp::Gt, 1));
        }
        BinaryOp::from_token(t).map(|op| (op, 1))
    }

    fn conditional(&mut self) -> PResult<Expr> {
        let cond = self.binary(prec::OR)?;
        if !self.eat("?") {
            return Ok(cond);
        }
        let then = self.expr()?;
        self.expect(":")?;
        let otherwise = match self.lambda()? {
            Some(l) => l,
            None => self.conditional()?,
        };
        let span = cond.span.to(otherwise.span);
        Ok(Expr::new(
            ExprKind::Conditional { cond: Box::new(cond), then: Box::new(then), otherwise: Box::new(otherwise) },
            span,
        ))
    }

    fn binary(&mut self, min: u8) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.at("instanceof") && prec::RELATIONAL >= min {
                self.bump();
                self.eat("final");
                let ty = self.parse_type()?;
                let binding = self.ident().is_ok();
                let span = self.span_from(lhs.span.start);
                lhs = if binding {
                    Expr::new(ExprKind::Opaque(self.src[span.start..span.end].to_string()), span)
                } else {
                    Expr::new(ExprKind::InstanceOf { operand: Box::new(lhs), ty }, span)
                };
                continue;
            }
            let Some((op, n)) = self.binary_op() else { break };
            if op.precedence() < min {
                break;
            }
            self.pos += n;
            let rhs = self.binary(op.precedence() + 1)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let start = self.start();
        match self.text() {
            op @ ("+" | "-" | "!" | "~" | "++" | "--") if self.kind_at(self.pos) == Some(TokenKind::Punct) => {
                self.bump();
                let operand = self.unary()?;
                let span = self.span_from(start);
                Ok(Expr::new(ExprKind::Unary { op: op.to_string(), operand: Box::new(operand), postfix: false }, span))
            }
            "(" => {
                let save = self.pos;
                if let Ok(c) = self.cast() {
                    return Ok(c);
                }
                self.pos = save;
                self.postfix()
            }
            _ => self.postfix(),
        }
    }

    fn cast(&mut self) -> PResult<Expr> {
        let start = self.start();
        self.expect("(")?;
        let ty = self.parse_type()?;
        self.expect(")")?;
        let primitive = PRIMITIVES.iter().any(|p| ty.text == *p || ty.text.starts_with(&format!("{p}[")));
        let next = self.text();
        let operand_start = match self.kind_at(self.pos) {
            Some(TokenKind::Ident) => !is_keyword(next) || matches!(next, "this" | "super" | "new" | "true" | "false" | "null"),
            Some(TokenKind::Punct) => matches!(next, "(" | "!" | "~"),
            Some(_) => true,
            None => false,
        };
        if !(operand_start || (primitive && matches!(next, "+" | "-" | "++" | "--"))) {
            return Err(Backtrack);
        }
        let operand = self.unary()?;
        let span = self.span_from(start);
        Ok(Expr::new(ExprKind::Cast { ty, operand: Box::new(operand) }, span))
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let start = self.start();
        let mut e = self.primary()?;
        loop {
            if self.at(".") {
                self.bump();
                if self.at("<") {
                    self.type_args()?;
                }
                if self.kind_at(self.pos) != Some(TokenKind::Ident) || self.at("new") {
                    return Err(Backtrack);
                }
                let name = self.bump().text(self.src).to_string();
                if self.at("(") {
                    let args = self.args()?;
                    e = Expr::new(
                        ExprKind::MethodCall { receiver: Some(Box::new(e)), name, args },
                        self.span_from(start),
                    );
                } else {
                    e = Expr::new(ExprKind::FieldAccess { receiver: Box::new(e), name }, self.span_from(start));
                }
            } else if self.at("[") {
                self.bump();
                let index = self.expr()?;
                self.expect("]")?;
                e = Expr::new(ExprKind::ArrayAccess { array: Box::new(e), index: Box::new(index) }, self.span_from(start));
            } else if self.at("++") || self.at("--") {
                let op = self.bump().text(self.src).to_string();
                e = Expr::new(ExprKind::Unary { op, operand: Box::new(e), postfix: true }, self.span_from(start));
            } else if self.at("::") {
                self.bump();
                if self.kind_at(self.pos) != Some(TokenKind::Ident) {
                    return Err(Backtrack);
                }
                self.bump();
                let span = self.span_from(start);
                e = Expr::new(ExprKind::Opaque(self.src[span.start..span.end].to_string()), span);
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let Some(tok) = self.toks.get(self.pos).copied() else {
            return Err(Backtrack);
        };
        let text = tok.text(self.src);
        let lit = |kind| ExprKind::Literal { kind, lexeme: text.to_string() };
        let kind = match tok.kind {
            TokenKind::Int => lit(LitKind::Int),
            TokenKind::Float => lit(LitKind::Float),
            TokenKind::Char => lit(LitKind::Char),
            TokenKind::Str => lit(LitKind::String),
            TokenKind::Punct if text == "(" => {
                self.bump();
                let inner = self.expr()?;
                self.expect(")")?;
                return Ok(Expr::new(ExprKind::Paren(Box::new(inner)), self.span_from(tok.span.start)));
            }
            TokenKind::Punct => return Err(Backtrack),
            TokenKind::Ident => match text {
                "true" | "false" => lit(LitKind::Bool),
                "null" => lit(LitKind::Null),
                "new" => return self.creation(),
                "this" | "super" => ExprKind::Name(text.to_string()),
                t if PRIMITIVES.contains(&t) => ExprKind::Name(text.to_string()),
                t if is_keyword(t) => return Err(Backtrack),
                _ => {
                    if self.text_at(self.pos + 1) == "(" {
                        self.bump();
                        let args = self.args()?;
                        return Ok(Expr::new(
                            ExprKind::MethodCall { receiver: None, name: text.to_string(), args },
                            self.span_from(tok.span.start),
                        ));
                    }
                    ExprKind::Name(text.to_string())
                }
            },
        };
        if matches!(&kind, ExprKind::Name(n) if n == "this" || n == "super") && self.text_at(self.pos + 1) == "(" {
            self.bump();
            let args = self.args()?;
            return Ok(Expr::new(
                ExprKind::MethodCall { receiver: None, name: text.to_string(), args },
                self.span_from(tok.span.start),
            ));
        }
        self.bump();
        Ok(Expr::new(kind, tok.span))
    }

    fn creation(&mut self) -> PResult<Expr> {
        let start = self.start();
        self.expect("new")?;
        if self.at("<") {
            self.type_args()?;
        }
        let ty = self.parse_type()?;
        if self.at("[") || self.at("{") {
            while self.at("[") {
                self.skip_balanced()?;
            }
            if self.at("{") {
                self.skip_balanced()?;
            }
            let span = self.span_from(start);
            return Ok(Expr::new(ExprKind::Opaque(self.src[span.start..span.end].to_string()), span));
        }
        let args = self.args()?;
        let (body, body_text) = if self.at("{") {
            let body_start = self.start();
            let (members, body_end) = self.class_body()?;
            let span = self.span_from(body_start);
            let decl = TypeDecl {
                kind: TypeKind::Anonymous,
                modifiers: Modifiers::default(),
                name: ty.text.clone(),
                members,
                span,
                keyword_start: body_start,
                body_end,
            };
            (Some(Box::new(decl)), Some(self.src[span.start..span.end].to_string()))
        } else {
            (None, None)
        };
        Ok(Expr::new(ExprKind::New { ty, args, body, body_text }, self.span_from(start)))
    }

    fn args(&mut self) -> PResult<Vec<Expr>> {
        self.expect("(")?;
        let mut args = Vec::new();
        if self.eat(")") {
            return Ok(args);
        }
        loop {
            args.push(self.arg()?);
            if self.eat(",") {
                continue;
            }
            self.expect(")")?;
            return Ok(args);
        }
    }

    fn arg(&mut self) -> PResult<Expr> {
        let save = self.pos;
        if let Ok(e) = self.expr() {
            if self.at(",") || self.at(")") {
                return Ok(e);
            }
        }
        self.pos = save;
        let start = self.start();
        let mut depth = 0usize;
        while !self.at_eof() {
            let s = self.text();
            if depth == 0 && (s == "," || s == ")") {
                break;
            }
            match s {
                "(" | "[" | "{" => depth += 1,
                ")" | "]" | "}" => depth = depth.saturating_sub(1),
                _ => {}
            }
            self.bump();
        }
        if self.pos == save {
            return Err(Backtrack);
        }
        let span = self.span_from(start);
        Ok(Expr::new(ExprKind::Opaque(self.src[span.start..span.end].to_string()), span))
    }

    // ------------------------------------------------------------ fragments

    pub(super) fn statements(mut self) -> Vec<Stmt> {
        let mut out = Vec::new();
        while !self.at_eof() {
            out.push(self.stmt());
        }
        out
    }

    pub(super) fn whole_expr(mut self) -> Option<Expr> {
        let e = self.expr().ok()?;
        self.at_eof().then_some(e)
    }
}
