//! Syntax tree for the Java subset.
//!
//! Every node carries the byte span of its own text (leading trivia excluded).
//! Nodes own the strings they need (names, literal lexemes, opaque text), so a
//! subtree can be cloned out of one unit and rendered on its own.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start, other.end)
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modifier {
    Public,
    Protected,
    Private,
    Static,
    Final,
    Abstract,
    Native,
    Synchronized,
    Transient,
    Volatile,
    Strictfp,
    Default,
}

impl Modifier {
    pub fn from_keyword(s: &str) -> Option<Modifier> {
        Some(match s {
            "public" => Modifier::Public,
            "protected" => Modifier::Protected,
            "private" => Modifier::Private,
            "static" => Modifier::Static,
            "final" => Modifier::Final,
            "abstract" => Modifier::Abstract,
            "native" => Modifier::Native,
            "synchronized" => Modifier::Synchronized,
            "transient" => Modifier::Transient,
            "volatile" => Modifier::Volatile,
            "strictfp" => Modifier::Strictfp,
            "default" => Modifier::Default,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Modifiers {
    pub set: BTreeSet<Modifier>,
    /// Annotation texts, verbatim (`@Override`, `@SuppressLint("x")`).
    pub annotations: Vec<String>,
}

impl Modifiers {
    pub fn has(&self, m: Modifier) -> bool {
        self.set.contains(&m)
    }
}

/// A type as written, normalized to single spaces between word tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRef {
    pub text: String,
    pub span: Span,
}

impl TypeRef {
    /// Leading identifier of the type (`java` for `java.util.List<X>`).
    pub fn root(&self) -> &str {
        let end = self.text.find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '$')).unwrap_or(self.text.len());
        &self.text[..end]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompilationUnit {
    pub text: String,
    pub package: Option<QualifiedName>,
    pub imports: Vec<ImportDecl>,
    pub items: Vec<Item>,
}

impl CompilationUnit {
    pub fn slice(&self, span: Span) -> &str {
        &self.text[span.start..span.end]
    }

    pub fn types(&self) -> impl Iterator<Item = &TypeDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Type(t) => Some(t),
            Item::Opaque(_) => None,
        })
    }

    /// Newline convention of the file (`\r\n` if any line uses it).
    pub fn newline(&self) -> &'static str {
        if self.text.contains("\r\n") {
            "\r\n"
        } else {
            "\n"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualifiedName {
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportDecl {
    pub name: String,
    pub is_static: bool,
    pub wildcard: bool,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Type(TypeDecl),
    Opaque(Span),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeKind {
    Class,
    Interface,
    /// Body of an anonymous class (`new T() { ... }`).
    Anonymous,
    /// Members written at top level without an enclosing class, as in
    /// snippet-style example files.
    Implicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeDecl {
    pub kind: TypeKind,
    pub modifiers: Modifiers,
    pub name: String,
    pub members: Vec<Member>,
    pub span: Span,
    /// Offset of the `class` / `interface` keyword.
    pub keyword_start: usize,
    /// Offset of the closing `}` (equal to `span.end` for implicit types).
    pub body_end: usize,
}

impl TypeDecl {
    pub fn fields(&self) -> impl Iterator<Item = &FieldDecl> {
        self.members.iter().filter_map(|m| match m {
            Member::Field(f) => Some(f),
            _ => None,
        })
    }

    pub fn methods(&self) -> impl Iterator<Item = &MethodDecl> {
        self.members.iter().filter_map(|m| match m {
            Member::Method(f) => Some(f),
            _ => None,
        })
    }

    pub fn nested(&self) -> impl Iterator<Item = &TypeDecl> {
        self.members.iter().filter_map(|m| match m {
            Member::Type(f) => Some(f),
            _ => None,
        })
    }

    pub fn field(&self, name: &str) -> Option<(&FieldDecl, &VarDeclarator)> {
        self.fields().find_map(|f| f.vars.iter().find(|v| v.name == name).map(|v| (f, v)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Member {
    Field(FieldDecl),
    Method(MethodDecl),
    Type(TypeDecl),
    Opaque(Span),
}

impl Member {
    pub fn span(&self) -> Span {
        match self {
            Member::Field(f) => f.span,
            Member::Method(m) => m.span,
            Member::Type(t) => t.span,
            Member::Opaque(s) => *s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarDeclarator {
    pub name: String,
    pub name_span: Span,
    pub init: Option<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldDecl {
    pub modifiers: Modifiers,
    pub ty: TypeRef,
    pub vars: Vec<VarDeclarator>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub ty: TypeRef,
    pub name: String,
    pub varargs: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodDecl {
    pub modifiers: Modifiers,
    /// `None` for constructors.
    pub return_type: Option<TypeRef>,
    pub name: String,
    pub params: Vec<Param>,
    /// `None` for abstract / interface methods.
    pub body: Option<Block>,
    pub span: Span,
}

impl MethodDecl {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub stmts: Vec<Stmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    LocalVar(LocalVarDecl),
    Expr(Expr),
    If(IfStmt),
    Return(Option<Expr>),
    Block(Block),
    /// Unsupported statement, kept as its verbatim text.
    Opaque(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalVarDecl {
    pub modifiers: Modifiers,
    pub ty: TypeRef,
    pub vars: Vec<VarDeclarator>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IfStmt {
    pub cond: Expr,
    pub then_branch: Box<Stmt>,
    pub else_branch: Option<Box<Stmt>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LitKind {
    Int,
    Float,
    Char,
    String,
    Bool,
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Or,
    And,
    BitOr,
    BitXor,
    BitAnd,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    Shl,
    Shr,
    UShr,
    Add,
    Sub,
    Mul,
    Div,
    Rem,
}

impl BinaryOp {
    pub fn as_str(self) -> &'static str {
        use BinaryOp::*;
        match self {
            Or => "||",
            And => "&&",
            BitOr => "|",
            BitXor => "^",
            BitAnd => "&",
            Eq => "==",
            Ne => "!=",
            Lt => "<",
            Gt => ">",
            Le => "<=",
            Ge => ">=",
            Shl => "<<",
            Shr => ">>",
            UShr => ">>>",
            Add => "+",
            Sub => "-",
            Mul => "*",
            Div => "/",
            Rem => "%",
        }
    }

    pub fn from_token(s: &str) -> Option<BinaryOp> {
        use BinaryOp::*;
        Some(match s {
            "||" => Or,
            "&&" => And,
            "|" => BitOr,
            "^" => BitXor,
            "&" => BitAnd,
            "==" => Eq,
            "!=" => Ne,
            "<" => Lt,
            ">" => Gt,
            "<=" => Le,
            ">=" => Ge,
            "<<" => Shl,
            ">>" => Shr,
            ">>>" => UShr,
            "+" => Add,
            "-" => Sub,
            "*" => Mul,
            "/" => Div,
            "%" => Rem,
            _ => return None,
        })
    }

    pub fn precedence(self) -> u8 {
        use BinaryOp::*;
        match self {
            Or => prec::OR,
            And => prec::AND,
            BitOr => prec::BIT_OR,
            BitXor => prec::BIT_XOR,
            BitAnd => prec::BIT_AND,
            Eq | Ne => prec::EQUALITY,
            Lt | Gt | Le | Ge => prec::RELATIONAL,
            Shl | Shr | UShr => prec::SHIFT,
            Add | Sub => prec::ADDITIVE,
            Mul | Div | Rem => prec::MULTIPLICATIVE,
        }
    }
}

/// Binding strength of expression forms; higher binds tighter.
pub mod prec {
    pub const ASSIGN: u8 = 1;
    pub const CONDITIONAL: u8 = 2;
    pub const OR: u8 = 3;
    pub const AND: u8 = 4;
    pub const BIT_OR: u8 = 5;
    pub const BIT_XOR: u8 = 6;
    pub const BIT_AND: u8 = 7;
    pub const EQUALITY: u8 = 8;
    pub const RELATIONAL: u8 = 9;
    pub const SHIFT: u8 = 10;
    pub const ADDITIVE: u8 = 11;
    pub const MULTIPLICATIVE: u8 = 12;
    pub const UNARY: u8 = 13;
    pub const POSTFIX: u8 = 14;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Literal { kind: LitKind, lexeme: String },
    Name(String),
    FieldAccess { receiver: Box<Expr>, name: String },
    MethodCall { receiver: Option<Box<Expr>>, name: String, args: Vec<Expr> },
    New { ty: TypeRef, args: Vec<Expr>, body: Option<Box<TypeDecl>>, body_text: Option<String> },
    Binary { op: BinaryOp, lhs: Box<Expr>, rhs: Box<Expr> },
    /// Prefix or postfix unary operator (`-x`, `!x`, `x++`).
    Unary { op: String, operand: Box<Expr>, postfix: bool },
    /// Plain or compound assignment; `op` is `=`, `+=`, ...
    Assign { op: String, lhs: Box<Expr>, rhs: Box<Expr> },
    Cast { ty: TypeRef, operand: Box<Expr> },
    Paren(Box<Expr>),
    Conditional { cond: Box<Expr>, then: Box<Expr>, otherwise: Box<Expr> },
    ArrayAccess { array: Box<Expr>, index: Box<Expr> },
    InstanceOf { operand: Box<Expr>, ty: TypeRef },
    /// Unsupported expression (lambda, array creation, ...), verbatim.
    Opaque(String),
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// A synthesized name node with an empty span.
    pub fn name(n: impl Into<String>) -> Self {
        Expr::new(ExprKind::Name(n.into()), Span::default())
    }

    pub fn as_name(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Name(n) => Some(n),
            _ => None,
        }
    }

    pub fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Assign { .. } | ExprKind::Opaque(_) => prec::ASSIGN,
            ExprKind::Conditional { .. } => prec::CONDITIONAL,
            ExprKind::Binary { op, .. } => op.precedence(),
            ExprKind::InstanceOf { .. } => prec::RELATIONAL,
            ExprKind::Unary { postfix: false, .. } | ExprKind::Cast { .. } => prec::UNARY,
            _ => prec::POSTFIX,
        }
    }

    /// Direct sub-expressions in source order.
    pub fn children(&self) -> Vec<&Expr> {
        match &self.kind {
            ExprKind::Literal { .. } | ExprKind::Name(_) | ExprKind::Opaque(_) => vec![],
            ExprKind::FieldAccess { receiver, .. } => vec![receiver],
            ExprKind::MethodCall { receiver, args, .. } => {
                receiver.iter().map(|r| &**r).chain(args.iter()).collect()
            }
            ExprKind::New { args, .. } => args.iter().collect(),
            ExprKind::Binary { lhs, rhs, .. } | ExprKind::Assign { lhs, rhs, .. } => vec![lhs, rhs],
            ExprKind::Unary { operand, .. }
            | ExprKind::Cast { operand, .. }
            | ExprKind::Paren(operand)
            | ExprKind::InstanceOf { operand, .. } => vec![operand],
            ExprKind::Conditional { cond, then, otherwise } => vec![cond, then, otherwise],
            ExprKind::ArrayAccess { array, index } => vec![array, index],
        }
    }

    /// Mutable counterpart of [`Expr::children`].
    pub fn children_mut(&mut self) -> Vec<&mut Expr> {
        match &mut self.kind {
            ExprKind::Literal { .. } | ExprKind::Name(_) | ExprKind::Opaque(_) => vec![],
            ExprKind::FieldAccess { receiver, .. } => vec![receiver],
            ExprKind::MethodCall { receiver, args, .. } => {
                let mut v: Vec<&mut Expr> = Vec::new();
                if let Some(r) = receiver {
                    v.push(r);
                }
                v.extend(args.iter_mut());
                v
            }
            ExprKind::New { args, .. } => args.iter_mut().collect(),
            ExprKind::Binary { lhs, rhs, .. } | ExprKind::Assign { lhs, rhs, .. } => vec![lhs, rhs],
            ExprKind::Unary { operand, .. }
            | ExprKind::Cast { operand, .. }
            | ExprKind::Paren(operand)
            | ExprKind::InstanceOf { operand, .. } => vec![operand],
            ExprKind::Conditional { cond, then, otherwise } => vec![cond, then, otherwise],
            ExprKind::ArrayAccess { array, index } => vec![array, index],
        }
    }

    /// Pre-order traversal of this expression and all nested expressions
    /// (anonymous class bodies are not entered).
    pub fn for_each(&self, f: &mut dyn FnMut(&Expr)) {
        f(self);
        for c in self.children() {
            c.for_each(f);
        }
    }

    pub fn any(&self, pred: &dyn Fn(&Expr) -> bool) -> bool {
        let mut hit = false;
        self.for_each(&mut |e| hit |= pred(e));
        hit
    }
}

impl Stmt {
    /// Expressions directly owned by this statement (not by nested statements).
    pub fn exprs(&self) -> Vec<&Expr> {
        match &self.kind {
            StmtKind::LocalVar(d) => d.vars.iter().filter_map(|v| v.init.as_ref()).collect(),
            StmtKind::Expr(e) => vec![e],
            StmtKind::If(i) => vec![&i.cond],
            StmtKind::Return(e) => e.iter().collect(),
            StmtKind::Block(_) | StmtKind::Opaque(_) => vec![],
        }
    }

    /// Directly nested statements.
    pub fn children(&self) -> Vec<&Stmt> {
        match &self.kind {
            StmtKind::If(i) => {
                let mut v = vec![&*i.then_branch];
                if let Some(e) = &i.else_branch {
                    v.push(e);
                }
                v
            }
            StmtKind::Block(b) => b.stmts.iter().collect(),
            _ => vec![],
        }
    }

    /// Pre-order traversal over this statement and nested statements.
    pub fn for_each_stmt(&self, f: &mut dyn FnMut(&Stmt)) {
        f(self);
        for c in self.children() {
            c.for_each_stmt(f);
        }
    }
}
