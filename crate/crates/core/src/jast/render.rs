//! Canonical rendering of (possibly synthesized) nodes.
//!
//! Used wherever new code is produced: single spaces around binary operators,
//! `, ` between arguments, 4 spaces per block level. Parentheses are inserted
//! only where operator precedence requires them, so rendering a parsed tree
//! never adds parentheses that were not in the source.

use super::ast::*;

pub const INDENT: &str = "    ";

pub fn render_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, 0);
    out
}

/// Render `e` as it must appear in a context requiring at least `min_prec`.
pub fn render_expr_at(e: &Expr, min_prec: u8) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, min_prec);
    out
}

fn write_args(out: &mut String, args: &[Expr]) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, a, prec::ASSIGN);
    }
    out.push(')');
}

fn write_expr(out: &mut String, e: &Expr, min_prec: u8) {
    let p = e.precedence();
    let wrap = p < min_prec;
    if wrap {
        out.push('(');
    }
    match &e.kind {
        ExprKind::Literal { lexeme, .. } => out.push_str(lexeme),
        ExprKind::Name(n) => out.push_str(n),
        ExprKind::Opaque(t) => out.push_str(t),
        ExprKind::FieldAccess { receiver, name } => {
            write_expr(out, receiver, prec::POSTFIX);
            out.push('.');
            out.push_str(name);
        }
        ExprKind::MethodCall { receiver, name, args } => {
            if let Some(r) = receiver {
                write_expr(out, r, prec::POSTFIX);
                out.push('.');
            }
            out.push_str(name);
            write_args(out, args);
        }
        ExprKind::New { ty, args, body_text, .. } => {
            out.push_str("new ");
            out.push_str(&ty.text);
            write_args(out, args);
            if let Some(b) = body_text {
                out.push(' ');
                out.push_str(b);
            }
        }
        ExprKind::Binary { op, lhs, rhs } => {
            write_expr(out, lhs, p);
            out.push(' ');
            out.push_str(op.as_str());
            out.push(' ');
            write_expr(out, rhs, p + 1);
        }
        ExprKind::Unary { op, operand, postfix: true } => {
            write_expr(out, operand, prec::POSTFIX);
            out.push_str(op);
        }
        ExprKind::Unary { op, operand, postfix: false } => {
            out.push_str(op);
            let inner = render_expr_at(operand, prec::UNARY);
            if (op.ends_with('-') && inner.starts_with('-')) || (op.ends_with('+') && inner.starts_with('+')) {
                out.push(' ');
            }
            out.push_str(&inner);
        }
        ExprKind::Assign { op, lhs, rhs } => {
            write_expr(out, lhs, prec::ASSIGN + 1);
            out.push(' ');
            out.push_str(op);
            out.push(' ');
            write_expr(out, rhs, prec::ASSIGN);
        }
        ExprKind::Cast { ty, operand } => {
            out.push('(');
            out.push_str(&ty.text);
            out.push_str(") ");
            write_expr(out, operand, prec::UNARY);
        }
        ExprKind::Paren(inner) => {
            out.push('(');
            write_expr(out, inner, 0);
            out.push(')');
        }
        ExprKind::Conditional { cond, then, otherwise } => {
            write_expr(out, cond, prec::CONDITIONAL + 1);
            out.push_str(" ? ");
            write_expr(out, then, prec::ASSIGN);
            out.push_str(" : ");
            write_expr(out, otherwise, prec::CONDITIONAL);
        }
        ExprKind::ArrayAccess { array, index } => {
            write_expr(out, array, prec::POSTFIX);
            out.push('[');
            write_expr(out, index, 0);
            out.push(']');
        }
        ExprKind::InstanceOf { operand, ty } => {
            write_expr(out, operand, prec::RELATIONAL);
            out.push_str(" instanceof ");
            out.push_str(&ty.text);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn write_modifiers(out: &mut String, mods: &Modifiers) {
    for a in &mods.annotations {
        out.push_str(a);
        out.push(' ');
    }
    for m in &mods.set {
        out.push_str(&format!("{m:?}").to_lowercase());
        out.push(' ');
    }
}

/// Render a statement whose first line starts at the current position and
/// whose nested lines are indented relative to `indent`.
pub fn render_stmt(stmt: &Stmt, indent: &str, nl: &str) -> String {
    let mut out = String::new();
    write_stmt(&mut out, stmt, indent, nl);
    out
}

fn write_stmt(out: &mut String, stmt: &Stmt, indent: &str, nl: &str) {
    match &stmt.kind {
        StmtKind::LocalVar(d) => {
            write_modifiers(out, &d.modifiers);
            out.push_str(&d.ty.text);
            out.push(' ');
            for (i, v) in d.vars.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&v.name);
                if let Some(init) = &v.init {
                    out.push_str(" = ");
                    write_expr(out, init, prec::ASSIGN);
                }
            }
            out.push(';');
        }
        StmtKind::Expr(e) => {
            write_expr(out, e, 0);
            out.push(';');
        }
        StmtKind::Return(None) => out.push_str("return;"),
        StmtKind::Return(Some(e)) => {
            out.push_str("return ");
            write_expr(out, e, 0);
            out.push(';');
        }
        StmtKind::Opaque(t) => out.push_str(t),
        StmtKind::Block(b) => write_block(out, &b.stmts, indent, nl),
        StmtKind::If(i) => {
            out.push_str("if (");
            write_expr(out, &i.cond, 0);
            out.push_str(") ");
            let then_is_block = matches!(i.then_branch.kind, StmtKind::Block(_));
            write_branch(out, &i.then_branch, indent, nl);
            if let Some(e) = &i.else_branch {
                if then_is_block {
                    out.push_str(" else ");
                } else {
                    out.push_str(nl);
                    out.push_str(indent);
                    out.push_str("else ");
                }
                if matches!(e.kind, StmtKind::If(_)) {
                    write_stmt(out, e, indent, nl);
                } else {
                    write_branch(out, e, indent, nl);
                }
            }
        }
    }
}

fn write_branch(out: &mut String, s: &Stmt, indent: &str, nl: &str) {
    if let StmtKind::Block(b) = &s.kind {
        write_block(out, &b.stmts, indent, nl);
    } else {
        let inner = format!("{indent}{INDENT}");
        out.push_str(nl);
        out.push_str(&inner);
        write_stmt(out, s, &inner, nl);
    }
}

fn write_block(out: &mut String, stmts: &[Stmt], indent: &str, nl: &str) {
    let inner = format!("{indent}{INDENT}");
    out.push('{');
    for s in stmts {
        out.push_str(nl);
        out.push_str(&inner);
        write_stmt(out, s, &inner, nl);
    }
    out.push_str(nl);
    out.push_str(indent);
    out.push('}');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jast::{parse_expression, parse_statements};

    #[test]
    fn parsed_expressions_render_canonically() {
        for src in [
            "VibrationEffect.createOneShot(50, 175)",
            "a = b ? c : d",
            "(a + b) * c",
            "a - (b - c)",
            "-(-x)",
            "!flag && x instanceof Foo",
            "arr[i + 1].length",
            "new Foo(1, \"two\")",
            "(String) o",
        ] {
            assert_eq!(render_expr(&parse_expression(src).unwrap()), src);
        }
    }

    #[test]
    fn substituted_trees_get_required_parentheses() {
        let sum = parse_expression("a + b").unwrap();
        let mut prod = parse_expression("x * y").unwrap();
        if let ExprKind::Binary { lhs, .. } = &mut prod.kind {
            **lhs = sum;
        }
        assert_eq!(render_expr(&prod), "(a + b) * y");
    }

    #[test]
    fn statements_use_four_space_blocks() {
        let stmts = parse_statements("if (c) { a(); } else { b(); }").unwrap();
        let text = render_stmt(&stmts[0], "  ", "\n");
        assert_eq!(text, "if (c) {\n      a();\n  } else {\n      b();\n  }");
    }
}
