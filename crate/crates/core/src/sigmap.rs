//! API signatures (`pkg.Class#method(T1, T2)`) and call-site discovery.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::jast::walk::{self, walk_unit, Frame, Visitor};
use crate::jast::{CompilationUnit, Expr, ExprKind, MethodDecl, Stmt, TypeDecl};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("malformed API signature `{text}`: {reason}")]
    MalformedSignature { text: String, reason: &'static str },
    #[error("deprecated and replacement signatures are identical: `{0}`")]
    IdenticalMapping(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApiSignature {
    pub class_name: String,
    pub method_name: String,
    pub param_types: Vec<String>,
}

impl ApiSignature {
    pub fn arity(&self) -> usize {
        self.param_types.len()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

fn is_qualified(s: &str) -> bool {
    !s.is_empty() && s.split('.').all(is_identifier)
}

/// Split on commas that are not nested inside `<...>`.
fn split_params(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn parse_signature(text: &str) -> Result<ApiSignature, SignatureError> {
    let bad = |reason| SignatureError::MalformedSignature { text: text.to_string(), reason };
    let t = text.trim();
    let (class_name, rest) = t.split_once('#').ok_or_else(|| bad("missing `#`"))?;
    let open = rest.find('(').ok_or_else(|| bad("missing `(`"))?;
    if !rest.ends_with(')') {
        return Err(bad("missing closing `)`"));
    }
    let method_name = rest[..open].trim();
    let inner = rest[open + 1..rest.len() - 1].trim();
    if !is_qualified(class_name.trim()) {
        return Err(bad("class name is not a qualified name"));
    }
    if !is_identifier(method_name) {
        return Err(bad("method name is not an identifier"));
    }
    let param_types = if inner.is_empty() {
        Vec::new()
    } else {
        split_params(inner).into_iter().map(|p| p.split_whitespace().collect::<Vec<_>>().join(" ")).collect()
    };
    let type_ok = |p: &String| {
        !p.is_empty()
            && p.chars().all(|c| c.is_alphanumeric() || "_$.<>[], ?".contains(c))
            && p.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$')
    };
    if !param_types.iter().all(type_ok) {
        return Err(bad("parameter type list is malformed"));
    }
    Ok(ApiSignature { class_name: class_name.trim().to_string(), method_name: method_name.to_string(), param_types })
}

impl FromStr for ApiSignature {
    type Err = SignatureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_signature(s)
    }
}

impl fmt::Display for ApiSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}({})", self.class_name, self.method_name, self.param_types.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiMapping {
    pub deprecated: ApiSignature,
    pub replacement: ApiSignature,
}

impl ApiMapping {
    pub fn new(deprecated: ApiSignature, replacement: ApiSignature) -> Result<Self, SignatureError> {
        if deprecated == replacement {
            return Err(SignatureError::IdenticalMapping(deprecated.to_string()));
        }
        Ok(ApiMapping { deprecated, replacement })
    }

    pub fn parse(deprecated: &str, replacement: &str) -> Result<Self, SignatureError> {
        ApiMapping::new(parse_signature(deprecated)?, parse_signature(replacement)?)
    }
}

/// A call matching a signature by simple name and arity.
#[derive(Debug, Clone)]
pub struct CallSite<'a> {
    pub call: &'a Expr,
    /// Ancestors of the call, outermost first.
    pub frames: Vec<Frame<'a>>,
}

impl<'a> CallSite<'a> {
    /// The statement-list element containing the call, if any.
    pub fn enclosing_stmt(&self) -> Option<&'a Stmt> {
        walk::enclosing_list_stmt(&self.frames).map(|(s, _, _)| s)
    }

    pub fn enclosing_method(&self) -> Option<&'a MethodDecl> {
        walk::enclosing_method(&self.frames)
    }

    pub fn enclosing_type(&self) -> Option<&'a TypeDecl> {
        walk::enclosing_type(&self.frames)
    }

    /// Inside either branch of an `if` whose condition mentions `SDK_INT`.
    pub fn already_guarded(&self) -> bool {
        walk::enclosing_conditions(&self.frames).iter().any(|c| mentions_sdk_int(c))
    }

    pub fn args(&self) -> &'a [Expr] {
        match &self.call.kind {
            ExprKind::MethodCall { args, .. } => args,
            _ => &[],
        }
    }
}

pub fn mentions_sdk_int(e: &Expr) -> bool {
    e.any(&|x| match &x.kind {
        ExprKind::Name(n) => n == "SDK_INT",
        ExprKind::FieldAccess { name, .. } => name == "SDK_INT",
        ExprKind::Opaque(t) => t.contains("SDK_INT"),
        _ => false,
    })
}

struct Finder<'a, 's> {
    name: &'s str,
    arity: usize,
    out: Vec<CallSite<'a>>,
}

impl<'a> Visitor<'a> for Finder<'a, '_> {
    fn expr(&mut self, e: &'a Expr, frames: &[Frame<'a>]) {
        if let ExprKind::MethodCall { name, args, .. } = &e.kind {
            if name == self.name && args.len() == self.arity {
                self.out.push(CallSite { call: e, frames: frames.to_vec() });
            }
        }
    }
}

/// Every call named like `sig` with matching argument count, in source order.
pub fn find_invocations<'a>(unit: &'a CompilationUnit, sig: &ApiSignature) -> Vec<CallSite<'a>> {
    find_calls(unit, &sig.method_name, sig.arity())
}

pub fn find_calls<'a>(unit: &'a CompilationUnit, name: &str, arity: usize) -> Vec<CallSite<'a>> {
    let mut f = Finder { name, arity, out: Vec::new() };
    walk_unit(unit, &mut f);
    f.out.sort_by_key(|s| s.call.span.start);
    f.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jast::{parse, render_expr};

    #[test]
    fn parses_signatures() {
        let s = parse_signature("android.os.Vibrator#vibrate(long)").unwrap();
        assert_eq!(s.class_name, "android.os.Vibrator");
        assert_eq!(s.method_name, "vibrate");
        assert_eq!(s.param_types, vec!["long"]);
        assert_eq!(parse_signature("a.B#m()").unwrap().arity(), 0);
        let s = parse_signature("android.os.Vibrator#vibrate(android.os.VibrationEffect)").unwrap();
        assert_eq!(s.param_types, vec!["android.os.VibrationEffect"]);
        let s = parse_signature("a.B#m( int ,  java.util.Map<K, V> )").unwrap();
        assert_eq!(s.param_types, vec!["int", "java.util.Map<K, V>"]);
    }

    #[test]
    fn rejects_malformed_signatures() {
        for bad in ["vibrate(long)", "a.B#(long)", "a.B#m(long", "a..B#m()", "a.B#m(,)", "a.B#1m()"] {
            let err = parse_signature(bad).unwrap_err();
            assert!(err.to_string().contains(bad), "{err}");
        }
    }

    #[test]
    fn identical_mapping_is_rejected() {
        assert!(ApiMapping::parse("a.B#m()", "a.B#m()").is_err());
        assert!(ApiMapping::parse("a.B#m()", "a.B#n()").is_ok());
    }

    #[test]
    fn finds_calls_by_name_and_arity() {
        let sig = parse_signature("android.os.Vibrator#vibrate(long)").unwrap();
        let u = parse(
            "class A { void m() { v.vibrate(1); String s = \"v.vibrate(2)\"; // v.vibrate(3)\n v.vibrate(a, b); if (x) { w.vibrate(y); } } }",
        )
        .unwrap();
        let sites = find_invocations(&u, &sig);
        let texts: Vec<_> = sites.iter().map(|s| render_expr(s.call)).collect();
        assert_eq!(texts, vec!["v.vibrate(1)", "w.vibrate(y)"]);
        assert_eq!(sites[0].enclosing_method().unwrap().name, "m");
        assert_eq!(sites[1].enclosing_type().unwrap().name, "A");
    }

    #[test]
    fn detects_existing_guards() {
        let sig = parse_signature("a.V#vibrate(long)").unwrap();
        let u = parse(
            "class A { void m() { if (Build.VERSION.SDK_INT >= 26) { v.vibrate(1); } else { v.vibrate(2); } if (x) v.vibrate(3); v.vibrate(4); } }",
        )
        .unwrap();
        let g: Vec<_> = find_invocations(&u, &sig).iter().map(|s| s.already_guarded()).collect();
        assert_eq!(g, vec![true, true, false, false]);
    }

    #[test]
    fn arity_mismatch_yields_nothing() {
        let sig = parse_signature("android.os.Vibrator#vibrate(long)").unwrap();
        let u = parse("class A { void m() { v.vibrate(a, b); } }").unwrap();
        assert!(find_invocations(&u, &sig).is_empty());
    }

    #[test]
    fn counts_match_a_textual_scan() {
        let src = "class A { void m() { v.vibrate(x); v.vibrate(y); v.vibrate(z); other(); } }";
        let oracle = src.matches(".vibrate(").count();
        let sig = parse_signature("a.V#vibrate(long)").unwrap();
        let u = parse(src).unwrap();
        let sites = find_invocations(&u, &sig);
        assert_eq!(sites.len(), oracle);
        assert!(sites.windows(2).all(|w| w[0].call.span.start < w[1].call.span.start));
    }
}
