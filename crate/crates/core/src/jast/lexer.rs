//! Tokenizer for the Java subset.
//!
//! Trivia (whitespace and comments) is dropped from the token stream; every
//! token keeps its byte span so the original text can always be recovered
//! from the source. `>` is always emitted as a single-character token and the
//! expression parser glues adjacent ones back into shift / comparison
//! operators, which keeps nested generic closers (`>>`) unambiguous.

use super::ast::Span;
use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Int,
    Float,
    Char,
    Str,
    Punct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

impl Token {
    pub fn text<'s>(&self, src: &'s str) -> &'s str {
        &src[self.span.start..self.span.end]
    }
}

const PUNCT: &[&str] = &[
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=", "*=", "/=",
    "%=", "&=", "|=", "^=", "<<", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "=", ">", "<",
    "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

pub const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while", "true", "false", "null",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// 1-based line number of a byte offset.
pub fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let toks = scan(src)?;
    check_balance(src, &toks)?;
    Ok(toks)
}

/// Tokenize without the delimiter-balance check; used on fragments such as
/// patch lines (`} else {`).
pub fn scan(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |at: usize, detail: &str| ParseError::UnbalancedSource {
        line: line_of(src, at),
        detail: detail.to_string(),
    };
    while i < bytes.len() {
        let c = src[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if src[i..].starts_with("//") {
            i = src[i..].find('\n').map_or(src.len(), |n| i + n);
            continue;
        }
        if src[i..].starts_with("/*") {
            match src[i + 2..].find("*/") {
                Some(n) => i = i + 2 + n + 2,
                None => return Err(err(i, "unterminated block comment")),
            }
            continue;
        }
        let start = i;
        let kind = if src[i..].starts_with("\"\"\"") {
            match src[i + 3..].find("\"\"\"") {
                Some(n) => i = i + 3 + n + 3,
                None => return Err(err(i, "unterminated text block")),
            }
            TokenKind::Str
        } else if c == '"' || c == '\'' {
            i += 1;
            loop {
                match bytes.get(i) {
                    None | Some(b'\n') => return Err(err(start, "unterminated literal")),
                    Some(b'\\') => i += 2,
                    Some(&b) if b == c as u8 => {
                        i += 1;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            if c == '"' {
                TokenKind::Str
            } else {
                TokenKind::Char
            }
        } else if c.is_ascii_digit()
            || (c == '.' && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit()))
        {
            let hex = src[i..].starts_with("0x") || src[i..].starts_with("0X");
            let mut float = false;
            while let Some(&b) = bytes.get(i) {
                if b.is_ascii_alphanumeric() || b == b'_' || b == b'.' {
                    if b == b'.' {
                        float = true;
                    }
                    i += 1;
                    let exp = if hex { b == b'p' || b == b'P' } else { b == b'e' || b == b'E' };
                    if exp && matches!(bytes.get(i), Some(b'+') | Some(b'-')) {
                        float = true;
                        i += 1;
                    }
                } else {
                    break;
                }
            }
            let lexeme = &src[start..i];
            let last = lexeme.chars().last().unwrap_or('0');
            if !hex && (lexeme.contains(['e', 'E']) || matches!(last, 'f' | 'F' | 'd' | 'D')) {
                float = true;
            }
            if float {
                TokenKind::Float
            } else {
                TokenKind::Int
            }
        } else if is_ident_start(c) {
            i += c.len_utf8();
            while let Some(ch) = src[i..].chars().next() {
                if is_ident_continue(ch) {
                    i += ch.len_utf8();
                } else {
                    break;
                }
            }
            TokenKind::Ident
        } else {
            match PUNCT.iter().find(|p| src[i..].starts_with(**p)) {
                Some(p) => i += p.len(),
                None => return Err(err(i, &format!("unexpected character {c:?}"))),
            }
            TokenKind::Punct
        };
        toks.push(Token { kind, span: Span::new(start, i) });
    }
    Ok(toks)
}

fn check_balance(src: &str, toks: &[Token]) -> Result<(), ParseError> {
    let mut stack: Vec<(&str, usize)> = Vec::new();
    for t in toks.iter().filter(|t| t.kind == TokenKind::Punct) {
        let s = t.text(src);
        match s {
            "(" | "[" | "{" => stack.push((s, t.span.start)),
            ")" | "]" | "}" => {
                let want = match s {
                    ")" => "(",
                    "]" => "[",
                    _ => "{",
                };
                match stack.pop() {
                    Some((open, _)) if open == want => {}
                    _ => {
                        return Err(ParseError::UnbalancedSource {
                            line: line_of(src, t.span.start),
                            detail: format!("unmatched `{s}`"),
                        })
                    }
                }
            }
            _ => {}
        }
    }
    if let Some((open, at)) = stack.pop() {
        return Err(ParseError::UnbalancedSource {
            line: line_of(src, at),
            detail: format!("unclosed `{open}`"),
        });
    }
    Ok(())
}

/// Identifier tokens of `src` whose text equals `name`, skipping member
/// selections (`x.name`). Returns their spans.
pub fn find_identifier(src: &str, name: &str) -> Vec<Span> {
    let Ok(toks) = scan(src) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if t.kind == TokenKind::Ident && t.text(src) == name {
            let selected = i > 0 && toks[i - 1].kind == TokenKind::Punct && toks[i - 1].text(src) == ".";
            if !selected {
                out.push(t.span);
            }
        }
    }
    out
}

/// Rename identifier tokens according to `rename`, leaving strings, comments
/// and member selections (`x.name`) alone. `only_calls` restricts the rename
/// to identifiers directly followed by `(`.
pub fn rename_identifiers(
    src: &str,
    rename: &dyn Fn(&str) -> Option<String>,
    only_calls: bool,
) -> String {
    let Ok(toks) = scan(src) else {
        return src.to_string();
    };
    let mut out = String::with_capacity(src.len());
    let mut last = 0;
    for (i, t) in toks.iter().enumerate() {
        if t.kind != TokenKind::Ident {
            continue;
        }
        let selected = i > 0 && toks[i - 1].text(src) == ".";
        let called = toks.get(i + 1).is_some_and(|n| n.text(src) == "(");
        if selected || (only_calls && !called) {
            continue;
        }
        if let Some(new) = rename(t.text(src)) {
            out.push_str(&src[last..t.span.start]);
            out.push_str(&new);
            last = t.span.end;
        }
    }
    out.push_str(&src[last..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(src: &str) -> Vec<&str> {
        tokenize(src).unwrap().iter().map(|t| t.text(src)).collect()
    }

    #[test]
    fn skips_comments_and_keeps_literals() {
        let src = "a /* x */ + \"s // not\" // tail\n 'c' 1.5e-3 0xFFL";
        assert_eq!(texts(src), vec!["a", "+", "\"s // not\"", "'c'", "1.5e-3", "0xFFL"]);
    }

    #[test]
    fn greater_than_is_never_merged() {
        assert_eq!(texts("a >>= b"), vec!["a", ">", ">", "=", "b"]);
        assert_eq!(texts("List<List<X>>"), vec!["List", "<", "List", "<", "X", ">", ">"]);
    }

    #[test]
    fn unbalanced_input_is_rejected() {
        assert!(matches!(tokenize("class A {"), Err(ParseError::UnbalancedSource { .. })));
        assert!(matches!(tokenize("f(]"), Err(ParseError::UnbalancedSource { .. })));
        assert!(matches!(tokenize("\"abc"), Err(ParseError::UnbalancedSource { .. })));
    }

    #[test]
    fn identifier_search_ignores_strings_and_selections() {
        let src = "x = \"x\" + y.x + x; // x";
        let found = find_identifier(src, "x");
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn rename_respects_call_filter() {
        let src = "helper(helper) + a.helper()";
        let out = rename_identifiers(src, &|n| (n == "helper").then(|| "h2".to_string()), true);
        assert_eq!(out, "h2(helper) + a.helper()");
    }
}
