//! Recursive-descent parser for the expression language.
//!
//! ```text
//! program := (decl ';')* expr
//! decl    := 'let' IDENT ':' typeset
//! expr    := prod (('+'|'-') prod)*
//! prod    := unary ('*' unary)*
//! unary   := rational ['*'] unary | 'i' ['*'] unary | '-' unary | atom
//! atom    := IDENT | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//!          | ('rev'|'gri'|'conj'|'phc') '(' expr ')'
//! ```

use crate::algebra::{parse_unsigned_rational, Conjugation, Field};
use crate::error::{Error, Result};
use crate::qtype::TypeSet;

use super::ast::{Expr, Program, TypeEnv};

const RESERVED: [&str; 6] = ["let", "i", "rev", "gri", "conj", "phc"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Punct(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    /// Byte offset into the source.
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut it = src.char_indices().peekable();
    while let Some(&(offset, c)) = it.peek() {
        let (tline, tcol) = (line, col);
        let mut advance = |it: &mut std::iter::Peekable<std::str::CharIndices<'_>>| {
            let (_, ch) = it.next().unwrap();
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        if c.is_whitespace() {
            advance(&mut it);
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, ch)) = it.peek() {
                if ch.is_ascii_alphanumeric() || ch == '_' {
                    s.push(advance(&mut it));
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, ch)) = it.peek() {
                if ch.is_ascii_digit() || ch == '/' || ch == '.' {
                    s.push(advance(&mut it));
                } else {
                    break;
                }
            }
            Tok::Number(s)
        } else if "+-*;:,()[]{}".contains(c) {
            advance(&mut it);
            Tok::Punct(c)
        } else if c == '∅' {
            advance(&mut it);
            Tok::Ident("∅".to_string())
        } else {
            return Err(Error::Syntax { line: tline, col: tcol, msg: format!("unexpected character `{c}`") });
        };
        out.push(Token { tok, line: tline, col: tcol, offset });
    }
    out.push(Token { tok: Tok::Eof, line, col, offset: src.len() });
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    at: usize,
    field: Field,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn here(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err_at(&self, tok: &Token, msg: impl Into<String>) -> Error {
        Error::Syntax { line: tok.line, col: tok.col, msg: msg.into() }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        self.err_at(self.here(), msg)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn program(&mut self) -> Result<Program> {
        let mut env = TypeEnv::new(self.field);
        while *self.peek() == Tok::Ident("let".into()) {
            self.bump();
            let name_tok = self.bump();
            let name = match &name_tok.tok {
                Tok::Ident(n) if !RESERVED.contains(&n.as_str()) => n.clone(),
                other => return Err(self.err_at(&name_tok, format!("expected a symbol name, found {}", describe(other)))),
            };
            self.expect(':')?;
            let t = self.typeset()?;
            if !env.declare(&name, t) {
                return Err(self.err_at(&name_tok, format!("symbol `{name}` declared twice")));
            }
            self.expect(';')?;
        }
        let expr = self.expr()?;
        if *self.peek() != Tok::Eof {
            return Err(self.err(format!("unexpected {}", describe(self.peek()))));
        }
        Ok(Program { env, expr })
    }

    /// Type sets are read as raw text up to the next `;`.
    fn typeset(&mut self) -> Result<TypeSet> {
        let start = self.here().clone();
        while !matches!(self.peek(), Tok::Punct(';') | Tok::Eof) {
            self.bump();
        }
        let text = self.src[start.offset..self.here().offset].trim();
        let t: TypeSet = text
            .parse()
            .map_err(|_| self.err_at(&start, format!("malformed type set `{text}`")))?;
        if self.field == Field::Real && t.has_imaginary() {
            return Err(self.err_at(&start, format!("imaginary type `{text}` in real mode")));
        }
        Ok(t)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.prod()?;
        loop {
            if self.eat('+') {
                lhs = Expr::add(lhs, self.prod()?);
            } else if self.eat('-') {
                lhs = Expr::add(lhs, Expr::neg(self.prod()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::prod(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        let tok = self.here().clone();
        match &tok.tok {
            Tok::Number(text) => {
                self.bump();
                let r = parse_unsigned_rational(text)
                    .ok_or_else(|| self.err_at(&tok, format!("malformed number `{text}`")))?;
                self.eat('*');
                Ok(Expr::scale(r, self.unary()?))
            }
            Tok::Ident(name) if name == "i" => {
                if self.field == Field::Real {
                    return Err(self.err_at(&tok, "`i` is only available in complex mode"));
                }
                self.bump();
                self.eat('*');
                Ok(Expr::imul(self.unary()?))
            }
            Tok::Punct('-') => {
                self.bump();
                // `-3*x` is a negative scalar, `-(3*x)` a negation
                let literal = matches!(self.here().tok, Tok::Number(_));
                match self.unary()? {
                    Expr::ScalarMul(r, e) if literal => Ok(Expr::ScalarMul(-r, e)),
                    other => Ok(Expr::neg(other)),
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.bump();
        match &tok.tok {
            Tok::Punct('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Punct('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr::comm(a, b))
            }
            Tok::Punct('{') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect('}')?;
                Ok(Expr::anticomm(a, b))
            }
            Tok::Ident(name) if *self.peek() == Tok::Punct('(') => {
                let c = Conjugation::from_call_name(name)
                    .ok_or_else(|| self.err_at(&tok, format!("unknown conjugation `{name}`")))?;
                if c.requires_complex() && self.field == Field::Real {
                    return Err(self.err_at(&tok, format!("`{name}` is only available in complex mode")));
                }
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Expr::conj(c, e))
            }
            Tok::Ident(name) if RESERVED.contains(&name.as_str()) || name == "∅" => {
                Err(self.err_at(&tok, format!("`{name}` cannot be used as a symbol")))
            }
            Tok::Ident(name) => Ok(Expr::Sym(name.clone())),
            other => Err(self.err_at(&tok, format!("expected an expression, found {}", describe(other)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(s) => format!("number `{s}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

/// Parses a full program.
pub fn parse_program(text: &str, field: Field) -> Result<Program> {
    let toks = lex(text)?;
    Parser { src: text, toks, at: 0, field }.program()
}

/// Parses a program into its environment and expression.
pub fn parse_expr(text: &str, field: Field) -> Result<(TypeEnv, Expr)> {
    let p = parse_program(text, field)?;
    Ok((p.env, p.expr))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(s: &str) -> TypeSet {
        s.parse().unwrap()
    }

    #[test]
    fn declarations_and_commutator() {
        let (env, e) = parse_expr("let x:2; let y:2; [x,y]", Field::Real).unwrap();
        assert_eq!(e, Expr::comm(Expr::sym("x"), Expr::sym("y")));
        assert_eq!(env.lookup("x"), ts("2"));
        assert_eq!(env.lookup("y"), ts("2"));
        assert_eq!(env.lookup("z"), ts("0123"));
    }

    #[test]
    fn conjugation_calls() {
        let (env, e) = parse_expr("let u:01; [u, rev(u)]", Field::Real).unwrap();
        assert_eq!(e, Expr::comm(Expr::sym("u"), Expr::conj(Conjugation::Reversion, Expr::sym("u"))));
        assert_eq!(env.lookup("u"), ts("01"));
        let (_, e) = parse_expr("gri(rev(x))", Field::Real).unwrap();
        assert_eq!(e, Expr::Conj(Conjugation::GradeReversion, Box::new(Expr::sym("x"))));
        let (_, e) = parse_expr("rev(rev(x))", Field::Real).unwrap();
        assert_eq!(e, Expr::sym("x"));
    }

    #[test]
    fn complex_only_constructs_rejected_in_real_mode() {
        for src in ["{x, conj(x)}", "phc(x)", "i*x", "let x:01+i23; x"] {
            assert!(matches!(parse_expr(src, Field::Real), Err(Error::Syntax { .. })), "{src}");
            assert!(parse_expr(src, Field::Complex).is_ok(), "{src}");
        }
    }

    #[test]
    fn error_positions() {
        match parse_expr("let x:2;\n  foo(x)", Field::Real) {
            Err(Error::Syntax { line, col, msg }) => {
                assert_eq!((line, col), (2, 3));
                assert!(msg.contains("unknown conjugation"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("[x, y", Field::Real), Err(Error::Syntax { line: 1, col: 6, .. })));
        assert!(parse_expr("let x:5; x", Field::Real).is_err());
        assert!(parse_expr("let x:1; let x:2; x", Field::Real).is_err());
        assert!(parse_expr("x y", Field::Real).is_err());
        assert!(parse_expr("rev", Field::Real).is_err());
        assert!(parse_expr("x $ y", Field::Real).is_err());
    }

    #[test]
    fn precedence_and_scalars() {
        let (_, e) = parse_expr("x + 3/2*y*z - w", Field::Real).unwrap();
        let expected = Expr::add(
            Expr::add(
                Expr::sym("x"),
                Expr::prod(Expr::scale(BigRational::new(3.into(), 2.into()), Expr::sym("y")), Expr::sym("z")),
            ),
            Expr::neg(Expr::sym("w")),
        );
        assert_eq!(e, expected);
        let (_, e) = parse_expr("-x*y", Field::Real).unwrap();
        assert_eq!(e, Expr::prod(Expr::neg(Expr::sym("x")), Expr::sym("y")));
    }

    use num_rational::BigRational;
}
