//! Text and structured forms of multivectors.
//!
//! ```text
//! mv    := ['+'|'-'] term (('+'|'-') term)* | '0'
//! term  := coeff ('*' blade)? | blade
//! coeff := rational ('i')? | 'i'
//! blade := 'e' | 'e' digits | 'e{' index (',' index)* '}'
//! ```

use serde::{Deserialize, Serialize};

use super::coeff::parse_unsigned_real;
use super::{Backend, Blade, Coeff, Field, Multivector, Real, Signature, Space};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.char_indices().collect(), at: 0, src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |(p, _)| *p)
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.at), Some((_, c)) if c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.at).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_raw();
        self.at += 1;
        c
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.into() }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek_raw() {
            if !f(c) {
                break;
            }
            s.push(c);
            self.at += 1;
        }
        s
    }
}

/// Parses the multivector text grammar into `space`.
pub fn parse_mv(text: &str, space: Space) -> Result<Multivector> {
    let mut cur = Cursor::new(text);
    let mut mv = Multivector::zero(space);
    let mut first = true;
    loop {
        let negative = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            None if first => return Err(cur.err("empty input")),
            None => break,
            Some(c) if !first => return Err(cur.err(format!("expected `+` or `-`, found `{c}`"))),
            Some(_) => false,
        };
        first = false;
        let (blade, coeff) = parse_term(&mut cur, space)?;
        let coeff = if negative { -&coeff } else { coeff };
        if space.field == Field::Real && !coeff.is_real() {
            return Err(cur.err("imaginary coefficient in a real algebra"));
        }
        mv.add_term(blade, coeff);
    }
    Ok(mv)
}

fn parse_term(cur: &mut Cursor<'_>, space: Space) -> Result<(Blade, Coeff)> {
    let backend = space.backend;
    let one = Coeff::from_int(1, backend);
    let coeff = match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let start = cur.pos();
            let text = cur.take_while(|c| c.is_ascii_digit() || c == '/' || c == '.');
            let value = parse_unsigned_real(&text, backend)
                .ok_or(Error::Parse { pos: start, msg: format!("malformed number `{text}`") })?;
            if cur.peek() == Some('i') {
                cur.bump();
                Some(Coeff::new(Real::zero(backend), value))
            } else {
                Some(Coeff::real(value))
            }
        }
        Some('i') => {
            cur.bump();
            Some(Coeff::i(backend))
        }
        Some('e') => None,
        Some(c) => return Err(cur.err(format!("unexpected `{c}`"))),
        None => return Err(cur.err("expected a term")),
    };
    match coeff {
        Some(c) => {
            if cur.peek() == Some('*') {
                cur.bump();
                if cur.peek() != Some('e') {
                    return Err(cur.err("expected a blade after `*`"));
                }
                Ok((parse_blade(cur, space.signature)?, c))
            } else {
                Ok((Blade::IDENTITY, c))
            }
        }
        None => Ok((parse_blade(cur, space.signature)?, one)),
    }
}

fn parse_blade(cur: &mut Cursor<'_>, sig: Signature) -> Result<Blade> {
    let start = cur.pos();
    cur.bump(); // 'e'
    let mut indices = Vec::new();
    match cur.peek_raw() {
        Some('{') => {
            cur.bump();
            loop {
                let p = {
                    cur.skip_ws();
                    cur.pos()
                };
                let digits = cur.take_while(|c| c.is_ascii_digit());
                if digits.is_empty() {
                    return Err(cur.err("expected a generator index"));
                }
                let a: usize = digits
                    .parse()
                    .map_err(|_| Error::Parse { pos: p, msg: format!("bad index `{digits}`") })?;
                indices.push((p, a));
                match cur.peek() {
                    Some(',') => {
                        cur.bump();
                    }
                    Some('}') => {
                        cur.bump();
                        break;
                    }
                    _ => return Err(cur.err("expected `,` or `}` in blade")),
                }
            }
        }
        Some(c) if c.is_ascii_digit() => {
            if sig.n() > 9 {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("digit blade form needs n <= 9 (n = {}); use e{{..}}", sig.n()),
                });
            }
            while let Some(c) = cur.peek_raw().filter(char::is_ascii_digit) {
                let p = cur.pos();
                cur.bump();
                indices.push((p, c.to_digit(10).unwrap() as usize));
            }
        }
        Some(c) if c.is_alphanumeric() => return Err(cur.err(format!("unexpected `{c}` in blade"))),
        _ => {}
    }
    let mut mask = 0u64;
    let mut prev = 0usize;
    for (p, a) in indices {
        if a == 0 || a > sig.n() {
            return Err(Error::Parse { pos: p, msg: format!("index {a} outside 1..={}", sig.n()) });
        }
        if a == prev {
            return Err(Error::Parse { pos: p, msg: format!("duplicate index {a}") });
        }
        if a < prev {
            return Err(Error::Parse { pos: p, msg: "blade indices must be increasing".into() });
        }
        prev = a;
        mask |= 1u64 << (a - 1);
    }
    Ok(Blade::from_mask(mask))
}

/// Canonical text: terms ordered by rank then index list; a complex
/// coefficient is written as a real term followed by an imaginary term.
pub fn format_mv(mv: &Multivector) -> String {
    if mv.is_zero() {
        return "0".to_string();
    }
    let sig = mv.signature();
    let mut terms: Vec<(Blade, &Coeff)> = mv.terms().collect();
    terms.sort_by_key(|(b, _)| b.canonical_key());
    let mut out = String::new();
    for (blade, c) in terms {
        for (part, imaginary) in [(&c.re, false), (&c.im, true)] {
            if part.is_zero() {
                continue;
            }
            let negative = part.is_negative();
            let mag = if negative { -part } else { part.clone() };
            let mag_is_one = Coeff::real(mag.clone()).is_one();
            let mut body = String::new();
            match (blade.is_identity(), imaginary, mag_is_one) {
                (true, false, _) => body.push_str(&mag.to_string()),
                (true, true, true) => body.push('i'),
                (true, true, false) => body.push_str(&format!("{mag}i")),
                (false, false, true) => body.push_str(&blade.format_for(sig)),
                (false, false, false) => body.push_str(&format!("{mag}*{}", blade.format_for(sig))),
                (false, true, true) => body.push_str(&format!("i*{}", blade.format_for(sig))),
                (false, true, false) => body.push_str(&format!("{mag}i*{}", blade.format_for(sig))),
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
    }
    out
}

/// Structured multivector form used by `--json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub signature: Signature,
    pub field: Field,
    pub backend: Backend,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub blade: Vec<usize>,
    pub re: String,
    pub im: String,
}

impl From<&Multivector> for MultivectorJson {
    fn from(mv: &Multivector) -> Self {
        let mut terms: Vec<(Blade, &Coeff)> = mv.terms().collect();
        terms.sort_by_key(|(b, _)| b.canonical_key());
        MultivectorJson {
            signature: mv.signature(),
            field: mv.field(),
            backend: mv.backend(),
            terms: terms
                .into_iter()
                .map(|(b, c)| TermJson { blade: b.indices(), re: c.re.to_string(), im: c.im.to_string() })
                .collect(),
        }
    }
}

impl TryFrom<&MultivectorJson> for Multivector {
    type Error = Error;

    fn try_from(j: &MultivectorJson) -> Result<Multivector> {
        let space = Space::new(j.signature, j.field, j.backend);
        let parse = |s: &str| -> Result<Real> {
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, s),
            };
            let v = parse_unsigned_real(body, j.backend)
                .ok_or_else(|| Error::usage(format!("bad coefficient `{s}`")))?;
            Ok(if neg { -&v } else { v })
        };
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let mut sorted = t.blade.clone();
            sorted.sort_unstable();
            if sorted != t.blade {
                return Err(Error::usage("blade indices must be increasing"));
            }
            let blade = Blade::from_indices(&t.blade)
                .ok_or_else(|| Error::usage(format!("bad blade {:?}", t.blade)))?;
            terms.push((blade, Coeff::new(parse(&t.re)?, parse(&t.im)?)));
        }
        Multivector::from_terms(space, terms)
    }
}
