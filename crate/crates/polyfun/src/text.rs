//! Parsers for the polynomial, functor, field and scalar text formats.
//! Every error carries the byte offset where parsing stopped.

use num_bigint::BigInt;
use polyfun_core::functor::FunctorExpr;
use polyfun_core::{Field, GradedPoly, GradedRing, RingRef, Scalar, Variable};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

/// `q` or `fp:<prime>`.
pub fn parse_field(s: &str) -> Result<Field, ParseError> {
    let t = s.trim();
    if t == "q" {
        return Ok(Field::Rationals);
    }
    match t.strip_prefix("fp:") {
        Some(p) => {
            let p: u64 = p.parse().or_else(|_| err(3, format!("`{p}` is not a number")))?;
            Field::prime(p).or_else(|e| err(3, e.to_string()))
        }
        None => err(0, format!("unknown field `{t}`; expected `q` or `fp:<prime>`")),
    }
}

pub fn field_name(f: Field) -> String {
    f.to_string()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(src[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*^/(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return err(i, format!("unexpected character `{ch}`"));
        }
    }
    Ok(out)
}

/// Variable names in order of first appearance.
pub fn collect_vars(src: &str) -> Result<Vec<String>, ParseError> {
    let mut names: Vec<String> = Vec::new();
    for (_, t) in tokenize(src)? {
        if let Tok::Ident(s) = t {
            if !names.contains(&s) {
                names.push(s);
            }
        }
    }
    Ok(names)
}

struct PolyParser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ring: &'a RingRef,
}

impl PolyParser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GradedPoly, ParseError> {
        let mut acc = GradedPoly::zero(self.ring);
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GradedPoly, ParseError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u64, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                u64::try_from(&n).or_else(|_| err(pos, "exponent too large"))
            }
            _ => err(pos, "expected an exponent"),
        }
    }

    fn power(&mut self) -> Result<GradedPoly, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            Ok(base.pow(self.exponent()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<GradedPoly, ParseError> {
        let pos = self.pos();
        let field = self.ring.field();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let c = if self.eat('/') {
                    let dpos = self.pos();
                    let d = match self.peek().cloned() {
                        Some(Tok::Num(d)) => d,
                        _ => return err(dpos, "expected a denominator"),
                    };
                    self.at += 1;
                    field.from_ratio(&n, &d).or_else(|e| err(dpos, e.to_string()))?
                } else {
                    field.from_bigint(&n)
                };
                Ok(GradedPoly::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                GradedPoly::var(self.ring, &name).or_else(|_| err(pos, format!("unknown variable `{name}`")))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return err(self.pos(), "expected `)`");
                }
                Ok(e)
            }
            Some(t) => err(pos, format!("unexpected {}", describe(&t))),
            None => err(pos, "unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

/// Parses `src` as a polynomial over `ring`.
pub fn parse_poly(src: &str, ring: &RingRef) -> Result<GradedPoly, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return err(0, "empty polynomial");
    }
    let mut p = PolyParser {
        toks,
        at: 0,
        end: src.len(),
        ring,
    };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        let t = p.toks[p.at].1.clone();
        return err(p.pos(), format!("unexpected {}", describe(&t)));
    }
    Ok(out)
}

/// A plain ring (weight 1) on `vars`, or on the variables of `srcs` in order
/// of first appearance.
pub fn ring_for(field: Field, srcs: &[&str], vars: Option<&[String]>) -> Result<RingRef, ParseError> {
    let names: Vec<String> = match vars {
        Some(v) => v.to_vec(),
        None => {
            let mut names = Vec::new();
            for s in srcs {
                for n in collect_vars(s)? {
                    if !names.contains(&n) {
                        names.push(n);
                    }
                }
            }
            sort_names(&mut names);
            names
        }
    };
    GradedRing::new(field, names.into_iter().map(|n| Variable::new(n, "", 1)).collect())
        .or_else(|e| err(0, e.to_string()))
}

/// Natural order: `x < y`, `y_1_2 < y_1_10`.
pub fn sort_names(names: &mut [String]) {
    fn key(s: &str) -> Vec<(String, u64)> {
        let mut out = Vec::new();
        let mut word = String::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_ascii_digit() {
                let mut num = c.to_digit(10).unwrap_or(0) as u64;
                while let Some(d) = chars.peek().and_then(|d| d.to_digit(10)) {
                    num = num.saturating_mul(10).saturating_add(d as u64);
                    chars.next();
                }
                out.push((core::mem::take(&mut word), num));
            } else {
                word.push(c);
            }
        }
        out.push((word, 0));
        out
    }
    names.sort_by_cached_key(|n| (key(n), n.clone()));
}

/// Comma-separated variable names.
pub fn parse_name_list(s: &str) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let name = part.trim();
        let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return err(offset, format!("`{name}` is not a variable name"));
        }
        out.push(name.to_string());
        offset += part.len() + 1;
    }
    Ok(out)
}

/// An integer or `a/b`, optionally negative.
pub fn parse_scalar(s: &str, field: Field) -> Result<Scalar, ParseError> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .or_else(|_| err(0, format!("`{t}` is not a number")))?;
    let num = if neg { -num } else { num };
    match den {
        None => Ok(field.from_bigint(&num)),
        Some(d) => {
            let d: BigInt = d.trim().parse().or_else(|_| err(0, format!("`{t}` is not a number")))?;
            field.from_ratio(&num, &d).or_else(|e| err(0, e.to_string()))
        }
    }
}

/// Comma-separated scalars.
pub fn parse_vector(s: &str, field: Field) -> Result<Vec<Scalar>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        out.push(parse_scalar(part, field).map_err(|e| ParseError {
            pos: offset + e.pos,
            message: e.message,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(s: &str, field: Field) -> Result<(usize, usize, Vec<Scalar>), ParseError> {
    let mut rows = 0;
    let mut cols = None;
    let mut data = Vec::new();
    let mut offset = 0;
    for row in s.split(';') {
        let v = parse_vector(row, field).map_err(|e| ParseError {
            pos: offset + e.pos,
            message: e.message,
        })?;
        match cols {
            None => cols = Some(v.len()),
            Some(c) if c != v.len() => {
                return err(
                    offset,
                    format!("row {} has {} entries, expected {c}", rows + 1, v.len()),
                )
            }
            _ => {}
        }
        data.extend(v);
        rows += 1;
        offset += row.len() + 1;
    }
    Ok((rows, cols.unwrap_or(0), data))
}

struct FunctorParser<'a> {
    src: &'a str,
    at: usize,
}

impl FunctorParser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.at..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.at += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.at..].starts_with(c) {
            self.at += 1;
            Ok(())
        } else {
            err(self.at, format!("expected `{c}`"))
        }
    }

    fn word(&mut self) -> Result<(usize, &str), ParseError> {
        self.skip_ws();
        let start = self.at;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
        if len == 0 {
            return err(start, "expected a functor constructor");
        }
        self.at += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.at;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return err(start, "expected a number");
        }
        self.at += len;
        rest[..len].parse().or_else(|_| err(start, "number too large"))
    }

    fn list(&mut self) -> Result<Vec<FunctorExpr>, ParseError> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        loop {
            self.skip_ws();
            if self.src[self.at..].starts_with(',') {
                self.at += 1;
                out.push(self.expr()?);
            } else {
                self.expect(')')?;
                return Ok(out);
            }
        }
    }

    fn expr(&mut self) -> Result<FunctorExpr, ParseError> {
        let (pos, w) = self.word()?;
        Ok(match w {
            "id" => FunctorExpr::Id,
            "const" => {
                self.expect('(')?;
                let m = self.number()?;
                self.expect(')')?;
                FunctorExpr::Const(m)
            }
            "sym" | "ext" | "shift" => {
                let w = w.to_string();
                self.expect('(')?;
                let d = self.number()?;
                self.expect(',')?;
                let c = self.expr()?;
                self.expect(')')?;
                match w.as_str() {
                    "sym" => FunctorExpr::sym(d, c),
                    "ext" => FunctorExpr::ext(d, c),
                    _ => FunctorExpr::shift(d, c),
                }
            }
            "quot" => {
                self.expect('(')?;
                let c = self.expr()?;
                self.expect(',')?;
                let k = self.number()?;
                self.expect(')')?;
                FunctorExpr::quot(c, k)
            }
            "sum" => FunctorExpr::Sum(self.list()?),
            "tensor" => FunctorExpr::Tensor(self.list()?),
            other => return err(pos, format!("unknown constructor `{other}`")),
        })
    }
}

/// Parses and validates a functor expression.
pub fn parse_functor(src: &str) -> Result<FunctorExpr, ParseError> {
    let mut p = FunctorParser { src, at: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.at < src.len() {
        return err(p.at, "trailing input");
    }
    e.validate().or_else(|x| err(0, x.to_string()))?;
    Ok(e)
}

/// Shares a ring between several parsed polynomials.
pub fn parse_polys(srcs: &[String], ring: &RingRef) -> Result<Vec<GradedPoly>, ParseError> {
    srcs.iter().map(|s| parse_poly(s, ring)).collect()
}
