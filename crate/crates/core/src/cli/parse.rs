//! Foliation files and polynomial expressions.
//!
//! ```text
//! # comment
//! extension = t^2 + t + 1
//! A = (Y^3 - Z^3)*Y*Z
//! B = ...
//! C = ...
//! ```

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::field::{Field, FieldElement, Rational};
use crate::exactmath::unipoly::UniPoly;
use crate::foliation::Foliation;
use crate::forms::multipoly::{MultiPoly, Vars};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int,
    Ident,
    Op(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    kind: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { kind: Tok::Int, text: chars[s..i].iter().collect(), line, column });
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { kind: Tok::Ident, text: chars[s..i].iter().collect(), line, column });
        } else if "+-*/^()".contains(c) {
            out.push(Token { kind: Tok::Op(c), text: c.to_string(), line, column });
            i += 1;
        } else {
            return Err(Error::Parse { line, column, message: format!("unexpected character '{c}'") });
        }
    }
    out.push(Token { kind: Tok::End, text: String::new(), line, column: col0 + chars.len() });
    Ok(out)
}

/// What an identifier stands for.
#[derive(Debug, Clone)]
pub enum Symbol {
    Var(usize),
    Constant(FieldElement),
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: Vars,
    symbols: &'a [(&'a str, Symbol)],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.kind != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: t.line, column: t.column, message: message.into() })
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek().kind {
            Tok::Op('-') => {
                self.next();
                self.term()?.neg()
            }
            Tok::Op('+') => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().kind {
                Tok::Op('+') => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            let t = self.peek().clone();
            match t.kind {
                Tok::Op('*') => {
                    self.next();
                    acc = acc.mul(&self.power()?);
                }
                Tok::Op('/') => return Self::err(&t, "division is only allowed between integer literals"),
                Tok::Int | Tok::Ident | Tok::Op('(') => {
                    return Self::err(&t, "missing operator (implicit multiplication is not accepted)")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek().kind != Tok::Op('^') {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        if t.kind != Tok::Int {
            return Self::err(&t, "expected a non-negative integer exponent");
        }
        match t.text.parse::<u32>() {
            Ok(n) if n <= 1000 => Ok(base.pow(n)),
            _ => Self::err(&t, "exponent too large"),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let t = self.next();
        match t.kind {
            Tok::Int => {
                let num: BigInt = t.text.parse().expect("digits");
                let mut q = Rational::from_integer(num);
                if self.peek().kind == Tok::Op('/') {
                    self.next();
                    let d = self.next();
                    if d.kind != Tok::Int {
                        return Self::err(&d, "division is only allowed between integer literals");
                    }
                    let den: BigInt = d.text.parse().expect("digits");
                    if den.is_zero() {
                        return Self::err(&d, "division by zero");
                    }
                    q /= Rational::from_integer(den);
                }
                Ok(MultiPoly::constant(self.vars, FieldElement::from_rational(q)))
            }
            Tok::Ident => match self.symbols.iter().find(|(n, _)| *n == t.text) {
                Some((_, Symbol::Var(i))) => Ok(MultiPoly::var(self.vars, *i)),
                Some((_, Symbol::Constant(c))) => Ok(MultiPoly::constant(self.vars, c.clone())),
                None => Self::err(&t, format!("unknown identifier '{}'", t.text)),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                let close = self.next();
                if close.kind != Tok::Op(')') {
                    return Self::err(&close, "expected ')'");
                }
                Ok(e)
            }
            Tok::End => Self::err(&t, "unexpected end of expression"),
            _ => Self::err(&t, format!("unexpected '{}'", t.text)),
        }
    }
}

fn parse_at(src: &str, line: usize, column: usize, vars: Vars, symbols: &[(&str, Symbol)]) -> Result<MultiPoly> {
    let toks = lex(src, line, column)?;
    let mut p = Parser { toks, pos: 0, vars, symbols };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.kind != Tok::End {
        return Parser::err(&t, format!("unexpected '{}'", t.text));
    }
    Ok(e)
}

/// Parses one expression with the given identifiers.
pub fn parse_expression(src: &str, vars: Vars, symbols: &[(&str, Symbol)]) -> Result<MultiPoly> {
    parse_at(src, 1, 1, vars, symbols)
}

/// A polynomial in the local coordinates `u`, `v`.
pub fn parse_local(src: &str) -> Result<MultiPoly> {
    parse_expression(src, Vars::Local, &[("u", Symbol::Var(0)), ("v", Symbol::Var(1))])
}

/// A form in `X, Y, Z`, with `t` the generator when `field` is an extension.
pub fn parse_projective(src: &str, field: &Field) -> Result<MultiPoly> {
    parse_expression(src, Vars::Projective, &projective_symbols(field))
}

fn projective_symbols(field: &Field) -> Vec<(&'static str, Symbol)> {
    let mut s = vec![("X", Symbol::Var(0)), ("Y", Symbol::Var(1)), ("Z", Symbol::Var(2))];
    if !field.is_rational() {
        s.push(("t", Symbol::Constant(field.generator())));
    }
    s
}

#[derive(Debug, Clone)]
pub struct FoliationFile {
    /// Monic integer minimal polynomial of `t`, constant term first.
    pub extension: Option<Vec<BigInt>>,
    pub field: Field,
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
}

impl FoliationFile {
    pub fn foliation(&self) -> Result<Foliation> {
        Foliation::new(self.a.clone(), self.b.clone(), self.c.clone(), self.field.clone())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        if let Some(m) = &self.extension {
            let p = UniPoly::from_rationals(&m.iter().map(|c| Rational::from_integer(c.clone())).collect::<Vec<_>>());
            s.push_str(&format!("extension = {}\n", p.to_string_in("t")));
        }
        s.push_str(&format!("A = {}\nB = {}\nC = {}\n", self.a.render(), self.b.render(), self.c.render()));
        s
    }
}

struct Entry<'a> {
    line: usize,
    column: usize,
    value: &'a str,
}

/// Parses and validates a foliation file: keys, homogeneity and the Euler
/// condition.
pub fn parse_foliation_file(text: &str) -> Result<FoliationFile> {
    let file = parse_foliation_components(text)?;
    file.foliation()?;
    Ok(file)
}

/// Parsing only, without the foliation checks.
pub fn parse_foliation_components(text: &str) -> Result<FoliationFile> {
    let keys = ["extension", "A", "B", "C"];
    let mut entries: [Option<Entry>; 4] = [None, None, None, None];
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let column = content.len() - content.trim_start().len() + 1;
            return Err(Error::Parse { line, column, message: "expected 'key = expression'".into() });
        };
        let key = content[..eq].trim();
        let key_col = content.len() - content.trim_start().len() + 1;
        let Some(slot) = keys.iter().position(|k| *k == key) else {
            return Err(Error::Parse { line, column: key_col, message: format!("unknown key '{key}'") });
        };
        if let Some(prev) = &entries[slot] {
            return Err(Error::Parse {
                line,
                column: key_col,
                message: format!("duplicate key '{key}' (first given on line {})", prev.line),
            });
        }
        let value = &content[eq + 1..];
        let column = content[..eq + 1].chars().count() + 1;
        entries[slot] = Some(Entry { line, column, value });
    }
    for (k, e) in keys.iter().zip(&entries).skip(1) {
        if e.is_none() {
            return Err(Error::Parse { line: last_line, column: 1, message: format!("missing key '{k}'") });
        }
    }

    let (field, extension) = match &entries[0] {
        None => (Field::rationals(), None),
        Some(e) => {
            let p = parse_at(e.value, e.line, e.column, Vars::Local, &[("t", Symbol::Var(0))])?;
            let m = p.to_unipoly(0).expect("univariate in t");
            let ints = monic_integer(&m).ok_or_else(|| Error::Parse {
                line: e.line,
                column: e.column,
                message: "extension must be a monic integer polynomial in t of degree at least 2".into(),
            })?;
            if m.squarefree_part()?.degree() != m.degree() {
                return Err(Error::NotSquarefreeExtension);
            }
            (Field::extension(&m.rational_coeffs().expect("rational"))?, Some(ints))
        }
    };
    let comp = |i: usize| -> Result<MultiPoly> {
        let e = entries[i].as_ref().expect("checked");
        parse_at(e.value, e.line, e.column, Vars::Projective, &projective_symbols(&field))
    };
    Ok(FoliationFile { extension, a: comp(1)?, b: comp(2)?, c: comp(3)?, field })
}

fn monic_integer(m: &UniPoly) -> Option<Vec<BigInt>> {
    let coeffs = m.rational_coeffs()?;
    if coeffs.len() < 3 || !coeffs.last()?.is_one() {
        return None;
    }
    coeffs.iter().map(|c| if c.is_integer() { Some(c.to_integer()) } else { None }).collect()
}

/// Comma-separated integers, as in `--s 2,3,1`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .ok()
                .and_then(|v| v.to_i64())
                .ok_or_else(|| Error::InvalidInput(format!("not an integer: '{}'", x.trim())))
        })
        .collect()
}
