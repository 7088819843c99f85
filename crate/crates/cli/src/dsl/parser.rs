use gradal_core::element::Coeff;
use gradal_core::ringexpr::{AlgebraMode, Base};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::*;
use crate::error::CliError;

type PResult<T> = Result<T, CliError>;

pub struct Parser {
    src: Vec<char>,
    pos: usize,
    line: usize,
}

impl Parser {
    pub fn new(text: &str, line: usize) -> Parser {
        Parser {
            src: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn span_from(&self, start: usize) -> Span {
        Span {
            line: self.line,
            start: start + 1,
            end: self.pos + 1,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(CliError::Syntax {
            span: Span {
                line: self.line,
                start: self.pos + 1,
                end: self.pos + 2,
            },
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn looking_at(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        self.src.len() >= self.pos + n && self.src[self.pos..self.pos + n].iter().copied().eq(s.chars())
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.looking_at(s) {
            self.pos += s.chars().count();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> PResult<()> {
        if self.eat(s) {
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.error(format!("expected `{s}`, found `{c}`")),
                None => self.error(format!("expected `{s}`, found end of input")),
            }
        }
    }

    pub fn finish(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{c}`")),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].iter().collect())
    }

    fn big(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let neg = self.eat("-");
        self.skip_ws();
        match self.digits() {
            Some(d) => {
                let v: BigInt = d.parse().expect("ascii digits");
                Ok(if neg { -v } else { v })
            }
            None => self.error("expected an integer"),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let start = self.pos;
        let v = self.big()?;
        i64::try_from(v).or_else(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(|c| c.is_alphabetic() || *c == '_') {
            return None;
        }
        while self.src.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        Some(self.src[start..self.pos].iter().collect())
    }

    fn int_list(&mut self, open: &str, close: &str) -> PResult<Vec<i64>> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    pub fn group(&mut self) -> PResult<GroupAst> {
        self.skip_ws();
        let start = self.pos;
        let mut factors = Vec::new();
        loop {
            self.group_term(&mut factors)?;
            let save = self.pos;
            // `x` separates factors only when followed by another factor.
            if self.eat("x") && matches!(self.peek(), Some('Z' | '0' | '(')) {
                continue;
            }
            self.pos = save;
            break;
        }
        Ok(GroupAst {
            factors,
            span: self.span_from(start),
        })
    }

    fn group_term(&mut self, out: &mut Vec<GroupFactor>) -> PResult<()> {
        if self.eat("(") {
            out.extend(self.group()?.factors);
            return self.expect(")");
        }
        if self.eat("0") {
            out.push(GroupFactor::Zero);
            return Ok(());
        }
        self.expect("Z")?;
        if self.eat("^") {
            let r = self.int()?;
            if r < 0 {
                return self.error("rank must be nonnegative");
            }
            out.push(GroupFactor::Free(r as usize));
        } else if self.eat("/") {
            let n = self.int()?;
            if n < 1 {
                return self.error("cyclic order must be positive");
            }
            out.push(GroupFactor::Cyclic(n));
        } else {
            out.push(GroupFactor::Free(1));
        }
        Ok(())
    }

    pub fn hom(&mut self) -> PResult<HomAst> {
        self.skip_ws();
        let start = self.pos;
        self.expect("[")?;
        let mut rows = Vec::new();
        if !self.eat("]") {
            loop {
                rows.push(self.int_list("[", "]")?);
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        let signature = if self.eat(":") {
            let d = self.group()?;
            self.expect("->")?;
            Some((d, self.group()?))
        } else {
            None
        };
        Ok(HomAst {
            rows,
            signature,
            span: self.span_from(start),
        })
    }

    pub fn tuple(&mut self) -> PResult<TupleAst> {
        self.skip_ws();
        let start = self.pos;
        let coords = self.int_list("(", ")")?;
        Ok(TupleAst {
            coords,
            span: self.span_from(start),
        })
    }

    /// `(1,0), (0,2)`; possibly empty.
    pub fn tuples(&mut self) -> PResult<Vec<TupleAst>> {
        let mut out = Vec::new();
        if self.peek() != Some('(') {
            return Ok(out);
        }
        loop {
            out.push(self.tuple()?);
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }

    pub fn ring(&mut self) -> PResult<RingAst> {
        self.skip_ws();
        let start = self.pos;
        let Some(word) = self.ident() else {
            return self.error("expected a ring");
        };
        let kind = match word.as_str() {
            "Z" => RingKind::Base(Base::Z),
            "Q" => RingKind::Base(Base::Q),
            "coarsen" | "extend" => {
                self.expect("(")?;
                let inner = Box::new(self.ring()?);
                self.expect(",")?;
                let h = self.hom()?;
                self.expect(")")?;
                if word == "coarsen" {
                    RingKind::Coarsen(inner, h)
                } else {
                    RingKind::Extend(inner, h)
                }
            }
            "restrict" => {
                self.expect("(")?;
                let inner = Box::new(self.ring()?);
                self.expect(",")?;
                let gens = self.tuples()?;
                self.expect(")")?;
                RingKind::Restrict(inner, gens)
            }
            "Frac" => {
                self.expect("(")?;
                let inner = Box::new(self.ring()?);
                self.expect(")")?;
                RingKind::Frac(inner)
            }
            _ => RingKind::Name(word),
        };
        let mut ring = RingAst {
            kind,
            span: self.span_from(start),
        };
        while self.eat("[") {
            let g = self.group()?;
            self.expect("]")?;
            let mode = match self.ident().as_deref() {
                Some("fine") => AlgebraMode::Fine,
                Some("coarse") => AlgebraMode::Coarse,
                _ => return self.error("expected `fine` or `coarse`"),
            };
            ring = RingAst {
                kind: RingKind::Algebra(Box::new(ring), g, mode),
                span: self.span_from(start),
            };
        }
        Ok(ring)
    }

    fn rational(&mut self) -> PResult<Coeff> {
        let n = self.big()?;
        if self.eat("/") {
            let d = self.big()?;
            if d.is_zero() {
                return self.error("zero denominator");
            }
            Ok(Coeff::new(n, d))
        } else {
            Ok(Coeff::from_integer(n))
        }
    }

    fn term(&mut self, negative: bool) -> PResult<TermAst> {
        self.skip_ws();
        let start = self.pos;
        let mut coeff = Coeff::one();
        let mut exponent = None;
        if self.looking_at("e(") {
            self.pos += 1;
            exponent = Some(self.int_list("(", ")")?);
        } else {
            coeff = self.rational()?;
            if self.eat("*") {
                self.expect("e")?;
                exponent = Some(self.int_list("(", ")")?);
            }
        }
        Ok(TermAst {
            coeff: if negative { -coeff } else { coeff },
            exponent,
            span: self.span_from(start),
        })
    }

    fn sum(&mut self) -> PResult<SumAst> {
        self.skip_ws();
        let start = self.pos;
        let mut terms = Vec::new();
        let mut negative = self.eat("-");
        loop {
            terms.push(self.term(negative)?);
            if self.eat("+") {
                negative = false;
            } else if self.eat("-") {
                negative = true;
            } else {
                break;
            }
        }
        Ok(SumAst {
            terms,
            span: self.span_from(start),
        })
    }

    pub fn elem(&mut self) -> PResult<ElemAst> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let num = self.sum()?;
            self.expect(")")?;
            if !self.eat("/") {
                return Ok(ElemAst::Sum(num));
            }
            self.expect("(")?;
            let den = self.sum()?;
            self.expect(")")?;
            return Ok(ElemAst::Quotient(num, den));
        }
        if !self.looking_at("e(") {
            if let Some(name) = self.ident() {
                return Ok(ElemAst::Name(name, self.span_from(start)));
            }
        }
        Ok(ElemAst::Sum(self.sum()?))
    }
}

fn whole<T>(text: &str, line: usize, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(text, line);
    let v = f(&mut p)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_ring(text: &str) -> PResult<RingAst> {
    whole(text, 1, Parser::ring)
}

pub fn parse_elem(text: &str) -> PResult<ElemAst> {
    whole(text, 1, Parser::elem)
}

pub fn parse_group(text: &str) -> PResult<GroupAst> {
    whole(text, 1, Parser::group)
}

pub fn parse_hom(text: &str) -> PResult<HomAst> {
    whole(text, 1, Parser::hom)
}

pub fn parse_tuples(text: &str) -> PResult<Vec<TupleAst>> {
    whole(text, 1, Parser::tuples)
}

/// Splits a command line into words; double quotes group and accept `\"`
/// and `\\` escapes, single quotes are literal, and whitespace inside
/// brackets does not split.
pub fn split_words(text: &str, line: usize) -> PResult<Vec<String>> {
    let mut words = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some(&(_, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut w = String::new();
        let mut depth = 0usize;
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() && depth == 0 {
                break;
            }
            chars.next();
            match c {
                '(' | '[' => {
                    depth += 1;
                    w.push(c);
                }
                ')' | ']' => {
                    depth = depth.saturating_sub(1);
                    w.push(c);
                }
                '"' => loop {
                    match chars.next() {
                        Some((_, '"')) => break,
                        Some((_, '\\')) => match chars.next() {
                            Some((_, e)) => w.push(e),
                            None => return unterminated(line, i),
                        },
                        Some((_, x)) => w.push(x),
                        None => return unterminated(line, i),
                    }
                },
                '\'' => loop {
                    match chars.next() {
                        Some((_, '\'')) => break,
                        Some((_, x)) => w.push(x),
                        None => return unterminated(line, i),
                    }
                },
                _ => w.push(c),
            }
        }
        words.push(w);
    }
    Ok(words)
}

fn unterminated<T>(line: usize, col: usize) -> PResult<T> {
    Err(CliError::Syntax {
        span: Span {
            line,
            start: col + 1,
            end: col + 2,
        },
        message: "unterminated quote".into(),
    })
}

fn is_elem_start(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with("e(") || t.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '(')
}

/// Scripts: one item per line, `#` starts a comment line.
///
/// ```text
/// let R = Z[Z/3]coarse
/// let f = 1/3*e(0) + 1/3*e(1) + 1/3*e(2)
/// integrality R Q[Z/3]coarse f --max-deg 2
/// ```
pub fn parse_script(text: &str) -> PResult<Script> {
    let mut items = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        let span = Span {
            line,
            start: indent + 1,
            end: raw.trim_end().chars().count() + 1,
        };
        if let Some(rest) = trimmed.strip_prefix("let ") {
            let mut p = Parser::new(raw, line);
            p.pos = raw[..indent].chars().count() + 4;
            let Some(name) = p.ident() else {
                return p.error("expected a name");
            };
            p.expect("=")?;
            let value_text = rest.split_once('=').map_or("", |(_, v)| v);
            let value = if is_elem_start(value_text) {
                Value::Elem(p.elem()?)
            } else {
                Value::Ring(p.ring()?)
            };
            p.finish()?;
            items.push(Item::Let { name, value, span });
        } else {
            items.push(Item::Command {
                words: split_words(raw, line)?,
                span,
            });
        }
    }
    Ok(Script { items })
}
