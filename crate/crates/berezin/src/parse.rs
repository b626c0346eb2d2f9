//! Text input: the word mini-language for `Env(sl(n))` and a small
//! expression grammar for symbols.
//!
//! Words: letters `E<i><j>` (off-diagonal, 1-based) and `H<k>`, joined by
//! `*`; `1` denotes the empty word.  Expressions: integers, `xi<i>`,
//! `eta<i>`, `N`, `lambda`, parentheses and `+ - * / ^`; division is exact
//! and restricted to units of the symbol ring (rationals and powers of `N`),
//! so `2/3`, `xi1^2/N^2` and `lambda/(lambda+3)` all parse to canonical
//! symbols.  For `n = 2` the unindexed names `xi`, `eta` are accepted.

use crate::error::{Error, Result};
use crate::lie::{cartan, elementary, EnvElem};
use crate::symbol::SymbolExpr;

/// Parse a word like `E12*H1*E21`, or `1` for the empty word.
pub fn parse_word(n: usize, input: &str) -> Result<EnvElem> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    if s == "1" {
        return Ok(EnvElem::one(n));
    }
    let mut acc = EnvElem::one(n);
    for part in s.split('*') {
        let letter = parse_letter(n, part.trim())?;
        acc = acc.mul(&EnvElem::letter(letter));
    }
    Ok(acc)
}

fn parse_letter(n: usize, s: &str) -> Result<crate::lie::LieElem> {
    let compact: String = s.chars().filter(|c| *c != '_').collect();
    let bad = || Error::Parse(format!("unknown basis letter `{s}`"));
    // shorthand: E = E_{1,n}, F = E_{n,1}, H = H_1
    match compact.as_str() {
        "E" => return elementary(n, 1, n),
        "F" => return elementary(n, n, 1),
        "H" => return cartan(n, 1),
        _ => {}
    }
    let digits = |t: &str| -> Result<Vec<usize>> {
        t.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect()
    };
    if let Some(rest) = compact.strip_prefix('E') {
        let d = digits(rest)?;
        if d.len() != 2 {
            return Err(bad());
        }
        return elementary(n, d[0], d[1]);
    }
    if let Some(rest) = compact.strip_prefix('H') {
        let d = digits(rest)?;
        if d.len() != 1 {
            return Err(bad());
        }
        return cartan(n, d[0]);
    }
    Err(bad())
}

// ---------------------------------------------------------------------------
// expression grammar
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' | '\u{b7}' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("integer `{text}` out of range")))?;
                out.push(Tok::Int(v));
            }
            c if c.is_alphabetic() || c == '\u{3be}' || c == '\u{3b7}' || c == '\u{3bb}' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric()
                        || chars[i] == '\u{3be}'
                        || chars[i] == '\u{3b7}'
                        || chars[i] == '\u{3bb}')
                {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<SymbolExpr> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SymbolExpr> {
        let mut acc = self.unary()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Star => {
                    self.next();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs.try_inv()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SymbolExpr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<SymbolExpr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.next();
                true
            } else {
                false
            };
            let e = match self.next() {
                Some(Tok::Int(v)) if v >= 0 => v as u32,
                _ => return Err(Error::Parse("exponent must be an integer".into())),
            };
            let p = base.pow(e);
            return if neg { p.try_inv() } else { Ok(p) };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SymbolExpr> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(SymbolExpr::from_i64(self.n, v)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            Some(Tok::Ident(name)) => self.ident(&name),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn ident(&mut self, name: &str) -> Result<SymbolExpr> {
        let n = self.n;
        let indexed = |prefix: &str, rest: &str| -> Result<usize> {
            if rest.is_empty() {
                if n == 2 {
                    return Ok(0);
                }
                return Err(Error::Parse(format!(
                    "`{prefix}` needs an index for n = {n} (for example {prefix}1)"
                )));
            }
            let idx: usize = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in `{prefix}{rest}`")))?;
            if idx == 0 || idx > n - 1 {
                return Err(Error::Parse(format!(
                    "index {idx} out of range 1..={} in `{prefix}{rest}`",
                    n - 1
                )));
            }
            Ok(idx - 1)
        };
        if name == "N" {
            return Ok(SymbolExpr::n_poly(n));
        }
        if name == "lambda" || name == "\u{3bb}" {
            return Ok(SymbolExpr::lambda(n));
        }
        if let Some(rest) = name.strip_prefix("xi") {
            return Ok(SymbolExpr::xi(n, indexed("xi", rest)?));
        }
        if let Some(rest) = name.strip_prefix('\u{3be}') {
            return Ok(SymbolExpr::xi(n, indexed("xi", rest)?));
        }
        if let Some(rest) = name.strip_prefix("eta") {
            return Ok(SymbolExpr::eta(n, indexed("eta", rest)?));
        }
        if let Some(rest) = name.strip_prefix('\u{3b7}') {
            return Ok(SymbolExpr::eta(n, indexed("eta", rest)?));
        }
        Err(Error::Parse(format!("unknown identifier `{name}`")))
    }
}

/// Parse an expression into a canonical symbol.
pub fn parse_expr(n: usize, input: &str) -> Result<SymbolExpr> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, n };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}
