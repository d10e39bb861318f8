//! Text syntax for Hamiltonians.
//!
//! ```text
//! expr   := ["+" | "-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := number | "i" | symbol ("^" uint)? | "(" expr ")"
//! number := uint | uint "/" uint
//! symbol := "x" digits | "p" digits | "x" | "y" | "px" | "py"
//! ```
//!
//! Products are taken left to right in the order written. The aliases
//! `x, y, px, py` name modes 1 and 2 of a two-mode system and cannot be
//! mixed with indexed symbols. Without aliases the mode count is the largest
//! index used.

use crate::weyl::{BasisIndex, Kind, SymbolStyle, WeylPolynomial};
use crate::scalar::{imag_unit, real};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Number(BigRational),
    ImaginaryUnit,
    Symbol { index: BasisIndex, power: u32 },
    Group(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(Sign, Term)>,
}

/// Parsed expression together with its mode count and spelling style.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianExpr {
    pub expr: Expr,
    pub num_modes: usize,
    pub style: SymbolStyle,
}

impl HamiltonianExpr {
    pub fn to_polynomial(&self) -> WeylPolynomial {
        lower_expr(&self.expr, self.num_modes)
    }
}

fn lower_expr(e: &Expr, k: usize) -> WeylPolynomial {
    let mut acc = WeylPolynomial::zero(k);
    for (sign, term) in &e.terms {
        let t = lower_term(term, k);
        acc = match sign {
            Sign::Plus => &acc + &t,
            Sign::Minus => &acc - &t,
        };
    }
    acc
}

fn lower_term(t: &Term, k: usize) -> WeylPolynomial {
    t.factors.iter().fold(WeylPolynomial::one(k), |acc, f| {
        let v = match f {
            Factor::Number(r) => WeylPolynomial::scalar(k, real(r.clone())),
            Factor::ImaginaryUnit => WeylPolynomial::scalar(k, imag_unit()),
            Factor::Symbol { index, power } => WeylPolynomial::generator(k, *index).pow(*power),
            Factor::Group(e) => lower_expr(e, k),
        };
        &acc * &v
    })
}

impl fmt::Display for HamiltonianExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, &self.expr, self.style)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, style: SymbolStyle) -> fmt::Result {
    for (idx, (sign, term)) in e.terms.iter().enumerate() {
        match (idx, sign) {
            (0, Sign::Plus) => {}
            (0, Sign::Minus) => f.write_str("-")?,
            (_, Sign::Plus) => f.write_str(" + ")?,
            (_, Sign::Minus) => f.write_str(" - ")?,
        }
        for (j, factor) in term.factors.iter().enumerate() {
            if j > 0 {
                f.write_str("*")?;
            }
            match factor {
                Factor::Number(r) if r.denom().is_one() => write!(f, "{}", r.numer())?,
                Factor::Number(r) => write!(f, "{}/{}", r.numer(), r.denom())?,
                Factor::ImaginaryUnit => f.write_str("i")?,
                Factor::Symbol { index, power: 1 } => f.write_str(&index.name(style))?,
                Factor::Symbol { index, power } => write!(f, "{}^{}", index.name(style), power)?,
                Factor::Group(inner) => {
                    f.write_str("(")?;
                    write_expr(f, inner, style)?;
                    f.write_str(")")?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Number(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(r) => format!("number {r}"),
            Tok::Ident(s) => format!("symbol '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        let (start_line, start_col) = (line, col);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            advance(&mut i, &mut line, &mut col, c);
            out.push(Spanned { tok, line: start_line, column: start_col });
            continue;
        }
        if c.is_ascii_digit() {
            let read_digits = |i: &mut usize, line: &mut usize, col: &mut usize| {
                let mut s = String::new();
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    let ch = chars[*i];
                    s.push(ch);
                    advance(i, line, col, ch);
                }
                s
            };
            let num = read_digits(&mut i, &mut line, &mut col);
            // look past whitespace for a '/' continuing the literal
            let mut j = i;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
            if j < chars.len() && chars[j] == '/' {
                while i <= j {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
                while i < chars.len() && chars[i].is_whitespace() {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
                let den = read_digits(&mut i, &mut line, &mut col);
                if den.is_empty() {
                    return Err(ParseError {
                        line,
                        column: col,
                        message: "incomplete rational literal".into(),
                        expected: vec!["digits".into()],
                    });
                }
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError {
                        line: start_line,
                        column: start_col,
                        message: "zero denominator in rational literal".into(),
                        expected: vec![],
                    });
                }
                value = BigRational::new(num.parse::<BigInt>().expect("digits"), den);
            }
            out.push(Spanned { tok: Tok::Number(value), line: start_line, column: start_col });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                let ch = chars[i];
                s.push(ch);
                advance(&mut i, &mut line, &mut col, ch);
            }
            out.push(Spanned { tok: Tok::Ident(s), line: start_line, column: start_col });
            continue;
        }
        return Err(ParseError {
            line,
            column: col,
            message: format!("unexpected character '{c}'"),
            expected: vec![],
        });
    }
    out.push(Spanned { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    style: Option<(SymbolStyle, String)>,
    max_mode: usize,
}

const FACTOR_START: [&str; 4] = ["number", "'i'", "symbol", "'('"];

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, message: String, expected: &[&str]) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut sign = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Sign::Minus
            }
            Tok::Plus => {
                self.bump();
                Sign::Plus
            }
            _ => Sign::Plus,
        };
        loop {
            terms.push((sign, self.term()?));
            sign = match self.peek().tok {
                Tok::Plus => Sign::Plus,
                Tok::Minus => Sign::Minus,
                _ => break,
            };
            self.bump();
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek().tok == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(Term { factors })
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Number(r) => Ok(Factor::Number(r.clone())),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error(
                        &close,
                        format!("unexpected {}", close.tok.describe()),
                        &["')'", "'+'", "'-'", "'*'"],
                    ));
                }
                Ok(Factor::Group(inner))
            }
            Tok::Ident(name) if name == "i" => Ok(Factor::ImaginaryUnit),
            Tok::Ident(name) => {
                let index = self.symbol(&t, name)?;
                let power = if self.peek().tok == Tok::Caret {
                    self.bump();
                    let p = self.bump();
                    match &p.tok {
                        Tok::Number(r) if r.is_integer() => u32::try_from(r.numer())
                            .map_err(|_| self.error(&p, "exponent too large".into(), &[]))?,
                        _ => {
                            return Err(self.error(
                                &p,
                                format!("unexpected {}", p.tok.describe()),
                                &["non-negative integer exponent"],
                            ))
                        }
                    }
                } else {
                    1
                };
                Ok(Factor::Symbol { index, power })
            }
            other => Err(self.error(&t, format!("unexpected {}", other.describe()), &FACTOR_START)),
        }
    }

    fn symbol(&mut self, at: &Spanned, name: &str) -> Result<BasisIndex, ParseError> {
        let alias = match name {
            "x" => Some(BasisIndex::position(1)),
            "y" => Some(BasisIndex::position(2)),
            "px" => Some(BasisIndex::momentum(1)),
            "py" => Some(BasisIndex::momentum(2)),
            _ => None,
        };
        let (index, style) = match alias {
            Some(b) => (b, SymbolStyle::Alias),
            None => {
                let kind = match name.chars().next() {
                    Some('x') => Kind::Position,
                    Some('p') => Kind::Momentum,
                    _ => return Err(self.unknown_symbol(at, name)),
                };
                let digits = &name[1..];
                if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                    return Err(self.unknown_symbol(at, name));
                }
                let mode: usize = digits.parse().map_err(|_| self.unknown_symbol(at, name))?;
                if mode == 0 {
                    return Err(self.error(at, format!("mode index in '{name}' must start at 1"), &[]));
                }
                (BasisIndex { kind, mode }, SymbolStyle::Indexed)
            }
        };
        match &self.style {
            None => self.style = Some((style, name.to_string())),
            Some((s, first)) if *s != style => {
                return Err(self.error(
                    at,
                    format!(
                        "cannot mix alias and indexed symbols: '{first}' and '{name}' (aliases x, y, px, py are only for two-mode input)"
                    ),
                    &[],
                ))
            }
            _ => {}
        }
        self.max_mode = self.max_mode.max(index.mode);
        Ok(index)
    }

    fn unknown_symbol(&self, at: &Spanned, name: &str) -> ParseError {
        self.error(
            at,
            format!("unknown symbol '{name}'"),
            &["x1..xK", "p1..pK", "x", "y", "px", "py", "i"],
        )
    }
}

pub fn parse_hamiltonian(text: &str) -> Result<HamiltonianExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, style: None, max_mode: 0 };
    if p.peek().tok == Tok::End {
        let end = p.peek().clone();
        return Err(p.error(&end, "empty expression".into(), &FACTOR_START));
    }
    let expr = p.expr()?;
    let end = p.peek().clone();
    if end.tok != Tok::End {
        return Err(p.error(&end, format!("unexpected {}", end.tok.describe()), &["'+'", "'-'", "'*'", "end of input"]));
    }
    let (num_modes, style) = match p.style {
        Some((SymbolStyle::Alias, _)) => (2, SymbolStyle::Alias),
        Some((SymbolStyle::Indexed, _)) => (p.max_mode, SymbolStyle::Indexed),
        None => (1, SymbolStyle::Indexed),
    };
    Ok(HamiltonianExpr { expr, num_modes, style })
}

/// Parses and lowers in one step.
pub fn parse_polynomial(text: &str) -> Result<WeylPolynomial, ParseError> {
    Ok(parse_hamiltonian(text)?.to_polynomial())
}
