//! A small expression language for bicomplex sequences `a_n`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' '-'? INTEGER)?
//! atom   := NUMBER | 'n' | 'i1' | 'i2' | 'j' | 'e1' | 'e2' | 'pi'
//!         | ('exp' | 'log' | 'sqrt') '(' expr ')'
//!         | '(' expr ')'
//!         | '[' expr '|' expr ']'
//! ```
//!
//! `[a | b]` is `a e1 + b e2` with `a`, `b` read as complex numbers (their
//! `z1` parts). Numbers take an optional exponent, read greedily: `2e1` is
//! twenty, write `2*e1` for the idempotent. `-n^2` is `-(n^2)`.

use std::fmt;
use std::str::FromStr;

use crate::bicomplex::{Bicomplex, IdempotentPair};
use crate::error::Error;
use crate::transcendental::{self, BranchIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    I1,
    I2,
    J,
    E1,
    E2,
    Pi,
}

impl Constant {
    pub fn value(self) -> Bicomplex {
        match self {
            Constant::I1 => Bicomplex::I1,
            Constant::I2 => Bicomplex::I2,
            Constant::J => Bicomplex::J,
            Constant::E1 => Bicomplex::E1,
            Constant::E2 => Bicomplex::E2,
            Constant::Pi => Bicomplex::from_real(std::f64::consts::PI),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Constant::I1 => "i1",
            Constant::I2 => "i2",
            Constant::J => "j",
            Constant::E1 => "e1",
            Constant::E2 => "e2",
            Constant::Pi => "pi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Parsed term expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// The sequence index `n`.
    Index,
    Const(Constant),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
    /// `[a | b]`
    Idem(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Int(u32),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::Int(k) => format!("number {k}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn digits(&self, from: usize) -> usize {
        self.src[from..].bytes().take_while(u8::is_ascii_digit).count()
    }

    /// Next token and its offset. Integer literals (for exponents) are only
    /// produced when `want_int` is set.
    fn next(&mut self, want_int: bool) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let Some(&b) = bytes.get(start) else {
            return Ok((Tok::End, start));
        };
        if want_int && b.is_ascii_digit() {
            let len = self.digits(start);
            self.pos += len;
            let text = &self.src[start..self.pos];
            return text.parse().map(|k| (Tok::Int(k), start)).map_err(|_| ParseError {
                offset: start,
                expected: vec!["an exponent that fits in 32 bits".into()],
                found: text.into(),
            });
        }
        if b.is_ascii_digit() || b == b'.' {
            let mut end = start + self.digits(start);
            if bytes.get(end) == Some(&b'.') {
                end += 1;
                end += self.digits(end);
            }
            if matches!(bytes.get(end), Some(b'e' | b'E')) {
                let mut k = end + 1;
                if matches!(bytes.get(k), Some(b'+' | b'-')) {
                    k += 1;
                }
                let exp_digits = self.digits(k);
                if exp_digits > 0 {
                    end = k + exp_digits;
                }
            }
            let text = &self.src[start..end];
            self.pos = end;
            return text.parse().map(|x| (Tok::Num(x), start)).map_err(|_| ParseError {
                offset: start,
                expected: vec!["a number".into()],
                found: format!("'{text}'"),
            });
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            let len = self.src[start..]
                .bytes()
                .take_while(|c| c.is_ascii_alphanumeric() || *c == b'_')
                .count();
            self.pos += len;
            return Ok((Tok::Ident(self.src[start..self.pos].into()), start));
        }
        let c = self.src[start..].chars().next().unwrap_or('\0');
        self.pos += c.len_utf8();
        Ok((Tok::Sym(c), start))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    offset: usize,
}

const ATOM_START: &[&str] = &["a number", "'n'", "a constant", "a function", "'('", "'['", "'-'"];

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lex = Lexer { src, pos: 0 };
        let (tok, offset) = lex.next(false)?;
        Ok(Parser { lex, tok, offset })
    }

    fn advance(&mut self, want_int: bool) -> Result<(), ParseError> {
        let (tok, offset) = self.lex.next(want_int)?;
        self.tok = tok;
        self.offset = offset;
        Ok(())
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.tok.describe(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.tok == Tok::Sym(c) {
            self.advance(false)
        } else {
            self.fail(&[&format!("'{c}'")])
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance(false)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.advance(false)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Sym('-') {
            self.advance(false)?;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.advance(true)?;
        let negative = self.tok == Tok::Sym('-');
        if negative {
            self.advance(true)?;
        }
        let Tok::Int(k) = self.tok else {
            return self.fail(&["an integer exponent"]);
        };
        let k = i64::from(k) * if negative { -1 } else { 1 };
        let Ok(k) = i32::try_from(k) else {
            return self.fail(&["an exponent that fits in 32 bits"]);
        };
        self.advance(false)?;
        if self.tok == Tok::Sym('^') {
            return self.fail(&["an operator other than '^' (use parentheses)"]);
        }
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.tok.clone();
        match tok {
            Tok::Num(x) => {
                self.advance(false)?;
                Ok(Expr::Num(x))
            }
            Tok::Sym('(') => {
                self.advance(false)?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                self.advance(false)?;
                let a = self.expr()?;
                self.expect('|')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Idem(Box::new(a), Box::new(b)))
            }
            Tok::Ident(name) => {
                let simple = match name.as_str() {
                    "n" => Some(Expr::Index),
                    "i1" => Some(Expr::Const(Constant::I1)),
                    "i2" => Some(Expr::Const(Constant::I2)),
                    "j" => Some(Expr::Const(Constant::J)),
                    "e1" => Some(Expr::Const(Constant::E1)),
                    "e2" => Some(Expr::Const(Constant::E2)),
                    "pi" => Some(Expr::Const(Constant::Pi)),
                    _ => None,
                };
                if let Some(e) = simple {
                    self.advance(false)?;
                    return Ok(e);
                }
                let func = match name.as_str() {
                    "exp" => Func::Exp,
                    "log" => Func::Log,
                    "sqrt" => Func::Sqrt,
                    _ => return self.fail(ATOM_START),
                };
                self.advance(false)?;
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            _ => self.fail(ATOM_START),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ParseError> {
        let mut p = Parser::new(src)?;
        let e = p.expr()?;
        if p.tok != Tok::End {
            return p.fail(&["an operator", "end of input"]);
        }
        Ok(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Num(x) if x.is_sign_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Value at index `n`, with `log` evaluated on `branch`.
    pub fn eval(&self, n: u64, branch: BranchIndex) -> Result<Bicomplex, Error> {
        let v = match self {
            Expr::Num(x) => Bicomplex::from_real(*x),
            Expr::Index => Bicomplex::from_real(n as f64),
            Expr::Const(c) => c.value(),
            Expr::Neg(e) => -e.eval(n, branch)?,
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.eval(n, branch)?, b.eval(n, branch)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a.checked_div(b)?,
                }
            }
            Expr::Pow(e, k) => e.eval(n, branch)?.powi(*k)?,
            Expr::Call(f, e) => {
                let x = e.eval(n, branch)?;
                match f {
                    Func::Exp => transcendental::exp(x)?,
                    Func::Log => transcendental::log_branch(x, branch)?,
                    Func::Sqrt => transcendental::sqrt(x)?,
                }
            }
            Expr::Idem(a, b) => IdempotentPair::new(a.eval(n, branch)?.z1, b.eval(n, branch)?.z1).to_bicomplex(),
        };
        v.finite_or("term evaluation")
    }
}

impl FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expr::parse(s)
    }
}

fn write_num(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        write!(f, "{x}")
    } else {
        write!(f, "{x:e}")
    }
}

impl fmt::Display for Expr {
    /// Canonical text with the fewest parentheses that parse back to the
    /// same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool| {
            if parens {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(x) => write_num(f, *x),
            Expr::Index => f.write_str("n"),
            Expr::Const(c) => f.write_str(c.name()),
            Expr::Neg(e) => {
                f.write_str("-")?;
                wrap(f, e, e.precedence() < 3)
            }
            Expr::Binary(op, a, b) => {
                let p = op.precedence();
                wrap(f, a, a.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                wrap(f, b, b.precedence() <= p)
            }
            Expr::Pow(e, k) => {
                wrap(f, e, e.precedence() <= 4)?;
                write!(f, "^{k}")
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Idem(a, b) => write!(f, "[{a} | {b}]"),
        }
    }
}

/// Failure while evaluating term `index` of a sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalError {
    pub index: u64,
    pub source: Error,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "term {}: {}", self.index, self.source)
    }
}

impl std::error::Error for EvalError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

/// Lazy sequence `a_1, a_2, ...` of an expression. Ends at the first
/// evaluation failure, which is kept in [`Terms::error`].
#[derive(Clone, Debug)]
pub struct Terms<'a> {
    expr: &'a Expr,
    branch: BranchIndex,
    n: u64,
    error: Option<EvalError>,
}

impl<'a> Terms<'a> {
    pub fn new(expr: &'a Expr, branch: BranchIndex) -> Self {
        Terms {
            expr,
            branch,
            n: 0,
            error: None,
        }
    }

    pub fn error(&self) -> Option<&EvalError> {
        self.error.as_ref()
    }

    pub fn into_error(self) -> Option<EvalError> {
        self.error
    }
}

impl Iterator for Terms<'_> {
    type Item = Bicomplex;

    fn next(&mut self) -> Option<Bicomplex> {
        if self.error.is_some() {
            return None;
        }
        self.n += 1;
        match self.expr.eval(self.n, self.branch) {
            Ok(v) => Some(v),
            Err(source) => {
                self.error = Some(EvalError { index: self.n, source });
                None
            }
        }
    }
}
