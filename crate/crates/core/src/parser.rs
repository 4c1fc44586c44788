//! Loop words: parsing, evaluation to canonical coordinates, and printing.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    := chain (("*" | ".") chain)*     left-associative
//! chain   := power power*                   juxtaposition, left-associative
//! power   := primary ("^" int)*
//! primary := "x" | "y" | "u1" | "u2" | "v1" | "v2" | "v3" | "v4" | "1"
//!          | "elem" "[" int ("," int){7} "]"
//!          | "assoc(" expr "," expr "," expr ")"
//!          | "innL(" expr "," expr "," expr ")"
//!          | "inv(" expr ")" | "pow(" expr "," int ")"
//!          | "(" expr ")"
//! int     := "-"? digits
//! ```
//!
//! The loop is not associative, so `x*y*x` means `(x*y)*x`. Juxtaposition
//! binds tighter than `*` and `.`, which is what makes canonical forms such
//! as `(x^2 y . u1^-1) v1` parse back to the element they describe.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::Int;
use crate::calculus::{associator, inner_l};
use crate::loop_core::{identity8, inverse8, mul8, pow8, Elem8};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    X,
    Y,
    U1,
    U2,
    V1,
    V2,
    V3,
    V4,
    One,
}

impl Generator {
    const NAMED: [(&'static str, Generator); 8] = [
        ("x", Generator::X),
        ("y", Generator::Y),
        ("u1", Generator::U1),
        ("u2", Generator::U2),
        ("v1", Generator::V1),
        ("v2", Generator::V2),
        ("v3", Generator::V3),
        ("v4", Generator::V4),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::One => "1",
            g => Self::NAMED.iter().find(|(_, h)| *h == g).map(|(n, _)| *n).unwrap(),
        }
    }

    /// `x, y, u1, ..., v4` map to the basis vectors `e1, ..., e8`.
    pub fn value(self) -> Elem8 {
        match self {
            Generator::One => identity8(),
            g => {
                let i = Self::NAMED.iter().position(|(_, h)| *h == g).unwrap();
                Elem8::basis(i + 1)
            }
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::NAMED.iter().find(|(n, _)| *n == name).map(|(_, g)| *g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Generator(Generator),
    Literal(Box<Elem8>),
    Product(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, Int),
    Inverse(Box<Expr>),
    Assoc(Box<Expr>, Box<Expr>, Box<Expr>),
    InnerL(Box<Expr>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn product(a: Expr, b: Expr) -> Expr {
        Expr::Product(Box::new(a), Box::new(b))
    }
}

/// Prints the expression fully parenthesised, in a form [`parse`] accepts.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Generator(g) => f.write_str(g.name()),
            Expr::Literal(e) => {
                f.write_str("elem[")?;
                for (i, c) in e.coords.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
            Expr::Product(a, b) => write!(f, "({a} * {b})"),
            Expr::Power(a, n) => write!(f, "pow({a}, {n})"),
            Expr::Inverse(a) => write!(f, "inv({a})"),
            Expr::Assoc(a, b, c) => write!(f, "assoc({a}, {b}, {c})"),
            Expr::InnerL(a, b, c) => write!(f, "innL({a}, {b}, {c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("malformed literal at {pos}: {message}")]
    MalformedLiteral { pos: usize, message: String },
}

/// A non-fatal remark about the parsed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "warning at {}: {}", self.pos, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Star,
    Dot,
    Caret,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::End => "end of input".to_string(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Star => "*",
            Tok::Dot => ".",
            Tok::Caret => "^",
            Tok::Minus => "-",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            _ => "",
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'*' => Some(Tok::Star),
            b'.' => Some(Tok::Dot),
            b'^' => Some(Tok::Caret),
            b'-' => Some(Tok::Minus),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(text[start..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else {
            let ch = text[start..].chars().next().unwrap();
            return Err(ParseError::Syntax { pos: start, message: format!("unexpected character {ch:?}") });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    warnings: Vec<Warning>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected `{}`, found {}", t.symbol(), self.peek().describe()))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos();
        let mut acc = self.chain()?;
        let mut factors = 1;
        let mut starred = false;
        while matches!(self.peek(), Tok::Star | Tok::Dot) {
            starred |= *self.peek() == Tok::Star;
            self.bump();
            let rhs = self.chain()?;
            acc = Expr::product(acc, rhs);
            factors += 1;
        }
        if starred && factors >= 3 {
            self.warnings.push(Warning {
                pos: start,
                message: format!(
                    "unparenthesized chain of {factors} factors is read left-associatively, as ((a*b)*c)*..."
                ),
            });
        }
        Ok(acc)
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Num(_) | Tok::LParen)
    }

    fn chain(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.power()?;
        while self.starts_primary() {
            let rhs = self.power()?;
            acc = Expr::product(acc, rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let n = self.signed_int("exponent")?;
            base = Expr::Power(Box::new(base), n);
        }
        Ok(base)
    }

    fn signed_int(&mut self, what: &str) -> Result<Int, ParseError> {
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                let v: Int = s.parse().expect("lexer only produces digits");
                Ok(if negative { -v } else { v })
            }
            t => self.syntax(format!("expected integer {what}, found {}", t.describe())),
        }
    }

    fn args(&mut self, n: usize) -> Result<Vec<Expr>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            out.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn literal(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let malformed = |message: String| ParseError::MalformedLiteral { pos, message };
        if *self.peek() != Tok::LBracket {
            return Err(malformed(format!("expected `[` after `elem`, found {}", self.peek().describe())));
        }
        self.bump();
        let mut coords = Vec::new();
        loop {
            match self.signed_int("coordinate") {
                Ok(v) => coords.push(v),
                Err(e) => return Err(malformed(e.to_string())),
            }
            match self.bump() {
                Tok::Comma => continue,
                Tok::RBracket => break,
                t => return Err(malformed(format!("expected `,` or `]`, found {}", t.describe()))),
            }
        }
        let n = coords.len();
        let coords: [Int; 8] =
            coords.try_into().map_err(|_| malformed(format!("expected 8 coordinates, found {n}")))?;
        Ok(Expr::Literal(Box::new(Elem8::new(coords))))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                if s == "1" {
                    self.bump();
                    Ok(Expr::Generator(Generator::One))
                } else {
                    self.syntax(format!("only `1` may stand as an element, found `{s}`"))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(g) = Generator::from_name(&name) {
                    return Ok(Expr::Generator(g));
                }
                let boxed = |v: &mut Vec<Expr>| Box::new(v.remove(0));
                match name.as_str() {
                    "elem" => self.literal(),
                    "assoc" => {
                        let mut a = self.args(3)?;
                        Ok(Expr::Assoc(boxed(&mut a), boxed(&mut a), boxed(&mut a)))
                    }
                    "innL" => {
                        let mut a = self.args(3)?;
                        Ok(Expr::InnerL(boxed(&mut a), boxed(&mut a), boxed(&mut a)))
                    }
                    "inv" => {
                        let mut a = self.args(1)?;
                        Ok(Expr::Inverse(boxed(&mut a)))
                    }
                    "pow" => {
                        self.expect(Tok::LParen)?;
                        let base = self.expr()?;
                        self.expect(Tok::Comma)?;
                        let n = self.signed_int("exponent")?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::Power(Box::new(base), n))
                    }
                    _ => Err(ParseError::UnknownIdentifier { pos, name }),
                }
            }
            t => self.syntax(format!("expected an element, found {}", t.describe())),
        }
    }
}

/// Parses a loop word, also returning warnings about ambiguous-looking input.
pub fn parse_with_warnings(text: &str) -> Result<(Expr, Vec<Warning>), ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, warnings: Vec::new() };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax(format!("unexpected {}", p.peek().describe()));
    }
    Ok((e, p.warnings))
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with_warnings(text).map(|(e, _)| e)
}

/// Evaluates a word to its canonical coordinates.
pub fn eval(e: &Expr) -> Elem8 {
    match e {
        Expr::Generator(g) => g.value(),
        Expr::Literal(v) => v.as_ref().clone(),
        Expr::Product(a, b) => mul8(&eval(a), &eval(b)),
        Expr::Power(a, n) => pow8(&eval(a), n),
        Expr::Inverse(a) => inverse8(&eval(a)),
        Expr::Assoc(a, b, c) => associator(&eval(a), &eval(b), &eval(c)),
        Expr::InnerL(a, b, c) => inner_l(&eval(a), &eval(b), &eval(c)),
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str) -> Result<Elem8, ParseError> {
    parse(text).map(|e| eval(&e))
}

fn factor(name: &str, exp: &Int) -> Option<String> {
    if exp.is_zero() {
        None
    } else if exp.is_one() {
        Some(name.to_string())
    } else {
        Some(format!("{name}^{exp}"))
    }
}

/// The canonical form `(x^a1 y^a2 . u1^a3 u2^a4) v1^a5 v2^a6 v3^a7 v4^a8`,
/// omitting trivial factors. The parentheses are dropped when they would
/// enclose a single factor, and the identity prints as `1`.
pub fn format_canonical(a: &Elem8) -> String {
    let names = ["x", "y", "u1", "u2", "v1", "v2", "v3", "v4"];
    let f: Vec<Option<String>> = names.iter().zip(&a.coords).map(|(n, e)| factor(n, e)).collect();
    let join = |r: std::ops::Range<usize>| f[r].iter().flatten().cloned().collect::<Vec<_>>().join(" ");

    let (gens, us, vs) = (join(0..2), join(2..4), join(4..8));
    let group_len = f[..4].iter().flatten().count();
    let group = match (gens.is_empty(), us.is_empty()) {
        (true, true) => String::new(),
        (false, false) => format!("({gens} . {us})"),
        (false, true) => gens,
        (true, false) => us,
    };
    let group = if group_len >= 2 && !group.starts_with('(') { format!("({group})") } else { group };

    match (group.is_empty(), vs.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => group,
        (true, false) => vs,
        (false, false) => format!("{group} {vs}"),
    }
}
