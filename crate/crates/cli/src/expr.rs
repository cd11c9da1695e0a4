//! Text grammars for algebra elements.
//!
//! All three share one expression syntax: sums and differences of products
//! joined by `*`, powers `a^n`, parentheses and rational literals. What the
//! atoms mean depends on the target:
//!
//! * KLR elements: `1(i,j,i)`, `x2`, `x2^3`, `s1`; the rightmost factor is
//!   at the bottom of the diagram.
//! * Hecke elements: `T[1]`, `b[2]`, and scalars in `q` and `t` (`q = t^2`).
//! * Words in `U+`: `E(i)*E(j)*E(i)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use qhecke_core::hecke::HeckeElt;
use qhecke_core::{Element, Graph, KlrAlgebra, LaurentPoly, LedgerOptions, Rational, Seq, Weight};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn perr<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { offset, message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut p = 0;
    while p < bytes.len() {
        let c = bytes[p] as char;
        if c.is_ascii_whitespace() {
            p += 1;
        } else if c.is_ascii_digit() {
            let start = p;
            while p < bytes.len() && bytes[p].is_ascii_digit() {
                p += 1;
            }
            let n: BigInt = text[start..p].parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), start, end: p });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = p;
            while p < bytes.len() && (bytes[p].is_ascii_alphanumeric() || bytes[p] == b'_') {
                p += 1;
            }
            out.push(Token { tok: Tok::Ident(text[start..p].to_owned()), start, end: p });
        } else if "+-*/^()[],".contains(c) {
            out.push(Token { tok: Tok::Sym(c), start: p, end: p + 1 });
            p += 1;
        } else {
            let ch = text[p..].chars().next().expect("non-empty");
            return perr(p, format!("unexpected character `{ch}`"));
        }
    }
    Ok(out)
}

/// Parsed but not yet evaluated expression.
#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(Rational, usize),
    /// A bare identifier: `x1`, `s2`, `q`, `t`.
    Ident(String, usize),
    /// `name(a, b, ...)`: idempotents `1(...)` and letters `E(...)`.
    Call(String, Vec<(String, usize)>, usize),
    /// `name[k]`: `T[1]`, `b[2]`.
    Index(String, usize, usize),
    Pow(Box<Expr>, i64, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0, len: text.len() })
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.len, |t| t.start)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            perr(self.offset(), format!("expected `{c}`"))
        }
    }

    fn expect_int(&mut self) -> Result<(BigInt, usize), ParseError> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Int(n), start, .. }) => {
                self.pos += 1;
                Ok((n, start))
            }
            _ => perr(self.offset(), "expected an integer"),
        }
    }

    fn parse_all(mut self) -> Result<Expr, ParseError> {
        if self.toks.is_empty() {
            return perr(0, "empty expression");
        }
        let e = self.expr()?;
        if self.pos < self.toks.len() {
            return perr(self.offset(), "unexpected trailing input");
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.eat_sym('-') { Expr::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat_sym('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.power()?;
        while self.eat_sym('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            let at = self.offset();
            let neg = self.eat_sym('-');
            let (n, _) = self.expect_int()?;
            let n = n.to_i64().filter(|n| *n <= 1 << 20).ok_or(ParseError { offset: at, message: "exponent too large".into() })?;
            return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }, at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return perr(self.len, "unexpected end of input");
        };
        self.pos += 1;
        match tok.tok {
            Tok::Int(n) => {
                let adjacent_paren = matches!(self.peek(), Some(Token { tok: Tok::Sym('('), start, .. }) if *start == tok.end);
                if n.is_one() && adjacent_paren {
                    self.pos += 1;
                    let args = self.args()?;
                    return Ok(Expr::Call("1".into(), args, tok.start));
                }
                if self.eat_sym('/') {
                    let (d, at) = self.expect_int()?;
                    if d.is_zero() {
                        return perr(at, "division by zero");
                    }
                    return Ok(Expr::Num(Rational::new(n, d), tok.start));
                }
                Ok(Expr::Num(Rational::from_integer(n), tok.start))
            }
            Tok::Ident(name) => {
                if self.eat_sym('(') {
                    let args = self.args()?;
                    Ok(Expr::Call(name, args, tok.start))
                } else if self.eat_sym('[') {
                    let (k, at) = self.expect_int()?;
                    self.expect_sym(']')?;
                    let k = k.to_usize().ok_or(ParseError { offset: at, message: "index too large".into() })?;
                    Ok(Expr::Index(name, k, tok.start))
                } else {
                    Ok(Expr::Ident(name, tok.start))
                }
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Sym(c) => perr(tok.start, format!("unexpected `{c}`")),
        }
    }

    /// `name (, name)* )` after the opening parenthesis; names are
    /// identifiers or digit strings.
    fn args(&mut self) -> Result<Vec<(String, usize)>, ParseError> {
        let mut out = Vec::new();
        if self.eat_sym(')') {
            return Ok(out);
        }
        loop {
            match self.peek().cloned() {
                Some(Token { tok: Tok::Ident(s), start, .. }) => out.push((s, start)),
                Some(Token { tok: Tok::Int(n), start, .. }) => out.push((n.to_string(), start)),
                _ => return perr(self.offset(), "expected a vertex name"),
            }
            self.pos += 1;
            if self.eat_sym(')') {
                return Ok(out);
            }
            if !self.eat_sym(',') {
                return perr(self.offset(), "expected `,` or `)`");
            }
        }
    }
}

/// `x12` -> `Some(12)` for prefix `x`.
fn indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn seq_of(graph: &Graph, args: &[(String, usize)]) -> Result<Seq, ParseError> {
    args.iter()
        .map(|(name, at)| graph.vertex(name).ok_or(ParseError { offset: *at, message: format!("unknown vertex `{name}`") }))
        .collect::<Result<Vec<_>, _>>()
        .map(Seq)
}

fn first_idempotent(e: &Expr) -> Option<&[(String, usize)]> {
    match e {
        Expr::Call(name, args, _) if name == "1" => Some(args),
        Expr::Pow(a, _, _) | Expr::Neg(a) => first_idempotent(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => first_idempotent(a).or_else(|| first_idempotent(b)),
        _ => None,
    }
}

/// Parses a KLR element. The ambient weight is `nu` if given, otherwise the
/// weight of the first idempotent `1(...)` in the text.
pub fn parse_klr(text: &str, graph: &Graph, nu: Option<&Weight>, ledger: LedgerOptions) -> Result<(KlrAlgebra, Element), ParseError> {
    let ast = Parser::new(text)?.parse_all()?;
    let weight = match nu {
        Some(nu) => nu.clone(),
        None => {
            let args = first_idempotent(&ast).ok_or(ParseError {
                offset: 0,
                message: "cannot infer the weight: give it explicitly or include an idempotent 1(...)".into(),
            })?;
            seq_of(graph, args)?.weight(graph.num_vertices())
        }
    };
    let alg = KlrAlgebra::with_ledger(graph.clone(), weight, ledger).map_err(|e| ParseError { offset: 0, message: e.to_string() })?;
    let e = eval_klr(&alg, &ast)?;
    Ok((alg, e))
}

fn eval_klr(alg: &KlrAlgebra, e: &Expr) -> Result<Element, ParseError> {
    let klr_err = |at: usize| move |err: qhecke_core::KlrError| ParseError { offset: at, message: err.to_string() };
    Ok(match e {
        Expr::Num(c, _) => alg.unit().scale(c),
        Expr::Ident(name, at) => {
            if let Some(k) = indexed(name, 'x').filter(|k| *k >= 1) {
                alg.dot(k - 1).map_err(klr_err(*at))?
            } else if let Some(k) = indexed(name, 's').filter(|k| *k >= 1) {
                alg.cross(k - 1).map_err(klr_err(*at))?
            } else {
                return perr(*at, format!("unknown generator `{name}`; expected x<k> or s<k>"));
            }
        }
        Expr::Call(name, args, at) if name == "1" => {
            let s = seq_of(alg.graph(), args)?;
            alg.idempotent(&s).map_err(klr_err(*at))?
        }
        Expr::Call(name, _, at) | Expr::Index(name, _, at) => return perr(*at, format!("`{name}` is not a KLR generator")),
        Expr::Pow(a, n, at) => {
            if *n < 0 {
                return perr(*at, "negative powers are not allowed here");
            }
            let base = eval_klr(alg, a)?;
            let mut acc = alg.unit();
            for _ in 0..*n {
                acc = alg.mul(&acc, &base).map_err(klr_err(*at))?;
            }
            acc
        }
        Expr::Add(a, b) => &eval_klr(alg, a)? + &eval_klr(alg, b)?,
        Expr::Sub(a, b) => &eval_klr(alg, a)? - &eval_klr(alg, b)?,
        Expr::Neg(a) => -&eval_klr(alg, a)?,
        Expr::Mul(a, b) => alg.mul(&eval_klr(alg, a)?, &eval_klr(alg, b)?).map_err(klr_err(0))?,
    })
}

/// Writes an element as a sum of normal-form words
/// `c * x1^a * s1 * s2 * 1(i,j,i)`, which [`parse_klr`] reads back.
pub fn format_klr(graph: &Graph, e: &Element) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (d, c)) in e.terms().enumerate() {
        let (neg, abs) = (c.is_negative(), c.abs());
        out.push_str(match (n, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() {
            factors.push(abs.to_string());
        }
        for (k, &a) in d.dots.iter().enumerate() {
            match a {
                0 => {}
                1 => factors.push(format!("x{}", k + 1)),
                _ => factors.push(format!("x{}^{a}", k + 1)),
            }
        }
        factors.extend(d.perm.canonical_word().into_iter().map(|k| format!("s{}", k + 1)));
        let names: Vec<&str> = d.bottom.iter().map(|&v| graph.name(v)).collect();
        factors.push(format!("1({})", names.join(",")));
        out.push_str(&factors.join(" * "));
    }
    out
}

/// Parses a Hecke algebra element of rank `n`.
pub fn parse_hecke(text: &str, n: usize) -> Result<HeckeElt, ParseError> {
    let ast = Parser::new(text)?.parse_all()?;
    eval_hecke(&ast, n)
}

fn scalar(e: &Expr) -> Option<LaurentPoly> {
    match e {
        Expr::Ident(name, _) if name == "q" => Some(LaurentPoly::q_pow(2)),
        Expr::Ident(name, _) if name == "t" => Some(LaurentPoly::q_pow(1)),
        _ => None,
    }
}

fn eval_hecke(e: &Expr, n: usize) -> Result<HeckeElt, ParseError> {
    let hecke_err = |at: usize| move |err: qhecke_core::error::HeckeError| ParseError { offset: at, message: err.to_string() };
    Ok(match e {
        Expr::Num(c, at) => {
            if !c.is_integer() {
                return perr(*at, "Hecke coefficients must be integral Laurent polynomials");
            }
            HeckeElt::constant(n, LaurentPoly::constant(c.to_integer()))
        }
        Expr::Ident(name, at) => match scalar(e) {
            Some(c) => HeckeElt::constant(n, c),
            None => return perr(*at, format!("unknown symbol `{name}`; expected q, t, T[k] or b[k]")),
        },
        Expr::Index(name, k, at) if name == "T" => HeckeElt::t_gen(*k, n).map_err(hecke_err(*at))?,
        Expr::Index(name, k, at) if name == "b" => HeckeElt::b_gen(*k, n).map_err(hecke_err(*at))?,
        Expr::Index(name, _, at) | Expr::Call(name, _, at) => return perr(*at, format!("`{name}` is not a Hecke generator")),
        Expr::Pow(a, k, at) => {
            if *k < 0 {
                // Only the variables themselves are invertible here.
                let c = scalar(a).ok_or(ParseError { offset: *at, message: "negative powers only apply to q and t".into() })?;
                let exp = c.min_exp().expect("monomial");
                return Ok(HeckeElt::constant(n, LaurentPoly::q_pow(exp * k)));
            }
            let base = eval_hecke(a, n)?;
            let mut acc = HeckeElt::identity(n);
            for _ in 0..*k {
                acc = acc.mul(&base).map_err(hecke_err(*at))?;
            }
            acc
        }
        Expr::Add(a, b) => &eval_hecke(a, n)? + &eval_hecke(b, n)?,
        Expr::Sub(a, b) => &eval_hecke(a, n)? - &eval_hecke(b, n)?,
        Expr::Neg(a) => -&eval_hecke(a, n)?,
        Expr::Mul(a, b) => eval_hecke(a, n)?.mul(&eval_hecke(b, n)?).map_err(hecke_err(0))?,
    })
}

/// Parses a word `E(i)*E(j)*E(i)`; `E(i)^2` repeats a letter and `1` is the
/// empty word.
pub fn parse_word(text: &str, graph: &Graph) -> Result<Seq, ParseError> {
    let ast = Parser::new(text)?.parse_all()?;
    eval_word(&ast, graph)
}

fn eval_word(e: &Expr, graph: &Graph) -> Result<Seq, ParseError> {
    match e {
        Expr::Num(c, _) if c.is_one() => Ok(Seq(Vec::new())),
        Expr::Call(name, args, at) if name == "E" => {
            if args.len() != 1 {
                return perr(*at, "E(...) takes exactly one vertex");
            }
            seq_of(graph, args)
        }
        Expr::Mul(a, b) => Ok(eval_word(a, graph)?.concat(&eval_word(b, graph)?)),
        Expr::Pow(a, k, at) => {
            if *k < 0 {
                return perr(*at, "negative powers are not allowed here");
            }
            let base = eval_word(a, graph)?;
            Ok(Seq((0..*k).flat_map(|_| base.iter().copied()).collect()))
        }
        Expr::Num(_, at) | Expr::Ident(_, at) | Expr::Index(_, _, at) | Expr::Call(_, _, at) => {
            perr(*at, "expected a product of letters E(i)")
        }
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..) => perr(0, "a word is a product of letters, not a sum"),
    }
}

/// `E(i)*E(j)*E(i)`; the empty word is `1`.
pub fn format_word(graph: &Graph, w: &Seq) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&v| format!("E({})", graph.name(v))).collect::<Vec<_>>().join("*")
}
