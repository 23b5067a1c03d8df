//! Expression grammar for algebra elements.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? int)?
//! atom  := int | 'th' | 't' | e<i> | f<i> | w<i> | wp<i> | E(i,j) | F(i,j) | '(' expr ')'
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use qdeform_core::ncalg::GenKind;
use qdeform_core::qgroup::{AlgebraElement, PBWMonomial, QGroup, QGroupParams};
use qdeform_core::scalars::{CycScalar, LaurentScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    fn err(self, msg: impl Into<String>) -> ExprError {
        ExprError { line: self.line, col: self.col, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                _ => return Err(pos.err(format!("unexpected character '{c}'"))),
            }
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// `θ^k`, `k` already reduced mod `ℓ`.
    Theta(i64),
    T,
    Gen(GenKind, usize),
    Root(GenKind, usize, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64, Pos),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    n: usize,
    ell: u32,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        let (t, p) = self.bump();
        if t == want {
            Ok(())
        } else {
            Err(p.err(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let (_, p) = self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), p);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, p) = self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (t, q) = self.bump();
        let Tok::Int(k) = t else {
            return Err(q.err("expected an integer exponent"));
        };
        let k: i64 = k.try_into().map_err(|_| q.err("exponent too large"))?;
        let k = if neg { -k } else { k };
        Ok(match base {
            Expr::Theta(j) => Expr::Theta((j * k).rem_euclid(self.ell as i64)),
            other => Expr::Pow(Box::new(other), k, p),
        })
    }

    fn index(&mut self) -> Result<(usize, Pos), ExprError> {
        let (t, p) = self.bump();
        match t {
            Tok::Int(k) => Ok((k.try_into().map_err(|_| p.err("index too large"))?, p)),
            _ => Err(p.err("expected an index")),
        }
    }

    fn check_index(&self, i: usize, p: Pos) -> Result<(), ExprError> {
        if i == 0 || i >= self.n {
            Err(p.err(format!("index {i} out of range: n = {} allows 1..={}", self.n, self.n - 1)))
        } else {
            Ok(())
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let (t, p) = self.bump();
        match t {
            Tok::Int(k) => Ok(Expr::Int(k)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(&name, p),
            Tok::End => Err(p.err("unexpected end of input")),
            _ => Err(p.err("expected a term")),
        }
    }

    fn ident(&mut self, name: &str, p: Pos) -> Result<Expr, ExprError> {
        match name {
            "th" => return Ok(Expr::Theta(1 % self.ell as i64)),
            "t" => return Ok(Expr::T),
            "E" | "F" => {
                self.expect(Tok::LParen, "'(' after root vector macro")?;
                let (i, pi) = self.index()?;
                self.expect(Tok::Comma, "','")?;
                let (j, pj) = self.index()?;
                self.expect(Tok::RParen, "')'")?;
                self.check_index(i, pi)?;
                self.check_index(j, pj)?;
                if j > i {
                    return Err(pj.err(format!("{name}({i},{j}) needs i >= j")));
                }
                let kind = if name == "E" { GenKind::E } else { GenKind::F };
                return Ok(Expr::Root(kind, i, j));
            }
            _ => {}
        }
        let (kind, digits) = if let Some(d) = name.strip_prefix("wp") {
            (GenKind::Wp, d)
        } else if let Some(d) = name.strip_prefix('w') {
            (GenKind::W, d)
        } else if let Some(d) = name.strip_prefix('e') {
            (GenKind::E, d)
        } else if let Some(d) = name.strip_prefix('f') {
            (GenKind::F, d)
        } else {
            return Err(p.err(format!("unknown symbol '{name}'")));
        };
        let i: usize = digits.parse().map_err(|_| p.err(format!("unknown symbol '{name}'")))?;
        self.check_index(i, p)?;
        Ok(Expr::Gen(kind, i))
    }
}

/// Parses `text` against `sl_n` at a primitive `ℓ`-th root of unity.
pub fn parse_expr(text: &str, n: usize, ell: u32) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(text)?, at: 0, n, ell };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.pos().err("unexpected trailing input"));
    }
    Ok(e)
}

/// Element of `U` with Laurent coefficients, in PBW normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    pub ell: u32,
    pub wo: i64,
    pub terms: BTreeMap<PBWMonomial, LaurentScalar>,
}

impl Elem {
    fn scalar(qg: &QGroup, c: LaurentScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(qg.unit_mono(), c.clone());
        }
        Elem { ell: qg.ell(), wo: c.working_order(), terms }
    }

    fn from_algebra(a: &AlgebraElement, wo: i64) -> Self {
        let terms = a.terms.iter().map(|(m, c)| (m.clone(), LaurentScalar::from_cyc(c.clone(), wo))).collect();
        Elem { ell: a.ell, wo, terms }
    }

    fn add_term(&mut self, m: PBWMonomial, c: &LaurentScalar) {
        let e = self.terms.entry(m.clone()).or_insert_with(|| LaurentScalar::zero(self.ell, self.wo));
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add(&self, o: &Elem) -> Elem {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    fn neg(&self) -> Elem {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    fn mul(&self, o: &Elem, qg: &QGroup) -> Result<Elem, String> {
        let mut out = Elem { ell: self.ell, wo: self.wo, terms: BTreeMap::new() };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let a = AlgebraElement::monomial(m1.clone(), qg.one_scalar());
                let b = AlgebraElement::monomial(m2.clone(), qg.one_scalar());
                let p = qg.mul(&a, &b).map_err(|e| e.to_string())?;
                let c = c1 * c2;
                for (m, x) in &p.terms {
                    out.add_term(m.clone(), &c.scale(x));
                }
            }
        }
        Ok(out)
    }

    /// The coefficient if this is a multiple of `1`.
    pub fn as_scalar(&self) -> Option<LaurentScalar> {
        match self.terms.len() {
            0 => Some(LaurentScalar::zero(self.ell, self.wo)),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `t`-free view as an algebra element.
    pub fn to_algebra(&self) -> Option<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.ell);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.as_cyc()?);
        }
        Some(out)
    }

    fn inverse(&self, qg: &QGroup) -> Option<Elem> {
        if let Some(c) = self.as_scalar() {
            return c.inv().ok().map(|c| Elem::scalar(qg, c));
        }
        let (m, c) = self.terms.iter().next()?;
        if self.terms.len() != 1 || !m.is_grouplike() {
            return None;
        }
        let w: Vec<i64> = m.w.iter().map(|x| -x).collect();
        let wp: Vec<i64> = m.wp.iter().map(|x| -x).collect();
        let mut terms = BTreeMap::new();
        terms.insert(qg.group_mono(&w, &wp), c.inv().ok()?);
        Some(Elem { ell: self.ell, wo: self.wo, terms })
    }

    /// Canonical text: `(c)*m + ...` in monomial order; parses back to itself.
    pub fn display(&self, params: &QGroupParams) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = match c.as_cyc() {
                    Some(x) => x.to_string(),
                    None => c.to_string(),
                };
                let ms = m.display(params);
                match (cs.as_str(), ms.as_str()) {
                    ("1", _) => ms,
                    (_, "1") => format!("({cs})"),
                    _ => format!("({cs})*{ms}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn int_scalar(ell: u32, k: &BigInt, wo: i64) -> LaurentScalar {
    LaurentScalar::from_cyc(CycScalar::from_rational(ell, Rational::from_integer(k.clone())), wo)
}

/// Evaluates `e` in `qg` with Laurent coefficients truncated at `wo`.
pub fn eval(e: &Expr, qg: &QGroup, wo: i64) -> Result<Elem, ExprError> {
    let at = Pos { line: 1, col: 1 };
    let ell = qg.ell();
    let lift = |r: Result<Elem, String>, p: Pos| r.map_err(|m| p.err(m));
    Ok(match e {
        Expr::Int(k) => Elem::scalar(qg, int_scalar(ell, k, wo)),
        Expr::Theta(k) => Elem::scalar(qg, LaurentScalar::from_cyc(CycScalar::theta_power(ell, *k), wo)),
        Expr::T => Elem::scalar(qg, LaurentScalar::t_power(ell, 1, wo)),
        Expr::Gen(kind, i) => {
            let a = qg.gen(*kind, *i, 1).map_err(|x| at.err(x.to_string()))?;
            Elem::from_algebra(&a, wo)
        }
        Expr::Root(kind, i, j) => {
            let a = match kind {
                GenKind::E => qg.build_e(*i, *j),
                _ => qg.build_f(*i, *j),
            }
            .map_err(|x| at.err(x.to_string()))?;
            Elem::from_algebra(&a, wo)
        }
        Expr::Add(a, b) => eval(a, qg, wo)?.add(&eval(b, qg, wo)?),
        Expr::Sub(a, b) => eval(a, qg, wo)?.add(&eval(b, qg, wo)?.neg()),
        Expr::Neg(a) => eval(a, qg, wo)?.neg(),
        Expr::Mul(a, b) => lift(eval(a, qg, wo)?.mul(&eval(b, qg, wo)?, qg), at)?,
        Expr::Div(a, b, p) => {
            let d = eval(b, qg, wo)?;
            if d.as_scalar().is_none() {
                return Err(p.err("can only divide by a scalar"));
            }
            let inv = d.inverse(qg).ok_or_else(|| p.err("division by zero"))?;
            lift(eval(a, qg, wo)?.mul(&inv, qg), *p)?
        }
        Expr::Pow(a, k, p) => {
            let base = eval(a, qg, wo)?;
            let base = if *k < 0 {
                base.inverse(qg).ok_or_else(|| p.err("negative power of a non-invertible element"))?
            } else {
                base
            };
            let mut acc = Elem::scalar(qg, LaurentScalar::one(ell, wo));
            for _ in 0..k.unsigned_abs() {
                acc = lift(acc.mul(&base, qg), *p)?;
            }
            acc
        }
    })
}

/// Parses and evaluates in one step.
pub fn eval_text(text: &str, qg: &QGroup, wo: i64) -> Result<Elem, ExprError> {
    let e = parse_expr(text, qg.params.n, qg.ell())?;
    eval(&e, qg, wo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qg(n: usize, ell: u32, y: u32, z: u32) -> std::sync::Arc<QGroup> {
        QGroup::get(&QGroupParams::new(n, ell, y, z).unwrap()).unwrap()
    }

    #[test]
    fn parses_examples() {
        let e = parse_expr("e1*f1 - f1*e1", 2, 2).unwrap();
        assert!(matches!(e, Expr::Sub(ref a, ref b) if matches!(**a, Expr::Mul(..)) && matches!(**b, Expr::Mul(..))));
        let err = parse_expr("E(2,1)", 2, 2).unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
        let e = parse_expr("(1/2)*th^2*t^-1*f1", 2, 3).unwrap();
        assert!(matches!(e, Expr::Mul(..)));
        assert_eq!(parse_expr("th^5", 2, 3).unwrap(), Expr::Theta(2));
    }

    #[test]
    fn error_positions() {
        let err = parse_expr("e1 +\n  f1 * )", 2, 2).unwrap_err();
        assert_eq!((err.line, err.col), (2, 8));
        let err = parse_expr("e1 $ f1", 2, 2).unwrap_err();
        assert_eq!((err.line, err.col), (1, 4));
        assert!(parse_expr("x1", 2, 2).is_err());
        assert!(parse_expr("e1 f1", 2, 2).is_err());
    }

    #[test]
    fn commutator_normal_form() {
        let g = qg(2, 2, 0, 1);
        let x = eval_text("e1*f1 - f1*e1", &g, 8).unwrap();
        let y = eval_text("(1/2)*w1 - (1/2)*wp1", &g, 8).unwrap();
        assert_eq!(x, y);
        let z = eval_text("w1^-1*w1", &g, 8).unwrap();
        assert_eq!(z.as_scalar().unwrap(), LaurentScalar::one(2, 8));
        assert!(eval_text("(e1 + 1)^-1", &g, 8).is_err());
        assert!(eval_text("e1/f1", &g, 8).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let g = qg(3, 3, 1, 2);
        for text in [
            "e1*f1",
            "E(2,1)*e1 + th^2*t^-1*f2*w1^-1",
            "(2/3)*F(2,1)*wp2*e2 - t^3*e1*e2",
            "e2*e1*f1*f2 + 5",
        ] {
            let x = eval_text(text, &g, 6).unwrap();
            let s = x.display(&g.params);
            let y = eval_text(&s, &g, 6).unwrap();
            assert_eq!(x, y, "{text} -> {s}");
            assert_eq!(y.display(&g.params), s);
        }
    }
}
