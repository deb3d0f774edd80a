//! Sparse bivariate polynomials over the rationals.
//!
//! Values are canonical (no zero coefficients stored) and immutable; all
//! operations are pure. The parser accepts the small expression grammar used
//! by the CLI:
//!
//! ```text
//! expr   := ws term (ws ('+'|'-') ws term)* ws
//! term   := ('-')? factor (ws ('*')? ws factor)*
//! factor := base ('^' nat)?
//! base   := '(' expr ')' | 'x' | 'y' | rat
//! rat    := nat ('/' nat)?
//! ```
//!
//! Implicit multiplication is allowed (`3x^2y`) and unary minus binds at the
//! term level. Canonical printing orders terms by total degree, then by the
//! `x` exponent; `parse(print(f)) == f` always.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::rational::{format, to_f64, Rational};

/// Which variable a shear substitutes into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// `y -> y + b * x^k`
    Y,
    /// `x -> x + b * y^k`
    X,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Y => write!(f, "y"),
            Axis::X => write!(f, "x"),
        }
    }
}

/// One monomial of a coordinate change `y -> y + b*x^k` (or the `x`-axis
/// mirror image).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearTerm {
    pub axis: Axis,
    pub exponent: u32,
    pub coefficient: Rational,
}

/// Sparse bivariate polynomial keyed by exponent pairs `(p, q)` of `x^p y^q`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    coeffs: BTreeMap<(u32, u32), Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the error was detected.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn var_x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn var_y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(p: u32, q: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((p, q), c);
        }
        BivarPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^p y^q` (zero if absent).
    pub fn coeff(&self, p: u32, q: u32) -> Rational {
        self.coeffs
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Iterates over `((p, q), coefficient)` with nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    /// Exponent pairs of the support.
    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn insert(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in other.coeffs.iter() {
            out.insert(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivarPoly {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(p1, q1), c1) in self.coeffs.iter() {
            for (&(p2, q2), c2) in other.coeffs.iter() {
                out.insert((p1 + p2, q1 + q2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivarPoly {
            coeffs: self.coeffs.iter().map(|(&k, a)| (k, a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Order of vanishing at the origin: `min(p+q)` over the support, or
    /// `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(p, q)| p + q).min()
    }

    /// Total degree: `max(p+q)`, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(p, q)| p + q).max()
    }

    /// Swaps the roles of `x` and `y`; involutive.
    pub fn transpose(&self) -> Self {
        BivarPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(p, q), c)| ((q, p), c.clone()))
                .collect(),
        }
    }

    /// Applies the coordinate change of `t`: for axis `Y` returns
    /// `f(x, y + b*x^k)`, for axis `X` returns `f(x + b*y^k, y)`.
    pub fn shear(&self, t: &ShearTerm) -> Self {
        assert!(!t.coefficient.is_zero(), "shear coefficient must be nonzero");
        let mut out = Self::zero();
        for (&(p, q), c) in self.coeffs.iter() {
            let (fixed, subst) = match t.axis {
                Axis::Y => (p, q),
                Axis::X => (q, p),
            };
            // (v + b*u^k)^subst expanded by the binomial theorem
            let mut b_pow = Rational::one();
            let mut binom = Rational::one();
            for j in 0..=subst {
                let coeff = c * &binom * &b_pow;
                let u_extra = t.exponent * j;
                let v_left = subst - j;
                let key = match t.axis {
                    Axis::Y => (fixed + u_extra, v_left),
                    Axis::X => (v_left, fixed + u_extra),
                };
                out.insert(key, coeff);
                // update binom = C(subst, j+1), b_pow = b^(j+1)
                if j < subst {
                    binom = binom * Rational::from_integer((subst - j).into())
                        / Rational::from_integer((j + 1).into());
                    b_pow *= &t.coefficient;
                }
            }
        }
        out
    }

    /// Substitutes polynomials for both variables: `f(gx, gy)`.
    pub fn substitute(&self, gx: &BivarPoly, gy: &BivarPoly) -> Self {
        let mut out = Self::zero();
        for (&(p, q), c) in self.coeffs.iter() {
            let term = gx.pow(p).mul(&gy.pow(q)).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Horner-style double-precision evaluation at a complex point. Numeric
    /// use only (the probe); never feeds exact decisions.
    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        // group by q, Horner in y of Horner-in-x rows
        let mut rows: BTreeMap<u32, Vec<(u32, f64)>> = BTreeMap::new();
        for (&(p, q), c) in self.coeffs.iter() {
            rows.entry(q).or_default().push((p, to_f64(c)));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev_q = 0u32;
        for (&q, row) in rows.iter().rev() {
            if !acc.is_zero() {
                acc = acc * pow_c(y, prev_q - q);
            }
            acc += horner_row(row, x);
            prev_q = q;
        }
        acc * pow_c(y, prev_q)
    }

    /// Real evaluation; same caveats as [`Self::eval_complex`].
    pub fn eval_real(&self, x: f64, y: f64) -> f64 {
        self.eval_complex(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
            .re
    }

    /// Parses the expression grammar documented at module level.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).parse_all()
    }
}

fn pow_c(base: Complex64, mut k: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut b = base;
    while k > 0 {
        if k & 1 == 1 {
            acc *= b;
        }
        k >>= 1;
        if k > 0 {
            b *= b;
        }
    }
    acc
}

fn horner_row(row: &[(u32, f64)], x: Complex64) -> Complex64 {
    // row is sorted by p ascending
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev_p = 0u32;
    for &(p, c) in row.iter().rev() {
        if !acc.is_zero() {
            acc = acc * pow_c(x, prev_p - p);
        }
        acc += c;
        prev_p = p;
    }
    acc * pow_c(x, prev_p)
}

impl fmt::Display for BivarPoly {
    /// Canonical printing: terms in graded-lex order (total degree, then the
    /// `x` exponent), coefficients as `a` or `a/b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&(p, q)| (p + q, p));
        for (i, &(p, q)) in keys.iter().enumerate() {
            let c = &self.coeffs[&(p, q)];
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = (p, q) == (0, 0) || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format(&mag))?;
            }
            let mut sep = show_coeff;
            if p > 0 {
                if sep {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if p > 1 {
                    write!(f, "^{}", p)?;
                }
                sep = true;
            }
            if q > 0 {
                if sep {
                    write!(f, "*")?;
                }
                write!(f, "y")?;
                if q > 1 {
                    write!(f, "^{}", q)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({})", self)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: String::from(message),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn parse_all(&mut self) -> Result<BivarPoly, ParseError> {
        let poly = self.parse_expr()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.err("unexpected trailing input");
        }
        Ok(poly)
    }

    fn parse_expr(&mut self) -> Result<BivarPoly, ParseError> {
        self.skip_ws();
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.add(&self.parse_term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<BivarPoly, ParseError> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let mut acc = self.parse_factor()?;
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                acc = acc.mul(&self.parse_factor()?);
                continue;
            }
            // implicit multiplication: another factor starts here
            match self.peek() {
                Some(b'(') | Some(b'x') | Some(b'y') | Some(b'0'..=b'9') => {
                    acc = acc.mul(&self.parse_factor()?);
                }
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn parse_factor(&mut self) -> Result<BivarPoly, ParseError> {
        let base = self.parse_base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.parse_nat()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn parse_base(&mut self) -> Result<BivarPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(BivarPoly::var_x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BivarPoly::var_y())
            }
            Some(b'0'..=b'9') => {
                let num = self.parse_nat_big()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.parse_nat_big()?;
                    if d.is_zero() {
                        return Err(ParseError {
                            offset: at,
                            message: String::from("zero denominator"),
                        });
                    }
                    d
                } else {
                    num_bigint::BigInt::one()
                };
                Ok(BivarPoly::constant(Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.err("unknown variable (only x and y are allowed)")
            }
            _ => self.err("expected '(', 'x', 'y', or a number"),
        }
    }

    fn parse_nat(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let big = self.parse_nat_big()?;
        use num_traits::ToPrimitive;
        big.to_u32().ok_or(ParseError {
            offset: start,
            message: String::from("exponent too large"),
        })
    }

    fn parse_nat_big(&mut self) -> Result<num_bigint::BigInt, ParseError> {
        if !matches!(self.peek(), Some(b'0'..=b'9')) {
            return self.err("expected a natural number");
        }
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}
