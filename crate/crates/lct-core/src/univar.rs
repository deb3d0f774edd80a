//! Dense univariate polynomials over the rationals.
//!
//! Just enough machinery to analyze face polynomials: derivative, monic gcd,
//! Yun's squarefree decomposition, and rational root extraction. No
//! factorization into irreducibles is ever needed.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{format, Rational};

/// Dense univariate polynomial, coefficients lowest degree first.
/// The leading coefficient is nonzero unless the polynomial is zero
/// (empty coefficient list).
#[derive(Clone, PartialEq, Eq)]
pub struct UnivarPoly {
    coeffs: Vec<Rational>,
}

/// One squarefree factor together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityClass {
    pub multiplicity: u32,
    /// Squarefree, monic factor.
    pub factor: UnivarPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnivarError {
    /// gcd of two zero polynomials is undefined.
    BothZero,
    /// Operation requires a nonconstant polynomial.
    ConstantInput,
}

impl fmt::Display for UnivarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnivarError::BothZero => write!(f, "gcd of two zero polynomials"),
            UnivarError::ConstantInput => write!(f, "operation requires degree >= 1"),
        }
    }
}

impl UnivarPoly {
    pub fn zero() -> Self {
        UnivarPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UnivarPoly { coeffs: vec![c] }.trimmed()
    }

    /// Builds from coefficients, lowest degree first; trailing zeros dropped.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        UnivarPoly { coeffs }.trimmed()
    }

    /// The monomial `c * T^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UnivarPoly { coeffs }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn neg(&self) -> Self {
        UnivarPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        UnivarPoly { coeffs }.trimmed()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UnivarPoly { coeffs }.trimmed()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UnivarPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        UnivarPoly { coeffs }.trimmed()
    }

    /// Euclidean division; returns `(quotient, remainder)`. Panics if
    /// `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dlead = divisor.leading().unwrap().clone();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![
            Rational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = rem.leading().unwrap() / &dlead;
            let shift = rdeg - ddeg;
            quot[shift] = factor.clone();
            // rem -= factor * T^shift * divisor
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let delta = &factor * b;
                rem.coeffs[shift + j] -= delta;
            }
            rem = rem.trimmed();
        }
        (UnivarPoly { coeffs: quot }.trimmed(), rem)
    }

    /// Exact quotient; panics if the division has a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales to leading coefficient 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Clears denominators and integer content; the result has coprime
    /// integer coefficients with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for c in &mut ints {
            *c = &*c / &content;
        }
        ints
    }
}

impl fmt::Debug for UnivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivarPoly({})", self)
    }
}

impl fmt::Display for UnivarPoly {
    /// Human form in the variable `T`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "T")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// Monic gcd over the rationals, via a primitive pseudo-remainder sequence
/// over the integers (plain rational Euclid suffers catastrophic coefficient
/// growth). Errors when both inputs are zero.
pub fn gcd(p: &UnivarPoly, q: &UnivarPoly) -> Result<UnivarPoly, UnivarError> {
    if p.is_zero() && q.is_zero() {
        return Err(UnivarError::BothZero);
    }
    if p.is_zero() {
        return Ok(q.monic());
    }
    if q.is_zero() {
        return Ok(p.monic());
    }
    let mut a = p.primitive_integer();
    let mut b = q.primitive_integer();
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = int_pseudo_rem(&a, &b);
        a = b;
        b = int_primitive(r);
    }
    if !b.is_empty() {
        return Ok(UnivarPoly::one());
    }
    let coeffs = a
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    Ok(UnivarPoly::from_coeffs(coeffs).monic())
}

/// Pseudo-remainder of primitive integer polynomials (lowest degree first):
/// an integer multiple of `a mod b`; only its primitive part matters.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db {
        let lead = r.last().unwrap().clone();
        if lead.is_zero() {
            r.pop();
            continue;
        }
        let dr = r.len() - 1;
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lead * bc;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    for c in &mut v {
        *c = &*c / &content;
    }
    v
}

/// Yun's squarefree decomposition: returns classes with strictly increasing
/// multiplicity whose monic factors are pairwise coprime and satisfy
/// `prod factor^multiplicity = p` up to a nonzero constant.
pub fn squarefree_decompose(p: &UnivarPoly) -> Result<Vec<MultiplicityClass>, UnivarError> {
    if p.degree().map_or(true, |d| d == 0) {
        return Err(UnivarError::ConstantInput);
    }
    let dp = p.derivative();
    let g = gcd(p, &dp).expect("nonzero input");
    let mut classes = Vec::new();
    let mut c = p.div_exact(&g);
    let mut d = dp.div_exact(&g).sub(&c.derivative());
    let mut mult = 1u32;
    while c.degree() != Some(0) {
        let a = gcd(&c, &d).expect("nonzero");
        if a.degree().map_or(false, |deg| deg >= 1) {
            classes.push(MultiplicityClass {
                multiplicity: mult,
                factor: a.monic(),
            });
        }
        c = c.div_exact(&a);
        d = d.div_exact(&a).sub(&c.derivative());
        mult += 1;
    }
    Ok(classes)
}

/// All rational roots of `p` with exact multiplicities, ordered ascending.
///
/// Roots are searched per squarefree factor: clear denominators, then test
/// candidates `±r/s` with `r` dividing the trailing and `s` the leading
/// integer coefficient.
pub fn rational_roots(p: &UnivarPoly) -> Result<Vec<(Rational, u32)>, UnivarError> {
    let classes = squarefree_decompose(p)?;
    let mut roots: Vec<(Rational, u32)> = Vec::new();
    for class in &classes {
        for r in rational_roots_squarefree(&class.factor) {
            roots.push((r, class.multiplicity));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

fn rational_roots_squarefree(p: &UnivarPoly) -> Vec<Rational> {
    let mut ints = p.primitive_integer();
    let mut found = Vec::new();
    // strip T^k: root zero
    let mut shift = 0usize;
    while ints.first().map_or(false, |c| c.is_zero()) {
        ints.remove(0);
        shift += 1;
    }
    if shift > 0 {
        found.push(Rational::zero());
    }
    if ints.len() < 2 {
        return found;
    }
    let trailing = ints.first().unwrap().magnitude().clone();
    let leading = ints.last().unwrap().magnitude().clone();
    let poly = UnivarPoly::from_coeffs(
        ints.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    );
    for num in divisors(&trailing) {
        for den in divisors(&leading) {
            if BigInt::from(num.clone()).gcd(&BigInt::from(den.clone())) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Rational::new(BigInt::from(num.clone()) * sign, BigInt::from(den.clone()));
                if poly.eval(&cand).is_zero() {
                    found.push(cand);
                }
            }
        }
    }
    found.sort();
    found.dedup();
    found
}

fn divisors(n: &num_bigint::BigUint) -> Vec<num_bigint::BigUint> {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    if let Some(small) = n.to_u128() {
        let mut out = Vec::new();
        let mut d = 1u128;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                out.push(BigUint::from(d));
                if small / d != d {
                    out.push(BigUint::from(small / d));
                }
            }
            d += 1;
        }
        return out;
    }
    let one = BigUint::one();
    let mut out = Vec::new();
    let mut d = one.clone();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += &one;
    }
    out
}

/// Prints `p` with a custom variable name (used by trace output).
pub fn display_with_var(p: &UnivarPoly, var: char) -> String {
    use alloc::string::ToString;
    p.to_string().replace('T', &var.to_string())
}
