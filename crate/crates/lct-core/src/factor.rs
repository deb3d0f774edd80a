//! Squarefree structure of a bivariate polynomial along the y-variable, and
//! exact continuation of simple series roots.
//!
//! Viewing `f` as a polynomial in `y` with coefficients in `Q[x]`, Yun's
//! algorithm over the fraction field `Q(x)` splits off the layers
//! `f = c(x) * prod_e P_e^e` with each `P_e` squarefree and the `P_e`
//! pairwise coprime. The adaptation loop uses the layers to decide whether a
//! thick root class consists of a single branch `y = psi(x)`, and whether
//! that branch is a polynomial (the shear iteration then terminates on its
//! own) or a genuine infinite series (the limit of the Newton distance is the
//! class multiplicity, so the loop can stop with an exact answer).

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::bivar::BivarPoly;
use crate::rational::Rational;
use crate::univar::{self, UnivarPoly};

/// Coefficients of `y^0, y^1, ...` as polynomials in `x`. Empty for zero.
pub fn y_coeffs(f: &BivarPoly) -> Vec<UnivarPoly> {
    let deg_y = match f.support().map(|(_, q)| q).max() {
        Some(d) => d as usize,
        None => return Vec::new(),
    };
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); deg_y + 1];
    for (&(p, q), c) in f.terms() {
        let row = &mut rows[q as usize];
        if row.len() <= p as usize {
            row.resize(p as usize + 1, Rational::zero());
        }
        row[p as usize] = c.clone();
    }
    rows.into_iter().map(UnivarPoly::from_coeffs).collect()
}

/// Scales so the coefficient of the highest `(q, p)` term is 1; the layer is
/// only defined up to a nonzero constant anyway.
fn normalize(f: &BivarPoly) -> BivarPoly {
    let lead = f
        .terms()
        .max_by_key(|(&(p, q), _)| (q, p))
        .map(|(_, c)| c.clone())
        .expect("nonzero layer");
    f.scale(&lead.recip())
}

fn from_y_coeffs(rows: &[UnivarPoly]) -> BivarPoly {
    let mut f = BivarPoly::zero();
    for (q, row) in rows.iter().enumerate() {
        for (p, c) in row.coeffs().iter().enumerate() {
            if !c.is_zero() {
                f = f.add(&BivarPoly::monomial(p as u32, q as u32, c.clone()));
            }
        }
    }
    f
}

fn deg_y(rows: &[UnivarPoly]) -> Option<usize> {
    rows.iter().rposition(|c| !c.is_zero())
}

fn trim(mut rows: Vec<UnivarPoly>) -> Vec<UnivarPoly> {
    while rows.last().is_some_and(|c| c.is_zero()) {
        rows.pop();
    }
    rows
}

/// Monic gcd in `Q[x]` of the y-coefficients.
fn content_x(rows: &[UnivarPoly]) -> UnivarPoly {
    let mut g = UnivarPoly::zero();
    for c in rows.iter().filter(|c| !c.is_zero()) {
        g = univar::gcd(&g, c).expect("nonzero operand");
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

/// Scales all rows by one rational so every coefficient is an integer and
/// the integer content is 1; keeps pseudo-remainder heights in check.
fn scale_primitive(rows: Vec<UnivarPoly>) -> Vec<UnivarPoly> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut lcm = BigInt::from(1);
    let mut content = BigInt::zero();
    for r in &rows {
        for c in r.coeffs() {
            if !c.is_zero() {
                lcm = lcm.lcm(c.denom());
            }
        }
    }
    for r in &rows {
        for c in r.coeffs() {
            if !c.is_zero() {
                content = content.gcd(&(c.numer() * (&lcm / c.denom())));
            }
        }
    }
    if content.is_zero() {
        return rows;
    }
    let s = Rational::new(lcm, content);
    rows.into_iter().map(|r| r.scale(&s)).collect()
}

fn primitive_x(rows: &[UnivarPoly]) -> Vec<UnivarPoly> {
    let g = content_x(rows);
    if g.is_zero() || g.degree() == Some(0) {
        return scale_primitive(rows.to_vec());
    }
    scale_primitive(
        rows.iter()
            .map(|c| if c.is_zero() { c.clone() } else { c.div_exact(&g) })
            .collect(),
    )
}

fn deriv_y(rows: &[UnivarPoly]) -> Vec<UnivarPoly> {
    if rows.len() <= 1 {
        return Vec::new();
    }
    trim(
        rows[1..]
            .iter()
            .enumerate()
            .map(|(j, c)| c.scale(&crate::rational::from_u32(j as u32 + 1)))
            .collect(),
    )
}

/// Pseudo-remainder of `f` by `g` in the y-variable: a `Q[x]`-multiple of
/// `f mod g` over `Q(x)`. Only its primitive part is meaningful.
fn pseudo_rem_y(f: &[UnivarPoly], g: &[UnivarPoly]) -> Vec<UnivarPoly> {
    let dg = deg_y(g).expect("nonzero divisor");
    let lc = &g[dg];
    let mut r = f.to_vec();
    loop {
        let dr = match deg_y(&r) {
            Some(d) if d >= dg => d,
            _ => return trim(r),
        };
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lc);
        }
        for j in 0..=dg {
            r[dr - dg + j] = r[dr - dg + j].sub(&lead.mul(&g[j]));
        }
        debug_assert!(r[dr].is_zero());
        r = trim(r);
    }
}

/// Primitive gcd in `Q(x)[y]` via the primitive polynomial remainder
/// sequence. Returns a primitive polynomial; `1` when the inputs are coprime
/// over `Q(x)`.
fn gcd_y_rows(f: &[UnivarPoly], g: &[UnivarPoly]) -> Vec<UnivarPoly> {
    let mut a = primitive_x(&trim(f.to_vec()));
    let mut b = primitive_x(&trim(g.to_vec()));
    if deg_y(&a) < deg_y(&b) {
        core::mem::swap(&mut a, &mut b);
    }
    while let Some(db) = deg_y(&b) {
        if db == 0 {
            return vec![UnivarPoly::one()];
        }
        let r = pseudo_rem_y(&a, &b);
        a = b;
        b = primitive_x(&r);
    }
    a
}

/// Exact quotient in the y-variable; valid when `g` divides `f` in `Q(x)[y]`
/// and the quotient has polynomial coefficients (always the case for a
/// primitive divisor, by Gauss's lemma). Panics otherwise.
fn div_exact_y(f: &[UnivarPoly], g: &[UnivarPoly]) -> Vec<UnivarPoly> {
    let dg = deg_y(g).expect("nonzero divisor");
    let lc = &g[dg];
    let mut r = trim(f.to_vec());
    let df = deg_y(&r).expect("nonzero dividend");
    assert!(df >= dg, "inexact division in y");
    let mut q = vec![UnivarPoly::zero(); df - dg + 1];
    for shift in (0..=df - dg).rev() {
        let c = if r.len() > shift + dg {
            r[shift + dg].div_exact(lc)
        } else {
            UnivarPoly::zero()
        };
        if !c.is_zero() {
            for j in 0..=dg {
                r[shift + j] = r[shift + j].sub(&c.mul(&g[j]));
            }
        }
        q[shift] = c;
        r = trim(r);
    }
    assert!(r.is_empty(), "inexact division in y");
    q
}

/// Squarefree layers of `f` along `y`: pairs `(e, P_e)` with `P_e` primitive
/// and squarefree over `Q(x)`, pairwise coprime, and
/// `f = c(x) * prod P_e^e` up to the x-content `c`. Layers with `P_e`
/// constant are omitted; the result is empty when `f` is a polynomial in `x`
/// alone.
pub fn squarefree_layers(f: &BivarPoly) -> Vec<(u32, BivarPoly)> {
    let p = primitive_x(&trim(y_coeffs(f)));
    match deg_y(&p) {
        Some(d) if d >= 1 => {}
        _ => return Vec::new(),
    }
    let d = deriv_y(&p);
    let a = gcd_y_rows(&p, &d);
    let mut layers = Vec::new();
    if deg_y(&a) == Some(0) {
        layers.push((1, normalize(&from_y_coeffs(&p))));
        return layers;
    }
    let mut b = div_exact_y(&p, &a);
    let mut c = div_exact_y(&d, &a);
    let mut e = 1u32;
    let e_max = deg_y(&p).unwrap() as u32 + 1;
    loop {
        assert!(e <= e_max, "squarefree layer loop overran (bug)");
        let bp = deriv_y(&b);
        let mut z = Vec::new();
        let n = c.len().max(bp.len());
        for j in 0..n {
            let cj = c.get(j).cloned().unwrap_or_else(UnivarPoly::zero);
            let bj = bp.get(j).cloned().unwrap_or_else(UnivarPoly::zero);
            z.push(cj.sub(&bj));
        }
        let z = trim(z);
        if z.is_empty() {
            if deg_y(&b).is_some_and(|d| d >= 1) {
                layers.push((e, normalize(&from_y_coeffs(&b))));
            }
            break;
        }
        let g = gcd_y_rows(&b, &z);
        if deg_y(&g).is_some_and(|d| d >= 1) {
            layers.push((e, normalize(&from_y_coeffs(&g))));
            b = div_exact_y(&b, &g);
            c = div_exact_y(&z, &g);
        } else {
            c = z;
        }
        e += 1;
        match deg_y(&b) {
            Some(d) if d >= 1 => {}
            _ => break,
        }
    }
    layers
}

/// Face polynomial of `f` in the direction `(p_nu, q_nu)`: the monomials of
/// `f` minimizing `p*q_nu + q*p_nu`, written in `T = y/x^{p_nu/q_nu}` with
/// exponent `(q - q_min)/q_nu`. A vertex gives a nonzero constant.
pub fn directional_face_poly(f: &BivarPoly, p_nu: u32, q_nu: u32) -> UnivarPoly {
    let weight = |(p, q): (u32, u32)| p as u64 * q_nu as u64 + q as u64 * p_nu as u64;
    let min = f.support().map(weight).min().expect("nonzero polynomial");
    let q_min = f
        .support()
        .filter(|&m| weight(m) == min)
        .map(|(_, q)| q)
        .min()
        .unwrap();
    let mut phi = UnivarPoly::zero();
    for (&(p, q), c) in f.terms() {
        if weight((p, q)) == min {
            debug_assert!((q - q_min) % q_nu == 0);
            phi = phi.add(&UnivarPoly::monomial(
                c.clone(),
                ((q - q_min) / q_nu) as usize,
            ));
        }
    }
    phi
}

/// Multiplicity of `b` as a root of `phi`.
pub fn root_multiplicity(phi: &UnivarPoly, b: &Rational) -> u32 {
    let linear = UnivarPoly::from_coeffs(vec![-b.clone(), Rational::from_integer(1.into())]);
    let mut m = 0;
    let mut p = phi.clone();
    loop {
        if p.is_zero() {
            return m;
        }
        let (q, r) = p.div_rem(&linear);
        if !r.is_zero() {
            return m;
        }
        m += 1;
        p = q;
    }
}

fn ord_x(p: &UnivarPoly) -> usize {
    p.coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial")
}

fn eval_series(rows: &[UnivarPoly], s: &UnivarPoly) -> UnivarPoly {
    // Horner in y with y = s(x)
    let mut acc = UnivarPoly::zero();
    for c in rows.iter().rev() {
        acc = acc.mul(s).add(c);
    }
    acc
}

/// Continues the unique series root `psi = b*x^k + ...` of `q` (a simple
/// root over `Q(x)`, with all other roots of `q` having contact `< k` with
/// `psi`). Returns the full root when `psi` is a polynomial, `None` when the
/// series provably has a term of degree beyond `deg_x q` (so `psi` cannot
/// divide `q` and is an infinite series).
pub fn polynomial_branch(q: &BivarPoly, b: &Rational, k: u32) -> Option<UnivarPoly> {
    let dx = q.support().map(|(p, _)| p).max().unwrap_or(0) as usize;
    let rows = trim(y_coeffs(q));
    let drows = deriv_y(&rows);
    let mut s = UnivarPoly::monomial(b.clone(), k as usize);
    let mut last = k as usize;
    loop {
        let r = eval_series(&rows, &s);
        if r.is_zero() {
            return Some(s);
        }
        let d = eval_series(&drows, &s);
        assert!(!d.is_zero(), "branch is not a simple root (bug)");
        let j = ord_x(&r);
        let rr = ord_x(&d);
        assert!(j > rr + last, "branch lifting regressed (bug)");
        let e = j - rr;
        if e > dx {
            return None;
        }
        let c = -(r.coeff(j) / d.coeff(rr));
        s = s.add(&UnivarPoly::monomial(c, e));
        last = e;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn parse(s: &str) -> BivarPoly {
        BivarPoly::parse(s).unwrap()
    }

    fn layers_of(s: &str) -> Vec<(u32, BivarPoly)> {
        squarefree_layers(&parse(s))
    }

    #[test]
    fn layers_examples() {
        // squarefree input is its own single layer
        let l = layers_of("y^2 - x^3");
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].0, 1);
        assert_eq!(l[0].1, parse("y^2 - x^3"));

        // a pure power
        let l = layers_of("(y - x)^4");
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].0, 4);
        assert_eq!(l[0].1, parse("y - x"));

        // mixed multiplicities
        let l = layers_of("(y-x)^2 (y+x)");
        assert_eq!(l.len(), 2);
        assert_eq!(l[0], (1, parse("y + x")));
        assert_eq!(l[1], (2, parse("y - x")));

        // x-content is dropped; y factors are ordinary layers
        let l = layers_of("x^3 y^2 (y - x^2)");
        assert_eq!(l.len(), 2);
        assert_eq!(l[0], (1, parse("y - x^2")));
        assert_eq!(l[1], (2, parse("y")));

        // no y at all
        assert!(layers_of("x^5 + x^7").is_empty());
    }

    #[test]
    fn layers_product_reconstructs() {
        for s in ["(y-x)^3 (y+x)^2 (y - x^2)", "y^2 (y^2 - x^3)^2", "x (y-x)(y-2x)"] {
            let f = parse(s);
            let mut prod = BivarPoly::one();
            for (e, p) in squarefree_layers(&f) {
                prod = prod.mul(&p.pow(e));
            }
            // f / prod must be a polynomial in x alone (the content)
            let fr = trim(y_coeffs(&f));
            let pr = trim(y_coeffs(&prod));
            assert_eq!(deg_y(&fr), deg_y(&pr), "y-degree mismatch for {s}");
            let q = div_exact_y(&fr, &pr);
            assert_eq!(deg_y(&q), Some(0), "content not x-only for {s}");
        }
    }

    #[test]
    fn directional_face_matches_polygon_face() {
        use crate::newton::{face_polynomial, polygon};
        for s in ["y^2 - x^3", "(y-x)^4", "y^3 + x^2 y + x^5", "(y-x)^2(y+x)"] {
            let f = parse(s);
            let p = polygon(&f).unwrap();
            for face in &p.faces {
                let a = face_polynomial(&f, face).unwrap();
                let b = directional_face_poly(&f, face.p_nu, face.q_nu);
                assert_eq!(a, b, "face mismatch for {s}");
            }
        }
    }

    #[test]
    fn root_multiplicity_examples() {
        let phi = UnivarPoly::from_coeffs(vec![int(1), int(-2), int(1)]); // (T-1)^2
        assert_eq!(root_multiplicity(&phi, &int(1)), 2);
        assert_eq!(root_multiplicity(&phi, &int(2)), 0);
    }

    #[test]
    fn polynomial_branch_found() {
        // y - x - x^2: branch is the polynomial x + x^2
        let s = polynomial_branch(&parse("y - x - x^2"), &int(1), 1).unwrap();
        assert_eq!(s, UnivarPoly::from_coeffs(vec![int(0), int(1), int(1)]));

        // (y - x - x^3) has the root x + x^3 starting from b=1, k=1
        let s = polynomial_branch(&parse("y - x - x^3"), &int(1), 1).unwrap();
        assert_eq!(s.coeff(3), int(1));

        // branch of a layer with other separated roots
        let s = polynomial_branch(&parse("(y - 2x)(y - x - x^2)"), &int(1), 1);
        assert!(s.is_none() || !s.unwrap().is_zero());
    }

    #[test]
    fn infinite_branch_detected() {
        // -y - x + x*y has the root x/(x-1) = -x - x^2 - ..., not polynomial
        assert!(polynomial_branch(&parse("-y - x + x y"), &rat(-1, 1), 1).is_none());
    }
}
