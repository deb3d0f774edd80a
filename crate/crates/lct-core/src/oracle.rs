//! Closed-form thresholds for families where the index is analytically
//! forced; the independent reference for the adaptation engine.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::adapt::Field;
use crate::bivar::BivarPoly;
use crate::rational::{from_u32, rat, Rational};
use crate::univar::UnivarPoly;

/// A member of one of the reference families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyInstance {
    /// `x^p y^q`, separable; complex index `2 / max(p, q)`.
    Monomial { p: u32, q: u32 },
    /// `y^n - x^m` with `n, m >= 2`; complex index `2(1/n + 1/m)`.
    QuasiHomog { n: u32, m: u32 },
    /// `prod (y - s_i x)` over pairwise distinct rational slopes, `k >= 2`;
    /// complex index `4 / k`.
    DistinctLines { slopes: Vec<Rational> },
    /// `(y - Q(x))^n` with `Q(0) = 0`; complex index `2 / n`.
    SmoothShear { q_poly: UnivarPoly, n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// Monomial exponents must be positive.
    NonPositiveExponent,
    /// `min(n, m) = 1` is a smooth germ; use `SmoothShear` instead.
    SmoothQuasiHomog,
    /// Fewer than two lines, or repeated slopes.
    BadLines,
    /// `Q(0) != 0`, or `n = 0`.
    BadShear,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NonPositiveExponent => write!(f, "monomial exponents must be positive"),
            OracleError::SmoothQuasiHomog => {
                write!(f, "quasi-homogeneous family requires n, m >= 2")
            }
            OracleError::BadLines => write!(f, "need >= 2 pairwise distinct slopes"),
            OracleError::BadShear => write!(f, "need Q(0) = 0 and a positive power"),
        }
    }
}

impl FamilyInstance {
    fn validate(&self) -> Result<(), OracleError> {
        match self {
            FamilyInstance::Monomial { p, q } => {
                if *p == 0 || *q == 0 {
                    return Err(OracleError::NonPositiveExponent);
                }
            }
            FamilyInstance::QuasiHomog { n, m } => {
                if *n < 2 || *m < 2 {
                    return Err(OracleError::SmoothQuasiHomog);
                }
            }
            FamilyInstance::DistinctLines { slopes } => {
                if slopes.len() < 2 {
                    return Err(OracleError::BadLines);
                }
                for (i, s) in slopes.iter().enumerate() {
                    if slopes[i + 1..].contains(s) {
                        return Err(OracleError::BadLines);
                    }
                }
            }
            FamilyInstance::SmoothShear { q_poly, n } => {
                if *n == 0 || !q_poly.coeff(0).is_zero() {
                    return Err(OracleError::BadShear);
                }
            }
        }
        Ok(())
    }

    /// The polynomial this instance denotes.
    pub fn to_poly(&self) -> Result<BivarPoly, OracleError> {
        self.validate()?;
        Ok(match self {
            FamilyInstance::Monomial { p, q } => {
                BivarPoly::monomial(*p, *q, Rational::from_integer(1.into()))
            }
            FamilyInstance::QuasiHomog { n, m } => BivarPoly::monomial(
                0,
                *n,
                Rational::from_integer(1.into()),
            )
            .sub(&BivarPoly::monomial(*m, 0, Rational::from_integer(1.into()))),
            FamilyInstance::DistinctLines { slopes } => {
                let mut acc = BivarPoly::one();
                for s in slopes {
                    let line = BivarPoly::var_y().sub(&BivarPoly::var_x().scale(s));
                    acc = acc.mul(&line);
                }
                acc
            }
            FamilyInstance::SmoothShear { q_poly, n } => {
                let mut q_bivar = BivarPoly::zero();
                for (k, c) in q_poly.coeffs().iter().enumerate() {
                    q_bivar = q_bivar.add(&BivarPoly::monomial(k as u32, 0, c.clone()));
                }
                BivarPoly::var_y().sub(&q_bivar).pow(*n)
            }
        })
    }
}

/// The closed-form threshold of a family instance.
pub fn oracle_lct(inst: &FamilyInstance, field: Field) -> Result<Rational, OracleError> {
    inst.validate()?;
    let complex = match inst {
        FamilyInstance::Monomial { p, q } => rat(2, 1) / from_u32(*p.max(q)),
        FamilyInstance::QuasiHomog { n, m } => {
            rat(2, 1) * (from_u32(*n).recip() + from_u32(*m).recip())
        }
        FamilyInstance::DistinctLines { slopes } => rat(4, 1) / from_u32(slopes.len() as u32),
        FamilyInstance::SmoothShear { n, .. } => rat(2, 1) / from_u32(*n),
    };
    Ok(match field {
        Field::Complex => complex,
        Field::Real => complex / rat(2, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapt::compute_lct;
    use crate::rational::int;
    use alloc::vec;

    #[test]
    fn oracle_examples() {
        assert_eq!(
            oracle_lct(&FamilyInstance::Monomial { p: 2, q: 3 }, Field::Complex).unwrap(),
            rat(2, 3)
        );
        assert_eq!(
            oracle_lct(&FamilyInstance::QuasiHomog { n: 2, m: 3 }, Field::Complex).unwrap(),
            rat(5, 3)
        );
        assert_eq!(
            oracle_lct(
                &FamilyInstance::DistinctLines {
                    slopes: vec![int(1), int(-1)]
                },
                Field::Complex
            )
            .unwrap(),
            int(2)
        );
        let q = UnivarPoly::monomial(int(1), 2);
        assert_eq!(
            oracle_lct(&FamilyInstance::SmoothShear { q_poly: q, n: 3 }, Field::Complex).unwrap(),
            rat(2, 3)
        );
    }

    #[test]
    fn real_is_half_complex() {
        let inst = FamilyInstance::QuasiHomog { n: 3, m: 5 };
        let c = oracle_lct(&inst, Field::Complex).unwrap();
        let r = oracle_lct(&inst, Field::Real).unwrap();
        assert_eq!(c, r * rat(2, 1));
    }

    #[test]
    fn rejections() {
        assert!(oracle_lct(&FamilyInstance::QuasiHomog { n: 1, m: 3 }, Field::Complex).is_err());
        assert!(oracle_lct(
            &FamilyInstance::DistinctLines { slopes: vec![int(1)] },
            Field::Complex
        )
        .is_err());
        assert!(oracle_lct(
            &FamilyInstance::DistinctLines {
                slopes: vec![int(1), int(1)]
            },
            Field::Complex
        )
        .is_err());
        let q = UnivarPoly::constant(int(1));
        assert!(
            oracle_lct(&FamilyInstance::SmoothShear { q_poly: q, n: 2 }, Field::Complex).is_err()
        );
    }

    #[test]
    fn quasi_homog_symmetry() {
        for (n, m) in [(2u32, 5u32), (3, 4), (6, 7)] {
            let a = oracle_lct(&FamilyInstance::QuasiHomog { n, m }, Field::Complex).unwrap();
            let b =
                oracle_lct(&FamilyInstance::QuasiHomog { n: m, m: n }, Field::Complex).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn engine_agrees_on_small_grids() {
        // modest grids here; the acceptance suite runs the full ones
        for n in 2..8u32 {
            for m in 2..8u32 {
                let inst = FamilyInstance::QuasiHomog { n, m };
                let f = inst.to_poly().unwrap();
                let got = compute_lct(&f, Field::Complex).unwrap();
                assert_eq!(
                    got.c0.as_finite().unwrap(),
                    &oracle_lct(&inst, Field::Complex).unwrap(),
                    "y^{n} - x^{m}"
                );
            }
        }
        for k in 2..7u32 {
            let slopes: Vec<Rational> = (1..=k).map(|i| int(i as i64)).collect();
            let inst = FamilyInstance::DistinctLines { slopes };
            let f = inst.to_poly().unwrap();
            let got = compute_lct(&f, Field::Complex).unwrap();
            assert_eq!(
                got.c0.as_finite().unwrap(),
                &oracle_lct(&inst, Field::Complex).unwrap()
            );
        }
        for n in 1..6u32 {
            for d in 1..5usize {
                let q = UnivarPoly::monomial(rat(3, 2), d);
                let inst = FamilyInstance::SmoothShear { q_poly: q, n };
                let f = inst.to_poly().unwrap();
                let got = compute_lct(&f, Field::Complex).unwrap();
                assert_eq!(
                    got.c0.as_finite().unwrap(),
                    &oracle_lct(&inst, Field::Complex).unwrap(),
                    "(y - 3/2 x^{d})^{n}"
                );
            }
        }
        for p in 1..5u32 {
            for q in 1..5u32 {
                let inst = FamilyInstance::Monomial { p, q };
                let f = inst.to_poly().unwrap();
                let got = compute_lct(&f, Field::Real).unwrap();
                assert_eq!(
                    got.c0.as_finite().unwrap(),
                    &oracle_lct(&inst, Field::Real).unwrap()
                );
            }
        }
    }
}
