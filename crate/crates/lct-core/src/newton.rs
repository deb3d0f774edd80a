//! Newton polygon geometry of a bivariate polynomial.
//!
//! The polygon is the convex hull of `support + first quadrant`; its boundary
//! is a vertical ray, a staircase of compact faces with slopes `-1/a_i`
//! strictly increasing toward zero, and a horizontal ray. The Newton distance
//! is read off where the diagonal `p = q` first meets the polygon.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::bivar::BivarPoly;
use crate::rational::{from_u32, Rational};
use crate::univar::UnivarPoly;

/// One compact face of the polygon, from `left` (higher `q`) to `right`.
///
/// The primitive direction is `(p_nu, -q_nu)` with `gcd(p_nu, q_nu) = 1`,
/// and `lattice_length` counts the lattice steps along the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub left: (u32, u32),
    pub right: (u32, u32),
    pub p_nu: u32,
    pub q_nu: u32,
    pub lattice_length: u32,
}

impl Face {
    /// Leading exponent `a = p_nu / q_nu` (negative reciprocal slope).
    pub fn leading_exponent(&self) -> Rational {
        Rational::new(self.p_nu.into(), self.q_nu.into())
    }

    /// The vertex coordinate `A` = `right.p`.
    pub fn coord_a(&self) -> u32 {
        self.right.0
    }

    /// The vertex coordinate `B` = `right.q`.
    pub fn coord_b(&self) -> u32 {
        self.right.1
    }

    /// Where the prolongation of the face meets the diagonal:
    /// `(A + a*B) / (1 + a)`.
    pub fn delta_inv(&self) -> Rational {
        let a = self.leading_exponent();
        (from_u32(self.coord_a()) + &a * from_u32(self.coord_b()))
            / (Rational::from_integer(1.into()) + a)
    }
}

/// Staircase hull of the support of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Extreme points, `p` strictly increasing and `q` strictly decreasing.
    pub vertices: Vec<(u32, u32)>,
    /// `min p` over the support (vertical ray sits at `p = alpha`).
    pub alpha: u32,
    /// `min q` over the support (horizontal ray sits at `q = beta`).
    pub beta: u32,
    /// Compact faces between consecutive vertices, leading exponent increasing.
    pub faces: Vec<Face>,
}

/// Which boundary element the diagonal meets first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MainFaceKind {
    Vertex((u32, u32)),
    CompactFace(Face),
    VerticalRay,
    HorizontalRay,
}

/// The Newton distance `t_star = delta_NP^{-1}` together with the boundary
/// element containing `(t_star, t_star)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainFace {
    pub kind: MainFaceKind,
    pub t_star: Rational,
}

impl MainFace {
    /// True when the diagonal meets a vertex or a ray; only compact faces can
    /// carry obstructing roots.
    pub fn is_trivially_adapted(&self) -> bool {
        !matches!(self.kind, MainFaceKind::CompactFace(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NewtonError {
    ZeroPolynomial,
    /// The face handed to `face_polynomial` is not a face of the polynomial's
    /// polygon.
    ForeignFace,
    /// `delta_tradeoff` denominator vanished.
    ZeroDenominator,
}

impl fmt::Display for NewtonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NewtonError::ZeroPolynomial => write!(f, "zero polynomial has no Newton polygon"),
            NewtonError::ForeignFace => write!(f, "face does not belong to the polygon"),
            NewtonError::ZeroDenominator => write!(f, "denominator vanished"),
        }
    }
}

/// Builds the Newton polygon of a nonzero polynomial.
pub fn polygon(f: &BivarPoly) -> Result<NewtonPolygon, NewtonError> {
    let mut pts: Vec<(u32, u32)> = f.support().collect();
    if pts.is_empty() {
        return Err(NewtonError::ZeroPolynomial);
    }
    pts.sort();
    let alpha = pts.iter().map(|&(p, _)| p).min().unwrap();
    let beta = pts.iter().map(|&(_, q)| q).min().unwrap();

    // Pareto frontier: drop any point dominated toward the upper right.
    // pts is sorted by (p, q), so a point survives iff its q is a new minimum.
    let mut frontier: Vec<(u32, u32)> = Vec::new();
    let mut min_q = u32::MAX;
    for &(p, q) in &pts {
        if q < min_q {
            frontier.push((p, q));
            min_q = q;
        }
    }

    // Lower-left convex chain over the frontier.
    let mut verts: Vec<(u32, u32)> = Vec::new();
    for &pt in &frontier {
        while verts.len() >= 2 && cross(verts[verts.len() - 2], verts[verts.len() - 1], pt) <= 0 {
            verts.pop();
        }
        verts.push(pt);
    }

    let faces = verts
        .windows(2)
        .map(|w| face_between(w[0], w[1]))
        .collect();

    Ok(NewtonPolygon {
        vertices: verts,
        alpha,
        beta,
        faces,
    })
}

fn cross(o: (u32, u32), a: (u32, u32), b: (u32, u32)) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    let (ax, ay) = (a.0 as i64, a.1 as i64);
    let (bx, by) = (b.0 as i64, b.1 as i64);
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

fn face_between(left: (u32, u32), right: (u32, u32)) -> Face {
    let dp = right.0 - left.0;
    let dq = left.1 - right.1;
    let g = dp.gcd(&dq);
    Face {
        left,
        right,
        p_nu: dp / g,
        q_nu: dq / g,
        lattice_length: g,
    }
}

/// Newton distance and main-face classification.
///
/// The polygon is the intersection of the half planes `p >= alpha`,
/// `q >= beta`, and one per face, so `t_star` is a maximum of exact
/// rationals.
pub fn newton_distance(polygon: &NewtonPolygon) -> MainFace {
    let mut t_star = from_u32(polygon.alpha.max(polygon.beta));
    for face in &polygon.faces {
        let d = face.delta_inv();
        if d > t_star {
            t_star = d;
        }
    }

    for &v in &polygon.vertices {
        if from_u32(v.0) == t_star && v.0 == v.1 {
            return MainFace {
                kind: MainFaceKind::Vertex(v),
                t_star,
            };
        }
    }
    for face in &polygon.faces {
        if from_u32(face.left.0) < t_star && t_star < from_u32(face.right.0) {
            return MainFace {
                kind: MainFaceKind::CompactFace(face.clone()),
                t_star,
            };
        }
    }
    let kind = if t_star == from_u32(polygon.alpha) {
        MainFaceKind::VerticalRay
    } else {
        debug_assert_eq!(t_star, from_u32(polygon.beta));
        MainFaceKind::HorizontalRay
    };
    MainFace { kind, t_star }
}

/// The face polynomial `phi(T) = sum_j a_(left + j*(p_nu, -q_nu)) T^(d-j)`.
///
/// Its degree is the lattice length `d`; both the leading and the constant
/// coefficient are nonzero (they come from the face's endpoints). A root `r`
/// of `phi` corresponds to a Puiseux leading coefficient `b` with
/// `b^q_nu = r` (so `b = r` directly when `q_nu = 1`).
pub fn face_polynomial(f: &BivarPoly, face: &Face) -> Result<UnivarPoly, NewtonError> {
    let d = face.lattice_length;
    if face.left.0 + d * face.p_nu != face.right.0
        || face.right.1 + d * face.q_nu != face.left.1
        || f.coeff(face.left.0, face.left.1).is_zero()
        || f.coeff(face.right.0, face.right.1).is_zero()
    {
        return Err(NewtonError::ForeignFace);
    }
    let mut coeffs = alloc::vec![Rational::zero(); d as usize + 1];
    for j in 0..=d {
        let p = face.left.0 + j * face.p_nu;
        let q = face.left.1 - j * face.q_nu;
        coeffs[(d - j) as usize] = f.coeff(p, q);
    }
    Ok(UnivarPoly::from_coeffs(coeffs))
}

/// The trade-off function `c(x) = (1 + a + x) / (A + a*B + m*x)`.
///
/// For `x > 0` it satisfies `c(x) >= c(0)` exactly when `m <= c(0)^{-1}`.
pub fn delta_tradeoff(
    a: &Rational,
    big_a: &Rational,
    big_b: &Rational,
    m: u32,
    x: &Rational,
) -> Result<Rational, NewtonError> {
    let den = big_a + a * big_b + from_u32(m) * x;
    if den.is_zero() {
        return Err(NewtonError::ZeroDenominator);
    }
    let num = Rational::from_integer(1.into()) + a + x;
    Ok(num / den)
}
