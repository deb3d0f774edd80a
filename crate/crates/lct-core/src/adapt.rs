//! Adapted coordinates and the critical integrability index.
//!
//! A coordinate system is adapted when no root class of the main-face
//! polynomial has multiplicity exceeding the Newton distance reciprocal
//! `t_star`. Then the index is `2 / t_star` over the complex numbers
//! (`1 / t_star` over the reals). When a "thick" root does exceed `t_star`,
//! a single shear `y -> y + b*x^k` strictly increases `t_star`.
//!
//! Iterating does not always reach adapted coordinates: the shears follow a
//! root branch `y = psi(x)` of `f`, and when a branch of multiplicity
//! `m > t_star` is an infinite power series (e.g. `y = x/(x-1)` for
//! `f = -y - x + x*y`) no polynomial change of variables is adapted. The
//! loop detects this exactly: once the thick class is certified to be a
//! single branch (multiplicity concentrated in one squarefree layer of `f`)
//! whose series provably never terminates, all later shears are determined,
//! `t_star` increases to exactly `m`, and the loop stops with `c0 = 2/m`
//! reporting the truncated coordinate change.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::bivar::{Axis, BivarPoly, ShearTerm};
use crate::factor::{directional_face_poly, polynomial_branch, root_multiplicity, squarefree_layers};
use crate::newton::{
    face_polynomial, newton_distance, polygon, Face, MainFace, MainFaceKind, NewtonPolygon,
};
use crate::rational::{from_u32, Rational};
use crate::univar::{squarefree_decompose, UnivarPoly};

/// Ground field convention for the index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Complex,
    Real,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Complex => write!(f, "complex"),
            Field::Real => write!(f, "real"),
        }
    }
}

/// Output scaling: the paper's integrability index, or the algebraic
/// log-canonical threshold (half the complex index, identical real index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    PaperIndex,
    Lct,
}

/// An exact threshold value, possibly infinite (unit germs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    Finite(Rational),
    Infinite,
}

impl Threshold {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Threshold::Finite(r) => Some(r),
            Threshold::Infinite => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(r) => write!(f, "{}", crate::rational::format(r)),
            Threshold::Infinite => write!(f, "inf"),
        }
    }
}

/// A main-face root class whose multiplicity exceeds `t_star`, together with
/// the shear it forces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickRoot {
    pub face: Face,
    pub b: Rational,
    pub multiplicity: u32,
    pub axis: Axis,
    pub exponent: u32,
}

/// Outcome of inspecting the main face for a thick root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThickOutcome {
    /// No multiplicity exceeds `t_star`; the coordinates are adapted.
    Adapted,
    /// A thick root with `q_nu = 1`; shear along the given term.
    Root(ThickRoot),
    /// A thick root with `p_nu = 1`, `q_nu > 1`; the caller must transpose
    /// and retry (only possible before any shear has been applied).
    TransposeNeeded,
}

/// What happened in one pass of the adaptation loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepAction {
    Adapted,
    Transposed,
    Shear {
        b: Rational,
        exponent: u32,
        multiplicity: u32,
    },
    /// The thick class is a single branch whose series has no polynomial
    /// truncation that adapts; the Newton distance tends to the class
    /// multiplicity, which is the exact final `t_star`.
    SeriesBranch { multiplicity: u32 },
}

/// Snapshot of one loop pass, for traces.
#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub vertices: Vec<(u32, u32)>,
    pub main_kind: MainFaceKind,
    pub t_star: Rational,
    pub face_poly: Option<UnivarPoly>,
    pub action: StepAction,
}

/// Result of [`compute_lct`]: the index, the final Newton distance data, and
/// the accumulated coordinate change.
#[derive(Clone, Debug)]
pub struct LctResult {
    pub c0: Threshold,
    pub field: Field,
    /// `t_star` of the final (adapted) polygon; `None` when `c0` is infinite.
    pub delta_inv_final: Option<Rational>,
    /// Accumulated shear terms, all on one axis with strictly increasing
    /// exponents, expressed in the original variables.
    pub coordinate_change: Vec<ShearTerm>,
    /// True when the input was transposed before adapting.
    pub transposed: bool,
    pub trace: Vec<IterationRecord>,
    /// Order of vanishing of the input at the origin.
    pub order: u32,
}

impl LctResult {
    /// The index under the requested normalization.
    pub fn c0_normalized(&self, normalization: Normalization) -> Threshold {
        match (&self.c0, normalization, self.field) {
            (Threshold::Finite(r), Normalization::Lct, Field::Complex) => {
                Threshold::Finite(r / Rational::from_integer(2.into()))
            }
            (c, _, _) => c.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdaptError {
    ZeroPolynomial,
    /// The loop exceeded its cap `4*(1 + deg f)^2`; termination is
    /// guaranteed, so this flags an implementation bug.
    IterationCapExceeded,
    /// A multiplicity class thicker than `t_star` had degree > 1 or an
    /// irrational root; impossible for rational input, so a bug.
    RationalityViolation(String),
    /// Two distinct thick roots on the main face; provably impossible.
    AmbiguousThick,
    /// A shear failed to strictly increase `t_star`; a bug.
    MonotonicityViolation,
}

impl fmt::Display for AdaptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdaptError::ZeroPolynomial => write!(f, "the zero polynomial has no threshold"),
            AdaptError::IterationCapExceeded => write!(f, "iteration cap exceeded (bug)"),
            AdaptError::RationalityViolation(m) => write!(f, "rationality violation (bug): {m}"),
            AdaptError::AmbiguousThick => write!(f, "ambiguous thick root (bug)"),
            AdaptError::MonotonicityViolation => {
                write!(f, "shear failed to increase t_star (bug)")
            }
        }
    }
}

/// Inspects the main face of `f` for a root class with multiplicity
/// strictly exceeding `t_star`.
pub fn thick_root(
    f: &BivarPoly,
    poly: &NewtonPolygon,
    main: &MainFace,
) -> Result<ThickOutcome, AdaptError> {
    let face = match &main.kind {
        MainFaceKind::CompactFace(face) => face,
        _ => return Ok(ThickOutcome::Adapted),
    };
    debug_assert!(poly.faces.contains(face));
    let phi = face_polynomial(f, face).expect("main face belongs to the polygon");
    let classes = squarefree_decompose(&phi).expect("face polynomial has degree >= 1");
    let thick: Vec<_> = classes
        .iter()
        .filter(|c| from_u32(c.multiplicity) > main.t_star)
        .collect();
    let class = match thick.len() {
        0 => return Ok(ThickOutcome::Adapted),
        1 => thick[0],
        _ => return Err(AdaptError::AmbiguousThick),
    };
    if class.factor.degree() != Some(1) {
        return Err(AdaptError::RationalityViolation(String::from(
            "thick multiplicity class has degree > 1",
        )));
    }
    // root of the monic degree-1 factor T + c0 is -c0; nonzero because the
    // face polynomial has nonzero constant coefficient
    let root = -class.factor.coeff(0);
    debug_assert!(!root.is_zero());
    if face.q_nu == 1 {
        Ok(ThickOutcome::Root(ThickRoot {
            face: face.clone(),
            b: root,
            multiplicity: class.multiplicity,
            axis: Axis::Y,
            exponent: face.p_nu,
        }))
    } else if face.p_nu == 1 {
        Ok(ThickOutcome::TransposeNeeded)
    } else {
        // a thick root forces p_nu + q_nu > p_nu * q_nu, so one of them is 1
        Err(AdaptError::RationalityViolation(String::from(
            "thick root on a face with p_nu > 1 and q_nu > 1",
        )))
    }
}

/// Applies the shear demanded by a thick root and checks that the Newton
/// distance strictly increased.
pub fn adapt_step(f: &BivarPoly, root: &ThickRoot) -> Result<BivarPoly, AdaptError> {
    let before = newton_distance(&polygon(f).map_err(|_| AdaptError::ZeroPolynomial)?).t_star;
    let sheared = f.shear(&ShearTerm {
        axis: root.axis,
        exponent: root.exponent,
        coefficient: root.b.clone(),
    });
    let after = newton_distance(&polygon(&sheared).expect("shear preserves nonzero")).t_star;
    if after <= before {
        return Err(AdaptError::MonotonicityViolation);
    }
    Ok(sheared)
}

/// True when the thick class is certified to be a single branch of the
/// current polynomial whose series never terminates. The class is a single
/// branch exactly when its face-polynomial multiplicity is concentrated as a
/// simple root of one squarefree layer; the layer's exponent then equals the
/// class multiplicity. A single branch is an infinite series exactly when
/// lifting the simple root runs past the layer's x-degree.
fn infinite_single_branch(layers: &[(u32, BivarPoly)], root: &ThickRoot) -> bool {
    let mut total = 0u32;
    let mut hits: Vec<(u32, u32, &BivarPoly)> = Vec::new();
    for (e, p) in layers {
        let phi = directional_face_poly(p, root.face.p_nu, root.face.q_nu);
        let m = root_multiplicity(&phi, &root.b);
        total += e * m;
        if m > 0 {
            hits.push((*e, m, p));
        }
    }
    // the face polynomial of a product is the product of face polynomials,
    // so the layer multiplicities must account for the whole class
    debug_assert_eq!(total, root.multiplicity);
    if total != root.multiplicity {
        return false;
    }
    match hits.as_slice() {
        [(e, 1, p)] => {
            debug_assert_eq!(*e, root.multiplicity);
            polynomial_branch(p, &root.b, root.exponent).is_none()
        }
        _ => false,
    }
}

/// Computes the critical integrability index of `f` at the origin by
/// iterating polygon, Newton distance, and thick-root shears to adapted
/// coordinates (or to a certified infinite-series branch; see the module
/// docs).
pub fn compute_lct(f: &BivarPoly, field: Field) -> Result<LctResult, AdaptError> {
    if f.is_zero() {
        return Err(AdaptError::ZeroPolynomial);
    }
    let order = f.order().expect("nonzero");
    if order == 0 {
        // f(0,0) != 0: |f|^{-c} is locally bounded for every c
        return Ok(LctResult {
            c0: Threshold::Infinite,
            field,
            delta_inv_final: None,
            coordinate_change: Vec::new(),
            transposed: false,
            trace: Vec::new(),
            order,
        });
    }

    let cap = {
        let d = f.total_degree().unwrap() as u64;
        4 * (1 + d) * (1 + d)
    };
    let mut current = f.clone();
    let mut transposed = false;
    let mut terms: Vec<ShearTerm> = Vec::new();
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut last_t_star: Option<Rational> = None;
    // squarefree layers of `current`, kept in sync with the shears; computed
    // lazily at the first thick root (after any transpose)
    let mut layers: Option<Vec<(u32, BivarPoly)>> = None;

    for _ in 0..=cap {
        let poly = polygon(&current).expect("nonzero throughout");
        let main = newton_distance(&poly);
        if let Some(prev) = &last_t_star {
            if main.t_star <= *prev {
                return Err(AdaptError::MonotonicityViolation);
            }
        }
        let face_poly = match &main.kind {
            MainFaceKind::CompactFace(face) => {
                Some(face_polynomial(&current, face).expect("main face"))
            }
            _ => None,
        };
        match thick_root(&current, &poly, &main)? {
            ThickOutcome::Adapted => {
                trace.push(IterationRecord {
                    vertices: poly.vertices.clone(),
                    main_kind: main.kind.clone(),
                    t_star: main.t_star.clone(),
                    face_poly,
                    action: StepAction::Adapted,
                });
                let two_or_one = match field {
                    Field::Complex => Rational::from_integer(2.into()),
                    Field::Real => Rational::from_integer(1.into()),
                };
                let c0 = two_or_one / &main.t_star;
                // re-express the coordinate change in the original variables
                if transposed {
                    for t in &mut terms {
                        t.axis = Axis::X;
                    }
                }
                return Ok(LctResult {
                    c0: Threshold::Finite(c0),
                    field,
                    delta_inv_final: Some(main.t_star),
                    coordinate_change: terms,
                    transposed,
                    trace,
                    order,
                });
            }
            ThickOutcome::TransposeNeeded => {
                if !terms.is_empty() || transposed {
                    // exponents strictly increase after the first shear, so a
                    // q_nu > 1 face can never carry a later thick root
                    return Err(AdaptError::RationalityViolation(String::from(
                        "transpose requested after the first iteration",
                    )));
                }
                trace.push(IterationRecord {
                    vertices: poly.vertices.clone(),
                    main_kind: main.kind.clone(),
                    t_star: main.t_star.clone(),
                    face_poly,
                    action: StepAction::Transposed,
                });
                current = current.transpose();
                transposed = true;
                // t_star is transpose-invariant; keep the monotonicity
                // reference untouched
                continue;
            }
            ThickOutcome::Root(root) => {
                let lay =
                    layers.get_or_insert_with(|| squarefree_layers(&current));
                if infinite_single_branch(lay, &root) {
                    trace.push(IterationRecord {
                        vertices: poly.vertices.clone(),
                        main_kind: main.kind.clone(),
                        t_star: main.t_star.clone(),
                        face_poly,
                        action: StepAction::SeriesBranch {
                            multiplicity: root.multiplicity,
                        },
                    });
                    let t_final = from_u32(root.multiplicity);
                    debug_assert!(main.t_star < t_final);
                    let two_or_one = match field {
                        Field::Complex => Rational::from_integer(2.into()),
                        Field::Real => Rational::from_integer(1.into()),
                    };
                    let c0 = two_or_one / &t_final;
                    if transposed {
                        for t in &mut terms {
                            t.axis = Axis::X;
                        }
                    }
                    return Ok(LctResult {
                        c0: Threshold::Finite(c0),
                        field,
                        delta_inv_final: Some(t_final),
                        coordinate_change: terms,
                        transposed,
                        trace,
                        order,
                    });
                }
                trace.push(IterationRecord {
                    vertices: poly.vertices.clone(),
                    main_kind: main.kind.clone(),
                    t_star: main.t_star.clone(),
                    face_poly,
                    action: StepAction::Shear {
                        b: root.b.clone(),
                        exponent: root.exponent,
                        multiplicity: root.multiplicity,
                    },
                });
                if let Some(last) = terms.last() {
                    debug_assert!(last.exponent < root.exponent);
                }
                current = adapt_step(&current, &root)?;
                let term = ShearTerm {
                    axis: Axis::Y,
                    exponent: root.exponent,
                    coefficient: root.b.clone(),
                };
                for (_, p) in layers.as_mut().unwrap() {
                    *p = p.shear(&term);
                }
                terms.push(term);
                last_t_star = Some(main.t_star);
            }
        }
    }
    Err(AdaptError::IterationCapExceeded)
}
