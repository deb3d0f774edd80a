//! Property tests for the exact engine.

use lct_core::adapt::{compute_lct, Field, StepAction};
use lct_core::bivar::{Axis, BivarPoly, ShearTerm};
use lct_core::newton::{newton_distance, polygon, MainFaceKind, NewtonPolygon};
use lct_core::rational::{from_u32, int, rat, Rational};
use lct_core::univar::{rational_roots, squarefree_decompose, UnivarPoly};

use num_traits::Zero;
use proptest::prelude::*;

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Random nonzero polynomial with small support; optionally forced to vanish
/// at the origin.
fn poly_strategy(vanishing: bool) -> impl Strategy<Value = BivarPoly> {
    let min_total = if vanishing { 1u32 } else { 0 };
    proptest::collection::vec(((0u32..6, 0u32..6), rational_strategy()), 1..7).prop_map(
        move |terms| {
            let mut f = BivarPoly::zero();
            for ((p, q), c) in terms {
                if p + q < min_total {
                    continue;
                }
                f = f.add(&BivarPoly::monomial(p, q, c));
            }
            if f.is_zero() {
                BivarPoly::monomial(min_total, 0, int(1))
            } else {
                f
            }
        },
    )
}

/// Independent oracle for t_star: walk the boundary elements in order and
/// intersect each with the diagonal.
fn t_star_by_walk(p: &NewtonPolygon) -> Rational {
    let first = *p.vertices.first().unwrap();
    if p.alpha >= first.1 {
        return from_u32(p.alpha);
    }
    for face in &p.faces {
        let (lp, lq) = (int(face.left.0 as i64), int(face.left.1 as i64));
        let (rp, rq) = (int(face.right.0 as i64), int(face.right.1 as i64));
        let t = (&lq * &rp - &lp * &rq) / ((&rp - &lp) + (&lq - &rq));
        if t >= from_u32(face.left.0) && t <= from_u32(face.right.0) {
            return t;
        }
    }
    from_u32(p.beta)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(f in poly_strategy(false)) {
        let printed = f.to_string();
        let reparsed = BivarPoly::parse(&printed).unwrap();
        prop_assert_eq!(&reparsed, &f);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn shear_is_invertible(
        f in poly_strategy(false),
        k in 1u32..4,
        b in rational_strategy(),
        x_axis in proptest::bool::ANY,
    ) {
        prop_assume!(!b.is_zero());
        let axis = if x_axis { Axis::X } else { Axis::Y };
        let fwd = ShearTerm { axis, exponent: k, coefficient: b.clone() };
        let back = ShearTerm { axis, exponent: k, coefficient: -b };
        prop_assert_eq!(f.shear(&fwd).shear(&back), f);
    }

    #[test]
    fn shear_preserves_order(
        f in poly_strategy(false),
        k in 2u32..5,
        b in rational_strategy(),
    ) {
        prop_assume!(!b.is_zero());
        let t = ShearTerm { axis: Axis::Y, exponent: k, coefficient: b };
        prop_assert_eq!(f.shear(&t).order(), f.order());
    }

    #[test]
    fn linear_shear_weakly_increases_order(
        f in poly_strategy(false),
        b in rational_strategy(),
    ) {
        prop_assume!(!b.is_zero());
        let t = ShearTerm { axis: Axis::Y, exponent: 1, coefficient: b };
        prop_assert!(f.shear(&t).order() >= f.order());
    }

    #[test]
    fn pow_matches_repeated_mul(f in poly_strategy(false), k in 0u32..5) {
        let mut schoolbook = BivarPoly::one();
        for _ in 0..k {
            schoolbook = schoolbook.mul(&f);
        }
        prop_assert_eq!(f.pow(k), schoolbook);
    }

    #[test]
    fn mul_is_commutative_and_distributes(
        f in poly_strategy(false),
        g in poly_strategy(false),
        h in poly_strategy(false),
    ) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn t_star_matches_boundary_walk(f in poly_strategy(false)) {
        let p = polygon(&f).unwrap();
        prop_assert_eq!(newton_distance(&p).t_star, t_star_by_walk(&p));
    }

    #[test]
    fn constructed_roots_are_recovered(
        roots in proptest::collection::btree_map(
            (-5i64..=5, 1i64..=3).prop_map(|(n, d)| (n, d)),
            1u32..4,
            1..4,
        )
    ) {
        // build prod (T - r_i)^{m_i} with distinct rational r_i
        let mut expected: Vec<(Rational, u32)> = Vec::new();
        let mut p = UnivarPoly::one();
        for (&(n, d), &m) in &roots {
            let r = rat(n, d);
            if expected.iter().any(|(seen, _)| *seen == r) {
                continue;
            }
            let factor = UnivarPoly::from_coeffs(vec![-r.clone(), int(1)]);
            p = p.mul(&factor.pow(m));
            expected.push((r, m));
        }
        expected.sort_by(|a, b| a.0.cmp(&b.0));
        prop_assert_eq!(rational_roots(&p).unwrap(), expected);
    }

    #[test]
    fn squarefree_product_reconstructs(
        f in proptest::collection::vec(rational_strategy(), 2..6),
        g in proptest::collection::vec(rational_strategy(), 2..5),
        m in 1u32..4,
    ) {
        let base = UnivarPoly::from_coeffs(f);
        let other = UnivarPoly::from_coeffs(g);
        prop_assume!(base.degree().map_or(false, |d| d >= 1));
        let p = base.mul(&other.pow(m));
        prop_assume!(p.degree().map_or(false, |d| d >= 1));
        let classes = squarefree_decompose(&p).unwrap();
        let mut rebuilt = UnivarPoly::one();
        for c in &classes {
            rebuilt = rebuilt.mul(&c.factor.pow(c.multiplicity));
        }
        let ratio = p.leading().unwrap() / rebuilt.leading().unwrap();
        prop_assert_eq!(rebuilt.scale(&ratio), p);
    }

    #[test]
    fn lct_swap_scale_and_power_invariance(
        f in poly_strategy(true),
        lambda in rational_strategy(),
        k in 2u32..4,
    ) {
        prop_assume!(!lambda.is_zero());
        let base = compute_lct(&f, Field::Complex).unwrap();
        let c0 = base.c0.as_finite().unwrap().clone();

        let swapped = compute_lct(&f.transpose(), Field::Complex).unwrap();
        prop_assert_eq!(swapped.c0.as_finite().unwrap(), &c0);

        let scaled = compute_lct(&f.scale(&lambda), Field::Complex).unwrap();
        prop_assert_eq!(scaled.c0.as_finite().unwrap(), &c0);

        let powered = compute_lct(&f.pow(k), Field::Complex).unwrap();
        prop_assert_eq!(powered.c0.as_finite().unwrap(), &(&c0 / from_u32(k)));
    }

    #[test]
    fn lct_shear_invariance(
        f in poly_strategy(true),
        k in 1u32..4,
        b in rational_strategy(),
    ) {
        prop_assume!(!b.is_zero());
        let base = compute_lct(&f, Field::Complex).unwrap().c0;
        let t = ShearTerm { axis: Axis::Y, exponent: k, coefficient: b };
        let sheared = compute_lct(&f.shear(&t), Field::Complex).unwrap().c0;
        prop_assert_eq!(base, sheared);
    }

    #[test]
    fn lct_order_bound_and_trace_shape(f in poly_strategy(true)) {
        let r = compute_lct(&f, Field::Complex).unwrap();
        let c0 = r.c0.as_finite().unwrap();
        // order bound
        prop_assert!(c0 <= &(rat(4, 1) / from_u32(r.order)));
        // real mode is exactly half
        let real = compute_lct(&f, Field::Real).unwrap();
        prop_assert_eq!(&(real.c0.as_finite().unwrap() * rat(2, 1)), c0);
        // trace t_star strictly increases over shear steps and all shear
        // exponents strictly increase on a single axis
        let stars: Vec<Rational> = r
            .trace
            .iter()
            .filter(|it| !matches!(it.action, StepAction::Transposed))
            .map(|it| it.t_star.clone())
            .collect();
        for w in stars.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for w in r.coordinate_change.windows(2) {
            prop_assert!(w[0].exponent < w[1].exponent);
            prop_assert_eq!(w[0].axis, w[1].axis);
        }
        // final record is adapted coordinates or a certified series branch
        let final_ok = matches!(
            r.trace.last().unwrap().action,
            StepAction::Adapted | StepAction::SeriesBranch { .. }
        );
        prop_assert!(final_ok);
    }

    /// Rationality guarantee: any multiplicity class of the main-face
    /// polynomial thicker than t_star has degree 1 (hence a rational root).
    /// compute_lct would error otherwise; this checks the claim directly.
    #[test]
    fn thick_classes_have_rational_roots(f in poly_strategy(true)) {
        let p = polygon(&f).unwrap();
        let main = newton_distance(&p);
        if let MainFaceKind::CompactFace(face) = &main.kind {
            let phi = lct_core::newton::face_polynomial(&f, face).unwrap();
            for class in squarefree_decompose(&phi).unwrap() {
                if from_u32(class.multiplicity) > main.t_star {
                    prop_assert_eq!(class.factor.degree(), Some(1));
                }
            }
        }
        // and the full loop never hits an internal error
        prop_assert!(compute_lct(&f, Field::Complex).is_ok());
    }
}
