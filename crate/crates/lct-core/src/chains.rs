//! Ascending-chain and accumulation-point exploration over families of
//! thresholds.
//!
//! Everything here is a finite-sample demonstration: thresholds of batches
//! are computed exactly, clusters are matched against the one-variable
//! threshold set `C(1)`, and ascending runs are checked for stabilization.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::adapt::{compute_lct, Field, Threshold};
use crate::bivar::BivarPoly;
use crate::rational::{rat, Rational};

/// Thresholds of a batch of inputs, in input order.
#[derive(Clone, Debug)]
pub struct ThresholdSet {
    pub field: Field,
    pub entries: Vec<BatchEntry>,
}

/// One batch entry; failures are collected instead of aborting the batch.
#[derive(Clone, Debug)]
pub struct BatchEntry {
    /// Canonical text of the input polynomial.
    pub input: String,
    pub outcome: Result<Threshold, String>,
}

/// The finite lattice `{(p, q) : 0 <= p <= q <= n}` that confines
/// left-of-diagonal polygon vertices at a fixed order of vanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeL {
    pub n: u32,
    pub points: Vec<(u32, u32)>,
}

/// A cluster of threshold values attributed to an accumulation point.
#[derive(Clone, Debug, PartialEq)]
pub struct AccumulationCandidate {
    /// Smallest value in the cluster (the closest approach to the limit).
    pub limit: Rational,
    pub count: usize,
    /// Nearest element of `C(1) + {0}` under the field convention.
    pub nearest_c1: Rational,
    /// Exact distance from `limit` to `nearest_c1`.
    pub gap: Rational,
}

/// A maximal strictly-ascending run inside a value sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AscendingRun {
    pub start: usize,
    pub len: usize,
    /// True when the value immediately after the run repeats its last value.
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainsError {
    UnsortedInput,
    NonPositiveTolerance,
}

impl fmt::Display for ChainsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainsError::UnsortedInput => write!(f, "values must be sorted ascending"),
            ChainsError::NonPositiveTolerance => write!(f, "tolerance must be positive"),
        }
    }
}

/// Computes thresholds for a list of polynomials; per-entry errors are
/// recorded, not fatal. Results keep input order.
pub fn batch_lct(inputs: &[BivarPoly], field: Field) -> ThresholdSet {
    let entries = inputs
        .iter()
        .map(|f| BatchEntry {
            input: f.to_string(),
            outcome: compute_lct(f, field)
                .map(|r| r.c0)
                .map_err(|e| e.to_string()),
        })
        .collect();
    ThresholdSet { field, entries }
}

/// The threshold set of one variable: `{2/n : n >= 1}` complex,
/// `{1/n : n >= 1}` real; `0` joins both as a limit.
pub fn nearest_c1_element(value: &Rational, field: Field) -> Rational {
    let scale = match field {
        Field::Complex => rat(2, 1),
        Field::Real => rat(1, 1),
    };
    if !value.is_positive() {
        return Rational::zero();
    }
    // candidates: 0 and scale/n for n near scale/value
    let ratio = &scale / value;
    let floor = ratio.floor().to_integer();
    let mut best = Rational::zero();
    let mut best_gap = value.abs();
    for dn in 0..3u32 {
        let n = &floor + num_bigint::BigInt::from(dn);
        if n <= num_bigint::BigInt::zero() {
            continue;
        }
        let cand = &scale / Rational::from_integer(n);
        let gap = (value - &cand).abs();
        if gap < best_gap {
            best_gap = gap;
            best = cand;
        }
    }
    best
}

/// Groups a sorted ascending value list into clusters (consecutive gaps at
/// most `tol`) and reports each cluster with at least `min_count` members
/// against the nearest element of `C(1) + {0}`.
pub fn accumulation_points(
    values: &[Rational],
    tol: &Rational,
    field: Field,
    min_count: usize,
) -> Result<Vec<AccumulationCandidate>, ChainsError> {
    if !tol.is_positive() {
        return Err(ChainsError::NonPositiveTolerance);
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(ChainsError::UnsortedInput);
    }
    let mut out = Vec::new();
    let mut start = 0usize;
    for i in 0..=values.len() {
        let breaks = i == values.len() || (i > start && &values[i] - &values[i - 1] > *tol);
        if breaks {
            let count = i - start;
            if count >= min_count {
                let limit = values[start].clone();
                let nearest = nearest_c1_element(&limit, field);
                let gap = (&limit - &nearest).abs();
                out.push(AccumulationCandidate {
                    limit,
                    count,
                    nearest_c1: nearest,
                    gap,
                });
            }
            start = i;
        }
    }
    Ok(out)
}

/// Enumerates the lattice `{(p, q) : 0 <= p <= q <= n}`; it has
/// `(n+1)(n+2)/2` points.
pub fn lattice_l(n: u32) -> LatticeL {
    let mut points = Vec::with_capacity(((n as usize + 1) * (n as usize + 2)) / 2);
    for q in 0..=n {
        for p in 0..=q {
            points.push((p, q));
        }
    }
    LatticeL { n, points }
}

/// Decomposes a sequence into maximal strictly-ascending runs and flags
/// whether each run's final value repeats immediately after it.
pub fn ascending_runs(values: &[Rational]) -> Vec<AscendingRun> {
    let mut runs = Vec::new();
    let mut start = 0usize;
    for i in 1..=values.len() {
        let extends = i < values.len() && values[i] > values[i - 1];
        if !extends {
            let len = i - start;
            let stabilized = i < values.len() && values[i] == values[i - 1];
            runs.push(AscendingRun {
                start,
                len,
                stabilized,
            });
            // skip the plateau; the next run starts at the next strict rise
            start = i;
        }
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    #[test]
    fn batch_examples() {
        // {y^3 - x^m : m = 3..6}
        let inputs: Vec<BivarPoly> = (3..=6)
            .map(|m| {
                BivarPoly::parse(&alloc::format!("y^3 - x^{m}")).unwrap()
            })
            .collect();
        let set = batch_lct(&inputs, Field::Complex);
        let got: Vec<Rational> = set
            .entries
            .iter()
            .map(|e| e.outcome.as_ref().unwrap().as_finite().unwrap().clone())
            .collect();
        assert_eq!(got, vec![rat(4, 3), rat(7, 6), rat(16, 15), int(1)]);

        // {y^n - x^(2n) : n = 2..4}
        let inputs: Vec<BivarPoly> = (2..=4)
            .map(|n| BivarPoly::parse(&alloc::format!("y^{n} - x^{}", 2 * n)).unwrap())
            .collect();
        let set = batch_lct(&inputs, Field::Complex);
        let got: Vec<Rational> = set
            .entries
            .iter()
            .map(|e| e.outcome.as_ref().unwrap().as_finite().unwrap().clone())
            .collect();
        assert_eq!(got, vec![rat(3, 2), int(1), rat(3, 4)]);

        assert!(batch_lct(&[], Field::Complex).entries.is_empty());
    }

    #[test]
    fn batch_collects_errors() {
        let set = batch_lct(&[BivarPoly::zero()], Field::Complex);
        assert!(set.entries[0].outcome.is_err());
    }

    #[test]
    fn accumulation_examples() {
        // {2/3 + 2/m : m = 100..300}
        let values: Vec<Rational> = (100..=300i64)
            .rev()
            .map(|m| rat(2, 3) + rat(2, m))
            .collect();
        let found =
            accumulation_points(&values, &rat(1, 50), Field::Complex, 10).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].nearest_c1, rat(2, 3));
        assert_eq!(found[0].count, 201);
        assert_eq!(found[0].gap, rat(2, 300));

        // harmonic tail {2/n : n = 1..20} with the default threshold: the
        // only near-cluster sits by 0 and is too small to report
        let values: Vec<Rational> = (1..=20i64).rev().map(|n| rat(2, n)).collect();
        let found =
            accumulation_points(&values, &rat(1, 100), Field::Complex, 10).unwrap();
        assert!(found.is_empty());

        assert!(accumulation_points(&[], &rat(1, 10), Field::Complex, 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn accumulation_rejects_bad_input() {
        let unsorted = vec![int(2), int(1)];
        assert_eq!(
            accumulation_points(&unsorted, &rat(1, 10), Field::Complex, 1),
            Err(ChainsError::UnsortedInput)
        );
        assert_eq!(
            accumulation_points(&[], &int(0), Field::Complex, 1),
            Err(ChainsError::NonPositiveTolerance)
        );
    }

    #[test]
    fn nearest_c1_examples() {
        assert_eq!(nearest_c1_element(&rat(2, 3), Field::Complex), rat(2, 3));
        assert_eq!(
            nearest_c1_element(&(rat(2, 3) + rat(1, 150)), Field::Complex),
            rat(2, 3)
        );
        // 1/1000 = 2/2000 is itself an element of C(1)
        assert_eq!(nearest_c1_element(&rat(1, 1000), Field::Complex), rat(1, 1000));
        assert_eq!(nearest_c1_element(&Rational::zero(), Field::Complex), Rational::zero());
        assert_eq!(nearest_c1_element(&rat(1, 3), Field::Real), rat(1, 3));
        assert_eq!(nearest_c1_element(&int(3), Field::Complex), int(2));
    }

    #[test]
    fn lattice_examples() {
        let l = lattice_l(1);
        assert_eq!(l.points, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(lattice_l(4).points.len(), 15);
        assert_eq!(lattice_l(10).points.len(), 66);
        for n in 1..=100u32 {
            let expect = ((n as usize + 1) * (n as usize + 2)) / 2;
            assert_eq!(lattice_l(n).points.len(), expect);
        }
    }

    #[test]
    fn ascending_run_examples() {
        // [1, 3/2, 3/2, 3/2] -> one ascending run of length 2, stabilized
        let values = vec![int(1), rat(3, 2), rat(3, 2), rat(3, 2)];
        let runs = ascending_runs(&values);
        assert_eq!(runs[0], AscendingRun { start: 0, len: 2, stabilized: true });
        assert!(runs.iter().all(|r| r.len <= 2));

        // [2, 1, 1/2]: no ascending run of length > 1
        let values = vec![int(2), int(1), rat(1, 2)];
        let runs = ascending_runs(&values);
        assert!(runs.iter().all(|r| r.len == 1));

        assert!(ascending_runs(&[]).is_empty());
    }
}
