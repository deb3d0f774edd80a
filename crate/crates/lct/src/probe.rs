//! Monte Carlo divergence probe: estimates `∫_{B_r} |f|^{-c}` over a nest of
//! dyadic radial shells and classifies the trend across shrinking radii.
//!
//! The probe is a numerical cross-check for the exact engine, never an
//! authority: near the threshold the integral diverges logarithmically and no
//! finite sample decides it, so verdicts are only contractual when `c` is at
//! least ~10% away from the exact index.
//!
//! Sampling is stratified. The ball of radius `r` is split into shells
//! `[r/2^{i+1}, r/2^i]` (the innermost core ball is omitted; the integrand is
//! unbounded there and every shell nest approaches it in the limit instead).
//! Each shell gets its own `ChaCha8Rng` seeded by `seed ^ depth`, where
//! `depth` is the shell's dyadic depth below the outermost configured radius.
//! Keying the seed to the geometric shell rather than its position in one
//! estimate means the radius levels of a dyadic nest share their common
//! shells sample-for-sample; successive estimates then differ only by the
//! shells actually added or dropped, which makes the trend test sharp.

use lct_core::{BivarPoly, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Values of `|f|` below this are clamped up rather than rejected: estimates
/// can only shrink, so a DIVERGING verdict is conservative.
pub const CLAMP: f64 = 1e-300;

/// Probe parameters. `radii` should be a decreasing dyadic nest
/// (`r, r/2, r/4, ...`) for the shared-shell variance reduction to engage;
/// any decreasing positive list is accepted.
#[derive(Clone, Debug)]
pub struct ProbeConfig {
    pub field: Field,
    pub c: f64,
    pub radii: Vec<f64>,
    pub samples_per_shell: usize,
    pub seed: u64,
    pub shells_per_radius: u32,
}

impl ProbeConfig {
    /// Defaults matched to the acceptance setup: three dyadic radius levels
    /// a factor of 4 apart (adjacent levels still share half their shells,
    /// and each comparison spans four shell depths of growth), four shells
    /// each, `10^5` samples per shell.
    pub fn new(field: Field, c: f64) -> Self {
        ProbeConfig {
            field,
            c,
            radii: vec![1.0, 0.25, 0.0625],
            samples_per_shell: 100_000,
            seed: 0xC0FFEE,
            shells_per_radius: 4,
        }
    }
}

/// Trend classification; never a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    ConvergingTrend,
    DivergingTrend,
    Inconclusive,
}

impl core::fmt::Display for Trend {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Trend::ConvergingTrend => write!(f, "CONVERGING_TREND"),
            Trend::DivergingTrend => write!(f, "DIVERGING_TREND"),
            Trend::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// One radius level's estimate of `∫ |f|^{-c}` with its standard error.
#[derive(Clone, Copy, Debug)]
pub struct RadiusEstimate {
    pub radius: f64,
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug)]
pub struct ProbeVerdict {
    pub estimates: Vec<RadiusEstimate>,
    pub verdict: Trend,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeError {
    InvalidConfig(String),
    BadInput(String),
}

impl core::fmt::Display for ProbeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ProbeError::InvalidConfig(m) => write!(f, "invalid probe config: {m}"),
            ProbeError::BadInput(m) => write!(f, "bad probe input: {m}"),
        }
    }
}

impl std::error::Error for ProbeError {}

/// Flat double-precision view of a polynomial, for the inner sampling loop.
struct TermTable {
    terms: Vec<(i32, i32, f64)>,
}

impl TermTable {
    fn new(f: &BivarPoly) -> Self {
        let terms = f
            .terms()
            .map(|(&(p, q), c)| (p as i32, q as i32, lct_core::rational::to_f64(c)))
            .collect();
        TermTable { terms }
    }

    fn abs_real(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for &(p, q, c) in &self.terms {
            acc += c * x.powi(p) * y.powi(q);
        }
        acc.abs()
    }

    fn abs_complex(&self, x: (f64, f64), y: (f64, f64)) -> f64 {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &(p, q, c) in &self.terms {
            let (a, b) = cpow(x, p);
            let (u, v) = cpow(y, q);
            let (m, n) = (a * u - b * v, a * v + b * u);
            re += c * m;
            im += c * n;
        }
        re.hypot(im)
    }
}

fn cpow((re, im): (f64, f64), k: i32) -> (f64, f64) {
    let (mut ar, mut ai) = (1.0f64, 0.0f64);
    for _ in 0..k {
        let nr = ar * re - ai * im;
        ai = ar * im + ai * re;
        ar = nr;
    }
    (ar, ai)
}

fn validate(f: &BivarPoly, cfg: &ProbeConfig) -> Result<(), ProbeError> {
    if f.is_zero() {
        return Err(ProbeError::BadInput("zero polynomial".into()));
    }
    if !f.coeff(0, 0).eq(&num_traits::Zero::zero()) {
        return Err(ProbeError::BadInput("f(0,0) must vanish".into()));
    }
    if !(cfg.c > 0.0) {
        return Err(ProbeError::InvalidConfig("c must be positive".into()));
    }
    if cfg.radii.is_empty()
        || cfg.radii.iter().any(|r| !(*r > 0.0))
        || cfg.radii.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(ProbeError::InvalidConfig(
            "radii must be strictly decreasing and positive".into(),
        ));
    }
    if cfg.samples_per_shell == 0 || cfg.shells_per_radius == 0 {
        return Err(ProbeError::InvalidConfig(
            "samples_per_shell and shells_per_radius must be positive".into(),
        ));
    }
    Ok(())
}

/// Dyadic depth of the shell `[r_out/2, r_out]` below the outermost radius;
/// used to key the shell's RNG seed.
fn shell_depth(cfg: &ProbeConfig, r_out: f64) -> u64 {
    (cfg.radii[0] / r_out).log2().round() as i64 as u64
}

/// Samples one shell: returns its contribution to the estimate and to the
/// squared standard error. Deterministic given the seed.
fn shell_contribution(
    table: &TermTable,
    field: Field,
    c: f64,
    r_in: f64,
    r_out: f64,
    n: usize,
    seed: u64,
) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Radius density ∝ r^{dim-1}: invert the CDF with exponent dim.
    let (k, volume) = match field {
        Field::Real => (2, std::f64::consts::PI * (r_out * r_out - r_in * r_in)),
        Field::Complex => {
            let v = std::f64::consts::PI.powi(2) / 2.0 * (r_out.powi(4) - r_in.powi(4));
            (4, v)
        }
    };
    let (lo, hi) = (r_in.powi(k), r_out.powi(k));
    let mut sum = 0.0f64;
    let mut sumsq = 0.0f64;
    for _ in 0..n {
        let u: f64 = rng.gen();
        let rad = (lo + u * (hi - lo)).powf(1.0 / k as f64);
        let value = match field {
            Field::Real => {
                let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
                table.abs_real(rad * theta.cos(), rad * theta.sin())
            }
            Field::Complex => {
                // uniform direction on S^3 via normalized Gaussians
                let mut g = [0.0f64; 4];
                for pair in g.chunks_mut(2) {
                    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
                    let u2: f64 = rng.gen();
                    let m = (-2.0 * u1.ln()).sqrt();
                    pair[0] = m * (std::f64::consts::TAU * u2).cos();
                    pair[1] = m * (std::f64::consts::TAU * u2).sin();
                }
                let norm = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]).sqrt();
                let s = rad / norm.max(f64::MIN_POSITIVE);
                table.abs_complex((g[0] * s, g[1] * s), (g[2] * s, g[3] * s))
            }
        };
        let w = value.max(CLAMP).powf(-c);
        sum += w;
        sumsq += w * w;
    }
    let mean = sum / n as f64;
    let var = (sumsq / n as f64 - mean * mean).max(0.0) / n as f64;
    (volume * mean, volume * volume * var)
}

/// Estimates `∫_{B_radius} |f|^{-c}` (innermost core ball omitted) by
/// stratified sampling over `shells_per_radius` dyadic shells. Returns the
/// estimate with its standard error. Deterministic given the config; shells
/// run in parallel but reduce in a fixed order.
pub fn mc_estimate(
    f: &BivarPoly,
    cfg: &ProbeConfig,
    radius: f64,
) -> Result<(f64, f64), ProbeError> {
    validate(f, cfg)?;
    if !(radius > 0.0) {
        return Err(ProbeError::InvalidConfig("radius must be positive".into()));
    }
    let table = TermTable::new(f);
    let shells: Vec<(f64, f64)> = (0..cfg.shells_per_radius)
        .map(|i| {
            let r_out = radius / f64::powi(2.0, i as i32);
            (r_out / 2.0, r_out)
        })
        .collect();
    let parts: Vec<(f64, f64)> = shells
        .par_iter()
        .map(|&(r_in, r_out)| {
            let seed = cfg.seed ^ shell_depth(cfg, r_out);
            shell_contribution(
                &table,
                cfg.field,
                cfg.c,
                r_in,
                r_out,
                cfg.samples_per_shell,
                seed,
            )
        })
        .collect();
    let estimate: f64 = parts.iter().map(|p| p.0).sum();
    let variance: f64 = parts.iter().map(|p| p.1).sum();
    Ok((estimate, variance.sqrt()))
}

/// Runs the shell estimator at every configured radius level and classifies
/// the trend of the estimates as the radius shrinks:
///
/// * DIVERGING_TREND — every successive estimate increases by more than two
///   standard errors of the difference (deeper shells dominate; the tail is
///   growing);
/// * CONVERGING_TREND — no successive estimate increases significantly (the
///   tail contributions are flat or fading);
/// * INCONCLUSIVE — mixed signals.
///
/// For a dyadic radius nest, successive levels share all but their outermost
/// and innermost shells; shared shells are sampled once (same seed, same
/// geometry), so they cancel exactly in each difference and the significance
/// test only carries the variance of the shells actually exchanged.
pub fn divergence_probe_with(f: &BivarPoly, cfg: &ProbeConfig) -> Result<ProbeVerdict, ProbeError> {
    validate(f, cfg)?;
    let table = TermTable::new(f);
    // each level's shells, keyed by the bit pattern of the outer radius
    let levels: Vec<Vec<(u64, f64, f64)>> = cfg
        .radii
        .iter()
        .map(|&radius| {
            (0..cfg.shells_per_radius)
                .map(|i| {
                    let r_out = radius / f64::powi(2.0, i as i32);
                    (r_out.to_bits(), r_out / 2.0, r_out)
                })
                .collect()
        })
        .collect();
    // unique shells in first-appearance order, evaluated in parallel
    let mut unique: Vec<(u64, f64, f64)> = Vec::new();
    for level in &levels {
        for s in level {
            if !unique.iter().any(|u| u.0 == s.0) {
                unique.push(*s);
            }
        }
    }
    let computed: Vec<(u64, (f64, f64))> = unique
        .par_iter()
        .map(|&(key, r_in, r_out)| {
            let seed = cfg.seed ^ shell_depth(cfg, r_out);
            let out = shell_contribution(
                &table,
                cfg.field,
                cfg.c,
                r_in,
                r_out,
                cfg.samples_per_shell,
                seed,
            );
            (key, out)
        })
        .collect();
    let lookup = |key: u64| computed.iter().find(|c| c.0 == key).unwrap().1;
    let estimates: Vec<RadiusEstimate> = cfg
        .radii
        .iter()
        .zip(&levels)
        .map(|(&radius, level)| {
            let (estimate, variance) = level
                .iter()
                .fold((0.0, 0.0), |(e, v), &(key, _, _)| {
                    let (ce, cv) = lookup(key);
                    (e + ce, v + cv)
                });
            RadiusEstimate {
                radius,
                estimate,
                stderr: variance.sqrt(),
            }
        })
        .collect();
    let mut rises = 0usize;
    for (j, w) in estimates.windows(2).enumerate() {
        // variance of the difference: shells in exactly one of the two levels
        let (prev, next) = (&levels[j], &levels[j + 1]);
        let mut diff_var = 0.0;
        for &(key, _, _) in prev.iter().filter(|s| !next.iter().any(|t| t.0 == s.0)) {
            diff_var += lookup(key).1;
        }
        for &(key, _, _) in next.iter().filter(|s| !prev.iter().any(|t| t.0 == s.0)) {
            diff_var += lookup(key).1;
        }
        if w[1].estimate - w[0].estimate > 2.0 * diff_var.sqrt() {
            rises += 1;
        }
    }
    let verdict = if rises == estimates.len() - 1 && rises > 0 {
        Trend::DivergingTrend
    } else if rises == 0 {
        Trend::ConvergingTrend
    } else {
        Trend::Inconclusive
    };
    Ok(ProbeVerdict { estimates, verdict })
}

/// Probe with the default configuration (three dyadic radius levels, four
/// shells each, `10^5` samples per shell, fixed seed).
pub fn divergence_probe(
    f: &BivarPoly,
    c: &lct_core::Rational,
    field: Field,
) -> Result<ProbeVerdict, ProbeError> {
    divergence_probe_with(f, &ProbeConfig::new(field, lct_core::rational::to_f64(c)))
}
