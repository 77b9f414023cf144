//! Problem data and the ℓp geometry shared by every solver in the crate.
//!
//! A dispersion instance asks for a point of the unit ℓp-ball maximizing the
//! smallest weighted squared Euclidean distance to a set of anchor points.
//! This module owns the instance type, objective evaluation, feasibility
//! checks, and the closed-form approximation-bound constant.

use crate::{Error, Result};

/// Default feasibility tolerance, relative to the unit-ball radius.
///
/// Downstream projections are iterative, so points that are feasible "for all
/// practical purposes" sit within this distance of the ball.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Norm exponent: a finite `p >= 1` or the max-norm limit.
///
/// All formulas degrade gracefully at the limit: `n^(-1/inf) = 1` and
/// `n^(1-2/inf) = n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// A finite exponent; rejects `p < 1`, NaN, and infinite values
    /// (use [`Exponent::Infinity`] for the max norm).
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "norm exponent must be a finite real >= 1 or infinity, got {p}"
            )));
        }
        Ok(Exponent::Finite(p))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// The exponent as a float, `f64::INFINITY` for the max norm.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// `1/p`, zero for the max norm.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => p.recip(),
            Exponent::Infinity => 0.0,
        }
    }

    /// `n^(-1/p)`: the coordinate scale that puts a sign vector on the unit
    /// ℓp-sphere. Equals 1 for the max norm.
    pub fn unit_sphere_scale(self, n: usize) -> f64 {
        match self {
            Exponent::Finite(p) => (n as f64).powf(-1.0 / p),
            Exponent::Infinity => 1.0,
        }
    }

    /// `n^(1-2/p)`: the largest squared Euclidean norm attainable inside the
    /// unit ℓp-ball (Hölder). Equals `n` for the max norm.
    pub fn euclidean_cap(self, n: usize) -> f64 {
        match self {
            Exponent::Finite(p) => (n as f64).powf(1.0 - 2.0 / p),
            Exponent::Infinity => n as f64,
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "infinity" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other.parse().map_err(|_| {
                    Error::InvalidArgument(format!("cannot parse norm exponent from {other:?}"))
                })?;
                Exponent::finite(p)
            }
        }
    }
}

/// The ℓp-norm of `x`, with overflow-safe scaling for large finite `p`.
///
/// The largest magnitude is factored out before powering, so entries like
/// `|x_i|^1000` never underflow the sum to zero or overflow it to infinity.
pub fn lp_norm(x: &[f64], p: Exponent) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::InvalidArgument(
            "lp_norm of an empty vector".to_string(),
        ));
    }
    let max = x.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    match p {
        Exponent::Infinity => Ok(max),
        Exponent::Finite(p) => {
            if max == 0.0 {
                return Ok(0.0);
            }
            let sum: f64 = x.iter().map(|v| (v.abs() / max).powf(p)).sum();
            Ok(max * sum.powf(p.recip()))
        }
    }
}

/// Squared Euclidean norm.
pub(crate) fn norm2_sq(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Euclidean norm.
pub(crate) fn norm2(x: &[f64]) -> f64 {
    norm2_sq(x).sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A weighted maximin dispersion instance: `m` anchor points in `R^n`, one
/// positive weight per anchor, and the ball exponent `p >= 2`.
///
/// Immutable after construction and safe to share across worker threads.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInstance {
    n: usize,
    p: Exponent,
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl ProblemInstance {
    /// Validates and builds an instance.
    ///
    /// Rejects `p < 2`, empty point sets, dimension mismatches, non-positive
    /// or non-finite weights, and non-finite coordinates.
    pub fn new(
        n: usize,
        p: Exponent,
        points: Vec<Vec<f64>>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension n must be >= 1".into()));
        }
        if let Exponent::Finite(v) = p {
            if v < 2.0 {
                return Err(Error::InvalidArgument(format!(
                    "instances require p >= 2 or p = inf, got p = {v}"
                )));
            }
        }
        if points.is_empty() {
            return Err(Error::InvalidArgument(
                "an instance needs at least one anchor point".into(),
            ));
        }
        if weights.len() != points.len() {
            return Err(Error::InvalidArgument(format!(
                "{} anchor points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        for (i, pt) in points.iter().enumerate() {
            if pt.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: pt.len(),
                });
            }
            if pt.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "anchor point {i} has a non-finite coordinate"
                )));
            }
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "weight {i} must be strictly positive and finite, got {w}"
                )));
            }
        }
        Ok(ProblemInstance {
            n,
            p,
            points,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of anchor points.
    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Euclidean norms of the anchor points, in order.
    pub fn anchor_norms(&self) -> Vec<f64> {
        self.points.iter().map(|pt| norm2(pt)).collect()
    }
}

/// Where a candidate solution came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    SignRounding,
    SdpRounding,
    Oracle,
    External,
}

/// A feasible point together with its objective value and provenance.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub x: Vec<f64>,
    pub objective: f64,
    pub source: Source,
}

/// The closed-form approximation-bound constant.
///
/// `alpha = sqrt(2 ln(m/rho))` and `ratio = (1 - alpha/sqrt(n)) / 2`. The
/// ratio is always below 1/2 and may be negative for small `n` and large `m`;
/// a negative ratio is representable, not an error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundConstant {
    pub rho: f64,
    pub alpha: f64,
    pub ratio: f64,
}

/// Evaluates the bound constant for an `(n, m, rho)` triple.
pub fn bound_constant(n: usize, m: usize, rho: f64) -> Result<BoundConstant> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "bound constant needs n >= 1 and m >= 1".into(),
        ));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "rho must lie in (0, 1), got {rho}"
        )));
    }
    let alpha = (2.0 * (m as f64 / rho).ln()).sqrt();
    let ratio = (1.0 - alpha / (n as f64).sqrt()) / 2.0;
    Ok(BoundConstant { rho, alpha, ratio })
}

/// Evaluates `min_i w_i ||x - x^i||_2^2`.
pub fn evaluate_objective(instance: &ProblemInstance, x: &[f64]) -> Result<f64> {
    objective_argmin(instance, x).map(|(value, _)| value)
}

/// Objective value together with the index attaining the minimum.
///
/// Ties are broken toward the lowest index for deterministic diagnostics.
pub fn objective_argmin(instance: &ProblemInstance, x: &[f64]) -> Result<(f64, usize)> {
    if x.len() != instance.n {
        return Err(Error::DimensionMismatch {
            expected: instance.n,
            actual: x.len(),
        });
    }
    let mut best = f64::INFINITY;
    let mut best_idx = 0;
    for (i, pt) in instance.points.iter().enumerate() {
        let dist_sq: f64 = x
            .iter()
            .zip(pt)
            .map(|(a, b)| {
                let d = a - b;
                d * d
            })
            .sum();
        let value = instance.weights[i] * dist_sq;
        if value < best {
            best = value;
            best_idx = i;
        }
    }
    Ok((best, best_idx))
}

/// True iff `||x||_p <= 1 + tol`.
pub fn is_feasible(instance: &ProblemInstance, x: &[f64], tol: f64) -> Result<bool> {
    if x.len() != instance.n {
        return Err(Error::DimensionMismatch {
            expected: instance.n,
            actual: x.len(),
        });
    }
    if tol < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "feasibility tolerance must be >= 0, got {tol}"
        )));
    }
    Ok(lp_norm(x, instance.p)? <= 1.0 + tol)
}

/// Checkable Hölder predicate: `||x||_2^2 <= n^(1-2/p) + 1e-9`.
///
/// Holds for every feasible `x`; test suites sample feasible points and
/// assert it.
pub fn holder_norm_cap(instance: &ProblemInstance, x: &[f64]) -> bool {
    norm2_sq(x) <= instance.p.euclidean_cap(instance.n) + 1e-9
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_2_1() -> ProblemInstance {
        ProblemInstance::new(
            2,
            Exponent::Finite(2.0),
            vec![vec![1.0, 2.0], vec![2.0, 3.0], vec![1.0, 5.0]],
            vec![1.0, 1.0, 1.0],
        )
        .unwrap()
    }

    #[test]
    fn objective_vanishes_at_an_anchor() {
        let inst = example_2_1();
        let x = inst.point(0).to_vec();
        assert_eq!(evaluate_objective(&inst, &x).unwrap(), 0.0);
    }

    #[test]
    fn objective_unit_circle_point() {
        let inst =
            ProblemInstance::new(2, Exponent::Finite(2.0), vec![vec![0.0, 0.0]], vec![1.0])
                .unwrap();
        let f = evaluate_objective(&inst, &[0.6, 0.8]).unwrap();
        assert!((f - 1.0).abs() < 1e-15);
    }

    #[test]
    fn objective_example_instance_at_origin() {
        // min{5, 13, 26} attained by the first anchor
        let inst = example_2_1();
        let (f, idx) = objective_argmin(&inst, &[0.0, 0.0]).unwrap();
        assert_eq!(f, 5.0);
        assert_eq!(idx, 0);
    }

    #[test]
    fn objective_rejects_dimension_mismatch() {
        let inst = example_2_1();
        assert!(matches!(
            evaluate_objective(&inst, &[0.0]),
            Err(Error::DimensionMismatch { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn argmin_tie_breaks_to_lowest_index() {
        let inst = ProblemInstance::new(
            1,
            Exponent::Finite(2.0),
            vec![vec![1.0], vec![-1.0]],
            vec![1.0, 1.0],
        )
        .unwrap();
        let (_, idx) = objective_argmin(&inst, &[0.0]).unwrap();
        assert_eq!(idx, 0);
    }

    #[test]
    fn lp_norm_basics() {
        assert_eq!(lp_norm(&[3.0, 4.0], Exponent::Finite(2.0)).unwrap(), 5.0);
        assert_eq!(lp_norm(&[1.0, -1.0, 1.0], Exponent::Infinity).unwrap(), 1.0);
        let cube_root_2 = lp_norm(&[1.0, 1.0], Exponent::Finite(3.0)).unwrap();
        assert!((cube_root_2 - 2.0_f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn lp_norm_large_p_does_not_underflow() {
        let x = vec![1e-3, 5e-4, -1e-3];
        let norm = lp_norm(&x, Exponent::Finite(1000.0)).unwrap();
        assert!(norm > 0.0 && norm.is_finite());
        // for large p the norm approaches the max magnitude from above
        assert!(norm >= 1e-3 && norm < 1.1e-3);
    }

    #[test]
    fn lp_norm_rejects_empty() {
        assert!(lp_norm(&[], Exponent::Finite(2.0)).is_err());
    }

    #[test]
    fn feasibility_of_scaled_sign_vectors() {
        for &(n, p) in &[(2, 2.0), (3, 3.0), (5, 10.0)] {
            let inst = ProblemInstance::new(
                n,
                Exponent::Finite(p),
                vec![vec![0.0; n]],
                vec![1.0],
            )
            .unwrap();
            let s = inst.p().unit_sphere_scale(n);
            let x: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { s } else { -s }).collect();
            assert!(is_feasible(&inst, &x, 1e-12).unwrap());
        }
    }

    #[test]
    fn feasibility_rejects_outside_ball_and_accepts_origin() {
        let inst =
            ProblemInstance::new(3, Exponent::Finite(2.0), vec![vec![0.0; 3]], vec![1.0])
                .unwrap();
        assert!(!is_feasible(&inst, &[1.01, 0.0, 0.0], 1e-9).unwrap());
        assert!(is_feasible(&inst, &[0.0, 0.0, 0.0], 0.0).unwrap());
    }

    #[test]
    fn bound_constant_reference_values() {
        // frozen from a 30-digit evaluation of sqrt(2 ln(m/rho)) and
        // (1 - alpha/sqrt(n))/2 at n=20, m=30, rho=0.9999
        let b = bound_constant(20, 30, 0.9999).unwrap();
        assert!((b.alpha - 2.608_178_439_701_735).abs() < 1e-12);
        assert!((b.ratio - 0.208_396_785_568_879_2).abs() < 1e-12);
    }

    #[test]
    fn bound_ratio_approaches_half() {
        // alpha/sqrt(n) -> 0 as n grows
        let b = bound_constant(10_000_000, 30, 0.9999).unwrap();
        assert!(b.ratio > 0.499 && b.ratio < 0.5);
        // m=1, rho -> 1 drives alpha -> 0
        let b = bound_constant(5, 1, 1.0 - 1e-12).unwrap();
        assert!(b.alpha < 1e-5);
        assert!((b.ratio - 0.5).abs() < 1e-5);
        assert!(b.ratio < 0.5);
    }

    #[test]
    fn bound_constant_rejects_bad_rho() {
        assert!(bound_constant(2, 3, 0.0).is_err());
        assert!(bound_constant(2, 3, 1.0).is_err());
        assert!(bound_constant(2, 3, -0.5).is_err());
    }

    #[test]
    fn ratio_can_be_negative() {
        let b = bound_constant(2, 100, 0.5).unwrap();
        assert!(b.ratio < 0.0);
    }

    #[test]
    fn holder_cap_examples() {
        // scaled sign vector attains the cap exactly
        let n = 4;
        let inst = ProblemInstance::new(
            n,
            Exponent::Finite(3.0),
            vec![vec![0.0; n]],
            vec![1.0],
        )
        .unwrap();
        let s = inst.p().unit_sphere_scale(n);
        let x = vec![s; n];
        assert!(holder_norm_cap(&inst, &x));
        let gap = norm2_sq(&x) - inst.p().euclidean_cap(n);
        assert!(gap.abs() < 1e-12);

        // p = inf with the all-ones vector hits n
        let inst =
            ProblemInstance::new(20, Exponent::Infinity, vec![vec![0.0; 20]], vec![1.0])
                .unwrap();
        assert!(holder_norm_cap(&inst, &vec![1.0; 20]));
        assert_eq!(inst.p().euclidean_cap(20), 20.0);
    }

    #[test]
    fn instance_validation() {
        assert!(ProblemInstance::new(
            2,
            Exponent::Finite(1.5),
            vec![vec![0.0, 0.0]],
            vec![1.0]
        )
        .is_err());
        assert!(Exponent::finite(0.5).is_err());
        assert!(ProblemInstance::new(
            2,
            Exponent::Finite(2.0),
            vec![vec![0.0, 0.0]],
            vec![0.0]
        )
        .is_err());
        assert!(ProblemInstance::new(
            2,
            Exponent::Finite(2.0),
            vec![vec![0.0]],
            vec![1.0]
        )
        .is_err());
        assert!(ProblemInstance::new(2, Exponent::Finite(2.0), vec![], vec![]).is_err());
    }

    #[test]
    fn exponent_parsing_and_display() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("3".parse::<Exponent>().unwrap(), Exponent::Finite(3.0));
        assert_eq!(Exponent::Finite(3.0).to_string(), "3");
        assert_eq!(Exponent::Infinity.to_string(), "inf");
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
    }
}
