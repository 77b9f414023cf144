//! Brute-force ground truth for small instances.
//!
//! Enumerates the regular grid `{-1, -1+h, ..., 1}^n` clipped to the ℓp-ball
//! and takes the best feasible node. The returned value is a certified lower
//! bound on the optimum; [`grid_envelope`] gives a conservative additive
//! radius `eps(h)` with `optimum <= value + eps(h)`, so the pair brackets the
//! true value. Dimension is capped at [`MAX_ORACLE_DIM`] to keep the
//! enumeration honest about its cost.

use crate::model::{self, evaluate_objective, is_feasible, lp_norm, ProblemInstance};
use crate::{Error, Result};

/// Hard cap on the dimension accepted by [`grid_search`].
pub const MAX_ORACLE_DIM: usize = 4;

/// Outcome of a brute-force search.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Best objective value found; a lower bound on the optimum.
    pub value: f64,
    pub argmax: Vec<f64>,
    pub grid_resolution: f64,
    /// Whether local polishing contributed to `value`.
    pub polished: bool,
}

/// Exhaustive search over the dyadic-friendly grid of spacing `resolution`.
///
/// Grids nest under halving (`-1 + j*h = -1 + 2j*(h/2)`), so halving the
/// resolution never decreases the returned value.
pub fn grid_search(instance: &ProblemInstance, resolution: f64) -> Result<OracleResult> {
    let n = instance.n();
    if n > MAX_ORACLE_DIM {
        return Err(Error::TooLarge {
            n,
            max_n: MAX_ORACLE_DIM,
        });
    }
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be positive, got {resolution}"
        )));
    }

    let mut axis = Vec::new();
    let mut i = 0u64;
    loop {
        let v = -1.0 + i as f64 * resolution;
        if v > 1.0 + 1e-12 {
            break;
        }
        axis.push(v.min(1.0));
        i += 1;
    }

    let mut best = f64::NEG_INFINITY;
    let mut argmax = None;
    let mut node = vec![0.0; n];
    search_axis(instance, &axis, &mut node, 0, &mut best, &mut argmax);

    let argmax = argmax.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no feasible grid node at resolution {resolution}; refine the grid"
        ))
    })?;
    Ok(OracleResult {
        value: best,
        argmax,
        grid_resolution: resolution,
        polished: false,
    })
}

fn search_axis(
    instance: &ProblemInstance,
    axis: &[f64],
    node: &mut Vec<f64>,
    depth: usize,
    best: &mut f64,
    argmax: &mut Option<Vec<f64>>,
) {
    if depth == instance.n() {
        // exact boundary nodes such as (±1, 0, ...) stay in
        if !is_feasible(instance, node, 1e-12).unwrap_or(false) {
            return;
        }
        let value = evaluate_objective(instance, node).expect("node has length n");
        if value > *best {
            *best = value;
            *argmax = Some(node.clone());
        }
        return;
    }
    for &v in axis {
        node[depth] = v;
        search_axis(instance, axis, node, depth + 1, best, argmax);
    }
}

/// Conservative additive envelope `eps(h)` for a grid of spacing `h`.
///
/// Shrinking each coordinate of an optimizer toward zero onto the grid moves
/// it by at most `h` per axis while staying inside the ball, which perturbs
/// each squared distance by at most `2*diam*h*sqrt(n) + (h*sqrt(n))^2` with
/// `diam = 1 + max_i ||x^i||_2`.
pub fn grid_envelope(instance: &ProblemInstance, resolution: f64) -> f64 {
    let n = instance.n() as f64;
    let diam = 1.0
        + instance
            .anchor_norms()
            .iter()
            .fold(0.0_f64, |acc, &v| acc.max(v));
    let shift = resolution * n.sqrt();
    let max_weight = instance
        .weights()
        .iter()
        .fold(0.0_f64, |acc, &w| acc.max(w));
    max_weight * (2.0 * diam * shift + shift * shift)
}

/// Best-effort local ascent from a feasible starting point.
///
/// Pattern search over signed coordinate steps with halving step sizes;
/// points that leave the ball are pulled back radially. The result never has
/// a smaller objective than the start.
pub fn polish(instance: &ProblemInstance, x0: &[f64], iters: usize) -> Result<Vec<f64>> {
    if x0.len() != instance.n() {
        return Err(Error::DimensionMismatch {
            expected: instance.n(),
            actual: x0.len(),
        });
    }
    let mut x = x0.to_vec();
    pull_inside(instance, &mut x)?;
    let mut fx = evaluate_objective(instance, &x)?;
    let mut step = 0.25;
    for _ in 0..iters {
        let mut improved = false;
        for j in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[j] += dir * step;
                pull_inside(instance, &mut y)?;
                let fy = evaluate_objective(instance, &y)?;
                if fy > fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-9 {
                break;
            }
        }
    }
    Ok(x)
}

fn pull_inside(instance: &ProblemInstance, x: &mut [f64]) -> Result<()> {
    let norm = lp_norm(x, instance.p())?;
    if norm > 1.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    Ok(())
}

/// Grid search followed by polishing from the grid argmax.
pub fn refine(instance: &ProblemInstance, base: &OracleResult, iters: usize) -> Result<OracleResult> {
    let x = polish(instance, &base.argmax, iters)?;
    let value = evaluate_objective(instance, &x)?;
    if value > base.value {
        Ok(OracleResult {
            value,
            argmax: x,
            grid_resolution: base.grid_resolution,
            polished: true,
        })
    } else {
        Ok(OracleResult {
            polished: true,
            ..base.clone()
        })
    }
}
