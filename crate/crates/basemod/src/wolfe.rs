//! Wolfe's minimum-norm-point algorithm over the base polytope, driven by
//! the matroid greedy oracle. This is the floating-point cross-check for the
//! exact principal-partition computation: the minimum-norm point of the base
//! polytope is the optimal expected usage vector η*, and its squared norm is
//! the minimum expected overlap.
//!
//! Vertices of the polytope are 0/1 base indicators, stored as bitmasks, so
//! Gram entries are exact small integers and duplicate detection is exact.
//! The algorithm is finitely convergent; the gap tolerance is only a
//! termination guard and the final iterate is an affine minimizer computed to
//! machine precision.

use crate::error::{Error, Result};
use crate::linalg::f64_solve;
use crate::matroid::{bits, Mask, Matroid};

/// Termination threshold on the Wolfe gap ⟨x, x⟩ − min_v ⟨x, v⟩.
pub const GAP_TOL: f64 = 1e-9;

const MAX_MAJOR: usize = 100_000;
/// Corral weights at or below this are treated as zero and dropped.
const WEIGHT_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct WolfeResult {
    /// The minimum-norm point of the base polytope (≈ η*).
    pub eta: Vec<f64>,
    /// Final duality gap ⟨x, x⟩ − ⟨x, s⟩ at termination.
    pub gap: f64,
    /// Major iterations used.
    pub iterations: usize,
    /// Final corral: bases with their convex weights (an approximate optimal
    /// pmf on bases).
    pub corral: Vec<(Mask, f64)>,
}

/// Minimum-weight base for f64 weights, ties by element index.
fn greedy_base(m: &Matroid, w: &[f64]) -> Mask {
    m.min_weight_base_by(|a, b| w[a].total_cmp(&w[b]).then(a.cmp(&b)))
}

fn point_of(n: usize, corral: &[Mask], lambda: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for (&v, &l) in corral.iter().zip(lambda) {
        for i in bits(v) {
            x[i] += l;
        }
    }
    x
}

/// Affine minimizer of ‖·‖² over the affine hull of the corral, via the
/// bordered Gram system. Returns None when the corral is affinely dependent.
fn affine_minimizer(corral: &[Mask]) -> Option<Vec<f64>> {
    let k = corral.len();
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = 2.0 * (corral[i] & corral[j]).count_ones() as f64;
        }
        a[i][k] = 1.0;
        a[k][i] = 1.0;
    }
    let mut b = vec![0.0; k + 1];
    b[k] = 1.0;
    let sol = f64_solve(&a, &b)?;
    Some(sol[..k].to_vec())
}

/// Run Wolfe's algorithm on the base polytope of `m`.
pub fn min_norm_point(m: &Matroid, tol: f64) -> Result<WolfeResult> {
    let n = m.size();
    let v0 = greedy_base(m, &vec![0.0; n]);
    let mut corral: Vec<Mask> = vec![v0];
    let mut lambda: Vec<f64> = vec![1.0];
    let mut x = point_of(n, &corral, &lambda);

    for major in 0..MAX_MAJOR {
        let s = greedy_base(m, &x);
        let xx: f64 = x.iter().map(|v| v * v).sum();
        let xs: f64 = bits(s).map(|i| x[i]).sum();
        let gap = xx - xs;
        if gap <= tol {
            return Ok(finish(x, gap, major, corral, lambda));
        }
        if corral.contains(&s) {
            // the oracle re-proposed a corral vertex with the gap still open:
            // floating point has run out of resolution
            return Err(Error::Resource(format!(
                "min-norm point stalled at gap {gap:.3e} (tolerance {tol:.1e})"
            )));
        }
        corral.push(s);
        lambda.push(0.0);

        // minor cycle: restore a corral whose affine minimizer has positive
        // weights
        loop {
            let Some(alpha) = affine_minimizer(&corral) else {
                // affinely dependent corral: the new vertex added nothing
                corral.pop();
                lambda.pop();
                let gap2 = gap.max(0.0);
                if gap2 <= tol * 10.0 {
                    return Ok(finish(x, gap2, major, corral, lambda));
                }
                return Err(Error::Resource(format!(
                    "min-norm point: affinely dependent corral at gap {gap2:.3e}"
                )));
            };
            if alpha.iter().all(|&v| v > WEIGHT_EPS) {
                lambda = alpha;
                x = point_of(n, &corral, &lambda);
                break;
            }
            // step toward the affine minimizer until a weight hits zero
            let mut theta = 1.0f64;
            for (&l, &a) in lambda.iter().zip(&alpha) {
                if a <= WEIGHT_EPS {
                    let denom = l - a;
                    if denom > 0.0 {
                        theta = theta.min(l / denom);
                    }
                }
            }
            let mut next_c = Vec::with_capacity(corral.len());
            let mut next_l = Vec::with_capacity(corral.len());
            for ((&v, &l), &a) in corral.iter().zip(&lambda).zip(&alpha) {
                let w = theta * a + (1.0 - theta) * l;
                if w > WEIGHT_EPS {
                    next_c.push(v);
                    next_l.push(w);
                }
            }
            corral = next_c;
            lambda = next_l;
            x = point_of(n, &corral, &lambda);
        }
    }
    Err(Error::Resource(format!(
        "min-norm point did not converge in {MAX_MAJOR} iterations"
    )))
}

fn finish(
    x: Vec<f64>,
    gap: f64,
    iterations: usize,
    corral: Vec<Mask>,
    lambda: Vec<f64>,
) -> WolfeResult {
    // renormalize the convex weights against accumulated drift
    let total: f64 = lambda.iter().sum();
    let corral = corral
        .into_iter()
        .zip(lambda)
        .map(|(v, l)| (v, l / total))
        .collect();
    WolfeResult { eta: x, gap, iterations, corral }
}
