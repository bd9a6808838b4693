//! Gauss-Jacobi quadrature on [0, 1] with weight t^q (1-t)^p.
//!
//! The Euler integral representations used here have integrable endpoint
//! singularities with exactly the Jacobi exponents, so the quadrature weight
//! absorbs them and the remaining integrand is smooth.
//!
//! Nodes and weights come from the Golub-Welsch eigenvalue method: the
//! symmetric tridiagonal Jacobi matrix built from the three-term recurrence
//! of the (monic) Jacobi polynomials is diagonalized by an implicit-shift QL
//! sweep that also accumulates the first eigenvector component of each
//! eigenvalue, which squares to the quadrature weight.

use crate::gamma::log_gamma;
use crate::{Error, Result};

/// A quadrature rule on [0, 1] for integrals of t^q (1-t)^p f(t).
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussJacobi {
    /// `exp_at_zero` = q > -1, `exp_at_one` = p > -1.
    ///
    /// The weights integrate the weight function itself:
    /// sum(weights) = B(q+1, p+1).
    pub fn new(n: usize, exp_at_zero: f64, exp_at_one: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("Gauss-Jacobi rule needs at least 2 nodes"));
        }
        if !(exp_at_zero > -1.0) || !(exp_at_one > -1.0) {
            return Err(Error::domain(format!(
                "Jacobi exponents must exceed -1, got ({exp_at_zero}, {exp_at_one})"
            )));
        }
        // standard form on [-1, 1]: (1-u)^alpha (1+u)^beta
        let alpha = exp_at_one;
        let beta = exp_at_zero;
        let ab = alpha + beta;

        let mut diag = vec![0.0_f64; n];
        let mut off = vec![0.0_f64; n];
        diag[0] = (beta - alpha) / (ab + 2.0);
        for k in 1..n {
            let kf = k as f64;
            let denom = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
            diag[k] = (beta * beta - alpha * alpha) / denom;
            let num = if k == 1 {
                4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
            } else {
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                    / ((2.0 * kf + ab).powi(2) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab - 1.0))
            };
            off[k - 1] = num.sqrt();
        }
        // zeroth moment on [-1,1]: 2^(a+b+1) B(a+1, b+1)
        let ln_mu0 = (ab + 1.0) * std::f64::consts::LN_2 + log_gamma(alpha + 1.0)?
            + log_gamma(beta + 1.0)?
            - log_gamma(ab + 2.0)?;
        let mu0 = ln_mu0.exp();

        let mut first_row = vec![0.0_f64; n];
        first_row[0] = 1.0;
        imtqlx(&mut diag, &mut off, &mut first_row)?;

        // map u in [-1,1] to t = (1+u)/2; d t-weight = 2^-(a+b+1) u-weight
        let scale = (-(ab + 1.0) * std::f64::consts::LN_2).exp();
        let nodes = diag.iter().map(|u| 0.5 * (1.0 + u)).collect();
        let weights = first_row
            .iter()
            .map(|v| mu0 * v * v * scale)
            .collect();
        Ok(GaussJacobi { nodes, weights })
    }
}

/// Implicit-shift QL for a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e` the subdiagonal (e[n-1] ignored), `z` a vector
/// that is rotated along; on return `d` carries ascending eigenvalues and `z`
/// the correspondingly permuted accumulated components.
fn imtqlx(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let prec = f64::EPSILON;
    for l in 0..n {
        let mut iter = 0;
        loop {
            // find a negligible subdiagonal element
            let mut m = l;
            while m + 1 < n {
                if e[m].abs() <= prec * (d[m].abs() + d[m + 1].abs()) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::domain("tridiagonal QL failed to converge"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + 1.0).sqrt();
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                if f.abs() >= g.abs() {
                    c = g / f;
                    r = (c * c + 1.0).sqrt();
                    e[i + 1] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = (s * s + 1.0).sqrt();
                    e[i + 1] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // insertion sort ascending, permuting z along
    for i in 1..n {
        let dv = d[i];
        let zv = z[i];
        let mut j = i;
        while j > 0 && d[j - 1] > dv {
            d[j] = d[j - 1];
            z[j] = z[j - 1];
            j -= 1;
        }
        d[j] = dv;
        z[j] = zv;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::pochhammer;

    /// The rule must reproduce the exact monomial moments
    /// int t^q (1-t)^p t^k dt / B(q+1, p+1) = (q+1)_k / (q+p+2)_k.
    #[test]
    fn monomial_moments_exact() {
        for &(q, p) in &[(-0.75, -0.5), (-0.5, -0.9), (0.3, -0.25), (1.2, 0.8)] {
            let rule = GaussJacobi::new(24, q, p).unwrap();
            let norm: f64 = rule.weights.iter().sum();
            for k in 0..20 {
                let approx: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(t, w)| w * t.powi(k as i32))
                    .sum::<f64>()
                    / norm;
                let exact = pochhammer(q + 1.0, k) / pochhammer(q + p + 2.0, k);
                assert!(
                    (approx - exact).abs() < 1e-13 * (1.0 + exact.abs()),
                    "q={q} p={p} k={k}: {approx} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn weight_sum_is_beta() {
        let (b, c) = (0.25_f64, 0.5_f64);
        let rule = GaussJacobi::new(48, b - 1.0, c - b - 1.0).unwrap();
        let sum: f64 = rule.weights.iter().sum();
        let beta = (log_gamma(b).unwrap() + log_gamma(c - b).unwrap() - log_gamma(c).unwrap()).exp();
        assert!((sum - beta).abs() < 1e-13 * beta);
    }

    #[test]
    fn nodes_inside_unit_interval_and_sorted() {
        let rule = GaussJacobi::new(48, -0.5, -0.75).unwrap();
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(rule.nodes.iter().all(|&t| t > 0.0 && t < 1.0));
        assert!(rule.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(GaussJacobi::new(8, -1.0, 0.0).is_err());
        assert!(GaussJacobi::new(1, 0.0, 0.0).is_err());
    }
}
