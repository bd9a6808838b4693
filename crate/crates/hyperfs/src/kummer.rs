//! Confluent hypergeometric function M(b; c; z) on the nonpositive real axis,
//! the scalar factor of the 1-D Laplace representation of F_A.
//!
//! For moderate |z| the Kummer transformation M(b;c;z) = e^z M(c-b;c;-z)
//! turns the alternating series into an all-positive one; for large |z| the
//! standard asymptotic expansion M(b;c;-v) ~ Gamma(c)/Gamma(c-b) v^-b
//! 2F0(b, b-c+1; -1/v) applies (the exponentially small companion term is
//! below binary64 resolution at the switch point).

use crate::gamma::log_gamma_signed;
use crate::{Error, Result};

const SWITCH: f64 = 40.0;

/// M(b; c; z) for z <= 0.
pub(crate) fn kummer_m_nonpos(b: f64, c: f64, z: f64) -> Result<f64> {
    debug_assert!(z <= 0.0);
    let v = -z;
    if c <= 0.0 {
        return Err(Error::domain(format!("kummer factor requires c > 0, got {c}")));
    }
    if v <= SWITCH {
        // e^-v * sum_k (c-b)_k v^k / ((c)_k k!)
        let mut sum = 1.0_f64;
        let mut term = 1.0_f64;
        let mut k = 0.0_f64;
        while k < 800.0 {
            term *= (c - b + k) * v / ((c + k) * (k + 1.0));
            sum += term;
            k += 1.0;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        return Ok((-v).exp() * sum);
    }
    if c - b < 0.02 {
        return Err(Error::domain(format!(
            "kummer asymptotic branch requires c - b >= 0.02, got {}",
            c - b
        )));
    }
    let (ln_c, sg_c) = log_gamma_signed(c)?;
    let (ln_cb, sg_cb) = log_gamma_signed(c - b)?;
    let pref = sg_c * sg_cb * (ln_c - ln_cb - b * v.ln()).exp();
    let mut sum = 1.0_f64;
    let mut term = 1.0_f64;
    let mut last = 1.0_f64;
    let mut k = 0.0_f64;
    while k < 60.0 {
        term *= (b + k) * (b - c + 1.0 + k) / ((k + 1.0) * v);
        if term.abs() > last {
            break; // asymptotic series turned divergent; stop at smallest term
        }
        sum += term;
        last = term.abs();
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    Ok(pref * sum)
}
