//! Truncation control and evaluation results shared by all series and
//! quadrature routines.

use serde::Serialize;

/// Stopping rules for series summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesControl {
    /// Absolute tolerance on the term (or degree-shell) tail.
    pub abs_tol: f64,
    /// Relative tolerance on partial sums.
    pub rel_tol: f64,
    /// Budget per summation index; for triple series this caps the total
    /// degree, which in turn caps each index.
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_terms: 500,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_terms < 1 {
            return Err(crate::Error::domain(
                "series control requires abs_tol > 0, rel_tol > 0, max_terms >= 1",
            ));
        }
        Ok(())
    }

    /// Tolerance actually applied once a partial sum is available.
    pub(crate) fn tol_for(&self, partial: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * partial.abs())
    }
}

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Plain power/triple series.
    Series,
    /// Pfaff-transformed 2F1 series (negative argument).
    Pfaff,
    /// Closed gamma-ratio form at argument 1.
    GaussAtOne,
    /// Decomposition into products of 2F1 factors.
    Decomposed,
    /// Tensor-product Gauss-Jacobi Euler integral.
    Integral,
    /// 1-D Laplace integral with confluent factors.
    Laplace,
    /// Direct closed-form arithmetic (no series involved).
    Direct,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Route::Series => "series",
            Route::Pfaff => "pfaff",
            Route::GaussAtOne => "gauss-at-one",
            Route::Decomposed => "decomposed",
            Route::Integral => "integral",
            Route::Laplace => "laplace",
            Route::Direct => "direct",
        };
        f.write_str(s)
    }
}

/// A numeric value with its truncation-error estimate.
///
/// Invariant: `converged` implies `error_estimate <= max(abs_tol,
/// rel_tol * |value|)` of the controlling [`SeriesControl`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
    pub route: Route,
}

impl EvalResult {
    /// Rescale value and error by a constant prefactor.
    pub(crate) fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.error_estimate *= factor.abs();
        self
    }
}
