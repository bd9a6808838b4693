//! The eight fundamental solutions q1..q8 of
//!
//! ```text
//! L[u] = u_xx + u_yy + u_zz + (2a/x) u_x + (2b/y) u_y + (2c/z) u_z = 0
//! ```
//!
//! on the open octant, each of the form
//!
//! ```text
//! q = k (r^2)^p (x x0)^{e_x} (y y0)^{e_y} (z z0)^{e_z}
//!       F_A(a; b1,b2,b3; c1,c2,c3; xi, eta, zeta)
//! ```
//!
//! where r is the distance to the pole, r1, r2, r3 the distances to its
//! mirror images across the coordinate planes, and xi = (r^2 - r1^2)/r^2 etc.
//! All three hypergeometric arguments are nonpositive for admissible points,
//! so the large-argument F_A machinery covers the whole octant including the
//! immediate vicinity of the pole, where every q_i blows up like 1/r.

use serde::Serialize;

use crate::gamma::log_gamma;
use crate::lauricella::{
    fa3_decomposed, fa3_laplace, fa3_series_unguarded, involuted, LauricellaParams, TripleArg,
};
use crate::series::{EvalResult, SeriesControl};
use crate::{Error, Result};

/// The singular-coefficient exponents, 0 < 2*alpha, 2*beta, 2*gamma < 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SingularParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(v > 0.0 && 2.0 * v < 1.0) {
                return Err(Error::domain(format!(
                    "singular parameter {name} = {v} violates 0 < 2*{name} < 1"
                )));
            }
        }
        Ok(SingularParams { alpha, beta, gamma })
    }

    pub(crate) fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// a-parameter of the q1 set, alpha + beta + gamma + 1/2.
    pub fn a_sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma + 0.5
    }
}

/// A point of the open octant x, y, z > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FieldPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x > 0.0 && y > 0.0 && z > 0.0) || !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::domain(format!(
                "field point ({x}, {y}, {z}) must lie in the open octant"
            )));
        }
        Ok(FieldPoint { x, y, z })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Result<Self> {
        FieldPoint::new(a[0], a[1], a[2])
    }
}

/// The source point of a fundamental solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pole {
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
}

impl Pole {
    pub fn new(x0: f64, y0: f64, z0: f64) -> Result<Self> {
        if !(x0 > 0.0 && y0 > 0.0 && z0 > 0.0)
            || !(x0.is_finite() && y0.is_finite() && z0.is_finite())
        {
            return Err(Error::domain(format!(
                "pole ({x0}, {y0}, {z0}) must lie in the open octant"
            )));
        }
        Ok(Pole { x0, y0, z0 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x0, self.y0, self.z0]
    }

    pub fn as_point(&self) -> FieldPoint {
        FieldPoint {
            x: self.x0,
            y: self.y0,
            z: self.z0,
        }
    }
}

/// Squared distances and hypergeometric arguments of a (point, pole) pair.
///
/// Invariants: r^2 <= min(r1^2, r2^2, r3^2), and xi, eta, zeta <= 0 with
/// xi = (r^2 - r1^2)/r^2 = -4 x x0 / r^2 (the two forms agree exactly in
/// real arithmetic; the product form is used since it avoids cancellation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryFrame {
    pub r2: f64,
    pub r1_2: f64,
    pub r2_2: f64,
    pub r3_2: f64,
    pub xi: f64,
    pub eta: f64,
    pub zeta: f64,
}

impl GeometryFrame {
    pub fn args(&self) -> TripleArg {
        TripleArg::new(self.xi, self.eta, self.zeta)
    }
}

/// Distances per the mirror construction and the arguments xi, eta, zeta.
pub fn geometry(pt: &FieldPoint, pole: &Pole) -> Result<GeometryFrame> {
    let dx = pt.x - pole.x0;
    let dy = pt.y - pole.y0;
    let dz = pt.z - pole.z0;
    let r2 = dx * dx + dy * dy + dz * dz;
    if r2 == 0.0 {
        return Err(Error::CoincidentPole);
    }
    let sx = pt.x + pole.x0;
    let sy = pt.y + pole.y0;
    let sz = pt.z + pole.z0;
    let r1_2 = sx * sx + dy * dy + dz * dz;
    let r2_2 = dx * dx + sy * sy + dz * dz;
    let r3_2 = dx * dx + dy * dy + sz * sz;
    let frame = GeometryFrame {
        r2,
        r1_2,
        r2_2,
        r3_2,
        xi: -4.0 * pt.x * pole.x0 / r2,
        eta: -4.0 * pt.y * pole.y0 / r2,
        zeta: -4.0 * pt.z * pole.z0 / r2,
    };
    debug_assert!(frame.xi <= 0.0 && frame.eta <= 0.0 && frame.zeta <= 0.0);
    debug_assert!(r2 <= r1_2.min(r2_2).min(r3_2));
    Ok(frame)
}

/// Selector of one of the eight fundamental solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SolutionKind {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    Q7,
    Q8,
}

impl SolutionKind {
    pub const ALL: [SolutionKind; 8] = [
        SolutionKind::Q1,
        SolutionKind::Q2,
        SolutionKind::Q3,
        SolutionKind::Q4,
        SolutionKind::Q5,
        SolutionKind::Q6,
        SolutionKind::Q7,
        SolutionKind::Q8,
    ];

    /// Which axes carry the power prefactor (x x0)^{1-2 alpha} etc.
    pub fn prefactor_axes(&self) -> [bool; 3] {
        match self {
            SolutionKind::Q1 => [false, false, false],
            SolutionKind::Q2 => [true, false, false],
            SolutionKind::Q3 => [false, true, false],
            SolutionKind::Q4 => [false, false, true],
            SolutionKind::Q5 => [true, true, false],
            SolutionKind::Q6 => [true, false, true],
            SolutionKind::Q7 => [false, true, true],
            SolutionKind::Q8 => [true, true, true],
        }
    }

    pub fn index(&self) -> usize {
        match self {
            SolutionKind::Q1 => 0,
            SolutionKind::Q2 => 1,
            SolutionKind::Q3 => 2,
            SolutionKind::Q4 => 3,
            SolutionKind::Q5 => 4,
            SolutionKind::Q6 => 5,
            SolutionKind::Q7 => 6,
            SolutionKind::Q8 => 7,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        SolutionKind::ALL.get(i).copied()
    }
}

impl std::fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "q{}", self.index() + 1)
    }
}

impl std::str::FromStr for SolutionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let idx: usize = t
            .strip_prefix('q')
            .unwrap_or(&t)
            .parse()
            .map_err(|_| Error::domain(format!("unknown solution kind '{s}'")))?;
        SolutionKind::from_index(idx.wrapping_sub(1))
            .ok_or_else(|| Error::domain(format!("unknown solution kind '{s}'")))
    }
}

/// The normalization constants k1..k8 (determined only by boundary-value
/// problems downstream; default all 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationConstants {
    pub k: [f64; 8],
}

impl Default for NormalizationConstants {
    fn default() -> Self {
        NormalizationConstants { k: [1.0; 8] }
    }
}

impl NormalizationConstants {
    pub fn validate(&self) -> Result<()> {
        if self.k.iter().any(|v| !v.is_finite() || *v == 0.0) {
            return Err(Error::domain(
                "normalization constants must be finite and nonzero",
            ));
        }
        Ok(())
    }

    pub fn get(&self, kind: SolutionKind) -> f64 {
        self.k[kind.index()]
    }
}

/// Parameter set, r^2 power, and axis prefactor exponents for one kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionRecipe {
    pub params: LauricellaParams,
    pub r2_power: f64,
    pub axis_exponents: [f64; 3],
}

/// Mapping of each kind to its F_A parameter set and prefactors.
///
/// With s = alpha + beta + gamma: Q1 carries (s + 1/2; a,b,c; 2a,2b,2c) and
/// r^2 power -(s + 1/2); flipping an axis d replaces its parameter p by 1-p,
/// adds the axis factor (coord * coord0)^{1-2p}, and lowers the r^2 power by
/// 1 - 2p, through Q8 where all three axes flip.
pub fn solution_recipe(kind: SolutionKind, sp: &SingularParams) -> SolutionRecipe {
    let p = sp.as_array();
    let flips = kind.prefactor_axes();
    let mut b = [0.0; 3];
    let mut c = [0.0; 3];
    let mut exps = [0.0; 3];
    let mut a = 0.5;
    let mut power = -0.5;
    for ax in 0..3 {
        if flips[ax] {
            b[ax] = 1.0 - p[ax];
            c[ax] = 2.0 - 2.0 * p[ax];
            exps[ax] = 1.0 - 2.0 * p[ax];
            a += 1.0 - p[ax];
            power -= 1.0 - p[ax];
        } else {
            b[ax] = p[ax];
            c[ax] = 2.0 * p[ax];
            a += p[ax];
            power -= p[ax];
        }
    }
    SolutionRecipe {
        params: LauricellaParams { a, b, c },
        r2_power: power,
        axis_exponents: exps,
    }
}

/// F_A evaluation tuned for solution frames: direct series in the far field,
/// the Laplace integral elsewhere (arguments are nonpositive by geometry).
pub(crate) fn fa3_frame(
    p: &LauricellaParams,
    t: &TripleArg,
    ctrl: &SeriesControl,
) -> Result<EvalResult> {
    if t.sum_abs() <= 0.4 {
        fa3_series_unguarded(p, t, ctrl)
    } else {
        fa3_laplace(p, t, ctrl)
    }
}

/// One fundamental solution at one point.
pub fn evaluate(
    kind: SolutionKind,
    sp: &SingularParams,
    pt: &FieldPoint,
    pole: &Pole,
    kconst: f64,
    ctrl: &SeriesControl,
) -> Result<EvalResult> {
    let frame = geometry(pt, pole)?;
    let recipe = solution_recipe(kind, sp);
    let fa = fa3_frame(&recipe.params, &frame.args(), ctrl)?;
    let mut prefactor = kconst * frame.r2.powf(recipe.r2_power);
    let coords = pt.as_array();
    let pole_coords = pole.as_array();
    for ax in 0..3 {
        let e = recipe.axis_exponents[ax];
        if e != 0.0 {
            prefactor *= (coords[ax] * pole_coords[ax]).powf(e);
        }
    }
    Ok(fa.scaled(prefactor))
}

/// The bounded factor f in q1 = k1 r^-1 (r1^2)^-alpha (r2^2)^-beta
/// (r3^2)^-gamma f(r^2, r1^2, r2^2, r3^2).
///
/// The decomposition of F_A into 2F1 products is applied after the all-axes
/// autotransformation, which maps the unbounded arguments (xi, eta, zeta) to
/// the bounded positive triple (r_i^2 - r^2) / (r1^2 + r2^2 + r3^2 - 2 r^2);
/// the resulting triple shell-sum of 2F1 factors converges geometrically at
/// every pole distance and tends to the closed-form constant of
/// [`singular_limit_constant`] as r -> 0. Summing the textbook form term by
/// term stalls near the pole (its 2F1 arguments approach 1), which is why
/// the transformed expansion of the same series is used.
pub fn regular_part_q1(
    sp: &SingularParams,
    pt: &FieldPoint,
    pole: &Pole,
    ctrl: &SeriesControl,
) -> Result<EvalResult> {
    let frame = geometry(pt, pole)?;
    let recipe = solution_recipe(SolutionKind::Q1, sp);
    let (params_inv, t_inv, big_d) = involuted(&recipe.params, &frame.args());
    // c = 2b: the involution fixes the parameter set
    debug_assert_eq!(params_inv.b, recipe.params.b);
    let fa = fa3_decomposed(&params_inv, &t_inv, ctrl)?;
    // f = (r^2)^(1/2) prod (r_i^2)^{b_i} (R^2)^{-a} F_A(transformed args)
    let r_sq_big = big_d * frame.r2;
    let ln_pref = 0.5 * frame.r2.ln()
        + sp.alpha * frame.r1_2.ln()
        + sp.beta * frame.r2_2.ln()
        + sp.gamma * frame.r3_2.ln()
        - recipe.params.a * r_sq_big.ln();
    Ok(fa.scaled(ln_pref.exp()))
}

/// f(0, r1^2, r2^2, r3^2) =
/// Gamma(2a) Gamma(2b) Gamma(2c) sqrt(pi)
///   / (Gamma(a) Gamma(b) Gamma(c) Gamma(a+b+c+1/2)),
/// independent of the reflected distances.
pub fn singular_limit_constant(sp: &SingularParams) -> f64 {
    let ln = log_gamma(2.0 * sp.alpha).unwrap()
        + log_gamma(2.0 * sp.beta).unwrap()
        + log_gamma(2.0 * sp.gamma).unwrap()
        + 0.5 * std::f64::consts::PI.ln()
        - log_gamma(sp.alpha).unwrap()
        - log_gamma(sp.beta).unwrap()
        - log_gamma(sp.gamma).unwrap()
        - log_gamma(sp.a_sum()).unwrap();
    ln.exp()
}

/// Gradient (dq1/dx, dq1/dy, dq1/dz) via the differentiation formula for F_A:
///
/// ```text
/// dq1/dx = -2 (x - x0) a k1 (r^2)^{-a-1} F_A(a+1; b; c; xi,eta,zeta)
///          -2 x0      a k1 (r^2)^{-a-1} F_A(a+1; b1+1,b2,b3; c1+1,c2,c3; xi,eta,zeta)
/// ```
///
/// with a = alpha + beta + gamma + 1/2, and the symmetric analogues in y, z.
/// Cross-validated against Richardson finite differences of [`evaluate`].
pub fn grad_q1(
    sp: &SingularParams,
    pt: &FieldPoint,
    pole: &Pole,
    kconst: f64,
    ctrl: &SeriesControl,
) -> Result<[f64; 3]> {
    let frame = geometry(pt, pole)?;
    let recipe = solution_recipe(SolutionKind::Q1, sp);
    let a = recipe.params.a;
    let args = frame.args();
    let raised = LauricellaParams {
        a: a + 1.0,
        ..recipe.params
    };
    let f_base = fa3_frame(&raised, &args, ctrl)?.value;
    let common = a * kconst * frame.r2.powf(-a - 1.0);
    let coords = pt.as_array();
    let pole_coords = pole.as_array();
    let mut grad = [0.0_f64; 3];
    for ax in 0..3 {
        let mut shifted = raised;
        shifted.b[ax] += 1.0;
        shifted.c[ax] += 1.0;
        let f_shift = fa3_frame(&shifted, &args, ctrl)?.value;
        grad[ax] = -2.0 * (coords[ax] - pole_coords[ax]) * common * f_base
            - 2.0 * pole_coords[ax] * common * f_shift;
    }
    Ok(grad)
}

/// Behavior of one solution at the three coordinate planes.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryReport {
    pub kind: SolutionKind,
    pub entries: Vec<BoundaryEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryEntry {
    pub axis: char,
    /// "dirichlet" (q -> 0) or "weighted-flux" (coord^{2p} dq/dcoord -> 0).
    pub property: &'static str,
    /// Exponent implied by the prefactor, for Dirichlet entries.
    pub implied_exponent: Option<f64>,
    /// Log-log slope fitted over the coordinate sequence.
    pub measured_exponent: f64,
    /// |quantity| at coord = 1e-2, 1e-3, 1e-4.
    pub values: [f64; 3],
    pub pass: bool,
}

const BOUNDARY_COORDS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Numerical check of the boundary-property table: per axis either the
/// Dirichlet limit (solutions carrying that axis prefactor vanish like
/// coord^{1-2p}) or the weighted-flux limit (coord^{2p} dq/dcoord -> 0).
/// Limits are measured along coord = 1e-2, 1e-3, 1e-4 with a log-log slope
/// fit, never by evaluating at 0.
pub fn boundary_property_table(
    kind: SolutionKind,
    sp: &SingularParams,
    pole: &Pole,
    ctrl: &SeriesControl,
) -> Result<BoundaryReport> {
    let base = [1.25, 0.9, 1.1];
    let params = sp.as_array();
    let flips = kind.prefactor_axes();
    let mut entries = Vec::with_capacity(3);
    for ax in 0..3 {
        let q_at = |coord: f64| -> Result<f64> {
            let mut c = base;
            c[ax] = coord;
            Ok(evaluate(kind, sp, &FieldPoint::from_array(c)?, pole, 1.0, ctrl)?.value)
        };
        let mut values = [0.0_f64; 3];
        if flips[ax] {
            for (i, &coord) in BOUNDARY_COORDS.iter().enumerate() {
                values[i] = q_at(coord)?.abs();
            }
            let measured = -loglog_slope(&BOUNDARY_COORDS, &values);
            let implied = 1.0 - 2.0 * params[ax];
            entries.push(BoundaryEntry {
                axis: (b'x' + ax as u8) as char,
                property: "dirichlet",
                implied_exponent: Some(implied),
                measured_exponent: measured,
                values,
                pass: (measured - implied).abs() <= 0.05,
            });
        } else {
            for (i, &coord) in BOUNDARY_COORDS.iter().enumerate() {
                let h = coord / 100.0;
                let d = (q_at(coord + h)? - q_at(coord - h)?) / (2.0 * h);
                values[i] = (coord.powf(2.0 * params[ax]) * d).abs();
            }
            let measured = -loglog_slope(&BOUNDARY_COORDS, &values);
            // decay forced by the weighted-Neumann property; rate not asserted
            let pass = measured > 0.05 && values[2] < 1e-2 * values[0];
            entries.push(BoundaryEntry {
                axis: (b'x' + ax as u8) as char,
                property: "weighted-flux",
                implied_exponent: None,
                measured_exponent: measured,
                values,
                pass,
            });
        }
    }
    Ok(BoundaryReport { kind, entries })
}

/// Least-squares slope of ln|v| against ln(coord).
pub(crate) fn loglog_slope(coords: &[f64], values: &[f64]) -> f64 {
    let n = coords.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (&c, &v) in coords.iter().zip(values) {
        let x = c.ln();
        let y = v.abs().max(1e-300).ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CTRL: SeriesControl = SeriesControl {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_terms: 500,
    };

    const SING_CONST_QTR: f64 = 0.2284732905222318126875;

    fn sp(a: f64, b: f64, g: f64) -> SingularParams {
        SingularParams::new(a, b, g).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn geometry_example() {
        let f = geometry(
            &FieldPoint::new(1.0, 1.0, 1.0).unwrap(),
            &Pole::new(1.0, 1.0, 2.0).unwrap(),
        )
        .unwrap();
        assert_eq!(f.r2, 1.0);
        assert_eq!(f.r1_2, 5.0);
        assert_eq!(f.r2_2, 5.0);
        assert_eq!(f.r3_2, 9.0);
        assert_eq!(f.xi, -4.0);
        assert_eq!(f.eta, -4.0);
        assert_eq!(f.zeta, -8.0);
    }

    #[test]
    fn geometry_two_ways_agree() {
        let pt = FieldPoint::new(0.83, 2.4, 0.11).unwrap();
        let pole = Pole::new(1.9, 0.37, 2.6).unwrap();
        let f = geometry(&pt, &pole).unwrap();
        for (lhs, d) in [(f.xi, f.r1_2), (f.eta, f.r2_2), (f.zeta, f.r3_2)] {
            let diff_form = (f.r2 - d) / f.r2;
            assert!(
                (lhs - diff_form).abs() <= 1e-12 * lhs.abs(),
                "{lhs} vs {diff_form}"
            );
        }
    }

    #[test]
    fn geometry_near_pole_stays_defined() {
        let pole = Pole::new(0.5, 0.25, 0.125).unwrap();
        for eps in [1e-3, 1e-4] {
            let pt = FieldPoint::new(0.5 + eps, 0.25, 0.125).unwrap();
            let f = geometry(&pt, &pole).unwrap();
            let expect = -4.0 * pt.x * pole.x0 / (eps * eps);
            assert!(rel(f.xi, expect) < 1e-9);
        }
        assert!(matches!(
            geometry(
                &FieldPoint::new(1.0, 1.0, 1.0).unwrap(),
                &Pole::new(1.0, 1.0, 1.0).unwrap()
            ),
            Err(Error::CoincidentPole)
        ));
    }

    #[test]
    fn recipe_table_q1_q8() {
        let s = sp(0.25, 0.25, 0.25);
        let r1 = solution_recipe(SolutionKind::Q1, &s);
        assert_eq!(r1.params.a, 1.25);
        assert_eq!(r1.params.b, [0.25; 3]);
        assert_eq!(r1.params.c, [0.5; 3]);
        assert_eq!(r1.r2_power, -1.25);
        assert_eq!(r1.axis_exponents, [0.0; 3]);
        let r8 = solution_recipe(SolutionKind::Q8, &s);
        assert_eq!(r8.params.a, 2.75);
        assert_eq!(r8.params.b, [0.75; 3]);
        assert_eq!(r8.params.c, [1.5; 3]);
        assert_eq!(r8.r2_power, -2.75);
        assert_eq!(r8.axis_exponents, [0.5; 3]);
    }

    #[test]
    fn recipe_homogeneity_degree_uniform() {
        // 2*power + 2*sum(exponents) = -(2a+2b+2c+1) for every kind
        let s = sp(0.3, 0.15, 0.45);
        let target = -(2.0 * s.alpha + 2.0 * s.beta + 2.0 * s.gamma + 1.0);
        for kind in SolutionKind::ALL {
            let r = solution_recipe(kind, &s);
            let degree = 2.0 * r.r2_power + 2.0 * r.axis_exponents.iter().sum::<f64>();
            assert!((degree - target).abs() < 1e-12, "{kind}");
        }
    }

    #[test]
    fn evaluate_point_pole_exchange() {
        let s = sp(0.3, 0.2, 0.4);
        let p = FieldPoint::new(1.0, 2.0, 3.0).unwrap();
        let p0 = Pole::new(2.0, 1.0, 1.0).unwrap();
        for kind in SolutionKind::ALL {
            let lhs = evaluate(kind, &s, &p, &p0, 1.0, &CTRL).unwrap().value;
            let swapped_pt = FieldPoint::new(p0.x0, p0.y0, p0.z0).unwrap();
            let swapped_pole = Pole::new(p.x, p.y, p.z).unwrap();
            let rhs = evaluate(kind, &s, &swapped_pt, &swapped_pole, 1.0, &CTRL)
                .unwrap()
                .value;
            assert!(rel(lhs, rhs) < 1e-12, "{kind}");
        }
    }

    #[test]
    fn evaluate_joint_homogeneity() {
        let s = sp(0.3, 0.2, 0.4);
        let p = [1.1, 0.7, 1.6];
        let p0 = [0.8, 1.2, 0.9];
        let exponent = -(2.0 * (s.alpha + s.beta + s.gamma) + 1.0);
        for lambda in [0.5, 2.0] {
            let base = evaluate(
                SolutionKind::Q1,
                &s,
                &FieldPoint::from_array(p).unwrap(),
                &Pole::new(p0[0], p0[1], p0[2]).unwrap(),
                1.0,
                &CTRL,
            )
            .unwrap()
            .value;
            let scaled = evaluate(
                SolutionKind::Q1,
                &s,
                &FieldPoint::new(lambda * p[0], lambda * p[1], lambda * p[2]).unwrap(),
                &Pole::new(lambda * p0[0], lambda * p0[1], lambda * p0[2]).unwrap(),
                1.0,
                &CTRL,
            )
            .unwrap()
            .value;
            assert!(
                rel(scaled, lambda.powf(exponent) * base) < 1e-9,
                "lambda={lambda}"
            );
        }
    }

    #[test]
    fn far_field_leading_prefactor() {
        let s = sp(0.25, 0.25, 0.25);
        let pole = Pole::new(1.0, 1.0, 1.0).unwrap();
        let pt = FieldPoint::new(1000.0, 999.0, 1001.0).unwrap();
        let frame = geometry(&pt, &pole).unwrap();
        let q = evaluate(SolutionKind::Q1, &s, &pt, &pole, 1.0, &CTRL)
            .unwrap()
            .value;
        let leading = frame.r2.powf(-s.a_sum());
        assert!(rel(q, leading) < 1e-2);
    }

    #[test]
    fn singular_constant_matches_oracle_and_symmetry() {
        let c = singular_limit_constant(&sp(0.25, 0.25, 0.25));
        assert!(rel(c, SING_CONST_QTR) < 1e-13);
        let c1 = singular_limit_constant(&sp(0.1, 0.3, 0.45));
        let c2 = singular_limit_constant(&sp(0.45, 0.1, 0.3));
        assert!(rel(c1, c2) < 1e-14);
    }

    #[test]
    fn regular_part_consistency_with_evaluate() {
        let s = sp(0.25, 0.25, 0.25);
        let pt = FieldPoint::new(1.0, 1.0, 1.0).unwrap();
        let pole = Pole::new(1.1, 1.0, 1.0).unwrap();
        let big = SeriesControl {
            max_terms: 2000,
            ..CTRL
        };
        let f = regular_part_q1(&s, &pt, &pole, &big).unwrap().value;
        let frame = geometry(&pt, &pole).unwrap();
        let reconstructed = frame.r2.sqrt().recip()
            * frame.r1_2.powf(-s.alpha)
            * frame.r2_2.powf(-s.beta)
            * frame.r3_2.powf(-s.gamma)
            * f;
        let direct = evaluate(SolutionKind::Q1, &s, &pt, &pole, 1.0, &CTRL)
            .unwrap()
            .value;
        assert!(rel(reconstructed, direct) < 1e-7);
    }

    #[test]
    fn regular_part_tends_to_limit_constant() {
        let s = sp(0.25, 0.25, 0.25);
        let pole = Pole::new(1.0, 1.0, 1.0).unwrap();
        let c = singular_limit_constant(&s);
        let big = SeriesControl {
            max_terms: 4000,
            ..CTRL
        };
        let d = 1.0 / 3.0_f64.sqrt();
        let mut gaps = Vec::new();
        for eps in [1e-2, 1e-3, 1e-4] {
            let pt = FieldPoint::new(1.0 + eps * d, 1.0 + eps * d, 1.0 + eps * d).unwrap();
            let f = regular_part_q1(&s, &pt, &pole, &big).unwrap().value;
            gaps.push((f - c).abs());
        }
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "gaps {gaps:?}");
        assert!(gaps[2] <= 1e-4, "gap at 1e-4 was {}", gaps[2]);
    }

    #[test]
    fn grad_q1_matches_finite_differences() {
        let s = sp(0.3, 0.15, 0.45);
        let pt = FieldPoint::new(1.0, 2.0, 1.5).unwrap();
        let pole = Pole::new(0.8, 1.1, 2.0).unwrap();
        let g = grad_q1(&s, &pt, &pole, 1.0, &CTRL).unwrap();
        let q = |c: [f64; 3]| {
            evaluate(
                SolutionKind::Q1,
                &s,
                &FieldPoint::from_array(c).unwrap(),
                &pole,
                1.0,
                &CTRL,
            )
            .unwrap()
            .value
        };
        for ax in 0..3 {
            let h = 1e-5 * pt.as_array()[ax];
            let fd = |step: f64| {
                let mut hi = pt.as_array();
                let mut lo = pt.as_array();
                hi[ax] += step;
                lo[ax] -= step;
                (q(hi) - q(lo)) / (2.0 * step)
            };
            let richardson = (4.0 * fd(h / 2.0) - fd(h)) / 3.0;
            assert!(
                rel(g[ax], richardson) < 1e-5,
                "axis {ax}: {} vs {richardson}",
                g[ax]
            );
        }
    }

    #[test]
    fn grad_q1_x_component_at_x_equal_x0() {
        // the (x - x0) group vanishes, leaving the pole-term only
        let s = sp(0.3, 0.15, 0.45);
        let pt = FieldPoint::new(0.8, 2.0, 1.5).unwrap();
        let pole = Pole::new(0.8, 1.1, 2.0).unwrap();
        let frame = geometry(&pt, &pole).unwrap();
        let recipe = solution_recipe(SolutionKind::Q1, &s);
        let raised = LauricellaParams {
            a: recipe.params.a + 1.0,
            ..recipe.params
        };
        let mut shifted = raised;
        shifted.b[0] += 1.0;
        shifted.c[0] += 1.0;
        let expected = -2.0
            * pole.x0
            * recipe.params.a
            * frame.r2.powf(-recipe.params.a - 1.0)
            * fa3_frame(&shifted, &frame.args(), &CTRL).unwrap().value;
        let g = grad_q1(&s, &pt, &pole, 1.0, &CTRL).unwrap();
        assert!(rel(g[0], expected) < 1e-12);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("q3".parse::<SolutionKind>().unwrap(), SolutionKind::Q3);
        assert_eq!("Q8".parse::<SolutionKind>().unwrap(), SolutionKind::Q8);
        assert!("q9".parse::<SolutionKind>().is_err());
        assert!("foo".parse::<SolutionKind>().is_err());
    }
}
