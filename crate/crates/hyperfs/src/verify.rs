//! Finite-difference verification that the constructed functions solve the
//! operator equation, that the omega-solutions solve the Lauricella PDE
//! system, and that the constructive weight identities
//! `L_{a,b,c}(w u) = w L_{a',b',c'}(u)` hold.
//!
//! Everything here deliberately goes through plain central differences of
//! the library's own evaluators, so these checks are independent of the
//! series/integral identities used inside the evaluators themselves.

use rayon::prelude::*;
use serde::Serialize;

use crate::lauricella::TripleArg;
use crate::series::SeriesControl;
use crate::solutions::{
    evaluate, solution_recipe, FieldPoint, Pole, SingularParams, SolutionKind,
};
use crate::{Error, Result};

/// Central-difference configuration. The step is relative to the local
/// coordinate (actual step = h * coord); `richardson` combines steps h and
/// h/2 for fourth-order accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FDConfig {
    pub h: f64,
    pub richardson: bool,
}

impl Default for FDConfig {
    fn default() -> Self {
        FDConfig {
            h: 1e-4,
            richardson: true,
        }
    }
}

impl FDConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h < 0.5) {
            return Err(Error::domain(format!(
                "finite-difference step must satisfy 0 < h < 0.5, got {}",
                self.h
            )));
        }
        Ok(())
    }
}

const SCALE_FLOOR: f64 = 1e-30;

/// L u at `pt` for the operator with singular coefficients 2*alpha/x etc.
pub fn apply_operator_fd<F>(
    u: &F,
    sp: &SingularParams,
    pt: &FieldPoint,
    fd: &FDConfig,
) -> Result<f64>
where
    F: Fn(&FieldPoint) -> Result<f64>,
{
    Ok(operator_parts(u, sp.as_array(), pt, fd)?.0)
}

/// (L u, local scale), where the scale is the largest magnitude among the
/// six stencil terms; normalizing residuals by it keeps the tolerance
/// meaningful both near and far from the pole.
pub(crate) fn operator_parts<F>(
    u: &F,
    params: [f64; 3],
    pt: &FieldPoint,
    fd: &FDConfig,
) -> Result<(f64, f64)>
where
    F: Fn(&FieldPoint) -> Result<f64>,
{
    fd.validate()?;
    let coords = pt.as_array();
    let u0 = u(pt)?;
    let mut lu = 0.0;
    let mut scale: f64 = 0.0;
    for ax in 0..3 {
        let h = fd.h * coords[ax];
        let at = |step: f64| -> Result<f64> {
            let mut c = coords;
            c[ax] += step;
            u(&FieldPoint::from_array(c)?)
        };
        let (d1, d2) = if fd.richardson {
            let (p1, m1) = (at(h)?, at(-h)?);
            let (p2, m2) = (at(h / 2.0)?, at(-h / 2.0)?);
            let d1_h = (p1 - m1) / (2.0 * h);
            let d1_h2 = (p2 - m2) / h;
            let d2_h = (p1 - 2.0 * u0 + m1) / (h * h);
            let d2_h2 = (p2 - 2.0 * u0 + m2) / (h * h / 4.0);
            ((4.0 * d1_h2 - d1_h) / 3.0, (4.0 * d2_h2 - d2_h) / 3.0)
        } else {
            let (p1, m1) = (at(h)?, at(-h)?);
            ((p1 - m1) / (2.0 * h), (p1 - 2.0 * u0 + m1) / (h * h))
        };
        let first_term = 2.0 * params[ax] / coords[ax] * d1;
        lu += d2 + first_term;
        scale = scale.max(d2.abs()).max(first_term.abs());
    }
    Ok((lu, scale))
}

/// Residual record for one sample point.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualSample {
    pub point: FieldPoint,
    pub residual: f64,
    pub local_scale: f64,
    pub normalized: f64,
}

/// Aggregated operator residuals of one solution kind over a sample set.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub kind: SolutionKind,
    pub samples: Vec<ResidualSample>,
    pub failures: Vec<String>,
    pub max_normalized: f64,
    pub median_normalized: f64,
}

/// Applies the finite-difference operator to `evaluate(kind, ...)` at each
/// sample; sample evaluations run in parallel and are aggregated in input
/// order. Evaluation failures do not abort the report.
pub fn residual_report(
    kind: SolutionKind,
    sp: &SingularParams,
    pole: &Pole,
    samples: &[FieldPoint],
    fd: &FDConfig,
    ctrl: &SeriesControl,
) -> ResidualReport {
    let u = |p: &FieldPoint| Ok(evaluate(kind, sp, p, pole, 1.0, ctrl)?.value);
    let results: Vec<_> = samples
        .par_iter()
        .map(|pt| {
            operator_parts(&u, sp.as_array(), pt, fd).map(|(lu, scale)| ResidualSample {
                point: *pt,
                residual: lu,
                local_scale: scale,
                normalized: lu.abs() / (scale + SCALE_FLOOR),
            })
        })
        .collect();
    let mut samples_out = Vec::new();
    let mut failures = Vec::new();
    for (pt, r) in samples.iter().zip(results) {
        match r {
            Ok(s) => samples_out.push(s),
            Err(e) => failures.push(format!("{:?}: {e}", pt.as_array())),
        }
    }
    let mut norms: Vec<f64> = samples_out.iter().map(|s| s.normalized).collect();
    norms.sort_by(|a, b| a.total_cmp(b));
    let max_normalized = norms.last().copied().unwrap_or(f64::NAN);
    let median_normalized = if norms.is_empty() {
        f64::NAN
    } else {
        norms[norms.len() / 2]
    };
    ResidualReport {
        kind,
        samples: samples_out,
        failures,
        max_normalized,
        median_normalized,
    }
}

/// Normalized residuals of the three Lauricella system equations for a
/// scalar field omega(x1, x2, x3), with the coefficient set
/// (a; b1,b2,b3; c1,c2,c3) = (alpha+beta+gamma+1/2; alpha,beta,gamma;
/// 2 alpha, 2 beta, 2 gamma):
///
/// ```text
/// x_d (1 - x_d) w_dd - x_d x_e w_de - x_d x_f w_df
///   + [c_d - (a + b_d + 1) x_d] w_d - b_d x_e w_e - b_d x_f w_f
///   - a b_d w  =  0,    d = 1, 2, 3
/// ```
pub(crate) fn system_residual_of<F>(
    omega: &F,
    sp: &SingularParams,
    args: &TripleArg,
    fd: &FDConfig,
) -> Result<[f64; 3]>
where
    F: Fn(&TripleArg) -> Result<f64>,
{
    fd.validate()?;
    let t = args.as_array();
    let q1 = solution_recipe(SolutionKind::Q1, sp).params;
    let (a, b, c) = (q1.a, q1.b, q1.c);
    let h: [f64; 3] = t.map(|v| fd.h * (v.abs() + 0.1));

    let at = |shift: [f64; 3]| -> Result<f64> {
        omega(&TripleArg::new(
            t[0] + shift[0],
            t[1] + shift[1],
            t[2] + shift[2],
        ))
    };
    let w0 = at([0.0; 3])?;

    // first and pure second derivatives, optionally Richardson-extrapolated
    let mut d1 = [0.0_f64; 3];
    let mut d2 = [0.0_f64; 3];
    for ax in 0..3 {
        let step = |s: f64| -> Result<(f64, f64)> {
            let mut hi = [0.0; 3];
            let mut lo = [0.0; 3];
            hi[ax] = s;
            lo[ax] = -s;
            Ok((at(hi)?, at(lo)?))
        };
        if fd.richardson {
            let (p1, m1) = step(h[ax])?;
            let (p2, m2) = step(h[ax] / 2.0)?;
            let d1h = (p1 - m1) / (2.0 * h[ax]);
            let d1h2 = (p2 - m2) / h[ax];
            let d2h = (p1 - 2.0 * w0 + m1) / (h[ax] * h[ax]);
            let d2h2 = (p2 - 2.0 * w0 + m2) / (h[ax] * h[ax] / 4.0);
            d1[ax] = (4.0 * d1h2 - d1h) / 3.0;
            d2[ax] = (4.0 * d2h2 - d2h) / 3.0;
        } else {
            let (p1, m1) = step(h[ax])?;
            d1[ax] = (p1 - m1) / (2.0 * h[ax]);
            d2[ax] = (p1 - 2.0 * w0 + m1) / (h[ax] * h[ax]);
        }
    }

    // mixed second derivatives by the 4-point cross
    let mixed = |ax: usize, ay: usize, s: f64| -> Result<f64> {
        let mut pp = [0.0; 3];
        let mut pm = [0.0; 3];
        let mut mp = [0.0; 3];
        let mut mm = [0.0; 3];
        pp[ax] = s * h[ax];
        pp[ay] = s * h[ay];
        pm[ax] = s * h[ax];
        pm[ay] = -s * h[ay];
        mp[ax] = -s * h[ax];
        mp[ay] = s * h[ay];
        mm[ax] = -s * h[ax];
        mm[ay] = -s * h[ay];
        Ok((at(pp)? - at(pm)? - at(mp)? + at(mm)?) / (4.0 * s * s * h[ax] * h[ay]))
    };
    let mut dm = [[0.0_f64; 3]; 3];
    for (ax, ay) in [(0, 1), (0, 2), (1, 2)] {
        let v = if fd.richardson {
            (4.0 * mixed(ax, ay, 0.5)? - mixed(ax, ay, 1.0)?) / 3.0
        } else {
            mixed(ax, ay, 1.0)?
        };
        dm[ax][ay] = v;
        dm[ay][ax] = v;
    }

    let mut residuals = [0.0_f64; 3];
    for d in 0..3 {
        let e = (d + 1) % 3;
        let f = (d + 2) % 3;
        let terms = [
            t[d] * (1.0 - t[d]) * d2[d],
            -t[d] * t[e] * dm[d][e],
            -t[d] * t[f] * dm[d][f],
            (c[d] - (a + b[d] + 1.0) * t[d]) * d1[d],
            -b[d] * t[e] * d1[e],
            -b[d] * t[f] * d1[f],
            -a * b[d] * w0,
        ];
        let sum: f64 = terms.iter().sum();
        let scale = terms.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        residuals[d] = sum.abs() / (scale + SCALE_FLOOR);
    }
    Ok(residuals)
}

/// Residuals of the system for the omega-solution of the given kind,
/// `omega = prod (-x_d)^{e_d} * F_A(kind params; x, y, z)` over the
/// nonpositive-argument region (the real branch of the prefactor).
pub fn lauricella_system_residual(
    kind: SolutionKind,
    sp: &SingularParams,
    args: &TripleArg,
    fd: &FDConfig,
    ctrl: &SeriesControl,
) -> Result<[f64; 3]> {
    let recipe = solution_recipe(kind, sp);
    let omega = |t: &TripleArg| -> Result<f64> {
        let mut pre = 1.0;
        for (ax, &e) in recipe.axis_exponents.iter().enumerate() {
            if e != 0.0 {
                pre *= (-t.as_array()[ax]).powf(e);
            }
        }
        Ok(pre * crate::solutions::fa3_frame(&recipe.params, t, ctrl)?.value)
    };
    system_residual_of(&omega, sp, args, fd)
}

/// The seven constructive weight identities: which axes carry the monomial
/// weight coord^{1-2p} (and have their parameter swapped p -> 1-p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeightIdentity {
    X,
    Y,
    Z,
    XY,
    XZ,
    YZ,
    XYZ,
}

impl WeightIdentity {
    pub const ALL: [WeightIdentity; 7] = [
        WeightIdentity::X,
        WeightIdentity::Y,
        WeightIdentity::Z,
        WeightIdentity::XY,
        WeightIdentity::XZ,
        WeightIdentity::YZ,
        WeightIdentity::XYZ,
    ];

    pub fn axes(&self) -> [bool; 3] {
        match self {
            WeightIdentity::X => [true, false, false],
            WeightIdentity::Y => [false, true, false],
            WeightIdentity::Z => [false, false, true],
            WeightIdentity::XY => [true, true, false],
            WeightIdentity::XZ => [true, false, true],
            WeightIdentity::YZ => [false, true, true],
            WeightIdentity::XYZ => [true, true, true],
        }
    }

    fn weight(&self, sp: &SingularParams, pt: &FieldPoint) -> f64 {
        let p = sp.as_array();
        let c = pt.as_array();
        let mut w = 1.0;
        for ax in 0..3 {
            if self.axes()[ax] {
                w *= c[ax].powf(1.0 - 2.0 * p[ax]);
            }
        }
        w
    }

    fn swapped_params(&self, sp: &SingularParams) -> [f64; 3] {
        let mut p = sp.as_array();
        for ax in 0..3 {
            if self.axes()[ax] {
                p[ax] = 1.0 - p[ax];
            }
        }
        p
    }
}

impl std::fmt::Display for WeightIdentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            WeightIdentity::X => "x",
            WeightIdentity::Y => "y",
            WeightIdentity::Z => "z",
            WeightIdentity::XY => "xy",
            WeightIdentity::XZ => "xz",
            WeightIdentity::YZ => "yz",
            WeightIdentity::XYZ => "xyz",
        };
        f.write_str(s)
    }
}

/// Smooth test fields with polynomial and transcendental behavior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TestField {
    One,
    XSquared,
    SumOfSquares,
    SinXTimesY,
    ExpNegSum,
}

impl TestField {
    pub const CATALOGUE: [TestField; 5] = [
        TestField::One,
        TestField::XSquared,
        TestField::SumOfSquares,
        TestField::SinXTimesY,
        TestField::ExpNegSum,
    ];

    pub fn eval(&self, pt: &FieldPoint) -> f64 {
        match self {
            TestField::One => 1.0,
            TestField::XSquared => pt.x * pt.x,
            TestField::SumOfSquares => pt.x * pt.x + pt.y * pt.y + pt.z * pt.z,
            TestField::SinXTimesY => pt.x.sin() * pt.y,
            TestField::ExpNegSum => (-pt.x - pt.y - pt.z).exp(),
        }
    }
}

impl std::fmt::Display for TestField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TestField::One => "1",
            TestField::XSquared => "x^2",
            TestField::SumOfSquares => "x^2+y^2+z^2",
            TestField::SinXTimesY => "sin(x)*y",
            TestField::ExpNegSum => "exp(-x-y-z)",
        };
        f.write_str(s)
    }
}

/// Normalized residual of `L_{a,b,c}(w u) - w L_{a',b',c'}(u)` at `pt` for
/// one weight identity and one test field, both sides by finite differences.
pub fn constructive_identity_residual(
    identity: WeightIdentity,
    sp: &SingularParams,
    field: TestField,
    pt: &FieldPoint,
    fd: &FDConfig,
) -> Result<f64> {
    let weighted = |p: &FieldPoint| Ok(identity.weight(sp, p) * field.eval(p));
    let plain = |p: &FieldPoint| Ok(field.eval(p));
    let (lhs, scale) = operator_parts(&weighted, sp.as_array(), pt, fd)?;
    let (l_swapped, scale_r) = operator_parts(&plain, identity.swapped_params(sp), pt, fd)?;
    let rhs = identity.weight(sp, pt) * l_swapped;
    let scale = scale.max(identity.weight(sp, pt) * scale_r);
    Ok((lhs - rhs).abs() / (scale + SCALE_FLOOR))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CTRL: SeriesControl = SeriesControl {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_terms: 500,
    };

    fn fd() -> FDConfig {
        FDConfig {
            h: 1e-3,
            richardson: true,
        }
    }

    fn sp(a: f64, b: f64, g: f64) -> SingularParams {
        SingularParams::new(a, b, g).unwrap()
    }

    #[test]
    fn operator_on_constant_vanishes() {
        let u = |_: &FieldPoint| Ok(1.0);
        let v = apply_operator_fd(
            &u,
            &sp(0.3, 0.2, 0.45),
            &FieldPoint::new(1.3, 0.9, 1.7).unwrap(),
            &fd(),
        )
        .unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn operator_on_x_squared() {
        // L(x^2) = 2 + 4 alpha everywhere
        let s = sp(0.3, 0.2, 0.45);
        let u = |p: &FieldPoint| Ok(p.x * p.x);
        for pt in [
            FieldPoint::new(1.0, 1.0, 1.0).unwrap(),
            FieldPoint::new(0.4, 2.3, 0.9).unwrap(),
        ] {
            let v = apply_operator_fd(&u, &s, &pt, &fd()).unwrap();
            assert!((v - (2.0 + 4.0 * s.alpha)).abs() < 1e-8, "{v}");
        }
    }

    #[test]
    fn operator_residual_on_q1_is_small() {
        let s = sp(0.3, 0.2, 0.45);
        let pole = Pole::new(0.5, 0.6, 0.7).unwrap();
        let pt = FieldPoint::new(1.3, 0.9, 1.7).unwrap();
        let u = |p: &FieldPoint| Ok(evaluate(SolutionKind::Q1, &s, p, &pole, 1.0, &CTRL)?.value);
        let (lu, scale) = operator_parts(&u, s.as_array(), &pt, &fd()).unwrap();
        assert!(lu.abs() / scale < 1e-5, "normalized {}", lu.abs() / scale);
    }

    #[test]
    fn fd_convergence_order() {
        // u = x^4: L u = 12 x^2 + 8 alpha x^2 analytically
        let s = sp(0.25, 0.25, 0.25);
        let u = |p: &FieldPoint| Ok(p.x.powi(4));
        let points = [
            [1.0, 1.0, 1.0],
            [0.7, 1.3, 0.9],
            [2.0, 0.5, 1.1],
            [1.4, 2.2, 0.6],
            [0.9, 0.8, 1.9],
        ];
        for richardson in [false, true] {
            let mut ratios = Vec::new();
            for p in points {
                let pt = FieldPoint::from_array(p).unwrap();
                let exact = 12.0 * p[0] * p[0] + 8.0 * s.alpha * p[0] * p[0];
                let err = |h: f64| {
                    let cfg = FDConfig { h, richardson };
                    (apply_operator_fd(&u, &s, &pt, &cfg).unwrap() - exact).abs()
                };
                ratios.push(err(4e-2) / err(2e-2).max(1e-300));
            }
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            if richardson {
                assert!(mean > 10.0, "richardson ratio {mean}");
            } else {
                assert!((2.5..7.0).contains(&mean), "plain ratio {mean}");
            }
        }
    }

    #[test]
    fn residual_report_aggregates() {
        let s = sp(0.25, 0.25, 0.25);
        let pole = Pole::new(0.5, 0.6, 0.7).unwrap();
        let samples: Vec<FieldPoint> = [[1.4, 1.8, 2.2], [2.0, 1.1, 1.6], [1.2, 2.4, 1.3]]
            .into_iter()
            .map(|c| FieldPoint::from_array(c).unwrap())
            .collect();
        let rep = residual_report(SolutionKind::Q5, &s, &pole, &samples, &fd(), &CTRL);
        assert_eq!(rep.samples.len(), 3);
        assert!(rep.failures.is_empty());
        assert!(rep.max_normalized < 1e-4, "max {}", rep.max_normalized);
    }

    #[test]
    fn system_residual_zero_function() {
        let zero = |_: &TripleArg| Ok(0.0);
        let r = system_residual_of(
            &zero,
            &sp(0.25, 0.25, 0.25),
            &TripleArg::new(-0.2, -0.1, -0.15),
            &fd(),
        )
        .unwrap();
        assert_eq!(r, [0.0; 3]);
    }

    #[test]
    fn system_residual_omega_1_and_8() {
        let s = sp(0.25, 0.25, 0.25);
        let args = TripleArg::new(-0.2, -0.1, -0.15);
        for kind in [SolutionKind::Q1, SolutionKind::Q8] {
            let r = lauricella_system_residual(kind, &s, &args, &fd(), &CTRL).unwrap();
            for (i, v) in r.iter().enumerate() {
                assert!(*v < 1e-4, "{kind} eq {i}: {v}");
            }
        }
    }

    #[test]
    fn constructive_identity_examples() {
        let pt = FieldPoint::new(1.0, 1.0, 1.0).unwrap();
        // the worked identity with u = x^2+y^2+z^2
        let r = constructive_identity_residual(
            WeightIdentity::XYZ,
            &sp(0.3, 0.2, 0.4),
            TestField::SumOfSquares,
            &pt,
            &fd(),
        )
        .unwrap();
        assert!(r < 1e-6, "xyz identity residual {r}");
        // single-axis weight with u = 1: both sides vanish identically
        let r = constructive_identity_residual(
            WeightIdentity::X,
            &sp(0.3, 0.2, 0.4),
            TestField::One,
            &pt,
            &fd(),
        )
        .unwrap();
        assert!(r < 1e-6, "x identity residual {r}");
        // two-axis variant with a transcendental field
        let r = constructive_identity_residual(
            WeightIdentity::YZ,
            &sp(0.3, 0.2, 0.4),
            TestField::SinXTimesY,
            &FieldPoint::new(1.3, 0.8, 1.1).unwrap(),
            &fd(),
        )
        .unwrap();
        assert!(r < 1e-5, "yz identity residual {r}");
    }
}
