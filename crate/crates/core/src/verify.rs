//! Residuals of the functional identities, evaluated on seeded, pole-avoiding
//! samples.
//!
//! Every suite draws its points sequentially from a ChaCha8 stream (so the
//! sample set depends only on the seed), rejects points where any evaluation
//! would come within `min_margin` of a pole, and then evaluates residuals in
//! parallel. The residual norm is the largest absolute coefficient.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmath::{c, expm1, re, two_sinh_half};
use crate::rmatrix::{quasi_period_conjugator, trig_s_scalar, AbcParts, ClassicalFun, MultRFun, RFun};
use crate::tensor::{embed, MatA, Tensor2, Tensor3};
use crate::{bd::AssocBD, Error, Result, C64};

/// Seeded sampling parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    /// Real and imaginary parts are drawn uniformly from `[-rect, rect]`.
    pub rect: f64,
    pub min_margin: f64,
    pub max_rejects: usize,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan { seed: 0, count: 32, rect: 2.0, min_margin: 0.05, max_rejects: 10_000 }
    }
}

impl SamplePlan {
    pub fn new(seed: u64, count: usize) -> Self {
        SamplePlan { seed, count, ..Default::default() }
    }

    /// Draws `count` points of `dim` complex coordinates accepted by `accept`.
    pub fn draw(&self, dim: usize, accept: impl Fn(&[C64]) -> bool) -> Result<Vec<Vec<C64>>> {
        if self.rect.is_nan() || self.rect <= 0.0 || !self.min_margin.is_finite() {
            return Err(Error::OutOfRange(format!("invalid sample plan {self:?}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        for index in 0..self.count {
            let mut rejects = 0;
            loop {
                let p: Vec<C64> = (0..dim)
                    .map(|_| c(rng.gen_range(-self.rect..=self.rect), rng.gen_range(-self.rect..=self.rect)))
                    .collect();
                if accept(&p) {
                    out.push(p);
                    break;
                }
                rejects += 1;
                if rejects >= self.max_rejects {
                    return Err(Error::SamplerExhausted { index, rejects });
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip)]
    pub per_sample: Vec<f64>,
}

impl Report {
    fn from_residuals(suite: &str, plan: &SamplePlan, tol: f64, per_sample: Vec<f64>) -> Self {
        let max_residual = per_sample.iter().cloned().fold(0.0, |m: f64, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) });
        Report {
            suite: suite.to_string(),
            seed: plan.seed,
            samples: per_sample.len(),
            max_residual,
            tol,
            pass: max_residual <= tol,
            per_sample,
        }
    }

    /// One line of the form `suite: PASS max=… tol=…`.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} max_residual={:.3e} tol={:.1e} samples={} seed={}",
            self.suite,
            if self.pass { "PASS" } else { "FAIL" },
            self.max_residual,
            self.tol,
            self.samples,
            self.seed
        )
    }
}

/// Draws points and evaluates `residual` on each in parallel.
pub fn run_suite(
    suite: &str,
    plan: &SamplePlan,
    tol: f64,
    dim: usize,
    accept: impl Fn(&[C64]) -> bool,
    residual: impl Fn(&[C64]) -> Result<f64> + Sync,
) -> Result<Report> {
    let points = plan.draw(dim, accept)?;
    let per_sample = points.par_iter().map(|p| residual(p)).collect::<Result<Vec<f64>>>()?;
    Ok(Report::from_residuals(suite, plan, tol, per_sample))
}

fn min_margin_ok(r: &RFun, pts: &[(C64, C64)], m: f64) -> bool {
    pts.iter().all(|&(u, v)| r.pole_margin(u, v) >= m)
}

/// `r¹²(−u′,v) r¹³(u+u′,v+v′) − r²³(u+u′,v′) r¹²(u,v) + r¹³(u,v+v′) r²³(u′,v′)`.
pub fn aybe_tensor(r: &RFun, u: C64, up: C64, v: C64, vp: C64) -> Result<Tensor3> {
    let t1 = embed(&r.eval(-up, v)?, (1, 2))?.compose(&embed(&r.eval(u + up, v + vp)?, (1, 3))?)?;
    let t2 = embed(&r.eval(u + up, vp)?, (2, 3))?.compose(&embed(&r.eval(u, v)?, (1, 2))?)?;
    let t3 = embed(&r.eval(u, v + vp)?, (1, 3))?.compose(&embed(&r.eval(up, vp)?, (2, 3))?)?;
    Ok(&(&t1 - &t2) + &t3)
}

fn aybe_points(p: &[C64]) -> [(C64, C64); 6] {
    let (u, up, v, vp) = (p[0], p[1], p[2], p[3]);
    [(-up, v), (u + up, v + vp), (u + up, vp), (u, v), (u, v + vp), (up, vp)]
}

pub fn residual_aybe(r: &RFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    run_suite(
        "aybe",
        plan,
        tol,
        4,
        |p| min_margin_ok(r, &aybe_points(p), plan.min_margin),
        |p| Ok(aybe_tensor(r, p[0], p[1], p[2], p[3])?.max_abs()),
    )
}

pub fn residual_unitarity(r: &RFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    run_suite(
        "unitarity",
        plan,
        tol,
        2,
        |p| min_margin_ok(r, &[(p[0], p[1]), (-p[0], -p[1])], plan.min_margin),
        |p| Ok((&r.eval(-p[0], -p[1])?.swap_factors() + &r.eval(p[0], p[1])?).max_abs()),
    )
}

/// Fixed `u` used by the QYBE suite when the caller has no preference.
pub const DEFAULT_QYBE_U: C64 = C64::new(0.37, 0.21);

pub fn residual_qybe(big_r: &RFun, u_fixed: C64, plan: &SamplePlan, tol: f64) -> Result<Report> {
    let u = u_fixed;
    run_suite(
        "qybe",
        plan,
        tol,
        2,
        |p| min_margin_ok(big_r, &[(u, p[0]), (u, p[0] + p[1]), (u, p[1])], plan.min_margin),
        |p| {
            let (v, vp) = (p[0], p[1]);
            let a12 = embed(&big_r.eval(u, v)?, (1, 2))?;
            let a13 = embed(&big_r.eval(u, v + vp)?, (1, 3))?;
            let a23 = embed(&big_r.eval(u, vp)?, (2, 3))?;
            let lhs = &(&a12 * &a13) * &a23;
            let rhs = &(&a23 * &a13) * &a12;
            Ok(lhs.dist(&rhs))
        },
    )
}

pub fn residual_qybe_unitarity(big_r: &RFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    let one = Tensor2::unit2(big_r.n());
    run_suite(
        "qybe_unitarity",
        plan,
        tol,
        2,
        |p| min_margin_ok(big_r, &[(p[0], p[1]), (p[0], -p[1])], plan.min_margin),
        |p| Ok(big_r.eval(p[0], p[1])?.compose(&big_r.eval(p[0], -p[1])?.swap_factors())?.dist(&one)),
    )
}

fn commutator3(a: &Tensor3, b: &Tensor3) -> Tensor3 {
    &(a * b) - &(b * a)
}

/// `[r¹²(v), r¹³(v+v′)] − [r²³(v′), r¹²(v)] + [r¹³(v+v′), r²³(v′)]`.
pub fn cybe_tensor(r: &ClassicalFun, v: C64, vp: C64) -> Result<Tensor3> {
    let a12 = embed(&r.eval(v)?, (1, 2))?;
    let a13 = embed(&r.eval(v + vp)?, (1, 3))?;
    let a23 = embed(&r.eval(vp)?, (2, 3))?;
    Ok(&(&commutator3(&a12, &a13) - &commutator3(&a23, &a12)) + &commutator3(&a13, &a23))
}

pub fn residual_cybe(r0: &ClassicalFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    run_suite(
        "cybe",
        plan,
        tol,
        2,
        |p| [p[0], p[0] + p[1], p[1]].iter().all(|&v| r0.pole_margin(v) >= plan.min_margin),
        |p| Ok(cybe_tensor(r0, p[0], p[1])?.max_abs()),
    )
}

/// Left side of the multiplicative equation at `(x, x′; y1, y2, y3)`.
pub fn aybe2_tensor(rm: &MultRFun, x: C64, xp: C64, y: [C64; 3]) -> Result<Tensor3> {
    let [y1, y2, y3] = y;
    let t1 = embed(&rm.eval(xp.inv(), y1, y2)?, (1, 2))?.compose(&embed(&rm.eval(x * xp, y1, y3)?, (1, 3))?)?;
    let t2 = embed(&rm.eval(x * xp, y2, y3)?, (2, 3))?.compose(&embed(&rm.eval(x, y1, y2)?, (1, 2))?)?;
    let t3 = embed(&rm.eval(x, y1, y3)?, (1, 3))?.compose(&embed(&rm.eval(xp, y2, y3)?, (2, 3))?)?;
    Ok(&(&t1 - &t2) + &t3)
}

/// `r²¹(x; y1, y2) + r(x⁻¹; y2, y1)`.
pub fn mult_unitarity_tensor(rm: &MultRFun, x: C64, y1: C64, y2: C64) -> Result<Tensor2> {
    Ok(&rm.eval(x, y1, y2)?.swap_factors() + &rm.eval(x.inv(), y2, y1)?)
}

fn exp_point(p: &[C64]) -> Vec<C64> {
    p.iter().map(|z| z.exp()).collect()
}

/// The multiplicative identity together with its unitarity condition.
/// Coordinates are drawn as logarithms: `x = e^{z}` and so on.
pub fn residual_aybe2(rm: &MultRFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    let pts = |q: &[C64]| {
        let (x, xp, y1, y2, y3) = (q[0], q[1], q[2], q[3], q[4]);
        [
            (xp.inv(), y1, y2),
            (x * xp, y1, y3),
            (x * xp, y2, y3),
            (x, y1, y2),
            (x, y1, y3),
            (xp, y2, y3),
            (x.inv(), y2, y1),
        ]
    };
    run_suite(
        "aybe2",
        plan,
        tol,
        5,
        |p| {
            let q = exp_point(p);
            pts(&q).iter().all(|&(x, a, b)| rm.pole_margin(x, a, b) >= plan.min_margin)
        },
        |p| {
            let q = exp_point(p);
            let main = aybe2_tensor(rm, q[0], q[1], [q[2], q[3], q[4]])?.max_abs();
            let unit = mult_unitarity_tensor(rm, q[0], q[2], q[3])?.max_abs();
            Ok(main.max(unit))
        },
    )
}

/// Right-hand side of the s-identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum STarget {
    /// `([2 sinh(v/2)]⁻² − [2 sinh(u/2)]⁻²)·1⊗1`.
    Trigonometric,
    /// `1⊗1/v²`.
    InverseSquare,
}

impl STarget {
    pub fn value(self, n: usize, u: C64, v: C64) -> Tensor2 {
        let s = match self {
            STarget::Trigonometric => trig_s_scalar(u, v),
            STarget::InverseSquare => v.powi(-2),
        };
        Tensor2::unit2(n).scale(s)
    }
}

pub fn residual_s_identity(r: &RFun, target: STarget, plan: &SamplePlan, tol: f64) -> Result<Report> {
    let n = r.n();
    run_suite(
        "s_identity",
        plan,
        tol,
        2,
        |p| {
            let (u, v) = (p[0], p[1]);
            min_margin_ok(r, &[(u, v), (-u, v)], plan.min_margin)
                && two_sinh_half(u).norm() >= plan.min_margin
                && two_sinh_half(v).norm() >= plan.min_margin
        },
        |p| {
            let (u, v) = (p[0], p[1]);
            let s = r.eval(u, v)?.compose(&r.eval(-u, v)?)?;
            Ok(s.dist(&target.value(n, u, v)))
        },
    )
}

/// The three expressions of the cubic identity at `(u1, u2, u3, v1, v2, v3)`.
pub fn cubic_expressions(r: &RFun, uu: [C64; 3], vv: [C64; 3]) -> Result<[Tensor3; 3]> {
    let d = |a: [C64; 3], i: usize, j: usize| a[i] - a[j];
    let (u12, u23, u13, u21, u32) = (d(uu, 0, 1), d(uu, 1, 2), d(uu, 0, 2), d(uu, 1, 0), d(uu, 2, 1));
    let (v12, v23, v13) = (d(vv, 0, 1), d(vv, 1, 2), d(vv, 0, 2));
    let e = |u: C64, v: C64, slots| -> Result<Tensor3> { embed(&r.eval(u, v)?, slots) };
    let s = |u: C64, v: C64, slots| -> Result<Tensor3> { embed(&r.eval(u, v)?.compose(&r.eval(-u, v)?)?, slots) };
    let e1 = &(&(&e(u12, v12, (1, 2))? * &e(u23, v13, (1, 3))?) * &e(u12, v23, (2, 3))?)
        - &(&(&e(u23, v23, (2, 3))? * &e(u12, v13, (1, 3))?) * &e(u23, v12, (1, 2))?);
    let r13 = e(u13, v13, (1, 3))?;
    let e2 = &(&s(u23, v23, (2, 3))? * &r13) - &(&r13 * &s(u21, v23, (2, 3))?);
    let e3 = &(&r13 * &s(u32, v12, (1, 2))?) - &(&s(u12, v12, (1, 2))? * &r13);
    Ok([e1, e2, e3])
}

pub fn residual_cubic(r: &RFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    let pts = |p: &[C64]| {
        let (u12, u23, u13) = (p[0] - p[1], p[1] - p[2], p[0] - p[2]);
        let (v12, v23, v13) = (p[3] - p[4], p[4] - p[5], p[3] - p[5]);
        [
            (u12, v12),
            (u23, v13),
            (u12, v23),
            (u23, v23),
            (u12, v13),
            (u23, v12),
            (u13, v13),
            (-u23, v23),
            (-u12, v23),
            (-u23, v12),
            (-u12, v12),
        ]
    };
    run_suite(
        "cubic",
        plan,
        tol,
        6,
        |p| min_margin_ok(r, &pts(p), plan.min_margin),
        |p| {
            let [e1, e2, e3] = cubic_expressions(r, [p[0], p[1], p[2]], [p[3], p[4], p[5]])?;
            Ok(e1.dist(&e2).max(e2.dist(&e3)))
        },
    )
}

/// Largest residual among the four conditions on `(a, b, c)` and the two
/// symmetry relations `a²¹(x⁻¹) + a(x) = P`, `c(x) = b²¹(x⁻¹)`, at `(x, x′)`.
pub fn abc_defects(parts: &AbcParts, x: C64, xp: C64) -> Result<[f64; 6]> {
    let n = parts.n();
    let e = |t: Tensor2, s| embed(&t, s);
    let (a, b, cc) = (|z| parts.a(z), |z| parts.b(z), |z| parts.c(z));
    let xx = x * xp;
    let c1 = &(&(&e(a(xp.inv())?, (1, 2))? * &e(a(xx)?, (1, 3))?) - &(&e(a(xx)?, (2, 3))? * &e(a(x)?, (1, 2))?))
        + &(&e(a(x)?, (1, 3))? * &e(a(xp)?, (2, 3))?);
    let c2 = &e(b(x)?, (1, 2))? * &e(b(xp)?, (1, 3))?;
    let c3 = &(&e(b(x)?, (1, 3))? * &e(b(xp)?, (2, 3))?)
        - &(&(&e(b(xp)?.swap_factors(), (1, 2))? * &e(b(xx)?, (1, 3))?) + &(&e(b(xx)?, (2, 3))? * &e(b(x)?, (1, 2))?));
    let lhs4 = &(&e(cc(x)?, (1, 3))? * &e(a(xp)?, (2, 3))?) + &(&e(a(xp.inv())?, (1, 2))? * &e(cc(xx)?, (1, 3))?);
    let rhs4 = &(&e(cc(xx)?, (2, 3))? * &e(a(x)?, (1, 2))?) - &(&e(a(x)?, (1, 3))? * &e(cc(xp)?, (2, 3))?);
    let s1 = (&a(x.inv())?.swap_factors() + &a(x)?).dist(&Tensor2::perm_p(n));
    let s2 = cc(x)?.dist(&b(x.inv())?.swap_factors());
    Ok([c1.max_abs(), c2.max_abs(), c3.max_abs(), lhs4.dist(&rhs4), s1, s2])
}

pub fn residual_abc(parts: &AbcParts, plan: &SamplePlan, tol: f64) -> Result<Report> {
    let n = parts.n() as u32;
    let ok = |x: C64| (x.powu(n) - 1.0).norm() >= plan.min_margin;
    run_suite(
        "abc",
        plan,
        tol,
        2,
        |p| {
            let (x, xp) = (p[0].exp(), p[1].exp());
            [x, xp, x * xp, x.inv(), xp.inv()].into_iter().all(ok)
        },
        |p| Ok(abc_defects(parts, p[0].exp(), p[1].exp())?.into_iter().fold(0.0, f64::max)),
    )
}

/// Candidate functions for the scalar three-point equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HKind {
    /// `h(v) = 1/v`.
    InverseV,
    /// `h(v) = ½ coth(v/2)`. Leaves the constant residual `1/4`.
    HalfCoth,
    /// `h(v) = ½ coth(v/2) − v/12`, the member `λv + h₀(v)` of the
    /// hyperbolic family that solves the equation.
    HalfCothLinear,
    /// `h(v) = 1/v + ε·v`.
    PerturbedInverse(f64),
}

impl HKind {
    pub fn h(self, v: C64) -> C64 {
        match self {
            HKind::InverseV => v.inv(),
            HKind::HalfCoth => (v * 0.5).cosh() / two_sinh_half(v),
            HKind::HalfCothLinear => (v * 0.5).cosh() / two_sinh_half(v) - v / 12.0,
            HKind::PerturbedInverse(e) => v.inv() + v * e,
        }
    }

    pub fn dh(self, v: C64) -> C64 {
        match self {
            HKind::InverseV => -v.powi(-2),
            HKind::HalfCoth => -two_sinh_half(v).powi(-2),
            HKind::HalfCothLinear => -two_sinh_half(v).powi(-2) - 1.0 / 12.0,
            HKind::PerturbedInverse(e) => -v.powi(-2) + e,
        }
    }

    fn margin(self, v: C64) -> f64 {
        match self {
            HKind::HalfCoth | HKind::HalfCothLinear => expm1(v).norm(),
            _ => v.norm(),
        }
    }
}

/// `[h(v12) + h(v23) + h(v31)]² + h′(v12) + h′(v23) + h′(v31)`.
pub fn h_equation_value(h: HKind, v: [C64; 3]) -> C64 {
    let d = [v[0] - v[1], v[1] - v[2], v[2] - v[0]];
    let s: C64 = d.iter().map(|&z| h.h(z)).sum();
    let ds: C64 = d.iter().map(|&z| h.dh(z)).sum();
    s * s + ds
}

pub fn residual_h_equation(h: HKind, plan: &SamplePlan, tol: f64) -> Result<Report> {
    run_suite(
        "h_equation",
        plan,
        tol,
        3,
        |p| [p[0] - p[1], p[1] - p[2], p[2] - p[0]].iter().all(|&z| h.margin(z) >= plan.min_margin),
        |p| Ok(h_equation_value(h, [p[0], p[1], p[2]]).norm()),
    )
}

pub fn residual_symmetry(r: &RFun, a: &MatA, plan: &SamplePlan, tol: f64) -> Result<Report> {
    run_suite(
        "symmetry",
        plan,
        tol,
        2,
        |p| r.pole_margin(p[0], p[1]) >= plan.min_margin,
        |p| Ok(r.eval(p[0], p[1])?.sym_commutator(a)?.max_abs()),
    )
}

/// The classical identity relating the first two Laurent coefficients:
/// `r0¹²(v) r0¹³(v+v′) − r0²³(v′) r0¹²(v) + r0¹³(v+v′) r0²³(v′)
///  = r1¹²(v) + r1¹³(v+v′) + r1²³(v′)`.
pub fn residual_r0_r1(r0: &ClassicalFun, r1: &ClassicalFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    run_suite(
        "r0_r1",
        plan,
        tol,
        2,
        |p| [p[0], p[0] + p[1], p[1]].iter().all(|&v| r0.pole_margin(v) >= plan.min_margin && r1.pole_margin(v) >= plan.min_margin),
        |p| {
            let (v, vp) = (p[0], p[1]);
            let a12 = embed(&r0.eval(v)?, (1, 2))?;
            let a13 = embed(&r0.eval(v + vp)?, (1, 3))?;
            let a23 = embed(&r0.eval(vp)?, (2, 3))?;
            let lhs = &(&(&a12 * &a13) - &(&a23 * &a12)) + &(&a13 * &a23);
            let rhs = &(&embed(&r1.eval(v)?, (1, 2))? + &embed(&r1.eval(v + vp)?, (1, 3))?) + &embed(&r1.eval(vp)?, (2, 3))?;
            Ok(lhs.dist(&rhs))
        },
    )
}

/// `trig_r(u, v + 2πi) = (D⊗1) trig_r(u, v) (D⁻¹⊗1)`, plus the two full
/// periods `u + 2πiN` and `v + 2πiN`.
pub fn residual_quasi_period(r: &RFun, bd: &AssocBD, plan: &SamplePlan, tol: f64) -> Result<Report> {
    let n = bd.n();
    let d = quasi_period_conjugator(bd);
    let dinv = MatA::diagonal(&d.diag().iter().map(|z| z.inv()).collect::<Vec<_>>());
    let id = MatA::identity(n);
    let tau = c(0.0, 2.0 * std::f64::consts::PI);
    let big = tau * n as f64;
    run_suite(
        "quasi_period",
        plan,
        tol,
        2,
        |p| r.pole_margin(p[0], p[1]) >= plan.min_margin,
        |p| {
            let (u, v) = (p[0], p[1]);
            let base = r.eval(u, v)?;
            let shifted = r.eval(u, v + tau)?;
            let conj = base.sandwich((&d, &id), (&dinv, &id))?;
            let e1 = shifted.dist(&conj);
            let e2 = r.eval(u + big, v)?.dist(&base);
            let e3 = r.eval(u, v + big)?.dist(&base);
            Ok(e1.max(e2).max(e3))
        },
    )
}

/// `𝐫²¹(−v) + 𝐫(v) = 1⊗1` for a one-variable function.
pub fn residual_shifted_unitarity(r: &ClassicalFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    let one = Tensor2::unit2(r.n());
    run_suite(
        "shifted_unitarity",
        plan,
        tol,
        1,
        |p| r.pole_margin(p[0]) >= plan.min_margin && r.pole_margin(-p[0]) >= plan.min_margin,
        |p| Ok((&r.eval(-p[0])?.swap_factors() + &r.eval(p[0])?).dist(&one)),
    )
}

/// `max |f(v) − g(v)|` over sampled `v`.
pub fn residual_match(name: &str, f: &ClassicalFun, g: &ClassicalFun, plan: &SamplePlan, tol: f64) -> Result<Report> {
    run_suite(
        name,
        plan,
        tol,
        1,
        |p| f.pole_margin(p[0]) >= plan.min_margin && g.pole_margin(p[0]) >= plan.min_margin,
        |p| Ok(f.eval(p[0])?.dist(&g.eval(p[0])?)),
    )
}

/// Constant perturbation used for mutation checks: `0.1·e_11⊗e_11`, plus
/// `0.1·e_12⊗e_11` when `N ≥ 2` (which does not commute with
/// non-scalar diagonal symmetries).
pub fn standard_perturbation(n: usize) -> Tensor2 {
    let mut t = Tensor2::elementary(n, 0, 0, 0, 0, re(0.1));
    if n >= 2 {
        t.add_coeff(0, 1, 0, 0, re(0.1));
    }
    t
}
