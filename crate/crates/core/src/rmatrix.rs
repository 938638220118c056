//! Constructors for the explicit solution families and the quantities derived
//! from them.
//!
//! Three function shapes are used:
//!
//! * [`RFun`]: `(u, v) ↦ A⊗A`, for additive solutions and quantum R-matrices;
//! * [`MultRFun`]: `(x; y, y′) ↦ A⊗A`, the multiplicative form;
//! * [`ClassicalFun`]: `v ↦ A⊗A`, classical r-matrices.
//!
//! Every function carries a pole margin: a nonnegative number that is small
//! near a pole of the formula. Evaluation refuses points with a margin below
//! [`HARD_POLE_EPS`]; samplers ask for a much larger margin.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::bd::{AssocBD, OrderedAssocBD, Pair};
use crate::cmath::{c, expm1, inv_expm1, powi, re, two_sinh_half};
use crate::tensor::{embed, MatA, Tensor2};
use crate::{Error, Result, C64};

/// Evaluation fails below this pole margin.
pub const HARD_POLE_EPS: f64 = 1e-12;

type Eval2 = dyn Fn(C64, C64) -> Result<Tensor2> + Send + Sync;
type Eval3 = dyn Fn(C64, C64, C64) -> Result<Tensor2> + Send + Sync;
type Eval1 = dyn Fn(C64) -> Result<Tensor2> + Send + Sync;
type Margin2 = dyn Fn(C64, C64) -> f64 + Send + Sync;
type Margin3 = dyn Fn(C64, C64, C64) -> f64 + Send + Sync;
type Margin1 = dyn Fn(C64) -> f64 + Send + Sync;

/// Which family a function belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RKind {
    Trig,
    Quantum,
    PhiA,
    Rational,
    Nilpotent,
    Gauge,
    Multiplicative,
    Massey,
    ClassicalR0,
    R0Numeric,
    Custom,
    Perturbed,
}

/// A tensor-valued function of `(u, v)`.
#[derive(Clone)]
pub struct RFun {
    n: usize,
    kind: RKind,
    eval: Arc<Eval2>,
    margin: Arc<Margin2>,
}

impl std::fmt::Debug for RFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RFun").field("n", &self.n).field("kind", &self.kind).finish()
    }
}

impl RFun {
    pub fn new(
        n: usize,
        kind: RKind,
        eval: impl Fn(C64, C64) -> Result<Tensor2> + Send + Sync + 'static,
        margin: impl Fn(C64, C64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        RFun { n, kind, eval: Arc::new(eval), margin: Arc::new(margin) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> RKind {
        self.kind
    }

    pub fn pole_margin(&self, u: C64, v: C64) -> f64 {
        (self.margin)(u, v)
    }

    pub fn eval(&self, u: C64, v: C64) -> Result<Tensor2> {
        let m = self.pole_margin(u, v);
        if m.is_nan() || m <= HARD_POLE_EPS {
            return Err(Error::PoleGuard(format!("({u}, {v}) is within {m:.3e} of a pole")));
        }
        (self.eval)(u, v)
    }

    /// `r + δ`, with `δ` constant.
    pub fn perturbed(&self, delta: Tensor2) -> RFun {
        let base = self.clone();
        let m = self.margin.clone();
        RFun::new(self.n, RKind::Perturbed, move |u, v| Ok(&base.eval(u, v)? + &delta), move |u, v| m(u, v))
    }

    /// `s · r`.
    pub fn scaled(&self, s: C64) -> RFun {
        let base = self.clone();
        let m = self.margin.clone();
        RFun::new(self.n, RKind::Perturbed, move |u, v| Ok(base.eval(u, v)?.scale(s)), move |u, v| m(u, v))
    }
}

/// A tensor-valued function of `(x; y, y′)`.
#[derive(Clone)]
pub struct MultRFun {
    n: usize,
    kind: RKind,
    eval: Arc<Eval3>,
    margin: Arc<Margin3>,
}

impl std::fmt::Debug for MultRFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultRFun").field("n", &self.n).field("kind", &self.kind).finish()
    }
}

/// Distance-to-pole for the multiplicative families:
/// `min(|x^N − 1|, |y − y′|, |x|, |y|, |y′|)`.
pub fn mult_margin(n: usize, x: C64, y: C64, yp: C64) -> f64 {
    [(x.powu(n as u32) - 1.0).norm(), (y - yp).norm(), x.norm(), y.norm(), yp.norm()]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

impl MultRFun {
    pub fn new(
        n: usize,
        kind: RKind,
        eval: impl Fn(C64, C64, C64) -> Result<Tensor2> + Send + Sync + 'static,
    ) -> Self {
        MultRFun { n, kind, eval: Arc::new(eval), margin: Arc::new(move |x, y, yp| mult_margin(n, x, y, yp)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> RKind {
        self.kind
    }

    pub fn pole_margin(&self, x: C64, y: C64, yp: C64) -> f64 {
        (self.margin)(x, y, yp)
    }

    pub fn eval(&self, x: C64, y: C64, yp: C64) -> Result<Tensor2> {
        let m = self.pole_margin(x, y, yp);
        if m.is_nan() || m <= HARD_POLE_EPS {
            return Err(Error::PoleGuard(format!("(x, y, y') = ({x}, {y}, {yp}) is within {m:.3e} of a pole")));
        }
        (self.eval)(x, y, yp)
    }

    pub fn perturbed(&self, delta: Tensor2) -> MultRFun {
        let base = self.clone();
        MultRFun { kind: RKind::Perturbed, eval: Arc::new(move |x, y, yp| Ok(&base.eval(x, y, yp)? + &delta)), ..self.clone() }
    }
}

/// A tensor-valued function of one variable `v`.
#[derive(Clone)]
pub struct ClassicalFun {
    n: usize,
    kind: RKind,
    eval: Arc<Eval1>,
    margin: Arc<Margin1>,
}

impl std::fmt::Debug for ClassicalFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassicalFun").field("n", &self.n).field("kind", &self.kind).finish()
    }
}

impl ClassicalFun {
    pub fn new(
        n: usize,
        kind: RKind,
        eval: impl Fn(C64) -> Result<Tensor2> + Send + Sync + 'static,
        margin: impl Fn(C64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ClassicalFun { n, kind, eval: Arc::new(eval), margin: Arc::new(margin) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> RKind {
        self.kind
    }

    pub fn pole_margin(&self, v: C64) -> f64 {
        (self.margin)(v)
    }

    pub fn eval(&self, v: C64) -> Result<Tensor2> {
        let m = self.pole_margin(v);
        if m.is_nan() || m <= HARD_POLE_EPS {
            return Err(Error::PoleGuard(format!("v = {v} is within {m:.3e} of a pole")));
        }
        (self.eval)(v)
    }

    pub fn perturbed(&self, delta: Tensor2) -> ClassicalFun {
        let base = self.clone();
        ClassicalFun { kind: RKind::Perturbed, eval: Arc::new(move |v| Ok(&base.eval(v)? + &delta)), ..self.clone() }
    }
}

fn exp_margin(z: C64) -> f64 {
    expm1(z).norm()
}

/// Precomputed index lists of the trigonometric formula.
struct TrigTerms {
    n: usize,
    /// `(k, p, q)`: `e^{ku/N}/(e^u − 1) · e_pp ⊗ e_qq` with `p = C^k(q)`.
    diag_u: Vec<(usize, usize, usize)>,
    /// `(m, i, j)`: `e^{mv/N}/(e^v − 1) · e_ij ⊗ e_ji` with `j = C0^m(i)`.
    off_v: Vec<(usize, usize, usize)>,
    /// `(k, m, (i, j), (i′, j′))` with `τ^k(i, j) = (i′, j′)`.
    tau: Vec<(usize, usize, Pair, Pair)>,
}

impl TrigTerms {
    fn new(bd: &AssocBD) -> Self {
        let n = bd.n();
        let mut diag_u = Vec::new();
        for k in 0..n {
            let ck = bd.c().pow(k as i64);
            for i in 0..n {
                diag_u.push((k, ck[i], i));
            }
        }
        let mut off_v = Vec::new();
        let mut tau = Vec::new();
        let depth = bd.nilpotency_depth();
        for m in 1..n {
            let c0m = bd.c0().pow(m as i64);
            for i in 0..n {
                let j = c0m[i];
                off_v.push((m, i, j));
                for k in 1..=depth {
                    if let Some(img) = bd.tau_apply((i, j), k as i64) {
                        tau.push((k, m, (i, j), img));
                    }
                }
            }
        }
        TrigTerms { n, diag_u, off_v, tau }
    }

    fn eval(&self, u: C64, v: C64) -> Tensor2 {
        let n = self.n;
        let nf = n as f64;
        let mut t = Tensor2::zeros(n);
        let a = -inv_expm1(-v);
        for i in 0..n {
            t.add_coeff(i, i, i, i, a);
        }
        let iu = inv_expm1(u);
        for &(k, p, q) in &self.diag_u {
            t.add_coeff(p, p, q, q, iu * (u * (k as f64 / nf)).exp());
        }
        let iv = inv_expm1(v);
        for &(m, i, j) in &self.off_v {
            t.add_coeff(i, j, j, i, iv * (v * (m as f64 / nf)).exp());
        }
        for &(k, m, (i, j), (ip, jp)) in &self.tau {
            let w = (u * k as f64 + v * m as f64) / nf;
            t.add_coeff(j, i, ip, jp, (-w).exp());
            t.add_coeff(ip, jp, j, i, -w.exp());
        }
        t
    }
}

/// The trigonometric solution attached to an associative BD-structure.
pub fn trig_r(bd: &AssocBD) -> RFun {
    let terms = Arc::new(TrigTerms::new(bd));
    RFun::new(
        bd.n(),
        RKind::Trig,
        move |u, v| Ok(terms.eval(u, v)),
        |u, v| exp_margin(u).min(exp_margin(v)).min(exp_margin(-v)),
    )
}

/// `[2 sinh(u/2)]⁻¹ + [2 sinh(v/2)]⁻¹`.
pub fn quantum_denominator(u: C64, v: C64) -> C64 {
    two_sinh_half(u).inv() + two_sinh_half(v).inv()
}

/// `R(u, v) = r(u, v) / ([2 sinh(u/2)]⁻¹ + [2 sinh(v/2)]⁻¹)`.
pub fn quantum_r(bd: &AssocBD) -> RFun {
    let terms = Arc::new(TrigTerms::new(bd));
    RFun::new(
        bd.n(),
        RKind::Quantum,
        move |u, v| Ok(terms.eval(u, v).scale(quantum_denominator(u, v).inv())),
        |u, v| {
            let base = exp_margin(u).min(exp_margin(v)).min(exp_margin(-v));
            if base <= HARD_POLE_EPS {
                return base;
            }
            base.min(quantum_denominator(u, v).norm())
        },
    )
}

/// `2πi` quasi-period conjugator: `D = diag(e^{−2πi·pos(p)/N})`, where
/// `pos(C0^m(0)) = m`.
pub fn quasi_period_conjugator(bd: &AssocBD) -> MatA {
    let n = bd.n();
    let pos = bd.c0().positions_from(0);
    MatA::diagonal(&(0..n).map(|p| c(0.0, -2.0 * PI * pos[p] as f64 / n as f64).exp()).collect::<Vec<_>>())
}

/// Index data for the multiplicative formula of an ordered structure.
struct MultTerms {
    n: usize,
    /// `(k, i, C^k i)` for the `x^k/(1 − x^N)` diagonal sum.
    diag_x: Vec<(usize, usize, usize)>,
    /// Positive pairs `α`.
    positive: Vec<Pair>,
    /// `(k, α, τ^k α)` with `α > 0`.
    tau_pos: Vec<(usize, Pair, Pair)>,
    /// `(k, α, τ^k α)` with `α < 0`.
    tau_neg: Vec<(usize, Pair, Pair)>,
}

impl MultTerms {
    fn new(obd: &OrderedAssocBD) -> Self {
        let n = obd.n();
        let bd = obd.bd();
        let mut diag_x = Vec::new();
        for k in 0..n {
            let ck = bd.c().pow(k as i64);
            for i in 0..n {
                diag_x.push((k, i, ck[i]));
            }
        }
        let positive = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j && obd.less(i, j)).collect();
        let mut tau_pos = Vec::new();
        let mut tau_neg = Vec::new();
        for k in 1..=bd.nilpotency_depth() {
            for &alpha in bd.chain_sets().0 {
                if let Some(beta) = bd.tau_apply(alpha, k as i64) {
                    if obd.is_positive(alpha) {
                        tau_pos.push((k, alpha, beta));
                    } else {
                        tau_neg.push((k, alpha, beta));
                    }
                }
            }
        }
        MultTerms { n, diag_x, positive, tau_pos, tau_neg }
    }

    fn a(&self, x: C64) -> Tensor2 {
        let n = self.n;
        let mut t = Tensor2::zeros(n);
        let g = (re(1.0) - x.powu(n as u32)).inv();
        for &(k, i, j) in &self.diag_x {
            t.add_coeff(i, i, j, j, g * x.powu(k as u32));
        }
        for &(i, j) in &self.positive {
            t.add_coeff(i, j, j, i, re(1.0));
        }
        for &(k, (i, j), (bi, bj)) in &self.tau_pos {
            // x^k e_α ⊗ e_{−β} − x^{−k} e_{−β} ⊗ e_α
            t.add_coeff(i, j, bj, bi, x.powu(k as u32));
            t.add_coeff(bj, bi, i, j, -powi(x, -(k as i64)));
        }
        t
    }

    fn b(&self, x: C64) -> Tensor2 {
        let mut t = Tensor2::zeros(self.n);
        for &(k, (i, j), (bi, bj)) in &self.tau_neg {
            t.add_coeff(i, j, bj, bi, x.powu(k as u32));
        }
        t
    }

    fn c(&self, x: C64) -> Tensor2 {
        let mut t = Tensor2::zeros(self.n);
        for &(k, (i, j), (bi, bj)) in &self.tau_neg {
            t.add_coeff(bj, bi, i, j, powi(x, -(k as i64)));
        }
        t
    }

    fn r(&self, x: C64, y: C64, yp: C64) -> Tensor2 {
        let p = Tensor2::perm_p(self.n).scale(y / (yp - y));
        let mut t = self.a(x);
        t += &self.b(x).scale(y);
        t += &self.c(x).scale(-yp);
        t += &p;
        t
    }
}

fn require_alpha0_outside_gamma2(obd: &OrderedAssocBD) -> Result<()> {
    if obd.alpha0_in_gamma2() {
        return Err(Error::Precondition("alpha0 lies in gamma2".into()));
    }
    Ok(())
}

/// The multiplicative-form solution of an ordered structure with `α0 ∉ Γ2`.
pub fn r_multiplicative(obd: &OrderedAssocBD) -> Result<MultRFun> {
    require_alpha0_outside_gamma2(obd)?;
    let terms = Arc::new(MultTerms::new(obd));
    Ok(MultRFun::new(obd.n(), RKind::Multiplicative, move |x, y, yp| Ok(terms.r(x, y, yp))))
}

/// `r_const(x, z)`: the multiplicative formula with every `τ` term dropped.
pub fn r_const(obd: &OrderedAssocBD, x: C64, z: C64) -> Tensor2 {
    let n = obd.n();
    let mut t = Tensor2::zeros(n);
    let zz = z / (re(1.0) - z);
    let one = (re(1.0) - z).inv();
    for i in 0..n {
        for j in 0..n {
            if i != j && obd.less(i, j) {
                t.add_coeff(j, i, i, j, zz);
                t.add_coeff(i, j, j, i, one);
            }
        }
        t.add_coeff(i, i, i, i, zz);
    }
    let g = (re(1.0) - x.powu(n as u32)).inv();
    for k in 0..n {
        let ck = obd.bd().c().pow(k as i64);
        for i in 0..n {
            t.add_coeff(i, i, ck[i], ck[i], g * x.powu(k as u32));
        }
    }
    t
}

/// The pieces of `r(x; y, y′) = a(x) + y·b(x) − y′·c(x) + y/(y′ − y)·P`.
#[derive(Clone)]
pub struct AbcParts {
    terms: Arc<MultTerms>,
}

impl AbcParts {
    pub fn new(obd: &OrderedAssocBD) -> Result<Self> {
        require_alpha0_outside_gamma2(obd)?;
        Ok(AbcParts { terms: Arc::new(MultTerms::new(obd)) })
    }

    pub fn n(&self) -> usize {
        self.terms.n
    }

    fn guard(&self, x: C64) -> Result<()> {
        if (x.powu(self.terms.n as u32) - 1.0).norm() <= HARD_POLE_EPS || x.norm() <= HARD_POLE_EPS {
            return Err(Error::PoleGuard(format!("x = {x} is a pole of a(x)")));
        }
        Ok(())
    }

    pub fn a(&self, x: C64) -> Result<Tensor2> {
        self.guard(x)?;
        Ok(self.terms.a(x))
    }

    pub fn b(&self, x: C64) -> Result<Tensor2> {
        self.guard(x)?;
        Ok(self.terms.b(x))
    }

    pub fn c(&self, x: C64) -> Result<Tensor2> {
        self.guard(x)?;
        Ok(self.terms.c(x))
    }
}

/// `(a(x), b(x), c(x))` for an ordered structure with `α0 ∉ Γ2`.
pub fn abc_parts(obd: &OrderedAssocBD, x: C64) -> Result<(Tensor2, Tensor2, Tensor2)> {
    let parts = AbcParts::new(obd)?;
    Ok((parts.a(x)?, parts.b(x)?, parts.c(x)?))
}

/// A function of `(u1, u2, v1, v2)`.
pub type DifferenceFn = Arc<dyn Fn(C64, C64, C64, C64) -> Result<Tensor2> + Send + Sync>;

/// Rewrites the multiplicative solution in exponential variables
/// `x = e^{(u1−u2)/N}`, `y = e^{v1}`, `y′ = e^{v2}` and applies the diagonal
/// gauge that multiplies `e_ij ⊗ e_{j′i′}` by
/// `exp(((j − i)·v1 − (j′ − i′)·v2)/N)`, with labels read as order positions.
pub fn to_difference_form(obd: &OrderedAssocBD) -> Result<DifferenceFn> {
    let rm = r_multiplicative(obd)?;
    let n = obd.n();
    let pos: Vec<f64> = obd.positions().iter().map(|&p| p as f64).collect();
    Ok(Arc::new(move |u1: C64, u2: C64, v1: C64, v2: C64| {
        let nf = n as f64;
        let x = ((u1 - u2) / nf).exp();
        let t = rm.eval(x, v1.exp(), v2.exp())?;
        Ok(Tensor2::from_coeff_fn(n, |p, q, r, s| {
            let z = t.coeff(p, q, r, s);
            if z == C64::new(0.0, 0.0) {
                return z;
            }
            // e_pq ⊗ e_rs = e_ij ⊗ e_{j′i′} with (i, j) = (p, q), (j′, i′) = (r, s)
            let w = (v1 * (pos[q] - pos[p]) - v2 * (pos[r] - pos[s])) / nf;
            z * w.exp()
        }))
    }))
}

fn require_diagonal(m: &MatA, name: &str) -> Result<()> {
    if !m.is_diagonal() {
        return Err(Error::Precondition(format!("{name} must be diagonal")));
    }
    Ok(())
}

/// Sample points used to check infinitesimal symmetries.
const SYMMETRY_PROBES: [(f64, f64, f64, f64); 3] =
    [(0.37, 0.21, -0.53, 0.44), (-0.81, 0.63, 0.29, -0.71), (0.55, -0.92, 1.13, 0.17)];

/// `max |[a⊗1 + 1⊗a, r(u, v)]|` over three fixed probe points, relative to
/// `max |r|`.
pub fn symmetry_defect(r: &RFun, a: &MatA) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &(ur, ui, vr, vi) in &SYMMETRY_PROBES {
        let t = r.eval(c(ur, ui), c(vr, vi))?;
        let scale = t.max_abs().max(1.0);
        worst = worst.max(t.sym_commutator(a)?.max_abs() / scale);
    }
    Ok(worst)
}

/// `c·e^{λuv}·exp[u(1⊗a) + v(b⊗1)]·r(cu, c′v)·exp[−u(a⊗1) − v(b⊗1)]` for
/// diagonal infinitesimal symmetries `a`, `b` of `r`.
pub fn gauge_family(r: &RFun, lambda: C64, cc: C64, cp: C64, a: &MatA, b: &MatA) -> Result<RFun> {
    if cc.norm() == 0.0 || cp.norm() == 0.0 {
        return Err(Error::Precondition("c and c' must be nonzero".into()));
    }
    require_diagonal(a, "a")?;
    require_diagonal(b, "b")?;
    for (name, m) in [("a", a), ("b", b)] {
        let d = symmetry_defect(r, m)?;
        if d > 1e-8 {
            return Err(Error::Precondition(format!("{name} is not an infinitesimal symmetry (defect {d:.3e})")));
        }
    }
    let n = r.n();
    let (base, base_m) = (r.clone(), r.clone());
    let (a, b) = (a.clone(), b.clone());
    let id = MatA::identity(n);
    Ok(RFun::new(
        n,
        RKind::Gauge,
        move |u, v| {
            let t = base.eval(cc * u, cp * v)?;
            let left = (&b.exp_diagonal(v)?, &a.exp_diagonal(u)?);
            let right_first = &a.exp_diagonal(-u)? * &b.exp_diagonal(-v)?;
            let out = t.sandwich(left, (&right_first, &id))?;
            Ok(out.scale(cc * (lambda * u * v).exp()))
        },
        move |u, v| base_m.pole_margin(cc * u, cp * v),
    ))
}

/// The operator `X ↦ cu·X + [a, X]` on `A`, in the row-major basis `e_pq`.
fn phi_operator(a: &MatA, cu: C64) -> DMatrix<C64> {
    let n = a.n();
    let d = n * n;
    let mut l = DMatrix::from_element(d, d, c(0.0, 0.0));
    for p in 0..n {
        for q in 0..n {
            let col = p * n + q;
            l[(col, col)] += cu;
            // a·e_pq = Σ_r a_rp e_rq ; e_pq·a = Σ_s a_qs e_ps
            for r in 0..n {
                l[(r * n + q, col)] += a.get(r, p);
            }
            for s in 0..n {
                l[(p * n + s, col)] -= a.get(q, s);
            }
        }
    }
    l
}

fn smallest_singular_value(m: &DMatrix<C64>) -> f64 {
    m.singular_values().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Smallest singular value allowed for the operators inverted by
/// [`phi_a_r`] and by the bundle oracle.
pub const SINGULAR_GUARD: f64 = 1e-8;

/// `r(u) = (φ_a(cu) ⊗ id)(P)` where `Y = φ_a(cu)(X)` solves
/// `cu·Y + [a, Y] = X`. The result does not depend on `v`.
pub fn phi_a_r(a: &MatA, cc: C64) -> Result<RFun> {
    if cc.norm() == 0.0 {
        return Err(Error::Precondition("c must be nonzero".into()));
    }
    let n = a.n();
    let (a1, a2) = (a.clone(), a.clone());
    Ok(RFun::new(
        n,
        RKind::PhiA,
        move |u, _v| {
            let l = phi_operator(&a1, cc * u);
            let smin = smallest_singular_value(&l);
            if smin <= SINGULAR_GUARD {
                return Err(Error::Singular(format!("cu + ad_a is singular at u = {u} (sigma_min = {smin:.3e})")));
            }
            let inv = l.lu().try_inverse().ok_or_else(|| Error::Singular(format!("cu + ad_a at u = {u}")))?;
            let mut t = Tensor2::zeros(n);
            for p in 0..n {
                for q in 0..n {
                    // φ(e_pq) ⊗ e_qp
                    let col = p * n + q;
                    for r in 0..n {
                        for s in 0..n {
                            t.add_coeff(r, s, q, p, inv[(r * n + s, col)]);
                        }
                    }
                }
            }
            Ok(t)
        },
        move |u, _v| smallest_singular_value(&phi_operator(&a2, cc * u)),
    ))
}

/// Checks the two conditions on `ω` for the nilpotent family of degree `deg`.
pub fn check_nilpotent_omega(omega: &Tensor2, deg: u32) -> Result<()> {
    let scale = omega.max_abs().max(1.0);
    let prod = embed(omega, (1, 2))?.compose(&embed(omega, (1, 3))?)?;
    if prod.max_abs() > 1e-12 * scale * scale {
        return Err(Error::Precondition(format!("omega^12 omega^13 = {:.3e}, expected 0", prod.max_abs())));
    }
    let sign = if (deg - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let d = omega.swap_factors().dist(&omega.scale(re(sign)));
    if d > 1e-12 * scale {
        return Err(Error::Precondition(format!("omega^21 differs from (-1)^(n-1) omega by {d:.3e}")));
    }
    Ok(())
}

/// `r(u, v) = ω/u^deg + P/v`.
pub fn nilpotent_r(omega: &Tensor2, deg: u32) -> Result<RFun> {
    if deg == 0 {
        return Err(Error::Precondition("the pole order must be at least 1".into()));
    }
    check_nilpotent_omega(omega, deg)?;
    let n = omega.n();
    let omega = omega.clone();
    let p = Tensor2::perm_p(n);
    Ok(RFun::new(
        n,
        RKind::Nilpotent,
        move |u, v| Ok(&omega.scale(u.powu(deg).inv()) + &p.scale(v.inv())),
        |u, v| u.norm().min(v.norm()),
    ))
}

/// `R(u, v) = (1 + cu/v)⁻¹ (1⊗1 + u·P/v)` on `Mat(n)`.
pub fn rational_r(n: usize, cc: C64) -> Result<RFun> {
    if cc.norm() == 0.0 {
        return Err(Error::Precondition("c must be nonzero".into()));
    }
    let one = Tensor2::unit2(n);
    let p = Tensor2::perm_p(n);
    Ok(RFun::new(
        n,
        RKind::Rational,
        move |u, v| {
            let t = &one + &p.scale(u / v);
            Ok(t.scale((re(1.0) + cc * u / v).inv()))
        },
        move |u, v| v.norm().min((v + cc * u).norm()),
    ))
}

/// `s_C = Σ_{0<k<N, i} (½ − k/N) e_ii ⊗ e_{C^k i, C^k i}`.
pub fn s_c(bd: &AssocBD) -> Tensor2 {
    let n = bd.n();
    let mut t = Tensor2::zeros(n);
    for k in 1..n {
        let ck = bd.c().pow(k as i64);
        for i in 0..n {
            t.add_coeff(i, i, ck[i], ck[i], re(0.5 - k as f64 / n as f64));
        }
    }
    t
}

/// The `sl_N ⊗ sl_N`-valued classical r-matrix of a structure.
pub fn classical_r0(bd: &AssocBD) -> ClassicalFun {
    let n = bd.n();
    let nf = n as f64;
    let p0 = Tensor2::diag_p0(n).project_sl(&[1, 2]);
    let t_const = &p0.scale(re(0.5)) + &s_c(bd);
    let terms = TrigTerms::new(bd);
    let off_v = terms.off_v;
    let tau = terms.tau;
    ClassicalFun::new(
        n,
        RKind::ClassicalR0,
        move |v| {
            let iv = inv_expm1(v);
            let mut t = &t_const + &p0.scale(iv);
            for &(m, i, j) in &off_v {
                t.add_coeff(i, j, j, i, iv * (v * (m as f64 / nf)).exp());
            }
            for &(_, m, (i, j), (ip, jp)) in &tau {
                let w = v * (m as f64 / nf);
                t.add_coeff(j, i, ip, jp, (-w).exp());
                t.add_coeff(ip, jp, j, i, -w.exp());
            }
            Ok(t)
        },
        exp_margin,
    )
}

/// Default half-width of the symmetric Laurent extraction.
pub const DEFAULT_EPS: f64 = 1e-4;

/// Generic `u` at which the `v`-poles of a function are probed.
const U_PROBE: C64 = C64::new(0.71, 0.29);

/// Pole margin in `v` for the Laurent coefficients at `u = 0`. The `u = ±ε`
/// points are always close to the pole in `u`, so the margin is read off at a
/// generic `u` instead, as long as `±ε` themselves are admissible.
fn laurent_margin(r: &RFun, eps: f64, v: C64) -> f64 {
    if r.pole_margin(re(eps), v).min(r.pole_margin(re(-eps), v)) <= HARD_POLE_EPS {
        return 0.0;
    }
    r.pole_margin(U_PROBE, v).min(r.pole_margin(-U_PROBE, v))
}

/// `r₀(v) ≈ (r(ε, v) + r(−ε, v))/2`.
pub fn r0_numeric(r: &RFun, eps: f64) -> ClassicalFun {
    let (r1, r2) = (r.clone(), r.clone());
    ClassicalFun::new(
        r.n(),
        RKind::R0Numeric,
        move |v| {
            let a = r1.eval(re(eps), v)?;
            let b = r1.eval(re(-eps), v)?;
            Ok((&a + &b).scale(re(0.5)))
        },
        move |v| laurent_margin(&r2, eps, v),
    )
}

/// `r₁(v) ≈ [(r(ε, v) − r(−ε, v))/2 − 1⊗1/ε]/ε`.
pub fn r1_numeric(r: &RFun, eps: f64) -> ClassicalFun {
    let (r1, r2) = (r.clone(), r.clone());
    let one = Tensor2::unit2(r.n());
    ClassicalFun::new(
        r.n(),
        RKind::R0Numeric,
        move |v| {
            let a = r1.eval(re(eps), v)?;
            let b = r1.eval(re(-eps), v)?;
            let odd = &(&a - &b).scale(re(0.5)) - &one.scale(re(1.0 / eps));
            Ok(odd.scale(re(1.0 / eps)))
        },
        move |v| laurent_margin(&r2, eps, v),
    )
}

/// `s(u, v) = r(u, v)·r(−u, v)`.
pub fn s_product(r: &RFun, u: C64, v: C64) -> Result<Tensor2> {
    r.eval(u, v)?.compose(&r.eval(-u, v)?)
}

/// The scalar `[2 sinh(v/2)]⁻² − [2 sinh(u/2)]⁻²`.
pub fn trig_s_scalar(u: C64, v: C64) -> C64 {
    two_sinh_half(v).powi(-2) - two_sinh_half(u).powi(-2)
}

/// `a = Σ_i O(i0, i)/N · e_ii`, where `O(i0, i)` is the least `k ≥ 0` with
/// `C^k(i0) = i`. Requires that `Γ2` contain neither `(C0⁻¹ i0, i0)` nor
/// `(i0, C0 i0)`: a chain of `Γ2` through `i0` would make the `τ`-terms pick
/// up a factor `e^{±u}` under the gauge of [`schedler_gauge`].
pub fn schedler_symmetry(bd: &AssocBD, i0: usize) -> Result<MatA> {
    let n = bd.n();
    if i0 >= n {
        return Err(Error::OutOfRange(format!("i0 = {} exceeds N = {n}", i0 + 1)));
    }
    let before = (bd.c0().inverse().apply(i0), i0);
    let after = (i0, bd.c0().apply(i0));
    if bd.gamma2().contains(&before) || bd.gamma2().contains(&after) {
        return Err(Error::Precondition(format!("gamma2 contains an edge adjacent to label {}", i0 + 1)));
    }
    let orbit = bd.c().positions_from(i0);
    Ok(MatA::diagonal(&orbit.iter().map(|&k| re(k as f64 / n as f64)).collect::<Vec<_>>()))
}

/// `e^{u(1⊗a)}·r(u, v)·e^{−u(a⊗1)}` for diagonal `a`.
pub fn schedler_gauge(r: &RFun, a: &MatA) -> Result<RFun> {
    require_diagonal(a, "a")?;
    let n = r.n();
    let (base, base_m) = (r.clone(), r.clone());
    let a = a.clone();
    let id = MatA::identity(n);
    Ok(RFun::new(
        n,
        RKind::Gauge,
        move |u, v| base.eval(u, v)?.sandwich((&id, &a.exp_diagonal(u)?), (&a.exp_diagonal(-u)?, &id)),
        move |u, v| base_m.pole_margin(u, v),
    ))
}

/// `𝐫(v)`: the gauged function minus `1⊗1/(e^u − 1)`, read off at `u = u0`.
pub fn schedler_reduced(r: &RFun, a: &MatA, u0: C64) -> Result<ClassicalFun> {
    let g = schedler_gauge(r, a)?;
    let g2 = g.clone();
    let one = Tensor2::unit2(r.n());
    Ok(ClassicalFun::new(
        r.n(),
        RKind::Gauge,
        move |v| Ok(&g.eval(u0, v)? - &one.scale(inv_expm1(u0))),
        move |v| g2.pole_margin(u0, v),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::{enumerate, from_one_based};

    #[test]
    fn trig_scalar_case() {
        let bd = enumerate(1).unwrap().remove(0);
        let r = trig_r(&bd);
        let l2 = re(2f64.ln());
        let t = r.eval(l2, l2).unwrap();
        assert!((t.coeff(0, 0, 0, 0) - 3.0).norm() < 1e-14);
    }

    #[test]
    fn quantum_scalar_case() {
        let bd = enumerate(1).unwrap().remove(0);
        let (u, v) = (c(0.4, 0.3), c(0.4, 0.3));
        let expected = (re(1.0) / (re(1.0) - (-v).exp()) + re(1.0) / (u.exp() - 1.0))
            / (re(1.0) / ((u / 2.0).exp() - (-u / 2.0).exp()) + re(1.0) / ((v / 2.0).exp() - (-v / 2.0).exp()));
        let t = quantum_r(&bd).eval(u, v).unwrap();
        assert!((t.coeff(0, 0, 0, 0) - expected).norm() < 1e-13);
    }

    #[test]
    fn trig_pole_guard() {
        let bd = enumerate(2).unwrap().remove(0);
        assert!(matches!(trig_r(&bd).eval(re(0.0), re(0.3)), Err(Error::PoleGuard(_))));
    }

    #[test]
    fn residue_in_v_is_p() {
        for bd in enumerate(3).unwrap() {
            let r = trig_r(&bd);
            for theta in [0.3, 2.0, 4.4] {
                let v = c(0.0, theta).exp() * 1e-6;
                let t = r.eval(c(0.6, -0.2), v).unwrap().scale(v);
                assert!(t.dist(&Tensor2::perm_p(3)) < 1e-5);
            }
        }
    }

    #[test]
    fn phi_a_zero_is_p_over_cu() {
        let n = 3;
        let cc = c(1.5, -0.5);
        let r = phi_a_r(&MatA::zeros(n), cc).unwrap();
        let u = c(0.3, 0.8);
        let expected = Tensor2::perm_p(n).scale((cc * u).inv());
        assert!(r.eval(u, re(0.0)).unwrap().dist(&expected) < 1e-13);
    }

    #[test]
    fn phi_a_singular_point() {
        let a = MatA::diagonal(&[re(0.0), re(1.0)]);
        let r = phi_a_r(&a, re(1.0)).unwrap();
        assert!(r.eval(re(1.0), re(0.2)).is_err());
    }

    #[test]
    fn nilpotent_conditions() {
        let n = 2;
        let e12 = MatA::elementary(n, 0, 1);
        let omega = Tensor2::kron(&e12, &e12).unwrap();
        assert!(nilpotent_r(&omega, 1).is_ok());
        // e11⊗e11 squares to itself, so the product condition fails
        let e11 = MatA::elementary(n, 0, 0);
        assert!(nilpotent_r(&Tensor2::kron(&e11, &e11).unwrap(), 1).is_err());
        // symmetric ω with an even pole order breaks the parity condition
        assert!(nilpotent_r(&omega, 2).is_err());
    }

    #[test]
    fn rational_limit() {
        for cc in [re(1.0), re(2.0)] {
            let r = rational_r(2, cc).unwrap();
            let t = r.eval(re(1e6), c(0.3, 0.4)).unwrap();
            assert!(t.dist(&Tensor2::perm_p(2).scale(cc.inv())) < 1e-5);
        }
    }

    #[test]
    fn schedler_precondition() {
        let bd = from_one_based(&[2, 3, 1], &[2, 3, 1], &[(1, 2)]).unwrap();
        // Γ2 = {(2,3)}
        assert!(schedler_symmetry(&bd, 0).is_ok());
        assert!(schedler_symmetry(&bd, 1).is_err());
        assert!(schedler_symmetry(&bd, 2).is_err());
    }

    #[test]
    fn abc_empty_gamma() {
        let bd = enumerate(3).unwrap().remove(0);
        for obd in bd.orders() {
            let (_, b, cc) = abc_parts(&obd, c(0.4, 0.2)).unwrap();
            assert_eq!(b.max_abs(), 0.0);
            assert_eq!(cc.max_abs(), 0.0);
        }
    }
}
