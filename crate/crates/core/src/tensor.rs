//! Dense complex tensors over `A = Mat(N, C)`.
//!
//! Indices are 0-based in code. A [`Tensor2`] represents
//! `Σ coeff(p,q,r,s) e_pq ⊗ e_rs`; it is stored as its operator matrix on
//! `C^N ⊗ C^N`, whose row index is `p·N + r` and column index is `q·N + s`.
//! The pairing flattening (row `p·N + q`, column `r·N + s`) is derived on
//! demand. A [`Tensor3`] is stored the same way on `C^N ⊗ C^N ⊗ C^N`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn check_n(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::SizeMismatch { expected, got });
    }
    Ok(())
}

/// An element of `A = Mat(N, C)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatA {
    m: DMatrix<C64>,
}

impl MatA {
    pub fn zeros(n: usize) -> Self {
        MatA { m: DMatrix::from_element(n, n, ZERO) }
    }

    pub fn identity(n: usize) -> Self {
        MatA { m: DMatrix::identity(n, n) }
    }

    /// `e_ij`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut a = Self::zeros(n);
        a.m[(i, j)] = ONE;
        a
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut a = Self::zeros(n);
        for (i, &d) in entries.iter().enumerate() {
            a.m[(i, i)] = d;
        }
        a
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        MatA { m: DMatrix::from_fn(n, n, f) }
    }

    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::Precondition(format!(
                "matrix must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(MatA { m })
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.m[(i, j)] == ZERO))
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.n()).map(|i| self.m[(i, i)]).collect()
    }

    /// `exp(t·a)` for diagonal `a`.
    pub fn exp_diagonal(&self, t: C64) -> Result<MatA> {
        if !self.is_diagonal() {
            return Err(Error::Precondition("exp_diagonal needs a diagonal matrix".into()));
        }
        Ok(MatA::diagonal(&self.diag().iter().map(|d| (t * d).exp()).collect::<Vec<_>>()))
    }

    pub fn commutator(&self, other: &MatA) -> MatA {
        MatA { m: &self.m * &other.m - &other.m * &self.m }
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn scale(&self, s: C64) -> MatA {
        MatA { m: &self.m * s }
    }
}

impl Mul for &MatA {
    type Output = MatA;
    fn mul(self, rhs: &MatA) -> MatA {
        MatA { m: &self.m * &rhs.m }
    }
}

impl Add for &MatA {
    type Output = MatA;
    fn add(self, rhs: &MatA) -> MatA {
        MatA { m: &self.m + &rhs.m }
    }
}

impl Sub for &MatA {
    type Output = MatA;
    fn sub(self, rhs: &MatA) -> MatA {
        MatA { m: &self.m - &rhs.m }
    }
}

/// An element of `A ⊗ A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor2 {
    n: usize,
    op: DMatrix<C64>,
}

impl Tensor2 {
    pub fn zeros(n: usize) -> Self {
        Tensor2 { n, op: DMatrix::from_element(n * n, n * n, ZERO) }
    }

    /// `1 ⊗ 1`.
    pub fn unit2(n: usize) -> Self {
        Tensor2 { n, op: DMatrix::identity(n * n, n * n) }
    }

    /// The permutation tensor `P = Σ e_ij ⊗ e_ji`.
    pub fn perm_p(n: usize) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.add_coeff(i, j, j, i, ONE);
            }
        }
        t
    }

    /// `P⁰ = Σ e_ii ⊗ e_ii`.
    pub fn diag_p0(n: usize) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            t.add_coeff(i, i, i, i, ONE);
        }
        t
    }

    /// `a ⊗ b`.
    pub fn kron(a: &MatA, b: &MatA) -> Result<Self> {
        check_n(a.n(), b.n())?;
        Ok(Tensor2 { n: a.n(), op: a.m.kronecker(&b.m) })
    }

    /// `coeff · e_pq ⊗ e_rs`.
    pub fn elementary(n: usize, p: usize, q: usize, r: usize, s: usize, coeff: C64) -> Self {
        let mut t = Self::zeros(n);
        t.add_coeff(p, q, r, s, coeff);
        t
    }

    pub fn from_coeff_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> C64) -> Self {
        let mut t = Self::zeros(n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        t.op[(p * n + r, q * n + s)] = f(p, q, r, s);
                    }
                }
            }
        }
        t
    }

    pub fn from_op_matrix(n: usize, op: DMatrix<C64>) -> Result<Self> {
        if op.nrows() != n * n || op.ncols() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, got: op.nrows() });
        }
        Ok(Tensor2 { n, op })
    }

    pub fn from_pairing_matrix(n: usize, pm: &DMatrix<C64>) -> Result<Self> {
        if pm.nrows() != n * n || pm.ncols() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, got: pm.nrows() });
        }
        Ok(Self::from_coeff_fn(n, |p, q, r, s| pm[(p * n + q, r * n + s)]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coeff(&self, p: usize, q: usize, r: usize, s: usize) -> C64 {
        self.op[(p * self.n + r, q * self.n + s)]
    }

    #[inline]
    pub fn add_coeff(&mut self, p: usize, q: usize, r: usize, s: usize, z: C64) {
        let n = self.n;
        self.op[(p * n + r, q * n + s)] += z;
    }

    pub fn op_matrix(&self) -> &DMatrix<C64> {
        &self.op
    }

    /// Row `(p,q)`, column `(r,s)`: the flattening whose rank measures
    /// nondegeneracy.
    pub fn pairing_matrix(&self) -> DMatrix<C64> {
        let n = self.n;
        DMatrix::from_fn(n * n, n * n, |row, col| {
            let (p, q) = (row / n, row % n);
            let (r, s) = (col / n, col % n);
            self.coeff(p, q, r, s)
        })
    }

    /// Product as operators on `C^N ⊗ C^N`.
    pub fn compose(&self, other: &Tensor2) -> Result<Tensor2> {
        check_n(self.n, other.n)?;
        Ok(Tensor2 { n: self.n, op: &self.op * &other.op })
    }

    /// `t ↦ t²¹`.
    pub fn swap_factors(&self) -> Tensor2 {
        Self::from_coeff_fn(self.n, |p, q, r, s| self.coeff(r, s, p, q))
    }

    /// Applies `X ↦ X − tr(X)/N · 1` in each listed factor (1 or 2).
    pub fn project_sl(&self, slots: &[usize]) -> Tensor2 {
        let n = self.n;
        let inv_n = 1.0 / n as f64;
        let mut out = self.clone();
        if slots.contains(&1) {
            // subtract (1/N)·1 ⊗ tr_1(t)
            let tr1 = out.partial_trace(1);
            for p in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        out.add_coeff(p, p, r, s, -tr1.get(r, s) * inv_n);
                    }
                }
            }
        }
        if slots.contains(&2) {
            let tr2 = out.partial_trace(2);
            for p in 0..n {
                for q in 0..n {
                    for r in 0..n {
                        out.add_coeff(p, q, r, r, -tr2.get(p, q) * inv_n);
                    }
                }
            }
        }
        out
    }

    /// The product map `μ(x ⊗ y) = xy`.
    pub fn mu2(&self) -> MatA {
        let n = self.n;
        MatA::from_fn(n, |p, s| (0..n).map(|q| self.coeff(p, q, q, s)).sum())
    }

    /// Contracts factor `slot` (1 or 2) with the trace.
    pub fn partial_trace(&self, slot: usize) -> MatA {
        let n = self.n;
        if slot == 1 {
            MatA::from_fn(n, |r, s| (0..n).map(|p| self.coeff(p, p, r, s)).sum())
        } else {
            MatA::from_fn(n, |p, q| (0..n).map(|r| self.coeff(p, q, r, r)).sum())
        }
    }

    pub fn full_trace(&self) -> C64 {
        self.op.trace()
    }

    /// `(flag, condition number)` of the pairing flattening.
    pub fn is_nondegenerate(&self, cond_cap: f64) -> (bool, f64) {
        let sv = self.pairing_matrix().singular_values();
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if min <= 0.0 || !min.is_finite() {
            return (false, f64::INFINITY);
        }
        let cond = max / min;
        (cond <= cond_cap, cond)
    }

    /// `[a ⊗ 1 + 1 ⊗ a, t]`.
    pub fn sym_commutator(&self, a: &MatA) -> Result<Tensor2> {
        check_n(self.n, a.n())?;
        let id = MatA::identity(self.n);
        let s = &Tensor2::kron(a, &id)? + &Tensor2::kron(&id, a)?;
        Ok(&s.compose(self)? - &self.compose(&s)?)
    }

    /// `(a ⊗ b) · t · (c ⊗ d)`.
    pub fn sandwich(&self, left: (&MatA, &MatA), right: (&MatA, &MatA)) -> Result<Tensor2> {
        let l = Tensor2::kron(left.0, left.1)?;
        let r = Tensor2::kron(right.0, right.1)?;
        l.compose(self)?.compose(&r)
    }

    pub fn max_abs(&self) -> f64 {
        self.op.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// Max-abs distance between coefficient arrays.
    pub fn dist(&self, other: &Tensor2) -> f64 {
        assert_eq!(self.n, other.n, "dist: size mismatch");
        self.op.iter().zip(other.op.iter()).fold(0.0, |acc, (a, b)| acc.max((a - b).norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.op.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: C64) -> Tensor2 {
        Tensor2 { n: self.n, op: &self.op * s }
    }

    /// Iterates `(p, q, r, s, coeff)` over nonzero coefficients.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, usize, C64)> + '_ {
        let n = self.n;
        (0..n * n).flat_map(move |row| (0..n * n).map(move |col| (row, col))).filter_map(
            move |(row, col)| {
                let z = self.op[(row, col)];
                (z != ZERO).then(|| (row / n, col / n, row % n, col % n, z))
            },
        )
    }
}

impl Add for &Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: &Tensor2) -> Tensor2 {
        assert_eq!(self.n, rhs.n, "tensor add: size mismatch");
        Tensor2 { n: self.n, op: &self.op + &rhs.op }
    }
}

impl Sub for &Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: &Tensor2) -> Tensor2 {
        assert_eq!(self.n, rhs.n, "tensor sub: size mismatch");
        Tensor2 { n: self.n, op: &self.op - &rhs.op }
    }
}

impl Neg for &Tensor2 {
    type Output = Tensor2;
    fn neg(self) -> Tensor2 {
        Tensor2 { n: self.n, op: -&self.op }
    }
}

impl Mul<C64> for &Tensor2 {
    type Output = Tensor2;
    fn mul(self, s: C64) -> Tensor2 {
        self.scale(s)
    }
}

impl AddAssign<&Tensor2> for Tensor2 {
    fn add_assign(&mut self, rhs: &Tensor2) {
        assert_eq!(self.n, rhs.n, "tensor add: size mismatch");
        self.op += &rhs.op;
    }
}

/// An element of `A ⊗ A ⊗ A`, stored as an operator on `(C^N)^{⊗3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    n: usize,
    op: DMatrix<C64>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        let d = n * n * n;
        Tensor3 { n, op: DMatrix::from_element(d, d, ZERO) }
    }

    pub fn identity(n: usize) -> Self {
        let d = n * n * n;
        Tensor3 { n, op: DMatrix::identity(d, d) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn op_matrix(&self) -> &DMatrix<C64> {
        &self.op
    }

    /// Coefficient of `e_{p1 q1} ⊗ e_{p2 q2} ⊗ e_{p3 q3}`.
    pub fn coeff(&self, p: [usize; 3], q: [usize; 3]) -> C64 {
        let n = self.n;
        self.op[((p[0] * n + p[1]) * n + p[2], (q[0] * n + q[1]) * n + q[2])]
    }

    pub fn compose(&self, other: &Tensor3) -> Result<Tensor3> {
        check_n(self.n, other.n)?;
        Ok(Tensor3 { n: self.n, op: &self.op * &other.op })
    }

    pub fn max_abs(&self) -> f64 {
        self.op.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn dist(&self, other: &Tensor3) -> f64 {
        assert_eq!(self.n, other.n, "dist: size mismatch");
        self.op.iter().zip(other.op.iter()).fold(0.0, |acc, (a, b)| acc.max((a - b).norm()))
    }

    pub fn scale(&self, s: C64) -> Tensor3 {
        Tensor3 { n: self.n, op: &self.op * s }
    }
}

impl Add for &Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.n, rhs.n, "tensor add: size mismatch");
        Tensor3 { n: self.n, op: &self.op + &rhs.op }
    }
}

impl Sub for &Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.n, rhs.n, "tensor sub: size mismatch");
        Tensor3 { n: self.n, op: &self.op - &rhs.op }
    }
}

impl Mul for &Tensor3 {
    type Output = Tensor3;
    fn mul(self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.n, rhs.n, "tensor mul: size mismatch");
        Tensor3 { n: self.n, op: &self.op * &rhs.op }
    }
}

/// `t^{ab}`: places the first factor of `t` in slot `a`, the second in slot
/// `b` (slots are 1-based), and the identity in the remaining slot.
pub fn embed(t: &Tensor2, slots: (usize, usize)) -> Result<Tensor3> {
    let (a, b) = slots;
    if a == b || !(1..=3).contains(&a) || !(1..=3).contains(&b) {
        return Err(Error::InvalidSlots(slots));
    }
    let (a, b) = (a - 1, b - 1);
    let c = 3 - a - b;
    let n = t.n();
    let mut out = Tensor3::zeros(n);
    let idx = |i: [usize; 3]| (i[0] * n + i[1]) * n + i[2];
    for (p, q, r, s, z) in t.nonzero() {
        for k in 0..n {
            let mut row = [0; 3];
            let mut col = [0; 3];
            row[a] = p;
            col[a] = q;
            row[b] = r;
            col[b] = s;
            row[c] = k;
            col[c] = k;
            out.op[(idx(row), idx(col))] += z;
        }
    }
    Ok(out)
}
