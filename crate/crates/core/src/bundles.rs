//! Splitting matrices of vector bundles on a cycle of `n` projective lines,
//! and the combinatorial data and Massey-product map they determine.
//!
//! Rows are 0-based labels `i ∈ ℤ/N`, columns `j ∈ [0, n)`. The matrix is
//! extended to all `j ∈ ℤ` by `m^{j+n}_i = m^j_{i−k}` where `k` is the shift.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bd::{sigma, AssocBD, CyclicPerm, OrderedAssocBD, Pair};
use crate::cmath::{c, re};
use crate::rmatrix::{mult_margin, MultRFun, RKind, HARD_POLE_EPS, SINGULAR_GUARD};
use crate::tensor::Tensor2;
use crate::{Error, Result, C64};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    #[serde(rename = "N")]
    big_n: usize,
    n: usize,
    #[serde(default)]
    k: Option<usize>,
    m: Vec<Vec<i64>>,
}

/// An `N × n` integer matrix with a row shift `k` coprime to `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct SplittingMatrix {
    rows: usize,
    cols: usize,
    shift: usize,
    m: Vec<Vec<i64>>,
}

impl TryFrom<MatrixJson> for SplittingMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let k = j.k.unwrap_or(if j.big_n > 1 { 1 } else { 0 });
        if j.m.len() != j.big_n {
            return Err(Error::SizeMismatch { expected: j.big_n, got: j.m.len() });
        }
        SplittingMatrix::new(j.m, k).and_then(|s| {
            if s.cols != j.n {
                Err(Error::SizeMismatch { expected: j.n, got: s.cols })
            } else {
                Ok(s)
            }
        })
    }
}

impl From<SplittingMatrix> for MatrixJson {
    fn from(s: SplittingMatrix) -> Self {
        MatrixJson { big_n: s.rows, n: s.cols, k: Some(s.shift), m: s.m }
    }
}

impl SplittingMatrix {
    /// `rows[i][j] = m^j_i`.
    pub fn new(rows: Vec<Vec<i64>>, shift: usize) -> Result<Self> {
        let big_n = rows.len();
        if big_n == 0 {
            return Err(Error::OutOfRange("a splitting matrix needs at least one row".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::OutOfRange("a splitting matrix needs at least one column".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::SizeMismatch { expected: n, got: bad.len() });
        }
        if shift >= big_n.max(1) || gcd(shift, big_n) != 1 {
            return Err(Error::OutOfRange(format!("shift k = {shift} must lie in [1, N-1] and be coprime to N = {big_n}")));
        }
        Ok(SplittingMatrix { rows: big_n, cols: n, shift, m: rows })
    }

    /// Number of rows `N`.
    pub fn big_n(&self) -> usize {
        self.rows
    }

    /// Number of columns `n`.
    pub fn n(&self) -> usize {
        self.cols
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.m
    }

    fn wrap(&self, i: i64) -> usize {
        i.rem_euclid(self.rows as i64) as usize
    }

    /// The extended entry `m^j_i` for arbitrary integers.
    pub fn entry(&self, i: i64, j: i64) -> i64 {
        let n = self.cols as i64;
        let q = j.div_euclid(n);
        let r = j.rem_euclid(n);
        self.m[self.wrap(i - q * self.shift as i64)][r as usize]
    }

    /// The matrix with every entry negated.
    pub fn negated(&self) -> SplittingMatrix {
        SplittingMatrix { m: self.m.iter().map(|r| r.iter().map(|x| -x).collect()).collect(), ..self.clone() }
    }

    /// Length of the period of every difference sequence.
    fn period(&self) -> i64 {
        (self.cols * self.rows) as i64
    }

    /// `Ok(())` if the bundle is simple, otherwise a description of the first
    /// violating row pair (1-based) and condition.
    pub fn simplicity(&self) -> std::result::Result<(), String> {
        let big_n = self.rows;
        for j in 0..self.cols {
            let col: Vec<i64> = self.m.iter().map(|r| r[j]).collect();
            let (lo, hi) = (col.iter().min().unwrap(), col.iter().max().unwrap());
            if hi - lo > 1 {
                let a = col.iter().position(|x| x == hi).unwrap();
                let b = col.iter().position(|x| x == lo).unwrap();
                return Err(format!("condition (a): rows ({}, {}) differ by {} in column {j}", a + 1, b + 1, hi - lo));
            }
        }
        for i in 0..big_n {
            for ip in (i + 1)..big_n {
                let nz: Vec<i64> = (0..self.period())
                    .map(|j| self.entry(i as i64, j) - self.entry(ip as i64, j))
                    .filter(|&d| d != 0)
                    .collect();
                if nz.is_empty() {
                    return Err(format!("condition (b): rows ({}, {}) have identically zero differences", i + 1, ip + 1));
                }
                let alternates = nz.iter().enumerate().all(|(t, &d)| d != nz[(t + 1) % nz.len()]);
                if !alternates {
                    return Err(format!("condition (b): the signs for rows ({}, {}) do not alternate", i + 1, ip + 1));
                }
            }
        }
        Ok(())
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity().is_ok()
    }

    fn require_simple(&self) -> Result<()> {
        self.simplicity().map_err(Error::NotSimple)
    }

    /// Sign of the first nonzero of `m^j_a − m^j_b`, `j = 0, 1, …`.
    fn first_sign(&self, a: usize, b: usize) -> i64 {
        (0..self.period())
            .map(|j| self.entry(a as i64, j) - self.entry(b as i64, j))
            .find(|&d| d != 0)
            .map_or(0, i64::signum)
    }

    /// Order positions: `pos[i] < pos[i′]` iff `i ≺ i′`, where `i ≺ i′` when
    /// the first nonzero of `(m^j_i − m^j_{i′})_{j ≥ 0}` is negative.
    pub fn star_order(&self) -> Result<Vec<usize>> {
        self.require_simple()?;
        let big_n = self.rows;
        Ok((0..big_n).map(|i| (0..big_n).filter(|&b| b != i && self.first_sign(b, i) < 0).count()).collect())
    }

    fn same_inner_columns(&self, a: usize, b: usize) -> bool {
        (1..self.cols).all(|j| self.m[a][j] == self.m[b][j])
    }

    fn c_of(&self, i: usize) -> usize {
        (i + self.rows - self.shift) % self.rows
    }

    /// `τ(i, i′) = (i−k, i′−k)` when `(i−k) ≺ (i′−k)` and rows `i`, `i′`
    /// agree in columns `0 < j < n`.
    pub fn tau_matrix(&self, alpha: Pair) -> Result<Option<Pair>> {
        let pos = self.star_order()?;
        Ok(self.tau_with(&pos, alpha))
    }

    fn tau_with(&self, pos: &[usize], (i, ip): Pair) -> Option<Pair> {
        if i == ip || i >= self.rows || ip >= self.rows {
            return None;
        }
        let (ci, cip) = (self.c_of(i), self.c_of(ip));
        (pos[ci] < pos[cip] && self.same_inner_columns(i, ip)).then_some((ci, cip))
    }

    /// `{(i, i′) : rows agree in columns 0 < j < n and C(i) ≺ C(i′)}`.
    pub fn p1(&self) -> Result<BTreeSet<Pair>> {
        let pos = self.star_order()?;
        let n = self.rows;
        Ok((0..n).flat_map(|i| (0..n).map(move |ip| (i, ip))).filter(|&a| self.tau_with(&pos, a).is_some()).collect())
    }

    /// Row sums `t_i = Σ_{j<n} m^j_i`.
    pub fn row_sums(&self) -> Vec<i64> {
        self.m.iter().map(|r| r.iter().sum()).collect()
    }

    /// Checks `t_i − t_{i′} = −1` if `C(i) ≻ C(i′)` and `0` otherwise, for
    /// every `i ≺ i′`.
    pub fn check_row_sums(&self) -> std::result::Result<(), String> {
        let pos = self.star_order().map_err(|e| e.to_string())?;
        let t = self.row_sums();
        for i in 0..self.rows {
            for ip in 0..self.rows {
                if pos[i] < pos[ip] {
                    let expected = if pos[self.c_of(i)] > pos[self.c_of(ip)] { -1 } else { 0 };
                    if t[i] - t[ip] != expected {
                        return Err(format!(
                            "rows ({}, {}): t_i - t_i' = {}, expected {expected}",
                            i + 1,
                            ip + 1,
                            t[i] - t[ip]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `dim Hom(V^{λ1}, V^{λ2})` for `x = λ1/λ2`, by rank–nullity of the
    /// gluing system over one period.
    pub fn hom_dim(&self, x: C64) -> usize {
        let (big_n, n) = (self.rows, self.cols);
        // unknown index ranges per (j, i, i′): coefficients c_0..c_d of a section of O(d)
        let mut offset = BTreeMap::new();
        let mut total = 0;
        for j in 0..n {
            for i in 0..big_n {
                for ip in 0..big_n {
                    let d = self.m[i][j] - self.m[ip][j];
                    if d >= 0 {
                        offset.insert((j, i, ip), (total, d as usize));
                        total += d as usize + 1;
                    }
                }
            }
        }
        if total == 0 {
            return 0;
        }
        let at_zero = |key: &(usize, usize, usize)| offset.get(key).map(|&(o, _)| o);
        let at_inf = |key: &(usize, usize, usize)| offset.get(key).map(|&(o, d)| o + d);
        let mut rows = Vec::new();
        for j in 0..n {
            for i in 0..big_n {
                for ip in 0..big_n {
                    let here = at_zero(&(j, i, ip));
                    let (prev, factor) = if j > 0 {
                        (at_inf(&(j - 1, i, ip)), re(1.0))
                    } else {
                        let (a, b) = ((i + self.shift) % big_n, (ip + self.shift) % big_n);
                        (at_inf(&(n - 1, a, b)), x)
                    };
                    if here.is_none() && prev.is_none() {
                        continue;
                    }
                    let mut row = vec![c(0.0, 0.0); total];
                    if let Some(h) = here {
                        row[h] += re(1.0);
                    }
                    if let Some(p) = prev {
                        row[p] -= factor;
                    }
                    rows.push(row);
                }
            }
        }
        let a = DMatrix::from_fn(rows.len(), total, |r, col| rows[r][col]);
        let sv = a.singular_values();
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        let rank = sv.iter().filter(|&&s| s > 1e-10 * smax.max(1.0)).count();
        total - rank
    }
}

/// The ordered BD-structure of a simple matrix: the order `≺`, `C0` the
/// successor in that order, `C(i) = i − k`, and `Γ1 = P1 ∩ Γ_{C0}`.
pub fn bd_from_matrix(m: &SplittingMatrix) -> Result<OrderedAssocBD> {
    let pos = m.star_order()?;
    let big_n = m.big_n();
    let mut lab = vec![0; big_n];
    for (l, &p) in pos.iter().enumerate() {
        lab[p] = l;
    }
    let c0 = CyclicPerm::new((0..big_n).map(|i| lab[(pos[i] + 1) % big_n]).collect())?;
    let cc = CyclicPerm::new((0..big_n).map(|i| m.c_of(i)).collect())?;
    let p1 = m.p1()?;
    let graph = c0.graph();
    let g1 = p1.intersection(&graph).copied().collect();
    let bd = AssocBD::new(c0, cc, g1)?;
    if bd.chain_sets().0 != &p1 {
        return Err(Error::Precondition("the chain set of gamma1 differs from the matrix-derived P1".into()));
    }
    OrderedAssocBD::new(bd, (lab[big_n - 1], lab[0]))
}

/// `α0 ∉ Γ2` and `C` is a power of `C0`.
pub fn realizable(obd: &OrderedAssocBD) -> bool {
    !obd.alpha0_in_gamma2() && obd.bd().c().log_base(obd.bd().c0()).is_some()
}

/// The 0/1 matrix built from a sequence: with 1-based rows,
/// `m^0_i = 1` for `i ∈ [k+1, N]` and `m^{a_i}_{k+1−i} = 1`; `n = a_N + 1`.
pub fn matrix_from_sequence(big_n: usize, k: usize, a: &[usize]) -> Result<SplittingMatrix> {
    if big_n < 2 || 2 * k < big_n || k >= big_n || gcd(k, big_n) != 1 {
        return Err(Error::OutOfRange(format!("need N >= 2, N/2 <= k < N and gcd(k, N) = 1, got N = {big_n}, k = {k}")));
    }
    if a.len() != big_n {
        return Err(Error::SizeMismatch { expected: big_n, got: a.len() });
    }
    if a[0] != 1 || a.windows(2).any(|w| w[1] != w[0] && w[1] != w[0] + 1) {
        return Err(Error::Precondition("the sequence must start at 1 and increase by steps of 0 or 1".into()));
    }
    let n = a[big_n - 1] + 1;
    let mut m = vec![vec![0i64; n]; big_n];
    for row in m.iter_mut().skip(k) {
        row[0] = 1;
    }
    for (idx, &ai) in a.iter().enumerate() {
        // 1-based i = idx + 1 lands in 1-based row k + 1 − i, i.e. 0-based k − 1 − idx
        let row = (k as i64 - 1 - idx as i64).rem_euclid(big_n as i64) as usize;
        m[row][ai] = 1;
    }
    SplittingMatrix::new(m, k)
}

/// The sequence recipe for a canonical structure (labels are positions)
/// with `C = C0^{−k}`, `N/2 ≤ k < N`: `a_1 = 1` and `a_{i+1} = a_i` exactly
/// when `(k−i, k−i+1)` (1-based, mod `N`) lies in `Γ1`.
pub fn sequence_from_structure(canon: &OrderedAssocBD, k: usize) -> Vec<usize> {
    let big_n = canon.n();
    let mut a = vec![1usize];
    for i in 1..big_n {
        // 1-based label k − i is 0-based k − i − 1
        let s = (k as i64 - i as i64 - 1).rem_euclid(big_n as i64) as usize;
        let edge = (s, (s + 1) % big_n);
        let last = *a.last().unwrap();
        a.push(if canon.bd().gamma1().contains(&edge) { last } else { last + 1 });
    }
    a
}

/// A simple matrix whose structure, relabeled by order positions, equals the
/// canonical form of `obd`.
pub fn realize(obd: &OrderedAssocBD) -> Result<SplittingMatrix> {
    if !realizable(obd) {
        return Err(Error::Precondition("the structure is not realizable by a splitting matrix".into()));
    }
    let canon = obd.canonical();
    let big_n = canon.n();
    if big_n == 1 {
        return SplittingMatrix::new(vec![vec![0]], 0);
    }
    // C(0) = −k mod N
    let k = (big_n - canon.bd().c().apply(0)) % big_n;
    if 2 * k >= big_n {
        return matrix_from_sequence(big_n, k, &sequence_from_structure(&canon, k));
    }
    // Pass to C0^{k} with P1 replaced by (w0×w0)σ(P1), realize that, then
    // negate and reverse the rows.
    let w0 = |p: usize| big_n - 1 - p;
    let kk = big_n - k;
    let g1: BTreeSet<Pair> = canon
        .bd()
        .chain_sets()
        .0
        .iter()
        .map(|&a| {
            let (x, y) = sigma(a);
            (w0(x), w0(y))
        })
        .filter(|&(x, y)| y == (x + 1) % big_n)
        .collect();
    let c_twin = CyclicPerm::new((0..big_n).map(|p| (p + big_n - kk) % big_n).collect())?;
    let twin = OrderedAssocBD::new(AssocBD::new(CyclicPerm::standard(big_n), c_twin, g1)?, (big_n - 1, 0))?;
    let base = matrix_from_sequence(big_n, kk, &sequence_from_structure(&twin, kk))?;
    let rows = (0..big_n).map(|i| base.rows()[w0(i)].iter().map(|x| -x).collect()).collect();
    SplittingMatrix::new(rows, k)
}

/// The linear map `b ↦ a(y′)` on `N × N` matrices, stored as
/// `T[(i, i′), (p, p′)]` with row-major pair indices.
#[derive(Debug, Clone, PartialEq)]
pub struct MasseyMap {
    n: usize,
    t: DMatrix<C64>,
}

impl MasseyMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, out: Pair, inp: Pair) -> C64 {
        self.t[(out.0 * self.n + out.1, inp.0 * self.n + inp.1)]
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.t
    }

    pub fn apply(&self, b: &DMatrix<C64>) -> DMatrix<C64> {
        let n = self.n;
        let v = DMatrix::from_fn(n * n, 1, |r, _| b[(r / n, r % n)]);
        let out = &self.t * v;
        DMatrix::from_fn(n, n, |i, j| out[(i * n + j, 0)])
    }

    pub fn dist(&self, other: &MasseyMap) -> f64 {
        (&self.t - &other.t).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `r = Σ T[α, β] e_{σβ} ⊗ e_α`.
    pub fn to_tensor(&self) -> Tensor2 {
        let n = self.n;
        let mut out = Tensor2::zeros(n);
        for a in 0..n * n {
            for b in 0..n * n {
                let z = self.t[(a, b)];
                if z != c(0.0, 0.0) {
                    out.add_coeff(b % n, b / n, a / n, a % n, z);
                }
            }
        }
        out
    }
}

fn massey_guard(n: usize, x: C64, y: C64, yp: C64) -> Result<()> {
    let m = mult_margin(n, x, y, yp);
    if m.is_nan() || m <= HARD_POLE_EPS {
        return Err(Error::PoleGuard(format!("(x, y, y') = ({x}, {y}, {yp}) is within {m:.3e} of a pole")));
    }
    Ok(())
}

/// The closed-form map: for `α > 0`, `a_α = y/(y′−y)·b_α − Σ x^{−k} b_{τ^k α}`;
/// for `α < 0`, `a_α = y′/(y′−y)·b_α + Σ y^{ε} x^k b_{στ^{−k}σα} − y′ Σ x^{−k} b_{τ^k α}`;
/// diagonal `a_ii = y/(y′−y)·b_ii + (1 − x^N)⁻¹ Σ_{k<N} x^k b_{i+kℓ, i+kℓ}` with shift `ℓ`.
pub fn massey_closed(m: &SplittingMatrix, x: C64, y: C64, yp: C64) -> Result<MasseyMap> {
    let big_n = m.big_n();
    massey_guard(big_n, x, y, yp)?;
    let pos = m.star_order()?;
    let tau: BTreeMap<Pair, Pair> =
        m.p1()?.into_iter().map(|a| (a, m.tau_with(&pos, a).expect("p1 is the domain"))).collect();
    let tau_inv: BTreeMap<Pair, Pair> = tau.iter().map(|(&a, &b)| (b, a)).collect();
    let idx = |(i, j): Pair| i * big_n + j;
    let mut t = DMatrix::from_element(big_n * big_n, big_n * big_n, c(0.0, 0.0));
    let denom = (yp - y).inv();
    for i in 0..big_n {
        let g = (re(1.0) - x.powu(big_n as u32)).inv();
        t[(idx((i, i)), idx((i, i)))] += y * denom;
        for k in 0..big_n {
            let l = (i + k * m.shift()) % big_n;
            t[(idx((i, i)), idx((l, l)))] += g * x.powu(k as u32);
        }
        for ip in 0..big_n {
            if ip == i {
                continue;
            }
            let alpha = (i, ip);
            let row = idx(alpha);
            let positive = pos[i] < pos[ip];
            t[(row, row)] += if positive { y * denom } else { yp * denom };
            let scale = if positive { re(-1.0) } else { -yp };
            let mut cur = alpha;
            let mut k = 0i32;
            while let Some(&next) = tau.get(&cur) {
                k += 1;
                t[(row, idx(next))] += scale * x.powi(-k);
                cur = next;
            }
            if !positive {
                let mut cur = sigma(alpha);
                let mut k = 0i32;
                while let Some(&prev) = tau_inv.get(&cur) {
                    k += 1;
                    let beta = sigma(prev);
                    let eps = if pos[beta.0] < pos[beta.1] { y } else { re(1.0) };
                    t[(row, idx(beta))] += eps * x.powi(k);
                    cur = prev;
                }
            }
        }
    }
    Ok(MasseyMap { n: big_n, t })
}

/// The same map computed by solving the gluing system with prescribed
/// residues directly, one basis residue `e_{pp′}` at a time.
pub fn massey_oracle(m: &SplittingMatrix, x: C64, y: C64, yp: C64) -> Result<MasseyMap> {
    m.require_simple()?;
    let (big_n, n) = (m.big_n(), m.n());
    massey_guard(big_n, x, y, yp)?;
    let np = big_n * big_n;
    let dim = 2 * n * np;
    // unknown a^j_{ii′}(0) and a^j_{ii′}(∞)
    let u0 = |j: usize, i: usize, ip: usize| 2 * (j * np + i * big_n + ip);
    let uinf = |j: usize, i: usize, ip: usize| u0(j, i, ip) + 1;
    let mut sys = DMatrix::from_element(dim, dim, c(0.0, 0.0));
    // residue coefficient of each equation: rhs = coeff · b_{ii′}
    let mut rhs_pair: Vec<Option<(usize, C64)>> = vec![None; dim];
    let mut row = 0;
    for j in 0..n {
        for i in 0..big_n {
            for ip in 0..big_n {
                let d = m.rows()[i][j] - m.rows()[ip][j];
                let pair = i * big_n + ip;
                match d {
                    -1 => {
                        sys[(row, u0(j, i, ip))] = re(1.0);
                        if j == 0 {
                            rhs_pair[row] = Some((pair, re(-1.0)));
                        }
                        row += 1;
                        sys[(row, uinf(j, i, ip))] = re(1.0);
                        if j == 0 {
                            rhs_pair[row] = Some((pair, y));
                        }
                        row += 1;
                    }
                    0 => {
                        sys[(row, uinf(j, i, ip))] = re(1.0);
                        sys[(row, u0(j, i, ip))] = re(-1.0);
                        if j == 0 {
                            rhs_pair[row] = Some((pair, re(1.0)));
                        }
                        row += 1;
                    }
                    1 => {}
                    _ => return Err(Error::NotSimple(format!("column {j} has a difference of {d}"))),
                }
                // gluing a^j(0) = x^{δ(j)} a^{j−1}(∞)
                sys[(row, u0(j, i, ip))] = re(1.0);
                if j > 0 {
                    sys[(row, uinf(j - 1, i, ip))] -= re(1.0);
                } else {
                    let (a, b) = ((i + m.shift()) % big_n, (ip + m.shift()) % big_n);
                    sys[(row, uinf(n - 1, a, b))] -= x;
                }
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, dim);
    let smin = sys.singular_values().iter().cloned().fold(f64::INFINITY, f64::min);
    if smin <= SINGULAR_GUARD {
        return Err(Error::Singular(format!("gluing system at x = {x} (sigma_min = {smin:.3e})")));
    }
    let lu = sys.lu();
    let denom = (yp - y).inv();
    let mut t = DMatrix::from_element(np, np, c(0.0, 0.0));
    for p in 0..np {
        let rhs = DMatrix::from_fn(dim, 1, |r, _| match rhs_pair[r] {
            Some((pair, coeff)) if pair == p => coeff,
            _ => c(0.0, 0.0),
        });
        let sol = lu.solve(&rhs).ok_or_else(|| Error::Singular(format!("gluing system at x = {x}")))?;
        for i in 0..big_n {
            for ip in 0..big_n {
                let b = if i * big_n + ip == p { re(1.0) } else { c(0.0, 0.0) };
                let (a0, ainf) = (sol[(u0(0, i, ip), 0)], sol[(uinf(0, i, ip), 0)]);
                let d = m.rows()[i][0] - m.rows()[ip][0];
                t[(i * big_n + ip, p)] = match d {
                    -1 => y * b * denom,
                    0 => yp * b * denom + a0,
                    _ => yp * b * denom + a0 + yp * ainf,
                };
            }
        }
    }
    Ok(MasseyMap { n: big_n, t })
}

/// The multiplicative solution attached to a simple matrix, assembled from
/// the closed-form map as `Σ T[α, β] e_{σβ} ⊗ e_α`.
pub fn massey_tensor(m: &SplittingMatrix) -> Result<MultRFun> {
    m.require_simple()?;
    let m = m.clone();
    Ok(MultRFun::new(m.big_n(), RKind::Massey, move |x, y, yp| Ok(massey_closed(&m, x, y, yp)?.to_tensor())))
}

/// The example matrix with `n > N` columns whose only nonzero entries are
/// `m^{N+1−i}_i = 1` for 1-based `i ∈ [1, N−1]`.
pub fn example_matrix(big_n: usize, n: usize) -> Result<SplittingMatrix> {
    if n <= big_n {
        return Err(Error::OutOfRange(format!("need n > N, got n = {n}, N = {big_n}")));
    }
    let mut m = vec![vec![0i64; n]; big_n];
    for (i, row) in m.iter_mut().enumerate().take(big_n - 1) {
        row[big_n - i] = 1;
    }
    SplittingMatrix::new(m, if big_n > 1 { 1 } else { 0 })
}
