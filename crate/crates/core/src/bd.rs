//! Associative BD-structures on `S = {0, …, N-1}`.
//!
//! A structure is a pair of transitive cyclic permutations `C0`, `C` of `S`
//! together with proper subsets `Γ1`, `Γ2` of the graph `Γ_{C0} = {(s, C0 s)}`
//! such that `(C×C)(Γ1) = Γ2`. The map `τ = C×C` extends to a bijection
//! between the chain sets `P1 → P2`.
//!
//! Labels are 0-based in code. The JSON form uses 1-based labels:
//! `{"n": N, "c0": [...], "c": [...], "gamma1": [[i, j], ...]}`, with an
//! optional `"alpha0"` for ordered structures and an optional `"gamma2"`
//! that, when present, must equal the derived image of `gamma1`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::BdViolation;
use crate::{Error, Result};

/// An ordered pair of labels.
pub type Pair = (usize, usize);

/// `σ(i, j) = (j, i)`.
pub fn sigma(p: Pair) -> Pair {
    (p.1, p.0)
}

/// A transitive cyclic permutation of `{0, …, N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPerm {
    images: Vec<usize>,
}

impl CyclicPerm {
    pub fn new(images: Vec<usize>) -> std::result::Result<Self, BdViolation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(BdViolation::NotBijective(images.iter().map(|i| i + 1).collect()));
            }
            seen[i] = true;
        }
        if n > 0 {
            let mut len = 1;
            let mut cur = images[0];
            while cur != 0 {
                cur = images[cur];
                len += 1;
            }
            if len != n {
                return Err(BdViolation::NotTransitive(images.iter().map(|i| i + 1).collect()));
            }
        }
        Ok(CyclicPerm { images })
    }

    /// `i ↦ i + 1 mod N`.
    pub fn standard(n: usize) -> Self {
        CyclicPerm { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        CyclicPerm { images: inv }
    }

    /// `C^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Vec<usize> {
        let n = self.n() as i64;
        if n == 0 {
            return Vec::new();
        }
        let k = k.rem_euclid(n) as usize;
        (0..self.n())
            .map(|mut i| {
                for _ in 0..k {
                    i = self.images[i];
                }
                i
            })
            .collect()
    }

    /// Returns `k ∈ [0, N)` with `self = other^k`, if any.
    pub fn log_base(&self, other: &CyclicPerm) -> Option<usize> {
        (0..self.n().max(1)).find(|&k| self.pow(1) == other.pow(k as i64))
    }

    /// Position of every label along the cycle starting at `start`:
    /// `pos[C^m(start)] = m`.
    pub fn positions_from(&self, start: usize) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        let mut cur = start;
        for m in 0..self.n() {
            pos[cur] = m;
            cur = self.images[cur];
        }
        pos
    }

    /// Graph `{(s, C(s))}`.
    pub fn graph(&self) -> BTreeSet<Pair> {
        (0..self.n()).map(|s| (s, self.apply(s))).collect()
    }
}

/// An associative BD-structure. Construction always validates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BdJson", into = "BdJson")]
pub struct AssocBD {
    c0: CyclicPerm,
    c: CyclicPerm,
    gamma1: BTreeSet<Pair>,
    gamma2: BTreeSet<Pair>,
    p1: BTreeSet<Pair>,
    p2: BTreeSet<Pair>,
}

impl AssocBD {
    /// Builds the structure with `Γ2 = (C×C)(Γ1)`.
    pub fn new(c0: CyclicPerm, c: CyclicPerm, gamma1: BTreeSet<Pair>) -> Result<Self> {
        let gamma2 = gamma1.iter().map(|&(a, b)| (c.apply(a), c.apply(b))).collect();
        Self::from_parts(c0, c, gamma1, gamma2)
    }

    /// Builds the structure from all four components and validates it.
    pub fn from_parts(
        c0: CyclicPerm,
        c: CyclicPerm,
        gamma1: BTreeSet<Pair>,
        gamma2: BTreeSet<Pair>,
    ) -> Result<Self> {
        validate_parts(&c0, &c, &gamma1, &gamma2)?;
        let p1 = chain_closure(&c0, &gamma1);
        let p2 = chain_closure(&c0, &gamma2);
        Ok(AssocBD { c0, c, gamma1, gamma2, p1, p2 })
    }

    pub fn n(&self) -> usize {
        self.c0.n()
    }
    pub fn c0(&self) -> &CyclicPerm {
        &self.c0
    }
    pub fn c(&self) -> &CyclicPerm {
        &self.c
    }
    pub fn gamma1(&self) -> &BTreeSet<Pair> {
        &self.gamma1
    }
    pub fn gamma2(&self) -> &BTreeSet<Pair> {
        &self.gamma2
    }

    /// `(P1, P2)`.
    pub fn chain_sets(&self) -> (&BTreeSet<Pair>, &BTreeSet<Pair>) {
        (&self.p1, &self.p2)
    }

    /// `τ^k(α)` when defined. Negative `k` walks `τ^{-1}` on `P2`.
    pub fn tau_apply(&self, alpha: Pair, k: i64) -> Option<Pair> {
        let (dom, perm) = if k >= 0 { (&self.p1, self.c.clone()) } else { (&self.p2, self.c.inverse()) };
        let mut cur = alpha;
        for _ in 0..k.unsigned_abs() {
            if !dom.contains(&cur) {
                return None;
            }
            cur = (perm.apply(cur.0), perm.apply(cur.1));
        }
        Some(cur)
    }

    /// Domain of `τ^k` for `k ≥ 1`.
    pub fn tau_domain(&self, k: usize) -> BTreeSet<Pair> {
        self.p1.iter().copied().filter(|&a| self.tau_apply(a, k as i64).is_some()).collect()
    }

    /// Largest `k` for which `τ^k` is defined somewhere (0 when `P1` is empty).
    pub fn nilpotency_depth(&self) -> usize {
        let mut k = 0;
        while !self.tau_domain(k + 1).is_empty() {
            k += 1;
        }
        k
    }

    /// `(C0⁻¹, C, σΓ1, σΓ2)`.
    pub fn opposite(&self) -> AssocBD {
        let g1 = self.gamma1.iter().map(|&p| sigma(p)).collect();
        let g2 = self.gamma2.iter().map(|&p| sigma(p)).collect();
        AssocBD::from_parts(self.c0.inverse(), self.c.clone(), g1, g2)
            .expect("opposite of a valid structure is valid")
    }

    /// `(C0, C⁻¹, Γ2, Γ1)`.
    pub fn inverse(&self) -> AssocBD {
        AssocBD::from_parts(self.c0.clone(), self.c.inverse(), self.gamma2.clone(), self.gamma1.clone())
            .expect("inverse of a valid structure is valid")
    }

    /// Every compatible complete order, one per `α0 ∈ Γ_{C0}`.
    pub fn orders(&self) -> Vec<OrderedAssocBD> {
        self.c0
            .graph()
            .into_iter()
            .map(|a0| OrderedAssocBD::new(self.clone(), a0).expect("graph edge"))
            .collect()
    }
}

fn chain_closure(c0: &CyclicPerm, gamma: &BTreeSet<Pair>) -> BTreeSet<Pair> {
    let mut out = BTreeSet::new();
    for s in 0..c0.n() {
        let mut cur = s;
        for _ in 1..c0.n() {
            let next = c0.apply(cur);
            if !gamma.contains(&(cur, next)) {
                break;
            }
            out.insert((s, next));
            cur = next;
        }
    }
    out
}

fn validate_parts(
    c0: &CyclicPerm,
    c: &CyclicPerm,
    gamma1: &BTreeSet<Pair>,
    gamma2: &BTreeSet<Pair>,
) -> std::result::Result<(), BdViolation> {
    let n = c0.n();
    if c.n() != n {
        return Err(BdViolation::SizeMismatch(format!("C0 acts on {n} labels, C on {}", c.n())));
    }
    for (idx, g) in [(1u8, gamma1), (2u8, gamma2)] {
        for &(a, b) in g {
            if a >= n || b >= n || c0.apply(a) != b {
                return Err(BdViolation::NotInGraph(a + 1, b + 1));
            }
        }
        if g.len() >= n {
            return Err(BdViolation::ImproperSubset(idx));
        }
    }
    let image: BTreeSet<Pair> = gamma1.iter().map(|&(a, b)| (c.apply(a), c.apply(b))).collect();
    if &image != gamma2 {
        return Err(BdViolation::ImageMismatch);
    }
    for &alpha in gamma1 {
        let mut cur = alpha;
        let mut escaped = false;
        for _ in 0..n {
            cur = (c.apply(cur.0), c.apply(cur.1));
            if !gamma1.contains(&cur) {
                escaped = true;
                break;
            }
        }
        if !escaped {
            return Err(BdViolation::NilpotencyFailure(alpha.0 + 1, alpha.1 + 1));
        }
    }
    Ok(())
}

/// Checks every structure invariant.
pub fn validate(bd: &AssocBD) -> Result<()> {
    validate_parts(&bd.c0, &bd.c, &bd.gamma1, &bd.gamma2).map_err(Error::from)
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    while let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// All structures on `N ≤ 5` labels with `C0` the standard cycle, `C`
/// running over the `N`-cycles in lexicographic order of their image lists
/// and `Γ1` over proper subsets of `Γ_{C0}` in increasing bitmask order
/// (bit `s` selects the edge `(s, s+1)`).
pub fn enumerate(n: usize) -> Result<Vec<AssocBD>> {
    if !(1..=5).contains(&n) {
        return Err(Error::OutOfRange(format!("enumerate supports 1 <= N <= 5, got {n}")));
    }
    let c0 = CyclicPerm::standard(n);
    let graph = c0.graph();
    let mut out = Vec::new();
    for images in permutations_lex(n) {
        let Ok(c) = CyclicPerm::new(images) else { continue };
        for mask in 0u32..(1u32 << n) - 1 {
            let gamma1: BTreeSet<Pair> =
                (0..n).filter(|s| mask >> s & 1 == 1).map(|s| (s, c0.apply(s))).collect();
            if !gamma1.iter().all(|&(a, b)| graph.contains(&(c.apply(a), c.apply(b)))) {
                continue;
            }
            if let Ok(bd) = AssocBD::new(c0.clone(), c.clone(), gamma1) {
                out.push(bd);
            }
        }
    }
    Ok(out)
}

/// A structure together with the compatible complete order fixed by
/// `α0 = (s_max, s_min) ∈ Γ_{C0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BdJson", into = "BdJson")]
pub struct OrderedAssocBD {
    bd: AssocBD,
    alpha0: Pair,
    pos: Vec<usize>,
}

impl OrderedAssocBD {
    pub fn new(bd: AssocBD, alpha0: Pair) -> Result<Self> {
        if alpha0.0 >= bd.n() || bd.c0.apply(alpha0.0) != alpha0.1 {
            return Err(BdViolation::NotInGraph(alpha0.0 + 1, alpha0.1 + 1).into());
        }
        let pos = bd.c0.positions_from(alpha0.1);
        Ok(OrderedAssocBD { bd, alpha0, pos })
    }

    pub fn bd(&self) -> &AssocBD {
        &self.bd
    }

    pub fn alpha0(&self) -> Pair {
        self.alpha0
    }

    pub fn n(&self) -> usize {
        self.bd.n()
    }

    /// `pos[label] ∈ [0, N)`, increasing along the order.
    pub fn positions(&self) -> &[usize] {
        &self.pos
    }

    /// `label_at()[p]` is the label in position `p`.
    pub fn label_at(&self) -> Vec<usize> {
        let mut lab = vec![0; self.n()];
        for (l, &p) in self.pos.iter().enumerate() {
            lab[p] = l;
        }
        lab
    }

    #[inline]
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.pos[a] < self.pos[b]
    }

    /// `α > 0` in the order.
    #[inline]
    pub fn is_positive(&self, alpha: Pair) -> bool {
        self.less(alpha.0, alpha.1)
    }

    pub fn alpha0_in_gamma1(&self) -> bool {
        self.bd.gamma1.contains(&self.alpha0)
    }

    pub fn alpha0_in_gamma2(&self) -> bool {
        self.bd.gamma2.contains(&self.alpha0)
    }

    /// `(P(k)⁺, P(k)⁻)`: the domain of `τ^k` split by sign.
    pub fn signed_chain_sets(&self, k: usize) -> (BTreeSet<Pair>, BTreeSet<Pair>) {
        self.bd.tau_domain(k).into_iter().partition(|&a| self.is_positive(a))
    }

    /// The isomorphic structure on `{0, …, N−1}` whose labels are the order
    /// positions, so that `C0(p) = p + 1` and `α0 = (N−1, 0)`.
    pub fn canonical(&self) -> OrderedAssocBD {
        let n = self.n();
        let lab = self.label_at();
        let relabel = |perm: &CyclicPerm| {
            CyclicPerm::new((0..n).map(|p| self.pos[perm.apply(lab[p])]).collect()).expect("relabeled cycle")
        };
        let g1 = self.bd.gamma1.iter().map(|&(a, b)| (self.pos[a], self.pos[b])).collect();
        let bd = AssocBD::new(relabel(&self.bd.c0), relabel(&self.bd.c), g1).expect("relabeled structure");
        OrderedAssocBD::new(bd, (self.pos[self.alpha0.0], self.pos[self.alpha0.1])).expect("relabeled order")
    }

    /// The same structure with `α0` dropped from `Γ1` (and its image from
    /// `Γ2`).
    pub fn without_alpha0(&self) -> Result<OrderedAssocBD> {
        let mut g1 = self.bd.gamma1.clone();
        g1.remove(&self.alpha0);
        let bd = AssocBD::new(self.bd.c0.clone(), self.bd.c.clone(), g1)?;
        OrderedAssocBD::new(bd, self.alpha0)
    }
}

/// Checks that for every triple `(i1, i2, i3)` and every `k`,
/// `(i1,i3) ∈ P(k)⁻ ∧ i1 < i2  ⇔  (i1,i2) ∈ P(k)⁺ ∧ (i2,i3) ∈ P(k)⁻`, and
/// `(i1,i3) ∈ P(k)⁻ ∧ i2 < i3  ⇔  (i1,i2) ∈ P(k)⁻ ∧ (i2,i3) ∈ P(k)⁺`.
/// Returns a witness on failure.
pub fn check_triple_equivalence(obd: &OrderedAssocBD) -> std::result::Result<(), String> {
    let n = obd.n();
    for k in 1..=obd.bd.nilpotency_depth().max(1) {
        let (plus, minus) = obd.signed_chain_sets(k);
        for i1 in 0..n {
            for i2 in 0..n {
                for i3 in 0..n {
                    let m13 = minus.contains(&(i1, i3));
                    let lhs_a = m13 && obd.less(i1, i2);
                    let rhs_a = plus.contains(&(i1, i2)) && minus.contains(&(i2, i3));
                    let lhs_b = m13 && obd.less(i2, i3);
                    let rhs_b = minus.contains(&(i1, i2)) && plus.contains(&(i2, i3));
                    if lhs_a != rhs_a || lhs_b != rhs_b {
                        return Err(format!("k={k}, triple ({}, {}, {})", i1 + 1, i2 + 1, i3 + 1));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks that for every `(i1, i2) ∈ P(k)⁻` the sets
/// `S1 = {i < i1 : C^k i > C^k i1}` and `S2 = {i > i2 : C^k i < C^k i2}`
/// partition `S`.
pub fn check_complement_split(obd: &OrderedAssocBD) -> std::result::Result<(), String> {
    let n = obd.n();
    for k in 1..=obd.bd.nilpotency_depth() {
        let ck = obd.bd.c.pow(k as i64);
        let (_, minus) = obd.signed_chain_sets(k);
        for &(i1, i2) in &minus {
            for i in 0..n {
                let in1 = obd.less(i, i1) && obd.less(ck[i1], ck[i]);
                let in2 = obd.less(i2, i) && obd.less(ck[i], ck[i2]);
                if in1 == in2 {
                    return Err(format!("k={k}, pair ({}, {}), element {}", i1 + 1, i2 + 1, i + 1));
                }
            }
        }
    }
    Ok(())
}

/// Checks that every element of `P2` is positive and that `P1`, `P2` have
/// the closure properties: for `s < s' < s''`, `(s,s'') ∈ P` implies
/// `(s,s'), (s',s'') ∈ P`; `(s',s) ∈ P` implies `(s',s''), (s'',s) ∈ P`;
/// `(s'',s') ∈ P` implies `(s'',s), (s,s') ∈ P`.
pub fn check_positivity_and_closure(obd: &OrderedAssocBD) -> std::result::Result<(), String> {
    let (p1, p2) = obd.bd.chain_sets();
    if let Some(&(a, b)) = p2.iter().find(|&&a| !obd.is_positive(a)) {
        return Err(format!("negative pair ({}, {}) in P2", a + 1, b + 1));
    }
    let lab = obd.label_at();
    let n = obd.n();
    for (name, set) in [("P1", p1), ("P2", p2)] {
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let (s, s1, s2) = (lab[x], lab[y], lab[z]);
                    let ok = (!set.contains(&(s, s2)) || (set.contains(&(s, s1)) && set.contains(&(s1, s2))))
                        && (!set.contains(&(s1, s))
                            || (set.contains(&(s1, s2)) && set.contains(&(s2, s))))
                        && (!set.contains(&(s2, s1))
                            || (set.contains(&(s2, s)) && set.contains(&(s, s1))));
                    if !ok {
                        return Err(format!("{name} closure fails at ({}, {}, {})", s + 1, s1 + 1, s2 + 1));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Wire format for both structure types (1-based labels).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BdJson {
    pub n: usize,
    pub c0: Vec<usize>,
    pub c: Vec<usize>,
    pub gamma1: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma2: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha0: Option<[usize; 2]>,
}

fn perm_from_json(n: usize, v: &[usize]) -> Result<CyclicPerm> {
    if v.len() != n {
        return Err(BdViolation::SizeMismatch(format!("expected {n} images, got {}", v.len())).into());
    }
    if v.iter().any(|&i| i == 0 || i > n) {
        return Err(BdViolation::NotBijective(v.to_vec()).into());
    }
    Ok(CyclicPerm::new(v.iter().map(|i| i - 1).collect())?)
}

fn pairs_from_json(n: usize, v: &[[usize; 2]]) -> Result<BTreeSet<Pair>> {
    v.iter()
        .map(|&[a, b]| {
            if a == 0 || b == 0 || a > n || b > n {
                Err(BdViolation::NotInGraph(a, b).into())
            } else {
                Ok((a - 1, b - 1))
            }
        })
        .collect()
}

fn pairs_to_json(set: &BTreeSet<Pair>) -> Vec<[usize; 2]> {
    set.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
}

impl TryFrom<BdJson> for AssocBD {
    type Error = Error;
    fn try_from(j: BdJson) -> Result<Self> {
        if j.n == 0 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        let c0 = perm_from_json(j.n, &j.c0)?;
        let c = perm_from_json(j.n, &j.c)?;
        let g1 = pairs_from_json(j.n, &j.gamma1)?;
        match &j.gamma2 {
            Some(g2) => AssocBD::from_parts(c0, c, g1, pairs_from_json(j.n, g2)?),
            None => AssocBD::new(c0, c, g1),
        }
    }
}

impl From<AssocBD> for BdJson {
    fn from(bd: AssocBD) -> Self {
        BdJson {
            n: bd.n(),
            c0: bd.c0.images().iter().map(|i| i + 1).collect(),
            c: bd.c.images().iter().map(|i| i + 1).collect(),
            gamma1: pairs_to_json(&bd.gamma1),
            gamma2: None,
            alpha0: None,
        }
    }
}

impl TryFrom<BdJson> for OrderedAssocBD {
    type Error = Error;
    fn try_from(j: BdJson) -> Result<Self> {
        let a0 = j.alpha0.ok_or_else(|| Error::Precondition("ordered structure needs alpha0".into()))?;
        let n = j.n;
        let bd = AssocBD::try_from(BdJson { alpha0: None, ..j })?;
        if a0[0] == 0 || a0[1] == 0 || a0[0] > n || a0[1] > n {
            return Err(BdViolation::NotInGraph(a0[0], a0[1]).into());
        }
        OrderedAssocBD::new(bd, (a0[0] - 1, a0[1] - 1))
    }
}

impl From<OrderedAssocBD> for BdJson {
    fn from(o: OrderedAssocBD) -> Self {
        let a0 = [o.alpha0.0 + 1, o.alpha0.1 + 1];
        BdJson { alpha0: Some(a0), ..BdJson::from(o.bd) }
    }
}

/// Builds a structure from 1-based images and edges; handy in tests.
pub fn from_one_based(c0: &[usize], c: &[usize], gamma1: &[(usize, usize)]) -> Result<AssocBD> {
    let n = c0.len();
    AssocBD::try_from(BdJson {
        n,
        c0: c0.to_vec(),
        c: c.to_vec(),
        gamma1: gamma1.iter().map(|&(a, b)| [a, b]).collect(),
        gamma2: None,
        alpha0: None,
    })
}
