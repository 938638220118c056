#![allow(dead_code)]

use aybe_core::bd::{enumerate, AssocBD};
use aybe_core::bundles::{example_matrix, matrix_from_sequence, SplittingMatrix};

/// Every structure with the standard `C0` for `N = 1..=max_n`.
pub fn structures(max_n: usize) -> Vec<AssocBD> {
    (1..=max_n).flat_map(|n| enumerate(n).unwrap()).collect()
}

/// All simple 0/1 matrices of shape `big_n × n` with the given shift.
pub fn simple_01(big_n: usize, n: usize, shift: usize) -> Vec<SplittingMatrix> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (big_n * n)) {
        let rows: Vec<Vec<i64>> =
            (0..big_n).map(|i| (0..n).map(|j| ((mask >> (i * n + j)) & 1) as i64).collect()).collect();
        let m = SplittingMatrix::new(rows, shift).unwrap();
        if m.is_simple() {
            out.push(m);
        }
    }
    out
}

/// Simple 0/1 matrices with `N ∈ {2, 3}`, `n ≤ 4` and every admissible
/// shift, plus the example matrices and a few sequence-built ones.
pub fn matrix_corpus() -> Vec<SplittingMatrix> {
    let mut out = Vec::new();
    for (big_n, shift) in [(2, 1), (3, 1), (3, 2)] {
        for n in 1..=4 {
            out.extend(simple_01(big_n, n, shift));
        }
    }
    out.push(example_matrix(2, 3).unwrap());
    out.push(example_matrix(3, 4).unwrap());
    for (big_n, k, a) in [(3, 2, vec![1, 1, 2]), (3, 2, vec![1, 2, 3]), (2, 1, vec![1, 2])] {
        out.push(matrix_from_sequence(big_n, k, &a).unwrap());
    }
    out
}
