#![allow(dead_code)]

use decolab::{ComplexMatrix, QubitLayout};
use num_complex::Complex64;
use proptest::prelude::*;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random complex matrix with entries in the unit square.
pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * rows * cols).prop_map(move |v| {
        let data = v.chunks(2).map(|p| c(p[0], p[1])).collect();
        ComplexMatrix::new(rows, cols, data).unwrap()
    })
}

pub fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n, n).prop_map(|a| a.add(&a.dagger()).unwrap().scale_real(0.5))
}

/// `G G† / tr(G G†)`, full rank almost surely.
pub fn density(n_qubits: usize) -> impl Strategy<Value = ComplexMatrix> {
    let d = 1 << n_qubits;
    matrix(d, d).prop_filter_map("degenerate", |g| {
        let rho = g.matmul(&g.dagger()).unwrap();
        let tr = rho.trace().re;
        (tr > 1e-6).then(|| rho.scale_real(1.0 / tr))
    })
}

/// `SU(2)` element from three angles.
pub fn unitary_2(a: f64, b: f64, t: f64) -> ComplexMatrix {
    let (s, co) = t.sin_cos();
    ComplexMatrix::from_rows(&[
        &[Complex64::from_polar(co, a), Complex64::from_polar(s, b)],
        &[-Complex64::from_polar(s, -b), Complex64::from_polar(co, -a)],
    ])
    .unwrap()
}

pub fn angles() -> impl Strategy<Value = (f64, f64, f64)> {
    (-3.2f64..3.2, -3.2f64..3.2, -3.2f64..3.2)
}

/// Reorders qubits so that new qubit `k` is old qubit `perm[k]`.
pub fn permute_qubits(rho: &ComplexMatrix, layout: QubitLayout, perm: &[usize]) -> ComplexMatrix {
    let n = layout.n_qubits();
    let d = layout.dim();
    let map = |i: usize| -> usize {
        (0..n).fold(0, |acc, k| {
            let bit = (i >> (n - 1 - perm[k])) & 1;
            acc | (bit << (n - 1 - k))
        })
    };
    let mut data = vec![c(0.0, 0.0); d * d];
    for r in 0..d {
        for col in 0..d {
            data[map(r) * d + map(col)] = rho.get(r, col);
        }
    }
    ComplexMatrix::new(d, d, data).unwrap()
}

pub fn min_eigenvalue(h: &ComplexMatrix) -> f64 {
    decolab::linalg::hermitian_eigenvalues(h).unwrap()[0]
}
