use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Register of `n` qubits; qubit 0 is the leftmost tensor factor (most significant bit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitLayout {
    n_qubits: usize,
}

impl QubitLayout {
    pub const MAX_QUBITS: usize = 4;

    pub fn new(n_qubits: usize) -> Result<Self> {
        if (1..=Self::MAX_QUBITS).contains(&n_qubits) {
            Ok(Self { n_qubits })
        } else {
            Err(Error::UnsupportedQubitCount(n_qubits))
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Bit mask selecting `qubit` inside a basis index.
    pub fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    pub fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit < self.n_qubits {
            Ok(())
        } else {
            Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            })
        }
    }

    /// Validates a list of distinct in-range qubits.
    pub fn check_qubits(&self, qubits: &[usize]) -> Result<()> {
        for (k, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..k].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(())
    }

    pub(crate) fn check_operator(&self, m: &ComplexMatrix) -> Result<()> {
        let d = self.dim();
        if m.shape() == (d, d) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op: "layout",
                left: (d, d),
                right: m.shape(),
            })
        }
    }

    /// Index into a sub-register: bit `j` of the result (MSB first) is the bit of `qubits[j]`.
    fn gather(&self, index: usize, qubits: &[usize]) -> usize {
        qubits
            .iter()
            .fold(0, |acc, &q| (acc << 1) | usize::from(index & self.mask(q) != 0))
    }

    fn mask_of(&self, qubits: &[usize]) -> usize {
        qubits.iter().fold(0, |acc, &q| acc | self.mask(q))
    }
}

/// Transposes the tensor factor belonging to `qubit`, leaving the others untouched.
pub fn partial_transpose(rho: &ComplexMatrix, layout: QubitLayout, qubit: usize) -> Result<ComplexMatrix> {
    layout.check_operator(rho)?;
    layout.check_qubit(qubit)?;
    let m = layout.mask(qubit);
    let d = layout.dim();
    Ok(ComplexMatrix::from_fn(d, d, |r, c| {
        let (rb, cb) = (r & m, c & m);
        rho.get((r & !m) | cb, (c & !m) | rb)
    }))
}

/// Reduced matrix on `keep`, in ascending original-index order.
pub fn partial_trace(rho: &ComplexMatrix, layout: QubitLayout, keep: &[usize]) -> Result<ComplexMatrix> {
    layout.check_operator(rho)?;
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    layout.check_qubits(keep)?;
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    let traced: Vec<usize> = (0..layout.n_qubits()).filter(|q| !keep.contains(q)).collect();

    let scatter = |bits: usize, qubits: &[usize]| -> usize {
        let k = qubits.len();
        qubits
            .iter()
            .enumerate()
            .filter(|&(j, _)| bits & (1 << (k - 1 - j)) != 0)
            .fold(0, |acc, (_, &q)| acc | layout.mask(q))
    };

    let dk = 1 << keep.len();
    let dt = 1 << traced.len();
    Ok(ComplexMatrix::from_fn(dk, dk, |a, b| {
        let (ia, ib) = (scatter(a, &keep), scatter(b, &keep));
        (0..dt)
            .map(|t| {
                let it = scatter(t, &traced);
                rho.get(ia | it, ib | it)
            })
            .sum::<Complex64>()
    }))
}

/// Embeds an operator acting on the ordered qubit list `qubits` into the full register.
///
/// Qubit `qubits[j]` of the layout plays the role of factor `j` of `op`.
pub fn lift(op: &ComplexMatrix, layout: QubitLayout, qubits: &[usize]) -> Result<ComplexMatrix> {
    layout.check_qubits(qubits)?;
    let k = qubits.len();
    if op.shape() != (1 << k, 1 << k) {
        return Err(Error::DimensionMismatch {
            op: "lift",
            left: (1 << k, 1 << k),
            right: op.shape(),
        });
    }
    let rest = !layout.mask_of(qubits);
    let d = layout.dim();
    Ok(ComplexMatrix::from_fn(d, d, |r, c| {
        if r & rest == c & rest {
            op.get(layout.gather(r, qubits), layout.gather(c, qubits))
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    fn phi_plus() -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v: Vec<Complex64> = [h, 0.0, 0.0, h].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        ComplexMatrix::outer(&v, &v)
    }

    fn sample_1q(a: f64, b: f64, re: f64, im: f64) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            &[Complex64::new(a, 0.0), Complex64::new(re, im)],
            &[Complex64::new(re, -im), Complex64::new(b, 0.0)],
        ])
        .unwrap()
    }

    #[test]
    fn layout_bounds() {
        assert!(QubitLayout::new(0).is_err());
        assert!(QubitLayout::new(5).is_err());
        let l = QubitLayout::new(3).unwrap();
        assert_eq!(l.dim(), 8);
        assert_eq!(l.mask(0), 4);
        assert!(matches!(l.check_qubits(&[0, 3]), Err(Error::QubitOutOfRange { .. })));
        assert!(matches!(l.check_qubits(&[1, 1]), Err(Error::DuplicateQubit(1))));
    }

    #[test]
    fn partial_transpose_of_product() {
        let a = sample_1q(0.3, 0.7, 0.1, 0.2);
        let b = sample_1q(0.6, 0.4, -0.2, 0.05);
        let l = QubitLayout::new(2).unwrap();
        let pt = partial_transpose(&a.tensor(&b), l, 0).unwrap();
        assert!(pt.max_abs_diff(&a.transpose().tensor(&b)).unwrap() < 1e-15);
        let pt1 = partial_transpose(&a.tensor(&b), l, 1).unwrap();
        assert!(pt1.max_abs_diff(&a.tensor(&b.transpose())).unwrap() < 1e-15);
    }

    #[test]
    fn partial_transpose_of_bell_state() {
        // PT_A |φ+⟩⟨φ+| = SWAP / 2.
        let l = QubitLayout::new(2).unwrap();
        let pt = partial_transpose(&phi_plus(), l, 0).unwrap();
        let swap_half = ComplexMatrix::from_real_rows(&[
            &[0.5, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.5, 0.0],
            &[0.0, 0.5, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.5],
        ])
        .unwrap();
        assert!(pt.max_abs_diff(&swap_half).unwrap() < 1e-15);
        let back = partial_transpose(&pt, l, 0).unwrap();
        assert_eq!(back, phi_plus());
        assert!(partial_transpose(&pt, l, 2).is_err());
    }

    #[test]
    fn partial_trace_cases() {
        let l = QubitLayout::new(2).unwrap();
        let a = sample_1q(0.3, 0.7, 0.1, 0.2);
        let b = sample_1q(0.6, 0.4, -0.2, 0.05).scale_real(2.0);
        let ab = a.tensor(&b);
        let ra = partial_trace(&ab, l, &[0]).unwrap();
        assert!(ra.max_abs_diff(&a.scale(b.trace())).unwrap() < 1e-15);
        let rb = partial_trace(&ab, l, &[1]).unwrap();
        assert!(rb.max_abs_diff(&b.scale(a.trace())).unwrap() < 1e-15);

        // Explicit sum: ρ_B[i][j] = Σ_k ρ[(k,i),(k,j)] gives diag(1/2, 1/2).
        let marginal = partial_trace(&phi_plus(), l, &[1]).unwrap();
        assert!(
            marginal
                .max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5))
                .unwrap()
                < 1e-15
        );

        assert_eq!(partial_trace(&ab, l, &[1, 0]).unwrap(), ab);
        assert!(matches!(partial_trace(&ab, l, &[]), Err(Error::EmptyKeepSet)));
    }

    #[test]
    fn partial_trace_middle_qubit() {
        let l = QubitLayout::new(3).unwrap();
        let a = sample_1q(0.3, 0.7, 0.1, 0.2);
        let b = sample_1q(0.6, 0.4, -0.2, 0.05);
        let c = sample_1q(0.9, 0.1, 0.0, 0.3);
        let abc = a.tensor(&b).tensor(&c);
        let kept = partial_trace(&abc, l, &[2, 0]).unwrap();
        assert!(kept.max_abs_diff(&a.tensor(&c)).unwrap() < 1e-15);
        let mid = partial_trace(&abc, l, &[1]).unwrap();
        assert!(mid.max_abs_diff(&b).unwrap() < 1e-15);
    }

    #[test]
    fn lift_places_operator_on_requested_qubits() {
        let l = QubitLayout::new(3).unwrap();
        let i2 = ComplexMatrix::identity(2);
        let x = pauli::x();
        let z = pauli::z();
        assert_eq!(lift(&x, l, &[1]).unwrap(), i2.tensor(&x).tensor(&i2));
        // Reversed order: factor 0 of `op` lands on qubit 2.
        let xz = x.tensor(&z);
        assert_eq!(lift(&xz, l, &[2, 0]).unwrap(), z.tensor(&i2).tensor(&x));
        assert!(lift(&xz, l, &[0]).is_err());
    }
}
