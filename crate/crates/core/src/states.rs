//! Pure-state families: GHZ, GHZ-like, the unknown qubit, Bell and analyzer bases.
//!
//! GHZ states use the normalized convention `α|000⟩ + β|111⟩` with
//! `|α|² + |β|² = 1`; the maximally entangled member is `α = β = 1/√2`.
//! GHZ-like states keep the `1/2` prefactor with `Σ|c_i|² = 4` and live on
//! the span of `{|001⟩, |010⟩, |100⟩, |111⟩}`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexScalar, QubitLayout};
use crate::tol::NORM_TOL;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_norm(what: &'static str, norm_sq: f64, expected: f64) -> Result<()> {
    if (norm_sq - expected).abs() <= NORM_TOL {
        Ok(())
    } else {
        Err(Error::NotNormalized { what, norm_sq })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzParams {
    alpha: ComplexScalar,
    beta: ComplexScalar,
}

impl GhzParams {
    pub fn new(alpha: ComplexScalar, beta: ComplexScalar) -> Result<Self> {
        check_norm("GHZ amplitudes", alpha.norm_sqr() + beta.norm_sqr(), 1.0)?;
        Ok(Self { alpha, beta })
    }

    pub fn real(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(re(alpha), re(beta))
    }

    pub fn maximal() -> Self {
        Self {
            alpha: re(FRAC_1_SQRT_2),
            beta: re(FRAC_1_SQRT_2),
        }
    }

    pub fn alpha(&self) -> ComplexScalar {
        self.alpha
    }

    pub fn beta(&self) -> ComplexScalar {
        self.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzLikeParams {
    c: [ComplexScalar; 4],
}

impl GhzLikeParams {
    pub fn new(c: [ComplexScalar; 4]) -> Result<Self> {
        check_norm("GHZ-like coefficients", c.iter().map(|z| z.norm_sqr()).sum(), 4.0)?;
        Ok(Self { c })
    }

    pub fn real(c: [f64; 4]) -> Result<Self> {
        Self::new(c.map(re))
    }

    /// Real `c1, c2, c3` with `c4 = √(4 − c1² − c2² − c3²)`.
    pub fn with_implied_c4(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let rest = 4.0 - c1 * c1 - c2 * c2 - c3 * c3;
        if rest < -NORM_TOL {
            return Err(Error::NotNormalized {
                what: "GHZ-like coefficients",
                norm_sq: 4.0 - rest,
            });
        }
        Self::real([c1, c2, c3, rest.max(0.0).sqrt()])
    }

    pub fn maximal() -> Self {
        Self { c: [re(1.0); 4] }
    }

    pub fn coefficients(&self) -> [ComplexScalar; 4] {
        self.c
    }
}

/// The qubit Alice is asked to teleport, `μ|0⟩ + ν|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnknownQubit {
    mu: ComplexScalar,
    nu: ComplexScalar,
}

impl UnknownQubit {
    pub fn new(mu: ComplexScalar, nu: ComplexScalar) -> Result<Self> {
        check_norm("unknown qubit", mu.norm_sqr() + nu.norm_sqr(), 1.0)?;
        Ok(Self { mu, nu })
    }

    pub fn mu(&self) -> ComplexScalar {
        self.mu
    }

    pub fn nu(&self) -> ComplexScalar {
        self.nu
    }

    pub fn state(&self) -> StateVector {
        StateVector {
            layout: QubitLayout::new(1).unwrap(),
            amplitudes: vec![self.mu, self.nu],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: QubitLayout,
    amplitudes: Vec<ComplexScalar>,
}

impl StateVector {
    /// Wraps amplitudes, checking length `2^n` and unit norm.
    pub fn new(layout: QubitLayout, amplitudes: Vec<ComplexScalar>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::BadShape {
                rows: layout.dim(),
                cols: 1,
                got: amplitudes.len(),
            });
        }
        check_norm("state vector", amplitudes.iter().map(|z| z.norm_sqr()).sum(), 1.0)?;
        Ok(Self { layout, amplitudes })
    }

    pub fn layout(&self) -> QubitLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[ComplexScalar] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> ComplexScalar {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scaled(&self, k: ComplexScalar) -> StateVector {
        StateVector {
            layout: self.layout,
            amplitudes: self.amplitudes.iter().map(|z| z * k).collect(),
        }
    }

    /// Rank-one projector `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

fn basis_combination(n_qubits: usize, terms: &[(usize, ComplexScalar)]) -> Result<StateVector> {
    let layout = QubitLayout::new(n_qubits)?;
    let mut amps = vec![re(0.0); layout.dim()];
    for &(index, amp) in terms {
        amps[index] += amp;
    }
    StateVector::new(layout, amps)
}

/// `α|000⟩ + β|111⟩`.
pub fn ghz(params: &GhzParams) -> StateVector {
    basis_combination(3, &[(0b000, params.alpha), (0b111, params.beta)]).expect("GhzParams are normalized")
}

/// `(c1|001⟩ + c2|010⟩ + c3|100⟩ + c4|111⟩) / 2`.
pub fn ghz_like(params: &GhzLikeParams) -> StateVector {
    let [c1, c2, c3, c4] = params.c;
    basis_combination(
        3,
        &[
            (0b001, c1 * 0.5),
            (0b010, c2 * 0.5),
            (0b100, c3 * 0.5),
            (0b111, c4 * 0.5),
        ],
    )
    .expect("GhzLikeParams are normalized")
}

/// Bell basis ordered `[φ+, φ−, ψ+, ψ−]`.
pub fn bell_basis() -> [StateVector; 4] {
    let h = FRAC_1_SQRT_2;
    let make = |terms: &[(usize, f64)]| {
        basis_combination(2, &terms.iter().map(|&(i, a)| (i, re(a))).collect::<Vec<_>>()).unwrap()
    };
    [
        make(&[(0b00, h), (0b11, h)]),
        make(&[(0b00, h), (0b11, -h)]),
        make(&[(0b01, h), (0b10, h)]),
        make(&[(0b01, h), (0b10, -h)]),
    ]
}

/// `|x1⟩ = cosθ|0⟩ + sinθ|1⟩`, `|x2⟩ = −sinθ|0⟩ + cosθ|1⟩`.
pub fn analyzer_basis(theta: f64) -> [StateVector; 2] {
    let (s, c) = theta.sin_cos();
    let layout = QubitLayout::new(1).unwrap();
    [
        StateVector {
            layout,
            amplitudes: vec![re(c), re(s)],
        },
        StateVector {
            layout,
            amplitudes: vec![re(-s), re(c)],
        },
    ]
}

/// Density matrix of a pure state.
pub fn density(psi: &StateVector) -> Result<ComplexMatrix> {
    check_norm("state vector", psi.norm_sqr(), 1.0)?;
    Ok(psi.projector())
}
