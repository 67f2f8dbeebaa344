//! Published closed forms for the decohered states and branch fidelities.
//!
//! Everything here is transcribed as printed, including the irregularities:
//! the extra `p³/4 · c4 c3*` term in `B4`, `B13` and `B14` both printed as
//! `c4 c1* κ2`, and the second coefficient labelled `B12` which sits at the
//! `⟨111|` position of the `|111⟩` row and is stored as `b16`. Squares such as
//! `μ²` and `α²` are plain complex squares, not moduli. The simulation path is
//! the ground truth; these values exist so the two can be compared.

use num_complex::Complex64;

use crate::channels::ChannelParams;
use crate::error::{Error, Result};
use crate::linalg::ComplexScalar;
use crate::states::{GhzLikeParams, GhzParams, UnknownQubit};
use crate::teleport::{BellOutcome, CharlieOutcome};
use crate::tol::IMAGINARY_RESIDUE_TOL;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzCoeffs {
    pub a1: ComplexScalar,
    pub a2: ComplexScalar,
    pub a3: ComplexScalar,
    pub a4: ComplexScalar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzLikeCoeffs {
    /// `b[0]` is `B1`, ..., `b[15]` is `B16`.
    pub b: [ComplexScalar; 16],
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
}

impl GhzLikeCoeffs {
    /// One-based accessor matching the printed labels.
    pub fn get(&self, k: usize) -> ComplexScalar {
        self.b[k - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellKappas {
    pub k00: ComplexScalar,
    pub k01: ComplexScalar,
    pub k10: ComplexScalar,
    pub k11: ComplexScalar,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn real_part(what: &'static str, z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_RESIDUE_TOL {
        Err(Error::ImaginaryResidue { what, residue: z.im })
    } else {
        Ok(z.re)
    }
}

pub fn ghz_coeffs(params: &GhzParams, channel: ChannelParams) -> GhzCoeffs {
    let (a, b) = (params.alpha(), params.beta());
    let p = channel.p();
    let g = channel.gamma();
    let p2 = p * p;
    let q3 = (1.0 - p).powi(3);
    let k3 = (1.0 - g).powi(3);
    let coherence = 0.5 * (1.0 - g).powf(1.5);
    GhzCoeffs {
        a1: a * a * 0.5 * (p2 + q3 * k3),
        a2: (a * b.conj() * p2 + a.conj() * b * q3) * coherence,
        a3: (a.conj() * b * p2 + a * b.conj() * q3) * coherence,
        a4: b * b * 0.5 * (p2 * k3 + q3),
    }
}

pub fn ghz_like_coeffs(params: &GhzLikeParams, channel: ChannelParams) -> GhzLikeCoeffs {
    let [c1, c2, c3, c4] = params.coefficients();
    let p = channel.p();
    let g = channel.gamma();
    let pp = p * p.sqrt();
    let q = (1.0 - p).powf(1.5);
    let pre = (1.0 - g) / 4.0;
    let kappa1 = pre * (pp + q);
    let kappa2 = pre * (pp * (1.0 - g) + q);
    let kappa3 = pre * (pp * (1.0 - g).powi(3) + q);
    let (k1, k2, k3) = (re(kappa1), re(kappa2), re(kappa3));
    let b = [
        re(c3.norm_sqr()) * k1,
        c3 * c1.conj() * k1,
        c3 * c2.conj() * k1,
        c3 * c4.conj() * k2 + c4 * c3.conj() * (p.powi(3) / 4.0),
        c1 * c3.conj() * k1,
        re(c1.norm_sqr()) * k1,
        c1 * c2.conj() * k1,
        c1 * c4.conj() * k2,
        c2 * c3.conj() * k1,
        c2 * c1.conj() * k1,
        re(c2.norm_sqr()) * k1,
        c2 * c4.conj() * k2,
        c4 * c1.conj() * k2,
        c4 * c1.conj() * k2,
        c4 * c2.conj() * k2,
        re(c4.norm_sqr()) * k3,
    ];
    GhzLikeCoeffs {
        b,
        kappa1,
        kappa2,
        kappa3,
    }
}

pub fn bell_kappas(input: &UnknownQubit, coeffs: &GhzCoeffs) -> BellKappas {
    let (mu, nu) = (input.mu(), input.nu());
    let mu2 = mu * mu;
    let nu2 = nu * nu;
    let x = mu.conj() * nu;
    let y = mu.conj() * nu.conj();
    BellKappas {
        k00: coeffs.a1 * (mu2 + x + y + nu2),
        k01: coeffs.a2 * (mu2 - x + y - nu2),
        k10: coeffs.a3 * (mu2 + x - y - nu2),
        k11: coeffs.a4 * (mu2 - x - y + nu2),
    }
}

/// Analyzer-branch fidelity for the GHZ protocol after a `φ+` Bell outcome.
pub fn fidelity_ghz_formula(
    theta: f64,
    input: &UnknownQubit,
    kappas: &BellKappas,
    which: CharlieOutcome,
) -> Result<f64> {
    let (mu, nu) = (input.mu(), input.nu());
    let (s, c) = theta.sin_cos();
    let (first, last) = match which {
        CharlieOutcome::X1 => (c * c, s * s),
        CharlieOutcome::X2 => (s * s, c * c),
        other => {
            return Err(Error::KindMismatch {
                kind: "GHZ",
                charlie: other.label(),
            })
        }
    };
    let cross = (mu * nu.conj() * kappas.k01 + mu.conj() * nu * kappas.k10) * (0.5 * (2.0 * theta).sin());
    let value = mu * mu * kappas.k00 * first + cross + nu * nu * kappas.k11 * last;
    real_part("GHZ analyzer fidelity", value)
}

/// Tabulated GHZ-like branch fidelity; `φ−` reuses `φ+` and `ψ−` reuses `ψ+`.
pub fn fidelity_ghz_like_formula(
    input: &UnknownQubit,
    coeffs: &GhzLikeCoeffs,
    bell: BellOutcome,
    charlie: CharlieOutcome,
) -> Result<f64> {
    let (mu, nu) = (input.mu(), input.nu());
    let mu2 = mu * mu;
    let nu2 = nu * nu;
    let b = |k| coeffs.get(k);
    let phi = matches!(bell, BellOutcome::PhiPlus | BellOutcome::PhiMinus);
    let (outer_mu, mid, outer_nu) = match (phi, charlie) {
        (true, CharlieOutcome::One) => (b(1), b(4) + b(13), b(16)),
        (true, CharlieOutcome::Zero) => (b(6), b(7) + b(10), b(11)),
        (false, CharlieOutcome::One) => (b(16), b(4) + b(13), b(1)),
        (false, CharlieOutcome::Zero) => (b(11), b(7) + b(10), b(6)),
        (_, other) => {
            return Err(Error::KindMismatch {
                kind: "GHZ-like",
                charlie: other.label(),
            })
        }
    };
    let value = (mu2 * mu2 * outer_mu + mu2 * nu2 * mid + nu2 * nu2 * outer_nu) * 0.5;
    real_part("GHZ-like branch fidelity", value)
}
