//! Three-party teleportation over a shared (possibly decohered) three-qubit resource.
//!
//! Register layout during the protocol, qubit 0 leftmost:
//!
//! | qubit | holder  | content                   |
//! |-------|---------|---------------------------|
//! | 0     | Alice   | unknown qubit `u`         |
//! | 1     | Alice   | resource qubit 1          |
//! | 2     | Bob     | resource qubit 2          |
//! | 3     | Charlie | resource qubit 3          |
//!
//! Alice measures `(0, 1)` in the Bell basis, Charlie measures qubit 3, and Bob
//! applies the Pauli correction looked up from both classical outcomes.
//!
//! For the GHZ protocol Charlie's spin analyzer is referenced to the x axis:
//! its outcomes are `H|x1(θ)⟩ = cosθ|+⟩ + sinθ|−⟩` and `H|x2(θ)⟩ = −sinθ|+⟩ + cosθ|−⟩`,
//! with `|x1⟩, |x2⟩` from [`analyzer_basis`]. At `θ = 0` these are `|±⟩`, the
//! outcomes for which the `I`/`S_z` corrections of the GHZ table restore Bob's qubit.

use std::fmt;

use num_complex::Complex64;

use crate::entanglement::validate_density;
use crate::error::{Error, Result};
use crate::linalg::{lift, partial_trace, pauli, ComplexMatrix, QubitLayout};
use crate::states::{analyzer_basis, bell_basis, density, StateVector, UnknownQubit};
use crate::tol::{HERMITICITY_TOL, PROJECTOR_TOL, ZERO_PROBABILITY};

pub const ALICE_QUBITS: [usize; 2] = [0, 1];
pub const BOB_QUBIT: usize = 2;
pub const CHARLIE_QUBIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolKind {
    Ghz,
    GhzLike,
}

impl ProtocolKind {
    pub fn name(self) -> &'static str {
        match self {
            ProtocolKind::Ghz => "GHZ",
            ProtocolKind::GhzLike => "GHZ-like",
        }
    }

    pub fn charlie_outcomes(self) -> [CharlieOutcome; 2] {
        match self {
            ProtocolKind::Ghz => [CharlieOutcome::X1, CharlieOutcome::X2],
            ProtocolKind::GhzLike => [CharlieOutcome::Zero, CharlieOutcome::One],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];

    pub fn state(self) -> StateVector {
        let [pp, pm, sp, sm] = bell_basis();
        match self {
            BellOutcome::PhiPlus => pp,
            BellOutcome::PhiMinus => pm,
            BellOutcome::PsiPlus => sp,
            BellOutcome::PsiMinus => sm,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BellOutcome::PhiPlus => "phi_plus",
            BellOutcome::PhiMinus => "phi_minus",
            BellOutcome::PsiPlus => "psi_plus",
            BellOutcome::PsiMinus => "psi_minus",
        }
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Charlie's result: analyzer outcomes for GHZ, computational outcomes for GHZ-like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharlieOutcome {
    X1,
    X2,
    Zero,
    One,
}

impl CharlieOutcome {
    pub fn kind(self) -> ProtocolKind {
        match self {
            CharlieOutcome::X1 | CharlieOutcome::X2 => ProtocolKind::Ghz,
            CharlieOutcome::Zero | CharlieOutcome::One => ProtocolKind::GhzLike,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CharlieOutcome::X1 => "x1",
            CharlieOutcome::X2 => "x2",
            CharlieOutcome::Zero => "0",
            CharlieOutcome::One => "1",
        }
    }

    /// Measured state; `theta` only matters for the analyzer outcomes.
    pub fn state(self, theta: f64) -> StateVector {
        match self {
            CharlieOutcome::X1 => charlie_analyzer(theta)[0].clone(),
            CharlieOutcome::X2 => charlie_analyzer(theta)[1].clone(),
            CharlieOutcome::Zero => UnknownQubit::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
                .unwrap()
                .state(),
            CharlieOutcome::One => UnknownQubit::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
                .unwrap()
                .state(),
        }
    }
}

impl fmt::Display for CharlieOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Charlie's analyzer outcomes `H|x1(θ)⟩, H|x2(θ)⟩`.
pub fn charlie_analyzer(theta: f64) -> [StateVector; 2] {
    let h = pauli::hadamard();
    analyzer_basis(theta).map(|x| {
        let amps = h.apply(x.amplitudes()).unwrap();
        StateVector::new(x.layout(), amps).unwrap()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correction {
    Identity,
    Sz,
    Sx,
    /// The product `S_x S_z`.
    SxSz,
}

impl Correction {
    pub fn matrix(self) -> ComplexMatrix {
        match self {
            Correction::Identity => ComplexMatrix::identity(2),
            Correction::Sz => pauli::z(),
            Correction::Sx => pauli::x(),
            Correction::SxSz => pauli::x().matmul(&pauli::z()).unwrap(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Correction::Identity => "I",
            Correction::Sz => "Sz",
            Correction::Sx => "Sx",
            Correction::SxSz => "SxSz",
        }
    }
}

/// Bob's operation for each pair of classical outcomes, as tabulated for both protocols.
pub fn correction_lookup(kind: ProtocolKind, bell: BellOutcome, charlie: CharlieOutcome) -> Result<Correction> {
    use BellOutcome::*;
    use CharlieOutcome::*;
    use Correction::*;

    if charlie.kind() != kind {
        return Err(Error::KindMismatch {
            kind: kind.name(),
            charlie: charlie.label(),
        });
    }
    Ok(match (bell, charlie) {
        (PhiPlus, X1) | (PhiMinus, X2) | (PsiPlus, X1) | (PsiMinus, X2) => Identity,
        (PhiPlus, X2) | (PhiMinus, X1) | (PsiPlus, X2) | (PsiMinus, X1) => Sz,

        (PhiPlus, One) | (PsiPlus, Zero) => Identity,
        (PhiPlus, Zero) | (PsiPlus, One) => Sx,
        (PhiMinus, One) | (PsiMinus, Zero) => Sz,
        (PhiMinus, Zero) | (PsiMinus, One) => SxSz,
    })
}

/// Outcome of a projective measurement on part of a register.
#[derive(Debug, Clone)]
pub struct Measurement {
    pub probability: f64,
    /// Normalized state of the unmeasured qubits; `None` for a zero-probability branch.
    pub post_state: Option<ComplexMatrix>,
}

/// Projects `qubits` of `rho` with `projector` and traces them out.
pub fn project_measurement(
    rho: &ComplexMatrix,
    layout: QubitLayout,
    projector: &ComplexMatrix,
    qubits: &[usize],
) -> Result<Measurement> {
    layout.check_operator(rho)?;
    let herm = projector.hermiticity_defect()?;
    if herm > HERMITICITY_TOL {
        return Err(Error::InvalidProjector(herm));
    }
    let idem = projector.matmul(projector)?.max_abs_diff(projector)?;
    if idem > PROJECTOR_TOL {
        return Err(Error::InvalidProjector(idem));
    }
    let full = lift(projector, layout, qubits)?;
    let projected = full.matmul(rho)?.matmul(&full)?;
    let probability = projected.trace().re;
    if probability <= ZERO_PROBABILITY {
        return Ok(Measurement {
            probability: probability.max(0.0),
            post_state: None,
        });
    }

    let rest: Vec<usize> = (0..layout.n_qubits()).filter(|q| !qubits.contains(q)).collect();
    let post = if rest.is_empty() {
        ComplexMatrix::identity(1)
    } else {
        partial_trace(&projected, layout, &rest)?.scale_real(1.0 / probability)
    };
    Ok(Measurement {
        probability,
        post_state: Some(post),
    })
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn fidelity(bob: &ComplexMatrix, target: &UnknownQubit) -> Result<f64> {
    let psi = [target.mu(), target.nu()];
    let rho_psi = bob.apply(&psi)?;
    let overlap: Complex64 = psi.iter().zip(&rho_psi).map(|(a, b)| a.conj() * b).sum();
    Ok(overlap.re)
}

#[derive(Debug, Clone)]
pub struct ProtocolRun {
    pub bell: BellOutcome,
    pub charlie: CharlieOutcome,
    pub correction: Correction,
    pub probability: f64,
    /// Bob's corrected qubit; absent for zero-probability branches.
    pub bob_state: Option<ComplexMatrix>,
    pub fidelity: Option<f64>,
}

impl ProtocolRun {
    /// Probability times fidelity; zero for absent branches.
    pub fn weighted_fidelity(&self) -> f64 {
        self.fidelity.map_or(0.0, |f| f * self.probability)
    }
}

#[derive(Debug, Clone)]
pub struct ProtocolReport {
    pub kind: ProtocolKind,
    pub theta: f64,
    pub runs: Vec<ProtocolRun>,
    pub average_fidelity: f64,
}

impl ProtocolReport {
    pub fn branch(&self, bell: BellOutcome, charlie: CharlieOutcome) -> Option<&ProtocolRun> {
        self.runs.iter().find(|r| r.bell == bell && r.charlie == charlie)
    }

    pub fn total_probability(&self) -> f64 {
        self.runs.iter().map(|r| r.probability).sum()
    }
}

/// Enumerates all eight (Bell, Charlie) branches of the protocol.
pub fn run_protocol(
    input: &UnknownQubit,
    resource: &ComplexMatrix,
    kind: ProtocolKind,
    theta: f64,
) -> Result<ProtocolReport> {
    let three = QubitLayout::new(3)?;
    validate_density(resource, three)?;
    let four = QubitLayout::new(4)?;
    let two = QubitLayout::new(2)?;

    let system = density(&input.state())?.tensor(resource);
    let mut runs = Vec::with_capacity(8);
    for bell in BellOutcome::ALL {
        let alice = project_measurement(&system, four, &bell.state().projector(), &ALICE_QUBITS)?;
        for charlie in kind.charlie_outcomes() {
            let correction = correction_lookup(kind, bell, charlie)?;
            let mut run = ProtocolRun {
                bell,
                charlie,
                correction,
                probability: 0.0,
                bob_state: None,
                fidelity: None,
            };
            if let Some(bob_charlie) = &alice.post_state {
                // Post-measurement order is (Bob, Charlie).
                let m = project_measurement(bob_charlie, two, &charlie.state(theta).projector(), &[1])?;
                run.probability = alice.probability * m.probability;
                if let Some(bob) = m.post_state {
                    let corrected = correction.matrix().sandwich(&bob)?;
                    run.fidelity = Some(fidelity(&corrected, input)?);
                    run.bob_state = Some(corrected);
                }
            }
            runs.push(run);
        }
    }
    let average_fidelity = runs.iter().map(ProtocolRun::weighted_fidelity).sum();
    Ok(ProtocolReport {
        kind,
        theta,
        runs,
        average_fidelity,
    })
}
