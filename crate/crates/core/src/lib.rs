//! Three-qubit GHZ and GHZ-like states under generalized amplitude damping.
//!
//! The crate covers the whole pipeline: building the states, sending their
//! qubits through the channel, measuring what entanglement survives with
//! tripartite negativity, running the three-party teleportation protocol on
//! the decohered resource, and sweeping all of that over channel parameters.

pub mod channels;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod formulas;
pub mod linalg;
pub mod states;
pub mod teleport;
pub mod tol;

pub use channels::{
    apply_channel, completeness_defect, gad_paper_literal, gad_standard, ApplicationMode, ChannelParams, KrausSet,
    KrausVariant,
};
pub use entanglement::{negativity_cut, tripartite_negativity, NegativityReport};
pub use error::{Error, ErrorClass, Result};
pub use experiments::{run_sweep, Quantity, StateSpec, SweepRecord, SweepSpec};
pub use linalg::{ComplexMatrix, ComplexScalar, QubitLayout};
pub use states::{GhzLikeParams, GhzParams, StateVector, UnknownQubit};
pub use teleport::{
    correction_lookup, run_protocol, BellOutcome, CharlieOutcome, Correction, ProtocolKind, ProtocolReport, ProtocolRun,
};
