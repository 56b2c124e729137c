//! Lieb-Robinson diagnostics for a disordered XY chain with periodic ZZ defects.

pub mod bounds;
pub mod error;
pub mod evolution;
pub mod hamiltonians;
pub mod identities;
pub mod induction;
pub mod linalg;
pub mod metrics;
pub mod pauli;
pub mod sector;

pub use bounds::{BaseDynamics, BoundId, Perturbation};
pub use error::{Error, Result};
pub use evolution::{IntegratorOptions, Method, Propagator};
pub use induction::{BondFamily, InductionRow};
pub use hamiltonians::{ChainParams, DisorderRealization, TimeDependentHamiltonian, Waveform};
pub use linalg::{DenseMatrix, C64};
pub use metrics::{AndersonFit, BoundCurve, MeasuredCurve, SupportGeometry};
pub use pauli::{Axis, Chain, PauliString, Phase, SpinOperator};
pub use sector::{BlockDiag, Partition};
