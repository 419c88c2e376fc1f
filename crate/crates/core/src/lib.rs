//! Geometric quantum discord of a Jaynes-Cummings atom, an isolated atom and
//! a single cavity mode.
//!
//! A two-level atom A exchanges one excitation with a cavity C while a second
//! atom B stays idle; the atoms start in an entangled superposition weighted
//! by a mixing angle α and the cavity in a Fock state |n⟩. On resonance the
//! dynamics have a closed-form solution, which makes every correlation
//! quantity here exactly computable and lets three independent routes be
//! checked against each other:
//!
//! * closed-form expressions for the discord of each bipartition
//!   ([`discord::gqd_ab_closed`] and friends),
//! * the generic qubit-qudit formula tr(S) − λ_max(S) built from the
//!   measured-side Pauli contractions ([`discord::gqd_qubit_qudit`]),
//! * brute-force minimization of the measurement disturbance over the Bloch
//!   sphere ([`discord::gqd_measurement_min`]).
//!
//! All discord values use the normalization in which Bell states score 1.
//! On top of these sit the monogamy residuals ([`monogamy`]) and the power
//! spectrum of the total-system discord ([`spectrum`]).

pub mod discord;
pub mod error;
pub mod matrix;
pub mod model;
pub mod monogamy;
pub mod spectrum;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, DensityMatrix, SubsystemDims};
pub use model::{Amplitudes, CavityBasis, SystemParams};
