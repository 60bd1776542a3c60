//! Exact symbolic engine for the Boson-Fermion correspondence.
//!
//! - [`ealgebra`]: the algebra generated by `K1, Km1, E, F`, its rewriting
//!   normal form, and the Clifford generators `P_i`, `Q_i` inside it.
//! - [`fermion`], [`boson`]: the Fermionic and Bosonic Fock spaces.
//! - [`modules`], [`correspondence`]: module handles and the functors between
//!   Clifford, shift-algebra and Heisenberg modules.
//! - [`characters`]: truncated `(q, t)` series, Göttsche's product and Fock characters.
//! - [`dsl`]: a small operator-expression language.
//!
//! All arithmetic is exact over `Q`.

pub mod boson;
pub mod characters;
pub mod correspondence;
pub mod dsl;
pub mod ealgebra;
pub mod error;
pub mod fermion;
pub mod linalg;
pub mod lincomb;
pub mod modules;
pub mod report;
pub mod scalar;
pub mod states;
pub mod suites;

pub use ealgebra::{AlgElement, Generator, NormalForm, Word};
pub use error::{Error, Result};
pub use lincomb::{Basis, LinComb};
pub use modules::{CModule, EModule, HModule, State};
pub use report::Report;
pub use scalar::Scalar;
pub use states::{BosonMonomial, BosonState, FermionState, Partition, WedgeMonomial};
