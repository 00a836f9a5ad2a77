//! Exact computations with graded quantum cluster algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`qcoeff`] and [`torus`]: scalars in `Z[q^{±1/2}]` and quantum tori;
//! * [`seed`]: quantum seeds, mutation, gradings, rescaling and enumeration;
//! * [`qmatrix`]: quantum matrices in PBW normal form, quantum minors and the
//!   localisation at `[1..k]`;
//! * [`gls`]: the initial quantum seed on quantum matrices built from minors;
//! * [`lifting`]: dehomogenisation to the quantum Grassmannian and the
//!   rescaling that turns it into a graded seed on `K_q[Gr(k,n)]`;
//! * [`serial`]: the JSON seed format read and written by the CLI;
//! * [`verify`]: numbered end-to-end checks used by the CLI and the test suite.

pub mod error;
pub mod gls;
pub mod intmat;
pub mod lifting;
pub mod qcoeff;
pub mod qmatrix;
pub mod seed;
pub mod serial;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use qcoeff::QCoeff;
pub use torus::{Torus, TorusElement};
