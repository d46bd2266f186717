//! Growth rates of free-group automorphisms and the algebraic entropy of
//! their action on the SL₂ character variety of the free group of rank two.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`] and [`automorphism`]: exact free-group arithmetic and the
//!   automorphism file format.
//! * [`growth`]: cyclically reduced word growth and the abelianization
//!   eigenvalue bound.
//! * [`poly`] and [`trace`]: sparse integer polynomials and the Fricke trace
//!   engine in coordinates `(x, y, z) = (tr X, tr Y, tr XY)`.
//! * [`dynamics`]: induced polynomial maps of affine 3-space, their iterates
//!   and degree growth.
//! * [`valuation`] and [`cert`]: p-adic and Gaussian valuations, the
//!   Schottky-type representation and the translation-length certificate.
//!
//! Data-parallel loops (per-seed growth, per-word certification, random
//! trials, polynomial substitution) run on rayon when the `parallel` feature
//! is enabled; see [`ExecMode`].

pub mod automorphism;
pub mod cert;
pub mod degree;
pub mod dynamics;
mod error;
pub mod exec;
pub mod fixtures;
pub mod growth;
pub mod mat2;
pub mod poly;
pub mod rate;
pub mod sample;
pub mod trace;
pub mod valuation;
pub mod word;

pub use automorphism::{Automorphism, AutomorphismFile, Orbit};
pub use error::{Error, Result};
pub use exec::ExecMode;
pub use poly::IntPolynomial;
pub use word::{CanonicalForm, Generator, Word};
