//! Exact Hochschild, cyclic and operadic computations.
//!
//! The crate is organised bottom-up: [`exact_linalg`] provides rational
//! linear algebra, [`algebra_core`] the input algebras, [`hochschild`] and
//! [`cyclic`] the chain-level complexes, [`calculus`] the chain/cochain
//! pairings, [`operads`] free operads and Koszul duality, [`formality_aux`]
//! Drinfeld–Kohno Lie algebras and zeta series, [`moyal`] the star product,
//! and [`cli`] the command-line surface.

pub mod algebra_core;
pub mod calculus;
pub mod cli;
pub mod cyclic;
pub mod error;
pub mod exact_linalg;
pub mod formality_aux;
pub mod hochschild;
pub mod moyal;
pub mod operads;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
