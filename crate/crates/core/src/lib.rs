//! Exact computations for gentle algebras: strings and bands, homological
//! invariants, irreducible components of module varieties, triangulated
//! surfaces and the Laurent polynomials attached to laminations.

pub mod blocks;
pub mod catalog;
pub mod cluster;
pub mod decompose;
pub mod error;
pub mod ffgrass;
pub mod homological;
pub mod io;
pub mod laurent;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod rep;
pub mod schemes;
pub mod surface;
pub mod words;

pub use error::{Error, Result};
pub use rational::Q;
