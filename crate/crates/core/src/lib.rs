//! Exact computation in free commutative extended Rota-Baxter algebras.
//!
//! ```
//! use erbalg::base::BaseAlgebraSpec;
//! use erbalg::scalar::RingContext;
//! use erbalg::shuffle::{ErbWeight, ShuffleAlgebra};
//!
//! # fn main() -> erbalg::Result<()> {
//! let ctx = RingContext::weight_ring();
//! let alg = ShuffleAlgebra::new(BaseAlgebraSpec::new(["x"], true)?, ErbWeight::symbolic(&ctx)?);
//! let u = alg.parse("[x|1]")?;
//! let v = alg.parse("[x^2]")?;
//! assert_eq!(alg.render(&alg.diamond(&u, &v)?), "[x^3|1]");
//! # Ok(())
//! # }
//! ```

pub mod base;
pub mod delannoy;
pub mod document;
pub mod error;
pub mod hopf;
pub mod lincomb;
pub mod operators;
pub mod scalar;
pub mod shuffle;
mod text;
pub mod verify;

pub use error::{Error, Result};
