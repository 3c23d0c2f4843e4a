//! Berman codes `D_n(r,m)` and dual Berman codes `C_n(r,m)`.
//!
//! The dual Berman family is an `n`-ary generalization of Reed-Muller codes
//! built with an `n`-block Plotkin-style recursion; for `n = 2` it is exactly
//! `RM(r,m)`. The crate provides:
//!
//! - [`gf2`]: bit-packed GF(2) vectors and matrices (RREF, null space, Kronecker powers).
//! - [`coords`]: the colexicographic coordinate indexing of `[n]^m` and the containment order.
//! - [`code`]: parameters, generator matrices, patterned bases, membership and encoding.
//! - [`decode`]: recursive bounded-distance decoders and a brute-force oracle.
//! - [`symmetry`]: automorphisms, puncturing, weight-class orbits.
//! - [`rates`]: exact rates, Gaussian approximations and rate-change bounds.
//! - [`dft`]: the transform-domain construction over `F_2[G^m]` for odd-order abelian `G`.
//! - [`bec`]: erasure decoding and EXIT-function estimation on the binary erasure channel.
//! - [`numfmt`]: significant-digit formatting shared by the reports.

pub mod bec;
pub mod code;
pub mod coords;
pub mod decode;
pub mod dft;
pub mod error;
pub mod gf2;
pub mod numfmt;
pub mod rates;
pub mod symmetry;

pub use code::{CodeParameters, CodeSpec, Family};
pub use coords::{CoordSpace, CoordTuple};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
