//! Numerical machinery for the Koebe covering problem restricted to
//! univalent polynomials of a fixed degree.
//!
//! The crate is split by concern:
//!
//! * [`chebyshev`]: Chebyshev polynomials of the second kind and the node
//!   parameter `c_N = cos(pi/(N+2))`.
//! * [`poly`]: normalized real polynomials `z + a_2 z^2 + ... + a_N z^N`, the
//!   Suffridge family `q_N`, the family `p_N`, reflections and the Koebe
//!   function.
//! * [`circle`]: the minimum modulus of a polynomial on the unit circle, the
//!   real-crossing functional `mu`, and boundary-curve sampling.
//! * [`cubic`]: the exact theory for real cubics: the univalence region, its
//!   boundary arcs, Type I/II classification and the extremal scan.
//! * [`univalence`]: a numerical univalence verifier for arbitrary
//!   normalized polynomials.

pub mod chebyshev;
pub mod circle;
pub mod cubic;
mod error;
pub mod poly;
pub mod univalence;

pub use error::{Error, Result};
pub use num_complex::Complex64;
