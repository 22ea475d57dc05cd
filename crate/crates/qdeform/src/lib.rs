//! Explicit separable deformations of the group algebras of generalized
//! quaternion and dihedral 2-groups over fields of characteristic 2, together
//! with machine-checked certificates for every identity the construction
//! rests on.
//!
//! The pipeline works in `k((t))` for `k = GF(2^s)`, builds the deformed
//! cyclic algebra `k((t))[x]/(pi_t)`, its order-2 twisting automorphism, the
//! central quadratic relation in the skew polynomial ring, and finally the
//! deformed algebras themselves. Every step is verified to an explicit t-adic
//! precision and recorded in a certificate, including the simple-component
//! dimension vector over the algebraic closure.
//!
//! The `parallel` feature (on by default) runs the data-parallel inner loops
//! on rayon; without it everything falls back to sequential iteration.

pub mod error;
pub mod finite_field;
pub mod laurent;
pub mod polyring;
pub(crate) mod par;
pub mod quotient_algebra;
pub mod group_reference;
pub mod skew_quotient;
pub mod certificate;
pub mod pipeline;

pub use error::{Error, Result};
