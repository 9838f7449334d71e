//! Reference evaluation of the symmetric integrals.
//!
//! `rf`, `rd`, `rj` use Carlson's duplication algorithm, `rc` its closed
//! forms, and `rg` is assembled from `rf` and `rd`. Symmetric arguments are
//! sorted before evaluation, so permuting them gives bit-identical results.
//! The quadrature in [`crate::oracle`] is the independent check on all of
//! these.

mod args;
mod carlson;
mod legendre;
mod pv;

pub use args::{Sym3Args, Sym4Args};
pub(crate) use args::sort3 as args_sorted;
pub use carlson::{rc, rd, rf, rg, rj};
pub use legendre::{agm, legendre_e, legendre_e_prime, legendre_k, legendre_k_prime, r_minus1};
pub use pv::{rc_pv, rj_pv};

/// Relative accuracy the reference evaluators are certified to in `f64`.
///
/// Requests tighter than this are refused by the dispatcher.
pub const REFERENCE_REL_ERR: f64 = 1e-14;
