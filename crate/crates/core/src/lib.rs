//! Carlson's symmetric elliptic integrals with certified asymptotic enclosures.

pub mod asym;
pub mod bounds;
pub mod dispatch;
pub mod error;
pub mod harness;
pub mod means;
pub mod oracle;
pub mod reference;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;
pub use asym::{approx, theta_recover, CaseId, FuncKind};
pub use dispatch::{evaluate, plan, EvalReport, EvalRequest, Method};
pub use reference::{legendre_e, legendre_k, rc, rc_pv, rd, rf, rg, rj, rj_pv};

pub type Enclosure64 = asym::Enclosure<f64>;
pub type Recovered64 = asym::Recovered<f64>;
pub type Bracket64 = bounds::Bracket<f64>;
pub type Quad64 = oracle::Quad<f64>;
