//! High-precision radial limits, asymptotic expansions and oscillation
//! analysis for unilateral series `sum_{n>=0} C(n) q^{s(n)}` with periodic
//! coefficients `C` and a polynomial or exponential exponent `s`.

pub mod cli;
pub mod error;
pub mod euler_maclaurin;
pub mod lacunary;
pub mod numeric;
pub mod poly;
pub mod qintegral;
pub mod radial;
pub mod series;

pub use error::{Error, Result};
