//! Plane quartics and a hyperelliptic curve with isomorphic unpolarized
//! Jacobians, built from CM data of `Q(sqrt(-m))` for even squarefree `m`.

pub mod error;
pub mod latticecert;
pub mod algnum;
pub mod classpoly;
pub mod curvefam;
pub mod quartic_iso;
pub mod realball;
pub mod report;

pub use error::{Error, Result};
