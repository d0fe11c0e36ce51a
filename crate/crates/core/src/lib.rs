//! Bounds, code surgeries, explicit constructions and an exhaustive-search
//! oracle for the minimum length of systematic nonlinear codes.

pub mod bounds;
pub mod code;
pub mod constructions;
pub mod error;
pub mod gf2x;
pub mod io;
pub mod search;
pub mod transforms;

pub use code::{Code, CodeParams, SystematicCheck, SystematicCode};
pub use error::{Error, Result};
