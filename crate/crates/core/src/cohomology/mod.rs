//! Equivariant Frobenius traces and the formulas that predict them.

pub mod calibrate;
pub mod formulas;
pub mod harder;
pub mod motive;
pub mod report;
pub mod slopes;
pub mod tables;
pub mod trace;
