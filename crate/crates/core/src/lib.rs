//! Frobenius traces of local systems on the moduli of abelian surfaces with
//! level-2 structure, by exhaustive curve counting over small finite fields.

pub mod census;
pub mod error;
pub mod ffield;
pub mod modforms;
pub mod partition;
pub mod symfunc;
pub mod cohomology;
