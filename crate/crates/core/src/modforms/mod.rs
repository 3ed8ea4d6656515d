//! Elliptic cusp forms of level 1, 2 and 4.

pub mod hecke;
pub mod linalg;
pub mod poly;
pub mod qseries;
pub mod spaces;

pub use hecke::{hecke_eigen, NewformSystem};
pub use qseries::{eta_quotient, QSeries};
pub use spaces::{cusp_basis, dim_cusp, dim_new, full_trace, new_trace, sign_trace};
