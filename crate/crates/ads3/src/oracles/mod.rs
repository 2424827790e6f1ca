//! Independent numerical checks of the identities and inequalities the library relies on.

pub mod fd;
pub mod lemmas;
pub mod quadrature;
pub mod suite;

pub use fd::{fd_ambient_laplacian, laplacian_eigen_check, FdConfig, FdLaplacian};
pub use lemmas::{
    check_coefficient_bound, check_computation_lemma, check_koukou, check_sekoi, fuzz_displacement_inequality,
    CheckOutcome,
};
pub use suite::{run_suite, CheckReport, SELECTORS};
