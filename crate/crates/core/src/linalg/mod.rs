//! Small sparse toolkit: CSR storage, reverse Cuthill–McKee ordering, banded
//! LU with partial pivoting, and a direct solver that condenses a diagonal
//! block before factoring the rest.

mod band;
mod csr;
mod rcm;
mod sparse_lu;

pub use band::BandLu;
pub use csr::CsrMatrix;
pub use rcm::reverse_cuthill_mckee;
pub use sparse_lu::SparseLu;
