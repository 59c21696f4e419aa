pub mod adapted;
pub mod forms;

pub use adapted::{adapted_basis, AdaptedBasis};
pub use forms::{commutator_matrix, reduced_commutator_matrix, LinearFormMatrix, ReducedForms};
