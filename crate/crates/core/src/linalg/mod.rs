//! Exact integer linear algebra over finitely generated abelian groups.

mod abgroup;
mod int;
mod matrix;
mod smith;
mod sparse;

pub use abgroup::{hom_group, subquotient, tensor, AbHom, Cokernel, FgAbGroup, HomGroup, Kernel, LinalgError, Solver, Subquotient, Tensor};
pub use int::Int;
pub use matrix::IntMatrix;
pub use smith::{invariant_factors, smith, smith_normal_form, Smith, Track};
pub use sparse::{integer_kernel, reduce_presentation, Reduction, SVec};
