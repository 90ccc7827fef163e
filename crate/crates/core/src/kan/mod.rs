//! Functors on finite linear categories, natural transformations, and Kan extensions as (co)ends.

mod category;
mod extension;
mod functor;

use thiserror::Error;

pub use category::{all_non_identity, Cat, IdentityFunctor, LinearCategory, LinearFunctor, Morphism, Opposite, Product};
pub use extension::{
    left_kan, left_kan_adjunct, left_kan_map, left_kan_objects, left_kan_unit, nat_hom, right_kan, right_kan_adjunct, right_kan_counit,
    right_kan_map, tensor_over, LeftKan, NatGroup, RightKan, TensorOver,
};
pub use functor::{
    check_functor, dual_functor, dual_transformation, external_tensor, external_tensor_map, precompose, whisker, DiagramFunctor,
    FunctorReport, NatTrans,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KanError {
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("map is not well defined on the presentation")]
    NotWellDefined,
}
