//! Finite-dimensional algebras concentrated in degree 0: the derived Nakayama functor,
//! higher representation type and higher preprojective algebras.

mod complex;
mod nakayama;
mod nrep;
mod preproj;
mod serre;

pub use complex::{induced_on_cohomology, BoundedComplex, Cohomology};
pub use nakayama::{
    derived_nu_inverse_power, indecomposable_injective, nakayama_hom, nakayama_inverse_on_injectives, nakayama_on_projectives,
    NuOrbit, NuStep, RESOLUTION_CAP,
};
pub use nrep::{is_n_rep_finite, is_n_rep_infinite_upto, CohomologyWitness, NRepMode, NRepReport, NRepVerdict, OrbitRecord};
pub use preproj::preprojective_algebra;
pub use serre::{serre_dimension_identity, SerreRow};
