mod dual;
mod ext;
mod resolution;
mod tilting;
mod yoneda;

pub use dual::{koszul_dual, KoszulDual};
pub use ext::{
    cochain_differential, cochain_dim, cochain_to_hom, ext_space, ext_table, ext_table_with, hom_to_cochain, nonzero_window,
    ungraded_ext_dims, ExtSpace, ExtTable,
};
pub use resolution::{projective_resolution, ProjectiveResolution};
pub use tilting::{tilting_module_check, TiltingReport, TiltingVerdict};
pub use yoneda::{lift_cocycle, yoneda_product};
