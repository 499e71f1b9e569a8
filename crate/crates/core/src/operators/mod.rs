//! Set equivariant operators between incarnations, their construction from
//! bases and the standard ways of producing new incarnations from old ones.

mod build;
mod decompose;
mod extend;
mod realize;
mod seo;

pub use build::{change_units_functor, change_units_seo, domain_change_incarnation, restriction};
pub use decompose::{decompose, Decomposition};
pub use extend::{enumerate_geos, extend_from_basis, isotropy, ExtensionVariant};
pub use realize::{find_realization, find_seo_realization, is_realization, is_seo_realization, realization_candidates};
pub use seo::{
    canonical_geo, canonical_seo, equivariance_witness, homomorphism_witness, universal_group_incarnation,
    universal_incarnation, validate_seo, validate_seo_with_realization, Seo,
};
