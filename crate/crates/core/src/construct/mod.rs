//! Builders for concrete hyperrings and the maps between them.

mod hom;
mod localize;
mod monomial;
mod product;
mod quotient;
mod ra;

pub use hom::GoodHomomorphism;
pub use localize::{localize, Closure, LocalizationMode, LocalizeOptions, LocalizedRing};
pub use monomial::{MonomialIdeal, MonomialRing};
pub use product::{product_hyperring, ProductLayout, ProductRing, DEFAULT_PRODUCT_CAP};
pub use quotient::{quotient_hyperring, QuotientRing};
pub use ra::{build_ra, unit_inverse, RaSpec};
