//! Group modules, based permutation-sign modules and equivariant Hom.

mod based;
mod hom;
mod module;

pub use based::{
    augmentation, boundary, contracting_homotopy, retuple, BasedMap, BasedModule, Chain, Characteristic, Family,
    Orbit, OrbitDecomposition, Transport,
};
pub use hom::{equivariant_hom, hom_differential, pullback, HomSpace};
pub use module::{coefficient_module, GModule, ModuleSpec};
