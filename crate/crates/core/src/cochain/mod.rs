//! The cochain complexes `C, NC, K, NK, CS, KS, K_λ, C_λ` and the δ-complex,
//! with the maps between them.
//!
//! Homogeneous complexes are `Hom_G(F_{*+1}, M)` for a based resolution `F`;
//! inhomogeneous ones are subcomplexes of the explicit complex `C`.

mod classical;
mod complex;
mod resolution;

pub use classical::{
    c_lambda_by_intersection, c_lambda_by_psi, classical_c, normalized_nc, psi_chain_map, psi_into_c, symmetric_cs,
    tau_matrix,
};
pub use complex::{ChainMap, CochainComplex, Kind};
pub use resolution::{
    antisymmetric_ks, delta_hom_complex, exterior_k_lambda, homogeneous_k, normalized_nk, pullback_chain_map,
    resolution_complex, splitting_maps, BuiltComplex, Resolution, Splitting,
};
