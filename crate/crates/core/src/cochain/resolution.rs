//! Complexes `Hom_G(F_{*+1}, M)` for the four based resolutions of `Z`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::gmod::{boundary, equivariant_hom, hom_differential, pullback, retuple, BasedModule, Family, GModule, HomSpace};
use crate::zmod::{AbHom, Embedded, IntMatrix, PresentedAb};

use super::complex::{ChainMap, CochainComplex, Kind};

/// The resolution `F_1 ← F_2 ← ...` behind a homogeneous complex, with the
/// Hom spaces `Hom_G(F_{n+1}, M)` for `n = 0..=N+1`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub family: Family,
    pub modules: Vec<BasedModule>,
    pub homs: Vec<HomSpace>,
}

impl Resolution {
    /// `F_{n+1}`, the module whose Hom gives cochains of degree `n`.
    pub fn based(&self, n: usize) -> &BasedModule {
        &self.modules[n]
    }
}

/// A complex together with how it was built: from a resolution, as a
/// subcomplex of a bigger one, or both (as for `NK ⊂ K`).
#[derive(Clone, Debug)]
pub struct BuiltComplex {
    pub complex: CochainComplex,
    pub module: GModule,
    pub resolution: Option<Arc<Resolution>>,
    /// `subgroups[n] ⊂` degree `n` of the parent complex (`K` for `NK`, `C` for the classical subcomplexes).
    pub subgroups: Option<Vec<Embedded>>,
}

impl BuiltComplex {
    pub fn kind(&self) -> Kind {
        self.complex.kind()
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }
}

fn family_of(kind: Kind) -> Option<Family> {
    match kind {
        Kind::K => Some(Family::Tensor),
        Kind::KS => Some(Family::TildeExterior),
        Kind::KLambda => Some(Family::Exterior),
        Kind::DeltaHom => Some(Family::Delta),
        _ => None,
    }
}

/// `Hom_G(F_{*+1}, M)` for the family belonging to `kind`, in degrees `0..=max_degree`.
pub fn resolution_complex(kind: Kind, module: &GModule, max_degree: usize, limits: &Limits) -> Result<BuiltComplex> {
    let family = family_of(kind)
        .ok_or_else(|| Error::Mismatch(format!("{} is not built from a resolution", kind.label())))?;
    let group = module.group();
    // sequential so the first guard violation reported is always the smallest
    let modules: Vec<BasedModule> = (1..=max_degree + 2)
        .map(|k| BasedModule::build(family, group, k, limits))
        .collect::<Result<_>>()?;
    let homs: Vec<HomSpace> = modules.par_iter().map(|f| equivariant_hom(f, module)).collect::<Result<_>>()?;
    let diffs: Vec<AbHom> = (0..=max_degree)
        .into_par_iter()
        .map(|n| hom_differential(&boundary(&modules[n + 1], &modules[n])?, &homs[n + 1], &homs[n]))
        .collect::<Result<_>>()?;
    let groups = homs.iter().map(|h| h.group().clone()).collect();
    let complex = CochainComplex::new(kind, groups, diffs)?;
    let resolution = Some(Arc::new(Resolution { family, modules, homs }));
    Ok(BuiltComplex { complex, module: module.clone(), resolution, subgroups: None })
}

/// The homogeneous complex `K^n = Hom_G(Z[G^{n+1}], M)`.
pub fn homogeneous_k(module: &GModule, max_degree: usize, limits: &Limits) -> Result<BuiltComplex> {
    resolution_complex(Kind::K, module, max_degree, limits)
}

/// `KS^n = Hom_G(Λ~^{n+1} Z[G], M)`, the antisymmetric homogeneous cochains.
pub fn antisymmetric_ks(module: &GModule, max_degree: usize, limits: &Limits) -> Result<BuiltComplex> {
    resolution_complex(Kind::KS, module, max_degree, limits)
}

/// `K_λ^n = Hom_G(Λ^{n+1} Z[G], M)`; zero from degree `|G|` on.
pub fn exterior_k_lambda(module: &GModule, max_degree: usize, limits: &Limits) -> Result<BuiltComplex> {
    resolution_complex(Kind::KLambda, module, max_degree, limits)
}

/// `Hom_G(Δ^{n+1} Z[G], M)`.
pub fn delta_hom_complex(module: &GModule, max_degree: usize, limits: &Limits) -> Result<BuiltComplex> {
    resolution_complex(Kind::DeltaHom, module, max_degree, limits)
}

/// `NK ⊂ K`: maps vanishing on tuples with two equal neighbours.
pub fn normalized_nk(k: &BuiltComplex) -> Result<BuiltComplex> {
    let res = match (k.kind(), &k.resolution) {
        (Kind::K, Some(r)) => Arc::clone(r),
        _ => return Err(Error::Mismatch("normalized cochains need the homogeneous complex".into())),
    };
    let subs: Vec<Embedded> = res
        .homs
        .iter()
        .zip(&res.modules)
        .map(|(hom, f)| {
            let keep: Vec<usize> = hom
                .decomposition()
                .orbits
                .iter()
                .enumerate()
                .filter(|(_, o)| f.tuple(o.rep).windows(2).all(|w| w[0] != w[1]))
                .map(|(i, _)| i)
                .collect();
            select_orbits(hom, &keep)
        })
        .collect();
    let (complex, _) = k.complex.restrict(Kind::NK, &subs)?;
    Ok(BuiltComplex { complex, module: k.module.clone(), resolution: Some(res), subgroups: Some(subs) })
}

/// The summand of a Hom space spanned by the given orbits.
fn select_orbits(hom: &HomSpace, orbits: &[usize]) -> Embedded {
    let ambient = hom.group().clone();
    let parts: Vec<PresentedAb> = orbits.iter().map(|&o| hom.orbit_values(o).group.clone()).collect();
    let group = PresentedAb::direct_sum(&parts);
    let mut incl = IntMatrix::zeros(ambient.gens(), group.gens());
    let mut col = 0;
    for &o in orbits {
        for r in hom.orbit_columns(o) {
            incl[(r, col)] = crate::zmod::int(1);
            col += 1;
        }
    }
    Embedded::new(group, ambient, incl)
}

/// The chain map `Hom(F, M) → Hom(F', M)` given by precomposing with the
/// canonical maps `F'_{n+1} → F_{n+1}` (see [`retuple`]).
pub fn pullback_chain_map(from: &BuiltComplex, to: &BuiltComplex) -> Result<ChainMap> {
    let (Some(a), Some(b)) = (&from.resolution, &to.resolution) else {
        return Err(Error::Mismatch("pullback maps need complexes built from resolutions".into()));
    };
    if from.subgroups.is_some() || to.subgroups.is_some() {
        return Err(Error::Mismatch("pullback maps are defined on full Hom complexes".into()));
    }
    if from.module.group() != to.module.group() || from.module.label() != to.module.label() {
        return Err(Error::Mismatch("complexes over different coefficients".into()));
    }
    let top = from.top_degree().min(to.top_degree());
    let maps: Vec<AbHom> = (0..=top + 1)
        .into_par_iter()
        .map(|n| pullback(&retuple(&b.modules[n], &a.modules[n])?, &b.homs[n], &a.homs[n]))
        .collect::<Result<_>>()?;
    Ok(ChainMap { label: format!("{}→{}", from.kind().label(), to.kind().label()), maps })
}

/// The three maps relating `KS`, `K_λ` and the δ-complex.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// `KS → K_λ`, restriction to the strict tuples.
    pub to_lambda: ChainMap,
    /// `KS → Δ-hom`, restriction to the repeated tuples.
    pub to_delta: ChainMap,
    /// `K_λ → KS`, extension by zero on repeated tuples.
    pub section: ChainMap,
    /// `Δ-hom → KS`, extension by zero on strict tuples.
    pub delta_section: ChainMap,
}

pub fn splitting_maps(ks: &BuiltComplex, k_lambda: &BuiltComplex, delta: &BuiltComplex) -> Result<Splitting> {
    if ks.kind() != Kind::KS || k_lambda.kind() != Kind::KLambda || delta.kind() != Kind::DeltaHom {
        return Err(Error::Mismatch("splitting needs KS, K_λ and the δ-complex".into()));
    }
    Ok(Splitting {
        to_lambda: pullback_chain_map(ks, k_lambda)?,
        to_delta: pullback_chain_map(ks, delta)?,
        section: pullback_chain_map(k_lambda, ks)?,
        delta_section: pullback_chain_map(delta, ks)?,
    })
}

impl Splitting {
    /// `to_lambda ∘ section = id`, `to_delta ∘ delta_section = id`, and the two
    /// projections jointly injective, in every degree.
    pub fn verify(&self) -> Result<()> {
        let n = self.section.maps.len().min(self.to_lambda.maps.len());
        for d in 0..n {
            let a = self.to_lambda.maps[d].compose(&self.section.maps[d])?;
            if !a.equals(&AbHom::identity(a.source())) {
                return Err(Error::NotChainMap(format!("projection ∘ section ≠ id in degree {d}")));
            }
            let b = self.to_delta.maps[d].compose(&self.delta_section.maps[d])?;
            if !b.equals(&AbHom::identity(b.source())) {
                return Err(Error::NotChainMap(format!("δ-projection ∘ δ-section ≠ id in degree {d}")));
            }
            let both = stack_maps(&self.to_lambda.maps[d], &self.to_delta.maps[d]);
            if !both.is_injective() {
                return Err(Error::NotChainMap(format!("projections not jointly injective in degree {d}")));
            }
        }
        Ok(())
    }
}

/// `x ↦ (f x, g x)`.
fn stack_maps(f: &AbHom, g: &AbHom) -> AbHom {
    let target = PresentedAb::direct_sum(&[f.target().clone(), g.target().clone()]);
    AbHom::new_unchecked(f.source().clone(), target, f.matrix().vstack(g.matrix()))
}
