//! `Hom_G(F, M)` for a based module `F`, computed orbit by orbit.
//!
//! An equivariant map is determined by its values on orbit representatives;
//! the value on a representative with stabilizer `H` and sign character `χ`
//! ranges over `{m ∈ M : h·m = χ(h) m for h ∈ H}`, intersected with the
//! 2-torsion of `M` when the representative has characteristic two.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::zmod::{int, AbHom, Embedded, IntMatrix, PresentedAb};

use super::based::{BasedMap, BasedModule, Characteristic, OrbitDecomposition};
use super::module::GModule;

#[derive(Clone, Debug)]
struct Piece {
    offset: usize,
    values: Arc<Embedded>,
}

/// `Hom_G(F, M)` as a presented group, one block per orbit of `F`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    group: PresentedAb,
    pieces: Vec<Piece>,
    decomposition: OrbitDecomposition,
    module: GModule,
}

type ValueKey = (Vec<(usize, i8)>, Characteristic);

impl HomSpace {
    pub fn group(&self) -> &PresentedAb {
        &self.group
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn decomposition(&self) -> &OrbitDecomposition {
        &self.decomposition
    }

    /// The subgroup of `M` where the value on orbit `o`'s representative lives.
    pub fn orbit_values(&self, o: usize) -> &Embedded {
        &self.pieces[o].values
    }

    /// Columns of the group generators that belong to orbit `o`.
    pub fn orbit_columns(&self, o: usize) -> std::ops::Range<usize> {
        let p = &self.pieces[o];
        p.offset..p.offset + p.values.group.gens()
    }

    /// `m × gens` matrix giving `f(e_b)` in carrier coordinates of `M`.
    pub fn evaluation_matrix(&self, b: usize) -> IntMatrix {
        let t = self.decomposition.transport[b];
        let piece = &self.pieces[t.orbit];
        let m = self.module.carrier().gens();
        let block = self.module.action(t.element).mul(&piece.values.incl).scale(&int(t.sign));
        let mut out = IntMatrix::zeros(m, self.group.gens());
        for i in 0..m {
            for j in 0..block.cols() {
                out[(i, piece.offset + j)] = block[(i, j)].clone();
            }
        }
        out
    }

    /// `out[row_offset..] += c · evaluation_matrix(b)` without materializing the full matrix.
    pub(crate) fn accumulate_evaluation(&self, out: &mut IntMatrix, row_offset: usize, b: usize, c: i64) {
        let t = self.decomposition.transport[b];
        let piece = &self.pieces[t.orbit];
        let block = self.module.action(t.element).mul(&piece.values.incl);
        let s = int(t.sign * c);
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                out[(row_offset + i, piece.offset + j)] += &block[(i, j)] * &s;
            }
        }
    }

    /// `f(e_b)` for the element `x` of this group.
    pub fn evaluate(&self, x: &[crate::zmod::Int], b: usize) -> Vec<crate::zmod::Int> {
        self.evaluation_matrix(b).mul_vec(x)
    }
}

/// Computes `Hom_G(F, M)` via orbit decomposition of `F`.
pub fn equivariant_hom(f: &BasedModule, module: &GModule) -> Result<HomSpace> {
    if f.group() != module.group() {
        return Err(Error::Mismatch("based module and coefficients over different groups".into()));
    }
    let decomposition = f.orbit_decomposition();
    let mut cache: HashMap<ValueKey, Arc<Embedded>> = HashMap::new();
    let mut pieces = Vec::with_capacity(decomposition.orbits.len());
    let mut offset = 0;
    let mut parts = Vec::with_capacity(decomposition.orbits.len());
    for orbit in &decomposition.orbits {
        let key: ValueKey = (
            orbit.stabilizer.elements().iter().copied().zip(orbit.character.iter().copied()).collect(),
            orbit.characteristic,
        );
        let values = cache
            .entry(key)
            .or_insert_with_key(|(stab, chr)| Arc::new(value_subgroup(module, stab, *chr)))
            .clone();
        parts.push(values.group.clone());
        let gens = values.group.gens();
        pieces.push(Piece { offset, values });
        offset += gens;
    }
    Ok(HomSpace { group: PresentedAb::direct_sum(&parts), pieces, decomposition, module: module.clone() })
}

/// `{m : h·m = χ(h) m for all (h, χ(h))}`, also `2m = 0` in characteristic two.
fn value_subgroup(module: &GModule, stab: &[(usize, i8)], chr: Characteristic) -> Embedded {
    let carrier = module.carrier();
    let m = carrier.gens();
    let mut blocks = Vec::new();
    for &(h, s) in stab {
        if h == 0 {
            continue;
        }
        blocks.push(module.action(h).sub(&IntMatrix::scalar(m, &int(s as i64))));
    }
    if chr == Characteristic::Two {
        blocks.push(IntMatrix::scalar(m, &int(2)));
    }
    if blocks.is_empty() {
        return Embedded::new(carrier.clone(), carrier.clone(), IntMatrix::identity(m));
    }
    let constraint = IntMatrix::vstack_all(m, &blocks);
    let target = PresentedAb::direct_sum(&vec![carrier.clone(); blocks.len()]);
    AbHom::new_unchecked(carrier.clone(), target, constraint).kernel()
}

/// `φ ↦ φ ∘ f` from `Hom_G(F', M)` to `Hom_G(F, M)` for an equivariant `f: F → F'`.
pub fn pullback(f: &BasedMap, source_hom: &HomSpace, target_hom: &HomSpace) -> Result<AbHom> {
    // source_hom = Hom(F, M), target_hom = Hom(F', M); the result goes Hom(F', M) → Hom(F, M).
    if f.source_len != source_hom.decomposition.transport.len()
        || f.target_len != target_hom.decomposition.transport.len()
    {
        return Err(Error::Mismatch("based map does not match the Hom spaces".into()));
    }
    let m = source_hom.module.carrier().gens();
    let cols = target_hom.group.gens();
    let mut blocks = Vec::with_capacity(source_hom.pieces.len());
    for (o, orbit) in source_hom.decomposition.orbits.iter().enumerate() {
        let mut value = IntMatrix::zeros(m, cols);
        for &(b, c) in &f.columns[orbit.rep] {
            target_hom.accumulate_evaluation(&mut value, 0, b, c);
        }
        let coords = source_hom.pieces[o]
            .values
            .coords_matrix(&value)
            .ok_or_else(|| Error::NotChainMap(format!("pulled-back value on orbit {o} is not invariant")))?;
        blocks.push(coords);
    }
    let matrix = IntMatrix::vstack_all(cols, &blocks);
    Ok(AbHom::new_unchecked(target_hom.group.clone(), source_hom.group.clone(), matrix))
}

/// Cochain differential `Hom_G(F_n, M) → Hom_G(F_{n+1}, M)` induced by `∂: F_{n+1} → F_n`.
pub fn hom_differential(boundary: &BasedMap, upper: &HomSpace, lower: &HomSpace) -> Result<AbHom> {
    pullback(boundary, upper, lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::gmod::based::boundary;
    use crate::grp::Group;
    use crate::zmod::Invariants;

    fn grp(spec: &str) -> Arc<Group> {
        Arc::new(Group::parse_spec(spec).unwrap())
    }

    /// All equivariant maps basis → M, as the kernel of the equivariance
    /// constraints on `M^basis`.
    fn brute_force_hom(f: &BasedModule, module: &GModule) -> Invariants {
        let carrier = module.carrier();
        let m = carrier.gens();
        let nb = f.len();
        let source = PresentedAb::direct_sum(&vec![carrier.clone(); nb]);
        let mut rows = Vec::new();
        for g in 0..f.group().order() {
            for b in 0..nb {
                let (b2, s) = f.act(g, b);
                // s f(b2) − g f(b) = 0
                let mut block = IntMatrix::zeros(m, nb * m);
                for i in 0..m {
                    block[(i, b2 * m + i)] += int(s);
                    for j in 0..m {
                        block[(i, b * m + j)] -= module.action(g)[(i, j)].clone();
                    }
                }
                rows.push(block);
            }
        }
        for b in 0..nb {
            if f.characteristic(b) == Characteristic::Two {
                let mut block = IntMatrix::zeros(m, nb * m);
                for i in 0..m {
                    block[(i, b * m + i)] = int(2);
                }
                rows.push(block);
            }
        }
        let constraint = IntMatrix::vstack_all(nb * m, &rows);
        let target = PresentedAb::direct_sum(&vec![carrier.clone(); rows.len()]);
        AbHom::new_unchecked(source, target, constraint).kernel().group.invariant_factors()
    }

    #[test]
    fn lambda_two_of_c2() {
        let g = grp("C2");
        let l2 = BasedModule::exterior_power(&g, 2, &Limits::default()).unwrap();
        let z = GModule::trivial_integers(&g);
        assert!(equivariant_hom(&l2, &z).unwrap().group().is_trivial());
        let zs = GModule::sign(&g).unwrap();
        assert_eq!(equivariant_hom(&l2, &zs).unwrap().group().invariant_factors(), Invariants::new(1, &[]));
        let t1 = BasedModule::tensor_power(&g, 1, &Limits::default()).unwrap();
        let z4 = GModule::trivial_cyclic(&g, 4);
        assert_eq!(equivariant_hom(&t1, &z4).unwrap().group().invariant_factors(), Invariants::new(0, &[4]));
    }

    #[test]
    fn differential_on_lambda_of_c2_vanishes_mod_two() {
        let g = grp("C2");
        let lim = Limits::default();
        let l1 = BasedModule::exterior_power(&g, 1, &lim).unwrap();
        let l2 = BasedModule::exterior_power(&g, 2, &lim).unwrap();
        let f2 = GModule::trivial_cyclic(&g, 2);
        let h1 = equivariant_hom(&l1, &f2).unwrap();
        let h2 = equivariant_hom(&l2, &f2).unwrap();
        assert_eq!(h1.group().invariant_factors(), Invariants::new(0, &[2]));
        assert_eq!(h2.group().invariant_factors(), Invariants::new(0, &[2]));
        let d = hom_differential(&boundary(&l2, &l1).unwrap(), &h2, &h1).unwrap();
        assert!(d.is_zero());
        let zero = BasedMap { source_len: l2.len(), target_len: l1.len(), columns: vec![vec![]; l2.len()] };
        assert!(hom_differential(&zero, &h2, &h1).unwrap().is_zero());
    }

    #[test]
    fn consecutive_differentials_compose_to_zero() {
        let g = grp("C3");
        let lim = Limits::default();
        let z3 = GModule::trivial_cyclic(&g, 3);
        let t: Vec<BasedModule> = (1..=4).map(|n| BasedModule::tensor_power(&g, n, &lim).unwrap()).collect();
        let h: Vec<HomSpace> = t.iter().map(|f| equivariant_hom(f, &z3).unwrap()).collect();
        for n in 0..2 {
            let d0 = hom_differential(&boundary(&t[n + 1], &t[n]).unwrap(), &h[n + 1], &h[n]).unwrap();
            let d1 = hom_differential(&boundary(&t[n + 2], &t[n + 1]).unwrap(), &h[n + 2], &h[n + 1]).unwrap();
            assert!(d1.compose(&d0).unwrap().is_zero());
        }
    }

    #[test]
    fn orbit_route_matches_brute_force() {
        let lim = Limits::default();
        for spec in ["C2", "C3", "C4", "C2xC2", "S3"] {
            let g = grp(spec);
            let mut modules = vec![
                GModule::trivial_integers(&g),
                GModule::trivial_cyclic(&g, 2),
                GModule::trivial_cyclic(&g, 4),
            ];
            if let Ok(s) = GModule::sign(&g) {
                modules.push(s);
            }
            if g.order() <= 3 {
                modules.push(GModule::group_ring(&g));
            }
            for module in &modules {
                for family in [
                    crate::gmod::Family::Tensor,
                    crate::gmod::Family::Exterior,
                    crate::gmod::Family::Delta,
                    crate::gmod::Family::TildeExterior,
                ] {
                    for n in 1..=3 {
                        let f = BasedModule::build(family, &g, n, &lim).unwrap();
                        if f.len() * module.carrier().gens() > 64 {
                            continue;
                        }
                        let orbit = equivariant_hom(&f, module).unwrap().group().invariant_factors();
                        assert_eq!(orbit, brute_force_hom(&f, module), "{spec} {} {family:?} {n}", module.label());
                    }
                }
            }
        }
    }

    #[test]
    fn group_mismatch_rejected() {
        let lim = Limits::default();
        let f = BasedModule::tensor_power(&grp("C2"), 1, &lim).unwrap();
        let m = GModule::trivial_integers(&grp("C3"));
        assert!(equivariant_hom(&f, &m).is_err());
    }
}
