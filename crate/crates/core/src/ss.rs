//! The first page `E_1^{pq} = Ext^q_{Z[G]}(Λ^{p+1} Z[G], M)` of the spectral
//! sequence comparing exterior and classical cohomology.
//!
//! Each entry splits over the orbits of `G` on the basis of `Λ^{p+1}`. An
//! orbit with stabilizer `H` and sign character `χ` contributes
//! `H^q(H, M_χ)`, where `h` acts on `M_χ` by `χ(h) · (h·m)`. Cyclic
//! stabilizers use the 2-periodic resolution; others use the homogeneous
//! complex of the stabilizer.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{exterior_k_lambda, homogeneous_k, CochainComplex, Kind};
use crate::config::Limits;
use crate::error::Result;
use crate::gmod::{boundary, equivariant_hom, hom_differential, BasedModule, GModule, Orbit};
use crate::grp::{Group, Subgroup};
use crate::zmod::{homology_at, AbHom, IntMatrix, Invariants, PresentedAb};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitInfo {
    pub stab_order: usize,
    /// `"trivial"` or `"sign"`.
    pub character: &'static str,
}

impl OrbitInfo {
    fn of(orbit: &Orbit) -> Self {
        OrbitInfo {
            stab_order: orbit.stabilizer.order(),
            character: if orbit.has_trivial_character() { "trivial" } else { "sign" },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct E1Entry {
    pub p: usize,
    pub q: usize,
    #[serde(flatten)]
    pub invariants: Invariants,
    pub orbits: Vec<OrbitInfo>,
    #[serde(skip)]
    pub group: PresentedAb,
}

#[derive(Clone, Debug, Serialize)]
pub struct E1Page {
    pub group: String,
    pub module: String,
    pub pmax: usize,
    pub qmax: usize,
    pub entries: Vec<E1Entry>,
    pub row0_is_zarelua: bool,
}

impl E1Page {
    pub fn entry(&self, p: usize, q: usize) -> &E1Entry {
        &self.entries[p * (self.qmax + 1) + q]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pages serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,free_rank,torsion,orbits\n");
        for e in &self.entries {
            let torsion: Vec<String> = e.invariants.torsion.iter().map(|t| t.to_string()).collect();
            let orbits: Vec<String> = e.orbits.iter().map(|o| format!("{}:{}", o.stab_order, o.character)).collect();
            let _ = writeln!(out, "{},{},{},{},{}", e.p, e.q, e.invariants.free_rank, torsion.join(";"), orbits.join(";"));
        }
        out
    }

    /// Rows `q = Q..0` from top to bottom, columns `p = 0..P`.
    pub fn to_text(&self) -> String {
        let mut out = format!("E1 page for {} with coefficients in {}\n", self.group, self.module);
        let cells: Vec<Vec<String>> = (0..=self.qmax)
            .map(|q| (0..=self.pmax).map(|p| self.entry(p, q).invariants.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1).max(3);
        for q in (0..=self.qmax).rev() {
            let _ = write!(out, "q={q:<2}|");
            for c in &cells[q] {
                let _ = write!(out, " {c:>width$}");
            }
            out.push('\n');
        }
        let _ = write!(out, "    +");
        for p in 0..=self.pmax {
            let _ = write!(out, " {:>width$}", format!("p={p}"));
        }
        let _ = writeln!(out, "\nrow 0 equals the exterior complex: {}", self.row0_is_zarelua);
        out
    }
}

type StabKey = (Vec<usize>, Vec<i8>);

/// `H^q(H, M_χ)` for `q = 0..=qmax` as presented groups.
pub fn twisted_stabilizer_cohomology(
    module: &GModule,
    stabilizer: &Subgroup,
    character: &[i8],
    qmax: usize,
    limits: &Limits,
) -> Result<Vec<PresentedAb>> {
    let h = Arc::new(module.group().subgroup_as_group(stabilizer));
    let restricted = module.restrict(stabilizer).twist(character)?;
    match cyclic_generator(&h) {
        Some(g) => Ok(periodic_cohomology(&restricted, g, qmax)),
        None => subgroup_cohomology(&restricted, qmax, limits),
    }
}

fn cyclic_generator(h: &Group) -> Option<usize> {
    (0..h.order()).find(|&g| h.element_order(g) == h.order())
}

/// Cohomology of a cyclic group generated by `g` from the periodic resolution:
/// `H^0 = ker(g−1)`, odd degrees `ker N / im(g−1)`, even positive degrees `ker(g−1) / im N`.
pub fn periodic_cohomology(module: &GModule, g: usize, qmax: usize) -> Vec<PresentedAb> {
    let carrier = module.carrier();
    let m = carrier.gens();
    let group = module.group();
    let minus = AbHom::new_unchecked(carrier.clone(), carrier.clone(), module.action(g).sub(&IntMatrix::identity(m)));
    let mut norm = IntMatrix::zeros(m, m);
    for x in 0..group.order() {
        norm = norm.add(module.action(x));
    }
    let norm = AbHom::new_unchecked(carrier.clone(), carrier.clone(), norm);
    let zero_in = AbHom::zero(&PresentedAb::zero(), carrier);
    (0..=qmax)
        .map(|q| {
            let (d_in, d_out) = match q {
                0 => (&zero_in, &minus),
                q if q % 2 == 1 => (&minus, &norm),
                _ => (&norm, &minus),
            };
            homology_at(d_in, d_out).expect("periodic complex").group
        })
        .collect()
}

/// `H^q(H, M)` from the homogeneous complex of `H`.
pub fn subgroup_cohomology(module: &GModule, qmax: usize, limits: &Limits) -> Result<Vec<PresentedAb>> {
    let k = homogeneous_k(module, qmax, limits)?;
    Ok(k.complex.all_homology()?.into_iter().map(|h| h.group).collect())
}

fn sum_invariants(parts: &[PresentedAb]) -> (PresentedAb, Invariants) {
    let sum = PresentedAb::direct_sum(parts);
    let inv = sum.invariant_factors();
    (sum, inv)
}

/// One column `p` of the page, `q = 0..=qmax`.
fn column(module: &GModule, p: usize, qmax: usize, limits: &Limits) -> Result<Vec<E1Entry>> {
    let g = module.group();
    if p + 1 > g.order() {
        return Ok((0..=qmax)
            .map(|q| E1Entry { p, q, invariants: Invariants::zero(), orbits: vec![], group: PresentedAb::zero() })
            .collect());
    }
    let lambda = BasedModule::exterior_power(g, p + 1, limits)?;
    let hom = equivariant_hom(&lambda, module)?;
    let orbits = &hom.decomposition().orbits;
    let info: Vec<OrbitInfo> = orbits.iter().map(OrbitInfo::of).collect();

    let mut keys: Vec<StabKey> = orbits
        .iter()
        .filter(|o| !o.is_free())
        .map(|o| (o.stabilizer.elements().to_vec(), o.character.clone()))
        .collect();
    keys.sort();
    keys.dedup();
    let tables: HashMap<StabKey, Vec<PresentedAb>> = keys
        .into_par_iter()
        .map(|key| {
            let sub = g.subgroup(&key.0)?;
            let t = twisted_stabilizer_cohomology(module, &sub, &key.1, qmax, limits)?;
            Ok((key, t))
        })
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(qmax + 1);
    let group0 = hom.group().clone();
    out.push(E1Entry { p, q: 0, invariants: group0.invariant_factors(), orbits: info.clone(), group: group0 });
    for q in 1..=qmax {
        let parts: Vec<PresentedAb> = orbits
            .iter()
            .filter(|o| !o.is_free())
            .map(|o| tables[&(o.stabilizer.elements().to_vec(), o.character.clone())][q].clone())
            .collect();
        let (group, invariants) = sum_invariants(&parts);
        out.push(E1Entry { p, q, invariants, orbits: info.clone(), group });
    }
    Ok(out)
}

/// `E_1^{pq}` for a single cell.
pub fn e1_entry(module: &GModule, p: usize, q: usize, limits: &Limits) -> Result<E1Entry> {
    Ok(column(module, p, q, limits)?.swap_remove(q))
}

/// `E_1^{pq}` with every stabilizer, cyclic or not, sent through its
/// homogeneous complex instead of the periodic resolution.
pub fn e1_entry_homogeneous(module: &GModule, p: usize, q: usize, limits: &Limits) -> Result<Invariants> {
    let g = module.group();
    if p + 1 > g.order() {
        return Ok(Invariants::zero());
    }
    let lambda = BasedModule::exterior_power(g, p + 1, limits)?;
    if q == 0 {
        return Ok(equivariant_hom(&lambda, module)?.group().invariant_factors());
    }
    let parts = lambda
        .orbit_decomposition()
        .orbits
        .iter()
        .filter(|o| !o.is_free())
        .map(|o| {
            let twisted = module.restrict(&o.stabilizer).twist(&o.character)?;
            Ok(subgroup_cohomology(&twisted, q, limits)?.swap_remove(q))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_invariants(&parts).1)
}

/// The `q = 0` row with `d_1` induced by the exterior boundary, in degrees `0..=pmax`.
pub fn row0_complex(module: &GModule, pmax: usize, limits: &Limits) -> Result<CochainComplex> {
    let g = module.group();
    let lambdas: Vec<BasedModule> =
        (1..=pmax + 2).map(|k| BasedModule::exterior_power(g, k, limits)).collect::<Result<_>>()?;
    let homs = lambdas.iter().map(|l| equivariant_hom(l, module)).collect::<Result<Vec<_>>>()?;
    let diffs = (0..=pmax)
        .map(|p| hom_differential(&boundary(&lambdas[p + 1], &lambdas[p])?, &homs[p + 1], &homs[p]))
        .collect::<Result<Vec<_>>>()?;
    CochainComplex::new(Kind::KLambda, homs.iter().map(|h| h.group().clone()).collect(), diffs)
}

/// Whether the row-0 complex coincides with the exterior complex, with equal cohomology.
pub fn row0_matches_exterior(module: &GModule, pmax: usize, limits: &Limits) -> Result<bool> {
    let row = row0_complex(module, pmax, limits)?;
    let kl = exterior_k_lambda(module, pmax, limits)?;
    let same_groups = (0..=pmax + 1).all(|p| row.group(p) == kl.complex.group(p));
    let same_diffs = (0..=pmax).all(|p| row.diff(p).matrix() == kl.complex.diff(p).matrix());
    let a: Vec<Invariants> = row.all_homology()?.iter().map(|h| h.invariant_factors()).collect();
    let b: Vec<Invariants> = kl.complex.all_homology()?.iter().map(|h| h.invariant_factors()).collect();
    Ok(same_groups && same_diffs && a == b)
}

/// The page for `0 ≤ p ≤ pmax`, `0 ≤ q ≤ qmax`, columns in parallel.
pub fn e1_page(module: &GModule, pmax: usize, qmax: usize, limits: &Limits) -> Result<E1Page> {
    let columns: Vec<Vec<E1Entry>> =
        (0..=pmax).into_par_iter().map(|p| column(module, p, qmax, limits)).collect::<Result<_>>()?;
    let row0_is_zarelua = row0_matches_exterior(module, pmax, limits)?;
    Ok(E1Page {
        group: module.group().label().to_string(),
        module: module.label().to_string(),
        pmax,
        qmax,
        entries: columns.into_iter().flatten().collect(),
        row0_is_zarelua,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeColumnCheck {
    pub ell: usize,
    pub q: usize,
    pub subgroups: usize,
    /// Degree used on each cyclic subgroup: `q + 1` for `ℓ = 2`, `q` otherwise.
    pub subgroup_degree: usize,
    pub entry: Invariants,
    pub expected: Invariants,
    pub pass: bool,
}

/// Compares `E_1^{ℓ-1, q}` with `∏ H^{q'}(C_ℓ, M)` over subgroups of order `ℓ`,
/// the right side computed from the homogeneous complex of each subgroup.
pub fn prime_column_crosscheck(module: &GModule, ell: usize, q: usize, limits: &Limits) -> Result<PrimeColumnCheck> {
    let entry = e1_entry(module, ell - 1, q, limits)?.invariants;
    let degree = if ell == 2 { q + 1 } else { q };
    let subgroups = module.group().cyclic_subgroups_of_order(ell);
    let parts: Vec<PresentedAb> = subgroups
        .par_iter()
        .map(|c| Ok(subgroup_cohomology(&module.restrict(c), degree, limits)?.swap_remove(degree)))
        .collect::<Result<_>>()?;
    let (_, expected) = sum_invariants(&parts);
    Ok(PrimeColumnCheck { ell, q, subgroups: subgroups.len(), subgroup_degree: degree, pass: entry == expected, entry, expected })
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingCell {
    pub p: usize,
    pub q: usize,
    /// Why the entry must vanish, if it must.
    pub reason: Option<&'static str>,
    pub is_zero: bool,
    pub pass: bool,
}

/// Flags the cells forced to vanish (column 0, `x^{p+1} = 1` only trivially
/// solvable, or `p + 1 > |G|`) and whether they do.
pub fn vanishing_report(page: &E1Page, group: &Group) -> Vec<VanishingCell> {
    page.entries
        .iter()
        .map(|e| {
            let reason = if e.p + 1 > group.order() {
                Some("truncation")
            } else if e.q > 0 && e.p == 0 {
                Some("column zero")
            } else if e.q > 0 && group.power_equation_is_trivial(e.p + 1) {
                Some("trivial roots")
            } else {
                None
            };
            let is_zero = e.invariants.is_zero();
            VanishingCell { p: e.p, q: e.q, reason, is_zero, pass: reason.is_none() || is_zero }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::int;

    fn group(spec: &str) -> Arc<Group> {
        Arc::new(Group::parse_spec(spec).unwrap())
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn column_zero_and_trivial_roots_vanish() {
        for spec in ["C2", "C3", "S3"] {
            let g = group(spec);
            let m = GModule::trivial_integers(&g);
            for q in 1..=3 {
                assert!(e1_entry(&m, 0, q, &lim()).unwrap().invariants.is_zero());
            }
        }
        let g = group("C3");
        for m in [GModule::trivial_integers(&g), GModule::trivial_cyclic(&g, 3)] {
            for q in 1..=3 {
                assert!(e1_entry(&m, 1, q, &lim()).unwrap().invariants.is_zero());
            }
        }
    }

    #[test]
    fn c2_integers_p1_q1() {
        let g = group("C2");
        let e = e1_entry(&GModule::trivial_integers(&g), 1, 1, &lim()).unwrap();
        assert_eq!(e.invariants, Invariants::new(0, &[2]));
        assert_eq!(e.orbits, vec![OrbitInfo { stab_order: 2, character: "sign" }]);
    }

    #[test]
    fn q0_row_is_the_hom_space() {
        let g = group("S3");
        let m = GModule::group_ring(&g);
        for p in 0..=3 {
            let l = BasedModule::exterior_power(&g, p + 1, &lim()).unwrap();
            let hom = equivariant_hom(&l, &m).unwrap();
            assert_eq!(&e1_entry(&m, p, 0, &lim()).unwrap().group, hom.group());
        }
    }

    #[test]
    fn periodic_route_agrees_with_homogeneous_route() {
        for spec in ["C2", "C3", "C4", "C5"] {
            let g = group(spec);
            let mut modules = vec![GModule::trivial_integers(&g), GModule::trivial_cyclic(&g, 2)];
            if g.order() <= 3 {
                modules.push(GModule::group_ring(&g));
            }
            if let Ok(s) = GModule::sign(&g) {
                modules.push(s);
            }
            for m in modules {
                let gen = cyclic_generator(&g).unwrap();
                let a: Vec<Invariants> = periodic_cohomology(&m, gen, 3).iter().map(|x| x.invariant_factors()).collect();
                let b: Vec<Invariants> =
                    subgroup_cohomology(&m, 3, &lim()).unwrap().iter().map(|x| x.invariant_factors()).collect();
                assert_eq!(a, b, "{spec} {}", m.label());
            }
        }
    }

    #[test]
    fn crosscheck_examples() {
        let g = group("C2");
        let r = prime_column_crosscheck(&GModule::trivial_cyclic(&g, 2), 2, 1, &lim()).unwrap();
        assert!(r.pass);
        assert_eq!(r.entry, Invariants::new(0, &[2]));
        let g = group("S3");
        let r = prime_column_crosscheck(&GModule::trivial_integers(&g), 2, 1, &lim()).unwrap();
        assert!(r.pass);
        assert_eq!(r.entry, Invariants::new(0, &[2, 2, 2]));
        let g = group("C3");
        let r = prime_column_crosscheck(&GModule::trivial_integers(&g), 3, 2, &lim()).unwrap();
        assert!(r.pass);
        assert_eq!(r.entry, Invariants::new(0, &[3]));
    }

    #[test]
    fn klein_stabilizer_uses_the_general_route() {
        // the wedge of all four elements of C2xC2 is fixed by the whole group, each
        // element acting as an even permutation
        let g = group("C2xC2");
        let e = e1_entry(&GModule::trivial_integers(&g), 3, 2, &lim()).unwrap();
        assert_eq!(e.orbits, vec![OrbitInfo { stab_order: 4, character: "trivial" }]);
        assert!(e.invariants.annihilated_by(&int(4)));
    }

    #[test]
    fn page_shape_and_row0() {
        let g = group("C2");
        let page = e1_page(&GModule::trivial_integers(&g), 3, 2, &lim()).unwrap();
        assert!(page.row0_is_zarelua);
        for p in 2..=3 {
            for q in 0..=2 {
                assert!(page.entry(p, q).invariants.is_zero());
            }
        }
        assert!(vanishing_report(&page, &g).iter().all(|c| c.pass));
        let json: serde_json::Value = serde_json::from_str(&page.to_json()).unwrap();
        assert_eq!(json["row0_is_zarelua"], true);
        assert_eq!(json["entries"][0]["orbits"][0]["character"], "trivial");
        let g = group("C5");
        assert!(row0_matches_exterior(&GModule::trivial_cyclic(&g, 5), 5, &lim()).unwrap());
    }
}
