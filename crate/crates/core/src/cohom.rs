//! Cohomology tables and the comparison maps `α: HS → H`, `β: H_λ → H`,
//! `γ: H_λ → HS` and the projection `HS → H_δ`.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{
    antisymmetric_ks, delta_hom_complex, exterior_k_lambda, homogeneous_k, normalized_nk, pullback_chain_map,
    splitting_maps, BuiltComplex, ChainMap, CochainComplex,
};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::gmod::{equivariant_hom, pullback, retuple, BasedModule, Family, GModule};
use crate::zmod::{AbHom, Homology, Invariants};

/// The theories the command line can compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Classical,
    Normalized,
    Symmetric,
    Exterior,
    Delta,
    Ks,
}

impl Theory {
    pub const ALL: [Theory; 6] =
        [Theory::Classical, Theory::Normalized, Theory::Symmetric, Theory::Exterior, Theory::Delta, Theory::Ks];

    pub fn name(self) -> &'static str {
        match self {
            Theory::Classical => "classical",
            Theory::Normalized => "normalized",
            Theory::Symmetric => "symmetric",
            Theory::Exterior => "exterior",
            Theory::Delta => "delta",
            Theory::Ks => "ks",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Theory::Classical => "H",
            Theory::Normalized => "H(NK)",
            Theory::Symmetric => "HS",
            Theory::Exterior => "H_λ",
            Theory::Delta => "H_δ",
            Theory::Ks => "H(KS)",
        }
    }

    /// Builds the complex this theory is computed from. Symmetric cohomology
    /// goes through `KS`, which `ψ` identifies with `CS`.
    pub fn build(self, module: &GModule, max_degree: usize, limits: &Limits) -> Result<BuiltComplex> {
        match self {
            Theory::Classical => homogeneous_k(module, max_degree, limits),
            Theory::Normalized => normalized_nk(&homogeneous_k(module, max_degree, limits)?),
            Theory::Symmetric | Theory::Ks => antisymmetric_ks(module, max_degree, limits),
            Theory::Exterior => exterior_k_lambda(module, max_degree, limits),
            Theory::Delta => delta_hom_complex(module, max_degree, limits),
        }
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theory::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theory '{s}' (classical|normalized|symmetric|exterior|delta|ks)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub n: usize,
    #[serde(flatten)]
    pub invariants: Invariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub theory: String,
    pub group: String,
    pub module: String,
    pub degrees: Vec<DegreeEntry>,
}

impl CohomologyTable {
    pub fn invariants(&self, n: usize) -> &Invariants {
        &self.degrees[n].invariants
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("theory,group,module,n,free_rank,torsion\n");
        for d in &self.degrees {
            let torsion: Vec<String> = d.invariants.torsion.iter().map(|t| t.to_string()).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                self.theory,
                self.group,
                self.module,
                d.n,
                d.invariants.free_rank,
                torsion.join(";")
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} of {} with coefficients in {}\n", self.theory, self.group, self.module);
        let width = self.degrees.last().map_or(1, |d| d.n.to_string().len());
        for d in &self.degrees {
            let _ = writeln!(out, "  n={:>width$}  {}", d.n, d.invariants);
        }
        out
    }
}

/// Cohomology of `complex` in degrees `0..=N`.
pub fn cohomology(complex: &CochainComplex, theory: &str, group: &str, module: &str) -> Result<CohomologyTable> {
    let homology = complex.all_homology()?;
    Ok(table_from(&homology, theory, group, module))
}

fn table_from(homology: &[Homology], theory: &str, group: &str, module: &str) -> CohomologyTable {
    CohomologyTable {
        theory: theory.to_string(),
        group: group.to_string(),
        module: module.to_string(),
        degrees: homology
            .iter()
            .enumerate()
            .map(|(n, h)| DegreeEntry { n, invariants: h.invariant_factors() })
            .collect(),
    }
}

/// Computes one theory end to end.
pub fn compute_table(theory: Theory, module: &GModule, max_degree: usize, limits: &Limits) -> Result<CohomologyTable> {
    let built = theory.build(module, max_degree, limits)?;
    cohomology(&built.complex, theory.symbol(), module.group().label(), module.label())
}

/// One degree of an induced map on cohomology.
#[derive(Clone, Debug, Serialize)]
pub struct MapDegree {
    pub n: usize,
    pub source: Invariants,
    pub target: Invariants,
    pub kernel: Invariants,
    pub cokernel: Invariants,
    pub is_mono: bool,
    pub is_iso: bool,
    #[serde(skip)]
    pub map: AbHom,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub label: String,
    pub degrees: Vec<MapDegree>,
}

impl MapReport {
    pub fn degree(&self, n: usize) -> &MapDegree {
        &self.degrees[n]
    }

    fn induced(label: &str, map: &ChainMap, source: &[Homology], target: &[Homology]) -> Result<MapReport> {
        let degrees = (0..source.len().min(target.len()))
            .into_par_iter()
            .map(|n| {
                let f = map.induced(&source[n], &target[n], n)?;
                let kernel = f.kernel().group.invariant_factors();
                let cokernel = f.cokernel().0.invariant_factors();
                Ok(MapDegree {
                    n,
                    source: source[n].invariant_factors(),
                    target: target[n].invariant_factors(),
                    is_mono: kernel.is_zero(),
                    is_iso: kernel.is_zero() && cokernel.is_zero(),
                    kernel,
                    cokernel,
                    map: f,
                })
            })
            .collect::<Result<_>>()?;
        Ok(MapReport { label: label.to_string(), degrees })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.label);
        for d in &self.degrees {
            let flag = if d.is_iso {
                "iso"
            } else if d.is_mono {
                "mono"
            } else {
                "-"
            };
            let _ = writeln!(
                out,
                "  n={}  {} → {}  ker {}  coker {}  [{}]",
                d.n, d.source, d.target, d.kernel, d.cokernel, flag
            );
        }
        out
    }
}

/// Everything `compare` reports.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub group: String,
    pub module: String,
    pub classical: CohomologyTable,
    pub symmetric: CohomologyTable,
    pub exterior: CohomologyTable,
    pub delta: CohomologyTable,
    pub alpha: MapReport,
    pub beta: MapReport,
    pub gamma: MapReport,
    pub delta_projection: MapReport,
    /// `β^n = α^n ∘ γ^n` as cochain maps, per degree.
    pub beta_is_alpha_gamma: Vec<bool>,
    /// Whether the restriction `KS → K_λ` is a left inverse of `γ` in every degree.
    pub gamma_has_retraction: bool,
}

impl Comparison {
    pub fn to_text(&self) -> String {
        let mut out = format!("comparison maps for {} with coefficients in {}\n", self.group, self.module);
        for t in [&self.classical, &self.symmetric, &self.exterior, &self.delta] {
            out.push_str(&t.to_text());
        }
        for m in [&self.alpha, &self.beta, &self.gamma, &self.delta_projection] {
            out.push_str(&m.to_text());
        }
        let all = self.beta_is_alpha_gamma.iter().all(|&b| b);
        let _ = writeln!(out, "β = α∘γ on cochains: {all}");
        let _ = writeln!(out, "γ has a retraction: {}", self.gamma_has_retraction);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("map,n,source,target,kernel,cokernel,is_mono,is_iso\n");
        for m in [&self.alpha, &self.beta, &self.gamma, &self.delta_projection] {
            for d in &m.degrees {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    m.label, d.n, d.source, d.target, d.kernel, d.cokernel, d.is_mono, d.is_iso
                );
            }
        }
        out
    }
}

fn homologies(c: &BuiltComplex) -> Result<Vec<Homology>> {
    c.complex.all_homology()
}

/// α, β, γ and the δ-projection in degrees `0..=max_degree`.
pub fn comparison_maps(module: &GModule, max_degree: usize, limits: &Limits) -> Result<Comparison> {
    let ((k, ks), (kl, dh)) = rayon::join(
        || rayon::join(|| homogeneous_k(module, max_degree, limits), || antisymmetric_ks(module, max_degree, limits)),
        || {
            rayon::join(
                || exterior_k_lambda(module, max_degree, limits),
                || delta_hom_complex(module, max_degree, limits),
            )
        },
    );
    let (k, ks, kl, dh) = (k?, ks?, kl?, dh?);
    let alpha = pullback_chain_map(&ks, &k)?;
    let beta = pullback_chain_map(&kl, &k)?;
    let split = splitting_maps(&ks, &kl, &dh)?;
    let gamma = &split.section;

    let beta_is_alpha_gamma: Vec<bool> = (0..=max_degree + 1)
        .into_par_iter()
        .map(|n| alpha.maps[n].compose(&gamma.maps[n]).map(|c| c.equals(&beta.maps[n])).unwrap_or(false))
        .collect();
    let gamma_has_retraction = (0..=max_degree + 1).into_par_iter().all(|n| {
        split.to_lambda.maps[n]
            .compose(&gamma.maps[n])
            .map(|c| c.equals(&AbHom::identity(c.source())))
            .unwrap_or(false)
    });

    let hs = [&k, &ks, &kl, &dh].par_iter().map(|c| homologies(c)).collect::<Result<Vec<_>>>()?;
    let (h_k, h_ks, h_kl, h_dh) = (&hs[0], &hs[1], &hs[2], &hs[3]);
    let (g, m) = (module.group().label(), module.label());
    Ok(Comparison {
        group: g.to_string(),
        module: m.to_string(),
        classical: table_from(h_k, "H", g, m),
        symmetric: table_from(h_ks, "HS", g, m),
        exterior: table_from(h_kl, "H_λ", g, m),
        delta: table_from(h_dh, "H_δ", g, m),
        alpha: MapReport::induced("α: HS → H", &alpha, h_ks, h_k)?,
        beta: MapReport::induced("β: H_λ → H", &beta, h_kl, h_k)?,
        gamma: MapReport::induced("γ: H_λ → HS", gamma, h_kl, h_ks)?,
        delta_projection: MapReport::induced("HS → H_δ", &split.to_delta, h_ks, h_dh)?,
        beta_is_alpha_gamma,
        gamma_has_retraction,
    })
}

/// `γ: H_λ → HS` alone, without building `K`.
pub fn gamma_map(module: &GModule, max_degree: usize, limits: &Limits) -> Result<MapReport> {
    let (ks, kl) =
        rayon::join(|| antisymmetric_ks(module, max_degree, limits), || exterior_k_lambda(module, max_degree, limits));
    let (ks, kl) = (ks?, kl?);
    let gamma = pullback_chain_map(&kl, &ks)?;
    let (h_ks, h_kl) = rayon::join(|| homologies(&ks), || homologies(&kl));
    MapReport::induced("γ: H_λ → HS", &gamma, &h_kl?, &h_ks?)
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectSumDegree {
    pub n: usize,
    pub symmetric: Invariants,
    pub exterior: Invariants,
    pub delta: Invariants,
    /// `HS^n ≅ H_λ^n ⊕ H_δ^n` as abstract groups.
    pub invariants_match: bool,
    /// The two projections induce an isomorphism `HS^n → H_λ^n ⊕ H_δ^n`.
    pub realized: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectSumReport {
    pub group: String,
    pub module: String,
    pub degrees: Vec<DirectSumDegree>,
}

impl DirectSumReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.invariants_match && d.realized)
    }
}

/// Checks `HS ≅ H_λ ⊕ H_δ` degreewise, through the splitting maps.
pub fn direct_sum_check(module: &GModule, max_degree: usize, limits: &Limits) -> Result<DirectSumReport> {
    let (ks, (kl, dh)) = rayon::join(
        || antisymmetric_ks(module, max_degree, limits),
        || {
            rayon::join(
                || exterior_k_lambda(module, max_degree, limits),
                || delta_hom_complex(module, max_degree, limits),
            )
        },
    );
    let (ks, kl, dh) = (ks?, kl?, dh?);
    let split = splitting_maps(&ks, &kl, &dh)?;
    split.verify()?;
    let (h_ks, (h_kl, h_dh)) =
        rayon::join(|| homologies(&ks), || rayon::join(|| homologies(&kl), || homologies(&dh)));
    let (h_ks, h_kl, h_dh) = (h_ks?, h_kl?, h_dh?);
    let degrees = (0..=max_degree)
        .into_par_iter()
        .map(|n| {
            let to_l = split.to_lambda.induced(&h_ks[n], &h_kl[n], n)?;
            let to_d = split.to_delta.induced(&h_ks[n], &h_dh[n], n)?;
            let target = crate::zmod::PresentedAb::direct_sum(&[h_kl[n].group.clone(), h_dh[n].group.clone()]);
            let both = AbHom::new_unchecked(h_ks[n].group.clone(), target, to_l.matrix().vstack(to_d.matrix()));
            let symmetric = h_ks[n].invariant_factors();
            let exterior = h_kl[n].invariant_factors();
            let delta = h_dh[n].invariant_factors();
            Ok(DirectSumDegree {
                n,
                invariants_match: symmetric == exterior.direct_sum(&delta),
                realized: both.is_iso(),
                symmetric,
                exterior,
                delta,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DirectSumReport { group: module.group().label().to_string(), module: module.label().to_string(), degrees })
}

/// Per degree `n ≤ max_degree`: whether `γ^n: K_λ^n → KS^n` is bijective and
/// `β^n = α^n ∘ γ^n`. Together these say `KS^n` and `K_λ^n` have the same image
/// in `K^n`. Built degree by degree, so no differentials of `K` are needed.
pub fn lambda_equals_ks(module: &GModule, max_degree: usize, limits: &Limits) -> Result<Vec<bool>> {
    (0..=max_degree)
        .into_par_iter()
        .map(|n| {
            let g = module.group();
            let t = BasedModule::build(Family::Tensor, g, n + 1, limits)?;
            let ks = BasedModule::build(Family::TildeExterior, g, n + 1, limits)?;
            let kl = BasedModule::build(Family::Exterior, g, n + 1, limits)?;
            let (h_t, h_ks, h_kl) = (equivariant_hom(&t, module)?, equivariant_hom(&ks, module)?, equivariant_hom(&kl, module)?);
            let alpha = pullback(&retuple(&t, &ks)?, &h_t, &h_ks)?;
            let beta = pullback(&retuple(&t, &kl)?, &h_t, &h_kl)?;
            let gamma = pullback(&retuple(&ks, &kl)?, &h_ks, &h_kl)?;
            Ok(gamma.is_iso() && alpha.compose(&gamma)?.equals(&beta))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cochain::{classical_c, symmetric_cs};
    use crate::grp::Group;

    fn group(spec: &str) -> Arc<Group> {
        Arc::new(Group::parse_spec(spec).unwrap())
    }

    fn f2() -> Invariants {
        Invariants::new(0, &[2])
    }

    #[test]
    fn tables_for_c2_f2() {
        let g = group("C2");
        let m = GModule::trivial_cyclic(&g, 2);
        let lim = Limits::default();
        let h = compute_table(Theory::Classical, &m, 5, &lim).unwrap();
        assert!(h.degrees.iter().all(|d| d.invariants == f2()));
        let hl = compute_table(Theory::Exterior, &m, 5, &lim).unwrap();
        let expected: Vec<Invariants> = (0..=5).map(|n| if n <= 1 { f2() } else { Invariants::zero() }).collect();
        assert_eq!(hl.degrees.iter().map(|d| d.invariants.clone()).collect::<Vec<_>>(), expected);
        let hs = compute_table(Theory::Symmetric, &m, 9, &lim).unwrap();
        for d in &hs.degrees {
            let nonzero = d.n == 0 || d.n % 4 == 1;
            assert_eq!(d.invariants, if nonzero { f2() } else { Invariants::zero() }, "n={}", d.n);
        }
    }

    #[test]
    fn classical_and_homogeneous_routes_agree() {
        for spec in ["C2", "C3", "S3"] {
            let g = group(spec);
            for m in [GModule::trivial_integers(&g), GModule::group_ring(&g), GModule::trivial_cyclic(&g, 2)] {
                let lim = Limits::default();
                let top = if spec == "S3" { 2 } else { 4 };
                let c = classical_c(&m, top, &lim).unwrap();
                let k = homogeneous_k(&m, top, &lim).unwrap();
                let a = cohomology(&c.complex, "H", spec, m.label()).unwrap();
                let b = cohomology(&k.complex, "H", spec, m.label()).unwrap();
                assert_eq!(a, b, "{spec} {}", m.label());
                if spec != "S3" {
                    let cs = symmetric_cs(&c).unwrap();
                    let ks = antisymmetric_ks(&m, top, &lim).unwrap();
                    assert_eq!(
                        cohomology(&cs.complex, "HS", spec, m.label()).unwrap(),
                        cohomology(&ks.complex, "HS", spec, m.label()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn comparison_examples() {
        let g = group("C2");
        let m = GModule::trivial_cyclic(&g, 2);
        let c = comparison_maps(&m, 5, &Limits::default()).unwrap();
        for r in [&c.alpha, &c.beta, &c.gamma] {
            assert!(r.degree(0).is_iso);
        }
        let g5 = c.gamma.degree(5);
        assert!(g5.is_mono && !g5.is_iso);
        assert_eq!(g5.cokernel, f2());
        assert!(c.beta_is_alpha_gamma.iter().all(|&b| b));
        assert!(c.gamma_has_retraction);
        assert!(c.gamma.degrees.iter().all(|d| d.is_mono));

        let g = group("C3");
        let m = GModule::trivial_cyclic(&g, 3);
        let c = comparison_maps(&m, 2, &Limits::default()).unwrap();
        assert!(c.beta.degree(2).is_iso);
    }

    #[test]
    fn direct_sum_examples() {
        let g = group("C2");
        let m = GModule::trivial_cyclic(&g, 2);
        let r = direct_sum_check(&m, 5, &Limits::default()).unwrap();
        assert!(r.holds());
        assert_eq!(r.degrees[0].delta, Invariants::zero());
        assert!(r.degrees[..5].iter().all(|d| d.delta.is_zero()));
        assert_eq!(r.degrees[5].symmetric, f2());
        assert_eq!(r.degrees[5].exterior, Invariants::zero());
        assert_eq!(r.degrees[5].delta, f2());
    }

    #[test]
    fn no_two_torsion_makes_ks_equal_k_lambda() {
        let g = group("C3");
        let m = GModule::trivial_integers(&g);
        assert!(lambda_equals_ks(&m, 3, &Limits::default()).unwrap().iter().all(|&b| b));
        let g = group("C2");
        let m = GModule::trivial_cyclic(&g, 2);
        assert!(!lambda_equals_ks(&m, 3, &Limits::default()).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn renderings() {
        let g = group("C2");
        let m = GModule::trivial_cyclic(&g, 2);
        let t = compute_table(Theory::Exterior, &m, 2, &Limits::default()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["degrees"][0]["n"], 0);
        assert_eq!(json["degrees"][0]["torsion"][0], 2);
        assert_eq!(json["degrees"][2]["free_rank"], 0);
        assert!(t.to_csv().lines().nth(1).unwrap().ends_with(",0,0,2"));
        assert!(t.to_text().contains("Z/2"));
        assert!(t.to_text().lines().last().unwrap().ends_with(" 0"));
        assert_eq!("ks".parse::<Theory>().unwrap(), Theory::Ks);
        assert!("bogus".parse::<Theory>().is_err());
    }
}
