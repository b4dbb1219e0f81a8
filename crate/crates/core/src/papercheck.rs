//! The reproduction suite run by `cohomforge papercheck`. Each claim is
//! recomputed on instances that fit the default guards and reported with an
//! anchor naming the statement it reproduces.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::cochain::{
    c_lambda_by_intersection, c_lambda_by_psi, classical_c, homogeneous_k, normalized_nc, psi_chain_map, psi_into_c,
    resolution_complex, symmetric_cs, Kind,
};
use crate::cohom::{comparison_maps, compute_table, direct_sum_check, gamma_map, lambda_equals_ks, Theory};
use crate::config::Limits;
use crate::error::Result;
use crate::gmod::{boundary, contracting_homotopy, BasedModule, Family, GModule};
use crate::grp::Group;
use crate::ss::{e1_entry_homogeneous, e1_page, periodic_cohomology, prime_column_crosscheck, vanishing_report};
use crate::zmod::{homology_at, AbHom, IntMatrix, Invariants, PresentedAb};

/// Groups of the δ-vanishing grid.
pub const GRID_GROUPS: [&str; 5] = ["C2", "C3", "C4", "C2xC2", "S3"];

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: &'static str,
    pub anchor: &'static str,
    pub claim: &'static str,
    pub pass: bool,
    /// Failing instances, or a short summary when everything passed.
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub items: Vec<ClaimResult>,
    pub all_pass: bool,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,pass,seconds,anchor\n");
        for c in &self.items {
            let _ = writeln!(out, "{},{},{:.3},\"{}\"", c.id, c.pass, c.seconds, c.anchor.replace('"', "'"));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.items {
            let _ = writeln!(
                out,
                "{} {:<22} {:>7.2}s  {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.seconds,
                c.claim
            );
            if !c.pass {
                let _ = writeln!(out, "     {}", c.detail);
            }
        }
        let _ = writeln!(out, "{}", if self.all_pass { "all claims reproduced" } else { "some claims FAILED" });
        out
    }
}

/// A claim and the function that rechecks it.
pub struct Claim {
    pub id: &'static str,
    pub anchor: &'static str,
    pub claim: &'static str,
    pub check: fn(&Limits) -> Result<Outcome>,
}

/// Failing instances (empty on success) and the number of instances checked.
#[derive(Default)]
pub struct Outcome {
    failures: Vec<String>,
    checked: usize,
}

impl Outcome {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

pub const CLAIMS: [Claim; 10] = [
    Claim {
        id: "hs-c2-f2",
        anchor: "symmetric cohomology of C2 in F2: i ≡ 1 mod 4",
        claim: "HS^i(C2,F2) is F2 for i = 0 and i ≡ 1 mod 4, else 0 (i ≤ 9)",
        check: hs_c2_f2,
    },
    Claim {
        id: "exterior-c2",
        anchor: "H_λ^n(C2,M) = H^n(C2,M) if n = 0,1, else 0",
        claim: "H_λ(C2,M) agrees with H in degrees 0,1 and vanishes above, M ∈ {Z, F2, Zsign}",
        check: exterior_c2,
    },
    Claim {
        id: "exterior-cyclic",
        anchor: "H_λ^i(C_ℓ,M) = H^i(C_ℓ,M) if i ≤ ℓ−1, else 0",
        claim: "H_λ(C_ℓ,M) agrees with H below degree ℓ and vanishes from ℓ on, ℓ ∈ {3,5}",
        check: exterior_cyclic,
    },
    Claim {
        id: "delta-vanishing",
        anchor: "H_δ^i(G,M) = 0 for 0 ≤ i ≤ 4",
        claim: "H_δ^i vanishes for i ≤ 4 on the test grid",
        check: delta_vanishing,
    },
    Claim {
        id: "delta-five",
        anchor: "γ^n for n ≥ 5 is not an isomorphism in general",
        claim: "H_δ^5(C2,F2) = F2 and γ^5 is not surjective",
        check: delta_five,
    },
    Claim {
        id: "direct-sum",
        anchor: "HS^n ≅ H_λ^n ⊕ H_δ^n",
        claim: "the splitting maps realize HS ≅ H_λ ⊕ H_δ up to degree 5 on the test grid",
        check: direct_sum,
    },
    Claim {
        id: "no-two-torsion",
        anchor: "γ is an isomorphism if M has no elements of order two",
        claim: "KS^n = K_λ^n inside K^n and γ^n iso for M ∈ {Z, Z/3, Z/5}",
        check: no_two_torsion,
    },
    Claim {
        id: "alpha-beta-low",
        anchor: "α, β iso for n = 0,1 and mono for n = 2; β^2 iso without 2-torsion",
        claim: "α and β are iso in degrees 0,1 and mono in degree 2; β^2 iso for C3 and C5",
        check: alpha_beta_low,
    },
    Claim {
        id: "e1-s3",
        anchor: "E_1^{pq} = Ext^q(Λ^{p+1} Z[G], M) ⇒ H^{p+q}(G,M)",
        claim: "E1 page of S3 with Z coefficients, P = 5, Q = 3",
        check: e1_s3,
    },
    Claim {
        id: "structure",
        anchor: "contracting homotopy, acyclicity of Δ, ψ isomorphism, stabilizer orders",
        claim: "d∘d = 0, h∂ + ∂h = id, Δ acyclic, ψ iso, stabilizers divide p+1, CS = ψ(KS)",
        check: structure,
    },
];

/// Runs every claim in order.
pub fn run_all(limits: &Limits) -> Manifest {
    let items: Vec<ClaimResult> = CLAIMS.iter().map(|c| run_claim(c, limits)).collect();
    let all_pass = items.iter().all(|c| c.pass);
    Manifest { items, all_pass }
}

pub fn run_claim(claim: &Claim, limits: &Limits) -> ClaimResult {
    let start = Instant::now();
    let (pass, detail) = match (claim.check)(limits) {
        Ok(o) if o.failures.is_empty() => (true, format!("{} instances", o.checked)),
        Ok(o) => (false, o.failures.join("; ")),
        Err(e) => (false, format!("error: {e}")),
    };
    ClaimResult {
        id: claim.id,
        anchor: claim.anchor,
        claim: claim.claim,
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn group(spec: &str) -> Result<Arc<Group>> {
    Ok(Arc::new(Group::parse_spec(spec)?))
}

/// `Z`, `F2`, `Z/4`, and `Zsign` when the group has a sign character.
pub fn grid_modules(g: &Arc<Group>) -> Vec<GModule> {
    let mut out = vec![GModule::trivial_integers(g), GModule::trivial_cyclic(g, 2), GModule::trivial_cyclic(g, 4)];
    out.extend(GModule::sign(g).ok());
    out
}

fn grid() -> Result<Vec<GModule>> {
    let mut out = Vec::new();
    for spec in GRID_GROUPS {
        out.extend(grid_modules(&group(spec)?));
    }
    Ok(out)
}

fn name(m: &GModule) -> String {
    format!("{}/{}", m.group().label(), m.label())
}

fn f2() -> Invariants {
    Invariants::new(0, &[2])
}

fn hs_c2_f2(limits: &Limits) -> Result<Outcome> {
    let g = group("C2")?;
    let t = compute_table(Theory::Symmetric, &GModule::trivial_cyclic(&g, 2), 9, limits)?;
    let mut o = Outcome::default();
    for d in &t.degrees {
        let want = if d.n == 0 || d.n % 4 == 1 { f2() } else { Invariants::zero() };
        o.expect(d.invariants == want, || format!("HS^{} = {}", d.n, d.invariants));
    }
    Ok(o)
}

fn exterior_c2(limits: &Limits) -> Result<Outcome> {
    let g = group("C2")?;
    let mut o = Outcome::default();
    for m in [GModule::trivial_integers(&g), GModule::trivial_cyclic(&g, 2), GModule::sign(&g)?] {
        let hl = compute_table(Theory::Exterior, &m, 5, limits)?;
        let h = compute_table(Theory::Classical, &m, 1, limits)?;
        for d in &hl.degrees {
            let want = if d.n <= 1 { h.invariants(d.n).clone() } else { Invariants::zero() };
            o.expect(d.invariants == want, || format!("{} H_λ^{} = {}", name(&m), d.n, d.invariants));
        }
    }
    Ok(o)
}

fn generator(g: &Group) -> usize {
    (0..g.order()).find(|&x| g.element_order(x) == g.order()).expect("cyclic group")
}

fn exterior_cyclic(limits: &Limits) -> Result<Outcome> {
    let mut o = Outcome::default();
    for ell in [3usize, 5] {
        let g = group(&format!("C{ell}"))?;
        for m in [GModule::trivial_integers(&g), GModule::trivial_cyclic(&g, ell as i64)] {
            let top = ell + 1;
            let hl = compute_table(Theory::Exterior, &m, top, limits)?;
            let h = periodic_cohomology(&m, generator(&g), top);
            for d in &hl.degrees {
                let want = if d.n < ell { h[d.n].invariant_factors() } else { Invariants::zero() };
                o.expect(d.invariants == want, || format!("{} H_λ^{} = {}", name(&m), d.n, d.invariants));
            }
        }
    }
    Ok(o)
}

fn delta_vanishing(limits: &Limits) -> Result<Outcome> {
    let mut o = Outcome::default();
    for m in grid()? {
        let t = compute_table(Theory::Delta, &m, 4, limits)?;
        for d in &t.degrees {
            o.expect(d.invariants.is_zero(), || format!("{} H_δ^{} = {}", name(&m), d.n, d.invariants));
        }
    }
    Ok(o)
}

fn delta_five(limits: &Limits) -> Result<Outcome> {
    let g = group("C2")?;
    let m = GModule::trivial_cyclic(&g, 2);
    let mut o = Outcome::default();
    let t = compute_table(Theory::Delta, &m, 5, limits)?;
    o.expect(*t.invariants(5) == f2(), || format!("H_δ^5 = {}", t.invariants(5)));
    let gamma = gamma_map(&m, 5, limits)?;
    let g5 = gamma.degree(5);
    o.expect(!g5.cokernel.is_zero(), || format!("coker γ^5 = {}", g5.cokernel));
    Ok(o)
}

fn direct_sum(limits: &Limits) -> Result<Outcome> {
    let mut o = Outcome::default();
    for m in grid()? {
        let r = direct_sum_check(&m, 5, limits)?;
        for d in &r.degrees {
            o.expect(d.invariants_match && d.realized, || {
                format!("{} n={}: {} vs {} ⊕ {}", name(&m), d.n, d.symmetric, d.exterior, d.delta)
            });
        }
    }
    Ok(o)
}

/// Groups and degree bounds for the no-2-torsion claim. `S3` with finite
/// coefficients stops at 4: `K^5` there has 7776 torsion generators.
pub fn no_two_torsion_cases() -> Vec<(&'static str, i64, usize)> {
    let mut out = Vec::new();
    for spec in ["C2", "C3", "C4", "C2xC2", "C5", "S3"] {
        for k in [0, 3, 5] {
            let top = if spec == "S3" && k != 0 { 4 } else { 5 };
            out.push((spec, k, top));
        }
    }
    out
}

fn no_two_torsion(limits: &Limits) -> Result<Outcome> {
    let mut o = Outcome::default();
    for (spec, k, top) in no_two_torsion_cases() {
        let g = group(spec)?;
        let m = if k == 0 { GModule::trivial_integers(&g) } else { GModule::trivial_cyclic(&g, k) };
        let same = lambda_equals_ks(&m, top, limits)?;
        for (n, ok) in same.iter().enumerate() {
            o.expect(*ok, || format!("{} KS^{n} ≠ K_λ^{n}", name(&m)));
        }
        let gamma = gamma_map(&m, top, limits)?;
        for d in &gamma.degrees {
            o.expect(d.is_iso, || format!("{} γ^{} not iso", name(&m), d.n));
        }
    }
    Ok(o)
}

fn alpha_beta_low(limits: &Limits) -> Result<Outcome> {
    let mut o = Outcome::default();
    for m in grid()? {
        let c = comparison_maps(&m, 2, limits)?;
        for (label, r) in [("α", &c.alpha), ("β", &c.beta)] {
            for n in 0..=1 {
                o.expect(r.degree(n).is_iso, || format!("{} {label}^{n} not iso", name(&m)));
            }
            o.expect(r.degree(2).is_mono, || format!("{} {label}^2 not mono", name(&m)));
        }
    }
    for spec in ["C3", "C5"] {
        for m in grid_modules(&group(spec)?) {
            let c = comparison_maps(&m, 2, limits)?;
            o.expect(c.beta.degree(2).is_iso, || format!("{} β^2 not iso", name(&m)));
        }
    }
    Ok(o)
}

fn e1_s3(limits: &Limits) -> Result<Outcome> {
    let g = group("S3")?;
    let m = GModule::trivial_integers(&g);
    let page = e1_page(&m, 5, 3, limits)?;
    let mut o = Outcome::default();
    o.expect(page.row0_is_zarelua, || "row 0 differs from K_λ".into());
    for q in 1..=3 {
        o.expect(page.entry(0, q).invariants.is_zero(), || format!("E1^(0,{q}) ≠ 0"));
        // three subgroups of order 2, H^{q+1}(C2, Z) = Z/2 for q odd
        let col1 = if q % 2 == 1 { Invariants::new(0, &[2, 2, 2]) } else { Invariants::zero() };
        o.expect(page.entry(1, q).invariants == col1, || format!("E1^(1,{q}) = {}", page.entry(1, q).invariants));
        let col2 = if q % 2 == 0 { Invariants::new(0, &[3]) } else { Invariants::zero() };
        o.expect(page.entry(2, q).invariants == col2, || format!("E1^(2,{q}) = {}", page.entry(2, q).invariants));
        for ell in [2, 3] {
            let c = prime_column_crosscheck(&m, ell, q, limits)?;
            o.expect(c.pass, || format!("prime column ℓ={ell} q={q}: {} vs {}", c.entry, c.expected));
        }
    }
    for cell in vanishing_report(&page, &g) {
        o.expect(cell.pass, || format!("E1^({},{}) should vanish ({:?})", cell.p, cell.q, cell.reason));
    }
    for e in &page.entries {
        let other = e1_entry_homogeneous(&m, e.p, e.q, limits)?;
        o.expect(other == e.invariants, || format!("E1^({},{}) = {} but {} via subgroups", e.p, e.q, e.invariants, other));
    }
    Ok(o)
}

fn structure(limits: &Limits) -> Result<Outcome> {
    let mut o = Outcome::default();
    for spec in ["C2", "C3", "C2xC2", "S3"] {
        let g = group(spec)?;
        for m in [GModule::trivial_integers(&g), GModule::trivial_cyclic(&g, 2), GModule::group_ring(&g)] {
            for kind in [Kind::K, Kind::KS, Kind::KLambda, Kind::DeltaHom] {
                let top = if kind == Kind::K { 2 } else { 3 };
                let c = resolution_complex(kind, &m, top, limits)?;
                o.expect(c.complex.verify().is_ok(), || format!("{} d∘d ≠ 0 on {}", name(&m), kind.label()));
            }
        }
        for (family, top) in [(Family::Tensor, 2), (Family::Exterior, 4), (Family::TildeExterior, 4)] {
            homotopy_identity(&mut o, &g, family, top, limits)?;
        }
        delta_acyclic(&mut o, &g, 5, limits)?;
    }
    for spec in ["C2", "C3", "S3"] {
        let g = group(spec)?;
        let top = if spec == "S3" { 2 } else { 3 };
        for m in [GModule::trivial_integers(&g), GModule::trivial_cyclic(&g, 2)] {
            let k = homogeneous_k(&m, top, limits)?;
            let c = classical_c(&m, top, limits)?;
            let psi = psi_chain_map(&k, &c)?;
            let ok = psi.verify(&k.complex, &c.complex).is_ok() && psi.is_degreewise_iso();
            o.expect(ok, || format!("{} ψ not a chain isomorphism", name(&m)));
        }
    }
    for spec in ["C4", "C2xC2", "C5", "S3", "D4"] {
        let g = group(spec)?;
        for n in 1..=g.order().min(6) {
            let l = BasedModule::exterior_power(&g, n, limits)?;
            for orbit in l.orbit_decomposition().orbits {
                let s = orbit.stabilizer.order();
                o.expect(n % s == 0, || format!("{spec} Λ^{n} stabilizer of order {s}"));
            }
        }
    }
    for spec in ["C1", "C2", "C3"] {
        let g = group(spec)?;
        for m in [GModule::trivial_cyclic(&g, 2), GModule::trivial_cyclic(&g, 3), GModule::trivial_integers(&g)] {
            brute_force_symmetric(&mut o, &m, 3, limits)?;
        }
    }
    Ok(o)
}

fn homotopy_identity(o: &mut Outcome, g: &Arc<Group>, family: Family, top: usize, limits: &Limits) -> Result<()> {
    let mods: Vec<BasedModule> =
        (1..=top + 2).map(|n| BasedModule::build(family, g, n, limits)).collect::<Result<_>>()?;
    for n in 0..top {
        let d1 = boundary(&mods[n + 1], &mods[n])?.matrix();
        let d2 = boundary(&mods[n + 2], &mods[n + 1])?.matrix();
        let h_lo = contracting_homotopy(&mods[n], &mods[n + 1])?.matrix();
        let h_hi = contracting_homotopy(&mods[n + 1], &mods[n + 2])?.matrix();
        let diff = h_lo.mul(&d1).add(&d2.mul(&h_hi)).sub(&IntMatrix::identity(mods[n + 1].len()));
        o.expect(mods[n + 1].carrier().columns_vanish(&diff), || format!("{} {} h∂+∂h ≠ id at {n}", g.label(), family.symbol()));
    }
    Ok(())
}

/// `H_k(Δ^{*+1} Z[G]) = 0` for `k ≤ top`.
fn delta_acyclic(o: &mut Outcome, g: &Arc<Group>, top: usize, limits: &Limits) -> Result<()> {
    let mods: Vec<BasedModule> =
        (1..=top + 2).map(|n| BasedModule::delta_power(g, n, limits)).collect::<Result<_>>()?;
    for k in 0..=top {
        let d_out = if k == 0 {
            AbHom::zero(&mods[0].carrier(), &PresentedAb::zero())
        } else {
            boundary(&mods[k], &mods[k - 1])?.to_abhom(&mods[k], &mods[k - 1])
        };
        let d_in = boundary(&mods[k + 1], &mods[k])?.to_abhom(&mods[k + 1], &mods[k]);
        o.expect(homology_at(&d_in, &d_out)?.group.is_trivial(), || format!("{} H_{k}(Δ) ≠ 0", g.label()));
    }
    Ok(())
}

fn brute_force_symmetric(o: &mut Outcome, m: &GModule, top: usize, limits: &Limits) -> Result<()> {
    let c = classical_c(m, top, limits)?;
    let cs = symmetric_cs(&c)?;
    let nc = normalized_nc(&c)?;
    let ks = resolution_complex(Kind::KS, m, top, limits)?;
    let kl = resolution_complex(Kind::KLambda, m, top, limits)?;
    let by_meet = c_lambda_by_intersection(&cs, &nc, &c)?;
    let by_psi = c_lambda_by_psi(&kl, &c)?;
    let (subs_cs, a, b) = (cs.subgroups.unwrap(), by_meet.subgroups.unwrap(), by_psi.subgroups.unwrap());
    for n in 0..=top {
        let image = psi_into_c(&ks, n)?.image();
        o.expect(image.same_subgroup(&subs_cs[n]), || format!("{} CS^{n} ≠ ψ(KS^{n})", name(m)));
        o.expect(a[n].same_subgroup(&b[n]), || format!("{} C_λ^{n} routes differ", name(m)));
    }
    Ok(())
}
