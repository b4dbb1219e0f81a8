//! G-modules that are free over `Z` (or `F2`) on a finite basis of tuples of
//! group elements, permuted by the group up to sign.
//!
//! The four families are the tensor powers `T^n`, the exterior powers
//! `Λ^n`, the repeat part `Δ^n` and the weak exterior powers `Λ~^n = Λ^n ⊕ Δ^n`
//! of `Z[G]`. Every element of a family is a tuple; [`BasedModule::canonical`]
//! maps an arbitrary tuple of the right length to `± basis element` or zero.
//!
//! All boundaries use `∂(x_0, ..., x_n) = Σ (-1)^j (x_0, ..., x̂_j, ..., x_n)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::grp::{Group, Subgroup};
use crate::zmod::{int, AbHom, IntMatrix, PresentedAb};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Tensor,
    Exterior,
    Delta,
    TildeExterior,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Tensor => "T",
            Family::Exterior => "Λ",
            Family::Delta => "Δ",
            Family::TildeExterior => "Λ~",
        }
    }
}

/// Characteristic of a basis element: free over `Z`, or killed by 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Zero,
    Two,
}

/// `Σ coefficient · e_index`, sorted by index, no zero coefficients.
pub type Chain = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct BasedModule {
    group: Arc<Group>,
    family: Family,
    degree: usize,
    basis: Vec<Vec<usize>>,
    chars: Vec<Characteristic>,
    index: HashMap<Vec<usize>, usize>,
}

impl BasedModule {
    /// `T^n(Z[G])`: all `n`-tuples, diagonal action.
    pub fn tensor_power(group: &Arc<Group>, n: usize, limits: &Limits) -> Result<Self> {
        assert!(n >= 1, "tensor powers start at degree 1");
        let d = group.order() as u128;
        limits.check_basis(format!("T^{n} of {}", group.label()), d.saturating_pow(n as u32))?;
        let basis = all_tuples(group.order(), n);
        Ok(Self::assemble(group, Family::Tensor, n, basis, |_| Characteristic::Zero))
    }

    /// `Λ^n(Z[G])`: strictly increasing tuples; zero when `n > |G|`.
    pub fn exterior_power(group: &Arc<Group>, n: usize, limits: &Limits) -> Result<Self> {
        assert!(n >= 1, "exterior powers start at degree 1");
        limits.check_basis(format!("Λ^{n} of {}", group.label()), binomial(group.order() as u128, n as u128))?;
        let basis = strict_tuples(group.order(), n);
        Ok(Self::assemble(group, Family::Exterior, n, basis, |_| Characteristic::Zero))
    }

    /// `Δ^n(Z[G])`: weakly increasing tuples with a repeat, over `F2`.
    pub fn delta_power(group: &Arc<Group>, n: usize, limits: &Limits) -> Result<Self> {
        assert!(n >= 1, "delta powers start at degree 1");
        let d = group.order() as u128;
        let size = binomial(d + n as u128 - 1, n as u128) - binomial(d, n as u128);
        limits.check_basis(format!("Δ^{n} of {}", group.label()), size)?;
        let basis: Vec<Vec<usize>> = weak_tuples(group.order(), n).into_iter().filter(|t| has_repeat(t)).collect();
        Ok(Self::assemble(group, Family::Delta, n, basis, |_| Characteristic::Two))
    }

    /// `Λ~^n(Z[G]) = Λ^n ⊕ Δ^n`; the strict tuples come first.
    pub fn tilde_exterior_power(group: &Arc<Group>, n: usize, limits: &Limits) -> Result<Self> {
        assert!(n >= 1, "weak exterior powers start at degree 1");
        let d = group.order() as u128;
        limits.check_basis(format!("Λ~^{n} of {}", group.label()), binomial(d + n as u128 - 1, n as u128))?;
        let mut basis = strict_tuples(group.order(), n);
        basis.extend(weak_tuples(group.order(), n).into_iter().filter(|t| has_repeat(t)));
        Ok(Self::assemble(group, Family::TildeExterior, n, basis, |t| {
            if has_repeat(t) {
                Characteristic::Two
            } else {
                Characteristic::Zero
            }
        }))
    }

    pub fn build(family: Family, group: &Arc<Group>, n: usize, limits: &Limits) -> Result<Self> {
        match family {
            Family::Tensor => Self::tensor_power(group, n, limits),
            Family::Exterior => Self::exterior_power(group, n, limits),
            Family::Delta => Self::delta_power(group, n, limits),
            Family::TildeExterior => Self::tilde_exterior_power(group, n, limits),
        }
    }

    fn assemble(
        group: &Arc<Group>,
        family: Family,
        degree: usize,
        basis: Vec<Vec<usize>>,
        chr: impl Fn(&[usize]) -> Characteristic,
    ) -> Self {
        let chars = basis.iter().map(|t| chr(t)).collect();
        let index = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        BasedModule { group: Arc::clone(group), family, degree, basis, chars, index }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn tuple(&self, b: usize) -> &[usize] {
        &self.basis[b]
    }

    pub fn characteristic(&self, b: usize) -> Characteristic {
        self.chars[b]
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// Indices of the `Λ` block (for `Λ~` only the strict tuples).
    pub fn strict_part(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.chars[b] == Characteristic::Zero).collect()
    }

    /// `Z^basis` with `2e = 0` on every characteristic-two generator.
    pub fn carrier(&self) -> PresentedAb {
        let two: Vec<usize> = (0..self.len()).filter(|&b| self.chars[b] == Characteristic::Two).collect();
        let mut rels = IntMatrix::zeros(self.len(), two.len());
        for (k, &b) in two.iter().enumerate() {
            rels[(b, k)] = int(2);
        }
        PresentedAb::new(self.len(), rels).expect("dimensions agree")
    }

    /// Writes an arbitrary tuple of this length as `± e_b`, or `None` when it is zero.
    pub fn canonical(&self, tuple: &[usize]) -> Option<(usize, i64)> {
        debug_assert_eq!(tuple.len(), self.degree);
        match self.family {
            Family::Tensor => Some((self.index[tuple], 1)),
            Family::Exterior => {
                let (sorted, sign) = sort_with_sign(tuple);
                if has_repeat(&sorted) {
                    None
                } else {
                    Some((self.index[&sorted], sign))
                }
            }
            Family::Delta => {
                let (sorted, _) = sort_with_sign(tuple);
                if has_repeat(&sorted) {
                    Some((self.index[&sorted], 1))
                } else {
                    None
                }
            }
            Family::TildeExterior => {
                let (sorted, sign) = sort_with_sign(tuple);
                let b = self.index[&sorted];
                if has_repeat(&sorted) {
                    Some((b, 1))
                } else {
                    Some((b, sign))
                }
            }
        }
    }

    /// `g · e_b = sign · e_{b'}`.
    pub fn act(&self, g: usize, b: usize) -> (usize, i64) {
        let moved: Vec<usize> = self.basis[b].iter().map(|&x| self.group.mul(g, x)).collect();
        self.canonical(&moved).expect("left multiplication keeps tuples nonzero")
    }

    /// Accumulates `coefficient · tuple` into a chain, reducing mod 2 where needed.
    fn push_tuple(&self, acc: &mut HashMap<usize, i64>, tuple: &[usize], coefficient: i64) {
        if let Some((b, s)) = self.canonical(tuple) {
            *acc.entry(b).or_insert(0) += s * coefficient;
        }
    }

    fn finish(&self, acc: HashMap<usize, i64>) -> Chain {
        let mut out: Chain = acc
            .into_iter()
            .map(|(b, c)| match self.chars[b] {
                Characteristic::Two => (b, c.rem_euclid(2)),
                Characteristic::Zero => (b, c),
            })
            .filter(|&(_, c)| c != 0)
            .collect();
        out.sort_unstable();
        out
    }

    /// Orbits, stabilizers and sign characters of the action on the basis.
    pub fn orbit_decomposition(&self) -> OrbitDecomposition {
        let n = self.group.order();
        let mut transport: Vec<Option<Transport>> = vec![None; self.len()];
        let mut orbits = Vec::new();
        for rep in 0..self.len() {
            if transport[rep].is_some() {
                continue;
            }
            let id = orbits.len();
            let mut stab = Vec::new();
            let mut signs = Vec::new();
            let mut members = Vec::new();
            for g in 0..n {
                let (b, s) = self.act(g, rep);
                if b == rep {
                    stab.push(g);
                    signs.push(s as i8);
                }
                if transport[b].is_none() {
                    transport[b] = Some(Transport { orbit: id, element: g, sign: s });
                    members.push(b);
                }
            }
            members.sort_unstable();
            let characteristic = self.chars[rep];
            let character =
                if characteristic == Characteristic::Two { vec![1; stab.len()] } else { signs };
            orbits.push(Orbit {
                rep,
                stabilizer: self.group.subgroup(&stab).expect("stabilizers are subgroups"),
                character,
                characteristic,
                members,
            });
        }
        OrbitDecomposition { orbits, transport: transport.into_iter().map(|t| t.unwrap()).collect() }
    }
}

/// `element · e_rep = sign · e_b` for the orbit containing `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transport {
    pub orbit: usize,
    pub element: usize,
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Smallest basis index in the orbit.
    pub rep: usize,
    pub stabilizer: Subgroup,
    /// Sign by which each stabilizer element (in stabilizer order) acts on the representative.
    pub character: Vec<i8>,
    pub characteristic: Characteristic,
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn is_free(&self) -> bool {
        self.stabilizer.order() == 1
    }

    pub fn has_trivial_character(&self) -> bool {
        self.character.iter().all(|&s| s == 1)
    }
}

#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
    pub transport: Vec<Transport>,
}

/// Equivariant linear map between based modules, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedMap {
    pub source_len: usize,
    pub target_len: usize,
    pub columns: Vec<Chain>,
}

impl BasedMap {
    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target_len, self.source_len);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, c) in col {
                m[(i, j)] = int(c);
            }
        }
        m
    }

    pub fn to_abhom(&self, source: &BasedModule, target: &BasedModule) -> AbHom {
        AbHom::new_unchecked(source.carrier(), target.carrier(), self.matrix())
    }
}

fn check_same_group(a: &BasedModule, b: &BasedModule) -> Result<()> {
    if a.group != b.group {
        return Err(Error::Mismatch("based modules over different groups".into()));
    }
    Ok(())
}

/// `∂ : F_{n+1} → F_n` for two consecutive members of one family.
pub fn boundary(source: &BasedModule, target: &BasedModule) -> Result<BasedMap> {
    check_same_group(source, target)?;
    if source.family != target.family {
        return Err(Error::Mismatch(format!(
            "boundary between families {} and {}",
            source.family.symbol(),
            target.family.symbol()
        )));
    }
    if source.degree != target.degree + 1 {
        return Err(Error::Mismatch(format!("boundary from degree {} to {}", source.degree, target.degree)));
    }
    let columns = (0..source.len())
        .map(|b| {
            let t = source.tuple(b);
            let mut acc = HashMap::new();
            for j in 0..t.len() {
                let mut face = t.to_vec();
                face.remove(j);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                target.push_tuple(&mut acc, &face, sign);
            }
            target.finish(acc)
        })
        .collect();
    Ok(BasedMap { source_len: source.len(), target_len: target.len(), columns })
}

/// Augmentation `F_1 → Z`, each group element to 1 (zero on `Δ^1 = 0`).
pub fn augmentation(first: &BasedModule) -> AbHom {
    assert_eq!(first.degree, 1, "augmentation starts from degree one");
    let m = IntMatrix::from_fn(1, first.len(), |_, _| int(1));
    AbHom::new_unchecked(first.carrier(), PresentedAb::free(1), m)
}

/// `h(x_0, ..., x_n) = (1, x_0, ..., x_n)` from `F_n` to `F_{n+1}`.
pub fn contracting_homotopy(source: &BasedModule, target: &BasedModule) -> Result<BasedMap> {
    check_same_group(source, target)?;
    if source.family != target.family || target.degree != source.degree + 1 {
        return Err(Error::Mismatch("contracting homotopy needs the next member of the family".into()));
    }
    let columns = (0..source.len())
        .map(|b| {
            let mut t = vec![0];
            t.extend_from_slice(source.tuple(b));
            let mut acc = HashMap::new();
            target.push_tuple(&mut acc, &t, 1);
            target.finish(acc)
        })
        .collect();
    Ok(BasedMap { source_len: source.len(), target_len: target.len(), columns })
}

/// The map sending each basis tuple of `source` to its canonical form in
/// `target` (same tuple length). This realizes the quotients
/// `T → Λ~ → Λ`, the splitting `Λ → Λ~`, and the inclusion and projection of `Δ`.
pub fn retuple(source: &BasedModule, target: &BasedModule) -> Result<BasedMap> {
    check_same_group(source, target)?;
    if source.degree != target.degree {
        return Err(Error::Mismatch("retuple between different degrees".into()));
    }
    let columns = (0..source.len())
        .map(|b| {
            let mut acc = HashMap::new();
            target.push_tuple(&mut acc, source.tuple(b), 1);
            target.finish(acc)
        })
        .collect();
    Ok(BasedMap { source_len: source.len(), target_len: target.len(), columns })
}

fn sort_with_sign(t: &[usize]) -> (Vec<usize>, i64) {
    let mut v = t.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions of unequal entries
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (v, sign)
}

fn has_repeat(sorted: &[usize]) -> bool {
    sorted.windows(2).any(|w| w[0] == w[1])
}

fn all_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn strict_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in start..d {
            cur.push(x);
            rec(x + 1, d, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, n, &mut Vec::new(), &mut out);
    out
}

fn weak_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in start..d {
            cur.push(x);
            rec(x, d, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, n, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::homology_at;

    fn grp(spec: &str) -> Arc<Group> {
        Arc::new(Group::parse_spec(spec).unwrap())
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn tensor_examples() {
        let c2 = grp("C2");
        let t1 = BasedModule::tensor_power(&c2, 1, &lim()).unwrap();
        assert_eq!(t1.len(), 2);
        assert_eq!(t1.act(1, 0), (1, 1));
        let t2 = BasedModule::tensor_power(&c2, 2, &lim()).unwrap();
        let od = t2.orbit_decomposition();
        assert_eq!(t2.len(), 4);
        assert_eq!(od.orbits.len(), 2);
        assert!(od.orbits.iter().all(Orbit::is_free));
        let t2c3 = BasedModule::tensor_power(&grp("C3"), 2, &lim()).unwrap();
        assert_eq!(t2c3.len(), 9);
        assert_eq!(t2c3.orbit_decomposition().orbits.len(), 3);
    }

    #[test]
    fn exterior_examples() {
        let c2 = grp("C2");
        let l2 = BasedModule::exterior_power(&c2, 2, &lim()).unwrap();
        assert_eq!(l2.basis(), &[vec![0, 1]]);
        assert_eq!(l2.act(1, 0), (0, -1));
        assert!(BasedModule::exterior_power(&c2, 3, &lim()).unwrap().is_empty());
        let c3 = grp("C3");
        let l3 = BasedModule::exterior_power(&c3, 3, &lim()).unwrap();
        assert_eq!(l3.len(), 1);
        let od = l3.orbit_decomposition();
        assert_eq!(od.orbits[0].stabilizer.order(), 3);
        assert!(od.orbits[0].has_trivial_character());
        let od2 = l2.orbit_decomposition();
        assert_eq!(od2.orbits.len(), 1);
        assert_eq!(od2.orbits[0].character, vec![1, -1]);
    }

    #[test]
    fn delta_examples() {
        let c2 = grp("C2");
        assert!(BasedModule::delta_power(&c2, 1, &lim()).unwrap().is_empty());
        let d2 = BasedModule::delta_power(&c2, 2, &lim()).unwrap();
        assert_eq!(d2.basis(), &[vec![0, 0], vec![1, 1]]);
        assert_eq!(d2.orbit_decomposition().orbits.len(), 1);
        let d3 = BasedModule::delta_power(&c2, 3, &lim()).unwrap();
        assert_eq!(d3.len(), 4);
        let od = d3.orbit_decomposition();
        assert_eq!(od.orbits.len(), 2);
        assert!(od.orbits.iter().all(Orbit::is_free));
    }

    #[test]
    fn tilde_examples() {
        let c2 = grp("C2");
        let t2 = BasedModule::tilde_exterior_power(&c2, 2, &lim()).unwrap();
        assert_eq!(t2.len(), 3);
        assert_eq!(t2.strict_part(), vec![0]);
        let t1 = BasedModule::tilde_exterior_power(&c2, 1, &lim()).unwrap();
        assert_eq!(t1.basis(), BasedModule::tensor_power(&c2, 1, &lim()).unwrap().basis());
        let t4 = BasedModule::tilde_exterior_power(&c2, 4, &lim()).unwrap();
        assert!(t4.strict_part().is_empty());
        assert_eq!(t4.len(), 5);
    }

    #[test]
    fn boundary_examples() {
        let c2 = grp("C2");
        let l2 = BasedModule::exterior_power(&c2, 2, &lim()).unwrap();
        let l1 = BasedModule::exterior_power(&c2, 1, &lim()).unwrap();
        // ∂(1∧t) = t − 1 with the alternating-omit convention.
        assert_eq!(boundary(&l2, &l1).unwrap().columns[0], vec![(0, -1), (1, 1)]);
        let t2 = BasedModule::tensor_power(&c2, 2, &lim()).unwrap();
        let t1 = BasedModule::tensor_power(&c2, 1, &lim()).unwrap();
        // (g0, g1) = (1, t) ↦ t − 1
        let b = t2.index_of(&[0, 1]).unwrap();
        assert_eq!(boundary(&t2, &t1).unwrap().columns[b], vec![(0, -1), (1, 1)]);
        let d3 = BasedModule::delta_power(&c2, 3, &lim()).unwrap();
        let d2 = BasedModule::delta_power(&c2, 2, &lim()).unwrap();
        let b = d3.index_of(&[0, 0, 1]).unwrap();
        assert_eq!(boundary(&d3, &d2).unwrap().columns[b], vec![(0, 1)]);
        assert!(boundary(&d3, &l2).is_err());
        assert!(boundary(&t1, &t2).is_err());
    }

    #[test]
    fn homotopy_examples() {
        let c2 = grp("C2");
        let l1 = BasedModule::exterior_power(&c2, 1, &lim()).unwrap();
        let l2 = BasedModule::exterior_power(&c2, 2, &lim()).unwrap();
        let h = contracting_homotopy(&l1, &l2).unwrap();
        assert_eq!(h.columns[1], vec![(0, 1)]);
        assert!(h.columns[0].is_empty());
        // ∂h = id − η ε on degree one.
        let d = boundary(&l2, &l1).unwrap().matrix();
        let dh = d.mul(&h.matrix());
        let eta_eps = IntMatrix::from_rows(&[vec![1, 1], vec![0, 0]]);
        assert_eq!(dh, IntMatrix::identity(2).sub(&eta_eps));
    }

    fn chain_checks(family: Family, spec: &str, top: usize) {
        let g = grp(spec);
        let mods: Vec<BasedModule> = (1..=top + 2).map(|n| BasedModule::build(family, &g, n, &lim()).unwrap()).collect();
        for n in 0..top {
            // ∂∂ = 0
            let d1 = boundary(&mods[n + 1], &mods[n]).unwrap().to_abhom(&mods[n + 1], &mods[n]);
            let d2 = boundary(&mods[n + 2], &mods[n + 1]).unwrap().to_abhom(&mods[n + 2], &mods[n + 1]);
            assert!(d1.compose(&d2).unwrap().is_zero(), "{family:?} {spec} ∂∂ at {n}");
            // h∂ + ∂h = id on F_{n+2}, degree >= 1
            let h_lo = contracting_homotopy(&mods[n], &mods[n + 1]).unwrap().matrix();
            let h_hi = contracting_homotopy(&mods[n + 1], &mods[n + 2]).unwrap().matrix();
            let lhs = h_lo.mul(d1.matrix()).add(&d2.matrix().mul(&h_hi));
            let diff = lhs.sub(&IntMatrix::identity(mods[n + 1].len()));
            assert!(mods[n + 1].carrier().columns_vanish(&diff), "{family:?} {spec} h∂+∂h at {n}");
        }
    }

    #[test]
    fn chain_identities() {
        for spec in ["C2", "C3", "S3"] {
            chain_checks(Family::Tensor, spec, 2);
            chain_checks(Family::Exterior, spec, 4);
            chain_checks(Family::TildeExterior, spec, 4);
        }
        chain_checks(Family::TildeExterior, "C2", 7);
    }

    #[test]
    fn tilde_boundary_is_block_diagonal() {
        for spec in ["C2", "C3", "C2xC2"] {
            let g = grp(spec);
            for n in 1..5 {
                let hi = BasedModule::tilde_exterior_power(&g, n + 1, &lim()).unwrap();
                let lo = BasedModule::tilde_exterior_power(&g, n, &lim()).unwrap();
                let d = boundary(&hi, &lo).unwrap();
                for (b, col) in d.columns.iter().enumerate() {
                    for &(i, _) in col {
                        assert_eq!(hi.characteristic(b), lo.characteristic(i));
                    }
                }
            }
        }
    }

    #[test]
    fn delta_resolution_is_acyclic() {
        for spec in ["C2", "C3", "C2xC2"] {
            let g = grp(spec);
            let mods: Vec<BasedModule> = (1..=7).map(|n| BasedModule::delta_power(&g, n, &lim()).unwrap()).collect();
            for k in 0..5 {
                let d_out = if k == 0 {
                    AbHom::zero(&mods[0].carrier(), &PresentedAb::zero())
                } else {
                    boundary(&mods[k], &mods[k - 1]).unwrap().to_abhom(&mods[k], &mods[k - 1])
                };
                let d_in = boundary(&mods[k + 1], &mods[k]).unwrap().to_abhom(&mods[k + 1], &mods[k]);
                assert!(homology_at(&d_in, &d_out).unwrap().group.is_trivial(), "{spec} H_{k}");
            }
        }
    }

    #[test]
    fn boundary_is_equivariant() {
        let g = grp("S3");
        for family in [Family::Tensor, Family::Exterior, Family::Delta, Family::TildeExterior] {
            let hi = BasedModule::build(family, &g, 3, &lim()).unwrap();
            let lo = BasedModule::build(family, &g, 2, &lim()).unwrap();
            let d = boundary(&hi, &lo).unwrap().matrix();
            for x in 0..g.order() {
                let act = |m: &BasedModule| {
                    let mut a = IntMatrix::zeros(m.len(), m.len());
                    for b in 0..m.len() {
                        let (c, s) = m.act(x, b);
                        a[(c, b)] = int(s);
                    }
                    a
                };
                let diff = d.mul(&act(&hi)).sub(&act(&lo).mul(&d));
                assert!(lo.carrier().columns_vanish(&diff));
            }
        }
    }

    #[test]
    fn stabilizers_divide_degree() {
        for spec in ["C4", "C2xC2", "S3", "D4"] {
            let g = grp(spec);
            for n in 1..=g.order().min(6) {
                let l = BasedModule::exterior_power(&g, n, &lim()).unwrap();
                for o in l.orbit_decomposition().orbits {
                    assert_eq!(n % o.stabilizer.order(), 0, "{spec} Λ^{n}");
                }
            }
        }
    }

    #[test]
    fn delta_two_and_three_are_free() {
        for spec in ["C2", "C3", "S3", "C2xC2"] {
            let g = grp(spec);
            let d = g.order();
            let d2 = BasedModule::delta_power(&g, 2, &lim()).unwrap();
            let d3 = BasedModule::delta_power(&g, 3, &lim()).unwrap();
            assert_eq!(d2.len(), d);
            assert_eq!(d3.len(), d * d);
            assert!(d2.orbit_decomposition().orbits.iter().all(Orbit::is_free));
            assert!(d3.orbit_decomposition().orbits.iter().all(Orbit::is_free));
        }
    }

    #[test]
    fn guard_trips() {
        let g = grp("S5");
        let err = BasedModule::tensor_power(&g, 4, &Limits::with_max_basis(1000)).unwrap_err();
        assert!(err.to_string().contains("--max-basis"));
    }
}
