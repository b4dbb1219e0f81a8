//! Inhomogeneous cochains `C^n(G, M) = Map(G^n, M)` and their subcomplexes.
//!
//! Coordinates of `C^n` are blocks of `M`-generators, one block per tuple
//! `(g_1, ..., g_n)` in lexicographic order of element indices. This route
//! exists to cross-check the homogeneous one and is limited by
//! [`Limits::max_cochain`].

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::gmod::GModule;
use crate::grp::Group;
use crate::zmod::{int, AbHom, Embedded, IntMatrix, PresentedAb};

use super::complex::{ChainMap, CochainComplex, Kind};
use super::resolution::BuiltComplex;

/// Index of `tuple` among all tuples of its length.
fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

fn tuple_at(order: usize, n: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    t
}

fn cochain_group(module: &GModule, n: usize) -> PresentedAb {
    let count = module.group().order().pow(n as u32);
    PresentedAb::direct_sum(&vec![module.carrier().clone(); count])
}

/// Adds `sign · a` into the block at (`row_block`, `col_block`).
fn add_block(out: &mut IntMatrix, m: usize, row_block: usize, col_block: usize, a: &IntMatrix, sign: i64) {
    let s = int(sign);
    for i in 0..m {
        for j in 0..m {
            if !a[(i, j)].is_zero() {
                out[(row_block * m + i, col_block * m + j)] += &a[(i, j)] * &s;
            }
        }
    }
}

/// `(dφ)(g_1..g_{n+1}) = g_1 φ(g_2..) + Σ (-1)^i φ(.., g_i g_{i+1}, ..) + (-1)^{n+1} φ(g_1..g_n)`.
fn classical_differential(module: &GModule, n: usize) -> IntMatrix {
    let g = module.group();
    let d = g.order();
    let m = module.carrier().gens();
    let id = IntMatrix::identity(m);
    let rows = d.pow(n as u32 + 1);
    let mut out = IntMatrix::zeros(rows * m, d.pow(n as u32) * m);
    for r in 0..rows {
        let t = tuple_at(d, n + 1, r);
        add_block(&mut out, m, r, tuple_index(d, &t[1..]), module.action(t[0]), 1);
        for i in 1..=n {
            let mut merged = t[..i - 1].to_vec();
            merged.push(g.mul(t[i - 1], t[i]));
            merged.extend_from_slice(&t[i + 1..]);
            add_block(&mut out, m, r, tuple_index(d, &merged), &id, if i % 2 == 0 { 1 } else { -1 });
        }
        add_block(&mut out, m, r, tuple_index(d, &t[..n]), &id, if (n + 1).is_multiple_of(2) { 1 } else { -1 });
    }
    out
}

/// The full inhomogeneous complex in degrees `0..=max_degree`.
pub fn classical_c(module: &GModule, max_degree: usize, limits: &Limits) -> Result<BuiltComplex> {
    let d = module.group().order() as u128;
    let m = module.carrier().gens() as u128;
    let size = d.saturating_pow(max_degree as u32 + 1).saturating_mul(m);
    limits.check_cochain(format!("C^{} of {}", max_degree + 1, module.group().label()), size)?;
    let groups: Vec<PresentedAb> = (0..=max_degree + 1).map(|n| cochain_group(module, n)).collect();
    let diffs: Vec<AbHom> = (0..=max_degree)
        .into_par_iter()
        .map(|n| AbHom::new_unchecked(groups[n].clone(), groups[n + 1].clone(), classical_differential(module, n)))
        .collect();
    let complex = CochainComplex::new(Kind::C, groups, diffs)?;
    Ok(BuiltComplex { complex, module: module.clone(), resolution: None, subgroups: None })
}

struct Classical<'a> {
    module: &'a GModule,
    group: &'a Arc<Group>,
}

impl<'a> Classical<'a> {
    fn of(c: &'a BuiltComplex) -> Result<Self> {
        if c.kind() != Kind::C {
            return Err(Error::Mismatch(format!("expected the classical complex, got {}", c.kind().label())));
        }
        Ok(Classical { module: &c.module, group: c.module.group() })
    }

    /// Subgroup of `C^n` of cochains vanishing on every tuple outside `keep`.
    fn support(&self, n: usize, keep: impl Fn(&[usize]) -> bool) -> Embedded {
        let d = self.group.order();
        let m = self.module.carrier().gens();
        let ambient = cochain_group(self.module, n);
        let kept: Vec<usize> = (0..d.pow(n as u32)).filter(|&i| keep(&tuple_at(d, n, i))).collect();
        let group = PresentedAb::direct_sum(&vec![self.module.carrier().clone(); kept.len()]);
        let mut incl = IntMatrix::zeros(ambient.gens(), group.gens());
        for (k, &i) in kept.iter().enumerate() {
            for j in 0..m {
                incl[(i * m + j, k * m + j)] = int(1);
            }
        }
        Embedded::new(group, ambient, incl)
    }
}

fn sub_built(c: &BuiltComplex, kind: Kind, subs: Vec<Embedded>) -> Result<BuiltComplex> {
    let (complex, _) = c.complex.restrict(kind, &subs)?;
    Ok(BuiltComplex { complex, module: c.module.clone(), resolution: None, subgroups: Some(subs) })
}

/// `NC ⊂ C`: cochains vanishing whenever some argument is the identity.
pub fn normalized_nc(c: &BuiltComplex) -> Result<BuiltComplex> {
    let cl = Classical::of(c)?;
    let subs = (0..=c.top_degree() + 1).map(|n| cl.support(n, |t| t.iter().all(|&g| g != 0))).collect();
    sub_built(c, Kind::NC, subs)
}

/// Matrix of the transposition `τ_i` (`1 ≤ i ≤ n`) acting on `C^n`:
/// `τ_1 φ(g_1..) = -g_1 φ(g_1^{-1}, g_1 g_2, g_3, ..)`,
/// `τ_i φ(..) = -φ(.., g_{i-1} g_i, g_i^{-1}, g_i g_{i+1}, ..)` for `1 < i < n`,
/// `τ_n φ(..) = -φ(.., g_{n-1} g_n, g_n^{-1})`.
pub fn tau_matrix(module: &GModule, n: usize, i: usize) -> IntMatrix {
    assert!((1..=n).contains(&i));
    let g = module.group();
    let d = g.order();
    let m = module.carrier().gens();
    let id = IntMatrix::identity(m);
    let count = d.pow(n as u32);
    let mut out = IntMatrix::zeros(count * m, count * m);
    for r in 0..count {
        let t = tuple_at(d, n, r);
        let mut s = t.clone();
        if i == 1 {
            s[0] = g.inv(t[0]);
            if n > 1 {
                s[1] = g.mul(t[0], t[1]);
            }
            add_block(&mut out, m, r, tuple_index(d, &s), module.action(t[0]), -1);
        } else {
            // positions are 1-based in the formula
            s[i - 2] = g.mul(t[i - 2], t[i - 1]);
            s[i - 1] = g.inv(t[i - 1]);
            if i < n {
                s[i] = g.mul(t[i - 1], t[i]);
            }
            add_block(&mut out, m, r, tuple_index(d, &s), &id, -1);
        }
    }
    out
}

/// Invariants of all adjacent transpositions on `C^n`.
fn symmetric_subgroup(module: &GModule, n: usize) -> Embedded {
    let ambient = cochain_group(module, n);
    if n == 0 {
        return Embedded::whole(&ambient);
    }
    let id = IntMatrix::identity(ambient.gens());
    let blocks: Vec<IntMatrix> = (1..=n).map(|i| tau_matrix(module, n, i).sub(&id)).collect();
    let target = PresentedAb::direct_sum(&vec![ambient.clone(); n]);
    AbHom::new_unchecked(ambient.clone(), target, IntMatrix::vstack_all(ambient.gens(), &blocks)).kernel()
}

/// `CS ⊂ C`, the cochains fixed by the symmetric group action.
pub fn symmetric_cs(c: &BuiltComplex) -> Result<BuiltComplex> {
    let module = Classical::of(c)?.module;
    let subs = (0..=c.top_degree() + 1).into_par_iter().map(|n| symmetric_subgroup(module, n)).collect();
    sub_built(c, Kind::CS, subs)
}

/// `C_λ = CS ∩ NC`, computed inside `C`.
pub fn c_lambda_by_intersection(cs: &BuiltComplex, nc: &BuiltComplex, c: &BuiltComplex) -> Result<BuiltComplex> {
    let (Some(a), Some(b)) = (&cs.subgroups, &nc.subgroups) else {
        return Err(Error::Mismatch("C_λ needs CS and NC as subcomplexes of C".into()));
    };
    if cs.kind() != Kind::CS || nc.kind() != Kind::NC {
        return Err(Error::Mismatch("C_λ needs CS and NC".into()));
    }
    let subs = a.par_iter().zip(b).map(|(x, y)| x.intersection(y)).collect();
    sub_built(c, Kind::CLambda, subs)
}

/// `C_λ = ψ(K_λ)`, the default route.
pub fn c_lambda_by_psi(k_lambda: &BuiltComplex, c: &BuiltComplex) -> Result<BuiltComplex> {
    if k_lambda.kind() != Kind::KLambda {
        return Err(Error::Mismatch("expected K_λ".into()));
    }
    let subs = (0..=c.top_degree() + 1)
        .into_par_iter()
        .map(|n| Ok(psi_into_c(k_lambda, n)?.image()))
        .collect::<Result<_>>()?;
    sub_built(c, Kind::CLambda, subs)
}

/// `ψ^n(f)(g_1..g_n) = f(1, g_1, g_1 g_2, ..)` as a map into the full `C^n`.
pub fn psi_into_c(k: &BuiltComplex, n: usize) -> Result<AbHom> {
    let res = k.resolution.as_ref().ok_or_else(|| Error::Mismatch("ψ needs a homogeneous complex".into()))?;
    let module = &k.module;
    let g = module.group();
    let d = g.order();
    let m = module.carrier().gens();
    let f = res.based(n);
    let hom = &res.homs[n];
    let mut out = IntMatrix::zeros(d.pow(n as u32) * m, hom.group().gens());
    for r in 0..d.pow(n as u32) {
        let t = tuple_at(d, n, r);
        let mut y = Vec::with_capacity(n + 1);
        y.push(0);
        for &x in &t {
            y.push(g.mul(*y.last().unwrap(), x));
        }
        if let Some((b, s)) = f.canonical(&y) {
            hom.accumulate_evaluation(&mut out, r * m, b, s);
        }
    }
    let full = AbHom::new_unchecked(hom.group().clone(), cochain_group(module, n), out);
    match &k.subgroups {
        None => Ok(full),
        Some(subs) => full.compose(&subs[n].inclusion()),
    }
}

/// `ψ` between a homogeneous complex and its inhomogeneous partner.
pub fn psi_chain_map(k: &BuiltComplex, c_side: &BuiltComplex) -> Result<ChainMap> {
    if k.kind().psi_partner() != Some(c_side.kind()) {
        return Err(Error::Mismatch(format!("ψ does not pair {} with {}", k.kind().label(), c_side.kind().label())));
    }
    let top = k.top_degree().min(c_side.top_degree());
    let maps = (0..=top + 1)
        .into_par_iter()
        .map(|n| {
            let full = psi_into_c(k, n)?;
            match &c_side.subgroups {
                None => Ok(full),
                Some(subs) => {
                    let m = subs[n].coords_matrix(full.matrix()).ok_or_else(|| {
                        Error::NotChainMap(format!("ψ does not land in {}^{n}", c_side.kind().label()))
                    })?;
                    Ok(AbHom::new_unchecked(full.source().clone(), subs[n].group.clone(), m))
                }
            }
        })
        .collect::<Result<_>>()?;
    Ok(ChainMap { label: format!("ψ: {}→{}", k.kind().label(), c_side.kind().label()), maps })
}
