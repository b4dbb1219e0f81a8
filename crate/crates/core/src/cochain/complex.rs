use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::zmod::{homology_at, induced_map, AbHom, Embedded, Homology, PresentedAb};

/// Which of the nine cochain complexes a [`CochainComplex`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    C,
    NC,
    K,
    NK,
    CS,
    KS,
    KLambda,
    CLambda,
    DeltaHom,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::C => "C",
            Kind::NC => "NC",
            Kind::K => "K",
            Kind::NK => "NK",
            Kind::CS => "CS",
            Kind::KS => "KS",
            Kind::KLambda => "K_λ",
            Kind::CLambda => "C_λ",
            Kind::DeltaHom => "Δ-hom",
        }
    }

    /// The inhomogeneous partner under `ψ`, if there is one.
    pub fn psi_partner(self) -> Option<Kind> {
        match self {
            Kind::K => Some(Kind::C),
            Kind::NK => Some(Kind::NC),
            Kind::KS => Some(Kind::CS),
            Kind::KLambda => Some(Kind::CLambda),
            _ => None,
        }
    }
}

/// `C^0 → C^1 → ... → C^{N+1}`; cohomology is available in degrees `0..=N`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    kind: Kind,
    groups: Vec<PresentedAb>,
    diffs: Vec<AbHom>,
}

impl CochainComplex {
    /// `groups` has one more entry than `diffs`, and `diffs[n]: groups[n] → groups[n+1]`.
    pub fn new(kind: Kind, groups: Vec<PresentedAb>, diffs: Vec<AbHom>) -> Result<Self> {
        if groups.len() != diffs.len() + 1 || diffs.is_empty() {
            return Err(Error::Dimension(format!("{} groups for {} differentials", groups.len(), diffs.len())));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.source() != &groups[n] || d.target() != &groups[n + 1] {
                return Err(Error::Dimension(format!("differential {n} has the wrong source or target")));
            }
        }
        Ok(CochainComplex { kind, groups, diffs })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Largest degree whose cohomology can be computed.
    pub fn top_degree(&self) -> usize {
        self.diffs.len() - 1
    }

    pub fn group(&self, n: usize) -> &PresentedAb {
        &self.groups[n]
    }

    pub fn diff(&self, n: usize) -> &AbHom {
        &self.diffs[n]
    }

    /// `d^{n-1}`, or the zero map from the trivial group when `n = 0`.
    pub fn incoming(&self, n: usize) -> AbHom {
        if n == 0 {
            AbHom::zero(&PresentedAb::zero(), &self.groups[0])
        } else {
            self.diffs[n - 1].clone()
        }
    }

    /// Checks `d^{n+1} ∘ d^n = 0` in every degree.
    pub fn verify(&self) -> Result<()> {
        (0..self.diffs.len().saturating_sub(1)).into_par_iter().try_for_each(|n| {
            if self.diffs[n + 1].compose(&self.diffs[n])?.is_zero() {
                Ok(())
            } else {
                Err(Error::NonZeroComposite(format!("{}: d^{} ∘ d^{n} ≠ 0", self.kind.label(), n + 1)))
            }
        })
    }

    pub fn homology(&self, n: usize) -> Result<Homology> {
        homology_at(&self.incoming(n), &self.diffs[n])
    }

    /// Homology in every degree `0..=N`, computed in parallel.
    pub fn all_homology(&self) -> Result<Vec<Homology>> {
        (0..=self.top_degree()).into_par_iter().map(|n| self.homology(n)).collect()
    }

    /// Truncates to cohomology degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> CochainComplex {
        let n = n.min(self.top_degree());
        CochainComplex { kind: self.kind, groups: self.groups[..n + 2].to_vec(), diffs: self.diffs[..n + 1].to_vec() }
    }

    /// The subcomplex on `subs[n] ⊂ C^n`, with its inclusion.
    pub fn restrict(&self, kind: Kind, subs: &[Embedded]) -> Result<(CochainComplex, ChainMap)> {
        if subs.len() != self.groups.len() {
            return Err(Error::Dimension(format!("{} subgroups for {} degrees", subs.len(), self.groups.len())));
        }
        let diffs: Result<Vec<AbHom>> = (0..self.diffs.len())
            .into_par_iter()
            .map(|n| {
                let image = self.diffs[n].matrix().mul(&subs[n].incl);
                let m = subs[n + 1].coords_matrix(&image).ok_or_else(|| {
                    Error::NotChainMap(format!("{} is not closed under d^{n}", kind.label()))
                })?;
                Ok(AbHom::new_unchecked(subs[n].group.clone(), subs[n + 1].group.clone(), m))
            })
            .collect();
        let groups = subs.iter().map(|s| s.group.clone()).collect();
        let sub = CochainComplex::new(kind, groups, diffs?)?;
        let incl = ChainMap {
            label: format!("{} ⊂ {}", kind.label(), self.kind.label()),
            maps: subs.iter().map(Embedded::inclusion).collect(),
        };
        Ok((sub, incl))
    }
}

/// Degreewise homomorphisms between two complexes, in degrees `0..=N+1`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub label: String,
    pub maps: Vec<AbHom>,
}

impl ChainMap {
    pub fn degree(&self, n: usize) -> &AbHom {
        &self.maps[n]
    }

    /// Checks every square `d'^n ∘ f^n = f^{n+1} ∘ d^n`.
    pub fn verify(&self, source: &CochainComplex, target: &CochainComplex) -> Result<()> {
        let top = source.top_degree().min(target.top_degree());
        if self.maps.len() < top + 2 {
            return Err(Error::Dimension(format!("{}: only {} degrees", self.label, self.maps.len())));
        }
        (0..=top).into_par_iter().try_for_each(|n| {
            let left = target.diff(n).compose(&self.maps[n])?;
            let right = self.maps[n + 1].compose(source.diff(n))?;
            if left.equals(&right) {
                Ok(())
            } else {
                Err(Error::NotChainMap(format!("{}: square at degree {n} does not commute", self.label)))
            }
        })
    }

    /// The map induced on `H^n`.
    pub fn induced(&self, source: &Homology, target: &Homology, n: usize) -> Result<AbHom> {
        induced_map(source, target, self.maps[n].matrix())
    }

    /// `self ∘ first`, degreewise.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        let maps: Result<Vec<AbHom>> = self.maps.iter().zip(&first.maps).map(|(a, b)| a.compose(b)).collect();
        Ok(ChainMap { label: format!("{}∘{}", self.label, first.label), maps: maps? })
    }

    pub fn is_degreewise_iso(&self) -> bool {
        self.maps.par_iter().all(|m| m.is_iso())
    }
}
