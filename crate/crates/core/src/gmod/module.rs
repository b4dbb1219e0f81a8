use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::grp::{Group, Subgroup};
use crate::zmod::{int, AbHom, Int, IntMatrix, PresentedAb, Solver};

/// A finitely generated abelian group with a left action of a finite group.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<Group>,
    carrier: PresentedAb,
    action: Vec<IntMatrix>,
    label: String,
}

/// The coefficient modules the command line understands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `Z` with trivial action.
    Integers,
    /// `Z/k` with trivial action.
    Cyclic(i64),
    /// `Z` on which the group acts through a nontrivial sign character.
    Sign,
    /// The regular representation `Z[G]`.
    GroupRing,
    /// A module read from JSON.
    File(String),
}

impl ModuleSpec {
    /// Parses `Z`, `Z/<k>`, `F2`, `Zsign`, `ZG` or `@file.json`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if let Some(path) = s.strip_prefix('@') {
            return Ok(ModuleSpec::File(path.to_string()));
        }
        match s {
            "Z" => Ok(ModuleSpec::Integers),
            "F2" => Ok(ModuleSpec::Cyclic(2)),
            "Zsign" => Ok(ModuleSpec::Sign),
            "ZG" => Ok(ModuleSpec::GroupRing),
            _ => {
                let k = s
                    .strip_prefix("Z/")
                    .and_then(|k| k.parse::<i64>().ok())
                    .filter(|&k| k >= 2)
                    .ok_or_else(|| Error::Parse(format!("bad module spec '{s}' (expected Z, Z/<k>, F2, Zsign, ZG, @file)")))?;
                Ok(ModuleSpec::Cyclic(k))
            }
        }
    }

    pub fn build(&self, group: &Arc<Group>) -> Result<GModule> {
        match self {
            ModuleSpec::Integers => Ok(GModule::trivial_integers(group)),
            ModuleSpec::Cyclic(k) => Ok(GModule::trivial_cyclic(group, *k)),
            ModuleSpec::Sign => GModule::sign(group),
            ModuleSpec::GroupRing => Ok(GModule::group_ring(group)),
            ModuleSpec::File(path) => GModule::from_json_file(group, path),
        }
    }
}

#[derive(Deserialize)]
struct ModuleFile {
    gens: usize,
    #[serde(default)]
    relations: Vec<Vec<i64>>,
    action: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    label: Option<String>,
}

/// Builds the coefficient module named by `spec` over `group`.
pub fn coefficient_module(group: &Arc<Group>, spec: &ModuleSpec) -> Result<GModule> {
    spec.build(group)
}

impl GModule {
    /// Validates that `action` is a left action by automorphisms.
    pub fn new(group: Arc<Group>, carrier: PresentedAb, action: Vec<IntMatrix>, label: impl Into<String>) -> Result<Self> {
        let n = group.order();
        let m = carrier.gens();
        if action.len() != n {
            return Err(Error::InvalidModule(format!("{} action matrices for a group of order {n}", action.len())));
        }
        if action.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::InvalidModule(format!("action matrices must be {m}x{m}")));
        }
        let zero_mod = RelationCheck::new(&carrier);
        for (g, a) in action.iter().enumerate() {
            if !zero_mod.vanishes(&a.mul(carrier.rels())) {
                return Err(Error::InvalidModule(format!("action of element {g} does not respect relations")));
            }
        }
        if !zero_mod.vanishes(&action[0].sub(&IntMatrix::identity(m))) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for g in 0..n {
            for h in 0..n {
                let lhs = action[g].mul(&action[h]);
                if !zero_mod.vanishes(&lhs.sub(&action[group.mul(g, h)])) {
                    return Err(Error::InvalidModule(format!("action is not multiplicative at ({g},{h})")));
                }
            }
        }
        Ok(GModule { group, carrier, action, label: label.into() })
    }

    pub fn trivial_integers(group: &Arc<Group>) -> Self {
        Self::trivial(group, PresentedAb::free(1), "Z")
    }

    pub fn trivial_cyclic(group: &Arc<Group>, k: i64) -> Self {
        let label = if k == 2 { "F2".to_string() } else { format!("Z/{k}") };
        Self::trivial(group, PresentedAb::cyclic(k), &label)
    }

    fn trivial(group: &Arc<Group>, carrier: PresentedAb, label: &str) -> Self {
        let action = vec![IntMatrix::identity(carrier.gens()); group.order()];
        GModule { group: Arc::clone(group), carrier, action, label: label.to_string() }
    }

    /// `Z` with the group acting through its sign character; fails when the
    /// group has no nontrivial homomorphism to `{±1}`.
    pub fn sign(group: &Arc<Group>) -> Result<Self> {
        let chi = group
            .sign_character()
            .ok_or_else(|| Error::InvalidModule(format!("{} has no nontrivial sign character", group.label())))?;
        Self::from_character(group, &chi, "Zsign")
    }

    pub fn from_character(group: &Arc<Group>, chi: &[i8], label: &str) -> Result<Self> {
        let action = chi.iter().map(|&s| IntMatrix::from_rows(&[vec![s as i64]])).collect();
        Self::new(Arc::clone(group), PresentedAb::free(1), action, label)
    }

    /// The regular representation: `g` sends basis element `h` to `gh`.
    pub fn group_ring(group: &Arc<Group>) -> Self {
        let n = group.order();
        let action = (0..n)
            .map(|g| IntMatrix::from_fn(n, n, |i, j| if group.mul(g, j) == i { int(1) } else { int(0) }))
            .collect();
        GModule { group: Arc::clone(group), carrier: PresentedAb::free(n), action, label: "ZG".into() }
    }

    pub fn from_json_file(group: &Arc<Group>, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file: ModuleFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let m = file.gens;
        if file.relations.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidModule("relation columns must have one entry per generator".into()));
        }
        let rels = IntMatrix::from_fn(m, file.relations.len(), |i, j| int(file.relations[j][i]));
        let carrier = PresentedAb::new(m, rels)?;
        let mut action = Vec::with_capacity(file.action.len());
        for a in &file.action {
            if a.len() != m || a.iter().any(|row| row.len() != m) {
                return Err(Error::InvalidModule(format!("action matrices must be {m}x{m}")));
            }
            action.push(IntMatrix::from_rows(a));
        }
        let label = file
            .label
            .unwrap_or_else(|| path.file_stem().and_then(|s| s.to_str()).unwrap_or("M").to_string());
        Self::new(Arc::clone(group), carrier, action, label)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn carrier(&self) -> &PresentedAb {
        &self.carrier
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn action_hom(&self, g: usize) -> AbHom {
        AbHom::new_unchecked(self.carrier.clone(), self.carrier.clone(), self.action[g].clone())
    }

    /// Restriction to a subgroup, reindexed as a group of its own.
    pub fn restrict(&self, sub: &Subgroup) -> GModule {
        let h = Arc::new(self.group.subgroup_as_group(sub));
        let action = sub.elements().iter().map(|&g| self.action[g].clone()).collect();
        GModule { group: h, carrier: self.carrier.clone(), action, label: self.label.clone() }
    }

    /// Same carrier with `h` acting by `chi(h) * action(h)`.
    pub fn twist(&self, chi: &[i8]) -> Result<GModule> {
        if chi.len() != self.group.order() {
            return Err(Error::Mismatch("character length differs from group order".into()));
        }
        if chi.iter().all(|&s| s == 1) {
            return Ok(self.clone());
        }
        let action = self
            .action
            .iter()
            .zip(chi)
            .map(|(a, &s)| if s < 0 { a.neg() } else { a.clone() })
            .collect();
        GModule::new(Arc::clone(&self.group), self.carrier.clone(), action, format!("{}(twisted)", self.label))
    }

    /// Whether the carrier has a nonzero element of order two.
    pub fn has_two_torsion(&self) -> bool {
        self.carrier.invariant_factors().torsion.iter().any(|t| (t % int(2)) == Int::from(0))
    }
}

/// Membership in the relation span, with the solver built once.
pub(crate) struct RelationCheck {
    solver: Option<Solver>,
}

impl RelationCheck {
    pub(crate) fn new(a: &PresentedAb) -> Self {
        let solver = (a.rels().cols() > 0).then(|| Solver::new(a.rels()));
        RelationCheck { solver }
    }

    pub(crate) fn vanishes(&self, m: &IntMatrix) -> bool {
        if m.is_zero() {
            return true;
        }
        match &self.solver {
            None => false,
            Some(s) => (0..m.cols()).all(|j| s.solve(&m.column(j)).is_some()),
        }
    }
}
