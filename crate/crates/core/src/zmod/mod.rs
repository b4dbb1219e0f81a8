//! Exact linear algebra over the integers: finitely presented abelian groups,
//! homomorphisms between them, and the subquotients that homology needs.

mod matrix;
mod snf;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use matrix::{int, Int, IntMatrix};
pub use snf::{smith_normal_form, snf, Snf, Track};

/// `Z^gens / colspan(rels)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedAb {
    gens: usize,
    rels: IntMatrix,
}

impl PresentedAb {
    pub fn new(gens: usize, rels: IntMatrix) -> Result<Self> {
        if rels.rows() != gens {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {} generators",
                rels.rows(),
                gens
            )));
        }
        Ok(PresentedAb { gens, rels })
    }

    pub fn free(n: usize) -> Self {
        PresentedAb { gens: n, rels: IntMatrix::zeros(n, 0) }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// `Z/k`; `k = 0` gives `Z`.
    pub fn cyclic(k: i64) -> Self {
        if k == 0 {
            Self::free(1)
        } else {
            PresentedAb { gens: 1, rels: IntMatrix::from_rows(&[vec![k]]) }
        }
    }

    /// `Z^r ⊕ Z/d_1 ⊕ ...` in diagonal form.
    pub fn from_invariants(inv: &Invariants) -> Self {
        let gens = inv.free_rank + inv.torsion.len();
        let mut rels = IntMatrix::zeros(gens, inv.torsion.len());
        for (k, d) in inv.torsion.iter().enumerate() {
            rels[(inv.free_rank + k, k)] = d.clone();
        }
        PresentedAb { gens, rels }
    }

    pub fn direct_sum(parts: &[PresentedAb]) -> Self {
        let gens = parts.iter().map(|p| p.gens).sum();
        let rels = IntMatrix::block_diagonal(&parts.iter().map(|p| p.rels.clone()).collect::<Vec<_>>());
        PresentedAb { gens, rels }
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn rels(&self) -> &IntMatrix {
        &self.rels
    }

    pub fn invariant_factors(&self) -> Invariants {
        let s = snf(&self.rels, Track::NONE);
        let torsion: Vec<Int> = s.diag[..s.rank].iter().filter(|d| !d.is_one()).cloned().collect();
        Invariants { free_rank: self.gens - s.rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_zero()
    }

    /// Whether every column of `m` (in generator coordinates) is zero in the group.
    pub fn columns_vanish(&self, m: &IntMatrix) -> bool {
        assert_eq!(m.rows(), self.gens, "element dimension mismatch");
        if m.is_zero() {
            return true;
        }
        if self.rels.cols() == 0 {
            return false;
        }
        if let Some(divisors) = self.diagonal_divisors() {
            return (0..m.rows()).all(|i| {
                let d = &divisors[i];
                m.row(i).iter().all(|x| if d.is_zero() { x.is_zero() } else { (x % d).is_zero() })
            });
        }
        let solver = Solver::new(&self.rels);
        (0..m.cols()).all(|j| solver.solve(&m.column(j)).is_some())
    }

    /// Per-generator orders when every relation involves a single generator
    /// and no generator appears in two relations (`0` = free).
    fn diagonal_divisors(&self) -> Option<Vec<Int>> {
        let mut out = vec![Int::zero(); self.gens];
        for j in 0..self.rels.cols() {
            let mut hit = None;
            for i in 0..self.gens {
                if !self.rels[(i, j)].is_zero() {
                    if hit.is_some() || !out[i].is_zero() {
                        return None;
                    }
                    hit = Some(i);
                }
            }
            let i = hit?;
            out[i] = self.rels[(i, j)].abs();
        }
        Some(out)
    }

    /// `(simplified, to, from)`: an isomorphic diagonal presentation with the
    /// coordinate changes in both directions.
    pub fn simplify(&self) -> (PresentedAb, IntMatrix, IntMatrix) {
        let s = snf(&self.rels, Track { u: true, u_inv: true, v: false });
        let mut kept = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..self.gens {
            if i < s.rank {
                if !s.diag[i].is_one() {
                    kept.push(i);
                    torsion.push(s.diag[i].clone());
                }
            } else {
                kept.push(i);
            }
        }
        let mut rels = IntMatrix::zeros(kept.len(), torsion.len());
        for (k, d) in torsion.iter().enumerate() {
            rels[(k, k)] = d.clone();
        }
        let to = s.u.select_rows(&kept);
        let from = s.u_inv.select_columns(&kept);
        (PresentedAb { gens: kept.len(), rels }, to, from)
    }
}

/// Canonical form `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_1 | t_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl Invariants {
    pub fn new(free_rank: usize, torsion: &[i64]) -> Self {
        Invariants { free_rank, torsion: torsion.iter().map(|&t| int(t)).collect() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariants of the direct sum.
    pub fn direct_sum(&self, other: &Invariants) -> Invariants {
        let a = PresentedAb::from_invariants(self);
        let b = PresentedAb::from_invariants(other);
        PresentedAb::direct_sum(&[a, b]).invariant_factors()
    }

    /// Whether `n` kills the group (never true with free part).
    pub fn annihilated_by(&self, n: &Int) -> bool {
        self.free_rank == 0 && self.torsion.iter().all(|t| (n % t).is_zero())
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Serializes big integers as JSON numbers when they fit in `u64`, strings otherwise.
pub(crate) fn serialize_ints<S: Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match u64::try_from(x) {
            Ok(n) => seq.serialize_element(&n)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl Serialize for Invariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            free_rank: usize,
            #[serde(serialize_with = "serialize_ints")]
            torsion: &'a [Int],
        }
        Repr { free_rank: self.free_rank, torsion: &self.torsion }.serialize(s)
    }
}

/// Exact solver for `A x = b` over the integers, built on one SNF of `A`.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: usize,
    cols: usize,
    snf: Snf,
}

impl Solver {
    pub fn new(a: &IntMatrix) -> Self {
        Solver { rows: a.rows(), cols: a.cols(), snf: snf(a, Track { u: true, u_inv: false, v: true }) }
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "right-hand side dimension mismatch");
        let c = self.snf.u.mul_vec(b);
        let r = self.snf.rank;
        if c[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![Int::zero(); self.cols];
        for i in 0..r {
            let d = &self.snf.diag[i];
            if !(&c[i] % d).is_zero() {
                return None;
            }
            y[i] = &c[i] / d;
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn solve_matrix(&self, b: &IntMatrix) -> Option<IntMatrix> {
        let cols: Option<Vec<Vec<Int>>> = (0..b.cols()).map(|j| self.solve(&b.column(j))).collect();
        Some(IntMatrix::from_columns(self.cols, &cols?))
    }

    /// Basis of the integer kernel, as the trailing columns of `V`.
    pub fn kernel_basis(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.snf.rank..self.cols).collect();
        self.snf.v.select_columns(&idx)
    }
}

/// A subgroup `S ⊂ A` given by an injective map; resolves ambient elements
/// that lie in `S` back to `S`-coordinates.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: PresentedAb,
    pub ambient: PresentedAb,
    /// `ambient.gens × group.gens`
    pub incl: IntMatrix,
    solver: Option<Solver>,
}

impl Embedded {
    pub fn new(group: PresentedAb, ambient: PresentedAb, incl: IntMatrix) -> Self {
        let whole = group == ambient && incl == IntMatrix::identity(ambient.gens());
        let solver = (!whole).then(|| Solver::new(&incl.hstack(ambient.rels())));
        Embedded { group, ambient, incl, solver }
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(group: &PresentedAb) -> Self {
        Self::new(group.clone(), group.clone(), IntMatrix::identity(group.gens()))
    }

    /// `S`-coordinates of `v`, or `None` when `v ∉ S`.
    pub fn coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        let Some(solver) = &self.solver else {
            return Some(v.to_vec());
        };
        if v.iter().all(|x| x.is_zero()) {
            return Some(vec![Int::zero(); self.group.gens()]);
        }
        solver.solve(v).map(|mut x| {
            x.truncate(self.group.gens());
            x
        })
    }

    pub fn coords_matrix(&self, m: &IntMatrix) -> Option<IntMatrix> {
        let cols: Option<Vec<Vec<Int>>> = (0..m.cols()).map(|j| self.coords(&m.column(j))).collect();
        Some(IntMatrix::from_columns(self.group.gens(), &cols?))
    }

    pub fn inclusion(&self) -> AbHom {
        AbHom::new_unchecked(self.group.clone(), self.ambient.clone(), self.incl.clone())
    }

    /// Subgroup of `ambient` generated by the given columns.
    pub fn generated(ambient: &PresentedAb, columns: &IntMatrix) -> Self {
        AbHom::new_unchecked(PresentedAb::free(columns.cols()), ambient.clone(), columns.clone()).image()
    }

    /// `inner ⊂ self.group` viewed as a subgroup of `self.ambient`.
    pub fn nest(&self, inner: &Embedded) -> Embedded {
        debug_assert_eq!(inner.ambient, self.group);
        Embedded::new(inner.group.clone(), self.ambient.clone(), self.incl.mul(&inner.incl))
    }

    pub fn contains(&self, other: &Embedded) -> bool {
        self.ambient == other.ambient && self.coords_matrix(&other.incl).is_some()
    }

    pub fn same_subgroup(&self, other: &Embedded) -> bool {
        self.contains(other) && other.contains(self)
    }

    pub fn intersection(&self, other: &Embedded) -> Embedded {
        let (_, proj) = other.inclusion().cokernel();
        let to_quotient = proj.compose(&self.inclusion()).expect("shared ambient");
        self.nest(&to_quotient.kernel())
    }
}

/// Homomorphism `source → target` acting on generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: PresentedAb,
    target: PresentedAb,
    /// `target.gens × source.gens`
    matrix: IntMatrix,
}

impl AbHom {
    /// Checks that relations of the source map into the relation span of the target.
    pub fn new(source: PresentedAb, target: PresentedAb, matrix: IntMatrix) -> Result<Self> {
        let f = Self::new_unchecked(source, target, matrix);
        if f.matrix.rows() != f.target.gens || f.matrix.cols() != f.source.gens {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                f.matrix.rows(),
                f.matrix.cols(),
                f.target.gens,
                f.source.gens
            )));
        }
        if !f.target.columns_vanish(&f.matrix.mul(&f.source.rels)) {
            return Err(Error::IllDefined("relations of the source do not map to zero".into()));
        }
        Ok(f)
    }

    pub fn new_unchecked(source: PresentedAb, target: PresentedAb, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.gens);
        debug_assert_eq!(matrix.cols(), source.gens);
        AbHom { source, target, matrix }
    }

    pub fn identity(a: &PresentedAb) -> Self {
        Self::new_unchecked(a.clone(), a.clone(), IntMatrix::identity(a.gens))
    }

    pub fn zero(source: &PresentedAb, target: &PresentedAb) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), IntMatrix::zeros(target.gens, source.gens))
    }

    pub fn source(&self) -> &PresentedAb {
        &self.source
    }

    pub fn target(&self) -> &PresentedAb {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if first.target != self.source {
            return Err(Error::Mismatch("composition through different presentations".into()));
        }
        Ok(Self::new_unchecked(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)))
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch("difference of maps with different endpoints".into()));
        }
        Ok(Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix)))
    }

    pub fn is_zero(&self) -> bool {
        self.target.columns_vanish(&self.matrix)
    }

    /// Equality as homomorphisms, i.e. modulo the target relations.
    pub fn equals(&self, other: &AbHom) -> bool {
        self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Lattice `{x : f x ∈ colspan(target.rels)}` as a column basis.
    fn preimage_of_zero(&self) -> IntMatrix {
        let s = self.source.gens;
        let stacked = self.matrix.hstack(&self.target.rels);
        let ker = Solver::new(&stacked).kernel_basis();
        let proj = ker.row_range(0, s);
        column_span_basis(&proj)
    }

    /// Kernel as a subgroup of the source.
    pub fn kernel(&self) -> Embedded {
        let basis = self.preimage_of_zero();
        let rels = Solver::new(&basis)
            .solve_matrix(&self.source.rels)
            .expect("source relations lie in the kernel lattice");
        let raw = PresentedAb { gens: basis.cols(), rels };
        let (group, _, from) = raw.simplify();
        let incl = basis.mul(&from);
        Embedded::new(group, self.source.clone(), incl)
    }

    /// Image as a subgroup of the target.
    pub fn image(&self) -> Embedded {
        let lattice = self.preimage_of_zero();
        let raw = PresentedAb { gens: self.source.gens, rels: lattice };
        let (group, _, from) = raw.simplify();
        let incl = self.matrix.mul(&from);
        Embedded::new(group, self.target.clone(), incl)
    }

    /// Cokernel together with the projection from the target.
    pub fn cokernel(&self) -> (PresentedAb, AbHom) {
        let raw = PresentedAb { gens: self.target.gens, rels: self.target.rels.hstack(&self.matrix) };
        let (group, to, _) = raw.simplify();
        let proj = AbHom::new_unchecked(self.target.clone(), group.clone(), to);
        (group, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Basis of the lattice spanned by the columns of `m`.
pub fn column_span_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m, Track { u: false, u_inv: true, v: false });
    let mut cols = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        let d = &s.diag[i];
        cols.push(s.u_inv.column(i).into_iter().map(|x| x * d).collect());
    }
    IntMatrix::from_columns(m.rows(), &cols)
}

/// `ker(d_out) / im(d_in)` with generator representatives in the middle group.
#[derive(Clone, Debug)]
pub struct Homology {
    pub group: PresentedAb,
    /// Representative cycles, `middle.gens × group.gens`.
    pub reps: IntMatrix,
    cycles: Embedded,
    to: IntMatrix,
}

impl Homology {
    /// Homology class of a cycle given in middle-group coordinates.
    pub fn project(&self, cycle: &[Int]) -> Result<Vec<Int>> {
        let y = self
            .cycles
            .coords(cycle)
            .ok_or_else(|| Error::Mismatch("element is not a cycle".into()))?;
        Ok(self.to.mul_vec(&y))
    }

    pub fn project_matrix(&self, m: &IntMatrix) -> Result<IntMatrix> {
        let cols: Result<Vec<Vec<Int>>> = (0..m.cols()).map(|j| self.project(&m.column(j))).collect();
        Ok(IntMatrix::from_columns(self.group.gens(), &cols?))
    }

    pub fn middle(&self) -> &PresentedAb {
        &self.cycles.ambient
    }

    pub fn invariant_factors(&self) -> Invariants {
        self.group.invariant_factors()
    }
}

/// Homology of `A --d_in--> B --d_out--> C` at `B`.
pub fn homology_at(d_in: &AbHom, d_out: &AbHom) -> Result<Homology> {
    if d_in.target != d_out.source {
        return Err(Error::Mismatch("maps are not composable".into()));
    }
    if !d_out.compose(d_in)?.is_zero() {
        return Err(Error::NonZeroComposite("d_out ∘ d_in ≠ 0".into()));
    }
    let cycles = d_out.kernel();
    let boundaries = cycles
        .coords_matrix(&d_in.matrix)
        .expect("boundaries are cycles once the composite vanishes");
    let raw = PresentedAb { gens: cycles.group.gens(), rels: cycles.group.rels().hstack(&boundaries) };
    let (group, to, from) = raw.simplify();
    let reps = cycles.incl.mul(&from);
    Ok(Homology { group, reps, cycles, to })
}

/// Two consecutive commuting squares between composable pairs:
/// `src_in: A → B`, `src_out: B → C`, `tgt_in: A' → B'`, `tgt_out: B' → C'`,
/// with vertical maps `before: A → A'`, `at: B → B'`, `after: C → C'`.
pub struct ChainSquare<'a> {
    pub src_in: &'a AbHom,
    pub src_out: &'a AbHom,
    pub tgt_in: &'a AbHom,
    pub tgt_out: &'a AbHom,
    pub before: &'a AbHom,
    pub at: &'a AbHom,
    pub after: &'a AbHom,
}

/// Map induced on homology at the middle slot by a commuting pair of squares.
pub fn induced_on_homology(sq: &ChainSquare<'_>) -> Result<AbHom> {
    let left = sq.tgt_in.compose(sq.before)?;
    let right = sq.at.compose(sq.src_in)?;
    if !left.equals(&right) {
        return Err(Error::NotChainMap("incoming square".into()));
    }
    let left = sq.tgt_out.compose(sq.at)?;
    let right = sq.after.compose(sq.src_out)?;
    if !left.equals(&right) {
        return Err(Error::NotChainMap("outgoing square".into()));
    }
    let h_src = homology_at(sq.src_in, sq.src_out)?;
    let h_tgt = homology_at(sq.tgt_in, sq.tgt_out)?;
    induced_map(&h_src, &h_tgt, sq.at.matrix())
}

/// Induced map between already computed homologies, given the middle map.
pub fn induced_map(src: &Homology, tgt: &Homology, middle: &IntMatrix) -> Result<AbHom> {
    let images = middle.mul(&src.reps);
    let m = tgt.project_matrix(&images)?;
    Ok(AbHom::new_unchecked(src.group.clone(), tgt.group.clone(), m))
}

/// Presentation of `Z/k`-valued or integer scalar multiplication maps.
pub fn scalar_map(a: &PresentedAb, s: i64) -> AbHom {
    AbHom::new_unchecked(a.clone(), a.clone(), IntMatrix::scalar(a.gens(), &int(s)))
}

/// Sign helper used when reading characters.
pub fn sign_int(s: i8) -> Int {
    if s < 0 {
        -Int::one()
    } else {
        Int::one()
    }
}
