//! Finite groups stored as validated multiplication tables.
//!
//! Elements are indices `0..order`, with the identity always at index 0. The
//! index order is the total order used by every downstream enumeration
//! (wedge bases, orbit representatives, subgroup listings).

use std::collections::BTreeSet;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`Group::symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    label: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    names: Vec<String>,
}

/// A subgroup, recorded as the sorted list of its element indices in the parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of a parent element inside the subgroup's own indexing.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }
}

#[derive(Deserialize)]
struct TableFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

impl Group {
    /// Builds a group from an explicit table, moving the identity to index 0
    /// if it lives elsewhere.
    pub fn from_table(label: &str, table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;

        // Swap the identity into slot 0.
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let mut names = match names {
            Some(v) if v.len() == n => v,
            Some(_) => return Err(Error::InvalidGroup("names length differs from order".into())),
            None => (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("x{i}") }).collect(),
        };
        names.swap(0, identity);

        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| flat[a * n + b] == 0 && flat[b * n + a] == 0) {
                Some(b) => inverses[a] = b,
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Group { label: label.to_string(), order: n, table: flat, inverses, names })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Self::from_table(&format!("C{n}"), table, Some(names))
    }

    /// Dihedral group of order `2n`; element `r^i s^j` has index `i + n*j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
        }
        let idx = |i: usize, j: usize| i % n + n * (j % 2);
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for a in 0..2 * n {
            let (ai, aj) = (a % n, a / n);
            for b in 0..2 * n {
                let (bi, bj) = (b % n, b / n);
                // r^ai s^aj r^bi s^bj = r^(ai ± bi) s^(aj+bj)
                let rot = if aj == 0 { ai + bi } else { ai + n - bi };
                table[a][b] = idx(rot, aj + bj);
            }
        }
        let names = (0..2 * n)
            .map(|a| {
                let (i, j) = (a % n, a / n);
                match (i, j) {
                    (0, 0) => "e".to_string(),
                    (0, 1) => "s".to_string(),
                    (1, 0) => "r".to_string(),
                    (1, 1) => "rs".to_string(),
                    (i, 0) => format!("r^{i}"),
                    (i, _) => format!("r^{i}s"),
                }
            })
            .collect();
        Self::from_table(&format!("D{n}"), table, Some(names))
    }

    /// Symmetric group on `n` letters, permutations in lexicographic order.
    /// Composition is `(ab)(i) = a(b(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("symmetric group needs n >= 1".into()));
        }
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::InvalidGroup(format!(
                "symmetric group S{n} exceeds the supported maximum S{MAX_SYMMETRIC_DEGREE}"
            )));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>())
            .collect();
        Self::from_table(&format!("S{n}"), table, Some(names))
    }

    /// Direct product; the pair `(g, h)` has index `g * |H| + h`.
    pub fn product(a: &Group, b: &Group) -> Result<Self> {
        let (m, n) = (a.order, b.order);
        let mut table = vec![vec![0; m * n]; m * n];
        for x in 0..m * n {
            for y in 0..m * n {
                table[x][y] = a.mul(x / n, y / n) * n + b.mul(x % n, y % n);
            }
        }
        let names = (0..m * n)
            .map(|x| format!("({},{})", a.names[x / n], b.names[x % n]))
            .collect();
        Self::from_table(&format!("{}x{}", a.label, b.label), table, Some(names))
    }

    /// Parses `C<n>`, `D<n>`, `S<n>`, products `AxB`, or `@file.json`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix('@') {
            return Self::from_json_file(path);
        }
        let atom = |f: &str| match parse_atom(f) {
            Err(Error::Parse(_)) => Err(Error::Parse(format!("bad group spec '{spec}' (expected C<n>, D<n>, S<n>, AxB or @file)"))),
            other => other,
        };
        let factors: Vec<&str> = spec.split(['x', 'X']).collect();
        let mut group = atom(factors[0])?;
        for f in &factors[1..] {
            group = Group::product(&group, &atom(f)?)?;
        }
        Ok(group)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let file: TableFile = serde_json::from_str(&text)?;
        if file.order != file.table.len() {
            return Err(Error::InvalidGroup(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G");
        Self::from_table(label, file.table, file.names)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        assert!(g < self.order, "element {g} out of range");
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// All `x` with `x^k = 1`, in index order.
    pub fn solutions_of_power_equation(&self, k: usize) -> Vec<usize> {
        assert!(k >= 1);
        (0..self.order).filter(|&x| k.is_multiple_of(self.element_order(x))).collect()
    }

    /// True when `x^k = 1` forces `x = 1`.
    pub fn power_equation_is_trivial(&self, k: usize) -> bool {
        self.solutions_of_power_equation(k).len() == 1
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { elements: set.into_iter().collect() }
    }

    /// Checks closure and returns the subgroup when `elements` is one.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let sub = Subgroup { elements };
        if !self.is_subgroup(&sub) {
            return Err(Error::InvalidGroup("element set is not a subgroup".into()));
        }
        Ok(sub)
    }

    pub fn is_subgroup(&self, sub: &Subgroup) -> bool {
        let els = sub.elements();
        !els.is_empty()
            && els[0] == 0
            && els.iter().all(|&x| x < self.order)
            && els.iter().all(|&a| {
                sub.contains(self.inv(a)) && els.iter().all(|&b| sub.contains(self.mul(a, b)))
            })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    /// Cyclic subgroups with exactly `ell` elements, sorted and without duplicates.
    pub fn cyclic_subgroups_of_order(&self, ell: usize) -> Vec<Subgroup> {
        let set: BTreeSet<Subgroup> = (0..self.order)
            .filter(|&g| self.element_order(g) == ell)
            .map(|g| self.generated_subgroup(&[g]))
            .collect();
        set.into_iter().collect()
    }

    /// The subgroup as a group in its own right, indexed by position in the
    /// sorted element list.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> Group {
        let els = sub.elements();
        let k = els.len();
        let mut table = vec![0; k * k];
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                table[i * k + j] = sub.position(self.mul(a, b)).expect("subgroup is closed");
            }
        }
        let inverses = els.iter().map(|&a| sub.position(self.inv(a)).unwrap()).collect();
        let names = els.iter().map(|&a| self.names[a].clone()).collect();
        let label = format!("{}<{}>", self.label, k);
        Group { label, order: k, table, inverses, names }
    }

    /// A nontrivial homomorphism to `{+1, -1}` if one exists.
    ///
    /// The kernel is built from the subgroup of squares by adjoining, in index
    /// order, every element that is new modulo the span so far except the
    /// first one; the first new element is sent to `-1`.
    pub fn sign_character(&self) -> Option<Vec<i8>> {
        let squares: Vec<usize> = (0..self.order).map(|g| self.mul(g, g)).collect();
        let mut span = self.generated_subgroup(&squares);
        let mut flipped = None;
        let mut kernel_gens = squares;
        for g in 0..self.order {
            if span.contains(g) {
                continue;
            }
            if flipped.is_none() {
                flipped = Some(g);
            } else {
                kernel_gens.push(g);
            }
            let mut all = kernel_gens.clone();
            all.extend(flipped);
            span = self.generated_subgroup(&all);
        }
        flipped?;
        let kernel = self.generated_subgroup(&kernel_gens);
        Some((0..self.order).map(|g| if kernel.contains(g) { 1 } else { -1 }).collect())
    }
}

fn parse_atom(s: &str) -> Result<Group> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad group spec '{s}' (expected C<n>, D<n>, S<n>)"));
    let mut chars = s.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let n: usize = chars.as_str().parse().map_err(|_| bad())?;
    match kind {
        'C' | 'c' => Group::cyclic(n),
        'D' | 'd' => Group::dihedral(n),
        'S' | 's' => Group::symmetric(n),
        _ => Err(bad()),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_c2() {
        let c1 = Group::cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        let c2 = Group::cyclic(2).unwrap();
        assert_eq!(c2.table_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn s3_element_orders() {
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        let orders: Vec<usize> = (0..6).map(|g| s3.element_order(g)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
        assert_eq!(s3.solutions_of_power_equation(3).len(), 3);
        assert_eq!(s3.cyclic_subgroups_of_order(2).len(), 3);
        assert_eq!(s3.cyclic_subgroups_of_order(3).len(), 1);
    }

    #[test]
    fn element_orders_cyclic() {
        assert_eq!(Group::cyclic(2).unwrap().element_order(1), 2);
        assert_eq!(Group::cyclic(6).unwrap().element_order(1), 6);
    }

    #[test]
    fn power_equation_small() {
        assert_eq!(Group::cyclic(3).unwrap().solutions_of_power_equation(2), vec![0]);
        assert_eq!(Group::cyclic(2).unwrap().solutions_of_power_equation(2), vec![0, 1]);
        assert!(Group::cyclic(2).unwrap().cyclic_subgroups_of_order(2).len() == 1);
        assert!(Group::cyclic(3).unwrap().cyclic_subgroups_of_order(2).is_empty());
    }

    #[test]
    fn rejects_bad_tables() {
        // no identity
        assert!(Group::from_table("bad", vec![vec![1, 0], vec![0, 0]], None).is_err());
        // out of range
        assert!(Group::from_table("bad", vec![vec![0, 2], vec![1, 0]], None).is_err());
        // a Latin square with identity that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(Group::from_table("loop", t, None).is_err());
        assert!(Group::symmetric(6).is_err());
    }

    #[test]
    fn identity_is_reindexed() {
        let g = Group::from_table("c2", vec![vec![1, 0], vec![0, 1]], None).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn specs_parse() {
        assert_eq!(Group::parse_spec("C2xC2").unwrap().order(), 4);
        assert_eq!(Group::parse_spec("D4").unwrap().order(), 8);
        assert!(Group::parse_spec("Q8").is_err());
    }

    #[test]
    fn sign_characters() {
        assert_eq!(Group::cyclic(2).unwrap().sign_character(), Some(vec![1, -1]));
        assert_eq!(Group::cyclic(3).unwrap().sign_character(), None);
        let s3 = Group::symmetric(3).unwrap();
        let chi = s3.sign_character().unwrap();
        for g in 0..6 {
            let expected = if s3.element_order(g) == 2 { -1 } else { 1 };
            assert_eq!(chi[g], expected);
        }
        let v4 = Group::parse_spec("C2xC2").unwrap();
        let chi = v4.sign_character().unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(chi[v4.mul(a, b)], chi[a] * chi[b]);
            }
        }
    }

    #[test]
    fn lagrange_and_subgroups() {
        for spec in ["C6", "S3", "D4", "C2xC2", "S4"] {
            let g = Group::parse_spec(spec).unwrap();
            for x in 0..g.order() {
                assert_eq!(g.order() % g.element_order(x), 0);
            }
            for k in 1..=6 {
                for x in g.solutions_of_power_equation(k) {
                    assert_eq!(k % g.element_order(x), 0);
                }
            }
            for ell in [2, 3] {
                for h in g.cyclic_subgroups_of_order(ell) {
                    assert!(g.is_subgroup(&h));
                    assert_eq!(h.order(), ell);
                }
            }
        }
    }
}
