//! Smith normal form by repeated smallest-pivot elimination.
//!
//! The elimination runs first on checked `i64` arithmetic and restarts on
//! `BigInt` as soon as any operation would overflow, so results are always
//! exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{Int, IntMatrix};

/// `u * a * v == diag`, with `u`, `v` unimodular and `u_inv = u^-1`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal entries `d_0 | d_1 | ...`, length `min(rows, cols)`, all `>= 0`.
    pub diag: Vec<Int>,
    pub rank: usize,
}

impl Snf {
    pub fn d_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

/// Which transformation matrices to accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

impl Track {
    pub const ALL: Track = Track { u: true, u_inv: true, v: true };
    pub const NONE: Track = Track { u: false, u_inv: false, v: false };
}

/// Returns `(U, D, V)` with `U·A·V = D`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = snf(a, Track::ALL);
    let d = s.d_matrix(a.rows(), a.cols());
    (s.u, d, s.v)
}

/// Full decomposition; untracked transforms come back as empty matrices.
pub fn snf(a: &IntMatrix, track: Track) -> Snf {
    if let Some(small) = to_small(a) {
        if let Some(res) = eliminate::<i64>(small, a.rows(), a.cols(), track) {
            return res;
        }
    }
    let big = a.data().to_vec();
    eliminate::<BigInt>(big, a.rows(), a.cols(), track).expect("bigint elimination cannot overflow")
}

fn to_small(a: &IntMatrix) -> Option<Vec<i64>> {
    a.data().iter().map(|x| x.to_i64().filter(|v| v.checked_abs().is_some())).collect()
}

trait Scalar: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn negate(&self) -> Option<Self>;
    /// Quotient rounded to nearest, so the remainder is at most half the divisor.
    fn round_quot(&self, d: &Self) -> Self;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// `self + q * x`
    fn add_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn negate(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn round_quot(&self, d: &Self) -> Self {
        let q = self / d;
        let r = self - q * d;
        if 2 * r.unsigned_abs() > d.unsigned_abs() {
            if (r < 0) == (*d < 0) {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        q.checked_mul(*x).and_then(|p| self.checked_sub(p))
    }
    fn add_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        q.checked_mul(*x).and_then(|p| self.checked_add(p))
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negate(&self) -> Option<Self> {
        Some(-self)
    }
    fn round_quot(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        if r.magnitude() * 2u32 > *d.magnitude() {
            if Signed::is_negative(&r) == Signed::is_negative(d) {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn add_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self + q * x)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Dense<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Dense { rows: n, cols: n, data }
    }

    fn empty() -> Self {
        Dense { rows: 0, cols: 0, data: Vec::new() }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        let c = self.cols;
        for j in 0..c {
            let x = &self.data[t * c + j];
            if x.is_zero() {
                continue;
            }
            let nv = self.data[i * c + j].sub_mul(q, x)?;
            self.data[i * c + j] = nv;
        }
        Some(())
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        let c = self.cols;
        for i in 0..self.rows {
            let x = &self.data[i * c + t];
            if x.is_zero() {
                continue;
            }
            let nv = self.data[i * c + j].sub_mul(q, x)?;
            self.data[i * c + j] = nv;
        }
        Some(())
    }

    /// col_t += q * col_i
    fn col_add(&mut self, t: usize, i: usize, q: &T) -> Option<()> {
        let c = self.cols;
        for r in 0..self.rows {
            let x = &self.data[r * c + i];
            if x.is_zero() {
                continue;
            }
            let nv = self.data[r * c + t].add_mul(q, x)?;
            self.data[r * c + t] = nv;
        }
        Some(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j].negate()?;
            self.data[i * self.cols + j] = v;
        }
        Some(())
    }

    fn negate_col(&mut self, j: usize) -> Option<()> {
        for i in 0..self.rows {
            let v = self.data[i * self.cols + j].negate()?;
            self.data[i * self.cols + j] = v;
        }
        Some(())
    }

    fn into_matrix(self) -> IntMatrix {
        let Dense { rows, cols, data } = self;
        IntMatrix::from_fn(rows, cols, |i, j| data[i * cols + j].to_big())
    }
}

struct State<T> {
    a: Dense<T>,
    u: Option<Dense<T>>,
    u_inv: Option<Dense<T>>,
    v: Option<Dense<T>>,
}

impl<T: Scalar> State<T> {
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        self.a.row_sub(i, t, q)?;
        if let Some(u) = &mut self.u {
            u.row_sub(i, t, q)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.col_add(t, i, q)?;
        }
        Some(())
    }

    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        self.a.col_sub(j, t, q)?;
        if let Some(v) = &mut self.v {
            v.col_sub(j, t, q)?;
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        self.a.swap_rows(i, t);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, t);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, t);
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        self.a.swap_cols(j, t);
        if let Some(v) = &mut self.v {
            v.swap_cols(j, t);
        }
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        self.a.negate_row(t)?;
        if let Some(u) = &mut self.u {
            u.negate_row(t)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(t)?;
        }
        Some(())
    }
}

fn eliminate<T: Scalar>(data: Vec<T>, rows: usize, cols: usize, track: Track) -> Option<Snf> {
    let mut st = State {
        a: Dense { rows, cols, data },
        u: track.u.then(|| Dense::identity(rows)),
        u_inv: track.u_inv.then(|| Dense::identity(rows)),
        v: track.v.then(|| Dense::identity(cols)),
    };
    let n = rows.min(cols);
    let mut rank = 0;
    for t in 0..n {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = st.a.at(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(st.a.at(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);

        loop {
            // Clear row and column t, re-pivoting on any smaller remainder.
            loop {
                for i in t + 1..rows {
                    if !st.a.at(i, t).is_zero() {
                        let q = st.a.at(i, t).round_quot(st.a.at(t, t));
                        st.row_sub(i, t, &q)?;
                    }
                }
                for j in t + 1..cols {
                    if !st.a.at(t, j).is_zero() {
                        let q = st.a.at(t, j).round_quot(st.a.at(t, t));
                        st.col_sub(j, t, &q)?;
                    }
                }
                let mut smaller: Option<(usize, bool)> = None;
                let mut cur = st.a.at(t, t).clone();
                for i in t + 1..rows {
                    let x = st.a.at(i, t);
                    if !x.is_zero() && x.abs_lt(&cur) {
                        cur = x.clone();
                        smaller = Some((i, true));
                    }
                }
                for j in t + 1..cols {
                    let x = st.a.at(t, j);
                    if !x.is_zero() && x.abs_lt(&cur) {
                        cur = x.clone();
                        smaller = Some((j, false));
                    }
                }
                match smaller {
                    Some((i, true)) => st.swap_rows(t, i),
                    Some((j, false)) => st.swap_cols(t, j),
                    None => {
                        let col_clear = (t + 1..rows).all(|i| st.a.at(i, t).is_zero());
                        let row_clear = (t + 1..cols).all(|j| st.a.at(t, j).is_zero());
                        if col_clear && row_clear {
                            break;
                        }
                    }
                }
            }
            // Enforce divisibility of the remaining block by the pivot.
            let p = st.a.at(t, t).clone();
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !p.divides(st.a.at(i, j)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let minus_one = T::one().negate()?;
                    st.row_sub(t, i, &minus_one)?;
                }
                None => break,
            }
        }
        if st.a.at(t, t).is_negative() {
            st.negate_row(t)?;
        }
        rank = t + 1;
    }

    let diag = (0..n).map(|i| st.a.at(i, i).to_big()).collect();
    Some(Snf {
        u: st.u.unwrap_or_else(Dense::empty).into_matrix(),
        u_inv: st.u_inv.unwrap_or_else(Dense::empty).into_matrix(),
        v: st.v.unwrap_or_else(Dense::empty).into_matrix(),
        diag,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::matrix::int;

    fn check(a: &IntMatrix) -> Snf {
        let s = snf(a, Track::ALL);
        let d = s.u.mul(a).mul(&s.v);
        assert_eq!(d, s.d_matrix(a.rows(), a.cols()));
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        for w in s.diag.windows(2) {
            if w[1] != int(0) {
                assert!(&w[1] % &w[0] == int(0), "divisibility {:?}", s.diag);
            }
        }
        s
    }

    #[test]
    fn zero_one_by_one() {
        let s = check(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!(s.diag, vec![int(0)]);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4], vec![-2, 2]]));
        assert_eq!(s.diag, vec![int(2), int(6)]);
    }

    #[test]
    fn identity_three() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.diag, vec![int(1); 3]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diag, vec![int(1), int(6)]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let a = IntMatrix::from_rows(&[vec![big, big - 1, 7], vec![big - 5, big, 3], vec![11, 13, big - 2]]);
        check(&a);
    }

    #[test]
    fn empty_shapes() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(3, 0));
    }
}
