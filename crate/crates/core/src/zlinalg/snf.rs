//! Smith normal form over the integers.
//!
//! The elimination runs first on machine integers with overflow checks and
//! restarts on `BigInt` the moment any operation would overflow, so small
//! boundary matrices never touch the allocator while large intermediate
//! entries stay exact. Pivots are always chosen with minimal absolute value.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Debug)]
struct Overflow;

type Step = std::result::Result<(), Overflow>;

trait Scalar: Clone {
    fn s_zero() -> Self;
    fn s_one() -> Self;
    fn s_is_zero(&self) -> bool;
    fn s_is_negative(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn quot(&self, d: &Self) -> Option<Self>;
    /// `self + q * x`
    fn add_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn negate(&self) -> Option<Self>;
    fn divides(&self, x: &Self) -> bool;
    fn into_big(self) -> BigInt;
}

impl Scalar for i64 {
    fn s_zero() -> Self {
        0
    }
    fn s_one() -> Self {
        1
    }
    fn s_is_zero(&self) -> bool {
        *self == 0
    }
    fn s_is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn add_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        q.checked_mul(*x).and_then(|p| self.checked_add(p))
    }
    fn negate(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn divides(&self, x: &Self) -> bool {
        // self is a nonzero pivot
        x.checked_rem(*self) == Some(0)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Scalar for BigInt {
    fn s_zero() -> Self {
        Zero::zero()
    }
    fn s_one() -> Self {
        One::one()
    }
    fn s_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn s_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn add_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self + q * x)
    }
    fn negate(&self) -> Option<Self> {
        Some(-self)
    }
    fn divides(&self, x: &Self) -> bool {
        x.is_multiple_of(self)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::s_one() } else { T::s_zero() }).collect())
        .collect()
}

/// rows[i] += q * rows[j]
fn row_axpy<T: Scalar>(rows: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Step {
    debug_assert_ne!(i, j);
    let (dst, src) = if i < j {
        let (a, b) = rows.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(i);
        (&mut b[0], &a[j])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.s_is_zero() {
            *d = d.add_mul(q, s).ok_or(Overflow)?;
        }
    }
    Ok(())
}

/// column i += q * column j
fn col_axpy<T: Scalar>(rows: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Step {
    for r in rows.iter_mut() {
        if !r[j].s_is_zero() {
            r[i] = r[i].add_mul(q, &r[j]).ok_or(Overflow)?;
        }
    }
    Ok(())
}

fn swap_cols<T>(rows: &mut [Vec<T>], i: usize, j: usize) {
    for r in rows.iter_mut() {
        r.swap(i, j);
    }
}

fn negate_row<T: Scalar>(rows: &mut [Vec<T>], i: usize) -> Step {
    for e in rows[i].iter_mut() {
        *e = e.negate().ok_or(Overflow)?;
    }
    Ok(())
}

fn negate_col<T: Scalar>(rows: &mut [Vec<T>], i: usize) -> Step {
    for r in rows.iter_mut() {
        r[i] = r[i].negate().ok_or(Overflow)?;
    }
    Ok(())
}

/// A transform together with its inverse.
type Frame<T> = (Vec<Vec<T>>, Vec<Vec<T>>);

/// Working state: `s = left * a * right`, with inverses kept alongside.
struct Elimination<T> {
    s: Vec<Vec<T>>,
    m: usize,
    n: usize,
    left: Option<Frame<T>>,
    right: Option<Frame<T>>,
}

impl<T: Scalar> Elimination<T> {
    fn new(s: Vec<Vec<T>>, m: usize, n: usize, track_left: bool, track_right: bool) -> Self {
        Elimination {
            s,
            m,
            n,
            left: track_left.then(|| (identity(m), identity(m))),
            right: track_right.then(|| (identity(n), identity(n))),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.s.swap(i, j);
        if let Some((l, linv)) = &mut self.left {
            l.swap(i, j);
            swap_cols(linv, i, j);
        }
    }

    fn swap_columns(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.s, i, j);
        if let Some((r, rinv)) = &mut self.right {
            swap_cols(r, i, j);
            rinv.swap(i, j);
        }
    }

    /// row i += q * row j
    fn add_row(&mut self, i: usize, j: usize, q: &T) -> Step {
        row_axpy(&mut self.s, i, j, q)?;
        if let Some((l, linv)) = &mut self.left {
            row_axpy(l, i, j, q)?;
            let nq = q.negate().ok_or(Overflow)?;
            col_axpy(linv, j, i, &nq)?;
        }
        Ok(())
    }

    /// column i += q * column j
    fn add_column(&mut self, i: usize, j: usize, q: &T) -> Step {
        col_axpy(&mut self.s, i, j, q)?;
        if let Some((r, rinv)) = &mut self.right {
            col_axpy(r, i, j, q)?;
            let nq = q.negate().ok_or(Overflow)?;
            row_axpy(rinv, j, i, &nq)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Step {
        negate_row(&mut self.s, i)?;
        if let Some((l, linv)) = &mut self.left {
            negate_row(l, i)?;
            negate_col(linv, i)?;
        }
        Ok(())
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let e = &self.s[i][j];
                if e.s_is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if e.abs_cmp(&self.s[bi][bj]) != Ordering::Less => {}
                    _ => {
                        best = Some((i, j));
                        if e.abs_cmp(&T::s_one()) == Ordering::Equal {
                            return best;
                        }
                    }
                }
            }
        }
        best
    }

    /// Clears column `t` below the pivot. Returns the row holding the smallest
    /// leftover remainder, if any.
    fn clear_column(&mut self, t: usize) -> std::result::Result<Option<usize>, Overflow> {
        let mut leftover: Option<usize> = None;
        for i in t + 1..self.m {
            if self.s[i][t].s_is_zero() {
                continue;
            }
            let q = self.s[i][t].quot(&self.s[t][t]).ok_or(Overflow)?;
            if !q.s_is_zero() {
                let nq = q.negate().ok_or(Overflow)?;
                self.add_row(i, t, &nq)?;
            }
            if !self.s[i][t].s_is_zero() {
                match leftover {
                    Some(k) if self.s[i][t].abs_cmp(&self.s[k][t]) != Ordering::Less => {}
                    _ => leftover = Some(i),
                }
            }
        }
        Ok(leftover)
    }

    fn clear_row(&mut self, t: usize) -> std::result::Result<Option<usize>, Overflow> {
        let mut leftover: Option<usize> = None;
        for j in t + 1..self.n {
            if self.s[t][j].s_is_zero() {
                continue;
            }
            let q = self.s[t][j].quot(&self.s[t][t]).ok_or(Overflow)?;
            if !q.s_is_zero() {
                let nq = q.negate().ok_or(Overflow)?;
                self.add_column(j, t, &nq)?;
            }
            if !self.s[t][j].s_is_zero() {
                match leftover {
                    Some(k) if self.s[t][j].abs_cmp(&self.s[t][k]) != Ordering::Less => {}
                    _ => leftover = Some(j),
                }
            }
        }
        Ok(leftover)
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.s[t][t];
        (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !p.divides(&self.s[i][j])))
    }

    fn run(&mut self) -> std::result::Result<usize, Overflow> {
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_columns(t, pj);
            loop {
                if let Some(i) = self.clear_column(t)? {
                    self.swap_rows(t, i);
                    continue;
                }
                if let Some(j) = self.clear_row(t)? {
                    self.swap_columns(t, j);
                    continue;
                }
                if let Some(i) = self.non_divisible_row(t) {
                    self.add_row(t, i, &T::s_one())?;
                    continue;
                }
                break;
            }
            if self.s[t][t].s_is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Ok(t)
    }
}

fn to_matrix<T: Scalar>(rows: Vec<Vec<T>>, r: usize, c: usize) -> IntMatrix {
    let mut flat: Vec<BigInt> = Vec::with_capacity(r * c);
    for row in rows {
        flat.extend(row.into_iter().map(Scalar::into_big));
    }
    let mut it = flat.into_iter();
    IntMatrix::from_fn(r, c, |_, _| it.next().expect("shape"))
}

/// Raw elimination result: `diag = left * a * right` (rectangular diagonal).
pub(crate) struct Reduced {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    /// `(L, L^-1)` with `S = L A R`
    pub left: Option<(IntMatrix, IntMatrix)>,
    /// `(R, R^-1)`
    pub right: Option<(IntMatrix, IntMatrix)>,
}

fn finish<T: Scalar>(e: Elimination<T>, rank: usize) -> Reduced {
    let (m, n) = (e.m, e.n);
    let diag = (0..m.min(n)).map(|i| e.s[i][i].clone().into_big()).collect();
    Reduced {
        diag,
        rank,
        left: e.left.map(|(l, li)| (to_matrix(l, m, m), to_matrix(li, m, m))),
        right: e.right.map(|(r, ri)| (to_matrix(r, n, n), to_matrix(ri, n, n))),
    }
}

pub(crate) fn reduce(a: &IntMatrix, track_left: bool, track_right: bool) -> Reduced {
    let (m, n) = a.shape();
    if let Some(rows) = a.to_i64_rows() {
        let mut e = Elimination::new(rows, m, n, track_left, track_right);
        if let Ok(rank) = e.run() {
            return finish(e, rank);
        }
    }
    let mut e = Elimination::new(a.to_big_rows(), m, n, track_left, track_right);
    let rank = e.run().expect("bigint elimination cannot overflow");
    finish(e, rank)
}

/// `A = U * S * V` with `U`, `V` unimodular and `S` diagonal with a
/// divisibility chain of nonnegative entries.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// Nonzero diagonal entries of `S`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

pub fn snf(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = a.shape();
    let red = reduce(a, true, true);
    let mut s = IntMatrix::zeros(m, n);
    for (i, d) in red.diag.iter().enumerate() {
        s.set(i, i, d.clone());
    }
    let (l, l_inv) = red.left.expect("left tracked");
    let (r, r_inv) = red.right.expect("right tracked");
    SnfDecomposition {
        u: l_inv,
        s,
        v: r_inv,
        u_inv: l,
        v_inv: r,
        rank: red.rank,
    }
}

/// Nonzero invariant factors, without transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let red = reduce(a, false, false);
    red.diag.into_iter().take(red.rank).collect()
}

pub fn rank(a: &IntMatrix) -> usize {
    reduce(a, false, false).rank
}

/// Columns form a basis of the integer kernel of `a` (a saturated lattice).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let red = reduce(a, false, true);
    let (r, _) = red.right.expect("right tracked");
    let cols: Vec<usize> = (red.rank..a.cols()).collect();
    r.select_columns(&cols)
}

/// Some `x` with `a * x = v`, or `None` when `v` is not in the integer image.
pub fn solve_in_image(a: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against a matrix with {} rows",
            v.len(),
            a.rows()
        )));
    }
    let red = reduce(a, true, true);
    let (l, _) = red.left.as_ref().expect("left tracked");
    let (r, _) = red.right.as_ref().expect("right tracked");
    let w = l.mul_vec(v);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, wi) in w.iter().enumerate() {
        if i < red.rank {
            let (q, rem) = wi.div_rem(&red.diag[i]);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !wi.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(r.mul_vec(&y)))
}

/// Solves for many right-hand sides at once. `targets` columns are solved
/// independently; returns `None` as soon as one fails.
pub fn solve_columns(a: &IntMatrix, targets: &IntMatrix) -> Result<Option<IntMatrix>> {
    if targets.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "targets with {} rows against a matrix with {} rows",
            targets.rows(),
            a.rows()
        )));
    }
    let red = reduce(a, true, true);
    let (l, _) = red.left.as_ref().expect("left tracked");
    let (r, _) = red.right.as_ref().expect("right tracked");
    let w = l.matmul(targets);
    let mut y = IntMatrix::zeros(a.cols(), targets.cols());
    for j in 0..targets.cols() {
        for i in 0..w.rows() {
            let wi = w.get(i, j);
            if i < red.rank {
                let (q, rem) = wi.div_rem(&red.diag[i]);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y.set(i, j, q);
            } else if !wi.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(r.matmul(&y)))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut m = a.to_big_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { sign * &m[n - 1][n - 1] })
}

pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.is_square() && {
        let f = invariant_factors(a);
        f.len() == a.rows() && f.iter().all(One::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::int_vec;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let d = snf(a);
        assert_eq!(&(&d.u * &d.s) * &d.v, *a);
        assert_eq!(&d.u * d.u_inv(), IntMatrix::identity(a.rows()));
        assert_eq!(&d.v * d.v_inv(), IntMatrix::identity(a.cols()));
        d
    }

    #[test]
    fn identity_case() {
        let d = check(&IntMatrix::identity(2));
        assert!(d.s.is_identity());
        assert!(d.u.is_identity() && d.v.is_identity());
    }

    #[test]
    fn zero_case() {
        let d = check(&IntMatrix::from_rows(&[vec![0]]));
        assert!(d.s.is_zero());
        assert_eq!(d.rank(), 0);
    }

    #[test]
    fn two_by_two_divisibility() {
        // gcd of entries is 2 and |det| = 8, so the diagonal must be (2, 4).
        let d = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(d.invariant_factors(), int_vec(&[2, 4]));
    }

    #[test]
    fn empty_matrices() {
        let d = check(&IntMatrix::zeros(0, 3));
        assert_eq!(d.rank(), 0);
        assert_eq!(kernel_basis(&IntMatrix::zeros(0, 3)), IntMatrix::identity(3));
        let d = check(&IntMatrix::zeros(2, 0));
        assert_eq!(d.s.shape(), (2, 0));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::zeros(2, 2)).cols(), 2);
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![1, 1]]));
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert!(v == int_vec(&[1, -1]) || v == int_vec(&[-1, 1]));
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(
            solve_in_image(&id, &int_vec(&[4, -1, 7])).unwrap(),
            Some(int_vec(&[4, -1, 7]))
        );
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_in_image(&two, &int_vec(&[1])).unwrap(), None);
        assert_eq!(solve_in_image(&two, &int_vec(&[4])).unwrap(), Some(int_vec(&[2])));
        assert!(matches!(
            solve_in_image(&two, &int_vec(&[1, 2])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let a = IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 7, big - 2]]);
        let d = check(&a);
        let det = determinant(&a).unwrap();
        let prod: BigInt = d.invariant_factors().iter().product();
        assert_eq!(prod, det.abs());
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        assert_eq!(determinant(&a).unwrap(), BigInt::from(1));
        assert!(is_unimodular(&a));
        assert!(!is_unimodular(&IntMatrix::from_rows(&[vec![2]])));
    }
}
