//! Boundary matrices in nerve bases.
//!
//! Every matrix maps the free abelian group on one nerve to the free abelian
//! group on another: column `j` is the image of basis tuple `j`, and a
//! pushforward along a face map sums over its fibers.

use num_bigint::BigInt;

use super::{FiniteGroupoid, Nerve};
use crate::error::Result;
use crate::zlinalg::IntMatrix;

pub(crate) fn assemble(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> IntMatrix {
    let mut acc = vec![0i64; rows * cols];
    for &(r, c, v) in entries {
        acc[r * cols + c] += v;
    }
    IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(acc[i * cols + j]))
}

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Merges positions `i` and `i + 1` of a composable string.
pub(crate) fn merge_at(g: &FiniteGroupoid, t: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(t.len() - 1);
    out.extend_from_slice(&t[..i]);
    out.push(g.mul(t[i], t[i + 1]));
    out.extend_from_slice(&t[i + 2..]);
    out
}

/// Face `i` of the homology complex on a string `(g_1, ..., g_n)`, `n >= 2`.
pub(crate) fn face(g: &FiniteGroupoid, t: &[usize], i: usize) -> Vec<usize> {
    let n = t.len();
    match i {
        0 => t[1..].to_vec(),
        i if i == n => t[..n - 1].to_vec(),
        i => merge_at(g, t, i - 1),
    }
}

fn unit_column(target: &Nerve, unit: usize) -> usize {
    target.position(&[unit])
}

/// `d_n : Z[G^(n)] -> Z[G^(n-1)]`: `d_1 = s_* - r_*`, and for `n >= 2` the
/// alternating sum of face pushforwards. `n = 0` yields the zero map to the
/// trivial group.
pub fn boundary_matrix_d(g: &FiniteGroupoid, n: usize) -> Result<IntMatrix> {
    let domain = g.nerve(n)?;
    if n == 0 {
        return Ok(IntMatrix::zeros(0, domain.len()));
    }
    let target = g.nerve(n - 1)?;
    let mut entries = Vec::new();
    for (col, t) in domain.iter().enumerate() {
        if n == 1 {
            let a = t[0];
            entries.push((unit_column(&target, g.src(a)), col, 1));
            entries.push((unit_column(&target, g.rng(a)), col, -1));
        } else {
            for i in 0..=n {
                entries.push((target.position(&face(g, t, i)), col, sign(i)));
            }
        }
    }
    Ok(assemble(target.len(), domain.len(), &entries))
}

/// Terms of the bar differential on one string `(g_0, ..., g_n)`.
pub(crate) fn bar_terms(g: &FiniteGroupoid, t: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let n = t.len() - 1;
    if n == 0 {
        return vec![(vec![g.rng(t[0])], 1)];
    }
    let mut out: Vec<(Vec<usize>, i64)> = (0..n).map(|i| (merge_at(g, t, i), sign(i))).collect();
    out.push((t[..n].to_vec(), sign(n)));
    out
}

/// Bar differential `b_n : Z[G^(n+1)] -> Z[G^(n)]`. The augmentation is
/// `b_0 = r_*`: with faces that merge or drop the last entry, `s_*` would
/// give `b_0 b_1 [g_0, g_1] = s(g_1) - s(g_0)`.
pub fn bar_boundary_matrix_b(g: &FiniteGroupoid, n: usize) -> Result<IntMatrix> {
    let domain = g.nerve(n + 1)?;
    let target = g.nerve(n)?;
    let mut entries = Vec::new();
    for (col, t) in domain.iter().enumerate() {
        for (face, c) in bar_terms(g, t) {
            entries.push((target.position(&face), col, c));
        }
    }
    Ok(assemble(target.len(), domain.len(), &entries))
}

/// Contracting homotopy `h_n : Z[G^(n)] -> Z[G^(n+1)]`, prepending
/// `r(g_0)`; `h_0` is the inclusion of units.
pub fn bar_homotopy_matrix(g: &FiniteGroupoid, n: usize) -> Result<IntMatrix> {
    let domain = g.nerve(n)?;
    let target = g.nerve(n + 1)?;
    let entries: Vec<_> = domain
        .iter()
        .enumerate()
        .map(|(col, t)| {
            let row = if n == 0 {
                target.position(t)
            } else {
                let mut up = Vec::with_capacity(t.len() + 1);
                up.push(g.rng(t[0]));
                up.extend_from_slice(t);
                target.position(&up)
            };
            (row, col, 1)
        })
        .collect();
    Ok(assemble(target.len(), domain.len(), &entries))
}

/// Coinvariant collapse `q_n : Z[G^(n+1)] -> Z[G^(n)]`, dropping the first
/// entry (`n >= 1`) or sending `[g_0]` to its source (`n = 0`).
pub fn coinvariants_collapse(g: &FiniteGroupoid, n: usize) -> Result<IntMatrix> {
    let domain = g.nerve(n + 1)?;
    let target = g.nerve(n)?;
    let entries: Vec<_> = domain
        .iter()
        .enumerate()
        .map(|(col, t)| {
            let row = if n == 0 {
                unit_column(&target, g.src(t[0]))
            } else {
                target.position(&t[1..])
            };
            (row, col, 1)
        })
        .collect();
    Ok(assemble(target.len(), domain.len(), &entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteGroupoid {
        FiniteGroupoid::build(vec![0], vec![0, 0], vec![0, 0], vec![0, 1], |g, h| g ^ h).unwrap()
    }

    fn space(k: usize) -> FiniteGroupoid {
        FiniteGroupoid::build(
            (0..k).collect(),
            (0..k).collect(),
            (0..k).collect(),
            (0..k).collect(),
            |g, _| g,
        )
        .unwrap()
    }

    #[test]
    fn z2_low_degree_boundaries() {
        let g = z2();
        assert_eq!(boundary_matrix_d(&g, 1).unwrap(), IntMatrix::zeros(1, 2));
        // columns (e,e), (e,g), (g,e), (g,g) over basis [e], [g]
        assert_eq!(
            boundary_matrix_d(&g, 2).unwrap(),
            IntMatrix::from_rows(&[vec![1, 1, 1, -1], vec![0, 0, 0, 2]])
        );
    }

    #[test]
    fn space_groupoid_alternates() {
        let g = space(3);
        assert!(boundary_matrix_d(&g, 1).unwrap().is_zero());
        assert!(boundary_matrix_d(&g, 2).unwrap().is_identity());
        assert!(boundary_matrix_d(&g, 3).unwrap().is_zero());
        assert!(boundary_matrix_d(&g, 4).unwrap().is_identity());
    }

    #[test]
    fn z2_bar_and_collapse() {
        let g = z2();
        assert_eq!(
            bar_boundary_matrix_b(&g, 0).unwrap(),
            IntMatrix::from_rows(&[vec![1, 1]])
        );
        // b_1 on (e,e), (e,g), (g,e), (g,g): g0 g1 - g0
        assert_eq!(
            bar_boundary_matrix_b(&g, 1).unwrap(),
            IntMatrix::from_rows(&[vec![0, -1, 0, 1], vec![0, 1, 0, -1]])
        );
        assert_eq!(
            coinvariants_collapse(&g, 0).unwrap(),
            IntMatrix::from_rows(&[vec![1, 1]])
        );
        let q1 = coinvariants_collapse(&g, 1).unwrap();
        let b1 = bar_boundary_matrix_b(&g, 1).unwrap();
        let q0 = coinvariants_collapse(&g, 0).unwrap();
        let d1 = boundary_matrix_d(&g, 1).unwrap();
        assert_eq!(&q0 * &b1, &d1 * &q1);
        assert!((&q0 * &b1).is_zero());
    }

    #[test]
    fn collapse_selects_tail_on_unit_headed_tuples() {
        let g = z2();
        let q = coinvariants_collapse(&g, 2).unwrap();
        let n3 = g.nerve(3).unwrap();
        let n2 = g.nerve(2).unwrap();
        for (col, t) in n3.iter().enumerate() {
            if t[0] == 0 {
                let row = n2.index_of(&t[1..]).unwrap();
                assert_eq!(q.column(col).iter().filter(|x| **x != BigInt::from(0)).count(), 1);
                assert_eq!(q.get(row, col), &BigInt::from(1));
            }
        }
    }
}
