//! Classical group (co)homology from the inhomogeneous bar complex of a
//! multiplication table, diagonalized with its own small integer
//! elimination. Shares no code with the library.

use groupoidal::zlinalg::FgAbGroup;
use num_bigint::BigInt;

type Dense = Vec<Vec<i128>>;

/// Tuples of length `n` over `0..k`, first entry most significant.
fn tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn index(k: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * k + x)
}

/// Boundary `Z[G^n] -> Z[G^(n-1)]` with trivial coefficients, rows indexed by targets.
fn bar_boundary(table: &[Vec<usize>], n: usize) -> Dense {
    let k = table.len();
    let rows = k.pow((n - 1) as u32);
    let mut m = vec![vec![0i128; k.pow(n as u32)]; rows];
    for (col, t) in tuples(k, n).iter().enumerate() {
        m[index(k, &t[1..])][col] += 1;
        for i in 0..n - 1 {
            let mut s = t[..i].to_vec();
            s.push(table[t[i]][t[i + 1]]);
            s.extend_from_slice(&t[i + 2..]);
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            m[index(k, &s)][col] += sign;
        }
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        m[index(k, &t[..n - 1])][col] += sign;
    }
    m
}

/// Nonzero diagonal entries of a Smith form, by repeated pivoting on the
/// smallest entry.
fn diagonal(mut m: Dense) -> Vec<i128> {
    let mut out = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 && best.is_none_or(|(a, b)| x.abs() < m[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        let p = m[pi][pj];
        let mut clean = true;
        for i in 0..m.len() {
            if i != pi && m[i][pj] != 0 {
                let q = m[i][pj] / p;
                for j in 0..m[i].len() {
                    m[i][j] -= q * m[pi][j];
                }
                clean &= m[i][pj] == 0;
            }
        }
        for j in 0..m[pi].len() {
            if j != pj && m[pi][j] != 0 {
                let q = m[pi][j] / p;
                for row in m.iter_mut() {
                    row[j] -= q * row[pj];
                }
                clean &= m[pi][j] == 0;
            }
        }
        if !clean {
            continue;
        }
        // a pivot that does not divide the rest gets the rest added to its row
        if let Some(i) = (0..m.len()).find(|&i| i != pi && m[i].iter().any(|&x| x % p != 0)) {
            for j in 0..m[pi].len() {
                m[pi][j] += m[i][j];
            }
            continue;
        }
        out.push(p.abs());
        m.remove(pi);
        for row in &mut m {
            row.remove(pj);
        }
    }
    out
}

fn transpose(m: &Dense, cols: usize) -> Dense {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

fn group_of(dim: usize, out_rank: usize, incoming: &[i128]) -> FgAbGroup {
    let orders: Vec<BigInt> = incoming.iter().map(|&x| BigInt::from(x)).collect();
    FgAbGroup::from_cyclic_orders(dim - out_rank - incoming.len(), &orders)
}

/// Classical `H_0 ..= H_top` with trivial integer coefficients.
pub fn oracle_homology(table: &[Vec<usize>], top: usize) -> Vec<FgAbGroup> {
    let k = table.len();
    let diags: Vec<Vec<i128>> = (1..=top + 1).map(|n| diagonal(bar_boundary(table, n))).collect();
    (0..=top)
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { diags[n - 1].len() };
            group_of(k.pow(n as u32), out_rank, &diags[n])
        })
        .collect()
}

/// Classical `H^0 ..= H^top` with trivial integer coefficients, from the dual complex.
pub fn oracle_cohomology(table: &[Vec<usize>], top: usize) -> Vec<FgAbGroup> {
    let k = table.len();
    let duals: Vec<Vec<i128>> = (1..=top + 1)
        .map(|n| diagonal(transpose(&bar_boundary(table, n), k.pow(n as u32))))
        .collect();
    (0..=top)
        .map(|n| {
            let incoming: &[i128] = if n == 0 { &[] } else { &duals[n - 1] };
            group_of(k.pow(n as u32), duals[n].len(), incoming)
        })
        .collect()
}
