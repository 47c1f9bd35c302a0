//! Cohomology with coefficients in a module, through two cochain models:
//! cochains `f(g_1, ..., g_n) in M_{r(g_1)}` with the cocycle coboundary, and
//! equivariant homs out of the bar resolution. The comparison maps between
//! them, pullbacks, and induced maps live here as well.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{bar_terms, merge_at, FiniteGroupoid, GModule, GroupoidFunctor, Nerve};
use crate::homology::InducedMap;
use crate::zlinalg::{homology_at, FgAbGroup, IntMatrix, Subquotient};

fn check_module(g: &FiniteGroupoid, m: &GModule) -> Result<()> {
    m.validate(g).map_err(|v| Error::InvalidModule(v.to_string()))
}

/// Block layout shared by both cochain models: one fiber per basis tuple.
#[derive(Debug, Clone)]
struct Blocks {
    offsets: Vec<usize>,
    ranks: Vec<usize>,
    total: usize,
}

impl Blocks {
    fn new(ranks: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(ranks.len());
        let mut total = 0;
        for &r in &ranks {
            offsets.push(total);
            total += r;
        }
        Blocks { offsets, ranks, total }
    }
}

fn add_block(out: &mut IntMatrix, row: usize, col: usize, block: &IntMatrix, sign: i64) {
    let s = BigInt::from(sign);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if v.sign() != num_bigint::Sign::NoSign {
                out.add_at(row + i, col + j, &(v * &s));
            }
        }
    }
}

fn add_identity(out: &mut IntMatrix, row: usize, col: usize, rank: usize, sign: i64) {
    let s = BigInt::from(sign);
    for i in 0..rank {
        out.add_at(row + i, col + i, &s);
    }
}

/// Degree-`n` cochains: for `n >= 1` one copy of `M_{r(g_1)}` per string
/// `(g_1, ..., g_n)`, for `n = 0` one fiber per unit.
#[derive(Debug, Clone)]
pub struct CochainSpace {
    degree: usize,
    tuples: Nerve,
    blocks: Blocks,
}

fn fiber_unit(g: &FiniteGroupoid, t: &[usize], degree: usize) -> usize {
    if degree == 0 {
        t[0]
    } else {
        g.rng(t[0])
    }
}

impl CochainSpace {
    pub fn new(g: &FiniteGroupoid, m: &GModule, n: usize) -> Result<Self> {
        let tuples = g.nerve(n)?;
        let ranks = tuples.iter().map(|t| m.fiber(g, fiber_unit(g, t, n))).collect();
        Ok(CochainSpace {
            degree: n,
            tuples,
            blocks: Blocks::new(ranks),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.blocks.total
    }

    pub fn tuples(&self) -> &Nerve {
        &self.tuples
    }

    /// Offset and rank of the block of a basis tuple.
    pub fn block(&self, t: &[usize]) -> (usize, usize) {
        let i = self.tuples.position(t);
        (self.blocks.offsets[i], self.blocks.ranks[i])
    }
}

/// Equivariant homs `Z[G^(n+1)] -> M`, stored by their values on the orbit
/// representatives: the strings whose first entry is a unit, in
/// lexicographic order. A value at `(u, g_1, ..., g_n)` lies in `M_u`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    degree: usize,
    reps: Vec<Vec<usize>>,
    /// Representative index for each basis string of `G^(n)`.
    rep_of_tail: Vec<usize>,
    tails: Nerve,
    blocks: Blocks,
}

impl HomSpace {
    pub fn new(g: &FiniteGroupoid, m: &GModule, n: usize) -> Result<Self> {
        let tails = g.nerve(n)?;
        let mut reps: Vec<(Vec<usize>, usize)> = tails
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let rep = if n == 0 {
                    t.to_vec()
                } else {
                    std::iter::once(g.rng(t[0])).chain(t.iter().copied()).collect()
                };
                (rep, i)
            })
            .collect();
        reps.sort();
        let mut rep_of_tail = vec![0; reps.len()];
        for (r, (_, tail)) in reps.iter().enumerate() {
            rep_of_tail[*tail] = r;
        }
        let reps: Vec<Vec<usize>> = reps.into_iter().map(|(r, _)| r).collect();
        let ranks = reps.iter().map(|r| m.fiber(g, r[0])).collect();
        Ok(HomSpace {
            degree: n,
            reps,
            rep_of_tail,
            tails,
            blocks: Blocks::new(ranks),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.blocks.total
    }

    pub fn representatives(&self) -> &[Vec<usize>] {
        &self.reps
    }

    /// Representative index of the orbit of `(s(h_0), h_1, ..., h_n)` for a
    /// string `(h_0, ..., h_n)` of `G^(n+1)`.
    fn orbit_rep(&self, g: &FiniteGroupoid, t: &[usize]) -> usize {
        let tail_index = if self.degree == 0 {
            self.tails.position(&[g.src(t[0])])
        } else {
            self.tails.position(&t[1..])
        };
        self.rep_of_tail[tail_index]
    }

    fn block_of_rep(&self, r: usize) -> (usize, usize) {
        (self.blocks.offsets[r], self.blocks.ranks[r])
    }
}

/// Matrix of the cocycle coboundary `C^n(G, M) -> C^{n+1}(G, M)`.
pub fn cocycle_coboundary_matrix(g: &FiniteGroupoid, m: &GModule, n: usize) -> Result<IntMatrix> {
    check_module(g, m)?;
    coboundary(g, m, &CochainSpace::new(g, m, n)?, &CochainSpace::new(g, m, n + 1)?)
}

fn coboundary(g: &FiniteGroupoid, m: &GModule, src: &CochainSpace, dst: &CochainSpace) -> Result<IntMatrix> {
    let n = src.degree;
    let mut out = IntMatrix::zeros(dst.rank(), src.rank());
    for (i, t) in dst.tuples.iter().enumerate() {
        let (row, rank) = (dst.blocks.offsets[i], dst.blocks.ranks[i]);
        let g0 = t[0];
        if n == 0 {
            let (col, _) = src.block(&[g.src(g0)]);
            add_block(&mut out, row, col, m.action(g0), 1);
            let (col, _) = src.block(&[g.rng(g0)]);
            add_identity(&mut out, row, col, rank, -1);
            continue;
        }
        let (col, _) = src.block(&t[1..]);
        add_block(&mut out, row, col, m.action(g0), 1);
        for k in 1..=n {
            let (col, _) = src.block(&merge_at(g, t, k - 1));
            add_identity(&mut out, row, col, rank, if k % 2 == 0 { 1 } else { -1 });
        }
        let (col, _) = src.block(&t[..n]);
        add_identity(&mut out, row, col, rank, if (n + 1).is_multiple_of(2) { 1 } else { -1 });
    }
    Ok(out)
}

/// Matrix of `phi -> phi o b_{n+1}` on representative values.
fn hom_coboundary(g: &FiniteGroupoid, m: &GModule, src: &HomSpace, dst: &HomSpace) -> IntMatrix {
    let mut out = IntMatrix::zeros(dst.rank(), src.rank());
    for (r, rep) in dst.reps.iter().enumerate() {
        let (row, _) = dst.block_of_rep(r);
        for (face, c) in bar_terms(g, rep) {
            // phi(h_0, h_1, ...) = alpha(h_0) phi(s(h_0), h_1, ...)
            let (col, _) = src.block_of_rep(src.orbit_rep(g, &face));
            add_block(&mut out, row, col, m.action(face[0]), c);
        }
    }
    out
}

pub fn hom_coboundary_matrix(g: &FiniteGroupoid, m: &GModule, n: usize) -> Result<IntMatrix> {
    check_module(g, m)?;
    Ok(hom_coboundary(
        g,
        m,
        &HomSpace::new(g, m, n)?,
        &HomSpace::new(g, m, n + 1)?,
    ))
}

fn groups_from(deltas: &[IntMatrix], first_rank: usize) -> Result<Vec<FgAbGroup>> {
    (0..deltas.len())
        .into_par_iter()
        .map(|n| {
            let incoming = if n == 0 {
                IntMatrix::zeros(first_rank, 0)
            } else {
                deltas[n - 1].clone()
            };
            homology_at(&deltas[n], &incoming)
        })
        .collect()
}

fn cocycle_deltas(g: &FiniteGroupoid, m: &GModule, n_max: usize) -> Result<(Vec<CochainSpace>, Vec<IntMatrix>)> {
    g.nerve(n_max + 1)?;
    let spaces: Vec<CochainSpace> = (0..=n_max + 1)
        .into_par_iter()
        .map(|n| CochainSpace::new(g, m, n))
        .collect::<Result<_>>()?;
    let deltas = (0..=n_max)
        .into_par_iter()
        .map(|n| coboundary(g, m, &spaces[n], &spaces[n + 1]))
        .collect::<Result<_>>()?;
    Ok((spaces, deltas))
}

fn hom_deltas(g: &FiniteGroupoid, m: &GModule, n_max: usize) -> Result<(Vec<HomSpace>, Vec<IntMatrix>)> {
    g.nerve(n_max + 1)?;
    let spaces: Vec<HomSpace> = (0..=n_max + 1)
        .into_par_iter()
        .map(|n| HomSpace::new(g, m, n))
        .collect::<Result<_>>()?;
    let deltas = (0..=n_max)
        .into_par_iter()
        .map(|n| hom_coboundary(g, m, &spaces[n], &spaces[n + 1]))
        .collect();
    Ok((spaces, deltas))
}

/// `H^0 .. H^{n_max}` of the cocycle complex.
pub fn cocycle_cohomology(g: &FiniteGroupoid, m: &GModule, n_max: usize) -> Result<Vec<FgAbGroup>> {
    check_module(g, m)?;
    let (spaces, deltas) = cocycle_deltas(g, m, n_max)?;
    groups_from(&deltas, spaces[0].rank())
}

/// `H^0 .. H^{n_max}` of the equivariant Hom complex.
pub fn hom_side_cohomology(g: &FiniteGroupoid, m: &GModule, n_max: usize) -> Result<Vec<FgAbGroup>> {
    check_module(g, m)?;
    let (spaces, deltas) = hom_deltas(g, m, n_max)?;
    groups_from(&deltas, spaces[0].rank())
}

/// `H^n` of the cocycle complex with chosen cocycle representatives.
pub fn cohomology_presentation(g: &FiniteGroupoid, m: &GModule, n: usize) -> Result<Subquotient> {
    check_module(g, m)?;
    let out = cocycle_coboundary_matrix(g, m, n)?;
    let incoming = if n == 0 {
        IntMatrix::zeros(out.cols(), 0)
    } else {
        cocycle_coboundary_matrix(g, m, n - 1)?
    };
    Subquotient::new(&out, &incoming)
}

/// `theta^n`: read an equivariant hom at `(r(g_1), g_1, ..., g_n)`.
fn theta(hom: &HomSpace, coch: &CochainSpace) -> IntMatrix {
    let mut out = IntMatrix::zeros(coch.rank(), hom.rank());
    for (i, _) in coch.tuples.iter().enumerate() {
        let (row, rank) = (coch.blocks.offsets[i], coch.blocks.ranks[i]);
        let (col, _) = hom.block_of_rep(hom.rep_of_tail[i]);
        add_identity(&mut out, row, col, rank, 1);
    }
    out
}

/// `rho^n` on representatives: the value at `(u, g_1, ..., g_n)` is
/// `alpha(u) f(g_1, ..., g_n) = f(g_1, ..., g_n)`.
fn rho(hom: &HomSpace, coch: &CochainSpace) -> IntMatrix {
    theta(hom, coch).transpose()
}

/// `rho^n` evaluated on every string of `G^(n+1)`:
/// `(g_0, ..., g_n) -> alpha(g_0) f(g_1, ..., g_n)`.
fn rho_everywhere(g: &FiniteGroupoid, m: &GModule, coch: &CochainSpace) -> Result<(Nerve, Blocks, IntMatrix)> {
    let n = coch.degree;
    let strings = g.nerve(n + 1)?;
    let blocks = Blocks::new(strings.iter().map(|t| m.fiber(g, g.rng(t[0]))).collect());
    let mut out = IntMatrix::zeros(blocks.total, coch.rank());
    for (i, t) in strings.iter().enumerate() {
        let tail: Vec<usize> = if n == 0 { vec![g.src(t[0])] } else { t[1..].to_vec() };
        let (col, _) = coch.block(&tail);
        add_block(&mut out, blocks.offsets[i], col, m.action(t[0]), 1);
    }
    Ok((strings, blocks, out))
}

/// Checks `phi(h g_0, g_1, ...) = alpha(h) phi(g_0, g_1, ...)` for every
/// composable `h`, rowwise on the matrix of `rho`.
fn is_equivariant(g: &FiniteGroupoid, m: &GModule, strings: &Nerve, blocks: &Blocks, values: &IntMatrix) -> bool {
    let rows_of = |i: usize| -> Vec<usize> { (blocks.offsets[i]..blocks.offsets[i] + blocks.ranks[i]).collect() };
    strings.iter().enumerate().all(|(i, t)| {
        let here = values.select_rows(&rows_of(i));
        (0..g.n_arrows()).filter(|&h| g.src(h) == g.rng(t[0])).all(|h| {
            let mut moved = t.to_vec();
            moved[0] = g.mul(h, t[0]);
            let j = strings.position(&moved);
            values.select_rows(&rows_of(j)) == m.action(h).matmul(&here)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaRhoDegree {
    pub degree: usize,
    pub rho_theta_identity: bool,
    pub theta_rho_identity: bool,
    /// `delta_c^n theta^n = theta^{n+1} delta_n`.
    pub chain_map: bool,
    pub rho_equivariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaRhoReport {
    pub degrees: Vec<ThetaRhoDegree>,
    pub cocycle_cohomology: Vec<FgAbGroup>,
    pub hom_cohomology: Vec<FgAbGroup>,
    pub groups_agree: bool,
    /// First failing identity, if any.
    pub witness: Option<String>,
}

impl ThetaRhoReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Builds the comparison maps between the two cochain models in degrees
/// `0 ..= n_max` and checks that they are mutually inverse chain maps.
pub fn theta_rho_check(g: &FiniteGroupoid, m: &GModule, n_max: usize) -> Result<ThetaRhoReport> {
    check_module(g, m)?;
    let (coch, c_deltas) = cocycle_deltas(g, m, n_max)?;
    let (homs, h_deltas) = hom_deltas(g, m, n_max)?;
    let thetas: Vec<IntMatrix> = (0..=n_max + 1).map(|n| theta(&homs[n], &coch[n])).collect();
    let degrees: Vec<ThetaRhoDegree> = (0..=n_max)
        .into_par_iter()
        .map(|n| -> Result<ThetaRhoDegree> {
            let rho_n = rho(&homs[n], &coch[n]);
            let (strings, blocks, full) = rho_everywhere(g, m, &coch[n])?;
            Ok(ThetaRhoDegree {
                degree: n,
                rho_theta_identity: rho_n.matmul(&thetas[n]).is_identity(),
                theta_rho_identity: thetas[n].matmul(&rho_n).is_identity(),
                chain_map: c_deltas[n].matmul(&thetas[n]) == thetas[n + 1].matmul(&h_deltas[n]),
                rho_equivariant: is_equivariant(g, m, &strings, &blocks, &full),
            })
        })
        .collect::<Result<_>>()?;
    let cocycle_cohomology = groups_from(&c_deltas, coch[0].rank())?;
    let hom_cohomology = groups_from(&h_deltas, homs[0].rank())?;
    let groups_agree = cocycle_cohomology == hom_cohomology;
    let witness = degrees
        .iter()
        .find_map(|d| {
            let failed = [
                (d.rho_theta_identity, "rho theta is not the identity"),
                (d.theta_rho_identity, "theta rho is not the identity"),
                (d.chain_map, "theta does not commute with the coboundaries"),
                (d.rho_equivariant, "rho is not equivariant"),
            ]
            .into_iter()
            .find(|(ok, _)| !ok)?;
            Some(format!("degree {}: {}", d.degree, failed.1))
        })
        .or_else(|| (!groups_agree).then(|| "cohomology groups of the two models differ".to_string()));
    Ok(ThetaRhoReport {
        degrees,
        cocycle_cohomology,
        hom_cohomology,
        groups_agree,
        witness,
    })
}

/// The module over `g1` with fiber `M_{phi(x)}` at `x` and action `alpha(phi(g))`.
pub fn pullback_module(
    phi: &GroupoidFunctor,
    g1: &FiniteGroupoid,
    g2: &FiniteGroupoid,
    m: &GModule,
) -> Result<GModule> {
    phi.validate(g1, g2)?;
    check_module(g2, m)?;
    let fibers = g1.units().iter().map(|&u| m.fiber(g2, phi.apply(u))).collect();
    let action = (0..g1.n_arrows()).map(|a| m.action(phi.apply(a)).clone()).collect();
    Ok(GModule::new(fibers, action))
}

/// Cochain-level pullback `C^n(G2, M) -> C^n(G1, phi^* M)`.
pub fn pullback_matrix(
    phi: &GroupoidFunctor,
    g1: &FiniteGroupoid,
    g2: &FiniteGroupoid,
    m: &GModule,
    n: usize,
) -> Result<IntMatrix> {
    let pulled = pullback_module(phi, g1, g2, m)?;
    let dst = CochainSpace::new(g1, &pulled, n)?;
    let src = CochainSpace::new(g2, m, n)?;
    let mut out = IntMatrix::zeros(dst.rank(), src.rank());
    for (i, t) in dst.tuples.iter().enumerate() {
        let (col, _) = src.block(&phi.apply_tuple(t));
        add_identity(&mut out, dst.blocks.offsets[i], col, dst.blocks.ranks[i], 1);
    }
    Ok(out)
}

pub fn induced_cohomology_map(
    phi: &GroupoidFunctor,
    g1: &FiniteGroupoid,
    g2: &FiniteGroupoid,
    m: &GModule,
    n: usize,
) -> Result<InducedMap> {
    let chain = pullback_matrix(phi, g1, g2, m, n)?;
    let pulled = pullback_module(phi, g1, g2, m)?;
    let source = cohomology_presentation(g2, m, n)?;
    let target = cohomology_presentation(g1, &pulled, n)?;
    let on_homology = source.induced_map(&target, &chain)?;
    Ok(InducedMap { chain, on_homology })
}

/// Fiber-rank one constant module, the usual integer coefficients.
pub fn integer_coefficients(g: &FiniteGroupoid) -> GModule {
    crate::models::constant_module(g, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{constant_module, cyclic_group, pair_groupoid, sign_module, space_groupoid};

    fn shown(v: &[FgAbGroup]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn low_degree_coboundaries_of_z2() {
        let g = cyclic_group(2);
        let z = constant_module(&g, 1);
        assert!(cocycle_coboundary_matrix(&g, &z, 0).unwrap().is_zero());
        // rows (e,e), (e,g), (g,e), (g,g); columns f(e), f(g)
        assert_eq!(
            cocycle_coboundary_matrix(&g, &z, 1).unwrap(),
            IntMatrix::from_rows(&[vec![1, 0], vec![1, 0], vec![1, 0], vec![-1, 2]])
        );
        let sign = sign_module(&g, &[false, true]);
        assert_eq!(
            cocycle_coboundary_matrix(&g, &sign, 0).unwrap(),
            IntMatrix::from_rows(&[vec![0], vec![-2]])
        );
    }

    #[test]
    fn both_models_agree_on_small_examples() {
        for (g, want) in [
            (cyclic_group(2), vec!["Z", "0", "Z/2", "0"]),
            (space_groupoid(3), vec!["Z^3", "0", "0", "0"]),
            (pair_groupoid(3), vec!["Z", "0", "0", "0"]),
        ] {
            let m = constant_module(&g, 1);
            assert_eq!(shown(&cocycle_cohomology(&g, &m, 3).unwrap()), want);
            assert_eq!(shown(&hom_side_cohomology(&g, &m, 3).unwrap()), want);
        }
        let g = cyclic_group(3);
        assert_eq!(
            shown(&hom_side_cohomology(&g, &constant_module(&g, 1), 2).unwrap()),
            ["Z", "0", "Z/3"]
        );
    }

    #[test]
    fn theta_rho_on_z2() {
        let g = cyclic_group(2);
        let r = theta_rho_check(&g, &constant_module(&g, 1), 2).unwrap();
        assert!(r.passed(), "{:?}", r.witness);
        let r = theta_rho_check(&g, &sign_module(&g, &[false, true]), 2).unwrap();
        assert!(r.passed(), "{:?}", r.witness);
    }

    #[test]
    fn pullback_along_quotient() {
        let z4 = cyclic_group(4);
        let z2 = cyclic_group(2);
        let quotient = GroupoidFunctor::new(vec![0, 1, 0, 1]);
        let m = pullback_module(&quotient, &z4, &z2, &sign_module(&z2, &[false, true])).unwrap();
        m.validate(&z4).unwrap();
        assert_eq!(m.action(2), &IntMatrix::identity(1));
        assert_eq!(m.action(3), &IntMatrix::from_rows(&[vec![-1]]));
    }

    #[test]
    fn invalid_module_is_rejected() {
        let g = cyclic_group(2);
        let bad = GModule::new(vec![1], vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![3]])]);
        assert!(matches!(cocycle_cohomology(&g, &bad, 1), Err(Error::InvalidModule(_))));
    }
}
