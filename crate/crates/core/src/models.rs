//! Constructors for the groupoids, modules and dynamical systems used
//! throughout the toolkit.
//!
//! Arrow id layouts are fixed per constructor and documented on each one, so
//! every downstream matrix is reproducible.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::groupoid::{default_cap, FiniteGroupoid, GModule, GroupoidFunctor};
use crate::limits::BratteliDiagram;
use crate::zlinalg::IntMatrix;

/// `k` points with trivial multiplication: arrows `0..k`, all units.
pub fn space_groupoid(k: usize) -> FiniteGroupoid {
    let ids: Vec<usize> = (0..k).collect();
    FiniteGroupoid::build(ids.clone(), ids.clone(), ids.clone(), ids, |g, _| g).expect("space groupoid is valid")
}

fn check_group_table(cayley: &[Vec<usize>]) -> Result<(usize, Vec<usize>)> {
    let k = cayley.len();
    let bad = |m: String| Err(Error::NotAGroup(m));
    if k == 0 {
        return bad("empty table".into());
    }
    if cayley.iter().any(|row| row.len() != k || row.iter().any(|&x| x >= k)) {
        return bad("table is not a square table over 0..k".into());
    }
    let Some(e) = (0..k).find(|&e| (0..k).all(|a| cayley[e][a] == a && cayley[a][e] == a)) else {
        return bad("no identity element".into());
    };
    let mut inv = vec![0; k];
    for a in 0..k {
        match (0..k).find(|&b| cayley[a][b] == e && cayley[b][a] == e) {
            Some(b) => inv[a] = b,
            None => return bad(format!("element {a} has no inverse")),
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                    return bad(format!("associativity fails on ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok((e, inv))
}

/// Group from its Cayley table: arrow ids are group elements, the identity
/// element is the only unit, `g * h = cayley[g][h]`.
pub fn group_groupoid(cayley: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    let (e, inv) = check_group_table(cayley)?;
    let k = cayley.len();
    FiniteGroupoid::build(vec![e], vec![e; k], vec![e; k], inv, |g, h| cayley[g][h])
}

/// Cayley table of `Z/m` with elements `0..m`.
pub fn cyclic_table(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect()
}

pub fn cyclic_group(m: usize) -> FiniteGroupoid {
    group_groupoid(&cyclic_table(m)).expect("cyclic group")
}

/// Cayley table of the symmetric group on three letters, elements indexed by
/// the lexicographic order of their images `(p(0), p(1), p(2))`; 0 is the identity.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("perm");
    (0..6)
        .map(|a| {
            (0..6)
                .map(|b| {
                    let (pa, pb) = (perms[a], perms[b]);
                    index([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
                })
                .collect()
        })
        .collect()
}

/// Elementary groupoid `R(psi) = {(y1, y2) : psi(y1) = psi(y2)}` for
/// `psi : {0..|Y|} -> {0..x_count}`.
///
/// Arrows are the pairs `(y1, y2)` in lexicographic order; range is `(y1, y1)`,
/// source is `(y2, y2)`, and `(y1, y2)(y2, y3) = (y1, y3)`.
pub fn pair_groupoid_from_map(psi: &[usize], x_count: usize) -> Result<FiniteGroupoid> {
    let mut hit = vec![false; x_count];
    for &x in psi {
        if x >= x_count {
            return Err(Error::NotSurjective(x));
        }
        hit[x] = true;
    }
    if let Some(x) = hit.iter().position(|h| !h) {
        return Err(Error::NotSurjective(x));
    }
    let pairs: Vec<(usize, usize)> = (0..psi.len())
        .flat_map(|a| (0..psi.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| psi[a] == psi[b])
        .collect();
    let id = |p: (usize, usize)| pairs.binary_search(&p).expect("pair present");
    let units: Vec<usize> = (0..psi.len()).map(|y| id((y, y))).collect();
    let src = pairs.iter().map(|&(_, b)| id((b, b))).collect();
    let rng = pairs.iter().map(|&(a, _)| id((a, a))).collect();
    let inv = pairs.iter().map(|&(a, b)| id((b, a))).collect();
    FiniteGroupoid::build(units, src, rng, inv, |g, h| id((pairs[g].0, pairs[h].1)))
}

/// Full pair groupoid on `k` points; arrow `(a, b)` has id `k * a + b`.
pub fn pair_groupoid(k: usize) -> FiniteGroupoid {
    pair_groupoid_from_map(&vec![0; k], 1).expect("pair groupoid")
}

/// Pair groupoid whose fibers have the given sizes.
pub fn pair_groupoid_from_fibers(fibers: &[usize]) -> Result<FiniteGroupoid> {
    let psi: Vec<usize> = fibers
        .iter()
        .enumerate()
        .flat_map(|(x, &n)| std::iter::repeat_n(x, n))
        .collect();
    pair_groupoid_from_map(&psi, fibers.len())
}

/// Transformation groupoid `Gamma x| X` from a Cayley table and one
/// permutation of `X` per group element.
///
/// Arrow `(gamma, x)` has id `gamma * |X| + x`, source `(e, x)`, range
/// `(e, gamma x)`, and `(gamma1, gamma2 x)(gamma2, x) = (gamma1 gamma2, x)`.
pub fn action_groupoid(cayley: &[Vec<usize>], perms: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    let (e, inv) = check_group_table(cayley)?;
    let k = cayley.len();
    if perms.len() != k {
        return Err(Error::NotAnAction(format!(
            "{} permutations for {k} group elements",
            perms.len()
        )));
    }
    let x = perms[0].len();
    for (gamma, p) in perms.iter().enumerate() {
        check_permutation(p, x).map_err(|_| Error::NotAnAction(format!("element {gamma} does not act bijectively")))?;
    }
    if perms[e].iter().enumerate().any(|(i, &y)| i != y) {
        return Err(Error::NotAnAction("identity acts nontrivially".into()));
    }
    for a in 0..k {
        for b in 0..k {
            if (0..x).any(|p| perms[a][perms[b][p]] != perms[cayley[a][b]][p]) {
                return Err(Error::NotAnAction(format!(
                    "action is not compatible with product ({a}, {b})"
                )));
            }
        }
    }
    let id = |gamma: usize, p: usize| gamma * x + p;
    let n = k * x;
    let units = (0..x).map(|p| id(e, p)).collect();
    let src = (0..n).map(|a| id(e, a % x)).collect();
    let rng = (0..n).map(|a| id(e, perms[a / x][a % x])).collect();
    let inverse = (0..n).map(|a| id(inv[a / x], perms[a / x][a % x])).collect();
    FiniteGroupoid::build(units, src, rng, inverse, |g, h| id(cayley[g / x][h / x], h % x))
}

pub(crate) fn check_permutation(p: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if p.len() != n {
        return Err(Error::NotAPermutation(format!("length {} instead of {n}", p.len())));
    }
    for &y in p {
        if y >= n || seen[y] {
            return Err(Error::NotAPermutation(format!("value {y} repeated or out of range")));
        }
        seen[y] = true;
    }
    Ok(())
}

/// Block union: arrows of `a` keep their ids, arrows of `b` are shifted by `|a|`.
pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
    let off = a.n_arrows();
    let n = off + b.n_arrows();
    let side = |g: usize| if g < off { (a, g, 0) } else { (b, g - off, off) };
    let mut units: Vec<usize> = a.units().to_vec();
    units.extend(b.units().iter().map(|u| u + off));
    let src = (0..n)
        .map(|g| {
            let (h, x, o) = side(g);
            h.src(x) + o
        })
        .collect();
    let rng = (0..n)
        .map(|g| {
            let (h, x, o) = side(g);
            h.rng(x) + o
        })
        .collect();
    let inv = (0..n)
        .map(|g| {
            let (h, x, o) = side(g);
            h.inv(x) + o
        })
        .collect();
    FiniteGroupoid::build(units, src, rng, inv, |g, h| {
        let (grp, x, o) = side(g);
        grp.mul(x, h - o) + o
    })
    .expect("disjoint union of valid groupoids")
}

/// Inclusion of the first summand into `disjoint_union(a, b)`.
pub fn left_inclusion(a: &FiniteGroupoid) -> GroupoidFunctor {
    GroupoidFunctor::identity(a)
}

/// Product groupoid; arrow `(x, y)` has id `x * |b| + y`.
pub fn product(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
    let m = b.n_arrows();
    let n = a.n_arrows() * m;
    let units = a
        .units()
        .iter()
        .flat_map(|&u| b.units().iter().map(move |&v| u * m + v))
        .collect();
    let src = (0..n).map(|g| a.src(g / m) * m + b.src(g % m)).collect();
    let rng = (0..n).map(|g| a.rng(g / m) * m + b.rng(g % m)).collect();
    let inv = (0..n).map(|g| a.inv(g / m) * m + b.inv(g % m)).collect();
    FiniteGroupoid::build(units, src, rng, inv, |g, h| {
        a.mul(g / m, h / m) * m + b.mul(g % m, h % m)
    })
    .expect("product of valid groupoids")
}

/// Constant functor onto the one-arrow groupoid.
pub fn collapse_to_point(g: &FiniteGroupoid) -> GroupoidFunctor {
    GroupoidFunctor::new(vec![0; g.n_arrows()])
}

/// Constant coefficients: fiber `Z^rank` everywhere, every arrow acts by the identity.
pub fn constant_module(g: &FiniteGroupoid, rank: usize) -> GModule {
    GModule::new(
        vec![rank; g.n_units()],
        (0..g.n_arrows()).map(|_| IntMatrix::identity(rank)).collect(),
    )
}

/// Rank-one module where arrows flagged odd act by `-1`. The flags must
/// define a homomorphism to `Z/2` for the result to validate.
pub fn sign_module(g: &FiniteGroupoid, odd: &[bool]) -> GModule {
    let minus = IntMatrix::from_rows(&[vec![-1]]);
    GModule::new(
        vec![1; g.n_units()],
        (0..g.n_arrows())
            .map(|a| if odd[a] { minus.clone() } else { IntMatrix::identity(1) })
            .collect(),
    )
}

/// Permutation matrix with `P e_x = e_{perm[x]}`.
pub fn permutation_matrix(perm: &[usize]) -> IntMatrix {
    let n = perm.len();
    IntMatrix::from_fn(n, n, |i, j| BigInt::from(u8::from(perm[j] == i)))
}

/// `Z[X]` over a group groupoid, each element acting by its permutation matrix.
pub fn permutation_module(g: &FiniteGroupoid, perms: &[Vec<usize>]) -> GModule {
    let x = perms.first().map_or(0, Vec::len);
    GModule::new(
        vec![x; g.n_units()],
        perms.iter().map(|p| permutation_matrix(p)).collect(),
    )
}

/// Stationary Bratteli diagram with the given multiplicity matrix repeated.
pub fn bratteli_stationary(matrix: &IntMatrix, levels: usize) -> Result<BratteliDiagram> {
    BratteliDiagram::stationary(matrix.clone(), levels)
}

/// The `UHF(p^infinity)` diagram: one vertex per level joined by `p` edges.
pub fn uhf_diagram(p: u64, levels: usize) -> Result<BratteliDiagram> {
    BratteliDiagram::stationary(IntMatrix::from_rows(&[vec![p]]), levels)
}

/// The `p`-adic odometer truncated at depths `1..=depth`.
///
/// Depth-`d` cylinders are digit strings `x_1 ... x_d` encoded little-endian as
/// `sum x_i p^(i-1)`; the odometer adds one with carry, which is `j -> j + 1
/// mod p^d`, and refinement drops the last (most significant) digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdometerSystem {
    p: usize,
    depth: usize,
}

impl OdometerSystem {
    pub fn new(p: usize, depth: usize) -> Result<Self> {
        let cap = default_cap();
        if p < 2 {
            return Err(Error::NotAPermutation(format!(
                "odometer base must be at least 2, got {p}"
            )));
        }
        match p.checked_pow(depth as u32) {
            Some(n) if n <= cap => Ok(OdometerSystem { p, depth }),
            _ => Err(Error::DepthTooLarge { p, depth, cap }),
        }
    }

    pub fn base(&self) -> usize {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn cylinders(&self, d: usize) -> usize {
        self.p.pow(d as u32)
    }

    /// The odometer on depth-`d` cylinders.
    pub fn permutation(&self, d: usize) -> Vec<usize> {
        let n = self.cylinders(d);
        (0..n).map(|j| (j + 1) % n).collect()
    }

    /// Map from depth-`d + 1` cylinders to their depth-`d` parents.
    pub fn refinement(&self, d: usize) -> Vec<usize> {
        let n = self.cylinders(d);
        (0..self.cylinders(d + 1)).map(|j| j % n).collect()
    }

    /// Digits `x_1 .. x_d` of a depth-`d` cylinder.
    pub fn digits(&self, d: usize, mut j: usize) -> Vec<usize> {
        (0..d)
            .map(|_| {
                let x = j % self.p;
                j /= self.p;
                x
            })
            .collect()
    }
}

pub fn odometer_system(p: usize, depth: usize) -> Result<OdometerSystem> {
    OdometerSystem::new(p, depth)
}

/// Rejection-sampled small groupoid: a disjoint union of one or two
/// transitive pieces, each a product of a pair groupoid and a small cyclic
/// or symmetric group. `max_arrows` bounds the size, `max_triples` bounds
/// `|G^(3)|` so that degree-2 cochain complexes stay small.
pub fn random_groupoid<R: Rng>(rng: &mut R, max_arrows: usize, max_triples: usize) -> FiniteGroupoid {
    loop {
        let pieces = rng.gen_range(1..=2);
        let mut g: Option<FiniteGroupoid> = None;
        for _ in 0..pieces {
            let points = rng.gen_range(1..=3);
            let group = match rng.gen_range(0..5) {
                0 => cyclic_group(1),
                1 => cyclic_group(2),
                2 => cyclic_group(3),
                3 => cyclic_group(4),
                _ => group_groupoid(&s3_table()).expect("S3"),
            };
            let piece = product(&pair_groupoid(points), &group);
            g = Some(match g {
                None => piece,
                Some(prev) => disjoint_union(&prev, &piece),
            });
        }
        let g = g.expect("at least one piece");
        if g.n_arrows() <= max_arrows && g.nerve_count(3) <= max_triples {
            return g;
        }
    }
}

/// Random module with fibers of rank between 1 and `max_rank`.
///
/// Each transitive piece picks a base unit and a representation of its
/// isotropy group built from sign characters and permutations of fiber
/// coordinates; other units are identified with the base through chosen
/// connecting arrows, twisted by random unimodular matrices.
pub fn random_module<R: Rng>(rng: &mut R, g: &FiniteGroupoid, max_rank: usize) -> GModule {
    let labels = g.orbit_labels();
    let k = g.n_units();
    let n_orbits = labels.iter().max().map_or(0, |m| m + 1);
    let mut fiber = vec![0usize; k];
    let mut base = vec![usize::MAX; n_orbits];
    for (pos, &orbit) in labels.iter().enumerate() {
        if base[orbit] == usize::MAX {
            base[orbit] = pos;
        }
    }
    let ranks: Vec<usize> = (0..n_orbits).map(|_| rng.gen_range(1..=max_rank.max(1))).collect();
    for (pos, &orbit) in labels.iter().enumerate() {
        fiber[pos] = ranks[orbit];
    }
    // For every unit u choose an arrow t_u from the base unit b to u, and a
    // random unimodular frame F_u with F_b = I. An arrow g: y -> z acts by
    // F_z * rho(t_z^-1 g t_y) * F_y^-1 where rho is a representation of the
    // isotropy group at the base.
    let units = g.units();
    let mut connector = vec![usize::MAX; k];
    for (pos, &u) in units.iter().enumerate() {
        let b = units[base[labels[pos]]];
        connector[pos] = (0..g.n_arrows())
            .find(|&a| g.src(a) == b && g.rng(a) == u)
            .expect("transitive piece");
    }
    let frames: Vec<(IntMatrix, IntMatrix)> = (0..k)
        .map(|pos| {
            if base[labels[pos]] == pos {
                (IntMatrix::identity(fiber[pos]), IntMatrix::identity(fiber[pos]))
            } else {
                random_unimodular(rng, fiber[pos])
            }
        })
        .collect();
    let mut reps: Vec<Option<Representation>> = vec![None; n_orbits];
    for orbit in 0..n_orbits {
        let b = units[base[orbit]];
        let isotropy: Vec<usize> = (0..g.n_arrows()).filter(|&a| g.src(a) == b && g.rng(a) == b).collect();
        reps[orbit] = Some(Representation::random(rng, g, &isotropy, ranks[orbit]));
    }
    let action = (0..g.n_arrows())
        .map(|a| {
            let y = g.unit_index(g.src(a)).expect("unit");
            let z = g.unit_index(g.rng(a)).expect("unit");
            let loop_at_base = g.mul(g.inv(connector[z]), g.mul(a, connector[y]));
            let rho = reps[labels[y]].as_ref().expect("rep").matrix(loop_at_base);
            frames[z].0.matmul(&rho).matmul(&frames[y].1)
        })
        .collect();
    GModule::new(fiber, action)
}

fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> (IntMatrix, IntMatrix) {
    let mut m = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            let minus = IntMatrix::from_rows(&[vec![-1]]);
            return (minus.clone(), minus);
        }
        return (m, inv);
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let q: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(q));
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, BigInt::from(-q));
        m = m.matmul(&e);
        inv = e_inv.matmul(&inv);
    }
    (m, inv)
}

/// Representation of an isotropy group by signed permutation matrices,
/// realized through a permutation action of the group on itself composed
/// with a sign character; both are computed from the multiplication table.
#[derive(Debug, Clone)]
struct Representation {
    matrices: std::collections::BTreeMap<usize, IntMatrix>,
}

impl Representation {
    fn random<R: Rng>(rng: &mut R, g: &FiniteGroupoid, elements: &[usize], rank: usize) -> Self {
        // Candidate one-dimensional pieces: trivial, and sign characters coming
        // from index-2 subgroups (found by brute force over subsets closed
        // under products, which is cheap for the tiny groups sampled here).
        let characters = sign_characters(g, elements);
        let mut blocks: Vec<Vec<i64>> = Vec::new();
        for _ in 0..rank {
            let c = characters.choose(rng).expect("trivial character present");
            blocks.push(c.clone());
        }
        let matrices = elements
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                let m = IntMatrix::from_fn(rank, rank, |i, j| {
                    if i == j {
                        BigInt::from(blocks[i][idx])
                    } else {
                        BigInt::from(0)
                    }
                });
                (a, m)
            })
            .collect();
        // Optionally swap two equal-character coordinates with a permutation
        // conjugation; keeps the representation valid.
        let mut rep = Representation { matrices };
        if rank == 2 && rng.gen_bool(0.5) {
            let (p, _) = random_unimodular(rng, 2);
            let p_inv = crate::zlinalg::snf(&p);
            let p_inv = p_inv.v_inv().matmul(p_inv.u_inv());
            for m in rep.matrices.values_mut() {
                *m = p.matmul(m).matmul(&p_inv);
            }
        }
        rep
    }

    fn matrix(&self, a: usize) -> IntMatrix {
        self.matrices[&a].clone()
    }
}

/// Homomorphisms from the isotropy group to `{1, -1}`, each listed as
/// values over `elements` in order.
fn sign_characters(g: &FiniteGroupoid, elements: &[usize]) -> Vec<Vec<i64>> {
    let n = elements.len();
    let mut out = vec![vec![1; n]];
    if n > 16 {
        return out;
    }
    let pos = |a: usize| elements.iter().position(|&x| x == a).expect("element");
    for mask in 1u32..(1 << n) {
        let values: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let hom = (0..n).all(|i| (0..n).all(|j| values[pos(g.mul(elements[i], elements[j]))] == values[i] * values[j]));
        if hom {
            out.push(values);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constructors_validate() {
        assert_eq!(space_groupoid(1).n_arrows(), 1);
        assert_eq!(space_groupoid(4).nerve(3).unwrap().len(), 4);
        for m in 1..5 {
            cyclic_group(m).validate().unwrap();
        }
        group_groupoid(&s3_table()).unwrap().validate().unwrap();
        assert_eq!(pair_groupoid(3).n_arrows(), 9);
        assert_eq!(pair_groupoid_from_map(&[0, 1, 2], 3).unwrap().units().len(), 3);
        assert_eq!(pair_groupoid_from_fibers(&[2, 1]).unwrap().n_arrows(), 5);
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(matches!(
            group_groupoid(&[vec![0, 1], vec![0, 1]]),
            Err(Error::NotAGroup(_))
        ));
        assert_eq!(pair_groupoid_from_map(&[0, 0], 2).unwrap_err(), Error::NotSurjective(1));
        let swap = vec![vec![1, 0], vec![1, 0]];
        assert!(matches!(
            action_groupoid(&cyclic_table(2), &swap),
            Err(Error::NotAnAction(_))
        ));
    }

    #[test]
    fn action_groupoids() {
        let swap = action_groupoid(&cyclic_table(2), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.n_arrows(), 4);
        assert_eq!(swap.orbit_count(), 1);
        let trivial = action_groupoid(&cyclic_table(2), &[vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(trivial.orbit_count(), 3);
        let rot = action_groupoid(&cyclic_table(3), &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(rot.orbit_count(), 1);
    }

    #[test]
    fn modules_validate() {
        let z2 = cyclic_group(2);
        constant_module(&z2, 1).validate(&z2).unwrap();
        sign_module(&z2, &[false, true]).validate(&z2).unwrap();
        let z3 = cyclic_group(3);
        let rot = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let m = permutation_module(&z3, &rot);
        m.validate(&z3).unwrap();
        assert_eq!(m.action(1), &permutation_matrix(&[1, 2, 0]));
        let bad = GModule::new(vec![1], vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![2]])]);
        assert_eq!(
            bad.validate(&z2),
            Err(crate::groupoid::ModuleViolation::NotUnimodular { arrow: 1 })
        );
    }

    #[test]
    fn odometer_tables() {
        let o = odometer_system(2, 4).unwrap();
        assert_eq!(o.permutation(1), vec![1, 0]);
        assert_eq!(o.permutation(2), vec![1, 2, 3, 0]);
        // add-one-with-carry on little-endian digits
        for d in 1..=4 {
            let n = o.cylinders(d);
            for j in 0..n {
                let mut digits = o.digits(d, j);
                let mut i = 0;
                while i < d {
                    digits[i] += 1;
                    if digits[i] < 2 {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                assert_eq!(o.digits(d, o.permutation(d)[j]), digits);
            }
        }
        for d in 1..4 {
            let (pi_d, pi_next, refine) = (o.permutation(d), o.permutation(d + 1), o.refinement(d));
            for j in 0..o.cylinders(d + 1) {
                assert_eq!(refine[pi_next[j]], pi_d[refine[j]]);
            }
        }
    }

    #[test]
    fn random_samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_groupoid(&mut rng, 20, 2000);
            g.validate().unwrap();
            let m = random_module(&mut rng, &g, 2);
            m.validate(&g).unwrap();
        }
    }
}
