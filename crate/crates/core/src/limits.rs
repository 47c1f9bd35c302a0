//! Towers of finitely generated free abelian groups: colimits, truncated
//! inverse limits with Mittag-Leffler evidence, and Bratteli diagrams.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{default_cap, FiniteGroupoid};
use crate::models::pair_groupoid_from_map;
use crate::zlinalg::{invariant_factors, kernel_basis, rank, serialize_ints, solve_columns, FgAbGroup, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Direct,
    Inverse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Maps {
    Stationary(IntMatrix),
    Sequence(Vec<IntMatrix>),
}

/// A sequence of free abelian groups `Z^{k_n}` and maps between
/// consecutive stages. Direct towers map stage `n` to `n + 1`
/// (shape `k_{n+1} x k_n`); inverse towers map `n + 1` to `n`
/// (shape `k_n x k_{n+1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    direction: Direction,
    maps: Maps,
}

impl Tower {
    fn checked(direction: Direction, maps: Vec<IntMatrix>) -> Result<Self> {
        for (n, pair) in maps.windows(2).enumerate() {
            let ok = match direction {
                Direction::Direct => pair[1].cols() == pair[0].rows(),
                Direction::Inverse => pair[1].rows() == pair[0].cols(),
            };
            if !ok {
                return Err(Error::DimensionMismatch(format!(
                    "maps {n} and {} do not compose: {:?} then {:?}",
                    n + 1,
                    pair[0].shape(),
                    pair[1].shape()
                )));
            }
        }
        Ok(Tower {
            direction,
            maps: Maps::Sequence(maps),
        })
    }

    pub fn direct(maps: Vec<IntMatrix>) -> Result<Self> {
        Self::checked(Direction::Direct, maps)
    }

    pub fn inverse(maps: Vec<IntMatrix>) -> Result<Self> {
        Self::checked(Direction::Inverse, maps)
    }

    fn stationary(direction: Direction, m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "stationary tower needs a square matrix, got {:?}",
                m.shape()
            )));
        }
        Ok(Tower {
            direction,
            maps: Maps::Stationary(m),
        })
    }

    pub fn direct_stationary(m: IntMatrix) -> Result<Self> {
        Self::stationary(Direction::Direct, m)
    }

    pub fn inverse_stationary(m: IntMatrix) -> Result<Self> {
        Self::stationary(Direction::Inverse, m)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn stationary_matrix(&self) -> Option<&IntMatrix> {
        match &self.maps {
            Maps::Stationary(m) => Some(m),
            Maps::Sequence(_) => None,
        }
    }

    /// Number of maps available; `None` when the tower is stationary.
    pub fn map_count(&self) -> Option<usize> {
        match &self.maps {
            Maps::Stationary(_) => None,
            Maps::Sequence(v) => Some(v.len()),
        }
    }

    pub fn map(&self, n: usize) -> Option<&IntMatrix> {
        match &self.maps {
            Maps::Stationary(m) => Some(m),
            Maps::Sequence(v) => v.get(n),
        }
    }

    /// Rank of stage `n`, when it is determined by the stored maps.
    pub fn stage_rank(&self, n: usize) -> Option<usize> {
        let (before, after) = match self.direction {
            Direction::Direct => (
                n.checked_sub(1).and_then(|i| self.map(i)).map(IntMatrix::rows),
                self.map(n).map(IntMatrix::cols),
            ),
            Direction::Inverse => (
                n.checked_sub(1).and_then(|i| self.map(i)).map(IntMatrix::cols),
                self.map(n).map(IntMatrix::rows),
            ),
        };
        after.or(before)
    }
}

/// Element of a colimit: a vector at a stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitElement {
    pub stage: usize,
    #[serde(serialize_with = "serialize_ints")]
    pub vector: Vec<BigInt>,
}

impl ColimitElement {
    pub fn new(stage: usize, vector: Vec<BigInt>) -> Self {
        ColimitElement { stage, vector }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "bound")]
pub enum Certainty {
    Exact,
    UpToBound(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "answer")]
pub enum Equality {
    Equal { stage: usize },
    NotEqual { certainty: Certainty },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "answer")]
pub enum Divisibility {
    Witness {
        stage: usize,
        #[serde(serialize_with = "serialize_ints")]
        vector: Vec<BigInt>,
    },
    No {
        certainty: Certainty,
    },
}

/// Colimit of a direct tower; `(n, v)` is identified with `(n + 1, A_n v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitGroup {
    tower: Tower,
}

impl ColimitGroup {
    pub fn new(tower: Tower) -> Result<Self> {
        if tower.direction != Direction::Direct {
            return Err(Error::DimensionMismatch("colimits need a direct tower".into()));
        }
        Ok(ColimitGroup { tower })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Last stage reachable from the stored maps, capped by `bound`.
    fn last_stage(&self, bound: usize) -> usize {
        self.tower.map_count().map_or(bound, |l| l.min(bound))
    }

    /// Image of `a` at a later stage.
    pub fn push(&self, a: &ColimitElement, stage: usize) -> Result<Vec<BigInt>> {
        if stage < a.stage {
            return Err(Error::DimensionMismatch(format!(
                "cannot push stage {} back to {stage}",
                a.stage
            )));
        }
        if let Some(r) = self.tower.stage_rank(a.stage) {
            if r != a.vector.len() {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} at a stage of rank {r}",
                    a.vector.len()
                )));
            }
        }
        let mut v = a.vector.clone();
        for n in a.stage..stage {
            let m = self.tower.map(n).ok_or(Error::StageBoundExceeded {
                stage,
                bound: self.tower.map_count().unwrap_or(0),
            })?;
            v = m.mul_vec(&v);
        }
        Ok(v)
    }

    fn stationary_injective(&self) -> bool {
        self.tower.stationary_matrix().is_some_and(|m| rank(m) == m.cols())
    }
}

pub fn colimit_equal(c: &ColimitGroup, a: &ColimitElement, b: &ColimitElement, stage_bound: usize) -> Result<Equality> {
    for e in [a, b] {
        if e.stage > stage_bound {
            return Err(Error::StageBoundExceeded {
                stage: e.stage,
                bound: stage_bound,
            });
        }
    }
    let start = a.stage.max(b.stage);
    let last = c.last_stage(stage_bound);
    if start > last {
        return Err(Error::StageBoundExceeded {
            stage: start,
            bound: last,
        });
    }
    for t in start..=last {
        if c.push(a, t)? == c.push(b, t)? {
            return Ok(Equality::Equal { stage: t });
        }
        if c.stationary_injective() {
            return Ok(Equality::NotEqual {
                certainty: Certainty::Exact,
            });
        }
    }
    Ok(Equality::NotEqual {
        certainty: Certainty::UpToBound(last),
    })
}

/// `q` with every prime factor of `m` removed.
fn coprime_part(q: &BigInt, m: &BigInt) -> BigInt {
    let mut q = q.abs();
    loop {
        let g = q.gcd(m);
        if g.is_one() || g.is_zero() {
            return q;
        }
        q /= g;
    }
}

pub fn colimit_divisible(c: &ColimitGroup, a: &ColimitElement, q: i64, stage_bound: usize) -> Result<Divisibility> {
    if q < 1 {
        return Err(Error::BadModulus(q));
    }
    if a.stage > stage_bound {
        return Err(Error::StageBoundExceeded {
            stage: a.stage,
            bound: stage_bound,
        });
    }
    let q_big = BigInt::from(q);
    // For a stationary 1x1 tower [m], q x ~ a is solvable iff the part of q
    // coprime to m divides a's coefficient.
    if let Some(m) = c.tower.stationary_matrix().filter(|m| m.shape() == (1, 1)) {
        let m = m.get(0, 0);
        if !m.is_zero() {
            let reduced = coprime_part(&q_big, m);
            if !a.vector[0].is_multiple_of(&reduced) {
                return Ok(Divisibility::No {
                    certainty: Certainty::Exact,
                });
            }
        }
    }
    let last = c.last_stage(stage_bound);
    for t in a.stage..=last.max(a.stage) {
        let v = c.push(a, t)?;
        if v.iter().all(|x| x.is_multiple_of(&q_big)) {
            return Ok(Divisibility::Witness {
                stage: t,
                vector: v.iter().map(|x| x / &q_big).collect(),
            });
        }
    }
    Ok(Divisibility::No {
        certainty: Certainty::UpToBound(last),
    })
}

/// Vertex counts per level and edge multiplicities between consecutive
/// levels; matrix `n` has shape `k_{n+1} x k_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliDiagram {
    stationary: bool,
    matrices: Vec<IntMatrix>,
}

fn check_multiplicities(m: &IntMatrix, level: usize) -> Result<()> {
    let bad = |msg: String| Err(Error::MalformedDiagram(msg));
    if m.rows() == 0 || m.cols() == 0 {
        return bad(format!("level {level} has no vertices"));
    }
    if m.entries().iter().any(Signed::is_negative) {
        return bad(format!(
            "negative multiplicity between levels {level} and {}",
            level + 1
        ));
    }
    if let Some(i) = (0..m.rows()).find(|&i| m.row(i).iter().all(Zero::is_zero)) {
        return bad(format!("vertex {i} at level {} has no incoming edges", level + 1));
    }
    if let Some(j) = (0..m.cols()).find(|&j| m.column(j).iter().all(Zero::is_zero)) {
        return bad(format!("vertex {j} at level {level} has no outgoing edges"));
    }
    Ok(())
}

impl BratteliDiagram {
    pub fn new(matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::MalformedDiagram("no levels".into()));
        }
        for (n, m) in matrices.iter().enumerate() {
            check_multiplicities(m, n)?;
            if n > 0 && m.cols() != matrices[n - 1].rows() {
                return Err(Error::MalformedDiagram(format!(
                    "level {n} has {} vertices as a target but {} as a source",
                    matrices[n - 1].rows(),
                    m.cols()
                )));
            }
        }
        Ok(BratteliDiagram {
            stationary: false,
            matrices,
        })
    }

    /// The same square multiplicity matrix between all `levels` levels.
    pub fn stationary(m: IntMatrix, levels: usize) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::MalformedDiagram(format!(
                "stationary matrix has shape {:?}",
                m.shape()
            )));
        }
        if levels == 0 {
            return Err(Error::MalformedDiagram("levels must be at least 1".into()));
        }
        check_multiplicities(&m, 0)?;
        Ok(BratteliDiagram {
            stationary: true,
            matrices: vec![m; levels],
        })
    }

    pub fn is_stationary(&self) -> bool {
        self.stationary
    }

    pub fn levels(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn vertex_counts(&self) -> Vec<usize> {
        let mut v = vec![self.matrices[0].cols()];
        v.extend(self.matrices.iter().map(IntMatrix::rows));
        v
    }

    /// Edge count of a one-vertex stationary diagram.
    pub fn single_vertex_edges(&self) -> Option<usize> {
        let m = &self.matrices[0];
        if !self.stationary || m.shape() != (1, 1) {
            return None;
        }
        usize::try_from(m.get(0, 0)).ok()
    }
}

pub fn dimension_group(b: &BratteliDiagram, levels: usize) -> Result<ColimitGroup> {
    if levels == 0 {
        return Err(Error::MalformedDiagram("levels must be at least 1".into()));
    }
    let tower = if b.stationary {
        Tower::direct_stationary(b.matrices[0].clone())?
    } else {
        if levels > b.levels() {
            return Err(Error::MalformedDiagram(format!(
                "diagram has {} levels, {levels} requested",
                b.levels()
            )));
        }
        Tower::direct(b.matrices[..levels].to_vec())?
    };
    ColimitGroup::new(tower)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AfHomology {
    DimensionGroup(ColimitGroup),
    Trivial,
}

pub fn af_homology(b: &BratteliDiagram, n: usize) -> Result<AfHomology> {
    if n == 0 {
        Ok(AfHomology::DimensionGroup(dimension_group(b, b.levels())?))
    } else {
        Ok(AfHomology::Trivial)
    }
}

/// The elementary groupoid of paths of length `levels` through the diagram,
/// two paths being equivalent when they end at the same vertex.
pub fn af_truncation_groupoid(b: &BratteliDiagram, levels: usize) -> Result<FiniteGroupoid> {
    if levels > b.levels() {
        return Err(Error::MalformedDiagram(format!(
            "diagram has {} levels, {levels} requested",
            b.levels()
        )));
    }
    // endpoint of every path, one entry per path
    let mut ends: Vec<usize> = (0..b.matrices[0].cols()).collect();
    for m in &b.matrices[..levels] {
        let mut next = Vec::new();
        for &v in &ends {
            for w in 0..m.rows() {
                let edges = usize::try_from(m.get(w, v))
                    .map_err(|_| Error::MalformedDiagram("multiplicity too large".into()))?;
                next.extend(std::iter::repeat_n(w, edges));
            }
        }
        if next.len() > default_cap() {
            return Err(Error::WindowTooLarge {
                levels,
                arrows: next.len(),
                cap: default_cap(),
            });
        }
        ends = next;
    }
    let vertices = if levels == 0 {
        b.matrices[0].cols()
    } else {
        b.matrices[levels - 1].rows()
    };
    pair_groupoid_from_map(&ends, vertices)
}

/// One image `im(A_n ... A_{m-1})` in an inverse tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageStep {
    pub from_stage: usize,
    pub rank: usize,
    #[serde(serialize_with = "serialize_ints")]
    pub invariant_factors: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MlStatus {
    /// For each judged stage, the first depth from which its image chain is constant.
    Certified { stabilization: Vec<usize> },
    /// A stage whose image chain still strictly decreases at the truncation depth.
    NonMl { stage: usize, chain: Vec<ImageStep> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lim1Report {
    pub depth: usize,
    /// `chains[n][j]` describes `im(A_n ... A_{n+j})` inside stage `n`.
    pub chains: Vec<Vec<ImageStep>>,
    pub ml: MlStatus,
    /// Constraint on the stage-0 entry of a thread within the truncation.
    pub stage0_constraint: ImageStep,
    /// `lim` when the stable images have constant rank on the judged
    /// stages `0 ..= (depth - 2) / 2`; absent otherwise.
    pub lim: Option<FgAbGroup>,
    /// `lim^1` claim: trivial under a certificate, never presented otherwise.
    pub lim1_vanishes: Option<bool>,
}

impl Lim1Report {
    pub fn is_ml(&self) -> bool {
        matches!(self.ml, MlStatus::Certified { .. })
    }
}

fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    Ok(solve_columns(a, b)?.is_some() && solve_columns(b, a)?.is_some())
}

fn describe(from_stage: usize, m: &IntMatrix) -> ImageStep {
    let factors = invariant_factors(m);
    ImageStep {
        from_stage,
        rank: factors.len(),
        invariant_factors: factors,
    }
}

/// Image chains, a Mittag-Leffler certificate or evidence against it, and
/// the thread constraints of an inverse tower truncated at stage `depth`.
pub fn limit_and_lim1(t: &Tower, depth: usize) -> Result<Lim1Report> {
    if t.direction != Direction::Inverse {
        return Err(Error::DimensionMismatch("limit_and_lim1 needs an inverse tower".into()));
    }
    if depth < 2 {
        return Err(Error::DimensionMismatch("truncation depth must be at least 2".into()));
    }
    if let Some(l) = t.map_count() {
        if l < depth {
            return Err(Error::StageBoundExceeded { stage: depth, bound: l });
        }
    }
    let mut chains = Vec::with_capacity(depth);
    let mut composites = Vec::with_capacity(depth);
    let mut stabilization = Vec::with_capacity(depth);
    let mut failure = None;
    // every stage below the truncation sees at least two images
    for n in 0..depth - 1 {
        let mut comp = t.map(n).expect("checked length").clone();
        let mut images = vec![comp.clone()];
        for m in n + 1..depth {
            comp = comp.matmul(t.map(m).expect("checked length"));
            images.push(comp.clone());
        }
        // first j with images[j] == images[j'] for all j' >= j
        let mut first = images.len() - 1;
        while first > 0 && same_lattice(&images[first - 1], &images[images.len() - 1])? {
            first -= 1;
        }
        chains.push(images.iter().map(|m| describe(n, m)).collect::<Vec<_>>());
        // judged only on the first half, where chains are long enough to
        // show a constant step
        if n <= (depth - 2) / 2 {
            if first + 1 < images.len() {
                stabilization.push(n + first + 1);
            } else if failure.is_none() {
                failure = Some(n);
            }
        }
        composites.push(images);
    }
    let ml = match failure {
        None => MlStatus::Certified { stabilization },
        Some(stage) => MlStatus::NonMl {
            stage,
            chain: chains[stage].clone(),
        },
    };
    let stage0_constraint = describe(0, composites[0].last().expect("nonempty"));
    let (lim, lim1_vanishes) = match &ml {
        MlStatus::Certified { .. } => {
            let ranks: Vec<usize> = composites.iter().map(|c| rank(c.last().expect("nonempty"))).collect();
            let tail = &ranks[..=(depth - 2) / 2];
            let lim = tail.windows(2).all(|w| w[0] == w[1]).then(|| FgAbGroup::free(tail[0]));
            (lim, Some(true))
        }
        MlStatus::NonMl { .. } => (None, None),
    };
    Ok(Lim1Report {
        depth,
        chains,
        ml,
        stage0_constraint,
        lim,
        lim1_vanishes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ThreadCertificate {
    ConstantsOnly,
    Threads { rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AfCohomologyReport {
    pub p: usize,
    pub stages: usize,
    pub depth: usize,
    pub h0: ThreadCertificate,
    pub h1: Lim1Report,
}

/// Pullback along the shift on cylinder functions: a function of depth `d`
/// becomes a function of depth `d + 1` ignoring the first digit. Digits are
/// little-endian, so dropping the first digit is integer division by `p`.
fn shift_pullback(p: usize, d: usize) -> IntMatrix {
    let n = p.pow(d as u32);
    IntMatrix::from_fn(n * p, n, |x, y| BigInt::from(u8::from(x / p == y)))
}

/// Cohomology of the full-shift AF groupoid through truncations: stages
/// `0 ..= stages + 1` of cylinder functions of depth `depth` for `H^0`, and
/// the inverse tower of pullbacks with stage `n` at depth `depth + stages - n`
/// for `H^1`.
pub fn af_cohomology_tower(b: &BratteliDiagram, stages: usize, depth: usize) -> Result<AfCohomologyReport> {
    let p = b
        .single_vertex_edges()
        .ok_or_else(|| Error::MalformedDiagram("expected a stationary one-vertex diagram".into()))?;
    let cap = default_cap();
    let top = depth + stages + 1;
    if p.checked_pow(top as u32).is_none_or(|n| n > cap) {
        return Err(Error::DepthTooLarge { p, depth: top, cap });
    }
    if p < 2 {
        return Err(Error::MalformedDiagram("need at least two edges".into()));
    }
    // threads f_0 .. f_{N+1}, f_n = f_{n+1} o shift, compared on depth + 1 strings
    let n_fn = p.pow(depth as u32);
    let unknowns = (stages + 2) * n_fn;
    let rows = (stages + 1) * n_fn * p;
    let mut eq = IntMatrix::zeros(rows, unknowns);
    for n in 0..=stages {
        for x in 0..n_fn * p {
            let row = n * n_fn * p + x;
            // f_n reads the first `depth` digits, f_{n+1} o shift the last `depth`
            eq.add_at(row, n * n_fn + x % n_fn, &BigInt::one());
            eq.add_at(row, (n + 1) * n_fn + x / p, &-BigInt::one());
        }
    }
    let kernel = kernel_basis(&eq);
    let constants_only = kernel.cols() == 1 && {
        let col = kernel.column(0);
        col.iter().all(|x| x == &col[0]) && col[0].abs().is_one()
    };
    let h0 = if constants_only {
        ThreadCertificate::ConstantsOnly
    } else {
        ThreadCertificate::Threads { rank: kernel.cols() }
    };
    let maps = (0..stages.max(2))
        .map(|n| shift_pullback(p, depth + stages.max(2) - n - 1))
        .collect();
    let h1 = limit_and_lim1(&Tower::inverse(maps)?, stages.max(2))?;
    Ok(AfCohomologyReport {
        p,
        stages,
        depth,
        h0,
        h1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::int_vec;

    fn times(p: i64) -> ColimitGroup {
        ColimitGroup::new(Tower::direct_stationary(IntMatrix::from_rows(&[vec![p]])).unwrap()).unwrap()
    }

    fn el(stage: usize, v: i64) -> ColimitElement {
        ColimitElement::new(stage, int_vec(&[v]))
    }

    #[test]
    fn equality_in_times_two() {
        let c = times(2);
        assert_eq!(
            colimit_equal(&c, &el(0, 1), &el(1, 2), 5).unwrap(),
            Equality::Equal { stage: 1 }
        );
        assert_eq!(
            colimit_equal(&c, &el(0, 1), &el(0, 2), 5).unwrap(),
            Equality::NotEqual {
                certainty: Certainty::Exact
            }
        );
        assert_eq!(
            colimit_equal(&c, &el(3, 7), &el(3, 7), 5).unwrap(),
            Equality::Equal { stage: 3 }
        );
        assert_eq!(
            colimit_equal(&c, &el(6, 1), &el(0, 1), 5).unwrap_err(),
            Error::StageBoundExceeded { stage: 6, bound: 5 }
        );
    }

    #[test]
    fn equality_through_a_kernel() {
        let c = ColimitGroup::new(Tower::direct_stationary(IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])).unwrap())
            .unwrap();
        let a = ColimitElement::new(0, int_vec(&[1, 0]));
        let b = ColimitElement::new(0, int_vec(&[0, 1]));
        assert_eq!(colimit_equal(&c, &a, &b, 3).unwrap(), Equality::Equal { stage: 1 });
    }

    #[test]
    fn divisibility_in_times_two() {
        let c = times(2);
        assert_eq!(
            colimit_divisible(&c, &el(0, 1), 2, 5).unwrap(),
            Divisibility::Witness {
                stage: 1,
                vector: int_vec(&[1])
            }
        );
        assert_eq!(
            colimit_divisible(&c, &el(0, 1), 3, 5).unwrap(),
            Divisibility::No {
                certainty: Certainty::Exact
            }
        );
        assert_eq!(
            colimit_divisible(&c, &el(2, 5), 1, 5).unwrap(),
            Divisibility::Witness {
                stage: 2,
                vector: int_vec(&[5])
            }
        );
        assert!(matches!(
            colimit_divisible(&c, &el(0, 3), 12, 5).unwrap(),
            Divisibility::Witness { stage: 2, .. }
        ));
    }

    #[test]
    fn diagrams_are_validated() {
        assert!(matches!(
            BratteliDiagram::new(vec![IntMatrix::from_rows(&[vec![1, 0]])]),
            Err(Error::MalformedDiagram(_))
        ));
        assert!(matches!(
            BratteliDiagram::new(vec![IntMatrix::from_rows(&[vec![-1]])]),
            Err(Error::MalformedDiagram(_))
        ));
        assert!(matches!(
            BratteliDiagram::new(vec![IntMatrix::identity(2), IntMatrix::identity(3)]),
            Err(Error::MalformedDiagram(_))
        ));
        let b = BratteliDiagram::stationary(IntMatrix::identity(3), 4).unwrap();
        assert_eq!(b.vertex_counts(), vec![3; 5]);
    }

    #[test]
    fn ml_examples() {
        let constant = limit_and_lim1(&Tower::inverse_stationary(IntMatrix::identity(1)).unwrap(), 4).unwrap();
        assert!(constant.is_ml());
        assert_eq!(constant.lim, Some(FgAbGroup::free(1)));

        let times_three =
            limit_and_lim1(&Tower::inverse_stationary(IntMatrix::from_rows(&[vec![3]])).unwrap(), 4).unwrap();
        assert!(!times_three.is_ml());
        assert_eq!(times_three.stage0_constraint.invariant_factors, vec![BigInt::from(81)]);

        let nil = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        let zero = limit_and_lim1(&Tower::inverse_stationary(nil).unwrap(), 4).unwrap();
        assert!(zero.is_ml());
        assert_eq!(zero.lim, Some(FgAbGroup::trivial()));
    }

    #[test]
    fn full_shift_threads_are_constant() {
        let b = BratteliDiagram::stationary(IntMatrix::from_rows(&[vec![2]]), 1).unwrap();
        let r = af_cohomology_tower(&b, 3, 4).unwrap();
        assert_eq!(r.h0, ThreadCertificate::ConstantsOnly);
        assert!(!r.h1.is_ml());
        // shorter truncation leaves room for functions of the tail
        let r = af_cohomology_tower(&b, 1, 4).unwrap();
        assert_eq!(r.h0, ThreadCertificate::Threads { rank: 4 });
    }

    #[test]
    fn truncation_groupoid_of_uhf() {
        let b = BratteliDiagram::stationary(IntMatrix::from_rows(&[vec![2]]), 3).unwrap();
        let g = af_truncation_groupoid(&b, 2).unwrap();
        assert_eq!(g.n_arrows(), 16);
        assert_eq!(g.orbit_count(), 1);
    }
}
