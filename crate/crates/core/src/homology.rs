//! Integral homology of finite groupoids, induced maps, and the two-term
//! complex model of a `Z`-action on a finite set.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{boundary_matrix_d, FiniteGroupoid, GroupoidFunctor};
use crate::limits::{ColimitGroup, Tower};
use crate::models::{check_permutation, permutation_matrix, OdometerSystem};
use crate::zlinalg::{coefficients_via_uct, homology_at, FgAbGroup, GroupHom, IntMatrix, Subquotient};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Mod(i64),
}

/// `H_0 .. H_{n_max}` with the given coefficients.
pub fn homology_groups(g: &FiniteGroupoid, n_max: usize, coeff: Coefficients) -> Result<Vec<FgAbGroup>> {
    if let Coefficients::Mod(m) = coeff {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
    }
    // fail fast before building anything
    g.nerve(n_max + 1)?;
    let d: Vec<IntMatrix> = (0..=n_max + 1)
        .into_par_iter()
        .map(|n| boundary_matrix_d(g, n))
        .collect::<Result<_>>()?;
    let integral: Vec<FgAbGroup> = (0..=n_max)
        .into_par_iter()
        .map(|n| homology_at(&d[n], &d[n + 1]))
        .collect::<Result<_>>()?;
    match coeff {
        Coefficients::Integers => Ok(integral),
        Coefficients::Mod(m) => (0..=n_max)
            .map(|n| {
                let below = if n == 0 {
                    FgAbGroup::trivial()
                } else {
                    integral[n - 1].clone()
                };
                coefficients_via_uct(&integral[n], &below, m)
            })
            .collect(),
    }
}

/// `H_n` with chosen cycle representatives.
pub fn homology_presentation(g: &FiniteGroupoid, n: usize) -> Result<Subquotient> {
    Subquotient::new(&boundary_matrix_d(g, n)?, &boundary_matrix_d(g, n + 1)?)
}

/// Chain-level pushforward `Z[G1^(n)] -> Z[G2^(n)]` along a functor.
pub fn pushforward_matrix(
    phi: &GroupoidFunctor,
    g1: &FiniteGroupoid,
    g2: &FiniteGroupoid,
    n: usize,
) -> Result<IntMatrix> {
    let domain = g1.nerve(n)?;
    let target = g2.nerve(n)?;
    let mut m = IntMatrix::zeros(target.len(), domain.len());
    for (col, t) in domain.iter().enumerate() {
        let row = target.position(&phi.apply_tuple(t));
        m.add_at(row, col, &BigInt::one());
    }
    Ok(m)
}

#[derive(Debug, Clone)]
pub struct InducedMap {
    /// Chain-level matrix.
    pub chain: IntMatrix,
    /// Map between the chosen presentations of the (co)homology groups.
    pub on_homology: GroupHom,
}

pub fn induced_homology_map(
    phi: &GroupoidFunctor,
    g1: &FiniteGroupoid,
    g2: &FiniteGroupoid,
    n: usize,
) -> Result<InducedMap> {
    phi.validate(g1, g2)?;
    let chain = pushforward_matrix(phi, g1, g2, n)?;
    let source = homology_presentation(g1, n)?;
    let target = homology_presentation(g2, n)?;
    let on_homology = source.induced_map(&target, &chain)?;
    Ok(InducedMap { chain, on_homology })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZActionReport {
    pub h0: FgAbGroup,
    pub h1: FgAbGroup,
    pub cohomology_h0: FgAbGroup,
    pub cohomology_h1: FgAbGroup,
}

/// Homology and cohomology of `Z` acting on `{0..k}` through `perm`, from
/// the complex `0 -> Z[X] --(id - P)--> Z[X] -> 0` and its dual.
pub fn z_action_homology(perm: &[usize]) -> Result<ZActionReport> {
    let k = perm.len();
    check_permutation(perm, k)?;
    let step = &IntMatrix::identity(k) - &permutation_matrix(perm);
    let dual = step.transpose();
    Ok(ZActionReport {
        h0: homology_at(&IntMatrix::zeros(0, k), &step)?,
        h1: homology_at(&step, &IntMatrix::zeros(k, 0))?,
        cohomology_h0: homology_at(&dual, &IntMatrix::zeros(k, 0))?,
        cohomology_h1: homology_at(&IntMatrix::zeros(0, k), &dual)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DepthHomology {
    pub depth: usize,
    pub cylinders: usize,
    pub h0: FgAbGroup,
    pub h1: FgAbGroup,
}

#[derive(Debug, Clone, Serialize)]
pub struct OdometerHomologyReport {
    pub p: usize,
    pub depths: Vec<DepthHomology>,
    /// Connecting map `H_0(depth d) -> H_0(depth d + 1)` on the generator,
    /// oriented so that the generator has augmentation `+1`.
    #[serde(serialize_with = "crate::zlinalg::serialize_ints")]
    pub h0_maps: Vec<BigInt>,
    #[serde(serialize_with = "crate::zlinalg::serialize_ints")]
    pub h1_maps: Vec<BigInt>,
    pub h1_stable: FgAbGroup,
    #[serde(skip)]
    pub h0_colimit: ColimitGroup,
}

/// Sign of the sum of the entries of each generator column.
fn augmentation_signs(sq: &Subquotient) -> Vec<BigInt> {
    let gens = sq.generators();
    (0..gens.cols())
        .map(|j| {
            let s: BigInt = gens.column(j).iter().sum();
            s.signum()
        })
        .collect()
}

/// Normalized scalar of a map between infinite cyclic groups.
fn scalar_of(map: &GroupHom, src_sign: &BigInt, dst_sign: &BigInt) -> Result<BigInt> {
    if map.matrix.shape() != (1, 1) {
        return Err(Error::DimensionMismatch(format!(
            "expected a map between cyclic groups, got shape {:?}",
            map.matrix.shape()
        )));
    }
    Ok(map.matrix.get(0, 0) * src_sign * dst_sign)
}

/// Homology of the `p`-adic odometer through its depth-`d` cylinder
/// actions, `d = 1 ..= depth_max`, with the maps induced by refinement.
pub fn odometer_homology(p: usize, depth_max: usize) -> Result<OdometerHomologyReport> {
    let system = OdometerSystem::new(p, depth_max)?;
    let mut depths = Vec::new();
    let mut h0_sq = Vec::new();
    let mut h1_sq = Vec::new();
    for d in 1..=depth_max {
        let n = system.cylinders(d);
        let step = &IntMatrix::identity(n) - &permutation_matrix(&system.permutation(d));
        let h0 = Subquotient::new(&IntMatrix::zeros(0, n), &step)?;
        let h1 = Subquotient::new(&step, &IntMatrix::zeros(n, 0))?;
        depths.push(DepthHomology {
            depth: d,
            cylinders: n,
            h0: h0.group(),
            h1: h1.group(),
        });
        h0_sq.push(h0);
        h1_sq.push(h1);
    }
    let mut h0_maps = Vec::new();
    let mut h1_maps = Vec::new();
    for d in 1..depth_max {
        // indicator of a depth-d cylinder is the sum of its children
        let parent = system.refinement(d);
        let refine = IntMatrix::from_fn(system.cylinders(d + 1), system.cylinders(d), |i, j| {
            BigInt::from(u8::from(parent[i] == j))
        });
        let (a, b) = (&h0_sq[d - 1], &h0_sq[d]);
        let map = a.induced_map(b, &refine)?;
        h0_maps.push(scalar_of(&map, &augmentation_signs(a)[0], &augmentation_signs(b)[0])?);
        let (a, b) = (&h1_sq[d - 1], &h1_sq[d]);
        let map = a.induced_map(b, &refine)?;
        h1_maps.push(scalar_of(&map, &augmentation_signs(a)[0], &augmentation_signs(b)[0])?);
    }
    let tower = Tower::direct(
        h0_maps
            .iter()
            .map(|m| IntMatrix::diagonal(std::slice::from_ref(m)))
            .collect(),
    )?;
    let h1_stable = if h1_maps.iter().all(|m| m.is_one()) && depths.last().is_some_and(|d| d.h1 == FgAbGroup::free(1)) {
        FgAbGroup::free(1)
    } else {
        depths.last().map(|d| d.h1.clone()).unwrap_or_else(FgAbGroup::trivial)
    };
    Ok(OdometerHomologyReport {
        p,
        depths,
        h0_maps,
        h1_maps,
        h1_stable,
        h0_colimit: ColimitGroup::new(tower)?,
    })
}

/// Sum of the coefficients of a chain.
pub fn augmentation(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{collapse_to_point, cyclic_group, disjoint_union, pair_groupoid, space_groupoid};

    fn groups(g: &FiniteGroupoid, n: usize) -> Vec<String> {
        homology_groups(g, n, Coefficients::Integers)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(groups(&space_groupoid(4), 3), ["Z^4", "0", "0", "0"]);
        assert_eq!(groups(&cyclic_group(2), 3), ["Z", "Z/2", "0", "Z/2"]);
        assert_eq!(groups(&pair_groupoid(3), 2), ["Z", "0", "0"]);
    }

    #[test]
    fn mod_two_coefficients() {
        let h = homology_groups(&cyclic_group(2), 2, Coefficients::Mod(2)).unwrap();
        let shown: Vec<String> = h.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["Z/2", "Z/2", "Z/2"]);
        assert_eq!(
            homology_groups(&cyclic_group(2), 1, Coefficients::Mod(1)).unwrap_err(),
            Error::BadModulus(1)
        );
    }

    #[test]
    fn identity_and_inclusion_maps() {
        let g = cyclic_group(2);
        let id = induced_homology_map(&GroupoidFunctor::identity(&g), &g, &g, 1).unwrap();
        assert!(id.on_homology.matrix.is_identity());

        let u = disjoint_union(&g, &space_groupoid(1));
        let inc = induced_homology_map(&GroupoidFunctor::identity(&g), &g, &u, 0).unwrap();
        assert!(inc.on_homology.is_injective());
        assert_eq!(inc.on_homology.target_group(), FgAbGroup::free(2));
    }

    #[test]
    fn collapse_is_iso_on_h0() {
        let g = pair_groupoid(3);
        let point = space_groupoid(1);
        let m = induced_homology_map(&collapse_to_point(&g), &g, &point, 0).unwrap();
        assert!(m.on_homology.is_injective() && m.on_homology.is_surjective());
    }

    #[test]
    fn z_action_examples() {
        let r = z_action_homology(&[1, 2, 3, 4, 0]).unwrap();
        for h in [&r.h0, &r.h1, &r.cohomology_h0, &r.cohomology_h1] {
            assert_eq!(h, &FgAbGroup::free(1));
        }
        let r = z_action_homology(&[1, 0, 2]).unwrap();
        assert_eq!((r.h0.free_rank(), r.h1.free_rank()), (2, 2));
        assert!(matches!(z_action_homology(&[0, 0]), Err(Error::NotAPermutation(_))));
    }

    #[test]
    fn odometer_maps_multiply_by_p() {
        let r = odometer_homology(3, 2).unwrap();
        assert_eq!(r.h0_maps, vec![BigInt::from(3)]);
        assert_eq!(r.h1_maps, vec![BigInt::from(1)]);
        assert_eq!(r.h1_stable, FgAbGroup::free(1));
    }
}
