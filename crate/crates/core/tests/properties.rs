//! Structural identities checked on rejection-sampled groupoids and modules.

use groupoidal::cohomology::{
    cocycle_cohomology, hom_side_cohomology, induced_cohomology_map, pullback_matrix, pullback_module, theta_rho_check,
};
use groupoidal::groupoid::{
    bar_boundary_matrix_b, bar_homotopy_matrix, boundary_matrix_d, coinvariants_collapse, FiniteGroupoid,
    GroupoidFunctor,
};
use groupoidal::homology::{homology_groups, induced_homology_map, pushforward_matrix, Coefficients};
use groupoidal::models::{
    collapse_to_point, constant_module, disjoint_union, left_inclusion, product, random_groupoid, random_module,
    space_groupoid,
};
use groupoidal::skew::{skew_window, validate_cocycle, ZCocycle};
use groupoidal::zlinalg::{kernel_basis, rank, solve_columns};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sample(seed: u64) -> FiniteGroupoid {
    random_groupoid(&mut ChaCha8Rng::seed_from_u64(seed), 20, 700)
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn boundaries_square_to_zero(seed in any::<u64>()) {
        let g = sample(seed);
        for n in 0..3 {
            let dd = boundary_matrix_d(&g, n).unwrap().matmul(&boundary_matrix_d(&g, n + 1).unwrap());
            prop_assert!(dd.is_zero());
            let bb = bar_boundary_matrix_b(&g, n).unwrap().matmul(&bar_boundary_matrix_b(&g, n + 1).unwrap());
            prop_assert!(bb.is_zero());
        }
    }

    #[test]
    fn bar_resolution_is_exact(seed in any::<u64>()) {
        let g = sample(seed);
        // b_0 onto the units
        let b0 = bar_boundary_matrix_b(&g, 0).unwrap();
        prop_assert_eq!(rank(&b0), g.n_units());
        for n in 1..=2 {
            let below = bar_boundary_matrix_b(&g, n - 1).unwrap();
            let here = bar_boundary_matrix_b(&g, n).unwrap();
            prop_assert_eq!(rank(&here) + rank(&below), below.cols());
            let kernel = kernel_basis(&below);
            prop_assert!(solve_columns(&here, &kernel).unwrap().is_some());
        }
    }

    #[test]
    fn prepending_the_range_contracts_the_bar_complex(seed in any::<u64>()) {
        let g = sample(seed);
        let b0 = bar_boundary_matrix_b(&g, 0).unwrap();
        prop_assert!(b0.matmul(&bar_homotopy_matrix(&g, 0).unwrap()).is_identity());
        for n in 1..=2 {
            let bh = bar_boundary_matrix_b(&g, n).unwrap().matmul(&bar_homotopy_matrix(&g, n).unwrap());
            let hb = bar_homotopy_matrix(&g, n - 1).unwrap().matmul(&bar_boundary_matrix_b(&g, n - 1).unwrap());
            prop_assert!((&bh + &hb).is_identity());
        }
    }

    #[test]
    fn collapse_intertwines_the_differentials(seed in any::<u64>()) {
        let g = sample(seed);
        for n in 1..=3 {
            let left = coinvariants_collapse(&g, n - 1).unwrap().matmul(&bar_boundary_matrix_b(&g, n).unwrap());
            let right = boundary_matrix_d(&g, n).unwrap().matmul(&coinvariants_collapse(&g, n).unwrap());
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn degree_zero_counts_orbits(seed in any::<u64>()) {
        let g = sample(seed);
        let h = homology_groups(&g, 0, Coefficients::Integers).unwrap();
        prop_assert_eq!(h[0].free_rank(), g.orbit_count());
        prop_assert!(h[0].torsion().is_empty());
    }

    #[test]
    fn cochain_models_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 20, 700);
        let m = random_module(&mut rng, &g, 2);
        let report = theta_rho_check(&g, &m, 2).unwrap();
        prop_assert!(report.passed(), "{:?}", report.witness);
        prop_assert_eq!(cocycle_cohomology(&g, &m, 2).unwrap(), hom_side_cohomology(&g, &m, 2).unwrap());
    }

    #[test]
    fn homology_is_covariant(seed in any::<u64>()) {
        let g = sample(seed);
        let u = disjoint_union(&g, &space_groupoid(2));
        let point = space_groupoid(1);
        let inc = left_inclusion(&g);
        let crush = collapse_to_point(&u);
        let both = crush.after(&inc);
        for n in 0..=2 {
            let chain = pushforward_matrix(&both, &g, &point, n).unwrap();
            let split = pushforward_matrix(&crush, &u, &point, n).unwrap().matmul(&pushforward_matrix(&inc, &g, &u, n).unwrap());
            prop_assert_eq!(&chain, &split);
            let direct = induced_homology_map(&both, &g, &point, n).unwrap().on_homology;
            let first = induced_homology_map(&inc, &g, &u, n).unwrap().on_homology;
            let second = induced_homology_map(&crush, &u, &point, n).unwrap().on_homology;
            prop_assert!(direct.matrix == second.compose(&first).unwrap().matrix);
        }
    }

    #[test]
    fn cohomology_is_contravariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 10, 200);
        let p = product(&g, &space_groupoid(2));
        // projection onto the first factor, then collapse
        let proj = GroupoidFunctor::new((0..p.n_arrows()).map(|a| a / 2).collect());
        let crush = collapse_to_point(&g);
        let point = space_groupoid(1);
        let m = constant_module(&point, 2);
        let mid = pullback_module(&crush, &g, &point, &m).unwrap();
        for n in 0..=2 {
            let whole = pullback_matrix(&crush.after(&proj), &p, &point, &m, n).unwrap();
            let split = pullback_matrix(&proj, &p, &g, &mid, n).unwrap().matmul(&pullback_matrix(&crush, &g, &point, &m, n).unwrap());
            prop_assert_eq!(&whole, &split);
            let direct = induced_cohomology_map(&crush.after(&proj), &p, &point, &m, n).unwrap().on_homology;
            let first = induced_cohomology_map(&crush, &g, &point, &m, n).unwrap().on_homology;
            let second = induced_cohomology_map(&proj, &p, &g, &mid, n).unwrap().on_homology;
            prop_assert!(direct.matrix == second.compose(&first).unwrap().matrix);
        }
    }

    #[test]
    fn surjective_pullbacks_are_injective(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_groupoid(&mut rng, 20, 700);
        let crush = collapse_to_point(&g);
        let point = space_groupoid(1);
        let m = constant_module(&point, 1);
        for n in 0..=2 {
            let pull = pullback_matrix(&crush, &g, &point, &m, n).unwrap();
            prop_assert_eq!(rank(&pull), pull.cols());
        }
        let p = product(&g, &space_groupoid(3));
        let proj = GroupoidFunctor::new((0..p.n_arrows()).map(|a| a / 3).collect());
        prop_assert!(proj.is_surjective(&g));
        let mg = random_module(&mut rng, &g, 2);
        for n in 0..=2 {
            let pull = pullback_matrix(&proj, &p, &g, &mg, n).unwrap();
            prop_assert_eq!(rank(&pull), pull.cols());
        }
    }

    #[test]
    fn windows_are_groupoids_with_a_shift(seed in any::<u64>(), f in proptest::collection::vec(-2i64..=2, 6), radius in 1usize..4) {
        let g = sample(seed);
        let potential: Vec<i64> = (0..g.n_units()).map(|i| f[i % f.len()]).collect();
        let c = ZCocycle::from_potential(&g, &potential);
        prop_assert!(validate_cocycle(&g, &c).is_ok());
        let w = skew_window(&g, &c, radius).unwrap();
        let gw = w.groupoid();
        prop_assert!(gw.validate().is_ok());
        for a in 0..gw.n_arrows() {
            if let Some(b) = w.shift(a) {
                prop_assert_eq!(w.shift(gw.src(a)), Some(gw.src(b)));
                prop_assert_eq!(w.shift(gw.rng(a)), Some(gw.rng(b)));
                for &h in gw.arrows_with_range(gw.src(a)) {
                    if let (Some(hb), Some(ab)) = (w.shift(h), w.shift(gw.mul(a, h))) {
                        prop_assert_eq!(gw.mul(b, hb), ab);
                    }
                }
            }
        }
    }
}
