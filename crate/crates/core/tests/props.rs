//! Property tests for the structural invariants: reflection identities,
//! spectrum bookkeeping, and shape properties of the rate-function kernels.

use giantscope_core::exploration::{
    components, explore, reflect, sample_direct, spectrum_from_edges, GraphParams,
};
use giantscope_core::rates::{
    i_alpha, i_beta, k_rho, k_star, k_star_checked, l_c, r_star, RateParams,
};
use giantscope_core::RngSeed;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn skorohod_solves_the_reflection_problem(
        values in prop::collection::vec(-5.0f64..5.0, 2..200),
    ) {
        let (r, reg) = reflect(&values);
        prop_assert_eq!(reg[0], (-values[0]).max(0.0));
        for i in 0..values.len() {
            prop_assert!(r[i] >= 0.0);
            prop_assert!((r[i] - (values[i] + reg[i])).abs() < 1e-12);
            if i > 0 {
                prop_assert!(reg[i] >= reg[i - 1]);
                // the regulator moves only while the reflected path is at zero
                if reg[i] > reg[i - 1] {
                    prop_assert_eq!(r[i], 0.0);
                }
            }
        }
    }

    #[test]
    fn exploration_spectrum_bookkeeping(
        n in 1usize..80,
        c in 0.0f64..4.0,
        master in any::<u64>(),
    ) {
        let params = GraphParams::new(n, c).unwrap();
        let trace = explore(&params, RngSeed::new(master, 0));
        let spec = components(&trace).unwrap();
        prop_assert_eq!(spec.sizes().iter().sum::<u64>(), n as u64);
        prop_assert_eq!(spec.count(), trace.phi()[n]);
        prop_assert_eq!(spec.count() as usize, spec.sizes().len());
        for (&s, &e) in spec.sizes().iter().zip(spec.excess()) {
            // excess caps at the complete graph minus a spanning tree
            prop_assert!(e <= s * (s - 1) / 2 - (s - 1));
        }
        // queue stays non-negative and phi counts its zeros
        let mut zeros = 0;
        for i in 1..=n {
            if trace.q()[i] == 0 {
                zeros += 1;
            }
            prop_assert_eq!(trace.phi()[i], zeros);
        }
    }

    #[test]
    fn direct_sampler_agrees_on_bookkeeping(
        n in 1usize..60,
        c in 0.0f64..4.0,
        master in any::<u64>(),
    ) {
        let params = GraphParams::new(n, c).unwrap();
        let spec = sample_direct(&params, RngSeed::new(master, 1)).unwrap();
        prop_assert_eq!(spec.sizes().iter().sum::<u64>(), n as u64);
        prop_assert_eq!(spec.count() as usize, spec.sizes().len());
    }

    #[test]
    fn edge_count_conservation(
        n in 2usize..24,
        include in prop::collection::vec(any::<bool>(), 300),
    ) {
        // pick a subset of the edge slots of K_n; every drawn edge must be
        // accounted for as either tree or excess
        let mut edges = Vec::new();
        let mut slot = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                if include[slot % include.len()] && (slot * 7 + i) % 3 != 0 {
                    edges.push((i, j));
                }
                slot += 1;
            }
        }
        let spec = spectrum_from_edges(n, &edges);
        let accounted: u64 = spec
            .sizes()
            .iter()
            .zip(spec.excess())
            .map(|(&s, &e)| (s - 1) + e)
            .sum();
        prop_assert_eq!(accounted, edges.len() as u64);
    }

    #[test]
    fn kernel_shapes(
        u in 0.02f64..0.98,
        rho in 0.05f64..20.0,
        c in 0.2f64..6.0,
    ) {
        let h = 1e-4;
        // K is negative inside, strictly decreasing and concave in u
        prop_assert!(k_rho(u, rho) < 0.0);
        prop_assert!(k_rho(u + h, rho) < k_rho(u, rho));
        prop_assert!(k_rho(u, rho + h) < k_rho(u, rho));
        let second = k_rho(u + h, rho) - 2.0 * k_rho(u, rho) + k_rho(u - h, rho);
        prop_assert!(second < 1e-12);
        // subadditivity: one block is cheaper than two
        let half = u / 2.0;
        prop_assert!(k_rho(u, rho) <= k_rho(half, rho) + k_rho(half, rho) + 1e-12);
        // L is strictly increasing
        prop_assert!(l_c(u + h, c) > l_c(u, c));
    }

    #[test]
    fn exposed_rates_are_nonnegative(
        a in 0.0f64..1.0,
        u in 0.0f64..1.0,
        c in 0.3f64..5.0,
    ) {
        prop_assert!(i_alpha(a, c) >= 0.0);
        prop_assert!(i_beta(u, c) >= 0.0);
        let r = r_star(u, c);
        prop_assert!(k_star(u, r.max(0.0), c) >= k_rho(u, c) - 1e-9);
    }

    #[test]
    fn k_star_solver_matches_grid_scan(
        u in 0.02f64..1.0,
        r in 1e-6f64..0.5,
        c in 0.5f64..5.0,
    ) {
        let p = RateParams::new(c);
        prop_assert!(k_star_checked(u, r, &p).is_ok());
    }
}
