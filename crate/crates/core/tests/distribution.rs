//! Distributional agreement between the two samplers and the exact oracle
//! at desk scale. The acceptance suite repeats these at the full
//! 10^6-replication scale; these runs are sized for the regular test cycle.

use giantscope_core::exact::{empirical_table, enumerate_exact, tv_distance, SpectrumKey};
use giantscope_core::exploration::{components, explore, sample_direct, GraphParams};
use giantscope_core::RngSeed;

fn tv_vs_oracle(n: usize, p: f64, reps: u64, direct: bool, master: u64) -> f64 {
    let params = GraphParams::new(n, p * n as f64).unwrap();
    assert!((params.p() - p).abs() < 1e-15);
    let exact = enumerate_exact(n, p).unwrap();
    let keys = (0..reps).map(|r| {
        let spec = if direct {
            sample_direct(&params, RngSeed::new(master, r)).unwrap()
        } else {
            components(&explore(&params, RngSeed::new(master, r))).unwrap()
        };
        SpectrumKey::from(&spec)
    });
    tv_distance(&empirical_table(keys), exact.table())
}

#[test]
fn explore_matches_oracle_joint_law() {
    // joint law including excess edges, not just (count, sizes)
    let tv = tv_vs_oracle(4, 0.3, 150_000, false, 101);
    assert!(tv < 0.012, "n=4 explore tv = {tv}");
    let tv = tv_vs_oracle(5, 0.5, 150_000, false, 102);
    assert!(tv < 0.012, "n=5 explore tv = {tv}");
}

#[test]
fn direct_sampler_matches_oracle_joint_law() {
    let tv = tv_vs_oracle(4, 0.3, 150_000, true, 103);
    assert!(tv < 0.012, "n=4 direct tv = {tv}");
    let tv = tv_vs_oracle(5, 0.5, 150_000, true, 104);
    assert!(tv < 0.012, "n=5 direct tv = {tv}");
}

#[test]
fn explore_and_direct_agree_against_each_other() {
    // same law, never the same stream
    let n = 6;
    let params = GraphParams::new(n, 0.35 * n as f64).unwrap();
    let reps = 120_000u64;
    let a = empirical_table((0..reps).map(|r| {
        SpectrumKey::from(&components(&explore(&params, RngSeed::new(7, r))).unwrap())
    }));
    let b = empirical_table(
        (0..reps).map(|r| SpectrumKey::from(&sample_direct(&params, RngSeed::new(8, r)).unwrap())),
    );
    let tv = tv_distance(&a, &b);
    assert!(tv < 0.015, "explore vs direct tv = {tv}");
}
