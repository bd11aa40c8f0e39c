//! Exact joint law of the component statistics of G(n, p) for small `n`,
//! by exhaustive enumeration of all edge subsets of K_n.
//!
//! Ground truth for every stochastic module: each of the `2^(n(n-1)/2)`
//! subsets is weighted `p^k (1-p)^(M-k)` and its component spectrum is
//! accumulated into a table keyed by the canonical spectrum. Accumulation
//! is compensated so the table meets a 1e-12 mass budget even at `n = 8`
//! (2^28 subsets).
//!
//! Enumeration over a sub-range of edge masks is exposed separately so a
//! driver can shard the mask space across workers; merging shards in a
//! fixed order keeps the result independent of the partitioning.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::exploration::ComponentSpectrum;
use crate::math::Kahan;

/// Largest admissible vertex count (2^28 subsets; beyond that enumeration
/// is hopeless).
pub const MAX_EXACT_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CapacityError(pub usize);

impl core::fmt::Display for CapacityError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "exact enumeration supports n <= {MAX_EXACT_N}, got n = {}",
            self.0
        )
    }
}

impl core::error::Error for CapacityError {}

/// Canonical component statistics: `(size, excess)` pairs sorted
/// descending. Permutation-invariant by construction; the component count
/// is the number of pairs and the sizes tuple is the first projection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectrumKey(pub Vec<(u32, u32)>);

impl SpectrumKey {
    pub fn count(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn sizes(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|p| p.0)
    }

    pub fn largest(&self) -> u32 {
        self.0.first().map_or(0, |p| p.0)
    }

    pub fn total_excess(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    /// Key carrying only (count, sorted sizes): the law compared against
    /// simulation when excess edges are not of interest.
    pub fn sizes_only(&self) -> SpectrumKey {
        let mut parts: Vec<(u32, u32)> = self.sizes().map(|s| (s, 0)).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        SpectrumKey(parts)
    }
}

impl From<&ComponentSpectrum> for SpectrumKey {
    fn from(spec: &ComponentSpectrum) -> Self {
        let mut parts: Vec<(u32, u32)> = spec
            .sizes()
            .iter()
            .zip(spec.excess())
            .map(|(&s, &e)| (s as u32, e as u32))
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        SpectrumKey(parts)
    }
}

/// Work-in-progress table over a sub-range of edge masks.
#[derive(Clone, Debug, Default)]
pub struct PartialTable {
    acc: BTreeMap<SpectrumKey, Kahan>,
}

impl PartialTable {
    /// Fold another shard in. Merge shards in a fixed order to keep the
    /// final table bit-identical regardless of how work was distributed.
    pub fn merge(&mut self, other: PartialTable) {
        for (k, v) in other.acc {
            self.acc.entry(k).or_default().add(v.value());
        }
    }
}

/// Exact joint law over canonical spectra.
#[derive(Clone, Debug)]
pub struct ExactDistribution {
    n: usize,
    p: f64,
    table: BTreeMap<SpectrumKey, f64>,
}

/// Number of edge slots of K_n.
pub fn edge_slots(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

/// Enumerate the masks in `[lo, hi)` only; shard of the full job.
pub fn enumerate_chunk(n: usize, p: f64, lo: u64, hi: u64) -> Result<PartialTable, CapacityError> {
    if n == 0 || n > MAX_EXACT_N {
        return Err(CapacityError(n));
    }
    assert!((0.0..=1.0).contains(&p), "p must be a probability");
    let m = edge_slots(n);
    assert!(hi <= 1u64 << m && lo <= hi);

    let mut pairs = Vec::with_capacity(m as usize);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i as u8, j as u8));
        }
    }
    // exact-ish powers by repeated multiplication; error O(m * eps)
    let mut w_edge = [0.0f64; 32];
    let mut w_gap = [0.0f64; 32];
    w_edge[0] = 1.0;
    w_gap[0] = 1.0;
    for k in 1..=m as usize {
        w_edge[k] = w_edge[k - 1] * p;
        w_gap[k] = w_gap[k - 1] * (1.0 - p);
    }

    let mut out = PartialTable::default();
    let mut parent = [0u8; MAX_EXACT_N];
    let mut size = [0u8; MAX_EXACT_N];
    let mut excess = [0u8; MAX_EXACT_N];
    for mask in lo..hi {
        for v in 0..n {
            parent[v] = v as u8;
            size[v] = 1;
            excess[v] = 0;
        }
        let mut bits = mask;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = pairs[b];
            let (mut ri, mut rj) = (i, j);
            while parent[ri as usize] != ri {
                ri = parent[ri as usize];
            }
            while parent[rj as usize] != rj {
                rj = parent[rj as usize];
            }
            if ri == rj {
                excess[ri as usize] += 1;
            } else {
                let (big, small) = if size[ri as usize] >= size[rj as usize] {
                    (ri, rj)
                } else {
                    (rj, ri)
                };
                parent[small as usize] = big;
                size[big as usize] += size[small as usize];
                excess[big as usize] += excess[small as usize];
            }
        }
        let mut parts: Vec<(u32, u32)> = (0..n)
            .filter(|&v| parent[v] == v as u8)
            .map(|v| (size[v] as u32, excess[v] as u32))
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let k = mask.count_ones() as usize;
        let weight = w_edge[k] * w_gap[m as usize - k];
        out.acc.entry(SpectrumKey(parts)).or_default().add(weight);
    }
    Ok(out)
}

/// Assemble the final distribution from (already merged) shards.
pub fn finish(n: usize, p: f64, merged: PartialTable) -> ExactDistribution {
    let table: BTreeMap<SpectrumKey, f64> = merged
        .acc
        .into_iter()
        .map(|(k, v)| (k, v.value()))
        .collect();
    let dist = ExactDistribution { n, p, table };
    debug_assert!((dist.total_mass() - 1.0).abs() < 1e-12);
    dist
}

/// Full enumeration in one call (single-threaded).
pub fn enumerate_exact(n: usize, p: f64) -> Result<ExactDistribution, CapacityError> {
    let m = edge_slots(n.min(MAX_EXACT_N));
    let chunk = enumerate_chunk(n, p, 0, 1u64 << m)?;
    Ok(finish(n, p, chunk))
}

impl ExactDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn table(&self) -> &BTreeMap<SpectrumKey, f64> {
        &self.table
    }

    pub fn total_mass(&self) -> f64 {
        let mut k = Kahan::new();
        for v in self.table.values() {
            k.add(*v);
        }
        k.value()
    }

    /// Marginal law of the component count.
    pub fn count_marginal(&self) -> BTreeMap<u32, f64> {
        let mut out = BTreeMap::new();
        for (key, &w) in &self.table {
            *out.entry(key.count()).or_insert(0.0) += w;
        }
        out
    }

    /// Marginal law of the largest component size.
    pub fn largest_marginal(&self) -> BTreeMap<u32, f64> {
        let mut out = BTreeMap::new();
        for (key, &w) in &self.table {
            *out.entry(key.largest()).or_insert(0.0) += w;
        }
        out
    }

    /// Marginal law of (count, sorted sizes), forgetting excess edges.
    pub fn sizes_marginal(&self) -> BTreeMap<SpectrumKey, f64> {
        let mut out = BTreeMap::new();
        for (key, &w) in &self.table {
            *out.entry(key.sizes_only()).or_insert(0.0) += w;
        }
        out
    }

    pub fn mean_count(&self) -> f64 {
        let mut k = Kahan::new();
        for (key, &w) in &self.table {
            k.add(w * key.count() as f64);
        }
        k.value()
    }

    pub fn mean_total_excess(&self) -> f64 {
        let mut k = Kahan::new();
        for (key, &w) in &self.table {
            k.add(w * key.total_excess() as f64);
        }
        k.value()
    }
}

/// Total-variation distance `sup |d1 - d2| = (1/2) sum |d1 - d2|` over the
/// union of supports.
pub fn tv_distance<K: Ord + Clone>(d1: &BTreeMap<K, f64>, d2: &BTreeMap<K, f64>) -> f64 {
    let mut acc = Kahan::new();
    for (k, &v) in d1 {
        acc.add((v - d2.get(k).copied().unwrap_or(0.0)).abs());
    }
    for (k, &v) in d2 {
        if !d1.contains_key(k) {
            acc.add(v.abs());
        }
    }
    0.5 * acc.value()
}

/// Empirical law over canonical keys from a batch of sampled spectra.
pub fn empirical_table<I: IntoIterator<Item = SpectrumKey>>(keys: I) -> BTreeMap<SpectrumKey, f64> {
    let mut counts: BTreeMap<SpectrumKey, u64> = BTreeMap::new();
    let mut total = 0u64;
    for k in keys {
        *counts.entry(k).or_insert(0) += 1;
        total += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / total as f64))
        .collect()
}

/// Expected component count by an exact dynamic-programming sweep over the
/// exploration recursion: `E[count] = sum_i P(Q_i = 0)`.
///
/// Wholly independent of the subset enumeration; cross-checks that the
/// zero-counting semantics of the queue matches the graph's component
/// count.
pub fn count_mean_dp(n: usize, p: f64) -> f64 {
    assert!(n >= 1 && (0.0..=1.0).contains(&p));
    // dist[q] = P(Q_{i-1} = q)
    let mut dist = alloc::vec![0.0f64; n + 1];
    dist[0] = 1.0;
    let mut mean = Kahan::new();
    for i in 1..=n {
        let mut next = alloc::vec![0.0f64; n + 1];
        for (q, &mass) in dist.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            if q > 0 {
                let trials = n - q - (i - 1);
                for (j, pj) in binomial_pmf(trials, p).iter().enumerate() {
                    next[q + j - 1] += mass * pj;
                }
            } else {
                let trials = n - i;
                for (j, pj) in binomial_pmf(trials, p).iter().enumerate() {
                    next[j] += mass * pj;
                }
            }
        }
        mean.add(next[0]);
        dist = next;
    }
    mean.value()
}

/// Dense Binomial(trials, p) pmf by the stable ratio recurrence around the
/// mode.
fn binomial_pmf(trials: usize, p: f64) -> Vec<f64> {
    let mut pmf = alloc::vec![0.0f64; trials + 1];
    if p <= 0.0 {
        pmf[0] = 1.0;
        return pmf;
    }
    if p >= 1.0 {
        pmf[trials] = 1.0;
        return pmf;
    }
    // start from the (floor) mode to avoid underflow at the tails
    let mode = (libm::floor((trials + 1) as f64 * p)).min(trials as f64) as usize;
    let log_mode = ln_choose(trials, mode)
        + mode as f64 * crate::math::ln(p)
        + (trials - mode) as f64 * crate::math::ln(1.0 - p);
    pmf[mode] = crate::math::exp(log_mode);
    for k in mode..trials {
        let ratio = (trials - k) as f64 / (k + 1) as f64 * (p / (1.0 - p));
        pmf[k + 1] = pmf[k] * ratio;
    }
    for k in (1..=mode).rev() {
        let ratio = k as f64 / (trials - k + 1) as f64 * ((1.0 - p) / p);
        pmf[k - 1] = pmf[k] * ratio;
    }
    pmf
}

fn ln_choose(n: usize, k: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..k {
        acc += crate::math::ln((n - i) as f64) - crate::math::ln((i + 1) as f64);
    }
    acc
}
