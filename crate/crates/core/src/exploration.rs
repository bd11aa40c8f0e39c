//! The vertex-saturation process that builds G(n, c/n) one saturation per
//! unit of time, and the component statistics read off from it.
//!
//! At step `i` a generated-but-unsaturated vertex is saturated if one
//! exists (queue `Q > 0`); otherwise a fresh vertex is generated and
//! saturated. Newly reached vertices arrive as an exact binomial draw over
//! the eligible pool, and edges towards already-generated unsaturated
//! vertices accrue as excess edges. Components are the stretches between
//! successive zeros of `Q`; their count is the zero counter `Phi`.
//!
//! The centred walk `S` carries one extra Bernoulli trial at each restart
//! (the slot that the saturation skips because the fresh vertex cannot link
//! to itself), so that `Q = S + eps + Phi` holds exactly and the discrete
//! Skorohod reflection of `S + eps` reproduces `Q` and `Phi` identically.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::rng::{binomial, RngSeed};

/// Parameters of the sparse random graph: `n` vertices, edge probability
/// `p = c/n` clamped to `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphParams {
    n: usize,
    c: f64,
    p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamsError {
    /// `n` must be at least 1.
    EmptyGraph,
    /// `c` must be finite and non-negative.
    BadIntensity,
    /// the direct sampler enumerates all O(n^2) pairs; refuse beyond 1e5.
    DirectSamplerCapacity(usize),
}

impl core::fmt::Display for ParamsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::EmptyGraph => write!(f, "graph needs at least one vertex"),
            Self::BadIntensity => write!(f, "edge intensity must be finite and >= 0"),
            Self::DirectSamplerCapacity(n) => write!(
                f,
                "direct sampler enumerates n(n-1)/2 pairs; n = {n} exceeds the 100000 limit"
            ),
        }
    }
}

impl core::error::Error for ParamsError {}

impl GraphParams {
    pub fn new(n: usize, c: f64) -> Result<Self, ParamsError> {
        if n == 0 {
            return Err(ParamsError::EmptyGraph);
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(ParamsError::BadIntensity);
        }
        let p = (c / n as f64).clamp(0.0, 1.0);
        Ok(Self { n, c, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Full sample path of the saturation process, all arrays of length `n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationTrace {
    /// generated vertices `V_i`
    v: Vec<u64>,
    /// generated-but-unsaturated vertices `Q_i = V_i - i`
    q: Vec<u64>,
    /// cumulative excess edges `E_i`
    e: Vec<u64>,
    /// zero visits of the queue `Phi_i` (component counter)
    phi: Vec<u64>,
    /// centred walk `S_i` (arrival sum minus `i`)
    s: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceError {
    LengthMismatch,
    InvariantViolation(&'static str),
}

impl core::fmt::Display for TraceError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::LengthMismatch => write!(f, "trace arrays have inconsistent lengths"),
            Self::InvariantViolation(what) => write!(f, "malformed trace: {what}"),
        }
    }
}

impl core::error::Error for TraceError {}

impl ExplorationTrace {
    pub fn n(&self) -> usize {
        self.v.len() - 1
    }

    pub fn v(&self) -> &[u64] {
        &self.v
    }

    pub fn q(&self) -> &[u64] {
        &self.q
    }

    pub fn e(&self) -> &[u64] {
        &self.e
    }

    pub fn phi(&self) -> &[u64] {
        &self.phi
    }

    pub fn s(&self) -> &[i64] {
        &self.s
    }

    /// Rebuild a trace from raw arrays, checking every structural invariant.
    pub fn from_arrays(
        v: Vec<u64>,
        q: Vec<u64>,
        e: Vec<u64>,
        phi: Vec<u64>,
        s: Vec<i64>,
    ) -> Result<Self, TraceError> {
        let len = v.len();
        if len == 0 || [q.len(), e.len(), phi.len(), s.len()].iter().any(|&l| l != len) {
            return Err(TraceError::LengthMismatch);
        }
        let t = Self { v, q, e, phi, s };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), TraceError> {
        let n = self.n();
        if self.v[0] != 0 || self.q[0] != 0 || self.e[0] != 0 || self.phi[0] != 0 || self.s[0] != 0
        {
            return Err(TraceError::InvariantViolation("indices must start at zero"));
        }
        if self.v[n] != n as u64 {
            return Err(TraceError::InvariantViolation("V_n must equal n"));
        }
        let mut zeros = 0;
        for i in 1..=n {
            if self.q[i] != self.v[i] - i as u64 {
                return Err(TraceError::InvariantViolation("Q_i must equal V_i - i"));
            }
            if self.q[i] == 0 {
                zeros += 1;
            }
            if self.phi[i] != zeros {
                return Err(TraceError::InvariantViolation(
                    "Phi must count the zeros of Q",
                ));
            }
            if self.e[i] < self.e[i - 1] {
                return Err(TraceError::InvariantViolation("E must be non-decreasing"));
            }
        }
        Ok(())
    }
}

/// Run the saturation process once. One exact binomial per step for new
/// generations (pool `n - Q - (i-1)` while busy, `n - i` at a restart,
/// with the restart's skipped self-slot drawn separately into `S`), plus an
/// independent binomial over `(Q_{i-1} - 1)^+` trials for excess edges.
pub fn explore(params: &GraphParams, seed: RngSeed) -> ExplorationTrace {
    let mut rng = seed.stream();
    explore_rng(params, &mut rng)
}

pub(crate) fn explore_rng<R: Rng + ?Sized>(params: &GraphParams, rng: &mut R) -> ExplorationTrace {
    let n = params.n as u64;
    let p = params.p;
    let mut v = vec![0u64; params.n + 1];
    let mut q = vec![0u64; params.n + 1];
    let mut e = vec![0u64; params.n + 1];
    let mut phi = vec![0u64; params.n + 1];
    let mut s = vec![0i64; params.n + 1];
    let (mut qi, mut ei, mut zeros, mut si) = (0u64, 0u64, 0u64, 0i64);
    for i in 1..=n {
        let excess = binomial(rng, qi.saturating_sub(1), p);
        if qi > 0 {
            let fresh = binomial(rng, n - qi - (i - 1), p);
            qi = qi + fresh - 1;
            si += fresh as i64 - 1;
        } else {
            let fresh = binomial(rng, n - i, p);
            let skipped = binomial(rng, 1, p);
            qi = fresh;
            si += (fresh + skipped) as i64 - 1;
        }
        ei += excess;
        if qi == 0 {
            zeros += 1;
        }
        let idx = i as usize;
        v[idx] = qi + i;
        q[idx] = qi;
        e[idx] = ei;
        phi[idx] = zeros;
        s[idx] = si;
    }
    ExplorationTrace { v, q, e, phi, s }
}

/// Component sizes (non-increasing), excess edges aligned index by index,
/// and the component count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpectrum {
    sizes: Vec<u64>,
    excess: Vec<u64>,
    count: u64,
}

impl ComponentSpectrum {
    fn from_parts(mut parts: Vec<(u64, u64)>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            count: parts.len() as u64,
            sizes: parts.iter().map(|p| p.0).collect(),
            excess: parts.iter().map(|p| p.1).collect(),
        }
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn excess(&self) -> &[u64] {
        &self.excess
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn largest(&self) -> u64 {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn largest_excess(&self) -> u64 {
        self.excess.first().copied().unwrap_or(0)
    }

    pub fn total_excess(&self) -> u64 {
        self.excess.iter().sum()
    }
}

/// Read the components off a trace: one component per gap between
/// successive zeros of `Q` (a component occupies `(k1, k2]`), with excess
/// `E_{k2} - E_{k1}`.
pub fn components(trace: &ExplorationTrace) -> Result<ComponentSpectrum, TraceError> {
    trace.validate()?;
    let n = trace.n();
    let mut parts = Vec::new();
    let mut last_zero = 0usize;
    for i in 1..=n {
        if trace.q[i] == 0 {
            parts.push(((i - last_zero) as u64, trace.e[i] - trace.e[last_zero]));
            last_zero = i;
        }
    }
    Ok(ComponentSpectrum::from_parts(parts))
}

/// Weighted quick-union with path halving; tracks per-root edge counts so
/// excess edges fall out as `edges - (size - 1)`.
struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
    edges: Vec<u64>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            edges: vec![0; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn add_edge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.edges[ra as usize] += 1;
            return;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.edges[big as usize] += self.edges[small as usize] + 1;
    }

    fn spectrum(mut self) -> ComponentSpectrum {
        let n = self.parent.len();
        let mut parts = Vec::new();
        for x in 0..n as u32 {
            if self.find(x) == x {
                let sz = self.size[x as usize] as u64;
                parts.push((sz, self.edges[x as usize] - (sz - 1)));
            }
        }
        ComponentSpectrum::from_parts(parts)
    }
}

/// Independent validator: flip all n(n-1)/2 edge coins and extract the
/// components by union-find. Quadratic in `n`; refuses `n > 1e5`.
pub fn sample_direct(params: &GraphParams, seed: RngSeed) -> Result<ComponentSpectrum, ParamsError> {
    if params.n > 100_000 {
        return Err(ParamsError::DirectSamplerCapacity(params.n));
    }
    let mut rng = seed.stream();
    let mut dsu = DisjointSet::new(params.n);
    let p = params.p;
    for i in 0..params.n as u32 {
        for j in (i + 1)..params.n as u32 {
            if rng.random_bool(p) {
                dsu.add_edge(i, j);
            }
        }
    }
    Ok(dsu.spectrum())
}

/// Components of an explicitly given edge set (test oracle for the
/// union-find plumbing).
pub fn spectrum_from_edges(n: usize, edges: &[(usize, usize)]) -> ComponentSpectrum {
    let mut dsu = DisjointSet::new(n);
    for &(a, b) in edges {
        assert!(a < n && b < n && a != b);
        dsu.add_edge(a as u32, b as u32);
    }
    dsu.spectrum()
}

/// Discrete Skorohod reflection of a grid path: `reflected_i = x_i - m_i`,
/// `regulator_i = -m_i`, with `m_i = min(0, min_{k<=i} x_k)`.
///
/// The regulator is non-decreasing, vanishes at 0, and grows only where the
/// reflected path sits at zero.
pub fn reflect(values: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut reflected = Vec::with_capacity(values.len());
    let mut regulator = Vec::with_capacity(values.len());
    let mut run_min = 0.0f64;
    for &x in values {
        run_min = run_min.min(x);
        reflected.push(x - run_min);
        regulator.push(-run_min);
    }
    (reflected, regulator)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, c: f64) -> GraphParams {
        GraphParams::new(n, c).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(GraphParams::new(0, 1.0), Err(ParamsError::EmptyGraph));
        assert_eq!(
            GraphParams::new(5, f64::NAN).unwrap_err(),
            ParamsError::BadIntensity
        );
        assert_eq!(params(2, 5.0).p(), 1.0); // clamped
    }

    #[test]
    fn single_vertex_graph() {
        let t = explore(&params(1, 3.0), RngSeed::new(1, 0));
        assert_eq!(t.v(), &[0, 1]);
        assert_eq!(t.q(), &[0, 0]);
        assert_eq!(t.e(), &[0, 0]);
        assert_eq!(t.phi(), &[0, 1]);
    }

    #[test]
    fn empty_graph_is_all_singletons() {
        let n = 5;
        let t = explore(&params(n, 0.0), RngSeed::new(1, 0));
        assert!(t.q().iter().all(|&q| q == 0));
        assert_eq!(t.phi()[n], n as u64);
        assert_eq!(t.e()[n], 0);
        let spec = components(&t).unwrap();
        assert_eq!(spec.sizes(), &[1, 1, 1, 1, 1]);
        assert_eq!(spec.excess(), &[0, 0, 0, 0, 0]);
        assert_eq!(spec.count(), 5);
    }

    #[test]
    fn complete_graph_is_one_component() {
        let n = 7u64;
        let t = explore(&params(n as usize, n as f64), RngSeed::new(1, 0));
        assert_eq!(t.v()[1], n);
        assert_eq!(t.q()[0], 0);
        for i in 1..=n as usize {
            assert_eq!(t.q()[i], n - i as u64);
        }
        let spec = components(&t).unwrap();
        assert_eq!(spec.sizes(), &[n]);
        assert_eq!(spec.count(), 1);
        assert_eq!(spec.excess(), &[(n - 1) * (n - 2) / 2]);
    }

    #[test]
    fn hand_trace_component_extraction() {
        // q = [0,2,1,0,0,1,0] over n = 6: zeros at 3, 4, 6
        let q = vec![0u64, 2, 1, 0, 0, 1, 0];
        let n = 6usize;
        let v: Vec<u64> = (0..=n).map(|i| q[i] + i as u64).collect();
        let mut phi = vec![0u64; n + 1];
        let mut z = 0;
        for i in 1..=n {
            if q[i] == 0 {
                z += 1;
            }
            phi[i] = z;
        }
        let e = vec![0u64; n + 1];
        let s: Vec<i64> = (0..=n).map(|i| q[i] as i64 - phi[i] as i64).collect();
        let t = ExplorationTrace::from_arrays(v, q, e, phi, s).unwrap();
        let spec = components(&t).unwrap();
        assert_eq!(spec.sizes(), &[3, 2, 1]);
        assert_eq!(spec.count(), 3);
    }

    #[test]
    fn malformed_trace_rejected() {
        let t = ExplorationTrace::from_arrays(
            vec![0, 2, 2],
            vec![0, 1, 1], // q_2 should be 0 = v_2 - 2
            vec![0, 0, 0],
            vec![0, 0, 0],
            vec![0, 1, 0],
        );
        assert!(t.is_err());
    }

    #[test]
    fn forced_edge_set_union_find() {
        let spec = spectrum_from_edges(4, &[(0, 1), (1, 2)]);
        assert_eq!(spec.sizes(), &[3, 1]);
        assert_eq!(spec.excess(), &[0, 0]);
        assert_eq!(spec.count(), 2);
        // triangle has one excess edge
        let spec = spectrum_from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(spec.sizes(), &[3]);
        assert_eq!(spec.excess(), &[1]);
    }

    #[test]
    fn direct_sampler_edges() {
        let all = sample_direct(&params(6, 6.0), RngSeed::new(3, 0)).unwrap();
        assert_eq!(all.sizes(), &[6]);
        assert_eq!(all.excess(), &[(6 - 1) * (6 - 2) / 2]);
        let none = sample_direct(&params(6, 0.0), RngSeed::new(3, 0)).unwrap();
        assert_eq!(none.count(), 6);
        assert!(matches!(
            sample_direct(&params(100_001, 1.0), RngSeed::new(1, 0)),
            Err(ParamsError::DirectSamplerCapacity(_))
        ));
    }

    #[test]
    fn skorohod_hand_examples() {
        // non-negative non-decreasing path is untouched
        let (r, t) = reflect(&[0.0, 0.5, 1.0, 1.0]);
        assert_eq!(r, vec![0.0, 0.5, 1.0, 1.0]);
        assert_eq!(t, vec![0.0; 4]);
        // x_t = -t is fully absorbed by the regulator
        let xs: Vec<f64> = (0..5).map(|i| -(i as f64)).collect();
        let (r, t) = reflect(&xs);
        assert!(r.iter().all(|&x| x == 0.0));
        assert_eq!(t, vec![0.0, 1.0, 2.0, 3.0, 4.0]);
        // hand computation
        let (r, t) = reflect(&[0.0, 1.0, -1.0, 0.5]);
        assert_eq!(r, vec![0.0, 1.0, 0.0, 1.5]);
        assert_eq!(t, vec![0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn reflection_identity_reproduces_queue_and_counter() {
        // eps_i = q_i - s_i - phi_i closes the decomposition; reflecting
        // s + eps must return q and phi exactly, with no tolerance.
        for rep in 0..20 {
            let t = explore(&params(200, 1.7), RngSeed::new(9, rep));
            let n = t.n();
            let eps: Vec<i64> = (0..=n)
                .map(|i| t.q()[i] as i64 - t.s()[i] - t.phi()[i] as i64)
                .collect();
            // structure of eps per its definition: the indicator of Q_i > 0
            // minus a non-decreasing count of restart coin wins
            let mut prev_coins = 0;
            for i in 0..=n {
                let coins = i64::from(t.q()[i] > 0) - eps[i];
                assert!(coins >= prev_coins && coins <= i as i64);
                prev_coins = coins;
            }
            let input: Vec<f64> = (0..=n).map(|i| (t.s()[i] + eps[i]) as f64).collect();
            let (r, reg) = reflect(&input);
            for i in 0..=n {
                assert_eq!(r[i], t.q()[i] as f64, "rep {rep} index {i}");
                assert_eq!(reg[i], t.phi()[i] as f64, "rep {rep} index {i}");
            }
        }
    }

    #[test]
    fn explored_spectrum_conserves_mass() {
        for rep in 0..50 {
            let t = explore(&params(300, 2.5), RngSeed::new(11, rep));
            let spec = components(&t).unwrap();
            assert_eq!(spec.sizes().iter().sum::<u64>(), 300);
            assert_eq!(spec.count(), t.phi()[300]);
            assert_eq!(spec.total_excess(), t.e()[300]);
        }
    }
}
