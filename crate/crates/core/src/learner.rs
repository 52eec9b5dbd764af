//! Single-copy learning of the stabilizer group from shallow block-Clifford
//! measurements, plus the primitives it is assembled from.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::RngCore;

use crate::cds::{DifferenceSampler, ZSpectrum};
use crate::clifford::{sample_block_clifford, BlockSymplectic};
use crate::error::{check_dims, Error, Result};
use crate::f2::words::{self, with_width};
use crate::f2::{linear_relations, BitVec, Echelon, Subspace};
use crate::lagrangian::{CanonicalLagrangian, LagrangianSampler};

/// Largest `n` accepted by [`fwht_recover`].
pub const FWHT_CAP: usize = 26;

/// Parameters of one learning run.
#[derive(Clone, Debug, PartialEq)]
pub struct LearnerParams {
    pub n: usize,
    pub t: usize,
    /// Block size of the Clifford ensemble; must divide `n`.
    pub k: usize,
    /// Number of sampled Cliffords.
    pub m: usize,
    /// Difference samples per Clifford.
    pub n_s: usize,
    pub epsilon: f64,
}

impl LearnerParams {
    /// Defaults `k = default_block_size(n)`, `m = 4 n 2^t`, `N_S = 8 n^2`,
    /// `epsilon = 0.2`.
    pub fn defaults(n: usize, t: usize) -> Self {
        Self {
            n,
            t,
            k: default_block_size(n),
            m: 4 * n * (1 << t),
            n_s: 8 * n * n,
            epsilon: 0.2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::out_of_range("n", self.n, "n >= 1"));
        }
        if self.t > self.n {
            return Err(Error::out_of_range("t", self.t, "t <= n"));
        }
        if self.k == 0 || !self.n.is_multiple_of(self.k) {
            return Err(Error::BlockSize { n: self.n, k: self.k });
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.25) {
            return Err(Error::out_of_range("epsilon", self.epsilon, "0 < epsilon < 0.25"));
        }
        if self.m == 0 {
            return Err(Error::out_of_range("m", self.m, "m >= 1"));
        }
        if self.n_s == 0 {
            return Err(Error::out_of_range("N_S", self.n_s, "N_S >= 1"));
        }
        Ok(())
    }
}

/// Smallest divisor of `n` that is at least `ceil(log2 n)`.
pub fn default_block_size(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let lg = (usize::BITS - (n - 1).leading_zeros()) as usize;
    (lg.max(1)..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

/// Trace of one round of [`algorithm1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    pub dim_h: usize,
    pub dim_gain: usize,
    pub cum_dim: usize,
    /// Samples drawn before the span stopped growing or the budget ran out.
    pub samples_used: usize,
}

/// Result of [`algorithm1`].
#[derive(Clone, Debug)]
pub struct LearnOutcome {
    pub s_hat: Subspace,
    pub rounds_used: usize,
    pub rounds: Vec<RoundRecord>,
    pub isotropic: bool,
}

/// `span(samples)` inside GF(2)^n.
pub fn heavy_subspace_span(n: usize, samples: &[BitVec]) -> Result<Subspace> {
    Subspace::span(n, samples)
}

/// `C^{-1}((H + Z)^perp)`. With `H = H_X × 0`, `(H + Z)^perp` is the Z-type
/// space `0 × H_X^dot`.
pub fn reconstruct_candidate(h_hat: &Subspace, c: &BlockSymplectic) -> Result<Subspace> {
    let n = c.n();
    check_dims(n, h_hat.ambient())?;
    let lifted = h_hat.dot_complement().map_rows(2 * n, |z| BitVec::zeros(n).concat(z));
    c.inverse_apply_subspace(&lifted)
}

/// Runs the learner on a stabilizer-type state with group `weyl`, drawing
/// difference samples uniformly from the support of each rotated state.
///
/// Sampling for a round stops early once the span reaches the full support,
/// since further noiseless samples cannot change it.
pub fn algorithm1<R: RngCore + ?Sized>(weyl: &Subspace, params: &LearnerParams, rng: &mut R) -> Result<LearnOutcome> {
    params.validate()?;
    check_dims(2 * params.n, weyl.ambient())?;
    if !weyl.is_isotropic() {
        return Err(Error::NotIsotropic);
    }
    if weyl.dim() + params.t != params.n {
        return Err(Error::out_of_range("dim weyl", weyl.dim(), "dim = n - t"));
    }
    let n = params.n;
    let mut acc = Echelon::new(2 * n);
    let mut rounds = Vec::with_capacity(params.m);
    for round in 1..=params.m {
        let c = sample_block_clifford(n, params.k, rng)?;
        let rotated = c.apply_subspace(weyl)?;
        let sampler = DifferenceSampler::new(&rotated)?;
        let full = sampler.support().dim();
        let mut h = Echelon::new(n);
        let mut used = 0;
        while used < params.n_s && h.dim() < full {
            h.insert(sampler.sample(rng));
            used += 1;
        }
        let h_hat = h.into_subspace();
        let cand = reconstruct_candidate(&h_hat, &c)?;
        let before = acc.dim();
        for r in cand.basis() {
            acc.insert(r.clone());
        }
        rounds.push(RoundRecord {
            round,
            dim_h: h_hat.dim(),
            dim_gain: acc.dim() - before,
            cum_dim: acc.dim(),
            samples_used: used,
        });
    }
    let s_hat = acc.into_subspace();
    Ok(LearnOutcome {
        isotropic: s_hat.is_isotropic(),
        rounds_used: params.m,
        rounds,
        s_hat,
    })
}

/// Outcome of [`rounds_to_span`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounds {
    /// Smallest `m` with `sum_{i<=m} (S ∩ C_i^{-1}(Z)) = S`.
    Spanned(usize),
    /// The cap was reached; `dim_reached` is the dimension of the partial sum.
    CapExceeded { cap: usize, dim_reached: usize },
}

impl Rounds {
    pub fn spanned(self) -> Option<usize> {
        match self {
            Rounds::Spanned(m) => Some(m),
            Rounds::CapExceeded { .. } => None,
        }
    }
}

/// Counts sampled ensemble elements until the visible parts of `weyl` span it.
///
/// A round sees `weyl ∩ C^{-1}(Z)`, which depends on `C` only through the
/// block Lagrangians `C_b^{-1}(Z)`. Those are uniform for uniform blocks, so
/// each round draws them directly and solves for the coordinates
/// `u` with `sum u_j s_j` orthogonal to every Lagrangian basis vector.
pub fn rounds_to_span<R: RngCore + ?Sized>(weyl: &Subspace, k: usize, rng: &mut R, round_cap: usize) -> Result<Rounds> {
    let n = weyl.num_qubits();
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::BlockSize { n, k });
    }
    if !weyl.is_isotropic() {
        return Err(Error::NotIsotropic);
    }
    let d = weyl.dim();
    if d == 0 {
        return Ok(Rounds::Spanned(0));
    }
    let (xt, zt) = transposed_halves(weyl);
    with_width!(
        d.div_ceil(64),
        lagrangian_rounds,
        (&xt, &zt, d, k, rng, round_cap),
        rounds_to_span_clifford(weyl, k, rng, round_cap)
    )
}

/// Bit `r` of `xt[c]` (`zt[c]`) is the x (z) bit of qubit `c` in basis
/// vector `r`.
fn transposed_halves(weyl: &Subspace) -> (Vec<BitVec>, Vec<BitVec>) {
    let n = weyl.num_qubits();
    let d = weyl.dim();
    let mut xt = vec![BitVec::zeros(d); n];
    let mut zt = vec![BitVec::zeros(d); n];
    for (r, b) in weyl.basis().iter().enumerate() {
        for c in b.iter_ones() {
            if c < n {
                xt[c].set(r, true);
            } else {
                zt[c - n].set(r, true);
            }
        }
    }
    (xt, zt)
}

/// Uniform values in `0..3` from two random bits at a time.
#[derive(Default)]
struct Trits {
    bits: u64,
    left: u32,
}

impl Trits {
    fn next(&mut self, rng: &mut (impl RngCore + ?Sized)) -> u64 {
        loop {
            if self.left < 2 {
                self.bits = rng.next_u64();
                self.left = 64;
            }
            let v = self.bits & 3;
            self.bits >>= 2;
            self.left -= 2;
            if v < 3 {
                return v;
            }
        }
    }
}

fn lagrangian_rounds<const W: usize>(
    xt: &[BitVec],
    zt: &[BitVec],
    d: usize,
    k: usize,
    rng: &mut (impl RngCore + ?Sized),
    round_cap: usize,
) -> Result<Rounds> {
    let n = xt.len();
    let xt: Vec<[u64; W]> = xt.iter().map(words::load).collect();
    let zt: Vec<[u64; W]> = zt.iter().map(words::load).collect();
    let sampler = LagrangianSampler::new(k)?;
    let mut acc = Vec::with_capacity(d);
    let mut cons = Vec::with_capacity(n);
    let mut trits = Trits::default();
    for round in 1..=round_cap {
        cons.clear();
        if k == 1 {
            for c in 0..n {
                let mut row = [0u64; W];
                let t = trits.next(rng);
                words::xor_if(&mut row, &xt[c], t != 1);
                words::xor_if(&mut row, &zt[c], t != 0);
                cons.push(row);
            }
        } else {
            for s in (0..n).step_by(k) {
                let l = sampler.sample(rng);
                block_constraints(&xt[s..s + k], &zt[s..s + k], &l, &mut cons);
            }
        }
        for u in words::null_space(&cons, d) {
            words::insert(&mut acc, u);
        }
        if acc.len() == d {
            return Ok(Rounds::Spanned(round));
        }
    }
    Ok(Rounds::CapExceeded {
        cap: round_cap,
        dim_reached: acc.len(),
    })
}

/// One row per basis vector of `l`: coordinates `u` with
/// `sum_r u_r s_r` form-orthogonal to that vector, restricted to a block.
fn block_constraints<const W: usize>(
    xt: &[[u64; W]],
    zt: &[[u64; W]],
    l: &CanonicalLagrangian,
    out: &mut Vec<[u64; W]>,
) {
    let pivots = l.pivots();
    for r in 0..pivots.len() {
        out.push(words::combine(xt, l.perp_row(r)));
    }
    let free = l.free();
    let start = out.len();
    for &f in free {
        let mut row = zt[f];
        for (r, &p) in pivots.iter().enumerate() {
            if l.perp_row(r)[f / 64] >> (f % 64) & 1 == 1 {
                words::xor_into(&mut row, &zt[p]);
            }
        }
        out.push(row);
    }
    for a in 0..free.len() {
        for (wi, &word) in l.sym_row(a).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = 64 * wi + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if b < a {
                    continue;
                }
                words::xor_into(&mut out[start + a], &xt[free[b]]);
                if b > a {
                    words::xor_into(&mut out[start + b], &xt[free[a]]);
                }
            }
        }
    }
}

/// [`rounds_to_span`] with an explicit block-Clifford draw per round.
///
/// Works in coordinates of the basis `s_1..s_d` of `weyl`: a combination
/// `sum u_j s_j` lies in `C^{-1}(Z)` iff the x-parts of `C(s_j)` satisfy
/// `sum u_j x(C s_j) = 0`, so each round contributes the relation space of
/// those x-parts.
pub fn rounds_to_span_clifford<R: RngCore + ?Sized>(
    weyl: &Subspace,
    k: usize,
    rng: &mut R,
    round_cap: usize,
) -> Result<Rounds> {
    let n = weyl.num_qubits();
    if !weyl.is_isotropic() {
        return Err(Error::NotIsotropic);
    }
    let d = weyl.dim();
    let mut acc = Echelon::new(d);
    if d == 0 {
        return Ok(Rounds::Spanned(0));
    }
    for round in 1..=round_cap {
        let c = sample_block_clifford(n, k, rng)?;
        for u in linear_relations(&c.x_parts(weyl.basis())) {
            acc.insert(u);
        }
        if acc.dim() == d {
            return Ok(Rounds::Spanned(round));
        }
    }
    Ok(Rounds::CapExceeded {
        cap: round_cap,
        dim_reached: acc.dim(),
    })
}

/// Reference implementation of [`rounds_to_span_clifford`] through
/// explicit subspace intersections. Consumes randomness identically.
pub fn rounds_to_span_reference<R: RngCore + ?Sized>(
    weyl: &Subspace,
    k: usize,
    rng: &mut R,
    round_cap: usize,
) -> Result<Rounds> {
    let n = weyl.num_qubits();
    let z = Subspace::z_type(n);
    let mut acc = Subspace::zero(2 * n);
    if weyl.dim() == 0 {
        return Ok(Rounds::Spanned(0));
    }
    for round in 1..=round_cap {
        let c = sample_block_clifford(n, k, rng)?;
        let visible = weyl.intersect(&c.inverse_apply_subspace(&z)?)?;
        acc = acc.sum(&visible)?;
        if acc == *weyl {
            return Ok(Rounds::Spanned(round));
        }
    }
    Ok(Rounds::CapExceeded {
        cap: round_cap,
        dim_reached: acc.dim(),
    })
}

/// FWHT summary of an empirical sample distribution.
#[derive(Clone, Debug)]
pub struct WalshReport {
    pub n: usize,
    pub n_samples: usize,
    /// Unnormalized sums `sum_x count(x) (-1)^{s.x}`, indexed by `s`
    /// with bit `i` of the index being coordinate `i`.
    raw: Vec<i32>,
    pub gamma: f64,
    pub max_s: BitVec,
    pub max_coefficient: f64,
    /// `Some(max_s)` when `max_coefficient > gamma`.
    pub argmax: Option<BitVec>,
}

impl WalshReport {
    /// `c(s) = (1 / N) sum_x count(x) (-1)^{s.x}`.
    pub fn coefficient(&self, s: &BitVec) -> f64 {
        self.raw[s.to_u64() as usize] as f64 / self.n_samples as f64
    }
}

/// Detection threshold `sqrt(2 (n ln 2 + ln(1/alpha)) / N)`.
pub fn detection_threshold(n: usize, n_samples: usize, alpha: f64) -> f64 {
    (2.0 * (n as f64 * std::f64::consts::LN_2 + (1.0 / alpha).ln()) / n_samples as f64).sqrt()
}

/// Recovers a hidden parity `s` (with `s.x = 0` biased) from samples.
///
/// Ties for the largest coefficient go to the lexicographically smallest
/// 0/1 string, reading coordinate 0 first.
pub fn fwht_recover(n: usize, samples: &[BitVec], alpha: f64) -> Result<WalshReport> {
    if n == 0 || n > FWHT_CAP {
        return Err(Error::out_of_range("n", n, "1 <= n <= 26"));
    }
    if samples.is_empty() {
        return Err(Error::out_of_range("N_S", 0, "N_S >= 1"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::out_of_range("alpha", alpha, "0 < alpha < 1"));
    }
    if samples.len() > i32::MAX as usize {
        return Err(Error::out_of_range("N_S", samples.len(), "N_S < 2^31"));
    }
    let mut raw = vec![0i32; 1 << n];
    for x in samples {
        check_dims(n, x.len())?;
        raw[x.to_u64() as usize] += 1;
    }
    fwht_i32(&mut raw);
    let rev = |s: usize| (s as u64).reverse_bits() >> (64 - n);
    let mut best = 1usize;
    for s in 2..raw.len() {
        if raw[s] > raw[best] || (raw[s] == raw[best] && rev(s) < rev(best)) {
            best = s;
        }
    }
    let gamma = detection_threshold(n, samples.len(), alpha);
    let max_coefficient = raw[best] as f64 / samples.len() as f64;
    let max_s = BitVec::from_u64(n, best as u64);
    Ok(WalshReport {
        n,
        n_samples: samples.len(),
        raw,
        gamma,
        argmax: (max_coefficient > gamma).then(|| max_s.clone()),
        max_s,
        max_coefficient,
    })
}

fn fwht_i32(a: &mut [i32]) {
    let mut h = 1;
    while h < a.len() {
        for i in (0..a.len()).step_by(2 * h) {
            let (lo, hi) = a[i..i + 2 * h].split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*x, *y);
                *x = u + v;
                *y = u - v;
            }
        }
        h *= 2;
    }
}

/// Sparse map `x -> tr(rho W_x)^2` over all Pauli labels; absent entries
/// are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliSpectrum {
    n: usize,
    weights: BTreeMap<BitVec, BigRational>,
}

impl PauliSpectrum {
    pub fn new(n: usize, weights: BTreeMap<BitVec, BigRational>) -> Result<Self> {
        for (x, w) in &weights {
            check_dims(2 * n, x.len())?;
            if w < &BigRational::zero() || w > &BigRational::from_integer(1.into()) {
                return Err(Error::InvalidSpectrum(format!("weight {w} outside [0, 1]")));
            }
        }
        Ok(Self { n, weights })
    }

    /// Weight 1 on every element of `weyl`.
    pub fn from_stabilizer(weyl: &Subspace) -> Result<Self> {
        let one = BigRational::from_integer(1.into());
        let weights = weyl.enumerate()?.map(|x| (x, one.clone())).collect();
        Ok(Self {
            n: weyl.num_qubits(),
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, x: &BitVec) -> BigRational {
        self.weights.get(x).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Restriction to Z-type labels.
    pub fn z_spectrum(&self) -> Result<ZSpectrum> {
        let n = self.n;
        let entries = self
            .weights
            .iter()
            .filter(|(x, _)| x.iter_ones().all(|i| i >= n))
            .map(|(x, w)| (x.slice(n, n), w.clone()))
            .collect();
        ZSpectrum::new(n, entries)
    }
}

/// `(1 / |S|) sum_{x in S} w_x`.
pub fn subspace_mass_check(s: &Subspace, spec: &PauliSpectrum) -> Result<BigRational> {
    check_dims(2 * spec.n, s.ambient())?;
    let mut acc = BigRational::zero();
    for x in s.enumerate()? {
        acc += spec.weight(&x);
    }
    Ok(acc / BigRational::from_integer(BigInt::from(1u64) << s.dim()))
}
