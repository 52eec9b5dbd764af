//! Uniform Lagrangian subspaces of `F_2^{2k}` in canonical form.
//!
//! A Lagrangian `L` with x-projection `V` contains `0 × V^⊥`, and the rest
//! of `L` is the graph of a symmetric map `V -> F_2^k / V^⊥`. Up to a choice
//! of basis for `V`, `L` is therefore determined by `V^⊥` together with a
//! symmetric `j × j` matrix, `j = dim V`. There are
//! `[k j]_2 2^{j(j+1)/2}` Lagrangians with `dim V = j`.
//!
//! For a uniform Clifford `C`, `C^{-1}(Z)` is a uniform Lagrangian, so this
//! sampler stands in for a full symplectic draw whenever only the measured
//! Lagrangian matters.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::f2::{BitVec, Subspace};

/// Draws uniform Lagrangians of `F_2^{2k}`.
#[derive(Clone, Debug)]
pub struct LagrangianSampler {
    k: usize,
    cdf: Vec<f64>,
}

/// `log2(2^m - 1)` for `m >= 1`.
fn log2_mersenne(m: usize) -> f64 {
    if m >= 53 {
        m as f64
    } else {
        (((1u64 << m) - 1) as f64).log2()
    }
}

impl LagrangianSampler {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::out_of_range("k", k, "k >= 1"));
        }
        let probs = Self::probabilities(k);
        let mut cdf = Vec::with_capacity(k + 1);
        let mut acc = 0.0;
        for p in probs {
            acc += p;
            cdf.push(acc);
        }
        Ok(Self { k, cdf })
    }

    /// `Pr(dim V = j)` for `j = 0..=k`.
    pub fn probabilities(k: usize) -> Vec<f64> {
        let mut logs = Vec::with_capacity(k + 1);
        let mut log_binom = 0.0;
        for j in 0..=k {
            if j > 0 {
                log_binom += log2_mersenne(k - j + 1) - log2_mersenne(j);
            }
            logs.push(log_binom + (j * (j + 1) / 2) as f64);
        }
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = logs.iter().map(|l| (l - top).exp2()).collect();
        let total: f64 = w.iter().sum();
        w.into_iter().map(|x| x / total).collect()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn sample_dim<R: RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        self.cdf.partition_point(|&c| c <= u).min(self.k)
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> CanonicalLagrangian {
        let k = self.k;
        let stride = k.div_ceil(64);
        let j = self.sample_dim(rng);
        let r = k - j;

        let mut perp = vec![0u64; r * stride];
        let mut pivots = Vec::with_capacity(r);
        let mut v = vec![0u64; stride];
        let tail = if k.is_multiple_of(64) {
            !0
        } else {
            (1u64 << (k % 64)) - 1
        };
        while pivots.len() < r {
            for w in v.iter_mut() {
                *w = rng.next_u64();
            }
            v[stride - 1] &= tail;
            for (i, &p) in pivots.iter().enumerate() {
                if v[p / 64] >> (p % 64) & 1 == 1 {
                    for (a, b) in v.iter_mut().zip(&perp[i * stride..(i + 1) * stride]) {
                        *a ^= b;
                    }
                }
            }
            let Some(wi) = v.iter().position(|&w| w != 0) else {
                continue;
            };
            let p = 64 * wi + v[wi].trailing_zeros() as usize;
            for i in 0..pivots.len() {
                let row = &mut perp[i * stride..(i + 1) * stride];
                if row[p / 64] >> (p % 64) & 1 == 1 {
                    for (a, b) in row.iter_mut().zip(&v) {
                        *a ^= b;
                    }
                }
            }
            let i = pivots.len();
            perp[i * stride..(i + 1) * stride].copy_from_slice(&v);
            pivots.push(p);
        }

        let mut is_pivot = vec![false; k];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..k).filter(|&c| !is_pivot[c]).collect();

        let jw = j.div_ceil(64);
        let jtail = if j.is_multiple_of(64) {
            !0
        } else {
            (1u64 << (j % 64)) - 1
        };
        let mut sym = vec![0u64; j * jw];
        for row in sym.chunks_mut(jw.max(1)).take(j) {
            for w in row.iter_mut() {
                *w = rng.next_u64();
            }
            row[jw - 1] &= jtail;
        }

        CanonicalLagrangian {
            k,
            stride,
            perp,
            pivots,
            free,
            sym_stride: jw,
            sym,
        }
    }
}

/// `L = span{(0, y_r)} + span{(q_a, sum_b sigma_ab e_{f_b})}` where the
/// `y_r` span `V^⊥`, `f_a` are the non-pivot columns of the `y_r` and
/// `q_a = e_{f_a} + sum_{r : y_r[f_a] = 1} e_{p_r}`.
#[derive(Clone, Debug)]
pub struct CanonicalLagrangian {
    k: usize,
    stride: usize,
    perp: Vec<u64>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    sym_stride: usize,
    /// Raw bits; only entries `(a, b)` with `a <= b` are read.
    sym: Vec<u64>,
}

impl CanonicalLagrangian {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `dim V`.
    pub fn x_dim(&self) -> usize {
        self.free.len()
    }

    /// Rows `y_r` of `V^⊥`, reduced so `y_r[p_s] = [r = s]`.
    pub fn perp_row(&self, r: usize) -> &[u64] {
        &self.perp[r * self.stride..(r + 1) * self.stride]
    }

    /// Lowest set bit of each [`perp_row`](Self::perp_row).
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns `f_a`, ascending.
    pub fn free(&self) -> &[usize] {
        &self.free
    }

    /// Raw row `a` of the symmetric part; see [`sigma`](Self::sigma).
    pub fn sym_row(&self, a: usize) -> &[u64] {
        &self.sym[a * self.sym_stride..(a + 1) * self.sym_stride]
    }

    pub fn sigma(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.sym_row(a)[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn to_subspace(&self) -> Subspace {
        let k = self.k;
        let mut basis = Vec::with_capacity(k);
        for r in 0..self.pivots.len() {
            let y = BitVec::from_words(k, self.perp_row(r));
            basis.push(BitVec::zeros(k).concat(&y));
        }
        for (a, &f) in self.free.iter().enumerate() {
            let mut x = BitVec::unit(k, f);
            for (r, &p) in self.pivots.iter().enumerate() {
                if self.perp_row(r)[f / 64] >> (f % 64) & 1 == 1 {
                    x.flip(p);
                }
            }
            let mut z = BitVec::zeros(k);
            for (b, &g) in self.free.iter().enumerate() {
                if self.sigma(a, b) {
                    z.flip(g);
                }
            }
            basis.push(x.concat(&z));
        }
        Subspace::span_owned(2 * k, basis).expect("basis vectors share one length")
    }
}

/// Direct sum of per-block Lagrangians, as a subspace of `F_2^{2n}`.
pub fn block_sum(n: usize, blocks: &[CanonicalLagrangian]) -> Result<Subspace> {
    let k = blocks.first().map_or(n, |b| b.k());
    if blocks.len() * k != n {
        return Err(Error::BlockSize { n, k });
    }
    let mut basis = Vec::with_capacity(n);
    for (i, b) in blocks.iter().enumerate() {
        for v in b.to_subspace().basis() {
            let mut full = BitVec::zeros(2 * n);
            for c in v.iter_ones() {
                let (half, c) = (c / k, c % k);
                full.set(half * n + i * k + c, true);
            }
            basis.push(full);
        }
    }
    Subspace::span_owned(2 * n, basis)
}
