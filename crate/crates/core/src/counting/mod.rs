//! Exact combinatorics of symplectic GF(2) geometry.
//!
//! Every quantity is evaluated with big integers or exact rationals. The
//! [`brute`] submodule enumerates small cases directly and serves as the
//! oracle for each closed form; [`report`] bundles the comparisons.

pub mod brute;
pub mod report;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `2^e` as a big integer.
pub fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// `2^e` as an exact rational, for any sign of `e`.
pub fn pow2r(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Number of `r`-dimensional subspaces of GF(2)^m.
pub fn gaussian_binomial(m: usize, r: usize) -> Result<BigUint> {
    if r > m {
        return Err(Error::out_of_range("r", r, "r <= m"));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= pow2(m - i) - 1u32;
        den *= pow2(r - i) - 1u32;
    }
    Ok(num / den)
}

/// Number of `m`-dimensional isotropic subspaces of GF(2)^{2n}.
pub fn num_isotropic(n: usize, m: usize) -> Result<BigUint> {
    if m > n {
        return Err(Error::out_of_range("m", m, "m <= n"));
    }
    let mut c = gaussian_binomial(n, m)?;
    for i in (n - m + 1)..=n {
        c *= pow2(i) + 1u32;
    }
    Ok(c)
}

/// Number of Lagrangians `L` with `dim(L ∩ L0) = l` for a fixed Lagrangian `L0`.
pub fn lagrangian_intersection_count(n: usize, l: usize) -> Result<BigUint> {
    if l > n {
        return Err(Error::out_of_range("l", l, "l <= n"));
    }
    let j = n - l;
    Ok(gaussian_binomial(n, l)? * pow2(j * (j + 1) / 2))
}

/// Number of `m`-dimensional isotropic `S` with `S ∩ L0 = {0}`.
pub fn zero_intersection_count(n: usize, m: usize) -> Result<BigUint> {
    if m > n {
        return Err(Error::out_of_range("m", m, "m <= n"));
    }
    Ok(gaussian_binomial(n, m)? * pow2(m * (m + 1) / 2) * pow2(m * (n - m)))
}

/// Number of `m`-dimensional isotropic `S` with `dim(S ∩ L0) = l`.
pub fn iso_lag_intersection_count(n: usize, m: usize, l: usize) -> Result<BigUint> {
    if m > n {
        return Err(Error::out_of_range("m", m, "m <= n"));
    }
    if l > m {
        return Err(Error::out_of_range("l", l, "l <= m"));
    }
    let j = m - l;
    Ok(gaussian_binomial(n, l)? * gaussian_binomial(n - l, j)? * pow2(j * (j + 1) / 2) * pow2(j * (n - m)))
}

/// `Pr(dim(L ∩ L0) = l)` for a uniform Lagrangian `L`.
pub fn lagrangian_intersection_prob(n: usize, l: usize) -> Result<BigRational> {
    Ok(ratio(lagrangian_intersection_count(n, l)?, num_isotropic(n, n)?))
}

/// `G_n(s) = sum_l Pr(dim(L ∩ L0) = l) s^l`, evaluated through the product
/// `s^n / prod_{i=1}^n (2^i + 1) * prod_{i=0}^{n-1} (1 + 2^{i+1} / s)`.
pub fn generating_g(n: usize, s: &BigRational) -> Result<BigRational> {
    if s <= &BigRational::zero() {
        return Err(Error::out_of_range("s", s, "s > 0"));
    }
    let mut acc = BigRational::one();
    for i in 0..n {
        acc *= s * (BigRational::one() + int(BigInt::one() << (i + 1)) / s);
        acc /= int(BigInt::from(pow2(i + 1) + 1u32));
    }
    Ok(acc)
}

/// `G_n(s)` from its defining sum over intersection dimensions.
pub fn generating_g_by_sum(n: usize, s: &BigRational) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    let mut sp = BigRational::one();
    for l in 0..=n {
        acc += lagrangian_intersection_prob(n, l)? * &sp;
        sp *= s;
    }
    Ok(acc)
}

/// Closed form `G_n(2) = 2^{n+1} / (2^n + 1)`.
pub fn generating_g2_closed(n: usize) -> BigRational {
    ratio(pow2(n + 1), pow2(n) + 1u32)
}

/// Closed form `G_n(4) = 6 * 4^n / ((2^n + 1)(2^n + 2))`.
pub fn generating_g4_closed(n: usize) -> BigRational {
    ratio(pow2(2 * n) * 6u32, (pow2(n) + 1u32) * (pow2(n) + 2u32))
}

/// `E |S ∩ L|^c` for `S` uniform in the `(n - t)`-dimensional isotropic
/// subspaces and a fixed Lagrangian `L`:
/// `prod_{i=1}^c (2^{i-c} + 2^{-t}) / (2^{i-c} + 2^{-n})`.
pub fn moment_intersection(n: usize, t: usize, c: usize) -> Result<BigRational> {
    if t > n {
        return Err(Error::out_of_range("t", t, "t <= n"));
    }
    let mut acc = BigRational::one();
    for i in 1..=c {
        let e = i as i64 - c as i64;
        acc *= (pow2r(e) + pow2r(-(t as i64))) / (pow2r(e) + pow2r(-(n as i64)));
    }
    Ok(acc)
}

/// `f_t = 1 + 3 / 2^t + 2 / 2^{2t}`.
pub fn f_t(t: usize) -> BigRational {
    let t = t as i64;
    int(1) + int(3) * pow2r(-t) + int(2) * pow2r(-2 * t)
}

/// `(2^m - 1)(2^{m-1} - 1) / ((2^n - 1)(2^{n-1} - 1))`, taken as 0 when the
/// numerator vanishes (`m < 2`), which also covers the `n < 2` cases where
/// the denominator is 0.
fn pair_fraction(n: usize, m: usize) -> BigRational {
    if m < 2 || n < 2 {
        return BigRational::zero();
    }
    ratio(
        (pow2(m) - 1u32) * (pow2(m - 1) - 1u32),
        (pow2(n) - 1u32) * (pow2(n - 1) - 1u32),
    )
}

fn line_fraction(n: usize, m: usize) -> BigRational {
    if m == 0 {
        return BigRational::zero();
    }
    ratio(pow2(m) - 1u32, pow2(n) - 1u32)
}

/// `E[|S ∩ L2|^2 | S ∩ L1 = {0}]` for `S` uniform among `m`-dimensional
/// isotropic subspaces and Lagrangians with `dim(L1 ∩ L2) = kappa`.
pub fn mu(n: usize, kappa: usize, m: usize) -> Result<BigRational> {
    if kappa > n {
        return Err(Error::out_of_range("kappa", kappa, "kappa <= n"));
    }
    if m > n {
        return Err(Error::out_of_range("m", m, "m <= n"));
    }
    let d = kappa as i64 - n as i64;
    let a = int(1) - pow2r(d);
    let b = int(1) - pow2r(d + 1);
    Ok(int(1) + int(3) * &a * line_fraction(n, m) + int(2) * a * b * pair_fraction(n, m))
}

/// Upper bound `1 + 3 * 2^{m-n} + 2^{2m-2n+1}` on [`mu`].
pub fn mu_bound(n: usize, m: usize) -> BigRational {
    let d = m as i64 - n as i64;
    int(1) + int(3) * pow2r(d) + pow2r(2 * d + 1)
}

/// `E |S ∩ K|^2` for `S` uniform among `m`-dimensional subspaces of a
/// Lagrangian `L1` and `K = L1 ∩ L2` of dimension `kappa`.
pub fn gamma(n: usize, m: usize, kappa: usize) -> Result<BigRational> {
    if kappa > n {
        return Err(Error::out_of_range("kappa", kappa, "kappa <= n"));
    }
    if m > n {
        return Err(Error::out_of_range("m", m, "m <= n"));
    }
    if kappa == 0 {
        return Ok(int(1));
    }
    let k1 = int(BigInt::from(pow2(kappa) - 1u32));
    let k2 = int(BigInt::from(pow2(kappa)) - 2);
    Ok(int(1) + int(3) * &k1 * line_fraction(n, m) + k1 * k2 * pair_fraction(n, m))
}

/// Upper bound `1 + 3 * 2^{kappa+m-n} + 4^{kappa+m-n}` on [`gamma`].
pub fn gamma_bound(n: usize, m: usize, kappa: usize) -> BigRational {
    let d = kappa as i64 + m as i64 - n as i64;
    int(1) + int(3) * pow2r(d) + pow2r(2 * d)
}

/// Number of `l`-dimensional subspaces of GF(2)^d meeting a fixed
/// `a`-dimensional subspace in exactly `j` dimensions.
pub fn subspace_meet_count(d: usize, a: usize, l: usize, j: usize) -> Result<BigUint> {
    if a > d || l > d {
        return Err(Error::out_of_range("a, l", format!("{a}, {l}"), "a, l <= d"));
    }
    if j > a.min(l) || l - j > d - a {
        return Ok(BigUint::zero());
    }
    Ok(pow2((a - j) * (l - j)) * gaussian_binomial(a, j)? * gaussian_binomial(d - a, l - j)?)
}

/// Transition matrix of `dim(A_m)` for `A_m = sum_{i<=m} (S ∩ C_i^{-1}(Z))`
/// with `C_i` uniform in Sp(2n) and `dim S = n - t`.
///
/// Each visible part is a uniform subspace of `S` whose dimension is
/// distributed as `dim(S' ∩ Z)` for uniform isotropic `S'`, so `dim(A_m)`
/// is a Markov chain on `0..=n-t`.
pub fn full_block_transitions(n: usize, t: usize) -> Result<Vec<Vec<BigRational>>> {
    if t > n {
        return Err(Error::out_of_range("t", t, "t <= n"));
    }
    let d = n - t;
    let total = num_isotropic(n, d)?;
    let visible: Vec<BigRational> = (0..=d)
        .map(|l| Ok(ratio(iso_lag_intersection_count(n, d, l)?, total.clone())))
        .collect::<Result<_>>()?;
    let mut rows = vec![vec![BigRational::zero(); d + 1]; d + 1];
    for (a, row) in rows.iter_mut().enumerate() {
        for (l, pl) in visible.iter().enumerate() {
            let all = gaussian_binomial(d, l)?;
            for j in 0..=a.min(l) {
                let c = subspace_meet_count(d, a, l, j)?;
                if !c.is_zero() {
                    row[a + l - j] += pl * ratio(c, all.clone());
                }
            }
        }
    }
    Ok(rows)
}

/// Exact expected number of rounds for the full-block ensemble to span
/// an `(n - t)`-dimensional isotropic group.
pub fn full_block_rounds_mean(n: usize, t: usize) -> Result<BigRational> {
    let rows = full_block_transitions(n, t)?;
    let d = n - t;
    let mut e = vec![BigRational::zero(); d + 1];
    for a in (0..d).rev() {
        let mut acc = BigRational::one();
        for b in a + 1..=d {
            acc += &rows[a][b] * &e[b];
        }
        e[a] = acc / (BigRational::one() - &rows[a][a]);
    }
    Ok(e.swap_remove(0))
}

/// `a / b` in floating point for integers far beyond the `f64` range.
pub fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    fn log2(v: &BigUint) -> f64 {
        let bits = v.bits();
        if bits <= 1000 {
            return use_f64(v).log2();
        }
        let shift = bits - 900;
        use_f64(&(v >> shift as usize)).log2() + shift as f64
    }
    fn use_f64(v: &BigUint) -> f64 {
        use num_traits::ToPrimitive;
        v.to_f64().unwrap_or(f64::INFINITY)
    }
    if a.is_zero() {
        return 0.0;
    }
    (log2(a) - log2(b)).exp2()
}

/// [`full_block_transitions`] in floating point, usable at `n` in the
/// hundreds.
pub fn full_block_transitions_f64(n: usize, t: usize) -> Result<Vec<Vec<f64>>> {
    if t > n {
        return Err(Error::out_of_range("t", t, "t <= n"));
    }
    let d = n - t;
    let total = num_isotropic(n, d)?;
    let mut rows = vec![vec![0.0; d + 1]; d + 1];
    for l in 0..=d {
        let pl = ratio_f64(&iso_lag_intersection_count(n, d, l)?, &total);
        if pl < 1e-300 {
            continue;
        }
        let all = gaussian_binomial(d, l)?;
        for (a, row) in rows.iter_mut().enumerate() {
            for j in 0..=a.min(l) {
                let c = subspace_meet_count(d, a, l, j)?;
                if !c.is_zero() {
                    row[a + l - j] += pl * ratio_f64(&c, &all);
                }
            }
        }
    }
    Ok(rows)
}

/// [`full_block_rounds_mean`] in floating point.
pub fn full_block_rounds_mean_f64(n: usize, t: usize) -> Result<f64> {
    let rows = full_block_transitions_f64(n, t)?;
    let d = n - t;
    let mut e = vec![0.0; d + 1];
    for a in (0..d).rev() {
        let acc: f64 = 1.0 + (a + 1..=d).map(|b| rows[a][b] * e[b]).sum::<f64>();
        e[a] = acc / (1.0 - rows[a][a]);
    }
    Ok(e[0])
}

/// `Pr(rounds <= m)` for `m = 0..=max_m` under the full-block ensemble.
pub fn full_block_rounds_cdf(n: usize, t: usize, max_m: usize) -> Result<Vec<f64>> {
    let rows = full_block_transitions_f64(n, t)?;
    let d = n - t;
    let mut dist = vec![0.0; d + 1];
    dist[0] = 1.0;
    let mut out = Vec::with_capacity(max_m + 1);
    for _ in 0..=max_m {
        out.push(dist[d]);
        let mut next = vec![0.0; d + 1];
        for (a, &p) in dist.iter().enumerate() {
            for (b, &q) in rows[a].iter().enumerate() {
                next[b] += p * q;
            }
        }
        dist = next;
    }
    Ok(out)
}

/// Single-qubit GHZ block probability, exactly 2/3.
pub fn ghz_block_prob() -> BigRational {
    BigRational::new(2.into(), 3.into())
}

/// Probability over a uniform `C` in Sp(2k) that `C(x0 + Z_k)` meets `Z_k`,
/// where `x0 = (1^k, 0^k)`.
///
/// Conditioned on `L = C(Z_k)` with `dim(L ∩ Z_k) = r`, the image `C(x0)` is
/// uniform outside `L`, and the event is `C(x0) ∈ L + Z_k`, which has
/// probability `(2^{k-r} - 1) / (2^k - 1)`.
pub fn ghz_block_prob_k(k: usize) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::out_of_range("k", k, "k >= 1"));
    }
    let mut acc = BigRational::zero();
    for r in 0..=k {
        acc += lagrangian_intersection_prob(k, r)? * ratio(pow2(k - r) - 1u32, pow2(k) - 1u32);
    }
    Ok(acc)
}

/// `(2/3)^{n/k}`.
pub fn ghz_escape_bound(n: usize, k: usize) -> Result<BigRational> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::BlockSize { n, k });
    }
    let nb = (n / k) as u32;
    Ok(BigRational::new(BigInt::from(2).pow(nb), BigInt::from(3).pow(nb)))
}

/// Exact per-round probability that `C(x0 + Z)` meets `Z` under the block
/// ensemble: `ghz_block_prob_k(k)^{n/k}`.
pub fn ghz_escape_exact(n: usize, k: usize) -> Result<BigRational> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::BlockSize { n, k });
    }
    let p = ghz_block_prob_k(k)?;
    let mut acc = BigRational::one();
    for _ in 0..n / k {
        acc *= &p;
    }
    Ok(acc)
}

/// Smallest collision coefficient `(2^k + 1)^{-n/k}`.
pub fn min_collision(n: usize, k: usize) -> Result<BigRational> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::BlockSize { n, k });
    }
    Ok(ratio(BigUint::one(), (pow2(k) + 1u32).pow((n / k) as u32)))
}

/// A rational `B` with `2^{-n} e^{-n / (2^k k)} <= B`, obtained from
/// `e^x >= 1 + x + x^2 / 2` at `x = 2^{-k}`.
pub fn min_collision_lower_envelope(n: usize, k: usize) -> Result<BigRational> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::BlockSize { n, k });
    }
    let x = pow2r(-(k as i64));
    let t = int(1) + &x + &x * &x / int(2);
    let mut acc = pow2r(-(n as i64));
    for _ in 0..n / k {
        acc /= &t;
    }
    Ok(acc)
}

/// Number of heavy samples `ceil((2 ln(1/delta) + 2 n ln 2) / eps)`.
pub fn heavy_sample_count(n: usize, eps: f64, delta: f64) -> Result<usize> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::out_of_range("eps", eps, "0 < eps <= 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::out_of_range("delta", delta, "0 < delta < 1"));
    }
    let v = (2.0 * (1.0 / delta).ln() + 2.0 * n as f64 * std::f64::consts::LN_2) / eps;
    Ok(v.ceil() as usize)
}

/// Lossy conversion for Monte-Carlo comparisons.
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
