//! Computational difference sampling.
//!
//! Measuring two copies of a state in the computational basis and XOR-ing
//! the outcomes yields a sample `a` from
//! `r(a) = 2^{-n} sum_b (-1)^{a.b} tr(rho Z^b)^2`. A [`ZSpectrum`] stores the
//! weights `w_b = tr(rho Z^b)^2`; X-side vectors are `n`-bit [`BitVec`]s.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng as _, RngCore};

use crate::error::{check_dims, Error, Result};
use crate::f2::{BitVec, PauliVec, Subspace};

/// Largest `n` for which construction checks that `r` is nonnegative.
pub const EXACT_CAP: usize = 12;
/// Largest `n` for a dense probability table.
pub const DENSE_CAP: usize = 20;
/// Largest number of nonzero weights for lazy evaluation above [`DENSE_CAP`].
pub const SPARSE_CAP: usize = 1 << 16;

/// Sparse map `b -> tr(rho Z^b)^2`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSpectrum {
    n: usize,
    entries: BTreeMap<BitVec, BigRational>,
}

impl ZSpectrum {
    /// Validates `w_0 = 1`, `0 <= w_b <= 1`, and for `n <= EXACT_CAP` that
    /// the induced difference distribution is nonnegative.
    pub fn new(n: usize, entries: BTreeMap<BitVec, BigRational>) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for (b, w) in entries {
            check_dims(n, b.len())?;
            if w.is_negative() || w > BigRational::one() {
                return Err(Error::InvalidSpectrum(format!("weight {w} at {b} outside [0, 1]")));
            }
            if !w.is_zero() {
                clean.insert(b, w);
            }
        }
        if clean.get(&BitVec::zeros(n)) != Some(&BigRational::one()) {
            return Err(Error::InvalidSpectrum("identity weight must be 1".into()));
        }
        let s = Self { n, entries: clean };
        if n <= EXACT_CAP {
            let d = s.dense_table()?;
            if let Some(i) = d.numer.iter().position(|&v| v < 0) {
                return Err(Error::InvalidSpectrum(format!(
                    "difference probability at {} is negative",
                    BitVec::from_u64(n, i as u64)
                )));
            }
        }
        Ok(s)
    }

    /// The maximally mixed state: only `w_0 = 1`.
    pub fn maximally_mixed(n: usize) -> Self {
        let mut e = BTreeMap::new();
        e.insert(BitVec::zeros(n), BigRational::one());
        Self { n, entries: e }
    }

    /// Weights 1 on the z-parts of `weyl ∩ Z` and 0 elsewhere.
    pub fn from_stabilizer(weyl: &Subspace) -> Result<Self> {
        let n = weyl.num_qubits();
        let wz = z_parts(weyl)?;
        let entries = wz.enumerate()?.map(|b| (b, BigRational::one())).collect();
        Ok(Self { n, entries })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<BitVec, BigRational> {
        &self.entries
    }

    pub fn weight(&self, b: &BitVec) -> BigRational {
        self.entries.get(b).cloned().unwrap_or_else(BigRational::zero)
    }

    /// True when every weight is 0 or 1.
    pub fn is_stabilizer_type(&self) -> bool {
        self.entries.values().all(BigRational::is_one)
    }

    /// Exact `r(a)` by direct summation over the nonzero weights.
    pub fn difference_prob(&self, a: &BitVec) -> BigRational {
        let mut acc = BigRational::zero();
        for (b, w) in &self.entries {
            if a.dot(b) {
                acc -= w;
            } else {
                acc += w;
            }
        }
        acc / BigRational::from_integer(BigInt::one() << self.n)
    }

    fn dense_table(&self) -> Result<DenseTable> {
        let n = self.n;
        if n > DENSE_CAP {
            return Err(Error::out_of_range("n", n, "n <= 20 for a dense table"));
        }
        let lcm = self.entries.values().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let size = 1usize << n;
        let mut numer = vec![0i128; size];
        for (b, w) in &self.entries {
            let v = (w.numer() * (&lcm / w.denom()))
                .to_i128()
                .filter(|v| v.unsigned_abs() < (1u128 << (100 - n)))
                .ok_or_else(|| Error::InvalidSpectrum("weights need too large a common denominator".into()))?;
            numer[b.to_u64() as usize] = v;
        }
        fwht_i128(&mut numer);
        Ok(DenseTable {
            numer,
            denom: lcm * (BigInt::one() << n),
        })
    }

    /// CSV fixture with columns `b_bits,weight`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("b_bits,weight\n");
        for (b, w) in &self.entries {
            let _ = writeln!(s, "{b},{w}");
        }
        s
    }

    /// Parses [`to_csv`](Self::to_csv) output. Weights may be decimals
    /// (`0.25`) or fractions (`1/4`); both are read exactly.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut n = None;
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("b_bits")) {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let (b, w) = line.split_once(',').ok_or_else(|| err("expected two columns".into()))?;
            let b = BitVec::parse(b).map_err(|_| err(format!("bad bit string {b:?}")))?;
            let w = parse_exact(w.trim()).ok_or_else(|| err(format!("bad weight {w:?}")))?;
            match n {
                None => n = Some(b.len()),
                Some(n) if n != b.len() => return Err(err("inconsistent bit-string length".into())),
                _ => {}
            }
            entries.insert(b, w);
        }
        let n = n.ok_or(Error::Parse {
            line: 1,
            msg: "no rows".into(),
        })?;
        Self::new(n, entries)
    }
}

/// Exact parse of `p/q`, an integer, or a finite decimal.
pub fn parse_exact(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p.trim().parse().ok()?, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac}0").parse().ok()?;
    let scale = BigInt::from(10).pow(frac.len() as u32 + 1);
    let v = BigRational::new(digits, scale);
    Some(if neg { -v } else { v })
}

/// In-place unnormalized Walsh-Hadamard transform.
fn fwht_i128(a: &mut [i128]) {
    let mut h = 1;
    while h < a.len() {
        for i in (0..a.len()).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (a[j], a[j + h]);
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

struct DenseTable {
    numer: Vec<i128>,
    denom: BigInt,
}

/// The difference distribution `r` of a spectrum.
pub enum DifferenceDistribution {
    /// `r(a) = numer[a] / denom` with `a` read as an integer, bit 0 lowest.
    Dense { n: usize, numer: Vec<i128>, denom: BigInt },
    /// Evaluated on demand from the sparse spectrum.
    Lazy(ZSpectrum),
}

/// Builds the exact difference distribution: a dense table for
/// `n <= DENSE_CAP`, lazy evaluation for sparse spectra beyond that.
pub fn r_from_spectrum(spec: &ZSpectrum) -> Result<DifferenceDistribution> {
    if spec.n <= DENSE_CAP {
        let t = spec.dense_table()?;
        Ok(DifferenceDistribution::Dense {
            n: spec.n,
            numer: t.numer,
            denom: t.denom,
        })
    } else if spec.entries.len() <= SPARSE_CAP {
        Ok(DifferenceDistribution::Lazy(spec.clone()))
    } else {
        Err(Error::out_of_range(
            "spectrum entries",
            spec.entries.len(),
            "<= 65536 above n = 20",
        ))
    }
}

impl DifferenceDistribution {
    pub fn n(&self) -> usize {
        match self {
            Self::Dense { n, .. } => *n,
            Self::Lazy(s) => s.n,
        }
    }

    pub fn prob(&self, a: &BitVec) -> BigRational {
        match self {
            Self::Dense { numer, denom, .. } => BigRational::new(numer[a.to_u64() as usize].into(), denom.clone()),
            Self::Lazy(s) => s.difference_prob(a),
        }
    }

    /// `sum_a r(a)`; dense tables only.
    pub fn total(&self) -> Option<BigRational> {
        match self {
            Self::Dense { numer, denom, .. } => {
                let s: i128 = numer.iter().sum();
                Some(BigRational::new(s.into(), denom.clone()))
            }
            Self::Lazy(_) => None,
        }
    }

    /// Support of a dense table.
    pub fn support(&self) -> Option<Vec<BitVec>> {
        match self {
            Self::Dense { n, numer, .. } => Some(
                numer
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, _)| BitVec::from_u64(*n, i as u64))
                    .collect(),
            ),
            Self::Lazy(_) => None,
        }
    }

    /// Draws one sample by inversion; dense tables only.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Option<BitVec> {
        let Self::Dense { n, numer, denom } = self else {
            return None;
        };
        let total = denom.to_f64()?;
        let mut u = rng.gen::<f64>() * total;
        let mut last = 0;
        for (i, &v) in numer.iter().enumerate() {
            if v > 0 {
                last = i;
                u -= v as f64;
                if u < 0.0 {
                    return Some(BitVec::from_u64(*n, i as u64));
                }
            }
        }
        Some(BitVec::from_u64(*n, last as u64))
    }
}

/// `{z : (0, z) ∈ weyl}` as a subspace of GF(2)^n.
pub fn z_parts(weyl: &Subspace) -> Result<Subspace> {
    if !weyl.ambient().is_multiple_of(2) {
        return Err(Error::OddAmbient(weyl.ambient()));
    }
    let n = weyl.num_qubits();
    let inter = weyl.intersect(&Subspace::z_type(n))?;
    Ok(inter.map_rows(n, |r| r.slice(n, n)))
}

/// `H = (weyl ∩ Z)^perp ∩ X`, returned as a subspace of GF(2)^n: the
/// x-vectors orthogonal to every Z-type element of `weyl`.
pub fn support_subspace(weyl: &Subspace) -> Result<Subspace> {
    if !weyl.is_isotropic() {
        return Err(Error::NotIsotropic);
    }
    Ok(z_parts(weyl)?.dot_complement())
}

/// `(x, 0)`.
pub fn embed_x(x: &BitVec) -> PauliVec {
    PauliVec::from_xz(x, &BitVec::zeros(x.len())).expect("equal halves")
}

/// `H_X -> H_X × 0^n` inside GF(2)^{2n}.
pub fn embed_x_subspace(h: &Subspace) -> Subspace {
    let n = h.ambient();
    h.map_rows(2 * n, |r| r.concat(&BitVec::zeros(n)))
}

/// Uniform sampler on the support of a stabilizer-type state.
#[derive(Clone, Debug)]
pub struct DifferenceSampler {
    support: Subspace,
}

impl DifferenceSampler {
    pub fn new(weyl: &Subspace) -> Result<Self> {
        Ok(Self {
            support: support_subspace(weyl)?,
        })
    }

    pub fn support(&self) -> &Subspace {
        &self.support
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> BitVec {
        self.support.random_element(rng)
    }
}

/// One difference sample of a stabilizer-type state with group `weyl`.
pub fn sample_difference<R: RngCore + ?Sized>(weyl: &Subspace, rng: &mut R) -> Result<BitVec> {
    Ok(DifferenceSampler::new(weyl)?.sample(rng))
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=0.5).contains(&p) {
        Ok(())
    } else {
        Err(Error::out_of_range("p_err", p, "0 <= p_err <= 1/2"))
    }
}

/// Flips each bit independently with probability `p_err`.
///
/// Gaps between flips are drawn from the geometric distribution, so the
/// cost is proportional to the number of flips rather than to `n`.
pub fn apply_bitflip_noise<R: RngCore + ?Sized>(x: &BitVec, p_err: f64, rng: &mut R) -> Result<BitVec> {
    check_p(p_err)?;
    let mut out = x.clone();
    if p_err == 0.0 {
        return Ok(out);
    }
    if p_err == 0.5 {
        out.xor_assign(&BitVec::random(x.len(), rng));
        return Ok(out);
    }
    let log_q = (1.0 - p_err).ln();
    let mut i = 0usize;
    loop {
        let u: f64 = rng.gen();
        // failures before the next success of a Bernoulli(p) sequence
        let skip = ((1.0 - u).ln() / log_q).floor();
        if !skip.is_finite() || skip >= (x.len() - i) as f64 {
            break;
        }
        i += skip as usize;
        out.flip(i);
        i += 1;
        if i >= x.len() {
            break;
        }
    }
    Ok(out)
}

/// Per-bit uniforms shared across noise levels, so that the flip set at a
/// smaller `p_err` is contained in the flip set at a larger one.
#[derive(Clone, Debug)]
pub struct CoupledNoise {
    uniforms: Vec<u32>,
}

impl CoupledNoise {
    pub fn draw<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            uniforms: (0..n).map(|_| rng.next_u32()).collect(),
        }
    }

    /// Applies the flips for level `p_err` to `x`.
    pub fn apply(&self, x: &BitVec, p_err: f64) -> Result<BitVec> {
        check_p(p_err)?;
        check_dims(self.uniforms.len(), x.len())?;
        let cut = (p_err * 4_294_967_296.0) as u64;
        let mut out = x.clone();
        for (i, &u) in self.uniforms.iter().enumerate() {
            if (u as u64) < cut {
                out.flip(i);
            }
        }
        Ok(out)
    }
}

/// `r(H) = |H| 2^{-n} sum_{b ∈ H^dot} w_b` for an X-side subspace `H`.
pub fn cds_mass(h: &Subspace, spec: &ZSpectrum) -> Result<BigRational> {
    check_dims(spec.n, h.ambient())?;
    let perp = h.dot_complement();
    let mut acc = BigRational::zero();
    for (b, w) in &spec.entries {
        if perp.contains(b)? {
            acc += w;
        }
    }
    Ok(acc * BigRational::new(BigInt::one() << h.dim(), BigInt::one() << spec.n))
}

/// `r(H)` by summing the distribution over every element of `H`.
pub fn cds_mass_direct(h: &Subspace, dist: &DifferenceDistribution) -> Result<BigRational> {
    check_dims(dist.n(), h.ambient())?;
    let mut acc = BigRational::zero();
    for a in h.enumerate()? {
        acc += dist.prob(&a);
    }
    Ok(acc)
}
