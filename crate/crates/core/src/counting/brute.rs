//! Exhaustive enumeration of small subspace families, used as the ground
//! truth for the closed forms in the parent module.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::clifford::enumerate_symplectic;
use crate::error::{Error, Result};
use crate::f2::{BitVec, Subspace};

/// Largest qubit count for isotropic enumeration without opting in.
pub const ISOTROPIC_CAP: usize = 3;

/// Largest ambient dimension accepted by [`all_subspaces`].
pub const AMBIENT_CAP: usize = 10;

/// Every `r`-dimensional subspace of GF(2)^d, generated as the set of all
/// reduced echelon matrices (one pivot set, all free entries) and passed
/// through the generic canonicalizer.
pub fn all_subspaces(d: usize, r: usize) -> Result<Vec<Subspace>> {
    if d > AMBIENT_CAP {
        return Err(Error::out_of_range("d", d, "d <= 10"));
    }
    if r > d {
        return Err(Error::out_of_range("r", r, "r <= d"));
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for pivots in combinations(d, r) {
        // free cells: (row, col) with col > pivot of row and col not a pivot
        let cells: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pv = pivots.clone();
                ((p + 1)..d).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        for fill in 0u64..(1u64 << cells.len()) {
            let mut rows: Vec<BitVec> = pivots.iter().map(|&p| BitVec::unit(d, p)).collect();
            for (j, &(i, c)) in cells.iter().enumerate() {
                if fill >> j & 1 == 1 {
                    rows[i].set(c, true);
                }
            }
            let s = Subspace::span_owned(d, rows)?;
            debug_assert_eq!(s.dim(), r);
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn combinations(d: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..d {
            cur.push(c);
            rec(c + 1, d, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, r, &mut Vec::new(), &mut out);
    out
}

/// Every `m`-dimensional isotropic subspace of GF(2)^{2n}, `n <= 3`.
pub fn brute_enumerate_isotropic(n: usize, m: usize) -> Result<Vec<Subspace>> {
    brute_enumerate_isotropic_capped(n, m, ISOTROPIC_CAP)
}

/// As [`brute_enumerate_isotropic`] with an explicit cap; `max_n = 4` opts
/// in to the slower GF(2)^8 scan.
pub fn brute_enumerate_isotropic_capped(n: usize, m: usize, max_n: usize) -> Result<Vec<Subspace>> {
    if n > max_n.min(4) {
        return Err(Error::out_of_range("n", n, "n <= enumeration cap"));
    }
    if m > n {
        return Err(Error::out_of_range("m", m, "m <= n"));
    }
    Ok(all_subspaces(2 * n, m)?
        .into_iter()
        .filter(Subspace::is_isotropic)
        .collect())
}

fn size(s: &Subspace) -> BigInt {
    BigInt::one() << s.dim()
}

/// Tally of `dim(S ∩ Z)` over a family.
fn intersection_histogram(family: &[Subspace], n: usize, max: usize) -> Vec<BigUint> {
    let z = Subspace::z_type(n);
    let mut h = vec![BigUint::zero(); max + 1];
    for s in family {
        h[s.intersect(&z).expect("same ambient").dim()] += 1u32;
    }
    h
}

/// Lagrangian counts by intersection dimension with the Z-type Lagrangian.
pub fn lagrangian_intersection_counts(n: usize) -> Result<Vec<BigUint>> {
    let lags = brute_enumerate_isotropic(n, n)?;
    Ok(intersection_histogram(&lags, n, n))
}

/// Isotropic `m`-subspace counts by intersection dimension with Z.
pub fn iso_lag_counts(n: usize, m: usize) -> Result<Vec<BigUint>> {
    let fam = brute_enumerate_isotropic(n, m)?;
    Ok(intersection_histogram(&fam, n, m))
}

/// Average of `|S ∩ Z|^c` over all `(n - t)`-dimensional isotropic `S`.
pub fn moment(n: usize, t: usize, c: u32) -> Result<BigRational> {
    if t > n {
        return Err(Error::out_of_range("t", t, "t <= n"));
    }
    let fam = brute_enumerate_isotropic(n, n - t)?;
    let z = Subspace::z_type(n);
    let total: BigInt = fam
        .iter()
        .map(|s| size(&s.intersect(&z).expect("same ambient")).pow(c))
        .sum();
    Ok(BigRational::new(total, BigInt::from(fam.len())))
}

/// `<Z_1, ..., Z_kappa, X_{kappa+1}, ..., X_n>`, a Lagrangian meeting Z in
/// dimension `kappa`.
pub fn mixed_lagrangian(n: usize, kappa: usize) -> Subspace {
    let rows: Vec<BitVec> = (0..n)
        .map(|i| {
            if i < kappa {
                BitVec::unit(2 * n, n + i)
            } else {
                BitVec::unit(2 * n, i)
            }
        })
        .collect();
    Subspace::span_owned(2 * n, rows).expect("lengths match")
}

/// Conditional average of `|S ∩ L2|^2` over isotropic `m`-dimensional `S`
/// with `S ∩ Z = {0}`, for `L2` = [`mixed_lagrangian`]`(n, kappa)`.
pub fn mu(n: usize, kappa: usize, m: usize) -> Result<BigRational> {
    if kappa > n {
        return Err(Error::out_of_range("kappa", kappa, "kappa <= n"));
    }
    let fam = brute_enumerate_isotropic(n, m)?;
    let z = Subspace::z_type(n);
    let l2 = mixed_lagrangian(n, kappa);
    let mut total = BigInt::zero();
    let mut count = 0u64;
    for s in &fam {
        if s.intersect(&z)?.is_zero() {
            total += size(&s.intersect(&l2)?).pow(2);
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::Infeasible("no subspace meets the condition".into()));
    }
    Ok(BigRational::new(total, BigInt::from(count)))
}

/// Average of `|S ∩ K|^2` over all `m`-dimensional `S ⊆ Z`, where
/// `K = <Z_1, ..., Z_kappa>`.
pub fn gamma(n: usize, m: usize, kappa: usize) -> Result<BigRational> {
    if kappa > n {
        return Err(Error::out_of_range("kappa", kappa, "kappa <= n"));
    }
    let z = Subspace::z_type(n);
    let k = z.intersect(&mixed_lagrangian(n, kappa))?;
    // Subspaces of Z are subspaces of GF(2)^n lifted into the z-half.
    let fam = all_subspaces(n, m)?;
    let mut total = BigInt::zero();
    for s in &fam {
        let lifted = s.map_rows(2 * n, |r| BitVec::zeros(n).concat(r));
        debug_assert!(lifted.is_subspace_of(&z)?);
        total += size(&lifted.intersect(&k)?).pow(2);
    }
    Ok(BigRational::new(total, BigInt::from(fam.len())))
}

/// Law of `dim(A + S ∩ L)` over all Lagrangians `L`, where `S` spans the
/// first `n - t` Z-type vectors and `A` the first `a` of them.
pub fn full_block_transition_row(n: usize, t: usize, a: usize) -> Result<Vec<BigRational>> {
    if t > n || a > n - t {
        return Err(Error::out_of_range("t, a", format!("{t}, {a}"), "t <= n, a <= n - t"));
    }
    let d = n - t;
    let zs = |m: usize| Subspace::span_owned(2 * n, (0..m).map(|i| BitVec::unit(2 * n, n + i)).collect());
    let (s, a_space) = (zs(d)?, zs(a)?);
    let lags = brute_enumerate_isotropic(n, n)?;
    let mut counts = vec![0u64; d + 1];
    for l in &lags {
        counts[a_space.sum(&s.intersect(l)?)?.dim()] += 1;
    }
    Ok(counts
        .into_iter()
        .map(|c| BigRational::new(c.into(), BigInt::from(lags.len())))
        .collect())
}

/// Fraction of Sp(2k) maps (`k <= 2`) for which `C(x0 + Z_k)` meets `Z_k`.
pub fn ghz_block_prob(k: usize) -> Result<BigRational> {
    let maps = enumerate_symplectic(k)?;
    let x0 = BitVec::ones(k).concat(&BitVec::zeros(k));
    let zk: Vec<BitVec> = (k..2 * k).map(|i| BitVec::unit(2 * k, i)).collect();
    let mut hits = 0u64;
    for m in &maps {
        // Scan the whole coset x0 + Z_k.
        let hit = (0u64..(1 << k)).any(|mask| {
            let mut v = x0.clone();
            for (j, z) in zk.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    v.xor_assign(z);
                }
            }
            m.apply_local(&v).iter_ones().all(|i| i >= k)
        });
        hits += hit as u64;
    }
    Ok(BigRational::new(hits.into(), BigInt::from(maps.len())))
}

/// Fraction of Sp(2k) maps sending a fixed non-identity `p` into `Z_k`.
pub fn collision_fraction(k: usize, p: &BitVec) -> Result<BigRational> {
    let maps = enumerate_symplectic(k)?;
    let hits = maps
        .iter()
        .filter(|m| m.apply_local(p).iter_ones().all(|i| i >= k))
        .count();
    Ok(BigRational::new(hits.into(), BigInt::from(maps.len())))
}
