//! Block-Clifford ensembles as block-diagonal symplectic maps.
//!
//! Only the unsigned action of a Clifford on Pauli labels matters here, and
//! a uniform Clifford induces a uniform element of Sp(2k, GF(2)), so the
//! samplers draw symplectic matrices directly.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::RngCore;

use crate::error::{check_dims, Error, Result};
use crate::f2::words::{self, with_width};
use crate::f2::{form_bits, BitVec, Echelon, PauliVec, Subspace};

/// Index swap between the x and z halves of a 2k-dimensional space.
#[inline]
fn sigma(i: usize, k: usize) -> usize {
    if i < k {
        i + k
    } else {
        i - k
    }
}

/// A symplectic map on `2k` coordinates, stored by columns:
/// `cols[j]` is the image of the basis vector `e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymplecticMap {
    k: usize,
    cols: Vec<BitVec>,
}

impl SymplecticMap {
    /// Builds a map from its columns, checking that the form is preserved
    /// on every basis pair.
    pub fn from_columns(k: usize, cols: Vec<BitVec>) -> Result<Self> {
        check_dims(2 * k, cols.len())?;
        for c in &cols {
            check_dims(2 * k, c.len())?;
        }
        let m = Self { k, cols };
        if !m.preserves_form() {
            return Err(Error::NotSymplectic);
        }
        Ok(m)
    }

    pub fn identity(k: usize) -> Self {
        Self {
            k,
            cols: (0..2 * k).map(|i| BitVec::unit(2 * k, i)).collect(),
        }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.cols
    }

    /// Entry `(row, col)` of the matrix.
    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.cols[col].get(row)
    }

    /// `[M e_i, M e_j] == [e_i, e_j]` for all `i < j`.
    pub fn preserves_form(&self) -> bool {
        let k = self.k;
        for i in 0..2 * k {
            for j in (i + 1)..2 * k {
                let want = j == i + k && i < k;
                if form_bits(&self.cols[i], &self.cols[j], k) != want {
                    return false;
                }
            }
        }
        true
    }

    /// `M v` for a local 2k-bit vector.
    pub fn apply_local(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(2 * self.k);
        for j in v.iter_ones() {
            out.xor_assign(&self.cols[j]);
        }
        out
    }

    /// `M^{-1} v`, using `M^{-1} = J M^T J`.
    pub fn inverse_apply_local(&self, v: &BitVec) -> BitVec {
        let k = self.k;
        let jv = crate::f2::swap_halves(v, k);
        BitVec::from_fn(2 * k, |i| self.cols[sigma(i, k)].dot(&jv))
    }

    pub fn inverse(&self) -> Self {
        let k = self.k;
        let cols = (0..2 * k)
            .map(|l| BitVec::from_fn(2 * k, |i| self.cols[sigma(i, k)].get(sigma(l, k))))
            .collect();
        Self { k, cols }
    }

    /// Composition `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_dims(self.k, other.k)?;
        Ok(Self {
            k: self.k,
            cols: other.cols.iter().map(|c| self.apply_local(c)).collect(),
        })
    }

    /// Row-major text: header `symplectic k=K`, then `2k` rows.
    pub fn to_text(&self) -> String {
        let d = 2 * self.k;
        let mut s = format!("symplectic k={}\n", self.k);
        for r in 0..d {
            for c in 0..d {
                s.push(if self.entry(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().unwrap_or("");
        let k: usize = header
            .strip_prefix("symplectic k=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("bad header {header:?}"),
            })?;
        let rows: Vec<BitVec> = lines.map(BitVec::parse).collect::<Result<_>>()?;
        check_dims(2 * k, rows.len())?;
        let cols = (0..2 * k).map(|c| BitVec::from_fn(2 * k, |r| rows[r].get(c))).collect();
        Self::from_columns(k, cols)
    }
}

/// Uniform sample from Sp(2k, GF(2)).
///
/// Images of the pairs `(X_i, Z_i)` are chosen one pair at a time: `e` is
/// uniform over the nonzero vectors of the current symplectic subspace `W`,
/// `f` is uniform over `{f in W : [e, f] = 1}`, and `W` shrinks to the
/// complement of `<e, f>` inside `W`. Each symplectic matrix arises from
/// exactly one sequence of choices, so the output is exactly uniform.
pub fn sample_symplectic<R: RngCore + ?Sized>(k: usize, rng: &mut R) -> Result<SymplecticMap> {
    if k == 0 {
        return Err(Error::out_of_range("k", k, "k >= 1"));
    }
    if k == 1 {
        return Ok(sample_sp2(rng));
    }
    let d = 2 * k;
    Ok(with_width!(d.div_ceil(64), sample_fixed, (k, rng), sample_dyn(k, rng)))
}

/// [`sample_symplectic`] for `2k <= 64 W`.
fn sample_fixed<const W: usize>(k: usize, rng: &mut (impl RngCore + ?Sized)) -> SymplecticMap {
    let d = 2 * k;
    let mut w: Vec<[u64; W]> = (0..d).map(|i| words::load(&BitVec::unit(d, i))).collect();
    let mut cols = vec![BitVec::zeros(d); d];
    for i in 0..k {
        let r = w.len();
        let ce = loop {
            let c = words::random_words::<W, _>(r, rng);
            if !words::is_zero(&c) {
                break c;
            }
        };
        let e = words::combine(&w, &ce);
        let se = swapped_fixed(&e, k);
        let g = (0..r).find(|&j| words::dot(&w[j], &se)).expect("W is non-degenerate");
        let mut cf = words::random_words::<W, _>(r, rng);
        let mut f = words::combine(&w, &cf);
        if !words::dot(&f, &se) {
            words::xor_into(&mut f, &w[g]);
            words::flip(&mut cf, g);
        }
        // Swap e in for a basis vector it uses, then f for one it still
        // needs; the remaining vectors, projected along <e, f> by
        // w -> w + [w, f] e + [w, e] f, form a basis of the complement.
        let a = words::lowest(&ce).expect("nonzero");
        if words::get(&cf, a) {
            words::xor_into(&mut cf, &ce);
        }
        let b = words::lowest(&cf).expect("f is independent of e");
        let sf = swapped_fixed(&f, k);
        let mut keep = 0;
        for j in 0..r {
            if j == a || j == b {
                continue;
            }
            let mut row = w[j];
            let (pf, pe) = (words::dot(&row, &sf), words::dot(&row, &se));
            words::xor_if(&mut row, &e, pf);
            words::xor_if(&mut row, &f, pe);
            w[keep] = row;
            keep += 1;
        }
        w.truncate(keep);
        cols[i] = BitVec::from_words(d, &e);
        cols[k + i] = BitVec::from_words(d, &f);
    }
    SymplecticMap { k, cols }
}

fn swapped_fixed<const W: usize>(v: &[u64; W], k: usize) -> [u64; W] {
    words::load(&crate::f2::swap_halves(&BitVec::from_words(2 * k, v), k))
}

/// Slice-based [`sample_symplectic`] for blocks too wide for [`sample_fixed`].
fn sample_dyn<R: RngCore + ?Sized>(k: usize, rng: &mut R) -> SymplecticMap {
    let d = 2 * k;
    let sw = d.div_ceil(64);
    let mut w = vec![0u64; d * sw];
    for i in 0..d {
        w[i * sw + i / 64] |= 1 << (i % 64);
    }
    let mut r = d;
    let mut cols = vec![BitVec::zeros(d); d];
    let mut e = vec![0u64; sw];
    let mut f = vec![0u64; sw];
    for i in 0..k {
        let ce = loop {
            let c = BitVec::random(r, rng);
            if !c.is_zero() {
                break c;
            }
        };
        combine_flat(&w, sw, &ce, &mut e);
        let se = swapped(&e, k);
        let g = (0..r)
            .find(|&j| dot_words(&w[j * sw..(j + 1) * sw], &se))
            .expect("W is non-degenerate");
        let mut cf = BitVec::random(r, rng);
        combine_flat(&w, sw, &cf, &mut f);
        if !dot_words(&f, &se) {
            for (x, y) in f.iter_mut().zip(&w[g * sw..(g + 1) * sw]) {
                *x ^= y;
            }
            cf.flip(g);
        }
        let a = ce.lowest_one().expect("nonzero");
        if cf.get(a) {
            cf.xor_assign(&ce);
        }
        let b = cf.lowest_one().expect("f is independent of e");
        let sf = swapped(&f, k);
        let mut keep = 0;
        for j in 0..r {
            if j == a || j == b {
                continue;
            }
            let row = j * sw..(j + 1) * sw;
            let (pf, pe) = (dot_words(&w[row.clone()], &sf), dot_words(&w[row.clone()], &se));
            w.copy_within(row, keep * sw);
            let dst = &mut w[keep * sw..(keep + 1) * sw];
            if pf {
                dst.iter_mut().zip(&e).for_each(|(x, y)| *x ^= y);
            }
            if pe {
                dst.iter_mut().zip(&f).for_each(|(x, y)| *x ^= y);
            }
            keep += 1;
        }
        r = keep;
        cols[i] = BitVec::from_words(d, &e);
        cols[k + i] = BitVec::from_words(d, &f);
    }
    SymplecticMap { k, cols }
}

fn x_parts_fixed<const W: usize>(imgs: &[BitVec], vs: &[BitVec], n: usize) -> Vec<BitVec> {
    let rows: Vec<[u64; W]> = imgs.iter().map(words::load).collect();
    vs.iter()
        .map(|v| BitVec::from_words(n, &words::combine(&rows, v.words())))
        .collect()
}

/// Uniform element of Sp(2) = SL(2, GF(2)): any two distinct nonzero
/// vectors of GF(2)^2 pair to 1, giving 3 * 2 equally likely choices.
fn sample_sp2<R: RngCore + ?Sized>(rng: &mut R) -> SymplecticMap {
    let idx = loop {
        let v = rng.next_u32() & 7;
        if v < 6 {
            break v as u64;
        }
    };
    let e = idx / 2 + 1;
    let others: Vec<u64> = (1..4).filter(|&v| v != e).collect();
    let f = others[(idx % 2) as usize];
    SymplecticMap {
        k: 1,
        cols: vec![BitVec::from_u64(2, e), BitVec::from_u64(2, f)],
    }
}

fn dot_words(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).fold(0u64, |acc, (x, y)| acc ^ (x & y)).count_ones() & 1 == 1
}

/// Words of `J v`, so that `[u, v] = u . (J v)`.
fn swapped(v: &[u64], k: usize) -> Vec<u64> {
    let bits = BitVec::from_words(2 * k, v);
    crate::f2::swap_halves(&bits, k).words().to_vec()
}

fn combine_flat(w: &[u64], sw: usize, coeffs: &BitVec, out: &mut [u64]) {
    out.fill(0);
    for j in coeffs.iter_ones() {
        for (x, y) in out.iter_mut().zip(&w[j * sw..(j + 1) * sw]) {
            *x ^= y;
        }
    }
}

fn combine(basis: &[BitVec], coeffs: &BitVec, d: usize) -> BitVec {
    let mut v = BitVec::zeros(d);
    for j in coeffs.iter_ones() {
        v.xor_assign(&basis[j]);
    }
    v
}

fn random_combination<R: RngCore + ?Sized>(basis: &[BitVec], d: usize, rng: &mut R) -> BitVec {
    combine(basis, &BitVec::random(basis.len(), rng), d)
}

/// Every element of Sp(2k, GF(2)) for `k <= 2`, by filtering all matrices.
pub fn enumerate_symplectic(k: usize) -> Result<Vec<SymplecticMap>> {
    if !(1..=2).contains(&k) {
        return Err(Error::out_of_range("k", k, "1 <= k <= 2"));
    }
    let d = 2 * k;
    let total = 1u64 << (d * d);
    let mut out = Vec::new();
    for code in 0..total {
        let cols: Vec<BitVec> = (0..d).map(|c| BitVec::from_u64(d, code >> (c * d))).collect();
        let m = SymplecticMap { k, cols };
        if m.preserves_form() {
            out.push(m);
        }
    }
    Ok(out)
}

/// A block-diagonal symplectic map on `n` qubits made of `n / k` blocks,
/// block `b` acting on qubits `b*k .. (b+1)*k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockSymplectic {
    n: usize,
    k: usize,
    blocks: Vec<SymplecticMap>,
}

impl BlockSymplectic {
    pub fn new(n: usize, k: usize, blocks: Vec<SymplecticMap>) -> Result<Self> {
        check_block(n, k)?;
        check_dims(n / k, blocks.len())?;
        for b in &blocks {
            check_dims(k, b.k())?;
        }
        Ok(Self { n, k, blocks })
    }

    pub fn identity(n: usize, k: usize) -> Result<Self> {
        check_block(n, k)?;
        Ok(Self {
            n,
            k,
            blocks: vec![SymplecticMap::identity(k); n / k],
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[SymplecticMap] {
        &self.blocks
    }

    fn local(&self, v: &BitVec, b: usize) -> BitVec {
        let (n, k) = (self.n, self.k);
        v.slice(b * k, k).concat(&v.slice(n + b * k, k))
    }

    fn map_bits(&self, v: &BitVec, inverse: bool) -> BitVec {
        let (n, k) = (self.n, self.k);
        let mut out = BitVec::zeros(2 * n);
        if k == 1 {
            for (b, m) in self.blocks.iter().enumerate() {
                let (x, z) = (v.get(b), v.get(n + b));
                if !(x || z) {
                    continue;
                }
                // 2x2 case: the inverse of [[a, b], [c, d]] is [[d, b], [c, a]].
                let (c0, c1) = (&m.cols[0], &m.cols[1]);
                let (a, bb, c, d) = (c0.get(0), c1.get(0), c0.get(1), c1.get(1));
                let (a, d) = if inverse { (d, a) } else { (a, d) };
                out.set(b, (a & x) ^ (bb & z));
                out.set(n + b, (c & x) ^ (d & z));
            }
            return out;
        }
        for (b, m) in self.blocks.iter().enumerate() {
            let loc = self.local(v, b);
            if loc.is_zero() {
                continue;
            }
            let img = if inverse {
                m.inverse_apply_local(&loc)
            } else {
                m.apply_local(&loc)
            };
            for j in img.iter_ones() {
                if j < k {
                    out.set(b * k + j, true);
                } else {
                    out.set(n + b * k + j - k, true);
                }
            }
        }
        out
    }

    /// `x(C e_c)` for each coordinate `c` of GF(2)^{2n}.
    pub fn x_images(&self) -> Vec<BitVec> {
        let (n, k) = (self.n, self.k);
        let mut imgs = vec![BitVec::zeros(n); 2 * n];
        for (b, m) in self.blocks.iter().enumerate() {
            for (j, col) in m.cols.iter().enumerate() {
                let c = if j < k { b * k + j } else { n + b * k + j - k };
                imgs[c].or_shifted(&col.slice(0, k), b * k);
            }
        }
        imgs
    }

    /// `x(C v)` for every `v`; cheaper than full images when only the
    /// x-halves are needed.
    pub fn x_parts(&self, vs: &[BitVec]) -> Vec<BitVec> {
        let n = self.n;
        for v in vs {
            assert_eq!(v.len(), 2 * n, "vector length must be 2n");
        }
        let imgs = self.x_images();
        with_width!(n.div_ceil(64), x_parts_fixed, (&imgs, vs, n), {
            vs.iter()
                .map(|v| {
                    let mut acc = BitVec::zeros(n);
                    for c in v.iter_ones() {
                        acc.xor_assign(&imgs[c]);
                    }
                    acc
                })
                .collect()
        })
    }

    /// Whether `C(base + sub)` meets the Z-type group, i.e. some element of
    /// the coset is measured deterministically.
    pub fn coset_meets_z(&self, base: &BitVec, sub: &Subspace) -> Result<bool> {
        check_dims(2 * self.n, base.len())?;
        check_dims(2 * self.n, sub.ambient())?;
        let mut vs = Vec::with_capacity(sub.dim() + 1);
        vs.push(base.clone());
        vs.extend(sub.basis().iter().cloned());
        let parts = self.x_parts(&vs);
        Subspace::span(self.n, &parts[1..])?.contains(&parts[0])
    }

    /// `C(P)`, the image of a Pauli label.
    pub fn apply(&self, p: &PauliVec) -> Result<PauliVec> {
        check_dims(self.n, p.num_qubits())?;
        Ok(PauliVec::from_bits(self.map_bits(p.bits(), false)).expect("even"))
    }

    /// `C^{-1}(P)`.
    pub fn inverse_apply(&self, p: &PauliVec) -> Result<PauliVec> {
        check_dims(self.n, p.num_qubits())?;
        Ok(PauliVec::from_bits(self.map_bits(p.bits(), true)).expect("even"))
    }

    /// Raw-bit image; the input must have length `2n`.
    pub fn apply_bits(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), 2 * self.n);
        self.map_bits(v, false)
    }

    pub fn inverse_apply_bits(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), 2 * self.n);
        self.map_bits(v, true)
    }

    pub fn apply_subspace(&self, a: &Subspace) -> Result<Subspace> {
        check_dims(2 * self.n, a.ambient())?;
        Ok(a.map_rows(2 * self.n, |r| self.map_bits(r, false)))
    }

    pub fn inverse_apply_subspace(&self, a: &Subspace) -> Result<Subspace> {
        check_dims(2 * self.n, a.ambient())?;
        Ok(a.map_rows(2 * self.n, |r| self.map_bits(r, true)))
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            k: self.k,
            blocks: self.blocks.iter().map(SymplecticMap::inverse).collect(),
        }
    }
}

fn check_block(n: usize, k: usize) -> Result<()> {
    if k == 0 || !n.is_multiple_of(k) {
        Err(Error::BlockSize { n, k })
    } else {
        Ok(())
    }
}

/// `n / k` independent uniform blocks.
pub fn sample_block_clifford<R: RngCore + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<BlockSymplectic> {
    check_block(n, k)?;
    let blocks = (0..n / k)
        .map(|_| sample_symplectic(k, rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockSymplectic { n, k, blocks })
}

/// Uniform isotropic subspace of dimension `m` in GF(2)^{2n}.
///
/// Builds an ordered basis with `v_{i+1}` uniform in `U_i^perp \ U_i`; all
/// ordered bases are equally likely and each subspace has the same number of
/// them, so the span is uniform.
pub fn sample_isotropic<R: RngCore + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Subspace> {
    if m > n {
        return Err(Error::out_of_range("m", m, "m <= n"));
    }
    let d = 2 * n;
    let mut u = Echelon::new(d);
    // Basis of U^perp, kept up to date as U grows.
    let mut perp: Vec<BitVec> = (0..d).map(|i| BitVec::unit(d, i)).collect();
    for _ in 0..m {
        let v = loop {
            let v = random_combination(&perp, d, rng);
            if !u.contains(&v) {
                break v;
            }
        };
        // U^perp ∩ v^perp: eliminate one basis vector that pairs with v.
        let pos = perp
            .iter()
            .position(|b| form_bits(b, &v, n))
            .expect("v is outside U so some perp vector pairs with it");
        let pivot = perp.swap_remove(pos);
        for b in perp.iter_mut() {
            if form_bits(b, &v, n) {
                b.xor_assign(&pivot);
            }
        }
        u.insert(v);
    }
    Ok(u.into_subspace())
}

/// `m_P = (2^k + 1)^{-w}` where `w` is the number of non-identity blocks.
pub fn collision_coefficient(p: &PauliVec, n: usize, k: usize) -> Result<BigRational> {
    check_block(n, k)?;
    check_dims(n, p.num_qubits())?;
    let w = p.block_weight(k) as u32;
    let base = (BigUint::one() << k) + 1u32;
    Ok(BigRational::new(BigUint::one().into(), base.pow(w).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use proptest::prelude::*;
    use std::collections::HashMap;

    #[test]
    fn coset_meets_z_matches_enumeration() {
        let mut rng = Rng::seed_from_u64(41);
        let n = 4;
        let z = Subspace::z_type(n);
        for k in [1, 2] {
            for _ in 0..50 {
                let sub = sample_isotropic(n, 2, &mut rng).unwrap();
                let base = BitVec::random(2 * n, &mut rng);
                let c = sample_block_clifford(n, k, &mut rng).unwrap();
                let want = sub.enumerate().unwrap().any(|u| {
                    let mut v = base.clone();
                    v.xor_assign(&u);
                    z.contains(&c.apply_bits(&v)).unwrap()
                });
                assert_eq!(c.coset_meets_z(&base, &sub).unwrap(), want);
            }
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_symplectic(1).unwrap().len(), 6);
        assert_eq!(enumerate_symplectic(2).unwrap().len(), 720);
        assert!(enumerate_symplectic(3).is_err());
    }

    #[test]
    fn rejects_non_symplectic() {
        let cols = vec![BitVec::parse("10").unwrap(), BitVec::parse("10").unwrap()];
        assert_eq!(SymplecticMap::from_columns(1, cols), Err(Error::NotSymplectic));
    }

    #[test]
    fn hadamard_swaps_x_and_z() {
        let h =
            SymplecticMap::from_columns(1, vec![BitVec::parse("01").unwrap(), BitVec::parse("10").unwrap()]).unwrap();
        let c = BlockSymplectic::new(1, 1, vec![h]).unwrap();
        let x = PauliVec::parse("1 0").unwrap();
        assert_eq!(c.apply(&x).unwrap(), PauliVec::parse("0 1").unwrap());
    }

    #[test]
    fn k_one_frequencies() {
        let mut rng = Rng::seed_from_u64(11);
        let draws = 60_000;
        let mut counts: HashMap<SymplecticMap, usize> = HashMap::new();
        for _ in 0..draws {
            *counts.entry(sample_symplectic(1, &mut rng).unwrap()).or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        let p = 1.0 / 6.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for &c in counts.values() {
            assert!((c as f64 - draws as f64 * p).abs() < 3.5 * sigma, "count {c}");
        }
    }

    #[test]
    fn sampler_rejects_zero() {
        let mut rng = Rng::seed_from_u64(1);
        assert!(sample_symplectic(0, &mut rng).is_err());
        assert_eq!(
            sample_block_clifford(5, 2, &mut rng),
            Err(Error::BlockSize { n: 5, k: 2 })
        );
    }

    #[test]
    fn block_counts() {
        let mut rng = Rng::seed_from_u64(2);
        assert_eq!(sample_block_clifford(6, 6, &mut rng).unwrap().blocks().len(), 1);
        assert_eq!(sample_block_clifford(4, 2, &mut rng).unwrap().blocks().len(), 2);
        assert_eq!(sample_block_clifford(100, 1, &mut rng).unwrap().blocks().len(), 100);
    }

    #[test]
    fn identity_fixes_z_type() {
        let c = BlockSymplectic::identity(6, 3).unwrap();
        let z = Subspace::z_type(6);
        assert_eq!(c.apply_subspace(&z).unwrap(), z);
    }

    #[test]
    fn isotropic_edge_cases() {
        let mut rng = Rng::seed_from_u64(4);
        assert!(sample_isotropic(5, 0, &mut rng).unwrap().is_zero());
        assert!(sample_isotropic(2, 3, &mut rng).is_err());
        let l = sample_isotropic(100, 100, &mut rng).unwrap();
        assert!(l.is_lagrangian());
    }

    #[test]
    fn collision_examples() {
        let one = BigRational::one();
        assert_eq!(collision_coefficient(&PauliVec::identity(4), 4, 2).unwrap(), one);
        let x = PauliVec::parse("1 0").unwrap();
        assert_eq!(
            collision_coefficient(&x, 1, 1).unwrap(),
            BigRational::new(1.into(), 3.into())
        );
        let p = PauliVec::parse("1010 0001").unwrap();
        // blocks {0,1} and {2,3} both touched at k=2
        assert_eq!(
            collision_coefficient(&p, 4, 2).unwrap(),
            BigRational::new(1.into(), 25.into())
        );
    }

    #[test]
    fn text_round_trip() {
        let mut rng = Rng::seed_from_u64(5);
        let m = sample_symplectic(3, &mut rng).unwrap();
        assert_eq!(SymplecticMap::from_text(&m.to_text()).unwrap(), m);
    }

    proptest! {
        #[test]
        fn sampled_maps_are_symplectic(seed in any::<u64>(), k in 1usize..20) {
            let mut rng = Rng::seed_from_u64(seed);
            let m = sample_symplectic(k, &mut rng).unwrap();
            prop_assert!(m.preserves_form());
            let inv = m.inverse();
            prop_assert_eq!(m.compose(&inv).unwrap(), SymplecticMap::identity(k));
            let v = BitVec::random(2 * k, &mut rng);
            prop_assert_eq!(m.inverse_apply_local(&m.apply_local(&v)), v);
        }

        #[test]
        fn action_preserves_form(seed in any::<u64>(), nb in 1usize..6, k in 1usize..5) {
            let n = nb * k;
            let mut rng = Rng::seed_from_u64(seed);
            let c = sample_block_clifford(n, k, &mut rng).unwrap();
            let a = PauliVec::from_bits(BitVec::random(2 * n, &mut rng)).unwrap();
            let b = PauliVec::from_bits(BitVec::random(2 * n, &mut rng)).unwrap();
            let ca = c.apply(&a).unwrap();
            prop_assert_eq!(ca.form(&c.apply(&b).unwrap()), a.form(&b));
            prop_assert_eq!(c.inverse_apply(&ca).unwrap(), a.clone());
            prop_assert_eq!(c.inverse().apply(&ca).unwrap(), a);
        }

        #[test]
        fn subspace_round_trip(seed in any::<u64>(), nb in 1usize..5, k in 1usize..4, g in 0usize..8) {
            let n = nb * k;
            let mut rng = Rng::seed_from_u64(seed);
            let c = sample_block_clifford(n, k, &mut rng).unwrap();
            let rows: Vec<BitVec> = (0..g).map(|_| BitVec::random(2 * n, &mut rng)).collect();
            let a = Subspace::span(2 * n, &rows).unwrap();
            let ca = c.apply_subspace(&a).unwrap();
            prop_assert_eq!(ca.dim(), a.dim());
            prop_assert_eq!(ca.is_isotropic(), a.is_isotropic());
            prop_assert_eq!(c.inverse_apply_subspace(&ca).unwrap(), a);
        }

        #[test]
        fn isotropic_sampler_invariants(seed in any::<u64>(), n in 1usize..30, frac in 0.0f64..=1.0) {
            let mut rng = Rng::seed_from_u64(seed);
            let m = ((n as f64) * frac) as usize;
            let s = sample_isotropic(n, m, &mut rng).unwrap();
            prop_assert_eq!(s.dim(), m);
            prop_assert!(s.is_isotropic());
        }
    }

    #[test]
    fn x_parts_match_full_images() {
        let mut rng = Rng::seed_from_u64(41);
        for (n, k) in [(6, 1), (6, 2), (6, 3), (70, 70), (130, 65)] {
            let c = sample_block_clifford(n, k, &mut rng).unwrap();
            let vs: Vec<BitVec> = (0..10).map(|_| BitVec::random(2 * n, &mut rng)).collect();
            let want: Vec<BitVec> = vs.iter().map(|v| c.apply_bits(v).slice(0, n)).collect();
            assert_eq!(c.x_parts(&vs), want);
        }
    }
}
