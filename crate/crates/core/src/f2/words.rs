//! Fixed-width word kernels for the hot loops; `W` words hold up to
//! `64 W` bits.

use super::BitVec;

/// Calls `$f::<W>($args)` for the smallest supported `W >= $words`, or
/// evaluates `$fallback` when the width is too large.
macro_rules! with_width {
    ($words:expr, $f:ident, ($($args:expr),*), $fallback:expr) => {
        match $words {
            0 | 1 => $f::<1>($($args),*),
            2 => $f::<2>($($args),*),
            3 => $f::<3>($($args),*),
            4 => $f::<4>($($args),*),
            5 | 6 => $f::<6>($($args),*),
            7 | 8 => $f::<8>($($args),*),
            _ => $fallback,
        }
    };
}
pub(crate) use with_width;

#[inline(always)]
pub(crate) fn load<const W: usize>(v: &BitVec) -> [u64; W] {
    let mut out = [0u64; W];
    let src = v.words();
    out[..src.len()].copy_from_slice(src);
    out
}

#[inline(always)]
pub(crate) fn dot<const W: usize>(a: &[u64; W], b: &[u64; W]) -> bool {
    let mut acc = 0u64;
    for i in 0..W {
        acc ^= a[i] & b[i];
    }
    acc.count_ones() & 1 == 1
}

#[inline(always)]
pub(crate) fn xor_into<const W: usize>(a: &mut [u64; W], b: &[u64; W]) {
    for i in 0..W {
        a[i] ^= b[i];
    }
}

/// `a ^= b` when `on`, without a branch.
#[inline(always)]
pub(crate) fn xor_if<const W: usize>(a: &mut [u64; W], b: &[u64; W], on: bool) {
    let m = (on as u64).wrapping_neg();
    for i in 0..W {
        a[i] ^= b[i] & m;
    }
}

#[inline(always)]
pub(crate) fn is_zero<const W: usize>(a: &[u64; W]) -> bool {
    a.iter().all(|&w| w == 0)
}

#[inline(always)]
pub(crate) fn lowest<const W: usize>(a: &[u64; W]) -> Option<usize> {
    a.iter()
        .position(|&w| w != 0)
        .map(|i| 64 * i + a[i].trailing_zeros() as usize)
}

#[inline(always)]
pub(crate) fn get<const W: usize>(a: &[u64; W], i: usize) -> bool {
    a[i / 64] >> (i % 64) & 1 == 1
}

#[inline(always)]
pub(crate) fn flip<const W: usize>(a: &mut [u64; W], i: usize) {
    a[i / 64] ^= 1 << (i % 64);
}

/// XOR of `rows[j]` over the set bits `j` of `coeffs`.
#[inline(always)]
pub(crate) fn combine<const W: usize>(rows: &[[u64; W]], coeffs: &[u64]) -> [u64; W] {
    let mut out = [0u64; W];
    for (wi, &word) in coeffs.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let j = 64 * wi + bits.trailing_zeros() as usize;
            xor_into(&mut out, &rows[j]);
            bits &= bits - 1;
        }
    }
    out
}

/// Ones in bit positions `0..len`.
pub(crate) fn random_words<const W: usize, R: rand::RngCore + ?Sized>(len: usize, rng: &mut R) -> [u64; W] {
    let mut out = [0u64; W];
    let full = len / 64;
    for w in out.iter_mut().take(len.div_ceil(64)) {
        *w = rng.next_u64();
    }
    if !len.is_multiple_of(64) {
        out[full] &= (1u64 << (len % 64)) - 1;
    }
    out
}

/// Relations among `rows`, each `d` bits with `d <= 64 (W - T)` and a tag
/// of `rows.len() <= 64 T` bits in the upper words.
pub(crate) fn relations<const W: usize>(rows: &[BitVec], d: usize) -> Vec<BitVec> {
    let wd = d.div_ceil(64);
    let r = rows.len();
    let mut kept: Vec<(usize, [u64; W])> = Vec::with_capacity(r);
    let mut out = Vec::new();
    for (i, v) in rows.iter().enumerate() {
        assert_eq!(v.len(), d, "rows must share one length");
        let mut cur = [0u64; W];
        cur[..wd].copy_from_slice(v.words());
        let tag = 64 * wd + i;
        flip(&mut cur, tag);
        for (p, row) in &kept {
            let on = get(&cur, *p);
            xor_if(&mut cur, row, on);
        }
        match cur[..wd].iter().position(|&w| w != 0) {
            Some(j) => kept.push((64 * j + cur[j].trailing_zeros() as usize, cur)),
            None => out.push(BitVec::from_words(r, &cur[wd..])),
        }
    }
    out
}

/// Basis of `{u in F_2^d : row . u = 0 for every row}`.
pub(crate) fn null_space<const W: usize>(rows: &[[u64; W]], d: usize) -> Vec<[u64; W]> {
    let mut kept: Vec<(usize, [u64; W])> = Vec::with_capacity(d);
    for row in rows {
        if kept.len() == d {
            return Vec::new();
        }
        let mut v = *row;
        for (p, r) in &kept {
            let on = get(&v, *p);
            xor_if(&mut v, r, on);
        }
        if let Some(p) = lowest(&v) {
            for (_, r) in kept.iter_mut() {
                let on = get(r, p);
                xor_if(r, &v, on);
            }
            kept.push((p, v));
        }
    }
    let mut pivots = [0u64; W];
    for (p, _) in &kept {
        flip(&mut pivots, *p);
    }
    (0..d)
        .filter(|&f| !get(&pivots, f))
        .map(|f| {
            let mut u = [0u64; W];
            flip(&mut u, f);
            for (p, r) in &kept {
                if get(r, f) {
                    flip(&mut u, *p);
                }
            }
            u
        })
        .collect()
}

/// Adds `v` to a semi-echelon basis; false when `v` was already spanned.
pub(crate) fn insert<const W: usize>(basis: &mut Vec<(usize, [u64; W])>, mut v: [u64; W]) -> bool {
    for (p, r) in basis.iter() {
        let on = get(&v, *p);
        xor_if(&mut v, r, on);
    }
    match lowest(&v) {
        Some(p) => {
            basis.push((p, v));
            true
        }
        None => false,
    }
}
