use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use rand::RngCore;
use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 4]>;

/// A fixed-length vector over GF(2), packed into 64-bit words.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` are
/// always zero, so word-level comparisons and popcounts need no masking.
///
/// The ordering is lexicographic on the 0/1 string where bit 0 is the first
/// character. Vectors of different lengths order by length first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Words,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
fn tail_mask(len: usize) -> u64 {
    match len % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: SmallVec::from_elem(u64::MAX, word_count(len)),
        };
        v.clear_tail();
        v
    }

    /// The standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i])
    }

    /// Low `len` bits of `value`; requires `len <= 64`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.clear_tail();
        }
        v
    }

    /// Inverse of [`from_u64`](Self::from_u64); requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "to_u64 needs len <= 64, got {}", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    /// Uniformly random vector.
    pub fn random<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = rng.next_u64();
        }
        v.clear_tail();
        v
    }

    /// Bits from little-endian words; excess bits are dropped.
    pub fn from_words(len: usize, words: &[u64]) -> Self {
        let mut v = Self::zeros(len);
        let m = v.words.len().min(words.len());
        v.words[..m].copy_from_slice(&words[..m]);
        v.clear_tail();
        v
    }

    /// Parses a 0/1 string; the first character is bit 0.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = Self::zeros(s.len());
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => v.set(i, true),
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("unexpected character {:?} in bit string", c as char),
                    })
                }
            }
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let m = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(64 * i + b)
                }
            })
        })
    }

    /// In-place XOR. Panics on a length mismatch.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    /// Standard dot product mod 2. Panics on a length mismatch.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    /// 64 bits starting at bit `offset`, zero-filled past the end.
    #[inline]
    fn word_at(&self, offset: usize) -> u64 {
        let wi = offset / 64;
        let sh = offset % 64;
        let lo = self.words.get(wi).copied().unwrap_or(0);
        if sh == 0 {
            lo
        } else {
            let hi = self.words.get(wi + 1).copied().unwrap_or(0);
            (lo >> sh) | (hi << (64 - sh))
        }
    }

    /// Parity of `sum_i self[a + i] * other[b + i]` for `i < len`.
    #[inline]
    pub fn dot_range(&self, a: usize, other: &BitVec, b: usize, len: usize) -> bool {
        assert!(a + len <= self.len && b + len <= other.len, "range out of bounds");
        let mut acc = 0u64;
        let mut i = 0;
        while i < len {
            let take = (len - i).min(64);
            let mask = if take == 64 { u64::MAX } else { (1u64 << take) - 1 };
            acc ^= self.word_at(a + i) & other.word_at(b + i) & mask;
            i += 64;
        }
        acc.count_ones() & 1 == 1
    }

    /// Copy of bits `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len, "slice out of bounds");
        let mut out = Self::zeros(len);
        for (j, w) in out.words.iter_mut().enumerate() {
            *w = self.word_at(start + 64 * j);
        }
        out.clear_tail();
        out
    }

    /// Concatenation `self | other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = Self::zeros(self.len + other.len);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.or_shifted(other, self.len);
        out
    }

    /// ORs `src` into `self` starting at bit `offset`.
    pub(crate) fn or_shifted(&mut self, src: &BitVec, offset: usize) {
        assert!(offset + src.len <= self.len);
        let wi = offset / 64;
        let sh = offset % 64;
        for (j, &w) in src.words.iter().enumerate() {
            self.words[wi + j] |= w << sh;
            if sh != 0 && wi + j + 1 < self.words.len() {
                self.words[wi + j + 1] |= w >> (64 - sh);
            }
        }
    }

    #[inline]
    fn clear_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(other.words.iter()) {
                let d = a ^ b;
                if d != 0 {
                    let low = d & d.wrapping_neg();
                    return if a & low != 0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitXorAssign<&BitVec> for BitVec {
    fn bitxor_assign(&mut self, rhs: &BitVec) {
        self.xor_assign(rhs);
    }
}

impl BitXor<&BitVec> for &BitVec {
    type Output = BitVec;
    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use proptest::prelude::*;

    fn arb_bits(len: usize) -> impl Strategy<Value = BitVec> {
        proptest::collection::vec(any::<bool>(), len).prop_map(|b| BitVec::from_bools(&b))
    }

    #[test]
    fn parse_round_trip() {
        let v = BitVec::parse("0110010").unwrap();
        assert_eq!(v.len(), 7);
        assert_eq!(v.to_string(), "0110010");
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![1, 2, 5]);
        assert!(BitVec::parse("01a").is_err());
    }

    #[test]
    fn ones_is_masked() {
        let v = BitVec::ones(70);
        assert_eq!(v.weight(), 70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a = BitVec::parse("0111").unwrap();
        let b = BitVec::parse("1000").unwrap();
        assert!(a < b);
        let c = BitVec::parse("0011").unwrap();
        assert!(c < a);
    }

    #[test]
    fn lowest_one_across_words() {
        let mut v = BitVec::zeros(200);
        assert_eq!(v.lowest_one(), None);
        v.set(150, true);
        v.set(199, true);
        assert_eq!(v.lowest_one(), Some(150));
    }

    #[test]
    fn random_respects_length() {
        let mut rng = Rng::seed_from_u64(1);
        for len in [0, 1, 63, 64, 65, 130] {
            let v = BitVec::random(len, &mut rng);
            assert_eq!(v.len(), len);
            assert!(v.iter_ones().all(|i| i < len));
        }
    }

    proptest! {
        #[test]
        fn slice_and_concat_agree_with_bits(a in arb_bits(77), b in arb_bits(53)) {
            let c = a.concat(&b);
            prop_assert_eq!(c.len(), 130);
            for i in 0..77 { prop_assert_eq!(c.get(i), a.get(i)); }
            for i in 0..53 { prop_assert_eq!(c.get(77 + i), b.get(i)); }
            prop_assert_eq!(c.slice(0, 77), a);
            prop_assert_eq!(c.slice(77, 53), b);
        }

        #[test]
        fn dot_range_matches_naive(a in arb_bits(150), b in arb_bits(150), off_a in 0usize..50, off_b in 0usize..50, len in 0usize..100) {
            let naive = (0..len).filter(|&i| a.get(off_a + i) && b.get(off_b + i)).count() % 2 == 1;
            prop_assert_eq!(a.dot_range(off_a, &b, off_b, len), naive);
        }

        #[test]
        fn dot_is_bilinear(a in arb_bits(90), b in arb_bits(90), c in arb_bits(90)) {
            let ab = &a ^ &b;
            prop_assert_eq!(ab.dot(&c), a.dot(&c) ^ b.dot(&c));
        }
    }
}
