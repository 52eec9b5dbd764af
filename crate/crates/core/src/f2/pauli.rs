use std::fmt;
use std::ops::Deref;

use super::BitVec;
use crate::error::{check_dims, Error, Result};

/// An unsigned n-qubit Pauli operator, stored as the 2n-bit vector
/// `(a_x | a_z)`.
///
/// The x-part occupies bits `0..n` and the z-part bits `n..2n`, so qubit `i`
/// carries X when bit `i` is set and Z when bit `n + i` is set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliVec {
    n: usize,
    bits: BitVec,
}

impl PauliVec {
    /// The identity on `n` qubits.
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            bits: BitVec::zeros(2 * n),
        }
    }

    /// Wraps a 2n-bit vector.
    pub fn from_bits(bits: BitVec) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::OddAmbient(bits.len()));
        }
        Ok(Self {
            n: bits.len() / 2,
            bits,
        })
    }

    pub fn from_xz(x: &BitVec, z: &BitVec) -> Result<Self> {
        check_dims(x.len(), z.len())?;
        Ok(Self {
            n: x.len(),
            bits: x.concat(z),
        })
    }

    /// Parses `"x-bits z-bits"` or one 2n-character string.
    pub fn parse(s: &str) -> Result<Self> {
        let joined: String = s.split_whitespace().collect();
        Self::from_bits(BitVec::parse(&joined)?)
    }

    /// `X` on qubit `i`.
    pub fn x(n: usize, i: usize) -> Self {
        Self {
            n,
            bits: BitVec::unit(2 * n, i),
        }
    }

    /// `Z` on qubit `i`.
    pub fn z(n: usize, i: usize) -> Self {
        Self {
            n,
            bits: BitVec::unit(2 * n, n + i),
        }
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec {
        self.bits
    }

    #[inline]
    pub fn x_bit(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    #[inline]
    pub fn z_bit(&self, i: usize) -> bool {
        self.bits.get(self.n + i)
    }

    pub fn x_part(&self) -> BitVec {
        self.bits.slice(0, self.n)
    }

    pub fn z_part(&self) -> BitVec {
        self.bits.slice(self.n, self.n)
    }

    /// True when the operator is a product of Z and I only.
    pub fn is_z_type(&self) -> bool {
        self.bits.iter_ones().all(|i| i >= self.n)
    }

    /// True when the operator is a product of X and I only.
    pub fn is_x_type(&self) -> bool {
        self.bits.iter_ones().all(|i| i < self.n)
    }

    /// Number of qubits on which the operator acts non-trivially.
    pub fn support_size(&self) -> usize {
        (0..self.n).filter(|&i| self.x_bit(i) || self.z_bit(i)).count()
    }

    /// Number of size-`k` blocks on which the operator is not the identity.
    pub fn block_weight(&self, k: usize) -> usize {
        assert!(
            k > 0 && self.n.is_multiple_of(k),
            "block size {k} must divide {}",
            self.n
        );
        let mut hit = vec![false; self.n / k];
        for i in self.bits.iter_ones() {
            hit[(i % self.n) / k] = true;
        }
        hit.into_iter().filter(|&h| h).count()
    }

    /// Unchecked symplectic form for same-size operands.
    #[inline]
    pub fn form(&self, other: &PauliVec) -> bool {
        debug_assert_eq!(self.n, other.n);
        form_bits(&self.bits, &other.bits, self.n)
    }

    pub fn commutes_with(&self, other: &PauliVec) -> Result<bool> {
        symplectic_form(self, other).map(|b| !b)
    }
}

impl Deref for PauliVec {
    type Target = BitVec;
    fn deref(&self) -> &BitVec {
        &self.bits
    }
}

impl fmt::Display for PauliVec {
    /// Pauli-letter string, e.g. `XIZY`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let c = match (self.x_bit(i), self.z_bit(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliVec({self})")
    }
}

/// The symplectic form `[a, b] = a_x . b_z + a_z . b_x (mod 2)`.
///
/// Returns `true` for 1, which means the two operators anticommute.
pub fn symplectic_form(a: &PauliVec, b: &PauliVec) -> Result<bool> {
    check_dims(a.n, b.n)?;
    Ok(form_bits(&a.bits, &b.bits, a.n))
}

/// Symplectic form on raw 2n-bit vectors.
#[inline]
pub fn form_bits(a: &BitVec, b: &BitVec, n: usize) -> bool {
    if n.is_multiple_of(64) {
        // Word-aligned halves: a single pass with the halves swapped.
        let w = n / 64;
        let (ax, az) = a.words().split_at(w);
        let (bx, bz) = b.words().split_at(w);
        let mut acc = 0u64;
        for i in 0..w {
            acc ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
        }
        acc.count_ones() & 1 == 1
    } else {
        a.dot_range(0, b, n, n) ^ a.dot_range(n, b, 0, n)
    }
}
