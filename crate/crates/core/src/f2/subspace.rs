use std::fmt;

use rand::RngCore;

use super::words::{self, relations};
use super::{form_bits, BitVec, PauliVec};
use crate::error::{check_dims, Error, Result};

/// Default cap on `dim` for [`Subspace::enumerate`].
pub const ENUMERATION_CAP: usize = 24;

/// Incremental reduced row-echelon accumulator.
///
/// The pivot of a row is its lowest set bit. Rows are kept sorted by pivot
/// and every pivot column is zero in all other rows, so the row set is a
/// canonical basis of its span.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` in place against the current rows.
    #[inline]
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient");
        self.reduce(&mut v);
        let Some(p) = v.lowest_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}

/// Linear subspace of GF(2)^ambient in canonical reduced row-echelon form.
///
/// Two subspaces are equal iff their bases are bit-identical. Pauli
/// subspaces use `ambient = 2n` with the `(x | z)` layout of [`PauliVec`];
/// X-side spaces such as difference-sample spans use `ambient = n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Echelon::new(ambient).into_subspace()
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            rows: (0..ambient).map(|i| BitVec::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of `vectors`; every vector must have length `ambient`.
    pub fn span<'a, I>(ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a BitVec>,
    {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            check_dims(ambient, v.len())?;
            e.insert(v.clone());
        }
        Ok(e.into_subspace())
    }

    /// Span of owned vectors.
    pub fn span_owned(ambient: usize, vectors: Vec<BitVec>) -> Result<Self> {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            check_dims(ambient, v.len())?;
            e.insert(v);
        }
        Ok(e.into_subspace())
    }

    /// Span of Pauli operators on `n` qubits.
    pub fn span_paulis<'a, I>(n: usize, paulis: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a PauliVec>,
    {
        Self::span(2 * n, paulis.into_iter().map(|p| p.bits()))
    }

    /// The Z-type Lagrangian `<Z_1, ..., Z_n>`.
    pub fn z_type(n: usize) -> Self {
        Self {
            ambient: 2 * n,
            rows: (n..2 * n).map(|i| BitVec::unit(2 * n, i)).collect(),
            pivots: (n..2 * n).collect(),
        }
    }

    /// The X-type Lagrangian `<X_1, ..., X_n>`.
    pub fn x_type(n: usize) -> Self {
        Self {
            ambient: 2 * n,
            rows: (0..n).map(|i| BitVec::unit(2 * n, i)).collect(),
            pivots: (0..n).collect(),
        }
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Qubit count for a Pauli subspace.
    pub fn num_qubits(&self) -> usize {
        self.ambient / 2
    }

    #[inline]
    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis rows wrapped as Pauli operators.
    pub fn pauli_basis(&self) -> Vec<PauliVec> {
        self.rows
            .iter()
            .map(|r| PauliVec::from_bits(r.clone()).expect("even ambient"))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_echelon(&self) -> Echelon {
        Echelon {
            ambient: self.ambient,
            rows: self.rows.clone(),
            pivots: self.pivots.clone(),
        }
    }

    /// Residual of `v` after reduction; zero iff `v` is a member.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w.get(p) {
                w.xor_assign(row);
            }
        }
        w
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        check_dims(self.ambient, v.len())?;
        Ok(self.reduce(v).is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        check_dims(self.ambient, other.ambient)?;
        Ok(self.rows.iter().all(|r| other.reduce(r).is_zero()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_dims(self.ambient, other.ambient)?;
        let (big, small) = if self.dim() >= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = big.to_echelon();
        for r in &small.rows {
            e.insert(r.clone());
        }
        Ok(e.into_subspace())
    }

    /// Exact intersection by the Zassenhaus method: echelonize the rows
    /// `(a | a)` and `(b | 0)`; rows whose left half vanishes carry a basis
    /// of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_dims(self.ambient, other.ambient)?;
        let d = self.ambient;
        let zero = BitVec::zeros(d);
        let mut e = Echelon::new(2 * d);
        for a in &self.rows {
            e.insert(a.concat(a));
        }
        for b in &other.rows {
            e.insert(b.concat(&zero));
        }
        let mut out = Echelon::new(d);
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if p >= d {
                out.insert(row.slice(d, d));
            }
        }
        Ok(out.into_subspace())
    }

    /// `{x : x . a = 0 for all a}` under the standard dot product.
    pub fn dot_complement(&self) -> Subspace {
        let d = self.ambient;
        let mut is_pivot = vec![false; d];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::with_capacity(d - self.dim());
        for f in (0..d).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::unit(d, f);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            rows.push(v);
        }
        Subspace::span_owned(d, rows).expect("lengths match")
    }

    /// `A^perp = {x : [x, a] = 0 for all a in A}` under the symplectic form.
    pub fn symplectic_complement(&self) -> Result<Subspace> {
        if !self.ambient.is_multiple_of(2) {
            return Err(Error::OddAmbient(self.ambient));
        }
        let n = self.ambient / 2;
        let swapped: Vec<BitVec> = self.rows.iter().map(|r| swap_halves(r, n)).collect();
        // [x, a] = x . swap(a)
        Ok(Subspace::span_owned(self.ambient, swapped)?.dot_complement())
    }

    /// True iff the symplectic form vanishes on all basis pairs.
    ///
    /// # Panics
    /// If the ambient dimension is odd.
    pub fn is_isotropic(&self) -> bool {
        assert!(self.ambient.is_multiple_of(2), "isotropy needs an even ambient");
        let n = self.ambient / 2;
        for i in 0..self.rows.len() {
            for j in (i + 1)..self.rows.len() {
                if form_bits(&self.rows[i], &self.rows[j], n) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_lagrangian(&self) -> bool {
        self.dim() * 2 == self.ambient && self.is_isotropic()
    }

    /// Uniform random element.
    pub fn random_element<R: RngCore + ?Sized>(&self, rng: &mut R) -> BitVec {
        let mut v = BitVec::zeros(self.ambient);
        let mut bits = 0u64;
        let mut left = 0;
        for row in &self.rows {
            if left == 0 {
                bits = rng.next_u64();
                left = 64;
            }
            if bits & 1 == 1 {
                v.xor_assign(row);
            }
            bits >>= 1;
            left -= 1;
        }
        v
    }

    /// Applies `f` to every basis row and re-canonicalizes.
    pub fn map_rows(&self, ambient: usize, mut f: impl FnMut(&BitVec) -> BitVec) -> Subspace {
        let mut e = Echelon::new(ambient);
        for r in &self.rows {
            e.insert(f(r));
        }
        e.into_subspace()
    }

    /// All `2^dim` elements in Gray-code order, starting from zero.
    pub fn enumerate(&self) -> Result<Elements<'_>> {
        self.enumerate_with_cap(ENUMERATION_CAP)
    }

    pub fn enumerate_with_cap(&self, cap: usize) -> Result<Elements<'_>> {
        if self.dim() > cap || self.dim() >= 64 {
            return Err(Error::EnumerationCap { dim: self.dim(), cap });
        }
        Ok(Elements {
            space: self,
            current: BitVec::zeros(self.ambient),
            index: 0,
            total: 1u64 << self.dim(),
        })
    }

    /// Textual format: header `ambient=A dim=D`, then one 0/1 row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("ambient={} dim={}\n", self.ambient, self.dim());
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses [`to_text`](Self::to_text) output. Rows need not be reduced;
    /// the declared `dim` must equal their rank. Lines starting with `#`
    /// are ignored.
    pub fn from_text(text: &str) -> Result<Subspace> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (ambient, dim) = parse_header(header).ok_or_else(|| Error::Parse {
            line: hline,
            msg: format!("bad header {header:?}, expected \"ambient=A dim=D\""),
        })?;
        let mut e = Echelon::new(ambient);
        for (line, l) in lines {
            let v = BitVec::parse(l).map_err(|_| Error::Parse {
                line,
                msg: format!("bad row {l:?}"),
            })?;
            if v.len() != ambient {
                return Err(Error::Parse {
                    line,
                    msg: format!("row length {} != ambient {ambient}", v.len()),
                });
            }
            e.insert(v);
        }
        if e.dim() != dim {
            return Err(Error::Parse {
                line: hline,
                msg: format!("declared dim {dim} but rows have rank {}", e.dim()),
            });
        }
        Ok(e.into_subspace())
    }
}

fn parse_header(h: &str) -> Option<(usize, usize)> {
    let mut ambient = None;
    let mut dim = None;
    for tok in h.split_whitespace() {
        let (k, v) = tok.split_once('=')?;
        match k {
            "ambient" => ambient = v.parse().ok(),
            "dim" => dim = v.parse().ok(),
            _ => {}
        }
    }
    Some((ambient?, dim?))
}

/// `(x | z) -> (z | x)`.
pub fn swap_halves(v: &BitVec, n: usize) -> BitVec {
    v.slice(n, n).concat(&v.slice(0, n))
}

/// Basis of `{u in GF(2)^r : sum_i u_i rows[i] = 0}` for `r = rows.len()`.
///
/// Each row is reduced, together with its unit tag, against the earlier
/// independent rows; a row that vanishes leaves its relation in the tag.
pub fn linear_relations(rows: &[BitVec]) -> Vec<BitVec> {
    let r = rows.len();
    let Some(d) = rows.first().map(|v| v.len()) else {
        return Vec::new();
    };
    let (wd, wr) = (d.div_ceil(64), r.div_ceil(64));
    words::with_width!(wd + wr, relations, (rows, d), relations_dyn(rows, d))
}

fn relations_dyn(rows: &[BitVec], d: usize) -> Vec<BitVec> {
    let r = rows.len();
    let (wd, wr) = (d.div_ceil(64), r.div_ceil(64));
    let stride = wd + wr;
    let mut kept: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut out = Vec::new();
    for (i, v) in rows.iter().enumerate() {
        assert_eq!(v.len(), d, "rows must share one length");
        let mut cur = vec![0u64; stride];
        cur[..wd].copy_from_slice(v.words());
        cur[wd + i / 64] |= 1 << (i % 64);
        for (p, row) in &kept {
            if cur[p / 64] >> (p % 64) & 1 == 1 {
                for (c, x) in cur.iter_mut().zip(row) {
                    *c ^= x;
                }
            }
        }
        match cur[..wd].iter().position(|&w| w != 0) {
            Some(j) => kept.push((64 * j + cur[j].trailing_zeros() as usize, cur)),
            None => out.push(BitVec::from_words(r, &cur[wd..])),
        }
    }
    out
}

/// Gray-code iterator over the elements of a [`Subspace`].
pub struct Elements<'a> {
    space: &'a Subspace,
    current: BitVec,
    index: u64,
    total: u64,
}

impl Iterator for Elements<'_> {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current.xor_assign(&self.space.rows[flip]);
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Elements<'_> {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(ambient={}, dim={}", self.ambient, self.dim())?;
        for r in &self.rows {
            write!(f, ", {r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
