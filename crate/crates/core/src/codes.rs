//! Instance generators: random isotropic groups, CSS-code states, toric and
//! color-code logical states, GHZ, and the two-family lower-bound fixture.

use std::collections::BTreeMap;

use rand::RngCore;

use crate::cds::ZSpectrum;
use crate::clifford::sample_isotropic;
use crate::error::{Error, Result};
use crate::f2::{BitVec, Echelon, PauliVec, Subspace};

/// A stabilizer-type state described by its unsigned Pauli group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeInstance {
    pub name: String,
    pub n: usize,
    pub t: usize,
    pub weyl: Subspace,
    pub metadata: BTreeMap<String, String>,
}

impl CodeInstance {
    fn new(name: &str, n: usize, weyl: Subspace) -> Self {
        debug_assert!(weyl.is_isotropic());
        Self {
            name: name.to_string(),
            n,
            t: n - weyl.dim(),
            weyl,
            metadata: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Subspace text format preceded by a `# code` metadata line.
    pub fn to_text(&self) -> String {
        let mut head = format!("# code name={} n={} t={}", self.name, self.n, self.t);
        for (k, v) in &self.metadata {
            head.push_str(&format!(" {k}={v}"));
        }
        format!("{head}\n{}", self.weyl.to_text())
    }
}

fn x_row(n: usize, x: &BitVec) -> BitVec {
    x.concat(&BitVec::zeros(n))
}

fn z_row(n: usize, z: &BitVec) -> BitVec {
    BitVec::zeros(n).concat(z)
}

fn support(n: usize, idx: &[usize]) -> BitVec {
    let mut v = BitVec::zeros(n);
    for &i in idx {
        v.set(i, true);
    }
    v
}

/// Uniformly random `(n - t)`-dimensional isotropic group.
pub fn random_instance<R: RngCore + ?Sized>(n: usize, t: usize, rng: &mut R) -> Result<CodeInstance> {
    if t > n {
        return Err(Error::out_of_range("t", t, "t <= n"));
    }
    Ok(CodeInstance::new("random", n, sample_isotropic(n, n - t, rng)?))
}

/// GHZ group `<Z_i Z_{i+1}, X^n>` together with `T_0 = <Z_i Z_{i+1}>`.
pub fn ghz_instance(n: usize) -> Result<(CodeInstance, Subspace)> {
    if n < 2 {
        return Err(Error::out_of_range("n", n, "n >= 2"));
    }
    let zz: Vec<BitVec> = (0..n - 1).map(|i| z_row(n, &support(n, &[i, i + 1]))).collect();
    let t0 = Subspace::span(2 * n, &zz)?;
    let weyl = t0.sum(&Subspace::span(2 * n, &[x_row(n, &BitVec::ones(n))])?)?;
    Ok((CodeInstance::new("ghz", n, weyl), t0))
}

/// Group of a CSS code state: X checks `hx`, made Lagrangian by every
/// Z-type vector they commute with. Rejects `hx` that anticommutes with
/// some row of `hz`.
pub fn css_from_checks(n: usize, hx: &[BitVec], hz: &[BitVec]) -> Result<Subspace> {
    for a in hx {
        for b in hz {
            if a.dot(b) {
                return Err(Error::NotIsotropic);
            }
        }
    }
    let hx_space = Subspace::span(n, hx)?;
    let xs = hx_space.map_rows(2 * n, |r| x_row(n, r));
    let zs = hx_space.dot_complement().map_rows(2 * n, |r| z_row(n, r));
    xs.sum(&zs)
}

/// `r` independent rows drawn one at a time from `within`, rejecting
/// dependent draws; uniform over full-rank tuples.
fn random_independent<R: RngCore + ?Sized>(within: &Subspace, r: usize, rng: &mut R) -> Vec<BitVec> {
    let mut ech = Echelon::new(within.ambient());
    let mut rows = Vec::with_capacity(r);
    while rows.len() < r {
        let v = within.random_element(rng);
        if ech.insert(v.clone()) {
            rows.push(v);
        }
    }
    rows
}

/// Random CSS code state: `H_Z` uniform full rank `r_z × n`, `H_X`
/// uniform full rank `r_x × n` inside the dual of `H_Z`'s row space.
pub fn random_css_instance<R: RngCore + ?Sized>(n: usize, r_x: usize, r_z: usize, rng: &mut R) -> Result<CodeInstance> {
    if r_x + r_z > n {
        return Err(Error::Infeasible(format!("r_x + r_z = {} exceeds n = {n}", r_x + r_z)));
    }
    let hz = random_independent(&Subspace::full(n), r_z, rng);
    let dual = Subspace::span(n, &hz)?.dot_complement();
    let hx = random_independent(&dual, r_x, rng);
    let weyl = css_from_checks(n, &hx, &hz)?;
    Ok(CodeInstance::new("css", n, weyl).with("r_x", r_x).with("r_z", r_z))
}

/// Parity checks of the Hamming(7,4) code: column `j` is `j + 1` in binary.
pub fn hamming_checks() -> Vec<BitVec> {
    (0..3).map(|b| BitVec::from_fn(7, |j| (j + 1) >> b & 1 == 1)).collect()
}

/// Steane code state with logical Z.
pub fn steane_instance() -> Result<CodeInstance> {
    let h = hamming_checks();
    Ok(CodeInstance::new("steane", 7, css_from_checks(7, &h, &h)?).with("distance", 3))
}

/// Horizontal edge `(i, j) -> (i, j + 1)`.
fn h_edge(d: usize, i: usize, j: usize) -> usize {
    (i % d) * d + j % d
}

/// Vertical edge `(i, j) -> (i + 1, j)`.
fn v_edge(d: usize, i: usize, j: usize) -> usize {
    d * d + (i % d) * d + j % d
}

/// Star (X-type) and plaquette (Z-type) supports on the `d × d` torus.
pub fn toric_generators(d: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut stars = Vec::new();
    let mut plaquettes = Vec::new();
    for i in 0..d {
        for j in 0..d {
            stars.push(vec![
                h_edge(d, i, j),
                h_edge(d, i, j + d - 1),
                v_edge(d, i, j),
                v_edge(d, i + d - 1, j),
            ]);
            plaquettes.push(vec![
                h_edge(d, i, j),
                h_edge(d, i + 1, j),
                v_edge(d, i, j),
                v_edge(d, i, j + 1),
            ]);
        }
    }
    (stars, plaquettes)
}

/// Toric code on `2 d^2` edge qubits in the logical state fixed by the two
/// Z loops along row 0 and column 0.
pub fn toric_instance(d: usize) -> Result<CodeInstance> {
    if d < 2 {
        return Err(Error::out_of_range("d", d, "d >= 2"));
    }
    let n = 2 * d * d;
    let (stars, plaquettes) = toric_generators(d);
    let mut rows: Vec<BitVec> = stars.iter().map(|s| x_row(n, &support(n, s))).collect();
    rows.extend(plaquettes.iter().map(|p| z_row(n, &support(n, p))));
    let row_loop: Vec<usize> = (0..d).map(|j| h_edge(d, 0, j)).collect();
    let col_loop: Vec<usize> = (0..d).map(|i| v_edge(d, i, 0)).collect();
    rows.push(z_row(n, &support(n, &row_loop)));
    rows.push(z_row(n, &support(n, &col_loop)));
    let weyl = Subspace::span_owned(2 * n, rows)?;
    Ok(CodeInstance::new("toric", n, weyl)
        .with("distance", d)
        .with("lattice", "square-torus")
        .with("logical", "Z-loops"))
}

/// Faces of the triangular 6.6.6 color code of odd distance `d`, and the
/// qubits on one side of the triangle.
///
/// Sites are lattice points `(a, b)` with `a + b <= 3 (d - 1) / 2`; those
/// with `a - b == 1 mod 3` are face centers, the rest are qubits.
pub fn color_generators(d: usize) -> Result<(usize, Vec<Vec<usize>>, Vec<usize>)> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::out_of_range("d", d, "odd d >= 3"));
    }
    let l = 3 * (d - 1) / 2;
    let is_center = |a: usize, b: usize| (a + 2 * b) % 3 == 1;
    let mut index = BTreeMap::new();
    for a in 0..=l {
        for b in 0..=l - a {
            if !is_center(a, b) {
                let next = index.len();
                index.insert((a, b), next);
            }
        }
    }
    let mut faces = Vec::new();
    for a in 0..=l {
        for b in 0..=l - a {
            if !is_center(a, b) {
                continue;
            }
            let (a, b) = (a as isize, b as isize);
            let mut face: Vec<usize> = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
                .iter()
                .filter_map(|(da, db)| {
                    let (p, q) = (a + da, b + db);
                    (p >= 0 && q >= 0)
                        .then(|| index.get(&(p as usize, q as usize)).copied())
                        .flatten()
                })
                .collect();
            face.sort_unstable();
            faces.push(face);
        }
    }
    let side = index.iter().filter(|((_, b), _)| *b == 0).map(|(_, &i)| i).collect();
    Ok((index.len(), faces, side))
}

/// Triangular color code on `(3 d^2 + 1) / 4` qubits with logical Z along
/// one side.
pub fn color_instance(d: usize) -> Result<CodeInstance> {
    let (n, faces, side) = color_generators(d)?;
    let mut rows: Vec<BitVec> = faces.iter().map(|f| x_row(n, &support(n, f))).collect();
    rows.extend(faces.iter().map(|f| z_row(n, &support(n, f))));
    rows.push(z_row(n, &support(n, &side)));
    let weyl = Subspace::span_owned(2 * n, rows)?;
    Ok(CodeInstance::new("color", n, weyl)
        .with("distance", d)
        .with("lattice", "6.6.6-triangle")
        .with("logical", "Z-side"))
}

/// Which member of the lower-bound pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `|0^{n-t}><0^{n-t}| ⊗ I / 2^t`.
    A,
    /// As `A` with one extra random Pauli symmetry on the last `t` qubits.
    B,
}

/// Lower-bound fixture state and its Z-type spectrum (weight 1 exactly on
/// the group).
pub fn lower_bound_fixture<R: RngCore + ?Sized>(
    n: usize,
    t: usize,
    which: Family,
    rng: &mut R,
) -> Result<(CodeInstance, ZSpectrum)> {
    if t > n {
        return Err(Error::out_of_range("t", t, "t <= n"));
    }
    let mut rows: Vec<BitVec> = (0..n - t).map(|i| PauliVec::z(n, i).into_bits()).collect();
    let name = match which {
        Family::A => "lower_bound_a",
        Family::B => {
            if t == 0 {
                return Err(Error::Infeasible("family B needs t >= 1".into()));
            }
            let p = loop {
                let x = BitVec::random(t, rng);
                let z = BitVec::random(t, rng);
                if !(x.is_zero() && z.is_zero()) {
                    break (x, z);
                }
            };
            let lift = |v: &BitVec| BitVec::zeros(n - t).concat(v);
            rows.push(lift(&p.0).concat(&lift(&p.1)));
            "lower_bound_b"
        }
    };
    let weyl = Subspace::span_owned(2 * n, rows)?;
    let spectrum = ZSpectrum::from_stabilizer(&weyl)?;
    let mut inst = CodeInstance::new(name, n, weyl);
    // t counts the mixed qubits, not the missing group dimension
    inst.t = t;
    Ok((inst, spectrum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn x_part(v: &BitVec, n: usize) -> BitVec {
        v.slice(0, n)
    }

    #[test]
    fn random_examples() {
        let mut rng = Rng::seed_from_u64(1);
        assert!(random_instance(4, 0, &mut rng).unwrap().weyl.is_lagrangian());
        assert!(random_instance(4, 4, &mut rng).unwrap().weyl.is_zero());
        let big = random_instance(100, 3, &mut rng).unwrap();
        assert_eq!(big.weyl.dim(), 97);
        assert!(big.weyl.is_isotropic());
        assert_eq!(big.t, 3);
        assert!(random_instance(4, 5, &mut rng).is_err());
    }

    #[test]
    fn ghz_examples() {
        let (g2, _) = ghz_instance(2).unwrap();
        let bell = Subspace::span(4, &[BitVec::parse("0011").unwrap(), BitVec::parse("1100").unwrap()]).unwrap();
        assert_eq!(g2.weyl, bell);
        let (g3, t0) = ghz_instance(3).unwrap();
        assert!(g3.weyl.is_lagrangian());
        assert_eq!(t0.dim(), 2);
        let outside: Vec<_> = g3
            .weyl
            .enumerate()
            .unwrap()
            .filter(|v| !t0.contains(v).unwrap())
            .collect();
        assert_eq!(outside.len(), 4);
        assert!(outside.iter().all(|v| x_part(v, 3) == BitVec::ones(3)));
        assert!(ghz_instance(1).is_err());
    }

    #[test]
    fn css_examples() {
        let mut rng = Rng::seed_from_u64(2);
        assert_eq!(
            random_css_instance(6, 0, 3, &mut rng).unwrap().weyl,
            Subspace::z_type(6)
        );
        for _ in 0..20 {
            let c = random_css_instance(20, 6, 7, &mut rng).unwrap();
            assert!(c.weyl.is_lagrangian());
            for b in c.weyl.basis() {
                let (x, z) = (b.slice(0, 20), b.slice(20, 20));
                assert!(x.is_zero() || z.is_zero());
            }
        }
        assert!(random_css_instance(5, 3, 3, &mut rng).is_err());
        let h = hamming_checks();
        assert!(h.iter().all(|a| h.iter().all(|b| !a.dot(b))));
        assert!(steane_instance().unwrap().weyl.is_lagrangian());
    }

    #[test]
    fn css_contains_z_checks() {
        let mut rng = Rng::seed_from_u64(3);
        let n = 12;
        let hz = random_independent(&Subspace::full(n), 4, &mut rng);
        let hx = random_independent(&Subspace::span(n, &hz).unwrap().dot_complement(), 3, &mut rng);
        let w = css_from_checks(n, &hx, &hz).unwrap();
        for z in &hz {
            assert!(w.contains(&z_row(n, z)).unwrap());
        }
        let bad = vec![BitVec::unit(n, hz[0].lowest_one().unwrap())];
        assert!(css_from_checks(n, &bad, &hz[..1]).is_err());
    }

    fn rank(n: usize, sets: &[Vec<usize>]) -> usize {
        Subspace::span_owned(n, sets.iter().map(|s| support(n, s)).collect())
            .unwrap()
            .dim()
    }

    #[test]
    fn toric_examples() {
        let (stars, plaqs) = toric_generators(2);
        assert_eq!((stars.len(), plaqs.len()), (4, 4));
        assert_eq!(rank(8, &stars), 3);
        assert_eq!(rank(8, &plaqs), 3);
        for d in [2, 3, 5] {
            let t = toric_instance(d).unwrap();
            assert_eq!(t.n, 2 * d * d);
            assert!(t.weyl.is_lagrangian(), "d={d}");
            let (s, p) = toric_generators(d);
            assert!(s.iter().chain(&p).all(|g| {
                let mut g = g.clone();
                g.dedup();
                g.len() == 4
            }));
        }
        assert!(toric_instance(1).is_err());
    }

    #[test]
    fn color_examples() {
        for (d, n) in [(3, 7), (5, 19), (7, 37)] {
            let c = color_instance(d).unwrap();
            assert_eq!(c.n, n);
            assert!(c.weyl.is_lagrangian(), "d={d}");
            let (_, faces, side) = color_generators(d).unwrap();
            assert!(faces.iter().all(|f| f.len() == 4 || f.len() == 6));
            assert_eq!(side.len(), d);
            assert_eq!(rank(n, &faces), (n - 1) / 2);
        }
        assert!(color_instance(4).is_err());
    }

    /// Applies a qubit permutation to every generator.
    fn permute(w: &Subspace, n: usize, perm: &[usize]) -> Subspace {
        w.map_rows(2 * n, |r| {
            BitVec::from_fn(2 * n, |i| {
                let (half, q) = (i / n, i % n);
                r.get(half * n + perm[q])
            })
        })
    }

    #[test]
    fn color_three_is_steane() {
        let color = color_instance(3).unwrap().weyl;
        let steane = steane_instance().unwrap().weyl;
        let mut perm: Vec<usize> = (0..7).collect();
        let mut found = false;
        // Heap's algorithm over all 5040 relabelings.
        let mut c = [0usize; 7];
        let mut i = 0;
        if permute(&color, 7, &perm) == steane {
            found = true;
        }
        while i < 7 && !found {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                found = permute(&color, 7, &perm) == steane;
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        assert!(found);
    }

    #[test]
    fn lower_bound_examples() {
        let mut rng = Rng::seed_from_u64(4);
        let (a, _) = lower_bound_fixture(5, 0, Family::A, &mut rng).unwrap();
        assert_eq!(a.weyl, Subspace::z_type(5));
        let (b, spec) = lower_bound_fixture(6, 2, Family::B, &mut rng).unwrap();
        assert_eq!(b.weyl.dim(), 5);
        assert!(b.weyl.is_isotropic());
        assert!(spec.is_stabilizer_type());
        for _ in 0..10_000 {
            let (b, _) = lower_bound_fixture(3, 1, Family::B, &mut rng).unwrap();
            assert_eq!(b.weyl.dim(), 3);
        }
        assert!(lower_bound_fixture(3, 0, Family::B, &mut rng).is_err());
    }

    #[test]
    fn text_export_round_trips() {
        let t = toric_instance(2).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("# code name=toric n=8 t=0 distance=2"));
        assert_eq!(Subspace::from_text(&text).unwrap(), t.weyl);
    }
}
