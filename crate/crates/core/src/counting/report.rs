//! Formula-versus-oracle verification table.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{brute, pow2r};
use crate::counting as c;
use crate::error::Result;
use crate::f2::BitVec;

/// One comparison row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub formula: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Collects rows; `fault` names a formula whose value is shifted by one
/// before comparison, to exercise the failure path.
struct Report {
    rows: Vec<CountRow>,
    fault: Option<String>,
}

impl Report {
    fn shift(&self, name: &str) -> bool {
        self.fault.as_deref() == Some(name)
    }

    /// Equality check; `formula` is the closed form, `oracle` the independent value.
    fn equal(&mut self, name: &str, params: String, formula: BigRational, oracle: BigRational) {
        let formula = if self.shift(name) {
            formula + BigRational::one()
        } else {
            formula
        };
        let pass = formula == oracle;
        self.rows.push(CountRow {
            formula: name.to_string(),
            params,
            expected: formula.to_string(),
            actual: oracle.to_string(),
            pass,
        });
    }

    /// One-sided check `value <= bound`.
    fn at_most(&mut self, name: &str, params: String, value: BigRational, bound: BigRational) {
        let value = if self.shift(name) {
            value + BigRational::one()
        } else {
            value
        };
        let pass = value <= bound;
        self.rows.push(CountRow {
            formula: name.to_string(),
            params,
            expected: format!("<= {bound}"),
            actual: value.to_string(),
            pass,
        });
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn uint(v: num_bigint::BigUint) -> BigRational {
    int(BigInt::from(v))
}

/// Runs every identity with no injected fault.
pub fn verification_report() -> Result<Vec<CountRow>> {
    verification_report_with(None)
}

/// Runs every identity; see [`Report`] for `fault`.
pub fn verification_report_with(fault: Option<&str>) -> Result<Vec<CountRow>> {
    let mut r = Report {
        rows: Vec::new(),
        fault: fault.map(str::to_string),
    };

    for d in 0..=6 {
        for k in 0..=d {
            let enumerated = brute::all_subspaces(d, k)?.len();
            r.equal(
                "gaussian_binomial",
                format!("m={d} r={k}"),
                uint(c::gaussian_binomial(d, k)?),
                int(enumerated),
            );
        }
    }
    for m in 0..=32 {
        for k in 0..=m {
            r.equal(
                "gaussian_binomial_symmetry",
                format!("m={m} r={k}"),
                uint(c::gaussian_binomial(m, k)?),
                uint(c::gaussian_binomial(m, m - k)?),
            );
        }
    }

    for n in 0..=3 {
        for m in 0..=n {
            let fam = brute::iso_lag_counts(n, m)?;
            let total: num_bigint::BigUint = fam.iter().sum();
            r.equal(
                "num_isotropic",
                format!("n={n} m={m}"),
                uint(c::num_isotropic(n, m)?),
                uint(total),
            );
            r.equal(
                "zero_intersection_count",
                format!("n={n} m={m}"),
                uint(c::zero_intersection_count(n, m)?),
                uint(fam[0].clone()),
            );
            for (l, count) in fam.iter().enumerate() {
                r.equal(
                    "iso_lag_intersection_count",
                    format!("n={n} m={m} l={l}"),
                    uint(c::iso_lag_intersection_count(n, m, l)?),
                    uint(count.clone()),
                );
            }
        }
        for (l, count) in brute::lagrangian_intersection_counts(n)?.into_iter().enumerate() {
            r.equal(
                "lagrangian_intersection_count",
                format!("n={n} l={l}"),
                uint(c::lagrangian_intersection_count(n, l)?),
                uint(count),
            );
        }
    }

    for n in 0..=32 {
        let mut prod = num_bigint::BigUint::one();
        for i in 1..=n {
            prod *= c::pow2(i) + 1u32;
        }
        r.equal(
            "num_lagrangian_product",
            format!("n={n}"),
            uint(c::num_isotropic(n, n)?),
            uint(prod),
        );
        let sum: num_bigint::BigUint = (0..=n)
            .map(|l| c::lagrangian_intersection_count(n, l))
            .sum::<Result<_>>()?;
        r.equal(
            "lagrangian_intersection_sum",
            format!("n={n}"),
            uint(sum),
            uint(c::num_isotropic(n, n)?),
        );
        for m in (0..=n).step_by(if n > 12 { 5 } else { 1 }) {
            let sum: num_bigint::BigUint = (0..=m)
                .map(|l| c::iso_lag_intersection_count(n, m, l))
                .sum::<Result<_>>()?;
            r.equal(
                "iso_lag_intersection_sum",
                format!("n={n} m={m}"),
                uint(sum),
                uint(c::num_isotropic(n, m)?),
            );
        }
        r.equal(
            "generating_G2_closed",
            format!("n={n}"),
            c::generating_g(n, &int(2))?,
            c::generating_g2_closed(n),
        );
        r.equal(
            "generating_G4_closed",
            format!("n={n}"),
            c::generating_g(n, &int(4))?,
            c::generating_g4_closed(n),
        );
        for s in [BigRational::new(1.into(), 3.into()), int(3), int(7)] {
            r.equal(
                "generating_G_product_form",
                format!("n={n} s={s}"),
                c::generating_g(n, &s)?,
                c::generating_g_by_sum(n, &s)?,
            );
        }
    }

    for n in 0..=3 {
        for t in 0..=n {
            for k in 1..=4u32 {
                r.equal(
                    "moment_intersection",
                    format!("n={n} t={t} c={k}"),
                    c::moment_intersection(n, t, k as usize)?,
                    brute::moment(n, t, k)?,
                );
            }
        }
    }
    for t in 0..=6 {
        let n = 48;
        let m2 = c::moment_intersection(n, t, 2)?;
        r.at_most("moment_below_f_t", format!("n={n} t={t}"), m2.clone(), c::f_t(t));
        r.at_most(
            "f_t_gap",
            format!("n={n} t={t}"),
            c::f_t(t) - m2,
            int(32) * pow2r(-(n as i64)),
        );
    }

    for n in 1..=3 {
        for kappa in 0..=n {
            for m in 0..=n {
                r.equal(
                    "mu",
                    format!("n={n} kappa={kappa} m={m}"),
                    c::mu(n, kappa, m)?,
                    brute::mu(n, kappa, m)?,
                );
                r.equal(
                    "gamma",
                    format!("n={n} m={m} kappa={kappa}"),
                    c::gamma(n, m, kappa)?,
                    brute::gamma(n, m, kappa)?,
                );
            }
        }
    }
    for n in [4usize, 8, 16, 32] {
        for kappa in (0..=n).step_by(n / 4) {
            for m in (0..=n).step_by(n / 4) {
                r.at_most(
                    "mu_bound",
                    format!("n={n} kappa={kappa} m={m}"),
                    c::mu(n, kappa, m)?,
                    c::mu_bound(n, m),
                );
                r.at_most(
                    "gamma_bound",
                    format!("n={n} m={m} kappa={kappa}"),
                    c::gamma(n, m, kappa)?,
                    c::gamma_bound(n, m, kappa),
                );
            }
        }
    }

    for n in 1..=3 {
        for t in 0..=n {
            let rows = c::full_block_transitions(n, t)?;
            for (a, row) in rows.iter().enumerate().take(n - t + 1) {
                let want = brute::full_block_transition_row(n, t, a)?;
                for (b, (p, q)) in row.iter().zip(&want).enumerate() {
                    r.equal(
                        "full_block_transition",
                        format!("n={n} t={t} a={a} b={b}"),
                        p.clone(),
                        q.clone(),
                    );
                }
            }
        }
    }

    for k in 1..=2 {
        r.equal(
            "ghz_block_prob",
            format!("k={k}"),
            c::ghz_block_prob_k(k)?,
            brute::ghz_block_prob(k)?,
        );
    }
    r.equal(
        "ghz_block_two_thirds",
        "k=1".into(),
        c::ghz_block_prob(),
        c::ghz_block_prob_k(1)?,
    );

    for k in 1..=2 {
        for code in 1u64..(1 << (2 * k)) {
            let p = BitVec::from_u64(2 * k, code);
            r.equal(
                "collision_coefficient",
                format!("k={k} P={p}"),
                BigRational::new(1.into(), (BigInt::from(1) << k) + 1),
                brute::collision_fraction(k, &p)?,
            );
        }
    }

    for n in [1usize, 2, 6, 12, 24, 48, 64] {
        for k in (1..=n).filter(|k| n % k == 0) {
            let m = c::min_collision(n, k)?;
            r.at_most(
                "min_collision_upper",
                format!("n={n} k={k}"),
                m.clone(),
                pow2r(-(n as i64)),
            );
            r.at_most(
                "min_collision_lower",
                format!("n={n} k={k}"),
                c::min_collision_lower_envelope(n, k)?,
                m,
            );
        }
    }

    Ok(r.rows)
}
