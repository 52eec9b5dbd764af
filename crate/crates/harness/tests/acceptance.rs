//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --release -p stabscope --test acceptance`.

use std::collections::{BTreeMap, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng as _;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use stabscope::experiments::{fig2a, fig2b, ghz, learn};
use stabscope::output::to_csv_with_header;
use stabscope::{BlockSpec, Experiment, ExperimentConfig, Preset};
use stabscope_core::cds::{cds_mass, cds_mass_direct, r_from_spectrum, support_subspace, ZSpectrum};
use stabscope_core::clifford::{
    collision_coefficient, enumerate_symplectic, sample_block_clifford, sample_isotropic, sample_symplectic,
};
use stabscope_core::codes::random_instance;
use stabscope_core::counting::{self as c, brute, to_f64};
use stabscope_core::learner::{subspace_mass_check, PauliSpectrum};
use stabscope_core::{BitVec, PauliVec, Rng, Subspace};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

// 1 ------------------------------------------------------------------------

fn exact_counting() -> Outcome {
    let mut checked = 0;
    for n in 0..=3 {
        for m in 0..=n {
            let fam = brute::iso_lag_counts(n, m).map_err(err)?;
            let total: num_bigint::BigUint = fam.iter().sum();
            ensure(c::num_isotropic(n, m).map_err(err)? == total, || {
                format!("num_isotropic({n},{m})")
            })?;
            ensure(c::zero_intersection_count(n, m).map_err(err)? == fam[0], || {
                format!("zero_intersection_count({n},{m})")
            })?;
            for (l, count) in fam.iter().enumerate() {
                ensure(&c::iso_lag_intersection_count(n, m, l).map_err(err)? == count, || {
                    format!("iso_lag_intersection_count({n},{m},{l})")
                })?;
            }
            checked += 2 + fam.len();
        }
        for (l, count) in brute::lagrangian_intersection_counts(n)
            .map_err(err)?
            .into_iter()
            .enumerate()
        {
            ensure(c::lagrangian_intersection_count(n, l).map_err(err)? == count, || {
                format!("lagrangian_intersection_count({n},{l})")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} exact comparisons"))
}

// 2 ------------------------------------------------------------------------

fn moment_identities() -> Outcome {
    let mut checked = 0;
    for n in 0..=3 {
        for t in 0..=n {
            for k in 1..=4u32 {
                let f = c::moment_intersection(n, t, k as usize).map_err(err)?;
                ensure(f == brute::moment(n, t, k).map_err(err)?, || {
                    format!("moment({n},{t},{k})")
                })?;
                checked += 1;
            }
        }
    }
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    for n in 0..=32 {
        ensure(
            c::generating_g(n, &two).map_err(err)? == c::generating_g2_closed(n),
            || format!("G_{n}(2)"),
        )?;
        ensure(
            c::generating_g(n, &four).map_err(err)? == c::generating_g4_closed(n),
            || format!("G_{n}(4)"),
        )?;
        checked += 2;
    }
    for n in 1..=3 {
        for kappa in 0..=n {
            for m in 0..=n {
                ensure(
                    c::mu(n, kappa, m).map_err(err)? == brute::mu(n, kappa, m).map_err(err)?,
                    || format!("mu({n},{kappa},{m})"),
                )?;
                ensure(
                    c::gamma(n, m, kappa).map_err(err)? == brute::gamma(n, m, kappa).map_err(err)?,
                    || format!("gamma({n},{m},{kappa})"),
                )?;
                checked += 2;
            }
        }
    }
    Ok(format!("{checked} exact comparisons"))
}

// 3 ------------------------------------------------------------------------

fn chi_square(counts: &[u64], draws: u64) -> f64 {
    let e = draws as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum()
}

fn critical(cells: usize) -> f64 {
    ChiSquared::new((cells - 1) as f64).unwrap().inverse_cdf(0.99)
}

fn sampler_correctness() -> Outcome {
    let draws = 100_000u64;
    let mut notes = Vec::new();
    // Same streams as the core sampler tests.
    for (k, seed) in [(1usize, 11u64), (2, 12)] {
        let mut rng = Rng::seed_from_u64(seed);
        let all = enumerate_symplectic(k).map_err(err)?;
        let index: HashMap<Vec<BitVec>, usize> =
            all.iter().enumerate().map(|(i, m)| (m.columns().to_vec(), i)).collect();
        let mut counts = vec![0u64; all.len()];
        for _ in 0..draws {
            counts[index[sample_symplectic(k, &mut rng).map_err(err)?.columns()]] += 1;
        }
        let (stat, crit) = (chi_square(&counts, draws), critical(all.len()));
        ensure(stat < crit, || format!("Sp({}) chi2 {stat:.1} >= {crit:.1}", 2 * k))?;
        notes.push(format!("Sp({}) {} cells chi2 {stat:.1}<{crit:.1}", 2 * k, all.len()));
    }
    let mut rng = Rng::seed_from_u64(301);

    let lags = brute::brute_enumerate_isotropic(2, 2).map_err(err)?;
    ensure(lags.len() == 15, || format!("{} Lagrangians at n=2", lags.len()))?;
    let index: HashMap<Subspace, usize> = lags.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut counts = vec![0u64; 15];
    for _ in 0..draws {
        counts[index[&sample_isotropic(2, 2, &mut rng).map_err(err)?]] += 1;
    }
    let (stat, crit) = (chi_square(&counts, draws), critical(15));
    ensure(stat < crit, || format!("Lagrangian chi2 {stat:.1} >= {crit:.1}"))?;
    notes.push(format!("Lag(2) chi2 {stat:.1}<{crit:.1}"));

    let n = 6;
    let z = Subspace::z_type(n);
    let per_p = 10_000;
    let mut worst = 0f64;
    for k in [1usize, 2, 3] {
        for _ in 0..10 {
            let p = loop {
                let v = BitVec::random(2 * n, &mut rng);
                if !v.is_zero() {
                    break PauliVec::from_bits(v).map_err(err)?;
                }
            };
            let m = to_f64(&collision_coefficient(&p, n, k).map_err(err)?);
            let mut hits = 0usize;
            for _ in 0..per_p {
                let cl = sample_block_clifford(n, k, &mut rng).map_err(err)?;
                hits += z.contains(&cl.apply_bits(p.bits())).map_err(err)? as usize;
            }
            let sd = (m * (1.0 - m) / per_p as f64).sqrt();
            let dev = (hits as f64 / per_p as f64 - m).abs() / sd;
            ensure(dev <= 4.0, || format!("(6,{k}) P={p}: {dev:.2} sigma from m_P={m:.5}"))?;
            worst = worst.max(dev);
        }
    }
    notes.push(format!("m_P worst {worst:.2} sigma over 30 P"));
    Ok(notes.join("; "))
}

// 4 ------------------------------------------------------------------------

fn ghz_worst_case() -> Outcome {
    let mut cfg = ExperimentConfig::preset(Experiment::Ghz, Preset::Desk);
    cfg.n = vec![4, 6, 30];
    cfg.k = vec![BlockSpec::Fixed(1)];
    cfg.trials = 4000;
    let rows = ghz::rows(&cfg, workers()).map_err(err)?;
    let mut notes = Vec::new();
    for n in [4usize, 6] {
        let hits: Vec<&ghz::GhzRow> = rows.iter().filter(|r| r.n == n).collect();
        let trials = hits.len() as f64;
        let p = to_f64(&c::ghz_escape_exact(n, 1).map_err(err)?);
        let bound = to_f64(&c::ghz_escape_bound(n, 1).map_err(err)?);
        ensure((p - bound).abs() < 1e-15, || {
            format!("n={n}: product {p} vs (2/3)^n {bound}")
        })?;
        let rate = hits.iter().map(|r| r.hit_coset as f64).sum::<f64>() / trials;
        let sd = (p * (1.0 - p) / trials).sqrt();
        ensure((rate - p).abs() <= 4.0 * sd, || {
            format!("n={n}: rate {rate:.4} vs {p:.4} (sd {sd:.4})")
        })?;
        let escape = hits.iter().map(|r| r.hit as f64).sum::<f64>() / trials;
        ensure(escape <= bound + 4.0 * (bound * (1.0 - bound) / trials).sqrt(), || {
            format!("n={n}: S minus T0 rate {escape:.4} above (2/3)^n")
        })?;
        notes.push(format!("n={n} rate {rate:.4} vs {p:.4}"));
    }
    let block = brute::ghz_block_prob(1).map_err(err)?;
    ensure(block == BigRational::new(2.into(), 3.into()), || {
        format!("Sp(2) scan gives {block}")
    })?;
    ensure(
        c::ghz_block_prob_k(2).map_err(err)? == brute::ghz_block_prob(2).map_err(err)?,
        || "k=2 block formula disagrees with Sp(4) scan".into(),
    )?;
    let adaptive: Vec<f64> = rows
        .iter()
        .filter(|r| r.n == 30)
        .map(|r| r.adaptive_success as f64)
        .collect();
    let freq = mean(&adaptive);
    ensure(freq >= 0.99, || format!("adaptive n=30 success {freq:.4}"))?;
    notes.push(format!("Sp(2) block 2/3; adaptive n=30 {freq:.4}"));
    Ok(notes.join("; "))
}

// 5 ------------------------------------------------------------------------

fn fig2a_desk() -> Outcome {
    let cfg = ExperimentConfig::preset(Experiment::Fig2a, Preset::Desk);
    let rows = fig2a::rows(&cfg, workers()).map_err(err)?;
    let mut means: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    for r in &rows {
        let m = r
            .m_rounds
            .ok_or_else(|| format!("t={} k={} trial {} hit the cap", r.t, r.k, r.trial))?;
        means.entry((r.t, r.k)).or_default().push(m as f64);
    }
    let mean_at = |t: usize, k: usize| means.get(&(t, k)).map(|v| mean(v));
    let n = cfg.n[0];
    let mut ratios = Vec::new();
    for t in 0..=4 {
        for k in [1, n] {
            let (a, b) = (
                mean_at(t, k).ok_or("missing point")?,
                mean_at(t + 1, k).ok_or("missing point")?,
            );
            let ratio = b / a;
            ensure((1.7..=2.3).contains(&ratio), || {
                format!("k={k} t={t}->{}: ratio {ratio:.3}", t + 1)
            })?;
            ratios.push(ratio);
        }
    }
    let mut worst_gap = 0f64;
    for t in 0..=5 {
        let (one, full) = (
            mean_at(t, 1).ok_or("missing point")?,
            mean_at(t, n).ok_or("missing point")?,
        );
        let gap = (one - full).abs() / full;
        ensure(gap <= 0.2, || format!("t={t}: k=1 {one:.1} vs k=n {full:.1}"))?;
        worst_gap = worst_gap.max(gap);
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(format!(
        "ratios in [{lo:.3}, {hi:.3}]; worst k gap {:.1}%; mean(t=0,k=n) {:.1}",
        100.0 * worst_gap,
        mean_at(0, n).unwrap_or(f64::NAN)
    ))
}

// 6 ------------------------------------------------------------------------

fn fig2b_desk() -> Outcome {
    let cfg = ExperimentConfig::preset(Experiment::Fig2b, Preset::Desk);
    let (planted, null) = fig2b::rows(&cfg, workers()).map_err(err)?;
    let rate = |rows: &[fig2b::Fig2bRow], p: f64, ns: usize| {
        let v: Vec<f64> = rows
            .iter()
            .filter(|r| r.p_err == p && r.n_s == ns)
            .map(|r| r.success as f64)
            .collect();
        mean(&v)
    };
    for &p in &cfg.p_err {
        for w in cfg.n_s.windows(2) {
            let (a, b) = (rate(&planted, p, w[0]), rate(&planted, p, w[1]));
            ensure(b >= a - 0.05, || {
                format!("p_err={p}: p_suc drops {a:.3} -> {b:.3} at N_S={}", w[1])
            })?;
        }
    }
    for &ns in &cfg.n_s {
        let (low, high) = (rate(&planted, 0.01, ns), rate(&planted, 0.1, ns));
        ensure(low >= high, || {
            format!("N_S={ns}: p_err=0.01 {low:.3} below p_err=0.1 {high:.3}")
        })?;
    }
    let largest = *cfg.n_s.last().ok_or("empty N_S list")?;
    let clean = rate(&planted, 0.0, largest);
    ensure(clean >= 0.99, || format!("noiseless p_suc {clean:.3} at N_S={largest}"))?;

    let alpha = cfg.alpha;
    let cap = alpha + 3.0 * (alpha * (1.0 - alpha) / cfg.null_trials as f64).sqrt();
    let mut worst_fp = 0f64;
    for &ns in &cfg.n_s {
        let fp = 1.0 - rate(&null, 0.0, ns);
        ensure(fp <= cap, || format!("N_S={ns}: false positives {fp:.3} > {cap:.3}"))?;
        worst_fp = worst_fp.max(fp);
    }
    let crossing = |p: f64| cfg.n_s.iter().find(|&&ns| rate(&planted, p, ns) >= 0.9).copied();
    Ok(format!(
        "p_suc(0,{largest}) {clean:.3}; worst false-positive {worst_fp:.3} <= {cap:.3}; N_S for 0.9: {:?} at 0.01, {:?} at 0.1",
        crossing(0.01),
        crossing(0.1)
    ))
}

// 7 ------------------------------------------------------------------------

fn algorithm1_end_to_end() -> Outcome {
    let cfg = ExperimentConfig::preset(Experiment::Learn, Preset::Desk);
    let rows = learn::rows(&cfg, workers()).map_err(err)?;
    let mut points: BTreeMap<(usize, usize), Vec<&learn::LearnRow>> = BTreeMap::new();
    for r in &rows {
        ensure(r.isotropic == 1, || {
            format!("n={} t={} trial {}: output not isotropic", r.n, r.t, r.trial)
        })?;
        ensure(r.success == 0 || r.contains_weyl == 1, || {
            format!("n={} t={} trial {}", r.n, r.t, r.trial)
        })?;
        points.entry((r.n, r.t)).or_default().push(r);
    }
    ensure(points.len() == cfg.n.len() * cfg.t.len(), || {
        format!("{} points", points.len())
    })?;
    let mut worst = 1f64;
    for ((n, t), v) in &points {
        let p = v.iter().map(|r| r.success as f64).sum::<f64>() / v.len() as f64;
        ensure(v.len() >= 200 && p >= 0.9, || {
            format!("n={n} t={t}: success {p:.3} over {}", v.len())
        })?;
        worst = worst.min(p);
    }
    Ok(format!(
        "{} points x {} trials; worst success {worst:.3}",
        points.len(),
        cfg.trials
    ))
}

// 8 ------------------------------------------------------------------------

fn random_subspace(n: usize, rng: &mut Rng) -> Result<Subspace, String> {
    let r = rng.gen_range(0..=n);
    let vs: Vec<BitVec> = (0..r).map(|_| BitVec::random(n, rng)).collect();
    Subspace::span(n, &vs).map_err(err)
}

fn cds_identities() -> Outcome {
    let mut rng = Rng::seed_from_u64(801);
    let mut masses = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=10);
        let t = rng.gen_range(0..=n);
        let weyl = random_instance(n, t, &mut rng).map_err(err)?.weyl;
        let spec = ZSpectrum::from_stabilizer(&weyl).map_err(err)?;
        let dist = r_from_spectrum(&spec).map_err(err)?;
        let h = support_subspace(&weyl).map_err(err)?;
        let uniform = BigRational::new(BigInt::one(), BigInt::one() << h.dim());
        let mut total = BigRational::zero();
        for a in 0..1u64 << n {
            let a = BitVec::from_u64(n, a);
            let p = dist.prob(&a);
            let inside = h.contains(&a).map_err(err)?;
            ensure(if inside { p == uniform } else { p.is_zero() }, || {
                format!("instance {i}: r({a}) = {p}, inside H = {inside}")
            })?;
            total += p;
        }
        ensure(total.is_one(), || format!("instance {i}: total mass {total}"))?;
        ensure(cds_mass(&h, &spec).map_err(err)?.is_one(), || {
            format!("instance {i}: r(H) != 1")
        })?;
        for _ in 0..3 {
            let sub = random_subspace(n, &mut rng)?;
            let (a, b) = (
                cds_mass(&sub, &spec).map_err(err)?,
                cds_mass_direct(&sub, &dist).map_err(err)?,
            );
            ensure(a == b, || format!("instance {i}: mass identity {a} vs {b}"))?;
            masses += 1;
        }
    }
    Ok(format!("100 instances, {masses} mass identities"))
}

// 9 ------------------------------------------------------------------------

/// A few elements of `weyl`, plus an arbitrary vector with probability `p_out`.
fn near(weyl: &Subspace, p_out: f64, rng: &mut Rng) -> Result<Subspace, String> {
    let elems: Vec<BitVec> = weyl.enumerate().map_err(err)?.collect();
    let mut vs: Vec<BitVec> = (0..rng.gen_range(1..=2))
        .map(|_| elems[rng.gen_range(0..elems.len())].clone())
        .collect();
    if rng.gen_bool(p_out) {
        vs.push(BitVec::random(weyl.ambient(), rng));
    }
    Subspace::span(weyl.ambient(), &vs).map_err(err)
}

fn subspace_sum_bound() -> Outcome {
    let mut rng = Rng::seed_from_u64(901);
    let mut informative = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=8);
        let t = rng.gen_range(0..=n.min(3));
        let weyl = random_instance(n, t, &mut rng).map_err(err)?.weyl;
        let spec = PauliSpectrum::from_stabilizer(&weyl).map_err(err)?;
        let parts: Vec<Subspace> = (0..4).map(|_| near(&weyl, 0.3, &mut rng)).collect::<Result<_, _>>()?;
        let eps: Vec<BigRational> = parts
            .iter()
            .map(|s| subspace_mass_check(s, &spec).map(|m| BigRational::one() - m))
            .collect::<Result<_, _>>()
            .map_err(err)?;

        let pair = parts[0].sum(&parts[1]).map_err(err)?;
        let mass = subspace_mass_check(&pair, &spec).map_err(err)?;
        let bound = BigRational::one() - &eps[0] - &eps[1];
        ensure(mass >= bound, || format!("fixture {i}: pair mass {mass} < {bound}"))?;

        let mut acc = parts[0].clone();
        let mut eps_sum = eps[0].clone();
        for (s, e) in parts.iter().zip(&eps).skip(1) {
            acc = acc.sum(s).map_err(err)?;
            eps_sum += e;
            let mass = subspace_mass_check(&acc, &spec).map_err(err)?;
            let bound = BigRational::one() - &eps_sum;
            ensure(mass >= bound, || format!("fixture {i}: chain mass {mass} < {bound}"))?;
        }
        informative += (eps_sum < BigRational::one()) as usize;
    }
    ensure(informative >= 25, || {
        format!("only {informative} fixtures with a non-vacuous chain bound")
    })?;
    Ok(format!("100 fixtures, {informative} with non-vacuous chain bound"))
}

// 10 -----------------------------------------------------------------------

fn small_configs() -> Vec<ExperimentConfig> {
    let desk = |e| ExperimentConfig::preset(e, Preset::Desk);
    let mut fig2a = desk(Experiment::Fig2a);
    fig2a.n = vec![20];
    fig2a.t = vec![0, 1];
    fig2a.trials = 12;
    let mut fig2b = desk(Experiment::Fig2b);
    fig2b.n = vec![10];
    fig2b.n_s = vec![64, 512];
    fig2b.trials = 12;
    fig2b.null_trials = 12;
    let mut fig5 = desk(Experiment::Fig5);
    fig5.trials = 4;
    let mut ghz = desk(Experiment::Ghz);
    ghz.trials = 20;
    let mut learn = desk(Experiment::Learn);
    learn.n = vec![12];
    learn.t = vec![0, 2];
    learn.trials = 6;
    vec![fig2a, fig2b, fig5, ghz, desk(Experiment::Counts), learn]
}

fn serialized(cfg: &ExperimentConfig, workers: usize) -> Result<Vec<(String, Vec<u8>)>, String> {
    let out = stabscope::run(cfg, workers).map_err(err)?;
    let mut files = out.files.clone();
    let header = ["experiment", "point", "metric", "count", "missing", "mean", "std"];
    files.push((
        "summary.csv".into(),
        to_csv_with_header(&header, &out.summary).map_err(err)?,
    ));
    Ok(files)
}

fn reproducibility() -> Outcome {
    let mut names = Vec::new();
    for cfg in small_configs() {
        let one = serialized(&cfg, 1)?;
        let eight = serialized(&cfg, 8)?;
        ensure(one == eight, || {
            format!("{}: output differs between 1 and 8 workers", cfg.experiment)
        })?;
        let again = serialized(&cfg, 1)?;
        ensure(one == again, || format!("{}: repeated run differs", cfg.experiment))?;
        let bytes: usize = one.iter().map(|(_, b)| b.len()).sum();
        names.push(format!("{} {}B", cfg.experiment, bytes));
    }
    Ok(names.join(", "))
}

// --------------------------------------------------------------------------

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "exact counting suite",
            budget: secs(60),
            run: exact_counting,
        },
        Criterion {
            id: 2,
            name: "moment identities",
            budget: secs(120),
            run: moment_identities,
        },
        Criterion {
            id: 3,
            name: "sampler correctness",
            budget: secs(120),
            run: sampler_correctness,
        },
        Criterion {
            id: 4,
            name: "GHZ worst case",
            budget: secs(60),
            run: ghz_worst_case,
        },
        Criterion {
            id: 5,
            name: "rounds-to-span sweep",
            budget: secs(600),
            run: fig2a_desk,
        },
        Criterion {
            id: 6,
            name: "noisy parity recovery",
            budget: secs(600),
            run: fig2b_desk,
        },
        Criterion {
            id: 7,
            name: "Algorithm 1 end to end",
            budget: secs(600),
            run: algorithm1_end_to_end,
        },
        Criterion {
            id: 8,
            name: "CDS identities",
            budget: secs(60),
            run: cds_identities,
        },
        Criterion {
            id: 9,
            name: "subspace-sum bound",
            budget: secs(30),
            run: subspace_sum_bound,
        },
        Criterion {
            id: 10,
            name: "reproducibility",
            budget: secs(600),
            run: reproducibility,
        },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();

    let mut failed = 0;
    for cr in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(cr.run))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > cr.budget => Err(format!("over budget; {d}")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += outcome.is_err() as usize;
        println!(
            "{tag} {:>2} {:<24} {:>6.1}s/{:<4} {detail}",
            cr.id,
            cr.name,
            took.as_secs_f64(),
            format!("{}s", cr.budget.as_secs())
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}
