use stabscope_core::codes::{color_instance, random_css_instance, steane_instance, toric_instance, CodeInstance};
use stabscope_core::learner::rounds_to_span;
use stabscope_core::Rng;

fn mean_rounds(inst: &CodeInstance, k: usize, trials: usize, rng: &mut Rng) -> f64 {
    let total: usize = (0..trials)
        .map(|_| rounds_to_span(&inst.weyl, k, rng, 100_000).unwrap().spanned().unwrap())
        .sum();
    total as f64 / trials as f64
}

#[test]
fn single_qubit_blocks_keep_up_on_codes() {
    // Holds from n = 18 upwards; the 7-qubit codes favour k = n.
    let mut rng = Rng::seed_from_u64(91);
    let insts = [
        toric_instance(3).unwrap(),
        toric_instance(4).unwrap(),
        color_instance(5).unwrap(),
        random_css_instance(30, 10, 10, &mut rng).unwrap(),
    ];
    for inst in &insts {
        let one = mean_rounds(inst, 1, 400, &mut rng);
        let full = mean_rounds(inst, inst.n, 400, &mut rng);
        assert!(one <= 1.2 * full, "{} n={}: {one} vs {full}", inst.name, inst.n);
    }
}

#[test]
fn color_three_rounds_match_steane_rounds() {
    // The two agree up to a relabeling of qubits, which both ensembles ignore.
    let (a, b) = (color_instance(3).unwrap(), steane_instance().unwrap());
    let mut rng = Rng::seed_from_u64(92);
    let trials = 2000;
    for k in [1, 7] {
        let ma: Vec<f64> = (0..trials)
            .map(|_| rounds_to_span(&a.weyl, k, &mut rng, 1000).unwrap().spanned().unwrap() as f64)
            .collect();
        let mb: Vec<f64> = (0..trials)
            .map(|_| rounds_to_span(&b.weyl, k, &mut rng, 1000).unwrap().spanned().unwrap() as f64)
            .collect();
        let stats = |m: &[f64]| {
            let mean = m.iter().sum::<f64>() / m.len() as f64;
            let var = m.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m.len() - 1) as f64;
            (mean, var / m.len() as f64)
        };
        let ((x, vx), (y, vy)) = (stats(&ma), stats(&mb));
        assert!((x - y).abs() < 4.0 * (vx + vy).sqrt(), "k={k}: {x} vs {y}");
    }
}

#[test]
fn toric_rounds_finite_for_both_ensembles() {
    let mut rng = Rng::seed_from_u64(93);
    let t = toric_instance(3).unwrap();
    for k in [1, t.n] {
        let m = mean_rounds(&t, k, 100, &mut rng);
        assert!(m.is_finite() && m > 0.0);
    }
}
