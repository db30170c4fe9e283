use std::f64::consts::PI;

use levyarea::oracle::{
    coupled_levy_area, extract_gammas, mc_error, reference_levy_area, tail_covariances,
    ConvergenceStudy, StoredPath,
};
use levyarea::*;
use nalgebra::{DMatrix, DVector};

fn unit_increment(src: &mut GaussianSource, m: usize) -> StandardizedIncrement {
    let mut w = DVector::zeros(m);
    src.fill(w.as_mut_slice());
    StandardizedIncrement::unit(w).unwrap()
}

/// Mean, sample variance, and standard errors of both.
fn moments(x: &[f64]) -> (f64, f64, f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let m4 = x.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
    (mean, var, (var / n).sqrt(), ((m4 - var * var) / n).sqrt())
}

fn sample_a12(alg: AlgorithmId, p: usize, reps: usize, seed: u64) -> Vec<f64> {
    let gen = LevyGenerator::new(alg, TruncationParameter::new(p).unwrap());
    (0..reps)
        .map(|k| {
            let mut src = GaussianSource::stream(seed, k as u64);
            let w = unit_increment(&mut src, 2);
            gen.generate(&w, &mut src).unwrap().matrix()[(0, 1)]
        })
        .collect()
}

#[test]
fn fourier_variance_matches_truncation() {
    let x = sample_a12(AlgorithmId::Fourier, 100, 10_000, 1);
    let (_, var, _, se) = moments(&x);
    let want = 0.25 - 3.0 / (2.0 * PI * PI) * trigamma_tail(100);
    assert!((want - 0.248_488).abs() < 1e-6);
    assert!((var - want).abs() <= 3.0 * se, "{var} vs {want} (se {se})");
}

#[test]
fn entries_have_mean_zero_and_limit_variance() {
    for (i, alg) in AlgorithmId::ALL.into_iter().enumerate() {
        let x = sample_a12(alg, 1000, 10_000, 10 + i as u64);
        let (mean, var, se_mean, se_var) = moments(&x);
        assert!(mean.abs() <= 3.0 * se_mean, "{alg}: mean {mean}");
        assert!((var - 0.25).abs() <= 3.0 * se_var, "{alg}: var {var}");
    }
}

#[test]
fn integrals_have_mean_zero() {
    let (m, reps) = (3, 10_000);
    let mut sums = vec![Vec::with_capacity(reps); m * m];
    for k in 0..reps {
        let mut src = GaussianSource::stream(77, k as u64);
        let w = unit_increment(&mut src, m);
        let w = WienerIncrement::new(w.values() * 0.1, 0.01).unwrap();
        let sim = simulate(&w, &SimulationOptions::default(), &mut src).unwrap();
        for (s, v) in sums.iter_mut().zip(sim.integrals.matrix().iter()) {
            s.push(*v);
        }
    }
    for s in &sums {
        let (mean, _, se, _) = moments(s);
        assert!(mean.abs() <= 3.0 * se, "mean {mean} se {se}");
    }
}

#[test]
fn milstein_tail_vector_is_standard() {
    let (m, p, p_ref, paths) = (2, 10, 1000, 10_000);
    let mut g = vec![Vec::with_capacity(paths); m];
    for k in 0..paths {
        let path = StoredPath::simulate(m, p_ref, &mut GaussianSource::stream(3, k as u64)).unwrap();
        let gammas = extract_gammas(&path, p).unwrap();
        for (c, v) in g.iter_mut().zip(gammas.gamma1.iter()) {
            c.push(*v);
        }
    }
    for c in &g {
        let (mean, var, _, _) = moments(c);
        assert!(mean.abs() <= 3.0 / (paths as f64).sqrt(), "mean {mean}");
        assert!((var - 1.0).abs() <= 0.05, "var {var}");
    }
}

#[test]
fn mronroe_tail_vector_is_whitened() {
    let (m, p, p_ref, paths) = (3, 10, 100_000, 10_000);
    let big = m * (m - 1) / 2;
    let mut cov = DMatrix::<f64>::zeros(big, big);
    let mut mean = DVector::<f64>::zeros(big);
    for k in 0..paths {
        let path = StoredPath::simulate(m, p_ref, &mut GaussianSource::stream(4, k as u64)).unwrap();
        let g = extract_gammas(&path, p).unwrap().gamma2;
        cov += &g * g.transpose();
        mean += g;
    }
    let n = paths as f64;
    mean /= n;
    let cov = (cov - &mean * mean.transpose() * n) / (n - 1.0);
    let dev = (cov - DMatrix::<f64>::identity(big, big)).amax();
    assert!(dev <= 5e-2, "max deviation {dev}");
}

#[test]
fn second_tail_covariance_tends_to_identity() {
    let path = StoredPath::simulate(3, 100_000, &mut GaussianSource::new(5)).unwrap();
    let dev = |p| {
        let (_, s2) = tail_covariances(&path, p).unwrap();
        (s2.matrix() - DMatrix::<f64>::identity(3, 3)).amax()
    };
    // the effective sample size of the weighted tail grows with p
    assert!(dev(10) < 0.5);
    assert!(dev(10_000) < 0.05);
    assert!(dev(10_000) < dev(10));
}

#[test]
fn reference_matches_its_own_coupling() {
    let path = StoredPath::simulate(4, 500, &mut GaussianSource::new(6)).unwrap();
    let r = reference_levy_area(&path).unwrap();
    let f = coupled_levy_area(AlgorithmId::Fourier, &path, 500).unwrap();
    assert_eq!(r, f);
}

#[test]
fn coupled_milstein_beats_fourier() {
    let study = ConvergenceStudy::new(2, 10_000, 10_000, ErrorNorm::MaxL2, 8);
    let cells = study
        .run(&[AlgorithmId::Fourier, AlgorithmId::Milstein], &[10])
        .unwrap();
    assert!(cells[1].error.estimate < cells[0].error.estimate);
}

#[test]
fn fourier_error_matches_finite_tail() {
    let e = mc_error(AlgorithmId::Fourier, 2, 10, 10_000, 10_000, ErrorNorm::MaxL2, 2).unwrap();
    let tail: f64 = (11..=10_000u64).map(|r| 1.0 / (r * r) as f64).sum();
    let want = (3.0 / (2.0 * PI * PI) * tail).sqrt();
    assert!((e.estimate - want).abs() <= 3.0 * e.std_error, "{e:?} vs {want}");
}

#[test]
fn reference_error_formula() {
    // distance between Fourier approximations at p and at p_ref, Frobenius
    // estimate versus the summed off-diagonal variances
    let (m, p, p_ref) = (3, 20, 400);
    let e = mc_error(AlgorithmId::Fourier, m, p, p_ref, 4000, ErrorNorm::FrobeniusL2, 3).unwrap();
    let tail: f64 = ((p + 1)..=p_ref).map(|r| 1.0 / (r * r) as f64).sum();
    let want = ((m * m - m) as f64 * 3.0 / (2.0 * PI * PI) * tail).sqrt();
    assert!((e.estimate - want).abs() <= 3.0 * e.std_error, "{e:?} vs {want}");
}

#[test]
fn mronroe_respects_bound_at_five_dimensions() {
    let e = mc_error(AlgorithmId::MronRoe, 5, 10, 10_000, 10_000, ErrorNorm::MaxL2, 4).unwrap();
    let bound = (5.0 / (12.0 * PI * PI)).sqrt() / 10.0;
    assert!((bound - 0.020_55).abs() < 1e-5);
    assert!(e.estimate <= bound + 3.0 * e.std_error, "{e:?}");
}

#[test]
fn draws_match_across_dimensions() {
    for alg in AlgorithmId::ALL {
        for m in [1usize, 2, 5, 50] {
            for p in [1usize, 10, 100] {
                let mut src = GaussianSource::new(0);
                let w = unit_increment(&mut GaussianSource::new(1), m);
                let tp = TruncationParameter::new(p).unwrap();
                let cfg = SeriesKernelConfig::default();
                let a = match alg {
                    AlgorithmId::Fourier => fourier_levy_area(&w, tp, &cfg, &mut src),
                    AlgorithmId::Milstein => milstein_levy_area(&w, tp, &cfg, &mut src),
                    AlgorithmId::Wiktorsson => wiktorsson_levy_area(&w, tp, &cfg, &mut src),
                    AlgorithmId::MronRoe => mronroe_levy_area(&w, tp, &cfg, &mut src),
                }
                .unwrap();
                assert_eq!(a.dim(), m);
                assert_eq!(src.draw_count(), cost(alg, m, tp));
            }
        }
    }
}
