use lazy_sliding::linalg::{dist_sq, dot, norm, Matrix};
use lazy_sliding::objective::{
    simplex_project, L1Distance, LeastSquares, Objective, SmoothedSaddle, StochasticObjective,
};
use lazy_sliding::schedule::smoothed_lipschitz;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn random_matrix(rows: usize, cols: usize, seed: u64, sparse: bool) -> Matrix {
    let mut r = lazy_sliding::rng::seeded(seed);
    let data: Vec<f64> = (0..rows * cols)
        .map(|_| if sparse && r.gen::<f64>() < 0.7 { 0.0 } else { r.gen_range(-1.0..1.0) })
        .collect();
    if sparse {
        Matrix::csr_from_dense(rows, cols, &data).unwrap()
    } else {
        Matrix::dense(rows, cols, data).unwrap()
    }
}

fn sigma_max(a: &Matrix) -> f64 {
    let m = DMatrix::from_row_slice(a.rows(), a.cols(), &a.to_dense());
    m.singular_values().max()
}

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, n)
}

proptest! {
    #[test]
    fn least_squares_gradient_matches_differences(x in vec_strategy(5), seed in 0u64..50, sparse: bool) {
        let a = random_matrix(7, 5, seed, sparse);
        let obj = LeastSquares::new(a, vec![0.3; 7]).unwrap();
        let g = obj.gradient(&x).unwrap();
        let h = 1e-6;
        for i in 0..5 {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            let fd = (obj.value(&xp).unwrap() - obj.value(&xm).unwrap()) / (2.0 * h);
            prop_assert!((fd - g[i]).abs() <= 1e-5 * (1.0 + g[i].abs()), "{} vs {}", fd, g[i]);
        }
    }

    #[test]
    fn l1_subgradient_inequality(x in vec_strategy(6), y in vec_strategy(6), c in vec_strategy(6)) {
        let obj = L1Distance { center: c };
        let g = obj.gradient(&x).unwrap();
        let lin = obj.value(&x).unwrap() + dot(&g, &y) - dot(&g, &x);
        prop_assert!(obj.value(&y).unwrap() >= lin - 1e-12);
        prop_assert!(norm(&g) <= (6f64).sqrt() + 1e-12);
    }

    #[test]
    fn smoothed_gradient_is_lipschitz(x in vec_strategy(4), y in vec_strategy(4), tau in 0.01f64..5.0, seed in 0u64..20) {
        let saddle = SmoothedSaddle::new(random_matrix(5, 4, seed, false)).unwrap();
        let l = smoothed_lipschitz(sigma_max(&saddle.a), saddle.prox_modulus(), tau);
        let gx = saddle.smoothed(&x, tau).unwrap().grad;
        let gy = saddle.smoothed(&y, tau).unwrap().grad;
        prop_assert!(dist_sq(&gx, &gy).sqrt() <= l * dist_sq(&x, &y).sqrt() * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn projection_is_optimal(v in vec_strategy(7)) {
        let p = simplex_project(&v);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(p.iter().all(|x| *x >= 0.0));
        // variational inequality: <v - p, q - p> <= 0 at every vertex q
        for j in 0..7 {
            let mut q = vec![0.0; 7];
            q[j] = 1.0;
            let s: f64 = (0..7).map(|i| (v[i] - p[i]) * (q[i] - p[i])).sum();
            prop_assert!(s <= 1e-12);
        }
    }
}

#[test]
fn smoothness_holds_on_random_pairs() {
    let obj = LeastSquares::new(random_matrix(30, 6, 1, true), vec![1.0; 30]).unwrap();
    let l = obj.estimate_lipschitz().unwrap();
    let mut r = lazy_sliding::rng::seeded(2);
    for _ in 0..1000 {
        let x: Vec<f64> = (0..6).map(|_| r.gen_range(-3.0..3.0)).collect();
        let y: Vec<f64> = (0..6).map(|_| r.gen_range(-3.0..3.0)).collect();
        let diff = dist_sq(&obj.gradient(&x).unwrap(), &obj.gradient(&y).unwrap()).sqrt();
        assert!(diff <= l * dist_sq(&x, &y).sqrt() * (1.0 + 1e-9));
    }
}

#[test]
fn lipschitz_estimate_matches_svd() {
    for (seed, sparse) in [(1, false), (2, true), (3, false), (4, true)] {
        let a = random_matrix(40, 9, seed, sparse);
        let s = sigma_max(&a);
        let obj = LeastSquares::new(a, vec![0.0; 40]).unwrap();
        let est = obj.estimate_lipschitz().unwrap();
        assert!((est - 2.0 * s * s).abs() <= 1e-6 * est.max(1.0), "{est} vs {}", 2.0 * s * s);
    }
    let zero = LeastSquares::new(Matrix::dense(2, 2, vec![0.0; 4]).unwrap(), vec![1.0, 1.0]).unwrap();
    assert_eq!(zero.estimate_lipschitz().unwrap(), 0.0);
}

#[test]
fn samples_are_unbiased() {
    let obj = LeastSquares::new(random_matrix(6, 3, 5, false), vec![0.5; 6]).unwrap();
    let x = [0.2, -0.4, 0.9];
    let exact = obj.gradient(&x).unwrap();
    // averaging every row once reproduces the gradient exactly
    let mut mean = vec![0.0; 3];
    let m = 6.0;
    for i in 0..6 {
        let scale = 2.0 * m * (obj.a.row_dot(i, &x) - obj.b[i]);
        obj.a.row_axpy(i, scale / m, &mut mean);
    }
    for j in 0..3 {
        assert!((mean[j] - exact[j]).abs() <= 1e-12);
    }
    let mut r = lazy_sliding::rng::seeded(6);
    let n = 20000;
    let mut avg = vec![0.0; 3];
    for _ in 0..n {
        let s = obj.sample_gradient(&x, &mut r).unwrap();
        for j in 0..3 {
            avg[j] += s[j] / n as f64;
        }
    }
    assert!(dist_sq(&avg, &exact).sqrt() <= 0.1 * norm(&exact).max(1.0));
    assert!(obj.estimate_variance(&x, 999, &mut r).is_err());
}

#[test]
fn smoothed_maximizer_satisfies_kkt() {
    let saddle = SmoothedSaddle::new(random_matrix(6, 4, 7, false)).unwrap();
    let mut r = lazy_sliding::rng::seeded(8);
    let c = 1.0 / 6.0;
    for tau in [1e-3, 1e-2, 0.1, 1.0, 10.0] {
        for _ in 0..50 {
            let x: Vec<f64> = (0..4).map(|_| r.gen_range(-1.0..1.0)).collect();
            let e = saddle.smoothed(&x, tau).unwrap();
            let ax = saddle.a.mul_vec(&x);
            // gradient of the inner objective in y
            let g: Vec<f64> = (0..6).map(|i| ax[i] - tau * (e.y[i] - c)).collect();
            let support: Vec<usize> = (0..6).filter(|&i| e.y[i] > 0.0).collect();
            let nu = support.iter().map(|&i| g[i]).sum::<f64>() / support.len() as f64;
            for i in 0..6 {
                if e.y[i] > 0.0 {
                    assert!((g[i] - nu).abs() <= 1e-9 * (1.0 + nu.abs()));
                } else {
                    assert!(g[i] <= nu + 1e-9);
                }
            }
            let max = saddle.value(&x).unwrap();
            assert!(e.value >= max - 1e-12);
            assert!(e.value <= max + tau * saddle.smoothing_diameter_sq() + 1e-12);
        }
    }
    assert!(saddle.smoothed(&[0.0; 4], 0.0).is_err());
}

#[test]
fn projection_examples() {
    assert_eq!(simplex_project(&[0.2, 0.3, 0.5]), vec![0.2, 0.3, 0.5]);
    assert_eq!(simplex_project(&[2.0, 0.0]), vec![1.0, 0.0]);
    assert_eq!(simplex_project(&[1.0, 1.0]), vec![0.5, 0.5]);
    assert_eq!(simplex_project(&[0.0, 0.0, 0.0, 0.0]), vec![0.25; 4]);
    assert!(simplex_project(&[]).is_empty());
}

#[test]
fn dimension_errors() {
    let obj = LeastSquares::distance_to(&[1.0, 2.0]);
    assert!(obj.value(&[1.0]).is_err());
    assert!(obj.gradient(&[1.0, 2.0, 3.0]).is_err());
    assert!(LeastSquares::new(Matrix::identity(2), vec![0.0; 3]).is_err());
    assert_eq!(obj.value(&[1.0, 2.0]).unwrap(), 0.0);
    let l1 = L1Distance { center: vec![0.0] };
    assert!(l1.value(&[0.0, 1.0]).is_err());
    assert_eq!(l1.gradient(&[0.0]).unwrap(), vec![0.0]);
}
