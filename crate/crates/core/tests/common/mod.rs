#![allow(dead_code)]

use hopf_designs::{PointS1, PointS2, PointS3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Uniform point on S² from a normalized Gaussian vector.
pub fn random_s2<R: Rng>(rng: &mut R) -> PointS2 {
    let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    PointS2::new(v[0] / n, Complex64::new(v[1] / n, v[2] / n)).unwrap()
}

/// Uniform point on S³ from a normalized Gaussian vector.
pub fn random_s3<R: Rng>(rng: &mut R) -> PointS3 {
    let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    PointS3::new(
        Complex64::new(v[0] / n, v[1] / n),
        Complex64::new(v[2] / n, v[3] / n),
    )
    .unwrap()
}

pub fn random_s1<R: Rng>(rng: &mut R) -> PointS1 {
    PointS1::from_angle(rng.random_range(0.0..std::f64::consts::TAU))
}

pub fn s2_distance(a: &PointS2, b: &PointS2) -> f64 {
    ((a.xi() - b.xi()).powi(2) + (a.eta() - b.eta()).norm_sqr()).sqrt()
}
