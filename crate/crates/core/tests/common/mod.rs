#![allow(dead_code)]

use mixres::poly::ExponentPair;
use mixres::{GaussianRational, MixedPolynomial, WeightVector};
use num_complex::Complex64;
use rand::Rng;

/// `z1^4 zb1^2 + z1^a zb1^(4-a) z2^b zb2^(3-b) + zb1^2 z2^3 + z2^3 zb2^3`,
/// assembled from exponent pairs so the parser is not involved.
pub fn f_ab(a: u32, b: u32) -> MixedPolynomial {
    let one = GaussianRational::from_ints(1, 0);
    let terms = [
        ([4, 0], [2, 0]),
        ([a, b], [4 - a, 3 - b]),
        ([0, 3], [2, 0]),
        ([0, 3], [0, 3]),
    ];
    MixedPolynomial::from_terms(
        2,
        terms
            .into_iter()
            .map(|(nu, mu)| (one.clone(), ExponentPair::new(nu.to_vec(), mu.to_vec()))),
    )
}

/// The twenty parameter pairs `{0..4} × {0..3}`.
pub fn family() -> impl Iterator<Item = (u32, u32)> {
    (0..=4).flat_map(|a| (0..=3).map(move |b| (a, b)))
}

pub fn w(p: &[i64]) -> WeightVector {
    WeightVector::new(p.to_vec()).unwrap()
}

/// Raw description of a convenient two-variable germ: one pure term per
/// axis plus a few mixed terms.
#[derive(Clone, Debug)]
pub struct StairSpec {
    pub axis1: (u32, u32),
    pub axis2: (u32, u32),
    pub inner: Vec<([u32; 2], [u32; 2])>,
    pub coeffs: Vec<(i64, i64)>,
}

impl StairSpec {
    pub fn build(&self) -> MixedPolynomial {
        let mut exps = vec![
            ExponentPair::new(vec![self.axis1.0, 0], vec![self.axis1.1, 0]),
            ExponentPair::new(vec![0, self.axis2.0], vec![0, self.axis2.1]),
        ];
        exps.extend(
            self.inner
                .iter()
                .map(|(nu, mu)| ExponentPair::new(nu.to_vec(), mu.to_vec())),
        );
        MixedPolynomial::from_terms(
            2,
            exps.into_iter()
                .zip(self.coeffs.iter().cycle())
                .map(|(e, &(re, im))| (GaussianRational::from_ints(re, im), e)),
        )
    }

    /// Seeded draw with axis degrees in `1..=30` and at most six inner terms
    /// whose support coordinates stay at most 30.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let axis = |rng: &mut R| {
            let d = rng.gen_range(1..=30);
            let k = rng.gen_range(0..=d);
            (k, d - k)
        };
        let axis1 = axis(rng);
        let axis2 = axis(rng);
        let inner = (0..rng.gen_range(0..=6))
            .map(|_| {
                let nu = [rng.gen_range(0..=15), rng.gen_range(0..=15)];
                let mu = [rng.gen_range(0..=15), rng.gen_range(0..=15)];
                (nu, mu)
            })
            .filter(|(nu, mu)| nu[0] + mu[0] > 0 && nu[1] + mu[1] > 0)
            .collect();
        let coeffs = (0..8).map(|_| (nonzero(rng), rng.gen_range(-3..=3))).collect();
        Self {
            axis1,
            axis2,
            inner,
            coeffs,
        }
    }
}

fn nonzero<R: Rng>(rng: &mut R) -> i64 {
    let x = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        x
    } else {
        -x
    }
}

/// A point of the torus with moduli in `[lo, hi]`.
pub fn torus_point<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect()
}

pub fn rel_err(a: Complex64, b: Complex64, scale: f64) -> f64 {
    (a - b).norm() / scale.max(f64::MIN_POSITIVE)
}
