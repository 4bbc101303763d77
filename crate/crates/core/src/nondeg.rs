//! Newton non-degeneracy of face functions: the exact vertex rule and a
//! seeded numeric search for critical zeros on the torus.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::face_function;
use crate::lattice::WeightVector;
use crate::newton;
use crate::numeric::{self, Descent};
use crate::poly::{MixedPolynomial, Wirtinger};

/// Floating-point copy of a polynomial for the sampling loop.
struct FloatPoly {
    terms: Vec<(Complex64, Vec<i32>, Vec<i32>)>,
}

impl FloatPoly {
    fn new(f: &MixedPolynomial) -> Self {
        let exps = |e: &[u32]| e.iter().map(|&x| x as i32).collect();
        Self {
            terms: f
                .terms()
                .iter()
                .map(|t| (t.coeff.to_complex(), exps(&t.exps.nu), exps(&t.exps.mu)))
                .collect(),
        }
    }

    fn term_values<'a>(&'a self, z: &'a [Complex64]) -> impl Iterator<Item = Complex64> + 'a {
        self.terms.iter().map(move |(c, nu, mu)| {
            z.iter()
                .enumerate()
                .fold(*c, |acc, (j, zj)| acc * zj.powi(nu[j]) * zj.conj().powi(mu[j]))
        })
    }

    fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        self.term_values(z).sum()
    }
}

/// `∂f/∂z_j` and `∂f/∂z̄_j` for every `j`.
struct Gradient {
    dz: Vec<FloatPoly>,
    dzb: Vec<FloatPoly>,
}

impl Gradient {
    fn new(f: &MixedPolynomial) -> Self {
        let d = |kind| (0..f.n()).map(|j| FloatPoly::new(&f.wirtinger(j, kind))).collect();
        Self {
            dz: d(Wirtinger::Dz),
            dzb: d(Wirtinger::Dzbar),
        }
    }

    /// `(v, w) = (conj ∂f, ∂̄f)`.
    fn vectors(&self, z: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        (
            self.dz.iter().map(|d| d.evaluate(z).conj()).collect(),
            self.dzb.iter().map(|d| d.evaluate(z)).collect(),
        )
    }
}

fn inner(v: &[Complex64], w: &[Complex64]) -> Complex64 {
    v.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum()
}

/// `min_{|α|=1} ‖conj ∂f − α ∂̄f‖²`; zero exactly at mixed critical points.
pub fn criticality_residual(f: &MixedPolynomial, z: &[Complex64]) -> f64 {
    let (v, w) = Gradient::new(f).vectors(z);
    residual_of(&v, &w)
}

fn residual_of(v: &[Complex64], w: &[Complex64]) -> f64 {
    (norm_sqr(v) + norm_sqr(w) - 2.0 * inner(v, w).norm()).max(0.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NondegVerdict {
    /// Single monomial with `ν ≠ μ`: no mixed critical point on the torus.
    StronglyNdExact,
    /// Single monomial `c|z^ν|²`: every point is critical but 0 is never a
    /// value.
    NdExact,
    NoViolationFound,
    /// A torus point with `f_Δ ≈ 0` and vanishing criticality residual.
    Violation {
        point: Vec<[f64; 2]>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalityReport {
    pub face_weight: WeightVector,
    pub verdict: NondegVerdict,
    /// Smallest `(|f|/M)² + residual/D` seen; 0 for exact verdicts.
    pub min_residual: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Exact verdict for a vertex face carrying one monomial.
pub fn vertex_rule(f: &MixedPolynomial, p: &WeightVector) -> Result<NondegVerdict> {
    let g = face_function(f, p)?;
    match g.terms() {
        [t] if t.exps.nu != t.exps.mu => Ok(NondegVerdict::StronglyNdExact),
        [_] => Ok(NondegVerdict::NdExact),
        _ => Err(Error::NotASingleMonomialVertex(p.as_slice().to_vec())),
    }
}

const VIOLATION_THRESHOLD: f64 = 1e-10;
const SLICE_LOG_BOUND: f64 = 3.0;

/// Keeps `s` on the slice `⟨P, s⟩ = 0` inside the box `|s_j| ≤ 3`.
fn project_to_slice(x: &mut [f64], p: &[i64]) {
    let n = p.len();
    let pp: f64 = p.iter().map(|&a| (a * a) as f64).sum();
    for _ in 0..2 {
        let ps: f64 = p.iter().zip(&x[..n]).map(|(&a, s)| a as f64 * s).sum();
        for (s, &a) in x[..n].iter_mut().zip(p) {
            *s -= ps / pp * a as f64;
        }
        numeric::clamp_moduli(x, SLICE_LOG_BOUND);
    }
}

/// `M = Σ |term|` and `D = Σ_terms Σ_j |∂_j term|² + |∂̄_j term|²`.
fn scales(g: &FloatPoly, z: &[Complex64]) -> (f64, f64) {
    let mut m = 0.0;
    let mut d = 0.0;
    for ((_, nu, mu), value) in g.terms.iter().zip(g.term_values(z)) {
        let mag = value.norm();
        m += mag;
        for (j, zj) in z.iter().enumerate() {
            let r = mag / zj.norm();
            d += (r * nu[j] as f64).powi(2) + (r * mu[j] as f64).powi(2);
        }
    }
    (m, d)
}

/// Residual vector `[f/M, (v − αw)/√D]` split into real parts.
fn residual_vector(g: &FloatPoly, grad: &Gradient, z: &[Complex64]) -> Vec<f64> {
    let (m, d) = scales(g, z);
    let fz = g.evaluate(z) / m;
    let (v, w) = grad.vectors(z);
    let ip = inner(&v, &w);
    let alpha = if ip.norm() > 0.0 {
        ip / ip.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let sd = d.sqrt().max(f64::MIN_POSITIVE);
    let mut out = vec![fz.re, fz.im];
    for (a, b) in v.iter().zip(&w) {
        let e = (a - alpha * b) / sd;
        out.push(e.re);
        out.push(e.im);
    }
    out
}

/// Searches the torus for a critical zero of `f_P`. Finding none is not a
/// proof of non-degeneracy.
pub fn sample_nondegeneracy(
    f: &MixedPolynomial,
    p: &WeightVector,
    samples: usize,
    seed: u64,
) -> Result<CriticalityReport> {
    let face_fn = face_function(f, p)?;
    let n = face_fn.n();
    let grad = Gradient::new(&face_fn);
    let g = FloatPoly::new(&face_fn);
    let pv = p.as_slice().to_vec();
    let descent = Descent {
        max_iter: 200,
        target: 1e-24,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_residual = f64::INFINITY;
    let mut verdict = NondegVerdict::NoViolationFound;
    for _ in 0..samples {
        let x0 = numeric::random_start(&mut rng, n, 1.0);
        let (x, cost) = numeric::levenberg_marquardt(
            |x| residual_vector(&g, &grad, &numeric::torus(x)),
            |x| project_to_slice(x, &pv),
            x0,
            descent,
        );
        min_residual = min_residual.min(cost);
        let z = numeric::torus(&x);
        let (m, d) = scales(&g, &z);
        let (v, w) = grad.vectors(&z);
        if g.evaluate(&z).norm() / m < VIOLATION_THRESHOLD && residual_of(&v, &w) / d < VIOLATION_THRESHOLD {
            verdict = NondegVerdict::Violation {
                point: z.iter().map(|c| [c.re, c.im]).collect(),
            };
            break;
        }
    }
    Ok(CriticalityReport {
        face_weight: p.clone(),
        verdict,
        min_residual,
        samples,
        seed,
    })
}

/// Vertex rule on single-monomial vertices, sampling otherwise.
pub fn probe_face(f: &MixedPolynomial, p: &WeightVector, samples: usize, seed: u64) -> Result<CriticalityReport> {
    let face = newton::face(f, p)?;
    if !face.is_compact() {
        return Err(Error::NonCompactFace(p.as_slice().to_vec()));
    }
    match vertex_rule(f, p) {
        Ok(verdict) => Ok(CriticalityReport {
            face_weight: p.clone(),
            verdict,
            min_residual: 0.0,
            samples: 0,
            seed,
        }),
        Err(Error::NotASingleMonomialVertex(_)) => sample_nondegeneracy(f, p, samples, seed),
        Err(e) => Err(e),
    }
}
