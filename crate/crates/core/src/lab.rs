//! Numerical probes of the differentiability class of
//! `ξ(u) = u^{r+s} / ū^r` (extended by `ξ(0) = 0`).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FractionalMonomial {
    r: i64,
    s: i64,
}

impl FractionalMonomial {
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if r < 1 || s < 1 {
            return Err(Error::InvalidFraction { r, s });
        }
        Ok(Self { r, s })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// Exponents `(A, B)` with `ξ = u^A ū^B`.
    fn exponents(&self) -> (i64, i64) {
        (self.r + self.s, -self.r)
    }
}

pub fn xi_eval(m: FractionalMonomial, u: Complex64) -> Complex64 {
    if u == Complex64::new(0.0, 0.0) {
        return u;
    }
    let (a, b) = m.exponents();
    u.powi(a as i32) * u.conj().powi(b as i32)
}

/// `(x + iy)^{2r+s} / (x² + y²)^r`.
pub fn xi_real_form(m: FractionalMonomial, x: f64, y: f64) -> Complex64 {
    let rho = x * x + y * y;
    if rho == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::new(x, y).powi((2 * m.r + m.s) as i32) / rho.powi(m.r as i32)
}

fn falling(x: i64, k: u32) -> f64 {
    (0..k as i64).map(|i| (x - i) as f64).product()
}

/// `∂^a_u ∂^b_ū ξ` at `u ≠ 0`.
pub fn wirtinger_orders(m: FractionalMonomial, u: Complex64, a: u32, b: u32) -> Result<Complex64> {
    if u == Complex64::new(0.0, 0.0) {
        return Err(Error::DomainError);
    }
    let (ea, eb) = m.exponents();
    let c = falling(ea, a) * falling(eb, b);
    if c == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(c * u.powi((ea - a as i64) as i32) * u.conj().powi((eb - b as i64) as i32))
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

/// `∂^p_x ∂^q_y ξ` at `u ≠ 0`, expanded through `∂_x = ∂ + ∂̄` and
/// `∂_y = i(∂ − ∂̄)`.
pub fn real_partial(m: FractionalMonomial, u: Complex64, p: u32, q: u32) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=p {
        for l in 0..=q {
            let sign = if (q - l).is_multiple_of(2) { 1.0 } else { -1.0 };
            let c = binomial(p, k) * binomial(q, l) * sign;
            acc += c * wirtinger_orders(m, u, k + l, (p - k) + (q - l))?;
        }
    }
    Ok(acc * Complex64::i().powu(q))
}

pub const PROBE_RAYS: usize = 8;
pub const PROBE_RADII: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
const AGREEMENT: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderSweep {
    pub order: u32,
    /// Largest distance between two ray values of any order-`m` partial, per
    /// radius.
    pub spread: Vec<f64>,
    /// Largest distance between a ray value at the smallest radius and the
    /// finite-difference derivative at 0.
    pub origin_gap: f64,
    pub continuous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassProbe {
    pub monomial: FractionalMonomial,
    pub radii: Vec<f64>,
    pub sweeps: Vec<OrderSweep>,
    /// Largest `m` such that every order `≤ m` looks continuous; `-1` if even
    /// `ξ` does not.
    pub observed_class: i64,
}

fn ray(i: usize) -> Complex64 {
    Complex64::from_polar(1.0, 0.1 + std::f64::consts::TAU * i as f64 / PROBE_RAYS as f64)
}

/// Partial of order `(p, q)`, with value 0 at the origin.
fn partial_or_zero(m: FractionalMonomial, u: Complex64, p: u32, q: u32) -> Complex64 {
    if p + q == 0 {
        xi_eval(m, u)
    } else {
        real_partial(m, u, p, q).unwrap_or_default()
    }
}

fn sweep(m: FractionalMonomial, order: u32) -> OrderSweep {
    let h = *PROBE_RADII.last().expect("radii");
    let mut spread = vec![0.0f64; PROBE_RADII.len()];
    let mut origin_gap = 0.0f64;
    for p in (0..=order).rev() {
        let q = order - p;
        for (ri, &rad) in PROBE_RADII.iter().enumerate() {
            let vals: Vec<Complex64> = (0..PROBE_RAYS)
                .map(|i| partial_or_zero(m, rad * ray(i), p, q))
                .collect();
            for a in &vals {
                for b in &vals {
                    spread[ri] = spread[ri].max((a - b).norm());
                }
            }
        }
        let at_zero = match order {
            0 => Complex64::new(0.0, 0.0),
            _ if p > 0 => partial_or_zero(m, Complex64::new(h, 0.0), p - 1, q) / h,
            _ => partial_or_zero(m, Complex64::new(0.0, h), p, q - 1) / h,
        };
        for i in 0..PROBE_RAYS {
            let v = partial_or_zero(m, h * ray(i), p, q);
            origin_gap = origin_gap.max((v - at_zero).norm());
        }
    }
    let continuous = spread.last().copied().unwrap_or(0.0) < AGREEMENT && origin_gap < AGREEMENT;
    OrderSweep {
        order,
        spread,
        origin_gap,
        continuous,
    }
}

/// Sweeps orders `0..=max_order` along 8 rays and 5 decades of radii.
pub fn class_probe(m: FractionalMonomial, max_order: u32) -> ClassProbe {
    let sweeps: Vec<OrderSweep> = (0..=max_order).map(|k| sweep(m, k)).collect();
    let observed_class = sweeps.iter().take_while(|s| s.continuous).count() as i64 - 1;
    ClassProbe {
        monomial: m,
        radii: PROBE_RADII.to_vec(),
        sweeps,
        observed_class,
    }
}
