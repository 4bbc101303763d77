//! Mixed polynomials `Σ c_{ν,μ} z^ν z̄^μ` with exact Gaussian-rational
//! coefficients.
//!
//! Variable indices are 0-based in the Rust API and 1-based in text (`z1`
//! is variable 0).

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::gaussian::GaussianRational;

/// Exponents `(ν, μ)` of `z^ν z̄^μ`.
///
/// The derived order compares `ν` first and then `μ`, i.e. the
/// lexicographic order on the concatenation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentPair {
    pub nu: Vec<u32>,
    pub mu: Vec<u32>,
}

impl ExponentPair {
    pub fn new(nu: Vec<u32>, mu: Vec<u32>) -> Self {
        assert_eq!(nu.len(), mu.len(), "ν and μ must have the same length");
        Self { nu, mu }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n], vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    /// `ν + μ`, the point of the radial support.
    pub fn radial(&self) -> Vec<i64> {
        self.nu
            .iter()
            .zip(&self.mu)
            .map(|(&a, &b)| a as i64 + b as i64)
            .collect()
    }

    /// `ν − μ`.
    pub fn polar(&self) -> Vec<i64> {
        self.nu
            .iter()
            .zip(&self.mu)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.mu.clone(), self.nu.clone())
    }

    fn combine(&self, other: &Self) -> Self {
        let add = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Self::new(add(&self.nu, &other.nu), add(&self.mu, &other.mu))
    }

    /// `true` when only variable `axis` (and its conjugate) occurs.
    pub fn supported_on(&self, axis: usize) -> bool {
        (0..self.n()).all(|j| j == axis || (self.nu[j] == 0 && self.mu[j] == 0))
            && (self.nu[axis] > 0 || self.mu[axis] > 0)
    }

    pub fn is_constant(&self) -> bool {
        self.nu.iter().chain(&self.mu).all(|&e| e == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedTerm {
    pub coeff: GaussianRational,
    pub exps: ExponentPair,
}

impl MixedTerm {
    /// The term on its own, in canonical text.
    pub fn render(&self) -> String {
        let n = self.exps.n();
        MixedPolynomial::from_terms(n, [(self.coeff.clone(), self.exps.clone())]).render()
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        let zbar: Vec<Complex64> = z.iter().map(|w| w.conj()).collect();
        self.coeff.to_complex() * monomial_value(&self.exps, z, &zbar)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wirtinger {
    /// `∂/∂z_j`
    Dz,
    /// `∂/∂z̄_j`
    Dzbar,
}

/// Per-axis convenience witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convenience {
    pub convenient: bool,
    /// For each axis, the first term supported on that axis alone.
    pub axis_terms: Vec<Option<ExponentPair>>,
    /// First axis (0-based) lacking such a term.
    pub missing_axis: Option<usize>,
}

/// Canonical mixed polynomial: terms merged, zero coefficients dropped,
/// sorted by exponent pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedPolynomial {
    n: usize,
    terms: Vec<MixedTerm>,
}

impl MixedPolynomial {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "at least one variable is required");
        Self { n, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::from_terms(n, [(c, ExponentPair::zero(n))])
    }

    /// `z_j` (`conj = false`) or `z̄_j`.
    pub fn variable(n: usize, j: usize, conj: bool) -> Self {
        let mut e = ExponentPair::zero(n);
        if conj {
            e.mu[j] = 1;
        } else {
            e.nu[j] = 1;
        }
        Self::from_terms(n, [(GaussianRational::one(), e)])
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (GaussianRational, ExponentPair)>,
    {
        let mut acc: BTreeMap<ExponentPair, GaussianRational> = BTreeMap::new();
        for (c, e) in terms {
            assert_eq!(e.n(), n, "exponent length must equal n");
            *acc.entry(e).or_insert_with(GaussianRational::zero) += &c;
        }
        Self::from_map(n, acc)
    }

    fn from_map(n: usize, acc: BTreeMap<ExponentPair, GaussianRational>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| MixedTerm { coeff, exps })
            .collect();
        Self { n, terms }
    }

    /// Parse an expression in the `z<k>` / `zb<k>` / `conj(..)` grammar.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        parse::parse(text, n)
    }

    /// Canonical text; [`MixedPolynomial::parse`] reads it back to the same
    /// polynomial.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[MixedTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// `f(0) = 0`.
    pub fn vanishes_at_origin(&self) -> bool {
        self.terms.iter().all(|t| !t.exps.is_constant())
    }

    pub fn filter<F: Fn(&MixedTerm) -> bool>(&self, keep: F) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.n, GaussianRational::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `c z^ν z̄^μ ↦ conj(c) z^μ z̄^ν`.
    pub fn conjugate(&self) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|t| (t.coeff.conj(), t.exps.swapped())))
    }

    /// Keep the terms that only involve variables in `indices` (0-based).
    pub fn restrict(&self, indices: &[usize]) -> Self {
        self.filter(|t| (0..self.n).all(|j| indices.contains(&j) || (t.exps.nu[j] == 0 && t.exps.mu[j] == 0)))
    }

    /// Formal derivative treating `z_j` and `z̄_j` as independent variables.
    pub fn wirtinger(&self, j: usize, kind: Wirtinger) -> Self {
        assert!(j < self.n, "variable index out of range");
        let terms = self.terms.iter().filter_map(|t| {
            let mut e = t.exps.clone();
            let slot = match kind {
                Wirtinger::Dz => &mut e.nu[j],
                Wirtinger::Dzbar => &mut e.mu[j],
            };
            if *slot == 0 {
                return None;
            }
            let k = *slot as i64;
            *slot -= 1;
            Some((t.coeff.scale_int(k), e))
        });
        Self::from_terms(self.n, terms)
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.n, "point dimension must equal n");
        let zbar: Vec<Complex64> = z.iter().map(|w| w.conj()).collect();
        self.terms
            .iter()
            .map(|t| t.coeff.to_complex() * monomial_value(&t.exps, z, &zbar))
            .sum()
    }

    /// `Σ |c z^ν z̄^μ|`, the scale against which `|f(z)|` is judged small.
    pub fn term_magnitude(&self, z: &[Complex64]) -> f64 {
        let zbar: Vec<Complex64> = z.iter().map(|w| w.conj()).collect();
        self.terms
            .iter()
            .map(|t| (t.coeff.to_complex() * monomial_value(&t.exps, z, &zbar)).norm())
            .sum()
    }

    pub fn is_convenient(&self) -> Convenience {
        let axis_terms: Vec<Option<ExponentPair>> = (0..self.n)
            .map(|i| {
                self.terms
                    .iter()
                    .find(|t| t.exps.supported_on(i))
                    .map(|t| t.exps.clone())
            })
            .collect();
        let missing_axis = axis_terms.iter().position(Option::is_none);
        Convenience {
            convenient: missing_axis.is_none(),
            axis_terms,
            missing_axis,
        }
    }
}

fn monomial_value(e: &ExponentPair, z: &[Complex64], zbar: &[Complex64]) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for j in 0..z.len() {
        if e.nu[j] > 0 {
            v *= z[j].powu(e.nu[j]);
        }
        if e.mu[j] > 0 {
            v *= zbar[j].powu(e.mu[j]);
        }
    }
    v
}

impl<'a> Add<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn add(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        assert_eq!(self.n, rhs.n);
        let all = self.terms.iter().chain(&rhs.terms);
        MixedPolynomial::from_terms(self.n, all.map(|t| (t.coeff.clone(), t.exps.clone())))
    }
}

impl<'a> Sub<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn sub(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn neg(self) -> MixedPolynomial {
        MixedPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| MixedTerm {
                    coeff: -t.coeff.clone(),
                    exps: t.exps.clone(),
                })
                .collect(),
        }
    }
}

impl<'a> Mul<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn mul(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        assert_eq!(self.n, rhs.n);
        let mut acc: BTreeMap<ExponentPair, GaussianRational> = BTreeMap::new();
        for a in &self.terms {
            for b in &rhs.terms {
                *acc.entry(a.exps.combine(&b.exps))
                    .or_insert_with(GaussianRational::zero) += &(&a.coeff * &b.coeff);
            }
        }
        MixedPolynomial::from_map(self.n, acc)
    }
}

/// Writes `z1^4*zb1^2`-style factors for one exponent pair.
pub(crate) fn monomial_text(e: &ExponentPair, holo: &str, anti: &str) -> String {
    let mut factors = Vec::new();
    for j in 0..e.n() {
        for (exp, name) in [(e.nu[j], holo), (e.mu[j], anti)] {
            match exp {
                0 => {}
                1 => factors.push(format!("{name}{}", j + 1)),
                k => factors.push(format!("{name}{}^{k}", j + 1)),
            }
        }
    }
    factors.join("*")
}

/// Splits a coefficient into a sign and a magnitude-like remainder so that
/// `-3*z1` and `-2i*z1` read naturally.
pub(crate) fn signed_coeff(c: &GaussianRational) -> (bool, GaussianRational) {
    use num_traits::Signed;
    let negative = (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative());
    if negative {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

pub(crate) fn term_text(c: &GaussianRational, mono: &str) -> String {
    if mono.is_empty() {
        c.to_string()
    } else if c.is_one() {
        mono.to_string()
    } else if *c == GaussianRational::i() {
        format!("i*{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let (neg, mag) = signed_coeff(&t.coeff);
            let body = term_text(&mag, &monomial_text(&t.exps, "z", "zb"));
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
