//! Toric charts `π_σ`, pull-backs, the factored decomposition
//! `π*_σ f = (monomial) · (f̃_Δ + R̃)`, the numbers `Λ(τ)` and the
//! smoothness certificate of the strict transform.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::{classify_face_type, degrees, FaceType};
use crate::fan::{is_admissible, is_convenient_subdivision, is_regular, ConeSubdivision, SimplicialCone};
use crate::gaussian::GaussianRational;
use crate::lattice::{self, WeightVector};
use crate::newton::{self, require_convenient_plane};
use crate::numeric::{self, Descent};
use crate::poly::{signed_coeff, term_text, MixedPolynomial};

/// `c · Π u_j^{a_j} ū_j^{b_j}` with possibly negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartMonomial {
    pub coeff: GaussianRational,
    pub u_exps: Vec<i64>,
    pub ubar_exps: Vec<i64>,
}

impl ChartMonomial {
    pub fn evaluate(&self, u: &[Complex64]) -> Complex64 {
        let mut v = self.coeff.to_complex();
        for (j, uj) in u.iter().enumerate() {
            v *= power(*uj, self.u_exps[j]) * power(uj.conj(), self.ubar_exps[j]);
        }
        v
    }

    pub fn magnitude(&self, u: &[Complex64]) -> f64 {
        self.evaluate(u).norm()
    }

    fn monomial_text(&self) -> String {
        let mut factors = Vec::new();
        for j in 0..self.u_exps.len() {
            for (e, name) in [(self.u_exps[j], "u"), (self.ubar_exps[j], "ub")] {
                match e {
                    0 => {}
                    1 => factors.push(format!("{name}{}", j + 1)),
                    e => factors.push(format!("{name}{}^{e}", j + 1)),
                }
            }
        }
        factors.join("*")
    }

    fn is_constant(&self) -> bool {
        self.u_exps.iter().chain(&self.ubar_exps).all(|&e| e == 0)
    }
}

fn power(z: Complex64, e: i64) -> Complex64 {
    if e == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        z.powi(e as i32)
    }
}

/// Renders a sum of chart monomials with `u`/`ub` variable names.
pub fn render_chart_sum(terms: &[ChartMonomial]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let (neg, mag) = signed_coeff(&t.coeff);
        let body = term_text(&mag, &t.monomial_text());
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}

/// `z_i = Π_j u_j^{p_ij}` where column `j` of `rows` is the vertex `P_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartMap {
    pub sigma: SimplicialCone,
    pub rows: Vec<Vec<i64>>,
}

impl ChartMap {
    pub fn apply(&self, u: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(u)
                    .fold(Complex64::new(1.0, 0.0), |acc, (&e, &uj)| acc * power(uj, e))
            })
            .collect()
    }
}

impl fmt::Display for ChartMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rows.len();
        let comps: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let m = ChartMonomial {
                    coeff: GaussianRational::from_ints(1, 0),
                    u_exps: row.clone(),
                    ubar_exps: vec![0; n],
                };
                match m.monomial_text() {
                    s if s.is_empty() => "1".to_string(),
                    s => s,
                }
            })
            .collect();
        write!(f, "({})", comps.join(", "))
    }
}

pub fn chart_map(sigma: &SimplicialCone) -> Result<ChartMap> {
    let n = sigma.n();
    if sigma.dim() != n {
        return Err(Error::NotFullDimensional { got: sigma.dim(), n });
    }
    if !is_regular(sigma) {
        return Err(Error::NotRegular(lattice::det(&sigma.matrix()).abs()));
    }
    Ok(ChartMap {
        sigma: sigma.clone(),
        rows: sigma.matrix(),
    })
}

fn check_n(f: &MixedPolynomial, sigma: &SimplicialCone) -> Result<()> {
    if f.n() != sigma.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            got: sigma.n(),
        });
    }
    Ok(())
}

/// `π*_σ f`, one chart monomial per term of `f` (a unimodular chart cannot
/// merge distinct exponent pairs).
pub fn pullback(f: &MixedPolynomial, sigma: &SimplicialCone) -> Result<Vec<ChartMonomial>> {
    chart_map(sigma)?;
    check_n(f, sigma)?;
    Ok(f.terms()
        .iter()
        .map(|t| {
            let nu: Vec<i64> = t.exps.nu.iter().map(|&x| x as i64).collect();
            let mu: Vec<i64> = t.exps.mu.iter().map(|&x| x as i64).collect();
            ChartMonomial {
                coeff: t.coeff.clone(),
                u_exps: sigma.vertices().iter().map(|p| p.dot(&nu)).collect(),
                ubar_exps: sigma.vertices().iter().map(|p| p.dot(&mu)).collect(),
            }
        })
        .collect())
}

/// A term of `R̃` with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemainderTerm {
    pub monomial: ChartMonomial,
    /// `ν + μ` of the originating term.
    pub point: Vec<i64>,
    /// Indices `j < k` with `ν + μ ∉ Δ(P_j)`; the term is set to 0 when any
    /// of these `u_j` vanish.
    pub vanishing: Vec<usize>,
    /// `λ_{ν,μ}(τ)`.
    pub lambda: i64,
    /// Differentiability class `min (a_j + b_j − 1)` over the indices with a
    /// negative exponent; `None` when the term is a polynomial.
    pub class: Option<i64>,
}

impl RemainderTerm {
    pub fn evaluate(&self, u: &[Complex64]) -> Complex64 {
        if self.vanishing.iter().any(|&j| u[j].is_zero()) {
            Complex64::zero()
        } else {
            self.monomial.evaluate(u)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartFactorization {
    /// The chart, strictly positive vertices `P_1..P_k` first.
    pub sigma: SimplicialCone,
    pub k: usize,
    pub radial_degrees: Vec<i64>,
    pub polar_degrees: Vec<i64>,
    /// `((r_j + p_j)/2, (r_j − p_j)/2)` for `j < k`.
    pub monomial_factor: Vec<(i64, i64)>,
    pub f_tilde_delta: Vec<ChartMonomial>,
    pub r_tilde: Vec<RemainderTerm>,
    pub lambda_tau: Option<i64>,
}

impl ChartFactorization {
    pub fn tau(&self) -> Option<SimplicialCone> {
        (self.k > 0).then(|| self.sigma.reordered(&(0..self.k).collect::<Vec<_>>()))
    }

    pub fn factor_value(&self, u: &[Complex64]) -> Complex64 {
        self.monomial_factor
            .iter()
            .enumerate()
            .fold(Complex64::new(1.0, 0.0), |acc, (j, &(a, b))| {
                acc * power(u[j], a) * power(u[j].conj(), b)
            })
    }

    pub fn f_tilde_delta_value(&self, u: &[Complex64]) -> Complex64 {
        self.f_tilde_delta.iter().map(|m| m.evaluate(u)).sum()
    }

    pub fn r_tilde_value(&self, u: &[Complex64]) -> Complex64 {
        self.r_tilde.iter().map(|t| t.evaluate(u)).sum()
    }

    /// `f̃ = f̃_Δ + R̃` with the zero extension on `u_j = 0`.
    pub fn f_tilde_value(&self, u: &[Complex64]) -> Complex64 {
        self.f_tilde_delta_value(u) + self.r_tilde_value(u)
    }

    /// Exact value of `f̃` at the chart origin.
    pub fn corner_value(&self) -> GaussianRational {
        self.f_tilde_delta
            .iter()
            .filter(|m| m.is_constant())
            .fold(GaussianRational::zero(), |acc, m| acc + m.coeff.clone())
    }

    /// `a_j + b_j` of an `R̃` term for each `j < k`.
    pub fn exponent_sums(&self, term: &RemainderTerm) -> Vec<i64> {
        (0..self.k)
            .map(|j| term.monomial.u_exps[j] + term.monomial.ubar_exps[j])
            .collect()
    }
}

fn check_strict(vs: &[WeightVector]) -> Result<()> {
    match vs.iter().position(|v| !v.is_strictly_positive()) {
        Some(j) => Err(Error::NonStrictVertex(j + 1)),
        None => Ok(()),
    }
}

/// Splits `π*_σ f` along the first `k` vertices of `σ`.
pub fn factorize(f: &MixedPolynomial, sigma: &SimplicialCone, k: usize) -> Result<ChartFactorization> {
    let n = sigma.n();
    if k > n {
        return Err(Error::DimensionMismatch { expected: n, got: k });
    }
    let pulled = pullback(f, sigma)?;
    let verts = sigma.vertices();
    check_strict(&verts[..k])?;
    let mut r = Vec::with_capacity(k);
    let mut p = Vec::with_capacity(k);
    for (j, v) in verts[..k].iter().enumerate() {
        let rec = degrees(f, v)?;
        let pdeg = rec.pdeg.ok_or(Error::NotStronglyMixedHomogeneous(j + 1))?;
        if (rec.rdeg + pdeg) % 2 != 0 {
            return Err(Error::NonIntegerHalfDegrees(j + 1));
        }
        r.push(rec.rdeg);
        p.push(pdeg);
    }
    let monomial_factor: Vec<(i64, i64)> = (0..k).map(|j| ((r[j] + p[j]) / 2, (r[j] - p[j]) / 2)).collect();

    let mut f_tilde_delta = Vec::new();
    let mut r_tilde = Vec::new();
    for (term, mono) in f.terms().iter().zip(pulled) {
        let point = term.exps.radial();
        let mut m = mono;
        for (j, &(a, b)) in monomial_factor.iter().enumerate() {
            m.u_exps[j] -= a;
            m.ubar_exps[j] -= b;
        }
        let vanishing: Vec<usize> = (0..k).filter(|&j| verts[j].dot(&point) != r[j]).collect();
        if vanishing.is_empty() {
            f_tilde_delta.push(m);
            continue;
        }
        let lambda = vanishing
            .iter()
            .map(|&j| verts[j].dot(&point) - r[j])
            .min()
            .expect("nonempty");
        let class = (0..k)
            .filter(|&j| m.u_exps[j] < 0 || m.ubar_exps[j] < 0)
            .map(|j| m.u_exps[j] + m.ubar_exps[j] - 1)
            .min();
        r_tilde.push(RemainderTerm {
            monomial: m,
            point,
            vanishing,
            lambda,
            class,
        });
    }
    let lambda_tau = r_tilde.iter().map(|t| t.lambda).min();
    Ok(ChartFactorization {
        sigma: sigma.clone(),
        k,
        radial_degrees: r,
        polar_degrees: p,
        monomial_factor,
        f_tilde_delta,
        r_tilde,
        lambda_tau,
    })
}

/// `Λ(τ)`: the least positive gap `P_j(ν+μ) − r_j` over the support.
pub fn lambda_of_cone(f: &MixedPolynomial, tau: &SimplicialCone) -> Result<Option<i64>> {
    check_n(f, tau)?;
    check_strict(tau.vertices())?;
    let support = newton::support(f)?;
    let mut best: Option<i64> = None;
    for v in tau.vertices() {
        let r = newton::weight_min(f, v)?;
        for s in &support {
            let gap = v.dot(&s.point) - r;
            if gap > 0 {
                best = Some(best.map_or(gap, |b| b.min(gap)));
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeStatus {
    Empty {
        reason: String,
    },
    /// A torus point `u′` (as `[re, im]` pairs) where `f̃_Δ` vanishes.
    Nonempty {
        witness: Vec<[f64; 2]>,
        residual: f64,
    },
    Unknown {
        best_residual: f64,
    },
}

impl ProbeStatus {
    pub fn is_empty(&self) -> bool {
        matches!(self, ProbeStatus::Empty { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProbeStatus::Empty { .. } => "EMPTY",
            ProbeStatus::Nonempty { .. } => "NONEMPTY",
            ProbeStatus::Unknown { .. } => "UNKNOWN",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeOptions {
    pub starts: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            starts: 256,
            max_iter: 200,
            seed: 0,
        }
    }
}

const PROBE_SUCCESS: f64 = 1e-10;
const PROBE_LOG_BOUND: f64 = 6.0;

/// Decides whether `f̃_Δ` has a zero with `u_{k+1}, …, u_n ≠ 0`.
pub fn strict_transform_probe(
    f: &MixedPolynomial,
    sigma: &SimplicialCone,
    k: usize,
    opts: ProbeOptions,
) -> Result<ProbeStatus> {
    let fac = factorize(f, sigma, k)?;
    Ok(probe_factorization(&fac, opts))
}

pub fn probe_factorization(fac: &ChartFactorization, opts: ProbeOptions) -> ProbeStatus {
    let terms = &fac.f_tilde_delta;
    match terms.len() {
        0 => {
            let m = fac.sigma.n() - fac.k;
            return ProbeStatus::Nonempty {
                witness: vec![[1.0, 0.0]; m],
                residual: 0.0,
            };
        }
        1 if terms[0].is_constant() => {
            return ProbeStatus::Empty {
                reason: "nonzero constant".into(),
            }
        }
        1 => {
            return ProbeStatus::Empty {
                reason: "single monomial".into(),
            }
        }
        _ => {}
    }
    let n = fac.sigma.n();
    let k = fac.k;
    let m = n - k;
    let lift = |x: &[f64]| {
        let mut u = vec![Complex64::new(1.0, 0.0); k];
        u.extend(numeric::torus(x));
        u
    };
    let residual = |x: &[f64]| {
        let u = lift(x);
        let g: Complex64 = terms.iter().map(|t| t.evaluate(&u)).sum();
        let scale: f64 = terms.iter().map(|t| t.magnitude(&u)).sum();
        let v = g / scale;
        vec![v.re, v.im]
    };
    let descent = Descent {
        max_iter: opts.max_iter,
        target: PROBE_SUCCESS * 1e-4,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best = f64::INFINITY;
    for _ in 0..opts.starts {
        let x0 = numeric::random_start(&mut rng, m, 1.0);
        let (x, cost) =
            numeric::levenberg_marquardt(residual, |x| numeric::clamp_moduli(x, PROBE_LOG_BOUND), x0, descent);
        if cost < PROBE_SUCCESS {
            let witness = lift(&x)[k..].iter().map(|z| [z.re, z.im]).collect();
            return ProbeStatus::Nonempty {
                witness,
                residual: cost,
            };
        }
        if cost < best {
            best = cost;
        }
    }
    ProbeStatus::Unknown { best_residual: best }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeCertificate {
    pub tau: Vec<WeightVector>,
    /// Chart used for the probe, `τ`'s vertices first.
    pub chart: Vec<WeightVector>,
    pub lambda_tau: Option<i64>,
    pub probe: ProbeStatus,
}

/// `f̃` at the origin of a maximal chart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CornerProbe {
    pub chart: Vec<WeightVector>,
    pub k: usize,
    pub value: GaussianRational,
    pub misses_corner: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AssumptionStar {
    Holds,
    Violated { chart: Vec<WeightVector> },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmoothnessCertificate {
    pub per_cone: Vec<ConeCertificate>,
    pub corners: Vec<CornerProbe>,
    #[serde(rename = "L_set_conservative")]
    pub l_set_conservative: Vec<i64>,
    #[serde(rename = "L_set_optimistic")]
    pub l_set_optimistic: Vec<i64>,
    pub lambda_conservative: Option<i64>,
    pub lambda_optimistic: Option<i64>,
    pub smoothness_class: String,
    pub smoothness_class_optimistic: String,
    /// The conservative class is at least `C¹`.
    pub meets_c1: bool,
    pub assumption_star: AssumptionStar,
}

pub fn smoothness_class(lambda: Option<i64>) -> String {
    match lambda {
        None => "real-analytic".to_string(),
        Some(l) => format!("C^{}", l - 1),
    }
}

/// Puts the strictly positive vertices first, keeping their relative order.
pub fn strictly_positive_first(c: &SimplicialCone) -> (SimplicialCone, usize) {
    let vs = c.vertices();
    let mut order: Vec<usize> = (0..vs.len()).filter(|&i| vs[i].is_strictly_positive()).collect();
    let k = order.len();
    order.extend((0..vs.len()).filter(|&i| !vs[i].is_strictly_positive()));
    (c.reordered(&order), k)
}

/// The first maximal cone containing `tau`, reordered with `tau` first.
fn chart_for(s: &ConeSubdivision, tau: &SimplicialCone) -> Option<SimplicialCone> {
    s.max_cones.iter().find_map(|m| {
        let vs = m.vertices();
        let mut order = Vec::new();
        for v in tau.vertices() {
            order.push(vs.iter().position(|w| w == v)?);
        }
        let rest: Vec<usize> = (0..vs.len()).filter(|i| !order.contains(i)).collect();
        order.extend(rest);
        Some(m.reordered(&order))
    })
}

/// Builds the smoothness certificate of the strict transform for a
/// two-variable germ.
pub fn certify(f: &MixedPolynomial, s: &ConeSubdivision, opts: ProbeOptions) -> Result<SmoothnessCertificate> {
    require_convenient_plane(f)?;
    if s.n != 2 {
        return Err(Error::UnsupportedDimension(s.n));
    }
    let verdict = classify_face_type(f)?;
    if verdict.verdict == FaceType::NotOfType {
        return Err(Error::PreconditionNotVerified(format!(
            "face of weight {} is not strongly polar non-negative",
            verdict.offending_face.expect("NotOfType carries a face")
        )));
    }
    if !s.covers_orthant_2d() {
        return Err(Error::NotASubdivision);
    }
    for c in &s.max_cones {
        if !is_regular(c) {
            return Err(Error::NotRegular(lattice::det(&c.matrix()).abs()));
        }
        if !is_admissible(c, f)? {
            return Err(Error::NotAdmissible);
        }
    }
    if !is_convenient_subdivision(s, f)? {
        return Err(Error::NotConvenientSubdivision);
    }

    let mut cones: Vec<SimplicialCone> = s.cones().into_iter().filter(|c| c.all_strictly_positive()).collect();
    cones.sort_by_key(SimplicialCone::dim);
    let mut per_cone = Vec::with_capacity(cones.len());
    for tau in &cones {
        let chart = chart_for(s, tau).expect("cone of the fan lies in a maximal cone");
        let lambda_tau = lambda_of_cone(f, tau)?;
        let fac = factorize(f, &chart, tau.dim())?;
        debug_assert_eq!(fac.lambda_tau, lambda_tau);
        per_cone.push(ConeCertificate {
            tau: tau.vertices().to_vec(),
            chart: chart.vertices().to_vec(),
            lambda_tau,
            probe: probe_factorization(&fac, opts),
        });
    }

    let mut corners = Vec::with_capacity(s.max_cones.len());
    let mut assumption_star = AssumptionStar::Holds;
    for m in &s.max_cones {
        let (chart, k) = strictly_positive_first(m);
        let value = factorize(f, &chart, k)?.corner_value();
        let misses_corner = !value.is_zero();
        if k < chart.n() && !misses_corner && assumption_star == AssumptionStar::Holds {
            assumption_star = AssumptionStar::Violated {
                chart: chart.vertices().to_vec(),
            };
        }
        corners.push(CornerProbe {
            chart: chart.vertices().to_vec(),
            k,
            value,
            misses_corner,
        });
    }

    let collect = |include_unknown: bool| -> Vec<i64> {
        let mut set: Vec<i64> = per_cone
            .iter()
            .filter(|c| match c.probe {
                ProbeStatus::Empty { .. } => false,
                ProbeStatus::Nonempty { .. } => true,
                ProbeStatus::Unknown { .. } => include_unknown,
            })
            .filter_map(|c| c.lambda_tau)
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    };
    let l_set_conservative = collect(true);
    let l_set_optimistic = collect(false);
    let lambda_conservative = l_set_conservative.first().copied();
    let lambda_optimistic = l_set_optimistic.first().copied();
    Ok(SmoothnessCertificate {
        per_cone,
        corners,
        smoothness_class: smoothness_class(lambda_conservative),
        smoothness_class_optimistic: smoothness_class(lambda_optimistic),
        meets_c1: lambda_conservative.is_none_or(|l| l >= 2),
        l_set_conservative,
        l_set_optimistic,
        lambda_conservative,
        lambda_optimistic,
        assumption_star,
    })
}
