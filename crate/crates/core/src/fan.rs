//! Simplicial lattice cones, regular cone subdivisions of the weight
//! orthant, and the canonical regular subdivision of `Γ*(f)` for `n = 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, det2, ext_gcd, WeightVector};
use crate::newton::{self, dual_diagram, slope_cmp};
use crate::poly::MixedPolynomial;

/// `Cone(P_1, …, P_k)` with primitive, linearly independent vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimplicialCone {
    vertices: Vec<WeightVector>,
}

impl SimplicialCone {
    pub fn vertices(&self) -> &[WeightVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len()
    }

    pub fn n(&self) -> usize {
        self.vertices[0].n()
    }

    /// `P_τ = P_1 + … + P_k` (not normalized).
    pub fn interior_point(&self) -> Vec<i64> {
        let mut s = vec![0; self.n()];
        for v in &self.vertices {
            for (acc, x) in s.iter_mut().zip(v.as_slice()) {
                *acc += x;
            }
        }
        s
    }

    pub fn all_strictly_positive(&self) -> bool {
        self.vertices.iter().all(WeightVector::is_strictly_positive)
    }

    /// Vertex matrix with one column per vertex (`n × k`), rows returned.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n())
            .map(|i| self.vertices.iter().map(|v| v.as_slice()[i]).collect())
            .collect()
    }

    /// Same cone with the vertices reordered.
    pub fn reordered(&self, order: &[usize]) -> Self {
        Self {
            vertices: order.iter().map(|&i| self.vertices[i].clone()).collect(),
        }
    }

    /// Every face spanned by a nonempty subset of the vertices.
    pub fn faces(&self) -> Vec<SimplicialCone> {
        let k = self.dim();
        (1..=k)
            .flat_map(|m| lattice::combinations(k, m))
            .map(|idx| self.reordered(&idx))
            .collect()
    }

    /// Same vertex set, ignoring order.
    pub fn same_cone(&self, other: &SimplicialCone) -> bool {
        self.dim() == other.dim() && self.vertices.iter().all(|v| other.vertices.contains(v))
    }
}

pub fn make_cone(vs: Vec<Vec<i64>>) -> Result<SimplicialCone> {
    let Some(first) = vs.first() else {
        return Err(Error::DependentVertices);
    };
    let n = first.len();
    if vs.len() > n {
        return Err(Error::DependentVertices);
    }
    if let Some(bad) = vs.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bad.len(),
        });
    }
    let vertices = vs.into_iter().map(WeightVector::new).collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<i64>> = vertices.iter().map(|v| v.as_slice().to_vec()).collect();
    if lattice::rank(&rows) < rows.len() {
        return Err(Error::DependentVertices);
    }
    Ok(SimplicialCone { vertices })
}

/// `k = n`: `|det| = 1`; `k < n`: the vertices extend to a basis of `ℤⁿ`.
pub fn is_regular(c: &SimplicialCone) -> bool {
    let rows: Vec<Vec<i64>> = c.vertices.iter().map(|v| v.as_slice().to_vec()).collect();
    lattice::maximal_minor_gcd(&rows).abs() == 1
}

/// A fan of `n`-dimensional simplicial cones covering `ℝ₊ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeSubdivision {
    pub n: usize,
    pub max_cones: Vec<SimplicialCone>,
}

impl ConeSubdivision {
    /// Fan of consecutive 2-cones along an ordered ray sequence.
    pub fn from_rays_2d(rays: &[WeightVector]) -> Result<Self> {
        let max_cones = rays
            .windows(2)
            .map(|w| make_cone(vec![w[0].as_slice().to_vec(), w[1].as_slice().to_vec()]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: 2, max_cones })
    }

    /// Vertex set `𝒱`, in order of first appearance.
    pub fn vertices(&self) -> Vec<WeightVector> {
        let mut out: Vec<WeightVector> = Vec::new();
        for c in &self.max_cones {
            for v in c.vertices() {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        out
    }

    /// `𝒱⁺`.
    pub fn strictly_positive_vertices(&self) -> Vec<WeightVector> {
        self.vertices()
            .into_iter()
            .filter(WeightVector::is_strictly_positive)
            .collect()
    }

    /// All cones of the fan (faces of the maximal cones), deduplicated.
    pub fn cones(&self) -> Vec<SimplicialCone> {
        let mut out: Vec<SimplicialCone> = Vec::new();
        for c in &self.max_cones {
            for face in c.faces() {
                if !out.iter().any(|o| o.same_cone(&face)) {
                    out.push(face);
                }
            }
        }
        out
    }

    pub fn contains_cone(&self, c: &SimplicialCone) -> bool {
        self.max_cones.iter().any(|m| m.faces().iter().any(|f| f.same_cone(c)))
    }

    pub fn is_regular(&self) -> bool {
        self.max_cones.iter().all(is_regular)
    }

    /// For `n = 2`: consecutive max cones share a ray and sweep from `E₁` to
    /// `E₂` without gaps or overlaps.
    pub fn covers_orthant_2d(&self) -> bool {
        if self.n != 2 || self.max_cones.is_empty() {
            return false;
        }
        let e1 = WeightVector::unit(2, 0);
        let e2 = WeightVector::unit(2, 1);
        let ok_orientation = self
            .max_cones
            .iter()
            .all(|c| det2(c.vertices[0].as_slice(), c.vertices[1].as_slice()) > 0);
        let chained = self.max_cones.windows(2).all(|w| w[0].vertices[1] == w[1].vertices[0]);
        ok_orientation
            && chained
            && self.max_cones[0].vertices[0] == e1
            && self.max_cones.last().unwrap().vertices[1] == e2
    }
}

/// Rays strictly between `a` and `b` (counter-clockwise, `det(a,b) ≥ 1`)
/// that regularize `Cone(a, b)` minimally.
///
/// Each step picks the lattice point `v` with `det(a, v) = 1` closest to the
/// far ray, so `0 ≤ det(v, b) < det(a, b)` strictly decreases.
pub fn regular_refinement(a: &WeightVector, b: &WeightVector) -> Vec<WeightVector> {
    let mut out = Vec::new();
    let mut cur = a.clone();
    let bs = b.as_slice();
    loop {
        let d = det2(cur.as_slice(), bs);
        assert!(d >= 1, "rays must be counter-clockwise and independent");
        if d == 1 {
            return out;
        }
        let (c0, c1) = (cur.as_slice()[0], cur.as_slice()[1]);
        // det(cur, x) = c0 x1 − c1 x0 = 1
        let (g, s, t) = ext_gcd(c0, -c1);
        debug_assert_eq!(g, 1, "primitive vector");
        let x0 = [t, s];
        // x = x0 + k·cur; det(x, b) = det(x0, b) + k·d, take the least
        // nonnegative value.
        let base = det2(&x0, bs);
        let k = (-base).div_euclid(d) + i64::from((-base).rem_euclid(d) != 0);
        let v = vec![x0[0] + k * c0, x0[1] + k * c1];
        let v = WeightVector::new(v).expect("refinement ray lies in the orthant");
        out.push(v.clone());
        cur = v;
    }
}

/// The canonical regular subdivision `Σ*` of `Γ*(f)` (`n = 2`): the dual
/// rays, each consecutive pair refined minimally to determinant 1.
pub fn canonical_subdivision(f: &MixedPolynomial) -> Result<ConeSubdivision> {
    let dual = dual_diagram(f)?;
    let mut rays = vec![dual.rays[0].clone()];
    for w in dual.rays.windows(2) {
        rays.extend(regular_refinement(&w[0], &w[1]));
        rays.push(w[1].clone());
    }
    ConeSubdivision::from_rays_2d(&rays)
}

/// `Int(c)` lies in a single class of `Γ*(f)` (`n = 2`).
pub fn is_admissible(c: &SimplicialCone, f: &MixedPolynomial) -> Result<bool> {
    if c.n() != 2 || f.n() != 2 {
        return Err(Error::UnsupportedDimension(c.n().max(f.n())));
    }
    let dual = dual_diagram(f)?;
    Ok(match c.dim() {
        1 => true,
        _ => {
            let (mut a, mut b) = (&c.vertices[0], &c.vertices[1]);
            if slope_cmp(a, b).is_gt() {
                std::mem::swap(&mut a, &mut b);
            }
            !dual
                .rays
                .iter()
                .any(|r| slope_cmp(a, r).is_lt() && slope_cmp(r, b).is_lt())
        }
    })
}

/// Cross-check for admissible cones: `Δ(P_τ) = ⋂ Δ(P_i)` as point sets.
pub fn face_intersection_identity(c: &SimplicialCone, f: &MixedPolynomial) -> Result<bool> {
    let p_tau = WeightVector::new(c.interior_point())?;
    let target = newton::face(f, &p_tau)?.points;
    let mut inter: Option<Vec<Vec<i64>>> = None;
    for v in c.vertices() {
        let pts = newton::face(f, v)?.points;
        inter = Some(match inter {
            None => pts,
            Some(acc) => acc.into_iter().filter(|x| pts.contains(x)).collect(),
        });
    }
    Ok(inter.unwrap_or_default() == target)
}

/// For every `I` with `f^I ≢ 0`, the cone `E_{I^c}` belongs to the fan.
pub fn is_convenient_subdivision(s: &ConeSubdivision, f: &MixedPolynomial) -> Result<bool> {
    if let Some(axis) = f.is_convenient().missing_axis {
        return Err(Error::NotConvenient { axis: axis + 1 });
    }
    let n = s.n;
    for size in 1..n {
        for subset in lattice::combinations(n, size) {
            if f.restrict(&subset).is_zero() {
                continue;
            }
            let complement: Vec<Vec<i64>> = (0..n)
                .filter(|j| !subset.contains(j))
                .map(|j| WeightVector::unit(n, j).as_slice().to_vec())
                .collect();
            if !s.contains_cone(&make_cone(complement)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
