//! Radial Newton polyhedron `Γ₊(f)`: support points, `d(P)`, faces `Δ(P)`,
//! and for two variables the staircase `Γ(f)` and dual diagram `Γ*(f)`.
//!
//! `Γ₊(f)` is never built as a half-space system. For `P ≥ 0` every query
//! reduces to minimizing `P` over the finite support.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, det2, WeightVector};
use crate::poly::MixedPolynomial;

/// A lattice point `ν + μ` with the indices of the terms that land on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportPoint {
    pub point: Vec<i64>,
    pub terms: Vec<usize>,
}

pub fn support(f: &MixedPolynomial) -> Result<Vec<SupportPoint>> {
    if f.is_zero() {
        return Err(Error::EmptyPolynomial);
    }
    let mut map: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, t) in f.terms().iter().enumerate() {
        map.entry(t.exps.radial()).or_default().push(i);
    }
    Ok(map
        .into_iter()
        .map(|(point, terms)| SupportPoint { point, terms })
        .collect())
}

fn check_dim(f: &MixedPolynomial, p: &WeightVector) -> Result<()> {
    if f.n() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            got: p.n(),
        });
    }
    Ok(())
}

/// `d(P) = min { P(x) : x ∈ Γ₊(f) }`.
pub fn weight_min(f: &MixedPolynomial, p: &WeightVector) -> Result<i64> {
    check_dim(f, p)?;
    f.terms()
        .iter()
        .map(|t| p.dot(&t.exps.radial()))
        .min()
        .ok_or(Error::EmptyPolynomial)
}

/// `Δ(P)`: the support points attaining `d(P)`, plus the recession
/// directions `{j : p_j = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub weight: WeightVector,
    pub d: i64,
    pub points: Vec<Vec<i64>>,
    pub dim: usize,
    pub recession: Vec<usize>,
}

impl Face {
    pub fn is_compact(&self) -> bool {
        self.recession.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.points.iter().any(|p| p == x)
    }
}

pub fn face(f: &MixedPolynomial, p: &WeightVector) -> Result<Face> {
    let d = weight_min(f, p)?;
    let points: Vec<Vec<i64>> = support(f)?
        .into_iter()
        .map(|s| s.point)
        .filter(|x| p.dot(x) == d)
        .collect();
    Ok(Face {
        weight: p.clone(),
        d,
        dim: affine_dim(&points),
        points,
        recession: p.zero_indices(),
    })
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dim(points: &[Vec<i64>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|x| x.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    lattice::rank(&diffs)
}

/// A 1-dimensional compact face of the two-variable staircase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryEdge {
    pub normal: WeightVector,
    /// Endpoint with the larger first coordinate.
    pub from: Vec<i64>,
    pub to: Vec<i64>,
}

/// The Newton boundary `Γ(f)` for `n = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonBoundary {
    /// Vertices of the staircase, first coordinate descending.
    pub vertices: Vec<Vec<i64>>,
    /// Edges in the same walking order as `vertices`.
    pub edges: Vec<BoundaryEdge>,
}

impl NewtonBoundary {
    /// Support points lying on some compact face.
    pub fn on_boundary(&self, x: &[i64]) -> bool {
        self.vertices.iter().any(|v| v == x)
            || self
                .edges
                .iter()
                .any(|e| e.normal.dot(x) == e.normal.dot(&e.from) && x[0] <= e.from[0] && x[0] >= e.to[0])
    }
}

pub(crate) fn require_convenient_plane(f: &MixedPolynomial) -> Result<()> {
    if f.n() != 2 {
        return Err(Error::UnsupportedDimension(f.n()));
    }
    if f.is_zero() {
        return Err(Error::EmptyPolynomial);
    }
    if let Some(axis) = f.is_convenient().missing_axis {
        return Err(Error::NotConvenient { axis: axis + 1 });
    }
    Ok(())
}

pub fn newton_boundary(f: &MixedPolynomial) -> Result<NewtonBoundary> {
    require_convenient_plane(f)?;
    let pts: Vec<Vec<i64>> = support(f)?.into_iter().map(|s| s.point).collect();
    // Start on the first axis at the smallest exponent.
    let mut cur = pts
        .iter()
        .filter(|x| x[1] == 0)
        .min_by_key(|x| x[0])
        .cloned()
        .expect("convenient germ has a pure z1 term");
    let mut vertices = vec![cur.clone()];
    let mut edges = Vec::new();
    while cur[0] > 0 {
        // Next hull vertex: minimal rise per unit step left; ties go to the
        // farthest point so collinear points stay off the vertex list.
        let next = pts
            .iter()
            .filter(|x| x[0] < cur[0])
            .min_by(|a, b| {
                let (ra, da) = (a[1] - cur[1], cur[0] - a[0]);
                let (rb, db) = (b[1] - cur[1], cur[0] - b[0]);
                (ra * db).cmp(&(rb * da)).then(a[0].cmp(&b[0]))
            })
            .cloned()
            .expect("convenient germ has a pure z2 term");
        let normal =
            WeightVector::new(vec![next[1] - cur[1], cur[0] - next[0]]).expect("staircase edges rise to the left");
        edges.push(BoundaryEdge {
            normal,
            from: cur.clone(),
            to: next.clone(),
        });
        vertices.push(next.clone());
        cur = next;
    }
    Ok(NewtonBoundary { vertices, edges })
}

/// An equivalence class of `Γ*(f)`: a ray through an edge normal, or an open
/// cone between two consecutive rays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DualClass {
    Ray { ray: WeightVector },
    OpenCone { from: WeightVector, to: WeightVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualDiagram2D {
    pub boundary_vertices: Vec<Vec<i64>>,
    /// Edge normals in increasing slope `p₂/p₁`.
    pub edge_normals: Vec<WeightVector>,
    /// `E₁`, the edge normals, `E₂`.
    pub rays: Vec<WeightVector>,
    pub classes: Vec<DualClass>,
}

impl DualDiagram2D {
    pub fn ray_index(&self, p: &WeightVector) -> Option<usize> {
        self.rays.iter().position(|r| r == p)
    }
}

/// Orders two-variable weights counter-clockwise from `E₁`.
pub fn slope_cmp(a: &WeightVector, b: &WeightVector) -> std::cmp::Ordering {
    0.cmp(&det2(a.as_slice(), b.as_slice()))
}

pub fn dual_diagram(f: &MixedPolynomial) -> Result<DualDiagram2D> {
    let boundary = newton_boundary(f)?;
    let mut edge_normals: Vec<WeightVector> = boundary.edges.iter().map(|e| e.normal.clone()).collect();
    edge_normals.sort_by(slope_cmp);
    let mut rays = vec![WeightVector::unit(2, 0)];
    rays.extend(edge_normals.iter().cloned());
    rays.push(WeightVector::unit(2, 1));
    let mut classes = Vec::new();
    for w in rays.windows(2) {
        classes.push(DualClass::OpenCone {
            from: w[0].clone(),
            to: w[1].clone(),
        });
        if w[1].is_strictly_positive() {
            classes.push(DualClass::Ray { ray: w[1].clone() });
        }
    }
    Ok(DualDiagram2D {
        boundary_vertices: boundary.vertices,
        edge_normals,
        rays,
        classes,
    })
}
