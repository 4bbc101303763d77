//! Face functions, radial/polar degrees and face-type classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::canonical_subdivision;
use crate::lattice::WeightVector;
use crate::newton::{self, dual_diagram, slope_cmp};
use crate::poly::MixedPolynomial;

fn require_compact(p: &WeightVector) -> Result<()> {
    if p.is_strictly_positive() {
        Ok(())
    } else {
        Err(Error::NonCompactFace(p.as_slice().to_vec()))
    }
}

/// `f_P`: the terms of `f` whose radial support lies on `Δ(P)`.
pub fn face_function(f: &MixedPolynomial, p: &WeightVector) -> Result<MixedPolynomial> {
    require_compact(p)?;
    let d = newton::weight_min(f, p)?;
    Ok(f.filter(|t| p.dot(&t.exps.radial()) == d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarSign {
    Positive,
    Zero,
    Negative,
    /// Face terms disagree on `P(ν − μ)`.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceDegreeRecord {
    pub weight: WeightVector,
    pub rdeg: i64,
    /// `None` when the face function is not polar weighted homogeneous.
    pub pdeg: Option<i64>,
    pub strongly_mixed: bool,
    pub polar_sign: PolarSign,
}

impl FaceDegreeRecord {
    pub fn is_non_negative(&self) -> bool {
        matches!(self.pdeg, Some(p) if p >= 0)
    }
}

pub fn degrees(f: &MixedPolynomial, p: &WeightVector) -> Result<FaceDegreeRecord> {
    let face_fn = face_function(f, p)?;
    let rdeg = newton::weight_min(f, p)?;
    let mut polar = face_fn.terms().iter().map(|t| p.dot(&t.exps.polar()));
    let first = polar.next().expect("faces are nonempty");
    let pdeg = polar.all(|x| x == first).then_some(first);
    let polar_sign = match pdeg {
        None => PolarSign::Mixed,
        Some(x) if x > 0 => PolarSign::Positive,
        Some(0) => PolarSign::Zero,
        Some(_) => PolarSign::Negative,
    };
    Ok(FaceDegreeRecord {
        weight: p.clone(),
        rdeg,
        pdeg,
        strongly_mixed: pdeg.is_some(),
        polar_sign,
    })
}

/// A compact face of the staircase with the weights used to classify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactFace {
    pub points: Vec<Vec<i64>>,
    pub dim: usize,
    pub weights: Vec<WeightVector>,
}

/// Compact faces of a convenient two-variable germ, in slope order of their
/// weights.
///
/// An edge is represented by its normal. A vertex is represented by every
/// vertex of the canonical subdivision inside its open normal cone; when
/// there is none, by the sum of the two bounding dual rays.
pub fn compact_faces(f: &MixedPolynomial) -> Result<Vec<CompactFace>> {
    let dual = dual_diagram(f)?;
    let fan = canonical_subdivision(f)?;
    let fan_rays = fan.vertices();
    let mut out = Vec::new();
    for (i, w) in dual.rays.windows(2).enumerate() {
        let inside: Vec<WeightVector> = fan_rays
            .iter()
            .filter(|r| slope_cmp(&w[0], r).is_lt() && slope_cmp(r, &w[1]).is_lt())
            .cloned()
            .collect();
        let weights = if inside.is_empty() {
            vec![w[0].primitive_sum(&w[1])]
        } else {
            inside
        };
        let points = newton::face(f, &weights[0])?.points;
        out.push(CompactFace {
            points,
            dim: 0,
            weights,
        });
        if i + 2 < dual.rays.len() {
            let normal = w[1].clone();
            let face = newton::face(f, &normal)?;
            out.push(CompactFace {
                points: face.points,
                dim: face.dim,
                weights: vec![normal],
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceType {
    StronglyPolarPositive,
    StronglyPolarNonNegative,
    NotOfType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceTypeVerdict {
    pub verdict: FaceType,
    /// One record per classifying weight, slope order.
    pub table: Vec<FaceDegreeRecord>,
    pub offending_face: Option<WeightVector>,
    /// Vertices whose candidate weights disagree on the polar sign.
    pub sign_disagreements: Vec<Vec<i64>>,
}

pub fn classify_face_type(f: &MixedPolynomial) -> Result<FaceTypeVerdict> {
    let faces = compact_faces(f)?;
    let mut table = Vec::new();
    let mut offending_face = None;
    let mut all_positive = true;
    let mut sign_disagreements = Vec::new();
    for face in &faces {
        let records = face.weights.iter().map(|w| degrees(f, w)).collect::<Result<Vec<_>>>()?;
        if records.windows(2).any(|r| r[0].polar_sign != r[1].polar_sign) {
            sign_disagreements.push(face.points[0].clone());
        }
        for r in records {
            if !r.is_non_negative() && offending_face.is_none() {
                offending_face = Some(r.weight.clone());
            }
            all_positive &= r.polar_sign == PolarSign::Positive;
            table.push(r);
        }
    }
    let verdict = match (offending_face.is_some(), all_positive) {
        (true, _) => FaceType::NotOfType,
        (false, true) => FaceType::StronglyPolarPositive,
        (false, false) => FaceType::StronglyPolarNonNegative,
    };
    Ok(FaceTypeVerdict {
        verdict,
        table,
        offending_face,
        sign_disagreements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightTransferReport {
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub counterexample: Option<FaceDegreeRecord>,
}

/// Samples strictly positive primitive weights with entries ≤ 50 and checks
/// that every face function is strongly mixed with `pdeg ≥ 0`.
pub fn check_weight_transfer(f: &MixedPolynomial, trials: usize, seed: u64) -> Result<WeightTransferReport> {
    let verdict = classify_face_type(f)?;
    if verdict.verdict == FaceType::NotOfType {
        return Err(Error::PreconditionNotVerified(format!(
            "face of weight {} is not strongly polar non-negative",
            verdict.offending_face.expect("NotOfType carries a face")
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let p = (0..f.n()).map(|_| rng.gen_range(1..=50)).collect();
        let w = WeightVector::new(p)?;
        let rec = degrees(f, &w)?;
        if rec.is_non_negative() {
            passed += 1;
        } else if counterexample.is_none() {
            counterexample = Some(rec);
        }
    }
    Ok(WeightTransferReport {
        trials,
        seed,
        passed,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[i64]) -> WeightVector {
        WeightVector::new(p.to_vec()).unwrap()
    }

    fn f_ab(a: u32, b: u32) -> MixedPolynomial {
        let text = format!(
            "z1^4*zb1^2 + z1^{a}*zb1^{}*z2^{b}*zb2^{} + zb1^2*z2^3 + z2^3*zb2^3",
            4 - a,
            3 - b
        );
        MixedPolynomial::parse(&text, 2).unwrap()
    }

    fn poly(s: &str) -> MixedPolynomial {
        MixedPolynomial::parse(s, 2).unwrap()
    }

    #[test]
    fn face_functions_of_family() {
        let f = f_ab(3, 1);
        assert_eq!(face_function(&f, &w(&[3, 4])).unwrap(), poly("z1^4*zb1^2 + zb1^2*z2^3"));
        assert_eq!(face_function(&f, &w(&[3, 2])).unwrap(), poly("zb1^2*z2^3 + z2^3*zb2^3"));
        assert_eq!(face_function(&f, &w(&[1, 2])).unwrap(), poly("z1^4*zb1^2"));
        assert_eq!(face_function(&f, &w(&[1, 0])), Err(Error::NonCompactFace(vec![1, 0])));
    }

    #[test]
    fn degree_records() {
        let f = f_ab(0, 0);
        let t = degrees(&f, &w(&[2, 3])).unwrap();
        assert_eq!((t.rdeg, t.pdeg), (12, Some(4)));
        let p = degrees(&f, &w(&[3, 2])).unwrap();
        assert_eq!((p.rdeg, p.pdeg), (12, Some(0)));
        assert_eq!(p.polar_sign, PolarSign::Zero);
        let g = MixedPolynomial::parse("z1^2*zb1 + z1*zb1^2", 1).unwrap();
        let r = degrees(&g, &w(&[1])).unwrap();
        assert_eq!((r.rdeg, r.pdeg, r.strongly_mixed), (3, None, false));
        assert_eq!(r.polar_sign, PolarSign::Mixed);
    }

    #[test]
    fn family_verdict() {
        let v = classify_face_type(&f_ab(2, 3)).unwrap();
        assert_eq!(v.verdict, FaceType::StronglyPolarNonNegative);
        let weights: Vec<_> = v.table.iter().map(|r| r.weight.clone()).collect();
        assert_eq!(
            weights,
            vec![w(&[2, 1]), w(&[3, 2]), w(&[1, 1]), w(&[3, 4]), w(&[2, 3]), w(&[1, 2])]
        );
        for r in &v.table {
            let zero = r.weight == w(&[3, 2]) || r.weight == w(&[2, 1]);
            assert_eq!(r.pdeg == Some(0), zero, "{}", r.weight);
            assert!(r.pdeg.unwrap() >= 0);
        }
        assert!(v.sign_disagreements.is_empty());
    }

    #[test]
    fn holomorphic_and_real_verdicts() {
        let v = classify_face_type(&poly("z1^2 + z2^2")).unwrap();
        assert_eq!(v.verdict, FaceType::StronglyPolarPositive);
        assert!(v.table.iter().all(|r| r.pdeg == Some(r.rdeg)));
        let v = classify_face_type(&poly("z1*zb1 + z2*zb2")).unwrap();
        assert_eq!(v.verdict, FaceType::StronglyPolarNonNegative);
        assert!(v.table.iter().all(|r| r.pdeg == Some(0)));
    }

    #[test]
    fn not_of_type() {
        // Edge with polar values of both signs.
        let v = classify_face_type(&poly("z1^2*zb1 + z1*zb1^2 + z2^3")).unwrap();
        assert_eq!(v.verdict, FaceType::NotOfType);
        assert!(v.offending_face.is_some());
        assert!(matches!(
            check_weight_transfer(&poly("zb1 + zb2"), 10, 1),
            Err(Error::PreconditionNotVerified(_))
        ));
    }

    #[test]
    fn vertex_fallback_weight() {
        // Rays E1, (1,1), E2 are already regular: vertices use the sum of the
        // bounding rays.
        let faces = compact_faces(&poly("z1^2*zb1 + z2^3")).unwrap();
        let weights: Vec<_> = faces.iter().map(|c| c.weights.clone()).collect();
        assert_eq!(weights, vec![vec![w(&[2, 1])], vec![w(&[1, 1])], vec![w(&[1, 2])]]);
    }

    #[test]
    fn weight_transfer_on_real_germ() {
        let rep = check_weight_transfer(&poly("z1*zb1 + z2*zb2"), 100, 3).unwrap();
        assert_eq!(rep.passed, 100);
    }
}
