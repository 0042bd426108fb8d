//! The conformal model of Euclidean 3-space in `Cl(4,1)`.
//!
//! Storage uses the orthonormal basis `e1..e4` (square `+1`) and `e5`
//! (square `-1`). The null vectors are the combinations
//! `e∞ = e4 + e5` and `eo = (e5 - e4) / 2`, so `eo⌋e∞ = -1` and
//! `E = e∞ ∧ eo = e45`.

use serde::{Deserialize, Serialize};

use crate::algebra::Signature;
use crate::error::{Error, Result};
use crate::multivector::{Multivector, VALIDATION_TOLERANCE};
use crate::subspace::{self, Interpretation, Versor};

/// Euclidean coordinates.
pub type Point3 = [f64; 3];

const E4: u32 = 0b01000;
const E5: u32 = 0b10000;

/// `Cl(4,1,0)`.
pub fn signature() -> Signature {
    Signature::new(4, 1, 0).expect("valid signature")
}

fn check_conformal(m: &Multivector) -> Result<()> {
    if m.sig() != signature() {
        return Err(Error::NotConformal(m.sig()));
    }
    Ok(())
}

/// Point at infinity `e∞ = e4 + e5`.
pub fn e_inf() -> Multivector {
    let mut m = Multivector::zero(signature());
    m.set(E4, 1.0);
    m.set(E5, 1.0);
    m
}

/// Origin `eo = (e5 - e4) / 2`.
pub fn e_origin() -> Multivector {
    let mut m = Multivector::zero(signature());
    m.set(E4, -0.5);
    m.set(E5, 0.5);
    m
}

/// Origin-infinity bivector `E = e∞ ∧ eo`.
pub fn e_minkowski() -> Multivector {
    e_inf() ^ e_origin()
}

/// Euclidean pseudoscalar `e123`.
pub fn i3() -> Multivector {
    Multivector::basis(signature(), 0b111).expect("in range")
}

/// Euclidean vector `x` inside `Cl(4,1)`.
pub fn euclidean(x: Point3) -> Multivector {
    Multivector::vector(signature(), &x).expect("three components")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Point,
    PointPair,
    Circle,
    Sphere,
    Line,
    Plane,
    FlatPoint,
    Space,
}

/// A multivector of `Cl(4,1)` together with how it is to be read.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformalObject {
    #[serde(flatten)]
    mv: Multivector,
    role: Interpretation,
    kind: Kind,
}

impl ConformalObject {
    pub fn new(mv: Multivector, role: Interpretation, kind: Kind) -> Result<Self> {
        check_conformal(&mv)?;
        Ok(ConformalObject { mv, role, kind })
    }

    /// Wrap a raw multivector, guessing the kind from grade and `e∞` factors.
    pub fn classify(mv: Multivector, role: Interpretation) -> Result<Self> {
        check_conformal(&mv)?;
        let kind = classify(&mv, role)?;
        Ok(ConformalObject { mv, role, kind })
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn into_mv(self) -> Multivector {
        self.mv
    }

    pub fn role(&self) -> Interpretation {
        self.role
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// True when the construction collapsed to zero.
    pub fn is_degenerate(&self) -> bool {
        self.mv.max_abs() == 0.0 || self.mv.coeff_norm() <= f64::EPSILON * self.mv.max_abs()
    }

    /// Whether the point `x` lies on the object.
    pub fn contains(&self, x: &ConformalObject) -> Result<bool> {
        let p = normalize_point(&x.mv)?;
        let product = match self.role {
            Interpretation::Opns => self.mv.outer(&p)?,
            Interpretation::Ipns => p.left_contraction(&self.mv)?,
        };
        let scale = self.mv.max_abs() * p.max_abs();
        Ok(product.max_abs() <= 1e-9 * scale)
    }
}

fn classify(mv: &Multivector, role: Interpretation) -> Result<Kind> {
    let eps = VALIDATION_TOLERANCE * mv.max_abs();
    let grade = mv.homogeneous_grade(eps).ok_or(Error::Degenerate("object is not single-grade"))?;
    let scale = mv.max_abs();
    match role {
        Interpretation::Opns => {
            let flat = (mv ^ e_inf()).max_abs() <= 1e-9 * scale;
            Ok(match (grade, flat) {
                (1, _) => Kind::Point,
                (2, true) => Kind::FlatPoint,
                (2, false) => Kind::PointPair,
                (3, true) => Kind::Line,
                (3, false) => Kind::Circle,
                (4, true) => Kind::Plane,
                (4, false) => Kind::Sphere,
                (5, _) => Kind::Space,
                _ => return Err(Error::Degenerate("no geometric reading for this grade")),
            })
        }
        Interpretation::Ipns => {
            // planes have no eo component, i.e. X⌋e∞ = 0
            let flat = mv.left_contraction(&e_inf())?.max_abs() <= 1e-9 * scale;
            Ok(match (grade, flat) {
                (1, true) => Kind::Plane,
                (1, false) if mv.norm_squared().abs() <= 1e-9 * scale * scale => Kind::Point,
                (1, false) => Kind::Sphere,
                (2, true) => Kind::Line,
                (2, false) => Kind::Circle,
                _ => return Err(Error::Degenerate("no geometric reading for this grade")),
            })
        }
    }
}

/// `X = x + ½x² e∞ + eo`.
pub fn embed_point(x: Point3) -> ConformalObject {
    let x2: f64 = x.iter().map(|c| c * c).sum();
    let mv = euclidean(x) + e_inf().scale(0.5 * x2) + e_origin();
    ConformalObject { mv, role: Interpretation::Opns, kind: Kind::Point }
}

/// Rescale a homogeneous point so that `X⌋e∞ = -1`.
pub fn normalize_point(x: &Multivector) -> Result<Multivector> {
    check_conformal(x)?;
    let w = x.left_contraction(&e_inf())?.scalar_part();
    if w.abs() <= VALIDATION_TOLERANCE * x.max_abs() || w == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    Ok(x.scale(-1.0 / w))
}

/// Euclidean position of a (homogeneous) conformal point.
pub fn extract_point(x: &ConformalObject) -> Result<Point3> {
    let n = normalize_point(&x.mv)?;
    Ok([n.get(0b001), n.get(0b010), n.get(0b100)])
}

/// Euclidean distance between two conformal points, from `X⌋A = -½(x-a)²`.
pub fn point_distance(x: &ConformalObject, a: &ConformalObject) -> Result<f64> {
    let x = normalize_point(&x.mv)?;
    let a = normalize_point(&a.mv)?;
    let d2 = -2.0 * x.scalar_product(&a)?;
    let scale = x.max_abs() * a.max_abs();
    if d2 < -1e-9 * scale {
        return Err(Error::NegativeRadicand(d2));
    }
    Ok(d2.max(0.0).sqrt())
}

/// Translator `T = 1 + ½ t e∞`, built as the product of two parallel planes
/// `n` and `n + ½|t| e∞`.
pub fn translator(t: Point3) -> Versor {
    let len = t.iter().map(|c| c * c).sum::<f64>().sqrt();
    let sig = signature();
    if len == 0.0 {
        return Versor::from_factors(sig, &[]).expect("empty product");
    }
    let n = euclidean(t).scale(1.0 / len);
    let shifted = &n + &e_inf().scale(0.5 * len);
    Versor::from_factors(sig, &[n, shifted]).expect("unit planes are invertible")
}

/// Rotor turning by `angle` about the Euclidean `axis`, as a product of
/// two reflections.
pub fn rotor(axis: Point3, angle: f64) -> Result<Versor> {
    let len = axis.iter().map(|c| c * c).sum::<f64>().sqrt();
    if len == 0.0 {
        return Err(Error::ZeroVector);
    }
    let u = euclidean(axis).scale(1.0 / len);
    // a unit vector orthogonal to the axis
    let helper = if axis[0].abs() < 0.9 * len { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let h = euclidean(helper);
    let a = subspace::reject(&h, &u)?.grade_part(1)?;
    let a = a.scale(1.0 / a.norm());
    let b_dir = a.geometric_product(&u.geometric_product(&i3())?)?.grade_part(1)?;
    let b_dir = b_dir.scale(1.0 / b_dir.norm());
    let half = 0.5 * angle;
    let b = a.scale(half.cos()) + b_dir.scale(half.sin());
    Versor::from_factors(signature(), &[a, b])
}

/// OPNS round (or flat, for collinear/coplanar input) through 2 to 4 points.
pub fn round_from_points(points: &[ConformalObject]) -> Result<ConformalObject> {
    if !(2..=4).contains(&points.len()) {
        return Err(Error::Degenerate("rounds need 2 to 4 points"));
    }
    let mut wedge = Multivector::one(signature());
    let mut scale = 1.0;
    for p in points {
        let n = normalize_point(&p.mv)?;
        scale *= n.coeff_norm();
        wedge = wedge.outer(&n)?;
    }
    if wedge.coeff_norm() <= 1e-10 * scale {
        return Err(Error::Degenerate("points are not in general position"));
    }
    ConformalObject::classify(wedge, Interpretation::Opns)
}

/// `F = S ∧ e∞`.
pub fn flatten(s: &ConformalObject) -> Result<ConformalObject> {
    let kind = match s.kind {
        Kind::Point => Kind::FlatPoint,
        Kind::PointPair => Kind::Line,
        Kind::Circle => Kind::Plane,
        Kind::Sphere => Kind::Space,
        _ => return Err(Error::Degenerate("only rounds can be flattened")),
    };
    if s.role != Interpretation::Opns {
        return Err(Error::Degenerate("flatten expects an OPNS round"));
    }
    Ok(ConformalObject { mv: s.mv.outer(&e_inf())?, role: Interpretation::Opns, kind })
}

/// Geometry recovered from an OPNS round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundParams {
    /// Euclidean carrier blade `D`.
    pub direction: Multivector,
    pub center: Point3,
    /// May be negative for imaginary rounds.
    pub radius_squared: f64,
}

impl RoundParams {
    pub fn is_imaginary(&self) -> bool {
        self.radius_squared < 0.0
    }

    /// `sqrt(|r²|)`; check [`is_imaginary`](Self::is_imaginary) for the sign.
    pub fn radius(&self) -> f64 {
        self.radius_squared.abs().sqrt()
    }
}

/// `D = -F⌊E`, `r² = S Ŝ / D²`, `c = D⁻¹ [S ∧ (1+E)] ⌊ E`.
pub fn extract_round_params(s: &ConformalObject) -> Result<RoundParams> {
    let sm = &s.mv;
    check_conformal(sm)?;
    let e = e_minkowski();
    let f = sm.outer(&e_inf())?;
    let d = -f.right_contraction(&e)?;
    let d2 = d.geometric_product(&d)?.scalar_part();
    if d2.abs() <= VALIDATION_TOLERANCE * d.max_abs() * d.max_abs() {
        return Err(Error::Degenerate("carrier D squares to zero"));
    }
    let s_hat = sm.geometric_product(&sm.grade_involution())?.scalar_part();
    let radius_squared = s_hat / d2;
    let one_plus_e = Multivector::one(signature()) + &e;
    let c = d.scale(1.0 / d2).geometric_product(&sm.outer(&one_plus_e)?.right_contraction(&e)?)?;
    Ok(RoundParams { direction: d, center: [c.get(0b001), c.get(0b010), c.get(0b100)], radius_squared })
}

/// IPNS sphere `C - ½r² e∞`.
pub fn ipns_sphere(center: Point3, radius: f64) -> Result<ConformalObject> {
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::Degenerate("sphere radius must be non-negative"));
    }
    let mv = embed_point(center).mv - e_inf().scale(0.5 * radius * radius);
    let kind = if radius == 0.0 { Kind::Point } else { Kind::Sphere };
    Ok(ConformalObject { mv, role: Interpretation::Ipns, kind })
}

/// IPNS plane `n + d e∞` with unit normal `n` at signed distance `d`.
pub fn ipns_plane(normal: Point3, distance: f64) -> Result<ConformalObject> {
    let len = normal.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (len - 1.0).abs() > 1e-9 {
        return Err(Error::Degenerate("plane normal must be a unit vector"));
    }
    let mv = euclidean(normal) + e_inf().scale(distance);
    Ok(ConformalObject { mv, role: Interpretation::Ipns, kind: Kind::Plane })
}

/// Intersection of two IPNS vectors, `a ∧ b`: a circle for spheres, a line
/// for planes. Coincident inputs give a zero result flagged by
/// [`ConformalObject::is_degenerate`].
pub fn ipns_intersect(a: &ConformalObject, b: &ConformalObject) -> Result<ConformalObject> {
    for o in [a, b] {
        if o.role != Interpretation::Ipns || o.mv.homogeneous_grade(0.0) != Some(1) {
            return Err(Error::NotAVector);
        }
    }
    let mv = a.mv.outer(&b.mv)?;
    let kind = if a.kind == Kind::Plane && b.kind == Kind::Plane { Kind::Line } else { Kind::Circle };
    let scale = a.mv.coeff_norm() * b.mv.coeff_norm();
    let mv = if mv.coeff_norm() <= 1e-12 * scale { Multivector::zero(signature()) } else { mv };
    Ok(ConformalObject { mv, role: Interpretation::Ipns, kind })
}

fn ipns_vector(s: &ConformalObject) -> Result<&Multivector> {
    if s.mv.homogeneous_grade(0.0) != Some(1) {
        return Err(Error::NotAVector);
    }
    Ok(&s.mv)
}

/// Inversion in the IPNS sphere `S`: `X -> S X S` (as the reflection
/// `S⁻¹ X̂ S`, which agrees up to scale).
pub fn sphere_inversion(s: &ConformalObject, x: &ConformalObject) -> Result<ConformalObject> {
    let sv = ipns_vector(s)?;
    let mv = subspace::reflect(&x.mv, sv)?;
    let mv = if x.kind == Kind::Point { normalize_point(&mv)? } else { mv };
    Ok(ConformalObject { mv, role: x.role, kind: x.kind })
}

/// Conformal center `C = S e∞ S`, normalized.
pub fn sphere_center(s: &ConformalObject) -> Result<ConformalObject> {
    let sv = ipns_vector(s)?;
    if sv.norm_squared().abs() <= VALIDATION_TOLERANCE * sv.max_abs() * sv.max_abs() {
        return Err(Error::NullVector);
    }
    let c = sv.geometric_product(&e_inf())?.geometric_product(sv)?;
    let mv = normalize_point(&c.grade_part(1)?)?;
    Ok(ConformalObject { mv, role: Interpretation::Opns, kind: Kind::Point })
}
