//! Versors and blade subspaces.
//!
//! A [`Versor`] is a geometric product of invertible vectors and acts on
//! multivectors by the sandwich `V^{-1} X V`, twisted by the grade involution
//! for odd versors so that `k` reflections compose to the same map as `k`
//! nested [`reflect`] calls.
//!
//! Meet and join are properties of subspaces, not of the metric, so they are
//! evaluated on a Euclidean copy of the coefficients. This keeps them well
//! defined for null blades of `Cl(4,1)` and degenerate signatures.

use crate::algebra::Signature;
use crate::error::{Error, Result};
use crate::multivector::{Multivector, VALIDATION_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Versor {
    value: Multivector,
    parity: Parity,
    factors: Option<Vec<Multivector>>,
}

fn check_vector(a: &Multivector) -> Result<()> {
    match a.homogeneous_grade(0.0) {
        Some(1) => {}
        _ => return Err(Error::NotAVector),
    }
    let scale = a.max_abs();
    if a.norm_squared().abs() <= VALIDATION_TOLERANCE * scale * scale {
        return Err(Error::NullVector);
    }
    Ok(())
}

fn non_scalar_residue(m: &Multivector) -> f64 {
    m.coeffs()[1..].iter().fold(0.0f64, |a, c| a.max(c.abs()))
}

impl Versor {
    /// Ordered geometric product of invertible vectors. The empty list gives
    /// the even versor `1`.
    pub fn from_factors(sig: Signature, factors: &[Multivector]) -> Result<Self> {
        let mut value = Multivector::one(sig);
        for f in factors {
            if f.sig() != sig {
                return Err(Error::SignatureMismatch(sig, f.sig()));
            }
            check_vector(f)?;
            value = value.geometric_product(f)?;
        }
        let parity = if factors.len().is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        Ok(Versor { value, parity, factors: Some(factors.to_vec()) })
    }

    /// Validate a multivector as a versor without knowing its factors.
    ///
    /// Checks homogeneous parity, that `V V~` and `V~ V` are the same nonzero
    /// scalar, and that the twisted adjoint maps every basis vector to a vector.
    pub fn from_multivector(value: Multivector) -> Result<Self> {
        let scale = value.max_abs();
        if scale == 0.0 {
            return Err(Error::NotAVersor("zero"));
        }
        let eps = VALIDATION_TOLERANCE * scale;
        let parity = if value.odd_part().is_zero(eps) {
            Parity::Even
        } else if value.even_part().is_zero(eps) {
            Parity::Odd
        } else {
            return Err(Error::NotAVersor("mixed parity"));
        };
        let rev = value.reverse();
        let left = value.geometric_product(&rev)?;
        let right = rev.geometric_product(&value)?;
        let eps2 = VALIDATION_TOLERANCE * scale * scale;
        if non_scalar_residue(&left) > eps2 || non_scalar_residue(&right) > eps2 {
            return Err(Error::NotAVersor("V V~ is not scalar"));
        }
        if left.scalar_part().abs() <= eps2 || (left.scalar_part() - right.scalar_part()).abs() > eps2 {
            return Err(Error::NotAVersor("V V~ vanishes"));
        }
        let versor = Versor { value, parity, factors: None };
        let sig = versor.value.sig();
        for k in 1..=sig.dim() {
            let image = versor.apply(&Multivector::e(sig, k)?)?;
            let eps = VALIDATION_TOLERANCE * image.max_abs().max(1.0);
            let leaks = image.terms().any(|(bits, c)| bits.count_ones() != 1 && (c.is_nan() || c.abs() > eps));
            if leaks {
                return Err(Error::NotAVersor("does not preserve vectors"));
            }
        }
        Ok(versor)
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn into_value(self) -> Multivector {
        self.value
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn factors(&self) -> Option<&[Multivector]> {
        self.factors.as_deref()
    }

    /// `<V V~>_0`.
    pub fn magnitude(&self) -> f64 {
        self.value.norm_squared()
    }

    /// `V^{-1}`. With known factors this is `a_r^{-1} ... a_1^{-1}`.
    pub fn inverse(&self) -> Multivector {
        match &self.factors {
            Some(factors) => {
                let mut inv = Multivector::one(self.value.sig());
                for f in factors.iter().rev() {
                    inv = &inv * &f.scale(1.0 / f.norm_squared());
                }
                inv
            }
            None => self.value.reverse().scale(1.0 / self.magnitude()),
        }
    }

    /// Scale so that `|<V V~>_0| = 1`.
    pub fn normalized(&self) -> Self {
        let s = 1.0 / self.magnitude().abs().sqrt();
        Versor {
            value: self.value.scale(s),
            parity: self.parity,
            factors: self.factors.as_ref().map(|f| {
                let mut f = f.clone();
                if let Some(first) = f.first_mut() {
                    *first = first.scale(s);
                }
                f
            }),
        }
    }

    /// Versor of `self` followed by `then`.
    pub fn then(&self, then: &Versor) -> Result<Self> {
        let value = self.value.geometric_product(&then.value)?;
        let parity = if self.parity == then.parity { Parity::Even } else { Parity::Odd };
        let factors = match (&self.factors, &then.factors) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(Versor { value, parity, factors })
    }

    /// `V^{-1} X V` for even versors, `V^{-1} X^ V` for odd ones.
    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        let twisted = match self.parity {
            Parity::Even => x.clone(),
            Parity::Odd => x.grade_involution(),
        };
        self.inverse().geometric_product(&twisted)?.geometric_product(&self.value)
    }

    pub fn is_pin(&self) -> bool {
        (self.magnitude().abs() - 1.0).abs() <= VALIDATION_TOLERANCE
    }

    pub fn is_spin(&self) -> bool {
        self.is_pin() && self.parity == Parity::Even
    }

    pub fn is_spin_plus(&self) -> bool {
        self.is_spin() && (self.magnitude() - 1.0).abs() <= VALIDATION_TOLERANCE
    }
}

pub fn make_versor(sig: Signature, factors: &[Multivector]) -> Result<Versor> {
    Versor::from_factors(sig, factors)
}

pub fn apply_versor(v: &Versor, x: &Multivector) -> Result<Multivector> {
    v.apply(x)
}

/// Reflection in the hyperplane orthogonal to `a`: `-a^{-1} x a` on vectors,
/// extended to all grades as `a^{-1} x^ a`.
pub fn reflect(x: &Multivector, a: &Multivector) -> Result<Multivector> {
    check_vector(a)?;
    a.inverse()?.geometric_product(&x.grade_involution())?.geometric_product(a)
}

/// `(A ⌋ B) B^{-1}`.
pub fn project(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    let inv = b.inverse()?;
    a.left_contraction(b)?.geometric_product(&inv)
}

/// `(A ∧ B) B^{-1}`.
pub fn reject(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    let inv = b.inverse()?;
    a.outer(b)?.geometric_product(&inv)
}

fn euclidean_copy(m: &Multivector) -> Multivector {
    let sig = Signature::euclidean(m.sig().dim()).expect("dimension already validated");
    Multivector::from_coeffs(sig, m.coeffs().to_vec()).expect("same size")
}

fn restore(m: Multivector, sig: Signature) -> Multivector {
    Multivector::from_coeffs(sig, m.into_coeffs()).expect("same size")
}

/// Divide by the largest-magnitude coefficient so that it becomes `+1`.
pub fn normalize_largest(m: &Multivector) -> Multivector {
    let mut value = 0.0f64;
    for &c in m.coeffs() {
        if c.abs() > value.abs() {
            value = c;
        }
    }
    if value == 0.0 {
        m.clone()
    } else {
        m.scale(1.0 / value)
    }
}

/// Grade of `a` if it is a blade (an outer product of vectors).
///
/// The element must be single-grade with a scalar square; the factorization
/// is then re-wedged and compared, which also rejects the rare non-simple
/// elements that pass the square test in six or more dimensions.
pub fn blade_grade(a: &Multivector) -> Result<usize> {
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::ZeroBlade);
    }
    let eps = VALIDATION_TOLERANCE * scale;
    let grade = a.homogeneous_grade(eps).ok_or(Error::NotABlade("mixed grades"))?;
    let e = euclidean_copy(&a.grade_part(grade)?);
    let sq = e.geometric_product(&e)?;
    if non_scalar_residue(&sq) > VALIDATION_TOLERANCE * scale * scale {
        return Err(Error::NotABlade("square is not scalar"));
    }
    if grade >= 2 {
        let factors = factor_euclidean(&e, grade)?;
        let mut rebuilt = Multivector::one(e.sig());
        for f in &factors {
            rebuilt = rebuilt.outer(f)?;
        }
        let ratio = e.scalar_product(&rebuilt)? / rebuilt.scalar_product(&rebuilt)?;
        if !(rebuilt.scale(ratio).approx_eq(&e, 1e-8)) {
            return Err(Error::NotABlade("not an outer product of vectors"));
        }
    }
    Ok(grade)
}

/// Unit vectors spanning the subspace of a Euclidean blade.
fn factor_euclidean(blade: &Multivector, grade: usize) -> Result<Vec<Multivector>> {
    let sig = blade.sig();
    let mut largest = 0u32;
    for (bits, c) in blade.terms() {
        if c.abs() > blade.get(largest).abs() {
            largest = bits;
        }
    }
    let norm = blade.norm();
    let mut rest = blade.scale(1.0 / norm);
    let mut factors = Vec::with_capacity(grade);
    let indices: Vec<usize> = crate::algebra::blade_indices(largest).collect();
    for &k in indices.iter().take(grade.saturating_sub(1)) {
        let e = Multivector::e(sig, k)?;
        let f = project(&e, &rest)?;
        let f = f.scale(1.0 / f.norm());
        rest = f.left_contraction(&rest)?;
        factors.push(f);
    }
    if grade >= 1 {
        let n = rest.norm();
        factors.push(rest.scale(1.0 / n));
    }
    Ok(factors)
}

/// Vector factors `f_1 .. f_k` of a blade with `f_1 ∧ ... ∧ f_k ∝ A`.
///
/// Factors are orthonormal with respect to the coefficient (Euclidean) inner
/// product, whatever the signature.
pub fn factor_blade(a: &Multivector) -> Result<Vec<Multivector>> {
    let grade = blade_grade(a)?;
    let sig = a.sig();
    let factors = factor_euclidean(&euclidean_copy(a), grade)?;
    Ok(factors.into_iter().map(|f| restore(f, sig)).collect())
}

const SPAN_TOLERANCE: f64 = 1e-9;

/// Smallest blade containing both subspaces, scaled so its largest
/// coefficient is `+1`.
pub fn join(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    if a.sig() != b.sig() {
        return Err(Error::SignatureMismatch(a.sig(), b.sig()));
    }
    let sig = a.sig();
    blade_grade(a)?;
    let mut joined = euclidean_copy(a);
    joined = joined.scale(1.0 / joined.coeff_norm());
    for f in factor_blade(b)? {
        let f = euclidean_copy(&f);
        let wedge = joined.outer(&f)?;
        let size = wedge.coeff_norm();
        if size > SPAN_TOLERANCE * f.coeff_norm() {
            joined = wedge.scale(1.0 / size);
        }
    }
    Ok(normalize_largest(&restore(joined, sig)))
}

/// Intersection of two blade subspaces, `(B ⌋ J^{-1}) ⌋ A`, normalized like
/// [`join`].
///
/// Subspaces meeting only in the origin give the scalar `1`, the blade of the
/// zero subspace. A supplied `join_blade` must contain both inputs.
pub fn meet(a: &Multivector, b: &Multivector, join_blade: Option<&Multivector>) -> Result<Multivector> {
    if a.sig() != b.sig() {
        return Err(Error::SignatureMismatch(a.sig(), b.sig()));
    }
    let sig = a.sig();
    blade_grade(a)?;
    blade_grade(b)?;
    let j = match join_blade {
        Some(j) => {
            blade_grade(j)?;
            j.clone()
        }
        None => join(a, b)?,
    };
    let (ea, eb, ej) = (euclidean_copy(a), euclidean_copy(b), euclidean_copy(&j));
    let m = eb.left_contraction(&ej.inverse()?)?.left_contraction(&ea)?;
    let scale = ea.coeff_norm() * eb.coeff_norm() / ej.coeff_norm();
    if m.coeff_norm() <= SPAN_TOLERANCE * scale {
        return Err(Error::Degenerate("join does not contain both blades"));
    }
    Ok(normalize_largest(&restore(m, sig)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Interpretation {
    /// `{x | x ∧ A = 0}`
    Opns,
    /// `{x | x ⌋ A = 0}`
    Ipns,
}

/// A blade read as a subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct BladeSubspace {
    blade: Multivector,
    interpretation: Interpretation,
}

impl BladeSubspace {
    pub fn new(blade: Multivector, interpretation: Interpretation) -> Result<Self> {
        blade_grade(&blade)?;
        Ok(BladeSubspace { blade, interpretation })
    }

    pub fn opns(blade: Multivector) -> Result<Self> {
        Self::new(blade, Interpretation::Opns)
    }

    pub fn ipns(blade: Multivector) -> Result<Self> {
        Self::new(blade, Interpretation::Ipns)
    }

    pub fn blade(&self) -> &Multivector {
        &self.blade
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interpretation
    }

    pub fn contains(&self, x: &Multivector) -> Result<bool> {
        match self.interpretation {
            Interpretation::Opns => opns_contains(&self.blade, x),
            Interpretation::Ipns => ipns_contains(&self.blade, x),
        }
    }

    /// Same subspace in the other representation, via the dual blade.
    pub fn dual(&self) -> Result<Self> {
        let (blade, interpretation) = match self.interpretation {
            Interpretation::Opns => (self.blade.dual()?, Interpretation::Ipns),
            Interpretation::Ipns => (self.blade.undual()?, Interpretation::Opns),
        };
        Ok(BladeSubspace { blade, interpretation })
    }
}

fn vanishes(product: &Multivector, x: &Multivector, blade: &Multivector) -> bool {
    product.max_abs() <= VALIDATION_TOLERANCE * x.max_abs() * blade.max_abs()
}

/// `x ∧ A = 0`.
pub fn opns_contains(blade: &Multivector, x: &Multivector) -> Result<bool> {
    Ok(vanishes(&x.outer(blade)?, x, blade))
}

/// `x ⌋ A = 0`.
pub fn ipns_contains(blade: &Multivector, x: &Multivector) -> Result<bool> {
    Ok(vanishes(&x.left_contraction(blade)?, x, blade))
}
