//! Dense multivectors over `Cl(p,q,r)`.
//!
//! Coefficients are stored in a `2^n` array indexed by blade bitmask. All
//! bilinear products share one kernel that walks the nonzero coefficient
//! pairs and keeps the blade products admitted by a grade filter.

use std::fmt;
use std::ops::{Add, AddAssign, BitXor, Div, Mul, Neg, Sub, SubAssign};

use crate::algebra::{blade_indices, blade_name, parse_blade_name, product_factor, Signature};
use crate::error::{Error, Result};

/// Default absolute comparison tolerance, scaled by operand magnitude.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Relative tolerance for structural checks on values that went through
/// several floating point products (blade and versor validation).
pub const VALIDATION_TOLERANCE: f64 = 1e-9;

/// Maximum number of Taylor terms tried by [`Multivector::exp`].
pub const EXP_MAX_TERMS: usize = 64;

/// Equality contract for floating point multivectors.
///
/// Two values compare equal when every coefficient differs by at most
/// `abs * max(|a|_max, |b|_max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: DEFAULT_TOLERANCE }
    }
}

impl Tolerance {
    pub fn new(abs: f64) -> Self {
        Tolerance { abs }
    }

    pub fn eq(&self, a: &Multivector, b: &Multivector) -> bool {
        a.approx_eq(b, self.abs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, coeffs: vec![0.0; sig.size()] }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[0] = value;
        m
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, 1.0)
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != sig.size() {
            return Err(Error::CoefficientLength { got: coeffs.len(), expected: sig.size() });
        }
        Ok(Multivector { sig, coeffs })
    }

    /// Unit basis blade with the given bitmask.
    pub fn basis(sig: Signature, bits: u32) -> Result<Self> {
        if bits as usize >= sig.size() {
            let index = 32 - bits.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, dim: sig.dim() });
        }
        let mut m = Self::zero(sig);
        m.coeffs[bits as usize] = 1.0;
        Ok(m)
    }

    /// Unit basis blade by name, e.g. `"e12"`.
    pub fn blade(sig: Signature, name: &str) -> Result<Self> {
        Self::basis(sig, parse_blade_name(name, sig.dim())?)
    }

    /// The generator `e_k`, `k` counted from 1.
    pub fn e(sig: Signature, k: usize) -> Result<Self> {
        if k == 0 || k > sig.dim() {
            return Err(Error::IndexOutOfRange { index: k, dim: sig.dim() });
        }
        Self::basis(sig, 1 << (k - 1))
    }

    /// Grade-1 element with the given components on `e_1 .. e_m`.
    pub fn vector(sig: Signature, components: &[f64]) -> Result<Self> {
        if components.len() > sig.dim() {
            return Err(Error::DimensionMismatch { expected: sig.dim(), got: components.len() });
        }
        let mut m = Self::zero(sig);
        for (i, &c) in components.iter().enumerate() {
            m.coeffs[1 << i] = c;
        }
        Ok(m)
    }

    /// The unit pseudoscalar `I = e_{1...n}`.
    pub fn pseudoscalar(sig: Signature) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[sig.pseudoscalar_bits() as usize] = 1.0;
        m
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn get(&self, bits: u32) -> f64 {
        self.coeffs.get(bits as usize).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, bits: u32, value: f64) {
        self.coeffs[bits as usize] = value;
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Components on `e_1 .. e_n`.
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.sig.dim()).map(|i| self.coeffs[1 << i]).collect()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean length of the coefficient array, independent of the metric.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Nonzero `(bits, coefficient)` pairs in bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(i, c)| (i as u32, *c))
    }

    /// Grades carrying a coefficient larger than `eps`.
    pub fn grades(&self, eps: f64) -> Vec<usize> {
        let mut present = vec![false; self.sig.dim() + 1];
        for (bits, c) in self.terms() {
            if c.abs() > eps {
                present[bits.count_ones() as usize] = true;
            }
        }
        present.iter().enumerate().filter(|(_, p)| **p).map(|(k, _)| k).collect()
    }

    /// The single grade of a homogeneous element, ignoring coefficients
    /// below `eps`. `None` for mixed grades or zero.
    pub fn homogeneous_grade(&self, eps: f64) -> Option<usize> {
        match self.grades(eps).as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.max_abs() <= eps
    }

    fn check_sig(&self, other: &Multivector) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(self.sig, other.sig));
        }
        Ok(())
    }

    pub fn approx_eq(&self, other: &Multivector, abs: f64) -> bool {
        if self.sig != other.sig {
            return false;
        }
        let scale = self.max_abs().max(other.max_abs());
        let eps = abs * scale;
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| (a - b).abs() <= eps)
    }

    fn map_indexed(&self, f: impl Fn(u32, f64) -> f64) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, &c)| f(i as u32, c)).collect();
        Multivector { sig: self.sig, coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_indexed(|_, c| c * s)
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Self> {
        self.check_sig(other)?;
        Ok(self.map_indexed(|i, c| c + other.coeffs[i as usize]))
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Self> {
        self.check_sig(other)?;
        Ok(self.map_indexed(|i, c| c - other.coeffs[i as usize]))
    }

    fn product_with(&self, other: &Multivector, keep: impl Fn(u32, u32) -> bool) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = vec![0.0; self.sig.size()];
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if keep(a, b) {
                    out[(a ^ b) as usize] += ca * cb * product_factor(a, b, &self.sig);
                }
            }
        }
        Ok(Multivector { sig: self.sig, coeffs: out })
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Self> {
        self.product_with(other, |_, _| true)
    }

    /// Outer product: keeps blade pairs whose grades add.
    pub fn outer(&self, other: &Multivector) -> Result<Self> {
        self.product_with(other, |a, b| a & b == 0)
    }

    /// Left contraction `A ⌋ B`: the grade `s - k` part of each `A_k B_s`,
    /// zero when `k > s`.
    pub fn left_contraction(&self, other: &Multivector) -> Result<Self> {
        self.product_with(other, |a, b| a & !b == 0)
    }

    /// Right contraction `A ⌊ B`: the grade `k - s` part of each `A_k B_s`.
    pub fn right_contraction(&self, other: &Multivector) -> Result<Self> {
        self.product_with(other, |a, b| b & !a == 0)
    }

    /// Scalar product `A * B = <AB>_0`.
    pub fn scalar_product(&self, other: &Multivector) -> Result<f64> {
        self.check_sig(other)?;
        Ok(self.terms().map(|(a, ca)| ca * other.coeffs[a as usize] * product_factor(a, a, &self.sig)).sum())
    }

    /// Commutator product `(AB - BA) / 2`.
    pub fn commutator(&self, other: &Multivector) -> Result<Self> {
        let ab = self.geometric_product(other)?;
        let ba = other.geometric_product(self)?;
        Ok((ab - ba).scale(0.5))
    }

    pub fn grade_part(&self, k: usize) -> Result<Self> {
        if k > self.sig.dim() {
            return Err(Error::GradeOutOfRange { grade: k, dim: self.sig.dim() });
        }
        Ok(self.map_indexed(|i, c| if i.count_ones() as usize == k { c } else { 0.0 }))
    }

    /// Even-grade part.
    pub fn even_part(&self) -> Self {
        self.map_indexed(|i, c| if i.count_ones() % 2 == 0 { c } else { 0.0 })
    }

    /// Odd-grade part.
    pub fn odd_part(&self) -> Self {
        self.map_indexed(|i, c| if i.count_ones() % 2 == 1 { c } else { 0.0 })
    }

    /// Reversion, sign `(-1)^{k(k-1)/2}` on grade `k`.
    pub fn reverse(&self) -> Self {
        self.map_indexed(|i, c| if reverse_flips(i.count_ones()) { -c } else { c })
    }

    /// Main involution, sign `(-1)^k` on grade `k`.
    pub fn grade_involution(&self) -> Self {
        self.map_indexed(|i, c| if i.count_ones() % 2 == 1 { -c } else { c })
    }

    /// Clifford conjugation, sign `(-1)^{k(k+1)/2}` on grade `k`.
    pub fn clifford_conjugate(&self) -> Self {
        self.map_indexed(|i, c| if reverse_flips(i.count_ones() + 1) { -c } else { c })
    }

    /// `<M M~>_0`. May be negative or zero in non-Euclidean signatures.
    pub fn norm_squared(&self) -> f64 {
        self.terms()
            .map(|(a, c)| {
                let rev = if reverse_flips(a.count_ones()) { -1.0 } else { 1.0 };
                c * c * rev * product_factor(a, a, &self.sig)
            })
            .sum()
    }

    /// `sqrt(|<M M~>_0|)`.
    pub fn norm(&self) -> f64 {
        self.norm_squared().abs().sqrt()
    }

    /// Inverse of the unit pseudoscalar.
    pub fn pseudoscalar_inverse(sig: Signature) -> Result<Self> {
        if sig.is_degenerate() {
            return Err(Error::DegenerateSignature(sig));
        }
        let i = Self::pseudoscalar(sig);
        // I I~ = ±1 for a nondegenerate diagonal metric
        let s = i.norm_squared();
        Ok(i.reverse().scale(1.0 / s))
    }

    /// `M I^{-1}`.
    pub fn dual(&self) -> Result<Self> {
        let inv = Self::pseudoscalar_inverse(self.sig)?;
        self.geometric_product(&inv)
    }

    /// Inverse of [`dual`](Self::dual): `M I`.
    pub fn undual(&self) -> Result<Self> {
        if self.sig.is_degenerate() {
            return Err(Error::DegenerateSignature(self.sig));
        }
        self.geometric_product(&Self::pseudoscalar(self.sig))
    }

    /// Inverse of a vector or of a versor.
    ///
    /// Vectors use `a / a^2`. Other inputs must satisfy `M M~ = M~ M = s`
    /// with a nonzero scalar `s`, giving `M~ / s`.
    pub fn inverse(&self) -> Result<Self> {
        let scale = self.max_abs();
        if scale == 0.0 {
            return Err(Error::NotInvertible);
        }
        if self.homogeneous_grade(0.0) == Some(1) {
            let sq = self.norm_squared();
            if sq.abs() <= VALIDATION_TOLERANCE * scale * scale {
                return Err(Error::NullVector);
            }
            return Ok(self.scale(1.0 / sq));
        }
        let rev = self.reverse();
        let left = self.geometric_product(&rev)?;
        let right = rev.geometric_product(self)?;
        let eps = VALIDATION_TOLERANCE * scale * scale;
        let residue = |m: &Multivector| m.coeffs[1..].iter().fold(0.0f64, |a, c| a.max(c.abs()));
        if residue(&left) > eps || residue(&right) > eps {
            return Err(Error::NotInvertible);
        }
        let s = left.scalar_part();
        if s.abs() <= eps {
            return Err(Error::NotInvertible);
        }
        Ok(rev.scale(1.0 / s))
    }

    /// Exponential of a blade, or of anything squaring to a scalar.
    ///
    /// Elements whose square is not scalar fall back to the Taylor series.
    pub fn exp(&self) -> Result<Self> {
        let sq = self.geometric_product(self)?;
        let s2 = sq.scalar_part();
        let residue = sq.coeffs[1..].iter().fold(0.0f64, |a, c| a.max(c.abs()));
        if residue <= DEFAULT_TOLERANCE * sq.max_abs().max(1.0) {
            let one = Self::one(self.sig);
            return Ok(if s2 < 0.0 {
                let s = (-s2).sqrt();
                one.scale(s.cos()) + self.scale(s.sin() / s)
            } else if s2 > 0.0 {
                let s = s2.sqrt();
                one.scale(s.cosh()) + self.scale(s.sinh() / s)
            } else {
                one + self.clone()
            });
        }
        self.exp_series()
    }

    /// Taylor series of the exponential, summed until the next term is
    /// negligible.
    pub fn exp_series(&self) -> Result<Self> {
        let mut sum = Self::one(self.sig);
        let mut term = Self::one(self.sig);
        for k in 1..EXP_MAX_TERMS {
            term = term.geometric_product(self)?.scale(1.0 / k as f64);
            sum += &term;
            if !sum.is_finite() {
                break;
            }
            if term.max_abs() <= f64::EPSILON * sum.max_abs().max(1.0) {
                return Ok(sum);
            }
        }
        Err(Error::NoConvergence(EXP_MAX_TERMS))
    }

    /// Render as a signed blade sum with `precision` significant digits.
    ///
    /// Terms smaller than `10^-precision` of the largest coefficient are
    /// dropped; unit coefficients are elided (`-e2`, not `-1e2`).
    pub fn format(&self, precision: usize) -> String {
        let precision = precision.max(1);
        let max = self.max_abs();
        let cutoff = max * 10f64.powi(-(precision as i32));
        let dim = self.sig.dim();
        let mut out = String::new();
        for bits in canonical_order(dim) {
            let c = self.coeffs[bits as usize];
            if c == 0.0 || c.abs() < cutoff {
                continue;
            }
            let mag = format_number(c.abs(), precision);
            if mag == "0" {
                continue;
            }
            let body = if bits == 0 {
                mag
            } else if mag == "1" {
                blade_name(bits, dim)
            } else {
                format!("{mag}{}", blade_name(bits, dim))
            };
            if out.is_empty() {
                if c < 0.0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0.0 { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[inline]
fn reverse_flips(grade: u32) -> bool {
    // k(k-1)/2 is odd for k = 2, 3 mod 4
    grade % 4 >= 2
}

/// Blade masks of dimension `dim` ordered by grade, then lexicographically
/// by index list: `1, e1, e2, e3, e12, e13, e23, e123`.
pub fn canonical_order(dim: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..(1u32 << dim)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), blade_indices(m).collect::<Vec<_>>()));
    masks
}

/// Plain decimal with `precision` significant digits, trailing zeros
/// trimmed, never in exponent notation.
pub fn format_number(v: f64, precision: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let shift = precision as i32 - 1 - mag;
    let rounded = if shift >= 0 {
        let f = 10f64.powi(shift);
        (v * f).round() / f
    } else {
        let f = 10f64.powi(-shift);
        (v / f).round() * f
    };
    let decimals = shift.max(0) as usize;
    let mut s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(f.precision().unwrap_or(6)))
    }
}

/// Angle from `a` to `b` in radians.
///
/// In the plane (`n = 2`) the angle is oriented by `e12` and lies in
/// `(-π, π]`; in higher dimensions there is no reference plane and the
/// unsigned angle in `[0, π]` is returned.
pub fn angle_between(a: &Multivector, b: &Multivector) -> Result<f64> {
    for v in [a, b] {
        if v.homogeneous_grade(0.0).is_some_and(|k| k != 1) {
            return Err(Error::NotAVector);
        }
        if v.is_zero(0.0) {
            return Err(Error::ZeroVector);
        }
    }
    let ab = a.geometric_product(b)?;
    let cos_part = ab.scalar_part();
    let biv = ab.grade_part(2)?;
    let sin_part = if a.sig().dim() == 2 {
        let e12_inv = Multivector::basis(a.sig(), 0b11)?.inverse()?;
        biv.geometric_product(&e12_inv)?.scalar_part()
    } else {
        biv.norm()
    };
    Ok(sin_part.atan2(cos_part))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                (&self).$method(rhs)
            }
        }
        impl $trait<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                self.$method(&rhs)
            }
        }
    };
}

// Operators panic on signature mismatch; use the `try_*`/named methods for
// fallible arithmetic.
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, geometric_product);
forward_binop!(BitXor, bitxor, outer);

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}

impl Mul<&Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        rhs.scale(self)
    }
}

impl Div<f64> for Multivector {
    type Output = Multivector;
    fn div(self, rhs: f64) -> Multivector {
        self.scale(1.0 / rhs)
    }
}

impl Div<f64> for &Multivector {
    type Output = Multivector;
    fn div(self, rhs: f64) -> Multivector {
        self.scale(1.0 / rhs)
    }
}
