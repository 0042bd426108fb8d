//! Numeric vector differential `a·∇f` and vector derivative `∇f` of
//! multivector fields on Euclidean space, by central differences.

use crate::algebra::Signature;
use crate::error::{Error, Result};
use crate::multivector::Multivector;

/// Distance below which the example fields refuse to evaluate.
pub const SINGULARITY_RADIUS: f64 = 1e-8;

/// A multivector-valued function on `ℝⁿ`, `n = sig.dim()`.
pub trait Field {
    fn signature(&self) -> Signature;
    fn eval(&self, x: &[f64]) -> Result<Multivector>;
}

/// A [`Field`] from a closure.
pub struct FnField<F> {
    sig: Signature,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(&[f64]) -> Result<Multivector>,
{
    pub fn new(sig: Signature, f: F) -> Result<Self> {
        euclidean_only(sig)?;
        Ok(FnField { sig, f })
    }
}

impl<F> Field for FnField<F>
where
    F: Fn(&[f64]) -> Result<Multivector>,
{
    fn signature(&self) -> Signature {
        self.sig
    }

    fn eval(&self, x: &[f64]) -> Result<Multivector> {
        (self.f)(x)
    }
}

fn euclidean_only(sig: Signature) -> Result<()> {
    if sig.is_euclidean() {
        Ok(())
    } else {
        Err(Error::Degenerate("fields live on a Euclidean signature"))
    }
}

fn check_dim(sig: Signature, v: &[f64]) -> Result<()> {
    if v.len() != sig.dim() {
        return Err(Error::DimensionMismatch { expected: sig.dim(), got: v.len() });
    }
    Ok(())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(n: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[k] = 1.0;
    v
}

/// `1e-5 · (1 + |x|)`.
pub fn default_step(x: &[f64]) -> f64 {
    1e-5 * (1.0 + norm(x))
}

fn eval_finite(f: &dyn Field, x: &[f64]) -> Result<Multivector> {
    let v = f.eval(x)?;
    if v.sig() != f.signature() {
        return Err(Error::SignatureMismatch(f.signature(), v.sig()));
    }
    if !v.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(v)
}

/// `[f(x + ha) - f(x - ha)] / 2h`. `f(x)` itself must also be defined.
pub fn vector_differential(f: &dyn Field, x: &[f64], a: &[f64], h: f64) -> Result<Multivector> {
    let sig = f.signature();
    check_dim(sig, x)?;
    check_dim(sig, a)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Degenerate("step must be positive"));
    }
    eval_finite(f, x)?;
    let plus: Vec<f64> = x.iter().zip(a).map(|(x, a)| x + h * a).collect();
    let minus: Vec<f64> = x.iter().zip(a).map(|(x, a)| x - h * a).collect();
    let d = eval_finite(f, &plus)?.try_sub(&eval_finite(f, &minus)?)?;
    Ok(d.scale(0.5 / h))
}

/// `∂_k f`.
pub fn partial(f: &dyn Field, x: &[f64], k: usize, h: f64) -> Result<Multivector> {
    vector_differential(f, x, &unit(f.signature().dim(), k), h)
}

/// `∇f = Σ e_k ∂_k f`.
pub fn vector_derivative(f: &dyn Field, x: &[f64], h: f64) -> Result<Multivector> {
    let sig = f.signature();
    let mut acc = Multivector::zero(sig);
    for k in 0..sig.dim() {
        acc += &Multivector::e(sig, k + 1)?.geometric_product(&partial(f, x, k, h)?)?;
    }
    Ok(acc)
}

/// `∇f = Σ b_k (b_k·∇f)` over an orthonormal frame `b_k` of Euclidean vectors.
pub fn vector_derivative_in_frame(f: &dyn Field, x: &[f64], frame: &[Multivector], h: f64) -> Result<Multivector> {
    let sig = f.signature();
    if frame.len() != sig.dim() {
        return Err(Error::DimensionMismatch { expected: sig.dim(), got: frame.len() });
    }
    let mut acc = Multivector::zero(sig);
    for b in frame {
        if b.sig() != sig {
            return Err(Error::SignatureMismatch(sig, b.sig()));
        }
        let d = vector_differential(f, x, &b.vector_part(), h)?;
        acc += &b.geometric_product(&d)?;
    }
    Ok(acc)
}

/// `∇_a (a·∇f)`: the derivative recovered from the differential, holding `x`
/// fixed and differencing the (linear) map `a ↦ a·∇f` about `a = 0`.
pub fn derivative_from_differential(f: &dyn Field, x: &[f64], h: f64) -> Result<Multivector> {
    let sig = f.signature();
    check_dim(sig, x)?;
    let n = sig.dim();
    let mut acc = Multivector::zero(sig);
    for k in 0..n {
        let ek = unit(n, k);
        let back: Vec<f64> = ek.iter().map(|c| -c).collect();
        let slope = vector_differential(f, x, &ek, h)?.try_sub(&vector_differential(f, x, &back, h)?)?;
        acc += &Multivector::e(sig, k + 1)?.geometric_product(&slope.scale(0.5))?;
    }
    Ok(acc)
}

/// Largest coefficient of `∇(fg) - (∇̇ḟ)g - Σ e_k f (∂_k g)`.
pub fn product_rule_residual(f: &dyn Field, g: &dyn Field, x: &[f64], h: f64) -> Result<f64> {
    let sig = f.signature();
    if g.signature() != sig {
        return Err(Error::SignatureMismatch(sig, g.signature()));
    }
    let fg = FnField::new(sig, |y: &[f64]| f.eval(y)?.geometric_product(&g.eval(y)?))?;
    let lhs = vector_derivative(&fg, x, h)?;
    let (fx, gx) = (eval_finite(f, x)?, eval_finite(g, x)?);
    let mut rhs = Multivector::zero(sig);
    for k in 0..sig.dim() {
        let ek = Multivector::e(sig, k + 1)?;
        rhs += &ek.geometric_product(&partial(f, x, k, h)?)?.geometric_product(&gx)?;
        rhs += &ek.geometric_product(&fx)?.geometric_product(&partial(g, x, k, h)?)?;
    }
    Ok(lhs.try_sub(&rhs)?.max_abs())
}

/// Residual of both chain rules for `f = g ∘ λ` with scalar `λ`:
/// `a·∇f = (a·∇λ) ∂g/∂λ`, the same along every `e_k`, and
/// `∇f = (∇λ) ∂g/∂λ`. Returns the largest coefficient of any mismatch.
pub fn chain_rule_residual<G>(g: G, lambda: &dyn Field, x: &[f64], a: &[f64], h: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<Multivector>,
{
    let sig = lambda.signature();
    let scalar_of = |y: &[f64]| -> Result<f64> {
        let v = eval_finite(lambda, y)?;
        if v.try_sub(&Multivector::scalar(sig, v.scalar_part()))?.max_abs() != 0.0 {
            return Err(Error::Degenerate("λ must be scalar-valued"));
        }
        Ok(v.scalar_part())
    };
    let l0 = scalar_of(x)?;
    let composed = FnField::new(sig, |y: &[f64]| g(scalar_of(y)?))?;
    let dg = g(l0 + h)?.try_sub(&g(l0 - h)?)?.scale(0.5 / h);
    if !dg.is_finite() {
        return Err(Error::NonFinite);
    }

    let mut directions = vec![a.to_vec()];
    directions.extend((0..sig.dim()).map(|k| unit(sig.dim(), k)));
    let mut worst: f64 = 0.0;
    for d in &directions {
        let lhs = vector_differential(&composed, x, d, h)?;
        let rate = vector_differential(lambda, x, d, h)?.scalar_part();
        worst = worst.max(lhs.try_sub(&dg.scale(rate))?.max_abs());
    }
    let lhs = vector_derivative(&composed, x, h)?;
    let rhs = vector_derivative(lambda, x, h)?.geometric_product(&dg)?;
    Ok(worst.max(lhs.try_sub(&rhs)?.max_abs()))
}

#[derive(Debug, Clone, PartialEq)]
enum Example {
    Identity,
    Square,
    Length,
    Contraction { blade: Multivector, k: usize },
    Log { x0: Vec<f64> },
}

/// The five reference fields with closed-form differentials and derivatives:
///
/// | field | `a·∇f` | `∇f` |
/// |---|---|---|
/// | `x` | `a` | `n` |
/// | `x²` | `2a·x` | `2x` |
/// | `\|x\|` | `a·x/\|x\|` | `x/\|x\|` |
/// | `x⌋⟨A⟩_k` | `a⌋⟨A⟩_k` | `k⟨A⟩_k` |
/// | `log\|x - x0\|` | `a·r/r²` | `r/r²` |
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleField {
    sig: Signature,
    example: Example,
}

impl ExampleField {
    pub fn identity(n: usize) -> Result<Self> {
        Ok(ExampleField { sig: Signature::euclidean(n)?, example: Example::Identity })
    }

    pub fn square(n: usize) -> Result<Self> {
        Ok(ExampleField { sig: Signature::euclidean(n)?, example: Example::Square })
    }

    pub fn length(n: usize) -> Result<Self> {
        Ok(ExampleField { sig: Signature::euclidean(n)?, example: Example::Length })
    }

    /// `x⌋⟨A⟩_k`; only the grade-`k` part of `a` is kept.
    pub fn contraction(a: &Multivector, k: usize) -> Result<Self> {
        let sig = a.sig();
        euclidean_only(sig)?;
        Ok(ExampleField { sig, example: Example::Contraction { blade: a.grade_part(k)?, k } })
    }

    pub fn log(x0: &[f64]) -> Result<Self> {
        let sig = Signature::euclidean(x0.len())?;
        Ok(ExampleField { sig, example: Example::Log { x0: x0.to_vec() } })
    }

    fn vector(&self, v: &[f64]) -> Result<Multivector> {
        Multivector::vector(self.sig, v)
    }

    /// `r = x - x0`, rejecting points on the singularity.
    fn offset(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.sig, x)?;
        let r: Vec<f64> = match &self.example {
            Example::Log { x0 } => x.iter().zip(x0).map(|(x, o)| x - o).collect(),
            _ => x.to_vec(),
        };
        let distance = norm(&r);
        if distance < SINGULARITY_RADIUS {
            return Err(Error::Singularity { distance });
        }
        Ok(r)
    }

    /// Closed-form `a·∇f` at `x`.
    pub fn differential(&self, x: &[f64], a: &[f64]) -> Result<Multivector> {
        check_dim(self.sig, x)?;
        check_dim(self.sig, a)?;
        let s = |v| Multivector::scalar(self.sig, v);
        match &self.example {
            Example::Identity => self.vector(a),
            Example::Square => Ok(s(2.0 * dot(a, x))),
            Example::Length => {
                let r = self.offset(x)?;
                Ok(s(dot(a, &r) / norm(&r)))
            }
            Example::Contraction { blade, .. } => self.vector(a)?.left_contraction(blade),
            Example::Log { .. } => {
                let r = self.offset(x)?;
                Ok(s(dot(a, &r) / dot(&r, &r)))
            }
        }
    }

    /// Closed-form `∇f` at `x`.
    pub fn derivative(&self, x: &[f64]) -> Result<Multivector> {
        check_dim(self.sig, x)?;
        match &self.example {
            Example::Identity => Ok(Multivector::scalar(self.sig, self.sig.dim() as f64)),
            Example::Square => Ok(self.vector(x)?.scale(2.0)),
            Example::Length => {
                let r = self.offset(x)?;
                Ok(self.vector(&r)?.scale(1.0 / norm(&r)))
            }
            Example::Contraction { blade, k } => Ok(blade.scale(*k as f64)),
            Example::Log { .. } => {
                let r = self.offset(x)?;
                Ok(self.vector(&r)?.scale(1.0 / dot(&r, &r)))
            }
        }
    }
}

impl Field for ExampleField {
    fn signature(&self) -> Signature {
        self.sig
    }

    fn eval(&self, x: &[f64]) -> Result<Multivector> {
        check_dim(self.sig, x)?;
        let s = |v| Multivector::scalar(self.sig, v);
        match &self.example {
            Example::Identity => self.vector(x),
            Example::Square => Ok(s(dot(x, x))),
            Example::Length => Ok(s(norm(&self.offset(x)?))),
            Example::Contraction { blade, .. } => self.vector(x)?.left_contraction(blade),
            Example::Log { .. } => Ok(s(norm(&self.offset(x)?).ln())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: [f64; 3] = [0.7, -1.3, 0.4];
    const A: [f64; 3] = [0.2, 0.5, -1.1];

    fn sample_blade() -> Multivector {
        let sig = Signature::euclidean(3).unwrap();
        Multivector::from_coeffs(sig, vec![1.0, 2.0, -1.0, 0.5, 3.0, -2.0, 0.25, 1.5]).unwrap()
    }

    fn examples() -> Vec<ExampleField> {
        let mut v = vec![
            ExampleField::identity(3).unwrap(),
            ExampleField::square(3).unwrap(),
            ExampleField::length(3).unwrap(),
            ExampleField::log(&[0.1, 0.2, -0.3]).unwrap(),
        ];
        for k in 0..=3 {
            v.push(ExampleField::contraction(&sample_blade(), k).unwrap());
        }
        v
    }

    #[test]
    fn printed_values() {
        let f1 = ExampleField::identity(3).unwrap();
        assert_eq!(f1.derivative(&X).unwrap().scalar_part(), 3.0);
        let d = vector_derivative(&f1, &X, 1e-5).unwrap();
        assert!(d.approx_eq(&Multivector::scalar(f1.signature(), 3.0), 1e-10));
        let f2 = ExampleField::square(3).unwrap();
        assert_eq!(f2.differential(&X, &A).unwrap().scalar_part(), 2.0 * dot(&A, &X));
    }

    #[test]
    fn numerics_match_closed_forms() {
        for f in examples() {
            let h = default_step(&X);
            let num = vector_differential(&f, &X, &A, h).unwrap();
            assert!(num.approx_eq(&f.differential(&X, &A).unwrap(), 1e-8), "{f:?}");
            let num = vector_derivative(&f, &X, h).unwrap();
            assert!(num.approx_eq(&f.derivative(&X).unwrap(), 1e-8), "{f:?}");
            let via = derivative_from_differential(&f, &X, h).unwrap();
            assert!(via.approx_eq(&num, 1e-9), "{f:?}");
        }
    }

    #[test]
    fn identity_field_in_other_dimensions() {
        for n in 1..=6 {
            let f = ExampleField::identity(n).unwrap();
            let x: Vec<f64> = (0..n).map(|i| i as f64 * 0.3 - 0.5).collect();
            let d = vector_derivative(&f, &x, 1e-5).unwrap();
            assert!((d.scalar_part() - n as f64).abs() < 1e-9);
            assert_eq!(f.derivative(&x).unwrap().scalar_part(), n as f64);
        }
    }

    #[test]
    fn contraction_derivative_scales_by_grade() {
        let f = ExampleField::contraction(&sample_blade(), 2).unwrap();
        let blade2 = sample_blade().grade_part(2).unwrap();
        assert_eq!(f.derivative(&X).unwrap(), blade2.scale(2.0));
        let zero = ExampleField::contraction(&sample_blade(), 0).unwrap();
        assert_eq!(zero.eval(&X).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn second_order_convergence() {
        for f in [ExampleField::length(3).unwrap(), ExampleField::log(&[0.1, 0.2, -0.3]).unwrap()] {
            let exact = f.differential(&X, &A).unwrap();
            let err = |h| vector_differential(&f, &X, &A, h).unwrap().try_sub(&exact).unwrap().max_abs();
            let ratio = err(1e-4) / err(5e-5);
            assert!((3.5..=4.5).contains(&ratio), "{f:?}: {ratio}");
        }
    }

    #[test]
    fn singular_points() {
        let f3 = ExampleField::length(3).unwrap();
        assert!(matches!(f3.eval(&[0.0, 0.0, 1e-9]), Err(Error::Singularity { .. })));
        let f5 = ExampleField::log(&[1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(f5.eval(&[1.0, 1.0, 1.0]), Err(Error::Singularity { .. })));
        assert!(matches!(vector_derivative(&f5, &[1.0, 1.0, 1.0], 1e-5), Err(Error::Singularity { .. })));
    }

    #[test]
    fn rejects_bad_arguments() {
        let f = ExampleField::square(3).unwrap();
        assert!(vector_differential(&f, &X, &A, 0.0).is_err());
        assert!(vector_differential(&f, &[1.0, 2.0], &A, 1e-5).is_err());
        assert!(FnField::new(Signature::new(1, 1, 0).unwrap(), |_: &[f64]| unreachable!()).is_err());
        let nan = FnField::new(f.signature(), |_: &[f64]| Ok(Multivector::scalar(Signature::euclidean(3)?, f64::NAN)))
            .unwrap();
        assert_eq!(vector_differential(&nan, &X, &A, 1e-5), Err(Error::NonFinite));
    }

    #[test]
    fn linear_in_direction() {
        let f = ExampleField::log(&[0.1, 0.2, -0.3]).unwrap();
        let b = [1.0, -0.4, 0.3];
        let (alpha, beta) = (1.7, -0.6);
        let combo: Vec<f64> = A.iter().zip(&b).map(|(a, b)| alpha * a + beta * b).collect();
        let h = 1e-5;
        let lhs = vector_differential(&f, &X, &combo, h).unwrap();
        let rhs = vector_differential(&f, &X, &A, h).unwrap().scale(alpha)
            + vector_differential(&f, &X, &b, h).unwrap().scale(beta);
        assert!(lhs.try_sub(&rhs).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn rotated_frame() {
        let sig = Signature::euclidean(3).unwrap();
        let (c, s) = (0.6, 0.8);
        let frame = vec![
            Multivector::vector(sig, &[c, s, 0.0]).unwrap(),
            Multivector::vector(sig, &[-s, c, 0.0]).unwrap(),
            Multivector::vector(sig, &[0.0, 0.0, 1.0]).unwrap(),
        ];
        for f in examples() {
            let h = default_step(&X);
            let std = vector_derivative(&f, &X, h).unwrap();
            let rot = vector_derivative_in_frame(&f, &X, &frame, h).unwrap();
            assert!(std.try_sub(&rot).unwrap().max_abs() < 1e-7, "{f:?}");
        }
    }

    #[test]
    fn product_rule() {
        let id = ExampleField::identity(3).unwrap();
        let sq = ExampleField::square(3).unwrap();
        assert!(product_rule_residual(&id, &id, &X, 1e-5).unwrap() < 1e-6);
        assert!(product_rule_residual(&sq, &id, &X, 1e-5).unwrap() < 1e-6);
        let sig = id.signature();
        let constant = FnField::new(sig, |_: &[f64]| Multivector::blade(sig, "e12")).unwrap();
        assert!(product_rule_residual(&constant, &id, &X, 1e-5).unwrap() < 1e-9);
    }

    #[test]
    fn chain_rule() {
        let sig = Signature::euclidean(3).unwrap();
        let along_e1 = FnField::new(sig, |y: &[f64]| Ok(Multivector::scalar(sig, y[0]))).unwrap();
        let sq = |l: f64| Ok(Multivector::scalar(sig, l * l));
        assert!(chain_rule_residual(sq, &along_e1, &X, &A, 1e-5).unwrap() < 1e-6);

        let x2 = ExampleField::square(3).unwrap();
        let rotor = |l: f64| Multivector::blade(sig, "e12")?.scale(0.3 * l).exp();
        assert!(chain_rule_residual(rotor, &x2, &X, &A, 1e-5).unwrap() < 1e-6);

        let constant = FnField::new(sig, |_: &[f64]| Ok(Multivector::scalar(sig, 2.0))).unwrap();
        assert!(chain_rule_residual(sq, &constant, &X, &A, 1e-5).unwrap() < 1e-12);

        let vector_valued = ExampleField::identity(3).unwrap();
        assert!(chain_rule_residual(sq, &vector_valued, &X, &A, 1e-5).is_err());
    }
}
