//! Evaluation state and the evaluator.

use std::collections::BTreeMap;

use clifford_core::conformal;
use clifford_core::subspace::{self, Versor};
use clifford_core::{Error, Multivector, Signature, Tolerance};

use crate::error::{CliError, EvalError};
use crate::parser::{parse, BinOp, Expr, ExprKind, Statement, UnaryOp};

pub const DEFAULT_PRECISION: usize = 6;

/// What a line evaluated to.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Value(Multivector),
    Assigned(String, Multivector),
}

impl Outcome {
    pub fn value(&self) -> &Multivector {
        match self {
            Outcome::Value(v) | Outcome::Assigned(_, v) => v,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    sig: Signature,
    vars: BTreeMap<String, Multivector>,
    /// Coefficients at most `tol · max|coeff|` are treated as zero in results.
    pub tolerance: Tolerance,
    pub precision: usize,
}

impl Session {
    pub fn new(sig: Signature) -> Self {
        Session { sig, vars: BTreeMap::new(), tolerance: Tolerance::default(), precision: DEFAULT_PRECISION }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Switch algebra; bindings from the old algebra are dropped.
    pub fn set_signature(&mut self, sig: Signature) {
        if sig != self.sig {
            self.vars.clear();
        }
        self.sig = sig;
    }

    pub fn vars(&self) -> &BTreeMap<String, Multivector> {
        &self.vars
    }

    pub fn bind(&mut self, name: &str, value: Multivector) -> Result<(), CliError> {
        if value.sig() != self.sig {
            return Err(CliError::Usage(format!("`{name}` belongs to {}, session is {}", value.sig(), self.sig)));
        }
        if crate::parser::is_reserved(name) || !valid_name(name) {
            return Err(CliError::Usage(format!("`{name}` cannot be used as a variable name")));
        }
        self.vars.insert(name.to_string(), value);
        Ok(())
    }

    /// Parse and evaluate one line.
    pub fn run(&mut self, line: &str) -> Result<Outcome, CliError> {
        let stmt = parse(line, self.sig.dim())?;
        match stmt {
            Statement::Expr(e) => Ok(Outcome::Value(self.eval(&e)?)),
            Statement::Assign { name, value, .. } => {
                let v = self.eval(&value)?;
                self.vars.insert(name.clone(), v.clone());
                Ok(Outcome::Assigned(name, v))
            }
        }
    }

    /// Render a value at the session precision.
    pub fn show(&self, m: &Multivector) -> String {
        m.format(self.precision)
    }

    pub fn eval(&self, e: &Expr) -> Result<Multivector, EvalError> {
        let v = self.eval_node(e)?;
        if !v.is_finite() {
            return Err(EvalError::new(e.col, "result is not finite"));
        }
        Ok(self.chop(v))
    }

    fn chop(&self, v: Multivector) -> Multivector {
        let cutoff = self.tolerance.abs * v.max_abs();
        let coeffs = v.coeffs().iter().map(|&c| if c.abs() <= cutoff { 0.0 } else { c }).collect();
        Multivector::from_coeffs(v.sig(), coeffs).expect("same length")
    }

    fn eval_node(&self, e: &Expr) -> Result<Multivector, EvalError> {
        let at = |err: Error| EvalError::new(e.col, err.to_string());
        let sig = self.sig;
        match &e.kind {
            ExprKind::Number(v) => Ok(Multivector::scalar(sig, *v)),
            ExprKind::Blade(indices) => {
                let mut m = Multivector::one(sig);
                for &k in indices {
                    m = m.geometric_product(&Multivector::e(sig, k).map_err(at)?).map_err(at)?;
                }
                Ok(m)
            }
            ExprKind::Ident(name) => self.lookup(name).map_err(|msg| EvalError::new(e.col, msg)),
            ExprKind::Unary(op, a) => {
                let a = self.eval_node(a)?;
                match op {
                    UnaryOp::Neg => Ok(-a),
                    UnaryOp::Reverse => Ok(a.reverse()),
                    UnaryOp::Involute => Ok(a.grade_involution()),
                    UnaryOp::Dual => a.dual().map_err(at),
                }
            }
            ExprKind::Binary(op, a, b) => {
                let (a, b) = (self.eval_node(a)?, self.eval_node(b)?);
                match op {
                    BinOp::Geometric => a.geometric_product(&b),
                    BinOp::Outer => a.outer(&b),
                    BinOp::LeftContract => a.left_contraction(&b),
                    BinOp::RightContract => a.right_contraction(&b),
                    BinOp::Scalar => a.scalar_product(&b).map(|s| Multivector::scalar(sig, s)),
                    BinOp::Add => a.try_add(&b),
                    BinOp::Sub => a.try_sub(&b),
                }
                .map_err(at)
            }
            ExprKind::Call(name, args) => self.call(name, args, e.col),
        }
    }

    fn lookup(&self, name: &str) -> Result<Multivector, String> {
        let sig = self.sig;
        let conformal_only = |m: fn() -> Multivector| {
            if sig == conformal::signature() {
                Ok(m())
            } else {
                Err(format!("`{name}` is only defined in Cl(4,1,0)"))
            }
        };
        match name {
            "pi" => Ok(Multivector::scalar(sig, std::f64::consts::PI)),
            "tau" => Ok(Multivector::scalar(sig, std::f64::consts::TAU)),
            "I" => Ok(Multivector::pseudoscalar(sig)),
            "einf" => conformal_only(conformal::e_inf),
            "eo" => conformal_only(conformal::e_origin),
            _ => self.vars.get(name).cloned().ok_or_else(|| format!("unknown identifier `{name}`")),
        }
    }

    fn call(&self, name: &str, args: &[Expr], col: usize) -> Result<Multivector, EvalError> {
        let at = |err: Error| EvalError::new(col, err.to_string());
        let sig = self.sig;
        let scalar_arg = |i: usize| -> Result<f64, EvalError> {
            let v = self.eval_node(&args[i])?;
            let s = v.scalar_part();
            if v.try_sub(&Multivector::scalar(sig, s)).map_err(at)?.max_abs() > self.tolerance.abs * v.max_abs() {
                return Err(EvalError::new(args[i].col, format!("argument {} of `{name}` must be a scalar", i + 1)));
            }
            Ok(s)
        };
        let coords = || -> Result<[f64; 3], EvalError> {
            if sig != conformal::signature() {
                return Err(EvalError::new(col, format!("`{name}` needs the conformal algebra Cl(4,1,0)")));
            }
            Ok([scalar_arg(0)?, scalar_arg(1)?, scalar_arg(2)?])
        };
        let arg = |i: usize| self.eval_node(&args[i]);
        match name {
            "grade" => {
                let m = arg(0)?;
                let k = scalar_arg(1)?;
                if k < 0.0 || k.fract() != 0.0 {
                    return Err(EvalError::new(args[1].col, "grade must be a non-negative integer"));
                }
                m.grade_part(k as usize).map_err(at)
            }
            "exp" => arg(0)?.exp().map_err(at),
            "inv" => arg(0)?.inverse().map_err(at),
            "norm" => Ok(Multivector::scalar(sig, arg(0)?.norm())),
            "project" => subspace::project(&arg(0)?, &arg(1)?).map_err(at),
            "reject" => subspace::reject(&arg(0)?, &arg(1)?).map_err(at),
            "meet" => subspace::meet(&arg(0)?, &arg(1)?, None).map_err(at),
            "join" => subspace::join(&arg(0)?, &arg(1)?).map_err(at),
            "point" => Ok(conformal::embed_point(coords()?).into_mv()),
            "translator" => Ok(conformal::translator(coords()?).into_value()),
            "apply" => {
                let v = Versor::from_multivector(arg(0)?).map_err(at)?;
                v.apply(&arg(1)?).map_err(at)
            }
            "reflect" => subspace::reflect(&arg(0)?, &arg(1)?).map_err(at),
            "rev" => Ok(arg(0)?.reverse()),
            "invol" => Ok(arg(0)?.grade_involution()),
            "conj" => Ok(arg(0)?.clifford_conjugate()),
            "dual" => arg(0)?.dual().map_err(at),
            "undual" => arg(0)?.undual().map_err(at),
            _ => Err(EvalError::new(col, format!("unknown function `{name}`"))),
        }
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    let first_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    let blade_like = name.len() > 1 && name.starts_with('e') && name[1..].bytes().all(|b| b.is_ascii_digit());
    first_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !blade_like
}

/// Parse `p,q,r` (commas or whitespace; a missing `r` is 0).
pub fn parse_signature(text: &str) -> Result<Signature, CliError> {
    let parts: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(CliError::Usage(format!("signature must be p,q,r: `{text}`")));
    }
    let mut v = [0usize; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| CliError::Usage(format!("bad signature component `{part}`")))?;
    }
    Signature::new(v[0], v[1], v[2]).map_err(|e| CliError::Usage(e.to_string()))
}
