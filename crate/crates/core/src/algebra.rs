//! Signatures, bitmask-encoded basis blades and the product of two basis blades.
//!
//! Bit `k-1` of a blade mask stands for the generator `e_k`, so the dense
//! coefficient index of a basis blade is its mask. Factors are always kept in
//! ascending index order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension `n = p + q + r`.
pub const MAX_DIM: usize = 12;

/// Metric signature of the generating vector space.
///
/// The first `p` generators square to `+1`, the next `q` to `-1` and the last
/// `r` to `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 3]", into = "[usize; 3]")]
pub struct Signature {
    p: usize,
    q: usize,
    r: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize, r: usize) -> Result<Self> {
        let n = p + q + r;
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidSignature { p, q, r });
        }
        Ok(Signature { p, q, r })
    }

    /// Euclidean signature `Cl(n,0,0)`.
    pub fn euclidean(n: usize) -> Result<Self> {
        Self::new(n, 0, 0)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.p + self.q + self.r
    }

    /// Number of basis blades, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.dim()
    }

    pub fn is_degenerate(&self) -> bool {
        self.r > 0
    }

    pub fn is_euclidean(&self) -> bool {
        self.q == 0 && self.r == 0
    }

    /// Square of the generator `e_k`, with `k` counted from 1.
    pub fn metric(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.dim() {
            return Err(Error::IndexOutOfRange { index: k, dim: self.dim() });
        }
        Ok(self.metric_at(k - 1))
    }

    /// Square of the generator stored at bit position `bit` (zero based).
    #[inline]
    pub(crate) fn metric_at(&self, bit: usize) -> f64 {
        if bit < self.p {
            1.0
        } else if bit < self.p + self.q {
            -1.0
        } else {
            0.0
        }
    }

    /// Mask of the pseudoscalar `e_{1...n}`.
    pub fn pseudoscalar_bits(&self) -> u32 {
        (self.size() - 1) as u32
    }

    /// Product of the metric factors of all generators in `bits`, i.e. the
    /// scalar picked up when a blade with these repeated factors contracts.
    #[inline]
    pub(crate) fn metric_product(&self, bits: u32) -> f64 {
        let pos = (1u32 << self.p) - 1;
        let neg = ((1u32 << (self.p + self.q)) - 1) & !pos;
        if bits & !(pos | neg) != 0 {
            return 0.0;
        }
        if (bits & neg).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{},{})", self.p, self.q, self.r)
    }
}

impl TryFrom<[usize; 3]> for Signature {
    type Error = Error;

    fn try_from([p, q, r]: [usize; 3]) -> Result<Self> {
        Signature::new(p, q, r)
    }
}

impl From<Signature> for [usize; 3] {
    fn from(sig: Signature) -> Self {
        [sig.p, sig.q, sig.r]
    }
}

/// A weighted canonical basis blade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisBlade {
    pub bits: u32,
    pub weight: f64,
}

impl BasisBlade {
    pub fn new(bits: u32, weight: f64) -> Self {
        BasisBlade { bits, weight }
    }

    /// The scalar unit `e_∅ = 1`.
    pub fn one() -> Self {
        BasisBlade { bits: 0, weight: 1.0 }
    }

    /// The generator `e_k`, `k` counted from 1.
    pub fn vector(k: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&k), "generator index {k} out of range");
        BasisBlade { bits: 1 << (k - 1), weight: 1.0 }
    }

    pub fn grade(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

/// Sign `(-1)^s` where `s` counts the transpositions needed to merge the
/// ascending factor lists of `a` and `b` into ascending order.
#[inline]
pub fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign and metric factor of `e_a e_b = factor * e_{a xor b}`.
#[inline]
pub(crate) fn product_factor(a: u32, b: u32, sig: &Signature) -> f64 {
    let common = a & b;
    if common == 0 {
        reorder_sign(a, b)
    } else {
        reorder_sign(a, b) * sig.metric_product(common)
    }
}

/// Geometric product of two basis blades.
pub fn blade_product(a: BasisBlade, b: BasisBlade, sig: &Signature) -> Result<BasisBlade> {
    let n = sig.dim();
    for bits in [a.bits, b.bits] {
        if bits >> n != 0 {
            let index = 32 - bits.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, dim: n });
        }
    }
    let weight = a.weight * b.weight * product_factor(a.bits, b.bits, sig);
    Ok(BasisBlade { bits: a.bits ^ b.bits, weight })
}

/// 1-based indices of the generators in `bits`, ascending.
pub fn blade_indices(bits: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| bits & (1 << i) != 0).map(|i| i + 1)
}

/// Name of a basis blade: `"1"` for the scalar, `"e12"` style otherwise.
///
/// In algebras of dimension 10 or more the indices are comma separated
/// (`"e1,10,12"`) so that every name is unambiguous.
pub fn blade_name(bits: u32, dim: usize) -> String {
    if bits == 0 {
        return "1".to_string();
    }
    let idx: Vec<String> = blade_indices(bits).map(|i| i.to_string()).collect();
    if dim >= 10 {
        format!("e{}", idx.join(","))
    } else {
        format!("e{}", idx.concat())
    }
}

/// Inverse of [`blade_name`] for an algebra of dimension `dim`.
///
/// The comma separated spelling (`"e1,10"`) is always accepted. Without
/// commas the body is one digit per index (`"e123"`) below dimension 10 and a
/// single index (`"e12"` is `e_12`) from dimension 10 on.
pub fn parse_blade_name(s: &str, dim: usize) -> Result<u32> {
    let malformed = || Error::MalformedBladeName(s.to_string());
    if s == "1" {
        return Ok(0);
    }
    let body = s.strip_prefix('e').ok_or_else(malformed)?;
    if body.is_empty() {
        return Err(malformed());
    }
    let indices: Vec<usize> = if body.contains(',') || dim >= 10 {
        body.split(',')
            .map(|part| {
                if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                    Err(malformed())
                } else {
                    part.parse::<usize>().map_err(|_| malformed())
                }
            })
            .collect::<Result<_>>()?
    } else {
        body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(malformed)).collect::<Result<_>>()?
    };
    let mut bits = 0u32;
    let mut last = 0;
    for &k in &indices {
        if k == 0 || k > MAX_DIM {
            return Err(malformed());
        }
        if k <= last {
            return Err(Error::NonCanonicalBladeName(s.to_string()));
        }
        last = k;
        bits |= 1 << (k - 1);
    }
    Ok(bits)
}
