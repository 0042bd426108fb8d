//! Dense Clifford geometric algebra over arbitrary real signatures `Cl(p,q,r)`.
//!
//! * [`algebra`]: signatures, bitmask basis blades and their product.
//! * [`multivector`]: the dense value type with its products, involutions,
//!   norms, duality, inverses and exponentials.
//! * [`subspace`]: versors, reflections, projection, rejection, meet and join.
//! * [`conformal`]: the `Cl(4,1)` model of Euclidean 3-space.
//! * [`calculus`]: numeric vector differential and vector derivative.
//! * [`json`]: the JSON interchange format for multivectors.

pub mod algebra;
pub mod calculus;
pub mod conformal;
pub mod error;
pub mod json;
pub mod multivector;
pub mod subspace;

pub use algebra::{blade_name, blade_product, parse_blade_name, BasisBlade, Signature, MAX_DIM};
pub use error::{Error, Result};
pub use multivector::{angle_between, Multivector, Tolerance};
pub use subspace::{BladeSubspace, Interpretation, Parity, Versor};
