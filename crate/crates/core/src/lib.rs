//! Exact combinatorics of one-parameter toric deformations of cyclic
//! quotient surface singularities `Y(n,q)`.
//!
//! Geometry is generic over an exact integer type (`i64`, `i128`,
//! `BigInt`); rational coordinates are `Ratio` over it. Chains and indices
//! are plain `i64`/`usize`.

pub mod chains;
pub mod cqs;
pub mod error;
pub mod fibers;
pub mod geom3;
pub mod lattice;
pub mod minkowski;
pub mod poly;
pub mod resolutions;
pub mod scalar;
pub mod totalspace;

pub use chains::{enumerate_k, NormalForm, ZeroChain};
pub use cqs::{CqsModel, QuadrantCoords};
pub use error::{Error, Result};
pub use minkowski::{enum_decompositions, Decomposition, Interval, Kind, Segment};
pub use resolutions::{Fan3, PResolutionFan};
pub use scalar::{Rational, Scalar};
pub use totalspace::{build_deformation, Deformation};

use num_bigint::BigInt;

pub type Model = CqsModel<i64>;
pub type BigModel = CqsModel<BigInt>;
pub type Rat = Rational<i64>;
pub type BigRat = Rational<BigInt>;
pub type Deformation64 = Deformation<i64>;
pub type Fan3i64 = Fan3<i64>;

/// Every valid `(n, q)` with `n` in the range, in lexicographic order.
pub fn valid_models(n_range: std::ops::RangeInclusive<i64>) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n in n_range {
        for q in 1..n.saturating_sub(1) {
            if num_integer::gcd(n, q) == 1 {
                out.push((n, q));
            }
        }
    }
    out
}

/// All deformations of a model, in the order of [`enum_decompositions`].
pub fn all_deformations<I: Scalar>(model: &CqsModel<I>) -> Result<Vec<Deformation<I>>> {
    enum_decompositions(model)?.iter().map(|d| build_deformation(model, d)).collect()
}
