//! The cyclic quotient singularity `Y(n,q)`: its chain, dual generators and
//! class predicates.
//!
//! Internally `N = Z²` and `σ = cone((1,0), (-q,n))`. The alternative
//! description with `σ` the first quadrant in `Z² + Z·(q,1)/n` is reached
//! through [`CqsModel::to_quadrant`].

use std::fmt;

use crate::chains::{self, NormalForm};
use crate::lattice::{cf_expand, hilbert_basis_2d, Cone2, Vec2};
use crate::scalar::{int, to_i64, Rational, Scalar};
use crate::{Error, Result};

/// A dual generator written in the quadrant description: `[u1, u2]` with
/// `q·u1 + u2 ≡ 0 (mod n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadrantCoords<I> {
    pub u1: I,
    pub u2: I,
}

impl<I: fmt::Display> fmt::Display for QuadrantCoords<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.u1, self.u2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CqsModel<I> {
    n: I,
    q: I,
    a_chain: Vec<i64>,
    w: Vec<Vec2<I>>,
    sigma: Cone2<I>,
}

impl<I: Scalar> CqsModel<I> {
    pub fn new(n: I, q: I) -> Result<Self> {
        if n < int(2) || !q.is_positive() || q >= n {
            return Err(Error::InvalidInput(format!("need 2 <= n and 0 < q < n, got n = {n}, q = {q}")));
        }
        if !n.gcd(&q).is_one() {
            return Err(Error::NotCoprime { n: n.to_string(), q: q.to_string() });
        }
        if q == n.clone() - I::one() {
            return Err(Error::Hypersurface { n: n.to_string(), q: q.to_string() });
        }
        let cf = cf_expand(&n, &(n.clone() - q.clone()))?;
        let a_chain = cf.coeffs.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
        let sigma = Cone2::new(Vec2::new(I::one(), I::zero()), Vec2::new(-q.clone(), n.clone()))?;
        let mut w = hilbert_basis_2d(&sigma.dual());
        // index order starts at (0,1) and ends at (n,q)
        w.reverse();
        let model = CqsModel { n, q, a_chain, w, sigma };
        model.check()?;
        Ok(model)
    }

    fn check(&self) -> Result<()> {
        if self.w.len() != self.a_chain.len() + 2 {
            return Err(Error::Internal(format!(
                "{} dual generators for a chain of length {}",
                self.w.len(),
                self.a_chain.len()
            )));
        }
        for i in 2..self.e() {
            let lhs = self.w(i - 1).clone() + self.w(i + 1).clone();
            if lhs != self.w(i).scale(&int(self.a(i))) {
                return Err(Error::Internal(format!("three-term relation fails at index {i}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> &I {
        &self.n
    }

    pub fn q(&self) -> &I {
        &self.q
    }

    /// Embedding dimension: the number of dual generators.
    pub fn e(&self) -> usize {
        self.w.len()
    }

    /// The chain `(a_2, …, a_{e-1})`.
    pub fn a_chain(&self) -> &[i64] {
        &self.a_chain
    }

    /// `a_i` for `2 <= i <= e-1`.
    pub fn a(&self, i: usize) -> i64 {
        self.a_chain[i - 2]
    }

    /// `w^i` for `1 <= i <= e`.
    pub fn w(&self, i: usize) -> &Vec2<I> {
        &self.w[i - 1]
    }

    pub fn dual_generators(&self) -> &[Vec2<I>] {
        &self.w
    }

    pub fn sigma(&self) -> &Cone2<I> {
        &self.sigma
    }

    /// Interior indices `2..=e-1`.
    pub fn interior(&self) -> std::ops::RangeInclusive<usize> {
        2..=self.e() - 1
    }

    /// Whether `h` is an interior index other than the first and last one.
    pub fn is_inner(&self, h: usize) -> bool {
        h > 2 && h + 1 < self.e()
    }

    pub fn to_quadrant(&self, w: &Vec2<I>) -> QuadrantCoords<I> {
        QuadrantCoords { u1: w.x.clone(), u2: self.n.clone() * w.y.clone() - self.q.clone() * w.x.clone() }
    }

    pub fn from_quadrant(&self, u: &QuadrantCoords<I>) -> Result<Vec2<I>> {
        let num = self.q.clone() * u.u1.clone() + u.u2.clone();
        if !(num.clone() % self.n.clone()).is_zero() {
            return Err(Error::InvalidInput(format!("{u} is not a lattice point for n = {}, q = {}", self.n, self.q)));
        }
        Ok(Vec2::new(u.u1.clone(), num / self.n.clone()))
    }

    pub fn is_quadrant_lattice_point(&self, u: &QuadrantCoords<I>) -> bool {
        ((self.q.clone() * u.u1.clone() + u.u2.clone()) % self.n.clone()).is_zero()
    }

    pub fn quadrant_generators(&self) -> Vec<QuadrantCoords<I>> {
        self.w.iter().map(|w| self.to_quadrant(w)).collect()
    }

    /// A point of `N` in the quadrant description, where `N` becomes
    /// `Z² + Z·(q,1)/n`.
    pub fn n_to_quadrant(&self, v: &Vec2<I>) -> (Rational<I>, Rational<I>) {
        let n = self.n.clone();
        (
            Rational::new(n.clone() * v.x.clone() + self.q.clone() * v.y.clone(), n.clone()),
            Rational::new(v.y.clone(), n),
        )
    }

    /// Toric Q-Gorenstein smoothability: `a` agrees with some `k ∈ K` except
    /// for one entry, which is not smaller.
    pub fn is_t_singularity(&self) -> bool {
        chains::enumerate_k(&self.a_chain).iter().any(|k| {
            let diff: Vec<usize> = (0..k.chain().len()).filter(|&j| k.k(j + 2) != self.a_chain[j]).collect();
            match diff.as_slice() {
                [] => true,
                [j] => self.a_chain[*j] > k.k(*j + 2),
                _ => false,
            }
        })
    }

    pub fn is_rdp(&self) -> bool {
        is_rdp(&self.a_chain)
    }
}

impl CqsModel<i64> {
    pub fn from_i64(n: i64, q: i64) -> Result<Self> {
        CqsModel::new(n, q)
    }
}

/// Alias for [`CqsModel::new`].
pub fn cqs_new<I: Scalar>(n: I, q: I) -> Result<CqsModel<I>> {
    CqsModel::new(n, q)
}

/// At most a rational double point. Chains describe the dual
/// (`n/(n-q)`) expansion, under which `A_{d-1}` is the single entry `(d)`.
pub fn is_rdp(chain: &[i64]) -> bool {
    match chains::blow_down(chain) {
        NormalForm::Smooth => true,
        NormalForm::Singular(c) => c.len() == 1,
        NormalForm::Invalid => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn golden_8_3() {
        let m = CqsModel::from_i64(8, 3).unwrap();
        assert_eq!(m.e(), 5);
        assert_eq!(m.a_chain(), &[2, 3, 2]);
        let b: Vec<String> = m.quadrant_generators().iter().map(|u| u.to_string()).collect();
        assert_eq!(b, ["[0,8]", "[1,5]", "[2,2]", "[5,1]", "[8,0]"]);
    }

    #[test]
    fn lattice_points_in_quadrant_description() {
        let m = CqsModel::from_i64(8, 3).unwrap();
        let r = |a, b| Rational::new(a, b);
        assert_eq!(m.n_to_quadrant(&Vec2::new(0, 1)), (r(3, 8), r(1, 8)));
        assert_eq!(m.n_to_quadrant(&Vec2::new(-1, 3)), (r(1, 8), r(3, 8)));
        assert_eq!(m.n_to_quadrant(&Vec2::new(-3, 8)), (r(0, 1), r(1, 1)));
        // the pairing is preserved
        let v = Vec2::new(5, -2);
        for w in m.dual_generators() {
            let (x, y) = m.n_to_quadrant(&v);
            let u = m.to_quadrant(w);
            assert_eq!(x * u.u1 + y * u.u2, Rational::from_integer(v.dot(w)));
        }
    }

    #[test]
    fn four_one() {
        let m = CqsModel::from_i64(4, 1).unwrap();
        assert_eq!(m.a_chain(), &[2, 2, 2]);
        assert_eq!(m.e(), 5);
        assert!(m.is_t_singularity());
    }

    #[test]
    fn quadrant_round_trip() {
        let m = CqsModel::from_i64(8, 3).unwrap();
        for w in m.dual_generators() {
            let u = m.to_quadrant(w);
            assert!(m.is_quadrant_lattice_point(&u));
            assert_eq!(&m.from_quadrant(&u).unwrap(), w);
        }
        assert_eq!(m.to_quadrant(&Vec2::new(2, 1)), QuadrantCoords { u1: 2, u2: 2 });
        assert!(m.from_quadrant(&QuadrantCoords { u1: 1, u2: 1 }).is_err());
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(matches!(CqsModel::from_i64(4, 3), Err(Error::Hypersurface { .. })));
        assert!(matches!(CqsModel::from_i64(2, 1), Err(Error::Hypersurface { .. })));
        assert!(matches!(CqsModel::from_i64(6, 4), Err(Error::NotCoprime { .. })));
        assert!(matches!(CqsModel::from_i64(1, 0), Err(Error::InvalidInput(_))));
        assert!(matches!(CqsModel::from_i64(5, 7), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn t_singularities() {
        assert!(CqsModel::from_i64(8, 3).unwrap().is_t_singularity());
        // 1/9(1,2) is a T-singularity, 1/7(1,3) is not
        assert!(CqsModel::from_i64(9, 2).unwrap().is_t_singularity());
        assert!(!CqsModel::from_i64(7, 3).unwrap().is_t_singularity());
    }

    #[test]
    fn rdp_chains() {
        assert!(is_rdp(&[3]));
        assert!(is_rdp(&[1, 1]));
        assert!(is_rdp(&[1]));
        assert!(!is_rdp(&[2, 2]));
        assert!(!is_rdp(&[2, 3, 2]));
    }

    #[test]
    fn bigint_model() {
        let m = CqsModel::new(BigInt::from(8), BigInt::from(3)).unwrap();
        assert_eq!(m.a_chain(), &[2, 3, 2]);
    }
}
