//! Univariate polynomials in the deformation parameter λ with exact integer
//! coefficients, stored sparsely.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly<I> {
    terms: BTreeMap<u32, I>,
}

impl<I: Scalar> Poly<I> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::monomial(I::one(), 0)
    }

    /// `c·λ^k`.
    pub fn monomial(c: I, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Poly { terms }
    }

    pub fn lambda() -> Self {
        Poly::monomial(I::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: u32) -> I {
        self.terms.get(&k).cloned().unwrap_or_else(I::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// `(power, coefficient)` pairs in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &I)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (u32, I)>) -> Self {
        let mut p = Poly::zero();
        for (k, c) in pairs {
            p = p + Poly::monomial(c, k);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &I) -> Self {
        Poly::from_terms(self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())))
    }
}

impl<I: Scalar> Add for Poly<I> {
    type Output = Poly<I>;
    fn add(mut self, o: Poly<I>) -> Poly<I> {
        for (k, c) in o.terms {
            let v = self.coeff(k) + c;
            if v.is_zero() {
                self.terms.remove(&k);
            } else {
                self.terms.insert(k, v);
            }
        }
        self
    }
}

impl<I: Scalar> Neg for Poly<I> {
    type Output = Poly<I>;
    fn neg(self) -> Poly<I> {
        Poly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<I: Scalar> Sub for Poly<I> {
    type Output = Poly<I>;
    fn sub(self, o: Poly<I>) -> Poly<I> {
        self + (-o)
    }
}

impl<I: Scalar> Mul for &Poly<I> {
    type Output = Poly<I>;
    fn mul(self, o: &Poly<I>) -> Poly<I> {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out = out + Poly::monomial(x.clone() * y.clone(), a + b);
            }
        }
        out
    }
}

impl<I: Scalar> fmt::Display for Poly<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_c = !mag.is_one() || *k == 0;
            if show_c {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{k}")?,
            }
        }
        Ok(())
    }
}
