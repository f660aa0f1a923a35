//! Two-dimensional lattice primitives: vectors, strictly convex cones,
//! Hirzebruch–Jung continued fractions and Hilbert bases of plane cones.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::scalar::{int, Rational, Scalar};
use crate::{Error, Result};

/// A vector in the plane. `T` is either the integer scalar or its rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T> Vec2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Vec2 { x, y }
    }
}

impl<T: Clone + Add<Output = T> + Mul<Output = T>> Vec2<T> {
    /// Pairing with a dual vector.
    pub fn dot(&self, other: &Vec2<T>) -> T {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }
}

impl<T: Clone + Sub<Output = T> + Mul<Output = T>> Vec2<T> {
    pub fn det(&self, other: &Vec2<T>) -> T {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }
}

impl<T: Clone + Mul<Output = T>> Vec2<T> {
    pub fn scale(&self, s: &T) -> Vec2<T> {
        Vec2::new(self.x.clone() * s.clone(), self.y.clone() * s.clone())
    }
}

impl<T: Add<Output = T>> Add for Vec2<T> {
    type Output = Vec2<T>;
    fn add(self, rhs: Vec2<T>) -> Vec2<T> {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Sub<Output = T>> Sub for Vec2<T> {
    type Output = Vec2<T>;
    fn sub(self, rhs: Vec2<T>) -> Vec2<T> {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Neg<Output = T>> Neg for Vec2<T> {
    type Output = Vec2<T>;
    fn neg(self) -> Vec2<T> {
        Vec2::new(-self.x, -self.y)
    }
}

impl<T: fmt::Display> fmt::Display for Vec2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<I: Scalar> Vec2<I> {
    pub fn from_i64(x: i64, y: i64) -> Self {
        Vec2::new(int(x), int(y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_rational(&self) -> Vec2<Rational<I>> {
        Vec2::new(Rational::from_integer(self.x.clone()), Rational::from_integer(self.y.clone()))
    }
}

impl<I: Scalar> Vec2<Rational<I>> {
    /// The integer vector when both coordinates are integral.
    pub fn to_lattice(&self) -> Option<Vec2<I>> {
        (self.x.is_integer() && self.y.is_integer()).then(|| Vec2::new(self.x.to_integer(), self.y.to_integer()))
    }
}

/// Divide an integer vector by the gcd of its coordinates.
pub fn primitive<I: Scalar>(v: &Vec2<I>) -> Result<Vec2<I>> {
    if v.is_zero() {
        return Err(Error::InvalidInput("the zero vector has no primitive direction".into()));
    }
    let g = v.x.gcd(&v.y);
    Ok(Vec2::new(v.x.clone() / g.clone(), v.y.clone() / g))
}

/// Primitive integer vector on the ray through a rational point.
pub fn primitive_on_ray<I: Scalar>(v: &Vec2<Rational<I>>) -> Result<Vec2<I>> {
    let l = v.x.denom().lcm(v.y.denom());
    let scaled = Vec2::new(
        (v.x.clone() * Rational::from_integer(l.clone())).to_integer(),
        (v.y.clone() * Rational::from_integer(l)).to_integer(),
    );
    primitive(&scaled)
}

/// Solutions `(g, s, t)` of `a*s + b*t = g = gcd(a, b)` with `g >= 0`.
pub fn ext_gcd<I: Scalar>(a: &I, b: &I) -> (I, I, I) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// A strictly convex rational cone in the plane, stored with
/// `det(ray1, ray2) > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone2<I> {
    ray1: Vec2<I>,
    ray2: Vec2<I>,
}

impl<I: Scalar> Cone2<I> {
    /// Build from two generators. Generators are made primitive and swapped
    /// when needed so that the orientation is counterclockwise.
    pub fn new(a: Vec2<I>, b: Vec2<I>) -> Result<Self> {
        let a = primitive(&a)?;
        let b = primitive(&b)?;
        let d = a.det(&b);
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("rays {a} and {b} are collinear")));
        }
        if d.is_positive() {
            Ok(Cone2 { ray1: a, ray2: b })
        } else {
            Ok(Cone2 { ray1: b, ray2: a })
        }
    }

    pub fn ray1(&self) -> &Vec2<I> {
        &self.ray1
    }

    pub fn ray2(&self) -> &Vec2<I> {
        &self.ray2
    }

    /// Normalized area `det(ray1, ray2)`; equals 1 exactly for smooth cones.
    pub fn multiplicity(&self) -> I {
        self.ray1.det(&self.ray2)
    }

    pub fn contains(&self, v: &Vec2<I>) -> bool {
        !self.ray1.det(v).is_negative() && !v.det(&self.ray2).is_negative()
    }

    pub fn contains_rational(&self, v: &Vec2<Rational<I>>) -> bool {
        let r1 = self.ray1.to_rational();
        let r2 = self.ray2.to_rational();
        !r1.det(v).is_negative() && !v.det(&r2).is_negative()
    }

    /// The dual cone `{m : <m, v> >= 0 for v in self}`.
    pub fn dual(&self) -> Cone2<I> {
        // inward normals of the two rays
        let n1 = Vec2::new(-self.ray1.y.clone(), self.ray1.x.clone());
        let n2 = Vec2::new(self.ray2.y.clone(), -self.ray2.x.clone());
        Cone2::new(n1, n2).expect("dual of a strictly convex cone is strictly convex")
    }

    /// Unimodular normal form: an integer matrix `T` (rows) with
    /// `T ray1 = (1, 0)` and `T ray2 = (-q, n)`, `0 <= q < n`.
    /// Returns `(n, q, T)`.
    pub fn normal_form(&self) -> (I, I, [[I; 2]; 2]) {
        let (a, b) = (self.ray1.x.clone(), self.ray1.y.clone());
        let (_, s, t) = ext_gcd(&a, &b);
        // U = [[s, t], [-b, a]] sends ray1 to (1, 0)
        let ux = s.clone() * self.ray2.x.clone() + t.clone() * self.ray2.y.clone();
        let uy = -b.clone() * self.ray2.x.clone() + a.clone() * self.ray2.y.clone();
        let n = uy.clone();
        let q = (-ux.clone()).mod_floor(&n);
        // shear (x, y) -> (x + k y, y) with x + k y = -q
        let k = (-q.clone() - ux) / n.clone();
        let m = [[s + k.clone() * (-b.clone()), t + k * a.clone()], [-b, a]];
        (n, q, m)
    }

    /// Hilbert basis of `self ∩ Z²`, ordered counterclockwise from `ray1` to
    /// `ray2`. Consecutive triples satisfy `u_{i-1} + u_{i+1} = c_i u_i`, `c_i >= 2`.
    pub fn hilbert_basis(&self) -> Vec<Vec2<I>> {
        hilbert_basis_2d(self)
    }

    /// The cone is Gorenstein (smooth or an A-type double point) iff some
    /// integral functional takes the value 1 on both primitive rays.
    pub fn is_gorenstein(&self) -> bool {
        // m with <r1,m> = <r2,m> = 1: m = (r2.y - r1.y, r1.x - r2.x) / det
        let det = self.multiplicity();
        let mx = self.ray2.y.clone() - self.ray1.y.clone();
        let my = self.ray1.x.clone() - self.ray2.x.clone();
        mx.is_multiple_of(&det) && my.is_multiple_of(&det)
    }

    /// Whether the cone is smooth or a T-singularity, i.e. `Y(n, q)` with
    /// `q = n - 1`, or `n = d m²` and `q = d m a - 1` with `gcd(m, a) = 1`.
    pub fn is_t_or_smooth(&self) -> bool {
        let (n, q, _) = self.normal_form();
        if n.is_one() {
            return true;
        }
        is_t_type(&n, &q)
    }
}

/// Number-theoretic T-singularity test for `Y(n, q)`, `0 < q < n`.
pub fn is_t_type<I: Scalar>(n: &I, q: &I) -> bool {
    if *q == n.clone() - I::one() {
        return true;
    }
    let mut m = I::one();
    while m.clone() * m.clone() <= *n {
        let m2 = m.clone() * m.clone();
        if n.is_multiple_of(&m2) && m > I::one() {
            let d = n.clone() / m2;
            let dm = d * m.clone();
            let q1 = q.clone() + I::one();
            if q1.is_multiple_of(&dm) {
                let a = q1 / dm;
                if a.gcd(&m).is_one() {
                    return true;
                }
            }
        }
        m = m + I::one();
    }
    false
}

/// Hilbert basis of a plane cone by the continued fraction of its normal
/// form: in coordinates where the cone is `cone((1,0), (-q,n))` the basis is
/// `u_0 = (1,0)`, `u_1 = (0,1)`, `u_{i+1} = b_i u_i - u_{i-1}` with
/// `n/q = [b_1, b_2, ...]`.
pub fn hilbert_basis_2d<I: Scalar>(cone: &Cone2<I>) -> Vec<Vec2<I>> {
    let (n, q, t) = cone.normal_form();
    let mut basis = vec![Vec2::new(I::one(), I::zero())];
    if !q.is_zero() {
        let coeffs = cf_expand_unchecked(&n, &q);
        let mut prev = Vec2::new(I::one(), I::zero());
        let mut cur = Vec2::new(I::zero(), I::one());
        basis.push(cur.clone());
        for b in coeffs {
            let next = cur.scale(&b) - prev;
            prev = cur;
            cur = next;
            basis.push(cur.clone());
        }
    } else {
        // n = 1: smooth, second ray is (0, 1)
        basis.push(Vec2::new(I::zero(), I::one()));
    }
    // invert the unimodular T (det 1): T^{-1} = [[d, -b], [-c, a]]
    let [[a, b], [c, d]] = t;
    basis
        .into_iter()
        .map(|u| {
            Vec2::new(
                d.clone() * u.x.clone() - b.clone() * u.y.clone(),
                -c.clone() * u.x + a.clone() * u.y,
            )
        })
        .collect()
}

/// Hirzebruch–Jung continued fraction `[c_1, ..., c_k] = c_1 - 1/[c_2, ..., c_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction<I> {
    pub coeffs: Vec<I>,
}

impl<I: Scalar> ContinuedFraction<I> {
    pub fn new(coeffs: Vec<I>) -> Self {
        ContinuedFraction { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ContinuedFraction { coeffs: coeffs.iter().map(|&c| int(c)).collect() }
    }

    /// Evaluate; `None` when a division by zero occurs (or the list is empty).
    pub fn eval(&self) -> Option<Rational<I>> {
        cf_eval(&self.coeffs)
    }
}

/// Expansion of `num/den` with every coefficient at least 2.
pub fn cf_expand<I: Scalar>(num: &I, den: &I) -> Result<ContinuedFraction<I>> {
    if !den.is_positive() || den >= num {
        return Err(Error::InvalidInput(format!("{num}/{den} is not a fraction > 1 with positive denominator")));
    }
    if !num.gcd(den).is_one() {
        return Err(Error::InvalidInput(format!("{num}/{den} is not reduced")));
    }
    Ok(ContinuedFraction::new(cf_expand_unchecked(num, den)))
}

fn cf_expand_unchecked<I: Scalar>(num: &I, den: &I) -> Vec<I> {
    let (mut a, mut b) = (num.clone(), den.clone());
    let mut out = Vec::new();
    while !b.is_zero() {
        // a/b = c - b'/b with c = ceil(a/b)
        let c = a.div_ceil(&b);
        let r = c.clone() * b.clone() - a;
        out.push(c);
        a = b;
        b = r;
    }
    out
}

/// Evaluate a continued fraction given by its coefficients.
pub fn cf_eval<I: Scalar>(coeffs: &[I]) -> Option<Rational<I>> {
    let (last, rest) = coeffs.split_last()?;
    let mut val = Rational::from_integer(last.clone());
    for c in rest.iter().rev() {
        if val.is_zero() {
            return None;
        }
        val = Rational::from_integer(c.clone()) - val.recip();
    }
    Some(val)
}
