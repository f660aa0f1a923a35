//! The segments `Q_σ(w^h)` and their admissible two-term Minkowski
//! decompositions, which classify the one-parameter toric deformations.

use std::fmt;

use num_traits::Zero;

use crate::cqs::{CqsModel, QuadrantCoords};
use crate::lattice::{ext_gcd, Vec2};
use crate::scalar::{fmt_rat, int, rat_int, to_i64, Rational, Scalar};
use crate::{Error, Result};

/// A closed interval `[lo, hi]` of a rank one lattice; `lo == hi` is a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<I: Scalar> {
    pub lo: Rational<I>,
    pub hi: Rational<I>,
}

impl<I: Scalar> Interval<I> {
    pub fn new(lo: Rational<I>, hi: Rational<I>) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty interval ({}, {})", fmt_rat(&lo), fmt_rat(&hi))));
        }
        Ok(Interval { lo, hi })
    }

    pub fn length(&self) -> Rational<I> {
        self.hi.clone() - self.lo.clone()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_lattice_point(&self) -> bool {
        self.is_point() && self.lo.is_integer()
    }

    pub fn lattice_point_count(&self) -> I {
        let c = self.hi.floor().to_integer() - self.lo.ceil().to_integer() + I::one();
        if c.is_negative() {
            I::zero()
        } else {
            c
        }
    }

    pub fn shift(&self, by: &Rational<I>) -> Interval<I> {
        Interval { lo: self.lo.clone() + by.clone(), hi: self.hi.clone() + by.clone() }
    }

    pub fn scale(&self, by: &Rational<I>) -> Interval<I> {
        Interval { lo: self.lo.clone() * by.clone(), hi: self.hi.clone() * by.clone() }
    }

    pub fn minkowski_sum(&self, o: &Interval<I>) -> Interval<I> {
        Interval { lo: self.lo.clone() + o.lo.clone(), hi: self.hi.clone() + o.hi.clone() }
    }

    /// Equal up to an integer translation.
    pub fn congruent(&self, o: &Interval<I>) -> bool {
        let d = o.lo.clone() - self.lo.clone();
        d.is_integer() && self.length() == o.length()
    }
}

impl<I: Scalar> fmt::Display for Interval<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{{{}}}", fmt_rat(&self.lo))
        } else {
            write!(f, "({}, {})", fmt_rat(&self.lo), fmt_rat(&self.hi))
        }
    }
}

/// `Q_σ(w^h) = σ ∩ [<·, w^h> = 1]` in the affine lattice coordinate `s` with
/// `v = origin + s·dir`. The coordinate increases from the `(-q,n)` end to
/// the `(1,0)` end, and 0 is the leftmost lattice point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment<I: Scalar> {
    pub h: usize,
    pub beta: Rational<I>,
    pub gamma: Rational<I>,
    /// The lattice point with coordinate 0.
    pub origin: Vec2<I>,
    /// The lattice step: the point with coordinate 1 is `origin + dir`.
    pub dir: Vec2<I>,
    /// `<origin, w^{h+1}>`; adding it turns `s` into `<·, w^{h+1}>`.
    pub delta: I,
}

impl<I: Scalar> Segment<I> {
    pub fn interval(&self) -> Interval<I> {
        Interval { lo: self.beta.clone(), hi: self.gamma.clone() }
    }

    pub fn length(&self) -> Rational<I> {
        self.gamma.clone() - self.beta.clone()
    }

    pub fn lattice_point_count(&self) -> I {
        self.interval().lattice_point_count()
    }

    pub fn point_at(&self, s: &Rational<I>) -> Vec2<Rational<I>> {
        self.origin.to_rational() + self.dir.to_rational().scale(s)
    }

    /// Endpoints measured by `<·, w^{h+1}>` instead of `s`.
    pub fn shifted_interval(&self) -> Interval<I> {
        self.interval().shift(&rat_int(self.delta.clone()))
    }
}

impl<I: Scalar> fmt::Display for Segment<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(w^{}) = {}", self.h, self.interval())
    }
}

pub fn segment<I: Scalar>(model: &CqsModel<I>, h: usize) -> Result<Segment<I>> {
    check_h(model, h)?;
    let (n, q) = (model.n().clone(), model.q().clone());
    let w = model.w(h);
    let (w1, w2) = (w.x.clone(), w.y.clone());
    // endpoints on the rays (1,0) and (-q,n)
    let right = Vec2::new(Rational::new(I::one(), w1.clone()), Rational::zero());
    let denom = n.clone() * w2.clone() - q.clone() * w1.clone();
    let left = Vec2::new(Rational::new(-q, denom.clone()), Rational::new(n, denom));
    let (g, s, t) = ext_gcd(&w1, &w2);
    if !g.is_one() {
        return Err(Error::Internal(format!("w^{h} is not primitive")));
    }
    let base = Vec2::new(s, t);
    let dir = Vec2::new(w2.clone(), -w1);
    let coord = |p: &Vec2<Rational<I>>| (p.x.clone() - rat_int(base.x.clone())) / rat_int(w2.clone());
    let (b, c) = (coord(&left), coord(&right));
    let shift = b.ceil().to_integer();
    let origin = base + dir.scale(&shift);
    let shift = rat_int(shift);
    let delta = if h < model.e() { origin.dot(model.w(h + 1)) } else { I::zero() };
    Ok(Segment { h, beta: b - shift.clone(), gamma: c - shift, origin, dir, delta })
}

/// Closed form `n / (w1 (n w2 - q w1))` for the length of `Q_σ(w^h)`.
pub fn segment_length<I: Scalar>(model: &CqsModel<I>, h: usize) -> Result<Rational<I>> {
    check_h(model, h)?;
    let w = model.w(h);
    let (n, q) = (model.n().clone(), model.q().clone());
    let denom = w.x.clone() * (w.y.clone() * n.clone() - w.x.clone() * q);
    Ok(Rational::new(n, denom))
}

pub fn lattice_point_count<I: Scalar>(model: &CqsModel<I>, h: usize) -> Result<i64> {
    to_i64(&segment(model, h)?.lattice_point_count())
}

fn check_h<I: Scalar>(model: &CqsModel<I>, h: usize) -> Result<()> {
    if h < 2 || h + 1 > model.e() {
        return Err(Error::Precondition(format!("h = {h} outside 2..={}", model.e() - 1)));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    D,
    DBar,
}

/// An admissible decomposition `Q = Q0 + Q1`, with `Q1 = p·(interval)` for
/// kind D; coordinates are those of the canonical segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition<I: Scalar> {
    pub kind: Kind,
    pub h: usize,
    pub p: i64,
    pub d: i64,
    pub summand0: Interval<I>,
    pub summand1: Interval<I>,
    pub segment: Segment<I>,
}

impl<I: Scalar> Decomposition<I> {
    /// `D^d_{h,p}: Q = (β, γ - pd) + p·(0, d)`.
    pub fn d_kind(model: &CqsModel<I>, h: usize, p: i64, d: i64) -> Result<Self> {
        let seg = segment(model, h)?;
        if p < 1 || p >= model.a(h) {
            return Err(Error::Precondition(format!("p = {p} outside 1..{} at h = {h}", model.a(h))));
        }
        let pd = rat_int::<I>(int(p * d));
        if d < 1 || pd > seg.length() {
            return Err(Error::Precondition(format!(
                "pd = {} exceeds the length {} of Q(w^{h})",
                p * d,
                fmt_rat(&seg.length())
            )));
        }
        let dec = Decomposition {
            kind: Kind::D,
            h,
            p,
            d,
            summand0: Interval::new(seg.beta.clone(), seg.gamma.clone() - pd.clone())?,
            summand1: Interval::new(Rational::zero(), pd)?,
            segment: seg,
        };
        dec.validate()?;
        Ok(dec)
    }

    /// `D̄^d_h: Q = (β, #-d) + (0, γ-#+d)` with `#` the number of lattice points.
    pub fn dbar_kind(model: &CqsModel<I>, h: usize, d: i64) -> Result<Self> {
        let seg = segment(model, h)?;
        if !model.is_inner(h) {
            return Err(Error::Precondition(format!("D̄ needs 2 < h < {}, got h = {h}", model.e() - 1)));
        }
        let count = to_i64(&seg.lattice_point_count())?;
        if d < 1 || d > count {
            return Err(Error::Precondition(format!("d = {d} outside 1..={count}")));
        }
        let c = rat_int::<I>(int(count - d));
        let dec = Decomposition {
            kind: Kind::DBar,
            h,
            p: 1,
            d,
            summand0: Interval::new(seg.beta.clone(), c.clone())?,
            summand1: Interval::new(Rational::zero(), seg.gamma.clone() - c)?,
            segment: seg,
        };
        dec.validate()?;
        Ok(dec)
    }

    /// Re-check the Minkowski sum and the admissibility conditions.
    pub fn validate(&self) -> Result<()> {
        let fail = |why: &str| Err(Error::Internal(format!("{self}: {why}")));
        if self.summand0.minkowski_sum(&self.summand1) != self.segment.interval() {
            return fail("summands do not add up to Q");
        }
        if self.summand0.is_lattice_point() || self.summand1.is_lattice_point() {
            return fail("trivial decomposition");
        }
        let (s0, s1) = (&self.summand0, &self.summand1);
        if self.p == 1 {
            if !(s0.lo.is_integer() || s1.lo.is_integer()) || !(s0.hi.is_integer() || s1.hi.is_integer()) {
                return fail("endpoint pairs lack lattice points");
            }
        } else {
            let len = s1.length();
            let p = rat_int::<I>(int(self.p));
            if !s1.lo.is_integer() || !s1.hi.is_integer() || !(len / p).is_integer() {
                return fail("second summand is not a lattice interval divisible by p");
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self.kind {
            Kind::D => format!("D^{}_{{{},{}}}", self.d, self.h, self.p),
            Kind::DBar => format!("Dbar^{}_{}", self.d, self.h),
        }
    }

    /// Label of the induced deformation.
    pub fn deformation_label(&self) -> String {
        match self.kind {
            Kind::D => format!("pi^{}_{{{},{}}}", self.d, self.h, self.p),
            Kind::DBar => format!("pibar^{}_{}", self.d, self.h),
        }
    }

    /// The T¹-degree `p·w^h`, in quadrant coordinates.
    pub fn degree(&self, model: &CqsModel<I>) -> QuadrantCoords<I> {
        model.to_quadrant(&model.w(self.h).scale(&int(self.p)))
    }
}

impl<I: Scalar> fmt::Display for Decomposition<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scaled = if self.p == 1 { self.summand1.to_string() } else {
            let inner = self.summand1.scale(&Rational::new(I::one(), int(self.p)));
            format!("{}·{}", self.p, inner)
        };
        write!(f, "{}: {} + {}", self.label(), self.summand0, scaled)
    }
}

/// Every non-trivial admissible decomposition, ordered by `h`, then D before
/// D̄, then `p`, then `d`.
pub fn enum_decompositions<I: Scalar>(model: &CqsModel<I>) -> Result<Vec<Decomposition<I>>> {
    let mut out = Vec::new();
    for h in model.interior() {
        let seg = segment(model, h)?;
        let len = seg.length();
        for p in 1..model.a(h) {
            let max_d = to_i64(&(len.clone() / rat_int(int::<I>(p))).floor().to_integer())?;
            for d in 1..=max_d {
                out.push(Decomposition::d_kind(model, h, p, d)?);
            }
        }
        if model.is_inner(h) {
            let count = to_i64(&seg.lattice_point_count())?;
            for d in 1..=count {
                out.push(Decomposition::dbar_kind(model, h, d)?);
            }
        }
    }
    Ok(out)
}
