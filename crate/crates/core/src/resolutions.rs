//! P-resolutions of `Y(n,q)`, the simultaneous partial resolutions of the
//! total spaces of its one-parameter toric deformations, and canonical models.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::chains::ZeroChain;
use crate::cqs::CqsModel;
use crate::geom3::{compact_facets, Cone3, Vec3};
use crate::lattice::{primitive, Cone2, Vec2};
use crate::minkowski::{Interval, Kind};
use crate::scalar::{int, rat_int, to_i64, Rational, Scalar};
use crate::totalspace::{components_of, Deformation};
use crate::{Error, Result};

/// `τ_i = cone(P_i, P_{i+1})`, with roof on `[<·, w^i> = α_i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauCone<I: Scalar> {
    pub i: usize,
    pub right: Vec2<I>,
    pub left: Vec2<I>,
    pub height: i64,
    /// Lattice length of the roof `[P_i, P_{i+1}]`.
    pub roof_length: I,
    /// `None` when `P_i` and `P_{i+1}` coincide.
    pub cone: Option<Cone2<I>>,
}

impl<I: Scalar> TauCone<I> {
    pub fn is_degenerate(&self) -> bool {
        self.cone.is_none()
    }

    /// At most a rational double point (degenerate cones count as such).
    pub fn is_rdp(&self) -> bool {
        self.cone.as_ref().is_none_or(|c| c.is_gorenstein())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PResolutionFan<I: Scalar> {
    pub k: ZeroChain,
    /// `P_2, …, P_e`, from `(1,0)` to `(-q,n)`.
    pub vertices: Vec<Vec2<I>>,
    pub cones: Vec<TauCone<I>>,
}

impl<I: Scalar> PResolutionFan<I> {
    /// Distinct primitive rays in counterclockwise order.
    pub fn rays(&self) -> Vec<Vec2<I>> {
        let mut out: Vec<Vec2<I>> = Vec::new();
        for v in &self.vertices {
            let r = primitive(v).expect("vertices are nonzero");
            if out.last() != Some(&r) {
                out.push(r);
            }
        }
        out
    }

    pub fn tau(&self, i: usize) -> &TauCone<I> {
        &self.cones[i - 2]
    }
}

fn solve2<I: Scalar>(u: &Vec2<I>, a: &I, w: &Vec2<I>, b: &I) -> Result<Vec2<I>> {
    // <P,u> = a, <P,w> = b
    let det = u.x.clone() * w.y.clone() - u.y.clone() * w.x.clone();
    let x = a.clone() * w.y.clone() - b.clone() * u.y.clone();
    let y = b.clone() * u.x.clone() - a.clone() * w.x.clone();
    if !x.is_multiple_of(&det) || !y.is_multiple_of(&det) {
        return Err(Error::Internal("non-integral P-resolution vertex".into()));
    }
    Ok(Vec2::new(x / det.clone(), y / det))
}

pub fn p_resolution_fan<I: Scalar>(model: &CqsModel<I>, k: &ZeroChain) -> Result<PResolutionFan<I>> {
    let e = model.e();
    if k.e() != e || k.chain().iter().zip(model.a_chain()).any(|(x, y)| x > y || *x < 1) {
        return Err(Error::Precondition(format!("{k} is not in K for a = {:?}", model.a_chain())));
    }
    let mut vertices = Vec::with_capacity(e - 1);
    for i in 2..=e {
        vertices.push(solve2(model.w(i - 1), &int(k.alpha(i - 1)), model.w(i), &int(k.alpha(i)))?);
    }
    let mut cones = Vec::new();
    for i in 2..e {
        let right = vertices[i - 2].clone();
        let left = vertices[i - 1].clone();
        let diff = left.clone() - right.clone();
        let roof_length = diff.x.gcd(&diff.y);
        let expected: I = int((model.a(i) - k.k(i)) * k.alpha(i));
        if roof_length != expected {
            return Err(Error::Internal(format!("roof of τ_{i} has length {roof_length}, expected {expected}")));
        }
        let cone = if roof_length.is_zero() { None } else { Some(Cone2::new(right.clone(), left.clone())?) };
        if let Some(c) = &cone {
            if c.ray1() != &primitive(&right)? {
                return Err(Error::Internal(format!("τ_{i} is not oriented from P_{i} to P_{}", i + 1)));
            }
        }
        cones.push(TauCone { i, right, left, height: k.alpha(i), roof_length, cone });
    }
    Ok(PResolutionFan { k: k.clone(), vertices, cones })
}

/// Which kind of simultaneous resolution: `S^d_{h,p}[k]` or `S̄^d_h[k]`.
pub type FanKind = Kind;

/// The decomposition `Q^i = Q^i_0 + Q^i_1` of the slice of one `τ_i`.
/// Coordinates are `<·, w^{h+1}>` on `Q_σ(w^h)`; the second summand is
/// measured before division by `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece<I: Scalar> {
    pub i: usize,
    pub slice: Interval<I>,
    pub summand0: Interval<I>,
    pub summand1: Interval<I>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanDecomposition<I: Scalar> {
    pub kind: FanKind,
    pub h: usize,
    pub p: i64,
    pub d: i64,
    pub k: ZeroChain,
    /// Non-degenerate cones only, left (`(-q,n)` side) to right.
    pub pieces: Vec<Piece<I>>,
}

impl<I: Scalar> FanDecomposition<I> {
    pub fn label(&self) -> String {
        match self.kind {
            Kind::D => format!("S^{}_{{{},{}}}[{}]", self.d, self.h, self.p, self.k),
            Kind::DBar => format!("Sbar^{}_{}[{}]", self.d, self.h, self.k),
        }
    }

    /// The decomposition of `Q_σ(w^h)` obtained by concatenating the pieces.
    pub fn induced(&self) -> (Interval<I>, Interval<I>) {
        let first = &self.pieces[0];
        let last = &self.pieces[self.pieces.len() - 1];
        (
            Interval { lo: first.summand0.lo.clone(), hi: last.summand0.hi.clone() },
            Interval { lo: first.summand1.lo.clone(), hi: last.summand1.hi.clone() },
        )
    }
}

fn t_coord<I: Scalar>(model: &CqsModel<I>, h: usize, v: &Vec2<I>) -> Rational<I> {
    Rational::new(v.dot(model.w(h + 1)), v.dot(model.w(h)))
}

pub fn fan_decomposition<I: Scalar>(
    model: &CqsModel<I>,
    k: &ZeroChain,
    kind: FanKind,
    h: usize,
    p: i64,
    d: i64,
) -> Result<FanDecomposition<I>> {
    if h < 2 || h + 1 > model.e() {
        return Err(Error::Precondition(format!("h = {h} is not an interior index")));
    }
    let room = model.a(h) - k.k(h);
    // width of the D-part at τ_h
    let split = match kind {
        Kind::D => {
            if d < 1 || p < 1 || p * d > room {
                return Err(Error::Precondition(format!("need 1 <= pd <= a_h - k_h = {room}, got p = {p}, d = {d}")));
            }
            p * d
        }
        Kind::DBar => {
            let ah1 = k.alpha(h - 1);
            if !model.is_inner(h) || p != 1 {
                return Err(Error::Precondition(format!("S̄ needs p = 1 and 2 < h < {}", model.e() - 1)));
            }
            if k.alpha(h) != 1 {
                return Err(Error::Precondition(format!("S̄ needs α_h = 1, got {}", k.alpha(h))));
            }
            if d < ah1 || d > room + ah1 {
                return Err(Error::Precondition(format!("need {ah1} <= d <= {}, got d = {d}", room + ah1)));
            }
            d - ah1
        }
    };
    let fan = p_resolution_fan(model, k)?;
    let seg = crate::minkowski::segment(model, h)?;
    let shifted = seg.shifted_interval();
    let mut c0 = shifted.lo.clone();
    let mut c1 = Rational::zero();
    let mut pieces = Vec::new();
    for tau in fan.cones.iter().rev() {
        if tau.is_degenerate() {
            continue;
        }
        let i = tau.i;
        let slice = Interval::new(t_coord(model, h, &tau.left), t_coord(model, h, &tau.right))?;
        let len = slice.length();
        let (l0, l1) = if i == h {
            let s = rat_int::<I>(int(split));
            (len.clone() - s.clone(), s)
        } else if kind == Kind::DBar && i < h {
            (Rational::zero(), len)
        } else {
            (len, Rational::zero())
        };
        let summand0 = Interval { lo: c0.clone(), hi: c0.clone() + l0 };
        let summand1 = Interval { lo: c1.clone(), hi: c1.clone() + l1 };
        c0 = summand0.hi.clone();
        c1 = summand1.hi.clone();
        pieces.push(Piece { i, slice, summand0, summand1 });
    }
    Ok(FanDecomposition { kind, h, p, d, k: k.clone(), pieces })
}

/// A maximal cone `τ'_i` of a three-dimensional fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan3Cone<I: Scalar> {
    /// Index of the `τ_i` it comes from (0 for cones of a hull fan).
    pub i: usize,
    pub cone: Cone3<I>,
    pub qgorenstein: bool,
    pub gorenstein: bool,
    pub canonical: bool,
}

impl<I: Scalar> Fan3Cone<I> {
    pub fn new(i: usize, cone: Cone3<I>) -> Result<Self> {
        let m = cone.qgorenstein_functional();
        let qgorenstein = m.is_some();
        let gorenstein = m.as_ref().is_some_and(|m| m.x.is_integer() && m.y.is_integer() && m.z.is_integer());
        let canonical = qgorenstein && cone.is_canonical()?;
        Ok(Fan3Cone { i, cone, qgorenstein, gorenstein, canonical })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan3<I: Scalar> {
    pub cones: Vec<Fan3Cone<I>>,
    pub support: Cone3<I>,
}

impl<I: Scalar> Fan3<I> {
    pub fn all_canonical(&self) -> bool {
        self.cones.iter().all(|c| c.canonical)
    }

    pub fn all_qgorenstein(&self) -> bool {
        self.cones.iter().all(|c| c.qgorenstein)
    }

    /// The cones as sorted ray sets, for comparing fans.
    pub fn ray_sets(&self) -> BTreeSet<Vec<Vec3<I>>> {
        self.cones
            .iter()
            .map(|c| {
                let mut r = c.cone.rays().to_vec();
                r.sort();
                r
            })
            .collect()
    }

    /// Merge neighbouring cones whose roofs lie on one plane. Cones must be
    /// listed in slice order, as produced by [`assemble_fan3`].
    pub fn coarsened(&self) -> Result<Fan3<I>> {
        let mut out: Vec<Fan3Cone<I>> = Vec::new();
        for c in &self.cones {
            if let Some(prev) = out.last_mut() {
                let (m0, m1) = (prev.cone.qgorenstein_functional(), c.cone.qgorenstein_functional());
                if m0.is_some() && m0 == m1 {
                    let mut rays = prev.cone.rays().to_vec();
                    rays.extend_from_slice(c.cone.rays());
                    *prev = Fan3Cone::new(prev.i, Cone3::new(&rays)?)?;
                    continue;
                }
            }
            out.push(c.clone());
        }
        Ok(Fan3 { cones: out, support: self.support.clone() })
    }
}

/// Two fans with the same maximal cones.
pub fn same_fan<I: Scalar>(a: &Fan3<I>, b: &Fan3<I>) -> bool {
    a.ray_sets() == b.ray_sets()
}

pub fn assemble_fan3<I: Scalar>(fd: &FanDecomposition<I>) -> Result<Fan3<I>> {
    let p = rat_int::<I>(int(fd.p));
    let one = Rational::one();
    let zero = Rational::zero();
    let gens = |piece: &Piece<I>| {
        vec![
            Vec3::new(piece.summand0.lo.clone(), one.clone(), zero.clone()),
            Vec3::new(piece.summand0.hi.clone(), one.clone(), zero.clone()),
            Vec3::new(piece.summand1.lo.clone() / p.clone(), zero.clone(), one.clone()),
            Vec3::new(piece.summand1.hi.clone() / p.clone(), zero.clone(), one.clone()),
        ]
    };
    let mut cones = Vec::new();
    let mut all = Vec::new();
    for piece in &fd.pieces {
        let g = gens(piece);
        all.extend(g.iter().cloned());
        cones.push(Fan3Cone::new(piece.i, Cone3::from_rational(&g)?)?);
    }
    for w in fd.pieces.windows(2) {
        if w[0].summand0.hi != w[1].summand0.lo || w[0].summand1.hi != w[1].summand1.lo {
            return Err(Error::Internal(format!("{}: pieces of τ_{} and τ_{} do not meet", fd.label(), w[0].i, w[1].i)));
        }
    }
    let support = Cone3::from_rational(&all)?;
    Ok(Fan3 { cones, support })
}

/// Whether the fan decomposition for `k` yields a canonical total space:
/// every non-degenerate `τ_i`, `i ≠ h`, is at most an RDP, and `τ_h` is too
/// unless the D-part fills the whole room `a_h - k_h`.
pub fn canonical_predicate<I: Scalar>(model: &CqsModel<I>, def: &Deformation<I>, k: &ZeroChain) -> Result<bool> {
    let fan = p_resolution_fan(model, k)?;
    let h = def.h();
    let others = fan.cones.iter().filter(|t| t.i != h).all(|t| t.is_rdp());
    let split = match def.kind() {
        Kind::D => def.p() * def.d(),
        Kind::DBar => def.d() - k.alpha(h - 1),
    };
    Ok(others && (fan.tau(h).is_rdp() || split == model.a(h) - k.k(h)))
}

/// The simultaneous resolution of `def` attached to `k`.
pub fn simultaneous_resolution<I: Scalar>(def: &Deformation<I>, k: &ZeroChain) -> Result<Fan3<I>> {
    let fd = fan_decomposition(&def.model, k, def.kind(), def.h(), def.p(), def.d())?;
    assemble_fan3(&fd)
}

/// The component singled out by the canonical model of the total space and
/// the corresponding fan.
pub fn canonical_model<I: Scalar>(def: &Deformation<I>) -> Result<(ZeroChain, Fan3<I>)> {
    let mut hits = Vec::new();
    for k in components_of(def) {
        if canonical_predicate(&def.model, def, &k)? {
            hits.push(k);
        }
    }
    if hits.len() != 1 {
        let list: Vec<String> = hits.iter().map(|k| k.to_string()).collect();
        return Err(Error::Internal(format!(
            "{}: {} components pass the canonical criterion [{}]",
            def.label(),
            hits.len(),
            list.join(", ")
        )));
    }
    let k = hits.pop().unwrap();
    let fan = simultaneous_resolution(def, &k)?;
    if !fan.all_canonical() {
        return Err(Error::Internal(format!("{}: fan for {k} is not canonical", def.label())));
    }
    Ok((k, fan))
}

/// The fan over the compact faces of `conv(σ' ∩ Z³ \ {0})`.
pub fn canonical_model_via_hull<I: Scalar>(sigma_prime: &Cone3<I>) -> Result<Fan3<I>> {
    let cones = compact_facets(sigma_prime)
        .into_iter()
        .map(|f| Fan3Cone::new(0, Cone3::new(&f.vertices)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Fan3 { cones, support: sigma_prime.clone() })
}

/// Lattice points of `Q_σ(w^h)` strictly to the right of `τ_h`.
pub fn lattice_points_right<I: Scalar>(model: &CqsModel<I>, k: &ZeroChain, h: usize) -> Result<i64> {
    if !model.is_inner(h) || k.alpha(h) != 1 {
        return Err(Error::Precondition(format!("need 2 < h < {} and α_h = 1", model.e() - 1)));
    }
    let fan = p_resolution_fan(model, k)?;
    let t = t_coord(model, h, &fan.tau(h).right);
    let right_end = crate::minkowski::segment(model, h)?.shifted_interval().hi;
    // integers in (t, right_end]
    to_i64(&(right_end.floor().to_integer() - t.floor().to_integer()))
}
