//! Three-dimensional rational cones: facets, lattice points under a roof,
//! canonicity of Q-Gorenstein cones, and the compact faces of
//! `conv(σ ∩ Z³ \ {0})`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use crate::scalar::{Rational, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }
}

impl<T: Clone + Add<Output = T> + Mul<Output = T>> Vec3<T> {
    pub fn dot(&self, o: &Vec3<T>) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }
}

impl<T: Clone + Sub<Output = T> + Mul<Output = T>> Vec3<T> {
    pub fn cross(&self, o: &Vec3<T>) -> Vec3<T> {
        Vec3::new(
            self.y.clone() * o.z.clone() - self.z.clone() * o.y.clone(),
            self.z.clone() * o.x.clone() - self.x.clone() * o.z.clone(),
            self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone(),
        )
    }
}

impl<T: Clone + Mul<Output = T>> Vec3<T> {
    pub fn scale(&self, s: &T) -> Vec3<T> {
        Vec3::new(self.x.clone() * s.clone(), self.y.clone() * s.clone(), self.z.clone() * s.clone())
    }
}

impl<T: Add<Output = T>> Add for Vec3<T> {
    type Output = Vec3<T>;
    fn add(self, o: Vec3<T>) -> Vec3<T> {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Sub<Output = T>> Sub for Vec3<T> {
    type Output = Vec3<T>;
    fn sub(self, o: Vec3<T>) -> Vec3<T> {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Neg<Output = T>> Neg for Vec3<T> {
    type Output = Vec3<T>;
    fn neg(self) -> Vec3<T> {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<T: fmt::Display> fmt::Display for Vec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl<I: Scalar> Vec3<I> {
    pub fn from_i64(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(crate::scalar::int(x), crate::scalar::int(y), crate::scalar::int(z))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn primitive(&self) -> Result<Vec3<I>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("the zero vector has no primitive direction".into()));
        }
        let g = self.x.gcd(&self.y).gcd(&self.z);
        Ok(Vec3::new(self.x.clone() / g.clone(), self.y.clone() / g.clone(), self.z.clone() / g))
    }

    pub fn to_rational(&self) -> Vec3<Rational<I>> {
        Vec3::new(
            Rational::from_integer(self.x.clone()),
            Rational::from_integer(self.y.clone()),
            Rational::from_integer(self.z.clone()),
        )
    }

    fn coord(&self, k: usize) -> &I {
        match k {
            0 => &self.x,
            1 => &self.y,
            _ => &self.z,
        }
    }
}

/// Primitive integer vector on the ray through a nonzero rational point.
pub fn primitive_on_ray3<I: Scalar>(v: &Vec3<Rational<I>>) -> Result<Vec3<I>> {
    let l = v.x.denom().lcm(v.y.denom()).lcm(v.z.denom());
    let lr = Rational::from_integer(l);
    Vec3::new(
        (v.x.clone() * lr.clone()).to_integer(),
        (v.y.clone() * lr.clone()).to_integer(),
        (v.z.clone() * lr).to_integer(),
    )
    .primitive()
}

pub fn det3<I: Scalar>(a: &Vec3<I>, b: &Vec3<I>, c: &Vec3<I>) -> I {
    a.dot(&b.cross(c))
}

/// A full-dimensional strictly convex cone in `R³`, held by its primitive
/// extremal rays in cyclic order and its inner facet normals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone3<I> {
    rays: Vec<Vec3<I>>,
    facets: Vec<Vec3<I>>,
}

impl<I: Scalar> Cone3<I> {
    /// Build from integer generators; redundant generators are dropped.
    pub fn new(generators: &[Vec3<I>]) -> Result<Self> {
        let mut gens: Vec<Vec3<I>> = Vec::new();
        for g in generators {
            let p = g.primitive()?;
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        if gens.len() < 3 {
            return Err(Error::InvalidInput(format!("{} rays cannot span a 3-dimensional cone", gens.len())));
        }
        let mut facets: Vec<Vec3<I>> = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let n = gens[i].cross(&gens[j]);
                if n.is_zero() {
                    return Err(Error::InvalidInput("opposite generators: cone is not strictly convex".into()));
                }
                let signs: Vec<I> = gens.iter().map(|g| g.dot(&n)).collect();
                let normal = if signs.iter().all(|s| !s.is_negative()) {
                    n
                } else if signs.iter().all(|s| !s.is_positive()) {
                    -n
                } else {
                    continue;
                };
                if gens.iter().all(|g| g.dot(&normal).is_zero()) {
                    return Err(Error::InvalidInput("generators are coplanar".into()));
                }
                let normal = normal.primitive()?;
                if !facets.contains(&normal) {
                    facets.push(normal);
                }
            }
        }
        if facets.len() < 3 {
            return Err(Error::InvalidInput("generators do not span a strictly convex cone".into()));
        }
        // extremal rays lie on at least two facets
        let rays: Vec<Vec3<I>> = gens
            .into_iter()
            .filter(|g| facets.iter().filter(|n| g.dot(n).is_zero()).count() >= 2)
            .collect();
        let interior = rays.iter().cloned().fold(Vec3::new(I::zero(), I::zero(), I::zero()), |a, b| a + b);
        if facets.iter().any(|n| !interior.dot(n).is_positive()) {
            return Err(Error::InvalidInput("cone is not strictly convex".into()));
        }
        let rays = cyclic_order(&rays, &facets);
        Ok(Cone3 { rays, facets })
    }

    /// Build from rational points, each standing for the ray through it.
    pub fn from_rational(points: &[Vec3<Rational<I>>]) -> Result<Self> {
        let gens = points.iter().map(primitive_on_ray3).collect::<Result<Vec<_>>>()?;
        Cone3::new(&gens)
    }

    pub fn rays(&self) -> &[Vec3<I>] {
        &self.rays
    }

    /// Inner facet normals; these are the extremal rays of the dual cone.
    pub fn facet_normals(&self) -> &[Vec3<I>] {
        &self.facets
    }

    pub fn dual(&self) -> Cone3<I> {
        Cone3::new(&self.facets).expect("dual of a full-dimensional pointed cone")
    }

    pub fn contains(&self, v: &Vec3<I>) -> bool {
        self.facets.iter().all(|n| !v.dot(n).is_negative())
    }

    pub fn contains_rational(&self, v: &Vec3<Rational<I>>) -> bool {
        self.facets.iter().all(|n| !v.dot(&n.to_rational()).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone3<I>) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// Ray set equality, i.e. equality as subsets of `R³`.
    pub fn same_support(&self, other: &Cone3<I>) -> bool {
        let a: BTreeSet<_> = self.rays.iter().collect();
        let b: BTreeSet<_> = other.rays.iter().collect();
        a == b
    }

    /// A functional in the interior of the dual cone.
    pub fn interior_functional(&self) -> Vec3<I> {
        self.facets.iter().cloned().fold(Vec3::new(I::zero(), I::zero(), I::zero()), |a, b| a + b)
    }

    /// The rational `m` with `<r, m> = 1` on every primitive ray, if it exists
    /// (the Q-Gorenstein certificate).
    pub fn qgorenstein_functional(&self) -> Option<Vec3<Rational<I>>> {
        let (a, b, c) = (&self.rays[0], &self.rays[1], &self.rays[2]);
        let d = det3(a, b, c);
        // m = (b×c + c×a + a×b) / det solves <a,m> = <b,m> = <c,m> = 1
        let num = b.cross(c) + c.cross(a) + a.cross(b);
        let m = Vec3::new(
            Rational::new(num.x, d.clone()),
            Rational::new(num.y, d.clone()),
            Rational::new(num.z, d),
        );
        let one = Rational::one();
        self.rays.iter().all(|r| r.to_rational().dot(&m) == one).then_some(m)
    }

    pub fn is_qgorenstein(&self) -> bool {
        self.qgorenstein_functional().is_some()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == 3
    }

    /// Fan triangulation `(r0, ri, ri+1)` of the cyclically ordered rays.
    pub fn triangulation(&self) -> Vec<[Vec3<I>; 3]> {
        (1..self.rays.len() - 1)
            .map(|i| [self.rays[0].clone(), self.rays[i].clone(), self.rays[i + 1].clone()])
            .collect()
    }

    /// Nonzero lattice points of `conv(0, rays)` (taken over the fan
    /// triangulation), sorted.
    pub fn lattice_points_under_rays(&self) -> Vec<Vec3<I>> {
        let mut set = BTreeSet::new();
        for [a, b, c] in self.triangulation() {
            for p in simplex_lattice_points(&a, &b, &c) {
                if !p.is_zero() {
                    set.insert(p);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Canonical singularities: no nonzero lattice point lies strictly below
    /// the hyperplane through the primitive generators.
    pub fn is_canonical(&self) -> Result<bool> {
        let m = self
            .qgorenstein_functional()
            .ok_or_else(|| Error::Precondition("canonicity is only decided for Q-Gorenstein cones".into()))?;
        let one = Rational::one();
        Ok(self.lattice_points_under_rays().iter().all(|p| p.to_rational().dot(&m) >= one))
    }

    /// Whether the cone is smooth (unimodular simplicial).
    pub fn is_smooth(&self) -> bool {
        self.rays.len() == 3 && det3(&self.rays[0], &self.rays[1], &self.rays[2]).abs().is_one()
    }
}

fn cyclic_order<I: Scalar>(rays: &[Vec3<I>], facets: &[Vec3<I>]) -> Vec<Vec3<I>> {
    let k = rays.len();
    let adjacent = |i: usize, j: usize| {
        facets.iter().any(|n| rays[i].dot(n).is_zero() && rays[j].dot(n).is_zero())
    };
    let mut order = vec![0usize];
    let mut used = vec![false; k];
    used[0] = true;
    while order.len() < k {
        let last = *order.last().unwrap();
        let next = (0..k).find(|&j| !used[j] && adjacent(last, j)).expect("rays of a polyhedral cone form a cycle");
        used[next] = true;
        order.push(next);
    }
    // orient counterclockwise around the interior
    let mut out: Vec<Vec3<I>> = order.into_iter().map(|i| rays[i].clone()).collect();
    let centre = out.iter().cloned().fold(Vec3::new(I::zero(), I::zero(), I::zero()), |a, b| a + b);
    if det3(&out[0], &out[1], &centre).is_negative() {
        out[1..].reverse();
    }
    out
}

/// Lattice points `v` with `<n, v> >= c` for every `(n, c)`, inside the box.
pub fn lattice_points_in_polytope<I: Scalar>(
    ineqs: &[(Vec3<I>, I)],
    lo: &Vec3<I>,
    hi: &Vec3<I>,
) -> Vec<Vec3<I>> {
    let mut out = Vec::new();
    let mut y = lo.y.clone();
    while y <= hi.y {
        let mut z = lo.z.clone();
        while z <= hi.z {
            let mut xmin = lo.x.clone();
            let mut xmax = hi.x.clone();
            let mut empty = false;
            for (n, c) in ineqs {
                // n.x * x >= c - n.y*y - n.z*z
                let rhs = c.clone() - n.y.clone() * y.clone() - n.z.clone() * z.clone();
                if n.x.is_zero() {
                    if rhs.is_positive() {
                        empty = true;
                        break;
                    }
                } else if n.x.is_positive() {
                    let b = rhs.div_ceil(&n.x);
                    if b > xmin {
                        xmin = b;
                    }
                } else {
                    let b = (-rhs).div_floor(&(-n.x.clone()));
                    if b < xmax {
                        xmax = b;
                    }
                }
            }
            if !empty {
                let mut x = xmin;
                while x <= xmax {
                    out.push(Vec3::new(x.clone(), y.clone(), z.clone()));
                    x = x + I::one();
                }
            }
            z = z + I::one();
        }
        y = y + I::one();
    }
    out
}

/// All lattice points of the simplex `conv(0, a, b, c)` (including 0).
pub fn simplex_lattice_points<I: Scalar>(a: &Vec3<I>, b: &Vec3<I>, c: &Vec3<I>) -> Vec<Vec3<I>> {
    let mut d = det3(a, b, c);
    let mut nbc = b.cross(c);
    let mut nca = c.cross(a);
    let mut nab = a.cross(b);
    if d.is_negative() {
        d = -d;
        nbc = -nbc;
        nca = -nca;
        nab = -nab;
    }
    if d.is_zero() {
        return Vec::new();
    }
    let roof = -(nbc.clone() + nca.clone() + nab.clone());
    let ineqs = vec![(nbc, I::zero()), (nca, I::zero()), (nab, I::zero()), (roof, -d)];
    let pts = [Vec3::new(I::zero(), I::zero(), I::zero()), a.clone(), b.clone(), c.clone()];
    let lo = Vec3::new(
        pts.iter().map(|p| p.x.clone()).min().unwrap(),
        pts.iter().map(|p| p.y.clone()).min().unwrap(),
        pts.iter().map(|p| p.z.clone()).min().unwrap(),
    );
    let hi = Vec3::new(
        pts.iter().map(|p| p.x.clone()).max().unwrap(),
        pts.iter().map(|p| p.y.clone()).max().unwrap(),
        pts.iter().map(|p| p.z.clone()).max().unwrap(),
    );
    lattice_points_in_polytope(&ineqs, &lo, &hi)
}

/// A compact facet of `conv(σ ∩ Z³ \ {0})`: inner normal, level and the
/// polygon vertices in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactFacet<I> {
    pub normal: Vec3<I>,
    pub level: I,
    pub vertices: Vec<Vec3<I>>,
}

/// The compact facets of the convex hull of the nonzero lattice points of a
/// cone. Their cones form the fan of the canonical model of `U_σ`.
pub fn compact_facets<I: Scalar>(cone: &Cone3<I>) -> Vec<CompactFacet<I>> {
    let candidates = cone.lattice_points_under_rays();
    // vertices of the hull are irreducible in the semigroup
    let pts: Vec<Vec3<I>> = candidates
        .iter()
        .filter(|s| {
            !candidates.iter().any(|t| t != *s && cone.contains(&((*s).clone() - t.clone())))
        })
        .cloned()
        .collect();
    hull_compact_facets(&pts, cone)
}

fn hull_compact_facets<I: Scalar>(pts: &[Vec3<I>], cone: &Cone3<I>) -> Vec<CompactFacet<I>> {
    let rays = cone.rays();
    let is_compact = |n: &Vec3<I>| rays.iter().all(|r| r.dot(n).is_positive());

    // coplanar point set: one facet
    let (a, b) = (&pts[0], &pts[1]);
    let third = pts.iter().find(|c| !(b.clone() - a.clone()).cross(&((*c).clone() - a.clone())).is_zero());
    if let Some(c) = third {
        let n = (b.clone() - a.clone()).cross(&(c.clone() - a.clone()));
        if pts.iter().all(|p| (p.clone() - a.clone()).dot(&n).is_zero()) {
            let mut n = n.primitive().expect("nonzero normal");
            if rays.iter().any(|r| r.dot(&n).is_negative()) {
                n = -n;
            }
            let level = a.dot(&n);
            return vec![CompactFacet { vertices: polygon_hull(pts, &n), normal: n, level }];
        }
    }

    let f = cone.interior_functional();
    let p0 = pts
        .iter()
        .min_by(|p, q| (p.dot(&f), &p.x, &p.y, &p.z).cmp(&(q.dot(&f), &q.x, &q.y, &q.z)))
        .unwrap()
        .clone();
    let e = if f.cross(&Vec3::from_i64(1, 0, 0)).is_zero() { Vec3::from_i64(0, 1, 0) } else { Vec3::from_i64(1, 0, 0) };
    let u = f.cross(&e);
    let n1 = rotate_about(pts, &p0, &u, &f, None);
    let on1: Vec<Vec3<I>> = pts.iter().filter(|p| (*p).clone().sub(p0.clone()).dot(&n1).is_zero()).cloned().collect();
    let first = if affinely_spans_plane(&on1) {
        n1
    } else {
        let far = on1
            .iter()
            .max_by(|p, q| {
                let dp = (*p).clone() - p0.clone();
                let dq = (*q).clone() - p0.clone();
                dp.dot(&dp).cmp(&dq.dot(&dq))
            })
            .unwrap()
            .clone();
        rotate_about(pts, &p0, &(far - p0.clone()), &n1, None)
    };

    let mut seen: HashSet<Vec3<I>> = HashSet::new();
    let mut queue: VecDeque<(Vec3<I>, Vec3<I>)> = VecDeque::new();
    let first = first.primitive().expect("nonzero normal");
    seen.insert(first.clone());
    queue.push_back((first, p0));
    let mut out = Vec::new();
    while let Some((n, anchor)) = queue.pop_front() {
        let level = anchor.dot(&n);
        let on: Vec<Vec3<I>> = pts.iter().filter(|p| p.dot(&n) == level).cloned().collect();
        let poly = polygon_hull(&on, &n);
        let k = poly.len();
        for i in 0..k {
            let a = &poly[i];
            let b = &poly[(i + 1) % k];
            let z = &poly[(i + 2) % k];
            let next = rotate_about(pts, a, &(b.clone() - a.clone()), &n, Some(z)).primitive().expect("nonzero normal");
            if seen.insert(next.clone()) {
                queue.push_back((next, a.clone()));
            }
        }
        if is_compact(&n) {
            out.push(CompactFacet { normal: n, level, vertices: poly });
        }
    }
    out
}

fn affinely_spans_plane<I: Scalar>(pts: &[Vec3<I>]) -> bool {
    if pts.len() < 3 {
        return false;
    }
    let a = &pts[0];
    pts.iter().any(|b| pts.iter().any(|c| !(b.clone() - a.clone()).cross(&(c.clone() - a.clone())).is_zero()))
}

/// Rotate the supporting plane with inner normal `n0` about the line through
/// `a` with direction `u` until it hits another point. When `inside` is given
/// the rotation moves away from it (it stays strictly on the inner side).
fn rotate_about<I: Scalar>(pts: &[Vec3<I>], a: &Vec3<I>, u: &Vec3<I>, n0: &Vec3<I>, inside: Option<&Vec3<I>>) -> Vec3<I> {
    let mut v = u.cross(n0);
    let sweep = |v: &Vec3<I>| -> Option<(I, I)> {
        // minimize A/(-B) over points with B < 0
        let mut best: Option<(I, I)> = None;
        for p in pts {
            let d = p.clone() - a.clone();
            let aa = d.dot(n0);
            let bb = d.dot(v);
            if bb.is_negative() {
                let nb = -bb;
                best = match best {
                    Some((ba, bnb)) if ba.clone() * nb.clone() >= aa.clone() * bnb.clone() => Some((aa, nb)),
                    None => Some((aa, nb)),
                    keep => keep,
                };
            }
        }
        best
    };
    let chosen = match inside {
        Some(z) => {
            if (z.clone() - a.clone()).dot(&v).is_negative() {
                v = -v;
            }
            // all points lie within a half-turn of the old plane, so the
            // neighbouring facet is the one at the largest angle, which may be
            // acute
            let mut best: Option<(I, I)> = None;
            for p in pts {
                let d = p.clone() - a.clone();
                let (aa, bb) = (d.dot(n0), d.dot(&v));
                if aa.is_zero() && !bb.is_negative() {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((ba, bnb)) => (-bnb.clone()) * aa.clone() - ba.clone() * bb.clone() > I::zero(),
                };
                if better {
                    best = Some((aa, -bb));
                }
            }
            best
        }
        None => match sweep(&v) {
            Some(b) => Some(b),
            None => {
                v = -v;
                sweep(&v)
            }
        },
    };
    let (aa, nb) = chosen.expect("full-dimensional point set has a neighbouring facet");
    // cos ∝ nb, sin ∝ aa
    n0.scale(&nb) + v.scale(&aa)
}

/// Vertices of the planar convex hull of coplanar points, in cyclic order.
fn polygon_hull<I: Scalar>(pts: &[Vec3<I>], n: &Vec3<I>) -> Vec<Vec3<I>> {
    let drop = (0..3).max_by_key(|&k| n.coord(k).abs()).unwrap();
    let proj = |p: &Vec3<I>| -> (I, I) {
        match drop {
            0 => (p.y.clone(), p.z.clone()),
            1 => (p.z.clone(), p.x.clone()),
            _ => (p.x.clone(), p.y.clone()),
        }
    };
    let mut sorted: Vec<&Vec3<I>> = pts.iter().collect();
    sorted.sort_by_key(|a| proj(a));
    sorted.dedup();
    if sorted.len() <= 2 {
        return sorted.into_iter().cloned().collect();
    }
    let cross = |o: &Vec3<I>, a: &Vec3<I>, b: &Vec3<I>| -> I {
        let (ox, oy) = proj(o);
        let (ax, ay) = proj(a);
        let (bx, by) = proj(b);
        (ax - ox.clone()) * (by - oy.clone()) - (ay - oy) * (bx - ox)
    };
    let mut lower: Vec<&Vec3<I>> = Vec::new();
    for p in &sorted {
        while lower.len() >= 2 && !cross(lower[lower.len() - 2], lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Vec3<I>> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2 && !cross(upper[upper.len() - 2], upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.into_iter().chain(upper).cloned().collect()
}
