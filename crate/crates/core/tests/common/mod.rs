//! Brute-force oracles shared by the integration tests. None of them reuse
//! the library algorithm they check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cqdef_core::chains::alpha_seq;
use cqdef_core::geom3::{lattice_points_in_polytope, Cone3, Vec3};
use cqdef_core::lattice::{cf_eval, Cone2, Vec2};
use cqdef_core::minkowski::{segment, Interval};
use cqdef_core::{Model, Rat};
use num_rational::Ratio;

/// Irreducible elements of `cone ∩ Z²` from the points of the fundamental
/// parallelogram, ordered counterclockwise.
pub fn hilbert_basis_2d_brute(cone: &Cone2<i64>) -> Vec<Vec2<i64>> {
    let (r1, r2) = (cone.ray1().clone(), cone.ray2().clone());
    let corners = [Vec2::new(0, 0), r1.clone(), r2.clone(), r1.clone() + r2.clone()];
    let (x0, x1) = (corners.iter().map(|c| c.x).min().unwrap(), corners.iter().map(|c| c.x).max().unwrap());
    let (y0, y1) = (corners.iter().map(|c| c.y).min().unwrap(), corners.iter().map(|c| c.y).max().unwrap());
    let mut pts = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            let v = Vec2::new(x, y);
            if !v.is_zero() && cone.contains(&v) {
                pts.push(v);
            }
        }
    }
    let mut basis: Vec<Vec2<i64>> = pts
        .iter()
        .filter(|p| !pts.iter().any(|t| t != *p && cone.contains(&((*p).clone() - t.clone()))))
        .cloned()
        .collect();
    basis.sort_by(|a, b| 0.cmp(&a.det(b)));
    basis
}

/// `K` by filtering the whole box `∏ [1, a_i]` with the defining conditions.
pub fn k_brute(a: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![1i64; a.len()];
    loop {
        let ok = cf_eval(&cur) == Some(Ratio::from_integer(0))
            && alpha_seq(&cur).is_some_and(|al| *al.last().unwrap() == 0);
        if ok {
            out.push(cur.clone());
        }
        // odometer
        let mut j = a.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < a[j] {
                cur[j] += 1;
                for x in cur.iter_mut().skip(j + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

/// The Hilbert basis of the dual of a 3D cone. Elements are graded by a
/// functional in the interior of the cone; every element lies in a
/// fundamental parallelepiped of the fan triangulation of the dual, which
/// bounds the grade.
pub fn dual_hilbert_basis_brute(cone: &Cone3<i64>) -> BTreeSet<Vec3<i64>> {
    let dual = cone.dual();
    let f = cone.rays().iter().cloned().fold(Vec3::new(0, 0, 0), |a, b| a + b);
    let bound = dual
        .triangulation()
        .iter()
        .map(|[a, b, c]| a.dot(&f) + b.dot(&f) + c.dot(&f))
        .max()
        .unwrap();
    let mut ineqs: Vec<(Vec3<i64>, i64)> = dual.facet_normals().iter().map(|n| (n.clone(), 0)).collect();
    ineqs.push((-f.clone(), -bound));
    let reach = dual
        .rays()
        .iter()
        .map(|r| {
            let s = bound / r.dot(&f) + 1;
            r.x.abs().max(r.y.abs()).max(r.z.abs()) * s
        })
        .max()
        .unwrap();
    let lo = Vec3::new(-reach, -reach, -reach);
    let hi = Vec3::new(reach, reach, reach);
    let mut pts: Vec<Vec3<i64>> =
        lattice_points_in_polytope(&ineqs, &lo, &hi).into_iter().filter(|p| !p.is_zero()).collect();
    pts.sort_by_key(|p| p.dot(&f));
    let mut basis: Vec<Vec3<i64>> = Vec::new();
    for p in pts {
        if !basis.iter().any(|b| dual.contains(&(p.clone() - b.clone()))) {
            basis.push(p);
        }
    }
    basis.into_iter().collect()
}

fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// Two-summand decompositions of `Q_σ(w^h)` with `p = 1` found by scanning
/// all lattice endpoints, as a set of unordered pairs of summand classes
/// `(fractional part of the left end, length)`.
pub fn p1_decompositions_brute(model: &Model, h: usize) -> BTreeSet<Vec<(Rat, Rat)>> {
    let seg = segment(model, h).unwrap();
    let (b, c) = (seg.beta, seg.gamma);
    let mut out = BTreeSet::new();
    let mut add = |q0: Interval<i64>, q1: Interval<i64>| {
        if q0.is_lattice_point() || q1.is_lattice_point() {
            return;
        }
        let mut key = vec![(frac(&q0.lo), q0.length()), (frac(&q1.lo), q1.length())];
        key.sort();
        out.insert(key);
    };
    // after a swap and a shift one summand starts at 0; its right end or the
    // other summand's right end is integral
    let lo = b.ceil().to_integer() - 1;
    let hi = c.floor().to_integer() + 1;
    for j in lo..=hi {
        let jr = Rat::from_integer(j);
        if jr >= Rat::from_integer(0) && jr <= c - b {
            add(Interval { lo: b, hi: c - jr }, Interval { lo: Rat::from_integer(0), hi: jr });
        }
        if jr >= b && jr <= c {
            add(Interval { lo: b, hi: jr }, Interval { lo: Rat::from_integer(0), hi: c - jr });
        }
    }
    out
}

/// Whether `(n, q)` is smooth or a T-singularity by search over `d, m, a`.
pub fn is_t_brute(n: i64, q: i64) -> bool {
    if q == n - 1 {
        return true;
    }
    for m in 2..=n {
        for d in 1..=n {
            if d * m * m != n {
                continue;
            }
            for a in 1..m {
                if num_integer::gcd(a, m) == 1 && (d * m * a - 1).rem_euclid(n) == q {
                    return true;
                }
            }
        }
    }
    false
}
