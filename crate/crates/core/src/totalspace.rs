//! The total space `X = U_{σ'}` of a one-parameter toric deformation: the cone
//! `σ'`, the generators of its dual semigroup, the deformation equations, the
//! induced map to the versal base and the components it lands in.
//!
//! `N' = Z³` with first coordinate `<·, w^{h+1}>` on `Q_σ(w^h)`, so that
//! `φ(v) = (<v, w^{h+1}>, <v, w^h>, p<v, w^h>)` embeds `σ` into `σ'`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::chains::{enumerate_k, ZeroChain};
use crate::cqs::CqsModel;
use crate::geom3::{Cone3, Vec3};
use crate::minkowski::{Decomposition, Interval, Kind};
use crate::poly::Poly;
use crate::scalar::{binomial, int, rat_int, Rational, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation<I: Scalar> {
    pub model: CqsModel<I>,
    pub decomp: Decomposition<I>,
    /// The summands in `<·, w^{h+1}>` coordinates (the first one shifted).
    pub q0: Interval<I>,
    pub q1: Interval<I>,
    pub sigma_prime: Cone3<I>,
}

impl<I: Scalar> Deformation<I> {
    pub fn h(&self) -> usize {
        self.decomp.h
    }

    pub fn p(&self) -> i64 {
        self.decomp.p
    }

    pub fn d(&self) -> i64 {
        self.decomp.d
    }

    pub fn kind(&self) -> Kind {
        self.decomp.kind
    }

    pub fn label(&self) -> String {
        self.decomp.deformation_label()
    }

    /// `φ` on `N = Z²`.
    pub fn embed(&self, v: &crate::lattice::Vec2<I>) -> Vec3<I> {
        let h = self.h();
        let b = v.dot(self.model.w(h));
        Vec3::new(v.dot(self.model.w(h + 1)), b.clone(), b * int(self.p()))
    }

    /// The rational generators `(β0,1,0), (γ0,1,0), (β1/p,0,1), (γ1/p,0,1)`.
    pub fn generators(&self) -> Vec<Vec3<Rational<I>>> {
        let p = rat_int::<I>(int(self.p()));
        let (z, o) = (Rational::zero(), Rational::from_integer(I::one()));
        vec![
            Vec3::new(self.q0.lo.clone(), o.clone(), z.clone()),
            Vec3::new(self.q0.hi.clone(), o.clone(), z.clone()),
            Vec3::new(self.q1.lo.clone() / p.clone(), z.clone(), o.clone()),
            Vec3::new(self.q1.hi.clone() / p, z, o),
        ]
    }

    /// The monomial `λ = x^{[0,0,1]} - x^{[0,p,0]}`.
    pub fn lambda_monomials(&self) -> (Vec3<I>, Vec3<I>) {
        (Vec3::from_i64(0, 0, 1), Vec3::from_i64(0, self.p(), 0))
    }
}

pub fn build_deformation<I: Scalar>(model: &CqsModel<I>, decomp: &Decomposition<I>) -> Result<Deformation<I>> {
    decomp.validate()?;
    let delta = rat_int::<I>(decomp.segment.delta.clone());
    let q0 = decomp.summand0.shift(&delta);
    let q1 = decomp.summand1.clone();
    let mut def = Deformation {
        model: model.clone(),
        decomp: decomp.clone(),
        q0,
        q1,
        sigma_prime: Cone3::new(&[Vec3::from_i64(1, 0, 0), Vec3::from_i64(0, 1, 0), Vec3::from_i64(0, 0, 1)])?,
    };
    def.sigma_prime = Cone3::from_rational(&def.generators())?;
    // σ maps into σ'
    for r in [model.sigma().ray1(), model.sigma().ray2()] {
        if !def.sigma_prime.contains(&def.embed(r)) {
            return Err(Error::Internal(format!("{}: φ(σ) is not contained in σ'", def.label())));
        }
    }
    Ok(def)
}

/// A generator of the dual semigroup of `σ'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    V(usize),
    VTilde,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::V(i) => write!(f, "v{i}"),
            Gen::VTilde => write!(f, "v~"),
        }
    }
}

/// `Σ lhs = Σ rhs` with nonnegative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Vec<(i64, Gen)>,
    pub rhs: Vec<(i64, Gen)>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |t: &[(i64, Gen)]| {
            let parts: Vec<String> = t
                .iter()
                .filter(|(c, _)| *c != 0)
                .map(|(c, g)| if *c == 1 { g.to_string() } else { format!("{c}{g}") })
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        write!(f, "{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRelations<I> {
    /// `v^1, …, v^e`.
    pub v: Vec<Vec3<I>>,
    pub v_tilde: Vec3<I>,
    pub relations: Vec<Relation>,
}

impl<I: Scalar> GeneratorRelations<I> {
    pub fn get(&self, g: Gen) -> &Vec3<I> {
        match g {
            Gen::V(i) => &self.v[i - 1],
            Gen::VTilde => &self.v_tilde,
        }
    }

    fn eval(&self, terms: &[(i64, Gen)]) -> Vec3<I> {
        terms
            .iter()
            .fold(Vec3::new(I::zero(), I::zero(), I::zero()), |acc, (c, g)| acc + self.get(*g).scale(&int(*c)))
    }

    pub fn holds(&self, r: &Relation) -> bool {
        self.eval(&r.lhs) == self.eval(&r.rhs)
    }

    /// All generators, `v^1..v^e` then `ṽ`.
    pub fn all(&self) -> Vec<Vec3<I>> {
        let mut out = self.v.clone();
        out.push(self.v_tilde.clone());
        out
    }
}

pub fn generator_relations<I: Scalar>(def: &Deformation<I>) -> Result<GeneratorRelations<I>> {
    let m = &def.model;
    let (e, h, p, d) = (m.e(), def.h(), def.p(), def.d());
    let dbar = def.kind() == Kind::DBar;
    let zero = Vec3::new(I::zero(), I::zero(), I::zero());
    let mut v = vec![zero; e + 1];
    let vt = Vec3::from_i64(0, 0, 1);
    v[h] = Vec3::from_i64(0, 1, 0);
    v[h + 1] = Vec3::from_i64(1, 0, 0);
    v[h - 1] = Vec3::from_i64(-1, m.a(h) - p * d, d);
    for i in h + 1..e {
        v[i + 1] = v[i].scale(&int(m.a(i))) - v[i - 1].clone();
    }
    for i in (2..h).rev() {
        let up = if dbar && i == h - 1 { vt.clone() } else { v[i + 1].clone() };
        v[i - 1] = v[i].scale(&int(m.a(i))) - up;
    }
    v.remove(0);

    let mut relations = Vec::new();
    for i in 2..e {
        let r = if i == h {
            Relation { lhs: vec![(1, Gen::V(h - 1)), (1, Gen::V(h + 1))], rhs: vec![(m.a(h) - p * d, Gen::V(h)), (d, Gen::VTilde)] }
        } else if dbar && i == h - 1 {
            Relation { lhs: vec![(1, Gen::V(h - 2)), (1, Gen::VTilde)], rhs: vec![(m.a(i), Gen::V(i))] }
        } else {
            Relation { lhs: vec![(1, Gen::V(i - 1)), (1, Gen::V(i + 1))], rhs: vec![(m.a(i), Gen::V(i))] }
        };
        relations.push(r);
    }
    let gr = GeneratorRelations { v, v_tilde: vt, relations };

    let label = def.label();
    for r in &gr.relations {
        if !gr.holds(r) {
            return Err(Error::Internal(format!("{label}: relation {r} fails")));
        }
    }
    for g in gr.all() {
        if def.sigma_prime.rays().iter().any(|r| r.dot(&g).is_negative()) {
            return Err(Error::Internal(format!("{label}: {g} is not in the dual of σ'")));
        }
    }
    // φ* recovers the dual generators of σ
    for i in 1..=e {
        let vi = &gr.v[i - 1];
        let back = m.w(h + 1).scale(&vi.x) + m.w(h).scale(&(vi.y.clone() + vi.z.clone() * int(p)));
        if &back != m.w(i) {
            return Err(Error::Internal(format!("{label}: φ*(v^{i}) != w^{i}")));
        }
    }
    Ok(gr)
}

/// A factor `x_i^exp`, or `(x_i^p + λ)^exp` when `shift_p` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub var: usize,
    pub exp: i64,
    pub shift_p: Option<i64>,
}

impl Factor {
    fn var(var: usize, exp: i64) -> Self {
        Factor { var, exp, shift_p: None }
    }

    fn shifted(var: usize, p: i64, exp: i64) -> Self {
        Factor { var, exp, shift_p: Some(p) }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.shift_p {
            None => format!("x{}", self.var),
            Some(1) => format!("(x{} + λ)", self.var),
            Some(p) => format!("(x{}^{} + λ)", self.var, p),
        };
        if self.exp == 1 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}^{}", self.exp)
        }
    }
}

/// `Π lhs = Π rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Vec<Factor>,
    pub rhs: Vec<Factor>,
}

impl Equation {
    /// Set `λ = 0` and collect exponents per variable.
    pub fn at_lambda_zero(&self) -> (BTreeMap<usize, i64>, BTreeMap<usize, i64>) {
        let collect = |fs: &[Factor]| {
            let mut m = BTreeMap::new();
            for fac in fs {
                let e = fac.exp * fac.shift_p.unwrap_or(1);
                if e != 0 {
                    *m.entry(fac.var).or_insert(0) += e;
                }
            }
            m
        };
        (collect(&self.lhs), collect(&self.rhs))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |fs: &[Factor]| {
            let parts: Vec<String> = fs.iter().filter(|x| x.exp != 0).map(|x| x.to_string()).collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        };
        write!(f, "{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

/// The toric binomial `x_{i-1} x_{i+1} = x_i^{a_i}`.
pub fn toric_equation(i: usize, a_i: i64) -> Equation {
    Equation { lhs: vec![Factor::var(i - 1, 1), Factor::var(i + 1, 1)], rhs: vec![Factor::var(i, a_i)] }
}

/// The `e-2` equations of the total space, indexed by `i = 2..e-1`.
pub fn deformation_equations<I: Scalar>(def: &Deformation<I>) -> Vec<Equation> {
    let m = &def.model;
    let (h, p, d) = (def.h(), def.p(), def.d());
    (2..m.e())
        .map(|i| {
            if i == h {
                Equation {
                    lhs: vec![Factor::var(h - 1, 1), Factor::var(h + 1, 1)],
                    rhs: vec![Factor::var(h, m.a(h) - p * d), Factor::shifted(h, p, d)],
                }
            } else if def.kind() == Kind::DBar && i == h - 1 {
                Equation { lhs: vec![Factor::var(h - 2, 1), Factor::shifted(h, 1, 1)], rhs: vec![Factor::var(i, m.a(i))] }
            } else {
                toric_equation(i, m.a(i))
            }
        })
        .collect()
}

/// Check that reading `x_i` as `v^i` and `(x_h^p + λ)` as `ṽ` turns every
/// equation into one of the semigroup relations.
pub fn equations_match_relations<I: Scalar>(eqs: &[Equation], gr: &GeneratorRelations<I>) -> bool {
    let weight = |fs: &[Factor]| {
        fs.iter().fold(Vec3::new(I::zero(), I::zero(), I::zero()), |acc, f| {
            let g = if f.shift_p.is_some() { Gen::VTilde } else { Gen::V(f.var) };
            acc + gr.get(g).scale(&int(f.exp))
        })
    };
    eqs.iter().all(|e| weight(&e.lhs) == weight(&e.rhs))
}

/// A coordinate of the versal base: `s_i^{(l)}` or `t_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    S { i: usize, l: i64 },
    T { i: usize },
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::S { i, l } => write!(f, "s{i}^({l})"),
            Param::T { i } => write!(f, "t{i}"),
        }
    }
}

/// Values of the versal coordinates along the curve, as polynomials in λ.
/// Parameters that are not stored are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VersalMap<I> {
    pub values: BTreeMap<Param, Poly<I>>,
}

impl<I: Scalar> VersalMap<I> {
    pub fn get(&self, p: Param) -> Poly<I> {
        self.values.get(&p).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn set(&mut self, p: Param, v: Poly<I>) {
        if v.is_zero() {
            self.values.remove(&p);
        } else {
            self.values.insert(p, v);
        }
    }
}

pub fn versal_map<I: Scalar>(def: &Deformation<I>) -> VersalMap<I> {
    let (h, p, d) = (def.h(), def.p(), def.d());
    let mut map = VersalMap { values: BTreeMap::new() };
    let di: I = int(d);
    match def.kind() {
        Kind::D => {
            for l in 1..=d {
                map.set(Param::S { i: h, l: p * l }, Poly::monomial(binomial(&di, l as u32), l as u32));
            }
        }
        Kind::DBar => {
            map.set(Param::T { i: h }, Poly::lambda());
            let top = di - I::one();
            for l in 1..d {
                map.set(Param::S { i: h, l }, Poly::monomial(binomial(&top, l as u32), l as u32));
            }
        }
    }
    map
}

/// Express the map in the coordinates adapted to `S_[k]` by inverting the
/// triangular substitution `θ(s^{(l)}) = Σ_j C(α_{i-1}-1, j) t^j s^{(l-j)}`.
pub fn theta_rewrite<I: Scalar>(k: &ZeroChain, a: &[i64], map: &VersalMap<I>) -> VersalMap<I> {
    let mut out = map.clone();
    let e = a.len() + 2;
    for i in 2..e {
        let t = map.get(Param::T { i });
        let alpha = k.alpha(i - 1);
        if t.is_zero() || alpha <= 1 {
            continue;
        }
        let top: I = int(alpha - 1);
        let mut new_s: Vec<Poly<I>> = vec![Poly::one()];
        for l in 1..a[i - 2] {
            let mut val = map.get(Param::S { i, l });
            for j in 1..=l.min(alpha - 1) {
                let c = binomial(&top, j as u32);
                val = val - (&t.pow(j as u32) * &new_s[(l - j) as usize]).scale(&c);
            }
            new_s.push(val.clone());
            out.set(Param::S { i, l }, val);
        }
    }
    out
}

/// The defining conditions of `S_[k]` in its adapted coordinates.
pub fn lies_in_component<I: Scalar>(k: &ZeroChain, a: &[i64], rewritten: &VersalMap<I>) -> bool {
    rewritten.values.iter().all(|(param, v)| {
        v.is_zero()
            || match *param {
                Param::S { i, l } => l <= a[i - 2] - k.k(i),
                Param::T { i } => k.alpha(i) == 1,
            }
    })
}

/// Closed-form membership of the image of the deformation in `S_[k]`.
pub fn maps_to<I: Scalar>(def: &Deformation<I>, k: &ZeroChain) -> bool {
    let h = def.h();
    let room = def.model.a(h) - k.k(h);
    match def.kind() {
        Kind::D => def.p() * def.d() <= room,
        Kind::DBar => {
            let ah1 = k.alpha(h - 1);
            k.alpha(h) == 1 && ah1 <= def.d() && def.d() <= room + ah1
        }
    }
}

pub fn components_of<I: Scalar>(def: &Deformation<I>) -> Vec<ZeroChain> {
    enumerate_k(def.model.a_chain()).into_iter().filter(|k| maps_to(def, k)).collect()
}

/// The same filter decided through [`theta_rewrite`] and [`lies_in_component`].
pub fn components_via_theta<I: Scalar>(def: &Deformation<I>) -> Vec<ZeroChain> {
    let a = def.model.a_chain();
    let map = versal_map(def);
    enumerate_k(a).into_iter().filter(|k| lies_in_component(k, a, &theta_rewrite(k, a, &map))).collect()
}

/// Number of deformations of degree `p·w^h` mapping to `S_[k]`.
pub fn nu_count<I: Scalar>(model: &CqsModel<I>, k: &ZeroChain, h: usize, p: i64) -> Result<i64> {
    if h < 2 || h + 1 > model.e() || p < 1 || p >= model.a(h) {
        return Err(Error::Precondition(format!("(h, p) = ({h}, {p}) is not a T¹ degree")));
    }
    let room = model.a(h) - k.k(h);
    Ok(if p == 1 && k.alpha(h) == 1 && model.is_inner(h) { 2 * room + 1 } else { room / p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::enum_decompositions;

    fn defs() -> Vec<Deformation<i64>> {
        let m = CqsModel::from_i64(8, 3).unwrap();
        enum_decompositions(&m).unwrap().iter().map(|d| build_deformation(&m, d).unwrap()).collect()
    }

    fn find(label: &str) -> Deformation<i64> {
        defs().into_iter().find(|d| d.label() == label).unwrap()
    }

    #[test]
    fn ray_counts() {
        assert_eq!(find("pi^1_{3,2}").sigma_prime.rays().len(), 3);
        assert_eq!(find("pi^1_{3,1}").sigma_prime.rays().len(), 4);
    }

    #[test]
    fn relations_hold() {
        for d in defs() {
            let gr = generator_relations(&d).unwrap();
            assert!(equations_match_relations(&deformation_equations(&d), &gr), "{}", d.label());
        }
    }

    #[test]
    fn equations_of_8_3() {
        let eq: Vec<String> = deformation_equations(&find("pi^1_{3,2}")).iter().map(|e| e.to_string()).collect();
        assert_eq!(eq, ["x1 x3 = x2^2", "x2 x4 = x3 (x3^2 + λ)", "x3 x5 = x4^2"]);
        let eq: Vec<String> = deformation_equations(&find("pibar^1_3")).iter().map(|e| e.to_string()).collect();
        assert_eq!(eq, ["x1 (x3 + λ) = x2^2", "x2 x4 = x3^2 (x3 + λ)", "x3 x5 = x4^2"]);
    }

    #[test]
    fn versal_maps_of_8_3() {
        let v = versal_map(&find("pi^2_{3,1}"));
        assert_eq!(v.get(Param::S { i: 3, l: 1 }), Poly::monomial(2, 1));
        assert_eq!(v.get(Param::S { i: 3, l: 2 }), Poly::monomial(1, 2));
        let v = versal_map(&find("pibar^2_3"));
        assert_eq!(v.get(Param::T { i: 3 }), Poly::lambda());
        assert_eq!(v.get(Param::S { i: 3, l: 1 }), Poly::lambda());
        let v = versal_map(&find("pi^1_{2,1}"));
        assert_eq!(v.values.len(), 1);
        assert_eq!(v.get(Param::S { i: 2, l: 1 }), Poly::lambda());
    }

    #[test]
    fn components_of_8_3() {
        let chains = |label: &str| -> Vec<Vec<i64>> {
            components_of(&find(label)).iter().map(|k| k.chain().to_vec()).collect()
        };
        assert_eq!(chains("pi^2_{3,1}"), vec![vec![2, 1, 2]]);
        assert_eq!(chains("pi^1_{3,2}"), vec![vec![2, 1, 2]]);
        assert_eq!(chains("pi^1_{3,1}"), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(chains("pibar^2_3"), vec![vec![1, 2, 1]]);
        assert_eq!(chains("pi^1_{2,1}"), vec![vec![1, 2, 1]]);
        for d in defs() {
            assert_eq!(components_of(&d), components_via_theta(&d), "{}", d.label());
        }
    }

    #[test]
    fn theta_on_dbar() {
        let d = find("pibar^2_3");
        let k = ZeroChain::new(vec![2, 1, 2]).unwrap();
        let r = theta_rewrite(&k, &[2, 3, 2], &versal_map(&d));
        // α_2 = 1 leaves the s-coordinates alone; t_3 ≠ 0 with α_3 = 2 fails
        assert_eq!(r.get(Param::S { i: 3, l: 1 }), Poly::lambda());
        assert!(!lies_in_component(&k, &[2, 3, 2], &r));
    }

    #[test]
    fn nu_of_8_3() {
        let m = CqsModel::from_i64(8, 3).unwrap();
        let artin = ZeroChain::new(vec![1, 2, 1]).unwrap();
        let other = ZeroChain::new(vec![2, 1, 2]).unwrap();
        assert_eq!(nu_count(&m, &artin, 3, 1).unwrap(), 3);
        assert_eq!(nu_count(&m, &other, 3, 1).unwrap(), 2);
        assert_eq!(nu_count(&m, &other, 2, 1).unwrap(), 0);
    }
}
