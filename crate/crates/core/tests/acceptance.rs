//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeMap;
use std::panic;
use std::time::Instant;

use cqdef_core::chains::{enumerate_k, NormalForm, ZeroChain};
use cqdef_core::fibers::{general_fiber, is_smoothing, Location};
use cqdef_core::lattice::hilbert_basis_2d;
use cqdef_core::minkowski::{lattice_point_count, segment, segment_length};
use cqdef_core::resolutions::{
    assemble_fan3, canonical_model, canonical_model_via_hull, fan_decomposition, same_fan, simultaneous_resolution,
};
use cqdef_core::totalspace::{
    components_of, components_via_theta, deformation_equations, generator_relations, maps_to, nu_count,
    toric_equation,
};
use cqdef_core::{all_deformations, valid_models, Kind, Model};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn model(n: i64, q: i64) -> Model {
    Model::from_i64(n, q).unwrap()
}

fn chains_of(ks: &[ZeroChain]) -> Vec<Vec<i64>> {
    ks.iter().map(|k| k.chain().to_vec()).collect()
}

fn golden_8_3() -> Outcome {
    let m = model(8, 3);
    ensure!(m.e() == 5 && m.a_chain() == [2, 3, 2], "e = {}, a = {:?}", m.e(), m.a_chain());
    let b: Vec<String> = m.quadrant_generators().iter().map(|u| u.to_string()).collect();
    ensure!(b == ["[0,8]", "[1,5]", "[2,2]", "[5,1]", "[8,0]"], "dual basis {b:?}");

    let ks = enumerate_k(m.a_chain());
    ensure!(chains_of(&ks) == vec![vec![1, 2, 1], vec![2, 1, 2]], "K = {:?}", chains_of(&ks));
    let alphas: Vec<&[i64]> = ks.iter().map(|k| &k.alphas()[1..4]).collect();
    ensure!(alphas == [[1, 1, 1], [1, 2, 1]], "α rows {alphas:?}");

    let defs = all_deformations(&m).unwrap();
    ensure!(defs.len() == 7, "{} deformations", defs.len());
    let mut degrees: BTreeMap<String, usize> = BTreeMap::new();
    for d in &defs {
        *degrees.entry(d.decomp.degree(&m).to_string()).or_default() += 1;
    }
    let want: BTreeMap<String, usize> =
        [("[1,5]", 1), ("[2,2]", 4), ("[4,4]", 1), ("[5,1]", 1)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    ensure!(degrees == want, "degrees {degrees:?}");

    let artin = vec![1, 2, 1];
    let other = vec![2, 1, 2];
    for d in &defs {
        let got = chains_of(&components_of(d));
        let want = match d.label().as_str() {
            "pi^2_{3,1}" | "pi^1_{3,2}" => vec![other.clone()],
            "pi^1_{3,1}" => vec![artin.clone(), other.clone()],
            _ => vec![artin.clone()],
        };
        ensure!(got == want, "{} maps to {got:?}", d.label());
    }

    let sing = |label: &str| -> Vec<(Location, NormalForm, i64)> {
        let d = defs.iter().find(|d| d.label() == label).unwrap();
        general_fiber(d)
            .unwrap()
            .singularities()
            .iter()
            .map(|p| (p.location, p.normal_form.clone(), p.multiplicity))
            .collect()
    };
    let origin = |c: &[i64]| (Location::Origin, NormalForm::Singular(c.to_vec()), 1);
    let off = |c: &[i64], mult| (Location::OffOrigin, NormalForm::Singular(c.to_vec()), mult);
    let fibers = [
        ("pi^1_{2,1}", vec![origin(&[2, 2])]),
        ("pi^1_{3,1}", vec![origin(&[2, 2, 2])]),
        ("pi^2_{3,1}", vec![off(&[2], 1)]),
        ("pi^1_{3,2}", vec![]),
        ("pibar^1_3", vec![origin(&[2, 2])]),
        ("pibar^2_3", vec![off(&[2, 2], 1)]),
        ("pi^1_{4,1}", vec![origin(&[2, 2])]),
    ];
    for (label, want) in fibers {
        let got = sing(label);
        ensure!(got == want, "fiber of {label}: {got:?}");
    }

    let mut non_canonical = Vec::new();
    let mut panels = 0;
    for d in &defs {
        for k in components_of(d) {
            panels += 1;
            let fan = simultaneous_resolution(d, &k).unwrap();
            if !fan.all_canonical() {
                non_canonical.push(format!("{}[{k}]", d.label()));
            }
        }
    }
    ensure!(panels == 8, "{panels} simultaneous resolutions");
    ensure!(non_canonical == ["pi^1_{3,1}[(2,1,2)]"], "non-canonical fans {non_canonical:?}");
    let picked: Vec<String> =
        defs.iter().map(|d| format!("{}->{}", d.label(), canonical_model(d).unwrap().0)).collect();
    ensure!(picked.contains(&"pi^1_{3,1}->(1,2,1)".to_string()), "{picked:?}");
    ensure!(picked.contains(&"pi^1_{3,2}->(2,1,2)".to_string()), "{picked:?}");
    Ok("7 deformations, 2 components, 8 fans, 1 non-canonical".into())
}

fn segment_suite() -> Outcome {
    let mut checked = 0;
    for (n, q) in valid_models(3..=60) {
        let m = model(n, q);
        let ks = enumerate_k(m.a_chain());
        for h in m.interior() {
            let seg = segment(&m, h).unwrap();
            let len = segment_length(&m, h).unwrap();
            ensure!(seg.length() == len, "({n},{q}) h={h}: geometric length {} vs formula {len}", seg.length());
            let max_room = ks.iter().map(|k| m.a(h) - k.k(h)).max().unwrap();
            ensure!(len.floor().to_integer() == max_room, "({n},{q}) h={h}: floor {len} vs max {max_room}");
            if m.is_inner(h) {
                let c = lattice_point_count(&m, h).unwrap();
                ensure!(c == m.a(h) - 1, "({n},{q}) h={h}: {c} lattice points, a_h = {}", m.a(h));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} segments"))
}

fn components_vs_theta() -> Outcome {
    let mut pairs = 0;
    for (n, q) in valid_models(3..=40) {
        let m = model(n, q);
        for d in all_deformations(&m).unwrap() {
            let closed = components_of(&d);
            let symbolic = components_via_theta(&d);
            ensure!(closed == symbolic, "({n},{q}) {}: {closed:?} vs {symbolic:?}", d.label());
            pairs += enumerate_k(m.a_chain()).len();
        }
    }
    Ok(format!("{pairs} (deformation, k) pairs"))
}

fn nu_counts() -> Outcome {
    let mut checked = 0;
    for (n, q) in valid_models(3..=40) {
        let m = model(n, q);
        let defs = all_deformations(&m).unwrap();
        for k in enumerate_k(m.a_chain()) {
            for h in m.interior() {
                for p in 1..m.a(h) {
                    let direct = defs.iter().filter(|d| d.h() == h && d.p() == p && maps_to(d, &k)).count() as i64;
                    let nu = nu_count(&m, &k, h, p).unwrap();
                    ensure!(nu == direct, "({n},{q}) k={k} h={h} p={p}: ν = {nu}, direct {direct}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (k, h, p) triples"))
}

fn canonical_equivalence() -> Outcome {
    let mut checked = 0;
    for (n, q) in valid_models(3..=30) {
        let m = model(n, q);
        for d in all_deformations(&m).unwrap() {
            let (_, fan) = canonical_model(&d).map_err(|e| format!("({n},{q}) {e}"))?;
            let hull = canonical_model_via_hull(&d.sigma_prime).unwrap();
            let merged = fan.coarsened().unwrap();
            ensure!(same_fan(&merged, &hull), "({n},{q}) {}: predicate and hull fans differ", d.label());
            checked += 1;
        }
    }
    Ok(format!("{checked} deformations"))
}

fn oracles() -> Outcome {
    let mut k_models = 0;
    let mut hb = 0;
    for (n, q) in valid_models(3..=60) {
        let m = model(n, q);
        let prod: i64 = m.a_chain().iter().product();
        if prod <= 1_000_000 {
            let fast = chains_of(&enumerate_k(m.a_chain()));
            let slow = common::k_brute(m.a_chain());
            ensure!(fast == slow, "({n},{q}): K {fast:?} vs brute {slow:?}");
            k_models += 1;
        }
        for cone in [m.sigma().clone(), m.sigma().dual()] {
            let fast = hilbert_basis_2d(&cone);
            ensure!(fast == common::hilbert_basis_2d_brute(&cone), "({n},{q}): Hilbert basis of {cone:?}");
            hb += 1;
        }
    }
    let mut semigroups = 0;
    for (n, q) in valid_models(3..=15) {
        let m = model(n, q);
        for d in all_deformations(&m).unwrap() {
            let gr = generator_relations(&d).unwrap();
            let ours: std::collections::BTreeSet<_> = gr.all().into_iter().collect();
            let brute = common::dual_hilbert_basis_brute(&d.sigma_prime);
            ensure!(ours == brute, "({n},{q}) {}: {ours:?} vs {brute:?}", d.label());
            semigroups += 1;
        }
    }
    Ok(format!("{k_models} K checks, {hb} plane cones, {semigroups} dual semigroups"))
}

fn structural() -> Outcome {
    let mut fans = 0;
    for (n, q) in valid_models(3..=30) {
        let m = model(n, q);
        for d in all_deformations(&m).unwrap() {
            for (i, eq) in deformation_equations(&d).iter().enumerate() {
                let i = i + 2;
                ensure!(eq.at_lambda_zero() == toric_equation(i, m.a(i)).at_lambda_zero(), "({n},{q}) {}: {eq}", d.label());
            }
            for k in components_of(&d) {
                let fd = fan_decomposition(&m, &k, d.kind(), d.h(), d.p(), d.d()).unwrap();
                ensure!(fd.induced() == (d.q0.clone(), d.q1.clone()), "({n},{q}) {} [{k}]: induced", d.label());
                let fan = assemble_fan3(&fd).unwrap();
                ensure!(fan.all_qgorenstein(), "({n},{q}) {} [{k}]: not Q-Gorenstein", d.label());
                ensure!(fan.support.same_support(&d.sigma_prime), "({n},{q}) {} [{k}]: support", d.label());
                fans += 1;
            }
        }
    }
    Ok(format!("{fans} fans"))
}

fn smoothing() -> Outcome {
    let mut t_models = 0;
    for (n, q) in valid_models(3..=60) {
        let m = model(n, q);
        let defs = all_deformations(&m).unwrap();
        let mut three_ray = false;
        for d in &defs {
            let s = is_smoothing(d).map_err(|e| format!("({n},{q}) {e}"))?;
            if s && d.kind() == Kind::D && d.sigma_prime.rays().len() == 3 {
                three_ray = true;
            }
        }
        let t = m.is_t_singularity();
        ensure!(t == common::is_t_brute(n, q), "({n},{q}): T-test disagrees with search");
        if t {
            ensure!(three_ray, "({n},{q}): T-singularity without a three-ray smoothing");
            t_models += 1;
        }
    }
    Ok(format!("{t_models} T-singularities"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden Y(8,3) suite", golden_8_3),
        ("segment lengths and lattice points, n <= 60", segment_suite),
        ("component map vs theta rewrite, n <= 40", components_vs_theta),
        ("nu counts vs direct count, n <= 40", nu_counts),
        ("canonical model predicate vs hull, n <= 30", canonical_equivalence),
        ("brute-force oracles", oracles),
        ("structural fan checks", structural),
        ("smoothing consistency, n <= 60", smoothing),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
