//! The analysis report. Everything the CLI prints is rendered from this
//! structure; the text form is a projection of the JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cqdef_core::chains::{enumerate_k, NormalForm, ZeroChain};
use cqdef_core::fibers::{general_fiber, is_smoothing, Location};
use cqdef_core::resolutions::{canonical_model, p_resolution_fan, simultaneous_resolution};
use cqdef_core::scalar::fmt_rat;
use cqdef_core::totalspace::{
    components_of, deformation_equations, generator_relations, nu_count, versal_map, Equation, Factor,
};
use cqdef_core::{all_deformations, Deformation64, Error, Kind, Model, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub model: ModelRecord,
    pub k: Vec<ChainRecord>,
    pub p_resolutions: Vec<PResolutionRecord>,
    pub deformations: Vec<DeformationRecord>,
    pub simultaneous_resolutions: Vec<FanRecord>,
    pub canonical_models: Vec<CanonicalRecord>,
    pub nu: Vec<NuRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRecord {
    pub n: i64,
    pub q: i64,
    pub e: usize,
    pub a_chain: Vec<i64>,
    pub t_singularity: bool,
    pub dual_generators: Vec<GeneratorRecord>,
}

/// A dual generator in both descriptions: `lattice` in `Z²` with
/// `σ = cone((1,0), (-q,n))`, `quadrant` with `σ` the first quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub lattice: [i64; 2],
    pub quadrant: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub chain: Vec<i64>,
    pub alpha: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PResolutionRecord {
    pub k: Vec<i64>,
    pub vertices: Vec<[i64; 2]>,
    pub cones: Vec<TauRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauRecord {
    pub i: usize,
    pub right: [i64; 2],
    pub left: [i64; 2],
    pub height: i64,
    pub roof_length: i64,
    pub degenerate: bool,
    pub rdp: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationRecord {
    pub label: String,
    pub kind: String,
    pub h: usize,
    pub p: i64,
    pub d: i64,
    pub degree: [i64; 2],
    /// Endpoints as exact rationals `"p/q"`.
    pub summands: [[String; 2]; 2],
    pub sigma_prime_rays: Vec<[i64; 3]>,
    pub relations: Vec<String>,
    pub equations: Vec<EquationRecord>,
    pub versal: Vec<VersalRecord>,
    pub components: Vec<Vec<i64>>,
    pub fiber: FiberRecord,
    pub smoothing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub var: usize,
    pub exp: i64,
    /// `Some(p)` for the factor `(x^p + λ)`.
    pub shift_p: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationRecord {
    pub lhs: Vec<FactorRecord>,
    pub rhs: Vec<FactorRecord>,
}

/// A nonzero versal coordinate as `(power of λ, coefficient)` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VersalRecord {
    pub param: String,
    pub terms: Vec<(u32, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRecord {
    /// `None` when the origin of the general fiber is smooth.
    pub origin: Option<Vec<i64>>,
    pub off_origin: Vec<OffOriginRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffOriginRecord {
    pub chain: Vec<i64>,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanRecord {
    pub label: String,
    pub deformation: String,
    pub k: Vec<i64>,
    pub cones: Vec<Fan3ConeRecord>,
    pub canonical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan3ConeRecord {
    pub rays: Vec<[i64; 3]>,
    pub qgorenstein: bool,
    pub gorenstein: bool,
    pub canonical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalRecord {
    pub deformation: String,
    pub k: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuRecord {
    pub k: Vec<i64>,
    pub h: usize,
    pub p: i64,
    pub nu: i64,
}

fn chain_record(k: &ZeroChain) -> ChainRecord {
    ChainRecord { chain: k.chain().to_vec(), alpha: k.alphas().to_vec() }
}

fn factors(fs: &[Factor]) -> Vec<FactorRecord> {
    fs.iter().map(|f| FactorRecord { var: f.var, exp: f.exp, shift_p: f.shift_p }).collect()
}

fn equation_record(eq: &Equation) -> EquationRecord {
    EquationRecord { lhs: factors(&eq.lhs), rhs: factors(&eq.rhs) }
}

impl EquationRecord {
    fn to_equation(&self) -> Equation {
        let back = |fs: &[FactorRecord]| {
            fs.iter().map(|f| Factor { var: f.var, exp: f.exp, shift_p: f.shift_p }).collect()
        };
        Equation { lhs: back(&self.lhs), rhs: back(&self.rhs) }
    }
}

fn normal_chain(nf: &NormalForm) -> Result<Option<Vec<i64>>> {
    match nf {
        NormalForm::Smooth => Ok(None),
        NormalForm::Singular(c) => Ok(Some(c.clone())),
        NormalForm::Invalid => Err(Error::Internal("general fiber point with an invalid chain".into())),
    }
}

/// `S` for `π`, keeping indices.
pub fn fan_label(def: &Deformation64, k: &ZeroChain) -> String {
    let base = def.label();
    let base = base.strip_prefix("pi").unwrap_or(&base);
    format!("S{base}[{k}]")
}

fn deformation_record(model: &Model, def: &Deformation64) -> Result<DeformationRecord> {
    let degree = def.decomp.degree(model);
    let gr = generator_relations(def)?;
    let fiber = general_fiber(def)?;
    let origin = normal_chain(&fiber.origin().normal_form)?;
    let mut off_origin = Vec::new();
    for pt in fiber.points.iter().filter(|p| p.location == Location::OffOrigin) {
        if let Some(chain) = normal_chain(&pt.normal_form)? {
            off_origin.push(OffOriginRecord { chain, multiplicity: pt.multiplicity });
        }
    }
    let versal = versal_map(def)
        .values
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(param, v)| VersalRecord { param: param.to_string(), terms: v.terms().map(|(k, c)| (k, *c)).collect() })
        .collect();
    Ok(DeformationRecord {
        label: def.label(),
        kind: match def.kind() {
            Kind::D => "D".into(),
            Kind::DBar => "Dbar".into(),
        },
        h: def.h(),
        p: def.p(),
        d: def.d(),
        degree: [degree.u1, degree.u2],
        summands: [
            [fmt_rat(&def.decomp.summand0.lo), fmt_rat(&def.decomp.summand0.hi)],
            [fmt_rat(&def.decomp.summand1.lo), fmt_rat(&def.decomp.summand1.hi)],
        ],
        sigma_prime_rays: def.sigma_prime.rays().iter().map(|r| [r.x, r.y, r.z]).collect(),
        relations: gr.relations.iter().map(|r| r.to_string()).collect(),
        equations: deformation_equations(def).iter().map(equation_record).collect(),
        versal,
        components: components_of(def).iter().map(|k| k.chain().to_vec()).collect(),
        fiber: FiberRecord { origin, off_origin },
        smoothing: is_smoothing(def)?,
    })
}

/// Run the full analysis of `Y(n,q)`.
pub fn build_report(n: i64, q: i64) -> Result<Report> {
    let model = Model::from_i64(n, q)?;
    let ks = enumerate_k(model.a_chain());
    let defs = all_deformations(&model)?;

    let dual_generators = model
        .dual_generators()
        .iter()
        .map(|w| {
            let u = model.to_quadrant(w);
            GeneratorRecord { lattice: [w.x, w.y], quadrant: [u.u1, u.u2] }
        })
        .collect();

    let mut p_resolutions = Vec::new();
    for k in &ks {
        let fan = p_resolution_fan(&model, k)?;
        p_resolutions.push(PResolutionRecord {
            k: k.chain().to_vec(),
            vertices: fan.vertices.iter().map(|v| [v.x, v.y]).collect(),
            cones: fan
                .cones
                .iter()
                .map(|t| TauRecord {
                    i: t.i,
                    right: [t.right.x, t.right.y],
                    left: [t.left.x, t.left.y],
                    height: t.height,
                    roof_length: t.roof_length,
                    degenerate: t.is_degenerate(),
                    rdp: t.is_rdp(),
                })
                .collect(),
        });
    }

    let mut deformations = Vec::new();
    let mut simultaneous_resolutions = Vec::new();
    let mut canonical_models = Vec::new();
    for def in &defs {
        deformations.push(deformation_record(&model, def)?);
        for k in components_of(def) {
            let fan = simultaneous_resolution(def, &k)?;
            simultaneous_resolutions.push(FanRecord {
                label: fan_label(def, &k),
                deformation: def.label(),
                k: k.chain().to_vec(),
                cones: fan
                    .cones
                    .iter()
                    .map(|c| Fan3ConeRecord {
                        rays: c.cone.rays().iter().map(|r| [r.x, r.y, r.z]).collect(),
                        qgorenstein: c.qgorenstein,
                        gorenstein: c.gorenstein,
                        canonical: c.canonical,
                    })
                    .collect(),
                canonical: fan.all_canonical(),
            });
        }
        let (k, _) = canonical_model(def)?;
        canonical_models.push(CanonicalRecord { deformation: def.label(), k: k.chain().to_vec() });
    }

    let mut nu = Vec::new();
    for k in &ks {
        for h in model.interior() {
            for p in 1..model.a(h) {
                nu.push(NuRecord { k: k.chain().to_vec(), h, p, nu: nu_count(&model, k, h, p)? });
            }
        }
    }

    let report = Report {
        schema_version: SCHEMA_VERSION,
        model: ModelRecord {
            n,
            q,
            e: model.e(),
            a_chain: model.a_chain().to_vec(),
            t_singularity: model.is_t_singularity(),
            dual_generators,
        },
        k: ks.iter().map(chain_record).collect(),
        p_resolutions,
        deformations,
        simultaneous_resolutions,
        canonical_models,
        nu,
    };
    report.check()?;
    Ok(report)
}

impl Report {
    /// Cross-consistency: every chain referenced is in `K` and the `ν`
    /// counts agree with the catalogue.
    pub fn check(&self) -> Result<()> {
        let known: Vec<&Vec<i64>> = self.k.iter().map(|c| &c.chain).collect();
        let referenced = self
            .deformations
            .iter()
            .flat_map(|d| d.components.iter())
            .chain(self.simultaneous_resolutions.iter().map(|f| &f.k))
            .chain(self.canonical_models.iter().map(|c| &c.k))
            .chain(self.p_resolutions.iter().map(|p| &p.k));
        for k in referenced {
            if !known.contains(&k) {
                return Err(Error::Internal(format!("report references {k:?}, which is not in K")));
            }
        }
        let mut counted: BTreeMap<(&Vec<i64>, usize, i64), i64> = BTreeMap::new();
        for d in &self.deformations {
            for k in &d.components {
                *counted.entry((k, d.h, d.p)).or_default() += 1;
            }
        }
        for r in &self.nu {
            let c = counted.get(&(&r.k, r.h, r.p)).copied().unwrap_or(0);
            if c != r.nu {
                return Err(Error::Internal(format!(
                    "ν = {} for k = {:?}, h = {}, p = {} but the catalogue has {c}",
                    r.nu, r.k, r.h, r.p
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Human-readable rendering. `verbose` adds equations, versal maps,
    /// relations and fans.
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        let m = &self.model;
        let _ = writeln!(out, "Y({},{})  e = {}  a = {}", m.n, m.q, m.e, chain(&m.a_chain));
        let gens: Vec<String> = m.dual_generators.iter().map(|g| format!("[{},{}]", g.quadrant[0], g.quadrant[1])).collect();
        let _ = writeln!(out, "dual generators: {}", gens.join(" "));
        let _ = writeln!(out, "T-singularity: {}", yes_no(m.t_singularity));

        let _ = writeln!(out, "\nK ({} components):", self.k.len());
        for k in &self.k {
            let _ = writeln!(out, "  {}  alpha = {}", chain(&k.chain), chain(&k.alpha));
        }

        let _ = writeln!(out, "\ndeformations ({}):", self.deformations.len());
        for d in &self.deformations {
            let comps: Vec<String> = d.components.iter().map(|c| chain(c)).collect();
            let _ = writeln!(
                out,
                "  {:<12} degree [{},{}]  ({},{}) + ({},{})  -> {}  fiber: {}{}",
                d.label,
                d.degree[0],
                d.degree[1],
                d.summands[0][0],
                d.summands[0][1],
                d.summands[1][0],
                d.summands[1][1],
                comps.join(" "),
                fiber_text(&d.fiber),
                if d.smoothing { "  smoothing" } else { "" },
            );
            if verbose {
                let rays: Vec<String> = d.sigma_prime_rays.iter().map(|r| format!("({},{},{})", r[0], r[1], r[2])).collect();
                let _ = writeln!(out, "      sigma' = cone{}", rays.join(""));
                for r in &d.relations {
                    let _ = writeln!(out, "      {r}");
                }
                for eq in &d.equations {
                    let _ = writeln!(out, "      {}", eq.to_equation());
                }
                for v in &d.versal {
                    let _ = writeln!(out, "      {} = {}", v.param, poly_text(&v.terms));
                }
            }
        }

        let _ = writeln!(out, "\ncanonical models:");
        for c in &self.canonical_models {
            let _ = writeln!(out, "  {:<12} {}", c.deformation, chain(&c.k));
        }
        let bad: Vec<&str> =
            self.simultaneous_resolutions.iter().filter(|f| !f.canonical).map(|f| f.label.as_str()).collect();
        let _ = writeln!(
            out,
            "simultaneous resolutions: {} ({} not canonical{}{})",
            self.simultaneous_resolutions.len(),
            bad.len(),
            if bad.is_empty() { "" } else { ": " },
            bad.join(", ")
        );
        if verbose {
            for f in &self.simultaneous_resolutions {
                let _ = writeln!(out, "  {}", f.label);
                for c in &f.cones {
                    let rays: Vec<String> = c.rays.iter().map(|r| format!("({},{},{})", r[0], r[1], r[2])).collect();
                    let flags = if c.gorenstein {
                        "Gorenstein"
                    } else if c.canonical {
                        "canonical"
                    } else {
                        "not canonical"
                    };
                    let _ = writeln!(out, "      {}  {flags}", rays.join(" "));
                }
            }
            let _ = writeln!(out, "\nP-resolutions:");
            for p in &self.p_resolutions {
                let _ = writeln!(out, "  {}", chain(&p.k));
                for t in p.cones.iter().filter(|t| !t.degenerate) {
                    let _ = writeln!(
                        out,
                        "      tau_{}  ({},{}) ({},{})  height {}  roof {}{}",
                        t.i,
                        t.right[0],
                        t.right[1],
                        t.left[0],
                        t.left[1],
                        t.height,
                        t.roof_length,
                        if t.rdp { "  RDP" } else { "" }
                    );
                }
            }
        }
        out
    }
}

fn chain(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fiber_text(f: &FiberRecord) -> String {
    let mut parts = Vec::new();
    if let Some(c) = &f.origin {
        parts.push(format!("{} at 0", chain(c)));
    }
    for o in &f.off_origin {
        if o.multiplicity == 1 {
            parts.push(chain(&o.chain));
        } else {
            parts.push(format!("{} x{}", chain(&o.chain), o.multiplicity));
        }
    }
    if parts.is_empty() {
        "smooth".into()
    } else {
        parts.join(", ")
    }
}

fn poly_text(terms: &[(u32, i64)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .map(|&(k, c)| match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "λ".into(),
            (1, c) => format!("{c}λ"),
            (k, 1) => format!("λ^{k}"),
            (k, c) => format!("{c}λ^{k}"),
        })
        .collect();
    parts.join(" + ")
}
