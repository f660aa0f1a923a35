//! SVG figures: the segments `Q_σ(w^h)`, the two-term decompositions and
//! the `y + z = 1` slices of the simultaneous-resolution fans.
//!
//! Coordinates are computed as exact rationals and rounded once, at
//! emission, to three decimals.

use std::fmt::Write as _;

use cqdef_core::geom3::Vec3;
use cqdef_core::minkowski::{segment, Interval};
use cqdef_core::resolutions::simultaneous_resolution;
use cqdef_core::scalar::fmt_rat;
use cqdef_core::totalspace::components_of;
use cqdef_core::{all_deformations, Model, Rat, Result};

use crate::report::fan_label;

const UNIT: i64 = 120;

/// Render an exact rational as a decimal with at most three places.
fn num(r: &Rat) -> String {
    let scaled = (r * Rat::from_integer(1000)).round().to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let (int, frac) = (scaled.abs() / 1000, scaled.abs() % 1000);
    if frac == 0 {
        format!("{sign}{int}")
    } else {
        let f = format!("{frac:03}");
        format!("{sign}{int}.{}", f.trim_end_matches('0'))
    }
}

fn rat(x: i64) -> Rat {
    Rat::from_integer(x)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Svg {
    body: String,
    width: Rat,
    height: Rat,
}

impl Svg {
    fn new() -> Self {
        Svg { body: String::new(), width: rat(0), height: rat(0) }
    }

    fn grow(&mut self, x: &Rat, y: &Rat) {
        if *x > self.width {
            self.width = *x;
        }
        if *y > self.height {
            self.height = *y;
        }
    }

    fn line(&mut self, a: (Rat, Rat), b: (Rat, Rat), class: &str) {
        self.grow(&a.0, &a.1);
        self.grow(&b.0, &b.1);
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(&a.0),
            num(&a.1),
            num(&b.0),
            num(&b.1)
        );
    }

    fn dot(&mut self, c: (Rat, Rat)) {
        self.grow(&c.0, &c.1);
        let _ = writeln!(self.body, r#"  <circle class="pt" cx="{}" cy="{}" r="3.5"/>"#, num(&c.0), num(&c.1));
    }

    fn hollow(&mut self, c: (Rat, Rat)) {
        self.grow(&c.0, &c.1);
        let _ = writeln!(self.body, r#"  <circle class="open" cx="{}" cy="{}" r="3.5"/>"#, num(&c.0), num(&c.1));
    }

    fn text(&mut self, c: (Rat, Rat), s: &str, anchor: &str) {
        self.grow(&(c.0 + rat(40)), &c.1);
        let _ = writeln!(
            self.body,
            r#"  <text x="{}" y="{}" text-anchor="{anchor}">{}</text>"#,
            num(&c.0),
            num(&c.1),
            escape(s)
        );
    }

    fn polygon(&mut self, pts: &[(Rat, Rat)], class: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| {
                self.grow(x, y);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(self.body, r#"  <polygon class="{class}" points="{}"/>"#, coords.join(" "));
    }

    fn finish(self) -> String {
        let w = num(&(self.width + rat(40)));
        let h = num(&(self.height + rat(30)));
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        out.push_str(
            "  <style>\n    line { stroke: black; stroke-width: 1.5; }\n    line.edge { stroke-width: 1; }\n    \
             .pt { fill: black; }\n    .open { fill: white; stroke: black; stroke-width: 1.2; }\n    polygon.cone { fill: #dde6f2; stroke: black; stroke-width: 1; }\n    \
             polygon.bad { fill: #f2c9c4; stroke: black; stroke-width: 1; }\n    \
             text { font-family: serif; font-size: 12px; }\n  </style>\n",
        );
        let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// `(a,b)` or `1/m(a',b')` for a point with rational coordinates.
fn quadrant_label(x: &Rat, y: &Rat) -> String {
    let m = num_integer::lcm(*x.denom(), *y.denom());
    if m == 1 {
        format!("({},{})", x.numer(), y.numer())
    } else {
        let (a, b) = ((x * rat(m)).to_integer(), (y * rat(m)).to_integer());
        format!("1/{m}({a},{b})")
    }
}

/// Draw an interval on a horizontal axis: the line, its lattice points and
/// endpoint labels.
fn draw_interval(svg: &mut Svg, iv: &Interval<i64>, x0: Rat, origin: &Rat, y: Rat) {
    let px = |s: &Rat| x0 + (s - origin) * rat(UNIT);
    if iv.is_point() {
        if iv.is_lattice_point() {
            svg.dot((px(&iv.lo), y));
        } else {
            svg.hollow((px(&iv.lo), y));
        }
    } else {
        svg.line((px(&iv.lo), y), (px(&iv.hi), y), "seg");
        let mut t = iv.lo.ceil();
        while t <= iv.hi {
            svg.dot((px(&t), y));
            t += rat(1);
        }
    }
    svg.text((px(&iv.lo), y + rat(18)), &fmt_rat(&iv.lo), "middle");
    if !iv.is_point() {
        svg.text((px(&iv.hi), y + rat(18)), &fmt_rat(&iv.hi), "middle");
    }
}

/// The segments `Q_σ(w^h)` for the interior indices, lattice points
/// labelled in the quadrant description.
pub fn segments(model: &Model) -> Result<String> {
    let mut svg = Svg::new();
    let segs = model.interior().map(|h| segment(model, h)).collect::<Result<Vec<_>>>()?;
    let left = segs.iter().map(|s| s.beta).min().unwrap_or(rat(0));
    let x0 = rat(130);
    for (row, seg) in segs.iter().enumerate() {
        let y = rat(50 + 80 * row as i64);
        let u = model.to_quadrant(model.w(seg.h));
        svg.text((rat(10), y + rat(4)), &format!("Q([{},{}])", u.u1, u.u2), "start");
        draw_interval(&mut svg, &seg.interval(), x0, &left, y);
        let mut t = seg.beta.ceil();
        while t <= seg.gamma {
            let p = seg.point_at(&t);
            let v = cqdef_core::lattice::Vec2::new(p.x.to_integer(), p.y.to_integer());
            let (bx, by) = model.n_to_quadrant(&v);
            svg.text((x0 + (t - left) * rat(UNIT), y - rat(12)), &quadrant_label(&bx, &by), "middle");
            t += rat(1);
        }
    }
    Ok(svg.finish())
}

/// One row per admissible two-term decomposition: label, first summand,
/// `+`, second summand.
pub fn decompositions(model: &Model) -> Result<String> {
    let defs = all_deformations(model)?;
    let mut svg = Svg::new();
    let lo0 = defs.iter().map(|d| d.decomp.summand0.lo).min().unwrap_or(rat(0));
    let hi0 = defs.iter().map(|d| d.decomp.summand0.hi).max().unwrap_or(rat(0));
    let lo1 = defs.iter().map(|d| d.decomp.summand1.lo).min().unwrap_or(rat(0));
    let x0 = rat(110);
    let plus = x0 + (hi0 - lo0) * rat(UNIT) + rat(40);
    let x1 = plus + rat(40);
    for (row, d) in defs.iter().enumerate() {
        let y = rat(40 + 60 * row as i64);
        svg.text((rat(10), y + rat(4)), &d.decomp.label(), "start");
        draw_interval(&mut svg, &d.decomp.summand0, x0, &lo0, y);
        svg.text((plus, y + rat(4)), "+", "middle");
        draw_interval(&mut svg, &d.decomp.summand1, x1, &lo1, y);
    }
    Ok(svg.finish())
}

/// Slices `y + z = 1` of every simultaneous-resolution fan, one panel per
/// pair (deformation, component). Cones with non-canonical singularities
/// are shaded differently.
pub fn slices(model: &Model) -> Result<String> {
    let defs = all_deformations(model)?;
    let mut panels = Vec::new();
    for def in &defs {
        for k in components_of(def) {
            panels.push((fan_label(def, &k), rat(def.decomp.segment.delta), simultaneous_resolution(def, &k)?));
        }
    }
    let mut svg = Svg::new();
    // the total space uses lattice coordinates shifted by `delta` on the
    // `y = 1` side; undo the shear so the summands appear as drawn in the
    // decomposition figure
    let slice_point = |r: &Vec3<i64>, delta: &Rat| {
        let s = rat(r.y + r.z);
        ((rat(r.x) - delta * rat(r.y)) / s, rat(r.y) / s, rat(r.z) / s)
    };
    let width = panels
        .iter()
        .flat_map(|(_, delta, f)| f.support.rays().iter().map(|r| slice_point(r, delta).0).collect::<Vec<_>>())
        .fold((rat(0), rat(0)), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let panel_w = (width.1 - width.0) * rat(UNIT) + rat(120);
    let panel_h = rat(UNIT + 90);
    for (idx, (label, delta, fan)) in panels.iter().enumerate() {
        let ox = rat(40) + panel_w * rat(idx as i64 % 2);
        let oy = rat(45) + panel_h * rat(idx as i64 / 2);
        // slice point (x, y) of a ray, with y pointing up
        let place = |x: &Rat, y: &Rat| (ox + (x - width.0) * rat(UNIT), oy + rat(UNIT) - y * rat(UNIT));
        for c in &fan.cones {
            let pts: Vec<(Rat, Rat)> = c
                .cone
                .rays()
                .iter()
                .map(|r| {
                    let (x, y, _) = slice_point(r, delta);
                    place(&x, &y)
                })
                .collect();
            svg.polygon(&pts, if c.canonical { "cone" } else { "bad" });
        }
        let mut rays: Vec<_> = fan.cones.iter().flat_map(|c| c.cone.rays().to_vec()).collect();
        rays.sort_by_key(|r| (r.x, r.y, r.z));
        rays.dedup();
        let mut points: Vec<_> = rays.iter().map(|r| (slice_point(r, delta), r.y + r.z == 1)).collect();
        points.sort_by_key(|((x, y, _), _)| (*y, *x));
        // labels closer than this on the same edge are staggered
        let crowded = rat(50);
        let mut last: Option<(Rat, Rat, bool)> = None;
        for ((x, y, z), height_one) in points {
            let at = place(&x, &y);
            if height_one {
                svg.dot(at);
            }
            let stagger = matches!(last, Some((lx, ly, up)) if ly == y && at.0 - lx < crowded && !up);
            last = Some((at.0, y, stagger));
            let off = match (y == rat(0), stagger) {
                (true, false) => rat(16),
                (true, true) => rat(30),
                (false, false) => rat(-8),
                (false, true) => rat(-22),
            };
            let name = format!("({},{},{})", fmt_rat(&x), fmt_rat(&y), fmt_rat(&z));
            svg.text((at.0, at.1 + off), &name, "middle");
        }
        svg.text((ox + (panel_w - rat(120)) / rat(2), oy + rat(UNIT) + rat(40)), label, "middle");
    }
    Ok(svg.finish())
}

/// Figure targets accepted by the `figure` command.
pub const TARGETS: [&str; 3] = ["segments", "decompositions", "slices"];

pub fn figure(model: &Model, target: &str) -> Result<String> {
    match target {
        "segments" => segments(model),
        "decompositions" => decompositions(model),
        "slices" => slices(model),
        other => Err(cqdef_core::Error::InvalidInput(format!(
            "unknown figure target {other:?}; expected one of {}",
            TARGETS.join(", ")
        ))),
    }
}
