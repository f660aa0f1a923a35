//! Singularities of the general fiber of a one-parameter toric deformation.

use crate::chains::{blow_down, fmt_chain, NormalForm};
use crate::minkowski::Kind;
use crate::scalar::Scalar;
use crate::totalspace::Deformation;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Origin,
    OffOrigin,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberPoint {
    pub location: Location,
    /// The chain before blowing down.
    pub raw: Vec<i64>,
    pub normal_form: NormalForm,
    pub multiplicity: i64,
}

/// The singular points of the general fiber, origin first. Smooth points
/// are not listed; [`GeneralFiber::points`] keeps them for auditing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralFiber {
    pub points: Vec<FiberPoint>,
}

impl GeneralFiber {
    pub fn singularities(&self) -> Vec<&FiberPoint> {
        self.points.iter().filter(|p| !p.normal_form.is_smooth()).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.singularities().is_empty()
    }

    pub fn origin(&self) -> &FiberPoint {
        &self.points[0]
    }
}

pub fn general_fiber<I: Scalar>(def: &Deformation<I>) -> Result<GeneralFiber> {
    let a = def.model.a_chain();
    let (h, p, d) = (def.h(), def.p(), def.d());
    let (origin, off, mult) = match def.kind() {
        Kind::D => {
            let mut c = a.to_vec();
            c[h - 2] -= d * p;
            (c, vec![d], p)
        }
        Kind::DBar => {
            let mut o = vec![a[h - 2] - d];
            o.extend_from_slice(&a[h - 1..]);
            let mut f = a[..h - 2].to_vec();
            f.push(d);
            (o, f, 1)
        }
    };
    let point = |location, raw: Vec<i64>, multiplicity| -> Result<FiberPoint> {
        let normal_form = blow_down(&raw);
        if normal_form == NormalForm::Invalid {
            return Err(Error::Internal(format!("{}: fiber chain {} is invalid", def.label(), fmt_chain(&raw))));
        }
        Ok(FiberPoint { location, raw, normal_form, multiplicity })
    };
    Ok(GeneralFiber { points: vec![point(Location::Origin, origin, 1)?, point(Location::OffOrigin, off, mult)?] })
}

/// Whether the general fiber is smooth. A smoothing must have `d = 1` and
/// `p = a_h - 1` (kind D) or `a_h = 2` and `d = 1` (kind D̄); a smoothing
/// violating this is reported as an internal error.
pub fn is_smoothing<I: Scalar>(def: &Deformation<I>) -> Result<bool> {
    if !general_fiber(def)?.is_smooth() {
        return Ok(false);
    }
    let ah = def.model.a(def.h());
    let ok = match def.kind() {
        Kind::D => def.d() == 1 && def.p() == ah - 1,
        Kind::DBar => ah == 2 && def.d() == 1,
    };
    if !ok {
        return Err(Error::Internal(format!("{} is a smoothing outside the expected parameters", def.label())));
    }
    Ok(true)
}
