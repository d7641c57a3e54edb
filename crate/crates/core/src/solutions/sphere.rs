use serde::Serialize;

use super::{make_cylinder, make_sphere};
use crate::energetics::{graphite_residual, helfrich_residual, MaterialParams};
use crate::error::{Error, Result};

/// The sphere condition `p R^2 + 2 lambda R - kc c0 (2 - c0 R) = 0` as the
/// quadratic `a R^2 + b R + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereCondition {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SphereCondition {
    pub fn from_params(params: &MaterialParams) -> Self {
        SphereCondition {
            a: params.p,
            b: 2.0 * params.lambda + params.kc * params.c0 * params.c0,
            c: -2.0 * params.kc * params.c0,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.a * r + self.b) * r + self.c
    }

    /// Positive real roots in increasing order.
    pub fn positive_roots(&self) -> Result<Vec<f64>> {
        let (a, b, c) = (self.a, self.b, self.c);
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(Error::domain(
                "sphere condition vanishes identically: every radius is a solution",
            ));
        }
        let mut roots = Vec::new();
        if a == 0.0 {
            if b != 0.0 {
                roots.push(-c / b);
            }
        } else {
            let disc = b * b - 4.0 * a * c;
            if disc >= 0.0 {
                let q = -0.5 * (b + b.signum() * disc.sqrt());
                if q != 0.0 {
                    roots.push(q / a);
                    roots.push(c / q);
                } else {
                    roots.push(0.0);
                }
            }
        }
        roots.retain(|r| *r > 0.0 && r.is_finite());
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * y.abs());
        Ok(roots)
    }
}

/// Radii of spherical vesicles solving the shape equation for `params`.
///
/// Each root is substituted back into the shape-equation residual on a
/// sampled sphere; a root that fails the check is reported as a numerical
/// error.
pub fn sphere_radii(params: &MaterialParams) -> Result<Vec<f64>> {
    params.validate()?;
    let roots = SphereCondition::from_params(params).positive_roots()?;
    for &r in &roots {
        let residual = helfrich_residual(&make_sphere(r, r / 400.0)?, params)?;
        let scale = params.kc.abs() / r.powi(3)
            + params.p.abs()
            + params.lambda.abs() / r
            + params.kc.abs() * params.c0 * params.c0 / r;
        if residual.linf() > 1e-6 * scale {
            return Err(Error::numerical(format!(
                "sphere radius {r} fails residual verification ({:e})",
                residual.linf()
            )));
        }
    }
    Ok(roots)
}

/// Radius of a single-walled nanotube, `R = sqrt(kc / (2 lambda))`, checked
/// against the graphite equation on a sampled cylinder.
pub fn swnt_radius(kc: f64, lambda: f64) -> Result<f64> {
    if !(kc > 0.0 && lambda > 0.0 && kc.is_finite() && lambda.is_finite()) {
        return Err(Error::domain("nanotube radius needs kc > 0 and lambda > 0"));
    }
    let r = (kc / (2.0 * lambda)).sqrt();
    let params = MaterialParams {
        kc,
        lambda,
        ..Default::default()
    };
    let res = graphite_residual(&make_cylinder(r, 4.0 * r, r / 20.0)?, &params)?;
    if res.linf() > 1e-10 / r.powi(3) {
        return Err(Error::numerical(format!(
            "nanotube radius {r} fails the graphite equation ({:e})",
            res.linf()
        )));
    }
    Ok(r)
}
