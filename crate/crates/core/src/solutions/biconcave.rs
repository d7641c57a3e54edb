//! The biconcave solution `sin psi = -c0 rho ln(rho / rho_B)` of the
//! tension-free, pressure-free shape equation.
//!
//! Traced from the axis, the contour rises to a rim, is flat at `rho_B` and
//! falls to a vertical tangent (`psi = -pi/2`) at the equator `rho_eq`, where
//! `c0 rho_eq ln(rho_eq / rho_B) = 1`. Mirroring this quarter across the
//! equatorial plane gives the closed vesicle.
//!
//! On `(0, rho_B)` the maximum of `sin psi` is `c0 rho_B / e`, reached at
//! `rho_B / e`. The quarter therefore connects the axis to the equator only
//! when `c0 rho_B < e`; at equality the tangent turns vertical at `rho_B / e`
//! asymptotically and `z` diverges logarithmically there.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    trace_graph_profile, AxisymSurface, GraphStop, Orientation, ProfileSample, Topology,
};

/// Parameters of the biconcave contour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiconcaveSpec {
    /// Spontaneous curvature, `c0 > 0`.
    pub c0: f64,
    /// Radius of the flat point `psi = 0` away from the axis.
    pub rho_b: f64,
    /// Height of the contour on the axis.
    #[serde(default)]
    pub z0: f64,
}

/// Interval of `rho` around `rho_B` on which `|sin psi| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityDomain {
    /// Zero when the domain reaches the axis.
    pub inner: f64,
    pub outer: f64,
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

impl BiconcaveSpec {
    pub fn new(c0: f64, rho_b: f64) -> Self {
        BiconcaveSpec { c0, rho_b, z0: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c0 > 0.0 && self.c0.is_finite()) {
            return Err(Error::domain(format!("c0 = {} must be positive", self.c0)));
        }
        if !(self.rho_b > 0.0 && self.rho_b.is_finite()) {
            return Err(Error::domain(format!(
                "rho_B = {} must be positive",
                self.rho_b
            )));
        }
        if !self.z0.is_finite() {
            return Err(Error::domain("z0 must be finite"));
        }
        Ok(())
    }

    /// `sin psi` as a function of `rho`.
    pub fn sin_psi(&self, rho: f64) -> f64 {
        if rho <= 0.0 {
            0.0
        } else {
            -self.c0 * rho * (rho / self.rho_b).ln()
        }
    }

    /// `d sin(psi) / d rho`.
    pub fn dsin_psi(&self, rho: f64) -> f64 {
        -self.c0 * ((rho / self.rho_b).ln() + 1.0)
    }

    pub fn validity_domain(&self) -> Result<ValidityDomain> {
        self.validate()?;
        let (c0, rb) = (self.c0, self.rho_b);
        let outer = bisect(
            |r| self.sin_psi(r) + 1.0,
            rb,
            rb * (1.0 / (c0 * rb)).exp().max(E),
        );
        let inner = if c0 * rb <= E {
            0.0
        } else {
            bisect(|r| self.sin_psi(r) - 1.0, rb / E, rb)
        };
        Ok(ValidityDomain { inner, outer })
    }

    fn require_closable(&self) -> Result<()> {
        if self.c0 * self.rho_b >= E {
            return Err(Error::domain(format!(
                "c0 rho_B = {} >= e: the contour turns vertical before rho_B and cannot be closed",
                self.c0 * self.rho_b
            )));
        }
        Ok(())
    }

    /// Quarter contour from the axis to the equator.
    fn quarter(&self, h: f64) -> Result<Vec<ProfileSample>> {
        self.require_closable()?;
        let dom = self.validity_domain()?;
        let g = |r: f64| self.sin_psi(r);
        let dg = |r: f64| self.dsin_psi(r);
        let mut q = trace_graph_profile(
            &g,
            &dg,
            GraphStop::VerticalTangent {
                max_length: 20.0 * dom.outer,
            },
            h,
        )?;
        if q.last().map_or(true, |p| p.psi > 0.0) {
            return Err(Error::numerical(
                "biconcave contour did not reach the equator",
            ));
        }
        for p in &mut q {
            p.z += self.z0;
        }
        Ok(q)
    }
}

/// Closed biconcave vesicle: the quarter contour and its mirror image in the
/// equatorial plane, traced counterclockwise from the lower pole.
pub fn make_biconcave(spec: &BiconcaveSpec, h: f64) -> Result<AxisymSurface> {
    let q = spec.quarter(h)?;
    let n = q.len() - 1;
    let step = q[n].s / n as f64;
    let z_eq = q[n].z;
    let mut samples = Vec::with_capacity(2 * n + 1);
    for p in &q {
        samples.push(ProfileSample {
            s: p.s,
            rho: p.rho,
            z: 2.0 * z_eq - p.z,
            psi: -p.psi,
        });
    }
    for j in 1..=n {
        let p = &q[n - j];
        samples.push(ProfileSample {
            s: (n + j) as f64 * step,
            rho: p.rho,
            z: p.z,
            psi: p.psi + PI,
        });
    }
    for (i, p) in samples.iter_mut().enumerate().take(n + 1) {
        p.s = i as f64 * step;
    }
    Ok(
        AxisymSurface::from_samples(samples, Topology::Closed, Orientation::Standard)?
            .with_label("biconcave")
            .with_meta("c0", spec.c0)
            .with_meta("rho_B", spec.rho_b),
    )
}

/// The quarter contour as a disk, from the axis to `rho_end` (or to the
/// equator when `None`), with the normal pointing out of the vesicle.
pub fn make_biconcave_disk(
    spec: &BiconcaveSpec,
    rho_end: Option<f64>,
    h: f64,
) -> Result<AxisymSurface> {
    let samples = match rho_end {
        None => spec.quarter(h)?,
        Some(r) => {
            let dom = spec.validity_domain()?;
            if dom.inner > 0.0 {
                return Err(Error::domain(format!(
                    "the validity domain [{}, {}] does not reach the axis",
                    dom.inner, dom.outer
                )));
            }
            if !(r > 0.0 && r <= dom.outer) {
                return Err(Error::domain(format!(
                    "requested radius {r} lies outside the validity domain (0, {}]",
                    dom.outer
                )));
            }
            let g = |x: f64| spec.sin_psi(x);
            let dg = |x: f64| spec.dsin_psi(x);
            let mut q = trace_graph_profile(&g, &dg, GraphStop::Radius(r), h)?;
            for p in &mut q {
                p.z += spec.z0;
            }
            q
        }
    };
    Ok(
        AxisymSurface::from_samples(samples, Topology::Disk, Orientation::Reversed)?
            .with_label("biconcave-quarter")
            .with_meta("c0", spec.c0)
            .with_meta("rho_B", spec.rho_b),
    )
}
