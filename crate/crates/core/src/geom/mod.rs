//! Axisymmetric surfaces sampled along the meridian.
//!
//! A surface of revolution is described by its profile curve `(rho(s), z(s))`
//! in the half plane `rho >= 0`, parametrised by arclength `s`, together with
//! the tangent angle `psi` (`drho/ds = cos psi`, `dz/ds = sin psi`). Samples
//! are uniformly spaced in arclength.
//!
//! # Orientation and curvature sign
//!
//! With [`Orientation::Standard`] the unit normal is `(sin psi, -cos psi)` in
//! the `(rho, z)` plane, which is the outward normal when a closed meridian is
//! traversed counterclockwise (bottom pole to top pole). Principal curvatures
//! are taken with the sign that makes a sphere of radius `R` with outward
//! normal have `H = -1/R`, `K = 1/R^2`:
//!
//! ```text
//! kappa_1 = -o * dpsi/ds        (meridian)
//! kappa_2 = -o * sin(psi) / rho (parallel)
//! ```
//!
//! where `o = +1` for `Standard` and `-1` for `Reversed`.

mod contour;
mod curvature;
mod edge;
mod integrals;
mod io;
mod operators;
pub(crate) mod stencil;

pub use contour::{trace_graph_profile, GraphStop};
pub use curvature::{curvatures, CurvatureField};
pub use edge::{edge_frame, Edge, EdgeFrame};
pub use integrals::{area, gaussian_curvature_integral, integrate, volume};
pub use io::{read_csv, write_csv, CSV_HEADER};
pub(crate) use operators::tilde_laplacian_with;
pub use operators::{laplace_beltrami, tilde_laplacian};

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One point of the meridian profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    /// Arclength along the meridian.
    pub s: f64,
    /// Distance from the rotation axis.
    pub rho: f64,
    /// Height along the rotation axis.
    pub z: f64,
    /// Tangent angle of the contour, radians.
    pub psi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// Sphere-like: the profile starts and ends on the axis.
    Closed,
    /// Torus-like: the profile is a closed loop away from the axis; the last
    /// sample repeats the first.
    Tube,
    /// Two boundary circles.
    Band,
    /// One pole (first sample) and one boundary circle (last sample).
    Disk,
}

impl Topology {
    pub fn has_edges(self) -> bool {
        matches!(self, Topology::Band | Topology::Disk)
    }

    pub fn name(self) -> &'static str {
        match self {
            Topology::Closed => "closed",
            Topology::Tube => "tube",
            Topology::Band => "band",
            Topology::Disk => "disk",
        }
    }
}

impl std::str::FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Topology::Closed),
            "tube" => Ok(Topology::Tube),
            "band" => Ok(Topology::Band),
            "disk" => Ok(Topology::Disk),
            other => Err(Error::domain(format!("unknown topology '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Normal `(sin psi, -cos psi)`.
    #[default]
    Standard,
    /// Normal `(-sin psi, cos psi)`.
    Reversed,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Standard => 1.0,
            Orientation::Reversed => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Standard => Orientation::Reversed,
            Orientation::Reversed => Orientation::Standard,
        }
    }
}

/// Uniformly sampled profile of a surface of revolution.
///
/// Immutable once constructed; every constructor runs the same validation.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisymSurface {
    samples: Vec<ProfileSample>,
    topology: Topology,
    orientation: Orientation,
    h: f64,
    label: String,
    meta: BTreeMap<String, f64>,
}

/// Minimum number of samples accepted for any surface; the boundary stencils
/// need four neighbours.
pub const MIN_SAMPLES: usize = 5;

/// Relative tolerance on arclength uniformity.
const SPACING_RTOL: f64 = 1e-7;

impl AxisymSurface {
    /// Build a surface from explicit samples, checking every profile
    /// invariant for the requested topology.
    pub fn from_samples(
        samples: Vec<ProfileSample>,
        topology: Topology,
        orientation: Orientation,
    ) -> Result<Self> {
        if samples.len() < MIN_SAMPLES {
            return Err(Error::profile(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        if samples.iter().any(|p| {
            !(p.s.is_finite() && p.rho.is_finite() && p.z.is_finite() && p.psi.is_finite())
        }) {
            return Err(Error::profile("non-finite sample value"));
        }
        let n = samples.len();
        let h = (samples[n - 1].s - samples[0].s) / (n - 1) as f64;
        if !(h > 0.0) {
            return Err(Error::profile("arclength must be strictly increasing"));
        }
        for w in samples.windows(2) {
            let ds = w[1].s - w[0].s;
            if ds <= 0.0 {
                return Err(Error::profile("arclength must be strictly increasing"));
            }
            if (ds - h).abs() > SPACING_RTOL * h {
                return Err(Error::profile(format!(
                    "non-uniform arclength spacing: step {ds:e} differs from mean {h:e}"
                )));
            }
        }
        let surface = AxisymSurface {
            samples,
            topology,
            orientation,
            h,
            label: String::new(),
            meta: BTreeMap::new(),
        };
        surface.check_axis()?;
        surface.check_tangent_consistency()?;
        Ok(surface)
    }

    fn scale(&self) -> f64 {
        self.samples
            .iter()
            .map(|p| p.rho.abs().max(p.z.abs()))
            .fold(self.length(), f64::max)
    }

    fn check_axis(&self) -> Result<()> {
        let n = self.samples.len();
        let tol = 1e-9 * self.scale();
        if let Some(p) = self.samples.iter().find(|p| p.rho < 0.0) {
            return Err(Error::profile(format!(
                "negative rho {} at s = {}",
                p.rho, p.s
            )));
        }
        let pole_ok = |p: &ProfileSample| p.rho == 0.0 && p.psi.sin().abs() <= 1e-9;
        let (first, last) = (&self.samples[0], &self.samples[n - 1]);
        match self.topology {
            Topology::Closed => {
                if !pole_ok(first) || !pole_ok(last) {
                    return Err(Error::profile(
                        "closed profile must start and end on the axis with a horizontal tangent",
                    ));
                }
            }
            Topology::Disk => {
                if !pole_ok(first) {
                    return Err(Error::profile(
                        "disk profile must start on the axis with a horizontal tangent",
                    ));
                }
                if last.rho <= 0.0 {
                    return Err(Error::profile("disk edge circle must have rho > 0"));
                }
            }
            Topology::Band => {
                if first.rho <= 0.0 || last.rho <= 0.0 {
                    return Err(Error::profile("band edge circles must have rho > 0"));
                }
            }
            Topology::Tube => {
                let dpsi = wrap_angle(last.psi - first.psi);
                if (last.rho - first.rho).abs() > tol
                    || (last.z - first.z).abs() > tol
                    || dpsi.abs() > 1e-9
                {
                    return Err(Error::profile(
                        "tube profile must end where it starts (rho, z, psi mod 2pi)",
                    ));
                }
            }
        }
        for (i, p) in self.samples.iter().enumerate() {
            if p.rho == 0.0 && !self.is_pole(i) {
                return Err(Error::profile(format!(
                    "rho = 0 at non-pole sample {i} (s = {})",
                    p.s
                )));
            }
        }
        Ok(())
    }

    /// Trapezoidal consistency of `drho/ds = cos psi`, `dz/ds = sin psi`,
    /// against a bound built from the local second difference of the
    /// integrand (the trapezoid error term).
    fn check_tangent_consistency(&self) -> Result<()> {
        let p = &self.samples;
        let n = p.len();
        let h = self.h;
        let second_diff = |f: &dyn Fn(&ProfileSample) -> f64, i: usize| -> f64 {
            let lo = i.saturating_sub(1).min(n - 3);
            (f(&p[lo]) - 2.0 * f(&p[lo + 1]) + f(&p[lo + 2])).abs()
        };
        let cos = |q: &ProfileSample| q.psi.cos();
        let sin = |q: &ProfileSample| q.psi.sin();
        let mut worst = 0.0_f64;
        for i in 0..n - 1 {
            let dr = (p[i + 1].rho - p[i].rho) / h - 0.5 * (cos(&p[i]) + cos(&p[i + 1]));
            let dz = (p[i + 1].z - p[i].z) / h - 0.5 * (sin(&p[i]) + sin(&p[i + 1]));
            let bound_r = 1e-7 + second_diff(&cos, i).max(second_diff(&cos, i + 1));
            let bound_z = 1e-7 + second_diff(&sin, i).max(second_diff(&sin, i + 1));
            worst = worst.max(dr.abs() / bound_r).max(dz.abs() / bound_z);
        }
        if worst > 1.0 {
            return Err(Error::profile(
                "samples inconsistent with tangent angle (drho/ds = cos psi, dz/ds = sin psi)",
            ));
        }
        Ok(())
    }

    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Arclength step.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Total meridian length.
    pub fn length(&self) -> f64 {
        self.h * (self.samples.len() - 1) as f64
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Attach a named scalar (for example the aspect ratio of a torus).
    pub fn with_meta(mut self, key: impl Into<String>, value: f64) -> Self {
        self.meta.insert(key.into(), value);
        self
    }

    pub fn meta(&self, key: &str) -> Option<f64> {
        self.meta.get(key).copied()
    }

    pub fn meta_entries(&self) -> &BTreeMap<String, f64> {
        &self.meta
    }

    /// Same profile with the opposite normal.
    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn rho(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.rho).collect()
    }

    pub fn z(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.z).collect()
    }

    pub fn psi(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.psi).collect()
    }

    pub fn s(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.s).collect()
    }

    /// True when sample `i` lies on the rotation axis.
    pub fn is_pole(&self, i: usize) -> bool {
        let last = self.samples.len() - 1;
        match self.topology {
            Topology::Closed => i == 0 || i == last,
            Topology::Disk => i == 0,
            Topology::Band | Topology::Tube => false,
        }
    }

    /// Boundary circles of an open surface.
    pub fn edges(&self) -> Vec<Edge> {
        match self.topology {
            Topology::Band => vec![Edge::Start, Edge::End],
            Topology::Disk => vec![Edge::End],
            Topology::Closed | Topology::Tube => Vec::new(),
        }
    }

    /// Index of the distinct samples: the repeated closing sample of a tube is
    /// skipped.
    pub(crate) fn distinct_len(&self) -> usize {
        match self.topology {
            Topology::Tube => self.samples.len() - 1,
            _ => self.samples.len(),
        }
    }
}

/// Reduce an angle difference to `(-pi, pi]`.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let mut x = a % (2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    } else if x <= -PI {
        x += 2.0 * PI;
    }
    x
}

/// Input to [`build_profile`].
pub enum ProfileSpec<'a> {
    /// Tangent angle as a function of arclength on `[0, length]`, starting
    /// from `(rho0, z0)`.
    TangentAngle {
        psi: &'a dyn Fn(f64) -> f64,
        length: f64,
        rho0: f64,
        z0: f64,
    },
    /// A graph-like profile `sin psi = g(rho)` traced from the pole out to
    /// `rho_end`. `dg` is `g'(rho)`.
    SinPsiOfRho {
        g: &'a dyn Fn(f64) -> f64,
        dg: &'a dyn Fn(f64) -> f64,
        rho_end: f64,
    },
    /// Pre-computed samples.
    Samples(Vec<ProfileSample>),
}

// 5-point Gauss-Legendre on [-1, 1].
const GL5_X: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_W: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Construct an axisymmetric surface from a profile specification.
///
/// The arclength step is `length / round(length / h)` so that the grid is
/// exactly uniform and ends on the last point of the profile.
pub fn build_profile(
    spec: ProfileSpec<'_>,
    topology: Topology,
    orientation: Orientation,
    h: f64,
) -> Result<AxisymSurface> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain("grid step h must be positive"));
    }
    match spec {
        ProfileSpec::Samples(samples) => {
            AxisymSurface::from_samples(samples, topology, orientation)
        }
        ProfileSpec::SinPsiOfRho { g, dg, rho_end } => {
            if topology != Topology::Disk {
                return Err(Error::domain(
                    "a sin(psi) = g(rho) profile traced from the pole is a disk",
                ));
            }
            let samples = trace_graph_profile(g, dg, GraphStop::Radius(rho_end), h)?;
            AxisymSurface::from_samples(samples, topology, orientation)
        }
        ProfileSpec::TangentAngle {
            psi,
            length,
            rho0,
            z0,
        } => {
            if !(length > 0.0 && length.is_finite()) {
                return Err(Error::domain("profile length must be positive"));
            }
            let n = ((length / h).round() as usize).max(MIN_SAMPLES - 1);
            let step = length / n as f64;
            let mut samples = Vec::with_capacity(n + 1);
            let (mut rho, mut z) = (rho0, z0);
            samples.push(ProfileSample {
                s: 0.0,
                rho,
                z,
                psi: psi(0.0),
            });
            for i in 0..n {
                let a = i as f64 * step;
                let (mut dr, mut dz) = (0.0, 0.0);
                for (x, w) in GL5_X.iter().zip(GL5_W.iter()) {
                    let angle = psi(a + 0.5 * step * (1.0 + x));
                    dr += w * angle.cos();
                    dz += w * angle.sin();
                }
                rho += 0.5 * step * dr;
                z += 0.5 * step * dz;
                let s = (i + 1) as f64 * step;
                samples.push(ProfileSample {
                    s,
                    rho,
                    z,
                    psi: psi(s),
                });
            }
            snap_poles(&mut samples, topology, length)?;
            AxisymSurface::from_samples(samples, topology, orientation)
        }
    }
}

/// Quadrature leaves a pole at `rho ~ 1e-16`; put it exactly on the axis, or
/// report the irregularity if it is genuinely off-axis.
fn snap_poles(samples: &mut [ProfileSample], topology: Topology, scale: f64) -> Result<()> {
    let n = samples.len();
    let ends: &[usize] = match topology {
        Topology::Closed => &[0, n - 1],
        Topology::Disk => &[0],
        _ => &[],
    };
    for &i in ends {
        if samples[i].rho.abs() > 1e-9 * scale.max(1.0) {
            return Err(Error::profile(format!(
                "pole irregularity: rho = {:e} at the end of a profile that should close on the axis",
                samples[i].rho
            )));
        }
        samples[i].rho = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere_spec(r: f64, h: f64) -> Result<AxisymSurface> {
        let psi = move |s: f64| s / r;
        build_profile(
            ProfileSpec::TangentAngle {
                psi: &psi,
                length: PI * r,
                rho0: 0.0,
                z0: -r,
            },
            Topology::Closed,
            Orientation::Standard,
            h,
        )
    }

    #[test]
    fn sphere_profile_matches_circle() {
        let s = sphere_spec(1.0, 1e-3).unwrap();
        let err = s
            .samples()
            .iter()
            .map(|p| (p.rho - p.s.sin()).abs().max((p.z + p.s.cos()).abs()))
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "max deviation {err}");
        assert_eq!(s.topology(), Topology::Closed);
    }

    #[test]
    fn rejects_nonuniform_spacing() {
        let mut samples: Vec<ProfileSample> = (0..10)
            .map(|i| {
                let s = i as f64 * 0.1;
                ProfileSample {
                    s,
                    rho: 1.0,
                    z: s,
                    psi: PI / 2.0,
                }
            })
            .collect();
        samples[4].s += 0.01;
        let err = AxisymSurface::from_samples(samples, Topology::Band, Orientation::Standard);
        assert!(matches!(err, Err(Error::Profile(_))));
    }

    #[test]
    fn rejects_decreasing_arclength() {
        let samples: Vec<ProfileSample> = (0..6)
            .map(|i| ProfileSample {
                s: -(i as f64),
                rho: 1.0,
                z: 0.0,
                psi: 0.0,
            })
            .collect();
        assert!(
            AxisymSurface::from_samples(samples, Topology::Band, Orientation::Standard).is_err()
        );
    }

    #[test]
    fn rejects_irregular_pole() {
        // a spherical cap that stops short of the far pole
        let psi = |s: f64| s;
        let err = build_profile(
            ProfileSpec::TangentAngle {
                psi: &psi,
                length: 3.0,
                rho0: 0.0,
                z0: -1.0,
            },
            Topology::Closed,
            Orientation::Standard,
            1e-2,
        );
        assert!(matches!(err, Err(Error::Profile(_))));
    }

    #[test]
    fn rejects_rho_zero_off_pole() {
        let samples: Vec<ProfileSample> = (0..8)
            .map(|i| {
                let s = i as f64 * 0.1;
                ProfileSample {
                    s,
                    rho: 0.0,
                    z: s,
                    psi: PI / 2.0,
                }
            })
            .collect();
        let err = AxisymSurface::from_samples(samples, Topology::Band, Orientation::Standard);
        assert!(matches!(err, Err(Error::Profile(_))));
    }

    #[test]
    fn rejects_inconsistent_tangent() {
        let samples: Vec<ProfileSample> = (0..20)
            .map(|i| {
                let s = i as f64 * 0.1;
                ProfileSample {
                    s,
                    rho: 1.0 + s,
                    z: 0.0,
                    psi: PI / 2.0,
                }
            })
            .collect();
        let err = AxisymSurface::from_samples(samples, Topology::Band, Orientation::Standard);
        assert!(matches!(err, Err(Error::Profile(_))));
    }

    #[test]
    fn rejects_sin_psi_outside_unit_interval() {
        let g = |r: f64| 2.0 * r;
        let dg = |_: f64| 2.0;
        let err = build_profile(
            ProfileSpec::SinPsiOfRho {
                g: &g,
                dg: &dg,
                rho_end: 1.0,
            },
            Topology::Disk,
            Orientation::Standard,
            1e-2,
        );
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn wrap_angle_range() {
        for a in [-7.0, -PI, -1.0, 0.0, 1.0, PI, 4.0, 13.0] {
            let w = wrap_angle(a);
            assert!(w > -PI - 1e-15 && w <= PI + 1e-15);
            assert!(
                ((a - w) / (2.0 * PI)).fract().abs() < 1e-12
                    || ((a - w) / (2.0 * PI)).fract().abs() > 1.0 - 1e-12
            );
        }
    }
}
