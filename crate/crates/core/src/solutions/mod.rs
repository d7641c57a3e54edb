//! Closed-form solution families and their generators.
//!
//! Every generator samples an exact profile on a uniform arclength grid whose
//! step is the closest divisor of the profile length to the requested `h`,
//! and returns it through [`AxisymSurface::from_samples`], so all geometric
//! invariants are checked before a surface leaves this module.

mod band;
mod biconcave;
mod sphere;

pub use band::{torus_band_sweep, BandSweepResult};
pub use biconcave::{make_biconcave, make_biconcave_disk, BiconcaveSpec, ValidityDomain};
pub use sphere::{sphere_radii, swnt_radius, SphereCondition};

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geom::{
    build_profile, AxisymSurface, Orientation, ProfileSample, ProfileSpec, Topology, MIN_SAMPLES,
};

/// Metadata key holding `R / r` on tori and torus bands.
pub const META_ASPECT: &str = "R_over_r";

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} = {v} must be positive and finite"
        )))
    }
}

/// Number of intervals and exact step for a profile of the given length.
fn grid(length: f64, h: f64) -> Result<(usize, f64)> {
    positive("grid step h", h)?;
    let n = ((length / h).round() as usize).max(MIN_SAMPLES - 1);
    Ok((n, length / n as f64))
}

fn sampled(
    length: f64,
    h: f64,
    s0: f64,
    f: impl Fn(f64) -> (f64, f64, f64),
) -> Result<Vec<ProfileSample>> {
    let (n, step) = grid(length, h)?;
    Ok((0..=n)
        .map(|i| {
            let s = s0 + i as f64 * step;
            let (rho, z, psi) = f(s);
            ProfileSample { s, rho, z, psi }
        })
        .collect())
}

/// Sphere of radius `r` traced counterclockwise from the south pole:
/// `psi = s/r`, `rho = r sin(psi)`, `z = -r cos(psi)`.
pub fn make_sphere(r: f64, h: f64) -> Result<AxisymSurface> {
    positive("sphere radius", r)?;
    let mut samples = sampled(PI * r, h, 0.0, |s| {
        let psi = s / r;
        (r * psi.sin(), -r * psi.cos(), psi)
    })?;
    let n = samples.len();
    samples[0].rho = 0.0;
    samples[n - 1].rho = 0.0;
    samples[n - 1].psi = PI;
    Ok(
        AxisymSurface::from_samples(samples, Topology::Closed, Orientation::Standard)?
            .with_label("sphere"),
    )
}

/// Lower hemisphere of radius `r`, from the south pole to the equator.
pub fn make_hemisphere(r: f64, h: f64) -> Result<AxisymSurface> {
    positive("hemisphere radius", r)?;
    let mut samples = sampled(FRAC_PI_2 * r, h, 0.0, |s| {
        let psi = s / r;
        (r * psi.sin(), -r * psi.cos(), psi)
    })?;
    samples[0].rho = 0.0;
    Ok(
        AxisymSurface::from_samples(samples, Topology::Disk, Orientation::Standard)?
            .with_label("hemisphere"),
    )
}

/// Torus with centre-circle radius `big_r` and tube radius `r`. The meridian
/// circle is traced counterclockwise from the outer equator: with
/// `u = s / r`, `rho = R + r cos u`, `z = r sin u`, `psi = u + pi/2`.
pub fn make_torus(big_r: f64, r: f64, h: f64) -> Result<AxisymSurface> {
    positive("tube radius", r)?;
    if !(big_r > r && big_r.is_finite()) {
        return Err(Error::domain(format!(
            "torus needs R > r > 0 (got R = {big_r}, r = {r})"
        )));
    }
    let mut samples = sampled(2.0 * PI * r, h, 0.0, |s| {
        let u = s / r;
        (big_r + r * u.cos(), r * u.sin(), u + FRAC_PI_2)
    })?;
    let n = samples.len();
    samples[n - 1].rho = samples[0].rho;
    samples[n - 1].z = samples[0].z;
    Ok(
        AxisymSurface::from_samples(samples, Topology::Tube, Orientation::Standard)?
            .with_label("torus")
            .with_meta(META_ASPECT, big_r / r),
    )
}

/// The part `u in [u0, u1]` of the torus meridian as a band with two edge
/// circles (parametrisation as in [`make_torus`]).
pub fn torus_band(big_r: f64, r: f64, (u0, u1): (f64, f64), h: f64) -> Result<AxisymSurface> {
    positive("tube radius", r)?;
    if !(big_r > r && big_r.is_finite()) {
        return Err(Error::domain(format!(
            "torus needs R > r > 0 (got R = {big_r}, r = {r})"
        )));
    }
    if !(u1 > u0) {
        return Err(Error::domain("torus band needs u1 > u0"));
    }
    if u1 - u0 >= 2.0 * PI {
        return Err(Error::domain(
            "a band covering the whole meridian is a closed torus; use make_torus",
        ));
    }
    let samples = sampled(r * (u1 - u0), h, r * u0, |s| {
        let u = s / r;
        (big_r + r * u.cos(), r * u.sin(), u + FRAC_PI_2)
    })?;
    Ok(
        AxisymSurface::from_samples(samples, Topology::Band, Orientation::Standard)?
            .with_label("torus-band")
            .with_meta(META_ASPECT, big_r / r),
    )
}

/// Cylinder of radius `r` and length `len` as a band: `rho = r`, `z = s`.
pub fn make_cylinder(r: f64, len: f64, h: f64) -> Result<AxisymSurface> {
    positive("cylinder radius", r)?;
    positive("cylinder length", len)?;
    let samples = sampled(len, h, 0.0, |s| (r, s, FRAC_PI_2))?;
    Ok(
        AxisymSurface::from_samples(samples, Topology::Band, Orientation::Standard)?
            .with_label("cylinder"),
    )
}

/// Catenoid `rho = sqrt(c^2 + s^2)`, `z = c asinh(s/c)` for `s` in
/// `[s0, s1]`, as a band.
pub fn make_catenoid(c: f64, (s0, s1): (f64, f64), h: f64) -> Result<AxisymSurface> {
    positive("catenoid neck radius", c)?;
    if !(s1 > s0 && s0.is_finite() && s1.is_finite()) {
        return Err(Error::domain("catenoid needs a finite range s0 < s1"));
    }
    let samples = sampled(s1 - s0, h, s0, |s| {
        ((c * c + s * s).sqrt(), c * (s / c).asinh(), c.atan2(s))
    })?;
    Ok(
        AxisymSurface::from_samples(samples, Topology::Band, Orientation::Standard)?
            .with_label("catenoid"),
    )
}

/// Flat disk of radius `a` in the plane `z = 0`.
pub fn make_disk(a: f64, h: f64) -> Result<AxisymSurface> {
    positive("disk radius", a)?;
    let samples = sampled(a, h, 0.0, |s| (s, 0.0, 0.0))?;
    Ok(
        AxisymSurface::from_samples(samples, Topology::Disk, Orientation::Standard)?
            .with_label("disk"),
    )
}

/// Closed surface of revolution with tangent angle
/// `psi(s) = pi s / L + sum_k a_k sin(2 k pi s / L)`, `L = pi r`.
///
/// Each term satisfies `psi(L - s) = pi - psi(s)`, which makes the meridian
/// return to the axis; small amplitudes give prolate or oblate spheroids.
pub fn make_perturbed_sphere(r: f64, amplitudes: &[f64], h: f64) -> Result<AxisymSurface> {
    positive("radius", r)?;
    let len = PI * r;
    let amps = amplitudes.to_vec();
    let psi = move |s: f64| {
        PI * s / len
            + amps
                .iter()
                .enumerate()
                .map(|(k, a)| a * (2.0 * (k + 1) as f64 * PI * s / len).sin())
                .sum::<f64>()
    };
    let surface = build_profile(
        ProfileSpec::TangentAngle {
            psi: &psi,
            length: len,
            rho0: 0.0,
            z0: -r,
        },
        Topology::Closed,
        Orientation::Standard,
        h,
    )?;
    Ok(surface.with_label("perturbed-sphere"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{curvatures, edge_frame, Edge};
    use std::f64::consts::SQRT_2;

    #[test]
    fn torus_points_lie_on_generating_circle() {
        let t = make_torus(SQRT_2, 1.0, 1e-2).unwrap();
        assert_eq!(t.topology(), Topology::Tube);
        assert_eq!(t.meta(META_ASPECT), Some(SQRT_2));
        for p in t.samples() {
            let d = ((p.rho - SQRT_2).powi(2) + p.z * p.z).sqrt();
            assert!((d - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_dimensions_rejected() {
        assert!(make_sphere(0.0, 0.1).is_err());
        assert!(make_torus(1.0, 1.0, 0.1).is_err());
        assert!(make_cylinder(1.0, -1.0, 0.1).is_err());
        assert!(make_catenoid(1.0, (1.0, 1.0), 0.1).is_err());
        assert!(make_sphere(1.0, 0.0).is_err());
    }

    #[test]
    fn full_band_is_rejected() {
        assert!(matches!(
            torus_band(2.0, 1.0, (-PI, PI), 1e-2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn symmetric_band_has_symmetric_edges() {
        let b = torus_band(SQRT_2, 1.0, (-1.1, 1.1), 1e-3).unwrap();
        let (a, z) = (
            edge_frame(&b, Edge::Start).unwrap(),
            edge_frame(&b, Edge::End).unwrap(),
        );
        assert!((a.kn - z.kn).abs() < 1e-12);
        assert!((a.kg - z.kg).abs() < 1e-12);
        assert_eq!(a.taug, 0.0);
        assert_eq!(z.taug, 0.0);
    }

    #[test]
    fn cylinder_gauss_is_exactly_zero() {
        let c = curvatures(&make_cylinder(1.0, 10.0, 1e-2).unwrap()).unwrap();
        assert!(c.gauss.iter().all(|&k| k == 0.0));
    }

    #[test]
    fn catenoid_is_minimal() {
        let errs: Vec<f64> = [1e-2, 5e-3]
            .iter()
            .map(|&h| {
                let c = curvatures(&make_catenoid(1.0, (-1.5, 1.5), h).unwrap()).unwrap();
                c.mean.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
            })
            .collect();
        assert!(errs[1] < 1e-4, "{errs:?}");
        assert!(errs[0] / errs[1] > 3.5, "{errs:?}");
    }

    #[test]
    fn perturbed_sphere_closes() {
        let s = make_perturbed_sphere(1.0, &[0.1, -0.05], 1e-3).unwrap();
        assert_eq!(s.topology(), Topology::Closed);
        assert_eq!(s.samples().last().unwrap().rho, 0.0);
    }
}
