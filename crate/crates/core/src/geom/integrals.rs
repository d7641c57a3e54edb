//! Trapezoidal surface integrals on the arclength grid.
//!
//! `dA = 2 pi rho ds`; the volume uses the divergence theorem in the form
//! `V = pi * integral rho^2 sin(psi) ds` (signed by the orientation, so a
//! counterclockwise closed meridian with standard orientation encloses a
//! positive volume). For tubes the periodic trapezoid rule is used.

use std::f64::consts::PI;

use super::{curvatures, AxisymSurface, Topology};
use crate::error::{Error, Result};

fn trapezoid(surface: &AxisymSurface, g: &[f64]) -> f64 {
    let h = surface.h();
    match surface.topology() {
        Topology::Tube => g[..surface.distinct_len()].iter().sum::<f64>() * h,
        _ => {
            let n = g.len();
            let inner: f64 = g[1..n - 1].iter().sum();
            h * (inner + 0.5 * (g[0] + g[n - 1]))
        }
    }
}

/// `integral f dA` of a per-sample field.
pub fn integrate(surface: &AxisymSurface, f: &[f64]) -> Result<f64> {
    if f.len() != surface.len() {
        return Err(Error::domain("field length does not match the surface"));
    }
    let g: Vec<f64> = surface
        .samples()
        .iter()
        .zip(f)
        .map(|(p, v)| 2.0 * PI * p.rho * v)
        .collect();
    Ok(trapezoid(surface, &g))
}

pub fn area(surface: &AxisymSurface) -> f64 {
    let g: Vec<f64> = surface.samples().iter().map(|p| 2.0 * PI * p.rho).collect();
    trapezoid(surface, &g)
}

/// Enclosed volume of a closed or tube surface.
pub fn volume(surface: &AxisymSurface) -> Result<f64> {
    if surface.topology().has_edges() {
        return Err(Error::domain(
            "volume is only defined for closed or tube surfaces",
        ));
    }
    let o = surface.orientation().sign();
    let g: Vec<f64> = surface
        .samples()
        .iter()
        .map(|p| o * PI * p.rho * p.rho * p.psi.sin())
        .collect();
    Ok(trapezoid(surface, &g))
}

/// Total Gaussian curvature `integral K dA`.
pub fn gaussian_curvature_integral(surface: &AxisymSurface) -> Result<f64> {
    let c = curvatures(surface)?;
    integrate(surface, &c.gauss)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::{make_cylinder, make_sphere, make_torus};

    #[test]
    fn unit_sphere_area_and_volume() {
        let s = make_sphere(1.0, 1e-3).unwrap();
        assert!((area(&s) / (4.0 * PI) - 1.0).abs() < 1e-5);
        assert!((volume(&s).unwrap() / (4.0 * PI / 3.0) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn torus_area_pappus() {
        let (big, r) = (3.0, 1.2);
        let t = make_torus(big, r, 1e-2).unwrap();
        assert!((area(&t) / (4.0 * PI * PI * big * r) - 1.0).abs() < 1e-10);
        let v = volume(&t).unwrap();
        assert!((v / (2.0 * PI * PI * big * r * r) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cylinder_band_area() {
        let c = make_cylinder(0.7, 5.0, 1e-2).unwrap();
        assert!((area(&c) - 2.0 * PI * 0.7 * 5.0).abs() < 1e-9);
        assert!(matches!(volume(&c), Err(Error::Domain(_))));
    }

    #[test]
    fn gauss_bonnet_totals() {
        let s = make_sphere(2.0, 1e-3).unwrap();
        assert!((gaussian_curvature_integral(&s).unwrap() - 4.0 * PI).abs() < 1e-4);
        let t = make_torus(2.0, 0.5, 1e-3).unwrap();
        assert!(gaussian_curvature_integral(&t).unwrap().abs() < 1e-8);
    }
}
