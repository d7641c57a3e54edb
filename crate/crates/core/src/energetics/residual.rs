use std::f64::consts::PI;

use serde::Serialize;

use super::{check_partials, EnergyDensity, Helfrich, MaterialParams};
use crate::error::{Error, Result};
use crate::geom::tilde_laplacian_with;
use crate::geom::{curvatures, laplace_beltrami, AxisymSurface, CurvatureField, Topology};

/// Pointwise residual of a governing equation with its norms.
///
/// `linf` and `l2` are taken over the included samples only; `l2` is the
/// area-weighted root mean square (trapezoidal weights `2 pi rho ds`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualField {
    values: Vec<f64>,
    #[serde(skip)]
    weights: Vec<f64>,
    #[serde(skip)]
    included: Vec<bool>,
}

impl ResidualField {
    pub fn new(surface: &AxisymSurface, values: Vec<f64>) -> Self {
        let n = surface.len();
        debug_assert_eq!(values.len(), n);
        let h = surface.h();
        let mut weights: Vec<f64> = surface
            .samples()
            .iter()
            .map(|p| 2.0 * PI * p.rho * h)
            .collect();
        let mut included = vec![true; n];
        match surface.topology() {
            Topology::Tube => {
                weights[n - 1] = 0.0;
                included[n - 1] = false;
            }
            _ => {
                weights[0] *= 0.5;
                weights[n - 1] *= 0.5;
            }
        }
        ResidualField {
            values,
            weights,
            included,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether sample `i` enters the norms.
    pub fn is_included(&self, i: usize) -> bool {
        self.included[i]
    }

    pub fn included_count(&self) -> usize {
        self.included.iter().filter(|&&b| b).count()
    }

    /// Drop the samples for which `exclude(i)` holds from the norms.
    pub fn excluding(mut self, exclude: impl Fn(usize) -> bool) -> Self {
        for (i, inc) in self.included.iter_mut().enumerate() {
            if exclude(i) {
                *inc = false;
            }
        }
        self
    }

    /// Drop the samples closer than `rho_min` to the rotation axis.
    pub fn excluding_near_axis(self, surface: &AxisymSurface, rho_min: f64) -> Self {
        let rho = surface.rho();
        self.excluding(|i| rho[i] < rho_min)
    }

    pub fn linf(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.included)
            .filter(|(_, &inc)| inc)
            .fold(0.0, |m, (v, _)| m.max(v.abs()))
    }

    pub fn l2(&self) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for ((v, w), &inc) in self.values.iter().zip(&self.weights).zip(&self.included) {
            if inc {
                num += w * v * v;
                den += w;
            }
        }
        if den > 0.0 {
            (num / den).sqrt()
        } else {
            0.0
        }
    }

    /// Pointwise difference `self - other` with the union of exclusions.
    pub fn minus(&self, other: &ResidualField) -> ResidualField {
        ResidualField {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
            weights: self.weights.clone(),
            included: self
                .included
                .iter()
                .zip(&other.included)
                .map(|(a, b)| *a && *b)
                .collect(),
        }
    }
}

fn require_closed(surface: &AxisymSurface, what: &str) -> Result<()> {
    if surface.topology().has_edges() {
        return Err(Error::domain(format!(
            "{what} applies to closed or tube surfaces; this one is a {} with free edges",
            surface.topology().name()
        )));
    }
    Ok(())
}

/// A few `(2H, K)` points of the surface for the density partial check.
pub(crate) fn probe_points(curv: &CurvatureField) -> Vec<(f64, f64)> {
    let n = curv.len();
    (0..5)
        .map(|j| {
            let i = j * (n - 1) / 4;
            (2.0 * curv.mean[i], curv.gauss[i])
        })
        .collect()
}

/// The left-hand side of the general closed-surface equation without the
/// pressure term:
/// `(lap + 4H^2 - 2K) dE/d(2H) + (div tgrad + 2KH) dE/dK - 2H E`.
pub(crate) fn general_values(
    surface: &AxisymSurface,
    curv: &CurvatureField,
    e: &dyn EnergyDensity,
) -> Result<Vec<f64>> {
    let n = surface.len();
    let mut ea = Vec::with_capacity(n);
    let mut eb = Vec::with_capacity(n);
    let mut ev = Vec::with_capacity(n);
    for i in 0..n {
        let (two_h, k) = (2.0 * curv.mean[i], curv.gauss[i]);
        ea.push(e.d_two_h(two_h, k));
        eb.push(e.d_k(two_h, k));
        ev.push(e.value(two_h, k));
    }
    let lap_a = laplace_beltrami(surface, &ea)?;
    let tl_b = tilde_laplacian_with(surface, curv, &eb);
    Ok((0..n)
        .map(|i| {
            let (h, k) = (curv.mean[i], curv.gauss[i]);
            lap_a[i] + (4.0 * h * h - 2.0 * k) * ea[i] + tl_b[i] + 2.0 * k * h * eb[i]
                - 2.0 * h * ev[i]
        })
        .collect())
}

/// Residual of the general closed-surface Euler-Lagrange equation for the
/// density `e` at pressure `p`.
pub fn el_residual_closed(
    surface: &AxisymSurface,
    e: &dyn EnergyDensity,
    p: f64,
) -> Result<ResidualField> {
    require_closed(surface, "the closed-surface Euler-Lagrange equation")?;
    el_residual_interior(surface, e, p)
}

/// The same equation evaluated at every sample of a surface of any
/// topology. On a surface with edges this is only the interior condition;
/// the boundary conditions are evaluated by [`super::open_bc_residuals`].
pub fn el_residual_interior(
    surface: &AxisymSurface,
    e: &dyn EnergyDensity,
    p: f64,
) -> Result<ResidualField> {
    let curv = curvatures(surface)?;
    check_partials(e, &probe_points(&curv), 1e-6)?;
    let mut values = general_values(surface, &curv, e)?;
    values.iter_mut().for_each(|v| *v += p);
    Ok(ResidualField::new(surface, values))
}

/// `kc lap(2H) + kc (2H + c0)(2H^2 - c0 H - 2K) - 2 lambda H` at every sample.
pub(crate) fn helfrich_values(
    surface: &AxisymSurface,
    curv: &CurvatureField,
    params: &MaterialParams,
) -> Result<Vec<f64>> {
    let lap = laplace_beltrami(surface, &curv.two_h())?;
    let (kc, c0, lambda) = (params.kc, params.c0, params.lambda);
    Ok((0..surface.len())
        .map(|i| {
            let (h, k) = (curv.mean[i], curv.gauss[i]);
            kc * lap[i] + kc * (2.0 * h + c0) * (2.0 * h * h - c0 * h - 2.0 * k) - 2.0 * lambda * h
        })
        .collect())
}

/// Residual of the closed-vesicle shape equation
/// `p - 2 lambda H + kc lap(2H) + kc (2H + c0)(2H^2 - c0 H - 2K)`.
pub fn helfrich_residual(
    surface: &AxisymSurface,
    params: &MaterialParams,
) -> Result<ResidualField> {
    params.validate()?;
    require_closed(surface, "the closed-vesicle shape equation")?;
    let curv = curvatures(surface)?;
    let mut values = helfrich_values(surface, &curv, params)?;
    values.iter_mut().for_each(|v| *v += params.p);
    Ok(ResidualField::new(surface, values))
}

/// Residual of the graphite equation `lap H + 2H(H^2 - K) - lambda H / kc`.
pub fn graphite_residual(
    surface: &AxisymSurface,
    params: &MaterialParams,
) -> Result<ResidualField> {
    params.require_kc()?;
    let curv = curvatures(surface)?;
    let lap = laplace_beltrami(surface, &curv.mean)?;
    let ratio = params.lambda / params.kc;
    let values = (0..surface.len())
        .map(|i| {
            let (h, k) = (curv.mean[i], curv.gauss[i]);
            lap[i] + 2.0 * h * (h * h - k) - ratio * h
        })
        .collect();
    Ok(ResidualField::new(surface, values))
}

/// L-infinity distance between the specialised shape equation and the general
/// equation instantiated with the Helfrich density (including `kbar K` and
/// `lambda`).
pub fn consistency_check(surface: &AxisymSurface, params: &MaterialParams) -> Result<f64> {
    let special = helfrich_residual(surface, params)?;
    let e = Helfrich {
        kc: params.kc,
        c0: params.c0,
        kbar: params.kbar,
        lambda: params.lambda,
    };
    let general = el_residual_closed(surface, &e, params.p)?;
    Ok(special.minus(&general).linf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energetics::SoapFilm;
    use crate::solutions::{make_catenoid, make_cylinder, make_sphere, make_torus};

    #[test]
    fn open_surface_rejected() {
        let c = make_cylinder(1.0, 2.0, 0.05).unwrap();
        assert!(matches!(
            helfrich_residual(&c, &MaterialParams::default()),
            Err(Error::Domain(_))
        ));
        assert!(el_residual_closed(&c, &SoapFilm { lambda: 1.0 }, 0.0).is_err());
    }

    #[test]
    fn soap_film_on_catenoid_band_matches_plateau() {
        // the interior operator is topology-independent; evaluate it directly
        let s = make_catenoid(1.0, (-1.0, 1.0), 1e-3).unwrap();
        let curv = curvatures(&s).unwrap();
        let v = general_values(&s, &curv, &SoapFilm { lambda: 0.7 }).unwrap();
        assert!(v.iter().all(|x| x.abs() < 1e-5));
        let r = el_residual_interior(&s, &SoapFilm { lambda: 0.7 }, 0.0).unwrap();
        assert_eq!(r.values(), &v[..]);
    }

    #[test]
    fn young_laplace_sphere() {
        let (r, lambda) = (2.0, 0.3);
        let s = make_sphere(r, r / 1000.0).unwrap();
        // H = -1/R, so p - 2 lambda H = 0 needs p = -2 lambda / R
        let res = el_residual_closed(&s, &SoapFilm { lambda }, -2.0 * lambda / r).unwrap();
        assert!(res.linf() < 1e-12, "{}", res.linf());
    }

    #[test]
    fn soap_film_is_p_minus_two_lambda_h() {
        let t = make_torus(3.0, 1.0, 1e-2).unwrap();
        let curv = curvatures(&t).unwrap();
        let res = el_residual_closed(&t, &SoapFilm { lambda: 0.4 }, 0.25).unwrap();
        for (v, h) in res.values().iter().zip(&curv.mean) {
            assert!((v - (0.25 - 0.8 * h)).abs() < 1e-14);
        }
    }

    #[test]
    fn residual_is_affine_in_loading() {
        let t = make_torus(2.0, 1.0, 2e-2).unwrap();
        let curv = curvatures(&t).unwrap();
        let base = MaterialParams {
            kc: 1.3,
            c0: 0.4,
            ..Default::default()
        };
        let r0 = helfrich_residual(&t, &base).unwrap();
        let (p, lambda) = (0.37, -1.1);
        let r1 = helfrich_residual(&t, &MaterialParams { p, lambda, ..base }).unwrap();
        for i in 0..t.len() {
            let diff = r1.values()[i] - r0.values()[i];
            let expect = p - 2.0 * lambda * curv.mean[i];
            assert!((diff - expect).abs() < 1e-13 * (1.0 + r0.values()[i].abs()));
        }
    }

    #[test]
    fn norms_recompute_from_values() {
        let s = make_sphere(1.0, 0.05).unwrap();
        let values: Vec<f64> = (0..s.len()).map(|i| (i as f64).sin()).collect();
        let f = ResidualField::new(&s, values.clone());
        let linf = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert_eq!(f.linf(), linf);
        let g = f.excluding(|i| i % 2 == 0);
        assert!(g.linf() <= linf);
        assert_eq!(g.included_count(), s.len() / 2);
    }
}
