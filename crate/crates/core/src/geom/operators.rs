//! Second-order surface operators acting on axisymmetric scalar fields.
//!
//! For `f = f(s)` on a surface of revolution:
//!
//! ```text
//! lap f       = (1/rho) (rho f')'        = f'' + cos(psi) f' / rho
//! div tgrad f = (1/rho) (rho kappa2 f')' = kappa2 f'' + kappa1 cos(psi) f' / rho
//! ```
//!
//! The second operator is the divergence of the cofactor of the curvature
//! tensor applied to the gradient (`(rho kappa2)' = kappa1 cos psi`). On the
//! axis both reduce by L'Hopital to `2 f''` and `2 kappa f''`.

use super::{curvatures, stencil, AxisymSurface, CurvatureField, MIN_SAMPLES};
use crate::error::{Error, Result};

fn check_field(surface: &AxisymSurface, f: &[f64]) -> Result<()> {
    if surface.len() < MIN_SAMPLES {
        return Err(Error::domain(format!(
            "surface operators need at least {MIN_SAMPLES} samples"
        )));
    }
    if f.len() != surface.len() {
        return Err(Error::domain(format!(
            "field has {} values but the surface has {} samples",
            f.len(),
            surface.len()
        )));
    }
    Ok(())
}

/// Laplace-Beltrami operator of an axisymmetric field.
pub fn laplace_beltrami(surface: &AxisymSurface, f: &[f64]) -> Result<Vec<f64>> {
    check_field(surface, f)?;
    let df = stencil::d_ds(surface, f);
    let d2f = stencil::d2_ds2(surface, f);
    Ok(surface
        .samples()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if surface.is_pole(i) {
                2.0 * d2f[i]
            } else {
                d2f[i] + p.psi.cos() * df[i] / p.rho
            }
        })
        .collect())
}

/// `div(tilde grad f)` of an axisymmetric field.
pub fn tilde_laplacian(surface: &AxisymSurface, f: &[f64]) -> Result<Vec<f64>> {
    check_field(surface, f)?;
    let curv = curvatures(surface)?;
    Ok(tilde_laplacian_with(surface, &curv, f))
}

pub(crate) fn tilde_laplacian_with(
    surface: &AxisymSurface,
    curv: &CurvatureField,
    f: &[f64],
) -> Vec<f64> {
    let df = stencil::d_ds(surface, f);
    let d2f = stencil::d2_ds2(surface, f);
    surface
        .samples()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if surface.is_pole(i) {
                2.0 * curv.kappa1[i] * d2f[i]
            } else {
                curv.kappa2[i] * d2f[i] + curv.kappa1[i] * p.psi.cos() * df[i] / p.rho
            }
        })
        .collect()
}
