use serde::Serialize;

use crate::energetics::helfrich_values;
use crate::energetics::{MaterialParams, ResidualField};
use crate::error::{Error, Result};
use crate::geom::stencil::d_ds;
use crate::geom::{curvatures, AxisymSurface};

/// In-plane strain of the skeleton sampled along the profile, in the
/// orthonormal frame `(e_s, e_phi)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkeletonStrain {
    pub eps11: Vec<f64>,
    pub eps22: Vec<f64>,
    pub eps12: Vec<f64>,
}

impl SkeletonStrain {
    /// The same strain tensor at `n` samples.
    pub fn homogeneous(n: usize, eps11: f64, eps22: f64, eps12: f64) -> Self {
        SkeletonStrain {
            eps11: vec![eps11; n],
            eps22: vec![eps22; n],
            eps12: vec![eps12; n],
        }
    }

    /// Isotropic strain `eps` at `n` samples.
    pub fn isotropic(n: usize, eps: f64) -> Self {
        Self::homogeneous(n, eps, eps, 0.0)
    }

    pub fn len(&self) -> usize {
        self.eps11.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps11.is_empty()
    }

    /// Mean strain `J = (eps11 + eps22) / 2`.
    pub fn j(&self) -> Vec<f64> {
        self.eps11
            .iter()
            .zip(&self.eps22)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }

    /// Determinant `Q = eps11 eps22 - eps12^2`.
    pub fn q(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.eps11[i] * self.eps22[i] - self.eps12[i] * self.eps12[i])
            .collect()
    }

    fn check(&self, surface: &AxisymSurface) -> Result<()> {
        let n = surface.len();
        if self.eps11.len() != n || self.eps22.len() != n || self.eps12.len() != n {
            return Err(Error::domain(format!(
                "strain has {}/{}/{} samples, surface has {n}",
                self.eps11.len(),
                self.eps22.len(),
                self.eps12.len()
            )));
        }
        Ok(())
    }
}

/// Normal-force residual of a membrane with a skeleton:
/// `p - 2H (lambda + kd J) + kc lap(2H) + kc (2H + c0)(2H^2 - c0 H - 2K)
///  - (kd/2)(kappa1 eps11 + kappa2 eps22)`.
pub fn cell_shape_residual(
    surface: &AxisymSurface,
    strain: &SkeletonStrain,
    params: &MaterialParams,
) -> Result<ResidualField> {
    params.validate()?;
    strain.check(surface)?;
    let curv = curvatures(surface)?;
    let mut values = helfrich_values(surface, &curv, params)?;
    let j = strain.j();
    let kd = params.kd;
    for (i, v) in values.iter_mut().enumerate() {
        *v += params.p
            - 2.0 * curv.mean[i] * kd * j[i]
            - 0.5 * kd * (curv.kappa1[i] * strain.eps11[i] + curv.kappa2[i] * strain.eps22[i]);
    }
    Ok(ResidualField::new(surface, values))
}

/// Tangential force balance of the skeleton along `e_s` and `e_phi`, each
/// multiplied by `rho`.
pub fn in_plane_strain_residuals(
    surface: &AxisymSurface,
    strain: &SkeletonStrain,
    kd: f64,
) -> Result<(ResidualField, ResidualField)> {
    strain.check(surface)?;
    let two_j: Vec<f64> = strain.j().iter().map(|j| 2.0 * j).collect();
    let dj = d_ds(surface, &two_j);
    let d22 = d_ds(surface, &strain.eps22);
    let d12 = d_ds(surface, &strain.eps12);
    let mut along = Vec::with_capacity(surface.len());
    let mut across = Vec::with_capacity(surface.len());
    for (i, p) in surface.samples().iter().enumerate() {
        let c = p.psi.cos();
        along.push(
            kd * (-dj[i] * p.rho - 0.5 * strain.eps11[i] * c
                + 0.5 * (d22[i] * p.rho + strain.eps22[i] * c)),
        );
        across.push(kd * (-strain.eps12[i] * c - 0.5 * d12[i] * p.rho));
    }
    Ok((
        ResidualField::new(surface, along),
        ResidualField::new(surface, across),
    ))
}
