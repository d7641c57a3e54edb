use serde::{Deserialize, Serialize};

use super::{stencil, AxisymSurface};
use crate::error::{Error, Result};

/// Principal, mean and Gaussian curvature at every profile sample.
///
/// `kappa1` is the meridian curvature and `kappa2` the curvature of the
/// parallel circle; on an axisymmetric surface these are the principal
/// curvatures and the off-diagonal component of the second fundamental form
/// vanishes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureField {
    pub kappa1: Vec<f64>,
    pub kappa2: Vec<f64>,
    pub mean: Vec<f64>,
    pub gauss: Vec<f64>,
}

impl CurvatureField {
    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }

    /// `2H` at every sample.
    pub fn two_h(&self) -> Vec<f64> {
        self.mean.iter().map(|h| 2.0 * h).collect()
    }
}

/// Curvatures of an axisymmetric surface.
///
/// `dpsi/ds` is differenced on the grid; the parallel curvature uses the
/// exact `sin(psi)/rho` away from the axis and the regular limit
/// `kappa2 = kappa1` on it.
pub fn curvatures(surface: &AxisymSurface) -> Result<CurvatureField> {
    let sign = -surface.orientation().sign();
    let dpsi = stencil::dpsi_ds(surface);
    let n = surface.len();
    let mut kappa1 = Vec::with_capacity(n);
    let mut kappa2 = Vec::with_capacity(n);
    for (i, p) in surface.samples().iter().enumerate() {
        let k1 = sign * dpsi[i];
        let k2 = if surface.is_pole(i) {
            k1
        } else if p.rho > 0.0 {
            sign * p.psi.sin() / p.rho
        } else {
            return Err(Error::domain(format!("rho = 0 at non-pole sample {i}")));
        };
        kappa1.push(k1);
        kappa2.push(k2);
    }
    let mean = kappa1
        .iter()
        .zip(&kappa2)
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let gauss = kappa1.iter().zip(&kappa2).map(|(a, b)| a * b).collect();
    Ok(CurvatureField {
        kappa1,
        kappa2,
        mean,
        gauss,
    })
}
