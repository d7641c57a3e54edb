//! Curvature-energy densities and pointwise Euler-Lagrange residuals.
//!
//! A density `E(2H, K)` per unit area supplies its value and the partials
//! `dE/d(2H)` and `dE/dK`; an edge energy `Gamma(kn, kg)` per unit length does
//! the same for a boundary circle. The residual evaluators combine these with
//! the surface operators of [`crate::geom`].

mod density;
mod fit;
mod open;
mod residual;

pub use density::{
    check_edge_partials, check_partials, CustomDensity, CustomEdgeEnergy, EdgeEnergy,
    EnergyDensity, Graphite, Helfrich, LineTension, SoapFilm,
};
pub use fit::{fit_loading, sweep_loading, LoadingFit, LoadingProblem};
pub use open::{helfrich_open_bc, open_bc_residuals, EdgeResiduals, OpenBcReport};
pub(crate) use residual::helfrich_values;
pub use residual::{
    consistency_check, el_residual_closed, el_residual_interior, graphite_residual,
    helfrich_residual, ResidualField,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every scalar material constant of the membrane models.
///
/// Units follow the crate convention: energies in `k_B T`, lengths in nm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    /// Bending rigidity (energy).
    pub kc: f64,
    /// Gaussian rigidity (energy).
    pub kbar: f64,
    /// Skeleton entropic modulus (energy / length^2).
    pub kd: f64,
    /// Surface tension (energy / length^2).
    pub lambda: f64,
    /// Edge line tension (energy / length).
    pub gamma: f64,
    /// Spontaneous curvature (1 / length).
    pub c0: f64,
    /// Osmotic pressure difference (energy / length^3).
    pub p: f64,
    /// Membrane thickness (length). Carried along for reporting only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thickness: Option<f64>,
}

impl Default for MaterialParams {
    fn default() -> Self {
        MaterialParams {
            kc: 1.0,
            kbar: 0.0,
            kd: 0.0,
            lambda: 0.0,
            gamma: 0.0,
            c0: 0.0,
            p: 0.0,
            thickness: None,
        }
    }
}

impl MaterialParams {
    /// Check that every value is finite, `kd >= 0` and the thickness (if
    /// given) is positive.
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("kc", self.kc),
            ("kbar", self.kbar),
            ("kd", self.kd),
            ("lambda", self.lambda),
            ("gamma", self.gamma),
            ("c0", self.c0),
            ("p", self.p),
        ];
        if let Some((name, v)) = named.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::domain(format!(
                "parameter {name} = {v} is not finite"
            )));
        }
        if self.kd < 0.0 {
            return Err(Error::domain(format!(
                "kd = {} must be non-negative",
                self.kd
            )));
        }
        if let Some(t) = self.thickness {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::domain(format!("thickness = {t} must be positive")));
            }
        }
        Ok(())
    }

    pub(crate) fn require_kc(&self) -> Result<()> {
        self.validate()?;
        if self.kc <= 0.0 {
            return Err(Error::domain(format!("kc = {} must be positive", self.kc)));
        }
        Ok(())
    }

    /// The Helfrich density `(kc/2)(2H + c0)^2 + kbar K + lambda` of these
    /// parameters.
    pub fn helfrich(&self) -> Helfrich {
        Helfrich {
            kc: self.kc,
            c0: self.c0,
            kbar: self.kbar,
            lambda: self.lambda,
        }
    }
}
