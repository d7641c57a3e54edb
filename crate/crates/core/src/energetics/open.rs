//! Boundary conditions on latitude edge circles.
//!
//! Along an axisymmetric edge every quantity is constant, so all `d/ds` terms
//! of the edge equations vanish, and latitude circles are lines of curvature,
//! so `taug = 0`. The general equations then read, at each edge,
//!
//! ```text
//! e2.grad(E_2H) + e2.tgrad(E_K) + G_kn kn^2 - (G - G_kg kg) kn            = 0
//! -E_2H - kn E_K + G_kg kn - G_kn kg                                       = 0
//! K G_kg - kg (G - G_kg kg) + 2 (kn - H) kg G_kn - E                       = 0
//! ```
//!
//! with `e2.tgrad f = kn e2.grad f` and `e2.grad f = e2_sign df/ds`.

use serde::Serialize;

use super::residual::{general_values, probe_points};
use super::{
    check_edge_partials, check_partials, EdgeEnergy, EnergyDensity, MaterialParams, ResidualField,
};
use crate::error::{Error, Result};
use crate::geom::stencil::one_sided_at;
use crate::geom::{curvatures, edge_frame, AxisymSurface, CurvatureField, Edge, EdgeFrame};

/// Boundary residuals at one edge circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeResiduals {
    pub edge: Edge,
    pub values: [f64; 3],
}

impl EdgeResiduals {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Interior residual plus one boundary triple per edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpenBcReport {
    pub interior: ResidualField,
    pub edges: Vec<EdgeResiduals>,
}

impl OpenBcReport {
    /// Largest absolute boundary residual over all edges.
    pub fn edge_max(&self) -> f64 {
        self.edges.iter().fold(0.0, |m, e| m.max(e.max_abs()))
    }
}

fn require_open(surface: &AxisymSurface) -> Result<()> {
    if !surface.topology().has_edges() {
        return Err(Error::domain(format!(
            "boundary conditions need an edge; a {} surface has none",
            surface.topology().name()
        )));
    }
    Ok(())
}

/// Derivative of `f` along `e2` at the edge.
fn normal_derivative(surface: &AxisymSurface, f: &[f64], frame: &EdgeFrame) -> f64 {
    frame.e2_sign * one_sided_at(surface, f, frame.edge == Edge::Start)
}

/// General open-surface residuals for density `e` and edge energy `gamma`.
///
/// The interior field is the general equation without pressure; each edge
/// triple follows the order in the module documentation.
pub fn open_bc_residuals(
    surface: &AxisymSurface,
    e: &dyn EnergyDensity,
    gamma: &dyn EdgeEnergy,
) -> Result<OpenBcReport> {
    require_open(surface)?;
    let curv = curvatures(surface)?;
    check_partials(e, &probe_points(&curv), 1e-6)?;
    let interior = ResidualField::new(surface, general_values(surface, &curv, e)?);
    let n = surface.len();
    let (mut ea, mut eb) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for i in 0..n {
        let (two_h, k) = (2.0 * curv.mean[i], curv.gauss[i]);
        ea.push(e.d_two_h(two_h, k));
        eb.push(e.d_k(two_h, k));
    }
    let mut edges = Vec::new();
    for edge in surface.edges() {
        let f = edge_frame(surface, edge)?;
        let (kn, kg) = (f.kn, f.kg);
        check_edge_partials(gamma, &[(kn, kg)], 1e-6)?;
        let i = f.index;
        let (two_h, k) = (2.0 * curv.mean[i], curv.gauss[i]);
        let h = curv.mean[i];
        let (g, g_kn, g_kg) = (gamma.value(kn, kg), gamma.d_kn(kn, kg), gamma.d_kg(kn, kg));
        let grad_a = normal_derivative(surface, &ea, &f);
        let grad_b = normal_derivative(surface, &eb, &f);
        let force = grad_a + kn * grad_b + g_kn * kn * kn - (g - g_kg * kg) * kn;
        let moment = -ea[i] - kn * eb[i] + g_kg * kn - g_kn * kg;
        let tension =
            k * g_kg - kg * (g - g_kg * kg) + 2.0 * (kn - h) * kg * g_kn - e.value(two_h, k);
        edges.push(EdgeResiduals {
            edge,
            values: [force, moment, tension],
        });
    }
    Ok(OpenBcReport { interior, edges })
}

fn helfrich_edge(
    surface: &AxisymSurface,
    curv: &CurvatureField,
    params: &MaterialParams,
    edge: Edge,
) -> Result<EdgeResiduals> {
    let f = edge_frame(surface, edge)?;
    let i = f.index;
    let (h, k) = (curv.mean[i], curv.gauss[i]);
    let (kc, c0, kbar, lambda, gamma) = (
        params.kc,
        params.c0,
        params.kbar,
        params.lambda,
        params.gamma,
    );
    let dh_de2 = normal_derivative(surface, &curv.mean, &f);
    Ok(EdgeResiduals {
        edge,
        values: [
            kc * (2.0 * h + c0) + kbar * f.kn,
            -2.0 * kc * dh_de2 + gamma * f.kn,
            0.5 * kc * (2.0 * h + c0).powi(2) + kbar * k + lambda + gamma * f.kg,
        ],
    })
}

/// Open lipid bilayer with line tension `params.gamma`: the interior shape
/// equation `kc lap(2H) + kc(2H + c0)(2H^2 - c0 H - 2K) - 2 lambda H` and, at
/// each edge, the triple
///
/// ```text
/// kc (2H + c0) + kbar kn
/// -2 kc dH/de2 + gamma kn
/// (kc/2)(2H + c0)^2 + kbar K + lambda + gamma kg
/// ```
pub fn helfrich_open_bc(surface: &AxisymSurface, params: &MaterialParams) -> Result<OpenBcReport> {
    params.validate()?;
    require_open(surface)?;
    let curv = curvatures(surface)?;
    let interior = ResidualField::new(
        surface,
        super::residual::helfrich_values(surface, &curv, params)?,
    );
    let edges = surface
        .edges()
        .into_iter()
        .map(|e| helfrich_edge(surface, &curv, params, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(OpenBcReport { interior, edges })
}
