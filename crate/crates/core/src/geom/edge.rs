use serde::{Deserialize, Serialize};

use super::{curvatures, AxisymSurface, Topology};
use crate::error::{Error, Result};

/// Which boundary circle of an open profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    /// The first sample (`s = 0`).
    Start,
    /// The last sample.
    End,
}

/// Darboux frame data of a latitude boundary circle.
///
/// `e1` is the circle tangent, `e2` points into the surface and `e3` is the
/// surface normal; `kn`, `kg` are the components of the circle's curvature
/// vector along `e3` and `e2`, and `taug` is the geodesic torsion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeFrame {
    pub edge: Edge,
    pub kn: f64,
    pub kg: f64,
    pub taug: f64,
    /// `+1` when `e2` is the `+s` meridian direction, `-1` for `-s`.
    pub e2_sign: f64,
    /// Index of the edge sample.
    pub index: usize,
}

/// Frame of the boundary circle `edge`.
///
/// The curvature vector of a latitude circle of radius `rho` is
/// `-rho_hat / rho`; with `e2 = e2_sign * (cos psi, sin psi)` and the
/// oriented normal this gives `kn = kappa2` and `kg = -e2_sign cos(psi) / rho`.
/// Latitude circles are lines of curvature, so `taug = 0`.
pub fn edge_frame(surface: &AxisymSurface, edge: Edge) -> Result<EdgeFrame> {
    let n = surface.len();
    let index = match (surface.topology(), edge) {
        (Topology::Closed | Topology::Tube, _) => {
            return Err(Error::domain(format!(
                "a {} surface has no boundary circle",
                surface.topology().name()
            )))
        }
        (Topology::Disk, Edge::Start) => {
            return Err(Error::domain(
                "the start of a disk profile is a pole, not an edge",
            ))
        }
        (_, Edge::Start) => 0,
        (_, Edge::End) => n - 1,
    };
    let e2_sign = match edge {
        Edge::Start => 1.0,
        Edge::End => -1.0,
    };
    let p = surface.samples()[index];
    let curv = curvatures(surface)?;
    Ok(EdgeFrame {
        edge,
        kn: curv.kappa2[index],
        kg: -e2_sign * p.psi.cos() / p.rho,
        taug: 0.0,
        e2_sign,
        index,
    })
}
