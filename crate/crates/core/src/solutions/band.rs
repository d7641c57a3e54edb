//! Parameter sweep for the central band of a torus as an open membrane.
//!
//! For fixed geometry and `c0` the open-bilayer equations (zero pressure,
//! line tension `gamma`) are affine in `(lambda, gamma, kbar)`: the interior
//! equation involves `lambda` only and each edge triple is linear in all
//! three. The sweep solves the weighted least-squares problem for these three
//! unknowns at every `(R/r, u_edge, c0)` grid point and keeps the point whose
//! actual residuals, re-evaluated through [`helfrich_open_bc`], are smallest.

use serde::Serialize;

use super::torus_band;
use crate::energetics::{helfrich_open_bc, MaterialParams};
use crate::error::{Error, Result};
use crate::geom::stencil::one_sided_at;
use crate::geom::{curvatures, edge_frame, laplace_beltrami, Edge};

/// Best parameter set found by [`torus_band_sweep`] (with `kc = r = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandSweepResult {
    pub aspect: f64,
    /// The band is `u in [-u_edge, u_edge]` around the outer equator.
    pub u_edge: f64,
    pub c0: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub kbar: f64,
    pub interior_linf: f64,
    pub edge_max: f64,
}

impl BandSweepResult {
    /// The quantity minimised by the sweep.
    pub fn score(&self) -> f64 {
        self.interior_linf.max(self.edge_max)
    }
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    let scale = a.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    for col in 0..3 {
        let piv = (col..3).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        m.swap(col, piv);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Sweep symmetric torus bands for the parameters that best satisfy the
/// open-bilayer shape equation and boundary conditions at zero pressure.
pub fn torus_band_sweep(
    aspects: &[f64],
    u_edges: &[f64],
    c0s: &[f64],
    h: f64,
) -> Result<BandSweepResult> {
    if aspects.is_empty() || u_edges.is_empty() || c0s.is_empty() {
        return Err(Error::domain("band sweep needs non-empty parameter grids"));
    }
    let kc = 1.0;
    let mut best: Option<BandSweepResult> = None;
    for &aspect in aspects {
        for &u_edge in u_edges {
            let band = torus_band(aspect, 1.0, (-u_edge, u_edge), h)?;
            let curv = curvatures(&band)?;
            let lap = laplace_beltrami(&band, &curv.two_h())?;
            let n = band.len();
            let w_int = 1.0 / (n as f64).sqrt();
            let frames = [
                edge_frame(&band, Edge::Start)?,
                edge_frame(&band, Edge::End)?,
            ];
            for &c0 in c0s {
                let mut ata = [[0.0; 3]; 3];
                let mut atb = [0.0; 3];
                let mut add = |row: [f64; 3], rhs: f64, w: f64| {
                    for i in 0..3 {
                        for j in 0..3 {
                            ata[i][j] += w * w * row[i] * row[j];
                        }
                        atb[i] += w * w * row[i] * rhs;
                    }
                };
                // unknowns (lambda, gamma, kbar)
                for i in 0..n {
                    let (hm, k) = (curv.mean[i], curv.gauss[i]);
                    let base =
                        kc * lap[i] + kc * (2.0 * hm + c0) * (2.0 * hm * hm - c0 * hm - 2.0 * k);
                    add([-2.0 * hm, 0.0, 0.0], -base, w_int);
                }
                for f in &frames {
                    let i = f.index;
                    let (hm, k) = (curv.mean[i], curv.gauss[i]);
                    let dh = f.e2_sign * one_sided_at(&band, &curv.mean, f.edge == Edge::Start);
                    add([0.0, 0.0, f.kn], -kc * (2.0 * hm + c0), 1.0);
                    add([0.0, f.kn, 0.0], 2.0 * kc * dh, 1.0);
                    add([1.0, f.kg, k], -0.5 * kc * (2.0 * hm + c0).powi(2), 1.0);
                }
                let Some([lambda, gamma, kbar]) = solve3(ata, atb) else {
                    continue;
                };
                let params = MaterialParams {
                    kc,
                    c0,
                    lambda,
                    gamma,
                    kbar,
                    ..Default::default()
                };
                let rep = helfrich_open_bc(&band, &params)?;
                let cand = BandSweepResult {
                    aspect,
                    u_edge,
                    c0,
                    lambda,
                    gamma,
                    kbar,
                    interior_linf: rep.interior.linf(),
                    edge_max: rep.edge_max(),
                };
                if best.map_or(true, |b| cand.score() < b.score()) {
                    best = Some(cand);
                }
            }
        }
    }
    best.ok_or_else(|| Error::numerical("every band sweep point was singular"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve3_identity() {
        let x = solve3(
            [[2.0, 0.0, 0.0], [0.0, 3.0, 1.0], [0.0, 1.0, 1.0]],
            [2.0, 5.0, 3.0],
        )
        .unwrap();
        assert!(
            (x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15 && (x[2] - 2.0).abs() < 1e-15
        );
        assert!(solve3(
            [[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            [1.0, 1.0, 1.0]
        )
        .is_none());
    }

    #[test]
    fn sweep_reports_a_best_point() {
        let best = torus_band_sweep(
            &[std::f64::consts::SQRT_2],
            &[0.6, 1.2],
            &[-0.5, 0.0, 0.5],
            1e-2,
        )
        .unwrap();
        assert!(best.score().is_finite());
        assert!(best.score() > 0.0);
    }
}
