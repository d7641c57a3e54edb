//! Finite-difference stencils on the uniform arclength grid.
//!
//! Interior points use central 3-point stencils. Neighbours beyond the ends
//! of the grid are supplied as ghost values where the topology defines them:
//! mirror images across a pole (even scalars, odd tangent angle) and periodic
//! wrap-around for tubes. At a free edge there is no ghost and one-sided
//! second-order stencils are used instead.

use super::{AxisymSurface, Topology};

const GHOSTS: usize = 2;

#[derive(Clone, Copy, PartialEq, Eq)]
enum FieldKind {
    /// Axisymmetric scalar: even across a pole.
    Scalar,
    /// Tangent angle: `psi(-s) = 2 psi_pole - psi(s)` across a pole, with a
    /// winding offset across the seam of a tube.
    Angle,
}

struct Extended {
    data: Vec<f64>,
    left: bool,
    right: bool,
}

impl Extended {
    fn at(&self, i: usize, k: isize) -> f64 {
        self.data[(i as isize + GHOSTS as isize + k) as usize]
    }
}

fn unwrap_angles(psi: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(psi.len());
    out.push(psi[0]);
    for w in psi.windows(2) {
        let prev = *out.last().unwrap();
        out.push(prev + super::wrap_angle(w[1] - w[0]));
    }
    out
}

fn extend(surface: &AxisymSurface, f: &[f64], kind: FieldKind) -> Extended {
    let n = f.len();
    debug_assert_eq!(n, surface.len());
    let vals = if kind == FieldKind::Angle {
        unwrap_angles(f)
    } else {
        f.to_vec()
    };
    let mut data = vec![f64::NAN; n + 2 * GHOSTS];
    data[GHOSTS..GHOSTS + n].copy_from_slice(&vals);
    let reflect = |pole: f64, v: f64| match kind {
        FieldKind::Scalar => v,
        FieldKind::Angle => 2.0 * pole - v,
    };
    let (mut left, mut right) = (false, false);
    match surface.topology() {
        Topology::Tube => {
            let m = n - 1;
            let winding = match kind {
                FieldKind::Angle => vals[m] - vals[0],
                FieldKind::Scalar => 0.0,
            };
            for k in 1..=GHOSTS {
                data[GHOSTS - k] = vals[m - k] - winding;
                data[GHOSTS + n - 1 + k] = vals[k] + winding;
            }
            left = true;
            right = true;
        }
        Topology::Closed | Topology::Disk => {
            for k in 1..=GHOSTS {
                data[GHOSTS - k] = reflect(vals[0], vals[k]);
            }
            left = true;
            if surface.topology() == Topology::Closed {
                for k in 1..=GHOSTS {
                    data[GHOSTS + n - 1 + k] = reflect(vals[n - 1], vals[n - 1 - k]);
                }
                right = true;
            }
        }
        Topology::Band => {}
    }
    Extended { data, left, right }
}

fn first(surface: &AxisymSurface, f: &[f64], kind: FieldKind) -> Vec<f64> {
    let n = f.len();
    let h = surface.h();
    let e = extend(surface, f, kind);
    (0..n)
        .map(|i| {
            if i == 0 && !e.left {
                (-3.0 * e.at(0, 0) + 4.0 * e.at(0, 1) - e.at(0, 2)) / (2.0 * h)
            } else if i == n - 1 && !e.right {
                (3.0 * e.at(i, 0) - 4.0 * e.at(i, -1) + e.at(i, -2)) / (2.0 * h)
            } else {
                (e.at(i, 1) - e.at(i, -1)) / (2.0 * h)
            }
        })
        .collect()
}

fn second(surface: &AxisymSurface, f: &[f64], kind: FieldKind) -> Vec<f64> {
    let n = f.len();
    let h2 = surface.h() * surface.h();
    let e = extend(surface, f, kind);
    (0..n)
        .map(|i| {
            if i == 0 && !e.left {
                (2.0 * e.at(0, 0) - 5.0 * e.at(0, 1) + 4.0 * e.at(0, 2) - e.at(0, 3)) / h2
            } else if i == n - 1 && !e.right {
                (2.0 * e.at(i, 0) - 5.0 * e.at(i, -1) + 4.0 * e.at(i, -2) - e.at(i, -3)) / h2
            } else {
                (e.at(i, 1) - 2.0 * e.at(i, 0) + e.at(i, -1)) / h2
            }
        })
        .collect()
}

/// `d f / ds` of an axisymmetric scalar field.
pub(crate) fn d_ds(surface: &AxisymSurface, f: &[f64]) -> Vec<f64> {
    first(surface, f, FieldKind::Scalar)
}

/// `d^2 f / ds^2` of an axisymmetric scalar field.
pub(crate) fn d2_ds2(surface: &AxisymSurface, f: &[f64]) -> Vec<f64> {
    second(surface, f, FieldKind::Scalar)
}

/// `d psi / ds` with angle unwrapping.
pub(crate) fn dpsi_ds(surface: &AxisymSurface) -> Vec<f64> {
    first(surface, &surface.psi(), FieldKind::Angle)
}

/// One-sided `d f / ds` at a single edge sample (used for normal
/// derivatives at boundary circles).
pub(crate) fn one_sided_at(surface: &AxisymSurface, f: &[f64], at_start: bool) -> f64 {
    let h = surface.h();
    let n = f.len();
    if at_start {
        (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    } else {
        (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
    }
}
