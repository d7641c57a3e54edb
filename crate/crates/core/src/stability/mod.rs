//! Mechanical stability of a spherical membrane with a skeleton.
//!
//! The bilayer carries the energy `(kc/2)(2H + c0)^2 + lambda` and the
//! skeleton `(kd/2)[(2J)^2 - Q]` of the in-plane strain. A sphere of radius
//! `R` with homogeneous strain `eps` is in equilibrium when
//! `p R^2 + (2 lambda + 3 kd eps) R + kc c0 (c0 R - 2) = 0`.
//!
//! Expanding the normal displacement and the in-plane potential in spherical
//! harmonics, the second variation decouples into one 2x2 block per degree
//! `l` over the amplitudes `(a_lm, b_lm)`, with `L = l(l+1)`:
//!
//! ```text
//! M_aa = 2 {3 kd + (L - 2)[L kc / R^2 - kc c0 / R - p R / 2]}
//! M_ab = -3 kd L / R
//! M_bb = (kd / R^2)(2 L^2 - L)
//! ```
//!
//! For `l >= 2` the block is positive definite exactly when
//! `p < p_l = 3 kd / ((2L - 1) R) + 2 kc (L - c0 R) / R^3`.

mod strain;

pub use strain::{cell_shape_residual, in_plane_strain_residuals, SkeletonStrain};

use serde::Serialize;

use crate::energetics::MaterialParams;
use crate::error::{Error, Result};
use crate::units;

/// Default largest degree scanned by [`critical_pressure`].
pub const DEFAULT_L_MAX: usize = 200;

fn check_sphere(r: f64, params: &MaterialParams) -> Result<()> {
    params.validate()?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!(
            "sphere radius R = {r} must be positive"
        )));
    }
    Ok(())
}

/// Homogeneous strain that puts a sphere of radius `r` in equilibrium.
///
/// Returns `Ok(None)` when `kd = 0` and the strain-free identity
/// `p R^2 + 2 lambda R + kc c0 (c0 R - 2) = 0` holds (the strain is then
/// undetermined), and a domain error when `kd = 0` and it does not.
pub fn equilibrium_strain(r: f64, params: &MaterialParams) -> Result<Option<f64>> {
    check_sphere(r, params)?;
    let MaterialParams {
        kc,
        c0,
        lambda,
        p,
        kd,
        ..
    } = *params;
    let rest = p * r * r + 2.0 * lambda * r + kc * c0 * (c0 * r - 2.0);
    if kd == 0.0 {
        let scale = (p * r * r).abs()
            + (2.0 * lambda * r).abs()
            + (kc * c0 * c0 * r).abs()
            + (2.0 * kc * c0).abs();
        if rest.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Ok(None);
        }
        return Err(Error::domain(format!(
            "strain-free condition violated: with kd = 0 the sphere needs p R^2 + 2 lambda R + kc c0 (c0 R - 2) = 0, got {rest:e}"
        )));
    }
    Ok(Some(-rest / (3.0 * kd * r)))
}

/// A spherical membrane in equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereState {
    pub r: f64,
    /// Homogeneous strain; zero when undetermined (`kd = 0`).
    pub epsilon: f64,
    pub strain_determined: bool,
    pub params: MaterialParams,
}

impl SphereState {
    pub fn new(r: f64, params: MaterialParams) -> Result<Self> {
        let eps = equilibrium_strain(r, &params)?;
        let state = SphereState {
            r,
            epsilon: eps.unwrap_or(0.0),
            strain_determined: eps.is_some(),
            params,
        };
        let (lhs, scale) = state.equilibrium_identity();
        if lhs.abs() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::numerical(
                "sphere equilibrium identity not satisfied",
            ));
        }
        Ok(state)
    }

    /// `p R^2 + (2 lambda + 3 kd eps) R + kc c0 (c0 R - 2)` and the sum of the
    /// magnitudes of its terms.
    pub fn equilibrium_identity(&self) -> (f64, f64) {
        let MaterialParams {
            kc,
            c0,
            lambda,
            p,
            kd,
            ..
        } = self.params;
        let r = self.r;
        let terms = [
            p * r * r,
            2.0 * lambda * r,
            3.0 * kd * self.epsilon * r,
            kc * c0 * c0 * r,
            -2.0 * kc * c0,
        ];
        (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
    }
}

/// Quadratic form of the second variation in degree `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeMatrix {
    pub l: usize,
    /// Number of orders `m` sharing this block.
    pub degeneracy: usize,
    /// Symmetric matrix over `(a_lm, b_lm)`.
    pub m: [[f64; 2]; 2],
}

impl ModeMatrix {
    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        let [[a, b], [_, d]] = self.m;
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        mean - half_gap
    }

    pub fn det(&self) -> f64 {
        let [[a, b], [_, d]] = self.m;
        a * d - b * b
    }

    pub fn is_positive_definite(&self) -> bool {
        self.m[0][0] > 0.0 && self.det() > 0.0
    }
}

/// Second-variation block of degree `l` about `state` at load `state.params.p`.
pub fn mode_matrix(l: usize, state: &SphereState) -> ModeMatrix {
    mode_matrix_at(l, state.r, &state.params, state.params.p)
}

fn mode_matrix_at(l: usize, r: f64, params: &MaterialParams, p: f64) -> ModeMatrix {
    let ll = (l * (l + 1)) as f64;
    let (kc, c0, kd) = (params.kc, params.c0, params.kd);
    let aa = 2.0 * (3.0 * kd + (ll - 2.0) * (ll * kc / (r * r) - kc * c0 / r - 0.5 * p * r));
    let ab = -3.0 * kd * ll / r;
    let bb = kd / (r * r) * (2.0 * ll * ll - ll);
    ModeMatrix {
        l,
        degeneracy: 2 * l + 1,
        m: [[aa, ab], [ab, bb]],
    }
}

/// Load above which the degree-`l` block loses positive definiteness.
pub fn p_threshold(l: usize, r: f64, params: &MaterialParams) -> Result<f64> {
    check_sphere(r, params)?;
    if l < 2 {
        return Err(Error::domain(format!(
            "mode thresholds are defined for l >= 2 (got l = {l})"
        )));
    }
    let ll = (l * (l + 1)) as f64;
    Ok(3.0 * params.kd / ((2.0 * ll - 1.0) * r)
        + 2.0 * params.kc * (ll - params.c0 * r) / r.powi(3))
}

/// Coefficient of the tangential rotational mode `chi = Y_lm` in the
/// positive part of the second variation: `(kd/4)(L/R^2)(L - 2)/R^2`.
pub fn g2_mode(l: usize, kd: f64, r: f64) -> f64 {
    let ll = (l * (l + 1)) as f64;
    0.25 * kd * (ll / (r * r)) * (ll - 2.0) / (r * r)
}

/// Which closed form gives the critical pressure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `3 kd R^2 < 121 kc`: the minimum is the `l = 2` threshold.
    SmallKd,
    /// `3 kd R^2 > 121 kc`: the continuous minimum over `l`.
    LargeKd,
    /// `3 kd R^2 = 121 kc`: both forms coincide.
    Boundary,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::SmallKd => "small-kd",
            Branch::LargeKd => "large-kd",
            Branch::Boundary => "boundary",
        }
    }
}

/// `3 kd / (11 R) + 2 kc (6 - c0 R) / R^3`.
pub fn small_kd_formula(r: f64, params: &MaterialParams) -> f64 {
    3.0 * params.kd / (11.0 * r) + 2.0 * params.kc * (6.0 - params.c0 * r) / r.powi(3)
}

/// `2 sqrt(3 kd kc) / R^2 + kc (1 - 2 c0 R) / R^3`.
pub fn large_kd_formula(r: f64, params: &MaterialParams) -> f64 {
    2.0 * (3.0 * params.kd * params.kc).sqrt() / (r * r)
        + params.kc * (1.0 - 2.0 * params.c0 * r) / r.powi(3)
}

/// One mode threshold for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeThreshold {
    pub l: usize,
    /// `k_B T / nm^3`.
    pub p: f64,
}

/// Result of the critical-pressure analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub r: f64,
    pub params: MaterialParams,
    pub branch: Branch,
    /// Critical pressure from the closed form of the selected branch.
    pub p_c: f64,
    /// Minimum of `p_l` over integer `l` in `[2, l_max]`.
    pub p_c_integer: f64,
    /// Degree attaining `p_c_integer`.
    pub l_star: usize,
    pub l_max: usize,
    pub thresholds: Vec<ModeThreshold>,
    /// Critical pressure of the bare bilayer (`kd = 0`).
    pub p_c_bending_only: f64,
    /// Smallest eigenvalue of the `l = 1` block at the current load. The block
    /// is singular (rigid translations), so this is zero up to rounding.
    pub l1_min_eigenvalue: f64,
    /// Whether every block `l in [2, l_max]` is positive definite at `params.p`.
    pub stable: bool,
    pub first_unstable_l: Option<usize>,
    pub warnings: Vec<String>,
}

impl StabilityReport {
    pub fn p_c_pa(&self, kbt_j: f64) -> f64 {
        units::pressure_to_pa(self.p_c, kbt_j)
    }
}

/// Whether all blocks `l in [2, l_max]` are positive definite at load `p`,
/// and the first one that is not.
pub fn is_stable(
    p: f64,
    r: f64,
    params: &MaterialParams,
    l_max: usize,
) -> Result<(bool, Option<usize>)> {
    check_sphere(r, params)?;
    if l_max < 2 {
        return Err(Error::domain("l_max must be at least 2"));
    }
    let first = (2..=l_max).find(|&l| !mode_matrix_at(l, r, params, p).is_positive_definite());
    Ok((first.is_none(), first))
}

/// Critical pressure of a sphere of radius `r`, comparing the closed form of
/// the applicable branch with the minimum over integer degrees.
pub fn critical_pressure(r: f64, params: &MaterialParams, l_max: usize) -> Result<StabilityReport> {
    check_sphere(r, params)?;
    if params.kc <= 0.0 {
        return Err(Error::domain("kc must be positive"));
    }
    if l_max < 2 {
        return Err(Error::domain("l_max must be at least 2"));
    }
    let lhs = 3.0 * params.kd * r * r;
    let rhs = 121.0 * params.kc;
    let branch = if lhs < rhs {
        Branch::SmallKd
    } else if lhs > rhs {
        Branch::LargeKd
    } else {
        Branch::Boundary
    };
    let p_c = match branch {
        Branch::SmallKd | Branch::Boundary => small_kd_formula(r, params),
        Branch::LargeKd => large_kd_formula(r, params),
    };
    let thresholds = (2..=l_max)
        .map(|l| p_threshold(l, r, params).map(|p| ModeThreshold { l, p }))
        .collect::<Result<Vec<_>>>()?;
    let min = thresholds
        .iter()
        .min_by(|a, b| a.p.total_cmp(&b.p))
        .copied()
        .ok_or_else(|| Error::numerical("no thresholds computed"))?;
    let mut warnings = Vec::new();
    if min.l == l_max {
        warnings.push(format!(
            "minimum of p_l reached at l_max = {l_max}; the scan may be too short"
        ));
    }
    let rel_gap = (min.p - p_c).abs() / p_c.abs().max(f64::MIN_POSITIVE);
    if rel_gap > 1e-12 {
        warnings.push(format!(
            "integer minimum p_{} differs from the closed form by {:.3e} (relative)",
            min.l, rel_gap
        ));
    }
    let bare = MaterialParams { kd: 0.0, ..*params };
    let (stable, first_unstable_l) = is_stable(params.p, r, params, l_max)?;
    Ok(StabilityReport {
        r,
        params: *params,
        branch,
        p_c,
        p_c_integer: min.p,
        l_star: min.l,
        l_max,
        thresholds,
        p_c_bending_only: small_kd_formula(r, &bare),
        l1_min_eigenvalue: mode_matrix_at(1, r, params, params.p).min_eigenvalue(),
        stable,
        first_unstable_l,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::KBT_J_DEFAULT;

    fn cell() -> MaterialParams {
        MaterialParams {
            kc: 20.0,
            kd: 6e-4,
            c0: 1e-3,
            thickness: Some(4.0),
            ..Default::default()
        }
    }

    #[test]
    fn unstressed_sphere_has_zero_strain() {
        let r = 2.5;
        let params = MaterialParams {
            kc: 1.0,
            kd: 0.3,
            c0: 2.0 / r,
            ..Default::default()
        };
        assert_eq!(equilibrium_strain(r, &params).unwrap(), Some(0.0));
    }

    #[test]
    fn strain_free_identity_without_skeleton() {
        let params = MaterialParams {
            kc: 1.0,
            c0: 1.0,
            lambda: 0.5,
            ..Default::default()
        };
        assert_eq!(equilibrium_strain(1.0, &params).unwrap(), None);
        let off = MaterialParams {
            lambda: 0.7,
            ..params
        };
        assert!(matches!(
            equilibrium_strain(1.0, &off),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cell_state_round_trips() {
        let params = MaterialParams {
            p: 1e-7,
            lambda: 1e-5,
            ..cell()
        };
        let s = SphereState::new(1000.0, params).unwrap();
        assert!(s.strain_determined && s.epsilon.is_finite());
        let (lhs, scale) = s.equilibrium_identity();
        assert!(lhs.abs() <= 1e-12 * scale);
    }

    #[test]
    fn low_modes() {
        let params = MaterialParams { p: 0.3, ..cell() };
        let r = 10.0;
        let s = SphereState {
            r,
            epsilon: 0.0,
            strain_determined: true,
            params,
        };
        let m0 = mode_matrix(0, &s);
        let expect =
            2.0 * (3.0 * params.kd - 2.0 * (-params.kc * params.c0 / r - 0.5 * params.p * r));
        assert!((m0.m[0][0] - expect).abs() < 1e-12);
        assert_eq!(m0.m[0][1], 0.0);
        assert_eq!(m0.m[1][1], 0.0);
        let m1 = mode_matrix(1, &s);
        let kd = params.kd;
        assert!((m1.m[0][0] - 6.0 * kd).abs() < 1e-15);
        assert!((m1.m[0][1] + 6.0 * kd / r).abs() < 1e-15);
        assert!((m1.m[1][1] - 6.0 * kd / (r * r)).abs() < 1e-15);
        assert!(m1.det().abs() < 1e-15 * m1.m[0][0] * m1.m[1][1]);
        let bare = SphereState {
            params: MaterialParams { kd: 0.0, ..params },
            ..s
        };
        let m2 = mode_matrix(2, &bare);
        assert!(
            (m2.m[0][0]
                - 8.0
                    * (6.0 * params.kc / (r * r) - params.kc * params.c0 / r - 0.5 * params.p * r))
                .abs()
                < 1e-12
        );
        assert_eq!(m2.m[0][1], 0.0);
        assert_eq!(m2.m[1][1], 0.0);
    }

    #[test]
    fn threshold_examples() {
        let r = 3.0;
        let params = MaterialParams {
            kc: 2.0,
            kd: 0.5,
            c0: 0.2,
            ..Default::default()
        };
        let p2 = p_threshold(2, r, &params).unwrap();
        assert!((p2 - small_kd_formula(r, &params)).abs() < 1e-15);
        let bare = MaterialParams {
            kc: 1.0,
            c0: 1.0 / r,
            ..Default::default()
        };
        assert!((p_threshold(2, r, &bare).unwrap() - 10.0 / r.powi(3)).abs() < 1e-15);
        assert!(p_threshold(1, r, &params).is_err());
    }

    #[test]
    fn g2_values() {
        assert_eq!(g2_mode(0, 1.0, 2.0), 0.0);
        assert_eq!(g2_mode(1, 1.0, 2.0), 0.0);
        let (kd, r) = (0.7, 1.3);
        assert!((g2_mode(2, kd, r) - 6.0 * kd / r.powi(4)).abs() < 1e-15);
        assert!((2..50).all(|l| g2_mode(l, kd, r) > 0.0));
    }

    #[test]
    fn cell_membrane_values() {
        let rep = critical_pressure(1000.0, &cell(), DEFAULT_L_MAX).unwrap();
        assert_eq!(rep.branch, Branch::SmallKd);
        assert_eq!(rep.l_star, 2);
        let pa = rep.p_c_pa(KBT_J_DEFAULT);
        assert!((pa - 1.5053).abs() < 1e-3, "{pa}");
        let bare = units::pressure_to_pa(rep.p_c_bending_only, KBT_J_DEFAULT);
        assert!((bare - 0.828).abs() < 1e-3, "{bare}");
        assert!(rep.stable);
        assert!(rep.l1_min_eigenvalue.abs() < 1e-12 * cell().kd);
    }

    #[test]
    fn seam_is_continuous() {
        let (r, kc) = (5.0, 1.3);
        let kd = 121.0 * kc / (3.0 * r * r);
        let params = MaterialParams {
            kc,
            kd,
            c0: 0.1,
            ..Default::default()
        };
        let a = small_kd_formula(r, &params);
        let b = large_kd_formula(r, &params);
        assert!((a - b).abs() < 1e-12 * a.abs());
        assert!((a - kc * (23.0 - 2.0 * 0.1 * r) / r.powi(3)).abs() < 1e-12 * a.abs());
    }

    #[test]
    fn l_max_warning_in_large_kd_regime() {
        let params = MaterialParams {
            kc: 1.0,
            kd: 1e6,
            ..Default::default()
        };
        let rep = critical_pressure(1.0, &params, 5).unwrap();
        assert_eq!(rep.branch, Branch::LargeKd);
        assert_eq!(rep.l_star, 5);
        assert!(!rep.warnings.is_empty());
    }

    #[test]
    fn stability_straddles_critical_pressure() {
        let params = cell();
        let r = 1000.0;
        let rep = critical_pressure(r, &params, DEFAULT_L_MAX).unwrap();
        let above = is_stable(rep.p_c * (1.0 + 1e-9), r, &params, DEFAULT_L_MAX).unwrap();
        assert_eq!(above, (false, Some(rep.l_star)));
        let below = is_stable(rep.p_c * (1.0 - 1e-9), r, &params, DEFAULT_L_MAX).unwrap();
        assert_eq!(below, (true, None));
        assert!(is_stable(0.0, r, &params, DEFAULT_L_MAX).unwrap().0);
    }
}
