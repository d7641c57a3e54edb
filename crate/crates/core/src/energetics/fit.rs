//! Least-squares recovery of the loading `(p, lambda)` that makes a given
//! closed surface solve the shape equation.
//!
//! The shape equation is affine in `(p, lambda)`:
//! `r_i = b_i(c0) + p - 2 lambda H_i`, so for fixed `c0` the best loading in
//! the least-squares sense solves a 2x2 system of normal equations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{curvatures, laplace_beltrami, AxisymSurface, Topology};

/// Best loading for one spontaneous curvature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoadingFit {
    pub c0: f64,
    pub p: f64,
    pub lambda: f64,
    /// Largest remaining residual over the distinct samples.
    pub linf: f64,
    /// Root mean square of the remaining residual over the distinct samples.
    pub rms: f64,
}

/// Geometry-dependent part of the fit, computed once per surface.
pub struct LoadingProblem {
    kc: f64,
    mean: Vec<f64>,
    gauss: Vec<f64>,
    lap_two_h: Vec<f64>,
}

impl LoadingProblem {
    pub fn new(surface: &AxisymSurface, kc: f64) -> Result<Self> {
        if surface.topology().has_edges() {
            return Err(Error::domain("loading fit needs a closed or tube surface"));
        }
        if !(kc > 0.0 && kc.is_finite()) {
            return Err(Error::domain("kc must be positive"));
        }
        let curv = curvatures(surface)?;
        let lap = laplace_beltrami(surface, &curv.two_h())?;
        let m = match surface.topology() {
            Topology::Tube => surface.len() - 1,
            _ => surface.len(),
        };
        Ok(LoadingProblem {
            kc,
            mean: curv.mean[..m].to_vec(),
            gauss: curv.gauss[..m].to_vec(),
            lap_two_h: lap[..m].to_vec(),
        })
    }

    fn base(&self, c0: f64) -> impl Iterator<Item = f64> + '_ {
        let kc = self.kc;
        self.mean
            .iter()
            .zip(&self.gauss)
            .zip(&self.lap_two_h)
            .map(move |((&h, &k), &lap)| {
                kc * lap + kc * (2.0 * h + c0) * (2.0 * h * h - c0 * h - 2.0 * k)
            })
    }

    /// Best `(p, lambda)` at spontaneous curvature `c0`.
    pub fn fit(&self, c0: f64) -> Result<LoadingFit> {
        let n = self.mean.len() as f64;
        let s_h: f64 = self.mean.iter().map(|h| 2.0 * h).sum();
        let s_hh: f64 = self.mean.iter().map(|h| 4.0 * h * h).sum();
        let det = n * s_hh - s_h * s_h;
        if det <= 1e-10 * n * s_hh.max(f64::MIN_POSITIVE) {
            return Err(Error::numerical(
                "rank-deficient loading fit: mean curvature is constant on this surface",
            ));
        }
        let (mut s_b, mut s_bh) = (0.0, 0.0);
        for (b, h) in self.base(c0).zip(&self.mean) {
            s_b += b;
            s_bh += 2.0 * h * b;
        }
        // [n, -S_h; -S_h, S_hh] [p; lambda] = [-S_b; S_bh]
        let p = (-s_b * s_hh + s_h * s_bh) / det;
        let lambda = (n * s_bh - s_h * s_b) / det;
        let (mut linf, mut sq) = (0.0f64, 0.0);
        for (b, h) in self.base(c0).zip(&self.mean) {
            let r = b + p - 2.0 * lambda * h;
            linf = linf.max(r.abs());
            sq += r * r;
        }
        Ok(LoadingFit {
            c0,
            p,
            lambda,
            linf,
            rms: (sq / n).sqrt(),
        })
    }

    /// Scan `c0` over `n` equally spaced values of `[lo, hi]`, then refine the
    /// best one by golden-section search on the L-infinity residual.
    pub fn sweep(&self, lo: f64, hi: f64, n: usize) -> Result<LoadingFit> {
        if !(hi > lo) || n < 2 {
            return Err(Error::domain(
                "c0 sweep needs hi > lo and at least two points",
            ));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let mut best = self.fit(lo)?;
        for j in 1..n {
            let f = self.fit(lo + j as f64 * step)?;
            if f.linf < best.linf {
                best = f;
            }
        }
        let (mut a, mut b) = ((best.c0 - step).max(lo), (best.c0 + step).min(hi));
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = b - ratio * (b - a);
        let mut x2 = a + ratio * (b - a);
        let mut f1 = self.fit(x1)?;
        let mut f2 = self.fit(x2)?;
        for _ in 0..80 {
            if f1.linf < f2.linf {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - ratio * (b - a);
                f1 = self.fit(x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + ratio * (b - a);
                f2 = self.fit(x2)?;
            }
        }
        for f in [f1, f2] {
            if f.linf < best.linf {
                best = f;
            }
        }
        Ok(best)
    }
}

/// Least-squares `(p, lambda)` for the shape equation on `surface` at the
/// given `c0` and `kc`, with the remaining residual norm.
pub fn fit_loading(surface: &AxisymSurface, c0: f64, kc: f64) -> Result<LoadingFit> {
    LoadingProblem::new(surface, kc)?.fit(c0)
}

/// Best loading fit over a sweep of `c0` in `[lo, hi]`.
pub fn sweep_loading(
    surface: &AxisymSurface,
    kc: f64,
    (lo, hi): (f64, f64),
    n: usize,
) -> Result<LoadingFit> {
    LoadingProblem::new(surface, kc)?.sweep(lo, hi, n)
}
