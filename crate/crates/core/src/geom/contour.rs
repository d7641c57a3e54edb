//! Tracing profiles given implicitly by `sin psi = g(rho)`.
//!
//! Such a contour is a graph over `rho` until its tangent turns vertical, where
//! `tan psi` and `ds/drho` blow up. Differentiating `sin psi = g(rho)` along
//! the curve gives `dpsi/ds = g'(rho)`, so in arclength form
//!
//! ```text
//! rho' = cos psi,  psi' = g'(rho),  z' = sin psi
//! ```
//!
//! which is regular at vertical tangents. It is, however, singular on the axis
//! whenever `g'` has a logarithmic singularity at `rho = 0`. The tracer
//! therefore uses the graph form near the pole (adaptive Gauss-Kronrod for
//! `s(rho) = integral 1/cos psi` and `z(rho) = integral tan psi`, inverted by
//! Newton) and switches to the arclength ODE (classical RK4 with fine
//! substeps) once `|sin psi|` exceeds one half.

use super::ProfileSample;
use crate::error::{Error, Result};
use crate::quadrature;

/// Where a traced contour stops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphStop {
    /// At the given distance from the axis.
    Radius(f64),
    /// At the first vertical tangent (`|psi| = pi/2`), giving up after
    /// `max_length` of arclength.
    VerticalTangent { max_length: f64 },
}

const SWITCH_SIN: f64 = 0.5;
const SUBSTEPS: usize = 16;
const QUAD_TOL: f64 = 1e-15;

type State = [f64; 3];

fn rk4_step<D: Fn(f64) -> f64 + ?Sized>(dg: &D, y: State, dt: f64) -> State {
    let f = |y: &State| -> State { [y[1].cos(), dg(y[0]), y[1].sin()] };
    let add = |y: &State, k: &State, c: f64| [y[0] + c * k[0], y[1] + c * k[1], y[2] + c * k[2]];
    let k1 = f(&y);
    let k2 = f(&add(&y, &k1, 0.5 * dt));
    let k3 = f(&add(&y, &k2, 0.5 * dt));
    let k4 = f(&add(&y, &k3, dt));
    [
        y[0] + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        y[2] + dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    ]
}

fn integrate_to<D: Fn(f64) -> f64>(dg: &D, mut y: State, span: f64, max_dt: f64) -> State {
    if span <= 0.0 {
        return y;
    }
    let m = (span / max_dt).ceil().max(1.0) as usize;
    let dt = span / m as f64;
    for _ in 0..m {
        y = rk4_step(dg, y, dt);
    }
    y
}

/// Trace `sin psi = g(rho)` from the pole (`rho = 0`, `z = 0`) outwards on a
/// uniform arclength grid with step close to `h`.
///
/// `g(0)` must vanish (regular pole). Returns samples in pole-to-rim order.
pub fn trace_graph_profile(
    g: &dyn Fn(f64) -> f64,
    dg: &dyn Fn(f64) -> f64,
    stop: GraphStop,
    h: f64,
) -> Result<Vec<ProfileSample>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain("grid step h must be positive"));
    }
    if g(0.0).abs() > 1e-12 {
        return Err(Error::profile(
            "pole irregularity: sin psi must vanish on the axis",
        ));
    }
    let rho_cap = match stop {
        GraphStop::Radius(r) => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::domain("stop radius must be positive"));
            }
            // domain check on a fine scan of [0, r]
            let m = 4000;
            if let Some(bad) = (0..=m)
                .map(|k| r * k as f64 / m as f64)
                .find(|&x| g(x).abs() > 1.0)
            {
                return Err(Error::domain(format!(
                    "|sin psi| > 1 at rho = {bad}: requested radius exceeds the validity domain"
                )));
            }
            r
        }
        GraphStop::VerticalTangent { max_length } => max_length,
    };

    // Graph-form region [0, rho_a] where |g| < SWITCH_SIN.
    let scan = (h / 4.0).min(rho_cap / 64.0);
    let mut rho_a = 0.0;
    loop {
        let next = (rho_a + scan).min(rho_cap);
        if g(next).abs() >= SWITCH_SIN || next <= rho_a {
            break;
        }
        rho_a = next;
        if rho_a >= rho_cap {
            break;
        }
    }
    if rho_a <= 0.0 {
        return Err(Error::domain(
            "contour leaves the graph region immediately at the pole",
        ));
    }
    let w = |x: f64| 1.0 / (1.0 - g(x).powi(2)).sqrt();
    let wz = |x: f64| g(x) / (1.0 - g(x).powi(2)).sqrt();
    let s_a = quadrature::integrate(w, 0.0, rho_a, QUAD_TOL)?;
    let z_a = quadrature::integrate(wz, 0.0, rho_a, QUAD_TOL)?;
    let y_a: State = [rho_a, g(rho_a).asin(), z_a];
    let graph_only = matches!(stop, GraphStop::Radius(r) if rho_a >= r);

    let max_dt = h / SUBSTEPS as f64;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let event = |y: &State| -> (f64, f64) {
        match stop {
            GraphStop::Radius(r) => (y[0] - r, y[1].cos()),
            GraphStop::VerticalTangent { .. } => (y[1].abs() - half_pi, y[1].signum() * dg(y[0])),
        }
    };

    // Pass 1: total length.
    let total = if graph_only {
        s_a
    } else {
        let mut y = y_a;
        let mut steps = 0usize;
        let mut s = s_a;
        loop {
            if let GraphStop::Radius(_) = stop {
                if y[1].abs() >= half_pi {
                    return Err(Error::domain(
                        "contour turns back before reaching the requested radius",
                    ));
                }
            }
            let next = rk4_step(dg, y, max_dt);
            if event(&next).0 >= 0.0 {
                // Newton on the partial step length
                let (e0, e1) = (event(&y).0, event(&next).0);
                let mut tau = max_dt * e0 / (e0 - e1);
                for _ in 0..50 {
                    let yt = rk4_step(dg, y, tau);
                    let (e, de) = event(&yt);
                    if de == 0.0 {
                        break;
                    }
                    let step = e / de;
                    tau -= step;
                    if step.abs() < 1e-16 * (1.0 + s) {
                        break;
                    }
                }
                break s + tau;
            }
            y = next;
            steps += 1;
            s = s_a + steps as f64 * max_dt;
            if s - s_a > rho_cap.max(1.0) * 50.0 || !y.iter().all(|v| v.is_finite()) {
                return Err(Error::numerical(
                    "contour did not reach its stop condition (asymptotic approach to a vertical tangent?)",
                ));
            }
        }
    };

    // Pass 2: uniform grid.
    let n = ((total / h).round() as usize).max(4);
    let step = total / n as f64;
    let mut samples = Vec::with_capacity(n + 1);
    let (mut rho_prev, mut s_prev, mut z_prev) = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut ode: Option<(f64, State)> = None;
    for i in 0..=n {
        let s = if i == n { total } else { i as f64 * step };
        let sample = if s <= s_a {
            let mut rho = rho_prev + (s - s_prev) * (1.0 - g(rho_prev).powi(2)).sqrt();
            rho = rho.min(rho_a);
            for _ in 0..60 {
                let seg = quadrature::integrate(w, rho_prev, rho, QUAD_TOL)?;
                let delta = (s_prev + seg - s) / w(rho);
                rho -= delta;
                if delta.abs() <= 1e-15 * (1.0 + rho.abs()) {
                    break;
                }
            }
            let z = z_prev + quadrature::integrate(wz, rho_prev, rho, QUAD_TOL)?;
            rho_prev = rho;
            s_prev = s;
            z_prev = z;
            ProfileSample {
                s,
                rho,
                z,
                psi: g(rho).asin(),
            }
        } else {
            let (s0, y0) = ode.unwrap_or((s_a, y_a));
            let y = integrate_to(&dg, y0, s - s0, max_dt);
            ode = Some((s, y));
            ProfileSample {
                s,
                rho: y[0],
                z: y[2],
                psi: y[1],
            }
        };
        samples.push(sample);
    }
    samples[0].rho = 0.0;
    samples[0].psi = 0.0;
    let last = samples.len() - 1;
    match stop {
        GraphStop::Radius(r) => samples[last].rho = r,
        GraphStop::VerticalTangent { .. } => {
            samples[last].psi = samples[last].psi.signum() * half_pi;
        }
    }
    Ok(samples)
}
