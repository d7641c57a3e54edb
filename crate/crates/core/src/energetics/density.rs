use crate::error::{Error, Result};

/// Energy per unit area as a function of `(2H, K)`.
pub trait EnergyDensity {
    fn name(&self) -> &str;
    fn value(&self, two_h: f64, k: f64) -> f64;
    /// `dE / d(2H)`.
    fn d_two_h(&self, two_h: f64, k: f64) -> f64;
    /// `dE / dK`.
    fn d_k(&self, two_h: f64, k: f64) -> f64;
}

/// Energy per unit length of a boundary curve as a function of its normal
/// and geodesic curvature.
pub trait EdgeEnergy {
    fn name(&self) -> &str;
    fn value(&self, kn: f64, kg: f64) -> f64;
    fn d_kn(&self, kn: f64, kg: f64) -> f64;
    fn d_kg(&self, kn: f64, kg: f64) -> f64;
}

/// `(kc/2)(2H + c0)^2 + kbar K + lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Helfrich {
    pub kc: f64,
    pub c0: f64,
    pub kbar: f64,
    pub lambda: f64,
}

impl EnergyDensity for Helfrich {
    fn name(&self) -> &str {
        "helfrich"
    }
    fn value(&self, two_h: f64, k: f64) -> f64 {
        0.5 * self.kc * (two_h + self.c0).powi(2) + self.kbar * k + self.lambda
    }
    fn d_two_h(&self, two_h: f64, _k: f64) -> f64 {
        self.kc * (two_h + self.c0)
    }
    fn d_k(&self, _two_h: f64, _k: f64) -> f64 {
        self.kbar
    }
}

/// Constant surface energy `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoapFilm {
    pub lambda: f64,
}

impl EnergyDensity for SoapFilm {
    fn name(&self) -> &str {
        "soapfilm"
    }
    fn value(&self, _two_h: f64, _k: f64) -> f64 {
        self.lambda
    }
    fn d_two_h(&self, _two_h: f64, _k: f64) -> f64 {
        0.0
    }
    fn d_k(&self, _two_h: f64, _k: f64) -> f64 {
        0.0
    }
}

/// Graphene sheet: `(kc/2)(2H)^2 + lambda`, the source of the graphite shape
/// equation `lap H + 2H(H^2 - K) - lambda H / kc = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Graphite {
    pub kc: f64,
    pub lambda: f64,
}

impl EnergyDensity for Graphite {
    fn name(&self) -> &str {
        "graphite"
    }
    fn value(&self, two_h: f64, _k: f64) -> f64 {
        0.5 * self.kc * two_h * two_h + self.lambda
    }
    fn d_two_h(&self, two_h: f64, _k: f64) -> f64 {
        self.kc * two_h
    }
    fn d_k(&self, _two_h: f64, _k: f64) -> f64 {
        0.0
    }
}

type Fn2 = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A user-supplied density given as three closures.
pub struct CustomDensity {
    name: String,
    value: Fn2,
    d_two_h: Fn2,
    d_k: Fn2,
}

impl CustomDensity {
    pub fn new(
        name: impl Into<String>,
        value: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        d_two_h: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        d_k: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        CustomDensity {
            name: name.into(),
            value: Box::new(value),
            d_two_h: Box::new(d_two_h),
            d_k: Box::new(d_k),
        }
    }
}

impl EnergyDensity for CustomDensity {
    fn name(&self) -> &str {
        &self.name
    }
    fn value(&self, two_h: f64, k: f64) -> f64 {
        (self.value)(two_h, k)
    }
    fn d_two_h(&self, two_h: f64, k: f64) -> f64 {
        (self.d_two_h)(two_h, k)
    }
    fn d_k(&self, two_h: f64, k: f64) -> f64 {
        (self.d_k)(two_h, k)
    }
}

/// Constant line tension `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineTension {
    pub gamma: f64,
}

impl EdgeEnergy for LineTension {
    fn name(&self) -> &str {
        "line-tension"
    }
    fn value(&self, _kn: f64, _kg: f64) -> f64 {
        self.gamma
    }
    fn d_kn(&self, _kn: f64, _kg: f64) -> f64 {
        0.0
    }
    fn d_kg(&self, _kn: f64, _kg: f64) -> f64 {
        0.0
    }
}

/// A user-supplied edge energy given as three closures.
pub struct CustomEdgeEnergy {
    name: String,
    value: Fn2,
    d_kn: Fn2,
    d_kg: Fn2,
}

impl CustomEdgeEnergy {
    pub fn new(
        name: impl Into<String>,
        value: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        d_kn: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        d_kg: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        CustomEdgeEnergy {
            name: name.into(),
            value: Box::new(value),
            d_kn: Box::new(d_kn),
            d_kg: Box::new(d_kg),
        }
    }
}

impl EdgeEnergy for CustomEdgeEnergy {
    fn name(&self) -> &str {
        &self.name
    }
    fn value(&self, kn: f64, kg: f64) -> f64 {
        (self.value)(kn, kg)
    }
    fn d_kn(&self, kn: f64, kg: f64) -> f64 {
        (self.d_kn)(kn, kg)
    }
    fn d_kg(&self, kn: f64, kg: f64) -> f64 {
        (self.d_kg)(kn, kg)
    }
}

/// Compare an analytic partial with a centred difference of `f`.
fn partial_matches(f: &dyn Fn(f64) -> f64, x: f64, analytic: f64, rtol: f64) -> bool {
    let step = 1e-5 * x.abs().max(1.0);
    let fd = (f(x + step) - f(x - step)) / (2.0 * step);
    // rounding in the difference quotient
    let floor = 100.0 * f64::EPSILON * (f(x).abs() + 1.0) / step;
    (fd - analytic).abs() <= rtol * analytic.abs().max(fd.abs()) + floor
}

/// Verify the partials of `e` against centred finite differences at the given
/// `(2H, K)` points.
pub fn check_partials(e: &dyn EnergyDensity, points: &[(f64, f64)], rtol: f64) -> Result<()> {
    for &(two_h, k) in points {
        let ok_h = partial_matches(&|x| e.value(x, k), two_h, e.d_two_h(two_h, k), rtol);
        let ok_k = partial_matches(&|x| e.value(two_h, x), k, e.d_k(two_h, k), rtol);
        if !(ok_h && ok_k) {
            return Err(Error::domain(format!(
                "energy density '{}' has partials inconsistent with its value at (2H, K) = ({two_h}, {k})",
                e.name()
            )));
        }
    }
    Ok(())
}

/// Verify the partials of an edge energy at the given `(kn, kg)` points.
pub fn check_edge_partials(g: &dyn EdgeEnergy, points: &[(f64, f64)], rtol: f64) -> Result<()> {
    for &(kn, kg) in points {
        let ok_n = partial_matches(&|x| g.value(x, kg), kn, g.d_kn(kn, kg), rtol);
        let ok_g = partial_matches(&|x| g.value(kn, x), kg, g.d_kg(kn, kg), rtol);
        if !(ok_n && ok_g) {
            return Err(Error::domain(format!(
                "edge energy '{}' has partials inconsistent with its value at (kn, kg) = ({kn}, {kg})",
                g.name()
            )));
        }
    }
    Ok(())
}
