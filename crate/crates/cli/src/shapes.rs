use std::f64::consts::SQRT_2;

use biomembrane::geom::AxisymSurface;
use biomembrane::solutions::{
    make_biconcave, make_biconcave_disk, make_catenoid, make_cylinder, make_disk, make_hemisphere,
    make_perturbed_sphere, make_sphere, make_torus, torus_band, BiconcaveSpec,
};
use biomembrane::Result;
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    Sphere,
    Hemisphere,
    Biconcave,
    BiconcaveDisk,
    Torus,
    Band,
    Cylinder,
    Catenoid,
    Disk,
    Perturbed,
}

/// Accepts a number or `sqrt2`.
pub fn parse_aspect(s: &str) -> std::result::Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "sqrt2" | "sqrt(2)" | "√2" => Ok(SQRT_2),
        t => t
            .parse::<f64>()
            .map_err(|e| format!("'{s}' is neither a number nor 'sqrt2': {e}")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    #[arg(long, value_enum)]
    pub shape: ShapeKind,
    /// Radius of sphere, hemisphere, cylinder or disk
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Torus or band aspect ratio R/r (a number or `sqrt2`)
    #[arg(long = "Rr", value_parser = parse_aspect, default_value = "sqrt2")]
    pub aspect: f64,
    /// Tube radius r of torus or band
    #[arg(long = "r", default_value_t = 1.0)]
    pub tube: f64,
    /// Band half-width in the meridian angle u (band is |u| <= u-edge)
    #[arg(long, default_value_t = 1.0)]
    pub u_edge: f64,
    /// Radius of the biconcave flat point
    #[arg(long = "rhoB", default_value_t = 1.0)]
    pub rho_b: f64,
    /// End radius of the biconcave disk (default: the equator)
    #[arg(long)]
    pub rho_end: Option<f64>,
    /// Cylinder length
    #[arg(long, default_value_t = 4.0)]
    pub length: f64,
    /// Catenoid neck radius
    #[arg(long, default_value_t = 1.0)]
    pub neck: f64,
    /// Catenoid meridian half-length
    #[arg(long, default_value_t = 1.5)]
    pub half_length: f64,
    /// Tangent-angle amplitudes of the perturbed sphere, comma separated
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    pub amplitudes: Vec<f64>,
    /// Arclength grid step
    #[arg(long, default_value_t = 1e-2)]
    pub h: f64,
}

impl ShapeArgs {
    /// Build the surface; `c0` is the spontaneous curvature used by the
    /// biconcave family.
    pub fn build(&self, c0: f64) -> Result<AxisymSurface> {
        let h = self.h;
        match self.shape {
            ShapeKind::Sphere => make_sphere(self.radius, h),
            ShapeKind::Hemisphere => make_hemisphere(self.radius, h),
            ShapeKind::Biconcave => make_biconcave(&BiconcaveSpec::new(c0, self.rho_b), h),
            ShapeKind::BiconcaveDisk => {
                make_biconcave_disk(&BiconcaveSpec::new(c0, self.rho_b), self.rho_end, h)
            }
            ShapeKind::Torus => make_torus(self.aspect * self.tube, self.tube, h),
            ShapeKind::Band => torus_band(
                self.aspect * self.tube,
                self.tube,
                (-self.u_edge, self.u_edge),
                h,
            ),
            ShapeKind::Cylinder => make_cylinder(self.radius, self.length, h),
            ShapeKind::Catenoid => {
                make_catenoid(self.neck, (-self.half_length, self.half_length), h)
            }
            ShapeKind::Disk => make_disk(self.radius, h),
            ShapeKind::Perturbed => make_perturbed_sphere(self.radius, &self.amplitudes, h),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aspect_parsing() {
        assert_eq!(parse_aspect("sqrt2").unwrap(), SQRT_2);
        assert_eq!(parse_aspect("1.7").unwrap(), 1.7);
        assert!(parse_aspect("two").is_err());
    }
}
