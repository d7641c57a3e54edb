use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use biomembrane::geom::{write_csv, AxisymSurface};
use biomembrane::{Error, Result};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn from_path(path: &Path) -> Result<Format> {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            Some("svg") => Ok(Format::Svg),
            _ => Err(Error::Domain(format!(
                "cannot infer the output format of '{}' (use .csv, .json or .svg)",
                path.display()
            ))),
        }
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// Write `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(io)?;
    Ok(())
}

/// Pretty JSON with a trailing newline. Floats use the shortest
/// representation that round-trips, so output is byte-for-byte reproducible.
pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value).map_err(io)?;
    v.push(b'\n');
    Ok(v)
}

pub fn csv_bytes(surface: &AxisymSurface) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(surface, &mut buf)?;
    Ok(buf)
}

/// Cross-section of the surface of revolution through its axis: the
/// meridian and its mirror image `rho -> -rho`, with `z` pointing up.
pub fn svg(surface: &AxisymSurface) -> Result<String> {
    let pts = surface.samples();
    if pts.is_empty() {
        return Err(Error::Domain("cannot draw an empty contour".into()));
    }
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in pts {
        xmin = xmin.min(-p.rho);
        xmax = xmax.max(p.rho);
        ymin = ymin.min(-p.z);
        ymax = ymax.max(-p.z);
    }
    let span = (xmax - xmin).max(ymax - ymin).max(1e-12);
    let pad = 0.05 * span;
    let stroke = span / 300.0;
    let polyline = |sign: f64| {
        let mut s = String::new();
        for (i, p) in pts.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{:.6},{:.6}", sign * p.rho, -p.z);
        }
        s
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        xmin - pad,
        ymin - pad,
        xmax - xmin + 2.0 * pad,
        ymax - ymin + 2.0 * pad
    );
    let _ = writeln!(out, "<title>{}</title>", surface.label());
    for sign in [1.0, -1.0] {
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="black" stroke-width="{stroke:.6}" points="{}"/>"#,
            polyline(sign)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Emit `bytes` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).map_err(io)?;
            out.flush().map_err(io)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use biomembrane::solutions::{make_sphere, make_torus};

    #[test]
    fn svg_has_two_polylines_and_view_box() {
        let s = svg(&make_torus(2.0, 1.0, 0.1).unwrap()).unwrap();
        assert_eq!(s.matches("<polyline").count(), 2);
        assert!(s.contains("viewBox"));
        assert!(!s.contains("href"));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            Format::from_path(Path::new("a/b.SVG")).unwrap(),
            Format::Svg
        );
        assert!(Format::from_path(Path::new("a/b.txt")).is_err());
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"old").unwrap();
        write_atomic(&path, &csv_bytes(&make_sphere(1.0, 0.1).unwrap()).unwrap()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("s,rho,z,psi"));
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
