//! CSV profile exchange: header `s,rho,z,psi`, one row per sample.
//!
//! Values are written with Rust's shortest round-trip float formatting, so a
//! write/read cycle reproduces every bit.

use std::io::{Read, Write};

use super::{AxisymSurface, Orientation, ProfileSample, Topology};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 4] = ["s", "rho", "z", "psi"];

pub fn write_csv<W: Write>(surface: &AxisymSurface, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in surface.samples() {
        w.write_record([
            p.s.to_string(),
            p.rho.to_string(),
            p.z.to_string(),
            p.psi.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(
    input: R,
    topology: Topology,
    orientation: Orientation,
) -> Result<AxisymSurface> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().map(str::trim).ne(CSV_HEADER.iter().copied()) {
        return Err(Error::profile(format!(
            "expected CSV header 's,rho,z,psi', found '{}'",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut samples = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |k: usize| -> Result<f64> {
            rec.get(k)
                .ok_or_else(|| {
                    Error::profile(format!("row {}: missing column {}", row + 1, CSV_HEADER[k]))
                })?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::profile(format!("row {}: {e}", row + 1)))
        };
        samples.push(ProfileSample {
            s: field(0)?,
            rho: field(1)?,
            z: field(2)?,
            psi: field(3)?,
        });
    }
    AxisymSurface::from_samples(samples, topology, orientation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::make_torus;

    #[test]
    fn round_trip_is_bit_exact() {
        let t = make_torus(std::f64::consts::SQRT_2, 1.0, 0.05).unwrap();
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("s,rho,z,psi\n"));
        let back = read_csv(buf.as_slice(), Topology::Tube, Orientation::Standard).unwrap();
        assert_eq!(back.samples(), t.samples());
    }

    #[test]
    fn rejects_wrong_header() {
        let data = "s,r,z,psi\n0,1,0,0\n";
        assert!(read_csv(data.as_bytes(), Topology::Band, Orientation::Standard).is_err());
    }

    #[test]
    fn rejects_garbage_value() {
        let data = "s,rho,z,psi\n0,1,0,abc\n";
        assert!(matches!(
            read_csv(data.as_bytes(), Topology::Band, Orientation::Standard),
            Err(Error::Profile(_))
        ));
    }
}
