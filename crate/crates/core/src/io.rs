//! Plain-text file formats: measurement CSV and dictionary CSV.
//!
//! Floats are written in scientific notation with 17 significant digits so
//! every value parses back to the identical `f64`.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::dispersion::DispersionModel;
use crate::domain::{FrequencyPlan, Measurement};
use crate::error::{Error, Result};
use crate::fingerprint::{AxisRange, Dictionary, Fingerprint, PositionGrid};

pub const MEASUREMENT_HEADER: [&str; 7] = ["m", "f_hz", "theta_deg", "sx_re", "sx_im", "sy_re", "sy_im"];

/// Formats a float for CSV output.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn row_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Parse { line, msg: e.to_string() }
}

fn parse_field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: u64, name: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    rec.get(i)
        .ok_or_else(|| Error::Parse { line, msg: format!("missing column {name}") })?
        .parse::<T>()
        .map_err(|e| Error::Parse { line, msg: format!("column {name}: {e}") })
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(r)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[String]) -> Result<()> {
    let got: Vec<String> = rdr.headers().map_err(row_error)?.iter().map(str::to_string).collect();
    if got != expected {
        return Err(Error::Parse { line: 1, msg: format!("expected header {}, found {}", expected.join(","), got.join(",")) });
    }
    Ok(())
}

/// Writes a measurement as `m,f_hz,theta_deg,sx_re,sx_im,sy_re,sy_im` with
/// 1-based `m`.
pub fn write_measurement<W: Write>(mut w: W, meas: &Measurement, model: &DispersionModel) -> Result<()> {
    writeln!(w, "{}", MEASUREMENT_HEADER.join(","))?;
    for (i, f) in meas.plan().frequency_grid().into_iter().enumerate() {
        let theta = model.beam_angle(f)?.to_degrees();
        let (sx, sy) = (meas.s_x()[i], meas.s_y()[i]);
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            i + 1,
            fmt_f64(f),
            fmt_f64(theta),
            fmt_f64(sx.re),
            fmt_f64(sx.im),
            fmt_f64(sy.re),
            fmt_f64(sy.im)
        )?;
    }
    Ok(())
}

/// Reads a measurement CSV and checks it against `plan`.
pub fn read_measurement<R: Read>(r: R, plan: &FrequencyPlan) -> Result<Measurement> {
    let mut rdr = reader(r);
    let header: Vec<String> = MEASUREMENT_HEADER.iter().map(|s| s.to_string()).collect();
    check_header(&mut rdr, &header)?;
    let grid = plan.frequency_grid();
    let (mut sx, mut sy, mut freqs) = (Vec::new(), Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec.map_err(row_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != MEASUREMENT_HEADER.len() {
            return Err(Error::Parse { line, msg: format!("expected 7 fields, found {}", rec.len()) });
        }
        let m: usize = parse_field(&rec, 0, line, "m")?;
        if m != sx.len() + 1 {
            return Err(Error::Parse { line, msg: format!("expected m = {}, found {m}", sx.len() + 1) });
        }
        freqs.push((line, parse_field::<f64>(&rec, 1, line, "f_hz")?));
        let num = |i: usize, name: &str| parse_field::<f64>(&rec, i, line, name);
        sx.push(Complex64::new(num(3, "sx_re")?, num(4, "sx_im")?));
        sy.push(Complex64::new(num(5, "sy_re")?, num(6, "sy_im")?));
    }
    if freqs.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), actual: freqs.len() });
    }
    for ((line, f), want) in freqs.into_iter().zip(grid) {
        if ((f - want) / want).abs() > 1e-9 {
            return Err(Error::Parse { line, msg: format!("frequency {f} Hz does not match plan ({want} Hz)") });
        }
    }
    Measurement::new(*plan, sx, sy)
}

fn dictionary_header(m: usize) -> Vec<String> {
    let mut h: Vec<String> = ["ix", "iy", "iz", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
    for q in 0..2 * m {
        h.push(format!("re_{q}"));
        h.push(format!("im_{q}"));
    }
    h
}

/// Writes `ix,iy,iz,x,y,z` followed by the 2M fingerprint values as re/im pairs.
pub fn write_dictionary<W: Write>(mut w: W, dict: &Dictionary) -> Result<()> {
    writeln!(w, "{}", dictionary_header(dict.m()).join(","))?;
    let grid = dict.grid();
    for (idx, entry) in dict.entries().iter().enumerate() {
        let (ix, iy, iz) = grid.unravel(idx);
        let p = grid.position(idx);
        let mut line = format!("{ix},{iy},{iz},{},{},{}", fmt_f64(p.x), fmt_f64(p.y), fmt_f64(p.z));
        for v in entry.values() {
            line.push(',');
            line.push_str(&fmt_f64(v.re));
            line.push(',');
            line.push_str(&fmt_f64(v.im));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Reads a dictionary CSV; the grid is rebuilt from the index and coordinate
/// columns and rows must appear in grid order.
pub fn read_dictionary<R: Read>(r: R) -> Result<Dictionary> {
    let mut rdr = reader(r);
    let header = rdr.headers().map_err(row_error)?.clone();
    let ncols = header.len();
    if ncols < 10 || (ncols - 6) % 4 != 0 {
        return Err(Error::Parse { line: 1, msg: format!("dictionary header has {ncols} columns") });
    }
    let m = (ncols - 6) / 4;
    let expected = dictionary_header(m);
    if header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(Error::Parse { line: 1, msg: "dictionary header does not match ix,iy,iz,x,y,z,re_0,im_0,...".into() });
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(row_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != ncols {
            return Err(Error::Parse { line, msg: format!("expected {ncols} fields, found {}", rec.len()) });
        }
        let idx: [usize; 3] = [
            parse_field(&rec, 0, line, "ix")?,
            parse_field(&rec, 1, line, "iy")?,
            parse_field(&rec, 2, line, "iz")?,
        ];
        let pos: [f64; 3] = [parse_field(&rec, 3, line, "x")?, parse_field(&rec, 4, line, "y")?, parse_field(&rec, 5, line, "z")?];
        let values = (0..2 * m)
            .map(|q| {
                Ok(Complex64::new(
                    parse_field(&rec, 6 + 2 * q, line, "re")?,
                    parse_field(&rec, 7 + 2 * q, line, "im")?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let fp = Fingerprint::from_values(values).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        rows.push((line, idx, pos, fp));
    }
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, msg: "dictionary has no entries".into() });
    }
    let axis = |k: usize| -> Result<AxisRange> {
        let count = rows.iter().map(|r| r.1[k]).max().unwrap_or(0) + 1;
        let lo = rows.iter().map(|r| r.2[k]).fold(f64::INFINITY, f64::min);
        let hi = rows.iter().map(|r| r.2[k]).fold(f64::NEG_INFINITY, f64::max);
        if count == 1 {
            Ok(AxisRange::fixed(lo))
        } else {
            AxisRange::new(lo, hi, count)
        }
    };
    let grid = PositionGrid::new(axis(0)?, axis(1)?, axis(2)?)?;
    if grid.len() != rows.len() {
        return Err(Error::Parse { line: 1, msg: format!("grid implies {} rows, found {}", grid.len(), rows.len()) });
    }
    let mut entries = Vec::with_capacity(rows.len());
    for (n, (line, idx, _, fp)) in rows.into_iter().enumerate() {
        if grid.index(idx[0], idx[1], idx[2]) != n {
            return Err(Error::Parse { line, msg: "rows are not in x-fastest grid order".into() });
        }
        entries.push(fp);
    }
    Dictionary::from_parts(grid, entries)
}
