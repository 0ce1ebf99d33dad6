//! Text exporters: map CSV, CDF CSV, plain PGM heatmap and the summary
//! table.
//!
//! * Map CSV: header `x,y,attenuation_db`, one row per cell in row-major
//!   order (south row first), `inf` for unreachable cells.
//! * CDF CSV: header `attenuation_db,cdf`, one row per reachable sample.
//! * PGM (P2, maxval 255): the north row is written first. Reachable cells
//!   map linearly from the lowest attenuation (255, brightest) to the
//!   highest (1); unreachable cells are 0. A map whose reachable cells all
//!   share one value is drawn at 255.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::engine::{ComparisonRow, PathlossMap};
use crate::error::{Error, Result};
use crate::stats::CdfCurve;

const PGM_LINE: usize = 70;

fn io_at(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::io(path, e)
}

pub fn write_map_csv<W: Write>(map: &PathlossMap, mut out: W) -> std::io::Result<()> {
    writeln!(out, "x,y,attenuation_db")?;
    for (p, v) in map.iter() {
        match v {
            Some(db) => writeln!(out, "{},{},{}", p.x, p.y, db)?,
            None => writeln!(out, "{},{},inf", p.x, p.y)?,
        }
    }
    Ok(())
}

pub fn write_cdf_csv<W: Write>(curve: &CdfCurve, mut out: W) -> std::io::Result<()> {
    writeln!(out, "attenuation_db,cdf")?;
    for (v, p) in curve.values().iter().zip(curve.probabilities()) {
        writeln!(out, "{v},{p}")?;
    }
    Ok(())
}

/// Gray level of every cell, row-major with the north row first.
pub fn heatmap_levels(map: &PathlossMap) -> Vec<u8> {
    let (lo, hi) = map
        .reachable_values()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let level = |v: Option<f64>| match v {
        None => 0,
        Some(_) if hi <= lo => 255,
        Some(v) => 1 + (254.0 * (hi - v) / (hi - lo)).round() as u8,
    };
    let (rows, cols) = (map.rows(), map.cols());
    let cells = map.cells();
    (0..rows)
        .rev()
        .flat_map(|r| cells[r * cols..(r + 1) * cols].iter().map(move |&v| level(v)))
        .collect()
}

pub fn write_pgm<W: Write>(map: &PathlossMap, mut out: W) -> std::io::Result<()> {
    writeln!(out, "P2")?;
    writeln!(out, "{} {}", map.cols(), map.rows())?;
    writeln!(out, "255")?;
    let levels = heatmap_levels(map);
    for row in levels.chunks(map.cols().max(1)) {
        let mut line = String::new();
        for g in row {
            let tok = g.to_string();
            if !line.is_empty() && line.len() + 1 + tok.len() > PGM_LINE {
                writeln!(out, "{line}")?;
                line.clear();
            }
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&tok);
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn save(path: &Path, f: impl FnOnce(&mut std::io::BufWriter<std::fs::File>) -> std::io::Result<()>) -> Result<()> {
    let file = std::fs::File::create(path).map_err(io_at(path))?;
    let mut w = std::io::BufWriter::new(file);
    f(&mut w).map_err(io_at(path))?;
    w.flush().map_err(io_at(path))
}

pub fn save_map_csv(map: &PathlossMap, path: &Path) -> Result<()> {
    save(path, |w| write_map_csv(map, w))
}

pub fn save_cdf_csv(curve: &CdfCurve, path: &Path) -> Result<()> {
    save(path, |w| write_cdf_csv(curve, w))
}

pub fn save_pgm(map: &PathlossMap, path: &Path) -> Result<()> {
    save(path, |w| write_pgm(map, w))
}

/// Fixed-width summary table, one row per structure.
pub fn format_summary(rows: &[ComparisonRow]) -> String {
    let cell = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |v| format!("{v:.2}"));
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<12} {:>11} {:>11} {:>11} {:>10}",
        "structure", "median_db", "p5_db", "p95_db", "reachable"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<12} {:>11} {:>11} {:>11} {:>10.3}",
            r.name,
            cell(r.median),
            cell(r.p5),
            cell(r.p95),
            r.reachable_fraction
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{Point2, Region};

    fn small_map() -> PathlossMap {
        // 3 columns × 2 rows
        let region = Region::new(Point2::new(0.0, 0.0), Point2::new(3.0, 2.0), 1.0).unwrap();
        PathlossMap::new(region, vec![Some(100.0), None, Some(110.0), Some(105.0), Some(120.0), None]).unwrap()
    }

    #[test]
    fn map_csv_layout() {
        let mut buf = Vec::new();
        write_map_csv(&small_map(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "x,y,attenuation_db");
        assert_eq!(lines[1], "0.5,0.5,100");
        assert_eq!(lines[2], "1.5,0.5,inf");
        assert_eq!(lines[6], "2.5,1.5,inf");
        assert_eq!("inf".parse::<f64>().unwrap(), f64::INFINITY);
    }

    #[test]
    fn cdf_csv_layout() {
        let curve = CdfCurve::from_samples(vec![2.0, 1.0]).unwrap();
        let mut buf = Vec::new();
        write_cdf_csv(&curve, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "attenuation_db,cdf\n1,0.5\n2,1\n");
    }

    #[test]
    fn pgm_levels_and_orientation() {
        let mut buf = Vec::new();
        write_pgm(&small_map(), &mut buf).unwrap();
        // north row (105, 120, -) first; 100 dB is brightest, 120 dB darkest
        assert_eq!(String::from_utf8(buf).unwrap(), "P2\n3 2\n255\n192 1 0\n255 0 128\n");
    }

    #[test]
    fn pgm_constant_map_and_long_rows() {
        let region = Region::new(Point2::new(0.0, 0.0), Point2::new(40.0, 1.0), 1.0).unwrap();
        let map = PathlossMap::new(region, vec![Some(90.0); 40]).unwrap();
        let mut buf = Vec::new();
        write_pgm(&map, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().all(|l| l.len() <= PGM_LINE));
        let values: Vec<&str> = text.lines().skip(3).flat_map(str::split_whitespace).collect();
        assert_eq!(values, vec!["255"; 40]);
    }

    #[test]
    fn summary_has_one_line_per_row() {
        let rows = vec![
            ComparisonRow { name: "a".into(), median: Some(1.0), p5: Some(0.5), p95: Some(2.0), reachable_fraction: 1.0 },
            ComparisonRow { name: "b".into(), median: None, p5: None, p95: None, reachable_fraction: 0.0 },
        ];
        let s = format_summary(&rows);
        assert_eq!(s.lines().count(), 3);
        assert!(s.lines().nth(2).unwrap().contains(" - "));
    }
}
