use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::harness::BenchResult;

/// One CSV line per benchmark result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub algo: String,
    #[serde(rename = "N")]
    pub extents: usize,
    pub alpha: f64,
    pub d: usize,
    pub p: usize,
    #[serde(rename = "G")]
    pub grid_cells: Option<usize>,
    pub reps: usize,
    pub mean_s: f64,
    pub stddev_s: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub speedup: Option<f64>,
}

const HEADER: &str = "algo,N,alpha,d,p,G,reps,mean_s,stddev_s,K,speedup";

impl From<&BenchResult> for CsvRow {
    fn from(r: &BenchResult) -> Self {
        Self {
            algo: r.algo.name().to_string(),
            extents: r.extents,
            alpha: r.alpha,
            d: r.dims,
            p: r.threads,
            grid_cells: r.grid_cells,
            reps: r.reps(),
            mean_s: r.mean,
            stddev_s: r.stddev,
            k: r.k(),
            speedup: r.speedup,
        }
    }
}

/// Rows sorted by algorithm, N, alpha, d, G, then p.
fn sorted_rows(results: &[BenchResult]) -> Vec<CsvRow> {
    let mut rows: Vec<CsvRow> = results.iter().map(CsvRow::from).collect();
    rows.sort_by(|a, b| {
        a.algo
            .cmp(&b.algo)
            .then(a.extents.cmp(&b.extents))
            .then(a.alpha.total_cmp(&b.alpha))
            .then(a.d.cmp(&b.d))
            .then(a.grid_cells.cmp(&b.grid_cells))
            .then(a.p.cmp(&b.p))
    });
    rows
}

fn write_rows<W: std::io::Write>(out: W, results: &[BenchResult]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER.split(','))?;
    for row in sorted_rows(results) {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(results: &[BenchResult]) -> Result<String> {
    let mut buf = Vec::new();
    write_rows(&mut buf, results)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn write_csv(path: impl AsRef<Path>, results: &[BenchResult]) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_rows(file, results)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<std::result::Result<Vec<CsvRow>, _>>()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{fill_speedups, Algorithm};

    fn result(algo: Algorithm, threads: usize, mean: f64) -> BenchResult {
        BenchResult {
            algo,
            extents: 1000,
            alpha: 0.01,
            dims: 1,
            threads,
            grid_cells: None,
            wall_times: vec![mean, mean],
            intersections: vec![17, 20],
            mean,
            stddev: 0.0,
            speedup: None,
        }
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(to_csv_string(&[]).unwrap(), format!("{HEADER}\n"));
    }

    #[test]
    fn speedup_column() {
        let mut rs = vec![result(Algorithm::ItmPar, 4, 0.25), result(Algorithm::ItmPar, 1, 1.0)];
        fill_speedups(&mut rs);
        let text = to_csv_string(&rs).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[1], "itm-par,1000,0.01,1,1,,2,1.0,0.0,17,1.0");
        assert_eq!(lines[2], "itm-par,1000,0.01,1,4,,2,0.25,0.0,17,4.0");
    }

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let mut rs = vec![
            result(Algorithm::Sbm, 1, 0.123456789),
            result(Algorithm::ItmPar, 1, 1.0 / 3.0),
            result(Algorithm::ItmPar, 8, 0.1),
            BenchResult {
                grid_cells: Some(64),
                ..result(Algorithm::Gb, 1, 2.5)
            },
        ];
        fill_speedups(&mut rs);
        write_csv(&path, &rs).unwrap();
        let back = read_csv(&path).unwrap();
        assert_eq!(back, sorted_rows(&rs));
        assert_eq!(back[0].algo, "gb");
        assert_eq!(back[0].grid_cells, Some(64));
    }

    #[test]
    fn unwritable_path() {
        let dir = tempfile::tempdir().unwrap();
        assert!(write_csv(dir.path().join("missing/out.csv"), &[]).is_err());
    }
}
