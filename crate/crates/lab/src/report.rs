//! Experiment reports and their CSV, JSON and plot-data renderings.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::experiment::{ExperimentSpec, Metric};
use crate::fit::ExponentFit;

/// CSV column order.
pub const CSV_HEADER: [&str; 10] =
    ["algorithm", "family", "n", "p", "trials", "metric", "mean", "variance", "min", "max"];

/// Aggregate of one metric over a cell's trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    /// Which metric.
    pub metric: Metric,
    /// Exact sum over trials.
    pub total: u128,
    /// `total / trials`.
    pub mean: f64,
    /// Sample variance (divisor `trials − 1`).
    pub variance: f64,
    /// Smallest trial value.
    pub min: u64,
    /// Largest trial value.
    pub max: u64,
}

impl MetricSummary {
    /// Standard error of the mean.
    pub fn std_error(&self, trials: usize) -> f64 {
        (self.variance / trials as f64).sqrt()
    }
}

/// One `(algorithm, n)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    /// Algorithm name.
    pub algorithm: String,
    /// Increment family label, `none` outside Shellsort.
    pub family: String,
    /// Problem size.
    pub n: usize,
    /// Passes (1 for insertion sort, 0 for non-Shellsort algorithms).
    pub p: usize,
    /// Trials aggregated.
    pub trials: usize,
    /// One summary per recorded metric.
    pub metrics: Vec<MetricSummary>,
}

impl Cell {
    /// Summary for `metric`, if recorded.
    pub fn metric(&self, metric: Metric) -> Option<&MetricSummary> {
        self.metrics.iter().find(|s| s.metric == metric)
    }
}

/// Power-law fit of one metric's means across the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesFit {
    /// Algorithm name.
    pub algorithm: String,
    /// Increment family label.
    pub family: String,
    /// Fitted metric.
    pub metric: Metric,
    /// Grid points used.
    pub points: usize,
    /// The fit.
    pub fit: ExponentFit,
}

/// What produced a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// The spec as run, seed filled in.
    pub spec: ExperimentSpec,
    /// Master seed.
    pub seed: u64,
    /// Crate version.
    pub version: String,
    /// How per-trial generators are derived.
    pub stream_rule: String,
}

/// Output of [`run_experiment`](crate::experiment::run_experiment).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    /// Spec, seed and version.
    pub provenance: Provenance,
    /// Cells in grid order.
    pub cells: Vec<Cell>,
    /// Fits for every metric with enough positive points.
    pub fits: Vec<SeriesFit>,
}

/// Output format for [`ExperimentReport::emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// One row per cell and metric.
    Csv,
    /// Full report.
    Json,
}

impl ExperimentReport {
    /// Renders the report.
    pub fn emit(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// CSV with [`CSV_HEADER`]; an empty grid gives the header alone.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for cell in &self.cells {
            for s in &cell.metrics {
                w.write_record([
                    cell.algorithm.clone(),
                    cell.family.clone(),
                    cell.n.to_string(),
                    cell.p.to_string(),
                    cell.trials.to_string(),
                    s.metric.as_str().to_string(),
                    s.mean.to_string(),
                    s.variance.to_string(),
                    s.min.to_string(),
                    s.max.to_string(),
                ])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("CSV fields are UTF-8"))
    }

    /// Pretty-printed JSON.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Parses what [`to_json`](Self::to_json) wrote.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Whitespace-separated `log2(n) log2(mean)` columns, one `# series`
    /// block per metric. Cells with a zero mean are skipped.
    pub fn plot_data(&self) -> String {
        let Some(first) = self.cells.first() else {
            return String::new();
        };
        let mut out = String::new();
        for (slot, s) in first.metrics.iter().enumerate() {
            out.push_str(&format!("# series {} {} {}\n", first.algorithm, first.family, s.metric.as_str()));
            for cell in &self.cells {
                let mean = cell.metrics[slot].mean;
                if mean > 0.0 {
                    out.push_str(&format!("{} {}\n", (cell.n as f64).log2(), mean.log2()));
                }
            }
            out.push('\n');
        }
        out
    }

    /// Fit for `metric`, if one was made.
    pub fn fit(&self, metric: Metric) -> Option<&ExponentFit> {
        self.fits.iter().find(|f| f.metric == metric).map(|f| &f.fit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{run_experiment, Algorithm};

    fn report(n_grid: Vec<usize>) -> ExperimentReport {
        let spec = ExperimentSpec { algorithm: Algorithm::Insertion, n_grid, trials: 4, seed: Some(5) };
        run_experiment(&spec, Some(1)).unwrap()
    }

    #[test]
    fn empty_grid_is_header_only() {
        let r = report(vec![]);
        assert_eq!(r.to_csv().unwrap(), "algorithm,family,n,p,trials,metric,mean,variance,min,max\n");
        assert!(r.fits.is_empty());
        assert_eq!(r.plot_data(), "");
    }

    #[test]
    fn one_cell_rows_are_complete() {
        let csv = report(vec![20]).to_csv().unwrap();
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(rows.len(), 3);
        for row in rows {
            let fields: Vec<&str> = row.split(',').collect();
            assert_eq!(fields.len(), 10);
            assert!(fields.iter().all(|f| !f.is_empty()));
            assert_eq!(&fields[..5], ["insertion", "none", "20", "1", "4"]);
        }
    }

    #[test]
    fn json_round_trip() {
        let r = report(vec![8, 16, 32, 64]);
        assert_eq!(r.fits.len(), 3);
        let text = r.emit(Format::Json).unwrap();
        assert_eq!(ExperimentReport::from_json(&text).unwrap(), r);
    }

    #[test]
    fn plot_blocks() {
        let text = report(vec![8, 16]).plot_data();
        assert_eq!(text.matches("# series").count(), 3);
        assert!(text.lines().nth(1).unwrap().starts_with("3 "));
    }
}
