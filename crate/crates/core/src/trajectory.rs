//! Sampled trajectories and their CSV / JSON serialization.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

/// How a trajectory was produced.
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct TrajectoryMeta {
    pub algebra: String,
    pub alpha: Vec<f64>,
    pub method: String,
    pub steps: usize,
    pub step_size: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    columns: Vec<String>,
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
    pub meta: TrajectoryMeta,
}

#[derive(Serialize)]
struct JsonTrajectory<'a> {
    metadata: &'a TrajectoryMeta,
    columns: Vec<&'a str>,
    rows: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn new(columns: Vec<String>, meta: TrajectoryMeta) -> Self {
        Self { columns, times: Vec::new(), states: Vec::new(), meta }
    }

    /// Appends a sample; times must increase strictly and widths must match.
    pub fn push(&mut self, t: f64, state: Vec<f64>) -> Result<()> {
        if state.len() != self.columns.len() {
            return Err(Error::DimensionMismatch { expected: self.columns.len(), got: state.len() });
        }
        if let Some(&last) = self.times.last() {
            if t <= last {
                return Err(Error::Range(format!("time {t} does not increase past {last}")));
            }
        }
        self.times.push(t);
        self.states.push(state);
        Ok(())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &[f64])> {
        self.times.last().map(|&t| (t, self.states.last().unwrap().as_slice()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &[f64])> {
        self.times.iter().copied().zip(self.states.iter().map(Vec::as_slice))
    }

    /// Appends derived columns computed from each sample.
    pub fn with_columns<F>(&self, extra: &[&str], f: F) -> Trajectory
    where
        F: Fn(f64, &[f64]) -> Vec<f64>,
    {
        let mut columns = self.columns.clone();
        columns.extend(extra.iter().map(|s| s.to_string()));
        let states = self
            .iter()
            .map(|(t, s)| {
                let mut row = s.to_vec();
                let add = f(t, s);
                assert_eq!(add.len(), extra.len(), "derived column count");
                row.extend(add);
                row
            })
            .collect();
        Trajectory { columns, times: self.times.clone(), states, meta: self.meta.clone() }
    }

    /// CSV with header `t,<columns>`, values with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        write!(w, "t")?;
        for c in &self.columns {
            write!(w, ",{c}")?;
        }
        writeln!(w)?;
        for (t, s) in self.iter() {
            write!(w, "{}", fmt_f64(t))?;
            for v in s {
                write!(w, ",{}", fmt_f64(*v))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    /// JSON object with `metadata`, `columns` (including `t`) and `rows`.
    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        let mut columns = vec!["t"];
        columns.extend(self.columns.iter().map(String::as_str));
        let rows = self
            .iter()
            .map(|(t, s)| std::iter::once(t).chain(s.iter().copied()).collect())
            .collect();
        let doc = JsonTrajectory { metadata: &self.meta, columns, rows };
        serde_json::to_writer_pretty(w, &doc)?;
        Ok(())
    }
}

pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}
