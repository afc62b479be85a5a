use std::collections::HashSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Errors: smaller is better.
    Lower,
    /// Accuracies and AP: larger is better.
    Higher,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lower" | "min" | "lower-is-better" => Ok(Direction::Lower),
            "higher" | "max" | "higher-is-better" => Ok(Direction::Higher),
            other => Err(Error::Validation(format!("unknown direction `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricColumn {
    pub name: String,
    pub direction: Direction,
    pub values: Vec<f64>,
}

/// Per-model metric values, one column per metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct MetricTable {
    models: Vec<String>,
    columns: Vec<MetricColumn>,
}

#[derive(Deserialize)]
struct RawTable {
    models: Vec<String>,
    columns: Vec<MetricColumn>,
}

impl TryFrom<RawTable> for MetricTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        MetricTable::new(raw.models, raw.columns)
    }
}

impl MetricTable {
    pub fn new(models: Vec<String>, columns: Vec<MetricColumn>) -> Result<Self> {
        let mut seen = HashSet::new();
        if let Some(dup) = models.iter().find(|m| !seen.insert(m.as_str())) {
            return Err(Error::Validation(format!("duplicate model id `{dup}`")));
        }
        let mut names = HashSet::new();
        for c in &columns {
            if !names.insert(c.name.as_str()) {
                return Err(Error::Validation(format!("duplicate metric `{}`", c.name)));
            }
            if c.values.len() != models.len() {
                return Err(Error::Validation(format!(
                    "metric `{}` has {} values for {} models",
                    c.name,
                    c.values.len(),
                    models.len()
                )));
            }
            if let Some(v) = c.values.iter().find(|v| !v.is_finite()) {
                return Err(Error::Validation(format!("metric `{}` has non-finite value {v}", c.name)));
            }
        }
        Ok(Self { models, columns })
    }

    pub fn models(&self) -> &[String] {
        &self.models
    }

    pub fn columns(&self) -> &[MetricColumn] {
        &self.columns
    }

    pub fn column(&self, name: &str) -> Result<&MetricColumn> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownMetric(name.to_string()))
    }

    /// Parse a delimited table. The header row names the model column and
    /// the metrics; a row whose first cell is `direction` gives
    /// `lower`/`higher` per metric. Lines starting with `#` are comments.
    ///
    /// ```text
    /// model,abs-rel,delta<1.25
    /// direction,lower,higher
    /// AdaBins,0.080,0.920
    /// ```
    pub fn from_delimited(text: &str, delimiter: u8) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut header: Option<Vec<String>> = None;
        let mut directions: Option<Vec<Direction>> = None;
        let mut models = Vec::new();
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            let line = record.position().map_or(i + 1, |p| p.line() as usize);
            let cells: Vec<&str> = record.iter().collect();
            if cells.iter().all(|c| c.is_empty()) {
                continue;
            }
            let Some(head) = &header else {
                header = Some(cells.iter().map(|s| s.to_string()).collect());
                continue;
            };
            if cells.len() != head.len() {
                return Err(Error::Parse {
                    line,
                    message: format!("{} cells, header has {}", cells.len(), head.len()),
                });
            }
            if cells[0].eq_ignore_ascii_case("direction") {
                let dirs = cells[1..]
                    .iter()
                    .map(|c| c.parse::<Direction>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::Parse { line, message: e.to_string() })?;
                directions = Some(dirs);
                continue;
            }
            let values = cells[1..]
                .iter()
                .map(|c| {
                    c.parse::<f64>().map_err(|_| Error::Parse {
                        line,
                        message: format!("`{c}` is not a number"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            models.push(cells[0].to_string());
            rows.push(values);
        }
        let header = header.ok_or_else(|| Error::Format("empty metric table".into()))?;
        let directions = directions.ok_or_else(|| Error::Format("metric table has no `direction` row".into()))?;
        let columns = header[1..]
            .iter()
            .zip(directions)
            .enumerate()
            .map(|(j, (name, direction))| MetricColumn {
                name: name.clone(),
                direction,
                values: rows.iter().map(|r| r[j]).collect(),
            })
            .collect();
        Self::new(models, columns)
    }

    /// Comma-delimited, or tab-delimited when the first line has tabs.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            return Ok(serde_json::from_str(trimmed)?);
        }
        let first = trimmed
            .lines()
            .find(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .unwrap_or("");
        let delimiter = if first.contains('\t') { b'\t' } else { b',' };
        Self::from_delimited(text, delimiter)
    }

    /// Keep only the given models, in the given order.
    pub fn select_models(&self, keep: &[&str]) -> Result<Self> {
        let idx = keep
            .iter()
            .map(|m| {
                self.models
                    .iter()
                    .position(|x| x == m)
                    .ok_or_else(|| Error::Validation(format!("unknown model `{m}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let columns = self
            .columns
            .iter()
            .map(|c| MetricColumn {
                name: c.name.clone(),
                direction: c.direction,
                values: idx.iter().map(|&i| c.values[i]).collect(),
            })
            .collect();
        Self::new(keep.iter().map(|s| s.to_string()).collect(), columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "# comment\nmodel,abs-rel,d1\ndirection,lower,higher\nA,0.1,0.9\nB,0.2,0.8\n";

    #[test]
    fn parse_csv() {
        let t = MetricTable::parse(TEXT).unwrap();
        assert_eq!(t.models(), ["A", "B"]);
        let c = t.column("d1").unwrap();
        assert_eq!(c.direction, Direction::Higher);
        assert_eq!(c.values, [0.9, 0.8]);
        assert!(matches!(t.column("rms"), Err(Error::UnknownMetric(_))));
    }

    #[test]
    fn parse_tsv_and_json() {
        let t = MetricTable::parse(&TEXT.replace(',', "\t")).unwrap();
        assert_eq!(t.models().len(), 2);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(MetricTable::parse(&json).unwrap(), t);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(MetricTable::parse("model,x\nA,1\n").is_err());
        assert!(MetricTable::parse("model,x\ndirection,lower\nA,1\nA,2\n").is_err());
        let err = MetricTable::parse("model,x\ndirection,lower\nA,one\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(MetricTable::parse("model,x\ndirection,sideways\nA,1\n").is_err());
        assert!(MetricTable::parse("").is_err());
        let bad_json = r#"{"models":["A","A"],"columns":[]}"#;
        assert!(MetricTable::parse(bad_json).is_err());
    }
}
