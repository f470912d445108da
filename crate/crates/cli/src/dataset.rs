//! CSV and JSON ingestion.
//!
//! CSV has a header row naming some of `x_re, x_im, y_re, y_im, w`; either
//! imaginary column selects complex mode. JSON is an object
//! `{"mode", "x", "y", "w", "disk"}` where entries are numbers or `[re, im]`
//! pairs and `disk` (`{"a", "A"}`) is optional.

use std::collections::HashMap;

use schwarz_gap_core::{DiskBound, Mode, Scalar, WeightedVectorPair};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub pair: WeightedVectorPair,
    pub disk: Option<DiskBound>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    fn scalar(self) -> Scalar {
        match self {
            Entry::Real(re) => Scalar::new(re, 0.0),
            Entry::Complex([re, im]) => Scalar::new(re, im),
        }
    }

    fn is_complex(self) -> bool {
        matches!(self, Entry::Complex(_))
    }

    fn encode(z: Scalar, mode: Mode) -> Self {
        match mode {
            Mode::Real => Entry::Real(z.re),
            Mode::Complex => Entry::Complex([z.re, z.im]),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDisk {
    a: Entry,
    #[serde(rename = "A")]
    big_a: Entry,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDataset {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mode: Option<Mode>,
    x: Vec<Entry>,
    y: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    disk: Option<JsonDisk>,
}

impl Dataset {
    pub fn to_json(&self) -> String {
        let mode = self.pair.mode();
        let enc = |v: &[Scalar]| v.iter().map(|&z| Entry::encode(z, mode)).collect();
        let disk_mode = match self.disk {
            Some(d) if !d.is_real() => Mode::Complex,
            _ => mode,
        };
        let raw = JsonDataset {
            mode: Some(mode),
            x: enc(self.pair.x()),
            y: enc(self.pair.y()),
            w: Some(self.pair.w().to_vec()),
            disk: self.disk.map(|d| JsonDisk {
                a: Entry::encode(d.lower, disk_mode),
                big_a: Entry::encode(d.upper, disk_mode),
            }),
        };
        serde_json::to_string(&raw).expect("dataset serializes")
    }
}

pub fn detect_format(path: Option<&std::path::Path>, bytes: &[u8]) -> Format {
    if let Some(ext) = path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        if ext.eq_ignore_ascii_case("json") {
            return Format::Json;
        }
        if ext.eq_ignore_ascii_case("csv") {
            return Format::Csv;
        }
    }
    match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'{') => Format::Json,
        _ => Format::Csv,
    }
}

pub fn parse(bytes: &[u8], format: Format) -> Result<Dataset, CliError> {
    match format {
        Format::Csv => parse_csv(bytes),
        Format::Json => parse_json(bytes),
    }
}

const COLUMNS: [&str; 5] = ["x_re", "x_im", "y_re", "y_im", "w"];

pub fn parse_csv(bytes: &[u8]) -> Result<Dataset, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);

    let headers = reader.headers().map_err(|e| csv_error(e, 1))?.clone();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in headers.iter().enumerate() {
        let Some(&col) = COLUMNS.iter().find(|c| **c == name) else {
            return Err(CliError::Parse {
                line: 1,
                msg: format!("unknown column '{name}' (expected x_re, x_im, y_re, y_im, w)"),
            });
        };
        if index.insert(col, i).is_some() {
            return Err(CliError::Parse {
                line: 1,
                msg: format!("duplicate column '{name}'"),
            });
        }
    }
    for required in ["x_re", "y_re"] {
        if !index.contains_key(required) {
            return Err(CliError::Parse {
                line: 1,
                msg: format!("missing column '{required}'"),
            });
        }
    }
    let mode = if index.contains_key("x_im") || index.contains_key("y_im") {
        Mode::Complex
    } else {
        Mode::Real
    };

    let (mut x, mut y, mut w) = (Vec::new(), Vec::new(), Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(e, 0))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != headers.len() {
            return Err(CliError::Parse {
                line,
                msg: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        let field = |col: &str| -> Result<f64, CliError> {
            let Some(&i) = index.get(col) else {
                return Ok(if col == "w" { 1.0 } else { 0.0 });
            };
            let text = &record[i];
            match text.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CliError::Parse {
                    line,
                    msg: format!("column {col}: '{text}' is not a finite number"),
                }),
            }
        };
        let wi = field("w")?;
        if wi < 0.0 {
            return Err(CliError::Parse {
                line,
                msg: format!("weight {wi} is negative"),
            });
        }
        x.push(Scalar::new(field("x_re")?, field("x_im")?));
        y.push(Scalar::new(field("y_re")?, field("y_im")?));
        w.push(wi);
    }
    if x.is_empty() {
        return Err(CliError::Parse {
            line: 2,
            msg: "no data rows".into(),
        });
    }
    Ok(Dataset {
        pair: WeightedVectorPair::new(mode, x, y, Some(w))?,
        disk: None,
    })
}

fn csv_error(e: csv::Error, fallback: u64) -> CliError {
    let line = e.position().map_or(fallback, |p| p.line());
    CliError::Parse {
        line,
        msg: e.to_string(),
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<Dataset, CliError> {
    let raw: JsonDataset = serde_json::from_slice(bytes).map_err(|e| CliError::Parse {
        line: e.line() as u64,
        msg: e.to_string(),
    })?;
    let any_complex = raw.x.iter().chain(&raw.y).any(|e| e.is_complex());
    let mode = raw.mode.unwrap_or(if any_complex { Mode::Complex } else { Mode::Real });
    let x = raw.x.into_iter().map(Entry::scalar).collect();
    let y = raw.y.into_iter().map(Entry::scalar).collect();
    let pair = WeightedVectorPair::new(mode, x, y, raw.w)?;
    let disk = raw
        .disk
        .map(|d| DiskBound::new(d.a.scalar(), d.big_a.scalar()))
        .transpose()?;
    Ok(Dataset { pair, disk })
}
