use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DiscreteSpectrum, PotentialField, ReflectionTable, ScatteringSample};
use crate::numerics::ComplexGrid1D;
use crate::{Error, Result, C64};

/// Reads a `x,re_q,im_q` profile. Rows are numbered from 1 after the
/// header; the first row whose spacing differs from the first step is
/// reported.
pub fn read_profile_csv(path: &Path, background_tolerance: f64) -> Result<PotentialField> {
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::ProfileNotFound(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    parse_profile(file, background_tolerance)
}

pub fn parse_profile(reader: impl Read, background_tolerance: f64) -> Result<PotentialField> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let expected = ["x", "re_q", "im_q"];
    if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
        return Err(Error::Malformed { row: 0, msg: format!("expected header x,re_q,im_q, got {headers:?}") });
    }
    let mut xs = Vec::new();
    let mut qs = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| Error::Malformed { row, msg: e.to_string() })?;
        let field = |k: usize| -> Result<f64> {
            rec.get(k)
                .ok_or_else(|| Error::Malformed { row, msg: "missing column".into() })?
                .parse::<f64>()
                .map_err(|e| Error::Malformed { row, msg: format!("column {}: {e}", expected[k]) })
        };
        xs.push(field(0)?);
        qs.push(C64::new(field(1)?, field(2)?));
    }
    if xs.len() < 4 {
        return Err(Error::Malformed { row: xs.len(), msg: "need at least 4 rows".into() });
    }
    let dx = xs[1] - xs[0];
    if !(dx > 0.0) {
        return Err(Error::Malformed { row: 2, msg: "x must be strictly increasing".into() });
    }
    for (i, x) in xs.iter().enumerate() {
        let expected_x = xs[0] + i as f64 * dx;
        if (x - expected_x).abs() > 1e-6 * dx {
            return Err(Error::Malformed {
                row: i + 1,
                msg: format!("non-uniform spacing: x = {x}, expected {expected_x}"),
            });
        }
    }
    PotentialField::new(ComplexGrid1D::new(xs[0], dx, qs)?, background_tolerance)
}

pub fn write_profile_csv(path: &Path, field: &PotentialField) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "re_q", "im_q"])?;
    let g = field.grid();
    for (i, q) in g.values().iter().enumerate() {
        w.write_record(&[g.x(i).to_string(), q.re.to_string(), q.im.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reflection table plus discrete spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringData {
    pub table: ReflectionTable,
    pub spectrum: DiscreteSpectrum,
}

#[derive(Serialize, Deserialize)]
struct ScatteringJson {
    grid: Vec<f64>,
    s11: Vec<[f64; 2]>,
    s21: Vec<[f64; 2]>,
    r: Vec<[f64; 2]>,
    eigenvalues: Vec<[f64; 2]>,
    norming_constants: Vec<[f64; 2]>,
}

fn pair(c: C64) -> [f64; 2] {
    [c.re, c.im]
}

fn unpair(p: &[f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

impl ScatteringData {
    pub fn to_json(&self) -> Result<String> {
        let s = &self.table.samples;
        let doc = ScatteringJson {
            grid: self.table.z_grid.clone(),
            s11: s.iter().map(|x| pair(x.s11)).collect(),
            s21: s.iter().map(|x| pair(x.s21)).collect(),
            r: s.iter().map(|x| pair(x.r)).collect(),
            eigenvalues: self.spectrum.eigenvalues.iter().copied().map(pair).collect(),
            norming_constants: self.spectrum.norming_constants.iter().copied().map(pair).collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ScatteringJson = serde_json::from_str(text)?;
        let n = doc.grid.len();
        if doc.s11.len() != n || doc.s21.len() != n || doc.r.len() != n {
            return Err(Error::InvalidInput("scattering arrays differ in length from grid".into()));
        }
        if doc.eigenvalues.len() != doc.norming_constants.len() {
            return Err(Error::InvalidInput(
                "eigenvalues and norming_constants differ in length".into(),
            ));
        }
        let samples = (0..n)
            .map(|i| ScatteringSample {
                z: doc.grid[i],
                s11: unpair(&doc.s11[i]),
                s21: unpair(&doc.s21[i]),
                r: unpair(&doc.r[i]),
            })
            .collect();
        Ok(Self {
            table: ReflectionTable { z_grid: doc.grid, samples },
            spectrum: DiscreteSpectrum {
                eigenvalues: doc.eigenvalues.iter().map(unpair).collect(),
                norming_constants: doc.norming_constants.iter().map(unpair).collect(),
            },
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut f = File::create(path)?;
        f.write_all(self.to_json()?.as_bytes())?;
        f.write_all(b"\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => {
                Error::InvalidInput(format!("scattering file not found: {}", path.display()))
            }
            _ => Error::Io(e),
        })?;
        Self::from_json(&text)
    }
}
