//! Two-arm trial data: outcome `z`, treatment indicator `d` and one covariate `c`.
//!
//! CSV layout is a `z,d,c` header followed by one observation per row; `d`
//! must be exactly `0` or `1`.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantreg::RegressionData;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    z: Vec<f64>,
    d: Vec<u8>,
    c: Vec<f64>,
}

impl Dataset {
    pub fn new(z: Vec<f64>, d: Vec<u8>, c: Vec<f64>) -> Result<Self> {
        if z.len() != d.len() || z.len() != c.len() {
            return Err(Error::InvalidInput(format!(
                "column lengths differ: z={}, d={}, c={}",
                z.len(),
                d.len(),
                c.len()
            )));
        }
        if let Some(i) = d.iter().position(|&g| g > 1) {
            return Err(Error::InvalidInput(format!(
                "treatment indicator at row {} is {}, expected 0 or 1",
                i + 1,
                d[i]
            )));
        }
        if let Some(i) = z.iter().zip(&c).position(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite value at row {}", i + 1)));
        }
        let treated = d.iter().filter(|&&g| g == 1).count();
        if treated == 0 || treated == d.len() {
            return Err(Error::InvalidInput(
                "both treatment groups must be nonempty".into(),
            ));
        }
        Ok(Self { z, d, c })
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn d(&self) -> &[u8] {
        &self.d
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    /// Size of group `g` (`m` for g = 1, `n` for g = 0).
    pub fn group_size(&self, g: u8) -> usize {
        self.d.iter().filter(|&&x| x == g).count()
    }

    /// Iterator over the row indices belonging to group `g`.
    pub fn group_indices(&self, g: u8) -> impl Iterator<Item = usize> + '_ {
        self.d
            .iter()
            .enumerate()
            .filter(move |(_, &x)| x == g)
            .map(|(i, _)| i)
    }

    /// True when every covariate value is identical, in which case the
    /// covariate column is collinear with the intercept.
    pub fn covariate_is_constant(&self) -> bool {
        self.c.iter().all(|&v| v == self.c[0])
    }

    /// Design for the quantile model: columns (1, D) and, when requested, C.
    pub fn design(&self, with_covariate: bool) -> RegressionData {
        let p = if with_covariate { 3 } else { 2 };
        let mut x = Vec::with_capacity(self.len() * p);
        for i in 0..self.len() {
            x.push(1.0);
            x.push(f64::from(self.d[i]));
            if with_covariate {
                x.push(self.c[i]);
            }
        }
        RegressionData::from_parts(self.z.clone(), x, p)
    }

    /// Same observations with the treatment labels exchanged.
    pub fn swap_labels(&self) -> Self {
        Self {
            z: self.z.clone(),
            d: self.d.iter().map(|&g| 1 - g).collect(),
            c: self.c.clone(),
        }
    }

    pub fn map_outcomes(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            z: self.z.iter().map(|&v| f(v)).collect(),
            d: self.d.clone(),
            c: self.c.clone(),
        }
    }

    pub fn map_covariate(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            z: self.z.clone(),
            d: self.d.clone(),
            c: self.c.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::InvalidInput(format!("cannot read header: {e}")))?
            .clone();
        let names: Vec<&str> = headers.iter().collect();
        if names != ["z", "d", "c"] {
            return Err(Error::InvalidInput(format!(
                "line 1: expected header `z,d,c`, found `{}`",
                names.join(",")
            )));
        }
        let (mut z, mut d, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for record in rdr.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                Error::InvalidInput(format!("line {line}: {e}"))
            })?;
            let line = record.position().map_or(0, |p| p.line());
            let field = |k: usize| -> Result<f64> {
                let raw = record.get(k).unwrap_or("");
                raw.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "line {line}: column `{}` is not a finite number: `{raw}`",
                            names[k]
                        ))
                    })
            };
            z.push(field(0)?);
            let g = match record.get(1) {
                Some("0") => 0,
                Some("1") => 1,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "line {line}: treatment indicator must be 0 or 1, found `{}`",
                        other.unwrap_or("")
                    )))
                }
            };
            d.push(g);
            c.push(field(2)?);
        }
        Self::new(z, d, c)
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(file)
    }

    /// Writes the `z,d,c` CSV. Floats use the shortest representation that
    /// parses back to the identical bit pattern.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "z,d,c")?;
        for i in 0..self.len() {
            writeln!(w, "{:?},{},{:?}", self.z[i], self.d[i], self.c[i])?;
        }
        Ok(())
    }
}
