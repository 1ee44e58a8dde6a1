//! Tabular ingestion and min-max normalization.
//!
//! Every operator in the crate minimizes: after [`normalize`] each attribute
//! lies in `[0,1]` and lower is better, with `Max` attributes flipped.

use std::collections::HashSet;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Optimization direction of one attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Min,
    Max,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "min" => Ok(Direction::Min),
            "max" => Ok(Direction::Max),
            other => Err(Error::InvalidSchema(format!("unknown direction `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    names: Vec<String>,
    directions: Vec<Direction>,
}

impl Schema {
    pub fn new(names: Vec<String>, directions: Vec<Direction>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidSchema("at least one attribute required".into()));
        }
        if names.len() != directions.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                found: directions.len(),
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSchema(format!("duplicate attribute `{name}`")));
            }
        }
        Ok(Self { names, directions })
    }

    /// All attributes minimized, named `a1..ad`.
    pub fn minimizing(dims: usize) -> Result<Self> {
        Self::new(
            (1..=dims).map(|i| format!("a{i}")).collect(),
            vec![Direction::Min; dims],
        )
    }

    /// Parses `name:min, name:max, ...`; a bare name means `min`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut directions = Vec::new();
        for item in spec.split(',') {
            let item = item.trim();
            let (name, dir) = match item.split_once(':') {
                Some((n, d)) => (n.trim(), d.parse()?),
                None => (item, Direction::Min),
            };
            if name.is_empty() {
                return Err(Error::InvalidSchema(format!("empty attribute name in `{spec}`")));
            }
            names.push(name.to_string());
            directions.push(dir);
        }
        Self::new(names, directions)
    }

    pub fn dims(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }
}

/// A point with a stable identifier.
#[derive(Debug, Clone, PartialEq)]
pub struct Tuple<T> {
    pub id: String,
    pub values: Vec<T>,
}

impl<T: Scalar> Tuple<T> {
    pub fn new(id: impl Into<String>, values: Vec<T>) -> Self {
        Self {
            id: id.into(),
            values,
        }
    }

    pub fn dims(&self) -> usize {
        self.values.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation<T> {
    schema: Schema,
    tuples: Vec<Tuple<T>>,
}

impl<T: Scalar> Relation<T> {
    /// Validates arity against the schema and id uniqueness.
    pub fn new(schema: Schema, tuples: Vec<Tuple<T>>) -> Result<Self> {
        let d = schema.dims();
        let mut ids = HashSet::with_capacity(tuples.len());
        for t in &tuples {
            if t.values.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: t.values.len(),
                });
            }
            if !ids.insert(t.id.as_str()) {
                return Err(Error::DuplicateId(t.id.clone()));
            }
        }
        Ok(Self { schema, tuples })
    }

    /// Builds a minimizing relation with ids `t0, t1, ...`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let d = rows.first().map_or(1, Vec::len);
        let tuples = rows
            .into_iter()
            .enumerate()
            .map(|(i, v)| Tuple::new(format!("t{i}"), v))
            .collect();
        Self::new(Schema::minimizing(d)?, tuples)
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn tuples(&self) -> &[Tuple<T>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.schema.dims()
    }

    /// Clones the tuples at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Vec<Tuple<T>> {
        indices.iter().map(|&i| self.tuples[i].clone()).collect()
    }
}

/// Reads a CSV file whose first column is the tuple id and whose remaining
/// header cells equal the schema attribute names, in order.
pub fn load_csv<T: Scalar>(path: impl AsRef<Path>, schema: Schema) -> Result<Relation<T>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_csv(file, schema)
}

pub fn read_csv<T: Scalar, R: Read>(reader: R, schema: Schema) -> Result<Relation<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let found = header.get(1..).unwrap_or_default();
    if found != schema.names() {
        return Err(Error::HeaderMismatch {
            expected: schema.names().to_vec(),
            found: found.to_vec(),
        });
    }

    let d = schema.dims();
    let mut tuples = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        // 1-based data row number, header excluded
        let row = i + 1;
        if record.len() != d + 1 {
            return Err(Error::RaggedRow {
                row,
                expected: d + 1,
                found: record.len(),
            });
        }
        let values = record
            .iter()
            .skip(1)
            .zip(schema.names())
            .map(|(cell, column)| {
                cell.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .and_then(T::from_f64)
                    .ok_or_else(|| Error::NonNumeric {
                        row,
                        column: column.clone(),
                        value: cell.to_string(),
                    })
            })
            .collect::<Result<Vec<T>>>()?;
        tuples.push(Tuple::new(&record[0], values));
    }
    Relation::new(schema, tuples)
}

/// Min-max scales every attribute into `[0,1]`, flipping `Max` attributes so
/// that lower is better. Constant attributes map to `0`. The returned schema
/// marks every attribute `Min`, which makes the operation idempotent.
pub fn normalize<T: Scalar>(rel: &Relation<T>) -> Relation<T> {
    let d = rel.dims();
    let mut lo = vec![T::infinity(); d];
    let mut hi = vec![T::neg_infinity(); d];
    for t in rel.tuples() {
        for (i, &v) in t.values.iter().enumerate() {
            lo[i] = lo[i].min(v);
            hi[i] = hi[i].max(v);
        }
    }

    let dirs = rel.schema().directions();
    let tuples = rel
        .tuples()
        .iter()
        .map(|t| {
            let values = t
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let range = hi[i] - lo[i];
                    if range <= T::zero() {
                        return T::zero();
                    }
                    match dirs[i] {
                        Direction::Min => (v - lo[i]) / range,
                        Direction::Max => (hi[i] - v) / range,
                    }
                })
                .collect();
            Tuple::new(t.id.clone(), values)
        })
        .collect();

    let schema = Schema {
        names: rel.schema().names().to_vec(),
        directions: vec![Direction::Min; d],
    };
    Relation { schema, tuples }
}
