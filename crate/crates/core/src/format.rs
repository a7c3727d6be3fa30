//! The matrix file format.
//!
//! ```text
//! field GF:3
//! size 2 2
//! block 1
//! 0 2
//! 1 1
//! ```
//!
//! The `block` line is optional. Entries are separated by single spaces and
//! written in canonical form; parsing accepts any run of spaces or tabs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: Matrix<FieldElement>,
    pub block_size: Option<usize>,
}

impl MatrixFile {
    pub fn new(matrix: Matrix<FieldElement>) -> Self {
        MatrixFile {
            matrix,
            block_size: None,
        }
    }

    pub fn with_block_size(mut self, t: usize) -> Result<Self> {
        if t == 0 || !self.matrix.rows().is_multiple_of(t) {
            return Err(Error::BadBlockSize {
                t,
                dim: self.matrix.rows(),
            });
        }
        self.block_size = Some(t);
        Ok(self)
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.spec()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let mut header = |key: &str| -> Result<(usize, Vec<&str>)> {
            let (no, line) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing '{key}' line")))?;
            let mut words = line.split_whitespace();
            if words.next() != Some(key) {
                return Err(Error::Parse(format!("line {}: expected '{key}'", no + 1)));
            }
            Ok((no, words.collect()))
        };

        let (no, words) = header("field")?;
        let [tag] = words[..] else {
            return Err(Error::Parse(format!(
                "line {}: expected 'field <tag>'",
                no + 1
            )));
        };
        let spec: FieldSpec = tag.parse()?;

        let (no, words) = header("size")?;
        let [r, c] = words[..] else {
            return Err(Error::Parse(format!(
                "line {}: expected 'size <rows> <cols>'",
                no + 1
            )));
        };
        let rows = parse_count(r, no)?;
        let cols = parse_count(c, no)?;

        let mut rest: Vec<(usize, &str)> = lines.collect();
        let mut block_size = None;
        if let Some(&(no, line)) = rest.first() {
            if line.split_whitespace().next() == Some("block") {
                let words: Vec<&str> = line.split_whitespace().skip(1).collect();
                let [t] = words[..] else {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'block <t>'",
                        no + 1
                    )));
                };
                block_size = Some(parse_count(t, no)?);
                rest.remove(0);
            }
        }

        if rest.len() != rows {
            return Err(Error::Parse(format!(
                "expected {rows} rows of entries, found {}",
                rest.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (no, line) in rest {
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.len() != cols {
                return Err(Error::Parse(format!(
                    "line {}: expected {cols} entries, found {}",
                    no + 1,
                    words.len()
                )));
            }
            for w in words {
                entries.push(FieldElement::parse(w, &spec)?);
            }
        }
        let file = MatrixFile::new(Matrix::new(rows, cols, entries, spec)?);
        match block_size {
            Some(t) => file.with_block_size(t),
            None => Ok(file),
        }
    }
}

fn parse_count(s: &str, line: usize) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(Error::Parse(format!(
            "line {}: '{s}' is not a positive count",
            line + 1
        ))),
    }
}

impl fmt::Display for MatrixFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        writeln!(f, "field {}", m.spec())?;
        writeln!(f, "size {} {}", m.rows(), m.cols())?;
        if let Some(t) = self.block_size {
            writeln!(f, "block {t}")?;
        }
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for MatrixFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MatrixFile::parse(s)
    }
}
