//! Sparse integer matrices and the plain-text exchange format.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

/// A sparse matrix with integer entries, stored as an ordered triplet map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> SparseIntMatrix {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> SparseIntMatrix {
        let mut m = SparseIntMatrix::new(rows, cols);
        for (r, c, v) in triplets {
            m.add(r, c, v);
        }
        m
    }

    pub fn from_dense(data: &[&[i64]]) -> SparseIntMatrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = SparseIntMatrix::new(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.add(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols, "entry out of bounds");
        if v == 0 {
            return;
        }
        let slot = self.entries.entry((r, c)).or_insert(0);
        *slot += v;
        if *slot == 0 {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    /// Rows as sparse vectors (sorted by column).
    pub fn row_vectors(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(r, c), &v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    /// Product `self * other` (for boundary-composite checks).
    pub fn multiply(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let rows_of_self = self.row_vectors();
        let mut out = SparseIntMatrix::new(self.rows, other.cols);
        let other_rows = other.row_vectors();
        for r in 0..self.rows {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(mid, a) in &rows_of_self[r] {
                for &(c, b) in &other_rows[mid] {
                    *acc.entry(c).or_insert(0) += a * b;
                }
            }
            for (c, v) in acc {
                out.add(r, c, v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// First nonzero entry in row-major order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, i64)> {
        self.iter().next()
    }

    /// Write the text form: a header `dim_from dim_to rows cols nnz`, then
    /// one `row col value` triple per line.
    pub fn write_text(
        &self,
        dim_from: usize,
        dim_to: usize,
        w: &mut impl Write,
    ) -> io::Result<()> {
        writeln!(w, "{} {} {} {} {}", dim_from, dim_to, self.rows, self.cols, self.nnz())?;
        for (r, c, v) in self.iter() {
            writeln!(w, "{r} {c} {v}")?;
        }
        Ok(())
    }

    /// Parse the text form produced by [`write_text`](Self::write_text).
    /// Returns `(dim_from, dim_to, matrix)`.
    pub fn read_text(r: &mut impl BufRead) -> io::Result<(usize, usize, SparseIntMatrix)> {
        let mut header = String::new();
        r.read_line(&mut header)?;
        let parts: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e)))
            .collect::<Result<_, _>>()?;
        if parts.len() != 5 {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "bad matrix header"));
        }
        let (dim_from, dim_to, rows, cols, nnz) =
            (parts[0], parts[1], parts[2], parts[3], parts[4]);
        let mut m = SparseIntMatrix::new(rows, cols);
        for _ in 0..nnz {
            let mut line = String::new();
            r.read_line(&mut line)?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(io::Error::new(io::ErrorKind::InvalidData, "bad matrix triple"));
            }
            let row: usize =
                toks[0].parse().map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
            let col: usize =
                toks[1].parse().map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
            let val: i64 =
                toks[2].parse().map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
            m.add(row, col, val);
        }
        Ok((dim_from, dim_to, m))
    }
}
