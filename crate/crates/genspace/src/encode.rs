//! Flatten a corpus into categorical or one-hot design matrices.
//!
//! Flattening is row-major over (row, col); one-hot adds the tile-type index
//! innermost, so a cell occupies a contiguous T-wide block of columns.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::corpus::{LevelCorpus, LevelGrid, TileAlphabet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingKind {
    Categorical,
    OneHot,
}

/// Origin of one matrix column in the source grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnMeta {
    pub row: usize,
    pub col: usize,
    /// Tile-type index, present for one-hot columns only.
    pub tile_type: Option<usize>,
}

/// Stacked flattened representation of a corpus, one row per level.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    values: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
    kind: EncodingKind,
    column_meta: Vec<ColumnMeta>,
    row_ids: Vec<String>,
    row_sets: Vec<String>,
    n_symbols: usize,
}

impl DesignMatrix {
    /// Build directly from raw values; used by the reducers' tests and by
    /// callers that already have numeric data.
    pub fn from_raw(
        values: Vec<f64>,
        n_rows: usize,
        n_cols: usize,
        kind: EncodingKind,
        row_ids: Vec<String>,
        row_sets: Vec<String>,
    ) -> Self {
        assert_eq!(values.len(), n_rows * n_cols);
        assert_eq!(row_ids.len(), n_rows);
        assert_eq!(row_sets.len(), n_rows);
        DesignMatrix {
            values,
            n_rows,
            n_cols,
            kind,
            column_meta: Vec::new(),
            row_ids,
            row_sets,
            n_symbols: 0,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.n_cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.n_cols..(row + 1) * self.n_cols]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn column_meta(&self) -> &[ColumnMeta] {
        &self.column_meta
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn row_sets(&self) -> &[String] {
        &self.row_sets
    }

    pub fn n_symbols(&self) -> usize {
        self.n_symbols
    }

    /// Dump to delimited text: a header line carrying the column origins,
    /// then one row per level prefixed by its id and set.
    pub fn write_delimited(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        out.push_str("level_id\tset_label");
        for m in &self.column_meta {
            match m.tile_type {
                Some(t) => write!(out, "\tr{}c{}t{}", m.row, m.col, t).unwrap(),
                None => write!(out, "\tr{}c{}", m.row, m.col).unwrap(),
            }
        }
        out.push('\n');
        for i in 0..self.n_rows {
            out.push_str(&self.row_ids[i]);
            out.push('\t');
            out.push_str(&self.row_sets[i]);
            for v in self.row(i) {
                write!(out, "\t{v}").unwrap();
            }
            out.push('\n');
        }
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }
}

fn ids_and_sets(corpus: &LevelCorpus) -> (Vec<String>, Vec<String>) {
    let ids = corpus
        .levels()
        .iter()
        .map(|l| l.level_id().to_string())
        .collect();
    let sets = corpus
        .levels()
        .iter()
        .map(|l| l.set_label().to_string())
        .collect();
    (ids, sets)
}

/// Row i = level i's cells in row-major order, as alphabet indices.
pub fn encode_categorical(corpus: &LevelCorpus) -> Result<DesignMatrix> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let (h, w) = (corpus.height(), corpus.width());
    let d = h * w;
    let mut values = Vec::with_capacity(corpus.len() * d);
    for level in corpus.levels() {
        values.extend(level.cells().iter().map(|&c| c as f64));
    }
    let mut column_meta = Vec::with_capacity(d);
    for row in 0..h {
        for col in 0..w {
            column_meta.push(ColumnMeta {
                row,
                col,
                tile_type: None,
            });
        }
    }
    let (row_ids, row_sets) = ids_and_sets(corpus);
    Ok(DesignMatrix {
        values,
        n_rows: corpus.len(),
        n_cols: d,
        kind: EncodingKind::Categorical,
        column_meta,
        row_ids,
        row_sets,
        n_symbols: corpus.alphabet().len(),
    })
}

/// One-hot encoding: each cell becomes a T-wide indicator block, flattened
/// row-major over (row, col) with tile type innermost. d = H·W·T.
pub fn encode_onehot(corpus: &LevelCorpus) -> Result<DesignMatrix> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let (h, w) = (corpus.height(), corpus.width());
    let t = corpus.alphabet().len();
    let d = h * w * t;
    let mut values = vec![0.0; corpus.len() * d];
    for (i, level) in corpus.levels().iter().enumerate() {
        let base = i * d;
        for (cell_idx, &sym) in level.cells().iter().enumerate() {
            values[base + cell_idx * t + sym as usize] = 1.0;
        }
    }
    let mut column_meta = Vec::with_capacity(d);
    for row in 0..h {
        for col in 0..w {
            for tile_type in 0..t {
                column_meta.push(ColumnMeta {
                    row,
                    col,
                    tile_type: Some(tile_type),
                });
            }
        }
    }
    let (row_ids, row_sets) = ids_and_sets(corpus);
    Ok(DesignMatrix {
        values,
        n_rows: corpus.len(),
        n_cols: d,
        kind: EncodingKind::OneHot,
        column_meta,
        row_ids,
        row_sets,
        n_symbols: t,
    })
}

/// Invert the flattening using the column metadata; supports both encodings.
pub fn decode(matrix: &DesignMatrix, alphabet: &TileAlphabet) -> Result<Vec<LevelGrid>> {
    if matrix.column_meta.is_empty() {
        return Err(Error::Config("matrix has no column metadata".into()));
    }
    let h = matrix.column_meta.iter().map(|m| m.row).max().unwrap() + 1;
    let w = matrix.column_meta.iter().map(|m| m.col).max().unwrap() + 1;
    let mut grids = Vec::with_capacity(matrix.n_rows);
    for i in 0..matrix.n_rows {
        let mut cells = vec![0u8; h * w];
        match matrix.kind {
            EncodingKind::Categorical => {
                for (j, m) in matrix.column_meta.iter().enumerate() {
                    cells[m.row * w + m.col] = matrix.get(i, j) as u8;
                }
            }
            EncodingKind::OneHot => {
                for (j, m) in matrix.column_meta.iter().enumerate() {
                    if matrix.get(i, j) == 1.0 {
                        cells[m.row * w + m.col] = m.tile_type.ok_or_else(|| {
                            Error::Config("one-hot column lacks tile_type".into())
                        })? as u8;
                    }
                }
            }
        }
        if cells.iter().any(|&c| (c as usize) >= alphabet.len()) {
            return Err(Error::Config("decoded symbol index out of range".into()));
        }
        grids.push(LevelGrid::new(
            cells,
            h,
            w,
            matrix.row_sets[i].clone(),
            matrix.row_ids[i].clone(),
        ));
    }
    Ok(grids)
}
