//! Exact sparse linear algebra over Q(i).
//!
//! Kernels of the solution operators are computed by sparse Gaussian
//! elimination with deterministic pivoting (smallest column first, first
//! row wins) and an echelon normalization with leading coefficient 1, so
//! every basis this module produces is canonical and byte-stable.

use std::collections::BTreeMap;

use crate::scalar::GaussScalar;

pub type SparseRow = BTreeMap<usize, GaussScalar>;

fn row_axpy(target: &mut SparseRow, factor: &GaussScalar, source: &SparseRow) {
    // target += factor * source
    for (col, v) in source {
        let add = factor * v;
        match target.get_mut(col) {
            Some(t) => {
                *t += &add;
                if t.is_zero() {
                    target.remove(col);
                }
            }
            None => {
                if !add.is_zero() {
                    target.insert(*col, add);
                }
            }
        }
    }
}

fn normalize_leading(row: &mut SparseRow) {
    if let Some((_, lead)) = row.iter().next() {
        let inv = lead.inv();
        if inv != GaussScalar::one() {
            for v in row.values_mut() {
                *v = &*v * &inv;
            }
        }
    }
}

/// Reduced row echelon form; returns pivot rows (each with leading 1)
/// paired with their pivot columns, in ascending column order.
pub fn rref(rows: Vec<SparseRow>) -> Vec<(usize, SparseRow)> {
    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    let mut pending: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    // Process rows in order, reducing each against the pivots found so far;
    // surviving rows become new pivots. A second pass back-substitutes.
    let mut i = 0;
    while i < pending.len() {
        let mut row = std::mem::take(&mut pending[i]);
        i += 1;
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                break;
            };
            match pivots.binary_search_by_key(&lead, |(c, _)| *c) {
                Ok(idx) => {
                    let coef = -row[&lead].clone();
                    let (_, ref prow) = pivots[idx];
                    let prow = prow.clone();
                    row_axpy(&mut row, &coef, &prow);
                }
                Err(idx) => {
                    normalize_leading(&mut row);
                    pivots.insert(idx, (lead, row));
                    break;
                }
            }
        }
    }
    // back-substitution: clear pivot columns from earlier rows
    for j in (0..pivots.len()).rev() {
        let (col, prow) = pivots[j].clone();
        for k in 0..j {
            let coef = pivots[k].1.get(&col).cloned();
            if let Some(c) = coef {
                row_axpy(&mut pivots[k].1, &-c, &prow);
            }
        }
    }
    pivots
}

pub fn rank(rows: Vec<SparseRow>) -> usize {
    rref(rows).len()
}

/// Canonical nullspace basis of the ncols-column system `rows * x = 0`.
/// One basis vector per free column, in ascending column order; the free
/// coordinate is set to 1.
pub fn nullspace(ncols: usize, rows: Vec<SparseRow>) -> Vec<Vec<GaussScalar>> {
    let pivots = rref(rows);
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.binary_search(&free).is_ok() {
            continue;
        }
        let mut v = vec![GaussScalar::zero(); ncols];
        v[free] = GaussScalar::one();
        for (pc, prow) in &pivots {
            if let Some(c) = prow.get(&free) {
                v[*pc] = -c.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Incremental span with exact membership tests.
#[derive(Clone, Default)]
pub struct SpanReducer {
    pivots: Vec<(usize, SparseRow)>,
}

impl SpanReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, vec: &SparseRow) -> SparseRow {
        let mut row = vec.clone();
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return row;
            };
            match self.pivots.binary_search_by_key(&lead, |(c, _)| *c) {
                Ok(idx) => {
                    let coef = -row[&lead].clone();
                    let prow = self.pivots[idx].1.clone();
                    row_axpy(&mut row, &coef, &prow);
                }
                Err(_) => return row,
            }
        }
    }

    /// Adds a vector to the span; returns true if the dimension grew.
    pub fn add(&mut self, vec: &SparseRow) -> bool {
        let mut row = self.reduce(vec);
        let Some((&lead, _)) = row.iter().next() else {
            return false;
        };
        normalize_leading(&mut row);
        let idx = self
            .pivots
            .binary_search_by_key(&lead, |(c, _)| *c)
            .unwrap_err();
        self.pivots.insert(idx, (lead, row));
        true
    }

    pub fn contains(&self, vec: &SparseRow) -> bool {
        self.reduce(vec).is_empty()
    }
}
