//! Sparse exact rank and kernel dimension for the Hom-space linear systems.
//!
//! The systems solved here are very sparse — representation matrices are
//! near-permutations, so each equation touches a handful of unknowns — but
//! can reach thousands of unknowns.  Elimination keeps rows as sorted
//! sparse vectors and picks pivots greedily to limit fill-in (shortest
//! active row, then the column occurring in fewest rows).

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

/// One linear equation: sorted `(column, coefficient)` pairs, coefficients
/// nonzero.
pub type SparseRow = Vec<(usize, BigRational)>;

/// `target += factor · source`, merging sorted sparse rows.
fn axpy(target: &SparseRow, factor: &BigRational, source: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        match (target.get(i), source.get(j)) {
            (Some((ct, vt)), Some((cs, vs))) if ct == cs => {
                let v = vt + factor * vs;
                if !v.is_zero() {
                    out.push((*ct, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ct, vt)), Some((cs, _))) if ct < cs => {
                out.push((*ct, vt.clone()));
                i += 1;
            }
            (Some(_), Some((cs, vs))) => {
                let v = factor * vs;
                if !v.is_zero() {
                    out.push((*cs, v));
                }
                j += 1;
            }
            (Some((ct, vt)), None) => {
                out.push((*ct, vt.clone()));
                i += 1;
            }
            (None, Some((cs, vs))) => {
                let v = factor * vs;
                if !v.is_zero() {
                    out.push((*cs, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Exact rank of a sparse system.
pub fn sparse_rank(rows: Vec<SparseRow>) -> usize {
    let mut rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    // rows_with_col[c] = active row indices whose support contains c.
    let mut rows_with_col: std::collections::BTreeMap<usize, BTreeSet<usize>> =
        std::collections::BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            rows_with_col.entry(c).or_default().insert(i);
        }
    }
    // Active rows ordered by (length, index) for cheap shortest-row lookup.
    let mut by_len: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.len(), i))
        .collect();

    let mut rank = 0;
    while let Some(&(_, pivot_row)) = by_len.iter().next() {
        rank += 1;
        by_len.remove(&(rows[pivot_row].len(), pivot_row));
        let prow = std::mem::take(&mut rows[pivot_row]);

        // Pivot column: the entry of this row contained in fewest rows.
        let (pivot_col, pivot_val) = prow
            .iter()
            .min_by_key(|(c, _)| rows_with_col.get(c).map_or(0, |s| s.len()))
            .map(|(c, v)| (*c, v.clone()))
            .expect("active rows are nonempty");

        for &(c, _) in &prow {
            rows_with_col.get_mut(&c).expect("support is indexed").remove(&pivot_row);
        }

        let victims: Vec<usize> = rows_with_col
            .get(&pivot_col)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for v in victims {
            let coeff = rows[v]
                .iter()
                .find(|(c, _)| *c == pivot_col)
                .map(|(_, val)| val.clone())
                .expect("victim contains the pivot column");
            let factor = -coeff / &pivot_val;
            let old_len = rows[v].len();
            let new_row = axpy(&rows[v], &factor, &prow);
            // Re-index the support delta.
            for &(c, _) in &rows[v] {
                rows_with_col.get_mut(&c).expect("support is indexed").remove(&v);
            }
            for &(c, _) in &new_row {
                rows_with_col.entry(c).or_default().insert(v);
            }
            by_len.remove(&(old_len, v));
            if !new_row.is_empty() {
                by_len.insert((new_row.len(), v));
            }
            rows[v] = new_row;
        }
    }
    rank
}

/// Kernel dimension of a sparse system in `n_unknowns` unknowns.
pub fn sparse_kernel_dim(rows: Vec<SparseRow>, n_unknowns: usize) -> usize {
    n_unknowns - sparse_rank(rows)
}
