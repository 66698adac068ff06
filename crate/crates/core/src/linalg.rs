//! Dense Gaussian elimination over a [`FieldSpec`], on rows of element codes.

use crate::field::{Code, FieldSpec};

/// Reduces `rows` in place to reduced row-echelon form, drops zero rows and
/// returns the pivot columns.
pub(crate) fn rref(f: &FieldSpec, rows: &mut Vec<Vec<Code>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let factor = rows[i][c];
            let pivot_row = rows[r].clone();
            for (x, &p) in rows[i].iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(f: &FieldSpec, rows: &[Vec<Code>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` lies in the span.
pub(crate) fn reduce(f: &FieldSpec, basis: &[Vec<Code>], pivots: &[usize], v: &mut [Code]) {
    for (row, &c) in basis.iter().zip(pivots) {
        let factor = v[c];
        if factor == 0 {
            continue;
        }
        for (x, &b) in v.iter_mut().zip(row) {
            let t = f.mul(factor, b);
            *x = f.sub(*x, t);
        }
    }
}

pub(crate) fn pivots_of(basis: &[Vec<Code>]) -> Vec<usize> {
    basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
        .collect()
}

/// Row vector times matrix: `sum_i coeffs[i] * rows[i]`.
pub(crate) fn combine(f: &FieldSpec, coeffs: &[Code], rows: &[Vec<Code>], ncols: usize) -> Vec<Code> {
    let mut out = vec![0; ncols];
    for (&c, row) in coeffs.iter().zip(rows) {
        if c == 0 {
            continue;
        }
        for (x, &r) in out.iter_mut().zip(row) {
            *x = f.add(*x, f.mul(c, r));
        }
    }
    out
}
