//! Row reduction over a table-backed field.

use super::field::{Elem, FieldTable};

/// Reduces `rows` to reduced row echelon form in place, drops zero rows, and
/// returns the pivot columns.
pub fn rref(f: &FieldTable, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let t = rows[i][c];
            for j in 0..ncols {
                let sub = f.mul(t, rows[r][j]);
                rows[i][j] = f.sub(rows[i][j], sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldTable, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// A basis of `{x : r . x = 0 for every row r}`.
pub fn nullspace(f: &FieldTable, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// `M . x` for a matrix given by rows.
pub fn mat_vec(f: &FieldTable, rows: &[Vec<Elem>], x: &[Elem]) -> Vec<Elem> {
    rows.iter()
        .map(|r| r.iter().zip(x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}
