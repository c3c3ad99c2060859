//! Row reduction over a small finite field.

use super::field::{Elem, FieldSpec};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Elem>>, f: &FieldSpec) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(mut rows: Vec<Vec<Elem>>, f: &FieldSpec) -> usize {
    rref(&mut rows, f).len()
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn nullspace(mut rows: Vec<Vec<Elem>>, ncols: usize, f: &FieldSpec) -> Vec<Vec<Elem>> {
    let pivots = rref(&mut rows, f);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_over_f3() {
        let f = FieldSpec::new(3).unwrap();
        // x + y + z = 0 has a 2-dimensional solution space
        let basis = nullspace(vec![vec![1, 1, 1]], 3, &f);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s = v.iter().fold(0, |acc, &x| f.add(acc, x));
            assert_eq!(s, 0);
        }
        assert_eq!(rank(vec![vec![1, 2], vec![2, 1]], &f), 1);
    }
}
