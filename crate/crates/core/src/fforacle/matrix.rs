use std::fmt;

use super::field::{Elem, FieldSpec};

/// Square matrix over a small finite field, entries row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    n: usize,
    entries: Vec<Elem>,
}

impl FqMatrix {
    pub fn zero(n: usize) -> Self {
        FqMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Panics unless `entries.len() == n * n`.
    pub fn from_entries(n: usize, entries: Vec<Elem>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        FqMatrix { n, entries }
    }

    /// Decodes the base-`q` row-major index produced by [`FqMatrix::encode`].
    pub fn decode(n: usize, q: usize, mut code: u64) -> Self {
        let mut entries = vec![0; n * n];
        for e in entries.iter_mut().rev() {
            *e = (code % q as u64) as Elem;
            code /= q as u64;
        }
        FqMatrix { n, entries }
    }

    /// Base-`q` number with the first entry most significant, so code order
    /// is lexicographic order of the row-major entries.
    pub fn encode(&self, q: usize) -> u64 {
        self.entries.iter().fold(0u64, |acc, &e| acc * q as u64 + e as u64)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.entries[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.entries[r * self.n + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self, f: &FieldSpec) -> Self {
        FqMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: Elem, f: &FieldSpec) -> Self {
        FqMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, f: &FieldSpec) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    let idx = r * n + c;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize, f: &FieldSpec) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// `M^n = 0` for an `n x n` matrix.
    pub fn is_nilpotent(&self, f: &FieldSpec) -> bool {
        self.pow(self.n, f).is_zero()
    }

    pub fn commutes_with(&self, other: &Self, f: &FieldSpec) -> bool {
        self.mul(other, f) == other.mul(self, f)
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        let rows: Vec<Vec<Elem>> = self.entries.chunks(self.n).map(<[Elem]>::to_vec).collect();
        super::linalg::rank(rows, f)
    }

    pub fn is_invertible(&self, f: &FieldSpec) -> bool {
        self.rank(f) == self.n
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self, f: &FieldSpec) -> Option<Self> {
        let n = self.n;
        let mut a: Vec<Vec<Elem>> = (0..n)
            .map(|r| {
                let mut row = self.entries[r * n..(r + 1) * n].to_vec();
                row.extend((0..n).map(|c| (r == c) as Elem));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, pivot);
            let inv = f.inv(a[col][col]);
            for v in a[col].iter_mut() {
                *v = f.mul(*v, inv);
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let factor = a[r][col];
                    for c in 0..2 * n {
                        let t = f.mul(factor, a[col][c]);
                        a[r][c] = f.sub(a[r][c], t);
                    }
                }
            }
        }
        let entries = a.into_iter().flat_map(|row| row[n..].to_vec()).collect();
        Some(FqMatrix { n, entries })
    }

    /// `t^{-1} self t`, given `t` and its inverse.
    pub fn conjugate_by(&self, t: &Self, t_inv: &Self, f: &FieldSpec) -> Self {
        t_inv.mul(self, f).mul(t, f)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[FqMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zero(n);
        let mut offset = 0;
        for b in blocks {
            for r in 0..b.n {
                for c in 0..b.n {
                    out.set(offset + r, offset + c, b.get(r, c));
                }
            }
            offset += b.n;
        }
        out
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.entries.chunks(self.n.max(1)).enumerate() {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, e) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_roundtrip_and_order() {
        let m = FqMatrix::from_entries(2, vec![1, 2, 0, 1]);
        assert_eq!(FqMatrix::decode(2, 3, m.encode(3)), m);
        let a = FqMatrix::from_entries(2, vec![0, 2, 2, 2]);
        let b = FqMatrix::from_entries(2, vec![1, 0, 0, 0]);
        assert!(a < b && a.encode(3) < b.encode(3));
    }

    #[test]
    fn inverse_over_f4() {
        let f = FieldSpec::new(4).unwrap();
        let m = FqMatrix::from_entries(2, vec![2, 1, 1, 1]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), FqMatrix::identity(2));
        assert!(FqMatrix::from_entries(2, vec![1, 1, 1, 1]).inverse(&f).is_none());
    }
}
