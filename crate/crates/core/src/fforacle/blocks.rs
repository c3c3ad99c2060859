//! Monic polynomials over `F_q`, companion matrices and the Jordan-type
//! blocks `J_lambda(f)`.

use std::fmt;

use super::field::{Elem, FieldSpec};
use super::matrix::FqMatrix;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Monic polynomial over `F_q`, ascending coefficients with leading 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    coeffs: Vec<Elem>,
}

impl MonicPoly {
    /// Panics unless the last coefficient is 1.
    pub fn new(coeffs: Vec<Elem>) -> Self {
        assert_eq!(coeffs.last(), Some(&1), "polynomial must be monic");
        MonicPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Parses expressions such as `x`, `x-1`, `x+2`, `x^2+x+1`, `x^3 + 2x + 1`.
    /// Integer coefficients are reduced into the prime subfield.
    pub fn parse(s: &str, f: &FieldSpec) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(i64, usize)> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.find('x') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = &term[..pos];
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                    let tail = &term[pos + 1..];
                    let p = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (c, p)
                }
            };
            terms.push((sign * coef, power));
        }
        let degree = terms.iter().map(|&(_, p)| p).max().unwrap_or(0);
        let mut coeffs = vec![0 as Elem; degree + 1];
        for (c, p) in terms {
            coeffs[p] = f.add(coeffs[p], f.from_int(c));
        }
        if degree == 0 || coeffs[degree] != 1 {
            return Err(Error::InvalidArgument(format!("{s:?} is not monic of positive degree")));
        }
        Ok(MonicPoly { coeffs })
    }

    /// Irreducible over `F_q`: no monic factor of degree `1..=deg/2`.
    pub fn is_irreducible(&self, f: &FieldSpec) -> bool {
        let d = self.degree();
        (1..=d / 2).all(|k| all_monic(k, f).iter().all(|m| !divides(m, &self.coeffs, f)))
    }

    /// Companion matrix: ones on the superdiagonal, `-a_0 .. -a_{d-1}` in the
    /// last row.
    pub fn companion(&self, f: &FieldSpec) -> FqMatrix {
        let d = self.degree();
        let mut m = FqMatrix::zero(d);
        for i in 0..d.saturating_sub(1) {
            m.set(i, i + 1, 1);
        }
        for j in 0..d {
            m.set(d - 1, j, f.neg(self.coeffs[j]));
        }
        m
    }
}

impl fmt::Debug for MonicPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(fm, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(fm, "{c}")?,
                (1, 1) => write!(fm, "x")?,
                (1, c) => write!(fm, "{c}x")?,
                (k, 1) => write!(fm, "x^{k}")?,
                (k, c) => write!(fm, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

fn all_monic(k: usize, f: &FieldSpec) -> Vec<Vec<Elem>> {
    let q = f.q();
    (0..q.pow(k as u32))
        .map(|mut idx| {
            let mut v: Vec<Elem> = (0..k)
                .map(|_| {
                    let c = (idx % q) as Elem;
                    idx /= q;
                    c
                })
                .collect();
            v.push(1);
            v
        })
        .collect()
}

/// Does monic `m` divide `p`?
fn divides(m: &[Elem], p: &[Elem], f: &FieldSpec) -> bool {
    let mut r = p.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (j, &mc) in m.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(lead, mc));
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`, `x`
/// excluded, by exhaustive search.
pub fn count_irreducible(d: usize, f: &FieldSpec) -> usize {
    all_monic(d, f)
        .into_iter()
        .map(MonicPoly::new)
        .filter(|p| p.is_irreducible(f))
        .filter(|p| !(d == 1 && p.coeffs[0] == 0))
        .count()
}

/// `J_m(f)`: `m x m` block matrix with `c(f)` on the diagonal and identity
/// blocks on the block superdiagonal.
pub fn jordan_block(m: usize, poly: &MonicPoly, f: &FieldSpec) -> FqMatrix {
    let d = poly.degree();
    let c = poly.companion(f);
    let mut out = FqMatrix::zero(m * d);
    for b in 0..m {
        for r in 0..d {
            for col in 0..d {
                out.set(b * d + r, b * d + col, c.get(r, col));
            }
        }
        if b + 1 < m {
            for r in 0..d {
                out.set(b * d + r, (b + 1) * d + r, 1);
            }
        }
    }
    out
}

/// `J_lambda(f) = J_{lambda_1}(f) + J_{lambda_2}(f) + ...` (direct sum).
pub fn jordan_matrix(lambda: &Partition, poly: &MonicPoly, f: &FieldSpec) -> FqMatrix {
    let blocks: Vec<FqMatrix> = lambda.parts().iter().map(|&m| jordan_block(m, poly, f)).collect();
    FqMatrix::direct_sum(&blocks)
}
