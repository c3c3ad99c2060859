//! Brute-force oracle over small finite fields.
//!
//! Everything here enumerates: matrices, group elements, orbits and
//! endomorphism algebras. Hard size guards keep the enumerations at desk
//! scale; anything outside them is refused with [`Error::SizeGuard`].

mod blocks;
mod field;
mod linalg;
mod matrix;
mod orbits;

use rayon::prelude::*;

pub use blocks::{count_irreducible, jordan_block, jordan_matrix, MonicPoly};
pub use field::{Elem, FieldSpec};
pub use matrix::FqMatrix;
pub use orbits::{
    bruteforce_i_a, classify_orbit, classify_tuple, commutant_basis, endomorphism_summary, enumerate_orbits,
    Classification, EndoSummary, OrbitRecord,
};

use crate::error::{Error, Result};
use crate::partitions::{inner_product, Partition};

/// A g-tuple of `n x n` matrices.
pub type FqMatrixTuple = Vec<FqMatrix>;

/// Largest endomorphism algebra (`q^k` elements) we are willing to enumerate.
pub const ENDO_LIMIT: u64 = 1 << 14;

fn matrix_guard(n: usize, q: usize) -> Result<()> {
    let ok = match n {
        0 => false,
        1 => true,
        2 => q <= 9,
        3 => q <= 3,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::SizeGuard(format!(
            "matrix enumeration refused for n = {n}, q = {q} (allowed: n = 1, n = 2 with q <= 9, n = 3 with q <= 3)"
        )))
    }
}

pub(crate) fn orbit_guard(g: usize, n: usize, q: usize) -> Result<()> {
    let ok = (1..=3).contains(&g) && (n == 1 || matches!((n, q), (2, 2) | (2, 3) | (3, 2)));
    if ok {
        Ok(())
    } else {
        Err(Error::SizeGuard(format!(
            "orbit enumeration refused for g = {g}, n = {n}, q = {q} \
             (allowed: 1 <= g <= 3 and n = 1, or (n, q) in {{(2,2), (2,3), (3,2)}})"
        )))
    }
}

fn all_matrices(n: usize, f: &FieldSpec) -> impl ParallelIterator<Item = FqMatrix> + '_ {
    let total = (f.q() as u64).pow((n * n) as u32);
    (0..total).into_par_iter().map(move |code| FqMatrix::decode(n, f.q(), code))
}

/// All nilpotent `n x n` matrices, in lexicographic order of their entries.
pub fn enumerate_nilpotent(n: usize, f: &FieldSpec) -> Result<Vec<FqMatrix>> {
    matrix_guard(n, f.q())?;
    let out: Vec<FqMatrix> = all_matrices(n, f).filter(|m| m.is_nilpotent(f)).collect();
    assert_eq!(out.len() as u64, (f.q() as u64).pow((n * n - n) as u32), "nilpotent count");
    Ok(out)
}

/// `|GL(n, F_q)| = prod_{i < n} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u64) -> u64 {
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

/// All invertible `n x n` matrices, in lexicographic order.
pub fn enumerate_gl(n: usize, f: &FieldSpec) -> Result<Vec<FqMatrix>> {
    matrix_guard(n, f.q())?;
    let out: Vec<FqMatrix> = all_matrices(n, f).filter(|m| m.is_invertible(f)).collect();
    assert_eq!(out.len() as u64, gl_order(n, f.q() as u64), "GL order");
    Ok(out)
}

/// Number of orbits of nilpotent g-tuples by Burnside's lemma.
pub fn burnside_m(g: usize, n: usize, f: &FieldSpec) -> Result<u128> {
    orbit_guard(g, n, f.q())?;
    let nil = enumerate_nilpotent(n, f)?;
    let gl = enumerate_gl(n, f)?;
    let total: u128 = gl
        .par_iter()
        .map(|t| {
            let fixed = nil.iter().filter(|m| m.commutes_with(t, f)).count() as u128;
            fixed.pow(g as u32)
        })
        .sum();
    let order = gl.len() as u128;
    assert_eq!(total % order, 0, "Burnside sum not divisible by |GL|");
    Ok(total / order)
}

/// `q^{d(<lambda,lambda> - l(lambda))}`.
pub fn nilcount_formula(lambda: &Partition, d: usize, q: u64) -> u64 {
    q.pow((d * (inner_product(lambda, lambda) - lambda.length())) as u32)
}

/// Counts nilpotent matrices commuting with `J_lambda(f)` by enumerating
/// the commutant.
pub fn count_nilpotent_commutant(lambda: &Partition, poly: &MonicPoly, f: &FieldSpec) -> Result<u64> {
    let d = poly.degree();
    let size = d * lambda.weight();
    if f.q() > 3 || size == 0 || size > 4 {
        return Err(Error::SizeGuard(format!(
            "nilcount refused for d*|lambda| = {size}, q = {} (allowed: 1 <= d*|lambda| <= 4 and q <= 3)",
            f.q()
        )));
    }
    if !poly.is_irreducible(f) {
        return Err(Error::InvalidArgument(format!("{poly:?} is not irreducible over F_{}", f.q())));
    }
    let j = jordan_matrix(lambda, poly, f);
    let basis = commutant_basis(&[j], f);
    let count = orbits::span_elements(&basis, f)?.filter(|e| e.is_nilpotent(f)).count();
    Ok(count as u64)
}
