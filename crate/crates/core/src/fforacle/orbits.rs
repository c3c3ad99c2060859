use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::field::{Elem, FieldSpec};
use super::linalg;
use super::matrix::FqMatrix;
use super::{enumerate_gl, enumerate_nilpotent, orbit_guard, ENDO_LIMIT};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Decomposable,
    Indecomposable,
    AbsolutelyIndecomposable,
}

impl Classification {
    pub fn is_indecomposable(self) -> bool {
        self != Classification::Decomposable
    }
}

/// What the oracle learns from enumerating an endomorphism algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndoSummary {
    /// `k = dim End`.
    pub dim: usize,
    pub units: u64,
    pub non_units: u64,
    /// Non-units form an additive subgroup.
    pub local: bool,
    /// `|End / rad End|`, only for local algebras.
    pub residue_field_size: Option<u64>,
}

impl EndoSummary {
    pub fn classification(&self, q: u64) -> Classification {
        match self.residue_field_size {
            None => Classification::Decomposable,
            Some(s) if s == q => Classification::AbsolutelyIndecomposable,
            Some(_) => Classification::Indecomposable,
        }
    }
}

/// One orbit of nilpotent tuples under simultaneous conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    /// Lexicographically smallest tuple in the orbit.
    pub representative: Vec<FqMatrix>,
    pub size: u64,
    pub endo_dim: usize,
    pub local: bool,
    pub residue_field_size: Option<u64>,
    pub q: u64,
}

/// Basis of `{E : E M_i = M_i E for all i}`.
pub fn commutant_basis(tuple: &[FqMatrix], f: &FieldSpec) -> Vec<FqMatrix> {
    let n = tuple.first().expect("commutant of an empty tuple").order();
    let var = |r: usize, c: usize| r * n + c;
    let mut rows = Vec::with_capacity(tuple.len() * n * n);
    for m in tuple {
        for r in 0..n {
            for c in 0..n {
                // (E M - M E)_{rc} = sum_k E_{rk} M_{kc} - M_{rk} E_{kc}
                let mut row = vec![0 as Elem; n * n];
                for k in 0..n {
                    row[var(r, k)] = f.add(row[var(r, k)], m.get(k, c));
                    row[var(k, c)] = f.sub(row[var(k, c)], m.get(r, k));
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![0; n * n]);
    }
    linalg::nullspace(rows, n * n, f)
        .into_iter()
        .map(|v| FqMatrix::from_entries(n, v))
        .collect()
}

/// Iterates over all `q^k` elements of the span, paired with their
/// coefficient vectors.
fn span_with_coords<'a>(
    basis: &'a [FqMatrix],
    f: &'a FieldSpec,
) -> Result<impl Iterator<Item = (Vec<Elem>, FqMatrix)> + 'a> {
    let q = f.q() as u64;
    let k = basis.len();
    let total = q.checked_pow(k as u32).filter(|&t| t <= ENDO_LIMIT).ok_or_else(|| {
        Error::SizeGuard(format!("algebra of dimension {k} over F_{q} exceeds the {ENDO_LIMIT}-element limit"))
    })?;
    let n = basis.first().map_or(0, FqMatrix::order);
    Ok((0..total).map(move |mut idx| {
        let coords: Vec<Elem> = (0..k)
            .map(|_| {
                let c = (idx % q) as Elem;
                idx /= q;
                c
            })
            .collect();
        let m = coords
            .iter()
            .zip(basis)
            .filter(|(&c, _)| c != 0)
            .fold(FqMatrix::zero(n), |acc, (&c, b)| acc.add(&b.scale(c, f), f));
        (coords, m)
    }))
}

pub(crate) fn span_elements<'a>(basis: &'a [FqMatrix], f: &'a FieldSpec) -> Result<impl Iterator<Item = FqMatrix> + 'a> {
    Ok(span_with_coords(basis, f)?.map(|(_, m)| m))
}

/// Enumerates `End` of the representation given by `tuple`.
pub fn endomorphism_summary(tuple: &[FqMatrix], f: &FieldSpec) -> Result<EndoSummary> {
    let basis = commutant_basis(tuple, f);
    let q = f.q() as u64;
    let mut non_unit_coords = Vec::new();
    let mut units = 0u64;
    for (coords, m) in span_with_coords(&basis, f)? {
        if m.is_invertible(f) {
            units += 1;
        } else {
            non_unit_coords.push(coords);
        }
    }
    let non_units = non_unit_coords.len() as u64;
    let span_dim = linalg::rank(non_unit_coords, f);
    let local = q.pow(span_dim as u32) == non_units;
    let total = units + non_units;
    Ok(EndoSummary {
        dim: basis.len(),
        units,
        non_units,
        local,
        residue_field_size: local.then(|| total / non_units),
    })
}

pub fn classify_tuple(tuple: &[FqMatrix], f: &FieldSpec) -> Result<Classification> {
    Ok(endomorphism_summary(tuple, f)?.classification(f.q() as u64))
}

pub fn classify_orbit(rec: &OrbitRecord) -> Classification {
    match rec.residue_field_size {
        None => Classification::Decomposable,
        Some(s) if s == rec.q => Classification::AbsolutelyIndecomposable,
        Some(_) => Classification::Indecomposable,
    }
}

/// All orbits of nilpotent g-tuples, ordered by representative.
///
/// Tuples are indexed in base `|N|` over the sorted nilpotent list, so index
/// order is lexicographic order. Scanning indices upward, the first unvisited
/// tuple is the minimum of its orbit; the orbit is then swept out through
/// precomputed conjugation permutations.
pub fn enumerate_orbits(g: usize, n: usize, f: &FieldSpec) -> Result<Vec<OrbitRecord>> {
    orbit_guard(g, n, f.q())?;
    let nil = enumerate_nilpotent(n, f)?;
    let gl = enumerate_gl(n, f)?;
    let position: HashMap<&FqMatrix, usize> = nil.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let perms: Vec<Vec<usize>> = gl
        .par_iter()
        .map(|t| {
            let t_inv = t.inverse(f).expect("invertible");
            nil.iter().map(|m| position[&m.conjugate_by(t, &t_inv, f)]).collect()
        })
        .collect();

    let base = nil.len();
    let total = base.pow(g as u32);
    let digits = |mut idx: usize| -> Vec<usize> {
        let mut d = vec![0; g];
        for slot in d.iter_mut().rev() {
            *slot = idx % base;
            idx /= base;
        }
        d
    };
    let mut visited = vec![false; total];
    let mut found: Vec<(usize, u64)> = Vec::new();
    for start in 0..total {
        if visited[start] {
            continue;
        }
        let ds = digits(start);
        let mut size = 0u64;
        for perm in &perms {
            let image = ds.iter().fold(0, |acc, &d| acc * base + perm[d]);
            if !visited[image] {
                visited[image] = true;
                size += 1;
            }
        }
        found.push((start, size));
    }

    found
        .into_par_iter()
        .map(|(start, size)| {
            let representative: Vec<FqMatrix> = digits(start).into_iter().map(|d| nil[d].clone()).collect();
            let summary = endomorphism_summary(&representative, f)?;
            Ok(OrbitRecord {
                representative,
                size,
                endo_dim: summary.dim,
                local: summary.local,
                residue_field_size: summary.residue_field_size,
                q: f.q() as u64,
            })
        })
        .collect()
}

/// `(I, A)`: numbers of indecomposable and absolutely indecomposable orbits.
pub fn bruteforce_i_a(g: usize, n: usize, f: &FieldSpec) -> Result<(u64, u64)> {
    let orbits = enumerate_orbits(g, n, f)?;
    let classes: Vec<Classification> = orbits.iter().map(classify_orbit).collect();
    let i = classes.iter().filter(|c| c.is_indecomposable()).count() as u64;
    let a = classes
        .iter()
        .filter(|&&c| c == Classification::AbsolutelyIndecomposable)
        .count() as u64;
    Ok((i, a))
}
