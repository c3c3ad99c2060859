//! The counting chain `P -> H -> A -> I -> M` for a fixed tuple length `g`,
//! together with the product-identity verifiers and the coefficient scan.
//!
//! `P(X, q)` is Hua's generating series built from partition coefficients,
//! `H` its formal logarithm, `A` the absolutely indecomposable counts (a
//! Möbius sum of Adams-transported `H` values), `I` the indecomposable counts
//! and `M` the total orbit counts. `M` is always produced by two independent
//! routes that are checked against each other.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rat, rat_frac, rat_to_string, BigRat, PolyQ, RationalFunctionQ, TruncatedQSeries};
use crate::partitions::{divisors, enumerate_partitions, irr_count, mobius, p_coefficient};
use crate::series::TruncatedXSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    I,
    M,
    H,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::I => "I",
            Kind::M => "M",
            Kind::H => "H",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Kind::A),
            "I" | "i" => Ok(Kind::I),
            "M" | "m" => Ok(Kind::M),
            "H" | "h" => Ok(Kind::H),
            other => Err(Error::InvalidArgument(format!("unknown kind {other:?}"))),
        }
    }
}

/// One of `A_g(n,q)`, `I_g(n,q)`, `M_g(n,q)` (polynomials) or `H_g(n,q)`
/// (a rational function).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomial {
    pub kind: Kind,
    pub g: usize,
    pub n: usize,
    pub value: RationalFunctionQ,
}

impl CountingPolynomial {
    /// The polynomial value; `None` only for a non-polynomial `H`.
    pub fn poly(&self) -> Option<&PolyQ> {
        self.value.as_polynomial()
    }

    /// Integer coefficients `a_{n,s}` in ascending `s` (kind A only).
    pub fn a_coefficients(&self) -> Option<Vec<BigInt>> {
        if self.kind != Kind::A {
            return None;
        }
        self.poly()?.to_bigints()
    }

    pub fn eval(&self, q: u64) -> Result<BigRat> {
        self.value.eval(&rat(q as i64))
    }

    pub fn to_pretty(&self) -> String {
        self.value.to_pretty()
    }
}

/// First coefficient where two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub x_degree: usize,
    pub q_degree: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub g: usize,
    pub x_order: usize,
    pub q_order: Option<usize>,
    pub passed: bool,
    pub mismatch: Option<Mismatch>,
}

impl VerificationReport {
    fn new(identity: &str, g: usize, x_order: usize, q_order: Option<usize>, mismatch: Option<Mismatch>) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            g,
            x_order,
            q_order,
            passed: mismatch.is_none(),
            mismatch,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeCoefficient {
    pub n: usize,
    pub s: usize,
    pub value: String,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub g: usize,
    pub nmax: usize,
    pub negatives: Vec<NegativeCoefficient>,
    pub polynomials: Vec<CountingPolynomial>,
}

/// `P(X, q)` to order `order`: `c_n` sums `p_coefficient(lambda, g)` over the
/// partitions of `n`.
pub fn build_p(g: usize, order: usize) -> TruncatedXSeries {
    assert!(g >= 1, "g must be positive");
    let mut coeffs = vec![RationalFunctionQ::one()];
    for n in 1..=order {
        let c = enumerate_partitions(n)
            .par_iter()
            .map(|lambda| p_coefficient(lambda, g))
            .reduce(RationalFunctionQ::zero, |a, b| &a + &b);
        coeffs.push(c);
    }
    TruncatedXSeries::new(coeffs, order)
}

fn check_g(g: usize) -> Result<()> {
    if g == 0 {
        Err(Error::InvalidArgument("g must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_n(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

fn q_minus_one() -> PolyQ {
    PolyQ::from_ints(&[-1, 1])
}

/// Memoizing driver for a fixed `g`. Not shared across threads.
#[derive(Debug)]
pub struct Pipeline {
    g: usize,
    p: Option<TruncatedXSeries>,
    h: Vec<RationalFunctionQ>,
    h_adams: HashMap<(usize, usize), RationalFunctionQ>,
    a: HashMap<usize, CountingPolynomial>,
    i: HashMap<usize, CountingPolynomial>,
}

impl Pipeline {
    pub fn new(g: usize) -> Result<Self> {
        check_g(g)?;
        Ok(Pipeline {
            g,
            p: None,
            h: Vec::new(),
            h_adams: HashMap::new(),
            a: HashMap::new(),
            i: HashMap::new(),
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `P(X, q)` to order `order`.
    pub fn p_series(&mut self, order: usize) -> TruncatedXSeries {
        match &self.p {
            Some(p) if p.order() >= order => p.truncate(order),
            _ => {
                let p = build_p(self.g, order);
                self.p = Some(p.clone());
                p
            }
        }
    }

    /// `H_g(1..=order, q)`, the coefficients of `log P`.
    pub fn compute_h(&mut self, order: usize) -> Result<Vec<RationalFunctionQ>> {
        if self.h.len() < order {
            let log = self.p_series(order).log()?;
            self.h = log.into_coeffs().into_iter().skip(1).collect();
        }
        Ok(self.h[..order].to_vec())
    }

    pub fn h(&mut self, n: usize) -> Result<CountingPolynomial> {
        check_n(n, "n")?;
        let value = self.compute_h(n)?[n - 1].clone();
        Ok(CountingPolynomial {
            kind: Kind::H,
            g: self.g,
            n,
            value,
        })
    }

    /// `H_g(n, q^d)`.
    fn h_transported(&mut self, n: usize, d: usize) -> Result<RationalFunctionQ> {
        if let Some(v) = self.h_adams.get(&(n, d)) {
            return Ok(v.clone());
        }
        let v = self.compute_h(n)?[n - 1].adams(d);
        self.h_adams.insert((n, d), v.clone());
        Ok(v)
    }

    /// `A_g(n, q) = (q - 1) sum_{d | n} mu(d)/d H_g(n/d, q^d)`.
    ///
    /// The result must be an integer polynomial of degree at most
    /// `(g - 1) n^2`; anything else is reported as an internal error.
    pub fn compute_a(&mut self, n: usize) -> Result<CountingPolynomial> {
        check_n(n, "n")?;
        if let Some(a) = self.a.get(&n) {
            return Ok(a.clone());
        }
        self.compute_h(n)?;
        let mut sum = RationalFunctionQ::zero();
        for d in divisors(n) {
            let mu = mobius(d);
            if mu == 0 {
                continue;
            }
            let term = self.h_transported(n / d, d)?.scale(&rat_frac(mu, d as i64));
            sum = &sum + &term;
        }
        let value = sum.mul_poly(&q_minus_one());
        let what = format!("A_{}({}, q)", self.g, n);
        let poly = value
            .as_polynomial()
            .ok_or_else(|| Error::NonPolynomial { what: what.clone() })?;
        if !poly.is_integral() {
            return Err(Error::NonIntegral { what });
        }
        let bound = (self.g - 1) * n * n;
        let degree = poly.degree().unwrap_or(0);
        if degree > bound {
            return Err(Error::DegreeBound { what, degree, bound });
        }
        let a = CountingPolynomial {
            kind: Kind::A,
            g: self.g,
            n,
            value,
        };
        self.a.insert(n, a.clone());
        Ok(a)
    }

    /// `I_g(n, q) = sum_{d | n} (1/d) sum_{r | d} mu(d/r) A_g(n/d, q^r)`.
    pub fn compute_i(&mut self, n: usize) -> Result<CountingPolynomial> {
        check_n(n, "n")?;
        if let Some(i) = self.i.get(&n) {
            return Ok(i.clone());
        }
        let mut sum = PolyQ::zero();
        for d in divisors(n) {
            let a = self.compute_a(n / d)?;
            let a = a.poly().expect("A is polynomial");
            let mut inner = PolyQ::zero();
            for r in divisors(d) {
                let mu = mobius(d / r);
                if mu != 0 {
                    inner = &inner + &a.adams(r).scale(&rat(mu));
                }
            }
            sum = &sum + &inner.scale(&rat_frac(1, d as i64));
        }
        let i = CountingPolynomial {
            kind: Kind::I,
            g: self.g,
            n,
            value: sum.into(),
        };
        self.i.insert(n, i.clone());
        Ok(i)
    }

    /// Generating series `1 + sum M_g(n,q) X^n` as the product
    /// `prod_{d <= N} P(X^d, q^d)^{irr_count(d)}`.
    ///
    /// Factors with `d > N` are `1 + O(X^{N+1})`, so stopping at `N` is exact.
    pub fn m_series_from_p(&mut self, order: usize) -> Result<TruncatedXSeries> {
        let p = self.p_series(order);
        let factors: Vec<Result<TruncatedXSeries>> = (1..=order)
            .into_par_iter()
            .map(|d| p.adams(d).pow(&irr_count(d).into()))
            .collect();
        let mut acc = TruncatedXSeries::one(order);
        for f in factors {
            acc = acc.mul(&f?)?;
        }
        Ok(acc)
    }

    /// Generating series `prod_n (1 - X^n)^{-I_g(n,q)}`, evaluated as
    /// `exp(sum_n I_g(n,q) sum_k X^{nk} / k)`.
    pub fn m_series_from_i(&mut self, order: usize) -> Result<TruncatedXSeries> {
        let mut log = vec![RationalFunctionQ::zero(); order + 1];
        for n in 1..=order {
            let i = self.compute_i(n)?.value;
            for k in 1..=order / n {
                log[n * k] = &log[n * k] + &i.scale(&rat_frac(1, k as i64));
            }
        }
        TruncatedXSeries::new(log, order).exp()
    }

    /// Compares the two `M` routes coefficientwise.
    pub fn verify_m_routes(&mut self, order: usize) -> Result<VerificationReport> {
        check_n(order, "N")?;
        let r1 = self.m_series_from_p(order)?;
        let r2 = self.m_series_from_i(order)?;
        let mismatch = (0..=order).find(|&n| r1.coeff(n) != r2.coeff(n)).map(|n| Mismatch {
            x_degree: n,
            q_degree: None,
            lhs: r1.coeff(n).to_pretty(),
            rhs: r2.coeff(n).to_pretty(),
        });
        Ok(VerificationReport::new("thm5-routes", self.g, order, None, mismatch))
    }

    /// `M_g(1..=N, q)`, cross-checked between both routes.
    pub fn compute_m(&mut self, order: usize) -> Result<Vec<CountingPolynomial>> {
        check_n(order, "N")?;
        let r1 = self.m_series_from_p(order)?;
        let r2 = self.m_series_from_i(order)?;
        let mut out = Vec::with_capacity(order);
        for n in 1..=order {
            if r1.coeff(n) != r2.coeff(n) {
                return Err(Error::RouteMismatch {
                    what: format!("M_{}", self.g),
                    index: n,
                });
            }
            if !r1.coeff(n).is_polynomial() {
                return Err(Error::NonPolynomial {
                    what: format!("M_{}({}, q)", self.g, n),
                });
            }
            out.push(CountingPolynomial {
                kind: Kind::M,
                g: self.g,
                n,
                value: r1.coeff(n).clone(),
            });
        }
        Ok(out)
    }

    /// Checks `P(X,q) = prod_n prod_s prod_i (1 - q^{s+i} X^n)^{a_{n,s}}`
    /// in the ring truncated at `X^N` and `q^Q`, using the computed `A`.
    pub fn verify_kwi(&mut self, order: usize, q_order: usize) -> Result<VerificationReport> {
        check_n(order, "N")?;
        check_n(q_order, "Q")?;
        let coeffs = (1..=order)
            .map(|n| {
                self.compute_a(n)?
                    .a_coefficients()
                    .ok_or_else(|| Error::NonIntegral { what: format!("A_{}({n}, q)", self.g) })
            })
            .collect::<Result<Vec<_>>>()?;
        let p = self.p_series(order);
        Ok(verify_kwi_with(&p, &coeffs, self.g, q_order, "kwi"))
    }

    /// Lists negative coefficients of `A_g(n, q)` for `n <= nmax`.
    pub fn conjecture_scan(&mut self, nmax: usize) -> Result<ConjectureReport> {
        check_n(nmax, "Nmax")?;
        let mut negatives = Vec::new();
        let mut polynomials = Vec::new();
        for n in 1..=nmax {
            let a = self.compute_a(n)?;
            for (s, c) in a.a_coefficients().expect("A is integral").iter().enumerate() {
                if c.is_negative() {
                    negatives.push(NegativeCoefficient {
                        n,
                        s,
                        value: c.to_string(),
                    });
                }
            }
            polynomials.push(a);
        }
        Ok(ConjectureReport {
            g: self.g,
            nmax,
            negatives,
            polynomials,
        })
    }
}

/// Expands `prod_{n, s, i} (1 - q^{s+i} X^n)^{a_{n,s}}` truncated at `X^N`,
/// `q^Q`. `a[n-1][s]` holds `a_{n,s}`; negative exponents multiply by the
/// geometric series. Factors with `s + i > Q` are skipped since they only
/// touch `q`-degrees above `Q`.
pub fn kwi_product(a: &[Vec<BigInt>], order: usize, q_order: usize) -> Vec<Vec<BigInt>> {
    let mut r = vec![vec![BigInt::zero(); q_order + 1]; order + 1];
    r[0][0] = BigInt::one();
    for (idx, row) in a.iter().enumerate().take(order) {
        let n = idx + 1;
        for (s, a_ns) in row.iter().enumerate() {
            if a_ns.is_zero() || s > q_order {
                continue;
            }
            let times = a_ns.abs().to_usize().expect("exponent fits in usize");
            for i in 0..=q_order - s {
                let m = s + i;
                for _ in 0..times {
                    if a_ns.is_positive() {
                        // multiply by (1 - q^m X^n), in place from the top
                        for x in (n..=order).rev() {
                            for k in (m..=q_order).rev() {
                                if !r[x - n][k - m].is_zero() {
                                    let t = r[x - n][k - m].clone();
                                    r[x][k] -= t;
                                }
                            }
                        }
                    } else {
                        // divide by (1 - q^m X^n), in place from the bottom
                        for x in n..=order {
                            for k in m..=q_order {
                                if !r[x - n][k - m].is_zero() {
                                    let t = r[x - n][k - m].clone();
                                    r[x][k] += t;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    r
}

/// Coefficient grid of `P` expanded around `q = 0`; `None` if any
/// coefficient needs a Laurent shift.
fn expand_p(p: &TruncatedXSeries, q_order: usize) -> Option<Vec<TruncatedQSeries>> {
    let rows: Vec<TruncatedQSeries> = p
        .coeffs()
        .par_iter()
        .map(|c| TruncatedQSeries::expand(c, q_order))
        .collect();
    rows.iter().all(TruncatedQSeries::is_polynomial_clean).then_some(rows)
}

fn compare_grids(lhs: &[TruncatedQSeries], rhs: &[Vec<BigInt>]) -> Option<Mismatch> {
    for (x, (l, r)) in lhs.iter().zip(rhs).enumerate() {
        for (k, (lc, rc)) in l.coeffs().iter().zip(r).enumerate() {
            let rc = BigRat::from_integer(rc.clone());
            if *lc != rc {
                return Some(Mismatch {
                    x_degree: x,
                    q_degree: Some(k),
                    lhs: rat_to_string(lc),
                    rhs: rat_to_string(&rc),
                });
            }
        }
    }
    None
}

/// Compares `P` against the product built from the supplied exponents.
pub fn verify_kwi_with(
    p: &TruncatedXSeries,
    a: &[Vec<BigInt>],
    g: usize,
    q_order: usize,
    identity: &str,
) -> VerificationReport {
    let order = p.order();
    let mismatch = match expand_p(p, q_order) {
        Some(lhs) => compare_grids(&lhs, &kwi_product(a, order, q_order)),
        None => Some(Mismatch {
            x_degree: 0,
            q_degree: None,
            lhs: "Laurent term in P".into(),
            rhs: "power series".into(),
        }),
    };
    VerificationReport::new(identity, g, order, Some(q_order), mismatch)
}

/// The `g = 1` specialization: `P` at `g = 1` equals
/// `prod_{n >= 1} prod_{i >= 0} (1 - q^i X^n)`.
pub fn verify_g1_product(order: usize, q_order: usize) -> Result<VerificationReport> {
    check_n(order, "N")?;
    check_n(q_order, "Q")?;
    let p = build_p(1, order);
    let ones = vec![vec![BigInt::one()]; order];
    Ok(verify_kwi_with(&p, &ones, 1, q_order, "g1-product"))
}
