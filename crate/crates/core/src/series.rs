//! Truncated power series in `X` with coefficients in Q(q).

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{rat, rat_frac, RationalFunctionQ};

/// `c_0 + c_1 X + ... + c_N X^N + O(X^{N+1})`.
///
/// Binary operations require equal truncation orders.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedXSeries {
    coeffs: Vec<RationalFunctionQ>,
}

impl TruncatedXSeries {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<RationalFunctionQ>, order: usize) -> Self {
        coeffs.resize(order + 1, RationalFunctionQ::zero());
        TruncatedXSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![RationalFunctionQ::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFunctionQ] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &RationalFunctionQ {
        &self.coeffs[n]
    }

    /// Drops terms above `order`; `order` must not exceed the current order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncate cannot raise the order");
        TruncatedXSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn into_coeffs(self) -> Vec<RationalFunctionQ> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    fn check_constant(&self, one: bool) -> Result<()> {
        let c0 = &self.coeffs[0];
        let ok = if one { c0.is_one() } else { c0.is_zero() };
        if ok {
            Ok(())
        } else {
            Err(Error::ConstantTerm {
                expected: if one { "1" } else { "0" },
                found: c0.to_pretty(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedXSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedXSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &RationalFunctionQ) -> Self {
        TruncatedXSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = (0..=self.order())
            .into_par_iter()
            .map(|n| {
                (0..=n).fold(RationalFunctionQ::zero(), |acc, k| {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        &acc + &(a * b)
                    }
                })
            })
            .collect();
        Ok(TruncatedXSeries { coeffs })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inverse().map_err(|_| Error::ConstantTerm {
            expected: "nonzero",
            found: "0".into(),
        })?;
        let mut out: Vec<RationalFunctionQ> = Vec::with_capacity(self.coeffs.len());
        out.push(c0_inv.clone());
        for n in 1..=self.order() {
            let s = (1..=n).fold(RationalFunctionQ::zero(), |acc, k| {
                &acc + &(&self.coeffs[k] * &out[n - k])
            });
            out.push(-&(&s * &c0_inv));
        }
        Ok(TruncatedXSeries { coeffs: out })
    }

    /// Formal logarithm of a series with constant term 1.
    ///
    /// Uses `n h_n = n a_n - sum_{k=1}^{n-1} k h_k a_{n-k}`, the coefficient
    /// form of `h' = a'/a`.
    pub fn log(&self) -> Result<Self> {
        self.check_constant(true)?;
        let a = &self.coeffs;
        let mut h = vec![RationalFunctionQ::zero(); a.len()];
        for n in 1..a.len() {
            let s = (1..n).fold(RationalFunctionQ::zero(), |acc, k| {
                if h[k].is_zero() || a[n - k].is_zero() {
                    acc
                } else {
                    &acc + &(&h[k] * &a[n - k]).scale(&rat(k as i64))
                }
            });
            h[n] = &a[n] - &s.scale(&rat_frac(1, n as i64));
        }
        Ok(TruncatedXSeries { coeffs: h })
    }

    /// Formal exponential of a series with constant term 0.
    ///
    /// Uses `n b_n = sum_{k=1}^{n} k a_k b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        self.check_constant(false)?;
        let a = &self.coeffs;
        let mut b = vec![RationalFunctionQ::zero(); a.len()];
        b[0] = RationalFunctionQ::one();
        for n in 1..a.len() {
            let s = (1..=n).fold(RationalFunctionQ::zero(), |acc, k| {
                if a[k].is_zero() || b[n - k].is_zero() {
                    acc
                } else {
                    &acc + &(&a[k] * &b[n - k]).scale(&rat(k as i64))
                }
            });
            b[n] = s.scale(&rat_frac(1, n as i64));
        }
        Ok(TruncatedXSeries { coeffs: b })
    }

    /// `self^e = exp(e log self)` for an exponent in Q(q).
    pub fn pow(&self, e: &RationalFunctionQ) -> Result<Self> {
        self.log()?.scale(e).exp()
    }

    /// Joint substitution `(X, q) -> (X^d, q^d)` at the same order.
    pub fn adams(&self, d: usize) -> Self {
        assert!(d >= 1, "adams substitution needs d >= 1");
        let order = self.order();
        let mut coeffs = vec![RationalFunctionQ::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * d > order {
                break;
            }
            coeffs[k * d] = c.adams(d);
        }
        TruncatedXSeries { coeffs }
    }
}

impl fmt::Debug for TruncatedXSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for c in &self.coeffs {
            list.entry(&format_args!("{}", c.to_pretty()));
        }
        list.finish()
    }
}
