use std::ops::Mul;

use num_traits::Zero;

use super::{BigRat, PolyQ, RationalFunctionQ};

/// Truncated power series `q^offset * (c_0 + c_1 q + ... + c_Q q^Q) + O(...)`.
///
/// `offset <= 0` records a Laurent shift coming from a denominator divisible
/// by `q`. A series with `offset == 0` is polynomial-clean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedQSeries {
    coeffs: Vec<BigRat>,
    order: usize,
    offset: i64,
}

impl TruncatedQSeries {
    pub fn new(mut coeffs: Vec<BigRat>, order: usize, offset: i64) -> Self {
        assert!(offset <= 0, "Laurent offset must be non-positive");
        coeffs.resize(order + 1, BigRat::zero());
        TruncatedQSeries {
            coeffs,
            order,
            offset,
        }
    }

    /// Truncates a polynomial to order `order`.
    pub fn from_poly(p: &PolyQ, order: usize) -> Self {
        Self::new(p.coeffs().iter().take(order + 1).cloned().collect(), order, 0)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRat {
        &self.coeffs[k]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_polynomial_clean(&self) -> bool {
        self.offset == 0
    }

    /// Expands `a` around `q = 0` to order `order`.
    ///
    /// When `q^k` divides the denominator it is factored out and recorded
    /// as offset `-k`; the coefficients then describe `q^k * a`.
    pub fn expand(a: &RationalFunctionQ, order: usize) -> Self {
        let den = a.denom();
        let k = den.valuation().expect("canonical denominator is nonzero");
        let den = den.shift_down(k);
        let d0_inv = den.coeffs()[0].recip();
        let num = a.numer();
        // c_m = (n_m - sum_{j=1..m} d_j c_{m-j}) / d_0
        let mut c: Vec<BigRat> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut acc = num.coeff(m);
            for (j, dj) in den.coeffs().iter().enumerate().skip(1).take(m) {
                if !dj.is_zero() {
                    acc -= dj * &c[m - j];
                }
            }
            c.push(acc * &d0_inv);
        }
        Self::new(c, order, -(k as i64))
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul_truncated(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut c = vec![BigRat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Self::new(c, order, self.offset + rhs.offset)
    }
}

impl Mul for &TruncatedQSeries {
    type Output = TruncatedQSeries;
    fn mul(self, rhs: &TruncatedQSeries) -> TruncatedQSeries {
        self.mul_truncated(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::new(PolyQ::from_ints(n), PolyQ::from_ints(d)).unwrap()
    }

    fn ints(s: &TruncatedQSeries) -> Vec<BigRat> {
        s.coeffs().to_vec()
    }

    #[test]
    fn geometric_series() {
        let s = TruncatedQSeries::expand(&rf(&[1], &[1, -1]), 3);
        assert_eq!(ints(&s), vec![rat(1); 4]);
        assert!(s.is_polynomial_clean());
    }

    #[test]
    fn negated_geometric_series() {
        let s = TruncatedQSeries::expand(&rf(&[1], &[-1, 1]), 2);
        assert_eq!(ints(&s), vec![rat(-1); 3]);
    }

    #[test]
    fn p_coefficient_expansion() {
        // Reference: 1/(1-q)^2 = sum (k+1) q^k, 1/(1+q) = sum (-1)^k q^k,
        // convolved by hand and shifted by q.
        let g1: Vec<i64> = (0..4).map(|k| k + 1).collect();
        let alt: Vec<i64> = (0..4).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        let mut prod = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 - i {
                prod[i + j] += g1[i] * alt[j];
            }
        }
        let expected: Vec<BigRat> = std::iter::once(0)
            .chain(prod.iter().take(3).copied())
            .map(rat)
            .collect();
        assert_eq!(expected, vec![rat(0), rat(1), rat(1), rat(2)]);

        // (q-1)^2 (q+1) = q^3 - q^2 - q + 1
        let s = TruncatedQSeries::expand(&rf(&[0, 1], &[1, -1, -1, 1]), 3);
        assert_eq!(ints(&s), expected);
    }

    #[test]
    fn laurent_offset_recorded() {
        // 1 / (q^2 (q - 1)) = -q^-2 (1 + q + ...)
        let s = TruncatedQSeries::expand(&rf(&[1], &[0, 0, -1, 1]), 2);
        assert_eq!(s.offset(), -2);
        assert_eq!(ints(&s), vec![rat(-1); 3]);
        assert!(!s.is_polynomial_clean());
    }

    #[test]
    fn product_takes_min_order() {
        let a = TruncatedQSeries::expand(&rf(&[1], &[1, -1]), 5);
        let b = TruncatedQSeries::expand(&rf(&[1], &[1, -1]), 3);
        let c = &a * &b;
        assert_eq!(c.order(), 3);
        assert_eq!(ints(&c), vec![rat(1), rat(2), rat(3), rat(4)]);
    }
}
