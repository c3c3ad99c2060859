use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat_to_string, BigRat, PolyQ};
use crate::error::{Error, Result};

/// Element of Q(q) in canonical form: `numerator / denominator` with
/// `gcd(numerator, denominator) = 1` and a monic denominator.
///
/// Canonical form makes structural equality coincide with equality in Q(q).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: PolyQ,
    den: PolyQ,
}

impl RationalFunctionQ {
    pub fn zero() -> Self {
        RationalFunctionQ {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyQ::one())
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RationalFunctionQ {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(PolyQ::constant(c))
    }

    /// Builds and canonicalizes `num / den`.
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_leading(num, den)
    }

    fn normalize_leading(num: PolyQ, den: PolyQ) -> Self {
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            RationalFunctionQ { num, den }
        } else {
            let inv = lead.recip();
            RationalFunctionQ {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &PolyQ {
        &self.num
    }

    pub fn denom(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the canonical denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&PolyQ> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_leading(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunctionQ {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &PolyQ) -> Self {
        self * &Self::from_poly(p.clone())
    }

    /// Substitutes `q -> q^d` in numerator and denominator.
    ///
    /// Coprimality survives the substitution (a common root of the images
    /// would give a common root of the originals) and a monic denominator
    /// stays monic, so the result is already canonical.
    pub fn adams(&self, d: usize) -> Self {
        RationalFunctionQ {
            num: self.num.adams(d),
            den: self.den.adams(d),
        }
    }

    pub fn eval(&self, q0: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(rat_to_string(q0)));
        }
        Ok(self.num.eval(q0) / d)
    }

    pub fn to_pretty(&self) -> String {
        if self.den.is_one() {
            self.num.to_pretty()
        } else {
            format!("({}) / ({})", self.num.to_pretty(), self.den.to_pretty())
        }
    }
}

impl From<PolyQ> for RationalFunctionQ {
    fn from(p: PolyQ) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RF({})", self.to_pretty())
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Add for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunctionQ::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // Henrici: with g = gcd(b, d), gcd(a d/g + c b/g, b d/g) = gcd(that, g).
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RationalFunctionQ::normalize_leading(num, den);
        }
        let b_g = self.den.exact_div(&g).expect("gcd divides");
        let d_g = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d_g) + &(&rhs.num * &b_g);
        if num.is_zero() {
            return RationalFunctionQ::zero();
        }
        let den = &self.den * &d_g;
        let h = num.gcd(&g);
        if h.is_one() {
            RationalFunctionQ::normalize_leading(num, den)
        } else {
            RationalFunctionQ::normalize_leading(
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunctionQ::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.exact_div(&g1).expect("gcd divides"),
                rhs.den.exact_div(&g1).expect("gcd divides"),
            )
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.exact_div(&g2).expect("gcd divides"),
                self.den.exact_div(&g2).expect("gcd divides"),
            )
        };
        RationalFunctionQ::normalize_leading(&a * &c, &b * &d)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        -&self
    }
}

impl Zero for RationalFunctionQ {
    fn zero() -> Self {
        RationalFunctionQ::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunctionQ {
    fn one() -> Self {
        RationalFunctionQ::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn sum_of_reciprocals() {
        let s = &rf(&[1], &[-1, 1]) + &rf(&[1], &[1, 1]);
        assert_eq!(s.numer(), &p(&[0, 2]));
        assert_eq!(s.denom(), &p(&[-1, 0, 1]));
    }

    #[test]
    fn reduction_to_lowest_terms() {
        let r = rf(&[0, 1], &[0, -1, 1]);
        assert_eq!(r, rf(&[1], &[-1, 1]));
        assert_eq!(r.numer(), &p(&[1]));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let r = rf(&[2], &[0, -4]);
        assert_eq!(r.numer(), &PolyQ::constant(crate::exactnum::rat_frac(-1, 2)));
        assert_eq!(r.denom(), &p(&[0, 1]));
    }

    #[test]
    fn inverse() {
        assert_eq!(rf(&[0, 0, 1], &[1]).inverse().unwrap(), rf(&[1], &[0, 0, 1]));
        assert_eq!(RationalFunctionQ::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn adams_examples() {
        assert_eq!(rf(&[1], &[-1, 1]).adams(2), rf(&[1], &[-1, 0, 1]));
        assert_eq!(rf(&[0, 2], &[1]).adams(3), rf(&[0, 0, 0, 2], &[1]));
        let f = rf(&[1, 2], &[3, 0, 1]);
        assert_eq!(f.adams(1), f);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf(&[0, 2], &[1]).eval(&rat(2)).unwrap(), rat(4));
        assert_eq!(rf(&[1], &[-1, 1]).eval(&rat(2)).unwrap(), rat(1));
        assert_eq!(rf(&[0, 2, 3, 0, 1], &[1]).eval(&rat(2)).unwrap(), rat(32));
        assert!(matches!(rf(&[1], &[-1, 1]).eval(&rat(1)), Err(Error::Pole(_))));
    }

    #[test]
    fn cancellation_to_zero() {
        let a = rf(&[1], &[-1, 1]);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).denom(), &PolyQ::one());
    }
}
