//! Integer partitions and the partition-indexed q-quantities: conjugates,
//! the inner product `<lambda, mu>`, `varphi_r(q)`, `b_lambda(q)`, the
//! per-partition coefficient of `P(X, q)`, the Möbius function and the count
//! of monic irreducible polynomials.

use std::fmt;

use num_traits::One;

use crate::exactnum::{rat, rat_frac, BigRat, PolyQ, RationalFunctionQ};

/// Weakly decreasing sequence of positive parts. The empty sequence is the
/// partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Part multiplicities `i -> n_i`; `mult[i]` is the number of parts equal to
/// `i` (index 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialForm {
    mult: Vec<usize>,
}

impl ExponentialForm {
    pub fn multiplicity(&self, part: usize) -> usize {
        self.mult.get(part).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs with nonzero multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i, m))
    }

    pub fn weight(&self) -> usize {
        self.iter().map(|(i, m)| i * m).sum()
    }

    pub fn length(&self) -> usize {
        self.iter().map(|(_, m)| m).sum()
    }
}

impl Partition {
    /// Panics unless `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p >= 1),
            "partition parts must be positive and weakly decreasing: {parts:?}"
        );
        Partition { parts }
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|lambda|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `l(lambda)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let Some(&largest) = self.parts.first() else {
            return Partition::empty();
        };
        let parts = (1..=largest)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    pub fn exponential_form(&self) -> ExponentialForm {
        let mut mult = vec![0; self.parts.first().map_or(1, |&p| p + 1)];
        for &p in &self.parts {
            mult[p] += 1;
        }
        ExponentialForm { mult }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All partitions of `n` in reverse-lexicographic order, e.g. for 4:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// `<lambda, mu> = sum_i lambda'_i mu'_i`.
///
/// Also evaluated as `sum_{i,j} min(i, j) m_i n_j` over the exponential
/// forms; the two must agree.
pub fn inner_product(lambda: &Partition, mu: &Partition) -> usize {
    let via_conjugates: usize = lambda
        .conjugate()
        .parts
        .iter()
        .zip(&mu.conjugate().parts)
        .map(|(a, b)| a * b)
        .sum();
    let (el, em) = (lambda.exponential_form(), mu.exponential_form());
    let via_multiplicities: usize = el
        .iter()
        .flat_map(|(i, mi)| em.iter().map(move |(j, nj)| i.min(j) * mi * nj))
        .sum();
    assert_eq!(
        via_conjugates, via_multiplicities,
        "inner product routes disagree for {lambda:?}, {mu:?}"
    );
    via_conjugates
}

/// `(1 - q)(1 - q^2)...(1 - q^r)`, with `varphi_0 = 1`.
pub fn varphi_r(r: usize) -> PolyQ {
    (1..=r).fold(PolyQ::one(), |acc, k| {
        &acc * &(&PolyQ::one() - &PolyQ::monomial(BigRat::one(), k))
    })
}

/// `prod_i varphi_{n_i}(q)` over the exponential form.
pub fn b_lambda(lambda: &Partition) -> PolyQ {
    lambda
        .exponential_form()
        .iter()
        .fold(PolyQ::one(), |acc, (_, m)| &acc * &varphi_r(m))
}

/// Coefficient of `X^{|lambda|}` contributed by `lambda` to `P(X, q)`:
///
/// `q^{g(<l,l> - l(l))} / (q^{<l,l>} b_lambda(q^{-1}))`.
///
/// Each factor `1 - q^{-s}` of `b_lambda(q^{-1})` absorbs `q^s` from the
/// `q^{<l,l>}` budget and becomes `q^s - 1`; the budget always suffices
/// since `<l,l> >= sum_i i n_i^2 >= sum_i n_i(n_i+1)/2`.
pub fn p_coefficient(lambda: &Partition, g: usize) -> RationalFunctionQ {
    assert!(lambda.weight() >= 1 && g >= 1);
    let ip = inner_product(lambda, lambda);
    let len = lambda.length();
    let mut denominator = PolyQ::one();
    let mut absorbed = 0usize;
    for (_, m) in lambda.exponential_form().iter() {
        for s in 1..=m {
            denominator = &denominator * &(&PolyQ::monomial(BigRat::one(), s) - &PolyQ::one());
            absorbed += s;
        }
    }
    let leftover = ip
        .checked_sub(absorbed)
        .expect("inner product covers the degree of b_lambda");
    let num_exp = g * (ip - len);
    // cancel the common q-power up front
    let common = num_exp.min(leftover);
    let numerator = PolyQ::monomial(BigRat::one(), num_exp - common);
    let denominator = denominator.shift_up(leftover - common);
    RationalFunctionQ::new(numerator, denominator).expect("nonzero denominator")
}

/// Möbius function by trial factorization.
pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1, "mobius needs n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    assert!(n >= 1);
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Number of monic irreducible degree-`d` polynomials over `F_q` other than
/// `x`, as a polynomial in `q`: `(1/d) sum_{e | d} mu(e) (q^{d/e} - 1)`.
pub fn irr_count(d: usize) -> PolyQ {
    assert!(d >= 1, "irr_count needs d >= 1");
    let sum = divisors(d).into_iter().fold(PolyQ::zero(), |acc, e| {
        let mu = mobius(e);
        if mu == 0 {
            return acc;
        }
        let term = &PolyQ::monomial(BigRat::one(), d / e) - &PolyQ::one();
        &acc + &term.scale(&rat(mu))
    });
    sum.scale(&rat_frac(1, d as i64))
}

/// Evaluates `irr_count(d)` at an integer `q`, returning `None` unless the
/// value is a nonnegative integer.
pub fn irr_count_at(d: usize, q: u64) -> Option<u64> {
    let v = irr_count(d).eval(&rat(q as i64));
    if v.is_integer() {
        v.to_integer().try_into().ok()
    } else {
        None
    }
}
