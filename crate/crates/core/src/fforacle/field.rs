use crate::error::{Error, Result};

/// Field element, stored as its table index: the base-`p` digits of the
/// index are the coefficients of the element as a polynomial in the
/// generator (lowest digit first).
pub type Elem = u8;

/// Finite field `F_q` with `q = p^e <= 9`, given by full operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: usize,
    e: usize,
    q: usize,
    modulus: Vec<u8>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// Fixed moduli for the prime-power fields.
fn modulus_for(q: usize) -> Option<(usize, usize, Vec<u8>)> {
    match q {
        2 | 3 | 5 | 7 => Some((q, 1, vec![0, 1])),
        4 => Some((2, 2, vec![1, 1, 1])),
        8 => Some((2, 3, vec![1, 1, 0, 1])),
        9 => Some((3, 2, vec![1, 0, 1])),
        _ => None,
    }
}

impl FieldSpec {
    /// Builds `F_q` for `q` in {2, 3, 4, 5, 7, 8, 9} and checks the field
    /// axioms exhaustively.
    pub fn new(q: usize) -> Result<Self> {
        let (p, e, modulus) = modulus_for(q)
            .ok_or_else(|| Error::InvalidArgument(format!("unsupported field size q = {q} (need a prime power <= 9)")))?;
        let digits = |x: usize| -> Vec<usize> { (0..e).map(|j| (x / p.pow(j as u32)) % p).collect() };
        let undigits = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum) as Elem;

                let mut prod = vec![0usize; 2 * e - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce by the monic modulus
                for k in (e..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    for (j, &m) in modulus.iter().enumerate().take(e) {
                        prod[k - e + j] = (prod[k - e + j] + p * p - c * m as usize % p) % p;
                    }
                    prod[k] = 0;
                }
                mul[a * q + b] = undigits(&prod[..e]) as Elem;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).expect("additive inverse") as Elem)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as Elem
                }
            })
            .collect();
        let field = FieldSpec {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        };
        field.check_axioms()?;
        Ok(field)
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q as Elem;
        let fail = |what: &str| Err(Error::InvalidArgument(format!("F_{} table violates {what}", self.q)));
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identities");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverses");
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("multiplicative inverses");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    /// Monic modulus over the prime field, ascending coefficients.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// Image of the integer `k` under `Z -> F_q`.
    pub fn from_int(&self, k: i64) -> Elem {
        k.rem_euclid(self.p as i64) as Elem
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }
}
