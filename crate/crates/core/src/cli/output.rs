//! JSON and CSV renderings of counting polynomials.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactnum::{rat_from_str, rat_to_string, PolyQ, RationalFunctionQ};
use crate::pipeline::{CountingPolynomial, Kind};

/// Serialized counting polynomial. `coeffs` are ascending decimal strings;
/// `denominator` is present only for values that are not polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyEntry {
    pub coeffs: Vec<String>,
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<String>>,
    pub g: usize,
    pub kind: Kind,
    pub n: usize,
}

fn strings(p: &PolyQ) -> Vec<String> {
    p.coeffs().iter().map(rat_to_string).collect()
}

fn parse_poly(coeffs: &[String]) -> Option<PolyQ> {
    coeffs.iter().map(|c| rat_from_str(c)).collect::<Option<Vec<_>>>().map(PolyQ::new)
}

impl PolyEntry {
    pub fn from_counting(c: &CountingPolynomial) -> Self {
        let num = c.value.numer();
        PolyEntry {
            coeffs: strings(num),
            degree: num.degree(),
            denominator: (!c.value.is_polynomial()).then(|| strings(c.value.denom())),
            g: c.g,
            kind: c.kind,
            n: c.n,
        }
    }

    /// The constant term `1` of the `M` generating series.
    pub fn m_constant(g: usize) -> Self {
        PolyEntry {
            coeffs: vec!["1".into()],
            degree: Some(0),
            denominator: None,
            g,
            kind: Kind::M,
            n: 0,
        }
    }

    pub fn to_counting(&self) -> Option<CountingPolynomial> {
        let num = parse_poly(&self.coeffs)?;
        let den = match &self.denominator {
            Some(d) => parse_poly(d)?,
            None => PolyQ::one(),
        };
        let value = RationalFunctionQ::new(num, den).ok()?;
        (value.numer().degree() == self.degree).then_some(CountingPolynomial {
            kind: self.kind,
            g: self.g,
            n: self.n,
            value,
        })
    }

    pub fn pretty_value(&self) -> String {
        self.to_counting().map_or_else(|| "?".into(), |c| c.to_pretty())
    }
}

/// Canonical compact JSON: object keys sorted, no insignificant whitespace.
pub fn canonical_json(v: &impl Serialize) -> String {
    let value: Value = serde_json::to_value(v).expect("serializable");
    serde_json::to_string(&value).expect("serializable")
}

/// `kind,g,n,s,coeff` rows, one per coefficient including zeros.
pub fn csv_rows(entries: &[PolyEntry]) -> Result<String> {
    let mut out = String::from("kind,g,n,s,coeff\n");
    for e in entries {
        if e.denominator.is_some() {
            return Err(Error::InvalidArgument(format!(
                "{}_{}({}, q) is not a polynomial; csv output needs polynomial values",
                e.kind, e.g, e.n
            )));
        }
        for (s, c) in e.coeffs.iter().enumerate() {
            out.push_str(&format!("{},{},{},{},{}\n", e.kind, e.g, e.n, s, c));
        }
    }
    Ok(out)
}
