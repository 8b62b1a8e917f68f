use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{parse_rational, Rational};
use crate::error::{Error, Result};

/// A finitely supported Laurent polynomial `Σ c_k q^k` with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest power of `q` present; `None` for zero.
    ///
    /// Series in `q^{-1}` are bounded above, so the leading exponent is the
    /// non-Archimedean valuation and `ν(xy) = ν(x) + ν(y)`.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: &Rational) {
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentScalar::zero();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = LaurentScalar::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Parses sums of monomials such as `"q^-1"`, `"2*q^3 - 1/2"`, `"-q"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = LaurentScalar::zero();
        for (sign, term) in split_signed_terms(s)? {
            let (c, k) = parse_monomial(&term)?;
            out.add_term(k, &(c * Rational::from_integer(sign.into())));
        }
        Ok(out)
    }
}

/// Splits on top-level `+`/`-`. A sign right after `^`, `*` or `/` belongs
/// to the following factor (as in `q^-1`).
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        let binds_to_factor = matches!(prev, Some('^') | Some('*') | Some('/'));
        if (ch == '+' || ch == '-') && !binds_to_factor {
            if cur.trim().is_empty() {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                out.push((sign, cur.trim().to_string()));
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
            }
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("malformed expression {s:?}")));
    }
    out.push((sign, cur.trim().to_string()));
    Ok(out)
}

fn parse_monomial(term: &str) -> Result<(Rational, i64)> {
    let mut coeff = Rational::one();
    let mut exp = 0i64;
    for factor in term.split('*').map(str::trim) {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {term:?}")));
        }
        if let Some(rest) = factor.strip_prefix('q') {
            let k = if rest.is_empty() {
                1
            } else {
                let e = rest
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad power of q: {factor:?}")))?;
                e.trim()
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent: {factor:?}")))?
            };
            exp += k;
        } else {
            coeff *= parse_rational(factor)?;
        }
    }
    Ok((coeff, exp))
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            match *k {
                0 => write!(f, "{c}")?,
                k if c.is_one() => write!(f, "q^{k}")?,
                k => write!(f, "{c}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
