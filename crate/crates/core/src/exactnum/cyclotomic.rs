use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::{Field, Rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// An element of `Q(ζ_p)` written in the basis `1, ζ, …, ζ^{p-2}`.
///
/// Elements that lie in `Q` carry no modulus (`p() == None`) and combine
/// freely with elements of any `Q(ζ_p)`; this is what lets `Field::zero()`
/// and `Field::one()` exist without a runtime parameter. Two irrational
/// elements with different moduli cannot be combined.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    // 0 when the element is rational
    p: u32,
    // trailing zeros trimmed; length <= p - 1
    coords: Vec<Rational>,
}

impl CyclotomicNumber {
    /// Builds `Σ coeffs[k] ζ^k`, reducing modulo `1 + x + … + x^{p-1}`.
    pub fn new(p: u32, coeffs: Vec<Rational>) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::reduce(p, coeffs))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::reduce(0, vec![r])
    }

    /// The generator `ζ_p = e^{2πi/p}`.
    pub fn zeta(p: u32) -> Result<Self> {
        Self::zeta_pow(p, 1)
    }

    /// `ζ_p^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Result<Self> {
        check_prime(p)?;
        let e = k.rem_euclid(p as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Ok(Self::reduce(p, coeffs))
    }

    /// The modulus, or `None` for rational elements.
    pub fn p(&self) -> Option<u32> {
        (self.p != 0).then_some(self.p)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.p != 0 {
            return None;
        }
        Some(self.coords.first().cloned().unwrap_or_else(Rational::zero))
    }

    /// The `p - 1` coordinates in the power basis of `Q(ζ_p)`.
    /// Rational elements can be expanded into any prime `p`.
    pub fn coords_in(&self, p: u32) -> Result<Vec<Rational>> {
        check_prime(p)?;
        if self.p != 0 && self.p != p {
            return Err(Error::ModulusMismatch(self.p, p));
        }
        let mut out = vec![Rational::zero(); (p - 1) as usize];
        for (k, c) in self.coords.iter().enumerate() {
            out[k] = c.clone();
        }
        Ok(out)
    }

    fn reduce(p: u32, mut coeffs: Vec<Rational>) -> Self {
        if p == 0 || p == 2 {
            // Q(ζ_2) = Q with ζ = -1
            let mut value = Rational::zero();
            for (k, c) in coeffs.iter().enumerate() {
                if p == 2 && k % 2 == 1 {
                    value -= c;
                } else {
                    value += c;
                }
            }
            let coords = if value.is_zero() { vec![] } else { vec![value] };
            return CyclotomicNumber { p: 0, coords };
        }
        let n = p as usize;
        if coeffs.len() > n {
            let tail = coeffs.split_off(n);
            for (k, c) in tail.into_iter().enumerate() {
                coeffs[(n + k) % n] += c;
            }
        }
        coeffs.resize(n, Rational::zero());
        // ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})
        let top = coeffs.pop().unwrap();
        if !top.is_zero() {
            for c in coeffs.iter_mut() {
                *c -= &top;
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let p = if coeffs.len() <= 1 { 0 } else { p };
        CyclotomicNumber { p, coords: coeffs }
    }

    fn joint_modulus(&self, other: &Self) -> Result<u32> {
        match (self.p, other.p) {
            (0, q) | (q, 0) => Ok(q),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::ModulusMismatch(a, b)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    // both operands already have at most p - 1 coordinates, so only
    // trailing zeros need trimming
    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        let p = self.joint_modulus(other)?;
        if other.coords.is_empty() {
            return Ok(self.clone());
        }
        if self.coords.is_empty() && !subtract {
            return Ok(other.clone());
        }
        let n = self.coords.len().max(other.coords.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = coord(&self.coords, k);
                match other.coords.get(k) {
                    Some(b) if subtract => a - b,
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        Ok(Self::trim(p, coeffs))
    }

    fn trim(p: u32, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let p = if coeffs.len() <= 1 { 0 } else { p };
        CyclotomicNumber { p, coords: coeffs }
    }

    fn scaled(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            p: self.p,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let p = self.joint_modulus(other)?;
        if self.coords.is_empty() || other.coords.is_empty() {
            return Ok(Self::zero());
        }
        if self.p == 0 {
            return Ok(other.scaled(&self.coords[0]));
        }
        if other.p == 0 {
            return Ok(self.scaled(&other.coords[0]));
        }
        let mut coeffs = vec![Rational::zero(); self.coords.len() + other.coords.len() - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self::reduce(p, coeffs))
    }

    /// Multiplicative inverse, found by solving the `(p-1) × (p-1)` linear
    /// system for multiplication by `self`.
    pub fn checked_inv(&self) -> Result<Self> {
        if self.coords.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if self.p == 0 {
            return Ok(Self::from_rational(self.coords[0].recip()));
        }
        let p = self.p;
        let n = (p - 1) as usize;
        let mut m = Matrix::<Rational>::zeros(n, n);
        for k in 0..n {
            let col = self
                .checked_mul(&Self::zeta_pow(p, k as i64)?)?
                .coords_in(p)?;
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, k, v);
            }
        }
        let mut rhs = vec![Rational::zero(); n];
        rhs[0] = Rational::one();
        let x = m.solve(&rhs).ok_or(Error::DivisionByZero)?;
        Ok(Self::reduce(p, x))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    /// Numerical value under `ζ ↦ e^{2πi/p}`, as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let p = self.p.max(1) as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coords.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * k as f64 / p;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

fn coord(v: &[Rational], k: usize) -> Rational {
    v.get(k).cloned().unwrap_or_else(Rational::zero)
}

impl Zero for CyclotomicNumber {
    fn zero() -> Self {
        CyclotomicNumber {
            p: 0,
            coords: vec![],
        }
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

impl One for CyclotomicNumber {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

/// Panics on a modulus mismatch; use [`CyclotomicNumber::checked_add`] to
/// handle it.
impl Add for CyclotomicNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("cyclotomic modulus mismatch")
    }
}

/// Panics on a modulus mismatch; use [`CyclotomicNumber::checked_mul`] to
/// handle it.
impl Mul for CyclotomicNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("cyclotomic modulus mismatch")
    }
}

impl Field for CyclotomicNumber {
    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("cyclotomic modulus mismatch")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("cyclotomic modulus mismatch")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("cyclotomic modulus mismatch")
    }
    fn negated(&self) -> Self {
        CyclotomicNumber {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_rational(r.clone())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ{}", self.p)?,
                _ => write!(f, "({c})ζ{}^{k}", self.p)?,
            }
        }
        Ok(())
    }
}

/// All nontrivial `p`-th roots of unity `ζ, ζ², …, ζ^{p-1}`.
pub fn primitive_roots(p: u32) -> Result<Vec<CyclotomicNumber>> {
    check_prime(p)?;
    (1..p as i64)
        .map(|k| CyclotomicNumber::zeta_pow(p, k))
        .collect()
}

/// All `p`-th roots of unity `1, ζ, …, ζ^{p-1}`.
pub fn roots_of_unity(p: u32) -> Result<Vec<CyclotomicNumber>> {
    check_prime(p)?;
    (0..p as i64)
        .map(|k| CyclotomicNumber::zeta_pow(p, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn cy(p: u32, c: &[i64]) -> CyclotomicNumber {
        CyclotomicNumber::new(p, c.iter().map(|&v| rat(v, 1)).collect()).unwrap()
    }

    #[test]
    fn zeta_has_order_p() {
        for p in [3u32, 5, 7] {
            let z = CyclotomicNumber::zeta(p).unwrap();
            assert!(z.pow(p as u64).is_one());
            for k in 1..p as u64 {
                assert!(!z.pow(k).is_one());
            }
            let last = CyclotomicNumber::zeta_pow(p, p as i64 - 1).unwrap();
            assert!(z.times(&last).is_one());
        }
    }

    #[test]
    fn cyclotomic_relation_vanishes() {
        let sum = cy(5, &[1, 1, 1, 1, 1]);
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_of_zeta() {
        let p = 5;
        let z = CyclotomicNumber::zeta(p).unwrap();
        let expected = cy(p, &[-1, -1, -1, -1]);
        assert_eq!(z.checked_inv().unwrap(), expected);
        assert!(CyclotomicNumber::one().checked_inv().unwrap().is_one());
        assert!(matches!(
            CyclotomicNumber::zero().checked_inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn modulus_mismatch() {
        let a = CyclotomicNumber::zeta(3).unwrap();
        let b = CyclotomicNumber::zeta(5).unwrap();
        assert!(matches!(a.checked_mul(&b), Err(Error::ModulusMismatch(3, 5))));
        // rationals mix with anything
        let two = CyclotomicNumber::from_rational(rat(2, 1));
        assert_eq!(two.checked_mul(&a).unwrap().coords_in(3).unwrap(), vec![rat(0, 1), rat(2, 1)]);
    }

    #[test]
    fn roots_lists() {
        let r2 = primitive_roots(2).unwrap();
        assert_eq!(r2, vec![CyclotomicNumber::from_rational(rat(-1, 1))]);
        let r3 = primitive_roots(3).unwrap();
        assert_eq!(r3.len(), 2);
        for z in &r3 {
            assert!(z.pow(3).is_one());
            assert!(!z.is_one());
        }
        let r5 = primitive_roots(5).unwrap();
        let prod = r5.iter().fold(CyclotomicNumber::one(), |acc, z| acc.times(z));
        let sum = r5.iter().fold(CyclotomicNumber::zero(), |acc, z| acc.plus(z));
        assert!(prod.is_one());
        assert_eq!(sum, CyclotomicNumber::from_rational(rat(-1, 1)));
        assert!(matches!(primitive_roots(4), Err(Error::NotPrime(4))));
        assert!(matches!(primitive_roots(1), Err(Error::NotPrime(1))));
    }
}
