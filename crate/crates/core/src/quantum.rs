//! Finite quantum homology rings over `Λ = Q[q, q^{-1}]`, quantum Betti
//! numbers `b_r(e)` of homogeneous classes, and the divisibility hypothesis
//! `p ∤ b_r(e)`.
//!
//! Rings are multiplication tables on a finite basis of classes. `q` has
//! degree `2c_N`, and the product of two classes has degree
//! `deg x + deg y − 2n`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{is_prime, parse_rational, LaurentScalar, Rational};
use crate::linalg::Matrix;

const S2XS2: &str = include_str!("../data/s2xs2.json");
const CP3: &str = include_str!("../data/cp3.json");

/// An element `Σ λ_x · x` of `QH(N)`, one Laurent coefficient per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumElement {
    pub coeffs: Vec<LaurentScalar>,
}

impl QuantumElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentScalar::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumAlgebra {
    n: i64,
    c_n: i64,
    ids: Vec<String>,
    degrees: Vec<i64>,
    unit: usize,
    /// `table[x][y] = x * y`.
    table: Vec<Vec<QuantumElement>>,
}

/// On-disk form of a ring.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingFile {
    pub n: i64,
    #[serde(rename = "c_N")]
    pub c_n: i64,
    pub classes: Vec<ClassEntry>,
    pub unit: String,
    /// `"x,y"` ↦ list of `[laurent coefficient, class id]`.
    pub table: BTreeMap<String, Vec<(String, String)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassEntry {
    pub id: String,
    pub degree: i64,
}

impl QuantumAlgebra {
    /// Builds and validates a ring. A missing entry `x,y` is taken from `y,x`
    /// when present; products with the unit default to the identity; all
    /// other missing products are zero.
    pub fn from_file(file: &RingFile) -> Result<Self> {
        if file.c_n <= 0 {
            return Err(Error::Parse("c_N must be a positive integer".into()));
        }
        let ids: Vec<String> = file.classes.iter().map(|c| c.id.clone()).collect();
        let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != ids.len() {
            return Err(Error::Parse("duplicate class id".into()));
        }
        let unit = *index
            .get(file.unit.as_str())
            .ok_or_else(|| Error::Parse(format!("unknown unit class {:?}", file.unit)))?;
        let k = ids.len();
        let mut given: HashMap<(usize, usize), QuantumElement> = HashMap::new();
        for (key, terms) in &file.table {
            let (x, y) = key
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("table key {key:?} is not \"x,y\"")))?;
            let lookup = |s: &str| {
                index
                    .get(s.trim())
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("unknown class {s:?} in table key {key:?}")))
            };
            let (x, y) = (lookup(x)?, lookup(y)?);
            let mut coeffs = vec![LaurentScalar::zero(); k];
            for (lam, z) in terms {
                let z = lookup(z)?;
                coeffs[z] = coeffs[z].add(&LaurentScalar::parse(lam)?);
            }
            given.insert((x, y), QuantumElement { coeffs });
        }
        let basis = |i: usize| {
            let mut coeffs = vec![LaurentScalar::zero(); k];
            coeffs[i] = LaurentScalar::one();
            QuantumElement { coeffs }
        };
        let mut table = vec![Vec::with_capacity(k); k];
        for (x, row) in table.iter_mut().enumerate() {
            for y in 0..k {
                let entry = given
                    .get(&(x, y))
                    .or_else(|| given.get(&(y, x)))
                    .cloned()
                    .unwrap_or_else(|| {
                        if x == unit {
                            basis(y)
                        } else if y == unit {
                            basis(x)
                        } else {
                            QuantumElement {
                                coeffs: vec![LaurentScalar::zero(); k],
                            }
                        }
                    });
                row.push(entry);
            }
        }
        let alg = QuantumAlgebra {
            n: file.n,
            c_n: file.c_n,
            ids,
            degrees: file.classes.iter().map(|c| c.degree).collect(),
            unit,
            table,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: RingFile = serde_json::from_str(s).map_err(|e| Error::Parse(format!("ring file: {e}")))?;
        Self::from_file(&file)
    }

    /// A bundled ring: `"s2xs2"` or `"cp3"`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "s2xs2" => Self::from_json(S2XS2),
            "cp3" => Self::from_json(CP3),
            other => Err(Error::Parse(format!("no bundled ring named {other:?}"))),
        }
    }

    /// `QH(CP^n)`: classes `H^k` of degree `2(n − k)` for `k = 0..=n`, with
    /// `H^a * H^b = H^{a+b}` for `a + b ≤ n` and `q^{-1} H^{a+b−n−1}` otherwise.
    pub fn projective_space(n: usize) -> Result<Self> {
        let name = |k: usize| if k == 0 { "N".to_string() } else { format!("H{k}") };
        let classes = (0..=n)
            .map(|k| ClassEntry {
                id: name(k),
                degree: 2 * (n - k) as i64,
            })
            .collect();
        let mut table = BTreeMap::new();
        for a in 0..=n {
            for b in a..=n {
                let entry = if a + b <= n {
                    ("1".to_string(), name(a + b))
                } else {
                    ("q^-1".to_string(), name(a + b - n - 1))
                };
                table.insert(format!("{},{}", name(a), name(b)), vec![entry]);
            }
        }
        Self::from_file(&RingFile {
            n: n as i64,
            c_n: n as i64 + 1,
            classes,
            unit: "N".into(),
            table,
        })
    }

    pub fn half_dimension(&self) -> i64 {
        self.n
    }

    pub fn minimal_chern(&self) -> i64 {
        self.c_n
    }

    pub fn class_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn class_degree(&self, id: &str) -> Option<i64> {
        self.class_index(id).map(|i| self.degrees[i])
    }

    fn class_index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn unit(&self) -> QuantumElement {
        self.basis_element(self.unit)
    }

    fn basis_element(&self, i: usize) -> QuantumElement {
        let mut coeffs = vec![LaurentScalar::zero(); self.ids.len()];
        coeffs[i] = LaurentScalar::one();
        QuantumElement { coeffs }
    }

    fn q_degree(&self) -> i64 {
        2 * self.c_n
    }

    /// Checks grading, unit, commutativity and associativity on basis classes.
    pub fn validate(&self) -> Result<()> {
        let k = self.ids.len();
        for x in 0..k {
            for y in 0..k {
                let prod = &self.table[x][y];
                let want = self.degrees[x] + self.degrees[y] - 2 * self.n;
                if let Some(d) = self.degree_of(prod)? {
                    if d != want {
                        return Err(Error::Inhomogeneous(format!(
                            "{} * {} has degree {d}, expected {want}",
                            self.ids[x], self.ids[y]
                        )));
                    }
                }
                if *prod != self.table[y][x] {
                    return Err(Error::Precondition(format!(
                        "product is not commutative on {}, {}",
                        self.ids[x], self.ids[y]
                    )));
                }
            }
            if self.table[self.unit][x] != self.basis_element(x) {
                return Err(Error::Precondition(format!("unit does not fix {}", self.ids[x])));
            }
        }
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let left = self.mul(&self.table[x][y], &self.basis_element(z));
                    let right = self.mul(&self.basis_element(x), &self.table[y][z]);
                    if left != right {
                        return Err(Error::Precondition(format!(
                            "product is not associative on {}, {}, {}",
                            self.ids[x], self.ids[y], self.ids[z]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Common degree of all terms, `None` for zero.
    pub fn degree_of(&self, e: &QuantumElement) -> Result<Option<i64>> {
        let mut deg = None;
        for (i, c) in e.coeffs.iter().enumerate() {
            for (k, _) in c.terms() {
                let d = self.degrees[i] + self.q_degree() * k;
                match deg {
                    None => deg = Some(d),
                    Some(d0) if d0 != d => {
                        return Err(Error::Inhomogeneous(format!("terms of degree {d0} and {d}")));
                    }
                    _ => {}
                }
            }
        }
        Ok(deg)
    }

    pub fn mul(&self, a: &QuantumElement, b: &QuantumElement) -> QuantumElement {
        let k = self.ids.len();
        let mut coeffs = vec![LaurentScalar::zero(); k];
        for (x, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (y, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let scale = ca.mul(cb);
                for (z, cz) in self.table[x][y].coeffs.iter().enumerate() {
                    if !cz.is_zero() {
                        coeffs[z] = coeffs[z].add(&scale.mul(cz));
                    }
                }
            }
        }
        QuantumElement { coeffs }
    }

    /// Parses a sum of terms such as `"A+B"`, `"2*A - q^-1*P"` or `"N"`.
    /// Each term is a product of rational numbers, powers of `q` and exactly
    /// one class id.
    pub fn parse_element(&self, s: &str) -> Result<QuantumElement> {
        let mut coeffs = vec![LaurentScalar::zero(); self.ids.len()];
        for (sign, term) in crate::exactnum::laurent_split_terms(s)? {
            let mut class = None;
            let mut scalar = LaurentScalar::monomial(Rational::from_integer(sign.into()), 0);
            for factor in term.split('*').map(str::trim) {
                if let Some(i) = self.class_index(factor) {
                    if class.replace(i).is_some() {
                        return Err(Error::Parse(format!("term {term:?} names two classes")));
                    }
                } else if factor.starts_with('q') {
                    scalar = scalar.mul(&LaurentScalar::parse(factor)?);
                } else {
                    scalar = scalar.scale(&parse_rational(factor)?);
                }
            }
            let i = class.ok_or_else(|| Error::Parse(format!("term {term:?} names no class")))?;
            coeffs[i] = coeffs[i].add(&scalar);
        }
        Ok(QuantumElement { coeffs })
    }

    /// Basis `{q^k x : deg x + 2c_N k = r}` of `QH_r` as `(class, k)` pairs.
    pub fn graded_basis(&self, r: i64) -> Vec<(usize, i64)> {
        let qd = self.q_degree();
        (0..self.ids.len())
            .filter(|&i| (r - self.degrees[i]).rem_euclid(qd) == 0)
            .map(|i| (i, (r - self.degrees[i]) / qd))
            .collect()
    }

    /// `dim QH_r` for `r = 0, …, 2c_N − 1`.
    pub fn window_dimensions(&self) -> Vec<usize> {
        (0..self.q_degree()).map(|r| self.graded_basis(r).len()).collect()
    }

    /// The matrix of `e* : QH_r → QH_{r − 2n + deg e}` in graded bases.
    pub fn multiplication_matrix(&self, e: &QuantumElement, r: i64) -> Result<Matrix<Rational>> {
        let Some(de) = self.degree_of(e)? else {
            let src = self.graded_basis(r).len();
            return Ok(Matrix::zeros(0, src));
        };
        let source = self.graded_basis(r);
        let target = self.graded_basis(r - 2 * self.n + de);
        let mut m = Matrix::zeros(target.len(), source.len());
        for (c, &(x, k)) in source.iter().enumerate() {
            let mut v = self.basis_element(x);
            v.coeffs[x] = LaurentScalar::monomial(Rational::from_integer(1.into()), k);
            let image = self.mul(e, &v);
            for (row, &(z, kz)) in target.iter().enumerate() {
                m.set(row, c, image.coeffs[z].coefficient(kz));
            }
        }
        Ok(m)
    }
}

/// `b_r(e) = dim e*(QH_r)` for `r = 0, …, 2c_N − 1`.
pub fn quantum_betti(a: &QuantumAlgebra, e: &QuantumElement) -> Result<Vec<usize>> {
    a.degree_of(e)?;
    (0..a.q_degree())
        .map(|r| Ok(a.multiplication_matrix(e, r)?.rank()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub p: u32,
    pub betti: Vec<usize>,
    pub holds: bool,
    /// The first `r` with `p ∤ b_r(e)`.
    pub witness: Option<usize>,
}

/// Whether `p ∤ b_r(e)` for some `r` in the window. Zero Betti numbers are
/// divisible by every `p` and never witness.
pub fn hypothesis_check(a: &QuantumAlgebra, e: &QuantumElement, p: u32) -> Result<HypothesisReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let betti = quantum_betti(a, e)?;
    let witness = betti.iter().position(|&b| b % p as usize != 0);
    Ok(HypothesisReport {
        p,
        holds: witness.is_some(),
        betti,
        witness,
    })
}
