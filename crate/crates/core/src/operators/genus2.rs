//! A triangulated genus-2 surface with two height functions `f` and
//! `g = f∘φ` that share barcodes and spectral invariants but whose
//! intersection operators with a fixed class in `H_1` have different
//! image barcodes.
//!
//! The surface is two `8 × 5` grid tori glued along a removed square in
//! rows 0–1, columns 0–1. `φ` swaps the two tori and fixes the four glued
//! vertices. On one torus the height rises from a single valley ring
//! (closing at `ε`) to a ridge (saddle at `b`); on the other there are two
//! valley rings separated by a ridge whose saddle at `a` merges them, and a
//! second ridge with saddle at `b`. Variant `f` puts the one-valley profile
//! on the left torus, variant `g` puts it on the right.
//!
//! The operator is cap product with a 1-cocycle supported on the left torus,
//! dual to a column circle; it pairs nontrivially with the row rings.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};
use crate::filtered_complex::{
    cap_with_cochain, lower_star_complex, FieldTag, FilteredChainMap, FilteredComplex, SimplicialComplex,
};

const ROWS: usize = 8;
const COLS: usize = 5;
/// The cocycle counts crossings from column `CUT` to `CUT + 1`.
const CUT: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus2Variant {
    F,
    G,
}

impl std::str::FromStr for Genus2Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" | "F" => Ok(Genus2Variant::F),
            "g" | "G" => Ok(Genus2Variant::G),
            other => Err(Error::Parse(format!("unknown genus-2 variant {other:?}"))),
        }
    }
}

fn is_glued(r: usize, c: usize) -> bool {
    r <= 1 && c <= 1
}

/// Vertex index of `(copy, row, col)`; glued vertices resolve to the left copy.
fn vertex_index(copy: usize, r: usize, c: usize) -> usize {
    let r = r % ROWS;
    let c = c % COLS;
    if copy == 0 || is_glued(r, c) {
        return r * COLS + c;
    }
    let mut k = 0;
    for rr in 0..ROWS {
        for cc in 0..COLS {
            if is_glued(rr, cc) {
                continue;
            }
            if (rr, cc) == (r, c) {
                return ROWS * COLS + k;
            }
            k += 1;
        }
    }
    unreachable!()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

struct Levels {
    eps: Rational,
    a: Rational,
    b: Rational,
}

impl Levels {
    fn mid(&self, k: i64) -> Rational {
        &self.eps + (&self.a - &self.eps) * q(k, 16)
    }

    fn valley(&self, cols: [i64; COLS]) -> Vec<Rational> {
        cols.iter().map(|&k| &self.eps * q(k, 8)).collect()
    }

    fn mid_row(&self, first: i64) -> Vec<Rational> {
        (0..COLS as i64).map(|k| self.mid(first + k)).collect()
    }

    fn ridge(&self, low: &Rational, high: &Rational) -> Vec<Rational> {
        // saddle at column 0, maximum at column 3
        [0, 2, 4, 8, 1].iter().map(|&k| low + (high - low) * q(k, 8)).collect()
    }

    /// Row profiles of the one-valley torus.
    fn one_valley(&self) -> Vec<Vec<Rational>> {
        let top = &self.b + Rational::one();
        vec![
            self.valley([0, 2, 4, 8, 6]),
            self.mid_row(1),
            self.mid_row(6),
            self.mid_row(11),
            self.ridge(&self.b, &top),
            self.mid_row(11),
            self.mid_row(6),
            self.mid_row(1),
        ]
    }

    /// Row profiles of the two-valley torus.
    fn two_valley(&self) -> Vec<Vec<Rational>> {
        let x = (&self.a + &self.b) * q(1, 2);
        let top = &self.b + q(3, 2);
        vec![
            self.valley([0, 2, 4, 8, 6]),
            self.mid_row(1),
            self.ridge(&self.a, &x),
            self.mid_row(6),
            self.valley([8, 6, 5, 4, 7]),
            self.mid_row(6),
            self.ridge(&self.b, &top),
            self.mid_row(1),
        ]
    }
}

/// The triangulated surface with the heights of the given variant.
pub fn genus2_surface(variant: Genus2Variant, eps: &Rational, a: &Rational, b: &Rational) -> Result<SimplicialComplex> {
    if !(Rational::zero() < *eps && eps < a && a < b) {
        return Err(Error::Precondition(format!("need 0 < ε < a < b, got ε={eps}, a={a}, b={b}")));
    }
    let levels = Levels {
        eps: eps.clone(),
        a: a.clone(),
        b: b.clone(),
    };
    let (left, right) = match variant {
        Genus2Variant::F => (levels.one_valley(), levels.two_valley()),
        Genus2Variant::G => (levels.two_valley(), levels.one_valley()),
    };
    let n = 2 * ROWS * COLS - 4;
    let mut vertices: Vec<Option<(String, Rational)>> = vec![None; n];
    for (copy, profile) in [(0, &left), (1, &right)] {
        let tag = if copy == 0 { "L" } else { "R" };
        for r in 0..ROWS {
            for c in 0..COLS {
                let idx = vertex_index(copy, r, c);
                if copy == 1 && is_glued(r, c) {
                    debug_assert_eq!(vertices[idx].as_ref().map(|v| &v.1), Some(&profile[r][c]));
                    continue;
                }
                vertices[idx] = Some((format!("{tag}{r}_{c}"), profile[r][c].clone()));
            }
        }
    }
    let vertices: Vec<(String, Rational)> = vertices.into_iter().map(|v| v.expect("all vertices set")).collect();
    let mut triangles = Vec::new();
    for copy in 0..2 {
        for r in 0..ROWS {
            for c in 0..COLS {
                if r == 0 && c == 0 {
                    // the removed square
                    continue;
                }
                let v = |dr: usize, dc: usize| vertex_index(copy, r + dr, c + dc);
                triangles.push(vec![v(0, 0), v(0, 1), v(1, 1)]);
                triangles.push(vec![v(0, 0), v(1, 0), v(1, 1)]);
            }
        }
    }
    SimplicialComplex::from_index_simplices(vertices, &triangles)
}

/// The cut cocycle on the left torus: `±1` on edges between columns `CUT`
/// and `CUT + 1`, oriented by vertex index.
pub fn genus2_cocycle<F: Field>(s: &SimplicialComplex) -> BTreeMap<(usize, usize), F> {
    let mut out = BTreeMap::new();
    let column = |v: usize| -> Option<usize> { (v < ROWS * COLS).then_some(v % COLS) };
    for simplex in s.simplices() {
        if simplex.len() != 2 {
            continue;
        }
        let (u, v) = (simplex[0], simplex[1]);
        match (column(u), column(v)) {
            (Some(cu), Some(cv)) if cu == CUT && cv == CUT + 1 => {
                out.insert((u, v), F::one());
            }
            (Some(cu), Some(cv)) if cu == CUT + 1 && cv == CUT => {
                out.insert((u, v), F::one().negated());
            }
            _ => {}
        }
    }
    out
}

/// Lower-star complex of the chosen variant and the cap-product operator
/// (degree `-1`, filtration shift 0).
pub fn builtin_genus2(
    variant: Genus2Variant,
    eps: &Rational,
    a: &Rational,
    b: &Rational,
) -> Result<(Arc<FilteredComplex<Rational>>, FilteredChainMap<Rational>)> {
    let s = genus2_surface(variant, eps, a, b)?;
    let complex = Arc::new(lower_star_complex(&s, FieldTag::Rational)?);
    let cochain = genus2_cocycle::<Rational>(&s);
    let cap = cap_with_cochain(&complex, &cochain, &s)?;
    Ok((complex, cap))
}
