//! Intervals, barcodes, and barcode extraction from filtered complexes by
//! column reduction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::Result;
use crate::exactnum::{ExtRational, Field, Rational};
use crate::filtered_complex::FilteredComplex;

/// A half-open interval `(birth, death]`, or `(birth, ∞)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub birth: Rational,
    pub death: ExtRational,
}

impl Interval {
    /// `None` when `death <= birth`.
    pub fn new(birth: Rational, death: ExtRational) -> Option<Self> {
        match &death {
            ExtRational::Finite(d) if *d <= birth => None,
            _ => Some(Interval { birth, death }),
        }
    }

    pub fn finite(birth: Rational, death: Rational) -> Option<Self> {
        Self::new(birth, ExtRational::Finite(death))
    }

    pub fn infinite(birth: Rational) -> Self {
        Interval {
            birth,
            death: ExtRational::Infinite,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn length(&self) -> ExtRational {
        match &self.death {
            ExtRational::Finite(d) => ExtRational::Finite(d - &self.birth),
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }

    /// `birth < t <= death`.
    pub fn contains_point(&self, t: &Rational) -> bool {
        *t > self.birth && self.death.cmp_finite(t).is_ge()
    }

    /// Interval containment `other ⊆ self`.
    pub fn contains(&self, other: &Interval) -> bool {
        self.birth <= other.birth && self.death >= other.death
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.death {
            ExtRational::Finite(d) => write!(f, "({}, {}]", self.birth, d),
            ExtRational::Infinite => write!(f, "({}, inf)", self.birth),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A multiset of intervals, optionally labelled with a homological degree.
/// Equality ignores the label.
#[derive(Clone, Default)]
pub struct Barcode {
    bars: BTreeMap<Interval, usize>,
    degree: Option<i64>,
}

impl PartialEq for Barcode {
    fn eq(&self, other: &Self) -> bool {
        self.bars == other.bars
    }
}

impl Eq for Barcode {}

impl Barcode {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_degree(mut self, degree: i64) -> Self {
        self.degree = Some(degree);
        self
    }

    pub fn degree(&self) -> Option<i64> {
        self.degree
    }

    pub fn from_intervals(bars: impl IntoIterator<Item = Interval>) -> Self {
        let mut b = Self::new();
        for i in bars {
            b.insert(i, 1);
        }
        b
    }

    /// Adds `mult` copies of an interval.
    pub fn insert(&mut self, interval: Interval, mult: usize) {
        if mult > 0 {
            *self.bars.entry(interval).or_insert(0) += mult;
        }
    }

    /// Adds one bar `(birth, death]`, ignoring it if it is empty.
    pub fn push(&mut self, birth: Rational, death: ExtRational) {
        if let Some(i) = Interval::new(birth, death) {
            self.insert(i, 1);
        }
    }

    /// Removes up to `mult` copies and returns how many were removed.
    pub fn remove(&mut self, interval: &Interval, mult: usize) -> usize {
        let Some(m) = self.bars.get_mut(interval) else {
            return 0;
        };
        let taken = mult.min(*m);
        *m -= taken;
        if *m == 0 {
            self.bars.remove(interval);
        }
        taken
    }

    /// Distinct intervals with multiplicities, in canonical order.
    pub fn bars(&self) -> impl Iterator<Item = (&Interval, usize)> {
        self.bars.iter().map(|(i, m)| (i, *m))
    }

    /// Every bar repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<Interval> {
        self.bars
            .iter()
            .flat_map(|(i, m)| std::iter::repeat(i.clone()).take(*m))
            .collect()
    }

    pub fn multiplicity(&self, interval: &Interval) -> usize {
        self.bars.get(interval).copied().unwrap_or(0)
    }

    pub fn distinct_len(&self) -> usize {
        self.bars.len()
    }

    /// Number of bars counted with multiplicity.
    pub fn total(&self) -> usize {
        self.bars.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn infinite_count(&self) -> usize {
        self.bars().filter(|(i, _)| i.is_infinite()).map(|(_, m)| m).sum()
    }

    /// Dimension of the module at parameter `t`.
    pub fn dimension_at(&self, t: &Rational) -> usize {
        self.bars().filter(|(i, _)| i.contains_point(t)).map(|(_, m)| m).sum()
    }

    /// Sorted distinct finite endpoints.
    pub fn spectrum(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for i in self.bars.keys() {
            out.push(i.birth.clone());
            if let ExtRational::Finite(d) = &i.death {
                out.push(d.clone());
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Births of infinite bars with multiplicity, sorted.
    pub fn spectral_invariants(&self) -> Vec<Rational> {
        self.bars()
            .filter(|(i, _)| i.is_infinite())
            .flat_map(|(i, m)| std::iter::repeat(i.birth.clone()).take(m))
            .collect()
    }

    /// Multiset sum; the degree label is kept when both agree.
    pub fn sum(&self, other: &Barcode) -> Barcode {
        let mut out = self.clone();
        for (i, m) in other.bars() {
            out.insert(i.clone(), m);
        }
        if self.degree != other.degree {
            out.degree = None;
        }
        out
    }
}

/// Multiset sum of any number of barcodes.
pub fn barcode_sum<'a>(barcodes: impl IntoIterator<Item = &'a Barcode>) -> Barcode {
    let mut out: Option<Barcode> = None;
    for b in barcodes {
        out = Some(match out {
            None => b.clone(),
            Some(acc) => acc.sum(b),
        });
    }
    out.unwrap_or_default()
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, m)) in self.bars().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            if m == 1 {
                write!(f, "{i}")?;
            } else {
                write!(f, "{i}x{m}")?;
            }
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            Some(d) => write!(f, "H{d}{self}"),
            None => write!(f, "{self}"),
        }
    }
}

/// Generator indices in reduction order: by filtration, then degree, then
/// insertion. Every prefix of this order is a subcomplex.
pub fn reduction_order<F: Field>(c: &FilteredComplex<F>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..c.len()).collect();
    order.sort_by(|&a, &b| {
        let (ga, gb) = (c.generator(a), c.generator(b));
        ga.filtration
            .cmp(&gb.filtration)
            .then(ga.degree.cmp(&gb.degree))
            .then(a.cmp(&b))
    });
    order
}

type SparseCol<F> = Vec<(usize, F)>;

/// `a += factor * b` on sparse columns sorted by row.
fn axpy<F: Field>(a: &SparseCol<F>, factor: &F, b: &SparseCol<F>) -> SparseCol<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, factor.times(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.plus(&factor.times(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Barcodes of `H_*` in every degree present in the complex.
pub fn barcodes_all<F: Field>(c: &FilteredComplex<F>) -> Result<BTreeMap<i64, Barcode>> {
    c.ensure_valid()?;
    let order = reduction_order(c);
    let mut pos = vec![0usize; c.len()];
    for (p, &g) in order.iter().enumerate() {
        pos[g] = p;
    }
    let mut reduced: Vec<SparseCol<F>> = Vec::with_capacity(order.len());
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut paired = vec![false; order.len()];
    for (j, &g) in order.iter().enumerate() {
        let mut col: SparseCol<F> = c.boundary_of(g).iter().map(|(t, v)| (pos[*t], v.clone())).collect();
        col.sort_by_key(|(r, _)| *r);
        while let Some((low, v)) = col.last().cloned() {
            let Some(&k) = pivot_of.get(&low) else {
                break;
            };
            let other = &reduced[k];
            let factor = v.times(&other.last().unwrap().1.inverse().unwrap()).negated();
            col = axpy(&col, &factor, other);
        }
        if let Some((low, _)) = col.last() {
            pivot_of.insert(*low, j);
            paired[*low] = true;
            paired[j] = true;
        }
        reduced.push(col);
    }
    let mut out: BTreeMap<i64, Barcode> = c.degrees().map(|d| (d, Barcode::new().with_degree(d))).collect();
    for (j, col) in reduced.iter().enumerate() {
        if let Some((low, _)) = col.last() {
            let born = c.generator(order[*low]);
            let dies = &c.generator(order[j]).filtration;
            out.get_mut(&born.degree)
                .unwrap()
                .push(born.filtration.clone(), ExtRational::Finite(dies.clone()));
        } else if !paired[j] {
            let g = c.generator(order[j]);
            out.get_mut(&g.degree)
                .unwrap()
                .push(g.filtration.clone(), ExtRational::Infinite);
        }
    }
    Ok(out)
}

/// Barcode of `t ↦ H_degree(C^t)`.
pub fn barcode_from_complex<F: Field>(c: &FilteredComplex<F>, degree: i64) -> Result<Barcode> {
    Ok(barcodes_all(c)?
        .remove(&degree)
        .unwrap_or_default()
        .with_degree(degree))
}
