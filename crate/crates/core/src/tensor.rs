//! Tensor products and Tor of barcodes, and the Künneth comparison with the
//! homology of a product complex.

use std::collections::BTreeMap;

use crate::barcode::{barcodes_all, Barcode, Interval};
use crate::error::Result;
use crate::exactnum::{ExtRational, Field};
use crate::filtered_complex::{product_complex, FilteredComplex};
use crate::tabulated::sample_points;

/// `(a,b] ⊗ (c,d] = (a+c, min(a+d, b+c)]`, with `∞` substituted for an
/// infinite death.
pub fn interval_tensor(i: &Interval, j: &Interval) -> Option<Interval> {
    let birth = &i.birth + &j.birth;
    let death = i.death.add_finite(&j.birth).min(j.death.add_finite(&i.birth));
    Interval::new(birth, death)
}

/// `Tor((a,b], (c,d]) = (max(a+d, b+c), b+d]`; zero if either bar is
/// infinite.
pub fn interval_tor(i: &Interval, j: &Interval) -> Option<Interval> {
    let (ExtRational::Finite(b), ExtRational::Finite(d)) = (&i.death, &j.death) else {
        return None;
    };
    let birth = (&i.birth + d).max(b + &j.birth);
    Interval::finite(birth, b + d)
}

fn bilinear(b1: &Barcode, b2: &Barcode, f: impl Fn(&Interval, &Interval) -> Option<Interval>) -> Barcode {
    let mut out = Barcode::new();
    for (i, m) in b1.bars() {
        for (j, n) in b2.bars() {
            if let Some(k) = f(i, j) {
                out.insert(k, m * n);
            }
        }
    }
    out
}

pub fn barcode_tensor(b1: &Barcode, b2: &Barcode) -> Barcode {
    bilinear(b1, b2, interval_tensor)
}

pub fn barcode_tor(b1: &Barcode, b2: &Barcode) -> Barcode {
    bilinear(b1, b2, interval_tor)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub degree: i64,
    pub tensor_part: Barcode,
    pub tor_part: Barcode,
    pub product_barcode: Barcode,
    /// Dimension equality at every sample point of the joint spectrum.
    pub pointwise_dims_match: bool,
    /// `product_barcode == tensor_part + tor_part`.
    pub split_equality: bool,
}

/// Compares `H_k(C1 ⊗ C2)` with `⊕_{i+j=k} H_i ⊗ H_j ⊕ ⊕_{i+j=k-1} Tor(H_i, H_j)`.
pub fn kunneth_check<F: Field>(c1: &FilteredComplex<F>, c2: &FilteredComplex<F>, k: i64) -> Result<KunnethReport> {
    let product = product_complex(c1, c2)?;
    let h1 = barcodes_all(c1)?;
    let h2 = barcodes_all(c2)?;
    let product_barcode = barcodes_all(&product)?
        .remove(&k)
        .unwrap_or_default()
        .with_degree(k);
    let (tensor_part, tor_part) = kunneth_parts(&h1, &h2, k);
    let expected = tensor_part.sum(&tor_part);
    let mut grid = product_barcode.spectrum();
    grid.extend(expected.spectrum());
    grid.sort();
    grid.dedup();
    let pointwise_dims_match = sample_points(&grid)
        .iter()
        .all(|s| product_barcode.dimension_at(s) == expected.dimension_at(s));
    Ok(KunnethReport {
        degree: k,
        split_equality: product_barcode == expected,
        tensor_part,
        tor_part,
        product_barcode,
        pointwise_dims_match,
    })
}

/// The tensor and Tor parts predicted in degree `k` from per-degree barcodes.
pub fn kunneth_parts(h1: &BTreeMap<i64, Barcode>, h2: &BTreeMap<i64, Barcode>, k: i64) -> (Barcode, Barcode) {
    let mut tensor_part = Barcode::new().with_degree(k);
    let mut tor_part = Barcode::new().with_degree(k);
    for (i, b1) in h1 {
        if let Some(b2) = h2.get(&(k - i)) {
            tensor_part = tensor_part.sum(&barcode_tensor(b1, b2).with_degree(k));
        }
        if let Some(b2) = h2.get(&(k - 1 - i)) {
            tor_part = tor_part.sum(&barcode_tor(b1, b2).with_degree(k));
        }
    }
    (tensor_part, tor_part)
}
