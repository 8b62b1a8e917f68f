//! Exact bottleneck distance with a matching certificate.

use num_traits::{Signed, Zero};

use crate::barcode::{Barcode, Interval};
use crate::error::{Error, Result};
use crate::exactnum::{ExtRational, Rational};

/// A δ-matching: matched pairs plus the bars erased on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(Interval, Interval)>,
    pub erased_1: Barcode,
    pub erased_2: Barcode,
    pub cost: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottleneckResult {
    pub distance: ExtRational,
    /// `None` exactly when the distance is infinite.
    pub matching: Option<Matching>,
}

/// `max(|Δbirth|, |Δdeath|)`, infinite when exactly one bar is infinite.
pub fn pair_cost(a: &Interval, b: &Interval) -> ExtRational {
    let db = ExtRational::Finite((&a.birth - &b.birth).abs());
    db.max(a.death.abs_diff(&b.death))
}

/// Half the length of a bar: the cost of erasing it.
pub fn erase_cost(a: &Interval) -> ExtRational {
    match a.length() {
        ExtRational::Finite(l) => ExtRational::Finite(l / Rational::from_integer(2.into())),
        ExtRational::Infinite => ExtRational::Infinite,
    }
}

/// Bottleneck distance and a witnessing matching at that distance.
pub fn bottleneck(b1: &Barcode, b2: &Barcode) -> BottleneckResult {
    let (inf1, fin1): (Vec<Interval>, Vec<Interval>) = b1.expanded().into_iter().partition(Interval::is_infinite);
    let (inf2, fin2): (Vec<Interval>, Vec<Interval>) = b2.expanded().into_iter().partition(Interval::is_infinite);
    if inf1.len() != inf2.len() {
        return BottleneckResult {
            distance: ExtRational::Infinite,
            matching: None,
        };
    }
    // births are sorted; pairing in order is optimal for points on a line
    let mut inf_cost = Rational::zero();
    let mut pairs: Vec<(Interval, Interval)> = Vec::new();
    for (a, b) in inf1.into_iter().zip(inf2) {
        inf_cost = inf_cost.max((&a.birth - &b.birth).abs());
        pairs.push((a, b));
    }

    let mut candidates: Vec<Rational> = vec![Rational::zero()];
    for a in fin1.iter().chain(&fin2) {
        if let ExtRational::Finite(c) = erase_cost(a) {
            candidates.push(c);
        }
    }
    for a in &fin1 {
        for b in &fin2 {
            if let ExtRational::Finite(c) = pair_cost(a, b) {
                candidates.push(c);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    // the largest candidate is always feasible (erase everything)
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if finite_matching(&fin1, &fin2, &candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let fin_cost = candidates[lo].clone();
    let (fin_pairs, erased_1, erased_2) = finite_matching(&fin1, &fin2, &fin_cost).expect("feasible");
    pairs.extend(fin_pairs);
    let cost = inf_cost.max(fin_cost);
    BottleneckResult {
        distance: ExtRational::Finite(cost.clone()),
        matching: Some(Matching {
            pairs,
            erased_1: Barcode::from_intervals(erased_1),
            erased_2: Barcode::from_intervals(erased_2),
            cost,
        }),
    }
}

/// Interleaving distance of the underlying modules, equal to the bottleneck
/// distance of their barcodes.
pub fn interleaving_distance(b1: &Barcode, b2: &Barcode) -> ExtRational {
    bottleneck(b1, b2).distance
}

type FiniteMatching = (Vec<(Interval, Interval)>, Vec<Interval>, Vec<Interval>);

/// A perfect matching in the graph with diagonal copies, if one exists at δ.
fn finite_matching(fin1: &[Interval], fin2: &[Interval], delta: &Rational) -> Option<FiniteMatching> {
    let n1 = fin1.len();
    let n2 = fin2.len();
    let d = ExtRational::Finite(delta.clone());
    let erasable1: Vec<bool> = fin1.iter().map(|a| erase_cost(a) <= d).collect();
    let erasable2: Vec<bool> = fin2.iter().map(|b| erase_cost(b) <= d).collect();
    // left: bars of B1 (0..n1), diagonal copies of B2 (n1..n1+n2)
    // right: bars of B2 (0..n2), diagonal copies of B1 (n2..n2+n1)
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n1 + n2];
    for i in 0..n1 {
        for j in 0..n2 {
            if pair_cost(&fin1[i], &fin2[j]) <= d {
                adj[i].push(j);
            }
        }
        if erasable1[i] {
            adj[i].push(n2 + i);
        }
    }
    for j in 0..n2 {
        if erasable2[j] {
            adj[n1 + j].push(j);
        }
        for i in 0..n1 {
            adj[n1 + j].push(n2 + i);
        }
    }
    let mut match_right: Vec<Option<usize>> = vec![None; n1 + n2];
    for u in 0..n1 + n2 {
        let mut seen = vec![false; n1 + n2];
        if !augment(u, &adj, &mut match_right, &mut seen) {
            return None;
        }
    }
    let mut pairs = Vec::new();
    let mut erased1 = Vec::new();
    let mut erased2 = Vec::new();
    for (r, l) in match_right.iter().enumerate() {
        let l = l.expect("perfect matching");
        match (l < n1, r < n2) {
            (true, true) => pairs.push((fin1[l].clone(), fin2[r].clone())),
            (true, false) => erased1.push(fin1[l].clone()),
            (false, true) => erased2.push(fin2[r].clone()),
            (false, false) => {}
        }
    }
    Some((pairs, erased1, erased2))
}

fn augment(u: usize, adj: &[Vec<usize>], match_right: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_right[v].is_none_or(|w| augment(w, adj, match_right, seen)) {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Whether `m` is a δ-matching between `b1` and `b2`.
///
/// Fails with [`Error::DanglingBar`] when `m` refers to bars the barcodes do
/// not contain.
pub fn verify_matching(m: &Matching, b1: &Barcode, b2: &Barcode, delta: &Rational) -> Result<bool> {
    let mut rest1 = b1.clone();
    let mut rest2 = b2.clone();
    let take = |rest: &mut Barcode, i: &Interval| -> Result<()> {
        if rest.remove(i, 1) == 1 {
            Ok(())
        } else {
            Err(Error::DanglingBar(i.to_string()))
        }
    };
    for (a, b) in &m.pairs {
        take(&mut rest1, a)?;
        take(&mut rest2, b)?;
    }
    for a in m.erased_1.expanded() {
        take(&mut rest1, &a)?;
    }
    for b in m.erased_2.expanded() {
        take(&mut rest2, &b)?;
    }
    if !rest1.is_empty() || !rest2.is_empty() {
        return Ok(false);
    }
    let d = ExtRational::Finite(delta.clone());
    let pairs_ok = m.pairs.iter().all(|(a, b)| pair_cost(a, b) <= d);
    let erased_ok = m
        .erased_1
        .bars()
        .chain(m.erased_2.bars())
        .all(|(i, _)| erase_cost(i) <= d);
    Ok(pairs_ok && erased_ok)
}
