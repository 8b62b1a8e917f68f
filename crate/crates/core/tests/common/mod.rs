//! Random generators and independent reference implementations shared by
//! the integration tests.
#![allow(dead_code)]

pub mod criteria;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use persmod::barcode::{Barcode, Interval};
use persmod::exactnum::{rat, ExtRational, Rational};
use persmod::filtered_complex::{
    cap_with_cochain, lower_star_complex, FieldTag, FilteredChainMap, FilteredComplex, SimplicialComplex,
};
use persmod::linalg::Matrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform value `k / den` with `lo ≤ k ≤ hi`.
pub fn grid_value(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), den)
}

/// A valid complex with at most `max_gens` generators in degrees 0–2 and
/// small integer boundary coefficients. Boundaries of degree-2 generators
/// are drawn from the cycles of `∂_1`; filtrations are raised where needed
/// so that `ν(∂x) ≤ ν(x)`.
pub fn random_complex(rng: &mut ChaCha8Rng, max_gens: usize) -> FilteredComplex<Rational> {
    let total = rng.gen_range(1..=max_gens);
    let n0 = rng.gen_range(1..=total);
    let n1 = rng.gen_range(0..=total - n0);
    let n2 = total - n0 - n1;
    let coeff = |rng: &mut ChaCha8Rng| -> Rational {
        match rng.gen_range(0..10) {
            0..=3 => Rational::zero(),
            4..=6 => rat(1, 1),
            7..=8 => rat(-1, 1),
            _ => rat(2, 1),
        }
    };
    let mut d1 = Matrix::<Rational>::zeros(n0, n1);
    for r in 0..n0 {
        for c in 0..n1 {
            d1.set(r, c, coeff(rng));
        }
    }
    let cycles = d1.kernel();
    let mut d2 = Matrix::<Rational>::zeros(n1, n2);
    for c in 0..n2 {
        for k in 0..cycles.cols() {
            let a = coeff(rng);
            if a.is_zero() {
                continue;
            }
            for r in 0..n1 {
                let v = d2.get(r, c) + &a * cycles.get(r, k);
                d2.set(r, c, v);
            }
        }
    }
    let mut nu: Vec<Vec<Rational>> = vec![
        (0..n0).map(|_| grid_value(rng, 0, 8, 2)).collect(),
        (0..n1).map(|_| grid_value(rng, 0, 8, 2)).collect(),
        (0..n2).map(|_| grid_value(rng, 0, 8, 2)).collect(),
    ];
    for (deg, d) in [(1usize, &d1), (2, &d2)] {
        for c in 0..d.cols() {
            for r in 0..d.rows() {
                if !d.get(r, c).is_zero() && nu[deg - 1][r] > nu[deg][c] {
                    nu[deg][c] = nu[deg - 1][r].clone();
                }
            }
        }
    }
    let name = |deg: usize, i: usize| format!("{}{i}", ["x", "y", "z"][deg]);
    let mut order: Vec<(usize, usize)> = (0..n0)
        .map(|i| (0, i))
        .chain((0..n1).map(|i| (1, i)))
        .chain((0..n2).map(|i| (2, i)))
        .collect();
    order.shuffle(rng);
    let mut c = FilteredComplex::new(FieldTag::Rational);
    for &(deg, i) in &order {
        c.add_generator(name(deg, i), deg as i64, nu[deg][i].clone());
    }
    for (deg, d) in [(1usize, &d1), (2, &d2)] {
        for col in 0..d.cols() {
            let terms: Vec<(Rational, String)> = (0..d.rows())
                .filter(|&r| !d.get(r, col).is_zero())
                .map(|r| (d.get(r, col).clone(), name(deg - 1, r)))
                .collect();
            c.set_boundary(&name(deg, col), terms).unwrap();
        }
    }
    assert!(c.validate().is_valid(), "generator produced an invalid complex");
    c
}

/// A random simplicial complex on `n` vertices: random edges and triangles
/// (closed under faces), with heights `k/2`, `0 ≤ k ≤ 12`.
pub fn random_simplicial(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    let vertices: Vec<(String, Rational)> = (0..n).map(|i| (format!("v{i}"), grid_value(rng, 0, 12, 2))).collect();
    let mut simplices = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.5) {
                simplices.push(vec![a, b]);
            }
            for c in b + 1..n {
                if rng.gen_bool(0.15) {
                    simplices.push(vec![a, b, c]);
                }
            }
        }
    }
    SimplicialComplex::from_index_simplices(vertices, &simplices).unwrap()
}

/// Heights moved by at most `delta` (on the grid of `1/4`).
pub fn perturb_heights(rng: &mut ChaCha8Rng, s: &SimplicialComplex, delta: &Rational) -> SimplicialComplex {
    let steps = (delta * rat(4, 1)).floor().to_integer();
    let steps: i64 = steps.try_into().unwrap();
    let heights = s
        .heights()
        .iter()
        .map(|h| h + grid_value(rng, -steps, steps, 4))
        .collect();
    s.with_heights(heights)
}

/// A random barcode with up to `max_bars` distinct bars (endpoints on the
/// grid of `1/2` in `[0, 10]`), multiplicities up to `max_mult`, and
/// occasionally infinite bars.
pub fn random_barcode(rng: &mut ChaCha8Rng, max_bars: usize, max_mult: usize) -> Barcode {
    let mut b = Barcode::new();
    for _ in 0..rng.gen_range(0..=max_bars) {
        let birth = grid_value(rng, 0, 18, 2);
        let m = rng.gen_range(1..=max_mult);
        if rng.gen_bool(0.15) {
            b.insert(Interval::infinite(birth), m);
        } else {
            let len = grid_value(rng, 1, 12, 2);
            b.insert(Interval::finite(birth.clone(), birth + len).unwrap(), m);
        }
    }
    b
}

/// Every endpoint moved by at most `delta` (grid of `1/4`); bars that
/// collapse are dropped.
pub fn perturb_barcode(rng: &mut ChaCha8Rng, b: &Barcode, delta: &Rational) -> Barcode {
    let steps: i64 = (delta * rat(4, 1)).floor().to_integer().try_into().unwrap();
    let mut out = Barcode::new();
    for bar in b.expanded() {
        let birth = &bar.birth + grid_value(rng, -steps, steps, 4);
        let death = match &bar.death {
            ExtRational::Finite(d) => ExtRational::Finite(d + grid_value(rng, -steps, steps, 4)),
            ExtRational::Infinite => ExtRational::Infinite,
        };
        out.push(birth, death);
    }
    out
}

/// Persistent Betti number `dim im(H_k(C^s) → H_k(C^t))` by dense linear
/// algebra: `dim Z_s − dim(Z_s ∩ B_t)`.
pub fn persistent_betti(c: &FilteredComplex<Rational>, k: i64, s: &Rational, t: &Rational) -> usize {
    let alive = |deg: i64, at: &Rational| -> Vec<usize> {
        c.degree_indices(deg)
            .iter()
            .enumerate()
            .filter(|(_, &g)| c.generator(g).filtration < *at)
            .map(|(i, _)| i)
            .collect()
    };
    let dk = c.boundary_matrix(k);
    let dk1 = c.boundary_matrix(k + 1);
    let ak = alive(k, s);
    let local = dk.select_columns(&ak).kernel();
    let n = c.degree_indices(k).len();
    let mut z = Matrix::zeros(n, local.cols());
    for (li, &gi) in ak.iter().enumerate() {
        for col in 0..local.cols() {
            z.set(gi, col, local.get(li, col).clone());
        }
    }
    let b = dk1.select_columns(&alive(k + 1, t));
    let dz = z.rank();
    let db = b.rank();
    let dsum = z.hcat(&b).rank();
    dz - (dz + db - dsum)
}

/// Barcode of `H_k` from persistent Betti numbers at the midpoints between
/// filtration values.
pub fn oracle_barcode(c: &FilteredComplex<Rational>, k: i64) -> Barcode {
    let mut vals: Vec<Rational> = c.generators().iter().map(|g| g.filtration.clone()).collect();
    vals.sort();
    vals.dedup();
    let n = vals.len();
    let sample = |i: usize| -> Rational {
        if i + 1 < n {
            (&vals[i] + &vals[i + 1]) / rat(2, 1)
        } else {
            &vals[i] + rat(1, 1)
        }
    };
    let r = |i: Option<usize>, j: usize| -> i64 {
        i.map_or(0, |i| persistent_betti(c, k, &sample(i), &sample(j)) as i64)
    };
    let mut b = Barcode::new();
    for i in 0..n {
        let prev = i.checked_sub(1);
        for j in i + 1..n {
            let m = r(Some(i), j - 1) - r(Some(i), j) - r(prev, j - 1) + r(prev, j);
            assert!(m >= 0);
            b.insert(Interval::finite(vals[i].clone(), vals[j].clone()).unwrap(), m as usize);
        }
        let m = r(Some(i), n - 1) - r(prev, n - 1);
        b.insert(Interval::infinite(vals[i].clone()), m as usize);
    }
    b
}

fn cost_pair(a: &Interval, b: &Interval) -> ExtRational {
    let db = (&a.birth - &b.birth).abs();
    match (&a.death, &b.death) {
        (ExtRational::Finite(x), ExtRational::Finite(y)) => ExtRational::Finite(db.max((x - y).abs())),
        (ExtRational::Infinite, ExtRational::Infinite) => ExtRational::Finite(db),
        _ => ExtRational::Infinite,
    }
}

fn cost_erase(a: &Interval) -> ExtRational {
    match &a.death {
        ExtRational::Finite(d) => ExtRational::Finite((d - &a.birth) / rat(2, 1)),
        ExtRational::Infinite => ExtRational::Infinite,
    }
}

/// Bottleneck distance by enumerating every partial matching.
pub fn oracle_bottleneck(b1: &Barcode, b2: &Barcode) -> ExtRational {
    fn go(i: usize, a: &[Interval], b: &[Interval], used: &mut Vec<bool>, acc: ExtRational, best: &mut ExtRational) {
        if acc >= *best {
            return;
        }
        if i == a.len() {
            let mut total = acc;
            for (j, bar) in b.iter().enumerate() {
                if !used[j] {
                    total = total.max(cost_erase(bar));
                }
            }
            if total < *best {
                *best = total;
            }
            return;
        }
        go(i + 1, a, b, used, acc.clone().max(cost_erase(&a[i])), best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(i + 1, a, b, used, acc.clone().max(cost_pair(&a[i], &b[j])), best);
                used[j] = false;
            }
        }
    }
    let a = b1.expanded();
    let b = b2.expanded();
    let mut best = ExtRational::Infinite;
    let mut used = vec![false; b.len()];
    go(0, &a, &b, &mut used, ExtRational::Finite(Rational::zero()), &mut best);
    best
}

fn count_containing(b: &Barcode, x: &Rational, y: Option<&Rational>) -> usize {
    b.bars()
        .filter(|(bar, _)| {
            bar.birth <= *x
                && match (y, &bar.death) {
                    (_, ExtRational::Infinite) => true,
                    (Some(y), ExtRational::Finite(d)) => d >= y,
                    (None, ExtRational::Finite(_)) => false,
                }
        })
        .map(|(_, m)| m)
        .sum()
}

/// Grid search straight from the definition: the largest `c` on the grid
/// of step `h / 2` such that some `I = (x, y]` with `x, y` on the grid of
/// step `h` in `[lo, hi]` has length `> 4c` and `m(I) = m(I shrunk by 2c)`
/// not divisible by `p`. Infinite if an unbounded `I` qualifies at `c = big`.
pub fn oracle_spread(b: &Barcode, p: usize, lo: i64, hi: i64, h: &Rational) -> ExtRational {
    let steps: i64 = ((Rational::from_integer((hi - lo).into())) / h).to_integer().try_into().unwrap();
    let grid: Vec<Rational> = (0..=steps).map(|k| Rational::from_integer(lo.into()) + h * rat(k, 1)).collect();
    let big = rat(1000, 1);
    for x in &grid {
        let l = count_containing(b, x, None);
        let l2 = count_containing(b, &(x + &big * rat(2, 1)), None);
        if l > 0 && l % p != 0 && l == l2 {
            return ExtRational::Infinite;
        }
    }
    let half = h / rat(2, 1);
    let mut best = Rational::zero();
    for (i, x) in grid.iter().enumerate() {
        for y in &grid[i + 1..] {
            let l = count_containing(b, x, Some(y));
            if l == 0 || l % p == 0 {
                continue;
            }
            let mut c = half.clone();
            while &c * rat(4, 1) < y - x {
                let shrunk = count_containing(b, &(x + &c * rat(2, 1)), Some(&(y - &c * rat(2, 1))));
                if shrunk == l && c > best {
                    best = c.clone();
                }
                c += &half;
            }
        }
    }
    ExtRational::Finite(best)
}

/// The `n × n` grid torus (vertex `r·n + c`), two triangles per square.
pub fn grid_torus(n: usize, heights: Vec<Rational>) -> SimplicialComplex {
    let v = |r: usize, c: usize| (r % n) * n + (c % n);
    let mut tris = Vec::new();
    for r in 0..n {
        for c in 0..n {
            tris.push(vec![v(r, c), v(r, c + 1), v(r + 1, c + 1)]);
            tris.push(vec![v(r, c), v(r + 1, c), v(r + 1, c + 1)]);
        }
    }
    let vertices = heights.into_iter().enumerate().map(|(i, h)| (format!("t{i}"), h)).collect();
    SimplicialComplex::from_index_simplices(vertices, &tris).unwrap()
}

/// The cocycle counting crossings from column 0 to column 1 of a grid torus.
pub fn torus_cut_cocycle(n: usize, s: &SimplicialComplex) -> BTreeMap<(usize, usize), Rational> {
    let mut out = BTreeMap::new();
    for simplex in s.simplices() {
        if simplex.len() != 2 {
            continue;
        }
        let (a, b) = (simplex[0], simplex[1]);
        match (a % n, b % n) {
            (0, 1) => {
                out.insert((a, b), rat(1, 1));
            }
            (1, 0) => {
                out.insert((a, b), rat(-1, 1));
            }
            _ => {}
        }
    }
    out
}

/// Lower-star complex of a grid torus and its cap-product operator.
pub fn torus_with_cap(
    n: usize,
    heights: Vec<Rational>,
) -> (SimplicialComplex, Arc<FilteredComplex<Rational>>, FilteredChainMap<Rational>) {
    let s = grid_torus(n, heights);
    let c = Arc::new(lower_star_complex(&s, FieldTag::Rational).unwrap());
    let cap = cap_with_cochain(&c, &torus_cut_cocycle(n, &s), &s).unwrap();
    (s, c, cap)
}

pub fn fin(a: i64, b: i64) -> Interval {
    Interval::finite(rat(a, 1), rat(b, 1)).unwrap()
}

pub fn inf(a: i64) -> Interval {
    Interval::infinite(rat(a, 1))
}

/// Basis of the `k`-cycles of `C^s` in degree-`k` coordinates.
pub fn cycles_at<F: persmod::exactnum::Field>(c: &FilteredComplex<F>, k: i64, s: &Rational) -> Matrix<F> {
    let alive: Vec<usize> = (0..c.degree_indices(k).len())
        .filter(|&i| c.generator(c.degree_indices(k)[i]).filtration < *s)
        .collect();
    let local = c.boundary_matrix(k).select_columns(&alive).kernel();
    let mut z = Matrix::zeros(c.degree_indices(k).len(), local.cols());
    for (li, &gi) in alive.iter().enumerate() {
        for col in 0..local.cols() {
            z.set(gi, col, local.get(li, col).clone());
        }
    }
    z
}

/// Spanning set of the `k`-boundaries of `C^t`.
pub fn boundaries_at<F: persmod::exactnum::Field>(c: &FilteredComplex<F>, k: i64, t: &Rational) -> Matrix<F> {
    let alive: Vec<usize> = (0..c.degree_indices(k + 1).len())
        .filter(|&i| c.generator(c.degree_indices(k + 1)[i]).filtration < *t)
        .collect();
    c.boundary_matrix(k + 1).select_columns(&alive)
}

/// `dim H_k(C^s)` by dense ranks.
pub fn homology_dim_oracle(c: &FilteredComplex<Rational>, k: i64, s: &Rational) -> usize {
    let z = cycles_at(c, k, s);
    let b = boundaries_at(c, k, s);
    z.hcat(&b).rank() - b.rank()
}

/// `dim im(H_k(C^{t−c}) → H_{k+r}(C'^t))` by dense ranks.
pub fn image_dim_oracle(phi: &FilteredChainMap<Rational>, k: i64, t: &Rational) -> usize {
    let z = cycles_at(phi.source(), k, &(t - phi.shift()));
    let x = phi.matrix(k).mul(&z);
    let b = boundaries_at(phi.target(), k + phi.degree_shift(), t);
    x.hcat(&b).rank() - b.rank()
}

/// `dim ker(H_k(C^s) → H_{k+r}(C'^{s+c}))` from the preimage of the target
/// boundaries.
pub fn kernel_dim_oracle(phi: &FilteredChainMap<Rational>, k: i64, s: &Rational) -> usize {
    let z = cycles_at(phi.source(), k, s);
    let x = phi.matrix(k).mul(&z);
    let b = boundaries_at(phi.target(), k + phi.degree_shift(), &(s + phi.shift()));
    let solutions = x.hcat(&b.scale(&rat(-1, 1))).kernel();
    let coeffs = solutions.select_rows(&(0..z.cols()).collect::<Vec<_>>());
    z.mul(&coeffs).rank() - boundaries_at(phi.source(), k, s).rank()
}
