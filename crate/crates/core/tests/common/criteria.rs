//! One function per acceptance criterion. Each returns a short summary on
//! success and a description of the first failure otherwise.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use persmod::barcode::{barcode_from_complex, barcodes_all, Barcode, Interval};
use persmod::distances::{bottleneck, verify_matching};
use persmod::equivariant::{
    eggbeater_constant, eggbeater_synthetic, gamma, mu_p, power_module_from_bars, reduced_spread, spread,
    GradedBarcodeFamily,
};
use persmod::exactnum::{rat, CyclotomicNumber, ExtRational, Rational};
use persmod::filtered_complex::{lower_star_complex, FieldTag, FilteredChainMap, FilteredComplex};
use persmod::linalg::Matrix;
use persmod::operators::{
    builtin_genus2, check_operator_interleaving, image_barcode, key_estimate_report, shift_operator, Genus2Variant,
    InterleavingData, OperatorModule,
};
use persmod::quantum::{hypothesis_check, quantum_betti, QuantumAlgebra};
use persmod::tabulated::tabulate;
use persmod::tensor::kunneth_check;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::*;

type Cyc = CyclotomicNumber;
pub type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

/// `H_0` of `x ← y` with `ν(x) = birth`, `ν(y) = death`: the single bar
/// `(birth, death]`.
pub fn one_bar_complex(birth: i64, death: i64) -> FilteredComplex<Rational> {
    let mut c = FilteredComplex::new(FieldTag::Rational);
    c.add_generator("x", 0, rat(birth, 1));
    c.add_generator("y", 1, rat(death, 1));
    c.set_boundary("y", vec![(rat(1, 1), "x")]).unwrap();
    c
}

pub fn kunneth_example() -> Outcome {
    let c1 = one_bar_complex(0, 3);
    let c2 = one_bar_complex(1, 5);
    let expected = [
        Barcode::from_intervals([Interval::finite(rat(1, 1), rat(4, 1)).unwrap()]),
        Barcode::from_intervals([Interval::finite(rat(5, 1), rat(8, 1)).unwrap()]),
        Barcode::new(),
    ];
    for (k, want) in expected.iter().enumerate() {
        let r = kunneth_check(&c1, &c2, k as i64).map_err(e)?;
        ensure(r.split_equality && r.pointwise_dims_match, || format!("degree {k}: split mismatch"))?;
        ensure(r.product_barcode == *want, || {
            format!("degree {k}: got {:?}, expected {want:?}", r.product_barcode)
        })?;
    }
    Ok("{(1,4]}, {(5,8]}, {} in degrees 0, 1, 2".into())
}

pub fn random_kunneth(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    for case in 0..cases {
        let c1 = random_complex(&mut rng, 6);
        let c2 = random_complex(&mut rng, 6);
        for k in 0..=4 {
            let r = kunneth_check(&c1, &c2, k).map_err(e)?;
            ensure(r.split_equality, || format!("case {case}, degree {k}: product ≠ tensor + tor"))?;
        }
    }
    Ok(format!("{cases} pairs, degrees 0–4"))
}

pub fn two_path_agreement(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    let mut nonempty = [0usize; 3];
    for case in 0..cases {
        let c = random_complex(&mut rng, 10);
        for k in 0..=2 {
            let direct = barcode_from_complex(&c, k).map_err(e)?;
            nonempty[k as usize] += usize::from(!direct.is_empty());
            let tabulated = tabulate(&c, k).map_err(e)?.barcode().map_err(e)?;
            let oracle = oracle_barcode(&c, k);
            ensure(direct == tabulated && direct == oracle, || {
                format!("case {case}, degree {k}: reduction {direct:?}, tabulated {tabulated:?}, oracle {oracle:?}")
            })?;
        }
    }
    Ok(format!(
        "{cases} complexes agree with each other and the rank oracle; nonempty H0/H1/H2: {}/{}/{}",
        nonempty[0], nonempty[1], nonempty[2]
    ))
}

fn bottleneck_distance(a: &Barcode, b: &Barcode) -> ExtRational {
    bottleneck(a, b).distance
}

fn ext_add(a: &ExtRational, b: &ExtRational) -> ExtRational {
    match (a, b) {
        (ExtRational::Finite(x), ExtRational::Finite(y)) => ExtRational::Finite(x + y),
        _ => ExtRational::Infinite,
    }
}

pub fn bottleneck_metric(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    for case in 0..cases {
        let bs: Vec<Barcode> = (0..3).map(|_| random_barcode(&mut rng, 4, 2)).collect();
        let zero = ExtRational::Finite(Rational::zero());
        for (i, a) in bs.iter().enumerate() {
            ensure(bottleneck_distance(a, a) == zero, || format!("case {case}: d(B, B) ≠ 0"))?;
            for b in &bs {
                let r = bottleneck(a, b);
                ensure(r.distance == bottleneck_distance(b, a), || format!("case {case}: asymmetric"))?;
                ensure((r.distance == zero) == (a == b), || format!("case {case}: zero distance between distinct barcodes"))?;
                if let (ExtRational::Finite(d), Some(m)) = (&r.distance, &r.matching) {
                    ensure(verify_matching(m, a, b, d).map_err(e)?, || format!("case {case}: bad matching"))?;
                }
                for c in &bs {
                    ensure(
                        bottleneck_distance(a, c) <= ext_add(&r.distance, &bottleneck_distance(b, c)),
                        || format!("case {case}: triangle inequality fails at {i}"),
                    )?;
                }
            }
        }
    }
    Ok(format!("{cases} triples"))
}

pub fn bottleneck_stability(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    for case in 0..cases {
        let s = random_simplicial(&mut rng, 5);
        let delta = rat(rng.gen_range(1..=4), 4);
        let t = perturb_heights(&mut rng, &s, &delta);
        let h1 = barcodes_all(&lower_star_complex::<Rational>(&s, FieldTag::Rational).map_err(e)?).map_err(e)?;
        let h2 = barcodes_all(&lower_star_complex::<Rational>(&t, FieldTag::Rational).map_err(e)?).map_err(e)?;
        let degrees: BTreeSet<i64> = h1.keys().chain(h2.keys()).copied().collect();
        let empty = Barcode::new();
        for k in degrees {
            let d = bottleneck_distance(h1.get(&k).unwrap_or(&empty), h2.get(&k).unwrap_or(&empty));
            ensure(d <= ExtRational::Finite(delta.clone()), || {
                format!("case {case}, degree {k}: distance {d:?} > δ = {delta}")
            })?;
        }
    }
    Ok(format!("{cases} lower-star perturbations"))
}

/// Every multiset of at most `max` bars drawn from `pool`.
pub fn small_multisets(pool: &[Interval], max: usize) -> Vec<Barcode> {
    fn go(pool: &[Interval], start: usize, left: usize, cur: &mut Vec<Interval>, out: &mut Vec<Barcode>) {
        out.push(Barcode::from_intervals(cur.iter().cloned()));
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            go(pool, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, max, &mut Vec::new(), &mut out);
    out
}

pub fn bottleneck_exhaustive() -> Outcome {
    let pool = [fin(0, 1), fin(0, 2), fin(1, 2), inf(0), inf(1)];
    let all = small_multisets(&pool, 3);
    for a in &all {
        for b in &all {
            let got = bottleneck_distance(a, b);
            let want = oracle_bottleneck(a, b);
            ensure(got == want, || format!("{a:?} vs {b:?}: {got:?}, oracle {want:?}"))?;
        }
    }
    Ok(format!("{} pairs", all.len() * all.len()))
}

pub fn bottleneck_all(seed: u64) -> Outcome {
    let a = bottleneck_metric(seed, 50)?;
    let b = bottleneck_stability(seed + 1, 50)?;
    let c = bottleneck_exhaustive()?;
    Ok(format!("{a}; {b}; {c}"))
}

pub fn genus2() -> Outcome {
    let (eps, a, b) = (rat(1, 1), rat(2, 1), rat(3, 1));
    let (cf, capf) = builtin_genus2(Genus2Variant::F, &eps, &a, &b).map_err(e)?;
    let (cg, capg) = builtin_genus2(Genus2Variant::G, &eps, &a, &b).map_err(e)?;
    let hf = barcodes_all(cf.as_ref()).map_err(e)?;
    let hg = barcodes_all(cg.as_ref()).map_err(e)?;
    ensure(hf == hg, || "barcodes of f and g differ".into())?;
    for (k, bf) in &hf {
        ensure(bottleneck_distance(bf, &hg[k]) == ExtRational::Finite(Rational::zero()), || {
            format!("degree {k}: nonzero bottleneck")
        })?;
        ensure(bf.spectral_invariants() == hg[k].spectral_invariants(), || format!("degree {k}: spectral invariants differ"))?;
    }
    let h1 = hf.get(&1).cloned().unwrap_or_default();
    let want = vec![eps.clone(), eps.clone(), b.clone(), b.clone()];
    ensure(h1.spectral_invariants() == want, || format!("degree-1 spectral invariants {:?}", h1.spectral_invariants()))?;
    let short = Interval::finite(eps.clone(), a.clone()).unwrap();
    let mut worst = ExtRational::Finite(Rational::zero());
    let mut contains = (false, false);
    for k in 0..=2 {
        let imf = image_barcode(&capf, k).map_err(e)?;
        let img = image_barcode(&capg, k).map_err(e)?;
        contains.0 |= imf.multiplicity(&short) > 0;
        contains.1 |= img.multiplicity(&short) > 0;
        worst = worst.max(bottleneck_distance(&imf, &img));
    }
    ensure(contains.0 != contains.1, || format!("(1,2] in image of f: {}, of g: {}", contains.0, contains.1))?;
    ensure(worst >= ExtRational::Finite(rat(1, 2)), || format!("image distance {worst:?} < 1/2"))?;
    Ok(format!("equal barcodes, image distance {}", persmod::io::ext_to_string(&worst)))
}

/// Filtrations moved by at most `delta` on the grid of `1/4`, then raised
/// where needed to keep `ν(∂x) ≤ ν(x)`.
pub fn perturb_complex(rng: &mut ChaCha8Rng, c: &FilteredComplex<Rational>, delta: &Rational) -> FilteredComplex<Rational> {
    let steps: i64 = (delta * rat(4, 1)).floor().to_integer().try_into().unwrap();
    let mut values: Vec<Rational> = c
        .generators()
        .iter()
        .map(|g| &g.filtration + grid_value(rng, -steps, steps, 4))
        .collect();
    let mut order: Vec<usize> = (0..c.len()).collect();
    order.sort_by_key(|&i| c.generator(i).degree);
    for i in order {
        for (j, _) in c.boundary_of(i) {
            if values[*j] > values[i] {
                values[i] = values[*j].clone();
            }
        }
    }
    c.with_filtrations(values)
}

/// The smallest `δ` for which the identity is a `δ`-shifted map both ways.
pub fn identity_delta(c: &FilteredComplex<Rational>, d: &FilteredComplex<Rational>) -> Rational {
    c.generators()
        .iter()
        .zip(d.generators())
        .map(|(a, b)| (&a.filtration - &b.filtration).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

fn identity_interleaving(
    v: &Arc<FilteredComplex<Rational>>,
    w: &Arc<FilteredComplex<Rational>>,
) -> Result<InterleavingData<Rational>, String> {
    let delta = identity_delta(v, w);
    let f = FilteredChainMap::identity(v.clone(), w.clone(), delta.clone()).map_err(e)?;
    let g = FilteredChainMap::identity(w.clone(), v.clone(), delta.clone()).map_err(e)?;
    InterleavingData::new(f, g, delta).map_err(e)
}

fn check_key_estimate(
    inter: &InterleavingData<Rational>,
    a: &OperatorModule<Rational>,
    b: &OperatorModule<Rational>,
    label: &str,
) -> Result<(), String> {
    ensure(check_operator_interleaving(inter, a, b).map_err(e)?, || format!("{label}: not an interleaving"))?;
    let r = key_estimate_report(inter, a, b).map_err(e)?;
    ensure(r.holds, || format!("{label}: image distance {:?} > δ = {}", r.image_distance, r.delta))
}

pub fn key_estimate(seed: u64, shift_cases: usize, cap_cases: usize) -> Outcome {
    let mut rng = rng(seed);
    for case in 0..shift_cases {
        let c = random_complex(&mut rng, 8);
        let delta = rat(rng.gen_range(0..=4), 4);
        let d = perturb_complex(&mut rng, &c, &delta);
        let shift = rat(rng.gen_range(0..=4), 2);
        let (v, w) = (Arc::new(c), Arc::new(d));
        let inter = identity_interleaving(&v, &w)?;
        let a = shift_operator(v, shift.clone()).map_err(e)?;
        let b = shift_operator(w, shift).map_err(e)?;
        check_key_estimate(&inter, &a, &b, &format!("shift case {case}"))?;
    }
    for case in 0..cap_cases {
        let n = 3;
        let heights: Vec<Rational> = (0..n * n).map(|_| grid_value(&mut rng, 0, 12, 2)).collect();
        let delta = rat(rng.gen_range(1..=4), 4);
        let steps: i64 = (&delta * rat(4, 1)).to_integer().try_into().unwrap();
        let moved: Vec<Rational> = heights.iter().map(|h| h + grid_value(&mut rng, -steps, steps, 4)).collect();
        let (_, v, cap_v) = torus_with_cap(n, heights);
        let (_, w, cap_w) = torus_with_cap(n, moved);
        let inter = identity_interleaving(&v, &w)?;
        ensure(inter.delta <= delta, || format!("cap case {case}: δ grew"))?;
        let a = OperatorModule::new(cap_v).map_err(e)?;
        let b = OperatorModule::new(cap_w).map_err(e)?;
        check_key_estimate(&inter, &a, &b, &format!("cap case {case}"))?;
    }
    Ok(format!("{shift_cases} shift-operator pairs, {cap_cases} cap-operator pairs"))
}

fn cycle_matrix(size: usize, scalar: &Cyc) -> Matrix<Cyc> {
    let mut m = Matrix::zeros(size, size);
    for i in 0..size {
        m.set((i + 1) % size, i, scalar.clone());
    }
    m
}

/// A random unipotent upper-triangular matrix with about `2n` small integer
/// entries above the diagonal.
fn random_unipotent(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Cyc> {
    let mut m = Matrix::identity(n);
    let density = (4.0 / n as f64).min(0.5);
    for r in 0..n {
        for c in r + 1..n {
            if rng.gen_bool(density) {
                m.set(r, c, Cyc::from_rational(rat(rng.gen_range(-2..=2), 1)));
            }
        }
    }
    m
}

fn place_block(target: &mut Matrix<Cyc>, at: usize, block: &Matrix<Cyc>) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            target.set(at + r, at + c, block.get(r, c).clone());
        }
    }
}

/// A random root `S` with `S^{p²} = 1` acting on groups of equal bars, built
/// from `p²`-cycles, twisted `p²`-cycles, `p`-cycles and scalars `ζ^k`,
/// each group conjugated by a random unipotent matrix.
pub fn random_full_power(rng: &mut ChaCha8Rng, p: u32) -> (Vec<Interval>, Matrix<Cyc>) {
    let pp = (p * p) as usize;
    let mut blocks: Vec<(Interval, Matrix<Cyc>)> = Vec::new();
    let groups = rng.gen_range(1..=3);
    let mut big_left = if p == 5 { 1 } else { 2 };
    for _ in 0..groups {
        let birth = grid_value(rng, 0, 8, 2);
        let bar = if rng.gen_bool(0.2) {
            Interval::infinite(birth)
        } else {
            let len = grid_value(rng, 1, 10, 2);
            Interval::finite(birth.clone(), birth + len).unwrap()
        };
        let mut parts: Vec<Matrix<Cyc>> = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let zeta = CyclotomicNumber::zeta_pow(p, rng.gen_range(0..p as i64)).unwrap();
            let kind = if big_left > 0 { rng.gen_range(0..4) } else { rng.gen_range(2..4) };
            parts.push(match kind {
                0 => cycle_matrix(pp, &Cyc::one()),
                1 => cycle_matrix(pp, &zeta),
                2 => cycle_matrix(p as usize, &Cyc::one()),
                _ => Matrix::identity(1).scale(&zeta),
            });
            if kind < 2 {
                big_left -= 1;
            }
        }
        let n: usize = parts.iter().map(Matrix::rows).sum();
        let mut s = Matrix::zeros(n, n);
        let mut at = 0;
        for part in &parts {
            place_block(&mut s, at, part);
            at += part.rows();
        }
        let u = random_unipotent(rng, n);
        let s = u.mul(&s).mul(&u.inverse().expect("unipotent"));
        blocks.push((bar, s));
    }
    let n: usize = blocks.iter().map(|(_, s)| s.rows()).sum();
    let mut bars = Vec::new();
    let mut s = Matrix::zeros(n, n);
    for (bar, block) in &blocks {
        place_block(&mut s, bars.len(), block);
        bars.extend(std::iter::repeat(bar.clone()).take(block.rows()));
    }
    // interleave the groups so equal bars need not be adjacent
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let bars = perm.iter().map(|&i| bars[i].clone()).collect();
    let s = s.select_rows(&perm).select_columns(&perm);
    (bars, s)
}

pub fn full_power_vanishing(seed: u64, per_prime: usize) -> Outcome {
    let mut rng = rng(seed);
    let mut nontrivial = 0;
    for p in [2u32, 3, 5] {
        for case in 0..per_prime {
            let (bars, s) = random_full_power(&mut rng, p);
            let z = power_module_from_bars(&bars, &s, p).map_err(e)?;
            let mu = mu_p(&z).map_err(e)?;
            ensure(mu == ExtRational::Finite(Rational::zero()), || format!("p = {p}, case {case}: μ_p = {mu:?}"))?;
            // T is diagonalizable, so T ≠ 1 somewhere means some ζ ≠ 1 eigenspace is nonzero
            nontrivial += usize::from(z.action().iter().any(|t| *t != Matrix::identity(t.rows())));
        }
    }
    Ok(format!("{} full powers, {nontrivial} with a nontrivial eigenspace", 3 * per_prime))
}

pub fn lipschitz(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    let mut positive = 0;
    for case in 0..cases {
        let p = *[2u32, 3, 5].choose(&mut rng).unwrap();
        let b = random_barcode(&mut rng, 5, 4);
        let delta = rat(rng.gen_range(1..=4), 4);
        let c = perturb_barcode(&mut rng, &b, &delta);
        let (sb, sc) = (spread(&b, p), spread(&c, p));
        positive += usize::from(sb > ExtRational::Finite(Rational::zero()));
        let diff = sb.abs_diff(&sc);
        let d = bottleneck_distance(&b, &c);
        ensure(diff <= d, || format!("case {case}: |Δ spread| = {diff:?} > {d:?}"))?;
    }
    Ok(format!("{cases} pairs, {positive} with positive spread"))
}

pub fn eggbeater() -> Outcome {
    let c = eggbeater_constant();
    let quarter = rat(1, 4);
    let mut last = String::new();
    for lambda in [10, 100, 1000] {
        let l = rat(lambda, 1);
        let z = eggbeater_synthetic(2, &l, &Rational::one()).map_err(e)?;
        let mu = mu_p(&z).map_err(e)?;
        let ExtRational::Finite(mu) = mu else {
            return Err(format!("λ = {lambda}: μ_p infinite"));
        };
        ensure(mu >= &l * &quarter - &c, || format!("λ = {lambda}: μ_p = {mu} < λ/4 − {c}"))?;
        let ratio = &mu / &l;
        if lambda == 1000 {
            ensure((&ratio - &quarter).abs() <= &quarter * rat(5, 100), || format!("ratio {ratio} not within 5% of 1/4"))?;
        }
        last = format!("μ_2 = {mu} at λ = {lambda}");
    }
    Ok(format!("C = {c}, {last}"))
}

pub fn quantum() -> Outcome {
    let s = QuantumAlgebra::builtin("s2xs2").map_err(e)?;
    let ab = s.parse_element("A+B").map_err(e)?;
    let b = quantum_betti(&s, &ab).map_err(e)?;
    ensure(b[0] == 1 && b[2] == 1, || format!("S²×S², A+B: {b:?}"))?;
    ensure(hypothesis_check(&s, &ab, 2).map_err(e)?.holds, || "S²×S², A+B, p = 2 fails".into())?;
    let a = s.parse_element("A").map_err(e)?;
    let b = quantum_betti(&s, &a).map_err(e)?;
    ensure(b.iter().all(|&x| x == 0 || x == 2) && b.contains(&2), || format!("S²×S², A: {b:?}"))?;
    ensure(!hypothesis_check(&s, &a, 2).map_err(e)?.holds, || "S²×S², A, p = 2 holds".into())?;
    ensure(hypothesis_check(&s, &a, 3).map_err(e)?.holds, || "S²×S², A, p = 3 fails".into())?;
    let cp3 = QuantumAlgebra::builtin("cp3").map_err(e)?;
    let n = cp3.parse_element("N").map_err(e)?;
    let b = quantum_betti(&cp3, &n).map_err(e)?;
    ensure(b[0] == 1, || format!("CP³, N: {b:?}"))?;
    for p in [2, 3, 5] {
        ensure(hypothesis_check(&cp3, &n, p).map_err(e)?.holds, || format!("CP³, p = {p} fails"))?;
    }
    Ok("S²×S² (A+B, A) and CP³ (N)".into())
}

/// A graded family whose top degree `r` has finite spread at least `γ(r)`.
pub fn random_family(rng: &mut ChaCha8Rng, r: i64, lower_degrees: usize) -> (GradedBarcodeFamily, u32) {
    let p = *[2u32, 3].choose(rng).unwrap();
    loop {
        let top = random_barcode(rng, 4, 3);
        let ExtRational::Finite(s) = spread(&top, p) else { continue };
        let mut f = GradedBarcodeFamily::new();
        for i in 1..=lower_degrees as i64 {
            let mut b = Barcode::new();
            for _ in 0..rng.gen_range(1..=3) {
                let birth = grid_value(rng, 0, 10, 2);
                let cap: i64 = (&s * rat(4, 1)).to_integer().try_into().unwrap();
                let len = grid_value(rng, 0, cap, 2);
                b.push(birth.clone(), ExtRational::Finite(birth + len));
            }
            f.insert(r - i, b);
        }
        f.insert(r, top);
        return (f, p);
    }
}

pub fn reduced_formula(seed: u64, cases: usize) -> Outcome {
    let mut rng = rng(seed);
    let mut saw_zero_gamma = false;
    let mut positive_gamma = 0;
    for case in 0..cases {
        let lower = if case == 0 { 0 } else { rng.gen_range(1..=2) };
        let (f, p) = random_family(&mut rng, 1, lower);
        let g = gamma(&f, 1);
        saw_zero_gamma |= g.is_zero() && f.degrees.len() == 1;
        positive_gamma += usize::from(g > Rational::zero());
        let s = spread(f.get(1).unwrap(), p);
        let want = match &s {
            ExtRational::Finite(x) => ExtRational::Finite(x - &g),
            ExtRational::Infinite => ExtRational::Infinite,
        };
        let got = reduced_spread(&f, 1, p);
        ensure(got == want, || format!("case {case}: reduced {got:?}, spread − γ = {want:?}"))?;
    }
    ensure(saw_zero_gamma, || "no single-degree case".into())?;
    Ok(format!("{cases} families, {positive_gamma} with γ > 0"))
}
