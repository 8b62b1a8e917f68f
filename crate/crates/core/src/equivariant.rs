//! `Z/p`-persistence modules: eigenspace barcodes over `Q(ζ_p)`, the
//! multiplicity-sensitive spread `μ_p`, full `p`-th powers and a synthetic
//! generator with the orbit pattern of egg-beater Floer barcodes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::barcode::{Barcode, Interval};
use crate::error::{Error, Result};
use crate::exactnum::{is_prime, roots_of_unity, CyclotomicNumber, ExtRational, Rational};
use crate::linalg::Matrix;
use crate::tabulated::TabulatedModule;

type Cyc = CyclotomicNumber;

/// A persistence module over `Q(ζ_p)` with an automorphism `T`, `T^p = id`,
/// given by one matrix per sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct ZpModule {
    p: u32,
    module: TabulatedModule<Cyc>,
    action: Vec<Matrix<Cyc>>,
}

impl ZpModule {
    pub fn new(p: u32, module: TabulatedModule<Cyc>, action: Vec<Matrix<Cyc>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        module.validate()?;
        check_commuting(&module, &action, "T")?;
        for (i, t) in action.iter().enumerate() {
            if t.pow(p as u64) != Matrix::identity(t.rows()) {
                return Err(Error::InvalidModule(format!("T^{p} is not the identity at sample point {i}")));
            }
        }
        Ok(ZpModule { p, module, action })
    }

    /// Interval modules `bars` with an action given on bar indices; the action
    /// may only mix bars with equal endpoints.
    pub fn from_bars(p: u32, bars: &[Interval], action: &Matrix<Cyc>) -> Result<Self> {
        let (module, alive) = TabulatedModule::interval_sum(bars);
        let per_sample = restrict_to_bars(bars, action, &alive)?;
        Self::new(p, module, per_sample)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn module(&self) -> &TabulatedModule<Cyc> {
        &self.module
    }

    pub fn action(&self) -> &[Matrix<Cyc>] {
        &self.action
    }

    pub fn direct_sum(&self, other: &ZpModule) -> Result<ZpModule> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        let grid = merged(&self.module.critical_values, &other.module.critical_values);
        let a = self.refine(&grid)?;
        let b = other.refine(&grid)?;
        let module = a.module.direct_sum(&b.module)?;
        let action = a
            .action
            .iter()
            .zip(&b.action)
            .map(|(x, y)| crate::tabulated::block_diag(x, y))
            .collect();
        ZpModule::new(self.p, module, action)
    }

    /// The same module sampled on a finer grid.
    pub fn refine(&self, grid: &[Rational]) -> Result<ZpModule> {
        let module = self.module.refine(grid)?;
        let action = module
            .sample_points()
            .iter()
            .map(|s| match self.module.piece_of(s) {
                Some(i) => self.action[i].clone(),
                None => Matrix::zeros(0, 0),
            })
            .collect();
        Ok(ZpModule {
            p: self.p,
            module,
            action,
        })
    }
}

fn merged(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut v: Vec<Rational> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

fn check_commuting(module: &TabulatedModule<Cyc>, maps: &[Matrix<Cyc>], name: &str) -> Result<()> {
    if maps.len() != module.dims.len() {
        return Err(Error::InvalidModule(format!("{name} needs one matrix per sample point")));
    }
    for (i, (m, &d)) in maps.iter().zip(&module.dims).enumerate() {
        if m.rows() != d || m.cols() != d {
            return Err(Error::InvalidModule(format!("{name} at sample point {i} is not {d}x{d}")));
        }
    }
    for (i, tr) in module.transitions.iter().enumerate() {
        if maps[i + 1].mul(tr) != tr.mul(&maps[i]) {
            return Err(Error::InvalidModule(format!(
                "{name} does not commute with the transition at sample point {i}"
            )));
        }
    }
    Ok(())
}

fn restrict_to_bars(bars: &[Interval], action: &Matrix<Cyc>, alive: &[Vec<usize>]) -> Result<Vec<Matrix<Cyc>>> {
    if action.rows() != bars.len() || action.cols() != bars.len() {
        return Err(Error::InvalidModule("action must be square of the number of bars".into()));
    }
    for r in 0..bars.len() {
        for c in 0..bars.len() {
            if !action.get(r, c).is_zero() && bars[r] != bars[c] {
                return Err(Error::InvalidModule(format!("action mixes bars {} and {}", bars[r], bars[c])));
            }
        }
    }
    Ok(alive
        .iter()
        .map(|idx| action.select_rows(idx).select_columns(idx))
        .collect())
}

fn check_root(zeta: &Cyc, p: u32) -> Result<()> {
    if zeta.p().is_some_and(|q| q != p) || !zeta.pow(p as u64).is_one() {
        return Err(Error::NotRootOfUnity(zeta.to_string(), p));
    }
    Ok(())
}

/// The `ζ`-eigenspace `t ↦ ker(T_t − ζ)` with restricted structure maps.
pub fn eigenspace(z: &ZpModule, zeta: &Cyc) -> Result<TabulatedModule<Cyc>> {
    check_root(zeta, z.p)?;
    let bases: Vec<Matrix<Cyc>> = z
        .action
        .iter()
        .map(|t| t.sub(&Matrix::identity(t.rows()).scale(zeta)).kernel())
        .collect();
    z.module.submodule(&bases)
}

/// Barcode of the `ζ^k`-eigenspace for every `k = 0, …, p − 1`.
pub fn eigenspace_barcodes(z: &ZpModule) -> Result<BTreeMap<u32, Barcode>> {
    roots_of_unity(z.p)?
        .iter()
        .enumerate()
        .map(|(k, zeta)| Ok((k as u32, eigenspace(z, zeta)?.barcode()?)))
        .collect()
}

/// Number of bars, with multiplicity, containing `i`.
pub fn bar_count_containing(b: &Barcode, i: &Interval) -> usize {
    b.bars().filter(|(bar, _)| bar.contains(i)).map(|(_, m)| m).sum()
}

/// `min(x, y)` over `Option<Rational>`, `None` meaning `+∞`.
fn min_ext(x: Option<&Rational>, y: Option<&Rational>) -> Option<Rational> {
    match (x, y) {
        (Some(a), Some(b)) => Some(a.min(b).clone()),
        (Some(a), None) | (None, Some(a)) => Some(a.clone()),
        (None, None) => None,
    }
}

/// The supremum of `c ≥ 0` such that some interval `I` of length `> 4c`
/// has `m(B, I) = m(B, I^{2c}) = l` with `p ∤ l`, where `I^{2c}` is `I`
/// shrunk by `2c` at both ends. Zero when no interval qualifies.
///
/// Writing `J = (u, v]` for the shrunk interval and `S` for the bars
/// containing `J`, the condition says every bar of `S` contains `I`, so the
/// best `c` for `J` is `min(u − max_S birth, min_S death − v) / 2`. `S` is
/// constant on products of cells cut out by the endpoints; on each cell the
/// supremum is attained on its closure and is computed directly.
pub fn spread(b: &Barcode, p: u32) -> ExtRational {
    let bars: Vec<(&Interval, usize)> = b.bars().collect();
    let mut births: Vec<&Rational> = bars.iter().map(|(i, _)| &i.birth).collect();
    births.sort();
    births.dedup();
    let mut deaths: Vec<&Rational> = bars.iter().filter_map(|(i, _)| i.death.finite()).collect();
    deaths.sort();
    deaths.dedup();
    let mut best = Rational::zero();
    for (k, &lo_u) in births.iter().enumerate() {
        let hi_u = births.get(k + 1).copied();
        for l in 0..=deaths.len() {
            let lo_v = l.checked_sub(1).map(|j| deaths[j]);
            let hi_v = deaths.get(l).copied();
            if hi_v.is_some_and(|h| lo_u >= h) {
                continue;
            }
            let mut count = 0usize;
            let mut alpha: Option<&Rational> = None;
            let mut beta: Option<&Rational> = None;
            for (i, m) in &bars {
                let dies_late = match (i.death.finite(), hi_v) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(d), Some(h)) => d >= h,
                };
                if i.birth <= *lo_u && dies_late {
                    count += m;
                    alpha = alpha.max(Some(&i.birth));
                    if let Some(d) = i.death.finite() {
                        beta = Some(beta.map_or(d, |x| x.min(d)));
                    }
                }
            }
            if count == 0 || count % p as usize == 0 {
                continue;
            }
            let alpha = alpha.expect("nonempty");
            let value = match beta {
                None => match min_ext(hi_u, hi_v) {
                    None => return ExtRational::Infinite,
                    Some(u) => u - alpha,
                },
                Some(beta) => match lo_v {
                    Some(lv) if hi_u.is_some_and(|h| h <= lv) => {
                        let h = hi_u.expect("finite");
                        (h - alpha).min(beta - lv)
                    }
                    _ => {
                        let lower = lo_v.map_or(lo_u, |lv| lv.max(lo_u));
                        let upper = min_ext(hi_u, hi_v).expect("finite death bound");
                        let w = ((alpha + beta) / Rational::from_integer(2.into()))
                            .max(lower.clone())
                            .min(upper);
                        (&w - alpha).min(beta - &w)
                    }
                },
            };
            best = best.max(value);
        }
    }
    ExtRational::Finite(best / Rational::from_integer(2.into()))
}

/// `μ_{p,ζ^k}`: the spread of the `ζ^k`-eigenspace barcode.
pub fn mu_p_zeta(z: &ZpModule, k: u32) -> Result<ExtRational> {
    let zeta = CyclotomicNumber::zeta_pow(z.p, k as i64)?;
    Ok(spread(&eigenspace(z, &zeta)?.barcode()?, z.p))
}

/// `μ_p`: the largest `μ_{p,ζ}` over the nontrivial roots `ζ ≠ 1`. Use
/// [`mu_p_zeta`] with `k = 0` for the trivial eigenspace.
pub fn mu_p(z: &ZpModule) -> Result<ExtRational> {
    let mut best = ExtRational::Finite(Rational::zero());
    for k in 1..z.p {
        best = best.max(mu_p_zeta(z, k)?);
    }
    Ok(best)
}

/// `(V, S^p)` for an automorphism `S` commuting with the structure maps and
/// with `S^{p²} = id`.
pub fn power_module(s: &[Matrix<Cyc>], p: u32, base: &TabulatedModule<Cyc>) -> Result<ZpModule> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_commuting(base, s, "S")?;
    for (i, m) in s.iter().enumerate() {
        if m.inverse().is_none() {
            return Err(Error::InvalidModule(format!("S is not invertible at sample point {i}")));
        }
        if m.pow((p * p) as u64) != Matrix::identity(m.rows()) {
            return Err(Error::InvalidModule(format!("S^{} is not the identity at sample point {i}", p * p)));
        }
    }
    ZpModule::new(p, base.clone(), s.iter().map(|m| m.pow(p as u64)).collect())
}

/// Largest length of a finite bar; zero if there is none.
pub fn beta(b: &Barcode) -> Rational {
    b.bars()
        .filter_map(|(i, _)| i.death.finite().map(|d| d - &i.birth))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Barcodes indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedBarcodeFamily {
    pub degrees: BTreeMap<i64, Barcode>,
}

impl GradedBarcodeFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, degree: i64, b: Barcode) {
        self.degrees.insert(degree, b);
    }

    pub fn get(&self, degree: i64) -> Option<&Barcode> {
        self.degrees.get(&degree)
    }
}

/// `γ(r) = ½ max_{i>0} β(F[r − i])`.
pub fn gamma(f: &GradedBarcodeFamily, r: i64) -> Rational {
    f.degrees
        .range(..r)
        .map(|(_, b)| beta(b))
        .max()
        .unwrap_or_else(Rational::zero)
        / Rational::from_integer(2.into())
}

/// `max(spread(F[r], p) − γ(r), 0)`.
pub fn reduced_spread(f: &GradedBarcodeFamily, r: i64, p: u32) -> ExtRational {
    let empty = Barcode::new();
    match spread(f.get(r).unwrap_or(&empty), p) {
        ExtRational::Infinite => ExtRational::Infinite,
        ExtRational::Finite(s) => ExtRational::Finite((s - gamma(f, r)).max(Rational::zero())),
    }
}

/// Number of orbits in the synthetic egg-beater module.
pub fn eggbeater_orbits(p: u32) -> usize {
    1usize << (2 * p)
}

/// The constant `C` with `μ_p(eggbeater_synthetic(p, λ, c0)) = c0·λ/4 − C`.
pub fn eggbeater_constant() -> Rational {
    Rational::new(1.into(), 4.into())
}

fn eggbeater_bars(p: u32, lambda: &Rational, c0: &Rational, copies: usize) -> Result<Vec<Interval>> {
    if *lambda <= Rational::zero() || *c0 <= Rational::zero() {
        return Err(Error::Precondition("λ and c0 must be positive".into()));
    }
    let gap = lambda * c0;
    if gap <= Rational::one() {
        return Err(Error::Precondition("c0·λ must exceed 1".into()));
    }
    let mut bars = Vec::new();
    for j in 0..eggbeater_orbits(p) {
        let start = &gap * Rational::from_integer((j as i64).into());
        let end = &start + &gap - Rational::one();
        let bar = Interval::finite(start, end).expect("positive length");
        bars.extend(std::iter::repeat(bar).take(copies));
    }
    Ok(bars)
}

/// Cyclic shift on consecutive blocks of `size` bars.
fn block_cycle(blocks: usize, size: usize) -> Matrix<Cyc> {
    let n = blocks * size;
    let mut m = Matrix::zeros(n, n);
    for b in 0..blocks {
        for i in 0..size {
            m.set(b * size + (i + 1) % size, b * size + i, Cyc::one());
        }
    }
    m
}

/// `2^{2p}` free orbits of `p` bars each: orbit `j` consists of `p` copies of
/// `(j·g, j·g + g − 1]` with `g = c0·λ`, cyclically permuted by `T`. Orbit 0
/// has minimal action and consecutive orbits are `c0·λ` apart. Every
/// nontrivial eigenspace has one bar of length `g − 1` per orbit, so
/// `μ_p = (c0·λ − 1)/4`.
pub fn eggbeater_synthetic(p: u32, lambda: &Rational, c0: &Rational) -> Result<ZpModule> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bars = eggbeater_bars(p, lambda, c0, p as usize)?;
    ZpModule::from_bars(p, &bars, &block_cycle(eggbeater_orbits(p), p as usize))
}

/// The same orbit pattern with `p²` bars per orbit and `T = S^p` for the
/// cyclic shift `S` of order `p²`: a full `p`-th power, so `μ_p = 0`.
pub fn eggbeater_full_power(p: u32, lambda: &Rational, c0: &Rational) -> Result<ZpModule> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let size = (p * p) as usize;
    let bars = eggbeater_bars(p, lambda, c0, size)?;
    let (module, alive) = TabulatedModule::interval_sum(&bars);
    let s = restrict_to_bars(&bars, &block_cycle(eggbeater_orbits(p), size), &alive)?;
    power_module(&s, p, &module)
}

/// A full `p`-th power assembled from interval summands: `S` acts on the bar
/// indices and must only mix equal bars.
pub fn power_module_from_bars(bars: &[Interval], s: &Matrix<Cyc>, p: u32) -> Result<ZpModule> {
    let (module, alive) = TabulatedModule::interval_sum(bars);
    let per_sample = restrict_to_bars(bars, s, &alive)?;
    power_module(&per_sample, p, &module)
}
