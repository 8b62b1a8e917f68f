//! Persistence modules with operators: image and kernel persistence of
//! filtration-shifting chain maps, shift operators, and verification of
//! operator interleavings on homology.

mod genus2;

pub use genus2::{builtin_genus2, genus2_cocycle, genus2_surface, Genus2Variant};

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::barcode::Barcode;
use crate::distances::bottleneck;
use crate::error::{Error, Result};
use crate::exactnum::{ExtRational, Field, Rational};
use crate::filtered_complex::{FilteredChainMap, FilteredComplex};
use crate::linalg::Matrix;
use crate::tabulated::{induced_map, sample_points, DegreeData, HomologyFrame, TabulatedModule};

/// A filtered complex together with a self-map `A: C → C` of filtration
/// shift `c_A`.
#[derive(Clone, Debug)]
pub struct OperatorModule<F> {
    op: FilteredChainMap<F>,
}

impl<F: Field> OperatorModule<F> {
    pub fn new(op: FilteredChainMap<F>) -> Result<Self> {
        if !Arc::ptr_eq(op.source(), op.target()) && op.source() != op.target() {
            return Err(Error::Precondition("an operator must map a complex to itself".into()));
        }
        op.ensure_valid()?;
        Ok(OperatorModule { op })
    }

    pub fn complex(&self) -> &Arc<FilteredComplex<F>> {
        self.op.source()
    }

    pub fn op(&self) -> &FilteredChainMap<F> {
        &self.op
    }

    pub fn shift(&self) -> &Rational {
        self.op.shift()
    }

    pub fn degree_shift(&self) -> i64 {
        self.op.degree_shift()
    }

    /// Image persistence of the operator in the given source degree.
    pub fn image(&self, degree: i64) -> Result<TabulatedModule<F>> {
        image_module(&self.op, degree)
    }
}

/// Chain maps `f: V → W` and `g: W → V`, both of filtration shift `δ`.
#[derive(Clone, Debug)]
pub struct InterleavingData<F> {
    pub f: FilteredChainMap<F>,
    pub g: FilteredChainMap<F>,
    pub delta: Rational,
}

impl<F: Field> InterleavingData<F> {
    pub fn new(f: FilteredChainMap<F>, g: FilteredChainMap<F>, delta: Rational) -> Result<Self> {
        if f.source().as_ref() != g.target().as_ref() || f.target().as_ref() != g.source().as_ref() {
            return Err(Error::Precondition("f and g must go in opposite directions".into()));
        }
        if *f.shift() != delta || *g.shift() != delta {
            return Err(Error::Precondition("f and g must both shift filtration by δ".into()));
        }
        if f.degree_shift() != 0 || g.degree_shift() != 0 {
            return Err(Error::Precondition("interleaving maps must preserve degree".into()));
        }
        Ok(InterleavingData { f, g, delta })
    }
}

fn merged(values: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    let set: BTreeSet<Rational> = values.into_iter().collect();
    set.into_iter().collect()
}

/// `t ↦ im(H_degree(C^{t-c}) → H_{degree+r}(C'^t))`, indexed by the target
/// parameter `t`, where `c` is the shift and `r` the degree shift of `φ`.
pub fn image_module<F: Field>(phi: &FilteredChainMap<F>, degree: i64) -> Result<TabulatedModule<F>> {
    phi.ensure_valid()?;
    let c = phi.shift();
    let src = DegreeData::new(phi.source(), degree);
    let tgt = DegreeData::new(phi.target(), degree + phi.degree_shift());
    let grid = merged(
        tgt.critical_values()
            .into_iter()
            .chain(src.critical_values().into_iter().map(|v| v + c)),
    );
    let samples = sample_points(&grid);
    let m = phi.matrix(degree);
    let tgt_frames: Vec<HomologyFrame<F>> = samples.iter().map(|t| tgt.frame(t)).collect();
    let bases: Vec<Matrix<F>> = samples
        .iter()
        .zip(&tgt_frames)
        .map(|(t, tf)| induced_map(&m, &src.frame(&(t - c)), tf).column_basis())
        .collect();
    let parent = module_from_frames(grid, &tgt_frames)?;
    parent.submodule(&bases)
}

/// `t ↦ ker(H_degree(C^t) → H_{degree+r}(C'^{t+c}))`, indexed by the source
/// parameter.
pub fn kernel_module<F: Field>(phi: &FilteredChainMap<F>, degree: i64) -> Result<TabulatedModule<F>> {
    phi.ensure_valid()?;
    let c = phi.shift();
    let src = DegreeData::new(phi.source(), degree);
    let tgt = DegreeData::new(phi.target(), degree + phi.degree_shift());
    let grid = merged(
        src.critical_values()
            .into_iter()
            .chain(tgt.critical_values().into_iter().map(|v| v - c)),
    );
    let samples = sample_points(&grid);
    let m = phi.matrix(degree);
    let src_frames: Vec<HomologyFrame<F>> = samples.iter().map(|s| src.frame(s)).collect();
    let bases: Vec<Matrix<F>> = samples
        .iter()
        .zip(&src_frames)
        .map(|(s, sf)| induced_map(&m, sf, &tgt.frame(&(s + c))).kernel())
        .collect();
    let parent = module_from_frames(grid, &src_frames)?;
    parent.submodule(&bases)
}

fn module_from_frames<F: Field>(grid: Vec<Rational>, frames: &[HomologyFrame<F>]) -> Result<TabulatedModule<F>> {
    let dims = frames.iter().map(HomologyFrame::dim).collect();
    let transitions = frames
        .windows(2)
        .map(|w| w[1].transition_from(&w[0].representatives()))
        .collect();
    TabulatedModule::new(grid, dims, transitions)
}

/// The identity of `C` viewed as an operator of shift `δ`; on homology it
/// induces the structure maps `π_{t,t+δ}`.
pub fn shift_operator<F: Field>(c: Arc<FilteredComplex<F>>, delta: Rational) -> Result<OperatorModule<F>> {
    if delta.is_negative() {
        return Err(Error::NegativeShift(delta.to_string()));
    }
    let op = FilteredChainMap::identity(c.clone(), c, delta)?;
    OperatorModule::new(op)
}

/// Lazily built boundary data of one complex, per degree.
struct FrameCache<'a, F> {
    complex: &'a FilteredComplex<F>,
    data: std::collections::HashMap<i64, DegreeData<F>>,
}

impl<'a, F: Field> FrameCache<'a, F> {
    fn new(complex: &'a FilteredComplex<F>) -> Self {
        FrameCache {
            complex,
            data: Default::default(),
        }
    }

    fn frame(&mut self, degree: i64, t: &Rational) -> HomologyFrame<F> {
        let complex = self.complex;
        self.data
            .entry(degree)
            .or_insert_with(|| DegreeData::new(complex, degree))
            .frame(t)
    }

    fn critical_values(&mut self, degree: i64) -> Vec<Rational> {
        let complex = self.complex;
        self.data
            .entry(degree)
            .or_insert_with(|| DegreeData::new(complex, degree))
            .critical_values()
    }
}

/// Checks `g[δ]∘f = sh(2δ)`, `f[δ]∘g = sh(2δ)`, `f∘A = B∘f` and `g∘B = A∘g`
/// on homology in every degree, at one parameter in every piece where the
/// maps involved are constant.
pub fn check_operator_interleaving<F: Field>(
    inter: &InterleavingData<F>,
    a: &OperatorModule<F>,
    b: &OperatorModule<F>,
) -> Result<bool> {
    if a.shift() != b.shift() {
        return Err(Error::ShiftMismatch(a.shift().to_string(), b.shift().to_string()));
    }
    if a.degree_shift() != b.degree_shift() {
        return Err(Error::Precondition("operators of different degree".into()));
    }
    let v = a.complex().as_ref();
    let w = b.complex().as_ref();
    if inter.f.source().as_ref() != v || inter.f.target().as_ref() != w {
        return Err(Error::Precondition("f must map the complex of A to the complex of B".into()));
    }
    if !inter.f.validate().is_valid() || !inter.g.validate().is_valid() {
        return Ok(false);
    }
    let delta = &inter.delta;
    let c = a.shift();
    let r = a.degree_shift();
    let two_delta = delta + delta;
    let mut vc = FrameCache::new(v);
    let mut wc = FrameCache::new(w);
    let degrees: BTreeSet<i64> = v.degrees().chain(w.degrees()).collect();
    let offsets = [Rational::zero(), delta.clone(), two_delta.clone(), c.clone(), c + delta];
    for &k in &degrees {
        let mut pts = Vec::new();
        for deg in [k, k + r] {
            for cv in vc.critical_values(deg).into_iter().chain(wc.critical_values(deg)) {
                for o in &offsets {
                    pts.push(&cv - o);
                }
            }
        }
        let samples = sample_points(&merged(pts));
        let fk = inter.f.matrix(k);
        let gk = inter.g.matrix(k);
        let fkr = inter.f.matrix(k + r);
        let gkr = inter.g.matrix(k + r);
        let ak = a.op().matrix(k);
        let bk = b.op().matrix(k);
        for t in &samples {
            // g∘f = π_{t,t+2δ} on H_k(V^t), and symmetrically on W
            for (cache, first, second) in [(&mut vc, &fk, &gk), (&mut wc, &gk, &fk)] {
                let reps = cache.frame(k, t).representatives();
                let later = cache.frame(k, &(t + &two_delta));
                let round_trip = second.mul(&first.mul(&reps));
                if later.classes_of(&round_trip) != later.classes_of(&reps) {
                    return Ok(false);
                }
            }
            // f∘A = B∘f : H_k(V^t) → H_{k+r}(W^{t+c+δ})
            let reps_v = vc.frame(k, t).representatives();
            let wf = wc.frame(k + r, &(t + c + delta));
            if wf.classes_of(&fkr.mul(&ak.mul(&reps_v))) != wf.classes_of(&bk.mul(&fk.mul(&reps_v))) {
                return Ok(false);
            }
            // g∘B = A∘g : H_k(W^t) → H_{k+r}(V^{t+c+δ})
            let reps_w = wc.frame(k, t).representatives();
            let vf = vc.frame(k + r, &(t + c + delta));
            if vf.classes_of(&gkr.mul(&bk.mul(&reps_w))) != vf.classes_of(&ak.mul(&gk.mul(&reps_w))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyEstimateReport {
    pub delta: Rational,
    /// Largest bottleneck distance between image barcodes over all degrees.
    pub image_distance: ExtRational,
    pub holds: bool,
}

/// Bottleneck distance between the image barcodes of two operators in one
/// source degree.
pub fn image_distance<F: Field>(a: &OperatorModule<F>, b: &OperatorModule<F>, degree: i64) -> Result<ExtRational> {
    let ia = a.image(degree)?.barcode()?;
    let ib = b.image(degree)?.barcode()?;
    Ok(bottleneck(&ia, &ib).distance)
}

/// Verifies the interleaving and compares `d(im A, im B)` with `δ`.
pub fn key_estimate_report<F: Field>(
    inter: &InterleavingData<F>,
    a: &OperatorModule<F>,
    b: &OperatorModule<F>,
) -> Result<KeyEstimateReport> {
    if !check_operator_interleaving(inter, a, b)? {
        return Err(Error::NotAnInterleaving(format!("δ = {}", inter.delta)));
    }
    let degrees: BTreeSet<i64> = a.complex().degrees().chain(b.complex().degrees()).collect();
    let mut worst = ExtRational::Finite(Rational::zero());
    for k in degrees {
        worst = worst.max(image_distance(a, b, k)?);
    }
    let holds = worst <= ExtRational::Finite(inter.delta.clone());
    Ok(KeyEstimateReport {
        delta: inter.delta.clone(),
        image_distance: worst,
        holds,
    })
}

/// Image barcode of an operator, labelled with the target degree.
pub fn image_barcode<F: Field>(op: &FilteredChainMap<F>, degree: i64) -> Result<Barcode> {
    Ok(image_module(op, degree)?
        .barcode()?
        .with_degree(degree + op.degree_shift()))
}
