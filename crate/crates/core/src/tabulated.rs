//! Persistence modules sampled between consecutive critical values, and
//! the sublevel homology of a filtered complex in that form.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::One;

use crate::barcode::{Barcode, Interval};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};
use crate::filtered_complex::FilteredComplex;
use crate::linalg::Matrix;

/// A pointwise finite persistence module with finitely many critical values.
///
/// The module is zero before `critical_values[0]` and constant on each
/// `(t_i, t_{i+1}]` and on `(t_n, ∞)`. `dims[i]` is its dimension at
/// the sample point `s_i` of that piece, and `transitions[i]` is the structure
/// map `V^{s_i} → V^{s_{i+1}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedModule<F> {
    pub critical_values: Vec<Rational>,
    pub dims: Vec<usize>,
    pub transitions: Vec<Matrix<F>>,
}

/// Midpoints between consecutive values, and `t_n + 1` after the last.
pub fn sample_points(critical_values: &[Rational]) -> Vec<Rational> {
    let n = critical_values.len();
    (0..n)
        .map(|i| {
            if i + 1 < n {
                (&critical_values[i] + &critical_values[i + 1]) / Rational::from_integer(2.into())
            } else {
                &critical_values[i] + Rational::one()
            }
        })
        .collect()
}

fn merged_grid(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut g: Vec<Rational> = a.iter().chain(b).cloned().collect();
    g.sort();
    g.dedup();
    g
}

impl<F: Field> TabulatedModule<F> {
    pub fn new(critical_values: Vec<Rational>, dims: Vec<usize>, transitions: Vec<Matrix<F>>) -> Result<Self> {
        let m = TabulatedModule {
            critical_values,
            dims,
            transitions,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn zero() -> Self {
        TabulatedModule {
            critical_values: Vec::new(),
            dims: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.critical_values.len();
        if self.critical_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModule("critical values must be strictly increasing".into()));
        }
        if self.dims.len() != n {
            return Err(Error::InvalidModule(format!(
                "{} critical values but {} dimensions",
                n,
                self.dims.len()
            )));
        }
        if self.transitions.len() != n.saturating_sub(1) {
            return Err(Error::InvalidModule(format!(
                "expected {} transition matrices, found {}",
                n.saturating_sub(1),
                self.transitions.len()
            )));
        }
        for (i, m) in self.transitions.iter().enumerate() {
            if m.rows() != self.dims[i + 1] || m.cols() != self.dims[i] {
                return Err(Error::InvalidModule(format!(
                    "transition {i} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.dims[i + 1],
                    self.dims[i]
                )));
            }
        }
        Ok(())
    }

    pub fn sample_points(&self) -> Vec<Rational> {
        sample_points(&self.critical_values)
    }

    /// Index of the piece containing `t`, or `None` before the first
    /// critical value.
    pub fn piece_of(&self, t: &Rational) -> Option<usize> {
        let k = self.critical_values.partition_point(|c| c < t);
        k.checked_sub(1)
    }

    pub fn dimension_at(&self, t: &Rational) -> usize {
        self.piece_of(t).map_or(0, |i| self.dims[i])
    }

    /// Structure map from piece `i` to piece `j >= i`.
    pub fn structure_map(&self, i: usize, j: usize) -> Matrix<F> {
        assert!(i <= j);
        let mut m = Matrix::identity(self.dims[i]);
        for k in i..j {
            m = self.transitions[k].mul(&m);
        }
        m
    }

    /// The same module tabulated on a finer grid containing the current
    /// critical values.
    pub fn refine(&self, grid: &[Rational]) -> Result<Self> {
        let grid = merged_grid(grid, &[]);
        if !self.critical_values.iter().all(|c| grid.binary_search(c).is_ok()) {
            return Err(Error::Precondition("refinement grid must contain the critical values".into()));
        }
        let piece: Vec<Option<usize>> = grid.iter().map(|g| self.piece_of_closed(g)).collect();
        let dims: Vec<usize> = piece.iter().map(|p| p.map_or(0, |i| self.dims[i])).collect();
        let transitions = (0..grid.len().saturating_sub(1))
            .map(|k| match (piece[k], piece[k + 1]) {
                (Some(a), Some(b)) => self.structure_map(a, b),
                _ => Matrix::zeros(dims[k + 1], dims[k]),
            })
            .collect();
        Ok(TabulatedModule {
            critical_values: grid,
            dims,
            transitions,
        })
    }

    // piece whose left endpoint is <= t
    fn piece_of_closed(&self, t: &Rational) -> Option<usize> {
        self.critical_values.partition_point(|c| c <= t).checked_sub(1)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let grid = merged_grid(&self.critical_values, &other.critical_values);
        let a = self.refine(&grid)?;
        let b = other.refine(&grid)?;
        let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let transitions = a
            .transitions
            .iter()
            .zip(&b.transitions)
            .map(|(x, y)| block_diag(x, y))
            .collect();
        Ok(TabulatedModule {
            critical_values: grid,
            dims,
            transitions,
        })
    }

    /// The interval-decomposable module with the given barcode, in the basis
    /// of bars (canonical order, multiplicities expanded).
    pub fn from_barcode(b: &Barcode) -> Self {
        Self::interval_sum(&b.expanded()).0
    }

    /// The direct sum of interval modules in the given order. Also returns,
    /// for every sample point, the indices of the bars alive there; they are
    /// the basis of the module at that point, in that order.
    pub fn interval_sum(bars: &[Interval]) -> (Self, Vec<Vec<usize>>) {
        let mut grid: Vec<Rational> = bars
            .iter()
            .flat_map(|i| std::iter::once(i.birth.clone()).chain(i.death.finite().cloned()))
            .collect();
        grid.sort();
        grid.dedup();
        let samples = sample_points(&grid);
        let alive: Vec<Vec<usize>> = samples
            .iter()
            .map(|s| (0..bars.len()).filter(|&k| bars[k].contains_point(s)).collect())
            .collect();
        let dims = alive.iter().map(Vec::len).collect();
        let transitions = (0..grid.len().saturating_sub(1))
            .map(|i| {
                let mut m = Matrix::zeros(alive[i + 1].len(), alive[i].len());
                for (c, bar) in alive[i].iter().enumerate() {
                    if let Some(r) = alive[i + 1].iter().position(|x| x == bar) {
                        m.set(r, c, F::one());
                    }
                }
                m
            })
            .collect();
        let module = TabulatedModule {
            critical_values: grid,
            dims,
            transitions,
        };
        (module, alive)
    }

    /// Restriction to subspaces `W_i ⊆ V^{s_i}` spanned by the independent
    /// columns of `bases[i]`; each `W_i` must map into `W_{i+1}`.
    pub fn submodule(&self, bases: &[Matrix<F>]) -> Result<Self> {
        if bases.len() != self.dims.len() {
            return Err(Error::InvalidModule("one subspace basis per piece required".into()));
        }
        let inverses: Vec<Matrix<F>> = bases
            .iter()
            .map(|b| {
                b.left_inverse()
                    .ok_or_else(|| Error::InvalidModule("subspace basis is not independent".into()))
            })
            .collect::<Result<_>>()?;
        let mut transitions = Vec::new();
        for i in 0..self.transitions.len() {
            let image = self.transitions[i].mul(&bases[i]);
            let coords = inverses[i + 1].mul(&image);
            if bases[i + 1].mul(&coords) != image {
                return Err(Error::InvalidModule(format!("subspace {i} is not mapped into subspace {}", i + 1)));
            }
            transitions.push(coords);
        }
        Ok(TabulatedModule {
            critical_values: self.critical_values.clone(),
            dims: bases.iter().map(Matrix::cols).collect(),
            transitions,
        })
    }

    /// Barcode by rank inclusion–exclusion over the sample points.
    pub fn barcode(&self) -> Result<Barcode> {
        self.validate()?;
        let n = self.dims.len();
        // r[i][j] = rank of V^{s_i} → V^{s_j}
        let mut r = vec![vec![0usize; n]; n];
        for i in 0..n {
            let mut m = Matrix::identity(self.dims[i]);
            r[i][i] = self.dims[i];
            for j in i + 1..n {
                m = self.transitions[j - 1].mul(&m);
                r[i][j] = m.rank();
                if r[i][j] == 0 {
                    break;
                }
            }
        }
        let rank = |i: Option<usize>, j: usize| -> i64 { i.map_or(0, |i| r[i][j] as i64) };
        let mut b = Barcode::new();
        for i in 0..n {
            let prev = i.checked_sub(1);
            for j in i + 1..n {
                let m = rank(Some(i), j - 1) - rank(Some(i), j) - rank(prev, j - 1) + rank(prev, j);
                debug_assert!(m >= 0);
                if m > 0 {
                    let iv = Interval::finite(self.critical_values[i].clone(), self.critical_values[j].clone())
                        .expect("increasing critical values");
                    b.insert(iv, m as usize);
                }
            }
            let m = rank(Some(i), n - 1) - rank(prev, n - 1);
            if m > 0 {
                b.insert(Interval::infinite(self.critical_values[i].clone()), m as usize);
            }
        }
        Ok(b)
    }
}

/// Barcode of a tabulated module.
pub fn barcode_from_tabulated<F: Field>(t: &TabulatedModule<F>) -> Result<Barcode> {
    t.barcode()
}

pub(crate) fn block_diag<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    m
}

type SparseVec<F> = BTreeMap<usize, F>;

fn axpy<F: Field>(y: &mut SparseVec<F>, a: &F, x: &SparseVec<F>) {
    for (k, v) in x {
        let e = y.entry(*k).or_insert_with(F::zero);
        *e = e.minus(&a.times(v));
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Reduces the columns in order; returns the reduced columns and the
/// accumulated column operations `R = D·V`, both keyed by position.
fn reduce<F: Field>(cols: Vec<SparseVec<F>>, track: bool) -> (Vec<SparseVec<F>>, Vec<SparseVec<F>>) {
    let mut reduced: Vec<SparseVec<F>> = Vec::with_capacity(cols.len());
    let mut ops: Vec<SparseVec<F>> = Vec::new();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (j, mut col) in cols.into_iter().enumerate() {
        let mut v: SparseVec<F> = BTreeMap::new();
        if track {
            v.insert(j, F::one());
        }
        while let Some((&low, val)) = col.iter().next_back() {
            let Some(&i) = owner.get(&low) else { break };
            let factor = val.times(&reduced[i][&low].inverse().expect("nonzero pivot"));
            axpy(&mut col, &factor, &reduced[i].clone());
            if track {
                axpy(&mut v, &factor, &ops[i].clone());
            }
        }
        if let Some((&low, _)) = col.iter().next_back() {
            owner.insert(low, j);
        }
        reduced.push(col);
        if track {
            ops.push(v);
        }
    }
    (reduced, ops)
}

/// Boundary data of one degree of a complex, reduced once so that homology
/// frames at any parameter are cheap to extract.
pub(crate) struct DegreeData<F> {
    inner: Arc<DegreeInner<F>>,
}

struct DegreeInner<F> {
    /// Filtration of degree-`k` generators, by position.
    nu_k: Vec<Rational>,
    nu_k1: Vec<Rational>,
    /// Local index of the generator at each position.
    local_of: Vec<usize>,
    /// For every positive position `j`: the cycle `V_j` with lowest term at `j`.
    cycles: BTreeMap<usize, SparseVec<F>>,
    /// `j ↦ (position of the killing generator, boundary with lowest term j)`.
    killers: BTreeMap<usize, (usize, SparseVec<F>)>,
}

impl<F: Field> DegreeData<F> {
    pub(crate) fn new(c: &FilteredComplex<F>, degree: i64) -> Self {
        let order = |d: i64| -> Vec<usize> {
            let mut idx: Vec<usize> = c.degree_indices(d).to_vec();
            idx.sort_by(|&a, &b| c.generator(a).filtration.cmp(&c.generator(b).filtration));
            idx
        };
        let positions = |ord: &[usize]| -> HashMap<usize, usize> {
            ord.iter().enumerate().map(|(p, &g)| (g, p)).collect()
        };
        let (ord_km1, ord_k, ord_k1) = (order(degree - 1), order(degree), order(degree + 1));
        let (pos_km1, pos_k) = (positions(&ord_km1), positions(&ord_k));
        let columns = |ord: &[usize], rows: &HashMap<usize, usize>| -> Vec<SparseVec<F>> {
            ord.iter()
                .map(|&g| {
                    c.boundary_of(g)
                        .iter()
                        .filter_map(|(t, v)| rows.get(t).map(|&p| (p, v.clone())))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect()
        };
        let (rk, vk) = reduce(columns(&ord_k, &pos_km1), true);
        let cycles = rk
            .iter()
            .zip(vk)
            .enumerate()
            .filter(|(_, (r, _))| r.is_empty())
            .map(|(j, (_, v))| (j, v))
            .collect();
        let (rk1, _) = reduce(columns(&ord_k1, &pos_k), false);
        let killers = rk1
            .into_iter()
            .enumerate()
            .filter_map(|(i, r)| r.iter().next_back().map(|(&low, _)| low).map(|low| (low, (i, r))))
            .collect();
        let nu = |ord: &[usize]| -> Vec<Rational> { ord.iter().map(|&g| c.generator(g).filtration.clone()).collect() };
        DegreeData {
            inner: Arc::new(DegreeInner {
                nu_k: nu(&ord_k),
                nu_k1: nu(&ord_k1),
                local_of: ord_k.iter().map(|&g| c.local_index(g)).collect(),
                cycles,
                killers,
            }),
        }
    }

    /// Filtration values at which `H_degree` can change.
    pub(crate) fn critical_values(&self) -> Vec<Rational> {
        merged_grid(&self.inner.nu_k, &self.inner.nu_k1)
    }

    /// A basis of the cycles of `C^s` in this degree, split into boundaries
    /// and homology representatives.
    pub(crate) fn frame(&self, s: &Rational) -> HomologyFrame<F> {
        let inner = &self.inner;
        let mut classes = BTreeMap::new();
        let mut reps = Vec::new();
        for &j in inner.cycles.keys() {
            if inner.nu_k[j] >= *s {
                continue;
            }
            match inner.killers.get(&j) {
                Some((i, _)) if inner.nu_k1[*i] < *s => {}
                _ => {
                    classes.insert(j, reps.len());
                    reps.push(j);
                }
            }
        }
        HomologyFrame {
            data: self.inner.clone(),
            s: s.clone(),
            classes,
            reps,
        }
    }
}

/// A basis `[B | H]` of the cycle space at one parameter value, where `B`
/// spans the boundaries and `H` represents a homology basis. Basis vectors
/// have distinct lowest positions, so coordinates come from elimination.
pub(crate) struct HomologyFrame<F> {
    data: Arc<DegreeInner<F>>,
    s: Rational,
    /// Lowest position of each homology representative ↦ class index.
    classes: BTreeMap<usize, usize>,
    reps: Vec<usize>,
}

impl<F: Field> HomologyFrame<F> {
    pub(crate) fn dim(&self) -> usize {
        self.reps.len()
    }

    pub(crate) fn representatives(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.data.local_of.len(), self.reps.len());
        for (c, j) in self.reps.iter().enumerate() {
            for (p, v) in &self.data.cycles[j] {
                m.set(self.data.local_of[*p], c, v.clone());
            }
        }
        m
    }

    /// The element of `[B | H]` with lowest position `j`.
    fn pivot_vector(&self, j: usize) -> Option<(&SparseVec<F>, Option<usize>)> {
        if let Some(&c) = self.classes.get(&j) {
            return Some((&self.data.cycles[&j], Some(c)));
        }
        match self.data.killers.get(&j) {
            Some((i, r)) if self.data.nu_k1[*i] < self.s => Some((r, None)),
            _ => None,
        }
    }

    /// Homology coordinates of cycles given as columns.
    ///
    /// Panics if a column is not a cycle of `C^s`.
    pub(crate) fn classes_of(&self, cycles: &Matrix<F>) -> Matrix<F> {
        let n = self.data.local_of.len();
        assert_eq!(cycles.rows(), n, "cycle vectors have the wrong length");
        let mut out = Matrix::zeros(self.reps.len(), cycles.cols());
        for c in 0..cycles.cols() {
            let mut z: SparseVec<F> = (0..n)
                .filter(|&p| !cycles.get(self.data.local_of[p], c).is_zero())
                .map(|p| (p, cycles.get(self.data.local_of[p], c).clone()))
                .collect();
            while let Some((&low, val)) = z.iter().next_back() {
                let (v, class) = self.pivot_vector(low).expect("column is not a cycle of the sublevel complex");
                let factor = val.times(&v[&low].inverse().expect("nonzero pivot"));
                if let Some(k) = class {
                    out.set(k, c, factor.clone());
                }
                axpy(&mut z, &factor, v);
            }
        }
        out
    }

    /// Homology coordinates of the classes represented by `reps`.
    pub(crate) fn transition_from(&self, reps: &Matrix<F>) -> Matrix<F> {
        self.classes_of(reps)
    }
}

/// The sublevel persistent homology `t ↦ H_degree(C^t)`.
pub fn tabulate<F: Field>(c: &FilteredComplex<F>, degree: i64) -> Result<TabulatedModule<F>> {
    c.ensure_valid()?;
    let data = DegreeData::new(c, degree);
    let grid = data.critical_values();
    tabulate_on_grid(&data, grid)
}

pub(crate) fn tabulate_on_grid<F: Field>(data: &DegreeData<F>, grid: Vec<Rational>) -> Result<TabulatedModule<F>> {
    let frames: Vec<HomologyFrame<F>> = sample_points(&grid).iter().map(|s| data.frame(s)).collect();
    let dims = frames.iter().map(HomologyFrame::dim).collect();
    let transitions = frames
        .windows(2)
        .map(|w| w[1].transition_from(&w[0].representatives()))
        .collect();
    TabulatedModule::new(grid, dims, transitions)
}

/// Matrix of `H(φ)` from the source frame to the target frame.
pub(crate) fn induced_map<F: Field>(
    phi_matrix: &Matrix<F>,
    source: &HomologyFrame<F>,
    target: &HomologyFrame<F>,
) -> Matrix<F> {
    target.classes_of(&phi_matrix.mul(&source.representatives()))
}

/// Dimension of `H_degree(C^t)` by rank–nullity on `C^t`.
pub fn homology_dimension_at<F: Field>(c: &FilteredComplex<F>, degree: i64, t: &Rational) -> usize {
    let pick = |d: i64| -> Vec<usize> {
        c.degree_indices(d)
            .iter()
            .enumerate()
            .filter(|(_, &g)| c.generator(g).filtration < *t)
            .map(|(i, _)| i)
            .collect()
    };
    let ck = pick(degree);
    let ck1 = pick(degree + 1);
    let rank_k = c.boundary_matrix(degree).select_columns(&ck).rank();
    let rank_k1 = c.boundary_matrix(degree + 1).select_columns(&ck1).rank();
    ck.len() - rank_k - rank_k1
}
