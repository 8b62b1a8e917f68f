//! Filtered chain complexes with an explicit basis, filtration-shifting
//! chain maps between them, tensor products of complexes, and the
//! lower-star complex of a simplicial complex with vertex heights.
//!
//! Sublevel sets are open: a generator with filtration `a` belongs to
//! `C^t` exactly when `a < t`. Bars are therefore half-open `(a, b]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};
use crate::linalg::Matrix;

/// The ground field a complex is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rational,
    Cyclotomic(u32),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => f.write_str("Q"),
            FieldTag::Cyclotomic(p) => write!(f, "Q(ζ_{p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub degree: i64,
    pub filtration: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateId(String),
    /// `target` appears in `∂generator` but has the wrong degree.
    BoundaryDegree { generator: String, target: String },
    /// `target` appears in `∂generator` with a larger filtration value.
    BoundaryFiltration { generator: String, target: String },
    /// `∂∂generator ≠ 0`.
    BoundarySquare { generator: String },
    NegativeShift,
    /// Chain-map equation fails on this generator.
    ChainMapEquation { generator: String },
    MapDegree { generator: String, target: String },
    /// `ν'(φx) > ν(x) + shift`.
    MapFiltration { generator: String, target: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId(id) => write!(f, "duplicate generator id {id:?}"),
            Violation::BoundaryDegree { generator, target } => {
                write!(f, "∂{generator} contains {target} of the wrong degree")
            }
            Violation::BoundaryFiltration { generator, target } => {
                write!(f, "∂{generator} contains {target} of larger filtration")
            }
            Violation::BoundarySquare { generator } => write!(f, "∂∂{generator} ≠ 0"),
            Violation::NegativeShift => write!(f, "negative filtration shift"),
            Violation::ChainMapEquation { generator } => {
                write!(f, "chain-map equation fails on {generator}")
            }
            Violation::MapDegree { generator, target } => {
                write!(f, "image of {generator} contains {target} of the wrong degree")
            }
            Violation::MapFiltration { generator, target } => {
                write!(f, "image of {generator} contains {target} above the allowed filtration")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// A finite chain complex of based vector spaces with a filtration value on
/// every basis element.
#[derive(Clone, PartialEq)]
pub struct FilteredComplex<F> {
    field: FieldTag,
    generators: Vec<Generator>,
    boundary: Vec<Vec<(usize, F)>>,
    index: HashMap<String, usize>,
    by_degree: BTreeMap<i64, Vec<usize>>,
    local: Vec<usize>,
    duplicates: Vec<String>,
}

impl<F: Field> FilteredComplex<F> {
    pub fn new(field: FieldTag) -> Self {
        FilteredComplex {
            field,
            generators: Vec::new(),
            boundary: Vec::new(),
            index: HashMap::new(),
            by_degree: BTreeMap::new(),
            local: Vec::new(),
            duplicates: Vec::new(),
        }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// Appends a generator with zero boundary and returns its index.
    /// A repeated id is kept (and reported by [`validate`](Self::validate))
    /// but lookups resolve to the first occurrence.
    pub fn add_generator(&mut self, id: impl Into<String>, degree: i64, filtration: Rational) -> usize {
        let id = id.into();
        let idx = self.generators.len();
        if self.index.contains_key(&id) {
            self.duplicates.push(id.clone());
        } else {
            self.index.insert(id.clone(), idx);
        }
        let list = self.by_degree.entry(degree).or_default();
        self.local.push(list.len());
        list.push(idx);
        self.generators.push(Generator {
            id,
            degree,
            filtration,
        });
        self.boundary.push(Vec::new());
        idx
    }

    /// Replaces `∂id` by `Σ coeff · target`.
    pub fn set_boundary<S: AsRef<str>>(&mut self, id: &str, terms: Vec<(F, S)>) -> Result<()> {
        let src = self.lookup(id)?;
        let mut col = Vec::new();
        for (c, t) in terms {
            let t = self.lookup(t.as_ref())?;
            col.push((t, c));
        }
        self.boundary[src] = normalize_column(col);
        Ok(())
    }

    pub fn set_boundary_indices(&mut self, src: usize, terms: Vec<(usize, F)>) {
        self.boundary[src] = normalize_column(terms);
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown generator id {id:?}")))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        &self.generators[idx]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn boundary_of(&self, idx: usize) -> &[(usize, F)] {
        &self.boundary[idx]
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    /// Generator indices of the given degree, in insertion order.
    pub fn degree_indices(&self, degree: i64) -> &[usize] {
        self.by_degree.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// Position of a generator inside its own degree.
    pub fn local_index(&self, idx: usize) -> usize {
        self.local[idx]
    }

    /// `∂_degree` as a matrix from degree-`degree` coordinates to
    /// degree-`(degree - 1)` coordinates.
    pub fn boundary_matrix(&self, degree: i64) -> Matrix<F> {
        let cols = self.degree_indices(degree);
        let rows = self.degree_indices(degree - 1).len();
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, &g) in cols.iter().enumerate() {
            for (t, c) in &self.boundary[g] {
                if self.generators[*t].degree == degree - 1 {
                    m.set(self.local[*t], j, c.clone());
                }
            }
        }
        m
    }

    /// Sorted distinct filtration values.
    pub fn filtration_values(&self) -> Vec<Rational> {
        let set: BTreeSet<Rational> = self.generators.iter().map(|g| g.filtration.clone()).collect();
        set.into_iter().collect()
    }

    /// Checks the complex axioms and lists every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations: Vec<Violation> = self
            .duplicates
            .iter()
            .map(|id| Violation::DuplicateId(id.clone()))
            .collect();
        for (g, col) in self.boundary.iter().enumerate() {
            let gen = &self.generators[g];
            for (t, _) in col {
                let tgt = &self.generators[*t];
                if tgt.degree != gen.degree - 1 {
                    violations.push(Violation::BoundaryDegree {
                        generator: gen.id.clone(),
                        target: tgt.id.clone(),
                    });
                }
                if tgt.filtration > gen.filtration {
                    violations.push(Violation::BoundaryFiltration {
                        generator: gen.id.clone(),
                        target: tgt.id.clone(),
                    });
                }
            }
            let mut dd: BTreeMap<usize, F> = BTreeMap::new();
            for (t, c) in col {
                for (u, c2) in &self.boundary[*t] {
                    let e = dd.entry(*u).or_insert_with(F::zero);
                    *e = e.plus(&c.times(c2));
                }
            }
            if dd.values().any(|v| !v.is_zero()) {
                violations.push(Violation::BoundarySquare {
                    generator: gen.id.clone(),
                });
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidComplex(report))
        }
    }

    /// Disjoint union; generator ids are prefixed with `"L."` and `"R."`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let mut out = Self::new(self.field);
        for g in &self.generators {
            out.add_generator(format!("L.{}", g.id), g.degree, g.filtration.clone());
        }
        for g in &other.generators {
            out.add_generator(format!("R.{}", g.id), g.degree, g.filtration.clone());
        }
        let n = self.len();
        for (i, col) in self.boundary.iter().enumerate() {
            out.set_boundary_indices(i, col.clone());
        }
        for (i, col) in other.boundary.iter().enumerate() {
            out.set_boundary_indices(n + i, col.iter().map(|(t, c)| (t + n, c.clone())).collect());
        }
        Ok(out)
    }

    /// Same complex with filtration values replaced generator by generator.
    pub fn with_filtrations(&self, values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), self.len());
        let mut out = self.clone();
        for (g, v) in out.generators.iter_mut().zip(values) {
            g.filtration = v;
        }
        out
    }
}

impl<F: fmt::Debug> fmt::Debug for FilteredComplex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FilteredComplex over {} {{", self.field)?;
        for (g, col) in self.generators.iter().zip(&self.boundary) {
            let terms: Vec<String> = col
                .iter()
                .map(|(t, c)| format!("{c:?}·{}", self.generators[*t].id))
                .collect();
            writeln!(
                f,
                "  {} (deg {}, ν={}) ∂ = {}",
                g.id,
                g.degree,
                g.filtration,
                if terms.is_empty() { "0".into() } else { terms.join(" + ") }
            )?;
        }
        write!(f, "}}")
    }
}

fn normalize_column<F: Field>(terms: Vec<(usize, F)>) -> Vec<(usize, F)> {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (t, c) in terms {
        let e = acc.entry(t).or_insert_with(F::zero);
        *e = e.plus(&c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Tensor product complex: generators `x⊗y`, degrees and filtrations add,
/// `∂(x⊗y) = ∂x⊗y + (-1)^{deg x} x⊗∂y`.
pub fn product_complex<F: Field>(c1: &FilteredComplex<F>, c2: &FilteredComplex<F>) -> Result<FilteredComplex<F>> {
    if c1.field != c2.field {
        return Err(Error::FieldMismatch(format!("{} vs {}", c1.field, c2.field)));
    }
    let n2 = c2.len();
    let mut out = FilteredComplex::new(c1.field);
    for x in &c1.generators {
        for y in &c2.generators {
            out.add_generator(
                format!("{}⊗{}", x.id, y.id),
                x.degree + y.degree,
                &x.filtration + &y.filtration,
            );
        }
    }
    for (i, x) in c1.generators.iter().enumerate() {
        let sign = if x.degree.rem_euclid(2) == 0 { F::one() } else { F::one().negated() };
        for j in 0..n2 {
            let mut col = Vec::new();
            for (t, c) in &c1.boundary[i] {
                col.push((t * n2 + j, c.clone()));
            }
            for (t, c) in &c2.boundary[j] {
                col.push((i * n2 + t, sign.times(c)));
            }
            out.set_boundary_indices(i * n2 + j, col);
        }
    }
    Ok(out)
}

/// A chain map `φ: C → C'` of degree `degree_shift` satisfying
/// `ν'(φx) ≤ ν(x) + shift` and `∂'φ = (-1)^{degree_shift} φ∂`.
#[derive(Clone)]
pub struct FilteredChainMap<F> {
    source: Arc<FilteredComplex<F>>,
    target: Arc<FilteredComplex<F>>,
    shift: Rational,
    degree_shift: i64,
    entries: Vec<Vec<(usize, F)>>,
}

impl<F: Field> FilteredChainMap<F> {
    /// The zero map. Fails if the complexes live over different fields.
    pub fn zero(
        source: Arc<FilteredComplex<F>>,
        target: Arc<FilteredComplex<F>>,
        shift: Rational,
        degree_shift: i64,
    ) -> Result<Self> {
        if source.field != target.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", source.field, target.field)));
        }
        let n = source.len();
        Ok(FilteredChainMap {
            source,
            target,
            shift,
            degree_shift,
            entries: vec![Vec::new(); n],
        })
    }

    /// Identity on generators, read as a map `C → C'` between complexes with
    /// the same generator ids (for example a complex and a re-filtered copy).
    pub fn identity(
        source: Arc<FilteredComplex<F>>,
        target: Arc<FilteredComplex<F>>,
        shift: Rational,
    ) -> Result<Self> {
        let mut map = Self::zero(source.clone(), target.clone(), shift, 0)?;
        for (i, g) in source.generators.iter().enumerate() {
            let t = target.lookup(&g.id)?;
            map.entries[i] = vec![(t, F::one())];
        }
        Ok(map)
    }

    pub fn set_image<S: AsRef<str>>(&mut self, src: &str, terms: Vec<(F, S)>) -> Result<()> {
        let s = self.source.lookup(src)?;
        let mut col = Vec::new();
        for (c, t) in terms {
            col.push((self.target.lookup(t.as_ref())?, c));
        }
        self.entries[s] = normalize_column(col);
        Ok(())
    }

    pub fn set_image_indices(&mut self, src: usize, terms: Vec<(usize, F)>) {
        self.entries[src] = normalize_column(terms);
    }

    pub fn source(&self) -> &Arc<FilteredComplex<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FilteredComplex<F>> {
        &self.target
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn degree_shift(&self) -> i64 {
        self.degree_shift
    }

    pub fn image_of(&self, src: usize) -> &[(usize, F)] {
        &self.entries[src]
    }

    /// The degree-`degree` component as a matrix from source degree-`degree`
    /// coordinates to target degree-`(degree + degree_shift)` coordinates.
    pub fn matrix(&self, degree: i64) -> Matrix<F> {
        let cols = self.source.degree_indices(degree);
        let td = degree + self.degree_shift;
        let rows = self.target.degree_indices(td).len();
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, &g) in cols.iter().enumerate() {
            for (t, c) in &self.entries[g] {
                if self.target.generators[*t].degree == td {
                    m.set(self.target.local[*t], j, c.clone());
                }
            }
        }
        m
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &FilteredChainMap<F>) -> Result<FilteredChainMap<F>> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(Error::Precondition("composition of non-composable chain maps".into()));
        }
        let mut out = Self::zero(
            first.source.clone(),
            self.target.clone(),
            &first.shift + &self.shift,
            first.degree_shift + self.degree_shift,
        )?;
        for (i, col) in first.entries.iter().enumerate() {
            let mut acc = Vec::new();
            for (mid, c) in col {
                for (t, c2) in &self.entries[*mid] {
                    acc.push((*t, c.times(c2)));
                }
            }
            out.entries[i] = normalize_column(acc);
        }
        Ok(out)
    }

    /// Checks degree, filtration bound and the signed chain-map equation.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.shift.is_negative() {
            violations.push(Violation::NegativeShift);
        }
        let sign = if self.degree_shift.rem_euclid(2) == 0 { F::one() } else { F::one().negated() };
        for (i, col) in self.entries.iter().enumerate() {
            let g = &self.source.generators[i];
            let bound = &g.filtration + &self.shift;
            for (t, _) in col {
                let tg = &self.target.generators[*t];
                if tg.degree != g.degree + self.degree_shift {
                    violations.push(Violation::MapDegree {
                        generator: g.id.clone(),
                        target: tg.id.clone(),
                    });
                }
                if tg.filtration > bound {
                    violations.push(Violation::MapFiltration {
                        generator: g.id.clone(),
                        target: tg.id.clone(),
                    });
                }
            }
            // ∂'φ(x) - sign · φ∂(x)
            let mut diff: BTreeMap<usize, F> = BTreeMap::new();
            for (t, c) in col {
                for (u, c2) in self.target.boundary_of(*t) {
                    let e = diff.entry(*u).or_insert_with(F::zero);
                    *e = e.plus(&c.times(c2));
                }
            }
            for (s, c) in self.source.boundary_of(i) {
                for (u, c2) in &self.entries[*s] {
                    let e = diff.entry(*u).or_insert_with(F::zero);
                    *e = e.minus(&sign.times(&c.times(c2)));
                }
            }
            if diff.values().any(|v| !v.is_zero()) {
                violations.push(Violation::ChainMapEquation { generator: g.id.clone() });
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidChainMap(report))
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for FilteredChainMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FilteredChainMap")
            .field("shift", &self.shift)
            .field("degree_shift", &self.degree_shift)
            .field("entries", &self.entries)
            .finish()
    }
}

/// A finite simplicial complex with a height on every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    vertex_ids: Vec<String>,
    heights: Vec<Rational>,
    // sorted vertex-index tuples, every face present, grouped by dimension
    simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the complex from vertices and a list of simplices given by
    /// vertex ids. Every face of a listed simplex is added.
    pub fn from_simplices<S: AsRef<str>>(
        vertices: Vec<(String, Rational)>,
        simplices: &[Vec<S>],
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut index = HashMap::new();
        for (i, (id, _)) in vertices.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex id {id:?}")));
            }
        }
        let mut set: BTreeSet<Vec<usize>> = (0..vertices.len()).map(|i| vec![i]).collect();
        for s in simplices {
            let mut vs = Vec::new();
            for v in s {
                let i = index
                    .get(v.as_ref())
                    .ok_or_else(|| Error::Parse(format!("unknown vertex {:?}", v.as_ref())))?;
                vs.push(*i);
            }
            vs.sort_unstable();
            vs.dedup();
            if vs.len() != s.len() {
                return Err(Error::Parse("simplex with repeated vertex".into()));
            }
            add_faces(&vs, &mut set);
        }
        Ok(Self::assemble(vertices, set))
    }

    /// Builds the complex from vertex-index tuples.
    pub fn from_index_simplices(vertices: Vec<(String, Rational)>, simplices: &[Vec<usize>]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut set: BTreeSet<Vec<usize>> = (0..vertices.len()).map(|i| vec![i]).collect();
        for s in simplices {
            let mut vs = s.clone();
            vs.sort_unstable();
            vs.dedup();
            if vs.iter().any(|&v| v >= vertices.len()) || vs.len() != s.len() {
                return Err(Error::Parse(format!("bad simplex {s:?}")));
            }
            add_faces(&vs, &mut set);
        }
        Ok(Self::assemble(vertices, set))
    }

    fn assemble(vertices: Vec<(String, Rational)>, set: BTreeSet<Vec<usize>>) -> Self {
        let mut simplices: Vec<Vec<usize>> = set.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let (vertex_ids, heights) = vertices.into_iter().unzip();
        SimplicialComplex {
            vertex_ids,
            heights,
            simplices,
        }
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn with_heights(&self, heights: Vec<Rational>) -> Self {
        assert_eq!(heights.len(), self.heights.len());
        SimplicialComplex {
            heights,
            ..self.clone()
        }
    }

    pub fn simplex_id(&self, s: &[usize]) -> String {
        s.iter()
            .map(|&v| self.vertex_ids[v].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn dimension(&self) -> usize {
        self.simplices.last().map_or(0, |s| s.len() - 1)
    }
}

fn add_faces(s: &[usize], set: &mut BTreeSet<Vec<usize>>) {
    // a simplex already in the set was inserted together with its faces
    if s.len() < 2 || !set.insert(s.to_vec()) {
        return;
    }
    for i in 0..s.len() {
        let mut face = s.to_vec();
        face.remove(i);
        add_faces(&face, set);
    }
}

/// Simplicial chain complex filtered by `ν(σ) = max` vertex height of `σ`.
///
/// Generators are ordered by dimension, then lexicographically by vertex
/// index; the id of a simplex is its vertex ids joined by commas.
pub fn lower_star_complex<F: Field>(s: &SimplicialComplex, field: FieldTag) -> Result<FilteredComplex<F>> {
    if s.simplices.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let mut out = FilteredComplex::new(field);
    let mut index = HashMap::new();
    for simplex in &s.simplices {
        let height = simplex
            .iter()
            .map(|&v| &s.heights[v])
            .max()
            .expect("nonempty simplex")
            .clone();
        let idx = out.add_generator(s.simplex_id(simplex), simplex.len() as i64 - 1, height);
        index.insert(simplex.clone(), idx);
    }
    for simplex in &s.simplices {
        if simplex.len() < 2 {
            continue;
        }
        let mut col = Vec::new();
        for i in 0..simplex.len() {
            let mut face = simplex.clone();
            face.remove(i);
            let c = if i % 2 == 0 { F::one() } else { F::one().negated() };
            col.push((index[&face], c));
        }
        out.set_boundary_indices(index[simplex], col);
    }
    Ok(out)
}

/// Cap product with a simplicial 1-cochain, `[v0..vk] ⌢ ψ = ψ([v0,v1])·[v1..vk]`,
/// as a chain map of degree `-1` and filtration shift `0` on the lower-star
/// complex. It is a chain map exactly when `ψ` is a cocycle.
pub fn cap_with_cochain<F: Field>(
    complex: &Arc<FilteredComplex<F>>,
    cochain: &BTreeMap<(usize, usize), F>,
    s: &SimplicialComplex,
) -> Result<FilteredChainMap<F>> {
    let mut map = FilteredChainMap::zero(complex.clone(), complex.clone(), Rational::zero(), -1)?;
    for simplex in &s.simplices {
        if simplex.len() < 2 {
            continue;
        }
        let Some(c) = cochain.get(&(simplex[0], simplex[1])) else {
            continue;
        };
        let src = complex.lookup(&s.simplex_id(simplex))?;
        let tgt = complex.lookup(&s.simplex_id(&simplex[1..]))?;
        map.set_image_indices(src, vec![(tgt, c.clone())]);
    }
    Ok(map)
}
