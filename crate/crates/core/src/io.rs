//! JSON file formats and their conversion to and from the in-memory types.
//!
//! Rationals are strings `"n/d"` (or `"n"`), infinite values are `"inf"`.
//! Elements of `Q(ζ_p)` are coordinate arrays in the power basis
//! `1, ζ, …, ζ^{p-2}`, or `{"p": p, "coords": [...]}` when the field is
//! not fixed by context; rational elements may always be plain strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::barcode::{Barcode, Interval};
use crate::distances::BottleneckResult;
use crate::equivariant::{GradedBarcodeFamily, ZpModule};
use crate::error::{Error, Result};
use crate::exactnum::{fmt_rational, parse_rational, CyclotomicNumber, ExtRational, Field, Rational};
use crate::filtered_complex::{FieldTag, FilteredChainMap, FilteredComplex, SimplicialComplex};
use crate::linalg::Matrix;
use crate::tabulated::TabulatedModule;

/// Parses JSON text, reporting the line and column of syntax and schema errors.
pub fn from_json_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable value")
}

pub fn ext_to_string(x: &ExtRational) -> String {
    match x {
        ExtRational::Finite(r) => fmt_rational(r),
        ExtRational::Infinite => "inf".into(),
    }
}

/// A field element with a JSON representation.
pub trait JsonScalar: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, field: FieldTag) -> Result<Self>;
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("i64").into())),
        other => Err(Error::Parse(format!("expected a rational string, found {other}"))),
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(fmt_rational(self))
    }

    fn from_json(v: &Value, _field: FieldTag) -> Result<Self> {
        rational_from_json(v)
    }
}

fn coords_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected a coordinate array, found {v}")))?
        .iter()
        .map(rational_from_json)
        .collect()
}

impl JsonScalar for CyclotomicNumber {
    fn to_json(&self) -> Value {
        match (self.p(), self.as_rational()) {
            (_, Some(r)) => Value::String(fmt_rational(&r)),
            (Some(p), None) => {
                let coords = self.coords_in(p).expect("own modulus");
                Value::Array(coords.iter().map(|c| Value::String(fmt_rational(c))).collect())
            }
            (None, None) => unreachable!("irrational elements carry a modulus"),
        }
    }

    fn from_json(v: &Value, field: FieldTag) -> Result<Self> {
        match v {
            Value::String(_) | Value::Number(_) => Ok(CyclotomicNumber::from_rational(rational_from_json(v)?)),
            Value::Array(_) => match field {
                FieldTag::Cyclotomic(p) => CyclotomicNumber::new(p, coords_from_json(v)?),
                FieldTag::Rational => Err(Error::Parse("coordinate array in a rational context".into())),
            },
            Value::Object(map) => {
                let p = map
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse(format!("cyclotomic element without \"p\": {v}")))?;
                let coords = coords_from_json(map.get("coords").unwrap_or(&Value::Null))?;
                CyclotomicNumber::new(p as u32, coords)
            }
            other => Err(Error::Parse(format!("not a field element: {other}"))),
        }
    }
}

/// `"Q"` or `{"cyclotomic": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Name(String),
    Cyclotomic { cyclotomic: u32 },
}

impl Default for FieldJson {
    fn default() -> Self {
        FieldJson::Name("Q".into())
    }
}

impl FieldJson {
    pub fn tag(&self) -> Result<FieldTag> {
        match self {
            FieldJson::Name(s) if s == "Q" => Ok(FieldTag::Rational),
            FieldJson::Name(s) => parse_field_flag(s),
            FieldJson::Cyclotomic { cyclotomic } => Ok(FieldTag::Cyclotomic(*cyclotomic)),
        }
    }

    pub fn from_tag(tag: FieldTag) -> Self {
        match tag {
            FieldTag::Rational => FieldJson::Name("Q".into()),
            FieldTag::Cyclotomic(p) => FieldJson::Cyclotomic { cyclotomic: p },
        }
    }
}

/// Parses the command-line spelling `Q` or `zeta:p`.
pub fn parse_field_flag(s: &str) -> Result<FieldTag> {
    if s == "Q" {
        return Ok(FieldTag::Rational);
    }
    let p = s
        .strip_prefix("zeta:")
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| Error::Parse(format!("unknown field {s:?}; use Q or zeta:p")))?;
    if !crate::exactnum::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(FieldTag::Cyclotomic(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub id: String,
    pub degree: i64,
    pub filtration: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default)]
    pub field: FieldJson,
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub boundary: BTreeMap<String, Vec<(Value, String)>>,
}

fn terms_from_json<F: JsonScalar>(terms: &[(Value, String)], field: FieldTag) -> Result<Vec<(F, String)>> {
    terms
        .iter()
        .map(|(c, id)| Ok((F::from_json(c, field)?, id.clone())))
        .collect()
}

impl ComplexFile {
    pub fn to_complex<F: JsonScalar>(&self) -> Result<FilteredComplex<F>> {
        let field = self.field.tag()?;
        let mut c = FilteredComplex::new(field);
        for g in &self.generators {
            if c.lookup(&g.id).is_ok() {
                return Err(Error::Parse(format!("duplicate generator id {:?}", g.id)));
            }
            c.add_generator(g.id.clone(), g.degree, parse_rational(&g.filtration)?);
        }
        for (id, terms) in &self.boundary {
            c.set_boundary(id, terms_from_json::<F>(terms, field)?)?;
        }
        Ok(c)
    }

    pub fn from_complex<F: JsonScalar>(c: &FilteredComplex<F>) -> Self {
        let generators = c
            .generators()
            .iter()
            .map(|g| GeneratorJson {
                id: g.id.clone(),
                degree: g.degree,
                filtration: fmt_rational(&g.filtration),
            })
            .collect();
        let mut boundary = BTreeMap::new();
        for (i, g) in c.generators().iter().enumerate() {
            let terms: Vec<(Value, String)> = c
                .boundary_of(i)
                .iter()
                .map(|(t, v)| (v.to_json(), c.generator(*t).id.clone()))
                .collect();
            if !terms.is_empty() {
                boundary.insert(g.id.clone(), terms);
            }
        }
        ComplexFile {
            field: FieldJson::from_tag(c.field()),
            generators,
            boundary,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainMapFile {
    pub shift: String,
    #[serde(default)]
    pub degree_shift: i64,
    #[serde(default)]
    pub entries: BTreeMap<String, Vec<(Value, String)>>,
}

impl ChainMapFile {
    pub fn to_map<F: JsonScalar>(
        &self,
        source: Arc<FilteredComplex<F>>,
        target: Arc<FilteredComplex<F>>,
    ) -> Result<FilteredChainMap<F>> {
        let field = target.field();
        let mut m = FilteredChainMap::zero(source, target, parse_rational(&self.shift)?, self.degree_shift)?;
        for (id, terms) in &self.entries {
            m.set_image(id, terms_from_json::<F>(terms, field)?)?;
        }
        Ok(m)
    }

    pub fn from_map<F: JsonScalar>(m: &FilteredChainMap<F>) -> Self {
        let mut entries = BTreeMap::new();
        for (i, g) in m.source().generators().iter().enumerate() {
            let terms: Vec<(Value, String)> = m
                .image_of(i)
                .iter()
                .map(|(t, v)| (v.to_json(), m.target().generator(*t).id.clone()))
                .collect();
            if !terms.is_empty() {
                entries.insert(g.id.clone(), terms);
            }
        }
        ChainMapFile {
            shift: fmt_rational(m.shift()),
            degree_shift: m.degree_shift(),
            entries,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub height: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialFile {
    pub vertices: Vec<VertexJson>,
    pub simplices: Vec<Vec<String>>,
}

impl SimplicialFile {
    pub fn to_simplicial(&self) -> Result<SimplicialComplex> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Ok((v.id.clone(), parse_rational(&v.height)?)))
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::from_simplices(vertices, &self.simplices)
    }

    pub fn from_simplicial(s: &SimplicialComplex) -> Self {
        let ids = s.vertex_ids();
        SimplicialFile {
            vertices: ids
                .iter()
                .zip(s.heights())
                .map(|(id, h)| VertexJson {
                    id: id.clone(),
                    height: fmt_rational(h),
                })
                .collect(),
            simplices: s
                .simplices()
                .iter()
                .filter(|x| x.len() > 1)
                .map(|x| x.iter().map(|&v| ids[v].clone()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarJson {
    pub birth: String,
    pub death: String,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

impl BarJson {
    pub fn from_interval(i: &Interval, mult: usize) -> Self {
        BarJson {
            birth: fmt_rational(&i.birth),
            death: ext_to_string(&i.death),
            mult,
        }
    }

    pub fn to_interval(&self) -> Result<Interval> {
        let birth = parse_rational(&self.birth)?;
        let death = ExtRational::parse(&self.death)?;
        Interval::new(birth, death).ok_or_else(|| Error::Parse(format!("empty bar ({}, {}]", self.birth, self.death)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarcodeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub bars: Vec<BarJson>,
}

impl BarcodeFile {
    pub fn from_barcode(b: &Barcode) -> Self {
        BarcodeFile {
            degree: b.degree(),
            bars: b.bars().map(|(i, m)| BarJson::from_interval(i, m)).collect(),
        }
    }

    pub fn to_barcode(&self) -> Result<Barcode> {
        let mut b = Barcode::new();
        for bar in &self.bars {
            b.insert(bar.to_interval()?, bar.mult);
        }
        Ok(match self.degree {
            Some(d) => b.with_degree(d),
            None => b,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub degrees: BTreeMap<i64, BarcodeFile>,
}

impl FamilyFile {
    pub fn to_family(&self) -> Result<GradedBarcodeFamily> {
        let mut f = GradedBarcodeFamily::new();
        for (d, b) in &self.degrees {
            f.insert(*d, b.to_barcode()?);
        }
        Ok(f)
    }

    pub fn from_family(f: &GradedBarcodeFamily) -> Self {
        FamilyFile {
            degrees: f
                .degrees
                .iter()
                .map(|(d, b)| (*d, BarcodeFile::from_barcode(b)))
                .collect(),
        }
    }
}

pub fn matrix_to_json<F: JsonScalar>(m: &Matrix<F>) -> Vec<Vec<Value>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(JsonScalar::to_json).collect())
        .collect()
}

pub fn matrix_from_json<F: JsonScalar>(
    rows: &[Vec<Value>],
    shape: (usize, usize),
    field: FieldTag,
    what: &str,
) -> Result<Matrix<F>> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Parse(format!("{what} must be a {}x{} matrix", shape.0, shape.1)));
    }
    let data = rows
        .iter()
        .map(|r| r.iter().map(|v| F::from_json(v, field)).collect::<Result<Vec<F>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut m = Matrix::zeros(shape.0, shape.1);
    for (i, row) in data.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TabulatedFile {
    #[serde(default)]
    pub field: FieldJson,
    pub critical_values: Vec<String>,
    pub dims: Vec<usize>,
    pub transitions: Vec<Vec<Vec<Value>>>,
}

impl TabulatedFile {
    pub fn from_module<F: JsonScalar>(m: &TabulatedModule<F>, field: FieldTag) -> Self {
        TabulatedFile {
            field: FieldJson::from_tag(field),
            critical_values: m.critical_values.iter().map(fmt_rational).collect(),
            dims: m.dims.clone(),
            transitions: m.transitions.iter().map(matrix_to_json).collect(),
        }
    }

    pub fn to_module<F: JsonScalar>(&self) -> Result<TabulatedModule<F>> {
        let field = self.field.tag()?;
        let cv = self
            .critical_values
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        if self.dims.len() != cv.len() || self.transitions.len() + 1 != self.dims.len().max(1) {
            return Err(Error::Parse("need one dimension per critical value and one transition between consecutive ones".into()));
        }
        let transitions = self
            .transitions
            .iter()
            .enumerate()
            .map(|(i, t)| matrix_from_json(t, (self.dims[i + 1], self.dims[i]), field, &format!("transition {i}")))
            .collect::<Result<Vec<_>>>()?;
        TabulatedModule::new(cv, self.dims.clone(), transitions)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZpModuleFile {
    pub p: u32,
    pub module: TabulatedFile,
    pub action: Vec<Vec<Vec<Value>>>,
}

impl ZpModuleFile {
    pub fn from_zp(z: &ZpModule) -> Self {
        ZpModuleFile {
            p: z.p(),
            module: TabulatedFile::from_module(z.module(), FieldTag::Cyclotomic(z.p())),
            action: z.action().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn to_zp(&self) -> Result<ZpModule> {
        let field = FieldTag::Cyclotomic(self.p);
        let mut module_file = self.module.clone();
        module_file.field = FieldJson::from_tag(field);
        let module: TabulatedModule<CyclotomicNumber> = module_file.to_module()?;
        if self.action.len() != module.dims.len() {
            return Err(Error::Parse("need one action matrix per sample point".into()));
        }
        let action = self
            .action
            .iter()
            .zip(&module.dims)
            .enumerate()
            .map(|(i, (t, &d))| matrix_from_json(t, (d, d), field, &format!("action {i}")))
            .collect::<Result<Vec<_>>>()?;
        ZpModule::new(self.p, module, action)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingJson {
    pub pairs: Vec<(BarJson, BarJson)>,
    pub erased_1: Vec<BarJson>,
    pub erased_2: Vec<BarJson>,
    pub cost: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottleneckJson {
    pub distance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<MatchingJson>,
}

impl BottleneckJson {
    pub fn from_result(r: &BottleneckResult) -> Self {
        let bars = |b: &Barcode| b.bars().map(|(i, m)| BarJson::from_interval(i, m)).collect();
        BottleneckJson {
            distance: ext_to_string(&r.distance),
            matching: r.matching.as_ref().map(|m| MatchingJson {
                pairs: m
                    .pairs
                    .iter()
                    .map(|(a, b)| (BarJson::from_interval(a, 1), BarJson::from_interval(b, 1)))
                    .collect(),
                erased_1: bars(&m.erased_1),
                erased_2: bars(&m.erased_2),
                cost: fmt_rational(&m.cost),
            }),
        }
    }
}

/// Reads the `"field"` entry of a complex file without parsing the rest.
pub fn peek_field(json: &str) -> Result<FieldTag> {
    #[derive(Deserialize)]
    struct Peek {
        #[serde(default)]
        field: FieldJson,
    }
    from_json_str::<Peek>(json)?.field.tag()
}
