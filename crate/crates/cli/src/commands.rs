use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use persmod::barcode::{barcode_from_complex, barcodes_all, Barcode};
use persmod::distances::bottleneck;
use persmod::equivariant::{
    eggbeater_constant, eggbeater_full_power, eggbeater_orbits, eggbeater_synthetic, eigenspace, gamma, mu_p,
    mu_p_zeta, power_module, reduced_spread, spread, ZpModule,
};
use persmod::exactnum::{fmt_rational, is_prime, parse_rational, CyclotomicNumber, ExtRational, Rational};
use persmod::filtered_complex::{lower_star_complex, FieldTag, FilteredChainMap, FilteredComplex};
use persmod::io::{
    ext_to_string, from_json_str, parse_field_flag, peek_field, BarcodeFile, BottleneckJson, ChainMapFile,
    ComplexFile, FamilyFile, JsonScalar, SimplicialFile, ZpModuleFile,
};
use persmod::operators::{builtin_genus2, genus2_surface, image_module, kernel_module, Genus2Variant};
use persmod::quantum::{hypothesis_check, quantum_betti, QuantumAlgebra};
use persmod::svg::barcode_svg;
use persmod::tensor::{barcode_tensor, barcode_tor, kunneth_check};
use persmod::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::Command;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::NotPrime(_) | Error::FieldMismatch(_) => 2,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn validation(message: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

/// Parses a file, prefixing errors with its path.
fn parse_file<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    from_json_str(&read(path)?).map_err(|e| CliError {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn rational_arg(name: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|e| CliError {
        code: 2,
        message: format!("--{name}: {e}"),
    })
}

fn barcode_json(b: &Barcode) -> Value {
    serde_json::to_value(BarcodeFile::from_barcode(b)).expect("serializable barcode")
}

pub fn run(cmd: Command) -> CliResult<String> {
    match cmd {
        Command::Barcode {
            file,
            degree,
            field,
            svg,
        } => cmd_barcode(&file, degree, field.as_deref(), svg.as_deref()),
        Command::Bottleneck { b1, b2 } => {
            let (b1, b2) = (load_barcode(&b1)?, load_barcode(&b2)?);
            Ok(pretty(&BottleneckJson::from_result(&bottleneck(&b1, &b2))))
        }
        Command::Image {
            complex,
            map,
            degree,
            target,
        } => cmd_map_module(&complex, &map, target.as_deref(), degree, true),
        Command::Kernel {
            complex,
            map,
            degree,
            target,
        } => cmd_map_module(&complex, &map, target.as_deref(), degree, false),
        Command::Tensor { b1, b2 } => Ok(pretty(&barcode_json(&barcode_tensor(
            &load_barcode(&b1)?,
            &load_barcode(&b2)?,
        )))),
        Command::Tor { b1, b2 } => Ok(pretty(&barcode_json(&barcode_tor(
            &load_barcode(&b1)?,
            &load_barcode(&b2)?,
        )))),
        Command::KunnethCheck { c1, c2, degree } => cmd_kunneth(&c1, &c2, degree),
        Command::Eigenspace { file, zeta } => {
            let z = load_zp(&file)?;
            let root = CyclotomicNumber::zeta_pow(z.p(), zeta as i64)?;
            let b = eigenspace(&z, &root)?.barcode()?;
            let mut out = barcode_json(&b);
            out["zeta_power"] = json!(zeta);
            Ok(pretty(&out))
        }
        Command::Spread { file, p } => {
            ensure_prime(p)?;
            let b = load_barcode(&file)?;
            Ok(pretty(&json!({"p": p, "spread": ext_to_string(&spread(&b, p))})))
        }
        Command::MuP { file, p } => {
            let z = load_zp(&file)?;
            if let Some(p) = p {
                if p != z.p() {
                    return Err(validation(format!("-p {p} does not match the module's p = {}", z.p())));
                }
            }
            Ok(pretty(&mu_p_json(&z)?))
        }
        Command::SpreadReduced { file, p, r } => {
            ensure_prime(p)?;
            let fam = parse_file::<FamilyFile>(&file)?.to_family()?;
            let empty = Barcode::new();
            let s = spread(fam.get(r).unwrap_or(&empty), p);
            Ok(pretty(&json!({
                "p": p,
                "r": r,
                "spread": ext_to_string(&s),
                "gamma": fmt_rational(&gamma(&fam, r)),
                "reduced": ext_to_string(&reduced_spread(&fam, r, p)),
            })))
        }
        Command::PowerCheck { file } => {
            let f: ZpModuleFile = parse_file(&file)?;
            let field = FieldTag::Cyclotomic(f.p);
            let mut module_file = f.module.clone();
            module_file.field = persmod::io::FieldJson::from_tag(field);
            let base = module_file.to_module::<CyclotomicNumber>()?;
            if f.action.len() != base.dims.len() {
                return Err(validation("need one root matrix per sample point"));
            }
            let roots = f
                .action
                .iter()
                .zip(&base.dims)
                .enumerate()
                .map(|(i, (m, &d))| persmod::io::matrix_from_json(m, (d, d), field, &format!("root {i}")))
                .collect::<Result<Vec<_>, _>>()?;
            let z = power_module(&roots, f.p, &base)?;
            let m = mu_p(&z)?;
            let vanishes = m == ExtRational::Finite(Rational::from_integer(0.into()));
            let out = json!({"p": f.p, "mu_p": ext_to_string(&m), "vanishes": vanishes});
            if !vanishes {
                return Err(validation(format!("μ_p of a full power is nonzero: {}", pretty(&out))));
            }
            Ok(pretty(&out))
        }
        Command::Eggbeater {
            p,
            lambda,
            c0,
            full_power,
            emit_module,
        } => {
            let lambda = rational_arg("lambda", &lambda)?;
            let c0 = rational_arg("c0", &c0)?;
            let z = if full_power {
                eggbeater_full_power(p, &lambda, &c0)?
            } else {
                eggbeater_synthetic(p, &lambda, &c0)?
            };
            let mut out = mu_p_json(&z)?;
            out["lambda"] = json!(fmt_rational(&lambda));
            out["c0"] = json!(fmt_rational(&c0));
            out["orbits"] = json!(eggbeater_orbits(p));
            out["full_power"] = json!(full_power);
            let bound = &c0 * &lambda / Rational::from_integer(4.into()) - eggbeater_constant();
            out["constant"] = json!(fmt_rational(&eggbeater_constant()));
            out["lower_bound"] = json!(fmt_rational(&bound));
            if emit_module {
                out["module"] = serde_json::to_value(ZpModuleFile::from_zp(&z)).expect("serializable");
            }
            Ok(pretty(&out))
        }
        Command::Genus2 {
            variant,
            eps,
            a,
            b,
            emit,
        } => cmd_genus2(&variant, &eps, &a, &b, &emit),
        Command::QuantumBetti { ring, e } => {
            let alg = load_ring(&ring)?;
            let el = alg.parse_element(&e)?;
            let betti = quantum_betti(&alg, &el)?;
            Ok(pretty(&json!({
                "e": e,
                "c_N": alg.minimal_chern(),
                "betti": betti,
                "window_dimensions": alg.window_dimensions(),
            })))
        }
        Command::HypothesisCheck { ring, e, p } => {
            let alg = load_ring(&ring)?;
            let el = alg.parse_element(&e)?;
            Ok(pretty(&hypothesis_check(&alg, &el, p)?))
        }
        Command::Plot { file, o } => {
            let b = load_barcode(&file)?;
            let title = file.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            write(&o, &barcode_svg(&b, &title))?;
            Ok(pretty(&json!({"written": o.display().to_string(), "bars": b.total()})))
        }
    }
}

fn ensure_prime(p: u32) -> CliResult<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p).into())
    }
}

fn load_barcode(path: &Path) -> CliResult<Barcode> {
    Ok(parse_file::<BarcodeFile>(path)?.to_barcode()?)
}

fn load_zp(path: &Path) -> CliResult<ZpModule> {
    Ok(parse_file::<ZpModuleFile>(path)?.to_zp()?)
}

fn load_ring(spec: &str) -> CliResult<QuantumAlgebra> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok(QuantumAlgebra::builtin(name)?);
    }
    Ok(QuantumAlgebra::from_json(&read(Path::new(spec))?)?)
}

fn mu_p_json(z: &ZpModule) -> CliResult<Value> {
    let mut per_zeta = BTreeMap::new();
    for k in 0..z.p() {
        per_zeta.insert(k.to_string(), ext_to_string(&mu_p_zeta(z, k)?));
    }
    Ok(json!({"p": z.p(), "mu_p": ext_to_string(&mu_p(z)?), "per_zeta": per_zeta}))
}

/// The field of a complex file, overridden or supplied by `--field`.
fn field_of(text: &str, flag: Option<&str>) -> CliResult<FieldTag> {
    match flag {
        Some(f) => Ok(parse_field_flag(f)?),
        None => Ok(peek_field(text)?),
    }
}

fn load_complex<F: JsonScalar>(path: &Path, field: FieldTag) -> CliResult<FilteredComplex<F>> {
    let text = read(path)?;
    let value: Value = from_json_str(&text).map_err(|e| CliError {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    if value.get("vertices").is_some() {
        let s = parse_file::<SimplicialFile>(path)?.to_simplicial()?;
        return Ok(lower_star_complex(&s, field)?);
    }
    let file: ComplexFile = parse_file(path)?;
    let c = file.to_complex::<F>()?;
    c.ensure_valid()?;
    Ok(c)
}

fn cmd_barcode(path: &Path, degree: Option<i64>, field: Option<&str>, svg: Option<&Path>) -> CliResult<String> {
    let field = field_of(&read(path)?, field)?;
    match field {
        FieldTag::Rational => barcode_with::<Rational>(path, field, degree, svg),
        FieldTag::Cyclotomic(_) => barcode_with::<CyclotomicNumber>(path, field, degree, svg),
    }
}

fn barcode_with<F: JsonScalar>(
    path: &Path,
    field: FieldTag,
    degree: Option<i64>,
    svg: Option<&Path>,
) -> CliResult<String> {
    let c = load_complex::<F>(path, field)?;
    match degree {
        Some(k) => {
            let b = barcode_from_complex(&c, k)?;
            let out = pretty(&barcode_json(&b));
            if let Some(svg) = svg {
                write(svg, &barcode_svg(&b, &format!("H{k}")))?;
            }
            Ok(out)
        }
        None => {
            if svg.is_some() {
                return Err(CliError {
                    code: 2,
                    message: "--svg needs --degree".into(),
                });
            }
            let all: Vec<Value> = barcodes_all(&c)?.values().map(barcode_json).collect();
            Ok(pretty(&json!({ "barcodes": all })))
        }
    }
}

fn cmd_map_module(
    complex: &Path,
    map: &Path,
    target: Option<&Path>,
    degree: i64,
    image: bool,
) -> CliResult<String> {
    let field = peek_field(&read(complex)?)?;
    match field {
        FieldTag::Rational => map_module_with::<Rational>(complex, map, target, degree, image, field),
        FieldTag::Cyclotomic(_) => map_module_with::<CyclotomicNumber>(complex, map, target, degree, image, field),
    }
}

fn map_module_with<F: JsonScalar>(
    complex: &Path,
    map: &Path,
    target: Option<&Path>,
    degree: i64,
    image: bool,
    field: FieldTag,
) -> CliResult<String> {
    let src = Arc::new(load_complex::<F>(complex, field)?);
    let tgt = match target {
        Some(t) => Arc::new(load_complex::<F>(t, field)?),
        None => src.clone(),
    };
    let phi: FilteredChainMap<F> = parse_file::<ChainMapFile>(map)?.to_map(src, tgt)?;
    let (module, label) = if image {
        (image_module(&phi, degree)?, degree + phi.degree_shift())
    } else {
        (kernel_module(&phi, degree)?, degree)
    };
    let b = module.barcode()?.with_degree(label);
    Ok(pretty(&barcode_json(&b)))
}

fn cmd_kunneth(c1: &Path, c2: &Path, degree: i64) -> CliResult<String> {
    let f1 = peek_field(&read(c1)?)?;
    let f2 = peek_field(&read(c2)?)?;
    if f1 != f2 {
        return Err(Error::FieldMismatch(format!("{f1} vs {f2}")).into());
    }
    match f1 {
        FieldTag::Rational => kunneth_with::<Rational>(c1, c2, degree, f1),
        FieldTag::Cyclotomic(_) => kunneth_with::<CyclotomicNumber>(c1, c2, degree, f1),
    }
}

fn kunneth_with<F: JsonScalar>(c1: &Path, c2: &Path, degree: i64, field: FieldTag) -> CliResult<String> {
    let a = load_complex::<F>(c1, field)?;
    let b = load_complex::<F>(c2, field)?;
    let r = kunneth_check(&a, &b, degree)?;
    let out = pretty(&json!({
        "degree": r.degree,
        "product_barcode": barcode_json(&r.product_barcode),
        "tensor_part": barcode_json(&r.tensor_part),
        "tor_part": barcode_json(&r.tor_part),
        "pointwise_dims_match": r.pointwise_dims_match,
        "split_equality": r.split_equality,
    }));
    if r.split_equality && r.pointwise_dims_match {
        Ok(out)
    } else {
        Err(validation(format!("Künneth decomposition does not match:\n{out}")))
    }
}

fn cmd_genus2(variant: &str, eps: &str, a: &str, b: &str, emit: &str) -> CliResult<String> {
    let variant: Genus2Variant = variant.parse()?;
    let (eps, a, b) = (rational_arg("eps", eps)?, rational_arg("a", a)?, rational_arg("b", b)?);
    let (complex, cap) = builtin_genus2(variant, &eps, &a, &b)?;
    let mut out = serde_json::Map::new();
    for part in emit.split(',').map(str::trim) {
        match part {
            "summary" => {
                let barcodes: Vec<Value> = barcodes_all(&complex)?.values().map(barcode_json).collect();
                let image = image_module(&cap, 1)?.barcode()?.with_degree(0);
                out.insert(
                    "summary".into(),
                    json!({"barcodes": barcodes, "image_barcode": barcode_json(&image)}),
                );
            }
            "complex" => {
                out.insert(
                    "complex".into(),
                    serde_json::to_value(ComplexFile::from_complex(complex.as_ref())).expect("serializable"),
                );
            }
            "map" => {
                out.insert(
                    "map".into(),
                    serde_json::to_value(ChainMapFile::from_map(&cap)).expect("serializable"),
                );
            }
            "simplicial" => {
                let s = genus2_surface(variant, &eps, &a, &b)?;
                out.insert(
                    "simplicial".into(),
                    serde_json::to_value(SimplicialFile::from_simplicial(&s)).expect("serializable"),
                );
            }
            other => {
                return Err(CliError {
                    code: 2,
                    message: format!("unknown --emit part {other:?}"),
                })
            }
        }
    }
    Ok(pretty(&Value::Object(out)))
}
