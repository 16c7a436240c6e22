//! Reading lattices, domains, tables, polynomials and factorizations.
//!
//! Lattice JSON is either `{"universe": [...], "elements": {name: [atoms]}}`
//! or `{"join_irreducibles": {"elems": [...], "leq": [[a, b], ...]}}`.
//! Domain JSON is `{"domains": [{"name", "elements", "zero"?, "one"?}],
//! "lattice": <lattice JSON or path relative to the domain file>}`.
//! Tables are CSV with header `x1,...,xn,f` and one row per tuple.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::factorization::{Domain, FactorError, FunctionTable, PhiVector, Tuples};
use crate::lattice::{Lattice, LatticeError, Poset, Subset, Universe};
use crate::polynomial::{mask_key, parse_mask_key, Polynomial, PolynomialError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("malformed JSON in {source_name}: {message}")]
    Json { source_name: String, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("table row {row}: unknown {column} value {value:?}")]
    UnknownValue { row: usize, column: String, value: String },
    #[error("table rows {first} and {second} both define {tuple}")]
    DuplicateTuple { tuple: String, first: usize, second: usize },
    #[error("table is missing {} tuple(s), first {}", missing.len(), missing[0])]
    MissingTuples { missing: Vec<String> },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
}

impl IoError {
    pub fn kind(&self) -> &'static str {
        match self {
            IoError::Read { .. } => "read",
            IoError::Json { .. } => "json",
            IoError::Schema(_) => "schema",
            IoError::Csv(_) => "csv",
            IoError::UnknownValue { .. } => "unknown_value",
            IoError::DuplicateTuple { .. } => "duplicate_tuple",
            IoError::MissingTuples { .. } => "missing_tuples",
            IoError::Lattice(_) => "lattice",
            IoError::Factor(_) => "table",
            IoError::Polynomial(_) => "polynomial",
        }
    }

    /// Machine-readable form for error output.
    pub fn diagnostic(&self) -> Value {
        let mut d = json!({ "error": self.kind(), "message": self.to_string() });
        match self {
            IoError::UnknownValue { row, column, value } => {
                d["row"] = json!(row);
                d["column"] = json!(column);
                d["value"] = json!(value);
            }
            IoError::DuplicateTuple { tuple, first, second } => {
                d["tuple"] = json!(tuple);
                d["rows"] = json!([first, second]);
            }
            IoError::MissingTuples { missing } => d["missing"] = json!(missing),
            _ => {}
        }
        d
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|e| IoError::Read { path: path.display().to_string(), message: e.to_string() })
}

fn parse_json(text: &str, source_name: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json { source_name: source_name.into(), message: e.to_string() })
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T, IoError> {
    serde_json::from_value(v).map_err(|e| IoError::Schema(format!("{what}: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeDoc {
    universe: Option<Vec<String>>,
    elements: Option<Map<String, Value>>,
    join_irreducibles: Option<PosetDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    elems: Vec<String>,
    leq: Vec<(String, String)>,
}

pub fn lattice_from_value(v: Value) -> Result<Lattice, IoError> {
    let doc: LatticeDoc = from_value(v, "lattice")?;
    match (doc.elements, doc.join_irreducibles) {
        (Some(elements), None) => {
            let atoms =
                doc.universe.ok_or_else(|| IoError::Schema("lattice: \"elements\" needs \"universe\"".into()))?;
            let universe = Universe::new(atoms)?;
            let mut named = Vec::with_capacity(elements.len());
            for (name, atoms) in elements {
                let atoms: Vec<String> = from_value(atoms, &format!("lattice element {name:?}"))?;
                named.push((name, universe.subset(&atoms)?));
            }
            Ok(Lattice::from_subsets(universe, named)?)
        }
        (None, Some(p)) => {
            if doc.universe.is_some() {
                return Err(IoError::Schema("lattice: \"universe\" is not used with \"join_irreducibles\"".into()));
            }
            Ok(Lattice::from_join_irreducibles(&Poset { elems: p.elems, leq: p.leq })?)
        }
        _ => Err(IoError::Schema("lattice: exactly one of \"elements\" and \"join_irreducibles\" is required".into())),
    }
}

pub fn parse_lattice(text: &str) -> Result<Lattice, IoError> {
    lattice_from_value(parse_json(text, "lattice")?)
}

pub fn load_lattice(path: &Path) -> Result<Lattice, IoError> {
    lattice_from_value(parse_json(&read(path)?, &path.display().to_string())?)
}

/// Lattice JSON in the `elements` form, elements in carrier order.
pub fn lattice_to_value(y: &Lattice) -> Value {
    let u = y.universe();
    let elements: Map<String, Value> = y.elements().iter().map(|&s| (y.name(s), json!(u.atom_names(s)))).collect();
    json!({ "universe": u.atoms(), "elements": elements })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainDoc {
    name: String,
    elements: Vec<String>,
    zero: Option<String>,
    one: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainFile {
    domains: Vec<DomainDoc>,
    lattice: Option<Value>,
}

/// Domains plus the lattice they refer to, if the domain file names one.
pub struct DomainSet {
    pub domains: Vec<Domain>,
    pub lattice: Option<Lattice>,
}

fn position(doc: &DomainDoc, which: &str, e: &Option<String>) -> Result<Option<usize>, IoError> {
    match e {
        None => Ok(None),
        Some(e) => {
            doc.elements.iter().position(|x| x == e).map(Some).ok_or_else(|| {
                IoError::Schema(format!("domain {}: {which} element {e:?} is not in the domain", doc.name))
            })
        }
    }
}

/// Parses a domain file; a lattice given as a path is resolved against `base`.
pub fn parse_domains(text: &str, base: Option<&Path>) -> Result<DomainSet, IoError> {
    let file: DomainFile = from_value(parse_json(text, "domain")?, "domain")?;
    let mut domains = Vec::with_capacity(file.domains.len());
    for doc in &file.domains {
        let mut d = Domain::new(doc.name.clone(), doc.elements.iter().cloned());
        match (position(doc, "zero", &doc.zero)?, position(doc, "one", &doc.one)?) {
            (Some(z), Some(o)) => d = d.with_bounds(z, o),
            (None, None) => {}
            _ => {
                return Err(IoError::Schema(format!("domain {}: give both \"zero\" and \"one\" or neither", doc.name)))
            }
        }
        domains.push(d);
    }
    let lattice = match file.lattice {
        None => None,
        Some(Value::String(p)) => {
            let p = PathBuf::from(p);
            let p = match base {
                Some(b) if p.is_relative() => b.join(p),
                _ => p,
            };
            Some(load_lattice(&p)?)
        }
        Some(v) => Some(lattice_from_value(v)?),
    };
    Ok(DomainSet { domains, lattice })
}

pub fn load_domains(path: &Path) -> Result<DomainSet, IoError> {
    parse_domains(&read(path)?, path.parent())
}

pub fn domains_to_value(domains: &[Domain]) -> Value {
    let list: Vec<Value> = domains
        .iter()
        .map(|d| {
            let mut m = json!({ "name": d.name, "elements": d.elements });
            if let Some(b) = d.bounds {
                m["zero"] = json!(d.elements[b.zero]);
                m["one"] = json!(d.elements[b.one]);
            }
            m
        })
        .collect();
    Value::Array(list)
}

/// Reads `x1,...,xn,f` rows into a table; every tuple must appear exactly once.
pub fn parse_table(text: &str, lattice: Arc<Lattice>, domains: Vec<Domain>) -> Result<FunctionTable, IoError> {
    let n = domains.len();
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| IoError::Csv(e.to_string()))?.clone();
    if header.len() != n + 1 {
        return Err(IoError::Csv(format!("header has {} columns, expected {}", header.len(), n + 1)));
    }
    if &header[n] != "f" {
        return Err(IoError::Csv(format!("last column must be \"f\", got {:?}", &header[n])));
    }
    for (k, d) in domains.iter().enumerate() {
        let col = &header[k];
        if col != format!("x{}", k + 1) && col != d.name {
            return Err(IoError::Csv(format!("column {} must be \"x{}\" or {:?}, got {col:?}", k + 1, k + 1, d.name)));
        }
    }
    let index: Vec<HashMap<&str, usize>> =
        domains.iter().map(|d| d.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect()).collect();
    let sizes: Vec<usize> = domains.iter().map(Domain::len).collect();
    let total: usize = sizes.iter().product();
    let mut values: Vec<Option<(Subset, usize)>> = vec![None; total];
    let format = |t: &[usize]| {
        let parts: Vec<&str> = t.iter().enumerate().map(|(k, &a)| domains[k].elements[a].as_str()).collect();
        format!("({})", parts.join(","))
    };
    for (r, record) in reader.records().enumerate() {
        let row = r + 2;
        let record = record.map_err(|e| IoError::Csv(format!("row {row}: {e}")))?;
        if record.len() != n + 1 {
            return Err(IoError::Csv(format!("row {row} has {} fields, expected {}", record.len(), n + 1)));
        }
        let mut tuple = Vec::with_capacity(n);
        for k in 0..n {
            let a = index[k].get(&record[k]).ok_or_else(|| IoError::UnknownValue {
                row,
                column: header[k].to_string(),
                value: record[k].to_string(),
            })?;
            tuple.push(*a);
        }
        let v = lattice.element(&record[n]).map_err(|_| IoError::UnknownValue {
            row,
            column: "f".into(),
            value: record[n].to_string(),
        })?;
        let idx = tuple.iter().zip(&sizes).fold(0, |acc, (&a, &s)| acc * s + a);
        if let Some((_, first)) = values[idx] {
            return Err(IoError::DuplicateTuple { tuple: format(&tuple), first, second: row });
        }
        values[idx] = Some((v, row));
    }
    let missing: Vec<String> =
        Tuples::new(&sizes).zip(&values).filter(|(_, v)| v.is_none()).map(|(t, _)| format(&t)).collect();
    if !missing.is_empty() {
        return Err(IoError::MissingTuples { missing });
    }
    let values = values.into_iter().map(|v| v.expect("checked above").0).collect();
    Ok(FunctionTable::new(lattice, domains, values)?)
}

pub fn load_table(path: &Path, lattice: Arc<Lattice>, domains: Vec<Domain>) -> Result<FunctionTable, IoError> {
    parse_table(&read(path)?, lattice, domains)
}

/// The CSV form read by [`parse_table`].
pub fn table_to_csv(f: &FunctionTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=f.arity()).map(|k| format!("x{k}")).collect();
    header.push("f".into());
    w.write_record(&header).expect("in-memory write");
    for (idx, t) in f.tuples().enumerate() {
        let mut row: Vec<String> = t.iter().enumerate().map(|(k, &a)| f.domain(k).elements[a].clone()).collect();
        row.push(f.lattice().name(f.value_at(idx)));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("names are UTF-8")
}

/// `{"arity": n, "coeffs": {"": .., "1": .., "1,2": ..}}`; missing keys are `0`.
pub fn polynomial_from_value(y: &Lattice, v: &Value) -> Result<Polynomial, IoError> {
    let arity = v
        .get("arity")
        .and_then(Value::as_u64)
        .ok_or_else(|| IoError::Schema("polynomial: integer \"arity\" is required".into()))? as usize;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| IoError::Schema("polynomial: object \"coeffs\" is required".into()))?;
    let mut raw = Vec::with_capacity(coeffs.len());
    for (key, c) in coeffs {
        let mask = parse_mask_key(key, arity)
            .ok_or_else(|| IoError::Schema(format!("polynomial: bad coefficient key {key:?} for arity {arity}")))?;
        let name =
            c.as_str().ok_or_else(|| IoError::Schema(format!("polynomial: coefficient {key:?} is not a name")))?;
        raw.push((mask, y.element(name)?));
    }
    Ok(Polynomial::from_raw_coeffs(y, arity, raw)?)
}

pub fn polynomial_to_value(y: &Lattice, p: &Polynomial) -> Value {
    let coeffs: Map<String, Value> =
        (0..p.coeffs().len() as u32).map(|m| (mask_key(m), json!(y.name(p.coeff(m))))).collect();
    json!({ "arity": p.arity(), "coeffs": coeffs })
}

/// `{"X1": {"A1": "B", ...}, ...}` keyed by domain and element names.
pub fn phi_to_value(f: &FunctionTable, phi: &PhiVector) -> Value {
    let y = f.lattice();
    let maps: Map<String, Value> = f
        .domains()
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let m: Map<String, Value> =
                d.elements.iter().enumerate().map(|(a, e)| (e.clone(), json!(y.name(phi.get(k, a))))).collect();
            (d.name.clone(), Value::Object(m))
        })
        .collect();
    Value::Object(maps)
}

pub fn phi_from_value(f: &FunctionTable, v: &Value) -> Result<PhiVector, IoError> {
    let obj = v.as_object().ok_or_else(|| IoError::Schema("phi: expected an object of domains".into()))?;
    if let Some(extra) = obj.keys().find(|k| !f.domains().iter().any(|d| &d.name == *k)) {
        return Err(IoError::Schema(format!("phi: unknown domain {extra:?}")));
    }
    let mut maps = Vec::with_capacity(f.arity());
    for d in f.domains() {
        let m = obj
            .get(&d.name)
            .and_then(Value::as_object)
            .ok_or_else(|| IoError::Schema(format!("phi: missing map for domain {}", d.name)))?;
        if let Some(extra) = m.keys().find(|k| d.position(k).is_none()) {
            return Err(IoError::Schema(format!("phi: {extra:?} is not an element of {}", d.name)));
        }
        let mut values = Vec::with_capacity(d.len());
        for e in &d.elements {
            let name = m
                .get(e)
                .and_then(Value::as_str)
                .ok_or_else(|| IoError::Schema(format!("phi: no value for {}({e})", d.name)))?;
            values.push(f.lattice().element(name)?);
        }
        maps.push(values);
    }
    Ok(PhiVector::new(maps))
}

/// A factorization `{"phi": .., "p": ..}`, or entry `index` of the
/// `"factorizations"` array of a report.
pub fn factorization_from_value(
    f: &FunctionTable,
    v: &Value,
    index: Option<usize>,
) -> Result<(PhiVector, Polynomial), IoError> {
    let entry = match (v.get("factorizations"), index) {
        (Some(Value::Array(list)), i) => {
            let i = i.unwrap_or(0);
            list.get(i).ok_or_else(|| IoError::Schema(format!("report has no factorization #{i}")))?
        }
        (_, Some(i)) if i > 0 => return Err(IoError::Schema(format!("no factorization list to take #{i} from"))),
        _ => v,
    };
    let phi = entry.get("phi").ok_or_else(|| IoError::Schema("factorization: \"phi\" is required".into()))?;
    let p = entry.get("p").ok_or_else(|| IoError::Schema("factorization: \"p\" is required".into()))?;
    let p = polynomial_from_value(f.lattice(), p)?;
    if p.arity() != f.arity() {
        return Err(IoError::Schema(format!(
            "factorization: polynomial arity {} but table arity {}",
            p.arity(),
            f.arity()
        )));
    }
    Ok((phi_from_value(f, phi)?, p))
}

pub fn load_factorization(
    path: &Path,
    f: &FunctionTable,
    index: Option<usize>,
) -> Result<(PhiVector, Polynomial), IoError> {
    let v = parse_json(&read(path)?, &path.display().to_string())?;
    factorization_from_value(f, &v, index)
}
