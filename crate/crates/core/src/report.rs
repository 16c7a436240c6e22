//! The JSON report shared by every subcommand, and its text rendering.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::chains::{
    all_wlu_sets, chain_characterization, chain_phi_bounds, free_phi_bounds, suff_conditions, ChainContext, ChainError,
    ChainWitness,
};
use crate::factorization::{
    check_boundary, collect_factorizations, count_factorizations, infer_bounds, is_pseudo_polynomial, p0, phi_bounds,
    phi_trace, verify_factorization, AdmissibilityWitness, Bc1Witness, BoundaryWitness, DomainBounds, FactorError,
    FunctionTable, PhiBounds, PhiVector, PseudoPolyWitness, Route, Side, Verdict,
};
use crate::io::{domains_to_value, phi_to_value, polynomial_to_value};
use crate::lattice::Subset;
use crate::polynomial::Polynomial;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum BoundsMode {
    /// Keep declared designated elements and infer the missing ones.
    #[default]
    Auto,
    /// Require designated elements for every domain.
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ChainMode {
    /// Add the chain section whenever the lattice is a chain.
    #[default]
    Auto,
    /// Fail unless the lattice is a chain.
    Force,
    Off,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub bounds: BoundsMode,
    pub chain: ChainMode,
    pub trace: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { bounds: BoundsMode::Auto, chain: ChainMode::Auto, trace: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizeOptions {
    pub cap: usize,
    pub count_only: bool,
    pub strict: bool,
}

impl Default for FactorizeOptions {
    fn default() -> Self {
        FactorizeOptions { cap: 10_000, count_only: false, strict: false }
    }
}

/// Problems that make a run impossible rather than negative.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("designated elements are ambiguous; choose them explicitly")]
    AmbiguousBounds(Value),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

impl ReportError {
    pub fn diagnostic(&self) -> Value {
        match self {
            ReportError::AmbiguousBounds(candidates) => json!({
                "error": "ambiguous_bounds",
                "message": self.to_string(),
                "candidates": candidates,
            }),
            ReportError::Chain(ChainError::NotAChain { .. }) => {
                json!({ "error": "not_a_chain", "message": self.to_string() })
            }
            _ => json!({ "error": "invalid_input", "message": self.to_string() }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
    CapExceeded,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
            Outcome::CapExceeded => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub value: Value,
    pub outcome: Outcome,
}

fn name(f: &FunctionTable, s: Subset) -> Value {
    json!(f.lattice().name(s))
}

fn side(s: Side) -> &'static str {
    match s {
        Side::Lower => "lower",
        Side::Upper => "upper",
    }
}

fn point(f: &FunctionTable, k: usize, a: usize) -> Value {
    json!(f.domain(k).elements[a])
}

/// Per-domain, per-point values `{"X1": {"A1": v, ...}, ...}`.
fn by_point(f: &FunctionTable, mut cell: impl FnMut(usize, usize) -> Value) -> Value {
    let mut out = Map::new();
    for (k, d) in f.domains().iter().enumerate() {
        let m: Map<String, Value> = d.elements.iter().enumerate().map(|(a, e)| (e.clone(), cell(k, a))).collect();
        out.insert(d.name.clone(), Value::Object(m));
    }
    Value::Object(out)
}

pub fn boundary_witness(f: &FunctionTable, w: &BoundaryWitness) -> Value {
    json!({
        "kind": "boundary",
        "coordinate": f.domain(w.coordinate).name,
        "tuple": f.format_tuple(&w.tuple),
        "side": side(w.side),
        "value": name(f, w.value),
        "bound": name(f, w.bound),
    })
}

pub fn pseudo_poly_witness(f: &FunctionTable, w: &PseudoPolyWitness) -> Value {
    match w {
        PseudoPolyWitness::Boundary(b) => boundary_witness(f, b),
        PseudoPolyWitness::PhiOrder(o) => json!({
            "kind": "phi_order",
            "coordinate": f.domain(o.coordinate).name,
            "point": point(f, o.coordinate, o.point),
            "x": f.format_tuple(&o.x),
            "y": f.format_tuple(&o.y),
            "joinand": name(f, o.joinand),
            "meetand": name(f, o.meetand),
        }),
    }
}

fn admissibility_witness(f: &FunctionTable, w: &AdmissibilityWitness) -> Value {
    let inequality = match w.side {
        Side::Lower => "Φ−(a) ≤ φ(a)",
        Side::Upper => "φ(a) ≤ Φ+(a)",
    };
    json!({
        "kind": "admissibility",
        "coordinate": f.domain(w.coordinate).name,
        "point": point(f, w.coordinate, w.point),
        "side": side(w.side),
        "violated": inequality,
        "phi": name(f, w.phi),
        "bound": name(f, w.bound),
    })
}

fn bc1_witness(f: &FunctionTable, w: &Bc1Witness) -> Value {
    json!({
        "kind": "inner_boundary",
        "coordinate": f.domain(w.coordinate).name,
        "point": point(f, w.coordinate, w.point),
        "side": side(w.side),
    })
}

fn bounds_value(f: &FunctionTable, k: usize, b: DomainBounds) -> Value {
    json!({ "zero": point(f, k, b.zero), "one": point(f, k, b.one) })
}

/// Candidate designated elements per domain, ignoring declarations.
fn inferred_bounds_value(f: &FunctionTable) -> Value {
    let inferred = infer_bounds(f);
    let list: Vec<Value> = inferred
        .per_coordinate
        .iter()
        .enumerate()
        .map(|(k, c)| {
            json!({
                "domain": f.domain(k).name,
                "candidates": c.iter().map(|&b| bounds_value(f, k, b)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(list)
}

/// Fills in missing designated elements according to `mode`.
///
/// `Ok(Err(k))` means no admissible choice exists for coordinate `k`.
fn resolve(
    f: &FunctionTable,
    mode: BoundsMode,
) -> Result<Result<(FunctionTable, Vec<&'static str>), usize>, ReportError> {
    let declared: Vec<Option<DomainBounds>> = (0..f.arity()).map(|k| f.bounds(k)).collect();
    if mode == BoundsMode::Explicit {
        f.require_bounds()?;
        return Ok(Ok((f.clone(), vec!["declared"; f.arity()])));
    }
    if declared.iter().all(Option::is_some) {
        return Ok(Ok((f.clone(), vec!["declared"; f.arity()])));
    }
    let inferred = infer_bounds(f);
    let mut chosen = Vec::with_capacity(f.arity());
    let mut sources = Vec::with_capacity(f.arity());
    let mut ambiguous = Vec::new();
    for k in 0..f.arity() {
        match declared[k] {
            Some(b) => {
                chosen.push(b);
                sources.push("declared");
            }
            None => match inferred.per_coordinate[k].as_slice() {
                [] => return Ok(Err(k)),
                [b] => {
                    chosen.push(*b);
                    sources.push("inferred");
                }
                many => {
                    ambiguous.push(json!({
                        "domain": f.domain(k).name,
                        "candidates": many.iter().map(|&b| bounds_value(f, k, b)).collect::<Vec<_>>(),
                    }));
                    chosen.push(many[0]);
                }
            },
        }
    }
    if !ambiguous.is_empty() {
        return Err(ReportError::AmbiguousBounds(Value::Array(ambiguous)));
    }
    Ok(Ok((f.with_bounds(&chosen)?, sources)))
}

fn phi_value(f: &FunctionTable, phi: &PhiVector) -> Value {
    phi_to_value(f, phi)
}

fn chain_active(f: &FunctionTable, mode: ChainMode) -> Result<bool, ReportError> {
    match mode {
        ChainMode::Off => Ok(false),
        ChainMode::Auto => Ok(f.lattice().is_chain()),
        ChainMode::Force => ChainContext::new(f.lattice()).map(|_| true).map_err(Into::into),
    }
}

fn names(f: &FunctionTable, set: &std::collections::BTreeSet<Subset>) -> Value {
    Value::Array(set.iter().map(|&s| name(f, s)).collect())
}

fn suff_value(f: &FunctionTable, phi: &PhiVector) -> Result<Value, ReportError> {
    let s = suff_conditions(f, phi)?;
    Ok(by_point(f, |k, a| {
        let c = s[k][a];
        json!({ "a": c.a, "b": c.b, "c": c.c })
    }))
}

fn chain_section(f: &FunctionTable, boundary_ok: bool, phi: Option<&PhiBounds>) -> Result<Value, ReportError> {
    let mut out = Map::new();
    let verdict = chain_characterization(f)?;
    out.insert(
        "characterization".into(),
        match &verdict {
            Verdict::Holds => json!({ "holds": true, "witness": null }),
            Verdict::Fails(ChainWitness::Boundary(w)) => json!({ "holds": false, "witness": boundary_witness(f, w) }),
            Verdict::Fails(ChainWitness::Order(w)) => json!({
                "holds": false,
                "witness": {
                    "kind": "chain_order",
                    "coordinate": f.domain(w.coordinate).name,
                    "point": point(f, w.coordinate, w.point),
                    "x": f.format_tuple(&w.x),
                    "y": f.format_tuple(&w.y),
                },
            }),
        },
    );
    if boundary_ok {
        let sets = all_wlu_sets(f)?;
        out.insert(
            "wlu".into(),
            by_point(f, |k, a| {
                let s = &sets[k][a];
                json!({ "W": names(f, &s.w), "L": names(f, &s.l), "U": names(f, &s.u) })
            }),
        );
        let generic = phi.expect("boundary holds");
        out.insert("phi_bounds_agree".into(), json!(chain_phi_bounds(f)? == *generic));
        out.insert(
            "suff".into(),
            json!({ "phi_minus": suff_value(f, &generic.minus)?, "phi_plus": suff_value(f, &generic.plus)? }),
        );
    }
    let free = free_phi_bounds(f);
    let mut fb = Map::new();
    fb.insert("phi_minus".into(), phi_value(f, &free.bounds.minus));
    fb.insert("phi_plus".into(), phi_value(f, &free.bounds.plus));
    if let Some(d) = &free.designated {
        let m: Map<String, Value> = d
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let pts = |v: &[usize]| v.iter().map(|&a| point(f, k, a)).collect::<Vec<_>>();
                (
                    f.domain(k).name.clone(),
                    json!({
                        "zero": point(f, k, e.zero),
                        "one": point(f, k, e.one),
                        "zero_candidates": pts(&e.zero_candidates),
                        "one_candidates": pts(&e.one_candidates),
                    }),
                )
            })
            .collect();
        fb.insert("designated".into(), Value::Object(m));
    }
    if let Some(generic) = phi {
        fb.insert("agrees_with_phi_bounds".into(), json!(free.bounds == *generic));
    }
    out.insert("free_bounds".into(), Value::Object(fb));
    Ok(Value::Object(out))
}

/// Everything `check` reports, plus the resolved table when the analysis
/// got that far.
struct Checked {
    value: Map<String, Value>,
    table: Option<FunctionTable>,
    pseudo_polynomial: bool,
}

fn run_check(input: &FunctionTable, opts: &Options) -> Result<Checked, ReportError> {
    let chain = chain_active(input, opts.chain)?;
    let mut v = Map::new();
    v.insert("schema".into(), json!(SCHEMA));
    v.insert("inferred_bounds".into(), inferred_bounds_value(input));
    let (f, sources) = match resolve(input, opts.bounds)? {
        Ok(r) => r,
        Err(k) => {
            v.insert("domains".into(), domains_to_value(input.domains()));
            v.insert("boundary_ok".into(), json!(false));
            v.insert("pseudo_polynomial".into(), json!(false));
            v.insert("witness".into(), json!({ "kind": "no_bounds", "coordinate": input.domain(k).name }));
            return Ok(Checked { value: v, table: None, pseudo_polynomial: false });
        }
    };
    v.insert("domains".into(), domains_to_value(f.domains()));
    v.insert("bounds_source".into(), json!(sources));
    let boundary = check_boundary(&f)?;
    v.insert("boundary_ok".into(), json!(boundary.holds()));
    let phi = boundary.holds().then(|| phi_bounds(&f)).transpose()?;
    v.insert("phi_minus".into(), phi.as_ref().map_or(Value::Null, |p| phi_value(&f, &p.minus)));
    v.insert("phi_plus".into(), phi.as_ref().map_or(Value::Null, |p| phi_value(&f, &p.plus)));
    let verdict = is_pseudo_polynomial(&f)?;
    v.insert("pseudo_polynomial".into(), json!(verdict.holds()));
    v.insert("witness".into(), verdict.witness().map_or(Value::Null, |w| pseudo_poly_witness(&f, w)));
    let q = boundary.holds().then(|| p0(&f)).transpose()?;
    v.insert("p0".into(), q.as_ref().map_or(Value::Null, |p| polynomial_value(&f, p)));
    if opts.trace && boundary.holds() {
        let mut lines = Vec::new();
        for s in [Side::Lower, Side::Upper] {
            for k in 0..f.arity() {
                for a in 0..f.domain(k).len() {
                    lines.push(json!(phi_trace(&f, k, a, s)?.render(&f)));
                }
            }
        }
        v.insert("trace".into(), Value::Array(lines));
    }
    if chain {
        v.insert("chain".into(), chain_section(&f, boundary.holds(), phi.as_ref())?);
    }
    Ok(Checked { value: v, pseudo_polynomial: verdict.holds(), table: Some(f) })
}

fn polynomial_value(f: &FunctionTable, p: &Polynomial) -> Value {
    let mut v = polynomial_to_value(f.lattice(), p);
    v["dnf"] = json!(p.to_dnf_string(f.lattice()));
    v
}

/// Boundary condition, extremal inner maps and the pseudo-polynomiality
/// verdict.
pub fn check(input: &FunctionTable, opts: &Options) -> Result<Report, ReportError> {
    let c = run_check(input, opts)?;
    let outcome = if c.pseudo_polynomial { Outcome::Positive } else { Outcome::Negative };
    let mut value = Map::new();
    value.insert("schema".into(), json!(SCHEMA));
    value.insert("command".into(), json!("check"));
    value.extend(c.value.into_iter().filter(|(k, _)| k != "schema"));
    Ok(Report { value: Value::Object(value), outcome })
}

/// The check report plus every factorization, up to the cap.
pub fn factorize(input: &FunctionTable, opts: &Options, fopts: &FactorizeOptions) -> Result<Report, ReportError> {
    let c = run_check(input, opts)?;
    let mut value = Map::new();
    value.insert("schema".into(), json!(SCHEMA));
    value.insert("command".into(), json!("factorize"));
    value.extend(c.value.into_iter().filter(|(k, _)| k != "schema"));
    let f = match (c.table, c.pseudo_polynomial) {
        (Some(f), true) => f,
        _ => {
            value.insert("factorizations".into(), json!([]));
            value.insert("counts".into(), json!({ "phi_vectors": 0, "total": 0, "capped": false }));
            return Ok(Report { value: Value::Object(value), outcome: Outcome::Negative });
        }
    };
    let mut outcome = Outcome::Positive;
    if fopts.count_only {
        let counts = count_factorizations(&f)?;
        value.insert("factorizations".into(), json!([]));
        value.insert(
            "counts".into(),
            json!({ "phi_vectors": counts.phi_vectors, "total": counts.total, "capped": false }),
        );
    } else {
        let e = collect_factorizations(&f, Some(fopts.cap))?;
        let y = f.lattice();
        let list: Vec<Value> = e
            .factorizations
            .iter()
            .enumerate()
            .map(|(i, fz)| {
                json!({
                    "index": i,
                    "phi": phi_value(&f, &fz.phi),
                    "p": polynomial_to_value(y, &fz.p),
                    "dnf": fz.p.to_dnf_string(y),
                    "sugeno": fz.p.is_sugeno(y),
                    "verified": fz.verified,
                })
            })
            .collect();
        value.insert("factorizations".into(), Value::Array(list));
        value.insert(
            "counts".into(),
            json!({ "phi_vectors": e.counts.phi_vectors, "total": e.counts.total, "capped": e.counts.capped }),
        );
        if e.counts.capped {
            value.insert("interval_sizes".into(), by_point(&f, |k, a| json!(e.interval_sizes[k][a])));
            value.insert("phi_upper_bound".into(), json!(e.phi_upper_bound.to_string()));
            if fopts.strict {
                outcome = Outcome::CapExceeded;
            }
        }
        if e.factorizations.iter().any(|fz| !fz.verified) {
            outcome = Outcome::Negative;
        }
    }
    Ok(Report { value: Value::Object(value), outcome })
}

/// Checks one factorization against the table.
pub fn verify(input: &FunctionTable, opts: &Options, phi: &PhiVector, p: &Polynomial) -> Result<Report, ReportError> {
    let f = match resolve(input, opts.bounds)? {
        Ok((f, _)) => f,
        Err(k) => {
            return Err(FactorError::BoundsMissing { coordinate: k }.into());
        }
    };
    let v = verify_factorization(&f, phi, p)?;
    let mut value = Map::new();
    value.insert("schema".into(), json!(SCHEMA));
    value.insert("command".into(), json!("verify"));
    value.insert("verified".into(), json!(v.holds));
    value.insert(
        "route".into(),
        json!(match v.route {
            Route::Interpolation => "interpolation",
            Route::Exhaustive => "exhaustive",
        }),
    );
    value.insert(
        "witness".into(),
        v.tuple_witness.as_ref().map_or(Value::Null, |w| {
            json!({
                "kind": "tuple",
                "tuple": f.format_tuple(&w.tuple),
                "expected": name(&f, w.expected),
                "got": name(&f, w.got),
            })
        }),
    );
    value
        .insert("admissibility".into(), v.admissibility.as_ref().map_or(Value::Null, |w| admissibility_witness(&f, w)));
    value.insert("inner_boundary".into(), v.bc1.as_ref().map_or(Value::Null, |w| bc1_witness(&f, w)));
    let outcome = if v.holds { Outcome::Positive } else { Outcome::Negative };
    Ok(Report { value: Value::Object(value), outcome })
}

fn render_maps(out: &mut String, label: &str, v: &Value) {
    if let Some(m) = v.as_object() {
        for (d, pts) in m {
            let cells: Vec<String> = pts
                .as_object()
                .map(|p| p.iter().map(|(e, y)| format!("{e}:{}", y.as_str().unwrap_or("?"))).collect())
                .unwrap_or_default();
            out.push_str(&format!("{label} {d}: {}\n", cells.join(" ")));
        }
    }
}

/// A short human-readable summary derived from a report.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let flag = |k: &str| report.get(k).and_then(Value::as_bool);
    if let Some(b) = flag("boundary_ok") {
        out.push_str(&format!("boundary condition: {}\n", if b { "holds" } else { "fails" }));
    }
    if let Some(v) = report.get("phi_minus") {
        render_maps(&mut out, "Φ−", v);
    }
    if let Some(v) = report.get("phi_plus") {
        render_maps(&mut out, "Φ+", v);
    }
    if let Some(b) = flag("pseudo_polynomial") {
        out.push_str(&format!("pseudo-polynomial: {}\n", if b { "yes" } else { "no" }));
    }
    if let Some(w) = report.get("witness").filter(|w| !w.is_null()) {
        out.push_str(&format!("witness: {w}\n"));
    }
    if let Some(p) = report.get("p0").and_then(|p| p.get("dnf")) {
        out.push_str(&format!("p0 = {}\n", p.as_str().unwrap_or("?")));
    }
    if let Some(lines) = report.get("trace").and_then(Value::as_array) {
        for l in lines {
            out.push_str(&format!("{}\n", l.as_str().unwrap_or("")));
        }
    }
    if let Some(list) = report.get("factorizations").and_then(Value::as_array) {
        for fz in list {
            out.push_str(&format!(
                "#{} p = {}{}\n",
                fz["index"],
                fz["dnf"].as_str().unwrap_or("?"),
                if fz["sugeno"] == json!(true) { "  (Sugeno)" } else { "" }
            ));
            render_maps(&mut out, "  φ", &fz["phi"]);
        }
    }
    if let Some(c) = report.get("counts") {
        out.push_str(&format!(
            "counts: {} inner-map vectors, {} factorizations{}\n",
            c["phi_vectors"],
            c["total"],
            if c["capped"] == json!(true) { " (capped)" } else { "" }
        ));
    }
    if let Some(b) = flag("verified") {
        out.push_str(&format!("verified: {}\n", if b { "yes" } else { "no" }));
    }
    out
}
