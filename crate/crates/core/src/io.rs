//! JSON formats for curves and every derived artifact.
//!
//! Field elements are arrays of exact rational strings, one per coordinate
//! over the declared tower (lowest level varying fastest). Every artifact
//! carries `kind` and `curve_hash`.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{Csa, RElement, RhoTable, TrivMode, Trivialisation};
use crate::curve::{Curve, Point, TorsionTable};
use crate::error::{Error, Result};
use crate::field::{parse_rational, tower_extend, ExactMatrix, FieldElement, FieldTower};
use crate::geometry::{DescentOutput, PlaneCurveEquation, QuadricSystem};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("`{what}` must be an array")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("`{what}` must be a non-negative integer")))
}

pub fn element_to_json(e: &FieldElement) -> Value {
    json!(e.to_strings())
}

/// Accepts a coordinate array, or a single rational as a string or integer.
pub fn element_from_json(tower: &FieldTower, v: &Value) -> Result<FieldElement> {
    match v {
        Value::String(s) => Ok(tower.from_rational(parse_rational(s)?)),
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| perr(format!("not an integer: {n}")))?;
            Ok(tower.from_int(i))
        }
        Value::Array(a) => {
            if a.len() != tower.degree() {
                return Err(perr(format!("element has {} coordinates, field has degree {}", a.len(), tower.degree())));
            }
            let c = a
                .iter()
                .map(|x| x.as_str().ok_or_else(|| perr("coordinates must be strings")).and_then(parse_rational))
                .collect::<Result<Vec<_>>>()?;
            Ok(FieldElement::from_coords(tower, c))
        }
        _ => Err(perr("field element must be an array of rational strings")),
    }
}

fn elements_from_json(tower: &FieldTower, v: &Value, what: &str) -> Result<Vec<FieldElement>> {
    array(v, what)?.iter().map(|x| element_from_json(tower, x)).collect()
}

pub fn tower_to_json(t: &FieldTower) -> Value {
    let levels: Vec<Value> = (1..=t.depth())
        .map(|l| {
            let gens = t.generator_names();
            json!({
                "gen": gens[l - 1],
                "minpoly": t.minpoly(l).iter().map(element_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(levels)
}

/// Rebuilds a tower, certifying each minimal polynomial.
pub fn tower_from_json(v: &Value) -> Result<FieldTower> {
    let mut t = FieldTower::rationals();
    for level in array(v, "field")? {
        let gen = field(level, "gen")?.as_str().ok_or_else(|| perr("`gen` must be a string"))?;
        let mp = elements_from_json(&t, field(level, "minpoly")?, "minpoly")?;
        t = tower_extend(&t, gen, &mp)?;
    }
    Ok(t)
}

pub fn curve_to_json(c: &Curve) -> Value {
    json!({
        "kind": "curve",
        "field": tower_to_json(c.field()),
        "a": element_to_json(c.a()),
        "b": element_to_json(c.b()),
    })
}

pub fn curve_from_json(v: &Value) -> Result<Curve> {
    expect_kind(v, "curve")?;
    let t = tower_from_json(field(v, "field")?)?;
    let a = element_from_json(&t, field(v, "a")?)?;
    let b = element_from_json(&t, field(v, "b")?)?;
    Curve::new(&t, a, b)
}

/// SHA-256 of the canonical serialisation of the curve.
pub fn curve_hash(c: &Curve) -> String {
    hex::encode(Sha256::digest(curve_to_json(c).to_string().as_bytes()))
}

fn expect_kind(v: &Value, kind: &str) -> Result<()> {
    match v.get("kind").and_then(|k| k.as_str()) {
        Some(k) if k == kind => Ok(()),
        Some(k) => Err(perr(format!("expected a `{kind}` file, got `{k}`"))),
        None => Err(perr(format!("expected a `{kind}` file, no `kind` field"))),
    }
}

pub fn kind_of(v: &Value) -> Result<&str> {
    v.get("kind").and_then(|k| k.as_str()).ok_or_else(|| perr("missing field `kind`"))
}

/// Checks the artifact's `curve_hash` against `c`.
pub fn check_hash(c: &Curve, v: &Value) -> Result<()> {
    let found = field(v, "curve_hash")?.as_str().ok_or_else(|| perr("`curve_hash` must be a string"))?;
    let expected = curve_hash(c);
    if found != expected {
        return Err(Error::CurveMismatch { expected, found: found.to_string() });
    }
    Ok(())
}

fn artifact(c: &Curve, kind: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    m.insert("curve_hash".into(), json!(curve_hash(c)));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

pub fn point_to_json(p: &Point) -> Value {
    match p {
        Point::Infinity => Value::Null,
        Point::Affine { x, y } => json!([element_to_json(x), element_to_json(y)]),
    }
}

pub fn point_from_json(tower: &FieldTower, v: &Value) -> Result<Point> {
    if v.is_null() {
        return Ok(Point::Infinity);
    }
    let a = array(v, "point")?;
    if a.len() != 2 {
        return Err(perr("a point is [x, y] or null"));
    }
    Ok(Point::affine(element_from_json(tower, &a[0])?, element_from_json(tower, &a[1])?))
}

pub fn torsion_to_json(table: &TorsionTable) -> Value {
    let (t1, t2) = table.basis();
    artifact(
        table.curve(),
        "torsion",
        json!({
            "n": table.n(),
            "basis": [t1, t2],
            "zeta": element_to_json(table.zeta()),
            "points": table.points().iter().map(point_to_json).collect::<Vec<_>>(),
        }),
    )
}

fn grid_to_json(n2: usize, get: impl Fn(usize, usize) -> FieldElement) -> Value {
    Value::Array((0..n2).map(|a| Value::Array((0..n2).map(|b| element_to_json(&get(a, b))).collect())).collect())
}

fn grid_from_json(tower: &FieldTower, n2: usize, v: &Value) -> Result<RhoTable> {
    let rows = array(v, "entries")?;
    if rows.len() != n2 {
        return Err(Error::DimensionMismatch(format!("expected {n2} rows, got {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(n2 * n2);
    for r in rows {
        let r = elements_from_json(tower, r, "entries")?;
        if r.len() != n2 {
            return Err(Error::DimensionMismatch(format!("expected {n2} columns, got {}", r.len())));
        }
        entries.extend(r);
    }
    RhoTable::new(n2, entries)
}

pub fn rho_to_json(table: &TorsionTable, rho: &RhoTable) -> Value {
    let (t1, t2) = table.basis();
    artifact(
        table.curve(),
        "rho",
        json!({"basis": [t1, t2], "entries": grid_to_json(rho.size(), |a, b| rho.get(a, b).clone())}),
    )
}

/// Reads a `rho` file written for `table`.
pub fn rho_from_json(table: &TorsionTable, v: &Value) -> Result<RhoTable> {
    expect_kind(v, "rho")?;
    check_hash(table.curve(), v)?;
    check_basis(table, v)?;
    grid_from_json(table.curve().field(), table.len(), field(v, "entries")?)
}

fn check_basis(table: &TorsionTable, v: &Value) -> Result<()> {
    let b = array(field(v, "basis")?, "basis")?;
    let (t1, t2) = table.basis();
    if b.len() != 2 || usize_of(&b[0], "basis")? != t1 || usize_of(&b[1], "basis")? != t2 {
        return Err(perr(format!("basis must be [{t1}, {t2}]")));
    }
    Ok(())
}

pub fn relement_to_json(c: &Curve, z: &RElement) -> Value {
    artifact(c, "relement", json!({"values": z.values().iter().map(element_to_json).collect::<Vec<_>>()}))
}

/// Accepts a `relement` file or a bare array of values.
pub fn relement_from_json(c: &Curve, v: &Value) -> Result<RElement> {
    if v.is_array() {
        return Ok(RElement::new(elements_from_json(c.field(), v, "values")?));
    }
    expect_kind(v, "relement")?;
    check_hash(c, v)?;
    Ok(RElement::new(elements_from_json(c.field(), field(v, "values")?, "values")?))
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(element_to_json).collect())).collect())
}

pub fn matrix_from_json(tower: &FieldTower, v: &Value) -> Result<ExactMatrix> {
    let rows =
        array(v, "matrix")?.iter().map(|r| elements_from_json(tower, r, "matrix row")).collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(tower, rows)
}

fn quadrics_body(q: &QuadricSystem) -> Value {
    json!({
        "labels": q.labels(),
        "monomials": q.monomials().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "forms": q.forms.iter().map(|f| f.iter().map(element_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// A quadrics file also records the `rho` it was built from.
pub fn quadrics_to_json(table: &TorsionTable, rho: &RhoTable, q: &QuadricSystem) -> Value {
    let mut v = artifact(table.curve(), "quadrics", quadrics_body(q));
    v["rho"] = grid_to_json(rho.size(), |a, b| rho.get(a, b).clone());
    v
}

fn quadrics_from_body(c: &Curve, v: &Value) -> Result<QuadricSystem> {
    let dim = array(field(v, "labels")?, "labels")?.len();
    let forms = array(field(v, "forms")?, "forms")?
        .iter()
        .map(|f| elements_from_json(c.field(), f, "form"))
        .collect::<Result<Vec<_>>>()?;
    let q = QuadricSystem { tower: c.field().clone(), dim, forms };
    if q.forms.iter().any(|f| f.len() != q.num_monomials()) {
        return Err(Error::DimensionMismatch("quadric has the wrong number of coefficients".into()));
    }
    Ok(q)
}

pub fn quadrics_from_json(table: &TorsionTable, v: &Value) -> Result<(RhoTable, QuadricSystem)> {
    expect_kind(v, "quadrics")?;
    let c = table.curve();
    check_hash(c, v)?;
    let rho = grid_from_json(c.field(), table.len(), field(v, "rho")?)?;
    Ok((rho, quadrics_from_body(c, v)?))
}

fn csa_body(csa: &Csa) -> Value {
    let cert = csa.certification();
    json!({
        "n": csa.n(),
        "constants": grid_to_json(csa.dim(), |a, b| csa.constant(a, b).clone()),
        "certification": {
            "associative": cert.associative,
            "unit_index": cert.unit_index,
            "center_dimension": cert.center_dimension,
            "trace_form_rank": cert.trace_form_rank,
        },
    })
}

pub fn csa_to_json(c: &Curve, csa: &Csa) -> Value {
    artifact(c, "csa", csa_body(csa))
}

/// Re-certifies the stored structure constants over the group of `table`.
fn csa_from_body(table: &TorsionTable, v: &Value) -> Result<Csa> {
    let n2 = table.len();
    let c = grid_from_json(table.curve().field(), n2, field(v, "constants")?)?;
    let sum = (0..n2 * n2).map(|i| table.add(i / n2, i % n2)).collect();
    let csa = Csa::from_constants(table.curve().field().clone(), table.n(), sum, c)?;
    let cert = field(v, "certification")?;
    let rec = csa.certification();
    let stored = (
        cert.get("associative").and_then(|x| x.as_bool()),
        cert.get("unit_index").and_then(|x| x.as_u64()),
        cert.get("center_dimension").and_then(|x| x.as_u64()),
        cert.get("trace_form_rank").and_then(|x| x.as_u64()),
    );
    let actual = (
        Some(rec.associative),
        Some(rec.unit_index as u64),
        Some(rec.center_dimension as u64),
        Some(rec.trace_form_rank as u64),
    );
    if stored != actual {
        return Err(Error::CertificationFailed { what: "stored certification record".into(), witness: vec![] });
    }
    Ok(csa)
}

pub fn csa_from_json(table: &TorsionTable, v: &Value) -> Result<Csa> {
    expect_kind(v, "csa")?;
    check_hash(table.curve(), v)?;
    csa_from_body(table, v)
}

fn triv_body(t: &Trivialisation) -> Value {
    json!({"mode": t.mode.name(), "images": t.images.iter().map(matrix_to_json).collect::<Vec<_>>()})
}

/// A trivialisation file stores the structure constants it trivialises.
pub fn triv_to_json(c: &Curve, csa: &Csa, t: &Trivialisation) -> Value {
    let mut v = artifact(c, "trivialisation", triv_body(t));
    v["constants"] = grid_to_json(csa.dim(), |a, b| csa.constant(a, b).clone());
    v
}

fn triv_from_body(c: &Curve, v: &Value) -> Result<Trivialisation> {
    let mode =
        field(v, "mode")?.as_str().and_then(TrivMode::parse).ok_or_else(|| perr("unknown trivialisation mode"))?;
    let images = array(field(v, "images")?, "images")?
        .iter()
        .map(|m| matrix_from_json(c.field(), m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trivialisation { mode, images })
}

/// The trivialisation and the algebra it claims to trivialise; neither is
/// certified against the other here.
pub fn triv_from_json(table: &TorsionTable, v: &Value) -> Result<(Csa, Trivialisation)> {
    expect_kind(v, "trivialisation")?;
    check_hash(table.curve(), v)?;
    let n2 = table.len();
    let consts = grid_from_json(table.curve().field(), n2, field(v, "constants")?)?;
    let sum = (0..n2 * n2).map(|i| table.add(i / n2, i % n2)).collect();
    let csa = Csa::from_constants(table.curve().field().clone(), table.n(), sum, consts)?;
    Ok((csa, triv_from_body(table.curve(), v)?))
}

pub fn equation_to_json(e: &PlaneCurveEquation) -> Value {
    json!({
        "monomials": PlaneCurveEquation::monomial_names(),
        "coeffs": e.coeffs.iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

pub fn equation_from_json(c: &Curve, v: &Value) -> Result<PlaneCurveEquation> {
    if field(v, "monomials")? != &json!(PlaneCurveEquation::monomial_names()) {
        return Err(perr("unexpected monomial order"));
    }
    PlaneCurveEquation::new(elements_from_json(c.field(), field(v, "coeffs")?, "coeffs")?)
}

pub fn descent_to_json(c: &Curve, table: &TorsionTable, out: &DescentOutput, triv: &Trivialisation) -> Value {
    let r = &out.report;
    let mut triv_v = triv_body(triv);
    triv_v["constants"] = grid_to_json(out.csa.dim(), |a, b| out.csa.constant(a, b).clone());
    artifact(
        c,
        "descent",
        json!({
            "rho": rho_to_json(table, &out.rho),
            "quadrics": quadrics_body(&out.quadrics),
            "csa": csa_body(&out.csa),
            "trivialisation": triv_v,
            "gamma": {
                "field": tower_to_json(&out.gamma.tower),
                "values": out.gamma.gamma.iter().map(element_to_json).collect::<Vec<_>>(),
            },
            "plane_curve": equation_to_json(&out.equation),
            "status": if r.all_pass() { "all checks pass" } else { "checks failed" },
            "report": {
                "all_pass": r.all_pass(),
                "checks": r.checks.iter().map(|ch| json!({"name": ch.name, "pass": ch.pass, "detail": ch.detail})).collect::<Vec<_>>(),
                "sample_x": r.sample_x,
                "fit_points": r.fit_points,
                "held_out": r.held_out,
                "kernel_dimension": r.kernel_dimension,
                "rank": r.rank,
            },
            "seed": r.seed,
        }),
    )
}

/// Parts of a descent file needed to re-run it.
pub struct StoredDescent {
    pub rho: RhoTable,
    pub quadrics: QuadricSystem,
    pub csa: Csa,
    pub trivialisation: Trivialisation,
    pub equation: PlaneCurveEquation,
    pub seed: u64,
}

pub fn descent_from_json(table: &TorsionTable, v: &Value) -> Result<StoredDescent> {
    expect_kind(v, "descent")?;
    let c = table.curve();
    check_hash(c, v)?;
    let tv = field(v, "trivialisation")?;
    Ok(StoredDescent {
        rho: rho_from_json(table, field(v, "rho")?)?,
        quadrics: quadrics_from_body(c, field(v, "quadrics")?)?,
        csa: csa_from_body(table, field(v, "csa")?)?,
        trivialisation: triv_from_body(c, tv)?,
        equation: equation_from_json(c, field(v, "plane_curve")?)?,
        seed: field(v, "seed")?.as_u64().ok_or_else(|| perr("`seed` must be an integer"))?,
    })
}
