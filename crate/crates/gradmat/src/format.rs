//! JSON and command-line text formats for fields, groups, matrices, gradings
//! and Galois extensions.
//!
//! Scalars are strings: `"a/b"` over Q, `"r mod p"` over a prime field and
//! `"c in GF(q)"` over a larger finite field, where `c` is the base-`p`
//! digit code of the element. Parsers also accept plain integers and
//! fractions in any field, mapped through the prime subfield.

use std::collections::BTreeMap;

use gradmat_core::algebra::CommutativeAlgebra;
use gradmat_core::descent::{FormInvariant, GaloisExtension, GaloisReport};
use gradmat_core::field::{Field, Scalar};
use gradmat_core::graded::{GradedVectorSpace, Grading, GradingReport, Violation};
use gradmat_core::group::{FiniteAbelianGroup, GroupElement};
use gradmat_core::matrix::Matrix;
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::error::{input, CliError};

type Result<T> = std::result::Result<T, CliError>;

/// `Q`, `GF(p)`, `GF(q)` or `GF(p^s)`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| input!("field must be Q or GF(q), got {t:?}"))?;
    let order = match inner.split_once('^') {
        Some((p, s)) => {
            let p: u64 = parse_int(p)?;
            let s: u32 = parse_int(s)?;
            p.checked_pow(s)
                .ok_or_else(|| input!("field order {p}^{s} overflows"))?
        }
        None => parse_int(inner)?,
    };
    Ok(Field::galois(order)?)
}

pub fn field_name(field: &Field) -> String {
    match field.order() {
        None => "Q".to_string(),
        Some(q) => format!("GF({q})"),
    }
}

fn parse_int<T: std::str::FromStr>(text: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| input!("expected an integer, got {:?}", text.trim()))
}

fn parse_bigint(text: &str) -> Result<BigInt> {
    parse_int(text)
}

pub fn format_scalar(field: &Field, x: &Scalar) -> String {
    match (field, x) {
        (Field::Rational, Scalar::Rational(r)) => format!("{}/{}", r.numer(), r.denom()),
        (Field::Finite(ff), Scalar::Finite(c)) if ff.degree() == 1 => format!("{c} mod {}", ff.characteristic()),
        (Field::Finite(ff), Scalar::Finite(c)) => format!("{c} in GF({})", ff.order()),
        _ => panic!("scalar {x} does not belong to {field}"),
    }
}

pub fn parse_scalar(field: &Field, text: &str) -> Result<Scalar> {
    let t = text.trim();
    if let Some((r, p)) = t.split_once(" mod ") {
        let p: u64 = parse_int(p)?;
        match field.finite() {
            Some(ff) if ff.degree() == 1 && ff.characteristic() == p => {}
            _ => return Err(input!("{t:?} is not an element of {}", field_name(field))),
        }
        return Ok(field.from_ratio(&parse_bigint(r)?, &BigInt::from(1))?);
    }
    if let Some((c, q)) = t.split_once(" in ") {
        if parse_field(q)?.order() != field.order() || field.order().is_none() {
            return Err(input!("{t:?} is not an element of {}", field_name(field)));
        }
        return Ok(field.from_code(parse_int(c)?)?);
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (parse_bigint(a)?, parse_bigint(b)?),
        None => (parse_bigint(t)?, BigInt::from(1)),
    };
    Ok(field.from_ratio(&num, &den)?)
}

fn scalar_from_json(field: &Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(field, s),
        Value::Number(n) => parse_scalar(field, &n.to_string()),
        _ => Err(input!("scalar must be a string or an integer, got {v}")),
    }
}

pub fn vector_to_json(field: &Field, v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_scalar(field, x))).collect())
}

fn vector_from_json(field: &Field, v: &Value) -> Result<Vec<Scalar>> {
    as_array(v, "vector")?
        .iter()
        .map(|x| scalar_from_json(field, x))
        .collect()
}

pub fn matrix_to_json(field: &Field, m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_to_json(field, m.row(r))).collect())
}

pub fn matrix_from_json(field: &Field, v: &Value) -> Result<Matrix> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|row| vector_from_json(field, row))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| input!("{what} must be a JSON array, got {v}"))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| input!("{what} must be a JSON object"))
}

fn field_of<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| input!("missing key {key:?}"))
}

/// Arbitrary-size integers are emitted as JSON numbers.
pub fn big_number(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse().expect("decimal digits form a JSON number"))
}

/// `C2`, `C2xC2`, `C2×C4`, `2,4` or `[2,4]`, in invariant-factor form.
pub fn parse_group(text: &str) -> Result<FiniteAbelianGroup> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let factors = if t.contains(['C', 'c']) {
        t.split(['x', '×', '*'])
            .map(|f| {
                let f = f.trim();
                let n = f.strip_prefix('C').or_else(|| f.strip_prefix('c'));
                n.ok_or_else(|| input!("group factor must look like Cn, got {f:?}"))
                    .and_then(parse_int)
            })
            .collect::<Result<Vec<u64>>>()?
    } else {
        t.split(',').map(parse_int).collect::<Result<Vec<u64>>>()?
    };
    Ok(FiniteAbelianGroup::new(&factors)?)
}

pub fn group_to_json(group: &FiniteAbelianGroup) -> Value {
    json!({ "factors": group.factors() })
}

pub fn group_from_json(v: &Value) -> Result<FiniteAbelianGroup> {
    let factors = as_array(field_of(as_object(v, "group")?, "factors")?, "factors")?
        .iter()
        .map(|f| {
            f.as_u64()
                .ok_or_else(|| input!("group factor must be a positive integer, got {f}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteAbelianGroup::new(&factors)?)
}

pub fn element_to_json(g: &GroupElement) -> Value {
    json!(g.coords())
}

/// Component keys: coordinates joined by commas, as in `"1,0"`.
pub fn element_key(g: &GroupElement) -> String {
    g.to_string()
}

fn parse_coords(group: &FiniteAbelianGroup, text: &str) -> Result<GroupElement> {
    let t = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let coords = t.split(',').map(parse_int).collect::<Result<Vec<i64>>>()?;
    Ok(group.element_signed(&coords)?)
}

pub fn parse_element_key(group: &FiniteAbelianGroup, text: &str) -> Result<GroupElement> {
    parse_coords(group, text)
}

/// A comma-separated list of elements. In a cyclic group, elements are bare
/// integers; otherwise parenthesized tuples such as `(1,0),(0,1)`. `e` is the
/// identity and `s` the first generator.
pub fn parse_elements(group: &FiniteAbelianGroup, text: &str) -> Result<Vec<GroupElement>> {
    let t = text.trim();
    if t.is_empty() {
        return Err(input!("empty element list"));
    }
    let mut out = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ']);
        if rest.is_empty() {
            break;
        }
        let (token, tail) = if rest.starts_with('(') {
            let close = rest.find(')').ok_or_else(|| input!("unclosed tuple in {t:?}"))?;
            (&rest[..=close], &rest[close + 1..])
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            (&rest[..end], &rest[end..])
        };
        out.push(parse_element_token(group, token.trim())?);
        rest = tail;
    }
    Ok(out)
}

fn parse_element_token(group: &FiniteAbelianGroup, token: &str) -> Result<GroupElement> {
    match token {
        "e" => Ok(group.identity()),
        "s" | "σ" if group.rank() == 1 => Ok(group.generator(0)),
        _ if token.starts_with('(') => parse_coords(group, token),
        _ if group.rank() == 1 => Ok(group.element_signed(&[parse_int(token)?])?),
        _ => Err(input!(
            "element {token:?} needs a coordinate tuple in a group of rank {}",
            group.rank()
        )),
    }
}

pub fn elements_to_json(elements: &[GroupElement]) -> Value {
    Value::Array(elements.iter().map(element_to_json).collect())
}

pub fn grading_to_json(a: &Grading) -> Value {
    let f = a.field();
    let mut components = Map::new();
    for (g, basis) in a.components() {
        let mats = basis.iter().map(|b| matrix_to_json(f, b)).collect();
        components.insert(element_key(g), Value::Array(mats));
    }
    json!({
        "group": group_to_json(a.group()),
        "field": field_name(f),
        "m": a.size(),
        "components": components,
    })
}

/// Reads a Grading object, or any object carrying one under `"grading"`.
pub fn grading_from_json(v: &Value) -> Result<Grading> {
    let obj = as_object(v, "grading")?;
    if !obj.contains_key("components") {
        if let Some(inner) = obj.get("grading") {
            return grading_from_json(inner);
        }
    }
    let group = group_from_json(field_of(obj, "group")?)?;
    let field = parse_field(
        field_of(obj, "field")?
            .as_str()
            .ok_or_else(|| input!("field must be a string"))?,
    )?;
    let m = field_of(obj, "m")?
        .as_u64()
        .ok_or_else(|| input!("m must be a positive integer"))? as usize;
    let mut components = BTreeMap::new();
    for (key, mats) in as_object(field_of(obj, "components")?, "components")? {
        let g = parse_element_key(&group, key)?;
        let basis = as_array(mats, "component")?
            .iter()
            .map(|x| matrix_from_json(&field, x))
            .collect::<Result<Vec<_>>>()?;
        if components.insert(g.clone(), basis).is_some() {
            return Err(input!("component ({g}) is listed twice"));
        }
    }
    Ok(Grading::new(group, field, m, components)?)
}

pub fn graded_space_to_json(v: &GradedVectorSpace) -> Value {
    elements_to_json(v.degrees())
}

pub fn report_to_json(report: &GradingReport) -> Value {
    match report {
        GradingReport::Pass => json!({ "result": "pass" }),
        GradingReport::Fail(v) => json!({
            "result": "fail",
            "axiom": v.axiom().name(),
            "detail": violation_detail(v),
        }),
    }
}

fn violation_detail(v: &Violation) -> String {
    match v {
        Violation::DimensionCount { found, expected } => {
            format!("components span dimension {found}, expected {expected}")
        }
        Violation::DependentMatrix { degree, index } => {
            format!("matrix {index} of component ({degree}) depends on the others")
        }
        Violation::IdentityOutsideNeutral => "identity is not in the neutral component".to_string(),
        Violation::ProductEscapes { left, right, target } => format!(
            "product of matrix {} of ({}) and matrix {} of ({}) leaves component ({target})",
            left.1, left.0, right.1, right.0
        ),
    }
}

pub fn galois_report_to_json(r: &GaloisReport) -> Value {
    json!({
        "fixed_dimension": r.fixed_dimension,
        "j_rank": r.j_rank,
        "j_shape": [r.j_rows, r.j_cols],
        "is_galois": r.is_galois(),
    })
}

pub fn invariant_to_json(field: &Field, inv: &FormInvariant) -> Value {
    json!({ "class": format_scalar(field, &inv.class), "split": inv.split })
}

pub fn extension_to_json(e: &GaloisExtension) -> Value {
    let f = e.field();
    let l = e.algebra();
    let table: Vec<Value> = l
        .table()
        .iter()
        .map(|row| Value::Array(row.iter().map(|v| vector_to_json(f, v)).collect()))
        .collect();
    let mut action = Map::new();
    for (g, m) in e.actions() {
        action.insert(element_key(&g), matrix_to_json(f, m));
    }
    json!({
        "base": field_name(f),
        "dim": e.dim(),
        "mul_table": table,
        "unit": vector_to_json(f, l.unit()),
        "group": group_to_json(e.group()),
        "action": action,
    })
}

pub fn extension_from_json(v: &Value) -> Result<GaloisExtension> {
    let obj = as_object(v, "extension")?;
    let field = parse_field(
        field_of(obj, "base")?
            .as_str()
            .ok_or_else(|| input!("base must be a string"))?,
    )?;
    let dim = field_of(obj, "dim")?
        .as_u64()
        .ok_or_else(|| input!("dim must be a positive integer"))? as usize;
    let table = as_array(field_of(obj, "mul_table")?, "mul_table")?
        .iter()
        .map(|row| {
            as_array(row, "mul_table row")?
                .iter()
                .map(|x| vector_from_json(&field, x))
                .collect()
        })
        .collect::<Result<Vec<Vec<Vec<Scalar>>>>>()?;
    let unit = match obj.get("unit") {
        Some(u) => vector_from_json(&field, u)?,
        None => (0..dim)
            .map(|i| if i == 0 { field.one() } else { field.zero() })
            .collect(),
    };
    if unit.len() != dim {
        return Err(input!("unit has {} coordinates, dim is {dim}", unit.len()));
    }
    let algebra = CommutativeAlgebra::new(field.clone(), table, unit)?;
    let group = group_from_json(field_of(obj, "group")?)?;
    let action = as_object(field_of(obj, "action")?, "action")?
        .iter()
        .map(|(key, m)| Ok((parse_element_key(&group, key)?, matrix_from_json(&field, m)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GaloisExtension::new(algebra, group, action)?)
}
