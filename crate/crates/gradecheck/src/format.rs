//! JSON files for algebras and gradings.
//!
//! Scalars are written as a pair of strings `"re", "im"`, each an integer or
//! a fraction `p/q` in lowest terms. Emission is canonical: keys sorted,
//! entries sorted by index, zero coefficients omitted, one entry per line.
//!
//! Gradings carry no change of basis, so a grading with a frame is written
//! together with its algebra rebased onto the homogeneous basis.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use gradecheck_core::algebra::Algebra;
use gradecheck_core::field::{Rational, Scalar, SVec};
use gradecheck_core::grading::{AbelianGroup, Grading, GroupElement};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{at}: {msg}")]
    Invalid { at: String, msg: String },
    /// The file is well formed but the algebra fails its axioms.
    #[error("{0}")]
    Algebra(gradecheck_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn invalid(at: impl Into<String>, msg: impl Into<String>) -> FormatError {
    FormatError::Invalid { at: at.into(), msg: msg.into() }
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| invalid(at, format!("missing key {key:?}")))
}

fn as_index(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| invalid(at, format!("expected a nonnegative integer, got {v}")))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(at, "expected an array"))
}

fn rational(v: &Value, at: &str) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| invalid(at, format!("expected a fraction string, got {v}")))?;
    s.parse().map_err(|e: gradecheck_core::Error| invalid(at, e.to_string()))
}

fn scalar(re: &Value, im: &Value, at: &str) -> Result<Scalar> {
    Ok(Scalar::new(rational(re, at)?, rational(im, at)?))
}

fn check_range(i: usize, dim: usize, at: &str, what: &str) -> Result<()> {
    if i >= dim {
        return Err(invalid(at, format!("{what} index {i} out of range for dimension {dim}")));
    }
    Ok(())
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc.as_object().ok_or_else(|| invalid("document", "expected an object"))?;
    let name = field(obj, "name", "document")?.as_str().ok_or_else(|| invalid("name", "expected a string"))?.to_string();
    let dim = as_index(field(obj, "dim", "document")?, "dim")?;
    let basis = as_array(field(obj, "basis", "document")?, "basis")?;
    let labels: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(k, v)| v.as_str().map(String::from).ok_or_else(|| invalid(format!("basis[{k}]"), "expected a string")))
        .collect::<Result<_>>()?;
    if labels.len() != dim {
        return Err(invalid("basis", format!("{} labels for dimension {dim}", labels.len())));
    }
    if dim == 0 {
        return Err(invalid("dim", "dimension must be positive"));
    }

    let mut terms: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
    let mut seen = BTreeSet::new();
    for (t, entry) in as_array(field(obj, "structure", "document")?, "structure")?.iter().enumerate() {
        let at = format!("structure[{t}]");
        let e = as_array(entry, &at)?;
        if e.len() != 5 {
            return Err(invalid(&at, "expected [i, j, k, re, im]"));
        }
        let (i, j, k) = (as_index(&e[0], &at)?, as_index(&e[1], &at)?, as_index(&e[2], &at)?);
        let at = format!("{at} = ({i}, {j}, {k})");
        for x in [i, j, k] {
            check_range(x, dim, &at, "basis")?;
        }
        if !seen.insert((i, j, k)) {
            return Err(invalid(&at, "duplicate structure constant"));
        }
        let c = scalar(&e[3], &e[4], &at)?;
        if c.is_zero() {
            return Err(invalid(&at, "zero coefficients are omitted in canonical form"));
        }
        terms[i * dim + j].push((k, c));
    }
    let table = terms.into_iter().map(SVec::from_terms).collect();

    let involution = match obj.get("involution") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
            let mut seen = BTreeSet::new();
            for (t, entry) in as_array(v, "involution")?.iter().enumerate() {
                let at = format!("involution[{t}]");
                let e = as_array(entry, &at)?;
                if e.len() != 4 {
                    return Err(invalid(&at, "expected [i, j, re, im]"));
                }
                let (i, j) = (as_index(&e[0], &at)?, as_index(&e[1], &at)?);
                let at = format!("{at} = ({i}, {j})");
                check_range(i, dim, &at, "basis")?;
                check_range(j, dim, &at, "basis")?;
                if !seen.insert((i, j)) {
                    return Err(invalid(&at, "duplicate involution entry"));
                }
                let c = scalar(&e[2], &e[3], &at)?;
                if c.is_zero() {
                    return Err(invalid(&at, "zero coefficients are omitted in canonical form"));
                }
                rows[i].push((j, c));
            }
            Some(rows.into_iter().map(SVec::from_terms).collect())
        }
    };

    let unit = match obj.get("unit") {
        None | Some(Value::Null) => None,
        Some(Value::Number(n)) => {
            let i = n.as_u64().ok_or_else(|| invalid("unit", "expected an index"))? as usize;
            check_range(i, dim, "unit", "basis")?;
            Some(SVec::basis(i))
        }
        Some(v) => {
            let mut t = Vec::new();
            for (s, entry) in as_array(v, "unit")?.iter().enumerate() {
                let at = format!("unit[{s}]");
                let e = as_array(entry, &at)?;
                if e.len() != 3 {
                    return Err(invalid(&at, "expected [k, re, im]"));
                }
                let k = as_index(&e[0], &at)?;
                check_range(k, dim, &at, "basis")?;
                t.push((k, scalar(&e[1], &e[2], &at)?));
            }
            Some(SVec::from_terms(t))
        }
    };

    Algebra::new(name, labels, table, involution, unit).map_err(FormatError::Algebra)
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn scalar_pair(c: &Scalar) -> String {
    format!("{}, {}", quote(&c.re().to_string()), quote(&c.im().to_string()))
}

fn push_lines(out: &mut String, key: &str, lines: &[String], last: bool) {
    if lines.is_empty() {
        let _ = write!(out, "  {}: []", quote(key));
    } else {
        let _ = writeln!(out, "  {}: [", quote(key));
        for (k, l) in lines.iter().enumerate() {
            let _ = writeln!(out, "    {l}{}", if k + 1 < lines.len() { "," } else { "" });
        }
        out.push_str("  ]");
    }
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Canonical text of an algebra.
pub fn emit_algebra(a: &Algebra) -> String {
    let n = a.dim();
    let mut out = String::from("{\n");
    let labels: Vec<String> = a.labels().iter().map(|l| quote(l)).collect();
    let _ = writeln!(out, "  \"basis\": [{}],", labels.join(", "));
    let _ = writeln!(out, "  \"dim\": {n},");
    if let Some(inv) = a.involution() {
        let lines: Vec<String> = inv
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, c)| format!("[{i}, {j}, {}]", scalar_pair(c))))
            .collect();
        push_lines(&mut out, "involution", &lines, false);
    }
    let _ = writeln!(out, "  \"name\": {},", quote(a.name()));
    let mut lines = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.product(i, j).iter() {
                lines.push(format!("[{i}, {j}, {k}, {}]", scalar_pair(c)));
            }
        }
    }
    let has_unit = a.unit().is_some();
    push_lines(&mut out, "structure", &lines, !has_unit);
    if let Some(u) = a.unit() {
        match u.entries() {
            [(k, c)] if c.is_one() => {
                let _ = writeln!(out, "  \"unit\": {k}");
            }
            entries => {
                let parts: Vec<String> = entries.iter().map(|(k, c)| format!("[{k}, {}]", scalar_pair(c))).collect();
                let _ = writeln!(out, "  \"unit\": [{}]", parts.join(", "));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Parses a grading file against an already parsed algebra.
pub fn parse_grading(text: &str, algebra: Arc<Algebra>) -> Result<Grading> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc.as_object().ok_or_else(|| invalid("document", "expected an object"))?;
    let name = field(obj, "algebra", "document")?.as_str().ok_or_else(|| invalid("algebra", "expected a string"))?;
    if name != algebra.name() {
        return Err(invalid("algebra", format!("grading is for {name:?}, the algebra file holds {:?}", algebra.name())));
    }
    let group = field(obj, "group", "document")?.as_object().ok_or_else(|| invalid("group", "expected an object"))?;
    let free = as_index(field(group, "free_rank", "group")?, "group.free_rank")?;
    let torsion: Vec<u64> = as_array(field(group, "torsion", "group")?, "group.torsion")?
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let at = format!("group.torsion[{k}]");
            match v.as_u64() {
                Some(m) if m >= 2 => Ok(m),
                _ => Err(invalid(at, format!("expected an integer >= 2, got {v}"))),
            }
        })
        .collect::<Result<_>>()?;
    let group = AbelianGroup::new(free, torsion.clone()).map_err(|e| invalid("group", e.to_string()))?;
    let n = algebra.dim();
    let len = free + torsion.len();
    let mut degrees: Vec<Option<GroupElement>> = vec![None; n];
    for (t, entry) in as_array(field(obj, "degrees", "document")?, "degrees")?.iter().enumerate() {
        let at = format!("degrees[{t}]");
        let e = as_array(entry, &at)?;
        if e.len() != 2 {
            return Err(invalid(&at, "expected [index, [coordinates]]"));
        }
        let i = as_index(&e[0], &at)?;
        check_range(i, n, &at, "basis")?;
        let coords: Vec<i64> = as_array(&e[1], &at)?
            .iter()
            .map(|v| v.as_i64().ok_or_else(|| invalid(&at, format!("expected an integer, got {v}"))))
            .collect::<Result<_>>()?;
        if coords.len() != len {
            return Err(invalid(&at, format!("degree has {} coordinates, the group needs {len}", coords.len())));
        }
        for (k, m) in torsion.iter().enumerate() {
            let c = coords[free + k];
            if c < 0 || c as u64 >= *m {
                return Err(invalid(&at, format!("torsion coordinate {c} is not reduced mod {m}")));
            }
        }
        if degrees[i].replace(GroupElement::new(coords)).is_some() {
            return Err(invalid(&at, format!("basis index {i} given twice")));
        }
    }
    let degrees: Vec<GroupElement> = degrees
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| invalid("degrees", format!("no degree for basis index {i}"))))
        .collect::<Result<_>>()?;
    Grading::new(algebra, None, group, degrees).map_err(|e| invalid("degrees", e.to_string()))
}

/// The same grading on the canonical basis of its homogeneous algebra.
pub fn on_homogeneous_basis(g: &Grading) -> Grading {
    if g.frame().is_none() {
        return g.clone();
    }
    Grading::new(g.homogeneous_algebra(), None, g.group().clone(), g.degrees().to_vec())
        .expect("degrees were valid for the same group")
}

/// Canonical text of a grading given on the canonical basis.
pub fn emit_grading(g: &Grading) -> Result<String> {
    if g.frame().is_some() {
        return Err(invalid("grading", "has a change of basis; emit on_homogeneous_basis(g) instead"));
    }
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"algebra\": {},", quote(g.algebra().name()));
    let lines: Vec<String> = g
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, d)| format!("[{i}, [{}]]", d.coords().iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    push_lines(&mut out, "degrees", &lines, false);
    let group = g.group();
    let torsion: Vec<String> = group.torsion().iter().map(u64::to_string).collect();
    let _ = writeln!(out, "  \"group\": {{\"free_rank\": {}, \"torsion\": [{}]}}", group.free_rank(), torsion.join(", "));
    out.push_str("}\n");
    Ok(out)
}

/// Algebra and grading texts for any grading, rebasing when needed.
pub fn emit_pair(g: &Grading) -> (String, String) {
    let h = on_homogeneous_basis(g);
    let grading = emit_grading(&h).expect("no frame after rebasing");
    (emit_algebra(h.algebra()), grading)
}
