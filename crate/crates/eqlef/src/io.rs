//! JSON input schemas and report serialization.
//!
//! Input files:
//! - group: `{ "name": str, "degree": int, "generators": [[int,...],...] }`
//!   with permutations as 0-based image arrays (the identity is implicit).
//! - complex: `{ "name": str, "vertices": int, "simplices": [[v,...],...],
//!   "action": { "g0": [perm], "g1": [perm], ... } }` where `g<i>` refers to
//!   the i-th group generator.
//! - map: `{ "vertex_images": [int,...], "rounds": int }` with
//!   `vertex_images` indexed by the vertices of the `rounds`-fold
//!   barycentric subdivision (rounds defaults to 0).
//! - pi1 assertions: `{ "assertions": [{ "class_index": int,
//!   "component": int, "rank": int }] }`.
//! - fixed points: `[{ "vertex": int, "isotropy_gens": [[perm],...],
//!   "rep_action": { "0": [[rat]], ... }, "id_minus_df": [[rat]],
//!   "path_t": [v,...], "path_v": [v,...] }]` with rationals as integers or
//!   `"p/q"` strings; the optional paths (vertex sequences) are recomputed
//!   internally when absent.
//!
//! Output values use canonical string keys: subgroup classes by their
//! `(H<i>:order)` labels, objects by `class|c<component>` labels, and
//! twisted classes by a canonical name for their representative.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::burnside::{BurnsideElement, MarkVector};
use crate::complex::GComplex;
use crate::error::{Error, Result};
use crate::fundcat::{Analysis, ComponentStatus, Pi1Assertion, PiElt};
use crate::group::{FiniteGroup, SubgroupClasses};
use crate::lefschetz::{FixedPointDatum, LambdaElement, VerifyReport};
use crate::linalg::QMat;
use crate::perm::Perm;
use crate::splitting::ComponentSummary;
use crate::subdivision::MapModel;
use crate::twisted::ClassSum;

fn parse<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

#[derive(Deserialize)]
struct GroupFile {
    name: String,
    degree: usize,
    generators: Vec<Vec<usize>>,
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup> {
    let gf: GroupFile = parse(text, "group file")?;
    let gens = gf
        .generators
        .into_iter()
        .map(Perm::new)
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_generators(&gf.name, gf.degree, gens)
}

#[derive(Deserialize)]
struct ComplexFile {
    #[serde(default)]
    name: Option<String>,
    vertices: usize,
    simplices: Vec<Vec<usize>>,
    #[serde(default)]
    action: BTreeMap<String, Vec<usize>>,
}

pub fn complex_from_json(text: &str, group: FiniteGroup) -> Result<GComplex> {
    let cf: ComplexFile = parse(text, "complex file")?;
    let ngens = group.generators.len();
    let mut perms = Vec::with_capacity(ngens);
    for i in 0..ngens {
        let key = format!("g{i}");
        let images = cf.action.get(&key).ok_or_else(|| {
            Error::InvalidInput(format!("complex file: action is missing generator {key}"))
        })?;
        perms.push(Perm::new(images.clone())?);
    }
    for key in cf.action.keys() {
        let ok = key.strip_prefix('g').and_then(|s| s.parse::<usize>().ok());
        if !ok.is_some_and(|i| i < ngens) {
            return Err(Error::InvalidInput(format!(
                "complex file: action key {key} matches no group generator"
            )));
        }
    }
    GComplex::new(
        cf.name.as_deref().unwrap_or("complex"),
        group,
        cf.vertices,
        &cf.simplices,
        &perms,
    )
}

#[derive(Deserialize)]
struct MapFile {
    vertex_images: Vec<usize>,
    #[serde(default)]
    rounds: usize,
}

pub fn map_from_json(text: &str, x: &GComplex) -> Result<MapModel> {
    let mf: MapFile = parse(text, "map file")?;
    MapModel::new(x, mf.rounds, mf.vertex_images)
}

#[derive(Deserialize)]
struct Pi1File {
    assertions: Vec<Pi1AssertionFile>,
}

#[derive(Deserialize)]
struct Pi1AssertionFile {
    class_index: usize,
    component: usize,
    rank: usize,
}

pub fn assertions_from_json(text: &str) -> Result<Vec<Pi1Assertion>> {
    let pf: Pi1File = parse(text, "pi1 assertion file")?;
    Ok(pf
        .assertions
        .into_iter()
        .map(|a| Pi1Assertion {
            class_index: a.class_index,
            component: a.component,
            rank: a.rank,
        })
        .collect())
}

fn rational_from_value(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                return Ok(BigRational::from_integer(BigInt::from(i)));
            }
            Err(Error::InvalidInput(format!("{what}: non-integer number {n}")))
        }
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a, b),
                None => (s.as_str(), "1"),
            };
            let num = BigInt::from_str(num.trim())
                .map_err(|e| Error::InvalidInput(format!("{what}: {e}")))?;
            let den = BigInt::from_str(den.trim())
                .map_err(|e| Error::InvalidInput(format!("{what}: {e}")))?;
            if den == BigInt::from(0) {
                return Err(Error::InvalidInput(format!("{what}: zero denominator")));
            }
            Ok(BigRational::new(num, den))
        }
        other => Err(Error::InvalidInput(format!("{what}: expected rational, got {other}"))),
    }
}

fn qmat_from_value(v: &[Vec<Value>], what: &str) -> Result<QMat> {
    let rows = v.len();
    let cols = v.first().map_or(0, |r| r.len());
    if v.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidInput(format!("{what}: ragged matrix")));
    }
    let mut m = QMat::zero(rows, cols);
    for (i, row) in v.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            m[(i, j)] = rational_from_value(entry, what)?;
        }
    }
    Ok(m)
}

#[derive(Deserialize)]
struct DatumFile {
    vertex: usize,
    #[serde(default)]
    isotropy_gens: Vec<Vec<usize>>,
    #[serde(default)]
    rep_action: BTreeMap<String, Vec<Vec<Value>>>,
    id_minus_df: Option<Vec<Vec<Value>>>,
    // Optional path witnesses (vertex sequences); recomputed when absent.
    #[serde(default)]
    path_t: Option<Vec<usize>>,
    #[serde(default)]
    path_v: Option<Vec<usize>>,
}

pub fn fixed_points_from_json(text: &str) -> Result<Vec<FixedPointDatum>> {
    let files: Vec<DatumFile> = parse(text, "fixed-point file")?;
    let mut out = Vec::new();
    for df in files {
        let gens = df
            .isotropy_gens
            .iter()
            .cloned()
            .map(Perm::new)
            .collect::<Result<Vec<_>>>()?;
        let mut rep = Vec::with_capacity(gens.len());
        for i in 0..gens.len() {
            let key = i.to_string();
            let rows = df.rep_action.get(&key).ok_or_else(|| {
                Error::MissingPathData(format!(
                    "fixed point at vertex {}: rep_action is missing generator {key}",
                    df.vertex
                ))
            })?;
            rep.push(qmat_from_value(rows, "rep_action")?);
        }
        let id_minus_df = df.id_minus_df.ok_or_else(|| {
            Error::MissingPathData(format!(
                "fixed point at vertex {}: id_minus_df is required",
                df.vertex
            ))
        })?;
        let _ = (&df.path_t, &df.path_v);
        out.push(FixedPointDatum {
            vertex: df.vertex,
            isotropy_gens: gens,
            rep_action: rep,
            id_minus_df: qmat_from_value(&id_minus_df, "id_minus_df")?,
        });
    }
    Ok(out)
}

/// Canonical rational rendering: integers without denominator.
pub fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical label of a fundamental-group element (used as the key of its
/// twisted class).
pub fn pi_label(a: &PiElt) -> String {
    match a {
        PiElt::Unit => "1".to_string(),
        PiElt::Fin(c) => format!("t{c}"),
        PiElt::Ab(coords) => {
            let inner: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            format!("({})", inner.join(","))
        }
    }
}

pub fn class_sum_json(sum: &ClassSum) -> Value {
    let mut m = Map::new();
    for (a, c) in &sum.terms {
        m.insert(pi_label(a), Value::String(rational_str(c)));
    }
    Value::Object(m)
}

pub fn lambda_json(an: &Analysis, lam: &LambdaElement) -> Value {
    let mut m = Map::new();
    for (&oi, sum) in &lam.terms {
        m.insert(an.object_label(oi), class_sum_json(sum));
    }
    Value::Object(m)
}

pub fn character_json(an: &Analysis, ch: &BTreeMap<usize, ClassSum>) -> Value {
    let mut m = Map::new();
    for (&oi, sum) in ch {
        m.insert(an.object_label(oi), class_sum_json(sum));
    }
    Value::Object(m)
}

pub fn burnside_json(classes: &SubgroupClasses, b: &BurnsideElement) -> Value {
    let mut m = Map::new();
    for (i, c) in b.coeffs.iter().enumerate() {
        m.insert(classes.labels[i].clone(), Value::String(c.to_string()));
    }
    Value::Object(m)
}

pub fn marks_json(classes: &SubgroupClasses, marks: &MarkVector) -> Value {
    let mut m = Map::new();
    for (i, c) in marks.marks.iter().enumerate() {
        m.insert(classes.labels[i].clone(), Value::String(c.to_string()));
    }
    Value::Object(m)
}

fn status_json(status: &ComponentStatus) -> Value {
    match status {
        ComponentStatus::Recurrent { length, returning } => {
            json!({ "status": "recurrent", "length": length, "returning": returning })
        }
        ComponentStatus::Transient { height } => {
            json!({ "status": "transient", "height": height })
        }
    }
}

/// Structural report: subgroup classes, fixed-set components, objects, and
/// component dynamics.
pub fn analysis_json(an: &Analysis) -> Value {
    let mut classes = Vec::new();
    for (ci, label) in an.classes.labels.iter().enumerate() {
        let cd = &an.class_data[ci];
        let mut orbits = Map::new();
        let mut reps: Vec<usize> = an.dynamics[ci].keys().copied().collect();
        reps.sort_unstable();
        for r in reps {
            orbits.insert(format!("c{r}"), status_json(&an.dynamics[ci][&r]));
        }
        classes.push(json!({
            "class": label,
            "order": an.classes.classes[ci].representative.order(),
            "components": cd.fixed.components.len(),
            "orbits": Value::Object(orbits),
        }));
    }
    let objects: Vec<Value> = (0..an.objects.len())
        .map(|oi| {
            let o = &an.objects[oi].object;
            json!({
                "label": an.object_label(oi),
                "class": an.classes.labels[o.class_index],
                "component": o.component,
                "base_vertex": o.base_vertex,
                "preserved": o.preserved,
                "weyl_order": an.objects[oi].weyl_x.len(),
            })
        })
        .collect();
    json!({
        "complex": an.complex.name,
        "group_order": an.complex.group.order(),
        "classes": classes,
        "objects": objects,
    })
}

pub fn verify_json(an: &Analysis, report: &VerifyReport) -> Value {
    let per_object: Vec<Value> = report
        .per_object
        .iter()
        .map(|(label, ok)| json!({ "object": label, "match": ok }))
        .collect();
    json!({
        "lambda": lambda_json(an, &report.lambda),
        "lambda_loc": lambda_json(an, &report.lambda_loc),
        "per_object": per_object,
        "lambda_match": report.lambda_match,
        "character_match": report.character_match,
        "cover_match": report.cover_match,
        "direct_match": report.direct_match,
        "verified": report.passed(),
    })
}

pub fn split_json(an: &Analysis, summaries: &[ComponentSummary]) -> Value {
    let mut m = Map::new();
    for s in summaries {
        match s {
            ComponentSummary::Recurrent(phi) => {
                let key = format!("{}|c{}", an.classes.labels[phi.class_index], phi.orbit_rep);
                m.insert(
                    key,
                    json!({
                        "status": "recurrent",
                        "length": phi.length,
                        "components": phi.components,
                        "returning": phi.returning,
                        "closing_trace": phi.closing_trace().to_string(),
                    }),
                );
            }
            ComponentSummary::Transient { class_index, orbit_rep, height, ranks } => {
                let key = format!("{}|c{}", an.classes.labels[*class_index], orbit_rep);
                m.insert(
                    key,
                    json!({ "status": "transient", "height": height, "ranks": ranks }),
                );
            }
        }
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fundcat::AnalysisOptions;
    use crate::group::conjugacy_classes_of_subgroups;
    use crate::lefschetz;

    #[test]
    fn group_complex_map_roundtrip() {
        let group_text = r#"{
            "name": "z2",
            "degree": 2,
            "generators": [[1, 0]]
        }"#;
        let g = group_from_json(group_text).unwrap();
        assert_eq!(g.order(), 2);

        let complex_text = r#"{
            "name": "octagon",
            "vertices": 8,
            "simplices": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,6],[6,7],[7,0]],
            "action": { "g0": [0,7,6,5,4,3,2,1] }
        }"#;
        let x = complex_from_json(complex_text, g).unwrap();
        assert_eq!(x.num_vertices, 8);

        let map_text = r#"{ "vertex_images": [0,7,6,5,4,3,2,1] }"#;
        let f = map_from_json(map_text, &x).unwrap();
        let an = Analysis::new(&x, &f, &AnalysisOptions::default()).unwrap();
        let lam = lefschetz::lambda(&an).unwrap();
        let v = lambda_json(&an, &lam);
        assert!(v.is_object());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(group_from_json("{").is_err());
        assert!(group_from_json(r#"{ "name": "g", "degree": 2, "generators": [[2, 0]] }"#)
            .is_err());
        let g = group_from_json(r#"{ "name": "t", "degree": 1, "generators": [] }"#).unwrap();
        // Action key mentioning a generator the group does not have.
        let bad = r#"{ "vertices": 1, "simplices": [[0]], "action": { "g0": [0] } }"#;
        assert!(complex_from_json(bad, g).is_err());
    }

    #[test]
    fn fixed_point_files_parse_rationals_and_report_missing_fields() {
        let text = r#"[{
            "vertex": 0,
            "isotropy_gens": [[0, 7, 6, 5, 4, 3, 2, 1]],
            "rep_action": { "0": [["-1"]] },
            "id_minus_df": [["1/2"]]
        }]"#;
        let data = fixed_points_from_json(text).unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].id_minus_df[(0, 0)], BigRational::new(1.into(), 2.into()));

        let missing = r#"[{ "vertex": 0, "isotropy_gens": [[0]], "rep_action": {} }]"#;
        assert!(matches!(
            fixed_points_from_json(missing),
            Err(Error::MissingPathData(_))
        ));
    }

    #[test]
    fn burnside_serialization_uses_class_labels() {
        let g = crate::group::catalog::cyclic(2);
        let classes = conjugacy_classes_of_subgroups(&g).unwrap();
        let b = BurnsideElement::orbit(&classes, &classes.classes[1].representative);
        let v = burnside_json(&classes, &b);
        let obj = v.as_object().unwrap();
        assert_eq!(obj.len(), classes.labels.len());
        assert_eq!(obj[&classes.labels[1]], Value::String("1".into()));
    }
}
