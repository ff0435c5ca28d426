//! File schemas: group specs (TOML or JSON), pair-subgroup specs,
//! character-table JSON, decomposition-matrix JSON, labeled-matrix JSON, and
//! the search report. All matrix entries render as JSON numbers when they fit
//! in i64 and as decimal strings otherwise; both forms reparse.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cartan::{CartanError, CartanMatrix, DecompositionMatrix, FieldTag};
use crate::chartab::{CharRow, CharTabError, CharacterTable};
use crate::cyclo::{CycloError, Cyclotomic};
use crate::group::{GroupError, PairSubgroup, PermGroup};
use crate::matrix::{IntMatrix, LabeledMatrix};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {0}: {1}")]
    Read(String, std::io::Error),
    #[error("cannot write {0}: {1}")]
    Write(String, std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    CharTab(#[from] CharTabError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read(path.display().to_string(), e))
}

fn write(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|e| IoError::Write(path.display().to_string(), e))
}

// ---------------------------------------------------------------------------
// Group and pair-subgroup specs
// ---------------------------------------------------------------------------

/// One generator: either a list of 1-based cycles (notation = "cycles") or a
/// flat 0-based image array (notation = "images").
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GenSpec {
    Images(Vec<usize>),
    Cycles(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    #[default]
    Cycles,
    Images,
}

fn gen_to_permutation(
    spec: &GenSpec,
    notation: Notation,
    degree: usize,
) -> Result<Permutation, IoError> {
    match (notation, spec) {
        (Notation::Cycles, GenSpec::Cycles(cycles)) => {
            Ok(Permutation::from_cycles_one_based(degree, cycles)?)
        }
        (Notation::Images, GenSpec::Images(images)) => Ok(Permutation::from_images(images.clone())?),
        // an empty array is ambiguous between the two variants and always
        // means the identity in cycle notation
        (Notation::Cycles, GenSpec::Images(v)) if v.is_empty() => {
            Ok(Permutation::identity(degree))
        }
        (Notation::Cycles, GenSpec::Images(_)) => Err(IoError::Parse(
            "notation is \"cycles\" but a generator is a flat image array; \
             cycles must be nested lists of 1-based points"
                .to_string(),
        )),
        (Notation::Images, GenSpec::Cycles(_)) => Err(IoError::Parse(
            "notation is \"images\" but a generator is a nested list; \
             images must be flat 0-based arrays of length = degree"
                .to_string(),
        )),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub degree: usize,
    #[serde(default)]
    pub notation: Notation,
    pub generators: Vec<GenSpec>,
}

impl GroupSpecFile {
    pub fn build(&self) -> Result<PermGroup, IoError> {
        let gens = self
            .generators
            .iter()
            .map(|g| gen_to_permutation(g, self.notation, self.degree))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermGroup::generated(self.degree, gens)?)
    }
}

/// Load a group spec, choosing the parser by file extension (.toml vs .json).
pub fn load_group_spec(path: &Path) -> Result<PermGroup, IoError> {
    let text = read(path)?;
    let spec: GroupSpecFile = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?
    } else {
        serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?
    };
    spec.build()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSubgroupSpecFile {
    #[serde(default)]
    pub notation: Notation,
    /// Generating pairs [left, right].
    #[serde(default)]
    pub generators: Option<Vec<[GenSpec; 2]>>,
    /// Explicit closed element list; requires `closed = true`.
    #[serde(default)]
    pub elements: Option<Vec<[GenSpec; 2]>>,
    #[serde(default)]
    pub closed: bool,
}

impl PairSubgroupSpecFile {
    pub fn build(&self, parent: &PermGroup) -> Result<PairSubgroup, IoError> {
        let degree = parent.degree();
        let to_pairs = |list: &[[GenSpec; 2]]| -> Result<Vec<(Permutation, Permutation)>, IoError> {
            list.iter()
                .map(|[a, b]| {
                    Ok((
                        gen_to_permutation(a, self.notation, degree)?,
                        gen_to_permutation(b, self.notation, degree)?,
                    ))
                })
                .collect()
        };
        match (&self.generators, &self.elements) {
            (Some(gens), None) => Ok(PairSubgroup::generated(parent, &to_pairs(gens)?)?),
            (None, Some(elems)) => {
                if !self.closed {
                    return Err(IoError::Parse(
                        "an explicit `elements` list requires `closed = true`".to_string(),
                    ));
                }
                Ok(PairSubgroup::from_element_set(parent, &to_pairs(elems)?)?)
            }
            _ => Err(IoError::Parse(
                "a pair-subgroup spec needs exactly one of `generators` or `elements`".to_string(),
            )),
        }
    }
}

pub fn load_pair_subgroup(path: &Path, parent: &PermGroup) -> Result<PairSubgroup, IoError> {
    let text = read(path)?;
    let spec: PairSubgroupSpecFile = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?
    } else {
        serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?
    };
    spec.build(parent)
}

// ---------------------------------------------------------------------------
// Cycle-notation permutation strings, for class representatives
// ---------------------------------------------------------------------------

/// Parse a permutation written in 1-based cycle notation, e.g. "(1,2)(3,4,5)"
/// or "()" for the identity.
pub fn parse_cycle_string(s: &str, degree: usize) -> Result<Permutation, IoError> {
    let s = s.trim();
    if s.is_empty() || s == "()" {
        return Ok(Permutation::identity(degree));
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let Some(inner) = rest.strip_prefix('(') else {
            return Err(IoError::Parse(format!("expected '(' in cycle string {s:?}")));
        };
        let Some(close) = inner.find(')') else {
            return Err(IoError::Parse(format!("unclosed cycle in {s:?}")));
        };
        let body = &inner[..close];
        let points = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| IoError::Parse(format!("bad point {p:?} in cycle string {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(points);
        rest = inner[close + 1..].trim_start();
    }
    Ok(Permutation::from_cycles_one_based(degree, &cycles)?)
}

// ---------------------------------------------------------------------------
// Exact values in JSON: integer | "a/b" string | cyclotomic coefficient list
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RatSpec {
    Int(i64),
    Str(String),
}

impl RatSpec {
    pub fn to_rational(&self) -> Result<BigRational, IoError> {
        match self {
            RatSpec::Int(k) => Ok(BigRational::from_integer(BigInt::from(*k))),
            RatSpec::Str(s) => {
                let s = s.trim();
                if let Some((num, den)) = s.split_once('/') {
                    let n = BigInt::from_str(num.trim())
                        .map_err(|_| IoError::Parse(format!("bad numerator in {s:?}")))?;
                    let d = BigInt::from_str(den.trim())
                        .map_err(|_| IoError::Parse(format!("bad denominator in {s:?}")))?;
                    if d.is_zero() {
                        return Err(IoError::Parse(format!("zero denominator in {s:?}")));
                    }
                    Ok(BigRational::new(n, d))
                } else {
                    let n = BigInt::from_str(s)
                        .map_err(|_| IoError::Parse(format!("bad integer {s:?}")))?;
                    Ok(BigRational::from_integer(n))
                }
            }
        }
    }

    pub fn from_rational(r: &BigRational) -> RatSpec {
        if r.is_integer() {
            if let Ok(k) = i64::try_from(r.to_integer()) {
                return RatSpec::Int(k);
            }
        }
        if r.is_integer() {
            RatSpec::Str(r.to_integer().to_string())
        } else {
            RatSpec::Str(format!("{}/{}", r.numer(), r.denom()))
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Scalar(RatSpec),
    Coeffs(Vec<RatSpec>),
}

impl ValueSpec {
    pub fn to_cyclotomic(&self, conductor: usize) -> Result<Cyclotomic, IoError> {
        match self {
            ValueSpec::Scalar(r) => Ok(Cyclotomic::from_rational(conductor, r.to_rational()?)),
            ValueSpec::Coeffs(cs) => {
                let coeffs = cs
                    .iter()
                    .map(|c| c.to_rational())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Cyclotomic::from_coeffs(conductor, coeffs)?)
            }
        }
    }

    pub fn from_cyclotomic(v: &Cyclotomic) -> ValueSpec {
        if let Some(r) = v.as_rational() {
            ValueSpec::Scalar(RatSpec::from_rational(&r))
        } else {
            ValueSpec::Coeffs(v.coeffs().iter().map(RatSpec::from_rational).collect())
        }
    }
}

// ---------------------------------------------------------------------------
// Character-table JSON
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CharTabFile {
    pub group_order: usize,
    /// Class representatives in 1-based cycle notation, in the file's class
    /// column order.
    pub class_reps: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub conductor: usize,
    pub rows: Vec<CharTabRowFile>,
}

#[derive(Debug, Deserialize, Serialize)]
pub struct CharTabRowFile {
    pub label: String,
    pub values: Vec<ValueSpec>,
}

pub fn character_table_to_file(table: &CharacterTable) -> CharTabFile {
    let group = table.group();
    CharTabFile {
        group_order: group.order(),
        class_reps: group
            .classes()
            .iter()
            .map(|c| group.element(c.representative).to_string())
            .collect(),
        class_sizes: group.classes().iter().map(|c| c.size()).collect(),
        conductor: table.conductor(),
        rows: table
            .rows()
            .iter()
            .map(|r| CharTabRowFile {
                label: r.label.clone(),
                values: r.values.iter().map(ValueSpec::from_cyclotomic).collect(),
            })
            .collect(),
    }
}

/// Rebuild a character table from a file against a concrete group. The file's
/// class columns are matched to the group's classes through the declared
/// representatives; sizes must agree, and the rebuilt table must pass the
/// full orthogonality check (a corrupted row is rejected, not repaired).
pub fn character_table_from_file(
    file: &CharTabFile,
    group: Arc<PermGroup>,
) -> Result<CharacterTable, IoError> {
    if file.group_order != group.order() {
        return Err(IoError::Parse(format!(
            "file declares group order {} but the group has order {}",
            file.group_order,
            group.order()
        )));
    }
    let classes = group.classes();
    if file.class_reps.len() != classes.len() || file.class_sizes.len() != classes.len() {
        return Err(IoError::Parse(format!(
            "file declares {} classes but the group has {}",
            file.class_reps.len(),
            classes.len()
        )));
    }
    // file column -> group class index
    let mut col_to_class = Vec::with_capacity(classes.len());
    let mut used = vec![false; classes.len()];
    for (col, rep) in file.class_reps.iter().enumerate() {
        let p = parse_cycle_string(rep, group.degree())?;
        let idx = group
            .index_of(&p)
            .ok_or_else(|| IoError::Parse(format!("class representative {rep} is not in the group")))?;
        let k = group.class_of(idx);
        if used[k] {
            return Err(IoError::Parse(format!(
                "two class representatives land in the same conjugacy class ({rep})"
            )));
        }
        used[k] = true;
        if classes[k].size() != file.class_sizes[col] {
            return Err(IoError::Parse(format!(
                "class of {rep} has size {} but the file declares {}",
                classes[k].size(),
                file.class_sizes[col]
            )));
        }
        col_to_class.push(k);
    }
    let mut rows = Vec::with_capacity(file.rows.len());
    for row in &file.rows {
        if row.values.len() != classes.len() {
            return Err(IoError::Parse(format!(
                "row {} has {} values for {} classes",
                row.label,
                row.values.len(),
                classes.len()
            )));
        }
        let mut values = vec![Cyclotomic::zero(file.conductor); classes.len()];
        for (col, v) in row.values.iter().enumerate() {
            values[col_to_class[col]] = v.to_cyclotomic(file.conductor)?;
        }
        rows.push(CharRow {
            label: row.label.clone(),
            values,
        });
    }
    Ok(CharacterTable::from_rows(group, file.conductor, rows)?)
}

pub fn save_character_table(path: &Path, table: &CharacterTable) -> Result<(), IoError> {
    let file = character_table_to_file(table);
    let text = serde_json::to_string_pretty(&file).expect("chartab file serializes");
    write(path, &text)
}

pub fn load_character_table(path: &Path, group: Arc<PermGroup>) -> Result<CharacterTable, IoError> {
    let text = read(path)?;
    let file: CharTabFile =
        serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?;
    character_table_from_file(&file, group)
}

// ---------------------------------------------------------------------------
// Decomposition-matrix JSON
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DecompFile {
    pub prime: u64,
    pub ordinary_labels: Vec<String>,
    pub modular_labels: Vec<String>,
    /// Row-major, rows indexed by ordinary_labels.
    pub matrix: Vec<Vec<i64>>,
}

pub fn decomposition_from_file(file: &DecompFile) -> Result<DecompositionMatrix, IoError> {
    let rows = file
        .matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Ok(DecompositionMatrix::new(
        file.prime,
        file.ordinary_labels.clone(),
        file.modular_labels.clone(),
        rows,
    )?)
}

pub fn load_decomposition(path: &Path) -> Result<DecompositionMatrix, IoError> {
    let text = read(path)?;
    let file: DecompFile = serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?;
    decomposition_from_file(&file)
}

// ---------------------------------------------------------------------------
// Labeled-matrix JSON: {labels, rows}
// ---------------------------------------------------------------------------

pub fn bigint_to_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(k) => Value::from(k),
        Err(_) => Value::from(x.to_string()),
    }
}

pub fn value_to_bigint(v: &Value) -> Result<BigInt, IoError> {
    match v {
        Value::Number(n) => {
            if let Some(k) = n.as_i64() {
                Ok(BigInt::from(k))
            } else if let Some(k) = n.as_u64() {
                Ok(BigInt::from(k))
            } else {
                Err(IoError::Parse(format!("non-integer matrix entry {n}")))
            }
        }
        Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|_| IoError::Parse(format!("bad integer {s:?}")))
        }
        other => Err(IoError::Parse(format!("matrix entry is not an integer: {other}"))),
    }
}

pub fn labeled_matrix_to_json(m: &LabeledMatrix) -> Value {
    serde_json::json!({
        "labels": m.row_labels,
        "rows": (0..m.matrix.rows)
            .map(|r| m.matrix.row(r).iter().map(bigint_to_value).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn labeled_matrix_from_json(v: &Value) -> Result<LabeledMatrix, IoError> {
    let labels: Vec<String> = v
        .get("labels")
        .and_then(|l| serde_json::from_value(l.clone()).ok())
        .ok_or_else(|| IoError::Parse("matrix JSON needs a `labels` array".to_string()))?;
    let rows_v = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Parse("matrix JSON needs a `rows` array".to_string()))?;
    let mut rows = Vec::with_capacity(rows_v.len());
    for row in rows_v {
        let cells = row
            .as_array()
            .ok_or_else(|| IoError::Parse("each matrix row must be an array".to_string()))?;
        rows.push(
            cells
                .iter()
                .map(value_to_bigint)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if rows.len() != labels.len() || rows.iter().any(|r| r.len() != labels.len()) {
        return Err(IoError::Parse(
            "matrix shape does not match its label list".to_string(),
        ));
    }
    Ok(LabeledMatrix::square(labels, IntMatrix::from_rows(rows)))
}

pub fn cartan_to_json(c: &CartanMatrix) -> Value {
    let mut v = labeled_matrix_to_json(&c.labeled);
    let field = match &c.field {
        FieldTag::Complex => "complex".to_string(),
        FieldTag::ModP(p) => format!("mod-{p}"),
    };
    v["field"] = Value::from(field);
    v["det"] = bigint_to_value(&c.det());
    v
}

// ---------------------------------------------------------------------------
// Search report
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct SearchReportHit {
    pub multiplicities: Vec<u64>,
    pub complex_cartan: Value,
    pub det_complex: Value,
    pub modular_cartan: Value,
    pub det_modular: Value,
    pub kernel_vector: Vec<Value>,
}

#[derive(Debug, Serialize)]
pub struct SearchReport {
    pub config: Value,
    pub outcome: String,
    pub candidate_names: Vec<String>,
    pub hits: Vec<SearchReportHit>,
    pub elapsed_ms: u128,
}

pub fn search_report(
    config: Value,
    candidate_names: Vec<String>,
    hits: &[crate::hunt::Counterexample],
    elapsed_ms: u128,
) -> SearchReport {
    let to_matrix = |labels: &[String], rows: &[Vec<BigInt>]| {
        serde_json::json!({
            "labels": labels,
            "rows": rows
                .iter()
                .map(|r| r.iter().map(bigint_to_value).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    };
    SearchReport {
        config,
        outcome: if hits.is_empty() { "exhausted" } else { "found" }.to_string(),
        candidate_names,
        hits: hits
            .iter()
            .map(|h| SearchReportHit {
                multiplicities: h.multiplicities.clone(),
                complex_cartan: to_matrix(&h.complex_labels, &h.complex_rows),
                det_complex: bigint_to_value(&h.det_complex),
                modular_cartan: to_matrix(&h.modular_labels, &h.modular_rows),
                det_modular: bigint_to_value(&h.det_modular),
                kernel_vector: h.kernel_vector.iter().map(bigint_to_value).collect(),
            })
            .collect(),
        elapsed_ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use num_traits::One;
    use std::io::Write as _;

    fn temp_file(name: &str, contents: &str) -> tempfile::TempPath {
        let mut f = tempfile::Builder::new()
            .suffix(name)
            .tempfile()
            .unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f.into_temp_path()
    }

    #[test]
    fn group_spec_toml_cycles() {
        let path = temp_file(
            ".toml",
            "degree = 3\ngenerators = [[[1,2]], [[1,2,3]]]\n",
        );
        let g = load_group_spec(Path::new(&*path)).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn group_spec_json_images() {
        let path = temp_file(
            ".json",
            r#"{"degree": 3, "notation": "images", "generators": [[1,0,2], [1,2,0]]}"#,
        );
        let g = load_group_spec(Path::new(&*path)).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn group_spec_rejects_wrong_notation() {
        let path = temp_file(
            ".json",
            r#"{"degree": 3, "notation": "cycles", "generators": [[1,0,2]]}"#,
        );
        assert!(matches!(
            load_group_spec(Path::new(&*path)),
            Err(IoError::Parse(_))
        ));
    }

    #[test]
    fn pair_subgroup_spec_generators_and_elements() {
        let g = builtin::group("S3").unwrap();
        let path = temp_file(
            ".json",
            r#"{"generators": [[[[1,2]], [[1,2]]], [[[1,2,3]], [[1,2,3]]]]}"#,
        );
        let sub = load_pair_subgroup(Path::new(&*path), &g).unwrap();
        assert_eq!(sub.order(), 6);

        let closed = temp_file(
            ".json",
            r#"{"elements": [[[], []], [[[1,2]], [[1,2]]]], "closed": true}"#,
        );
        let sub = load_pair_subgroup(Path::new(&*closed), &g).unwrap();
        assert_eq!(sub.order(), 2);

        let unflagged = temp_file(
            ".json",
            r#"{"elements": [[[], []], [[[1,2]], [[1,2]]]]}"#,
        );
        assert!(load_pair_subgroup(Path::new(&*unflagged), &g).is_err());
    }

    #[test]
    fn cycle_string_round_trip() {
        let p = Permutation::from_cycles_one_based(5, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
        let parsed = parse_cycle_string(&p.to_string(), 5).unwrap();
        assert_eq!(p, parsed);
        assert!(parse_cycle_string("()", 4).unwrap().is_identity());
        assert!(parse_cycle_string("(1,2", 4).is_err());
    }

    #[test]
    fn chartab_json_round_trip_s3() {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let file = character_table_to_file(&t);
        let json = serde_json::to_string(&file).unwrap();
        let reparsed: CharTabFile = serde_json::from_str(&json).unwrap();
        let t2 = character_table_from_file(&reparsed, Arc::clone(&g)).unwrap();
        assert_eq!(t.labels(), t2.labels());
        for (a, b) in t.rows().iter().zip(t2.rows()) {
            assert_eq!(a.values, b.values);
        }
    }

    #[test]
    fn chartab_json_round_trip_c3_cyclotomic() {
        let g = Arc::new(builtin::group("C3").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let file = character_table_to_file(&t);
        let json = serde_json::to_string(&file).unwrap();
        let reparsed: CharTabFile = serde_json::from_str(&json).unwrap();
        let t2 = character_table_from_file(&reparsed, g).unwrap();
        for (a, b) in t.rows().iter().zip(t2.rows()) {
            assert_eq!(a.values, b.values);
        }
    }

    #[test]
    fn corrupted_chartab_is_rejected() {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let mut file = character_table_to_file(&t);
        // flip the sign of one value: orthogonality must catch it
        file.rows[1].values[1] = ValueSpec::Scalar(RatSpec::Int(99));
        assert!(character_table_from_file(&file, Arc::clone(&g)).is_err());
        // wrong group order
        let mut file = character_table_to_file(&t);
        file.group_order = 7;
        assert!(character_table_from_file(&file, g).is_err());
    }

    #[test]
    fn decomposition_json() {
        let path = temp_file(
            ".json",
            r#"{"prime": 3,
                "ordinary_labels": ["chi_(3)", "chi_(2,1)", "chi_(1^3)"],
                "modular_labels": ["psi_(3)", "psi_(2,1)"],
                "matrix": [[1,0],[1,1],[0,1]]}"#,
        );
        let d = load_decomposition(Path::new(&*path)).unwrap();
        assert_eq!(d.prime, 3);
        assert_eq!(
            d.labeled.matrix,
            builtin::s3_decomposition_p3().labeled.matrix
        );
    }

    #[test]
    fn labeled_matrix_json_round_trip() {
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let mut m = IntMatrix::identity(2);
        m.set(0, 1, big.clone());
        let lm = LabeledMatrix::square(vec!["a".into(), "b".into()], m);
        let json = labeled_matrix_to_json(&lm);
        let back = labeled_matrix_from_json(&json).unwrap();
        assert_eq!(back.row_labels, lm.row_labels);
        assert_eq!(back.matrix, lm.matrix);
        assert_eq!(*back.matrix.at(0, 1), big);
        // string entries parse too
        let v: Value = serde_json::from_str(
            r#"{"labels": ["x"], "rows": [["42"]]}"#,
        )
        .unwrap();
        assert_eq!(
            *labeled_matrix_from_json(&v).unwrap().matrix.at(0, 0),
            BigInt::from(42)
        );
    }

    #[test]
    fn rational_value_specs() {
        assert_eq!(
            RatSpec::Str("3/4".into()).to_rational().unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(4))
        );
        assert_eq!(
            RatSpec::Int(5).to_rational().unwrap(),
            BigRational::from_integer(BigInt::from(5))
        );
        assert!(RatSpec::Str("1/0".into()).to_rational().is_err());
        let one = Cyclotomic::one(4);
        let spec = ValueSpec::from_cyclotomic(&one);
        assert_eq!(spec.to_cyclotomic(4).unwrap(), one);
        assert!(Cyclotomic::one(1).as_rational().unwrap().is_one());
    }
}
