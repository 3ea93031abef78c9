//! JSON bundles: a versioned envelope around one structure.
//!
//! ```json
//! {"format_version": 1, "field": "GF(2)", "kind": "algebra",
//!  "metadata": {"description": "..."},
//!  "payload": {"e": [[[1, 0], [0, 0]]], "m": [[[1, 0, 0, 0], [0, 0, 0, 0]]]}}
//! ```
//!
//! Matrices are arrays of rows; entries are integers or strings such as
//! `"-1/2"`. Per-level data are arrays indexed by level. Unknown keys are
//! rejected everywhere.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::braiding::RegularBraiding;
use crate::cocycle::RegularCocycle;
use crate::error::{Error, Result};
use crate::exact_linalg::{FieldSpec, Matrix};
use crate::hopf::{ActionSide, AntipodePair, ObstructedBialgebra, ObstructedModuleAction};
use crate::search::{
    CatalogEntry, CatalogTarget, Constraints, SearchEcho, SearchSpec, SolutionCatalog, DEFAULT_CAP,
};
use crate::ybop::{ObstructedAlgebra, ObstructedCoalgebra, RegularYBOperator};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Cocycle(RegularCocycle),
    Braiding(RegularBraiding),
    Algebra(ObstructedAlgebra),
    Coalgebra(ObstructedCoalgebra),
    /// An operator on the obstructors, optionally with an algebra and/or a
    /// coalgebra on the same carriers.
    YbOperator {
        obstructors: Vec<Matrix>,
        algebra: Option<ObstructedAlgebra>,
        coalgebra: Option<ObstructedCoalgebra>,
        operator: RegularYBOperator,
    },
    Bialgebra(ObstructedBialgebra),
    Antipode {
        bialgebra: ObstructedBialgebra,
        antipode: AntipodePair,
    },
    ModuleAction {
        bialgebra: ObstructedBialgebra,
        module: ObstructedModuleAction,
    },
    SearchSpec(SearchSpec),
    Matrix(Matrix),
    Catalog {
        catalog: SolutionCatalog,
        bialgebra: Option<ObstructedBialgebra>,
    },
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Cocycle(_) => "cocycle",
            Structure::Braiding(_) => "braiding",
            Structure::Algebra(_) => "algebra",
            Structure::Coalgebra(_) => "coalgebra",
            Structure::YbOperator { .. } => "yb_operator",
            Structure::Bialgebra(_) => "bialgebra",
            Structure::Antipode { .. } => "antipode",
            Structure::ModuleAction { .. } => "module_action",
            Structure::SearchSpec(_) => "search_spec",
            Structure::Matrix(_) => "matrix",
            Structure::Catalog { .. } => "catalog",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub field: FieldSpec,
    pub metadata: Option<Value>,
    pub structure: Structure,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    format_version: u32,
    field: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Value>,
    payload: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Cell {
    Int(i64),
    Text(String),
}

type Rows = Vec<Vec<Cell>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CocyclePayload {
    dims: Vec<usize>,
    f: Vec<Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BraidingPayload {
    left: CocyclePayload,
    right: CocyclePayload,
    #[serde(rename = "B")]
    b: Vec<Rows>,
    #[serde(rename = "Bstar", default, skip_serializing_if = "Option::is_none")]
    b_star: Option<Vec<Rows>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraPayload {
    e: Vec<Rows>,
    m: Vec<Rows>,
    #[serde(default)]
    associative: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoalgebraPayload {
    e: Vec<Rows>,
    #[serde(rename = "Delta")]
    delta: Vec<Rows>,
    #[serde(default)]
    coassociative: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct YbPayload {
    e: Vec<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    associative: bool,
    #[serde(rename = "Delta", default, skip_serializing_if = "Option::is_none")]
    delta: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    coassociative: bool,
    #[serde(rename = "R")]
    r: Vec<Rows>,
    #[serde(rename = "Rstar", default, skip_serializing_if = "Option::is_none")]
    r_star: Option<Vec<Rows>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BialgebraPayload {
    e: Vec<Rows>,
    m: Vec<Rows>,
    #[serde(rename = "Delta")]
    delta: Vec<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eta: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    check_compatibility: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AntipodePayload {
    bialgebra: BialgebraPayload,
    #[serde(rename = "S")]
    s: Vec<Rows>,
    #[serde(rename = "Sstar", default, skip_serializing_if = "Option::is_none")]
    s_star: Option<Vec<Rows>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModulePayload {
    bialgebra: BialgebraPayload,
    side: String,
    e: Vec<Rows>,
    rho: Vec<Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SearchPayload {
    dim: usize,
    e: Rows,
    constraints: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    workers: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_over_cap: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixPayload {
    #[serde(rename = "M")]
    m: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EchoPayload {
    constraints: Vec<String>,
    cap: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_over_cap: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryPayload {
    level: usize,
    matrix: Rows,
    verified: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    star: Option<Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogPayload {
    target: String,
    e: Vec<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    search: Option<EchoPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bialgebra: Option<BialgebraPayload>,
    examined: u64,
    count: usize,
    entries: Vec<EntryPayload>,
}

fn encode(m: &Matrix) -> Rows {
    m.to_string_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|s| s.parse::<i64>().map_or(Cell::Text(s), Cell::Int))
                .collect()
        })
        .collect()
}

fn encode_all(ms: &[Matrix]) -> Vec<Rows> {
    ms.iter().map(encode).collect()
}

fn decode(field: FieldSpec, rows: &Rows) -> Result<Matrix> {
    let text: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Text(s) => s.clone(),
                })
                .collect()
        })
        .collect();
    if text.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    Matrix::parse_rows(field, &text)
}

fn decode_all(field: FieldSpec, rows: &[Rows]) -> Result<Vec<Matrix>> {
    rows.iter().map(|r| decode(field, r)).collect()
}

fn decode_opt(field: FieldSpec, rows: &Option<Vec<Rows>>) -> Result<Option<Vec<Matrix>>> {
    rows.as_ref().map(|r| decode_all(field, r)).transpose()
}

fn payload<T: DeserializeOwned>(kind: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("{kind} payload: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload types serialize")
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Pretty JSON that keeps arrays of scalars, such as matrix rows, on one line.
fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&inner.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn constraint_names(c: &Constraints) -> Vec<String> {
    let mut out = Vec::new();
    for (on, name) in [(c.re, "re"), (c.ybr, "ybr"), (c.star_exists, "star_exists")] {
        if on {
            out.push(name.to_string());
        }
    }
    out
}

fn parse_constraints(names: &[String]) -> Result<Constraints> {
    let mut c = Constraints {
        re: false,
        ybr: false,
        star_exists: false,
    };
    for name in names {
        match name.as_str() {
            "re" => c.re = true,
            "ybr" => c.ybr = true,
            "star_exists" => c.star_exists = true,
            other => return Err(Error::Parse(format!("unknown search constraint {other:?}"))),
        }
    }
    Ok(c)
}

fn cocycle_from(field: FieldSpec, p: &CocyclePayload) -> Result<RegularCocycle> {
    RegularCocycle::new(field, p.dims.clone(), decode_all(field, &p.f)?)
}

fn cocycle_to(c: &RegularCocycle) -> CocyclePayload {
    CocyclePayload {
        dims: c.dims().to_vec(),
        f: encode_all(c.arrows()),
    }
}

fn bialgebra_from(field: FieldSpec, p: &BialgebraPayload) -> Result<ObstructedBialgebra> {
    let mut h = ObstructedBialgebra::new(
        decode_all(field, &p.m)?,
        decode_all(field, &p.delta)?,
        decode_all(field, &p.e)?,
        decode_opt(field, &p.eta)?,
        decode_opt(field, &p.eps)?,
    )?;
    h.check_compatibility = p.check_compatibility;
    Ok(h)
}

fn bialgebra_to(h: &ObstructedBialgebra) -> BialgebraPayload {
    BialgebraPayload {
        e: encode_all(h.obstructors()),
        m: encode_all(&h.algebra.mults),
        delta: encode_all(&h.coalgebra.comults),
        eta: h.units.as_deref().map(encode_all),
        eps: h.counits.as_deref().map(encode_all),
        check_compatibility: h.check_compatibility,
    }
}

fn side_name(side: ActionSide) -> &'static str {
    match side {
        ActionSide::Left => "left",
        ActionSide::Right => "right",
    }
}

impl Bundle {
    pub fn new(structure: Structure, field: FieldSpec) -> Self {
        Bundle {
            field,
            metadata: None,
            structure,
        }
    }

    pub fn with_description(mut self, text: &str) -> Self {
        self.metadata = Some(serde_json::json!({ "description": text }));
        self
    }

    pub fn kind(&self) -> &'static str {
        self.structure.kind()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let env: Envelope =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bundle: {e}")))?;
        if env.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {}",
                env.format_version
            )));
        }
        let field: FieldSpec = env.field.parse()?;
        let f = field;
        let kind = env.kind.as_str();
        let v = env.payload;
        let structure = match kind {
            "cocycle" => Structure::Cocycle(cocycle_from(f, &payload::<CocyclePayload>(kind, v)?)?),
            "braiding" => {
                let p: BraidingPayload = payload(kind, v)?;
                Structure::Braiding(RegularBraiding::new(
                    cocycle_from(f, &p.left)?,
                    cocycle_from(f, &p.right)?,
                    decode_all(f, &p.b)?,
                    decode_opt(f, &p.b_star)?,
                )?)
            }
            "algebra" => {
                let p: AlgebraPayload = payload(kind, v)?;
                Structure::Algebra(ObstructedAlgebra::new(
                    decode_all(f, &p.m)?,
                    decode_all(f, &p.e)?,
                    p.associative,
                )?)
            }
            "coalgebra" => {
                let p: CoalgebraPayload = payload(kind, v)?;
                Structure::Coalgebra(ObstructedCoalgebra::new(
                    decode_all(f, &p.delta)?,
                    decode_all(f, &p.e)?,
                    p.coassociative,
                )?)
            }
            "yb_operator" => {
                let p: YbPayload = payload(kind, v)?;
                let obstructors = decode_all(f, &p.e)?;
                let algebra = match &p.m {
                    Some(m) => Some(ObstructedAlgebra::new(
                        decode_all(f, m)?,
                        obstructors.clone(),
                        p.associative,
                    )?),
                    None if p.associative => {
                        return Err(Error::Parse("associative set without m".into()))
                    }
                    None => None,
                };
                let coalgebra = match &p.delta {
                    Some(d) => Some(ObstructedCoalgebra::new(
                        decode_all(f, d)?,
                        obstructors.clone(),
                        p.coassociative,
                    )?),
                    None if p.coassociative => {
                        return Err(Error::Parse("coassociative set without Delta".into()))
                    }
                    None => None,
                };
                let operator = RegularYBOperator::new(decode_all(f, &p.r)?, decode_opt(f, &p.r_star)?);
                operator.verify(&obstructors).map(|_| ())?;
                Structure::YbOperator {
                    obstructors,
                    algebra,
                    coalgebra,
                    operator,
                }
            }
            "bialgebra" => Structure::Bialgebra(bialgebra_from(f, &payload(kind, v)?)?),
            "antipode" => {
                let p: AntipodePayload = payload(kind, v)?;
                Structure::Antipode {
                    bialgebra: bialgebra_from(f, &p.bialgebra)?,
                    antipode: AntipodePair::new(decode_all(f, &p.s)?, decode_opt(f, &p.s_star)?),
                }
            }
            "module_action" => {
                let p: ModulePayload = payload(kind, v)?;
                let side = match p.side.as_str() {
                    "left" => ActionSide::Left,
                    "right" => ActionSide::Right,
                    other => return Err(Error::Parse(format!("unknown module side {other:?}"))),
                };
                Structure::ModuleAction {
                    bialgebra: bialgebra_from(f, &p.bialgebra)?,
                    module: ObstructedModuleAction::new(side, decode_all(f, &p.e)?, decode_all(f, &p.rho)?),
                }
            }
            "search_spec" => {
                let p: SearchPayload = payload(kind, v)?;
                let mut spec = SearchSpec::new(decode(f, &p.e)?);
                if spec.dim != p.dim {
                    return Err(Error::Shape(format!(
                        "search dim {} but obstructor is {}x{}",
                        p.dim, spec.dim, spec.dim
                    )));
                }
                spec.field = f;
                spec.constraints = parse_constraints(&p.constraints)?;
                spec.cap = p.cap.unwrap_or(DEFAULT_CAP);
                spec.workers = p.workers.unwrap_or(1);
                spec.allow_over_cap = p.allow_over_cap;
                Structure::SearchSpec(spec)
            }
            "matrix" => Structure::Matrix(decode(f, &payload::<MatrixPayload>(kind, v)?.m)?),
            "catalog" => {
                let p: CatalogPayload = payload(kind, v)?;
                let target = match p.target.as_str() {
                    "yb_operator" => CatalogTarget::YbOperator,
                    "antipode" => CatalogTarget::Antipode,
                    other => return Err(Error::Parse(format!("unknown catalog target {other:?}"))),
                };
                if p.count != p.entries.len() {
                    return Err(Error::Parse(format!(
                        "catalog count {} but {} entries",
                        p.count,
                        p.entries.len()
                    )));
                }
                let search = p
                    .search
                    .as_ref()
                    .map(|s| {
                        Ok::<_, Error>(SearchEcho {
                            constraints: parse_constraints(&s.constraints)?,
                            cap: s.cap,
                            allow_over_cap: s.allow_over_cap,
                        })
                    })
                    .transpose()?;
                let entries = p
                    .entries
                    .iter()
                    .map(|e| {
                        if e.level == 0 {
                            return Err(Error::Parse("catalog levels are 1-based".into()));
                        }
                        Ok(CatalogEntry {
                            level: e.level - 1,
                            matrix: decode(f, &e.matrix)?,
                            verified: e.verified.clone(),
                            star: e.star.as_ref().map(|s| decode(f, s)).transpose()?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Structure::Catalog {
                    catalog: SolutionCatalog {
                        target,
                        field: f,
                        obstructors: decode_all(f, &p.e)?,
                        search,
                        entries,
                        examined: p.examined,
                    },
                    bialgebra: p.bialgebra.as_ref().map(|b| bialgebra_from(f, b)).transpose()?,
                }
            }
            other => return Err(Error::Parse(format!("unknown bundle kind {other:?}"))),
        };
        Ok(Bundle {
            field,
            metadata: env.metadata,
            structure,
        })
    }

    fn payload_value(&self) -> Value {
        match &self.structure {
            Structure::Cocycle(c) => to_value(&cocycle_to(c)),
            Structure::Braiding(b) => to_value(&BraidingPayload {
                left: cocycle_to(b.left()),
                right: cocycle_to(b.right()),
                b: encode_all(b.components()),
                b_star: b.star_components().map(encode_all),
            }),
            Structure::Algebra(a) => to_value(&AlgebraPayload {
                e: encode_all(&a.obstructors),
                m: encode_all(&a.mults),
                associative: a.associative,
            }),
            Structure::Coalgebra(c) => to_value(&CoalgebraPayload {
                e: encode_all(&c.obstructors),
                delta: encode_all(&c.comults),
                coassociative: c.coassociative,
            }),
            Structure::YbOperator {
                obstructors,
                algebra,
                coalgebra,
                operator,
            } => to_value(&YbPayload {
                e: encode_all(obstructors),
                m: algebra.as_ref().map(|a| encode_all(&a.mults)),
                associative: algebra.as_ref().is_some_and(|a| a.associative),
                delta: coalgebra.as_ref().map(|c| encode_all(&c.comults)),
                coassociative: coalgebra.as_ref().is_some_and(|c| c.coassociative),
                r: encode_all(&operator.operators),
                r_star: operator.star_operators.as_deref().map(encode_all),
            }),
            Structure::Bialgebra(h) => to_value(&bialgebra_to(h)),
            Structure::Antipode { bialgebra, antipode } => to_value(&AntipodePayload {
                bialgebra: bialgebra_to(bialgebra),
                s: encode_all(&antipode.antipodes),
                s_star: antipode.star_antipodes.as_deref().map(encode_all),
            }),
            Structure::ModuleAction { bialgebra, module } => to_value(&ModulePayload {
                bialgebra: bialgebra_to(bialgebra),
                side: side_name(module.side).to_string(),
                e: encode_all(&module.obstructors),
                rho: encode_all(&module.actions),
            }),
            Structure::SearchSpec(s) => to_value(&SearchPayload {
                dim: s.dim,
                e: encode(&s.obstructor),
                constraints: constraint_names(&s.constraints),
                cap: Some(s.cap),
                workers: Some(s.workers),
                allow_over_cap: s.allow_over_cap,
            }),
            Structure::Matrix(m) => to_value(&MatrixPayload { m: encode(m) }),
            Structure::Catalog { catalog, bialgebra } => to_value(&CatalogPayload {
                target: catalog.target.name().to_string(),
                e: encode_all(&catalog.obstructors),
                search: catalog.search.map(|s| EchoPayload {
                    constraints: constraint_names(&s.constraints),
                    cap: s.cap,
                    allow_over_cap: s.allow_over_cap,
                }),
                bialgebra: bialgebra.as_ref().map(bialgebra_to),
                examined: catalog.examined,
                count: catalog.entries.len(),
                entries: catalog
                    .entries
                    .iter()
                    .map(|e| EntryPayload {
                        level: e.level + 1,
                        matrix: encode(&e.matrix),
                        verified: e.verified.clone(),
                        star: e.star.as_ref().map(encode),
                    })
                    .collect(),
            }),
        }
    }

    /// Pretty JSON with a trailing newline; deterministic for equal bundles.
    pub fn to_json(&self) -> String {
        let env = Envelope {
            format_version: FORMAT_VERSION,
            field: self.field.to_string(),
            kind: self.kind().to_string(),
            metadata: self.metadata.clone(),
            payload: self.payload_value(),
        };
        let mut text = String::new();
        write_json(&to_value(&env), 0, &mut text);
        text.push('\n');
        text
    }

    /// Every matrix in the payload, in a fixed order, for corruption tests.
    pub fn matrices_mut(&mut self) -> Vec<&mut Matrix> {
        fn bialgebra(h: &mut ObstructedBialgebra) -> Vec<&mut Matrix> {
            let mut out: Vec<&mut Matrix> = Vec::new();
            out.extend(h.algebra.obstructors.iter_mut());
            out.extend(h.algebra.mults.iter_mut());
            out.extend(h.coalgebra.comults.iter_mut());
            out.extend(h.units.iter_mut().flatten());
            out.extend(h.counits.iter_mut().flatten());
            out
        }
        match &mut self.structure {
            Structure::Cocycle(c) => c.arrows_mut().iter_mut().collect(),
            Structure::Braiding(b) => b.matrices_mut(),
            Structure::Algebra(a) => a.obstructors.iter_mut().chain(a.mults.iter_mut()).collect(),
            Structure::Coalgebra(c) => c.obstructors.iter_mut().chain(c.comults.iter_mut()).collect(),
            Structure::YbOperator {
                obstructors,
                algebra,
                coalgebra,
                operator,
            } => {
                let mut out: Vec<&mut Matrix> = obstructors.iter_mut().collect();
                if let Some(a) = algebra {
                    out.extend(a.mults.iter_mut());
                }
                if let Some(c) = coalgebra {
                    out.extend(c.comults.iter_mut());
                }
                out.extend(operator.operators.iter_mut());
                out.extend(operator.star_operators.iter_mut().flatten());
                out
            }
            Structure::Bialgebra(h) => bialgebra(h),
            Structure::Antipode { bialgebra: h, antipode } => {
                let mut out = bialgebra(h);
                out.extend(antipode.antipodes.iter_mut());
                out.extend(antipode.star_antipodes.iter_mut().flatten());
                out
            }
            Structure::ModuleAction { bialgebra: h, module } => {
                let mut out = bialgebra(h);
                out.extend(module.obstructors.iter_mut());
                out.extend(module.actions.iter_mut());
                out
            }
            Structure::SearchSpec(s) => vec![&mut s.obstructor],
            Structure::Matrix(m) => vec![m],
            Structure::Catalog { catalog, bialgebra: h } => {
                let mut out: Vec<&mut Matrix> = catalog.obstructors.iter_mut().collect();
                for e in &mut catalog.entries {
                    out.push(&mut e.matrix);
                    out.extend(e.star.iter_mut());
                }
                if let Some(h) = h {
                    out.extend(bialgebra(h));
                }
                out
            }
        }
    }
}
