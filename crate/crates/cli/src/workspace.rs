//! JSON workspace files: groups, Hopf algebras, backends, actions and character tables.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use hopfva_core::action::HopfAction;
use hopfva_core::hopf::{group_algebra, sweedler, FinHopfAlgebra, GroupTable};
use hopfva_core::linalg::Matrix;
use hopfva_core::scalar::{lcm_conductor, Scalar};
use hopfva_core::schurweyl::CharacterTable;
use hopfva_core::vertexalg::{CommDiffVA, Poly};

use crate::polyparse::parse_poly;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("unresolved {kind} reference {name:?} in {from}")]
    UnresolvedReference { kind: &'static str, name: String, from: String },
    #[error("duplicate {kind} name {name:?}")]
    DuplicateName { kind: &'static str, name: String },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

fn invalid(context: impl Into<String>, message: impl ToString) -> LoadError {
    LoadError::Invalid { context: context.into(), message: message.to_string() }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ScalarSpec {
    Int(i64),
    Text(String),
}

impl ScalarSpec {
    fn parse(&self, context: &str) -> Result<Scalar, LoadError> {
        match self {
            ScalarSpec::Int(v) => Ok(Scalar::from_int(*v)),
            ScalarSpec::Text(s) => Scalar::from_str(s).map_err(|e| invalid(context, format!("{s:?}: {e}"))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSpec {
    schema_version: u32,
    #[serde(default)]
    conductor: Option<u32>,
    #[serde(default)]
    groups: Vec<GroupSpec>,
    #[serde(default)]
    hopf_algebras: Vec<HopfSpec>,
    #[serde(default)]
    backends: Vec<BackendSpec>,
    #[serde(default)]
    actions: Vec<ActionSpec>,
    #[serde(default)]
    character_tables: Vec<TableSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    name: String,
    #[serde(default)]
    cyclic: Option<usize>,
    #[serde(default)]
    builtin: Option<String>,
    #[serde(default)]
    product: Option<(String, String)>,
    #[serde(default)]
    elements: Option<Vec<String>>,
    #[serde(default)]
    table: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfSpec {
    name: String,
    #[serde(default)]
    group: Option<String>,
    #[serde(default)]
    builtin: Option<String>,
    #[serde(default)]
    basis: Option<Vec<String>>,
    /// `[a, b, c, coef]`: coefficient of `c` in `a·b`.
    #[serde(default)]
    mul: Vec<(String, String, String, ScalarSpec)>,
    #[serde(default)]
    unit: Vec<(String, ScalarSpec)>,
    /// `[a, b, c, coef]`: coefficient of `b⊗c` in `Δ(a)`.
    #[serde(default)]
    comul: Vec<(String, String, String, ScalarSpec)>,
    #[serde(default)]
    counit: Vec<(String, ScalarSpec)>,
    /// `[a, b, coef]`: coefficient of `b` in `S(a)`.
    #[serde(default)]
    antipode: Vec<(String, String, ScalarSpec)>,
    #[serde(default)]
    defer_verification: bool,
    #[serde(default)]
    group_like_hints: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BackendSpec {
    name: String,
    variables: Vec<String>,
    derivation: Vec<String>,
    cap: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionSpec {
    name: String,
    hopf: String,
    backend: String,
    #[serde(default)]
    trivial: bool,
    /// Hopf basis name to the images of the backend variables.
    #[serde(default)]
    images: BTreeMap<String, Vec<String>>,
    #[serde(default = "yes")]
    filtration_compatible: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableSpec {
    name: String,
    group: String,
    #[serde(default)]
    builtin: Option<String>,
    #[serde(default)]
    classes: Vec<Vec<String>>,
    #[serde(default)]
    characters: Vec<CharacterSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterSpec {
    name: String,
    values: Vec<ScalarSpec>,
    /// One matrix per group element, in group order, as rows.
    #[serde(default)]
    irrep: Option<Vec<Vec<Vec<ScalarSpec>>>>,
}

#[derive(Clone, Debug)]
pub struct ActionDef {
    pub hopf: String,
    pub backend: String,
    pub trivial: bool,
    pub images: Vec<Vec<Poly>>,
    pub filtration_compatible: bool,
}

#[derive(Clone, Debug)]
pub struct TableDef {
    pub group: String,
    pub table: CharacterTable,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub conductor: u32,
    pub groups: BTreeMap<String, GroupTable>,
    pub hopf_algebras: BTreeMap<String, FinHopfAlgebra>,
    /// Hopf algebras built as group algebras, by group name.
    pub hopf_groups: BTreeMap<String, String>,
    pub backends: BTreeMap<String, CommDiffVA>,
    pub actions: BTreeMap<String, ActionDef>,
    pub character_tables: BTreeMap<String, TableDef>,
}

fn insert<T>(map: &mut BTreeMap<String, T>, kind: &'static str, name: &str, value: T) -> Result<(), LoadError> {
    if map.contains_key(name) {
        return Err(LoadError::DuplicateName { kind, name: name.to_string() });
    }
    map.insert(name.to_string(), value);
    Ok(())
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &'static str, name: &str, from: &str) -> Result<&'a T, LoadError> {
    map.get(name).ok_or_else(|| LoadError::UnresolvedReference { kind, name: name.to_string(), from: from.to_string() })
}

fn index_in(names: &[String], name: &str, context: &str) -> Result<usize, LoadError> {
    names.iter().position(|n| n == name).ok_or_else(|| invalid(context, format!("unknown basis element {name:?}")))
}

impl Workspace {
    pub fn load<P: AsRef<Path>>(paths: &[P]) -> Result<Self, LoadError> {
        let mut ws = Workspace { conductor: 1, ..Default::default() };
        for p in paths {
            let path = p.as_ref().display().to_string();
            let text = std::fs::read_to_string(p).map_err(|e| LoadError::Io { path: path.clone(), message: e.to_string() })?;
            ws.add_str(&text, &path)?;
        }
        Ok(ws)
    }

    pub fn from_str(text: &str) -> Result<Self, LoadError> {
        let mut ws = Workspace { conductor: 1, ..Default::default() };
        ws.add_str(text, "<input>")?;
        Ok(ws)
    }

    fn add_str(&mut self, text: &str, path: &str) -> Result<(), LoadError> {
        let file: FileSpec = serde_json::from_str(text).map_err(|e| LoadError::Parse {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(invalid(path, format!("unsupported schema_version {}", file.schema_version)));
        }
        if let Some(c) = file.conductor {
            self.conductor = lcm_conductor(self.conductor, c);
        }
        for g in file.groups {
            let table = self.build_group(&g)?;
            insert(&mut self.groups, "group", &g.name, table)?;
        }
        for h in file.hopf_algebras {
            let (alg, group) = self.build_hopf(&h)?;
            insert(&mut self.hopf_algebras, "hopf algebra", &h.name, alg)?;
            if let Some(g) = group {
                self.hopf_groups.insert(h.name.clone(), g);
            }
        }
        for b in file.backends {
            let a = build_backend(&b)?;
            insert(&mut self.backends, "backend", &b.name, a)?;
        }
        for a in file.actions {
            let def = self.build_action(&a)?;
            insert(&mut self.actions, "action", &a.name, def)?;
        }
        for t in file.character_tables {
            let def = self.build_table(&t)?;
            insert(&mut self.character_tables, "character table", &t.name, def)?;
        }
        Ok(())
    }

    fn build_group(&self, g: &GroupSpec) -> Result<GroupTable, LoadError> {
        let ctx = format!("group {}", g.name);
        if let Some(n) = g.cyclic {
            if n == 0 {
                return Err(invalid(ctx, "cyclic order must be positive"));
            }
            return Ok(GroupTable::cyclic(n));
        }
        if let Some(b) = &g.builtin {
            return match b.as_str() {
                "klein" => Ok(GroupTable::klein()),
                "symmetric3" => Ok(GroupTable::symmetric3()),
                other => Err(invalid(ctx, format!("unknown builtin {other:?}"))),
            };
        }
        if let Some((a, b)) = &g.product {
            let a = lookup(&self.groups, "group", a, &ctx)?;
            let b = lookup(&self.groups, "group", b, &ctx)?;
            return Ok(a.product(b));
        }
        let (Some(elements), Some(table)) = (&g.elements, &g.table) else {
            return Err(invalid(ctx, "expected cyclic, builtin, product, or elements with table"));
        };
        let idx = |n: &String| index_in(elements, n, &ctx);
        let rows = table.iter().map(|r| r.iter().map(idx).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
        GroupTable::new(elements.clone(), rows).map_err(|e| invalid(&ctx, e))
    }

    fn build_hopf(&self, h: &HopfSpec) -> Result<(FinHopfAlgebra, Option<String>), LoadError> {
        let ctx = format!("hopf algebra {}", h.name);
        if let Some(g) = &h.group {
            let table = lookup(&self.groups, "group", g, &ctx)?;
            return Ok((group_algebra(table), Some(g.clone())));
        }
        if let Some(b) = &h.builtin {
            return match b.as_str() {
                "sweedler" => Ok((sweedler(), None)),
                other => Err(invalid(ctx, format!("unknown builtin {other:?}"))),
            };
        }
        let Some(names) = &h.basis else {
            return Err(invalid(ctx, "expected group, builtin, or basis with structure constants"));
        };
        let d = names.len();
        let ix = |n: &str| index_in(names, n, &ctx);
        let mut mul = Matrix::zeros(d, d * d);
        for (a, b, c, v) in &h.mul {
            mul.add_at(ix(c)?, ix(a)? * d + ix(b)?, &v.parse(&ctx)?);
        }
        let mut unit = vec![Scalar::zero(); d];
        for (a, v) in &h.unit {
            unit[ix(a)?] += &v.parse(&ctx)?;
        }
        let mut comul = Matrix::zeros(d * d, d);
        for (a, b, c, v) in &h.comul {
            comul.add_at(ix(b)? * d + ix(c)?, ix(a)?, &v.parse(&ctx)?);
        }
        let mut counit = vec![Scalar::zero(); d];
        for (a, v) in &h.counit {
            counit[ix(a)?] += &v.parse(&ctx)?;
        }
        let mut antipode = Matrix::zeros(d, d);
        for (a, b, v) in &h.antipode {
            antipode.add_at(ix(b)?, ix(a)?, &v.parse(&ctx)?);
        }
        let alg = if h.defer_verification {
            FinHopfAlgebra::new_unverified(names.clone(), mul, unit, comul, counit, antipode)
        } else {
            FinHopfAlgebra::new(names.clone(), mul, unit, comul, counit, antipode)
        }
        .map_err(|e| invalid(&ctx, e))?;
        let hints = h.group_like_hints.iter().map(|n| ix(n)).collect::<Result<Vec<_>, _>>()?;
        Ok((alg.with_group_like_hints(hints), None))
    }

    fn build_action(&self, a: &ActionSpec) -> Result<ActionDef, LoadError> {
        let ctx = format!("action {}", a.name);
        let h = lookup(&self.hopf_algebras, "hopf algebra", &a.hopf, &ctx)?;
        let b = lookup(&self.backends, "backend", &a.backend, &ctx)?;
        let mut images = Vec::new();
        if !a.trivial {
            for name in h.names() {
                let polys = a.images.get(name).ok_or_else(|| invalid(&ctx, format!("no images for {name:?}")))?;
                if polys.len() != b.nvars() {
                    return Err(invalid(&ctx, format!("{name:?} needs {} images", b.nvars())));
                }
                images.push(
                    polys.iter().map(|p| parse_poly(p, b.names()).map_err(|e| invalid(&ctx, e))).collect::<Result<_, _>>()?,
                );
            }
            if let Some(extra) = a.images.keys().find(|k| !h.names().contains(k)) {
                return Err(invalid(&ctx, format!("unknown basis element {extra:?}")));
            }
        }
        let def = ActionDef {
            hopf: a.hopf.clone(),
            backend: a.backend.clone(),
            trivial: a.trivial,
            images,
            filtration_compatible: a.filtration_compatible,
        };
        self.instantiate(&def, None).map_err(|e| invalid(&ctx, e))?;
        Ok(def)
    }

    fn build_table(&self, t: &TableSpec) -> Result<TableDef, LoadError> {
        let ctx = format!("character table {}", t.name);
        let g = lookup(&self.groups, "group", &t.group, &ctx)?;
        let table = match t.builtin.as_deref() {
            Some("cyclic") => CharacterTable::cyclic(g.order()),
            Some("symmetric3") => CharacterTable::symmetric3(),
            Some(other) => return Err(invalid(ctx, format!("unknown builtin {other:?}"))),
            None => {
                let classes = t
                    .classes
                    .iter()
                    .map(|c| c.iter().map(|n| index_in(g.names(), n, &ctx)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let names = t.characters.iter().map(|c| c.name.clone()).collect();
                let values = t
                    .characters
                    .iter()
                    .map(|c| c.values.iter().map(|v| v.parse(&ctx)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let mut table = CharacterTable::new(names, classes, values).map_err(|e| invalid(&ctx, e))?;
                for c in &t.characters {
                    if let Some(ms) = &c.irrep {
                        let mats = ms
                            .iter()
                            .map(|rows| {
                                rows.iter()
                                    .map(|r| r.iter().map(|v| v.parse(&ctx)).collect::<Result<Vec<_>, _>>())
                                    .collect::<Result<Vec<_>, _>>()
                                    .map(Matrix::from_rows)
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        table = table.with_irrep(&c.name, mats).map_err(|e| invalid(&ctx, e))?;
                    }
                }
                table
            }
        };
        Ok(TableDef { group: t.group.clone(), table })
    }

    /// Builds the action at the backend cap, or at `cap` when given.
    pub fn instantiate(&self, def: &ActionDef, cap: Option<u32>) -> Result<HopfAction, String> {
        let h = self.hopf_algebras[&def.hopf].clone();
        let base = &self.backends[&def.backend];
        let b = cap.map_or_else(|| base.clone(), |c| base.with_cap(c));
        if def.trivial {
            return Ok(HopfAction::trivial(h, b));
        }
        HopfAction::from_generator_images(h, b, def.images.clone(), def.filtration_compatible).map_err(|e| e.to_string())
    }
}

fn build_backend(b: &BackendSpec) -> Result<CommDiffVA, LoadError> {
    let ctx = format!("backend {}", b.name);
    if b.derivation.len() != b.variables.len() {
        return Err(invalid(ctx, "one derivation image per variable is required"));
    }
    let images =
        b.derivation.iter().map(|p| parse_poly(p, &b.variables).map_err(|e| invalid(&ctx, e))).collect::<Result<_, _>>()?;
    CommDiffVA::new(b.variables.clone(), images, b.cap).map_err(|e| invalid(&ctx, e))
}
