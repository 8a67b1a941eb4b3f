//! On-disk formats: category spec files, graded/indexed monad spec files,
//! law-report serialization, and serialization of built categories with a
//! provenance block. All emission is deterministic (sorted keys, table
//! order) so golden files compare bytewise.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{GmError, Result};
use crate::fincat::{
    validate_monoidal, FiniteCategory, FunctorTable, Monoidal, NatTransTable,
    PartialMonoidalCategory, RawCategory, StrictMonoidalCategory,
};
use crate::graded::{Grading, TableGradedMonad};
use crate::indexed::TableIndexedMonad;
use crate::instances::{ExcVariant, ExceptionGradedMonad};
use crate::statemonads::{build_state_monads, StateGradedMonad, StateIndexedMonad};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompCell {
    pub g: String,
    pub f: String,
    pub result: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorObCell {
    pub a: String,
    pub b: String,
    pub result: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorMorCell {
    pub f: String,
    pub g: String,
    pub result: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalSpec {
    pub tensor_ob: Vec<TensorObCell>,
    pub tensor_mor: Vec<TensorMorCell>,
    pub unit: String,
}

/// The UTF-8 JSON category spec format. Unknown keys are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    #[serde(default)]
    pub name: Option<String>,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: BTreeMap<String, String>,
    pub comp: Vec<CompCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoidal: Option<MonoidalSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// Construction provenance attached to emitted category files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub construction: String,
    pub source_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<serde_json::Value>,
}

impl CategorySpec {
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            name: self.name.clone().unwrap_or_else(|| "category".into()),
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| (m.id.clone(), m.src.clone(), m.dst.clone()))
                .collect(),
            identities: self.identities.clone(),
            comp: self
                .comp
                .iter()
                .map(|c| (c.g.clone(), c.f.clone(), c.result.clone()))
                .collect(),
        }
    }

    /// Validate into a category plus, when present, its monoidal structure
    /// (total when every cell is given, truncated otherwise).
    pub fn build(&self) -> std::result::Result<(Arc<FiniteCategory>, Option<Grading>), Vec<String>> {
        let cat = Arc::new(self.to_raw().validate()?);
        let Some(m) = &self.monoidal else {
            return Ok((cat, None));
        };
        let mut defects = Vec::new();
        let mut tensor_ob = BTreeMap::new();
        for cell in &m.tensor_ob {
            match (
                cat.object_by_id(&cell.a),
                cat.object_by_id(&cell.b),
                cat.object_by_id(&cell.result),
            ) {
                (Ok(a), Ok(b), Ok(r)) => {
                    tensor_ob.insert((a, b), r);
                }
                _ => defects.push(format!(
                    "tensor_ob cell ({}, {}) uses unknown objects",
                    cell.a, cell.b
                )),
            }
        }
        let mut tensor_mor = BTreeMap::new();
        for cell in &m.tensor_mor {
            match (
                cat.morphism_by_id(&cell.f),
                cat.morphism_by_id(&cell.g),
                cat.morphism_by_id(&cell.result),
            ) {
                (Ok(f), Ok(g), Ok(r)) => {
                    tensor_mor.insert((f, g), r);
                }
                _ => defects.push(format!(
                    "tensor_mor cell ({}, {}) uses unknown morphisms",
                    cell.f, cell.g
                )),
            }
        }
        let unit = match cat.object_by_id(&m.unit) {
            Ok(u) => u,
            Err(_) => {
                defects.push(format!("unknown unit object `{}`", m.unit));
                return Err(defects);
            }
        };
        if !defects.is_empty() {
            return Err(defects);
        }
        let total = cat.objects().all(|a| {
            cat.objects()
                .all(|b| tensor_ob.contains_key(&(a, b)))
        }) && cat.morphisms().all(|f| {
            cat.morphisms()
                .all(|g| tensor_mor.contains_key(&(f, g)))
        });
        let grading = if total {
            let smc = StrictMonoidalCategory::new(cat.clone(), tensor_ob, tensor_mor, unit)
                .map_err(|e| vec![e.to_string()])?;
            Grading::Total(Arc::new(smc))
        } else {
            Grading::Truncated(Arc::new(PartialMonoidalCategory::new(
                cat.clone(),
                tensor_ob,
                tensor_mor,
                unit,
            )))
        };
        let report = match &grading {
            Grading::Total(m) => validate_monoidal(&**m),
            Grading::Truncated(m) => validate_monoidal(&**m),
        };
        if !report.passed() {
            let mut defects: Vec<String> = report
                .failures()
                .map(|l| format!("{}: {:?}", l.axiom, l.witness))
                .collect();
            defects.insert(0, "monoidal laws fail".into());
            return Err(defects);
        }
        Ok((cat, Some(grading)))
    }
}

/// Export a category (optionally with tensor tables and provenance) in the
/// spec format.
pub fn category_to_spec(
    cat: &FiniteCategory,
    monoidal: Option<&dyn Monoidal>,
    provenance: Option<Provenance>,
) -> CategorySpec {
    let raw = cat.to_raw();
    let monoidal = monoidal.map(|m| {
        let mut tensor_ob = Vec::new();
        for a in cat.objects() {
            for b in cat.objects() {
                if let Some(r) = m.tensor_ob(a, b) {
                    tensor_ob.push(TensorObCell {
                        a: cat.object_id(a).into(),
                        b: cat.object_id(b).into(),
                        result: cat.object_id(r).into(),
                    });
                }
            }
        }
        let mut tensor_mor = Vec::new();
        for f in cat.morphisms() {
            for g in cat.morphisms() {
                if let Some(r) = m.tensor_mor(f, g) {
                    tensor_mor.push(TensorMorCell {
                        f: cat.morphism_id(f).into(),
                        g: cat.morphism_id(g).into(),
                        result: cat.morphism_id(r).into(),
                    });
                }
            }
        }
        MonoidalSpec {
            tensor_ob,
            tensor_mor,
            unit: cat.object_id(m.unit()).into(),
        }
    });
    let mut comp = raw
        .comp
        .iter()
        .map(|(g, f, r)| CompCell {
            g: g.clone(),
            f: f.clone(),
            result: r.clone(),
        })
        .collect::<Vec<_>>();
    comp.sort_by(|x, y| (&x.g, &x.f).cmp(&(&y.g, &y.f)));
    CategorySpec {
        name: Some(raw.name),
        objects: raw.objects,
        morphisms: raw
            .morphisms
            .into_iter()
            .map(|(id, src, dst)| MorphismSpec { id, src, dst })
            .collect(),
        identities: raw.identities,
        comp,
        monoidal,
        provenance,
    }
}

/// A reference to a category spec: inline or a path relative to the
/// referencing file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecRef {
    Path(String),
    Inline(Box<CategorySpec>),
}

impl SpecRef {
    fn resolve(&self, base_dir: &Path) -> Result<CategorySpec> {
        match self {
            SpecRef::Inline(spec) => Ok((**spec).clone()),
            SpecRef::Path(p) => {
                let path = base_dir.join(p);
                let text = std::fs::read_to_string(&path).map_err(|e| GmError::Io {
                    path: path.display().to_string(),
                    source: e,
                })?;
                serde_json::from_str(&text).map_err(|e| GmError::Parse {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })
            }
        }
    }
}

/// Table-flavor graded monad spec: all symbol tables explicit.
///
/// The key set extends the minimal `grading`/`base`/`T_ob`/`T_mor`/`eta`/`mu`
/// contract with `T_u`, which carries the reindexing components that the
/// other keys cannot express.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedTableSpec {
    pub grading: SpecRef,
    pub base: SpecRef,
    /// grade -> (object -> object)
    #[serde(rename = "T_ob")]
    pub t_ob: BTreeMap<String, BTreeMap<String, String>>,
    /// grade -> (morphism -> morphism)
    #[serde(rename = "T_mor")]
    pub t_mor: BTreeMap<String, BTreeMap<String, String>>,
    /// grading morphism -> (object -> morphism)
    #[serde(rename = "T_u", default)]
    pub t_u: BTreeMap<String, BTreeMap<String, String>>,
    /// object -> morphism
    pub eta: BTreeMap<String, String>,
    /// grade -> grade -> (object -> morphism)
    pub mu: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

/// Builtin-flavor graded spec: a named computed instance with parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedBuiltinSpec {
    pub builtin: String,
    #[serde(default)]
    pub exceptions: Option<Vec<String>>,
    #[serde(default)]
    pub values: Option<usize>,
    #[serde(default)]
    pub registers: Option<usize>,
    #[serde(default)]
    pub probe_max: Option<usize>,
    /// `poset` (reindexing arrow present) or `discrete`.
    #[serde(default)]
    pub grading_style: Option<String>,
    #[serde(default)]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GradedSpec {
    Builtin(GradedBuiltinSpec),
    Table(Box<GradedTableSpec>),
}

/// A loaded graded monad, either backend.
pub enum LoadedGraded {
    Table(TableGradedMonad),
    Exception(ExceptionGradedMonad),
    State(StateGradedMonad),
}

impl LoadedGraded {
    pub fn check(&self) -> crate::report::LawReport {
        match self {
            LoadedGraded::Table(g) => crate::graded::check_graded_monad(g),
            LoadedGraded::Exception(g) => crate::graded::check_graded_monad(g),
            LoadedGraded::State(g) => crate::graded::check_graded_monad(g),
        }
    }
}

fn build_table_graded(spec: &GradedTableSpec, base_dir: &Path) -> Result<TableGradedMonad> {
    let grading_spec = spec.grading.resolve(base_dir)?;
    let (_, Some(grading)) = grading_spec
        .build()
        .map_err(|d| GmError::invalid("grading spec", d.join("; ")))?
    else {
        return Err(GmError::invalid(
            "grading spec",
            "missing `monoidal` block in the grading category",
        ));
    };
    let base_spec = spec.base.resolve(base_dir)?;
    let (base, _) = base_spec
        .build()
        .map_err(|d| GmError::invalid("base spec", d.join("; ")))?;
    let m_cat = grading.base().clone();

    let mut t = Vec::with_capacity(m_cat.object_count());
    for m in m_cat.objects() {
        let mid = m_cat.object_id(m);
        let obs = spec
            .t_ob
            .get(mid)
            .ok_or_else(|| GmError::invalid("graded spec", format!("T_ob missing grade `{mid}`")))?;
        let mors = spec
            .t_mor
            .get(mid)
            .ok_or_else(|| GmError::invalid("graded spec", format!("T_mor missing grade `{mid}`")))?;
        let mut ob_map = Vec::with_capacity(base.object_count());
        for x in base.objects() {
            let xid = base.object_id(x);
            let tgt = obs.get(xid).ok_or_else(|| {
                GmError::invalid("graded spec", format!("T_ob[{mid}] missing object `{xid}`"))
            })?;
            ob_map.push(base.object_by_id(tgt)?);
        }
        let mut mor_map = Vec::with_capacity(base.morphism_count());
        for f in base.morphisms() {
            let fid = base.morphism_id(f);
            let tgt = mors.get(fid).ok_or_else(|| {
                GmError::invalid("graded spec", format!("T_mor[{mid}] missing morphism `{fid}`"))
            })?;
            mor_map.push(base.morphism_by_id(tgt)?);
        }
        t.push(FunctorTable {
            src: base.clone(),
            dst: base.clone(),
            ob_map,
            mor_map,
        });
    }
    let mut tu = Vec::with_capacity(m_cat.morphism_count());
    for u in m_cat.morphisms() {
        let uid = m_cat.morphism_id(u);
        let (s, tgt) = (m_cat.src(u), m_cat.tgt(u));
        let components = if m_cat.is_identity(u) && !spec.t_u.contains_key(uid) {
            // Identity grading morphisms default to identity components.
            base.objects()
                .map(|x| base.identity(t[s].ob(x)))
                .collect()
        } else {
            let table = spec.t_u.get(uid).ok_or_else(|| {
                GmError::invalid("graded spec", format!("T_u missing grading morphism `{uid}`"))
            })?;
            let mut v = Vec::with_capacity(base.object_count());
            for x in base.objects() {
                let xid = base.object_id(x);
                let comp = table.get(xid).ok_or_else(|| {
                    GmError::invalid("graded spec", format!("T_u[{uid}] missing object `{xid}`"))
                })?;
                v.push(base.morphism_by_id(comp)?);
            }
            v
        };
        tu.push(NatTransTable {
            dom: t[s].clone(),
            cod: t[tgt].clone(),
            components,
        });
    }
    let unit = grading.unit();
    let mut eta_components = Vec::with_capacity(base.object_count());
    for x in base.objects() {
        let xid = base.object_id(x);
        let comp = spec
            .eta
            .get(xid)
            .ok_or_else(|| GmError::invalid("graded spec", format!("eta missing object `{xid}`")))?;
        eta_components.push(base.morphism_by_id(comp)?);
    }
    let eta = NatTransTable {
        dom: FunctorTable::identity(&base),
        cod: t[unit].clone(),
        components: eta_components,
    };
    let mut mu = BTreeMap::new();
    for m in m_cat.objects() {
        for n in m_cat.objects() {
            let Some(mn) = grading.tensor_ob(m, n) else {
                continue;
            };
            let (mid, nid) = (m_cat.object_id(m), m_cat.object_id(n));
            let table = spec
                .mu
                .get(mid)
                .and_then(|row| row.get(nid))
                .ok_or_else(|| {
                    GmError::invalid("graded spec", format!("mu missing cell ({mid}, {nid})"))
                })?;
            let mut components = Vec::with_capacity(base.object_count());
            for x in base.objects() {
                let xid = base.object_id(x);
                let comp = table.get(xid).ok_or_else(|| {
                    GmError::invalid(
                        "graded spec",
                        format!("mu[{mid}][{nid}] missing object `{xid}`"),
                    )
                })?;
                components.push(base.morphism_by_id(comp)?);
            }
            mu.insert(
                (m, n),
                NatTransTable {
                    dom: t[m].after(&t[n]),
                    cod: t[mn].clone(),
                    components,
                },
            );
        }
    }
    Ok(TableGradedMonad::new("from-spec", grading, base, t, tu, eta, mu))
}

/// Export a table graded monad in the spec format.
pub fn table_graded_to_spec(gm: &TableGradedMonad) -> GradedTableSpec {
    let m_cat = gm.grading.base().clone();
    let base = &gm.base;
    let grading_spec = category_to_spec(&m_cat, Some(&gm.grading), None);
    let base_spec = category_to_spec(base, None, None);
    let t_ob = m_cat
        .objects()
        .map(|m| {
            (
                m_cat.object_id(m).to_string(),
                base.objects()
                    .map(|x| {
                        (
                            base.object_id(x).to_string(),
                            base.object_id(gm.t[m].ob(x)).to_string(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let t_mor = m_cat
        .objects()
        .map(|m| {
            (
                m_cat.object_id(m).to_string(),
                base.morphisms()
                    .map(|f| {
                        (
                            base.morphism_id(f).to_string(),
                            base.morphism_id(gm.t[m].mor(f)).to_string(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let t_u = m_cat
        .morphisms()
        .map(|u| {
            (
                m_cat.morphism_id(u).to_string(),
                base.objects()
                    .map(|x| {
                        (
                            base.object_id(x).to_string(),
                            base.morphism_id(gm.tu[u].at(x)).to_string(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let eta = base
        .objects()
        .map(|x| {
            (
                base.object_id(x).to_string(),
                base.morphism_id(gm.eta.at(x)).to_string(),
            )
        })
        .collect();
    let mut mu: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>> = BTreeMap::new();
    for (&(m, n), nt) in &gm.mu {
        mu.entry(m_cat.object_id(m).to_string())
            .or_default()
            .insert(
                m_cat.object_id(n).to_string(),
                base.objects()
                    .map(|x| {
                        (
                            base.object_id(x).to_string(),
                            base.morphism_id(nt.at(x)).to_string(),
                        )
                    })
                    .collect(),
            );
    }
    GradedTableSpec {
        grading: SpecRef::Inline(Box::new(grading_spec)),
        base: SpecRef::Inline(Box::new(base_spec)),
        t_ob,
        t_mor,
        t_u,
        eta,
        mu,
    }
}

fn exc_variant(name: Option<&str>) -> Result<ExcVariant> {
    match name {
        None | Some("standard") => Ok(ExcVariant::Standard),
        Some("mu-inner-swap") => Ok(ExcVariant::MuInnerSwap),
        Some("mu-unit-left-twist") => Ok(ExcVariant::MuUnitLeftTwist),
        Some("mu-unit-right-twist") => Ok(ExcVariant::MuUnitRightTwist),
        Some(other) => Err(GmError::invalid("graded spec", format!("unknown variant `{other}`"))),
    }
}

/// Load a graded spec file (either flavor).
pub fn load_graded(path: &Path) -> Result<LoadedGraded> {
    let text = std::fs::read_to_string(path).map_err(|e| GmError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let spec: GradedSpec = serde_json::from_str(&text).map_err(|e| GmError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let base_dir = path.parent().unwrap_or_else(|| Path::new("."));
    match spec {
        GradedSpec::Table(t) => Ok(LoadedGraded::Table(build_table_graded(&t, base_dir)?)),
        GradedSpec::Builtin(b) => match b.builtin.as_str() {
            "exception" => {
                let exceptions = b
                    .exceptions
                    .unwrap_or_else(crate::instances::default_exceptions);
                let poset = match b.grading_style.as_deref() {
                    None | Some("poset") => true,
                    Some("discrete") => false,
                    Some(other) => {
                        return Err(GmError::invalid(
                            "graded spec",
                            format!("unknown grading_style `{other}`"),
                        ))
                    }
                };
                Ok(LoadedGraded::Exception(ExceptionGradedMonad::new(
                    exceptions,
                    b.probe_max.unwrap_or(3),
                    poset,
                    exc_variant(b.variant.as_deref())?,
                )))
            }
            "state" => {
                let (gm, _) = build_state_monads(
                    b.values.unwrap_or(2),
                    b.registers.unwrap_or(2),
                    b.probe_max.unwrap_or(2),
                    crate::graded::DEFAULT_SIZE_BOUND,
                )?;
                Ok(LoadedGraded::State(gm))
            }
            other => Err(GmError::invalid(
                "graded spec",
                format!("unknown builtin `{other}`"),
            )),
        },
    }
}

/// Table-flavor indexed monad spec, mirroring the graded format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexedTableSpec {
    pub index: SpecRef,
    pub base: SpecRef,
    /// index object -> (object -> object)
    #[serde(rename = "T_b")]
    pub t_b: BTreeMap<String, BTreeMap<String, String>>,
    /// index object -> (morphism -> morphism)
    #[serde(rename = "T_mor")]
    pub t_mor: BTreeMap<String, BTreeMap<String, String>>,
    /// index morphism -> (object -> morphism)
    #[serde(rename = "T_u", default)]
    pub t_u: BTreeMap<String, BTreeMap<String, String>>,
    /// index object -> (object -> morphism)
    pub eta_b: BTreeMap<String, BTreeMap<String, String>>,
    /// index object -> (object -> morphism)
    pub mu_b: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexedBuiltinSpec {
    pub builtin: String,
    #[serde(default)]
    pub values: Option<usize>,
    #[serde(default)]
    pub registers: Option<usize>,
    #[serde(default)]
    pub probe_max: Option<usize>,
    #[serde(default)]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexedSpec {
    Builtin(IndexedBuiltinSpec),
    Table(Box<IndexedTableSpec>),
}

pub enum LoadedIndexed {
    Table(TableIndexedMonad),
    State(StateIndexedMonad),
    Twisted(crate::instances::TwistedIndexedState),
}

impl LoadedIndexed {
    pub fn check(&self) -> crate::report::LawReport {
        match self {
            LoadedIndexed::Table(g) => crate::indexed::check_indexed_monad(g),
            LoadedIndexed::State(g) => crate::indexed::check_indexed_monad(g),
            LoadedIndexed::Twisted(g) => crate::indexed::check_indexed_monad(g),
        }
    }
}

fn build_table_indexed(spec: &IndexedTableSpec, base_dir: &Path) -> Result<TableIndexedMonad> {
    let index_spec = spec.index.resolve(base_dir)?;
    let (index, _) = index_spec
        .build()
        .map_err(|d| GmError::invalid("index spec", d.join("; ")))?;
    let base_spec = spec.base.resolve(base_dir)?;
    let (base, _) = base_spec
        .build()
        .map_err(|d| GmError::invalid("base spec", d.join("; ")))?;
    let lookup_functor = |obs: &BTreeMap<String, String>,
                          mors: &BTreeMap<String, String>|
     -> Result<FunctorTable> {
        let mut ob_map = Vec::with_capacity(base.object_count());
        for x in base.objects() {
            let xid = base.object_id(x);
            let tgt = obs
                .get(xid)
                .ok_or_else(|| GmError::invalid("indexed spec", format!("missing object `{xid}`")))?;
            ob_map.push(base.object_by_id(tgt)?);
        }
        let mut mor_map = Vec::with_capacity(base.morphism_count());
        for f in base.morphisms() {
            let fid = base.morphism_id(f);
            let tgt = mors.get(fid).ok_or_else(|| {
                GmError::invalid("indexed spec", format!("missing morphism `{fid}`"))
            })?;
            mor_map.push(base.morphism_by_id(tgt)?);
        }
        Ok(FunctorTable {
            src: base.clone(),
            dst: base.clone(),
            ob_map,
            mor_map,
        })
    };
    let lookup_components = |table: &BTreeMap<String, String>| -> Result<Vec<usize>> {
        let mut v = Vec::with_capacity(base.object_count());
        for x in base.objects() {
            let xid = base.object_id(x);
            let comp = table.get(xid).ok_or_else(|| {
                GmError::invalid("indexed spec", format!("missing component at `{xid}`"))
            })?;
            v.push(base.morphism_by_id(comp)?);
        }
        Ok(v)
    };
    let mut t = Vec::new();
    for b in index.objects() {
        let bid = index.object_id(b);
        let obs = spec
            .t_b
            .get(bid)
            .ok_or_else(|| GmError::invalid("indexed spec", format!("T_b missing `{bid}`")))?;
        let mors = spec
            .t_mor
            .get(bid)
            .ok_or_else(|| GmError::invalid("indexed spec", format!("T_mor missing `{bid}`")))?;
        t.push(lookup_functor(obs, mors)?);
    }
    let mut tu = Vec::new();
    for u in index.morphisms() {
        let uid = index.morphism_id(u);
        let (s, tgt) = (index.src(u), index.tgt(u));
        let components = if index.is_identity(u) && !spec.t_u.contains_key(uid) {
            base.objects()
                .map(|x| base.identity(t[s].ob(x)))
                .collect()
        } else {
            let table = spec.t_u.get(uid).ok_or_else(|| {
                GmError::invalid("indexed spec", format!("T_u missing `{uid}`"))
            })?;
            lookup_components(table)?
        };
        tu.push(NatTransTable {
            dom: t[s].clone(),
            cod: t[tgt].clone(),
            components,
        });
    }
    let mut eta = Vec::new();
    let mut mu = Vec::new();
    for b in index.objects() {
        let bid = index.object_id(b);
        let eta_table = spec
            .eta_b
            .get(bid)
            .ok_or_else(|| GmError::invalid("indexed spec", format!("eta_b missing `{bid}`")))?;
        eta.push(NatTransTable {
            dom: FunctorTable::identity(&base),
            cod: t[b].clone(),
            components: lookup_components(eta_table)?,
        });
        let mu_table = spec
            .mu_b
            .get(bid)
            .ok_or_else(|| GmError::invalid("indexed spec", format!("mu_b missing `{bid}`")))?;
        mu.push(NatTransTable {
            dom: t[b].after(&t[b]),
            cod: t[b].clone(),
            components: lookup_components(mu_table)?,
        });
    }
    Ok(TableIndexedMonad::new(
        "from-spec",
        index,
        base,
        t,
        tu,
        eta,
        mu,
    ))
}

/// Export a table indexed monad in the spec format.
pub fn table_indexed_to_spec(im: &TableIndexedMonad) -> IndexedTableSpec {
    let index = &im.index;
    let base = &im.base;
    let ob_table = |f: &FunctorTable| -> BTreeMap<String, String> {
        base.objects()
            .map(|x| {
                (
                    base.object_id(x).to_string(),
                    base.object_id(f.ob(x)).to_string(),
                )
            })
            .collect()
    };
    let mor_table = |f: &FunctorTable| -> BTreeMap<String, String> {
        base.morphisms()
            .map(|m| {
                (
                    base.morphism_id(m).to_string(),
                    base.morphism_id(f.mor(m)).to_string(),
                )
            })
            .collect()
    };
    let nt_table = |nt: &NatTransTable| -> BTreeMap<String, String> {
        base.objects()
            .map(|x| {
                (
                    base.object_id(x).to_string(),
                    base.morphism_id(nt.at(x)).to_string(),
                )
            })
            .collect()
    };
    IndexedTableSpec {
        index: SpecRef::Inline(Box::new(category_to_spec(index, None, None))),
        base: SpecRef::Inline(Box::new(category_to_spec(base, None, None))),
        t_b: index
            .objects()
            .map(|b| (index.object_id(b).to_string(), ob_table(&im.t[b])))
            .collect(),
        t_mor: index
            .objects()
            .map(|b| (index.object_id(b).to_string(), mor_table(&im.t[b])))
            .collect(),
        t_u: index
            .morphisms()
            .map(|u| (index.morphism_id(u).to_string(), nt_table(&im.tu[u])))
            .collect(),
        eta_b: index
            .objects()
            .map(|b| (index.object_id(b).to_string(), nt_table(&im.eta[b])))
            .collect(),
        mu_b: index
            .objects()
            .map(|b| (index.object_id(b).to_string(), nt_table(&im.mu[b])))
            .collect(),
    }
}

/// Load an indexed spec file (either flavor).
pub fn load_indexed(path: &Path) -> Result<LoadedIndexed> {
    let text = std::fs::read_to_string(path).map_err(|e| GmError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let spec: IndexedSpec = serde_json::from_str(&text).map_err(|e| GmError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let base_dir = path.parent().unwrap_or_else(|| Path::new("."));
    match spec {
        IndexedSpec::Table(t) => Ok(LoadedIndexed::Table(build_table_indexed(&t, base_dir)?)),
        IndexedSpec::Builtin(b) => match b.builtin.as_str() {
            "state-indexed" => {
                let (_, im) = build_state_monads(
                    b.values.unwrap_or(2),
                    b.registers.unwrap_or(2),
                    b.probe_max.unwrap_or(2),
                    crate::graded::DEFAULT_SIZE_BOUND,
                )?;
                match b.variant.as_deref() {
                    None | Some("standard") => Ok(LoadedIndexed::State(im)),
                    Some("eta-negate-tau") => Ok(LoadedIndexed::Twisted(
                        crate::instances::TwistedIndexedState::new(
                            im,
                            crate::instances::StateTwist::EtaNegateTau(1),
                        ),
                    )),
                    Some("mu-negate-tau") => Ok(LoadedIndexed::Twisted(
                        crate::instances::TwistedIndexedState::new(
                            im,
                            crate::instances::StateTwist::MuNegateTau(1),
                        ),
                    )),
                    Some("mu-untransformed-xi") => Ok(LoadedIndexed::Twisted(
                        crate::instances::TwistedIndexedState::new(
                            im,
                            crate::instances::StateTwist::MuUntransformedXi(1),
                        ),
                    )),
                    Some(other) => Err(GmError::invalid(
                        "indexed spec",
                        format!("unknown variant `{other}`"),
                    )),
                }
            }
            other => Err(GmError::invalid(
                "indexed spec",
                format!("unknown builtin `{other}`"),
            )),
        },
    }
}

/// SHA-256 hex digest of a canonical JSON value (the `source_hash` of
/// emitted categories).
pub fn spec_hash(value: &serde_json::Value) -> String {
    let canonical = serde_json::to_string(value).expect("json serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Write a value as pretty JSON with a trailing newline.
pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json serializes");
    std::fs::write(path, text + "\n").map_err(|e| GmError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

/// Resolve a path relative to the current directory.
pub fn as_path(p: &str) -> PathBuf {
    PathBuf::from(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::graded_monads_table_equal;
    use crate::instances::m2_collapse_monad;

    #[test]
    fn category_spec_round_trip() {
        let cat = crate::instances::finmini();
        let spec = category_to_spec(&cat, None, None);
        let text = serde_json::to_string(&spec).unwrap();
        let parsed: CategorySpec = serde_json::from_str(&text).unwrap();
        let (rebuilt, _) = parsed.build().unwrap();
        assert_eq!(*rebuilt, *cat);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"objects": [], "morphisms": [], "identities": {}, "comp": [], "extra": 1}"#;
        assert!(serde_json::from_str::<CategorySpec>(text).is_err());
    }

    #[test]
    fn graded_table_round_trip() {
        let gm = m2_collapse_monad();
        let spec = table_graded_to_spec(&gm);
        let text = serde_json::to_string(&GradedSpec::Table(Box::new(spec))).unwrap();
        let parsed: GradedSpec = serde_json::from_str(&text).unwrap();
        let GradedSpec::Table(t) = parsed else {
            panic!("expected table flavor")
        };
        let rebuilt = build_table_graded(&t, Path::new(".")).unwrap();
        assert!(graded_monads_table_equal(&gm, &rebuilt));
        assert!(crate::graded::check_graded_monad(&rebuilt).passed());
    }

    #[test]
    fn indexed_table_round_trip() {
        let im = crate::instances::constant_flip_family();
        let spec = table_indexed_to_spec(&im);
        let text = serde_json::to_string(&IndexedSpec::Table(Box::new(spec))).unwrap();
        let parsed: IndexedSpec = serde_json::from_str(&text).unwrap();
        let IndexedSpec::Table(t) = parsed else {
            panic!("expected table flavor")
        };
        let rebuilt = build_table_indexed(&t, Path::new(".")).unwrap();
        assert!(crate::indexed::check_indexed_monad(&rebuilt).passed());
        assert_eq!(rebuilt.t.len(), im.t.len());
    }

    #[test]
    fn hash_is_stable() {
        let v = serde_json::json!({"b": 1, "a": 2});
        assert_eq!(spec_hash(&v), spec_hash(&v));
        assert_eq!(spec_hash(&v).len(), 64);
    }
}
