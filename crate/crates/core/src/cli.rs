//! Command-line front end: one JSON instance in, one JSON verdict out.
//!
//! Exit codes: 0 success, 2 malformed input, 3 infeasible scale, 4 internal
//! invariant violation. Every verdict carries a witness that can be checked
//! without trusting the tool.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classical::{
    avoid_rado_check, avoiding_assignment, avoiding_transversal_check, find_transversal, hall_check,
    independent_transversal, rado_check, ClassicalMatroid, HallVerdict, SetFamily,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::io::{
    certificate_to_json, family_from_json, family_to_json, subspace_to_json, ClassicalMatroidJson, MatroidJson,
    RepresentationJson, SetFamilyJson,
};
use crate::lab::{replay_counterexample, replay_outcome, scan_minimal_uniqueness, scan_q_rado, scan_representability,
    standard_matroids, ScanConfig, ScanReport};
use crate::lattice::Lattice;
use crate::qmatroid::QMatroid;
use crate::representation::{
    aligned_matrix, build_aligned_representation, smallest_aligned_representation, verify_representation,
    AlignedFamily, QRepresentation,
};
use crate::subspace::{Caps, SubspaceFamily, VectorSpaceSpec};
use crate::transversal::{
    is_minimal_presentation, is_partial_q_transversal, presentation_matroid, q_hall, q_transversal_by_definition,
    reduce_presentation, IndexedFamily,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Hall,
    Rado,
    QHall,
    CheckTransversal,
    CheckQTransversal,
    BuildMatroid,
    ReducePresentation,
    CheckMinimal,
    RepresentAligned,
    VerifyRepresentation,
    Scan,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    /// Decide q-transversality by enumerating every basis.
    pub oracle: bool,
    /// `rado`: read members as avoidance sets X_i.
    pub avoid: bool,
    /// `represent-aligned`: smallest extension degree that verifies.
    pub smallest: bool,
    /// `scan`: override the shard count.
    pub shards: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    QRado,
    MinimalUniqueness,
    Representability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBlock {
    pub kind: ScanKind,
    #[serde(flatten)]
    pub config: ScanConfig,
    #[serde(default = "default_ext_degree")]
    pub max_ext_degree: u32,
}

fn default_ext_degree() -> u32 {
    4
}

fn schema_one() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default = "schema_one")]
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subspace: Option<Vec<String>>,
    /// A rank table or a representation block.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matroid: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationJson>,
    /// Aligned family as 1-based coordinate index sets.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_sets: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_family: Option<SetFamilyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_matroid: Option<ClassicalMatroidJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanBlock>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let inst: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if inst.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema {}", inst.schema)));
        }
        Ok(inst)
    }

    fn field(&self) -> Result<FieldSpec> {
        FieldSpec::of_order(self.q.ok_or_else(|| missing("q"))?)
    }

    pub fn space(&self) -> Result<VectorSpaceSpec> {
        VectorSpaceSpec::new(self.field()?, self.dim.ok_or_else(|| missing("dim"))?)
    }

    pub fn subspace_family(&self) -> Result<SubspaceFamily> {
        family_from_json(&self.space()?, self.family.as_ref().ok_or_else(|| missing("family"))?)
    }

    fn set_family(&self) -> Result<SetFamily> {
        self.set_family.as_ref().ok_or_else(|| missing("set_family"))?.to_family()
    }

    fn set_matroid(&self, ground: &[String]) -> Result<ClassicalMatroid> {
        let field = self.q.map(FieldSpec::of_order).transpose()?;
        self.set_matroid.clone().unwrap_or(ClassicalMatroidJson::Free).to_matroid(ground, field.as_ref())
    }
}

fn missing(key: &str) -> Error {
    Error::Parse(format!("instance needs \"{key}\""))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub json: Value,
}

pub fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::InfeasibleScale(_) | Error::ExtensionTooLarge(_) => 3,
        Error::TheoremViolation(_) => 4,
        _ => 2,
    }
}

fn error_json(e: &Error) -> Value {
    let code = exit_code_of(e);
    let mut v = json!({"error": e.to_string(), "exit_code": code});
    if code == 4 {
        v["category"] = json!("theorem-violation");
        v["explanation"] = json!(
            "two procedures that should agree by theorem disagree: either an implementation bug or a counterexample"
        );
    }
    v
}

/// A self-check failed after the answer was computed.
fn internal_bug(what: &str) -> Outcome {
    Outcome {
        exit_code: 4,
        json: json!({
            "error": what,
            "exit_code": 4,
            "category": "internal-bug",
            "explanation": "an emitted witness failed its own re-verification",
        }),
    }
}

/// Runs `command` on the JSON instance `input`.
pub fn run(command: Command, input: &str, flags: &Flags) -> Outcome {
    let result = InstanceFile::parse(input).and_then(|inst| dispatch(command, &inst, flags));
    match result {
        Ok(o) => o,
        Err(e) => Outcome { exit_code: exit_code_of(&e), json: error_json(&e) },
    }
}

pub fn run_file(command: Command, path: &std::path::Path, flags: &Flags) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run(command, &text, flags),
        Err(e) => {
            let e = Error::Parse(format!("{}: {e}", path.display()));
            Outcome { exit_code: 2, json: error_json(&e) }
        }
    }
}

fn ok(json: Value) -> Result<Outcome> {
    Ok(Outcome { exit_code: 0, json })
}

fn hall_json(v: &HallVerdict) -> Value {
    let mut out = json!({"verdict": v.holds});
    if let Some(j) = &v.violating {
        out["witness_J"] = json!(j);
    }
    out
}

fn dispatch(command: Command, inst: &InstanceFile, flags: &Flags) -> Result<Outcome> {
    match command {
        Command::Hall => {
            let fam = inst.set_family()?;
            let v = hall_check(&fam);
            let mut out = hall_json(&v);
            if let Some(t) = find_transversal(&fam) {
                out["transversal"] = json!(t.iter().map(|&x| &fam.ground()[x]).collect::<Vec<_>>());
            }
            if out.get("transversal").is_some() != v.holds {
                return Ok(internal_bug("Hall verdict disagrees with the matching"));
            }
            ok(out)
        }
        Command::Rado => {
            let fam = inst.set_family()?;
            let m = inst.set_matroid(fam.ground())?;
            if flags.avoid {
                let v = avoid_rado_check(&m, &fam)?;
                let mut out = hall_json(&v);
                if v.holds {
                    let t = independent_transversal(&m, &fam.complement())?
                        .ok_or_else(|| Error::TheoremViolation("avoid-Rado holds but no transversal exists".into()))?;
                    out["transversal"] = json!(t.iter().map(|&x| &fam.ground()[x]).collect::<Vec<_>>());
                }
                ok(out)
            } else {
                let v = rado_check(&m, &fam)?;
                let mut out = json!({"verdict": v.holds});
                if let Some(j) = v.violating {
                    out["witness_J"] = json!(j);
                }
                if let Some(t) = v.transversal {
                    out["transversal"] = json!(t.iter().map(|&x| &fam.ground()[x]).collect::<Vec<_>>());
                }
                ok(out)
            }
        }
        Command::CheckTransversal => {
            let fam = inst.set_family()?;
            let t = fam.mask_of(inst.set.as_ref().ok_or_else(|| missing("set"))?)?;
            let v = avoiding_transversal_check(t, &fam);
            let mut out = hall_json(&v);
            if let Some(pairs) = avoiding_assignment(t, &fam) {
                out["assignment"] = json!(pairs
                    .iter()
                    .map(|&(x, i)| json!({"element": fam.ground()[x], "member": i}))
                    .collect::<Vec<_>>());
            }
            if out.get("assignment").is_some() != v.holds {
                return Ok(internal_bug("avoidance verdict disagrees with the assignment search"));
            }
            ok(out)
        }
        Command::QHall => {
            let fam = inst.subspace_family()?;
            let v = q_hall(&fam);
            let mut out = hall_json(&v);
            if v.holds {
                if let Some(t) = q_transversal_witness(&fam)? {
                    out["transversal"] = json!(t);
                }
            }
            ok(out)
        }
        Command::CheckQTransversal => {
            let fam = inst.subspace_family()?;
            let t = inst.space()?.parse_subspace(inst.subspace.as_ref().ok_or_else(|| missing("subspace"))?)?;
            let cert = if flags.oracle {
                q_transversal_by_definition(&t, &fam, &Caps::default())?
            } else {
                is_partial_q_transversal(&t, &fam)?
            };
            if !cert.recheck(&t, &fam)? {
                return Ok(internal_bug("q-transversal certificate failed its recheck"));
            }
            let mut out = certificate_to_json(&cert);
            out["method"] = json!(if flags.oracle { "basis-enumeration" } else { "subset-inequality" });
            ok(out)
        }
        Command::BuildMatroid => {
            let fam = inst.subspace_family()?;
            let lattice = Lattice::new(fam.space())?;
            let m = presentation_matroid(&lattice, &fam)?;
            ok(json!({"rank": m.rank_of_space(), "matroid": MatroidJson::from(&m)}))
        }
        Command::ReducePresentation => {
            let fam = inst.subspace_family()?;
            let lattice = Lattice::new(fam.space())?;
            let reduced = reduce_presentation(&lattice, &fam)?;
            let same = presentation_matroid(&lattice, &reduced)? == presentation_matroid(&lattice, &fam)?;
            if !same {
                return Ok(internal_bug("reduced family presents a different q-matroid"));
            }
            ok(json!({"rank": reduced.len(), "family": family_to_json(&reduced), "same_matroid": same}))
        }
        Command::CheckMinimal => {
            let fam = inst.subspace_family()?;
            let lattice = Lattice::new(fam.space())?;
            let v = is_minimal_presentation(&lattice, &fam)?;
            let m = presentation_matroid(&lattice, &fam)?;
            let circuits = m.circuit_indices();
            let below: Vec<Value> = fam
                .members()
                .iter()
                .map(|x| {
                    let xi = lattice.index_of(x)?;
                    Ok(json!(circuits
                        .iter()
                        .filter(|&&c| lattice.leq(c, xi))
                        .map(|&c| subspace_to_json(lattice.get(c)))
                        .collect::<Vec<_>>()))
                })
                .collect::<Result<_>>()?;
            let mut out = json!({"verdict": v.minimal, "circuits_below": below});
            if let (Some(i), Some(s)) = (v.index, &v.shrunken) {
                out["witness"] = json!({"index": i, "shrunken": subspace_to_json(s)});
            }
            ok(out)
        }
        Command::RepresentAligned => represent_aligned(inst, flags),
        Command::VerifyRepresentation => {
            let (rep, target) = representation_and_target(inst)?;
            let check = verify_representation(&rep, &target)?;
            let mut out = json!({"verdict": check.agrees});
            if let Some((s, expected, got)) = &check.first_mismatch {
                out["first_mismatch"] = json!({"subspace": subspace_to_json(s), "expected": expected, "got": got});
            }
            ok(out)
        }
        Command::Scan => {
            let block = inst.scan.as_ref().ok_or_else(|| missing("scan"))?;
            let mut cfg = block.config.clone();
            if let Some(s) = flags.shards {
                cfg.parallel_shards = s;
            }
            let report = run_scan(block.kind, &cfg, block.max_ext_degree)?;
            for c in &report.counterexamples {
                if !replay_counterexample(c)? {
                    return Ok(internal_bug("a counterexample did not replay"));
                }
            }
            for o in &report.outcomes {
                if !replay_outcome(o)? {
                    return Ok(internal_bug("a representability outcome did not replay"));
                }
            }
            eprintln!("scan finished in {:.3?}", report.elapsed);
            ok(report.to_json())
        }
    }
}

pub fn run_scan(kind: ScanKind, cfg: &ScanConfig, max_ext_degree: u32) -> Result<ScanReport> {
    match kind {
        ScanKind::QRado => scan_q_rado(cfg, standard_matroids),
        ScanKind::MinimalUniqueness => scan_minimal_uniqueness(cfg),
        ScanKind::Representability => scan_representability(cfg, max_ext_degree),
    }
}

/// An n-dimensional q-transversal, read off a basis of the presentation
/// matroid; `None` when the lattice is too large to materialize.
fn q_transversal_witness(fam: &SubspaceFamily) -> Result<Option<Vec<String>>> {
    let lattice = match Lattice::new(fam.space()) {
        Ok(l) => l,
        Err(Error::InfeasibleScale(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let indexed = IndexedFamily::new(&lattice, fam)?;
    let t = (0..lattice.len())
        .find(|&t| lattice.dim(t) == fam.len() && indexed.is_partial_q_transversal_at(t))
        .ok_or_else(|| Error::TheoremViolation(format!("q-Hall holds for {fam:?} but no q-transversal exists")))?;
    Ok(Some(subspace_to_json(lattice.get(t))))
}

fn aligned_input(inst: &InstanceFile) -> Result<AlignedFamily> {
    match &inst.index_sets {
        Some(sets) => AlignedFamily::new(&inst.space()?, sets.clone()),
        None => AlignedFamily::from_family(&inst.subspace_family()?)
            .ok_or_else(|| Error::Parse("family members are not all coordinate subspaces".into())),
    }
}

fn represent_aligned(inst: &InstanceFile, flags: &Flags) -> Result<Outcome> {
    let fam = aligned_input(inst)?;
    let lattice = Lattice::new(fam.space())?;
    let target = presentation_matroid(&lattice, &fam.to_family())?;
    let rep = match (inst.ext_degree, flags.smallest) {
        (Some(d), _) => {
            let base = fam.space().field();
            let ext = FieldSpec::new(base.characteristic(), d, None).map_err(|e| match e {
                Error::FieldTooLarge(..) => Error::ExtensionTooLarge(d as u64),
                other => other,
            })?;
            let alpha = if d == 1 { 1 } else { ext.generator().code() };
            aligned_matrix(&fam, &ext, alpha)?
        }
        (None, true) => smallest_aligned_representation(&fam, &lattice)?,
        (None, false) => build_aligned_representation(&fam)?,
    };
    let check = verify_representation(&rep, &target)?;
    if !check.agrees && inst.ext_degree.is_none() {
        return Err(Error::TheoremViolation(format!(
            "aligned construction does not represent {:?}",
            fam.index_sets()
        )));
    }
    let mut out = json!({
        "verdict": check.agrees,
        "degree": rep.ext().degree(),
        "guaranteed_degree": fam.guaranteed_degree(),
        "index_sets": fam.index_sets(),
        "representation": RepresentationJson::from(&rep),
    });
    if let Some((s, expected, got)) = &check.first_mismatch {
        out["first_mismatch"] = json!({"subspace": subspace_to_json(s), "expected": expected, "got": got});
    }
    ok(out)
}

enum MatroidBlock {
    Table(MatroidJson),
    Representation(RepresentationJson),
}

fn matroid_block(v: &Value) -> Result<MatroidBlock> {
    let bad = |e: serde_json::Error| Error::Parse(format!("matroid block: {e}"));
    if let Some(r) = v.get("representation") {
        return serde_json::from_value(r.clone()).map(MatroidBlock::Representation).map_err(bad);
    }
    if v.get("G").is_some() {
        return serde_json::from_value(v.clone()).map(MatroidBlock::Representation).map_err(bad);
    }
    serde_json::from_value(v.clone()).map(MatroidBlock::Table).map_err(bad)
}

/// The representation to check and the q-matroid it should represent: a rank
/// table if one is given, otherwise the family's presentation matroid.
fn representation_and_target(inst: &InstanceFile) -> Result<(QRepresentation, QMatroid)> {
    let block = inst.matroid.as_ref().map(matroid_block).transpose()?;
    let (rep, table) = match (&inst.representation, block) {
        (Some(r), Some(MatroidBlock::Table(t))) => (r.clone(), Some(t)),
        (Some(r), None) => (r.clone(), None),
        (None, Some(MatroidBlock::Representation(r))) => (r, None),
        (Some(_), Some(MatroidBlock::Representation(_))) => {
            return Err(Error::Parse("two representations given".into()))
        }
        (None, _) => return Err(missing("representation")),
    };
    let rep = rep.to_representation()?;
    let lattice: Arc<Lattice> = Lattice::new(rep.base())?;
    let target = match table {
        Some(t) => t.to_matroid_on(&lattice)?,
        None => presentation_matroid(&lattice, &inst.subspace_family()?)?,
    };
    if target.lattice().space() != rep.base() {
        return Err(Error::SpecMismatch);
    }
    Ok((rep, target))
}
