//! JSON forms of fields, subspaces, families, q-matroids, representations and
//! certificates.
//!
//! Field elements are little-endian coefficient digit strings (GF(4): α+1 is
//! `"11"`); a vector is the concatenation of its coordinates' digit strings; a
//! subspace is the list of its RREF rows, with ⊥ as `[]`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classical::{ClassicalKind, ClassicalMatroid, SetFamily};
use crate::error::{Error, Result};
use crate::field::{parse_digits, FieldSpec};
use crate::lattice::Lattice;
use crate::qmatroid::{Provenance, QMatroid};
use crate::representation::QRepresentation;
use crate::subspace::{Subspace, SubspaceFamily, VectorSpaceSpec};
use crate::transversal::{QTransversalCertificate, QWitness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub e: u32,
    pub modulus: String,
}

impl From<&FieldSpec> for FieldJson {
    fn from(f: &FieldSpec) -> Self {
        FieldJson { p: f.characteristic(), e: f.degree(), modulus: f.modulus_digits() }
    }
}

impl FieldJson {
    pub fn to_spec(&self) -> Result<FieldSpec> {
        let m = parse_digits(&self.modulus, self.p.max(2))?;
        FieldSpec::new(self.p, self.e, Some(&m))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub field: FieldJson,
    pub dim: usize,
}

impl From<&VectorSpaceSpec> for SpaceJson {
    fn from(v: &VectorSpaceSpec) -> Self {
        SpaceJson { field: v.field().into(), dim: v.dim() }
    }
}

impl SpaceJson {
    pub fn to_spec(&self) -> Result<VectorSpaceSpec> {
        VectorSpaceSpec::new(self.field.to_spec()?, self.dim)
    }
}

pub fn subspace_to_json(s: &Subspace) -> Vec<String> {
    s.to_row_strings()
}

pub fn family_to_json(fam: &SubspaceFamily) -> Vec<Vec<String>> {
    fam.members().iter().map(subspace_to_json).collect()
}

pub fn family_from_json(space: &VectorSpaceSpec, rows: &[Vec<String>]) -> Result<SubspaceFamily> {
    let members = rows.iter().map(|m| space.parse_subspace(m)).collect::<Result<Vec<_>>>()?;
    SubspaceFamily::new(space, members)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub subspace: Vec<String>,
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub spec: SpaceJson,
    pub provenance: Provenance,
    pub ranks: Vec<RankEntry>,
}

impl From<&QMatroid> for MatroidJson {
    fn from(m: &QMatroid) -> Self {
        let l = m.lattice();
        MatroidJson {
            spec: l.space().into(),
            provenance: m.provenance(),
            ranks: (0..l.len())
                .map(|i| RankEntry { subspace: subspace_to_json(l.get(i)), rank: m.rank_at(i) as u32 })
                .collect(),
        }
    }
}

impl MatroidJson {
    /// Rebuilds the q-matroid on `lattice` (which must match `spec`); every
    /// subspace must appear exactly once and the table must satisfy the axioms.
    pub fn to_matroid_on(&self, lattice: &Arc<Lattice>) -> Result<QMatroid> {
        if self.spec.to_spec()? != *lattice.space() {
            return Err(Error::SpecMismatch);
        }
        let mut table: HashMap<usize, u32> = HashMap::new();
        for e in &self.ranks {
            let s = lattice.space().parse_subspace(&e.subspace)?;
            let i = lattice.index_of(&s)?;
            if table.insert(i, e.rank).is_some() {
                return Err(Error::Parse(format!("subspace {:?} listed twice", e.subspace)));
            }
        }
        let ranks = (0..lattice.len())
            .map(|i| table.get(&i).copied())
            .collect::<Option<Vec<u32>>>()
            .ok_or(Error::IncompleteTable { expected: lattice.len(), found: table.len() })?;
        QMatroid::from_table(lattice, ranks, self.provenance)
    }

    pub fn to_matroid(&self) -> Result<QMatroid> {
        let lattice = Lattice::new(&self.spec.to_spec()?)?;
        self.to_matroid_on(&lattice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub base: SpaceJson,
    pub ext: FieldJson,
    /// Row-major matrix entries as extension-field digit strings.
    #[serde(rename = "G")]
    pub g: Vec<Vec<String>>,
    /// GF(p) sits in the extension as the constant polynomials.
    #[serde(default = "default_embedding")]
    pub embedding: String,
}

fn default_embedding() -> String {
    "constants".to_string()
}

impl From<&QRepresentation> for RepresentationJson {
    fn from(r: &QRepresentation) -> Self {
        RepresentationJson {
            base: r.base().into(),
            ext: r.ext().into(),
            g: r.matrix()
                .iter()
                .map(|row| row.iter().map(|&c| r.ext().code_to_digits(c)).collect())
                .collect(),
            embedding: default_embedding(),
        }
    }
}

impl RepresentationJson {
    pub fn to_representation(&self) -> Result<QRepresentation> {
        if self.embedding != "constants" {
            return Err(Error::Parse(format!("unknown embedding \"{}\"", self.embedding)));
        }
        let base = self.base.to_spec()?;
        let ext = self.ext.to_spec()?;
        let matrix = self
            .g
            .iter()
            .map(|row| row.iter().map(|s| ext.code_from_digits(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QRepresentation::new(&base, ext, matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamilyJson {
    pub ground: Vec<String>,
    pub members: Vec<Vec<String>>,
}

impl From<&SetFamily> for SetFamilyJson {
    fn from(f: &SetFamily) -> Self {
        SetFamilyJson {
            ground: f.ground().to_vec(),
            members: f.members().iter().map(|&m| f.labels_of(m)).collect(),
        }
    }
}

impl SetFamilyJson {
    pub fn to_family(&self) -> Result<SetFamily> {
        SetFamily::from_labels(&self.ground, &self.members)
    }
}

/// `{"kind": "free"}`, `{"kind": "zero"}` or `{"kind": "linear", "columns": [...]}`;
/// linear columns are vectors over the instance's field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassicalMatroidJson {
    Free,
    Zero,
    Linear { columns: Vec<String> },
}

impl ClassicalMatroidJson {
    pub fn to_matroid(&self, ground: &[String], field: Option<&FieldSpec>) -> Result<ClassicalMatroid> {
        match self {
            ClassicalMatroidJson::Free => Ok(ClassicalMatroid::free(ground.to_vec())),
            ClassicalMatroidJson::Zero => Ok(ClassicalMatroid::zero(ground.to_vec())),
            ClassicalMatroidJson::Linear { columns } => {
                let field = field.ok_or_else(|| Error::Parse("linear matroids need \"q\"".into()))?;
                let len = columns.first().map_or(0, |c| c.len()) / field.degree() as usize;
                let space = VectorSpaceSpec::new(field.clone(), len.max(1))?;
                let cols = columns
                    .iter()
                    .map(|c| space.parse_row(c).map(|v| v.coords().to_vec()))
                    .collect::<Result<Vec<_>>>()?;
                ClassicalMatroid::linear(ground.to_vec(), field.clone(), cols)
            }
        }
    }

    pub fn from_matroid(m: &ClassicalMatroid) -> Self {
        match m.kind() {
            ClassicalKind::Free => ClassicalMatroidJson::Free,
            ClassicalKind::Zero => ClassicalMatroidJson::Zero,
            ClassicalKind::Linear { field, columns } => ClassicalMatroidJson::Linear {
                columns: columns
                    .iter()
                    .map(|c| c.iter().map(|&x| field.code_to_digits(x)).collect())
                    .collect(),
            },
        }
    }
}

pub fn certificate_to_json(c: &QTransversalCertificate) -> Value {
    let witness = match &c.witness {
        QWitness::Injections(list) => json!({
            "kind": "injections",
            "bases": list.iter().map(|inj| json!({
                "basis": inj.basis.iter().map(|v| v.to_digits()).collect::<Vec<_>>(),
                "members": inj.members,
            })).collect::<Vec<_>>(),
        }),
        QWitness::SubsetBounds(rows) => json!({
            "kind": "subset-bounds",
            "bounds": rows.iter().map(|(j, d)| json!({"J": j, "dim_meet": d})).collect::<Vec<_>>(),
        }),
        QWitness::Violation { j, dim_meet } => json!({
            "kind": "violation",
            "J": j,
            "dim_meet": dim_meet,
        }),
        QWitness::FailingBasis { basis, j } => json!({
            "kind": "failing-basis",
            "basis": basis.iter().map(|v| v.to_digits()).collect::<Vec<_>>(),
            "J": j,
        }),
    };
    json!({"verdict": c.verdict, "witness": witness})
}

pub fn certificate_from_json(space: &VectorSpaceSpec, v: &Value) -> Result<QTransversalCertificate> {
    let bad = || Error::Parse("malformed certificate".into());
    let verdict = v.get("verdict").and_then(Value::as_bool).ok_or_else(bad)?;
    let w = v.get("witness").ok_or_else(bad)?;
    let indices = |x: &Value| -> Result<Vec<usize>> {
        serde_json::from_value::<Vec<usize>>(x.clone()).map_err(|_| bad())
    };
    let vectors = |x: &Value| -> Result<Vec<crate::subspace::GFVector>> {
        let rows: Vec<String> = serde_json::from_value(x.clone()).map_err(|_| bad())?;
        rows.iter().map(|r| space.parse_row(r)).collect()
    };
    let witness = match w.get("kind").and_then(Value::as_str).ok_or_else(bad)? {
        "injections" => {
            let list = w.get("bases").and_then(Value::as_array).ok_or_else(bad)?;
            QWitness::Injections(
                list.iter()
                    .map(|b| {
                        Ok(crate::transversal::BasisInjection {
                            basis: vectors(b.get("basis").ok_or_else(bad)?)?,
                            members: indices(b.get("members").ok_or_else(bad)?)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        "subset-bounds" => {
            let list = w.get("bounds").and_then(Value::as_array).ok_or_else(bad)?;
            QWitness::SubsetBounds(
                list.iter()
                    .map(|b| {
                        let d = b.get("dim_meet").and_then(Value::as_u64).ok_or_else(bad)?;
                        Ok((indices(b.get("J").ok_or_else(bad)?)?, d as usize))
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        "violation" => QWitness::Violation {
            j: indices(w.get("J").ok_or_else(bad)?)?,
            dim_meet: w.get("dim_meet").and_then(Value::as_u64).ok_or_else(bad)? as usize,
        },
        "failing-basis" => QWitness::FailingBasis {
            basis: vectors(w.get("basis").ok_or_else(bad)?)?,
            j: indices(w.get("J").ok_or_else(bad)?)?,
        },
        other => return Err(Error::Parse(format!("unknown witness kind \"{other}\""))),
    };
    Ok(QTransversalCertificate { verdict, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transversal::{is_partial_q_transversal, presentation_matroid, q_transversal_by_definition};
    use crate::subspace::Caps;

    fn space(q: u64, n: usize) -> VectorSpaceSpec {
        VectorSpaceSpec::new(FieldSpec::of_order(q).unwrap(), n).unwrap()
    }

    #[test]
    fn field_json() {
        let f = FieldSpec::of_order(4).unwrap();
        let j = FieldJson::from(&f);
        assert_eq!(j, FieldJson { p: 2, e: 2, modulus: "111".into() });
        assert_eq!(j.to_spec().unwrap(), f);
        let bad = FieldJson { p: 2, e: 2, modulus: "101".into() };
        assert_eq!(bad.to_spec(), Err(Error::ReducibleModulus(2)));
    }

    #[test]
    fn subspace_rows() {
        let v = space(2, 2);
        assert_eq!(subspace_to_json(&v.full()), vec!["10", "01"]);
        assert!(subspace_to_json(&v.bottom()).is_empty());
    }

    #[test]
    fn matroid_json_round_trip() {
        let v = space(2, 2);
        let l = Lattice::new(&v).unwrap();
        let fam = family_from_json(&v, &[vec!["10".into()], vec!["11".into()]]).unwrap();
        let m = presentation_matroid(&l, &fam).unwrap();
        let text = serde_json::to_string(&MatroidJson::from(&m)).unwrap();
        let back: MatroidJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matroid().unwrap(), m);
        let mut missing = back.clone();
        missing.ranks.pop();
        assert!(matches!(missing.to_matroid(), Err(Error::IncompleteTable { .. })));
    }

    #[test]
    fn certificates_round_trip() {
        let v = space(2, 2);
        let fam = family_from_json(&v, &[vec!["10".into()], vec!["01".into()]]).unwrap();
        let t = v.full();
        for c in [
            is_partial_q_transversal(&t, &fam).unwrap(),
            q_transversal_by_definition(&t, &fam, &Caps::default()).unwrap(),
            is_partial_q_transversal(&v.parse_subspace(&["10"]).unwrap(), &fam.subfamily(&[0, 0])).unwrap(),
        ] {
            let back = certificate_from_json(&v, &certificate_to_json(&c)).unwrap();
            assert_eq!(back, c);
        }
    }
}
