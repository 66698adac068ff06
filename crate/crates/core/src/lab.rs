//! Bounded scanners for three open statements about q-transversal matroids:
//!
//! * **q-Rado**: a family has a q-transversal independent in M iff
//!   barn(X(J)) + |J| ≤ barn(V) for every J;
//! * **minimal uniqueness**: a q-transversal matroid has one minimal
//!   presentation (up to reordering members);
//! * **representability**: every q-transversal matroid is representable.
//!
//! Instances are numbered in a fixed order and dealt round-robin to shards;
//! results are merged by instance number, so the report does not depend on
//! the shard count. Counterexamples carry everything needed to replay them.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classical::{mask_to_indices, popcount};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::io::{family_from_json, MatroidJson, RepresentationJson, SpaceJson};
use crate::lattice::Lattice;
use crate::qmatroid::{rank_one_at, union, QMatroid};
use crate::representation::{
    build_aligned_representation, represent, search_representation, verify_representation, AlignedFamily,
    QRepresentation,
};
use crate::subspace::{enumerate_subspaces, gaussian_binomial, Caps, Subspace, SubspaceFamily, VectorSpaceSpec};
use crate::transversal::{is_minimal_presentation, is_partial_q_transversal, presentation_matroid, IndexedFamily};

/// Largest lattice a scan will materialize.
pub const MAX_SCAN_LATTICE: usize = 1024;
/// Largest number of instances a single scan will visit.
pub const MAX_SCAN_INSTANCES: u64 = 5_000_000;
pub const MAX_SCAN_FAMILY: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    Exhaustive,
    Random { seed: u64, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub q: u64,
    pub max_dim: usize,
    pub max_family: usize,
    pub mode: ScanMode,
    #[serde(default = "one")]
    pub parallel_shards: usize,
}

fn one() -> usize {
    1
}

impl ScanConfig {
    pub fn exhaustive(q: u64, max_dim: usize, max_family: usize) -> Self {
        ScanConfig { q, max_dim, max_family, mode: ScanMode::Exhaustive, parallel_shards: 1 }
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.parallel_shards = shards;
        self
    }

    fn field(&self) -> Result<FieldSpec> {
        FieldSpec::of_order(self.q)
    }

    /// Lattices for every dimension 1..=max_dim, after checking the caps.
    fn lattices(&self) -> Result<Vec<Arc<Lattice>>> {
        if self.max_dim == 0 {
            return Err(Error::OutOfRange("max_dim must be at least 1".into()));
        }
        if self.parallel_shards == 0 {
            return Err(Error::OutOfRange("parallel_shards must be at least 1".into()));
        }
        if self.max_family > MAX_SCAN_FAMILY {
            return Err(Error::InfeasibleScale(format!(
                "max_family {} exceeds the scan cap {MAX_SCAN_FAMILY}",
                self.max_family
            )));
        }
        let field = self.field()?;
        let size: u128 = (0..=self.max_dim as u32)
            .map(|k| gaussian_binomial(self.max_dim as u32, k, self.q))
            .sum::<Result<u128>>()?;
        if size > MAX_SCAN_LATTICE as u128 {
            return Err(Error::InfeasibleScale(format!(
                "{size} subspaces in dimension {} exceed the scan cap {MAX_SCAN_LATTICE}",
                self.max_dim
            )));
        }
        let caps = Caps { max_lattice: MAX_SCAN_LATTICE, ..Caps::default() };
        let lattices = (1..=self.max_dim)
            .map(|d| Lattice::with_caps(&VectorSpaceSpec::new(field.clone(), d)?, &caps))
            .collect::<Result<Vec<_>>>()?;
        let total: u64 = match self.mode {
            ScanMode::Exhaustive => lattices
                .iter()
                .map(|l| (0..=self.max_family as u32).map(|n| (l.len() as u64).saturating_pow(n)).sum::<u64>())
                .sum(),
            ScanMode::Random { count, .. } => (count as u64).saturating_mul(lattices.len() as u64),
        };
        if total > MAX_SCAN_INSTANCES {
            return Err(Error::InfeasibleScale(format!("{total} families exceed the scan cap {MAX_SCAN_INSTANCES}")));
        }
        Ok(lattices)
    }

    /// Families (as lattice indices) to scan on `lattice`, in scan order:
    /// all tuples by length then lexicographically, or seeded random tuples.
    fn families(&self, lattice: &Lattice) -> Vec<Vec<usize>> {
        let n = lattice.len();
        match self.mode {
            ScanMode::Exhaustive => {
                let mut out = Vec::new();
                for k in 0..=self.max_family {
                    let mut tuple = vec![0usize; k];
                    loop {
                        out.push(tuple.clone());
                        let Some(pos) = (0..k).rev().find(|&i| tuple[i] + 1 < n) else { break };
                        tuple[pos] += 1;
                        tuple[pos + 1..].iter_mut().for_each(|x| *x = 0);
                    }
                }
                out
            }
            ScanMode::Random { seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (lattice.space().dim() as u64) << 32);
                (0..count)
                    .map(|_| {
                        let k = rng.gen_range(0..=self.max_family);
                        (0..k).map(|_| rng.gen_range(0..n)).collect()
                    })
                    .collect()
            }
        }
    }
}

/// Outcome of a scan. `elapsed` is kept out of the JSON so equal configs give
/// byte-identical reports.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub scan: String,
    pub config: ScanConfig,
    pub instances_checked: u64,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outcomes: Vec<Value>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs `check` on every instance, dealing instance `i` to shard
/// `i % shards`, and returns the results in instance order.
fn sharded<I: Sync, T: Send>(instances: &[I], shards: usize, check: impl Fn(&I) -> Result<T> + Sync) -> Result<Vec<T>> {
    let per_shard: Vec<Result<Vec<(usize, T)>>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            (s..instances.len())
                .step_by(shards)
                .map(|i| check(&instances[i]).map(|t| (i, t)))
                .collect()
        })
        .collect();
    let mut merged = Vec::with_capacity(instances.len());
    for r in per_shard {
        merged.extend(r?);
    }
    merged.sort_by_key(|&(i, _)| i);
    Ok(merged.into_iter().map(|(_, t)| t).collect())
}

/// Free matroid, every rank-1 matroid, every union of two rank-1 matroids and
/// every matroid represented by a single row over GF(q²), without repeats.
pub fn standard_matroids(lattice: &Arc<Lattice>) -> Result<Vec<QMatroid>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |m: QMatroid| {
        if seen.insert(m.ranks().to_vec()) {
            out.push(m);
        }
    };
    push(QMatroid::free(lattice));
    let rank_ones: Vec<QMatroid> = (0..lattice.len()).map(|i| rank_one_at(lattice, i)).collect();
    for m in &rank_ones {
        push(m.clone());
    }
    for i in 0..rank_ones.len() {
        for j in i..rank_ones.len() {
            push(union(&[rank_ones[i].clone(), rank_ones[j].clone()])?);
        }
    }
    let base = lattice.space();
    if base.field().is_prime_field() {
        let ext = FieldSpec::new(base.field().characteristic(), 2, None)?;
        let m = base.dim() as u32;
        let count = ext.order().checked_pow(m).filter(|&c| c <= 4096);
        for code in 0..count.unwrap_or(0) {
            let row = (0..m).map(|j| (code / ext.order().pow(j) % ext.order()) as u32).collect();
            let rep = QRepresentation::new(base, ext.clone(), vec![row])?;
            push(represent(&rep, lattice)?);
        }
    }
    Ok(out)
}

fn family_json(lattice: &Lattice, members: &[usize]) -> Vec<Vec<String>> {
    members.iter().map(|&i| lattice.get(i).to_row_strings()).collect()
}

fn mask_json(j: u64) -> Vec<usize> {
    mask_to_indices(j)
}

struct RadoSides {
    lhs: Option<usize>,
    rhs_violation: Option<u64>,
}

fn q_rado_sides(m: &QMatroid, barn: &[usize], fam: &IndexedFamily) -> RadoSides {
    let l = m.lattice();
    let n = fam.len();
    let lhs = (0..l.len()).find(|&t| l.dim(t) == n && m.is_independent_at(t) && fam.is_partial_q_transversal_at(t));
    let top = barn[l.top()];
    let rhs_violation = (0..1u64 << n).find(|&j| barn[fam.meet_at(j)] + popcount(j) > top);
    RadoSides { lhs, rhs_violation }
}

/// Compares both sides of the q-Rado statement for every family in range and
/// every matroid `source` produces on each scanned space.
pub fn scan_q_rado<F>(cfg: &ScanConfig, source: F) -> Result<ScanReport>
where
    F: Fn(&Arc<Lattice>) -> Result<Vec<QMatroid>>,
{
    let start = Instant::now();
    let mut instances_checked = 0;
    let mut counterexamples = Vec::new();
    for lattice in cfg.lattices()? {
        let matroids = source(&lattice)?;
        if let Some(m) = matroids.iter().find(|m| m.lattice().space() != lattice.space()) {
            return Err(Error::DimensionMismatch { expected: lattice.space().dim(), found: m.lattice().space().dim() });
        }
        let barns: Vec<Vec<usize>> = matroids
            .iter()
            .map(|m| (0..lattice.len()).map(|x| m.bar_nullity_at(x)).collect())
            .collect();
        let families = cfg.families(&lattice);
        let instances: Vec<(usize, usize)> =
            (0..families.len()).flat_map(|f| (0..matroids.len()).map(move |m| (f, m))).collect();
        let results = sharded(&instances, cfg.parallel_shards, |&(f, mi)| {
            let fam = IndexedFamily::from_indices(&lattice, families[f].clone());
            let sides = q_rado_sides(&matroids[mi], &barns[mi], &fam);
            Ok((sides.lhs.is_some() != sides.rhs_violation.is_none()).then(|| {
                json!({
                    "kind": "q-rado",
                    "space": SpaceJson::from(lattice.space()),
                    "matroid": MatroidJson::from(&matroids[mi]),
                    "family": family_json(&lattice, &families[f]),
                    "lhs": sides.lhs.is_some(),
                    "rhs": sides.rhs_violation.is_none(),
                    "transversal": sides.lhs.map(|t| lattice.get(t).to_row_strings()),
                    "violating_J": sides.rhs_violation.map(mask_json),
                })
            }))
        })?;
        instances_checked += results.len() as u64;
        counterexamples.extend(results.into_iter().flatten());
    }
    Ok(ScanReport {
        scan: "q-rado".into(),
        config: cfg.clone(),
        instances_checked,
        counterexamples,
        outcomes: Vec::new(),
        notes: vec![
            "lhs: some q-transversal T with dim T = n is independent in M (brute force over T)".into(),
            "rhs: barn(X(J)) + |J| <= barn(V) for every J, including the empty set".into(),
        ],
        elapsed: start.elapsed(),
    })
}

/// Groups families by (presentation rank table, number of members) and
/// reports every group with two minimal presentations that differ as
/// multisets of members.
pub fn scan_minimal_uniqueness(cfg: &ScanConfig) -> Result<ScanReport> {
    let start = Instant::now();
    let mut instances_checked = 0;
    let mut counterexamples = Vec::new();
    for lattice in cfg.lattices()? {
        let families = cfg.families(&lattice);
        let results = sharded(&families, cfg.parallel_shards, |members| {
            let fam = IndexedFamily::from_indices(&lattice, members.clone());
            let m = fam.matroid();
            let minimal = members.iter().all(|&x| m.is_cyclic_at(x));
            Ok((m.ranks().to_vec(), minimal))
        })?;
        instances_checked += results.len() as u64;
        let mut groups: BTreeMap<(Vec<u32>, usize), BTreeSet<Vec<usize>>> = BTreeMap::new();
        for (members, (ranks, minimal)) in families.iter().zip(results) {
            if minimal {
                let mut multiset = members.clone();
                multiset.sort_unstable();
                groups.entry((ranks, members.len())).or_default().insert(multiset);
            }
        }
        for (_, presentations) in groups {
            if presentations.len() > 1 {
                counterexamples.push(json!({
                    "kind": "minimal-uniqueness",
                    "space": SpaceJson::from(lattice.space()),
                    "presentations": presentations.iter().map(|p| family_json(&lattice, p)).collect::<Vec<_>>(),
                }));
            }
        }
    }
    Ok(ScanReport {
        scan: "minimal-uniqueness".into(),
        config: cfg.clone(),
        instances_checked,
        counterexamples,
        outcomes: Vec::new(),
        notes: vec![
            "presentations are compared as unordered multisets of members".into(),
            "groups are keyed by the presented rank table and the number of members".into(),
        ],
        elapsed: start.elapsed(),
    })
}

const SEARCH_TRIES: usize = 256;

/// First family and first aligned family seen for one presentation matroid.
type Presentations = (Vec<usize>, Option<Vec<usize>>);

/// Looks for a representation of every distinct presentation matroid in
/// range. A matroid with an aligned presentation gets the explicit
/// construction; the rest get a seeded random search up to `max_ext_degree`.
/// A failed search is recorded as inconclusive, never as a counterexample.
pub fn scan_representability(cfg: &ScanConfig, max_ext_degree: u32) -> Result<ScanReport> {
    let start = Instant::now();
    if max_ext_degree == 0 {
        return Err(Error::OutOfRange("max_ext_degree must be at least 1".into()));
    }
    let seed = match cfg.mode {
        ScanMode::Random { seed, .. } => seed,
        ScanMode::Exhaustive => 0,
    };
    let mut instances_checked = 0;
    let mut outcomes = Vec::new();
    for lattice in cfg.lattices()? {
        let mut distinct: BTreeMap<Vec<u32>, Presentations> = BTreeMap::new();
        let mut order = Vec::new();
        for members in cfg.families(&lattice) {
            let fam = IndexedFamily::from_indices(&lattice, members.clone());
            let aligned = AlignedFamily::from_family(&fam.to_family()).is_some();
            let ranks = fam.matroid().ranks().to_vec();
            let entry = distinct.entry(ranks.clone()).or_insert_with(|| {
                order.push(ranks);
                (members.clone(), None)
            });
            if aligned && entry.1.is_none() {
                entry.1 = Some(members);
            }
        }
        let instances: Vec<(usize, Vec<usize>, Option<Vec<usize>>)> = order
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let (f, a) = distinct[r].clone();
                (i, f, a)
            })
            .collect();
        let results = sharded(&instances, cfg.parallel_shards, |(i, first, aligned)| {
            let fam = IndexedFamily::from_indices(&lattice, first.clone());
            let target = fam.matroid();
            let mut found: Option<(&str, Vec<usize>, QRepresentation)> = None;
            if let Some(a) = aligned {
                let af = AlignedFamily::from_family(&IndexedFamily::from_indices(&lattice, a.clone()).to_family())
                    .expect("recognized as aligned");
                match build_aligned_representation(&af) {
                    Ok(rep) => {
                        if !verify_representation(&rep, &target)?.agrees {
                            return Err(Error::TheoremViolation(format!(
                                "aligned construction fails for {:?}",
                                af.index_sets()
                            )));
                        }
                        found = Some(("aligned", a.clone(), rep));
                    }
                    Err(Error::ExtensionTooLarge(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            if found.is_none() {
                let rows = target.rank_of_space();
                let instance_seed = seed.wrapping_add((*i as u64).wrapping_mul(0x2545_f491_4f6c_dd1d));
                if let Some(rep) = search_representation(&target, rows, max_ext_degree, SEARCH_TRIES, instance_seed)? {
                    found = Some(("search", first.clone(), rep));
                }
            }
            Ok(match found {
                Some((method, members, rep)) => json!({
                    "space": SpaceJson::from(lattice.space()),
                    "family": family_json(&lattice, &members),
                    "rank": target.rank_of_space(),
                    "status": "found",
                    "method": method,
                    "degree": rep.ext().degree(),
                    "representation": RepresentationJson::from(&rep),
                }),
                None => json!({
                    "space": SpaceJson::from(lattice.space()),
                    "family": family_json(&lattice, first),
                    "rank": target.rank_of_space(),
                    "status": "not-found (inconclusive)",
                }),
            })
        })?;
        instances_checked += results.len() as u64;
        outcomes.extend(results);
    }
    Ok(ScanReport {
        scan: "representability".into(),
        config: cfg.clone(),
        instances_checked,
        counterexamples: Vec::new(),
        outcomes,
        notes: vec![
            "one instance per distinct presentation matroid in range".into(),
            format!("random search over GF(q^d), d <= {max_ext_degree}, {SEARCH_TRIES} tries per degree"),
            "not-found means the bounded search failed; it is not evidence of non-representability".into(),
        ],
        elapsed: start.elapsed(),
    })
}

fn parse<T: serde::de::DeserializeOwned>(v: &Value, key: &str) -> Result<T> {
    let field = v.get(key).ok_or_else(|| Error::Parse(format!("missing \"{key}\"")))?;
    serde_json::from_value(field.clone()).map_err(|e| Error::Parse(format!("\"{key}\": {e}")))
}

/// Re-derives a counterexample from its serialization alone, using the
/// subspace-level procedures rather than the scanners' indexed fast paths.
/// Returns whether the recorded mismatch is reproduced.
pub fn replay_counterexample(v: &Value) -> Result<bool> {
    let space = parse::<SpaceJson>(v, "space")?.to_spec()?;
    match v.get("kind").and_then(Value::as_str) {
        Some("q-rado") => {
            let m = parse::<MatroidJson>(v, "matroid")?.to_matroid()?;
            if m.lattice().space() != &space {
                return Err(Error::SpecMismatch);
            }
            let fam = family_from_json(&space, &parse::<Vec<Vec<String>>>(v, "family")?)?;
            let (lhs, rhs) = q_rado_by_definition(&m, &fam)?;
            Ok(lhs != rhs && Some(lhs) == v["lhs"].as_bool() && Some(rhs) == v["rhs"].as_bool())
        }
        Some("minimal-uniqueness") => {
            let lattice = Lattice::new(&space)?;
            let fams = parse::<Vec<Vec<Vec<String>>>>(v, "presentations")?
                .iter()
                .map(|f| family_from_json(&space, f))
                .collect::<Result<Vec<_>>>()?;
            if fams.len() < 2 {
                return Ok(false);
            }
            let target = presentation_matroid(&lattice, &fams[0])?;
            let mut multisets = BTreeSet::new();
            for f in &fams {
                if presentation_matroid(&lattice, f)? != target
                    || f.len() != fams[0].len()
                    || !is_minimal_presentation(&lattice, f)?.minimal
                {
                    return Ok(false);
                }
                let mut ms: Vec<Subspace> = f.members().to_vec();
                ms.sort();
                multisets.insert(ms);
            }
            Ok(multisets.len() == fams.len())
        }
        other => Err(Error::Parse(format!("unknown counterexample kind {other:?}"))),
    }
}

/// Both sides of the q-Rado statement from the definitions.
pub fn q_rado_by_definition(m: &QMatroid, fam: &SubspaceFamily) -> Result<(bool, bool)> {
    let space = fam.space();
    let n = fam.len();
    let mut lhs = false;
    if n <= space.dim() {
        for t in enumerate_subspaces(space, None, Some(n), &Caps::default())? {
            if m.is_independent(&t)? && is_partial_q_transversal(&t, fam)?.verdict {
                lhs = true;
                break;
            }
        }
    }
    let top = m.bar_nullity(&space.full())?;
    let mut rhs = true;
    for (j, x) in fam.meets_by_subset().iter().enumerate() {
        if m.bar_nullity(x)? + popcount(j as u64) > top {
            rhs = false;
            break;
        }
    }
    Ok((lhs, rhs))
}

/// Re-verifies a representability outcome: a "found" entry must represent
/// the presentation matroid of its family. Inconclusive entries replay as true.
pub fn replay_outcome(v: &Value) -> Result<bool> {
    let space = parse::<SpaceJson>(v, "space")?.to_spec()?;
    let fam = family_from_json(&space, &parse::<Vec<Vec<String>>>(v, "family")?)?;
    match v.get("status").and_then(Value::as_str) {
        Some("found") => {
            let rep = parse::<RepresentationJson>(v, "representation")?.to_representation()?;
            let lattice = Lattice::new(&space)?;
            let target = presentation_matroid(&lattice, &fam)?;
            Ok(verify_representation(&rep, &target)?.agrees)
        }
        Some("not-found (inconclusive)") => Ok(true),
        other => Err(Error::Parse(format!("unknown status {other:?}"))),
    }
}
