//! Set-based transversal theory: Hall and Rado conditions, systems of
//! distinct representatives by augmenting paths, the avoidance forms and
//! co-nullity.
//!
//! Subsets of the ground set are `u64` bitmasks (bit i ↔ ground element i), so
//! grounds hold at most 64 elements. Index sets J over a family are bitmasks
//! too and are reported 1-based.

use crate::error::{Error, Result};
use crate::field::{Code, FieldSpec};
use crate::linalg;

pub(crate) fn popcount(m: u64) -> usize {
    m.count_ones() as usize
}

/// 1-based member indices of a bitmask.
pub fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// An indexed family (A_1, ..., A_n) of subsets of a labeled ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: Vec<String>,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn from_masks(ground: Vec<String>, members: Vec<u64>) -> Result<Self> {
        if ground.len() > 64 {
            return Err(Error::OutOfRange("ground sets hold at most 64 elements".into()));
        }
        let full = full_mask(ground.len());
        if members.iter().any(|&m| m & !full != 0) {
            return Err(Error::GroundMismatch);
        }
        Ok(SetFamily { ground, members })
    }

    pub fn from_labels<S: AsRef<str>>(ground: &[S], members: &[Vec<S>]) -> Result<Self> {
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        let members = members
            .iter()
            .map(|m| m.iter().try_fold(0u64, |acc, s| Ok(acc | 1 << label_index(&ground, s.as_ref())?)))
            .collect::<Result<Vec<u64>>>()?;
        Self::from_masks(ground, members)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ground_mask(&self) -> u64 {
        full_mask(self.ground.len())
    }

    /// A[J], the union of the members indexed by `j`.
    pub fn union_of(&self, j: u64) -> u64 {
        self.indexed(j).fold(0, |acc, m| acc | m)
    }

    /// X(J), the intersection of the members indexed by `j`, with X(∅) = S.
    pub fn intersection_of(&self, j: u64) -> u64 {
        self.indexed(j).fold(self.ground_mask(), |acc, m| acc & m)
    }

    fn indexed(&self, j: u64) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().enumerate().filter(move |(i, _)| j >> i & 1 == 1).map(|(_, &m)| m)
    }

    /// Complemented family (S ∖ A_1, ..., S ∖ A_n).
    pub fn complement(&self) -> SetFamily {
        let full = self.ground_mask();
        SetFamily { ground: self.ground.clone(), members: self.members.iter().map(|m| full & !m).collect() }
    }

    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        (0..self.ground.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.ground[i].clone()).collect()
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        labels.iter().try_fold(0u64, |acc, s| Ok(acc | 1 << label_index(&self.ground, s.as_ref())?))
    }
}

fn label_index(ground: &[String], s: &str) -> Result<usize> {
    ground.iter().position(|g| g == s).ok_or(Error::GroundMismatch)
}

fn full_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassicalKind {
    Free,
    /// ρ ≡ 0.
    Zero,
    /// Column matroid of vectors over a field; one column per ground element.
    Linear { field: FieldSpec, columns: Vec<Vec<Code>> },
}

/// A matroid on a labeled ground set with a rank oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalMatroid {
    ground: Vec<String>,
    kind: ClassicalKind,
}

impl ClassicalMatroid {
    pub fn free(ground: Vec<String>) -> Self {
        ClassicalMatroid { ground, kind: ClassicalKind::Free }
    }

    pub fn zero(ground: Vec<String>) -> Self {
        ClassicalMatroid { ground, kind: ClassicalKind::Zero }
    }

    pub fn linear(ground: Vec<String>, field: FieldSpec, columns: Vec<Vec<Code>>) -> Result<Self> {
        if columns.len() != ground.len() {
            return Err(Error::GroundMismatch);
        }
        let len = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: columns.iter().map(|c| c.len()).find(|&l| l != len).unwrap(),
            });
        }
        let m = ClassicalMatroid { ground, kind: ClassicalKind::Linear { field, columns } };
        if m.ground.len() <= 8 {
            if let Some(bad) = m.axiom_violation() {
                return Err(Error::InvalidRankTable(format!("subset mask {bad:#b}")));
            }
        }
        Ok(m)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn kind(&self) -> &ClassicalKind {
        &self.kind
    }

    pub fn ground_mask(&self) -> u64 {
        full_mask(self.ground.len())
    }

    /// ρ(X).
    pub fn rank(&self, x: u64) -> usize {
        match &self.kind {
            ClassicalKind::Free => popcount(x),
            ClassicalKind::Zero => 0,
            ClassicalKind::Linear { field, columns } => {
                let rows: Vec<Vec<Code>> = (0..columns.len())
                    .filter(|i| x >> i & 1 == 1)
                    .map(|i| columns[i].clone())
                    .collect();
                if rows.is_empty() {
                    0
                } else {
                    linalg::rank(field, &rows)
                }
            }
        }
    }

    pub fn is_independent(&self, x: u64) -> bool {
        self.rank(x) == popcount(x)
    }

    /// First subset (as a mask) at which boundedness, monotonicity or
    /// submodularity fails, scanning every subset.
    pub fn axiom_violation(&self) -> Option<u64> {
        let n = self.ground.len();
        let ranks: Vec<usize> = (0..1u64 << n).map(|x| self.rank(x)).collect();
        for x in 0..1u64 << n {
            if ranks[x as usize] > popcount(x) {
                return Some(x);
            }
            for i in 0..n {
                let y = x | 1 << i;
                if ranks[y as usize] < ranks[x as usize] || ranks[y as usize] > ranks[x as usize] + 1 {
                    return Some(x);
                }
            }
            for y in 0..1u64 << n {
                if ranks[(x | y) as usize] + ranks[(x & y) as usize] > ranks[x as usize] + ranks[y as usize] {
                    return Some(x);
                }
            }
        }
        None
    }

    /// All bases, by brute force over subsets.
    pub fn bases(&self) -> Result<Vec<u64>> {
        let n = self.ground.len();
        if n > 20 {
            return Err(Error::InfeasibleScale(format!("{n} ground elements for basis enumeration")));
        }
        let r = self.rank(self.ground_mask());
        Ok((0..1u64 << n).filter(|&b| popcount(b) == r && self.rank(b) == r).collect())
    }
}

/// Outcome of a Hall-type condition over index sets J; `violating` holds the
/// first failing J (1-based) in increasing bitmask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallVerdict {
    pub holds: bool,
    pub violating: Option<Vec<usize>>,
}

impl HallVerdict {
    pub(crate) fn from_first_violation(mask: Option<u64>) -> Self {
        HallVerdict { holds: mask.is_none(), violating: mask.map(mask_to_indices) }
    }
}

/// Hall's condition: |A[J]| ≥ |J| for every J.
pub fn hall_check(fam: &SetFamily) -> HallVerdict {
    let n = fam.len();
    let bad = (0..1u64 << n).find(|&j| popcount(fam.union_of(j)) < popcount(j));
    HallVerdict::from_first_violation(bad)
}

/// A system of distinct representatives, by augmenting paths. `result[i]` is
/// the ground index chosen for member i.
pub fn find_transversal(fam: &SetFamily) -> Option<Vec<usize>> {
    let n = fam.len();
    let mut owner: Vec<Option<usize>> = vec![None; fam.ground.len()];
    fn augment(fam: &SetFamily, i: usize, seen: &mut u64, owner: &mut [Option<usize>]) -> bool {
        let set = fam.members[i];
        for x in 0..owner.len() {
            if set >> x & 1 == 0 || *seen >> x & 1 == 1 {
                continue;
            }
            *seen |= 1 << x;
            if owner[x].is_none() || augment(fam, owner[x].unwrap(), seen, owner) {
                owner[x] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..n {
        let mut seen = 0u64;
        if !augment(fam, i, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut reps = vec![0; n];
    for (x, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            reps[*i] = x;
        }
    }
    Some(reps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadoVerdict {
    pub holds: bool,
    pub violating: Option<Vec<usize>>,
    /// An M-independent transversal when the condition holds.
    pub transversal: Option<Vec<usize>>,
}

fn check_ground(m: &ClassicalMatroid, fam: &SetFamily) -> Result<()> {
    if m.ground == fam.ground {
        Ok(())
    } else {
        Err(Error::GroundMismatch)
    }
}

/// Search for a transversal independent in `m`, trying every injection.
pub fn independent_transversal(m: &ClassicalMatroid, fam: &SetFamily) -> Result<Option<Vec<usize>>> {
    check_ground(m, fam)?;
    fn go(m: &ClassicalMatroid, fam: &SetFamily, i: usize, used: u64, acc: &mut Vec<usize>) -> bool {
        if i == fam.len() {
            return true;
        }
        for x in 0..fam.ground.len() {
            if fam.members[i] >> x & 1 == 0 || used >> x & 1 == 1 {
                continue;
            }
            let next = used | 1 << x;
            if !m.is_independent(next) {
                continue;
            }
            acc.push(x);
            if go(m, fam, i + 1, next, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    Ok(go(m, fam, 0, 0, &mut acc).then_some(acc))
}

/// Rado's condition ρ(A[J]) ≥ |J| for all J, with a witness either way.
pub fn rado_check(m: &ClassicalMatroid, fam: &SetFamily) -> Result<RadoVerdict> {
    check_ground(m, fam)?;
    let bad = (0..1u64 << fam.len()).find(|&j| m.rank(fam.union_of(j)) < popcount(j));
    let transversal = independent_transversal(m, fam)?;
    if bad.is_none() != transversal.is_some() {
        return Err(Error::TheoremViolation(format!(
            "Rado condition {} but independent transversal search {}",
            if bad.is_none() { "holds" } else { "fails" },
            if transversal.is_some() { "succeeded" } else { "failed" }
        )));
    }
    Ok(RadoVerdict { holds: bad.is_none(), violating: bad.map(mask_to_indices), transversal })
}

/// Whether `t` is a partial avoiding transversal of the avoidance sets
/// (X_1, ..., X_n): |T ∩ X(J)| + |J| ≤ n for every J, with X(∅) = S.
pub fn avoiding_transversal_check(t: u64, fam: &SetFamily) -> HallVerdict {
    let n = fam.len();
    let bad = (0..1u64 << n).find(|&j| popcount(t & fam.intersection_of(j)) + popcount(j) > n);
    HallVerdict::from_first_violation(bad)
}

/// An injection of the elements of `t` into member indices with x ∉ X_{π(x)},
/// as `(element, member)` pairs, if one exists.
pub fn avoiding_assignment(t: u64, fam: &SetFamily) -> Option<Vec<(usize, usize)>> {
    let elems: Vec<usize> = (0..fam.ground.len()).filter(|x| t >> x & 1 == 1).collect();
    let members: Vec<u64> = elems
        .iter()
        .map(|&x| (0..fam.len()).filter(|&i| fam.members[i] >> x & 1 == 0).fold(0u64, |a, i| a | 1 << i))
        .collect();
    let labels = (1..=fam.len()).map(|i| i.to_string()).collect();
    let choices = SetFamily { ground: labels, members };
    let reps = find_transversal(&choices)?;
    Some(elems.into_iter().zip(reps).collect())
}

/// ν*(X) = min over bases B of |X ∩ B|.
pub fn co_nullity(m: &ClassicalMatroid, x: u64) -> Result<usize> {
    let bases = m.bases()?;
    Ok(co_nullity_from(&bases, x))
}

fn co_nullity_from(bases: &[u64], x: u64) -> usize {
    bases.iter().map(|&b| popcount(b & x)).min().expect("a matroid has at least one basis")
}

/// Avoidance form of Rado: ν*(X(J)) + |J| ≤ ν*(S) for every J.
pub fn avoid_rado_check(m: &ClassicalMatroid, fam: &SetFamily) -> Result<HallVerdict> {
    check_ground(m, fam)?;
    let bases = m.bases()?;
    let total = co_nullity_from(&bases, m.ground_mask());
    let bad = (0..1u64 << fam.len())
        .find(|&j| co_nullity_from(&bases, fam.intersection_of(j)) + popcount(j) > total);
    Ok(HallVerdict::from_first_violation(bad))
}
