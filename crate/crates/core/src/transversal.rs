//! q-transversals of a family of subspaces and the presentation q-matroid.
//!
//! A subspace T is a partial q-transversal of (X_1, ..., X_n) when every vector
//! basis of T admits an injection into the members that sends each basis
//! vector to a member not containing it. Three routes decide this and are
//! expected to agree:
//!
//! * independence in the union of the rank-1 q-matroids with loop spaces X_i
//!   ([`presentation_matroid`]),
//! * the index-set inequality dim(T ∧ X(J)) + |J| ≤ n
//!   ([`is_partial_q_transversal`]),
//! * enumeration of all bases of T ([`q_transversal_by_definition`]).

use std::sync::Arc;

use crate::classical::{avoiding_assignment, avoiding_transversal_check, mask_to_indices, popcount, HallVerdict, SetFamily};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::qmatroid::{induce_unchecked, Provenance, QMatroid};
use crate::subspace::{enumerate_bases, Caps, GFVector, Subspace, SubspaceFamily};

/// One vector basis of T with the member (1-based) each basis vector avoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisInjection {
    pub basis: Vec<GFVector>,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QWitness {
    /// Every vector basis of T with an avoiding injection.
    Injections(Vec<BasisInjection>),
    /// dim(T ∧ X(J)) for every J (1-based), all within the bound.
    SubsetBounds(Vec<(Vec<usize>, usize)>),
    /// A J with dim(T ∧ X(J)) + |J| > n.
    Violation { j: Vec<usize>, dim_meet: usize },
    /// A basis of T admitting no avoiding injection, with the violated index set
    /// of the classical avoidance condition on its membership pattern.
    FailingBasis { basis: Vec<GFVector>, j: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTransversalCertificate {
    pub verdict: bool,
    pub witness: QWitness,
}

impl QTransversalCertificate {
    /// Re-verifies the witness against `t` and `fam` without rerunning the
    /// decision procedure that produced it.
    pub fn recheck(&self, t: &Subspace, fam: &SubspaceFamily) -> Result<bool> {
        let n = fam.len();
        let ok = match &self.witness {
            QWitness::Injections(list) => {
                self.verdict
                    && list.iter().all(|inj| {
                        let span = Subspace::from_raw_rows(
                            t.space(),
                            inj.basis.iter().map(|v| v.coords().to_vec()).collect(),
                        );
                        let mut seen = inj.members.clone();
                        seen.sort_unstable();
                        seen.dedup();
                        span == *t
                            && inj.basis.len() == t.dim()
                            && seen.len() == inj.members.len()
                            && inj.basis.iter().zip(&inj.members).all(|(v, &i)| {
                                (1..=n).contains(&i) && !fam.members()[i - 1].contains_coords(v.coords())
                            })
                    })
            }
            QWitness::SubsetBounds(rows) => {
                self.verdict
                    && rows.len() == 1 << n
                    && rows.iter().all(|(j, d)| {
                        let x = meet_of(fam, j);
                        t.meet_unchecked(&x).dim() == *d && d + j.len() <= n
                    })
            }
            QWitness::Violation { j, dim_meet } => {
                let x = meet_of(fam, j);
                !self.verdict && t.meet_unchecked(&x).dim() == *dim_meet && dim_meet + j.len() > n
            }
            QWitness::FailingBasis { basis, j } => {
                let span = Subspace::from_raw_rows(t.space(), basis.iter().map(|v| v.coords().to_vec()).collect());
                let pattern = membership_pattern(basis, fam)?;
                let jm = j.iter().fold(0u64, |m, &i| m | 1 << (i - 1));
                !self.verdict
                    && span == *t
                    && basis.len() == t.dim()
                    && popcount(pattern.ground_mask() & pattern.intersection_of(jm)) + j.len() > n
            }
        };
        Ok(ok)
    }
}

fn meet_of(fam: &SubspaceFamily, j: &[usize]) -> Subspace {
    j.iter().fold(fam.space().full(), |acc, &i| acc.meet_unchecked(&fam.members()[i - 1]))
}

/// Family stored as lattice indices, with X(J) precomputed for every J.
#[derive(Debug, Clone)]
pub struct IndexedFamily {
    lattice: Arc<Lattice>,
    members: Vec<usize>,
    meets: Vec<usize>,
}

impl IndexedFamily {
    pub fn new(lattice: &Arc<Lattice>, fam: &SubspaceFamily) -> Result<Self> {
        if fam.space() != lattice.space() {
            return Err(Error::SpecMismatch);
        }
        let members = fam.members().iter().map(|m| lattice.index_of(m)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(lattice, members))
    }

    pub fn from_indices(lattice: &Arc<Lattice>, members: Vec<usize>) -> Self {
        let n = members.len();
        let mut meets = Vec::with_capacity(1 << n);
        meets.push(lattice.top());
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            meets.push(lattice.meet(meets[rest], members[low]));
        }
        IndexedFamily { lattice: lattice.clone(), members, meets }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_family(&self) -> SubspaceFamily {
        let members = self.members.iter().map(|&i| self.lattice.get(i).clone()).collect();
        SubspaceFamily::new(self.lattice.space(), members).expect("members come from the lattice")
    }

    /// X(J) as a lattice index; X(∅) = V.
    pub fn meet_at(&self, j: u64) -> usize {
        self.meets[j as usize]
    }

    /// f(B) = number of members not containing B, i.e. the sum of the rank-1
    /// rank functions with loop spaces X_i.
    pub fn f_values(&self) -> Vec<i64> {
        (0..self.lattice.len())
            .map(|b| self.members.iter().filter(|&&x| !self.lattice.leq(b, x)).count() as i64)
            .collect()
    }

    pub fn matroid(&self) -> QMatroid {
        induce_unchecked(&self.lattice, &self.f_values(), Provenance::Presentation)
    }

    /// First J (bitmask) with dim(T ∧ X(J)) + |J| > n.
    pub fn transversal_violation(&self, t: usize) -> Option<u64> {
        let n = self.members.len();
        (0..1u64 << n).find(|&j| self.lattice.dim(self.lattice.meet(t, self.meets[j as usize])) + popcount(j) > n)
    }

    pub fn is_partial_q_transversal_at(&self, t: usize) -> bool {
        self.transversal_violation(t).is_none()
    }

    /// First nonempty J with dim X(J) + |J| > dim V.
    pub fn q_hall_violation(&self) -> Option<u64> {
        let dim_v = self.lattice.space().dim();
        (1..1u64 << self.members.len()).find(|&j| self.lattice.dim(self.meets[j as usize]) + popcount(j) > dim_v)
    }
}

/// The q-matroid whose independent subspaces are the partial q-transversals of
/// `fam`: the union of the rank-1 q-matroids with loop spaces X_i.
pub fn presentation_matroid(lattice: &Arc<Lattice>, fam: &SubspaceFamily) -> Result<QMatroid> {
    Ok(IndexedFamily::new(lattice, fam)?.matroid())
}

/// q-Hall: a q-transversal exists iff dim X(J) + |J| ≤ dim V for every nonempty J.
pub fn q_hall(fam: &SubspaceFamily) -> HallVerdict {
    let dim_v = fam.space().dim();
    let meets = fam.meets_by_subset();
    let bad = (1..meets.len()).find(|&j| meets[j].dim() + popcount(j as u64) > dim_v);
    HallVerdict::from_first_violation(bad.map(|j| j as u64))
}

/// Fast test: dim(T ∧ X(J)) + |J| ≤ n for every J ⊆ {1..n}, including J = ∅.
pub fn is_partial_q_transversal(t: &Subspace, fam: &SubspaceFamily) -> Result<QTransversalCertificate> {
    if t.space() != fam.space() {
        return Err(Error::SpecMismatch);
    }
    let n = fam.len();
    let meets = fam.meets_by_subset();
    let mut rows = Vec::with_capacity(meets.len());
    for (j, x) in meets.iter().enumerate() {
        let d = t.meet_unchecked(x).dim();
        let jset = mask_to_indices(j as u64);
        if d + jset.len() > n {
            return Ok(QTransversalCertificate {
                verdict: false,
                witness: QWitness::Violation { j: jset, dim_meet: d },
            });
        }
        rows.push((jset, d));
    }
    Ok(QTransversalCertificate { verdict: true, witness: QWitness::SubsetBounds(rows) })
}

/// Classical avoidance family on the basis vectors: member j is the set of
/// basis vectors lying in X_j.
fn membership_pattern(basis: &[GFVector], fam: &SubspaceFamily) -> Result<SetFamily> {
    let ground = (1..=basis.len()).map(|i| format!("b{i}")).collect();
    let members = fam
        .members()
        .iter()
        .map(|x| {
            basis
                .iter()
                .enumerate()
                .filter(|(_, b)| x.contains_coords(b.coords()))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    SetFamily::from_masks(ground, members)
}

/// The definition itself: every vector basis of T must be an avoiding
/// transversal. Exponential; desk scale only.
pub fn q_transversal_by_definition(t: &Subspace, fam: &SubspaceFamily, caps: &Caps) -> Result<QTransversalCertificate> {
    if t.space() != fam.space() {
        return Err(Error::SpecMismatch);
    }
    let mut injections = Vec::new();
    for basis in enumerate_bases(t, caps)? {
        let pattern = membership_pattern(&basis, fam)?;
        let all = pattern.ground_mask();
        let verdict = avoiding_transversal_check(all, &pattern);
        let assignment = avoiding_assignment(all, &pattern);
        if verdict.holds != assignment.is_some() {
            return Err(Error::TheoremViolation(format!(
                "avoidance condition and matching disagree for basis {basis:?} of {t:?}"
            )));
        }
        match assignment {
            None => {
                return Ok(QTransversalCertificate {
                    verdict: false,
                    witness: QWitness::FailingBasis { basis, j: verdict.violating.unwrap_or_default() },
                })
            }
            Some(pairs) => {
                let members = pairs.into_iter().map(|(_, i)| i + 1).collect();
                injections.push(BasisInjection { basis, members });
            }
        }
    }
    Ok(QTransversalCertificate { verdict: true, witness: QWitness::Injections(injections) })
}

/// Subfamily with exactly rank-many members presenting the same q-matroid,
/// keeping each member (left to right) only if it raises the rank of the
/// union built so far.
pub fn reduce_presentation(lattice: &Arc<Lattice>, fam: &SubspaceFamily) -> Result<SubspaceFamily> {
    let full = IndexedFamily::new(lattice, fam)?;
    let mut kept: Vec<usize> = Vec::new();
    let mut rank = 0;
    for (i, &x) in full.members().iter().enumerate() {
        let mut trial: Vec<usize> = kept.iter().map(|&k| full.members()[k]).collect();
        trial.push(x);
        let r = IndexedFamily::from_indices(lattice, trial).matroid().rank_of_space();
        if r > rank {
            kept.push(i);
            rank = r;
        }
    }
    let reduced = fam.subfamily(&kept);
    let original = full.matroid();
    if presentation_matroid(lattice, &reduced)? != original || reduced.len() != original.rank_of_space() {
        return Err(Error::TheoremViolation(format!("reducing {fam:?} changed the presented q-matroid")));
    }
    Ok(reduced)
}

/// Outcome of the subsystem form of partial q-transversality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemWitness {
    pub holds: bool,
    /// 1-based member indices of a subfamily of size dim T for which T is a
    /// full q-transversal.
    pub subsystem: Option<Vec<usize>>,
}

/// Whether T is a (full) q-transversal of some subfamily of size dim T. The
/// answer is compared with the fast test; a disagreement is an error.
pub fn partial_equiv_check(t: &Subspace, fam: &SubspaceFamily) -> Result<SubsystemWitness> {
    if t.space() != fam.space() {
        return Err(Error::SpecMismatch);
    }
    let n = fam.len();
    if n > 20 {
        return Err(Error::InfeasibleScale(format!("{n} members for subsystem enumeration")));
    }
    let k = t.dim();
    let mut subsystem = None;
    if k <= n {
        for mask in 0u64..1 << n {
            if popcount(mask) != k {
                continue;
            }
            let idx: Vec<usize> = mask_to_indices(mask).into_iter().map(|i| i - 1).collect();
            if is_partial_q_transversal(t, &fam.subfamily(&idx))?.verdict {
                subsystem = Some(mask_to_indices(mask));
                break;
            }
        }
    }
    let fast = is_partial_q_transversal(t, fam)?.verdict;
    if fast != subsystem.is_some() {
        return Err(Error::TheoremViolation(format!(
            "{t:?} in {fam:?}: fast test says {fast}, subsystem search says {}",
            subsystem.is_some()
        )));
    }
    Ok(SubsystemWitness { holds: fast, subsystem })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    /// 1-based index of the first non-cyclic member.
    pub index: Option<usize>,
    /// Join of the circuits below that member; replacing the member by it
    /// presents the same q-matroid.
    pub shrunken: Option<Subspace>,
}

/// A presentation is minimal iff every member is cyclic in the presented
/// q-matroid. On a non-minimal verdict the shrunken family is checked to
/// present the same q-matroid before it is returned.
pub fn is_minimal_presentation(lattice: &Arc<Lattice>, fam: &SubspaceFamily) -> Result<MinimalityVerdict> {
    let indexed = IndexedFamily::new(lattice, fam)?;
    let m = indexed.matroid();
    for (i, &x) in indexed.members().iter().enumerate() {
        let y = m.circuit_join_at(x);
        if y == x {
            continue;
        }
        let mut members = indexed.members().to_vec();
        members[i] = y;
        if IndexedFamily::from_indices(lattice, members).matroid() != m {
            return Err(Error::TheoremViolation(format!(
                "shrinking member {} of {fam:?} to the join of its circuits changed the q-matroid",
                i + 1
            )));
        }
        return Ok(MinimalityVerdict {
            minimal: false,
            index: Some(i + 1),
            shrunken: Some(lattice.get(y).clone()),
        });
    }
    Ok(MinimalityVerdict { minimal: true, index: None, shrunken: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::qmatroid::rank_one;
    use crate::subspace::VectorSpaceSpec;

    fn lattice(n: usize) -> Arc<Lattice> {
        Lattice::new(&VectorSpaceSpec::new(FieldSpec::of_order(2).unwrap(), n).unwrap()).unwrap()
    }

    fn sub(l: &Lattice, rows: &[&str]) -> Subspace {
        l.space().parse_subspace(rows).unwrap()
    }

    fn family(l: &Lattice, members: &[&[&str]]) -> SubspaceFamily {
        SubspaceFamily::new(l.space(), members.iter().map(|m| sub(l, m)).collect()).unwrap()
    }

    const V2: &[&str] = &["10", "01"];

    #[test]
    fn presentation_examples() {
        let l = lattice(2);
        let m = presentation_matroid(&l, &family(&l, &[&["10"], &["01"]])).unwrap();
        assert_eq!(m, QMatroid::free(&l));
        assert_eq!(presentation_matroid(&l, &family(&l, &[V2])).unwrap(), QMatroid::zero(&l));
        let single = presentation_matroid(&l, &family(&l, &[&["10"]])).unwrap();
        assert_eq!(single, rank_one(&l, &sub(&l, &["10"])).unwrap());
    }

    #[test]
    fn q_hall_examples() {
        let l = lattice(2);
        assert!(q_hall(&family(&l, &[&["10"]])).holds);
        assert_eq!(q_hall(&family(&l, &[V2])).violating, Some(vec![1]));
        let three = q_hall(&family(&l, &[&["10"], &["01"], &["11"]]));
        assert!(!three.holds);
        // the single lines and pairs pass; only J = {1,2,3} fails
        assert_eq!(three.violating, Some(vec![1, 2, 3]));
        let t = sub(&l, &["01"]);
        assert!(is_partial_q_transversal(&t, &family(&l, &[&["10"]])).unwrap().verdict);
    }

    #[test]
    fn fast_test_examples() {
        let l = lattice(2);
        let two = family(&l, &[&["10"], &["01"]]);
        let c = is_partial_q_transversal(&l.space().bottom(), &two).unwrap();
        assert!(c.verdict);
        assert!(c.recheck(&l.space().bottom(), &two).unwrap());
        assert!(is_partial_q_transversal(&l.space().full(), &two).unwrap().verdict);
        let same = family(&l, &[&["10"], &["10"]]);
        let t = sub(&l, &["10"]);
        let c = is_partial_q_transversal(&t, &same).unwrap();
        assert_eq!(c.witness, QWitness::Violation { j: vec![1, 2], dim_meet: 1 });
        assert!(c.recheck(&t, &same).unwrap());
    }

    #[test]
    fn definition_examples() {
        let l = lattice(2);
        let caps = Caps::default();
        let two = family(&l, &[&["10"], &["01"]]);
        assert!(q_transversal_by_definition(&l.space().bottom(), &two, &caps).unwrap().verdict);
        let c = q_transversal_by_definition(&l.space().full(), &two, &caps).unwrap();
        assert!(c.verdict);
        match &c.witness {
            QWitness::Injections(list) => assert_eq!(list.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(c.recheck(&l.space().full(), &two).unwrap());
        let whole = family(&l, &[V2]);
        let t = sub(&l, &["01"]);
        let c = q_transversal_by_definition(&t, &whole, &caps).unwrap();
        assert!(!c.verdict);
        assert!(c.recheck(&t, &whole).unwrap());
    }

    #[test]
    fn reduce_examples() {
        let l = lattice(2);
        let fam = family(&l, &[&["10"], &["01"], V2]);
        assert_eq!(reduce_presentation(&l, &fam).unwrap(), family(&l, &[&["10"], &["01"]]));
        let two = family(&l, &[&["10"], &["01"]]);
        assert_eq!(reduce_presentation(&l, &two).unwrap(), two);
        assert!(reduce_presentation(&l, &family(&l, &[V2, V2])).unwrap().is_empty());
    }

    #[test]
    fn partial_equivalence_examples() {
        let l = lattice(2);
        let two = family(&l, &[&["10"], &["01"]]);
        let w = partial_equiv_check(&l.space().bottom(), &two).unwrap();
        assert_eq!(w, SubsystemWitness { holds: true, subsystem: Some(vec![]) });
        let w = partial_equiv_check(&sub(&l, &["11"]), &two).unwrap();
        assert_eq!(w.subsystem, Some(vec![1]));
        let whole = family(&l, &[V2, V2]);
        assert!(!partial_equiv_check(&sub(&l, &["10"]), &whole).unwrap().holds);
    }

    #[test]
    fn minimality_examples() {
        let l = lattice(2);
        let two = family(&l, &[&["10"], &["01"]]);
        let v = is_minimal_presentation(&l, &two).unwrap();
        assert_eq!(
            v,
            MinimalityVerdict { minimal: false, index: Some(1), shrunken: Some(l.space().bottom()) }
        );
        let bottoms = SubspaceFamily::new(l.space(), vec![l.space().bottom(); 2]).unwrap();
        assert!(is_minimal_presentation(&l, &bottoms).unwrap().minimal);
        assert_eq!(presentation_matroid(&l, &bottoms).unwrap(), QMatroid::free(&l));
        assert!(is_minimal_presentation(&l, &family(&l, &[&["10"]])).unwrap().minimal);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let l2 = lattice(2);
        let l3 = lattice(3);
        let fam = family(&l2, &[&["10"]]);
        assert_eq!(presentation_matroid(&l3, &fam), Err(Error::SpecMismatch));
        assert_eq!(is_partial_q_transversal(&l3.space().full(), &fam), Err(Error::SpecMismatch));
    }
}
