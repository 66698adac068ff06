//! q-matroids as fully materialized rank tables over a [`Lattice`].
//!
//! Every construction here (rank-1 matroids, induction from a submodular
//! function, unions) produces a [`QMatroid`] whose table is indexed like the
//! lattice. Derived notions (circuits, closure, bases, bar nullity, cyclic
//! subspaces) are computed by lattice scans.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::subspace::Subspace;

/// How a [`QMatroid`] was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Free,
    RankOne,
    Induced,
    Union,
    Presentation,
    Represented,
    Table,
}

/// Anything that assigns a rank to subspaces of a fixed space.
pub trait RankOracle {
    fn rank_of(&self, a: &Subspace) -> Result<usize>;
}

/// First failure of the rank axioms found by [`QMatroid::check_rank_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Bounds(Subspace),
    Monotone(Subspace, Subspace),
    Submodular(Subspace, Subspace),
}

#[derive(Clone)]
pub struct QMatroid {
    lattice: Arc<Lattice>,
    ranks: Vec<u32>,
    provenance: Provenance,
}

impl PartialEq for QMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.space() == other.lattice.space() && self.ranks == other.ranks
    }
}

impl Eq for QMatroid {}

impl fmt::Debug for QMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QMatroid({:?}, {:?}, rank {}, table {:?})",
            self.lattice.space(),
            self.provenance,
            self.rank_of_space(),
            self.ranks
        )
    }
}

impl RankOracle for QMatroid {
    fn rank_of(&self, a: &Subspace) -> Result<usize> {
        self.rank(a)
    }
}

impl QMatroid {
    /// Wraps a rank table, rejecting it if it violates the rank axioms.
    pub fn from_table(lattice: &Arc<Lattice>, ranks: Vec<u32>, provenance: Provenance) -> Result<Self> {
        if ranks.len() != lattice.len() {
            return Err(Error::IncompleteTable { expected: lattice.len(), found: ranks.len() });
        }
        let m = QMatroid { lattice: lattice.clone(), ranks, provenance };
        match m.check_rank_axioms() {
            None => Ok(m),
            Some(v) => Err(Error::InvalidRankTable(format!("{v:?}"))),
        }
    }

    pub(crate) fn from_table_unchecked(lattice: &Arc<Lattice>, ranks: Vec<u32>, provenance: Provenance) -> Self {
        QMatroid { lattice: lattice.clone(), ranks, provenance }
    }

    /// The free q-matroid, r = dim.
    pub fn free(lattice: &Arc<Lattice>) -> Self {
        let ranks = (0..lattice.len()).map(|i| lattice.dim(i) as u32).collect();
        Self::from_table_unchecked(lattice, ranks, Provenance::Free)
    }

    /// The rank-0 q-matroid (every subspace is a loop).
    pub fn zero(lattice: &Arc<Lattice>) -> Self {
        Self::from_table_unchecked(lattice, vec![0; lattice.len()], Provenance::RankOne)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Rank table in lattice enumeration order.
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn rank_at(&self, i: usize) -> usize {
        self.ranks[i] as usize
    }

    pub fn rank(&self, a: &Subspace) -> Result<usize> {
        Ok(self.rank_at(self.lattice.index_of(a)?))
    }

    /// r(V).
    pub fn rank_of_space(&self) -> usize {
        self.rank_at(self.lattice.top())
    }

    pub fn is_independent_at(&self, i: usize) -> bool {
        self.rank_at(i) == self.lattice.dim(i)
    }

    pub fn is_independent(&self, a: &Subspace) -> Result<bool> {
        Ok(self.is_independent_at(self.lattice.index_of(a)?))
    }

    pub fn nullity_at(&self, i: usize) -> usize {
        self.lattice.dim(i) - self.rank_at(i)
    }

    /// n(X) = dim X − r(X).
    pub fn nullity(&self, x: &Subspace) -> Result<usize> {
        Ok(self.nullity_at(self.lattice.index_of(x)?))
    }

    /// Largest subspace of rank 0.
    pub fn loop_space(&self) -> Subspace {
        let l = &self.lattice;
        let idx = (0..l.len())
            .filter(|&i| self.ranks[i] == 0)
            .max_by_key(|&i| l.dim(i))
            .expect("r(⊥) = 0");
        l.get(idx).clone()
    }

    pub fn check_rank_axioms(&self) -> Option<AxiomViolation> {
        let l = &self.lattice;
        let n = l.len();
        for a in 0..n {
            if self.rank_at(a) > l.dim(a) {
                return Some(AxiomViolation::Bounds(l.get(a).clone()));
            }
        }
        for a in 0..n {
            for &b in l.below(a) {
                if self.ranks[b] > self.ranks[a] {
                    return Some(AxiomViolation::Monotone(l.get(b).clone(), l.get(a).clone()));
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let lhs = self.ranks[l.join(a, b)] + self.ranks[l.meet(a, b)];
                if lhs > self.ranks[a] + self.ranks[b] {
                    return Some(AxiomViolation::Submodular(l.get(a).clone(), l.get(b).clone()));
                }
            }
        }
        None
    }

    /// Minimal dependent subspaces, as lattice indices in enumeration order.
    pub fn circuit_indices(&self) -> Vec<usize> {
        let l = &self.lattice;
        (0..l.len())
            .filter(|&a| {
                !self.is_independent_at(a)
                    && l.below(a)
                        .iter()
                        .filter(|&&b| l.dim(b) + 1 == l.dim(a))
                        .all(|&b| self.is_independent_at(b))
            })
            .collect()
    }

    pub fn circuits(&self) -> Vec<Subspace> {
        self.circuit_indices().into_iter().map(|i| self.lattice.get(i).clone()).collect()
    }

    /// Closure via 1-dimensional probes: A joined with every line a for which
    /// r(A ∨ a) = r(A).
    pub fn closure_at(&self, a: usize) -> usize {
        let l = &self.lattice;
        let r = self.ranks[a];
        l.lines()
            .filter(|&line| self.ranks[l.join(a, line)] == r)
            .fold(a, |acc, line| l.join(acc, line))
    }

    pub fn closure(&self, a: &Subspace) -> Result<Subspace> {
        let i = self.lattice.index_of(a)?;
        Ok(self.lattice.get(self.closure_at(i)).clone())
    }

    pub fn is_flat_at(&self, a: usize) -> bool {
        self.closure_at(a) == a
    }

    pub fn is_flat(&self, a: &Subspace) -> Result<bool> {
        Ok(self.is_flat_at(self.lattice.index_of(a)?))
    }

    /// Maximal independent subspaces (independent of dimension r(V)).
    pub fn basis_indices(&self) -> Vec<usize> {
        let r = self.rank_of_space();
        (0..self.lattice.len())
            .filter(|&i| self.lattice.dim(i) == r && self.is_independent_at(i))
            .collect()
    }

    pub fn bases(&self) -> Vec<Subspace> {
        self.basis_indices().into_iter().map(|i| self.lattice.get(i).clone()).collect()
    }

    pub fn bar_nullity_at(&self, x: usize) -> usize {
        let l = &self.lattice;
        self.basis_indices()
            .into_iter()
            .map(|b| l.dim(l.meet(b, x)))
            .min()
            .expect("every q-matroid has a basis")
    }

    /// Minimum over bases B of dim(B ∧ X).
    pub fn bar_nullity(&self, x: &Subspace) -> Result<usize> {
        Ok(self.bar_nullity_at(self.lattice.index_of(x)?))
    }

    /// The unique circuit below a nullity-1 subspace `s`.
    ///
    /// Computed as the meet of every nullity-1 subspace of `s`, then checked
    /// against the dichotomy n(T) = 1 iff C ≤ T for all T ≤ S.
    pub fn fundamental_circuit(&self, s: &Subspace) -> Result<Subspace> {
        let l = &self.lattice;
        let si = l.index_of(s)?;
        let ns = self.nullity_at(si);
        if ns != 1 {
            return Err(Error::WrongNullity(ns));
        }
        let c = l
            .below(si)
            .iter()
            .filter(|&&t| self.nullity_at(t) == 1)
            .fold(si, |acc, &t| l.meet(acc, t));
        let is_circuit = self.circuit_indices().contains(&c);
        if !is_circuit {
            return Err(Error::TheoremViolation(format!(
                "meet of nullity-1 subspaces of {:?} is not a circuit",
                s
            )));
        }
        for &t in l.below(si) {
            let expected = usize::from(l.leq(c, t));
            if self.nullity_at(t) != expected {
                return Err(Error::TheoremViolation(format!(
                    "nullity dichotomy fails at {:?} below {:?}",
                    l.get(t),
                    s
                )));
            }
        }
        Ok(l.get(c).clone())
    }

    /// Join of all circuits below `x`.
    pub fn circuit_join_at(&self, x: usize) -> usize {
        let l = &self.lattice;
        self.circuit_indices()
            .into_iter()
            .filter(|&c| l.leq(c, x))
            .fold(l.bottom(), |acc, c| l.join(acc, c))
    }

    pub fn is_cyclic_at(&self, x: usize) -> bool {
        self.circuit_join_at(x) == x
    }

    pub fn is_cyclic(&self, x: &Subspace) -> Result<bool> {
        Ok(self.is_cyclic_at(self.lattice.index_of(x)?))
    }
}

/// The rank-1 q-matroid with loop space `loops`: r(A) = 0 if A ≤ L, else 1.
pub fn rank_one(lattice: &Arc<Lattice>, loops: &Subspace) -> Result<QMatroid> {
    let li = lattice.index_of(loops)?;
    Ok(rank_one_at(lattice, li))
}

pub(crate) fn rank_one_at(lattice: &Arc<Lattice>, li: usize) -> QMatroid {
    let ranks = (0..lattice.len()).map(|a| u32::from(!lattice.leq(a, li))).collect();
    QMatroid::from_table_unchecked(lattice, ranks, Provenance::RankOne)
}

/// Integer-valued function on the lattice, in enumeration order.
#[derive(Clone, Debug)]
pub struct SubmodularFn {
    lattice: Arc<Lattice>,
    values: Vec<i64>,
}

/// Why a table fails to be a submodular function in the sense used for induction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubmodularViolation {
    /// f(⊥) ≠ 0.
    Bottom(i64),
    /// A ≤ B but f(A) > f(B).
    Monotone(Subspace, Subspace),
    /// f(A ∧ B) + f(A ∨ B) > f(A) + f(B).
    Submodular(Subspace, Subspace),
}

/// Checks f(⊥) = 0, monotonicity and submodularity over all pairs.
pub fn check_submodular(lattice: &Arc<Lattice>, values: &[i64]) -> Result<Option<SubmodularViolation>> {
    let l = lattice;
    if values.len() != l.len() {
        return Err(Error::IncompleteTable { expected: l.len(), found: values.len() });
    }
    if values[l.bottom()] != 0 {
        return Ok(Some(SubmodularViolation::Bottom(values[l.bottom()])));
    }
    for a in 0..l.len() {
        for &b in l.below(a) {
            if values[b] > values[a] {
                return Ok(Some(SubmodularViolation::Monotone(l.get(b).clone(), l.get(a).clone())));
            }
        }
    }
    for a in 0..l.len() {
        for b in a + 1..l.len() {
            if values[l.meet(a, b)] + values[l.join(a, b)] > values[a] + values[b] {
                return Ok(Some(SubmodularViolation::Submodular(l.get(a).clone(), l.get(b).clone())));
            }
        }
    }
    Ok(None)
}

impl SubmodularFn {
    pub fn new(lattice: &Arc<Lattice>, values: Vec<i64>) -> Result<Self> {
        if values.len() != lattice.len() {
            return Err(Error::IncompleteTable { expected: lattice.len(), found: values.len() });
        }
        Ok(SubmodularFn { lattice: lattice.clone(), values })
    }

    /// Sum of the rank functions of `members`.
    pub fn sum_of(members: &[QMatroid]) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::OutOfRange("need at least one matroid".into()))?;
        let lattice = first.lattice.clone();
        if members.iter().any(|m| m.lattice.space() != lattice.space()) {
            return Err(Error::SpecMismatch);
        }
        let mut values = vec![0i64; lattice.len()];
        for m in members {
            for (v, &r) in values.iter_mut().zip(&m.ranks) {
                *v += r as i64;
            }
        }
        Ok(SubmodularFn { lattice, values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn check(&self) -> Option<SubmodularViolation> {
        check_submodular(&self.lattice, &self.values).expect("table length checked on construction")
    }

    /// Whether A is independent in the induced matroid: f(B) ≥ dim B for all B ≤ A.
    pub fn induces_independent(&self, a: usize) -> bool {
        self.lattice.below(a).iter().all(|&b| self.values[b] >= self.lattice.dim(b) as i64)
    }
}

/// The q-matroid induced by a submodular function:
/// r(A) = min over B ≤ A of f(B) + dim A − dim B.
pub fn induce(f: &SubmodularFn) -> Result<QMatroid> {
    if f.check().is_some() {
        return Err(Error::NotSubmodular);
    }
    Ok(induce_unchecked(&f.lattice, &f.values, Provenance::Induced))
}

pub(crate) fn induce_unchecked(lattice: &Arc<Lattice>, values: &[i64], provenance: Provenance) -> QMatroid {
    let l = lattice;
    let ranks = (0..l.len())
        .map(|a| {
            let da = l.dim(a) as i64;
            l.below(a)
                .iter()
                .map(|&b| values[b] + da - l.dim(b) as i64)
                .min()
                .expect("⊥ lies below everything") as u32
        })
        .collect();
    QMatroid::from_table_unchecked(l, ranks, provenance)
}

/// q-matroid union: the matroid induced by the sum of the members' rank functions.
pub fn union(members: &[QMatroid]) -> Result<QMatroid> {
    let f = SubmodularFn::sum_of(members)?;
    Ok(induce_unchecked(&f.lattice, &f.values, Provenance::Union))
}
