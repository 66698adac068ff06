//! Brute-force oracles shared by the integration tests. They work on explicit
//! vector sets and exhaustive search, never on the library's lattice tables.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use qtransversal::field::Code;
use qtransversal::subspace::canonicalize;
use qtransversal::{FieldSpec, Lattice, QMatroid, Subspace, SubspaceFamily, VectorSpaceSpec};

pub fn space(q: u64, n: usize) -> VectorSpaceSpec {
    VectorSpaceSpec::new(FieldSpec::of_order(q).unwrap(), n).unwrap()
}

pub fn lattice(q: u64, n: usize) -> Arc<Lattice> {
    Lattice::new(&space(q, n)).unwrap()
}

/// Every vector of the space as a coordinate list.
pub fn all_vectors(v: &VectorSpaceSpec) -> Vec<Vec<Code>> {
    let q = v.field().order();
    (0..q.pow(v.dim() as u32))
        .map(|mut c| {
            (0..v.dim())
                .map(|_| {
                    let d = (c % q) as Code;
                    c /= q;
                    d
                })
                .collect()
        })
        .collect()
}

pub fn span(v: &VectorSpaceSpec, vectors: &[Vec<Code>]) -> Subspace {
    let vs: Vec<_> = vectors.iter().map(|c| v.vector(c.clone()).unwrap()).collect();
    canonicalize(v, &vs).unwrap()
}

pub fn vector_set(s: &Subspace) -> BTreeSet<Vec<Code>> {
    s.vectors().collect()
}

pub fn leq(a: &Subspace, b: &Subspace) -> bool {
    vector_set(a).is_subset(&vector_set(b))
}

pub fn meet(a: &Subspace, b: &Subspace) -> Subspace {
    let common: Vec<Vec<Code>> = vector_set(a).intersection(&vector_set(b)).cloned().collect();
    span(a.space(), &common)
}

pub fn join(a: &Subspace, b: &Subspace) -> Subspace {
    let mut all: Vec<Vec<Code>> = a.rows().to_vec();
    all.extend(b.rows().iter().cloned());
    span(a.space(), &all)
}

/// All subspaces, as spans of every tuple of at most `dim` vectors.
pub fn all_subspaces(v: &VectorSpaceSpec) -> BTreeSet<Subspace> {
    let vectors = all_vectors(v);
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<Vec<Code>>> = vec![vec![]];
    while let Some(t) = stack.pop() {
        out.insert(span(v, &t));
        if t.len() < v.dim() {
            for x in &vectors {
                let mut u = t.clone();
                u.push(x.clone());
                stack.push(u);
            }
        }
    }
    out
}

/// Every tuple of `k` indices from `0..len`, lexicographically.
pub fn tuples(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..len).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

/// Every family of `min..=max` members drawn from the lattice.
pub fn families(l: &Lattice, min: usize, max: usize) -> Vec<SubspaceFamily> {
    (min..=max)
        .flat_map(|k| tuples(l.len(), k))
        .map(|t| SubspaceFamily::new(l.space(), t.iter().map(|&i| l.get(i).clone()).collect()).unwrap())
        .collect()
}

/// Bounded, monotone and submodular on every pair, using vector-set meets and joins.
pub fn rank_axioms_hold(m: &QMatroid) -> bool {
    let subs = m.lattice().subspaces();
    let r = |s: &Subspace| m.rank(s).unwrap();
    subs.iter().all(|a| r(a) <= a.dim())
        && subs.iter().all(|a| {
            subs.iter().all(|b| {
                (!leq(a, b) || r(a) <= r(b)) && r(&join(a, b)) + r(&meet(a, b)) <= r(a) + r(b)
            })
        })
}

/// Rank of `a` in the union of `members`, straight from the induction formula
/// min over B ≤ a of (sum of member ranks of B) + dim a - dim B.
pub fn union_rank(members: &[QMatroid], a: &Subspace) -> usize {
    let l = members[0].lattice();
    l.subspaces()
        .iter()
        .filter(|b| leq(b, a))
        .map(|b| members.iter().map(|m| m.rank(b).unwrap()).sum::<usize>() + a.dim() - b.dim())
        .min()
        .unwrap()
}

/// Whether the vectors `basis` can be sent injectively to members of `fam`,
/// each vector to a member that does not contain it.
pub fn has_avoiding_injection(basis: &[Vec<Code>], fam: &SubspaceFamily) -> bool {
    fn go(i: usize, basis: &[Vec<Code>], sets: &[BTreeSet<Vec<Code>>], used: &mut Vec<bool>) -> bool {
        if i == basis.len() {
            return true;
        }
        for j in 0..sets.len() {
            if !used[j] && !sets[j].contains(&basis[i]) {
                used[j] = true;
                if go(i + 1, basis, sets, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let sets: Vec<_> = fam.members().iter().map(vector_set).collect();
    go(0, basis, &sets, &mut vec![false; sets.len()])
}

/// Every unordered basis of `t`, by choosing dim t vectors and keeping the
/// linearly independent choices.
pub fn unordered_bases(t: &Subspace) -> Vec<Vec<Vec<Code>>> {
    let vectors: Vec<Vec<Code>> = t.vectors().filter(|v| v.iter().any(|&c| c != 0)).collect();
    let k = t.dim();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn go(
        start: usize,
        k: usize,
        vectors: &[Vec<Code>],
        t: &Subspace,
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<Code>>>,
    ) {
        if pick.len() == k {
            let b: Vec<Vec<Code>> = pick.iter().map(|&i| vectors[i].clone()).collect();
            if span(t.space(), &b).dim() == k {
                out.push(b);
            }
            return;
        }
        for i in start..vectors.len() {
            pick.push(i);
            go(i + 1, k, vectors, t, pick, out);
            pick.pop();
        }
    }
    go(0, k, &vectors, t, &mut pick, &mut out);
    out
}

/// T is a partial q-transversal iff every basis of T has an avoiding injection.
pub fn q_transversal_oracle(t: &Subspace, fam: &SubspaceFamily) -> bool {
    t.dim() <= fam.len() && unordered_bases(t).iter().all(|b| has_avoiding_injection(b, fam))
}

/// Dependent subspaces all of whose proper subspaces are independent.
pub fn circuits_oracle(m: &QMatroid) -> BTreeSet<Subspace> {
    let subs = m.lattice().subspaces();
    let indep = |s: &Subspace| m.rank(s).unwrap() == s.dim();
    subs.iter()
        .filter(|c| !indep(c) && subs.iter().all(|d| d == *c || !leq(d, c) || indep(d)))
        .cloned()
        .collect()
}

/// Join of the circuits below `x` equals `x`.
pub fn cyclic_oracle(m: &QMatroid, x: &Subspace) -> bool {
    let bottom = x.space().bottom();
    let j = circuits_oracle(m).iter().filter(|c| leq(c, x)).fold(bottom, |acc, c| join(&acc, c));
    &j == x
}
