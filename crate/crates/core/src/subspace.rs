//! Subspaces of GF(q)^n in canonical reduced row-echelon form.
//!
//! A [`Subspace`] always stores the RREF of its basis, so equality, hashing and
//! ordering are structural. Enumeration order is dimension-major and then
//! lexicographic on the RREF rows (element codes), which makes every scan in
//! the crate reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{Code, FieldSpec};
use crate::linalg;

/// Explicit scale limits for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Upper bound on q^n for the ambient space.
    pub max_vectors: u64,
    /// Upper bound on the number of vector bases enumerated for one subspace.
    pub max_bases: u64,
    /// Upper bound on the number of subspaces produced by one enumeration.
    pub max_subspaces: u64,
    /// Upper bound on the size of a materialized [`Lattice`](crate::Lattice).
    pub max_lattice: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_vectors: 1 << 20,
            max_bases: 1_000_000,
            max_subspaces: 1_000_000,
            max_lattice: 4096,
        }
    }
}

/// The ambient space V = GF(q)^n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorSpaceSpec {
    field: FieldSpec,
    dim: usize,
}

impl fmt::Debug for VectorSpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})^{}", self.field.order(), self.dim)
    }
}

impl VectorSpaceSpec {
    pub fn new(field: FieldSpec, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::OutOfRange("ambient dimension must be at least 1".into()));
        }
        Ok(VectorSpaceSpec { field, dim })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// q^n, saturating.
    pub fn vector_count(&self) -> u64 {
        self.field.order().saturating_pow(self.dim as u32)
    }

    pub fn vector(&self, coords: Vec<Code>) -> Result<GFVector> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: coords.len() });
        }
        if coords.iter().any(|&c| c as u64 >= self.field.order()) {
            return Err(Error::OutOfRange("coordinate outside the field".into()));
        }
        Ok(GFVector { space: self.clone(), coords })
    }

    /// Parses a row string: `dim` element digit strings concatenated.
    pub fn parse_row(&self, s: &str) -> Result<GFVector> {
        let e = self.field.degree() as usize;
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != self.dim * e {
            return Err(Error::Parse(format!(
                "row \"{s}\" must have {} digits",
                self.dim * e
            )));
        }
        let coords = chars
            .chunks(e)
            .map(|c| self.field.code_from_digits(&c.iter().collect::<String>()))
            .collect::<Result<Vec<_>>>()?;
        Ok(GFVector { space: self.clone(), coords })
    }

    pub fn format_row(&self, coords: &[Code]) -> String {
        coords.iter().map(|&c| self.field.code_to_digits(c)).collect()
    }

    /// Standard basis vector b_j, 1-based.
    pub fn unit(&self, j: usize) -> GFVector {
        let mut coords = vec![0; self.dim];
        coords[j - 1] = 1;
        GFVector { space: self.clone(), coords }
    }

    /// The zero subspace ⊥.
    pub fn bottom(&self) -> Subspace {
        Subspace { space: self.clone(), rows: Vec::new() }
    }

    /// V itself.
    pub fn full(&self) -> Subspace {
        let rows = (0..self.dim)
            .map(|i| {
                let mut r = vec![0; self.dim];
                r[i] = 1;
                r
            })
            .collect();
        Subspace { space: self.clone(), rows }
    }

    /// Parses a subspace from row strings and canonicalizes it.
    pub fn parse_subspace<S: AsRef<str>>(&self, rows: &[S]) -> Result<Subspace> {
        let vectors = rows
            .iter()
            .map(|r| self.parse_row(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        canonicalize(self, &vectors)
    }

    /// Coordinate subspace spanned by `b_j` for `j` in `indices` (1-based).
    pub fn coordinate_subspace(&self, indices: &[usize]) -> Result<Subspace> {
        if let Some(&j) = indices.iter().find(|&&j| j == 0 || j > self.dim) {
            return Err(Error::OutOfRange(format!("basis index {j} outside 1..={}", self.dim)));
        }
        let vectors: Vec<GFVector> = indices.iter().map(|&j| self.unit(j)).collect();
        canonicalize(self, &vectors)
    }
}

/// A vector of V.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GFVector {
    space: VectorSpaceSpec,
    coords: Vec<Code>,
}

impl fmt::Debug for GFVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.space.format_row(&self.coords))
    }
}

impl GFVector {
    pub fn space(&self) -> &VectorSpaceSpec {
        &self.space
    }

    pub fn coords(&self) -> &[Code] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn to_digits(&self) -> String {
        self.space.format_row(&self.coords)
    }
}

/// A subspace of V, stored as its RREF basis.
#[derive(Clone)]
pub struct Subspace {
    space: VectorSpaceSpec,
    rows: Vec<Vec<Code>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.space == other.space
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.space.dim.hash(state);
        self.rows.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumeration order: dimension first, then RREF rows lexicographically.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows.len().cmp(&other.rows.len()).then_with(|| self.rows.cmp(&other.rows))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_row_strings().join(","))
    }
}

/// Span of `vectors`, in canonical form.
pub fn canonicalize(space: &VectorSpaceSpec, vectors: &[GFVector]) -> Result<Subspace> {
    let mut rows = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.space != *space {
            return Err(if v.space.dim != space.dim {
                Error::DimensionMismatch { expected: space.dim, found: v.space.dim }
            } else {
                Error::SpecMismatch
            });
        }
        rows.push(v.coords.clone());
    }
    Ok(Subspace::from_raw_rows(space, rows))
}

impl Subspace {
    /// Canonicalizes arbitrary rows of element codes. Rows must have length n.
    pub(crate) fn from_raw_rows(space: &VectorSpaceSpec, mut rows: Vec<Vec<Code>>) -> Subspace {
        linalg::rref(&space.field, &mut rows);
        Subspace { space: space.clone(), rows }
    }

    pub fn space(&self) -> &VectorSpaceSpec {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_bottom(&self) -> bool {
        self.rows.is_empty()
    }

    /// RREF basis rows.
    pub fn rows(&self) -> &[Vec<Code>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        linalg::pivots_of(&self.rows)
    }

    pub fn basis(&self) -> Vec<GFVector> {
        self.rows
            .iter()
            .map(|r| GFVector { space: self.space.clone(), coords: r.clone() })
            .collect()
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        self.rows.iter().map(|r| self.space.format_row(r)).collect()
    }

    fn check_space(&self, other: &Subspace) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub(crate) fn contains_coords(&self, v: &[Code]) -> bool {
        let mut w = v.to_vec();
        linalg::reduce(&self.space.field, &self.rows, &self.pivots(), &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, v: &GFVector) -> Result<bool> {
        if v.space != self.space {
            return Err(Error::SpecMismatch);
        }
        Ok(self.contains_coords(&v.coords))
    }

    /// A ∨ B, the smallest subspace containing both.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_space(other)?;
        Ok(self.join_unchecked(other))
    }

    pub(crate) fn join_unchecked(&self, other: &Subspace) -> Subspace {
        if other.rows.is_empty() {
            return self.clone();
        }
        if self.rows.is_empty() {
            return other.clone();
        }
        let rows: Vec<Vec<Code>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::from_raw_rows(&self.space, rows)
    }

    /// A ∧ B = A ∩ B, by the Zassenhaus algorithm.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check_space(other)?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &Subspace) -> Subspace {
        if self.rows.is_empty() || other.rows.is_empty() {
            return self.space.bottom();
        }
        let n = self.space.dim;
        let f = &self.space.field;
        let mut m: Vec<Vec<Code>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            m.push(r.iter().chain(r).copied().collect());
        }
        for r in &other.rows {
            m.push(r.iter().copied().chain(std::iter::repeat_n(0, n)).collect());
        }
        linalg::rref(f, &mut m);
        let rows: Vec<Vec<Code>> = m
            .into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Subspace::from_raw_rows(&self.space, rows)
    }

    /// A ≤ B.
    pub fn leq(&self, other: &Subspace) -> Result<bool> {
        self.check_space(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &Subspace) -> bool {
        if self.dim() > other.dim() {
            return false;
        }
        let piv = other.pivots();
        self.rows.iter().all(|r| {
            let mut w = r.clone();
            linalg::reduce(&self.space.field, &other.rows, &piv, &mut w);
            w.iter().all(|&x| x == 0)
        })
    }

    /// All vectors of the subspace, ordered by their coefficient code over the RREF basis.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<Code>> + '_ {
        let q = self.space.field.order();
        let d = self.dim() as u32;
        let total = q.pow(d);
        (0..total).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(d as usize);
            for _ in 0..d {
                coeffs.push((idx % q) as Code);
                idx /= q;
            }
            linalg::combine(&self.space.field, &coeffs, &self.rows, self.space.dim)
        })
    }

    /// The 1-dimensional subspaces contained in this one.
    pub fn lines(&self) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = self
            .vectors()
            .filter(|v| v.iter().any(|&x| x != 0))
            .map(|v| Subspace::from_raw_rows(&self.space, vec![v]))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// An ordered family (X_1, ..., X_n) of subspaces of one space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceFamily {
    space: VectorSpaceSpec,
    members: Vec<Subspace>,
}

impl fmt::Debug for SubspaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.members).finish()
    }
}

impl SubspaceFamily {
    pub fn new(space: &VectorSpaceSpec, members: Vec<Subspace>) -> Result<Self> {
        if members.iter().any(|m| m.space != *space) {
            return Err(Error::SpecMismatch);
        }
        Ok(SubspaceFamily { space: space.clone(), members })
    }

    pub fn empty(space: &VectorSpaceSpec) -> Self {
        SubspaceFamily { space: space.clone(), members: Vec::new() }
    }

    pub fn space(&self) -> &VectorSpaceSpec {
        &self.space
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Copy with member `i` (0-based) replaced.
    pub fn with_member(&self, i: usize, x: Subspace) -> Result<Self> {
        if x.space != self.space {
            return Err(Error::SpecMismatch);
        }
        let mut members = self.members.clone();
        members[i] = x;
        Ok(SubspaceFamily { space: self.space.clone(), members })
    }

    /// Subfamily at the given 0-based indices, in that order.
    pub fn subfamily(&self, indices: &[usize]) -> Self {
        SubspaceFamily {
            space: self.space.clone(),
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
        }
    }

    /// X(J) for every J ⊆ {1..n}, indexed by bitmask (bit i ↔ member i+1),
    /// with the convention X(∅) = V.
    pub fn meets_by_subset(&self) -> Vec<Subspace> {
        let n = self.members.len();
        let mut out: Vec<Subspace> = Vec::with_capacity(1 << n);
        out.push(self.space.full());
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let x = if rest == 0 {
                self.members[low].clone()
            } else {
                out[rest].meet_unchecked(&self.members[low])
            };
            out.push(x);
        }
        out
    }
}

/// Number of k-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Result<u128> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    if q < 2 {
        return Err(Error::OutOfRange(format!("q = {q} is not a field order")));
    }
    let overflow = || Error::OutOfRange(format!("[{n} choose {k}]_{q} overflows u128"));
    let qpow = |e: u32| (q as u128).checked_pow(e).ok_or_else(overflow);
    let mut acc: u128 = 1;
    for i in 0..k {
        // each prefix product is itself a Gaussian binomial, so the division is exact
        let num = qpow(n - i)? - 1;
        let den = qpow(i + 1)? - 1;
        acc = acc.checked_mul(num).ok_or_else(overflow)? / den;
    }
    Ok(acc)
}

/// Every RREF matrix of rank `k` with `d` columns, in coordinate codes.
fn rref_matrices(f: &FieldSpec, d: usize, k: usize) -> Vec<Vec<Vec<Code>>> {
    let q = f.order();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let piv = &pivots;
                (piv[i] + 1..d).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let count = q.pow(free.len() as u32);
        for mut idx in 0..count {
            let mut m = vec![vec![0 as Code; d]; k];
            for (i, &p) in pivots.iter().enumerate() {
                m[i][p] = 1;
            }
            for &(i, c) in &free {
                m[i][c] = (idx % q) as Code;
                idx /= q;
            }
            out.push(m);
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < d - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// Enumerates the subspaces of `of` (default V), optionally of one dimension,
/// each exactly once, in enumeration order.
pub fn enumerate_subspaces(
    space: &VectorSpaceSpec,
    of: Option<&Subspace>,
    dim: Option<usize>,
    caps: &Caps,
) -> Result<impl Iterator<Item = Subspace>> {
    if space.vector_count() > caps.max_vectors {
        return Err(Error::InfeasibleScale(format!(
            "q^n = {} exceeds the cap {}",
            space.vector_count(),
            caps.max_vectors
        )));
    }
    let top = match of {
        Some(a) if a.space != *space => return Err(Error::SpecMismatch),
        Some(a) => a.clone(),
        None => space.full(),
    };
    let d = top.dim();
    let q = space.field.order();
    let dims: Vec<usize> = match dim {
        Some(k) if k > d => Vec::new(),
        Some(k) => vec![k],
        None => (0..=d).collect(),
    };
    let mut total: u128 = 0;
    for &k in &dims {
        total = total.saturating_add(gaussian_binomial(d as u32, k as u32, q)?);
    }
    if total > caps.max_subspaces as u128 {
        return Err(Error::InfeasibleScale(format!(
            "{total} subspaces exceed the cap {}",
            caps.max_subspaces
        )));
    }
    let space = space.clone();
    Ok(dims.into_iter().flat_map(move |k| {
        let f = space.field.clone();
        let mut batch: Vec<Subspace> = rref_matrices(&f, d, k)
            .into_iter()
            .map(|coef| {
                let rows = coef
                    .iter()
                    .map(|c| linalg::combine(&f, c, &top.rows, space.dim))
                    .collect();
                Subspace::from_raw_rows(&space, rows)
            })
            .collect();
        batch.sort();
        batch
    }))
}

/// Number of unordered vector bases of a d-dimensional space over GF(q).
pub fn basis_count(d: u32, q: u64) -> Option<u128> {
    let qd = (q as u128).checked_pow(d)?;
    let mut ordered: u128 = 1;
    for i in 0..d {
        ordered = ordered.checked_mul(qd - (q as u128).pow(i))?;
    }
    let fact: u128 = (1..=d as u128).product();
    Some(ordered / fact)
}

/// Every unordered vector basis of `t`, each exactly once, in a fixed order.
pub fn enumerate_bases(t: &Subspace, caps: &Caps) -> Result<BasisIter> {
    let q = t.space.field.order();
    let count = basis_count(t.dim() as u32, q);
    if count.is_none_or(|c| c > caps.max_bases as u128) {
        return Err(Error::InfeasibleScale(format!(
            "subspace of dimension {} over GF({q}) has too many bases",
            t.dim()
        )));
    }
    let vectors: Vec<Vec<Code>> = t.vectors().filter(|v| v.iter().any(|&x| x != 0)).collect();
    Ok(BasisIter {
        space: t.space.clone(),
        vectors,
        k: t.dim(),
        chosen: Vec::new(),
        spans: Vec::new(),
        next: 0,
        done: false,
    })
}

/// Iterator over the vector bases of a subspace (see [`enumerate_bases`]).
pub struct BasisIter {
    space: VectorSpaceSpec,
    vectors: Vec<Vec<Code>>,
    k: usize,
    chosen: Vec<usize>,
    spans: Vec<Subspace>,
    next: usize,
    done: bool,
}

impl BasisIter {
    fn in_span(&self, v: &[Code]) -> bool {
        self.spans.last().is_some_and(|s| s.contains_coords(v))
    }

    fn emit(&self) -> Vec<GFVector> {
        self.chosen
            .iter()
            .map(|&i| GFVector { space: self.space.clone(), coords: self.vectors[i].clone() })
            .collect()
    }
}

impl Iterator for BasisIter {
    type Item = Vec<GFVector>;

    fn next(&mut self) -> Option<Vec<GFVector>> {
        if self.done {
            return None;
        }
        if self.k == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        let len = self.vectors.len();
        loop {
            let need = self.k - self.chosen.len();
            let mut extended = false;
            while self.next < len && len - self.next >= need {
                let i = self.next;
                self.next += 1;
                if !self.in_span(&self.vectors[i]) {
                    let span = match self.spans.last() {
                        Some(s) => {
                            let mut rows = s.rows.clone();
                            rows.push(self.vectors[i].clone());
                            Subspace::from_raw_rows(&self.space, rows)
                        }
                        None => Subspace::from_raw_rows(&self.space, vec![self.vectors[i].clone()]),
                    };
                    self.chosen.push(i);
                    self.spans.push(span);
                    extended = true;
                    break;
                }
            }
            if extended {
                if self.chosen.len() == self.k {
                    let out = self.emit();
                    let last = self.chosen.pop().unwrap();
                    self.spans.pop();
                    self.next = last + 1;
                    return Some(out);
                }
                continue;
            }
            match self.chosen.pop() {
                None => {
                    self.done = true;
                    return None;
                }
                Some(last) => {
                    self.spans.pop();
                    self.next = last + 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(q: u64, n: usize) -> VectorSpaceSpec {
        VectorSpaceSpec::new(FieldSpec::of_order(q).unwrap(), n).unwrap()
    }

    fn sub(v: &VectorSpaceSpec, rows: &[&str]) -> Subspace {
        v.parse_subspace(rows).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let v = space(2, 2);
        assert_eq!(sub(&v, &["11", "01"]).to_row_strings(), vec!["10", "01"]);
        assert!(canonicalize(&v, &[]).unwrap().is_bottom());
        assert_eq!(sub(&v, &["10", "10"]), sub(&v, &["10"]));
        let w = space(2, 3);
        assert_eq!(
            canonicalize(&v, &[w.unit(1)]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn join_meet_leq_examples() {
        let v = space(2, 2);
        let (a, b, c) = (sub(&v, &["10"]), sub(&v, &["01"]), sub(&v, &["11"]));
        assert_eq!(a.join(&b).unwrap(), v.full());
        assert_eq!(c.join(&a).unwrap(), v.full());
        assert_eq!(a.join(&v.bottom()).unwrap(), a);
        assert_eq!(v.full().meet(&a).unwrap(), a);
        assert!(a.meet(&b).unwrap().is_bottom());
        let w = space(2, 3);
        assert_eq!(
            sub(&w, &["100", "010"]).meet(&sub(&w, &["010", "001"])).unwrap(),
            sub(&w, &["010"])
        );
        assert!(v.bottom().leq(&a).unwrap());
        assert!(c.leq(&v.full()).unwrap());
        assert!(!c.leq(&a).unwrap());
        assert_eq!(a.join(&w.full()), Err(Error::SpecMismatch));
    }

    #[test]
    fn enumeration_counts() {
        let caps = Caps::default();
        let v = space(2, 2);
        let all: Vec<_> = enumerate_subspaces(&v, None, None, &caps).unwrap().collect();
        assert_eq!(all.len(), 5);
        assert!(all[0].is_bottom());
        assert_eq!(all[4], v.full());
        let w = space(2, 3);
        assert_eq!(enumerate_subspaces(&w, None, Some(1), &caps).unwrap().count(), 7);
        let zero: Vec<_> = enumerate_subspaces(&w, None, Some(0), &caps).unwrap().collect();
        assert_eq!(zero, vec![w.bottom()]);
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), 3);
        assert_eq!(gaussian_binomial(3, 1, 2).unwrap(), 7);
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), 1);
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn enumeration_of_a_subspace() {
        let caps = Caps::default();
        let w = space(2, 3);
        let a = sub(&w, &["110", "001"]);
        let subs: Vec<_> = enumerate_subspaces(&w, Some(&a), None, &caps).unwrap().collect();
        assert_eq!(subs.len(), 5);
        assert!(subs.iter().all(|s| s.leq(&a).unwrap()));
    }

    #[test]
    fn enumeration_respects_caps() {
        let caps = Caps { max_vectors: 8, ..Caps::default() };
        assert!(matches!(
            enumerate_subspaces(&space(2, 4), None, None, &caps),
            Err(Error::InfeasibleScale(_))
        ));
        let caps = Caps { max_bases: 2, ..Caps::default() };
        assert!(enumerate_bases(&space(2, 2).full(), &caps).is_err());
    }

    #[test]
    fn basis_examples() {
        let caps = Caps::default();
        let v = space(2, 2);
        let bottom: Vec<_> = enumerate_bases(&v.bottom(), &caps).unwrap().collect();
        assert_eq!(bottom, vec![Vec::<GFVector>::new()]);
        assert_eq!(enumerate_bases(&sub(&v, &["10"]), &caps).unwrap().count(), 1);
        assert_eq!(enumerate_bases(&v.full(), &caps).unwrap().count(), 3);
        // GL(3,2) has 168 elements, so 168 / 3! unordered bases
        assert_eq!(enumerate_bases(&space(2, 3).full(), &caps).unwrap().count(), 28);
        assert_eq!(enumerate_bases(&space(3, 2).full(), &caps).unwrap().count(), 24);
    }

    #[test]
    fn meets_by_subset_uses_full_space_for_empty_set() {
        let v = space(2, 2);
        let fam = SubspaceFamily::new(&v, vec![sub(&v, &["10"]), sub(&v, &["01"])]).unwrap();
        let m = fam.meets_by_subset();
        assert_eq!(m[0], v.full());
        assert_eq!(m[1], sub(&v, &["10"]));
        assert!(m[3].is_bottom());
    }

    #[test]
    fn row_parsing_over_gf4() {
        let v = space(4, 2);
        let x = v.parse_row("1101").unwrap();
        assert_eq!(x.coords(), &[3, 2]);
        assert_eq!(x.to_digits(), "1101");
        assert!(v.parse_row("110").is_err());
    }
}
