//! A materialized subspace lattice: every subspace of V with an index, its
//! down-set and the order relation, so rank tables can be plain vectors.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::subspace::{enumerate_subspaces, Caps, Subspace, VectorSpaceSpec};

pub struct Lattice {
    space: VectorSpaceSpec,
    subspaces: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    /// `below[a]` lists every `b` with `b ≤ a`, in enumeration order.
    below: Vec<Vec<usize>>,
    leq_bits: Vec<u64>,
    words: usize,
    meet_table: OnceLock<Vec<u32>>,
    join_table: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice({:?}, {} subspaces)", self.space, self.subspaces.len())
    }
}

impl Lattice {
    pub fn new(space: &VectorSpaceSpec) -> Result<Arc<Lattice>> {
        Self::with_caps(space, &Caps::default())
    }

    pub fn with_caps(space: &VectorSpaceSpec, caps: &Caps) -> Result<Arc<Lattice>> {
        let subspaces: Vec<Subspace> = enumerate_subspaces(space, None, None, caps)?.collect();
        let n = subspaces.len();
        if n > caps.max_lattice {
            return Err(Error::InfeasibleScale(format!(
                "lattice of {n} subspaces exceeds the cap {}",
                caps.max_lattice
            )));
        }
        let index: HashMap<Subspace, usize> =
            subspaces.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let words = n.div_ceil(64);
        let mut leq_bits = vec![0u64; n * words];
        let mut below = vec![Vec::new(); n];
        for (a, sa) in subspaces.iter().enumerate() {
            for (b, sb) in subspaces.iter().enumerate() {
                if sb.dim() <= sa.dim() && sb.leq_unchecked(sa) {
                    below[a].push(b);
                    leq_bits[b * words + a / 64] |= 1 << (a % 64);
                }
            }
        }
        Ok(Arc::new(Lattice {
            space: space.clone(),
            subspaces,
            index,
            below,
            leq_bits,
            words,
            meet_table: OnceLock::new(),
            join_table: OnceLock::new(),
        }))
    }

    pub fn space(&self) -> &VectorSpaceSpec {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.subspaces[i].dim()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subspaces.len() - 1
    }

    pub fn index_of(&self, s: &Subspace) -> Result<usize> {
        if s.space() != &self.space {
            return Err(Error::SpecMismatch);
        }
        self.index.get(s).copied().ok_or(Error::SpecMismatch)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq_bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Indices of all subspaces `≤ a`.
    pub fn below(&self, a: usize) -> &[usize] {
        &self.below[a]
    }

    /// Indices of all subspaces `≥ a`.
    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&b| self.leq(a, b))
    }

    /// Indices of the 1-dimensional subspaces.
    pub fn lines(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.dim(i) == 1)
    }

    fn table<'a>(&'a self, cell: &'a OnceLock<Vec<u32>>, meet: bool) -> &'a [u32] {
        cell.get_or_init(|| {
            let n = self.len();
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in a..n {
                    let (sa, sb) = (&self.subspaces[a], &self.subspaces[b]);
                    let s = if meet { sa.meet_unchecked(sb) } else { sa.join_unchecked(sb) };
                    let idx = self.index[&s] as u32;
                    t[a * n + b] = idx;
                    t[b * n + a] = idx;
                }
            }
            t
        })
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.table(&self.meet_table, true)[a * self.len() + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.table(&self.join_table, false)[a * self.len() + b] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn gf2_cubed_lattice() {
        let v = VectorSpaceSpec::new(FieldSpec::of_order(2).unwrap(), 3).unwrap();
        let l = Lattice::new(&v).unwrap();
        assert_eq!(l.len(), 16);
        assert_eq!(l.below(l.top()).len(), 16);
        assert_eq!(l.below(l.bottom()), &[0]);
        assert_eq!(l.lines().count(), 7);
        for a in 0..l.len() {
            for b in 0..l.len() {
                let m = l.meet(a, b);
                let j = l.join(a, b);
                assert!(l.leq(m, a) && l.leq(m, b) && l.leq(a, j) && l.leq(b, j));
                assert_eq!(l.dim(a) + l.dim(b), l.dim(m) + l.dim(j));
            }
        }
    }

    #[test]
    fn lattice_cap() {
        let v = VectorSpaceSpec::new(FieldSpec::of_order(2).unwrap(), 4).unwrap();
        let caps = Caps { max_lattice: 10, ..Caps::default() };
        assert!(matches!(Lattice::with_caps(&v, &caps), Err(Error::InfeasibleScale(_))));
    }
}
