//! Representable q-matroids: the rank of X is the rank of G·Xᵀ for a matrix G
//! over an extension field of the base field.
//!
//! Only prime base fields are supported, so GF(p) embeds in GF(p^d) as the
//! constant polynomials and base element codes are valid extension codes.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Code, FieldSpec};
use crate::lattice::Lattice;
use crate::linalg;
use crate::qmatroid::{Provenance, QMatroid, RankOracle};
use crate::subspace::{Subspace, SubspaceFamily, VectorSpaceSpec};
use crate::transversal::presentation_matroid;

/// A matrix G over `ext` acting on the base space GF(p)^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRepresentation {
    base: VectorSpaceSpec,
    ext: FieldSpec,
    matrix: Vec<Vec<Code>>,
}

impl QRepresentation {
    pub fn new(base: &VectorSpaceSpec, ext: FieldSpec, matrix: Vec<Vec<Code>>) -> Result<Self> {
        let bf = base.field();
        if !bf.is_prime_field() {
            return Err(Error::UnsupportedBaseField { p: bf.characteristic(), e: bf.degree() });
        }
        if ext.characteristic() != bf.characteristic() {
            return Err(Error::SpecMismatch);
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != base.dim()) {
            return Err(Error::DimensionMismatch { expected: base.dim(), found: row.len() });
        }
        if matrix.iter().flatten().any(|&c| c as u64 >= ext.order()) {
            return Err(Error::OutOfRange("matrix entry outside the extension field".into()));
        }
        Ok(QRepresentation { base: base.clone(), ext, matrix })
    }

    pub fn base(&self) -> &VectorSpaceSpec {
        &self.base
    }

    pub fn ext(&self) -> &FieldSpec {
        &self.ext
    }

    pub fn matrix(&self) -> &[Vec<Code>] {
        &self.matrix
    }

    /// Rank of G·Sᵀ where the rows of `s` span the subspace (any basis).
    pub fn rank_with_basis(&self, s: &[Vec<Code>]) -> usize {
        if self.matrix.is_empty() || s.is_empty() {
            return 0;
        }
        let f = &self.ext;
        let h: Vec<Vec<Code>> = self
            .matrix
            .iter()
            .map(|g| {
                s.iter()
                    .map(|x| g.iter().zip(x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
                    .collect()
            })
            .collect();
        linalg::rank(f, &h)
    }

    pub fn represented_rank(&self, x: &Subspace) -> Result<usize> {
        if x.space() != &self.base {
            return Err(Error::SpecMismatch);
        }
        Ok(self.rank_with_basis(x.rows()))
    }
}

impl RankOracle for QRepresentation {
    fn rank_of(&self, a: &Subspace) -> Result<usize> {
        self.represented_rank(a)
    }
}

/// The q-matroid represented by G, as a full rank table.
pub fn represent(rep: &QRepresentation, lattice: &Arc<Lattice>) -> Result<QMatroid> {
    if lattice.space() != &rep.base {
        return Err(Error::SpecMismatch);
    }
    let ranks = lattice.subspaces().iter().map(|x| rep.rank_with_basis(x.rows()) as u32).collect();
    QMatroid::from_table(lattice, ranks, Provenance::Represented)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationCheck {
    pub agrees: bool,
    /// First subspace in enumeration order where the ranks differ, with the
    /// matroid's rank and the represented rank.
    pub first_mismatch: Option<(Subspace, usize, usize)>,
}

/// Compares represented ranks with `m` on every subspace.
pub fn verify_representation(rep: &QRepresentation, m: &QMatroid) -> Result<RepresentationCheck> {
    let l = m.lattice();
    if l.space() != &rep.base {
        return Err(Error::SpecMismatch);
    }
    for (i, x) in l.subspaces().iter().enumerate() {
        let got = rep.rank_with_basis(x.rows());
        if got != m.rank_at(i) {
            return Ok(RepresentationCheck {
                agrees: false,
                first_mismatch: Some((x.clone(), m.rank_at(i), got)),
            });
        }
    }
    Ok(RepresentationCheck { agrees: true, first_mismatch: None })
}

/// A family of coordinate subspaces X_i = ⟨b_j : j ∈ L_i⟩ of GF(q)^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedFamily {
    space: VectorSpaceSpec,
    index_sets: Vec<Vec<usize>>,
}

impl AlignedFamily {
    /// `index_sets` are 1-based; they are sorted and deduplicated.
    pub fn new(space: &VectorSpaceSpec, index_sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = index_sets;
        for s in sets.iter_mut() {
            if let Some(&j) = s.iter().find(|&&j| j == 0 || j > space.dim()) {
                return Err(Error::OutOfRange(format!("basis index {j} outside 1..={}", space.dim())));
            }
            s.sort_unstable();
            s.dedup();
        }
        Ok(AlignedFamily { space: space.clone(), index_sets: sets })
    }

    /// Recognizes a family of coordinate subspaces: in RREF these have unit rows.
    pub fn from_family(fam: &SubspaceFamily) -> Option<Self> {
        let sets = fam
            .members()
            .iter()
            .map(|x| {
                x.rows()
                    .iter()
                    .map(|r| {
                        let nz: Vec<usize> = (0..r.len()).filter(|&c| r[c] != 0).collect();
                        (nz.len() == 1).then(|| nz[0] + 1)
                    })
                    .collect::<Option<Vec<usize>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(AlignedFamily { space: fam.space().clone(), index_sets: sets })
    }

    pub fn space(&self) -> &VectorSpaceSpec {
        &self.space
    }

    pub fn index_sets(&self) -> &[Vec<usize>] {
        &self.index_sets
    }

    pub fn to_family(&self) -> SubspaceFamily {
        let members = self
            .index_sets
            .iter()
            .map(|s| self.space.coordinate_subspace(s).expect("indices validated"))
            .collect();
        SubspaceFamily::new(&self.space, members).expect("same space")
    }

    /// n^k, the extension degree the construction guarantees.
    pub fn guaranteed_degree(&self) -> u64 {
        (self.space.dim() as u64).saturating_pow(self.index_sets.len() as u32)
    }
}

fn extension(base: &FieldSpec, degree: u64) -> Result<FieldSpec> {
    let d = u32::try_from(degree).map_err(|_| Error::ExtensionTooLarge(degree))?;
    match FieldSpec::new(base.characteristic(), d, None) {
        Err(Error::FieldTooLarge(..)) => Err(Error::ExtensionTooLarge(degree)),
        other => other,
    }
}

/// Element of degree d over GF(p) used in the construction: x for d ≥ 2, 1 for d = 1.
fn construction_element(ext: &FieldSpec) -> Code {
    if ext.degree() == 1 {
        1
    } else {
        ext.generator().code()
    }
}

/// G with G_ij = 0 for j ∈ L_i and α^(j·n^(i-1)) otherwise (i, j 1-based).
pub fn aligned_matrix(fam: &AlignedFamily, ext: &FieldSpec, alpha: Code) -> Result<QRepresentation> {
    let n = fam.space.dim() as u64;
    let matrix = fam
        .index_sets
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let scale = n.pow(i as u32);
            (1..=n as usize)
                .map(|j| if l.contains(&j) { 0 } else { ext.pow(alpha, j as u64 * scale) })
                .collect()
        })
        .collect();
    QRepresentation::new(&fam.space, ext.clone(), matrix)
}

/// The aligned construction over GF(q^(n^k)).
pub fn build_aligned_representation(fam: &AlignedFamily) -> Result<QRepresentation> {
    let base = fam.space.field();
    if !base.is_prime_field() {
        return Err(Error::UnsupportedBaseField { p: base.characteristic(), e: base.degree() });
    }
    let ext = extension(base, fam.guaranteed_degree())?;
    aligned_matrix(fam, &ext, construction_element(&ext))
}

/// Tries the aligned construction over GF(q^d) for d = 1, 2, ... and returns
/// the first one that verifies against the presentation matroid; degree n^k
/// always works.
pub fn smallest_aligned_representation(fam: &AlignedFamily, lattice: &Arc<Lattice>) -> Result<QRepresentation> {
    let target = presentation_matroid(lattice, &fam.to_family())?;
    let top = fam.guaranteed_degree();
    for d in 1..top {
        let ext = extension(fam.space.field(), d)?;
        let rep = aligned_matrix(fam, &ext, construction_element(&ext))?;
        if verify_representation(&rep, &target)?.agrees {
            return Ok(rep);
        }
    }
    let rep = build_aligned_representation(fam)?;
    if !verify_representation(&rep, &target)?.agrees {
        return Err(Error::TheoremViolation(format!(
            "aligned construction over degree {top} does not represent {:?}",
            fam.index_sets
        )));
    }
    Ok(rep)
}

/// Seeded random search for a `rows × n` matrix over GF(q^d), d = 1..=max_degree,
/// with `tries` attempts per degree. `None` means nothing was found, not that
/// no representation exists.
pub fn search_representation(
    m: &QMatroid,
    rows: usize,
    max_degree: u32,
    tries: usize,
    seed: u64,
) -> Result<Option<QRepresentation>> {
    let base = m.lattice().space().clone();
    if m.rank_of_space() == 0 {
        let rep = QRepresentation::new(&base, base.field().clone(), vec![vec![0; base.dim()]; rows.max(1)])?;
        return Ok(Some(rep));
    }
    for d in 1..=max_degree {
        let ext = extension(base.field(), d as u64)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        for _ in 0..tries {
            let matrix = (0..rows)
                .map(|_| (0..base.dim()).map(|_| rng.gen_range(0..ext.order()) as Code).collect())
                .collect();
            let rep = QRepresentation::new(&base, ext.clone(), matrix)?;
            if verify_representation(&rep, m)?.agrees {
                return Ok(Some(rep));
            }
        }
    }
    Ok(None)
}
