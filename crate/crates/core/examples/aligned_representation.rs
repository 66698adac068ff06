//! Representing the q-matroid of a family of coordinate subspaces by a matrix
//! over an extension field.
//!
//! ```text
//! cargo run --example aligned_representation
//! ```

use qtransversal::representation::{
    build_aligned_representation, search_representation, smallest_aligned_representation, verify_representation,
    AlignedFamily,
};
use qtransversal::transversal::presentation_matroid;
use qtransversal::{FieldSpec, Lattice, SubspaceFamily, VectorSpaceSpec};

fn main() -> qtransversal::Result<()> {
    let v = VectorSpaceSpec::new(FieldSpec::of_order(2)?, 3)?;
    let l = Lattice::new(&v)?;
    let fam = AlignedFamily::new(&v, vec![vec![1], vec![2, 3]])?;
    let target = presentation_matroid(&l, &fam.to_family())?;

    let rep = build_aligned_representation(&fam)?;
    println!("construction over GF(2^{}):", rep.ext().degree());
    for row in rep.matrix() {
        println!("  {:?}", row.iter().map(|&c| rep.ext().code_to_digits(c)).collect::<Vec<_>>());
    }
    println!("verifies: {}", verify_representation(&rep, &target)?.agrees);

    let small = smallest_aligned_representation(&fam, &l)?;
    println!("smallest degree that works with the same pattern: {}", small.ext().degree());

    // a family that is not aligned: <11> in GF(2)^2
    let v2 = VectorSpaceSpec::new(FieldSpec::of_order(2)?, 2)?;
    let l2 = Lattice::new(&v2)?;
    let diag = SubspaceFamily::new(&v2, vec![v2.parse_subspace(&["11"])?])?;
    let m = presentation_matroid(&l2, &diag)?;
    match search_representation(&m, m.rank_of_space(), 2, 64, 1)? {
        Some(rep) => println!(
            "search found G = {:?} over GF(2^{})",
            rep.matrix()[0].iter().map(|&c| rep.ext().code_to_digits(c)).collect::<Vec<_>>(),
            rep.ext().degree()
        ),
        None => println!("search found nothing (inconclusive)"),
    }
    Ok(())
}
