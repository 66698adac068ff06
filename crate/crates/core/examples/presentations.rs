//! Presentations of a q-transversal matroid: reduction to rank-many members
//! and minimality.
//!
//! ```text
//! cargo run --example presentations
//! ```

use qtransversal::transversal::{is_minimal_presentation, presentation_matroid, reduce_presentation};
use qtransversal::{FieldSpec, Lattice, SubspaceFamily, VectorSpaceSpec};

fn main() -> qtransversal::Result<()> {
    let v = VectorSpaceSpec::new(FieldSpec::of_order(2)?, 3)?;
    let l = Lattice::new(&v)?;
    let members = [vec!["100", "010"], vec!["100", "011"], vec!["100", "010"], vec!["100"]];
    let fam = SubspaceFamily::new(&v, members.iter().map(|m| v.parse_subspace(m)).collect::<Result<_, _>>()?)?;
    let m = presentation_matroid(&l, &fam)?;
    println!("family of {} members presents a q-matroid of rank {}", fam.len(), m.rank_of_space());

    let reduced = reduce_presentation(&l, &fam)?;
    println!("reduced: {:?}", reduced.members().iter().map(|x| x.to_row_strings()).collect::<Vec<_>>());
    println!("same q-matroid: {}", presentation_matroid(&l, &reduced)? == m);

    let mut current = reduced;
    loop {
        let verdict = is_minimal_presentation(&l, &current)?;
        if verdict.minimal {
            println!("minimal: {:?}", current.members().iter().map(|x| x.to_row_strings()).collect::<Vec<_>>());
            break;
        }
        let i = verdict.index.unwrap();
        let s = verdict.shrunken.unwrap();
        println!("member {i} is not cyclic; shrink it to {:?}", s.to_row_strings());
        current = current.with_member(i - 1, s)?;
    }
    for x in current.members() {
        println!("  {:?} is a flat: {}", x.to_row_strings(), m.is_flat(x)?);
    }
    Ok(())
}
