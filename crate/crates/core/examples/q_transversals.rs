//! Deciding q-transversals three ways and reading the certificates.
//!
//! ```text
//! cargo run --example q_transversals
//! ```

use qtransversal::io::certificate_to_json;
use qtransversal::transversal::{
    is_partial_q_transversal, partial_equiv_check, presentation_matroid, q_hall, q_transversal_by_definition,
};
use qtransversal::{Caps, FieldSpec, Lattice, SubspaceFamily, VectorSpaceSpec};

fn main() -> qtransversal::Result<()> {
    let v = VectorSpaceSpec::new(FieldSpec::of_order(2)?, 2)?;
    let l = Lattice::new(&v)?;
    let fam = SubspaceFamily::new(&v, vec![v.parse_subspace(&["10"])?, v.parse_subspace(&["11"])?])?;

    println!("q-Hall: {:?}", q_hall(&fam));
    let m = presentation_matroid(&l, &fam)?;
    for t in l.subspaces() {
        let fast = is_partial_q_transversal(t, &fam)?;
        let slow = q_transversal_by_definition(t, &fam, &Caps::default())?;
        let sub = partial_equiv_check(t, &fam)?;
        println!(
            "T = {:<12} independent {:<5} fast {:<5} by definition {:<5} subsystem {:?}",
            format!("{:?}", t.to_row_strings()),
            m.is_independent(t)?,
            fast.verdict,
            slow.verdict,
            sub.subsystem
        );
    }

    let t = v.full();
    let cert = q_transversal_by_definition(&t, &fam, &Caps::default())?;
    println!("certificate for V: {}", serde_json::to_string_pretty(&certificate_to_json(&cert)).unwrap());
    println!("recheck: {}", cert.recheck(&t, &fam)?);
    Ok(())
}
