//! Hall, Rado and the avoidance forms for ordinary set families.
//!
//! ```text
//! cargo run --example classical_transversals
//! ```

use qtransversal::classical::{
    avoid_rado_check, avoiding_assignment, avoiding_transversal_check, co_nullity, find_transversal, hall_check,
    rado_check, ClassicalMatroid, SetFamily,
};
use qtransversal::FieldSpec;

fn main() -> qtransversal::Result<()> {
    let fam = SetFamily::from_labels(&["a", "b"], &[vec!["a", "b"], vec!["b"]])?;
    println!("Hall on ({{a,b}}, {{b}}): {:?}", hall_check(&fam));
    println!("transversal: {:?}", find_transversal(&fam));

    let stuck = SetFamily::from_labels(&["a"], &[vec!["a"], vec!["a"]])?;
    println!("Hall on ({{a}}, {{a}}): {:?}", hall_check(&stuck));

    // columns 10, 01, 11 over GF(2)
    let ground: Vec<String> = ["s1", "s2", "s3"].map(String::from).to_vec();
    let m = ClassicalMatroid::linear(ground.clone(), FieldSpec::of_order(2)?, vec![vec![1, 0], vec![0, 1], vec![1, 1]])?;
    let fam = SetFamily::from_labels(&["s1", "s2", "s3"], &[vec!["s1", "s2"], vec!["s3"]])?;
    println!("Rado: {:?}", rado_check(&m, &fam)?);
    println!("co-nullity of {{s1}}: {}", co_nullity(&m, fam.mask_of(&["s1"])?)?);

    // avoidance: X = ({a}, {a,b}), T = {b, c}
    let xs = SetFamily::from_labels(&["a", "b", "c"], &[vec!["a"], vec!["a", "b"]])?;
    let t = xs.mask_of(&["b", "c"])?;
    println!("T avoids: {:?}, assignment {:?}", avoiding_transversal_check(t, &xs).holds, avoiding_assignment(t, &xs));
    println!("avoid-Rado with the free matroid: {:?}", avoid_rado_check(&ClassicalMatroid::free(xs.ground().to_vec()), &xs)?);
    Ok(())
}
