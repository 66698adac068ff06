//! Canonical subspaces, enumeration and the materialized lattice of GF(2)^3.
//!
//! ```text
//! cargo run --example subspace_lattice
//! ```

use qtransversal::subspace::{enumerate_bases, enumerate_subspaces, gaussian_binomial};
use qtransversal::{Caps, FieldSpec, Lattice, VectorSpaceSpec};

fn main() -> qtransversal::Result<()> {
    let v = VectorSpaceSpec::new(FieldSpec::of_order(2)?, 3)?;
    let caps = Caps::default();

    for k in 0..=3 {
        let count = enumerate_subspaces(&v, None, Some(k), &caps)?.count();
        println!("dimension {k}: {count} subspaces (Gaussian binomial {})", gaussian_binomial(3, k as u32, 2)?);
    }

    let a = v.parse_subspace(&["110", "011"])?;
    let b = v.parse_subspace(&["100", "001"])?;
    println!("A = {:?}, B = {:?}", a.to_row_strings(), b.to_row_strings());
    println!("A meet B = {:?}", a.meet(&b)?.to_row_strings());
    println!("A join B = {:?}", a.join(&b)?.to_row_strings());
    println!("bases of A: {}", enumerate_bases(&a, &caps)?.count());

    let l = Lattice::new(&v)?;
    let ai = l.index_of(&a)?;
    println!("lattice of {} subspaces; {} lie below A", l.len(), l.below(ai).len());
    for i in l.lines() {
        println!("  line {:?} <= A: {}", l.get(i).to_row_strings(), l.leq(i, ai));
    }
    Ok(())
}
