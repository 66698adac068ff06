//! q-matroids as rank tables: rank-1 matroids, unions, induction from a
//! submodular function and the derived notions.
//!
//! ```text
//! cargo run --example q_matroids
//! ```

use qtransversal::{induce, rank_one, union, FieldSpec, Lattice, QMatroid, SubmodularFn, VectorSpaceSpec};

fn main() -> qtransversal::Result<()> {
    let v = VectorSpaceSpec::new(FieldSpec::of_order(2)?, 2)?;
    let l = Lattice::new(&v)?;

    let e1 = v.parse_subspace(&["10"])?;
    let e2 = v.parse_subspace(&["01"])?;
    let m1 = rank_one(&l, &e1)?;
    let m2 = rank_one(&l, &e2)?;
    println!("rank_one(<10>): circuits {:?}", m1.circuits());

    let u = union(&[m1.clone(), m2.clone()])?;
    println!("union of rank_one(<10>) and rank_one(<01>): rank {}, equals free: {}", u.rank_of_space(), u == QMatroid::free(&l));

    // the same union by inducing from the summed rank functions
    let f = SubmodularFn::sum_of(&[m1.clone(), m2])?;
    println!("induced from the sum: same table {}", induce(&f)? == u);

    let m = rank_one(&l, &l.subspaces()[0].clone())?;
    for x in l.subspaces() {
        println!(
            "{:<12} rank {} nullity {} bar-nullity {} closure {:<12} cyclic {}",
            format!("{:?}", x.to_row_strings()),
            m.rank(x)?,
            m.nullity(x)?,
            m.bar_nullity(x)?,
            format!("{:?}", m.closure(x)?.to_row_strings()),
            m.is_cyclic(x)?
        );
    }
    println!("fundamental circuit of V: {:?}", m.fundamental_circuit(&v.full())?.to_row_strings());
    println!("bases: {:?}", m.bases().iter().map(|b| b.to_row_strings()).collect::<Vec<_>>());
    Ok(())
}
