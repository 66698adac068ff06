//! Arithmetic in GF(p^e): default moduli, digit strings and the checked
//! element API.
//!
//! ```text
//! cargo run --example field_arithmetic
//! ```

use qtransversal::{ArithOp, FieldSpec};

fn main() -> qtransversal::Result<()> {
    for q in [2, 3, 4, 8, 9, 16] {
        let f = FieldSpec::of_order(q)?;
        println!("GF({q}): p = {}, e = {}, modulus digits {}", f.characteristic(), f.degree(), f.modulus_digits());
    }

    // GF(4) = GF(2)[x]/(x^2 + x + 1); elements are little-endian digit strings
    let f = FieldSpec::of_order(4)?;
    let alpha = f.generator();
    let sq = alpha.mul(&alpha)?;
    println!("alpha = {alpha}, alpha^2 = {sq}, alpha^3 = {}", alpha.pow(3));
    println!("alpha^2 == alpha + 1: {}", sq == alpha.add(&f.one())?);

    let gf3 = FieldSpec::of_order(3)?;
    let two = gf3.element(&[2])?;
    for op in [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div] {
        println!("GF(3): 2 {op:?} 2 = {}", two.arith(op, &two)?);
    }
    match two.div(&gf3.zero()) {
        Err(e) => println!("2 / 0 -> {e}"),
        Ok(_) => unreachable!(),
    }

    // a custom modulus: x^3 + x^2 + 1 over GF(2)
    let g = FieldSpec::new(2, 3, Some(&[1, 0, 1, 1]))?;
    let x = g.generator();
    println!("GF(8) with modulus {}: x^7 = {}", g.modulus_digits(), x.pow(7));
    Ok(())
}
