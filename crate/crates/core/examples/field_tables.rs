//! Arithmetic in GF(9) with the shipped default modulus.

use semiarc::field::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::with_order(9)?;
    println!("{}", f.header());
    let g = f.primitive_element();
    // powers of the primitive element run through every non-zero element
    let powers: Vec<usize> = (0..8).map(|e| f.pow(g, e).value()).collect();
    println!("powers of {}: {powers:?}", g.value());
    for a in f.elements().filter(|a| !a.is_zero()) {
        println!("{} * {} = 1, square: {}, frobenius: {}", a.value(), f.inv(a)?.value(), f.is_square(a), f.frobenius(a).value());
    }
    println!("GF(3) inside: {:?}", f.subfield_elements(1)?.iter().map(|x| x.value()).collect::<Vec<_>>());
    println!("additive direct sums: {}", f.additive_direct_sums().len());
    // a non-default modulus changes the encoding, not the field
    let other = Field::new(3, 2, Some(&[1, 0, 1]))?;
    println!("{}", other.header());
    Ok(())
}
