//! Exact arithmetic on sums of roots of unity.

use help_psl2::CycloSum;
use num_bigint::BigInt;

fn main() -> Result<(), help_psl2::Error> {
    // 1 + ζ_8 + ζ_8^7 = 1 + √2
    let x = CycloSum::make(8, [(0, 1), (1, 1), (7, 1)])?;
    println!("x          = {x}");
    println!("x ≈          {:.6}", x.numeric_embed().re);
    println!("conj(x)    = {}", x.conjugate());
    println!("Tr(x)      = {}", x.trace_to_q());

    // Multiplying by a root of unity and scaling keep everything exact.
    let y = x.mul_by_root(2).scale(&BigInt::from(3));
    println!("3ζ_8^2·x   = {y}");
    println!("Tr(3ζ_8^2·x) = {}", y.trace_to_q());

    // The same number written over a larger conductor.
    let z = x.rebase(24)?;
    println!("over ζ_24  = {z}");
    println!("Tr over Q(ζ_24) = {}  (= [Q(ζ_24):Q(ζ_8)] · Tr(x))", z.trace_to_q());

    // -1 = ζ_4^2, and a value on an involution descends to conductor 2.
    let inv = CycloSum::make(4, [(0, 1), (2, 2)])?;
    println!("{inv} = {} ≈ {:.1}", inv.descend(2)?, inv.numeric_embed().re);
    Ok(())
}
