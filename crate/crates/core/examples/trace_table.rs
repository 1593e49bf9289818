//! Galois traces of roots of unity: prints `Tr_{Q(ζ_t)/Q}(ζ_t^e)` for small
//! conductors, which is all the multiplicity formula ever needs.
//!
//! `cargo run --example trace_table -- 12`

use help_psl2::numtheory::{factorize, mobius, totient, trace_cyclo};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(12);
    for t in 1..=max {
        let f = factorize(t)?;
        let row = (0..t).map(|e| trace_cyclo(t, e as i64).map(|v| format!("{v:>3}"))).collect::<Result<Vec<_>, _>>()?;
        println!(
            "t = {t:>3}  φ = {:>3}  μ = {:>2}  squarefree = {:<5}  {}",
            totient(t)?,
            mobius(t)?,
            f.is_squarefree(),
            row.join("")
        );
    }
    Ok(())
}
