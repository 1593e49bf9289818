//! Brauer characters φ_k on the p-regular classes, with the eigenvalue
//! multiset each value comes from.
//!
//! `cargo run --example brauer_table -- 7 1 3`

use help_psl2::GroupData;

/// Drops the sign of values that print as zero.
fn clean(x: f64) -> f64 {
    if x.abs() < 5e-5 {
        0.0
    } else {
        x
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let f: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let kmax: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let g = GroupData::build(p, f)?;
    for k in 0..=kmax {
        let phi = g.brauer_char(k);
        println!("φ_{k} (degree {})", phi.degree());
        for c in g.classes().iter().filter(|c| c.is_p_regular()) {
            let v = phi.value_at_order(c)?;
            let eig = g.eigenvalue_multiset(k, c.id)?;
            let eig: Vec<String> = eig.iter().map(|(e, m)| format!("{m}×ζ^{e}")).collect();
            println!(
                "  {:<14} {:>24} ≈ {:>8.4}   eigenvalues {}",
                c.family.to_string(),
                v.to_string(),
                clean(v.numeric_embed().re),
                eig.join(" ")
            );
        }
    }
    Ok(())
}
