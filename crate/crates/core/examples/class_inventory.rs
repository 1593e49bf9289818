//! Conjugacy classes of PSL(2,q) and their power maps.
//!
//! `cargo run --example class_inventory -- 17 1`

use help_psl2::GroupData;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(17);
    let f: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let g = GroupData::build(p, f)?;
    println!("PSL(2,{}): d = {}, o_a = {}, o_b = {}", g.q, g.d, g.o_a, g.o_b);
    for c in g.classes() {
        let powers = [2, 3, 5]
            .iter()
            .map(|&e| Ok(format!("^{e}→{}", g.power_class(c.id, e)?)))
            .collect::<Result<Vec<_>, help_psl2::Error>>()?;
        println!("{:>4}  {:<14} order {:>3}  {}", c.id.to_string(), c.family.to_string(), c.order, powers.join(" "));
    }
    Ok(())
}
