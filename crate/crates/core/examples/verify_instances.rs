//! Checks that every admissible unit of order r^n is a group element, for a
//! handful of (q, r, n).

use std::time::Instant;

use help_psl2::solver::{default_characters, verify_conjugacy, ChainEntries, SearchOptions};
use help_psl2::GroupData;

fn main() -> Result<(), help_psl2::Error> {
    let cases = [(7, 1, 2, 2), (3, 2, 2, 2), (17, 1, 2, 3), (19, 1, 3, 2), (11, 1, 5, 1), (13, 1, 7, 1), (31, 1, 2, 4)];
    for (p, f, r, n) in cases {
        let start = Instant::now();
        let g = GroupData::build(p, f)?;
        let chars = default_characters(&g, r, n);
        let rep = verify_conjugacy(&g, r, n, &chars, &SearchOptions::default())?;
        println!(
            "PSL(2,{:>2})  order {:>2}^{}  φ_1..φ_{:<2}  {:?}: {} chains, stable at B={}: {}  ({:.0?})",
            g.q,
            r,
            n,
            chars.len(),
            rep.verdict,
            rep.chains.len(),
            rep.stability.map_or(0, |s| s.0),
            rep.stability.is_some_and(|s| s.1),
            start.elapsed()
        );
        for c in &rep.chains {
            let levels: Vec<String> = ChainEntries::from(&c.chain)
                .0
                .iter()
                .map(|m| {
                    m.iter().filter(|(_, &v)| v != 0).map(|(id, v)| format!("{id}:{v}")).collect::<Vec<_>>().join(",")
                })
                .collect();
            println!("    {}", levels.join(" | "));
        }
    }
    Ok(())
}
