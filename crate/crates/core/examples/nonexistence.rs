//! Orders that do not occur in G do not occur among the units either:
//! PSL(2,7) has no element of order 8, and no chain of order 8 survives.
//! Also shows what the bare multiplicities admit without the congruences.

use help_psl2::solver::{default_characters, solve, Constraints, SearchOptions};
use help_psl2::GroupData;

fn main() -> Result<(), help_psl2::Error> {
    let g = GroupData::build(7, 1)?;
    let chars = default_characters(&g, 2, 3);
    let rep = solve(&g, 2, 3, &chars, &SearchOptions::default())?;
    println!(
        "PSL(2,7), order 8: {} group classes, {} admissible chains, verdict {:?}",
        rep.group_classes_of_order,
        rep.chains.len(),
        rep.verdict
    );
    println!("search statistics: {:?}", rep.stats);

    for (p, f) in [(7, 1), (3, 2)] {
        let g = GroupData::build(p, f)?;
        let chars = default_characters(&g, 2, 2);
        for constraints in [Constraints::help_only(), Constraints::default()] {
            let opts = SearchOptions { constraints, check_stability: false, ..Default::default() };
            let rep = solve(&g, 2, 2, &chars, &opts)?;
            println!(
                "PSL(2,{}), order 4, congruences {}: {} chains ({} trivial)",
                g.q,
                if constraints.wagner { "on " } else { "off" },
                rep.chains.len(),
                rep.trivial_count()
            );
        }
    }
    Ok(())
}
