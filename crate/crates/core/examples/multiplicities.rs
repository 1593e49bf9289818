//! Eigenvalue multiplicities of a hypothetical unit from its partial
//! augmentations, by both formulas.
//!
//! Takes the involution-profile chain of order 4 in Z PSL(2,7): `u` has
//! partial augmentation 1 on the involution class and `u^2` is an
//! involution. Every multiplicity is a non-negative integer, yet the
//! mod-2 congruence between `u` and `u^2` fails, so no such unit exists.

use std::collections::BTreeMap;

use help_psl2::solver::{admissibility_check, chain_tables, general_table, wagner_check};
use help_psl2::{ClassFamily, GroupData, PaChain, PaVector};

fn main() -> Result<(), help_psl2::Error> {
    let g = GroupData::build(7, 1)?;
    let involution = g.find(ClassFamily::Nonsplit(2)).expect("PSL(2,7) has one class of involutions");
    let four = g.find(ClassFamily::Nonsplit(1)).expect("and one of elements of order 4");

    let u = PaVector::new(&g, 4, &BTreeMap::from([(involution, 1), (four, 0)]))?;
    let u2 = PaVector::of_class(&g, 2, involution)?;
    let chain = PaChain::new(2, vec![u, u2])?;

    for k in 1..=3 {
        let recursive = chain_tables(&g, k, &chain)?;
        let general = general_table(&g, k, &chain.profile())?;
        assert_eq!(recursive[0], general);
        let vals: Vec<String> = general.values.iter().map(ToString::to_string).collect();
        println!("φ_{k}: μ(ζ_4^e, u) for e = 0..3: [{}]", vals.join(", "));
    }
    let (ok, _) = admissibility_check(&g, &[1, 2, 3], &chain)?;
    println!("multiplicities admissible: {ok}");
    println!("mod-2 congruences hold:    {}", wagner_check(&g, &chain)?);

    let genuine = PaChain::of_class(&g, 2, four)?;
    println!("for comparison, a genuine element of order 4: congruences hold = {}", wagner_check(&g, &genuine)?);
    Ok(())
}
