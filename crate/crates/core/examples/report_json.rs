//! Builds a report document, serializes it and reads it back.

use help_psl2::report::{from_json, solver_document, to_json, Results};
use help_psl2::solver::{default_characters, solve, SearchOptions};
use help_psl2::GroupData;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = GroupData::build(19, 1)?;
    let chars = default_characters(&g, 3, 2);
    let rep = solve(&g, 3, 2, &chars, &SearchOptions::default())?;
    let doc = solver_document(&g, "solve", &rep, 0);
    let text = to_json(&doc);
    let back = from_json(&text)?;
    assert_eq!(back, doc);
    assert_eq!(to_json(&back), text);
    if let Results::Solver(s) = &back.results {
        println!("{} chains, verdict {:?}", s.chains.len(), s.verdict);
        let t = &s.chains[0].tables[0];
        println!("first table (φ_{}): {}", t.k, serde_json::to_string(t)?);
    }
    println!("{} bytes of canonical JSON", text.len());
    Ok(())
}
