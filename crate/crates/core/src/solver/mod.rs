//! The HeLP constraint engine for units of order `r^n` with `r != p`.
//!
//! A hypothetical unit `u` is described by the partial augmentations of
//! `u, u^r, ..., u^{r^{n-1}}` (a [`PaChain`]). It survives when every
//! eigenvalue multiplicity of `Θ_k(u^{r^j})` computed from those partial
//! augmentations is a non-negative integer, and (by default) when the
//! partial augmentations of successive powers satisfy the mod-`r`
//! congruences of [`wagner_check`].
//!
//! [`enumerate_pa`] finds every surviving chain whose entries lie in
//! `[-B, B]`; [`verify_conjugacy`] wraps it into a [`SolverReport`] that says
//! whether every survivor is a group element.

mod chain;
mod multiplicity;
mod search;

use serde::{Deserialize, Serialize};

pub use chain::{is_trivial_chain, support, ChainEntries, PaChain, PaVector, PowerProfile};
pub use multiplicity::{
    admissibility_check, chain_tables, char_value_of_unit, format_rat, general_table, multiplicity_general,
    multiplicity_primepower, parse_rat, wagner_check, MultiplicityTable,
};
pub use search::SearchStats;

use crate::numtheory::is_prime;
use crate::psl2::GroupData;
use crate::{Error, Result};

/// Largest unit order the solver accepts.
pub const MAX_UNIT_ORDER: u64 = 1 << 16;

/// Which constraints, besides the multiplicities, a chain must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    /// Mod-`r` congruences between partial augmentations of `u` and its
    /// `r`-power images.
    pub wagner: bool,
}

impl Constraints {
    /// Only the Brauer-character multiplicities.
    pub fn help_only() -> Self {
        Constraints { wagner: false }
    }
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints { wagner: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Box bound `B`: every partial augmentation lies in `[-B, B]`.
    pub bound: i64,
    pub constraints: Constraints,
    /// Re-run with `B + 2` and record whether the chain list changes.
    pub check_stability: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { bound: 5, constraints: Constraints::default(), check_stability: true }
    }
}

impl SearchOptions {
    pub fn with_bound(bound: i64) -> Self {
        SearchOptions { bound, ..Default::default() }
    }
}

/// `φ_1, ..., φ_K` with `K = min(r^{n-1} + 1, max(o_a, o_b) - 1)`. This
/// covers every `Θ_{r^j}`, `j < n`, used by the induction over powers.
pub fn default_characters(g: &GroupData, r: u64, n: u32) -> Vec<u32> {
    let by_power = r.saturating_pow(n.saturating_sub(1)).saturating_add(1);
    let by_group = g.o_a.max(g.o_b) - 1;
    let k = by_power.min(by_group).max(1);
    (1..=k as u32).collect()
}

fn validate(g: &GroupData, r: u64, n: u32, chars: &[u32], bound: i64) -> Result<()> {
    if !is_prime(r) {
        return Err(Error::RNotPrime(r));
    }
    if r == g.p {
        return Err(Error::RIsCharacteristic(r));
    }
    if n == 0 || r.checked_pow(n).is_none_or(|o| o > MAX_UNIT_ORDER) {
        return Err(Error::BadExponent(n));
    }
    if bound < 1 {
        return Err(Error::BadBound(bound));
    }
    if chars.is_empty() {
        return Err(Error::NoCharacters);
    }
    Ok(())
}

/// Every chain for a unit of order `r^n` passing the active constraints,
/// with partial augmentations in `[-bound, bound]`, in lexicographic order.
pub fn enumerate_pa(
    g: &GroupData,
    r: u64,
    n: u32,
    chars: &[u32],
    bound: i64,
    constraints: Constraints,
) -> Result<Vec<PaChain>> {
    validate(g, r, n, chars, bound)?;
    let (found, _) = search::enumerate(g, r, n, chars, bound, constraints)?;
    Ok(found.into_iter().map(|f| f.chain).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every admissible chain is the chain of a group element.
    Verified,
    /// No chain survives; no unit of this order exists.
    NoUnitsOfThisOrder,
    /// Some admissible chain is not the chain of a group element.
    NontrivialChainFound,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        !matches!(self, Verdict::NontrivialChainFound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    pub chain: PaChain,
    pub trivial: bool,
    /// Tables of `u`, one per character in [`SolverReport::characters`].
    pub tables: Vec<MultiplicityTable>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverReport {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub d: u64,
    pub r: u64,
    pub n: u32,
    pub characters: Vec<u32>,
    pub bound: i64,
    pub constraints: Constraints,
    /// Number of classes of `G` of element order `r^n`.
    pub group_classes_of_order: usize,
    pub chains: Vec<ChainResult>,
    pub verdict: Verdict,
    /// `(B + 2, identical chain list?)` when a stability run was requested.
    pub stability: Option<(i64, bool)>,
    pub stats: SearchStats,
}

impl SolverReport {
    pub fn trivial_count(&self) -> usize {
        self.chains.iter().filter(|c| c.trivial).count()
    }
}

/// Runs the search and classifies the survivors.
pub fn solve(g: &GroupData, r: u64, n: u32, chars: &[u32], opts: &SearchOptions) -> Result<SolverReport> {
    validate(g, r, n, chars, opts.bound)?;
    let (found, stats) = search::enumerate(g, r, n, chars, opts.bound, opts.constraints)?;
    let chains: Vec<ChainResult> = found
        .into_iter()
        .map(|f| ChainResult { trivial: is_trivial_chain(g, &f.chain), chain: f.chain, tables: f.tables })
        .collect();
    let verdict = if chains.is_empty() {
        Verdict::NoUnitsOfThisOrder
    } else if chains.iter().all(|c| c.trivial) {
        Verdict::Verified
    } else {
        Verdict::NontrivialChainFound
    };
    let stability = if opts.check_stability {
        let wider = opts.bound + 2;
        let (again, _) = search::enumerate(g, r, n, chars, wider, opts.constraints)?;
        let same = again.len() == chains.len() && again.iter().zip(&chains).all(|(a, b)| a.chain == b.chain);
        Some((wider, same))
    } else {
        None
    };
    Ok(SolverReport {
        p: g.p,
        f: g.f,
        q: g.q,
        d: g.d,
        r,
        n,
        characters: chars.to_vec(),
        bound: opts.bound,
        constraints: opts.constraints,
        group_classes_of_order: g.classes_of_order(r.pow(n)).len(),
        chains,
        verdict,
        stability,
        stats,
    })
}

/// Checks that every torsion unit of order `r^n` is rationally conjugate to
/// a group element, as far as the active constraints and the box can tell.
pub fn verify_conjugacy(g: &GroupData, r: u64, n: u32, chars: &[u32], opts: &SearchOptions) -> Result<SolverReport> {
    solve(g, r, n, chars, opts)
}
