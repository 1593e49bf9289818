//! Box enumeration of partial augmentation vectors with interval pruning.
//!
//! For a fixed chain of `u^r`, every multiplicity `μ(ζ^e, u, φ_k)` is an
//! affine function of the unknown partial augmentations of `u`. Scaled by
//! the unit order `N` it has integer coefficients:
//!
//! `N·μ = (N/r)·μ(ζ^{re}, u^r, φ_k) + Σ_x ε_x Tr(φ_k(x) ζ^{-e})`.
//!
//! The depth-first search fixes one class at a time, the last class is
//! determined by the augmentation sum, and a branch is cut as soon as the
//! largest value any completion inside the box can reach is negative.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chain::{support, PaChain, PaVector};
use super::multiplicity::{admissibility_check, twisted_class_trace, wagner_check, MultiplicityTable};
use super::Constraints;
use crate::psl2::{ClassId, GroupData};
use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Candidate vectors that reached a leaf of the search.
    pub leaves: u64,
    /// Branches and leaves cut by each character `φ_k`.
    #[serde(deserialize_with = "numeric_keys")]
    pub cuts_by_character: BTreeMap<u32, u64>,
    /// Leaves that satisfied every multiplicity but failed a congruence.
    pub congruence_rejections: u64,
}

/// Reads a map whose integer keys may arrive in their JSON string form.
fn numeric_keys<'de, D: serde::Deserializer<'de>>(de: D) -> std::result::Result<BTreeMap<u32, u64>, D::Error> {
    BTreeMap::<String, u64>::deserialize(de)?
        .into_iter()
        .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(serde::de::Error::custom))
        .collect()
}

impl SearchStats {
    fn merge(&mut self, other: SearchStats) {
        self.leaves += other.leaves;
        self.congruence_rejections += other.congruence_rejections;
        for (k, v) in other.cuts_by_character {
            *self.cuts_by_character.entry(k).or_insert(0) += v;
        }
    }
}

/// One admissible chain together with the tables of `u`, one per character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Found {
    pub chain: PaChain,
    pub tables: Vec<MultiplicityTable>,
}

struct Form {
    k: u32,
    constant: i64,
    coefs: Vec<i64>,
    /// `sorted[t]`: coefficients of classes `t..` in descending order.
    sorted: Vec<Vec<i64>>,
}

impl Form {
    fn new(k: u32, constant: i64, coefs: Vec<i64>) -> Self {
        let sorted = (0..coefs.len())
            .map(|t| {
                let mut s = coefs[t..].to_vec();
                s.sort_unstable_by(|a, b| b.cmp(a));
                s
            })
            .collect();
        Form { k, constant, coefs, sorted }
    }

    /// Largest `Σ_{i≥t} a_i ε_i` with `Σ_{i≥t} ε_i = rest` and `|ε_i| ≤ bound`.
    fn best_completion(&self, t: usize, rest: i64, bound: i64) -> i64 {
        let free = &self.sorted[t];
        let mut budget = rest + bound * free.len() as i64;
        let mut best = -bound * free.iter().sum::<i64>();
        for &a in free {
            let take = budget.min(2 * bound);
            best += a * take;
            budget -= take;
        }
        best
    }
}

/// Per-level search state shared by all base chains.
struct Level<'a> {
    g: &'a GroupData,
    r: u64,
    order: u64,
    chars: &'a [u32],
    bound: i64,
    constraints: Constraints,
    classes: Vec<ClassId>,
    /// `traces[ki][e][x] = Tr(φ_k(x) ζ^{-e})` for `k = chars[ki]`.
    traces: Vec<Vec<Vec<i64>>>,
}

impl<'a> Level<'a> {
    fn new(
        g: &'a GroupData,
        r: u64,
        order: u64,
        chars: &'a [u32],
        bound: i64,
        constraints: Constraints,
    ) -> Result<Self> {
        let classes = support(g, order);
        let traces = chars
            .iter()
            .map(|&k| {
                (0..order)
                    .map(|e| {
                        classes
                            .iter()
                            .map(|&x| {
                                twisted_class_trace(g, k, x, order, e)?
                                    .to_i64()
                                    .ok_or_else(|| Error::Malformed("trace overflow".into()))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Level { g, r, order, chars, bound, constraints, classes, traces })
    }

    /// Deduplicated affine forms for extensions of `base` (whose top tables
    /// are `base_tables`, one per character).
    fn forms(&self, base_tables: &[MultiplicityTable]) -> Result<Vec<Form>> {
        let lower = self.order / self.r;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (ki, &k) in self.chars.iter().enumerate() {
            let table = &base_tables[ki];
            for e in 0..self.order {
                let mu = table.get(e % lower);
                let mu = mu
                    .to_integer()
                    .to_i64()
                    .filter(|_| mu.is_integer())
                    .ok_or_else(|| Error::Malformed("base chain is not admissible".into()))?;
                let constant = mu * lower as i64;
                let coefs = self.traces[ki][e as usize].clone();
                if seen.insert((constant, coefs.clone())) {
                    out.push(Form::new(k, constant, coefs));
                }
            }
        }
        Ok(out)
    }

    /// Enumerates all admissible extensions of `base` whose first class takes
    /// the value `first` (or all of them when `first` is `None`).
    fn extend(
        &self,
        base: Option<&PaChain>,
        base_tables: &[MultiplicityTable],
        first: Option<i64>,
    ) -> Result<(Vec<Found>, SearchStats)> {
        let forms = self.forms(base_tables)?;
        let mut state = Dfs {
            level: self,
            base,
            forms: &forms,
            values: vec![0; self.classes.len()],
            partial: forms.iter().map(|f| f.constant).collect(),
            found: Vec::new(),
            stats: SearchStats::default(),
        };
        if self.classes.is_empty() {
            return Ok((Vec::new(), state.stats));
        }
        match first {
            Some(v) if self.classes.len() > 1 => {
                state.assign(0, v, 1);
                state.descend(1, 1 - v)?;
            }
            _ => state.descend(0, 1)?,
        }
        Ok((state.found, state.stats))
    }
}

struct Dfs<'l, 'a> {
    level: &'l Level<'a>,
    base: Option<&'l PaChain>,
    forms: &'l [Form],
    values: Vec<i64>,
    partial: Vec<i64>,
    found: Vec<Found>,
    stats: SearchStats,
}

impl Dfs<'_, '_> {
    fn assign(&mut self, t: usize, v: i64, sign: i64) {
        if sign > 0 {
            self.values[t] = v;
        }
        for (p, f) in self.partial.iter_mut().zip(self.forms) {
            *p += sign * f.coefs[t] * v;
        }
    }

    fn cut(&mut self, k: u32) {
        *self.stats.cuts_by_character.entry(k).or_insert(0) += 1;
    }

    /// Classes `0..t` are fixed and the remaining ones must sum to `rest`.
    fn descend(&mut self, t: usize, rest: i64) -> Result<()> {
        let vars = self.values.len();
        let bound = self.level.bound;
        if rest.abs() > bound * (vars - t) as i64 {
            return Ok(());
        }
        if let Some(f) = self
            .forms
            .iter()
            .zip(&self.partial)
            .find(|(f, &p)| p + f.best_completion(t, rest, bound) < 0)
            .map(|(f, _)| f)
        {
            let k = f.k;
            self.cut(k);
            return Ok(());
        }
        if t + 1 == vars {
            self.assign(t, rest, 1);
            self.leaf()?;
            self.assign(t, rest, -1);
            return Ok(());
        }
        for v in -bound..=bound {
            self.assign(t, v, 1);
            self.descend(t + 1, rest - v)?;
            self.assign(t, v, -1);
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        self.stats.leaves += 1;
        let n = self.level.order as i64;
        if let Some(f) = self.forms.iter().zip(&self.partial).find(|(_, &p)| p < 0 || p % n != 0).map(|(f, _)| f) {
            let k = f.k;
            self.cut(k);
            return Ok(());
        }
        let lv = self.level;
        let top = PaVector::from_dense(lv.order, &lv.classes, &self.values);
        let chain = match self.base {
            Some(base) => PaChain::extend(lv.r, top, base),
            None => PaChain::new(lv.r, vec![top])?,
        };
        if lv.constraints.wagner && !wagner_check(lv.g, &chain)? {
            self.stats.congruence_rejections += 1;
            return Ok(());
        }
        let (ok, tables) = admissibility_check(lv.g, lv.chars, &chain)?;
        if !ok {
            return Err(Error::Malformed("integer filter and exact check disagree".into()));
        }
        self.found.push(Found { chain, tables });
        Ok(())
    }
}

/// Level-by-level enumeration of admissible chains of length `n`.
pub(crate) fn enumerate(
    g: &GroupData,
    r: u64,
    n: u32,
    chars: &[u32],
    bound: i64,
    constraints: Constraints,
) -> Result<(Vec<Found>, SearchStats)> {
    let mut stats = SearchStats::default();
    let mut bases: Vec<(Option<PaChain>, Vec<MultiplicityTable>)> =
        vec![(None, chars.iter().map(|&k| MultiplicityTable::of_identity(k)).collect())];
    let mut found = Vec::new();
    for m in 1..=n {
        let order = r.pow(m);
        let level = Level::new(g, r, order, chars, bound, constraints)?;
        let firsts: Vec<Option<i64>> =
            if level.classes.len() > 1 { (-bound..=bound).map(Some).collect() } else { vec![None] };
        let work: Vec<(usize, Option<i64>)> =
            (0..bases.len()).flat_map(|b| firsts.iter().map(move |&f| (b, f))).collect();
        let results = work
            .par_iter()
            .map(|&(b, first)| level.extend(bases[b].0.as_ref(), &bases[b].1, first))
            .collect::<Result<Vec<_>>>()?;
        found = Vec::new();
        for (chains, s) in results {
            found.extend(chains);
            stats.merge(s);
        }
        found.sort_by(|a, b| a.chain.cmp(&b.chain));
        bases = found.iter().map(|f| (Some(f.chain.clone()), f.tables.clone())).collect();
        if bases.is_empty() {
            break;
        }
    }
    Ok((found, stats))
}
