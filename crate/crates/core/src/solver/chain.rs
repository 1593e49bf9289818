use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::numtheory::{factorize, is_prime};
use crate::psl2::{ClassId, GroupData};
use crate::{Error, Result};

/// Partial augmentations of a hypothetical torsion unit of the given order.
///
/// The support is exactly the non-identity classes whose element order
/// divides `order`, kept in solver order (element order, family, parameter).
/// Entries sum to one. The identity entry is absent since it vanishes for
/// every torsion unit other than 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PaVector {
    order: u64,
    entries: Vec<(ClassId, i64)>,
}

/// Classes a unit of order `order` may carry partial augmentations on.
pub fn support(g: &GroupData, order: u64) -> Vec<ClassId> {
    let mut cs: Vec<_> = g.classes().iter().filter(|c| c.order > 1 && order.is_multiple_of(c.order)).collect();
    cs.sort_by_key(|c| c.sort_key());
    cs.into_iter().map(|c| c.id).collect()
}

impl PaVector {
    /// Builds a vector from sparse entries; classes of the support that are
    /// not mentioned get 0.
    pub fn new(g: &GroupData, order: u64, entries: &BTreeMap<ClassId, i64>) -> Result<Self> {
        if order < 2 {
            return Err(Error::Malformed(format!("unit order {order} must be at least 2")));
        }
        let supp = support(g, order);
        for id in entries.keys() {
            g.class(*id)?;
            if !supp.contains(id) {
                return Err(Error::Malformed(format!(
                    "class {id} is not of order dividing {order} or is the identity"
                )));
            }
        }
        let entries: Vec<_> = supp.into_iter().map(|id| (id, entries.get(&id).copied().unwrap_or(0))).collect();
        let sum: i64 = entries.iter().map(|&(_, e)| e).sum();
        if sum != 1 {
            return Err(Error::Malformed(format!("partial augmentations sum to {sum}, expected 1")));
        }
        Ok(PaVector { order, entries })
    }

    /// The partial augmentations of a group element of class `class`.
    pub fn of_class(g: &GroupData, order: u64, class: ClassId) -> Result<Self> {
        Self::new(g, order, &BTreeMap::from([(class, 1)]))
    }

    /// Trusted constructor for the search: `values` follow `support(g, order)`.
    pub(crate) fn from_dense(order: u64, classes: &[ClassId], values: &[i64]) -> Self {
        PaVector { order, entries: classes.iter().copied().zip(values.iter().copied()).collect() }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn entries(&self) -> &[(ClassId, i64)] {
        &self.entries
    }

    pub fn get(&self, id: ClassId) -> i64 {
        self.entries.iter().find(|(c, _)| *c == id).map_or(0, |&(_, e)| e)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (ClassId, i64)> + '_ {
        self.entries.iter().copied().filter(|&(_, e)| e != 0)
    }

    /// The single class carrying partial augmentation 1, if the vector looks
    /// like a group element.
    pub fn as_single_class(&self) -> Option<ClassId> {
        let mut nz = self.nonzero();
        match (nz.next(), nz.next()) {
            (Some((id, 1)), None) => Some(id),
            _ => None,
        }
    }

    pub fn to_map(&self) -> BTreeMap<ClassId, i64> {
        self.entries.iter().copied().collect()
    }
}

/// Partial augmentations of `u, u^r, ..., u^{r^{n-1}}` for a unit `u` of
/// order `r^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PaChain {
    r: u64,
    vectors: Vec<PaVector>,
}

impl PaChain {
    /// `vectors[j]` describes `u^{r^j}` and must have order `r^{n-j}`.
    pub fn new(r: u64, vectors: Vec<PaVector>) -> Result<Self> {
        if !is_prime(r) {
            return Err(Error::RNotPrime(r));
        }
        if vectors.is_empty() {
            return Err(Error::BadExponent(0));
        }
        let n = vectors.len() as u32;
        for (j, v) in vectors.iter().enumerate() {
            let want = r.checked_pow(n - j as u32).ok_or(Error::BadExponent(n))?;
            if v.order != want {
                return Err(Error::Malformed(format!("level {j} has order {}, expected {want}", v.order)));
            }
        }
        Ok(PaChain { r, vectors })
    }

    /// The chain of a group element of class `class`, whose order must be a
    /// power of `r`.
    pub fn of_class(g: &GroupData, r: u64, class: ClassId) -> Result<Self> {
        let order = g.class(class)?.order;
        let f = factorize(order)?;
        let n = match f.factors() {
            [(q, n)] if *q == r => *n,
            _ => return Err(Error::Malformed(format!("class {class} has order {order}, not a power of {r}"))),
        };
        let mut vectors = Vec::with_capacity(n as usize);
        for j in 0..n {
            let c = g.power_class(class, r.pow(j))?;
            vectors.push(PaVector::of_class(g, r.pow(n - j), c)?);
        }
        PaChain::new(r, vectors)
    }

    pub(crate) fn extend(r: u64, top: PaVector, base: &PaChain) -> Self {
        let mut vectors = Vec::with_capacity(base.vectors.len() + 1);
        vectors.push(top);
        vectors.extend(base.vectors.iter().cloned());
        PaChain { r, vectors }
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.vectors.len() as u32
    }

    pub fn order(&self) -> u64 {
        self.vectors[0].order
    }

    pub fn vectors(&self) -> &[PaVector] {
        &self.vectors
    }

    /// The vector of `u` itself.
    pub fn top(&self) -> &PaVector {
        &self.vectors[0]
    }

    /// The chain of `u^r`, or `None` if `u` has order `r`.
    pub fn power(&self) -> Option<PaChain> {
        (self.vectors.len() > 1).then(|| PaChain { r: self.r, vectors: self.vectors[1..].to_vec() })
    }

    pub fn profile(&self) -> PowerProfile {
        let levels = self.vectors.iter().enumerate().map(|(j, v)| (self.r.pow(j as u32), v.clone())).collect();
        PowerProfile { order: self.order(), levels }
    }

    fn flat(&self) -> impl Iterator<Item = i64> + '_ {
        self.vectors.iter().flat_map(|v| v.entries.iter().map(|&(_, e)| e))
    }
}

impl Ord for PaChain {
    /// Lexicographic on the entries of `u`, then `u^r`, and so on.
    fn cmp(&self, other: &Self) -> Ordering {
        self.vectors.len().cmp(&other.vectors.len()).then_with(|| self.flat().cmp(other.flat()))
    }
}

impl PartialOrd for PaChain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Partial augmentations of `u^d` for every divisor `d < order` of the
/// order of `u`. This is what the general multiplicity formula consumes;
/// chains of prime-power units and group elements of any order both
/// produce one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProfile {
    order: u64,
    levels: BTreeMap<u64, PaVector>,
}

impl PowerProfile {
    pub fn new(order: u64, levels: BTreeMap<u64, PaVector>) -> Result<Self> {
        for d in (1..order).filter(|d| order.is_multiple_of(*d)) {
            match levels.get(&d) {
                Some(v) if v.order == order / d => {}
                _ => return Err(Error::Malformed(format!("missing or mis-sized level u^{d}"))),
            }
        }
        Ok(PowerProfile { order, levels })
    }

    /// The profile of a group element of class `class` (any order > 1).
    pub fn of_class(g: &GroupData, class: ClassId) -> Result<Self> {
        let order = g.class(class)?.order;
        let mut levels = BTreeMap::new();
        for d in (1..order).filter(|d| order % d == 0) {
            levels.insert(d, PaVector::of_class(g, order / d, g.power_class(class, d)?)?);
        }
        Self::new(order, levels)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Partial augmentations of `u^d`; `d` must be a proper divisor.
    pub fn level(&self, d: u64) -> Option<&PaVector> {
        self.levels.get(&d)
    }
}

/// A chain matches a group element: one entry 1 per level, and the classes
/// form a power sequence `x, x^r, x^{r^2}, ...`.
pub fn is_trivial_chain(g: &GroupData, chain: &PaChain) -> bool {
    let classes: Option<Vec<ClassId>> = chain.vectors.iter().map(PaVector::as_single_class).collect();
    let Some(classes) = classes else {
        return false;
    };
    classes.windows(2).all(|w| g.power_class(w[0], chain.r).ok() == Some(w[1]))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainEntries(pub Vec<BTreeMap<ClassId, i64>>);

impl From<&PaChain> for ChainEntries {
    fn from(c: &PaChain) -> Self {
        ChainEntries(c.vectors.iter().map(PaVector::to_map).collect())
    }
}

impl ChainEntries {
    pub fn to_chain(&self, g: &GroupData, r: u64) -> Result<PaChain> {
        let n = self.0.len() as u32;
        let vectors = self
            .0
            .iter()
            .enumerate()
            .map(|(j, m)| PaVector::new(g, r.pow(n - j as u32), m))
            .collect::<Result<Vec<_>>>()?;
        PaChain::new(r, vectors)
    }
}
