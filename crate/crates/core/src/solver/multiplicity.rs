//! Eigenvalue multiplicities `μ(ξ, u, φ_k)` of hypothetical units.
//!
//! Two independent routes are provided. [`multiplicity_general`] sums the
//! traces of `φ(u^d) ξ^{-d}` over all divisors `d` of the order, each over
//! its own field `Q(ζ^d)`. [`multiplicity_primepower`] uses the prime-power
//! recursion `μ(ξ, u, φ) = μ(ξ^r, u^r, φ)/r + (1/r^n) Σ_x ε_x(u) Tr(φ(x) ξ^{-1})`
//! and needs the table of `u^r`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::chain::{PaChain, PaVector, PowerProfile};
use crate::cyclotomic::CycloSum;
use crate::psl2::GroupData;
use crate::{Error, Rat, Result};

/// `μ(ζ^e, u, φ_k)` for every exponent `e` modulo the order of `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityTable {
    pub k: u32,
    pub order: u64,
    #[serde(with = "rat_strings")]
    pub values: Vec<Rat>,
}

impl MultiplicityTable {
    /// Table of the identity: every eigenvalue of `Θ_k(1)` is 1.
    pub fn of_identity(k: u32) -> Self {
        MultiplicityTable { k, order: 1, values: vec![Rat::from_integer(BigInt::from(2 * k + 1))] }
    }

    pub fn get(&self, e: u64) -> &Rat {
        &self.values[(e % self.order) as usize]
    }

    pub fn is_admissible(&self) -> bool {
        self.values.iter().all(|v| v.is_integer() && !v.is_negative())
    }

    pub fn total(&self) -> Rat {
        self.values.iter().fold(Rat::zero(), |acc, v| acc + v)
    }

    /// Integer values; `None` unless admissible.
    pub fn as_counts(&self) -> Option<Vec<u64>> {
        self.is_admissible().then(|| self.values.iter().map(|v| v.to_integer().to_u64().unwrap_or(u64::MAX)).collect())
    }
}

/// `Σ_x ε_x · φ_k(x)`, over conductor `conductor`.
pub fn char_value_of_unit(g: &GroupData, k: u32, pa: &PaVector, conductor: u64) -> Result<CycloSum> {
    let phi = g.brauer_char(k);
    let mut acc = CycloSum::zero(conductor)?;
    for (id, eps) in pa.nonzero() {
        let value = phi.value_at_order(g.class(id)?)?.rebase(conductor)?;
        acc = acc.add(&value.scale(&BigInt::from(eps)))?;
    }
    Ok(acc)
}

/// `Tr_{Q(ζ_N)/Q}(φ_k(x) ζ_N^{-e})` for a class of order dividing `N`.
pub(crate) fn twisted_class_trace(g: &GroupData, k: u32, class: crate::ClassId, n: u64, e: u64) -> Result<BigInt> {
    let value = g.brauer_char(k).value_at_order(g.class(class)?)?.rebase(n)?;
    Ok(value.mul_by_root(-(e as i64)).trace_to_q())
}

fn ratio(num: BigInt, den: u64) -> Rat {
    Rat::new(num, BigInt::from(den))
}

/// The full divisor-sum formula.
pub fn multiplicity_general(g: &GroupData, k: u32, profile: &PowerProfile, e: u64) -> Result<Rat> {
    let n = profile.order();
    let degree = BigInt::from(2 * k + 1);
    let mut total = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        if d == n {
            // φ(u^n) ξ^{-n} = φ(1), traced over Q
            total += &degree;
            continue;
        }
        let level = profile.level(d).ok_or_else(|| Error::Malformed(format!("profile lacks u^{d}")))?;
        let field = n / d;
        // ξ^{-d} = ζ_n^{-ed} = ζ_{n/d}^{-e}
        let x = char_value_of_unit(g, k, level, field)?.mul_by_root(-((e % field) as i64));
        total += x.trace_to_q();
    }
    Ok(ratio(total, n))
}

/// The prime-power recursion, given the table of `u^r`.
pub fn multiplicity_primepower(
    g: &GroupData,
    k: u32,
    chain: &PaChain,
    e: u64,
    table_of_ur: &MultiplicityTable,
) -> Result<Rat> {
    let n = chain.order();
    let r = chain.r();
    if table_of_ur.order != n / r || table_of_ur.k != k {
        return Err(Error::Malformed(format!(
            "table of u^r must have order {} for φ_{k}, got order {} for φ_{}",
            n / r,
            table_of_ur.order,
            table_of_ur.k
        )));
    }
    let inherited = table_of_ur.get(e) / Rat::from_integer(BigInt::from(r));
    let mut local = BigInt::zero();
    for (id, eps) in chain.top().nonzero() {
        local += BigInt::from(eps) * twisted_class_trace(g, k, id, n, e)?;
    }
    Ok(inherited + ratio(local, n))
}

/// Tables for every level of the chain via the prime-power recursion,
/// indexed like [`PaChain::vectors`].
pub fn chain_tables(g: &GroupData, k: u32, chain: &PaChain) -> Result<Vec<MultiplicityTable>> {
    let vectors = chain.vectors();
    let mut below = MultiplicityTable::of_identity(k);
    let mut out = Vec::with_capacity(vectors.len());
    for j in (0..vectors.len()).rev() {
        let sub = PaChain::new(chain.r(), vectors[j..].to_vec())?;
        let n = sub.order();
        let values = (0..n).map(|e| multiplicity_primepower(g, k, &sub, e, &below)).collect::<Result<Vec<_>>>()?;
        below = MultiplicityTable { k, order: n, values };
        out.push(below.clone());
    }
    out.reverse();
    Ok(out)
}

/// Table of the top unit via the general formula.
pub fn general_table(g: &GroupData, k: u32, profile: &PowerProfile) -> Result<MultiplicityTable> {
    let values = (0..profile.order()).map(|e| multiplicity_general(g, k, profile, e)).collect::<Result<Vec<_>>>()?;
    Ok(MultiplicityTable { k, order: profile.order(), values })
}

/// True iff every `μ` of every level is a non-negative integer for every
/// listed character. Returns the tables of `u` itself, one per character.
pub fn admissibility_check(g: &GroupData, chars: &[u32], chain: &PaChain) -> Result<(bool, Vec<MultiplicityTable>)> {
    if chars.is_empty() {
        return Err(Error::NoCharacters);
    }
    let mut ok = true;
    let mut tops = Vec::with_capacity(chars.len());
    for &k in chars {
        let tables = chain_tables(g, k, chain)?;
        ok &= tables.iter().all(MultiplicityTable::is_admissible);
        tops.push(tables.into_iter().next().expect("chain is nonempty"));
    }
    Ok((ok, tops))
}

/// Congruences `Σ_{x : x^{r^j} ~ s} ε_x(w) ≡ ε_s(w^{r^j}) (mod r)` for every
/// unit `w` of the chain, every `j ≥ 1` reaching a deeper level (or 1), and
/// every class `s`. They hold for all units of `V(ZG)` since `w^r` and
/// `Σ a_g g^r` agree modulo commutators and `r`.
pub fn wagner_check(g: &GroupData, chain: &PaChain) -> Result<bool> {
    let vectors = chain.vectors();
    let r = chain.r();
    let levels = vectors.len();
    let modulus = BigInt::from(r);
    for i in 0..levels {
        let mut step = 1u64;
        for j in 1..=levels - i {
            step *= r;
            let mut diff = vec![BigInt::zero(); g.classes().len()];
            for (id, eps) in vectors[i].nonzero() {
                diff[g.power_class(id, step)?.0] += eps;
            }
            if i + j == levels {
                diff[g.identity().0] -= 1;
            } else {
                for (id, eps) in vectors[i + j].nonzero() {
                    diff[id.0] -= eps;
                }
            }
            if diff.iter().any(|v| !v.is_multiple_of(&modulus)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

mod rat_strings {
    use super::Rat;
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn to_string(r: &Rat) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }

    pub fn parse(s: &str) -> Option<Rat> {
        let (n, d) = s.split_once('/')?;
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        (d != BigInt::from(0)).then(|| Rat::new(n, d))
    }

    pub fn serialize<S: Serializer>(values: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))).collect()
    }
}

pub use rat_strings::{parse as parse_rat, to_string as format_rat};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::ClassFamily;
    use std::collections::BTreeMap;

    fn int(v: i64) -> Rat {
        Rat::from_integer(BigInt::from(v))
    }

    #[test]
    fn char_value_linearity() {
        let g = GroupData::build(7, 1).unwrap();
        let c4 = g.classes_of_order(4)[0];
        let c2 = g.classes_of_order(2)[0];
        let phi = g.brauer_char(1);
        let single = PaVector::of_class(&g, 4, c4.id).unwrap();
        assert_eq!(char_value_of_unit(&g, 1, &single, 4).unwrap(), phi.value_at_order(c4).unwrap().rebase(4).unwrap());
        let mixed = PaVector::new(&g, 4, &BTreeMap::from([(c4.id, 2), (c2.id, -1)])).unwrap();
        let want = phi
            .value_at_order(c4)
            .unwrap()
            .rebase(4)
            .unwrap()
            .scale(&BigInt::from(2))
            .add(&phi.value_at_order(c2).unwrap().rebase(4).unwrap().scale(&BigInt::from(-1)))
            .unwrap();
        assert_eq!(char_value_of_unit(&g, 1, &mixed, 4).unwrap(), want);
        let trivial = char_value_of_unit(&g, 0, &mixed, 4).unwrap();
        assert!((trivial.numeric_embed().re - 1.0).abs() < 1e-12);

        let u = PaVector::new(&g, 7, &BTreeMap::from([(crate::ClassId(1), 1)])).unwrap();
        assert_eq!(char_value_of_unit(&g, 1, &u, 7), Err(Error::PSingular(1)));
    }

    #[test]
    fn group_element_order_8_matches_eigenvalues() {
        let g = GroupData::build(17, 1).unwrap();
        let s1 = g.find(ClassFamily::Split(1)).unwrap();
        let chain = PaChain::of_class(&g, 2, s1).unwrap();
        let prof = chain.profile();
        assert_eq!(multiplicity_general(&g, 1, &prof, 1).unwrap(), int(1));
        assert_eq!(multiplicity_general(&g, 1, &prof, 2).unwrap(), int(0));
        assert_eq!(multiplicity_general(&g, 1, &prof, 0).unwrap(), int(1));
        for k in 0..6 {
            let table = general_table(&g, k, &prof).unwrap();
            let eig = g.eigenvalue_multiset(k, s1).unwrap();
            for e in 0..8 {
                assert_eq!(table.values[e as usize], int(*eig.get(&e).unwrap_or(&0) as i64));
            }
            assert_eq!(chain_tables(&g, k, &chain).unwrap()[0], table);
        }
    }

    #[test]
    fn trivial_character_is_concentrated_at_one() {
        let g = GroupData::build(7, 1).unwrap();
        let c4 = g.classes_of_order(4)[0].id;
        let c2 = g.classes_of_order(2)[0].id;
        let chain = PaChain::new(
            2,
            vec![
                PaVector::new(&g, 4, &BTreeMap::from([(c4, 3), (c2, -2)])).unwrap(),
                PaVector::of_class(&g, 2, c2).unwrap(),
            ],
        )
        .unwrap();
        let t = general_table(&g, 0, &chain.profile()).unwrap();
        assert_eq!(t.values, vec![int(1), int(0), int(0), int(0)]);
        assert_eq!(chain_tables(&g, 0, &chain).unwrap()[0], t);
    }

    #[test]
    fn order_r_group_element_eigenvalue_one() {
        let g = GroupData::build(11, 1).unwrap();
        for c in g.classes_of_order(5) {
            let chain = PaChain::of_class(&g, 5, c.id).unwrap();
            for k in 0..5 {
                let base = MultiplicityTable::of_identity(k);
                let mu1 = multiplicity_primepower(&g, k, &chain, 0, &base).unwrap();
                let eig = g.eigenvalue_multiset(k, c.id).unwrap();
                assert_eq!(mu1, int(eig[&0] as i64));
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let g = GroupData::build(17, 1).unwrap();
        let s1 = g.find(ClassFamily::Split(1)).unwrap();
        let chain = PaChain::of_class(&g, 2, s1).unwrap();
        let (ok, tables) = admissibility_check(&g, &[1, 2, 3], &chain).unwrap();
        assert!(ok);
        assert_eq!(tables.len(), 3);
        assert_eq!(admissibility_check(&g, &[], &chain), Err(Error::NoCharacters));

        // (2, -1) on the two order-5 classes of PSL(2,11)
        let g11 = GroupData::build(11, 1).unwrap();
        let c5: Vec<_> = g11.classes_of_order(5).iter().map(|c| c.id).collect();
        let v = PaVector::new(&g11, 5, &BTreeMap::from([(c5[0], 2), (c5[1], -1)])).unwrap();
        let chain = PaChain::new(5, vec![v]).unwrap();
        let (ok, tables) = admissibility_check(&g11, &[1, 2], &chain).unwrap();
        assert!(!ok);
        assert!(tables.iter().any(|t| !t.is_admissible()));

        let inv = g11.classes_of_order(2)[0].id;
        let chain = PaChain::of_class(&g11, 2, inv).unwrap();
        assert!(admissibility_check(&g11, &[1, 2, 3], &chain).unwrap().0);
    }

    #[test]
    fn primepower_rejects_mismatched_table() {
        let g = GroupData::build(17, 1).unwrap();
        let chain = PaChain::of_class(&g, 2, g.find(ClassFamily::Split(1)).unwrap()).unwrap();
        let wrong = MultiplicityTable::of_identity(1);
        assert!(multiplicity_primepower(&g, 1, &chain, 0, &wrong).is_err());
    }

    #[test]
    fn wagner_congruences() {
        let g = GroupData::build(7, 1).unwrap();
        let c4 = g.classes_of_order(4)[0].id;
        let c2 = g.classes_of_order(2)[0].id;
        let genuine = PaChain::of_class(&g, 2, c4).unwrap();
        assert!(wagner_check(&g, &genuine).unwrap());
        // u of order 4 whose partial augmentations look like an involution
        let fake =
            PaChain::new(2, vec![PaVector::of_class(&g, 4, c2).unwrap(), PaVector::of_class(&g, 2, c2).unwrap()])
                .unwrap();
        assert!(!wagner_check(&g, &fake).unwrap());
        assert!(admissibility_check(&g, &[1, 2, 3], &fake).unwrap().0);
    }

    #[test]
    fn rational_strings() {
        let r = Rat::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(format_rat(&r), "-3/2");
        assert_eq!(parse_rat("-3/2"), Some(r));
        assert_eq!(format_rat(&int(2)), "2/1");
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("7"), None);
    }
}
