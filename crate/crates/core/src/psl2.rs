//! Conjugacy classes of `PSL(2, q)` and the Brauer characters `φ_k`.
//!
//! Classes are modelled abstractly, following Dickson's description: every
//! element lies in a conjugate of a cyclic subgroup of order `p`,
//! `o_a = (q - 1)/d` or `o_b = (q + 1)/d` with `d = gcd(2, p - 1)`. Inside the
//! two tori an element is only conjugate to itself and its inverse, so the
//! split class `a^i` is identified with `a^{o_a - i}` and stored under
//! `min(i, o_a - i)`; likewise for the nonsplit torus generated by `b`.
//!
//! The character `φ_k` (degree `2k + 1`) takes the value
//! `1 + Σ_{t=1..k} (α^{it} + α^{-it})` on `a^i` and the analogous value on
//! `b^j`, where `α`, `β` are fixed primitive roots of unity of orders `o_a`
//! and `o_b`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloSum;
use crate::numtheory::{checked_pow, is_prime, pow_mod};
use crate::{Error, Result};

/// Largest field size accepted by [`GroupData::build`].
pub const MAX_Q: u64 = 10_000_000;

/// Index of a class in [`GroupData::classes`].
///
/// Serialized as a bare integer. Deserialization also accepts the decimal
/// string form that JSON uses for map keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ClassId(pub usize);

impl<'de> Deserialize<'de> for ClassId {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = ClassId;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a class index")
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<ClassId, E> {
                usize::try_from(v).map(ClassId).map_err(E::custom)
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<ClassId, E> {
                usize::try_from(v).map(ClassId).map_err(E::custom)
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<ClassId, E> {
                v.parse().map(ClassId).map_err(E::custom)
            }
        }
        de.deserialize_any(Visitor)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "parameter", rename_all = "lowercase")]
pub enum ClassFamily {
    Identity,
    /// One of the `d` classes of elements of order `p`.
    Unipotent(u64),
    /// `a^i` in the cyclic subgroup of order `(q - 1)/d`.
    Split(u64),
    /// `b^j` in the cyclic subgroup of order `(q + 1)/d`.
    Nonsplit(u64),
}

impl ClassFamily {
    fn rank(self) -> u8 {
        match self {
            ClassFamily::Identity => 0,
            ClassFamily::Unipotent(_) => 1,
            ClassFamily::Split(_) => 2,
            ClassFamily::Nonsplit(_) => 3,
        }
    }

    fn parameter(self) -> u64 {
        match self {
            ClassFamily::Identity => 0,
            ClassFamily::Unipotent(v) | ClassFamily::Split(v) | ClassFamily::Nonsplit(v) => v,
        }
    }
}

impl fmt::Display for ClassFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassFamily::Identity => f.write_str("1"),
            ClassFamily::Unipotent(v) => write!(f, "u{v}"),
            ClassFamily::Split(i) => write!(f, "a^{i}"),
            ClassFamily::Nonsplit(j) => write!(f, "b^{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConjClass {
    pub id: ClassId,
    #[serde(flatten)]
    pub family: ClassFamily,
    pub order: u64,
}

impl ConjClass {
    pub fn is_p_regular(&self) -> bool {
        !matches!(self.family, ClassFamily::Unipotent(_))
    }

    /// Sort key used by the solver: element order, then family, then parameter.
    pub fn sort_key(&self) -> (u64, u8, u64) {
        (self.order, self.family.rank(), self.family.parameter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub d: u64,
    pub o_a: u64,
    pub o_b: u64,
    classes: Vec<ConjClass>,
}

fn normalize(i: u64, o: u64) -> u64 {
    let i = i % o;
    i.min(o - i)
}

impl GroupData {
    /// Builds the class inventory of `PSL(2, p^f)`, ordered as identity,
    /// unipotent classes, split classes, nonsplit classes.
    pub fn build(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::Zero);
        }
        let q = checked_pow(p, f).filter(|&q| q <= MAX_Q).ok_or(Error::FieldTooLarge { p, f })?;
        if q < 4 {
            return Err(Error::FieldTooSmall(q));
        }
        let d = if p == 2 { 1 } else { 2 };
        let (o_a, o_b) = ((q - 1) / d, (q + 1) / d);

        let mut families = vec![ClassFamily::Identity];
        families.extend((1..=d).map(ClassFamily::Unipotent));
        families.extend((1..=o_a / 2).map(ClassFamily::Split));
        families.extend((1..=o_b / 2).map(ClassFamily::Nonsplit));

        let classes = families
            .into_iter()
            .enumerate()
            .map(|(id, family)| {
                let order = match family {
                    ClassFamily::Identity => 1,
                    ClassFamily::Unipotent(_) => p,
                    ClassFamily::Split(i) => o_a / i.gcd(&o_a),
                    ClassFamily::Nonsplit(j) => o_b / j.gcd(&o_b),
                };
                ConjClass { id: ClassId(id), family, order }
            })
            .collect();
        Ok(GroupData { p, f, q, d, o_a, o_b, classes })
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> Result<&ConjClass> {
        self.classes.get(id.0).ok_or(Error::UnknownClass(id.0))
    }

    pub fn identity(&self) -> ClassId {
        ClassId(0)
    }

    /// Class id of a family member, if it exists in this group.
    pub fn find(&self, family: ClassFamily) -> Option<ClassId> {
        let d = self.d as usize;
        let split = (self.o_a / 2) as usize;
        let nonsplit = (self.o_b / 2) as usize;
        let idx = match family {
            ClassFamily::Identity => 0,
            ClassFamily::Unipotent(v) if (1..=self.d).contains(&v) => v as usize,
            ClassFamily::Split(i) if (1..=split as u64).contains(&i) => d + i as usize,
            ClassFamily::Nonsplit(j) if (1..=nonsplit as u64).contains(&j) => d + split + j as usize,
            _ => return None,
        };
        Some(ClassId(idx))
    }

    pub fn classes_of_order(&self, m: u64) -> Vec<&ConjClass> {
        self.classes.iter().filter(|c| c.order == m).collect()
    }

    pub fn exponent_has_order(&self, m: u64) -> bool {
        self.classes.iter().any(|c| c.order == m)
    }

    /// Class of `x^e` for `x` in class `c`.
    pub fn power_class(&self, c: ClassId, e: u64) -> Result<ClassId> {
        let class = self.class(c)?;
        if e.is_multiple_of(class.order) {
            return Ok(self.identity());
        }
        let family = match class.family {
            ClassFamily::Identity => ClassFamily::Identity,
            ClassFamily::Split(i) => ClassFamily::Split(normalize(i * (e % self.o_a), self.o_a)),
            ClassFamily::Nonsplit(j) => ClassFamily::Nonsplit(normalize(j * (e % self.o_b), self.o_b)),
            ClassFamily::Unipotent(v) => {
                if self.d == 1 {
                    ClassFamily::Unipotent(v)
                } else {
                    // [[1, t], [0, 1]]^e = [[1, et], [0, 1]]: the class flips
                    // exactly when e is a non-square in the field of order q.
                    let square = pow_mod(e % self.p, (self.q - 1) / 2, self.p) == 1;
                    ClassFamily::Unipotent(if square { v } else { 3 - v })
                }
            }
        };
        self.find(family).ok_or_else(|| Error::Malformed(format!("no class for {family}")))
    }

    pub fn brauer_char(&self, k: u32) -> BrauerChar {
        BrauerChar { k, o_a: self.o_a, o_b: self.o_b }
    }

    /// Eigenvalues of `Θ_k` on an element of class `c`, as exponents of a
    /// primitive root of unity of order `element_order(c)`.
    pub fn eigenvalue_multiset(&self, k: u32, c: ClassId) -> Result<BTreeMap<u64, u64>> {
        let class = self.class(c)?;
        let step = match class.family {
            ClassFamily::Unipotent(_) => return Err(Error::PSingular(c.0)),
            ClassFamily::Identity => 0,
            ClassFamily::Split(i) => i / (self.o_a / class.order),
            ClassFamily::Nonsplit(j) => j / (self.o_b / class.order),
        };
        let n = class.order as i64;
        let mut out = BTreeMap::new();
        for t in -(k as i64)..=k as i64 {
            *out.entry((step as i64 * t).rem_euclid(n) as u64).or_insert(0) += 1;
        }
        Ok(out)
    }
}

/// The Brauer character `φ_k` of degree `2k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrauerChar {
    k: u32,
    o_a: u64,
    o_b: u64,
}

impl BrauerChar {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn degree(&self) -> u64 {
        2 * self.k as u64 + 1
    }

    fn torus_value(&self, conductor: u64, i: u64) -> CycloSum {
        let i = i as i64;
        let terms = std::iter::once((0, 1)).chain((1..=self.k as i64).flat_map(|t| [(i * t, 1), (-i * t, 1)]));
        CycloSum::make(conductor, terms).expect("torus orders are positive")
    }

    /// Value on a p-regular class, over conductor `o_a` (split), `o_b`
    /// (nonsplit) or `1` (identity).
    pub fn value(&self, class: &ConjClass) -> Result<CycloSum> {
        match class.family {
            ClassFamily::Identity => CycloSum::constant(1, self.degree()),
            ClassFamily::Unipotent(_) => Err(Error::PSingular(class.id.0)),
            ClassFamily::Split(i) => Ok(self.torus_value(self.o_a, i)),
            ClassFamily::Nonsplit(j) => Ok(self.torus_value(self.o_b, j)),
        }
    }

    /// Value on a p-regular class over the conductor `element_order(class)`.
    pub fn value_at_order(&self, class: &ConjClass) -> Result<CycloSum> {
        self.value(class)?.descend(class.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::collections::BTreeSet;

    fn orders(g: &GroupData) -> Vec<u64> {
        g.classes().iter().map(|c| c.order).collect()
    }

    #[test]
    fn build_examples() {
        let g = GroupData::build(7, 1).unwrap();
        assert_eq!((g.q, g.d, g.o_a, g.o_b), (7, 2, 3, 4));
        assert_eq!(orders(&g), vec![1, 7, 7, 3, 4, 2]);

        let g = GroupData::build(2, 2).unwrap();
        assert_eq!((g.q, g.d, g.o_a, g.o_b), (4, 1, 3, 5));
        assert_eq!(orders(&g), vec![1, 2, 3, 5, 5]);

        let g = GroupData::build(3, 2).unwrap();
        assert_eq!((g.q, g.d, g.o_a, g.o_b), (9, 2, 4, 5));
        assert_eq!(orders(&g), vec![1, 3, 3, 4, 2, 5, 5]);
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert_eq!(GroupData::build(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(GroupData::build(3, 1), Err(Error::FieldTooSmall(3)));
        assert_eq!(GroupData::build(2, 1), Err(Error::FieldTooSmall(2)));
        assert_eq!(GroupData::build(5, 0), Err(Error::Zero));
        assert!(matches!(GroupData::build(2, 40), Err(Error::FieldTooLarge { .. })));
        assert!(GroupData::build(5, 1).is_ok());
    }

    #[test]
    fn class_inventory_invariants() {
        let mut seen = 0;
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79] {
            for f in 1..=6 {
                let q = p.pow(f);
                if !(4..=81).contains(&q) {
                    continue;
                }
                seen += 1;
                let g = GroupData::build(p, f).unwrap();
                let want = if p == 2 { q + 1 } else { (q + 5) / 2 };
                assert_eq!(g.classes().len() as u64, want, "q = {q}");
                assert_eq!(g.classes_of_order(2).len(), 1, "q = {q}");
                assert_eq!(g.classes_of_order(p).len() as u64, g.d);
                for c in g.classes().iter().filter(|c| c.order > 1 && c.is_p_regular()) {
                    assert!(g.o_a.is_multiple_of(c.order) || g.o_b.is_multiple_of(c.order));
                }
                for (i, c) in g.classes().iter().enumerate() {
                    assert_eq!(c.id, ClassId(i));
                    assert_eq!(g.find(c.family), Some(c.id));
                }
            }
        }
        assert!(seen >= 20);
    }

    #[test]
    fn classes_of_order_examples() {
        let g17 = GroupData::build(17, 1).unwrap();
        let fams: Vec<_> = g17.classes_of_order(8).iter().map(|c| c.family).collect();
        assert_eq!(fams, vec![ClassFamily::Split(1), ClassFamily::Split(3)]);
        let g7 = GroupData::build(7, 1).unwrap();
        assert_eq!(g7.classes_of_order(4).len(), 1);
        assert!(g7.classes_of_order(5).is_empty());
    }

    #[test]
    fn power_class_examples() {
        let g = GroupData::build(17, 1).unwrap();
        let s1 = g.find(ClassFamily::Split(1)).unwrap();
        let s3 = g.find(ClassFamily::Split(3)).unwrap();
        assert_eq!(g.power_class(s1, 3).unwrap(), s3);
        assert_eq!(g.power_class(s3, 3).unwrap(), s1);
        assert_eq!(g.power_class(s1, 8).unwrap(), g.identity());
        assert_eq!(g.power_class(s1, 4).unwrap(), g.find(ClassFamily::Split(4)).unwrap());

        let g7 = GroupData::build(7, 1).unwrap();
        let u1 = g7.find(ClassFamily::Unipotent(1)).unwrap();
        let u2 = g7.find(ClassFamily::Unipotent(2)).unwrap();
        assert_eq!(g7.power_class(u1, 2).unwrap(), u1);
        assert_eq!(g7.power_class(u1, 3).unwrap(), u2);
        assert_eq!(g7.power_class(u2, 3).unwrap(), u1);
        assert_eq!(g7.power_class(u1, 7).unwrap(), g7.identity());
    }

    #[test]
    fn power_class_respects_orders() {
        for (p, f) in [(7, 1), (2, 3), (3, 2), (13, 1), (17, 1), (19, 1), (5, 2)] {
            let g = GroupData::build(p, f).unwrap();
            for c in g.classes() {
                for e in 0..3 * c.order {
                    let pc = g.class(g.power_class(c.id, e).unwrap()).unwrap();
                    assert_eq!(pc.order, c.order / c.order.gcd(&e), "{p}^{f}: {} ^ {e}", c.family);
                }
            }
        }
    }

    type Mat = [u64; 4];

    fn mul(a: Mat, b: Mat, p: u64) -> Mat {
        [
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        ]
    }

    /// Canonical representative of ±m.
    fn proj(m: Mat, p: u64) -> Mat {
        let neg = m.map(|x| (p - x) % p);
        m.min(neg)
    }

    /// Brute-force conjugacy classes of PSL(2, p) for a prime p, via 2×2
    /// matrices; returns the class label of every projective element.
    fn matrix_classes(p: u64) -> BTreeMap<Mat, usize> {
        let mut sl = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d + p * p - b * c) % p == 1 {
                            sl.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let elems: BTreeSet<Mat> = sl.iter().map(|&m| proj(m, p)).collect();
        let mut label = BTreeMap::new();
        let mut next = 0;
        for &x in &elems {
            if label.contains_key(&x) {
                continue;
            }
            for &g in &sl {
                let ginv = [g[3], (p - g[1]) % p, (p - g[2]) % p, g[0]];
                label.insert(proj(mul(mul(g, x, p), ginv, p), p), next);
            }
            next += 1;
        }
        label
    }

    #[test]
    fn unipotent_power_rule_matches_matrices() {
        for p in [5u64, 7, 11, 13] {
            let labels = matrix_classes(p);
            let g = GroupData::build(p, 1).unwrap();
            assert_eq!(labels.values().collect::<BTreeSet<_>>().len(), g.classes().len());
            let x = [1, 1, 0, 1];
            let u1 = g.find(ClassFamily::Unipotent(1)).unwrap();
            for e in 1..p {
                let xe = proj([1, e, 0, 1], p);
                let same_matrix_class = labels[&xe] == labels[&proj(x, p)];
                let same_model_class = g.power_class(u1, e).unwrap() == u1;
                assert_eq!(same_matrix_class, same_model_class, "p = {p}, e = {e}");
            }
        }
    }

    #[test]
    fn brauer_values() {
        let g = GroupData::build(7, 1).unwrap();
        let phi1 = g.brauer_char(1);
        let id = g.class(g.identity()).unwrap();
        assert_eq!(phi1.value(id).unwrap(), CycloSum::constant(1, 3).unwrap());
        let inv = g.classes_of_order(2)[0];
        assert_eq!(inv.family, ClassFamily::Nonsplit(2));
        let v = phi1.value(inv).unwrap();
        assert_eq!(v, CycloSum::make(4, [(0, 1), (2, 2)]).unwrap());
        assert!((v.numeric_embed().re + 1.0).abs() < 1e-9);
        assert_eq!(phi1.value_at_order(inv).unwrap(), CycloSum::make(2, [(0, 1), (1, 2)]).unwrap());

        let phi0 = g.brauer_char(0);
        for c in g.classes().iter().filter(|c| c.is_p_regular()) {
            assert!((phi0.value(c).unwrap().numeric_embed().re - 1.0).abs() < 1e-12);
        }
        let u = g.class(ClassId(1)).unwrap();
        assert_eq!(phi1.value(u), Err(Error::PSingular(1)));
    }

    #[test]
    fn brauer_values_are_real_and_field_independent() {
        for (p, f) in [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1), (19, 1)] {
            let g = GroupData::build(p, f).unwrap();
            for k in 0..=12 {
                let phi = g.brauer_char(k);
                for c in g.classes().iter().filter(|c| c.is_p_regular()) {
                    let v = phi.value(c).unwrap();
                    assert_eq!(v.conjugate(), v);
                    let low = phi.value_at_order(c).unwrap();
                    assert!((low.numeric_embed() - v.numeric_embed()).norm() < 1e-9);
                    let mult = g.eigenvalue_multiset(k, c.id).unwrap();
                    assert_eq!(mult.values().sum::<u64>(), phi.degree());
                    // the eigenvalue multiset is the value, term by term
                    let from_mult =
                        CycloSum::make(c.order, mult.iter().map(|(&e, &m)| (e as i64, BigInt::from(m)))).unwrap();
                    assert_eq!(from_mult, low);
                }
            }
        }
    }

    #[test]
    fn eigenvalue_multiset_examples() {
        let g = GroupData::build(17, 1).unwrap();
        let s1 = g.find(ClassFamily::Split(1)).unwrap();
        assert_eq!(g.eigenvalue_multiset(1, s1).unwrap(), BTreeMap::from([(0, 1), (1, 1), (7, 1)]));
        let inv = g.classes_of_order(2)[0].id;
        assert_eq!(g.eigenvalue_multiset(2, inv).unwrap(), BTreeMap::from([(0, 3), (1, 2)]));
        assert_eq!(g.eigenvalue_multiset(0, s1).unwrap(), BTreeMap::from([(0, 1)]));
        assert_eq!(g.eigenvalue_multiset(1, ClassId(1)), Err(Error::PSingular(1)));
    }
}
