//! Formal integer combinations of roots of unity.
//!
//! A [`CycloSum`] is `Σ c_e ζ_n^e` stored as a sparse map from exponent
//! classes mod `n` to nonzero integer coefficients. No reduction modulo the
//! cyclotomic polynomial happens, so two different maps may denote the same
//! algebraic number; everything downstream only uses the trace, which is
//! linear and therefore independent of the representative.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numtheory::{reduce_mod, trace_cyclo};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloSum {
    conductor: u64,
    coeffs: BTreeMap<u64, BigInt>,
}

impl CycloSum {
    /// Builds a sum in canonical form: exponents reduced, like terms merged,
    /// zero coefficients dropped.
    pub fn make<I, C>(conductor: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        if conductor == 0 {
            return Err(Error::Zero);
        }
        let mut out = CycloSum::zero(conductor)?;
        for (e, c) in terms {
            out.add_term(reduce_mod(e, conductor), c.into());
        }
        Ok(out)
    }

    pub fn zero(conductor: u64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::Zero);
        }
        Ok(CycloSum { conductor, coeffs: BTreeMap::new() })
    }

    pub fn constant(conductor: u64, c: impl Into<BigInt>) -> Result<Self> {
        Self::make(conductor, [(0, c.into())])
    }

    /// `ζ_n^e`.
    pub fn root(conductor: u64, e: i64) -> Result<Self> {
        Self::make(conductor, [(e, BigInt::one())])
    }

    fn add_term(&mut self, e: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, e: u64) -> BigInt {
        self.coeffs.get(&(e % self.conductor)).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &CycloSum) -> Result<CycloSum> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigInt) -> CycloSum {
        if factor.is_zero() {
            return CycloSum { conductor: self.conductor, coeffs: BTreeMap::new() };
        }
        CycloSum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * factor)).collect() }
    }

    /// Multiplies by `ζ_n^e`.
    pub fn mul_by_root(&self, e: i64) -> CycloSum {
        let shift = reduce_mod(e, self.conductor);
        CycloSum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(&x, c)| ((x + shift) % self.conductor, c.clone())).collect(),
        }
    }

    /// Complex conjugation, `ζ^e -> ζ^{-e}`.
    pub fn conjugate(&self) -> CycloSum {
        let n = self.conductor;
        CycloSum { conductor: n, coeffs: self.coeffs.iter().map(|(&e, c)| ((n - e) % n, c.clone())).collect() }
    }

    /// Re-expresses the same number over a multiple of the conductor.
    pub fn rebase(&self, new_conductor: u64) -> Result<CycloSum> {
        if new_conductor == 0 || !new_conductor.is_multiple_of(self.conductor) {
            return Err(Error::BadRebase { from: self.conductor, to: new_conductor });
        }
        let m = new_conductor / self.conductor;
        Ok(CycloSum {
            conductor: new_conductor,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * m, c.clone())).collect(),
        })
    }

    /// Re-expresses the same number over a divisor of the conductor. Fails
    /// unless every stored exponent is a multiple of `conductor / new_conductor`.
    pub fn descend(&self, new_conductor: u64) -> Result<CycloSum> {
        let bad = Error::BadRebase { from: self.conductor, to: new_conductor };
        if new_conductor == 0 || !self.conductor.is_multiple_of(new_conductor) {
            return Err(bad);
        }
        let m = self.conductor / new_conductor;
        if self.coeffs.keys().any(|e| e % m != 0) {
            return Err(bad);
        }
        Ok(CycloSum {
            conductor: new_conductor,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e / m, c.clone())).collect(),
        })
    }

    /// Trace from `Q(ζ_n)` to `Q`, where `n` is the conductor.
    pub fn trace_to_q(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&e, c)| {
                // conductor > 0 and e < conductor, so this cannot fail
                c * trace_cyclo(self.conductor, e as i64).expect("nonzero conductor")
            })
            .sum()
    }

    pub fn numeric_embed(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .map(|(&e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / n) * c
            })
            .sum()
    }
}

impl fmt::Display for CycloSum {
    /// Renders e.g. `1 + 2·ζ_4^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "ζ_{}", self.conductor)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
