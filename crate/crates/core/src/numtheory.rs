//! Elementary arithmetic functions and the trace of a root of unity.
//!
//! All inputs stay small (well below `10^9`), so factorization is plain
//! trial division.

use num_integer::Integer;

use crate::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs in ascending prime order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(Factorization(out))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && matches!(factorize(n).map(|f| f.0), Ok(v) if v == [(n, 1)])
}

pub fn mobius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.0.len() % 2 == 0 { 1 } else { -1 })
}

pub fn totient(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.0.iter().fold(n, |acc, &(p, _)| acc / p * (p - 1)))
}

/// `e mod t` in `[0, t)`; `t` must be positive.
pub fn reduce_mod(e: i64, t: u64) -> u64 {
    e.rem_euclid(t as i64) as u64
}

/// Trace from `Q(ζ_t)` down to `Q` of `ζ_t^e`.
///
/// With `s = t / gcd(t, e)` the order of `ζ_t^e`, the trace is
/// `μ(s) · φ(t) / φ(s)`.
pub fn trace_cyclo(t: u64, e: i64) -> Result<i64> {
    if t == 0 {
        return Err(Error::Zero);
    }
    let e = reduce_mod(e, t);
    let s = t / t.gcd(&e);
    let mu = mobius(s)?;
    if mu == 0 {
        return Ok(0);
    }
    Ok(mu * (totient(t)? / totient(s)?) as i64)
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Modular exponentiation for moduli below `2^32`.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    /// Galois sum over `σ_i: ζ_t -> ζ_t^i`, evaluated in floating point.
    fn numeric_trace(t: u64, e: i64) -> (f64, f64) {
        (1..=t)
            .filter(|&i| gcd(i, t) == 1)
            .map(|i| {
                let angle = TAU * (i as f64) * (e as f64) / (t as f64);
                (angle.cos(), angle.sin())
            })
            .fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d))
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(168).unwrap().factors(), &[(2, 3), (3, 1), (7, 1)]);
        assert_eq!(factorize(0), Err(Error::Zero));
    }

    #[test]
    fn factorize_matches_trial_division_oracle() {
        for n in 1..2000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            let mut primes: Vec<u64> = (2..=n).filter(|&d| n % d == 0 && (2..d).all(|k| d % k != 0)).collect();
            primes.sort();
            assert_eq!(f.primes().collect::<Vec<_>>(), primes, "n = {n}");
        }
    }

    #[test]
    fn mobius_and_totient_examples() {
        assert_eq!(mobius(1), Ok(1));
        assert_eq!(mobius(2), Ok(-1));
        assert_eq!(mobius(4), Ok(0));
        assert_eq!(mobius(30), Ok(-1));
        assert_eq!(mobius(0), Err(Error::Zero));
        assert_eq!(totient(1), Ok(1));
        assert_eq!(totient(9), Ok(6));
        assert_eq!(totient(100), Ok(40));
        assert_eq!(totient(0), Err(Error::Zero));
        for n in 1..300u64 {
            let brute = (1..=n).filter(|&i| gcd(i, n) == 1).count() as u64;
            assert_eq!(totient(n).unwrap(), brute);
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_cyclo(9, 0), Ok(6));
        assert_eq!(trace_cyclo(9, 3), Ok(-3));
        assert_eq!(trace_cyclo(16, 4), Ok(0));
        assert_eq!(trace_cyclo(8, 4), Ok(-4));
        assert_eq!(trace_cyclo(0, 1), Err(Error::Zero));
    }

    #[test]
    fn trace_matches_numeric_galois_sum() {
        for t in 1..=100u64 {
            for e in -(t as i64)..(2 * t as i64) {
                let exact = trace_cyclo(t, e).unwrap() as f64;
                let (re, im) = numeric_trace(t, e);
                assert!((exact - re).abs() < 1e-6, "t={t} e={e}: {exact} vs {re}");
                assert!(im.abs() < 1e-6);
                assert_eq!(trace_cyclo(t, e), trace_cyclo(t, -e));
            }
            assert_eq!(trace_cyclo(t, 0).unwrap() as u64, totient(t).unwrap());
        }
    }

    #[test]
    fn trace_prime_power_congruence_table() {
        for r in [2u64, 3, 5] {
            for n in 1..=4u32 {
                let rn = r.pow(n);
                let top = (r.pow(n - 1) * (r - 1)) as i64;
                let mid = -(r.pow(n - 1) as i64);
                for m in 0..=n {
                    // ζ_{r^m} inside Q(ζ_{r^n})
                    let plain = trace_cyclo(rn, (rn / r.pow(m)) as i64).unwrap();
                    let want = match m {
                        0 => top,
                        1 => mid,
                        _ => 0,
                    };
                    assert_eq!(plain, want);
                    if m == 0 {
                        continue;
                    }
                    let rm = r.pow(m) as i64;
                    let step = (rn / r.pow(m)) as i64;
                    let units: Vec<i64> = (1..rm).filter(|i| i % r as i64 != 0).collect();
                    for &i in &units {
                        for &j in &units {
                            let got = trace_cyclo(rn, (i - j) * step).unwrap();
                            let want = if (i - j) % rm == 0 {
                                top
                            } else if (i - j) % (rm / r as i64) == 0 {
                                mid
                            } else {
                                0
                            };
                            assert_eq!(got, want, "r={r} n={n} m={m} i={i} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
