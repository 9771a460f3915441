//! Divisor-sum congruences for fixed-point counts and Reidemeister
//! numbers, together with the arithmetic functions that drive them.
//!
//! A function `theta: N -> Z` with `sum_{d|n} theta(d) = 0 mod n` for all n
//! turns any sequence of fixed-point counts `|Fix(f^d)|` into the
//! congruence `sum_{d|n} theta(n/d) |Fix(f^d)| = 0 mod n`. Applied to the
//! induced map on conjugacy classes this yields congruences between the
//! Reidemeister numbers of powers of an endomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::Endomorphism;
use crate::twisted;

pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Jordan totient `J_k(n) = n^k prod_{p|n} (1 - p^-k)`; `J_1` is Euler phi.
pub fn jordan_totient(k: u32, n: u64) -> BigInt {
    assert!(k >= 1 && n >= 1);
    factorize(n).into_iter().fold(BigInt::from(1), |acc, (p, e)| {
        let pk = BigInt::from(p).pow(k);
        let lower = pk.clone().pow(e - 1);
        acc * lower * (pk - 1)
    })
}

/// An integer-valued arithmetic function, named for reporting.
#[derive(Clone)]
pub struct ArithmeticFunction {
    name: String,
    eval: Arc<dyn Fn(u64) -> BigInt + Send + Sync>,
}

impl std::fmt::Debug for ArithmeticFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ArithmeticFunction({})", self.name)
    }
}

impl ArithmeticFunction {
    pub fn euler_phi() -> Self {
        Self { name: "euler_phi".into(), eval: Arc::new(|n| BigInt::from(euler_phi(n))) }
    }

    pub fn moebius() -> Self {
        Self { name: "moebius".into(), eval: Arc::new(|n| BigInt::from(moebius(n))) }
    }

    pub fn jordan(k: u32) -> Self {
        Self {
            name: format!("jordan({k})"),
            eval: Arc::new(move |n| jordan_totient(k, n)),
        }
    }

    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(u64) -> BigInt + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), eval: Arc::new(eval) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, n: u64) -> BigInt {
        (self.eval)(n)
    }
}

/// Outcome of checking `sum_{d|n} theta(d) = 0 mod n` for all `n <= bound`.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaConditionReport {
    pub bound: u64,
    /// (n, offending sum) for every violated n.
    pub violations: Vec<(u64, String)>,
}

impl ThetaConditionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_theta_condition(theta: &ArithmeticFunction, bound: u64) -> ThetaConditionReport {
    let mut violations = Vec::new();
    for n in 1..=bound {
        let sum: BigInt = divisors(n).into_iter().map(|d| theta.eval(d)).sum();
        if !(&sum % BigInt::from(n)).is_zero() {
            violations.push((n, sum.to_string()));
        }
    }
    ThetaConditionReport { bound, violations }
}

/// Sizes of the sets of points with exact least period `d`, for `d | n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPartition {
    pub n: u64,
    /// d -> |X_d|.
    pub sizes: BTreeMap<u64, usize>,
}

/// Classifies the points of a self-map by least period. Pre-periodic points
/// (never returning to themselves) belong to no `X_d`.
pub fn periodic_point_partition(f: &[usize], n: u64) -> PeriodicPartition {
    let mut sizes: BTreeMap<u64, usize> = divisors(n).into_iter().map(|d| (d, 0)).collect();
    for start in 0..f.len() {
        let mut x = f[start];
        let mut period = 1u64;
        while x != start && period <= f.len() as u64 {
            x = f[x];
            period += 1;
        }
        if x == start {
            if let Some(slot) = sizes.get_mut(&period) {
                *slot += 1;
            }
        }
    }
    PeriodicPartition { n, sizes }
}

fn fix_count(f: &[usize], power: u64) -> usize {
    (0..f.len())
        .filter(|&start| {
            let mut x = start;
            for _ in 0..power {
                x = f[x];
            }
            x == start
        })
        .count()
}

/// One term `theta(n/d) * a_d` of a divisor-sum congruence.
#[derive(Debug, Clone, Serialize)]
pub struct CongruenceTerm {
    pub d: u64,
    pub theta_factor: String,
    pub count: usize,
}

/// The full congruence `sum_{d|n} theta(n/d) a_d = 0 mod n`.
#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub n: u64,
    pub theta: String,
    pub terms: Vec<CongruenceTerm>,
    pub total: String,
    pub passes: bool,
}

fn congruence_from_counts(
    n: u64,
    theta: &ArithmeticFunction,
    counts: impl Fn(u64) -> usize,
) -> CongruenceReport {
    let mut terms = Vec::new();
    let mut total = BigInt::zero();
    for d in divisors(n) {
        let factor = theta.eval(n / d);
        let count = counts(d);
        total += &factor * BigInt::from(count);
        terms.push(CongruenceTerm { d, theta_factor: factor.to_string(), count });
    }
    let passes = (&total % BigInt::from(n)).is_zero();
    CongruenceReport { n, theta: theta.name().to_string(), terms, total: total.to_string(), passes }
}

/// The congruence applied to the fixed-point counts of an arbitrary
/// self-map on a finite set.
pub fn self_map_congruence(f: &[usize], n: u64, theta: &ArithmeticFunction) -> CongruenceReport {
    congruence_from_counts(n, theta, |d| fix_count(f, d))
}

/// The congruence `sum_{d|n} theta(n/d) R(psi^d) = 0 mod n`, with every
/// Reidemeister number computed by the orbit oracle.
pub fn gauss_congruence(
    psi: &Endomorphism,
    n: u64,
    theta: &ArithmeticFunction,
) -> Result<CongruenceReport> {
    let check = verify_theta_condition(theta, n);
    if let Some(&(bad, _)) = check.violations.first() {
        return Err(Error::ThetaConditionViolated { n: bad });
    }
    let id = Endomorphism::identity(psi.group());
    let r_of_power = |d: u64| -> usize {
        let power = psi.power(d as usize);
        twisted::twisted_classes(&id, &power).expect("same group").count()
    };
    Ok(congruence_from_counts(n, theta, r_of_power))
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeCongruenceReport {
    pub p: u64,
    pub r_psi: usize,
    pub r_psi_p: usize,
    pub passes: bool,
}

/// `R(psi^p) = R(psi) mod p` for prime p.
pub fn prime_power_congruence(psi: &Endomorphism, p: u64) -> Result<PrimeCongruenceReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    let id = Endomorphism::identity(psi.group());
    let r_psi = twisted::twisted_classes(&id, psi)?.count();
    let r_psi_p = twisted::twisted_classes(&id, &psi.power(p as usize))?.count();
    let passes = (r_psi_p as i64 - r_psi as i64).rem_euclid(p as i64) == 0;
    Ok(PrimeCongruenceReport { p, r_psi, r_psi_p, passes })
}
