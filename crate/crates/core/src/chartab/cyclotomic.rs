//! Exact arithmetic in cyclotomic fields Q(zeta_e).
//!
//! Values are polynomials in zeta of degree below phi(e), reduced modulo
//! the e-th cyclotomic polynomial. The reduction is canonical: equal values
//! have identical coefficient vectors, so equality, hashing, and ordering
//! are plain vector operations. Contexts (one per conductor) carry the
//! reduction table for every power zeta^0 .. zeta^(e-1) and are shared
//! through a global registry.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shared per-conductor data: the cyclotomic polynomial and the reduced
/// form of every power of zeta.
pub struct CycCtx {
    conductor: u64,
    /// Degree of the field extension, phi(conductor).
    degree: usize,
    /// `zeta_pow[m]` is zeta^m as a reduced coefficient vector.
    zeta_pow: Vec<Vec<BigInt>>,
}

impl CycCtx {
    /// The context for Q(zeta_conductor), built once and cached globally.
    pub fn get(conductor: u64) -> Arc<CycCtx> {
        static REGISTRY: OnceLock<Mutex<HashMap<u64, Arc<CycCtx>>>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = registry.lock().expect("cyclotomic registry poisoned");
        map.entry(conductor).or_insert_with(|| Arc::new(CycCtx::build(conductor))).clone()
    }

    fn build(conductor: u64) -> CycCtx {
        assert!(conductor >= 1, "conductor must be positive");
        let phi_e = cyclotomic_polynomial(conductor);
        let degree = phi_e.len() - 1;
        // zeta^degree = -(lower coefficients of Phi_e).
        let wrap: Vec<BigInt> = phi_e[..degree].iter().map(|c| -c).collect();
        let mut zeta_pow: Vec<Vec<BigInt>> = Vec::with_capacity(conductor as usize);
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..conductor {
            zeta_pow.push(current.clone());
            // Multiply by zeta: shift up, folding the overflow back in.
            let overflow = current[degree - 1].clone();
            for i in (1..degree).rev() {
                current[i] = current[i - 1].clone();
            }
            current[0] = BigInt::zero();
            if !overflow.is_zero() {
                for (i, w) in wrap.iter().enumerate() {
                    current[i] += &overflow * w;
                }
            }
        }
        debug_assert_eq!(current, zeta_pow[0], "zeta^e must reduce to 1");
        CycCtx { conductor, degree, zeta_pow }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// The e-th cyclotomic polynomial, monic with ascending integer
/// coefficients: `Phi_e = (x^e - 1) / prod_{d | e, d < e} Phi_d`.
pub fn cyclotomic_polynomial(e: u64) -> Vec<BigInt> {
    let mut memo: HashMap<u64, Vec<BigInt>> = HashMap::new();
    fn compute(e: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&e) {
            return p.clone();
        }
        // x^e - 1
        let mut num = vec![BigInt::zero(); e as usize + 1];
        num[0] = -BigInt::one();
        num[e as usize] = BigInt::one();
        for d in 1..e {
            if e.is_multiple_of(d) {
                let divisor = compute(d, memo);
                num = poly_div_exact(&num, &divisor);
            }
        }
        memo.insert(e, num.clone());
        num
    }
    compute(e, &mut memo)
}

/// Exact division of integer polynomials (ascending coefficients); the
/// divisor must be monic and divide evenly.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem = num.to_vec();
    let out_len = num.len() - den.len() + 1;
    let mut quot = vec![BigInt::zero(); out_len];
    for k in (0..out_len).rev() {
        let coeff = rem[k + den.len() - 1].clone();
        if coeff.is_zero() {
            continue;
        }
        quot[k] = coeff.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &coeff * d;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "polynomial division not exact");
    quot
}

/// An element of Q(zeta_e) in canonical reduced form.
#[derive(Clone)]
pub struct Cyclotomic {
    ctx: Arc<CycCtx>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Self {
        let ctx = CycCtx::get(conductor);
        let coeffs = vec![BigRational::zero(); ctx.degree];
        Self { ctx, coeffs }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_integer(conductor: u64, value: impl Into<BigInt>) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(value.into()))
    }

    pub fn from_rational(conductor: u64, value: BigRational) -> Self {
        let mut out = Self::zero(conductor);
        out.coeffs[0] = value;
        out
    }

    /// zeta_e^j.
    pub fn root_of_unity(conductor: u64, j: u64) -> Self {
        let ctx = CycCtx::get(conductor);
        let coeffs = ctx.zeta_pow[(j % conductor) as usize]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Self { ctx, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.ctx.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the value lies in Q: all non-constant coordinates vanish.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.ctx.conductor, other.ctx.conductor,
            "cyclotomic operands must share a conductor"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self { ctx: self.ctx.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self { ctx: self.ctx.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        Self { ctx: self.ctx.clone(), coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self { ctx: self.ctx.clone(), coeffs: vec![BigRational::zero(); self.ctx.degree] };
        }
        let coeffs = self.coeffs.iter().map(|a| a * factor).collect();
        Self { ctx: self.ctx.clone(), coeffs }
    }

    /// Schoolbook product over the non-zero coefficients, then reduction of
    /// the overflowing powers. Character values are sparse, so skipping
    /// zeros matters.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let d = self.ctx.degree;
        let mut buf = vec![BigRational::zero(); 2 * d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                buf[i + j] += a * b;
            }
        }
        let mut coeffs: Vec<BigRational> = buf[..d].to_vec();
        for (m, c) in buf.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            let reduced = &self.ctx.zeta_pow[m % self.ctx.conductor as usize];
            for (i, r) in reduced.iter().enumerate() {
                if !r.is_zero() {
                    coeffs[i] += c * &BigRational::from_integer(r.clone());
                }
            }
        }
        Self { ctx: self.ctx.clone(), coeffs }
    }

    /// Complex conjugation: zeta -> zeta^(e-1).
    pub fn conj(&self) -> Self {
        let e = self.ctx.conductor as usize;
        let mut coeffs = vec![BigRational::zero(); self.ctx.degree];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let reduced = &self.ctx.zeta_pow[(e - k) % e];
            for (i, r) in reduced.iter().enumerate() {
                if !r.is_zero() {
                    coeffs[i] += a * &BigRational::from_integer(r.clone());
                }
            }
        }
        Self { ctx: self.ctx.clone(), coeffs }
    }

    /// Total order by coefficient vectors, for deterministic sorting.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.ctx
            .conductor
            .cmp(&other.ctx.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Coefficients as decimal strings, for serialisation.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Rebuilds a value from decimal coefficient strings.
    pub fn from_coeff_strings(conductor: u64, coeffs: &[String]) -> Option<Self> {
        let ctx = CycCtx::get(conductor);
        if coeffs.len() != ctx.degree {
            return None;
        }
        let parsed: Option<Vec<BigRational>> =
            coeffs.iter().map(|s| s.parse().ok()).collect();
        Some(Self { ctx, coeffs: parsed? })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.coeffs == other.coeffs
    }
}
impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}[{}]", self.ctx.conductor, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let body = match (k, magnitude.is_one()) {
                (0, _) => magnitude.to_string(),
                (1, true) => "z".to_string(),
                (1, false) => format!("{magnitude}*z"),
                (_, true) => format!("z^{k}"),
                (_, false) => format!("{magnitude}*z^{k}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" "))
    }
}
