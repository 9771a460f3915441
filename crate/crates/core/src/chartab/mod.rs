//! Exact irreducible character tables and the character-theoretic routes
//! to Reidemeister numbers.
//!
//! Tables are computed by Dixon's method: diagonalise the class-sum
//! matrices over a suitable prime field, recover degrees and values mod p,
//! then lift each value to a sum of roots of unity by an inverse discrete
//! Fourier transform over the element order. Every returned table has been
//! checked against exact row and column orthogonality.

pub mod cyclotomic;
mod dixon;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::morphism::Endomorphism;

pub use cyclotomic::{CycCtx, Cyclotomic};

/// A function constant on conjugacy classes, with exact cyclotomic values.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: FiniteGroup,
    values: Vec<Cyclotomic>,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction({}, {:?})", self.group.name(), self.values)
    }
}

impl ClassFunction {
    pub fn new(group: FiniteGroup, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), group.classes().count());
        Self { group, values }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn value_at_element(&self, g: usize) -> &Cyclotomic {
        &self.values[self.group.classes().class_of[g]]
    }
}

/// The exact irreducible character table of a finite group.
pub struct CharacterTable {
    group: FiniteGroup,
    conductor: u64,
    rows: Vec<ClassFunction>,
    degrees: Vec<usize>,
}

impl std::fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CharacterTable({}, {} rows, conductor {})",
            self.group.name(),
            self.rows.len(),
            self.conductor
        )
    }
}

impl CharacterTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Index of the all-ones row.
    pub fn trivial_row(&self) -> usize {
        let one = Cyclotomic::one(self.conductor);
        self.rows
            .iter()
            .position(|row| row.values.iter().all(|v| *v == one))
            .expect("every table contains the trivial character")
    }

    /// Re-checks every table invariant: row count, degrees, sum of squared
    /// degrees, and exact row and column orthogonality.
    pub fn verify(&self) -> Result<()> {
        let classes = self.group.classes();
        let r = classes.count();
        let n = self.group.order();
        if self.rows.len() != r {
            return Err(Error::LiftingFailure {
                detail: format!("{} rows for {r} classes", self.rows.len()),
            });
        }
        if self.degrees.iter().map(|d| d * d).sum::<usize>() != n {
            return Err(Error::LiftingFailure {
                detail: "degrees do not satisfy sum d^2 = |G|".into(),
            });
        }
        for (t, row) in self.rows.iter().enumerate() {
            if *row.value(0) != Cyclotomic::from_integer(self.conductor, self.degrees[t] as i64)
            {
                return Err(Error::LiftingFailure {
                    detail: format!("row {t} does not take its degree at the identity"),
                });
            }
        }
        for i in 0..r {
            for j in i..r {
                let expected = if i == j { BigRational::one() } else { BigRational::zero() };
                if inner_product(&self.rows[i], &self.rows[j])? != expected {
                    return Err(Error::LiftingFailure {
                        detail: format!("row orthogonality fails at ({i}, {j})"),
                    });
                }
            }
        }
        for x in 0..r {
            for y in x..r {
                let mut sum = Cyclotomic::zero(self.conductor);
                for row in &self.rows {
                    sum = sum.add(&row.value(x).mul(&row.value(y).conj()));
                }
                let expected = if x == y {
                    Cyclotomic::from_integer(self.conductor, classes.centralizer_orders[x] as i64)
                } else {
                    Cyclotomic::zero(self.conductor)
                };
                if sum != expected {
                    return Err(Error::LiftingFailure {
                        detail: format!("column orthogonality fails at ({x}, {y})"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn export(&self) -> CharacterTableExport {
        let classes = self.group.classes();
        CharacterTableExport {
            group: self.group.name().to_string(),
            order: self.group.order(),
            conductor: self.conductor,
            class_representatives: classes.representatives.clone(),
            class_sizes: classes.class_sizes.clone(),
            rows: self
                .rows
                .iter()
                .zip(&self.degrees)
                .map(|(row, &degree)| CharacterRowExport {
                    degree,
                    values: row.values.iter().map(|v| v.coeff_strings()).collect(),
                })
                .collect(),
        }
    }
}

/// JSON-exportable table: values are coefficient vectors over the power
/// basis of the conductor'th cyclotomic field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterTableExport {
    pub group: String,
    pub order: usize,
    pub conductor: u64,
    pub class_representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub rows: Vec<CharacterRowExport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterRowExport {
    pub degree: usize,
    pub values: Vec<Vec<String>>,
}

impl CharacterTableExport {
    /// Reconstructs the exact values; None on malformed coefficients.
    pub fn row_values(&self, row: usize) -> Option<Vec<Cyclotomic>> {
        self.rows[row]
            .values
            .iter()
            .map(|coeffs| Cyclotomic::from_coeff_strings(self.conductor, coeffs))
            .collect()
    }
}

/// The character table of a group, computed once per group and shared.
pub fn character_table(group: &FiniteGroup) -> Result<Arc<CharacterTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CharacterTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(table) = cache.lock().expect("table cache poisoned").get(&group.id()) {
        return Ok(table.clone());
    }
    let table = Arc::new(compute_table(group)?);
    cache
        .lock()
        .expect("table cache poisoned")
        .insert(group.id(), table.clone());
    Ok(table)
}

fn compute_table(group: &FiniteGroup) -> Result<CharacterTable> {
    let classes = group.classes();
    let r = classes.count();
    let e = group.exponent();
    let modp = dixon::modp_character_table(group)?;
    let field = dixon::Fp { p: modp.p };

    // Powers of each class representative, as class indices.
    let power_classes: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            let g = classes.representatives[i];
            let m = group.element_order(g);
            let mut x = 0;
            (0..m)
                .map(|_| {
                    let c = classes.class_of[x];
                    x = group.mul(x, g);
                    c
                })
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(r);
    for t in 0..r {
        let degree = modp.degrees[t];
        let mut values = Vec::with_capacity(r);
        for powers in &power_classes {
            let m = powers.len() as u64;
            let zeta_m = field.pow(modp.zeta, e / m);
            let m_inv = field.inv(m % modp.p);
            let mut total = BigInt::zero();
            let mut value = Cyclotomic::zero(e);
            // Multiplicity of zeta_m^j among the eigenvalues of the image
            // of g_i: an inverse DFT of the power map values mod p.
            for j in 0..m {
                let mut acc = 0u64;
                for (k, &cls) in powers.iter().enumerate() {
                    let expo = (m - (j * k as u64) % m) % m;
                    acc = field.add(acc, field.mul(modp.values[t][cls], field.pow(zeta_m, expo)));
                }
                let count = field.mul(acc, m_inv);
                if count > degree {
                    return Err(Error::LiftingFailure {
                        detail: format!("row {t}: multiplicity {count} exceeds degree {degree}"),
                    });
                }
                if count > 0 {
                    total += BigInt::from(count);
                    value = value.add(
                        &Cyclotomic::root_of_unity(e, j * (e / m))
                            .scale(&BigRational::from_integer(count.into())),
                    );
                }
            }
            if total != BigInt::from(degree) {
                return Err(Error::LiftingFailure {
                    detail: format!("row {t}: multiplicities sum to {total}, not {degree}"),
                });
            }
            values.push(value);
        }
        rows.push((degree as usize, values));
    }

    // Deterministic order: by degree, then by values, largest coefficient
    // vectors first. This puts the trivial character at the top.
    rows.sort_by(|(da, va), (db, vb)| {
        da.cmp(db).then_with(|| {
            for (x, y) in va.iter().zip(vb) {
                match x.lex_cmp(y) {
                    std::cmp::Ordering::Equal => continue,
                    other => return other.reverse(),
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let degrees: Vec<usize> = rows.iter().map(|(d, _)| *d).collect();
    let rows: Vec<ClassFunction> = rows
        .into_iter()
        .map(|(_, values)| ClassFunction::new(group.clone(), values))
        .collect();
    let table = CharacterTable { group: group.clone(), conductor: e, rows, degrees };
    table.verify()?;
    Ok(table)
}

/// `chi . phi`: the pullback of a class function along an endomorphism.
/// Well defined because conjugate elements have conjugate images.
pub fn pullback(chi: &ClassFunction, phi: &Endomorphism) -> Result<ClassFunction> {
    if chi.group() != phi.group() {
        return Err(Error::GroupMismatch);
    }
    let classes = chi.group.classes();
    let values = classes
        .representatives
        .iter()
        .map(|&rep| chi.values[classes.class_of[phi.apply(rep)]].clone())
        .collect();
    Ok(ClassFunction { group: chi.group.clone(), values })
}

/// `(1/|G|) sum_g alpha(g) conj(beta(g))`, which is rational at every call
/// site in this crate (both arguments are characters).
pub fn inner_product(alpha: &ClassFunction, beta: &ClassFunction) -> Result<BigRational> {
    if alpha.group() != beta.group() {
        return Err(Error::GroupMismatch);
    }
    let classes = alpha.group.classes();
    let conductor = alpha.values[0].conductor();
    let mut sum = Cyclotomic::zero(conductor);
    for c in 0..classes.count() {
        let term = alpha.values[c].mul(&beta.values[c].conj());
        sum = sum.add(&term.scale(&BigRational::from_integer(classes.class_sizes[c].into())));
    }
    let scaled = sum.scale(&BigRational::new(
        BigInt::one(),
        BigInt::from(alpha.group.order()),
    ));
    scaled.to_rational().ok_or(Error::NonRationalResult)
}

/// The character of the twisted conjugation action, by the closed form:
/// theta(g) = |C_G(phi(g))| when phi(g) and psi(g) are conjugate, else 0.
pub fn theta_direct(phi: &Endomorphism, psi: &Endomorphism) -> Result<ClassFunction> {
    if phi.group() != psi.group() {
        return Err(Error::GroupMismatch);
    }
    let group = phi.group();
    let classes = group.classes();
    let e = group.exponent();
    let values: Vec<Cyclotomic> = classes
        .representatives
        .iter()
        .map(|&g| {
            let a = classes.class_of[phi.apply(g)];
            let b = classes.class_of[psi.apply(g)];
            if a == b {
                Cyclotomic::from_integer(e, classes.centralizer_orders[a] as i64)
            } else {
                Cyclotomic::zero(e)
            }
        })
        .collect();
    #[cfg(debug_assertions)]
    audit_theta_against_literal_count(group, phi, psi, &values);
    Ok(ClassFunction { group: group.clone(), values })
}

/// Spot check of the closed form against literally counting fixed points
/// of `x -> phi(g) x psi(g)^-1` for a few sampled g. Test builds only.
#[cfg(debug_assertions)]
fn audit_theta_against_literal_count(
    group: &FiniteGroup,
    phi: &Endomorphism,
    psi: &Endomorphism,
    values: &[Cyclotomic],
) {
    let classes = group.classes();
    let n = group.order();
    let mut state = 0x5851f42d4c957f2du64 ^ (n as u64);
    for _ in 0..10 {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let g = (state >> 33) as usize % n;
        let pg = phi.apply(g);
        let qg_inv = group.inv(psi.apply(g));
        let literal = (0..n)
            .filter(|&x| group.mul(group.mul(pg, x), qg_inv) == x)
            .count();
        let expected = Cyclotomic::from_integer(group.exponent(), literal as i64);
        debug_assert_eq!(values[classes.class_of[g]], expected);
    }
}

/// The same character assembled from the table:
/// `theta = sum_chi (chi . phi) conj(chi . psi)`, pointwise.
pub fn theta_from_characters(
    table: &CharacterTable,
    phi: &Endomorphism,
    psi: &Endomorphism,
) -> Result<ClassFunction> {
    if table.group() != phi.group() || phi.group() != psi.group() {
        return Err(Error::GroupMismatch);
    }
    let r = table.rows.len();
    let mut values = vec![Cyclotomic::zero(table.conductor); r];
    for chi in &table.rows {
        let along_phi = pullback(chi, phi)?;
        let along_psi = pullback(chi, psi)?;
        for ((value, a), b) in values.iter_mut().zip(&along_phi.values).zip(&along_psi.values) {
            *value = value.add(&a.mul(&b.conj()));
        }
    }
    Ok(ClassFunction { group: table.group.clone(), values })
}

/// R(phi, psi) from characters, by two expressions that must agree:
/// the multiplicity of the trivial character in theta, and the sum of
/// `<chi . phi, chi . psi>` over the irreducible rows.
pub fn reidemeister_via_characters(
    table: &CharacterTable,
    phi: &Endomorphism,
    psi: &Endomorphism,
) -> Result<usize> {
    if table.group() != phi.group() || phi.group() != psi.group() {
        return Err(Error::GroupMismatch);
    }
    let theta = theta_direct(phi, psi)?;
    let trivial = &table.rows[table.trivial_row()];
    let via_theta = inner_product(&theta, trivial)?;
    let mut via_sum = BigRational::zero();
    for chi in &table.rows {
        let along_phi = pullback(chi, phi)?;
        let along_psi = pullback(chi, psi)?;
        let term = inner_product(&along_phi, &along_psi)?;
        if !term.is_integer() || term.is_negative() {
            return Err(Error::InternalMismatch {
                detail: format!("<chi.phi, chi.psi> = {term} is not a nonnegative integer"),
            });
        }
        via_sum += term;
    }
    if via_theta != via_sum || !via_theta.is_integer() {
        return Err(Error::InternalMismatch {
            detail: format!("<theta,1> = {via_theta} but sum of inner products = {via_sum}"),
        });
    }
    let value = via_theta.to_integer();
    usize::try_from(&value).map_err(|_| Error::InternalMismatch {
        detail: format!("character count {value} out of range"),
    })
}

/// The permutation of table rows induced by pulling back along an
/// automorphism.
pub fn dual_map(table: &CharacterTable, phi: &Endomorphism) -> Result<Vec<usize>> {
    if table.group() != phi.group() {
        return Err(Error::GroupMismatch);
    }
    if !phi.is_bijective() {
        return Err(Error::NotAutomorphism);
    }
    let index_of: HashMap<&[Cyclotomic], usize> = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| (row.values.as_slice(), i))
        .collect();
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let pulled = pullback(chi, phi)?;
            index_of
                .get(pulled.values.as_slice())
                .copied()
                .ok_or(Error::RowMatchFailure { row: i })
        })
        .collect()
}

/// |Coin(dual phi, dual psi)|: rows on which the two dual maps agree.
/// Equals R(phi, psi) for automorphisms.
pub fn dual_coincidence_count(
    table: &CharacterTable,
    phi: &Endomorphism,
    psi: &Endomorphism,
) -> Result<usize> {
    let along_phi = dual_map(table, phi)?;
    let along_psi = dual_map(table, psi)?;
    Ok(along_phi
        .iter()
        .zip(&along_psi)
        .filter(|(a, b)| a == b)
        .count())
}

/// True iff theta is the regular character: |G| at the identity class and
/// zero elsewhere.
pub fn is_regular_character(theta: &ClassFunction) -> bool {
    let n = theta.group.order() as i64;
    let conductor = theta.values[0].conductor();
    theta.values[0] == Cyclotomic::from_integer(conductor, n)
        && theta.values[1..].iter().all(|v| v.is_zero())
}

/// True when the degree pattern rules out a fixed-point-free automorphism:
/// exactly two linear characters, or a unique character of some degree
/// d >= 2.
pub fn fpf_obstruction(table: &CharacterTable) -> bool {
    let linear = table.degrees.iter().filter(|&&d| d == 1).count();
    if linear == 2 {
        return true;
    }
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &d in &table.degrees {
        *counts.entry(d).or_insert(0) += 1;
    }
    counts.iter().any(|(&d, &count)| d >= 2 && count == 1)
}

/// The element-wise class sum `sum_{g : [phi(g)]=[psi(g)]}
/// conj(chi(g)) / |[phi(g)]|`, the other side of the inner-product
/// identity for theta.
pub fn theta_inner_product_class_sum(
    chi: &ClassFunction,
    phi: &Endomorphism,
    psi: &Endomorphism,
) -> Result<Cyclotomic> {
    if chi.group() != phi.group() || phi.group() != psi.group() {
        return Err(Error::GroupMismatch);
    }
    let group = chi.group();
    let classes = group.classes();
    let conductor = chi.values[0].conductor();
    let mut sum = Cyclotomic::zero(conductor);
    for g in 0..group.order() {
        let a = classes.class_of[phi.apply(g)];
        if a == classes.class_of[psi.apply(g)] {
            let weight = BigRational::new(BigInt::one(), BigInt::from(classes.class_sizes[a]));
            sum = sum.add(&chi.value_at_element(g).conj().scale(&weight));
        }
    }
    Ok(sum)
}
