//! (phi, psi)-twisted conjugacy: class partitions, Reidemeister numbers by
//! four independent methods, stabilisers, spectra, and the structural
//! equalities and inequalities between them.
//!
//! Two elements x, y are (phi, psi)-conjugate when `x = phi(z) y psi(z)^-1`
//! for some z; equivalently they lie in one orbit of the action
//! `g . h = phi(g) h psi(g)^-1`. The orbit partition is the reference
//! computation ("oracle") that every other method is checked against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::chartab;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::morphism::{self, Endomorphism};

/// The partition of a group into (phi, psi)-conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedClassPartition {
    /// Element index -> class index; classes numbered by least member.
    pub class_of: Vec<usize>,
    /// Least element of each class.
    pub representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub method: ReidemeisterMethod,
}

impl TwistedClassPartition {
    /// The Reidemeister number: the number of classes.
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// The independent routes to a Reidemeister number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReidemeisterMethod {
    /// Orbits of the twisted conjugation action (the oracle).
    Orbits,
    /// Burnside's lemma: average number of fixed points.
    Burnside,
    /// Exact class-sum formula over ordinary conjugacy classes.
    ClassSum,
    /// Sum of inner products of pulled-back irreducible characters.
    Characters,
}

impl ReidemeisterMethod {
    pub const ALL: [ReidemeisterMethod; 4] = [
        ReidemeisterMethod::Orbits,
        ReidemeisterMethod::Burnside,
        ReidemeisterMethod::ClassSum,
        ReidemeisterMethod::Characters,
    ];
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

fn expect_same_group<'a>(
    phi: &'a Endomorphism,
    psi: &'a Endomorphism,
) -> Result<&'a FiniteGroup> {
    if phi.group() != psi.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(phi.group())
}

/// Orbit partition of the twisted conjugation action, via union-find over
/// a generating set. The action is a homomorphism into Sym(G), so the
/// orbits of the generators' moves are the orbits of the whole group.
pub fn twisted_classes(phi: &Endomorphism, psi: &Endomorphism) -> Result<TwistedClassPartition> {
    let group = expect_same_group(phi, psi)?;
    let n = group.order();
    let mut uf = UnionFind::new(n);
    for &g in group.generating_set() {
        let pg = phi.apply(g);
        let qg_inv = group.inv(psi.apply(g));
        for h in 0..n {
            let moved = group.mul(group.mul(pg, h), qg_inv);
            uf.union(h, moved);
        }
    }
    let mut root_class = vec![usize::MAX; n];
    let mut class_of = vec![0usize; n];
    let mut representatives = Vec::new();
    let mut class_sizes = Vec::new();
    for (h, slot) in class_of.iter_mut().enumerate() {
        let root = uf.find(h);
        if root_class[root] == usize::MAX {
            root_class[root] = representatives.len();
            representatives.push(h);
            class_sizes.push(0);
        }
        let c = root_class[root];
        *slot = c;
        class_sizes[c] += 1;
    }
    Ok(TwistedClassPartition {
        class_of,
        representatives,
        class_sizes,
        method: ReidemeisterMethod::Orbits,
    })
}

/// R(phi, psi) by the chosen method. All methods agree; `Orbits` is the
/// reference the others are validated against.
pub fn reidemeister_number(
    phi: &Endomorphism,
    psi: &Endomorphism,
    method: ReidemeisterMethod,
) -> Result<usize> {
    match method {
        ReidemeisterMethod::Orbits => Ok(twisted_classes(phi, psi)?.count()),
        ReidemeisterMethod::Burnside => burnside_count(phi, psi),
        ReidemeisterMethod::ClassSum => class_sum_count(phi, psi),
        ReidemeisterMethod::Characters => {
            let table = chartab::character_table(expect_same_group(phi, psi)?)?;
            chartab::reidemeister_via_characters(&table, phi, psi)
        }
    }
}

/// Burnside's lemma: `R = (1/|G|) sum_g |Fix(T(g))|`, counting literally.
fn burnside_count(phi: &Endomorphism, psi: &Endomorphism) -> Result<usize> {
    let group = expect_same_group(phi, psi)?;
    let n = group.order();
    let mut total: u64 = 0;
    for g in 0..n {
        let pg = phi.apply(g);
        let qg_inv = group.inv(psi.apply(g));
        for x in 0..n {
            if group.mul(group.mul(pg, x), qg_inv) == x {
                total += 1;
            }
        }
    }
    if !total.is_multiple_of(n as u64) {
        return Err(Error::NonIntegerSum {
            detail: format!("Burnside total {total} not divisible by {n}"),
        });
    }
    Ok((total / n as u64) as usize)
}

/// Class-sum formula: `R = sum |[g]| / |[phi(g)]|` over ordinary classes
/// with `[phi(g)] = [psi(g)]`, accumulated as exact rationals.
fn class_sum_count(phi: &Endomorphism, psi: &Endomorphism) -> Result<usize> {
    let group = expect_same_group(phi, psi)?;
    let classes = group.classes();
    let mut total = BigRational::zero();
    for c in 0..classes.count() {
        let rep = classes.representatives[c];
        let target = classes.class_of[phi.apply(rep)];
        if target == classes.class_of[psi.apply(rep)] {
            total += BigRational::new(
                BigInt::from(classes.class_sizes[c]),
                BigInt::from(classes.class_sizes[target]),
            );
        }
    }
    if !total.is_integer() {
        return Err(Error::NonIntegerSum { detail: format!("class sum = {total}") });
    }
    let value = total.to_integer();
    usize::try_from(&value).map_err(|_| Error::NonIntegerSum {
        detail: format!("class sum {value} out of range"),
    })
}

/// The (phi, psi)-stabiliser of x: all g with `phi(g) x psi(g)^-1 = x`.
pub fn stabilizer(phi: &Endomorphism, psi: &Endomorphism, x: usize) -> Result<Vec<usize>> {
    let group = expect_same_group(phi, psi)?;
    Ok((0..group.order())
        .filter(|&g| {
            group.mul(group.mul(phi.apply(g), x), group.inv(psi.apply(g))) == x
        })
        .collect())
}

/// For an arbitrary action of the group, the number of elements carrying
/// x to y. Zero when y is outside the orbit of x; otherwise |Stab(x)|.
pub fn transporter_count(
    group: &FiniteGroup,
    action: impl Fn(usize, usize) -> usize,
    x: usize,
    y: usize,
) -> usize {
    (0..group.order()).filter(|&g| action(g, x) == y).count()
}

/// The map `Xi: R[phi] -> R[phi], [g] -> [psi(g)]` on phi-twisted classes.
/// Requires phi and psi to commute and every g to be psi-conjugate to
/// phi(g); both hypotheses are verified, as is well-definedness.
#[derive(Debug, Clone)]
pub struct XiMap {
    /// The phi-twisted classes Xi acts on.
    pub domain: TwistedClassPartition,
    /// Class index -> class index.
    pub map: Vec<usize>,
}

impl XiMap {
    pub fn fixed_classes(&self) -> usize {
        self.map.iter().enumerate().filter(|&(c, &img)| c == img).count()
    }
}

pub fn xi_map(phi: &Endomorphism, psi: &Endomorphism) -> Result<XiMap> {
    let group = expect_same_group(phi, psi)?;
    let n = group.order();
    for g in 0..n {
        if phi.apply(psi.apply(g)) != psi.apply(phi.apply(g)) {
            return Err(Error::HypothesisViolated { which: "phi and psi do not commute" });
        }
    }
    let id = Endomorphism::identity(group);
    let psi_classes = twisted_classes(&id, psi)?;
    for g in 0..n {
        if psi_classes.class_of[g] != psi_classes.class_of[phi.apply(g)] {
            return Err(Error::HypothesisViolated {
                which: "g is not psi-conjugate to phi(g)",
            });
        }
    }
    let phi_classes = twisted_classes(&id, phi)?;
    let map: Vec<usize> = phi_classes
        .representatives
        .iter()
        .map(|&rep| phi_classes.class_of[psi.apply(rep)])
        .collect();
    // Well-definedness: the image class may not depend on the member used.
    for g in 0..n {
        if phi_classes.class_of[psi.apply(g)] != map[phi_classes.class_of[g]] {
            return Err(Error::HypothesisViolated {
                which: "Xi is not well defined on phi-classes",
            });
        }
    }
    Ok(XiMap { domain: phi_classes, map })
}

/// `R(psi)` as the number of Xi-fixed phi-twisted classes.
pub fn reidemeister_via_xi(phi: &Endomorphism, psi: &Endomorphism) -> Result<usize> {
    Ok(xi_map(phi, psi)?.fixed_classes())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectrumScope {
    Aut,
    End,
}

/// The set of Reidemeister numbers over Aut(G) or End(G), with
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumResult {
    pub spectrum: Vec<usize>,
    pub multiplicities: BTreeMap<usize, usize>,
    pub scope: SpectrumScope,
}

pub fn reidemeister_spectrum(
    group: &FiniteGroup,
    scope: SpectrumScope,
    cap: usize,
) -> Result<SpectrumResult> {
    let id = Endomorphism::identity(group);
    let stream: Box<dyn Iterator<Item = Endomorphism>> = match scope {
        SpectrumScope::Aut => Box::new(morphism::automorphisms(group)),
        SpectrumScope::End => Box::new(morphism::endomorphisms(group)),
    };
    let mut multiplicities = BTreeMap::new();
    let mut seen = 0usize;
    for psi in stream {
        seen += 1;
        if seen > cap {
            return Err(Error::EnumerationCapExceeded { cap });
        }
        let r = twisted_classes(&id, &psi)?.count();
        *multiplicities.entry(r).or_insert(0) += 1;
    }
    Ok(SpectrumResult {
        spectrum: multiplicities.keys().copied().collect(),
        multiplicities,
        scope,
    })
}

/// The four equalities obtained from bijections of Reidemeister classes:
/// swapping the pair, twisting by an inner automorphism on the left, and
/// composing both sides with an automorphism.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryEqualities {
    pub base: usize,
    pub swapped: usize,
    pub inner_twisted: usize,
    pub aut_twisted: usize,
    pub all_equal: bool,
}

pub fn check_symmetry_equalities(
    phi: &Endomorphism,
    psi: &Endomorphism,
    iota: &Endomorphism,
    xi: &Endomorphism,
) -> Result<SymmetryEqualities> {
    expect_same_group(phi, psi)?;
    if phi.group() != iota.group() || phi.group() != xi.group() {
        return Err(Error::GroupMismatch);
    }
    if !iota.is_inner() {
        return Err(Error::HypothesisViolated { which: "iota is not inner" });
    }
    if !xi.is_bijective() {
        return Err(Error::NotAutomorphism);
    }
    let base = twisted_classes(phi, psi)?.count();
    let swapped = twisted_classes(psi, phi)?.count();
    let inner_twisted = twisted_classes(&iota.compose(phi)?, psi)?.count();
    let aut_twisted = twisted_classes(&xi.compose(phi)?, &xi.compose(psi)?)?.count();
    let all_equal = base == swapped && base == inner_twisted && base == aut_twisted;
    Ok(SymmetryEqualities { base, swapped, inner_twisted, aut_twisted, all_equal })
}

/// Composing either argument with a class-preserving endomorphism, on
/// either side, leaves the Reidemeister number unchanged.
#[derive(Debug, Clone, Serialize)]
pub struct ClassPreservingInvariance {
    pub base: usize,
    pub xi_phi: usize,
    pub phi_xi: usize,
    pub xi_psi: usize,
    pub psi_xi: usize,
    pub all_equal: bool,
}

pub fn check_class_preserving_invariance(
    phi: &Endomorphism,
    psi: &Endomorphism,
    xi: &Endomorphism,
) -> Result<ClassPreservingInvariance> {
    expect_same_group(phi, psi)?;
    if phi.group() != xi.group() {
        return Err(Error::GroupMismatch);
    }
    if !xi.is_class_preserving() {
        return Err(Error::NotClassPreserving);
    }
    let base = twisted_classes(phi, psi)?.count();
    let xi_phi = twisted_classes(&xi.compose(phi)?, psi)?.count();
    let phi_xi = twisted_classes(&phi.compose(xi)?, psi)?.count();
    let xi_psi = twisted_classes(phi, &xi.compose(psi)?)?.count();
    let psi_xi = twisted_classes(phi, &psi.compose(xi)?)?.count();
    let all_equal = [xi_phi, phi_xi, xi_psi, psi_xi].iter().all(|&v| v == base);
    Ok(ClassPreservingInvariance { base, xi_phi, phi_xi, xi_psi, psi_xi, all_equal })
}

/// `R(psi^k) >= R(psi)`, with equality when psi is an automorphism and k
/// is coprime to its order.
#[derive(Debug, Clone, Serialize)]
pub struct PowerInequality {
    pub k: usize,
    pub r_psi: usize,
    pub r_power: usize,
    pub inequality_holds: bool,
    /// Set when psi is bijective and gcd(k, ord psi) = 1: does equality hold?
    pub coprime_equality: Option<bool>,
}

pub fn check_power_inequality(psi: &Endomorphism, k: usize) -> Result<PowerInequality> {
    let id = Endomorphism::identity(psi.group());
    let r_psi = twisted_classes(&id, psi)?.count();
    let r_power = twisted_classes(&id, &psi.power(k))?.count();
    let coprime_equality = if psi.is_bijective() {
        let order = psi.order()?;
        if num_integer::gcd(k, order) == 1 {
            Some(r_power == r_psi)
        } else {
            None
        }
    } else {
        None
    };
    Ok(PowerInequality {
        k,
        r_psi,
        r_power,
        inequality_holds: r_power >= r_psi,
        coprime_equality,
    })
}

/// The central sandwich: `R(phi|C, psi|C) <= R(phi, psi) <=
/// R(phi|C, psi|C) * R(induced on G/C)`.
#[derive(Debug, Clone, Serialize)]
pub struct CentralBounds {
    pub r_full: usize,
    pub r_restriction: usize,
    pub r_quotient: usize,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

pub fn check_central_bounds(
    phi: &Endomorphism,
    psi: &Endomorphism,
    c: &Subgroup,
) -> Result<CentralBounds> {
    check_central_bounds_with(&CentralBoundsContext::new(c)?, phi, psi)
}

/// Materialised subgroup and quotient for one central subgroup, reusable
/// across many endomorphism pairs.
pub struct CentralBoundsContext {
    view: crate::group::SubgroupView,
    quotient: crate::group::CentralQuotient,
}

impl CentralBoundsContext {
    pub fn new(c: &Subgroup) -> Result<Self> {
        if !c.is_central() {
            return Err(Error::NotCentral);
        }
        Ok(Self { view: c.as_group(), quotient: c.parent().quotient_by_central(c)? })
    }
}

pub fn check_central_bounds_with(
    ctx: &CentralBoundsContext,
    phi: &Endomorphism,
    psi: &Endomorphism,
) -> Result<CentralBounds> {
    let group = expect_same_group(phi, psi)?;
    if &ctx.view.parent != group {
        return Err(Error::GroupMismatch);
    }
    let phi_c = phi.restrict_to_subgroup(&ctx.view)?;
    let psi_c = psi.restrict_to_subgroup(&ctx.view)?;
    let phi_q = phi.induce_on_quotient(&ctx.quotient)?;
    let psi_q = psi.induce_on_quotient(&ctx.quotient)?;
    let r_full = twisted_classes(phi, psi)?.count();
    let r_restriction = twisted_classes(&phi_c, &psi_c)?.count();
    let r_quotient = twisted_classes(&phi_q, &psi_q)?.count();
    Ok(CentralBounds {
        r_full,
        r_restriction,
        r_quotient,
        lower_holds: r_restriction <= r_full,
        upper_holds: r_full <= r_restriction * r_quotient,
    })
}

/// Three equivalent conditions: R exceeding `(2p-1)/p^2 |G|` (p the least
/// prime divisor), `phi = psi` with central image, and `R = |G|`.
#[derive(Debug, Clone, Serialize)]
pub struct GapTheorem {
    pub r: usize,
    pub group_order: usize,
    pub smallest_prime: usize,
    pub above_gap: bool,
    pub central_equal_pair: bool,
    pub maximal: bool,
    pub equivalent: bool,
}

pub fn check_gap_theorem(phi: &Endomorphism, psi: &Endomorphism) -> Result<GapTheorem> {
    let group = expect_same_group(phi, psi)?;
    let n = group.order();
    if n == 1 {
        return Err(Error::TrivialGroup);
    }
    let p = (2..=n).find(|&p| n % p == 0).expect("nontrivial group has a prime divisor");
    let r = twisted_classes(phi, psi)?.count();
    // R > (2p-1)/p^2 * n, compared exactly in integers.
    let above_gap = r * p * p > (2 * p - 1) * n;
    let center = group.center();
    let central_equal_pair = (0..n).all(|g| phi.apply(g) == psi.apply(g))
        && (0..n).all(|g| center.contains(phi.apply(g)));
    let maximal = r == n;
    let equivalent = (above_gap == central_equal_pair) && (central_equal_pair == maximal);
    Ok(GapTheorem {
        r,
        group_order: n,
        smallest_prime: p,
        above_gap,
        central_equal_pair,
        maximal,
        equivalent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::BuiltinFamily;
    use crate::morphism::from_generator_images;

    fn id_of(g: &FiniteGroup) -> Endomorphism {
        Endomorphism::identity(g)
    }

    /// Independent orbit computation: sweep over all group elements rather
    /// than a generating set.
    fn brute_partition(phi: &Endomorphism, psi: &Endomorphism) -> Vec<Vec<usize>> {
        let g = phi.group();
        let n = g.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n)
                .map(|z| g.mul(g.mul(phi.apply(z), x), g.inv(psi.apply(z))))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                assigned[y] = true;
            }
            classes.push(orbit);
        }
        classes
    }

    #[test]
    fn identity_pair_recovers_ordinary_conjugacy() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(4)).unwrap();
        let id = id_of(&g);
        let part = twisted_classes(&id, &id).unwrap();
        assert_eq!(part.count(), g.classes().count());
        let mut a = part.class_sizes.clone();
        let mut b = g.classes().class_sizes.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn union_find_matches_brute_force() {
        let g = FiniteGroup::builtin(BuiltinFamily::Dihedral(4)).unwrap();
        let endos: Vec<_> = morphism::endomorphisms(&g).collect();
        for phi in endos.iter().take(8) {
            for psi in endos.iter().take(8) {
                let fast = twisted_classes(phi, psi).unwrap();
                let brute = brute_partition(phi, psi);
                assert_eq!(fast.count(), brute.len());
                let mut sizes: Vec<usize> = brute.iter().map(|c| c.len()).collect();
                sizes.sort_unstable();
                let mut fast_sizes = fast.class_sizes.clone();
                fast_sizes.sort_unstable();
                assert_eq!(fast_sizes, sizes);
            }
        }
    }

    #[test]
    fn paper32_twisted_classes() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = from_generator_images(&g, &[1, 8, 16], &[1, 14, 16]).unwrap();
        let part = twisted_classes(&id_of(&g), &psi).unwrap();
        assert_eq!(part.count(), 11);
        let mut sizes = part.class_sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4]);
        // Orbit-stabiliser: an element in a size-2 class has a stabiliser
        // of order 16.
        let small_rep = part.representatives[part
            .class_sizes
            .iter()
            .position(|&s| s == 2)
            .unwrap()];
        let stab = stabilizer(&id_of(&g), &psi, small_rep).unwrap();
        assert_eq!(stab.len(), 16);
    }

    #[test]
    fn trivial_pair_gives_singletons() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        let tau = Endomorphism::trivial(&g);
        let part = twisted_classes(&tau, &tau).unwrap();
        assert_eq!(part.count(), g.order());
        assert!(part.class_sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn methods_agree_on_small_groups() {
        for family in [
            BuiltinFamily::Cyclic(6),
            BuiltinFamily::Symmetric(3),
            BuiltinFamily::Dihedral(4),
        ] {
            let g = FiniteGroup::builtin(family).unwrap();
            let endos: Vec<_> = morphism::endomorphisms(&g).collect();
            for phi in &endos {
                for psi in &endos {
                    let r = reidemeister_number(phi, psi, ReidemeisterMethod::Orbits).unwrap();
                    for method in ReidemeisterMethod::ALL {
                        assert_eq!(
                            reidemeister_number(phi, psi, method).unwrap(),
                            r,
                            "{method:?} disagrees on {}",
                            g.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn inversion_on_c3_has_reidemeister_number_one() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(3)).unwrap();
        let inv = Endomorphism::new(g.clone(), vec![0, 2, 1]).unwrap();
        assert_eq!(
            reidemeister_number(&id_of(&g), &inv, ReidemeisterMethod::Orbits).unwrap(),
            1
        );
    }

    #[test]
    fn stabilizer_of_identity_is_fixed_points() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = from_generator_images(&g, &[1, 8, 16], &[1, 14, 16]).unwrap();
        let stab = stabilizer(&id_of(&g), &psi, 0).unwrap();
        assert_eq!(stab, psi.fixed_points());
        let full = stabilizer(&id_of(&g), &id_of(&g), 0).unwrap();
        assert_eq!(full.len(), g.order());
    }

    #[test]
    fn transporter_counts_on_s3() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        let conj = |h: usize, x: usize| g.conj(h, x);
        // Two distinct transpositions are conjugate with transporter count
        // equal to the centraliser order 2.
        let transpositions: Vec<usize> =
            (0..6).filter(|&x| g.element_order(x) == 2).collect();
        let (x, y) = (transpositions[0], transpositions[1]);
        assert_eq!(transporter_count(&g, conj, x, y), 2);
        assert_eq!(transporter_count(&g, conj, x, x), 2);
        assert_eq!(transporter_count(&g, conj, y, x), 2);
        // An element of different order is outside the orbit.
        let rotation = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(transporter_count(&g, conj, x, rotation), 0);
    }

    #[test]
    fn xi_with_identity_phi_counts_fixed_ordinary_classes() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = from_generator_images(&g, &[1, 8, 16], &[1, 14, 16]).unwrap();
        let xi = xi_map(&id_of(&g), &psi).unwrap();
        assert_eq!(xi.domain.count(), g.classes().count());
        assert_eq!(xi.fixed_classes(), 11);
        // phi = psi also satisfies the hypotheses.
        assert_eq!(reidemeister_via_xi(&psi, &psi).unwrap(), 11);
        // phi = psi^3 as well.
        assert_eq!(reidemeister_via_xi(&psi.power(3), &psi).unwrap(), 11);
    }

    #[test]
    fn xi_with_identity_psi_is_the_identity_map() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        let xi = xi_map(&id_of(&g), &id_of(&g)).unwrap();
        assert_eq!(xi.fixed_classes(), xi.domain.count());
    }

    #[test]
    fn xi_rejects_noncommuting_pair() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        // Two conjugations by non-commuting elements do not commute.
        let a = Endomorphism::inner(&g, g.generating_set()[0]);
        let b = Endomorphism::inner(&g, g.generating_set()[1]);
        let result = xi_map(&a, &b);
        assert!(matches!(result, Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn spectra_of_small_groups() {
        let c2 = FiniteGroup::builtin(BuiltinFamily::Cyclic(2)).unwrap();
        let s = reidemeister_spectrum(&c2, SpectrumScope::Aut, 1000).unwrap();
        assert_eq!(s.spectrum, vec![2]);

        let c3 = FiniteGroup::builtin(BuiltinFamily::Cyclic(3)).unwrap();
        let s = reidemeister_spectrum(&c3, SpectrumScope::Aut, 1000).unwrap();
        assert_eq!(s.spectrum, vec![1, 3]);
        assert_eq!(s.multiplicities[&1], 1);
        assert_eq!(s.multiplicities[&3], 1);

        let s3 = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        let s = reidemeister_spectrum(&s3, SpectrumScope::Aut, 1000).unwrap();
        assert_eq!(s.spectrum, vec![3]);
        assert_eq!(s.multiplicities[&3], 6);
    }

    #[test]
    fn aut_spectrum_is_bounded_by_the_class_count() {
        for family in [
            BuiltinFamily::Paper32,
            BuiltinFamily::Symmetric(4),
            BuiltinFamily::Abelian(vec![2, 4]),
        ] {
            let g = FiniteGroup::builtin(family).unwrap();
            let s = reidemeister_spectrum(&g, SpectrumScope::Aut, 100_000).unwrap();
            let classes = g.classes().count();
            assert!(s.spectrum.iter().all(|&r| r >= 1 && r <= classes));
        }
    }

    #[test]
    fn central_bounds_tight_for_the_whole_abelian_group() {
        let g = FiniteGroup::builtin(BuiltinFamily::Abelian(vec![2, 4])).unwrap();
        let c = Subgroup::new(g.clone(), (0..8).collect()).unwrap();
        let squaring: Vec<usize> = (0..8).map(|x| g.mul(x, x)).collect();
        let psi = Endomorphism::new(g.clone(), squaring).unwrap();
        let rep = check_central_bounds(&id_of(&g), &psi, &c).unwrap();
        assert_eq!(rep.r_restriction, rep.r_full);
        assert_eq!(rep.r_quotient, 1);
        assert!(rep.lower_holds && rep.upper_holds);
    }

    #[test]
    fn spectrum_cap() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        assert!(matches!(
            reidemeister_spectrum(&g, SpectrumScope::End, 3),
            Err(Error::EnumerationCapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn symmetry_equalities_on_s3() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        let endos: Vec<_> = morphism::endomorphisms(&g).collect();
        let autos: Vec<_> = morphism::automorphisms(&g).collect();
        for phi in &endos {
            for psi in &endos {
                for iota in autos.iter().filter(|a| a.is_inner()).take(3) {
                    for xi in autos.iter().take(3) {
                        let rep = check_symmetry_equalities(phi, psi, iota, xi).unwrap();
                        assert!(rep.all_equal);
                    }
                }
            }
        }
    }

    #[test]
    fn class_preserving_invariance_on_paper32() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = from_generator_images(&g, &[1, 8, 16], &[1, 14, 16]).unwrap();
        assert!(psi.is_class_preserving() && !psi.is_inner());
        let phi = psi.power(2);
        let rep = check_class_preserving_invariance(&phi, &id_of(&g), &psi).unwrap();
        assert!(rep.all_equal);
        let rejected = check_class_preserving_invariance(
            &id_of(&g),
            &id_of(&g),
            &Endomorphism::trivial(&g),
        );
        assert!(matches!(rejected, Err(Error::NotClassPreserving)));
    }

    #[test]
    fn power_inequality_examples() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(5)).unwrap();
        let squaring = Endomorphism::new(g.clone(), vec![0, 2, 4, 1, 3]).unwrap();
        let rep = check_power_inequality(&squaring, 3).unwrap();
        assert!(rep.inequality_holds);
        assert_eq!(rep.coprime_equality, Some(true));
        let rep = check_power_inequality(&squaring, 1).unwrap();
        assert_eq!(rep.r_psi, rep.r_power);
        // k = 0 compares against the identity: R(id) = #classes >= R(psi).
        let rep = check_power_inequality(&squaring, 0).unwrap();
        assert_eq!(rep.r_power, 5);
        assert!(rep.inequality_holds);
    }

    #[test]
    fn central_bounds_on_paper32() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = from_generator_images(&g, &[1, 8, 16], &[1, 14, 16]).unwrap();
        let c = Subgroup::new(g.clone(), vec![0, 4]).unwrap();
        let rep = check_central_bounds(&id_of(&g), &psi, &c).unwrap();
        assert!(rep.lower_holds && rep.upper_holds);
        // Trivial central subgroup: lower bound 1, upper bound from the
        // full-size quotient.
        let trivial = Subgroup::new(g.clone(), vec![0]).unwrap();
        let rep = check_central_bounds(&id_of(&g), &psi, &trivial).unwrap();
        assert_eq!(rep.r_restriction, 1);
        assert_eq!(rep.r_quotient, rep.r_full);
    }

    #[test]
    fn gap_theorem_cases() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        let tau = Endomorphism::trivial(&g);
        let rep = check_gap_theorem(&tau, &tau).unwrap();
        assert!(rep.above_gap && rep.central_equal_pair && rep.maximal && rep.equivalent);

        let psi = Endomorphism::inner(&g, 1);
        let rep = check_gap_theorem(&id_of(&g), &psi).unwrap();
        assert!(!rep.above_gap && !rep.central_equal_pair && !rep.maximal);
        assert!(rep.equivalent);

        let trivial = FiniteGroup::builtin(BuiltinFamily::Cyclic(1)).unwrap();
        let id = id_of(&trivial);
        assert!(matches!(check_gap_theorem(&id, &id), Err(Error::TrivialGroup)));
    }

    #[test]
    fn class_sizes_divide_group_order() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let endos: Vec<_> = morphism::endomorphisms(&g).take(40).collect();
        for phi in &endos {
            for psi in endos.iter().take(10) {
                let part = twisted_classes(phi, psi).unwrap();
                assert_eq!(part.class_sizes.iter().sum::<usize>(), g.order());
                for (c, &size) in part.class_sizes.iter().enumerate() {
                    assert_eq!(g.order() % size, 0);
                    let stab = stabilizer(phi, psi, part.representatives[c]).unwrap();
                    assert_eq!(stab.len() * size, g.order());
                }
            }
        }
    }
}
