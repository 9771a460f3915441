//! Endomorphisms of a finite group: validation, enumeration by
//! generator-image backtracking, composition, restriction, and the usual
//! classification predicates.
//!
//! Maps are stored as full image tables, so evaluation is a lookup.

use crate::error::{Error, Result};
use crate::group::{CentralQuotient, FiniteGroup, SubgroupView};

/// A validated homomorphism of a group into itself.
#[derive(Clone, PartialEq, Eq)]
pub struct Endomorphism {
    group: FiniteGroup,
    image: Vec<u32>,
}

impl std::fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Endomorphism({} -> {:?})", self.group.name(), self.image)
    }
}

/// How an endomorphism sits inside End(G).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismClassification {
    pub is_automorphism: bool,
    pub is_inner: bool,
    pub is_class_preserving: bool,
    pub is_fixed_point_free: bool,
    /// Order in Aut(G); None for non-bijective maps.
    pub order: Option<usize>,
}

impl Endomorphism {
    /// Validates the image table as a homomorphism, exhaustively over all
    /// pairs. The first violating pair is reported.
    pub fn new(group: FiniteGroup, image: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if image.len() != n || image.iter().any(|&v| v >= n) {
            return Err(Error::NotHomomorphism { a: 0, b: 0 });
        }
        for a in 0..n {
            for b in 0..n {
                if image[group.mul(a, b)] != group.mul(image[a], image[b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Self { group, image: image.into_iter().map(|v| v as u32).collect() })
    }

    /// For maps that are homomorphisms by construction.
    pub(crate) fn new_unchecked(group: FiniteGroup, image: Vec<u32>) -> Self {
        debug_assert!({
            let n = group.order();
            (0..n).all(|a| (0..n).all(|b| {
                image[group.mul(a, b)] as usize
                    == group.mul(image[a] as usize, image[b] as usize)
            }))
        });
        Self { group, image }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        let image = (0..group.order() as u32).collect();
        Self { group: group.clone(), image }
    }

    /// The endomorphism collapsing everything to the identity.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self { group: group.clone(), image: vec![0; group.order()] }
    }

    /// Conjugation by `h`: `x -> h x h^-1`.
    pub fn inner(group: &FiniteGroup, h: usize) -> Self {
        let image = (0..group.order()).map(|x| group.conj(h, x) as u32).collect();
        Self::new_unchecked(group.clone(), image)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g] as usize
    }

    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image.iter().all(|&v| {
            let hit = !seen[v as usize];
            seen[v as usize] = true;
            hit
        })
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let image = other.image.iter().map(|&g| self.image[g as usize]).collect();
        Ok(Self::new_unchecked(self.group.clone(), image))
    }

    /// k-fold composition; `power(0)` is the identity map.
    pub fn power(&self, k: usize) -> Self {
        let mut result = Self::identity(&self.group);
        for _ in 0..k {
            result = result.compose(self).expect("same group");
        }
        result
    }

    /// Elements with `psi(g) = g`; always contains the identity.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.image[g] as usize == g)
            .collect()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_points() == [0]
    }

    /// True iff `[psi(g)] = [g]` for every g.
    pub fn is_class_preserving(&self) -> bool {
        let classes = self.group.classes();
        (0..self.group.order())
            .all(|g| classes.class_of[self.image[g] as usize] == classes.class_of[g])
    }

    /// True iff the map equals conjugation by some element.
    pub fn is_inner(&self) -> bool {
        let n = self.group.order();
        (0..n).any(|h| {
            (0..n).all(|x| self.image[x] as usize == self.group.conj(h, x))
        })
    }

    /// Least k >= 1 with `self^k = id`. Errors on non-bijective maps.
    pub fn order(&self) -> Result<usize> {
        if !self.is_bijective() {
            return Err(Error::NotAutomorphism);
        }
        let mut current = self.clone();
        let mut k = 1;
        while !current.is_identity() {
            current = current.compose(self).expect("same group");
            k += 1;
        }
        Ok(k)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_bijective() {
            return Err(Error::NotAutomorphism);
        }
        let mut image = vec![0u32; self.image.len()];
        for (g, &v) in self.image.iter().enumerate() {
            image[v as usize] = g as u32;
        }
        Ok(Self::new_unchecked(self.group.clone(), image))
    }

    pub fn classify(&self) -> MorphismClassification {
        let is_automorphism = self.is_bijective();
        MorphismClassification {
            is_automorphism,
            is_inner: self.is_inner(),
            is_class_preserving: self.is_class_preserving(),
            is_fixed_point_free: self.is_fixed_point_free(),
            order: if is_automorphism { self.order().ok() } else { None },
        }
    }

    /// Restriction to an invariant subgroup, expressed on the subgroup's
    /// own element indices.
    pub fn restrict_to_subgroup(&self, view: &SubgroupView) -> Result<Self> {
        if self.group != view.parent {
            return Err(Error::GroupMismatch);
        }
        let mut image = Vec::with_capacity(view.embedding.len());
        for &g in &view.embedding {
            match view.index_in_sub[self.apply(g)] {
                Some(i) => image.push(i as u32),
                None => return Err(Error::NotInvariant),
            }
        }
        Ok(Self::new_unchecked(view.group.clone(), image))
    }

    /// The induced map on a central quotient; requires the kernel to be
    /// invariant.
    pub fn induce_on_quotient(&self, quotient: &CentralQuotient) -> Result<Self> {
        if self.group != quotient.parent {
            return Err(Error::GroupMismatch);
        }
        let in_kernel = {
            let mut m = vec![false; self.group.order()];
            for &z in &quotient.kernel {
                m[z] = true;
            }
            m
        };
        if quotient.kernel.iter().any(|&z| !in_kernel[self.apply(z)]) {
            return Err(Error::NotInvariant);
        }
        let m = quotient.group.order();
        let mut image = vec![u32::MAX; m];
        for g in 0..self.group.order() {
            let src = quotient.projection[g];
            let dst = quotient.projection[self.apply(g)] as u32;
            if image[src] == u32::MAX {
                image[src] = dst;
            } else {
                debug_assert_eq!(image[src], dst, "induced map not constant on cosets");
            }
        }
        Ok(Self::new_unchecked(quotient.group.clone(), image))
    }
}

/// Extends generator images to a full image table and verifies the result
/// is a homomorphism. `None` if the assignment does not extend.
///
/// Checking `f(a*g) = f(a)f(g)` for every element `a` and generator `g`
/// suffices: induction on word length extends the identity to all pairs.
fn extend_generator_images(
    group: &FiniteGroup,
    gens: &[usize],
    bfs_order: &[usize],
    decomp: &[(u32, u32)],
    gen_images: &[usize],
) -> Option<Vec<u32>> {
    let n = group.order();
    let mut image = vec![0u32; n];
    for (k, &elt) in bfs_order.iter().enumerate() {
        let (parent, gi) = decomp[k];
        image[elt] = group.mul(image[parent as usize] as usize, gen_images[gi as usize]) as u32;
    }
    for a in 0..n {
        for (gi, &g) in gens.iter().enumerate() {
            if image[group.mul(a, g)] as usize
                != group.mul(image[a] as usize, gen_images[gi])
            {
                return None;
            }
        }
    }
    Some(image)
}

/// Lazy, duplicate-free stream of endomorphisms in lexicographic order of
/// generator images.
pub struct EndomorphismIter {
    group: FiniteGroup,
    gens: Vec<usize>,
    bfs_order: Vec<usize>,
    decomp: Vec<(u32, u32)>,
    candidates: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    exhausted: bool,
    automorphisms_only: bool,
}

impl EndomorphismIter {
    fn new(group: &FiniteGroup, gens: &[usize], automorphisms_only: bool) -> Result<Self> {
        if group.closure(gens).len() != group.order() {
            return Err(Error::NotGeneratingSet);
        }
        let (bfs_order, decomp) = group.bfs_words(gens);
        // An endomorphism sends g to an element whose order divides ord(g);
        // automorphisms preserve the order exactly.
        let candidates = gens
            .iter()
            .map(|&g| {
                let og = group.element_order(g);
                (0..group.order())
                    .filter(|&h| {
                        let oh = group.element_order(h);
                        if automorphisms_only { oh == og } else { og.is_multiple_of(oh) }
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            group: group.clone(),
            gens: gens.to_vec(),
            bfs_order,
            decomp,
            candidates,
            cursor: vec![0; gens.len()],
            exhausted: false,
            automorphisms_only,
        })
    }

    fn advance(&mut self) {
        for i in (0..self.cursor.len()).rev() {
            self.cursor[i] += 1;
            if self.cursor[i] < self.candidates[i].len() {
                return;
            }
            self.cursor[i] = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for EndomorphismIter {
    type Item = Endomorphism;

    fn next(&mut self) -> Option<Endomorphism> {
        while !self.exhausted {
            let assignment: Vec<usize> = self
                .cursor
                .iter()
                .zip(&self.candidates)
                .map(|(&i, c)| c[i])
                .collect();
            if self.cursor.is_empty() {
                self.exhausted = true;
            } else {
                self.advance();
            }
            if let Some(image) = extend_generator_images(
                &self.group,
                &self.gens,
                &self.bfs_order,
                &self.decomp,
                &assignment,
            ) {
                let endo = Endomorphism::new_unchecked(self.group.clone(), image);
                if !self.automorphisms_only || endo.is_bijective() {
                    return Some(endo);
                }
            }
        }
        None
    }
}

/// All endomorphisms, enumerated by backtracking over images of the given
/// generating set.
pub fn enumerate_endomorphisms(
    group: &FiniteGroup,
    generating_set: &[usize],
) -> Result<EndomorphismIter> {
    EndomorphismIter::new(group, generating_set, false)
}

/// All automorphisms, enumerated the same way and filtered to bijections.
pub fn enumerate_automorphisms(
    group: &FiniteGroup,
    generating_set: &[usize],
) -> Result<EndomorphismIter> {
    EndomorphismIter::new(group, generating_set, true)
}

/// Endomorphism stream over the group's default generating set.
pub fn endomorphisms(group: &FiniteGroup) -> EndomorphismIter {
    enumerate_endomorphisms(group, group.generating_set())
        .expect("default generating set generates")
}

/// Automorphism stream over the group's default generating set.
pub fn automorphisms(group: &FiniteGroup) -> EndomorphismIter {
    enumerate_automorphisms(group, group.generating_set())
        .expect("default generating set generates")
}

/// Builds an endomorphism from images of a generating set.
pub fn from_generator_images(
    group: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Result<Endomorphism> {
    if group.closure(gens).len() != group.order() {
        return Err(Error::NotGeneratingSet);
    }
    if images.len() != gens.len() || images.iter().any(|&v| v >= group.order()) {
        return Err(Error::NotHomomorphism { a: 0, b: 0 });
    }
    let (bfs_order, decomp) = group.bfs_words(gens);
    // A failed extension surfaces the first bad (element, generator) pair.
    let n = group.order();
    let mut image = vec![0u32; n];
    for (k, &elt) in bfs_order.iter().enumerate() {
        let (parent, gi) = decomp[k];
        image[elt] = group.mul(image[parent as usize] as usize, images[gi as usize]) as u32;
    }
    for a in 0..n {
        for (gi, &g) in gens.iter().enumerate() {
            if image[group.mul(a, g)] as usize != group.mul(image[a] as usize, images[gi]) {
                return Err(Error::NotHomomorphism { a, b: g });
            }
        }
    }
    Ok(Endomorphism::new_unchecked(group.clone(), image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{BuiltinFamily, Subgroup};

    fn paper32_psi(g: &FiniteGroup) -> Endomorphism {
        // x -> x, y -> x^6 y, z -> z on indices 1, 8, 16.
        from_generator_images(g, &[1, 8, 16], &[1, 14, 16]).unwrap()
    }

    #[test]
    fn identity_and_trivial_are_valid() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        assert!(Endomorphism::new(g.clone(), (0..6).collect()).is_ok());
        assert!(Endomorphism::new(g, vec![0; 6]).is_ok());
    }

    #[test]
    fn invalid_map_reports_first_pair() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(3)).unwrap();
        // Collapsing g and g^2 to the same non-identity value cannot be a
        // homomorphism.
        let err = Endomorphism::new(g, vec![0, 1, 1]).unwrap_err();
        match err {
            Error::NotHomomorphism { .. } => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn paper32_psi_is_a_noninner_class_preserving_automorphism() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = paper32_psi(&g);
        assert!(psi.is_bijective());
        assert!(!psi.is_inner());
        assert!(psi.is_class_preserving());
        assert_eq!(psi.order().unwrap(), 4);
        // psi fixes <x, z> pointwise: 16 fixed points.
        assert_eq!(psi.fixed_points().len(), 16);
        assert!(psi.fixed_points().contains(&1));
        assert!(psi.fixed_points().contains(&16));
    }

    #[test]
    fn s3_has_ten_endomorphisms_and_six_inner_automorphisms() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        let endos: Vec<_> = endomorphisms(&g).collect();
        assert_eq!(endos.len(), 10);
        let autos: Vec<_> = automorphisms(&g).collect();
        assert_eq!(autos.len(), 6);
        assert!(autos.iter().all(|a| a.is_inner()));
    }

    #[test]
    fn cyclic_six_has_six_endomorphisms_two_automorphisms() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(6)).unwrap();
        assert_eq!(endomorphisms(&g).count(), 6);
        assert_eq!(automorphisms(&g).count(), 2);
    }

    #[test]
    fn c2_has_exactly_two_endomorphisms() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(2)).unwrap();
        let endos: Vec<_> = endomorphisms(&g).collect();
        assert_eq!(endos.len(), 2);
    }

    #[test]
    fn powers_on_c5() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(5)).unwrap();
        let squaring = Endomorphism::new(g.clone(), vec![0, 2, 4, 1, 3]).unwrap();
        assert_eq!(squaring.order().unwrap(), 4);
        let fourth = squaring.power(2);
        assert_eq!(fourth.apply(1), 4);
        assert!(squaring.power(0).is_identity());
        assert_eq!(squaring.power(1), squaring);
    }

    #[test]
    fn inversion_on_c3_is_fixed_point_free() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(3)).unwrap();
        let inv = Endomorphism::new(g, vec![0, 2, 1]).unwrap();
        assert_eq!(inv.fixed_points(), vec![0]);
        assert!(!inv.is_class_preserving());
        assert!(!inv.is_inner());
    }

    #[test]
    fn inner_maps() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        assert!(Endomorphism::inner(&g, 0).is_identity());
        for h in 0..6 {
            let inn = Endomorphism::inner(&g, h);
            assert!(inn.is_inner());
            assert!(inn.is_class_preserving());
        }
        // Conjugation by a transposition has order 2.
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(Endomorphism::inner(&g, t).order().unwrap(), 2);
        let abelian = FiniteGroup::builtin(BuiltinFamily::Cyclic(9)).unwrap();
        assert!(Endomorphism::inner(&abelian, 5).is_identity());
    }

    #[test]
    fn fixed_points_of_identity_is_everything() {
        let g = FiniteGroup::builtin(BuiltinFamily::Dihedral(5)).unwrap();
        let id = Endomorphism::identity(&g);
        assert_eq!(id.fixed_points().len(), g.order());
        assert_eq!(id.order().unwrap(), 1);
    }

    #[test]
    fn paper32_automorphism_stream_contains_psi() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = paper32_psi(&g);
        assert!(automorphisms(&g).any(|a| a == psi));
    }

    #[test]
    fn inner_implies_class_preserving_for_every_enumerated_map() {
        for family in [BuiltinFamily::Symmetric(3), BuiltinFamily::Dihedral(4)] {
            let g = FiniteGroup::builtin(family).unwrap();
            for endo in endomorphisms(&g) {
                if endo.is_inner() {
                    assert!(endo.is_class_preserving());
                }
            }
        }
    }

    #[test]
    fn restriction_to_trivial_and_full_subgroups() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = paper32_psi(&g);
        let trivial = Subgroup::new(g.clone(), vec![0]).unwrap().as_group();
        let restricted = psi.restrict_to_subgroup(&trivial).unwrap();
        assert_eq!(restricted.group().order(), 1);
        assert!(restricted.is_identity());
        let full = Subgroup::new(g.clone(), (0..32).collect()).unwrap().as_group();
        let on_full = psi.restrict_to_subgroup(&full).unwrap();
        assert_eq!(on_full.image(), psi.image());
    }

    #[test]
    fn restrict_commutes_with_composition() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let psi = paper32_psi(&g);
        let phi = psi.power(2);
        // <x> is invariant under both.
        let sub = Subgroup::new(g.clone(), g.closure(&[1])).unwrap();
        let view = sub.as_group();
        let lhs = phi.compose(&psi).unwrap().restrict_to_subgroup(&view).unwrap();
        let rhs = phi
            .restrict_to_subgroup(&view)
            .unwrap()
            .compose(&psi.restrict_to_subgroup(&view).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_and_induction_on_c4() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(4)).unwrap();
        let squaring = Endomorphism::new(g.clone(), vec![0, 2, 0, 2]).unwrap();
        let c = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let view = c.as_group();
        let restricted = squaring.restrict_to_subgroup(&view).unwrap();
        assert!(restricted.image() == vec![0, 0]);
        let q = g.quotient_by_central(&c).unwrap();
        let induced = squaring.induce_on_quotient(&q).unwrap();
        assert!(induced.image() == vec![0, 0]);
    }

    #[test]
    fn restriction_rejects_noninvariant_subgroup() {
        let g = FiniteGroup::builtin(BuiltinFamily::Abelian(vec![2, 2])).unwrap();
        // Swap the two generators; the subgroup <first generator> moves.
        let autos: Vec<_> = automorphisms(&g).collect();
        let sub = Subgroup::new(g.clone(), g.closure(&[g.generating_set()[0]])).unwrap();
        let view = sub.as_group();
        assert!(autos.iter().any(|a| matches!(
            a.restrict_to_subgroup(&view),
            Err(Error::NotInvariant)
        )));
    }

    #[test]
    fn induce_commutes_with_composition() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let c = Subgroup::new(g.clone(), vec![0, 4]).unwrap();
        let q = g.quotient_by_central(&c).unwrap();
        let psi = paper32_psi(&g);
        let phi = psi.power(2);
        let lhs = phi.compose(&psi).unwrap().induce_on_quotient(&q).unwrap();
        let rhs = phi
            .induce_on_quotient(&q)
            .unwrap()
            .compose(&psi.induce_on_quotient(&q).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn custom_generating_set_is_validated() {
        let g = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        let non_generating = vec![g.classes().representatives[1]];
        assert!(matches!(
            enumerate_endomorphisms(&g, &non_generating),
            Err(Error::NotGeneratingSet)
        ));
    }
}
