//! Subgroups as sorted element-index sets, with materialisation as
//! standalone groups and central quotients.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::FiniteGroup;

/// A subgroup of a parent group, stored as a sorted set of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates closure, identity, inverses, and Lagrange divisibility.
    pub fn new(parent: FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotSubgroup { reason: "missing the identity".into() });
        }
        if let Some(&g) = elements.iter().find(|&&g| g >= parent.order()) {
            return Err(Error::NotSubgroup { reason: format!("element {g} out of range") });
        }
        if !parent.order().is_multiple_of(elements.len()) {
            return Err(Error::NotSubgroup {
                reason: format!("size {} does not divide {}", elements.len(), parent.order()),
            });
        }
        let member = {
            let mut m = vec![false; parent.order()];
            for &g in &elements {
                m[g] = true;
            }
            m
        };
        for &a in &elements {
            if !member[parent.inv(a)] {
                return Err(Error::NotSubgroup {
                    reason: format!("inverse of {a} missing"),
                });
            }
            for &b in &elements {
                if !member[parent.mul(a, b)] {
                    return Err(Error::NotSubgroup {
                        reason: format!("not closed: {a} * {b} escapes"),
                    });
                }
            }
        }
        Ok(Self { parent, elements })
    }

    /// For internally computed subgroups that are closed by construction.
    pub(crate) fn new_unchecked(parent: FiniteGroup, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { parent, elements }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_central(&self) -> bool {
        self.elements
            .iter()
            .all(|&z| (0..self.parent.order()).all(|g| {
                self.parent.mul(z, g) == self.parent.mul(g, z)
            }))
    }

    /// Materialises the subgroup as a standalone group. The view keeps the
    /// index translation in both directions.
    pub fn as_group(&self) -> SubgroupView {
        let k = self.elements.len();
        let n = self.parent.order();
        let mut index_in_sub = vec![None; n];
        for (i, &g) in self.elements.iter().enumerate() {
            index_in_sub[g] = Some(i);
        }
        let mut mul = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                let prod = self.parent.mul(self.elements[a], self.elements[b]);
                mul[a * k + b] = index_in_sub[prod].expect("subgroup not closed") as u32;
            }
        }
        let names: Vec<String> = self
            .elements
            .iter()
            .map(|&g| self.parent.element_name(g))
            .collect();
        let name = format!("{}<{}>", self.parent.name(), k);
        let group = FiniteGroup::from_flat_table(mul, k, name, Some(names))
            .expect("subgroup table is a group");
        SubgroupView {
            parent: self.parent.clone(),
            group,
            embedding: self.elements.clone(),
            index_in_sub,
        }
    }
}

/// A subgroup materialised as a group of its own, with index translation.
#[derive(Debug, Clone)]
pub struct SubgroupView {
    pub parent: FiniteGroup,
    pub group: FiniteGroup,
    /// Subgroup element index -> parent element index.
    pub embedding: Vec<usize>,
    /// Parent element index -> subgroup element index, if a member.
    pub index_in_sub: Vec<Option<usize>>,
}

/// Quotient of a group by a central subgroup.
#[derive(Debug, Clone)]
pub struct CentralQuotient {
    pub parent: FiniteGroup,
    pub group: FiniteGroup,
    /// Parent element index -> coset index.
    pub projection: Vec<usize>,
    /// Elements of the central kernel.
    pub kernel: Vec<usize>,
}

pub(super) fn quotient_by_central(g: &FiniteGroup, c: &Subgroup) -> Result<CentralQuotient> {
    if c.parent() != g {
        return Err(Error::GroupMismatch);
    }
    if !c.is_central() {
        return Err(Error::NotCentral);
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        for &z in c.elements() {
            coset_of[g.mul(x, z)] = idx;
        }
        reps.push(x);
    }
    let m = reps.len();
    let mut mul = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            mul[a * m + b] = coset_of[g.mul(reps[a], reps[b])] as u32;
        }
    }
    let names: Vec<String> = reps
        .iter()
        .map(|&r| format!("{}{}", g.element_name(r), c.order()))
        .collect();
    let name = format!("{}/{}", g.name(), c.order());
    let group = FiniteGroup::from_flat_table(mul, m, name, Some(names))?;
    debug_assert!((0..n).all(|a| {
        (0..n).all(|b| group.mul(coset_of[a], coset_of[b]) == coset_of[g.mul(a, b)])
    }));
    Ok(CentralQuotient {
        parent: g.clone(),
        group,
        projection: coset_of,
        kernel: c.elements().to_vec(),
    })
}

/// All subgroups of `g` whose elements lie inside `within` (which must be
/// closed). Breadth-first closure search; fine at desk scale.
pub(super) fn subgroups_within(g: &FiniteGroup, within: &[usize]) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![0]);
    let mut queue: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(current) = queue.pop() {
        for &x in within {
            if current.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = current.clone();
            gens.push(x);
            let closed = g.closure(&gens);
            if closed.iter().all(|e| within.binary_search(e).is_ok())
                && found.insert(closed.clone())
            {
                queue.push(closed);
            }
        }
    }
    found
        .into_iter()
        .map(|elements| Subgroup::new_unchecked(g.clone(), elements))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::BuiltinFamily;

    #[test]
    fn subgroup_validation() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(4)).unwrap();
        assert!(Subgroup::new(g.clone(), vec![0, 2]).is_ok());
        assert!(matches!(
            Subgroup::new(g.clone(), vec![0, 1]),
            Err(Error::NotSubgroup { .. })
        ));
        assert!(matches!(
            Subgroup::new(g, vec![1, 2]),
            Err(Error::NotSubgroup { .. })
        ));
    }

    #[test]
    fn central_quotient_of_c4() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(4)).unwrap();
        let c = Subgroup::new(g.clone(), vec![0, 2]).unwrap();
        let q = g.quotient_by_central(&c).unwrap();
        assert_eq!(q.group.order(), 2);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    q.projection[g.mul(a, b)],
                    q.group.mul(q.projection[a], q.projection[b])
                );
            }
        }
    }

    #[test]
    fn trivial_quotient_is_bijective() {
        let g = FiniteGroup::builtin(BuiltinFamily::Dihedral(3)).unwrap();
        let c = Subgroup::new(g.clone(), vec![0]).unwrap();
        let q = g.quotient_by_central(&c).unwrap();
        assert_eq!(q.group.order(), g.order());
    }

    #[test]
    fn noncentral_subgroup_rejected() {
        let g = FiniteGroup::builtin(BuiltinFamily::Dihedral(3)).unwrap();
        // <rotation> has order 3 and is not central in S3.
        let rot = g.closure(&[g.generating_set()[0]]);
        let candidate = Subgroup::new(g.clone(), rot.clone());
        if let Ok(sub) = candidate {
            if sub.order() == 3 {
                assert!(matches!(
                    g.quotient_by_central(&sub),
                    Err(Error::NotCentral)
                ));
            }
        }
    }

    #[test]
    fn central_subgroups_of_v4() {
        let g = FiniteGroup::builtin(BuiltinFamily::Abelian(vec![2, 2])).unwrap();
        let subs = g.central_subgroups();
        // 1, three C2s, and the whole group.
        assert_eq!(subs.len(), 5);
    }

    #[test]
    fn subgroup_as_group_is_a_group() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(6)).unwrap();
        let s = Subgroup::new(g.clone(), vec![0, 2, 4]).unwrap();
        let view = s.as_group();
        assert_eq!(view.group.order(), 3);
        assert_eq!(view.embedding, vec![0, 2, 4]);
        assert_eq!(view.index_in_sub[4], Some(2));
    }
}
