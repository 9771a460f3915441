//! Finite groups given by explicit multiplication tables.
//!
//! Elements are the indices `0..order`, with `0` always the identity.
//! A [`FiniteGroup`] is a cheaply clonable handle to immutable shared data,
//! so groups can be passed around and captured freely; conjugacy data and
//! a default generating set are computed once on demand and cached.

mod builtin;
mod perm;
mod subgroup;
mod uri;

pub use builtin::BuiltinFamily;
pub use perm::{cycles_to_permutation, permutation_to_cycles};
pub use subgroup::{CentralQuotient, Subgroup, SubgroupView};
pub use uri::{from_uri, from_uri_capped};

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Default bound on group orders accepted by the constructors.
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// Full associativity scan is cubic; above this order only random triples
/// are checked.
const FULL_ASSOCIATIVITY_BOUND: usize = 256;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(0);

/// A finite group with a fully materialised multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupInner>,
}

struct GroupInner {
    id: u64,
    name: String,
    order: usize,
    /// Row-major `order x order` table: `mul[a * order + b] = a * b`.
    mul: Vec<u32>,
    inv: Vec<u32>,
    element_names: Option<Vec<String>>,
    classes: OnceLock<ConjugacyClassTable>,
    generators: OnceLock<GeneratingData>,
    element_orders: OnceLock<Vec<usize>>,
}

/// The conjugacy partition of a group, with deterministic representatives
/// (the least element index of each class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClassTable {
    /// Element index -> class index.
    pub class_of: Vec<usize>,
    /// Least element of each class.
    pub representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// |C_G(g)| for the representative of each class, counted directly.
    pub centralizer_orders: Vec<usize>,
    /// Elements of each class, ascending.
    pub members: Vec<Vec<usize>>,
}

impl ConjugacyClassTable {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct GeneratingData {
    pub gens: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.inner.name, self.inner.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates an `n x n` Cayley table and builds the group. The identity
    /// is relocated to index 0 by relabelling if necessary.
    pub fn from_cayley(table: &[Vec<usize>], name: impl Into<String>) -> Result<Self> {
        Self::from_cayley_capped(table, name, DEFAULT_ORDER_CAP)
    }

    pub fn from_cayley_capped(
        table: &[Vec<usize>],
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup { reason: "empty table".into() });
        }
        if n > cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup {
                    reason: format!("row {i} has length {}, expected {n}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup {
                        reason: format!("entry ({i}, {j}) = {v} is out of range"),
                    });
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat_table(flat, n, name.into(), None)
    }

    /// Closes a set of permutations of `{0..degree}` under composition and
    /// returns the resulting group. Element 0 is the identity permutation;
    /// the rest follow in breadth-first discovery order.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        name: impl Into<String>,
    ) -> Result<Self> {
        Self::from_permutations_capped(degree, generators, name, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(
        degree: usize,
        generators: &[Vec<usize>],
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Self> {
        perm::group_from_permutations(degree, generators, name.into(), cap)
    }

    /// Constructs a member of one of the built-in families.
    pub fn builtin(family: BuiltinFamily) -> Result<Self> {
        builtin::build(family, DEFAULT_ORDER_CAP)
    }

    pub(crate) fn from_flat_table(
        mul: Vec<u32>,
        n: usize,
        name: String,
        element_names: Option<Vec<String>>,
    ) -> Result<Self> {
        validate_and_build(mul, n, name, element_names)
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// Stable identity of this group instance; two handles compare equal
    /// exactly when they share it.
    pub fn id(&self) -> u64 {
        self.inner.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul[a * self.inner.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inv[a] as usize
    }

    /// `h g h^-1`.
    #[inline]
    pub fn conj(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn element_name(&self, g: usize) -> String {
        match &self.inner.element_names {
            Some(names) => names[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders()[g]
    }

    fn element_orders(&self) -> &[usize] {
        self.inner.element_orders.get_or_init(|| {
            (0..self.order())
                .map(|g| {
                    let mut x = g;
                    let mut k = 1;
                    while x != 0 {
                        x = self.mul(x, g);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    /// Exponent of the group: the lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders()
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generating_set();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set, chosen greedily: repeatedly adjoin the least
    /// element outside the closure so far. Deterministic.
    pub fn generating_set(&self) -> &[usize] {
        &self.generating_data().gens
    }

    pub(crate) fn generating_data(&self) -> &GeneratingData {
        self.inner.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut in_closure = vec![false; self.order()];
            in_closure[0] = true;
            let mut closure_size = 1;
            while closure_size < self.order() {
                let next = in_closure.iter().position(|&b| !b).expect("closure incomplete");
                gens.push(next);
                closure_size = self.close_under(&gens, &mut in_closure);
            }
            GeneratingData { gens }
        })
    }

    /// Expands `in_closure` to the subgroup generated by `gens`; returns its
    /// size. `in_closure[0]` must be set by the caller.
    fn close_under(&self, gens: &[usize], in_closure: &mut [bool]) -> usize {
        let mut queue: VecDeque<usize> =
            (0..self.order()).filter(|&g| in_closure[g]).collect();
        let mut size = queue.len();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !in_closure[y] {
                    in_closure[y] = true;
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
        size
    }

    /// Subgroup generated by a set of elements, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_closure = vec![false; self.order()];
        in_closure[0] = true;
        self.close_under(gens, &mut in_closure);
        (0..self.order()).filter(|&g| in_closure[g]).collect()
    }

    /// Breadth-first word expansion: every non-identity element reached as
    /// `parent * gen`, parents discovered first.
    pub(crate) fn bfs_words(&self, gens: &[usize]) -> (Vec<usize>, Vec<(u32, u32)>) {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut order = Vec::new();
        let mut decomp = Vec::new();
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                    decomp.push((x as u32, gi as u32));
                    queue.push_back(y);
                }
            }
        }
        (order, decomp)
    }

    /// The conjugacy partition, computed once and cached.
    pub fn classes(&self) -> &ConjugacyClassTable {
        self.inner.classes.get_or_init(|| {
            let n = self.order();
            let gens = self.generating_set().to_vec();
            let mut class_of = vec![usize::MAX; n];
            let mut representatives = Vec::new();
            let mut members: Vec<Vec<usize>> = Vec::new();
            for g in 0..n {
                if class_of[g] != usize::MAX {
                    continue;
                }
                let c = representatives.len();
                // Orbit of g under conjugation by the generators; equal to
                // the orbit under the whole group.
                let mut orbit = vec![g];
                class_of[g] = c;
                let mut head = 0;
                while head < orbit.len() {
                    let x = orbit[head];
                    head += 1;
                    for &s in &gens {
                        let y = self.conj(s, x);
                        if class_of[y] == usize::MAX {
                            class_of[y] = c;
                            orbit.push(y);
                        }
                    }
                }
                orbit.sort_unstable();
                representatives.push(g);
                members.push(orbit);
            }
            let class_sizes: Vec<usize> = members.iter().map(|m| m.len()).collect();
            let centralizer_orders: Vec<usize> = representatives
                .iter()
                .map(|&g| self.centralizer_order(g))
                .collect();
            ConjugacyClassTable {
                class_of,
                representatives,
                class_sizes,
                centralizer_orders,
                members,
            }
        })
    }

    /// |C_G(g)|, by direct count.
    pub fn centralizer_order(&self, g: usize) -> usize {
        (0..self.order())
            .filter(|&x| self.mul(x, g) == self.mul(g, x))
            .count()
    }

    /// The centre Z(G) as a subgroup.
    pub fn center(&self) -> Subgroup {
        let gens = self.generating_set();
        let elements: Vec<usize> = (0..self.order())
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::new_unchecked(self.clone(), elements)
    }

    /// Quotient of the group by a central subgroup, together with the
    /// projection map.
    pub fn quotient_by_central(&self, c: &Subgroup) -> Result<CentralQuotient> {
        subgroup::quotient_by_central(self, c)
    }

    /// Commutator subgroup, as a sorted element list.
    pub fn derived_subgroup_of(&self, elements: &[usize]) -> Vec<usize> {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order()];
        for &a in elements {
            for &b in elements {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.closure(&comms)
    }

    /// True iff the derived series reaches the trivial subgroup.
    pub fn is_solvable(&self) -> bool {
        let mut current: Vec<usize> = (0..self.order()).collect();
        loop {
            let next = self.derived_subgroup_of(&current);
            if next.len() == 1 {
                return true;
            }
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    }

    /// The subgroups contained in the centre, every one of them.
    pub fn central_subgroups(&self) -> Vec<Subgroup> {
        subgroup::subgroups_within(self, self.center().elements())
    }
}

fn validate_and_build(
    mut mul: Vec<u32>,
    n: usize,
    name: String,
    mut element_names: Option<Vec<String>>,
) -> Result<FiniteGroup> {
    debug_assert_eq!(mul.len(), n * n);
    let at = |t: &[u32], a: usize, b: usize| t[a * n + b] as usize;

    // Latin square: every row and column is a permutation.
    let mut seen = vec![false; n];
    for a in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..n {
            let v = at(&mul, a, b);
            if seen[v] {
                return Err(Error::NotAGroup {
                    reason: format!("row {a} repeats entry {v}"),
                });
            }
            seen[v] = true;
        }
    }
    for b in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for a in 0..n {
            let v = at(&mul, a, b);
            if seen[v] {
                return Err(Error::NotAGroup {
                    reason: format!("column {b} repeats entry {v}"),
                });
            }
            seen[v] = true;
        }
    }

    // Two-sided identity, relocated to index 0 if found elsewhere.
    let identity = (0..n).find(|&e| {
        (0..n).all(|g| at(&mul, e, g) == g && at(&mul, g, e) == g)
    });
    let Some(e) = identity else {
        return Err(Error::NotAGroup { reason: "no identity element".into() });
    };
    if e != 0 {
        let sigma = |x: usize| if x == 0 { e } else if x == e { 0 } else { x };
        let mut relabelled = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                relabelled[a * n + b] = sigma(at(&mul, sigma(a), sigma(b))) as u32;
            }
        }
        mul = relabelled;
        if let Some(names) = &mut element_names {
            names.swap(0, e);
        }
    }

    // Associativity: full cubic scan at small orders, random triples above.
    if n <= FULL_ASSOCIATIVITY_BOUND {
        for a in 0..n {
            for b in 0..n {
                let ab = at(&mul, a, b);
                for c in 0..n {
                    if at(&mul, ab, c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(Error::NotAGroup {
                            reason: format!("associativity fails at ({a}, {b}, {c})"),
                        });
                    }
                }
            }
        }
    } else {
        let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64);
        let mut next = move || {
            // xorshift64*; deterministic spot checks
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            state = state.wrapping_mul(0x2545f4914f6cdd1d);
            (state >> 33) as usize % n
        };
        for _ in 0..10 * n {
            let (a, b, c) = (next(), next(), next());
            let ab = at(&mul, a, b);
            if at(&mul, ab, c) != at(&mul, a, at(&mul, b, c)) {
                return Err(Error::NotAGroup {
                    reason: format!("associativity fails at ({a}, {b}, {c})"),
                });
            }
        }
    }

    // Two-sided inverses.
    let mut inv = vec![0u32; n];
    for (g, slot) in inv.iter_mut().enumerate() {
        let h = (0..n).find(|&h| at(&mul, g, h) == 0);
        match h {
            Some(h) if at(&mul, h, g) == 0 => *slot = h as u32,
            _ => {
                return Err(Error::NotAGroup {
                    reason: format!("element {g} has no two-sided inverse"),
                });
            }
        }
    }

    Ok(FiniteGroup {
        inner: Arc::new(GroupInner {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            name,
            order: n,
            mul,
            inv,
            element_names,
            classes: OnceLock::new(),
            generators: OnceLock::new(),
            element_orders: OnceLock::new(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_cayley(&[vec![0]], "1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.classes().count(), 1);
        assert!(g.is_abelian());
        assert!(g.is_solvable());
    }

    #[test]
    fn c2_from_table() {
        let g = FiniteGroup::from_cayley(&[vec![0, 1], vec![1, 0]], "C2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.element_order(1), 2);
    }

    #[test]
    fn identity_is_relocated() {
        // C3 with labels rotated so that the identity sits at index 1.
        let base = cyclic_table(3);
        let sigma = [1usize, 0, 2];
        let mut table = vec![vec![0usize; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                table[sigma[a]][sigma[b]] = sigma[base[a][b]];
            }
        }
        let g = FiniteGroup::from_cayley(&table, "C3-shuffled").unwrap();
        assert_eq!(g.mul(0, 2), 2);
        assert_eq!(g.mul(2, 0), 2);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn broken_latin_square_is_rejected() {
        let mut table = cyclic_table(6);
        table[1][2] = 9;
        assert!(matches!(
            FiniteGroup::from_cayley(&table, "bad"),
            Err(Error::NotAGroup { .. })
        ));
    }

    #[test]
    fn nonassociative_latin_square_is_rejected() {
        // Swap an intercalate of the C6 table: stays Latin with identity
        // row/column intact, but associativity breaks.
        let mut table = cyclic_table(6);
        assert_eq!(table[1][2], 3);
        assert_eq!(table[1][5], 0);
        assert_eq!(table[4][2], 0);
        assert_eq!(table[4][5], 3);
        table[1][2] = 0;
        table[1][5] = 3;
        table[4][2] = 3;
        table[4][5] = 0;
        // Independent confirmation that some triple violates associativity.
        let violates = (0..6).any(|a| {
            (0..6).any(|b| (0..6).any(|c| table[table[a][b]][c] != table[a][table[b][c]]))
        });
        assert!(violates);
        let err = FiniteGroup::from_cayley(&table, "bad").unwrap_err();
        match err {
            Error::NotAGroup { reason } => assert!(reason.contains("associativity")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn conjugacy_of_cyclic_is_singletons() {
        let g = FiniteGroup::from_cayley(&cyclic_table(8), "C8").unwrap();
        let classes = g.classes();
        assert_eq!(classes.count(), 8);
        assert!(classes.class_sizes.iter().all(|&s| s == 1));
        assert!(classes.centralizer_orders.iter().all(|&c| c == 8));
    }

    #[test]
    fn orbit_stabilizer_on_cached_classes() {
        let g = FiniteGroup::builtin(BuiltinFamily::Dihedral(6)).unwrap();
        let classes = g.classes();
        assert_eq!(classes.class_sizes.iter().sum::<usize>(), g.order());
        for c in 0..classes.count() {
            assert_eq!(classes.class_sizes[c] * classes.centralizer_orders[c], g.order());
            assert_eq!(classes.class_of[classes.representatives[c]], c);
        }
    }

    #[test]
    fn generating_set_of_cyclic_is_one_element() {
        let g = FiniteGroup::from_cayley(&cyclic_table(12), "C12").unwrap();
        assert_eq!(g.generating_set(), &[1]);
    }

    #[test]
    fn exponent_and_orders() {
        let g = FiniteGroup::builtin(BuiltinFamily::Dihedral(4)).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
    }
}
