//! Consistency between construction routes and structural invariants on
//! the standard example groups.

use reidemeister::group::cycles_to_permutation;
use reidemeister::{BuiltinFamily, FiniteGroup, Subgroup};

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[test]
fn cyclic_six_two_ways() {
    let from_table = FiniteGroup::builtin(BuiltinFamily::Cyclic(6)).unwrap();
    let six_cycle = cycles_to_permutation(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap();
    let from_perms = FiniteGroup::from_permutations(6, &[six_cycle], "C6-perm").unwrap();
    assert_eq!(from_table.order(), from_perms.order());
    assert_eq!(
        sorted(from_table.classes().class_sizes.clone()),
        sorted(from_perms.classes().class_sizes.clone())
    );
    assert_eq!(from_table.exponent(), from_perms.exponent());
}

#[test]
fn s3_two_ways() {
    let dihedral = FiniteGroup::builtin(BuiltinFamily::Dihedral(3)).unwrap();
    let symmetric = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
    assert_eq!(dihedral.order(), symmetric.order());
    assert_eq!(
        sorted(dihedral.classes().class_sizes.clone()),
        sorted(symmetric.classes().class_sizes.clone())
    );
    assert_eq!(dihedral.center().order(), symmetric.center().order());
}

#[test]
fn alternating_five() {
    let a = cycles_to_permutation(5, &[vec![1, 2, 3, 4, 5]]).unwrap();
    let b = cycles_to_permutation(5, &[vec![1, 2, 3]]).unwrap();
    let a5 = FiniteGroup::from_permutations(5, &[a, b], "A5").unwrap();
    assert_eq!(a5.order(), 60);
    assert_eq!(a5.classes().count(), 5);
    assert_eq!(
        sorted(a5.classes().class_sizes.clone()),
        vec![1, 12, 12, 15, 20]
    );
    assert!(!a5.is_solvable());
    // The commutator subgroup of a perfect group is the whole group.
    let all: Vec<usize> = (0..60).collect();
    assert_eq!(a5.derived_subgroup_of(&all).len(), 60);
}

#[test]
fn frobenius_group_of_order_21() {
    let x = cycles_to_permutation(7, &[vec![1, 2, 3, 4, 5, 6, 7]]).unwrap();
    let y = cycles_to_permutation(7, &[vec![2, 3, 5], vec![4, 7, 6]]).unwrap();
    let f21 = FiniteGroup::from_permutations(7, &[x, y], "F21").unwrap();
    assert_eq!(f21.order(), 21);
    assert!(!f21.is_abelian());
    assert!(f21.is_solvable());
    assert_eq!(f21.classes().count(), 5);
    assert_eq!(f21.center().order(), 1);
}

#[test]
fn quotient_projection_is_a_homomorphism_everywhere() {
    let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
    let c = Subgroup::new(g.clone(), vec![0, 4]).unwrap();
    let q = g.quotient_by_central(&c).unwrap();
    assert_eq!(q.group.order(), 16);
    for a in 0..g.order() {
        for b in 0..g.order() {
            assert_eq!(
                q.projection[g.mul(a, b)],
                q.group.mul(q.projection[a], q.projection[b])
            );
        }
    }
}

#[test]
fn character_degrees_of_the_permutation_groups() {
    let a = cycles_to_permutation(5, &[vec![1, 2, 3, 4, 5]]).unwrap();
    let b = cycles_to_permutation(5, &[vec![1, 2, 3]]).unwrap();
    let a5 = FiniteGroup::from_permutations(5, &[a, b], "A5").unwrap();
    let table = reidemeister::chartab::character_table(&a5).unwrap();
    assert_eq!(table.degrees(), &[1, 3, 3, 4, 5]);

    let x = cycles_to_permutation(7, &[vec![1, 2, 3, 4, 5, 6, 7]]).unwrap();
    let y = cycles_to_permutation(7, &[vec![2, 3, 5], vec![4, 7, 6]]).unwrap();
    let f21 = FiniteGroup::from_permutations(7, &[x, y], "F21").unwrap();
    let table = reidemeister::chartab::character_table(&f21).unwrap();
    assert_eq!(table.degrees(), &[1, 1, 1, 3, 3]);
}

#[test]
fn centers() {
    let s4 = FiniteGroup::builtin(BuiltinFamily::Symmetric(4)).unwrap();
    assert_eq!(s4.center().order(), 1);
    let p32 = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
    assert_eq!(p32.center().elements(), &[0, 4]);
    let abelian = FiniteGroup::builtin(BuiltinFamily::Abelian(vec![2, 6])).unwrap();
    assert_eq!(abelian.center().order(), 12);
}

#[test]
fn centralizer_orders_match_class_sizes() {
    for family in [
        BuiltinFamily::Symmetric(4),
        BuiltinFamily::Paper32,
        BuiltinFamily::Dihedral(7),
    ] {
        let g = FiniteGroup::builtin(family).unwrap();
        for x in 0..g.order() {
            let class = g.classes().class_of[x];
            assert_eq!(
                g.centralizer_order(x) * g.classes().class_sizes[class],
                g.order()
            );
        }
    }
}
