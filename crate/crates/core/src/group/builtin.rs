//! Built-in group families.

use crate::error::{Error, Result};

use super::{perm, FiniteGroup};

/// The families understood by [`FiniteGroup::builtin`] and the
/// `builtin:` URI scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltinFamily {
    /// Cyclic group of order n.
    Cyclic(usize),
    /// Dihedral group of order 2n.
    Dihedral(usize),
    /// Symmetric group on n points, n <= 6.
    Symmetric(usize),
    /// Direct product of cyclic groups with the given invariant factors.
    Abelian(Vec<usize>),
    /// Direct product of two groups.
    DirectProduct(Box<BuiltinFamily>, Box<BuiltinFamily>),
    /// The order-32 split extension of `<x>` by `<y> x <z>` with
    /// x^8 = y^2 = z^2 = 1, where y acts on x by x -> x^3 and z by
    /// x -> x^5. It has a class-preserving automorphism that is not inner.
    Paper32,
}

pub(super) fn build(family: BuiltinFamily, cap: usize) -> Result<FiniteGroup> {
    match family {
        BuiltinFamily::Cyclic(n) => cyclic(n, cap),
        BuiltinFamily::Dihedral(n) => dihedral(n, cap),
        BuiltinFamily::Symmetric(n) => symmetric(n, cap),
        BuiltinFamily::Abelian(factors) => abelian(&factors, cap),
        BuiltinFamily::DirectProduct(a, b) => {
            let left = build(*a, cap)?;
            let right = build(*b, cap)?;
            direct_product(&left, &right, cap)
        }
        BuiltinFamily::Paper32 => paper32(),
    }
}

fn cyclic(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::ParamOutOfRange {
            family: "cyclic".into(),
            detail: "order must be positive".into(),
        });
    }
    if n > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let names = (0..n)
        .map(|a| match a {
            0 => "e".into(),
            1 => "g".into(),
            _ => format!("g^{a}"),
        })
        .collect();
    FiniteGroup::from_flat_table(mul, n, format!("C{n}"), Some(names))
}

/// Elements r^a s^b with s r = r^-1 s; index a + n*b.
fn dihedral(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::ParamOutOfRange {
            family: "dihedral".into(),
            detail: "parameter must be positive".into(),
        });
    }
    let order = 2 * n;
    if order > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let idx = |a: usize, b: usize| a % n + n * (b % 2);
    let mut mul = vec![0u32; order * order];
    for a in 0..n {
        for b in 0..2 {
            for c in 0..n {
                for d in 0..2 {
                    // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b+d)
                    let shift = if b == 0 { c } else { (n - c) % n };
                    let prod = idx((a + shift) % n, b + d);
                    mul[idx(a, b) * order + idx(c, d)] = prod as u32;
                }
            }
        }
    }
    let names = (0..order)
        .map(|i| {
            let (a, b) = (i % n, i / n);
            match (a, b) {
                (0, 0) => "e".into(),
                (a, 0) => format!("r^{a}"),
                (0, _) => "s".into(),
                (a, _) => format!("r^{a}s"),
            }
        })
        .collect();
    FiniteGroup::from_flat_table(mul, order, format!("D{n}"), Some(names))
}

fn symmetric(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 6 {
        return Err(Error::ParamOutOfRange {
            family: "symmetric".into(),
            detail: format!("n must be 1..=6, got {n}"),
        });
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm::cycles_to_permutation(n, &[vec![1, 2]])?);
    }
    if n >= 3 {
        gens.push(perm::cycles_to_permutation(n, &[(1..=n).collect()])?);
    }
    FiniteGroup::from_permutations_capped(n.max(1), &gens, format!("S{n}"), cap)
}

fn abelian(factors: &[usize], cap: usize) -> Result<FiniteGroup> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(Error::ParamOutOfRange {
            family: "abelian".into(),
            detail: "factors must be a non-empty list of positive integers".into(),
        });
    }
    let order: usize = factors.iter().product();
    if order > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let k = factors.len();
    let decode = |mut i: usize| -> Vec<usize> {
        let mut coords = vec![0; k];
        for (j, &f) in factors.iter().enumerate().rev() {
            coords[j] = i % f;
            i /= f;
        }
        coords
    };
    let encode = |coords: &[usize]| -> usize {
        coords
            .iter()
            .zip(factors)
            .fold(0, |acc, (&c, &f)| acc * f + c)
    };
    let mut mul = vec![0u32; order * order];
    for a in 0..order {
        let ca = decode(a);
        for b in 0..order {
            let cb = decode(b);
            let sum: Vec<usize> = ca
                .iter()
                .zip(&cb)
                .zip(factors)
                .map(|((&x, &y), &f)| (x + y) % f)
                .collect();
            mul[a * order + b] = encode(&sum) as u32;
        }
    }
    let names = (0..order)
        .map(|i| {
            let c = decode(i);
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let label: Vec<String> = factors.iter().map(|f| format!("C{f}")).collect();
    FiniteGroup::from_flat_table(mul, order, label.join("x"), Some(names))
}

fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (n, m) = (g.order(), h.order());
    let order = n
        .checked_mul(m)
        .filter(|&o| o <= cap)
        .ok_or(Error::OrderCapExceeded { cap })?;
    let idx = |a: usize, b: usize| a * m + b;
    let mut mul = vec![0u32; order * order];
    for a1 in 0..n {
        for b1 in 0..m {
            for a2 in 0..n {
                for b2 in 0..m {
                    mul[idx(a1, b1) * order + idx(a2, b2)] =
                        idx(g.mul(a1, a2), h.mul(b1, b2)) as u32;
                }
            }
        }
    }
    let names = (0..order)
        .map(|i| format!("({},{})", g.element_name(i / m), h.element_name(i % m)))
        .collect();
    let name = format!("{}x{}", g.name(), h.name());
    FiniteGroup::from_flat_table(mul, order, name, Some(names))
}

/// Elements x^a y^b z^c with a mod 8 and b, c mod 2; index a + 8b + 16c.
/// Moving x past y or z twists the exponent: y x = x^3 y, z x = x^5 z.
fn paper32() -> Result<FiniteGroup> {
    let idx = |a: usize, b: usize, c: usize| (a % 8) + 8 * (b % 2) + 16 * (c % 2);
    let mut mul = vec![0u32; 32 * 32];
    for a in 0..8 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..8 {
                    for e in 0..2 {
                        for f in 0..2 {
                            // y^b z^c x^d = x^(d * 3^b * 5^c) y^b z^c
                            let mut twist = d;
                            if b == 1 {
                                twist = twist * 3 % 8;
                            }
                            if c == 1 {
                                twist = twist * 5 % 8;
                            }
                            let prod = idx(a + twist, b + e, c + f);
                            mul[idx(a, b, c) * 32 + idx(d, e, f)] = prod as u32;
                        }
                    }
                }
            }
        }
    }
    let names = (0..32)
        .map(|i| {
            let (a, b, c) = (i % 8, (i / 8) % 2, i / 16);
            let mut s = String::new();
            match a {
                0 => {}
                1 => s.push('x'),
                _ => s.push_str(&format!("x{a}")),
            }
            if b == 1 {
                s.push('y');
            }
            if c == 1 {
                s.push('z');
            }
            if s.is_empty() {
                s.push('e');
            }
            s
        })
        .collect();
    FiniteGroup::from_flat_table(mul, 32, "paper32".into(), Some(names))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_one_is_trivial() {
        let g = FiniteGroup::builtin(BuiltinFamily::Cyclic(1)).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn dihedral_three_matches_s3() {
        let d3 = FiniteGroup::builtin(BuiltinFamily::Dihedral(3)).unwrap();
        let s3 = FiniteGroup::builtin(BuiltinFamily::Symmetric(3)).unwrap();
        assert_eq!(d3.order(), 6);
        assert_eq!(d3.classes().count(), 3);
        // Same order and class-size multiset for two constructions of S3.
        let mut a = d3.classes().class_sizes.clone();
        let mut b = s3.classes().class_sizes.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn symmetric_bounds() {
        assert!(FiniteGroup::builtin(BuiltinFamily::Symmetric(7)).is_err());
        assert!(FiniteGroup::builtin(BuiltinFamily::Symmetric(0)).is_err());
        let s4 = FiniteGroup::builtin(BuiltinFamily::Symmetric(4)).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.classes().count(), 5);
    }

    #[test]
    fn abelian_invariant_factors() {
        let g = FiniteGroup::builtin(BuiltinFamily::Abelian(vec![2, 4])).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.classes().count(), 8);
    }

    #[test]
    fn direct_product_orders() {
        let f = BuiltinFamily::DirectProduct(
            Box::new(BuiltinFamily::Cyclic(2)),
            Box::new(BuiltinFamily::Dihedral(4)),
        );
        let g = FiniteGroup::builtin(f).unwrap();
        assert_eq!(g.order(), 16);
        assert!(!g.is_abelian());
    }

    #[test]
    fn paper32_class_data() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        assert_eq!(g.order(), 32);
        let classes = g.classes();
        assert_eq!(classes.count(), 11);
        let mut sizes = classes.class_sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn paper32_center_has_order_two() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let z = g.center();
        // x^4 (index 4) is central: 3*4 = 5*4 = 4 mod 8.
        assert!(z.contains(4));
        assert_eq!(z.order(), 2);
    }

    #[test]
    fn paper32_quotient_by_x4() {
        let g = FiniteGroup::builtin(BuiltinFamily::Paper32).unwrap();
        let c = Subgroup::new(g.clone(), vec![0, 4]).unwrap();
        let q = g.quotient_by_central(&c).unwrap();
        assert_eq!(q.group.order(), 16);
    }

    use super::super::Subgroup;

    #[test]
    fn solvability_examples() {
        let s4 = FiniteGroup::builtin(BuiltinFamily::Symmetric(4)).unwrap();
        assert!(s4.is_solvable());
        // Derived series of S4 has length 3: A4, V4, 1.
        let a4 = s4.derived_subgroup_of(&(0..24).collect::<Vec<_>>());
        assert_eq!(a4.len(), 12);
        let v4 = s4.derived_subgroup_of(&a4);
        assert_eq!(v4.len(), 4);
        assert_eq!(s4.derived_subgroup_of(&v4).len(), 1);
    }
}
