//! Permutation-group construction: breadth-first closure of a generating
//! set of permutations, then materialisation of the Cayley table.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

use super::FiniteGroup;

/// Converts a cycle decomposition on points `1..=degree` to an image map on
/// `0..degree`. Unmentioned points are fixed.
pub fn cycles_to_permutation(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut image: Vec<usize> = (0..degree).collect();
    let mut moved = vec![false; degree];
    for cycle in cycles {
        for window in 0..cycle.len() {
            let from = cycle[window];
            let to = cycle[(window + 1) % cycle.len()];
            if from == 0 || from > degree {
                return Err(Error::ParamOutOfRange {
                    family: "permutation".into(),
                    detail: format!("cycle point {from} outside 1..={degree}"),
                });
            }
            if moved[from - 1] {
                return Err(Error::ParamOutOfRange {
                    family: "permutation".into(),
                    detail: format!("point {from} appears in two cycles"),
                });
            }
            moved[from - 1] = true;
            image[from - 1] = to - 1;
        }
    }
    Ok(image)
}

/// Cycle decomposition of an image map, for display. Fixed points omitted.
pub fn permutation_to_cycles(image: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; image.len()];
    let mut cycles = Vec::new();
    for start in 0..image.len() {
        if seen[start] || image[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = image[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = image[x];
        }
        cycles.push(cycle);
    }
    cycles
}

fn display_name(image: &[usize]) -> String {
    let cycles = permutation_to_cycles(image);
    if cycles.is_empty() {
        return "()".into();
    }
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            format!("({})", pts.join(" "))
        })
        .collect()
}

pub(super) fn group_from_permutations(
    degree: usize,
    generators: &[Vec<usize>],
    name: String,
    cap: usize,
) -> Result<FiniteGroup> {
    for (i, g) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        if g.len() != degree {
            return Err(Error::ParamOutOfRange {
                family: "permutation".into(),
                detail: format!("generator {i} has length {}, expected {degree}", g.len()),
            });
        }
        for &img in g {
            if img >= degree || seen[img] {
                return Err(Error::ParamOutOfRange {
                    family: "permutation".into(),
                    detail: format!("generator {i} is not a bijection"),
                });
            }
            seen[img] = true;
        }
    }

    // `compose(a, b)` applies b first: (a o b)(i) = a[b[i]].
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> {
        (0..degree).map(|i| a[b[i]]).collect()
    };

    let identity: Vec<usize> = (0..degree).collect();
    let mut elements: Vec<Vec<usize>> = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut queue = VecDeque::new();
    queue.push_back(0usize);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let prod = compose(&elements[i], g);
            if !index.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                index.insert(prod.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
    }

    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let prod = compose(&elements[a], &elements[b]);
            mul[a * n + b] = index[&prod] as u32;
        }
    }
    let names: Vec<String> = elements.iter().map(|p| display_name(p)).collect();
    FiniteGroup::from_flat_table(mul, n, name, Some(names))
}
