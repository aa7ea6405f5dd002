//! The finite analogue of the full-subtree lemma: in a tree of height `k`
//! with `N` children per node and 2-colored leaves, find a subtree with `M`
//! children per node and monochromatic leaves.
//!
//! The quorum `N >= 2M - 1` always suffices (at each node one color is good
//! for at least `M` of the `2M - 1` children). That bound is our own finite
//! analogue, checked by brute force in the tests.

use super::Color;
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FiniteTree {
    pub height: u32,
    pub branching: usize,
}

impl FiniteTree {
    pub fn new(height: u32, branching: usize) -> Self {
        FiniteTree { height, branching }
    }

    pub fn leaf_count(&self) -> usize {
        self.branching.pow(self.height)
    }

    /// Leaves in lexicographic order of their addresses.
    pub fn leaves(&self) -> Vec<Vec<usize>> {
        (0..self.height)
            .map(|_| 0..self.branching)
            .multi_cartesian_product()
            .collect()
    }

    fn leaf_index(&self, addr: &[usize]) -> usize {
        addr.iter().fold(0, |acc, &i| acc * self.branching + i)
    }
}

/// A full subtree: `children[node]` lists the kept children of each kept
/// internal node, addressed by its path from the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullSubtree {
    pub color: Color,
    pub children: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl FullSubtree {
    /// Addresses of the kept leaves.
    pub fn leaves(&self, height: u32) -> Vec<Vec<usize>> {
        let mut level = vec![Vec::new()];
        for _ in 0..height {
            level = level
                .iter()
                .flat_map(|node: &Vec<usize>| {
                    self.children[node].iter().map(move |&c| {
                        let mut a = node.clone();
                        a.push(c);
                        a
                    })
                })
                .collect();
        }
        level
    }
}

/// Finds a full `M`-branching subtree with leaves of one color, trying red
/// first. Returns `None` exactly when none exists.
pub fn finite_full_subtree(tree: FiniteTree, leaves: &[Color], m: usize) -> Option<FullSubtree> {
    assert_eq!(leaves.len(), tree.leaf_count(), "one color per leaf");
    assert!(m >= 1);
    for color in [Color::Red, Color::Blue] {
        let mut children = BTreeMap::new();
        if grow(tree, leaves, m, color, &mut Vec::new(), &mut children) {
            return Some(FullSubtree { color, children });
        }
    }
    None
}

/// Whether the node at `addr` carries a full subtree in `color`, recording
/// the first `m` good children of every kept node.
fn grow(
    tree: FiniteTree,
    leaves: &[Color],
    m: usize,
    color: Color,
    addr: &mut Vec<usize>,
    out: &mut BTreeMap<Vec<usize>, Vec<usize>>,
) -> bool {
    if addr.len() == tree.height as usize {
        return leaves[tree.leaf_index(addr)] == color;
    }
    let mut kept = Vec::new();
    let mut scratch = BTreeMap::new();
    for c in 0..tree.branching {
        addr.push(c);
        let ok = grow(tree, leaves, m, color, addr, &mut scratch);
        addr.pop();
        if ok {
            kept.push(c);
            if kept.len() == m {
                break;
            }
        }
    }
    if kept.len() < m {
        return false;
    }
    // Rebuild with only the kept children so that discarded attempts leave
    // no entries behind.
    for &c in &kept {
        addr.push(c);
        grow(tree, leaves, m, color, addr, out);
        addr.pop();
    }
    out.insert(addr.clone(), kept);
    true
}

/// Exhaustive search over every choice of `m` children at every node.
pub fn brute_force_full_subtree_exists(tree: FiniteTree, leaves: &[Color], m: usize) -> bool {
    fn exists(tree: FiniteTree, leaves: &[Color], m: usize, color: Color, addr: &mut Vec<usize>) -> bool {
        if addr.len() == tree.height as usize {
            return leaves[tree.leaf_index(addr)] == color;
        }
        (0..tree.branching).combinations(m).any(|choice| {
            choice.iter().all(|&c| {
                addr.push(c);
                let ok = exists(tree, leaves, m, color, addr);
                addr.pop();
                ok
            })
        })
    }
    [Color::Red, Color::Blue]
        .into_iter()
        .any(|c| exists(tree, leaves, m, c, &mut Vec::new()))
}
