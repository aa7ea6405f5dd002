//! Explicit lower-bound colorings, checked exactly on their finite class
//! graphs and by seeded sampling on the underlying ordinal spaces.

mod coloring;
mod sample;
mod tree;

pub use coloring::{cb_rank_coloring, isolating_base, CbRankColoring, PartiteColoring, PointColoring};
pub use sample::{sample_below, SampleReport, Violation, ViolationKind, MAX_SAMPLE_COEFFICIENT};
pub use tree::{brute_force_full_subtree_exists, finite_full_subtree, FiniteTree, FullSubtree};

use crate::ordinal::build::{mono, nat, sum, w, wpow};
use crate::ordinal::Ordinal;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("{0} is outside the space")]
    OutsideSpace(Ordinal),
    #[error("a pair needs two distinct points, got {0} twice")]
    NotAPair(Ordinal),
    #[error("{0} lies in {1} classes")]
    Unclassified(Ordinal, usize),
    #[error("unknown witness '{0}'")]
    Unknown(String),
}

/// Ordinals `x` with `lo <= x < hi` and Cantor-Bendixson rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub lo: Ordinal,
    pub hi: Ordinal,
    pub rank: Ordinal,
}

impl ClassSpec {
    pub fn contains(&self, x: &Ordinal) -> bool {
        self.lo <= *x && *x < self.hi && x.cb_rank() == self.rank
    }
}

/// A coloring of pairs from the ordinals below `space`: a pair is blue
/// exactly when its points lie in distinct, adjacent classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessColoring {
    pub name: &'static str,
    pub claim: &'static str,
    /// All points are below this ordinal.
    pub space: Ordinal,
    pub classes: Vec<ClassSpec>,
    pub edges: Vec<(usize, usize)>,
}

impl WitnessColoring {
    fn point_check(&self, x: &Ordinal) -> Result<(), WitnessError> {
        if *x >= self.space {
            return Err(WitnessError::OutsideSpace(x.clone()));
        }
        Ok(())
    }

    /// Indices of every class containing `x`.
    pub fn classes_containing(&self, x: &Ordinal) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].contains(x))
            .collect()
    }

    pub fn class_of(&self, x: &Ordinal) -> Result<usize, WitnessError> {
        self.point_check(x)?;
        match self.classes_containing(x).as_slice() {
            [i] => Ok(*i),
            other => Err(WitnessError::Unclassified(x.clone(), other.len())),
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|&(u, v)| (u, v) == (a, b) || (v, u) == (a, b))
    }

    pub fn class_color(&self, a: usize, b: usize) -> Color {
        if a != b && self.adjacent(a, b) {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn pair_color(&self, x: &Ordinal, y: &Ordinal) -> Result<Color, WitnessError> {
        if x == y {
            return Err(WitnessError::NotAPair(x.clone()));
        }
        Ok(self.class_color(self.class_of(x)?, self.class_of(y)?))
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Exact check on the class graph.
    pub fn is_triangle_free(&self) -> bool {
        let n = self.classes.len();
        !(0..n).any(|a| {
            (a + 1..n).any(|b| {
                (b + 1..n).any(|c| self.adjacent(a, b) && self.adjacent(b, c) && self.adjacent(a, c))
            })
        })
    }

    /// Points of every shape the class predicates distinguish: each
    /// combination of small digits for the exponents present in the space,
    /// plus every class boundary and its neighbours.
    pub fn shape_representatives(&self) -> Vec<Ordinal> {
        let top = self.space.leading_exponent().as_u64().unwrap_or(0);
        let mut pts = vec![Ordinal::zero()];
        for e in 0..=top {
            let mut next = Vec::new();
            for p in &pts {
                for c in 0..=3u64 {
                    next.push(p.add(&mono(nat(top - e), c)));
                }
            }
            pts = next;
        }
        for c in &self.classes {
            for b in [&c.lo, &c.hi] {
                pts.push(b.clone());
                pts.push(b.succ());
                pts.push(b.add(&w()));
                pts.extend(b.predecessor());
            }
        }
        pts.retain(|p| *p < self.space);
        pts.sort();
        pts.dedup();
        pts
    }
}

fn class(name: &'static str, description: &'static str, lo: Ordinal, hi: Ordinal, rank: u64) -> ClassSpec {
    ClassSpec {
        name,
        description,
        lo,
        hi,
        rank: nat(rank),
    }
}

/// The eight-class coloring showing `w^2*2+w+1 -/->_cl (w+2, 3)`.
pub fn mermelstein_witness() -> WitnessColoring {
    let sq = wpow(nat(2));
    let sq2 = mono(nat(2), 2);
    let classes = vec![
        class("bottom1", "{0} u {x+1 : x < w^2}", nat(0), sq.clone(), 0),
        class("middle1", "{w*(n+1) : n < w}", nat(0), sq.clone(), 1),
        class("top1", "{w^2}", sq.clone(), sq.succ(), 2),
        class("bottom2", "{w^2+x+1 : x < w^2}", sq.succ(), sq2.clone(), 0),
        class("middle2", "{w^2+w*(n+1) : n < w}", sq.succ(), sq2.clone(), 1),
        class("top2", "{w^2*2}", sq2.clone(), sq2.succ(), 2),
        class("bottom3", "{w^2*2+x+1 : x < w}", sq2.succ(), sum(&[sq2.clone(), w()]), 0),
        class("middle3", "{w^2*2+w}", sum(&[sq2.clone(), w()]), sum(&[sq2.clone(), w(), nat(1)]), 1),
    ];
    let names: Vec<&str> = classes.iter().map(|c| c.name).collect();
    let id = |s: &str| names.iter().position(|n| *n == s).expect("class name");
    let edges = [
        ("top1", "middle1"),
        ("middle1", "bottom1"),
        ("top1", "top2"),
        ("top1", "bottom2"),
        ("bottom1", "middle2"),
        ("top2", "middle2"),
        ("middle2", "bottom2"),
        ("bottom1", "middle3"),
        ("top2", "middle3"),
        ("bottom2", "bottom3"),
        ("bottom1", "bottom3"),
    ]
    .iter()
    .map(|&(a, b)| (id(a), id(b)))
    .collect();
    WitnessColoring {
        name: "mermelstein",
        claim: "w^2*2+w+1 -/->_cl (w+2, 3), so R^cl(w+2,3) >= w^2*2+w+2",
        space: sum(&[sq2, w(), nat(1)]),
        classes,
        edges,
    }
}

/// The six-class coloring showing `w^2*2+1 -/->_top (w*2, 3)`.
pub fn omega_dot2_top_witness() -> WitnessColoring {
    let sq = wpow(nat(2));
    let sq2 = mono(nat(2), 2);
    let classes = vec![
        class("bottom1", "{0} u {x+1 : x < w^2}", nat(0), sq.clone(), 0),
        class("middle1", "{w*(n+1) : n < w}", nat(0), sq.clone(), 1),
        class("top1", "{w^2}", sq.clone(), sq.succ(), 2),
        class("bottom2", "{w^2+x+1 : x < w^2}", sq.succ(), sq2.clone(), 0),
        class("middle2", "{w^2+w*(n+1) : n < w}", sq.succ(), sq2.clone(), 1),
        class("top2", "{w^2*2}", sq2.clone(), sq2.succ(), 2),
    ];
    let names: Vec<&str> = classes.iter().map(|c| c.name).collect();
    let id = |s: &str| names.iter().position(|n| *n == s).expect("class name");
    let edges = [
        ("top1", "bottom1"),
        ("top2", "bottom2"),
        ("middle1", "bottom1"),
        ("middle2", "bottom2"),
        ("top1", "bottom2"),
        ("top2", "bottom1"),
        ("middle1", "middle2"),
    ]
    .iter()
    .map(|&(a, b)| (id(a), id(b)))
    .collect();
    WitnessColoring {
        name: "omega-dot-2-top",
        claim: "w^2*2+1 -/->_top (w*2, 3), so R^top(w*2,3) >= w^2*3",
        space: sq2.succ(),
        classes,
        edges,
    }
}

pub fn all_witnesses() -> Vec<WitnessColoring> {
    vec![mermelstein_witness(), omega_dot2_top_witness()]
}

pub fn witness_by_name(name: &str) -> Result<WitnessColoring, WitnessError> {
    all_witnesses()
        .into_iter()
        .find(|w| w.name == name)
        .ok_or_else(|| WitnessError::Unknown(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::build::poly;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn mermelstein_examples() {
        let m = mermelstein_witness();
        assert_eq!(m.classes.len(), 8);
        assert_eq!(m.edges.len(), 11);
        assert_eq!(m.pair_color(&nat(0), &w()).unwrap(), Color::Blue);
        assert_eq!(m.pair_color(&nat(0), &o("w^2")).unwrap(), Color::Red);
        assert_eq!(m.pair_color(&o("w^2"), &o("w^2*2")).unwrap(), Color::Blue);
        assert!(m.is_triangle_free());
        assert!(!m.has_loops());
    }

    #[test]
    fn top_witness_examples() {
        let t = omega_dot2_top_witness();
        assert_eq!(t.classes.len(), 6);
        assert_eq!(t.edges.len(), 7);
        assert_eq!(t.pair_color(&nat(0), &o("w^2")).unwrap(), Color::Blue);
        assert_eq!(t.pair_color(&w(), &o("w^2+w")).unwrap(), Color::Blue);
        assert_eq!(t.pair_color(&w(), &o("w^2")).unwrap(), Color::Red);
        assert!(t.is_triangle_free());
    }

    #[test]
    fn class_membership_pins() {
        let m = mermelstein_witness();
        let name = |x: &str| m.classes[m.class_of(&o(x)).unwrap()].name;
        assert_eq!(name("0"), "bottom1");
        assert_eq!(name("w*5+3"), "bottom1");
        assert_eq!(name("w*7"), "middle1");
        assert_eq!(name("w^2"), "top1");
        assert_eq!(name("w^2+1"), "bottom2");
        assert_eq!(name("w^2+w*3"), "middle2");
        assert_eq!(name("w^2*2"), "top2");
        assert_eq!(name("w^2*2+4"), "bottom3");
        assert_eq!(name("w^2*2+w"), "middle3");
        assert!(matches!(m.class_of(&o("w^2*2+w+1")), Err(WitnessError::OutsideSpace(_))));
        assert!(matches!(m.pair_color(&w(), &w()), Err(WitnessError::NotAPair(_))));
    }

    #[test]
    fn corrupted_graph_has_a_triangle() {
        let mut m = mermelstein_witness();
        m.edges.push((2, 0));
        assert!(!m.is_triangle_free());
    }

    #[test]
    fn partition_on_representatives() {
        for wc in all_witnesses() {
            let reps = wc.shape_representatives();
            assert!(reps.len() > 20);
            for x in reps {
                assert_eq!(wc.classes_containing(&x).len(), 1, "{} at {x}", wc.name);
            }
        }
        let t = omega_dot2_top_witness();
        assert!(t.shape_representatives().contains(&poly(&[(2, 2)])));
    }

    #[test]
    fn lookup() {
        assert_eq!(witness_by_name("mermelstein").unwrap().name, "mermelstein");
        assert!(witness_by_name("nope").is_err());
    }
}
