//! Point colorings and the pair colorings they induce.

use super::Color;
use crate::ordinal::Ordinal;

pub trait PointColoring {
    /// The color of `x`, or `None` outside the domain.
    fn color(&self, x: &Ordinal) -> Option<u64>;
}

/// `x -> CB(x)` on `w^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CbRankColoring {
    pub k: u64,
}

pub fn cb_rank_coloring(k: u64) -> CbRankColoring {
    assert!(k >= 1, "the space w^k needs k >= 1");
    CbRankColoring { k }
}

impl CbRankColoring {
    pub fn space(&self) -> Ordinal {
        Ordinal::omega_power(Ordinal::nat(self.k))
    }
}

impl PointColoring for CbRankColoring {
    fn color(&self, x: &Ordinal) -> Option<u64> {
        if *x >= self.space() {
            return None;
        }
        x.cb_rank().as_u64()
    }
}

/// Red within a point-color class, blue across classes.
pub struct PartiteColoring<C> {
    pub points: C,
}

impl<C: PointColoring> PartiteColoring<C> {
    pub fn new(points: C) -> Self {
        PartiteColoring { points }
    }

    /// `None` when `x = y` or a point is outside the domain.
    pub fn pair_color(&self, x: &Ordinal, y: &Ordinal) -> Option<Color> {
        if x == y {
            return None;
        }
        let (a, b) = (self.points.color(x)?, self.points.color(y)?);
        Some(if a == b { Color::Red } else { Color::Blue })
    }
}

/// For `x = eta + w^g` with `x > 0`, returns `eta`: the interval `(eta, x)`
/// only holds points of rank below `g`, so `x` is isolated in its rank class.
pub fn isolating_base(x: &Ordinal) -> Option<Ordinal> {
    x.tail_decompose().ok().map(|(eta, _)| eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::build::*;

    #[test]
    fn cb_examples() {
        let c = cb_rank_coloring(2);
        assert_eq!(c.color(&mono(nat(1), 3)), Some(1));
        assert_eq!(cb_rank_coloring(3).color(&sum(&[mono(nat(2), 2), nat(5)])), Some(0));
        assert_eq!(c.color(&wpow(nat(2))), None);
    }

    #[test]
    fn partite_examples() {
        let d = PartiteColoring::new(cb_rank_coloring(2));
        assert_eq!(d.pair_color(&w(), &mono(nat(1), 2)), Some(Color::Red));
        assert_eq!(d.pair_color(&nat(1), &w()), Some(Color::Blue));
        assert_eq!(d.pair_color(&w(), &w()), None);
    }

    #[test]
    fn isolation() {
        let x = poly(&[(2, 1), (1, 3)]);
        assert_eq!(isolating_base(&x), Some(poly(&[(2, 1), (1, 2)])));
        assert_eq!(isolating_base(&Ordinal::zero()), None);
    }
}
