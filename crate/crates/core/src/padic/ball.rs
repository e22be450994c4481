use std::cmp::Ordering;
use std::fmt;

use crate::exact::rational::{pow_p, Rational};

use super::PAdicContext;

/// The coset `center + p^level O` with a canonical center in `[0, p^level)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ball {
    center: Rational,
    level: i64,
}

impl Ball {
    pub fn new(ctx: &PAdicContext, center: &Rational, level: i64) -> Ball {
        Ball {
            center: ctx.reduce(center, level),
            level,
        }
    }

    /// `p^level O`.
    pub fn around_zero(level: i64) -> Ball {
        Ball {
            center: Rational::from_integer(0.into()),
            level,
        }
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// Additive volume `p^{-level}`.
    pub fn volume(&self, ctx: &PAdicContext) -> Rational {
        pow_p(ctx.p(), -self.level)
    }

    pub fn contains(&self, ctx: &PAdicContext, x: &Rational) -> bool {
        ctx.reduce(x, self.level) == self.center
    }

    /// Whether `self` is a subset of `other`.
    pub fn is_inside(&self, ctx: &PAdicContext, other: &Ball) -> bool {
        self.level >= other.level && other.contains(ctx, &self.center)
    }

    pub fn contains_zero(&self) -> bool {
        use num_traits::Zero;
        self.center.is_zero()
    }

    pub fn parent(&self, ctx: &PAdicContext) -> Ball {
        Ball::new(ctx, &self.center, self.level - 1)
    }

    /// The `p` balls of the next level inside this one.
    pub fn children(&self, ctx: &PAdicContext) -> Vec<Ball> {
        let step = pow_p(ctx.p(), self.level);
        (0..ctx.p())
            .map(|k| {
                let c = &self.center + &step * Rational::from_integer(k.into());
                Ball::new(ctx, &c, self.level + 1)
            })
            .collect()
    }

    /// All sub-balls of the given deeper level.
    pub fn refine_to(&self, ctx: &PAdicContext, level: i64) -> Vec<Ball> {
        if level <= self.level {
            return vec![self.clone()];
        }
        let mut out = vec![self.clone()];
        for _ in self.level..level {
            out = out.iter().flat_map(|b| b.children(ctx)).collect();
        }
        out
    }

    /// The child of `self` on the path towards the deeper ball `inner`.
    pub fn child_towards(&self, ctx: &PAdicContext, inner: &Ball) -> Ball {
        Ball::new(ctx, &inner.center, self.level + 1)
    }

    /// `{x : a x in self}` for nonzero `a`.
    pub fn preimage_scale(&self, ctx: &PAdicContext, a: &Rational) -> Ball {
        let v = ctx.valuation(a).expect("nonzero scale");
        Ball::new(ctx, &(&self.center / a), self.level - v)
    }

    /// `{x + t : x in self}`.
    pub fn translate(&self, ctx: &PAdicContext, t: &Rational) -> Ball {
        Ball::new(ctx, &(&self.center + t), self.level)
    }

    /// Smallest valuation attained on the ball, or `None` when it contains 0
    /// (where valuations are unbounded).
    pub fn valuation(&self, ctx: &PAdicContext) -> Option<i64> {
        if self.contains_zero() {
            None
        } else {
            ctx.valuation(&self.center)
        }
    }
}

impl PartialOrd for Ball {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ball {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level, &self.center).cmp(&(other.level, &other.center))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ball({},{})", self.center, self.level)
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
