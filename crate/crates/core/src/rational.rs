//! Exact rationals and the circle group ℚ/ℤ.

use alloc::string::String;
use core::fmt;

use num_rational::Ratio;
use num_traits::Zero;

/// Exact rational number. Always stored reduced with a positive denominator
/// (guaranteed by [`Ratio`]).
pub type Rat = Ratio<i64>;

/// Splits `r` into its fractional and integer parts: `r = int + frac` with
/// `0 <= frac < 1`.
pub fn rational_split(r: Rat) -> (CyclicRational, i64) {
    let int = r.floor().to_integer();
    (CyclicRational::new(r), int)
}

/// An element of ℚ/ℤ, stored by its unique representative in `[0, 1)`.
///
/// This is the exponent presentation of a root of unity: the class `α`
/// stands for `e[α] = exp(2πiα)`, which is never materialized as a complex
/// number.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyclicRational(Rat);

impl CyclicRational {
    /// Reduces `r` modulo 1 to the representative in `[0, 1)`.
    pub fn new(r: Rat) -> Self {
        CyclicRational(r - Rat::from_integer(r.floor().to_integer()))
    }

    pub fn zero() -> Self {
        CyclicRational(Rat::zero())
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// The unique representative in `[0, 1)`.
    pub fn representative(self) -> Rat {
        self.0
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.0 + other.0)
    }

    pub fn scale(self, s: i64) -> Self {
        Self::new(self.0 * Rat::from_integer(s))
    }
}

impl fmt::Display for CyclicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rat_to_string(self.0))
    }
}

/// Renders a rational as `p/q`, or just `p` for integers.
pub fn rat_to_string(r: Rat) -> String {
    use alloc::format;
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => Some(Rat::from_integer(s.trim().parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    #[test]
    fn split_positive() {
        assert_eq!(rational_split(r(7, 3)), (CyclicRational::new(r(1, 3)), 2));
    }

    #[test]
    fn split_zero() {
        assert_eq!(rational_split(Rat::zero()), (CyclicRational::zero(), 0));
    }

    #[test]
    fn split_negative() {
        assert_eq!(rational_split(r(-1, 2)), (CyclicRational::new(r(1, 2)), -1));
    }

    #[test]
    fn cyclic_arithmetic_wraps() {
        let h = CyclicRational::new(r(1, 2));
        assert!(h.add(h).is_zero());
        assert_eq!(h.scale(3), h);
        assert_eq!(CyclicRational::new(r(5, 4)), CyclicRational::new(r(1, 4)));
        assert_eq!(CyclicRational::new(r(-1, 4)), CyclicRational::new(r(3, 4)));
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(rat_to_string(r(1, 2)), "1/2");
        assert_eq!(rat_to_string(r(4, 2)), "2");
        assert_eq!(rat_from_str("-3/6"), Some(r(-1, 2)));
        assert_eq!(rat_from_str("5"), Some(r(5, 1)));
        assert_eq!(rat_from_str("1/0"), None);
    }
}
