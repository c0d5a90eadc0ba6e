//! Path lengths on the √2 lattice.
//!
//! Every G8 path length, octile distance and incremental detour penalty has
//! the form `a + b·√2` with integer `a`, `b`. [`Lattice`] stores that pair and
//! orders values exactly; `f64` is the fast approximate representation. The
//! planners are generic over [`Cost`] so the same code runs in either mode.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Exact value `ones + roots·√2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Lattice {
    pub ones: i64,
    pub roots: i64,
}

impl Lattice {
    pub const ZERO: Lattice = Lattice { ones: 0, roots: 0 };
    pub const ONE: Lattice = Lattice { ones: 1, roots: 0 };
    pub const SQRT2: Lattice = Lattice { ones: 0, roots: 1 };
    /// Sentinel for "not reached". Compares greater than every finite value.
    pub const INFINITY: Lattice = Lattice {
        ones: i64::MAX,
        roots: 0,
    };

    pub const fn new(ones: i64, roots: i64) -> Self {
        Lattice { ones, roots }
    }

    pub fn is_finite(self) -> bool {
        self.ones != i64::MAX
    }

    pub fn to_f64(self) -> f64 {
        if !self.is_finite() {
            return f64::INFINITY;
        }
        self.ones as f64 + self.roots as f64 * std::f64::consts::SQRT_2
    }

    /// Sign of `ones + roots·√2`, decided with integer arithmetic only.
    pub fn signum(self) -> Ordering {
        let (p, q) = (self.ones as i128, self.roots as i128);
        match (p.cmp(&0), q.cmp(&0)) {
            (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
            (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Less,
            (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
                Ordering::Greater
            }
            // Mixed signs: compare p² against 2q². Equality is impossible
            // because √2 is irrational.
            (Ordering::Greater, Ordering::Less) => (p * p).cmp(&(2 * q * q)),
            (Ordering::Less, Ordering::Greater) => (2 * q * q).cmp(&(p * p)),
        }
    }
}

impl Ord for Lattice {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_finite(), other.is_finite()) {
            (true, true) => (*self - *other).signum(),
            (false, false) => Ordering::Equal,
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
        }
    }
}

impl PartialOrd for Lattice {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Lattice {
    type Output = Lattice;
    fn add(self, rhs: Lattice) -> Lattice {
        Lattice::new(self.ones + rhs.ones, self.roots + rhs.roots)
    }
}

impl Sub for Lattice {
    type Output = Lattice;
    fn sub(self, rhs: Lattice) -> Lattice {
        Lattice::new(self.ones - rhs.ones, self.roots - rhs.roots)
    }
}

impl Neg for Lattice {
    type Output = Lattice;
    fn neg(self) -> Lattice {
        Lattice::new(-self.ones, -self.roots)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = |b: i64| match b {
            1 => "√2".to_string(),
            -1 => "-√2".to_string(),
            b => format!("{b}√2"),
        };
        let s = match (self.ones, self.roots) {
            _ if !self.is_finite() => "inf".to_string(),
            (a, 0) => a.to_string(),
            (0, b) => root(b),
            (a, b) if b < 0 => format!("{a}{}", root(b)),
            (a, b) => format!("{a}+{}", root(b)),
        };
        f.pad(&s)
    }
}

/// Scalar used for path costs and penalties inside the planners.
pub trait Cost:
    Copy + fmt::Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Send + Sync + 'static
{
    const ZERO: Self;
    const INFINITY: Self;

    fn from_lattice(value: Lattice) -> Self;
    /// Total order used by the priority queues.
    fn cmp_cost(&self, other: &Self) -> Ordering;
    fn is_finite(&self) -> bool;
    fn to_f64(self) -> f64;
}

impl Cost for f64 {
    const ZERO: f64 = 0.0;
    const INFINITY: f64 = f64::INFINITY;

    #[inline]
    fn from_lattice(value: Lattice) -> f64 {
        value.to_f64()
    }

    #[inline]
    fn cmp_cost(&self, other: &f64) -> Ordering {
        self.total_cmp(other)
    }

    #[inline]
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Cost for Lattice {
    const ZERO: Lattice = Lattice::ZERO;
    const INFINITY: Lattice = Lattice::INFINITY;

    #[inline]
    fn from_lattice(value: Lattice) -> Lattice {
        value
    }

    #[inline]
    fn cmp_cost(&self, other: &Lattice) -> Ordering {
        self.cmp(other)
    }

    #[inline]
    fn is_finite(&self) -> bool {
        Lattice::is_finite(*self)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        Lattice::to_f64(self)
    }
}

/// Runtime choice of [`Cost`] implementation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Arithmetic {
    #[default]
    Float,
    Lattice,
}

impl Arithmetic {
    pub fn as_str(self) -> &'static str {
        match self {
            Arithmetic::Float => "float",
            Arithmetic::Lattice => "lattice",
        }
    }
}

impl std::str::FromStr for Arithmetic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Arithmetic::Float),
            "lattice" => Ok(Arithmetic::Lattice),
            other => Err(format!("unknown arithmetic mode `{other}` (expected float or lattice)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ordering_of_close_values() {
        // 99 vs 70√2 ≈ 98.99495
        assert!(Lattice::new(99, 0) > Lattice::new(0, 70));
        // 2√2 - 2 ≈ 0.828 < 1
        assert!(Lattice::new(-2, 2) < Lattice::ONE);
        assert!(Lattice::new(-2, 2) > Lattice::ZERO);
        assert_eq!(Lattice::new(3, -2).cmp(&Lattice::new(3, -2)), Ordering::Equal);
    }

    #[test]
    fn infinity_is_largest() {
        assert!(Lattice::INFINITY > Lattice::new(i64::MAX / 4, i64::MAX / 4));
        assert!(!Lattice::INFINITY.is_finite());
        assert_eq!(Lattice::INFINITY.to_f64(), f64::INFINITY);
    }

    #[test]
    fn display() {
        assert_eq!(Lattice::new(-2, 2).to_string(), "-2+2√2");
        assert_eq!(Lattice::new(0, 1).to_string(), "√2");
        assert_eq!(format!("{:>4}", Lattice::ONE), "   1");
        assert_eq!(Lattice::new(3, -1).to_string(), "3-√2");
        assert_eq!(Lattice::new(3, -2).to_string(), "3-2√2");
    }

    proptest! {
        #[test]
        fn order_agrees_with_float(a in -10_000i64..10_000, b in -10_000i64..10_000,
                                   c in -10_000i64..10_000, d in -10_000i64..10_000) {
            let (x, y) = (Lattice::new(a, b), Lattice::new(c, d));
            let (fx, fy) = (x.to_f64(), y.to_f64());
            // float is trustworthy when the gap is well above rounding error
            if (fx - fy).abs() > 1e-6 {
                prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            }
            prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
            prop_assert_eq!(x == y, x.cmp(&y) == Ordering::Equal);
        }
    }
}
