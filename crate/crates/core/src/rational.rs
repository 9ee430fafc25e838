//! Exact rationals with an inline machine-word fast path.
//!
//! Values that fit in `i64 / i64` are kept inline; anything larger spills
//! into a [`BigRational`]. Every constructor normalizes, so the two
//! representations never overlap: a value is `Small` whenever it fits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// numerator, denominator > 0, gcd = 1
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    pub fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Rational(Repr::Small(n, d));
            }
        }
        Rational(Repr::Big(r))
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Self::zero();
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        n /= g;
        d /= g;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn from_u64(n: u64) -> Self {
        Self::from_i128(n as i128, 1)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) if s != i64::MIN => Rational(Repr::Small(s, 1)),
                        _ => Rational::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                Rational::from_i128(n, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(p) if p != i64::MIN => Rational(Repr::Small(p, 1)),
                        _ => Rational::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Rational) -> Rational {
        self * &rhs.recip()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-*n, *d)),
            Repr::Big(r) => Rational::from_big(-r.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing a rational literal such as `-3/4`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

/// Least common multiple of the denominators and gcd of the numerators of a
/// coefficient list; used to scale a vector to a primitive integer vector.
pub(crate) fn primitive_scale<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    let mut small = true;
    let (mut sl, mut sg): (i128, i128) = (1, 0);
    for c in coeffs {
        match &c.0 {
            Repr::Small(n, d) if small => {
                let g = gcd_u128(sl as u128, *d as u128) as i128;
                match (sl / g).checked_mul(*d as i128) {
                    Some(l) if l < (1i128 << 62) => sl = l,
                    _ => small = false,
                }
                sg = gcd_u128(sg as u128, n.unsigned_abs() as u128) as i128;
                if !small {
                    den_lcm = BigInt::from(sl).lcm(&BigInt::from(*d));
                    num_gcd = BigInt::from(sg);
                }
            }
            _ => {
                if small {
                    small = false;
                    den_lcm = BigInt::from(sl);
                    num_gcd = BigInt::from(sg);
                }
                den_lcm = den_lcm.lcm(&c.denom());
                num_gcd = num_gcd.gcd(&c.numer());
            }
        }
    }
    if small {
        if sg == 0 {
            return Rational::one();
        }
        return Rational::from_i128(sl, sg);
    }
    if num_gcd.is_zero() {
        return Rational::one();
    }
    Rational::from_big(BigRational::new(den_lcm, num_gcd))
}
