use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::number::square_free_decompose;
use super::Rational;
use crate::error::{Error, Result};

/// An element `a + b·√d` of a real quadratic field, `d` square-free.
///
/// Rational values are stored with `b = 0` and `d = 0`, which makes them
/// compatible with every radicand. Arithmetic between two irrational values
/// with different radicands is undefined: the operators panic and the
/// `checked_*` methods return [`Error::RadicandMismatch`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl Surd {
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        let (s, free) = square_free_decompose(&d);
        let b = b * Rational::from_integer(s);
        Self::normalized(a, b, free)
    }

    fn normalized(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            return Self {
                a,
                b: Rational::zero(),
                d: BigInt::zero(),
            };
        }
        if d.is_one() {
            return Self {
                a: a + b,
                b: Rational::zero(),
                d: BigInt::zero(),
            };
        }
        Self { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn integer(a: impl Into<BigInt>) -> Self {
        Self::rational(Rational::from_integer(a.into()))
    }

    /// Exact square root of a non-negative rational.
    pub fn sqrt(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidParameters(format!("square root of negative {r}")));
        }
        // sqrt(p/q) = sqrt(p·q)/q
        let radicand = r.numer() * r.denom();
        let (s, free) = square_free_decompose(&radicand);
        let coeff = Rational::new(s, r.denom().clone());
        Ok(Self::normalized(Rational::zero(), coeff, free))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// Square-free radicand; 0 for rational values.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// `a² − b²d`
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::RadicandMismatch(self.d.to_string(), other.d.to_string())),
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.common_radicand(other).is_ok()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dq = Rational::from_integer(d.clone());
        let a = &self.a * &other.a + &self.b * &other.b * dq;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::normalized(a, b, d))
    }

    pub fn inverse(&self) -> Result<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::InvalidParameters("inverse of zero".into()));
        }
        let c = self.conjugate();
        Ok(Self::normalized(c.a / &norm, c.b / &norm, c.d))
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b²d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.signum() >= 0
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl From<Rational> for Surd {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl From<i64> for Surd {
    fn from(a: i64) -> Self {
        Self::integer(a)
    }
}

impl From<BigInt> for Surd {
    fn from(a: BigInt) -> Self {
        Self::integer(a)
    }
}

impl Add for Surd {
    type Output = Surd;

    fn add(self, rhs: Surd) -> Surd {
        self.checked_add(&rhs).expect("surd add")
    }
}

impl Sub for Surd {
    type Output = Surd;

    fn sub(self, rhs: Surd) -> Surd {
        self.checked_add(&-rhs).expect("surd sub")
    }
}

impl Mul for Surd {
    type Output = Surd;

    fn mul(self, rhs: Surd) -> Surd {
        self.checked_mul(&rhs).expect("surd mul")
    }
}

impl Div for Surd {
    type Output = Surd;

    fn div(self, rhs: Surd) -> Surd {
        self.checked_mul(&rhs.inverse().expect("surd division by zero"))
            .expect("surd div")
    }
}

impl Neg for Surd {
    type Output = Surd;

    fn neg(self) -> Surd {
        Surd {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if !self.compatible(other) {
            return None;
        }
        Some((self.clone() - other.clone()).signum().cmp(&0))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sqrt = format!("sqrt({})", self.d);
        let b_abs = self.b.abs();
        let irr = if b_abs.is_one() {
            sqrt
        } else {
            format!("{b_abs}*{sqrt}")
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{irr}"),
            (true, true) => write!(f, "-{irr}"),
            (false, false) => write!(f, "{}+{irr}", self.a),
            (false, true) => write!(f, "{}-{irr}", self.a),
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
