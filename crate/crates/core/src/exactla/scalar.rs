use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field: either the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    // 0 encodes the rationals
    modulus: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { modulus: 0 };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec { modulus: p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// `0` selects the rationals, anything else must be prime.
    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(Self::RATIONALS)
        } else {
            Self::prime(c)
        }
    }

    pub fn kind(&self) -> FieldKind {
        match self.modulus {
            0 => FieldKind::Rationals,
            p => FieldKind::PrimeField(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus
    }

    pub fn is_rationals(&self) -> bool {
        self.modulus == 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.modulus {
            0 => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::Modular {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.modulus {
            0 => Scalar::Rational(BigRational::from_integer(v.clone())),
            p => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den`; `None` when `den` vanishes in this field.
    pub fn fraction(&self, num: i64, den: i64) -> Option<Scalar> {
        let den = self.from_i64(den);
        den.inverse().map(|inv| &self.from_i64(num) * &inv)
    }

    /// `q!` as an element of this field.
    pub fn factorial(&self, q: usize) -> Scalar {
        (1..=q as i64).fold(self.one(), |acc, k| &acc * &self.from_i64(k))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            0 => write!(f, "QQ"),
            p => write!(f, "GF({p})"),
        }
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;
    fn try_from(c: u64) -> Result<Self> {
        Self::from_characteristic(c)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.modulus
    }
}

/// Deterministic Miller-Rabin, valid on all of `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator; residues are canonical in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::RATIONALS,
            Scalar::Modular { modulus, .. } => FieldSpec { modulus: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// The value as an integer, when it is one (rationals) or as its
    /// canonical residue (prime fields).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => i64::try_from(*value).ok(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
