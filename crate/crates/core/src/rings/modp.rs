use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime `p >= 3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(OddPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// Representative of `x mod p` in `[0, p - 1]`.
    pub fn residue(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        OddPrime::new(p)
    }
}

impl From<OddPrime> for u64 {
    fn from(p: OddPrime) -> u64 {
        p.0
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field `Z/p`.
///
/// Binary operations panic when the operands carry different primes.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModP {
    value: u64,
    p: OddPrime,
}

impl ModP {
    pub fn new(value: u64, p: OddPrime) -> Self {
        ModP {
            value: value % p.get(),
            p,
        }
    }

    pub fn from_i64(value: i64, p: OddPrime) -> Self {
        ModP {
            value: p.residue(value),
            p,
        }
    }

    pub fn zero(p: OddPrime) -> Self {
        ModP { value: 0, p }
    }

    pub fn one(p: OddPrime) -> Self {
        ModP { value: 1, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn prime(self) -> OddPrime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = ModP::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Fermat inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.p.get() - 2))
        }
    }

    fn check(self, other: ModP) {
        assert_eq!(self.p, other.p, "mismatched moduli");
    }
}

impl fmt::Display for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Add for ModP {
    type Output = ModP;
    fn add(self, rhs: ModP) -> ModP {
        self.check(rhs);
        ModP::new(self.value + rhs.value, self.p)
    }
}

impl Sub for ModP {
    type Output = ModP;
    fn sub(self, rhs: ModP) -> ModP {
        self.check(rhs);
        ModP::new(self.value + self.p.get() - rhs.value, self.p)
    }
}

impl Mul for ModP {
    type Output = ModP;
    fn mul(self, rhs: ModP) -> ModP {
        self.check(rhs);
        let v = (self.value as u128 * rhs.value as u128) % self.p.get() as u128;
        ModP::new(v as u64, self.p)
    }
}

impl Neg for ModP {
    type Output = ModP;
    fn neg(self) -> ModP {
        ModP::new(self.p.get() - self.value, self.p)
    }
}

macro_rules! ref_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&ModP> for &ModP {
            type Output = ModP;
            fn $method(self, rhs: &ModP) -> ModP {
                (*self).$method(*rhs)
            }
        }
    };
}

ref_binop!(Add, add);
ref_binop!(Sub, sub);
ref_binop!(Mul, mul);

impl Neg for &ModP {
    type Output = ModP;
    fn neg(self) -> ModP {
        -*self
    }
}
