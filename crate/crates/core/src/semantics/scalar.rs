use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `(re + i·im) / 2^exp2`, kept in normal form: never both numerators even
/// while `exp2 > 0`, and `exp2 = 0` for zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    re: BigInt,
    im: BigInt,
    exp2: u32,
}

impl ExactScalar {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>, exp2: u32) -> Self {
        let mut s = ExactScalar {
            re: re.into(),
            im: im.into(),
            exp2,
        };
        s.normalize();
        s
    }

    pub fn zero() -> Self {
        ExactScalar::new(0, 0, 0)
    }

    pub fn one() -> Self {
        ExactScalar::new(1, 0, 0)
    }

    /// `i^k`.
    pub fn i_pow(k: u8) -> Self {
        match k % 4 {
            0 => ExactScalar::new(1, 0, 0),
            1 => ExactScalar::new(0, 1, 0),
            2 => ExactScalar::new(-1, 0, 0),
            _ => ExactScalar::new(0, -1, 0),
        }
    }

    fn normalize(&mut self) {
        if self.re.is_zero() && self.im.is_zero() {
            self.exp2 = 0;
            return;
        }
        while self.exp2 > 0 && self.re.is_even() && self.im.is_even() {
            self.re >>= 1;
            self.im >>= 1;
            self.exp2 -= 1;
        }
    }

    pub fn re_num(&self) -> &BigInt {
        &self.re
    }

    pub fn im_num(&self) -> &BigInt {
        &self.im
    }

    pub fn exp2(&self) -> u32 {
        self.exp2
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            re: self.re.clone(),
            im: -&self.im,
            exp2: self.exp2,
        }
    }

    /// Multiplies by `i^k`.
    pub fn mul_i_pow(&self, k: u8) -> Self {
        let (re, im) = match k % 4 {
            0 => (self.re.clone(), self.im.clone()),
            1 => (-&self.im, self.re.clone()),
            2 => (-&self.re, -&self.im),
            _ => (self.im.clone(), -&self.re),
        };
        ExactScalar {
            re,
            im,
            exp2: self.exp2,
        }
    }

    /// Multiplies by `2^k` (k may be negative).
    pub fn scale_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            ExactScalar::new(&self.re << k as usize, &self.im << k as usize, self.exp2)
        } else {
            ExactScalar::new(self.re.clone(), self.im.clone(), self.exp2 + (-k) as u32)
        }
    }

    pub fn half(&self) -> Self {
        self.scale_pow2(-1)
    }

    pub fn re(&self) -> BigRational {
        BigRational::new(self.re.clone(), BigInt::one() << self.exp2 as usize)
    }

    pub fn im(&self) -> BigRational {
        BigRational::new(self.im.clone(), BigInt::one() << self.exp2 as usize)
    }

    /// `|z|²` as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        BigRational::new(
            &self.re * &self.re + &self.im * &self.im,
            BigInt::one() << (2 * self.exp2) as usize,
        )
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, BigInt, BigInt, u32) {
        let e = self.exp2.max(other.exp2);
        let sa = (e - self.exp2) as usize;
        let sb = (e - other.exp2) as usize;
        (
            &self.re << sa,
            &self.im << sa,
            &other.re << sb,
            &other.im << sb,
            e,
        )
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, other: &ExactScalar) -> ExactScalar {
        let (a, b, c, d, e) = self.aligned(other);
        ExactScalar::new(a + c, b + d, e)
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, other: &ExactScalar) -> ExactScalar {
        let (a, b, c, d, e) = self.aligned(other);
        ExactScalar::new(a - c, b - d, e)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, other: &ExactScalar) -> ExactScalar {
        ExactScalar::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
            self.exp2 + other.exp2,
        )
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -&self.re,
            im: -&self.im,
            exp2: self.exp2,
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = if self.exp2 == 0 {
            String::new()
        } else {
            format!("/{}", BigInt::one() << self.exp2 as usize)
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}{den}", self.re),
            (true, false) => write!(f, "{}i{den}", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({}{sign}{}i){den}", self.re, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
