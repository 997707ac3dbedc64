//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. Two implementations are
//! provided: arbitrary-precision rationals ([`Q`]) and prime fields ([`Fp`]).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field. All arithmetic is by reference so that big scalars are
/// never cloned implicitly.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Parses an integer `"n"` or a fraction `"a/b"`.
    fn parse(s: &str) -> Option<Self>;
    /// Short human-readable name of the field, e.g. `"Q"` or `"F(7)"`.
    fn name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    /// `(-1)^k`.
    fn sign(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            Self::one().neg()
        }
    }
}

/// Rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(n: i64, d: i64) -> Self {
        Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl Debug for Q {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let q = &self.0;
        if q.is_integer() {
            write!(f, "{}", q.numer())
        } else if q.is_negative() {
            write!(f, "-{}/{}", q.numer().abs(), q.denom())
        } else {
            write!(f, "{}/{}", q.numer(), q.denom())
        }
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn from_i64(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (a, b) = s.split_once('/').unwrap_or((s, "1"));
        let a = a.trim().parse::<BigInt>().ok()?;
        let b = b.trim().parse::<BigInt>().ok()?;
        if b.is_zero() {
            None
        } else {
            Some(Q(BigRational::new(a, b)))
        }
    }
    fn name() -> String {
        "Q".to_string()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.0.is_zero() || b.0.is_zero() {
            return;
        }
        self.0 += &a.0 * &b.0;
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 += &other.0;
    }
}

/// Residues modulo the prime `P`.
///
/// `P` must be a prime below 2^32; this is checked by [`Fp::new`] in debug builds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(n: i64) -> Self {
        debug_assert!(is_prime(P) && P < (1 << 32));
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= P;
        while e > 0 {
            if e & 1 == 1 {
                r = ((r as u128 * b as u128) % P as u128) as u64;
            }
            b = ((b as u128 * b as u128) % P as u128) as u64;
            e >>= 1;
        }
        r
    }
}

pub fn is_prime(n: u64) -> bool {
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

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // Print the balanced representative so that -1 reads as -1.
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + P - other.0
        })
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Fp(Self::pow(self.0, P - 2)))
        }
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn parse(s: &str) -> Option<Self> {
        let q = Q::parse(s)?.0;
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| -> u64 {
            let r = ((x % &p) + &p) % &p;
            r.try_into().expect("residue fits in u64")
        };
        let num = Fp::<P>(reduce(q.numer()));
        let den = Fp::<P>(reduce(q.denom()));
        den.inv().map(|d| num.mul(&d))
    }
    fn name() -> String {
        format!("F({P})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn rational_parsing() {
        let x = Q::parse("6/4").unwrap();
        assert_eq!(x, Q::parse("3/2").unwrap());
        assert_eq!(Q::parse("-5").unwrap(), Q::from_i64(-5));
        assert!(Q::parse("1/0").is_none());
        assert!(Q::parse("abc").is_none());
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::from_i64(3);
        assert_eq!(a.mul(&a.inv().unwrap()), F7::one());
        assert_eq!(F7::from_i64(-1), F7::from_i64(6));
        assert_eq!(F7::parse("1/2").unwrap(), F7::from_i64(4));
        assert!(F7::parse("1/7").is_none());
        assert_eq!(format!("{}", F7::from_i64(-2)), "-2");
    }

    #[test]
    fn inverses_exist_for_all_nonzero_residues() {
        for n in 1..7 {
            let x = F7::from_i64(n);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert!(F7::zero().inv().is_none());
    }

    #[test]
    fn sign_helper() {
        assert_eq!(Q::sign(3), Q::from_i64(-1));
        assert_eq!(Q::sign(-2), Q::one());
    }
}
