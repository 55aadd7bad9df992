//! Exact scalars: arbitrary-precision rationals with p-adic valuations, and
//! residues modulo a prime.
//!
//! The two kinds are deliberately separate types. Nothing converts between
//! them implicitly; matrix code is generic over [`Scalar`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// Field operations shared by every scalar kind.
///
/// `Field` carries whatever context is needed to build constants (nothing for
/// the rationals, the modulus for prime fields).
pub trait Scalar: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    type Field: Copy + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(field: Self::Field) -> Self;
    fn one(field: Self::Field) -> Self;
    fn from_i64(value: i64, field: Self::Field) -> Self;
    fn field(&self) -> Self::Field;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(self.field())
    }
}

/// p-adic valuation of a rational: a finite exponent, or infinity for zero.
///
/// Ordered so that `Infinity` is larger than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, AlgebraError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `p^exp` for any integer exponent.
    pub fn prime_power(p: u32, exp: i64) -> Self {
        let base = BigInt::from(p);
        let magnitude = num_traits::pow(base, exp.unsigned_abs() as usize);
        if exp >= 0 {
            Rational(BigRational::from_integer(magnitude))
        } else {
            Rational(BigRational::new(BigInt::one(), magnitude))
        }
    }

    /// Exponent of `p` in this rational; `Infinity` for zero.
    ///
    /// `p` is assumed prime; primality is checked where a building spec is
    /// constructed.
    pub fn valuation(&self, p: u32) -> Valuation {
        if self.0.is_zero() {
            return Valuation::Infinity;
        }
        let p = BigInt::from(p);
        Valuation::Finite(multiplicity(self.0.numer(), &p) - multiplicity(self.0.denom(), &p))
    }
}

fn multiplicity(value: &BigInt, p: &BigInt) -> i64 {
    let mut value = value.abs();
    let mut count = 0;
    loop {
        let (q, r) = value.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        value = q;
        count += 1;
    }
}

/// `nu_p(q)`: the p-adic valuation of `q`.
pub fn nu_p(q: &Rational, p: u32) -> Valuation {
    q.valuation(p)
}

impl Scalar for Rational {
    type Field = ();

    fn zero(_: ()) -> Self {
        Rational(BigRational::zero())
    }
    fn one(_: ()) -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(value: i64, _: ()) -> Self {
        Rational::integer(value)
    }
    fn field(&self) {}

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
}

/// Canonical `num/den` form; zero is `0/1`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `num/den` and bare integers.
impl FromStr for Rational {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.to_owned());
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let numer: BigInt = numer.trim().parse().map_err(|_| bad())?;
        let denom: BigInt = denom.trim().parse().map_err(|_| bad())?;
        Rational::new(numer, denom)
    }
}

/// Residue modulo a prime `p`, `0 <= residue < p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    residue: u32,
    modulus: u32,
}

/// Marker for the prime field `Z/pZ`, used as [`Scalar::Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField(pub u32);

impl PrimeFieldElement {
    pub fn new(value: i64, modulus: u32) -> Self {
        debug_assert!(modulus >= 2);
        let residue = value.rem_euclid(modulus as i64) as u32;
        PrimeFieldElement { residue, modulus }
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn check(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "mixed prime-field moduli");
    }

    fn pow(self, mut exp: u64) -> Self {
        let m = self.modulus as u64;
        let mut base = self.residue as u64;
        let mut acc = 1u64 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        PrimeFieldElement { residue: acc as u32, modulus: self.modulus }
    }
}

impl Scalar for PrimeFieldElement {
    type Field = PrimeField;

    fn zero(field: PrimeField) -> Self {
        PrimeFieldElement::new(0, field.0)
    }
    fn one(field: PrimeField) -> Self {
        PrimeFieldElement::new(1, field.0)
    }
    fn from_i64(value: i64, field: PrimeField) -> Self {
        PrimeFieldElement::new(value, field.0)
    }
    fn field(&self) -> PrimeField {
        PrimeField(self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.residue == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.check(*other);
        let m = self.modulus as u64;
        let r = (self.residue as u64 + other.residue as u64) % m;
        PrimeFieldElement { residue: r as u32, modulus: self.modulus }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        self.check(*other);
        let m = self.modulus as u64;
        let r = self.residue as u64 * other.residue as u64 % m;
        PrimeFieldElement { residue: r as u32, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        let r = (self.modulus - self.residue) % self.modulus;
        PrimeFieldElement { residue: r, modulus: self.modulus }
    }
    fn inv(&self) -> Option<Self> {
        // Fermat: a^(p-2)
        (self.residue != 0).then(|| self.pow(self.modulus as u64 - 2))
    }
}

/// Prints the bare residue; the modulus is part of the building spec.
impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl fmt::Debug for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

impl PartialOrd for PrimeFieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeFieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, self.residue).cmp(&(other.modulus, other.residue))
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
