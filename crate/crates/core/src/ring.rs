//! Coefficient rings: the integers, the rationals and prime fields.
//!
//! Every coefficient carries enough information to do arithmetic on its
//! own, so polynomials and matrices can use the ordinary operator traits.
//! Mixing coefficients of different rings is a programming error and
//! panics; all public entry points check ring compatibility first.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

/// A supported coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u32),
}

impl Ring {
    /// Builds the prime field `F_p`, rejecting composite or oversized moduli.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if p < 2 || p > MAX_PRIME as u64 || !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not a prime below 2^31")));
        }
        Ok(Ring::PrimeField(p as u32))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn zero(self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coeff {
        self.from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(self, n: BigInt) -> Coeff {
        match self {
            Ring::Integers => Coeff::Int(n),
            Ring::Rationals => Coeff::Rat(BigRational::from_integer(n)),
            Ring::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Coeff::Mod(r.to_u32().expect("residue fits"), p)
            }
        }
    }

    /// Builds `num / den`; only meaningful over fields (or when `den` divides `num`).
    pub fn fraction(self, num: BigInt, den: BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::InvalidCoefficient("zero denominator".into()));
        }
        match self {
            Ring::Integers => {
                let (q, r) = num.div_rem(&den);
                if !r.is_zero() {
                    return Err(Error::InvalidCoefficient(format!(
                        "{num}/{den} is not an integer"
                    )));
                }
                Ok(Coeff::Int(q))
            }
            Ring::Rationals => Ok(Coeff::Rat(BigRational::new(num, den))),
            Ring::PrimeField(_) => {
                let d = self.from_bigint(den);
                let inv = d.inverse().ok_or_else(|| {
                    Error::InvalidCoefficient("denominator vanishes in the prime field".into())
                })?;
                Ok(&self.from_bigint(num) * &inv)
            }
        }
    }

    /// Short name used in documents: `Z`, `Q` or `F<p>`.
    pub fn name(self) -> String {
        match self {
            Ring::Integers => "Z".into(),
            Ring::Rationals => "Q".into(),
            Ring::PrimeField(p) => format!("F{p}"),
        }
    }

    /// Euclidean division. Over the integers the remainder lies in `[0, |b|)`;
    /// over fields it is always zero.
    pub fn div_rem(self, a: &Coeff, b: &Coeff) -> (Coeff, Coeff) {
        match (a, b) {
            (Coeff::Int(a), Coeff::Int(b)) => {
                let (mut q, mut r) = a.div_mod_floor(b);
                if r.is_negative() {
                    // b < 0 here
                    r -= b;
                    q += 1;
                }
                (Coeff::Int(q), Coeff::Int(r))
            }
            _ => {
                let inv = b.inverse().expect("division by zero");
                (a * &inv, self.zero())
            }
        }
    }

    /// Returns `(g, s, t, u, v)` with `s·a + t·b = g`, `u·a + v·b = 0` and
    /// `s·v − t·u = 1`, so the 2×2 matrix `[[s, t], [u, v]]` is unimodular.
    pub fn ext_gcd(self, a: &Coeff, b: &Coeff) -> (Coeff, Coeff, Coeff, Coeff, Coeff) {
        match (a, b) {
            (Coeff::Int(a), Coeff::Int(b)) => {
                let e = a.extended_gcd(b);
                let g = e.gcd;
                if g.is_zero() {
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    return (
                        Coeff::Int(zero.clone()),
                        Coeff::Int(one.clone()),
                        Coeff::Int(zero.clone()),
                        Coeff::Int(zero),
                        Coeff::Int(one),
                    );
                }
                let u = -(b / &g);
                let v = a / &g;
                (
                    Coeff::Int(g),
                    Coeff::Int(e.x),
                    Coeff::Int(e.y),
                    Coeff::Int(u),
                    Coeff::Int(v),
                )
            }
            _ => {
                if !a.is_zero() {
                    let inv = a.inverse().unwrap();
                    (self.one(), inv, self.zero(), -b, a.clone())
                } else if !b.is_zero() {
                    let inv = b.inverse().unwrap();
                    (self.one(), self.zero(), inv, -b, self.zero())
                } else {
                    (self.zero(), self.one(), self.zero(), self.zero(), self.one())
                }
            }
        }
    }

    /// A unit `u` such that `u·a` is the canonical associate of `a`
    /// (nonnegative over the integers, `1` or `0` over fields).
    pub fn normalizing_unit(self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(n) if n.is_negative() => self.from_i64(-1),
            Coeff::Int(_) => self.one(),
            _ => a.inverse().unwrap_or_else(|| self.one()),
        }
    }

    /// Whether `a` divides `b`.
    pub fn divides(self, a: &Coeff, b: &Coeff) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        self.div_rem(b, a).1.is_zero()
    }

    /// Whether `a` is a unit of the ring.
    pub fn is_unit(self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(n) => n.abs().is_one(),
            _ => !a.is_zero(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
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

/// An exact coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    /// Always reduced with a positive denominator (maintained by `BigRational`).
    Rat(BigRational),
    /// Canonical residue in `[0, p)` together with `p`.
    Mod(u32, u32),
}

impl Coeff {
    pub fn ring(&self) -> Ring {
        match self {
            Coeff::Int(_) => Ring::Integers,
            Coeff::Rat(_) => Ring::Rationals,
            Coeff::Mod(_, p) => Ring::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_zero(),
            Coeff::Rat(q) => q.is_zero(),
            Coeff::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_one(),
            Coeff::Rat(q) => q.is_one(),
            Coeff::Mod(v, _) => *v == 1,
        }
    }

    /// Whether the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_negative(),
            Coeff::Rat(q) => q.is_negative(),
            Coeff::Mod(..) => false,
        }
    }

    pub fn abs(&self) -> Coeff {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, if it exists in the ring.
    pub fn inverse(&self) -> Option<Coeff> {
        match self {
            Coeff::Int(n) => {
                if n.is_one() || (-n).is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Coeff::Rat(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Coeff::Rat(q.recip()))
                }
            }
            Coeff::Mod(v, p) => {
                if *v == 0 {
                    return None;
                }
                Some(Coeff::Mod(pow_mod(*v as u64, (*p - 2) as u64, *p as u64) as u32, *p))
            }
        }
    }

    /// Magnitude used to pick small pivots during integer elimination.
    pub(crate) fn size_key(&self) -> BigInt {
        match self {
            Coeff::Int(n) => n.abs(),
            _ => BigInt::zero(),
        }
    }

    /// The integer value, when this is an integer coefficient.
    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Coeff::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Int(n) => n.to_i64(),
            Coeff::Rat(q) if q.is_integer() => q.to_integer().to_i64(),
            Coeff::Mod(v, _) => Some(*v as i64),
            _ => None,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn mismatch(a: &Coeff, b: &Coeff) -> ! {
    panic!("coefficient ring mismatch: {} vs {}", a.ring(), b.ring())
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &'a Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a + b),
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Mod(a, p), Coeff::Mod(b, q)) if p == q => {
                Coeff::Mod(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &'a Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a - b),
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a - b),
            (Coeff::Mod(a, p), Coeff::Mod(b, q)) if p == q => {
                Coeff::Mod(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &'a Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a * b),
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Mod(a, p), Coeff::Mod(b, q)) if p == q => {
                Coeff::Mod(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Int(a) => Coeff::Int(-a),
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Mod(a, p) => Coeff::Mod(if *a == 0 { 0 } else { p - a }, *p),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        match (&mut *self, rhs) {
            (Coeff::Int(a), Coeff::Int(b)) => *a += b,
            (Coeff::Rat(a), Coeff::Rat(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        match (&mut *self, rhs) {
            (Coeff::Int(a), Coeff::Int(b)) => *a -= b,
            (Coeff::Rat(a), Coeff::Rat(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(n) => write!(f, "{n}"),
            Coeff::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

/// Parses an integer or `a/b` literal in the given ring.
pub fn parse_coeff(ring: Ring, text: &str) -> Result<Coeff> {
    let text = text.trim();
    let bad = || Error::InvalidCoefficient(format!("cannot read `{text}` as a coefficient"));
    match text.split_once('/') {
        Some((n, d)) => {
            if ring == Ring::Integers {
                return Err(Error::InvalidCoefficient(format!(
                    "fraction `{text}` is not allowed over Z"
                )));
            }
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if !d.is_positive() {
                return Err(bad());
            }
            ring.fraction(n, d)
        }
        None => Ok(ring.from_bigint(text.parse().map_err(|_| bad())?)),
    }
}
