//! Exact rationals, p-adic valuations and truncated p-adic numbers.
//!
//! Rationals are `num_rational::BigRational`. A [`PadicNumber`] is stored as
//! `p^valuation * unit` where the unit is known modulo `p^rel_precision`; the
//! relative precision is tracked per value and never exceeds the context
//! precision `M`. Exact zero is a separate variant.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// `ν_p` of a value; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_at_least(self, bound: i64) -> bool {
        self >= Valuation::Finite(bound)
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn valuation_int(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// `ν_p(x) = ν_p(numerator) − ν_p(denominator)`.
pub fn valuation(x: &BigRational, p: u64) -> Valuation {
    match valuation_int(x.numer(), p) {
        None => Valuation::Infinite,
        Some(vn) => {
            let vd = valuation_int(x.denom(), p).unwrap_or(0);
            Valuation::Finite(vn as i64 - vd as i64)
        }
    }
}

/// Strip every factor of `p` from a nonzero integer.
fn strip_p(n: &BigInt, p: u64) -> (BigInt, u64) {
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (m, v);
        }
        m = q;
        v += 1;
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let egcd = a.extended_gcd(m);
    if !egcd.gcd.is_one() {
        return None;
    }
    Some(egcd.x.mod_floor(m))
}

pub(crate) fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    // Powers of a reduced fraction are reduced, so raise the parts directly
    // instead of normalizing after every multiplication.
    let base = if e >= 0 { x.clone() } else { x.recip() };
    let e = u32::try_from(e.unsigned_abs()).expect("exponent fits in u32");
    BigRational::new_raw(base.numer().pow(e), base.denom().pow(e))
}

/// A fraction that is never reduced until [`LazyFraction::into_rational`].
/// Long sums of rationals with unrelated denominators are far cheaper this
/// way than normalizing (one gcd per operation) at every step.
#[derive(Debug, Clone)]
pub(crate) struct LazyFraction {
    num: BigInt,
    den: BigInt,
}

impl LazyFraction {
    pub(crate) fn new(x: &BigRational) -> Self {
        LazyFraction {
            num: x.numer().clone(),
            den: x.denom().clone(),
        }
    }

    pub(crate) fn integer(n: BigInt) -> Self {
        LazyFraction {
            num: n,
            den: BigInt::one(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        LazyFraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    /// `self / other`; `other` must be nonzero.
    pub(crate) fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by a zero fraction");
        LazyFraction {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return LazyFraction {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        LazyFraction {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    /// `1 − self`.
    pub(crate) fn one_minus(&self) -> Self {
        LazyFraction {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }


    pub(crate) fn neg(&self) -> Self {
        LazyFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub(crate) fn into_rational(self) -> BigRational {
        BigRational::new(self.num, self.den)
    }

    /// The p-adic value, converting numerator and denominator separately.
    pub(crate) fn to_padic(&self, ctx: PadicContext) -> Result<PadicNumber> {
        let n = to_padic(&BigRational::from_integer(self.num.clone()), ctx);
        let d = to_padic(&BigRational::from_integer(self.den.clone()), ctx);
        n.div(&d)
    }
}

/// `a · b`, skipping normalization when both are integers.
pub(crate) fn mul_rat(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// `acc += x`, skipping normalization when both are integers.
pub(crate) fn add_assign_rat(acc: &mut BigRational, x: &BigRational) {
    if acc.is_integer() && x.is_integer() {
        *acc = BigRational::from_integer(acc.numer() + x.numer());
    } else {
        *acc += x;
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Render a rational as `num/den` (or just `num` for integers).
pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `num/den` or a plain integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::precondition("rational", format!("cannot parse `{s}` as num/den"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::precondition("rational", "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Prime `p` (odd) and working precision `M`: values are handled modulo `p^M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PadicContext {
    p: u64,
    precision: u32,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::precondition("p", format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::precondition("p", "p = 2 is not supported"));
        }
        if precision == 0 {
            return Err(Error::precondition("precision", "M must be at least 1"));
        }
        Ok(PadicContext { p, precision })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn p_pow(&self, k: u32) -> BigUint {
        num_traits::pow(BigUint::from(self.p), k as usize)
    }

    pub fn modulus(&self) -> BigUint {
        self.p_pow(self.precision)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Zero,
    Nonzero {
        valuation: i64,
        unit: BigUint,
        rel_precision: u32,
    },
}

/// `p^valuation * unit + O(p^(valuation + rel_precision))`, or exact zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicNumber {
    ctx: PadicContext,
    repr: Repr,
}

/// Exponent accepted by [`PadicNumber::pow`].
#[derive(Debug, Clone)]
pub enum Exponent {
    Integer(BigInt),
    Padic(PadicNumber),
}

impl From<i64> for Exponent {
    fn from(s: i64) -> Self {
        Exponent::Integer(BigInt::from(s))
    }
}

impl PadicNumber {
    pub fn zero(ctx: PadicContext) -> Self {
        PadicNumber {
            ctx,
            repr: Repr::Zero,
        }
    }

    pub fn one(ctx: PadicContext) -> Self {
        Self::from_integer(&BigInt::one(), ctx)
    }

    pub fn from_integer(n: &BigInt, ctx: PadicContext) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()), ctx)
    }

    /// Image of `x` in `Q_p` at full context precision.
    pub fn from_rational(x: &BigRational, ctx: PadicContext) -> Self {
        if x.is_zero() {
            return Self::zero(ctx);
        }
        let (n, vn) = strip_p(x.numer(), ctx.p);
        let (d, vd) = strip_p(x.denom(), ctx.p);
        let m = BigInt::from(ctx.modulus());
        let inv = mod_inverse(&d, &m).expect("denominator is coprime to p");
        let unit = (n * inv).mod_floor(&m);
        PadicNumber {
            ctx,
            repr: Repr::Nonzero {
                valuation: vn as i64 - vd as i64,
                unit: unit.to_biguint().expect("non-negative residue"),
                rel_precision: ctx.precision,
            },
        }
    }

    /// Image of `x` known only modulo `p^abs_precision`.
    pub(crate) fn from_rational_abs(
        x: &BigRational,
        ctx: PadicContext,
        abs_precision: i64,
    ) -> Result<Self> {
        if x.is_zero() {
            return Ok(Self::zero(ctx));
        }
        let full = Self::from_rational(x, ctx);
        let v = full.valuation().finite().expect("nonzero");
        if v >= abs_precision {
            return Err(Error::PrecisionExhausted {
                known_to: abs_precision,
            });
        }
        let rel = (abs_precision - v).min(ctx.precision as i64) as u32;
        Ok(full.with_rel_precision(rel))
    }

    fn with_rel_precision(self, rel: u32) -> Self {
        match self.repr {
            Repr::Zero => self,
            Repr::Nonzero {
                valuation,
                unit,
                rel_precision,
            } => {
                let rel = rel.min(rel_precision);
                PadicNumber {
                    ctx: self.ctx,
                    repr: Repr::Nonzero {
                        valuation,
                        unit: unit % self.ctx.p_pow(rel),
                        rel_precision: rel,
                    },
                }
            }
        }
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Zero => Valuation::Infinite,
            Repr::Nonzero { valuation, .. } => Valuation::Finite(*valuation),
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Nonzero { unit, .. } => Some(unit),
        }
    }

    /// Number of known p-adic digits of the unit part; `None` for exact zero.
    pub fn rel_precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Nonzero { rel_precision, .. } => Some(*rel_precision),
        }
    }

    /// The value is known modulo `p^abs_precision`; `None` for exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Nonzero {
                valuation,
                rel_precision,
                ..
            } => Some(valuation + *rel_precision as i64),
        }
    }

    /// The rational `p^valuation * unit`.
    pub fn representative(&self) -> BigRational {
        match &self.repr {
            Repr::Zero => BigRational::zero(),
            Repr::Nonzero {
                valuation, unit, ..
            } => {
                let u = BigRational::from_integer(BigInt::from(unit.clone()));
                u * rational_pow(&rat(self.ctx.p as i64), *valuation)
            }
        }
    }

    /// The same value in another context for the same prime, keeping
    /// whatever absolute precision both contexts allow.
    pub fn to_context(&self, ctx: PadicContext) -> Result<Self> {
        assert_eq!(self.ctx.p, ctx.p, "contexts must share the prime");
        match self.abs_precision() {
            None => Ok(Self::zero(ctx)),
            Some(abs) => Self::from_rational_abs(&self.representative(), ctx, abs),
        }
    }

    fn check_ctx(&self, other: &Self) {
        assert_eq!(
            self.ctx, other.ctx,
            "p-adic operands must share a context"
        );
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Nonzero {
                valuation,
                unit,
                rel_precision,
            } => {
                let m = self.ctx.p_pow(*rel_precision);
                PadicNumber {
                    ctx: self.ctx,
                    repr: Repr::Nonzero {
                        valuation: *valuation,
                        unit: (&m - unit) % &m,
                        rel_precision: *rel_precision,
                    },
                }
            }
        }
    }

    /// Sum with precision narrowed to what both operands support.
    ///
    /// Fails with [`Error::PrecisionExhausted`] when the sum is zero to every
    /// known digit.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other);
        let (
            Repr::Nonzero {
                valuation: va,
                unit: ua,
                ..
            },
            Repr::Nonzero {
                valuation: vb,
                unit: ub,
                ..
            },
        ) = (&self.repr, &other.repr)
        else {
            return Ok(if self.is_zero() {
                other.clone()
            } else {
                self.clone()
            });
        };
        let p = self.ctx.p;
        let abs = self.abs_precision().unwrap().min(other.abs_precision().unwrap());
        let vmin = (*va).min(*vb);
        let width = (abs - vmin) as u32;
        let m = self.ctx.p_pow(width);
        let sa = ua * self.ctx.p_pow((va - vmin) as u32);
        let sb = ub * self.ctx.p_pow((vb - vmin) as u32);
        let sum = (sa + sb) % &m;
        if sum.is_zero() {
            return Err(Error::PrecisionExhausted { known_to: abs });
        }
        let (unit, e) = strip_p(&BigInt::from(sum), p);
        let rel = width - e as u32;
        Ok(PadicNumber {
            ctx: self.ctx,
            repr: Repr::Nonzero {
                valuation: vmin + e as i64,
                unit: unit.to_biguint().unwrap() % self.ctx.p_pow(rel),
                rel_precision: rel,
            },
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ctx(other);
        match (&self.repr, &other.repr) {
            (
                Repr::Nonzero {
                    valuation: va,
                    unit: ua,
                    rel_precision: pa,
                },
                Repr::Nonzero {
                    valuation: vb,
                    unit: ub,
                    rel_precision: pb,
                },
            ) => {
                let rel = (*pa).min(*pb);
                PadicNumber {
                    ctx: self.ctx,
                    repr: Repr::Nonzero {
                        valuation: va + vb,
                        unit: (ua * ub) % self.ctx.p_pow(rel),
                        rel_precision: rel,
                    },
                }
            }
            _ => Self::zero(self.ctx),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other);
        let inv = other.inverse()?;
        Ok(self.mul(&inv))
    }

    pub fn inverse(&self) -> Result<Self> {
        match &self.repr {
            Repr::Zero => Err(Error::DivisionByZero),
            Repr::Nonzero {
                valuation,
                unit,
                rel_precision,
            } => {
                let m = BigInt::from(self.ctx.p_pow(*rel_precision));
                let inv = mod_inverse(&BigInt::from(unit.clone()), &m).expect("unit");
                Ok(PadicNumber {
                    ctx: self.ctx,
                    repr: Repr::Nonzero {
                        valuation: -valuation,
                        unit: inv.to_biguint().unwrap(),
                        rel_precision: *rel_precision,
                    },
                })
            }
        }
    }

    /// Lower bound for `ν_p(self − other)`; exact when the difference is
    /// distinguishable from zero, otherwise the common absolute precision.
    pub fn difference_valuation(&self, other: &Self) -> Valuation {
        if self.is_zero() && other.is_zero() {
            return Valuation::Infinite;
        }
        match self.sub(other) {
            Ok(d) => d.valuation(),
            Err(Error::PrecisionExhausted { known_to }) => Valuation::Finite(known_to),
            Err(e) => unreachable!("subtraction cannot fail with {e}"),
        }
    }

    /// Whether `self ≡ other (mod p^k)` as far as the known digits decide it.
    pub fn congruent_mod(&self, other: &Self, k: i64) -> bool {
        self.difference_valuation(other).is_at_least(k)
    }

    /// Integer powers by repeated squaring; p-adic powers as `exp(s·log x)`.
    pub fn pow(&self, s: &Exponent) -> Result<Self> {
        match s {
            Exponent::Integer(e) => self.pow_int(e),
            Exponent::Padic(s) => {
                if s.valuation() < Valuation::Finite(0) {
                    return Err(Error::precondition("s", "p-adic exponent must satisfy |s|_p <= 1"));
                }
                let log = padic_log(self)?;
                padic_exp(&s.mul(&log))
            }
        }
    }

    fn pow_int(&self, e: &BigInt) -> Result<Self> {
        if e.is_zero() {
            return Ok(Self::one(self.ctx));
        }
        match &self.repr {
            Repr::Zero => {
                if e.is_negative() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(self.clone())
                }
            }
            Repr::Nonzero {
                valuation,
                unit,
                rel_precision,
            } => {
                let m = self.ctx.p_pow(*rel_precision);
                let mag = e.magnitude();
                let powered = unit.modpow(mag, &m);
                let v = e
                    .to_i64()
                    .and_then(|e| e.checked_mul(*valuation))
                    .ok_or_else(|| Error::precondition("s", "valuation overflow"))?;
                let out = PadicNumber {
                    ctx: self.ctx,
                    repr: Repr::Nonzero {
                        valuation: v,
                        unit: powered,
                        rel_precision: *rel_precision,
                    },
                };
                if e.is_negative() {
                    let pos = PadicNumber {
                        ctx: self.ctx,
                        repr: Repr::Nonzero {
                            valuation: -v,
                            unit: out.unit().unwrap().clone(),
                            rel_precision: *rel_precision,
                        },
                    };
                    pos.inverse()
                } else {
                    Ok(out)
                }
            }
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Nonzero {
                valuation,
                unit,
                rel_precision,
            } => write!(
                f,
                "{p}^{valuation} * {unit} + O({p}^{})",
                valuation + *rel_precision as i64,
                p = self.ctx.p
            ),
        }
    }
}

/// Serialized form `{ p, M, valuation, unit }`; zero has `valuation: null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicRecord {
    pub p: u64,
    #[serde(rename = "M")]
    pub precision: u32,
    pub valuation: Option<i64>,
    pub unit: Option<String>,
    pub rel_precision: Option<u32>,
}

impl From<&PadicNumber> for PadicRecord {
    fn from(x: &PadicNumber) -> Self {
        PadicRecord {
            p: x.ctx.p,
            precision: x.ctx.precision,
            valuation: x.valuation().finite(),
            unit: x.unit().map(|u| u.to_string()),
            rel_precision: x.rel_precision(),
        }
    }
}

impl Serialize for PadicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicRecord::from(self).serialize(s)
    }
}

/// Sum of many p-adic values. Representatives are added exactly and the
/// result is cut to the smallest absolute precision among the terms, so
/// partial sums may cancel freely.
pub fn sum_padic<'a, I>(terms: I, ctx: PadicContext) -> Result<PadicNumber>
where
    I: IntoIterator<Item = &'a PadicNumber>,
{
    let mut sum = BigRational::zero();
    let mut abs: Option<i64> = None;
    for t in terms {
        assert_eq!(t.ctx, ctx, "p-adic operands must share a context");
        if let Some(a) = t.abs_precision() {
            abs = Some(abs.map_or(a, |b| b.min(a)));
            sum += t.representative();
        }
    }
    match abs {
        None => Ok(PadicNumber::zero(ctx)),
        Some(a) => {
            if sum.is_zero() {
                return Err(Error::PrecisionExhausted { known_to: a });
            }
            PadicNumber::from_rational_abs(&sum, ctx, a)
        }
    }
}

pub fn to_padic(x: &BigRational, ctx: PadicContext) -> PadicNumber {
    PadicNumber::from_rational(x, ctx)
}

fn floor_log(p: u64, n: u64) -> i64 {
    let mut k = 0;
    let mut m = n;
    while m >= p {
        m /= p;
        k += 1;
    }
    k
}

/// Number of leading terms of the log series that can be nonzero modulo
/// `p^abs_precision` when `ν_p(x − 1) = v`: every later term satisfies
/// `n·v − floor(log_p n) >= abs_precision`, and that bound is nondecreasing in `n`.
pub fn log_terms_needed(p: u64, v: i64, abs_precision: i64) -> u64 {
    let mut n = 1u64;
    while (n as i64) * v - floor_log(p, n) < abs_precision {
        n += 1;
    }
    n - 1
}

/// Number of leading terms of the exp series that can be nonzero modulo
/// `p^abs_precision` when `ν_p(x) = v`, from `ν_p(n!) <= (n − 1)/(p − 1)`.
pub fn exp_terms_needed(p: u64, v: i64, abs_precision: i64) -> u64 {
    let pm1 = p as i64 - 1;
    let mut n = 0u64;
    while n == 0 || (n as i64) * v * pm1 - (n as i64 - 1) < abs_precision * pm1 {
        n += 1;
    }
    n
}

/// `log_p(x) = Σ (−1)^(n+1) (x − 1)^n / n`, for `x ≡ 1 (mod p)`.
pub fn padic_log(x: &PadicNumber) -> Result<PadicNumber> {
    let ctx = x.ctx;
    let (unit, rel) = match &x.repr {
        Repr::Nonzero {
            valuation: 0,
            unit,
            rel_precision,
        } if (unit % ctx.p).is_one() => (unit.clone(), *rel_precision),
        _ => {
            return Err(Error::precondition(
                "x",
                "log_p needs a unit congruent to 1 mod p",
            ))
        }
    };
    let y = BigInt::from(unit) - BigInt::one();
    if y.is_zero() {
        return Ok(PadicNumber::zero(ctx));
    }
    let abs = rel as i64;
    let v = valuation_int(&y, ctx.p).expect("nonzero") as i64;
    if v >= abs {
        return Ok(PadicNumber::zero(ctx));
    }
    let terms = log_terms_needed(ctx.p, v, abs);
    let y = BigRational::from_integer(y);
    let mut power = BigRational::one();
    let mut sum = BigRational::zero();
    for n in 1..=terms {
        power *= &y;
        let term = &power / rat(n as i64);
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    PadicNumber::from_rational_abs(&sum, ctx, abs)
}

/// `exp_p(x) = Σ x^n / n!`, for `ν_p(x) >= 1`.
pub fn padic_exp(x: &PadicNumber) -> Result<PadicNumber> {
    let ctx = x.ctx;
    let v = match x.valuation() {
        Valuation::Infinite => return Ok(PadicNumber::one(ctx)),
        Valuation::Finite(v) if v >= 1 => v,
        Valuation::Finite(_) => {
            return Err(Error::precondition("x", "exp_p needs valuation >= 1"));
        }
    };
    let abs = x.abs_precision().unwrap().min(ctx.precision as i64);
    let terms = exp_terms_needed(ctx.p, v, abs);
    let xr = x.representative();
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for n in 0..terms {
        if n > 0 {
            term = term * &xr / rat(n as i64);
        }
        sum += &term;
    }
    PadicNumber::from_rational_abs(&sum, ctx, abs)
}

pub fn padic_pow(x: &PadicNumber, s: &Exponent) -> Result<PadicNumber> {
    x.pow(s)
}

/// Teichmüller lift `ω(x) = x^(p^M) mod p^M`.
pub fn teichmuller(x: &BigInt, ctx: PadicContext) -> Result<PadicNumber> {
    let p = BigInt::from(ctx.p);
    if x.mod_floor(&p).is_zero() {
        return Err(Error::precondition("x", format!("{x} is divisible by p = {}", ctx.p)));
    }
    let m = ctx.modulus();
    let base = x.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap();
    let w = base.modpow(&m, &m);
    assert!(
        w.modpow(&BigUint::from(ctx.p - 1), &m).is_one(),
        "Teichmüller lift is not a (p-1)-th root of unity"
    );
    assert_eq!(
        (&w % ctx.p).cmp(&(&base % ctx.p)),
        Ordering::Equal,
        "Teichmüller lift does not reduce to x mod p"
    );
    Ok(PadicNumber {
        ctx,
        repr: Repr::Nonzero {
            valuation: 0,
            unit: w,
            rel_precision: ctx.precision,
        },
    })
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, m: u32) -> PadicContext {
        PadicContext::new(p, m).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&q(9, 2), 3), Valuation::Finite(2));
        assert_eq!(valuation(&q(1, 1), 5), Valuation::Finite(0));
        assert_eq!(valuation(&q(0, 1), 7), Valuation::Infinite);
        assert_eq!(valuation(&q(5, 25), 5), Valuation::Finite(-1));
    }

    #[test]
    fn context_rejects_bad_primes() {
        assert!(PadicContext::new(2, 3).is_err());
        assert!(PadicContext::new(9, 3).is_err());
        assert!(PadicContext::new(5, 0).is_err());
        assert!(PadicContext::new(7, 1).is_ok());
    }

    #[test]
    fn to_padic_examples() {
        let half = to_padic(&q(1, 2), ctx(3, 2));
        assert_eq!(half.valuation(), Valuation::Finite(0));
        assert_eq!(half.unit().unwrap(), &BigUint::from(5u32));
        assert_eq!((2 * 5) % 9, 1);

        let three = to_padic(&q(3, 1), ctx(3, 2));
        assert_eq!(three.valuation(), Valuation::Finite(1));
        assert_eq!(three.unit().unwrap(), &BigUint::from(1u32));

        assert!(to_padic(&q(0, 1), ctx(3, 2)).is_zero());
    }

    #[test]
    fn ring_examples() {
        let c = ctx(5, 2);
        let s = to_padic(&q(1, 1), c).add(&to_padic(&q(4, 1), c)).unwrap();
        assert_eq!(s.valuation(), Valuation::Finite(1));
        assert_eq!(s.unit().unwrap(), &BigUint::from(1u32));
        assert_eq!(s.rel_precision(), Some(1));

        let a = to_padic(&q(7, 1), c);
        let b = to_padic(&q(10, 1), c);
        let prod = a.mul(&b);
        assert_eq!(prod.valuation(), Valuation::Finite(1));
        assert_eq!(prod.unit().unwrap(), &BigUint::from(14u32));

        let c3 = ctx(3, 4);
        let x = to_padic(&q(18, 7), c3);
        let one = x.div(&x).unwrap();
        assert_eq!(one, PadicNumber::one(c3));
    }

    #[test]
    fn cancellation_reports_exhaustion() {
        let c = ctx(5, 3);
        let a = to_padic(&q(1, 1), c);
        let b = to_padic(&q(126, 1), c);
        assert_eq!(
            a.sub(&b).unwrap_err(),
            Error::PrecisionExhausted { known_to: 3 }
        );
        assert_eq!(a.difference_valuation(&b), Valuation::Finite(3));
        assert_eq!(a.div(&PadicNumber::zero(c)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn mixed_valuation_sum_keeps_honest_precision() {
        let c = ctx(3, 4);
        // 1/3 has abs precision 3, so the sum is known only mod 3^3.
        let s = to_padic(&q(1, 3), c).add(&to_padic(&q(1, 1), c)).unwrap();
        assert_eq!(s.valuation(), Valuation::Finite(-1));
        assert_eq!(s.abs_precision(), Some(3));
    }

    #[test]
    fn log_and_exp_examples() {
        let c = ctx(5, 4);
        assert!(padic_log(&PadicNumber::one(c)).unwrap().is_zero());
        let x = to_padic(&q(6, 1), c);
        let l = padic_log(&x).unwrap();
        assert_eq!(l.valuation(), Valuation::Finite(1));
        let back = padic_exp(&l).unwrap();
        assert!(back.congruent_mod(&x, 4));

        let c7 = ctx(7, 3);
        let p = to_padic(&q(7, 1), c7);
        let e = padic_exp(&p).unwrap();
        assert!(padic_log(&e).unwrap().congruent_mod(&p, 3));
        assert_eq!(padic_exp(&PadicNumber::zero(c7)).unwrap(), PadicNumber::one(c7));
    }

    #[test]
    fn log_exp_reject_outside_domain() {
        let c = ctx(5, 3);
        assert!(padic_log(&to_padic(&q(2, 1), c)).is_err());
        assert!(padic_log(&to_padic(&q(5, 1), c)).is_err());
        assert!(padic_exp(&to_padic(&q(2, 1), c)).is_err());
    }

    #[test]
    fn truncation_bounds() {
        // ν((x-1)^n/n) for v = 1, p = 5: n − floor(log_5 n); first n with >= 4 is 4.
        assert_eq!(log_terms_needed(5, 1, 4), 3);
        // ν(x^n/n!) >= n − (n−1)/4 for v = 1, p = 5: x^0..x^3 survive mod 5^3.
        assert_eq!(exp_terms_needed(5, 1, 3), 4);
    }

    #[test]
    fn pow_examples() {
        let c = ctx(5, 3);
        let x = to_padic(&q(6, 1), c);
        assert_eq!(x.pow(&Exponent::from(0)).unwrap(), PadicNumber::one(c));
        let direct = x.mul(&x).mul(&x).mul(&x).mul(&x);
        let five = Exponent::Padic(to_padic(&q(5, 1), c));
        let via_log = x.pow(&five).unwrap();
        assert!(via_log.congruent_mod(&direct, 3));
        assert!(x.pow(&Exponent::from(5)).unwrap().congruent_mod(&direct, 3));

        let c3 = ctx(3, 5);
        let y = to_padic(&q(4, 1), c3);
        let y9 = y.pow(&Exponent::from(9)).unwrap();
        assert!(y9.congruent_mod(&PadicNumber::one(c3), 3));

        let inv = x.pow(&Exponent::from(-2)).unwrap();
        assert!(inv.mul(&x).mul(&x).congruent_mod(&PadicNumber::one(c), 3));
    }

    #[test]
    fn teichmuller_examples() {
        let c = ctx(5, 2);
        assert_eq!(teichmuller(&big(1), c).unwrap(), PadicNumber::one(c));
        assert_eq!(
            teichmuller(&big(2), c).unwrap().unit().unwrap(),
            &BigUint::from(7u32)
        );
        assert_eq!(
            teichmuller(&big(4), c).unwrap().unit().unwrap(),
            &BigUint::from(24u32)
        );
        assert!(teichmuller(&big(10), c).is_err());
        // negative representatives reduce first
        assert_eq!(
            teichmuller(&big(-1), c).unwrap().unit().unwrap(),
            &BigUint::from(24u32)
        );
    }

    #[test]
    fn parse_and_print_rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_to_string(&q(3, -13)), "-3/13");
        assert_eq!(rational_to_string(&q(4, 2)), "2");
    }
}
