//! q-brackets `[x:q] = (1 − q^x)/(1 − q)`.
//!
//! Parameters such as `q^f`, `q^d` or `q^(f p^N)` are represented as a
//! [`QBase`] sharing one root, and arguments like `(w + Σ a_j i_j)/f` as a
//! [`FractionalArg`] whose denominator must divide the base exponent. Every
//! q-power that appears is then an integer power of the root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_numbers::{rational_pow, BigRational};

/// Working parameter `q = root^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QBase {
    root: BigRational,
    exponent: u64,
}

impl QBase {
    pub fn new(root: BigRational, exponent: u64) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::precondition("q.exponent", "exponent must be >= 1"));
        }
        if root.is_one() {
            return Err(Error::QIsOne);
        }
        Ok(QBase { root, exponent })
    }

    /// `q` itself, as `q^1`.
    pub fn from_q(q: BigRational) -> Result<Self> {
        Self::new(q, 1)
    }

    /// The classical point `q = 1`; only brackets accept it.
    pub fn classical_limit() -> Self {
        QBase {
            root: BigRational::one(),
            exponent: 1,
        }
    }

    pub fn root(&self) -> &BigRational {
        &self.root
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `(root^exponent)^k = root^(exponent·k)` for a base raised further.
    pub fn raised(&self, k: u64) -> Self {
        QBase {
            root: self.root.clone(),
            exponent: self.exponent * k,
        }
    }

    /// The rational value `root^exponent`.
    pub fn value(&self) -> BigRational {
        rational_pow(&self.root, self.exponent as i64)
    }

    /// `q^m` for an integer `m`.
    pub fn pow_int(&self, m: i64) -> Result<BigRational> {
        self.root_pow(&(BigInt::from(m) * BigInt::from(self.exponent)))
    }

    /// `q^x` for a fractional argument aligned with this base.
    pub fn pow_frac(&self, x: &FractionalArg) -> Result<BigRational> {
        self.root_pow(&self.aligned_root_exponent(x)?)
    }

    /// The integer `k` with `q^x = root^k`.
    pub fn aligned_root_exponent(&self, x: &FractionalArg) -> Result<BigInt> {
        if self.exponent % x.denominator != 0 {
            return Err(Error::ExponentAlignment {
                denominator: x.denominator,
                exponent: self.exponent,
            });
        }
        Ok(&x.numerator * BigInt::from(self.exponent / x.denominator))
    }

    pub(crate) fn root_pow(&self, k: &BigInt) -> Result<BigRational> {
        let k = k
            .to_i64()
            .ok_or_else(|| Error::precondition("q", "exponent out of range"))?;
        if self.root.is_zero() && k < 0 {
            return Err(Error::precondition("q", "q = 0 with a negative exponent"));
        }
        Ok(rational_pow(&self.root, k))
    }

    fn is_one(&self) -> bool {
        self.value().is_one()
    }
}

/// `numerator / denominator`, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalArg {
    numerator: BigInt,
    denominator: u64,
}

impl FractionalArg {
    pub fn new(numerator: impl Into<BigInt>, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::precondition("denominator", "must be positive"));
        }
        let numerator = numerator.into();
        let g = numerator.gcd(&BigInt::from(denominator));
        let g = if g.is_zero() { BigInt::one() } else { g };
        Ok(FractionalArg {
            denominator: (BigInt::from(denominator) / &g).to_u64().unwrap(),
            numerator: numerator / g,
        })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        FractionalArg {
            numerator: n.into(),
            denominator: 1,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::from(self.denominator))
    }
}

/// `[x:q]`; at `q = 1` this is the limit value `x`.
pub fn qbracket(x: i64, q: &BigRational) -> Result<BigRational> {
    if q.is_one() {
        return Ok(BigRational::from_integer(BigInt::from(x)));
    }
    if q.is_zero() && x < 0 {
        return Err(Error::precondition("q", "q = 0 with negative x"));
    }
    // With q = n/d in lowest terms, [x:q] = ((d^x − n^x)/(d − n)) / d^(x−1)
    // for x ≥ 1; the quotient is exact and already reduced.
    let (n, d) = (q.numer(), q.denom());
    let m = u32::try_from(x.unsigned_abs()).map_err(|_| Error::precondition("x", "exponent too large"))?;
    if m == 0 {
        return Ok(BigRational::zero());
    }
    let top = (d.pow(m) - n.pow(m)) / (d - n);
    let positive = BigRational::new_raw(top, d.pow(m - 1));
    if x > 0 {
        Ok(positive)
    } else {
        // [−m:q] = −q^(−m) [m:q]
        Ok(-(positive * rational_pow(q, -(m as i64))))
    }
}

/// `[x:z]`, the normaliser `[p^N : z]` of the distribution `μ_z`.
pub fn qbracket_z(x: i64, z: &BigRational) -> Result<BigRational> {
    qbracket(x, z)
}

/// `[x : root^exponent]` for an aligned fractional `x`.
pub fn qbracket_base(x: &FractionalArg, base: &QBase) -> Result<BigRational> {
    let k = base.aligned_root_exponent(x)?;
    if base.root.is_one() {
        return Ok(x.to_rational());
    }
    if base.is_one() {
        return Err(Error::QIsOne);
    }
    let one = BigRational::one();
    Ok((&one - base.root_pow(&k)?) / (one - base.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_numbers::rat;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bracket_examples() {
        let q2 = rat(2);
        assert_eq!(qbracket(0, &q2).unwrap(), rat(0));
        assert_eq!(qbracket(1, &q2).unwrap(), rat(1));
        assert_eq!(qbracket(3, &q2).unwrap(), rat(7));
        assert_eq!(qbracket(-1, &q2).unwrap(), q(-1, 2));
        assert_eq!(qbracket(5, &rat(1)).unwrap(), rat(5));
        assert!(qbracket(-1, &rat(0)).is_err());
    }

    #[test]
    fn base_examples() {
        let root = q(2, 3);
        let base = QBase::new(root.clone(), 2).unwrap();
        let half = FractionalArg::new(1, 2).unwrap();
        assert_eq!(
            qbracket_base(&half, &base).unwrap(),
            rat(1) / (rat(1) + &root)
        );
        let two_halves = FractionalArg::new(2, 2).unwrap();
        assert_eq!(qbracket_base(&two_halves, &base).unwrap(), rat(1));
        let zero = FractionalArg::new(0, 5).unwrap();
        assert_eq!(qbracket_base(&zero, &base).unwrap(), rat(0));
    }

    #[test]
    fn misaligned_argument_is_rejected() {
        let base = QBase::new(rat(3), 2).unwrap();
        let third = FractionalArg::new(1, 3).unwrap();
        assert_eq!(
            qbracket_base(&third, &base).unwrap_err(),
            Error::ExponentAlignment {
                denominator: 3,
                exponent: 2
            }
        );
    }

    #[test]
    fn z_bracket_examples() {
        assert_eq!(qbracket_z(3, &rat(3)).unwrap(), rat(13));
        assert_eq!(qbracket_z(1, &q(5, 7)).unwrap(), rat(1));
        assert_eq!(qbracket_z(2, &q(5, 7)).unwrap(), q(12, 7));
    }

    #[test]
    fn qbase_rejects_degenerate_parameters() {
        assert_eq!(QBase::new(rat(1), 1).unwrap_err(), Error::QIsOne);
        assert!(QBase::new(rat(2), 0).is_err());
        assert_eq!(QBase::new(rat(2), 3).unwrap().value(), rat(8));
        assert_eq!(QBase::new(rat(2), 3).unwrap().raised(2).value(), rat(64));
    }
}
