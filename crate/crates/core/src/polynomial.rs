//! Dense univariate polynomials over the rationals and reduced rational
//! functions in `q`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_numbers::{rational_to_string, BigRational};

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    /// `c·q^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => rational_to_string(c),
                1 => format!("({})*q", rational_to_string(c)),
                _ => format!("({})*q^{i}", rational_to_string(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `numerator / denominator` in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionQ {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunctionQ {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        Self::from_factored(numerator, vec![denominator])
    }

    /// Reduce `numerator / ∏ factors`. Each factor is cleared against the
    /// numerator separately, which keeps every gcd computation at the size of
    /// one factor rather than of the full product.
    pub fn from_factored(mut numerator: Poly, factors: Vec<Poly>) -> Result<Self> {
        if factors.iter().any(Poly::is_zero) {
            return Err(Error::pole("zero denominator polynomial"));
        }
        let mut reduced = Vec::with_capacity(factors.len());
        for mut factor in factors {
            if numerator.is_zero() {
                break;
            }
            loop {
                if factor.degree() == Some(0) {
                    break;
                }
                let (_, r) = numerator.div_rem(&factor);
                let g = factor.gcd(&r);
                if g.degree().unwrap_or(0) == 0 {
                    break;
                }
                numerator = numerator.exact_div(&g).expect("gcd divides numerator");
                factor = factor.exact_div(&g).expect("gcd divides factor");
            }
            reduced.push(factor);
        }
        if numerator.is_zero() {
            return Ok(RationalFunctionQ {
                numerator,
                denominator: Poly::one(),
            });
        }
        let denominator = reduced.iter().fold(Poly::one(), |acc, f| acc.mul(f));
        let lead = denominator.leading().unwrap().recip();
        Ok(RationalFunctionQ {
            numerator: numerator.scale(&lead),
            denominator: denominator.scale(&lead),
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.denominator.eval(q);
        if d.is_zero() {
            return Err(Error::pole(format!(
                "denominator vanishes at q = {}",
                rational_to_string(q)
            )));
        }
        Ok(self.numerator.eval(q) / d)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_numbers::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (q^2 − 1) = (q − 1)(q + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, p(&[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        assert_eq!(a.gcd(&p(&[2, 1])).degree(), Some(0));
        assert!(a.exact_div(&p(&[3, 1])).is_none());
    }

    #[test]
    fn rational_function_cancels_common_factors() {
        let r = RationalFunctionQ::from_factored(
            p(&[-1, 0, 1]),
            vec![p(&[1, -1]), p(&[2, 1])],
        )
        .unwrap();
        // (q^2−1)/((1−q)(q+2)) = −(q+1)/(q+2)
        assert_eq!(r.numerator(), &p(&[-1, -1]));
        assert_eq!(r.denominator(), &p(&[2, 1]));
        assert_eq!(r.eval(&rat(1)).unwrap(), BigRational::new((-2).into(), 3.into()));
        assert!(r.eval(&rat(-2)).is_err());
    }

    #[test]
    fn zero_numerator_normalises() {
        let r = RationalFunctionQ::new(Poly::zero(), p(&[1, 1])).unwrap();
        assert_eq!(r.denominator(), &Poly::one());
    }
}
