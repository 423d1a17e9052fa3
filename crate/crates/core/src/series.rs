//! Truncated formal power series over the rationals and the generating
//! functions built from them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::euler_barnes::BarnesParams;
use crate::exact_numbers::{factorial, rat, rational_pow, rational_to_string, BigRational};

/// `Σ_{n ≤ order} c_n t^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Builds from coefficients `c_0..c_order`; `coeffs` must be nonempty.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs order >= 0");
        TruncatedSeries { coeffs }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// `e^(ct) = Σ c^n t^n / n!`.
    pub fn scalar_exp(c: &BigRational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        for n in 0..=order {
            if n > 0 {
                term = term * c / rat(n as i64);
            }
            coeffs.push(term.clone());
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::precondition(
                "series",
                "reciprocal needs a nonzero constant term",
            ));
        }
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let s = (1..=n).fold(BigRational::zero(), |acc, k| {
                acc + &self.coeffs[k] * &out[n - k]
            });
            out.push(-s * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `n! · c_n`, i.e. the sequence this series generates exponentially.
    pub fn egf_values(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * BigRational::from_integer(factorial(n as u64)))
            .collect()
    }
}

/// Euler-Barnes polynomials `H_n^(r)(w, v | a)` for `n = 0..=n_max`, read off
/// `(1 − v)^r e^(wt) / ∏_j (e^(a_j t) − v)`.
pub fn classical_gf_coefficients(
    w: &BigRational,
    v: &BigRational,
    a: &[i64],
    n_max: usize,
) -> Result<Vec<BigRational>> {
    if v.is_one() {
        return Err(Error::precondition("v", "v = 1 makes e^(a t) − v non-invertible"));
    }
    if a.is_empty() || a.contains(&0) {
        return Err(Error::precondition("a", "parameters must be nonzero and r >= 1"));
    }
    let mut denom = TruncatedSeries::one(n_max);
    for &aj in a {
        let factor = TruncatedSeries::scalar_exp(&rat(aj), n_max)
            .sub(&TruncatedSeries::constant(v.clone(), n_max));
        denom = denom.mul(&factor);
    }
    let one_minus_v = BigRational::one() - v;
    let series = denom
        .reciprocal()?
        .mul(&TruncatedSeries::scalar_exp(w, n_max))
        .scale(&rational_pow(&one_minus_v, a.len() as i64));
    Ok(series.egf_values())
}

/// Coefficients of the q-generating function
/// `e^(t/(1−q)) (1 − u)^r Σ_{j ≤ j_max} (∏_l 1/(1 − q^(j a_l) u)) (−1)^j q^(jx) (t/(1−q))^j / j!`
/// as exponential-generating values `n! c_n`, `n ≤ n_max`. With `x = None`
/// this is the generating function of the numbers.
pub fn q_gf_coefficients(
    params: &BarnesParams,
    x: Option<i64>,
    n_max: usize,
    j_max: usize,
) -> Result<Vec<BigRational>> {
    if j_max < n_max {
        return Err(Error::precondition(
            "j_max",
            "j_max must be at least n_max for exact coefficients",
        ));
    }
    let q = params.q().value();
    if q.is_one() {
        return Err(Error::QIsOne);
    }
    let u = params.u();
    let c = (BigRational::one() - &q).recip();
    let x = x.unwrap_or(0);
    let mut inner = vec![BigRational::zero(); n_max + 1];
    // j > n_max only feeds t^j with j > n_max, so those terms are dropped.
    for (j, slot) in inner.iter_mut().enumerate() {
        let mut prod = BigRational::one();
        for (l, &al) in params.a().iter().enumerate() {
            let factor = BigRational::one() - params.q().pow_int(j as i64 * al)? * u;
            if factor.is_zero() {
                return Err(Error::pole(format!(
                    "1 - q^({j}*{al}) u (j = {j}, l = {})",
                    l + 1
                )));
            }
            prod /= factor;
        }
        let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
        *slot = prod
            * sign
            * params.q().pow_int(j as i64 * x)?
            * rational_pow(&c, j as i64)
            / BigRational::from_integer(factorial(j as u64));
    }
    let series = TruncatedSeries::scalar_exp(&c, n_max)
        .mul(&TruncatedSeries::new(inner))
        .scale(&rational_pow(&(BigRational::one() - u), params.r() as i64));
    Ok(series.egf_values())
}

/// Render a coefficient list as `num/den` strings.
pub fn render(values: &[BigRational]) -> Vec<String> {
    values.iter().map(rational_to_string).collect()
}
