//! q-Euler-Barnes numbers and polynomials `H_n^(r)(w, u, q | a_1..a_r)`.
//!
//! The closed form
//!
//! ```text
//! H_n^(r)(w,u,q|a) = (1−u)^r/(1−q)^n · Σ_{l=0}^{n} C(n,l) (−1)^l q^(lw) ∏_j 1/(1 − q^(l a_j) u)
//! ```
//!
//! is the primary evaluation route. The addition formula, Carlitz's
//! recurrence, the generating functions in [`crate::series`] and the Riemann
//! sums in [`crate::padic_integration`] are independent routes checked
//! against it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_numbers::{
    binomial, rat, rational_pow, sum_padic, to_padic, BigRational, LazyFraction, PadicContext,
    PadicNumber,
};
use crate::polynomial::{Poly, RationalFunctionQ};
use crate::qnum::{qbracket, FractionalArg, QBase};
use crate::series::classical_gf_coefficients;

/// `r`, `a_1..a_r`, `u` and `q` of `H_n^(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarnesParams {
    a: Vec<i64>,
    u: BigRational,
    q: QBase,
}

impl BarnesParams {
    pub fn new(a: Vec<i64>, u: BigRational, q: QBase) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::precondition("r", "at least one parameter a_j is required"));
        }
        if let Some(j) = a.iter().position(|&x| x == 0) {
            return Err(Error::precondition(
                "a",
                format!("a_{} is zero", j + 1),
            ));
        }
        if u.is_zero() || u.is_one() {
            return Err(Error::precondition("u", "u must not be 0 or 1"));
        }
        Ok(BarnesParams { a, u, q })
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    pub fn q(&self) -> &QBase {
        &self.q
    }

    pub fn with_u(&self, u: BigRational) -> Result<Self> {
        Self::new(self.a.clone(), u, self.q.clone())
    }

    pub fn with_q(&self, q: QBase) -> Self {
        BarnesParams {
            a: self.a.clone(),
            u: self.u.clone(),
            q,
        }
    }
}

/// Closed-form value of `H_n^(r)(w, u, q | a)`.
pub fn h_closed(n: u64, w: &FractionalArg, params: &BarnesParams) -> Result<BigRational> {
    Ok(h_closed_lazy(n, w, params)?.into_rational())
}

/// [`h_closed`] as an unreduced fraction.
pub(crate) fn h_closed_lazy(n: u64, w: &FractionalArg, params: &BarnesParams) -> Result<LazyFraction> {
    let qv = params.q().value();
    if qv.is_one() {
        return Err(Error::QIsOne);
    }
    let mut sum = LazyFraction::integer(BigInt::zero());
    for term in closed_form_terms(n, w, params)? {
        sum = sum.add(&term);
    }
    let one = BigRational::one();
    let scale = rational_pow(&(&one - params.u()), params.r() as i64)
        / rational_pow(&(&one - &qv), n as i64);
    Ok(sum.mul(&LazyFraction::new(&scale)))
}

/// The summands `C(n,l) (−1)^l q^(lw) ∏_j 1/(1 − q^(l a_j) u)`, `l = 0..=n`,
/// of the closed form, left unreduced.
fn closed_form_terms(n: u64, w: &FractionalArg, params: &BarnesParams) -> Result<Vec<LazyFraction>> {
    let q = params.q();
    let w_root = q.aligned_root_exponent(w)?;
    let u = LazyFraction::new(params.u());
    let mut terms = Vec::with_capacity(n as usize + 1);
    for l in 0..=n {
        let mut c = binomial(n, l);
        if l % 2 == 1 {
            c = -c;
        }
        let mut term = LazyFraction::integer(c)
            .mul(&LazyFraction::new(&q.root_pow(&(&w_root * BigInt::from(l)))?));
        for (j, &aj) in params.a().iter().enumerate() {
            let factor = LazyFraction::new(&q.pow_int(l as i64 * aj)?).mul(&u).one_minus();
            if factor.is_zero() {
                return Err(Error::pole(format!(
                    "1 - q^({l}*{aj}) u (l = {l}, j = {})",
                    j + 1
                )));
            }
            term = term.div(&factor);
        }
        terms.push(term);
    }
    Ok(terms)
}

/// The closed form evaluated term by term in `Q_p`. Every term is reduced
/// as soon as it is formed, so no common denominator is ever built; the final
/// division by `(1 − q)^n` costs `n ν_p(1 − q)` digits of absolute precision.
pub fn h_closed_padic(
    n: u64,
    w: &FractionalArg,
    params: &BarnesParams,
    ctx: PadicContext,
) -> Result<PadicNumber> {
    let qv = params.q().value();
    if qv.is_one() {
        return Err(Error::QIsOne);
    }
    let terms = closed_form_terms(n, w, params)?
        .iter()
        .map(|t| t.to_padic(ctx))
        .collect::<Result<Vec<_>>>()?;
    let one = BigRational::one();
    let scale = rational_pow(&(&one - params.u()), params.r() as i64) / rational_pow(&(&one - &qv), n as i64);
    Ok(sum_padic(&terms, ctx)?.mul(&to_padic(&scale, ctx)))
}

/// The numbers `H_n^(r)(u, q | a) = H_n^(r)(0, u, q | a)`.
pub fn h_number(n: u64, params: &BarnesParams) -> Result<BigRational> {
    h_closed(n, &FractionalArg::integer(0), params)
}

/// `H_n^(r)(w,u,q|a) = Σ_k C(n,k) [w:q]^(n−k) q^(wk) H_k^(r)(u,q|a)`.
pub fn h_addition(n: u64, w: i64, params: &BarnesParams) -> Result<BigRational> {
    let qv = params.q().value();
    let bracket = qbracket(w, &qv)?;
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let hk = h_number(k, params)?;
        sum += BigRational::from_integer(binomial(n, k))
            * rational_pow(&bracket, (n - k) as i64)
            * params.q().pow_int(w * k as i64)?
            * hk;
    }
    Ok(sum)
}

/// Carlitz's q-Frobenius-Euler numbers from `H_0 = 1`, `(qH + 1)^k = u H_k`:
/// `H_k = Σ_{i<k} C(k,i) q^i H_i / (u − q^k)`.
pub fn h_carlitz(k: u64, u: &BigRational, q: &BigRational) -> Result<BigRational> {
    Ok(carlitz_sequence(k, u, q)?.pop().expect("nonempty"))
}

/// `H_0(u:q), .., H_k(u:q)`.
pub fn carlitz_sequence(k: u64, u: &BigRational, q: &BigRational) -> Result<Vec<BigRational>> {
    let mut hs = vec![BigRational::one()];
    for m in 1..=k {
        let pivot = u - rational_pow(q, m as i64);
        if pivot.is_zero() {
            return Err(Error::pole(format!("u - q^{m}")));
        }
        let s = (0..m).fold(BigRational::zero(), |acc, i| {
            acc + BigRational::from_integer(binomial(m, i))
                * rational_pow(q, i as i64)
                * &hs[i as usize]
        });
        hs.push(s / pivot);
    }
    Ok(hs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Factor {
    /// `1 − u q^m`, m > 0
    OneMinusUq(u64),
    /// `q^m − u`, m > 0 (from `1 − u q^(−m)` after clearing `q^m`)
    QmMinusU(u64),
    /// `q`
    Q,
    /// `1 − q`
    OneMinusQ,
}

impl Factor {
    fn poly(self, u: &BigRational) -> Poly {
        match self {
            Factor::OneMinusUq(m) => {
                Poly::one().sub(&Poly::monomial(u.clone(), m as usize))
            }
            Factor::QmMinusU(m) => {
                Poly::monomial(BigRational::one(), m as usize).sub(&Poly::constant(u.clone()))
            }
            Factor::Q => Poly::monomial(BigRational::one(), 1),
            Factor::OneMinusQ => Poly::new(vec![rat(1), rat(-1)]),
        }
    }
}

/// Bound on the degrees of the reduced numerator and denominator of
/// [`h_rational_in_q`].
pub fn rational_degree_bound(n: u64, w: i64, a: &[i64]) -> usize {
    let sa: u64 = a.iter().map(|x| x.unsigned_abs()).sum();
    (n * w.unsigned_abs() + sa * n * (n + 1) / 2 + n) as usize
}

/// The closed form as a reduced rational function of `q`, for integer `w`.
pub fn h_rational_in_q(n: u64, w: i64, a: &[i64], u: &BigRational) -> Result<RationalFunctionQ> {
    if u.is_zero() || u.is_one() {
        return Err(Error::precondition("u", "u must not be 0 or 1"));
    }
    if a.is_empty() || a.contains(&0) {
        return Err(Error::precondition("a", "parameters must be nonzero and r >= 1"));
    }
    let one = BigRational::one();
    // Each l-term is coeff · q^shift / ∏ factors^mult.
    struct Term {
        coeff: BigRational,
        shift: u64,
        factors: BTreeMap<Factor, u64>,
    }
    let mut terms = Vec::new();
    for l in 0..=n {
        let mut coeff = BigRational::from_integer(binomial(n, l));
        if l % 2 == 1 {
            coeff = -coeff;
        }
        let mut shift = 0u64;
        let mut factors = BTreeMap::new();
        let lw = l as i64 * w;
        if lw >= 0 {
            shift += lw as u64;
        } else {
            *factors.entry(Factor::Q).or_insert(0) += lw.unsigned_abs();
        }
        for &aj in a {
            let m = l as i64 * aj;
            match m.cmp(&0) {
                std::cmp::Ordering::Equal => coeff /= &one - u,
                std::cmp::Ordering::Greater => {
                    *factors.entry(Factor::OneMinusUq(m as u64)).or_insert(0) += 1
                }
                std::cmp::Ordering::Less => {
                    shift += m.unsigned_abs();
                    *factors.entry(Factor::QmMinusU(m.unsigned_abs())).or_insert(0) += 1
                }
            }
        }
        terms.push(Term {
            coeff,
            shift,
            factors,
        });
    }
    let mut lcm: BTreeMap<Factor, u64> = BTreeMap::new();
    for t in &terms {
        for (&f, &e) in &t.factors {
            let slot = lcm.entry(f).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let mut numerator = Poly::zero();
    for t in &terms {
        let mut piece = Poly::monomial(t.coeff.clone(), t.shift as usize);
        for (&f, &e) in &lcm {
            let missing = e - t.factors.get(&f).copied().unwrap_or(0);
            if missing > 0 {
                piece = piece.mul(&f.poly(u).pow(missing as usize));
            }
        }
        numerator = numerator.add(&piece);
    }
    numerator = numerator.scale(&rational_pow(&(&one - u), a.len() as i64));
    let mut factors = vec![Factor::OneMinusQ.poly(u); n as usize];
    for (&f, &e) in &lcm {
        factors.extend(std::iter::repeat(f.poly(u)).take(e as usize));
    }
    let rf = RationalFunctionQ::from_factored(numerator, factors)?;
    let bound = rational_degree_bound(n, w, a);
    assert!(
        rf.numerator().degree().unwrap_or(0) <= bound && rf.denominator().degree().unwrap_or(0) <= bound,
        "reduced rational function exceeds its degree bound {bound}"
    );
    Ok(rf)
}

/// `lim_{q→1} H_n^(r)(w, u, q | a)`, evaluated on the reduced rational function.
pub fn limit_q_to_1(n: u64, w: i64, a: &[i64], u: &BigRational) -> Result<BigRational> {
    let rf = h_rational_in_q(n, w, a, u)?;
    rf.eval(&BigRational::one()).map_err(|_| {
        Error::pole(format!(
            "residual pole at q = 1 after reduction of H_{n} (w = {w}, a = {a:?})"
        ))
    })
}

/// The classical side of the q → 1 limit, `H_n^(r)(w, u^(−1) | a)`.
pub fn classical_inverse_u(n: u64, w: i64, a: &[i64], u: &BigRational) -> Result<BigRational> {
    let v = u.recip();
    Ok(classical_gf_coefficients(&rat(w), &v, a, n as usize)?.pop().unwrap())
}

/// Iterate `[0, f)^r` in lexicographic order.
pub(crate) fn for_each_index<F>(r: usize, f: u64, mut body: F) -> Result<()>
where
    F: FnMut(&[u64]) -> Result<()>,
{
    let mut idx = vec![0u64; r];
    loop {
        body(&idx)?;
        let mut pos = 0;
        loop {
            if pos == r {
                return Ok(());
            }
            idx[pos] += 1;
            if idx[pos] < f {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Both sides of the distribution relation
/// `H_n(w,u,q|a)/(u−1)^r = [f:q]^n Σ_{i ∈ [0,f)^r} u^(Σi)/(u^f−1)^r H_n((w+Σ a_j i_j)/f, u^f, q^f | a)`.
pub fn distribution_sides(
    n: u64,
    w: i64,
    f: u64,
    params: &BarnesParams,
) -> Result<(BigRational, BigRational)> {
    if params.q().exponent() != 1 {
        return Err(Error::precondition(
            "q",
            "the distribution relation is stated for q given with exponent 1",
        ));
    }
    if f == 0 {
        return Err(Error::precondition("f", "f must be positive"));
    }
    let u = params.u();
    let one = BigRational::one();
    let r = params.r() as i64;
    let uf = rational_pow(u, f as i64);
    if uf.is_one() {
        return Err(Error::precondition("u", format!("u^{f} = 1")));
    }
    let lhs = h_closed(n, &FractionalArg::integer(w), params)? / rational_pow(&(u - &one), r);
    let inner = params.with_u(uf.clone())?.with_q(params.q().raised(f));
    let weight = rational_pow(&(&uf - &one), r).recip();
    let mut sum = BigRational::zero();
    for_each_index(params.r(), f, |idx| {
        let shift: i64 = idx.iter().zip(params.a()).map(|(&i, &a)| i as i64 * a).sum();
        let arg = FractionalArg::new(w + shift, f)?;
        let s: u64 = idx.iter().sum();
        sum += rational_pow(u, s as i64) * &weight * h_closed(n, &arg, &inner)?;
        Ok(())
    })?;
    let rhs = rational_pow(&qbracket(f as i64, &params.q().value())?, n as i64) * sum;
    Ok((lhs, rhs))
}

/// `LHS − RHS` of the distribution relation; exactly zero when it holds.
pub fn distribution_check(n: u64, w: i64, f: u64, params: &BarnesParams) -> Result<BigRational> {
    let (lhs, rhs) = distribution_sides(n, w, f, params)?;
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn params(a: Vec<i64>, u: BigRational, qv: BigRational) -> BarnesParams {
        BarnesParams::new(a, u, QBase::from_q(qv).unwrap()).unwrap()
    }

    #[test]
    fn first_values() {
        let p = params(vec![1], rat(3), rat(2));
        assert_eq!(h_number(0, &p).unwrap(), rat(1));
        assert_eq!(h_number(1, &p).unwrap(), q(-3, 5));
        let p2 = params(vec![2, -1, 3], q(5, 7), q(-2, 3));
        assert_eq!(h_number(0, &p2).unwrap(), rat(1));
    }

    #[test]
    fn symmetric_in_parameters() {
        let u = q(2, 9);
        let qv = q(4, 3);
        let a = params(vec![1, 2, 3], u.clone(), qv.clone());
        let b = params(vec![3, 1, 2], u, qv);
        for n in 0..6 {
            assert_eq!(h_number(n, &a).unwrap(), h_number(n, &b).unwrap());
        }
    }

    #[test]
    fn pole_is_reported() {
        // 1 − q u = 0 at q = 2, u = 1/2
        let p = params(vec![1], q(1, 2), rat(2));
        match h_number(1, &p).unwrap_err() {
            Error::Pole { factor } => assert!(factor.contains("l = 1")),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn q_one_and_alignment_errors() {
        let p = BarnesParams::new(vec![1], rat(3), QBase::new(rat(-1), 2).unwrap()).unwrap();
        assert_eq!(h_number(2, &p).unwrap_err(), Error::QIsOne);
        let p = params(vec![1], rat(3), rat(2));
        let half = FractionalArg::new(1, 2).unwrap();
        assert!(matches!(
            h_closed(1, &half, &p).unwrap_err(),
            Error::ExponentAlignment { .. }
        ));
        assert!(BarnesParams::new(vec![1, 0], rat(3), QBase::from_q(rat(2)).unwrap()).is_err());
        assert!(BarnesParams::new(vec![1], rat(1), QBase::from_q(rat(2)).unwrap()).is_err());
    }

    #[test]
    fn addition_formula_small_cases() {
        let p = params(vec![1, 2], q(3, 5), q(-1, 4));
        assert_eq!(h_addition(3, 0, &p).unwrap(), h_number(3, &p).unwrap());
        assert_eq!(h_addition(0, 4, &p).unwrap(), rat(1));
        for w in -2..=3 {
            assert_eq!(
                h_addition(4, w, &p).unwrap(),
                h_closed(4, &FractionalArg::integer(w), &p).unwrap()
            );
        }
    }

    #[test]
    fn carlitz_examples() {
        let u = q(7, 2);
        let qv = q(3, 5);
        assert_eq!(h_carlitz(0, &u, &qv).unwrap(), rat(1));
        assert_eq!(h_carlitz(1, &u, &qv).unwrap(), (&u - &qv).recip());
        assert!(h_carlitz(2, &q(9, 25), &qv).is_err());
        let p = params(vec![1], u.recip(), qv.clone());
        for k in 0..=6 {
            assert_eq!(h_number(k, &p).unwrap(), h_carlitz(k, &u, &qv).unwrap());
        }
    }

    #[test]
    fn rational_function_first_cases() {
        let u = q(3, 7);
        let rf = h_rational_in_q(1, 0, &[1], &u).unwrap();
        // u/(1 − qu) = (−1)·(u/u)/(q − 1/u) after making the denominator monic
        for qv in [q(2, 1), q(-5, 3), q(1, 9)] {
            assert_eq!(rf.eval(&qv).unwrap(), &u / (rat(1) - &qv * &u));
        }
        assert_eq!(rf.denominator().degree(), Some(1));
        let rf0 = h_rational_in_q(0, 2, &[1, 2], &u).unwrap();
        assert_eq!(rf0.numerator(), &Poly::one());
        assert_eq!(rf0.denominator(), &Poly::one());
    }

    #[test]
    fn rational_function_matches_closed_form_with_negative_data() {
        let u = q(-5, 2);
        let a = [2, -1];
        for w in [-1, 0, 2] {
            let rf = h_rational_in_q(3, w, &a, &u).unwrap();
            for qv in [q(3, 2), q(-2, 7)] {
                let p = params(a.to_vec(), u.clone(), qv.clone());
                assert_eq!(
                    rf.eval(&qv).unwrap(),
                    h_closed(3, &FractionalArg::integer(w), &p).unwrap()
                );
            }
        }
    }

    #[test]
    fn limit_first_case() {
        let u = q(4, 9);
        let expected = &u / (rat(1) - &u);
        assert_eq!(limit_q_to_1(1, 0, &[1], &u).unwrap(), expected);
        assert_eq!(classical_inverse_u(1, 0, &[1], &u).unwrap(), expected);
        assert_eq!(limit_q_to_1(0, 3, &[1, 2], &u).unwrap(), rat(1));
    }

    #[test]
    fn distribution_examples() {
        let u = q(5, 3);
        let qv = q(-2, 7);
        let p = params(vec![1], u.clone(), qv.clone());
        let (lhs, rhs) = distribution_sides(0, 0, 2, &p).unwrap();
        assert_eq!(lhs, (&u - rat(1)).recip());
        assert_eq!(rhs, (rat(1) + &u) / (&u * &u - rat(1)));
        let (lhs, rhs) = distribution_sides(1, 0, 2, &p).unwrap();
        let expected = &u / ((&u - rat(1)) * (rat(1) - &qv * &u));
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
        assert!(distribution_check(3, 1, 3, &params(vec![1, 2], u, qv))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn distribution_rejects_roots_of_unity() {
        let p = params(vec![1], rat(-1), q(2, 3));
        assert!(distribution_check(1, 0, 2, &p).is_err());
    }
}
