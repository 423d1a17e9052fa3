//! The distribution `μ_u`, level-N Riemann sums for the invariant integral,
//! and the measure `E^(k)` on cells `x + f p^N Z_p`.
//!
//! All sums are exact rationals; convergence is reported through the p-adic
//! valuation of the error, never as a magnitude.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler_barnes::{for_each_index, h_closed_lazy, h_number, BarnesParams};
use crate::exact_numbers::{
    add_assign_rat, mul_rat, rat, rational_pow, valuation, BigRational, LazyFraction, Valuation,
};
use crate::qnum::{qbracket, qbracket_z, FractionalArg, QBase};

/// Cap on the number of evaluation points of a Riemann sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_points: 250_000,
        }
    }
}

impl Budget {
    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_points as u128 {
            return Err(Error::BudgetExceeded {
                needed,
                cap: self.max_points,
            });
        }
        Ok(())
    }
}

/// A rational `u` with `ν_p(u) ≠ 0`.
///
/// For rational `u` this is equivalent to `|1 − u^f|_p ≥ 1` for every `f ≥ 1`:
/// if `ν_p(u) > 0` then `1 − u^f` is a unit, if `ν_p(u) < 0` then
/// `ν_p(1 − u^f) = f·ν_p(u) < 0`, and if `u` is a unit then
/// `u^(p−1) ≡ 1 (mod p)` breaks the hypothesis at `f = p − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleU {
    u: BigRational,
    p: u64,
    valuation: i64,
}

impl AdmissibleU {
    pub fn new(u: BigRational, p: u64) -> Result<Self> {
        match valuation(&u, p) {
            Valuation::Infinite => Err(Error::InadmissibleU {
                reason: "u = 0".into(),
            }),
            Valuation::Finite(0) => Err(Error::InadmissibleU {
                reason: format!(
                    "u = {} is a {p}-adic unit, so |1 - u^{}|_{p} < 1",
                    crate::exact_numbers::rational_to_string(&u),
                    p - 1
                ),
            }),
            Valuation::Finite(v) => Ok(AdmissibleU { u, p, valuation: v }),
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.u
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The certificate `ν_p(u)`.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// `u^f`, which is again admissible.
    pub fn power(&self, f: u64) -> Self {
        AdmissibleU {
            u: rational_pow(&self.u, f as i64),
            p: self.p,
            valuation: self.valuation * f as i64,
        }
    }
}

/// `ν_p(1 − u^f)`; the standing hypothesis asks for this to be `≤ 0`.
pub fn one_minus_power_valuation(u: &BigRational, f: u64, p: u64) -> Valuation {
    valuation(&(BigRational::one() - rational_pow(u, f as i64)), p)
}

/// The cell `x + d·f·p^N·Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeasureCell {
    pub x: u64,
    pub f: u64,
    pub level: u32,
    pub d: u64,
}

impl MeasureCell {
    pub fn new(x: u64, f: u64, level: u32, d: u64, p: u64) -> Result<Self> {
        if f == 0 || d == 0 {
            return Err(Error::precondition("cell", "f and d must be positive"));
        }
        let cell = MeasureCell { x, f, level, d };
        if cell.modulus(p) <= x as u128 {
            return Err(Error::precondition(
                "cell",
                format!("representative {x} must lie below the modulus {}", cell.modulus(p)),
            ));
        }
        Ok(cell)
    }

    /// `x + f p^N Z_p` (with `d = 1`).
    pub fn simple(x: u64, f: u64, level: u32, p: u64) -> Result<Self> {
        Self::new(x, f, level, 1, p)
    }

    pub fn modulus(&self, p: u64) -> u128 {
        self.d as u128 * self.f as u128 * (p as u128).pow(self.level)
    }
}

fn modulus_i64(cell: &MeasureCell, p: u64) -> Result<i64> {
    i64::try_from(cell.modulus(p)).map_err(|_| Error::precondition("cell", "modulus too large"))
}

/// `μ_u(x + D Z_p) = u^x / [D : u]` with `D` the cell modulus.
pub fn mu_value(cell: &MeasureCell, u: &AdmissibleU) -> Result<BigRational> {
    let modulus = modulus_i64(cell, u.p)?;
    let norm = qbracket_z(modulus, &u.u)?;
    if norm.is_zero() {
        return Err(Error::pole(format!("[{modulus} : u]")));
    }
    Ok(rational_pow(&u.u, cell.x as i64) / norm)
}

/// Level-N Riemann sum `(1/[d p^N : u]) Σ_{x < d p^N} g(x) u^x`.
pub fn riemann_integral<F>(
    mut integrand: F,
    u: &AdmissibleU,
    d: u64,
    level: u32,
    budget: Budget,
) -> Result<BigRational>
where
    F: FnMut(u64) -> Result<BigRational>,
{
    let points = d as u128 * (u.p as u128).pow(level);
    budget.check(points)?;
    let mut sum = BigRational::zero();
    let mut upow = BigRational::one();
    for x in 0..points as u64 {
        let g = integrand(x)?;
        if !g.is_zero() {
            add_assign_rat(&mut sum, &mul_rat(&g, &upow));
        }
        upow = mul_rat(&upow, &u.u);
    }
    Ok(sum / qbracket_z(points as i64, &u.u)?)
}

/// Level-N r-fold Riemann sum of `[w + Σ a_j x_j : q]^n` against `μ_u^{⊗r}`.
pub fn multi_riemann_integral(
    n: u64,
    w: i64,
    params: &BarnesParams,
    p: u64,
    level: u32,
    budget: Budget,
) -> Result<BigRational> {
    let u = AdmissibleU::new(params.u().clone(), p)?;
    let r = params.r();
    let side = (p as u128).pow(level);
    budget.check(side.pow(r as u32))?;
    let side = side as u64;
    let qv = params.q().value();
    // [m:q]^n depends on m = w + Σ a_j x_j only.
    let mut cache: std::collections::HashMap<i64, BigRational> = std::collections::HashMap::new();
    let mut upows = Vec::with_capacity(r * side as usize);
    let mut acc = BigRational::one();
    for _ in 0..(r as u64 * side) {
        upows.push(acc.clone());
        acc = mul_rat(&acc, u.value());
    }
    let mut sum = BigRational::zero();
    for_each_index(r, side, |idx| {
        let m: i64 = w + idx.iter().zip(params.a()).map(|(&x, &a)| x as i64 * a).sum::<i64>();
        let s: u64 = idx.iter().sum();
        let b = match cache.get(&m) {
            Some(b) => b.clone(),
            None => {
                let b = rational_pow(&qbracket(m, &qv)?, n as i64);
                cache.insert(m, b.clone());
                b
            }
        };
        add_assign_rat(&mut sum, &mul_rat(&b, &upows[s as usize]));
        Ok(())
    })?;
    let norm = rational_pow(&qbracket_z(side as i64, u.value())?, r as i64);
    Ok(sum / norm)
}

/// `E^(k)(x + f p^N Z_p) = [f p^N : q]^k u^x / (1 − u^(f p^N)) · H_k^(1)(a_1 x/(f p^N), u^(f p^N), q^(f p^N) | a_1)`.
pub fn measure_e_value(
    cell: &MeasureCell,
    k: u64,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
) -> Result<BigRational> {
    Ok(measure_e_lazy(cell, k, u, q, a1)?.into_rational())
}

fn measure_e_lazy(
    cell: &MeasureCell,
    k: u64,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
) -> Result<LazyFraction> {
    if cell.d != 1 {
        return Err(Error::precondition("cell", "E^(k) cells have d = 1"));
    }
    let modulus = modulus_i64(cell, u.p)?;
    let big_u = rational_pow(&u.u, modulus);
    if big_u.is_one() {
        return Err(Error::pole(format!("1 - u^{modulus}")));
    }
    let base = QBase::new(q.clone(), modulus as u64)?;
    let inner = BarnesParams::new(vec![a1], big_u.clone(), base)?;
    let arg = FractionalArg::new(BigInt::from(a1) * BigInt::from(cell.x), modulus as u64)?;
    let h = h_closed_lazy(k, &arg, &inner)?;
    let weight = rational_pow(&qbracket(modulus, q)?, k as i64) * rational_pow(&u.u, cell.x as i64);
    Ok(LazyFraction::new(&weight)
        .div(&LazyFraction::new(&big_u).one_minus())
        .mul(&h))
}

/// `Σ_{i<p} E(x + i f p^N + f p^(N+1) Z_p) − E(x + f p^N Z_p)`.
pub fn measure_additivity_check(
    x: u64,
    f: u64,
    level: u32,
    k: u64,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
) -> Result<BigRational> {
    let p = u.p;
    let parent = MeasureCell::simple(x, f, level, p)?;
    let step = parent.modulus(p) as u64;
    let mut residual = measure_e_lazy(&parent, k, u, q, a1)?.neg();
    for i in 0..p {
        let child = MeasureCell::simple(x + i * step, f, level + 1, p)?;
        residual = residual.add(&measure_e_lazy(&child, k, u, q, a1)?);
    }
    // Only a nonzero residual needs the (costly) reduction.
    Ok(if residual.is_zero() {
        BigRational::zero()
    } else {
        residual.into_rational()
    })
}

fn require_measure_domain(u: &AdmissibleU, q: &BigRational) -> Result<()> {
    if u.valuation < 1 {
        return Err(Error::precondition("u", "the measure bound needs v_p(u) >= 1"));
    }
    if !valuation(&(q - BigRational::one()), u.p).is_at_least(1) {
        return Err(Error::precondition("q", "the measure bound needs v_p(q - 1) >= 1"));
    }
    Ok(())
}

/// `ν_p(E^(k)(cell)) ≥ 0`.
pub fn measure_bound_check(
    cell: &MeasureCell,
    k: u64,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
) -> Result<bool> {
    require_measure_domain(u, q)?;
    let e = measure_e_value(cell, k, u, q, a1)?;
    Ok(valuation(&e, u.p).is_at_least(0))
}

/// Exact total mass `Σ_{x < p^N} E^(k)(x + p^N Z_p)`; finite additivity makes
/// it independent of `N`.
pub fn measure_total(
    k: u64,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
    level: u32,
    budget: Budget,
) -> Result<BigRational> {
    let cells = (u.p as u128).pow(level);
    budget.check(cells)?;
    let mut sum = BigRational::zero();
    for x in 0..cells as u64 {
        sum += measure_e_value(&MeasureCell::simple(x, 1, level, u.p)?, k, u, q, a1)?;
    }
    Ok(sum)
}

/// Level-N cell sum `Σ_{x < p^N} [a_1 x : q]^k · u^x/(1 − u^(p^N))`, i.e. each
/// cell's `E^(k)` mass replaced by its leading term.
pub fn prop5_cell_sum(
    k: u64,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
    level: u32,
    budget: Budget,
) -> Result<BigRational> {
    let s = riemann_integral(
        |x| Ok(rational_pow(&qbracket(a1 * x as i64, q)?, k as i64)),
        u,
        1,
        level,
        budget,
    )?;
    Ok(s / (BigRational::one() - u.value()))
}

/// `(1/(1 − u)) H_k^(1)(u, q | a_1)`.
pub fn prop5_target(k: u64, u: &AdmissibleU, q: &BigRational, a1: i64) -> Result<BigRational> {
    let params = BarnesParams::new(vec![a1], u.value().clone(), QBase::from_q(q.clone())?)?;
    Ok(h_number(k, &params)? / (rat(1) - u.value()))
}

/// `ν_p(cell sum at level N − (1/(1 − u)) H_k^(1)(u, q | a_1))`.
pub fn prop5_check(
    k: u64,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
    level: u32,
    budget: Budget,
) -> Result<Valuation> {
    require_measure_domain(u, q)?;
    let approx = prop5_cell_sum(k, u, q, a1, level, budget)?;
    let target = prop5_target(k, u, q, a1)?;
    Ok(valuation(&(approx - target), u.p))
}
