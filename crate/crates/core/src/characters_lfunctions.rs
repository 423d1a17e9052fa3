//! Dirichlet characters, the twisted numbers `H_{k,χ}^(r)`, the principal
//! unit `⟨x:q⟩ = [x:q]/ω(x)` and the p-adic L-function
//! `L_{p,q:a_1}(u | s, χ) = ∫_{X*} ⟨a_1 x : q⟩^(−s) χ(x) dμ_u(x)`.
//!
//! Characters either take values in `{−1, 0, 1}` or are embedded in `Z_p`
//! through Teichmüller lifts, so every value lives in `Q_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler_barnes::{for_each_index, h_closed, h_closed_padic, BarnesParams};
use crate::exact_numbers::{
    rat, rational_pow, rational_to_string, sum_padic, teichmuller, to_padic, valuation,
    valuation_int,
    BigRational, Exponent, PadicContext, PadicNumber, Valuation,
};
use crate::padic_integration::{riemann_integral, AdmissibleU, Budget};
use crate::qnum::{qbracket, FractionalArg, QBase};

/// A value that is either an exact rational or a p-adic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Padic(PadicNumber),
}

impl Scalar {
    pub fn to_padic(&self, ctx: PadicContext) -> PadicNumber {
        match self {
            Scalar::Rational(x) => to_padic(x, ctx),
            Scalar::Padic(x) => x.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(x) => Some(x),
            Scalar::Padic(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Padic(x) => x.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{}", rational_to_string(x)),
            Scalar::Padic(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Table {
    Rational(Vec<i8>),
    Padic {
        ctx: PadicContext,
        values: Vec<Option<PadicNumber>>,
    },
}

/// A Dirichlet character modulo `d`, stored as its value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    table: Table,
    label: String,
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[derive(Deserialize)]
struct TableSpec {
    d: u64,
    values: Vec<i64>,
}

impl DirichletCharacter {
    /// The principal character mod `d` (1 on units, 0 elsewhere).
    pub fn trivial(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::precondition("chi", "modulus must be positive"));
        }
        let values = (0..d)
            .map(|x| if gcd_u64(x, d) == 1 { 1 } else { 0 })
            .collect();
        Ok(DirichletCharacter {
            modulus: d,
            table: Table::Rational(values),
            label: format!("trivial:{d}"),
        })
    }

    /// The nontrivial quadratic character mod 3 or mod 4.
    pub fn quadratic(d: u64) -> Result<Self> {
        let values = match d {
            3 => vec![0, 1, -1],
            4 => vec![0, 1, 0, -1],
            _ => {
                return Err(Error::precondition(
                    "chi",
                    "built-in quadratic characters exist for d = 3 and d = 4",
                ))
            }
        };
        Self::from_table(d, values.into_iter().map(i64::from).collect())
            .map(|c| c.relabel(format!("quadratic:{d}")))
    }

    /// A rational-valued character from its values on `0..d`.
    pub fn from_table(d: u64, values: Vec<i64>) -> Result<Self> {
        if d == 0 || values.len() as u64 != d {
            return Err(Error::precondition(
                "chi",
                format!("expected {d} values, got {}", values.len()),
            ));
        }
        if values.iter().any(|v| !(-1..=1).contains(v)) {
            return Err(Error::precondition(
                "chi",
                "rational characters take values in {-1, 0, 1}",
            ));
        }
        let c = DirichletCharacter {
            modulus: d,
            table: Table::Rational(values.iter().map(|&v| v as i8).collect()),
            label: format!("table:{d}:{values:?}"),
        };
        c.validate()?;
        Ok(c)
    }

    /// The character of a cyclic `(Z/d)*` sending the generator `g` to the
    /// Teichmüller lift `ω(c)`.
    pub fn from_generator(d: u64, g: u64, c: i64, ctx: PadicContext) -> Result<Self> {
        if d < 2 || gcd_u64(g % d, d) != 1 {
            return Err(Error::precondition("chi", "generator must be a unit mod d >= 2"));
        }
        let image = teichmuller(&BigInt::from(c), ctx)?;
        let mut values: Vec<Option<PadicNumber>> = vec![None; d as usize];
        let mut x = 1 % d;
        let mut power = PadicNumber::one(ctx);
        loop {
            if values[x as usize].is_some() {
                break;
            }
            values[x as usize] = Some(power.clone());
            x = x * g % d;
            power = power.mul(&image);
        }
        let units = (0..d).filter(|&x| gcd_u64(x, d) == 1).count();
        let covered = values.iter().filter(|v| v.is_some()).count();
        if covered != units {
            return Err(Error::precondition(
                "chi",
                format!("{g} does not generate (Z/{d})*"),
            ));
        }
        let c = DirichletCharacter {
            modulus: d,
            table: Table::Padic { ctx, values },
            label: format!("generator:{d}:{g}->omega({c})"),
        };
        c.validate()?;
        Ok(c)
    }

    /// Parse `trivial:d`, `quadratic:d` or `{"d": .., "values": [..]}`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            let t: TableSpec = serde_json::from_str(spec)
                .map_err(|e| Error::precondition("chi", format!("bad table spec: {e}")))?;
            return Self::from_table(t.d, t.values);
        }
        let (kind, d) = spec
            .split_once(':')
            .ok_or_else(|| Error::precondition("chi", format!("cannot parse `{spec}`")))?;
        let d: u64 = d
            .trim()
            .parse()
            .map_err(|_| Error::precondition("chi", format!("bad modulus in `{spec}`")))?;
        match kind.trim() {
            "trivial" => Self::trivial(d),
            "quadratic" => Self::quadratic(d),
            other => Err(Error::precondition("chi", format!("unknown character kind `{other}`"))),
        }
    }

    fn relabel(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.table, Table::Rational(_))
    }

    /// `χ(x)`; zero on non-units.
    pub fn eval(&self, x: i64) -> Scalar {
        let i = x.rem_euclid(self.modulus as i64) as usize;
        match &self.table {
            Table::Rational(v) => Scalar::Rational(rat(v[i] as i64)),
            Table::Padic { ctx, values } => Scalar::Padic(
                values[i]
                    .clone()
                    .unwrap_or_else(|| PadicNumber::zero(*ctx)),
            ),
        }
    }

    /// `χ(x)` as a p-adic number.
    pub fn eval_padic(&self, x: i64, ctx: PadicContext) -> PadicNumber {
        self.eval(x).to_padic(ctx)
    }

    fn validate(&self) -> Result<()> {
        let d = self.modulus;
        let bad = |why: String| Err(Error::precondition("chi", why));
        for x in 0..d {
            let unit = gcd_u64(x, d) == 1;
            if self.eval(x as i64).is_zero() == unit {
                return bad(format!("chi({x}) must vanish exactly on non-units"));
            }
        }
        let one = self.eval(1);
        let is_one = match &one {
            Scalar::Rational(v) => v.is_one(),
            Scalar::Padic(v) => *v == PadicNumber::one(v.context()),
        };
        if !is_one {
            return bad("chi(1) must be 1".into());
        }
        for x in (0..d).filter(|&x| gcd_u64(x, d) == 1) {
            for y in (0..d).filter(|&y| gcd_u64(y, d) == 1) {
                let ok = match (self.eval(x as i64), self.eval(y as i64), self.eval((x * y % d) as i64)) {
                    (Scalar::Rational(a), Scalar::Rational(b), Scalar::Rational(c)) => a * b == c,
                    (Scalar::Padic(a), Scalar::Padic(b), Scalar::Padic(c)) => {
                        a.mul(&b).congruent_mod(&c, c.context().precision() as i64)
                    }
                    _ => unreachable!("table modes are uniform"),
                };
                if !ok {
                    return bad(format!("chi is not multiplicative at ({x}, {y})"));
                }
            }
        }
        if let Table::Padic { ctx, values } = &self.table {
            let order = Exponent::from(ctx.p() as i64 - 1);
            for v in values.iter().flatten() {
                if !v.pow(&order)?.congruent_mod(&PadicNumber::one(*ctx), ctx.precision() as i64) {
                    return bad(format!("character order does not divide p - 1 = {}", ctx.p() - 1));
                }
            }
        }
        Ok(())
    }

    /// `χω^k`, a p-adic character modulo `lcm(d, p)`.
    pub fn teichmuller_twist(&self, k: i64, ctx: PadicContext) -> Result<Self> {
        let p = ctx.p();
        let m = self.modulus.lcm(&p);
        let mut values = Vec::with_capacity(m as usize);
        for x in 0..m {
            if gcd_u64(x, m) != 1 {
                values.push(None);
                continue;
            }
            let w = teichmuller(&BigInt::from(x), ctx)?.pow(&Exponent::from(k))?;
            values.push(Some(self.eval_padic(x as i64, ctx).mul(&w)));
        }
        let c = DirichletCharacter {
            modulus: m,
            table: Table::Padic { ctx, values },
            label: format!("{}*omega^{k}", self.label),
        };
        c.validate()?;
        Ok(c)
    }
}

/// `χ(x)`.
pub fn char_eval(chi: &DirichletCharacter, x: i64) -> Scalar {
    chi.eval(x)
}

/// `H_{k,χ}^(r)(u, q | a)`, defined through
/// `(1/(1−u))^r H_{k,χ} = [d:q]^k/(1−u^d)^r Σ_{i ∈ [0,d)^r} u^(Σi) ∏χ(i_j) H_k^(r)(Σ a_j i_j/d, u^d, q^d | a)`.
pub fn h_chi(k: u64, params: &BarnesParams, chi: &DirichletCharacter) -> Result<Scalar> {
    let d = chi.modulus();
    let u = params.u();
    let one = BigRational::one();
    let ud = rational_pow(u, d as i64);
    if ud.is_one() {
        return Err(Error::precondition("u", format!("u^{d} = 1")));
    }
    let q = params.q();
    let inner = params.with_u(ud.clone())?.with_q(q.raised(d));
    let r = params.r();
    let prefactor = rational_pow(&(&one - u), r as i64) / rational_pow(&(&one - &ud), r as i64)
        * rational_pow(&qbracket(d as i64, &q.value())?, k as i64);

    let mut rational_sum = BigRational::zero();
    let mut padic_terms: Vec<PadicNumber> = Vec::new();
    for_each_index(r, d, |idx| {
        let weight = idx
            .iter()
            .map(|&i| chi.eval(i as i64))
            .try_fold(Scalar::Rational(one.clone()), |acc, v| match (acc, v) {
                (Scalar::Rational(a), Scalar::Rational(b)) => Some(Scalar::Rational(a * b)),
                (acc, v) => {
                    let ctx = match (&acc, &v) {
                        (Scalar::Padic(x), _) | (_, Scalar::Padic(x)) => x.context(),
                        _ => unreachable!(),
                    };
                    Some(Scalar::Padic(acc.to_padic(ctx).mul(&v.to_padic(ctx))))
                }
            })
            .expect("fold never fails");
        if weight.is_zero() {
            return Ok(());
        }
        let shift: i64 = idx.iter().zip(params.a()).map(|(&i, &a)| i as i64 * a).sum();
        let s: u64 = idx.iter().sum();
        let term = rational_pow(u, s as i64)
            * h_closed(k, &FractionalArg::new(shift, d)?, &inner)?
            * &prefactor;
        match weight {
            Scalar::Rational(w) => rational_sum += w * term,
            Scalar::Padic(w) => padic_terms.push(w.mul(&to_padic(&term, w.context()))),
        }
        Ok(())
    })?;
    if chi.is_rational() {
        Ok(Scalar::Rational(rational_sum))
    } else {
        let ctx = padic_terms
            .first()
            .map(|t| t.context())
            .ok_or_else(|| Error::precondition("chi", "character has no units"))?;
        Ok(Scalar::Padic(sum_padic(&padic_terms, ctx)?))
    }
}

/// `⟨x:q⟩ = [x:q]/ω(x)`, a principal unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitProjection {
    value: PadicNumber,
}

impl UnitProjection {
    pub fn value(&self) -> &PadicNumber {
        &self.value
    }
}

fn require_q_near_one(q: &BigRational, p: u64) -> Result<()> {
    if !valuation(&(q - BigRational::one()), p).is_at_least(1) {
        return Err(Error::precondition("q", "needs v_p(q - 1) >= 1"));
    }
    Ok(())
}

pub fn angle_bracket(x: i64, q: &BigRational, ctx: PadicContext) -> Result<UnitProjection> {
    let p = ctx.p();
    if x.rem_euclid(p as i64) == 0 {
        return Err(Error::precondition("x", format!("{x} is not a {p}-adic unit")));
    }
    require_q_near_one(q, p)?;
    let bracket = to_padic(&qbracket(x, q)?, ctx);
    let value = bracket.div(&teichmuller(&BigInt::from(x), ctx)?)?;
    if !value.congruent_mod(&PadicNumber::one(ctx), 1) {
        return Err(Error::precondition(
            "q",
            format!("<{x}:q> is not congruent to 1 mod {p}"),
        ));
    }
    Ok(UnitProjection { value })
}

fn require_unit_a1(a1: i64, p: u64) -> Result<()> {
    if a1 == 0 || a1.rem_euclid(p as i64) == 0 {
        return Err(Error::precondition("a1", format!("a_1 = {a1} must be a {p}-adic unit")));
    }
    Ok(())
}

/// Level-N Riemann sum of `⟨a_1 x : q⟩^(−s) χ(x) dμ_u` over the p-units of
/// `0 ≤ x < d₀ p^N`, `d₀` the prime-to-p part of the character modulus.
#[allow(clippy::too_many_arguments)]
pub fn l_riemann(
    s: &Exponent,
    chi: &DirichletCharacter,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
    ctx: PadicContext,
    level: u32,
    budget: Budget,
) -> Result<PadicNumber> {
    let p = ctx.p();
    if u.p() != p {
        return Err(Error::precondition("u", "admissibility certified for another prime"));
    }
    if u.valuation() < 1 {
        return Err(Error::precondition("u", "the L-function needs v_p(u) >= 1"));
    }
    require_q_near_one(q, p)?;
    require_unit_a1(a1, p)?;
    let mut d0 = chi.modulus();
    let mut vd = 0;
    while d0 % p == 0 {
        d0 /= p;
        vd += 1;
    }
    if level < vd.max(1) {
        return Err(Error::precondition(
            "level",
            format!("level must be at least {}", vd.max(1)),
        ));
    }
    let points = d0 as u128 * (p as u128).pow(level);
    budget.check(points)?;
    let one = BigRational::one();
    let uv = u.value();
    let norm = (&one - uv) / (&one - rational_pow(uv, points as i64));
    let base = to_padic(&norm, ctx);
    let up = to_padic(uv, ctx);
    let neg_s = match s {
        Exponent::Integer(e) => Exponent::Integer(-e),
        Exponent::Padic(x) => Exponent::Padic(x.neg()),
    };
    let mut mass = base;
    let mut terms = Vec::new();
    for x in 0..points as i64 {
        if x % p as i64 != 0 {
            let c = chi.eval_padic(x, ctx);
            if !c.is_zero() {
                let bracket = angle_bracket(a1 * x, q, ctx)?;
                terms.push(bracket.value.pow(&neg_s)?.mul(&c).mul(&mass));
            }
        }
        mass = mass.mul(&up);
    }
    sum_padic(&terms, ctx)
}

/// `L_{p,q:a_1}(u | −k, χω^k)` from the closed form
/// `ω(a_1)^(−k) [H_{k,χ}(u,q|a_1) − χ(p)[p:q]^k (1−u)/(1−u^p) H_{k,χ}(u^p,q^p|a_1)]`.
///
/// The factor `ω(a_1)^(−k)` appears because `⟨a_1 x:q⟩^k ω^k(x) = ω(a_1)^(−k) [a_1 x:q]^k`.
pub fn l_at_negative(
    k: u64,
    chi: &DirichletCharacter,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
    ctx: PadicContext,
) -> Result<PadicNumber> {
    let p = ctx.p();
    if u.valuation() < 1 {
        return Err(Error::precondition("u", "the L-function needs v_p(u) >= 1"));
    }
    require_q_near_one(q, p)?;
    require_unit_a1(a1, p)?;
    // The inner closed forms divide by (1 − q^(dp))^k, and the pieces can
    // be highly divisible by p; start with enough extra digits to cover the
    // division and widen the working precision until every piece is nonzero.
    let vq = valuation(&(q - BigRational::one()), p).finite().unwrap_or(0);
    let vd = valuation_int(&BigInt::from(chi.modulus()), p).unwrap_or(0) as i64;
    let mut extra = k as i64 * (vq + 1 + vd) + 2;
    for _ in 0..6 {
        let digits = u32::try_from(ctx.precision() as i64 + extra)
            .map_err(|_| Error::precondition("k", "working precision does not fit"))?;
        match l_at_negative_in(k, chi, u, q, a1, PadicContext::new(p, digits)?) {
            Err(Error::PrecisionExhausted { .. }) => extra *= 2,
            Ok(value) => {
                let twist =
                    teichmuller(&BigInt::from(a1), ctx)?.pow(&Exponent::from(-(k as i64)))?;
                return Ok(value.to_context(ctx)?.mul(&twist));
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::PrecisionExhausted {
        known_to: ctx.precision() as i64 + extra,
    })
}

/// The two-term closed form, before the `ω(a_1)^(−k)` twist, at working
/// precision `work`.
fn l_at_negative_in(
    k: u64,
    chi: &DirichletCharacter,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
    work: PadicContext,
) -> Result<PadicNumber> {
    let p = work.p();
    let one = BigRational::one();
    let uv = u.value();
    let params = BarnesParams::new(vec![a1], uv.clone(), QBase::from_q(q.clone())?)?;
    let first = h_chi_padic(k, &params, chi, work)?;
    let chi_p = chi.eval(p as i64);
    if chi_p.is_zero() {
        return Ok(first);
    }
    let up = rational_pow(uv, p as i64);
    let params_p = BarnesParams::new(vec![a1], up.clone(), QBase::new(q.clone(), p)?)?;
    let second = h_chi_padic(k, &params_p, chi, work)?;
    let factor = rational_pow(&qbracket(p as i64, q)?, k as i64) * (&one - uv) / (&one - &up);
    let chi_p = match chi_p {
        Scalar::Rational(x) => to_padic(&x, work),
        Scalar::Padic(x) => x.to_context(work)?,
    };
    let sub = chi_p.mul(&to_padic(&factor, work)).mul(&second);
    sum_padic(&[first, sub.neg()], work)
}

/// `H_{k,χ}^(r)` evaluated in `Q_p`, term by term (see [`h_closed_padic`]).
pub fn h_chi_padic(
    k: u64,
    params: &BarnesParams,
    chi: &DirichletCharacter,
    ctx: PadicContext,
) -> Result<PadicNumber> {
    let d = chi.modulus();
    let u = params.u();
    let one = BigRational::one();
    let ud = rational_pow(u, d as i64);
    if ud.is_one() {
        return Err(Error::precondition("u", format!("u^{d} = 1")));
    }
    let q = params.q();
    let inner = params.with_u(ud.clone())?.with_q(q.raised(d));
    let r = params.r();
    let prefactor = rational_pow(&(&one - u), r as i64) / rational_pow(&(&one - &ud), r as i64)
        * rational_pow(&qbracket(d as i64, &q.value())?, k as i64);
    let mut terms = Vec::new();
    for_each_index(r, d, |idx| {
        let mut weight = PadicNumber::one(ctx);
        for &i in idx {
            let v = chi.eval(i as i64);
            if v.is_zero() {
                return Ok(());
            }
            weight = weight.mul(&match v {
                Scalar::Rational(x) => to_padic(&x, ctx),
                Scalar::Padic(x) => x.to_context(ctx)?,
            });
        }
        let shift: i64 = idx.iter().zip(params.a()).map(|(&i, &a)| i as i64 * a).sum();
        let s: u64 = idx.iter().sum();
        let h = h_closed_padic(k, &FractionalArg::new(shift, d)?, &inner, ctx)?;
        terms.push(weight.mul(&to_padic(&(rational_pow(u, s as i64) * &prefactor), ctx)).mul(&h));
        Ok(())
    })?;
    sum_padic(&terms, ctx)
}

/// Outcome of a Kummer congruence check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KummerOutcome {
    pub k: u64,
    pub k_prime: u64,
    pub n: u32,
    /// Lower bound for `ν_p(L(−k) − L(−k′))`; exact unless it equals the
    /// working precision.
    pub valuation: Valuation,
    pub pass: bool,
}

/// `L(u : −k, χω^k) ≡ L(u : −k′, χω^(k′)) (mod p^n)` for `k ≡ k′ (mod (p−1)p^n)`.
#[allow(clippy::too_many_arguments)]
pub fn kummer_check(
    k: u64,
    k_prime: u64,
    n: u32,
    chi: &DirichletCharacter,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
    ctx: PadicContext,
) -> Result<KummerOutcome> {
    let p = ctx.p();
    let period = (p - 1) as u128 * (p as u128).pow(n);
    if (k as u128).abs_diff(k_prime as u128) % period != 0 {
        return Err(Error::precondition(
            "k",
            format!("{k} and {k_prime} are not congruent mod (p-1)p^n = {period}"),
        ));
    }
    if ctx.precision() < n + 1 {
        return Err(Error::precondition("precision", "M must be at least n + 1"));
    }
    let valuation = if k == k_prime {
        Valuation::Infinite
    } else {
        let a = l_at_negative(k, chi, u, q, a1, ctx)?;
        let b = l_at_negative(k_prime, chi, u, q, a1, ctx)?;
        a.difference_valuation(&b)
    };
    Ok(KummerOutcome {
        k,
        k_prime,
        n,
        valuation,
        pass: valuation.is_at_least(n as i64),
    })
}

/// Level-N Riemann sum of `χ(x) [a_1 x : q]^k dμ_u` over `X` (modulus `d p^N`),
/// whose limit is `H_{k,χ}^(1)(u, q | a_1)`.
pub fn eq8_riemann_sum(
    k: u64,
    chi: &DirichletCharacter,
    u: &AdmissibleU,
    q: &BigRational,
    a1: i64,
    level: u32,
    budget: Budget,
) -> Result<BigRational> {
    if !chi.is_rational() {
        return Err(Error::precondition("chi", "exact Riemann sums need a rational character"));
    }
    riemann_integral(
        |x| {
            let c = chi.eval(x as i64);
            let c = c.as_rational().unwrap();
            if c.is_zero() {
                return Ok(BigRational::zero());
            }
            Ok(c * rational_pow(&qbracket(a1 * x as i64, q)?, k as i64))
        },
        u,
        chi.modulus(),
        level,
        budget,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler_barnes::h_number;

    fn ctx(p: u64, m: u32) -> PadicContext {
        PadicContext::new(p, m).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn built_in_characters() {
        let t = DirichletCharacter::trivial(5).unwrap();
        assert_eq!(t.eval(3), Scalar::Rational(rat(1)));
        assert_eq!(t.eval(10), Scalar::Rational(rat(0)));
        let chi = DirichletCharacter::quadratic(4).unwrap();
        assert_eq!(chi.eval(1), Scalar::Rational(rat(1)));
        assert_eq!(chi.eval(3), Scalar::Rational(rat(-1)));
        assert_eq!(chi.eval(2), Scalar::Rational(rat(0)));
        assert_eq!(chi.eval(-1), Scalar::Rational(rat(-1)));
        assert!(DirichletCharacter::quadratic(5).is_err());
    }

    #[test]
    fn table_validation() {
        assert!(DirichletCharacter::from_table(4, vec![0, 1, 0, 1]).is_ok());
        // not multiplicative: chi(2)chi(2) != chi(4) mod 5
        assert!(DirichletCharacter::from_table(5, vec![0, 1, -1, -1, -1]).is_err());
        // nonzero on a non-unit
        assert!(DirichletCharacter::from_table(4, vec![0, 1, 1, -1]).is_err());
        assert!(DirichletCharacter::from_table(3, vec![0, 1, 2]).is_err());
        assert!(DirichletCharacter::from_table(3, vec![0, 1]).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            DirichletCharacter::from_spec("quadratic:4").unwrap(),
            DirichletCharacter::quadratic(4).unwrap()
        );
        assert_eq!(DirichletCharacter::from_spec("trivial:1").unwrap().modulus(), 1);
        let t = DirichletCharacter::from_spec(r#"{"d": 3, "values": [0, 1, -1]}"#).unwrap();
        assert_eq!(t.eval(2), Scalar::Rational(rat(-1)));
        assert!(DirichletCharacter::from_spec("cubic:7").is_err());
        assert!(DirichletCharacter::from_spec("nonsense").is_err());
    }

    #[test]
    fn generator_characters() {
        let c = ctx(5, 3);
        // (Z/5)* is generated by 2; send 2 to ω(2), a primitive 4th root of unity.
        let chi = DirichletCharacter::from_generator(5, 2, 2, c).unwrap();
        assert_eq!(chi.eval_padic(2, c), teichmuller(&BigInt::from(2), c).unwrap());
        assert!(chi.eval(5).is_zero());
        // 4 = -1 has order 2 and does not generate (Z/5)*
        assert!(DirichletCharacter::from_generator(5, 4, 2, c).is_err());
    }

    #[test]
    fn twist_is_multiplicative() {
        let c = ctx(5, 3);
        let chi = DirichletCharacter::quadratic(4).unwrap().teichmuller_twist(3, c).unwrap();
        assert_eq!(chi.modulus(), 20);
        for x in [1i64, 3, 7, 9, 11] {
            for y in [3i64, 13, 17] {
                let lhs = chi.eval_padic(x * y, c);
                let rhs = chi.eval_padic(x, c).mul(&chi.eval_padic(y, c));
                assert!(lhs.congruent_mod(&rhs, 3));
            }
        }
    }

    #[test]
    fn h_chi_trivial_modulus_one() {
        let params = BarnesParams::new(vec![1, 2], q(3, 5), QBase::from_q(q(4, 7)).unwrap()).unwrap();
        let chi = DirichletCharacter::trivial(1).unwrap();
        for k in 0..5 {
            assert_eq!(
                h_chi(k, &params, &chi).unwrap(),
                Scalar::Rational(h_number(k, &params).unwrap())
            );
        }
    }

    #[test]
    fn h_chi_principal_at_k_zero() {
        // (1−u)/(1−u^d) Σ_{gcd(i,d)=1} u^i
        let u = q(2, 3);
        let params = BarnesParams::new(vec![1], u.clone(), QBase::from_q(rat(4)).unwrap()).unwrap();
        let chi = DirichletCharacter::trivial(4).unwrap();
        let expected = (rat(1) - &u) / (rat(1) - rational_pow(&u, 4)) * (&u + rational_pow(&u, 3));
        assert_eq!(h_chi(0, &params, &chi).unwrap(), Scalar::Rational(expected));
    }

    #[test]
    fn angle_bracket_examples() {
        let c = ctx(5, 4);
        let qv = rat(6);
        assert_eq!(angle_bracket(1, &qv, c).unwrap().value(), &PadicNumber::one(c));
        assert!(angle_bracket(10, &qv, c).is_err());
        assert!(angle_bracket(2, &rat(2), c).is_err());
        let x = angle_bracket(7, &qv, c).unwrap();
        let p25 = x.value().pow(&Exponent::from(25)).unwrap();
        assert!(p25.congruent_mod(&PadicNumber::one(c), 2));
    }

    #[test]
    fn l_riemann_at_zero_is_the_unit_mass() {
        let c = ctx(3, 6);
        let u = AdmissibleU::new(rat(3), 3).unwrap();
        let chi = DirichletCharacter::trivial(1).unwrap();
        let expected = rat(1) - (rat(1) - rat(3)) / (rat(1) - rat(27));
        for level in 1..4 {
            let l = l_riemann(&Exponent::from(0), &chi, &u, &rat(4), 1, c, level, Budget::default())
                .unwrap();
            assert!(l.congruent_mod(&to_padic(&expected, c), 6));
        }
        let closed = l_at_negative(0, &chi, &u, &rat(4), 1, c).unwrap();
        assert!(closed.congruent_mod(&to_padic(&expected, c), 6));
    }

    #[test]
    fn euler_factor_drops_when_p_divides_modulus() {
        let c = ctx(3, 5);
        let u = AdmissibleU::new(rat(3), 3).unwrap();
        let chi = DirichletCharacter::quadratic(3).unwrap();
        let params = BarnesParams::new(vec![1], rat(3), QBase::from_q(rat(4)).unwrap()).unwrap();
        let h = h_chi(2, &params, &chi).unwrap().to_padic(c);
        assert_eq!(l_at_negative(2, &chi, &u, &rat(4), 1, c).unwrap(), h);
    }

    #[test]
    fn kummer_preconditions() {
        let c = ctx(5, 3);
        let u = AdmissibleU::new(rat(5), 5).unwrap();
        let chi = DirichletCharacter::trivial(1).unwrap();
        assert!(kummer_check(1, 2, 1, &chi, &u, &rat(6), 1, c).is_err());
        assert!(kummer_check(1, 21, 3, &chi, &u, &rat(6), 1, c).is_err());
        let same = kummer_check(4, 4, 1, &chi, &u, &rat(6), 1, c).unwrap();
        assert_eq!(same.valuation, Valuation::Infinite);
        let k = kummer_check(1, 21, 1, &chi, &u, &rat(6), 1, c).unwrap();
        assert!(k.pass, "{k:?}");
    }

    #[test]
    fn interpolation_matches_riemann_sums() {
        for (p, chi) in [
            (5u64, DirichletCharacter::trivial(1).unwrap()),
            (3, DirichletCharacter::quadratic(4).unwrap()),
        ] {
            let c = ctx(p, 6);
            let u = AdmissibleU::new(rat(p as i64), p).unwrap();
            let qv = rat(p as i64 + 1);
            for k in 0..4u64 {
                let twisted = chi.teichmuller_twist(k as i64, c).unwrap();
                let closed = l_at_negative(k, &chi, &u, &qv, 1, c).unwrap();
                let mut last = Valuation::Finite(i64::MIN);
                for level in 1..4 {
                    let s = Exponent::from(-(k as i64));
                    let l = l_riemann(&s, &twisted, &u, &qv, 1, c, level, Budget::default()).unwrap();
                    let v = l.difference_valuation(&closed);
                    assert!(v >= last, "p={p} k={k} N={level}: {v:?} < {last:?}");
                    assert!(v.is_at_least(level as i64 - 1), "p={p} k={k} N={level}: {v:?}");
                    last = v;
                }
            }
        }
    }

    #[test]
    fn padic_route_matches_exact_values() {
        let c = ctx(5, 6);
        let params = BarnesParams::new(vec![2], rat(5), QBase::from_q(rat(6)).unwrap()).unwrap();
        for chi in [DirichletCharacter::trivial(1).unwrap(), DirichletCharacter::quadratic(4).unwrap()] {
            for k in 0..5 {
                let exact = h_chi(k, &params, &chi).unwrap().to_padic(c);
                let work = PadicContext::new(5, 6 + 2 * k as u32 + 1).unwrap();
                let fast = h_chi_padic(k, &params, &chi, work).unwrap().to_context(c).unwrap();
                assert!(fast.congruent_mod(&exact, 6), "k = {k}: {fast} vs {exact}");
            }
        }
    }

    #[test]
    fn kummer_examples() {
        let c = ctx(3, 4);
        let u = AdmissibleU::new(rat(3), 3).unwrap();
        let chi = DirichletCharacter::quadratic(4).unwrap();
        let k = kummer_check(2, 20, 2, &chi, &u, &rat(4), 1, c).unwrap();
        assert!(k.pass, "{k:?}");
    }
}
