//! The value monoid generated by `|t|` and the radii `r_1, …, r_n`.
//!
//! A [`Value`] `⟨a; q⟩` stands for `|t|^a · r_1^{q_1} ⋯ r_n^{q_n}`. With
//! `r_i = |t|^{α_i}` its weight is `a + Σ q_i α_i`, and larger weight means a
//! smaller norm. Comparison is exact: rational radii fold into `a`, free radii
//! are `α_i = √d_i`, and the sign of `a + Σ q_i √d_i` is decided exactly by
//! refining rational enclosures of the square roots.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::{check_exponent, fmt_rat, int, Rat};
use crate::realsign::{approx_form, sign_of_form};

pub const DEFAULT_MAX_DENOM_LOG: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RadiusSpec {
    /// `r = |t|^e`.
    Rational(Rat),
    /// `r = |t|^{√d}` with `d > 1` squarefree.
    FreeIrrational(u64),
}

impl RadiusSpec {
    pub fn is_free(&self) -> bool {
        matches!(self, RadiusSpec::FreeIrrational(_))
    }

    pub fn alpha_f64(&self) -> f64 {
        match self {
            RadiusSpec::Rational(e) => crate::exponent::rat_to_f64(e),
            RadiusSpec::FreeIrrational(d) => (*d as f64).sqrt(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadiusProfile {
    p: u32,
    radii: Vec<RadiusSpec>,
    s_exponent: Rat,
    max_denom_log: u32,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn is_squarefree(d: u64) -> bool {
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl RadiusProfile {
    pub fn new(p: u32, radii: Vec<RadiusSpec>, s_exponent: Rat) -> Result<Self> {
        Self::with_cap(p, radii, s_exponent, DEFAULT_MAX_DENOM_LOG)
    }

    pub fn with_cap(p: u32, radii: Vec<RadiusSpec>, s_exponent: Rat, max_denom_log: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidProfile(format!("{p} is not prime")));
        }
        let mut seen = Vec::new();
        for r in &radii {
            match r {
                RadiusSpec::Rational(e) => {
                    if e.is_negative() {
                        return Err(Error::InvalidProfile(format!("negative radius exponent {}", fmt_rat(e))));
                    }
                }
                RadiusSpec::FreeIrrational(d) => {
                    if *d < 2 || !is_squarefree(*d) {
                        return Err(Error::InvalidProfile(format!("{d} is not a squarefree integer > 1")));
                    }
                    if seen.contains(d) {
                        return Err(Error::InvalidProfile(format!("free radius √{d} repeated")));
                    }
                    seen.push(*d);
                }
            }
        }
        if !s_exponent.is_positive() {
            return Err(Error::InvalidProfile("σ_s must be positive".into()));
        }
        Ok(RadiusProfile { p, radii, s_exponent, max_denom_log })
    }

    /// The profile `α_i = √d_i` over the first `n` squarefree integers `> 1`,
    /// with the default `σ_s`.
    pub fn free(p: u32, n: usize) -> Result<Self> {
        let radii: Vec<RadiusSpec> = squarefree_from_two().take(n).map(RadiusSpec::FreeIrrational).collect();
        let sigma = default_sigma(&radii);
        Self::new(p, radii, sigma)
    }

    /// Same `p`, `σ_s` and cap with no radii: the base field `K`.
    pub fn base(&self) -> Self {
        RadiusProfile { p: self.p, radii: Vec::new(), s_exponent: self.s_exponent.clone(), max_denom_log: self.max_denom_log }
    }

    pub fn with_sigma(&self, s_exponent: Rat) -> Result<Self> {
        Self::with_cap(self.p, self.radii.clone(), s_exponent, self.max_denom_log)
    }

    pub fn with_max_denom_log(&self, cap: u32) -> Self {
        RadiusProfile { max_denom_log: cap, ..self.clone() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.radii.len()
    }

    pub fn radii(&self) -> &[RadiusSpec] {
        &self.radii
    }

    pub fn s_exponent(&self) -> &Rat {
        &self.s_exponent
    }

    pub fn max_denom_log(&self) -> u32 {
        self.max_denom_log
    }

    pub fn is_all_free(&self) -> bool {
        self.radii.iter().all(RadiusSpec::is_free)
    }

    /// `s = |t|^{σ_s}`.
    pub fn s(&self) -> Value {
        Value::t_power(self.s_exponent.clone(), self.n())
    }

    /// `|ϖ|^k · s`.
    pub fn s_times_varpi_pow(&self, k: i64) -> Value {
        Value::t_power(&self.s_exponent + int(k), self.n())
    }

    pub fn check_exponent(&self, r: &Rat) -> Result<()> {
        check_exponent(r, self.p, self.max_denom_log)
    }

    /// Weight as `c0 + Σ c_j √d_j` with rational radii folded into `c0`.
    fn weight_form(&self, a: &Rat, q: &[Rat]) -> (Rat, Vec<(Rat, u64)>) {
        let mut c0 = a.clone();
        let mut rad = Vec::new();
        for (qi, spec) in q.iter().zip(&self.radii) {
            match spec {
                RadiusSpec::Rational(e) => c0 += qi * e,
                RadiusSpec::FreeIrrational(d) => rad.push((qi.clone(), *d)),
            }
        }
        (c0, rad)
    }

    fn check_dim(&self, v: &Value) -> Result<()> {
        if v.zero || v.q.len() == self.n() {
            Ok(())
        } else {
            Err(Error::ProfileMismatch(format!("value has {} radius exponents, profile has {}", v.q.len(), self.n())))
        }
    }

    /// Norm comparison: `Less` means `|u| < |v|`.
    pub fn compare(&self, u: &Value, v: &Value) -> Result<Ordering> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok(self.cmp_norm(u, v))
    }

    pub(crate) fn cmp_norm(&self, u: &Value, v: &Value) -> Ordering {
        match (u.zero, v.zero) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self.cmp_exps(&u.a, &u.q, &v.a, &v.q),
        }
    }

    /// Norm comparison of `t^{a}x^{q}` against `t^{b}x^{r}`.
    pub(crate) fn cmp_exps(&self, a: &Rat, q: &[Rat], b: &Rat, r: &[Rat]) -> Ordering {
        if a == b && q == r {
            return Ordering::Equal;
        }
        let da = a - b;
        let dq: Vec<Rat> = q.iter().zip(r).map(|(x, y)| x - y).collect();
        let (c0, rad) = self.weight_form(&da, &dq);
        sign_of_form(&c0, &rad).reverse()
    }

    pub fn max<'a>(&self, u: &'a Value, v: &'a Value) -> &'a Value {
        if self.cmp_norm(u, v) == Ordering::Less {
            v
        } else {
            u
        }
    }

    pub fn min<'a>(&self, u: &'a Value, v: &'a Value) -> &'a Value {
        if self.cmp_norm(u, v) == Ordering::Greater {
            v
        } else {
            u
        }
    }

    pub fn lt(&self, u: &Value, v: &Value) -> bool {
        self.cmp_norm(u, v) == Ordering::Less
    }

    pub fn le(&self, u: &Value, v: &Value) -> bool {
        self.cmp_norm(u, v) != Ordering::Greater
    }

    /// Is `v ∈ √|K^×| = |t|^ℚ`?
    pub fn in_sqrt_k(&self, v: &Value) -> Result<bool> {
        if v.zero {
            return Err(Error::ZeroInput);
        }
        self.check_dim(v)?;
        let (_, rad) = self.weight_form(&v.a, &v.q);
        Ok(rad.iter().all(|(c, _)| c.is_zero()))
    }

    /// Floating weight, for reports; `+∞` for the zero value.
    pub fn weight_f64(&self, v: &Value) -> f64 {
        if v.zero {
            return f64::INFINITY;
        }
        let (c0, rad) = self.weight_form(&v.a, &v.q);
        approx_form(&c0, &rad)
    }

    /// Free (irrational) components of the weight, one per free radius.
    pub(crate) fn free_components(&self, v: &Value) -> Vec<Rat> {
        let (_, rad) = self.weight_form(&v.a, &v.q);
        rad.into_iter().map(|(c, _)| c).collect()
    }
}

/// Squarefree integers `2, 3, 5, 6, 7, 10, …`.
pub fn squarefree_from_two() -> impl Iterator<Item = u64> {
    (2u64..).filter(|d| is_squarefree(*d))
}

/// `⌈2(1 + Σ α_i)⌉`: the rational ceiling of the default `σ_s`.
pub fn default_sigma(radii: &[RadiusSpec]) -> Rat {
    let mut rational = int(2);
    let mut irrational = 0.0f64;
    for r in radii {
        match r {
            RadiusSpec::Rational(e) => rational += e * int(2),
            RadiusSpec::FreeIrrational(d) => irrational += 2.0 * (*d as f64).sqrt(),
        }
    }
    if irrational == 0.0 {
        return rational;
    }
    let approx = crate::exponent::rat_to_f64(&rational) + irrational;
    let mut c = int(approx.ceil() as i64);
    // Verify the ceiling exactly; the floating estimate can only be off by one.
    let rad: Vec<(Rat, u64)> = radii
        .iter()
        .filter_map(|r| match r {
            RadiusSpec::FreeIrrational(d) => Some((int(2), *d)),
            _ => None,
        })
        .collect();
    while sign_of_form(&(&rational - &c), &rad) == Ordering::Greater {
        c += int(1);
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Value {
    zero: bool,
    a: Rat,
    q: Vec<Rat>,
}

impl Value {
    pub fn new(a: Rat, q: Vec<Rat>) -> Self {
        Value { zero: false, a, q }
    }

    pub fn zero() -> Self {
        Value { zero: true, a: Rat::zero(), q: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::t_power(Rat::zero(), n)
    }

    pub fn t_power(a: Rat, n: usize) -> Self {
        Value { zero: false, a, q: vec![Rat::zero(); n] }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn q(&self) -> &[Rat] {
        &self.q
    }

    pub fn mul(&self, other: &Value) -> Result<Value> {
        if self.zero || other.zero {
            return Ok(Value::zero());
        }
        if self.q.len() != other.q.len() {
            return Err(Error::ProfileMismatch("values of different dimension".into()));
        }
        Ok(Value::new(&self.a + &other.a, self.q.iter().zip(&other.q).map(|(x, y)| x + y).collect()))
    }

    pub fn pow(&self, e: &Rat) -> Result<Value> {
        if self.zero {
            return if e.is_positive() { Ok(Value::zero()) } else { Err(Error::ZeroPower) };
        }
        Ok(Value::new(&self.a * e, self.q.iter().map(|x| x * e).collect()))
    }

    pub fn inv(&self) -> Result<Value> {
        self.pow(&int(-1))
    }

    pub fn div(&self, other: &Value) -> Result<Value> {
        self.mul(&other.inv()?)
    }

    /// Same value with `n` radius slots; only valid for pure `|t|` powers.
    pub fn embed(&self, n: usize) -> Result<Value> {
        if self.zero {
            return Ok(Value::zero());
        }
        if self.q.iter().any(|x| !x.is_zero()) {
            return Err(Error::ProfileMismatch("value carries radius exponents".into()));
        }
        Ok(Value::t_power(self.a.clone(), n))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        let q: Vec<String> = self.q.iter().map(fmt_rat).collect();
        write!(f, "⟨{};{}⟩", fmt_rat(&self.a), q.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::rat;

    fn sqrt2() -> RadiusProfile {
        RadiusProfile::free(2, 1).unwrap()
    }

    fn v(a: Rat, q: &[Rat]) -> Value {
        Value::new(a, q.to_vec())
    }

    #[test]
    fn compare_examples() {
        let pr = sqrt2();
        assert_eq!(pr.compare(&v(int(1), &[int(1)]), &v(int(2), &[int(0)])).unwrap(), Ordering::Less);
        assert_eq!(pr.compare(&v(int(3), &[int(0)]), &v(int(3), &[int(0)])).unwrap(), Ordering::Equal);
        assert_eq!(pr.compare(&v(int(0), &[int(1)]), &v(int(1), &[int(0)])).unwrap(), Ordering::Less);
        assert_eq!(pr.compare(&Value::zero(), &v(int(50), &[int(0)])).unwrap(), Ordering::Less);
        assert!(pr.compare(&v(int(0), &[]), &v(int(1), &[int(0)])).is_err());
    }

    #[test]
    fn rational_radius_ties() {
        let pr = RadiusProfile::new(2, vec![RadiusSpec::Rational(int(1))], int(3)).unwrap();
        assert_eq!(pr.compare(&v(int(0), &[int(1)]), &v(int(1), &[int(0)])).unwrap(), Ordering::Equal);
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(v(int(1), &[int(1)]).mul(&v(int(2), &[int(-1)])).unwrap(), v(int(3), &[int(0)]));
        assert_eq!(v(int(1), &[int(2)]).pow(&rat(1, 2)).unwrap(), v(rat(1, 2), &[int(1)]));
        assert!(Value::zero().mul(&v(int(1), &[int(0)])).unwrap().is_zero());
        assert_eq!(Value::zero().pow(&int(0)), Err(Error::ZeroPower));
    }

    #[test]
    fn sqrt_k_membership() {
        let pr = sqrt2();
        assert!(pr.in_sqrt_k(&v(rat(3, 2), &[int(0)])).unwrap());
        assert!(!pr.in_sqrt_k(&v(int(0), &[int(1)])).unwrap());
        let half = RadiusProfile::new(2, vec![RadiusSpec::Rational(rat(1, 2))], int(2)).unwrap();
        assert!(half.in_sqrt_k(&v(int(0), &[int(1)])).unwrap());
        assert_eq!(pr.in_sqrt_k(&Value::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn default_sigma_values() {
        assert_eq!(sqrt2().s_exponent(), &int(5));
        assert_eq!(RadiusProfile::free(2, 2).unwrap().s_exponent(), &int(9));
        assert_eq!(default_sigma(&[RadiusSpec::Rational(rat(1, 2))]), int(3));
    }

    #[test]
    fn profile_validation() {
        assert!(RadiusProfile::new(4, vec![], int(1)).is_err());
        assert!(RadiusProfile::new(2, vec![RadiusSpec::FreeIrrational(4)], int(1)).is_err());
        assert!(RadiusProfile::new(2, vec![RadiusSpec::FreeIrrational(2), RadiusSpec::FreeIrrational(2)], int(1)).is_err());
        assert!(RadiusProfile::new(2, vec![], int(0)).is_err());
    }
}
