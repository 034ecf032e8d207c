//! Truncated sparse elements of `K` and `K_{r_1,…,r_n}^perfd`.
//!
//! An element is a finite map from monomials `t^a x^q` (exponents in ℤ[1/p])
//! to nonzero coefficients in 𝔽_p, together with a floor `η`: the true
//! element differs from the stored terms by something of norm `< η`. A zero
//! floor means the element is exact. Every stored term has norm `≥ η`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exponent::{floor_at, fmt_rat, int, pow_p, Rat};
use crate::valuegroup::{RadiusProfile, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub t: Rat,
    pub x: Vec<Rat>,
}

impl Monomial {
    pub fn new(t: Rat, x: Vec<Rat>) -> Self {
        Monomial { t, x }
    }

    pub fn one(n: usize) -> Self {
        Monomial { t: Rat::zero(), x: vec![Rat::zero(); n] }
    }

    pub fn t_power(t: Rat, n: usize) -> Self {
        Monomial { t, x: vec![Rat::zero(); n] }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { t: &self.t + &other.t, x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, e: &Rat) -> Monomial {
        Monomial { t: &self.t * e, x: self.x.iter().map(|a| a * e).collect() }
    }

    pub fn inv(&self) -> Monomial {
        self.scale(&int(-1))
    }

    pub fn norm(&self) -> Value {
        Value::new(self.t.clone(), self.x.clone())
    }

    pub(crate) fn check(&self, profile: &RadiusProfile) -> Result<()> {
        if self.x.len() != profile.n() {
            return Err(Error::ProfileMismatch(format!("monomial has {} x-exponents, profile has {}", self.x.len(), profile.n())));
        }
        profile.check_exponent(&self.t)?;
        self.x.iter().try_for_each(|e| profile.check_exponent(e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.t.is_zero() {
            parts.push(format!("t^{}", fmt_rat(&self.t)));
        }
        for (i, e) in self.x.iter().enumerate() {
            if !e.is_zero() {
                if self.x.len() == 1 {
                    parts.push(format!("x^{}", fmt_rat(e)));
                } else {
                    parts.push(format!("x{}^{}", i + 1, fmt_rat(e)));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

pub(crate) fn same_profile(a: &Arc<RadiusProfile>, b: &Arc<RadiusProfile>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn fp_mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn fp_pow(a: u32, e: &BigInt, p: u32) -> u32 {
    let e = e.modpow(&BigInt::one(), &BigInt::from(p - 1));
    let e = e.to_u64().unwrap_or(0);
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

pub(crate) fn fp_inv(a: u32, p: u32) -> u32 {
    fp_pow(a, &BigInt::from(p - 2), p)
}

#[derive(Clone, Debug)]
pub struct SeriesElement {
    profile: Arc<RadiusProfile>,
    terms: BTreeMap<Monomial, u32>,
    floor: Value,
}

impl PartialEq for SeriesElement {
    fn eq(&self, other: &Self) -> bool {
        same_profile(&self.profile, &other.profile) && self.terms == other.terms && self.floor == other.floor
    }
}

impl SeriesElement {
    /// Builds an element, reducing coefficients mod `p`, merging repeats and
    /// dropping terms below `floor`.
    pub fn new(profile: Arc<RadiusProfile>, terms: impl IntoIterator<Item = (Monomial, i64)>, floor: Value) -> Result<Self> {
        let p = profile.p() as i64;
        let mut map: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            m.check(&profile)?;
            let c = c.rem_euclid(p) as u32;
            let e = map.entry(m).or_insert(0);
            *e = (*e + c) % p as u32;
        }
        map.retain(|_, c| *c != 0);
        if !floor.is_zero() && floor.q().len() != profile.n() {
            return Err(Error::ProfileMismatch("floor dimension".into()));
        }
        let mut out = SeriesElement { profile, terms: map, floor };
        out.drop_below_floor();
        Ok(out)
    }

    pub(crate) fn from_parts(profile: Arc<RadiusProfile>, terms: BTreeMap<Monomial, u32>, floor: Value) -> Self {
        let mut out = SeriesElement { profile, terms, floor };
        out.drop_below_floor();
        out
    }

    pub fn zero(profile: Arc<RadiusProfile>) -> Self {
        SeriesElement { profile, terms: BTreeMap::new(), floor: Value::zero() }
    }

    pub fn one(profile: Arc<RadiusProfile>) -> Self {
        let n = profile.n();
        Self::from_parts(profile, BTreeMap::from([(Monomial::one(n), 1)]), Value::zero())
    }

    pub fn monomial(profile: Arc<RadiusProfile>, coeff: i64, m: Monomial) -> Result<Self> {
        Self::new(profile, [(m, coeff)], Value::zero())
    }

    pub fn t_power(profile: Arc<RadiusProfile>, a: Rat) -> Result<Self> {
        let n = profile.n();
        Self::monomial(profile, 1, Monomial::t_power(a, n))
    }

    /// The coordinate `x_i` (0-based).
    pub fn variable(profile: Arc<RadiusProfile>, i: usize) -> Result<Self> {
        let n = profile.n();
        if i >= n {
            return Err(Error::Invalid(format!("variable index {i} out of range")));
        }
        let mut x = vec![Rat::zero(); n];
        x[i] = int(1);
        Self::monomial(profile, 1, Monomial::new(Rat::zero(), x))
    }

    pub fn profile(&self) -> &Arc<RadiusProfile> {
        &self.profile
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn p(&self) -> u32 {
        self.profile.p()
    }

    pub fn floor(&self) -> &Value {
        &self.floor
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_exact() && self.terms.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_profile(&self.profile, &other.profile) {
            Ok(())
        } else {
            Err(Error::ProfileMismatch("series elements over different profiles".into()))
        }
    }

    pub(crate) fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.profile.cmp_exps(&a.t, &a.x, &b.t, &b.x)
    }

    fn above(&self, m: &Monomial, floor: &Value) -> bool {
        floor.is_zero() || self.profile.cmp_exps(&m.t, &m.x, floor.a(), floor.q()) != Ordering::Less
    }

    fn drop_below_floor(&mut self) {
        if self.floor.is_zero() {
            return;
        }
        let floor = self.floor.clone();
        let profile = self.profile.clone();
        self.terms.retain(|m, _| profile.cmp_exps(&m.t, &m.x, floor.a(), floor.q()) != Ordering::Less);
    }

    /// Terms sorted by decreasing norm.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, u32)> {
        let v: Vec<(&Monomial, u32)> = self.terms.iter().map(|(m, c)| (m, *c)).collect();
        let approx: Vec<f64> = v.iter().map(|(m, _)| approx_weight(&self.profile, m)).collect();
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| {
            let d = approx[i] - approx[j];
            if d.abs() > 1e-6 * (1.0 + approx[i].abs()) {
                d.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
            } else {
                self.cmp_mono(v[j].0, v[i].0)
            }
        });
        idx.into_iter().map(|i| v[i]).collect()
    }

    /// `max` of term norms, or `None` when no term is known (below floor).
    pub fn gauss_norm(&self) -> Option<Value> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = match best {
                Some(b) if self.cmp_mono(m, b) != Ordering::Greater => Some(b),
                _ => Some(m),
            };
        }
        best.map(Monomial::norm)
    }

    /// An upper bound for the true norm: the Gauss norm of the known terms,
    /// else the floor.
    pub fn norm_bound(&self) -> Value {
        self.gauss_norm().unwrap_or_else(|| self.floor.clone())
    }

    /// All terms attaining the Gauss norm.
    pub fn leading_part(&self) -> Result<SeriesElement> {
        let sorted = self.sorted_terms();
        let Some((lead, _)) = sorted.first() else {
            return Err(Error::BelowFloor);
        };
        let lead = (*lead).clone();
        let terms: BTreeMap<Monomial, u32> =
            sorted.into_iter().take_while(|(m, _)| self.cmp_mono(m, &lead) == Ordering::Equal).map(|(m, c)| (m.clone(), c)).collect();
        Ok(SeriesElement { profile: self.profile.clone(), terms, floor: Value::zero() })
    }

    /// The x-exponent of the leading term.
    pub fn argnorm(&self) -> Result<Vec<Rat>> {
        let lead = self.leading_part()?;
        let mut xs: Vec<&Vec<Rat>> = lead.terms.keys().map(|m| &m.x).collect();
        xs.dedup();
        if xs.len() > 1 {
            return Err(Error::LeadingTie(lead.to_string()));
        }
        Ok(xs[0].clone())
    }

    /// The unique leading monomial and its coefficient.
    pub fn leading_term(&self) -> Result<(Monomial, u32)> {
        let lead = self.leading_part()?;
        if lead.terms.len() > 1 {
            return Err(Error::LeadingTie(lead.to_string()));
        }
        let (m, c) = lead.terms.into_iter().next().expect("nonempty");
        Ok((m, c))
    }

    pub fn neg(&self) -> SeriesElement {
        let p = self.p();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), p - c)).collect();
        SeriesElement { profile: self.profile.clone(), terms, floor: self.floor.clone() }
    }

    pub fn add(&self, other: &SeriesElement) -> Result<SeriesElement> {
        self.check_same(other)?;
        let p = self.p();
        let floor = self.profile.max(&self.floor, &other.floor).clone();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert(0);
            *e = (*e + c) % p;
        }
        terms.retain(|_, c| *c != 0);
        Ok(Self::from_parts(self.profile.clone(), terms, floor))
    }

    pub fn sub(&self, other: &SeriesElement) -> Result<SeriesElement> {
        self.add(&other.neg())
    }

    /// Floor of a product, by ultrametric error propagation.
    pub fn product_floor(&self, other: &SeriesElement) -> Value {
        if self.is_exact() && other.is_exact() {
            return Value::zero();
        }
        let bf = self.norm_bound();
        let bg = other.norm_bound();
        let cands = [
            self.floor.mul(&bg).unwrap_or_else(|_| Value::zero()),
            other.floor.mul(&bf).unwrap_or_else(|_| Value::zero()),
            self.floor.mul(&other.floor).unwrap_or_else(|_| Value::zero()),
        ];
        let mut best = cands[0].clone();
        for c in &cands[1..] {
            best = self.profile.max(&best, c).clone();
        }
        best
    }

    pub fn mul(&self, other: &SeriesElement) -> Result<SeriesElement> {
        self.mul_truncated(other, None)
    }

    /// Product with terms below `max(natural floor, extra)` never formed.
    pub fn mul_truncated(&self, other: &SeriesElement, extra: Option<&Value>) -> Result<SeriesElement> {
        self.check_same(other)?;
        let mut floor = self.product_floor(other);
        if let Some(e) = extra {
            floor = self.profile.max(&floor, e).clone();
        }
        let p = self.p();
        let fs = self.sorted_terms();
        let gs = other.sorted_terms();
        let mut terms: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m1, c1) in &fs {
            if let Some((g0, _)) = gs.first() {
                if !self.above(&m1.mul(g0), &floor) {
                    break;
                }
            }
            for (m2, c2) in &gs {
                let prod = m1.mul(m2);
                if !self.above(&prod, &floor) {
                    break;
                }
                let e = terms.entry(prod).or_insert(0);
                *e = (*e + fp_mul(*c1, *c2, p)) % p;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(SeriesElement { profile: self.profile.clone(), terms, floor })
    }

    /// Multiplication by the exact monomial `c·m`.
    pub fn scale_monomial(&self, c: u32, m: &Monomial) -> Result<SeriesElement> {
        m.check(&self.profile)?;
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return Ok(Self::zero(self.profile.clone()));
        }
        let terms = self.terms.iter().map(|(k, v)| (k.mul(m), fp_mul(*v, c, p))).collect();
        let floor = self.floor.mul(&m.norm())?;
        Ok(SeriesElement { profile: self.profile.clone(), terms, floor })
    }

    /// Multiplication by `t^a`.
    pub fn scale_t(&self, a: &Rat) -> Result<SeriesElement> {
        self.scale_monomial(1, &Monomial::t_power(a.clone(), self.n()))
    }

    /// Raises the floor to `max(floor, eta)`.
    pub fn truncate(&self, eta: &Value) -> SeriesElement {
        let floor = self.profile.max(&self.floor, eta).clone();
        Self::from_parts(self.profile.clone(), self.terms.clone(), floor)
    }

    /// Returns `g` with `|f·g − 1| < η'`.
    pub fn invert(&self, target: &Value) -> Result<SeriesElement> {
        if target.is_zero() {
            return Err(Error::Invalid("inversion needs a nonzero target floor".into()));
        }
        let (lead, c) = self.leading_term()?;
        let p = self.p();
        let u_inv = lead.inv();
        let c_inv = fp_inv(c, p);
        let one = Self::one(self.profile.clone());
        // f = u(1 − h) with |h| < 1.
        let h = one.sub(&self.scale_monomial(c_inv, &u_inv)?)?;
        let f_norm = lead.norm();
        let one_v = Value::one(self.n());
        let rel = self.profile.min(&one_v, &f_norm).clone();
        let floor_s = target.mul(&rel)?;
        if !h.is_exact() && self.profile.lt(&floor_s, h.floor()) {
            return Err(Error::FloorUnderflow(format!("input floor {} is too coarse for target {}", self.floor, target)));
        }
        let hb = h.norm_bound();
        let mut s = one.clone();
        if !hb.is_zero() {
            let mut n = 0i64;
            let mut hp = hb.clone();
            while !self.profile.lt(&hp, &floor_s) {
                n += 1;
                hp = hp.mul(&hb)?;
                if n > 1_000_000 {
                    return Err(Error::FloorUnderflow("series inversion does not converge".into()));
                }
            }
            for _ in 0..n {
                s = one.add(&h.mul_truncated(&s, Some(&floor_s))?)?;
            }
            s = s.truncate(&floor_s);
        }
        s.scale_monomial(c_inv, &u_inv)
    }

    /// `x ↦ x^p` on every exponent.
    pub fn frobenius(&self) -> SeriesElement {
        let p = int(self.p() as i64);
        let terms = self.terms.iter().map(|(m, c)| (m.scale(&p), *c)).collect();
        let floor = self.floor.pow(&p).expect("p > 0");
        SeriesElement { profile: self.profile.clone(), terms, floor }
    }

    pub fn pth_root(&self) -> Result<SeriesElement> {
        self.root_pk(1)
    }

    /// The `p^k`-th root.
    pub fn root_pk(&self, k: u32) -> Result<SeriesElement> {
        if k == 0 {
            return Ok(self.clone());
        }
        let e = Rat::new(BigInt::one(), pow_p(self.p(), k));
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = m.scale(&e);
            r.check(&self.profile)?;
            terms.insert(r, *c);
        }
        let floor = self.floor.pow(&e)?;
        Ok(SeriesElement { profile: self.profile.clone(), terms, floor })
    }

    /// `f^N` with intermediate products truncated at `extra`.
    pub fn pow_u(&self, n: &BigInt, extra: Option<&Value>) -> Result<SeriesElement> {
        let mut result = Self::one(self.profile.clone());
        if n.is_zero() {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut k = n.clone();
        let two = BigInt::from(2);
        loop {
            if (&k % &two).is_one() {
                result = result.mul_truncated(&base, extra)?;
            }
            k /= &two;
            if k.is_zero() {
                break;
            }
            base = base.mul_truncated(&base, extra)?;
        }
        Ok(result)
    }

    /// `f^e` for `e ∈ ℤ[1/p]_{≥0}`.
    pub fn pow_rat(&self, e: &Rat, extra: Option<&Value>) -> Result<SeriesElement> {
        if e.is_negative() {
            return Err(Error::Invalid("negative power of a series".into()));
        }
        let k = crate::exponent::denom_log(e, self.p()).ok_or_else(|| Error::NotPAdicExponent { exponent: fmt_rat(e), p: self.p() })?;
        if self.is_exact() && self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().expect("one term");
            let r = m.scale(e);
            r.check(&self.profile)?;
            let coeff = fp_pow(*c, e.numer(), self.p());
            return Ok(SeriesElement { profile: self.profile.clone(), terms: BTreeMap::from([(r, coeff)]), floor: Value::zero() });
        }
        self.root_pk(k)?.pow_u(e.numer(), extra)
    }

    /// The finite sub-sum of terms with norm `≥ M`, as an exact element.
    pub fn res_ge(&self, cut: &Value) -> Result<SeriesElement> {
        if self.profile.lt(cut, &self.floor) {
            return Err(Error::FloorTooCoarse(format!("cut {} lies below floor {}", cut, self.floor)));
        }
        let terms = self.terms.iter().filter(|(m, _)| self.above(m, cut)).map(|(m, c)| (m.clone(), *c)).collect();
        Ok(SeriesElement { profile: self.profile.clone(), terms, floor: Value::zero() })
    }

    /// Terms whose x-exponent is `q`, as an element of the base field `K`.
    /// The floor is a power of `|t|` covering every unknown term `t^a x^q`.
    pub fn column(&self, q: &[Rat], base: &Arc<RadiusProfile>) -> Result<SeriesElement> {
        let terms: BTreeMap<Monomial, u32> =
            self.terms.iter().filter(|(m, _)| m.x == q).map(|(m, c)| (Monomial::t_power(m.t.clone(), 0), *c)).collect();
        let floor = if self.floor.is_zero() { Value::zero() } else { t_floor_covering(&self.profile, &self.floor, q)? };
        Ok(Self::from_parts(base.clone(), terms, floor))
    }

    /// Embeds an element of `K` into a profile with radii.
    pub fn embed(&self, target: &Arc<RadiusProfile>) -> Result<SeriesElement> {
        if self.n() != 0 || self.p() != target.p() {
            return Err(Error::ProfileMismatch("only base-field elements embed".into()));
        }
        let n = target.n();
        let terms = self.terms.iter().map(|(m, c)| (Monomial::t_power(m.t.clone(), n), *c)).collect();
        let floor = self.floor.embed(n)?;
        Ok(SeriesElement { profile: target.clone(), terms, floor })
    }

    /// Is the element exactly a single monomial?
    pub fn as_monomial(&self) -> Option<(&Monomial, u32)> {
        if self.is_exact() && self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (m, *c))
        } else {
            None
        }
    }

    /// Same terms and floor over an equal profile held by a different `Arc`.
    pub fn with_profile(&self, profile: Arc<RadiusProfile>) -> Result<SeriesElement> {
        if *profile != *self.profile {
            return Err(Error::ProfileMismatch("profiles differ".into()));
        }
        Ok(SeriesElement { profile, terms: self.terms.clone(), floor: self.floor.clone() })
    }
}

/// A `|t|`-power `⟨a⟩` with `|t^a x^q| ≥ floor`, as close to equality as a
/// coarse dyadic grid allows.
pub(crate) fn t_floor_covering(profile: &RadiusProfile, floor: &Value, q: &[Rat]) -> Result<Value> {
    let mono = Value::new(Rat::zero(), q.to_vec());
    let w = profile.weight_f64(floor) - profile.weight_f64(&mono);
    let mut a = floor_at(w - 1e-6, profile.p(), 8);
    let step = Rat::new(BigInt::one(), pow_p(profile.p(), 8));
    loop {
        let cand = Value::new(a.clone(), q.to_vec());
        if profile.cmp_norm(&cand, floor) != Ordering::Less {
            return Ok(Value::t_power(a, 0));
        }
        a -= &step;
    }
}

pub(crate) fn approx_weight(profile: &RadiusProfile, m: &Monomial) -> f64 {
    let mut w = crate::exponent::rat_to_f64(&m.t);
    for (e, r) in m.x.iter().zip(profile.radii()) {
        w += crate::exponent::rat_to_f64(e) * r.alpha_f64();
    }
    w
}

impl fmt::Display for SeriesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sorted_terms().into_iter().map(|(m, c)| if c == 1 { m.to_string() } else { format!("{c}·{m}") }).collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.floor.is_zero() {
            write!(f, "{body}")
        } else {
            write!(f, "{body} + O({})", self.floor)
        }
    }
}
