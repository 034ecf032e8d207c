//! Gleason elements `G = Σ α_i^{p^{b_i}}` with `α_i = e_i W_i`, built to a
//! finite depth together with the data of the adapted elements
//! `H_m = (ε_m G − Σ_{i<m} d_{m,i} W_i^{p^{b_i}})^{1/p^{b_m}}`.
//!
//! Weights are `−log_{|t|}` of norms: larger weight, smaller norm. With
//! `w_i` the weight of `α_i`, the choice of `b_m` enforces
//!
//! 1. `p^{b_m} w_m > m` (convergence),
//! 2. `d_{m,i} = ε_m e_i^{p^{b_i}}` has weight `≥ 0`,
//! 3. `0 < δ_m / p^{b_m} + w_m < σ_s` where `ε_m = t^{δ_m}`,
//! 4. `p^{b_m − b_i} w_m > σ_s + 1 + gap` for every `i < m`,
//! 5. `ω(m) p^{b_m}` differs from every earlier `ω(i) p^{b_i}`.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::adapted::{is_adapted, AdaptedCertificate};
use crate::error::{Error, Result};
use crate::exponent::{fmt_rat, int, pow_p, rat_to_f64, Rat};
use crate::series::{Monomial, SeriesElement};
use crate::tatealg::{t_monomial_coeff, HomSpec, TateElement};
use crate::valuegroup::{RadiusProfile, Value};

use super::wellorder::{Region, WellOrder};

/// The monomials `V_k` whose `ℤ[1/p]`-combinations index the Gleason element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Independent monomials; `J` is their `ℤ[1/p]_{≥0}`-cone and the well-order
    /// runs over coefficient vectors `h`.
    Cone { generators: Vec<Monomial> },
    /// `(x_1, …, x_n, t^c x_1^{-1}⋯x_n^{-1})`; `J = ℤ[1/p]^n` and `q` has the
    /// coefficients `h_0 = max(0, −min_i q_i)`, `h_i = q_i + h_0`.
    Lattice { c_exp: Rat },
}

impl Basis {
    pub fn generators(&self, n: usize) -> Vec<Monomial> {
        match self {
            Basis::Cone { generators } => generators.clone(),
            Basis::Lattice { c_exp } => {
                let mut out: Vec<Monomial> = (0..n)
                    .map(|i| {
                        let mut x = vec![Rat::zero(); n];
                        x[i] = int(1);
                        Monomial::new(Rat::zero(), x)
                    })
                    .collect();
                out.push(Monomial::new(c_exp.clone(), vec![int(-1); n]));
                out
            }
        }
    }

    pub fn len(&self, n: usize) -> usize {
        match self {
            Basis::Cone { generators } => generators.len(),
            Basis::Lattice { .. } => n + 1,
        }
    }

    pub fn well_order(&self, p: u32, n: usize) -> WellOrder {
        match self {
            Basis::Cone { generators } => WellOrder::new(p, generators.len(), Region::NonNegative),
            Basis::Lattice { .. } => WellOrder::new(p, n, Region::All),
        }
    }

    /// The coefficient vector `h` with `x^q = x-part of Π V_k^{h_k}`.
    pub fn representation(&self, q: &[Rat]) -> Result<Vec<Rat>> {
        match self {
            Basis::Cone { generators } => {
                let vs: Vec<Vec<Rat>> = generators.iter().map(|g| g.x.clone()).collect();
                let h = solve(&vs, q).ok_or_else(|| Error::Invalid(format!("exponent {} is not in the span of the basis", fmt_vec(q))))?;
                if h.iter().any(Signed::is_negative) {
                    return Err(Error::Invalid(format!("exponent {} lies outside the cone", fmt_vec(q))));
                }
                Ok(h)
            }
            Basis::Lattice { .. } => {
                let min = q.iter().min().cloned().unwrap_or_else(Rat::zero);
                let h0 = if min.is_negative() { -min } else { Rat::zero() };
                let mut h: Vec<Rat> = q.iter().map(|x| x + &h0).collect();
                h.push(h0);
                Ok(h)
            }
        }
    }

    /// The well-order key of `q`: `h` for a cone, `q` for the lattice.
    pub fn order_key(&self, q: &[Rat]) -> Result<Vec<Rat>> {
        match self {
            Basis::Cone { .. } => self.representation(q),
            Basis::Lattice { .. } => Ok(q.to_vec()),
        }
    }

    fn item(&self, key: Vec<Rat>, n: usize) -> (Vec<Rat>, Vec<Rat>) {
        match self {
            Basis::Cone { generators } => {
                let mut q = vec![Rat::zero(); n];
                for (hk, g) in key.iter().zip(generators) {
                    for (qi, vi) in q.iter_mut().zip(&g.x) {
                        *qi += hk * vi;
                    }
                }
                (q, key)
            }
            Basis::Lattice { .. } => {
                let h = self.representation(&key).expect("lattice representation is total");
                (key, h)
            }
        }
    }
}

pub(crate) fn fmt_vec(q: &[Rat]) -> String {
    let parts: Vec<String> = q.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

/// Unique solution of `Σ_k h_k v_k = q`, or `None` when the `v_k` are dependent
/// or `q` is outside their span.
fn solve(vs: &[Vec<Rat>], q: &[Rat]) -> Option<Vec<Rat>> {
    let l = vs.len();
    let n = q.len();
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut r: Vec<Rat> = vs.iter().map(|v| v[j].clone()).collect();
            r.push(q[j].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..l {
        let Some(pr) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=l {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < l || rows[r..].iter().any(|row| !row[l].is_zero()) {
        return None;
    }
    let mut h = vec![Rat::zero(); l];
    for (i, &c) in pivots.iter().enumerate() {
        h[c] = rows[i][l].clone();
    }
    Some(h)
}

/// Where the coefficient `e_m` is placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EWindow {
    /// `s < |e_m W_m| < 1`.
    AlphaNorm,
    /// `s < |e_m| < |V_ℓ|`, the last generator.
    BelowGenerator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleOptions {
    /// Relative position of the target weight inside each open window, in `(0,1)`.
    pub theta: Rat,
    /// Extra factors of `|ϖ|` demanded of the tails of adapted elements.
    pub tail_gap: u32,
    /// Upper limit for the search over `b_m`.
    pub max_b: u32,
    pub window: EWindow,
    /// When false, condition (3) is recorded but not enforced.
    pub require_adapted: bool,
}

impl Default for ScheduleOptions {
    fn default() -> Self {
        ScheduleOptions { theta: Rat::new(1.into(), 2.into()), tail_gap: 0, max_b: 4096, window: EWindow::AlphaNorm, require_adapted: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionChecks {
    pub convergence: bool,
    pub bounded_coefficients: bool,
    pub window: bool,
    pub tail: bool,
    pub distinct: bool,
}

impl ConditionChecks {
    pub fn all(&self) -> bool {
        self.convergence && self.bounded_coefficients && self.window && self.tail && self.distinct
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleStep {
    /// `ω(m)`.
    pub omega: Vec<Rat>,
    /// Coefficients of `W_m = Π V_k^{h_k}`.
    pub h: Vec<Rat>,
    /// `W_m = t^{w_t} x^{ω(m)}`.
    pub w_t: Rat,
    /// `e_m = t^{e_t}`.
    pub e_t: Rat,
    /// `ε_m = t^{δ}`.
    pub delta: Rat,
    pub b: u32,
    pub conditions: ConditionChecks,
}

impl ScheduleStep {
    /// `α_m = e_m W_m` as a monomial.
    pub fn alpha(&self) -> Monomial {
        Monomial::new(&self.e_t + &self.w_t, self.omega.clone())
    }
}

#[derive(Clone, Debug)]
pub struct GleasonSchedule {
    profile: Arc<RadiusProfile>,
    basis: Basis,
    options: ScheduleOptions,
    order: WellOrder,
    steps: Vec<ScheduleStep>,
    /// `max_{i} (−p^{b_i} e_i)` over the steps so far, clamped at 0.
    delta_floor: Rat,
    seen: HashSet<Vec<Rat>>,
}

impl GleasonSchedule {
    pub fn new(profile: Arc<RadiusProfile>, basis: Basis, options: ScheduleOptions) -> Result<Self> {
        let n = profile.n();
        let one = Value::one(n);
        if options.theta <= Rat::zero() || options.theta >= int(1) {
            return Err(Error::Invalid("θ must lie strictly between 0 and 1".into()));
        }
        let gens = basis.generators(n);
        if gens.is_empty() {
            return Err(Error::Invalid("a Gleason element needs at least one monomial".into()));
        }
        for (k, g) in gens.iter().enumerate() {
            if g.x.len() != n {
                return Err(Error::ProfileMismatch(format!("generator {k} has the wrong dimension")));
            }
            if !profile.lt(&g.norm(), &one) {
                return Err(Error::NormWindow(format!("|V_{}| = |{}| is not < 1", k + 1, g)));
            }
        }
        match &basis {
            Basis::Cone { generators } => {
                let vs: Vec<Vec<Rat>> = generators.iter().map(|g| g.x.clone()).collect();
                if solve(&vs, &vec![Rat::zero(); n]).is_none() {
                    return Err(Error::NonUniqueRepresentation("the generator exponents are linearly dependent".into()));
                }
            }
            Basis::Lattice { .. } => {
                if n == 0 {
                    return Err(Error::Invalid("the lattice basis needs at least one radius".into()));
                }
                let v = gens.last().expect("nonempty").norm();
                if !profile.lt(&profile.s(), &v) {
                    return Err(Error::NormWindow(format!("|c x^-1| = {v} is not > s")));
                }
            }
        }
        let order = basis.well_order(profile.p(), n);
        Ok(GleasonSchedule { profile, basis, options, order, steps: Vec::new(), delta_floor: Rat::zero(), seen: HashSet::new() })
    }

    pub fn profile(&self) -> &Arc<RadiusProfile> {
        &self.profile
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn options(&self) -> &ScheduleOptions {
        &self.options
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[ScheduleStep] {
        &self.steps
    }

    /// Step `m`, 1-based.
    pub fn step(&self, m: usize) -> &ScheduleStep {
        &self.steps[m - 1]
    }

    pub fn well_order(&self) -> &WellOrder {
        &self.order
    }

    /// `σ_s + 1 + gap`: the tail weight demanded of every adapted element.
    pub fn tail_weight(&self) -> Rat {
        self.profile.s_exponent() + int(1 + self.options.tail_gap as i64)
    }

    /// Position of `q` in the well-order, whether or not the schedule reaches it.
    pub fn index_of(&self, q: &[Rat]) -> Result<usize> {
        let key = self.basis.order_key(q)?;
        self.order.index(&key)
    }

    fn p_rat(&self, k: u32) -> Rat {
        Rat::from_integer(pow_p(self.profile.p(), k))
    }

    fn alpha_value(&self, step: &ScheduleStep) -> Value {
        Value::new(&step.e_t + &step.w_t, step.omega.clone())
    }

    fn pick_e(&self, w: &Monomial) -> Result<Rat> {
        let n = self.profile.n();
        let (hi, mono) = match self.options.window {
            EWindow::AlphaNorm => (Value::one(n), w.norm()),
            EWindow::BelowGenerator => {
                let last = self.basis.generators(n).pop().expect("nonempty");
                (last.norm(), Value::one(n))
            }
        };
        pick_t_exponent(&self.profile, &self.profile.s(), &hi, &mono, &self.options.theta)
    }

    /// Conditions (1)–(5) for a step with exponent `b` placed after the
    /// existing `prior` steps.
    fn conditions(&self, prior: &[ScheduleStep], omega: &[Rat], alpha: &Value, delta: &Rat, b: u32) -> Result<ConditionChecks> {
        let profile = &self.profile;
        let n = profile.n();
        let m = prior.len() + 1;
        let pb = self.p_rat(b);
        let convergence = profile.lt(&alpha.pow(&pb)?, &Value::t_power(int(m as i64), n));
        let bounded_coefficients = prior.iter().all(|st| !(delta + &self.p_rat(st.b) * &st.e_t).is_negative());
        let shifted = Value::t_power(delta / &pb, n).mul(alpha)?;
        let window = profile.lt(&profile.s(), &shifted) && profile.lt(&shifted, &Value::one(n));
        let bound = Value::t_power(self.tail_weight(), n);
        let mut tail = true;
        for st in prior {
            if b <= st.b || !profile.lt(&alpha.pow(&self.p_rat(b - st.b))?, &bound) {
                tail = false;
                break;
            }
        }
        let key: Vec<Rat> = omega.iter().map(|x| x * &pb).collect();
        let distinct = !self.seen.contains(&key);
        Ok(ConditionChecks { convergence, bounded_coefficients, window, tail, distinct })
    }

    /// Appends steps until the depth reaches `depth`.
    pub fn extend_to(&mut self, depth: usize) -> Result<()> {
        let n = self.profile.n();
        while self.steps.len() < depth {
            let m = self.steps.len() + 1;
            let key = self.order.nth(m);
            let (omega, h) = self.basis.item(key, n);
            let gens = self.basis.generators(n);
            let mut w_t = Rat::zero();
            for (hk, g) in h.iter().zip(&gens) {
                w_t += hk * &g.t;
            }
            let w = Monomial::new(w_t.clone(), omega.clone());
            w.check(&self.profile)?;
            let e_t = self.pick_e(&w)?;
            self.profile.check_exponent(&e_t)?;
            let alpha = Value::new(&e_t + &w_t, omega.clone());
            if !self.profile.lt(&alpha, &Value::one(n)) {
                return Err(Error::NormWindow(format!("|α_{m}| = {alpha} is not < 1")));
            }
            let attainable = self.profile.lt(&self.profile.s(), &alpha);
            if self.options.require_adapted && !attainable {
                return Err(Error::WindowEmpty(format!("|α_{m}| = {alpha} is not > s")));
            }
            let delta = self.delta_floor.clone();
            let start = self.steps.last().map(|st| st.b + 1).unwrap_or(0);
            let mut chosen = None;
            for b in start..=self.options.max_b {
                let c = self.conditions(&self.steps, &omega, &alpha, &delta, b)?;
                let window_ok = c.window || !attainable;
                if c.convergence && c.tail && c.distinct && c.bounded_coefficients && window_ok {
                    chosen = Some((b, c));
                    break;
                }
            }
            let (b, conditions) = chosen
                .ok_or_else(|| Error::CertificateFailed {
                    m, reason: format!("no b ≤ {} satisfies the schedule conditions", self.options.max_b)
                })?;
            let pb = self.p_rat(b);
            let neg = -(&pb * &e_t);
            if neg > self.delta_floor {
                self.delta_floor = neg;
            }
            self.seen.insert(omega.iter().map(|x| x * &pb).collect());
            self.steps.push(ScheduleStep { omega, h, w_t, e_t, delta, b, conditions });
        }
        Ok(())
    }

    /// Re-derives conditions (1)–(5) for step `m` from the stored data.
    pub fn verify_conditions(&self, m: usize) -> Result<ConditionChecks> {
        let st = self.step(m);
        let prior = &self.steps[..m - 1];
        let pb = self.p_rat(st.b);
        let n = self.profile.n();
        let alpha = self.alpha_value(st);
        let convergence = self.profile.lt(&alpha.pow(&pb)?, &Value::t_power(int(m as i64), n));
        let bounded_coefficients = (1..m).all(|i| !self.d(m, i).is_negative());
        let shifted = Value::t_power(&st.delta / &pb, n).mul(&alpha)?;
        let window = self.profile.lt(&self.profile.s(), &shifted) && self.profile.lt(&shifted, &Value::one(n));
        let bound = Value::t_power(self.tail_weight(), n);
        let mut tail = true;
        for pr in prior {
            tail &= st.b > pr.b && self.profile.lt(&alpha.pow(&self.p_rat(st.b - pr.b))?, &bound);
        }
        let key: Vec<Rat> = st.omega.iter().map(|x| x * &pb).collect();
        let distinct =
            self.steps.iter().enumerate().all(|(j, o)| j + 1 == m || o.omega.iter().map(|x| x * &self.p_rat(o.b)).collect::<Vec<_>>() != key);
        Ok(ConditionChecks { convergence, bounded_coefficients, window, tail, distinct })
    }

    /// The t-exponent of `d_{m,i} = ε_m e_i^{p^{b_i}}`, for `i < m`.
    pub fn d(&self, m: usize, i: usize) -> Rat {
        let st = self.step(i);
        &self.step(m).delta + &self.p_rat(st.b) * &st.e_t
    }

    /// `α_i^{p^{b_i}}`.
    pub fn g_term(&self, i: usize) -> Monomial {
        let st = self.step(i);
        st.alpha().scale(&self.p_rat(st.b))
    }

    /// Weight of the floor of the truncated `G`: every omitted term has weight
    /// above both `depth + 1` and `(σ_s + 1 + gap) p^{b_depth}`.
    pub fn floor_weight(&self) -> Rat {
        let d = self.depth();
        if d == 0 {
            return Rat::zero();
        }
        let a = int(d as i64 + 1);
        let b = self.tail_weight() * self.p_rat(self.step(d).b);
        if a > b {
            a
        } else {
            b
        }
    }

    /// `G` truncated to the schedule depth.
    pub fn element(&self) -> Result<SeriesElement> {
        let n = self.profile.n();
        let terms = (1..=self.depth()).map(|i| (self.g_term(i), 1i64));
        SeriesElement::new(self.profile.clone(), terms, Value::t_power(self.floor_weight(), n))
    }

    /// `ε_m G − Σ_{i<m} d_{m,i} W_i^{p^{b_i}}`.
    pub fn cancellation_element(&self, m: usize) -> Result<SeriesElement> {
        let st = self.step(m);
        let g = self.element()?.scale_t(&st.delta)?;
        let subtract = (1..m).map(|i| {
            let pr = self.step(i);
            let pb = self.p_rat(pr.b);
            (Monomial::new(self.d(m, i) + &pb * &pr.w_t, pr.omega.iter().map(|x| x * &pb).collect()), 1i64)
        });
        let sub = SeriesElement::new(self.profile.clone(), subtract, Value::zero())?;
        g.sub(&sub)
    }

    /// `H_m`, computed directly from the series.
    pub fn adapted_element(&self, m: usize) -> Result<SeriesElement> {
        self.cancellation_element(m)?.root_pk(self.step(m).b)
    }

    pub fn certificate(&self, m: usize) -> Result<AdaptedCertificate> {
        is_adapted(&self.adapted_element(m)?, &self.step(m).omega)
    }

    /// The images `V_1, …, V_ℓ, G`.
    pub fn hom_spec(&self) -> Result<HomSpec> {
        let mut images = Vec::new();
        for g in self.basis.generators(self.profile.n()) {
            images.push(SeriesElement::monomial(self.profile.clone(), 1, g)?);
        }
        images.push(self.element()?);
        HomSpec::new(self.profile.clone(), images)
    }

    /// A Tate element in `ℓ + 1` variables mapping to `H_m` under [`Self::hom_spec`]:
    /// `t^{δ/p^b} T_{ℓ+1}^{1/p^b} − Σ_{i<m} t^{d_{m,i}/p^b} T^{h_i p^{b_i − b}}`.
    pub fn preimage(&self, m: usize) -> Result<TateElement> {
        let base = Arc::new(self.profile.base());
        let l = self.basis.len(self.profile.n());
        let st = self.step(m);
        let pb = self.p_rat(st.b);
        let mut terms = Vec::new();
        let mut top = vec![Rat::zero(); l + 1];
        top[l] = pb.recip();
        terms.push((top, t_monomial_coeff(&base, 1, &st.delta / &pb)?));
        for i in 1..m {
            let pr = self.step(i);
            let scale = Rat::new(BigInt::one(), pow_p(self.profile.p(), st.b - pr.b));
            let mut e: Vec<Rat> = pr.h.iter().map(|x| x * &scale).collect();
            e.push(Rat::zero());
            terms.push((e, t_monomial_coeff(&base, -1, self.d(m, i) / &pb)?));
        }
        TateElement::new(base, l + 1, terms, Value::zero())
    }

    /// For one-generator schedules with the [`EWindow::BelowGenerator`]
    /// window: `Σ_i e_i^{p^{b_i}} T^{h_i p^{b_i}}`, a preimage of `G` under
    /// `T ↦ V`. The floor bounds the omitted coefficients.
    pub fn generator_preimage(&self) -> Result<TateElement> {
        let n = self.profile.n();
        let gens = self.basis.generators(n);
        if gens.len() != 1 || self.options.window != EWindow::BelowGenerator {
            return Err(Error::Invalid("a one-variable preimage needs a single generator and the below-generator window".into()));
        }
        let base = Arc::new(self.profile.base());
        let mut terms = Vec::new();
        for st in &self.steps {
            let pb = self.p_rat(st.b);
            let e: Vec<Rat> = st.h.iter().map(|x| x * &pb).collect();
            terms.push((e, t_monomial_coeff(&base, 1, &pb * &st.e_t)?));
        }
        // Omitted e_i exceed |V| in weight, and p^{b_i} ≥ p^{b_depth + 1}.
        let floor = match self.steps.last() {
            None => Value::zero(),
            Some(last) => {
                let v = gens[0].norm();
                let lower = rational_lower_bound(&self.profile, &v);
                Value::t_power(lower * self.p_rat(last.b + 1), 0)
            }
        };
        TateElement::new(base, 1, terms, floor)
    }
}

/// A rational `r` on a `1/p^8` grid with `|t^r| ≥ v`, i.e. weight `r ≤ wt(v)`.
fn rational_lower_bound(profile: &RadiusProfile, v: &Value) -> Rat {
    let n = profile.n();
    let step = Rat::new(BigInt::one(), pow_p(profile.p(), 8));
    let mut r = crate::exponent::floor_at(profile.weight_f64(v) - 1e-6, profile.p(), 8);
    while profile.lt(&Value::t_power(r.clone(), n), v) {
        r -= &step;
    }
    r
}

/// A `t`-exponent `a ∈ ℤ[1/p]` with `lo < |t^a|·mono < hi`, near the
/// fraction `θ` of the window measured in weight from the `hi` end.
pub fn pick_t_exponent(profile: &RadiusProfile, lo: &Value, hi: &Value, mono: &Value, theta: &Rat) -> Result<Rat> {
    let n = profile.n();
    let wm = profile.weight_f64(mono);
    let a_min = profile.weight_f64(hi) - wm;
    let a_max = profile.weight_f64(lo) - wm;
    let target = a_min + rat_to_f64(theta) * (a_max - a_min);
    if !target.is_finite() {
        return Err(Error::WindowEmpty("window endpoints are not finite".into()));
    }
    for k in 0..=profile.max_denom_log() {
        let den = pow_p(profile.p(), k);
        let scale = rat_to_f64(&Rat::from_integer(den.clone()));
        let a = Rat::new(BigInt::from((target * scale).round() as i64), den);
        let v = Value::t_power(a.clone(), n).mul(mono)?;
        if profile.lt(lo, &v) && profile.lt(&v, hi) {
            return Ok(a);
        }
    }
    Err(Error::WindowEmpty(format!("no t-exponent with {lo} < |t^a|·{mono} < {hi}")))
}

/// A schedule together with its truncated element and one certificate per step.
#[derive(Clone, Debug)]
pub struct GleasonBuild {
    pub schedule: GleasonSchedule,
    pub element: SeriesElement,
    pub certificates: Vec<AdaptedCertificate>,
}

impl GleasonBuild {
    pub(crate) fn from_schedule(schedule: GleasonSchedule, assert: bool) -> Result<Self> {
        let element = schedule.element()?;
        let mut certificates = Vec::with_capacity(schedule.depth());
        for m in 1..=schedule.depth() {
            let c = schedule.certificate(m)?;
            if assert {
                let conds = schedule.verify_conditions(m)?;
                if !conds.all() {
                    return Err(Error::CertificateFailed { m, reason: format!("conditions {conds:?}") });
                }
                if !c.passed() {
                    return Err(Error::CertificateFailed { m, reason: format!("adaptedness checks {:?}", c.checks) });
                }
            }
            certificates.push(c);
        }
        Ok(GleasonBuild { schedule, element, certificates })
    }

    pub fn all_passed(&self) -> bool {
        self.certificates.iter().all(AdaptedCertificate::passed)
    }
}

/// `G₊` over one free radius: `J = ℤ[1/p]_{≥0}`, `V = x`.
pub fn build_gplus(profile: Arc<RadiusProfile>, depth: usize, options: ScheduleOptions) -> Result<GleasonBuild> {
    if profile.n() != 1 || !profile.is_all_free() {
        return Err(Error::InvalidProfile("G₊ needs exactly one free radius".into()));
    }
    build_gmultivar(profile, vec![Monomial::new(Rat::zero(), vec![int(1)])], depth, options)
}

/// A Gleason element for the cone spanned by independent monomials `V_k`.
pub fn build_gmultivar(profile: Arc<RadiusProfile>, generators: Vec<Monomial>, depth: usize, options: ScheduleOptions) -> Result<GleasonBuild> {
    let mut schedule = GleasonSchedule::new(profile, Basis::Cone { generators }, options)?;
    schedule.extend_to(depth)?;
    GleasonBuild::from_schedule(schedule, true)
}

/// A Gleason element over all of `ℤ[1/p]^n` via the lattice basis.
pub fn build_lattice(profile: Arc<RadiusProfile>, c_exp: Rat, depth: usize, options: ScheduleOptions) -> Result<GleasonBuild> {
    let mut schedule = GleasonSchedule::new(profile, Basis::Lattice { c_exp }, options)?;
    schedule.extend_to(depth)?;
    GleasonBuild::from_schedule(schedule, true)
}

/// `G₋` over one free radius: `V = t^c x^{-1}`, `s < |e_m| < |V|`. The
/// adapted-element window is recorded per step, not enforced.
pub fn build_gminus(profile: Arc<RadiusProfile>, c_exp: Rat, depth: usize, options: ScheduleOptions) -> Result<(GleasonBuild, TateElement)> {
    if profile.n() != 1 || !profile.is_all_free() {
        return Err(Error::InvalidProfile("G₋ needs exactly one free radius".into()));
    }
    let v = Monomial::new(c_exp, vec![int(-1)]);
    let vn = v.norm();
    if !(profile.lt(&profile.s(), &vn) && profile.lt(&vn, &Value::one(1))) {
        return Err(Error::WindowEmpty(format!("|c x^-1| = {vn} is not strictly between s and 1")));
    }
    let options = ScheduleOptions { window: EWindow::BelowGenerator, require_adapted: false, ..options };
    let mut schedule = GleasonSchedule::new(profile, Basis::Cone { generators: vec![v] }, options)?;
    schedule.extend_to(depth)?;
    let pre = schedule.generator_preimage()?;
    Ok((GleasonBuild::from_schedule(schedule, false)?, pre))
}
