//! Truncated elements of the perfectoid Tate algebra `K⟨T_1^{1/p^∞},…,T_m^{1/p^∞}⟩`
//! and bounded substitutions into a series field.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::{fmt_rat, int, Rat};
use crate::series::{same_profile, Monomial, SeriesElement};
use crate::valuegroup::{RadiusProfile, Value};

/// Coefficients live in `K`; the floor is a `|t|`-power (or zero). Every
/// coefficient carries the element floor, so the unknown part of the element
/// is a series with all coefficients of norm `< η`.
#[derive(Clone, Debug)]
pub struct TateElement {
    base: Arc<RadiusProfile>,
    m: usize,
    terms: BTreeMap<Vec<Rat>, SeriesElement>,
    floor: Value,
}

impl PartialEq for TateElement {
    fn eq(&self, other: &Self) -> bool {
        same_profile(&self.base, &other.base) && self.m == other.m && self.terms == other.terms && self.floor == other.floor
    }
}

impl TateElement {
    pub fn new(base: Arc<RadiusProfile>, m: usize, terms: impl IntoIterator<Item = (Vec<Rat>, SeriesElement)>, floor: Value) -> Result<Self> {
        if base.n() != 0 {
            return Err(Error::ProfileMismatch("Tate coefficients must lie in the base field".into()));
        }
        let mut out = TateElement { base: base.clone(), m, terms: BTreeMap::new(), floor };
        for (e, c) in terms {
            if e.len() != m {
                return Err(Error::Invalid(format!("exponent vector of length {} in {m} variables", e.len())));
            }
            for x in &e {
                if x.is_negative() {
                    return Err(Error::Invalid(format!("negative Tate exponent {}", fmt_rat(x))));
                }
                base.check_exponent(x)?;
            }
            if !same_profile(c.profile(), &base) {
                return Err(Error::ProfileMismatch("coefficient profile".into()));
            }
            out.accumulate(e, &c)?;
        }
        out.normalize();
        Ok(out)
    }

    pub fn zero(base: Arc<RadiusProfile>, m: usize) -> Self {
        TateElement { base, m, terms: BTreeMap::new(), floor: Value::zero() }
    }

    pub fn constant(base: Arc<RadiusProfile>, m: usize, c: SeriesElement) -> Result<Self> {
        Self::new(base, m, [(vec![Rat::zero(); m], c)], Value::zero())
    }

    /// `c·T^e`.
    pub fn monomial(base: Arc<RadiusProfile>, c: SeriesElement, e: Vec<Rat>) -> Result<Self> {
        let m = e.len();
        Self::new(base, m, [(e, c)], Value::zero())
    }

    /// The variable `T_i` (0-based).
    pub fn variable(base: Arc<RadiusProfile>, m: usize, i: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::Invalid(format!("variable index {i} out of range")));
        }
        let mut e = vec![Rat::zero(); m];
        e[i] = int(1);
        let one = SeriesElement::one(base.clone());
        Self::new(base, m, [(e, one)], Value::zero())
    }

    pub fn base(&self) -> &Arc<RadiusProfile> {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn floor(&self) -> &Value {
        &self.floor
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Rat>, SeriesElement> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, e: Vec<Rat>, c: &SeriesElement) -> Result<()> {
        let slot = match self.terms.remove(&e) {
            Some(prev) => prev.add(c)?,
            None => c.clone(),
        };
        self.terms.insert(e, slot);
        Ok(())
    }

    /// Raises the floor to cover every coefficient floor and truncates all
    /// coefficients to it.
    fn normalize(&mut self) {
        let mut floor = self.floor.clone();
        for c in self.terms.values() {
            floor = self.base.max(&floor, c.floor()).clone();
        }
        self.floor = floor;
        let floor = self.floor.clone();
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| (e, if floor.is_zero() { c } else { c.truncate(&floor) }))
            .filter(|(_, c)| !c.is_empty())
            .collect();
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if !same_profile(&self.base, &other.base) || self.m != other.m {
            return Err(Error::ProfileMismatch("Tate elements over different algebras".into()));
        }
        Ok(())
    }

    pub fn t_add(&self, other: &TateElement) -> Result<TateElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.floor = self.base.max(&self.floor, &other.floor).clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c)?;
        }
        out.normalize();
        Ok(out)
    }

    pub fn t_neg(&self) -> TateElement {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        TateElement { base: self.base.clone(), m: self.m, terms, floor: self.floor.clone() }
    }

    pub fn t_sub(&self, other: &TateElement) -> Result<TateElement> {
        self.t_add(&other.t_neg())
    }

    /// Upper bound for the norm: the Gauss norm, else the floor.
    fn norm_bound(&self) -> Value {
        self.t_gauss_norm().unwrap_or_else(|| self.floor.clone())
    }

    pub fn t_mul(&self, other: &TateElement) -> Result<TateElement> {
        self.check_same(other)?;
        let floor = if self.floor.is_zero() && other.floor.is_zero() {
            Value::zero()
        } else {
            let a = self.floor.mul(&other.norm_bound())?;
            let b = other.floor.mul(&self.norm_bound())?;
            let c = self.floor.mul(&other.floor)?;
            let ab = self.base.max(&a, &b).clone();
            self.base.max(&ab, &c).clone()
        };
        let cut = if floor.is_zero() { None } else { Some(&floor) };
        let mut out = TateElement { base: self.base.clone(), m: self.m, terms: BTreeMap::new(), floor: floor.clone() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<Rat> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.mul_truncated(c2, cut)?;
                if !c.is_empty() {
                    out.accumulate(e, &c)?;
                }
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Multiplication by a base-field element.
    pub fn t_scale(&self, c: &SeriesElement) -> Result<TateElement> {
        let k = TateElement::constant(self.base.clone(), self.m, c.clone())?;
        k.t_mul(self)
    }

    /// Sup of coefficient norms; `None` when no coefficient is above floor.
    pub fn t_gauss_norm(&self) -> Option<Value> {
        let mut best: Option<Value> = None;
        for c in self.terms.values() {
            if let Some(v) = c.gauss_norm() {
                best = Some(match best {
                    Some(b) => self.base.max(&b, &v).clone(),
                    None => v,
                });
            }
        }
        best
    }

    pub fn t_frobenius(&self) -> TateElement {
        let p = int(self.base.p() as i64);
        let terms = self.terms.iter().map(|(e, c)| (e.iter().map(|x| x * &p).collect(), c.frobenius())).collect();
        TateElement { base: self.base.clone(), m: self.m, terms, floor: self.floor.pow(&p).expect("p > 0") }
    }

    pub fn t_pth_root(&self) -> Result<TateElement> {
        let inv_p = Rat::new(1.into(), (self.base.p() as i64).into());
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let e: Vec<Rat> = e.iter().map(|x| x * &inv_p).collect();
            e.iter().try_for_each(|x| self.base.check_exponent(x))?;
            terms.insert(e, c.pth_root()?);
        }
        Ok(TateElement { base: self.base.clone(), m: self.m, terms, floor: self.floor.pow(&inv_p)? })
    }
}

impl fmt::Display for TateElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let vars: Vec<String> = e.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| format!("T{}^{}", i + 1, fmt_rat(x))).collect();
            let mono = if vars.is_empty() { "1".to_string() } else { vars.join("·") };
            parts.push(format!("({c})·{mono}"));
        }
        let body = if parts.is_empty() { "0".into() } else { parts.join(" + ") };
        if self.floor.is_zero() {
            write!(f, "{body}")
        } else {
            write!(f, "{body} + O({})", self.floor)
        }
    }
}

/// A bounded homomorphism `T_i ↦ images[i]` into one series field.
#[derive(Clone, Debug)]
pub struct HomSpec {
    target: Arc<RadiusProfile>,
    images: Vec<SeriesElement>,
}

impl HomSpec {
    pub fn new(target: Arc<RadiusProfile>, images: Vec<SeriesElement>) -> Result<Self> {
        let one = Value::one(target.n());
        for (i, img) in images.iter().enumerate() {
            if !same_profile(img.profile(), &target) {
                return Err(Error::ProfileMismatch(format!("image {i} lies over another profile")));
            }
            if target.lt(&one, &img.norm_bound()) {
                return Err(Error::NotPowerBounded { index: i });
            }
        }
        Ok(HomSpec { target, images })
    }

    pub fn target(&self) -> &Arc<RadiusProfile> {
        &self.target
    }

    pub fn images(&self) -> &[SeriesElement] {
        &self.images
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    /// Replaces one image, re-checking power-boundedness.
    pub fn set_image(&mut self, i: usize, img: SeriesElement) -> Result<()> {
        let mut images = self.images.clone();
        images[i] = img;
        *self = HomSpec::new(self.target.clone(), images)?;
        Ok(())
    }
}

/// `Σ c_e φ(T)^e` computed to floor `max(η', propagated floors)`.
pub fn evaluate(f: &TateElement, phi: &HomSpec, target_floor: &Value) -> Result<SeriesElement> {
    if f.m() != phi.m() {
        return Err(Error::Invalid(format!("{} variables but {} images", f.m(), phi.m())));
    }
    if phi.target.p() != f.base.p() {
        return Err(Error::ProfileMismatch("characteristic differs".into()));
    }
    let target = phi.target.clone();
    let n = target.n();
    let f_floor = f.floor.embed(n)?;
    let mut floor = target.max(target_floor, &f_floor).clone();
    let mut acc = SeriesElement::zero(target.clone()).truncate(&floor);
    let mut coeffs: Vec<(&Vec<Rat>, &SeriesElement, Value)> = f.terms.iter().filter_map(|(e, c)| c.gauss_norm().map(|v| (e, c, v))).collect();
    coeffs.sort_by(|a, b| target.cmp_norm(&b.2.embed(n).expect("t-power"), &a.2.embed(n).expect("t-power")));
    let mut cache: HashMap<(usize, Rat), SeriesElement> = HashMap::new();
    for (e, c, cn) in coeffs {
        let cn = cn.embed(n)?;
        if !floor.is_zero() && target.lt(&cn, &floor) {
            break;
        }
        // Relative precision needed for the image power: floor / |c|.
        let rel = if floor.is_zero() { None } else { Some(floor.div(&cn)?) };
        let mut power = SeriesElement::one(target.clone());
        for (i, x) in e.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let key = (i, x.clone());
            let factor = match cache.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let v = phi.images[i].pow_rat(x, rel.as_ref())?;
                    cache.insert(key, v.clone());
                    v
                }
            };
            power = power.mul_truncated(&factor, rel.as_ref())?;
        }
        let cut = if floor.is_zero() { None } else { Some(&floor) };
        let term = c.embed(&target)?.mul_truncated(&power, cut)?;
        acc = acc.add(&term)?;
        floor = acc.floor().clone();
    }
    Ok(acc)
}

/// Applies `φ` to a single exact monomial `T^e` (no coefficient).
pub fn image_of_monomial(phi: &HomSpec, e: &[Rat], target_floor: &Value) -> Result<SeriesElement> {
    let base = Arc::new(phi.target.base());
    let one = SeriesElement::one(base.clone());
    let t = TateElement::monomial(base, one, e.to_vec())?;
    evaluate(&t, phi, target_floor)
}

pub(crate) fn t_monomial_coeff(base: &Arc<RadiusProfile>, coeff: i64, t_exp: Rat) -> Result<SeriesElement> {
    SeriesElement::monomial(base.clone(), coeff, Monomial::t_power(t_exp, 0))
}
