//! Division by adapted elements and the successive-approximation preimage.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::adapted::{is_adapted, AdaptedCertificate};
use crate::error::{Error, Result};
use crate::exponent::{int, Rat};
use crate::series::{fp_inv, same_profile, Monomial, SeriesElement};
use crate::tatealg::{t_monomial_coeff, HomSpec, TateElement};
use crate::valuegroup::{RadiusProfile, Value};

use super::schedule::Basis;

/// A Tate element `f_q` whose image `φ(f_q)` is `(q,s)`-adapted.
#[derive(Clone, Debug)]
pub struct AdaptedPreimage {
    pub preimage: TateElement,
    pub image: SeriesElement,
    pub certificate: AdaptedCertificate,
}

/// Supplies adapted elements in the image of a fixed homomorphism.
pub trait AdaptedOracle {
    fn hom(&self) -> &HomSpec;
    fn adapted(&mut self, q: &[Rat]) -> Result<Arc<AdaptedPreimage>>;
}

#[derive(Clone, Debug)]
pub struct DivisionStep {
    pub f: TateElement,
    pub residual: SeriesElement,
    /// `|ϖ|^{m+1}s`, or the floor of `β` when that is coarser.
    pub cut: Value,
}

/// Matches the terms of `β` of norm `≥ |ϖ|^{m+1}s` by `K`-multiples of
/// adapted elements. Requires `|β| ≤ |ϖ|^m s`.
pub fn divide_step<O: AdaptedOracle + ?Sized>(oracle: &mut O, beta: &SeriesElement, m: usize) -> Result<DivisionStep> {
    let profile = oracle.hom().target().clone();
    if !same_profile(beta.profile(), &profile) {
        return Err(Error::ProfileMismatch("β lies over another profile than the homomorphism".into()));
    }
    let base = Arc::new(profile.base());
    let vars = oracle.hom().m();
    let upper = profile.s_times_varpi_pow(m as i64);
    if let Some(norm) = beta.gauss_norm() {
        if profile.lt(&upper, &norm) {
            return Err(Error::NormWindow(format!("|β| = {norm} exceeds |ϖ|^{m}s = {upper}")));
        }
    }
    let cut = profile.max(&profile.s_times_varpi_pow(m as i64 + 1), beta.floor()).clone();
    let head = beta.res_ge(&cut)?;
    let mut columns: BTreeMap<Vec<Rat>, Vec<(Rat, u32)>> = BTreeMap::new();
    for (mono, c) in head.terms() {
        columns.entry(mono.x.clone()).or_default().push((mono.t.clone(), *c));
    }
    let mut f = TateElement::zero(base.clone(), vars);
    let mut image = SeriesElement::zero(profile.clone());
    let bound = Value::t_power(int(m as i64), 0);
    for (q, col) in columns {
        let ap = oracle.adapted(&q)?;
        if !ap.certificate.passed() {
            return Err(Error::Oracle { q: super::schedule::fmt_vec(&q), reason: format!("certificate checks {:?}", ap.certificate.checks) });
        }
        let b = SeriesElement::new(base.clone(), col.into_iter().map(|(t, c)| (Monomial::t_power(t, 0), c as i64)), Value::zero())?;
        let c = &ap.certificate.b_q;
        let d = if c.len() == 1 {
            let (lead, coeff) = c.leading_term()?;
            b.scale_monomial(fp_inv(coeff, profile.p()), &lead.inv())?
        } else {
            b.mul(&c.invert(&Value::t_power(int(1), 0))?)?
        };
        if let Some(dn) = d.gauss_norm() {
            if !base.lt(&dn, &bound) {
                return Err(Error::NormWindow(format!("quotient {d} is not < |ϖ|^{m}")));
            }
        }
        f = f.t_add(&ap.preimage.t_scale(&d)?)?;
        image = image.add(&d.embed(&profile)?.mul(&ap.image)?)?;
    }
    let residual = beta.sub(&image)?;
    Ok(DivisionStep { f, residual, cut })
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// `f_M` with `|φ(f_M) − β| ≤ max(|ϖ|^M s, floor)` after undoing the rescaling.
    pub preimage: TateElement,
    /// `β` was replaced by `t^k β` with `|t^k β| ≤ s`.
    pub rescale: i64,
    /// Entry `m` bounds `|β_m|` in rescaled coordinates, `m = 0, …, M`.
    pub residual_bounds: Vec<Value>,
    /// `β_M` in rescaled coordinates.
    pub residual: SeriesElement,
}

/// Iterates [`divide_step`] `depth` times on `t^k β`.
pub fn reconstruct_preimage<O: AdaptedOracle + ?Sized>(oracle: &mut O, beta: &SeriesElement, depth: usize) -> Result<Reconstruction> {
    let profile = oracle.hom().target().clone();
    let base = Arc::new(profile.base());
    let k = rescale_exponent(&profile, beta);
    let mut current = beta.scale_t(&int(k))?;
    let floor0 = current.floor().clone();
    let mut bounds = vec![current.norm_bound()];
    let mut f = TateElement::zero(base.clone(), oracle.hom().m());
    for m in 0..depth {
        let step = divide_step(oracle, &current, m)?;
        f = f.t_add(&step.f)?;
        current = step.residual;
        let bound = current.norm_bound();
        let allowed = profile.s_times_varpi_pow(m as i64 + 1);
        if profile.lt(profile.max(&allowed, &floor0), &bound) {
            return Err(Error::FloorExhausted { step: m });
        }
        bounds.push(bound);
    }
    let preimage = f.t_scale(&t_monomial_coeff(&base, 1, int(-k))?)?;
    Ok(Reconstruction { preimage, rescale: k, residual_bounds: bounds, residual: current })
}

/// The least `k ≥ 0` with `|t^k β| ≤ s`.
pub fn rescale_exponent(profile: &RadiusProfile, beta: &SeriesElement) -> i64 {
    let Some(norm) = beta.gauss_norm() else { return 0 };
    let s = profile.s();
    let w = profile.weight_f64(&norm);
    let mut k = (crate::exponent::rat_to_f64(profile.s_exponent()) - w).ceil().max(0.0) as i64;
    while k > 0 && profile.le(&norm.mul(&Value::t_power(int(k - 1), profile.n())).expect("nonzero"), &s) {
        k -= 1;
    }
    while !profile.le(&norm.mul(&Value::t_power(int(k), profile.n())).expect("nonzero"), &s) {
        k += 1;
    }
    k
}

/// Exact oracle for `T_k ↦ V_k` with independent monomials `V_k`: the
/// adapted element at `q` is `Π V_k^{h_k}` itself, valid when `s < |Π V^h| ≤ 1`.
#[derive(Clone, Debug)]
pub struct MonomialOracle {
    hom: HomSpec,
    basis: Basis,
    cache: BTreeMap<Vec<Rat>, Arc<AdaptedPreimage>>,
}

impl MonomialOracle {
    pub fn new(profile: Arc<RadiusProfile>, generators: Vec<Monomial>) -> Result<Self> {
        let images = generators.iter().map(|g| SeriesElement::monomial(profile.clone(), 1, g.clone())).collect::<Result<Vec<_>>>()?;
        let hom = HomSpec::new(profile, images)?;
        Ok(MonomialOracle { hom, basis: Basis::Cone { generators }, cache: BTreeMap::new() })
    }
}

impl AdaptedOracle for MonomialOracle {
    fn hom(&self) -> &HomSpec {
        &self.hom
    }

    fn adapted(&mut self, q: &[Rat]) -> Result<Arc<AdaptedPreimage>> {
        if let Some(hit) = self.cache.get(q) {
            return Ok(hit.clone());
        }
        let oracle_err = |reason: String| Error::Oracle { q: super::schedule::fmt_vec(q), reason };
        let h = self.basis.representation(q).map_err(|e| oracle_err(e.to_string()))?;
        let profile = self.hom.target().clone();
        let base = Arc::new(profile.base());
        let n = profile.n();
        let mut w = Monomial::one(n);
        for (hk, g) in h.iter().zip(self.basis.generators(n)) {
            if !hk.is_zero() {
                w = w.mul(&g.scale(hk));
            }
        }
        let image = SeriesElement::monomial(profile, 1, w)?;
        let certificate = is_adapted(&image, q)?;
        if !certificate.passed() {
            return Err(oracle_err(format!("|Π V^h| = {} is outside (s, 1]", image.norm_bound())));
        }
        let preimage = TateElement::monomial(base.clone(), SeriesElement::one(base), h)?;
        let out = Arc::new(AdaptedPreimage { preimage, image, certificate });
        self.cache.insert(q.to_vec(), out.clone());
        Ok(out)
    }
}
