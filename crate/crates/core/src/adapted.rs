//! `(q,s)`-adapted elements.
//!
//! `β` is `(q,s)`-adapted when `s < |β| ≤ 1`, its leading x-exponent is
//! uniquely `q`, and `|β − b_q x^q| ≤ s|ϖ|` where `b_q ∈ K` is the full
//! coefficient of `x^q`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exponent::Rat;
use crate::series::SeriesElement;
use crate::valuegroup::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedChecks {
    pub norm_window: bool,
    pub argnorm: bool,
    pub tail: bool,
}

impl AdaptedChecks {
    pub fn passed(&self) -> bool {
        self.norm_window && self.argnorm && self.tail
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedCertificate {
    pub q: Vec<Rat>,
    pub s: Value,
    /// The coefficient of `x^q`, an element of `K`.
    pub b_q: SeriesElement,
    /// `None` when the tail has no terms above the floor.
    pub tail_norm: Option<Value>,
    pub norm: Option<Value>,
    pub checks: AdaptedChecks,
}

impl AdaptedCertificate {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

pub fn is_adapted(beta: &SeriesElement, q: &[Rat]) -> Result<AdaptedCertificate> {
    let profile = beta.profile();
    if q.len() != profile.n() {
        return Err(Error::ProfileMismatch("exponent vector length".into()));
    }
    let s = profile.s();
    let s_varpi = profile.s_times_varpi_pow(1);
    if profile.lt(&s_varpi, beta.floor()) {
        return Err(Error::FloorTooCoarse(format!("floor {} exceeds s|ϖ| = {}", beta.floor(), s_varpi)));
    }
    let norm = beta.gauss_norm();
    let norm_window = match &norm {
        Some(v) => profile.lt(&s, v) && profile.le(v, &Value::one(profile.n())),
        None => false,
    };
    let argnorm = matches!(beta.argnorm(), Ok(ref x) if x.as_slice() == q);
    let base = Arc::new(profile.base());
    let b_q = beta.column(q, &base)?;
    let tail_terms = beta.terms().iter().filter(|(m, _)| m.x != q).map(|(m, c)| (m.clone(), *c as i64));
    let tail = SeriesElement::new(profile.clone(), tail_terms, beta.floor().clone())?;
    let tail_norm = tail.gauss_norm();
    let tail_ok = match &tail_norm {
        Some(v) => profile.le(v, &s_varpi),
        None => true,
    };
    Ok(AdaptedCertificate { q: q.to_vec(), s, b_q, tail_norm, norm, checks: AdaptedChecks { norm_window, argnorm, tail: tail_ok } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::int;
    use crate::series::Monomial;
    use crate::valuegroup::RadiusProfile;

    fn profile_sigma2() -> Arc<RadiusProfile> {
        Arc::new(RadiusProfile::free(2, 1).unwrap().with_sigma(int(2)).unwrap())
    }

    fn el(p: &Arc<RadiusProfile>, terms: &[(i64, i64)]) -> SeriesElement {
        SeriesElement::new(p.clone(), terms.iter().map(|(t, x)| (Monomial::new(int(*t), vec![int(*x)]), 1)), Value::zero()).unwrap()
    }

    #[test]
    fn single_monomial_passes() {
        let p = profile_sigma2();
        let c = is_adapted(&el(&p, &[(0, 1)]), &[int(1)]).unwrap();
        assert!(c.passed());
        assert!(c.tail_norm.is_none());
        assert_eq!(c.b_q.len(), 1);
    }

    #[test]
    fn small_tail_passes() {
        let p = profile_sigma2();
        let c = is_adapted(&el(&p, &[(0, 1), (4, 2)]), &[int(1)]).unwrap();
        assert!(c.passed());
    }

    #[test]
    fn large_tail_fails_condition_three() {
        let p = profile_sigma2();
        let c = is_adapted(&el(&p, &[(0, 1), (0, 2)]), &[int(1)]).unwrap();
        assert!(c.checks.norm_window && c.checks.argnorm);
        assert!(!c.checks.tail);
    }

    #[test]
    fn coarse_floor_is_an_error() {
        let p = profile_sigma2();
        let f = SeriesElement::new(p.clone(), [(Monomial::new(int(0), vec![int(1)]), 1)], Value::t_power(int(2), 1)).unwrap();
        assert!(matches!(is_adapted(&f, &[int(1)]), Err(Error::FloorTooCoarse(_))));
    }
}
