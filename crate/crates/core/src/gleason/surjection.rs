//! The surjection `K⟨T_1,…,T_{n+2}⟩^perfd → K_r^perfd` given by
//! `T_i ↦ x_i`, `T_{n+1} ↦ c x_1^{-1}⋯x_n^{-1}`, `T_{n+2} ↦ G`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::adapted::is_adapted;
use crate::error::{Error, Result};
use crate::exponent::{int, Rat};
use crate::series::{Monomial, SeriesElement};
use crate::tatealg::{evaluate, HomSpec};
use crate::valuegroup::{RadiusProfile, Value};

use super::division::{AdaptedOracle, AdaptedPreimage};
use super::schedule::{fmt_vec, pick_t_exponent, Basis, GleasonBuild, GleasonSchedule, ScheduleOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectionOptions {
    /// Number of schedule steps; the oracle reaches `q` with `index(q) ≤ depth`.
    pub depth: usize,
    /// Adapted elements carry tails `≤ s|ϖ|^{1+gap}`; division keeps its
    /// residual bound for `gap + 1` steps.
    pub tail_gap: u32,
    pub theta: Rat,
    /// `c = t^{c_exp}`; chosen inside the window when absent.
    pub c_exp: Option<Rat>,
}

impl Default for SurjectionOptions {
    fn default() -> Self {
        SurjectionOptions { depth: 10, tail_gap: 8, theta: Rat::new(1.into(), 2.into()), c_exp: None }
    }
}

#[derive(Clone, Debug)]
pub struct SurjectionSpec {
    profile: Arc<RadiusProfile>,
    c_exp: Rat,
    build: GleasonBuild,
    hom: HomSpec,
    cache: HashMap<Vec<Rat>, Arc<AdaptedPreimage>>,
}

/// Margin of `p`-power denominators kept above the deepest `b_m`.
const CAP_MARGIN: u32 = 24;

/// Builds the standard surjection. The returned spec works over a copy of
/// `profile` whose denominator cap covers the schedule; elements passed to it
/// must be built over [`SurjectionSpec::profile`].
pub fn standard_surjection(profile: Arc<RadiusProfile>, options: &SurjectionOptions) -> Result<SurjectionSpec> {
    let n = profile.n();
    if n == 0 || !profile.is_all_free() {
        return Err(Error::InvalidProfile("the standard surjection needs a free profile with at least one radius".into()));
    }
    let inv = Value::new(Rat::from_integer(0.into()), vec![int(-1); n]);
    let s = profile.s();
    let one = Value::one(n);
    let c_exp = match &options.c_exp {
        Some(c) => c.clone(),
        None => pick_t_exponent(&profile, &s, &one, &inv, &options.theta)?,
    };
    let v = Monomial::new(c_exp.clone(), vec![int(-1); n]).norm();
    if !(profile.lt(&s, &v) && profile.lt(&v, &one)) {
        return Err(Error::NormWindow(format!("|c x^-1| = {v} is not strictly between s and 1")));
    }
    let sched_opts = ScheduleOptions { theta: options.theta.clone(), tail_gap: options.tail_gap, ..ScheduleOptions::default() };
    let mut profile = profile;
    loop {
        let mut schedule = GleasonSchedule::new(profile.clone(), Basis::Lattice { c_exp: c_exp.clone() }, sched_opts.clone())?;
        schedule.extend_to(options.depth)?;
        let needed = schedule.steps().last().map(|st| st.b).unwrap_or(0) + CAP_MARGIN;
        if needed > profile.max_denom_log() {
            profile = Arc::new(profile.with_max_denom_log(needed));
            continue;
        }
        let hom = schedule.hom_spec()?;
        let build = GleasonBuild::from_schedule(schedule, true)?;
        return Ok(SurjectionSpec { profile, c_exp, build, hom, cache: HashMap::new() });
    }
}

impl SurjectionSpec {
    pub fn profile(&self) -> &Arc<RadiusProfile> {
        &self.profile
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    /// `n + 2` variables.
    pub fn n_vars(&self) -> usize {
        self.n() + 2
    }

    pub fn c_exp(&self) -> &Rat {
        &self.c_exp
    }

    pub fn depth(&self) -> usize {
        self.build.schedule.depth()
    }

    pub fn schedule(&self) -> &GleasonSchedule {
        &self.build.schedule
    }

    pub fn build(&self) -> &GleasonBuild {
        &self.build
    }

    /// `G` truncated to the schedule depth.
    pub fn gleason_element(&self) -> &SeriesElement {
        &self.build.element
    }

    /// Floor at which oracle images are evaluated: `s|ϖ|^{1+gap}`.
    pub fn working_floor(&self) -> Value {
        self.profile.s_times_varpi_pow(1 + self.build.schedule.options().tail_gap as i64)
    }

    /// Schedule index of `q`; errors when the schedule does not reach it.
    pub fn index_of(&self, q: &[Rat]) -> Result<usize> {
        let index = self.build.schedule.index_of(q)?;
        if index > self.depth() {
            return Err(Error::DepthInsufficient { depth: self.depth(), index });
        }
        Ok(index)
    }
}

impl AdaptedOracle for SurjectionSpec {
    fn hom(&self) -> &HomSpec {
        &self.hom
    }

    fn adapted(&mut self, q: &[Rat]) -> Result<Arc<AdaptedPreimage>> {
        if let Some(hit) = self.cache.get(q) {
            return Ok(hit.clone());
        }
        if q.len() != self.n() {
            return Err(Error::ProfileMismatch(format!("exponent {} has the wrong length", fmt_vec(q))));
        }
        let index = self.index_of(q)?;
        let preimage = self.build.schedule.preimage(index)?;
        let image = evaluate(&preimage, &self.hom, &self.working_floor())?;
        let certificate = is_adapted(&image, q)?;
        if !certificate.passed() {
            return Err(Error::Oracle { q: fmt_vec(q), reason: format!("image fails {:?}", certificate.checks) });
        }
        let out = Arc::new(AdaptedPreimage { preimage, image, certificate });
        self.cache.insert(q.to_vec(), out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::rat;
    use crate::gleason::division::reconstruct_preimage;

    fn spec(n: usize, depth: usize) -> SurjectionSpec {
        let prof = Arc::new(RadiusProfile::free(2, n).unwrap());
        standard_surjection(prof, &SurjectionOptions { depth, ..SurjectionOptions::default() }).unwrap()
    }

    #[test]
    fn one_variable_images() {
        let s = spec(1, 6);
        let imgs = s.hom().images();
        assert_eq!(imgs.len(), 3);
        assert_eq!(imgs[0].as_monomial().unwrap().0, &Monomial::new(int(0), vec![int(1)]));
        assert_eq!(imgs[1].as_monomial().unwrap().0, &Monomial::new(s.c_exp().clone(), vec![int(-1)]));
        assert_eq!(&imgs[2], s.gleason_element());
    }

    #[test]
    fn oracle_at_one_and_minus_half() {
        let mut s = spec(1, 12);
        assert!(s.adapted(&[int(1)]).unwrap().certificate.passed());
        let ap = s.adapted(&[rat(-1, 2)]).unwrap();
        assert!(ap.certificate.passed());
        // The preimage uses T_2 = c x^{-1} with a fractional exponent.
        assert!(ap.preimage.terms().keys().any(|e| e[1] > Rat::from_integer(0.into()) && e[1] < int(1)));
    }

    #[test]
    fn depth_is_enforced() {
        let mut s = spec(1, 3);
        assert!(matches!(s.adapted(&[int(5)]), Err(Error::DepthInsufficient { .. })));
    }

    #[test]
    fn variable_round_trip() {
        let mut s = spec(1, 8);
        let beta = SeriesElement::variable(s.profile().clone(), 0).unwrap();
        let r = reconstruct_preimage(&mut s, &beta, 4).unwrap();
        let back = evaluate(&r.preimage, s.hom(), &Value::zero()).unwrap();
        let diff = back.sub(&beta).unwrap();
        let target = s.profile().s_times_varpi_pow(4 - r.rescale);
        assert!(s.profile().le(&diff.norm_bound(), &target), "{diff}");
    }
}
