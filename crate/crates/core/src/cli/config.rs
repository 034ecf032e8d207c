//! Batch configuration: a JSON file, overridden by command-line flags.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{int, parse_rat, Rat};
use crate::gleason::{Region, WellOrder};
use crate::json::{self, ProfileDto, SeriesDto};
use crate::valuegroup::{RadiusProfile, Value};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub p: Option<u32>,
    /// Number of free radii when no explicit profile is given.
    pub n: Option<usize>,
    pub profile: Option<ProfileDto>,
    /// `σ_s` with `s = |t|^{σ_s}`.
    pub sigma: Option<String>,
    pub c_exp: Option<String>,
    pub theta: Option<String>,
    /// Gleason schedule depth.
    pub depth: Option<usize>,
    /// Division steps `M`.
    pub steps: Option<usize>,
    pub tail_gap: Option<u32>,
    /// Weight of the truncation floor of sampled elements.
    pub floor: Option<String>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub terms: Option<usize>,
    /// Sampled x-exponents are `ω(1), …, ω(exponent_pool)`.
    pub exponent_pool: Option<usize>,
    /// Sampled term weights lie in `[lo, hi)`.
    pub weight_range: Option<[String; 2]>,
    /// A fixed target used for every trial instead of random ones.
    pub beta: Option<SeriesDto>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved, validated settings.
#[derive(Clone, Debug)]
pub struct Settings {
    pub profile: Arc<RadiusProfile>,
    pub c_exp: Option<Rat>,
    pub theta: Rat,
    pub depth: usize,
    pub steps: usize,
    pub tail_gap: u32,
    /// Tail gap for standalone schedule builds: only an explicit setting.
    pub schedule_tail_gap: u32,
    /// Depth set by flag or file, if any.
    pub explicit_depth: Option<usize>,
    pub floor: Value,
    pub seed: u64,
    pub trials: usize,
    pub terms: usize,
    pub exponent_pool: usize,
    pub weight_range: (Rat, Rat),
    pub beta: Option<SeriesDto>,
}

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub p: Option<u32>,
    pub n: Option<usize>,
    pub depth: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

impl Settings {
    pub fn resolve(cfg: &Config, ov: &Overrides) -> Result<Self> {
        let mut profile = match &cfg.profile {
            Some(p) => p.to_profile()?,
            None => RadiusProfile::free(ov.p.or(cfg.p).unwrap_or(2), ov.n.or(cfg.n).unwrap_or(1))?,
        };
        if let Some(s) = &cfg.sigma {
            profile = profile.with_sigma(parse_rat(s)?)?;
        }
        let n = profile.n();
        let sigma = profile.s_exponent().clone();
        let default_depth = WellOrder::new(profile.p(), n.max(1), Region::All).count_upto(if n <= 1 { 3 } else { 1 }) as usize;
        let depth = ov.depth.or(cfg.depth).unwrap_or(default_depth);
        let steps = cfg.steps.unwrap_or(8);
        let floor_w = match &cfg.floor {
            Some(f) => parse_rat(f)?,
            None => &sigma + int(steps as i64),
        };
        let weight_range = match &cfg.weight_range {
            Some([lo, hi]) => (parse_rat(lo)?, parse_rat(hi)?),
            None => (sigma.clone(), &sigma + int(steps as i64)),
        };
        if weight_range.0 >= weight_range.1 {
            return Err(Error::Invalid("weight_range must be a nonempty interval".into()));
        }
        let theta = match &cfg.theta {
            Some(t) => parse_rat(t)?,
            None => Rat::new(1.into(), 2.into()),
        };
        let settings = Settings {
            c_exp: cfg.c_exp.as_deref().map(parse_rat).transpose()?,
            theta,
            depth,
            steps,
            tail_gap: cfg.tail_gap.unwrap_or(steps as u32),
            schedule_tail_gap: cfg.tail_gap.unwrap_or(0),
            explicit_depth: ov.depth.or(cfg.depth),
            floor: Value::t_power(floor_w, n),
            seed: ov.seed.or(cfg.seed).unwrap_or(0),
            trials: ov.trials.or(cfg.trials).unwrap_or(50),
            terms: cfg.terms.unwrap_or(6),
            exponent_pool: cfg.exponent_pool.unwrap_or(depth),
            weight_range,
            beta: cfg.beta.clone(),
            profile: Arc::new(profile),
        };
        if settings.depth == 0 || settings.terms == 0 || settings.exponent_pool == 0 {
            return Err(Error::Invalid("depth, terms and exponent_pool must be positive".into()));
        }
        Ok(settings)
    }
}
