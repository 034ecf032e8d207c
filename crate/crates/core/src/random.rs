//! Seeded random elements for property suites, acceptance runs and the CLI.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exponent::{pow_p, Rat};
use crate::series::{Monomial, SeriesElement};
use crate::valuegroup::{RadiusProfile, Value};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `N / p^k` in `[lo, hi)` with `k ≤ max_k` drawn uniformly.
pub fn grid_rational(rng: &mut SeededRng, p: u32, max_k: u32, lo: f64, hi: f64) -> Rat {
    let k = rng.gen_range(0..=max_k);
    let den = pow_p(p, k);
    let scale = (p as f64).powi(k as i32);
    let a = (lo * scale).ceil() as i64;
    let b = ((hi * scale).ceil() as i64 - 1).max(a);
    Rat::new(BigInt::from(rng.gen_range(a..=b)), den)
}

/// Shape of a random element: term count, ranges for the `t`-exponent and for
/// every `x`-exponent, and the largest denominator exponent.
#[derive(Clone, Debug)]
pub struct SeriesShape {
    pub min_terms: usize,
    pub max_terms: usize,
    pub t_range: (f64, f64),
    pub x_range: (f64, f64),
    pub max_denom_log: u32,
}

impl Default for SeriesShape {
    fn default() -> Self {
        SeriesShape { min_terms: 1, max_terms: 6, t_range: (-2.0, 8.0), x_range: (-3.0, 3.0), max_denom_log: 3 }
    }
}

fn coefficient(rng: &mut SeededRng, p: u32) -> i64 {
    rng.gen_range(1..p as i64)
}

/// A random element with at least one term above `floor`.
pub fn random_series(rng: &mut SeededRng, profile: &Arc<RadiusProfile>, shape: &SeriesShape, floor: &Value) -> Result<SeriesElement> {
    let p = profile.p();
    for _ in 0..1000 {
        let count = rng.gen_range(shape.min_terms..=shape.max_terms);
        let mut terms = Vec::with_capacity(count);
        for _ in 0..count {
            let t = grid_rational(rng, p, shape.max_denom_log, shape.t_range.0, shape.t_range.1);
            let x = (0..profile.n()).map(|_| grid_rational(rng, p, shape.max_denom_log, shape.x_range.0, shape.x_range.1)).collect();
            terms.push((Monomial::new(t, x), coefficient(rng, p)));
        }
        let f = SeriesElement::new(profile.clone(), terms, floor.clone())?;
        if f.gauss_norm().is_some() {
            return Ok(f);
        }
    }
    Err(Error::Invalid("could not draw a nonzero element above the floor".into()))
}

/// A random element whose terms have x-exponents from `exponents` and norms
/// `|t^a x^q|` with weight in `[lo, hi)`, truncated at `floor`.
pub fn random_in_window(
    rng: &mut SeededRng,
    profile: &Arc<RadiusProfile>,
    exponents: &[Vec<Rat>],
    terms: usize,
    (lo, hi): (&Rat, &Rat),
    max_denom_log: u32,
    floor: &Value,
) -> Result<SeriesElement> {
    if exponents.is_empty() {
        return Err(Error::Invalid("no exponents to draw from".into()));
    }
    let n = profile.n();
    let p = profile.p();
    let lo_v = Value::t_power(lo.clone(), n);
    let hi_v = Value::t_power(hi.clone(), n);
    let (lo_f, hi_f) = (crate::exponent::rat_to_f64(lo), crate::exponent::rat_to_f64(hi));
    let mut out = Vec::with_capacity(terms);
    let mut attempts = 0;
    while out.len() < terms {
        attempts += 1;
        if attempts > 1000 * terms.max(1) {
            return Err(Error::WindowEmpty("no monomial found in the weight window".into()));
        }
        let q = exponents[rng.gen_range(0..exponents.len())].clone();
        let xw = profile.weight_f64(&Value::new(Rat::from_integer(0.into()), q.clone()));
        let a = grid_rational(rng, p, max_denom_log, lo_f - xw, hi_f - xw);
        let m = Monomial::new(a, q);
        let v = m.norm();
        // Weight in [lo, hi) means |t^hi| < |m| ≤ |t^lo|.
        if profile.le(&v, &lo_v) && profile.lt(&hi_v, &v) {
            out.push((m, coefficient(rng, p)));
        }
    }
    SeriesElement::new(profile.clone(), out, floor.clone())
}
