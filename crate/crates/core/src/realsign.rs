//! Sign of `c0 + Σ c_j √d_j` for distinct squarefree `d_j > 1`.
//!
//! The numbers `1, √d_1, …, √d_k` are linearly independent over ℚ, so the
//! form vanishes only when every coefficient does. Otherwise the sign is found
//! by refining dyadic enclosures of each square root until zero is excluded.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exponent::Rat;

const FAST_GUARD: f64 = 1e-9;

pub fn sign_of_form(c0: &Rat, radicals: &[(Rat, u64)]) -> Ordering {
    let live: Vec<&(Rat, u64)> = radicals.iter().filter(|(c, _)| !c.is_zero()).collect();
    if live.is_empty() {
        return c0.cmp(&Rat::zero());
    }
    if let Some(s) = fast_sign(c0, &live) {
        return s;
    }
    exact_sign(c0, &live)
}

fn fast_sign(c0: &Rat, live: &[&(Rat, u64)]) -> Option<Ordering> {
    let mut sum = c0.to_f64()?;
    let mut mag = sum.abs();
    for (c, d) in live {
        let term = c.to_f64()? * (*d as f64).sqrt();
        sum += term;
        mag += term.abs();
    }
    if !sum.is_finite() || !mag.is_finite() || mag < 1e-200 {
        return None;
    }
    if sum.abs() > mag * FAST_GUARD {
        Some(sum.partial_cmp(&0.0)?)
    } else {
        None
    }
}

fn exact_sign(c0: &Rat, live: &[&(Rat, u64)]) -> Ordering {
    let mut bits: u32 = 64;
    loop {
        let scale = BigInt::one() << bits;
        let mut lo = c0.clone();
        let mut hi = c0.clone();
        for (c, d) in live {
            let scaled = BigUint::from(*d) << (2 * bits);
            let root = BigInt::from(scaled.sqrt());
            let below = Rat::new(root.clone(), scale.clone());
            let above = Rat::new(root + 1, scale.clone());
            if c.is_positive() {
                lo += c * &below;
                hi += c * &above;
            } else {
                lo += c * &above;
                hi += c * &below;
            }
        }
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits = bits.saturating_mul(2);
    }
}

/// Floating approximation of `c0 + Σ c_j √d_j`, for display only.
pub fn approx_form(c0: &Rat, radicals: &[(Rat, u64)]) -> f64 {
    let mut s = c0.to_f64().unwrap_or(f64::NAN);
    for (c, d) in radicals {
        s += c.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt();
    }
    s
}
