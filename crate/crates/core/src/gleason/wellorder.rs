//! An order of type ω on `ℤ[1/p]^d` (or its nonnegative / nonpositive orthant).
//!
//! Write `q = N / p^k` with `k` minimal and `N ∈ ℤ^d`. The height of `q` is
//! `max(k, max_i |N_i|)`; each height class is finite. Elements are ordered by
//! height, then by `(k, max_i |N_i|, N)` lexicographically. Indices are 1-based.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exponent::{denom_log, max_abs, pow_p, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    All,
    NonNegative,
    NonPositive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellOrder {
    p: u32,
    dim: usize,
    region: Region,
}

impl WellOrder {
    pub fn new(p: u32, dim: usize, region: Region) -> Self {
        WellOrder { p, dim, region }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn region(&self) -> Region {
        self.region
    }

    fn box_count(&self, h: u64) -> u128 {
        let side = match self.region {
            Region::All => 2 * h as u128 + 1,
            _ => h as u128 + 1,
        };
        side.pow(self.dim as u32)
    }

    /// Number of elements of height `≤ h`.
    pub fn count_upto(&self, h: u64) -> u128 {
        let all = self.box_count(h);
        let divisible = self.box_count(h / self.p as u64);
        all + h as u128 * (all - divisible)
    }

    fn count_below(&self, h: u64) -> u128 {
        if h == 0 {
            0
        } else {
            self.count_upto(h - 1)
        }
    }

    fn contains(&self, q: &[Rat]) -> bool {
        q.len() == self.dim
            && match self.region {
                Region::All => true,
                Region::NonNegative => q.iter().all(|x| !x.is_negative()),
                Region::NonPositive => q.iter().all(|x| !x.is_positive()),
            }
    }

    /// `(k, N)` with `q = N / p^k`, `k` minimal.
    fn canonical(&self, q: &[Rat]) -> Option<(u64, Vec<BigInt>)> {
        let mut k = 0u32;
        for x in q {
            k = k.max(denom_log(x, self.p)?);
        }
        let scale = Rat::from_integer(pow_p(self.p, k));
        let n = q.iter().map(|x| (x * &scale).to_integer()).collect();
        Some((k as u64, n))
    }

    pub fn height(&self, q: &[Rat]) -> Option<u64> {
        let (k, _) = self.canonical(q)?;
        let m = max_abs(q);
        let scaled = (m * Rat::from_integer(pow_p(self.p, k as u32))).to_integer();
        Some(k.max(scaled.to_u64()?))
    }

    /// All elements of height exactly `h`, in order.
    pub fn level(&self, h: u64) -> Vec<Vec<Rat>> {
        let hi = h as i64;
        let (lo, up) = match self.region {
            Region::All => (-hi, hi),
            Region::NonNegative => (0, hi),
            Region::NonPositive => (-hi, 0),
        };
        let p = self.p as i64;
        let mut out: Vec<(u64, i64, Vec<i64>)> = Vec::new();
        for k in 0..=h {
            let mut n = vec![lo; self.dim];
            loop {
                let m = n.iter().map(|x| x.abs()).max().unwrap_or(0);
                let minimal = k == 0 || n.iter().any(|x| x % p != 0);
                if minimal && (k.max(m as u64) == h) {
                    out.push((k, m, n.clone()));
                }
                // Odometer over the box.
                let mut i = self.dim;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if n[i] < up {
                        n[i] += 1;
                        break;
                    }
                    n[i] = lo;
                    if i == 0 {
                        i = usize::MAX;
                        break;
                    }
                }
                if i == usize::MAX || self.dim == 0 {
                    break;
                }
            }
        }
        out.sort();
        out.into_iter()
            .map(|(k, _, n)| {
                let den = pow_p(self.p, k as u32);
                n.into_iter().map(|x| Rat::new(BigInt::from(x), den.clone())).collect()
            })
            .collect()
    }

    /// 1-based position of `q`.
    pub fn index(&self, q: &[Rat]) -> Result<usize> {
        if !self.contains(q) {
            return Err(Error::Invalid(format!("exponent outside the enumerated set ({:?})", self.region)));
        }
        let h = self.height(q).ok_or_else(|| Error::Invalid("exponent is not in ℤ[1/p]".into()))?;
        let pos = self.level(h).iter().position(|x| x.as_slice() == q).expect("level contains every element of its height");
        Ok((self.count_below(h) + pos as u128 + 1) as usize)
    }

    /// The element at 1-based position `m`.
    pub fn nth(&self, m: usize) -> Vec<Rat> {
        assert!(m >= 1, "well-order positions start at 1");
        let m = m as u128;
        let mut h = 0u64;
        while self.count_upto(h) < m {
            h += 1;
        }
        let offset = (m - self.count_below(h) - 1) as usize;
        self.level(h).swap_remove(offset)
    }

    /// The first `count` elements.
    pub fn prefix(&self, count: usize) -> Vec<Vec<Rat>> {
        let mut out = Vec::with_capacity(count);
        let mut h = 0;
        while out.len() < count {
            for q in self.level(h) {
                if out.len() == count {
                    break;
                }
                out.push(q);
            }
            h += 1;
        }
        out
    }
}
