//! Points of the closed disk over `K`: disks `B(a, r)` and finite prefixes of
//! nested disk sequences.
//!
//! The disk seminorm of a polynomial is `max_j |c_j| r^j` once the polynomial
//! is recentred at `a`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::series::{fp_inv, fp_mul, same_profile, SeriesElement};
use crate::valuegroup::{RadiusProfile, Value};

/// A polynomial in one variable `T` with coefficients in `K`, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct KPolynomial {
    base: Arc<RadiusProfile>,
    coeffs: Vec<SeriesElement>,
}

impl KPolynomial {
    pub fn new(base: Arc<RadiusProfile>, coeffs: Vec<SeriesElement>) -> Result<Self> {
        if base.n() != 0 {
            return Err(Error::ProfileMismatch("polynomial coefficients must lie in K".into()));
        }
        if coeffs.iter().any(|c| !same_profile(c.profile(), &base)) {
            return Err(Error::ProfileMismatch("coefficient profile".into()));
        }
        let mut out = KPolynomial { base, coeffs };
        out.trim();
        Ok(out)
    }

    /// `T − a`.
    pub fn linear(a: &SeriesElement) -> Result<Self> {
        let base = a.profile().clone();
        Self::new(base.clone(), vec![a.neg(), SeriesElement::one(base)])
    }

    pub fn coeffs(&self) -> &[SeriesElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn mul(&self, other: &KPolynomial) -> Result<KPolynomial> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(self.base.clone(), Vec::new());
        }
        let mut out = vec![SeriesElement::zero(self.base.clone()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Self::new(self.base.clone(), out)
    }

    /// Coefficients of `f(T + a)`.
    pub fn recenter(&self, a: &SeriesElement) -> Result<Vec<SeriesElement>> {
        let p = self.base.p();
        let d = self.coeffs.len();
        let mut powers = vec![SeriesElement::one(self.base.clone())];
        for k in 1..d {
            powers.push(powers[k - 1].mul(a)?);
        }
        let mut out = Vec::with_capacity(d);
        for j in 0..d {
            let mut acc = SeriesElement::zero(self.base.clone());
            for i in j..d {
                let b = binom_mod_p(i as u64, j as u64, p);
                if b == 0 {
                    continue;
                }
                let term = self.coeffs[i].mul(&powers[i - j])?;
                let term = if b == 1 { term } else { scale_fp(&term, b)? };
                acc = acc.add(&term)?;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

fn scale_fp(f: &SeriesElement, c: u32) -> Result<SeriesElement> {
    f.scale_monomial(c, &crate::series::Monomial::one(f.n()))
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut result = 1u32;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p64, k % p64);
        if kd > nd {
            return 0;
        }
        result = fp_mul(result, small_binom(nd as u32, kd as u32, p), p);
        n /= p64;
        k /= p64;
    }
    result
}

fn small_binom(n: u32, k: u32, p: u32) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = fp_mul(num, (n - i) % p, p);
        den = fp_mul(den, (i + 1) % p, p);
    }
    fp_mul(num, fp_inv(den, p), p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiskPoint {
    profile: Arc<RadiusProfile>,
    center: SeriesElement,
    radius: Value,
}

impl DiskPoint {
    /// `B(a, r)` over `profile`; `a ∈ K` must be known strictly finer than `r`.
    pub fn new(profile: Arc<RadiusProfile>, center: SeriesElement, radius: Value) -> Result<Self> {
        if center.n() != 0 || center.p() != profile.p() {
            return Err(Error::ProfileMismatch("disk centers lie in K".into()));
        }
        if !radius.is_zero() && radius.q().len() != profile.n() {
            return Err(Error::ProfileMismatch("radius dimension".into()));
        }
        if !radius.is_zero() && !center.is_exact() {
            let floor = center.floor().embed(profile.n())?;
            if !profile.lt(&floor, &radius) {
                return Err(Error::FloorTooCoarse(format!("center floor {} is not below radius {}", center.floor(), radius)));
            }
        }
        Ok(DiskPoint { profile, center, radius })
    }

    /// A disk inside the closed unit ball.
    pub fn in_unit_ball(profile: Arc<RadiusProfile>, center: SeriesElement, radius: Value) -> Result<Self> {
        let one = Value::one(profile.n());
        if profile.lt(&one, &radius) {
            return Err(Error::NormWindow(format!("radius {radius} exceeds 1")));
        }
        if let Some(v) = center.gauss_norm() {
            if profile.lt(&one, &v.embed(profile.n())?) {
                return Err(Error::NormWindow("center outside the unit ball".into()));
            }
        }
        Self::new(profile, center, radius)
    }

    /// The Gauss point `B(0, r)`.
    pub fn gauss(profile: Arc<RadiusProfile>, radius: Value) -> Result<Self> {
        let base = Arc::new(profile.base());
        Self::new(profile, SeriesElement::zero(base), radius)
    }

    pub fn profile(&self) -> &Arc<RadiusProfile> {
        &self.profile
    }

    pub fn center(&self) -> &SeriesElement {
        &self.center
    }

    pub fn radius(&self) -> &Value {
        &self.radius
    }
}

/// `|f|_{B(a,r)}`.
pub fn eval_disk(f: &KPolynomial, pt: &DiskPoint) -> Result<Value> {
    let profile = &pt.profile;
    let n = profile.n();
    let center = pt.center.with_profile(f.base.clone()).map_err(|_| Error::ProfileMismatch("polynomial and point bases differ".into()))?;
    let coeffs = f.recenter(&center)?;
    let mut known: Option<Value> = None;
    let mut unknown: Vec<Value> = Vec::new();
    for (j, c) in coeffs.iter().enumerate() {
        if pt.radius.is_zero() && j > 0 {
            break;
        }
        let rj = if j == 0 { Value::one(n) } else { pt.radius.pow(&crate::exponent::int(j as i64))? };
        match c.gauss_norm() {
            Some(v) => {
                let v = v.embed(n)?.mul(&rj)?;
                known = Some(match known {
                    Some(k) => profile.max(&k, &v).clone(),
                    None => v,
                });
            }
            None if c.is_exact() => {}
            None => unknown.push(c.floor().embed(n)?.mul(&rj)?),
        }
    }
    let result = known.unwrap_or_else(Value::zero);
    if let Some(u) = unknown.iter().find(|u| profile.lt(&result, u)) {
        return Err(Error::FloorTooCoarse(format!("a coefficient is only known below {u}, above the running maximum {result}")));
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NestedPrefix {
    disks: Vec<DiskPoint>,
}

impl NestedPrefix {
    pub fn new(disks: Vec<DiskPoint>) -> Result<Self> {
        for (k, pair) in disks.windows(2).enumerate() {
            let (outer, inner) = (&pair[0], &pair[1]);
            if !same_profile(&outer.profile, &inner.profile) {
                return Err(Error::ProfileMismatch("disks over different profiles".into()));
            }
            if inner.radius.is_zero() || !outer.profile.lt(&inner.radius, &outer.radius) {
                return Err(Error::NestingViolated(format!("radius {} does not decrease strictly at step {}", inner.radius, k + 1)));
            }
            let diff = inner.center.sub(&outer.center)?;
            let dist = diff.norm_bound().embed(outer.profile.n())?;
            if outer.profile.lt(&outer.radius, &dist) {
                return Err(Error::NestingViolated(format!("center {} leaves disk {}", k + 2, k + 1)));
            }
        }
        if disks.first().is_some_and(|d| d.radius.is_zero()) {
            return Err(Error::NestingViolated("prefix disks need positive radii".into()));
        }
        Ok(NestedPrefix { disks })
    }

    pub fn disks(&self) -> &[DiskPoint] {
        &self.disks
    }
}

/// Upper approximation of a type-IV seminorm: the smallest disk value of the prefix.
pub fn eval_prefix(f: &KPolynomial, np: &NestedPrefix) -> Result<Value> {
    let mut last: Option<Value> = None;
    for (k, d) in np.disks.iter().enumerate() {
        let v = eval_disk(f, d)?;
        if let Some(prev) = &last {
            if d.profile.cmp_norm(&v, prev) == Ordering::Greater {
                return Err(Error::NestingViolated(format!("evaluation increases at disk {}", k + 1)));
            }
        }
        last = Some(v);
    }
    last.ok_or_else(|| Error::Invalid("empty prefix".into()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum BerkovichPoint {
    Disk(DiskPoint),
    Prefix(NestedPrefix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointType {
    I,
    II,
    III,
    IvCandidate,
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointType::I => "I",
            PointType::II => "II",
            PointType::III => "III",
            PointType::IvCandidate => "IV-candidate",
        })
    }
}

pub fn classify_disk(pt: &DiskPoint) -> PointType {
    if pt.radius.is_zero() {
        PointType::I
    } else if pt.profile.in_sqrt_k(&pt.radius).expect("nonzero radius") {
        PointType::II
    } else {
        PointType::III
    }
}

pub fn classify(pt: &BerkovichPoint) -> PointType {
    match pt {
        BerkovichPoint::Disk(d) => classify_disk(d),
        BerkovichPoint::Prefix(_) => PointType::IvCandidate,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointInvariants {
    pub value_rank_increment: u32,
    pub residue_trdeg_increment: u32,
    pub semi_immediate: bool,
}

pub fn point_invariants(kind: PointType) -> PointInvariants {
    let (value_rank_increment, residue_trdeg_increment, semi_immediate) = match kind {
        PointType::I => (0, 0, true),
        PointType::II => (0, 1, false),
        PointType::III => (1, 0, false),
        PointType::IvCandidate => (0, 0, true),
    };
    PointInvariants { value_rank_increment, residue_trdeg_increment, semi_immediate }
}

/// Three-valued answer: disk points are never topologically simple; a nested
/// prefix is simple exactly when the full sequence has empty intersection,
/// which no finite prefix decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Simplicity {
    No,
    IvCandidate,
}

pub fn is_topologically_simple(pt: &BerkovichPoint) -> Simplicity {
    match pt {
        BerkovichPoint::Disk(_) => Simplicity::No,
        BerkovichPoint::Prefix(_) => Simplicity::IvCandidate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::{int, rat};
    use crate::series::Monomial;

    fn free() -> Arc<RadiusProfile> {
        Arc::new(RadiusProfile::free(2, 1).unwrap())
    }

    fn k_elem(base: &Arc<RadiusProfile>, ts: &[i64]) -> SeriesElement {
        SeriesElement::new(base.clone(), ts.iter().map(|t| (Monomial::t_power(int(*t), 0), 1)), Value::zero()).unwrap()
    }

    fn poly(base: &Arc<RadiusProfile>, coeffs: Vec<SeriesElement>) -> KPolynomial {
        KPolynomial::new(base.clone(), coeffs).unwrap()
    }

    #[test]
    fn lucas() {
        assert_eq!(binom_mod_p(4, 2, 2), 0);
        assert_eq!(binom_mod_p(5, 1, 2), 1);
        assert_eq!(binom_mod_p(6, 3, 3), 2);
        assert_eq!(binom_mod_p(10, 3, 5), 0);
        assert_eq!(binom_mod_p(7, 3, 5), 35 % 5);
        assert_eq!(binom_mod_p(9, 4, 7), (126 % 7) as u32);
    }

    #[test]
    fn disk_evaluations() {
        let k = Arc::new(RadiusProfile::new(2, vec![], int(3)).unwrap());
        let zero = SeriesElement::zero(k.clone());
        let one = SeriesElement::one(k.clone());
        let t = k_elem(&k, &[1]);
        let r = Value::t_power(int(1), 0);
        let f = poly(&k, vec![zero.clone(), one.clone()]);
        assert_eq!(eval_disk(&f, &DiskPoint::gauss(k.clone(), r.clone()).unwrap()).unwrap(), r);
        let g = poly(&k, vec![zero.clone(), t.clone(), one.clone()]);
        assert_eq!(eval_disk(&g, &DiskPoint::gauss(k.clone(), r).unwrap()).unwrap(), Value::t_power(int(2), 0));
        let pt = DiskPoint::new(k.clone(), t, Value::zero()).unwrap();
        assert_eq!(eval_disk(&f, &pt).unwrap(), Value::t_power(int(1), 0));
    }

    #[test]
    fn classification_examples() {
        let pr = free();
        let base = Arc::new(pr.base());
        let zero = SeriesElement::zero(base.clone());
        let ii = DiskPoint::gauss(pr.clone(), Value::new(rat(3, 2), vec![int(0)])).unwrap();
        let iii = DiskPoint::gauss(pr.clone(), Value::new(int(0), vec![int(1)])).unwrap();
        let i = DiskPoint::new(pr.clone(), zero, Value::zero()).unwrap();
        assert_eq!(classify_disk(&ii), PointType::II);
        assert_eq!(classify_disk(&iii), PointType::III);
        assert_eq!(classify_disk(&i), PointType::I);
        assert_eq!(point_invariants(PointType::III), PointInvariants { value_rank_increment: 1, residue_trdeg_increment: 0, semi_immediate: false });
        assert!(point_invariants(PointType::I).semi_immediate);
        assert_eq!(point_invariants(PointType::II).residue_trdeg_increment, 1);
        assert_eq!(is_topologically_simple(&BerkovichPoint::Disk(ii)), Simplicity::No);
    }

    #[test]
    fn prefix_evaluation() {
        let k = Arc::new(RadiusProfile::new(2, vec![], int(3)).unwrap());
        let a1 = k_elem(&k, &[1]);
        let a2 = k_elem(&k, &[1, 2]);
        let a3 = k_elem(&k, &[1, 2, 3]);
        let disks = vec![
            DiskPoint::new(k.clone(), a1, Value::t_power(int(1), 0)).unwrap(),
            DiskPoint::new(k.clone(), a2.clone(), Value::t_power(int(2), 0)).unwrap(),
            DiskPoint::new(k.clone(), a3, Value::t_power(int(3), 0)).unwrap(),
        ];
        let np = NestedPrefix::new(disks.clone()).unwrap();
        assert_eq!(classify(&BerkovichPoint::Prefix(np.clone())), PointType::IvCandidate);
        let f = KPolynomial::linear(&a2).unwrap();
        let two = NestedPrefix::new(disks[..2].to_vec()).unwrap();
        assert_eq!(eval_prefix(&f, &two).unwrap(), Value::t_power(int(2), 0));
        let one = poly(&k, vec![SeriesElement::one(k.clone())]);
        assert_eq!(eval_prefix(&one, &np).unwrap(), Value::one(0));
        let x = poly(&k, vec![SeriesElement::zero(k.clone()), SeriesElement::one(k.clone())]);
        assert_eq!(eval_prefix(&x, &np).unwrap(), Value::t_power(int(1), 0));
    }

    #[test]
    fn nesting_violations() {
        let k = Arc::new(RadiusProfile::new(2, vec![], int(3)).unwrap());
        let d1 = DiskPoint::new(k.clone(), k_elem(&k, &[2]), Value::t_power(int(2), 0)).unwrap();
        let d2 = DiskPoint::new(k.clone(), k_elem(&k, &[1]), Value::t_power(int(3), 0)).unwrap();
        assert!(matches!(NestedPrefix::new(vec![d1.clone(), d2]), Err(Error::NestingViolated(_))));
        let d3 = DiskPoint::new(k.clone(), k_elem(&k, &[2]), Value::t_power(int(1), 0)).unwrap();
        assert!(NestedPrefix::new(vec![d1, d3]).is_err());
    }

    #[test]
    fn coarse_center_rejected() {
        let k = Arc::new(RadiusProfile::new(2, vec![], int(3)).unwrap());
        let a = SeriesElement::new(k.clone(), [(Monomial::t_power(int(1), 0), 1)], Value::t_power(int(2), 0)).unwrap();
        assert!(DiskPoint::new(k.clone(), a.clone(), Value::t_power(int(3), 0)).is_err());
        assert!(DiskPoint::new(k, a, Value::t_power(int(1), 0)).is_ok());
    }
}
