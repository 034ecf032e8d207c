//! Abhyankar bookkeeping for points on polydisks given as coordinate towers.
//!
//! A tower adjoins one coordinate at a time. A Gauss coordinate contributes
//! exactly one to `d_K` (a value-rank or residue-degree increment); a type-IV
//! coordinate is a semi-immediate extension and contributes nothing.

use std::sync::Arc;

use num_traits::Zero;

use crate::berkovich::{classify_disk, point_invariants, DiskPoint, NestedPrefix, PointInvariants, PointType};
use crate::error::{Error, Result};
use crate::exponent::Rat;
use crate::series::same_profile;
use crate::valuegroup::{RadiusProfile, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum CoordinateSpec {
    Gauss(Value),
    TypeIV(NestedPrefix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerPoint {
    profile: Arc<RadiusProfile>,
    coords: Vec<CoordinateSpec>,
}

impl TowerPoint {
    pub fn new(profile: Arc<RadiusProfile>, coords: Vec<CoordinateSpec>) -> Result<Self> {
        let one = Value::one(profile.n());
        for (i, c) in coords.iter().enumerate() {
            match c {
                CoordinateSpec::Gauss(r) => {
                    if r.is_zero() {
                        return Err(Error::MalformedTower(format!("coordinate {} has zero Gauss radius", i + 1)));
                    }
                    if r.q().len() != profile.n() {
                        return Err(Error::MalformedTower(format!("coordinate {} radius has the wrong dimension", i + 1)));
                    }
                    if profile.lt(&one, r) {
                        return Err(Error::MalformedTower(format!("coordinate {} radius exceeds 1", i + 1)));
                    }
                }
                CoordinateSpec::TypeIV(np) => {
                    let Some(first) = np.disks().first() else {
                        return Err(Error::MalformedTower(format!("coordinate {} has an empty prefix", i + 1)));
                    };
                    if !same_profile(first.profile(), &profile) {
                        return Err(Error::MalformedTower(format!("coordinate {} lives over another profile", i + 1)));
                    }
                }
            }
        }
        Ok(TowerPoint { profile, coords })
    }

    pub fn profile(&self) -> &Arc<RadiusProfile> {
        &self.profile
    }

    pub fn coords(&self) -> &[CoordinateSpec] {
        &self.coords
    }

    pub fn m(&self) -> usize {
        self.coords.len()
    }

    pub fn concat(&self, other: &TowerPoint) -> Result<TowerPoint> {
        if !same_profile(&self.profile, &other.profile) {
            return Err(Error::MalformedTower("towers over different profiles".into()));
        }
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        TowerPoint::new(self.profile.clone(), coords)
    }

    fn coordinate_invariants(&self, c: &CoordinateSpec) -> PointInvariants {
        match c {
            CoordinateSpec::Gauss(r) => {
                let disk = DiskPoint::gauss(self.profile.clone(), r.clone()).expect("validated radius");
                point_invariants(classify_disk(&disk))
            }
            CoordinateSpec::TypeIV(_) => point_invariants(PointType::IvCandidate),
        }
    }
}

pub fn d_k(pt: &TowerPoint) -> usize {
    pt.coords
        .iter()
        .map(|c| {
            let inv = pt.coordinate_invariants(c);
            (inv.value_rank_increment + inv.residue_trdeg_increment) as usize
        })
        .sum()
}

pub fn is_abhyankar(pt: &TowerPoint) -> bool {
    d_k(pt) == pt.m()
}

/// Height of the kernel of the tower seminorm on the polynomial ring. Gauss
/// coordinates have positive radius and type-IV coordinates have no zero on
/// `K`, so every tower seminorm is a norm.
pub fn kernel_height(_pt: &TowerPoint) -> usize {
    0
}

#[derive(Clone, Debug, PartialEq)]
pub struct TemkinFactorization {
    /// 0-based indices of the Gauss coordinates.
    pub gauss_indices: Vec<usize>,
    pub polyradius: Vec<Value>,
    /// Invariants of every remaining coordinate, each `(0, 0, true)`.
    pub remainder: Vec<(usize, PointInvariants)>,
}

impl TemkinFactorization {
    pub fn l(&self) -> usize {
        self.gauss_indices.len()
    }

    pub fn remainder_semi_immediate(&self) -> bool {
        self.remainder.iter().all(|(_, inv)| inv.semi_immediate && inv.value_rank_increment == 0 && inv.residue_trdeg_increment == 0)
    }
}

pub fn factor_temkin(pt: &TowerPoint) -> TemkinFactorization {
    let mut gauss_indices = Vec::new();
    let mut polyradius = Vec::new();
    let mut remainder = Vec::new();
    for (i, c) in pt.coords.iter().enumerate() {
        match c {
            CoordinateSpec::Gauss(r) => {
                gauss_indices.push(i);
                polyradius.push(r.clone());
            }
            CoordinateSpec::TypeIV(_) => remainder.push((i, pt.coordinate_invariants(c))),
        }
    }
    TemkinFactorization { gauss_indices, polyradius, remainder }
}

/// `l ≤ n_vars − 1` for a surjection from `n_vars` variables onto a field of
/// `l` Gauss coordinates.
pub fn check_main_theorem_bound(n_vars: usize, l: usize) -> Result<bool> {
    if n_vars < 1 {
        return Err(Error::Invalid("n_vars must be at least 1".into()));
    }
    Ok(l < n_vars)
}

/// Value-group and residue data of a valued extension of `K`, recorded
/// modulo `√|K^×|`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldDescriptor {
    profile: Arc<RadiusProfile>,
    free_value_generators: Vec<Value>,
    residue_trdeg: u32,
}

impl FieldDescriptor {
    pub fn new(profile: Arc<RadiusProfile>, free_value_generators: Vec<Value>, residue_trdeg: u32) -> Result<Self> {
        let vecs = free_vectors(&profile, &free_value_generators)?;
        if rank(vecs) != free_value_generators.len() {
            return Err(Error::Invalid("value generators are not free modulo √|K^×|".into()));
        }
        Ok(FieldDescriptor { profile, free_value_generators, residue_trdeg })
    }

    /// The base field `K`.
    pub fn base(profile: Arc<RadiusProfile>) -> Self {
        FieldDescriptor { profile, free_value_generators: Vec::new(), residue_trdeg: 0 }
    }

    /// `K_{r_1,…,r_k}`: radii free modulo `√|K^×|` enlarge the value group,
    /// every other radius adds one to the residue transcendence degree.
    pub fn gauss_field(profile: Arc<RadiusProfile>, radii: &[Value]) -> Result<Self> {
        let mut gens: Vec<Value> = Vec::new();
        let mut trdeg = 0;
        for r in radii {
            if r.is_zero() {
                return Err(Error::ZeroInput);
            }
            let mut trial = gens.clone();
            trial.push(r.clone());
            if rank(free_vectors(&profile, &trial)?) > gens.len() {
                gens = trial;
            } else {
                trdeg += 1;
            }
        }
        Ok(FieldDescriptor { profile, free_value_generators: gens, residue_trdeg: trdeg })
    }

    /// Completed perfection: the value group only gains `p`-power roots and the
    /// residue field only purely inseparable elements.
    pub fn completed_perfection(&self) -> Self {
        self.clone()
    }

    pub fn free_value_generators(&self) -> &[Value] {
        &self.free_value_generators
    }

    pub fn residue_trdeg(&self) -> u32 {
        self.residue_trdeg
    }
}

fn free_vectors(profile: &RadiusProfile, values: &[Value]) -> Result<Vec<Vec<Rat>>> {
    values
        .iter()
        .map(|v| {
            if v.is_zero() {
                return Err(Error::ZeroInput);
            }
            if v.q().len() != profile.n() {
                return Err(Error::ProfileMismatch("generator dimension".into()));
            }
            Ok(profile.free_components(v))
        })
        .collect()
}

/// Rank over ℚ by Gaussian elimination.
fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &pivot;
                for k in c..cols {
                    let sub = &factor * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Is `L ⊇ L0` semi-immediate?
pub fn is_semi_immediate(l: &FieldDescriptor, l0: &FieldDescriptor) -> Result<bool> {
    if !same_profile(&l.profile, &l0.profile) {
        return Err(Error::NonNested("descriptors over different profiles".into()));
    }
    let big = free_vectors(&l.profile, &l.free_value_generators)?;
    let small = free_vectors(&l.profile, &l0.free_value_generators)?;
    let rank_big = rank(big.clone());
    let mut union = big;
    union.extend(small.iter().cloned());
    if rank(union) != rank_big {
        return Err(Error::NonNested("value group of L0 is not contained in that of L".into()));
    }
    if l.residue_trdeg < l0.residue_trdeg {
        return Err(Error::NonNested("residue degree of L0 exceeds that of L".into()));
    }
    Ok(rank_big == rank(small) && l.residue_trdeg == l0.residue_trdeg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::{int, rat};

    fn profile() -> Arc<RadiusProfile> {
        Arc::new(RadiusProfile::free(2, 2).unwrap())
    }

    fn type_iv(pr: &Arc<RadiusProfile>) -> CoordinateSpec {
        let disks = (1..=3).map(|k| DiskPoint::gauss(pr.clone(), Value::t_power(int(k), pr.n())).unwrap()).collect();
        CoordinateSpec::TypeIV(NestedPrefix::new(disks).unwrap())
    }

    fn gauss(a: Rat, q: Vec<Rat>) -> CoordinateSpec {
        CoordinateSpec::Gauss(Value::new(a, q))
    }

    #[test]
    fn counts() {
        let pr = profile();
        let t = TowerPoint::new(pr.clone(), vec![gauss(int(0), vec![int(1), int(0)]), gauss(rat(1, 2), vec![int(0), int(0)])]).unwrap();
        assert_eq!(d_k(&t), 2);
        assert!(is_abhyankar(&t));
        let iv = TowerPoint::new(pr.clone(), vec![type_iv(&pr)]).unwrap();
        assert_eq!(d_k(&iv), 0);
        assert!(!is_abhyankar(&iv));
        let empty = TowerPoint::new(pr.clone(), vec![]).unwrap();
        assert_eq!(d_k(&empty), 0);
        assert!(is_abhyankar(&empty));
        assert_eq!(d_k(&t.concat(&iv).unwrap()), d_k(&t) + d_k(&iv));
        assert_eq!(kernel_height(&t), 0);
    }

    #[test]
    fn temkin_factorization() {
        let pr = profile();
        let r1 = Value::new(int(0), vec![int(1), int(0)]);
        let r2 = Value::new(int(1), vec![int(0), int(0)]);
        let t = TowerPoint::new(pr.clone(), vec![CoordinateSpec::Gauss(r1.clone()), type_iv(&pr), CoordinateSpec::Gauss(r2.clone())]).unwrap();
        let f = factor_temkin(&t);
        assert_eq!(f.gauss_indices, vec![0, 2]);
        assert_eq!(f.polyradius, vec![r1, r2]);
        assert!(f.remainder_semi_immediate());
        assert_eq!(f.l(), d_k(&t));
    }

    #[test]
    fn malformed_towers() {
        let pr = profile();
        assert!(TowerPoint::new(pr.clone(), vec![CoordinateSpec::Gauss(Value::zero())]).is_err());
        assert!(TowerPoint::new(pr.clone(), vec![CoordinateSpec::Gauss(Value::t_power(int(-1), 2))]).is_err());
    }

    #[test]
    fn variable_count_bound() {
        assert!(check_main_theorem_bound(3, 1).unwrap());
        assert!(check_main_theorem_bound(5, 3).unwrap());
        assert!(!check_main_theorem_bound(1, 1).unwrap());
        assert!(check_main_theorem_bound(0, 0).is_err());
    }

    #[test]
    fn semi_immediate_detector() {
        let pr = Arc::new(RadiusProfile::free(2, 1).unwrap());
        let k = FieldDescriptor::base(pr.clone());
        let kr = FieldDescriptor::gauss_field(pr.clone(), &[Value::new(int(0), vec![int(1)])]).unwrap();
        assert!(!is_semi_immediate(&kr, &k).unwrap());
        assert!(is_semi_immediate(&k, &k).unwrap());
        assert!(is_semi_immediate(&kr.completed_perfection(), &kr).unwrap());
        let kt = FieldDescriptor::gauss_field(pr.clone(), &[Value::t_power(rat(1, 2), 1)]).unwrap();
        assert_eq!(kt.residue_trdeg(), 1);
        assert!(!is_semi_immediate(&kt, &k).unwrap());
        assert!(matches!(is_semi_immediate(&k, &kr), Err(Error::NonNested(_))));
    }
}
