use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;
use ultrametrica::abhyankar::{d_k, CoordinateSpec, TowerPoint};
use ultrametrica::berkovich::{eval_disk, DiskPoint, KPolynomial};
use ultrametrica::exponent::{int, Rat};
use ultrametrica::gleason::{Region, WellOrder};
use ultrametrica::random::{grid_rational, random_series, seeded, SeriesShape};
use ultrametrica::series::{Monomial, SeriesElement};
use ultrametrica::tatealg::{evaluate, HomSpec, TateElement};
use ultrametrica::valuegroup::{RadiusProfile, Value};

fn free(p: u32, n: usize) -> Arc<RadiusProfile> {
    Arc::new(RadiusProfile::free(p, n).unwrap())
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

fn element(prof: &Arc<RadiusProfile>, seed: u64) -> SeriesElement {
    random_series(&mut seeded(seed), prof, &SeriesShape::default(), &Value::zero()).unwrap()
}

fn value(seed: u64, p: u32, n: usize) -> Value {
    let mut rng = seeded(seed);
    let a = grid_rational(&mut rng, p, 3, -4.0, 4.0);
    Value::new(a, (0..n).map(|_| grid_rational(&mut rng, p, 3, -3.0, 3.0)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn value_order_is_total_and_compatible(p in prime(), s in any::<u64>()) {
        let prof = free(p, 2);
        let (u, v, w) = (value(s, p, 2), value(s ^ 1, p, 2), value(s ^ 2, p, 2));
        let uv = prof.compare(&u, &v).unwrap();
        prop_assert_eq!(uv, prof.compare(&v, &u).unwrap().reverse());
        prop_assert_eq!(uv == Ordering::Equal, u == v);
        prop_assert_eq!(prof.compare(&u.mul(&w).unwrap(), &v.mul(&w).unwrap()).unwrap(), uv);
        if prof.le(&u, &v) && prof.le(&v, &w) {
            prop_assert!(prof.le(&u, &w));
        }
    }

    #[test]
    fn gauss_norm_is_ultrametric(p in prime(), s in any::<u64>()) {
        let prof = free(p, 1);
        let (f, g) = (element(&prof, s), element(&prof, s.wrapping_add(1)));
        let sum = f.add(&g).unwrap();
        let (nf, ng) = (f.gauss_norm().unwrap(), g.gauss_norm().unwrap());
        if let Some(ns) = sum.gauss_norm() {
            prop_assert!(prof.le(&ns, prof.max(&nf, &ng)));
            if nf != ng {
                prop_assert_eq!(&ns, prof.max(&nf, &ng));
            }
        }
    }

    #[test]
    fn gauss_norm_is_multiplicative(p in prime(), n in 0usize..3, s in any::<u64>()) {
        let prof = free(p, n);
        let (f, g) = (element(&prof, s), element(&prof, s.wrapping_add(7)));
        let fg = f.mul(&g).unwrap();
        prop_assert_eq!(fg.gauss_norm().unwrap(), f.gauss_norm().unwrap().mul(&g.gauss_norm().unwrap()).unwrap());
        prop_assert_eq!(fg.leading_part().unwrap(), f.leading_part().unwrap().mul(&g.leading_part().unwrap()).unwrap());
    }

    #[test]
    fn frobenius_is_a_ring_map(p in prime(), s in any::<u64>()) {
        let prof = free(p, 1);
        let (f, g) = (element(&prof, s), element(&prof, s.wrapping_add(3)));
        prop_assert_eq!(f.add(&g).unwrap().frobenius(), f.frobenius().add(&g.frobenius()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().frobenius(), f.frobenius().mul(&g.frobenius()).unwrap());
        prop_assert_eq!(f.frobenius().gauss_norm().unwrap(), f.gauss_norm().unwrap().pow(&int(p as i64)).unwrap());
        prop_assert_eq!(f.frobenius().pth_root().unwrap(), f);
    }

    #[test]
    fn res_is_monotone_in_the_cut(p in prime(), s in any::<u64>(), lo in 0i64..6, gap in 0i64..6) {
        let prof = free(p, 1);
        let f = element(&prof, s);
        let coarse = f.res_ge(&Value::t_power(int(lo), 1)).unwrap();
        let fine = f.res_ge(&Value::t_power(int(lo + gap), 1)).unwrap();
        prop_assert!(coarse.terms().keys().all(|m| fine.terms().contains_key(m)));
        let rest = f.sub(&fine).unwrap();
        if let Some(v) = rest.gauss_norm() {
            prop_assert!(prof.lt(&v, &Value::t_power(int(lo + gap), 1)));
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in prime(), s in any::<u64>()) {
        let target = free(p, 1);
        let base = Arc::new(target.base());
        let mut rng = seeded(s);
        let tate = |rng: &mut _| {
            let terms: Vec<(Vec<Rat>, SeriesElement)> = (0..3)
                .map(|_| {
                    let e = vec![grid_rational(rng, p, 2, 0.0, 3.0), grid_rational(rng, p, 2, 0.0, 3.0)];
                    let c = SeriesElement::t_power(base.clone(), grid_rational(rng, p, 2, 0.0, 4.0)).unwrap();
                    (e, c)
                })
                .collect();
            TateElement::new(base.clone(), 2, terms, Value::zero()).unwrap()
        };
        let (f, g) = (tate(&mut rng), tate(&mut rng));
        let x = SeriesElement::variable(target.clone(), 0).unwrap();
        let y = SeriesElement::monomial(target.clone(), 1, Monomial::new(int(2), vec![int(-1)])).unwrap();
        let phi = HomSpec::new(target.clone(), vec![x, y]).unwrap();
        let floor = Value::t_power(int(20), 1);
        let ev = |h: &TateElement| evaluate(h, &phi, &floor).unwrap();
        let below = |d: SeriesElement| d.gauss_norm().is_none();
        prop_assert!(below(ev(&f.t_add(&g).unwrap()).sub(&ev(&f).add(&ev(&g)).unwrap()).unwrap()));
        prop_assert!(below(ev(&f.t_mul(&g).unwrap()).sub(&ev(&f).mul(&ev(&g)).unwrap().truncate(&floor)).unwrap()));
    }

    #[test]
    fn disk_seminorms_are_multiplicative(s in any::<u64>(), r in 1i64..4) {
        let k = Arc::new(RadiusProfile::new(2, vec![], int(3)).unwrap());
        let mut rng = seeded(s);
        let poly = |rng: &mut _| {
            let coeffs = (0..3).map(|_| SeriesElement::t_power(k.clone(), grid_rational(rng, 2, 2, 0.0, 4.0)).unwrap()).collect();
            KPolynomial::new(k.clone(), coeffs).unwrap()
        };
        let (f, g) = (poly(&mut rng), poly(&mut rng));
        let center = SeriesElement::t_power(k.clone(), grid_rational(&mut rng, 2, 2, 0.0, 3.0)).unwrap();
        let pt = DiskPoint::new(k.clone(), center, Value::t_power(int(r), 0)).unwrap();
        let lhs = eval_disk(&f.mul(&g).unwrap(), &pt).unwrap();
        let rhs = eval_disk(&f, &pt).unwrap().mul(&eval_disk(&g, &pt).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_k_is_additive(a in prop::collection::vec(0u8..3, 0..4), b in prop::collection::vec(0u8..3, 0..4)) {
        let prof = free(2, 1);
        let coord = |kind: &u8| match kind {
            0 => CoordinateSpec::Gauss(Value::new(int(0), vec![int(1)])),
            1 => CoordinateSpec::Gauss(Value::t_power(int(1), 1)),
            _ => CoordinateSpec::TypeIV(ultrametrica::berkovich::NestedPrefix::new(
                (1..=2).map(|k| DiskPoint::gauss(prof.clone(), Value::t_power(int(k), 1)).unwrap()).collect(),
            ).unwrap()),
        };
        let ta = TowerPoint::new(prof.clone(), a.iter().map(coord).collect()).unwrap();
        let tb = TowerPoint::new(prof.clone(), b.iter().map(coord).collect()).unwrap();
        prop_assert_eq!(d_k(&ta.concat(&tb).unwrap()), d_k(&ta) + d_k(&tb));
        prop_assert!(d_k(&ta) <= ta.m());
    }

    #[test]
    fn well_order_index_inverts_nth(p in prime(), n in 1usize..3, m in 1usize..200) {
        for region in [Region::All, Region::NonNegative, Region::NonPositive] {
            let wo = WellOrder::new(p, n, region);
            prop_assert_eq!(wo.index(&wo.nth(m)).unwrap(), m);
        }
    }
}
