//! Abhyankar bookkeeping on coordinate towers and the semi-immediate detector.

use std::sync::Arc;

use ultrametrica::abhyankar::{
    check_main_theorem_bound, d_k, factor_temkin, is_abhyankar, is_semi_immediate, CoordinateSpec, FieldDescriptor, TowerPoint,
};
use ultrametrica::berkovich::{DiskPoint, NestedPrefix};
use ultrametrica::exponent::{int, rat};
use ultrametrica::valuegroup::{RadiusProfile, Value};

fn main() -> ultrametrica::Result<()> {
    let prof = Arc::new(RadiusProfile::free(2, 2)?);
    let gauss = |a, q: Vec<_>| CoordinateSpec::Gauss(Value::new(a, q));
    let type_iv = CoordinateSpec::TypeIV(NestedPrefix::new(
        (1..=3).map(|k| DiskPoint::gauss(prof.clone(), Value::t_power(int(k), 2))).collect::<Result<_, _>>()?,
    )?);

    let towers = [
        (
            "free, free, rational",
            vec![gauss(int(0), vec![int(1), int(0)]), gauss(int(0), vec![int(0), int(1)]), gauss(rat(1, 2), vec![int(0), int(0)])],
        ),
        ("free, type IV, rational", vec![gauss(int(0), vec![int(1), int(0)]), type_iv, gauss(rat(1, 2), vec![int(0), int(0)])]),
    ];
    for (name, coords) in towers {
        let pt = TowerPoint::new(prof.clone(), coords)?;
        let f = factor_temkin(&pt);
        println!("{name:<24} m = {}, d_K = {}, Abhyankar: {}, Gauss coordinates {:?}", pt.m(), d_k(&pt), is_abhyankar(&pt), f.gauss_indices);
    }

    for (n_vars, l) in [(3, 1), (4, 2), (5, 3), (2, 2)] {
        println!("surjection from {n_vars} variables onto {l} Gauss coordinates admissible: {}", check_main_theorem_bound(n_vars, l)?);
    }

    let k = FieldDescriptor::base(prof.clone());
    let kr = FieldDescriptor::gauss_field(prof.clone(), &[Value::new(int(0), vec![int(1), int(0)])])?;
    println!("K_r ⊇ K semi-immediate: {}", is_semi_immediate(&kr, &k)?);
    println!("K_r^perfd ⊇ K_r semi-immediate: {}", is_semi_immediate(&kr.completed_perfection(), &kr)?);
    Ok(())
}
