//! Norm values `|t|^a · r^q` and their exact ordering under a free radius `√2`.

use std::sync::Arc;

use ultrametrica::exponent::{int, rat};
use ultrametrica::valuegroup::{RadiusProfile, Value};

fn main() -> ultrametrica::Result<()> {
    let prof = Arc::new(RadiusProfile::free(2, 1)?);
    println!("σ_s = {}, s = {}", prof.s_exponent(), prof.s());

    let mut values = vec![
        Value::new(int(1), vec![int(0)]),
        Value::new(int(0), vec![int(1)]),
        Value::new(int(3), vec![int(-1)]),
        Value::new(rat(3, 2), vec![int(0)]),
        Value::one(1),
        Value::zero(),
    ];
    values.sort_by(|u, v| prof.compare(v, u).expect("same dimension"));
    for v in &values {
        println!("{v:>10}  weight {:.6}", prof.weight_f64(v));
    }

    let r = Value::new(int(0), vec![int(1)]);
    let product = r.mul(&r.inv()?)?;
    println!("r · r⁻¹ = {product}");
    println!("r in √|K^×|: {}", prof.in_sqrt_k(&r)?);
    println!("|t|^(3/2) in √|K^×|: {}", prof.in_sqrt_k(&Value::t_power(rat(3, 2), 1))?);
    Ok(())
}
