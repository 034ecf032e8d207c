//! Evaluating a perfectoid Tate series under `T_i ↦ images`.

use std::sync::Arc;

use ultrametrica::exponent::{int, rat};
use ultrametrica::series::{Monomial, SeriesElement};
use ultrametrica::tatealg::{evaluate, HomSpec, TateElement};
use ultrametrica::valuegroup::{RadiusProfile, Value};

fn main() -> ultrametrica::Result<()> {
    let target = Arc::new(RadiusProfile::free(2, 1)?);
    let base = Arc::new(target.base());
    let coeff = |a| SeriesElement::t_power(base.clone(), a);

    // F = T_1 + t·T_1^{1/2} T_2 + t^3 T_2^2
    let f = TateElement::new(
        base.clone(),
        2,
        [(vec![int(1), int(0)], coeff(int(0))?), (vec![rat(1, 2), int(1)], coeff(int(1))?), (vec![int(0), int(2)], coeff(int(3))?)],
        Value::zero(),
    )?;
    println!("F = {f}");
    println!("|F| = {}", f.t_gauss_norm().map_or("0".into(), |v| v.to_string()));

    let x = SeriesElement::variable(target.clone(), 0)?;
    let c = SeriesElement::monomial(target.clone(), 1, Monomial::new(int(2), vec![int(-1)]))?;
    let phi = HomSpec::new(target.clone(), vec![x, c])?;
    let floor = Value::t_power(int(16), 1);
    let image = evaluate(&f, &phi, &floor)?;
    println!("φ(F) with T_1 ↦ x, T_2 ↦ t^2 x^-1: {image}");

    let g = f.t_mul(&f)?;
    let lhs = evaluate(&g, &phi, &floor)?;
    let rhs = image.mul(&image)?.truncate(&floor);
    println!("φ(F²) = φ(F)²: {}", lhs.sub(&rhs)?.gauss_norm().is_none());
    Ok(())
}
