//! Truncated series in `K_r^perfd`: products, leading terms, inversion and
//! Frobenius.

use std::sync::Arc;

use ultrametrica::exponent::{int, rat};
use ultrametrica::series::{Monomial, SeriesElement};
use ultrametrica::valuegroup::{RadiusProfile, Value};

fn main() -> ultrametrica::Result<()> {
    let prof = Arc::new(RadiusProfile::free(3, 1)?);
    let floor = Value::t_power(int(12), 1);
    let f = SeriesElement::new(
        prof.clone(),
        [(Monomial::new(int(0), vec![int(0)]), 1), (Monomial::new(rat(1, 3), vec![int(1)]), 2), (Monomial::new(int(2), vec![rat(-1, 9)]), 1)],
        floor.clone(),
    )?;
    let g = SeriesElement::new(prof.clone(), [(Monomial::new(int(1), vec![int(-1)]), 1), (Monomial::new(int(4), vec![int(0)]), 2)], floor.clone())?;

    println!("f = {f}");
    println!("g = {g}");
    let fg = f.mul(&g)?;
    println!("f·g = {fg}");
    println!("|f| = {}, |g| = {}, |f·g| = {}", show(f.gauss_norm()), show(g.gauss_norm()), show(fg.gauss_norm()));
    println!("leading part of f·g: {}", fg.leading_part()?);

    let target = Value::t_power(int(10), 1);
    let inv = f.invert(&target)?;
    let check = f.mul(&inv)?.sub(&SeriesElement::one(prof.clone()))?;
    println!("f⁻¹ to {target}: {} terms, f·f⁻¹ − 1 = {check}", inv.len());

    let root = f.pth_root()?;
    println!("f^(1/3) = {root}");
    println!("(f^(1/3))^3 = f: {}", root.frobenius() == f);
    Ok(())
}

fn show(v: Option<Value>) -> String {
    v.map_or_else(|| "below floor".into(), |v| v.to_string())
}
