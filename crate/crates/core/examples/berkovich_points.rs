//! Disk points, their types, and seminorm values of polynomials over `K`.

use std::sync::Arc;

use ultrametrica::berkovich::{classify, eval_disk, eval_prefix, point_invariants, BerkovichPoint, DiskPoint, KPolynomial, NestedPrefix};
use ultrametrica::exponent::{int, rat};
use ultrametrica::series::{Monomial, SeriesElement};
use ultrametrica::valuegroup::{RadiusProfile, Value};

fn main() -> ultrametrica::Result<()> {
    let k = Arc::new(RadiusProfile::new(2, vec![], int(3))?);
    let kr = Arc::new(RadiusProfile::free(2, 1)?);
    let elem = |ts: &[i64]| SeriesElement::new(k.clone(), ts.iter().map(|t| (Monomial::t_power(int(*t), 0), 1)), Value::zero());

    let points = [
        ("B(0, |t|^(3/2))", BerkovichPoint::Disk(DiskPoint::gauss(k.clone(), Value::t_power(rat(3, 2), 0))?)),
        ("B(0, √2)", BerkovichPoint::Disk(DiskPoint::gauss(kr.clone(), Value::new(int(0), vec![int(1)]))?)),
        ("B(t, 0)", BerkovichPoint::Disk(DiskPoint::new(k.clone(), elem(&[1])?, Value::zero())?)),
        (
            "B(t,|t|) ⊃ B(t+t², |t|²) ⊃ B(t+t²+t³, |t|³)",
            BerkovichPoint::Prefix(NestedPrefix::new(vec![
                DiskPoint::new(k.clone(), elem(&[1])?, Value::t_power(int(1), 0))?,
                DiskPoint::new(k.clone(), elem(&[1, 2])?, Value::t_power(int(2), 0))?,
                DiskPoint::new(k.clone(), elem(&[1, 2, 3])?, Value::t_power(int(3), 0))?,
            ])?),
        ),
    ];
    for (name, pt) in &points {
        let kind = classify(pt);
        println!("{name:<48} type {kind:<13} {:?}", point_invariants(kind));
    }

    // x² + t·x evaluated along the prefix.
    let f = KPolynomial::new(k.clone(), vec![SeriesElement::zero(k.clone()), elem(&[1])?, SeriesElement::one(k.clone())])?;
    if let BerkovichPoint::Prefix(np) = &points[3].1 {
        for d in np.disks() {
            println!("|x² + t x| on B({}, {}) = {}", d.center(), d.radius(), eval_disk(&f, d)?);
        }
        println!("prefix value: {}", eval_prefix(&f, np)?);
    }
    Ok(())
}
