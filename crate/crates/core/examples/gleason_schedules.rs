//! Gleason element schedules for the three exponent sets: `ℤ[1/p]_{≥0}`,
//! the one-variable lattice with `V = c x^{-1}`, and `ℤ[1/p]^n`.
//!
//! For `V = c x^{-1}` the exponent window lies below `|V|`, which need not meet
//! the adapted norm range; such steps report `adapted: false`.

use std::sync::Arc;

use ultrametrica::exponent::int;
use ultrametrica::gleason::{build_gminus, build_gplus, build_lattice, GleasonBuild, ScheduleOptions};
use ultrametrica::valuegroup::RadiusProfile;

fn main() -> ultrametrica::Result<()> {
    let one = Arc::new(RadiusProfile::free(2, 1)?);
    let plus = build_gplus(one.clone(), 8, ScheduleOptions::default())?;
    report("G₊, p = 2", &plus);

    let (minus, gen) = build_gminus(one.clone(), int(4), 6, ScheduleOptions::default())?;
    report("G₋, c = t^4", &minus);
    println!("  preimage of the generator has {} terms", gen.len());

    let two = Arc::new(RadiusProfile::free(3, 2)?);
    let lattice = build_lattice(two, int(6), 5, ScheduleOptions::default())?;
    report("lattice, p = 3, n = 2", &lattice);
    Ok(())
}

fn report(name: &str, build: &GleasonBuild) {
    let sched = &build.schedule;
    println!("{name}: depth {}", sched.depth());
    for ((m, step), cert) in sched.steps().iter().enumerate().zip(&build.certificates) {
        let omega: Vec<String> = step.omega.iter().map(ToString::to_string).collect();
        println!(
            "  m = {:>2}  ω = ({:<12}) e = {:<8} δ = {:<8} b = {:<3} adapted: {}",
            m + 1,
            omega.join(", "),
            step.e_t,
            step.delta,
            step.b,
            cert.passed()
        );
    }
    println!("  G has {} terms above {}", build.element.len(), build.element.floor());
}
