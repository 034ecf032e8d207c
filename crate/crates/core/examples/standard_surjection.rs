//! Preimages through the standard surjection onto `K_r^perfd`: divide a target
//! by adapted elements until the residual falls below the floor, then check the
//! image of the reconstructed Tate series.

use std::sync::Arc;

use ultrametrica::exponent::int;
use ultrametrica::gleason::{reconstruct_preimage, standard_surjection, AdaptedOracle, SurjectionOptions};
use ultrametrica::random::{random_in_window, seeded};
use ultrametrica::tatealg::evaluate;
use ultrametrica::valuegroup::RadiusProfile;

fn main() -> ultrametrica::Result<()> {
    let mut spec =
        standard_surjection(Arc::new(RadiusProfile::free(2, 1)?), &SurjectionOptions { depth: 19, tail_gap: 8, ..SurjectionOptions::default() })?;
    let prof = spec.profile().clone();
    println!("{} variables onto K_r^perfd, c = t^{}, s = {}", spec.n_vars(), spec.c_exp(), prof.s());

    let sigma = prof.s_exponent().clone();
    let floor = prof.s_times_varpi_pow(8);
    let exps = spec.schedule().well_order().prefix(spec.depth());
    let beta = random_in_window(&mut seeded(11), &prof, &exps, 5, (&sigma, &(&sigma + int(8))), 2, &floor)?;
    println!("β = {beta}");

    let r = reconstruct_preimage(&mut spec, &beta, 8)?;
    for (m, b) in r.residual_bounds.iter().enumerate() {
        println!("  after step {m}: residual ≤ {b}");
    }
    println!("preimage: {} terms in {} variables", r.preimage.len(), r.preimage.m());
    let image = evaluate(&r.preimage, spec.hom(), &floor)?;
    let diff = image.sub(&beta)?;
    println!("φ(F) − β = {diff}");
    println!("agrees above {}: {}", floor, diff.gauss_norm().is_none());
    Ok(())
}
