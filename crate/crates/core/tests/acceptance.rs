//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ultrametrica::abhyankar::{
    check_main_theorem_bound, d_k, factor_temkin, is_abhyankar, is_semi_immediate, CoordinateSpec, FieldDescriptor, TowerPoint,
};
use ultrametrica::berkovich::{classify, BerkovichPoint, DiskPoint, NestedPrefix, PointType};
use ultrametrica::exponent::{int, rat, rat_to_f64, Rat};
use ultrametrica::gleason::{
    build_gplus, is_adapted, reconstruct_preimage, rescale_exponent, standard_surjection, AdaptedOracle, ScheduleOptions, SurjectionOptions,
};
use ultrametrica::random::{random_in_window, random_series, seeded, SeriesShape};
use ultrametrica::series::{Monomial, SeriesElement};
use ultrametrica::tatealg::evaluate;
use ultrametrica::valuegroup::{RadiusProfile, Value};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn free(p: u32, n: usize) -> Arc<RadiusProfile> {
    Arc::new(RadiusProfile::free(p, n).expect("free profile"))
}

/// Largest term norm found by pairwise comparison, with the number of terms attaining it.
fn max_norm(f: &SeriesElement) -> Option<(Value, usize)> {
    let prof = f.profile();
    let mut best: Option<(Value, usize)> = None;
    for m in f.terms().keys() {
        let v = m.norm();
        best = match best {
            None => Some((v, 1)),
            Some((b, c)) => match prof.compare(&v, &b).expect("comparable") {
                std::cmp::Ordering::Greater => Some((v, 1)),
                std::cmp::Ordering::Equal => Some((b, c + 1)),
                std::cmp::Ordering::Less => Some((b, c)),
            },
        };
    }
    best.filter(|(v, _)| prof.lt(f.floor(), v))
}

fn norm_multiplicativity() -> Outcome {
    let start = Instant::now();
    let prof = free(2, 1);
    let floor = Value::t_power(int(24), 1);
    let mut rng = seeded(1);
    let shape = SeriesShape::default();
    for i in 0..500 {
        let f = random_series(&mut rng, &prof, &shape, &floor).map_err(|e| e.to_string())?;
        let g = random_series(&mut rng, &prof, &shape, &floor).map_err(|e| e.to_string())?;
        let (nf, _) = max_norm(&f).ok_or("f has no term above its floor")?;
        let (ng, _) = max_norm(&g).ok_or("g has no term above its floor")?;
        let fg = f.mul(&g).map_err(|e| e.to_string())?;
        let expected = nf.mul(&ng).map_err(|e| e.to_string())?;
        ensure(fg.gauss_norm() == Some(expected.clone()), || format!("pair {i}: |fg| = {:?}, |f||g| = {expected}", fg.gauss_norm()))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("500 pairs in {:.2?}", start.elapsed()))
}

fn leading_uniqueness() -> Outcome {
    let prof = free(2, 1);
    let mut rng = seeded(2);
    let shape = SeriesShape { max_terms: 12, ..SeriesShape::default() };
    let mut failures = 0;
    for _ in 0..500 {
        let f = random_series(&mut rng, &prof, &shape, &Value::zero()).map_err(|e| e.to_string())?;
        let lead = f.leading_part().map_err(|e| e.to_string())?;
        let (v, count) = max_norm(&f).ok_or("zero element drawn")?;
        if lead.len() != 1 || count != 1 || lead.gauss_norm() != Some(v) {
            failures += 1;
        }
    }
    ensure(failures == 0, || format!("{failures} elements without a unique leading term"))?;
    Ok("500 elements, 0 failures".into())
}

fn inversion() -> Outcome {
    let start = Instant::now();
    let prof = free(2, 1);
    let target = Value::t_power(int(20), 1);
    let pool: Vec<Vec<Rat>> = (-4..=4).map(|k| vec![rat(k, 2)]).collect();
    let mut rng = seeded(3);
    for i in 0..200 {
        let tail = random_in_window(&mut rng, &prof, &pool, 5, (&rat(1, 2), &int(20)), 3, &Value::zero()).map_err(|e| e.to_string())?;
        let f = SeriesElement::one(prof.clone()).add(&tail).map_err(|e| e.to_string())?;
        let g = f.invert(&target).map_err(|e| e.to_string())?;
        let err = f.mul(&g).and_then(|fg| fg.sub(&SeriesElement::one(prof.clone()))).map_err(|e| e.to_string())?;
        // The floor is an exclusive bound on everything not listed.
        ensure(err.gauss_norm().is_none() && prof.le(err.floor(), &target), || format!("unit {i}: |fg − 1| is not below {target}: {err}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("200 units in {:.2?}", start.elapsed()))
}

fn frobenius_roundtrip() -> Outcome {
    let mut rng = seeded(4);
    for (i, p) in (0..200).map(|i| (i, [2, 3, 5][i % 3])) {
        let prof = free(p, 1);
        let f = random_series(&mut rng, &prof, &SeriesShape::default(), &Value::zero()).map_err(|e| e.to_string())?;
        let back = f.frobenius().pth_root().map_err(|e| e.to_string())?;
        let fwd = f.pth_root().map_err(|e| e.to_string())?.frobenius();
        ensure(back.terms() == f.terms() && fwd.terms() == f.terms(), || format!("element {i} (p = {p}) does not round-trip"))?;
    }
    Ok("200 elements".into())
}

fn gleason_adaptedness() -> Outcome {
    let mut lines = Vec::new();
    for p in [2, 3] {
        let start = Instant::now();
        let build = build_gplus(free(p, 1), 12, ScheduleOptions::default()).map_err(|e| format!("p = {p}: {e}"))?;
        let sched = &build.schedule;
        ensure(build.certificates.len() == 12 && build.all_passed(), || format!("p = {p}: a stored certificate failed"))?;
        for m in 1..=12 {
            let step = sched.step(m);
            let cert = is_adapted(&sched.adapted_element(m).map_err(|e| e.to_string())?, &step.omega).map_err(|e| e.to_string())?;
            ensure(cert.passed(), || format!("p = {p}, m = {m}: element is not adapted"))?;
            let checks = sched.verify_conditions(m).map_err(|e| e.to_string())?;
            ensure(checks.all(), || format!("p = {p}, m = {m}: conditions {checks:?}"))?;
        }
        within(start, Duration::from_secs(10))?;
        lines.push(format!("p = {p} in {:.2?}", start.elapsed()));
    }
    Ok(lines.join(", "))
}

fn division_convergence() -> Outcome {
    let start = Instant::now();
    let mut spec =
        standard_surjection(free(2, 1), &SurjectionOptions { depth: 19, tail_gap: 8, ..SurjectionOptions::default() }).map_err(|e| e.to_string())?;
    let prof = spec.profile().clone();
    let sigma = prof.s_exponent().clone();
    let qs = spec.schedule().well_order().prefix(19);
    let floor = prof.s_times_varpi_pow(8);
    let mut rng = seeded(6);
    for trial in 0..50 {
        let beta = random_in_window(&mut rng, &prof, &qs, 6, (&sigma, &(&sigma + int(8))), 2, &floor).map_err(|e| e.to_string())?;
        ensure(prof.le(&beta.norm_bound(), &prof.s()), || format!("trial {trial}: |β| exceeds s"))?;
        let r = reconstruct_preimage(&mut spec, &beta, 8).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(r.rescale == 0, || format!("trial {trial}: unexpected rescale {}", r.rescale))?;
        for (m, bound) in r.residual_bounds.iter().enumerate() {
            let limit = prof.s_times_varpi_pow(m as i64);
            ensure(prof.le(bound, &limit), || format!("trial {trial}: residual {bound} after step {m} exceeds {limit}"))?;
        }
        for (m, w) in r.residual_bounds.windows(2).enumerate() {
            ensure(prof.le(&w[1], &w[0]), || format!("trial {trial}: residual grows at step {}", m + 1))?;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("50 targets in {:.2?}", start.elapsed()))
}

fn surjectivity() -> Outcome {
    let mut lines = Vec::new();
    for (n, depth) in [(1usize, 19usize), (2, 17)] {
        let start = Instant::now();
        let mut spec =
            standard_surjection(free(2, n), &SurjectionOptions { depth, tail_gap: 13, ..SurjectionOptions::default() }).map_err(|e| e.to_string())?;
        let prof = spec.profile().clone();
        let qs = spec.schedule().well_order().prefix(depth);
        let floor = Value::t_power(int(12), n);
        let sigma = rat_to_f64(prof.s_exponent());
        let mut rng = seeded(7);
        for trial in 0..20 {
            let beta = random_in_window(&mut rng, &prof, &qs, 6, (&int(0), &int(12)), 2, &floor).map_err(|e| e.to_string())?;
            let k = rescale_exponent(&prof, &beta);
            // Smallest M with s·|ϖ|^{M−k} strictly below the floor.
            let steps = (12.0 + k as f64 - sigma).floor() as usize + 1;
            let r = reconstruct_preimage(&mut spec, &beta, steps).map_err(|e| format!("n = {n}, trial {trial}: {e}"))?;
            let image = evaluate(&r.preimage, spec.hom(), &floor).map_err(|e| e.to_string())?;
            let got = image.res_ge(&floor).map_err(|e| e.to_string())?;
            let want = beta.res_ge(&floor).map_err(|e| e.to_string())?;
            ensure(got.terms() == want.terms(), || format!("n = {n}, trial {trial}: image differs from β above the floor"))?;
        }
        within(start, Duration::from_secs(120))?;
        lines.push(format!("n = {n} in {:.2?}", start.elapsed()));
    }
    Ok(lines.join(", "))
}

fn classification() -> Outcome {
    let k = Arc::new(RadiusProfile::new(2, vec![], int(3)).map_err(|e| e.to_string())?);
    let kr = free(2, 1);
    let elem = |ts: &[Rat]| SeriesElement::new(k.clone(), ts.iter().map(|t| (Monomial::t_power(t.clone(), 0), 1)), Value::zero()).expect("element");
    let cases = [
        (BerkovichPoint::Disk(DiskPoint::gauss(k.clone(), Value::t_power(rat(3, 2), 0)).map_err(|e| e.to_string())?), PointType::II),
        (BerkovichPoint::Disk(DiskPoint::gauss(kr.clone(), Value::new(int(0), vec![int(1)])).map_err(|e| e.to_string())?), PointType::III),
        (BerkovichPoint::Disk(DiskPoint::new(k.clone(), elem(&[int(1)]), Value::zero()).map_err(|e| e.to_string())?), PointType::I),
        (
            BerkovichPoint::Prefix(
                NestedPrefix::new(
                    [(vec![int(1)], 1), (vec![int(1), int(2)], 2), (vec![int(1), int(2), rat(7, 2)], 3)]
                        .into_iter()
                        .map(|(c, r)| DiskPoint::new(k.clone(), elem(&c), Value::t_power(int(r), 0)).expect("disk"))
                        .collect(),
                )
                .map_err(|e| e.to_string())?,
            ),
            PointType::IvCandidate,
        ),
    ];
    for (i, (pt, want)) in cases.iter().enumerate() {
        let got = classify(pt);
        ensure(got == *want, || format!("case {}: got {got}, expected {want}", i + 1))?;
    }
    Ok("II, III, I, IV-candidate".into())
}

fn abhyankar_bookkeeping() -> Outcome {
    let pr = free(2, 2);
    let gauss = [Value::new(int(0), vec![int(1), int(0)]), Value::new(int(0), vec![int(0), int(1)]), Value::t_power(rat(1, 2), 2)];
    let coords: Vec<CoordinateSpec> = gauss.iter().cloned().map(CoordinateSpec::Gauss).collect();
    let all = TowerPoint::new(pr.clone(), coords.clone()).map_err(|e| e.to_string())?;
    ensure(d_k(&all) == 3 && is_abhyankar(&all), || format!("all-Gauss tower: d_K = {}", d_k(&all)))?;
    let disks = (1..=3).map(|r| DiskPoint::gauss(pr.clone(), Value::t_power(int(r), 2)).expect("disk")).collect();
    let mut mixed = coords;
    mixed[1] = CoordinateSpec::TypeIV(NestedPrefix::new(disks).map_err(|e| e.to_string())?);
    let mixed = TowerPoint::new(pr, mixed).map_err(|e| e.to_string())?;
    let fact = factor_temkin(&mixed);
    ensure(d_k(&mixed) == 2 && !is_abhyankar(&mixed), || format!("mixed tower: d_K = {}", d_k(&mixed)))?;
    ensure(fact.l() == 2 && fact.remainder_semi_immediate(), || format!("factorization keeps {} Gauss coordinates", fact.l()))?;
    for l in 1..=3 {
        ensure(check_main_theorem_bound(l + 2, l).map_err(|e| e.to_string())?, || format!("bound fails for l = {l}"))?;
    }
    Ok("d_K 3 → 2, |B| = 2, bound for l = 1, 2, 3".into())
}

fn semi_immediate() -> Outcome {
    let pr = free(2, 1);
    let k = FieldDescriptor::base(pr.clone());
    let kr = FieldDescriptor::gauss_field(pr, &[Value::new(int(0), vec![int(1)])]).map_err(|e| e.to_string())?;
    let cases = [(&kr, &k, false), (&k, &k, true), (&kr.completed_perfection(), &kr, true)];
    for (i, (l, l0, want)) in cases.iter().enumerate() {
        let got = is_semi_immediate(l, l0).map_err(|e| e.to_string())?;
        ensure(got == *want, || format!("case {}: got {got}", i + 1))?;
    }
    Ok("false, true, true".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("norm multiplicativity", norm_multiplicativity),
        ("leading-term uniqueness", leading_uniqueness),
        ("inversion", inversion),
        ("frobenius / pth_root round trip", frobenius_roundtrip),
        ("gleason schedule adaptedness", gleason_adaptedness),
        ("division convergence", division_convergence),
        ("end-to-end surjectivity", surjectivity),
        ("classification golden cases", classification),
        ("abhyankar bookkeeping", abhyankar_bookkeeping),
        ("semi-immediate detector", semi_immediate),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] criterion {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
