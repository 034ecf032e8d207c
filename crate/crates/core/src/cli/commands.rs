use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::abhyankar::{check_main_theorem_bound, d_k, factor_temkin, is_abhyankar};
use crate::berkovich::classify;
use crate::error::Error;
use crate::exponent::{int, parse_rat, Rat};
use crate::gleason::schedule::pick_t_exponent;
use crate::gleason::{
    build_gminus, build_gmultivar, build_gplus, build_lattice, reconstruct_preimage, standard_surjection, AdaptedOracle, GleasonBuild,
    ScheduleOptions, SurjectionOptions,
};
use crate::json::{self, PointDto, ScheduleDto, SeriesDto, TowerDto, ValueDto};
use crate::random::{random_in_window, seeded};
use crate::series::{Monomial, SeriesElement};
use crate::tatealg::evaluate;
use crate::valuegroup::{RadiusProfile, Value};

use super::config::{Config, Overrides, Settings};
use super::{Cli, CliError, Command, GleasonCommand, GleasonKind};

type CliResult<T> = std::result::Result<T, CliError>;

pub(super) fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Norm { file, minus_one } => norm(cli, file, *minus_one),
        Command::Invert { file, floor } => invert(cli, file, floor),
        Command::Mul { a, b } => mul(cli, a, b),
        Command::Classify { file } => {
            let pt = json::from_str::<PointDto>(&read(file)?)?.to_point()?;
            emit(cli, &format!("{}\n", classify(&pt)))
        }
        Command::Abhyankar { file, n_vars, l } => abhyankar(cli, file.as_deref(), *n_vars, *l),
        Command::Gleason { action: GleasonCommand::Build { n, p, kind, c } } => gleason_build(cli, *n, *p, *kind, c.as_deref()),
        Command::SurjectVerify { tsv } => surject_verify(cli, tsv.as_deref()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(cli: &Cli, v: &T) -> CliResult<()> {
    let mut text = json::to_string_pretty(v);
    text.push('\n');
    emit(cli, &text)
}

fn element(path: &Path, ambient: Option<&Arc<RadiusProfile>>) -> CliResult<SeriesElement> {
    let dto: SeriesDto = json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(dto.to_series(ambient)?)
}

fn settings(cli: &Cli, ov: Overrides) -> CliResult<Settings> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    Ok(Settings::resolve(&cfg, &Overrides { depth: cli.depth, trials: cli.trials, seed: cli.seed, ..ov })?)
}

fn norm(cli: &Cli, file: &Path, minus_one: bool) -> CliResult<()> {
    let mut f = element(file, None)?;
    if minus_one {
        f = f.sub(&SeriesElement::one(f.profile().clone()))?;
    }
    let text = match f.gauss_norm() {
        Some(v) => v.to_string(),
        None if f.is_exact() => "0".to_string(),
        None => format!("< {}", f.floor()),
    };
    emit(cli, &format!("{text}\n"))
}

fn invert(cli: &Cli, file: &Path, floor: &str) -> CliResult<()> {
    let f = element(file, None)?;
    let target = Value::t_power(parse_rat(floor)?, f.n());
    let g = f.invert(&target)?;
    emit_json(cli, &SeriesDto::from_series(&g, true))
}

fn mul(cli: &Cli, a: &Path, b: &Path) -> CliResult<()> {
    let f = element(a, None)?;
    let g = element(b, Some(f.profile()))?;
    emit_json(cli, &SeriesDto::from_series(&f.mul(&g)?, true))
}

#[derive(Serialize)]
struct BoundReport {
    n_vars: usize,
    l: usize,
    holds: bool,
}

#[derive(Serialize)]
struct AbhyankarReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_abhyankar: Option<bool>,
    /// 0-based indices of the Gauss coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    gauss_indices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    polyradius: Option<Vec<ValueDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    remainder_semi_immediate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<BoundReport>,
}

fn abhyankar(cli: &Cli, file: Option<&Path>, n_vars: Option<usize>, l: Option<usize>) -> CliResult<()> {
    let mut report = AbhyankarReport {
        m: None,
        d_k: None,
        is_abhyankar: None,
        gauss_indices: None,
        polyradius: None,
        remainder_semi_immediate: None,
        bound: None,
    };
    let mut tower_l = None;
    if let Some(path) = file {
        let tower = json::from_str::<TowerDto>(&read(path)?)?.to_tower()?;
        let fac = factor_temkin(&tower);
        tower_l = Some(fac.l());
        report.m = Some(tower.m());
        report.d_k = Some(d_k(&tower));
        report.is_abhyankar = Some(is_abhyankar(&tower));
        report.remainder_semi_immediate = Some(fac.remainder_semi_immediate());
        report.polyradius = Some(fac.polyradius.iter().map(ValueDto::from_value).collect());
        report.gauss_indices = Some(fac.gauss_indices);
    }
    if let Some(nv) = n_vars {
        let l = l.or(tower_l).ok_or_else(|| CliError::Input("--n-vars needs --l or a tower file".into()))?;
        report.bound = Some(BoundReport { n_vars: nv, l, holds: check_main_theorem_bound(nv, l)? });
    } else if file.is_none() {
        return Err(CliError::Input("give a tower file or --n-vars".into()));
    }
    emit_json(cli, &report)?;
    match &report.bound {
        Some(b) if !b.holds => Err(CliError::Verification(format!("l = {} exceeds n_vars − 1 = {}", b.l, b.n_vars - 1))),
        _ => Ok(()),
    }
}

fn gleason_build(cli: &Cli, n: usize, p: Option<u32>, kind: Option<GleasonKind>, c: Option<&str>) -> CliResult<()> {
    let s = settings(cli, Overrides { p, n: Some(n), ..Overrides::default() })?;
    let depth = s.explicit_depth.unwrap_or(10);
    let profile = s.profile.clone();
    let kind = kind.unwrap_or(if profile.n() == 1 { GleasonKind::Plus } else { GleasonKind::Cone });
    let options = ScheduleOptions { theta: s.theta.clone(), tail_gap: s.schedule_tail_gap, ..ScheduleOptions::default() };
    let c_exp = || -> CliResult<Rat> {
        if let Some(c) = c {
            return Ok(parse_rat(c)?);
        }
        if let Some(c) = &s.c_exp {
            return Ok(c.clone());
        }
        let inv = Value::new(int(0), vec![int(-1); profile.n()]);
        Ok(pick_t_exponent(&profile, &profile.s(), &Value::one(profile.n()), &inv, &s.theta)?)
    };
    let (build, pre): (GleasonBuild, _) = match kind {
        GleasonKind::Plus => (build_gplus(profile.clone(), depth, options)?, None),
        GleasonKind::Cone => {
            let gens = (0..profile.n())
                .map(|i| {
                    let mut x = vec![int(0); profile.n()];
                    x[i] = int(1);
                    Monomial::new(int(0), x)
                })
                .collect();
            (build_gmultivar(profile.clone(), gens, depth, options)?, None)
        }
        GleasonKind::Minus => {
            let (b, pre) = build_gminus(profile.clone(), c_exp()?, depth, options)?;
            (b, Some(pre))
        }
        GleasonKind::Lattice => (build_lattice(profile.clone(), c_exp()?, depth, options)?, None),
    };
    emit_json(cli, &ScheduleDto::from_build(&build, pre.as_ref()))
}

fn digest(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    h.finalize().iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Serialize)]
struct TrialRecord {
    trial: usize,
    input_digest: String,
    status: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    rescale: Option<i64>,
    residual_bounds: Vec<ValueDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    preimage_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    final_error: Option<ValueDto>,
}

#[derive(Serialize)]
struct VerifyReport {
    config_digest: String,
    seed: u64,
    n: usize,
    depth: usize,
    steps: usize,
    c_exp: String,
    passed: usize,
    failed: usize,
    skipped: usize,
    records: Vec<TrialRecord>,
    wall_clock_ms: u128,
}

fn weight_cell(profile: &RadiusProfile, v: &Value) -> String {
    if v.is_zero() {
        "inf".to_string()
    } else {
        format!("{:.12}", profile.weight_f64(v))
    }
}

fn surject_verify(cli: &Cli, tsv: Option<&Path>) -> CliResult<()> {
    let start = Instant::now();
    let s = settings(cli, Overrides::default())?;
    let opts = SurjectionOptions { depth: s.depth, tail_gap: s.tail_gap, theta: s.theta.clone(), c_exp: s.c_exp.clone() };
    let mut spec = standard_surjection(s.profile.clone(), &opts)?;
    let profile = spec.profile().clone();
    let floor = s.floor.clone();
    let pool = spec.schedule().well_order().prefix(s.exponent_pool);
    let fixed = match &s.beta {
        Some(dto) => Some(dto.to_series(Some(&profile))?),
        None => None,
    };
    let mut rng = seeded(s.seed);
    let mut records = Vec::with_capacity(s.trials);
    let mut tsv_text = String::from("trial\tstep\tresidual_weight\n");
    for trial in 0..s.trials {
        let beta = match &fixed {
            Some(b) => b.clone(),
            None => random_in_window(&mut rng, &profile, &pool, s.terms, (&s.weight_range.0, &s.weight_range.1), 2, &floor)?,
        };
        let input_digest = digest(&serde_json::to_string(&SeriesDto::from_series(&beta, false)).expect("serializable"));
        let mut rec = TrialRecord {
            trial,
            input_digest,
            status: String::new(),
            passed: false,
            rescale: None,
            residual_bounds: Vec::new(),
            preimage_terms: None,
            final_error: None,
        };
        match reconstruct_preimage(&mut spec, &beta, s.steps) {
            Ok(r) => {
                let allowed = profile.s_times_varpi_pow(s.steps as i64 - r.rescale);
                let eval_floor = if beta.floor().is_zero() { allowed.clone() } else { profile.min(&allowed, beta.floor()).clone() };
                let tolerance = profile.max(&allowed, beta.floor()).clone();
                let back = evaluate(&r.preimage, spec.hom(), &eval_floor)?;
                let err = back.sub(&beta)?.norm_bound();
                let monotone = r.residual_bounds.windows(2).all(|w| profile.le(&w[1], &w[0]));
                rec.passed = monotone && profile.le(&err, &tolerance);
                rec.status = if rec.passed { "ok".into() } else { "residual bound violated".into() };
                for (m, b) in r.residual_bounds.iter().enumerate() {
                    let _ = writeln!(tsv_text, "{trial}\t{m}\t{}", weight_cell(&profile, b));
                }
                rec.rescale = Some(r.rescale);
                rec.residual_bounds = r.residual_bounds.iter().map(ValueDto::from_value).collect();
                rec.preimage_terms = Some(r.preimage.len());
                rec.final_error = Some(ValueDto::from_value(&err));
            }
            Err(e @ Error::DepthInsufficient { .. }) => rec.status = format!("skipped: {e}"),
            Err(e) => rec.status = format!("error: {e}"),
        }
        records.push(rec);
    }
    let skipped = records.iter().filter(|r| r.status.starts_with("skipped")).count();
    let passed = records.iter().filter(|r| r.passed).count();
    let failed = records.len() - passed - skipped;
    let cfg_text = match &cli.config {
        Some(p) => read(p)?,
        None => String::new(),
    };
    let report = VerifyReport {
        config_digest: digest(&cfg_text),
        seed: s.seed,
        n: profile.n(),
        depth: s.depth,
        steps: s.steps,
        c_exp: crate::exponent::fmt_rat(spec.c_exp()),
        passed,
        failed,
        skipped,
        records,
        wall_clock_ms: start.elapsed().as_millis(),
    };
    emit_json(cli, &report)?;
    let tsv_path: Option<PathBuf> = tsv.map(Path::to_path_buf).or_else(|| cli.out.as_ref().map(|p| p.with_extension("tsv")));
    if let Some(path) = tsv_path {
        std::fs::write(&path, tsv_text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    if failed > 0 {
        return Err(CliError::Verification(format!("{failed} of {} trials failed", report.records.len())));
    }
    Ok(())
}
