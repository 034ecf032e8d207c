//! JSON interchange for profiles, values, elements, points, towers and schedules.
//!
//! Rationals are strings (`"3"`, `"-1/2"`, `"5/2^3"`). A value is
//! `{"a": "3/2", "q": ["1"]}` or `{"zero": true}`. A series is
//! `{"floor": value?, "terms": [{"t": "1/2", "x": ["-1"], "c": 1}]}`, with an
//! optional `"profile"` overriding the ambient one.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abhyankar::{CoordinateSpec, TowerPoint};
use crate::adapted::AdaptedCertificate;
use crate::berkovich::{BerkovichPoint, DiskPoint, NestedPrefix};
use crate::error::{Error, Result};
use crate::exponent::{fmt_rat, parse_rat, Rat};
use crate::gleason::{Basis, ConditionChecks, GleasonBuild};
use crate::series::{Monomial, SeriesElement};
use crate::tatealg::TateElement;
use crate::valuegroup::{default_sigma, RadiusProfile, RadiusSpec, Value, DEFAULT_MAX_DENOM_LOG};

fn rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusDto {
    Free(u64),
    Rational(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDto {
    pub p: u32,
    #[serde(default)]
    pub radii: Vec<RadiusDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_exponent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_denom_log: Option<u32>,
}

impl ProfileDto {
    pub fn to_profile(&self) -> Result<RadiusProfile> {
        let radii = self
            .radii
            .iter()
            .map(|r| match r {
                RadiusDto::Free(d) => Ok(RadiusSpec::FreeIrrational(*d)),
                RadiusDto::Rational(e) => Ok(RadiusSpec::Rational(parse_rat(e)?)),
            })
            .collect::<Result<Vec<_>>>()?;
        let sigma = match &self.s_exponent {
            Some(s) => parse_rat(s)?,
            None => default_sigma(&radii),
        };
        RadiusProfile::with_cap(self.p, radii, sigma, self.max_denom_log.unwrap_or(DEFAULT_MAX_DENOM_LOG))
    }

    pub fn from_profile(p: &RadiusProfile) -> Self {
        ProfileDto {
            p: p.p(),
            radii: p
                .radii()
                .iter()
                .map(|r| match r {
                    RadiusSpec::FreeIrrational(d) => RadiusDto::Free(*d),
                    RadiusSpec::Rational(e) => RadiusDto::Rational(fmt_rat(e)),
                })
                .collect(),
            s_exponent: Some(fmt_rat(p.s_exponent())),
            max_denom_log: Some(p.max_denom_log()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueDto {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub zero: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub a: String,
    #[serde(default)]
    pub q: Vec<String>,
}

impl ValueDto {
    pub fn to_value(&self) -> Result<Value> {
        if self.zero {
            return Ok(Value::zero());
        }
        let a = if self.a.is_empty() { Rat::from_integer(0.into()) } else { parse_rat(&self.a)? };
        Ok(Value::new(a, rats(&self.q)?))
    }

    pub fn from_value(v: &Value) -> Self {
        if v.is_zero() {
            ValueDto { zero: true, a: String::new(), q: Vec::new() }
        } else {
            ValueDto { zero: false, a: fmt_rat(v.a()), q: strs(v.q()) }
        }
    }

    /// Pads a bare `t`-power to dimension `n`.
    pub fn to_value_dim(&self, n: usize) -> Result<Value> {
        let v = self.to_value()?;
        if !v.is_zero() && v.q().is_empty() && n > 0 {
            return v.embed(n);
        }
        Ok(v)
    }
}

fn default_coeff() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub t: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub x: Vec<String>,
    #[serde(default = "default_coeff")]
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floor: Option<ValueDto>,
    #[serde(default)]
    pub terms: Vec<TermDto>,
}

impl SeriesDto {
    /// Resolves against `ambient` unless the element names its own profile.
    pub fn to_series(&self, ambient: Option<&Arc<RadiusProfile>>) -> Result<SeriesElement> {
        let profile = match (&self.profile, ambient) {
            (Some(p), Some(a)) => {
                let own = p.to_profile()?;
                if own == **a {
                    a.clone()
                } else {
                    Arc::new(own)
                }
            }
            (Some(p), None) => Arc::new(p.to_profile()?),
            (None, Some(a)) => a.clone(),
            (None, None) => return Err(Error::Parse("element has no profile".into())),
        };
        let n = profile.n();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            let x = if t.x.is_empty() && n > 0 { vec![Rat::from_integer(0.into()); n] } else { rats(&t.x)? };
            if x.len() != n {
                return Err(Error::Parse(format!("term {} has {} x-exponents, profile has {n} radii", i + 1, x.len())));
            }
            terms.push((Monomial::new(parse_rat(&t.t)?, x), t.c));
        }
        let floor = match &self.floor {
            Some(f) => f.to_value_dim(n)?,
            None => Value::zero(),
        };
        SeriesElement::new(profile, terms, floor)
    }

    pub fn from_series(f: &SeriesElement, with_profile: bool) -> Self {
        SeriesDto {
            profile: with_profile.then(|| ProfileDto::from_profile(f.profile())),
            floor: (!f.floor().is_zero()).then(|| ValueDto::from_value(f.floor())),
            terms: f.sorted_terms().into_iter().map(|(m, c)| TermDto { t: fmt_rat(&m.t), x: strs(&m.x), c: c as i64 }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateTermDto {
    pub e: Vec<String>,
    pub coeff: Vec<TermDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateDto {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floor: Option<String>,
    pub terms: Vec<TateTermDto>,
}

impl TateDto {
    pub fn from_tate(f: &TateElement) -> Self {
        TateDto {
            m: f.m(),
            floor: (!f.floor().is_zero()).then(|| fmt_rat(f.floor().a())),
            terms: f.terms().iter().map(|(e, c)| TateTermDto { e: strs(e), coeff: SeriesDto::from_series(c, false).terms }).collect(),
        }
    }

    pub fn to_tate(&self, base: &Arc<RadiusProfile>) -> Result<TateElement> {
        let floor = match &self.floor {
            Some(a) => Value::t_power(parse_rat(a)?, 0),
            None => Value::zero(),
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = SeriesDto { profile: None, floor: None, terms: t.coeff.clone() }.to_series(Some(base))?;
            terms.push((rats(&t.e)?, c));
        }
        TateElement::new(base.clone(), self.m, terms, floor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskDto {
    #[serde(default)]
    pub center: Vec<TermDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_floor: Option<String>,
    pub radius: ValueDto,
}

impl DiskDto {
    fn to_disk(&self, profile: &Arc<RadiusProfile>) -> Result<DiskPoint> {
        let base = Arc::new(profile.base());
        let dto = SeriesDto {
            profile: None,
            floor: self.center_floor.as_ref().map(|a| ValueDto { zero: false, a: a.clone(), q: Vec::new() }),
            terms: self.center.clone(),
        };
        let center = dto.to_series(Some(&base))?;
        DiskPoint::new(profile.clone(), center, self.radius.to_value_dim(profile.n())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKindDto {
    Disk(DiskDto),
    Prefix(Vec<DiskDto>),
}

/// `{"profile": …, "point": {"disk": {…}}}` or `{"point": {"prefix": [ … ]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDto {
    pub profile: ProfileDto,
    pub point: PointKindDto,
}

impl PointDto {
    pub fn to_point(&self) -> Result<BerkovichPoint> {
        let profile = Arc::new(self.profile.to_profile()?);
        Ok(match &self.point {
            PointKindDto::Disk(d) => BerkovichPoint::Disk(d.to_disk(&profile)?),
            PointKindDto::Prefix(ds) => BerkovichPoint::Prefix(NestedPrefix::new(ds.iter().map(|d| d.to_disk(&profile)).collect::<Result<_>>()?)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordinateDto {
    Gauss(ValueDto),
    TypeIv(Vec<DiskDto>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDto {
    pub profile: ProfileDto,
    pub coords: Vec<CoordinateDto>,
}

impl TowerDto {
    pub fn to_tower(&self) -> Result<TowerPoint> {
        let profile = Arc::new(self.profile.to_profile()?);
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            coords.push(match c {
                CoordinateDto::Gauss(v) => CoordinateSpec::Gauss(v.to_value_dim(profile.n())?),
                CoordinateDto::TypeIv(ds) => {
                    CoordinateSpec::TypeIV(NestedPrefix::new(ds.iter().map(|d| d.to_disk(&profile)).collect::<Result<_>>()?)?)
                }
            });
        }
        TowerPoint::new(profile, coords)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub q: Vec<String>,
    pub passed: bool,
    pub norm_window: bool,
    pub argnorm: bool,
    pub tail: bool,
    pub norm: Option<ValueDto>,
    pub tail_norm: Option<ValueDto>,
    pub b_q: Vec<TermDto>,
}

impl CertificateDto {
    pub fn from_certificate(c: &AdaptedCertificate) -> Self {
        CertificateDto {
            q: strs(&c.q),
            passed: c.passed(),
            norm_window: c.checks.norm_window,
            argnorm: c.checks.argnorm,
            tail: c.checks.tail,
            norm: c.norm.as_ref().map(ValueDto::from_value),
            tail_norm: c.tail_norm.as_ref().map(ValueDto::from_value),
            b_q: SeriesDto::from_series(&c.b_q, false).terms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepDto {
    pub m: usize,
    pub omega: Vec<String>,
    pub h: Vec<String>,
    /// `W_m = t^{w_t} x^{ω(m)}`.
    pub w_t: String,
    pub e_t: String,
    pub epsilon_t: String,
    pub b: u32,
    /// `t`-exponents of `d_{m,i}`, `i < m`.
    pub d: Vec<String>,
    pub conditions: ConditionChecks,
    pub certificate: CertificateDto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleDto {
    pub profile: ProfileDto,
    pub basis: BasisDto,
    pub theta: String,
    pub tail_gap: u32,
    pub depth: usize,
    pub steps: Vec<StepDto>,
    pub element: SeriesDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preimage: Option<TateDto>,
    pub all_passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisDto {
    Cone(Vec<TermDto>),
    Lattice { c: String },
}

impl ScheduleDto {
    pub fn from_build(b: &GleasonBuild, preimage: Option<&TateElement>) -> Self {
        let s = &b.schedule;
        let basis = match s.basis() {
            Basis::Cone { generators } => BasisDto::Cone(generators.iter().map(|g| TermDto { t: fmt_rat(&g.t), x: strs(&g.x), c: 1 }).collect()),
            Basis::Lattice { c_exp } => BasisDto::Lattice { c: fmt_rat(c_exp) },
        };
        let steps = s
            .steps()
            .iter()
            .enumerate()
            .map(|(i, st)| {
                let m = i + 1;
                StepDto {
                    m,
                    omega: strs(&st.omega),
                    h: strs(&st.h),
                    w_t: fmt_rat(&st.w_t),
                    e_t: fmt_rat(&st.e_t),
                    epsilon_t: fmt_rat(&st.delta),
                    b: st.b,
                    d: (1..m).map(|j| fmt_rat(&s.d(m, j))).collect(),
                    conditions: st.conditions.clone(),
                    certificate: CertificateDto::from_certificate(&b.certificates[i]),
                }
            })
            .collect();
        ScheduleDto {
            profile: ProfileDto::from_profile(s.profile()),
            basis,
            theta: fmt_rat(&s.options().theta),
            tail_gap: s.options().tail_gap,
            depth: s.depth(),
            steps,
            element: SeriesDto::from_series(&b.element, false),
            preimage: preimage.map(TateDto::from_tate),
            all_passed: b.all_passed(),
        }
    }
}

/// Reads JSON, reporting the line and column of syntax errors.
pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn to_string_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("DTOs serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::int;

    #[test]
    fn series_round_trip() {
        let prof = Arc::new(RadiusProfile::free(2, 1).unwrap());
        let f = SeriesElement::new(
            prof.clone(),
            [(Monomial::new(int(1), vec![int(-1)]), 1), (Monomial::new(int(3), vec![int(2)]), 1)],
            Value::t_power(int(9), 1),
        )
        .unwrap();
        let text = to_string_pretty(&SeriesDto::from_series(&f, true));
        let back = from_str::<SeriesDto>(&text).unwrap().to_series(None).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = from_str::<SeriesDto>("{\n  \"terms\": [\n    {\"t\": 1}\n  ]\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn point_file() {
        let text = r#"{"profile": {"p": 2, "radii": [{"free": 2}]}, "point": {"disk": {"radius": {"a": "0", "q": ["1"]}}}}"#;
        let pt = from_str::<PointDto>(text).unwrap().to_point().unwrap();
        assert_eq!(crate::berkovich::classify(&pt).to_string(), "III");
    }
}
