//! Scenario files: a height, optionally a fibre, support points and weight
//! data.
//!
//! Valuations may be rational (`"1/2"` or `0.5`); every number in the file is
//! then multiplied by the least common denominator, which amounts to a finite
//! base change.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Deserialize;

use degen_core::{
    BaseTuple, DriftCoordinate, LevelLift, Linearization, LocalMonomialScheme, NormalForm,
    OneParamSubgroup, SupportPoint,
};

use crate::CliError;

type Q = Ratio<u64>;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Num {
    Int(u64),
    Float(f64),
    Str(String),
}

impl Num {
    fn value(&self) -> Result<Q, CliError> {
        match self {
            Num::Int(v) => Ok(Q::from_integer(*v)),
            Num::Float(f) => parse_decimal(&f.to_string()),
            Num::Str(s) => {
                let s = s.trim();
                match s.split_once('/') {
                    Some((p, q)) => {
                        let p: u64 = p.trim().parse().map_err(|_| bad_number(s))?;
                        let q: u64 = q.trim().parse().map_err(|_| bad_number(s))?;
                        if q == 0 {
                            return Err(bad_number(s));
                        }
                        Ok(Q::new(p, q))
                    }
                    None => parse_decimal(s),
                }
            }
        }
    }
}

fn bad_number(s: &str) -> CliError {
    CliError::Validation(format!("{s:?} is not a nonnegative rational number"))
}

fn parse_decimal(s: &str) -> Result<Q, CliError> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad_number(s));
    }
    let digits = format!("{int}{frac}");
    let num: u64 = digits.parse().map_err(|_| bad_number(s))?;
    let den = 10u64
        .checked_pow(frac.len() as u32)
        .ok_or_else(|| bad_number(s))?;
    Ok(Q::new(num, den))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    val: [Num; 3],
    #[serde(default = "one")]
    mult: u64,
    #[serde(default)]
    scheme: Option<LocalMonomialScheme>,
    #[serde(default)]
    drift: Vec<DriftCoordinate>,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawSubgroups {
    One(Vec<i64>),
    Many(Vec<Vec<i64>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRefined {
    #[serde(default)]
    height: Option<Num>,
    points: Vec<RawPoint>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    height: Option<Num>,
    #[serde(default)]
    cuts: Option<Vec<Num>>,
    #[serde(default)]
    tuple: Option<Vec<Num>>,
    /// `true` where the basis direction vanishes.
    #[serde(default)]
    pattern: Option<Vec<bool>>,
    #[serde(default)]
    points: Vec<RawPoint>,
    #[serde(default)]
    lin: Option<Vec<[u64; 4]>>,
    #[serde(default)]
    s: Option<RawSubgroups>,
    #[serde(default)]
    l: Option<u64>,
    #[serde(default)]
    refined: Option<RawRefined>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refined {
    pub height: u64,
    pub points: Vec<SupportPoint>,
}

/// A validated scenario with every number scaled to an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub height: u64,
    /// Factor applied to every number of the file.
    pub scale: u64,
    pub presentation: Option<BaseTuple>,
    pub points: Vec<SupportPoint>,
    pub lin: Option<Linearization>,
    pub s: Option<Vec<OneParamSubgroup>>,
    pub l: Option<u64>,
    pub refined: Option<Refined>,
    /// Height zero, accepted only with `allow_smooth`.
    pub smooth: bool,
}

impl Scenario {
    pub fn m(&self) -> u64 {
        self.points.iter().map(|p| p.mult).sum()
    }
}

fn to_int(q: Q, scale: u64) -> u64 {
    let v = q * Q::from_integer(scale);
    debug_assert!(v.is_integer());
    v.to_integer()
}

pub fn parse_scenario(text: &str, allow_smooth: bool) -> Result<Scenario, CliError> {
    let raw: RawScenario =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    validate(raw, allow_smooth)
}

fn rationals(nums: &[Num]) -> Result<Vec<Q>, CliError> {
    nums.iter().map(Num::value).collect()
}

fn raw_points(points: &[RawPoint]) -> Result<Vec<[Q; 3]>, CliError> {
    points
        .iter()
        .map(|p| {
            Ok([p.val[0].value()?, p.val[1].value()?, p.val[2].value()?])
        })
        .collect()
}

fn validate(raw: RawScenario, allow_smooth: bool) -> Result<Scenario, CliError> {
    let specs = [raw.cuts.is_some(), raw.tuple.is_some(), raw.pattern.is_some()];
    if specs.iter().filter(|&&b| b).count() > 1 {
        return Err(CliError::Validation(
            "give at most one of cuts, tuple and pattern".to_string(),
        ));
    }
    let height = raw.height.as_ref().map(Num::value).transpose()?;
    let cuts = raw.cuts.as_deref().map(rationals).transpose()?;
    let tuple = match (&raw.tuple, &raw.pattern) {
        (Some(t), _) => Some(rationals(t)?),
        (None, Some(p)) => Some(
            p.iter()
                .map(|&v| Q::from_integer(u64::from(v)))
                .collect(),
        ),
        _ => None,
    };
    let vals = raw_points(&raw.points)?;
    let refined_height = raw
        .refined
        .as_ref()
        .and_then(|r| r.height.as_ref())
        .map(Num::value)
        .transpose()?;
    let refined_vals = raw
        .refined
        .as_ref()
        .map(|r| raw_points(&r.points))
        .transpose()?;

    let height = match (height, &tuple, vals.first()) {
        (Some(h), _, _) => h,
        (None, Some(t), _) => t.iter().copied().sum(),
        (None, None, Some(v)) => v.iter().copied().sum(),
        (None, None, None) => {
            return Err(CliError::Validation(
                "no height: give height, a tuple or at least one point".to_string(),
            ))
        }
    };

    let scale = std::iter::once(height)
        .chain(cuts.iter().flatten().copied())
        .chain(tuple.iter().flatten().copied())
        .chain(vals.iter().flatten().copied())
        .chain(refined_height)
        .chain(refined_vals.iter().flatten().flatten().copied())
        .fold(1u64, |acc, q| acc.lcm(q.denom()));

    if let Some(t) = &tuple {
        let sum: Q = t.iter().copied().sum();
        if sum != height {
            return Err(CliError::Validation(format!(
                "tuple sums to {sum}, height is {height}"
            )));
        }
    }
    for (i, v) in vals.iter().enumerate() {
        let sum: Q = v.iter().copied().sum();
        if sum != height {
            return Err(CliError::Validation(format!(
                "point {}: valuations sum to {sum}, height is {height}",
                i + 1
            )));
        }
    }

    let k = to_int(height, scale);
    if k == 0 {
        if !allow_smooth {
            return Err(CliError::Validation(
                "height 0 is a smooth fibre; pass --allow-smooth to accept it".to_string(),
            ));
        }
        return Ok(Scenario {
            height: 0,
            scale,
            presentation: None,
            points: Vec::new(),
            lin: None,
            s: None,
            l: raw.l,
            refined: None,
            smooth: true,
        });
    }

    let presentation = match (cuts, tuple) {
        (Some(c), _) => {
            let c = c.into_iter().map(|q| to_int(q, scale)).collect();
            let nf = NormalForm::new(k, c).map_err(|e| CliError::Validation(e.to_string()))?;
            Some(nf.canonical_tuple())
        }
        (None, Some(t)) => Some(
            BaseTuple::new(t.into_iter().map(|q| to_int(q, scale)).collect())
                .map_err(|e| CliError::Validation(e.to_string()))?,
        ),
        _ => None,
    };

    let points = build_points(raw.points, &vals, scale)?;
    let refined = match (raw.refined, refined_vals) {
        (Some(r), Some(rv)) => {
            let h = match refined_height {
                Some(h) => h,
                None => rv
                    .first()
                    .map(|v| v.iter().copied().sum())
                    .ok_or_else(|| {
                        CliError::Validation("refined block has no height and no points".into())
                    })?,
            };
            for (i, v) in rv.iter().enumerate() {
                let sum: Q = v.iter().copied().sum();
                if sum != h {
                    return Err(CliError::Validation(format!(
                        "refined point {}: valuations sum to {sum}, refined height is {h}",
                        i + 1
                    )));
                }
            }
            Some(Refined {
                height: to_int(h, scale),
                points: build_points(r.points, &rv, scale)?,
            })
        }
        _ => None,
    };

    let lin = raw
        .lin
        .map(|l| Linearization::new(l.into_iter().map(LevelLift::from).collect()))
        .transpose()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let s = raw.s.map(|s| match s {
        RawSubgroups::One(v) => vec![OneParamSubgroup(v)],
        RawSubgroups::Many(v) => v.into_iter().map(OneParamSubgroup).collect(),
    });
    if let (Some(p), Some(s)) = (&presentation, &s) {
        if let Some(bad) = s.iter().find(|s| s.len() != p.n()) {
            return Err(CliError::Validation(format!(
                "weight vector {:?} has length {}, the presentation has n = {}",
                bad.0,
                bad.len(),
                p.n()
            )));
        }
    }

    Ok(Scenario {
        height: k,
        scale,
        presentation,
        points,
        lin,
        s,
        l: raw.l,
        refined,
        smooth: false,
    })
}

fn build_points(
    raw: Vec<RawPoint>,
    vals: &[[Q; 3]],
    scale: u64,
) -> Result<Vec<SupportPoint>, CliError> {
    raw.into_iter()
        .zip(vals)
        .enumerate()
        .map(|(i, (p, v))| {
            if p.mult == 0 {
                return Err(CliError::Validation(format!(
                    "point {} has multiplicity 0",
                    i + 1
                )));
            }
            let mut sp = SupportPoint::new(v.map(|q| to_int(q, scale)), p.mult);
            sp.scheme = p.scheme;
            sp.drift = p.drift;
            Ok(sp)
        })
        .collect()
}
