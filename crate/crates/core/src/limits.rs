//! Flat limits of point configurations over a discrete valuation ring, and a
//! brute-force check that the stable limit is unique.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::base::{BaseTuple, NormalForm};
use crate::complex::{refines, ExpandedFibre};
use crate::configuration::{
    is_admissible, is_sws_stable, level_occupied, place, place_on_normal_form, stability_report,
    DriftCoordinate, PointConfiguration, StabilityReport, SupportPoint,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub base_tuple: BaseTuple,
    pub fibre: ExpandedFibre,
    pub configuration: PointConfiguration,
    pub stability: StabilityReport,
}

impl LimitReport {
    fn new(configuration: PointConfiguration) -> Self {
        LimitReport {
            base_tuple: configuration.presentation().clone(),
            fibre: configuration.fibre().clone(),
            stability: stability_report(&configuration),
            configuration,
        }
    }

    pub fn normal_form(&self) -> &NormalForm {
        self.fibre.normal_form()
    }
}

fn check_heights(points: &[SupportPoint], k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("height must be positive".to_string()));
    }
    if let Some(p) = points.iter().find(|p| p.position.height() != k) {
        return Err(Error::HeightMismatch {
            expected: k,
            found: p.position.height(),
        });
    }
    Ok(())
}

/// Distinct values `a` and `k - b` over all points, including `0` and `k`.
fn candidate_levels(points: &[SupportPoint], k: u64) -> BTreeSet<u64> {
    points
        .iter()
        .flat_map(|p| [p.position.a, k - p.position.b])
        .collect()
}

/// Stable limit of a family of points with the given valuations.
///
/// The base tuple has one entry per distinct candidate level, so a point with
/// `a = 0` or `b = k` produces a leading or trailing unit direction that the
/// normal form then drops.
pub fn flat_limit(points: &[SupportPoint], k: u64) -> Result<LimitReport> {
    check_heights(points, k)?;
    let levels = candidate_levels(points, k);
    let exponents = if levels.is_empty() {
        vec![k]
    } else {
        let mut out = Vec::with_capacity(levels.len() + 1);
        let mut prev = 0;
        for &e in &levels {
            out.push(e - prev);
            prev = e;
        }
        out.push(k - prev);
        out
    };
    let tuple = BaseTuple::new(exponents)?;
    Ok(LimitReport::new(place(&tuple, points.to_vec())?))
}

/// Bounds for [`unique_stable_subdivision_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_k: u64,
    pub max_m: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_k: 8, max_m: 4 }
    }
}

/// Every cut set on which the points sit at vertices with each level
/// occupied, in lexicographic order.
pub fn unique_stable_subdivision_oracle(
    points: &[SupportPoint],
    k: u64,
    limits: OracleLimits,
) -> Result<Vec<NormalForm>> {
    check_heights(points, k)?;
    let m: u64 = points.iter().map(|p| p.mult).sum();
    if k > limits.max_k || m > limits.max_m {
        return Err(Error::RefuseBruteForce(format!(
            "k = {k}, m = {m} exceeds the limits k ≤ {}, m ≤ {}",
            limits.max_k, limits.max_m
        )));
    }
    let inner = k - 1;
    let mut found = Vec::new();
    for mask in 0u64..(1 << inner) {
        let cuts: Vec<u64> = (1..k).filter(|s| mask & (1 << (s - 1)) != 0).collect();
        if !cuts.iter().all(|&s| level_occupied(points, k, s)) {
            continue;
        }
        let nf = NormalForm::new(k, cuts)?;
        if is_admissible(&place_on_normal_form(&nf, points.to_vec())?) {
            found.push(nf);
        }
    }
    found.sort_by(|x, y| x.cuts().cmp(y.cuts()));
    Ok(found)
}

/// The flat limit of `points`, checked to subdivide the fibre `coarse` they
/// are meant to extend. Heights may differ; both sides are compared at their
/// least common multiple.
pub fn associated_pair(
    points: &[SupportPoint],
    k: u64,
    coarse: &NormalForm,
) -> Result<LimitReport> {
    let report = flat_limit(points, k)?;
    if !refines(report.normal_form(), coarse) {
        let (fine, coarse) = report.normal_form().to_common_height(coarse);
        return Err(Error::TropicalIncompatibility {
            fine: fine.cuts().to_vec(),
            fine_height: fine.height(),
            coarse: coarse.cuts().to_vec(),
            coarse_height: coarse.height(),
        });
    }
    Ok(report)
}

/// Extends a stable configuration over the generic fibre to the special one.
///
/// With refined valuations at a height divisible by the configuration's, the
/// extension is their associated pair. Without them, points sharing a vertex
/// must drift along the same coordinates; the configuration is then its own
/// limit.
pub fn extend_special(
    cfg: &PointConfiguration,
    refined: Option<(&[SupportPoint], u64)>,
) -> Result<LimitReport> {
    if !is_sws_stable(cfg) {
        return Err(Error::InvalidInput(
            "the configuration over the generic fibre is not stable".to_string(),
        ));
    }
    let coarse = cfg.fibre().normal_form();
    match refined {
        Some((points, k)) => {
            if k % coarse.height() != 0 {
                return Err(Error::HeightMismatch {
                    expected: coarse.height(),
                    found: k,
                });
            }
            associated_pair(points, k, coarse)
        }
        None => {
            let mut profiles: Vec<(_, BTreeSet<DriftCoordinate>)> = Vec::new();
            for (p, loc) in cfg.points().iter().zip(cfg.placements()) {
                let drift: BTreeSet<_> = p.drift.iter().copied().collect();
                match profiles.iter().find(|(l, _)| l == loc) {
                    Some((_, seen)) if *seen != drift => return Err(Error::NeedsRefinedInput),
                    Some(_) => {}
                    None => profiles.push((*loc, drift)),
                }
            }
            Ok(LimitReport::new(cfg.clone()))
        }
    }
}
