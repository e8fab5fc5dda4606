//! Zero-dimensional subschemes placed on expanded fibres, and the stability
//! notions that only depend on where their support sits.

use serde::{Deserialize, Serialize};

use crate::base::{BaseTuple, NormalForm};
use crate::complex::{build_fibre, ExpandedFibre, Location, TropPosition};
use crate::error::{Error, Result};
use crate::weights::{Family, LocalMonomialScheme};

/// One projective coordinate of a bubble that moves along the valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DriftCoordinate {
    pub family: Family,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportPoint {
    #[serde(rename = "val")]
    pub position: TropPosition,
    pub mult: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<LocalMonomialScheme>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub drift: Vec<DriftCoordinate>,
}

impl SupportPoint {
    pub fn new(val: [u64; 3], mult: u64) -> Self {
        SupportPoint {
            position: TropPosition::from(val),
            mult,
            scheme: None,
            drift: Vec::new(),
        }
    }

    pub fn with_scheme(mut self, scheme: LocalMonomialScheme) -> Self {
        self.scheme = Some(scheme);
        self
    }

    pub fn with_drift(mut self, drift: Vec<DriftCoordinate>) -> Self {
        self.drift = drift;
        self
    }

    pub fn scaled(&self, factor: u64) -> Self {
        SupportPoint {
            position: self.position.scaled(factor),
            ..self.clone()
        }
    }
}

/// Support points placed on the fibre over a chosen presentation of the base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationRepr", into = "ConfigurationRepr")]
pub struct PointConfiguration {
    presentation: BaseTuple,
    fibre: ExpandedFibre,
    points: Vec<SupportPoint>,
    placements: Vec<Location>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationRepr {
    presentation: BaseTuple,
    points: Vec<SupportPoint>,
    placements: Vec<Location>,
}

impl TryFrom<ConfigurationRepr> for PointConfiguration {
    type Error = Error;

    fn try_from(r: ConfigurationRepr) -> Result<Self> {
        let cfg = place(&r.presentation, r.points)?;
        if cfg.placements != r.placements {
            return Err(Error::InvalidInput(
                "placements disagree with the fibre".to_string(),
            ));
        }
        Ok(cfg)
    }
}

impl From<PointConfiguration> for ConfigurationRepr {
    fn from(c: PointConfiguration) -> Self {
        ConfigurationRepr {
            presentation: c.presentation,
            points: c.points,
            placements: c.placements,
        }
    }
}

impl PointConfiguration {
    pub fn presentation(&self) -> &BaseTuple {
        &self.presentation
    }

    pub fn fibre(&self) -> &ExpandedFibre {
        &self.fibre
    }

    pub fn points(&self) -> &[SupportPoint] {
        &self.points
    }

    pub fn placements(&self) -> &[Location] {
        &self.placements
    }

    pub fn height(&self) -> u64 {
        self.presentation.height()
    }

    /// Length of the subscheme.
    pub fn m(&self) -> u64 {
        self.points.iter().map(|p| p.mult).sum()
    }

    /// Number of torus factors of the presentation.
    pub fn n(&self) -> usize {
        self.presentation.n()
    }

    /// Partial sums of the presentation; see [`BaseTuple::levels`].
    pub fn levels(&self) -> Vec<u64> {
        self.presentation.levels()
    }
}

/// Places `points` on the fibre over `presentation`.
pub fn place(presentation: &BaseTuple, points: Vec<SupportPoint>) -> Result<PointConfiguration> {
    let nf = presentation.normal_form()?;
    let fibre = build_fibre(&nf);
    let placements = points
        .iter()
        .map(|p| fibre.locate(p.position))
        .collect::<Result<Vec<_>>>()?;
    for p in &points {
        if p.mult == 0 {
            return Err(Error::InvalidInput(format!(
                "point {:?} has multiplicity 0",
                <[u64; 3]>::from(p.position)
            )));
        }
        if let Some(scheme) = &p.scheme {
            scheme.validate(p.mult, presentation.n())?;
        }
    }
    Ok(PointConfiguration {
        presentation: presentation.clone(),
        fibre,
        points,
        placements,
    })
}

/// Places `points` on the canonical presentation of `nf`.
pub fn place_on_normal_form(
    nf: &NormalForm,
    points: Vec<SupportPoint>,
) -> Result<PointConfiguration> {
    place(&nf.canonical_tuple(), points)
}

/// No support point lies on a double curve or a triple point.
pub fn is_admissible(cfg: &PointConfiguration) -> bool {
    cfg.placements.iter().all(Location::is_vertex)
}

/// Whether some support point lies on the Δ1-component at `a = v` or on its
/// paired Δ2-component at `b = k - v`. For `v = k` this is the side `b = 0`
/// (Δ1 equals `Y1` and Δ2 equals `Y1 ∪ Y3`); for `v = 0` it is the side
/// `a = 0`.
pub fn level_occupied(points: &[SupportPoint], k: u64, v: u64) -> bool {
    points
        .iter()
        .any(|p| p.position.a == v || p.position.b == k - v)
}

/// 1-based indices of the presentation levels carrying no support point.
pub fn unoccupied_levels(cfg: &PointConfiguration) -> Vec<usize> {
    let k = cfg.height();
    cfg.levels()
        .into_iter()
        .enumerate()
        .filter(|&(_, v)| !level_occupied(&cfg.points, k, v))
        .map(|(j, _)| j + 1)
        .collect()
}

/// Number of expanded levels of the normalized fibre whose bubbles are all
/// empty; each contributes a one-dimensional stabilizer.
pub fn stabilizer_rank(cfg: &PointConfiguration) -> usize {
    let nf = cfg.fibre.normal_form();
    nf.cuts()
        .iter()
        .filter(|&&s| !level_occupied(&cfg.points, nf.height(), s))
        .count()
}

pub fn is_lw_stable(cfg: &PointConfiguration) -> bool {
    is_admissible(cfg) && stabilizer_rank(cfg) == 0
}

/// Every level of the presentation, expanded or not, carries a support point.
pub fn is_ws_stable(cfg: &PointConfiguration) -> bool {
    unoccupied_levels(cfg).is_empty()
}

pub fn is_sws_stable(cfg: &PointConfiguration) -> bool {
    is_admissible(cfg) && is_ws_stable(cfg)
}

/// Moves the configuration to the canonical presentation of its fibre. Point
/// positions are unchanged.
pub fn normalize_pair(cfg: &PointConfiguration) -> PointConfiguration {
    let presentation = cfg.fibre.normal_form().canonical_tuple();
    PointConfiguration {
        presentation,
        fibre: cfg.fibre.clone(),
        points: cfg.points.clone(),
        placements: cfg.placements.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub admissible: bool,
    pub stabilizer_rank: usize,
    pub lw_stable: bool,
    pub ws_stable: bool,
    pub sws_stable: bool,
    pub unoccupied_levels: Vec<usize>,
}

pub fn stability_report(cfg: &PointConfiguration) -> StabilityReport {
    let admissible = is_admissible(cfg);
    let stabilizer_rank = stabilizer_rank(cfg);
    let unoccupied_levels = unoccupied_levels(cfg);
    let ws_stable = unoccupied_levels.is_empty();
    StabilityReport {
        admissible,
        stabilizer_rank,
        lw_stable: admissible && stabilizer_rank == 0,
        ws_stable,
        sws_stable: admissible && ws_stable,
        unoccupied_levels,
    }
}
