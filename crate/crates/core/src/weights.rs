//! Hilbert–Mumford weights for the torus `G = G_m^n` acting on a presentation.
//!
//! A one-parameter subgroup `λ_s` is an integer vector `s = (s_1, …, s_n)`.
//! Level `j` couples the Δ1-component at `a = v_j` with the Δ2-component at
//! `b = k - v_j`. Relative to the Δ1-component a point lies on the `(0:1)`
//! side when `a > v_j` (towards `Y1`) and on the `(1:0)` side when `a < v_j`;
//! relative to the Δ2-component it lies on the `(0:1)` side when `b > k - v_j`
//! (towards `Y2`).
//!
//! The invariant decomposes as `μ = μ_b + l · μ_c`. The combinatorial part
//! `μ_c` sums, over support points with multiplicity, the fibre weights of the
//! linearization at the limit point; the bounded part `μ_b` comes from the
//! monomial structure of each local scheme.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::base::VanishingPattern;
use crate::complex::TropPosition;
use crate::configuration::{unoccupied_levels, PointConfiguration};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OneParamSubgroup(pub Vec<i64>);

impl OneParamSubgroup {
    pub fn zero(n: usize) -> Self {
        OneParamSubgroup(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

/// Lift exponents for one level: `(x_0 : x_1) ↦ (τ^{a s} x_0 : τ^{-b s} x_1)`
/// on the Δ1 side and `(y_0 : y_1) ↦ (τ^{-c s} y_0 : τ^{d s} y_1)` on the Δ2
/// side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u64; 4]", into = "[u64; 4]")]
pub struct LevelLift {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl From<[u64; 4]> for LevelLift {
    fn from(v: [u64; 4]) -> Self {
        LevelLift {
            a: v[0],
            b: v[1],
            c: v[2],
            d: v[3],
        }
    }
}

impl From<LevelLift> for [u64; 4] {
    fn from(l: LevelLift) -> Self {
        [l.a, l.b, l.c, l.d]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<LevelLift>", into = "Vec<LevelLift>")]
pub struct Linearization {
    levels: Vec<LevelLift>,
}

impl TryFrom<Vec<LevelLift>> for Linearization {
    type Error = Error;

    fn try_from(levels: Vec<LevelLift>) -> Result<Self> {
        Linearization::new(levels)
    }
}

impl From<Linearization> for Vec<LevelLift> {
    fn from(l: Linearization) -> Self {
        l.levels
    }
}

impl Linearization {
    /// Each level needs `a + b ≥ 1` and `c + d ≥ 1` so both line bundles are
    /// ample on their `P^1`.
    pub fn new(levels: Vec<LevelLift>) -> Result<Self> {
        if let Some(j) = levels.iter().position(|l| l.a + l.b == 0 || l.c + l.d == 0) {
            return Err(Error::InvalidInput(format!(
                "level {} of the linearization has a zero degree",
                j + 1
            )));
        }
        Ok(Linearization { levels })
    }

    pub fn trivial() -> Self {
        Linearization { levels: Vec::new() }
    }

    pub fn levels(&self) -> &[LevelLift] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// Side of a support point relative to one component's `P^1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    OneZero,
    ZeroOne,
    OnComponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Delta1,
    Delta2,
}

/// Sides of a position relative to the Δ1-component at `a = v` and the
/// Δ2-component at `b = k - v`.
pub fn sides(p: TropPosition, k: u64, v: u64) -> (Side, Side) {
    let w = k - v;
    let delta1 = match p.a.cmp(&v) {
        std::cmp::Ordering::Greater => Side::ZeroOne,
        std::cmp::Ordering::Less => Side::OneZero,
        std::cmp::Ordering::Equal => Side::OnComponent,
    };
    let delta2 = match p.b.cmp(&w) {
        std::cmp::Ordering::Greater => Side::ZeroOne,
        std::cmp::Ordering::Less => Side::OneZero,
        std::cmp::Ordering::Equal => Side::OnComponent,
    };
    (delta1, delta2)
}

/// Limit side under `τ → 0` of a point with the given side, for weight `s_j`.
fn resolve(side: Side, family: Family, s: i64) -> Side {
    if side != Side::OnComponent || s == 0 {
        return side;
    }
    match (family, s > 0) {
        (Family::Delta1, true) | (Family::Delta2, false) => Side::ZeroOne,
        (Family::Delta1, false) | (Family::Delta2, true) => Side::OneZero,
    }
}

/// One factor `ξ^e` of a monomial, where `ξ` is the local coordinate of the
/// given component's `P^1` at the point's limit side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialFactor {
    pub level: usize,
    pub family: Family,
    pub exp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<MonomialFactor>);

impl Monomial {
    pub fn constant() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|f| f.exp).sum()
    }
}

/// Monomial basis of the coordinate ring of a finite local scheme, restricted
/// to the bubble coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalMonomialScheme {
    pub monomials: Vec<Monomial>,
}

impl LocalMonomialScheme {
    pub fn reduced() -> Self {
        LocalMonomialScheme {
            monomials: vec![Monomial::constant()],
        }
    }

    /// Shape checks that do not depend on where the point sits.
    pub fn validate(&self, mult: u64, n: usize) -> Result<()> {
        if self.monomials.len() as u64 != mult {
            return Err(Error::InvalidLocalScheme(format!(
                "{} monomials for a point of multiplicity {mult}",
                self.monomials.len()
            )));
        }
        if !self.monomials.iter().any(|m| m.degree() == 0) {
            return Err(Error::InvalidLocalScheme(
                "the constant monomial is missing".to_string(),
            ));
        }
        for m in &self.monomials {
            if m.degree() > mult {
                return Err(Error::InvalidLocalScheme(format!(
                    "monomial of degree {} exceeds multiplicity {mult}",
                    m.degree()
                )));
            }
            if let Some(f) = m.0.iter().find(|f| f.level == 0 || f.level > n) {
                return Err(Error::InvalidLocalScheme(format!(
                    "level {} does not exist (n = {n})",
                    f.level
                )));
            }
        }
        Ok(())
    }
}

/// Whether `λ_s` has a limit on fibres with this vanishing pattern: the chain
/// `0 ≥ s_1 ≥ … ≥ s_n ≥ 0`, where the `i`-th inequality is imposed exactly
/// when `t_i` does not vanish.
pub fn admissible_1ps(pattern: &VanishingPattern, s: &OneParamSubgroup) -> Result<bool> {
    let n = s.len();
    if pattern.size != n + 1 {
        return Err(Error::SizeMismatch(format!(
            "pattern of size {} needs a weight vector of length {}, got {n}",
            pattern.size,
            pattern.size.saturating_sub(1)
        )));
    }
    let padded: Vec<i64> = std::iter::once(0)
        .chain(s.0.iter().copied())
        .chain(std::iter::once(0))
        .collect();
    Ok((0..=n).all(|i| pattern.is_vanishing(i) || padded[i] >= padded[i + 1]))
}

/// Limit sides of one support point, per level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSides {
    pub delta1: Vec<Side>,
    pub delta2: Vec<Side>,
}

fn check_1ps(cfg: &PointConfiguration, s: &OneParamSubgroup) -> Result<()> {
    if !admissible_1ps(&cfg.presentation().vanishing_pattern(), s)? {
        return Err(Error::NoLimit(s.0.clone()));
    }
    Ok(())
}

pub fn flow_limit(cfg: &PointConfiguration, s: &OneParamSubgroup) -> Result<Vec<PointSides>> {
    check_1ps(cfg, s)?;
    let k = cfg.height();
    let levels = cfg.levels();
    Ok(cfg
        .points()
        .iter()
        .map(|p| {
            let (delta1, delta2) = levels
                .iter()
                .zip(&s.0)
                .map(|(&v, &sj)| {
                    let (d1, d2) = sides(p.position, k, v);
                    (
                        resolve(d1, Family::Delta1, sj),
                        resolve(d2, Family::Delta2, sj),
                    )
                })
                .unzip();
            PointSides { delta1, delta2 }
        })
        .collect())
}

fn check_lin(cfg: &PointConfiguration, lin: &Linearization) -> Result<()> {
    if lin.len() != cfg.n() {
        return Err(Error::SizeMismatch(format!(
            "linearization has {} levels, presentation has {}",
            lin.len(),
            cfg.n()
        )));
    }
    Ok(())
}

/// Per-level summands `c_j s_j` of the combinatorial weight.
pub fn level_contributions(
    cfg: &PointConfiguration,
    s: &OneParamSubgroup,
    lin: &Linearization,
) -> Result<Vec<i64>> {
    check_lin(cfg, lin)?;
    let flows = flow_limit(cfg, s)?;
    let mut out = vec![0i64; cfg.n()];
    for (p, flow) in cfg.points().iter().zip(&flows) {
        let mult = p.mult as i64;
        for (j, lift) in lin.levels().iter().enumerate() {
            let sj = s.0[j];
            let d1 = match flow.delta1[j] {
                Side::OneZero => -(lift.a as i64) * sj,
                Side::ZeroOne => lift.b as i64 * sj,
                Side::OnComponent => 0,
            };
            let d2 = match flow.delta2[j] {
                Side::OneZero => lift.c as i64 * sj,
                Side::ZeroOne => -(lift.d as i64) * sj,
                Side::OnComponent => 0,
            };
            out[j] += mult * (d1 + d2);
        }
    }
    Ok(out)
}

pub fn combinatorial_weight(
    cfg: &PointConfiguration,
    s: &OneParamSubgroup,
    lin: &Linearization,
) -> Result<i64> {
    Ok(level_contributions(cfg, s, lin)?.iter().sum())
}

/// Bounded weight `μ_b = Σ b_j s_j` and its coefficients. Points without a
/// local scheme are treated as reduced.
pub fn bounded_weight(cfg: &PointConfiguration, s: &OneParamSubgroup) -> Result<(i64, Vec<i64>)> {
    let flows = flow_limit(cfg, s)?;
    let k = cfg.height();
    let levels = cfg.levels();
    let mut coeffs = vec![0i64; cfg.n()];
    for ((p, flow), placement) in cfg.points().iter().zip(&flows).zip(cfg.placements()) {
        let Some(scheme) = &p.scheme else { continue };
        let nontrivial = scheme.monomials.iter().any(|m| m.degree() > 0);
        if nontrivial && !placement.is_vertex() {
            return Err(Error::InvalidLocalScheme(format!(
                "point {:?} with a non-reduced scheme is not at a torus fixpoint",
                <[u64; 3]>::from(p.position)
            )));
        }
        for f in scheme.monomials.iter().flat_map(|m| &m.0) {
            if f.exp == 0 {
                continue;
            }
            let j = f.level - 1;
            let (d1, d2) = sides(p.position, k, levels[j]);
            let through = match f.family {
                Family::Delta1 => d1 == Side::OnComponent,
                Family::Delta2 => d2 == Side::OnComponent,
            };
            if !through {
                return Err(Error::InvalidLocalScheme(format!(
                    "{:?} level {} does not pass through {:?}",
                    f.family,
                    f.level,
                    <[u64; 3]>::from(p.position)
                )));
            }
            let e = f.exp as i64;
            coeffs[j] += match (f.family, f.family_side(flow, j)) {
                (Family::Delta1, Side::ZeroOne) | (Family::Delta2, Side::OneZero) => e,
                (Family::Delta1, Side::OneZero) | (Family::Delta2, Side::ZeroOne) => -e,
                (_, Side::OnComponent) => 0,
            };
        }
    }
    let mu = coeffs.iter().zip(&s.0).map(|(b, sj)| b * sj).sum();
    Ok((mu, coeffs))
}

impl MonomialFactor {
    fn family_side(&self, flow: &PointSides, j: usize) -> Side {
        match self.family {
            Family::Delta1 => flow.delta1[j],
            Family::Delta2 => flow.delta2[j],
        }
    }
}

/// `μ = μ_b + l · μ_c` for the `l`-th power of the determinant bundle.
pub fn hm_invariant(
    cfg: &PointConfiguration,
    s: &OneParamSubgroup,
    lin: &Linearization,
    l: u64,
) -> Result<i64> {
    let (mu_b, _) = bounded_weight(cfg, s)?;
    let mu_c = combinatorial_weight(cfg, s, lin)?;
    Ok(mu_b + l as i64 * mu_c)
}

/// Power of the determinant bundle large enough for the combinatorial weight
/// to dominate the bounded one: `2m² + 1`.
pub fn default_l(m: u64) -> u64 {
    2 * m * m + 1
}

/// Linearization making the combinatorial weight strictly positive, built
/// level by level.
///
/// If some point lies on the Δ1-component of level `j`, with `m'` the
/// multiplicity strictly on its `(1:0)` side, the level gets
/// `(m(m - m'), m(m' + 1), 0, 1)`. Otherwise some point lies on the paired
/// Δ2-component; with `m''` the multiplicity strictly on its `(1:0)` side the
/// level gets `(0, 1, m(m - m''), m(m'' + 1))`. The Δ1 lift `(0, 1)` keeps the
/// Δ1 summand from cancelling the Δ2 summand when every point sits below the
/// Δ1-component.
pub fn constructive_linearization(cfg: &PointConfiguration) -> Result<Linearization> {
    let k = cfg.height();
    let m = cfg.m();
    let mut levels = Vec::with_capacity(cfg.n());
    for (j, v) in cfg.levels().into_iter().enumerate() {
        let w = k - v;
        let mass = |pred: &dyn Fn(&TropPosition) -> bool| -> u64 {
            cfg.points()
                .iter()
                .filter(|p| pred(&p.position))
                .map(|p| p.mult)
                .sum()
        };
        let lift = if cfg.points().iter().any(|p| p.position.a == v) {
            let m1 = mass(&|p| p.a < v);
            LevelLift {
                a: m * (m - m1),
                b: m * (m1 + 1),
                c: 0,
                d: 1,
            }
        } else if cfg.points().iter().any(|p| p.position.b == w) {
            let m2 = mass(&|p| p.b < w);
            LevelLift {
                a: 0,
                b: 1,
                c: m * (m - m2),
                d: m * (m2 + 1),
            }
        } else {
            return Err(Error::CriterionViolated { level: j + 1 });
        };
        levels.push(lift);
    }
    Linearization::new(levels)
}

/// All nonzero `s ∈ {-1, 0, 1}^n` admissible for the pattern, in
/// lexicographic order.
pub fn admissible_sign_vectors(pattern: &VanishingPattern) -> Vec<OneParamSubgroup> {
    let n = pattern.size - 1;
    (0..n)
        .map(|_| [-1i64, 0, 1])
        .multi_cartesian_product()
        .map(OneParamSubgroup)
        .filter(|s| !s.is_trivial())
        .filter(|s| admissible_1ps(pattern, s).unwrap_or(false))
        .collect()
}

/// GIT stability for the `l`-th power of the bundle built from `lin`.
///
/// `μ` is linear on each orthant, and each orthant meets the admissible cone
/// in a cone cut out by relations `s_i ≥ s_j`, `s_i ≥ 0`, `s_i ≤ 0`. Its
/// extreme rays have entries in `{-1, 0, 1}`, so positivity on the nonzero
/// admissible sign vectors is positivity on the whole cone.
pub fn is_git_stable(cfg: &PointConfiguration, lin: &Linearization, l: u64) -> Result<bool> {
    check_lin(cfg, lin)?;
    for s in admissible_sign_vectors(&cfg.presentation().vanishing_pattern()) {
        if hm_invariant(cfg, &s, lin, l)? <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some linearization making the configuration stable, if one exists. One
/// exists exactly when every level carries a support point.
pub fn exists_stabilizing_linearization(cfg: &PointConfiguration) -> Option<Linearization> {
    if !unoccupied_levels(cfg).is_empty() {
        return None;
    }
    let lin = constructive_linearization(cfg).ok()?;
    match is_git_stable(cfg, &lin, default_l(cfg.m())) {
        Ok(true) => Some(lin),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub s: OneParamSubgroup,
    pub mu_b: i64,
    pub mu_c: i64,
    pub mu: i64,
}

/// Weights for the given subgroups, or for every nonzero admissible sign
/// vector when `subgroups` is `None`.
pub fn weight_table(
    cfg: &PointConfiguration,
    lin: &Linearization,
    l: u64,
    subgroups: Option<Vec<OneParamSubgroup>>,
) -> Result<Vec<WeightRow>> {
    let subgroups = subgroups
        .unwrap_or_else(|| admissible_sign_vectors(&cfg.presentation().vanishing_pattern()));
    subgroups
        .into_iter()
        .map(|s| {
            let (mu_b, _) = bounded_weight(cfg, &s)?;
            let mu_c = combinatorial_weight(cfg, &s, lin)?;
            Ok(WeightRow {
                mu: mu_b + l as i64 * mu_c,
                s,
                mu_b,
                mu_c,
            })
        })
        .collect()
}

/// Levels whose bubbles lie on a point's Δ1- or Δ2-component, as `(level,
/// family)` pairs with 1-based levels.
pub fn components_through(cfg: &PointConfiguration, p: TropPosition) -> BTreeSet<(usize, Family)> {
    let k = cfg.height();
    let mut out = BTreeSet::new();
    for (j, v) in cfg.levels().into_iter().enumerate() {
        let (d1, d2) = sides(p, k, v);
        if d1 == Side::OnComponent {
            out.insert((j + 1, Family::Delta1));
        }
        if d2 == Side::OnComponent {
            out.insert((j + 1, Family::Delta2));
        }
    }
    out
}
