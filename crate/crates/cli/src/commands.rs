//! One function per subcommand. Each returns a report and whether the
//! question it answers came out positive.

use serde::{Deserialize, Serialize};

use degen_core::{
    build_fibre, complex_counts, default_l, exists_stabilizing_linearization, extend_special,
    flat_limit, associated_pair, is_git_stable, normalize_pair, place, stability_report,
    weight_table, BaseTuple, ExpandedFibre, LimitReport, Linearization, Location,
    NormalForm, PointConfiguration, StabilityReport, SupportPoint, VertexKind, WeightRow,
    constructive_linearization,
};

use crate::scenario::Scenario;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub vertices: usize,
    pub edges: usize,
    pub cells: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreReport {
    pub presentation: BaseTuple,
    pub counts: Counts,
    pub fibre: ExpandedFibre,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub val: [u64; 3],
    pub mult: u64,
    pub location: Location,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<VertexKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitVerdict {
    pub lin: Linearization,
    pub l: u64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityOutput {
    pub presentation: BaseTuple,
    pub normal_form: NormalForm,
    pub placements: Vec<Placement>,
    pub stability: StabilityReport,
    pub stabilizing_linearization: Option<Linearization>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub git: Option<GitVerdict>,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsOutput {
    pub presentation: BaseTuple,
    pub lin: Linearization,
    pub l: u64,
    pub rows: Vec<WeightRow>,
    pub git_stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeOutput {
    pub before: PointConfiguration,
    pub after: PointConfiguration,
    pub lw_stable: bool,
    pub sws_stable_after: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothOutput {
    pub smooth: bool,
    pub height: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Limit(LimitReport),
    Fibre(FibreReport),
    Stability(StabilityOutput),
    Weights(WeightsOutput),
    Normalize(NormalizeOutput),
    Smooth(SmoothOutput),
}

/// A report, the fibre and points to draw, and whether the answer is
/// positive.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub fibre: Option<ExpandedFibre>,
    pub points: Vec<SupportPoint>,
    pub ok: bool,
}

fn smooth(sc: &Scenario) -> Outcome {
    Outcome {
        report: Report::Smooth(SmoothOutput {
            smooth: true,
            height: sc.height,
        }),
        fibre: None,
        points: Vec::new(),
        ok: true,
    }
}

fn presentation(sc: &Scenario, command: &str) -> Result<BaseTuple, CliError> {
    sc.presentation.clone().ok_or_else(|| {
        CliError::Validation(format!("`{command}` needs a fibre: give cuts, tuple or pattern"))
    })
}

fn configuration(sc: &Scenario, command: &str) -> Result<PointConfiguration, CliError> {
    Ok(place(&presentation(sc, command)?, sc.points.clone())?)
}

/// Flat limit of the points. With a fibre in the scenario the limit must
/// subdivide it; with refined valuations the scenario's configuration is
/// extended to them.
pub fn limit(sc: &Scenario) -> Result<Outcome, CliError> {
    if sc.smooth {
        return Ok(smooth(sc));
    }
    let report = match (&sc.presentation, &sc.refined) {
        (Some(p), Some(r)) => {
            let cfg = place(p, sc.points.clone())?;
            extend_special(&cfg, Some((&r.points, r.height)))?
        }
        (Some(p), None) => associated_pair(&sc.points, sc.height, &p.normal_form()?)?,
        (None, _) => flat_limit(&sc.points, sc.height)?,
    };
    Ok(Outcome {
        fibre: Some(report.fibre.clone()),
        points: report.configuration.points().to_vec(),
        ok: report.stability.sws_stable,
        report: Report::Limit(report),
    })
}

/// The scenario's fibre, or the fibre of the points' flat limit.
pub fn fiber(sc: &Scenario) -> Result<Outcome, CliError> {
    if sc.smooth {
        return Ok(smooth(sc));
    }
    let presentation = match &sc.presentation {
        Some(p) => p.clone(),
        None if !sc.points.is_empty() => flat_limit(&sc.points, sc.height)?.base_tuple,
        None => NormalForm::new(sc.height, vec![])?.canonical_tuple(),
    };
    let fibre = build_fibre(&presentation.normal_form()?);
    let (vertices, edges, cells) = complex_counts(&fibre);
    Ok(Outcome {
        report: Report::Fibre(FibreReport {
            presentation,
            counts: Counts {
                vertices,
                edges,
                cells,
            },
            fibre: fibre.clone(),
        }),
        fibre: Some(fibre),
        points: sc.points.clone(),
        ok: true,
    })
}

fn placements(cfg: &PointConfiguration) -> Vec<Placement> {
    cfg.points()
        .iter()
        .zip(cfg.placements())
        .map(|(p, loc)| Placement {
            val: p.position.into(),
            mult: p.mult,
            location: *loc,
            kind: match loc {
                Location::Vertex(id) => Some(cfg.fibre().vertex(*id).kind),
                _ => None,
            },
        })
        .collect()
}

/// Stability of the points on the scenario's presentation. Positive when the
/// configuration is LW stable and, if a linearization is given, GIT stable
/// for it.
pub fn stability(sc: &Scenario, l_override: Option<u64>) -> Result<Outcome, CliError> {
    if sc.smooth {
        return Ok(smooth(sc));
    }
    let cfg = configuration(sc, "stability")?;
    let report = stability_report(&cfg);
    let git = match &sc.lin {
        Some(lin) => {
            let l = l_override.or(sc.l).unwrap_or_else(|| default_l(cfg.m()));
            Some(GitVerdict {
                stable: is_git_stable(&cfg, lin, l)?,
                lin: lin.clone(),
                l,
            })
        }
        None => None,
    };
    let stable = report.lw_stable && git.as_ref().is_none_or(|g| g.stable);
    Ok(Outcome {
        report: Report::Stability(StabilityOutput {
            presentation: cfg.presentation().clone(),
            normal_form: cfg.fibre().normal_form().clone(),
            placements: placements(&cfg),
            stabilizing_linearization: exists_stabilizing_linearization(&cfg),
            stability: report,
            git,
            stable,
        }),
        fibre: Some(cfg.fibre().clone()),
        points: sc.points.clone(),
        ok: stable,
    })
}

/// Hilbert–Mumford weights for the scenario's linearization, or the
/// constructive one when none is given.
pub fn weights(sc: &Scenario, l_override: Option<u64>) -> Result<Outcome, CliError> {
    if sc.smooth {
        return Ok(smooth(sc));
    }
    let cfg = configuration(sc, "weights")?;
    let lin = match &sc.lin {
        Some(lin) => lin.clone(),
        None => constructive_linearization(&cfg)?,
    };
    let l = l_override.or(sc.l).unwrap_or_else(|| default_l(cfg.m()));
    let rows = weight_table(&cfg, &lin, l, sc.s.clone())?;
    let git_stable = is_git_stable(&cfg, &lin, l)?;
    Ok(Outcome {
        report: Report::Weights(WeightsOutput {
            presentation: cfg.presentation().clone(),
            lin,
            l,
            rows,
            git_stable,
        }),
        fibre: Some(cfg.fibre().clone()),
        points: sc.points.clone(),
        ok: git_stable,
    })
}

pub fn normalize(sc: &Scenario) -> Result<Outcome, CliError> {
    if sc.smooth {
        return Ok(smooth(sc));
    }
    let cfg = configuration(sc, "normalize")?;
    let after = normalize_pair(&cfg);
    let lw_stable = stability_report(&cfg).lw_stable;
    let sws_stable_after = stability_report(&after).sws_stable;
    Ok(Outcome {
        fibre: Some(after.fibre().clone()),
        points: sc.points.clone(),
        ok: lw_stable,
        report: Report::Normalize(NormalizeOutput {
            before: cfg,
            after,
            lw_stable,
            sws_stable_after,
        }),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn stability_lines(out: &mut String, r: &StabilityReport) {
    out.push_str(&format!("admissible: {}\n", yes(r.admissible)));
    out.push_str(&format!("stabilizer rank: {}\n", r.stabilizer_rank));
    out.push_str(&format!("LW stable: {}\n", yes(r.lw_stable)));
    out.push_str(&format!("WS stable: {}\n", yes(r.ws_stable)));
    out.push_str(&format!("SWS stable: {}\n", yes(r.sws_stable)));
    if !r.unoccupied_levels.is_empty() {
        out.push_str(&format!("unoccupied levels: {:?}\n", r.unoccupied_levels));
    }
}

/// Plain-text summary of a report.
pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Limit(r) => {
            out.push_str(&format!("base tuple: {:?}\n", r.base_tuple.exponents()));
            out.push_str(&format!("normal form: {}\n", r.normal_form()));
            for p in placements(&r.configuration) {
                out.push_str(&format!(
                    "point {:?} x{}: {}\n",
                    p.val,
                    p.mult,
                    p.kind.map_or_else(|| format!("{:?}", p.location), |k| format!("{k:?}"))
                ));
            }
            stability_lines(&mut out, &r.stability);
        }
        Report::Fibre(r) => {
            out.push_str(&format!("presentation: {:?}\n", r.presentation.exponents()));
            out.push_str(&format!("normal form: {}\n", r.fibre.normal_form()));
            out.push_str(&format!(
                "vertices: {}, edges: {}, cells: {}\n",
                r.counts.vertices, r.counts.edges, r.counts.cells
            ));
            for v in &r.fibre.dual_complex().vertices {
                let [a, b, c] = <[u64; 3]>::from(v.position);
                out.push_str(&format!("  v{} {:?} at ({a},{b},{c})\n", v.id, v.kind));
            }
        }
        Report::Stability(r) => {
            out.push_str(&format!("presentation: {:?}\n", r.presentation.exponents()));
            out.push_str(&format!("normal form: {}\n", r.normal_form));
            for p in &r.placements {
                out.push_str(&format!(
                    "point {:?} x{}: {}\n",
                    p.val,
                    p.mult,
                    p.kind.map_or_else(|| format!("{:?}", p.location), |k| format!("{k:?}"))
                ));
            }
            stability_lines(&mut out, &r.stability);
            match &r.stabilizing_linearization {
                Some(lin) => out.push_str(&format!("stabilizing linearization: {:?}\n", lin.levels())),
                None => out.push_str("stabilizing linearization: none\n"),
            }
            if let Some(g) = &r.git {
                out.push_str(&format!("GIT stable for l = {}: {}\n", g.l, yes(g.stable)));
            }
            out.push_str(&format!("verdict: {}\n", if r.stable { "stable" } else { "unstable" }));
        }
        Report::Weights(r) => {
            out.push_str(&format!("presentation: {:?}\n", r.presentation.exponents()));
            out.push_str(&format!("l = {}\n", r.l));
            out.push_str("s\tmu_b\tmu_c\tmu\n");
            for row in &r.rows {
                out.push_str(&format!("{:?}\t{}\t{}\t{}\n", row.s.0, row.mu_b, row.mu_c, row.mu));
            }
            out.push_str(&format!("GIT stable: {}\n", yes(r.git_stable)));
        }
        Report::Normalize(r) => {
            out.push_str(&format!(
                "presentation: {:?} -> {:?}\n",
                r.before.presentation().exponents(),
                r.after.presentation().exponents()
            ));
            out.push_str(&format!("LW stable: {}\n", yes(r.lw_stable)));
            out.push_str(&format!("SWS stable after normalizing: {}\n", yes(r.sws_stable_after)));
        }
        Report::Smooth(r) => {
            out.push_str(&format!("smooth fibre (height {})\n", r.height));
        }
    }
    out
}
