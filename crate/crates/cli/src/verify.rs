//! Exhaustive self-checks over small inputs, run by `verify`.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use degen_core::enumerate::{normal_forms, point_sets, presentations};
use degen_core::{
    admissible_sign_vectors, build_fibre, complex_counts, constructive_linearization, default_l,
    exists_stabilizing_linearization, flat_limit, is_git_stable, is_lw_stable, is_sws_stable,
    level_contributions, normalize_pair, place, unique_stable_subdivision_oracle,
    unoccupied_levels, ClosedPoint, OracleLimits, TauMove,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type Check = Result<usize, String>;
type Suite = (&'static str, Box<dyn Fn() -> Check + Send + Sync>);

fn counts(max_k: u64) -> Check {
    let mut cases = 0;
    for k in 1..=max_k {
        for nf in normal_forms(k, k as usize) {
            let n = nf.n();
            let expected = (
                3 + 3 * n + n * n.saturating_sub(1) / 2,
                3 * (n + 1) + n * (n + 1),
                1 + n + n * (n + 1) / 2,
            );
            let got = complex_counts(&build_fibre(&nf));
            if got != expected {
                return Err(format!("{nf}: counts {got:?}, expected {expected:?}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn flat_limits(max_k: u64, max_m: u64) -> Check {
    let limits = OracleLimits { max_k, max_m };
    let mut cases = 0;
    for k in 1..=max_k {
        for pts in point_sets(k, max_m, false) {
            let r = flat_limit(&pts, k).map_err(|e| e.to_string())?;
            let found = unique_stable_subdivision_oracle(&pts, k, limits).map_err(|e| e.to_string())?;
            if found != [r.normal_form().clone()] || !r.stability.sws_stable {
                return Err(format!(
                    "{pts:?} at height {k}: limit {}, oracle {found:?}",
                    r.normal_form()
                ));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn git_criterion(max_k: u64, max_m: u64) -> Check {
    let mut cases = 0;
    for k in 1..=max_k {
        let sets = point_sets(k, max_m, true);
        for t in presentations(k, 3) {
            for pts in &sets {
                let cfg = place(&t, pts.clone()).map_err(|e| e.to_string())?;
                let occupied = unoccupied_levels(&cfg).is_empty();
                let found = exists_stabilizing_linearization(&cfg);
                if found.is_some() != occupied {
                    return Err(format!("{t:?} {pts:?}: criterion {occupied}, search {found:?}"));
                }
                if occupied {
                    let lin = constructive_linearization(&cfg).map_err(|e| e.to_string())?;
                    for s in admissible_sign_vectors(&t.vanishing_pattern()) {
                        let c = level_contributions(&cfg, &s, &lin).map_err(|e| e.to_string())?;
                        if c.iter().zip(&s.0).any(|(&cj, &sj)| cj < 0 || (cj == 0) != (sj == 0)) {
                            return Err(format!("{t:?} {pts:?}: contributions {c:?} at {:?}", s.0));
                        }
                    }
                    if !is_git_stable(&cfg, &lin, default_l(cfg.m())).map_err(|e| e.to_string())? {
                        return Err(format!("{t:?} {pts:?}: constructive linearization unstable"));
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn lw_sws(max_k: u64, max_m: u64) -> Check {
    let mut cases = 0;
    for k in 1..=max_k {
        let sets = point_sets(k, max_m, true);
        for t in presentations(k, 3) {
            for pts in &sets {
                let cfg = place(&t, pts.clone()).map_err(|e| e.to_string())?;
                if is_lw_stable(&cfg) != is_sws_stable(&normalize_pair(&cfg)) {
                    return Err(format!("{t:?} {pts:?}"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn tau(max_size: usize) -> Check {
    let mut cases = 0;
    for size in 1..=max_size {
        for z in 0..=size {
            for source in (0..size).combinations(z) {
                let vals: Vec<i64> = (0..size)
                    .map(|i| if source.contains(&i) { 0 } else { 1 + i as i64 })
                    .collect();
                let point = ClosedPoint::from_ints(&vals).map_err(|e| e.to_string())?;
                for target in (0..size).combinations(z) {
                    let tau = TauMove::new(
                        size,
                        target.iter().copied().collect::<BTreeSet<_>>(),
                        source.iter().copied().collect(),
                    )
                    .map_err(|e| e.to_string())?;
                    let moved = tau.apply(&point).map_err(|e| e.to_string())?;
                    if !tau.is_identity() && moved == point {
                        return Err(format!("{source:?} -> {target:?} fixes {vals:?}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

/// Runs every suite. Heights go up to `max_k` and lengths up to `max_m`.
pub fn run(max_k: u64, max_m: u64) -> Vec<SuiteResult> {
    let suites: Vec<Suite> = vec![
        ("fibre counts", Box::new(move || counts(max_k))),
        ("flat limit oracle", Box::new(move || flat_limits(max_k, max_m))),
        ("stability criterion", Box::new(move || git_criterion(max_k, max_m))),
        ("LW/SWS correspondence", Box::new(move || lw_sws(max_k, max_m))),
        ("τ-moves fix nothing", Box::new(move || tau(6))),
    ];
    std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|(name, f)| {
                scope.spawn(move || {
                    let (cases, failure) = match f() {
                        Ok(n) => (n, None),
                        Err(e) => (0, Some(e)),
                    };
                    SuiteResult {
                        name: name.to_string(),
                        cases,
                        failure,
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}
