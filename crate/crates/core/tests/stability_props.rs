use degen_core::enumerate::{normal_forms, point_sets, positions, presentations};
use degen_core::{
    admissible_sign_vectors, combinatorial_weight, constructive_linearization, default_l,
    exists_stabilizing_linearization, is_git_stable, is_lw_stable, is_sws_stable, is_ws_stable,
    level_contributions, normalize_pair, place, place_on_normal_form, stabilizer_rank,
    unoccupied_levels, BaseTuple, LevelLift, Linearization, OneParamSubgroup, PointConfiguration,
    SupportPoint,
};
use itertools::Itertools;
use proptest::prelude::*;

fn configurations(max_k: u64, max_n: usize, max_m: u64) -> Vec<PointConfiguration> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        let sets = point_sets(k, max_m, true);
        for t in presentations(k, max_n) {
            for pts in &sets {
                out.push(place(&t, pts.clone()).unwrap());
            }
        }
    }
    out
}

#[test]
fn ws_iff_trivial_stabilizer_on_normalized_fibres() {
    for k in 1..=5 {
        for nf in normal_forms(k, 3) {
            for pts in point_sets(k, 3, true) {
                let cfg = place_on_normal_form(&nf, pts).unwrap();
                assert_eq!(is_ws_stable(&cfg), stabilizer_rank(&cfg) == 0, "{nf} {:?}", cfg.points());
            }
        }
    }
}

#[test]
fn lw_and_sws_correspond_under_normalization() {
    for cfg in configurations(4, 3, 2) {
        let norm = normalize_pair(&cfg);
        assert_eq!(norm.m(), cfg.m());
        assert_eq!(is_lw_stable(&cfg), is_sws_stable(&norm));
        if is_sws_stable(&cfg) {
            assert!(is_lw_stable(&cfg));
        }
    }
}

#[test]
fn constructive_linearization_is_positive_level_by_level() {
    for cfg in configurations(4, 3, 2) {
        if !unoccupied_levels(&cfg).is_empty() {
            assert!(constructive_linearization(&cfg).is_err());
            continue;
        }
        let lin = constructive_linearization(&cfg).unwrap();
        for s in admissible_sign_vectors(&cfg.presentation().vanishing_pattern()) {
            let c = level_contributions(&cfg, &s, &lin).unwrap();
            for (j, (&cj, &sj)) in c.iter().zip(&s.0).enumerate() {
                assert!(cj >= 0, "level {} of {:?}", j + 1, cfg.presentation());
                assert_eq!(cj == 0, sj == 0);
            }
        }
        assert!(is_git_stable(&cfg, &lin, default_l(cfg.m())).unwrap());
    }
}

/// All linearizations with entries in `0..=bound`.
fn linearizations(n: usize, bound: u64) -> Vec<Linearization> {
    (0..4 * n)
        .map(|_| 0..=bound)
        .multi_cartesian_product()
        .filter_map(|e| {
            Linearization::new(
                e.chunks(4)
                    .map(|c| LevelLift::from([c[0], c[1], c[2], c[3]]))
                    .collect(),
            )
            .ok()
        })
        .collect()
}

/// Configurations failing the occupancy criterion are unstable for every
/// small linearization, and those meeting it have one.
#[test]
fn criterion_matches_exhaustive_linearization_search() {
    let check = |cfg: &PointConfiguration, lins: &[Linearization]| {
        let m = cfg.m();
        let occupied = unoccupied_levels(cfg).is_empty();
        let found = lins.iter().any(|lin| {
            [1, default_l(m), 4 * default_l(m)]
                .iter()
                .any(|&l| is_git_stable(cfg, lin, l).unwrap())
        });
        assert_eq!(found, occupied, "{:?} {:?}", cfg.presentation(), cfg.points());
        assert_eq!(exists_stabilizing_linearization(cfg).is_some(), occupied);
    };
    for m in 1..=2u64 {
        let lins = linearizations(1, m * m + m);
        for k in 1..=3 {
            for t in presentations(k, 1).into_iter().filter(|t| t.n() == 1) {
                for pts in point_sets(k, m, false).into_iter().filter(|p| mass(p) == m) {
                    check(&place(&t, pts).unwrap(), &lins);
                }
            }
        }
    }
    let lins = linearizations(2, 2);
    for k in 1..=3 {
        for t in presentations(k, 2).into_iter().filter(|t| t.n() == 2) {
            for pts in point_sets(k, 2, false) {
                check(&place(&t, pts).unwrap(), &lins);
            }
        }
    }
}

fn mass(p: &[SupportPoint]) -> u64 {
    p.iter().map(|q| q.mult).sum()
}

fn cfg_strategy() -> impl Strategy<Value = PointConfiguration> {
    (1u64..6)
        .prop_flat_map(|k| {
            (
                prop::collection::vec(0..=k, 1..4),
                prop::collection::vec((prop::sample::select(positions(k)), 1u64..3), 0..4),
                Just(k),
            )
        })
        .prop_map(|(cuts, pts, k)| {
            // Random composition of k from sorted breakpoints.
            let mut breaks = cuts;
            breaks.sort();
            let mut prev = 0;
            let mut exps: Vec<u64> = breaks
                .iter()
                .map(|&b| {
                    let g = b - prev;
                    prev = b;
                    g
                })
                .collect();
            exps.push(k - prev);
            let t = BaseTuple::new(exps).unwrap();
            let pts = pts.into_iter().map(|(p, m)| SupportPoint::new(p, m)).collect();
            place(&t, pts).unwrap()
        })
}

fn s_strategy(n: usize) -> impl Strategy<Value = OneParamSubgroup> {
    prop::collection::vec(-3i64..4, n).prop_map(OneParamSubgroup)
}

proptest! {
    #[test]
    fn combinatorial_weight_is_additive_over_points(cfg in cfg_strategy(), raw in prop::collection::vec(-3i64..4, 4)) {
        let n = cfg.n();
        let lin = Linearization::new(vec![LevelLift::from([2, 3, 1, 4]); n]).unwrap();
        let s = OneParamSubgroup(raw[..n].to_vec());
        let Ok(total) = combinatorial_weight(&cfg, &s, &lin) else {
            return Ok(());
        };
        let parts: i64 = cfg
            .points()
            .iter()
            .map(|p| {
                let single = place(cfg.presentation(), vec![p.clone()]).unwrap();
                combinatorial_weight(&single, &s, &lin).unwrap()
            })
            .sum();
        prop_assert_eq!(total, parts);
    }

    #[test]
    fn combinatorial_weight_is_linear_on_sign_patterns(
        (cfg, s, t) in cfg_strategy().prop_flat_map(|cfg| {
            let n = cfg.n();
            (Just(cfg), s_strategy(n), s_strategy(n))
        }),
        c in 1i64..4,
    ) {
        let n = cfg.n();
        let sign = |x: &OneParamSubgroup| x.0.iter().map(|v| v.signum()).collect::<Vec<_>>();
        let lin = Linearization::new(vec![LevelLift::from([1, 2, 3, 1]); n]).unwrap();
        let Ok(ws) = combinatorial_weight(&cfg, &s, &lin) else {
            return Ok(());
        };
        let cs = OneParamSubgroup(s.0.iter().map(|v| c * v).collect());
        prop_assert_eq!(combinatorial_weight(&cfg, &cs, &lin).unwrap(), c * ws);
        // The admissible cone is convex, so the sum has a limit too.
        if let (true, Ok(wt)) = (sign(&s) == sign(&t), combinatorial_weight(&cfg, &t, &lin)) {
            let sum = OneParamSubgroup(s.0.iter().zip(&t.0).map(|(a, b)| a + b).collect());
            prop_assert_eq!(combinatorial_weight(&cfg, &sum, &lin).unwrap(), ws + wt);
        }
    }
}
