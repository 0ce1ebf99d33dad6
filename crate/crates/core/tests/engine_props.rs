use std::f64::consts::FRAC_PI_2;

use proptest::prelude::*;
use rise_coverage::engine::geometrically_reachable;
use rise_coverage::scenario::CANONICAL_STRUCTURES;
use rise_coverage::*;

fn canonical(i: usize) -> Scene {
    generate_canonical(CanonicalScene::ALL[i]).to_scene().unwrap()
}

fn median(map: &PathlossMap) -> f64 {
    percentile(&cdf(map).unwrap(), 0.5).unwrap()
}

#[test]
fn unreachable_cells_are_exactly_the_geometric_failures() {
    for i in 0..3 {
        let s = canonical(i);
        for name in CANONICAL_STRUCTURES {
            let st = s.structure(name).unwrap();
            let map = evaluate_region(&s, name, BeamMode::Dynamic).unwrap();
            assert_eq!(map.cells().len(), s.region.len());
            for (p, v) in map.iter() {
                assert_eq!(v.is_some(), geometrically_reachable(&s, st, p).unwrap(), "{name} at {p:?}");
                if let Some(v) = v {
                    assert!(v.is_finite());
                }
            }
        }
    }
}

#[test]
fn search_never_loses_to_centroid() {
    for i in 0..3 {
        let s = canonical(i);
        for name in ["ss1", "ss2", "es"] {
            let by = |strategy| {
                let beam = select_fixed_beam(&s, name, strategy).unwrap();
                median(&evaluate_region(&s, name, BeamMode::Fixed(beam)).unwrap())
            };
            let (c, g) = (by(BeamStrategy::Centroid), by(BeamStrategy::GridSearchMedian));
            assert!(g <= c, "{name}: search {g} > centroid {c}");
        }
    }
}

#[test]
fn dee_ignores_beam_mode() {
    let s = canonical(0);
    let beam = BeamSpec { desired: LocalAngles::from_signed(0.7) };
    assert_eq!(
        evaluate_region(&s, "dee", BeamMode::Dynamic).unwrap(),
        evaluate_region(&s, "dee", BeamMode::Fixed(beam)).unwrap()
    );
}

#[test]
fn shadow_only_keeps_shadowed_cells() {
    // every canonical region is fully shadowed, so the flag changes nothing
    for i in 0..3 {
        let s = canonical(i);
        let opts = EvalOptions { shadow_only: true };
        for name in CANONICAL_STRUCTURES {
            assert_eq!(
                evaluate_region(&s, name, BeamMode::Dynamic).unwrap(),
                engine::evaluate_region_with(&s, name, BeamMode::Dynamic, opts).unwrap()
            );
        }
    }
}

#[test]
fn comparison_matches_engine_maps() {
    let s = canonical(1);
    let rows = compare_structures(&s, &CANONICAL_STRUCTURES, RegionMode::Fixed(BeamStrategy::Centroid)).unwrap();
    for row in rows {
        let mode = engine::resolve_mode(&s, &row.name, RegionMode::Fixed(BeamStrategy::Centroid), EvalOptions::default()).unwrap();
        let map = evaluate_region(&s, &row.name, mode).unwrap();
        let c = cdf(&map).unwrap();
        assert_eq!(row.median, Some(percentile(&c, 0.5).unwrap()));
        assert_eq!(row.p5, Some(percentile(&c, 0.05).unwrap()));
        assert_eq!(row.p95, Some(percentile(&c, 0.95).unwrap()));
        assert_eq!(row.reachable_fraction, map.reachable_fraction());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dynamic_dominates_any_fixed_beam(
        scene_idx in 0usize..3,
        which in 0usize..3,
        fx in 0.0f64..1.0,
        fy in 0.0f64..1.0,
        steer in -FRAC_PI_2 + 0.01..FRAC_PI_2 - 0.01,
    ) {
        let s = canonical(scene_idx);
        let name = ["ss1", "ss2", "es"][which];
        let r = s.region;
        let user = Point2::new(r.min.x + fx * (r.max.x - r.min.x), r.min.y + fy * (r.max.y - r.min.y));
        let beam = BeamSpec { desired: LocalAngles::from_signed(steer) };
        let d = evaluate_point(&s, name, user, BeamMode::Dynamic).unwrap();
        let f = evaluate_point(&s, name, user, BeamMode::Fixed(beam)).unwrap();
        prop_assert_eq!(d.is_some(), f.is_some());
        if let (Some(d), Some(f)) = (d, f) {
            prop_assert!(d <= f + 1e-9, "dynamic {} > fixed {}", d, f);
        }
    }

    #[test]
    fn fixed_beam_aimed_at_user_equals_dynamic(scene_idx in 0usize..3, which in 0usize..3, fx in 0.0f64..1.0, fy in 0.0f64..1.0) {
        let s = canonical(scene_idx);
        let name = ["ss1", "ss2", "es"][which];
        let r = s.region;
        let user = Point2::new(r.min.x + fx * (r.max.x - r.min.x), r.min.y + fy * (r.max.y - r.min.y));
        let pose = s.structure(name).unwrap().pose;
        prop_assume!(user != pose.position);
        let beam = BeamSpec { desired: local_angles(&pose, user).unwrap() };
        prop_assert_eq!(
            evaluate_point(&s, name, user, BeamMode::Dynamic).unwrap(),
            evaluate_point(&s, name, user, BeamMode::Fixed(beam)).unwrap()
        );
    }

    #[test]
    fn region_cells_match_point_evaluation(scene_idx in 0usize..3, which in 0usize..4, idx in 0usize..10_000) {
        let s = canonical(scene_idx);
        let name = CANONICAL_STRUCTURES[which];
        let map = evaluate_region(&s, name, BeamMode::Dynamic).unwrap();
        let i = idx % map.cells().len();
        let p = s.grid_points()[i];
        prop_assert_eq!(map.cells()[i], evaluate_point(&s, name, p, BeamMode::Dynamic).unwrap());
    }
}
