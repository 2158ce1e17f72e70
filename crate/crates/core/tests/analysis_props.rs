mod common;

use common::{bounded_box, coords};
use fermat_dc::analysis::{
    classify_point, solve_reduced_max, solve_special, Decision, ReducedMaxKind, SpecialInstance,
    SpecialSolution,
};
use fermat_dc::ConvexSet;
use proptest::prelude::*;

fn omega(n: usize) -> BoxedStrategy<ConvexSet> {
    prop_oneof![common::singleton(n), common::ball(n), bounded_box(n)].boxed()
}

/// Θ shapes with a closed-form reduced maximization against every Ω shape.
fn theta(n: usize) -> BoxedStrategy<ConvexSet> {
    prop_oneof![
        common::singleton(n),
        common::ball(n),
        bounded_box(n),
        common::halfspace(n)
    ]
    .boxed()
}

fn special(n: usize, balanced: bool) -> impl Strategy<Value = SpecialInstance> {
    (omega(n), theta(n), 0.2..3.0f64, 1.0..3.0f64)
        .prop_filter("closed form", |(o, t, ..)| {
            !matches!((o, t), (ConvexSet::Ball { .. }, ConvexSet::AxisBox { .. }))
        })
        .prop_map(move |(o, t, beta, ratio)| {
            let alpha = if balanced { beta } else { beta * ratio };
            SpecialInstance::new(o, t, alpha, beta).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduced_maximizers_are_global_minimizers(
        (inst, samples) in (1..=3usize).prop_flat_map(|n| (
            prop_oneof![special(n, true), special(n, false)],
            prop::collection::vec(coords(n, 20.0), 1000),
        ))
    ) {
        let reduced = solve_reduced_max(&inst).unwrap();
        let gridded = matches!(reduced.kind, ReducedMaxKind::Grid { .. });
        prop_assert!(!gridded);
        for u in &reduced.points {
            let fu = inst.objective(u).unwrap();
            prop_assert!(inst.omega.contains(u, 1e-9 * (1.0 + u.norm())).unwrap());
            for x in &samples {
                prop_assert!(fu <= inst.objective(x).unwrap() + 1e-9);
            }
        }
    }

    #[test]
    fn rays_keep_a_constant_value(inst in (1..=3usize).prop_flat_map(|n| special(n, true))) {
        let SpecialSolution::RayFamily(rays) = solve_special(&inst).unwrap() else {
            return Ok(());
        };
        for ray in &rays {
            let expected = -inst.beta * inst.theta.distance(&ray.base).unwrap();
            for t in [0.0, 0.5, 1.0, 5.0] {
                let x = ray.at(t);
                let fx = inst.objective(&x).unwrap();
                prop_assert!((fx - expected).abs() <= 1e-9 * (1.0 + expected.abs() + t));
                // No solution lies in Θ \ Ω.
                let tol = 1e-9 * (1.0 + x.norm());
                prop_assert!(inst.theta.distance(&x).unwrap() > 0.0 || inst.omega.contains(&x, tol).unwrap());
            }
        }
    }

    #[test]
    fn reported_solutions_are_stationary(
        inst in (1..=3usize).prop_flat_map(|n| prop_oneof![special(n, true), special(n, false)])
    ) {
        let points = match solve_special(&inst).unwrap() {
            SpecialSolution::ReducedEquivalent(r) => {
                prop_assume!(r.kind == ReducedMaxKind::Exact);
                r.points
            }
            SpecialSolution::RayFamily(rays) => {
                rays.iter().flat_map(|r| [r.at(0.0), r.at(1.0), r.at(5.0)]).collect()
            }
        };
        for x in &points {
            let tol = 1e-7 * (1.0 + x.norm());
            let class = classify_point(&inst, x, tol).unwrap();
            prop_assert_ne!(class.stationary, Decision::No, "at {}", x);
            prop_assert_ne!(class.critical, Decision::No);
            if inst.theta.distance(x).unwrap() > tol {
                prop_assert_eq!(class.stationary, Decision::Yes, "at {}", x);
            }
        }
    }
}
