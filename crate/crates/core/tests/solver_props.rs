mod common;

use common::{bounded_constraint, bounded_set, coords, instance_with_start, weighted};
use fermat_dc::dca::{dca_solve, DcaConfig};
use fermat_dc::inner::{solve_inner, weiszfeld_solve, InnerConfig, InnerMethod, InnerProblem};
use fermat_dc::{ConvexSet, Error, Vector, WeightedSet};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Subproblem {
    targets: Vec<WeightedSet>,
    constraint: ConvexSet,
    v: Vector,
    lambda: f64,
    x0: Vector,
    x1: Vector,
}

impl Subproblem {
    fn problem(&self) -> InnerProblem<'_> {
        InnerProblem {
            v: self.v.clone(),
            lambda: self.lambda,
            attractions: &self.targets,
            constraint: &self.constraint,
        }
    }
}

fn subproblem(n: usize) -> impl Strategy<Value = Subproblem> {
    (
        weighted(bounded_set(n), 4),
        bounded_constraint(n),
        coords(n, 5.0),
        0.1..5.0f64,
        coords(n, 10.0),
        coords(n, 10.0),
    )
        .prop_map(|(targets, constraint, v, lambda, a, b)| Subproblem {
            x0: constraint.project(&a).unwrap(),
            x1: constraint.project(&b).unwrap(),
            targets,
            constraint,
            v,
            lambda,
        })
}

/// Subproblem whose target sets stay away from the constraint, so the
/// Weiszfeld map is defined everywhere on it.
fn separated_subproblem(n: usize) -> impl Strategy<Value = Subproblem> {
    (
        prop::collection::vec((coords(n, 1.0), 10.0..20.0f64, 0.2..3.0f64), 1..=4),
        coords(n, 1.0),
        2.0..5.0f64,
        coords(n, 5.0),
        0.1..5.0f64,
        coords(n, 10.0),
        coords(n, 10.0),
    )
        .prop_filter("nonzero directions", |(t, ..)| {
            t.iter().all(|(d, ..)| d.norm() > 0.1)
        })
        .prop_map(|(dirs, c, r, v, lambda, a, b)| {
            let constraint = ConvexSet::ball(c.clone(), r).unwrap();
            let targets = dirs
                .into_iter()
                .map(|(d, dist, w)| {
                    let p = &c + d.normalize() * dist;
                    WeightedSet::new(ConvexSet::singleton(p).unwrap(), w)
                })
                .collect();
            Subproblem {
                x0: constraint.project(&a).unwrap(),
                x1: constraint.project(&b).unwrap(),
                targets,
                constraint,
                v,
                lambda,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn weiszfeld_steps_descend(sp in (1..=3usize).prop_flat_map(subproblem)) {
        let prob = sp.problem();
        let mut x = sp.x0.clone();
        let mut phi_x = prob.phi(&x).unwrap();
        for next in prob.weiszfeld_iterates(x.clone()).take(300) {
            let next = match next {
                Ok(next) => next,
                Err(Error::OnTargetSet { .. }) => break,
                Err(e) => panic!("{e}"),
            };
            prop_assert!(sp.constraint.contains(&next, 1e-9 * (1.0 + next.norm())).unwrap());
            let modulus = sp.lambda
                + sp.targets.iter().map(|w| w.weight / w.set.distance(&x).unwrap()).sum::<f64>();
            let certified = 0.5 * modulus * (&next - &x).norm_squared();
            let phi_next = prob.phi(&next).unwrap();
            let scale = phi_x.abs() + sp.lambda * x.norm_squared() + sp.v.norm() * x.norm()
                + sp.targets.iter().map(|w| w.weight * w.set.distance(&x).unwrap()).sum::<f64>();
            let slack = 64.0 * f64::EPSILON * (1.0 + scale);
            prop_assert!(phi_x - phi_next >= certified - slack);
            if certified > slack {
                prop_assert!(phi_next < phi_x);
            }
            x = next;
            phi_x = phi_next;
        }
    }

    #[test]
    fn auto_solve_never_worsens_the_start(sp in (1..=3usize).prop_flat_map(subproblem)) {
        let prob = sp.problem();
        let res = solve_inner(&prob, &sp.x0, &InnerConfig::default()).unwrap();
        prop_assert!(res.value <= prob.phi(&sp.x0).unwrap());
        prop_assert!(sp.constraint.contains(&res.x, 1e-9 * (1.0 + res.x.norm())).unwrap());
    }

    #[test]
    fn weiszfeld_minimizer_is_unique(sp in (1..=3usize).prop_flat_map(separated_subproblem)) {
        let prob = sp.problem();
        let cfg = InnerConfig { max_iters: 20_000, ..InnerConfig::default() };
        let a = weiszfeld_solve(&prob, &sp.x0, &cfg).unwrap();
        let b = weiszfeld_solve(&prob, &sp.x1, &cfg).unwrap();
        prop_assert!(a.converged && b.converged);
        prop_assert!((&a.x - &b.x).norm() <= 10.0 * cfg.step_tol, "{} vs {}", a.x, b.x);
    }

    #[test]
    fn dca_descends_and_stays_feasible(
        (inst, x0) in (1..=3usize).prop_flat_map(instance_with_start),
        lambda in 0.1..5.0f64,
    ) {
        let cfg = DcaConfig { lambda, max_outer: 200, record_trajectory: true, ..DcaConfig::default() };
        let report = dca_solve(&inst, &x0, &cfg).unwrap();
        prop_assert!(report.outer_iterations <= cfg.max_outer);
        let traj = report.trajectory.unwrap();
        for p in &traj {
            prop_assert!(inst.constraint.contains(&p.x, 1e-9 * (1.0 + p.x.norm())).unwrap());
        }
        for pair in traj.windows(2) {
            let drop = 0.5 * lambda * pair[1].step_norm.powi(2);
            prop_assert!(pair[1].f_value <= pair[0].f_value - drop + 1e-7);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The Weiszfeld limit is no worse than any point of a fine grid on `S`.
    #[test]
    fn weiszfeld_fixed_point_beats_grid(sp in separated_subproblem(2)) {
        let prob = sp.problem();
        let res = weiszfeld_solve(&prob, &sp.x0, &InnerConfig { max_iters: 20_000, ..InnerConfig::default() }).unwrap();
        let mapped = sp.constraint.project(&prob.weiszfeld_map(&res.x).unwrap()).unwrap();
        prop_assume!((mapped - &res.x).norm() <= 1e-10);
        let r = sp.constraint.bounding_radius().unwrap();
        let m = 201;
        let mut grid_min = f64::INFINITY;
        for i in 0..m {
            for j in 0..m {
                let p = Vector::from_vec(vec![
                    -r + 2.0 * r * i as f64 / (m - 1) as f64,
                    -r + 2.0 * r * j as f64 / (m - 1) as f64,
                ]);
                grid_min = grid_min.min(prob.phi(&sp.constraint.project(&p).unwrap()).unwrap());
            }
        }
        prop_assert!(res.value <= grid_min + 1e-9);
    }

    #[test]
    fn subgradient_method_matches_weiszfeld(sp in (1..=3usize).prop_flat_map(separated_subproblem)) {
        let prob = sp.problem();
        let w = weiszfeld_solve(&prob, &sp.x0, &InnerConfig::default()).unwrap();
        let s = solve_inner(&prob, &sp.x0, &InnerConfig {
            method: InnerMethod::Subgradient,
            max_iters: 10_000,
            ..InnerConfig::default()
        }).unwrap();
        prop_assert!(w.value <= s.value + 1e-12 * (1.0 + w.value.abs()));
        prop_assert!(s.value - w.value <= 1e-3 * (1.0 + w.value.abs()));
    }
}
