#![allow(dead_code)]

use fermat_dc::{ConvexSet, ProblemInstance, Vector, WeightedSet};
use proptest::prelude::*;

pub fn coords(n: usize, r: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-r..r, n).prop_map(Vector::from_vec)
}

pub fn singleton(n: usize) -> impl Strategy<Value = ConvexSet> {
    coords(n, 5.0).prop_map(|p| ConvexSet::singleton(p).unwrap())
}

pub fn ball(n: usize) -> impl Strategy<Value = ConvexSet> {
    (coords(n, 5.0), 0.1..3.0f64).prop_map(|(c, r)| ConvexSet::ball(c, r).unwrap())
}

/// Bounded box, possibly with degenerate coordinates.
pub fn bounded_box(n: usize) -> impl Strategy<Value = ConvexSet> {
    (
        coords(n, 5.0),
        prop::collection::vec(prop_oneof![Just(0.0), 0.1..3.0f64], n),
    )
        .prop_map(|(lo, widths)| {
            let upper = lo.iter().zip(&widths).map(|(l, w)| l + w).collect();
            ConvexSet::axis_box(lo.iter().copied().collect(), upper).unwrap()
        })
}

/// Box whose bounds may be infinite.
pub fn any_box(n: usize) -> impl Strategy<Value = ConvexSet> {
    (bounded_box(n), prop::collection::vec(0..4u8, n)).prop_map(|(b, opens)| {
        let ConvexSet::AxisBox {
            mut lower,
            mut upper,
        } = b
        else {
            unreachable!()
        };
        for (k, open) in opens.into_iter().enumerate() {
            match open {
                1 => lower[k] = f64::NEG_INFINITY,
                2 => upper[k] = f64::INFINITY,
                _ => {}
            }
        }
        ConvexSet::axis_box(lower, upper).unwrap()
    })
}

pub fn halfspace(n: usize) -> impl Strategy<Value = ConvexSet> {
    (coords(n, 1.0), -3.0..3.0f64)
        .prop_filter("nonzero normal", |(a, _)| a.norm() > 0.1)
        .prop_map(|(a, b)| ConvexSet::halfspace(a, b).unwrap())
}

pub fn any_set(n: usize) -> BoxedStrategy<ConvexSet> {
    prop_oneof![singleton(n), ball(n), any_box(n), halfspace(n)].boxed()
}

pub fn bounded_set(n: usize) -> BoxedStrategy<ConvexSet> {
    prop_oneof![singleton(n), ball(n), bounded_box(n)].boxed()
}

pub fn bounded_constraint(n: usize) -> BoxedStrategy<ConvexSet> {
    prop_oneof![
        (coords(n, 2.0), 2.0..8.0f64).prop_map(|(c, r)| ConvexSet::ball(c, r).unwrap()),
        (coords(n, 2.0), 2.0..8.0f64).prop_map(|(c, h)| ConvexSet::square(&c, h).unwrap()),
    ]
    .boxed()
}

pub fn weighted(sets: BoxedStrategy<ConvexSet>, max: usize) -> BoxedStrategy<Vec<WeightedSet>> {
    prop::collection::vec((sets, 0.2..3.0f64), 1..=max)
        .prop_map(|v| v.into_iter().map(|(s, w)| WeightedSet::new(s, w)).collect())
        .boxed()
}

/// Instance with bounded data sets and a bounded constraint, together with
/// a feasible point.
pub fn instance_with_start(n: usize) -> impl Strategy<Value = (ProblemInstance, Vector)> {
    (
        weighted(bounded_set(n), 3),
        prop::option::of(weighted(bounded_set(n), 3)),
        bounded_constraint(n),
        coords(n, 10.0),
    )
        .prop_map(|(a, r, s, x)| {
            let x0 = s.project(&x).unwrap();
            (
                ProblemInstance::new(a, r.unwrap_or_default(), s).unwrap(),
                x0,
            )
        })
}

/// Point of `q` obtained by projecting a sample.
pub fn point_in(q: &ConvexSet, sample: &Vector) -> Vector {
    q.project(sample).unwrap()
}
