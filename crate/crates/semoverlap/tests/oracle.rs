//! Sanity checks for the independent LP transport solver in `common`,
//! against hand-worked instances and closed forms that need no simplex.

mod common;

use common::{lp_transport, random_flat_instance, seeded_rng};
use rand::Rng;

#[test]
fn oracle_matches_hand_instances() {
    // Identical marginals with a zero diagonal move nothing.
    let (obj, _) = lp_transport(&[0.5, 0.5], &[0.5, 0.5], &[0.0, 1.0, 1.0, 0.0]);
    assert!(obj.abs() < 1e-12, "identity objective {obj}");

    // Skewed demand forces 0.4 mass across a cost-2 edge.
    let (obj, _) = lp_transport(&[0.5, 0.5], &[0.9, 0.1], &[0.0, 2.0, 2.0, 0.0]);
    assert!((obj - 0.8).abs() < 1e-12, "skew objective {obj}");

    // Single supply and demand ships everything at the only cost.
    let (obj, _) = lp_transport(&[1.0], &[1.0], &[3.5]);
    assert!((obj - 3.5).abs() < 1e-12, "singleton objective {obj}");

    // One source splitting over two sinks pays the weighted average.
    let (obj, _) = lp_transport(&[1.0], &[0.3, 0.7], &[2.0, 4.0]);
    assert!((obj - 3.4).abs() < 1e-12, "split objective {obj}");
}

#[test]
fn oracle_flows_are_feasible_and_priced() {
    let mut rng = seeded_rng(11);
    for _ in 0..300 {
        let inst = random_flat_instance(&mut rng);
        let (obj, flow) = lp_transport(&inst.a, &inst.b, &inst.costs);
        for (i, &ai) in inst.a.iter().enumerate() {
            let row: f64 = flow[i * inst.n..(i + 1) * inst.n].iter().sum();
            assert!((row - ai).abs() < 1e-9, "row {i} sum {row} vs {ai}");
        }
        for (j, &bj) in inst.b.iter().enumerate() {
            let col: f64 = (0..inst.m).map(|i| flow[i * inst.n + j]).sum();
            assert!((col - bj).abs() < 1e-9, "col {j} sum {col} vs {bj}");
        }
        assert!(flow.iter().all(|&f| f >= -1e-12), "negative flow");
        let priced: f64 = flow.iter().zip(&inst.costs).map(|(f, c)| f * c).sum();
        assert!((obj - priced).abs() < 1e-12, "objective consistency");
    }
}

#[test]
fn oracle_matches_two_by_two_endpoints() {
    // A 2x2 transportation polytope is a segment in the free variable
    // t = x00; a linear objective attains its optimum at an endpoint.
    let mut rng = seeded_rng(12);
    for _ in 0..300 {
        let a0: f64 = rng.gen_range(0.05..0.95);
        let b0: f64 = rng.gen_range(0.05..0.95);
        let a = [a0, 1.0 - a0];
        let b = [b0, 1.0 - b0];
        let costs: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..3.0)).collect();
        let objective_at = |t: f64| {
            costs[0] * t + costs[1] * (a[0] - t) + costs[2] * (b[0] - t)
                + costs[3] * (a[1] - (b[0] - t))
        };
        let low = (b[0] - a[1]).max(0.0);
        let high = a[0].min(b[0]);
        let best = objective_at(low).min(objective_at(high));
        let (obj, _) = lp_transport(&a, &b, &costs);
        assert!(
            (obj - best).abs() < 1e-10,
            "lp {obj} vs endpoint minimum {best}"
        );
    }
}

#[test]
fn oracle_matches_monotone_coupling_on_the_line() {
    // For costs |p_i - q_j| with sorted points, the monotone (quantile)
    // coupling is optimal, so a two-pointer sweep prices the optimum.
    let mut rng = seeded_rng(13);
    for _ in 0..300 {
        let m = rng.gen_range(1..=6);
        let n = rng.gen_range(1..=6);
        let mut p: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let mut q: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        p.sort_by(f64::total_cmp);
        q.sort_by(f64::total_cmp);
        let raw_a: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..1.0)).collect();
        let raw_b: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
        let sum_a: f64 = raw_a.iter().sum();
        let sum_b: f64 = raw_b.iter().sum();
        let a: Vec<f64> = raw_a.iter().map(|w| w / sum_a).collect();
        let b: Vec<f64> = raw_b.iter().map(|w| w / sum_b).collect();

        let mut costs = Vec::with_capacity(m * n);
        for &pi in &p {
            for &qj in &q {
                costs.push((pi - qj).abs());
            }
        }

        let mut sweep = 0.0;
        let mut rem_a = a.clone();
        let mut rem_b = b.clone();
        let (mut i, mut j) = (0, 0);
        while i < m && j < n {
            let f = rem_a[i].min(rem_b[j]);
            sweep += f * (p[i] - q[j]).abs();
            rem_a[i] -= f;
            rem_b[j] -= f;
            if rem_a[i] <= 1e-15 {
                i += 1;
            }
            if j < n && rem_b[j] <= 1e-15 {
                j += 1;
            }
        }

        let (obj, _) = lp_transport(&a, &b, &costs);
        assert!(
            (obj - sweep).abs() < 1e-9,
            "lp {obj} vs monotone sweep {sweep} on {m}x{n}"
        );
    }
}
