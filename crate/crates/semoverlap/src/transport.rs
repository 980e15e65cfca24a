//! Exact and approximate solvers for the transportation problem between two
//! nBOW marginals, plus the cheap lower bounds used for pruning.
//!
//! The exact solver runs successive shortest paths with Dijkstra over
//! reduced costs (node potentials), which is globally optimal for the
//! min-cost transportation problem and deterministic for fixed inputs. The
//! entropic solver (`solve_sinkhorn`) is an opt-in approximation whose
//! returned plan is rounded back to the feasible polytope, so its objective
//! can only sit above the exact optimum.

use crate::embeddings::EmbeddingTable;
use crate::error::{Error, Result};
use crate::textproc::NBow;

/// Mass below this is treated as exhausted by the exact solver.
const DUST: f64 = 1e-12;

/// Marginal L1 error below this counts as Sinkhorn convergence.
const SINKHORN_TOL: f64 = 1e-9;

/// Dense non-negative cost matrix between two supports.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    /// Build from row-major data. Entries must be finite and non-negative.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDistribution {
                side: if rows == 0 { "row" } else { "column" },
            });
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "cost data length {} does not match {rows}x{cols}",
                    data.len()
                ),
            });
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cost entries must be finite and non-negative, found {bad}"
            )));
        }
        Ok(CostMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Cost of moving mass from row `i` to column `j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }
}

/// A transport plan with its cost.
#[derive(Debug, Clone)]
pub struct TransportResult {
    rows: usize,
    cols: usize,
    /// Row-major plan; `flow[i * cols + j]` is mass moved from i to j.
    pub flow: Vec<f64>,
    /// Total cost of `flow` under the cost matrix it was solved against.
    pub objective: f64,
    /// Augmentations (exact) or completed sweeps (Sinkhorn).
    pub iterations: usize,
    /// False only when Sinkhorn hit `max_iter` before its marginals settled.
    pub converged: bool,
}

impl TransportResult {
    /// Mass moved from row `i` to column `j`.
    pub fn flow_at(&self, i: usize, j: usize) -> f64 {
        self.flow[i * self.cols + j]
    }

    /// Row marginals of the plan.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.flow[i * self.cols..(i + 1) * self.cols].iter().sum())
            .collect()
    }

    /// Column marginals of the plan.
    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.flow[i * self.cols + j]).sum())
            .collect()
    }
}

/// Euclidean ground costs between the supports of two nBOWs.
pub fn cost_matrix(x: &NBow, y: &NBow, table: &EmbeddingTable) -> Result<CostMatrix> {
    if x.is_empty() {
        return Err(Error::EmptyDistribution { side: "row" });
    }
    if y.is_empty() {
        return Err(Error::EmptyDistribution { side: "column" });
    }
    let mut data = Vec::with_capacity(x.support.len() * y.support.len());
    for &xi in &x.support {
        let xv = table.row(xi);
        for &yj in &y.support {
            let yv = table.row(yj);
            data.push(euclidean(xv, yv));
        }
    }
    CostMatrix::new(x.support.len(), y.support.len(), data)
}

fn euclidean(a: &[f32], b: &[f32]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x as f64 - y as f64;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

fn validate_marginals(a: &[f64], b: &[f64], costs: &CostMatrix) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptyDistribution { side: "row" });
    }
    if b.is_empty() {
        return Err(Error::EmptyDistribution { side: "column" });
    }
    if a.len() != costs.rows() || b.len() != costs.cols() {
        return Err(Error::ShapeMismatch {
            context: format!(
                "marginals {}x{} against a {}x{} cost matrix",
                a.len(),
                b.len(),
                costs.rows(),
                costs.cols()
            ),
        });
    }
    if a.iter().chain(b).any(|&w| !w.is_finite() || w < 0.0) {
        return Err(Error::InvalidParameter(
            "marginal weights must be finite and non-negative".into(),
        ));
    }
    let (sa, sb) = (a.iter().sum::<f64>(), b.iter().sum::<f64>());
    if sa <= 0.0 || sb <= 0.0 {
        return Err(Error::EmptyDistribution {
            side: if sa <= 0.0 { "row" } else { "column" },
        });
    }
    if (sa - sb).abs() > 1e-6 {
        return Err(Error::InvalidParameter(format!(
            "marginal masses differ: {sa} vs {sb}"
        )));
    }
    Ok(())
}

/// Solve the transportation problem exactly.
///
/// Returns the globally optimal plan; `objective` is the plan's cost summed
/// directly from `flow` and `costs`. Deterministic: ties in the shortest-path
/// search break toward lower node indices.
pub fn solve_exact(a: &[f64], b: &[f64], costs: &CostMatrix) -> Result<TransportResult> {
    validate_marginals(a, b, costs)?;
    let (m, n) = (costs.rows(), costs.cols());
    let nn = m + n;
    let mut flow = vec![0.0f64; m * n];
    let mut rem_a = a.to_vec();
    let mut rem_b = b.to_vec();
    let mut pot = vec![0.0f64; nn];
    let mut iterations = 0usize;
    let cap = 64 * nn + 1024;

    loop {
        let supply_left = rem_a.iter().any(|&r| r > DUST);
        let demand_left = rem_b.iter().any(|&r| r > DUST);
        if !supply_left || !demand_left {
            break;
        }
        if iterations >= cap {
            return Err(Error::InvalidParameter(
                "transport solver exceeded its augmentation budget".into(),
            ));
        }

        // Multi-source Dijkstra over reduced costs. Sources with remaining
        // supply start at distance zero; sink nodes are offset by m.
        let mut dist = vec![f64::INFINITY; nn];
        let mut parent: Vec<usize> = vec![usize::MAX; nn];
        let mut done = vec![false; nn];
        for (i, &r) in rem_a.iter().enumerate() {
            if r > DUST {
                dist[i] = 0.0;
            }
        }
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for v in 0..nn {
                if !done[v] && dist[v] < best {
                    best = dist[v];
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            if u < m {
                for j in 0..n {
                    let v = m + j;
                    if done[v] {
                        continue;
                    }
                    let rc = (costs.get(u, j) + pot[u] - pot[v]).max(0.0);
                    let nd = dist[u] + rc;
                    if nd < dist[v] {
                        dist[v] = nd;
                        parent[v] = u;
                    }
                }
            } else {
                let j = u - m;
                for i in 0..m {
                    if done[i] || flow[i * n + j] <= 0.0 {
                        continue;
                    }
                    let rc = (-costs.get(i, j) + pot[u] - pot[i]).max(0.0);
                    let nd = dist[u] + rc;
                    if nd < dist[i] {
                        dist[i] = nd;
                        parent[i] = u;
                    }
                }
            }
        }

        // Nearest sink that still needs mass; ties go to the lower index.
        let mut sink = usize::MAX;
        let mut best = f64::INFINITY;
        for (j, &r) in rem_b.iter().enumerate() {
            if r > DUST && dist[m + j] < best {
                best = dist[m + j];
                sink = m + j;
            }
        }
        if sink == usize::MAX {
            break;
        }

        // Bottleneck: remaining demand, remaining supply at the path root,
        // and every backward arc's current flow.
        let mut bottleneck = rem_b[sink - m];
        let mut v = sink;
        while parent[v] != usize::MAX {
            let p = parent[v];
            if v < m {
                // Backward arc sink p -> source v.
                bottleneck = bottleneck.min(flow[v * n + (p - m)]);
            }
            v = p;
        }
        let root = v;
        bottleneck = bottleneck.min(rem_a[root]);

        let mut v = sink;
        while parent[v] != usize::MAX {
            let p = parent[v];
            if v >= m {
                flow[p * n + (v - m)] += bottleneck;
            } else {
                flow[v * n + (p - m)] -= bottleneck;
            }
            v = p;
        }
        rem_a[root] -= bottleneck;
        rem_b[sink - m] -= bottleneck;

        let dt = dist[sink];
        for v in 0..nn {
            pot[v] += dist[v].min(dt);
        }
        iterations += 1;
    }

    let objective = objective_of(&flow, costs);
    Ok(TransportResult {
        rows: m,
        cols: n,
        flow,
        objective,
        iterations,
        converged: true,
    })
}

fn objective_of(flow: &[f64], costs: &CostMatrix) -> f64 {
    let n = costs.cols();
    flow.iter()
        .enumerate()
        .map(|(idx, &f)| f * costs.get(idx / n, idx % n))
        .sum()
}

/// Distance between the weighted centroids of two nBOWs.
///
/// Always a lower bound on the exact transport objective over the same
/// supports and Euclidean costs.
pub fn wcd_lower_bound(x: &NBow, y: &NBow, table: &EmbeddingTable) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyDistribution { side: "row" });
    }
    if y.is_empty() {
        return Err(Error::EmptyDistribution { side: "column" });
    }
    let dim = table.dim();
    let mut cx = vec![0.0f64; dim];
    for (&row, &w) in x.support.iter().zip(&x.weights) {
        for (acc, &v) in cx.iter_mut().zip(table.row(row)) {
            *acc += w * v as f64;
        }
    }
    let mut cy = vec![0.0f64; dim];
    for (&row, &w) in y.support.iter().zip(&y.weights) {
        for (acc, &v) in cy.iter_mut().zip(table.row(row)) {
            *acc += w * v as f64;
        }
    }
    Ok(cx
        .iter()
        .zip(&cy)
        .map(|(&p, &q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt())
}

/// Relaxed transport bound: the larger of the two one-sided relaxations
/// (each side ships its mass to its cheapest counterpart).
///
/// Always a lower bound on the exact objective for the same inputs. Neither
/// this nor [`wcd_lower_bound`] dominates the other: skewed weights over
/// shared or nearby supports push the centroid bound above the relaxed
/// bound, so pruning must treat them as independent bounds.
pub fn rwmd_lower_bound(a: &[f64], b: &[f64], costs: &CostMatrix) -> Result<f64> {
    validate_marginals(a, b, costs)?;
    let (m, n) = (costs.rows(), costs.cols());
    let mut forward = 0.0;
    for (i, &w) in a.iter().enumerate() {
        let mut best = f64::INFINITY;
        for j in 0..n {
            best = best.min(costs.get(i, j));
        }
        forward += w * best;
    }
    let mut backward = 0.0;
    for (j, &w) in b.iter().enumerate() {
        let mut best = f64::INFINITY;
        for i in 0..m {
            best = best.min(costs.get(i, j));
        }
        backward += w * best;
    }
    Ok(forward.max(backward))
}

/// Entropically regularized transport, log-domain, rounded to feasibility.
///
/// The returned `flow` satisfies both marginals up to float dust, so its
/// `objective` is never below the exact optimum. `converged` reports whether
/// the marginal error dropped under tolerance before `max_iter` sweeps.
pub fn solve_sinkhorn(
    a: &[f64],
    b: &[f64],
    costs: &CostMatrix,
    epsilon: f64,
    max_iter: usize,
) -> Result<TransportResult> {
    validate_marginals(a, b, costs)?;
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sinkhorn epsilon must be positive, got {epsilon}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::InvalidParameter(
            "sinkhorn max_iter must be at least 1".into(),
        ));
    }
    if a.iter().chain(b).any(|&w| w <= 0.0) {
        return Err(Error::InvalidParameter(
            "sinkhorn requires strictly positive marginals".into(),
        ));
    }
    let (m, n) = (costs.rows(), costs.cols());
    let log_a: Vec<f64> = a.iter().map(|&w| w.ln()).collect();
    let log_b: Vec<f64> = b.iter().map(|&w| w.ln()).collect();
    // Scaled potentials: plan_ij = exp(f[i] + g[j] - C_ij / eps).
    let mut f = vec![0.0f64; m];
    let mut g = vec![0.0f64; n];
    let mut iterations = 0usize;
    let mut converged = false;

    let mut scratch = vec![0.0f64; m.max(n)];
    while iterations < max_iter {
        for i in 0..m {
            for j in 0..n {
                scratch[j] = g[j] - costs.get(i, j) / epsilon;
            }
            f[i] = log_a[i] - logsumexp(&scratch[..n]);
        }
        for j in 0..n {
            for i in 0..m {
                scratch[i] = f[i] - costs.get(i, j) / epsilon;
            }
            g[j] = log_b[j] - logsumexp(&scratch[..m]);
        }
        iterations += 1;

        // After a g-update the column marginals are exact; convergence is
        // the row-marginal L1 error.
        let mut err = 0.0;
        for i in 0..m {
            let mut row = 0.0;
            for (j, gj) in g.iter().enumerate() {
                row += (f[i] + gj - costs.get(i, j) / epsilon).exp();
            }
            err += (row - a[i]).abs();
        }
        if err < SINKHORN_TOL {
            converged = true;
            break;
        }
    }

    let mut flow = vec![0.0f64; m * n];
    for i in 0..m {
        for j in 0..n {
            flow[i * n + j] = (f[i] + g[j] - costs.get(i, j) / epsilon).exp();
        }
    }
    round_to_feasible(&mut flow, a, b, m, n);
    let objective = objective_of(&flow, costs);
    Ok(TransportResult {
        rows: m,
        cols: n,
        flow,
        objective,
        iterations,
        converged,
    })
}

fn logsumexp(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + values.iter().map(|&v| (v - max).exp()).sum::<f64>().ln()
}

/// Scale rows then columns down to their marginals and spread the leftover
/// mass proportionally, yielding an exactly feasible plan.
fn round_to_feasible(flow: &mut [f64], a: &[f64], b: &[f64], m: usize, n: usize) {
    for i in 0..m {
        let row: f64 = flow[i * n..(i + 1) * n].iter().sum();
        if row > a[i] && row > 0.0 {
            let scale = a[i] / row;
            for v in &mut flow[i * n..(i + 1) * n] {
                *v *= scale;
            }
        }
    }
    for j in 0..n {
        let col: f64 = (0..m).map(|i| flow[i * n + j]).sum();
        if col > b[j] && col > 0.0 {
            let scale = b[j] / col;
            for i in 0..m {
                flow[i * n + j] *= scale;
            }
        }
    }
    let err_a: Vec<f64> = (0..m)
        .map(|i| (a[i] - flow[i * n..(i + 1) * n].iter().sum::<f64>()).max(0.0))
        .collect();
    let err_b: Vec<f64> = (0..n)
        .map(|j| (b[j] - (0..m).map(|i| flow[i * n + j]).sum::<f64>()).max(0.0))
        .collect();
    let total: f64 = err_a.iter().sum();
    if total > 0.0 {
        for i in 0..m {
            for j in 0..n {
                flow[i * n + j] += err_a[i] * err_b[j] / total;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::to_nbow;

    fn matrix(rows: usize, cols: usize, data: &[f64]) -> CostMatrix {
        CostMatrix::new(rows, cols, data.to_vec()).unwrap()
    }

    #[test]
    fn exact_identity_supports_cost_zero() {
        let costs = matrix(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let plan = solve_exact(&[0.5, 0.5], &[0.5, 0.5], &costs).unwrap();
        assert_eq!(plan.objective, 0.0);
        assert_eq!(plan.flow_at(0, 0), 0.5);
        assert_eq!(plan.flow_at(1, 1), 0.5);
        assert_eq!(plan.flow_at(0, 1), 0.0);
    }

    #[test]
    fn exact_single_source_splits_by_demand() {
        let costs = matrix(1, 2, &[2.0, 5.0]);
        let plan = solve_exact(&[1.0], &[0.3, 0.7], &costs).unwrap();
        assert!((plan.objective - 4.1).abs() < 1e-12);
        assert!((plan.flow_at(0, 0) - 0.3).abs() < 1e-12);
        assert!((plan.flow_at(0, 1) - 0.7).abs() < 1e-12);
    }

    #[test]
    fn exact_skewed_demand_reroutes_mass() {
        // Optimal: keep matched mass in place, move 0.4 across at cost 2.
        let costs = matrix(2, 2, &[0.0, 2.0, 2.0, 0.0]);
        let plan = solve_exact(&[0.5, 0.5], &[0.9, 0.1], &costs).unwrap();
        assert!((plan.objective - 0.8).abs() < 1e-12);
        let rows = plan.row_sums();
        let cols = plan.col_sums();
        assert!((rows[0] - 0.5).abs() < 1e-9 && (rows[1] - 0.5).abs() < 1e-9);
        assert!((cols[0] - 0.9).abs() < 1e-9 && (cols[1] - 0.1).abs() < 1e-9);
    }

    #[test]
    fn exact_rejects_empty_and_mismatched_inputs() {
        let costs = matrix(1, 1, &[1.0]);
        assert!(matches!(
            solve_exact(&[], &[1.0], &costs),
            Err(Error::EmptyDistribution { .. })
        ));
        assert!(matches!(
            solve_exact(&[1.0], &[0.5], &costs),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            solve_exact(&[0.5, 0.5], &[1.0], &costs),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn objective_matches_flow_times_cost() {
        let costs = matrix(2, 3, &[0.3, 1.0, 2.0, 0.9, 0.1, 0.4]);
        let plan = solve_exact(&[0.6, 0.4], &[0.2, 0.5, 0.3], &costs).unwrap();
        let recomputed: f64 = (0..2)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| plan.flow_at(i, j) * costs.get(i, j))
            .sum();
        assert!((plan.objective - recomputed).abs() < 1e-15);
    }

    fn two_word_table() -> EmbeddingTable {
        EmbeddingTable::from_pairs(
            2,
            vec![
                ("cat", vec![0.0f32, 0.0]),
                ("dog", vec![3.0, 4.0]),
                ("fish", vec![6.0, 8.0]),
            ],
        )
        .unwrap()
    }

    fn nbow_of(table: &EmbeddingTable, tokens: &[&str]) -> NBow {
        let tokens: Vec<String> = tokens.iter().map(|s| s.to_string()).collect();
        to_nbow(&tokens, table, None)
    }

    #[test]
    fn cost_matrix_is_euclidean() {
        let table = two_word_table();
        let x = nbow_of(&table, &["cat", "dog"]);
        let y = nbow_of(&table, &["fish"]);
        let costs = cost_matrix(&x, &y, &table).unwrap();
        assert_eq!(costs.rows(), 2);
        assert_eq!(costs.cols(), 1);
        assert!((costs.get(0, 0) - 10.0).abs() < 1e-9);
        assert!((costs.get(1, 0) - 5.0).abs() < 1e-9);
    }

    #[test]
    fn cost_matrix_zero_only_on_identical_tokens() {
        let table = two_word_table();
        let x = nbow_of(&table, &["cat", "dog"]);
        let costs = cost_matrix(&x, &x, &table).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(costs.get(i, j), 0.0);
                } else {
                    assert!(costs.get(i, j) > 0.0);
                }
            }
        }
    }

    #[test]
    fn bounds_sit_under_exact_on_hand_case() {
        let table = two_word_table();
        let x = nbow_of(&table, &["cat", "dog"]);
        let y = nbow_of(&table, &["dog", "fish"]);
        let costs = cost_matrix(&x, &y, &table).unwrap();
        let exact = solve_exact(&x.weights, &y.weights, &costs)
            .unwrap()
            .objective;
        let wcd = wcd_lower_bound(&x, &y, &table).unwrap();
        let rwmd = rwmd_lower_bound(&x.weights, &y.weights, &costs).unwrap();
        assert!(wcd <= exact + 1e-12, "wcd {wcd} > exact {exact}");
        assert!(rwmd <= exact + 1e-12, "rwmd {rwmd} > exact {exact}");
    }

    #[test]
    fn wcd_of_identical_nbows_is_zero() {
        let table = two_word_table();
        let x = nbow_of(&table, &["cat", "dog", "dog"]);
        assert!(wcd_lower_bound(&x, &x, &table).unwrap() < 1e-12);
    }

    // Shared supports with opposite weight skew: every point has a
    // zero-cost counterpart (rwmd 0) while the centroids sit far apart,
    // so the centroid bound exceeds the relaxed bound. The two bounds
    // carry no mutual ordering; only exact dominates both.
    #[test]
    fn bound_order_is_not_fixed_between_wcd_and_rwmd() {
        let table = two_word_table();
        let x = nbow_of(
            &table,
            &["cat", "cat", "cat", "cat", "cat", "cat", "cat", "cat", "cat", "dog"],
        );
        let y = nbow_of(
            &table,
            &["cat", "dog", "dog", "dog", "dog", "dog", "dog", "dog", "dog", "dog"],
        );
        let costs = cost_matrix(&x, &y, &table).unwrap();
        let exact = solve_exact(&x.weights, &y.weights, &costs)
            .unwrap()
            .objective;
        let wcd = wcd_lower_bound(&x, &y, &table).unwrap();
        let rwmd = rwmd_lower_bound(&x.weights, &y.weights, &costs).unwrap();
        // cat-dog distance is 5; shifting 0.8 mass costs 4.
        assert!((exact - 4.0).abs() < 1e-12);
        assert!((wcd - 4.0).abs() < 1e-12);
        assert!(rwmd.abs() < 1e-12);
        assert!(wcd > rwmd, "this instance must invert the usual order");
        assert!(wcd <= exact + 1e-12);
        assert!(rwmd <= exact + 1e-12);
    }

    #[test]
    fn sinkhorn_objective_dominates_exact() {
        let costs = matrix(2, 2, &[0.0, 2.0, 2.0, 0.0]);
        let a = [0.5, 0.5];
        let b = [0.9, 0.1];
        let exact = solve_exact(&a, &b, &costs).unwrap().objective;
        for epsilon in [0.5, 0.05, 0.005] {
            let approx = solve_sinkhorn(&a, &b, &costs, epsilon, 10_000).unwrap();
            assert!(
                approx.objective >= exact - 1e-9,
                "epsilon {epsilon}: {} < {exact}",
                approx.objective
            );
            let rows = approx.row_sums();
            let cols = approx.col_sums();
            assert!((rows[0] - 0.5).abs() < 1e-7 && (rows[1] - 0.5).abs() < 1e-7);
            assert!((cols[0] - 0.9).abs() < 1e-7 && (cols[1] - 0.1).abs() < 1e-7);
        }
    }

    #[test]
    fn sinkhorn_flags_non_convergence() {
        let costs = matrix(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let result = solve_sinkhorn(&[0.5, 0.5], &[0.3, 0.7], &costs, 0.001, 1).unwrap();
        assert!(!result.converged);
        assert_eq!(result.iterations, 1);
        // The rounded plan must still be feasible.
        let rows = result.row_sums();
        assert!((rows[0] - 0.5).abs() < 1e-7 && (rows[1] - 0.5).abs() < 1e-7);
    }

    #[test]
    fn sinkhorn_rejects_bad_parameters() {
        let costs = matrix(1, 1, &[1.0]);
        assert!(solve_sinkhorn(&[1.0], &[1.0], &costs, 0.0, 10).is_err());
        assert!(solve_sinkhorn(&[1.0], &[1.0], &costs, 0.1, 0).is_err());
    }
}
