//! Min-cost perfect assignment (Hungarian method with potentials).

/// Returns `perm` with `perm[row] = col` minimizing `sum cost[row][perm[row]]`.
///
/// `cost` is row-major `n x n`. Runs in `O(n^3)` using shortest augmenting
/// paths with row/column potentials; handles arbitrary finite real costs.
pub fn min_cost_assignment(n: usize, cost: &[f64]) -> Vec<usize> {
    debug_assert_eq!(cost.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    // 1-based arrays; index 0 is the virtual column used to start augmentations
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut matched_row = vec![0usize; n + 1]; // matched_row[col] = row
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        matched_row[0] = row;
        let mut col0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r0 = matched_row[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0usize;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let cur = cost[(r0 - 1) * n + (col - 1)] - u[r0] - v[col];
                if cur < minv[col] {
                    minv[col] = cur;
                    way[col] = col0;
                }
                if minv[col] < delta {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for col in 0..=n {
                if used[col] {
                    u[matched_row[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
            if matched_row[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            matched_row[col0] = matched_row[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0usize; n];
    for col in 1..=n {
        perm[matched_row[col] - 1] = col - 1;
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cost_of(n: usize, cost: &[f64], perm: &[usize]) -> f64 {
        (0..n).map(|r| cost[r * n + perm[r]]).sum()
    }

    fn brute_force(n: usize, cost: &[f64]) -> f64 {
        fn rec(n: usize, cost: &[f64], row: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64) {
            if row == n {
                *best = best.min(acc);
                return;
            }
            for c in 0..n {
                if !used[c] {
                    used[c] = true;
                    rec(n, cost, row + 1, used, acc + cost[row * n + c], best);
                    used[c] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        rec(n, cost, 0, &mut vec![false; n], 0.0, &mut best);
        best
    }

    #[test]
    fn anti_diagonal() {
        let n = 3;
        let mut cost = vec![1.0; 9];
        for r in 0..3 {
            cost[r * 3 + (2 - r)] = 0.0;
        }
        assert_eq!(min_cost_assignment(n, &cost), vec![2, 1, 0]);
    }

    #[test]
    fn matches_brute_force_with_negative_costs() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        for n in 1..=6 {
            for _ in 0..20 {
                let cost: Vec<f64> = (0..n * n).map(|_| next()).collect();
                let perm = min_cost_assignment(n, &cost);
                let mut seen = perm.clone();
                seen.sort_unstable();
                assert_eq!(seen, (0..n).collect::<Vec<_>>());
                assert!((cost_of(n, &cost, &perm) - brute_force(n, &cost)).abs() < 1e-9);
            }
        }
    }
}
