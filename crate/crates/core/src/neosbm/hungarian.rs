//! Optimal assignment on a square integer matrix (Kuhn-Munkres with
//! potentials, `O(n³)`).

use alloc::vec;
use alloc::vec::Vec;

/// Column assigned to each row maximizing the total `weight`, and that total.
pub fn max_weight_assignment(weight: &[Vec<i64>]) -> (Vec<usize>, i64) {
    let n = weight.len();
    if n == 0 {
        return (Vec::new(), 0);
    }
    debug_assert!(weight.iter().all(|row| row.len() == n));
    // 1-based arrays with a virtual row/column 0
    let cost = |i: usize, j: usize| -weight[i - 1][j - 1];
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        row_to_col[p[j] - 1] = j - 1;
    }
    let total = (0..n).map(|i| weight[i][row_to_col[i]]).sum();
    (row_to_col, total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(weight: &[Vec<i64>]) -> i64 {
        fn go(w: &[Vec<i64>], row: usize, used: &mut Vec<bool>) -> i64 {
            if row == w.len() {
                return 0;
            }
            let mut best = i64::MIN;
            for j in 0..w.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.max(w[row][j] + go(w, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        go(weight, 0, &mut vec![false; weight.len()])
    }

    #[test]
    fn matches_brute_force() {
        let mut state = 12345u64;
        for n in 1..=6 {
            for _ in 0..30 {
                let w: Vec<Vec<i64>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                state = state
                                    .wrapping_mul(6364136223846793005)
                                    .wrapping_add(1442695040888963407);
                                ((state >> 33) % 10) as i64
                            })
                            .collect()
                    })
                    .collect();
                let (assign, total) = max_weight_assignment(&w);
                assert_eq!(total, brute(&w));
                let mut cols = assign.clone();
                cols.sort_unstable();
                assert_eq!(cols, (0..n).collect::<Vec<_>>());
            }
        }
    }
}
