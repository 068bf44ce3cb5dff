//! Rectangular linear sum assignment.
//!
//! The solver runs the shortest-augmenting-path Hungarian method on the
//! cost matrix padded to a square with zeros, which also yields optimal
//! dual potentials. Every optimal matching uses only edges whose reduced
//! cost is zero under those potentials, so the lexicographically smallest
//! optimal matching is found greedily on that tight subgraph, one row at a
//! time, with an augmenting-path feasibility check for each candidate.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major cost matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> CostMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.cols + col]
    }
}

/// A partial one-to-one matching between row and column indices.
///
/// Pairs are kept sorted by row index; no row and no column appears twice.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    pairs: Vec<(usize, usize)>,
}

impl Assignment {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if pairs[..k].iter().any(|&(i2, j2)| i2 == i || j2 == j) {
                return Err(Error::InvalidParams(format!(
                    "pair ({i}, {j}) reuses an index already assigned"
                )));
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn cost<T: Scalar>(&self, costs: &CostMatrix<T>) -> T {
        self.pairs.iter().map(|&(i, j)| costs.get(i, j)).sum()
    }

    pub(crate) fn retain(&mut self, keep: impl FnMut(&(usize, usize)) -> bool) {
        self.pairs.retain(keep);
    }
}

/// Minimum-cost matching covering every row when `rows <= cols`, otherwise
/// every column.
///
/// Among all minimum-cost matchings the lexicographically smallest pair
/// list (sorted by row) is returned.
pub fn solve_assignment<T: Scalar>(costs: &CostMatrix<T>) -> Result<Assignment> {
    for i in 0..costs.rows {
        for j in 0..costs.cols {
            if !costs.get(i, j).is_finite() {
                return Err(Error::NonFiniteCost { row: i, col: j });
            }
        }
    }
    if costs.rows == 0 || costs.cols == 0 {
        return Ok(Assignment::default());
    }

    let square = SquareProblem::new(costs);
    let (col_of_row, u, v) = square.hungarian();
    let col_of_row = square.lexicographic_canonical(col_of_row, &u, &v);

    let pairs = col_of_row
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i < costs.rows && j < costs.cols)
        .map(|(i, &j)| (i, j))
        .collect();
    Ok(Assignment { pairs })
}

struct SquareProblem<'a, T> {
    costs: &'a CostMatrix<T>,
    n: usize,
}

impl<'a, T: Scalar> SquareProblem<'a, T> {
    fn new(costs: &'a CostMatrix<T>) -> Self {
        Self {
            costs,
            n: costs.rows.max(costs.cols),
        }
    }

    fn cost(&self, i: usize, j: usize) -> T {
        if i < self.costs.rows && j < self.costs.cols {
            self.costs.get(i, j)
        } else {
            T::zero()
        }
    }

    /// Returns the optimal row-to-column map and the row/column potentials.
    fn hungarian(&self) -> (Vec<usize>, Vec<T>, Vec<T>) {
        let n = self.n;
        // 1-based internal indexing; slot 0 is the virtual root column.
        let mut u = vec![T::zero(); n + 1];
        let mut v = vec![T::zero(); n + 1];
        let mut row_of_col = vec![0usize; n + 1];
        let mut way = vec![0usize; n + 1];

        for i in 1..=n {
            row_of_col[0] = i;
            let mut j0 = 0usize;
            let mut minv = vec![T::infinity(); n + 1];
            let mut used = vec![false; n + 1];
            loop {
                used[j0] = true;
                let i0 = row_of_col[j0];
                let mut delta = T::infinity();
                let mut j1 = 0usize;
                for j in 1..=n {
                    if used[j] {
                        continue;
                    }
                    let cur = self.cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
                for j in 0..=n {
                    if used[j] {
                        u[row_of_col[j]] = u[row_of_col[j]] + delta;
                        v[j] = v[j] - delta;
                    } else {
                        minv[j] = minv[j] - delta;
                    }
                }
                j0 = j1;
                if row_of_col[j0] == 0 {
                    break;
                }
            }
            loop {
                let j1 = way[j0];
                row_of_col[j0] = row_of_col[j1];
                j0 = j1;
                if j0 == 0 {
                    break;
                }
            }
        }

        let mut col_of_row = vec![0usize; n];
        for j in 1..=n {
            col_of_row[row_of_col[j] - 1] = j - 1;
        }
        (col_of_row, u[1..].to_vec(), v[1..].to_vec())
    }

    fn lexicographic_canonical(&self, col_of_row: Vec<usize>, u: &[T], v: &[T]) -> Vec<usize> {
        let n = self.n;
        let mut scale = T::one();
        for i in 0..self.costs.rows {
            for j in 0..self.costs.cols {
                scale = scale.max(self.costs.get(i, j).abs());
            }
        }
        let tol = T::epsilon() * T::lit(64.0) * T::from_count(n) * scale;

        let mut tight = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                tight[i * n + j] = self.cost(i, j) - u[i] - v[j] <= tol;
            }
            tight[i * n + col_of_row[i]] = true;
        }

        let mut state = Matching {
            n,
            tight,
            col_of_row: col_of_row.clone(),
            row_of_col: {
                let mut r = vec![0; n];
                for (i, &j) in col_of_row.iter().enumerate() {
                    r[j] = i;
                }
                r
            },
            fixed: vec![false; n],
        };

        let real_cols = self.costs.cols;
        for i in 0..self.costs.rows {
            // Real columns in ascending order, then the padding columns, which
            // all mean "unmatched" and are interchangeable.
            let fixed_here = (0..real_cols).any(|j| state.try_fix(i, j))
                || (real_cols..n).any(|j| state.try_fix(i, j));
            debug_assert!(fixed_here, "current matching always offers a feasible column");
        }
        state.col_of_row
    }
}

struct Matching {
    n: usize,
    tight: Vec<bool>,
    col_of_row: Vec<usize>,
    row_of_col: Vec<usize>,
    fixed: Vec<bool>,
}

impl Matching {
    fn is_tight(&self, i: usize, j: usize) -> bool {
        self.tight[i * self.n + j]
    }

    /// Pins row `i` to column `j` if some perfect tight matching respecting
    /// the rows pinned so far uses that edge.
    fn try_fix(&mut self, i: usize, j: usize) -> bool {
        if !self.is_tight(i, j) {
            return false;
        }
        if self.col_of_row[i] == j {
            self.fixed[i] = true;
            return true;
        }
        let owner = self.row_of_col[j];
        if self.fixed[owner] {
            return false;
        }

        let saved_cols = self.col_of_row.clone();
        let saved_rows = self.row_of_col.clone();
        let freed = self.col_of_row[i];
        self.col_of_row[i] = j;
        self.row_of_col[j] = i;
        self.fixed[i] = true;
        self.row_of_col[freed] = usize::MAX;

        let mut visited = vec![false; self.n];
        if self.augment(owner, &mut visited) {
            true
        } else {
            self.col_of_row = saved_cols;
            self.row_of_col = saved_rows;
            self.fixed[i] = false;
            false
        }
    }

    fn augment(&mut self, row: usize, visited: &mut [bool]) -> bool {
        for j in 0..self.n {
            if visited[j] || !self.is_tight(row, j) {
                continue;
            }
            visited[j] = true;
            let owner = self.row_of_col[j];
            let free = owner == usize::MAX;
            if free || (!self.fixed[owner] && self.augment(owner, visited)) {
                self.col_of_row[row] = j;
                self.row_of_col[j] = row;
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(rows: &[Vec<f64>]) -> (Vec<(usize, usize)>, f64) {
        let m = CostMatrix::from_rows(rows).unwrap();
        let a = solve_assignment(&m).unwrap();
        let cost = a.cost(&m);
        (a.pairs().to_vec(), cost)
    }

    #[test]
    fn diagonal_zeros() {
        assert_eq!(
            solve(&[vec![0.0, 5.0], vec![5.0, 0.0]]),
            (vec![(0, 0), (1, 1)], 0.0)
        );
    }

    #[test]
    fn single_entry() {
        assert_eq!(solve(&[vec![2.0]]), (vec![(0, 0)], 2.0));
    }

    #[test]
    fn anti_diagonal_wins() {
        assert_eq!(
            solve(&[vec![1.0, 2.0], vec![2.0, 100.0]]),
            (vec![(0, 1), (1, 0)], 4.0)
        );
    }

    #[test]
    fn ties_pick_lexicographically_smallest() {
        let all_equal = vec![vec![3.0; 3]; 3];
        assert_eq!(solve(&all_equal).0, vec![(0, 0), (1, 1), (2, 2)]);

        // Both anti-diagonal and diagonal cost 2; diagonal is smaller.
        assert_eq!(
            solve(&[vec![1.0, 1.0], vec![1.0, 1.0]]).0,
            vec![(0, 0), (1, 1)]
        );
    }

    #[test]
    fn wide_matrix_matches_every_row() {
        let (pairs, cost) = solve(&[vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0]]);
        assert_eq!(pairs, vec![(0, 1), (1, 0)]);
        assert_eq!(cost, 3.0);
    }

    #[test]
    fn tall_matrix_matches_every_column() {
        let (pairs, cost) = solve(&[vec![5.0], vec![1.0], vec![1.0]]);
        assert_eq!(pairs, vec![(1, 0)]);
        assert_eq!(cost, 1.0);
    }

    #[test]
    fn tall_ties_prefer_earlier_rows() {
        let (pairs, _) = solve(&[vec![7.0, 7.0], vec![7.0, 7.0], vec![7.0, 7.0]]);
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn empty_dimensions() {
        assert_eq!(solve(&[]), (vec![], 0.0));
        let m = CostMatrix::<f64>::from_fn(3, 0, |_, _| 0.0);
        assert!(solve_assignment(&m).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_finite() {
        let m = CostMatrix::from_rows(&[vec![1.0, f64::NAN]]).unwrap();
        assert_eq!(
            solve_assignment(&m),
            Err(Error::NonFiniteCost { row: 0, col: 1 })
        );
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(CostMatrix::from_rows(&[vec![1.0, 2.0], vec![1.0]]).is_err());
    }

    #[test]
    fn assignment_rejects_reused_index() {
        assert!(Assignment::new(vec![(0, 1), (1, 1)]).is_err());
        assert!(Assignment::new(vec![(1, 0), (0, 1)]).is_ok());
    }

    #[test]
    fn works_in_f32() {
        let m = CostMatrix::from_rows(&[vec![1.0f32, 2.0], vec![2.0, 100.0]]).unwrap();
        assert_eq!(solve_assignment(&m).unwrap().pairs(), &[(0, 1), (1, 0)]);
    }
}
