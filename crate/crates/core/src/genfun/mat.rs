use std::fmt;

use crate::gf2::{BitVec, LinMap};

/// A linear map `F₂^cols -> F₂^rows`, stored by columns as bit masks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    columns: Vec<u64>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, columns: Vec<u64>) -> Self {
        assert!(rows <= 64, "rank too large");
        assert_eq!(columns.len(), cols);
        let mask = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        assert!(columns.iter().all(|c| c & !mask == 0), "column out of range");
        Mat { rows, cols, columns }
    }

    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Self {
        let mut columns = vec![0u64; cols];
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x & 1 == 1 {
                    columns[c] |= 1 << r;
                }
            }
        }
        Mat::new(rows.len(), cols, columns)
    }

    pub fn identity(n: usize) -> Self {
        Mat::new(n, n, (0..n).map(|i| 1 << i).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![0; cols])
    }

    /// `F₂^k -> F₂^n`, the first `k` coordinates.
    pub fn inclusion(k: usize, n: usize) -> Self {
        assert!(k <= n);
        Mat::new(n, k, (0..k).map(|i| 1 << i).collect())
    }

    /// `F₂^n -> F₂^k`, forgetting the last `n - k` coordinates.
    pub fn projection(n: usize, k: usize) -> Self {
        assert!(k <= n);
        Mat::new(k, n, (0..n).map(|i| if i < k { 1 << i } else { 0 }).collect())
    }

    /// The permutation matrix sending `e_i` to `e_{p[i]}`.
    pub fn permutation(p: &[usize]) -> Self {
        Mat::new(p.len(), p.len(), p.iter().map(|&i| 1 << i).collect())
    }

    /// `e_j ↦ e_j + e_i`, the rest fixed.
    pub fn transvection(n: usize, i: usize, j: usize) -> Self {
        assert_ne!(i, j);
        let mut m = Mat::identity(n);
        m.columns[j] |= 1 << i;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> u64 {
        self.columns[c]
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn entry(&self, r: usize, c: usize) -> bool {
        self.columns[c] >> r & 1 == 1
    }

    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        for (c, &col) in self.columns.iter().enumerate() {
            if v >> c & 1 == 1 {
                out ^= col;
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "composable maps");
        Mat::new(self.rows, other.cols, other.columns.iter().map(|&c| self.apply(c)).collect())
    }

    pub fn transpose(&self) -> Mat {
        let columns = (0..self.rows)
            .map(|r| {
                let mut c = 0;
                for j in 0..self.cols {
                    if self.entry(r, j) {
                        c |= 1 << j;
                    }
                }
                c
            })
            .collect();
        Mat::new(self.cols, self.rows, columns)
    }

    /// `self ⊕ 1_m`.
    pub fn direct_sum_identity(&self, m: usize) -> Mat {
        let mut columns: Vec<u64> = self.columns.clone();
        columns.extend((0..m).map(|i| 1 << (self.rows + i)));
        Mat::new(self.rows + m, self.cols + m, columns)
    }

    /// Block column `[self | extra]` with `extra` given as additional columns.
    pub fn with_columns(&self, extra: &[u64]) -> Mat {
        let mut columns = self.columns.clone();
        columns.extend_from_slice(extra);
        Mat::new(self.rows, self.cols + extra.len(), columns)
    }

    /// Stacks rows below `self`: `[self; r_1; …]`, each row a mask over the columns.
    pub fn with_rows(&self, extra: &[u64]) -> Mat {
        let columns = (0..self.cols)
            .map(|c| {
                let mut col = self.columns[c];
                for (i, &row) in extra.iter().enumerate() {
                    if row >> c & 1 == 1 {
                        col |= 1 << (self.rows + i);
                    }
                }
                col
            })
            .collect();
        Mat::new(self.rows + extra.len(), self.cols, columns)
    }

    pub fn rank(&self) -> usize {
        let mut basis: Vec<u64> = Vec::new();
        for &c in &self.columns {
            let mut v = c;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis.len()
    }

    pub fn to_linmap(&self) -> LinMap {
        LinMap::from_columns(
            self.rows,
            self.columns
                .iter()
                .map(|&c| BitVec::from_indices(self.rows, (0..self.rows).filter(|r| c >> r & 1 == 1)))
                .collect(),
        )
    }

    /// Every map `F₂^cols -> F₂^rows`; there are `2^{rows·cols}` of them.
    pub fn all(rows: usize, cols: usize) -> impl Iterator<Item = Mat> {
        let bits = rows * cols;
        assert!(bits < 40, "too many maps to enumerate");
        (0u64..1 << bits).map(move |code| {
            let columns = (0..cols).map(|c| (code >> (c * rows)) & ((1 << rows) - 1)).collect();
            Mat::new(rows, cols, columns)
        })
    }

    /// Generators of the category of `F₂^k`, `k <= cap`: for each rank the
    /// swap of the first two coordinates, the long cycle and a transvection,
    /// plus the standard inclusions and projections between adjacent ranks.
    pub fn category_generators(cap: usize) -> Vec<Mat> {
        let mut out = Vec::new();
        for k in 2..=cap {
            let mut swap: Vec<usize> = (0..k).collect();
            swap.swap(0, 1);
            out.push(Mat::permutation(&swap));
            if k > 2 {
                out.push(Mat::permutation(&(0..k).map(|i| (i + 1) % k).collect::<Vec<_>>()));
            }
            out.push(Mat::transvection(k, 1, 0));
        }
        for k in 0..cap {
            out.push(Mat::inclusion(k, k + 1));
            out.push(Mat::projection(k + 1, k));
        }
        out
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ";")?;
            }
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.entry(r, c)))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_transpose() {
        let a = Mat::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]], 3);
        let b = Mat::from_rows(&[vec![1, 0], vec![1, 1], vec![0, 1]], 2);
        let ab = a.compose(&b);
        assert_eq!(ab, Mat::from_rows(&[vec![0, 1], vec![1, 0]], 2));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(b.transpose().compose(&a.transpose()), ab.transpose());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Mat::all(2, 2).count(), 16);
        assert_eq!(Mat::all(2, 2).filter(|m| m.rank() == 2).count(), 6);
        assert_eq!(Mat::all(0, 3).count(), 1);
    }

    #[test]
    fn generators_reach_gl3() {
        let gens: Vec<Mat> = Mat::category_generators(3).into_iter().filter(|m| m.rows() == 3 && m.cols() == 3).collect();
        let mut seen = std::collections::BTreeSet::from([Mat::identity(3)]);
        let mut frontier = vec![Mat::identity(3)];
        while let Some(m) = frontier.pop() {
            for g in &gens {
                let n = g.compose(&m);
                if seen.insert(n.clone()) {
                    frontier.push(n);
                }
            }
        }
        assert_eq!(seen.len(), 168);
    }
}
