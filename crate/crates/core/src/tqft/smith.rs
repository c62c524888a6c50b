//! Dense integer matrices with Smith normal form and rank over F2.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }

    pub fn rows_vec(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.at(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Nonzero diagonal entries of the Smith normal form, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let (r, c) = (self.rows, self.cols);
        let mut a: Vec<Vec<i128>> = (0..r).map(|i| (0..c).map(|j| self.at(i, j) as i128).collect()).collect();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < r.min(c) {
            // pivot: smallest nonzero absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let p = a[t][t];
                let mut dirty = false;
                for i in t + 1..r {
                    let q = a[i][t] / p;
                    if q != 0 {
                        for j in t..c {
                            a[i][j] -= q * a[t][j];
                        }
                    }
                    dirty |= a[i][t] != 0;
                }
                for j in t + 1..c {
                    let q = a[t][j] / p;
                    if q != 0 {
                        for row in a.iter_mut().skip(t) {
                            row[j] -= q * row[t];
                        }
                    }
                    dirty |= a[t][j] != 0;
                }
                if !dirty {
                    // divisibility: fold in a row whose entries p does not divide
                    let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[i][j] % p != 0));
                    match bad {
                        Some(i) => {
                            for j in t..c {
                                a[t][j] += a[i][j];
                            }
                        }
                        None => break,
                    }
                }
                // move the smallest entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..r {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..c {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
            diag.push(a[t][t].unsigned_abs() as u64);
            t += 1;
        }
        diag
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    pub fn rank_f2(&self) -> usize {
        let mut rows: Vec<Vec<bool>> = self.rows_vec().iter().map(|r| r.iter().map(|x| x & 1 == 1).collect()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) else { continue };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[col] {
                    row.iter_mut().zip(&pivot).for_each(|(x, &y)| *x ^= y);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.rows_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(m.invariant_factors(), vec![2, 6, 12]);
        assert_eq!(IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).invariant_factors(), vec![1, 6]);
        assert_eq!(IntMatrix::zeros(3, 2).invariant_factors(), Vec::<u64>::new());
    }

    #[test]
    fn f2_rank() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![1, 1]]);
        assert_eq!(m.rank_f2(), 1);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn product() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.mul(&IntMatrix::identity(2)), a);
        assert_eq!(a.mul(&a).rows_vec(), vec![vec![7, 10], vec![15, 22]]);
    }
}
