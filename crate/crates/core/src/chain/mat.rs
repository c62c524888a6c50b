use std::collections::BTreeMap;

use crate::cobordism::Cobordism;

/// A sparse matrix of cobordisms. Entry `(r, c)` maps column summand `c`
/// to row summand `r`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Cobordism>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Cobordism> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Cobordism)> {
        self.entries.iter().map(|(&(r, c), x)| (r, c, x))
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `x` into entry `(r, c)`.
    pub fn add_at(&mut self, r: usize, c: usize, x: Cobordism) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) outside {}x{}", self.rows, self.cols);
        if x.is_zero() {
            return;
        }
        match self.entries.remove(&(r, c)) {
            None => {
                self.entries.insert((r, c), x);
            }
            Some(old) => {
                let sum = old.add(&x);
                if !sum.is_zero() {
                    self.entries.insert((r, c), sum);
                }
            }
        }
    }

    pub fn set(&mut self, r: usize, c: usize, x: Cobordism) {
        self.entries.remove(&(r, c));
        self.add_at(r, c, x);
    }

    /// Adds `sign * m` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, m: &Mat, sign: i64) {
        for (r, c, x) in m.entries() {
            let y = if sign == 1 { x.clone() } else { x.scale(sign) };
            self.add_at(r0 + r, c0 + c, y);
        }
    }

    pub fn sub_block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(rows, cols);
        for (r, c, x) in self.entries() {
            if (r0..r0 + rows).contains(&r) && (c0..c0 + cols).contains(&c) {
                out.entries.insert((r - r0, c - c0), x.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (r, c, x) in other.entries() {
            out.add_at(r, c, x.clone());
        }
        out
    }

    pub fn scale(&self, k: i64) -> Mat {
        let mut out = Mat::zeros(self.rows, self.cols);
        if k != 0 {
            for (r, c, x) in self.entries() {
                out.entries.insert((r, c), x.scale(k));
            }
        }
        out
    }

    pub fn neg(&self) -> Mat {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    /// `self ∘ f`: apply `f` first.
    pub fn compose(&self, f: &Mat) -> Mat {
        assert_eq!(self.cols, f.rows, "composing {}x{} after {}x{}", self.rows, self.cols, f.rows, f.cols);
        let mut by_col: BTreeMap<usize, Vec<(usize, &Cobordism)>> = BTreeMap::new();
        for (r, c, x) in self.entries() {
            by_col.entry(c).or_default().push((r, x));
        }
        let mut out = Mat::zeros(self.rows, f.cols);
        for (k, j, x) in f.entries() {
            if let Some(col) = by_col.get(&k) {
                for &(i, y) in col {
                    out.add_at(i, j, y.compose(x));
                }
            }
        }
        out
    }

    /// First entry where the two matrices differ.
    pub fn first_difference(&self, other: &Mat) -> Option<(usize, usize)> {
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter().find(|k| self.entries.get(k) != other.entries.get(k)).copied()
    }
}
