//! Exact dense linear algebra over a finite field: rank, solving, and null
//! space enumeration by plain Gaussian elimination.

use crate::field::{FiniteField, Fq};

#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Fq>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Fq(0); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, f: &FiniteField, i: usize, j: usize, v: Fq) {
        let cur = self.get(i, j);
        self.set(i, j, f.add(cur, v));
    }

    /// Reduce in place to row echelon form; returns pivot columns.
    pub fn echelonize(&mut self, f: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != Fq(0)) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = f.inv(self.get(row, col)).expect("pivot nonzero");
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != Fq(0) {
                    let factor = self.get(r, col);
                    for j in col..self.cols {
                        let v = f.sub(self.get(r, j), f.mul(factor, self.get(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self.get(a, j), self.get(b, j));
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut m = self.clone();
        m.echelonize(f).len()
    }

    /// One solution of `self * x = rhs`, if any.
    pub fn solve(&self, f: &FiniteField, rhs: &[Fq]) -> Option<Vec<Fq>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, rhs[i]);
        }
        let pivots = aug.echelonize(f);
        if pivots.contains(&self.cols) {
            return None; // a pivot in the rhs column means inconsistency
        }
        let mut x = vec![Fq(0); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_solve_over_f5() {
        let f = FiniteField::prime(5).unwrap();
        let m = Matrix::from_rows(vec![vec![Fq(1), Fq(2)], vec![Fq(2), Fq(4)]]);
        assert_eq!(m.rank(&f), 1);
        // second row is twice the first, so rhs must be proportional too
        assert!(m.solve(&f, &[Fq(3), Fq(2)]).is_none());
        let x = m.solve(&f, &[Fq(3), Fq(1)]).unwrap_or_else(|| {
            // rhs (3, 6 mod 5 = 1) IS proportional: 2*3 = 6 = 1 mod 5
            panic!("consistent system must solve")
        });
        assert_eq!(f.add(x[0], f.mul(Fq(2), x[1])), Fq(3));
    }

    #[test]
    fn solve_identity() {
        let f = FiniteField::prime(3).unwrap();
        let m = Matrix::from_rows(vec![vec![Fq(1), Fq(0)], vec![Fq(0), Fq(1)]]);
        assert_eq!(m.solve(&f, &[Fq(2), Fq(1)]).unwrap(), vec![Fq(2), Fq(1)]);
    }

    #[test]
    fn solve_consistent_underdetermined() {
        let f = FiniteField::prime(2).unwrap();
        let m = Matrix::from_rows(vec![vec![Fq(1), Fq(1)]]);
        let x = m.solve(&f, &[Fq(1)]).unwrap();
        assert_eq!(f.add(x[0], x[1]), Fq(1));
    }
}
