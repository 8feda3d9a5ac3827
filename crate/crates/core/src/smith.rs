//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intmatrix::IntMatrix;

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`, and `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl SmithDecomposition {
    /// Checks every defining property; panics when one fails, since that can
    /// only come from a bug in the reduction.
    fn new(m: &IntMatrix, d: IntMatrix, u: IntMatrix, v: IntMatrix) -> Self {
        assert_eq!(&(&u * m) * &v, d, "U*M*V must equal D");
        assert!(d.is_diagonal(), "D must be diagonal");
        assert!(u.determinant().abs().is_one(), "U must be unimodular");
        assert!(v.determinant().abs().is_one(), "V must be unimodular");
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            };
            assert!(ok, "diagonal must form a divisibility chain");
        }
        assert!(diag.iter().all(|x| !x.is_negative()));
        SmithDecomposition { d, u, v }
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    /// The diagonal `d_1, ..., d_min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.d, &mut self.u] {
            for c in 0..m.cols() {
                let tmp = m[(i, c)].clone();
                m[(i, c)] = m[(j, c)].clone();
                m[(j, c)] = tmp;
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.d, &mut self.v] {
            for r in 0..m.rows() {
                let tmp = m[(r, i)].clone();
                m[(r, i)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.d, &mut self.u] {
            for c in 0..m.cols() {
                let delta = &m[(j, c)] * k;
                m[(i, c)] += delta;
            }
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.d, &mut self.v] {
            for r in 0..m.rows() {
                let delta = &m[(r, j)] * k;
                m[(r, i)] += delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.d, &mut self.u] {
            for c in 0..m.cols() {
                m[(i, c)] = -&m[(i, c)];
            }
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.smallest_nonzero(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.d[(i, t)].is_zero() {
                    continue;
                }
                let q = w.d[(i, t)].div_floor(&w.d[(t, t)]);
                w.add_row(i, t, &-q);
                if !w.d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.d[(t, j)].is_zero() {
                    continue;
                }
                let q = w.d[(t, j)].div_floor(&w.d[(t, t)]);
                w.add_col(j, t, &-q);
                if !w.d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder appeared in the pivot row or column; move it to the pivot
                let mut best = (t, t);
                for i in t..rows {
                    let x = &w.d[(i, t)];
                    if !x.is_zero() && x.abs() < w.d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    let x = &w.d[(t, j)];
                    if !x.is_zero() && x.abs() < w.d[best].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // row and column cleared: enforce divisibility of the remaining block
            let pivot = w.d[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.d[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    SmithDecomposition::new(m, w.d, w.u, w.v)
}
