//! Smith normal form over the integers with unimodular transforms.

pub type IntMat = Vec<Vec<i128>>;

/// `p · a · q = diag(d)` with `p`, `q` unimodular; `q_inv` is the inverse of `q`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub p: IntMat,
    pub q: IntMat,
    pub q_inv: IntMat,
    pub rank: usize,
}

fn identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

struct Calc {
    a: IntMat,
    p: IntMat,
    q: IntMat,
    q_inv: IntMat,
    rows: usize,
    cols: usize,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.p.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }

    /// row_i -= k * row_j
    fn row_axpy(&mut self, i: usize, j: usize, k: i128) {
        for c in 0..self.cols {
            let v = self.a[j][c];
            self.a[i][c] -= k * v;
        }
        for c in 0..self.rows {
            let v = self.p[j][c];
            self.p[i][c] -= k * v;
        }
    }

    /// col_i -= k * col_j
    fn col_axpy(&mut self, i: usize, j: usize, k: i128) {
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            let v = row[j];
            row[i] -= k * v;
        }
        // q_inv <- E^{-1} q_inv where E = I - k e_j e_i^T
        for c in 0..self.cols {
            let v = self.q_inv[i][c];
            self.q_inv[j][c] += k * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.a[i].iter_mut().chain(self.p[i].iter_mut()) {
            *v = -*v;
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i128)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let v = self.a[r][c].abs();
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((r, c, v));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn run(&mut self) -> usize {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((r, c)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let pivot = self.a[t][t];
                let mut dirty = false;
                for r in t + 1..self.rows {
                    let v = self.a[r][t];
                    if v != 0 {
                        self.row_axpy(r, t, v.div_euclid(pivot));
                        if self.a[r][t] != 0 {
                            dirty = true;
                        }
                    }
                }
                for c in t + 1..self.cols {
                    let v = self.a[t][c];
                    if v != 0 {
                        self.col_axpy(c, t, v.div_euclid(pivot));
                        if self.a[t][c] != 0 {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    // a smaller remainder appeared in row/column t; move it to the pivot
                    let (r, c) = self.min_in_cross(t);
                    self.swap_rows(t, r);
                    self.swap_cols(t, c);
                    continue;
                }
                // pivot must divide the remaining block
                let bad = (t + 1..self.rows)
                    .flat_map(|r| (t + 1..self.cols).map(move |c| (r, c)))
                    .find(|&(r, c)| self.a[r][c] % pivot != 0);
                match bad {
                    Some((r, _)) => {
                        self.row_axpy(t, r, -1);
                    }
                    None => break,
                }
            }
            if self.a[t][t] < 0 {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a[t][t].abs());
        for r in t + 1..self.rows {
            let v = self.a[r][t].abs();
            if v != 0 && v < best.2 {
                best = (r, t, v);
            }
        }
        for c in t + 1..self.cols {
            let v = self.a[t][c].abs();
            if v != 0 && v < best.2 {
                best = (t, c, v);
            }
        }
        (best.0, best.1)
    }
}

pub fn smith(a: &IntMat, cols: usize) -> Smith {
    let rows = a.len();
    debug_assert!(a.iter().all(|r| r.len() == cols));
    let mut calc = Calc {
        a: a.clone(),
        p: identity(rows),
        q: identity(cols),
        q_inv: identity(cols),
        rows,
        cols,
    };
    let rank = calc.run();
    let diag = (0..rows.min(cols)).map(|i| calc.a[i][i]).collect();
    Smith {
        diag,
        p: calc.p,
        q: calc.q,
        q_inv: calc.q_inv,
        rank,
    }
}

pub fn mat_mul(a: &IntMat, b: &IntMat, inner: usize, cols: usize) -> IntMat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| row[k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}
