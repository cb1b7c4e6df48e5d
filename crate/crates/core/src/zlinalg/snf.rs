//! Dense Smith normal form with unimodular transforms.

use super::int::Int;
use super::matrix::IntMatrix;

type Dense = Vec<Vec<Int>>;

#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero diagonal entries, positive and forming a divisibility chain.
    pub diag: Vec<Int>,
    /// `u * m * v = d`.
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn d(&self, rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::diagonal(rows, cols, &self.diag)
    }
}

fn ident(n: usize) -> Dense {
    let mut m = vec![vec![Int::ZERO; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Int::ONE;
    }
    m
}

/// Row/column operations recorded against a working matrix and its
/// transforms. Row ops act on `a` and `u` and inversely on `u_inv`.
struct Work {
    a: Dense,
    u: Dense,
    ui: Dense,
    v: Dense,
    vi: Dense,
}

impl Work {
    // row_i += k * row_j
    fn row_add(&mut self, i: usize, j: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            let (ri, rj) = two_mut(m, i, j);
            for (x, y) in ri.iter_mut().zip(rj.iter()) {
                if !y.is_zero() {
                    *x += &(y * k);
                }
            }
        }
        // inverse: col_j -= k * col_i
        for row in self.ui.iter_mut() {
            if !row[i].is_zero() {
                let t = &row[i] * k;
                row[j] -= &t;
            }
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.ui.iter_mut() {
            row.swap(i, j);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for row in self.ui.iter_mut() {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    // col_i += k * col_j
    fn col_add(&mut self, i: usize, j: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                if !row[j].is_zero() {
                    let t = &row[j] * k;
                    row[i] += &t;
                }
            }
        }
        // inverse: row_j -= k * row_i
        let (rj, ri) = two_mut(&mut self.vi, j, i);
        for (x, y) in rj.iter_mut().zip(ri.iter()) {
            if !y.is_zero() {
                *x -= &(y * k);
            }
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        self.vi.swap(i, j);
    }
}

fn two_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

/// Smith normal form of `m`, with transforms.
pub fn smith(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        a: m.to_dense(),
        u: ident(rows),
        ui: ident(rows),
        v: ident(cols),
        vi: ident(cols),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[i][j];
                if !x.is_zero()
                    && best.map_or(true, |(bi, bj)| x.cmp_abs(&w.a[bi][bj]).is_lt())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_round(&w.a[t][t]);
                w.row_add(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_round(&w.a[t][t]);
                w.col_add(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest entry of row t / column t to the pivot
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..rows {
                    if !w.a[i][t].is_zero() && w.a[i][t].cmp_abs(&w.a[bi][bj]).is_lt() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..cols {
                    if !w.a[t][j].is_zero() && w.a[t][j].cmp_abs(&w.a[bi][bj]).is_lt() {
                        bi = t;
                        bj = j;
                    }
                }
                w.row_swap(t, bi);
                w.col_swap(t, bj);
                continue;
            }
            // divisibility of the trailing block
            let p = w.a[t][t].clone();
            let mut bad = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !p.divides(&w.a[i][j]) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => w.row_add(t, i, &Int::ONE),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.row_neg(t);
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    Snf {
        diag,
        u: IntMatrix::from_dense(rows, rows, &w.u),
        v: IntMatrix::from_dense(cols, cols, &w.v),
        u_inv: IntMatrix::from_dense(rows, rows, &w.ui),
        v_inv: IntMatrix::from_dense(cols, cols, &w.vi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith(m);
        let d = s.u.mul(m).mul(&s.v);
        assert_eq!(d, s.d(m.rows(), m.cols()));
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for w in s.diag.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        s
    }

    #[test]
    fn small_examples() {
        let s = check(&IntMatrix::from_rows(&[[6, 0], [0, 4]]));
        assert_eq!(s.diag, vec![Int::from(2), Int::from(12)]);
        let s = check(&IntMatrix::from_rows(&[[2, 1], [0, 2]]));
        assert_eq!(s.diag, vec![Int::from(1), Int::from(4)]);
        let s = check(&IntMatrix::from_rows(&[[0, 0, 0]]));
        assert!(s.diag.is_empty());
        check(&IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
        check(&IntMatrix::zero(0, 4));
    }
}
