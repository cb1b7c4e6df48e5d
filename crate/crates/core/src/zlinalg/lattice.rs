//! Sublattices of `Z^n` in Hermite (row echelon) form.

use super::int::Int;
use super::matrix::IntMatrix;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    /// Coefficients with respect to the generators the lattice was built from.
    comb: SparseVec,
}

impl Row {
    fn lead(&self) -> (u32, &Int) {
        let (c, v) = &self.vec.entries()[0];
        (*c, v)
    }
}

/// Lattice spanned by a list of generators, kept in echelon form with
/// strictly increasing pivot columns, positive pivots and reduced entries
/// above each pivot.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Row>,
    kernel: Vec<SparseVec>,
    ngens: usize,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice {
            dim,
            rows: Vec::new(),
            kernel: Vec::new(),
            ngens: 0,
        }
    }

    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut l = Lattice::new(dim);
        for g in gens {
            l.insert(g);
        }
        l.reduce();
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Relations among the generators: a basis of the kernel of the map
    /// `Z^ngens -> Z^dim` sending the `i`-th unit vector to generator `i`.
    pub fn relations(&self) -> &[SparseVec] {
        &self.kernel
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.iter().map(|r| r.vec.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.lead().0 as usize).collect()
    }

    fn find(&self, col: u32) -> std::result::Result<usize, usize> {
        self.rows.binary_search_by_key(&col, |r| r.lead().0)
    }

    pub fn insert(&mut self, v: SparseVec) {
        let idx = self.ngens as u32;
        self.ngens += 1;
        let mut cur = Row {
            vec: v,
            comb: SparseVec::unit(idx),
        };
        loop {
            if cur.vec.is_empty() {
                self.kernel.push(cur.comb);
                return;
            }
            let (c, a) = {
                let (c, a) = cur.lead();
                (c, a.clone())
            };
            match self.find(c) {
                Err(pos) => {
                    if a.is_negative() {
                        cur.vec.negate();
                        cur.comb.negate();
                    }
                    self.rows.insert(pos, cur);
                    return;
                }
                Ok(pos) => {
                    let b = self.rows[pos].lead().1.clone();
                    if let Some(q) = a.div_exact(&b) {
                        let q = -q;
                        cur.vec.add_scaled(&self.rows[pos].vec, &q);
                        cur.comb.add_scaled(&self.rows[pos].comb, &q);
                        continue;
                    }
                    let (g, x, y) = Int::ext_gcd(&b, &a);
                    let bg = b.div_exact(&g).unwrap();
                    let ag = a.div_exact(&g).unwrap();
                    let old = &self.rows[pos];
                    // [x y; a/g -b/g] is unimodular
                    let mut nb = old.vec.scaled(&x);
                    nb.add_scaled(&cur.vec, &y);
                    let mut nbc = old.comb.scaled(&x);
                    nbc.add_scaled(&cur.comb, &y);
                    let mut nv = old.vec.scaled(&ag);
                    nv.add_scaled(&cur.vec, &-bg.clone());
                    let mut nvc = old.comb.scaled(&ag);
                    nvc.add_scaled(&cur.comb, &-bg);
                    self.rows[pos] = Row { vec: nb, comb: nbc };
                    cur = Row { vec: nv, comb: nvc };
                }
            }
        }
    }

    /// Reduces the entries above each pivot into `[0, pivot)`.
    pub fn reduce(&mut self) {
        for k in (0..self.rows.len()).rev() {
            let (c, p) = {
                let (c, p) = self.rows[k].lead();
                (c, p.clone())
            };
            for j in 0..k {
                let a = self.rows[j].vec.get(c);
                if a.is_zero() {
                    continue;
                }
                let q = -a.div_mod_floor(&p).0;
                if q.is_zero() {
                    continue;
                }
                let (vk, ck) = (self.rows[k].vec.clone(), self.rows[k].comb.clone());
                self.rows[j].vec.add_scaled(&vk, &q);
                self.rows[j].comb.add_scaled(&ck, &q);
            }
        }
    }

    /// Writes `v` in terms of the generators, or fails with `NotInLattice`.
    pub fn solve(&self, v: &SparseVec) -> Result<SparseVec> {
        let (coords, rest) = self.reduce_vector(v);
        if rest.is_empty() {
            Ok(coords)
        } else {
            Err(Error::NotInLattice)
        }
    }

    /// Coordinates with respect to the echelon basis.
    pub fn solve_in_basis(&self, v: &SparseVec) -> Result<SparseVec> {
        let mut cur = v.clone();
        let mut out = Vec::new();
        for (k, row) in self.rows.iter().enumerate() {
            let (c, p) = row.lead();
            let a = cur.get(c);
            if a.is_zero() {
                continue;
            }
            let q = a.div_exact(p).ok_or(Error::NotInLattice)?;
            cur.add_scaled(&row.vec, &-q.clone());
            out.push((k as u32, q));
        }
        if cur.is_empty() {
            Ok(SparseVec::from_sorted(out))
        } else {
            Err(Error::NotInLattice)
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.solve_in_basis(v).is_ok()
    }

    fn reduce_vector(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut cur = v.clone();
        let mut coords = SparseVec::new();
        for row in &self.rows {
            let (c, p) = row.lead();
            let a = cur.get(c);
            if a.is_zero() {
                continue;
            }
            match a.div_exact(p) {
                Some(q) => {
                    cur.add_scaled(&row.vec, &-q.clone());
                    coords.add_scaled(&row.comb, &q);
                }
                None => return (coords, cur),
            }
        }
        (coords, cur)
    }
}

/// Solves `b * x = v` over the integers.
pub fn solve_in_lattice(b: &IntMatrix, v: &[Int]) -> Result<Vec<Int>> {
    assert_eq!(v.len(), b.rows(), "vector length does not match matrix rows");
    let l = Lattice::from_generators(b.rows(), b.columns().iter().cloned());
    let x = l.solve(&SparseVec::from_dense(v))?;
    Ok(x.to_dense(b.cols()))
}

/// A basis of the kernel of `m`, returned as the columns of a matrix. The
/// kernel is a saturated sublattice, so the basis extends to one of the
/// domain.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let l = Lattice::from_generators(m.rows(), m.columns().iter().cloned());
    let mut gens: Vec<SparseVec> = l.relations().to_vec();
    // echelonize the relations for a canonical answer
    let k = Lattice::from_generators(m.cols(), gens.drain(..));
    IntMatrix::from_columns(m.cols(), k.basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k, IntMatrix::from_rows(&[[1], [-1]]));
        let k = kernel_basis(&IntMatrix::from_rows(&[[2, 4]]));
        assert_eq!(k, IntMatrix::from_rows(&[[2], [-1]]));
        let k = kernel_basis(&IntMatrix::from_rows(&[[1, 0], [0, 1]]));
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn solving() {
        let b = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(solve_in_lattice(&b, &ints(&[4, 9])).unwrap(), ints(&[2, 3]));
        assert_eq!(solve_in_lattice(&b, &ints(&[1, 0])), Err(Error::NotInLattice));
        let b = IntMatrix::from_rows(&[[6, 4]]);
        let x = solve_in_lattice(&b, &ints(&[2])).unwrap();
        assert_eq!(b.apply_dense(&x), ints(&[2]));
    }
}
