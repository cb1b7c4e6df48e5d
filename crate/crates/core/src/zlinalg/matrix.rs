use std::fmt;

use super::int::Int;
use super::sparse::SparseVec;

/// An integer matrix stored by sparse columns.
///
/// Column `j` is the image of the `j`-th basis vector of the domain, so an
/// `r x c` matrix represents a homomorphism `Z^c -> Z^r`. Zero-row and
/// zero-column shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|i| SparseVec::from_sorted(vec![(i as u32, Int::ONE)]))
            .collect();
        IntMatrix { rows: n, cols }
    }

    /// Builds a matrix from dense rows of small integers.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut m = IntMatrix::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    m.cols[j].push_back(i as u32, Int::from(*v));
                }
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Int>]) -> Self {
        assert_eq!(data.len(), rows);
        let mut m = IntMatrix::zero(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.cols[j].push_back(i as u32, v.clone());
                }
            }
        }
        m
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        for c in &cols {
            if let Some(&(r, _)) = c.entries().last() {
                assert!((r as usize) < rows, "column entry out of bounds");
            }
        }
        IntMatrix { rows, cols }
    }

    /// Diagonal matrix of the given shape.
    pub fn diagonal(rows: usize, cols: usize, diag: &[Int]) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            if !d.is_zero() {
                m.cols[i].push_back(i as u32, d.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        assert!(
            i < self.rows && j < self.cols.len(),
            "entry ({i},{j}) out of bounds for {}x{} matrix",
            self.rows,
            self.cols.len()
        );
        self.cols[j].get(i as u32)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        assert!(
            i < self.rows && j < self.cols.len(),
            "entry ({i},{j}) out of bounds"
        );
        self.cols[j].set(i as u32, v);
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols.len(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                t.cols[*i as usize].push_back(j as u32, v.clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols(),
            rhs.rows(),
            "shape mismatch {}x{} * {}x{}",
            self.rows,
            self.cols(),
            rhs.rows(),
            rhs.cols()
        );
        let cols = rhs.cols.iter().map(|c| self.apply(c)).collect();
        IntMatrix {
            rows: self.rows,
            cols,
        }
    }

    /// Image of a sparse vector of the domain.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, a) in v.iter() {
            acc.add_scaled(&self.cols[*j as usize], a);
        }
        acc
    }

    pub fn apply_dense(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![Int::ZERO; self.rows];
        for (j, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (i, x) in self.cols[j].iter() {
                out[*i as usize] += &(x * a);
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols()), (rhs.rows, rhs.cols()));
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.add_scaled(b, &Int::ONE);
                c
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols,
        }
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut out = SparseVec::new();
                out.add_scaled(c, k);
                out
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut d = vec![vec![Int::ZERO; self.cols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                d[*i as usize][j] = v.clone();
            }
        }
        d
    }

    /// Select columns by index.
    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hcat(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.first().map(|b| b.rows).unwrap_or(0);
        let mut cols = Vec::new();
        for b in blocks {
            assert_eq!(b.rows, rows);
            cols.extend(b.cols.iter().cloned());
        }
        IntMatrix { rows, cols }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut cols = Vec::new();
        let mut offset = 0u32;
        for b in blocks {
            for c in &b.cols {
                cols.push(c.shifted(offset));
            }
            offset += b.rows as u32;
        }
        IntMatrix { rows, cols }
    }

    /// Kronecker product with the convention that the basis of the tensor
    /// product is ordered lexicographically `(i, j)`.
    pub fn kron(&self, rhs: &IntMatrix) -> IntMatrix {
        let rows = self.rows * rhs.rows;
        let mut cols = Vec::with_capacity(self.cols() * rhs.cols());
        for a in &self.cols {
            for b in &rhs.cols {
                let mut entries = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        entries.push((*i * rhs.rows as u32 + *k, x * y));
                    }
                }
                cols.push(SparseVec::from_sorted(entries));
            }
        }
        IntMatrix { rows, cols }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols())?;
        if self.rows * self.cols() <= 400 {
            for row in self.to_dense() {
                let s: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", s.join(", "))?;
            }
        } else {
            writeln!(f, "  <{} nonzeros>", self.nnz())?;
        }
        write!(f, "]")
    }
}
