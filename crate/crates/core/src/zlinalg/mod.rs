//! Exact linear algebra over the integers.

pub mod elim;
pub mod group;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod snf;
pub mod sparse;

pub use group::FgAbGroup;
pub use int::Int;
pub use lattice::{kernel_basis, solve_in_lattice, Lattice};
pub use matrix::IntMatrix;
pub use snf::{smith, Snf};
pub use sparse::SparseVec;

use crate::error::{Error, Result};

/// Smith normal form `u * m * v = d` with unimodular `u`, `v`.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    smith(m)
}

/// Invariant factors `d_1 | d_2 | ... | d_rank` (units included).
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    chain_from_diagonal(elim::diagonal_entries(rows_of(m), m.rows()))
}

/// Normalizes the diagonal of any equivalent diagonal matrix into the
/// divisibility chain of the Smith form.
pub fn chain_from_diagonal(diag: Vec<Int>) -> Vec<Int> {
    let rank = diag.len();
    let g = FgAbGroup::from_orders(0, diag);
    let mut out = vec![Int::ONE; rank - g.torsion().len()];
    out.extend(g.torsion().iter().cloned());
    out
}

fn rows_of(m: &IntMatrix) -> Vec<SparseVec> {
    // columns of m are the rows of its transpose, which has the same invariants
    m.columns().to_vec()
}

pub fn rank(m: &IntMatrix) -> usize {
    elim::diagonal_entries(rows_of(m), m.rows()).len()
}

/// `Z^rows / im(m)`.
pub fn cokernel_group(m: &IntMatrix) -> FgAbGroup {
    let diag = elim::diagonal_entries(rows_of(m), m.rows());
    FgAbGroup::from_orders(m.rows() - diag.len(), diag)
}

/// Invariants of a single differential, enough to assemble homology.
#[derive(Clone, Debug, Default)]
pub struct MapInvariants {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl MapInvariants {
    pub fn of_rows(rows: Vec<SparseVec>, ncols: usize) -> Self {
        let diag = elim::diagonal_entries(rows, ncols);
        let rank = diag.len();
        let torsion = FgAbGroup::from_orders(0, diag).torsion().to_vec();
        MapInvariants { rank, torsion }
    }

    pub fn of(m: &IntMatrix) -> Self {
        MapInvariants::of_rows(rows_of(m), m.rows())
    }
}

/// Homology at a free module of rank `dim` between an incoming map with
/// invariants `d_in` and an outgoing map of rank `rank_out`.
pub fn homology_from_invariants(dim: usize, d_in: &MapInvariants, rank_out: usize) -> FgAbGroup {
    FgAbGroup::from_orders(dim - d_in.rank - rank_out, d_in.torsion.iter().cloned())
}

/// `ker(d_out) / im(d_in)`.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<FgAbGroup> {
    assert_eq!(
        d_in.rows(),
        d_out.cols(),
        "maps are not composable: {}x{} then {}x{}",
        d_in.rows(),
        d_in.cols(),
        d_out.rows(),
        d_out.cols()
    );
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::CompositionNotZero);
    }
    let dim = d_in.rows();
    let inv = MapInvariants::of(d_in);
    Ok(homology_from_invariants(dim, &inv, rank(d_out)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernels() {
        assert_eq!(cokernel_group(&IntMatrix::from_rows(&[[5]])).to_string(), "Z/5");
        assert_eq!(cokernel_group(&IntMatrix::zero(3, 0)).to_string(), "Z^3");
        assert_eq!(
            cokernel_group(&IntMatrix::from_rows(&[[2, 0], [0, 3]])).to_string(),
            "Z/6"
        );
    }

    #[test]
    fn homology_examples() {
        let h = homology_at(&IntMatrix::from_rows(&[[2]]), &IntMatrix::zero(0, 1)).unwrap();
        assert_eq!(h.to_string(), "Z/2");
        let r = homology_at(&IntMatrix::from_rows(&[[1]]), &IntMatrix::from_rows(&[[1]]));
        assert_eq!(r, Err(Error::CompositionNotZero));
    }
}
