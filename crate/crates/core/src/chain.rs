//! Bounded chain complexes of finitely generated free abelian groups.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::zlinalg::{homology_from_invariants, FgAbGroup, IntMatrix, MapInvariants, SparseVec};

/// `C_lo <- C_{lo+1} <- ... <- C_hi` with `d_k : C_k -> C_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainComplex {
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d_{lo+k+1}`.
    diffs: Vec<IntMatrix>,
}

impl FreeChainComplex {
    /// `ranks[k]` is the rank in degree `lo + k`; `diffs[k]` is
    /// `d_{lo+k+1}: C_{lo+k+1} -> C_{lo+k}`.
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidArgument(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::InvalidArgument(format!(
                    "differential out of degree {} has shape {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for w in diffs.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return Err(Error::CompositionNotZero);
            }
        }
        Ok(FreeChainComplex { lo, ranks, diffs })
    }

    pub fn zero() -> Self {
        FreeChainComplex {
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `Z^rank` in a single degree.
    pub fn concentrated(degree: i64, rank: usize) -> Self {
        FreeChainComplex {
            lo: degree,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    /// The two-term complex `Z^cols --f--> Z^rows` with target in degree `lo`.
    pub fn two_term(lo: i64, f: IntMatrix) -> Self {
        FreeChainComplex {
            lo,
            ranks: vec![f.rows(), f.cols()],
            diffs: vec![f],
        }
    }

    /// Inclusive degree range, `None` for the empty complex.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        if self.ranks.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.ranks.len() as i64 - 1))
        }
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo {
            return 0;
        }
        self.ranks.get((i - self.lo) as usize).copied().unwrap_or(0)
    }

    /// `d_i: C_i -> C_{i-1}` (a zero matrix outside the stored range).
    pub fn differential(&self, i: i64) -> IntMatrix {
        let k = i - self.lo - 1;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            IntMatrix::zero(self.rank(i - 1), self.rank(i))
        }
    }

    pub fn shift(&self, n: i64) -> FreeChainComplex {
        FreeChainComplex {
            lo: self.lo + n,
            ranks: self.ranks.clone(),
            diffs: self.diffs.clone(),
        }
    }

    /// Total complex of `C ⊗ D` with `d(x ⊗ y) = dx ⊗ y + (-1)^p x ⊗ dy`
    /// for `x` in degree `p`. Degree `k` is ordered by `p`, then
    /// lexicographically in the pair of basis indices.
    pub fn tensor(&self, other: &FreeChainComplex) -> FreeChainComplex {
        let (Some((a0, a1)), Some((b0, b1))) = (self.degree_range(), other.degree_range()) else {
            return FreeChainComplex::zero();
        };
        let lo = a0 + b0;
        let hi = a1 + b1;
        // offsets of each (p, q) block inside total degree p + q
        let offset = |k: i64, p: i64| -> usize {
            (a0.max(k - b1)..p)
                .map(|s| self.rank(s) * other.rank(k - s))
                .sum()
        };
        let total = |k: i64| -> usize {
            (a0..=a1).map(|p| self.rank(p) * other.rank(k - p)).sum()
        };
        let ranks: Vec<usize> = (lo..=hi).map(total).collect();
        let mut diffs = Vec::new();
        for k in lo + 1..=hi {
            let mut cols = Vec::with_capacity(total(k));
            for p in a0.max(k - b1)..=a1.min(k - b0) {
                let q = k - p;
                let (m, n) = (self.rank(p), other.rank(q));
                let dc = self.differential(p);
                let dd = other.differential(q);
                let sign = if p.rem_euclid(2) == 0 { 1i64 } else { -1 };
                let off_c = offset(k - 1, p - 1) as u32;
                let off_d = offset(k - 1, p) as u32;
                let n_low = other.rank(q);
                let n_dlow = other.rank(q - 1);
                for i in 0..m {
                    for j in 0..n {
                        let mut entries = Vec::new();
                        if p - 1 >= a0 {
                            for (r, v) in dc.column(i).iter() {
                                entries.push((off_c + *r * n_low as u32 + j as u32, v.clone()));
                            }
                        }
                        if q - 1 >= b0 {
                            for (r, v) in dd.column(j).iter() {
                                entries.push((
                                    off_d + i as u32 * n_dlow as u32 + *r,
                                    if sign == 1 { v.clone() } else { -v },
                                ));
                            }
                        }
                        cols.push(SparseVec::from_unsorted(entries));
                    }
                }
            }
            diffs.push(IntMatrix::from_columns(total(k - 1), cols));
        }
        FreeChainComplex { lo, ranks, diffs }
    }

    /// Homology in every degree of the range.
    pub fn homology(&self) -> BTreeMap<i64, FgAbGroup> {
        let Some((lo, hi)) = self.degree_range() else {
            return BTreeMap::new();
        };
        let inv: Vec<MapInvariants> = self.diffs.par_iter().map(MapInvariants::of).collect();
        let none = MapInvariants::default();
        (lo..=hi)
            .map(|i| {
                let k = (i - lo) as usize;
                let d_in = inv.get(k).unwrap_or(&none);
                let rank_out = if k == 0 { 0 } else { inv[k - 1].rank };
                (i, homology_from_invariants(self.ranks[k], d_in, rank_out))
            })
            .collect()
    }

    pub fn homology_at(&self, i: i64) -> FgAbGroup {
        match self.degree_range() {
            Some((lo, hi)) if i >= lo && i <= hi => {
                let d_in = MapInvariants::of(&self.differential(i + 1));
                let rank_out = MapInvariants::of(&self.differential(i)).rank;
                homology_from_invariants(self.rank(i), &d_in, rank_out)
            }
            _ => FgAbGroup::zero(),
        }
    }
}

pub fn shift(c: &FreeChainComplex, n: i64) -> FreeChainComplex {
    c.shift(n)
}

pub fn tensor_complexes(c: &FreeChainComplex, d: &FreeChainComplex) -> FreeChainComplex {
    c.tensor(d)
}

pub fn complex_homology(c: &FreeChainComplex) -> BTreeMap<i64, FgAbGroup> {
    c.homology()
}
