//! Cross-effects of weight-homogeneous functors.

use super::PolyFunctor;
use crate::error::Result;
use crate::zlinalg::IntMatrix;

/// The top cross-effect `F(A_1 | ... | A_k)`: the summand of
/// `F(A_1 ⊕ ... ⊕ A_k)` spanned by basis elements whose weight meets every
/// block.
#[derive(Clone, Debug)]
pub struct CrossEffect {
    functor: PolyFunctor,
    arity: usize,
}

pub fn cross_effect(f: &PolyFunctor, arity: usize) -> CrossEffect {
    CrossEffect {
        functor: f.clone(),
        arity,
    }
}

impl CrossEffect {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Indices into the basis of `F(Z^{Σ ranks})` forming the joint basis.
    pub fn basis(&self, ranks: &[usize]) -> Result<Vec<usize>> {
        assert_eq!(ranks.len(), self.arity, "one rank per argument");
        let total: usize = ranks.iter().sum();
        let mut block = Vec::with_capacity(total);
        for (k, &r) in ranks.iter().enumerate() {
            block.extend(std::iter::repeat(k).take(r));
        }
        let b = self.functor.basis(total)?;
        Ok((0..b.len())
            .filter(|&i| {
                let mut seen = vec![false; self.arity];
                for &l in b.weight(i) {
                    seen[block[l as usize]] = true;
                }
                seen.into_iter().all(|s| s)
            })
            .collect())
    }

    pub fn rank(&self, ranks: &[usize]) -> Result<usize> {
        Ok(self.basis(ranks)?.len())
    }

    /// Matrix of `F(f_1 | ... | f_k)` in the joint bases.
    pub fn map(&self, fs: &[IntMatrix]) -> Result<IntMatrix> {
        assert_eq!(fs.len(), self.arity, "one map per argument");
        let refs: Vec<&IntMatrix> = fs.iter().collect();
        let big = IntMatrix::block_diag(&refs);
        let m = self.functor.map_of(&big)?;
        let src = self.basis(&fs.iter().map(|f| f.cols()).collect::<Vec<_>>())?;
        let tgt = self.basis(&fs.iter().map(|f| f.rows()).collect::<Vec<_>>())?;
        let mut pos = vec![u32::MAX; m.rows()];
        for (k, &i) in tgt.iter().enumerate() {
            pos[i] = k as u32;
        }
        let cols = src
            .iter()
            .map(|&j| {
                m.column(j).reindex(|i| {
                    let p = pos[i as usize];
                    (p != u32::MAX).then_some(p)
                })
            })
            .collect();
        Ok(IntMatrix::from_columns(tgt.len(), cols))
    }
}
