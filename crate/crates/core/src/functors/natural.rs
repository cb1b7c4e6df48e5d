//! The canonical natural transformations between closed-form functors.

use std::sync::Arc;

use super::words::{arrangements, permutations, runs, sort_sign};
use super::{Acc, Elem, PolyFunctor, Terms};
use crate::error::{Error, Result};
use crate::zlinalg::{Int, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NatKind {
    /// `A ⊗ SP^{n-1} -> SP^n`
    SymMult(usize),
    /// `A ⊗ Λ^{n-1} -> Λ^n`
    ExtMult(usize),
    /// `A ⊗ Γ_{n-1} -> Γ_n`
    DivMult(usize),
    /// `f_n: SP^n -> ⊗^n`, symmetrization
    SpToTensor(usize),
    /// `g_n: Λ^n -> ⊗^n`, antisymmetrization
    ExtToTensor(usize),
    /// `h_n: Γ_n -> ⊗^n`, sum of distinct arrangements
    DivToTensor(usize),
    /// `SP^n -> Γ_n`, `x_1^{a_1}...x_k^{a_k} ↦ Π a_j! γ_{a_j}(x_j)`
    SpToGamma(usize),
}

struct Inner {
    kind: NatKind,
    source: PolyFunctor,
    target: PolyFunctor,
    /// The non-identity factor of the source for the multiplications.
    factor: Option<PolyFunctor>,
}

/// A natural transformation between polynomial functors, given by its
/// action on basis elements (weights are preserved).
#[derive(Clone)]
pub struct NatTrans(Arc<Inner>);

pub fn canonical_nat_trans(name: &str, n: usize) -> Result<NatTrans> {
    let kind = match name {
        "sym_mult" => NatKind::SymMult(n),
        "ext_mult" => NatKind::ExtMult(n),
        "div_mult" => NatKind::DivMult(n),
        "sp_to_tensor" => NatKind::SpToTensor(n),
        "ext_to_tensor" => NatKind::ExtToTensor(n),
        "div_to_tensor" => NatKind::DivToTensor(n),
        "sp_to_gamma" => NatKind::SpToGamma(n),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    NatTrans::new(kind)
}

impl NatTrans {
    pub fn new(kind: NatKind) -> Result<NatTrans> {
        let id = PolyFunctor::identity();
        let (source, target, factor) = match kind {
            NatKind::SymMult(n) | NatKind::ExtMult(n) | NatKind::DivMult(n) => {
                if n < 2 {
                    return Err(Error::InvalidArgument(format!(
                        "multiplication needs degree at least 2, got {n}"
                    )));
                }
                let (f, t) = match kind {
                    NatKind::SymMult(_) => (PolyFunctor::sym(n - 1), PolyFunctor::sym(n)),
                    NatKind::ExtMult(_) => (PolyFunctor::ext(n - 1), PolyFunctor::ext(n)),
                    _ => (PolyFunctor::div(n - 1), PolyFunctor::div(n)),
                };
                (PolyFunctor::tensor_product(&id, &f), t, Some(f))
            }
            NatKind::SpToTensor(n) => (PolyFunctor::sym(n), PolyFunctor::tensor(n), None),
            NatKind::ExtToTensor(n) => (PolyFunctor::ext(n), PolyFunctor::tensor(n), None),
            NatKind::DivToTensor(n) => (PolyFunctor::div(n), PolyFunctor::tensor(n), None),
            NatKind::SpToGamma(n) => (PolyFunctor::sym(n), PolyFunctor::div(n), None),
        };
        Ok(NatTrans(Arc::new(Inner {
            kind,
            source,
            target,
            factor,
        })))
    }

    pub fn kind(&self) -> NatKind {
        self.0.kind
    }

    pub fn name(&self) -> String {
        let (s, n) = match self.0.kind {
            NatKind::SymMult(n) => ("sym_mult", n),
            NatKind::ExtMult(n) => ("ext_mult", n),
            NatKind::DivMult(n) => ("div_mult", n),
            NatKind::SpToTensor(n) => ("sp_to_tensor", n),
            NatKind::ExtToTensor(n) => ("ext_to_tensor", n),
            NatKind::DivToTensor(n) => ("div_to_tensor", n),
            NatKind::SpToGamma(n) => ("sp_to_gamma", n),
        };
        format!("{s}({n})")
    }

    pub fn source(&self) -> &PolyFunctor {
        &self.0.source
    }

    pub fn target(&self) -> &PolyFunctor {
        &self.0.target
    }

    /// Image of a source basis element at rank `r`, in target encodings.
    pub fn eval(&self, r: usize, elem: &[u32]) -> Result<Terms> {
        let one = |w: Vec<u32>, c: Int| vec![(Elem::from(w), c)];
        Ok(match self.0.kind {
            NatKind::SymMult(_) | NatKind::ExtMult(_) | NatKind::DivMult(_) => {
                let fb = self.0.factor.as_ref().unwrap().basis(r)?;
                let x = elem[0];
                let mut w = fb.elem(elem[1] as usize).to_vec();
                match self.0.kind {
                    NatKind::SymMult(_) => {
                        w.push(x);
                        w.sort_unstable();
                        one(w, Int::ONE)
                    }
                    NatKind::ExtMult(_) => {
                        w.insert(0, x);
                        match sort_sign(&mut w) {
                            Some(s) => one(w, Int::from(s)),
                            None => Vec::new(),
                        }
                    }
                    _ => {
                        // x · γ_a(x) = (a+1) γ_{a+1}(x)
                        let a = w.iter().filter(|&&y| y == x).count() as i64;
                        w.push(x);
                        w.sort_unstable();
                        one(w, Int::from(a + 1))
                    }
                }
            }
            NatKind::SpToTensor(n) => {
                let mut acc = Acc::default();
                for (p, _) in permutations(n) {
                    let w: Vec<u32> = p.iter().map(|&i| elem[i]).collect();
                    acc.add(w.into_boxed_slice(), Int::ONE);
                }
                acc.into_terms()
            }
            NatKind::ExtToTensor(n) => {
                let mut acc = Acc::default();
                for (p, s) in permutations(n) {
                    let w: Vec<u32> = p.iter().map(|&i| elem[i]).collect();
                    acc.add(w.into_boxed_slice(), Int::from(s));
                }
                acc.into_terms()
            }
            NatKind::DivToTensor(_) => arrangements(elem)
                .into_iter()
                .map(|w| (Elem::from(w), Int::ONE))
                .collect(),
            NatKind::SpToGamma(_) => {
                let c = runs(elem)
                    .iter()
                    .fold(Int::ONE, |acc, (_, a)| &acc * &Int::factorial(*a as u64));
                one(elem.to_vec(), c)
            }
        })
    }

    /// Component at `Z^r`.
    pub fn matrix_at(&self, r: usize) -> Result<IntMatrix> {
        let sb = self.source().basis(r)?;
        let tb = self.target().basis(r)?;
        let mut cols = Vec::with_capacity(sb.len());
        for i in 0..sb.len() {
            cols.push(tb.coords(&self.eval(r, sb.elem(i))?));
        }
        Ok(IntMatrix::from_columns(tb.len(), cols))
    }
}
