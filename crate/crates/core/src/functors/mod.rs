//! Polynomial endofunctors of free abelian groups.
//!
//! Every functor carries a basis on `Z^r` that is homogeneous for the torus
//! action: each basis element has a weight, the multiset of letters of
//! `Z^r` it involves. Order-preserving coordinate inclusions send basis
//! elements to basis elements. The simplicial code relies on both facts.

mod closed;
mod cross;
pub mod lie;
mod natural;
mod sub;
pub mod words;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::zlinalg::{cokernel_group, FgAbGroup, Int, IntMatrix, SparseVec};

pub use cross::{cross_effect, CrossEffect};
pub use natural::{canonical_nat_trans, NatKind, NatTrans};

/// Canonical encoding of a basis element.
pub type Elem = Box<[u32]>;

/// Finite linear combination of encodings, sorted and without zeros.
pub type Terms = Vec<(Elem, Int)>;

#[derive(Default)]
pub(crate) struct Acc(HashMap<Elem, Int>);

impl Acc {
    pub(crate) fn add(&mut self, e: Elem, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&e) {
            Some(v) => *v += &c,
            None => {
                self.0.insert(e, c);
            }
        }
    }

    pub(crate) fn add_terms(&mut self, t: &Terms, k: &Int) {
        for (e, c) in t {
            self.add(e.clone(), c * k);
        }
    }

    pub(crate) fn into_terms(self) -> Terms {
        let mut v: Terms = self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// The basis of `F(Z^r)` with weights and a reverse index.
pub struct EvalBasis {
    elems: Vec<Elem>,
    weights: Vec<Box<[u32]>>,
    index: HashMap<Elem, u32>,
}

impl EvalBasis {
    fn new(mut pairs: Vec<(Elem, Box<[u32]>)>) -> Self {
        pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let index = pairs
            .iter()
            .enumerate()
            .map(|(i, (e, _))| (e.clone(), i as u32))
            .collect();
        let (elems, weights) = pairs.into_iter().unzip();
        EvalBasis {
            elems,
            weights,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, i: usize) -> &[u32] {
        &self.elems[i]
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    /// Sorted multiset of letters of `Z^r` that element `i` involves.
    pub fn weight(&self, i: usize) -> &[u32] {
        &self.weights[i]
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }

    /// Coordinates of a combination of basis encodings.
    pub fn coords(&self, t: &Terms) -> SparseVec {
        SparseVec::from_unsorted(
            t.iter()
                .map(|(e, c)| {
                    let i = self
                        .index_of(e)
                        .unwrap_or_else(|| panic!("encoding {e:?} is not a basis element"));
                    (i as u32, c.clone())
                })
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Sym,
    Ext,
    Div,
    SchurJ,
    SchurY,
}

impl Family {
    pub fn functor(self, n: usize) -> PolyFunctor {
        match self {
            Family::Sym => PolyFunctor::sym(n),
            Family::Ext => PolyFunctor::ext(n),
            Family::Div => PolyFunctor::div(n),
            Family::SchurJ => PolyFunctor::schur_j(n),
            Family::SchurY => PolyFunctor::schur_y(n),
        }
    }
}

#[derive(Clone)]
pub(crate) enum Kind {
    Identity,
    Constant(usize),
    Tensor(usize),
    Sym(usize),
    Ext(usize),
    Div(usize),
    Lie(usize),
    SuperLie(usize, Arc<sub::SuperLieData>),
    Compose(PolyFunctor, PolyFunctor),
    TensorProd(PolyFunctor, PolyFunctor),
    DirectSum(PolyFunctor, PolyFunctor),
    Kernel(NatTrans),
    Cokernel(NatTrans),
}

pub(crate) struct Node {
    kind: Kind,
    degree: usize,
    bases: RwLock<HashMap<usize, Arc<EvalBasis>>>,
    patterns: RwLock<HashMap<Box<[u32]>, Arc<sub::Pattern>>>,
}

/// A polynomial functor `Ab -> Ab`, evaluated on free modules.
#[derive(Clone)]
pub struct PolyFunctor(Arc<Node>);

impl PolyFunctor {
    fn from_kind(kind: Kind) -> Self {
        let degree = match &kind {
            Kind::Identity => 1,
            Kind::Constant(_) => 0,
            Kind::Tensor(n)
            | Kind::Sym(n)
            | Kind::Ext(n)
            | Kind::Div(n)
            | Kind::Lie(n)
            | Kind::SuperLie(n, _) => *n,
            Kind::Compose(f, g) => f.degree() * g.degree(),
            Kind::TensorProd(f, g) => f.degree() + g.degree(),
            Kind::DirectSum(f, g) => f.degree().max(g.degree()),
            Kind::Kernel(t) | Kind::Cokernel(t) => t.source().degree().max(t.target().degree()),
        };
        PolyFunctor(Arc::new(Node {
            kind,
            degree,
            bases: RwLock::new(HashMap::new()),
            patterns: RwLock::new(HashMap::new()),
        }))
    }

    pub fn identity() -> Self {
        Self::from_kind(Kind::Identity)
    }

    /// The constant functor with value `Z^k`.
    pub fn constant(k: usize) -> Self {
        Self::from_kind(Kind::Constant(k))
    }

    pub fn tensor(n: usize) -> Self {
        Self::from_kind(Kind::Tensor(n))
    }

    pub fn sym(n: usize) -> Self {
        Self::from_kind(Kind::Sym(n))
    }

    pub fn ext(n: usize) -> Self {
        Self::from_kind(Kind::Ext(n))
    }

    pub fn div(n: usize) -> Self {
        Self::from_kind(Kind::Div(n))
    }

    pub fn lie(n: usize) -> Self {
        assert!(n >= 1, "Lie functors start in degree 1");
        Self::from_kind(Kind::Lie(n))
    }

    pub fn superlie(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("super-Lie degree must be positive".into()));
        }
        if n > 5 {
            return Err(Error::UnsupportedDegree(n));
        }
        let mut lower: Vec<PolyFunctor> = Vec::new();
        for k in 1..=n {
            let data = sub::SuperLieData {
                lower: lower.clone(),
                ambient: PolyFunctor::tensor(k),
            };
            lower.push(Self::from_kind(Kind::SuperLie(k, Arc::new(data))));
        }
        Ok(lower.pop().unwrap())
    }

    /// Recognizes the functors that have décalage ladders.
    pub fn family(&self) -> Option<(Family, usize)> {
        match self.kind() {
            Kind::Sym(n) => Some((Family::Sym, *n)),
            Kind::Ext(n) => Some((Family::Ext, *n)),
            Kind::Div(n) => Some((Family::Div, *n)),
            Kind::Kernel(t) => match t.kind() {
                NatKind::SymMult(n) => Some((Family::SchurJ, n)),
                NatKind::ExtMult(n) => Some((Family::SchurY, n)),
                _ => None,
            },
            _ => None,
        }
    }

    /// `J^n = ker(Id ⊗ SP^{n-1} -> SP^n)`.
    pub fn schur_j(n: usize) -> Self {
        Self::kernel_functor(&canonical_nat_trans("sym_mult", n).expect("n >= 2"))
    }

    /// `Y^n = ker(Id ⊗ Λ^{n-1} -> Λ^n)`.
    pub fn schur_y(n: usize) -> Self {
        Self::kernel_functor(&canonical_nat_trans("ext_mult", n).expect("n >= 2"))
    }

    /// `E^n = ker(Id ⊗ Γ_{n-1} -> Γ_n)`.
    pub fn schur_e(n: usize) -> Self {
        Self::kernel_functor(&canonical_nat_trans("div_mult", n).expect("n >= 2"))
    }

    /// `W_n = coker(SP^n -> Γ_n)`.
    pub fn w(n: usize) -> Self {
        Self::cokernel_functor(&canonical_nat_trans("sp_to_gamma", n).expect("n >= 1"))
    }

    pub fn compose(f: &PolyFunctor, g: &PolyFunctor) -> Self {
        Self::from_kind(Kind::Compose(f.clone(), g.clone()))
    }

    pub fn tensor_product(f: &PolyFunctor, g: &PolyFunctor) -> Self {
        Self::from_kind(Kind::TensorProd(f.clone(), g.clone()))
    }

    pub fn direct_sum(f: &PolyFunctor, g: &PolyFunctor) -> Self {
        Self::from_kind(Kind::DirectSum(f.clone(), g.clone()))
    }

    pub fn kernel_functor(t: &NatTrans) -> Self {
        Self::from_kind(Kind::Kernel(t.clone()))
    }

    pub fn cokernel_functor(t: &NatTrans) -> Self {
        Self::from_kind(Kind::Cokernel(t.clone()))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// True for cokernel functors, whose values need not be free.
    pub fn is_cokernel(&self) -> bool {
        matches!(self.0.kind, Kind::Cokernel(_))
    }

    /// Whether a cokernel functor occurs anywhere below the top level.
    fn has_nested_cokernel(&self) -> bool {
        fn any(f: &PolyFunctor) -> bool {
            match f.kind() {
                Kind::Cokernel(_) => true,
                Kind::Compose(a, b) | Kind::TensorProd(a, b) | Kind::DirectSum(a, b) => {
                    any(a) || any(b)
                }
                _ => false,
            }
        }
        match self.kind() {
            Kind::Cokernel(_) => false,
            _ => any(self),
        }
    }

    /// Rejects shapes the evaluator cannot handle exactly.
    pub fn validate(&self) -> Result<()> {
        if self.has_nested_cokernel() {
            return Err(Error::InvalidArgument(
                "cokernel functors are only supported at the top level".into(),
            ));
        }
        Ok(())
    }

    /// For a cokernel functor, the transformation it is the cokernel of.
    pub fn cokernel_of(&self) -> Option<&NatTrans> {
        match self.kind() {
            Kind::Cokernel(t) => Some(t),
            _ => None,
        }
    }

    /// An upper bound for `basis(r).len()` that needs no enumeration
    /// (exact unless kernels are involved). Saturates at `u128::MAX`.
    pub fn basis_size_bound(&self, r: usize) -> u128 {
        let r = r as u128;
        let binom = |n: u128, k: u128| -> u128 {
            if k > n {
                return 0;
            }
            let mut acc: u128 = 1;
            for i in 0..k {
                acc = acc.saturating_mul(n - i) / (i + 1);
            }
            acc
        };
        let pow = |b: u128, e: usize| (0..e).fold(1u128, |a, _| a.saturating_mul(b));
        match self.kind() {
            Kind::Identity => r,
            Kind::Constant(k) => *k as u128,
            Kind::Tensor(n) => pow(r, *n),
            Kind::Sym(n) | Kind::Div(n) => binom(r + *n as u128 - 1, *n as u128),
            Kind::Ext(n) => binom(r, *n as u128),
            // each Lyndon word has n distinct rotations
            Kind::Lie(n) => pow(r, *n) / *n as u128,
            Kind::SuperLie(n, _) => pow(r, *n),
            Kind::Compose(f, g) => {
                let inner = g.basis_size_bound(r as usize).min(usize::MAX as u128);
                f.basis_size_bound(inner as usize)
            }
            Kind::TensorProd(f, g) => f
                .basis_size_bound(r as usize)
                .saturating_mul(g.basis_size_bound(r as usize)),
            Kind::DirectSum(f, g) => f
                .basis_size_bound(r as usize)
                .saturating_add(g.basis_size_bound(r as usize)),
            Kind::Kernel(t) => t.source().basis_size_bound(r as usize),
            Kind::Cokernel(t) => t.target().basis_size_bound(r as usize),
        }
    }

    pub fn basis(&self, r: usize) -> Result<Arc<EvalBasis>> {
        if let Some(b) = self.0.bases.read().unwrap().get(&r) {
            return Ok(b.clone());
        }
        let b = Arc::new(EvalBasis::new(self.generate(r)?));
        let mut w = self.0.bases.write().unwrap();
        Ok(w.entry(r).or_insert(b).clone())
    }

    fn generate(&self, r: usize) -> Result<Vec<(Elem, Box<[u32]>)>> {
        use words::*;
        let by_word = |ws: Vec<Vec<u32>>| -> Vec<(Elem, Box<[u32]>)> {
            ws.into_iter()
                .map(|w| {
                    let mut s = w.clone();
                    s.sort_unstable();
                    (w.into_boxed_slice(), s.into_boxed_slice())
                })
                .collect()
        };
        Ok(match self.kind() {
            Kind::Identity => (0..r as u32)
                .map(|l| (vec![l].into_boxed_slice(), vec![l].into_boxed_slice()))
                .collect(),
            Kind::Constant(k) => (0..*k as u32)
                .map(|i| (vec![i].into_boxed_slice(), Box::from([])))
                .collect(),
            Kind::Tensor(n) => by_word(all_words(r, *n)),
            Kind::Sym(n) | Kind::Div(n) => by_word(multisets(r, *n)),
            Kind::Ext(n) => by_word(subsets(r, *n)),
            Kind::Lie(n) => by_word(lyndon_words(r, *n)),
            Kind::Compose(f, g) => {
                let gb = g.basis(r)?;
                let fb = f.basis(gb.len())?;
                (0..fb.len())
                    .map(|i| {
                        let mut w: Vec<u32> = fb
                            .weight(i)
                            .iter()
                            .flat_map(|&j| gb.weight(j as usize).iter().copied())
                            .collect();
                        w.sort_unstable();
                        (fb.elem(i).into(), w.into_boxed_slice())
                    })
                    .collect()
            }
            Kind::TensorProd(f, g) => {
                let fb = f.basis(r)?;
                let gb = g.basis(r)?;
                let mut out = Vec::with_capacity(fb.len() * gb.len());
                for i in 0..fb.len() {
                    for j in 0..gb.len() {
                        let mut w: Vec<u32> = fb.weight(i).to_vec();
                        w.extend_from_slice(gb.weight(j));
                        w.sort_unstable();
                        out.push((
                            vec![i as u32, j as u32].into_boxed_slice(),
                            w.into_boxed_slice(),
                        ));
                    }
                }
                out
            }
            Kind::DirectSum(f, g) => {
                let mut out = Vec::new();
                for (tag, h) in [(0u32, f), (1u32, g)] {
                    let b = h.basis(r)?;
                    for i in 0..b.len() {
                        out.push((vec![tag, i as u32].into_boxed_slice(), b.weight(i).into()));
                    }
                }
                out
            }
            Kind::Cokernel(t) => {
                let b = t.target().basis(r)?;
                (0..b.len())
                    .map(|i| (b.elem(i).into(), b.weight(i).into()))
                    .collect()
            }
            Kind::Kernel(_) | Kind::SuperLie(..) => sub::generate(self, r)?,
        })
    }

    /// Images of the given basis elements of `F(Z^src)` under `F(f)`, where
    /// `f: Z^src -> Z^tgt` sends letter `l` to `images[l]`. Letters not
    /// involved in `elems` may carry empty images.
    pub fn apply_many(
        &self,
        src: usize,
        tgt: usize,
        images: &[SparseVec],
        elems: &[&[u32]],
    ) -> Result<Vec<Terms>> {
        match self.kind() {
            Kind::Identity => Ok(elems
                .iter()
                .map(|e| {
                    images[e[0] as usize]
                        .iter()
                        .map(|(j, c)| (Box::from([*j]) as Elem, c.clone()))
                        .collect()
                })
                .collect()),
            Kind::Constant(_) => Ok(elems
                .iter()
                .map(|e| vec![(Elem::from(*e), Int::ONE)])
                .collect()),
            Kind::Tensor(_) => Ok(elems.iter().map(|e| closed::tensor(e, images)).collect()),
            Kind::Sym(_) => Ok(elems.iter().map(|e| closed::sym(e, images)).collect()),
            Kind::Ext(_) => Ok(elems.iter().map(|e| closed::ext(e, images)).collect()),
            Kind::Div(_) => Ok(elems.iter().map(|e| closed::div(e, images)).collect()),
            Kind::Lie(_) => elems.iter().map(|e| closed::lie(e, images)).collect(),
            Kind::Compose(f, g) => {
                let gsrc = g.basis(src)?;
                let gtgt = g.basis(tgt)?;
                let mut needed: Vec<u32> = elems.iter().flat_map(|e| e.iter().copied()).collect();
                needed.sort_unstable();
                needed.dedup();
                let inner: Vec<&[u32]> = needed.iter().map(|&i| gsrc.elem(i as usize)).collect();
                let imgs = g.apply_many(src, tgt, images, &inner)?;
                let mut fimages = vec![SparseVec::new(); gsrc.len()];
                for (i, t) in needed.iter().zip(imgs) {
                    fimages[*i as usize] = gtgt.coords(&t);
                }
                f.apply_many(gsrc.len(), gtgt.len(), &fimages, elems)
            }
            Kind::TensorProd(f, g) => {
                let fs = f.basis(src)?;
                let gs = g.basis(src)?;
                let ft = f.basis(tgt)?;
                let gt = g.basis(tgt)?;
                let fe: Vec<&[u32]> = elems.iter().map(|e| fs.elem(e[0] as usize)).collect();
                let ge: Vec<&[u32]> = elems.iter().map(|e| gs.elem(e[1] as usize)).collect();
                let fi = f.apply_many(src, tgt, images, &fe)?;
                let gi = g.apply_many(src, tgt, images, &ge)?;
                Ok(fi
                    .iter()
                    .zip(&gi)
                    .map(|(a, b)| {
                        let mut out = Vec::with_capacity(a.len() * b.len());
                        for (x, c) in a {
                            let i = ft.index_of(x).expect("basis element") as u32;
                            for (y, d) in b {
                                let j = gt.index_of(y).expect("basis element") as u32;
                                out.push((Elem::from([i, j]), c * d));
                            }
                        }
                        out.sort_unstable_by(|p, q| p.0.cmp(&q.0));
                        out
                    })
                    .collect())
            }
            Kind::DirectSum(f, g) => {
                let mut out = Vec::with_capacity(elems.len());
                for e in elems {
                    let h = if e[0] == 0 { f } else { g };
                    let hs = h.basis(src)?;
                    let ht = h.basis(tgt)?;
                    let t = h.apply_many(src, tgt, images, &[hs.elem(e[1] as usize)])?;
                    out.push(
                        t[0].iter()
                            .map(|(x, c)| {
                                let i = ht.index_of(x).expect("basis element") as u32;
                                (Elem::from([e[0], i]), c.clone())
                            })
                            .collect(),
                    );
                }
                Ok(out)
            }
            Kind::Cokernel(t) => t.target().apply_many(src, tgt, images, elems),
            Kind::Kernel(_) | Kind::SuperLie(..) => sub::apply_many(self, src, tgt, images, elems),
        }
    }

    /// Matrix of `F(f)` in the canonical bases.
    pub fn map_of(&self, f: &IntMatrix) -> Result<IntMatrix> {
        let src = self.basis(f.cols())?;
        let tgt = self.basis(f.rows())?;
        let elems: Vec<&[u32]> = src.elems().iter().map(|e| &e[..]).collect();
        let imgs = self.apply_many(f.cols(), f.rows(), f.columns(), &elems)?;
        let cols = imgs.iter().map(|t| tgt.coords(t)).collect();
        Ok(IntMatrix::from_columns(tgt.len(), cols))
    }

    /// `F(Z^r)` as an abelian group; free except for cokernel functors.
    pub fn value(&self, r: usize) -> Result<FgAbGroup> {
        match self.kind() {
            Kind::Cokernel(t) => Ok(cokernel_group(&t.matrix_at(r)?)),
            _ => Ok(FgAbGroup::free(self.basis(r)?.len())),
        }
    }

    fn precedence(&self) -> u8 {
        match self.kind() {
            Kind::DirectSum(..) => 0,
            Kind::TensorProd(..) => 1,
            Kind::Compose(..) => 2,
            _ => 3,
        }
    }
}

pub fn basis_of(f: &PolyFunctor, r: usize) -> Result<Arc<EvalBasis>> {
    f.basis(r)
}

pub fn map_of(f: &PolyFunctor, m: &IntMatrix) -> Result<IntMatrix> {
    f.map_of(m)
}

pub fn compose(f: &PolyFunctor, g: &PolyFunctor) -> PolyFunctor {
    PolyFunctor::compose(f, g)
}

pub fn tensor_product(f: &PolyFunctor, g: &PolyFunctor) -> PolyFunctor {
    PolyFunctor::tensor_product(f, g)
}

pub fn direct_sum(f: &PolyFunctor, g: &PolyFunctor) -> PolyFunctor {
    PolyFunctor::direct_sum(f, g)
}

pub fn kernel_functor(t: &NatTrans) -> PolyFunctor {
    PolyFunctor::kernel_functor(t)
}

pub fn cokernel_functor(t: &NatTrans) -> PolyFunctor {
    PolyFunctor::cokernel_functor(t)
}

/// Hermite basis of the super-Lie lattice inside `⊗^n Z^r`, as columns.
pub fn superlie_basis(n: usize, r: usize) -> Result<IntMatrix> {
    let f = PolyFunctor::superlie(n)?;
    let b = f.basis(r)?;
    let t = PolyFunctor::tensor(n);
    let tb = t.basis(r)?;
    let mut cols = Vec::with_capacity(b.len());
    for i in 0..b.len() {
        cols.push(tb.coords(&sub::ambient_vector(&f, r, b.elem(i))?));
    }
    Ok(IntMatrix::from_columns(tb.len(), cols))
}

/// Lyndon coordinates (indexed by the basis of `Lie^n(Z^r)`) of a vector of
/// `⊗^n Z^r` lying in the image of the Lie embedding.
pub fn lie_rewrite(tensor: &SparseVec, n: usize, r: usize) -> Result<SparseVec> {
    let tb = PolyFunctor::tensor(n).basis(r)?;
    let lb = PolyFunctor::lie(n).basis(r)?;
    let map: BTreeMap<Vec<u32>, Int> = tensor
        .iter()
        .map(|(i, c)| (tb.elem(*i as usize).to_vec(), c.clone()))
        .collect();
    let terms = lie::rewrite(map)?;
    Ok(SparseVec::from_unsorted(
        terms
            .into_iter()
            .map(|(w, c)| (lb.index_of(&w).expect("Lyndon word") as u32, c))
            .collect(),
    ))
}

impl fmt::Display for PolyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, c: &PolyFunctor, p: u8| -> fmt::Result {
            if c.precedence() <= p && c.precedence() < 3 {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        match self.kind() {
            Kind::Identity => write!(f, "Id"),
            Kind::Constant(k) => write!(f, "Z^{k}"),
            Kind::Tensor(n) => write!(f, "T^{n}"),
            Kind::Sym(n) => write!(f, "SP^{n}"),
            Kind::Ext(n) => write!(f, "L^{n}"),
            Kind::Div(n) => write!(f, "G^{n}"),
            Kind::Lie(n) => write!(f, "Lie^{n}"),
            Kind::SuperLie(n, _) => write!(f, "SLie^{n}"),
            Kind::Compose(a, b) => {
                // composition is associative, so only looser operators need parentheses
                if a.precedence() < 2 {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " o ")?;
                child(f, b, 1)
            }
            Kind::TensorProd(a, b) => {
                child(f, a, 0)?;
                write!(f, " * ")?;
                child(f, b, 1)
            }
            Kind::DirectSum(a, b) => {
                write!(f, "{a} + ")?;
                child(f, b, 0)
            }
            Kind::Kernel(t) => match t.kind() {
                NatKind::SymMult(n) => write!(f, "J^{n}"),
                NatKind::ExtMult(n) => write!(f, "Y^{n}"),
                NatKind::DivMult(n) => write!(f, "E^{n}"),
                _ => write!(f, "ker({})", t.name()),
            },
            Kind::Cokernel(t) => match t.kind() {
                NatKind::SpToGamma(n) => write!(f, "W^{n}"),
                _ => write!(f, "coker({})", t.name()),
            },
        }
    }
}

impl fmt::Debug for PolyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFunctor({self})")
    }
}

impl PartialEq for PolyFunctor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.to_string() == other.to_string()
    }
}

impl Eq for PolyFunctor {}
