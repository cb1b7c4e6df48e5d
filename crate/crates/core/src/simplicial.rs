//! The Dold–Kan construction, levelwise functor application and homotopy
//! groups of simplicial free abelian groups.
//!
//! `K(C)_m = ⊕_{σ: [m] ↠ [k]} C_k`. A surjection is stored as the bitmask
//! of its jumps (`j` is set when `σ(j+1) = σ(j) + 1`). For `θ: [n] -> [m]`
//! with `σθ = εη` (epi-mono), `θ^*` sends `(σ, c)` to `(η, c)` if `ε = id`,
//! to `(η, dc)` if `ε = δ^0`, and to zero otherwise.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::budget::Budget;
use crate::chain::FreeChainComplex;
use crate::error::{Error, Result};
use crate::functors::{NatTrans, PolyFunctor, Terms};
use crate::zlinalg::{
    homology_from_invariants, smith, FgAbGroup, Int, IntMatrix, MapInvariants, SparseVec,
};

/// A letter of `K(C)_m`: a surjection and a basis element of `C_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Letter {
    mask: u64,
    k: i64,
    c: u32,
}

/// Basis of one level of `K(C)`.
struct Level {
    m: usize,
    letters: Vec<Letter>,
    index: HashMap<Letter, u32>,
}

impl Level {
    fn new(c: &FreeChainComplex, m: usize) -> Level {
        assert!(m < 64, "simplicial level too large");
        let mut letters = Vec::new();
        if let Some((lo, hi)) = c.degree_range() {
            for k in lo.max(0)..=hi.min(m as i64) {
                let rank = c.rank(k);
                if rank == 0 {
                    continue;
                }
                for mask in masks(m, k as usize) {
                    for ci in 0..rank as u32 {
                        letters.push(Letter { mask, k, c: ci });
                    }
                }
            }
        }
        let index = letters
            .iter()
            .enumerate()
            .map(|(i, l)| (*l, i as u32))
            .collect();
        Level { m, letters, index }
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn pos(&self, l: &Letter) -> u32 {
        self.index[l]
    }
}

/// `m`-bit masks with `k` bits set, in increasing order.
fn masks(m: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    if k == 0 {
        return vec![0];
    }
    let mut x: u64 = (1u64 << k) - 1;
    let limit = 1u64 << m;
    while x < limit {
        out.push(x);
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Images of all letters of level `m` under the face `∂_i`.
fn face_images(c: &FreeChainComplex, from: &Level, to: &Level, i: usize) -> Vec<SparseVec> {
    let m = from.m;
    let bit = |mask: u64, j: usize| mask >> j & 1 == 1;
    // the differentials of C used by ∂_0
    let mut diffs: HashMap<i64, IntMatrix> = HashMap::new();
    from.letters
        .iter()
        .map(|l| {
            let j = l.mask;
            if i == 0 {
                let rest = j >> 1;
                if m >= 1 && bit(j, 0) {
                    let d = diffs.entry(l.k).or_insert_with(|| c.differential(l.k));
                    let col = d.column(l.c as usize);
                    SparseVec::from_unsorted(
                        col.iter()
                            .map(|(r, v)| {
                                let t = Letter {
                                    mask: rest,
                                    k: l.k - 1,
                                    c: *r,
                                };
                                (to.pos(&t), v.clone())
                            })
                            .collect(),
                    )
                } else {
                    SparseVec::unit(to.pos(&Letter { mask: rest, ..*l }))
                }
            } else if i == m {
                if bit(j, m - 1) {
                    SparseVec::new()
                } else {
                    let mask = j & ((1u64 << (m - 1)) - 1);
                    SparseVec::unit(to.pos(&Letter { mask, ..*l }))
                }
            } else if bit(j, i - 1) && bit(j, i) {
                SparseVec::new()
            } else {
                let low = j & ((1u64 << (i - 1)) - 1);
                let mid = ((j >> (i - 1)) | (j >> i)) & 1;
                let high = (j >> (i + 1)) << i;
                let mask = low | (mid << (i - 1)) | high;
                SparseVec::unit(to.pos(&Letter { mask, ..*l }))
            }
        })
        .collect()
}

/// Images of all letters of level `m` under the degeneracy `s_j`.
fn degeneracy_images(from: &Level, to: &Level, j: usize) -> Vec<SparseVec> {
    let low = (1u64 << j) - 1;
    from.letters
        .iter()
        .map(|l| {
            let mask = (l.mask & low) | ((l.mask & !low) << 1);
            SparseVec::unit(to.pos(&Letter { mask, ..*l }))
        })
        .collect()
}

/// A simplicial free abelian group truncated at `max_level`, with all
/// faces and degeneracies materialized.
#[derive(Clone, Debug)]
pub struct SimplicialFreeAbGroup {
    ranks: Vec<usize>,
    /// `faces[m][i] = ∂_i: X_m -> X_{m-1}` (empty for `m = 0`).
    faces: Vec<Vec<IntMatrix>>,
    /// `degens[m][j] = s_j: X_m -> X_{m+1}` for `m < max_level`.
    degens: Vec<Vec<IntMatrix>>,
}

impl SimplicialFreeAbGroup {
    pub fn max_level(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, m: usize) -> usize {
        self.ranks[m]
    }

    pub fn face(&self, m: usize, i: usize) -> &IntMatrix {
        &self.faces[m][i]
    }

    pub fn degeneracy(&self, m: usize, j: usize) -> &IntMatrix {
        &self.degens[m][j]
    }

    /// Every violated simplicial identity, described in words.
    pub fn identity_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let top = self.max_level();
        for m in 2..=top {
            for j in 0..=m {
                for i in 0..j {
                    // ∂_i ∂_j = ∂_{j-1} ∂_i
                    let a = self.face(m - 1, i).mul(self.face(m, j));
                    let b = self.face(m - 1, j - 1).mul(self.face(m, i));
                    if a != b {
                        bad.push(format!("d{i} d{j} != d{} d{i} at level {m}", j - 1));
                    }
                }
            }
        }
        for m in 0..top {
            for j in 0..=m {
                let s = self.degeneracy(m, j);
                for i in 0..=m + 1 {
                    let lhs = self.face(m + 1, i).mul(s);
                    let rhs = if i < j {
                        self.degeneracy(m - 1, j - 1).mul(self.face(m, i))
                    } else if i == j || i == j + 1 {
                        IntMatrix::identity(self.rank(m))
                    } else {
                        self.degeneracy(m - 1, j).mul(self.face(m, i - 1))
                    };
                    if lhs != rhs {
                        bad.push(format!("d{i} s{j} identity fails at level {m}"));
                    }
                }
            }
        }
        for m in 0..top.saturating_sub(1) {
            for j in 0..=m {
                for i in 0..=j {
                    // s_i s_j = s_{j+1} s_i
                    let a = self.degeneracy(m + 1, i).mul(self.degeneracy(m, j));
                    let b = self.degeneracy(m + 1, j + 1).mul(self.degeneracy(m, i));
                    if a != b {
                        bad.push(format!("s{i} s{j} != s{} s{i} at level {m}", j + 1));
                    }
                }
            }
        }
        bad
    }

    /// The unnormalized complex `Σ (-1)^i ∂_i`.
    pub fn alternating_complex(&self) -> FreeChainComplex {
        let diffs = (1..=self.max_level())
            .map(|m| alternating(&self.faces[m]))
            .collect();
        FreeChainComplex::new(0, self.ranks.clone(), diffs).expect("simplicial identities")
    }

    /// The normalized complex `X / D`, with `D` spanned by the images of all
    /// degeneracies. Uses dense Smith forms, so only for small groups.
    pub fn normalized_complex(&self) -> FreeChainComplex {
        let top = self.max_level();
        // quotient map q_m and a section l_m of each level
        let mut quot = Vec::with_capacity(top + 1);
        let mut lift = Vec::with_capacity(top + 1);
        for m in 0..=top {
            let n = self.rank(m);
            let degs: Vec<&IntMatrix> = if m == 0 {
                Vec::new()
            } else {
                self.degens[m - 1].iter().collect()
            };
            let d = if degs.is_empty() {
                IntMatrix::zero(n, 0)
            } else {
                IntMatrix::hcat(&degs)
            };
            let s = smith(&d);
            let k = s.rank();
            debug_assert!(s.diag.iter().all(|x| x.is_one()), "degenerate part is a summand");
            let rows: Vec<usize> = (k..n).collect();
            quot.push(s.u.transpose().select_columns(&rows).transpose());
            lift.push(s.u_inv.select_columns(&rows));
        }
        let ranks = quot.iter().map(IntMatrix::rows).collect();
        let diffs = (1..=top)
            .map(|m| quot[m - 1].mul(&alternating(&self.faces[m])).mul(&lift[m]))
            .collect();
        FreeChainComplex::new(0, ranks, diffs).expect("normalized complex")
    }
}

fn alternating(faces: &[IntMatrix]) -> IntMatrix {
    let mut acc = IntMatrix::zero(faces[0].rows(), faces[0].cols());
    for (i, f) in faces.iter().enumerate() {
        let s = if i % 2 == 0 { Int::ONE } else { -Int::ONE };
        acc = acc.add(&f.scale(&s));
    }
    acc
}

/// `K(C)` up to `max_level`. `C` must live in non-negative degrees.
pub fn dold_kan_k(c: &FreeChainComplex, max_level: usize) -> SimplicialFreeAbGroup {
    if let Some((lo, _)) = c.degree_range() {
        assert!(lo >= 0, "Dold-Kan needs a complex in non-negative degrees");
    }
    let levels: Vec<Level> = (0..=max_level).map(|m| Level::new(c, m)).collect();
    let ranks = levels.iter().map(Level::len).collect();
    let mut faces = vec![Vec::new()];
    for m in 1..=max_level {
        faces.push(
            (0..=m)
                .map(|i| {
                    let imgs = face_images(c, &levels[m], &levels[m - 1], i);
                    IntMatrix::from_columns(levels[m - 1].len(), imgs)
                })
                .collect(),
        );
    }
    let mut degens = Vec::new();
    for m in 0..max_level {
        degens.push(
            (0..=m)
                .map(|j| {
                    let imgs = degeneracy_images(&levels[m], &levels[m + 1], j);
                    IntMatrix::from_columns(levels[m + 1].len(), imgs)
                })
                .collect(),
        );
    }
    SimplicialFreeAbGroup {
        ranks,
        faces,
        degens,
    }
}

/// `F` applied to every level, face and degeneracy.
pub fn apply_functor_levelwise(
    f: &PolyFunctor,
    x: &SimplicialFreeAbGroup,
    budget: &Budget,
) -> Result<SimplicialFreeAbGroup> {
    let mut ranks = Vec::new();
    for m in 0..=x.max_level() {
        guard_full_basis(f, x.rank(m), budget)?;
        let r = f.basis(x.rank(m))?.len();
        budget.check(r)?;
        ranks.push(r);
    }
    let map = |v: &Vec<IntMatrix>| -> Result<Vec<IntMatrix>> {
        v.iter().map(|m| f.map_of(m)).collect()
    };
    let faces = x.faces.iter().map(map).collect::<Result<_>>()?;
    let degens = x.degens.iter().map(map).collect::<Result<_>>()?;
    Ok(SimplicialFreeAbGroup {
        ranks,
        faces,
        degens,
    })
}

/// `π_i X` for `i <= i_max` from the normalized complex.
pub fn homotopy_groups(
    x: &SimplicialFreeAbGroup,
    i_max: usize,
) -> Result<BTreeMap<usize, FgAbGroup>> {
    if x.max_level() < i_max + 1 {
        return Err(Error::InsufficientTruncation {
            needed: i_max + 1,
            have: x.max_level(),
        });
    }
    let h = x.normalized_complex().homology();
    Ok((0..=i_max).map(|i| (i, h[&(i as i64)].clone())).collect())
}

/// The full basis of a level is held in memory before the degenerate
/// elements are dropped, so its size counts against the cap too.
fn guard_full_basis(f: &PolyFunctor, r: usize, budget: &Budget) -> Result<()> {
    let bound = f.basis_size_bound(r);
    if bound > budget.cap() as u128 {
        return Err(Error::BudgetExceeded {
            needed: bound.min(usize::MAX as u128) as usize,
            cap: budget.cap(),
        });
    }
    Ok(())
}

/// The first level whose size went over the budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Breach {
    pub level: usize,
    pub needed: usize,
}

/// Sizes seen while building a normalized functor complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexStats {
    /// Rank of the normalized complex in each degree.
    pub normalized_ranks: Vec<usize>,
    /// Rank of `F(K(C)_m)` before discarding degenerate elements.
    pub full_ranks: Vec<usize>,
    pub breach: Option<Breach>,
}

/// One level of `F K(C)`: the nondegenerate basis elements.
struct FLevel {
    level: Level,
    full: usize,
    nondeg: Vec<u32>,
    /// basis index -> position among nondegenerate elements
    pos: HashMap<u32, u32>,
}

fn functor_level(f: &PolyFunctor, c: &FreeChainComplex, m: usize, budget: &Budget) -> Result<FLevel> {
    let level = Level::new(c, m);
    guard_full_basis(f, level.len(), budget)?;
    let b = f.basis(level.len())?;
    let full_mask: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let nondeg: Vec<u32> = (0..b.len() as u32)
        .into_par_iter()
        .filter(|&i| {
            let mut acc = 0u64;
            for &l in b.weight(i as usize) {
                acc |= level.letters[l as usize].mask;
            }
            acc == full_mask
        })
        .collect();
    budget.check(nondeg.len())?;
    let pos = nondeg
        .iter()
        .enumerate()
        .map(|(p, &i)| (i, p as u32))
        .collect();
    Ok(FLevel {
        full: b.len(),
        level,
        nondeg,
        pos,
    })
}

/// Levels `0..=top`, stopping before the first one over budget.
fn build_levels(
    f: &PolyFunctor,
    c: &FreeChainComplex,
    top: usize,
    budget: &Budget,
) -> Result<(Vec<FLevel>, Option<Breach>)> {
    let mut levels = Vec::new();
    for m in 0..=top {
        match functor_level(f, c, m, budget) {
            Ok(l) => levels.push(l),
            Err(Error::BudgetExceeded { needed, .. }) => {
                return Ok((levels, Some(Breach { level: m, needed })))
            }
            Err(e) => return Err(e),
        }
    }
    Ok((levels, None))
}

/// Images (one per nondegenerate element of the upper level) under the
/// normalized differential.
fn normalized_rows(
    f: &PolyFunctor,
    c: &FreeChainComplex,
    upper: &FLevel,
    lower: &FLevel,
) -> Result<Vec<SparseVec>> {
    let m = upper.level.m;
    let src = upper.level.len();
    let tgt = lower.level.len();
    let sb = f.basis(src)?;
    let tb = f.basis(tgt)?;
    let images: Vec<Vec<SparseVec>> = (0..=m)
        .map(|i| face_images(c, &upper.level, &lower.level, i))
        .collect();
    let chunks: Vec<&[u32]> = upper.nondeg.chunks(1024).collect();
    let parts: Vec<Result<Vec<SparseVec>>> = chunks
        .par_iter()
        .map(|chunk| {
            let elems: Vec<&[u32]> = chunk.iter().map(|&i| sb.elem(i as usize)).collect();
            let mut rows: Vec<Vec<(u32, Int)>> = vec![Vec::new(); chunk.len()];
            for (i, imgs) in images.iter().enumerate() {
                let out = f.apply_many(src, tgt, imgs, &elems)?;
                for (row, terms) in rows.iter_mut().zip(out) {
                    for (e, v) in terms {
                        let idx = tb.index_of(&e).expect("basis element") as u32;
                        if let Some(&p) = lower.pos.get(&idx) {
                            row.push((p, if i % 2 == 0 { v } else { -v }));
                        }
                    }
                }
            }
            Ok(rows.into_iter().map(SparseVec::from_unsorted).collect())
        })
        .collect();
    let mut rows = Vec::with_capacity(upper.nondeg.len());
    for p in parts {
        rows.extend(p?);
    }
    Ok(rows)
}

fn differential_matrices(
    f: &PolyFunctor,
    c: &FreeChainComplex,
    levels: &[FLevel],
) -> Result<Vec<IntMatrix>> {
    (1..levels.len())
        .map(|m| {
            let rows = normalized_rows(f, c, &levels[m], &levels[m - 1])?;
            Ok(IntMatrix::from_columns(levels[m - 1].nondeg.len(), rows))
        })
        .collect()
}

/// Invariants of the differentials of `N(F K(C))`.
#[derive(Clone, Debug)]
pub struct NormalizedDifferentials {
    pub ranks: Vec<usize>,
    /// `invariants[m]` describes `d_m: N_m -> N_{m-1}` (index 0 unused).
    pub invariants: Vec<MapInvariants>,
    pub stats: ComplexStats,
}

impl NormalizedDifferentials {
    /// Degrees whose homology is determined by the levels built.
    pub fn known_degrees(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// `H_i`, or `None` when level `i + 1` was not built.
    pub fn try_homology(&self, i: usize) -> Option<FgAbGroup> {
        if i + 1 >= self.ranks.len() {
            return None;
        }
        let rank_out = if i == 0 { 0 } else { self.invariants[i].rank };
        Some(homology_from_invariants(
            self.ranks[i],
            &self.invariants[i + 1],
            rank_out,
        ))
    }

    pub fn homology(&self, i: usize) -> FgAbGroup {
        self.try_homology(i).expect("degree beyond the levels built")
    }

    /// The largest matrix dimension that was formed.
    pub fn max_dimension(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }
}

/// Differentials of the normalized complex of `F K(C)` through level `top`
/// (for a cokernel functor, of the mapping cone computing it). Levels over
/// budget are not built; `stats.breach` records the first one. Only
/// invariants are kept.
pub fn normalized_functor_differentials(
    f: &PolyFunctor,
    c: &FreeChainComplex,
    top: usize,
    budget: &Budget,
) -> Result<NormalizedDifferentials> {
    f.validate()?;
    if let Some(t) = f.cokernel_of() {
        let (cone, stats) = cokernel_cone(t, c, top, budget)?;
        let ranks: Vec<usize> = match cone.degree_range() {
            Some((_, hi)) => (0..=hi).map(|m| cone.rank(m)).collect(),
            None => Vec::new(),
        };
        let invariants = (0..ranks.len() as i64)
            .into_par_iter()
            .map(|m| {
                if m == 0 {
                    MapInvariants::default()
                } else {
                    MapInvariants::of(&cone.differential(m))
                }
            })
            .collect();
        return Ok(NormalizedDifferentials {
            ranks,
            invariants,
            stats,
        });
    }
    let (levels, breach) = build_levels(f, c, top, budget)?;
    let stats = ComplexStats {
        normalized_ranks: levels.iter().map(|l| l.nondeg.len()).collect(),
        full_ranks: levels.iter().map(|l| l.full).collect(),
        breach,
    };
    let mut invariants = vec![MapInvariants::default()];
    for m in 1..levels.len() {
        let rows = normalized_rows(f, c, &levels[m], &levels[m - 1])?;
        invariants.push(MapInvariants::of_rows(rows, levels[m - 1].nondeg.len()));
    }
    Ok(NormalizedDifferentials {
        ranks: stats.normalized_ranks.clone(),
        invariants,
        stats,
    })
}

/// The normalized complex `N(F K(C))` through level `top` with its
/// matrices. For a cokernel functor this is the mapping cone of
/// `N(S K C) -> N(T K C)`, which has the same homology.
pub fn normalized_functor_complex(
    f: &PolyFunctor,
    c: &FreeChainComplex,
    top: usize,
    budget: &Budget,
) -> Result<FreeChainComplex> {
    f.validate()?;
    let (complex, stats) = if let Some(t) = f.cokernel_of() {
        cokernel_cone(t, c, top, budget)?
    } else {
        let (levels, breach) = build_levels(f, c, top, budget)?;
        let ranks = levels.iter().map(|l| l.nondeg.len()).collect();
        let diffs = differential_matrices(f, c, &levels)?;
        let stats = ComplexStats {
            breach,
            ..ComplexStats::default()
        };
        (FreeChainComplex::new(0, ranks, diffs)?, stats)
    };
    match stats.breach {
        Some(b) => Err(Error::BudgetExceeded {
            needed: b.needed,
            cap: budget.cap(),
        }),
        None => Ok(complex),
    }
}

/// `Cone_i = N(T)_i ⊕ N(S)_{i-1}` with `d(t, s) = (dt + φs, -ds)`, through
/// the highest degree the budget allows.
fn cokernel_cone(
    nat: &NatTrans,
    c: &FreeChainComplex,
    top: usize,
    budget: &Budget,
) -> Result<(FreeChainComplex, ComplexStats)> {
    let (s, t) = (nat.source(), nat.target());
    let (tl, tb) = build_levels(t, c, top, budget)?;
    let (sl, sbr) = build_levels(s, c, top.saturating_sub(1), budget)?;
    // degree i of the cone needs T up to i and S up to i - 1
    let reach = tl.len().min(sl.len() + 1);
    let breach = [tb, sbr.map(|b| Breach { level: b.level + 1, ..b })]
        .into_iter()
        .flatten()
        .min_by_key(|b| b.level);
    let tl = &tl[..reach];
    let sl = &sl[..reach.saturating_sub(1)];
    let dt = differential_matrices(t, c, tl)?;
    let ds = differential_matrices(s, c, sl)?;
    // φ_m is weight preserving, so nondegenerate elements go to nondegenerate ones
    let mut phi = Vec::new();
    for (m, lvl) in sl.iter().enumerate() {
        let r = lvl.level.len();
        let sbasis = s.basis(r)?;
        let tbasis = t.basis(r)?;
        let mut cols = Vec::with_capacity(lvl.nondeg.len());
        for &i in &lvl.nondeg {
            let terms: Terms = nat.eval(r, sbasis.elem(i as usize))?;
            let mut acc = Vec::new();
            for (e, v) in terms {
                let idx = tbasis.index_of(&e).expect("basis element") as u32;
                acc.push((*tl[m].pos.get(&idx).expect("weight preserving"), v));
            }
            cols.push(SparseVec::from_unsorted(acc));
        }
        phi.push(IntMatrix::from_columns(tl[m].nondeg.len(), cols));
    }
    let trank = |i: usize| tl[i].nondeg.len();
    let srank = |i: usize| if i >= 1 { sl[i - 1].nondeg.len() } else { 0 };
    let ranks: Vec<usize> = (0..reach).map(|i| trank(i) + srank(i)).collect();
    let mut diffs = Vec::new();
    for i in 1..reach {
        let mut cols: Vec<SparseVec> = dt[i - 1].columns().to_vec();
        let t_low = trank(i - 1) as u32;
        for j in 0..srank(i) {
            let mut col = phi[i - 1].column(j).clone();
            if i >= 2 {
                let mut neg = ds[i - 2].column(j).shifted(t_low);
                neg.negate();
                col.add_scaled(&neg, &Int::ONE);
            }
            cols.push(col);
        }
        diffs.push(IntMatrix::from_columns(ranks[i - 1], cols));
    }
    let stats = ComplexStats {
        normalized_ranks: ranks.clone(),
        full_ranks: tl.iter().map(|l| l.full).collect(),
        breach,
    };
    Ok((FreeChainComplex::new(0, ranks, diffs)?, stats))
}
