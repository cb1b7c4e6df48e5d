//! Derived functors `L_i F(A, n) = π_i F K(P[n])`: resolutions, the generic
//! simplicial path, Koszul complexes, décalage routing, multiple Tor and
//! the de Rham complexes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::budget::Budget;
use crate::chain::FreeChainComplex;
use crate::error::{Error, Result};
use crate::functors::words::{multisets, subsets};
use crate::functors::{Family, PolyFunctor};
use crate::simplicial::{normalized_functor_differentials, Breach};
use crate::zlinalg::{FgAbGroup, Int, IntMatrix, Lattice, SparseVec};

/// A two-term free resolution `0 -> L --f--> M -> A -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub f: IntMatrix,
    pub target: FgAbGroup,
}

impl Resolution {
    /// `M` in degree `n`, `L` in degree `n + 1`.
    pub fn complex(&self, n: usize) -> FreeChainComplex {
        FreeChainComplex::two_term(n as i64, self.f.clone())
    }

    /// The same resolution with a contractible `Z --1--> Z` added.
    pub fn padded(&self) -> Resolution {
        Resolution {
            f: IntMatrix::block_diag(&[&self.f, &IntMatrix::identity(1)]),
            target: self.target.clone(),
        }
    }
}

/// The minimal diagonal resolution: torsion generators first, then free.
pub fn resolve(a: &FgAbGroup) -> Resolution {
    let k = a.torsion().len();
    let f = IntMatrix::diagonal(k + a.rank(), k, a.torsion());
    Resolution {
        f,
        target: a.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Generic,
    Koszul,
    Decalage,
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Generic => "generic",
            Method::Koszul => "koszul",
            Method::Decalage => "decalage",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "generic" => Ok(Method::Generic),
            "koszul" => Ok(Method::Koszul),
            "decalage" => Ok(Method::Decalage),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DerivedRequest {
    pub functor: PolyFunctor,
    pub group: FgAbGroup,
    pub shift: usize,
    pub i_max: usize,
    pub method: Method,
}

impl DerivedRequest {
    pub fn new(functor: PolyFunctor, group: FgAbGroup, shift: usize, i_max: usize) -> Self {
        DerivedRequest {
            functor,
            group,
            shift,
            i_max,
            method: Method::Auto,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BudgetReport {
    pub cap: usize,
    /// Largest matrix dimension formed.
    pub max_dimension: usize,
    /// The first simplicial level that did not fit, if any.
    pub breach: Option<Breach>,
}

impl BudgetReport {
    fn merge(&mut self, other: &BudgetReport) {
        self.cap = other.cap;
        self.max_dimension = self.max_dimension.max(other.max_dimension);
        if self.breach.is_none() {
            self.breach = other.breach;
        }
    }
}

/// Values for degrees `0..=i_max`; `None` marks a degree the budget did not
/// reach.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivedResult {
    pub values: BTreeMap<usize, Option<FgAbGroup>>,
    pub provenance: BTreeMap<usize, String>,
    pub budget_report: BudgetReport,
}

impl DerivedResult {
    pub fn value(&self, i: usize) -> Option<&FgAbGroup> {
        self.values.get(&i).and_then(Option::as_ref)
    }

    pub fn is_complete(&self) -> bool {
        self.values.values().all(Option::is_some)
    }
}

/// `N(F K(C))` vanishes above this degree when `C` stops at `top_degree`:
/// a nondegenerate element needs every jump, and each letter has at most
/// `top_degree`. A cokernel's cone reaches one degree further.
fn vanishing_bound(f: &PolyFunctor, top_degree: usize) -> usize {
    f.degree() * top_degree + usize::from(f.is_cokernel())
}

/// The generic path through the minimal resolution.
pub fn derived_functor(req: &DerivedRequest, budget: &Budget) -> Result<DerivedResult> {
    derived_functor_with(req, &resolve(&req.group), budget)
}

/// The generic path through a given resolution of `req.group`.
pub fn derived_functor_with(
    req: &DerivedRequest,
    res: &Resolution,
    budget: &Budget,
) -> Result<DerivedResult> {
    let c = res.complex(req.shift);
    let hi = c.degree_range().map(|(_, h)| h as usize).unwrap_or(0);
    let bound = vanishing_bound(&req.functor, hi);
    let top = (req.i_max + 1).min(bound + 1);
    if top >= 63 {
        return Err(Error::InvalidArgument(format!("simplicial level {top} too large")));
    }
    let nd = normalized_functor_differentials(&req.functor, &c, top, budget)?;
    let mut out = DerivedResult {
        budget_report: BudgetReport {
            cap: budget.cap(),
            max_dimension: nd.max_dimension(),
            breach: nd.stats.breach,
        },
        ..DerivedResult::default()
    };
    for i in 0..=req.i_max {
        let v = if i > bound {
            Some(FgAbGroup::zero())
        } else {
            nd.try_homology(i)
        };
        out.values.insert(i, v);
        out.provenance.insert(i, "generic".to_string());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KoszulVariant {
    /// `Kos_n(f)`: `Λ^k(P) ⊗ SP^{n-k}(Q)` in degree `k`.
    Sym,
    /// `Kos^n(f)`: `Γ_k(P) ⊗ Λ^{n-k}(Q)` in degree `k`.
    Lambda,
}

fn index_of(list: &[Vec<u32>]) -> HashMap<Vec<u32>, usize> {
    list.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()
}

/// Inserts `q` into a sorted multiset.
fn insert_sorted(w: &[u32], q: u32) -> Vec<u32> {
    let mut out = w.to_vec();
    let pos = out.partition_point(|&x| x <= q);
    out.insert(pos, q);
    out
}

/// Koszul complex of `f: P -> Q` in total degree `n`, with `P = Z^cols`
/// and `Q = Z^rows`.
pub fn koszul_complex(f: &IntMatrix, n: usize, variant: KoszulVariant) -> FreeChainComplex {
    let (a, b) = (f.cols(), f.rows());
    // bases of the two factors in each degree k
    let left = |k: usize| match variant {
        KoszulVariant::Sym => subsets(a, k),
        KoszulVariant::Lambda => multisets(a, k),
    };
    let right = |k: usize| match variant {
        KoszulVariant::Sym => multisets(b, n - k),
        KoszulVariant::Lambda => subsets(b, n - k),
    };
    let ls: Vec<Vec<Vec<u32>>> = (0..=n).map(left).collect();
    let rs: Vec<Vec<Vec<u32>>> = (0..=n).map(right).collect();
    let ranks: Vec<usize> = (0..=n).map(|k| ls[k].len() * rs[k].len()).collect();
    let mut diffs = Vec::new();
    for k in 1..=n {
        let li = index_of(&ls[k - 1]);
        let ri = index_of(&rs[k - 1]);
        let width = rs[k - 1].len();
        let mut cols = Vec::with_capacity(ranks[k]);
        for p in &ls[k] {
            for q in &rs[k] {
                let mut acc = Vec::new();
                let mut emit = |p2: &[u32], q2: &[u32], v: Int| {
                    let idx = li[p2] * width + ri[q2];
                    acc.push((idx as u32, v));
                };
                match variant {
                    KoszulVariant::Sym => {
                        for (pos, &s) in p.iter().enumerate() {
                            // (-1)^{k-i} with i = pos + 1
                            let sign = if (k - pos - 1) % 2 == 0 { Int::ONE } else { -Int::ONE };
                            let mut rest = p.clone();
                            rest.remove(pos);
                            for (row, v) in f.column(s as usize).iter() {
                                emit(&rest, &insert_sorted(q, *row), &sign * v);
                            }
                        }
                    }
                    KoszulVariant::Lambda => {
                        let mut last = None;
                        for (pos, &s) in p.iter().enumerate() {
                            if last == Some(s) {
                                continue;
                            }
                            last = Some(s);
                            let mut rest = p.clone();
                            rest.remove(pos);
                            for (row, v) in f.column(s as usize).iter() {
                                if q.contains(row) {
                                    continue;
                                }
                                let below = q.iter().filter(|&&e| e < *row).count();
                                let v = if below % 2 == 0 { v.clone() } else { -v };
                                emit(&rest, &insert_sorted(q, *row), v);
                            }
                        }
                    }
                }
                cols.push(SparseVec::from_unsorted(acc));
            }
        }
        diffs.push(IntMatrix::from_columns(ranks[k - 1], cols));
    }
    FreeChainComplex::new(0, ranks, diffs).expect("Koszul differentials square to zero")
}

/// The Koszul-type complex for `J^n`: the kernel of the multiplication
/// map `Kos_{n-1}(f) ⊗ (L -> M) -> Kos_n(f)`.
pub fn schur_j_koszul_complex(f: &IntMatrix, n: usize) -> Result<FreeChainComplex> {
    if n < 2 {
        return Err(Error::UnsupportedDegree(n));
    }
    let (a, b) = (f.cols(), f.rows());
    let lower = koszul_complex(f, n - 1, KoszulVariant::Sym);
    let res = FreeChainComplex::two_term(0, f.clone());
    let total = lower.tensor(&res);
    let upper = koszul_complex(f, n, KoszulVariant::Sym);
    // φ_k in the block order of the tensor product: (x_{k-1} ⊗ L) then (x_k ⊗ M)
    let mut phis = Vec::new();
    for k in 0..=n {
        let ui = index_of(&subsets(a, k));
        let uj = index_of(&multisets(b, n - k));
        let uw = multisets(b, n - k).len();
        let mut cols = Vec::new();
        if k >= 1 {
            let sign = if (k - 1) % 2 == 0 { Int::ONE } else { -Int::ONE };
            for w in subsets(a, k - 1) {
                for s in multisets(b, n - k) {
                    for l in 0..a as u32 {
                        if w.contains(&l) {
                            cols.push(SparseVec::new());
                            continue;
                        }
                        let above = w.iter().filter(|&&x| x > l).count();
                        let v = if above % 2 == 0 { sign.clone() } else { -&sign };
                        let idx = ui[&insert_sorted(&w, l)] * uw + uj[&s];
                        cols.push(SparseVec::unit(idx as u32).scaled(&v));
                    }
                }
            }
        }
        if k < n {
            for w in subsets(a, k) {
                for s in multisets(b, n - 1 - k) {
                    for m in 0..b as u32 {
                        let idx = ui[&w] * uw + uj[&insert_sorted(&s, m)];
                        cols.push(SparseVec::unit(idx as u32));
                    }
                }
            }
        }
        assert_eq!(cols.len(), total.rank(k as i64));
        phis.push(IntMatrix::from_columns(upper.rank(k as i64), cols));
    }
    for k in 1..=n {
        let lhs = upper.differential(k as i64).mul(&phis[k]);
        let rhs = phis[k - 1].mul(&total.differential(k as i64));
        if lhs != rhs {
            return Err(Error::CompositionNotZero);
        }
    }
    // the kernel subcomplex, in echelon bases
    let kernels: Vec<Lattice> = phis
        .iter()
        .enumerate()
        .map(|(k, phi)| {
            let gens = crate::zlinalg::kernel_basis(phi).into_columns();
            Lattice::from_generators(total.rank(k as i64), gens)
        })
        .collect();
    let bases: Vec<Vec<SparseVec>> = kernels.iter().map(Lattice::basis).collect();
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for k in 1..=n {
        let d = total.differential(k as i64);
        let cols = bases[k]
            .iter()
            .map(|v| kernels[k - 1].solve_in_basis(&d.apply(v)))
            .collect::<Result<Vec<_>>>()?;
        diffs.push(IntMatrix::from_columns(ranks[k - 1], cols));
    }
    FreeChainComplex::new(0, ranks, diffs)
}

fn homology_values(c: &FreeChainComplex, i_max: usize) -> Vec<FgAbGroup> {
    let h = c.homology();
    (0..=i_max)
        .map(|i| h.get(&(i as i64)).cloned().unwrap_or_else(FgAbGroup::zero))
        .collect()
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Sym => "SP",
        Family::Ext => "L",
        Family::Div => "G",
        Family::SchurJ => "J",
        Family::SchurY => "Y",
    }
}

/// Values of `L_i (family^n)(A, s)` for `i <= i_max` with the steps taken.
fn route(
    family: Family,
    n: usize,
    s: usize,
    i_max: usize,
    res: &Resolution,
    budget: &Budget,
    report: &mut BudgetReport,
) -> Result<(Vec<Option<FgAbGroup>>, String)> {
    let here = format!("{}^{n}({s})", family_name(family));
    let down = match (family, s) {
        (Family::Sym, s) if s >= 1 => Some(Family::Ext),
        (Family::Ext, s) if s >= 1 => Some(Family::Div),
        (Family::SchurJ, s) if s >= 1 => Some(Family::SchurY),
        _ => None,
    };
    if let Some(next) = down.filter(|_| n >= 1) {
        // L_i F(A, s) = L_{i-n} G(A, s-1)
        let (sub, path) = if i_max >= n {
            route(next, n, s - 1, i_max - n, res, budget, report)?
        } else {
            (Vec::new(), format!("{}^{n}({})", family_name(next), s - 1))
        };
        let mut vals = vec![Some(FgAbGroup::zero()); n.min(i_max + 1)];
        vals.extend(sub);
        return Ok((vals, format!("{here} > {path}")));
    }
    let koszul = |variant| {
        let c = koszul_complex(&res.f, n, variant);
        let dim = (0..=n as i64).map(|k| c.rank(k)).max().unwrap_or(0);
        (homology_values(&c, i_max), dim)
    };
    let (vals, dim, how) = match (family, s) {
        (Family::Sym, 0) if n >= 1 => {
            let (v, d) = koszul(KoszulVariant::Sym);
            (v, d, "Kos")
        }
        (Family::Ext, 0) if n >= 1 => {
            let (v, d) = koszul(KoszulVariant::Lambda);
            (v, d, "Kos")
        }
        (Family::SchurJ, 0) if n == 3 => {
            let c = schur_j_koszul_complex(&res.f, n)?;
            let dim = (0..=n as i64).map(|k| c.rank(k)).max().unwrap_or(0);
            (homology_values(&c, i_max), dim, "J-Kos")
        }
        _ => {
            let req = DerivedRequest::new(family.functor(n), res.target.clone(), s, i_max)
                .with_method(Method::Generic);
            let r = derived_functor_with(&req, res, budget)?;
            report.merge(&r.budget_report);
            let vals = (0..=i_max).map(|i| r.values[&i].clone()).collect();
            return Ok((vals, format!("{here} generic")));
        }
    };
    report.max_dimension = report.max_dimension.max(dim);
    Ok((vals.into_iter().map(Some).collect(), format!("{here} {how}")))
}

/// The décalage/Koszul router.
pub fn fast_derived(req: &DerivedRequest, budget: &Budget) -> Result<DerivedResult> {
    let (family, n) = req.functor.family().ok_or(Error::NotReducible)?;
    let res = resolve(&req.group);
    let mut report = BudgetReport {
        cap: budget.cap(),
        ..BudgetReport::default()
    };
    let (vals, path) = route(family, n, req.shift, req.i_max, &res, budget, &mut report)?;
    let mut out = DerivedResult {
        budget_report: report,
        ..DerivedResult::default()
    };
    for (i, v) in vals.into_iter().enumerate() {
        out.values.insert(i, v);
        out.provenance.insert(i, path.clone());
    }
    Ok(out)
}

/// Runs a request with the method it asks for; `Auto` takes the fast
/// route whenever the functor has one.
pub fn evaluate(req: &DerivedRequest, budget: &Budget) -> Result<DerivedResult> {
    match req.method {
        Method::Generic => derived_functor(req, budget),
        Method::Koszul | Method::Decalage => fast_derived(req, budget),
        Method::Auto => {
            if req.functor.family().is_some() {
                fast_derived(req, budget)
            } else {
                derived_functor(req, budget)
            }
        }
    }
}

/// Both paths, degree by degree.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub generic: DerivedResult,
    pub fast: DerivedResult,
    /// Degrees where both paths produced a value.
    pub compared: Vec<usize>,
}

pub fn compare_paths(req: &DerivedRequest, budget: &Budget) -> Result<Comparison> {
    let generic = derived_functor(req, budget)?;
    let fast = fast_derived(req, budget)?;
    let mut compared = Vec::new();
    for i in 0..=req.i_max {
        if let (Some(g), Some(f)) = (generic.value(i), fast.value(i)) {
            if g != f {
                return Err(Error::Mismatch(format!(
                    "L_{i} {}({}, {}): generic gives {g}, {} gives {f}",
                    req.functor, req.group, req.shift, fast.provenance[&i]
                )));
            }
            compared.push(i);
        }
    }
    Ok(Comparison {
        generic,
        fast,
        compared,
    })
}

/// `Tor_i(A_1, ..., A_k)` as homology of the tensor product of minimal
/// resolutions.
pub fn multi_tor(groups: &[FgAbGroup], i: usize) -> FgAbGroup {
    let mut c = FreeChainComplex::concentrated(0, 1);
    for g in groups {
        c = c.tensor(&resolve(g).complex(0));
    }
    c.homology_at(i as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeRham {
    /// `C_i^n = Λ^i ⊗ Γ_{n-i}`
    C,
    /// `D_i^n = SP^i ⊗ Λ^{n-i}`
    D,
}

impl FromStr for DeRham {
    type Err = Error;

    fn from_str(s: &str) -> Result<DeRham> {
        match s {
            "C" | "c" => Ok(DeRham::C),
            "D" | "d" => Ok(DeRham::D),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// The degree `n` de Rham complex of `Z^r` (variant `D`) or its dual (`C`).
pub fn derham_complex(n: usize, r: usize, variant: DeRham) -> FreeChainComplex {
    let left = |i: usize| match variant {
        DeRham::C => subsets(r, i),
        DeRham::D => multisets(r, i),
    };
    let right = |i: usize| match variant {
        DeRham::C => multisets(r, n - i),
        DeRham::D => subsets(r, n - i),
    };
    let ls: Vec<Vec<Vec<u32>>> = (0..=n).map(left).collect();
    let rs: Vec<Vec<Vec<u32>>> = (0..=n).map(right).collect();
    let ranks: Vec<usize> = (0..=n).map(|i| ls[i].len() * rs[i].len()).collect();
    let mut diffs = Vec::new();
    for i in 1..=n {
        let li = index_of(&ls[i - 1]);
        let ri = index_of(&rs[i - 1]);
        let width = rs[i - 1].len();
        let mut cols = Vec::with_capacity(ranks[i]);
        for p in &ls[i] {
            for x in &rs[i] {
                let mut acc = Vec::new();
                let mut last = None;
                for (pos, &b) in p.iter().enumerate() {
                    let mut rest = p.clone();
                    rest.remove(pos);
                    match variant {
                        DeRham::C => {
                            // (-1)^k b_1..^b_k..b_i ⊗ b_k X, with b_k γ_e(b_k) = (e+1) γ_{e+1}(b_k)
                            let k = pos + 1;
                            let e = x.iter().filter(|&&y| y == b).count() as i64;
                            let v = Int::from(if k % 2 == 0 { e + 1 } else { -(e + 1) });
                            let idx = li[&rest] * width + ri[&insert_sorted(x, b)];
                            acc.push((idx as u32, v));
                        }
                        DeRham::D => {
                            // monomials: each distinct factor once, weighted by multiplicity
                            if last == Some(b) {
                                continue;
                            }
                            last = Some(b);
                            if x.contains(&b) {
                                continue;
                            }
                            let mult = p.iter().filter(|&&y| y == b).count() as i64;
                            let below = x.iter().filter(|&&y| y < b).count();
                            let v = Int::from(if below % 2 == 0 { mult } else { -mult });
                            let idx = li[&rest] * width + ri[&insert_sorted(x, b)];
                            acc.push((idx as u32, v));
                        }
                    }
                }
                cols.push(SparseVec::from_unsorted(acc));
            }
        }
        diffs.push(IntMatrix::from_columns(ranks[i - 1], cols));
    }
    FreeChainComplex::new(0, ranks, diffs).expect("de Rham differentials square to zero")
}

pub fn derham_homology(n: usize, r: usize, variant: DeRham) -> BTreeMap<usize, FgAbGroup> {
    let c = derham_complex(n, r, variant);
    c.homology()
        .into_iter()
        .map(|(i, g)| (i as usize, g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolutions() {
        let r = resolve(&"Z + Z/2 + Z/8".parse().unwrap());
        assert_eq!(r.f, IntMatrix::from_rows(&[[2, 0], [0, 8], [0, 0]]));
        let free = resolve(&"Z^2".parse().unwrap());
        assert_eq!((free.f.rows(), free.f.cols()), (2, 0));
        assert_eq!(resolve(&"Z/6".parse().unwrap()).f, IntMatrix::from_rows(&[[6]]));
    }
}
