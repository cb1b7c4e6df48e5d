//! E¹ pages of the lower central series spectral sequence of a Moore space
//! `M(A, n)`: `E¹_{r,q} = L_q Lie^r(A, n-1)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::derived::{derived_functor, evaluate, DerivedRequest, DerivedResult, Method};
use crate::error::{Error, Result};
use crate::functors::PolyFunctor;
use crate::zlinalg::FgAbGroup;

/// A graded piece of the filtration of `Lie^r`. The splitting is not
/// natural; only the associated graded pieces are.
#[derive(Clone, Debug)]
pub struct CurtisPiece {
    /// The piece as written in terms of `J^k` and `SP^k`.
    pub descriptor: String,
    /// The functor used for evaluation (`J^2` is taken as `Λ^2`).
    pub functor: PolyFunctor,
}

impl CurtisPiece {
    pub fn degree(&self) -> usize {
        self.functor.degree()
    }
}

fn j(k: usize) -> PolyFunctor {
    if k == 2 {
        PolyFunctor::ext(2)
    } else {
        PolyFunctor::schur_j(k)
    }
}

fn o(f: PolyFunctor, g: PolyFunctor) -> PolyFunctor {
    PolyFunctor::compose(&f, &g)
}

fn t(f: PolyFunctor, g: PolyFunctor) -> PolyFunctor {
    PolyFunctor::tensor_product(&f, &g)
}

/// The pieces of `Lie^r` for `r <= 8`.
pub fn curdec_pieces(r: usize) -> Result<Vec<CurtisPiece>> {
    let list: Vec<(&str, PolyFunctor)> = match r {
        1 => vec![("Id", PolyFunctor::identity())],
        2 => vec![("J^2", j(2))],
        3 => vec![("J^3", j(3))],
        4 => vec![("J^2 o J^2", o(j(2), j(2))), ("J^4", j(4))],
        5 => vec![("J^3 * J^2", t(j(3), j(2))), ("J^5", j(5))],
        6 => vec![
            ("J^3 o J^2", o(j(3), j(2))),
            ("J^2 o J^3", o(j(2), j(3))),
            ("J^4 * J^2", t(j(4), j(2))),
            ("J^6", j(6)),
        ],
        7 => vec![
            ("J^3 * (SP^2 o J^2)", t(j(3), o(PolyFunctor::sym(2), j(2)))),
            ("J^5 * J^2", t(j(5), j(2))),
            ("(J^2 o J^2) * J^3", t(o(j(2), j(2)), j(3))),
            ("J^4 * J^3", t(j(4), j(3))),
            ("J^7", j(7)),
        ],
        8 => vec![
            ("J^2 o J^2 o J^2", o(j(2), o(j(2), j(2)))),
            ("J^2 o J^4", o(j(2), j(4))),
            ("J^3 * J^2 * J^3", t(t(j(3), j(2)), j(3))),
            ("J^5 * J^3", t(j(5), j(3))),
            ("J^4 o J^2", o(j(4), j(2))),
            ("J^4 * (SP^2 o J^2)", t(j(4), o(PolyFunctor::sym(2), j(2)))),
            ("J^6 * J^2", t(j(6), j(2))),
            ("J^8", j(8)),
        ],
        _ => return Err(Error::UnsupportedWeight(r)),
    };
    Ok(list
        .into_iter()
        .map(|(d, f)| CurtisPiece {
            descriptor: d.to_string(),
            functor: f,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Exact(FgAbGroup),
    /// Values of the graded pieces; their extension is not determined.
    GradedPieces(Vec<(String, FgAbGroup)>),
    /// Out of reach under the column cap.
    Unknown { cap: usize },
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Exact(g) => g.to_string(),
            Cell::GradedPieces(ps) => {
                let parts: Vec<String> = ps.iter().map(|(d, g)| format!("{d}: {g}")).collect();
                format!("gr[{}]", parts.join("; "))
            }
            Cell::Unknown { .. } => "unknown".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct E1Page {
    pub moore_group: FgAbGroup,
    pub moore_dim: usize,
    pub r_max: usize,
    pub q_max: usize,
    pub grid: BTreeMap<(usize, usize), Cell>,
}

impl E1Page {
    pub fn cell(&self, r: usize, q: usize) -> &Cell {
        &self.grid[&(r, q)]
    }
}

fn column(
    a: &FgAbGroup,
    n: usize,
    r: usize,
    q_max: usize,
    budget: &Budget,
) -> Result<Vec<Cell>> {
    if r == 1 {
        return Ok((0..=q_max)
            .map(|q| Cell::Exact(if q == n - 1 { a.clone() } else { FgAbGroup::zero() }))
            .collect());
    }
    let req = DerivedRequest::new(PolyFunctor::lie(r), a.clone(), n - 1, q_max)
        .with_method(Method::Generic);
    let direct = derived_functor(&req, budget)?;
    let mut pieces: Option<Vec<(String, DerivedResult)>> = None;
    let mut out = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        if let Some(g) = direct.value(q) {
            out.push(Cell::Exact(g.clone()));
            continue;
        }
        if pieces.is_none() {
            let mut got = Vec::new();
            for p in curdec_pieces(r)? {
                let req = DerivedRequest::new(p.functor.clone(), a.clone(), n - 1, q_max);
                got.push((p.descriptor, evaluate(&req, budget)?));
            }
            pieces = Some(got);
        }
        let ps = pieces.as_ref().unwrap();
        let vals: Option<Vec<(String, FgAbGroup)>> = ps
            .iter()
            .map(|(d, res)| res.value(q).map(|g| (d.clone(), g.clone())))
            .collect();
        out.push(match vals {
            Some(v) => Cell::GradedPieces(v),
            None => Cell::Unknown { cap: budget.cap() },
        });
    }
    Ok(out)
}

/// The E¹ page of `M(A, n)` for `1 <= r <= r_max`, `0 <= q <= q_max`. Cells
/// are exact when `Lie^r` itself fits the budget, graded pieces when only
/// the pieces do, and unknown otherwise. Differentials are not computed.
pub fn curtis_e1(
    a: &FgAbGroup,
    n: usize,
    r_max: usize,
    q_max: usize,
    budget: &Budget,
) -> Result<E1Page> {
    if n < 2 {
        return Err(Error::InvalidArgument("Moore space dimension must be at least 2".into()));
    }
    let cols: Vec<Result<Vec<Cell>>> = (1..=r_max)
        .into_par_iter()
        .map(|r| column(a, n, r, q_max, budget))
        .collect();
    let mut grid = BTreeMap::new();
    for (r, col) in (1..=r_max).zip(cols) {
        for (q, cell) in col?.into_iter().enumerate() {
            grid.insert((r, q), cell);
        }
    }
    Ok(E1Page {
        moore_group: a.clone(),
        moore_dim: n,
        r_max,
        q_max,
        grid,
    })
}
