//! Functors given degreewise as sublattices of an ambient functor: kernels
//! of natural transformations and the super-Lie functors.
//!
//! A weight-homogeneous subfunctor is determined by its lattices at the
//! weight patterns: weights with letters `0..k` all occurring. The lattice
//! at any other weight is the relabeled pattern lattice.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::words::multisets;
use super::{Acc, Elem, Kind, PolyFunctor, Terms};
use crate::error::{Error, Result};
use crate::zlinalg::{Int, Lattice, SparseVec};

pub(crate) struct SuperLieData {
    /// Super-Lie functors of degrees `1..n`.
    pub lower: Vec<PolyFunctor>,
    pub ambient: PolyFunctor,
}

pub(crate) struct Pattern {
    ambient_elems: Vec<Elem>,
    index: HashMap<Elem, u32>,
    lattice: Lattice,
    basis: Vec<SparseVec>,
}

fn ambient(f: &PolyFunctor) -> PolyFunctor {
    match f.kind() {
        Kind::Kernel(t) => t.source().clone(),
        Kind::SuperLie(_, d) => d.ambient.clone(),
        _ => unreachable!("not a subfunctor"),
    }
}

/// Splits a sorted weight into its pattern and its distinct letters.
fn pattern_of(weight: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut letters: Vec<u32> = Vec::new();
    let mut pat = Vec::with_capacity(weight.len());
    for &l in weight {
        if letters.last() != Some(&l) {
            letters.push(l);
        }
        pat.push(letters.len() as u32 - 1);
    }
    (pat, letters)
}

fn is_submultiset(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    // returns b \ a when a ⊂ b (both sorted)
    let mut rest = Vec::with_capacity(b.len());
    let mut i = 0;
    for &x in b {
        if i < a.len() && a[i] == x {
            i += 1;
        } else {
            rest.push(x);
        }
    }
    if i == a.len() {
        Some(rest)
    } else {
        None
    }
}

fn get_pattern(f: &PolyFunctor, pat: &[u32]) -> Result<Arc<Pattern>> {
    if let Some(p) = f.0.patterns.read().unwrap().get(pat) {
        return Ok(p.clone());
    }
    let p = Arc::new(compute_pattern(f, pat)?);
    let mut w = f.0.patterns.write().unwrap();
    Ok(w.entry(pat.into()).or_insert(p).clone())
}

fn compute_pattern(f: &PolyFunctor, pat: &[u32]) -> Result<Pattern> {
    let k = pat.last().map_or(0, |&x| x as usize + 1);
    let amb = ambient(f);
    let ab = amb.basis(k)?;
    let ambient_elems: Vec<Elem> = (0..ab.len())
        .filter(|&i| ab.weight(i) == pat)
        .map(|i| Elem::from(ab.elem(i)))
        .collect();
    let index: HashMap<Elem, u32> = ambient_elems
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i as u32))
        .collect();
    let n = ambient_elems.len();
    let to_local = |t: &Terms| -> SparseVec {
        SparseVec::from_unsorted(
            t.iter()
                .map(|(e, c)| (*index.get(e).expect("element of the pattern weight"), c.clone()))
                .collect(),
        )
    };
    let lattice = match f.kind() {
        Kind::Kernel(t) => {
            let mut tgt_index: HashMap<Elem, u32> = HashMap::new();
            let mut images = Vec::with_capacity(n);
            for e in &ambient_elems {
                let terms = t.eval(k, e)?;
                let v: Vec<(u32, Int)> = terms
                    .into_iter()
                    .map(|(x, c)| {
                        let len = tgt_index.len() as u32;
                        (*tgt_index.entry(x).or_insert(len), c)
                    })
                    .collect();
                images.push(SparseVec::from_unsorted(v));
            }
            let image = Lattice::from_generators(tgt_index.len(), images);
            Lattice::from_generators(n, image.relations().to_vec())
        }
        Kind::SuperLie(deg, data) => {
            let deg = *deg;
            let mut gens: Vec<SparseVec> = Vec::new();
            if deg == 1 {
                gens.push(SparseVec::unit(0));
            }
            for i in 1..=deg / 2 {
                let j = deg - i;
                let fx = &data.lower[i - 1];
                let fy = &data.lower[j - 1];
                let bx = fx.basis(k)?;
                let by = fy.basis(k)?;
                let mut by_weight: HashMap<&[u32], Vec<usize>> = HashMap::new();
                for y in 0..by.len() {
                    by_weight.entry(by.weight(y)).or_default().push(y);
                }
                let sign = if (i * j) % 2 == 0 { -1 } else { 1 };
                for x in 0..bx.len() {
                    let Some(rest) = is_submultiset(bx.weight(x), pat) else {
                        continue;
                    };
                    let Some(ys) = by_weight.get(&rest[..]) else {
                        continue;
                    };
                    let zx = ambient_vector(fx, k, bx.elem(x))?;
                    for &y in ys {
                        let zy = ambient_vector(fy, k, by.elem(y))?;
                        // {x,y} = x⊗y - (-1)^{|x||y|} y⊗x
                        let mut acc = Acc::default();
                        for (a, c) in &zx {
                            for (b, d) in &zy {
                                let cd = c * d;
                                acc.add(concat(a, b), cd.clone());
                                acc.add(concat(b, a), if sign == 1 { cd } else { -cd });
                            }
                        }
                        gens.push(to_local(&acc.into_terms()));
                    }
                }
                if i == j && i % 2 == 1 {
                    // squares of odd-degree elements
                    for x in 0..bx.len() {
                        let w = bx.weight(x);
                        let mut ww: Vec<u32> = w.iter().chain(w.iter()).copied().collect();
                        ww.sort_unstable();
                        if ww != pat {
                            continue;
                        }
                        let zx = ambient_vector(fx, k, bx.elem(x))?;
                        let mut acc = Acc::default();
                        for (a, c) in &zx {
                            for (b, d) in &zx {
                                acc.add(concat(a, b), c * d);
                            }
                        }
                        gens.push(to_local(&acc.into_terms()));
                    }
                }
            }
            Lattice::from_generators(n, gens)
        }
        _ => unreachable!(),
    };
    let basis = lattice.basis();
    Ok(Pattern {
        ambient_elems,
        index,
        lattice,
        basis,
    })
}

fn concat(a: &[u32], b: &[u32]) -> Elem {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v.into_boxed_slice()
}

pub(crate) fn generate(f: &PolyFunctor, r: usize) -> Result<Vec<(Elem, Box<[u32]>)>> {
    let weights: Vec<Vec<u32>> = match f.kind() {
        Kind::SuperLie(n, _) => multisets(r, *n),
        _ => {
            let ab = ambient(f).basis(r)?;
            let mut ws: Vec<Vec<u32>> = (0..ab.len()).map(|i| ab.weight(i).to_vec()).collect();
            ws.sort_unstable();
            ws.dedup();
            ws
        }
    };
    let mut out = Vec::new();
    for w in weights {
        let (pat, _) = pattern_of(&w);
        let p = get_pattern(f, &pat)?;
        for idx in 0..p.basis.len() {
            let mut e = w.clone();
            e.push(idx as u32);
            out.push((e.into_boxed_slice(), w.clone().into_boxed_slice()));
        }
    }
    Ok(out)
}

/// The element `[W.., idx]` as a combination of ambient basis elements of
/// rank `r`.
pub(crate) fn ambient_vector(f: &PolyFunctor, r: usize, elem: &[u32]) -> Result<Terms> {
    let (w, idx) = elem.split_at(elem.len() - 1);
    let (pat, letters) = pattern_of(w);
    let p = get_pattern(f, &pat)?;
    let v = &p.basis[idx[0] as usize];
    let images: Vec<SparseVec> = letters.iter().map(|&l| SparseVec::unit(l)).collect();
    let amb = ambient(f);
    let elems: Vec<&[u32]> = v.iter().map(|(i, _)| &p.ambient_elems[*i as usize][..]).collect();
    let imgs = amb.apply_many(letters.len(), r, &images, &elems)?;
    let mut acc = Acc::default();
    for ((_, c), t) in v.iter().zip(&imgs) {
        acc.add_terms(t, c);
    }
    Ok(acc.into_terms())
}

pub(crate) fn apply_many(
    f: &PolyFunctor,
    _src: usize,
    tgt: usize,
    images: &[SparseVec],
    elems: &[&[u32]],
) -> Result<Vec<Terms>> {
    let amb = ambient(f);
    let at = amb.basis(tgt)?;
    let mut out = Vec::with_capacity(elems.len());
    for elem in elems {
        let (w, idx) = elem.split_at(elem.len() - 1);
        let (pat, letters) = pattern_of(w);
        let p = get_pattern(f, &pat)?;
        let v = &p.basis[idx[0] as usize];
        let pimages: Vec<SparseVec> = letters.iter().map(|&l| images[l as usize].clone()).collect();
        let aelems: Vec<&[u32]> = v.iter().map(|(i, _)| &p.ambient_elems[*i as usize][..]).collect();
        let imgs = amb.apply_many(letters.len(), tgt, &pimages, &aelems)?;
        let mut acc = Acc::default();
        for ((_, c), t) in v.iter().zip(&imgs) {
            acc.add_terms(t, c);
        }
        // split the image by weight and solve in each pattern lattice
        let mut groups: BTreeMap<&[u32], Terms> = BTreeMap::new();
        for (e, c) in acc.into_terms() {
            let i = at.index_of(&e).expect("ambient basis element");
            groups.entry(at.weight(i)).or_default().push((e, c));
        }
        let mut res: Terms = Vec::new();
        for (w2, terms) in groups {
            let (pat2, letters2) = pattern_of(w2);
            let p2 = get_pattern(f, &pat2)?;
            let mut rel = vec![SparseVec::new(); tgt];
            for (i, &l) in letters2.iter().enumerate() {
                rel[l as usize] = SparseVec::unit(i as u32);
            }
            let es: Vec<&[u32]> = terms.iter().map(|(e, _)| &e[..]).collect();
            let local = amb.apply_many(tgt, letters2.len(), &rel, &es)?;
            let mut coords = Vec::new();
            for ((_, c), t) in terms.iter().zip(&local) {
                for (e, d) in t {
                    let j = *p2.index.get(e).ok_or_else(|| {
                        Error::InternalLatticeError(format!("{e:?} outside the pattern of {f}"))
                    })?;
                    coords.push((j, c * d));
                }
            }
            let x = p2
                .lattice
                .solve_in_basis(&SparseVec::from_unsorted(coords))
                .map_err(|_| {
                    Error::InternalLatticeError(format!("image not in the lattice of {f}"))
                })?;
            for (j, c) in x.iter() {
                let mut e = w2.to_vec();
                e.push(*j);
                res.push((e.into_boxed_slice(), c.clone()));
            }
        }
        res.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out.push(res);
    }
    Ok(out)
}
