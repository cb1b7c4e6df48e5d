//! Element-level actions of the closed-form functors.

use std::collections::BTreeMap;

use super::lie::{bracket_expansion, rewrite};
use super::words::{compositions, runs, sort_sign};
use super::{Acc, Elem, Terms};
use crate::error::Result;
use crate::zlinalg::{Int, SparseVec};

/// Expands `f(w_1) ⊗ ... ⊗ f(w_n)` into ordered words.
fn expand(word: &[u32], images: &[SparseVec]) -> Vec<(Vec<u32>, Int)> {
    let mut cur: Vec<(Vec<u32>, Int)> = vec![(Vec::with_capacity(word.len()), Int::ONE)];
    for &l in word {
        let img = &images[l as usize];
        if img.is_empty() {
            return Vec::new();
        }
        if img.len() == 1 {
            let (j, c) = &img.entries()[0];
            for (w, k) in cur.iter_mut() {
                w.push(*j);
                if !c.is_one() {
                    *k = &*k * c;
                }
            }
            continue;
        }
        let mut next = Vec::with_capacity(cur.len() * img.len());
        for (w, k) in &cur {
            for (j, c) in img.iter() {
                let mut w2 = w.clone();
                w2.push(*j);
                next.push((w2, k * c));
            }
        }
        cur = next;
    }
    cur
}

fn collect(it: impl IntoIterator<Item = (Vec<u32>, Int)>) -> Terms {
    let mut acc = Acc::default();
    for (w, c) in it {
        acc.add(w.into_boxed_slice(), c);
    }
    acc.into_terms()
}

pub(super) fn tensor(word: &[u32], images: &[SparseVec]) -> Terms {
    collect(expand(word, images))
}

pub(super) fn sym(word: &[u32], images: &[SparseVec]) -> Terms {
    collect(expand(word, images).into_iter().map(|(mut w, c)| {
        w.sort_unstable();
        (w, c)
    }))
}

pub(super) fn ext(word: &[u32], images: &[SparseVec]) -> Terms {
    collect(expand(word, images).into_iter().filter_map(|(mut w, c)| {
        sort_sign(&mut w).map(|s| (w, if s < 0 { -c } else { c }))
    }))
}

/// `Π γ_{a_j}(x_j) ↦ Π γ_{a_j}(f x_j)` with
/// `γ_a(Σ c_k y_k) = Σ_{|b|=a} Π c_k^{b_k} γ_{b_k}(y_k)` and
/// `γ_a(y) γ_b(y) = C(a+b, a) γ_{a+b}(y)`.
pub(super) fn div(word: &[u32], images: &[SparseVec]) -> Terms {
    let mut cur: Vec<(BTreeMap<u32, u32>, Int)> = vec![(BTreeMap::new(), Int::ONE)];
    for (x, a) in runs(word) {
        let img = &images[x as usize];
        if img.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::new();
        for b in compositions(a, img.len()) {
            let mut coeff = Int::ONE;
            for (k, (_, c)) in img.iter().enumerate() {
                if b[k] > 0 {
                    coeff = &coeff * &c.pow(b[k]);
                }
            }
            for (mono, k) in &cur {
                let mut m = mono.clone();
                let mut c = k * &coeff;
                for (idx, (y, _)) in img.iter().enumerate() {
                    if b[idx] == 0 {
                        continue;
                    }
                    let e = m.entry(*y).or_insert(0);
                    if *e > 0 {
                        c = &c * &Int::binomial((*e + b[idx]) as u64, b[idx] as u64);
                    }
                    *e += b[idx];
                }
                next.push((m, c));
            }
        }
        cur = next;
    }
    collect(cur.into_iter().map(|(m, c)| {
        let w: Vec<u32> = m
            .into_iter()
            .flat_map(|(y, e)| std::iter::repeat(y).take(e as usize))
            .collect();
        (w, c)
    }))
}

pub(super) fn lie(word: &[u32], images: &[SparseVec]) -> Result<Terms> {
    // order-preserving monomial relabeling keeps the bracket shape
    let mut monomial = true;
    let mut coeff = Int::ONE;
    let mut mapped = Vec::with_capacity(word.len());
    for &l in word {
        let img = &images[l as usize];
        match img.len() {
            0 => return Ok(Vec::new()),
            1 => {
                let (j, c) = &img.entries()[0];
                coeff = &coeff * c;
                mapped.push(*j);
            }
            _ => {
                monomial = false;
                break;
            }
        }
    }
    if monomial {
        let order_preserving = word.iter().zip(mapped.iter()).all(|(a, x)| {
            word.iter()
                .zip(mapped.iter())
                .all(|(b, y)| a.cmp(b) == x.cmp(y))
        });
        if order_preserving {
            return Ok(vec![(mapped.into_boxed_slice(), coeff)]);
        }
    }
    let mut tensor: BTreeMap<Vec<u32>, Int> = BTreeMap::new();
    for (w, k) in bracket_expansion(word) {
        for (x, c) in expand(&w, images) {
            let e = tensor.entry(x).or_insert(Int::ZERO);
            *e += &(&c * &Int::from(k));
        }
    }
    Ok(rewrite(tensor)?
        .into_iter()
        .map(|(w, c)| (Elem::from(w), c))
        .collect())
}
