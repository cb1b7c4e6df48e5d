//! Free Lie ring in the Lyndon basis, embedded in the tensor algebra.

use std::collections::BTreeMap;

use super::words::{is_lyndon, standard_factorization};
use crate::error::{Error, Result};
use crate::zlinalg::Int;

/// Tensor expansion of the standard bracketing `P_w` of a Lyndon word:
/// `P_a = a`, `P_w = [P_u, P_v]` for the standard factorization `w = uv`.
pub fn bracket_expansion(w: &[u32]) -> Vec<(Vec<u32>, i64)> {
    if w.len() == 1 {
        return vec![(w.to_vec(), 1)];
    }
    let (u, v) = standard_factorization(w);
    let pu = bracket_expansion(u);
    let pv = bracket_expansion(v);
    let mut acc: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (a, x) in &pu {
        for (b, y) in &pv {
            let mut ab = a.clone();
            ab.extend_from_slice(b);
            *acc.entry(ab).or_insert(0) += x * y;
            let mut ba = b.clone();
            ba.extend_from_slice(a);
            *acc.entry(ba).or_insert(0) -= x * y;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Expansion of a left-normalized bracket `[[a_1, a_2], ..., a_n]`.
pub fn left_normed_expansion(w: &[u32]) -> Vec<(Vec<u32>, i64)> {
    let mut cur: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    cur.insert(vec![w[0]], 1);
    for &a in &w[1..] {
        let mut next = BTreeMap::new();
        for (x, c) in cur {
            let mut xa = x.clone();
            xa.push(a);
            *next.entry(xa).or_insert(0) += c;
            let mut ax = vec![a];
            ax.extend_from_slice(&x);
            *next.entry(ax).or_insert(0) -= c;
        }
        cur = next;
    }
    cur.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Rewrites a tensor (word -> coefficient) in the Lyndon basis. Each `P_w`
/// has `w` as its lexicographically smallest word with coefficient one, so
/// repeatedly cancelling the smallest word is exact over the integers.
pub fn rewrite(mut tensor: BTreeMap<Vec<u32>, Int>) -> Result<Vec<(Vec<u32>, Int)>> {
    tensor.retain(|_, c| !c.is_zero());
    let mut out = Vec::new();
    while let Some((w, c)) = tensor.pop_first() {
        if !is_lyndon(&w) {
            return Err(Error::NotInLieImage);
        }
        for (x, k) in bracket_expansion(&w) {
            if x == w {
                continue;
            }
            let e = tensor.entry(x).or_insert(Int::ZERO);
            *e -= &(&c * &Int::from(k));
        }
        tensor.retain(|_, c| !c.is_zero());
        out.push((w, c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_map(v: &[(Vec<u32>, i64)]) -> BTreeMap<Vec<u32>, Int> {
        v.iter().map(|(w, c)| (w.clone(), Int::from(*c))).collect()
    }

    #[test]
    fn three_fold_bracket() {
        // [[a,b],c] = abc - bac - cab + cba
        let e = left_normed_expansion(&[0, 1, 2]);
        let expected = vec![
            (vec![0, 1, 2], 1),
            (vec![1, 0, 2], -1),
            (vec![2, 0, 1], -1),
            (vec![2, 1, 0], 1),
        ];
        assert_eq!(to_map(&e), to_map(&expected));
    }

    #[test]
    fn antisymmetry_rewrites() {
        let ba = left_normed_expansion(&[1, 0]);
        assert_eq!(rewrite(to_map(&ba)).unwrap(), vec![(vec![0, 1], Int::from(-1))]);
        assert_eq!(rewrite(to_map(&[(vec![0, 1], 1)])), Err(Error::NotInLieImage));
    }

    #[test]
    fn leading_word_is_unit() {
        for w in super::super::words::lyndon_words(3, 4) {
            let e = bracket_expansion(&w);
            assert_eq!(e[0], (w.clone(), 1));
        }
    }
}
