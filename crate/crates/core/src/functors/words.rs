//! Word combinatorics shared by the closed-form functors.

/// All words of length `n` over `0..r`, in lexicographic order.
pub fn all_words(r: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = vec![0u32; n];
    if n == 0 {
        return vec![Vec::new()];
    }
    if r == 0 {
        return out;
    }
    loop {
        out.push(w.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if (w[k] as usize) + 1 < r {
                w[k] += 1;
                for x in &mut w[k + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Weakly increasing words of length `n` over `0..r` (multisets).
pub fn multisets(r: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(r: u32, n: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in start..r {
            cur.push(x);
            rec(r, n, x, cur, out);
            cur.pop();
        }
    }
    rec(r as u32, n, 0, &mut cur, &mut out);
    out
}

/// Strictly increasing words of length `n` over `0..r` (subsets).
pub fn subsets(r: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(r: u32, n: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let need = (n - cur.len()) as u32;
        for x in start..r {
            if x + need > r {
                break;
            }
            cur.push(x);
            rec(r, n, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(r as u32, n, 0, &mut cur, &mut out);
    out
}

/// Lyndon words of length exactly `n` over `0..r`, in lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words(r: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if r == 0 || n == 0 {
        return out;
    }
    let r = r as u32;
    let mut w: Vec<u32> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        // extend periodically to length n
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == r - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => return out,
            Some(x) => *x += 1,
        }
    }
}

pub fn is_lyndon(w: &[u32]) -> bool {
    if w.is_empty() {
        return false;
    }
    // strictly smaller than every proper suffix
    (1..w.len()).all(|k| w[k..] > *w)
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon
/// suffix.
pub fn standard_factorization(w: &[u32]) -> (&[u32], &[u32]) {
    debug_assert!(w.len() >= 2);
    for k in 1..w.len() {
        if is_lyndon(&w[k..]) {
            return (&w[..k], &w[k..]);
        }
    }
    unreachable!("a Lyndon word of length at least 2 has a proper Lyndon suffix")
}

/// Sorts `w` in place and returns the sign of the sorting permutation, or
/// `None` if a letter repeats.
pub fn sort_sign(w: &mut [u32]) -> Option<i64> {
    let mut sign = 1i64;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for k in 1..w.len() {
        if w[k - 1] == w[k] {
            return None;
        }
    }
    Some(sign)
}

/// Distinct rearrangements of a multiset given as a sorted word, in
/// lexicographic order.
pub fn arrangements(sorted: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = sorted.to_vec();
    loop {
        out.push(w.clone());
        // next permutation
        let n = w.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && w[i - 1] >= w[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while w[j] <= w[i - 1] {
            j -= 1;
        }
        w.swap(i - 1, j);
        w[i..].reverse();
    }
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k == p.len() {
            out.push((p.clone(), sign));
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, if i == k { sign } else { -sign }, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, 1, &mut out);
    out
}

/// Run-length form of a sorted word: `(letter, multiplicity)`.
pub fn runs(sorted: &[u32]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((l, m)) if *l == x => *m += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Weak compositions of `a` into `k` parts.
pub fn compositions(a: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    if k == 0 {
        if a == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, a, &mut cur, &mut out);
    out
}
