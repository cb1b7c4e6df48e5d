use super::int::Int;

/// Sparse integer vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct SparseVec {
    entries: Vec<(u32, Int)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: u32) -> Self {
        SparseVec {
            entries: vec![(i, Int::ONE)],
        }
    }

    /// Entries must already be sorted by index; zeros are dropped.
    pub fn from_sorted(mut entries: Vec<(u32, Int)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// Sorts, merges duplicate indices and drops zeros.
    pub fn from_unsorted(mut entries: Vec<(u32, Int)>) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, Int)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += &v,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((i, v));
                }
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(v: &[Int]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i as u32, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Int> {
        let mut out = vec![Int::ZERO; n];
        for (i, v) in &self.entries {
            out[*i as usize] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(u32, Int)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(u32, Int)> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (u32, Int)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: u32) -> Int {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn set(&mut self, i: u32, v: Int) {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => {
                if v.is_zero() {
                    self.entries.remove(p);
                } else {
                    self.entries[p].1 = v;
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    self.entries.insert(p, (i, v));
                }
            }
        }
    }

    /// Appends an entry whose index exceeds every stored index.
    pub fn push_back(&mut self, i: u32, v: Int) {
        debug_assert!(self.entries.last().map_or(true, |e| e.0 < i));
        if !v.is_zero() {
            self.entries.push((i, v));
        }
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, k: &Int) {
        if k.is_zero() || other.is_empty() {
            return;
        }
        if self.is_empty() {
            self.entries = other
                .entries
                .iter()
                .map(|(i, v)| (*i, v * k))
                .collect();
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        out.push(a.next().unwrap());
                    } else if x.0 > y.0 {
                        let (i, v) = b.next().unwrap();
                        out.push((*i, v * k));
                    } else {
                        let (i, mut v) = a.next().unwrap();
                        let (_, w) = b.next().unwrap();
                        v += &(w * k);
                        if !v.is_zero() {
                            out.push((i, v));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, v * k));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scaled(&self, k: &Int) -> SparseVec {
        let mut out = SparseVec::new();
        out.add_scaled(self, k);
        out
    }

    pub fn negate(&mut self) {
        for (_, v) in &mut self.entries {
            *v = -std::mem::take(v);
        }
    }

    pub fn shifted(&self, offset: u32) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (i + offset, v.clone()))
                .collect(),
        }
    }

    /// Reindexes through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, mut f: impl FnMut(u32) -> Option<u32>) -> SparseVec {
        SparseVec::from_unsorted(
            self.entries
                .iter()
                .filter_map(|(i, v)| f(*i).map(|j| (j, v.clone())))
                .collect(),
        )
    }

    pub fn dot(&self, other: &SparseVec) -> Int {
        let mut acc = Int::ZERO;
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < other.entries.len() {
            let (i, a) = &self.entries[p];
            let (j, b) = &other.entries[q];
            if i < j {
                p += 1;
            } else if i > j {
                q += 1;
            } else {
                acc += &(a * b);
                p += 1;
                q += 1;
            }
        }
        acc
    }
}

impl FromIterator<(u32, Int)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (u32, Int)>>(iter: T) -> Self {
        SparseVec::from_unsorted(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(e: &[(u32, i64)]) -> SparseVec {
        SparseVec::from_unsorted(e.iter().map(|(i, v)| (*i, Int::from(*v))).collect())
    }

    #[test]
    fn merge_cancels() {
        let mut a = sv(&[(0, 1), (3, 2)]);
        a.add_scaled(&sv(&[(3, 1), (5, 4)]), &Int::from(-2));
        assert_eq!(a, sv(&[(0, 1), (5, -8)]));
    }

    #[test]
    fn unsorted_duplicates() {
        assert_eq!(sv(&[(2, 1), (1, 1), (2, -1)]), sv(&[(1, 1)]));
    }
}
