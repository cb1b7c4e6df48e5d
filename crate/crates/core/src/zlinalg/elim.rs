//! Sparse integer elimination computing only the diagonal of a Smith form.
//!
//! Works on rows; since the elementary divisors of a matrix and of its
//! transpose agree, callers may feed either orientation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::int::Int;
use super::sparse::SparseVec;

/// Invariants of a matrix given as a list of sparse rows: the nonzero
/// diagonal entries of an equivalent diagonal matrix (not sorted, not
/// necessarily a divisibility chain). Their count is the rank.
pub fn diagonal_entries(rows: Vec<SparseVec>, ncols: usize) -> Vec<Int> {
    Elim::new(rows, ncols).run()
}

struct Elim {
    rows: Vec<SparseVec>,
    active: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    col_live: Vec<u32>,
    diag: Vec<Int>,
}

impl Elim {
    fn new(rows: Vec<SparseVec>, ncols: usize) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        let mut col_live = vec![0u32; ncols];
        let mut active = vec![false; rows.len()];
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            active[r] = true;
            for (c, _) in row.iter() {
                col_rows[*c as usize].push(r as u32);
                col_live[*c as usize] += 1;
            }
        }
        Elim {
            rows,
            active,
            col_rows,
            col_live,
            diag: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<Int> {
        self.unit_phase();
        self.general_phase();
        self.diag
    }

    fn set_row(&mut self, r: usize, new: SparseVec) {
        for (c, _) in self.rows[r].iter() {
            self.col_live[*c as usize] -= 1;
        }
        let old_cols: Vec<u32> = self.rows[r].iter().map(|e| e.0).collect();
        for (c, _) in new.iter() {
            self.col_live[*c as usize] += 1;
            if old_cols.binary_search(c).is_err() {
                self.col_rows[*c as usize].push(r as u32);
            }
        }
        if new.is_empty() {
            self.active[r] = false;
        }
        self.rows[r] = new;
    }

    fn drop_row(&mut self, r: usize) {
        self.set_row(r, SparseVec::new());
    }

    /// Active rows other than `skip` that currently have an entry in `c`.
    fn rows_in_col(&mut self, c: usize, skip: usize) -> Vec<u32> {
        let rows = &self.rows;
        let active = &self.active;
        let list = &mut self.col_rows[c];
        list.sort_unstable();
        list.dedup();
        list.retain(|&r| active[r as usize] && !rows[r as usize].get(c as u32).is_zero());
        list.iter().copied().filter(|&r| r as usize != skip).collect()
    }

    /// Eliminates column `c` from all other rows using pivot row `r`, where
    /// the pivot divides every entry of the column. Then column operations
    /// clear the pivot row, which only touch this row.
    fn eliminate(&mut self, r: usize, c: usize) {
        let p = self.rows[r].get(c as u32);
        let others = self.rows_in_col(c, r);
        let pivot = self.rows[r].clone();
        for o in others {
            let o = o as usize;
            let a = self.rows[o].get(c as u32);
            let q = a.div_exact(&p).expect("pivot divides column");
            let mut new = self.rows[o].clone();
            new.add_scaled(&pivot, &-q);
            self.set_row(o, new);
        }
        self.diag.push(p.abs());
        self.drop_row(r);
    }

    fn unit_phase(&mut self) {
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(i, r)| Reverse((r.len(), i as u32)))
            .collect();
        while let Some(Reverse((len, r))) = heap.pop() {
            let r = r as usize;
            if !self.active[r] || self.rows[r].len() != len {
                continue;
            }
            let mut best: Option<(u32, u32)> = None;
            for (c, v) in self.rows[r].iter() {
                if v.is_unit() {
                    let cnt = self.col_live[*c as usize];
                    if best.map_or(true, |(bc, _)| cnt < bc) {
                        best = Some((cnt, *c));
                    }
                }
            }
            let Some((_, c)) = best else { continue };
            let touched = self.rows_in_col(c as usize, r);
            self.eliminate(r, c as usize);
            for o in touched {
                if self.active[o as usize] {
                    heap.push(Reverse((self.rows[o as usize].len(), o)));
                }
            }
        }
    }

    fn general_phase(&mut self) {
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..self.rows.len())
            .filter(|&r| self.active[r])
            .map(|r| Reverse((self.rows[r].len(), r as u32)))
            .collect();
        while let Some(Reverse((len, r))) = heap.pop() {
            let mut r = r as usize;
            if !self.active[r] || self.rows[r].len() != len {
                continue;
            }
            let mut c = min_entry(&self.rows[r]);
            // each pass either finishes the pivot or strictly shrinks |p|
            loop {
                let p = self.rows[r].get(c);
                if p.is_unit() {
                    let touched = self.rows_in_col(c as usize, r);
                    self.eliminate(r, c as usize);
                    for o in touched {
                        if self.active[o as usize] {
                            heap.push(Reverse((self.rows[o as usize].len(), o)));
                        }
                    }
                    break;
                }
                let others = self.rows_in_col(c as usize, r);
                let pivot = self.rows[r].clone();
                let mut smallest: Option<(usize, Int)> = None;
                for o in others {
                    let o = o as usize;
                    let a = self.rows[o].get(c);
                    let q = a.div_mod_floor(&p).0;
                    let mut new = self.rows[o].clone();
                    new.add_scaled(&pivot, &-q);
                    let rem = new.get(c);
                    if !rem.is_zero() && smallest.as_ref().map_or(true, |(_, s)| rem.cmp_abs(s).is_lt()) {
                        smallest = Some((o, rem));
                    }
                    self.set_row(o, new);
                    if self.active[o] {
                        heap.push(Reverse((self.rows[o].len(), o as u32)));
                    }
                }
                if let Some((o, _)) = smallest {
                    heap.push(Reverse((self.rows[r].len(), r as u32)));
                    r = o;
                    continue;
                }
                // column c now lives only in row r; column ops reduce the row
                let mut new = SparseVec::new();
                let mut single = true;
                for (j, v) in pivot.iter() {
                    if *j == c {
                        new.push_back(*j, v.clone());
                    } else {
                        let rem = v.div_mod_floor(&p).1;
                        if !rem.is_zero() {
                            single = false;
                        }
                        new.push_back(*j, rem);
                    }
                }
                if single {
                    self.diag.push(p.abs());
                    self.drop_row(r);
                    break;
                }
                self.set_row(r, new);
                c = min_entry(&self.rows[r]);
            }
        }
    }
}

fn min_entry(row: &SparseVec) -> u32 {
    let mut best = &row.entries()[0];
    for e in row.iter() {
        if e.1.cmp_abs(&best.1).is_lt() {
            best = e;
        }
    }
    best.0
}
