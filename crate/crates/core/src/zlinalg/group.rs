use std::fmt;
use std::str::FromStr;

use super::int::Int;
use crate::error::Error;

/// Finitely generated abelian group `Z^rank + Z/d_1 + ... + Z/d_k` with
/// `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<Int>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        FgAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(m: i64) -> Self {
        if m == 0 {
            FgAbGroup::free(1)
        } else {
            FgAbGroup::from_orders(0, [Int::from(m)])
        }
    }

    /// Accepts any list of cyclic orders (units are discarded, zeros count
    /// as free summands) and brings it into invariant factor form.
    pub fn from_orders(rank: usize, orders: impl IntoIterator<Item = Int>) -> Self {
        let mut rank = rank;
        let mut primes: Vec<(Int, Vec<Int>)> = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                rank += 1;
                continue;
            }
            if d.is_one() {
                continue;
            }
            for (p, e) in factor(&d) {
                let pe = p.pow(e);
                match primes.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(pe),
                    None => primes.push((p, vec![pe])),
                }
            }
        }
        // invariant factors from elementary divisors
        let len = primes.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut torsion = vec![Int::ONE; len];
        for (_, mut v) in primes {
            v.sort();
            let off = len - v.len();
            for (k, x) in v.into_iter().enumerate() {
                torsion[off + k] = &torsion[off + k] * &x;
            }
        }
        FgAbGroup { rank, torsion }
    }

    pub fn from_cyclic_list(list: &[i64]) -> Self {
        FgAbGroup::from_orders(0, list.iter().map(|&d| Int::from(d)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of a finite group, `None` when there is a free part.
    pub fn order(&self) -> Option<Int> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(Int::ONE, |a, b| &a * b))
    }

    /// All cyclic summands, `0` standing for `Z`.
    pub fn cyclic_orders(&self) -> Vec<Int> {
        let mut v = vec![Int::ZERO; self.rank];
        v.extend(self.torsion.iter().cloned());
        v
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::from_orders(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn sum_all<'a>(gs: impl IntoIterator<Item = &'a FgAbGroup>) -> FgAbGroup {
        gs.into_iter()
            .fold(FgAbGroup::zero(), |a, b| a.direct_sum(b))
    }

    pub fn tensor(&self, other: &FgAbGroup) -> FgAbGroup {
        let a = self.cyclic_orders();
        let b = other.cyclic_orders();
        let mut rank = 0;
        let mut orders = Vec::new();
        for x in &a {
            for y in &b {
                match (x.is_zero(), y.is_zero()) {
                    (true, true) => rank += 1,
                    (true, false) => orders.push(y.clone()),
                    (false, true) => orders.push(x.clone()),
                    (false, false) => orders.push(x.gcd(y)),
                }
            }
        }
        FgAbGroup::from_orders(rank, orders)
    }

    pub fn tor(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut orders = Vec::new();
        for x in &self.torsion {
            for y in &other.torsion {
                orders.push(x.gcd(y));
            }
        }
        FgAbGroup::from_orders(0, orders)
    }

    /// `A ⊗ Z/m`.
    pub fn mod_m(&self, m: i64) -> FgAbGroup {
        self.tensor(&FgAbGroup::cyclic(m))
    }

    pub fn power(&self, k: usize) -> FgAbGroup {
        let mut out = FgAbGroup::zero();
        for _ in 0..k {
            out = out.direct_sum(self);
        }
        out
    }

    pub fn is_p_group(&self, p: i64) -> bool {
        let p = Int::from(p);
        self.rank == 0
            && self.torsion.iter().all(|d| {
                let mut d = d.clone();
                while let Some(q) = d.div_exact(&p) {
                    d = q;
                }
                d.is_one()
            })
    }
}

/// Trial division; only used on cyclic orders, which stay small in practice.
fn factor(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = Int::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while let Some(q) = n.div_exact(&p) {
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p = &p + &Int::ONE;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for FgAbGroup {
    type Err = Error;

    /// Parses `0`, `Z`, `Z^k`, `Z/m` joined by `+`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut rank = 0;
        let mut orders = Vec::new();
        let mut pos = 0;
        for part in s.split('+') {
            let start = pos + (part.len() - part.trim_start().len());
            pos += part.len() + 1;
            let t = part.trim();
            let err = |msg: &str| Error::ParseError {
                pos: start,
                msg: msg.to_string(),
            };
            if t == "0" {
                continue;
            }
            let rest = t.strip_prefix('Z').ok_or_else(|| err("expected `Z`"))?;
            let rest = rest.trim_start();
            if rest.is_empty() {
                rank += 1;
            } else if let Some(k) = rest.strip_prefix('^') {
                let k: usize = k.trim().parse().map_err(|_| err("bad exponent"))?;
                rank += k;
            } else if let Some(m) = rest.strip_prefix('/') {
                let m: Int = m.trim().parse().map_err(|_| err("bad modulus"))?;
                if m.is_zero() || m.is_negative() {
                    return Err(err("modulus must be positive"));
                }
                orders.push(m);
            } else {
                return Err(err("unexpected characters"));
            }
        }
        Ok(FgAbGroup::from_orders(rank, orders))
    }
}
