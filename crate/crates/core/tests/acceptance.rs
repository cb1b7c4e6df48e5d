//! Acceptance criteria, one line each. Expected values come from closed
//! forms written out here; the library only supplies the computed side.

use std::process::ExitCode;
use std::time::Instant;

use derifun::curtis::{curtis_e1, Cell};
use derifun::derived::{derham_homology, derived_functor, fast_derived, DeRham, DerivedRequest, Method};
use derifun::functors::PolyFunctor;
use derifun::suites::{properties, DEFAULT_SEED};
use derifun::zlinalg::{FgAbGroup, Int};
use derifun::Budget;

/// A direct sum of cyclic groups; `0` stands for `Z`.
type Cyc = Vec<u64>;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn group(c: &[u64]) -> FgAbGroup {
    let v: Vec<i64> = c.iter().map(|&x| x as i64).collect();
    FgAbGroup::from_cyclic_list(&v)
}

fn tensor(a: &[u64], b: &[u64]) -> Cyc {
    a.iter().flat_map(|&x| b.iter().map(move |&y| gcd(x, y))).collect()
}

fn tor(a: &[u64], b: &[u64]) -> Cyc {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| if x == 0 || y == 0 { 1 } else { gcd(x, y) }))
        .collect()
}

fn sum(parts: &[Cyc]) -> Cyc {
    parts.concat()
}

/// Pairs `i < j` of summands, combined by `f`.
fn pairs(a: &[u64], f: fn(&[u64], &[u64]) -> Cyc) -> Cyc {
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            out.extend(f(&a[i..=i], &a[j..=j]));
        }
    }
    out
}

/// `Γ_k(Z/m) = Z/(m (k, m^∞))`, `Γ_k(Z) = Z`.
fn gamma_cyclic(k: usize, m: u64) -> u64 {
    if m == 0 || k == 0 {
        return 0;
    }
    let mut part = 1;
    let mut rest = k as u64;
    loop {
        let g = gcd(rest, m);
        if g == 1 {
            break;
        }
        part *= g;
        rest /= g;
    }
    m * part
}

/// `Γ_k` of a sum: `Γ_k(B ⊕ C) = ⊕_j Γ_j B ⊗ Γ_{k-j} C`.
fn gamma(k: usize, a: &[u64]) -> Cyc {
    match a.split_first() {
        None => {
            if k == 0 {
                vec![0]
            } else {
                vec![]
            }
        }
        Some((&c, rest)) => (0..=k)
            .flat_map(|j| tensor(&[gamma_cyclic(j, c)], &gamma(k - j, rest)))
            .collect(),
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Quadratic pieces by the cross-effect formulas `F(B ⊕ C) = F B ⊕ F C ⊕ B ⊗ C`,
/// whose derived version adds `Tor(B, C)` one degree up.
struct Pieces {
    sym2: Cyc,
    s2: Cyc,
    ext2: Cyc,
    omega2: Cyc,
    div2: Cyc,
    r2: Cyc,
    mod2: Cyc,
    tor2: Cyc,
}

fn pieces(a: &[u64]) -> Pieces {
    let two = [2u64];
    Pieces {
        sym2: sum(&[a.to_vec(), pairs(a, tensor)]),
        s2: pairs(a, tor),
        ext2: pairs(a, tensor),
        omega2: sum(&[a.iter().map(|&m| if m == 0 { 1 } else { m }).collect(), pairs(a, tor)]),
        div2: sum(&[a.iter().map(|&m| gamma_cyclic(2, m)).collect(), pairs(a, tensor)]),
        r2: sum(&[tor(a, &two), pairs(a, tor)]),
        mod2: tensor(a, &two),
        tor2: tor(a, &two),
    }
}

#[derive(Clone, Copy, Debug)]
enum Q {
    ModTwo,
    TorTwo,
    Sym2,
    S2,
    Ext2,
    Div2,
    SmallLambda,
    R2,
    Omega2,
}

/// Nonzero entries of `L_i F(A, n)` for `n <= 3`, indexed `[n]` as `(i, entry)`.
fn table(f: &str) -> [Vec<(usize, Q)>; 4] {
    use Q::*;
    match f {
        "SP^2" => [
            vec![(0, Sym2), (1, S2)],
            vec![(2, Ext2), (3, Omega2)],
            vec![(4, Div2), (5, R2)],
            vec![(5, ModTwo), (6, SmallLambda), (7, Omega2)],
        ],
        "L^2" => [
            vec![(0, Ext2), (1, Omega2)],
            vec![(2, Div2), (3, R2)],
            vec![(3, ModTwo), (4, SmallLambda), (5, Omega2)],
            vec![(4, ModTwo), (5, TorTwo), (6, Div2), (7, R2)],
        ],
        "G^2" => [
            vec![(0, Div2), (1, R2)],
            vec![(1, ModTwo), (2, SmallLambda), (3, Omega2)],
            vec![(2, ModTwo), (3, TorTwo), (4, Div2), (5, R2)],
            vec![(3, ModTwo), (4, TorTwo), (5, ModTwo), (6, SmallLambda), (7, Omega2)],
        ],
        _ => unreachable!(),
    }
}

struct Outcome {
    ok: bool,
    detail: String,
}

/// Collects failures for one criterion.
#[derive(Default)]
struct Log {
    checked: usize,
    failures: Vec<String>,
}

impl Log {
    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn eq(&mut self, what: &str, got: Option<&FgAbGroup>, want: &FgAbGroup) {
        self.expect(got == Some(want), || match got {
            Some(g) => format!("{what} = {g}, want {want}"),
            None => format!("{what} unknown, want {want}"),
        });
    }

    fn outcome(self) -> Outcome {
        let ok = self.failures.is_empty() && self.checked > 0;
        let detail = if ok {
            format!("{} values", self.checked)
        } else {
            format!("{} of {} wrong: {}", self.failures.len(), self.checked, self.failures.join("; "))
        };
        Outcome { ok, detail }
    }
}

fn budget() -> Budget {
    Budget::default()
}

fn generic(f: &PolyFunctor, a: &FgAbGroup, n: usize, i_max: usize) -> Vec<Option<FgAbGroup>> {
    let req = DerivedRequest::new(f.clone(), a.clone(), n, i_max).with_method(Method::Generic);
    let r = derived_functor(&req, &budget()).expect("generic path");
    (0..=i_max).map(|i| r.value(i).cloned()).collect()
}

fn fast(f: &PolyFunctor, a: &FgAbGroup, n: usize, i_max: usize) -> Vec<Option<FgAbGroup>> {
    let req = DerivedRequest::new(f.clone(), a.clone(), n, i_max).with_method(Method::Decalage);
    let r = fast_derived(&req, &budget()).expect("decalage path");
    (0..=i_max).map(|i| r.value(i).cloned()).collect()
}

fn order_of(g: &FgAbGroup) -> Option<Int> {
    g.order()
}

fn torsion_order(g: &FgAbGroup) -> Int {
    g.torsion().iter().fold(Int::from(1), |a, t| &a * t)
}

fn divided_powers() -> Outcome {
    let mut log = Log::default();
    for r in 1..=5 {
        for n in 1..=12u64 {
            let got = generic(&PolyFunctor::div(r), &group(&[n]), 0, 0);
            log.eq(&format!("G^{r}(Z/{n})"), got[0].as_ref(), &group(&[gamma_cyclic(r, n)]));
        }
    }
    log.outcome()
}

fn quadratic() -> Outcome {
    let mut log = Log::default();
    let groups: [(&str, Cyc); 5] = [
        ("Z/2", vec![2]),
        ("Z/3", vec![3]),
        ("Z/4", vec![4]),
        ("Z^2", vec![0, 0]),
        ("Z + Z/2", vec![0, 2]),
    ];
    for (name, a) in &groups {
        let g = group(a);
        let p = pieces(a);
        // the order-only entries, computed on their own
        let l1_ext = generic(&PolyFunctor::ext(2), &g, 0, 1)[1].clone().unwrap();
        let l1_div = generic(&PolyFunctor::div(2), &g, 0, 1)[1].clone().unwrap();
        let small_lambda = generic(&PolyFunctor::ext(2), &g, 0, 0)[0]
            .clone()
            .unwrap()
            .direct_sum(&g.tor(&FgAbGroup::cyclic(2)));
        log.eq(&format!("L_1 L^2({name})"), Some(&l1_ext), &group(&p.omega2));
        log.eq(&format!("L_1 G^2({name})"), Some(&l1_div), &group(&p.r2));
        for (fname, f) in [
            ("SP^2", PolyFunctor::sym(2)),
            ("L^2", PolyFunctor::ext(2)),
            ("G^2", PolyFunctor::div(2)),
        ] {
            let rows = table(fname);
            for (n, row) in rows.iter().enumerate() {
                let paths = [("generic", generic(&f, &g, n, 8)), ("decalage", fast(&f, &g, n, 8))];
                for (path, vals) in &paths {
                    for (i, got) in vals.iter().enumerate() {
                        let what = format!("L_{i} {fname}({name}, {n}) {path}");
                        let Some(&(_, e)) = row.iter().find(|(j, _)| *j == i) else {
                            log.eq(&what, got.as_ref(), &FgAbGroup::zero());
                            continue;
                        };
                        let by_order = match e {
                            Q::ModTwo => Err(group(&p.mod2)),
                            Q::TorTwo => Err(group(&p.tor2)),
                            Q::Sym2 => Err(group(&p.sym2)),
                            Q::S2 => Err(group(&p.s2)),
                            Q::Ext2 => Err(group(&p.ext2)),
                            Q::Div2 => Err(group(&p.div2)),
                            Q::SmallLambda => Ok(&small_lambda),
                            Q::R2 => Ok(&l1_div),
                            Q::Omega2 => Ok(&l1_ext),
                        };
                        match by_order {
                            Err(want) => log.eq(&what, got.as_ref(), &want),
                            Ok(want) => log.expect(
                                got.as_ref().is_some_and(|g| {
                                    g.rank() == want.rank() && torsion_order(g) == torsion_order(want)
                                }),
                                || format!("{what} = {got:?}, want the order of {want}"),
                            ),
                        }
                    }
                }
            }
        }
    }
    log.outcome()
}

fn cubic_shift_three() -> Outcome {
    let mut log = Log::default();
    for m in [2u64, 3, 9] {
        let a = [m];
        let vals = fast(&PolyFunctor::sym(3), &group(&a), 3, 8);
        log.eq(&format!("L_7 SP^3(Z/{m}, 3)"), vals[7].as_ref(), &group(&tensor(&a, &[3])));
        let want = sum(&[tensor(&tensor(&a, &a), &[2]), tor(&a, &[3])]);
        log.eq(&format!("L_8 SP^3(Z/{m}, 3)"), vals[8].as_ref(), &group(&want));
    }
    log.outcome()
}

fn cyclic_exterior() -> Outcome {
    let mut log = Log::default();
    for n in 1..=4 {
        for m in [2u64, 3, 4, 6] {
            let vals = generic(&PolyFunctor::ext(n), &group(&[m]), 0, n + 2);
            for (i, v) in vals.iter().enumerate() {
                let want = if i == n - 1 { group(&[m]) } else { FgAbGroup::zero() };
                log.eq(&format!("L_{i} L^{n}(Z/{m})"), v.as_ref(), &want);
            }
        }
    }
    log.outcome()
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).all(|d| n % d != 0)
}

fn dual_de_rham() -> Outcome {
    let mut log = Log::default();
    for r in 1..=3usize {
        let a: Cyc = vec![0; r];
        let modp = |p: u64| tensor(&a, &[p]);
        let elem = |p: u64, k: usize| vec![p; k];
        let lie3_mod2 = elem(2, (r * r * r - r) / 3);
        let rows: [(usize, [Cyc; 3]); 6] = [
            (2, [modp(2), vec![], vec![]]),
            (3, [modp(3), vec![], vec![]]),
            (4, [gamma(2, &modp(2)), elem(2, binom(r, 2)), vec![]]),
            (5, [modp(5), vec![], vec![]]),
            (
                6,
                [
                    sum(&[gamma(2, &modp(3)), gamma(3, &modp(2))]),
                    sum(&[elem(3, binom(r, 2)), lie3_mod2]),
                    elem(2, binom(r, 3)),
                ],
            ),
            (7, [modp(7), vec![], vec![]]),
        ];
        for (n, row) in &rows {
            let h = derham_homology(*n, r, DeRham::C);
            for (i, want) in row.iter().enumerate().chain([(3, &vec![])]) {
                let got = h.get(&i).cloned().unwrap_or_else(FgAbGroup::zero);
                log.eq(&format!("H_{i} C^{n}(Z^{r})"), Some(&got), &group(want));
            }
        }
        for n in 1..=7 {
            let h = derham_homology(n, r, DeRham::C);
            let want: Cyc = (2..=n)
                .filter(|&p| is_prime(p) && n % p == 0)
                .flat_map(|p| gamma(n / p, &modp(p as u64)))
                .collect();
            log.eq(&format!("H_0 C^{n}(Z^{r})"), h.get(&0), &group(&want));
            if is_prime(n) {
                for i in 1..=n {
                    log.eq(&format!("H_{i} C^{n}(Z^{r})"), h.get(&i), &FgAbGroup::zero());
                }
            }
        }
    }
    log.outcome()
}

fn lie_cubic() -> Outcome {
    let mut log = Log::default();
    let lie3 = PolyFunctor::lie(3);
    for m in 1..=6u64 {
        for (i, v) in generic(&lie3, &group(&[m]), 0, 3).iter().enumerate() {
            let want = if i == 1 { group(&[m]) } else { FgAbGroup::zero() };
            log.eq(&format!("L_{i} Lie^3(Z/{m})"), v.as_ref(), &want);
        }
    }
    for (i, v) in generic(&lie3, &group(&[0]), 2, 6).iter().enumerate() {
        let want = if i == 5 { group(&[3]) } else { FgAbGroup::zero() };
        log.eq(&format!("L_{i} Lie^3(Z, 2)"), v.as_ref(), &want);
    }
    log.eq("L_5 Lie^3(Z/3, 2)", generic(&lie3, &group(&[3]), 2, 5)[5].as_ref(), &group(&[3]));
    log.eq("L_5 Lie^3(Z/5, 2)", generic(&lie3, &group(&[5]), 2, 5)[5].as_ref(), &FgAbGroup::zero());
    log.outcome()
}

fn y3() -> Outcome {
    let mut log = Log::default();
    let vals = generic(&PolyFunctor::schur_y(3), &group(&[3]), 0, 2);
    log.eq("L_1 Y^3(Z/3)", vals[1].as_ref(), &group(&[9]));
    log.eq("L_2 Y^3(Z/3)", vals[2].as_ref(), &group(&[3]));
    log.outcome()
}

fn quartic() -> (Outcome, Outcome) {
    let mut log = Log::default();
    let f = PolyFunctor::compose(&PolyFunctor::ext(2), &PolyFunctor::ext(2));
    let z2 = group(&[2]);
    let order_is = |log: &mut Log, what: &str, got: Option<&FgAbGroup>, want: i64| {
        log.expect(got.and_then(order_of) == Some(Int::from(want)), || match got {
            Some(g) => format!("{what} = {g} (order {}), want order {want}", order_of(g).unwrap()),
            None => format!("{what} unknown, want order {want}"),
        })
    };
    let shift2 = generic(&f, &z2, 2, 6);
    log.eq("L_4 (L^2 o L^2)(Z/2, 2)", shift2[4].as_ref(), &z2);
    order_is(&mut log, "L_5 (L^2 o L^2)(Z/2, 2)", shift2[5].as_ref(), 4);
    let shift0 = generic(&f, &z2, 0, 3);
    order_is(&mut log, "L_2 (L^2 o L^2)(Z/2, 0)", shift0[2].as_ref(), 4);
    order_is(&mut log, "L_3 (L^2 o L^2)(Z/2, 0)", shift0[3].as_ref(), 4);
    let mut stretch = Log::default();
    order_is(&mut stretch, "L_6 (L^2 o L^2)(Z/2, 2)", shift2[6].as_ref(), 16);
    (log.outcome(), stretch.outcome())
}

fn curtis_table() -> Outcome {
    let mut log = Log::default();
    let nonzero = [((1, 1), 3), ((2, 2), 3), ((3, 4), 9), ((3, 5), 3), ((4, 5), 3), ((4, 6), 3)];
    let page = curtis_e1(&group(&[3]), 2, 4, 6, &budget()).expect("E1 page");
    for r in 1..=4 {
        for q in 0..=6 {
            let want = nonzero
                .iter()
                .find(|(k, _)| *k == (r, q))
                .map_or_else(FgAbGroup::zero, |(_, m)| group(&[*m]));
            let what = format!("E1[{r},{q}]");
            match page.cell(r, q) {
                Cell::Exact(g) => log.eq(&what, Some(g), &want),
                c => log.expect(false, || format!("{what} is {}", c.render())),
            }
        }
    }
    log.outcome()
}

fn property_suite() -> Outcome {
    let checks = properties(DEFAULT_SEED, &budget());
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    Outcome {
        ok: failed.is_empty() && !checks.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks, seed {DEFAULT_SEED}", checks.len())
        } else {
            failed.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("divided powers of cyclic groups", Box::new(divided_powers)),
        ("quadratic tables by both paths", Box::new(quadratic)),
        ("SP^3 at shift 3", Box::new(cubic_shift_three)),
        ("exterior powers of cyclic groups", Box::new(cyclic_exterior)),
        ("dual de Rham homology", Box::new(dual_de_rham)),
        ("Lie^3 values", Box::new(lie_cubic)),
        ("Y^3 of Z/3", Box::new(y3)),
    ];
    let mut all_ok = true;
    let report = |k: usize, name: &str, o: &Outcome, secs: f64| {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {k:>2}: {tag}  {name} ({:.1}s): {}", secs, o.detail);
    };
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        all_ok &= o.ok;
        report(k + 1, name, &o, t.elapsed().as_secs_f64());
    }
    let t = Instant::now();
    let (gating, stretch) = quartic();
    let secs = t.elapsed().as_secs_f64();
    all_ok &= gating.ok;
    report(8, "L^2 o L^2 of Z/2", &gating, secs);
    println!(
        "criterion  8 stretch (non-gating): {}  L_6 at shift 2: {}",
        if stretch.ok { "PASS" } else { "FAIL" },
        stretch.detail
    );
    for (k, name, run) in [
        (9, "E1 page of M(Z/3, 2)", curtis_table as fn() -> Outcome),
        (10, "property suite", property_suite),
    ] {
        let t = Instant::now();
        let o = run();
        all_ok &= o.ok;
        report(k, name, &o, t.elapsed().as_secs_f64());
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
