use derifun::curtis::{curdec_pieces, curtis_e1, Cell};
use derifun::derived::{evaluate, DerivedRequest};
use derifun::zlinalg::{FgAbGroup, Int};
use derifun::{Budget, Error};

fn g(s: &str) -> FgAbGroup {
    s.parse().unwrap()
}

#[test]
fn decomposition_lists() {
    let names = |r| -> Vec<String> {
        curdec_pieces(r).unwrap().into_iter().map(|p| p.descriptor).collect()
    };
    assert_eq!(names(2), ["J^2"]);
    assert_eq!(names(4), ["J^2 o J^2", "J^4"]);
    assert_eq!(names(6), ["J^3 o J^2", "J^2 o J^3", "J^4 * J^2", "J^6"]);
    for r in 1..=8 {
        for p in curdec_pieces(r).unwrap() {
            assert_eq!(p.degree(), r, "{}", p.descriptor);
        }
    }
    assert!(matches!(curdec_pieces(9), Err(Error::UnsupportedWeight(9))));
}

#[test]
fn first_column_is_the_group() {
    let page = curtis_e1(&g("Z/5 + Z"), 4, 1, 6, &Budget::unlimited()).unwrap();
    for q in 0..=6 {
        let want = if q == 3 { g("Z + Z/5") } else { g("0") };
        assert_eq!(page.cell(1, q), &Cell::Exact(want));
    }
}

#[test]
fn moore_space_of_the_integers() {
    let page = curtis_e1(&g("Z"), 3, 3, 6, &Budget::unlimited()).unwrap();
    assert_eq!(page.cell(3, 5), &Cell::Exact(g("Z/3")));
}

#[test]
fn graded_pieces_when_only_the_pieces_fit() {
    // at level 7 the Lie^4 basis bound is 28^4/4 while Λ^2Λ^2 needs C(378, 2)
    let page = curtis_e1(&g("Z/3"), 2, 4, 6, &Budget::new(100_000)).unwrap();
    assert_eq!(page.cell(4, 5), &Cell::Exact(g("Z/3")));
    match page.cell(4, 6) {
        Cell::GradedPieces(ps) => {
            let order = ps
                .iter()
                .fold(Int::from(1), |acc, (_, g)| &acc * &g.order().unwrap());
            assert_eq!(order, Int::from(3));
        }
        other => panic!("expected graded pieces, got {other:?}"),
    }
    let tiny = curtis_e1(&g("Z/3"), 2, 4, 6, &Budget::new(500)).unwrap();
    assert!(matches!(tiny.cell(4, 6), Cell::Unknown { cap: 500 }));
}

/// Multiplicative Euler characteristic `Π |L_q|^{(-1)^q}` as a reduced
/// fraction (numerator, denominator).
fn euler(values: &[FgAbGroup]) -> (Int, Int) {
    let mut num = Int::from(1);
    let mut den = Int::from(1);
    for (q, v) in values.iter().enumerate() {
        let o = v.order().expect("finite");
        if q % 2 == 0 {
            num = &num * &o;
        } else {
            den = &den * &o;
        }
    }
    let d = num.gcd(&den);
    (num.div_exact(&d).unwrap(), den.div_exact(&d).unwrap())
}

#[test]
fn column_orders_match_the_pieces() {
    let b = Budget::unlimited();
    for a in ["Z/2", "Z/3", "Z/4"] {
        for r in 2..=4 {
            let q_max = 2 * r + 1;
            let page = curtis_e1(&g(a), 2, r, q_max, &b).unwrap();
            let column: Vec<FgAbGroup> = (0..=q_max)
                .map(|q| match page.cell(r, q) {
                    Cell::Exact(x) => x.clone(),
                    c => panic!("{c:?}"),
                })
                .collect();
            let mut pieces = (Int::from(1), Int::from(1));
            for p in curdec_pieces(r).unwrap() {
                let res = evaluate(&DerivedRequest::new(p.functor, g(a), 1, q_max), &b).unwrap();
                let vals: Vec<FgAbGroup> = (0..=q_max).map(|q| res.value(q).unwrap().clone()).collect();
                let (n, d) = euler(&vals);
                pieces = (&pieces.0 * &n, &pieces.1 * &d);
            }
            let gcd = pieces.0.gcd(&pieces.1);
            let pieces = (pieces.0.div_exact(&gcd).unwrap(), pieces.1.div_exact(&gcd).unwrap());
            assert_eq!(euler(&column), pieces, "A={a} r={r}");
        }
    }
}

#[test]
fn moore_dimension_must_be_at_least_two() {
    assert!(curtis_e1(&g("Z/3"), 1, 2, 2, &Budget::unlimited()).is_err());
}
