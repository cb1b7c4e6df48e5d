use derifun::chain::FreeChainComplex;
use derifun::simplicial::{
    apply_functor_levelwise, dold_kan_k, homotopy_groups, normalized_functor_complex,
    normalized_functor_differentials,
};
use derifun::functors::PolyFunctor;
use derifun::zlinalg::{FgAbGroup, Int, IntMatrix};
use derifun::{Budget, Error};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Z --m--> Z` with target in degree `n`.
fn cyclic_res(m: i64, n: i64) -> FreeChainComplex {
    FreeChainComplex::two_term(n, IntMatrix::from_rows(&[[m]]))
}

fn g(s: &str) -> FgAbGroup {
    s.parse().unwrap()
}

#[test]
fn level_ranks_count_surjections() {
    for n in 0..4 {
        let x = dold_kan_k(&FreeChainComplex::concentrated(n as i64, 1), 6);
        for m in 0..=6 {
            assert_eq!(x.rank(m), binom(m, n), "n={n} m={m}");
        }
    }
}

#[test]
fn low_levels_of_a_shifted_presentation() {
    // levels 0..2 are 0, M, L + s0 M + s1 M with ∂0 = f on L
    let x = dold_kan_k(&cyclic_res(5, 1), 2);
    assert_eq!((x.rank(0), x.rank(1), x.rank(2)), (0, 1, 3));
    let l = 2; // the letter of C_2 comes last
    assert_eq!(x.face(2, 0).get(0, l), Int::from(5i64));
    assert_eq!(x.face(2, 1).get(0, l), Int::from(0i64));
    assert_eq!(x.face(2, 2).get(0, l), Int::from(0i64));
    // the two degenerate letters come from s0 and s1
    for j in 0..2 {
        let s = x.degeneracy(1, j);
        assert_eq!(s.column(0).len(), 1);
        assert!((s.column(0).entries()[0].0 as usize) < 2);
    }
}

#[test]
fn identities_hold_for_dold_kan() {
    let x = dold_kan_k(&cyclic_res(6, 2), 6);
    assert_eq!(x.identity_violations(), Vec::<String>::new());
}

#[test]
fn identities_persist_under_functors() {
    let x = dold_kan_k(&cyclic_res(2, 1), 5);
    let y = apply_functor_levelwise(&PolyFunctor::ext(2), &x, &Budget::unlimited()).unwrap();
    assert_eq!(y.identity_violations(), Vec::<String>::new());
}

#[test]
fn identity_and_tensor_square_levelwise() {
    let x = dold_kan_k(&cyclic_res(3, 1), 4);
    let b = Budget::unlimited();
    let same = apply_functor_levelwise(&PolyFunctor::identity(), &x, &b).unwrap();
    for m in 0..=4 {
        assert_eq!(same.rank(m), x.rank(m));
        if m > 0 {
            for i in 0..=m {
                assert_eq!(same.face(m, i), x.face(m, i));
            }
        }
    }
    let sq = apply_functor_levelwise(&PolyFunctor::tensor(2), &x, &b).unwrap();
    for m in 0..=4 {
        assert_eq!(sq.rank(m), x.rank(m) * x.rank(m));
    }
}

#[test]
fn levelwise_budget_is_enforced() {
    let x = dold_kan_k(&cyclic_res(3, 2), 5);
    let r = apply_functor_levelwise(&PolyFunctor::tensor(2), &x, &Budget::new(50));
    assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
}

#[test]
fn homotopy_of_small_examples() {
    let x = dold_kan_k(&cyclic_res(7, 0), 3);
    let pi = homotopy_groups(&x, 2).unwrap();
    assert_eq!(pi[&0], g("Z/7"));
    assert_eq!(pi[&1], g("0"));
    assert_eq!(pi[&2], g("0"));

    let b = Budget::unlimited();
    let ext = apply_functor_levelwise(&PolyFunctor::ext(2), &dold_kan_k(&cyclic_res(5, 0), 4), &b)
        .unwrap();
    let pi = homotopy_groups(&ext, 3).unwrap();
    assert_eq!(pi[&0], g("0"));
    assert_eq!(pi[&1], g("Z/5"));
    assert_eq!(pi[&2], g("0"));
    assert_eq!(pi[&3], g("0"));

    let div = apply_functor_levelwise(&PolyFunctor::div(2), &dold_kan_k(&cyclic_res(3, 0), 3), &b)
        .unwrap();
    assert_eq!(homotopy_groups(&div, 2).unwrap()[&0], g("Z/3"));
}

#[test]
fn truncation_must_cover_the_degree() {
    let x = dold_kan_k(&cyclic_res(7, 0), 2);
    assert!(matches!(
        homotopy_groups(&x, 2),
        Err(Error::InsufficientTruncation { needed: 3, have: 2 })
    ));
}

#[test]
fn truncation_stability() {
    let b = Budget::unlimited();
    let f = PolyFunctor::sym(2);
    let c = cyclic_res(4, 1);
    let short = apply_functor_levelwise(&f, &dold_kan_k(&c, 4), &b).unwrap();
    let long = apply_functor_levelwise(&f, &dold_kan_k(&c, 5), &b).unwrap();
    assert_eq!(homotopy_groups(&short, 3).unwrap(), {
        let mut h = homotopy_groups(&long, 4).unwrap();
        h.remove(&4);
        h
    });
}

fn sample_functors() -> Vec<PolyFunctor> {
    use derifun::functors::canonical_nat_trans;
    vec![
        PolyFunctor::identity(),
        PolyFunctor::sym(2),
        PolyFunctor::ext(2),
        PolyFunctor::div(2),
        PolyFunctor::tensor(2),
        PolyFunctor::lie(3),
        PolyFunctor::sym(3),
        PolyFunctor::schur_j(3),
        PolyFunctor::cokernel_functor(&canonical_nat_trans("sp_to_gamma", 2).unwrap()),
    ]
}

/// The three constructions of the homotopy (materialized normalized,
/// unnormalized alternating sum, and the direct nondegenerate model) agree.
#[test]
fn normalized_models_agree() {
    let b = Budget::unlimited();
    let inputs = [cyclic_res(2, 0), cyclic_res(3, 1), cyclic_res(4, 1)];
    for f in sample_functors() {
        for c in &inputs {
            let top = if f.degree() >= 3 { 4 } else { 5 };
            let direct = normalized_functor_complex(&f, c, top, &b).unwrap().homology();
            let inv = normalized_functor_differentials(&f, c, top, &b).unwrap();
            if f.is_cokernel() {
                // the materialized path needs a levelwise functor
                for i in 0..top {
                    assert_eq!(inv.homology(i), direct[&(i as i64)], "{f} {i}");
                }
                continue;
            }
            let x = apply_functor_levelwise(&f, &dold_kan_k(c, top), &b).unwrap();
            let unnorm = x.alternating_complex().homology();
            let norm = x.normalized_complex().homology();
            for i in 0..top as i64 {
                assert_eq!(norm[&i], unnorm[&i], "{f} degree {i}");
                assert_eq!(direct[&i], norm[&i], "{f} degree {i}");
                assert_eq!(inv.homology(i as usize), norm[&i], "{f} degree {i}");
            }
        }
    }
}

fn small_complex() -> impl Strategy<Value = FreeChainComplex> {
    // a tensor product of two random two-term complexes, placed in degree >= 0
    let two = (1usize..3, 1usize..3, 0i64..2).prop_flat_map(|(r, c, lo)| {
        proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
            FreeChainComplex::two_term(lo, IntMatrix::from_rows(&rows))
        })
    });
    (two.clone(), two).prop_map(|(a, b)| a.tensor(&b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dold_kan_recovers_homology(c in small_complex()) {
        let (_, hi) = c.degree_range().unwrap();
        let top = hi as usize + 1;
        let x = dold_kan_k(&c, top);
        prop_assert!(x.identity_violations().is_empty());
        let pi = homotopy_groups(&x, top - 1).unwrap();
        let h = c.homology();
        for i in 0..top {
            let expect = h.get(&(i as i64)).cloned().unwrap_or_else(FgAbGroup::zero);
            prop_assert_eq!(&pi[&i], &expect);
        }
    }
}

#[test]
fn over_budget_levels_are_left_unknown() {
    let f = PolyFunctor::compose(&PolyFunctor::ext(2), &PolyFunctor::ext(2));
    let c = cyclic_res(2, 2);
    let full = normalized_functor_differentials(&f, &c, 5, &Budget::unlimited()).unwrap();
    // level 5 of the resolution has rank C(5,2) + C(5,3) = 20, so the full
    // basis of Λ²Λ² there (13155 of it nondegenerate) trips the guard first
    let c2 = |k: usize| k * (k - 1) / 2;
    let full_basis = c2(c2(20));
    let cut = normalized_functor_differentials(&f, &c, 5, &Budget::new(5000)).unwrap();
    let breach = cut.stats.breach.unwrap();
    assert_eq!(breach.level, 5);
    assert_eq!(breach.needed, full_basis);
    assert_eq!(cut.try_homology(3), full.try_homology(3));
    assert_eq!(cut.try_homology(4), None);
    assert!(matches!(
        normalized_functor_complex(&f, &c, 5, &Budget::new(5000)),
        Err(Error::BudgetExceeded { needed, .. }) if needed == full_basis
    ));
}
