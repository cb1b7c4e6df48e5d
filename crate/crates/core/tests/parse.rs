use derifun::parse::{parse_functor, parse_group};
use derifun::zlinalg::Int;
use derifun::Error;

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn group_examples() {
    let g = parse_group("Z/6").unwrap();
    assert_eq!((g.rank(), g.torsion()), (0, &ints(&[6])[..]));
    let g = parse_group("Z^2 + Z/2 + Z/8").unwrap();
    assert_eq!((g.rank(), g.torsion()), (2, &ints(&[2, 8])[..]));
    // Smith form of diag(4, 6) is diag(2, 12)
    let g = parse_group("Z/4 + Z/6").unwrap();
    assert_eq!(g.torsion(), &ints(&[2, 12])[..]);
    assert!(matches!(parse_group("Z/"), Err(Error::ParseError { .. })));
}

#[test]
fn group_printing_is_a_fixed_point() {
    for s in ["0", "Z", "Z^3", "Z/6", "Z/4 + Z/6", "Z + Z/2 + Z/3", "Z^2 + Z/2 + Z/8", "Z/9 + Z/3 + Z"] {
        let once = parse_group(s).unwrap().to_string();
        let twice = parse_group(&once).unwrap().to_string();
        assert_eq!(once, twice, "{s}");
    }
}

#[test]
fn functor_examples() {
    let f = parse_functor("L^2 o L^2").unwrap();
    assert_eq!((f.to_string().as_str(), f.degree()), ("L^2 o L^2", 4));
    let f = parse_functor("J^4 * J^2").unwrap();
    assert_eq!(f.degree(), 6);
    assert!(matches!(parse_functor("SLie^6"), Err(Error::UnsupportedDegree(6))));
}

#[test]
fn functor_printing_is_a_fixed_point() {
    for s in [
        "Id",
        "Z^0",
        "T^3",
        "SP^2 + L^2",
        "(SP^2 + L^2) o G^2",
        "Lie^4 * SLie^3",
        "J^3 o (Y^2 + E^2)",
        "W^3",
        "ker(sym_mult(3))",
        "coker(sp_to_gamma(2))",
    ] {
        let once = parse_functor(s).unwrap().to_string();
        let twice = parse_functor(&once).unwrap().to_string();
        assert_eq!(once, twice, "{s}");
    }
}
