use lndkit::poly::default_var_names;
use lndkit::{Monomial, Poly, Rational};
use lndkit_cli::parse::parse_poly_with;
use lndkit_cli::parse_poly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..5, nvars), rational()), 0..8).prop_map(move |terms| {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p = &p + &Poly::term(nvars, Monomial::new(e), c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_parse_plane(p in poly(2)) {
        prop_assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
    }

    #[test]
    fn print_parse_three_vars(p in poly(3)) {
        prop_assert_eq!(parse_poly(&p.to_string(), 3).unwrap(), p);
    }

    #[test]
    fn print_parse_custom_names(p in poly(2)) {
        let names = vec!["s".to_string(), "t".to_string()];
        let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
        prop_assert_eq!(parse_poly_with(&p.to_string_with(&names_ref), &names).unwrap(), p);
    }
}

#[test]
fn default_names() {
    assert_eq!(default_var_names(2), vec!["x", "y"]);
    assert_eq!(default_var_names(3), vec!["x1", "x2", "x3"]);
}
