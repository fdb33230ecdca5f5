use proptest::prelude::*;
use twodof::parse_rational;
use twodof::render;
use twodof_core::polyalg::{Poly, RatFn};
use twodof_core::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 1..=max_deg + 1).prop_map(Poly::from_coeffs)
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (poly(4), poly(4).prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RatFn::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn display_round_trips(r in ratfn()) {
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn factored_rendering_round_trips(r in ratfn()) {
        prop_assert_eq!(parse_rational(&render::ratfn(&r)).unwrap(), r);
    }

    #[test]
    fn whitespace_is_insignificant(r in ratfn()) {
        // spaces between tokens, never inside an integer literal
        let text = r.to_string();
        let chars: Vec<char> = text.chars().collect();
        let mut spaced = String::new();
        for (i, c) in chars.iter().enumerate() {
            spaced.push(*c);
            if !(c.is_ascii_digit() && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit())) {
                spaced.push_str("  ");
            }
        }
        let tight: String = r.to_string().chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse_rational(&spaced).unwrap(), parse_rational(&tight).unwrap());
    }
}
