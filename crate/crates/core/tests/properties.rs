//! Randomised properties of the exact layer: bilinearity of the pairing,
//! coordinate recovery, determinants against cofactor expansion, two-square
//! decompositions against brute force, and chain expansions against the
//! fractions they encode.

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use latticework::exact::{
    rational_from_integer, two_square_representations, Rational, RationalMatrix,
};
use latticework::lattice::Lattice;
use latticework::quotient::{continued_fraction_value, hj_chain};

fn ambient() -> Lattice {
    let gram = RationalMatrix::from_i64_rows(&[vec![5, 9, 11], vec![9, 9, 9], vec![11, 9, -1]])
        .expect("gram is rectangular");
    Lattice::builder(
        "NS",
        vec!["E1".to_owned(), "E3".to_owned(), "C1".to_owned()],
        gram,
    )
    .expect("lattice is valid")
    .build()
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9)
        .prop_map(|(num, den)| Rational::new(BigInt::from(num), BigInt::from(den)))
}

fn arb_coords() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(arb_rational(), 3)
}

fn arb_square_rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4)
        .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-6i64..=6, n), n))
}

fn arb_chain_type() -> impl Strategy<Value = (i64, i64)> {
    (2i64..=60)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_filter("order and weight must be coprime", |(n, a)| n.gcd(a) == 1)
}

fn cofactor_determinant(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 1 {
        return rows[0][0];
    }
    let mut total = 0i64;
    for (j, leading) in rows[0].iter().enumerate() {
        let minor: Vec<Vec<i64>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * leading * cofactor_determinant(&minor);
    }
    total
}

proptest! {
    #[test]
    fn prop_pairing_is_symmetric(x in arb_coords(), y in arb_coords()) {
        let lattice = ambient();
        let x = lattice.class(x).expect("coords fit");
        let y = lattice.class(y).expect("coords fit");
        prop_assert_eq!(x.pair(&y).expect("pairing computes"), y.pair(&x).expect("pairing computes"));
    }

    #[test]
    fn prop_pairing_is_additive_in_the_first_slot(
        x in arb_coords(),
        y in arb_coords(),
        z in arb_coords(),
    ) {
        let lattice = ambient();
        let x = lattice.class(x).expect("coords fit");
        let y = lattice.class(y).expect("coords fit");
        let z = lattice.class(z).expect("coords fit");
        let joint = x.add(&y).expect("same lattice").pair(&z).expect("pairing computes");
        let split = x.pair(&z).expect("pairing computes") + y.pair(&z).expect("pairing computes");
        prop_assert_eq!(joint, split);
    }

    #[test]
    fn prop_pairing_respects_scalar_multiples(
        x in arb_coords(),
        z in arb_coords(),
        factor in arb_rational(),
    ) {
        let lattice = ambient();
        let x = lattice.class(x).expect("coords fit");
        let z = lattice.class(z).expect("coords fit");
        let scaled = x.scale(&factor).pair(&z).expect("pairing computes");
        prop_assert_eq!(scaled, factor * x.pair(&z).expect("pairing computes"));
    }

    #[test]
    fn prop_coordinates_and_pairings_round_trip(coords in arb_coords()) {
        let lattice = ambient();
        let class = lattice.class(coords).expect("coords fit");
        let recovered = lattice
            .coords_from_pairings(&class.pairings_against_basis())
            .expect("nondegenerate form recovers coordinates");
        prop_assert_eq!(recovered, class);
    }

    #[test]
    fn prop_determinant_matches_cofactor_expansion(rows in arb_square_rows()) {
        let matrix = RationalMatrix::from_i64_rows(&rows).expect("rows are square");
        let computed = matrix.determinant().expect("square matrix");
        prop_assert_eq!(computed, rational_from_integer(cofactor_determinant(&rows)));
    }

    #[test]
    fn prop_two_square_lists_match_brute_force(n in 0i64..=10_000) {
        let mut wanted = Vec::new();
        for u in 0i64..=100 {
            for v in 0i64..=100 {
                if u * u + v * v == n {
                    wanted.push((BigInt::from(u), BigInt::from(v)));
                }
            }
        }
        prop_assert_eq!(two_square_representations(&BigInt::from(n)), wanted);
    }

    #[test]
    fn prop_chain_expansion_reconstructs_its_fraction((n, a) in arb_chain_type()) {
        let chain = hj_chain(n, a).expect("type is valid");
        prop_assert!(chain.coefficients.iter().all(|&b| b >= 2));
        let value = continued_fraction_value(&chain.coefficients).expect("coefficients are valid");
        prop_assert_eq!(value, Rational::new(BigInt::from(n), BigInt::from(a)));
        let sign = if chain.len().is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(chain.determinant(), rational_from_integer(sign * n));
    }
}
