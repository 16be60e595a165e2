//! Enumeration of candidate divisor classes with prescribed canonical degree
//! and self-intersection.
//!
//! On the rank-3 lattice with basis `(E1, E3, C1)` and canonical class `E3`,
//! a class `D` is determined by its pairings `(a, b, c)` against the basis,
//! with `b = K . D`. Substituting the coordinate-recovery formulas into
//! `D^2` gives the integer quadratic
//!
//! ```text
//! 2c^2 - 2(3b - a)c + 5a^2 + 7b^2 - 12ab + 18 D^2 = 0
//! ```
//!
//! whose discriminant over 4 is `4b^2 - 36 D^2 - (3a - 3b)^2`. Integer
//! solutions therefore require `(|3a - 3b|, s)` to be a two-square
//! representation of `4b^2 - 36 D^2`, and `c = ((3b - a) +/- s) / 2`.
//! The enumeration scans the finite `a`-interval, certifies each discriminant
//! with an exact square root, and returns the solutions sorted by `(a, c)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{
    is_integer, is_perfect_square, rational_to_string, two_square_representations, Rational,
    RationalMatrix,
};
use crate::lattice::{DivisorClass, Lattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{part} criterion requires L^2 >= {bound}, got {l_squared}")]
    BelowThreshold {
        part: String,
        bound: i64,
        l_squared: i64,
    },
    #[error(
        "lattice {name:?} does not have the inverse Gram matrix the closed-form search is derived from"
    )]
    UnsupportedLattice { name: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A search for classes `D` with `K . D = target_kd` and `D^2 = target_d2`.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    lattice: Lattice,
    target_kd: i64,
    target_d2: i64,
}

/// One solution: the basis pairings `(a, b, c)`, the discriminant square root
/// `s`, and the recovered class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSolution {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub s: BigInt,
    pub class: DivisorClass,
}

impl SearchProblem {
    /// The closed form hardwires the inverse Gram matrix
    /// `18 G^{-1} = [[-5, 6, -1], [6, -7, 3], [-1, 3, -2]]`; any lattice with
    /// a different pairing structure is rejected rather than searched wrongly.
    pub fn new(lattice: &Lattice, target_kd: i64, target_d2: i64) -> Result<Self, SearchError> {
        let expected =
            RationalMatrix::from_i64_rows(&[vec![-5, 6, -1], vec![6, -7, 3], vec![-1, 3, -2]])
                .expect("static shape");
        let scaled = {
            let inv = lattice
                .gram()
                .inverse()
                .map_err(|_| SearchError::UnsupportedLattice {
                    name: lattice.name().to_owned(),
                })?;
            let mut m = RationalMatrix::zero(3, 3);
            if inv.rows() == 3 {
                let eighteen = Rational::from_integer(18.into());
                for i in 0..3 {
                    for j in 0..3 {
                        m.set(i, j, inv.get(i, j) * &eighteen);
                    }
                }
            }
            m
        };
        if lattice.rank() != 3 || scaled != expected {
            return Err(SearchError::UnsupportedLattice {
                name: lattice.name().to_owned(),
            });
        }
        Ok(Self {
            lattice: lattice.clone(),
            target_kd,
            target_d2,
        })
    }

    pub fn target_kd(&self) -> i64 {
        self.target_kd
    }

    pub fn target_d2(&self) -> i64 {
        self.target_d2
    }

    /// All integer pairing triples `(a, b, c)` with `b = target_kd` solving
    /// the class quadratic, sorted lexicographically by `(a, c)`. When
    /// `4b^2 - 36 D^2 < 0` the `a`-interval is empty and the result is `[]`.
    pub fn enumerate_classes(&self) -> Result<Vec<SearchSolution>, SearchError> {
        let b = BigInt::from(self.target_kd);
        let d2 = BigInt::from(self.target_d2);
        let bound: BigInt = BigInt::from(4) * &b * &b - BigInt::from(36) * &d2;
        let mut out = Vec::new();
        if bound.is_negative() {
            return Ok(out);
        }
        let two_square_witnesses = two_square_representations(&bound);
        // Largest t with (3t)^2 <= bound.
        let t_max = bound.sqrt() / 3;
        let mut t = -&t_max;
        while t <= t_max {
            let a: BigInt = &b + &t;
            let u: BigInt = BigInt::from(3) * &t; // 3a - 3b
            let disc4: BigInt = &bound - &u * &u;
            if let Some(s) = is_perfect_square(&disc4).expect("disc4 >= 0 inside the interval") {
                // Eq-(4) consistency: (|3a-3b|, s) must be a listed two-square
                // decomposition of the bound.
                assert!(
                    two_square_witnesses.contains(&(u.abs(), s.clone())),
                    "two-square witness missing for a = {a}"
                );
                let base: BigInt = BigInt::from(3) * &b - &a;
                let mut cs: Vec<BigInt> = Vec::new();
                for c2 in [&base + &s, &base - &s] {
                    if (&c2 % BigInt::from(2)).is_zero() {
                        let c = c2 / BigInt::from(2);
                        if !cs.contains(&c) {
                            cs.push(c);
                        }
                    }
                }
                cs.sort();
                for c in cs {
                    out.push(self.solution(a.clone(), b.clone(), c, s.clone())?);
                }
            }
            t += 1;
        }
        out.sort_by(|x, y| (&x.a, &x.c).cmp(&(&y.a, &y.c)));
        Ok(out)
    }

    fn solution(
        &self,
        a: BigInt,
        b: BigInt,
        c: BigInt,
        s: BigInt,
    ) -> Result<SearchSolution, SearchError> {
        // The defining quadratic must vanish exactly.
        let big = |n: i64| BigInt::from(n);
        let residual: BigInt = big(2) * &c * &c - big(2) * (big(3) * &b - &a) * &c
            + big(5) * &a * &a
            + big(7) * &b * &b
            - big(12) * &a * &b
            + big(18) * big(self.target_d2);
        assert!(
            residual.is_zero(),
            "quadratic residual {residual} for ({a}, {b}, {c})"
        );
        let pairings = [&a, &b, &c].map(|v| Rational::from_integer(v.clone()));
        let class = self.lattice.coords_from_pairings(&pairings)?;
        assert_eq!(
            class.self_intersection().expect("same lattice"),
            Rational::from_integer(self.target_d2.into()),
            "recovered class has wrong self-intersection"
        );
        Ok(SearchSolution { a, b, c, s, class })
    }
}

/// `Some(value)` when the pairing of the two classes is not an integer, which
/// rules out both being integral divisor classes on a smooth surface.
pub fn integrality_obstruction(
    d1: &DivisorClass,
    d2: &DivisorClass,
) -> Result<Option<Rational>, LatticeError> {
    let value = d1.pair(d2)?;
    Ok(if is_integer(&value) {
        None
    } else {
        Some(value)
    })
}

/// Pairings of one class against a list of named classes, in list order.
pub fn pairing_profile(
    class: &DivisorClass,
    against: &[&str],
) -> Result<Vec<Rational>, LatticeError> {
    against
        .iter()
        .map(|label| {
            let other = class.lattice().named_class(label)?;
            class.pair(&other)
        })
        .collect()
}

/// Which part of the numerical criterion for adjoint linear systems applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReiderPart {
    /// Base-point freeness of `K + L`; needs `L^2 >= 5`.
    Basepoint,
    /// Separation of two points (very-ampleness test); needs `L^2 >= 9`.
    Separation,
}

impl ReiderPart {
    fn name(self) -> &'static str {
        match self {
            ReiderPart::Basepoint => "base-point freeness",
            ReiderPart::Separation => "point separation",
        }
    }

    fn bound(self) -> i64 {
        match self {
            ReiderPart::Basepoint => 5,
            ReiderPart::Separation => 9,
        }
    }
}

/// One obstructing configuration: an effective divisor `B` with `B . L` as
/// given and `B^2` among the listed values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReiderCase {
    pub bl: i64,
    pub b_squared: Vec<i64>,
}

/// The finite list of obstructing cases for the requested part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReiderAnalysis {
    pub part: ReiderPart,
    pub l_squared: i64,
    pub cases: Vec<ReiderCase>,
    /// Only in the separation part with `L^2 = 9`: the extra case where `L`
    /// is numerically three times a class.
    pub special_case: bool,
}

/// Obstructing case table for the adjoint criterion, or a domain error naming
/// the violated bound.
pub fn reider_cases(part: ReiderPart, l_squared: i64) -> Result<ReiderAnalysis, SearchError> {
    if l_squared < part.bound() {
        return Err(SearchError::BelowThreshold {
            part: part.name().to_owned(),
            bound: part.bound(),
            l_squared,
        });
    }
    let case = |bl: i64, b_squared: &[i64]| ReiderCase {
        bl,
        b_squared: b_squared.to_vec(),
    };
    let (cases, special_case) = match part {
        ReiderPart::Basepoint => (vec![case(0, &[-1]), case(1, &[0])], false),
        ReiderPart::Separation => (
            vec![case(0, &[-2, -1]), case(1, &[-1, 0]), case(2, &[0])],
            l_squared == 9,
        ),
    };
    Ok(ReiderAnalysis {
        part,
        l_squared,
        cases,
        special_case,
    })
}

/// Pairing profile entries rendered for reports.
pub fn profile_display(profile: &[Rational]) -> String {
    let parts: Vec<String> = profile.iter().map(rational_to_string).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;
    use crate::lattice::tests::surface_lattice;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn step_one_enumeration_is_exact() {
        let lattice = surface_lattice();
        let problem = SearchProblem::new(&lattice, 2, 0).unwrap();
        let sols = problem.enumerate_classes().unwrap();
        let triples: Vec<(BigInt, BigInt, BigInt, BigInt)> = sols
            .iter()
            .map(|s| (s.a.clone(), s.b.clone(), s.c.clone(), s.s.clone()))
            .collect();
        assert_eq!(
            triples,
            vec![
                (big(2), big(2), big(0), big(4)),
                (big(2), big(2), big(4), big(4)),
            ]
        );
        let rat = |s: &str| parse_rational(s).unwrap();
        assert_eq!(
            sols[0].class.coords(),
            vec![rat("1/9"), rat("-1/9"), rat("2/9")]
        );
        assert_eq!(
            sols[1].class.coords(),
            vec![rat("-1/9"), rat("5/9"), rat("-2/9")]
        );
    }

    #[test]
    fn canonical_class_appears_in_its_own_search() {
        let lattice = surface_lattice();
        let problem = SearchProblem::new(&lattice, 9, 9).unwrap();
        let sols = problem.enumerate_classes().unwrap();
        assert!(sols
            .iter()
            .any(|s| s.a == big(9) && s.b == big(9) && s.c == big(9)));
    }

    #[test]
    fn negative_bound_gives_empty_list() {
        let lattice = surface_lattice();
        let problem = SearchProblem::new(&lattice, 0, 1).unwrap();
        assert!(problem.enumerate_classes().unwrap().is_empty());
    }

    /// Independent oracle: scan all (a, c) in a radius-50 box and keep the
    /// triples satisfying the class quadratic directly.
    #[test]
    fn enumeration_agrees_with_box_oracle() {
        let lattice = surface_lattice();
        for kd in -12i64..=12 {
            for d2 in -12i64..=12 {
                let mut expected = Vec::new();
                for a in -50i64..=50 {
                    for c in -50i64..=50 {
                        let b = kd;
                        let residual = 2 * c * c - 2 * (3 * b - a) * c + 5 * a * a + 7 * b * b
                            - 12 * a * b
                            + 18 * d2;
                        if residual == 0 {
                            expected.push((big(a), big(b), big(c)));
                        }
                    }
                }
                expected.sort();
                let problem = SearchProblem::new(&lattice, kd, d2).unwrap();
                let mut got: Vec<(BigInt, BigInt, BigInt)> = problem
                    .enumerate_classes()
                    .unwrap()
                    .into_iter()
                    .map(|s| (s.a, s.b, s.c))
                    .collect();
                got.sort();
                assert_eq!(got, expected, "kd = {kd}, d2 = {d2}");
            }
        }
    }

    #[test]
    fn profile_of_the_first_candidate() {
        let lattice = surface_lattice();
        let problem = SearchProblem::new(&lattice, 2, 0).unwrap();
        let sols = problem.enumerate_classes().unwrap();
        let against = ["E1", "E2", "E3", "C1", "C2", "C3", "C4", "F"];
        let profile = pairing_profile(&sols[0].class, &against).unwrap();
        let ints: Vec<String> = profile.iter().map(rational_to_string).collect();
        assert_eq!(ints, ["2", "2", "2", "0", "4", "8", "4", "8"]);
        let profile2 = pairing_profile(&sols[1].class, &against).unwrap();
        let ints2: Vec<String> = profile2.iter().map(rational_to_string).collect();
        assert_eq!(ints2, ["2", "2", "2", "4", "0", "4", "8", "8"]);
    }

    #[test]
    fn candidate_pairing_is_obstructed() {
        let lattice = surface_lattice();
        let problem = SearchProblem::new(&lattice, 2, 0).unwrap();
        let sols = problem.enumerate_classes().unwrap();
        let obstruction = integrality_obstruction(&sols[0].class, &sols[1].class).unwrap();
        assert_eq!(obstruction, Some(parse_rational("8/9").unwrap()));
        // A class pairs integrally with itself here: no obstruction.
        assert_eq!(
            integrality_obstruction(&sols[0].class, &sols[0].class).unwrap(),
            None
        );
    }

    #[test]
    fn reider_tables() {
        let basepoint = reider_cases(ReiderPart::Basepoint, 9).unwrap();
        assert_eq!(
            basepoint.cases,
            vec![
                ReiderCase {
                    bl: 0,
                    b_squared: vec![-1]
                },
                ReiderCase {
                    bl: 1,
                    b_squared: vec![0]
                },
            ]
        );
        assert!(!basepoint.special_case);

        let separation = reider_cases(ReiderPart::Separation, 9).unwrap();
        assert_eq!(
            separation.cases,
            vec![
                ReiderCase {
                    bl: 0,
                    b_squared: vec![-2, -1]
                },
                ReiderCase {
                    bl: 1,
                    b_squared: vec![-1, 0]
                },
                ReiderCase {
                    bl: 2,
                    b_squared: vec![0]
                },
            ]
        );
        assert!(separation.special_case);
        assert!(
            !reider_cases(ReiderPart::Separation, 10)
                .unwrap()
                .special_case
        );
    }

    #[test]
    fn reider_thresholds_name_the_bound() {
        let err = reider_cases(ReiderPart::Basepoint, 4).unwrap_err();
        assert_eq!(
            err.to_string(),
            "base-point freeness criterion requires L^2 >= 5, got 4"
        );
        let err = reider_cases(ReiderPart::Separation, 5).unwrap_err();
        assert_eq!(
            err.to_string(),
            "point separation criterion requires L^2 >= 9, got 5"
        );
    }

    #[test]
    fn foreign_lattice_is_rejected_immediately() {
        let gram = RationalMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]).unwrap();
        let l = Lattice::builder("other", vec!["A".into(), "B".into()], gram)
            .unwrap()
            .build();
        assert!(matches!(
            SearchProblem::new(&l, 2, 0),
            Err(SearchError::UnsupportedLattice { .. })
        ));
    }
}
