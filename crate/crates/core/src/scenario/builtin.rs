//! The shipped scenario: the full no-curve argument for the built-in
//! surface, step by step, as data.
//!
//! The same content is embedded as JSON and shipped under `scenarios/`; a
//! test pins the two against each other so they cannot drift apart.

use crate::curves::{CurveRecord, MarkedPoint};

use super::spec::{
    AssertionSpec, Check, ConstraintSpec, CurveFamilySpec, EmbeddingSpec, ExactValue,
    ImageOverrideSpec, InvolutionQuotientSpec, LabeledValue, LatticeSpec, MeetingSpec,
    ObstructionCaseSpec, OrbitEntry, QuotientSpec, RelationSpec, Scenario, TableSpec, TermSpec,
};
use super::BUILTIN_NAME;

fn iv(n: i64) -> ExactValue {
    ExactValue::integer(n)
}

fn tv(text: &str) -> ExactValue {
    ExactValue::text(text)
}

fn term(coefficient: i64, label: &str) -> TermSpec {
    TermSpec::new(iv(coefficient), label)
}

fn rterm(coefficient: &str, label: &str) -> TermSpec {
    TermSpec::new(tv(coefficient), label)
}

fn genus(label: &str, value: i64) -> LabeledValue {
    LabeledValue {
        label: label.to_owned(),
        value: iv(value),
    }
}

fn int_rows(rows: &[&[i64]]) -> Vec<Vec<ExactValue>> {
    rows.iter()
        .map(|row| row.iter().map(|&n| iv(n)).collect())
        .collect()
}

fn table(labels: &[&str], rows: &[&[i64]]) -> TableSpec {
    TableSpec {
        labels: labels.iter().map(|&l| l.to_owned()).collect(),
        entries: int_rows(rows),
    }
}

fn meeting(a: &str, b: &str, count: i64) -> MeetingSpec {
    MeetingSpec {
        pair: [a.to_owned(), b.to_owned()],
        count,
    }
}

fn point(label: &str, n: i64, a: i64) -> MarkedPoint {
    MarkedPoint::new(label, n, a).expect("built-in point data is valid")
}

fn record(label: &str, genus: i64, mults: [i64; 3], extra_nodes: i64) -> CurveRecord {
    CurveRecord::new(label, genus, mults.to_vec(), extra_nodes, true)
        .expect("built-in curve data is valid")
}

fn swap(a: &str, b: &str, image: &str) -> OrbitEntry {
    OrbitEntry::Swap {
        a: a.to_owned(),
        b: b.to_owned(),
        image: image.to_owned(),
    }
}

fn invariant(curve: &str, image: &str) -> OrbitEntry {
    OrbitEntry::Invariant {
        curve: curve.to_owned(),
        image: image.to_owned(),
    }
}

fn case(contact: i64, squares: &[i64]) -> ObstructionCaseSpec {
    ObstructionCaseSpec {
        contact,
        squares: squares.to_vec(),
    }
}

fn check(id: &str, description: &str, check: Check) -> AssertionSpec {
    AssertionSpec {
        id: id.to_owned(),
        description: description.to_owned(),
        check,
    }
}

fn assumed(id: &str, description: &str) -> AssertionSpec {
    check(id, description, Check::Assumed {})
}

fn relation(lhs: &[(i64, &str)], rhs: &[(i64, &str)]) -> RelationSpec {
    let build = |terms: &[(i64, &str)]| terms.iter().map(|&(k, l)| term(k, l)).collect();
    RelationSpec {
        lhs: build(lhs),
        rhs: build(rhs),
    }
}

fn strings(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|&l| l.to_owned()).collect()
}

/// Span of the involution action used throughout the case analysis: the
/// six generators carrying the action plus the twelve chain curves.
fn action_span() -> Vec<String> {
    strings(&[
        "E1'", "E3'", "R1", "R2", "R3", "C1'", "R11", "R12", "R21", "R22", "R31", "R32", "R41",
        "R42", "R51", "R52", "R61", "R62",
    ])
}

/// Generators whose images are pinned by the curve geometry when solving
/// for the image of the invariant curve.
fn known_images() -> Vec<String> {
    strings(&[
        "E1'", "E2'", "E3'", "R1", "R2", "R3", "R11", "R12", "R21", "R22", "R31", "R32", "R41",
        "R42", "R51", "R52", "R61", "R62",
    ])
}

/// The reflected image candidate for the first invariant curve.
fn reflected_image() -> Vec<TermSpec> {
    vec![
        term(-1, "E1'"),
        term(3, "E3'"),
        term(3, "R2"),
        term(-1, "R3"),
        term(-1, "C1'"),
    ]
}

fn ambient_lattice() -> LatticeSpec {
    let embed = |label: &str, pairings: [i64; 3]| EmbeddingSpec {
        label: label.to_owned(),
        pairings: pairings.iter().map(|&n| iv(n)).collect(),
    };
    LatticeSpec {
        name: "NS".to_owned(),
        basis: strings(&["E1", "E3", "C1"]),
        gram: int_rows(&[&[5, 9, 11], &[9, 9, 9], &[11, 9, -1]]),
        embeddings: vec![
            embed("E2", [13, 9, 7]),
            embed("C2", [11, 9, 17]),
            embed("C3", [25, 27, 37]),
            embed("C4", [25, 27, 19]),
            embed("F", [60, 36, 24]),
            embed("K", [9, 9, 9]),
        ],
    }
}

fn branch_curves() -> CurveFamilySpec {
    CurveFamilySpec {
        name: "branch-curves".to_owned(),
        marked_points: vec![point("O1", 3, 1), point("O2", 3, 1), point("O3", 3, 1)],
        records: vec![
            record("E1", 4, [3, 1, 2], 0),
            record("E2", 4, [2, 1, 3], 0),
            record("E3", 4, [1, 4, 1], 0),
            record("C1", 4, [0, 1, 2], 0),
            record("C2", 4, [0, 1, 2], 0),
            record("C3", 10, [4, 3, 2], 30),
            record("C4", 10, [4, 3, 2], 30),
        ],
        extra_meetings: vec![
            meeting("E1", "C1", 6),
            meeting("E1", "C2", 6),
            meeting("E1", "C3", 6),
            meeting("E1", "C4", 6),
            meeting("E2", "C3", 12),
            meeting("E2", "C4", 12),
            meeting("E3", "C1", 3),
            meeting("E3", "C2", 3),
            meeting("E3", "C3", 9),
            meeting("E3", "C4", 9),
            meeting("C1", "C2", 12),
            meeting("C1", "C3", 30),
            meeting("C1", "C4", 12),
            meeting("C2", "C3", 12),
            meeting("C2", "C4", 30),
            meeting("C3", "C4", 60),
        ],
        expected_table: table(
            &["E1", "E2", "E3", "C1", "C2", "C3", "C4"],
            &[
                &[5, 13, 9, 11, 11, 25, 25],
                &[13, 5, 9, 7, 7, 29, 29],
                &[9, 9, 9, 9, 9, 27, 27],
                &[11, 7, 9, -1, 17, 37, 19],
                &[11, 7, 9, 17, -1, 19, 37],
                &[25, 29, 27, 37, 19, 71, 89],
                &[25, 29, 27, 19, 37, 89, 71],
            ],
        ),
        ball_quotient: true,
    }
}

fn degree_three_quotient() -> QuotientSpec {
    QuotientSpec {
        name: "Y".to_owned(),
        group_order: 3,
        curve_family: "branch-curves".to_owned(),
        additional_points: (1..=6).map(|i| point(&format!("Q{i}"), 3, 2)).collect(),
        canonical_transform: "E3'".to_owned(),
    }
}

fn involution_quotient() -> InvolutionQuotientSpec {
    InvolutionQuotientSpec {
        name: "Z".to_owned(),
        quotient: "Y".to_owned(),
        orbits: vec![
            swap("E2'", "R1", "r1"),
            swap("E3'", "R2", "r2"),
            swap("E1'", "R3", "r3"),
            invariant("C1'", "c1"),
            invariant("C2'", "c2"),
            invariant("C3'", "c3"),
            invariant("C4'", "c4"),
            swap("R11", "R21", "r11"),
            swap("R12", "R22", "r12"),
            swap("R31", "R41", "r21"),
            swap("R32", "R42", "r22"),
            swap("R51", "R61", "r31"),
            swap("R52", "R62", "r32"),
        ],
    }
}

fn resolution_table() -> Check {
    Check::DerivedTable {
        surface: "Y".to_owned(),
        labels: strings(&[
            "E1'", "E2'", "E3'", "R1", "R2", "R3", "C1'", "C2'", "C3'", "C4'",
        ]),
        expected: int_rows(&[
            &[-3, 0, 0, 3, 1, 2, 2, 2, 2, 2],
            &[0, -3, 0, 2, 1, 3, 0, 0, 4, 4],
            &[0, 0, -3, 1, 4, 1, 1, 1, 3, 3],
            &[3, 2, 1, -3, 0, 0, 0, 0, 4, 4],
            &[1, 1, 4, 0, -3, 0, 1, 1, 3, 3],
            &[2, 3, 1, 0, 0, -3, 2, 2, 2, 2],
            &[2, 0, 1, 0, 1, 2, -2, 4, 10, 4],
            &[2, 0, 1, 0, 1, 2, 4, -2, 4, 10],
            &[2, 4, 3, 4, 3, 2, 10, 4, 14, 20],
            &[2, 4, 3, 4, 3, 2, 4, 10, 20, 14],
        ]),
    }
}

fn quotient_table() -> Check {
    Check::DerivedTable {
        surface: "Z".to_owned(),
        labels: strings(&["r1", "r2", "r3", "c1", "c2", "c3", "c4"]),
        expected: int_rows(&[
            &[-1, 1, 3, 0, 0, 4, 4],
            &[1, 1, 1, 1, 1, 3, 3],
            &[3, 1, -1, 2, 2, 2, 2],
            &[0, 1, 2, -1, 2, 5, 2],
            &[0, 1, 2, 2, -1, 2, 5],
            &[4, 3, 2, 5, 2, 7, 10],
            &[4, 3, 2, 2, 5, 10, 7],
        ]),
    }
}

fn resolution_adjunction() -> Check {
    let mut genera = vec![
        genus("E1'", 0),
        genus("E2'", 0),
        genus("E3'", 0),
        genus("R1", 0),
        genus("R2", 0),
        genus("R3", 0),
        genus("C1'", 1),
        genus("C2'", 1),
        genus("C3'", 11),
        genus("C4'", 11),
    ];
    for j in 1..=6 {
        for i in 1..=2 {
            genera.push(genus(&format!("R{j}{i}"), 0));
        }
    }
    Check::Adjunction {
        surface: "Y".to_owned(),
        canonical: vec![term(1, "E3'"), term(1, "R2")],
        genera,
    }
}

fn quotient_adjunction() -> Check {
    Check::Adjunction {
        surface: "Z".to_owned(),
        canonical: vec![term(1, "r2")],
        genera: vec![
            genus("r1", 1),
            genus("r2", 2),
            genus("r3", 1),
            genus("c1", 1),
            genus("c2", 1),
            genus("c3", 6),
            genus("c4", 6),
            genus("r11", 0),
            genus("r12", 0),
            genus("r21", 0),
            genus("r22", 0),
            genus("r31", 0),
            genus("r32", 0),
        ],
    }
}

fn identity_branch_family(targets: i64, square: i64, condition: [i64; 3]) -> Check {
    let target = iv(targets);
    Check::FixedCurveFamily {
        quotient: "Y".to_owned(),
        ansatz: vec![
            vec![term(1, "E1'"), term(1, "R3")],
            vec![term(1, "E3'"), term(1, "R2")],
            vec![term(1, "C1'")],
        ],
        constraints: vec![
            ConstraintSpec {
                probe: vec![term(1, "E1'")],
                value: target.clone(),
            },
            ConstraintSpec {
                probe: vec![term(1, "E2'")],
                value: target.clone(),
            },
            ConstraintSpec {
                probe: vec![term(1, "E3'")],
                value: target,
            },
        ],
        square: iv(square),
        expected_condition: Some([iv(condition[0]), iv(condition[1]), iv(condition[2])]),
        expected_members: if targets == 0 && square == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        },
    }
}

fn image_genus(
    id: &str,
    curve: &str,
    genus: i64,
    branch_points: i64,
    expected: i64,
) -> AssertionSpec {
    check(
        id,
        &format!(
            "geometric genus of the image of {curve} under the degree-3 cover, \
             from the branch point count on the curve"
        ),
        Check::ImageGenus {
            genus,
            degree: 3,
            branch_points,
            expected,
        },
    )
}

/// The full replay scenario, as structured data.
pub fn builtin_scenario() -> Scenario {
    let mut assertions = vec![
        check(
            "curve-table",
            "pairing table of the seven labelled curves, rebuilt from genus, \
             triple-point multiplicities and node counts",
            Check::CurveTable {
                family: "branch-curves".to_owned(),
            },
        ),
        check(
            "arithmetic-genera",
            "arithmetic genus of each labelled curve from its singularity data",
            Check::ArithmeticGenera {
                family: "branch-curves".to_owned(),
                expected: vec![
                    genus("E1", 8),
                    genus("E2", 8),
                    genus("E3", 10),
                    genus("C1", 5),
                    genus("C2", 5),
                    genus("C3", 50),
                    genus("C4", 50),
                ],
            },
        ),
        check(
            "ambient-determinant",
            "determinant of the rank-3 sublattice spanned by E1, E3, C1",
            Check::Determinant {
                surface: "NS".to_owned(),
                labels: None,
                expected: iv(324),
            },
        ),
        check(
            "canonical-is-e3",
            "the canonical class pairs like E3 against everything, so the two \
             coincide numerically",
            Check::Equivalences {
                surface: "NS".to_owned(),
                relations: vec![relation(&[(1, "K")], &[(1, "E3")])],
            },
        ),
        check(
            "freeness-cases",
            "obstructing configurations for base-point freeness of the \
             bicanonical system, polarization square 9",
            Check::ObstructionCases {
                part: "basepoint".to_owned(),
                polarization_square: 9,
                expected: vec![case(0, &[-1]), case(1, &[0])],
                expect_boundary_case: false,
            },
        ),
        assumed(
            "freeness-conclusion",
            "the freeness obstructions need an effective class of square -1, or \
             one of square 0 and canonical degree 1; the first cannot exist here \
             and the second fails adjunction parity, so the bicanonical system \
             is base point free",
        ),
        check(
            "separation-cases",
            "obstructing configurations for point separation by the bicanonical \
             system, including the boundary case at polarization square 9",
            Check::ObstructionCases {
                part: "separation".to_owned(),
                polarization_square: 9,
                expected: vec![case(0, &[-2, -1]), case(1, &[-1, 0]), case(2, &[0])],
                expect_boundary_case: true,
            },
        ),
        assumed(
            "boundary-case-excluded",
            "the boundary configuration would make the canonical class \
             numerically three times an effective class; a covering-group \
             argument excludes it, taken as given here",
        ),
        assumed(
            "remaining-case",
            "genus bounds on a smooth ball quotient and adjunction parity leave \
             one configuration standing: an irreducible curve B with B.K = 2 \
             and B^2 = 0; everything after this replays its elimination",
        ),
        check(
            "class-search",
            "exhaustive enumeration of classes with canonical degree 2 and \
             square 0 in the rank-3 sublattice",
            Check::ClassSearch {
                surface: "NS".to_owned(),
                canonical_degree: 2,
                self_intersection: 0,
                expected: vec![
                    vec![tv("1/9"), tv("-1/9"), tv("2/9")],
                    vec![tv("-1/9"), tv("5/9"), tv("-2/9")],
                ],
            },
        ),
        check(
            "first-candidate-profile",
            "pairings of the first candidate class against the seven curves and \
             the fibre class",
            Check::PairingProfile {
                surface: "NS".to_owned(),
                coords: vec![tv("1/9"), tv("-1/9"), tv("2/9")],
                against: strings(&["E1", "E2", "E3", "C1", "C2", "C3", "C4", "F"]),
                expected: vec![iv(2), iv(2), iv(2), iv(0), iv(4), iv(8), iv(4), iv(8)],
            },
        ),
        check(
            "second-candidate-profile",
            "pairings of the second candidate class against the seven curves \
             and the fibre class",
            Check::PairingProfile {
                surface: "NS".to_owned(),
                coords: vec![tv("-1/9"), tv("5/9"), tv("-2/9")],
                against: strings(&["E1", "E2", "E3", "C1", "C2", "C3", "C4", "F"]),
                expected: vec![iv(2), iv(2), iv(2), iv(4), iv(0), iv(4), iv(8), iv(8)],
            },
        ),
        check(
            "candidate-meeting",
            "the two candidate classes pair to 8/9; distinct irreducible curves \
             meet in a nonnegative integer, so at most one candidate is a curve \
             class, and relabelling swaps them anyway",
            Check::MeetingObstruction {
                surface: "NS".to_owned(),
                left: vec![tv("1/9"), tv("-1/9"), tv("2/9")],
                right: vec![tv("-1/9"), tv("5/9"), tv("-2/9")],
                expected: tv("8/9"),
                expect_integral: false,
            },
        ),
        image_genus("image-genus-e1", "E1", 4, 6, 0),
        image_genus("image-genus-e2", "E2", 4, 6, 0),
        image_genus("image-genus-e3", "E3", 4, 6, 0),
        image_genus("image-genus-c1", "C1", 4, 3, 1),
        image_genus("image-genus-c2", "C2", 4, 3, 1),
        image_genus("image-genus-c3", "C3", 10, 9, 1),
        image_genus("image-genus-c4", "C4", 10, 9, 1),
        assumed(
            "translate-disjointness",
            "the candidate curve and its two translates under the order-3 \
             symmetry are pairwise disjoint, so the class descends to the \
             quotient; taken as given",
        ),
        assumed(
            "cohomology-sign",
            "the symmetry groups act on the transcendental part of second \
             cohomology with a sign; both signs are carried through the case \
             analysis below",
        ),
        check(
            "resolution-table",
            "pairing table on the resolved degree-3 quotient: strict transforms \
             and the three isolated exceptional curves",
            resolution_table(),
        ),
        check(
            "resolution-canonical",
            "canonical class of the resolution from the branch transform and \
             its discrepancy corrections",
            Check::CanonicalClass {
                quotient: "Y".to_owned(),
                expected: vec![term(1, "E3'"), term(1, "R2")],
                expected_square: iv(2),
            },
        ),
        check(
            "resolution-adjunction",
            "adjunction closes on all 22 generating curves of the resolution",
            resolution_adjunction(),
        ),
        check(
            "resolution-relations",
            "five numerical equivalences among the generating curves of the \
             resolution",
            Check::Equivalences {
                surface: "Y".to_owned(),
                relations: vec![
                    relation(
                        &[(1, "E1'"), (1, "E2'"), (1, "R1"), (1, "R3")],
                        &[(2, "E3'"), (2, "R2")],
                    ),
                    relation(&[(1, "C1'"), (1, "C3'")], &[(4, "E3'"), (4, "R2")]),
                    relation(&[(1, "C2'"), (1, "C4'")], &[(4, "E3'"), (4, "R2")]),
                    relation(
                        &[(1, "E1'"), (1, "C1'"), (1, "C2'"), (1, "R3")],
                        &[(3, "E3'"), (3, "R2")],
                    ),
                    relation(
                        &[(1, "E2'"), (1, "E3'"), (1, "R1"), (1, "R2")],
                        &[(1, "C1'"), (1, "C2'")],
                    ),
                ],
            },
        ),
        check(
            "numerics-ambient",
            "Euler number, second Betti number and middle Hodge number of the \
             surface upstairs",
            Check::SurfaceNumerics {
                surface: "X".to_owned(),
                canonical_square: 9,
                chi: 1,
                irregularity: 1,
                geometric_genus: 1,
                expected_euler: 3,
                expected_b2: 5,
                expected_h11: 3,
            },
        ),
        check(
            "numerics-resolution",
            "Euler number, second Betti number and middle Hodge number of the \
             resolved quotient",
            Check::SurfaceNumerics {
                surface: "Y".to_owned(),
                canonical_square: 2,
                chi: 2,
                irregularity: 0,
                geometric_genus: 1,
                expected_euler: 22,
                expected_b2: 20,
                expected_h11: 18,
            },
        ),
        check(
            "fibre-pullback",
            "pullback of the elliptic fibre combination across the three \
             isolated exceptional curves",
            Check::Pullback {
                quotient: "Y".to_owned(),
                of: vec![term(-3, "E1'"), term(15, "E2'")],
                expected: vec![
                    term(-3, "E1'"),
                    term(15, "E2'"),
                    term(7, "R1"),
                    term(4, "R2"),
                    term(13, "R3"),
                ],
                expected_square: iv(0),
                expected_canonical_pairing: iv(36),
            },
        ),
        check(
            "fibre-third",
            "one third of the fibre less the three isolated exceptional curves \
             is integral: the fibre through them is a triple fibre",
            Check::FibreReduction {
                quotient: "Y".to_owned(),
                of: vec![term(-3, "E1'"), term(15, "E2'")],
                subtract: vec![term(1, "R1"), term(1, "R2"), term(1, "R3")],
                divide_by: 3,
                expect_integral_coords: true,
            },
        ),
        check(
            "fibre-variant-first",
            "the same reduction over the first three two-curve chains has \
             fractional coordinates yet every pairing stays integral",
            Check::FibreReduction {
                quotient: "Y".to_owned(),
                of: vec![term(-3, "E1'"), term(15, "E2'")],
                subtract: vec![
                    term(1, "R11"),
                    term(2, "R12"),
                    term(1, "R21"),
                    term(2, "R22"),
                    term(1, "R31"),
                    term(2, "R32"),
                ],
                divide_by: 3,
                expect_integral_coords: false,
            },
        ),
        check(
            "fibre-variant-second",
            "the same reduction over the last three two-curve chains behaves \
             identically",
            Check::FibreReduction {
                quotient: "Y".to_owned(),
                of: vec![term(-3, "E1'"), term(15, "E2'")],
                subtract: vec![
                    term(1, "R41"),
                    term(2, "R42"),
                    term(1, "R51"),
                    term(2, "R52"),
                    term(1, "R61"),
                    term(2, "R62"),
                ],
                divide_by: 3,
                expect_integral_coords: false,
            },
        ),
        check(
            "invariant-curve-images",
            "the involution fixes every exceptional curve's image and the five \
             non-invariant generators; only two images remain possible for the \
             first invariant curve",
            Check::ImageCandidates {
                involution: "Z".to_owned(),
                span: action_span(),
                known: known_images(),
                curve: "C1'".to_owned(),
                expected_condition: [iv(-12), iv(-12), iv(0)],
                expected_members: vec![reflected_image(), vec![term(1, "C1'")]],
            },
        ),
        check(
            "involution-trace-identity",
            "trace of the involution on the span of the generating curves when \
             the invariant curve maps identically",
            Check::ActionTrace {
                involution: "Z".to_owned(),
                span: action_span(),
                image_override: None,
                expected: iv(0),
            },
        ),
        check(
            "involution-trace-reflected",
            "trace when the invariant curve is sent to its reflected image",
            Check::ActionTrace {
                involution: "Z".to_owned(),
                span: action_span(),
                image_override: Some(ImageOverrideSpec {
                    curve: "C1'".to_owned(),
                    image: reflected_image(),
                }),
                expected: iv(-2),
            },
        ),
        check(
            "even-pairing-triples",
            "a fixed curve class pairs evenly with each swapped generator pair, \
             below the pair's self-meeting caps and balanced across the three; \
             only the all-0 and all-2 triples survive",
            Check::FixedPairings {
                caps: [2, 2, 4],
                expected: vec![[0, 0, 0], [2, 2, 2]],
            },
        ),
        check(
            "budget-identity-minus",
            "fixed-locus budget for trace 0 and transcendental sign -1",
            Check::FixedLocusBudget {
                trace: iv(0),
                sign: -1,
                expected_euler: iv(0),
                expected_square: iv(0),
                expected_offset: iv(0),
            },
        ),
        check(
            "budget-identity-plus",
            "fixed-locus budget for trace 0 and transcendental sign 1",
            Check::FixedLocusBudget {
                trace: iv(0),
                sign: 1,
                expected_euler: iv(4),
                expected_square: iv(4),
                expected_offset: iv(-8),
            },
        ),
        check(
            "budget-reflected-plus",
            "fixed-locus budget for trace -2 and transcendental sign 1",
            Check::FixedLocusBudget {
                trace: iv(-2),
                sign: 1,
                expected_euler: iv(2),
                expected_square: iv(6),
                expected_offset: iv(-8),
            },
        ),
        check(
            "budget-reflected-minus",
            "fixed-locus budget for trace -2 and transcendental sign -1",
            Check::FixedLocusBudget {
                trace: iv(-2),
                sign: -1,
                expected_euler: iv(-2),
                expected_square: iv(2),
                expected_offset: iv(0),
            },
        ),
        check(
            "case-identity-square-zero-trivial",
            "identity branch, sign -1: invariant classes pairing to 0 with the \
             three generators form a line, and total square 0 forces the zero \
             class, an empty fixed curve locus",
            identity_branch_family(0, 0, [-12, 0, 0]),
        ),
        check(
            "case-identity-square-zero-even",
            "identity branch, sign -1: pairing 2 with the three generators \
             admits no class of total square 0",
            identity_branch_family(2, 0, [-12, 0, 8]),
        ),
        check(
            "case-identity-square-four-trivial",
            "identity branch, sign 1: pairing 0 admits no class of total \
             square 4",
            identity_branch_family(0, 4, [-12, 0, -4]),
        ),
        check(
            "case-identity-square-four-even",
            "identity branch, sign 1: pairing 2 admits no class of total \
             square 4",
            identity_branch_family(2, 4, [-12, 0, 4]),
        ),
        assumed(
            "empty-locus-contradiction",
            "an involution with empty fixed locus would act freely, halving the \
             holomorphic Euler characteristic 2 of the resolution to a quotient \
             with characteristic 1 and geometric genus 1, forcing irregularity \
             1 on a surface that has none; the identity branch is impossible",
        ),
        check(
            "case-reflected-plus",
            "reflected branch, sign 1: the invariant ansatz reduces to \
             2x^2 = (m - 4)^2 - 3, which is impossible mod 9",
            Check::DiophantineReduction {
                quotient: "Y".to_owned(),
                ansatz: vec![
                    vec![term(1, "E1'"), term(1, "R3")],
                    vec![term(1, "E3'"), term(1, "R2")],
                ],
                square: iv(6),
                points_offset: iv(-8),
                expected_equation: [iv(2), iv(1), iv(-3)],
                expected_scale: iv(1),
                expected_shift: iv(-4),
                expect_integer_forcing: true,
                modulus: 9,
                expect_modulus_obstruction: true,
                search_radius: 1000,
                expected_solutions: 0,
            },
        ),
        assumed(
            "unimodular-rank",
            "in the reflected branch with sign -1 the quotient surface would \
             have unimodular second cohomology of the same rank as the fixed \
             configuration below, so the configuration's determinant would \
             have to be a perfect square",
        ),
        check(
            "case-reflected-minus",
            "reflected branch, sign -1: three two-curve chains plus the two \
             images of pairing 3 give determinant 216, and isolated points \
             only multiply it by squares; never a perfect square",
            Check::ConfigurationParity {
                involution: "Z".to_owned(),
                chain: [3, 2],
                chain_count: 3,
                labels: strings(&["r1", "r3"]),
                expected_fixed: iv(216),
                expect_obstruction: true,
            },
        ),
        assumed(
            "image-multiplicities",
            "the image of the candidate curve on the singular quotient is \
             irreducible with the stated multiplicities through the singular \
             points, so its pullback to the resolution is the class used next; \
             taken as given",
        ),
        check(
            "descent-meeting",
            "the descended candidate class meets its involution image in 4/3; \
             intersection numbers of curves are integers, so no such curve \
             exists and the argument closes",
            Check::DescentMeeting {
                involution: "Z".to_owned(),
                of: vec![
                    rterm("2/3", "E3'"),
                    rterm("1/3", "C1'"),
                    rterm("-1/3", "C2'"),
                ],
                expected_self: iv(0),
                expected: tv("4/3"),
                expect_integral: false,
            },
        ),
        check(
            "quotient-table",
            "pairing table on the free involution quotient via the halving rule",
            quotient_table(),
        ),
        check(
            "quotient-generators-determinant",
            "determinant of the nine-generator sublattice of the involution \
             quotient",
            Check::Determinant {
                surface: "Z".to_owned(),
                labels: Some(strings(&[
                    "r1", "r2", "c1", "r11", "r12", "r21", "r22", "r31", "r32",
                ])),
                expected: iv(81),
            },
        ),
        check(
            "quotient-adjunction",
            "adjunction on the involution quotient with its canonical generator",
            quotient_adjunction(),
        ),
        check(
            "quotient-relations",
            "five numerical equivalences among the involution quotient \
             generators",
            Check::Equivalences {
                surface: "Z".to_owned(),
                relations: vec![
                    relation(&[(1, "r1"), (1, "r3")], &[(2, "r2")]),
                    relation(&[(1, "c1"), (1, "c3")], &[(4, "r2")]),
                    relation(&[(1, "c2"), (1, "c4")], &[(4, "r2")]),
                    relation(&[(1, "c1"), (1, "c2"), (1, "r3")], &[(3, "r2")]),
                    relation(&[(1, "r1"), (1, "r2")], &[(1, "c1"), (1, "c2")]),
                ],
            },
        ),
        check(
            "numerics-quotient",
            "Euler number, second Betti number and middle Hodge number of the \
             involution quotient",
            Check::SurfaceNumerics {
                surface: "Z".to_owned(),
                canonical_square: 1,
                chi: 1,
                irregularity: 0,
                geometric_genus: 0,
                expected_euler: 11,
                expected_b2: 9,
                expected_h11: 9,
            },
        ),
    ];
    assertions.shrink_to_fit();
    Scenario {
        name: BUILTIN_NAME.to_owned(),
        lattices: vec![ambient_lattice()],
        curves: vec![branch_curves()],
        quotients: vec![degree_three_quotient()],
        involutions: vec![involution_quotient()],
        assertions,
    }
}
