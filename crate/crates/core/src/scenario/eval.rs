//! Evaluation of scenario assertions against a validated world.
//!
//! Every check compares exact values and renders both sides as strings for
//! the report. A mathematical failure inside a check (a missing label, a
//! quotient that failed to build, a reduction that does not apply) fails
//! that assertion with the error text as its computed value; only
//! structural problems abort the whole run.

use num_bigint::BigInt;

use crate::exact::{
    is_integer, rational_from_integer, rational_to_string, Rational, RationalMatrix,
};
use crate::lattice::{DivisorClass, Lattice};
use crate::lefschetz::{
    action_from_images, action_from_spec, admissible_fixed_pairings, configuration_parity,
    constrained_classes, fixed_locus_budget, image_candidates, reduce_to_diophantine,
    ConstrainedFamily, SquareCondition,
};
use crate::quotient::{
    canonical_on_resolution, hj_chain, noether_invariants, pullback, quotient_genus,
    QuotientLattice,
};
use crate::report::{AssertionResult, AssertionStatus};
use crate::search::{
    integrality_obstruction, pairing_profile, profile_display, reider_cases, ReiderAnalysis,
    SearchProblem,
};

use super::spec::{AssertionSpec, Check, ExactValue, ObstructionCaseSpec, TermSpec};
use super::world::{parse_part, InvolutionData, World};
use super::ScenarioError;

/// Failure channel during evaluation: data-level failures mark the
/// assertion failed, structural ones abort the run.
enum EvalError {
    Data(String),
    Abort(ScenarioError),
}

macro_rules! data_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for EvalError {
            fn from(e: $ty) -> Self {
                EvalError::Data(e.to_string())
            }
        })*
    };
}

data_from!(
    crate::lattice::LatticeError,
    crate::quotient::QuotientError,
    crate::lefschetz::LefschetzError,
    crate::search::SearchError,
    crate::exact::ExactError,
    crate::curves::CurveError
);

impl From<ScenarioError> for EvalError {
    fn from(e: ScenarioError) -> Self {
        EvalError::Abort(e)
    }
}

impl World {
    fn surface(&self, name: &str) -> Result<&Lattice, EvalError> {
        if let Some(lattice) = self.lattices.get(name) {
            return Ok(lattice);
        }
        if let Some(built) = self.quotients.get(name) {
            return match built {
                Ok(quotient) => Ok(quotient.lattice()),
                Err(message) => Err(EvalError::Data(message.clone())),
            };
        }
        if let Some(data) = self.involutions.get(name) {
            return match &data.downstairs {
                Ok(lattice) => Ok(lattice),
                Err(message) => Err(EvalError::Data(message.clone())),
            };
        }
        unreachable!("surface references are validated before evaluation")
    }

    fn quotient(&self, name: &str) -> Result<&QuotientLattice, EvalError> {
        match self
            .quotients
            .get(name)
            .expect("quotient references are validated before evaluation")
        {
            Ok(quotient) => Ok(quotient),
            Err(message) => Err(EvalError::Data(message.clone())),
        }
    }

    fn involution(&self, name: &str) -> &InvolutionData {
        self.involutions
            .get(name)
            .expect("involution references are validated before evaluation")
    }

    /// Canonical class of a quotient resolution, from its configured
    /// branch transform.
    fn quotient_canonical(&self, name: &str) -> Result<DivisorClass, EvalError> {
        let quotient = self.quotient(name)?;
        let spec = self
            .quotient_specs
            .get(name)
            .expect("quotient spec stored alongside the built quotient");
        Ok(canonical_on_resolution(
            quotient,
            &spec.canonical_transform,
        )?)
    }
}

fn combination(
    lattice: &Lattice,
    terms: &[TermSpec],
    context: &str,
) -> Result<DivisorClass, EvalError> {
    let mut parsed: Vec<(Rational, &str)> = Vec::with_capacity(terms.len());
    for term in terms {
        let coefficient = term.coefficient.to_rational(context)?;
        parsed.push((coefficient, term.label.as_str()));
    }
    Ok(lattice.combination(&parsed)?)
}

fn class_from_coords(
    lattice: &Lattice,
    coords: &[ExactValue],
    context: &str,
) -> Result<DivisorClass, EvalError> {
    let parsed = coords
        .iter()
        .map(|v| v.to_rational(context))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(lattice.class(parsed)?)
}

/// Renders a class as a signed combination of the basis labels with
/// nonzero coefficients, `0` for the zero class.
pub fn combination_display(class: &DivisorClass) -> String {
    let mut out = String::new();
    for (label, coefficient) in class.lattice().basis().iter().zip(class.coords()) {
        if coefficient == &rational_from_integer(0) {
            continue;
        }
        let negative = coefficient < &rational_from_integer(0);
        let magnitude = if negative {
            -coefficient.clone()
        } else {
            coefficient.clone()
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if magnitude == rational_from_integer(1) {
            out.push_str(label);
        } else {
            out.push_str(&format!("{}*{}", rational_to_string(&magnitude), label));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn members_display(members: &[DivisorClass]) -> String {
    if members.is_empty() {
        return "none".to_owned();
    }
    members
        .iter()
        .map(combination_display)
        .collect::<Vec<_>>()
        .join("; ")
}

fn triple_display(values: [&Rational; 3]) -> String {
    format!(
        "({}, {}, {})",
        rational_to_string(values[0]),
        rational_to_string(values[1]),
        rational_to_string(values[2])
    )
}

fn condition_display(condition: Option<&SquareCondition>) -> String {
    match condition {
        Some(c) => triple_display([&c.leading, &c.linear, &c.constant]),
        None => "none".to_owned(),
    }
}

fn parse_triple(values: &[ExactValue; 3], context: &str) -> Result<[Rational; 3], EvalError> {
    Ok([
        values[0].to_rational(context)?,
        values[1].to_rational(context)?,
        values[2].to_rational(context)?,
    ])
}

fn integrality_note(integral: bool) -> &'static str {
    if integral {
        "integral"
    } else {
        "non-integral"
    }
}

fn obstruction_cases_display(cases: &[(i64, Vec<i64>)], boundary: bool) -> String {
    let mut parts: Vec<String> = cases
        .iter()
        .map(|(contact, squares)| {
            let squares: Vec<String> = squares.iter().map(|s| s.to_string()).collect();
            format!("contact {contact}: squares {{{}}}", squares.join(", "))
        })
        .collect();
    parts.push(format!(
        "boundary case: {}",
        if boundary { "yes" } else { "no" }
    ));
    parts.join("; ")
}

fn analysis_pairs(analysis: &ReiderAnalysis) -> Vec<(i64, Vec<i64>)> {
    analysis
        .cases
        .iter()
        .map(|case| (case.bl, case.b_squared.clone()))
        .collect()
}

fn spec_pairs(cases: &[ObstructionCaseSpec]) -> Vec<(i64, Vec<i64>)> {
    cases
        .iter()
        .map(|case| (case.contact, case.squares.clone()))
        .collect()
}

fn family_display(family: &ConstrainedFamily) -> String {
    format!(
        "condition {}; members: {}",
        condition_display(family.condition.as_ref()),
        members_display(&family.members)
    )
}

fn expected_family_display(condition: Option<&[Rational; 3]>, members: &[DivisorClass]) -> String {
    let condition = match condition {
        Some([l, m, c]) => triple_display([l, m, c]),
        None => "none".to_owned(),
    };
    format!(
        "condition {}; members: {}",
        condition,
        members_display(members)
    )
}

fn condition_matches(actual: Option<&SquareCondition>, expected: Option<&[Rational; 3]>) -> bool {
    match (actual, expected) {
        (Some(a), Some([l, m, c])) => &a.leading == l && &a.linear == m && &a.constant == c,
        (None, None) => true,
        _ => false,
    }
}

/// The computed/expected/verdict triple of one evaluated check.
struct Outcome {
    computed: String,
    expected: String,
    pass: bool,
}

fn finish(
    id: &str,
    description: &str,
    body: Result<Outcome, EvalError>,
    fallback_expected: String,
) -> Result<AssertionResult, ScenarioError> {
    match body {
        Ok(outcome) => Ok(AssertionResult {
            id: id.to_owned(),
            description: description.to_owned(),
            computed: outcome.computed,
            expected: outcome.expected,
            status: if outcome.pass {
                AssertionStatus::Pass
            } else {
                AssertionStatus::Fail
            },
        }),
        Err(EvalError::Data(message)) => Ok(AssertionResult {
            id: id.to_owned(),
            description: description.to_owned(),
            computed: format!("error: {message}"),
            expected: fallback_expected,
            status: AssertionStatus::Fail,
        }),
        Err(EvalError::Abort(error)) => Err(error),
    }
}

/// Evaluates one assertion. Returns `Err` only for structural scenario
/// problems; every mathematical outcome becomes a report row.
pub fn evaluate(
    world: &World,
    assertion: &AssertionSpec,
) -> Result<AssertionResult, ScenarioError> {
    let id = &assertion.id;
    if let Check::Assumed {} = assertion.check {
        return Ok(AssertionResult {
            id: id.clone(),
            description: assertion.description.clone(),
            computed: "assumed".to_owned(),
            expected: "assumed".to_owned(),
            status: AssertionStatus::Assumed,
        });
    }
    let body = evaluate_check(world, assertion);
    finish(
        id,
        &assertion.description,
        body,
        "(not rendered)".to_owned(),
    )
}

fn evaluate_check(world: &World, assertion: &AssertionSpec) -> Result<Outcome, EvalError> {
    let id = &assertion.id;
    match &assertion.check {
        Check::Assumed {} => unreachable!("handled by the caller"),
        Check::CurveTable { family } => {
            let data = world
                .families
                .get(family)
                .expect("family references are validated before evaluation");
            let mismatches =
                crate::curves::verify_table(&data.records, &data.table, &data.extra_meetings)?;
            let computed = if mismatches.is_empty() {
                "0 mismatches".to_owned()
            } else {
                let parts: Vec<String> = mismatches
                    .iter()
                    .map(|m| {
                        format!(
                            "({}, {}) computed {} expected {}",
                            m.row,
                            m.col,
                            rational_to_string(&m.computed),
                            rational_to_string(&m.expected)
                        )
                    })
                    .collect();
                format!("{} mismatches: {}", mismatches.len(), parts.join("; "))
            };
            Ok(Outcome {
                pass: mismatches.is_empty(),
                computed,
                expected: "0 mismatches".to_owned(),
            })
        }
        Check::ArithmeticGenera { family, expected } => {
            let data = world
                .families
                .get(family)
                .expect("family references are validated before evaluation");
            let context = format!("assertion {id:?}");
            let mut computed_parts = Vec::new();
            let mut expected_parts = Vec::new();
            let mut pass = true;
            for entry in expected {
                let record = data
                    .records
                    .iter()
                    .find(|r| r.label == entry.label)
                    .ok_or_else(|| EvalError::Data(format!("no curve named {:?}", entry.label)))?;
                let computed = crate::curves::record_arithmetic_genus(record);
                let wanted = entry.value.to_rational(&context)?;
                pass &= rational_from_integer(computed) == wanted;
                computed_parts.push(format!("{} {}", entry.label, computed));
                expected_parts.push(format!("{} {}", entry.label, rational_to_string(&wanted)));
            }
            Ok(Outcome {
                pass,
                computed: computed_parts.join(", "),
                expected: expected_parts.join(", "),
            })
        }
        Check::Determinant {
            surface,
            labels,
            expected,
        } => {
            let lattice = world.surface(surface)?;
            let determinant = match labels {
                Some(labels) => {
                    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
                    lattice.sub_gram(&refs)?.determinant()?
                }
                None => lattice.gram().determinant()?,
            };
            let wanted = expected.to_rational(&format!("assertion {id:?}"))?;
            Ok(Outcome {
                pass: determinant == wanted,
                computed: rational_to_string(&determinant),
                expected: rational_to_string(&wanted),
            })
        }
        Check::ClassSearch {
            surface,
            canonical_degree,
            self_intersection,
            expected,
        } => {
            let lattice = world.surface(surface)?;
            let context = format!("assertion {id:?}");
            let problem = SearchProblem::new(lattice, *canonical_degree, *self_intersection)?;
            let solutions = problem.enumerate_classes()?;
            let expected_classes = expected
                .iter()
                .map(|coords| class_from_coords(lattice, coords, &context))
                .collect::<Result<Vec<_>, _>>()?;
            let render = |classes: &[DivisorClass]| {
                let parts: Vec<String> = classes.iter().map(|c| c.coords_display()).collect();
                format!("{} classes: {}", classes.len(), parts.join("; "))
            };
            let found: Vec<DivisorClass> = solutions.iter().map(|s| s.class.clone()).collect();
            Ok(Outcome {
                pass: found == expected_classes,
                computed: render(&found),
                expected: render(&expected_classes),
            })
        }
        Check::PairingProfile {
            surface,
            coords,
            against,
            expected,
        } => {
            let lattice = world.surface(surface)?;
            let context = format!("assertion {id:?}");
            let class = class_from_coords(lattice, coords, &context)?;
            let refs: Vec<&str> = against.iter().map(String::as_str).collect();
            let profile = pairing_profile(&class, &refs)?;
            let wanted = expected
                .iter()
                .map(|v| v.to_rational(&context))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome {
                pass: profile == wanted,
                computed: profile_display(&profile),
                expected: profile_display(&wanted),
            })
        }
        Check::MeetingObstruction {
            surface,
            left,
            right,
            expected,
            expect_integral,
        } => {
            let lattice = world.surface(surface)?;
            let context = format!("assertion {id:?}");
            let left = class_from_coords(lattice, left, &context)?;
            let right = class_from_coords(lattice, right, &context)?;
            let value = left.pair(&right)?;
            let obstruction = integrality_obstruction(&left, &right)?;
            let integral = obstruction.is_none();
            let wanted = expected.to_rational(&context)?;
            Ok(Outcome {
                pass: value == wanted && integral == *expect_integral,
                computed: format!(
                    "{} ({})",
                    rational_to_string(&value),
                    integrality_note(integral)
                ),
                expected: format!(
                    "{} ({})",
                    rational_to_string(&wanted),
                    integrality_note(*expect_integral)
                ),
            })
        }
        Check::CanonicalClass {
            quotient,
            expected,
            expected_square,
        } => {
            let built = world.quotient(quotient)?;
            let context = format!("assertion {id:?}");
            let canonical = world.quotient_canonical(quotient)?;
            let wanted = combination(built.lattice(), expected, &context)?;
            let wanted_square = expected_square.to_rational(&context)?;
            let square = canonical.self_intersection()?;
            Ok(Outcome {
                pass: canonical == wanted && square == wanted_square,
                computed: format!(
                    "{}; square {}",
                    combination_display(&canonical),
                    rational_to_string(&square)
                ),
                expected: format!(
                    "{}; square {}",
                    combination_display(&wanted),
                    rational_to_string(&wanted_square)
                ),
            })
        }
        Check::Adjunction {
            surface,
            canonical,
            genera,
        } => {
            let lattice = world.surface(surface)?;
            let context = format!("assertion {id:?}");
            let canonical = combination(lattice, canonical, &context)?;
            let mut violations = Vec::new();
            for entry in genera {
                let class = lattice.named_class(&entry.label)?;
                let degree = canonical.pair(&class)?;
                let square = class.self_intersection()?;
                let genus = entry.value.to_rational(&context)?;
                let required =
                    rational_from_integer(2) * &genus - rational_from_integer(2) - &square;
                if degree != required {
                    violations.push(entry.label.clone());
                }
            }
            let total = genera.len();
            Ok(Outcome {
                pass: violations.is_empty(),
                computed: if violations.is_empty() {
                    format!("{total} of {total} curves close under adjunction")
                } else {
                    format!("violations at: {}", violations.join(", "))
                },
                expected: format!("{total} of {total} curves close under adjunction"),
            })
        }
        Check::Pullback {
            quotient,
            of,
            expected,
            expected_square,
            expected_canonical_pairing,
        } => {
            let built = world.quotient(quotient)?;
            let context = format!("assertion {id:?}");
            let base = combination(built.lattice(), of, &context)?;
            let pulled = pullback(built, &base)?;
            let wanted = combination(built.lattice(), expected, &context)?;
            let wanted_square = expected_square.to_rational(&context)?;
            let wanted_canonical = expected_canonical_pairing.to_rational(&context)?;
            let square = pulled.self_intersection()?;
            let canonical = world.quotient_canonical(quotient)?;
            let canonical_pairing = canonical.pair(&pulled)?;
            let render = |class: &DivisorClass, square: &Rational, k: &Rational| {
                format!(
                    "{}; square {}; canonical pairing {}",
                    combination_display(class),
                    rational_to_string(square),
                    rational_to_string(k)
                )
            };
            Ok(Outcome {
                pass: pulled == wanted
                    && square == wanted_square
                    && canonical_pairing == wanted_canonical,
                computed: render(&pulled, &square, &canonical_pairing),
                expected: render(&wanted, &wanted_square, &wanted_canonical),
            })
        }
        Check::FibreReduction {
            quotient,
            of,
            subtract,
            divide_by,
            expect_integral_coords,
        } => {
            let built = world.quotient(quotient)?;
            let context = format!("assertion {id:?}");
            if *divide_by == 0 {
                return Err(EvalError::Data("division by zero".to_owned()));
            }
            let base = combination(built.lattice(), of, &context)?;
            let fibre = pullback(built, &base)?;
            let correction = combination(built.lattice(), subtract, &context)?;
            let scale = Rational::new(1.into(), BigInt::from(*divide_by));
            let candidate = fibre.sub(&correction)?.scale(&scale);
            let integral_coords = candidate.has_integral_coords();
            let pairings_integral = candidate.pairings_against_basis().iter().all(is_integer);
            let render = |coords: bool, pairings: bool| {
                format!(
                    "coordinates {}; basis pairings {}",
                    integrality_note(coords),
                    if pairings {
                        "all integral"
                    } else {
                        "not all integral"
                    }
                )
            };
            Ok(Outcome {
                pass: integral_coords == *expect_integral_coords && pairings_integral,
                computed: render(integral_coords, pairings_integral),
                expected: render(*expect_integral_coords, true),
            })
        }
        Check::Equivalences { surface, relations } => {
            let lattice = world.surface(surface)?;
            let context = format!("assertion {id:?}");
            let total = relations.len();
            let mut failures = Vec::new();
            for (index, relation) in relations.iter().enumerate() {
                let lhs = combination(lattice, &relation.lhs, &context)?;
                let rhs = combination(lattice, &relation.rhs, &context)?;
                if !lhs.numerically_equal(&rhs)? {
                    failures.push(format!(
                        "relation {index}: {} differs from {}",
                        combination_display(&lhs),
                        combination_display(&rhs)
                    ));
                }
            }
            Ok(Outcome {
                pass: failures.is_empty(),
                computed: if failures.is_empty() {
                    format!("{total} of {total} relations hold")
                } else {
                    failures.join("; ")
                },
                expected: format!("{total} of {total} relations hold"),
            })
        }
        Check::ObstructionCases {
            part,
            polarization_square,
            expected,
            expect_boundary_case,
        } => {
            let part = parse_part(part).expect("part names are validated before evaluation");
            let analysis = reider_cases(part, *polarization_square)?;
            let computed_pairs = analysis_pairs(&analysis);
            let expected_pairs = spec_pairs(expected);
            Ok(Outcome {
                pass: computed_pairs == expected_pairs
                    && analysis.special_case == *expect_boundary_case,
                computed: obstruction_cases_display(&computed_pairs, analysis.special_case),
                expected: obstruction_cases_display(&expected_pairs, *expect_boundary_case),
            })
        }
        Check::ImageGenus {
            genus,
            degree,
            branch_points,
            expected,
        } => {
            let computed = quotient_genus(*genus, *degree, *branch_points)?;
            Ok(Outcome {
                pass: computed == *expected,
                computed: computed.to_string(),
                expected: expected.to_string(),
            })
        }
        Check::SurfaceNumerics {
            surface: _,
            canonical_square,
            chi,
            irregularity,
            geometric_genus,
            expected_euler,
            expected_b2,
            expected_h11,
        } => {
            let invariants =
                noether_invariants(*canonical_square, *chi, *irregularity, *geometric_genus);
            let render =
                |e: i64, b2: i64, h11: i64| format!("(euler, b2, h11) = ({e}, {b2}, {h11})");
            Ok(Outcome {
                pass: invariants.euler == *expected_euler
                    && invariants.b2 == *expected_b2
                    && invariants.h11 == *expected_h11,
                computed: render(invariants.euler, invariants.b2, invariants.h11),
                expected: render(*expected_euler, *expected_b2, *expected_h11),
            })
        }
        Check::DerivedTable {
            surface,
            labels,
            expected,
        } => {
            let lattice = world.surface(surface)?;
            let context = format!("assertion {id:?}");
            let n = labels.len();
            if expected.len() != n || expected.iter().any(|row| row.len() != n) {
                return Err(EvalError::Abort(ScenarioError::TableShape {
                    name: format!("assertion {id:?}"),
                }));
            }
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            let derived = lattice.sub_gram(&refs)?;
            let mut wanted = RationalMatrix::zero(n, n);
            for (i, row) in expected.iter().enumerate() {
                for (j, value) in row.iter().enumerate() {
                    wanted.set(i, j, value.to_rational(&context)?);
                }
            }
            let mut mismatches = Vec::new();
            for i in 0..n {
                for j in i..n {
                    if derived.get(i, j) != wanted.get(i, j) {
                        mismatches.push(format!(
                            "({}, {}) computed {} expected {}",
                            labels[i],
                            labels[j],
                            rational_to_string(derived.get(i, j)),
                            rational_to_string(wanted.get(i, j))
                        ));
                    }
                }
            }
            let total = n * n;
            Ok(Outcome {
                pass: mismatches.is_empty(),
                computed: if mismatches.is_empty() {
                    format!("all {total} entries match")
                } else {
                    format!("mismatches: {}", mismatches.join("; "))
                },
                expected: format!("all {total} entries match"),
            })
        }
        Check::ActionTrace {
            involution,
            span,
            image_override,
            expected,
        } => {
            let data = world.involution(involution);
            let lattice = world.quotient(&data.quotient)?.lattice();
            let context = format!("assertion {id:?}");
            let refs: Vec<&str> = span.iter().map(String::as_str).collect();
            let action = match image_override {
                None => action_from_spec(lattice, &refs, &data.spec)?,
                Some(over) => {
                    let mut images = Vec::with_capacity(refs.len());
                    for label in &refs {
                        if *label == over.curve {
                            images.push(combination(lattice, &over.image, &context)?);
                        } else {
                            let generator = lattice.named_class(label)?;
                            images.push(data.spec.apply(&generator)?);
                        }
                    }
                    action_from_images(lattice, &refs, &images)?
                }
            };
            let trace = action.trace();
            let wanted = expected.to_rational(&context)?;
            Ok(Outcome {
                pass: trace == wanted,
                computed: rational_to_string(&trace),
                expected: rational_to_string(&wanted),
            })
        }
        Check::ImageCandidates {
            involution,
            span,
            known,
            curve,
            expected_condition,
            expected_members,
        } => {
            let data = world.involution(involution);
            let lattice = world.quotient(&data.quotient)?.lattice();
            let context = format!("assertion {id:?}");
            let span_refs: Vec<&str> = span.iter().map(String::as_str).collect();
            let known_refs: Vec<&str> = known.iter().map(String::as_str).collect();
            let family = image_candidates(lattice, &span_refs, &known_refs, &data.spec, curve)?;
            let wanted_condition = parse_triple(expected_condition, &context)?;
            let wanted_members = expected_members
                .iter()
                .map(|terms| combination(lattice, terms, &context))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome {
                pass: condition_matches(family.condition.as_ref(), Some(&wanted_condition))
                    && family.members == wanted_members,
                computed: family_display(&family),
                expected: expected_family_display(Some(&wanted_condition), &wanted_members),
            })
        }
        Check::FixedPairings { caps, expected } => {
            let computed = admissible_fixed_pairings(*caps);
            let render = |triples: &[[i64; 3]]| {
                let parts: Vec<String> = triples
                    .iter()
                    .map(|[a, b, c]| format!("({a}, {b}, {c})"))
                    .collect();
                format!("[{}]", parts.join(", "))
            };
            Ok(Outcome {
                pass: &computed == expected,
                computed: render(&computed),
                expected: render(expected),
            })
        }
        Check::FixedLocusBudget {
            trace,
            sign,
            expected_euler,
            expected_square,
            expected_offset,
        } => {
            let context = format!("assertion {id:?}");
            let trace = trace.to_rational(&context)?;
            let budget = fixed_locus_budget(&trace, *sign)?;
            let wanted_euler = expected_euler.to_rational(&context)?;
            let wanted_square = expected_square.to_rational(&context)?;
            let wanted_offset = expected_offset.to_rational(&context)?;
            Ok(Outcome {
                pass: budget.euler == wanted_euler
                    && budget.total_square == wanted_square
                    && budget.canonical_offset == wanted_offset,
                computed: triple_display([
                    &budget.euler,
                    &budget.total_square,
                    &budget.canonical_offset,
                ]),
                expected: triple_display([&wanted_euler, &wanted_square, &wanted_offset]),
            })
        }
        Check::FixedCurveFamily {
            quotient,
            ansatz,
            constraints,
            square,
            expected_condition,
            expected_members,
        } => {
            let built = world.quotient(quotient)?;
            let lattice = built.lattice();
            let context = format!("assertion {id:?}");
            let ansatz = ansatz
                .iter()
                .map(|terms| combination(lattice, terms, &context))
                .collect::<Result<Vec<_>, _>>()?;
            let mut parsed_constraints = Vec::with_capacity(constraints.len());
            for constraint in constraints {
                let probe = combination(lattice, &constraint.probe, &context)?;
                let value = constraint.value.to_rational(&context)?;
                parsed_constraints.push((probe, value));
            }
            let square = square.to_rational(&context)?;
            let family = constrained_classes(&ansatz, &parsed_constraints, &square)?;
            let wanted_condition = match expected_condition {
                Some(triple) => Some(parse_triple(triple, &context)?),
                None => None,
            };
            let wanted_members = expected_members
                .iter()
                .map(|terms| combination(lattice, terms, &context))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome {
                pass: condition_matches(family.condition.as_ref(), wanted_condition.as_ref())
                    && family.members == wanted_members,
                computed: family_display(&family),
                expected: expected_family_display(wanted_condition.as_ref(), &wanted_members),
            })
        }
        Check::DiophantineReduction {
            quotient,
            ansatz,
            square,
            points_offset,
            expected_equation,
            expected_scale,
            expected_shift,
            expect_integer_forcing,
            modulus,
            expect_modulus_obstruction,
            search_radius,
            expected_solutions,
        } => {
            let built = world.quotient(quotient)?;
            let lattice = built.lattice();
            let context = format!("assertion {id:?}");
            let generators = ansatz
                .iter()
                .map(|terms| combination(lattice, terms, &context))
                .collect::<Result<Vec<_>, _>>()?;
            let square = square.to_rational(&context)?;
            let offset = points_offset.to_rational(&context)?;
            let canonical = world.quotient_canonical(quotient)?;
            let reduced = reduce_to_diophantine(
                [&generators[0], &generators[1]],
                &square,
                &canonical,
                &offset,
            )?;
            let wanted_equation = parse_triple(expected_equation, &context)?;
            let wanted_scale = expected_scale.to_rational(&context)?;
            let wanted_shift = expected_shift.to_rational(&context)?;
            let forces = reduced.forces_integer_x();
            let ruled_out = reduced.modulus_rules_out(*modulus)?;
            let solutions = reduced.integer_solutions_within(*search_radius)?;
            let equation = [
                Rational::from_integer(reduced.x_squared.clone()),
                Rational::from_integer(reduced.s_squared.clone()),
                Rational::from_integer(reduced.constant.clone()),
            ];
            let render = |eq: [&Rational; 3],
                          scale: &Rational,
                          shift: &Rational,
                          forces: bool,
                          ruled: bool,
                          count: i64| {
                format!(
                    "{}*x^2 = {}*s^2 + {} with s = {}*m + {}; integer x forced: {}; mod {} obstruction: {}; solutions within {}: {}",
                    rational_to_string(eq[0]),
                    rational_to_string(eq[1]),
                    rational_to_string(eq[2]),
                    rational_to_string(scale),
                    rational_to_string(shift),
                    if forces { "yes" } else { "no" },
                    modulus,
                    if ruled { "yes" } else { "no" },
                    search_radius,
                    count
                )
            };
            let count = i64::try_from(solutions.len()).expect("solution count fits i64");
            Ok(Outcome {
                pass: equation[0] == wanted_equation[0]
                    && equation[1] == wanted_equation[1]
                    && equation[2] == wanted_equation[2]
                    && reduced.point_scale == wanted_scale
                    && reduced.point_shift == wanted_shift
                    && forces == *expect_integer_forcing
                    && ruled_out == *expect_modulus_obstruction
                    && count == *expected_solutions,
                computed: render(
                    [&equation[0], &equation[1], &equation[2]],
                    &reduced.point_scale,
                    &reduced.point_shift,
                    forces,
                    ruled_out,
                    count,
                ),
                expected: render(
                    [
                        &wanted_equation[0],
                        &wanted_equation[1],
                        &wanted_equation[2],
                    ],
                    &wanted_scale,
                    &wanted_shift,
                    *expect_integer_forcing,
                    *expect_modulus_obstruction,
                    *expected_solutions,
                ),
            })
        }
        Check::ConfigurationParity {
            involution,
            chain,
            chain_count,
            labels,
            expected_fixed,
            expect_obstruction,
        } => {
            let data = world.involution(involution);
            let lattice = match &data.downstairs {
                Ok(lattice) => lattice,
                Err(message) => return Err(EvalError::Data(message.clone())),
            };
            let context = format!("assertion {id:?}");
            if *chain_count < 0 {
                return Err(EvalError::Data("negative chain count".to_owned()));
            }
            let chain = hj_chain(chain[0], chain[1])?;
            let mut blocks = Vec::new();
            for _ in 0..*chain_count {
                blocks.push(chain.gram());
            }
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            blocks.push(lattice.sub_gram(&refs)?);
            let parity = configuration_parity(&blocks)?;
            let wanted = expected_fixed.to_rational(&context)?;
            let fixed = Rational::from_integer(parity.fixed_determinant.clone());
            let obstructs = parity.obstructs_for_all_point_counts();
            let render = |value: &Rational, obstructs: bool| {
                format!(
                    "fixed determinant {}; square for some point count: {}",
                    rational_to_string(value),
                    if obstructs { "no" } else { "yes" }
                )
            };
            Ok(Outcome {
                pass: fixed == wanted && obstructs == *expect_obstruction,
                computed: render(&fixed, obstructs),
                expected: render(&wanted, *expect_obstruction),
            })
        }
        Check::DescentMeeting {
            involution,
            of,
            expected_self,
            expected,
            expect_integral,
        } => {
            let data = world.involution(involution);
            let built = world.quotient(&data.quotient)?;
            let context = format!("assertion {id:?}");
            let base = combination(built.lattice(), of, &context)?;
            let class = pullback(built, &base)?;
            let self_pairing = class.self_intersection()?;
            let image = data.spec.apply(&class)?;
            let involutive = data.spec.apply(&image)? == class;
            let meeting = class.pair(&image)?;
            let integral = is_integer(&meeting);
            let wanted_self = expected_self.to_rational(&context)?;
            let wanted = expected.to_rational(&context)?;
            let render =
                |self_pairing: &Rational, meeting: &Rational, integral: bool, involutive: bool| {
                    format!(
                        "self-pairing {}; meeting with image {} ({}); action involutive: {}",
                        rational_to_string(self_pairing),
                        rational_to_string(meeting),
                        integrality_note(integral),
                        if involutive { "yes" } else { "no" }
                    )
                };
            Ok(Outcome {
                pass: self_pairing == wanted_self
                    && meeting == wanted
                    && integral == *expect_integral
                    && involutive,
                computed: render(&self_pairing, &meeting, integral, involutive),
                expected: render(&wanted_self, &wanted, *expect_integral, true),
            })
        }
    }
}
