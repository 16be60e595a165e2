//! Serde-facing description of a replay scenario.
//!
//! A scenario file lists surfaces (lattices, curve configurations, cyclic
//! quotients, involution quotients) and a sequence of assertions over them.
//! Exact values appear either as bare JSON integers or as rational strings
//! such as `"8/9"`; nothing in a scenario is ever a float.

use serde::{Deserialize, Serialize};

use crate::curves::{CurveRecord, MarkedPoint};
use crate::exact::{parse_rational, rational_from_integer, Rational};

use super::ScenarioError;

/// An exact number in scenario JSON: a bare integer or a rational string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactValue {
    Integer(i64),
    Text(String),
}

impl ExactValue {
    /// Parses into an exact rational; `context` names the field in errors.
    pub fn to_rational(&self, context: &str) -> Result<Rational, ScenarioError> {
        match self {
            ExactValue::Integer(n) => Ok(rational_from_integer(*n)),
            ExactValue::Text(text) => {
                parse_rational(text).map_err(|_| ScenarioError::BadRational {
                    context: context.to_owned(),
                    value: text.clone(),
                })
            }
        }
    }

    pub fn integer(n: i64) -> Self {
        ExactValue::Integer(n)
    }

    pub fn text(value: impl Into<String>) -> Self {
        ExactValue::Text(value.into())
    }
}

/// One coefficient-label term of a divisor class combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coefficient: ExactValue,
    pub label: String,
}

impl TermSpec {
    pub fn new(coefficient: ExactValue, label: impl Into<String>) -> Self {
        Self {
            coefficient,
            label: label.into(),
        }
    }
}

/// A label paired with an expected exact value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledValue {
    pub label: String,
    pub value: ExactValue,
}

/// A lattice given by a basis, its Gram matrix, and optional classes
/// embedded by their pairings against the basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub name: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<ExactValue>>,
    #[serde(default)]
    pub embeddings: Vec<EmbeddingSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub label: String,
    /// Pairings against the basis, in basis order.
    pub pairings: Vec<ExactValue>,
}

/// A configuration of curves on one surface: marked points, per-curve
/// singularity records, extra pairwise meetings, and the pinned pairing
/// table the records must reproduce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFamilySpec {
    pub name: String,
    pub marked_points: Vec<MarkedPoint>,
    pub records: Vec<CurveRecord>,
    #[serde(default)]
    pub extra_meetings: Vec<MeetingSpec>,
    pub expected_table: TableSpec,
    /// When set, curves of genus at most one are rejected outright.
    #[serde(default)]
    pub ball_quotient: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeetingSpec {
    pub pair: [String; 2],
    pub count: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<ExactValue>>,
}

/// A cyclic quotient of the surface carrying a curve family, resolved into
/// a lattice of strict transforms and exceptional chains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub name: String,
    pub group_order: i64,
    /// Name of the curve family giving the invariant curves and table.
    pub curve_family: String,
    /// Fixed points not on any listed curve, appended to the family's
    /// marked points with multiplicity zero on every curve.
    #[serde(default)]
    pub additional_points: Vec<MarkedPoint>,
    /// Strict transform whose pullback, corrected by discrepancies, is the
    /// canonical class of the resolution.
    pub canonical_transform: String,
}

/// A fixed-point-free involution on a quotient resolution, described by its
/// orbits on the generating curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionQuotientSpec {
    pub name: String,
    pub quotient: String,
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitEntry {
    Swap { a: String, b: String, image: String },
    Invariant { curve: String, image: String },
}

/// A left-hand side and right-hand side expected to be numerically equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    pub lhs: Vec<TermSpec>,
    pub rhs: Vec<TermSpec>,
}

/// One obstructing configuration of the adjoint-system criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCaseSpec {
    /// Pairing of the obstructing class with the polarizing class.
    pub contact: i64,
    /// Allowed squares of the obstructing class.
    pub squares: Vec<i64>,
}

/// A pairing constraint: the probe class must pair to `value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub probe: Vec<TermSpec>,
    pub value: ExactValue,
}

/// Override for one generator image when building an involution action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageOverrideSpec {
    pub curve: String,
    pub image: Vec<TermSpec>,
}

/// One assertion: an id, a human-readable description, and the check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionSpec {
    pub id: String,
    pub description: String,
    #[serde(flatten)]
    pub check: Check,
}

/// The checks a scenario can request. Every variant compares exact values;
/// `Assumed` records an input taken as given without computing anything.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// Rebuild a curve family's pairing table from its records and compare
    /// every entry with the pinned table.
    CurveTable { family: String },
    /// Arithmetic genus of each listed curve from its singularity data.
    ArithmeticGenera {
        family: String,
        expected: Vec<LabeledValue>,
    },
    /// Determinant of a surface's Gram matrix, or of the sub-Gram matrix of
    /// the listed generators.
    Determinant {
        surface: String,
        #[serde(default)]
        labels: Option<Vec<String>>,
        expected: ExactValue,
    },
    /// Enumerate all classes with the given canonical degree and square;
    /// compare the ordered coordinate list.
    ClassSearch {
        surface: String,
        canonical_degree: i64,
        self_intersection: i64,
        expected: Vec<Vec<ExactValue>>,
    },
    /// Pairings of one class, given by coordinates, against named classes.
    PairingProfile {
        surface: String,
        coords: Vec<ExactValue>,
        against: Vec<String>,
        expected: Vec<ExactValue>,
    },
    /// Pairing of two classes given by coordinates, with an integrality
    /// verdict.
    MeetingObstruction {
        surface: String,
        left: Vec<ExactValue>,
        right: Vec<ExactValue>,
        expected: ExactValue,
        expect_integral: bool,
    },
    /// The canonical class of a quotient resolution, rebuilt from the
    /// branch transform and discrepancies, against a pinned combination.
    CanonicalClass {
        quotient: String,
        expected: Vec<TermSpec>,
        expected_square: ExactValue,
    },
    /// Adjunction `K.C = 2 p_a - 2 - C^2` for every listed curve, with the
    /// canonical class given as a combination.
    Adjunction {
        surface: String,
        canonical: Vec<TermSpec>,
        genera: Vec<LabeledValue>,
    },
    /// Pullback of a combination of strict transforms across the
    /// exceptional chains, against pinned coordinates and pairings.
    Pullback {
        quotient: String,
        of: Vec<TermSpec>,
        expected: Vec<TermSpec>,
        expected_square: ExactValue,
        expected_canonical_pairing: ExactValue,
    },
    /// `(pullback(of) - subtract) / divide_by`: integrality of coordinates
    /// and of all pairings against the basis.
    FibreReduction {
        quotient: String,
        of: Vec<TermSpec>,
        subtract: Vec<TermSpec>,
        divide_by: i64,
        expect_integral_coords: bool,
    },
    /// Numerical equivalences between combinations of named classes.
    Equivalences {
        surface: String,
        relations: Vec<RelationSpec>,
    },
    /// The obstructing-case table of the adjoint-system criterion.
    ObstructionCases {
        part: String,
        polarization_square: i64,
        expected: Vec<ObstructionCaseSpec>,
        expect_boundary_case: bool,
    },
    /// Genus of a curve's image under a cyclic cover map.
    ImageGenus {
        genus: i64,
        degree: i64,
        branch_points: i64,
        expected: i64,
    },
    /// Euler number, second Betti number and middle Hodge number from the
    /// standard surface relations.
    SurfaceNumerics {
        surface: String,
        canonical_square: i64,
        chi: i64,
        irregularity: i64,
        geometric_genus: i64,
        expected_euler: i64,
        expected_b2: i64,
        expected_h11: i64,
    },
    /// Sub-Gram matrix of the listed generators against a pinned table.
    DerivedTable {
        surface: String,
        labels: Vec<String>,
        expected: Vec<Vec<ExactValue>>,
    },
    /// Trace of the involution action on the span of the listed
    /// generators, optionally overriding one generator's image.
    ActionTrace {
        involution: String,
        span: Vec<String>,
        #[serde(default)]
        image_override: Option<ImageOverrideSpec>,
        expected: ExactValue,
    },
    /// All solutions for the image of one curve under an involution that
    /// fixes the listed generators' images, pinned as a quadratic condition
    /// plus the member list.
    ImageCandidates {
        involution: String,
        span: Vec<String>,
        known: Vec<String>,
        curve: String,
        expected_condition: [ExactValue; 3],
        expected_members: Vec<Vec<TermSpec>>,
    },
    /// Balanced even pairing triples below the given caps.
    FixedPairings {
        caps: [i64; 3],
        expected: Vec<[i64; 3]>,
    },
    /// Fixed-locus Euler number, total square and canonical offset for a
    /// trace and transcendental sign.
    FixedLocusBudget {
        trace: ExactValue,
        sign: i64,
        expected_euler: ExactValue,
        expected_square: ExactValue,
        expected_offset: ExactValue,
    },
    /// All classes in the span of an ansatz meeting pairing constraints
    /// with a prescribed square, pinned as condition plus members.
    FixedCurveFamily {
        quotient: String,
        ansatz: Vec<Vec<TermSpec>>,
        constraints: Vec<ConstraintSpec>,
        square: ExactValue,
        expected_condition: Option<[ExactValue; 3]>,
        expected_members: Vec<Vec<TermSpec>>,
    },
    /// Eliminate the canonical constraint from a two-generator ansatz and
    /// pin the resulting quadratic Diophantine equation, its modular
    /// obstruction, and a brute-force search.
    DiophantineReduction {
        quotient: String,
        ansatz: Vec<Vec<TermSpec>>,
        square: ExactValue,
        points_offset: ExactValue,
        expected_equation: [ExactValue; 3],
        expected_scale: ExactValue,
        expected_shift: ExactValue,
        expect_integer_forcing: bool,
        modulus: i64,
        expect_modulus_obstruction: bool,
        search_radius: i64,
        expected_solutions: i64,
    },
    /// Determinant of a hypothetical fixed configuration: repeated chain
    /// blocks plus a sub-Gram block, and whether any number of isolated
    /// points makes it a perfect square.
    ConfigurationParity {
        involution: String,
        chain: [i64; 2],
        chain_count: i64,
        labels: Vec<String>,
        expected_fixed: ExactValue,
        expect_obstruction: bool,
    },
    /// Pull back a class to the resolution, apply the involution, and pin
    /// the pairing of the class with its image.
    DescentMeeting {
        involution: String,
        of: Vec<TermSpec>,
        expected_self: ExactValue,
        expected: ExactValue,
        expect_integral: bool,
    },
    /// An input taken as given; recorded, never computed.
    Assumed {},
}

/// A full scenario: named objects plus an ordered assertion list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub lattices: Vec<LatticeSpec>,
    #[serde(default)]
    pub curves: Vec<CurveFamilySpec>,
    #[serde(default)]
    pub quotients: Vec<QuotientSpec>,
    #[serde(default)]
    pub involutions: Vec<InvolutionQuotientSpec>,
    #[serde(default)]
    pub assertions: Vec<AssertionSpec>,
}
