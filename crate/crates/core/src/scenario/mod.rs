//! Data-driven replay: scenario files describe surfaces and assertions;
//! running one produces an ordered report of exact comparisons.
//!
//! A scenario is JSON with top-level keys `name`, `lattices`, `curves`,
//! `quotients`, `involutions`, `assertions`. Non-integer numbers are exact
//! rational strings such as `"8/9"`. Structural mistakes (bad references,
//! malformed tables, duplicate ids) abort the run with an error naming the
//! offending entry; a failed comparison or a construction error inside one
//! assertion marks that assertion failed and the run continues.

mod builtin;
mod eval;
mod spec;
mod world;

use thiserror::Error;

use crate::report::ReplayReport;

pub use builtin::builtin_scenario;
pub use eval::combination_display;
pub use spec::{
    AssertionSpec, Check, ConstraintSpec, CurveFamilySpec, EmbeddingSpec, ExactValue,
    ImageOverrideSpec, InvolutionQuotientSpec, LabeledValue, LatticeSpec, MeetingSpec,
    ObstructionCaseSpec, OrbitEntry, QuotientSpec, RelationSpec, Scenario, TableSpec, TermSpec,
};
pub use world::World;

/// Name of the shipped scenario replaying the full argument.
pub const BUILTIN_NAME: &str = "cartwright-steger";

const BUILTIN_JSON: &str = include_str!("../../../../scenarios/cartwright-steger.json");

/// Structural failures that abort a run before or during evaluation.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("scenario JSON is malformed: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("no built-in scenario named {name:?}")]
    UnknownBuiltin { name: String },
    #[error("duplicate object name {name:?}")]
    DuplicateName { name: String },
    #[error("duplicate assertion id {id:?}")]
    DuplicateAssertion { id: String },
    #[error("{context} references unknown surface {name:?}")]
    UnknownSurface { context: String, name: String },
    #[error("{context} references unknown curve family {name:?}")]
    UnknownFamily { context: String, name: String },
    #[error("{context} references unknown quotient {name:?}")]
    UnknownQuotient { context: String, name: String },
    #[error("{context} references unknown involution {name:?}")]
    UnknownInvolution { context: String, name: String },
    #[error("quotient {quotient:?} names canonical transform {label:?}, which no curve produces")]
    UnknownCanonicalTransform { quotient: String, label: String },
    #[error("curve family {family:?} has a meeting entry for unknown curve {label:?}")]
    UnknownCurve { family: String, label: String },
    #[error("curve family {family:?} lists the meeting ({a}, {b}) twice")]
    DuplicateMeeting {
        family: String,
        a: String,
        b: String,
    },
    #[error("{context}: {value:?} is not an exact rational")]
    BadRational { context: String, value: String },
    #[error("table for {name:?} has the wrong shape")]
    TableShape { name: String },
    #[error("table for {name:?} must list exactly the record labels, in order")]
    TableLabels { name: String },
    #[error("table for {name:?} is not symmetric")]
    TableNotSymmetric { name: String },
    #[error("assertion {id:?} names unknown criterion part {part:?}")]
    BadObstructionPart { id: String, part: String },
    #[error("assertion {id:?} needs exactly 2 ansatz generators, got {got}")]
    AnsatzShape { id: String, got: usize },
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
    #[error(transparent)]
    Curve(#[from] crate::curves::CurveError),
}

/// Parses a scenario from JSON text.
pub fn parse_scenario(json: &str) -> Result<Scenario, ScenarioError> {
    Ok(serde_json::from_str(json)?)
}

/// The embedded JSON of a built-in scenario, if one has that name.
pub fn builtin_json(name: &str) -> Option<&'static str> {
    (name == BUILTIN_NAME).then_some(BUILTIN_JSON)
}

/// Validates and evaluates a scenario into a report. The report keeps the
/// assertion order of the scenario.
pub fn run_scenario(scenario: &Scenario) -> Result<ReplayReport, ScenarioError> {
    let world = World::build(scenario)?;
    let mut report = ReplayReport::new(scenario.name.clone());
    for assertion in &scenario.assertions {
        report.push(eval::evaluate(&world, assertion)?);
    }
    Ok(report)
}

/// Runs a built-in scenario from its embedded JSON.
pub fn run_builtin(name: &str) -> Result<ReplayReport, ScenarioError> {
    let json = builtin_json(name).ok_or_else(|| ScenarioError::UnknownBuiltin {
        name: name.to_owned(),
    })?;
    run_scenario(&parse_scenario(json)?)
}
