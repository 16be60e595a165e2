//! Validation of a scenario into a ready-to-evaluate world.
//!
//! Structural problems (unparseable numbers, unknown references, malformed
//! tables, duplicate names) abort here with an error naming the offending
//! entry. Mathematical construction failures (an orbifold divisibility
//! violation, a half-integral quotient pairing) are captured per object and
//! surface later as failing assertions, so one broken object does not hide
//! the rest of the run.

use std::collections::{BTreeMap, BTreeSet};

use crate::curves::{self, CurveRecord, MarkedPoint};
use crate::exact::RationalMatrix;
use crate::lattice::Lattice;
use crate::quotient::{
    build_quotient_lattice, free_involution_quotient, transform_label, CyclicQuotientSetup,
    InvolutionSpec, OrbitSpec, QuotientLattice,
};
use crate::search::ReiderPart;

use super::spec::{
    AssertionSpec, Check, CurveFamilySpec, OrbitEntry, QuotientSpec, Scenario, TableSpec,
};
use super::ScenarioError;

/// A validated curve family, with the extras keyed for lookup and the
/// expected table parsed into an exact matrix.
pub struct FamilyData {
    pub points: Vec<MarkedPoint>,
    pub records: Vec<CurveRecord>,
    pub extra_meetings: BTreeMap<(String, String), i64>,
    pub table: RationalMatrix,
}

/// A validated involution: the orbit spec plus the downstairs lattice, or
/// the construction error that prevented it.
pub struct InvolutionData {
    pub quotient: String,
    pub spec: InvolutionSpec,
    pub downstairs: Result<Lattice, String>,
}

/// Everything a scenario's assertions can reference, fully resolved.
pub struct World {
    pub lattices: BTreeMap<String, Lattice>,
    pub families: BTreeMap<String, FamilyData>,
    pub quotients: BTreeMap<String, Result<QuotientLattice, String>>,
    pub quotient_specs: BTreeMap<String, QuotientSpec>,
    pub involutions: BTreeMap<String, InvolutionData>,
}

impl World {
    pub fn build(scenario: &Scenario) -> Result<Self, ScenarioError> {
        let mut names: BTreeSet<String> = BTreeSet::new();
        let mut claim = |name: &str| -> Result<(), ScenarioError> {
            if !names.insert(name.to_owned()) {
                return Err(ScenarioError::DuplicateName {
                    name: name.to_owned(),
                });
            }
            Ok(())
        };
        for spec in &scenario.lattices {
            claim(&spec.name)?;
        }
        for spec in &scenario.curves {
            claim(&spec.name)?;
        }
        for spec in &scenario.quotients {
            claim(&spec.name)?;
        }
        for spec in &scenario.involutions {
            claim(&spec.name)?;
        }

        let mut world = World {
            lattices: BTreeMap::new(),
            families: BTreeMap::new(),
            quotients: BTreeMap::new(),
            quotient_specs: BTreeMap::new(),
            involutions: BTreeMap::new(),
        };

        for spec in &scenario.lattices {
            world
                .lattices
                .insert(spec.name.clone(), build_lattice(spec)?);
        }
        for spec in &scenario.curves {
            world
                .families
                .insert(spec.name.clone(), build_family(spec)?);
        }
        for spec in &scenario.quotients {
            let family = world.families.get(&spec.curve_family).ok_or_else(|| {
                ScenarioError::UnknownFamily {
                    context: format!("quotient {:?}", spec.name),
                    name: spec.curve_family.clone(),
                }
            })?;
            if !family
                .records
                .iter()
                .any(|r| transform_label(&r.label) == spec.canonical_transform)
            {
                return Err(ScenarioError::UnknownCanonicalTransform {
                    quotient: spec.name.clone(),
                    label: spec.canonical_transform.clone(),
                });
            }
            for point in &spec.additional_points {
                let (n, a) = point.quotient_type;
                MarkedPoint::new(point.label.clone(), n, a)?;
            }
            let mut points = family.points.clone();
            points.extend(spec.additional_points.iter().cloned());
            let curves: Vec<CurveRecord> = family
                .records
                .iter()
                .map(|r| {
                    let mut record = r.clone();
                    record.mults.resize(points.len(), 0);
                    record
                })
                .collect();
            let setup = CyclicQuotientSetup {
                name: spec.name.clone(),
                group_order: spec.group_order,
                points,
                curves,
                pairing_table: family.table.clone(),
            };
            let built = build_quotient_lattice(&setup).map_err(|e| e.to_string());
            world.quotients.insert(spec.name.clone(), built);
            world.quotient_specs.insert(spec.name.clone(), spec.clone());
        }
        for spec in &scenario.involutions {
            let upstairs = world.quotients.get(&spec.quotient).ok_or_else(|| {
                ScenarioError::UnknownQuotient {
                    context: format!("involution {:?}", spec.name),
                    name: spec.quotient.clone(),
                }
            })?;
            let orbit_spec = InvolutionSpec {
                name: spec.name.clone(),
                orbits: spec
                    .orbits
                    .iter()
                    .map(|entry| match entry {
                        OrbitEntry::Swap { a, b, image } => OrbitSpec::Swap {
                            a: a.clone(),
                            b: b.clone(),
                            image: image.clone(),
                        },
                        OrbitEntry::Invariant { curve, image } => OrbitSpec::Invariant {
                            curve: curve.clone(),
                            image: image.clone(),
                        },
                    })
                    .collect(),
            };
            let downstairs = match upstairs {
                Ok(quotient) => free_involution_quotient(quotient.lattice(), &orbit_spec)
                    .map_err(|e| e.to_string()),
                Err(message) => Err(message.clone()),
            };
            world.involutions.insert(
                spec.name.clone(),
                InvolutionData {
                    quotient: spec.quotient.clone(),
                    spec: orbit_spec,
                    downstairs,
                },
            );
        }

        let mut seen_ids: BTreeSet<&str> = BTreeSet::new();
        for assertion in &scenario.assertions {
            if !seen_ids.insert(&assertion.id) {
                return Err(ScenarioError::DuplicateAssertion {
                    id: assertion.id.clone(),
                });
            }
            world.validate_references(assertion)?;
        }
        Ok(world)
    }

    /// Checks that every object an assertion names exists, before any
    /// evaluation starts.
    fn validate_references(&self, assertion: &AssertionSpec) -> Result<(), ScenarioError> {
        let surface = |name: &String| -> Result<(), ScenarioError> {
            if self.lattices.contains_key(name)
                || self.quotients.contains_key(name)
                || self.involutions.contains_key(name)
            {
                Ok(())
            } else {
                Err(ScenarioError::UnknownSurface {
                    context: format!("assertion {:?}", assertion.id),
                    name: name.clone(),
                })
            }
        };
        let family = |name: &String| -> Result<(), ScenarioError> {
            if self.families.contains_key(name) {
                Ok(())
            } else {
                Err(ScenarioError::UnknownFamily {
                    context: format!("assertion {:?}", assertion.id),
                    name: name.clone(),
                })
            }
        };
        let quotient = |name: &String| -> Result<(), ScenarioError> {
            if self.quotients.contains_key(name) {
                Ok(())
            } else {
                Err(ScenarioError::UnknownQuotient {
                    context: format!("assertion {:?}", assertion.id),
                    name: name.clone(),
                })
            }
        };
        let involution = |name: &String| -> Result<(), ScenarioError> {
            if self.involutions.contains_key(name) {
                Ok(())
            } else {
                Err(ScenarioError::UnknownInvolution {
                    context: format!("assertion {:?}", assertion.id),
                    name: name.clone(),
                })
            }
        };
        match &assertion.check {
            Check::CurveTable { family: name } => family(name),
            Check::ArithmeticGenera { family: name, .. } => family(name),
            Check::Determinant { surface: name, .. } => surface(name),
            Check::ClassSearch { surface: name, .. } => surface(name),
            Check::PairingProfile { surface: name, .. } => surface(name),
            Check::MeetingObstruction { surface: name, .. } => surface(name),
            Check::CanonicalClass { quotient: name, .. } => quotient(name),
            Check::Adjunction { surface: name, .. } => surface(name),
            Check::Pullback { quotient: name, .. } => quotient(name),
            Check::FibreReduction { quotient: name, .. } => quotient(name),
            Check::Equivalences { surface: name, .. } => surface(name),
            Check::ObstructionCases { part, .. } => {
                parse_part(part)
                    .map(|_| ())
                    .map_err(|_| ScenarioError::BadObstructionPart {
                        id: assertion.id.clone(),
                        part: part.clone(),
                    })
            }
            Check::ImageGenus { .. } => Ok(()),
            Check::SurfaceNumerics { .. } => Ok(()),
            Check::DerivedTable { surface: name, .. } => surface(name),
            Check::ActionTrace {
                involution: name, ..
            } => involution(name),
            Check::ImageCandidates {
                involution: name, ..
            } => involution(name),
            Check::FixedPairings { .. } => Ok(()),
            Check::FixedLocusBudget { .. } => Ok(()),
            Check::FixedCurveFamily { quotient: name, .. } => quotient(name),
            Check::DiophantineReduction {
                quotient: name,
                ansatz,
                ..
            } => {
                if ansatz.len() != 2 {
                    return Err(ScenarioError::AnsatzShape {
                        id: assertion.id.clone(),
                        got: ansatz.len(),
                    });
                }
                quotient(name)
            }
            Check::ConfigurationParity {
                involution: name, ..
            } => involution(name),
            Check::DescentMeeting {
                involution: name, ..
            } => involution(name),
            Check::Assumed {} => Ok(()),
        }
    }
}

pub fn parse_part(part: &str) -> Result<ReiderPart, ()> {
    match part {
        "basepoint" => Ok(ReiderPart::Basepoint),
        "separation" => Ok(ReiderPart::Separation),
        _ => Err(()),
    }
}

fn build_lattice(spec: &super::spec::LatticeSpec) -> Result<Lattice, ScenarioError> {
    let rank = spec.basis.len();
    let mut gram = RationalMatrix::zero(rank, rank);
    if spec.gram.len() != rank || spec.gram.iter().any(|row| row.len() != rank) {
        return Err(ScenarioError::TableShape {
            name: spec.name.clone(),
        });
    }
    for (i, row) in spec.gram.iter().enumerate() {
        for (j, value) in row.iter().enumerate() {
            let context = format!("lattice {:?} gram[{i}][{j}]", spec.name);
            gram.set(i, j, value.to_rational(&context)?);
        }
    }
    let mut builder = Lattice::builder(spec.name.clone(), spec.basis.clone(), gram)?;
    for embedding in &spec.embeddings {
        let context = format!("embedding {:?} in lattice {:?}", embedding.label, spec.name);
        let pairings = embedding
            .pairings
            .iter()
            .map(|v| v.to_rational(&context))
            .collect::<Result<Vec<_>, _>>()?;
        builder = builder.embed_by_pairings(embedding.label.clone(), &pairings)?;
    }
    Ok(builder.build())
}

fn parse_table(
    name: &str,
    labels: &[String],
    table: &TableSpec,
) -> Result<RationalMatrix, ScenarioError> {
    if table.labels != labels {
        return Err(ScenarioError::TableLabels {
            name: name.to_owned(),
        });
    }
    let n = labels.len();
    if table.entries.len() != n || table.entries.iter().any(|row| row.len() != n) {
        return Err(ScenarioError::TableShape {
            name: name.to_owned(),
        });
    }
    let mut matrix = RationalMatrix::zero(n, n);
    for (i, row) in table.entries.iter().enumerate() {
        for (j, value) in row.iter().enumerate() {
            let context = format!("table {name:?} entry [{i}][{j}]");
            matrix.set(i, j, value.to_rational(&context)?);
        }
    }
    if !matrix.is_symmetric() {
        return Err(ScenarioError::TableNotSymmetric {
            name: name.to_owned(),
        });
    }
    Ok(matrix)
}

fn build_family(spec: &CurveFamilySpec) -> Result<FamilyData, ScenarioError> {
    for point in &spec.marked_points {
        let (n, a) = point.quotient_type;
        MarkedPoint::new(point.label.clone(), n, a)?;
    }
    let mut records = Vec::with_capacity(spec.records.len());
    for record in &spec.records {
        let rebuilt = CurveRecord::new(
            record.label.clone(),
            record.genus,
            record.mults.clone(),
            record.extra_nodes,
            record.sigma_invariant,
        )?;
        if rebuilt.mults.len() != spec.marked_points.len() {
            return Err(ScenarioError::Curve(
                crate::curves::CurveError::MultiplicityCount {
                    label: rebuilt.label.clone(),
                    expected: spec.marked_points.len(),
                    got: rebuilt.mults.len(),
                },
            ));
        }
        records.push(rebuilt);
    }
    if spec.ball_quotient {
        curves::validate_ball_quotient(&records)?;
    }
    let labels: Vec<String> = records.iter().map(|r| r.label.clone()).collect();
    let mut extra_meetings = BTreeMap::new();
    for meeting in &spec.extra_meetings {
        for label in &meeting.pair {
            if !labels.contains(label) {
                return Err(ScenarioError::UnknownCurve {
                    family: spec.name.clone(),
                    label: label.clone(),
                });
            }
        }
        let key = curves::pair_key(&meeting.pair[0], &meeting.pair[1]);
        if extra_meetings.insert(key, meeting.count).is_some() {
            return Err(ScenarioError::DuplicateMeeting {
                family: spec.name.clone(),
                a: meeting.pair[0].clone(),
                b: meeting.pair[1].clone(),
            });
        }
    }
    let table = parse_table(&spec.name, &labels, &spec.expected_table)?;
    Ok(FamilyData {
        points: spec.marked_points.clone(),
        records,
        extra_meetings,
        table,
    })
}
