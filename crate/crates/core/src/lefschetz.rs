//! Fixed-point bookkeeping for an involution of a surface, carried out on
//! the curve lattice.
//!
//! The pieces, in the order a typical argument uses them:
//!
//! * the induced action on a full-rank spanning set of curves, as an exact
//!   matrix whose trace feeds the topological fixed point formula;
//! * solving for the possible images of a curve whose image is not known a
//!   priori: prescribed pairings give an affine family, and matching the
//!   self-intersection cuts it down to finitely many candidates;
//! * the two Lefschetz constraints. Topologically the Euler number of the
//!   fixed locus is `2 + trace + 2s`, with `s = ±1` the action sign on the
//!   rank-two transcendental part. Holomorphically an involution with `2m`
//!   isolated fixed points and fixed curves `A_i` satisfies
//!   `1 + s = e(fix)/4 + sum A_i^2 / 4`, which pins `sum A_i^2` and, via
//!   adjunction, `sum K.A_i = 2m - e(fix) - sum A_i^2`;
//! * exhausting the invariant classes that could carry the fixed curves,
//!   either directly (a quadratic condition on an affine family) or by
//!   reduction to a two-variable quadratic Diophantine equation that a
//!   modular obstruction kills;
//! * a parity obstruction: a unimodular lattice cannot be spanned up to
//!   finite index by curves whose intersection matrix has non-square
//!   determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{
    is_integer, is_perfect_square, rational_from_integer, rational_is_square, rational_to_string,
    ExactError, LinearSolution, Rational, RationalMatrix,
};
use crate::lattice::{DivisorClass, Lattice, LatticeError};
use crate::quotient::{InvolutionSpec, QuotientError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("the ansatz has no generators")]
    EmptyAnsatz,
    #[error("the labels do not span a nondegenerate sublattice of {name:?}")]
    SpanDegenerate { name: String },
    #[error("the image of {label:?} does not lie in the chosen spanning set")]
    NotInSpan { label: String },
    #[error("applying the action twice does not fix {label:?}")]
    NotAnInvolution { label: String },
    #[error("the action does not preserve the pairing of {a:?} and {b:?}")]
    GramNotPreserved { a: String, b: String },
    #[error("the image family has dimension {dimension}; only dimensions 0 and 1 are supported")]
    UnderdeterminedFamily { dimension: usize },
    #[error("every member of the family has the required self-intersection")]
    InfiniteMembers,
    #[error("the transcendental action sign must be 1 or -1, got {value}")]
    BadSign { value: i64 },
    #[error("eliminating the canonical constraint leaves a mixed term {value}; the reduction needs the two ansatz generators to have equal squares against each other")]
    MixedTerm { value: String },
    #[error("the ansatz generators pair differently with the canonical class ({left} and {right}), so the linear constraint does not eliminate cleanly")]
    UnequalCanonicalPairings { left: String, right: String },
    #[error("value {value} is not an integer where one is required")]
    NotIntegral { value: String },
    #[error("coefficient {value} does not fit the search range")]
    SearchRange { value: String },
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Writes `class` as a rational combination of the labelled generators.
/// Returns `None` when the class is not in their rational span.
pub fn express_in_span(
    lattice: &Lattice,
    span: &[&str],
    class: &DivisorClass,
) -> Result<Option<Vec<Rational>>, LefschetzError> {
    if span.is_empty() {
        return Err(LefschetzError::EmptyAnsatz);
    }
    let gram = lattice.sub_gram(span)?;
    let rhs: Vec<Rational> = span
        .iter()
        .map(|label| {
            let unit = lattice.named_class(label)?;
            class.pair(&unit)
        })
        .collect::<Result<_, _>>()?;
    let coefficients = match gram.solve(&rhs)? {
        LinearSolution::Unique(c) => c,
        _ => {
            return Err(LefschetzError::SpanDegenerate {
                name: lattice.name().to_owned(),
            })
        }
    };
    let terms: Vec<(Rational, &str)> = coefficients
        .iter()
        .cloned()
        .zip(span.iter().copied())
        .collect();
    let candidate = lattice.combination(&terms)?;
    if candidate.numerically_equal(class)? {
        Ok(Some(coefficients))
    } else {
        Ok(None)
    }
}

/// The action of an involution on the rational span of a full-rank set of
/// generators, as an exact matrix in that basis.
#[derive(Debug, Clone)]
pub struct SpanAction {
    labels: Vec<String>,
    matrix: RationalMatrix,
}

impl SpanAction {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Column `j` holds the span coordinates of the image of generator `j`.
    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Rational {
        let mut total = Rational::from_integer(0.into());
        for i in 0..self.matrix.rows() {
            total += self.matrix.get(i, i);
        }
        total
    }
}

/// Builds the span action from explicit images of the span generators,
/// checking that the images lie in the span, square to the identity, and
/// preserve the pairing.
pub fn action_from_images(
    lattice: &Lattice,
    span: &[&str],
    images: &[DivisorClass],
) -> Result<SpanAction, LefschetzError> {
    assert!(
        span.len() == images.len(),
        "one image per span generator required"
    );
    let rank = span.len();
    let mut matrix = RationalMatrix::zero(rank, rank);
    for (j, image) in images.iter().enumerate() {
        let coords =
            express_in_span(lattice, span, image)?.ok_or_else(|| LefschetzError::NotInSpan {
                label: span[j].to_owned(),
            })?;
        for (i, value) in coords.into_iter().enumerate() {
            matrix.set(i, j, value);
        }
    }
    let square = matrix.mul(&matrix)?;
    let identity = RationalMatrix::identity(rank);
    for (j, label) in span.iter().enumerate() {
        for i in 0..rank {
            if square.get(i, j) != identity.get(i, j) {
                return Err(LefschetzError::NotAnInvolution {
                    label: (*label).to_owned(),
                });
            }
        }
    }
    let gram = lattice.sub_gram(span)?;
    let preserved = matrix.transpose().mul(&gram.mul(&matrix)?)?;
    for i in 0..rank {
        for j in 0..rank {
            if preserved.get(i, j) != gram.get(i, j) {
                return Err(LefschetzError::GramNotPreserved {
                    a: span[i].to_owned(),
                    b: span[j].to_owned(),
                });
            }
        }
    }
    Ok(SpanAction {
        labels: span.iter().map(|s| (*s).to_owned()).collect(),
        matrix,
    })
}

/// Builds the span action from an involution given as a permutation of the
/// full generating set.
pub fn action_from_spec(
    lattice: &Lattice,
    span: &[&str],
    spec: &InvolutionSpec,
) -> Result<SpanAction, LefschetzError> {
    let perm = spec.permutation(lattice)?;
    let images: Vec<DivisorClass> = span
        .iter()
        .map(|label| {
            let idx = lattice
                .basis_index(label)
                .ok_or_else(|| LatticeError::UnknownLabel {
                    name: lattice.name().to_owned(),
                    label: (*label).to_owned(),
                })?;
            lattice.named_class(&lattice.basis()[perm[idx]])
        })
        .collect::<Result<_, LatticeError>>()?;
    action_from_images(lattice, span, &images)
}

/// The quadratic `leading t^2 + linear t + constant = 0` satisfied by the
/// family parameter at members of the required self-intersection. The
/// parametrization is normalized: the direction's first nonzero ansatz
/// coefficient is 1, and the base point's coefficient there is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCondition {
    pub leading: Rational,
    pub linear: Rational,
    pub constant: Rational,
}

/// Solutions of a system of pairing constraints together with a prescribed
/// self-intersection, inside the rational span of an ansatz.
#[derive(Debug, Clone)]
pub struct ConstrainedFamily {
    /// Whether the linear constraints admit any solution at all.
    pub linear_solvable: bool,
    /// Dimension of the affine solution space of the linear constraints.
    pub dimension: usize,
    /// Present exactly when the family is one-dimensional.
    pub condition: Option<SquareCondition>,
    /// All members with the prescribed self-intersection, in increasing
    /// order of the normalized family parameter.
    pub members: Vec<DivisorClass>,
}

/// Finds every class of the form `sum t_j ansatz_j` that satisfies all the
/// pairing constraints and has the prescribed self-intersection.
pub fn constrained_classes(
    ansatz: &[DivisorClass],
    constraints: &[(DivisorClass, Rational)],
    square: &Rational,
) -> Result<ConstrainedFamily, LefschetzError> {
    if ansatz.is_empty() {
        return Err(LefschetzError::EmptyAnsatz);
    }
    let dim = ansatz.len();
    let mut system = RationalMatrix::zero(constraints.len(), dim);
    let mut rhs = Vec::with_capacity(constraints.len());
    for (i, (probe, target)) in constraints.iter().enumerate() {
        for (j, generator) in ansatz.iter().enumerate() {
            system.set(i, j, probe.pair(generator)?);
        }
        rhs.push(target.clone());
    }

    // Pairing of coefficient vectors through the ansatz Gram matrix.
    let mut ansatz_gram = RationalMatrix::zero(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            ansatz_gram.set(i, j, ansatz[i].pair(&ansatz[j])?);
        }
    }
    let pair_coeffs = |x: &[Rational], y: &[Rational]| -> Rational {
        ansatz_gram
            .bilinear(x, y)
            .expect("coefficient vectors match the ansatz Gram matrix")
    };
    let materialize = |coeffs: &[Rational]| -> Result<DivisorClass, LefschetzError> {
        let mut class = ansatz[0].scale(&coeffs[0]);
        for (c, generator) in coeffs.iter().zip(ansatz).skip(1) {
            class = class.add(&generator.scale(c))?;
        }
        Ok(class)
    };

    match system.solve(&rhs)? {
        LinearSolution::Inconsistent => Ok(ConstrainedFamily {
            linear_solvable: false,
            dimension: 0,
            condition: None,
            members: Vec::new(),
        }),
        LinearSolution::Unique(coeffs) => {
            let class = materialize(&coeffs)?;
            let members = if &class.self_intersection()? == square {
                vec![class]
            } else {
                Vec::new()
            };
            Ok(ConstrainedFamily {
                linear_solvable: true,
                dimension: 0,
                condition: None,
                members,
            })
        }
        LinearSolution::Parametric {
            particular,
            null_basis,
        } => {
            if null_basis.len() != 1 {
                return Err(LefschetzError::UnderdeterminedFamily {
                    dimension: null_basis.len(),
                });
            }
            // Normalize the parametrization so results do not depend on the
            // solver's scaling: direction leads with coefficient 1, base
            // point vanishes in that coordinate.
            let raw_direction = &null_basis[0];
            let pivot = raw_direction
                .iter()
                .position(|c| !c.is_zero())
                .expect("null direction is nonzero");
            let lead = raw_direction[pivot].clone();
            let direction: Vec<Rational> = raw_direction.iter().map(|c| c / &lead).collect();
            let offset = particular[pivot].clone();
            let base: Vec<Rational> = particular
                .iter()
                .zip(&direction)
                .map(|(p, d)| p - &offset * d)
                .collect();

            let leading = pair_coeffs(&direction, &direction);
            let linear = rational_from_integer(2) * pair_coeffs(&base, &direction);
            let constant = pair_coeffs(&base, &base) - square;
            let mut roots: Vec<Rational> = Vec::new();
            if leading.is_zero() {
                if linear.is_zero() {
                    if constant.is_zero() {
                        return Err(LefschetzError::InfiniteMembers);
                    }
                } else {
                    roots.push(-&constant / &linear);
                }
            } else {
                let discriminant =
                    &linear * &linear - rational_from_integer(4) * &leading * &constant;
                if let Some(root) = rational_is_square(&discriminant) {
                    let two_a = rational_from_integer(2) * &leading;
                    roots.push((-&linear - &root) / &two_a);
                    if !root.is_zero() {
                        roots.push((-&linear + &root) / &two_a);
                    }
                }
            }
            roots.sort();
            let mut members = Vec::with_capacity(roots.len());
            for t in &roots {
                let coeffs: Vec<Rational> = base
                    .iter()
                    .zip(&direction)
                    .map(|(b, d)| b + t * d)
                    .collect();
                let member = materialize(&coeffs)?;
                assert!(
                    &member.self_intersection()? == square,
                    "family member misses the required square"
                );
                members.push(member);
            }
            Ok(ConstrainedFamily {
                linear_solvable: true,
                dimension: 1,
                condition: Some(SquareCondition {
                    leading,
                    linear,
                    constant,
                }),
                members,
            })
        }
    }
}

/// Candidates for the image of `curve` under the involution: classes that
/// pair with every generator in `known` the way the image must (the pairing
/// of `curve` with the generator's image) and share the self-intersection
/// of `curve`. The ansatz runs over the given spanning set.
pub fn image_candidates(
    lattice: &Lattice,
    span: &[&str],
    known: &[&str],
    spec: &InvolutionSpec,
    curve: &str,
) -> Result<ConstrainedFamily, LefschetzError> {
    let perm = spec.permutation(lattice)?;
    let target_curve = lattice.named_class(curve)?;
    let square = target_curve.self_intersection()?;
    let ansatz: Vec<DivisorClass> = span
        .iter()
        .map(|label| lattice.named_class(label))
        .collect::<Result<_, _>>()?;
    let mut constraints = Vec::with_capacity(known.len());
    for label in known {
        let idx = lattice
            .basis_index(label)
            .ok_or_else(|| LatticeError::UnknownLabel {
                name: lattice.name().to_owned(),
                label: (*label).to_owned(),
            })?;
        let image = lattice.named_class(&lattice.basis()[perm[idx]])?;
        let probe = lattice.named_class(label)?;
        constraints.push((probe, target_curve.pair(&image)?));
    }
    constrained_classes(&ansatz, &constraints, &square)
}

/// Even pairing values per swapped generator pair, bounded by the pairing
/// of the generator with its own image, and balanced so the first two sum
/// to twice the third. These are the values a fixed curve class can take
/// against the three swapped pairs.
pub fn admissible_fixed_pairings(caps: [i64; 3]) -> Vec<[i64; 3]> {
    let mut result = Vec::new();
    for t1 in (0..=caps[0].max(0)).step_by(2) {
        for t2 in (0..=caps[1].max(0)).step_by(2) {
            for t3 in (0..=caps[2].max(0)).step_by(2) {
                if t1 + t2 == 2 * t3 {
                    result.push([t1, t2, t3]);
                }
            }
        }
    }
    result
}

/// What the two Lefschetz fixed point formulas say about the fixed locus of
/// an involution on a surface with geometric genus one and irregularity
/// zero, once the trace on the algebraic part and the sign `s` on the
/// transcendental part are known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocusBudget {
    /// Euler number of the fixed locus: `2 + trace + 2s`.
    pub euler: Rational,
    /// Total self-intersection of the fixed curves: `4(1 + s) - euler`.
    pub total_square: Rational,
    /// The fixed curves satisfy `sum K.A_i = 2m + canonical_offset`, where
    /// `2m` is the (even) number of isolated fixed points.
    pub canonical_offset: Rational,
}

pub fn fixed_locus_budget(
    algebraic_trace: &Rational,
    transcendental_sign: i64,
) -> Result<FixedLocusBudget, LefschetzError> {
    if transcendental_sign != 1 && transcendental_sign != -1 {
        return Err(LefschetzError::BadSign {
            value: transcendental_sign,
        });
    }
    let sign = rational_from_integer(transcendental_sign);
    let euler = rational_from_integer(2) + algebraic_trace + rational_from_integer(2) * &sign;
    let total_square = rational_from_integer(4) * (rational_from_integer(1) + &sign) - &euler;
    let canonical_offset = -&euler - &total_square;
    Ok(FixedLocusBudget {
        euler,
        total_square,
        canonical_offset,
    })
}

/// The two-variable quadratic Diophantine equation
/// `x_squared * x^2 = s_squared * s^2 + constant`, where
/// `s = point_scale * m + point_shift` and `2m` counts the isolated fixed
/// points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDiophantine {
    pub x_squared: BigInt,
    pub s_squared: BigInt,
    pub constant: BigInt,
    pub point_scale: Rational,
    pub point_shift: Rational,
}

/// Eliminates the canonical constraint `K.A = 2m + offset` from the square
/// constraint `A^2 = square` for a two-generator invariant ansatz, leaving
/// a quadratic Diophantine equation in the free coefficient `x` and the
/// substituted variable `s`. Requires both generators to pair equally with
/// the canonical class and the elimination to leave no mixed term.
pub fn reduce_to_diophantine(
    ansatz: [&DivisorClass; 2],
    square: &Rational,
    canonical: &DivisorClass,
    points_offset: &Rational,
) -> Result<ReducedDiophantine, LefschetzError> {
    let [u, v] = ansatz;
    let ku = canonical.pair(u)?;
    let kv = canonical.pair(v)?;
    if ku != kv {
        return Err(LefschetzError::UnequalCanonicalPairings {
            left: rational_to_string(&ku),
            right: rational_to_string(&kv),
        });
    }
    if ku.is_zero() {
        return Err(LefschetzError::UnequalCanonicalPairings {
            left: rational_to_string(&ku),
            right: rational_to_string(&kv),
        });
    }
    let q11 = u.self_intersection()?;
    let q12 = u.pair(v)?;
    let q22 = v.self_intersection()?;
    // Substituting y = s - x into (x u + y v)^2 with s = (2m + offset)/k:
    // the x.s cross coefficient must vanish for the variables to separate.
    let cross = rational_from_integer(2) * (&q12 - &q22);
    if !cross.is_zero() {
        return Err(LefschetzError::MixedTerm {
            value: rational_to_string(&cross),
        });
    }
    let x2 = &q11 - rational_from_integer(2) * &q12 + &q22;
    let s2 = q22.clone();
    // x2 * x^2 + s2 * s^2 = square, rewritten as p x^2 = q s^2 + r.
    let p = -&x2;
    let q = s2;
    let r = -square;
    let (p, q, r) = normalize_integer_triple(&p, &q, &r)?;
    let point_scale = rational_from_integer(2) / &ku;
    let point_shift = points_offset / &ku;

    let reduction = ReducedDiophantine {
        x_squared: p,
        s_squared: q,
        constant: r,
        point_scale,
        point_shift,
    };
    // Cross-check the elimination on a small grid: the reduced equation
    // must hold exactly when the original pair of constraints does.
    for x_int in -3i64..=3 {
        for m_int in -3i64..=3 {
            let x = rational_from_integer(x_int);
            let m = rational_from_integer(m_int);
            let s = &reduction.point_scale * &m + &reduction.point_shift;
            let y = &s - &x;
            let a = u.scale(&x).add(&v.scale(&y)).expect("same lattice");
            let original = a.self_intersection().expect("same lattice") == *square;
            let lhs = Rational::from_integer(reduction.x_squared.clone()) * &x * &x;
            let rhs = Rational::from_integer(reduction.s_squared.clone()) * &s * &s
                + Rational::from_integer(reduction.constant.clone());
            assert!(
                original == (lhs == rhs),
                "reduction disagrees with the direct constraints at x = {x_int}, m = {m_int}"
            );
        }
    }
    Ok(reduction)
}

/// Clears denominators and common factors, making the first entry positive.
fn normalize_integer_triple(
    p: &Rational,
    q: &Rational,
    r: &Rational,
) -> Result<(BigInt, BigInt, BigInt), LefschetzError> {
    let lcm = p.denom().lcm(q.denom()).lcm(r.denom());
    let scale = Rational::from_integer(lcm);
    let to_int = |value: &Rational| -> BigInt {
        let scaled = value * &scale;
        debug_assert!(is_integer(&scaled));
        scaled.to_integer()
    };
    let mut p = to_int(p);
    let mut q = to_int(q);
    let mut r = to_int(r);
    let gcd: BigInt = p.gcd(&q).gcd(&r);
    if !gcd.is_zero() && !gcd.is_one() {
        p /= &gcd;
        q /= &gcd;
        r /= &gcd;
    }
    if p.is_negative() {
        p = -p;
        q = -q;
        r = -r;
    }
    Ok((p, q, r))
}

impl ReducedDiophantine {
    /// Whether an integer value of `s` forces `x` to be an integer: true
    /// when the leading coefficient is squarefree, since then a reduced
    /// denominator of `x` would have to divide it twice.
    pub fn forces_integer_x(&self) -> bool {
        is_squarefree(&self.x_squared)
    }

    /// True when the equation has no solutions modulo the given modulus,
    /// which rules out integer solutions outright.
    pub fn modulus_rules_out(&self, modulus: i64) -> Result<bool, LefschetzError> {
        if modulus < 2 {
            return Err(LefschetzError::SearchRange {
                value: modulus.to_string(),
            });
        }
        let m = BigInt::from(modulus);
        let reduce = |n: &BigInt| n.mod_floor(&m);
        let p = reduce(&self.x_squared);
        let q = reduce(&self.s_squared);
        let r = reduce(&self.constant);
        for x in 0..modulus {
            for s in 0..modulus {
                let lhs = reduce(&(&p * x * x));
                let rhs = reduce(&(&q * s * s + &r));
                if lhs == rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All integer solutions `(x, s)` with both variables bounded by
    /// `radius` in absolute value.
    pub fn integer_solutions_within(&self, radius: i64) -> Result<Vec<(i64, i64)>, LefschetzError> {
        let small = |n: &BigInt| -> Result<i64, LefschetzError> {
            i64::try_from(n).map_err(|_| LefschetzError::SearchRange {
                value: n.to_string(),
            })
        };
        let p = small(&self.x_squared)?;
        let q = small(&self.s_squared)?;
        let r = small(&self.constant)?;
        let mut solutions = Vec::new();
        for x in -radius..=radius {
            for s in -radius..=radius {
                if p * x * x == q * s * s + r {
                    solutions.push((x, s));
                }
            }
        }
        Ok(solutions)
    }
}

fn is_squarefree(n: &BigInt) -> bool {
    let mut m = n.abs();
    if m.is_zero() {
        return false;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            m /= &p;
            if (&m % &p).is_zero() {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Determinant parity for a configuration of curves spanning a unimodular
/// lattice up to finite index: `2m` disjoint `(-2)`-curves contribute the
/// perfect square `4^m`, so the whole determinant is a square for some `m`
/// exactly when the `m`-independent blocks multiply to a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationParity {
    /// Absolute value of the product of the fixed block determinants.
    pub fixed_determinant: BigInt,
    /// Its integer square root, when it is a perfect square.
    pub square_root: Option<BigInt>,
}

pub fn configuration_parity(
    fixed_blocks: &[RationalMatrix],
) -> Result<ConfigurationParity, LefschetzError> {
    let mut product = Rational::from_integer(1.into());
    for block in fixed_blocks {
        product *= block.determinant()?;
    }
    if !is_integer(&product) {
        return Err(LefschetzError::NotIntegral {
            value: rational_to_string(&product),
        });
    }
    let fixed_determinant = product.to_integer().abs();
    let square_root = is_perfect_square(&fixed_determinant)?;
    Ok(ConfigurationParity {
        fixed_determinant,
        square_root,
    })
}

impl ConfigurationParity {
    /// Absolute determinant of the full configuration once the `2m`
    /// isolated `(-2)`-curves are included.
    pub fn with_isolated_points(&self, m: u32) -> BigInt {
        &self.fixed_determinant * BigInt::from(4).pow(m)
    }

    /// True when no number of isolated fixed points can make the full
    /// determinant a perfect square.
    pub fn obstructs_for_all_point_counts(&self) -> bool {
        self.square_root.is_none()
    }
}
