//! Intersection theory on cyclic quotients and their minimal resolutions.
//!
//! Starting from a surface with a cyclic automorphism group acting with
//! isolated fixed points, this module builds the lattice spanned by the
//! strict transforms of the invariant curves together with the exceptional
//! curves of the minimal resolution of the quotient:
//!
//! * each fixed point of type `1/n (1, a)` contributes a Hirzebruch-Jung
//!   chain of exceptional curves whose self-intersections are read off the
//!   continued fraction of `n / a`;
//! * strict transforms pair by the orbifold rule
//!   `A' . B' = (A . B - sum_k m_{A,k} m_{B,k}) / n`, which must come out
//!   integral, and a transform meets a length-one chain in exactly its
//!   multiplicity at the point below;
//! * pullbacks along the resolution are characterized by orthogonality to
//!   every exceptional curve, and the canonical class of the resolution is
//!   the pullback corrected by the discrepancies solved from adjunction.
//!
//! A second, fixed-point-free involution quotient is supported by the
//! halving rule `a . b = (pullback of a) . (pullback of b) / 2`.

use num_traits::Zero;
use thiserror::Error;

use crate::curves::{CurveError, CurveRecord, MarkedPoint};
use crate::exact::{
    is_integer, rational_from_integer, rational_to_string, ExactError, LinearSolution, Rational,
    RationalMatrix,
};
use crate::lattice::{DivisorClass, Lattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(
        "chain type (n, a) = ({n}, {a}) is not valid (need n >= 2, 1 <= a < n, gcd(n, a) = 1)"
    )]
    BadChainType { n: i64, a: i64 },
    #[error("continued-fraction coefficient {value} is below 2")]
    BadChainCoefficient { value: i64 },
    #[error("point {label:?} has type 1/{n}(1,{a}) but the acting group has order {group_order}")]
    PointOrderMismatch {
        label: String,
        n: i64,
        a: i64,
        group_order: i64,
    },
    #[error("group order {group_order} is not a valid cyclic quotient order")]
    BadGroupOrder { group_order: i64 },
    #[error("curve {label:?} is not invariant under the acting group")]
    NotInvariant { label: String },
    #[error("pairing table is {rows}x{cols} but there are {curves} curves")]
    TableShape {
        rows: usize,
        cols: usize,
        curves: usize,
    },
    #[error("intersection {corrected} of {a} and {b}, after subtracting the fixed-point contributions, is not divisible by the group order {order}")]
    Divisibility {
        a: String,
        b: String,
        corrected: String,
        order: i64,
    },
    #[error("curve {curve:?} passes through point {point:?}, whose exceptional chain has more than one curve; the pairing with individual chain curves is undetermined")]
    AmbiguousChain { curve: String, point: String },
    #[error("class has nonzero coefficient on exceptional curve {label:?}, so it is not pulled back from the quotient")]
    PullbackSupport { label: String },
    #[error("label {label:?} is not a strict transform in this resolution")]
    UnknownTransform { label: String },
    #[error("no cover of degree {degree} with {fixed} branch points takes a genus-{genus} curve to a curve of integral genus")]
    NonIntegralGenus { genus: i64, degree: i64, fixed: i64 },
    #[error("a cover of degree {degree} with {fixed} branch points over a genus-{genus} curve would need a base of negative genus")]
    ImpossibleGenus { genus: i64, degree: i64, fixed: i64 },
    #[error(
        "generator {label:?} appears {count} times across the involution orbits (need exactly 1)"
    )]
    OrbitCoverage { label: String, count: usize },
    #[error("the involution does not preserve the pairing of {a:?} and {b:?}")]
    NotAnIsometry { a: String, b: String },
    #[error("quotient pairing of {a:?} and {b:?} is {value}, not an integer; the involution cannot be fixed point free on these curves")]
    HalfIntegralPairing { a: String, b: String, value: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// The exceptional chain over a cyclic quotient singularity of type
/// `1/n (1, a)`: self-intersections `-b_i` where
/// `n/a = b_1 - 1/(b_2 - 1/(...))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJChain {
    pub n: i64,
    pub a: i64,
    /// The continued-fraction coefficients `b_i >= 2`.
    pub coefficients: Vec<i64>,
}

/// Expands `n / a` into the alternating continued fraction that lists the
/// chain self-intersections.
pub fn hj_chain(n: i64, a: i64) -> Result<HJChain, QuotientError> {
    use num_integer::Integer;
    if n < 2 || a < 1 || a >= n || n.gcd(&a) != 1 {
        return Err(QuotientError::BadChainType { n, a });
    }
    let mut coefficients = Vec::new();
    let (mut p, mut q) = (n, a);
    while q > 0 {
        let c = Integer::div_ceil(&p, &q); // smallest c with c * q >= p
        coefficients.push(c);
        (p, q) = (q, c * q - p);
    }
    Ok(HJChain { n, a, coefficients })
}

/// Evaluates `b_1 - 1/(b_2 - 1/(...))` exactly; with all coefficients at
/// least 2 every partial tail exceeds 1, so no division by zero can occur.
pub fn continued_fraction_value(coefficients: &[i64]) -> Result<Rational, QuotientError> {
    if let Some(&value) = coefficients.iter().find(|&&c| c < 2) {
        return Err(QuotientError::BadChainCoefficient { value });
    }
    let mut value = Rational::from_integer(0.into());
    for &c in coefficients.iter().rev() {
        let c = rational_from_integer(c);
        value = if value.is_zero() {
            c
        } else {
            c - value.recip()
        };
    }
    Ok(value)
}

impl HJChain {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Tridiagonal pairing matrix: `-b_i` on the diagonal, 1 between
    /// neighbouring chain curves.
    pub fn gram(&self) -> RationalMatrix {
        let len = self.len();
        let mut gram = RationalMatrix::zero(len, len);
        for (i, &b) in self.coefficients.iter().enumerate() {
            gram.set(i, i, rational_from_integer(-b));
            if i + 1 < len {
                gram.set(i, i + 1, rational_from_integer(1));
                gram.set(i + 1, i, rational_from_integer(1));
            }
        }
        gram
    }

    /// Determinant of the chain pairing matrix; its absolute value is `n`.
    pub fn determinant(&self) -> Rational {
        self.gram()
            .determinant()
            .expect("chain pairing matrix is square")
    }

    /// Discrepancy coefficients of the chain curves: the unique solution of
    /// `(K . R_i) = -2 - R_i^2` written in the chain basis. A `(-2)`-chain
    /// has all discrepancies zero.
    pub fn discrepancies(&self) -> Vec<Rational> {
        let rhs: Vec<Rational> = self
            .coefficients
            .iter()
            .map(|&b| rational_from_integer(b - 2))
            .collect();
        match self.gram().solve(&rhs) {
            Ok(LinearSolution::Unique(d)) => d,
            _ => unreachable!("chain pairing matrix is nondegenerate"),
        }
    }
}

/// Input data for a cyclic quotient: the invariant curves upstairs with
/// their pairing table, and the fixed points with their local types.
#[derive(Debug, Clone)]
pub struct CyclicQuotientSetup {
    pub name: String,
    pub group_order: i64,
    pub points: Vec<MarkedPoint>,
    /// Invariant curves; `mults` are indexed over `points`.
    pub curves: Vec<CurveRecord>,
    /// Pairing table of the curves upstairs, in curve order.
    pub pairing_table: RationalMatrix,
}

/// One resolved singular point: which point it came from and the labels of
/// its chain curves in chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainInfo {
    pub point_label: String,
    pub labels: Vec<String>,
    pub chain: HJChain,
}

/// The lattice spanned by the strict transforms and the exceptional curves
/// on the minimal resolution of the quotient.
#[derive(Debug, Clone)]
pub struct QuotientLattice {
    lattice: Lattice,
    transform_labels: Vec<String>,
    chains: Vec<ChainInfo>,
}

impl QuotientLattice {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn transform_labels(&self) -> &[String] {
        &self.transform_labels
    }

    pub fn chains(&self) -> &[ChainInfo] {
        &self.chains
    }

    pub fn exceptional_labels(&self) -> impl Iterator<Item = &str> {
        self.chains
            .iter()
            .flat_map(|c| c.labels.iter().map(String::as_str))
    }
}

/// Label of the strict transform of an upstairs curve.
pub fn transform_label(curve_label: &str) -> String {
    format!("{curve_label}'")
}

/// Builds the resolution lattice for a cyclic quotient.
///
/// Exceptional labels: the chain over the k-th single-curve point is `R<k>`;
/// the curves of the k-th longer chain are `R<k>1`, `R<k>2`, ... with both
/// counters running independently.
pub fn build_quotient_lattice(
    setup: &CyclicQuotientSetup,
) -> Result<QuotientLattice, QuotientError> {
    let order = setup.group_order;
    if order < 2 {
        return Err(QuotientError::BadGroupOrder { group_order: order });
    }
    let n_curves = setup.curves.len();
    let n_points = setup.points.len();
    if setup.pairing_table.rows() != n_curves || setup.pairing_table.cols() != n_curves {
        return Err(QuotientError::TableShape {
            rows: setup.pairing_table.rows(),
            cols: setup.pairing_table.cols(),
            curves: n_curves,
        });
    }
    for curve in &setup.curves {
        if curve.mults.len() != n_points {
            return Err(QuotientError::Curve(CurveError::MultiplicityCount {
                label: curve.label.clone(),
                expected: n_points,
                got: curve.mults.len(),
            }));
        }
        if !curve.sigma_invariant {
            return Err(QuotientError::NotInvariant {
                label: curve.label.clone(),
            });
        }
    }

    let mut chains = Vec::with_capacity(n_points);
    let (mut singles, mut longer) = (0usize, 0usize);
    for point in &setup.points {
        let (n, a) = point.quotient_type;
        if n != order {
            return Err(QuotientError::PointOrderMismatch {
                label: point.label.clone(),
                n,
                a,
                group_order: order,
            });
        }
        let chain = hj_chain(n, a)?;
        let labels = if chain.len() == 1 {
            singles += 1;
            vec![format!("R{singles}")]
        } else {
            longer += 1;
            (1..=chain.len()).map(|i| format!("R{longer}{i}")).collect()
        };
        chains.push(ChainInfo {
            point_label: point.label.clone(),
            labels,
            chain,
        });
    }

    let transform_labels: Vec<String> = setup
        .curves
        .iter()
        .map(|c| transform_label(&c.label))
        .collect();
    let mut all_labels = transform_labels.clone();
    for chain in &chains {
        all_labels.extend(chain.labels.iter().cloned());
    }
    let total = all_labels.len();
    let mut gram = RationalMatrix::zero(total, total);

    // Strict transforms: orbifold correction then exact division.
    let order_rat = rational_from_integer(order);
    for i in 0..n_curves {
        for j in i..n_curves {
            let dot: i64 = setup.curves[i]
                .mults
                .iter()
                .zip(&setup.curves[j].mults)
                .map(|(x, y)| x * y)
                .sum();
            let corrected = setup.pairing_table.get(i, j) - rational_from_integer(dot);
            let value = &corrected / &order_rat;
            if !is_integer(&value) {
                return Err(QuotientError::Divisibility {
                    a: transform_labels[i].clone(),
                    b: transform_labels[j].clone(),
                    corrected: rational_to_string(&corrected),
                    order,
                });
            }
            gram.set(i, j, value.clone());
            gram.set(j, i, value);
        }
    }

    // Transforms against chain curves, and the chains themselves.
    let mut offset = n_curves;
    for (p_idx, chain) in chains.iter().enumerate() {
        let len = chain.chain.len();
        for (c_idx, curve) in setup.curves.iter().enumerate() {
            let mult = curve.mults[p_idx];
            if len == 1 {
                let value = rational_from_integer(mult);
                gram.set(c_idx, offset, value.clone());
                gram.set(offset, c_idx, value);
            } else if mult != 0 {
                return Err(QuotientError::AmbiguousChain {
                    curve: curve.label.clone(),
                    point: chain.point_label.clone(),
                });
            }
        }
        let block = chain.chain.gram();
        for i in 0..len {
            for j in 0..len {
                gram.set(offset + i, offset + j, block.get(i, j).clone());
            }
        }
        offset += len;
    }

    let lattice = Lattice::builder(setup.name.clone(), all_labels, gram)?.build();
    Ok(QuotientLattice {
        lattice,
        transform_labels,
        chains,
    })
}

/// Pullback along the resolution of a class supported on strict transforms:
/// adds the unique chain corrections making the result orthogonal to every
/// exceptional curve.
pub fn pullback(
    resolution: &QuotientLattice,
    class: &DivisorClass,
) -> Result<DivisorClass, QuotientError> {
    for label in resolution.exceptional_labels() {
        if !class.coord(label)?.is_zero() {
            return Err(QuotientError::PullbackSupport {
                label: label.to_owned(),
            });
        }
    }
    let pairings = class.pairings_against_basis();
    let lattice = resolution.lattice();
    let mut result = class.clone();
    for chain in resolution.chains() {
        let rhs: Vec<Rational> = chain
            .labels
            .iter()
            .map(|label| {
                let idx = lattice.basis_index(label).expect("chain label in basis");
                -&pairings[idx]
            })
            .collect();
        let gamma = match chain.chain.gram().solve(&rhs) {
            Ok(LinearSolution::Unique(gamma)) => gamma,
            _ => unreachable!("chain pairing matrix is nondegenerate"),
        };
        for (coefficient, label) in gamma.into_iter().zip(&chain.labels) {
            let unit = lattice.named_class(label)?;
            result = result.add(&unit.scale(&coefficient))?;
        }
    }
    for label in resolution.exceptional_labels() {
        let unit = lattice.named_class(label)?;
        assert!(
            result.pair(&unit)?.is_zero(),
            "pullback not orthogonal to {label}"
        );
    }
    Ok(result)
}

/// Canonical class of the resolution: the pullback of the strict transform
/// named by `canonical_transform`, corrected by the chain discrepancies.
pub fn canonical_on_resolution(
    resolution: &QuotientLattice,
    canonical_transform: &str,
) -> Result<DivisorClass, QuotientError> {
    if !resolution
        .transform_labels()
        .iter()
        .any(|l| l == canonical_transform)
    {
        return Err(QuotientError::UnknownTransform {
            label: canonical_transform.to_owned(),
        });
    }
    let lattice = resolution.lattice();
    let base = lattice.named_class(canonical_transform)?;
    let mut canonical = pullback(resolution, &base)?;
    for chain in resolution.chains() {
        for (coefficient, label) in chain.chain.discrepancies().into_iter().zip(&chain.labels) {
            let unit = lattice.named_class(label)?;
            canonical = canonical.add(&unit.scale(&coefficient))?;
        }
    }
    Ok(canonical)
}

/// Genus of the image of a genus-`genus` curve under a degree-`degree`
/// cyclic cover map with `fixed` branch points on the curve, from
/// `2g - 2 = degree (2g' - 2) + (degree - 1) fixed`.
pub fn quotient_genus(genus: i64, degree: i64, fixed: i64) -> Result<i64, QuotientError> {
    if degree < 1 || genus < 0 || fixed < 0 {
        return Err(QuotientError::NonIntegralGenus {
            genus,
            degree,
            fixed,
        });
    }
    let t = 2 * genus - 2 - (degree - 1) * fixed;
    if t % degree != 0 {
        return Err(QuotientError::NonIntegralGenus {
            genus,
            degree,
            fixed,
        });
    }
    let two_g = t / degree + 2;
    if two_g % 2 != 0 {
        return Err(QuotientError::NonIntegralGenus {
            genus,
            degree,
            fixed,
        });
    }
    let g = two_g / 2;
    if g < 0 {
        return Err(QuotientError::ImpossibleGenus {
            genus,
            degree,
            fixed,
        });
    }
    Ok(g)
}

/// Euler number, second Betti number, and `h^{1,1}` from the standard
/// surface identities `e = 12 chi - K^2`, `b_2 = e - 2 + 4q`,
/// `h^{1,1} = b_2 - 2 p_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoetherInvariants {
    pub euler: i64,
    pub b2: i64,
    pub h11: i64,
}

pub fn noether_invariants(k_squared: i64, chi: i64, q: i64, p_g: i64) -> NoetherInvariants {
    let euler = 12 * chi - k_squared;
    let b2 = euler - 2 + 4 * q;
    let h11 = b2 - 2 * p_g;
    NoetherInvariants { euler, b2, h11 }
}

/// One orbit of the involution on the configured curves: either two curves
/// swapped with each other, or a single curve mapped to itself as a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitSpec {
    Swap { a: String, b: String, image: String },
    Invariant { curve: String, image: String },
}

impl OrbitSpec {
    pub fn image(&self) -> &str {
        match self {
            OrbitSpec::Swap { image, .. } | OrbitSpec::Invariant { image, .. } => image,
        }
    }

    fn members(&self) -> Vec<&str> {
        match self {
            OrbitSpec::Swap { a, b, .. } => vec![a, b],
            OrbitSpec::Invariant { curve, .. } => vec![curve],
        }
    }
}

/// A fixed-point-free involution described by its orbits on the generating
/// curves; the downstairs lattice takes its basis order from the orbit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSpec {
    pub name: String,
    pub orbits: Vec<OrbitSpec>,
}

impl InvolutionSpec {
    /// The permutation of the upstairs basis induced by the involution, as
    /// an index map, after checking every generator sits in exactly one
    /// orbit and the permutation preserves the pairing.
    pub fn permutation(&self, upstairs: &Lattice) -> Result<Vec<usize>, QuotientError> {
        let rank = upstairs.rank();
        let mut counts = vec![0usize; rank];
        let mut perm = vec![0usize; rank];
        for orbit in &self.orbits {
            match orbit {
                OrbitSpec::Swap { a, b, .. } => {
                    let ia = index_of(upstairs, a)?;
                    let ib = index_of(upstairs, b)?;
                    counts[ia] += 1;
                    counts[ib] += 1;
                    perm[ia] = ib;
                    perm[ib] = ia;
                }
                OrbitSpec::Invariant { curve, .. } => {
                    let ic = index_of(upstairs, curve)?;
                    counts[ic] += 1;
                    perm[ic] = ic;
                }
            }
        }
        for (idx, &count) in counts.iter().enumerate() {
            if count != 1 {
                return Err(QuotientError::OrbitCoverage {
                    label: upstairs.basis()[idx].clone(),
                    count,
                });
            }
        }
        let gram = upstairs.gram();
        for i in 0..rank {
            for j in 0..rank {
                if gram.get(perm[i], perm[j]) != gram.get(i, j) {
                    return Err(QuotientError::NotAnIsometry {
                        a: upstairs.basis()[i].clone(),
                        b: upstairs.basis()[j].clone(),
                    });
                }
            }
        }
        Ok(perm)
    }

    /// Image of a class under the involution, read off the generator
    /// permutation.
    pub fn apply(&self, class: &DivisorClass) -> Result<DivisorClass, QuotientError> {
        let lattice = class.lattice().clone();
        let perm = self.permutation(&lattice)?;
        let mut coords = vec![Rational::from_integer(0.into()); lattice.rank()];
        for (i, value) in class.coords().iter().enumerate() {
            coords[perm[i]] = value.clone();
        }
        Ok(lattice.class(coords)?)
    }
}

fn index_of(lattice: &Lattice, label: &str) -> Result<usize, QuotientError> {
    lattice.basis_index(label).ok_or_else(|| {
        QuotientError::Lattice(LatticeError::UnknownLabel {
            name: lattice.name().to_owned(),
            label: label.to_owned(),
        })
    })
}

/// Lattice of the quotient by a fixed-point-free involution: each orbit
/// image pairs by half the pairing of the orbit pullbacks, and every such
/// half must be an integer.
pub fn free_involution_quotient(
    upstairs: &Lattice,
    spec: &InvolutionSpec,
) -> Result<Lattice, QuotientError> {
    spec.permutation(upstairs)?; // validates coverage and the isometry
    let rank = upstairs.rank();
    let mut pullbacks: Vec<Vec<Rational>> = Vec::with_capacity(spec.orbits.len());
    let mut images: Vec<String> = Vec::with_capacity(spec.orbits.len());
    for orbit in &spec.orbits {
        let mut vector = vec![Rational::from_integer(0.into()); rank];
        for member in orbit.members() {
            vector[index_of(upstairs, member)?] += rational_from_integer(1);
        }
        pullbacks.push(vector);
        images.push(orbit.image().to_owned());
    }
    let count = images.len();
    let mut gram = RationalMatrix::zero(count, count);
    let two = rational_from_integer(2);
    for i in 0..count {
        for j in i..count {
            let upstairs_pairing = upstairs.gram().bilinear(&pullbacks[i], &pullbacks[j])?;
            let value = upstairs_pairing / &two;
            if !is_integer(&value) {
                return Err(QuotientError::HalfIntegralPairing {
                    a: images[i].clone(),
                    b: images[j].clone(),
                    value: rational_to_string(&value),
                });
            }
            gram.set(i, j, value.clone());
            gram.set(j, i, value);
        }
    }
    Ok(Lattice::builder(spec.name.clone(), images, gram)?.build())
}

/// Whether two integer combinations of named classes pair identically
/// against the whole generating set.
pub fn equivalence_holds(
    lattice: &Lattice,
    lhs: &[(i64, &str)],
    rhs: &[(i64, &str)],
) -> Result<bool, QuotientError> {
    let build = |terms: &[(i64, &str)]| -> Result<DivisorClass, LatticeError> {
        let terms: Vec<(Rational, &str)> = terms
            .iter()
            .map(|&(k, label)| (rational_from_integer(k), label))
            .collect();
        lattice.combination(&terms)
    };
    Ok(build(lhs)?.numerically_equal(&build(rhs)?)?)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::curves::arithmetic_genus;
    use crate::curves::tests::{branch_curves, pairing_table};
    use crate::exact::parse_rational;

    /// Integer-coefficient sides of an expected numerical equivalence.
    type EquivalenceSides = (
        &'static [(i64, &'static str)],
        &'static [(i64, &'static str)],
    );

    /// Nine fixed points: three giving a single (-3)-curve each, six giving
    /// a two-curve chain of (-2)-curves each.
    pub(crate) fn resolution_setup() -> CyclicQuotientSetup {
        let mut points = Vec::new();
        for i in 1..=3 {
            points.push(MarkedPoint::new(format!("O{i}"), 3, 1).unwrap());
        }
        for i in 1..=6 {
            points.push(MarkedPoint::new(format!("Q{i}"), 3, 2).unwrap());
        }
        let curves = branch_curves()
            .into_iter()
            .map(|mut record| {
                record.mults.resize(9, 0);
                record
            })
            .collect();
        CyclicQuotientSetup {
            name: "Y".to_owned(),
            group_order: 3,
            points,
            curves,
            pairing_table: pairing_table(),
        }
    }

    pub(crate) fn resolution() -> QuotientLattice {
        build_quotient_lattice(&resolution_setup()).unwrap()
    }

    /// The involution swapping each (-3)-curve with a strict transform and
    /// matching up the six chains in pairs.
    pub(crate) fn involution_spec() -> InvolutionSpec {
        let swap = |a: &str, b: &str, image: &str| OrbitSpec::Swap {
            a: a.to_owned(),
            b: b.to_owned(),
            image: image.to_owned(),
        };
        let inv = |curve: &str, image: &str| OrbitSpec::Invariant {
            curve: curve.to_owned(),
            image: image.to_owned(),
        };
        InvolutionSpec {
            name: "Z".to_owned(),
            orbits: vec![
                swap("E2'", "R1", "r1"),
                swap("E3'", "R2", "r2"),
                swap("E1'", "R3", "r3"),
                inv("C1'", "c1"),
                inv("C2'", "c2"),
                inv("C3'", "c3"),
                inv("C4'", "c4"),
                swap("R11", "R21", "r11"),
                swap("R12", "R22", "r12"),
                swap("R31", "R41", "r21"),
                swap("R32", "R42", "r22"),
                swap("R51", "R61", "r31"),
                swap("R52", "R62", "r32"),
            ],
        }
    }

    pub(crate) fn involution_surface() -> Lattice {
        free_involution_quotient(resolution().lattice(), &involution_spec()).unwrap()
    }

    fn int(n: i64) -> Rational {
        rational_from_integer(n)
    }

    #[test]
    fn chain_expansions() {
        assert_eq!(hj_chain(3, 1).unwrap().coefficients, vec![3]);
        assert_eq!(hj_chain(3, 2).unwrap().coefficients, vec![2, 2]);
        assert_eq!(hj_chain(2, 1).unwrap().coefficients, vec![2]);
        assert_eq!(hj_chain(5, 3).unwrap().coefficients, vec![2, 3]);
        assert_eq!(hj_chain(12, 5).unwrap().coefficients, vec![3, 2, 3]);
        for (n, a) in [(4, 2), (3, 0), (3, 3), (1, 1), (6, 4)] {
            assert!(hj_chain(n, a).is_err(), "({n}, {a}) accepted");
        }
    }

    #[test]
    fn chain_value_round_trip() {
        for (n, a) in [(3, 1), (3, 2), (2, 1), (5, 3), (12, 5), (17, 11)] {
            let chain = hj_chain(n, a).unwrap();
            let value = continued_fraction_value(&chain.coefficients).unwrap();
            assert_eq!(value, parse_rational(&format!("{n}/{a}")).unwrap());
        }
        assert!(continued_fraction_value(&[2, 1]).is_err());
    }

    #[test]
    fn chain_grams_and_discrepancies() {
        let single = hj_chain(3, 1).unwrap();
        assert_eq!(single.determinant(), int(-3));
        assert_eq!(
            single.discrepancies(),
            vec![parse_rational("-1/3").unwrap()]
        );

        let pair = hj_chain(3, 2).unwrap();
        assert_eq!(
            pair.gram(),
            RationalMatrix::from_i64_rows(&[vec![-2, 1], vec![1, -2]]).unwrap()
        );
        assert_eq!(pair.determinant(), int(3));
        assert_eq!(pair.discrepancies(), vec![int(0), int(0)]);

        let longer = hj_chain(12, 5).unwrap();
        assert_eq!(longer.determinant(), int(-12));
    }

    #[test]
    fn resolution_reproduces_the_pinned_table() {
        let resolution = resolution();
        let order = [
            "E1'", "E2'", "E3'", "R1", "R2", "R3", "C1'", "C2'", "C3'", "C4'",
        ];
        let expected = RationalMatrix::from_i64_rows(&[
            vec![-3, 0, 0, 3, 1, 2, 2, 2, 2, 2],
            vec![0, -3, 0, 2, 1, 3, 0, 0, 4, 4],
            vec![0, 0, -3, 1, 4, 1, 1, 1, 3, 3],
            vec![3, 2, 1, -3, 0, 0, 0, 0, 4, 4],
            vec![1, 1, 4, 0, -3, 0, 1, 1, 3, 3],
            vec![2, 3, 1, 0, 0, -3, 2, 2, 2, 2],
            vec![2, 0, 1, 0, 1, 2, -2, 4, 10, 4],
            vec![2, 0, 1, 0, 1, 2, 4, -2, 4, 10],
            vec![2, 4, 3, 4, 3, 2, 10, 4, 14, 20],
            vec![2, 4, 3, 4, 3, 2, 4, 10, 20, 14],
        ])
        .unwrap();
        assert_eq!(resolution.lattice().sub_gram(&order).unwrap(), expected);
    }

    #[test]
    fn chain_curves_are_isolated_from_the_table_curves() {
        let resolution = resolution();
        let lattice = resolution.lattice();
        let chain_labels: Vec<String> = (1..=6)
            .flat_map(|j| (1..=2).map(move |i| format!("R{j}{i}")))
            .collect();
        let refs: Vec<&str> = chain_labels.iter().map(String::as_str).collect();
        let blocks = lattice.sub_gram(&refs).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let expected = if i == j {
                    int(-2)
                } else if i / 2 == j / 2 {
                    int(1)
                } else {
                    int(0)
                };
                assert_eq!(blocks.get(i, j), &expected, "({i}, {j})");
            }
        }
        for table_label in [
            "E1'", "E2'", "E3'", "R1", "R2", "R3", "C1'", "C2'", "C3'", "C4'",
        ] {
            let class = lattice.named_class(table_label).unwrap();
            for chain_label in &chain_labels {
                let chain_curve = lattice.named_class(chain_label).unwrap();
                assert!(
                    class.pair(&chain_curve).unwrap().is_zero(),
                    "{table_label} meets {chain_label}"
                );
            }
        }
    }

    #[test]
    fn resolution_equivalences_hold() {
        let resolution = resolution();
        let lattice = resolution.lattice();
        let checks: [EquivalenceSides; 5] = [
            (
                &[(1, "E1'"), (1, "E2'"), (1, "R1"), (1, "R3")],
                &[(2, "E3'"), (2, "R2")],
            ),
            (&[(1, "C1'"), (1, "C3'")], &[(4, "E3'"), (4, "R2")]),
            (&[(1, "C2'"), (1, "C4'")], &[(4, "E3'"), (4, "R2")]),
            (
                &[(1, "E1'"), (1, "C1'"), (1, "C2'"), (1, "R3")],
                &[(3, "E3'"), (3, "R2")],
            ),
            (
                &[(1, "E2'"), (1, "E3'"), (1, "R1"), (1, "R2")],
                &[(1, "C1'"), (1, "C2'")],
            ),
        ];
        for (lhs, rhs) in checks {
            assert!(
                equivalence_holds(lattice, lhs, rhs).unwrap(),
                "{lhs:?} vs {rhs:?}"
            );
        }
        // A deliberately false relation must be recognized as false.
        assert!(!equivalence_holds(lattice, &[(1, "E1'")], &[(1, "E2'")]).unwrap());
    }

    #[test]
    fn pullback_of_the_canonical_transform() {
        let resolution = resolution();
        let lattice = resolution.lattice();
        let base = lattice.named_class("E3'").unwrap();
        let pulled = pullback(&resolution, &base).unwrap();
        let third = parse_rational("1/3").unwrap();
        let four_thirds = parse_rational("4/3").unwrap();
        assert_eq!(pulled.coord("E3'").unwrap(), &int(1));
        assert_eq!(pulled.coord("R1").unwrap(), &third);
        assert_eq!(pulled.coord("R2").unwrap(), &four_thirds);
        assert_eq!(pulled.coord("R3").unwrap(), &third);
        assert_eq!(pulled.coord("R11").unwrap(), &int(0));
    }

    #[test]
    fn canonical_class_of_the_resolution() {
        let resolution = resolution();
        let lattice = resolution.lattice();
        let canonical = canonical_on_resolution(&resolution, "E3'").unwrap();
        let expected = lattice
            .combination(&[(int(1), "E3'"), (int(1), "R2")])
            .unwrap();
        assert_eq!(canonical, expected);
        assert_eq!(canonical.self_intersection().unwrap(), int(2));
        // Adjunction downstairs: the (-3)-transforms are rational, the first
        // two table curves of square -2 are elliptic, the big ones have
        // arithmetic genus 11.
        for (label, expected_genus) in [("E1'", 0), ("C1'", 1), ("C3'", 11)] {
            let class = lattice.named_class(label).unwrap();
            let genus = arithmetic_genus(
                &class.self_intersection().unwrap(),
                &canonical.pair(&class).unwrap(),
            );
            assert_eq!(genus, int(expected_genus), "{label}");
        }
    }

    #[test]
    fn fibre_class_on_the_resolution() {
        let resolution = resolution();
        let lattice = resolution.lattice();
        let strict = lattice
            .combination(&[(int(-3), "E1'"), (int(15), "E2'")])
            .unwrap();
        let fibre = pullback(&resolution, &strict).unwrap();
        assert_eq!(fibre.coord("R1").unwrap(), &int(7));
        assert_eq!(fibre.coord("R2").unwrap(), &int(4));
        assert_eq!(fibre.coord("R3").unwrap(), &int(13));
        assert_eq!(fibre.self_intersection().unwrap(), int(0));
        let canonical = canonical_on_resolution(&resolution, "E3'").unwrap();
        assert_eq!(canonical.pair(&fibre).unwrap(), int(36));

        // One third of (fibre - single chain curves) is integral: the fibre
        // containing the three (-3)-curves is a triple fibre.
        let singles = lattice
            .combination(&[(int(1), "R1"), (int(1), "R2"), (int(1), "R3")])
            .unwrap();
        let third = parse_rational("1/3").unwrap();
        let reduced = fibre.sub(&singles).unwrap().scale(&third);
        assert!(reduced.has_integral_coords());

        // The variants over the two-curve chains have fractional coordinates
        // but still pair integrally with every generator.
        for chains in [[1i64, 2, 3], [4, 5, 6]] {
            let mut support = Vec::new();
            for j in chains {
                support.push((int(1), format!("R{j}1")));
                support.push((int(2), format!("R{j}2")));
            }
            let terms: Vec<(Rational, &str)> = support
                .iter()
                .map(|(k, label)| (k.clone(), label.as_str()))
                .collect();
            let correction = lattice.combination(&terms).unwrap();
            let variant = fibre.sub(&correction).unwrap().scale(&third);
            assert!(!variant.has_integral_coords());
            for label in lattice.basis() {
                let unit = lattice.named_class(label).unwrap();
                assert!(
                    is_integer(&variant.pair(&unit).unwrap()),
                    "variant pairs fractionally with {label}"
                );
            }
        }
    }

    #[test]
    fn pulled_back_curve_class_meets_its_image_fractionally() {
        let resolution = resolution();
        let lattice = resolution.lattice();
        let third = parse_rational("1/3").unwrap();
        let strict = lattice
            .combination(&[(int(2), "E3'"), (int(1), "C1'"), (int(-1), "C2'")])
            .unwrap()
            .scale(&third);
        let u = pullback(&resolution, &strict).unwrap();
        assert_eq!(u.self_intersection().unwrap(), int(0));
        assert_eq!(u.coord("R1").unwrap(), &parse_rational("2/9").unwrap());
        assert_eq!(u.coord("R2").unwrap(), &parse_rational("8/9").unwrap());
        assert_eq!(u.coord("R3").unwrap(), &parse_rational("2/9").unwrap());

        let spec = involution_spec();
        let w = spec.apply(&u).unwrap();
        assert_eq!(w.coord("E1'").unwrap(), &parse_rational("2/9").unwrap());
        assert_eq!(w.coord("E2'").unwrap(), &parse_rational("2/9").unwrap());
        assert_eq!(w.coord("E3'").unwrap(), &parse_rational("8/9").unwrap());
        assert_eq!(w.coord("R2").unwrap(), &parse_rational("2/3").unwrap());
        assert_eq!(spec.apply(&w).unwrap(), u);

        // The image pairs fractionally with the original class, so the two
        // cannot both be divisor classes on the surface.
        let meeting = u.pair(&w).unwrap();
        assert_eq!(meeting, parse_rational("4/3").unwrap());
        assert!(!is_integer(&meeting));
    }

    #[test]
    fn pullback_rejects_exceptional_support() {
        let resolution = resolution();
        let class = resolution.lattice().named_class("R1").unwrap();
        assert!(matches!(
            pullback(&resolution, &class),
            Err(QuotientError::PullbackSupport { .. })
        ));
        assert!(matches!(
            canonical_on_resolution(&resolution, "R2"),
            Err(QuotientError::UnknownTransform { .. })
        ));
    }

    #[test]
    fn genus_drop_under_the_cover() {
        assert_eq!(quotient_genus(4, 3, 6).unwrap(), 0);
        assert_eq!(quotient_genus(4, 3, 3).unwrap(), 1);
        assert_eq!(quotient_genus(10, 3, 9).unwrap(), 1);
        assert!(matches!(
            quotient_genus(4, 3, 5),
            Err(QuotientError::NonIntegralGenus { .. })
        ));
        assert!(matches!(
            quotient_genus(0, 2, 6),
            Err(QuotientError::ImpossibleGenus { .. })
        ));
    }

    #[test]
    fn noether_invariant_pins() {
        assert_eq!(
            noether_invariants(9, 1, 1, 1),
            NoetherInvariants {
                euler: 3,
                b2: 5,
                h11: 3
            }
        );
        assert_eq!(
            noether_invariants(2, 2, 0, 1),
            NoetherInvariants {
                euler: 22,
                b2: 20,
                h11: 18
            }
        );
        assert_eq!(
            noether_invariants(1, 1, 0, 0),
            NoetherInvariants {
                euler: 11,
                b2: 9,
                h11: 9
            }
        );
    }

    #[test]
    fn involution_quotient_reproduces_the_pinned_table() {
        let surface = involution_surface();
        let order = ["r1", "r2", "r3", "c1", "c2", "c3", "c4"];
        let expected = RationalMatrix::from_i64_rows(&[
            vec![-1, 1, 3, 0, 0, 4, 4],
            vec![1, 1, 1, 1, 1, 3, 3],
            vec![3, 1, -1, 2, 2, 2, 2],
            vec![0, 1, 2, -1, 2, 5, 2],
            vec![0, 1, 2, 2, -1, 2, 5],
            vec![4, 3, 2, 5, 2, 7, 10],
            vec![4, 3, 2, 2, 5, 10, 7],
        ])
        .unwrap();
        assert_eq!(surface.sub_gram(&order).unwrap(), expected);

        // The collapsed chains stay two-curve chains of (-2)-curves,
        // isolated from the table curves.
        for j in 1..=3 {
            let chain = surface
                .sub_gram(&[&format!("r{j}1"), &format!("r{j}2")])
                .unwrap();
            assert_eq!(
                chain,
                RationalMatrix::from_i64_rows(&[vec![-2, 1], vec![1, -2]]).unwrap()
            );
        }
    }

    #[test]
    fn involution_quotient_determinant_is_three_to_the_fourth() {
        let surface = involution_surface();
        let nine = ["r1", "r2", "c1", "r11", "r12", "r21", "r22", "r31", "r32"];
        let sub = surface.sub_gram(&nine).unwrap();
        assert_eq!(sub.determinant().unwrap(), int(81));
    }

    #[test]
    fn involution_quotient_genus_checks() {
        // Adjunction downstairs with the canonical image r2.
        let surface = involution_surface();
        let canonical = surface.named_class("r2").unwrap();
        for (label, expected_genus) in [("r1", 1), ("r2", 2), ("c1", 1), ("c3", 6)] {
            let class = surface.named_class(label).unwrap();
            let genus = arithmetic_genus(
                &class.self_intersection().unwrap(),
                &canonical.pair(&class).unwrap(),
            );
            assert_eq!(genus, int(expected_genus), "{label}");
        }
        assert_eq!(canonical.self_intersection().unwrap(), int(1));
    }

    #[test]
    fn involution_quotient_equivalences_hold() {
        let surface = involution_surface();
        let checks: [EquivalenceSides; 5] = [
            (&[(1, "r1"), (1, "r3")], &[(2, "r2")]),
            (&[(1, "c1"), (1, "c3")], &[(4, "r2")]),
            (&[(1, "c2"), (1, "c4")], &[(4, "r2")]),
            (&[(1, "c1"), (1, "c2"), (1, "r3")], &[(3, "r2")]),
            (&[(1, "r1"), (1, "r2")], &[(1, "c1"), (1, "c2")]),
        ];
        for (lhs, rhs) in checks {
            assert!(
                equivalence_holds(&surface, lhs, rhs).unwrap(),
                "{lhs:?} vs {rhs:?}"
            );
        }
    }

    #[test]
    fn halving_rule_examples_and_failures() {
        // A single invariant curve of square -4 descends to square -2.
        let gram = RationalMatrix::from_i64_rows(&[vec![-4]]).unwrap();
        let upstairs = Lattice::builder("up", vec!["A".to_owned()], gram)
            .unwrap()
            .build();
        let spec = InvolutionSpec {
            name: "down".to_owned(),
            orbits: vec![OrbitSpec::Invariant {
                curve: "A".to_owned(),
                image: "a".to_owned(),
            }],
        };
        let down = free_involution_quotient(&upstairs, &spec).unwrap();
        assert_eq!(
            down.named_class("a").unwrap().self_intersection().unwrap(),
            int(-2)
        );

        // Odd square cannot halve.
        let gram = RationalMatrix::from_i64_rows(&[vec![-3]]).unwrap();
        let upstairs = Lattice::builder("up", vec!["A".to_owned()], gram)
            .unwrap()
            .build();
        assert!(matches!(
            free_involution_quotient(&upstairs, &spec),
            Err(QuotientError::HalfIntegralPairing { .. })
        ));
    }

    #[test]
    fn involution_spec_validation() {
        let resolution = resolution();
        let lattice = resolution.lattice();

        // Swapping two curves of different squares is not an isometry.
        let mut bad = involution_spec();
        bad.orbits[0] = OrbitSpec::Swap {
            a: "E2'".to_owned(),
            b: "C1'".to_owned(),
            image: "r1".to_owned(),
        };
        bad.orbits[3] = OrbitSpec::Invariant {
            curve: "R1".to_owned(),
            image: "c1".to_owned(),
        };
        assert!(matches!(
            free_involution_quotient(lattice, &bad),
            Err(QuotientError::NotAnIsometry { .. })
        ));

        // Leaving a generator out of every orbit is caught.
        let mut missing = involution_spec();
        missing.orbits.pop();
        assert!(matches!(
            free_involution_quotient(lattice, &missing),
            Err(QuotientError::OrbitCoverage { .. })
        ));
    }

    #[test]
    fn orbifold_divisibility_is_enforced() {
        let mut setup = resolution_setup();
        setup.pairing_table.set(0, 1, int(14));
        setup.pairing_table.set(1, 0, int(14));
        let err = build_quotient_lattice(&setup).unwrap_err();
        match err {
            QuotientError::Divisibility {
                a,
                b,
                corrected,
                order,
            } => {
                assert_eq!(a, "E1'");
                assert_eq!(b, "E2'");
                assert_eq!(corrected, "1");
                assert_eq!(order, 3);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn multiplicity_at_a_long_chain_is_rejected() {
        let mut setup = resolution_setup();
        // A multiple of the group order keeps every orbifold correction
        // divisible, so only the chain attachment can complain.
        setup.curves[0].mults[3] = 3; // first two-curve chain point
        let err = build_quotient_lattice(&setup).unwrap_err();
        match err {
            QuotientError::AmbiguousChain { curve, point } => {
                assert_eq!(curve, "E1");
                assert_eq!(point, "Q1");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn setup_validation_errors() {
        let mut setup = resolution_setup();
        setup.curves[2].sigma_invariant = false;
        assert!(matches!(
            build_quotient_lattice(&setup),
            Err(QuotientError::NotInvariant { .. })
        ));

        let mut setup = resolution_setup();
        setup.points[0] = MarkedPoint::new("O1", 2, 1).unwrap();
        assert!(matches!(
            build_quotient_lattice(&setup),
            Err(QuotientError::PointOrderMismatch { .. })
        ));

        let mut setup = resolution_setup();
        setup.curves[0].mults.pop();
        assert!(matches!(
            build_quotient_lattice(&setup),
            Err(QuotientError::Curve(CurveError::MultiplicityCount { .. }))
        ));
    }
}
