//! Intersection lattices and divisor classes.
//!
//! A [`Lattice`] is an ordered list of basis labels together with a symmetric
//! Gram matrix of exact rationals; a [`DivisorClass`] is a rational coordinate
//! vector over one lattice. The pairing of two classes is `x^T G y`, and a
//! class can be recovered from its pairings against the basis as `G^{-1} p`
//! when the Gram form is nondegenerate.
//!
//! Lattices are immutable once built and cheap to share (the handle is a
//! reference-counted pointer). Labelled non-basis classes (curves known only
//! through their pairings) are registered at construction time through
//! [`LatticeBuilder::embed_by_pairings`].
//!
//! A lattice presented on a generating set rather than a basis (the resolved
//! quotient surface below is generated by 22 curves of rank 18) has a
//! degenerate Gram matrix; pairing and formal sums still make sense, and
//! numerical equality is decided by pairing against every generator, which on
//! a nondegenerate lattice coincides with coordinate equality.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::exact::{rational_to_string, ExactError, Rational, RationalMatrix};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice {name:?}: basis has {basis} labels but Gram matrix is {rows}x{cols}")]
    ShapeMismatch {
        name: String,
        basis: usize,
        rows: usize,
        cols: usize,
    },
    #[error("lattice {name:?}: Gram matrix is not symmetric")]
    NotSymmetric { name: String },
    #[error("lattice {name:?}: label {label:?} already names a class")]
    DuplicateLabel { name: String, label: String },
    #[error("lattice {name:?}: no class named {label:?}")]
    UnknownLabel { name: String, label: String },
    #[error("classes live on different lattices ({left:?} vs {right:?})")]
    LatticeMismatch { left: String, right: String },
    #[error("lattice {name:?}: expected {expected} coordinates, got {got}")]
    CoordinateLength {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("lattice {name:?}: Gram form is degenerate, cannot recover coordinates")]
    Degenerate { name: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug)]
struct LatticeData {
    name: String,
    basis: Vec<String>,
    gram: RationalMatrix,
    /// Registered non-basis classes, by label, as coordinate vectors.
    named: BTreeMap<String, Vec<Rational>>,
}

/// Immutable intersection lattice handle. Clones share the same data.
#[derive(Debug, Clone)]
pub struct Lattice {
    data: Arc<LatticeData>,
}

/// Builds a [`Lattice`], embedding labelled classes before freezing it.
#[derive(Debug)]
pub struct LatticeBuilder {
    data: LatticeData,
}

impl LatticeBuilder {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        gram: RationalMatrix,
    ) -> Result<Self, LatticeError> {
        let name = name.into();
        if gram.rows() != basis.len() || gram.cols() != basis.len() {
            return Err(LatticeError::ShapeMismatch {
                name,
                basis: basis.len(),
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric { name });
        }
        for (i, label) in basis.iter().enumerate() {
            if basis[..i].contains(label) {
                return Err(LatticeError::DuplicateLabel {
                    name,
                    label: label.clone(),
                });
            }
        }
        Ok(Self {
            data: LatticeData {
                name,
                basis,
                gram,
                named: BTreeMap::new(),
            },
        })
    }

    /// Registers the class whose pairings against the basis are `pairings`.
    /// Requires a nondegenerate Gram form; rejects duplicate labels
    /// (including basis labels).
    pub fn embed_by_pairings(
        mut self,
        label: impl Into<String>,
        pairings: &[Rational],
    ) -> Result<Self, LatticeError> {
        let label = label.into();
        self.check_fresh(&label)?;
        let coords = coords_from_pairings_raw(&self.data.name, &self.data.gram, pairings)?;
        self.data.named.insert(label, coords);
        Ok(self)
    }

    /// Registers a class directly by coordinates (for generating-set lattices,
    /// where pairings do not determine coordinates).
    pub fn register(
        mut self,
        label: impl Into<String>,
        coords: Vec<Rational>,
    ) -> Result<Self, LatticeError> {
        let label = label.into();
        self.check_fresh(&label)?;
        if coords.len() != self.data.basis.len() {
            return Err(LatticeError::CoordinateLength {
                name: self.data.name.clone(),
                expected: self.data.basis.len(),
                got: coords.len(),
            });
        }
        self.data.named.insert(label, coords);
        Ok(self)
    }

    pub fn build(self) -> Lattice {
        Lattice {
            data: Arc::new(self.data),
        }
    }

    fn check_fresh(&self, label: &str) -> Result<(), LatticeError> {
        if self.data.basis.iter().any(|b| b == label) || self.data.named.contains_key(label) {
            return Err(LatticeError::DuplicateLabel {
                name: self.data.name.clone(),
                label: label.to_owned(),
            });
        }
        Ok(())
    }
}

fn coords_from_pairings_raw(
    name: &str,
    gram: &RationalMatrix,
    pairings: &[Rational],
) -> Result<Vec<Rational>, LatticeError> {
    if pairings.len() != gram.rows() {
        return Err(LatticeError::CoordinateLength {
            name: name.to_owned(),
            expected: gram.rows(),
            got: pairings.len(),
        });
    }
    let inverse = gram.inverse().map_err(|e| match e {
        ExactError::Singular => LatticeError::Degenerate {
            name: name.to_owned(),
        },
        other => LatticeError::Exact(other),
    })?;
    Ok(inverse.mul_vec(pairings)?)
}

impl Lattice {
    pub fn builder(
        name: impl Into<String>,
        basis: Vec<String>,
        gram: RationalMatrix,
    ) -> Result<LatticeBuilder, LatticeError> {
        LatticeBuilder::new(name, basis, gram)
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn rank(&self) -> usize {
        self.data.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.data.basis
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.data.basis.iter().position(|b| b == label)
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.data.gram
    }

    pub fn determinant(&self) -> Result<Rational, LatticeError> {
        Ok(self.data.gram.determinant()?)
    }

    /// Labels of all registered non-basis classes, sorted.
    pub fn embedded_labels(&self) -> impl Iterator<Item = &str> {
        self.data.named.keys().map(String::as_str)
    }

    pub fn same_lattice(&self, other: &Lattice) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.name == other.data.name
                && self.data.basis == other.data.basis
                && self.data.gram == other.data.gram)
    }

    pub fn class(&self, coords: Vec<Rational>) -> Result<DivisorClass, LatticeError> {
        if coords.len() != self.rank() {
            return Err(LatticeError::CoordinateLength {
                name: self.data.name.clone(),
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(DivisorClass {
            lattice: self.clone(),
            coords,
        })
    }

    pub fn zero_class(&self) -> DivisorClass {
        DivisorClass {
            lattice: self.clone(),
            coords: vec![Rational::zero(); self.rank()],
        }
    }

    /// The class named `label`: either a basis element (unit coordinates) or a
    /// class registered at build time.
    pub fn named_class(&self, label: &str) -> Result<DivisorClass, LatticeError> {
        if let Some(i) = self.basis_index(label) {
            let mut coords = vec![Rational::zero(); self.rank()];
            coords[i] = Rational::from_integer(1.into());
            return self.class(coords);
        }
        if let Some(coords) = self.data.named.get(label) {
            return self.class(coords.clone());
        }
        Err(LatticeError::UnknownLabel {
            name: self.data.name.clone(),
            label: label.to_owned(),
        })
    }

    /// Linear combination of named classes.
    pub fn combination(&self, terms: &[(Rational, &str)]) -> Result<DivisorClass, LatticeError> {
        let mut acc = self.zero_class();
        for (coeff, label) in terms {
            let term = self.named_class(label)?.scale(coeff);
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Recovers the unique class with the given pairings against the basis.
    pub fn coords_from_pairings(
        &self,
        pairings: &[Rational],
    ) -> Result<DivisorClass, LatticeError> {
        let coords = coords_from_pairings_raw(&self.data.name, &self.data.gram, pairings)?;
        self.class(coords)
    }

    /// Gram matrix restricted to the given basis labels, in the given order.
    pub fn sub_gram(&self, labels: &[&str]) -> Result<RationalMatrix, LatticeError> {
        let idx = labels
            .iter()
            .map(|l| {
                self.basis_index(l)
                    .ok_or_else(|| LatticeError::UnknownLabel {
                        name: self.data.name.clone(),
                        label: (*l).to_owned(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.data.gram.submatrix(&idx, &idx))
    }
}

/// A divisor class: rational coordinates over one lattice.
#[derive(Debug, Clone)]
pub struct DivisorClass {
    lattice: Lattice,
    coords: Vec<Rational>,
}

impl DivisorClass {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, label: &str) -> Result<&Rational, LatticeError> {
        let i = self
            .lattice
            .basis_index(label)
            .ok_or_else(|| LatticeError::UnknownLabel {
                name: self.lattice.name().to_owned(),
                label: label.to_owned(),
            })?;
        Ok(&self.coords[i])
    }

    fn require_same_lattice(&self, other: &DivisorClass) -> Result<(), LatticeError> {
        if self.lattice.same_lattice(&other.lattice) {
            Ok(())
        } else {
            Err(LatticeError::LatticeMismatch {
                left: self.lattice.name().to_owned(),
                right: other.lattice.name().to_owned(),
            })
        }
    }

    /// Intersection pairing `x^T G y`. Classes must share a lattice.
    pub fn pair(&self, other: &DivisorClass) -> Result<Rational, LatticeError> {
        self.require_same_lattice(other)?;
        Ok(self.lattice.gram().bilinear(&self.coords, &other.coords)?)
    }

    pub fn self_intersection(&self) -> Result<Rational, LatticeError> {
        self.pair(self)
    }

    /// Pairings against every basis element: `G x`.
    pub fn pairings_against_basis(&self) -> Vec<Rational> {
        self.lattice
            .gram()
            .mul_vec(&self.coords)
            .expect("coordinate length matches lattice rank")
    }

    /// Numerical equality: the difference pairs to zero against every basis
    /// element. On a nondegenerate lattice this is coordinate equality.
    pub fn numerically_equal(&self, other: &DivisorClass) -> Result<bool, LatticeError> {
        self.require_same_lattice(other)?;
        let diff = self.sub(other)?;
        Ok(diff.pairings_against_basis().iter().all(Zero::is_zero))
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.require_same_lattice(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.lattice.class(coords)
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.require_same_lattice(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        self.lattice.class(coords)
    }

    pub fn scale(&self, factor: &Rational) -> DivisorClass {
        DivisorClass {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn neg(&self) -> DivisorClass {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when every coordinate is an integer.
    pub fn has_integral_coords(&self) -> bool {
        self.coords.iter().all(crate::exact::is_integer)
    }

    /// Coordinates rendered as exact strings, for reports.
    pub fn coords_display(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(rational_to_string).collect();
        format!("({})", parts.join(", "))
    }
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.same_lattice(&other.lattice) && self.coords == other.coords
    }
}

impl Eq for DivisorClass {}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exact::{parse_rational, rational_from_integer};

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn rats(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| rat(s)).collect()
    }

    /// The rank-3 sublattice generated by two exceptional curves and one
    /// branch curve, with all the labelled classes used in the tests.
    pub(crate) fn surface_lattice() -> Lattice {
        let gram = RationalMatrix::from_i64_rows(&[vec![5, 9, 11], vec![9, 9, 9], vec![11, 9, -1]])
            .unwrap();
        let labels = ["E1", "E3", "C1"].map(String::from).to_vec();
        Lattice::builder("NS(X)", labels, gram)
            .unwrap()
            .embed_by_pairings("E2", &rats(&["13", "9", "7"]))
            .unwrap()
            .embed_by_pairings("C2", &rats(&["11", "9", "17"]))
            .unwrap()
            .embed_by_pairings("C3", &rats(&["25", "27", "37"]))
            .unwrap()
            .embed_by_pairings("C4", &rats(&["25", "27", "19"]))
            .unwrap()
            .embed_by_pairings("F", &rats(&["60", "36", "24"]))
            .unwrap()
            .embed_by_pairings("K", &rats(&["9", "9", "9"]))
            .unwrap()
            .build()
    }

    #[test]
    fn determinant_is_324() {
        assert_eq!(
            surface_lattice().determinant().unwrap(),
            rational_from_integer(324)
        );
    }

    #[test]
    fn embedded_classes_have_expected_coordinates() {
        let l = surface_lattice();
        assert_eq!(
            l.named_class("E2").unwrap().coords(),
            rats(&["-1", "2", "0"])
        );
        assert_eq!(
            l.named_class("C2").unwrap().coords(),
            rats(&["-1", "3", "-1"])
        );
        assert_eq!(
            l.named_class("C3").unwrap().coords(),
            rats(&["0", "4", "-1"])
        );
        assert_eq!(
            l.named_class("C4").unwrap().coords(),
            rats(&["1", "1", "1"])
        );
        assert_eq!(l.named_class("K").unwrap().coords(), rats(&["0", "1", "0"]));
        assert_eq!(
            l.named_class("F").unwrap().coords(),
            rats(&["-6", "10", "0"])
        );
    }

    #[test]
    fn coordinate_recovery_examples() {
        let l = surface_lattice();
        let d1 = l.coords_from_pairings(&rats(&["2", "2", "0"])).unwrap();
        assert_eq!(d1.coords(), rats(&["1/9", "-1/9", "2/9"]));
        let d2 = l.coords_from_pairings(&rats(&["2", "2", "4"])).unwrap();
        assert_eq!(d2.coords(), rats(&["-1/9", "5/9", "-2/9"]));
        assert_eq!(d1.pair(&d2).unwrap(), rat("8/9"));
        assert_eq!(d1.self_intersection().unwrap(), rat("0"));
        assert_eq!(d2.self_intersection().unwrap(), rat("0"));
    }

    #[test]
    fn fibre_class_squares_to_zero() {
        let l = surface_lattice();
        let f = l.named_class("F").unwrap();
        // F = -E1 + 5 E2: expanding the square gives 5 - 130 + 125 = 0.
        let e1 = l.named_class("E1").unwrap();
        let e2 = l.named_class("E2").unwrap();
        let expanded = e1.neg().add(&e2.scale(&rat("5"))).unwrap();
        assert_eq!(f, expanded);
        assert_eq!(f.self_intersection().unwrap(), rat("0"));
        assert_eq!(f.pair(&l.named_class("K").unwrap()).unwrap(), rat("36"));
    }

    #[test]
    fn listed_equivalences_hold() {
        let l = surface_lattice();
        let comb = |terms: &[(&str, &str)]| {
            let terms: Vec<(Rational, &str)> = terms.iter().map(|(c, n)| (rat(c), *n)).collect();
            l.combination(&terms).unwrap()
        };
        let checks = [
            (vec![("1", "K")], vec![("1", "E3")]),
            (vec![("1", "E1"), ("1", "E2")], vec![("2", "E3")]),
            (vec![("4", "E3")], vec![("1", "C1"), ("1", "C3")]),
            (vec![("4", "E3")], vec![("1", "C2"), ("1", "C4")]),
            (
                vec![("3", "E3")],
                vec![("1", "E1"), ("1", "C1"), ("1", "C2")],
            ),
            (
                vec![("1", "E2"), ("1", "E3")],
                vec![("1", "C1"), ("1", "C2")],
            ),
        ];
        for (lhs, rhs) in checks {
            let a = comb(&lhs);
            let b = comb(&rhs);
            assert!(
                a.numerically_equal(&b).unwrap(),
                "{lhs:?} should be numerically equal to {rhs:?}"
            );
        }
    }

    #[test]
    fn duplicate_and_unknown_labels_are_rejected() {
        let gram = RationalMatrix::from_i64_rows(&[vec![1]]).unwrap();
        let b = Lattice::builder("L", vec!["A".into()], gram).unwrap();
        let err = b.embed_by_pairings("A", &rats(&["1"])).unwrap_err();
        assert!(matches!(err, LatticeError::DuplicateLabel { .. }));
        let l = surface_lattice();
        assert!(matches!(
            l.named_class("nope"),
            Err(LatticeError::UnknownLabel { .. })
        ));
    }

    #[test]
    fn asymmetric_gram_is_rejected() {
        let gram = RationalMatrix::from_i64_rows(&[vec![1, 2], vec![3, 1]]).unwrap();
        let err = Lattice::builder("L", vec!["A".into(), "B".into()], gram).unwrap_err();
        assert!(matches!(err, LatticeError::NotSymmetric { .. }));
    }

    #[test]
    fn mismatched_lattices_cannot_pair() {
        let l1 = surface_lattice();
        let gram = RationalMatrix::from_i64_rows(&[vec![-2]]).unwrap();
        let l2 = Lattice::builder("other", vec!["A".into()], gram)
            .unwrap()
            .build();
        let a = l1.named_class("E1").unwrap();
        let b = l2.named_class("A").unwrap();
        assert!(matches!(
            a.pair(&b),
            Err(LatticeError::LatticeMismatch { .. })
        ));
        assert!(matches!(
            a.numerically_equal(&b),
            Err(LatticeError::LatticeMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_gram_cannot_recover_coordinates() {
        let gram = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        let l = Lattice::builder("D", vec!["A".into(), "B".into()], gram)
            .unwrap()
            .build();
        assert!(matches!(
            l.coords_from_pairings(&rats(&["1", "1"])),
            Err(LatticeError::Degenerate { .. })
        ));
        // Distinct formal sums can still be numerically equal here.
        let a = l.named_class("A").unwrap();
        let b = l.named_class("B").unwrap();
        assert!(a.numerically_equal(&b).unwrap());
        assert_ne!(a, b);
    }
}
