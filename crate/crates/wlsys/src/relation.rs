//! Dense fuzzy relations between labeled finite sets.
//!
//! A relation `R: A × B → L` is stored row-major with exact rational
//! entries. Relations are immutable after construction: every operation
//! returns a fresh relation, and binary operations verify that the two
//! operands live over the same lattice and the same index sets. The
//! module also provides the residuals of composition (the workhorses of
//! the solver), kernels of relations, and the predicates — functionality,
//! surjectivity, uniformity, extensionality — used by the quotient and
//! automata layers.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use crate::exec;
use crate::lattice::{ResiduatedLattice, TruthValue};
use crate::{Error, Result};

/// A fuzzy relation between two labeled finite sets.
#[derive(Clone, PartialEq, Eq)]
pub struct FuzzyRelation {
    lattice: ResiduatedLattice,
    domain: Vec<String>,
    codomain: Vec<String>,
    /// Row-major: entry `(i, j)` sits at `i * codomain.len() + j`.
    entries: Vec<TruthValue>,
}

pub(crate) fn validate_labels(labels: &[String], side: &'static str) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptyDomain(side));
    }
    let mut seen = BTreeSet::new();
    for label in labels {
        if !seen.insert(label) {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(())
}

impl FuzzyRelation {
    /// Builds a relation from a row-per-domain-element matrix, validating
    /// labels, shape, and carrier membership of every entry.
    pub fn new(
        lattice: ResiduatedLattice,
        domain: Vec<String>,
        codomain: Vec<String>,
        rows: Vec<Vec<TruthValue>>,
    ) -> Result<Self> {
        validate_labels(&domain, "domain")?;
        validate_labels(&codomain, "codomain")?;
        if rows.len() != domain.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} rows, expected {}",
                rows.len(),
                domain.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != codomain.len() {
                return Err(Error::ShapeMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    codomain.len()
                )));
            }
            for v in row {
                lattice.check_member(v)?;
            }
        }
        Ok(FuzzyRelation {
            lattice,
            domain,
            codomain,
            entries: rows.concat(),
        })
    }

    /// Builds a relation by evaluating `f(i, j)` at every index pair.
    pub fn from_fn<F>(
        lattice: ResiduatedLattice,
        domain: Vec<String>,
        codomain: Vec<String>,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(usize, usize) -> TruthValue,
    {
        validate_labels(&domain, "domain")?;
        validate_labels(&codomain, "codomain")?;
        let mut entries = Vec::with_capacity(domain.len() * codomain.len());
        for i in 0..domain.len() {
            for j in 0..codomain.len() {
                let v = f(i, j);
                lattice.check_member(&v)?;
                entries.push(v);
            }
        }
        Ok(FuzzyRelation {
            lattice,
            domain,
            codomain,
            entries,
        })
    }

    /// The universal relation: every entry is 1.
    pub fn universal(
        lattice: ResiduatedLattice,
        domain: Vec<String>,
        codomain: Vec<String>,
    ) -> Result<Self> {
        Self::from_fn(lattice, domain, codomain, |_, _| TruthValue::one())
    }

    /// The empty relation: every entry is 0.
    pub fn empty(
        lattice: ResiduatedLattice,
        domain: Vec<String>,
        codomain: Vec<String>,
    ) -> Result<Self> {
        Self::from_fn(lattice, domain, codomain, |_, _| TruthValue::zero())
    }

    /// The identity relation on one index set.
    pub fn identity(lattice: ResiduatedLattice, labels: Vec<String>) -> Result<Self> {
        Self::from_fn(lattice, labels.clone(), labels, |i, j| {
            if i == j {
                TruthValue::one()
            } else {
                TruthValue::zero()
            }
        })
    }

    /// Internal constructor for entries already known to be valid.
    pub(crate) fn from_raw(
        lattice: ResiduatedLattice,
        domain: Vec<String>,
        codomain: Vec<String>,
        entries: Vec<TruthValue>,
    ) -> Self {
        debug_assert_eq!(entries.len(), domain.len() * codomain.len());
        debug_assert!(entries.iter().all(|v| lattice.contains(v)));
        FuzzyRelation {
            lattice,
            domain,
            codomain,
            entries,
        }
    }

    pub fn lattice(&self) -> ResiduatedLattice {
        self.lattice
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn n_rows(&self) -> usize {
        self.domain.len()
    }

    pub fn n_cols(&self) -> usize {
        self.codomain.len()
    }

    /// Entry at `(i, j)`; panics when out of range.
    pub fn at(&self, i: usize, j: usize) -> &TruthValue {
        &self.entries[i * self.codomain.len() + j]
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[TruthValue] {
        let w = self.codomain.len();
        &self.entries[i * w..(i + 1) * w]
    }

    /// True when domain and codomain are the same labeled set.
    pub fn is_endorelation(&self) -> bool {
        self.domain == self.codomain
    }

    /// The set of values taken by the entries.
    pub fn image(&self) -> BTreeSet<TruthValue> {
        self.entries.iter().cloned().collect()
    }

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch {
                left: self.lattice.to_string(),
                right: other.lattice.to_string(),
            });
        }
        Ok(())
    }

    fn ensure_same_sets(&self, other: &Self) -> Result<()> {
        self.ensure_compatible(other)?;
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::ShapeMismatch(
                "pointwise operation on relations over different index sets".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn ensure_endorelation(&self) -> Result<()> {
        if self.domain.len() != self.codomain.len() {
            return Err(Error::NotSquare {
                rows: self.domain.len(),
                cols: self.codomain.len(),
            });
        }
        if self.domain != self.codomain {
            return Err(Error::ShapeMismatch(
                "domain and codomain labels differ".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise meet.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.ensure_same_sets(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| self.lattice.meet(x, y))
            .collect();
        Ok(Self::from_raw(
            self.lattice,
            self.domain.clone(),
            self.codomain.clone(),
            entries,
        ))
    }

    /// Pointwise join.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.ensure_same_sets(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| self.lattice.join(x, y))
            .collect();
        Ok(Self::from_raw(
            self.lattice,
            self.domain.clone(),
            self.codomain.clone(),
            entries,
        ))
    }

    /// Pointwise order: true when every entry of `self` is at most the
    /// corresponding entry of `other`.
    pub fn le(&self, other: &Self) -> Result<bool> {
        self.ensure_same_sets(other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(x, y)| x <= y))
    }

    /// Relational composition `(R ∘ S)(a, c) = ⋁_b R(a, b) ⊗ S(b, c)`.
    /// The codomain of `self` must equal the domain of `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.compose_with(other, true)
    }

    pub(crate) fn compose_with(&self, other: &Self, parallel: bool) -> Result<Self> {
        self.ensure_compatible(other)?;
        if self.codomain != other.domain {
            return Err(Error::ShapeMismatch(
                "composition: codomain of the left relation differs from the domain of the right"
                    .into(),
            ));
        }
        let lat = self.lattice;
        let (n, k, m) = (self.n_rows(), self.n_cols(), other.n_cols());
        let entries = exec::build_rows(n, m, parallel, |i| {
            (0..m)
                .map(|j| {
                    let mut acc = TruthValue::zero();
                    for t in 0..k {
                        acc = lat.join(&acc, &lat.otimes(self.at(i, t), other.at(t, j)));
                        if acc.is_one() {
                            break;
                        }
                    }
                    acc
                })
                .collect()
        });
        Ok(Self::from_raw(
            lat,
            self.domain.clone(),
            other.codomain.clone(),
            entries,
        ))
    }

    /// The greatest `U` with `V ∘ U ≤ Z`, given entrywise by
    /// `(b, c) ↦ ⋀_a (V(a, b) → Z(a, c))`. `v` and `z` must share their
    /// domain; the result maps the codomain of `v` to the codomain of `z`.
    pub fn left_residual(v: &Self, z: &Self) -> Result<Self> {
        Self::left_residual_with(v, z, true)
    }

    pub(crate) fn left_residual_with(v: &Self, z: &Self, parallel: bool) -> Result<Self> {
        v.ensure_compatible(z)?;
        if v.domain != z.domain {
            return Err(Error::ShapeMismatch(
                "left residual: the two relations must share their domain".into(),
            ));
        }
        let lat = v.lattice;
        let (k, n, m) = (v.n_rows(), v.n_cols(), z.n_cols());
        let entries = exec::build_rows(n, m, parallel, |b| {
            (0..m)
                .map(|c| {
                    let mut acc = TruthValue::one();
                    for a in 0..k {
                        acc = lat.meet(&acc, &lat.residuum(v.at(a, b), z.at(a, c)));
                        if acc.is_zero() {
                            break;
                        }
                    }
                    acc
                })
                .collect()
        });
        Ok(Self::from_raw(
            lat,
            v.codomain.clone(),
            z.codomain.clone(),
            entries,
        ))
    }

    /// The greatest `U` with `U ∘ W ≤ Z`, given entrywise by
    /// `(a, b) ↦ ⋀_c (W(b, c) → Z(a, c))`. `w` and `z` must share their
    /// codomain; the result maps the domain of `z` to the domain of `w`.
    pub fn right_residual(z: &Self, w: &Self) -> Result<Self> {
        Self::right_residual_with(z, w, true)
    }

    pub(crate) fn right_residual_with(z: &Self, w: &Self, parallel: bool) -> Result<Self> {
        z.ensure_compatible(w)?;
        if w.codomain != z.codomain {
            return Err(Error::ShapeMismatch(
                "right residual: the two relations must share their codomain".into(),
            ));
        }
        let lat = z.lattice;
        let (n, m, k) = (z.n_rows(), w.n_rows(), z.n_cols());
        let entries = exec::build_rows(n, m, parallel, |a| {
            (0..m)
                .map(|b| {
                    let mut acc = TruthValue::one();
                    for c in 0..k {
                        acc = lat.meet(&acc, &lat.residuum(w.at(b, c), z.at(a, c)));
                        if acc.is_zero() {
                            break;
                        }
                    }
                    acc
                })
                .collect()
        });
        Ok(Self::from_raw(
            lat,
            z.domain.clone(),
            w.domain.clone(),
            entries,
        ))
    }

    /// The converse relation `R⁻¹(b, a) = R(a, b)`.
    pub fn converse(&self) -> Self {
        let (n, m) = (self.n_rows(), self.n_cols());
        let mut entries = Vec::with_capacity(n * m);
        for j in 0..m {
            for i in 0..n {
                entries.push(self.at(i, j).clone());
            }
        }
        Self::from_raw(
            self.lattice,
            self.codomain.clone(),
            self.domain.clone(),
            entries,
        )
    }

    /// The crisp part: entries equal to 1 survive, everything else drops
    /// to 0.
    pub fn crisp_part(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|v| {
                if v.is_one() {
                    TruthValue::one()
                } else {
                    TruthValue::zero()
                }
            })
            .collect();
        Self::from_raw(
            self.lattice,
            self.domain.clone(),
            self.codomain.clone(),
            entries,
        )
    }

    /// True when every entry is 0 or 1.
    pub fn is_crisp(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero() || v.is_one())
    }

    /// The kernel `E(a₁, a₂) = ⋀_b (R(a₁, b) ↔ R(a₂, b))`: the degree to
    /// which two domain elements have equal rows. Always a fuzzy
    /// equivalence on the domain.
    pub fn kernel(&self) -> FuzzyEquivalence {
        self.kernel_with(true)
    }

    pub(crate) fn kernel_with(&self, parallel: bool) -> FuzzyEquivalence {
        let lat = self.lattice;
        let (n, m) = (self.n_rows(), self.n_cols());
        let entries = exec::build_rows(n, n, parallel, |i| {
            (0..n)
                .map(|j| {
                    let mut acc = TruthValue::one();
                    for b in 0..m {
                        acc = lat.meet(&acc, &lat.biresiduum(self.at(i, b), self.at(j, b)));
                        if acc.is_zero() {
                            break;
                        }
                    }
                    acc
                })
                .collect()
        });
        let rel = Self::from_raw(lat, self.domain.clone(), self.domain.clone(), entries);
        FuzzyEquivalence::new(rel).expect("a kernel is an equivalence by construction")
    }

    /// The kernel of the converse: how equal two codomain elements' columns
    /// are. Always a fuzzy equivalence on the codomain.
    pub fn cokernel(&self) -> FuzzyEquivalence {
        self.converse().kernel()
    }

    /// Reflexivity; false for relations between different index sets.
    pub fn is_reflexive(&self) -> bool {
        self.is_endorelation() && (0..self.n_rows()).all(|i| self.at(i, i).is_one())
    }

    /// Symmetry; false for relations between different index sets.
    pub fn is_symmetric(&self) -> bool {
        self.is_endorelation()
            && (0..self.n_rows()).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// Transitivity `R ∘ R ≤ R`; false for relations between different
    /// index sets.
    pub fn is_transitive(&self) -> bool {
        if !self.is_endorelation() {
            return false;
        }
        let square = self.compose(self).expect("endorelations compose");
        square.le(self).expect("shapes agree by construction")
    }

    /// True when every row contains an entry equal to 1.
    pub fn is_l_function(&self) -> bool {
        (0..self.n_rows()).all(|i| self.row(i).iter().any(|v| v.is_one()))
    }

    /// True when every column contains an entry equal to 1.
    pub fn is_surjective(&self) -> bool {
        (0..self.n_cols()).all(|j| (0..self.n_rows()).any(|i| self.at(i, j).is_one()))
    }

    /// Partial functionality, characterized by `R ∘ R⁻¹ ∘ R ≤ R`.
    pub fn is_partial_fuzzy_function(&self) -> bool {
        let back = self.compose(&self.converse()).expect("shapes align");
        let round = back.compose(self).expect("shapes align");
        round.le(self).expect("shapes agree by construction")
    }

    /// Uniformity: a surjective L-function with `R ∘ R⁻¹ ∘ R = R`. For an
    /// L-function `R ≤ R ∘ R⁻¹ ∘ R` holds automatically, so partial
    /// functionality is the only inequality left to check.
    pub fn is_uniform(&self) -> bool {
        self.is_l_function() && self.is_surjective() && self.is_partial_fuzzy_function()
    }

    /// The crisp description of an L-function: for each domain element,
    /// the lowest codomain index whose entry equals 1.
    pub fn crisp_description(&self) -> Result<Vec<usize>> {
        (0..self.n_rows())
            .map(|i| {
                self.row(i)
                    .iter()
                    .position(TruthValue::is_one)
                    .ok_or_else(|| Error::NotAnLFunction {
                        row: self.domain[i].clone(),
                    })
            })
            .collect()
    }

    /// Extensionality with respect to an equivalence on each side:
    /// `E ∘ R ≤ R` and `R ∘ F ≤ R`.
    pub fn is_extensional(&self, e: &FuzzyEquivalence, f: &FuzzyEquivalence) -> Result<bool> {
        Ok(e.relation().compose(self)?.le(self)? && self.compose(f.relation())?.le(self)?)
    }

    /// The transitive closure `⋁_{k ≥ 1} Rᵏ` of an endorelation. Because
    /// `x ⊗ y ≤ x ∧ y`, a product over a long path is dominated by the
    /// product over the path with its loops removed, so the join is
    /// attained on paths of length at most the number of elements and the
    /// squaring iteration below terminates.
    pub fn transitive_closure(&self) -> Result<Self> {
        self.ensure_endorelation()?;
        let mut s = self.clone();
        loop {
            let next = s.join(&s.compose(&s)?)?;
            if next == s {
                return Ok(s);
            }
            s = next;
        }
    }
}

impl fmt::Debug for FuzzyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n_rows() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n_cols() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]:{}", self.lattice)
    }
}

/// A fuzzy relation on one index set that is reflexive, symmetric, and
/// transitive. The constructor verifies all three properties, so a value
/// of this type is a proof that they hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyEquivalence(FuzzyRelation);

impl FuzzyEquivalence {
    /// Validates that `rel` is a fuzzy equivalence.
    pub fn new(rel: FuzzyRelation) -> Result<Self> {
        if rel.n_rows() != rel.n_cols() {
            return Err(Error::NotSquare {
                rows: rel.n_rows(),
                cols: rel.n_cols(),
            });
        }
        if !rel.is_endorelation() {
            return Err(Error::NotAnEquivalence("domain and codomain labels differ"));
        }
        if !rel.is_reflexive() {
            return Err(Error::NotAnEquivalence("not reflexive"));
        }
        if !rel.is_symmetric() {
            return Err(Error::NotAnEquivalence("not symmetric"));
        }
        if !rel.is_transitive() {
            return Err(Error::NotAnEquivalence("not transitive"));
        }
        Ok(FuzzyEquivalence(rel))
    }

    /// The universal equivalence relating everything to degree 1.
    pub fn universal(lattice: ResiduatedLattice, labels: Vec<String>) -> Result<Self> {
        let rel = FuzzyRelation::universal(lattice, labels.clone(), labels)?;
        Ok(FuzzyEquivalence(rel))
    }

    /// The identity equivalence.
    pub fn identity(lattice: ResiduatedLattice, labels: Vec<String>) -> Result<Self> {
        Ok(FuzzyEquivalence(FuzzyRelation::identity(lattice, labels)?))
    }

    pub fn relation(&self) -> &FuzzyRelation {
        &self.0
    }

    pub fn into_relation(self) -> FuzzyRelation {
        self.0
    }

    /// The meet of two equivalences on the same set, again an equivalence.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        let rel = self.0.meet(&other.0)?;
        Ok(FuzzyEquivalence::new(rel).expect("a meet of equivalences is an equivalence"))
    }
}

impl Deref for FuzzyEquivalence {
    type Target = FuzzyRelation;

    fn deref(&self) -> &FuzzyRelation {
        &self.0
    }
}
