//! Quotients of fuzzy relational systems by fuzzy equivalences.
//!
//! A *fuzzy relational system* pairs a finite index set (the carrier)
//! with a family of fuzzy endorelations on it. A fuzzy equivalence `E`
//! on the carrier partitions it into classes — two elements share a
//! class exactly when their `E`-degree is 1 — and every relation `V` of
//! the system descends to the partition as `E ∘ V ∘ E`, read off at one
//! representative per class. The value does not depend on the chosen
//! representatives, which the construction re-verifies in debug builds.
//!
//! On top of the quotient construction this module provides:
//!
//! * [`natural_map`]: the canonical relation from a carrier onto its
//!   factor set, `(a, class of b) ↦ E(a, b)`;
//! * [`relative_quotient`]: for nested equivalences `E ≤ F`, the
//!   equivalence `F/E` that `F` induces on the classes of `E`;
//! * [`lift`]: the relation `F_E` from the carrier into the factor set
//!   of `E` given by `(a, class of b) ↦ F(a, b)`;
//! * [`induced_bijection`]: the bijection between the factor sets of the
//!   kernel and the cokernel of a uniform relation, `class of a ↦ class
//!   of ψ(a)` for any crisp description `ψ`;
//! * [`decompose_uniform_solution`]: splits a uniform solution of a
//!   two-sided heterogeneous system (`wl2-3` or `wl2-5`) into its kernel
//!   and cokernel — each solving a homogeneous system on one side — plus
//!   an isomorphism between the two quotient systems. Every claimed
//!   property of the output is re-checked before it is returned.

use crate::lattice::ResiduatedLattice;
use crate::relation::{validate_labels, FuzzyEquivalence, FuzzyRelation};
use crate::solver::{check_endorelation_over, Family, WeaklyLinearSystem};
use crate::{Error, Result};

/// The partition of an index set induced by a fuzzy equivalence: two
/// elements fall in the same class exactly when the equivalence relates
/// them to degree 1.
///
/// Classes are listed in order of their smallest member, members of each
/// class ascend, and each class is labelled by its first member's label
/// in brackets (`"[a1]"`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    labels: Vec<String>,
}

impl FactorSet {
    /// Partitions the index set of `e` by its degree-1 pairs. Transitivity
    /// of `e` (via `x ⊗ 1 = x`) makes "related to degree 1" an ordinary
    /// equivalence on indices, so a single sweep suffices.
    pub fn new(e: &FuzzyEquivalence) -> Self {
        let n = e.n_rows();
        let unassigned = usize::MAX;
        let mut class_of = vec![unassigned; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut representatives = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            if class_of[i] != unassigned {
                continue;
            }
            let k = classes.len();
            let mut members = Vec::new();
            for j in i..n {
                if class_of[j] == unassigned && e.at(i, j).is_one() {
                    class_of[j] = k;
                    members.push(j);
                }
            }
            representatives.push(i);
            labels.push(format!("[{}]", e.domain()[i]));
            classes.push(members);
        }
        FactorSet {
            classes,
            class_of,
            representatives,
            labels,
        }
    }

    /// Number of classes (the index of the equivalence).
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The classes, each a sorted list of member indices.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// The smallest member of each class, in class order.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// The class index of element `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Bracketed representative labels, one per class.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// A finite index set together with a family of fuzzy endorelations on
/// it, all over one lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyRelationalSystem {
    lattice: ResiduatedLattice,
    carrier: Vec<String>,
    relations: Vec<FuzzyRelation>,
}

impl FuzzyRelationalSystem {
    /// Validates that every relation is an endorelation on `carrier`
    /// over `lattice`. The family may be empty.
    pub fn new(
        lattice: ResiduatedLattice,
        carrier: Vec<String>,
        relations: Vec<FuzzyRelation>,
    ) -> Result<Self> {
        validate_labels(&carrier, "relational-system carrier")?;
        for r in &relations {
            check_endorelation_over(r, &carrier, lattice)?;
        }
        Ok(FuzzyRelationalSystem {
            lattice,
            carrier,
            relations,
        })
    }

    pub fn lattice(&self) -> ResiduatedLattice {
        self.lattice
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn relations(&self) -> &[FuzzyRelation] {
        &self.relations
    }
}

/// Whether `map` (a class-index function) is a bijection of the carriers
/// that carries the `i`-th relation of `a` onto the `i`-th relation of
/// `b` entry for entry.
pub fn is_isomorphism(a: &FuzzyRelationalSystem, b: &FuzzyRelationalSystem, map: &[usize]) -> bool {
    let n = a.carrier.len();
    if b.carrier.len() != n
        || map.len() != n
        || a.lattice != b.lattice
        || a.relations.len() != b.relations.len()
    {
        return false;
    }
    let mut hit = vec![false; n];
    for &t in map {
        if t >= n || hit[t] {
            return false;
        }
        hit[t] = true;
    }
    a.relations.iter().zip(&b.relations).all(|(v, w)| {
        (0..n).all(|x| (0..n).all(|y| v.at(x, y) == w.at(map[x], map[y])))
    })
}

fn ensure_over_carrier(
    e: &FuzzyEquivalence,
    carrier: &[String],
    lattice: ResiduatedLattice,
) -> Result<()> {
    if e.lattice() != lattice {
        return Err(Error::LatticeMismatch {
            left: e.lattice().to_string(),
            right: lattice.to_string(),
        });
    }
    if e.domain() != carrier {
        return Err(Error::ShapeMismatch(
            "equivalence is not over the expected index set".into(),
        ));
    }
    Ok(())
}

/// The quotient of `sys` by the fuzzy equivalence `e`: each relation `V`
/// descends to the factor set as `E ∘ V ∘ E` at class representatives.
///
/// In debug builds, every entry of `E ∘ V ∘ E` is re-checked against the
/// entry at its class representatives, confirming the quotient value is
/// independent of the representative choice.
pub fn quotient_system(
    sys: &FuzzyRelationalSystem,
    e: &FuzzyEquivalence,
) -> Result<(FuzzyRelationalSystem, FactorSet)> {
    ensure_over_carrier(e, &sys.carrier, sys.lattice)?;
    let factor = FactorSet::new(e);
    let reps = factor.representatives();
    let mut relations = Vec::with_capacity(sys.relations.len());
    for v in &sys.relations {
        let eve = e.relation().compose(v)?.compose(e.relation())?;
        #[cfg(debug_assertions)]
        for x in 0..eve.n_rows() {
            for y in 0..eve.n_cols() {
                debug_assert_eq!(
                    eve.at(x, y),
                    eve.at(reps[factor.class_of(x)], reps[factor.class_of(y)]),
                    "quotient entry depends on the representative choice"
                );
            }
        }
        let q = FuzzyRelation::from_fn(
            sys.lattice,
            factor.labels().to_vec(),
            factor.labels().to_vec(),
            |i, j| eve.at(reps[i], reps[j]).clone(),
        )?;
        relations.push(q);
    }
    let quotient = FuzzyRelationalSystem {
        lattice: sys.lattice,
        carrier: factor.labels().to_vec(),
        relations,
    };
    Ok((quotient, factor))
}

/// The natural map of a fuzzy equivalence: the relation from its index
/// set onto its factor set sending `(a, class of b)` to `E(a, b)`. It is
/// a uniform relation whose kernel is `e` itself.
pub fn natural_map(e: &FuzzyEquivalence) -> FuzzyRelation {
    let factor = FactorSet::new(e);
    let reps = factor.representatives().to_vec();
    FuzzyRelation::from_fn(
        e.lattice(),
        e.domain().to_vec(),
        factor.labels().to_vec(),
        |a, c| e.at(a, reps[c]).clone(),
    )
    .expect("the natural map of a valid equivalence is always well-formed")
}

fn ensure_nested(f: &FuzzyEquivalence, e: &FuzzyEquivalence) -> Result<()> {
    if e.lattice() != f.lattice() {
        return Err(Error::LatticeMismatch {
            left: e.lattice().to_string(),
            right: f.lattice().to_string(),
        });
    }
    if e.domain() != f.domain() {
        return Err(Error::ShapeMismatch(
            "the two equivalences are not over the same index set".into(),
        ));
    }
    if !e.relation().le(f.relation())? {
        return Err(Error::NotNested(
            "the equivalence being factored out must lie below the other",
        ));
    }
    Ok(())
}

/// For nested equivalences `e ≤ f` on one index set, the equivalence
/// `f/e` on the factor set of `e`: `(class of a, class of b) ↦ F(a, b)`.
///
/// Because `e ≤ f`, the value depends only on the classes (re-checked in
/// debug builds). Fails with [`Error::NotNested`] when `e ≰ f`.
pub fn relative_quotient(f: &FuzzyEquivalence, e: &FuzzyEquivalence) -> Result<FuzzyEquivalence> {
    ensure_nested(f, e)?;
    let factor = FactorSet::new(e);
    let reps = factor.representatives();
    #[cfg(debug_assertions)]
    for x in 0..f.n_rows() {
        for y in 0..f.n_cols() {
            debug_assert_eq!(
                f.at(x, y),
                f.at(reps[factor.class_of(x)], reps[factor.class_of(y)]),
                "relative quotient entry depends on the representative choice"
            );
        }
    }
    let rel = FuzzyRelation::from_fn(
        f.lattice(),
        factor.labels().to_vec(),
        factor.labels().to_vec(),
        |i, j| f.at(reps[i], reps[j]).clone(),
    )?;
    Ok(FuzzyEquivalence::new(rel)
        .expect("factoring an equivalence by a finer one yields an equivalence"))
}

/// For nested equivalences `e ≤ f`, the relation `F_E` from the index
/// set into the factor set of `e`: `(a, class of b) ↦ F(a, b)`. It is a
/// uniform relation with kernel `f` and cokernel `f/e`.
pub fn lift(f: &FuzzyEquivalence, e: &FuzzyEquivalence) -> Result<FuzzyRelation> {
    ensure_nested(f, e)?;
    let factor = FactorSet::new(e);
    let reps = factor.representatives();
    #[cfg(debug_assertions)]
    for x in 0..f.n_rows() {
        for y in 0..f.n_cols() {
            debug_assert_eq!(
                f.at(x, y),
                f.at(x, reps[factor.class_of(y)]),
                "lift entry depends on the representative choice"
            );
        }
    }
    FuzzyRelation::from_fn(
        f.lattice(),
        f.domain().to_vec(),
        factor.labels().to_vec(),
        |a, j| f.at(a, reps[j]).clone(),
    )
}

/// The bijection a uniform relation induces between the factor set of
/// its kernel and the factor set of its cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBijection {
    domain_classes: FactorSet,
    codomain_classes: FactorSet,
    map: Vec<usize>,
}

impl InducedBijection {
    /// The partition of the domain by the kernel.
    pub fn domain_classes(&self) -> &FactorSet {
        &self.domain_classes
    }

    /// The partition of the codomain by the cokernel.
    pub fn codomain_classes(&self) -> &FactorSet {
        &self.codomain_classes
    }

    /// For each domain class index, the matched codomain class index.
    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// The bijection `class of a ↦ class of ψ(a)` induced by a uniform
/// relation `r`, where `ψ` is any crisp description of `r` (a function
/// with `R(a, ψ(a)) = 1`).
///
/// The construction re-verifies, for every domain element and for two
/// independently chosen crisp descriptions, that the image class does
/// not depend on the choices, and that the resulting map is a bijection;
/// any failure reports [`Error::DecompositionCheckFailed`].
pub fn induced_bijection(r: &FuzzyRelation) -> Result<InducedBijection> {
    if !r.is_uniform() {
        return Err(Error::NotUniform);
    }
    let kernel = r.kernel();
    let cokernel = r.cokernel();
    let domain_classes = FactorSet::new(&kernel);
    let codomain_classes = FactorSet::new(&cokernel);
    // Lowest-index crisp description.
    let psi_lo = r.crisp_description()?;
    // Highest-index crisp description, chosen independently.
    let psi_hi: Vec<usize> = (0..r.n_rows())
        .map(|a| {
            r.row(a)
                .iter()
                .rposition(|v| v.is_one())
                .expect("a uniform relation has a 1 in every row")
        })
        .collect();
    let map: Vec<usize> = domain_classes
        .representatives()
        .iter()
        .map(|&rep| codomain_classes.class_of(psi_lo[rep]))
        .collect();
    for a in 0..r.n_rows() {
        let expected = map[domain_classes.class_of(a)];
        if codomain_classes.class_of(psi_lo[a]) != expected {
            return Err(Error::DecompositionCheckFailed(
                "the induced map depends on the choice of class member",
            ));
        }
        if codomain_classes.class_of(psi_hi[a]) != expected {
            return Err(Error::DecompositionCheckFailed(
                "the induced map depends on the choice of crisp description",
            ));
        }
    }
    let mut hit = vec![false; codomain_classes.class_count()];
    for &t in &map {
        if hit[t] {
            return Err(Error::DecompositionCheckFailed(
                "the induced map is not injective on classes",
            ));
        }
        hit[t] = true;
    }
    if !hit.iter().all(|&h| h) {
        return Err(Error::DecompositionCheckFailed(
            "the induced map is not onto the codomain classes",
        ));
    }
    Ok(InducedBijection {
        domain_classes,
        codomain_classes,
        map,
    })
}

/// A uniform solution of a two-sided heterogeneous system, split into
/// its two homogeneous shadows and the isomorphism connecting their
/// quotient systems.
#[derive(Clone, Debug)]
pub struct UniformDecomposition {
    /// Kernel of the solution; solves the domain-side homogeneous system
    /// with two-sided form (`wl1-4`) and bound `Z ∘ Z⁻¹`.
    pub kernel: FuzzyEquivalence,
    /// Cokernel of the solution; solves the codomain-side homogeneous
    /// system (`wl1-4` for a `wl2-3` input, `wl1-5` for `wl2-5`) with
    /// bound `Z⁻¹ ∘ Z`.
    pub cokernel: FuzzyEquivalence,
    /// The domain relational system factored by the kernel.
    pub domain_quotient: FuzzyRelationalSystem,
    /// The codomain relational system factored by the cokernel.
    pub codomain_quotient: FuzzyRelationalSystem,
    /// The class bijection, an isomorphism of the two quotient systems.
    pub bijection: InducedBijection,
}

/// Decomposes a uniform solution `r` of a `wl2-3` or `wl2-5` system:
/// its kernel solves the domain-side homogeneous system, its cokernel
/// the codomain-side one, and the induced bijection is an isomorphism of
/// the corresponding quotient relational systems.
///
/// All three claims are re-verified before returning; a failure reports
/// [`Error::DecompositionCheckFailed`]. The inputs are gated first:
/// `r` must be uniform ([`Error::NotUniform`]) and must solve the system
/// ([`Error::NotASolution`]).
pub fn decompose_uniform_solution(
    system: &WeaklyLinearSystem,
    r: &FuzzyRelation,
) -> Result<UniformDecomposition> {
    let kind = system.kind();
    if kind.family() != Family::Heterogeneous || !matches!(kind.variant(), 3 | 5) {
        return Err(Error::DecompositionCheckFailed(
            "system must be of kind wl2-3 or wl2-5",
        ));
    }
    if !r.is_uniform() {
        return Err(Error::NotUniform);
    }
    if !system.verify_solution(r)? {
        return Err(Error::NotASolution);
    }
    let kernel = r.kernel();
    let cokernel = r.cokernel();
    debug_assert_eq!(
        kernel.relation(),
        &r.compose(&r.converse())?,
        "for a uniform relation the kernel coincides with R ∘ R⁻¹"
    );
    debug_assert_eq!(
        cokernel.relation(),
        &r.converse().compose(r)?,
        "for a uniform relation the cokernel coincides with R⁻¹ ∘ R"
    );

    let z = system.bound();
    let domain_bound = z.compose(&z.converse())?;
    let codomain_bound = z.converse().compose(z)?;
    let kernel_system =
        WeaklyLinearSystem::homogeneous(4, system.v_relations().to_vec(), domain_bound)?;
    if !kernel_system.verify_solution(kernel.relation())? {
        return Err(Error::DecompositionCheckFailed(
            "the kernel does not solve its homogeneous system",
        ));
    }
    let codomain_variant = if kind.variant() == 3 { 4 } else { 5 };
    let cokernel_system = WeaklyLinearSystem::homogeneous(
        codomain_variant,
        system.w_relations().to_vec(),
        codomain_bound,
    )?;
    if !cokernel_system.verify_solution(cokernel.relation())? {
        return Err(Error::DecompositionCheckFailed(
            "the cokernel does not solve its homogeneous system",
        ));
    }

    let domain_system = FuzzyRelationalSystem::new(
        system.lattice(),
        system.domain().to_vec(),
        system.v_relations().to_vec(),
    )?;
    let codomain_system = FuzzyRelationalSystem::new(
        system.lattice(),
        system.codomain().to_vec(),
        system.w_relations().to_vec(),
    )?;
    let (domain_quotient, domain_factor) = quotient_system(&domain_system, &kernel)?;
    let (codomain_quotient, codomain_factor) = quotient_system(&codomain_system, &cokernel)?;
    let bijection = induced_bijection(r)?;
    debug_assert_eq!(bijection.domain_classes(), &domain_factor);
    debug_assert_eq!(bijection.codomain_classes(), &codomain_factor);
    if !is_isomorphism(&domain_quotient, &codomain_quotient, bijection.map()) {
        return Err(Error::DecompositionCheckFailed(
            "the induced bijection is not an isomorphism of the quotient systems",
        ));
    }
    Ok(UniformDecomposition {
        kernel,
        cokernel,
        domain_quotient,
        codomain_quotient,
        bijection,
    })
}
