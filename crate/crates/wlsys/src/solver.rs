//! Weakly linear systems and their greatest solutions.
//!
//! A system constrains an unknown fuzzy relation `U` by a family of
//! relational inequalities together with an upper bound. Twelve variants
//! are supported, tagged `wl1-1` … `wl1-6` (homogeneous: `U` is a relation
//! on one set `A`, constrained against relations `Vᵢ` on `A`) and `wl2-1`
//! … `wl2-6` (heterogeneous: `U` relates `A` to `B` and is constrained
//! against pairs `Vᵢ` on `A` and `Wᵢ` on `B`):
//!
//! | tag     | inequalities (for every `i`)                  | bound            |
//! |---------|-----------------------------------------------|------------------|
//! | `wl1-1` | `U∘Vᵢ ≤ Vᵢ∘U`                                 | `U ≤ W`          |
//! | `wl1-2` | `Vᵢ∘U ≤ U∘Vᵢ`                                 | `U ≤ W`          |
//! | `wl1-3` | `U∘Vᵢ = Vᵢ∘U`                                 | `U ≤ W`          |
//! | `wl1-4` | `U∘Vᵢ ≤ Vᵢ∘U`, `U⁻¹∘Vᵢ ≤ Vᵢ∘U⁻¹`              | `U ≤ W, U⁻¹ ≤ W` |
//! | `wl1-5` | `Vᵢ∘U ≤ U∘Vᵢ`, `Vᵢ∘U⁻¹ ≤ U⁻¹∘Vᵢ`              | `U ≤ W, U⁻¹ ≤ W` |
//! | `wl1-6` | `U∘Vᵢ = Vᵢ∘U`, `U⁻¹∘Vᵢ = Vᵢ∘U⁻¹`              | `U ≤ W, U⁻¹ ≤ W` |
//! | `wl2-1` | `U⁻¹∘Vᵢ ≤ Wᵢ∘U⁻¹`                             | `U ≤ Z`          |
//! | `wl2-2` | `Vᵢ∘U ≤ U∘Wᵢ`                                 | `U ≤ Z`          |
//! | `wl2-3` | `U⁻¹∘Vᵢ ≤ Wᵢ∘U⁻¹`, `U∘Wᵢ ≤ Vᵢ∘U`              | `U ≤ Z`          |
//! | `wl2-4` | `Vᵢ∘U ≤ U∘Wᵢ`, `Wᵢ∘U⁻¹ ≤ U⁻¹∘Vᵢ`              | `U ≤ Z`          |
//! | `wl2-5` | `Vᵢ∘U = U∘Wᵢ`                                 | `U ≤ Z`          |
//! | `wl2-6` | `U⁻¹∘Vᵢ = Wᵢ∘U⁻¹`                             | `U ≤ Z`          |
//!
//! The set of solutions of each variant is closed under arbitrary joins
//! and contains the empty relation, so a greatest solution always exists.
//! Each one-sided inequality is equivalent to `U ≤ atom(U)` for a residual
//! expression `atom` that is isotone in `U`; meeting the atoms of the
//! chosen variant over all `i` yields an isotone operator `φ` with
//!
//! > `U` solves the system  ⇔  `U ≤ φ(U)` and `U ≤ bound`.
//!
//! The solver iterates `R₁ = bound`, `Rₖ₊₁ = Rₖ ∧ φ(Rₖ)`. The sequence
//! descends, every solution stays below every iterate, and the first
//! repeated iterate is the greatest solution. Over a lattice where the
//! subalgebra generated by the instance values is finite the iteration
//! provably stabilizes; otherwise it may run forever, so it is cut off
//! after a configurable number of steps and the last iterate — an upper
//! bound on the greatest solution — is returned and marked accordingly.
//!
//! The crisp variant of the procedure restricts candidates to two-valued
//! relations. Its iteration removes at least one pair per step until it
//! stabilizes, so it always terminates, whatever the lattice.

use std::collections::BTreeSet;

use crate::exec;
use crate::lattice::{ResiduatedLattice, SubalgebraClosure, TruthValue};
use crate::relation::FuzzyRelation;
use crate::{Error, Result};

/// Iteration cap used by [`SolveOptions::default`].
pub const DEFAULT_MAX_ITERATIONS: usize = 1000;

/// Cap on the size of generated subalgebras used by
/// [`WeaklyLinearSystem::predict_termination`] and by the enumeration
/// oracle when deriving a carrier.
pub const DEFAULT_SUBALGEBRA_CAP: usize = 1024;

/// Whether a system relates one set to itself or two different sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Homogeneous,
    Heterogeneous,
}

/// A system family together with a variant number `1..=6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemKind {
    family: Family,
    variant: u8,
}

impl SystemKind {
    pub fn new(family: Family, variant: u8) -> Result<Self> {
        if !(1..=6).contains(&variant) {
            let tag = match family {
                Family::Homogeneous => format!("wl1-{variant}"),
                Family::Heterogeneous => format!("wl2-{variant}"),
            };
            return Err(Error::UnknownVariant(tag));
        }
        Ok(SystemKind { family, variant })
    }

    /// Parses a tag of the form `wl1-3` or `wl2-6`.
    pub fn parse(tag: &str) -> Result<Self> {
        let err = || Error::UnknownVariant(tag.to_string());
        let rest = tag.strip_prefix("wl").ok_or_else(err)?;
        let (fam, var) = rest.split_once('-').ok_or_else(err)?;
        let family = match fam {
            "1" => Family::Homogeneous,
            "2" => Family::Heterogeneous,
            _ => return Err(err()),
        };
        let variant: u8 = var.parse().map_err(|_| err())?;
        if !(1..=6).contains(&variant) {
            return Err(err());
        }
        Ok(SystemKind { family, variant })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn variant(&self) -> u8 {
        self.variant
    }
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fam = match self.family {
            Family::Homogeneous => 1,
            Family::Heterogeneous => 2,
        };
        write!(f, "wl{}-{}", fam, self.variant)
    }
}

/// Options for the iterative solver.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Stop after this many operator evaluations (must be at least 1).
    pub max_iterations: usize,
    /// Distribute matrix rows over threads; results are identical either
    /// way, and the flag is a no-op without the `parallel` feature.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            parallel: true,
        }
    }
}

/// How a solve run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    /// Two consecutive iterates were equal; the result is the greatest
    /// solution.
    Stabilized,
    /// The iteration cap was reached first. The result is the last
    /// iterate, an upper bound on the greatest solution; `verified` tells
    /// whether it happens to solve the system (in which case it is the
    /// greatest solution after all).
    CapReached,
}

/// The outcome of a solve run.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: FuzzyRelation,
    /// Number of operator evaluations performed.
    pub iterations: usize,
    pub status: SolveStatus,
    /// Whether `solution` satisfies the system, checked directly against
    /// the defining inequalities.
    pub verified: bool,
}

/// Result of a static termination check, see
/// [`WeaklyLinearSystem::predict_termination`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// The subalgebra generated by the instance values is finite with the
    /// given number of elements, so the iteration must stabilize.
    GuaranteedFinite(usize),
    /// The generated subalgebra exceeded its cap; stabilization is not
    /// guaranteed (nor refuted).
    Unknown,
}

/// A weakly linear system of one of the twelve variants.
#[derive(Clone, Debug)]
pub struct WeaklyLinearSystem {
    kind: SystemKind,
    v_rels: Vec<FuzzyRelation>,
    /// Empty for homogeneous systems.
    w_rels: Vec<FuzzyRelation>,
    bound: FuzzyRelation,
}

impl WeaklyLinearSystem {
    /// A homogeneous system `wl1-<variant>` over the index set of `bound`,
    /// with one inequality (or equation) per relation in `v_rels`.
    pub fn homogeneous(
        variant: u8,
        v_rels: Vec<FuzzyRelation>,
        bound: FuzzyRelation,
    ) -> Result<Self> {
        let kind = SystemKind::new(Family::Homogeneous, variant)?;
        bound.ensure_endorelation()?;
        for v in &v_rels {
            check_endorelation_over(v, bound.domain(), bound.lattice())?;
        }
        Ok(WeaklyLinearSystem {
            kind,
            v_rels,
            w_rels: Vec::new(),
            bound,
        })
    }

    /// A heterogeneous system `wl2-<variant>` between the domain and the
    /// codomain of `bound`, with one constraint per pair `(vᵢ, wᵢ)`.
    pub fn heterogeneous(
        variant: u8,
        v_rels: Vec<FuzzyRelation>,
        w_rels: Vec<FuzzyRelation>,
        bound: FuzzyRelation,
    ) -> Result<Self> {
        let kind = SystemKind::new(Family::Heterogeneous, variant)?;
        if v_rels.len() != w_rels.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} domain-side relations paired with {} codomain-side relations",
                v_rels.len(),
                w_rels.len()
            )));
        }
        for v in &v_rels {
            check_endorelation_over(v, bound.domain(), bound.lattice())?;
        }
        for w in &w_rels {
            check_endorelation_over(w, bound.codomain(), bound.lattice())?;
        }
        Ok(WeaklyLinearSystem {
            kind,
            v_rels,
            w_rels,
            bound,
        })
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn lattice(&self) -> ResiduatedLattice {
        self.bound.lattice()
    }

    pub fn domain(&self) -> &[String] {
        self.bound.domain()
    }

    pub fn codomain(&self) -> &[String] {
        self.bound.codomain()
    }

    pub fn v_relations(&self) -> &[FuzzyRelation] {
        &self.v_rels
    }

    /// Codomain-side relations; empty for homogeneous systems.
    pub fn w_relations(&self) -> &[FuzzyRelation] {
        &self.w_rels
    }

    pub fn bound(&self) -> &FuzzyRelation {
        &self.bound
    }

    /// Every value appearing in the instance, deduplicated.
    pub(crate) fn value_seeds(&self) -> Vec<TruthValue> {
        let mut seeds: BTreeSet<TruthValue> = self.bound.image();
        for r in self.v_rels.iter().chain(&self.w_rels) {
            seeds.extend(r.image());
        }
        seeds.into_iter().collect()
    }

    /// Computes the greatest solution by iterating `R ↦ R ∧ φ(R)` down
    /// from the bound until stabilization or the iteration cap.
    pub fn solve_greatest(&self, options: &SolveOptions) -> Result<SolveReport> {
        if options.max_iterations == 0 {
            return Err(Error::InvalidCap);
        }
        let core = self.core();
        let mut r = core.z.clone();
        let mut iterations = 0;
        let status = loop {
            iterations += 1;
            let phi = core.phi(&r, options.parallel);
            let next = r.meet(&phi).expect("operator preserves index sets");
            if next == r {
                break SolveStatus::Stabilized;
            }
            r = next;
            if iterations == options.max_iterations {
                break SolveStatus::CapReached;
            }
        };
        let solution = core.back(r);
        let verified = self.verify_solution(&solution)?;
        debug_assert!(
            status == SolveStatus::CapReached || verified,
            "a stabilized iterate must solve the system"
        );
        Ok(SolveReport {
            solution,
            iterations,
            status,
            verified,
        })
    }

    /// Computes the greatest crisp (two-valued) solution. The iteration
    /// can only remove pairs, so it terminates for every lattice; the cap
    /// in `options` is still honored.
    pub fn solve_greatest_crisp(&self, options: &SolveOptions) -> Result<SolveReport> {
        if options.max_iterations == 0 {
            return Err(Error::InvalidCap);
        }
        let core = self.core();
        let mut r = core.z.crisp_part();
        let mut iterations = 0;
        let status = loop {
            iterations += 1;
            let phi = core.phi_crisp(&r, options.parallel);
            let next = r.meet(&phi).expect("operator preserves index sets");
            if next == r {
                break SolveStatus::Stabilized;
            }
            r = next;
            if iterations == options.max_iterations {
                break SolveStatus::CapReached;
            }
        };
        let solution = core.back(r);
        let verified = self.verify_solution(&solution)?;
        debug_assert!(status == SolveStatus::CapReached || verified);
        Ok(SolveReport {
            solution,
            iterations,
            status,
            verified,
        })
    }

    /// Checks a candidate against the defining inequalities of the system,
    /// without involving the operator used by the solver. Returns an error
    /// only when the candidate's index sets or lattice do not match the
    /// system's.
    pub fn verify_solution(&self, u: &FuzzyRelation) -> Result<bool> {
        let direct = self.check_direct(u)?;
        #[cfg(debug_assertions)]
        {
            let core = self.core();
            let s = core.forward(u.clone());
            let phi_form =
                s.le(&core.z)? && s.le(&core.phi(&s, false)).expect("operator preserves shape");
            debug_assert_eq!(
                direct, phi_form,
                "direct and operator characterizations disagree"
            );
        }
        Ok(direct)
    }

    /// Applies the system's defining operator once to `r`, which must
    /// share the system's lattice and index sets. A candidate `u` solves
    /// the system exactly when it lies below the bound (below both the
    /// bound and its converse for the two-sided homogeneous variants)
    /// and `u ≤ phi(u)`; the operator is isotone, and the solver iterates
    /// `r ↦ r ∧ phi(r)` down from the bound until the sequence
    /// stabilizes.
    pub fn phi(&self, r: &FuzzyRelation) -> Result<FuzzyRelation> {
        if r.lattice() != self.lattice() {
            return Err(Error::LatticeMismatch {
                left: r.lattice().to_string(),
                right: self.lattice().to_string(),
            });
        }
        if r.domain() != self.domain() || r.codomain() != self.codomain() {
            return Err(Error::ShapeMismatch(
                "operator argument is not over the system's index sets".into(),
            ));
        }
        let core = self.core();
        let s = core.forward(r.clone());
        Ok(core.back(core.phi(&s, false)))
    }

    /// The direct inequality check, shared by [`Self::verify_solution`]
    /// and the enumeration oracle.
    pub(crate) fn check_direct(&self, u: &FuzzyRelation) -> Result<bool> {
        match self.kind.family {
            Family::Homogeneous => {
                let w = &self.bound;
                let uc = u.converse();
                let bound_ok = match self.kind.variant {
                    1..=3 => u.le(w)?,
                    _ => u.le(w)? && uc.le(w)?,
                };
                if !bound_ok {
                    return Ok(false);
                }
                for v in &self.v_rels {
                    let uv = u.compose(v)?;
                    let vu = v.compose(u)?;
                    let ok = match self.kind.variant {
                        1 => uv.le(&vu)?,
                        2 => vu.le(&uv)?,
                        3 => uv == vu,
                        4 => uv.le(&vu)? && uc.compose(v)?.le(&v.compose(&uc)?)?,
                        5 => vu.le(&uv)? && v.compose(&uc)?.le(&uc.compose(v)?)?,
                        6 => uv == vu && uc.compose(v)? == v.compose(&uc)?,
                        _ => unreachable!(),
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Family::Heterogeneous => {
                if !u.le(&self.bound)? {
                    return Ok(false);
                }
                let uc = u.converse();
                for (v, w) in self.v_rels.iter().zip(&self.w_rels) {
                    let ok = match self.kind.variant {
                        1 => uc.compose(v)?.le(&w.compose(&uc)?)?,
                        2 => v.compose(u)?.le(&u.compose(w)?)?,
                        3 => {
                            uc.compose(v)?.le(&w.compose(&uc)?)?
                                && u.compose(w)?.le(&v.compose(u)?)?
                        }
                        4 => {
                            v.compose(u)?.le(&u.compose(w)?)?
                                && w.compose(&uc)?.le(&uc.compose(v)?)?
                        }
                        5 => v.compose(u)? == u.compose(w)?,
                        6 => uc.compose(v)? == w.compose(&uc)?,
                        _ => unreachable!(),
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Statically checks whether stabilization is guaranteed: it is
    /// whenever the subalgebra generated by the values appearing in the
    /// instance is finite. `cap` bounds the saturation effort.
    pub fn predict_termination(&self, cap: usize) -> Termination {
        match self.lattice().generated_subalgebra(&self.value_seeds(), cap) {
            SubalgebraClosure::Finite(values) => Termination::GuaranteedFinite(values.len()),
            SubalgebraClosure::CapExceeded => Termination::Unknown,
        }
    }

    /// Rewrites the system onto the operator core. Homogeneous variants
    /// become heterogeneous ones over the pair `(A, A)`:
    ///
    /// * `wl1-1` asks for `U∘Vᵢ ≤ Vᵢ∘U`; substituting `S = U⁻¹` turns it
    ///   into `Vᵢ⁻¹∘S ≤ S∘Vᵢ⁻¹` — the `wl2-2` shape over the converses,
    ///   with bound `S ≤ W⁻¹` — and the solution maps back through the
    ///   converse.
    /// * `wl1-2`/`wl1-3` are the `wl2-2`/`wl2-5` shapes with `Wᵢ = Vᵢ`.
    /// * `wl1-4`–`wl1-6` add the converse-side inequalities, which are the
    ///   atoms of `wl2-1`/`wl2-4`, and fold the two bounds into
    ///   `U ≤ W ∧ W⁻¹`.
    fn core(&self) -> PhiCore {
        match self.kind.family {
            Family::Heterogeneous => {
                let atoms: &'static [u8] = match self.kind.variant {
                    1 => &[1],
                    2 => &[2],
                    3 => &[1, 3],
                    4 => &[2, 4],
                    5 => &[2, 3],
                    6 => &[1, 4],
                    _ => unreachable!(),
                };
                PhiCore {
                    v: self.v_rels.clone(),
                    w: self.w_rels.clone(),
                    z: self.bound.clone(),
                    atoms,
                    back: BackMap::Identity,
                }
            }
            Family::Homogeneous => {
                let (atoms, rels, z, back): (&'static [u8], Vec<FuzzyRelation>, _, _) =
                    match self.kind.variant {
                        1 => (
                            &[2],
                            self.v_rels.iter().map(FuzzyRelation::converse).collect(),
                            self.bound.converse(),
                            BackMap::Converse,
                        ),
                        2 => (&[2], self.v_rels.clone(), self.bound.clone(), BackMap::Identity),
                        3 => (
                            &[2, 3],
                            self.v_rels.clone(),
                            self.bound.clone(),
                            BackMap::Identity,
                        ),
                        v @ 4..=6 => {
                            let z = self
                                .bound
                                .meet(&self.bound.converse())
                                .expect("a bound meets its converse");
                            let atoms: &'static [u8] = match v {
                                4 => &[1, 3],
                                5 => &[2, 4],
                                _ => &[1, 2, 3, 4],
                            };
                            (atoms, self.v_rels.clone(), z, BackMap::Identity)
                        }
                        _ => unreachable!(),
                    };
                PhiCore {
                    v: rels.clone(),
                    w: rels,
                    z,
                    atoms,
                    back,
                }
            }
        }
    }
}

pub(crate) fn check_endorelation_over(
    r: &FuzzyRelation,
    labels: &[String],
    lattice: ResiduatedLattice,
) -> Result<()> {
    if r.lattice() != lattice {
        return Err(Error::LatticeMismatch {
            left: r.lattice().to_string(),
            right: lattice.to_string(),
        });
    }
    r.ensure_endorelation()?;
    if r.domain() != labels {
        return Err(Error::ShapeMismatch(
            "system relation is not over the expected index set".into(),
        ));
    }
    Ok(())
}

/// How a core solution maps back to a solution of the original system.
enum BackMap {
    Identity,
    Converse,
}

/// The operator data: families `v` (on `A`) and `w` (on `B`), bound `z`
/// (from `A` to `B`), and the selection of residual atoms to meet.
struct PhiCore {
    v: Vec<FuzzyRelation>,
    w: Vec<FuzzyRelation>,
    z: FuzzyRelation,
    atoms: &'static [u8],
    back: BackMap,
}

impl PhiCore {
    fn back(&self, r: FuzzyRelation) -> FuzzyRelation {
        match self.back {
            BackMap::Identity => r,
            BackMap::Converse => r.converse(),
        }
    }

    /// Maps a candidate for the original system onto the core unknown.
    fn forward(&self, u: FuzzyRelation) -> FuzzyRelation {
        match self.back {
            BackMap::Identity => u,
            BackMap::Converse => u.converse(),
        }
    }

    /// One residual atom. Each computes the greatest `X` satisfying its
    /// inequality with the other side frozen at `r`:
    ///
    /// 1. `X⁻¹ ∘ vᵢ ≤ wᵢ ∘ r⁻¹`
    /// 2. `vᵢ ∘ X ≤ r ∘ wᵢ`
    /// 3. `X ∘ wᵢ ≤ vᵢ ∘ r`
    /// 4. `wᵢ ∘ X⁻¹ ≤ r⁻¹ ∘ vᵢ`
    fn atom(&self, which: u8, i: usize, r: &FuzzyRelation, parallel: bool) -> FuzzyRelation {
        let v = &self.v[i];
        let w = &self.w[i];
        let shapes = "system shapes are validated at construction";
        match which {
            1 => {
                let target = w.compose_with(&r.converse(), parallel).expect(shapes);
                FuzzyRelation::right_residual_with(&target, v, parallel)
                    .expect(shapes)
                    .converse()
            }
            2 => {
                let target = r.compose_with(w, parallel).expect(shapes);
                FuzzyRelation::left_residual_with(v, &target, parallel).expect(shapes)
            }
            3 => {
                let target = v.compose_with(r, parallel).expect(shapes);
                FuzzyRelation::right_residual_with(&target, w, parallel).expect(shapes)
            }
            4 => {
                let target = r.converse().compose_with(v, parallel).expect(shapes);
                FuzzyRelation::left_residual_with(w, &target, parallel)
                    .expect(shapes)
                    .converse()
            }
            _ => unreachable!("atoms are numbered 1 through 4"),
        }
    }

    /// `φ(r)`: the meet of the selected atoms over every constraint index.
    /// With no constraints the meet is empty and `φ` is the universal
    /// relation, so only the bound remains.
    fn phi(&self, r: &FuzzyRelation, parallel: bool) -> FuzzyRelation {
        let mut acc: Option<FuzzyRelation> = None;
        for i in 0..self.v.len() {
            for &which in self.atoms {
                let atom = self.atom(which, i, r, parallel);
                acc = Some(match acc {
                    None => atom,
                    Some(prev) => prev.meet(&atom).expect("atoms share index sets"),
                });
            }
        }
        acc.unwrap_or_else(|| {
            FuzzyRelation::universal(
                self.z.lattice(),
                self.z.domain().to_vec(),
                self.z.codomain().to_vec(),
            )
            .expect("bound index sets are valid")
        })
    }

    /// The crisp counterpart of `φ`: entry `(a, b)` is 1 exactly when
    /// every selected atom evaluates to 1 there, which unfolds to the
    /// pointwise conditions below — no residuals involved. Equal to the
    /// crisp part of [`Self::phi`] for every argument.
    fn phi_crisp(&self, r: &FuzzyRelation, parallel: bool) -> FuzzyRelation {
        let (n, m) = (self.z.n_rows(), self.z.n_cols());
        let rc = r.converse();
        let mut w_rc = Vec::new();
        let mut r_w = Vec::new();
        let mut v_r = Vec::new();
        let mut rc_v = Vec::new();
        let shapes = "system shapes are validated at construction";
        for i in 0..self.v.len() {
            let (v, w) = (&self.v[i], &self.w[i]);
            w_rc.push(if self.atoms.contains(&1) {
                Some(w.compose_with(&rc, parallel).expect(shapes))
            } else {
                None
            });
            r_w.push(if self.atoms.contains(&2) {
                Some(r.compose_with(w, parallel).expect(shapes))
            } else {
                None
            });
            v_r.push(if self.atoms.contains(&3) {
                Some(v.compose_with(r, parallel).expect(shapes))
            } else {
                None
            });
            rc_v.push(if self.atoms.contains(&4) {
                Some(rc.compose_with(v, parallel).expect(shapes))
            } else {
                None
            });
        }
        let entries = exec::build_rows(n, m, parallel, |a| {
            (0..m)
                .map(|b| {
                    let full = (0..self.v.len()).all(|i| {
                        let v = &self.v[i];
                        let w = &self.w[i];
                        let atom1 = w_rc[i].as_ref().is_none_or(|t| {
                            (0..n).all(|a2| v.at(a, a2) <= t.at(b, a2))
                        });
                        let atom2 = r_w[i].as_ref().is_none_or(|t| {
                            (0..n).all(|a2| v.at(a2, a) <= t.at(a2, b))
                        });
                        let atom3 = v_r[i].as_ref().is_none_or(|t| {
                            (0..m).all(|b2| w.at(b, b2) <= t.at(a, b2))
                        });
                        let atom4 = rc_v[i].as_ref().is_none_or(|t| {
                            (0..m).all(|b2| w.at(b2, b) <= t.at(b2, a))
                        });
                        atom1 && atom2 && atom3 && atom4
                    });
                    if full {
                        TruthValue::one()
                    } else {
                        TruthValue::zero()
                    }
                })
                .collect()
        });
        FuzzyRelation::from_raw(
            self.z.lattice(),
            self.z.domain().to_vec(),
            self.z.codomain().to_vec(),
            entries,
        )
    }
}
