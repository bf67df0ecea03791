//! Brute-force reference solver: enumerate every candidate relation over a
//! finite carrier of truth values and join the ones that solve the system.
//!
//! The solution set of a weakly linear system is closed under arbitrary
//! joins, so the join of all solutions is itself the greatest solution.
//! This module computes that join literally, testing each candidate against
//! the defining inequalities one by one. It shares nothing with the
//! iterative solver beyond the direct inequality checker, which makes it a
//! useful independent cross-check on small instances.
//!
//! By default the carrier is the subalgebra generated by the values
//! appearing in the instance. Every iterate of the solving operator — in
//! particular the greatest solution — has its entries in that subalgebra,
//! so whenever it is finite the enumeration finds the true greatest
//! solution. A caller-supplied carrier restricts the search instead to
//! relations whose entries lie in the given set; the result is then the
//! greatest such solution (entrywise joins never leave the set, because the
//! supported lattices are linearly ordered). If no enumerated candidate
//! solves the system, the empty relation — which solves every variant — is
//! returned even when `0` is absent from the carrier.
//!
//! Enumeration cost is `|carrier|^(rows·cols)` candidates, so this is
//! strictly a desk-scale tool; [`EnumerationSpace::bounded_count`] enforces
//! a candidate limit before any work starts.

use std::ops::Range;

use num::{traits::Pow, BigUint, ToPrimitive};

use crate::lattice::{ResiduatedLattice, SubalgebraClosure, TruthValue};
use crate::relation::{validate_labels, FuzzyRelation};
use crate::solver::{Family, WeaklyLinearSystem, DEFAULT_SUBALGEBRA_CAP};
use crate::{Error, Result};

/// Default cap on the number of enumerated candidates.
pub const DEFAULT_MAX_CANDIDATES: u64 = 1_000_000;

/// Distribute candidates over threads only at or above this count.
#[cfg(feature = "parallel")]
const PAR_MIN_CANDIDATES: u64 = 2_048;

/// Candidates folded per work unit on the parallel path.
#[cfg(feature = "parallel")]
const PAR_CHUNK: u64 = 1_024;

/// Options for the brute-force solver.
#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Enumerate entries from this set instead of the generated subalgebra
    /// of the instance values. Values must belong to the lattice carrier;
    /// duplicates are ignored.
    pub carrier: Option<Vec<TruthValue>>,
    /// Refuse to enumerate more candidates than this.
    pub max_candidates: u64,
    /// Distribute candidates over threads; results are identical either
    /// way, and the flag is a no-op without the `parallel` feature.
    pub parallel: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            carrier: None,
            max_candidates: DEFAULT_MAX_CANDIDATES,
            parallel: true,
        }
    }
}

/// All relations between two labeled index sets whose entries are drawn
/// from a fixed finite set of truth values.
///
/// Candidates are indexed `0..count` by reading a matrix as a little-endian
/// mixed-radix numeral: cell `(0, 0)` is the least significant digit and
/// digits run through the sorted carrier, so index `0` is the constant
/// relation at the smallest carrier value.
#[derive(Clone, Debug)]
pub struct EnumerationSpace {
    lattice: ResiduatedLattice,
    domain: Vec<String>,
    codomain: Vec<String>,
    carrier: Vec<TruthValue>,
}

impl EnumerationSpace {
    /// Builds a space after validating labels and carrier membership. The
    /// carrier is sorted and deduplicated; it must be nonempty.
    pub fn new(
        lattice: ResiduatedLattice,
        domain: Vec<String>,
        codomain: Vec<String>,
        carrier: Vec<TruthValue>,
    ) -> Result<Self> {
        validate_labels(&domain, "domain")?;
        validate_labels(&codomain, "codomain")?;
        if carrier.is_empty() {
            return Err(Error::EmptyDomain("enumeration carrier"));
        }
        for value in &carrier {
            lattice.check_member(value)?;
        }
        let mut carrier = carrier;
        carrier.sort();
        carrier.dedup();
        Ok(EnumerationSpace {
            lattice,
            domain,
            codomain,
            carrier,
        })
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

    /// The entry values, ascending and distinct.
    pub fn carrier(&self) -> &[TruthValue] {
        &self.carrier
    }

    fn cells(&self) -> usize {
        self.domain.len() * self.codomain.len()
    }

    fn exact_count(&self) -> BigUint {
        BigUint::from(self.carrier.len()).pow(self.cells())
    }

    /// Number of candidates, `|carrier|^(rows·cols)`, or `None` when it
    /// does not fit in a `u128`.
    pub fn count(&self) -> Option<u128> {
        self.exact_count().to_u128()
    }

    /// The candidate count if it is at most `limit`, otherwise
    /// [`Error::SpaceTooLarge`] carrying the exact count.
    pub fn bounded_count(&self, limit: u64) -> Result<u64> {
        let exact = self.exact_count();
        if exact <= BigUint::from(limit) {
            Ok(exact.to_u64().expect("count at most the u64 limit"))
        } else {
            Err(Error::SpaceTooLarge {
                candidates: exact.to_string(),
                limit,
            })
        }
    }

    /// Decodes a candidate index into its relation. Indices at or beyond
    /// the count wrap silently in release builds; callers are expected to
    /// stay below a [`Self::bounded_count`].
    pub fn relation_at(&self, index: u64) -> FuzzyRelation {
        let base = self.carrier.len() as u64;
        let mut rest = index;
        let mut entries = Vec::with_capacity(self.cells());
        for _ in 0..self.cells() {
            entries.push(self.carrier[(rest % base) as usize].clone());
            rest /= base;
        }
        debug_assert_eq!(rest, 0, "candidate index out of range");
        FuzzyRelation::from_raw(
            self.lattice,
            self.domain.clone(),
            self.codomain.clone(),
            entries,
        )
    }
}

/// Streams every relation of the space exactly once, smallest index first,
/// refusing spaces larger than [`DEFAULT_MAX_CANDIDATES`].
pub fn enumerate_relations(
    space: &EnumerationSpace,
) -> Result<impl Iterator<Item = FuzzyRelation> + '_> {
    let count = space.bounded_count(DEFAULT_MAX_CANDIDATES)?;
    Ok((0..count).map(move |index| space.relation_at(index)))
}

/// The greatest solution of the system by literal join of all solutions
/// found in the default enumeration space. See
/// [`brute_force_greatest_with`].
pub fn brute_force_greatest(system: &WeaklyLinearSystem) -> Result<FuzzyRelation> {
    brute_force_greatest_with(system, &OracleOptions::default())
}

/// The greatest solution of the system by literal join of all enumerated
/// candidates that pass the direct inequality check.
///
/// The result is re-verified against the system before it is returned.
/// Errors: [`Error::CarrierNotFinite`] when no carrier override is given
/// and the generated subalgebra of the instance values exceeds its cap,
/// [`Error::SpaceTooLarge`] when the candidate count exceeds
/// `options.max_candidates`, and [`Error::OutsideCarrier`] for an override
/// value outside the lattice.
pub fn brute_force_greatest_with(
    system: &WeaklyLinearSystem,
    options: &OracleOptions,
) -> Result<FuzzyRelation> {
    let space = space_for(system, options)?;
    let count = space.bounded_count(options.max_candidates)?;
    let flags = |candidate: &FuzzyRelation| Ok([system.check_direct(candidate)?]);
    let [best] = fold_space(&space, count, options.parallel, &flags)?;
    finish(system, best)
}

/// Greatest solutions of all six variants sharing this system's data, in
/// variant order `1..=6`, from a single enumeration pass.
///
/// Candidates are classified by evaluating the compositions appearing in
/// the defining inequalities once and combining the comparison outcomes per
/// variant, independently of the per-system checker. Each of the six
/// results is re-verified against a freshly constructed system of its
/// variant.
pub fn brute_force_greatest_all_variants(
    system: &WeaklyLinearSystem,
    options: &OracleOptions,
) -> Result<Vec<FuzzyRelation>> {
    let space = space_for(system, options)?;
    let count = space.bounded_count(options.max_candidates)?;
    let family = system.kind().family();
    let folds = match family {
        Family::Homogeneous => {
            let flags = |candidate: &FuzzyRelation| {
                homogeneous_flags(candidate, system.v_relations(), system.bound())
            };
            fold_space(&space, count, options.parallel, &flags)?
        }
        Family::Heterogeneous => {
            let flags = |candidate: &FuzzyRelation| {
                heterogeneous_flags(
                    candidate,
                    system.v_relations(),
                    system.w_relations(),
                    system.bound(),
                )
            };
            fold_space(&space, count, options.parallel, &flags)?
        }
    };
    let mut greatest = Vec::with_capacity(folds.len());
    for (offset, best) in folds.into_iter().enumerate() {
        let variant = (offset + 1) as u8;
        let sibling = match family {
            Family::Homogeneous => WeaklyLinearSystem::homogeneous(
                variant,
                system.v_relations().to_vec(),
                system.bound().clone(),
            )?,
            Family::Heterogeneous => WeaklyLinearSystem::heterogeneous(
                variant,
                system.v_relations().to_vec(),
                system.w_relations().to_vec(),
                system.bound().clone(),
            )?,
        };
        greatest.push(finish(&sibling, best)?);
    }
    Ok(greatest)
}

/// Resolves the enumeration carrier and wraps it into a space over the
/// system's index sets.
fn space_for(system: &WeaklyLinearSystem, options: &OracleOptions) -> Result<EnumerationSpace> {
    let carrier = match &options.carrier {
        Some(values) => values.clone(),
        None => {
            let seeds = system.value_seeds();
            match system
                .lattice()
                .generated_subalgebra(&seeds, DEFAULT_SUBALGEBRA_CAP)
            {
                SubalgebraClosure::Finite(values) => values,
                SubalgebraClosure::CapExceeded => return Err(Error::CarrierNotFinite),
            }
        }
    };
    EnumerationSpace::new(
        system.lattice(),
        system.domain().to_vec(),
        system.codomain().to_vec(),
        carrier,
    )
}

/// Falls back to the empty relation (a solution of every variant) when no
/// candidate passed, then re-verifies the result against the system.
fn finish(system: &WeaklyLinearSystem, best: Option<FuzzyRelation>) -> Result<FuzzyRelation> {
    let greatest = match best {
        Some(relation) => relation,
        None => FuzzyRelation::empty(
            system.lattice(),
            system.domain().to_vec(),
            system.codomain().to_vec(),
        )?,
    };
    if !system.verify_solution(&greatest)? {
        return Err(Error::NotASolution);
    }
    Ok(greatest)
}

/// Folds the whole space into per-flag joins of the candidates whose flag
/// is set. Join is associative, commutative, and exact, so the parallel
/// and sequential paths produce identical results.
fn fold_space<const N: usize, F>(
    space: &EnumerationSpace,
    count: u64,
    parallel: bool,
    flags: &F,
) -> Result<[Option<FuzzyRelation>; N]>
where
    F: Fn(&FuzzyRelation) -> Result<[bool; N]> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if parallel && count >= PAR_MIN_CANDIDATES {
            use rayon::prelude::*;
            return (0..count)
                .step_by(PAR_CHUNK as usize)
                .collect::<Vec<u64>>()
                .into_par_iter()
                .map(|start| fold_range(space, start..count.min(start + PAR_CHUNK), flags))
                .try_reduce(|| std::array::from_fn(|_| None), merge_folds);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    fold_range(space, 0..count, flags)
}

fn fold_range<const N: usize, F>(
    space: &EnumerationSpace,
    range: Range<u64>,
    flags: &F,
) -> Result<[Option<FuzzyRelation>; N]>
where
    F: Fn(&FuzzyRelation) -> Result<[bool; N]>,
{
    let mut folds: [Option<FuzzyRelation>; N] = std::array::from_fn(|_| None);
    for index in range {
        let candidate = space.relation_at(index);
        let hits = flags(&candidate)?;
        for (slot, hit) in folds.iter_mut().zip(hits) {
            if hit {
                *slot = Some(match slot.take() {
                    Some(run) => run.join(&candidate)?,
                    None => candidate.clone(),
                });
            }
        }
    }
    Ok(folds)
}

#[cfg(feature = "parallel")]
fn merge_folds<const N: usize>(
    mut left: [Option<FuzzyRelation>; N],
    right: [Option<FuzzyRelation>; N],
) -> Result<[Option<FuzzyRelation>; N]> {
    for (slot, extra) in left.iter_mut().zip(right) {
        *slot = match (slot.take(), extra) {
            (Some(a), Some(b)) => Some(a.join(&b)?),
            (a, None) => a,
            (None, b) => b,
        };
    }
    Ok(left)
}

/// Solution flags of one candidate for the six heterogeneous variants.
///
/// With `L = U⁻¹∘Vᵢ`, `M = Wᵢ∘U⁻¹`, `N = Vᵢ∘U`, `O = U∘Wᵢ`, the variants
/// require (for every `i`, always under `U ≤ Z`):
/// `1: L ≤ M`, `2: N ≤ O`, `3: L ≤ M ∧ O ≤ N`, `4: N ≤ O ∧ M ≤ L`,
/// `5: N = O`, `6: L = M`.
fn heterogeneous_flags(
    u: &FuzzyRelation,
    vs: &[FuzzyRelation],
    ws: &[FuzzyRelation],
    z: &FuzzyRelation,
) -> Result<[bool; 6]> {
    if !u.le(z)? {
        return Ok([false; 6]);
    }
    let uc = u.converse();
    let mut composed = Vec::with_capacity(vs.len());
    let (mut c1, mut c3) = (true, true);
    for (v, w) in vs.iter().zip(ws) {
        let l = uc.compose(v)?;
        let m = w.compose(&uc)?;
        let n = v.compose(u)?;
        let o = u.compose(w)?;
        c1 = c1 && l.le(&m)?;
        c3 = c3 && n.le(&o)?;
        if !c1 && !c3 {
            return Ok([false; 6]);
        }
        composed.push((l, m, n, o));
    }
    let (mut c2, mut c4) = (true, true);
    for (l, m, n, o) in &composed {
        c2 = c2 && m.le(l)?;
        c4 = c4 && o.le(n)?;
        if !c2 && !c4 {
            break;
        }
    }
    Ok([c1, c3, c1 && c4, c3 && c2, c3 && c4, c1 && c2])
}

/// Solution flags of one candidate for the six homogeneous variants.
///
/// With `P = U∘Vᵢ`, `Q = Vᵢ∘U`, `S = U⁻¹∘Vᵢ`, `T = Vᵢ∘U⁻¹`, the variants
/// require (for every `i`): `1: P ≤ Q`, `2: Q ≤ P`, `3: P = Q` — each under
/// `U ≤ W` — and `4: P ≤ Q ∧ S ≤ T`, `5: Q ≤ P ∧ T ≤ S`,
/// `6: P = Q ∧ S = T` under `U ≤ W ∧ U⁻¹ ≤ W`.
fn homogeneous_flags(
    u: &FuzzyRelation,
    vs: &[FuzzyRelation],
    w: &FuzzyRelation,
) -> Result<[bool; 6]> {
    if !u.le(w)? {
        return Ok([false; 6]);
    }
    let (mut d1, mut d2) = (true, true);
    for v in vs {
        let p = u.compose(v)?;
        let q = v.compose(u)?;
        d1 = d1 && p.le(&q)?;
        d2 = d2 && q.le(&p)?;
        if !d1 && !d2 {
            return Ok([false; 6]);
        }
    }
    let uc = u.converse();
    // Fold the extra bound of variants 4..=6 into their converse-side
    // flags; a failed bound leaves nothing to compute for them.
    let bound_both = uc.le(w)?;
    let (mut d3, mut d4) = (bound_both, bound_both);
    if bound_both {
        for v in vs {
            let s = uc.compose(v)?;
            let t = v.compose(&uc)?;
            d3 = d3 && s.le(&t)?;
            d4 = d4 && t.le(&s)?;
            if !d3 && !d4 {
                break;
            }
        }
    }
    Ok([d1, d2, d1 && d2, d1 && d3, d2 && d4, d1 && d2 && d3 && d4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::SolveOptions;
    use std::collections::BTreeSet;

    fn tv(n: i64, d: i64) -> TruthValue {
        TruthValue::from_int_ratio(n, d).unwrap()
    }

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn rel(
        lattice: ResiduatedLattice,
        domain: &[&str],
        codomain: &[&str],
        rows: &[&[(i64, i64)]],
    ) -> FuzzyRelation {
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|&(n, d)| tv(n, d)).collect())
            .collect();
        FuzzyRelation::new(lattice, labels(domain), labels(codomain), entries).unwrap()
    }

    fn zero_one() -> Vec<TruthValue> {
        vec![tv(0, 1), tv(1, 1)]
    }

    fn halves() -> Vec<TruthValue> {
        vec![tv(0, 1), tv(1, 2), tv(1, 1)]
    }

    /// A two-element heterogeneous instance on the three-element chain.
    fn chain_het(variant: u8, bound: FuzzyRelation) -> WeaklyLinearSystem {
        let lat = ResiduatedLattice::FiniteChain(2);
        let v = rel(lat, &["a1", "a2"], &["a1", "a2"], &[&[(1, 1), (1, 2)], &[(0, 1), (1, 1)]]);
        let w = rel(lat, &["b1", "b2"], &["b1", "b2"], &[&[(1, 1), (0, 1)], &[(1, 2), (1, 1)]]);
        WeaklyLinearSystem::heterogeneous(variant, vec![v], vec![w], bound).unwrap()
    }

    fn chain_het_universal(variant: u8) -> WeaklyLinearSystem {
        let lat = ResiduatedLattice::FiniteChain(2);
        let bound =
            FuzzyRelation::universal(lat, labels(&["a1", "a2"]), labels(&["b1", "b2"])).unwrap();
        chain_het(variant, bound)
    }

    #[test]
    fn space_counts_match_the_small_examples() {
        let lat = ResiduatedLattice::FiniteChain(2);
        let one_by_one =
            EnumerationSpace::new(lat, labels(&["a"]), labels(&["b"]), zero_one()).unwrap();
        assert_eq!(one_by_one.count(), Some(2));

        let two_by_two =
            EnumerationSpace::new(lat, labels(&["a1", "a2"]), labels(&["b1", "b2"]), halves())
                .unwrap();
        assert_eq!(two_by_two.count(), Some(81));

        let one_by_two =
            EnumerationSpace::new(lat, labels(&["a"]), labels(&["b1", "b2"]), zero_one()).unwrap();
        assert_eq!(one_by_two.count(), Some(4));

        // The carrier is deduplicated and sorted, so index 0 is the empty
        // relation and the last index is the constant at the largest value.
        let dup = EnumerationSpace::new(
            lat,
            labels(&["a"]),
            labels(&["b"]),
            vec![tv(1, 1), tv(0, 1), tv(1, 1)],
        )
        .unwrap();
        assert_eq!(dup.count(), Some(2));
        assert!(dup.relation_at(0).at(0, 0).is_zero());
        assert!(dup.relation_at(1).at(0, 0).is_one());
    }

    #[test]
    fn enumeration_yields_each_relation_exactly_once() {
        let lat = ResiduatedLattice::FiniteChain(2);
        let space =
            EnumerationSpace::new(lat, labels(&["a1", "a2"]), labels(&["b1", "b2"]), halves())
                .unwrap();
        let mut seen: BTreeSet<Vec<TruthValue>> = BTreeSet::new();
        let mut total = 0u64;
        for relation in enumerate_relations(&space).unwrap() {
            let flat: Vec<TruthValue> = (0..2)
                .flat_map(|i| relation.row(i).to_vec())
                .collect();
            assert!(seen.insert(flat), "an index decoded to a repeated matrix");
            total += 1;
        }
        assert_eq!(total, 81);
    }

    #[test]
    fn boolean_homogeneous_instance_matches_the_iterative_solver() {
        let lat = ResiduatedLattice::Boolean;
        let v = rel(lat, &["a1", "a2"], &["a1", "a2"], &[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]]);
        let system = WeaklyLinearSystem::homogeneous(1, vec![v.clone()], v.clone()).unwrap();

        let by_enumeration = brute_force_greatest(&system).unwrap();
        assert_eq!(by_enumeration, v);

        let report = system.solve_greatest(&SolveOptions::default()).unwrap();
        assert!(report.verified);
        assert_eq!(report.solution, by_enumeration);
    }

    #[test]
    fn empty_bound_forces_the_empty_solution() {
        let lat = ResiduatedLattice::FiniteChain(2);
        let bound =
            FuzzyRelation::empty(lat, labels(&["a1", "a2"]), labels(&["b1", "b2"])).unwrap();
        let system = chain_het(2, bound.clone());
        let by_enumeration = brute_force_greatest(&system).unwrap();
        assert_eq!(by_enumeration, bound);
        let report = system.solve_greatest(&SolveOptions::default()).unwrap();
        assert_eq!(report.solution, by_enumeration);
    }

    #[test]
    fn all_variants_agree_with_per_variant_runs_and_the_solver() {
        let options = OracleOptions::default();

        let het = brute_force_greatest_all_variants(&chain_het_universal(1), &options).unwrap();
        assert_eq!(het.len(), 6);
        for variant in 1..=6u8 {
            let system = chain_het_universal(variant);
            let single = brute_force_greatest_with(&system, &options).unwrap();
            assert_eq!(het[variant as usize - 1], single, "wl2-{variant}");
            let report = system.solve_greatest(&SolveOptions::default()).unwrap();
            assert!(report.verified);
            assert_eq!(report.solution, single, "wl2-{variant} vs solver");
        }

        let lat = ResiduatedLattice::FiniteChain(2);
        let a = ["a1", "a2"];
        let v = rel(lat, &a, &a, &[&[(1, 1), (1, 2)], &[(0, 1), (1, 1)]]);
        let bound = FuzzyRelation::universal(lat, labels(&a), labels(&a)).unwrap();
        let hom_system = |variant: u8| {
            WeaklyLinearSystem::homogeneous(variant, vec![v.clone()], bound.clone()).unwrap()
        };
        let hom = brute_force_greatest_all_variants(&hom_system(1), &options).unwrap();
        for variant in 1..=6u8 {
            let system = hom_system(variant);
            let single = brute_force_greatest_with(&system, &options).unwrap();
            assert_eq!(hom[variant as usize - 1], single, "wl1-{variant}");
            let report = system.solve_greatest(&SolveOptions::default()).unwrap();
            assert!(report.verified);
            assert_eq!(report.solution, single, "wl1-{variant} vs solver");
        }
    }

    #[test]
    fn parallel_and_sequential_folds_agree() {
        let sequential = OracleOptions {
            parallel: false,
            ..OracleOptions::default()
        };
        let system = chain_het_universal(3);
        assert_eq!(
            brute_force_greatest_with(&system, &OracleOptions::default()).unwrap(),
            brute_force_greatest_with(&system, &sequential).unwrap(),
        );
    }

    #[test]
    fn oversized_spaces_are_rejected_with_the_exact_count() {
        let lat = ResiduatedLattice::FiniteChain(2);
        let a = ["a1", "a2", "a3"];
        let v = FuzzyRelation::identity(lat, labels(&a)).unwrap();
        let bound = FuzzyRelation::universal(lat, labels(&a), labels(&a)).unwrap();
        let system = WeaklyLinearSystem::homogeneous(1, vec![v], bound).unwrap();
        // The instance values are {0, 1}, so the carrier has two elements
        // and the space holds 2^9 = 512 candidates.
        let options = OracleOptions {
            max_candidates: 100,
            ..OracleOptions::default()
        };
        match brute_force_greatest_with(&system, &options) {
            Err(Error::SpaceTooLarge { candidates, limit }) => {
                assert_eq!(candidates, "512");
                assert_eq!(limit, 100);
            }
            other => panic!("expected a too-large space, got {other:?}"),
        }

        // Counts beyond u128 still report exactly.
        let wide: Vec<String> = (0..20).map(|i| format!("x{i}")).collect();
        let space = EnumerationSpace::new(lat, wide.clone(), wide, zero_one()).unwrap();
        assert_eq!(space.count(), None);
        match space.bounded_count(u64::MAX) {
            Err(Error::SpaceTooLarge { candidates, .. }) => {
                assert_eq!(candidates, BigUint::from(2u32).pow(400usize).to_string());
            }
            other => panic!("expected a too-large space, got {other:?}"),
        }
    }

    #[test]
    fn infinite_carriers_are_detected_and_overrides_enumerate_them() {
        let lat = ResiduatedLattice::Product;
        let v = rel(lat, &["a"], &["a"], &[&[(1, 1)]]);
        let w = rel(lat, &["b"], &["b"], &[&[(1, 2)]]);
        let bound = FuzzyRelation::universal(lat, labels(&["a"]), labels(&["b"])).unwrap();
        let system = WeaklyLinearSystem::heterogeneous(2, vec![v], vec![w], bound).unwrap();

        // The subalgebra generated by 1/2 under multiplication is infinite.
        assert!(matches!(
            brute_force_greatest(&system),
            Err(Error::CarrierNotFinite)
        ));

        // A finite override still finds the greatest solution here: the
        // constraint reads u ≤ u/2, so the only solution is 0.
        let options = OracleOptions {
            carrier: Some(halves()),
            ..OracleOptions::default()
        };
        let greatest = brute_force_greatest_with(&system, &options).unwrap();
        assert!(greatest.at(0, 0).is_zero());

        // Override values must belong to the lattice carrier.
        let chain = chain_het_universal(1);
        let bad = OracleOptions {
            carrier: Some(vec![tv(1, 3)]),
            ..OracleOptions::default()
        };
        assert!(matches!(
            brute_force_greatest_with(&chain, &bad),
            Err(Error::OutsideCarrier { .. })
        ));
    }

    /// Exhaustive cross-check on the published two-letter instance: the
    /// enumeration space has 8^6 = 262144 candidates, so this runs only on
    /// demand (`cargo test -- --ignored`).
    #[test]
    #[ignore]
    fn exhaustive_cross_check_of_the_published_instance() {
        let lat = ResiduatedLattice::Goedel;
        let a = ["a1", "a2", "a3"];
        let b = ["b1", "b2"];
        let v1 = rel(
            lat,
            &a,
            &a,
            &[
                &[(1, 1), (3, 10), (2, 5)],
                &[(1, 2), (1, 1), (3, 10)],
                &[(2, 5), (3, 5), (7, 10)],
            ],
        );
        let v2 = rel(
            lat,
            &a,
            &a,
            &[
                &[(1, 2), (3, 5), (1, 5)],
                &[(3, 5), (3, 10), (2, 5)],
                &[(7, 10), (7, 10), (1, 1)],
            ],
        );
        let w1 = rel(lat, &b, &b, &[&[(1, 1), (3, 5)], &[(3, 5), (7, 10)]]);
        let w2 = rel(lat, &b, &b, &[&[(3, 5), (3, 5)], &[(7, 10), (1, 1)]]);
        let bound = FuzzyRelation::universal(lat, labels(&a), labels(&b)).unwrap();
        let system = |variant: u8| {
            WeaklyLinearSystem::heterogeneous(
                variant,
                vec![v1.clone(), v2.clone()],
                vec![w1.clone(), w2.clone()],
                bound.clone(),
            )
            .unwrap()
        };

        let published: [&[&[(i64, i64)]]; 6] = [
            &[&[(1, 1), (7, 10)], &[(1, 1), (7, 10)], &[(3, 5), (1, 1)]],
            &[&[(1, 1), (7, 10)], &[(1, 1), (7, 10)], &[(7, 10), (1, 1)]],
            &[&[(1, 1), (3, 5)], &[(1, 1), (3, 5)], &[(3, 5), (1, 1)]],
            &[&[(1, 1), (7, 10)], &[(1, 1), (7, 10)], &[(7, 10), (1, 1)]],
            &[&[(1, 1), (3, 5)], &[(1, 1), (3, 5)], &[(7, 10), (1, 1)]],
            &[&[(1, 1), (7, 10)], &[(1, 1), (7, 10)], &[(3, 5), (1, 1)]],
        ];

        let all = brute_force_greatest_all_variants(&system(1), &OracleOptions::default()).unwrap();
        for variant in 1..=6u8 {
            let expected = rel(lat, &a, &b, published[variant as usize - 1]);
            assert_eq!(all[variant as usize - 1], expected, "wl2-{variant}");
            let report = system(variant)
                .solve_greatest(&SolveOptions::default())
                .unwrap();
            assert!(report.verified);
            assert_eq!(report.solution, expected, "wl2-{variant} vs solver");
        }

        // Restricting the carrier to {0, 1} enumerates exactly the crisp
        // candidates, so the join must match the crisp solver variant.
        let crisp_options = OracleOptions {
            carrier: Some(zero_one()),
            ..OracleOptions::default()
        };
        let crisp = brute_force_greatest_all_variants(&system(1), &crisp_options).unwrap();
        for variant in 1..=6u8 {
            let report = system(variant)
                .solve_greatest_crisp(&SolveOptions::default())
                .unwrap();
            assert!(report.verified);
            assert_eq!(
                crisp[variant as usize - 1],
                report.solution,
                "crisp wl2-{variant}"
            );
        }
    }
}
