//! Helpers shared by the integration suites: exact scalar and matrix
//! builders, the worked Gödel instance with its known greatest solutions,
//! and seeded random generators for relations, equivalences, and systems.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wlsys::{
    FuzzyEquivalence, FuzzyRelation, ResiduatedLattice, TruthValue, WeaklyLinearSystem,
};

pub fn tv(num: i64, den: i64) -> TruthValue {
    TruthValue::from_int_ratio(num, den).expect("test scalar in range")
}

pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Builds a relation from `(numerator, denominator)` pairs.
pub fn rel(
    lattice: ResiduatedLattice,
    dom: &[String],
    cod: &[String],
    rows: &[&[(i64, i64)]],
) -> FuzzyRelation {
    let entries = rows
        .iter()
        .map(|row| row.iter().map(|&(n, d)| tv(n, d)).collect())
        .collect();
    FuzzyRelation::new(lattice, dom.to_vec(), cod.to_vec(), entries)
        .expect("test matrix is well-formed")
}

/// The equidistant chain `{0, 1/n, …, 1}` as explicit values.
pub fn chain_values(n: u32) -> Vec<TruthValue> {
    (0..=n).map(|k| tv(k as i64, n as i64)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A relation with entries drawn uniformly from `values`.
pub fn random_relation(
    rng: &mut ChaCha8Rng,
    lattice: ResiduatedLattice,
    dom: &[String],
    cod: &[String],
    values: &[TruthValue],
) -> FuzzyRelation {
    let entries: Vec<Vec<TruthValue>> = (0..dom.len())
        .map(|_| {
            (0..cod.len())
                .map(|_| values[rng.gen_range(0..values.len())].clone())
                .collect()
        })
        .collect();
    FuzzyRelation::new(lattice, dom.to_vec(), cod.to_vec(), entries)
        .expect("random matrix is well-formed")
}

/// A random fuzzy equivalence: the transitive closure of a reflexive,
/// symmetric seed with entries from `values`.
pub fn random_equivalence(
    rng: &mut ChaCha8Rng,
    lattice: ResiduatedLattice,
    set: &[String],
    values: &[TruthValue],
) -> FuzzyEquivalence {
    let seed = random_relation(rng, lattice, set, set, values);
    let symmetric = seed.join(&seed.converse()).expect("shapes agree");
    let identity =
        FuzzyRelation::identity(lattice, set.to_vec()).expect("labels are valid");
    let reflexive = symmetric.join(&identity).expect("shapes agree");
    let closed = reflexive.transitive_closure().expect("endorelation");
    FuzzyEquivalence::new(closed).expect("closure of a reflexive symmetric seed")
}

/// A random equivalence lying above `base` (its join with a fresh random
/// equivalence, transitively closed again).
pub fn coarser_equivalence(
    rng: &mut ChaCha8Rng,
    base: &FuzzyEquivalence,
    values: &[TruthValue],
) -> FuzzyEquivalence {
    let extra = random_equivalence(
        rng,
        base.lattice(),
        base.domain(),
        values,
    );
    let joined = base
        .relation()
        .join(extra.relation())
        .expect("shapes agree");
    let closed = joined.transitive_closure().expect("endorelation");
    FuzzyEquivalence::new(closed).expect("closure of joined equivalences")
}

/// The worked Gödel instance: `|A| = 3`, `|B| = 2`, two constraint pairs,
/// universal bound.
pub fn example_lattice() -> ResiduatedLattice {
    ResiduatedLattice::Goedel
}

pub fn example_a_labels() -> Vec<String> {
    labels("a", 3)
}

pub fn example_b_labels() -> Vec<String> {
    labels("b", 2)
}

pub fn example_v() -> Vec<FuzzyRelation> {
    let lat = example_lattice();
    let a = example_a_labels();
    vec![
        rel(
            lat,
            &a,
            &a,
            &[
                &[(1, 1), (3, 10), (2, 5)],
                &[(1, 2), (1, 1), (3, 10)],
                &[(2, 5), (3, 5), (7, 10)],
            ],
        ),
        rel(
            lat,
            &a,
            &a,
            &[
                &[(1, 2), (3, 5), (1, 5)],
                &[(3, 5), (3, 10), (2, 5)],
                &[(7, 10), (7, 10), (1, 1)],
            ],
        ),
    ]
}

pub fn example_w() -> Vec<FuzzyRelation> {
    let lat = example_lattice();
    let b = example_b_labels();
    vec![
        rel(lat, &b, &b, &[&[(1, 1), (3, 5)], &[(3, 5), (7, 10)]]),
        rel(lat, &b, &b, &[&[(3, 5), (3, 5)], &[(7, 10), (1, 1)]]),
    ]
}

/// The heterogeneous system of the worked instance in the given variant,
/// with the universal bound.
pub fn example_system(variant: u8) -> WeaklyLinearSystem {
    let bound = FuzzyRelation::universal(
        example_lattice(),
        example_a_labels(),
        example_b_labels(),
    )
    .expect("universal bound");
    WeaklyLinearSystem::heterogeneous(variant, example_v(), example_w(), bound)
        .expect("worked instance is well-formed")
}

/// The known greatest solution of the worked instance, per variant.
pub fn example_greatest(variant: u8) -> FuzzyRelation {
    let lat = example_lattice();
    let a = example_a_labels();
    let b = example_b_labels();
    let rows: [&[(i64, i64)]; 3] = match variant {
        1 | 6 => [&[(1, 1), (7, 10)], &[(1, 1), (7, 10)], &[(3, 5), (1, 1)]],
        2 | 4 => [&[(1, 1), (7, 10)], &[(1, 1), (7, 10)], &[(7, 10), (1, 1)]],
        3 => [&[(1, 1), (3, 5)], &[(1, 1), (3, 5)], &[(3, 5), (1, 1)]],
        5 => [&[(1, 1), (3, 5)], &[(1, 1), (3, 5)], &[(7, 10), (1, 1)]],
        _ => panic!("variants run 1 through 6"),
    };
    rel(lat, &a, &b, &rows)
}

/// A random homogeneous system: `count` relations on `set` with entries
/// from `values`, under the given bound (universal when `None`).
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    variant: u8,
    lattice: ResiduatedLattice,
    set: &[String],
    values: &[TruthValue],
    count: usize,
    bound: Option<FuzzyRelation>,
) -> WeaklyLinearSystem {
    let v: Vec<FuzzyRelation> = (0..count)
        .map(|_| random_relation(rng, lattice, set, set, values))
        .collect();
    let bound = bound.unwrap_or_else(|| {
        FuzzyRelation::universal(lattice, set.to_vec(), set.to_vec())
            .expect("universal bound")
    });
    WeaklyLinearSystem::homogeneous(variant, v, bound).expect("random system is well-formed")
}

/// A random heterogeneous system: `count` constraint pairs over
/// `(dom, cod)` with entries from `values`, under a random bound drawn
/// from the same values.
pub fn random_heterogeneous(
    rng: &mut ChaCha8Rng,
    variant: u8,
    lattice: ResiduatedLattice,
    dom: &[String],
    cod: &[String],
    values: &[TruthValue],
    count: usize,
) -> WeaklyLinearSystem {
    let v: Vec<FuzzyRelation> = (0..count)
        .map(|_| random_relation(rng, lattice, dom, dom, values))
        .collect();
    let w: Vec<FuzzyRelation> = (0..count)
        .map(|_| random_relation(rng, lattice, cod, cod, values))
        .collect();
    let bound = random_relation(rng, lattice, dom, cod, values);
    WeaklyLinearSystem::heterogeneous(variant, v, w, bound)
        .expect("random system is well-formed")
}
