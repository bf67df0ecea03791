//! Compares the data-parallel and sequential execution paths of the
//! iterative solver and of the enumeration oracle on deterministic
//! pseudo-random instances. Both paths compute identical results (exact
//! arithmetic, order-independent reductions); this suite measures whether
//! distributing rows (solver) or candidate chunks (oracle) pays off.
//!
//! Without the `parallel` feature the "parallel" variants run the
//! sequential code, so the two lines should coincide.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wlsys::oracle::{brute_force_greatest_with, OracleOptions};
use wlsys::{FuzzyRelation, ResiduatedLattice, SolveOptions, TruthValue, WeaklyLinearSystem};

/// Entries are drawn from the equidistant chain 0, 1/16, …, 1.
const DENOMINATOR: i64 = 16;

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_relation(
    rng: &mut ChaCha8Rng,
    lattice: ResiduatedLattice,
    domain: Vec<String>,
    codomain: Vec<String>,
) -> FuzzyRelation {
    let rows = domain.len();
    let cols = codomain.len();
    let matrix = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    TruthValue::from_int_ratio(rng.gen_range(0..=DENOMINATOR), DENOMINATOR)
                        .unwrap()
                })
                .collect()
        })
        .collect();
    FuzzyRelation::new(lattice, domain, codomain, matrix).unwrap()
}

/// A two-constraint heterogeneous system on n states per side.
fn solver_instance(n: usize) -> WeaklyLinearSystem {
    let lattice = ResiduatedLattice::FiniteChain(DENOMINATOR as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let a = labels("a", n);
    let b = labels("b", n);
    let vs = (0..2)
        .map(|_| random_relation(&mut rng, lattice, a.clone(), a.clone()))
        .collect();
    let ws = (0..2)
        .map(|_| random_relation(&mut rng, lattice, b.clone(), b.clone()))
        .collect();
    let bound = FuzzyRelation::universal(lattice, a, b).unwrap();
    WeaklyLinearSystem::heterogeneous(1, vs, ws, bound).unwrap()
}

fn bench_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve-wl2-1");
    group.sample_size(10);
    for n in [8usize, 16, 32] {
        let system = solver_instance(n);
        for (name, parallel) in [("parallel", true), ("sequential", false)] {
            let options = SolveOptions {
                max_iterations: 1_000,
                parallel,
            };
            group.bench_with_input(BenchmarkId::new(name, n), &system, |bench, system| {
                bench.iter(|| black_box(system.solve_greatest(&options).unwrap()));
            });
        }
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle-wl2-1");
    group.sample_size(10);
    let lattice = ResiduatedLattice::FiniteChain(8);
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    let a = labels("a", 2);
    let b = labels("b", 2);
    let vs = vec![random_relation_chain8(&mut rng, lattice, a.clone())];
    let ws = vec![random_relation_chain8(&mut rng, lattice, b.clone())];
    let bound = FuzzyRelation::universal(lattice, a, b).unwrap();
    let system = WeaklyLinearSystem::heterogeneous(1, vs, ws, bound).unwrap();
    // 9 carrier values on a 2×2 grid: 9^4 = 6561 candidates, enough to
    // cross the parallel-dispatch threshold.
    let carrier: Vec<TruthValue> = (0..=8)
        .map(|k| TruthValue::from_int_ratio(k, 8).unwrap())
        .collect();
    for (name, parallel) in [("parallel", true), ("sequential", false)] {
        let options = OracleOptions {
            carrier: Some(carrier.clone()),
            max_candidates: 10_000,
            parallel,
        };
        group.bench_function(name, |bench| {
            bench.iter(|| black_box(brute_force_greatest_with(&system, &options).unwrap()));
        });
    }
    group.finish();
}

fn random_relation_chain8(
    rng: &mut ChaCha8Rng,
    lattice: ResiduatedLattice,
    states: Vec<String>,
) -> FuzzyRelation {
    let n = states.len();
    let matrix = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| TruthValue::from_int_ratio(rng.gen_range(0..=8), 8).unwrap())
                .collect()
        })
        .collect();
    FuzzyRelation::new(lattice, states.clone(), states, matrix).unwrap()
}

criterion_group!(benches, bench_solver, bench_oracle);
criterion_main!(benches);
