//! Fuzzy automata built on the solver and quotient layers.
//!
//! A fuzzy automaton couples a family of fuzzy transition relations
//! (one endorelation per alphabet symbol) with fuzzy subsets of initial
//! and terminal states. This module provides:
//!
//! * [`extensionality_bound`]: the greatest fuzzy equivalence with
//!   respect to which a given fuzzy subset is extensional, built
//!   pointwise from the biresiduum;
//! * [`greatest_bisimulation_equivalence`]: the greatest fuzzy
//!   equivalence `E` on the states with `E ∘ δ_x ≤ δ_x ∘ E` for every
//!   symbol (forward mode, bounded by the terminal-set equivalence) or
//!   `δ_x ∘ E ≤ E ∘ δ_x` (backward mode, bounded by the initial-set
//!   equivalence);
//! * [`reduce`]: the factor automaton over the classes of an
//!   equivalence, with transitions `E ∘ δ_x ∘ E`, initial weights
//!   `σ ∘ E`, and terminal weights `E ∘ τ`, all read at class
//!   representatives;
//! * [`solve_between`]: the greatest simulation or bisimulation of a
//!   chosen kind between two automata over a shared alphabet, as the
//!   greatest solution of the matching heterogeneous system.

use crate::lattice::{ResiduatedLattice, TruthValue};
use crate::quotient::{quotient_system, FactorSet, FuzzyRelationalSystem};
use crate::relation::{validate_labels, FuzzyEquivalence, FuzzyRelation};
use crate::solver::{
    check_endorelation_over, SolveOptions, SolveReport, SolveStatus, WeaklyLinearSystem,
};
use crate::{Error, Result};

/// A finite fuzzy automaton: states, alphabet, one fuzzy transition
/// relation per symbol, and fuzzy subsets of initial and terminal
/// states, all over one lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyAutomaton {
    lattice: ResiduatedLattice,
    states: Vec<String>,
    alphabet: Vec<String>,
    transitions: Vec<FuzzyRelation>,
    initial: Vec<TruthValue>,
    terminal: Vec<TruthValue>,
}

impl FuzzyAutomaton {
    /// Validates shapes and carrier membership: one square transition
    /// relation on `states` per alphabet symbol, and one initial and one
    /// terminal weight per state. The alphabet may be empty.
    pub fn new(
        lattice: ResiduatedLattice,
        states: Vec<String>,
        alphabet: Vec<String>,
        transitions: Vec<FuzzyRelation>,
        initial: Vec<TruthValue>,
        terminal: Vec<TruthValue>,
    ) -> Result<Self> {
        validate_labels(&states, "automaton states")?;
        let mut seen = std::collections::BTreeSet::new();
        for symbol in &alphabet {
            if !seen.insert(symbol) {
                return Err(Error::DuplicateLabel(symbol.clone()));
            }
        }
        if transitions.len() != alphabet.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} transition relations for {} alphabet symbols",
                transitions.len(),
                alphabet.len()
            )));
        }
        for t in &transitions {
            check_endorelation_over(t, &states, lattice)?;
        }
        for (name, weights) in [("initial", &initial), ("terminal", &terminal)] {
            if weights.len() != states.len() {
                return Err(Error::ShapeMismatch(format!(
                    "{} {} weights for {} states",
                    weights.len(),
                    name,
                    states.len()
                )));
            }
            for w in weights.iter() {
                lattice.check_member(w)?;
            }
        }
        Ok(FuzzyAutomaton {
            lattice,
            states,
            alphabet,
            transitions,
            initial,
            terminal,
        })
    }

    pub fn lattice(&self) -> ResiduatedLattice {
        self.lattice
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    /// One transition relation per alphabet symbol, in alphabet order.
    pub fn transitions(&self) -> &[FuzzyRelation] {
        &self.transitions
    }

    pub fn initial(&self) -> &[TruthValue] {
        &self.initial
    }

    pub fn terminal(&self) -> &[TruthValue] {
        &self.terminal
    }

    /// The greatest equivalence keeping the terminal fuzzy set
    /// extensional; the bound used by forward-mode bisimulation.
    pub fn terminal_extensionality_bound(&self) -> FuzzyEquivalence {
        extensionality_bound(self.lattice, &self.states, &self.terminal)
            .expect("automaton fields are validated on construction")
    }

    /// The greatest equivalence keeping the initial fuzzy set
    /// extensional; the bound used by backward-mode bisimulation.
    pub fn initial_extensionality_bound(&self) -> FuzzyEquivalence {
        extensionality_bound(self.lattice, &self.states, &self.initial)
            .expect("automaton fields are validated on construction")
    }
}

/// The greatest fuzzy equivalence `W` with respect to which `weights`
/// is extensional: `W(a, b) = weights(a) ↔ weights(b)`.
///
/// Any equivalence `E` satisfies `E ∘ weights ≤ weights` (reading
/// `weights` as a fuzzy subset) exactly when `E ≤ W`, and the biresiduum
/// matrix itself is always an equivalence, so it is the greatest one.
pub fn extensionality_bound(
    lattice: ResiduatedLattice,
    labels: &[String],
    weights: &[TruthValue],
) -> Result<FuzzyEquivalence> {
    if weights.len() != labels.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} weights for {} labels",
            weights.len(),
            labels.len()
        )));
    }
    for w in weights {
        lattice.check_member(w)?;
    }
    let rel = FuzzyRelation::from_fn(lattice, labels.to_vec(), labels.to_vec(), |i, j| {
        lattice.biresiduum(&weights[i], &weights[j])
    })?;
    Ok(FuzzyEquivalence::new(rel)
        .expect("a pointwise biresiduum matrix is always a fuzzy equivalence"))
}

/// Which of the two one-automaton bisimulation notions to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BisimulationMode {
    /// Constrains `E ∘ δ_x ≤ δ_x ∘ E` under the terminal-set bound.
    Forward,
    /// Constrains `δ_x ∘ E ≤ E ∘ δ_x` under the initial-set bound.
    Backward,
}

/// The greatest bisimulation fuzzy equivalence on the states of `m`.
///
/// Forward mode solves the two-sided homogeneous system `wl1-4` over the
/// transition family — whose solutions that are equivalences are exactly
/// the equivalences with `E ∘ δ_x ≤ δ_x ∘ E` — bounded by the terminal
/// extensionality equivalence; backward mode solves `wl1-5` (the
/// mirrored inequality) bounded by the initial one. Because the bound is
/// an equivalence, the greatest solution is too.
///
/// If the iteration hits its cap before stabilizing, the last iterate
/// need not be an equivalence and nothing greatest has been found, so
/// that case is reported as an error rather than a partial answer.
pub fn greatest_bisimulation_equivalence(
    m: &FuzzyAutomaton,
    mode: BisimulationMode,
    options: &SolveOptions,
) -> Result<(FuzzyEquivalence, SolveReport)> {
    let (variant, weights) = match mode {
        BisimulationMode::Forward => (4, &m.terminal),
        BisimulationMode::Backward => (5, &m.initial),
    };
    let bound = extensionality_bound(m.lattice, &m.states, weights)?;
    let system =
        WeaklyLinearSystem::homogeneous(variant, m.transitions.clone(), bound.into_relation())?;
    let report = system.solve_greatest(options)?;
    if report.status == SolveStatus::CapReached {
        return Err(Error::NotAnEquivalence(
            "the iteration hit its cap before stabilizing",
        ));
    }
    let equivalence = FuzzyEquivalence::new(report.solution.clone())
        .expect("the greatest solution under an equivalence bound is an equivalence");
    Ok((equivalence, report))
}

/// The factor automaton of `m` by a fuzzy equivalence on its states.
///
/// Transitions descend as `E ∘ δ_x ∘ E` read at class representatives;
/// the initial weight of a class is `(σ ∘ E)` and the terminal weight
/// `(E ∘ τ)` at its representative. Returns the partition alongside the
/// reduced automaton.
pub fn reduce(
    m: &FuzzyAutomaton,
    e: &FuzzyEquivalence,
) -> Result<(FuzzyAutomaton, FactorSet)> {
    let sys = FuzzyRelationalSystem::new(m.lattice, m.states.clone(), m.transitions.clone())?;
    let (qsys, factor) = quotient_system(&sys, e)?;
    let n = m.states.len();
    let initial: Vec<TruthValue> = factor
        .representatives()
        .iter()
        .map(|&rep| {
            let terms: Vec<TruthValue> = (0..n)
                .map(|a| m.lattice.otimes(&m.initial[a], e.at(a, rep)))
                .collect();
            m.lattice.join_all(terms.iter())
        })
        .collect();
    let terminal: Vec<TruthValue> = factor
        .representatives()
        .iter()
        .map(|&rep| {
            let terms: Vec<TruthValue> = (0..n)
                .map(|a| m.lattice.otimes(e.at(rep, a), &m.terminal[a]))
                .collect();
            m.lattice.join_all(terms.iter())
        })
        .collect();
    let reduced = FuzzyAutomaton::new(
        m.lattice,
        factor.labels().to_vec(),
        m.alphabet.clone(),
        qsys.relations().to_vec(),
        initial,
        terminal,
    )?;
    Ok((reduced, factor))
}

/// The greatest simulation or bisimulation of kind `variant` (1–6, the
/// heterogeneous system numbering: 1 forward and 2 backward simulations,
/// 3 forward, 4 backward, 5 backward-forward, and 6 forward-backward
/// bisimulations) between the state sets of `m` and `n`.
///
/// The two automata must share an alphabet as a set of symbol names;
/// `n`'s transitions are matched to `m`'s symbol order by name. The
/// constraint `u ≤ z` defaults to the universal relation when `z` is
/// `None`; side conditions on initial and terminal states are not
/// imposed here — encode them in an explicit `z` if needed.
pub fn solve_between(
    m: &FuzzyAutomaton,
    n: &FuzzyAutomaton,
    variant: u8,
    z: Option<FuzzyRelation>,
    options: &SolveOptions,
) -> Result<SolveReport> {
    if m.lattice != n.lattice {
        return Err(Error::LatticeMismatch {
            left: m.lattice.to_string(),
            right: n.lattice.to_string(),
        });
    }
    if m.alphabet.len() != n.alphabet.len() {
        return Err(Error::AlphabetMismatch(format!(
            "{} symbols vs {} symbols",
            m.alphabet.len(),
            n.alphabet.len()
        )));
    }
    let w_rels: Vec<FuzzyRelation> = m
        .alphabet
        .iter()
        .map(|symbol| {
            n.alphabet
                .iter()
                .position(|s| s == symbol)
                .map(|j| n.transitions[j].clone())
                .ok_or_else(|| {
                    Error::AlphabetMismatch(format!(
                        "symbol {symbol:?} is missing from the second automaton"
                    ))
                })
        })
        .collect::<Result<_>>()?;
    let z = match z {
        Some(z) => z,
        None => FuzzyRelation::universal(m.lattice, m.states.clone(), n.states.clone())?,
    };
    let system = WeaklyLinearSystem::heterogeneous(variant, m.transitions.clone(), w_rels, z)?;
    system.solve_greatest(options)
}
