//! JSON documents for system instances, automata, quotient requests, and
//! results, with exact scalar round-tripping.
//!
//! Every scalar travels as a string — `"3/10"`, `"0.3"`, `"1"` — and is
//! parsed into an exact rational, so documents re-parse to exactly the
//! values that produced them. Fraction rendering is always exact; decimal
//! rendering is used only for values with a terminating decimal expansion
//! and falls back to the fraction form otherwise. Map-valued fields are
//! ordered maps and struct fields serialize in declaration order, so equal
//! values produce byte-identical documents.

use std::collections::BTreeMap;

use num::{traits::Pow, BigInt, BigRational, One};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::automata::FuzzyAutomaton;
use crate::lattice::{ResiduatedLattice, TruthValue};
use crate::quotient::{FactorSet, FuzzyRelationalSystem};
use crate::relation::{FuzzyEquivalence, FuzzyRelation};
use crate::solver::{Family, SolveReport, SolveStatus, SystemKind, WeaklyLinearSystem};
use crate::{Error, Result};

/// How [`render_scalar`] formats an exact rational.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ScalarStyle {
    /// Reduced fraction, integers without a denominator: `"3/10"`, `"1"`.
    #[default]
    Fraction,
    /// Exact terminating decimal when one exists (`"0.3"`, `"0.25"`),
    /// otherwise the fraction form (`"1/3"`).
    Decimal,
}

/// Parses `"p/q"`, decimal (`"0.3"`, `".5"`), or integer (`"0"`, `"1"`)
/// text into an exact truth value in `[0, 1]`.
pub fn parse_scalar(text: &str) -> Result<TruthValue> {
    let trimmed = text.trim();
    let invalid = |reason: &str| Error::InvalidScalar {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let rational = if let Some((num, den)) = trimmed.split_once('/') {
        let p: BigInt = num
            .trim()
            .parse()
            .map_err(|_| invalid("the numerator is not an integer"))?;
        let q: BigInt = den
            .trim()
            .parse()
            .map_err(|_| invalid("the denominator is not an integer"))?;
        if q == BigInt::from(0) {
            return Err(invalid("zero denominator"));
        }
        BigRational::new(p, q)
    } else if let Some((int_part, frac_part)) = trimmed.split_once('.') {
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_part.is_empty() && frac_part.is_empty())
        {
            return Err(invalid("not a decimal numeral"));
        }
        let digits: BigInt = format!("{int_part}{frac_part}")
            .parse()
            .unwrap_or_else(|_| BigInt::from(0));
        let scale = BigInt::from(10).pow(frac_part.len());
        BigRational::new(digits, scale)
    } else {
        let n: BigInt = trimmed
            .parse()
            .map_err(|_| invalid("not an integer, fraction, or decimal"))?;
        BigRational::from(n)
    };
    TruthValue::from_rational(rational).map_err(|e| match e {
        Error::InvalidScalar { reason, .. } => Error::InvalidScalar {
            text: text.to_string(),
            reason,
        },
        other => other,
    })
}

/// Formats a truth value per the chosen style; [`parse_scalar`] reads every
/// output back to the same value.
pub fn render_scalar(value: &TruthValue, style: ScalarStyle) -> String {
    if style == ScalarStyle::Decimal {
        if let Some(decimal) = terminating_decimal(value.rational()) {
            return decimal;
        }
    }
    value.to_string()
}

/// The exact decimal expansion, if it terminates (denominator `2^a·5^b`).
fn terminating_decimal(r: &BigRational) -> Option<String> {
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut rest = r.denom().clone();
    let mut twos = 0usize;
    let mut fives = 0usize;
    while (&rest % &two) == BigInt::from(0) {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five) == BigInt::from(0) {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return None;
    }
    let places = twos.max(fives);
    if places == 0 {
        return Some(r.numer().to_string());
    }
    let scaled = (r.numer() * BigInt::from(10).pow(places)) / r.denom();
    let digits = format!("{scaled:0>width$}", width = places + 1);
    let split = digits.len() - places;
    Some(format!("{}.{}", &digits[..split], &digits[split..]))
}

/// Parses a row-major matrix of scalar strings into a relation over the
/// given index sets.
pub fn parse_matrix(
    lattice: ResiduatedLattice,
    domain: Vec<String>,
    codomain: Vec<String>,
    rows: &[Vec<String>],
) -> Result<FuzzyRelation> {
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        parsed.push(row.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>()?);
    }
    FuzzyRelation::new(lattice, domain, codomain, parsed)
}

/// Renders a relation as a row-major matrix of scalar strings.
pub fn render_matrix(relation: &FuzzyRelation, style: ScalarStyle) -> Vec<Vec<String>> {
    (0..relation.n_rows())
        .map(|i| {
            relation
                .row(i)
                .iter()
                .map(|v| render_scalar(v, style))
                .collect()
        })
        .collect()
}

fn parse_vector(values: &[String]) -> Result<Vec<TruthValue>> {
    values.iter().map(|s| parse_scalar(s)).collect()
}

fn render_vector(values: &[TruthValue], style: ScalarStyle) -> Vec<String> {
    values.iter().map(|v| render_scalar(v, style)).collect()
}

/// Serializes any document as pretty-printed JSON with a trailing newline.
/// Equal values yield byte-identical text.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize infallibly");
    text.push('\n');
    text
}

/// Parses a JSON document, mapping syntax and schema problems to
/// [`Error::Json`].
pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(Error::from)
}

/// Iteration options carried inside a system instance document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveOptionsDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
}

/// One constraint of a system instance: `v` over the first index set and,
/// for heterogeneous systems only, `w` over the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub v: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Vec<String>>>,
}

/// A weakly linear system instance.
///
/// `variant` may be omitted and supplied at dispatch time instead. For
/// homogeneous variants (`wl1-*`) there is no `b_labels` and each pair
/// holds only `v`; the bound is square over `a_labels`. A missing `bound`
/// means the universal relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub lattice: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub a_labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub options: Option<SolveOptionsDocument>,
}

impl SystemDocument {
    /// Builds the system, taking the variant from `variant_override` if
    /// given and from the document otherwise.
    pub fn to_system(&self, variant_override: Option<&str>) -> Result<WeaklyLinearSystem> {
        let tag = variant_override
            .or(self.variant.as_deref())
            .ok_or_else(|| {
                Error::Document(
                    "no system variant in the document; pass one with --variant".into(),
                )
            })?;
        let kind = SystemKind::parse(tag)?;
        let lattice = ResiduatedLattice::parse(&self.lattice)?;
        let a = self.a_labels.clone();
        match kind.family() {
            Family::Homogeneous => {
                if self.b_labels.is_some() {
                    return Err(Error::Document(
                        "homogeneous systems have a single index set; remove b_labels".into(),
                    ));
                }
                let mut vs = Vec::with_capacity(self.pairs.len());
                for (i, pair) in self.pairs.iter().enumerate() {
                    if pair.w.is_some() {
                        return Err(Error::Document(format!(
                            "homogeneous systems take one matrix per pair, but pair {i} has w"
                        )));
                    }
                    vs.push(parse_matrix(lattice, a.clone(), a.clone(), &pair.v)?);
                }
                let bound = match &self.bound {
                    Some(rows) => parse_matrix(lattice, a.clone(), a.clone(), rows)?,
                    None => FuzzyRelation::universal(lattice, a.clone(), a)?,
                };
                WeaklyLinearSystem::homogeneous(kind.variant(), vs, bound)
            }
            Family::Heterogeneous => {
                let b = self.b_labels.clone().ok_or_else(|| {
                    Error::Document("heterogeneous systems need b_labels".into())
                })?;
                let mut vs = Vec::with_capacity(self.pairs.len());
                let mut ws = Vec::with_capacity(self.pairs.len());
                for (i, pair) in self.pairs.iter().enumerate() {
                    vs.push(parse_matrix(lattice, a.clone(), a.clone(), &pair.v)?);
                    let w = pair.w.as_ref().ok_or_else(|| {
                        Error::Document(format!("pair {i} is missing its second matrix w"))
                    })?;
                    ws.push(parse_matrix(lattice, b.clone(), b.clone(), w)?);
                }
                let bound = match &self.bound {
                    Some(rows) => parse_matrix(lattice, a.clone(), b.clone(), rows)?,
                    None => FuzzyRelation::universal(lattice, a, b)?,
                };
                WeaklyLinearSystem::heterogeneous(kind.variant(), vs, ws, bound)
            }
        }
    }

    /// Renders a system back into a document (bound included explicitly).
    pub fn from_system(system: &WeaklyLinearSystem, style: ScalarStyle) -> Self {
        let heterogeneous = system.kind().family() == Family::Heterogeneous;
        let pairs = system
            .v_relations()
            .iter()
            .enumerate()
            .map(|(i, v)| PairDocument {
                v: render_matrix(v, style),
                w: heterogeneous.then(|| render_matrix(&system.w_relations()[i], style)),
            })
            .collect();
        SystemDocument {
            lattice: system.lattice().to_string(),
            variant: Some(system.kind().to_string()),
            a_labels: system.domain().to_vec(),
            b_labels: heterogeneous.then(|| system.codomain().to_vec()),
            pairs,
            bound: Some(render_matrix(system.bound(), style)),
            options: None,
        }
    }
}

/// Tag used for a solve status in output documents.
pub fn status_tag(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Stabilized => "stabilized",
        SolveStatus::CapReached => "cap_reached",
    }
}

/// Result of a solve run (also used for cross-automata systems).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutputDocument {
    pub lattice: String,
    pub variant: String,
    pub a_labels: Vec<String>,
    pub b_labels: Vec<String>,
    pub solution: Vec<Vec<String>>,
    /// Operator evaluations performed; 0 when the result was found by
    /// exhaustive enumeration instead of iteration.
    pub iterations: usize,
    /// `"stabilized"`, `"cap_reached"`, or `"enumerated"`.
    pub status: String,
    pub verified: bool,
}

impl SolveOutputDocument {
    pub fn new(system: &WeaklyLinearSystem, report: &SolveReport, style: ScalarStyle) -> Self {
        SolveOutputDocument {
            lattice: system.lattice().to_string(),
            variant: system.kind().to_string(),
            a_labels: system.domain().to_vec(),
            b_labels: system.codomain().to_vec(),
            solution: render_matrix(&report.solution, style),
            iterations: report.iterations,
            status: status_tag(report.status).to_string(),
            verified: report.verified,
        }
    }
}

/// Extracts a candidate solution matrix from JSON text: either a bare
/// matrix, or an object carrying one under `"solution"` or `"matrix"` —
/// so a solve output document can be fed straight back in.
pub fn parse_solution_matrix(text: &str) -> Result<Vec<Vec<String>>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let matrix = match value {
        serde_json::Value::Array(_) => value,
        serde_json::Value::Object(mut map) => map
            .remove("solution")
            .or_else(|| map.remove("matrix"))
            .ok_or_else(|| {
                Error::Document(
                    "expected a matrix or an object with a solution or matrix field".into(),
                )
            })?,
        _ => {
            return Err(Error::Document(
                "expected a matrix or an object with a solution or matrix field".into(),
            ))
        }
    };
    serde_json::from_value(matrix).map_err(Error::from)
}

/// A fuzzy automaton: one transition matrix per alphabet symbol, plus
/// initial and terminal weight vectors over the states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub lattice: String,
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub transitions: BTreeMap<String, Vec<Vec<String>>>,
    pub initial: Vec<String>,
    pub terminal: Vec<String>,
}

impl AutomatonDocument {
    pub fn to_automaton(&self) -> Result<FuzzyAutomaton> {
        let lattice = ResiduatedLattice::parse(&self.lattice)?;
        for symbol in self.transitions.keys() {
            if !self.alphabet.iter().any(|s| s == symbol) {
                return Err(Error::Document(format!(
                    "transition matrix for {symbol:?} matches no alphabet symbol"
                )));
            }
        }
        let mut transitions = Vec::with_capacity(self.alphabet.len());
        for symbol in &self.alphabet {
            let rows = self.transitions.get(symbol).ok_or_else(|| {
                Error::Document(format!("no transition matrix for alphabet symbol {symbol:?}"))
            })?;
            transitions.push(parse_matrix(
                lattice,
                self.states.clone(),
                self.states.clone(),
                rows,
            )?);
        }
        FuzzyAutomaton::new(
            lattice,
            self.states.clone(),
            self.alphabet.clone(),
            transitions,
            parse_vector(&self.initial)?,
            parse_vector(&self.terminal)?,
        )
    }

    pub fn from_automaton(automaton: &FuzzyAutomaton, style: ScalarStyle) -> Self {
        let transitions = automaton
            .alphabet()
            .iter()
            .zip(automaton.transitions())
            .map(|(symbol, delta)| (symbol.clone(), render_matrix(delta, style)))
            .collect();
        AutomatonDocument {
            lattice: automaton.lattice().to_string(),
            states: automaton.states().to_vec(),
            alphabet: automaton.alphabet().to_vec(),
            transitions,
            initial: render_vector(automaton.initial(), style),
            terminal: render_vector(automaton.terminal(), style),
        }
    }
}

/// A request to factor a relational system by a fuzzy equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientRequestDocument {
    pub lattice: String,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<Vec<String>>>,
    pub equivalence: Vec<Vec<String>>,
}

impl QuotientRequestDocument {
    pub fn to_parts(&self) -> Result<(FuzzyRelationalSystem, FuzzyEquivalence)> {
        let lattice = ResiduatedLattice::parse(&self.lattice)?;
        let relations = self
            .relations
            .iter()
            .map(|rows| parse_matrix(lattice, self.labels.clone(), self.labels.clone(), rows))
            .collect::<Result<Vec<_>>>()?;
        let system = FuzzyRelationalSystem::new(lattice, self.labels.clone(), relations)?;
        let equivalence = FuzzyEquivalence::new(parse_matrix(
            lattice,
            self.labels.clone(),
            self.labels.clone(),
            &self.equivalence,
        )?)?;
        Ok((system, equivalence))
    }
}

/// One equivalence class: its label (bracketed representative) and the
/// labels of its members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    pub label: String,
    pub members: Vec<String>,
}

fn class_documents(factor: &FactorSet, member_labels: &[String]) -> Vec<ClassDocument> {
    factor
        .labels()
        .iter()
        .zip(factor.classes())
        .map(|(label, members)| ClassDocument {
            label: label.clone(),
            members: members.iter().map(|&i| member_labels[i].clone()).collect(),
        })
        .collect()
}

/// A quotient system together with the class membership listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientOutputDocument {
    pub lattice: String,
    pub classes: Vec<ClassDocument>,
    pub relations: Vec<Vec<Vec<String>>>,
}

impl QuotientOutputDocument {
    pub fn new(
        quotient: &FuzzyRelationalSystem,
        factor: &FactorSet,
        member_labels: &[String],
        style: ScalarStyle,
    ) -> Self {
        QuotientOutputDocument {
            lattice: quotient.lattice().to_string(),
            classes: class_documents(factor, member_labels),
            relations: quotient
                .relations()
                .iter()
                .map(|r| render_matrix(r, style))
                .collect(),
        }
    }
}

/// Wording of the reduced-automaton weight construction, echoed in every
/// reduction output: class weights are composites of the original weight
/// vectors with the equivalence.
pub const REDUCTION_CONSTRUCTION: &str = "initial = sigma∘E, terminal = E∘tau";

/// A state reduction: the equivalence used, the classes, and the reduced
/// automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceOutputDocument {
    /// `"forward"` or `"backward"`.
    pub mode: String,
    /// Fixed note describing how class weights are built; see
    /// [`REDUCTION_CONSTRUCTION`].
    pub construction: String,
    pub equivalence: Vec<Vec<String>>,
    pub classes: Vec<ClassDocument>,
    pub automaton: AutomatonDocument,
}

impl ReduceOutputDocument {
    pub fn new(
        mode: &str,
        equivalence: &FuzzyEquivalence,
        factor: &FactorSet,
        original_states: &[String],
        reduced: &FuzzyAutomaton,
        style: ScalarStyle,
    ) -> Self {
        ReduceOutputDocument {
            mode: mode.to_string(),
            construction: REDUCTION_CONSTRUCTION.to_string(),
            equivalence: render_matrix(equivalence.relation(), style),
            classes: class_documents(factor, original_states),
            automaton: AutomatonDocument::from_automaton(reduced, style),
        }
    }
}

/// Verification verdict for a candidate solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutputDocument {
    pub variant: String,
    pub verified: bool,
}
