//! Measurement-driven protocols: programs of gates and projective
//! measurements whose outcomes pick the next step. Evaluated exactly as a
//! branch tree, or sampled with a seeded generator.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_arith::{inner, norm_sq, scale_vec, sub_vec, Cyclotomic, Matrix, Rational, SparseMatrix};
use crate::fusion_space::FusionBasis;
use crate::qutrit_models::QutritError;

mod ancilla;
mod library;
mod register;

pub use ancilla::{
    ancilla_h, braid_p_word, braid_q_word, braid_r, braid_r_word, psi_state, r_formulas, tilde, RFormulaReport,
};
pub use library::{
    beta_inv_via_t, beta_via_s, closed_form, flip2_program, gamma_inv_via_r, gamma_via_r, hadamard_via_p, hadamard_via_q, lambda2_sigma_z,
    library_entry, protocol_library, psi_ancilla_prep, psi_prep_input, qubit_in_qutrit, sigma_x_measurement, toffoli_from_cz, verify_alpha_recursion,
    AlphaReport, AlphaStep, LibraryEntry, QutritOps, SpaceOps, LIBRARY_NAMES,
};
pub use register::{unit, Register};

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid program: {0}")]
    Program(String),
    #[error("unknown protocol `{0}`")]
    UnknownProtocol(String),
    #[error(transparent)]
    Qutrit(#[from] QutritError),
}

/// A linear map on the program's state space.
#[derive(Clone, Debug)]
pub enum Operand {
    Dense(Matrix),
    Sparse(SparseMatrix),
}

impl Operand {
    pub fn dim(&self) -> usize {
        match self {
            Operand::Dense(m) => m.rows(),
            Operand::Sparse(m) => m.dim(),
        }
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        match self {
            Operand::Dense(m) => m.mul_vec(v),
            Operand::Sparse(m) => m.mul_vec(v),
        }
    }

    fn is_square(&self) -> bool {
        match self {
            Operand::Dense(m) => m.is_square(),
            Operand::Sparse(_) => true,
        }
    }
}

/// An orthogonal projector.
#[derive(Clone, Debug)]
pub enum Projector {
    /// Onto the listed coordinate axes.
    Diagonal(BTreeSet<usize>),
    /// Onto the span of orthonormal vectors.
    Span(Vec<Vec<Cyclotomic>>),
    /// Onto the orthogonal complement of orthonormal vectors.
    Complement(Vec<Vec<Cyclotomic>>),
}

impl Projector {
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        match self {
            Projector::Diagonal(idx) => {
                v.iter().enumerate().map(|(i, x)| if idx.contains(&i) { x.clone() } else { Cyclotomic::zero() }).collect()
            }
            Projector::Span(vs) => {
                let mut out = vec![Cyclotomic::zero(); v.len()];
                for b in vs {
                    let c = inner(b, v);
                    if c.is_zero() {
                        continue;
                    }
                    for (o, x) in out.iter_mut().zip(b) {
                        if !x.is_zero() {
                            *o += &(&c * x);
                        }
                    }
                }
                out
            }
            Projector::Complement(vs) => sub_vec(v, &Projector::Span(vs.clone()).apply(v)),
        }
    }

    pub fn to_matrix(&self, dim: usize) -> Matrix {
        let cols: Vec<Vec<Cyclotomic>> = (0..dim).map(|i| self.apply(&unit(dim, i))).collect();
        Matrix::from_columns(&cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MeasurementKind {
    /// Is the total charge of a pair of anyons trivial?
    PairChargeA,
    /// Inside or outside a subspace.
    Subspace,
    /// Is one qudit in `|0>`?
    ComputationalZero,
    /// Full computational basis of one qudit.
    Basis,
}

/// A complete projective measurement with labelled outcomes.
#[derive(Clone, Debug)]
pub struct MeasurementSpec {
    pub name: String,
    pub kind: MeasurementKind,
    pub outcomes: Vec<(String, Projector)>,
}

impl MeasurementSpec {
    /// Is the pair of leaves spanning `span` in the vacuum channel `A`?
    /// Requires `span` to be an edge of the basis's tree.
    pub fn charge_a(basis: &FusionBasis, span: (usize, usize)) -> Result<Self, SimError> {
        let k = basis
            .edges()
            .iter()
            .position(|&e| e == span)
            .ok_or_else(|| SimError::Program(format!("{span:?} is not an edge of the tree")))?;
        let a = crate::anyon_model::AnyonLabel::A;
        let (yes, no): (BTreeSet<usize>, BTreeSet<usize>) = (0..basis.dim()).partition(|&i| basis.labeling(i)[k] == a);
        Ok(MeasurementSpec {
            name: format!("charge{span:?}"),
            kind: MeasurementKind::PairChargeA,
            outcomes: vec![("A".into(), Projector::Diagonal(yes)), ("not A".into(), Projector::Diagonal(no))],
        })
    }

    /// In `span(vectors)` or not; outcomes `name` and `name-perp`.
    pub fn subspace(name: &str, vectors: Vec<Vec<Cyclotomic>>) -> Self {
        MeasurementSpec {
            name: name.to_string(),
            kind: MeasurementKind::Subspace,
            outcomes: vec![
                (name.to_string(), Projector::Span(vectors.clone())),
                (format!("{name}-perp"), Projector::Complement(vectors)),
            ],
        }
    }

    /// Subspace test for a coordinate subspace.
    pub fn coordinate_subspace(name: &str, indices: BTreeSet<usize>, dim: usize) -> Self {
        let rest = (0..dim).filter(|i| !indices.contains(i)).collect();
        MeasurementSpec {
            name: name.to_string(),
            kind: MeasurementKind::Subspace,
            outcomes: vec![(name.to_string(), Projector::Diagonal(indices)), (format!("{name}-perp"), Projector::Diagonal(rest))],
        }
    }

    /// `|0>` or not on qudit `site`; outcomes `"0"` and `"not 0"`.
    pub fn computational_zero(reg: &Register, site: usize) -> Self {
        let (zero, rest): (BTreeSet<usize>, BTreeSet<usize>) = (0..reg.dim()).partition(|&i| reg.digits(i)[site] == 0);
        MeasurementSpec {
            name: format!("zero{site}"),
            kind: MeasurementKind::ComputationalZero,
            outcomes: vec![("0".into(), Projector::Diagonal(zero)), ("not 0".into(), Projector::Diagonal(rest))],
        }
    }

    /// Computational basis of qudit `site`; outcomes `"0"`, `"1"`, ...
    pub fn standard_basis(reg: &Register, site: usize) -> Self {
        MeasurementSpec {
            name: format!("Z{site}"),
            kind: MeasurementKind::Basis,
            outcomes: (0..reg.dims()[site])
                .map(|v| (v.to_string(), Projector::Diagonal(reg.digit_indices(site, v).into_iter().collect())))
                .collect(),
        }
    }

    /// Whether the outcome projectors are idempotent, mutually orthogonal and
    /// sum to the identity on a `dim`-dimensional space.
    pub fn is_complete(&self, dim: usize) -> bool {
        if self.outcomes.iter().all(|(_, p)| matches!(p, Projector::Diagonal(_))) {
            let mut seen = BTreeSet::new();
            for (_, p) in &self.outcomes {
                let Projector::Diagonal(s) = p else { unreachable!() };
                for &i in s {
                    if i >= dim || !seen.insert(i) {
                        return false;
                    }
                }
            }
            return seen.len() == dim;
        }
        let ps: Vec<Matrix> = self.outcomes.iter().map(|(_, p)| p.to_matrix(dim)).collect();
        let total = ps.iter().fold(Matrix::zeros(dim, dim), |acc, p| acc.add(p));
        if !total.is_identity() {
            return false;
        }
        for (i, p) in ps.iter().enumerate() {
            if p.mul(p) != *p || p.adjoint() != *p {
                return false;
            }
            if ps[i + 1..].iter().any(|q| !p.mul(q).is_zero()) {
                return false;
            }
        }
        true
    }
}

/// One outcome of [`measure`].
#[derive(Clone, Debug)]
pub struct Outcome {
    pub label: String,
    pub probability: Cyclotomic,
    /// The projected, unnormalized state.
    pub projected: Vec<Cyclotomic>,
    /// The normalized post-measurement state, when the norm lies in the field.
    pub post_state: Option<Vec<Cyclotomic>>,
}

/// Measures a state; outcomes with probability zero are left out.
pub fn measure(state: &[Cyclotomic], spec: &MeasurementSpec) -> Result<Vec<Outcome>, SimError> {
    let total = norm_sq(state);
    if total.is_zero() {
        return Err(SimError::ZeroNorm);
    }
    let mut out = Vec::new();
    for (label, p) in &spec.outcomes {
        let projected = p.apply(state);
        let n = norm_sq(&projected);
        if n.is_zero() {
            continue;
        }
        let post_state = n
            .as_rational()
            .and_then(|r| Cyclotomic::sqrt_rational(&r))
            .and_then(|s| s.inverse().ok())
            .map(|k| scale_vec(&projected, &k));
        out.push(Outcome {
            label: label.clone(),
            probability: n.try_div(&total).map_err(|_| SimError::ZeroNorm)?,
            projected,
            post_state,
        });
    }
    Ok(out)
}

/// A named gate in a program.
#[derive(Clone, Debug)]
pub struct Step {
    pub name: String,
    pub op: Operand,
}

impl Step {
    pub fn dense(name: &str, m: Matrix) -> Self {
        Step { name: name.to_string(), op: Operand::Dense(m) }
    }

    pub fn sparse(name: &str, m: SparseMatrix) -> Self {
        Step { name: name.to_string(), op: Operand::Sparse(m) }
    }
}

#[derive(Clone, Debug)]
pub enum Next {
    /// Stop with this outcome label.
    Terminal(String),
    Goto(String),
    /// Measure, then continue at the node paired with each outcome label.
    Measure { spec: MeasurementSpec, branches: Vec<(String, String)> },
}

/// Gates followed by a transition. Entering a `round` node uses up one round.
#[derive(Clone, Debug)]
pub struct Node {
    pub steps: Vec<Step>,
    pub round: bool,
    pub next: Next,
}

impl Node {
    pub fn new(steps: Vec<Step>, next: Next) -> Self {
        Node { steps, round: false, next }
    }

    pub fn round(steps: Vec<Step>, next: Next) -> Self {
        Node { steps, round: true, next }
    }

    pub fn measure(steps: Vec<Step>, spec: MeasurementSpec, branches: &[(&str, &str)]) -> Self {
        let branches = branches.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Node::new(steps, Next::Measure { spec, branches })
    }

    pub fn terminal(label: &str) -> Self {
        Node::new(Vec::new(), Next::Terminal(label.to_string()))
    }

    pub fn goto(steps: Vec<Step>, target: &str) -> Self {
        Node::new(steps, Next::Goto(target.to_string()))
    }

    pub fn into_round(mut self) -> Self {
        self.round = true;
        self
    }
}

/// A protocol as a graph of nodes. When the round budget runs out at a round
/// node the run stops there with the label `residual:<node>`.
#[derive(Clone, Debug)]
pub struct ProtocolProgram {
    pub name: String,
    pub dim: usize,
    pub start: String,
    pub nodes: BTreeMap<String, Node>,
    pub max_rounds: usize,
}

pub const RESIDUAL: &str = "residual";

impl ProtocolProgram {
    pub fn new(name: &str, dim: usize, start: &str, max_rounds: usize) -> Self {
        ProtocolProgram { name: name.to_string(), dim, start: start.to_string(), nodes: BTreeMap::new(), max_rounds }
    }

    pub fn node(mut self, name: &str, node: Node) -> Self {
        self.nodes.insert(name.to_string(), node);
        self
    }

    /// Adds a node `end:<label>` that stops with `label`, and returns its name.
    pub fn end(label: &str) -> String {
        format!("end:{label}")
    }

    pub fn with_terminals(mut self, labels: &[&str]) -> Self {
        for l in labels {
            self.nodes.insert(Self::end(l), Node::terminal(l));
        }
        self
    }

    /// Checks targets, operator sizes, measurement completeness and that every
    /// cycle passes through a round node.
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::Program(format!("{}: {m}", self.name)));
        if !self.nodes.contains_key(&self.start) {
            return bad(format!("start node `{}` missing", self.start));
        }
        for (name, node) in &self.nodes {
            for s in &node.steps {
                if s.op.dim() != self.dim || !s.op.is_square() {
                    return bad(format!("step `{}` in `{name}` has size {}, expected {}", s.name, s.op.dim(), self.dim));
                }
            }
            match &node.next {
                Next::Terminal(_) => {}
                Next::Goto(t) => {
                    if !self.nodes.contains_key(t) {
                        return bad(format!("`{name}` jumps to missing node `{t}`"));
                    }
                }
                Next::Measure { spec, branches } => {
                    let labels: BTreeSet<&str> = spec.outcomes.iter().map(|(l, _)| l.as_str()).collect();
                    let routed: BTreeSet<&str> = branches.iter().map(|(l, _)| l.as_str()).collect();
                    if labels != routed {
                        return bad(format!("`{name}` routes {routed:?} but measures {labels:?}"));
                    }
                    if let Some((_, t)) = branches.iter().find(|(_, t)| !self.nodes.contains_key(t)) {
                        return bad(format!("`{name}` branches to missing node `{t}`"));
                    }
                    if !spec.is_complete(self.dim) {
                        return bad(format!("measurement `{}` in `{name}` is not a complete projective measurement", spec.name));
                    }
                }
            }
        }
        // Cycles among non-round nodes would never terminate.
        let succ = |n: &Node| -> Vec<String> {
            match &n.next {
                Next::Terminal(_) => vec![],
                Next::Goto(t) => vec![t.clone()],
                Next::Measure { branches, .. } => branches.iter().map(|(_, t)| t.clone()).collect(),
            }
        };
        let mut state: BTreeMap<&str, u8> = BTreeMap::new();
        fn dfs<'a>(
            n: &'a str,
            nodes: &'a BTreeMap<String, Node>,
            succ: &dyn Fn(&Node) -> Vec<String>,
            state: &mut BTreeMap<&'a str, u8>,
        ) -> bool {
            match state.get(n) {
                Some(1) => return false,
                Some(2) => return true,
                _ => {}
            }
            state.insert(n, 1);
            for t in succ(&nodes[n]) {
                let (k, node) = nodes.get_key_value(t.as_str()).expect("checked above");
                if !node.round && !dfs(k, nodes, succ, state) {
                    return false;
                }
            }
            state.insert(n, 2);
            true
        }
        for name in self.nodes.keys() {
            if !dfs(name, &self.nodes, &succ, &mut state) {
                return bad(format!("cycle through `{name}` without a round node"));
            }
        }
        Ok(())
    }
}

/// One node visit in the exact evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct BranchNode {
    pub node: String,
    /// Measurement outcome that led here.
    pub outcome: Option<String>,
    /// Probability of `outcome` given the parent.
    #[serde(serialize_with = "ser_text")]
    pub conditional: Cyclotomic,
    /// Absolute probability of reaching this visit.
    #[serde(serialize_with = "ser_text")]
    pub probability: Cyclotomic,
    /// Round count on entry.
    pub round: usize,
    /// State after this node's gates, unnormalized: its squared norm over the
    /// input's squared norm is `probability`.
    #[serde(skip)]
    pub state: Vec<Cyclotomic>,
    pub terminal: Option<String>,
    pub children: Vec<BranchNode>,
}

fn ser_text<S: serde::Serializer>(c: &Cyclotomic, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

impl BranchNode {
    pub fn leaves(&self) -> Vec<&BranchNode> {
        if self.children.is_empty() {
            vec![self]
        } else {
            self.children.iter().flat_map(BranchNode::leaves).collect()
        }
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(BranchNode::count).sum::<usize>()
    }

    /// Normalized state at this visit, when the norm lies in the field.
    pub fn normalized_state(&self, input_norm_sq: &Cyclotomic) -> Option<Vec<Cyclotomic>> {
        let n = (&self.probability * input_norm_sq).as_rational()?;
        let k = Cyclotomic::sqrt_rational(&n)?.inverse().ok()?;
        Some(scale_vec(&self.state, &k))
    }
}

/// Exact evaluation of a program on one input.
#[derive(Clone, Debug, Serialize)]
pub struct BranchTree {
    pub program: String,
    pub max_rounds: usize,
    #[serde(skip)]
    pub input_norm_sq: Cyclotomic,
    pub root: BranchNode,
}

impl BranchTree {
    /// Total probability of each terminal label.
    pub fn distribution(&self) -> BTreeMap<String, Cyclotomic> {
        let mut out: BTreeMap<String, Cyclotomic> = BTreeMap::new();
        for l in self.root.leaves() {
            let label = l.terminal.clone().unwrap_or_default();
            *out.entry(label).or_insert_with(Cyclotomic::zero) += &l.probability;
        }
        out
    }

    /// The distribution as rationals, when every probability is rational
    /// (always so for the library protocols on their default inputs).
    pub fn distribution_rational(&self) -> Option<BTreeMap<String, Rational>> {
        self.distribution().into_iter().map(|(k, v)| Some((k, v.as_rational()?))).collect()
    }

    pub fn probability(&self, label: &str) -> Cyclotomic {
        self.distribution().remove(label).unwrap_or_else(Cyclotomic::zero)
    }

    /// Total probability of the residual terminals.
    pub fn residual(&self) -> Cyclotomic {
        self.distribution()
            .iter()
            .filter(|(k, _)| k.starts_with(RESIDUAL))
            .fold(Cyclotomic::zero(), |acc, (_, v)| &acc + v)
    }

    pub fn leaves(&self) -> Vec<&BranchNode> {
        self.root.leaves()
    }

    pub fn size(&self) -> usize {
        self.root.count()
    }

    /// Children's conditionals sum to one at every measurement, and leaf
    /// probabilities sum to one.
    pub fn is_consistent(&self) -> bool {
        fn walk(n: &BranchNode) -> bool {
            if n.children.is_empty() {
                return true;
            }
            let s = n.children.iter().fold(Cyclotomic::zero(), |acc, c| &acc + &c.conditional);
            s.is_one() && n.children.iter().all(walk)
        }
        let total = self.root.leaves().iter().fold(Cyclotomic::zero(), |acc, l| &acc + &l.probability);
        walk(&self.root) && total.is_one()
    }
}

/// Evaluates every branch exactly. Measurement branches are explored in parallel.
pub fn run_exact(program: &ProtocolProgram, input: &[Cyclotomic]) -> Result<BranchTree, SimError> {
    program.validate()?;
    if input.len() != program.dim {
        return Err(SimError::Dimension(format!("{}-dim input for a {}-dim program", input.len(), program.dim)));
    }
    let n0 = norm_sq(input);
    if n0.is_zero() {
        return Err(SimError::ZeroNorm);
    }
    let root = visit(program, &program.start, None, Cyclotomic::one(), Cyclotomic::one(), input.to_vec(), 0)?;
    Ok(BranchTree { program: program.name.clone(), max_rounds: program.max_rounds, input_norm_sq: n0, root })
}

fn visit(
    program: &ProtocolProgram,
    name: &str,
    outcome: Option<String>,
    conditional: Cyclotomic,
    probability: Cyclotomic,
    mut state: Vec<Cyclotomic>,
    rounds: usize,
) -> Result<BranchNode, SimError> {
    let node = &program.nodes[name];
    let mut here = BranchNode {
        node: name.to_string(),
        outcome,
        conditional,
        probability,
        round: rounds,
        state: Vec::new(),
        terminal: None,
        children: Vec::new(),
    };
    if node.round && rounds == program.max_rounds {
        here.terminal = Some(format!("{RESIDUAL}:{name}"));
        here.state = state;
        return Ok(here);
    }
    let rounds = rounds + node.round as usize;
    for s in &node.steps {
        state = s.op.apply(&state);
    }
    match &node.next {
        Next::Terminal(l) => here.terminal = Some(l.clone()),
        Next::Goto(t) => {
            let p = here.probability.clone();
            here.children.push(visit(program, t, None, Cyclotomic::one(), p, state.clone(), rounds)?);
        }
        Next::Measure { spec, branches } => {
            let outs = measure(&state, spec)?;
            let parent = here.probability.clone();
            here.children = outs
                .into_par_iter()
                .map(|o| {
                    let target = &branches.iter().find(|(l, _)| *l == o.label).expect("validated").1;
                    let p = &parent * &o.probability;
                    visit(program, target, Some(o.label), o.probability, p, o.projected, rounds)
                })
                .collect::<Result<Vec<_>, SimError>>()?;
        }
    }
    here.state = state;
    Ok(here)
}

/// Monte Carlo counts over terminal labels.
#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub program: String,
    pub seed: u64,
    pub trials: u64,
    pub counts: BTreeMap<String, u64>,
}

impl SampleReport {
    pub fn frequency(&self, label: &str) -> f64 {
        *self.counts.get(label).unwrap_or(&0) as f64 / self.trials as f64
    }

    /// Whether the observed frequency of `label` lies within `k` standard
    /// errors of `p`.
    pub fn within(&self, label: &str, p: f64, k: f64) -> bool {
        let se = (p * (1.0 - p) / self.trials as f64).sqrt().max(1.0 / self.trials as f64);
        (self.frequency(label) - p).abs() <= k * se
    }
}

/// Evaluates `program` exactly, then samples `trials` outcome paths.
pub fn run_sampled(program: &ProtocolProgram, input: &[Cyclotomic], seed: u64, trials: u64) -> Result<SampleReport, SimError> {
    if trials == 0 {
        return Err(SimError::Program("at least one trial is required".into()));
    }
    Ok(sample_tree(&run_exact(program, input)?, seed, trials))
}

/// Samples outcome paths of an exact tree. Each measurement draws a uniform
/// float and picks the outcome by its exact probability converted to `f64`.
/// Trial `t` uses ChaCha8 seeded with `seed` on stream `t`, so results do not
/// depend on thread count or scheduling.
pub fn sample_tree(tree: &BranchTree, seed: u64, trials: u64) -> SampleReport {
    let weights = |n: &BranchNode| -> Vec<f64> { n.children.iter().map(|c| c.conditional.to_complex().re).collect() };
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let mut n = &tree.root;
            while !n.children.is_empty() {
                if n.children.len() == 1 {
                    n = &n.children[0];
                    continue;
                }
                let x: f64 = rng.random();
                let w = weights(n);
                let mut acc = 0.0;
                let mut pick = n.children.len() - 1;
                for (i, p) in w.iter().enumerate() {
                    acc += p;
                    if x < acc {
                        pick = i;
                        break;
                    }
                }
                n = &n.children[pick];
            }
            n.terminal.clone().unwrap_or_default()
        })
        .fold(BTreeMap::new, |mut m: BTreeMap<String, u64>, l| {
            *m.entry(l).or_default() += 1;
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    SampleReport { program: tree.program.clone(), seed, trials, counts }
}

/// Whether `a = c b` for some nonzero scalar `c`.
pub fn proportional(a: &[Cyclotomic], b: &[Cyclotomic]) -> bool {
    let Some(k) = b.iter().position(|x| !x.is_zero()) else { return a.iter().all(Cyclotomic::is_zero) };
    let Ok(c) = a[k].try_div(&b[k]) else { return false };
    !c.is_zero() && a.iter().zip(b).all(|(x, y)| *x == &c * y)
}

#[cfg(test)]
mod tests;
