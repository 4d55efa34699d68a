//! The intervention oracle. It keeps the ground-truth DAG private and
//! exposes only the current interventional essential graph, the ledger and
//! the accumulated cost.

use std::fmt::Write as _;

use crate::error::{input, Error, Result};
use crate::graph::{InterventionSet, PGraph, WeightedInstance};
use crate::mec::{close_from, essential_graph, interventional_essential_graph, orient_cut_edges};

/// One ledger entry of the replay trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub step: usize,
    pub set: Vec<usize>,
    pub cost_delta: f64,
    pub revealed: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct Simulator {
    instance: WeightedInstance,
    view: PGraph,
    ledger: InterventionSet,
    alpha: f64,
    beta: f64,
    cost: f64,
    debug: bool,
    trace: Vec<TraceEntry>,
}

impl Simulator {
    pub fn new(instance: WeightedInstance, alpha: f64, beta: f64, k: usize) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite() && beta >= 0.0 && beta.is_finite()) {
            return input(format!(
                "cost parameters must be finite and nonnegative, got alpha = {alpha}, beta = {beta}"
            ));
        }
        let ledger = InterventionSet::new(k)?;
        let view = essential_graph(instance.dag());
        Ok(Simulator { instance, view, ledger, alpha, beta, cost: 0.0, debug: false, trace: Vec::new() })
    }

    /// In debug mode every intervention also recomputes the view from
    /// scratch and fails with an invariant error on mismatch.
    pub fn with_debug(mut self, on: bool) -> Self {
        self.debug = on;
        self
    }

    /// Performs the intervention `set` and returns the arcs it revealed,
    /// including those implied by the Meek rules.
    pub fn intervene(&mut self, set: &[usize]) -> Result<Vec<(usize, usize)>> {
        let n = self.n();
        if let Some(&v) = set.iter().find(|&&v| v >= n) {
            return input(format!("vertex {v} out of range for n = {n}"));
        }
        self.ledger.push(set.to_vec())?;
        let set = self.ledger.sets().last().expect("just pushed").clone();

        let mut revealed = orient_cut_edges(&mut self.view, self.instance.dag(), &set);
        let implied = close_from(&mut self.view, revealed.clone());
        revealed.extend(implied);

        let delta = self.alpha * set.iter().map(|&v| self.instance.weights()[v]).sum::<f64>() + self.beta;
        self.cost += delta;
        self.trace.push(TraceEntry { step: self.trace.len(), set, cost_delta: delta, revealed: revealed.clone() });

        if self.debug {
            let fresh = interventional_essential_graph(self.instance.dag(), &self.ledger);
            if fresh != self.view {
                return Err(Error::Invariant("incremental view differs from recomputed view".into()));
            }
        }
        Ok(revealed)
    }

    pub fn view(&self) -> &PGraph {
        &self.view
    }

    pub fn weights(&self) -> &[f64] {
        self.instance.weights()
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn k(&self) -> usize {
        self.ledger.k()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `alpha * w(v) + beta`, the price of the singleton `{v}`.
    pub fn vertex_cost(&self, v: usize) -> f64 {
        self.alpha * self.instance.weights()[v] + self.beta
    }

    pub fn is_fully_oriented(&self) -> bool {
        self.view.is_fully_oriented()
    }

    pub fn total_cost(&self) -> f64 {
        self.cost
    }

    pub fn total_weight(&self) -> f64 {
        self.ledger.weight(self.instance.weights())
    }

    pub fn num_interventions(&self) -> usize {
        self.ledger.len()
    }

    pub fn ledger(&self) -> &InterventionSet {
        &self.ledger
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    /// One line per intervention: `step, S, cost_delta, arcs_revealed`.
    pub fn replay_log(&self) -> String {
        let mut s = String::new();
        for e in &self.trace {
            let set: Vec<String> = e.set.iter().map(ToString::to_string).collect();
            let arcs: Vec<String> = e.revealed.iter().map(|(u, v)| format!("{u}->{v}")).collect();
            let _ = writeln!(s, "{}, {{{}}}, {}, [{}]", e.step, set.join(" "), e.cost_delta, arcs.join(" "));
        }
        s
    }

    /// Whether the view equals the hidden DAG. For harness checks only;
    /// search algorithms must not call this.
    pub fn matches_truth(&self) -> bool {
        self.view == *self.instance.dag().graph()
    }
}
