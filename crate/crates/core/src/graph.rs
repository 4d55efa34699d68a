//! Graph containers shared by every other module.
//!
//! [`PGraph`] is a partially directed graph and carries skeletons, essential
//! graphs and interventional essential graphs alike. [`Dag`] is a fully
//! directed acyclic graph with a cached topological order, and
//! [`WeightedInstance`] pairs a DAG with per-vertex intervention costs.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::error::{input, Error, Result};

/// A partially directed graph on vertices `0..n`.
///
/// Every adjacent pair is either joined by an undirected edge or by exactly
/// one arc. Adjacency is kept per vertex in three ordered sets so iteration
/// order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PGraph {
    n: usize,
    und: Vec<BTreeSet<usize>>,
    out: Vec<BTreeSet<usize>>,
    inc: Vec<BTreeSet<usize>>,
}

impl PGraph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        PGraph { n, und: vec![BTreeSet::new(); n], out: vec![BTreeSet::new(); n], inc: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, undirected: &[(usize, usize)], arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = PGraph::new(n);
        for &(u, v) in undirected {
            g.add_undirected(u, v)?;
        }
        for &(u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return input(format!("vertex out of range in ({u}, {v}) for n = {}", self.n));
        }
        if u == v {
            return input(format!("self-loop at {u}"));
        }
        if self.is_adjacent(u, v) {
            return input(format!("duplicate edge between {u} and {v}"));
        }
        Ok(())
    }

    pub fn add_undirected(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.und[u].insert(v);
        self.und[v].insert(u);
        Ok(())
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.out[u].insert(v);
        self.inc[v].insert(u);
        Ok(())
    }

    /// Turns the undirected edge `u - v` into `u -> v`. Returns `false` when
    /// there is no undirected edge between them.
    pub fn orient(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || !self.und[u].remove(&v) {
            return false;
        }
        self.und[v].remove(&u);
        self.out[u].insert(v);
        self.inc[v].insert(u);
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.und[u].contains(&v) || self.out[u].contains(&v) || self.inc[u].contains(&v)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(&v)
    }

    pub fn has_undirected(&self, u: usize, v: usize) -> bool {
        self.und[u].contains(&v)
    }

    pub fn undirected_neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.und[v]
    }

    pub fn parents(&self, v: usize) -> &BTreeSet<usize> {
        &self.inc[v]
    }

    pub fn children(&self, v: usize) -> &BTreeSet<usize> {
        &self.out[v]
    }

    /// All neighbours of `v` regardless of edge type, in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut all: Vec<usize> =
            self.und[v].iter().chain(self.out[v].iter()).chain(self.inc[v].iter()).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn degree(&self, v: usize) -> usize {
        self.und[v].len() + self.out[v].len() + self.inc[v].len()
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for &v in self.und[u].range(u + 1..) {
                edges.push((u, v));
            }
        }
        edges
    }

    /// Arcs sorted by tail then head.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::new();
        for u in 0..self.n {
            for &v in &self.out[u] {
                arcs.push((u, v));
            }
        }
        arcs
    }

    pub fn num_undirected(&self) -> usize {
        self.und.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn num_arcs(&self) -> usize {
        self.out.iter().map(BTreeSet::len).sum()
    }

    pub fn is_fully_oriented(&self) -> bool {
        self.und.iter().all(BTreeSet::is_empty)
    }

    /// The same vertex set with every edge and arc made undirected.
    pub fn skeleton(&self) -> PGraph {
        let mut s = PGraph::new(self.n);
        for u in 0..self.n {
            let mut nb: BTreeSet<usize> = self.und[u].clone();
            nb.extend(self.out[u].iter().copied());
            nb.extend(self.inc[u].iter().copied());
            s.und[u] = nb;
        }
        s
    }

    /// The graph without its arcs.
    pub fn undirected_part(&self) -> PGraph {
        PGraph {
            n: self.n,
            und: self.und.clone(),
            out: vec![BTreeSet::new(); self.n],
            inc: vec![BTreeSet::new(); self.n],
        }
    }

    /// Chain-graph check: contracting every chain component must leave the
    /// arcs acyclic.
    pub fn is_chain_graph(&self) -> bool {
        let comps = chain_component_sets(self);
        let mut label = vec![0usize; self.n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                label[v] = i;
            }
        }
        let m = comps.len();
        let mut succ = vec![BTreeSet::new(); m];
        for (u, v) in self.arcs() {
            if label[u] == label[v] {
                return false;
            }
            succ[label[u]].insert(label[v]);
        }
        let mut indeg = vec![0usize; m];
        for s in &succ {
            for &t in s {
                indeg[t] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(c) = queue.pop_front() {
            seen += 1;
            for &t in &succ[c] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        seen == m
    }
}

/// A DAG with a cached topological order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dag {
    graph: PGraph,
    topo: Vec<usize>,
    pos: Vec<usize>,
}

impl Dag {
    /// Builds a DAG, rejecting cycles, self-loops and duplicate arcs. The
    /// cached order is the lexicographically smallest topological order.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let graph = PGraph::from_edges(n, &[], arcs)?;
        Dag::from_pgraph(graph)
    }

    /// Wraps a fully directed graph.
    pub fn from_pgraph(graph: PGraph) -> Result<Self> {
        if !graph.is_fully_oriented() {
            return input("graph has undirected edges");
        }
        let n = graph.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| graph.parents(v).len()).collect();
        let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(Reverse(u)) = heap.pop() {
            topo.push(u);
            for &v in graph.children(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        if topo.len() != n {
            return input("arcs contain a directed cycle");
        }
        let mut pos = vec![0; n];
        for (i, &v) in topo.iter().enumerate() {
            pos[v] = i;
        }
        Ok(Dag { graph, topo, pos })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &PGraph {
        &self.graph
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// Position of `v` in the cached topological order.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn parents(&self, v: usize) -> &BTreeSet<usize> {
        self.graph.parents(v)
    }

    pub fn children(&self, v: usize) -> &BTreeSet<usize> {
        self.graph.children(v)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.graph.has_arc(u, v)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.is_adjacent(u, v)
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.graph.arcs()
    }

    pub fn num_arcs(&self) -> usize {
        self.graph.num_arcs()
    }

    /// True when no vertex has two non-adjacent parents.
    pub fn is_moral(&self) -> bool {
        (0..self.n()).all(|v| {
            let pa: Vec<usize> = self.parents(v).iter().copied().collect();
            pa.iter().enumerate().all(|(i, &a)| pa[i + 1..].iter().all(|&b| self.is_adjacent(a, b)))
        })
    }

    /// Vertices reachable from `v` along arcs, including `v`.
    pub fn descendants(&self, v: usize) -> BTreeSet<usize> {
        self.reach(v, true)
    }

    /// Vertices that reach `v` along arcs, including `v`.
    pub fn ancestors(&self, v: usize) -> BTreeSet<usize> {
        self.reach(v, false)
    }

    fn reach(&self, v: usize, forward: bool) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            let next = if forward { self.children(u) } else { self.parents(u) };
            for &x in next {
                if seen.insert(x) {
                    stack.push(x);
                }
            }
        }
        seen
    }

    /// The sub-DAG induced by `vs`, relabelled in ascending id order.
    pub fn induced(&self, vs: &[usize]) -> Result<(Dag, Vec<usize>)> {
        let (g, map) = induced_subgraph(&self.graph, vs)?;
        Ok((Dag::from_pgraph(g)?, map))
    }
}

/// A DAG together with nonnegative vertex costs.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedInstance {
    dag: Dag,
    weights: Vec<f64>,
}

impl WeightedInstance {
    pub fn new(dag: Dag, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != dag.n() {
            return input(format!("expected {} weights, got {}", dag.n(), weights.len()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return input(format!("weights must be finite and nonnegative, got {w}"));
        }
        Ok(WeightedInstance { dag, weights })
    }

    /// Unit weight on every vertex.
    pub fn unit(dag: Dag) -> Self {
        let n = dag.n();
        WeightedInstance { dag, weights: vec![1.0; n] }
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.dag.n()
    }
}

/// An ordered multiset of interventions, each of size at most `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InterventionSet {
    sets: Vec<Vec<usize>>,
    k: usize,
}

impl InterventionSet {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return input("size bound k must be at least 1");
        }
        Ok(InterventionSet { sets: Vec::new(), k })
    }

    pub fn atomic() -> Self {
        InterventionSet { sets: Vec::new(), k: 1 }
    }

    pub fn from_sets(k: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = InterventionSet::new(k)?;
        for s in sets {
            out.push(s)?;
        }
        Ok(out)
    }

    /// Atomic intervention set with one singleton per vertex.
    pub fn singletons(vs: impl IntoIterator<Item = usize>) -> Self {
        InterventionSet { sets: vs.into_iter().map(|v| vec![v]).collect(), k: 1 }
    }

    /// Appends an intervention; it is stored sorted and deduplicated.
    pub fn push(&mut self, mut set: Vec<usize>) -> Result<()> {
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return input("empty intervention");
        }
        if set.len() > self.k {
            return Err(Error::SizeBound { size: set.len(), bound: self.k });
        }
        self.sets.push(set);
        Ok(())
    }

    pub fn extend(&mut self, other: &InterventionSet) -> Result<()> {
        for s in &other.sets {
            self.push(s.clone())?;
        }
        Ok(())
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_atomic(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }

    /// Total vertex cost, counting multiplicity.
    pub fn weight(&self, w: &[f64]) -> f64 {
        self.sets.iter().flatten().map(|&v| w[v]).sum()
    }

    /// `alpha * w(I) + beta * |I|`.
    pub fn cost(&self, w: &[f64], alpha: f64, beta: f64) -> f64 {
        alpha * self.weight(w) + beta * self.len() as f64
    }

    /// Distinct vertices touched by any intervention.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.sets.iter().flatten().copied().collect()
    }
}

/// Vertex sets of the chain components: connected components after all arcs
/// are dropped. Each set is sorted; sets are ordered by smallest member.
pub fn chain_component_sets(g: &PGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.undirected_neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Chain components together with their induced undirected subgraphs
/// (relabelled; the vertex set doubles as the new-to-old map).
pub fn chain_components(g: &PGraph) -> Vec<(Vec<usize>, PGraph)> {
    let und = g.undirected_part();
    chain_component_sets(g)
        .into_iter()
        .map(|vs| {
            let (sub, _) = induced_subgraph(&und, &vs).expect("component vertices are in range");
            (vs, sub)
        })
        .collect()
}

/// The chain component containing `v`, sorted.
pub fn chain_component_of(g: &PGraph, v: usize) -> Vec<usize> {
    let mut seen = BTreeSet::from([v]);
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &x in g.undirected_neighbors(u) {
            if seen.insert(x) {
                stack.push(x);
            }
        }
    }
    seen.into_iter().collect()
}

/// Subgraph induced by `vs`, relabelled `0..|vs|` in ascending id order.
/// Returns the graph and the new-to-old id map.
pub fn induced_subgraph(g: &PGraph, vs: &[usize]) -> Result<(PGraph, Vec<usize>)> {
    let mut map: Vec<usize> = vs.to_vec();
    map.sort_unstable();
    map.dedup();
    if let Some(&bad) = map.iter().find(|&&v| v >= g.n()) {
        return input(format!("vertex {bad} out of range for n = {}", g.n()));
    }
    let mut back = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        back[v] = i;
    }
    let mut sub = PGraph::new(map.len());
    for (i, &v) in map.iter().enumerate() {
        for &u in g.undirected_neighbors(v).range(v + 1..) {
            if back[u] != usize::MAX {
                sub.und[i].insert(back[u]);
                sub.und[back[u]].insert(i);
            }
        }
        for &u in g.children(v) {
            if back[u] != usize::MAX {
                sub.out[i].insert(back[u]);
                sub.inc[back[u]].insert(i);
            }
        }
    }
    Ok((sub, map))
}

/// True iff every pair in `vs` is adjacent in `g`.
pub fn is_clique(g: &PGraph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| a != b && g.is_adjacent(a, b)))
}

/// Whether `d` extends `g`: same skeleton, all arcs of `g` kept, acyclic.
pub fn is_consistent_extension(d: &Dag, g: &PGraph) -> Result<bool> {
    if d.n() != g.n() || d.graph().skeleton() != g.skeleton() {
        return input("skeletons differ");
    }
    Ok(g.arcs().into_iter().all(|(u, v)| d.has_arc(u, v)))
}
