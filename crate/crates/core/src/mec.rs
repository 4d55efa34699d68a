//! Markov equivalence structure: skeletons, v-structures, Meek closure,
//! (interventional) essential graphs, covered edges and a brute-force MEC
//! enumerator that serves as a correctness oracle.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Dag, InterventionSet, PGraph};

/// Guard on the number of undirected edges [`enumerate_mec`] will branch on.
pub const MEC_EDGE_GUARD: usize = 25;

pub fn skeleton(d: &Dag) -> PGraph {
    d.graph().skeleton()
}

/// Colliders `u -> v <- w` with `u`, `w` non-adjacent, reported as
/// `(min(u, w), v, max(u, w))`.
pub fn v_structures(d: &Dag) -> BTreeSet<(usize, usize, usize)> {
    colliders(d.graph())
}

fn colliders(g: &PGraph) -> BTreeSet<(usize, usize, usize)> {
    let mut out = BTreeSet::new();
    for v in 0..g.n() {
        let pa: Vec<usize> = g.parents(v).iter().copied().collect();
        for (i, &a) in pa.iter().enumerate() {
            for &b in &pa[i + 1..] {
                if !g.is_adjacent(a, b) {
                    out.insert((a, v, b));
                }
            }
        }
    }
    out
}

/// The four Meek orientation rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeekRule {
    R1,
    R2,
    R3,
    R4,
}

impl MeekRule {
    pub const ALL: [MeekRule; 4] = [MeekRule::R1, MeekRule::R2, MeekRule::R3, MeekRule::R4];

    /// Whether the rule orients the undirected edge `a - b` as `a -> b`.
    pub fn fires(self, g: &PGraph, a: usize, b: usize) -> bool {
        if !g.has_undirected(a, b) {
            return false;
        }
        match self {
            // c -> a, c !~ b
            MeekRule::R1 => g.parents(a).iter().any(|&c| !g.is_adjacent(c, b)),
            // a -> c -> b
            MeekRule::R2 => g.children(a).iter().any(|&c| g.has_arc(c, b)),
            // d - a - c, d -> b <- c, c !~ d
            MeekRule::R3 => {
                let pa: Vec<usize> = g.parents(b).iter().copied().filter(|&x| g.has_undirected(x, a)).collect();
                pa.iter().enumerate().any(|(i, &c)| pa[i + 1..].iter().any(|&d| !g.is_adjacent(c, d)))
            }
            // d ~ a ~ c, d -> c -> b, b !~ d
            MeekRule::R4 => g.parents(b).iter().any(|&c| {
                g.is_adjacent(a, c)
                    && g.parents(c).iter().any(|&d| d != a && g.is_adjacent(a, d) && !g.is_adjacent(b, d))
            }),
        }
    }
}

/// Closes `g` under the Meek rules. Input arcs and the skeleton are kept.
pub fn meek_closure(g: &PGraph) -> PGraph {
    let mut out = g.clone();
    let seeds = out.arcs();
    close_from(&mut out, seeds);
    out
}

/// Reference fixpoint that sweeps all undirected edges, applying the rules
/// in the given order, until nothing changes.
pub fn meek_closure_with_schedule(g: &PGraph, schedule: &[MeekRule]) -> PGraph {
    let mut out = g.clone();
    loop {
        let mut changed = false;
        for &rule in schedule {
            for (u, v) in out.undirected_edges() {
                for (a, b) in [(u, v), (v, u)] {
                    if rule.fires(&out, a, b) {
                        out.orient(a, b);
                        changed = true;
                        break;
                    }
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

/// Work-queue Meek closure for a graph that was closed before `seeds` were
/// added. Each newly oriented arc triggers local checks of the rule patterns
/// it can complete. Returns the arcs oriented by the closure, in order.
pub(crate) fn close_from(g: &mut PGraph, seeds: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut queue: std::collections::VecDeque<(usize, usize)> = seeds.into();
    let mut added = Vec::new();
    let mut orient = |g: &mut PGraph, q: &mut std::collections::VecDeque<(usize, usize)>, a: usize, b: usize| {
        if g.orient(a, b) {
            q.push_back((a, b));
            added.push((a, b));
        }
    };
    while let Some((x, y)) = queue.pop_front() {
        // R1 with c = x, a = y.
        let und_y: Vec<usize> = g.undirected_neighbors(y).iter().copied().collect();
        for &b in &und_y {
            if !g.is_adjacent(x, b) {
                orient(g, &mut queue, y, b);
            }
        }
        // R2 with x -> y as the first leg: x -> y -> b, x - b.
        let und_x: Vec<usize> = g.undirected_neighbors(x).iter().copied().collect();
        for &b in &und_x {
            if g.has_arc(y, b) {
                orient(g, &mut queue, x, b);
            }
        }
        // R2 with x -> y as the second leg: a -> x -> y, a - y.
        let und_y: Vec<usize> = g.undirected_neighbors(y).iter().copied().collect();
        for &a in &und_y {
            if g.has_arc(a, x) {
                orient(g, &mut queue, a, y);
            }
        }
        // R3 with c = x, b = y.
        let und_y: Vec<usize> = g.undirected_neighbors(y).iter().copied().collect();
        for &a in &und_y {
            if g.has_undirected(a, x)
                && g.parents(y).iter().any(|&d| d != x && g.has_undirected(d, a) && !g.is_adjacent(d, x))
            {
                orient(g, &mut queue, a, y);
            }
        }
        // R4 with d = x, c = y: a - b for children b of y.
        let ch_y: Vec<usize> = g.children(y).iter().copied().collect();
        for &b in &ch_y {
            if b == x || g.is_adjacent(b, x) {
                continue;
            }
            let und_b: Vec<usize> = g.undirected_neighbors(b).iter().copied().collect();
            for &a in &und_b {
                if g.is_adjacent(a, x) && g.is_adjacent(a, y) {
                    orient(g, &mut queue, a, b);
                }
            }
        }
        // R4 with c = x, b = y: d ranges over parents of x.
        let pa_x: Vec<usize> = g.parents(x).iter().copied().collect();
        for &d in &pa_x {
            if d == y || g.is_adjacent(d, y) {
                continue;
            }
            let und_y: Vec<usize> = g.undirected_neighbors(y).iter().copied().collect();
            for &a in &und_y {
                if g.is_adjacent(a, d) && g.is_adjacent(a, x) {
                    orient(g, &mut queue, a, y);
                }
            }
        }
    }
    added
}

/// Skeleton with v-structures oriented, closed under the Meek rules.
pub fn essential_graph(d: &Dag) -> PGraph {
    let mut g = d.graph().skeleton();
    let mut seeds = Vec::new();
    for (a, b, c) in v_structures(d) {
        for p in [a, c] {
            if g.orient(p, b) {
                seeds.push((p, b));
            }
        }
    }
    close_from(&mut g, seeds);
    g
}

/// Orients, per `d`, every edge of `g` cut by `set`. Returns the new arcs.
pub(crate) fn orient_cut_edges(g: &mut PGraph, d: &Dag, set: &[usize]) -> Vec<(usize, usize)> {
    let mut inside = BTreeSet::new();
    inside.extend(set.iter().copied());
    let mut new = Vec::new();
    for &s in set {
        let und: Vec<usize> = g.undirected_neighbors(s).iter().copied().collect();
        for u in und {
            if inside.contains(&u) {
                continue;
            }
            let (a, b) = if d.has_arc(s, u) { (s, u) } else { (u, s) };
            if g.orient(a, b) {
                new.push((a, b));
            }
        }
    }
    new
}

/// The interventional essential graph of `d` under `interventions`: cut
/// edges are oriented per `d` on top of the essential graph, then closed.
pub fn interventional_essential_graph(d: &Dag, interventions: &InterventionSet) -> PGraph {
    let mut g = essential_graph(d);
    let mut seeds = Vec::new();
    for s in interventions.sets() {
        seeds.extend(orient_cut_edges(&mut g, d, s));
    }
    close_from(&mut g, seeds);
    g
}

/// Arcs `u -> v` with `Pa(u) = Pa(v) \ {u}`.
pub fn covered_edges(d: &Dag) -> Vec<(usize, usize)> {
    d.arcs()
        .into_iter()
        .filter(|&(u, v)| {
            let pu = d.parents(u);
            let pv = d.parents(v);
            pv.len() == pu.len() + 1 && pu.iter().all(|p| pv.contains(p))
        })
        .collect()
}

/// All DAGs that share the skeleton of `g`, contain its arcs, and have
/// exactly the v-structures already present in `g`.
pub fn enumerate_mec(g: &PGraph) -> Result<Vec<Dag>> {
    let edges = g.undirected_edges();
    if edges.len() > MEC_EDGE_GUARD {
        return Err(Error::Resource(format!(
            "{} undirected edges exceed the enumeration guard of {MEC_EDGE_GUARD}",
            edges.len()
        )));
    }
    let allowed = colliders(g);
    let mut base = g.clone();
    let mut out = Vec::new();
    branch(&mut base, &edges, 0, &allowed, &mut out);
    Ok(out)
}

fn reaches(g: &PGraph, from: usize, to: usize) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for &y in g.children(x) {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    false
}

fn branch(
    g: &mut PGraph,
    edges: &[(usize, usize)],
    idx: usize,
    allowed: &BTreeSet<(usize, usize, usize)>,
    out: &mut Vec<Dag>,
) {
    if idx == edges.len() {
        if colliders(g) == *allowed {
            out.push(Dag::from_pgraph(g.clone()).expect("acyclic by construction"));
        }
        return;
    }
    let (u, v) = edges[idx];
    for (a, b) in [(u, v), (v, u)] {
        if reaches(g, b, a) {
            continue;
        }
        g.orient(a, b);
        let fresh_collider =
            g.parents(b).iter().any(|&p| p != a && !g.is_adjacent(p, a) && !allowed.contains(&(p.min(a), b, p.max(a))));
        if !fresh_collider {
            branch(g, edges, idx + 1, allowed, out);
        }
        unorient(g, a, b);
    }
}

fn unorient(g: &mut PGraph, a: usize, b: usize) {
    // Rebuilds the undirected edge; PGraph only exposes orientation forward.
    let mut arcs = g.arcs();
    arcs.retain(|&e| e != (a, b));
    let mut und = g.undirected_edges();
    und.push((a.min(b), a.max(b)));
    *g = PGraph::from_edges(g.n(), &und, &arcs).expect("same edge set");
}
