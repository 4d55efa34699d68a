//! Adaptive search algorithms and baselines. Everything here talks to the
//! oracle only through [`Simulator`]'s view, intervention and cost surface.

use std::collections::BTreeSet;

use crate::chordal::{half_clique_separator, max_weight_clique, splitting_clique};
use crate::error::{input, Error, Result};
use crate::graph::{chain_component_of, chain_component_sets, induced_subgraph, is_clique, InterventionSet, PGraph};
use crate::oracle::Simulator;
use crate::rng::Rng;

/// Interventions issued by one run, and the number of outer phases
/// (zero for algorithms without a phase structure).
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub interventions: InterventionSet,
    pub phases: usize,
}

struct Run<'a> {
    sim: &'a mut Simulator,
    out: InterventionSet,
}

impl<'a> Run<'a> {
    fn new(sim: &'a mut Simulator) -> Self {
        let k = sim.k();
        Run { sim, out: InterventionSet::new(k).expect("simulator k >= 1") }
    }

    fn act(&mut self, set: &[usize]) -> Result<()> {
        self.sim.intervene(set)?;
        self.out.push(set.to_vec())
    }

    fn finish(self, phases: usize) -> SearchReport {
        SearchReport { interventions: self.out, phases }
    }
}

/// Connected components of the undirected part of `g` restricted to `vs`,
/// each sorted, ordered by smallest member.
fn undirected_components(g: &PGraph, vs: &[usize]) -> Vec<Vec<usize>> {
    let inside: BTreeSet<usize> = vs.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut comps = Vec::new();
    for &s in &inside {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.undirected_neighbors(u) {
                if inside.contains(&v) && seen.insert(v) {
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

/// Chain components of the current view with at least two vertices.
fn nontrivial_components(view: &PGraph) -> Vec<Vec<usize>> {
    chain_component_sets(view).into_iter().filter(|c| c.len() >= 2).collect()
}

/// 1/2-clique separator of the chain component `h`, in original ids.
fn component_separator(view: &PGraph, h: &[usize]) -> Result<Vec<usize>> {
    let (sub, map) = induced_subgraph(&view.undirected_part(), h)?;
    let sep = half_clique_separator(&sub).map_err(|e| match e {
        Error::NotChordal => Error::Input("chain component is not chordal; the DAG is not moral".into()),
        other => other,
    })?;
    let mut k: Vec<usize> = sep.clique.iter().map(|&v| map[v]).collect();
    k.sort_unstable();
    Ok(k)
}

/// Separator of the skeleton induced on `vs` (possibly disconnected).
fn skeleton_separator(view: &PGraph, vs: &[usize]) -> Vec<usize> {
    let (sub, map) = induced_subgraph(view, vs).expect("ids in range");
    let mut k: Vec<usize> = splitting_clique(&sub.skeleton()).into_iter().map(|v| map[v]).collect();
    k.sort_unstable();
    k
}

/// Best clique score inside the undirected part of `view` induced on `vs`.
fn best_clique(view: &PGraph, vs: &[usize], score: impl Fn(usize) -> f64) -> f64 {
    if vs.is_empty() {
        return 0.0;
    }
    let (sub, map) = induced_subgraph(&view.undirected_part(), vs).expect("ids in range");
    let scores: Vec<f64> = map.iter().map(|&v| score(v)).collect();
    max_weight_clique(&sub, &scores).expect("chordal with nonnegative scores").1
}

/// Costliest vertex of `vs`, ties to the lowest id.
fn costliest(w: &[f64], vs: &[usize]) -> usize {
    let mut best = vs[0];
    for &v in &vs[1..] {
        if w[v] > w[best] {
            best = v;
        }
    }
    best
}

/// Atomic weighted search: per phase and chain component, intervene on the
/// separator minus its costliest vertex, then resolve what dangles off it.
pub fn weighted_search(sim: &mut Simulator) -> Result<SearchReport> {
    separator_phases(sim, Flavor::Atomic)
}

/// The generalized-cost search for interventions of size at most `sim.k()`
/// under cost `alpha * w(I) + beta * |I|`.
pub fn generalized_search(sim: &mut Simulator) -> Result<SearchReport> {
    let k = sim.k();
    separator_phases(sim, Flavor::Generalized(k))
}

#[derive(Debug, Clone, Copy)]
enum Flavor {
    Atomic,
    Generalized(usize),
}

fn separator_phases(sim: &mut Simulator, flavor: Flavor) -> Result<SearchReport> {
    let mut run = Run::new(sim);
    let mut phases = 0;
    while !run.sim.is_fully_oriented() {
        phases += 1;
        for h in nontrivial_components(run.sim.view()) {
            let kh = component_separator(run.sim.view(), &h)?;
            let vh = costliest(run.sim.weights(), &kh);
            let rest: Vec<usize> = kh.iter().copied().filter(|&u| u != vh).collect();
            match flavor {
                Flavor::Atomic => {
                    for &u in &rest {
                        run.act(&[u])?;
                    }
                }
                Flavor::Generalized(k) => {
                    if !rest.is_empty() {
                        for s in clique_intervention(&rest, k)? {
                            run.act(&s)?;
                        }
                    }
                }
            }
            let z = chain_component_of(run.sim.view(), vh);
            if z.len() > 1 {
                dangling(&mut run, &z, vh, flavor)?;
            }
        }
    }
    Ok(run.finish(phases))
}

/// Orients the edges of `v` inside the chain component `h` by intervening
/// either on `v` or on the source of each component dangling off `v`.
pub fn resolve_dangling(sim: &mut Simulator, h: &[usize], v: usize) -> Result<InterventionSet> {
    let mut run = Run::new(sim);
    check_component(run.sim.view(), h, v)?;
    dangling(&mut run, h, v, Flavor::Atomic)?;
    Ok(run.out)
}

/// Generalized-cost counterpart of [`resolve_dangling`] with interventions
/// of size at most `sim.k()`.
pub fn resolve_dangling_generalized(sim: &mut Simulator, h: &[usize], v: usize) -> Result<InterventionSet> {
    let k = sim.k();
    let mut run = Run::new(sim);
    check_component(run.sim.view(), h, v)?;
    dangling(&mut run, h, v, Flavor::Generalized(k))?;
    Ok(run.out)
}

fn check_component(view: &PGraph, h: &[usize], v: usize) -> Result<()> {
    if !h.contains(&v) {
        return input(format!("vertex {v} is not in the given component"));
    }
    let mut actual = chain_component_of(view, v);
    actual.sort_unstable();
    let mut given = h.to_vec();
    given.sort_unstable();
    if actual != given {
        return input("the given vertex set is not a chain component of the current view");
    }
    Ok(())
}

fn dangling(run: &mut Run, h: &[usize], v: usize, flavor: Flavor) -> Result<()> {
    let (alpha, beta) = match flavor {
        Flavor::Atomic => (1.0, 0.0),
        Flavor::Generalized(_) => (run.sim.alpha(), run.sim.beta()),
    };
    let w = run.sim.weights().to_vec();
    let score = |u: usize| alpha * w[u] + beta;

    let others: Vec<usize> = h.iter().copied().filter(|&u| u != v).collect();
    let parts = undirected_components(run.sim.view(), &others);
    let near = |view: &PGraph, part: &[usize]| -> Vec<usize> {
        part.iter().copied().filter(|&u| view.has_undirected(u, v)).collect()
    };

    let gamma: f64 = parts.iter().map(|p| best_clique(run.sim.view(), &near(run.sim.view(), p), score)).sum();
    if score(v) <= gamma {
        return run.act(&[v]);
    }

    for part in &parts {
        // Components already cut off from v by earlier interventions need
        // nothing further.
        let mut vp = near(run.sim.view(), part);
        if vp.is_empty() {
            continue;
        }
        let mut source_set: Option<Vec<usize>> = None;
        loop {
            let done = is_clique(run.sim.view(), &vp)
                && match flavor {
                    Flavor::Atomic => true,
                    Flavor::Generalized(k) => vp.len() <= k,
                };
            if done {
                break;
            }
            let sep = skeleton_separator(run.sim.view(), &vp);
            let anchor = match flavor {
                Flavor::Atomic => {
                    for &u in &sep {
                        run.act(&[u])?;
                    }
                    sep
                }
                Flavor::Generalized(k) => {
                    let chunks: Vec<Vec<usize>> = sep.chunks(k).map(<[usize]>::to_vec).collect();
                    for s in &chunks {
                        run.act(s)?;
                    }
                    let i = s_source_locate(run.sim.view(), &chunks)?;
                    chunks[i].clone()
                }
            };
            match incoming_chain_component(run.sim.view(), &vp, &anchor)? {
                Some(q) => {
                    let q: BTreeSet<usize> = q.into_iter().collect();
                    vp.retain(|u| q.contains(u));
                    source_set = None;
                }
                None => match flavor {
                    Flavor::Atomic => {
                        vp.clear();
                        break;
                    }
                    Flavor::Generalized(_) => {
                        vp = anchor.clone();
                        source_set = Some(anchor);
                    }
                },
            }
        }
        match flavor {
            Flavor::Atomic => {
                for &u in &vp {
                    run.act(&[u])?;
                }
            }
            Flavor::Generalized(k) => {
                // A lone source set that was just intervened gains nothing
                // from being intervened again.
                if vp.len() == 1 && source_set.as_deref() == Some(&vp[..]) {
                    continue;
                }
                if !vp.is_empty() {
                    for s in clique_intervention(&vp, k)? {
                        run.act(&s)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// After every vertex of `anchor` was intervened, finds the component of
/// the undirected view restricted to `scope \ anchor` that touches `anchor`
/// only through arcs pointing into it. `None` means the source of `scope`
/// lies in `anchor`.
pub fn incoming_chain_component(view: &PGraph, scope: &[usize], anchor: &[usize]) -> Result<Option<Vec<usize>>> {
    let a: BTreeSet<usize> = anchor.iter().copied().collect();
    for &x in anchor {
        if view.undirected_neighbors(x).iter().any(|u| !a.contains(u)) {
            return input(format!("vertex {x} of the clique still has unoriented edges leaving it"));
        }
    }
    let rest: Vec<usize> = scope.iter().copied().filter(|u| !a.contains(u)).collect();
    let mut found: Option<Vec<usize>> = None;
    for comp in undirected_components(view, &rest) {
        let mut touches = false;
        let mut only_incoming = true;
        for &u in &comp {
            for &x in anchor {
                if view.has_arc(u, x) {
                    touches = true;
                } else if view.has_arc(x, u) {
                    only_incoming = false;
                }
            }
        }
        if touches && only_incoming {
            if found.is_some() {
                return Err(Error::Invariant("more than one chain component points into the clique".into()));
            }
            found = Some(comp);
        }
    }
    Ok(found)
}

/// Index of the unique part containing a vertex with no incoming arc from
/// the other parts.
pub fn s_source_locate(view: &PGraph, parts: &[Vec<usize>]) -> Result<usize> {
    let owner = |x: usize| parts.iter().position(|p| p.contains(&x));
    let mut hits = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for &u in part {
            for &x in view.undirected_neighbors(u) {
                if owner(x).is_some_and(|j| j != i) {
                    return input("edges between parts must be oriented");
                }
            }
        }
        let free = part.iter().any(|&u| view.parents(u).iter().all(|&p| owner(p).is_none_or(|j| j == i)));
        if free {
            hits.push(i);
        }
    }
    match hits.as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::Invariant(format!("expected one source part, found {}", hits.len()))),
    }
}

/// Bounded-size interventions that separate every pair of `c`, each of
/// size at most `k`. For `k = 1` these are the singletons.
pub fn clique_intervention(c: &[usize], k: usize) -> Result<Vec<Vec<usize>>> {
    if k == 0 {
        return input("k must be at least 1");
    }
    if c.is_empty() {
        return input("empty clique");
    }
    let n = c.len();
    if k == 1 || n == 1 {
        return Ok(c.iter().map(|&v| vec![v]).collect());
    }
    let kk = k.min(n.div_ceil(2));
    let a = n.div_ceil(kk);
    let mut ell = 0;
    let mut reach = 1usize;
    while reach < n {
        reach = reach.saturating_mul(a);
        ell += 1;
    }
    let mut out = Vec::new();
    for x in 0..ell {
        let mut sets = vec![Vec::new(); a];
        for (i, &v) in c.iter().enumerate() {
            sets[label_digit(i, x, a)].push(v);
        }
        out.extend(sets.into_iter().filter(|s| !s.is_empty()));
    }
    Ok(out)
}

/// Digit `x` of the label of index `i`: base-`a` digits shifted by the
/// lowest digit, so every digit value occurs at most `ceil(n / a)` times.
fn label_digit(i: usize, x: usize, a: usize) -> usize {
    let low = i % a;
    if x == 0 {
        return low;
    }
    let shifted = (0..x).fold(i, |acc, _| acc / a);
    (shifted % a + low) % a
}

/// Intervenes on vertices in ascending weight order (ties to lowest id)
/// until the view is fully oriented.
pub fn naive_search(sim: &mut Simulator) -> Result<SearchReport> {
    let mut run = Run::new(sim);
    let w = run.sim.weights().to_vec();
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&a, &b| w[a].total_cmp(&w[b]).then(a.cmp(&b)));
    for v in order {
        if run.sim.is_fully_oriented() {
            break;
        }
        run.act(&[v])?;
    }
    Ok(run.finish(0))
}

/// Budget-doubling combination of a deterministic atomic `primary` with
/// [`naive_search`]. Requires a fresh simulator. The primary's intervention
/// sequence is obtained by running it on a private copy of the oracle; that
/// copy reveals nothing the shared run could not reveal on its own.
pub fn blackbox_combine<F>(sim: &mut Simulator, primary: F) -> Result<SearchReport>
where
    F: FnOnce(&mut Simulator) -> Result<SearchReport>,
{
    if sim.num_interventions() > 0 {
        return input("blackbox combination needs a fresh simulator");
    }
    let mut private = sim.clone();
    let plan_report = primary(&mut private)?;
    if !plan_report.interventions.is_atomic() {
        return input("primary algorithm must be atomic");
    }
    let plan: Vec<usize> = plan_report.interventions.sets().iter().map(|s| s[0]).collect();

    let n = sim.n();
    let cost: Vec<f64> = (0..n).map(|v| sim.vertex_cost(v)).collect();
    let mut naive: Vec<usize> = (0..n).collect();
    naive.sort_by(|&a, &b| cost[a].total_cmp(&cost[b]).then(a.cmp(&b)));

    let mut run = Run::new(sim);
    let mut done = vec![false; n];
    for v in 0..n {
        if cost[v] == 0.0 && !run.sim.is_fully_oriented() {
            run.act(&[v])?;
            done[v] = true;
        }
    }
    let Some(mut budget) = cost.iter().copied().filter(|&c| c > 0.0).reduce(f64::min) else {
        return Ok(run.finish(0));
    };

    struct Arm {
        seq: Vec<usize>,
        pos: usize,
        spent: f64,
    }
    let mut arms = [Arm { seq: plan, pos: 0, spent: 0.0 }, Arm { seq: naive, pos: 0, spent: 0.0 }];
    while !run.sim.is_fully_oriented() {
        for arm in arms.iter_mut() {
            while arm.pos < arm.seq.len() && !run.sim.is_fully_oriented() {
                let v = arm.seq[arm.pos];
                if arm.spent + cost[v] > budget {
                    break;
                }
                arm.spent += cost[v];
                arm.pos += 1;
                if !done[v] {
                    run.act(&[v])?;
                    done[v] = true;
                }
            }
        }
        if run.sim.is_fully_oriented() {
            break;
        }
        let next = arms
            .iter()
            .filter(|a| a.pos < a.seq.len())
            .map(|a| a.spent + cost[a.seq[a.pos]])
            .reduce(f64::min)
            .ok_or_else(|| Error::Invariant("both arms exhausted without full orientation".into()))?;
        budget = (2.0 * budget).max(next);
    }
    Ok(run.finish(0))
}

/// Repeatedly intervenes on a uniformly random vertex incident to an
/// unoriented edge.
pub fn random_baseline(sim: &mut Simulator, rng: &mut Rng) -> Result<SearchReport> {
    let mut run = Run::new(sim);
    loop {
        let view = run.sim.view();
        let live: Vec<usize> = (0..view.n()).filter(|&v| !view.undirected_neighbors(v).is_empty()).collect();
        if live.is_empty() {
            break;
        }
        let v = live[rng.below(live.len() as u64) as usize];
        run.act(&[v])?;
    }
    Ok(run.finish(0))
}

/// Intervenes on the entire 1/2-clique separator of every chain component
/// each phase, through [`clique_intervention`] with the simulator's `k`.
pub fn separator_baseline(sim: &mut Simulator) -> Result<SearchReport> {
    let k = sim.k();
    let mut run = Run::new(sim);
    let mut phases = 0;
    while !run.sim.is_fully_oriented() {
        phases += 1;
        for h in nontrivial_components(run.sim.view()) {
            let kh = component_separator(run.sim.view(), &h)?;
            for s in clique_intervention(&kh, k)? {
                run.act(&s)?;
            }
        }
    }
    Ok(run.finish(phases))
}
