//! Synthetic instances: random connected moral DAGs, weight samplers and
//! the adversarial star and path fixtures.

use std::collections::BTreeSet;

use crate::chordal::perfect_elimination_order;
use crate::error::{input, Result};
use crate::graph::{chain_component_sets, Dag, WeightedInstance};
use crate::rng::Rng;

/// Random DAG over a random order `sigma`: each vertex after the first takes
/// `max(1, Binomial(#earlier, rho))` uniformly drawn earlier parents. The
/// skeleton is then chordalized by elimination along reverse `sigma`, fill
/// edges directed by `sigma`.
pub fn gen_er_moral(n: usize, rho: f64, seed: u64) -> Result<Dag> {
    if n == 0 {
        return input("n must be at least 1");
    }
    if !(0.0..=1.0).contains(&rho) {
        return input(format!("density {rho} outside [0, 1]"));
    }
    let mut rng = Rng::new(seed);
    let mut sigma: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut sigma);

    let mut adj = vec![BTreeSet::new(); n];
    for i in 1..n {
        let draws = (0..i).filter(|_| rng.bernoulli(rho)).count();
        let indeg = draws.max(1);
        for p in rng.sample(&sigma[..i], indeg) {
            adj[p].insert(sigma[i]);
            adj[sigma[i]].insert(p);
        }
    }
    let dag = eliminate(n, adj, &sigma);
    check_generated(&dag)?;
    Ok(dag)
}

/// Complete `d`-ary tree plus `Uniform(e_min, e_max)` extra edges between
/// non-adjacent pairs, triangulated along a DFS topological order.
pub fn gen_tree_like(n: usize, d: usize, e_min: usize, e_max: usize, seed: u64) -> Result<Dag> {
    if n == 0 || d < 2 || e_min > e_max {
        return input(format!("bad tree parameters n = {n}, d = {d}, e_min = {e_min}, e_max = {e_max}"));
    }
    let mut rng = Rng::new(seed);
    let mut out = vec![BTreeSet::new(); n];
    for v in 1..n {
        out[(v - 1) / d].insert(v);
    }
    let extra = rng.range_inclusive(e_min, e_max);
    let free = n * (n - 1) / 2 - (n - 1);
    let mut added = 0;
    while added < extra.min(free) {
        let u = rng.below(n as u64) as usize;
        let v = rng.below(n as u64) as usize;
        let (u, v) = (u.min(v), u.max(v));
        if u != v && !out[u].contains(&v) {
            out[u].insert(v);
            added += 1;
        }
    }
    // Arcs run from lower to higher id, so a DFS postorder from the roots
    // reversed is a topological order.
    let order = dfs_topological(&out);
    let mut adj = vec![BTreeSet::new(); n];
    for (u, vs) in out.iter().enumerate() {
        for &v in vs {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let dag = eliminate(n, adj, &order);
    check_generated(&dag)?;
    Ok(dag)
}

fn dfs_topological(out: &[BTreeSet<usize>]) -> Vec<usize> {
    let n = out.len();
    let mut indeg = vec![0usize; n];
    for vs in out {
        for &v in vs {
            indeg[v] += 1;
        }
    }
    let mut seen = vec![false; n];
    let mut post = Vec::with_capacity(n);
    for root in (0..n).filter(|&v| indeg[v] == 0) {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, out[root].iter().rev().copied().collect())];
        while let Some((u, pending)) = stack.last_mut() {
            match pending.pop() {
                Some(v) if !seen[v] => {
                    seen[v] = true;
                    let next = out[v].iter().rev().copied().collect();
                    stack.push((v, next));
                }
                Some(_) => {}
                None => {
                    post.push(*u);
                    stack.pop();
                }
            }
        }
    }
    post.reverse();
    post
}

/// Eliminates vertices in reverse `order`, joining the not yet eliminated
/// neighbours of each, and directs every edge along `order`.
fn eliminate(n: usize, mut adj: Vec<BTreeSet<usize>>, order: &[usize]) -> Dag {
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut gone = vec![false; n];
    for &v in order.iter().rev() {
        let rest: Vec<usize> = adj[v].iter().copied().filter(|&u| !gone[u]).collect();
        for (i, &a) in rest.iter().enumerate() {
            for &b in &rest[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        gone[v] = true;
    }
    let mut arcs = Vec::new();
    for (u, vs) in adj.iter().enumerate() {
        for &v in vs {
            if pos[u] < pos[v] {
                arcs.push((u, v));
            }
        }
    }
    Dag::from_arcs(n, &arcs).expect("arcs follow a total order")
}

fn check_generated(d: &Dag) -> Result<()> {
    let skel = d.graph().skeleton();
    if !d.is_moral() {
        return Err(crate::Error::Invariant("generated DAG has a v-structure".into()));
    }
    if perfect_elimination_order(&skel)?.is_none() {
        return Err(crate::Error::Invariant("generated skeleton is not chordal".into()));
    }
    if chain_component_sets(&skel).len() != 1 {
        return Err(crate::Error::Invariant("generated skeleton is disconnected".into()));
    }
    Ok(())
}

/// I.i.d. exponential weights with rate `n^2`, by inverse CDF.
pub fn weights_type1(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = Rng::new(seed);
    let rate = (n * n) as f64;
    (0..n).map(|_| -(1.0 - rng.next_f64()).ln() / rate).collect()
}

/// `ceil(p * n)` uniformly chosen vertices weigh `n^2`, the rest 1.
pub fn weights_type2(n: usize, p: f64, seed: u64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&p) {
        return input(format!("fraction {p} outside [0, 1]"));
    }
    let mut rng = Rng::new(seed);
    let heavy = ((p * n as f64).ceil() as usize).min(n);
    let mut w = vec![1.0; n];
    for v in rng.sample(&(0..n).collect::<Vec<_>>(), heavy) {
        w[v] = (n * n) as f64;
    }
    Ok(w)
}

/// Star with center 0 and leaves `1..n`. Leaf `n - 1` is the root; arcs go
/// `n-1 -> 0 -> other leaves`. Leaves weigh 1, the center `heavy`.
pub fn star_instance(n: usize, heavy: f64) -> Result<WeightedInstance> {
    if n < 3 {
        return input("star needs at least 3 vertices");
    }
    let mut arcs = vec![(n - 1, 0)];
    arcs.extend((1..n - 1).map(|v| (0, v)));
    let mut w = vec![1.0; n];
    w[0] = heavy;
    WeightedInstance::new(Dag::from_arcs(n, &arcs)?, w)
}

/// Unit-weight directed path `0 -> 1 -> ... -> n-1`.
pub fn path_instance(n: usize) -> Result<WeightedInstance> {
    if n < 2 {
        return input("path needs at least 2 vertices");
    }
    let arcs: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    Ok(WeightedInstance::unit(Dag::from_arcs(n, &arcs)?))
}
