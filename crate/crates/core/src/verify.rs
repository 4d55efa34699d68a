//! Verification numbers, the worst-case benchmark over a Markov equivalence
//! class, and lower bounds on the optimal search cost.

use std::collections::BTreeSet;

use crate::chordal::{max_weight_clique, maximal_cliques};
use crate::error::{Error, Result};
use crate::graph::{chain_components, induced_subgraph, Dag, InterventionSet, PGraph, WeightedInstance};
use crate::mec::{covered_edges, enumerate_mec, essential_graph, interventional_essential_graph};

/// Whether `interventions` fully orients `d` from its essential graph.
pub fn is_verifying_set(d: &Dag, interventions: &InterventionSet) -> bool {
    interventional_essential_graph(d, interventions).is_fully_oriented()
}

/// Whether every covered edge of `d` has exactly one endpoint in some set
/// of `interventions`.
pub fn separates_covered_edges(d: &Dag, interventions: &InterventionSet) -> bool {
    covered_edges(d)
        .iter()
        .all(|(u, v)| interventions.sets().iter().any(|s| s.binary_search(u).is_ok() != s.binary_search(v).is_ok()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomicVerification {
    /// Minimum number of atomic interventions.
    pub nu: usize,
    /// Minimum total weight of an atomic verifying set.
    pub nu_weighted: f64,
    pub size_witness: Vec<usize>,
    pub weight_witness: Vec<usize>,
}

/// Exact minimum vertex covers of the covered edges, by unit and by weight.
pub fn atomic_verification_numbers(inst: &WeightedInstance) -> AtomicVerification {
    let edges = covered_edges(inst.dag());
    let (nu, size_witness) = min_vertex_cover(&edges, &vec![1.0; inst.n()]);
    let (nu_weighted, weight_witness) = min_vertex_cover(&edges, inst.weights());
    AtomicVerification { nu: nu.round() as usize, nu_weighted, size_witness, weight_witness }
}

/// Exact minimum-weight vertex cover by branching on a maximum-degree
/// vertex (take it, or take all its neighbours), solving connected
/// components independently. Ties go to taking the vertex.
pub fn min_vertex_cover(edges: &[(usize, usize)], w: &[f64]) -> (f64, Vec<usize>) {
    let (cost, mut cover) = mvc(edges.to_vec(), w);
    cover.sort_unstable();
    (cost, cover)
}

fn mvc(edges: Vec<(usize, usize)>, w: &[f64]) -> (f64, Vec<usize>) {
    if edges.is_empty() {
        return (0.0, Vec::new());
    }
    let comps = edge_components(&edges);
    if comps.len() > 1 {
        let mut total = 0.0;
        let mut cover = Vec::new();
        for c in comps {
            let (x, mut s) = mvc(c, w);
            total += x;
            cover.append(&mut s);
        }
        return (total, cover);
    }
    let mut nbrs: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
    for &(a, b) in &edges {
        nbrs.entry(a).or_default().insert(b);
        nbrs.entry(b).or_default().insert(a);
    }
    let (&u, nu) = nbrs.iter().max_by(|(a, x), (b, y)| x.len().cmp(&y.len()).then(b.cmp(a))).expect("nonempty");
    if nu.len() == 1 {
        let (a, b) = edges[0];
        let pick = if w[b] < w[a] || (w[b] == w[a] && b < a) { b } else { a };
        return (w[pick], vec![pick]);
    }
    let without = |gone: &BTreeSet<usize>| -> Vec<(usize, usize)> {
        edges.iter().copied().filter(|(a, b)| !gone.contains(a) && !gone.contains(b)).collect()
    };
    let (ca, mut sa) = mvc(without(&BTreeSet::from([u])), w);
    let take_u = ca + w[u];
    let nset = nu.clone();
    let (cb, mut sb) = mvc(without(&nset), w);
    let take_n = cb + nset.iter().map(|&v| w[v]).sum::<f64>();
    if take_u <= take_n {
        sa.push(u);
        (take_u, sa)
    } else {
        sb.extend(nset);
        (take_n, sb)
    }
}

fn edge_components(edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let idx = |v: usize| verts.binary_search(&v).expect("endpoint");
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, idx(a)), find(&mut parent, idx(b)));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
    for &(a, b) in edges {
        let r = find(&mut parent, idx(a));
        groups.entry(r).or_default().push((a, b));
    }
    groups.into_values().collect()
}

/// Worst case over the equivalence class of the atomic verification
/// numbers: `(max nu_1, max weighted nu_1)`.
pub fn benchmark_max(inst: &WeightedInstance) -> Result<(usize, f64)> {
    let members = enumerate_mec(&essential_graph(inst.dag()))?;
    let mut best = (0, 0.0f64);
    for d in members {
        let m = WeightedInstance::new(d, inst.weights().to_vec())?;
        let v = atomic_verification_numbers(&m);
        best.0 = best.0.max(v.nu);
        best.1 = best.1.max(v.nu_weighted);
    }
    Ok(best)
}

/// Lower bounds for the size-`k` benchmark from the atomic one.
pub fn relate_k_bounds(nu1_max: usize, nu1_weighted_max: f64, k: usize) -> (usize, f64) {
    (nu1_max.div_ceil(k.max(1)), nu1_weighted_max)
}

/// The six per-component lower-bound terms.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaRecord {
    pub component: Vec<usize>,
    /// `zeta[i]` holds the term with index `i + 1`.
    pub zeta: [f64; 6],
}

/// Lower-bound terms for every chain component with at least two vertices
/// of the interventional essential graph of `d` under `interventions`.
pub fn zeta_terms(
    d: &Dag,
    w: &[f64],
    interventions: &InterventionSet,
    alpha: f64,
    beta: f64,
    k: usize,
) -> Result<Vec<ZetaRecord>> {
    if w.len() != d.n() {
        return Err(Error::Input("weight vector length differs from n".into()));
    }
    let g = interventional_essential_graph(d, interventions);
    let mut out = Vec::new();
    for (vs, h) in chain_components(&g) {
        if vs.len() < 2 {
            continue;
        }
        let hw: Vec<f64> = vs.iter().map(|&v| w[v]).collect();
        let zeta = component_zetas(&h, &hw, alpha, beta, k)?;
        out.push(ZetaRecord { component: vs, zeta });
    }
    Ok(out)
}

fn component_zetas(h: &PGraph, w: &[f64], alpha: f64, beta: f64, k: usize) -> Result<[f64; 6]> {
    let cliques = maximal_cliques(h).map_err(|_| Error::Input("chain component is not chordal".into()))?;
    // w(C) - max w over C only grows when vertices are added, so maximal
    // cliques attain the maximum.
    let clique_term = |a: f64, b: f64| -> f64 {
        let best = cliques
            .iter()
            .map(|c| {
                let sum: f64 = c.iter().map(|&v| w[v]).sum();
                let top = c.iter().map(|&v| w[v]).fold(0.0, f64::max);
                a * (sum - top) + b * c.len() as f64
            })
            .fold(0.0, f64::max);
        0.5 * best
    };
    let bk = beta / k as f64;
    let mut z = [clique_term(1.0, 0.0), 0.0, clique_term(alpha, beta), 0.0, clique_term(alpha, bk), 0.0];

    let n = h.n();
    for v in 0..n {
        let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let parts = components_within(h, &others);
        let mut gamma = [0.0; 3];
        for part in &parts {
            let near: Vec<usize> = part.iter().copied().filter(|&u| h.is_adjacent(u, v)).collect();
            if near.is_empty() {
                continue;
            }
            let (sub, map) = induced_subgraph(h, &near)?;
            for (slot, (a, b)) in [(1.0, 0.0), (alpha, beta), (alpha, bk)].into_iter().enumerate() {
                let scores: Vec<f64> = map.iter().map(|&u| a * w[u] + b).collect();
                gamma[slot] += max_weight_clique(&sub, &scores)?.1;
            }
        }
        z[1] = z[1].max(0.5 * w[v].min(gamma[0]));
        z[3] = z[3].max(0.5 * (alpha * w[v] + beta).min(gamma[1]));
        z[5] = z[5].max(0.5 * (alpha * w[v] + bk).min(gamma[2]));
    }
    Ok(z)
}

fn components_within(h: &PGraph, vs: &[usize]) -> Vec<Vec<usize>> {
    let inside: BTreeSet<usize> = vs.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in vs {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &x in h.undirected_neighbors(u) {
                if inside.contains(&x) && seen.insert(x) {
                    comp.push(x);
                    stack.push(x);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBound {
    pub value: f64,
    /// True when every atomic intervention set was evaluated.
    pub exhaustive: bool,
    pub candidates: usize,
}

/// Maximum over a family of atomic intervention sets of the summed
/// per-component bound: terms 3 and 4 for `k = 1`, terms 5 and 6 otherwise.
/// The family is the empty set and all singletons, plus all pairs when
/// `n <= 10`, plus all subsets when `n <= 10` and `2^n <= budget`.
pub fn lower_bound(d: &Dag, w: &[f64], alpha: f64, beta: f64, k: usize, budget: usize) -> Result<LowerBound> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    let n = d.n();
    let exhaustive = n <= 10 && (1usize << n) <= budget;
    let family: Vec<Vec<usize>> = if exhaustive {
        (0..1usize << n).map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect()
    } else {
        let mut f = vec![Vec::new()];
        f.extend((0..n).map(|v| vec![v]));
        if n <= 10 {
            for a in 0..n {
                f.extend((a + 1..n).map(|b| vec![a, b]));
            }
        }
        f
    };
    let mut value = 0.0f64;
    for vs in &family {
        let i = InterventionSet::singletons(vs.iter().copied());
        let total: f64 = zeta_terms(d, w, &i, alpha, beta, k)?
            .iter()
            .map(|r| if k == 1 { r.zeta[2].max(r.zeta[3]) } else { r.zeta[4].max(r.zeta[5]) })
            .sum();
        value = value.max(total);
    }
    Ok(LowerBound { value, exhaustive, candidates: family.len() })
}
