#![allow(dead_code)]

use std::collections::BTreeSet;

use wcdag::gen::{gen_er_moral, weights_type1, weights_type2};
use wcdag::rng::Rng;
use wcdag::{Dag, PGraph, WeightedInstance};

/// Random DAG: random order, each forward pair an arc with probability `p`.
pub fn random_dag(n: usize, p: f64, rng: &mut Rng) -> Dag {
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut arcs = vec![];
    for i in 0..n {
        for j in i + 1..n {
            if rng.bernoulli(p) {
                arcs.push((order[i], order[j]));
            }
        }
    }
    Dag::from_arcs(n, &arcs).unwrap()
}

/// Every labelled DAG on `n` vertices.
pub fn all_dags(n: usize) -> Vec<Dag> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = vec![];
    let total = 3usize.pow(pairs.len() as u32);
    for mut code in 0..total {
        let mut arcs = vec![];
        for &(u, v) in &pairs {
            match code % 3 {
                1 => arcs.push((u, v)),
                2 => arcs.push((v, u)),
                _ => {}
            }
            code /= 3;
        }
        if let Ok(d) = Dag::from_arcs(n, &arcs) {
            out.push(d);
        }
    }
    out
}

fn colliders(d: &Dag) -> BTreeSet<(usize, usize, usize)> {
    let mut s = BTreeSet::new();
    for v in 0..d.n() {
        for &a in d.parents(v) {
            for &b in d.parents(v) {
                if a < b && !d.is_adjacent(a, b) {
                    s.insert((a, v, b));
                }
            }
        }
    }
    s
}

/// All DAGs Markov equivalent to `d`, by trying every orientation of its
/// skeleton.
pub fn brute_mec(d: &Dag) -> Vec<Dag> {
    let edges: Vec<(usize, usize)> = d.arcs().into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    let target = colliders(d);
    let mut out = vec![];
    for mask in 0..1u64 << edges.len() {
        let arcs: Vec<(usize, usize)> =
            edges.iter().enumerate().map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) }).collect();
        if let Ok(m) = Dag::from_arcs(d.n(), &arcs) {
            if colliders(&m) == target {
                out.push(m);
            }
        }
    }
    out
}

/// Arcs shared by every DAG in `members`, over the skeleton of the first.
pub fn common_arcs(members: &[Dag]) -> BTreeSet<(usize, usize)> {
    let mut it = members.iter();
    let mut acc: BTreeSet<(usize, usize)> = it.next().unwrap().arcs().into_iter().collect();
    for m in it {
        let here: BTreeSet<(usize, usize)> = m.arcs().into_iter().collect();
        acc = acc.intersection(&here).copied().collect();
    }
    acc
}

pub fn arc_set(g: &PGraph) -> BTreeSet<(usize, usize)> {
    g.arcs().into_iter().collect()
}

/// Random connected moral instance with one of the three weight types.
pub fn random_instance(n: usize, seed: u64) -> WeightedInstance {
    let mut rng = Rng::new(seed);
    let rho = [0.1, 0.3, 0.6][rng.below(3) as usize];
    let d = gen_er_moral(n, rho, seed).unwrap();
    let w = match rng.below(3) {
        0 => weights_type1(n, seed ^ 1),
        1 => weights_type2(n, 0.3, seed ^ 2).unwrap(),
        _ => (0..n).map(|_| (1 + rng.below(9)) as f64).collect(),
    };
    WeightedInstance::new(d, w).unwrap()
}

/// Subsets of `0..n` as sorted vectors.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1usize << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}
