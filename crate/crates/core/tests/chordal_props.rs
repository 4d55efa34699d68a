mod common;

use std::collections::BTreeSet;

use common::subsets;
use wcdag::chordal::{
    half_clique_separator, is_perfect_elimination_order, max_weight_clique, maximal_cliques, perfect_elimination_order,
};
use wcdag::graph::{chain_component_sets, is_clique};
use wcdag::rng::Rng;
use wcdag::{Error, PGraph};

/// Random graph made chordal by eliminating along a random order.
fn random_chordal(n: usize, p: f64, rng: &mut Rng) -> PGraph {
    chordal_from(vec![BTreeSet::new(); n], p, rng)
}

/// Same, on top of a random spanning tree.
fn random_connected_chordal(n: usize, p: f64, rng: &mut Rng) -> PGraph {
    let mut adj = vec![BTreeSet::new(); n];
    for v in 1..n {
        let u = rng.below(v as u64) as usize;
        adj[u].insert(v);
        adj[v].insert(u);
    }
    chordal_from(adj, p, rng)
}

fn chordal_from(mut adj: Vec<BTreeSet<usize>>, p: f64, rng: &mut Rng) -> PGraph {
    let n = adj.len();
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(p) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut gone = vec![false; n];
    for &v in &order {
        let rest: Vec<usize> = adj[v].iter().copied().filter(|&u| !gone[u]).collect();
        for (i, &a) in rest.iter().enumerate() {
            for &b in &rest[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        gone[v] = true;
    }
    let mut g = PGraph::new(n);
    for (u, vs) in adj.iter().enumerate() {
        for &v in vs.range(u + 1..) {
            g.add_undirected(u, v).unwrap();
        }
    }
    g
}

fn brute_maximal_cliques(g: &PGraph) -> BTreeSet<Vec<usize>> {
    let cliques: Vec<Vec<usize>> = subsets(g.n()).filter(|s| !s.is_empty() && is_clique(g, s)).collect();
    cliques
        .iter()
        .filter(|c| !cliques.iter().any(|d| d.len() > c.len() && c.iter().all(|v| d.contains(v))))
        .cloned()
        .collect()
}

#[test]
fn peo_exists_exactly_for_chordal() {
    let mut rng = Rng::new(11);
    for _ in 0..300 {
        let n = rng.range_inclusive(1, 10);
        let g = random_chordal(n, 0.3, &mut rng);
        let order = perfect_elimination_order(&g).unwrap().expect("chordal");
        assert!(is_perfect_elimination_order(&g, &order));
    }
    // Cycles of length four and more have no elimination ordering.
    for n in 4..9 {
        let mut g = PGraph::new(n);
        for v in 0..n {
            g.add_undirected(v, (v + 1) % n).unwrap();
        }
        assert_eq!(perfect_elimination_order(&g).unwrap(), None);
        assert!(matches!(maximal_cliques(&g), Err(Error::NotChordal)));
    }
}

#[test]
fn maximal_cliques_match_brute_force() {
    let mut rng = Rng::new(12);
    for _ in 0..400 {
        let n = rng.range_inclusive(1, 8);
        let p = [0.2, 0.4, 0.7][rng.below(3) as usize];
        let g = random_chordal(n, p, &mut rng);
        let got: Vec<Vec<usize>> = maximal_cliques(&g).unwrap();
        let set: BTreeSet<Vec<usize>> = got.iter().cloned().collect();
        assert_eq!(set.len(), got.len(), "duplicate clique");
        assert_eq!(set, brute_maximal_cliques(&g));
    }
}

#[test]
fn max_weight_clique_matches_brute_force() {
    let mut rng = Rng::new(13);
    for _ in 0..300 {
        let n = rng.range_inclusive(1, 12);
        let g = random_chordal(n, 0.35, &mut rng);
        let score: Vec<f64> = (0..n).map(|_| rng.below(20) as f64).collect();
        let (c, value) = max_weight_clique(&g, &score).unwrap();
        assert!(is_clique(&g, &c));
        assert_eq!(value, c.iter().map(|&v| score[v]).sum::<f64>());
        let best = subsets(n)
            .filter(|s| is_clique(&g, s))
            .map(|s| s.iter().map(|&v| score[v]).sum::<f64>())
            .fold(0.0, f64::max);
        assert_eq!(value, best);
    }
}

#[test]
fn separator_properties() {
    let mut rng = Rng::new(14);
    for _ in 0..1000 {
        let n = rng.range_inclusive(2, 40);
        let p = [0.0, 0.05, 0.2][rng.below(3) as usize];
        let g = random_connected_chordal(n, p, &mut rng);
        assert_eq!(chain_component_sets(&g).len(), 1);
        let omega = maximal_cliques(&g).unwrap().iter().map(Vec::len).max().unwrap();
        let sep = half_clique_separator(&g).unwrap();
        assert!(!sep.clique.is_empty());
        assert!(is_clique(&g, &sep.clique));
        assert!(sep.clique.len() <= (omega - 1).max(1));
        let mut covered: Vec<usize> = sep.clique.iter().chain(&sep.side_a).chain(&sep.side_b).copied().collect();
        covered.sort_unstable();
        assert_eq!(covered, (0..n).collect::<Vec<_>>());
        for comp in &sep.components {
            assert!(comp.len() <= n / 2, "component of {} in {n}", comp.len());
            for &u in comp {
                for v in g.undirected_neighbors(u) {
                    assert!(comp.contains(v) || sep.clique.contains(v));
                }
            }
        }
        assert!(sep.side_a.len() <= n.div_ceil(2));
    }
}

#[test]
fn separator_rejects_bad_input() {
    assert!(half_clique_separator(&PGraph::new(1)).is_err());
    assert!(half_clique_separator(&PGraph::new(3)).is_err());
    let mut c4 = PGraph::new(4);
    for v in 0..4 {
        c4.add_undirected(v, (v + 1) % 4).unwrap();
    }
    assert!(matches!(half_clique_separator(&c4), Err(Error::NotChordal)));
    let arcs = PGraph::from_edges(2, &[], &[(0, 1)]).unwrap();
    assert!(matches!(half_clique_separator(&arcs), Err(Error::Input(_))));
}

#[test]
fn clique_sums_reach_maximum_on_maximal_cliques() {
    // Any clique score that only grows with the clique is maximised on a
    // maximal clique, so scanning maximal cliques is enough.
    let mut rng = Rng::new(15);
    for _ in 0..200 {
        let n = rng.range_inclusive(2, 9);
        let g = random_chordal(n, 0.4, &mut rng);
        let w: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
        let minus_max = |c: &[usize]| {
            let sum: f64 = c.iter().map(|&v| w[v]).sum();
            sum - c.iter().map(|&v| w[v]).fold(0.0, f64::max)
        };
        let over_max = maximal_cliques(&g).unwrap().iter().map(|c| minus_max(c)).fold(0.0, f64::max);
        let over_all = subsets(n).filter(|s| is_clique(&g, s)).map(|s| minus_max(&s)).fold(0.0, f64::max);
        assert!((over_max - over_all).abs() < 1e-12);
    }
}
