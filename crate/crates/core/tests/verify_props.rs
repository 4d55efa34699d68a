mod common;

use common::{random_instance, subsets};
use wcdag::mec::{enumerate_mec, essential_graph};
use wcdag::rng::Rng;
use wcdag::verify::{
    atomic_verification_numbers, benchmark_max, is_verifying_set, lower_bound, min_vertex_cover, relate_k_bounds,
    separates_covered_edges, zeta_terms,
};
use wcdag::{Dag, InterventionSet, WeightedInstance};

fn corpus() -> Vec<WeightedInstance> {
    (0..200u64).map(|s| random_instance(2 + (s % 6) as usize, 1000 + s)).collect()
}

/// `(min size, min weight)` over verifying atomic subsets.
fn brute_nu(inst: &WeightedInstance) -> (usize, f64) {
    let mut best = (usize::MAX, f64::INFINITY);
    for s in subsets(inst.n()) {
        if is_verifying_set(inst.dag(), &InterventionSet::singletons(s.iter().copied())) {
            best.0 = best.0.min(s.len());
            best.1 = best.1.min(s.iter().map(|&v| inst.weights()[v]).sum());
        }
    }
    best
}

/// Equal up to summation order.
fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn verification_numbers_match_brute_force() {
    for inst in corpus() {
        let v = atomic_verification_numbers(&inst);
        let (nu, nu_w) = brute_nu(&inst);
        assert_eq!(v.nu, nu);
        assert!(close(v.nu_weighted, nu_w), "{} vs {nu_w}", v.nu_weighted);
        assert_eq!(v.size_witness.len(), nu);
        let wit_w: f64 = v.weight_witness.iter().map(|&u| inst.weights()[u]).sum();
        assert!(close(wit_w, nu_w));
        for wit in [&v.size_witness, &v.weight_witness] {
            assert!(is_verifying_set(inst.dag(), &InterventionSet::singletons(wit.iter().copied())));
        }
    }
}

#[test]
fn verifying_iff_covered_edges_separated() {
    for inst in corpus() {
        for s in subsets(inst.n()) {
            let i = InterventionSet::singletons(s);
            assert_eq!(is_verifying_set(inst.dag(), &i), separates_covered_edges(inst.dag(), &i));
        }
    }
}

#[test]
fn witnesses_are_minimal() {
    for inst in corpus() {
        let v = atomic_verification_numbers(&inst);
        for wit in [&v.size_witness, &v.weight_witness] {
            for drop in wit {
                let rest = wit.iter().copied().filter(|u| u != drop);
                assert!(!is_verifying_set(inst.dag(), &InterventionSet::singletons(rest)));
            }
        }
    }
}

#[test]
fn general_dags_too() {
    let mut rng = Rng::new(77);
    for _ in 0..150 {
        let n = rng.range_inclusive(2, 6);
        let d = common::random_dag(n, 0.5, &mut rng);
        let inst = WeightedInstance::unit(d);
        assert_eq!(atomic_verification_numbers(&inst).nu, brute_nu(&inst).0);
    }
}

#[test]
fn directed_clique_needs_half() {
    for n in 3..=8 {
        let arcs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let inst = WeightedInstance::unit(Dag::from_arcs(n, &arcs).unwrap());
        assert_eq!(atomic_verification_numbers(&inst).nu, n / 2);
    }
}

#[test]
fn vertex_cover_matches_brute_force() {
    let mut rng = Rng::new(78);
    for _ in 0..300 {
        let n = rng.range_inclusive(1, 10);
        let mut edges = vec![];
        for u in 0..n {
            for v in u + 1..n {
                if rng.bernoulli(0.3) {
                    edges.push((u, v));
                }
            }
        }
        let w: Vec<f64> = (0..n).map(|_| (1 + rng.below(5)) as f64).collect();
        let (cost, cover) = min_vertex_cover(&edges, &w);
        let best = subsets(n)
            .filter(|s| edges.iter().all(|(a, b)| s.contains(a) || s.contains(b)))
            .map(|s| s.iter().map(|&v| w[v]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(cost, best);
        assert!(edges.iter().all(|(a, b)| cover.contains(a) || cover.contains(b)));
    }
}

/// Smallest number and smallest total weight of families of sets of size
/// at most `k` that verify `d`. Families never need more than `n` sets.
fn brute_nu_k(d: &Dag, w: &[f64], k: usize) -> (usize, f64) {
    let cands: Vec<Vec<usize>> = subsets(d.n()).filter(|s| !s.is_empty() && s.len() <= k).collect();
    let mut out = (usize::MAX, f64::INFINITY);
    let mut chosen = Vec::new();
    search(d, w, k, &cands, 0, &mut chosen, &mut out);
    out
}

fn search(
    d: &Dag,
    w: &[f64],
    k: usize,
    cands: &[Vec<usize>],
    from: usize,
    chosen: &mut Vec<Vec<usize>>,
    out: &mut (usize, f64),
) {
    let i = InterventionSet::from_sets(k, chosen.clone()).unwrap();
    if is_verifying_set(d, &i) {
        out.0 = out.0.min(chosen.len());
        out.1 = out.1.min(i.weight(w));
        return;
    }
    if chosen.len() == d.n() {
        return;
    }
    for j in from..cands.len() {
        chosen.push(cands[j].clone());
        search(d, w, k, cands, j + 1, chosen, out);
        chosen.pop();
    }
}

#[test]
fn relate_k_below_brute_force() {
    for s in 0..25u64 {
        let n = 2 + (s % 4) as usize;
        let inst = random_instance(n, 5000 + s);
        let (nu1, nu1_w) = benchmark_max(&inst).unwrap();
        let (lo, lo_w) = relate_k_bounds(nu1, nu1_w, 2);
        let mut max_k = (0, 0.0f64);
        for m in enumerate_mec(&essential_graph(inst.dag())).unwrap() {
            let (c, x) = brute_nu_k(&m, inst.weights(), 2);
            max_k = (max_k.0.max(c), max_k.1.max(x));
        }
        assert!(max_k.0 >= lo, "seed {s}: {} < {lo}", max_k.0);
        assert!(max_k.1 >= lo_w - 1e-9, "seed {s}: {} < {lo_w}", max_k.1);
    }
}

#[test]
fn lower_bound_below_benchmark() {
    for s in 0..100u64 {
        let n = 2 + (s % 6) as usize;
        let inst = random_instance(n, 9000 + s);
        let lb = lower_bound(inst.dag(), inst.weights(), 1.0, 0.0, 1, 1 << 12).unwrap();
        assert!(lb.exhaustive);
        let (_, bench) = benchmark_max(&inst).unwrap();
        assert!(lb.value <= bench + 1e-9, "seed {s}: {} > {bench}", lb.value);
    }
}

#[test]
fn zeta_terms_are_halved_clique_quantities() {
    for s in 0..50u64 {
        let inst = random_instance(2 + (s % 7) as usize, 300 + s);
        let recs = zeta_terms(inst.dag(), inst.weights(), &InterventionSet::atomic(), 1.0, 1.0, 2).unwrap();
        for r in recs {
            assert!(r.component.len() >= 2);
            assert!(r.zeta.iter().all(|z| z.is_finite() && *z >= 0.0));
            // Unit costs per set make the generalized clique term dominate the
            // weight-only one.
            assert!(r.zeta[2] >= r.zeta[0]);
        }
    }
}
