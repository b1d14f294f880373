use proptest::prelude::*;

use super::*;
use crate::catalog::{clifford_rep, fuzzy_sphere, fuzzy_torus};
use crate::dmsa::{tensor, Rep};
use crate::matkernel::{c, random_unitary};

const TOL: f64 = 1e-9;

fn pair(r: &Rep) -> (CMatrix, CMatrix) {
    r.pair().unwrap()
}

fn graph_of(r: &Rep, seed: u64) -> RepGraph {
    let (l, t) = pair(r);
    rep_graph(&l, &t, DEFAULT_EDGE_EPS, TOL, seed).unwrap()
}

fn path(labels: Vec<C64>) -> RepGraph {
    let n = labels.len();
    RepGraph::new(labels, (1..n).map(|k| (k - 1, k)))
}

fn sphere_labels(n: usize, theta: f64) -> Vec<C64> {
    (1..=n).map(|k| C64::from_polar(1.0, theta) * ((n + 1) as f64 - 2.0 * k as f64) / 2.0).collect()
}

#[test]
fn classification_flags() {
    let (l, t) = pair(&fuzzy_torus(5, 0.3, 0.1).unwrap().rep);
    let k = classify_rep(&l, &t, TOL).unwrap();
    assert!(k.unitary && k.normal && k.semi_normal && k.non_degenerate && k.diagonalizable);

    let (l, t) = pair(&fuzzy_sphere(4, 0.7).unwrap().rep);
    let k = classify_rep(&l, &t, TOL).unwrap();
    assert!(k.semi_normal && !k.normal && !k.unitary && k.non_degenerate);

    let (l, t) = pair(&clifford_rep(4, 0).unwrap().rep);
    let k = classify_rep(&l, &t, TOL).unwrap();
    assert!(!k.diagonalizable && !k.non_degenerate && !k.semi_normal);
}

#[test]
fn diagonal_lambda_gives_scaled_permutation() {
    let l = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1., 0.), c(-2., 0.), c(0., 3.)]));
    let t = random_unitary(3, 5);
    let b = jordan_basis_wrt_t(&l, &t, TOL, 0).unwrap();
    for col in b.basis.column_iter() {
        let big = col.iter().filter(|z| z.norm() > 1e-10).count();
        assert_eq!(big, 1);
    }
}

#[test]
fn clifford_basis_shapes() {
    let (l, t) = pair(&clifford_rep(4, 0).unwrap().rep);
    let b = jordan_basis_wrt_t(&l, &t, TOL, 3).unwrap();
    assert_eq!(b.subspaces.len(), 1);
    let pl = alpha_matrix(&b.basis, &l).unwrap();
    let mut nilpotent = CMatrix::zeros(4, 4);
    nilpotent[(0, 1)] = c(1., 0.);
    nilpotent[(2, 3)] = c(1., 0.);
    assert!((pl - nilpotent).norm() < 1e-9);
    let g = rep_graph(&l, &t, DEFAULT_EDGE_EPS, TOL, 3).unwrap();
    assert!(g.labels.iter().all(|z| z.norm() < 1e-9));
    let comps = components(&g);
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|p| p.len() == 2));
}

#[test]
fn sphere_graph_is_path() {
    for n in 2..=8 {
        for theta in [0.0, 0.7] {
            let g = graph_of(&fuzzy_sphere(n, theta).unwrap().rep, 1);
            assert_eq!(g.edge_count(), n - 1);
            assert!(is_isomorphic(&g, &path(sphere_labels(n, theta)), 1e-8).unwrap());
            assert!(g.notes.is_empty());
        }
    }
}

#[test]
fn torus_graph_is_cycle() {
    for n in 3..=7 {
        let g = graph_of(&fuzzy_torus(n, 0.4, 0.0).unwrap().rep, 2);
        let q = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
        let labels = (0..n).map(|k| C64::from_polar(1.0, 0.4) * q.powu(k as u32)).collect();
        let cycle = RepGraph::new(labels, (0..n).map(|k| (k, (k + 1) % n)));
        assert!(is_isomorphic(&g, &cycle, 1e-8).unwrap());
        assert!(!is_isomorphic(&g, &path(cycle.labels.clone()), 1e-8).unwrap());
    }
}

#[test]
fn seed_independence_when_non_degenerate() {
    let r = tensor(&fuzzy_sphere(3, 0.31).unwrap().rep, &fuzzy_sphere(2, 1.17).unwrap().rep).unwrap();
    let reference = graph_of(&r, 0);
    for seed in 1..=5 {
        assert!(is_isomorphic(&reference, &graph_of(&r, seed), 1e-8).unwrap());
    }
}

#[test]
fn component_counts() {
    assert_eq!(components(&path(vec![c(0., 0.); 5])).len(), 1);
    assert_eq!(components(&RepGraph::new(vec![c(0., 0.); 4], [])).len(), 4);
    let g = RepGraph::new(vec![c(0., 0.); 5], [(3, 0), (1, 4)]);
    assert_eq!(components(&g), vec![vec![0, 3], vec![1, 4], vec![2]]);
}

#[test]
fn verdicts() {
    let (l, t) = pair(&fuzzy_sphere(4, 0.2).unwrap().rep);
    let v = irreducibility_verdict(&l, &t, TOL, 0).unwrap();
    assert_eq!((v.verdict, v.method), (Irreducibility::Irreducible, VerdictMethod::GraphConnected));

    let a = fuzzy_torus(3, 0.1, 0.0).unwrap().rep;
    let b = fuzzy_torus(4, 0.5, 0.2).unwrap().rep;
    let sum = Rep::direct_sum(&[&a, &b]).unwrap();
    let (l, t) = pair(&sum);
    let v = irreducibility_verdict(&l, &t, TOL, 0).unwrap();
    assert_eq!((v.verdict, v.method, v.components), (Irreducibility::Reducible, VerdictMethod::SemiNormalGraph, 2));
    assert_eq!(commutant_decompose(&[l.clone(), l.adjoint(), t.clone(), t.adjoint()], TOL, 0).unwrap().len(), 2);

    let (l, t) = pair(&clifford_rep(4, 0).unwrap().rep);
    let v = irreducibility_verdict(&l, &t, TOL, 0).unwrap();
    assert_eq!((v.verdict, v.method), (Irreducibility::Irreducible, VerdictMethod::Commutant));
}

#[test]
fn cartesian_products() {
    let p3 = path(sphere_labels(3, 0.0));
    let p2 = path(sphere_labels(2, 0.0));
    let g = cartesian_product(&p3, &p2);
    assert_eq!((g.n(), g.edge_count()), (6, 7));

    let point = RepGraph::new(vec![c(0.5, 1.0)], []);
    let shifted = cartesian_product(&p3, &point);
    assert_eq!(shifted.edges, p3.edges);
    for (a, b) in shifted.labels.iter().zip(&p3.labels) {
        assert_eq!(*a, b + c(0.5, 1.0));
    }

    let cycle = RepGraph::new((0..4).map(|k| c(k as f64, 0.0)).collect(), (0..4).map(|k| (k, (k + 1) % 4)));
    let g = cartesian_product(&cycle, &cycle);
    assert_eq!((g.n(), g.edge_count()), (16, 32));
}

#[test]
fn tensor_graph_is_product() {
    let a = fuzzy_sphere(3, 0.31).unwrap().rep;
    let b = fuzzy_sphere(2, 1.17).unwrap().rep;
    let g = graph_of(&tensor(&a, &b).unwrap(), 4);
    let product = cartesian_product(&graph_of(&a, 4), &graph_of(&b, 4));
    assert_eq!((g.n(), g.edge_count()), (6, 7));
    assert!(is_isomorphic(&g, &product, 1e-8).unwrap());
    assert!(is_isomorphic_brute(&g, &product, 1e-8));
}

#[test]
fn isomorphism_basics() {
    let labels = vec![c(0., 0.); 4];
    let p4 = path(labels.clone());
    let c4 = RepGraph::new(labels.clone(), (0..4).map(|k| (k, (k + 1) % 4)));
    assert!(!is_isomorphic(&p4, &c4, 1e-9).unwrap());
    let permuted = RepGraph::new(labels, [(2, 0), (0, 3), (3, 1)]);
    assert!(is_isomorphic(&p4, &permuted, 1e-9).unwrap());
    let big = RepGraph::new(vec![c(0., 0.); 11], []);
    assert!(matches!(is_isomorphic(&big, &big, 1e-9), Err(GraphError::TooLarge { n: 11, max: 10 })));
    let distinct = path(sphere_labels(20, 0.0));
    assert!(is_isomorphic(&distinct, &distinct, 1e-9).unwrap());
}

#[test]
fn dot_output() {
    let single = RepGraph::new(vec![c(0., 0.)], []);
    assert!(dot_string(&single).contains("v1 [label=\"1: 0.000000+0.000000i\"]"));
    let p2 = path(vec![c(0.5, 0.), c(-0.5, -0.25)]);
    let text = dot_string(&p2);
    assert_eq!(text.lines().filter(|l| l.contains("->")).collect::<Vec<_>>(), vec!["  v1 -> v2"]);
    assert!(text.contains("v2 [label=\"2: -0.500000-0.250000i\"]"));
    let torus = graph_of(&fuzzy_torus(3, 0.0, 0.0).unwrap().rep, 0);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.dot");
    to_dot(&torus, &file).unwrap();
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("->")).count(), 3);
    assert_eq!(text, dot_string(&torus));
}

fn small_graph() -> impl Strategy<Value = RepGraph> {
    (1usize..6).prop_flat_map(|n| {
        (proptest::collection::vec(0u8..2, n), proptest::collection::vec((0..n, 0..n), 0..2 * n))
            .prop_map(|(labels, edges)| RepGraph::new(labels.into_iter().map(|k| c(k as f64, 0.0)).collect(), edges))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_edge_count(g in small_graph(), h in small_graph()) {
        let p = cartesian_product(&g, &h);
        prop_assert_eq!(p.n(), g.n() * h.n());
        // A loop at v and a loop at u both produce the loop at (v, u).
        let loops = |x: &RepGraph| x.edges.iter().filter(|e| e.0 == e.1).count();
        prop_assert_eq!(p.edge_count(), g.edge_count() * h.n() + g.n() * h.edge_count() - loops(&g) * loops(&h));
    }

    #[test]
    fn vf2_agrees_with_brute_force(g in small_graph(), h in small_graph(), seed in 0u64..1000) {
        prop_assert_eq!(is_isomorphic(&g, &h, 1e-9).unwrap(), is_isomorphic_brute(&g, &h, 1e-9));
        // A relabelled copy is always isomorphic.
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut labels = vec![c(0., 0.); n];
        for v in 0..n {
            labels[perm[v]] = g.labels[v];
        }
        let copy = RepGraph::new(labels, g.edges.iter().map(|&(a, b)| (perm[a], perm[b])));
        prop_assert!(is_isomorphic(&g, &copy, 1e-9).unwrap());
    }
}
