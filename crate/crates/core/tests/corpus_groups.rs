mod common;

use common::{ade_type, load, load_file};
use mckay_core::age::{betti_prediction, eigen_exponents, grade};
use mckay_core::cyclo::{CycNum, CyclotomicField};
use mckay_core::matgroup::{close_named_group, DEFAULT_CAP};
use mckay_core::matrix::Matrix;
use mckay_core::quiver::{fold, junior_chains, ChainOrientation};
use mckay_core::toric::{build_lattice, junior_points};

#[test]
fn corpus_orders() {
    let expected = [
        ("bd8", 8, 5),
        ("bd12", 12, 6),
        ("bt48", 24, 7),
        ("trihedral", 27, 11),
        ("icosahedral", 60, 5),
        ("terminal4", 5, 5),
        ("cyclic7", 7, 7),
        ("quarter4", 4, 4),
        ("third3", 3, 3),
    ];
    for (name, order, classes) in expected {
        let g = load(name);
        assert_eq!((g.order(), g.classes().len()), (order, classes), "{name}");
        assert!(g.in_sl(), "{name}");
    }
}

#[test]
fn folded_diagrams() {
    for (name, ty) in [("bd8", "D4"), ("bd12", "D5"), ("bt48", "E6")] {
        let g = load(name);
        let graph = fold(&g, ChainOrientation::Smallest).unwrap();
        assert_eq!(ade_type(graph.nodes.len(), &graph.edges).as_deref(), Some(ty), "{name}");
        assert_eq!(graph, fold(&g, ChainOrientation::Reversed).unwrap(), "{name}");
    }
}

#[test]
fn bt48_identifications() {
    let g = load("bt48");
    let [a, b, c] = [0, 1, 2].map(|i| g.generators()[i]);
    assert_eq!(g.class_of(a), g.class_of(g.power(a, 3)));
    assert_eq!(g.class_of(a), g.class_of(b));
    let c_classes: std::collections::BTreeSet<usize> =
        (1..6).map(|k| g.class_of(g.power(c, k))).collect();
    assert_eq!(c_classes.len(), 5);

    let graph = fold(&g, ChainOrientation::Smallest).unwrap();
    let pos = |e: usize| graph.position_of_class(g.class_of(e)).unwrap();
    let minus_one = pos(g.power(a, 2));
    assert_eq!(graph.degree(minus_one), 3);
    assert!(graph.edges.contains(&(pos(a).min(minus_one), pos(a).max(minus_one))));
    assert_eq!(graph.degree(pos(a)), 1);

    // the chain of <C> runs C, C^2, C^3 = -1, C^4, C^5
    let chains = junior_chains(&g, ChainOrientation::Smallest).unwrap();
    let chain_c = chains
        .iter()
        .find(|ch| ch.order == 6 && ch.nodes.contains(&c))
        .unwrap();
    let classes: Vec<usize> = chain_c.nodes.iter().map(|&e| g.class_of(e)).collect();
    let powers: Vec<usize> = (1..6).map(|k| g.class_of(g.power(c, k))).collect();
    let mut reversed = powers.clone();
    reversed.reverse();
    assert!(classes == powers || classes == reversed);
}

#[test]
fn conjugate_cyclic_subgroups_fold_identically() {
    let g = load("bt48");
    let chains = junior_chains(&g, ChainOrientation::Smallest).unwrap();
    let edge_set = |ch: &mckay_core::quiver::CyclicChain| {
        let mut s: Vec<(usize, usize)> = ch
            .edges
            .iter()
            .map(|&(x, y)| {
                let (p, q) = (g.class_of(x), g.class_of(y));
                (p.min(q), p.max(q))
            })
            .collect();
        s.sort_unstable();
        s
    };
    let order4: Vec<_> = chains.iter().filter(|c| c.order == 4).collect();
    assert_eq!(order4.len(), 3);
    for ch in &order4 {
        assert_eq!(edge_set(ch), edge_set(order4[0]));
    }
}

#[test]
fn cyclic_surface_groups_fold_to_paths() {
    for r in 2..=12u64 {
        let f = CyclotomicField::new(r);
        let m = Matrix::diagonal(vec![CycNum::zeta(&f), CycNum::zeta_pow(&f, -1)]);
        let g = close_named_group(&[("g".into(), m)], DEFAULT_CAP).unwrap();
        let graph = fold(&g, ChainOrientation::Smallest).unwrap();
        let expected = format!("A{}", r - 1);
        assert_eq!(ade_type(graph.nodes.len(), &graph.edges).as_deref(), Some(expected.as_str()));
    }
}

#[test]
fn trihedral_betti() {
    let b = betti_prediction(&load("trihedral")).unwrap();
    assert_eq!((b.h0, b.h2, b.h4, b.euler), (1, 9, 1, 11));
    let b = betti_prediction(&load("icosahedral")).unwrap();
    assert_eq!((b.h0, b.h2, b.h4, b.euler), (1, 4, 0, 5));
}

/// Box points of a cyclic diagonal group carry the same ages as the
/// matrices they stand for.
#[test]
fn box_ages_match_eigenvalue_ages() {
    for name in ["cyclic7", "terminal4", "quarter4", "third3"] {
        let file = load_file(name);
        let lattice = build_lattice(&file.diagonal_spec().unwrap());
        let group = load(name).lift_to_exponent_field().unwrap();
        for p in &lattice.points {
            let m = lattice.element_matrix(p).embed(group.field()).unwrap();
            let idx = group.index_of(&m).expect("box point is a group element");
            let e = eigen_exponents(&m, group.element(idx).order).unwrap();
            assert_eq!(e.age, p.age(), "{name} {p}");
        }
        let table = grade(&group).unwrap();
        let juniors_by_elements = table
            .element_expressions
            .iter()
            .filter(|e| e.is_junior())
            .count();
        assert_eq!(junior_points(&lattice).len(), juniors_by_elements, "{name}");
    }
}

#[test]
fn trihedral_coset_classes() {
    let g = load("trihedral");
    let f = g.field();
    let d = |a: i64, b: i64, c: i64| {
        Matrix::diagonal(vec![CycNum::zeta_pow(f, a), CycNum::zeta_pow(f, b), CycNum::zeta_pow(f, c)])
    };
    let t = g.element(g.generators()[1]).matrix.clone();
    // h T h^-1 = w T for h = 1/3(2,1,0), so scalar multiples of T are conjugate.
    let conj = d(2, 1, 0).mul(&t).mul(&d(1, 2, 0));
    assert_eq!(conj, d(1, 1, 1).mul(&t));
    let class = |m: &Matrix| g.class_of(g.index_of(m).unwrap());
    for s in [d(1, 1, 1), d(2, 2, 2)] {
        assert_eq!(class(&s.mul(&t)), class(&t));
        assert_eq!(class(&s.mul(&t).mul(&t)), class(&t.mul(&t)));
    }
    let coset: std::collections::BTreeSet<usize> = [d(0, 0, 0), d(0, 1, 2), d(0, 2, 1)]
        .iter()
        .flat_map(|h| [class(&h.mul(&t)), class(&h.mul(&t).mul(&t))])
        .collect();
    assert_eq!(coset.len(), 6);
    let juniors = grade(&g).unwrap().junior().to_vec();
    assert!(coset.iter().all(|c| juniors.contains(c)));
}
