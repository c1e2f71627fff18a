//! Resolution graphs of `C^2 / G` from cyclic chains.
//!
//! For a cyclic subgroup `<g>` of `SL(2)` of order `r`, the powers `g^k`
//! are points `(k a mod r) / r` on the junior interval and consecutive
//! points meet on the minimal resolution of `C^2 / <g>`. Doing this for
//! every maximal cyclic subgroup and identifying conjugate elements gives
//! a graph on the nonidentity conjugacy classes.

use std::collections::BTreeSet;

use crate::age::element_expression;
use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;

/// Which primitive eigenvalue of the chain generator orders the chain.
/// The two choices give reversed chains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChainOrientation {
    /// Smallest eigenvalue exponent `a`.
    #[default]
    Smallest,
    /// `r - a`.
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicChain {
    pub generator: usize,
    pub order: u64,
    /// Nonidentity powers of the generator, in junior-interval order.
    pub nodes: Vec<usize>,
    /// Consecutive node pairs, as element indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedGraph {
    /// Class indices of the nonidentity classes, ascending.
    pub nodes: Vec<usize>,
    /// One name per node, from the class representative.
    pub labels: Vec<String>,
    /// Representative element index per node.
    pub representatives: Vec<usize>,
    /// Pairs of positions in `nodes`, `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl FoldedGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| i == node || j == node)
            .count()
    }

    /// Position of the node for class `class`, if any.
    pub fn position_of_class(&self, class: usize) -> Option<usize> {
        self.nodes.iter().position(|&c| c == class)
    }
}

fn require_sl2(group: &MatrixGroup) -> Result<()> {
    if group.dimension() != 2 {
        return Err(Error::requirement(format!(
            "diagram requires dimension 2, got {}",
            group.dimension()
        )));
    }
    if !group.in_sl() {
        return Err(Error::requirement(
            "diagram requires a subgroup of SL(2); some generator has determinant != 1",
        ));
    }
    Ok(())
}

/// One chain per maximal cyclic subgroup, ordered by generator index.
pub fn junior_chains(group: &MatrixGroup, orientation: ChainOrientation) -> Result<Vec<CyclicChain>> {
    require_sl2(group)?;
    let lifted = if group.is_lifted() {
        std::borrow::Cow::Borrowed(group)
    } else {
        std::borrow::Cow::Owned(group.lift_to_exponent_field()?)
    };
    let mut chains = Vec::new();
    for sub in lifted.maximal_cyclic_subgroups() {
        let g = sub.generator;
        let r = lifted.element(g).order;
        if r == 1 {
            continue;
        }
        let a = element_expression(lifted.element(g))?.exponents[0];
        let step = match orientation {
            ChainOrientation::Smallest => a,
            ChainOrientation::Reversed => r - a,
        };
        let powers = lifted.cyclic_powers(g);
        let mut nodes: Vec<(u64, usize)> = (1..r)
            .map(|k| ((k * step) % r, powers[k as usize]))
            .collect();
        nodes.sort_unstable();
        let nodes: Vec<usize> = nodes.into_iter().map(|(_, e)| e).collect();
        let edges = nodes.windows(2).map(|w| (w[0], w[1])).collect();
        chains.push(CyclicChain {
            generator: g,
            order: r,
            nodes,
            edges,
        });
    }
    Ok(chains)
}

/// Identifies conjugate chain elements.
pub fn fold(group: &MatrixGroup, orientation: ChainOrientation) -> Result<FoldedGraph> {
    let chains = junior_chains(group, orientation)?;
    let nodes: Vec<usize> = (0..group.classes().len())
        .filter(|&c| group.classes()[c].representative != 0)
        .collect();
    let representatives: Vec<usize> = nodes
        .iter()
        .map(|&c| group.classes()[c].representative)
        .collect();
    let labels = representatives.iter().map(|&e| group.label(e)).collect();
    let position = |element: usize| {
        let c = group.class_of(element);
        nodes.iter().position(|&n| n == c).expect("nonidentity class")
    };
    let mut edges = BTreeSet::new();
    for chain in &chains {
        for &(x, y) in &chain.edges {
            let (i, j) = (position(x), position(y));
            if i == j {
                return Err(Error::invariant(format!(
                    "chain edge {} -- {} folds to a loop",
                    group.label(x),
                    group.label(y)
                )));
            }
            edges.insert((i.min(j), i.max(j)));
        }
    }
    Ok(FoldedGraph {
        nodes,
        labels,
        representatives,
        edges: edges.into_iter().collect(),
    })
}

/// Graphviz text. Node ids are `n<representative index>`.
pub fn to_dot(graph: &FoldedGraph) -> String {
    if graph.nodes.is_empty() {
        return "graph G { }\n".to_string();
    }
    let mut out = String::from("graph G {\n");
    for (rep, label) in graph.representatives.iter().zip(&graph.labels) {
        out.push_str(&format!("  n{rep} [label=\"{label}\"];\n"));
    }
    let mut edges: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (graph.representatives[i], graph.representatives[j]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("  n{a} -- n{b};\n"));
    }
    out.push_str("}\n");
    out
}
