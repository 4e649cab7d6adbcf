//! Products of canonical description graphs and the partial-attribute lcs.
//!
//! The product of two graphs intersects their constraints, the way a
//! product automaton intersects languages: paired a-edges demand the same
//! attribute path on both sides, paired r-edges take the weaker bounds and
//! the product of the restriction graphs, and an attribute shared between
//! an a-edge on one side and an attribute r-edge on the other pairs the
//! source graph rerooted at the a-target with the restriction graph.
//!
//! An incoherent operand is absorbed: the product is a copy of the other
//! graph, since ⊥ constrains nothing a least common subsumer could keep.

use std::collections::{BTreeMap, VecDeque};

use crate::canonical::{canonicalize, is_canonical};
use crate::concept::{Concept, RoleOrAttribute};
use crate::graph::{DescriptionGraph, Max, NodeId, NodeLabel, REdge};
use crate::subsume::canonical_graph;

/// The product of two canonical graphs, pruned to its reachable part.
pub fn product(g1: &DescriptionGraph, g2: &DescriptionGraph) -> DescriptionGraph {
    product_with_pairs(g1, g2).0
}

/// Like [`product`], also returning which pair of operand nodes each
/// product node came from. The map is empty when an operand was incoherent
/// and the product collapsed to a copy of the other graph.
pub fn product_with_pairs(
    g1: &DescriptionGraph,
    g2: &DescriptionGraph,
) -> (DescriptionGraph, BTreeMap<NodeId, (NodeId, NodeId)>) {
    debug_assert!(is_canonical(g1) && is_canonical(g2), "operands must be canonical");
    let mut memo = BTreeMap::new();
    build_product(g1, g1.root(), g2, g2.root(), &mut memo)
}

type Memo = BTreeMap<(NodeId, NodeId), DescriptionGraph>;

fn product_at(
    g1: &DescriptionGraph,
    r1: NodeId,
    g2: &DescriptionGraph,
    r2: NodeId,
    memo: &mut Memo,
) -> DescriptionGraph {
    if let Some(hit) = memo.get(&(r1, r2)) {
        return hit.clone().refresh_ids();
    }
    let result = build_product(g1, r1, g2, r2, memo).0;
    memo.insert((r1, r2), result.clone());
    result
}

fn build_product(
    g1: &DescriptionGraph,
    r1: NodeId,
    g2: &DescriptionGraph,
    r2: NodeId,
    memo: &mut Memo,
) -> (DescriptionGraph, BTreeMap<NodeId, (NodeId, NodeId)>) {
    // ⊥ absorbs at the graph level: the other operand is the product.
    if g1.label(r1).is_incoherent() {
        return (g2.reachable_copy(r2), BTreeMap::new());
    }
    if g2.label(r2).is_incoherent() {
        return (g1.reachable_copy(r1), BTreeMap::new());
    }

    let mut fresh: BTreeMap<(NodeId, NodeId), NodeId> = BTreeMap::new();
    let mut result = DescriptionGraph::single(NodeLabel::top());
    let root = result.root();
    fresh.insert((r1, r2), root);
    let mut queue = VecDeque::new();
    queue.push_back((r1, r2));
    let mut order = vec![(r1, r2)];
    while let Some((n1, n2)) = queue.pop_front() {
        for (_, a, t1) in g1.out_edges(n1) {
            for (_, b, t2) in g2.out_edges(n2) {
                if a != b {
                    continue;
                }
                let key = (*t1, *t2);
                let target = *fresh.entry(key).or_insert_with(|| {
                    queue.push_back(key);
                    order.push(key);
                    result.add_node(NodeLabel::top())
                });
                let source = fresh[&(n1, n2)];
                result.add_edge(source, a, target);
            }
        }
    }

    for (n1, n2) in order {
        let id = fresh[&(n1, n2)];
        let label = pair_label(g1, n1, g2, n2, memo);
        result.set_label(id, label);
    }

    let pairs = fresh.into_iter().map(|(pair, id)| (id, pair)).collect();
    (result, pairs)
}

fn pair_label(
    g1: &DescriptionGraph,
    n1: NodeId,
    g2: &DescriptionGraph,
    n2: NodeId,
    memo: &mut Memo,
) -> NodeLabel {
    let l1 = g1.label(n1);
    let l2 = g2.label(n2);
    match (l1, l2) {
        // In canonical graphs a ⊥ node is the whole graph and was absorbed
        // above; this arm keeps the label rule total for other inputs.
        (NodeLabel::Incoherent, other) | (other, NodeLabel::Incoherent) => {
            crate::graph::refresh_label(other)
        }
        (
            NodeLabel::Node {
                atoms: a1,
                redges: h1,
            },
            NodeLabel::Node {
                atoms: a2,
                redges: h2,
            },
        ) => {
            let atoms = a1.intersection(a2).cloned().collect();
            let mut redges = Vec::new();
            for e1 in h1 {
                for e2 in h2 {
                    if e1.name != e2.name {
                        continue;
                    }
                    redges.push(REdge {
                        name: e1.name.clone(),
                        min: e1.min.min(e2.min),
                        max: e1.max.max(e2.max),
                        graph: product_at(
                            &e1.graph,
                            e1.graph.root(),
                            &e2.graph,
                            e2.graph.root(),
                            memo,
                        ),
                    });
                }
            }
            // An a-edge on one side against an attribute r-edge on the
            // other: reroot the full graph at the a-target.
            for (_, a, m) in g1.out_edges(n1) {
                for e2 in h2 {
                    if let RoleOrAttribute::Attribute(name) = &e2.name {
                        if name == a {
                            redges.push(REdge {
                                name: e2.name.clone(),
                                min: 0,
                                max: Max::Fin(1),
                                graph: product_at(g1, *m, &e2.graph, e2.graph.root(), memo),
                            });
                        }
                    }
                }
            }
            for (_, a, m) in g2.out_edges(n2) {
                for e1 in h1 {
                    if let RoleOrAttribute::Attribute(name) = &e1.name {
                        if name == a {
                            redges.push(REdge {
                                name: e1.name.clone(),
                                min: 0,
                                max: Max::Fin(1),
                                graph: product_at(&e1.graph, e1.graph.root(), g2, *m, memo),
                            });
                        }
                    }
                }
            }
            NodeLabel::Node { atoms, redges }
        }
    }
}

/// Least common subsumer of two concepts under partial attributes: the
/// translation of the canonicalized product of their canonical graphs.
pub fn lcs2(c: &Concept, d: &Concept) -> Concept {
    let gc = canonical_graph(c);
    let gd = canonical_graph(d);
    let p = product(&gc, &gd);
    canonicalize(p).to_concept()
}

/// N-ary lcs as a left fold of [`lcs2`]. The result can be exponentially
/// large in the number of inputs.
pub fn lcs_n(cs: &[Concept]) -> Concept {
    let (first, rest) = cs.split_first().expect("lcs of an empty list");
    rest.iter().fold(first.clone(), |acc, c| lcs2(&acc, c))
}
