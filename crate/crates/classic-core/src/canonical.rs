//! Normalization of description graphs to canonical form.
//!
//! A canonical graph is deterministic: every node has at most one outgoing
//! a-edge or r-edge per role or attribute name. Canonicalization applies
//! nine rewrite rules to a fixpoint:
//!
//! 1. a ⊥ node anywhere makes the whole graph the ⊥ graph;
//! 2. an r-edge with min > max makes its node ⊥;
//! 3. every coherent node carries ⊤ among its atoms;
//! 4. an r-edge with a ⊥ restriction graph gets max 0;
//! 5. an r-edge with max 0 gets the ⊥ restriction graph;
//! 6. vacuous r-edges (0, ∞, ⊤-graph) are dropped;
//! 7. two r-edges with the same role are merged;
//! 8. two a-edges with the same attribute out of one node are merged;
//! 9. an attribute r-edge is lifted to an a-edge when the node already has
//!    an a-edge for that attribute and the restriction bound permits it.
//!
//! Nested restriction graphs are normalized before their parents, and each
//! level runs the rules in the order above until none applies. Rule 5
//! establishes the precondition of rule 9, and the a-edge created by a lift
//! is folded in by rule 8.

use crate::graph::{DescriptionGraph, Max, NodeId, NodeLabel};

/// Exhaustively apply the normalization rules. The result is canonical and
/// semantically equivalent to the input.
///
/// # Panics
///
/// Panics if the internal step budget (cubic in the input size) is
/// exhausted, which would indicate a rule-scheduling bug rather than a
/// property of the input.
pub fn canonicalize(g: DescriptionGraph) -> DescriptionGraph {
    let size = g.recursive_size() as u64 + 4;
    let mut budget = 64 * size * size * size;
    canon_rec(g, &mut budget)
}

fn spend(budget: &mut u64) {
    assert!(
        *budget > 0,
        "canonicalization exceeded its step budget; rule scheduling bug"
    );
    *budget -= 1;
}

fn canon_rec(mut g: DescriptionGraph, budget: &mut u64) -> DescriptionGraph {
    'pass: loop {
        // Nested graphs first, so rules 4 and 9 see canonical restrictions.
        let ids: Vec<NodeId> = g.node_ids().collect();
        for &n in &ids {
            let count = g.label(n).redges().len();
            for k in 0..count {
                let needs_work = {
                    let NodeLabel::Node { redges, .. } = g.label(n) else {
                        break;
                    };
                    !is_canonical(&redges[k].graph)
                };
                if needs_work {
                    let NodeLabel::Node { redges, .. } = g.label_mut(n) else {
                        unreachable!()
                    };
                    let sub = std::mem::replace(&mut redges[k].graph, DescriptionGraph::top());
                    let sub = canon_rec(sub, budget);
                    let NodeLabel::Node { redges, .. } = g.label_mut(n) else {
                        unreachable!()
                    };
                    redges[k].graph = sub;
                }
            }
        }

        // Rule 1: a ⊥ node makes the whole graph ⊥.
        if !g.is_single_incoherent() && ids.iter().any(|&n| g.label(n).is_incoherent()) {
            spend(budget);
            g = DescriptionGraph::incoherent();
            continue 'pass;
        }

        // Rule 2: min > max marks the node ⊥.
        for &n in &ids {
            let conflict = g
                .label(n)
                .redges()
                .iter()
                .any(|e| Max::Fin(e.min) > e.max);
            if conflict {
                spend(budget);
                g.set_label(n, NodeLabel::Incoherent);
                continue 'pass;
            }
        }

        // Rule 3: ⊤ belongs to every coherent node's atoms.
        let mut added_top = false;
        for &n in &ids {
            if let NodeLabel::Node { atoms, .. } = g.label_mut(n) {
                if atoms.insert(crate::graph::Atom::Top) {
                    added_top = true;
                }
            }
        }
        if added_top {
            spend(budget);
            continue 'pass;
        }

        // Rule 4: a ⊥ restriction graph caps max at 0.
        for &n in &ids {
            if let NodeLabel::Node { redges, .. } = g.label_mut(n) {
                for e in redges.iter_mut() {
                    if e.graph.is_incoherent() && e.max != Max::Fin(0) {
                        e.max = Max::Fin(0);
                        spend(budget);
                        continue 'pass;
                    }
                }
            }
        }

        // Rule 5: max 0 incoherence-marks the restriction graph.
        for &n in &ids {
            if let NodeLabel::Node { redges, .. } = g.label_mut(n) {
                for e in redges.iter_mut() {
                    if e.max == Max::Fin(0) && !e.graph.is_incoherent() {
                        e.graph = DescriptionGraph::incoherent();
                        spend(budget);
                        continue 'pass;
                    }
                }
            }
        }

        // Rule 6: drop vacuous (r, 0, ∞, ⊤-graph) r-edges.
        for &n in &ids {
            if let NodeLabel::Node { redges, .. } = g.label_mut(n) {
                if let Some(k) = redges
                    .iter()
                    .position(|e| e.min == 0 && e.max == Max::Inf && e.graph.is_top_graph())
                {
                    redges.remove(k);
                    spend(budget);
                    continue 'pass;
                }
            }
        }

        // Rule 7: merge r-edges that share a name.
        for &n in &ids {
            let dup = {
                let redges = g.label(n).redges();
                let mut found = None;
                'scan: for i in 0..redges.len() {
                    for j in i + 1..redges.len() {
                        if redges[i].name == redges[j].name {
                            found = Some((i, j));
                            break 'scan;
                        }
                    }
                }
                found
            };
            if let Some((i, j)) = dup {
                spend(budget);
                let NodeLabel::Node { redges, .. } = g.label_mut(n) else {
                    unreachable!()
                };
                let right = redges.remove(j);
                let left = &mut redges[i];
                left.min = left.min.max(right.min);
                left.max = left.max.min(right.max);
                let lg = std::mem::replace(&mut left.graph, DescriptionGraph::top());
                left.graph = DescriptionGraph::merge(lg, right.graph);
                continue 'pass;
            }
        }

        // Rule 9: lift an attribute r-edge beside an a-edge for the same
        // attribute. Requires max = 1, or max = 0 with a ⊥ restriction;
        // rule 5 has already arranged the latter.
        for &n in &ids {
            let lift = {
                let mut found = None;
                for (_, a, _) in g.out_edges(n) {
                    if let Some(k) = g.label(n).redges().iter().position(|e| {
                        e.name.name() == a.as_str()
                            && (e.max == Max::Fin(1)
                                || (e.max == Max::Fin(0) && e.graph.is_incoherent()))
                    }) {
                        found = Some((a.clone(), k));
                        break;
                    }
                }
                found
            };
            if let Some((attr, k)) = lift {
                spend(budget);
                let NodeLabel::Node { redges, .. } = g.label_mut(n) else {
                    unreachable!()
                };
                let edge = redges.remove(k);
                graft_subgraph(&mut g, n, &attr, edge.graph);
                continue 'pass;
            }
        }

        // Rule 8: merge a-edges that share source and attribute.
        for &n in &ids {
            let mut prev: Option<(String, NodeId)> = None;
            let mut pair = None;
            for (_, a, t) in g.out_edges(n) {
                if let Some((pa, pt)) = &prev {
                    if pa == a && pt != t {
                        pair = Some((std::cmp::min(*pt, *t), std::cmp::max(*pt, *t)));
                        break;
                    }
                }
                prev = Some((a.clone(), *t));
            }
            if let Some((keep, gone)) = pair {
                spend(budget);
                g.merge_nodes(keep, gone);
                continue 'pass;
            }
        }

        break;
    }
    g
}

/// Splice a nested graph's nodes and edges into `g` and connect `at` to its
/// root by an `attr`-labeled a-edge.
fn graft_subgraph(g: &mut DescriptionGraph, at: NodeId, attr: &str, sub: DescriptionGraph) {
    let sub_root = sub.root();
    for n in sub.node_ids().collect::<Vec<_>>() {
        g.set_label(n, sub.label(n).clone());
    }
    for (f, a, t) in sub.edges() {
        g.add_edge(*f, a, *t);
    }
    g.add_edge(at, attr, sub_root);
}

/// Does no normalization rule apply anywhere in the graph?
pub fn is_canonical(g: &DescriptionGraph) -> bool {
    if g.node_ids().any(|n| g.label(n).is_incoherent()) {
        // Rule 1 applies unless the graph already is the ⊥ graph.
        return g.is_single_incoherent();
    }
    for n in g.node_ids() {
        let NodeLabel::Node { atoms, redges } = g.label(n) else {
            unreachable!()
        };
        if !atoms.contains(&crate::graph::Atom::Top) {
            return false; // rule 3
        }
        for (i, e) in redges.iter().enumerate() {
            if Max::Fin(e.min) > e.max {
                return false; // rule 2
            }
            if e.graph.is_incoherent() && e.max != Max::Fin(0) {
                return false; // rule 4
            }
            if e.max == Max::Fin(0) && !e.graph.is_incoherent() {
                return false; // rule 5
            }
            if e.min == 0 && e.max == Max::Inf && e.graph.is_top_graph() {
                return false; // rule 6
            }
            if redges[i + 1..].iter().any(|o| o.name == e.name) {
                return false; // rule 7
            }
            if !is_canonical(&e.graph) {
                return false;
            }
        }
        let mut prev: Option<(&str, NodeId)> = None;
        for (_, a, t) in g.out_edges(n) {
            if let Some((pa, pt)) = prev {
                if pa == a.as_str() && pt != *t {
                    return false; // rule 8
                }
            }
            prev = Some((a.as_str(), *t));
            if redges.iter().any(|e| {
                e.name.name() == a.as_str()
                    && (e.max == Max::Fin(1) || (e.max == Max::Fin(0) && e.graph.is_incoherent()))
            }) {
                return false; // rule 9
            }
        }
    }
    true
}
