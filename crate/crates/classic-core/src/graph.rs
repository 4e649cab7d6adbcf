//! Description graphs: rooted directed multigraphs encoding concepts.
//!
//! A graph has attribute-labeled edges (*a-edges*) capturing same-as
//! structure, and node labels holding concept-name atoms plus *r-edges*,
//! which carry number bounds and a nested restriction graph. A node may also
//! be labeled ⊥ (incoherent, empty extension).
//!
//! Node ids are drawn from a global counter, so independently constructed
//! graphs never share ids and nested graphs stay disjoint from their parents.
//! Structural comparison therefore goes through [`DescriptionGraph::canon_form`],
//! which relabels nodes by a breadth-first traversal.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::concept::{Concept, RoleOrAttribute};

/// Identifier of a graph node. Fresh ids are globally unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u64);

static NEXT_NODE_ID: AtomicU64 = AtomicU64::new(0);

/// Allocate a node id no existing graph uses.
pub fn fresh_node_id() -> NodeId {
    NodeId(NEXT_NODE_ID.fetch_add(1, Ordering::Relaxed))
}

/// An atom in a node label: ⊤ or a concept name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Top,
    Name(String),
}

impl std::fmt::Display for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Atom::Top => write!(f, "⊤"),
            Atom::Name(n) => write!(f, "{n}"),
        }
    }
}

/// Upper bound of an r-edge: a number or ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Max {
    Fin(u32),
    Inf,
}

impl Max {
    pub fn min(self, other: Max) -> Max {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Max) -> Max {
        std::cmp::max(self, other)
    }
}

impl std::fmt::Display for Max {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Max::Fin(n) => write!(f, "{n}"),
            Max::Inf => write!(f, "inf"),
        }
    }
}

/// An r-edge: a role or attribute with min/max bounds and a nested
/// restriction graph. Attribute r-edges always have `min = 0` and
/// `max ∈ {0, 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct REdge {
    pub name: RoleOrAttribute,
    pub min: u32,
    pub max: Max,
    pub graph: DescriptionGraph,
}

impl REdge {
    pub fn role(name: &str, min: u32, max: Max, graph: DescriptionGraph) -> REdge {
        REdge {
            name: RoleOrAttribute::Role(name.to_string()),
            min,
            max,
            graph,
        }
    }

    pub fn attribute(name: &str, max: u32, graph: DescriptionGraph) -> REdge {
        debug_assert!(max <= 1);
        REdge {
            name: RoleOrAttribute::Attribute(name.to_string()),
            min: 0,
            max: Max::Fin(max),
            graph,
        }
    }
}

/// Label of a node: incoherent, or atoms plus r-edges.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeLabel {
    Incoherent,
    Node {
        atoms: BTreeSet<Atom>,
        redges: Vec<REdge>,
    },
}

impl NodeLabel {
    pub fn top() -> NodeLabel {
        NodeLabel::with_atoms([Atom::Top])
    }

    pub fn with_atoms<I: IntoIterator<Item = Atom>>(atoms: I) -> NodeLabel {
        NodeLabel::Node {
            atoms: atoms.into_iter().collect(),
            redges: Vec::new(),
        }
    }

    pub fn is_incoherent(&self) -> bool {
        matches!(self, NodeLabel::Incoherent)
    }

    pub fn redges(&self) -> &[REdge] {
        match self {
            NodeLabel::Incoherent => &[],
            NodeLabel::Node { redges, .. } => redges,
        }
    }

    pub fn atoms(&self) -> Option<&BTreeSet<Atom>> {
        match self {
            NodeLabel::Incoherent => None,
            NodeLabel::Node { atoms, .. } => Some(atoms),
        }
    }
}

/// Merge two node labels: ⊥ absorbs, otherwise atoms and r-edges are unioned.
pub(crate) fn merge_labels(a: NodeLabel, b: NodeLabel) -> NodeLabel {
    match (a, b) {
        (NodeLabel::Incoherent, _) | (_, NodeLabel::Incoherent) => NodeLabel::Incoherent,
        (
            NodeLabel::Node {
                atoms: mut a1,
                redges: mut r1,
            },
            NodeLabel::Node {
                atoms: a2,
                redges: r2,
            },
        ) => {
            a1.extend(a2);
            r1.extend(r2);
            NodeLabel::Node {
                atoms: a1,
                redges: r1,
            }
        }
    }
}

/// A rooted description graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptionGraph {
    root: NodeId,
    labels: BTreeMap<NodeId, NodeLabel>,
    edges: BTreeSet<(NodeId, String, NodeId)>,
}

impl DescriptionGraph {
    /// A single fresh node with the given label and no edges.
    pub fn single(label: NodeLabel) -> DescriptionGraph {
        let root = fresh_node_id();
        let mut labels = BTreeMap::new();
        labels.insert(root, label);
        DescriptionGraph {
            root,
            labels,
            edges: BTreeSet::new(),
        }
    }

    /// The graph of ⊤: one node labeled {⊤}.
    pub fn top() -> DescriptionGraph {
        DescriptionGraph::single(NodeLabel::top())
    }

    /// The graph of ⊥: one incoherent node.
    pub fn incoherent() -> DescriptionGraph {
        DescriptionGraph::single(NodeLabel::Incoherent)
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.labels.keys().copied()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_node(&self, n: NodeId) -> bool {
        self.labels.contains_key(&n)
    }

    pub fn label(&self, n: NodeId) -> &NodeLabel {
        &self.labels[&n]
    }

    pub(crate) fn label_mut(&mut self, n: NodeId) -> &mut NodeLabel {
        self.labels.get_mut(&n).expect("node id not in graph")
    }

    /// Set (or overwrite) the label of an existing or new node id.
    pub fn set_label(&mut self, n: NodeId, l: NodeLabel) {
        self.labels.insert(n, l);
    }

    /// Add a fresh node with the given label; returns its id.
    pub fn add_node(&mut self, label: NodeLabel) -> NodeId {
        let id = fresh_node_id();
        self.labels.insert(id, label);
        id
    }

    /// Add an a-edge between existing nodes.
    pub fn add_edge(&mut self, from: NodeId, attr: &str, to: NodeId) {
        debug_assert!(self.labels.contains_key(&from) && self.labels.contains_key(&to));
        self.edges.insert((from, attr.to_string(), to));
    }

    pub fn edges(&self) -> impl Iterator<Item = &(NodeId, String, NodeId)> {
        self.edges.iter()
    }

    /// Outgoing a-edges of `n`, sorted by attribute then target.
    pub fn out_edges(&self, n: NodeId) -> impl Iterator<Item = &(NodeId, String, NodeId)> {
        self.edges
            .range((n, String::new(), NodeId(0))..)
            .take_while(move |(f, _, _)| *f == n)
    }

    /// The unique `attr`-successor of `n` in a deterministic graph; in a
    /// nondeterministic graph, the least target.
    pub fn successor(&self, n: NodeId, attr: &str) -> Option<NodeId> {
        self.out_edges(n)
            .find(|(_, a, _)| a == attr)
            .map(|&(_, _, t)| t)
    }

    /// Follow `chain` from `from`, one deterministic step per attribute.
    pub fn walk(&self, from: NodeId, chain: &[String]) -> Option<NodeId> {
        let mut at = from;
        for a in chain {
            at = self.successor(at, a)?;
        }
        Some(at)
    }

    /// Is the root labeled ⊥? Canonical graphs are incoherent exactly when
    /// they are the single-node ⊥ graph.
    pub fn is_incoherent(&self) -> bool {
        self.labels[&self.root].is_incoherent()
    }

    pub(crate) fn is_single_incoherent(&self) -> bool {
        self.labels.len() == 1 && self.edges.is_empty() && self.is_incoherent()
    }

    /// One node, no edges, no r-edges, atoms empty or {⊤}: the shape of a
    /// vacuous restriction graph.
    pub fn is_top_graph(&self) -> bool {
        if self.labels.len() != 1 || !self.edges.is_empty() {
            return false;
        }
        match &self.labels[&self.root] {
            NodeLabel::Incoherent => false,
            NodeLabel::Node { atoms, redges } => {
                redges.is_empty() && atoms.iter().all(|a| *a == Atom::Top)
            }
        }
    }

    /// No atoms beyond ⊤ and no r-edges anywhere: the graphs of the same-as
    /// fragment.
    pub fn is_s_graph(&self) -> bool {
        self.labels.values().all(|l| match l {
            NodeLabel::Incoherent => false,
            NodeLabel::Node { atoms, redges } => {
                redges.is_empty() && atoms.iter().all(|a| *a == Atom::Top)
            }
        })
    }

    /// Attribute names occurring on a-edges of this graph (top level only).
    pub fn edge_alphabet(&self) -> BTreeSet<String> {
        self.edges.iter().map(|(_, a, _)| a.clone()).collect()
    }

    /// Nodes reachable from `from` by a-edges.
    pub fn reachable_from(&self, from: NodeId) -> BTreeSet<NodeId> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(from);
        queue.push_back(from);
        while let Some(n) = queue.pop_front() {
            for (_, _, t) in self.out_edges(n) {
                if seen.insert(*t) {
                    queue.push_back(*t);
                }
            }
        }
        seen
    }

    /// Drop nodes unreachable from the root, recursively in nested graphs.
    pub fn prune_unreachable(mut self) -> DescriptionGraph {
        let keep = self.reachable_from(self.root);
        self.labels.retain(|id, _| keep.contains(id));
        self.edges
            .retain(|(f, _, t)| keep.contains(f) && keep.contains(t));
        for label in self.labels.values_mut() {
            if let NodeLabel::Node { redges, .. } = label {
                for e in redges.iter_mut() {
                    let sub = std::mem::replace(&mut e.graph, DescriptionGraph::top());
                    e.graph = sub.prune_unreachable();
                }
            }
        }
        self
    }

    /// A copy of the part of this graph reachable from `from`, rooted there,
    /// with fresh node ids.
    pub fn reachable_copy(&self, from: NodeId) -> DescriptionGraph {
        let keep = self.reachable_from(from);
        let labels = keep
            .iter()
            .map(|id| (*id, self.labels[id].clone()))
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|(f, _, t)| keep.contains(f) && keep.contains(t))
            .cloned()
            .collect();
        DescriptionGraph {
            root: from,
            labels,
            edges,
        }
        .refresh_ids()
    }

    /// Deep-rename every node (including nested graphs) to fresh ids.
    /// Relative id order is preserved, keeping traversal tie-breaks stable.
    pub fn refresh_ids(&self) -> DescriptionGraph {
        let map: BTreeMap<NodeId, NodeId> = self
            .labels
            .keys()
            .map(|&old| (old, fresh_node_id()))
            .collect();
        let labels = self
            .labels
            .iter()
            .map(|(old, l)| (map[old], refresh_label(l)))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|(f, a, t)| (map[f], a.clone(), map[t]))
            .collect();
        DescriptionGraph {
            root: map[&self.root],
            labels,
            edges,
        }
    }

    /// Merge two graphs: their roots become one node with the union of the
    /// labels; everything else is kept side by side. The right operand is
    /// id-refreshed first, so the recursive node sets cannot collide.
    pub fn merge(g1: DescriptionGraph, g2: DescriptionGraph) -> DescriptionGraph {
        let g2 = g2.refresh_ids();
        let root = g1.root;
        let mut labels = g1.labels;
        let l1 = labels.remove(&root).expect("root label");
        let l2 = g2.labels[&g2.root].clone();
        labels.insert(root, merge_labels(l1, l2));
        for (id, l) in g2.labels {
            if id != g2.root {
                labels.insert(id, l);
            }
        }
        let mut edges = g1.edges;
        for (f, a, t) in g2.edges {
            let f = if f == g2.root { root } else { f };
            let t = if t == g2.root { root } else { t };
            edges.insert((f, a, t));
        }
        DescriptionGraph { root, labels, edges }
    }

    /// Merge `gone` into `keep` within this graph: labels union (⊥ absorbs)
    /// and every edge occurrence of `gone` is rewritten to `keep`.
    pub(crate) fn merge_nodes(&mut self, keep: NodeId, gone: NodeId) {
        debug_assert_ne!(keep, gone);
        let lg = self.labels.remove(&gone).expect("node label");
        let lk = self.labels.remove(&keep).expect("node label");
        self.labels.insert(keep, merge_labels(lk, lg));
        let edges = std::mem::take(&mut self.edges);
        self.edges = edges
            .into_iter()
            .map(|(f, a, t)| {
                let f = if f == gone { keep } else { f };
                let t = if t == gone { keep } else { t };
                (f, a, t)
            })
            .collect();
        if self.root == gone {
            self.root = keep;
        }
    }

    /// Translate a concept into its description graph.
    pub fn from_concept(c: &Concept) -> DescriptionGraph {
        match c {
            Concept::Top => DescriptionGraph::top(),
            Concept::Name(n) => {
                DescriptionGraph::single(NodeLabel::with_atoms([Atom::Name(n.clone())]))
            }
            Concept::AtLeast(n, r) => single_with_redge(REdge::role(
                r,
                *n,
                Max::Inf,
                DescriptionGraph::top(),
            )),
            Concept::AtMost(n, r) => single_with_redge(REdge::role(
                r,
                0,
                Max::Fin(*n),
                DescriptionGraph::top(),
            )),
            Concept::All(p, body) => {
                let nested = DescriptionGraph::from_concept(body);
                let redge = match p {
                    RoleOrAttribute::Role(r) => REdge::role(r, 0, Max::Inf, nested),
                    RoleOrAttribute::Attribute(a) => REdge::attribute(a, 1, nested),
                };
                single_with_redge(redge)
            }
            Concept::SameAs(u, v) => {
                let mut g = DescriptionGraph::single(NodeLabel::top());
                let root = g.root;
                let end = if u.is_empty() || v.is_empty() {
                    root
                } else {
                    g.add_node(NodeLabel::top())
                };
                g.add_path(root, &u.0, end);
                g.add_path(root, &v.0, end);
                g
            }
            Concept::And(parts) => {
                let mut graphs = parts.iter().map(DescriptionGraph::from_concept);
                let first = graphs.next().expect("conjunction is nonempty");
                graphs.fold(first, DescriptionGraph::merge)
            }
        }
    }

    /// Add a path of fresh intermediate nodes from `from` to `to` labeled by
    /// `chain`. An empty chain adds nothing (and requires `from == to`).
    fn add_path(&mut self, from: NodeId, chain: &[String], to: NodeId) {
        if chain.is_empty() {
            debug_assert_eq!(from, to);
            return;
        }
        let mut at = from;
        for a in &chain[..chain.len() - 1] {
            let next = self.add_node(NodeLabel::top());
            self.add_edge(at, a, next);
            at = next;
        }
        self.add_edge(at, chain.last().unwrap(), to);
    }

    /// Translate back to a concept via a spanning tree: one `v↓v` per tree
    /// leaf, one `v₁∘a↓v₂` per non-tree edge, and one value restriction per
    /// node with a nontrivial label. Only the part reachable from the root
    /// is translated.
    pub fn to_concept(&self) -> Concept {
        if self.is_incoherent() {
            return Concept::bottom();
        }
        let st = self.spanning_tree();
        let mut conjuncts = Vec::new();
        for n in &st.order {
            if st.children[n] == 0 {
                let path = &st.path[n];
                if !path.is_empty() {
                    conjuncts.push(Concept::SameAs(
                        crate::concept::AttrChain(path.clone()),
                        crate::concept::AttrChain(path.clone()),
                    ));
                }
            }
        }
        for (f, a, t) in &st.non_tree {
            let mut left = st.path[f].clone();
            left.push(a.clone());
            conjuncts.push(Concept::SameAs(
                crate::concept::AttrChain(left),
                crate::concept::AttrChain(st.path[t].clone()),
            ));
        }
        for n in &st.order {
            let cn = label_to_concept(&self.labels[n]);
            if cn == Concept::Top {
                continue;
            }
            // The root's label lands at the empty path; splice its
            // conjuncts instead of nesting a conjunction. The ⊥ sugar
            // stays intact so it prints back as BOTTOM.
            let splice = st.path[n].is_empty() && !cn.is_bottom();
            match (splice, cn) {
                (true, Concept::And(parts)) => conjuncts.extend(parts),
                (_, cn) => conjuncts.push(Concept::all_attr_chain(&st.path[n], cn)),
            }
        }
        Concept::and(conjuncts)
    }

    /// Translation for same-as graphs under total attributes: `v↓v`
    /// conjuncts are vacuous and omitted, and labels must be trivial.
    pub fn to_s_concept(&self) -> Result<Concept, NotSGraph> {
        if !self.is_s_graph() {
            return Err(NotSGraph);
        }
        let st = self.spanning_tree();
        let mut conjuncts = Vec::new();
        for (f, a, t) in &st.non_tree {
            let mut left = st.path[f].clone();
            left.push(a.clone());
            conjuncts.push(Concept::SameAs(
                crate::concept::AttrChain(left),
                crate::concept::AttrChain(st.path[t].clone()),
            ));
        }
        Ok(Concept::and(conjuncts))
    }

    /// Breadth-first spanning tree from the root, visiting edges in
    /// (attribute, target-id) order.
    fn spanning_tree(&self) -> SpanningTree {
        let mut order = Vec::new();
        let mut path: BTreeMap<NodeId, Vec<String>> = BTreeMap::new();
        let mut children: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut non_tree = Vec::new();
        let mut queue = VecDeque::new();

        path.insert(self.root, Vec::new());
        children.insert(self.root, 0);
        order.push(self.root);
        queue.push_back(self.root);
        while let Some(n) = queue.pop_front() {
            for (f, a, t) in self.out_edges(n) {
                if path.contains_key(t) {
                    non_tree.push((*f, a.clone(), *t));
                } else {
                    let mut p = path[f].clone();
                    p.push(a.clone());
                    path.insert(*t, p);
                    children.insert(*t, 0);
                    *children.get_mut(f).unwrap() += 1;
                    order.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        non_tree.sort();
        SpanningTree {
            order,
            path,
            children,
            non_tree,
        }
    }

    /// Canonical structural form: nodes relabeled 0.. in breadth-first
    /// order. Two graphs are isomorphic (up to node ids) iff their forms are
    /// equal. Intended for deterministic graphs, where the traversal order
    /// is unambiguous.
    pub fn canon_form(&self) -> CanonForm {
        let mut index: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut worklist = VecDeque::new();
        index.insert(self.root, 0);
        worklist.push_back(self.root);
        let mut bfs = vec![self.root];
        while let Some(n) = worklist.pop_front() {
            for (_, _, t) in self.out_edges(n) {
                if !index.contains_key(t) {
                    index.insert(*t, bfs.len());
                    bfs.push(*t);
                    worklist.push_back(*t);
                }
            }
        }
        let mut edges: Vec<(usize, String, usize)> = self
            .edges
            .iter()
            .filter(|(f, _, t)| index.contains_key(f) && index.contains_key(t))
            .map(|(f, a, t)| (index[f], a.clone(), index[t]))
            .collect();
        edges.sort();
        let labels = bfs
            .iter()
            .map(|n| match &self.labels[n] {
                NodeLabel::Incoherent => CanonLabel::Incoherent,
                NodeLabel::Node { atoms, redges } => {
                    let mut rs: Vec<(RoleOrAttribute, u32, Max, CanonForm)> = redges
                        .iter()
                        .map(|e| (e.name.clone(), e.min, e.max, e.graph.canon_form()))
                        .collect();
                    rs.sort();
                    CanonLabel::Node {
                        atoms: atoms.iter().cloned().collect(),
                        redges: rs,
                    }
                }
            })
            .collect();
        CanonForm { labels, edges }
    }

    /// Isomorphism up to node ids, on the reachable parts.
    pub fn isomorphic(&self, other: &DescriptionGraph) -> bool {
        self.canon_form() == other.canon_form()
    }

    /// Total size: nodes, a-edges, and nested graphs, recursively.
    pub fn recursive_size(&self) -> usize {
        let mut size = self.labels.len() + self.edges.len();
        for l in self.labels.values() {
            for e in l.redges() {
                size += 1 + e.graph.recursive_size();
            }
        }
        size
    }

    /// Nodes of this graph and of all nested graphs.
    pub fn recursive_node_count(&self) -> usize {
        let mut count = self.labels.len();
        for l in self.labels.values() {
            for e in l.redges() {
                count += e.graph.recursive_node_count();
            }
        }
        count
    }

    /// Render as a Graphviz digraph: a-edges solid and labeled with their
    /// attribute, r-edges dashed and labeled `p [m,M]`, incoherent nodes
    /// filled red, the root double-circled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph description_graph {\n  rankdir=LR;\n");
        let mut counter = 0usize;
        self.dot_into(&mut out, &mut counter, true);
        out.push_str("}\n");
        out
    }

    fn dot_into(&self, out: &mut String, counter: &mut usize, is_root_graph: bool) {
        let mut index: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut bfs = Vec::new();
        let mut queue = VecDeque::new();
        index.insert(self.root, *counter);
        *counter += 1;
        bfs.push(self.root);
        queue.push_back(self.root);
        while let Some(n) = queue.pop_front() {
            for (_, _, t) in self.out_edges(n) {
                if !index.contains_key(t) {
                    index.insert(*t, *counter);
                    *counter += 1;
                    bfs.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        for n in &bfs {
            let idx = index[n];
            let mut attrs = Vec::new();
            match &self.labels[n] {
                NodeLabel::Incoherent => {
                    attrs.push("label=\"⊥\"".to_string());
                    attrs.push("style=filled".to_string());
                    attrs.push("fillcolor=red".to_string());
                }
                NodeLabel::Node { atoms, .. } => {
                    let text = atoms
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(", ");
                    attrs.push(format!("label=\"{text}\""));
                }
            }
            if *n == self.root && is_root_graph {
                attrs.push("shape=doublecircle".to_string());
            }
            let _ = writeln!(out, "  n{idx} [{}];", attrs.join(", "));
        }
        for (f, a, t) in &self.edges {
            if let (Some(fi), Some(ti)) = (index.get(f), index.get(t)) {
                let _ = writeln!(out, "  n{fi} -> n{ti} [label=\"{a}\"];");
            }
        }
        for n in &bfs {
            let idx = index[n];
            for e in self.labels[n].redges() {
                let sub_root = *counter;
                e.graph.dot_into(out, counter, false);
                let _ = writeln!(
                    out,
                    "  n{idx} -> n{sub_root} [style=dashed, label=\"{} [{},{}]\"];",
                    e.name.name(),
                    e.min,
                    e.max
                );
            }
        }
    }
}

/// Error from [`DescriptionGraph::to_s_concept`] on graphs with atoms or
/// r-edges.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph is not a same-as graph (it carries atoms or r-edges)")]
pub struct NotSGraph;

struct SpanningTree {
    order: Vec<NodeId>,
    path: BTreeMap<NodeId, Vec<String>>,
    children: BTreeMap<NodeId, usize>,
    non_tree: Vec<(NodeId, String, NodeId)>,
}

fn single_with_redge(redge: REdge) -> DescriptionGraph {
    let mut atoms = BTreeSet::new();
    atoms.insert(Atom::Top);
    DescriptionGraph::single(NodeLabel::Node {
        atoms,
        redges: vec![redge],
    })
}

pub(crate) fn refresh_label(l: &NodeLabel) -> NodeLabel {
    match l {
        NodeLabel::Incoherent => NodeLabel::Incoherent,
        NodeLabel::Node { atoms, redges } => NodeLabel::Node {
            atoms: atoms.clone(),
            redges: redges
                .iter()
                .map(|e| REdge {
                    name: e.name.clone(),
                    min: e.min,
                    max: e.max,
                    graph: e.graph.refresh_ids(),
                })
                .collect(),
        },
    }
}

fn label_to_concept(l: &NodeLabel) -> Concept {
    match l {
        NodeLabel::Incoherent => Concept::bottom(),
        NodeLabel::Node { atoms, redges } => {
            let mut parts = Vec::new();
            for a in atoms {
                if let Atom::Name(n) = a {
                    parts.push(Concept::Name(n.clone()));
                }
            }
            for e in redges {
                match &e.name {
                    RoleOrAttribute::Role(r) => {
                        if e.min > 0 {
                            parts.push(Concept::AtLeast(e.min, r.clone()));
                        }
                        if let Max::Fin(m) = e.max {
                            parts.push(Concept::AtMost(m, r.clone()));
                        }
                        if !e.graph.is_top_graph() {
                            parts.push(Concept::all_role(r, e.graph.to_concept()));
                        }
                    }
                    RoleOrAttribute::Attribute(a) => {
                        // max = 0 means "no value": ∀a.⊥ carries that on its
                        // own, and any further restriction is then vacuous.
                        if e.max == Max::Fin(0) {
                            parts.push(Concept::all_attr(a, Concept::bottom()));
                        } else if !e.graph.is_top_graph() {
                            parts.push(Concept::all_attr(a, e.graph.to_concept()));
                        }
                    }
                }
            }
            Concept::and(parts)
        }
    }
}

/// Structural form of a graph after breadth-first relabeling; node 0 is the
/// root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonForm {
    pub labels: Vec<CanonLabel>,
    pub edges: Vec<(usize, String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CanonLabel {
    Incoherent,
    Node {
        atoms: Vec<Atom>,
        redges: Vec<(RoleOrAttribute, u32, Max, CanonForm)>,
    },
}
