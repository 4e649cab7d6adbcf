//! Brute-force finite-model evaluation and countermodel search.
//!
//! This module is the semantic ground truth the structural algorithms are
//! tested against: concepts and graphs are evaluated directly over small
//! finite interpretations, and subsumption claims can be probed by
//! exhausting every interpretation up to a domain bound. Absence of a
//! countermodel is evidence, not proof; presence refutes.

use std::collections::{BTreeMap, BTreeSet};

use crate::concept::{Concept, RoleOrAttribute, SymbolSet};
use crate::graph::{DescriptionGraph, Max, NodeLabel};
use crate::Semantics;

/// A finite interpretation over the domain `{0, …, domain_size−1}`.
///
/// Attribute extensions are partial functions; in `Total` mode every
/// attribute must be defined on the whole domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub domain_size: usize,
    pub mode: Semantics,
    pub concepts: BTreeMap<String, BTreeSet<usize>>,
    pub roles: BTreeMap<String, BTreeSet<(usize, usize)>>,
    pub attrs: BTreeMap<String, BTreeMap<usize, usize>>,
}

impl Interpretation {
    /// Check the structural invariants: nonempty domain, extensions within
    /// range, and totality of attributes in total mode.
    pub fn validate(&self) -> Result<(), String> {
        if self.domain_size == 0 {
            return Err("domain must be nonempty".into());
        }
        let ok = |d: usize| d < self.domain_size;
        for (n, ext) in &self.concepts {
            if !ext.iter().all(|&d| ok(d)) {
                return Err(format!("concept {n} out of range"));
            }
        }
        for (n, ext) in &self.roles {
            if !ext.iter().all(|&(d, e)| ok(d) && ok(e)) {
                return Err(format!("role {n} out of range"));
            }
        }
        for (n, f) in &self.attrs {
            if !f.iter().all(|(&d, &e)| ok(d) && ok(e)) {
                return Err(format!("attribute {n} out of range"));
            }
            if self.mode == Semantics::Total && f.len() != self.domain_size {
                return Err(format!("attribute {n} is not total"));
            }
        }
        Ok(())
    }

    pub fn attr_image(&self, attr: &str, d: usize) -> Option<usize> {
        self.attrs.get(attr).and_then(|f| f.get(&d)).copied()
    }

    /// Image of `d` under a chain of attributes; `None` when any step is
    /// undefined. The empty chain is the identity.
    pub fn chain_image(&self, chain: &[String], d: usize) -> Option<usize> {
        let mut at = d;
        for a in chain {
            at = self.attr_image(a, at)?;
        }
        Some(at)
    }

    /// Successors of `d` under a role or attribute name, as a set.
    fn successors(&self, name: &str, d: usize) -> Vec<usize> {
        if let Some(rel) = self.roles.get(name) {
            return rel
                .iter()
                .filter(|&&(x, _)| x == d)
                .map(|&(_, y)| y)
                .collect();
        }
        match self.attr_image(name, d) {
            Some(y) => vec![y],
            None => Vec::new(),
        }
    }
}

/// Does `d` belong to the extension of `c` under `i`?
pub fn eval_concept(c: &Concept, i: &Interpretation, d: usize) -> bool {
    match c {
        Concept::Top => true,
        Concept::Name(n) => i.concepts.get(n).is_some_and(|ext| ext.contains(&d)),
        Concept::AtLeast(n, r) => i.successors(r, d).len() >= *n as usize,
        Concept::AtMost(n, r) => i.successors(r, d).len() <= *n as usize,
        Concept::And(parts) => parts.iter().all(|p| eval_concept(p, i, d)),
        Concept::All(p, body) => match p {
            RoleOrAttribute::Role(r) => i
                .successors(r, d)
                .into_iter()
                .all(|e| eval_concept(body, i, e)),
            RoleOrAttribute::Attribute(a) => match i.attr_image(a, d) {
                Some(e) => eval_concept(body, i, e),
                None => true,
            },
        },
        Concept::SameAs(u, v) => {
            match (i.chain_image(&u.0, d), i.chain_image(&v.0, d)) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            }
        }
    }
}

/// Does `d` belong to the extension of the graph under `i`?
///
/// The extension is witnessed by a total assignment of domain elements to
/// the nodes reachable from the root (unreachable nodes impose no
/// constraints, matching the convention that graphs are connected). Each
/// r-edge is checked with its own nested assignment.
pub fn eval_graph(g: &DescriptionGraph, i: &Interpretation, d: usize) -> bool {
    let nodes: Vec<_> = g.reachable_from(g.root()).into_iter().collect();
    let root_pos = nodes.iter().position(|&n| n == g.root()).unwrap();
    let m = i.domain_size;
    let mut assign = vec![0usize; nodes.len()];
    assign[root_pos] = d;

    // Odometer over all assignments with the root pinned to d.
    loop {
        if satisfies(g, i, &nodes, &assign) {
            return true;
        }
        let mut k = nodes.len();
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            if k == root_pos {
                continue;
            }
            assign[k] += 1;
            if assign[k] < m {
                break;
            }
            assign[k] = 0;
        }
    }
}

fn satisfies(
    g: &DescriptionGraph,
    i: &Interpretation,
    nodes: &[crate::graph::NodeId],
    assign: &[usize],
) -> bool {
    let pos = |n: crate::graph::NodeId| nodes.iter().position(|&x| x == n).unwrap();
    for (f, a, t) in g.edges() {
        let (Some(fp), Some(tp)) = (
            nodes.iter().position(|x| x == f),
            nodes.iter().position(|x| x == t),
        ) else {
            continue; // edge outside the reachable part
        };
        if i.attr_image(a, assign[fp]) != Some(assign[tp]) {
            return false;
        }
    }
    for &n in nodes {
        if !node_extension_contains(g.label(n), i, assign[pos(n)]) {
            return false;
        }
    }
    true
}

fn node_extension_contains(label: &NodeLabel, i: &Interpretation, d: usize) -> bool {
    match label {
        NodeLabel::Incoherent => false,
        NodeLabel::Node { atoms, redges } => {
            for a in atoms {
                if let crate::graph::Atom::Name(n) = a {
                    if !i.concepts.get(n).is_some_and(|ext| ext.contains(&d)) {
                        return false;
                    }
                }
            }
            for e in redges {
                let succs = i.successors(e.name.name(), d);
                if (succs.len() as u32) < e.min {
                    return false;
                }
                if let Max::Fin(mx) = e.max {
                    if succs.len() as u32 > mx {
                        return false;
                    }
                }
                if !succs.into_iter().all(|s| eval_graph(&e.graph, i, s)) {
                    return false;
                }
            }
            true
        }
    }
}

/// Search for an interpretation and element witnessing `c ⋢ d`, trying
/// domain sizes `1..=max_domain` in order and extension tables in a fixed
/// lexicographic order, so the first hit is reproducible.
///
/// Only the symbols occurring in `c` and `d` are enumerated. Candidate
/// elements are checked at element 0 only: extensions are enumerated in
/// full, so any countermodel can be relabeled to put its witness at 0.
///
/// `None` means no countermodel exists up to the bound — evidence for
/// subsumption, not a proof.
pub fn find_countermodel(
    c: &Concept,
    d: &Concept,
    max_domain: usize,
    mode: Semantics,
) -> Option<(Interpretation, usize)> {
    assert!((1..=5).contains(&max_domain), "domain bound out of range");
    let syms = crate::concept::symbols_of([c, d]);
    let names: Vec<&str> = syms.concepts.iter().map(|s| s.as_str()).collect();
    let roles: Vec<&str> = syms.roles.iter().map(|s| s.as_str()).collect();
    let attrs: Vec<&str> = syms.attributes.iter().map(|s| s.as_str()).collect();
    let cc = compile(c, &syms);
    let cd = compile(d, &syms);

    for m in 1..=max_domain {
        let attr_lut = attr_tables(m, mode);
        let radixes: Vec<u64> = std::iter::repeat_n(1u64 << m, names.len())
            .chain(std::iter::repeat_n(1u64 << (m * m), roles.len()))
            .chain(std::iter::repeat_n(attr_lut.len() as u64, attrs.len()))
            .collect();
        let mut digits = vec![0u64; radixes.len()];
        'tables: loop {
            let tables = Tables {
                m,
                names: &digits[..names.len()],
                roles: &digits[names.len()..names.len() + roles.len()],
                attrs: &digits[names.len() + roles.len()..],
                attr_lut: &attr_lut,
            };
            if eval_compiled(&cc, &tables, 0) && !eval_compiled(&cd, &tables, 0) {
                return Some((reconstruct(&tables, &names, &roles, &attrs, mode), 0));
            }
            // Advance the odometer, rightmost digit fastest.
            if digits.is_empty() {
                break;
            }
            let mut k = digits.len() - 1;
            loop {
                digits[k] += 1;
                if digits[k] < radixes[k] {
                    break;
                }
                digits[k] = 0;
                if k == 0 {
                    break 'tables;
                }
                k -= 1;
            }
        }
    }
    None
}

/// Concept with all symbols resolved to table indices.
enum CTerm {
    Top,
    Name(usize),
    AtLeast(u32, usize),
    AtMost(u32, usize),
    And(Vec<CTerm>),
    AllRole(usize, Box<CTerm>),
    AllAttr(usize, Box<CTerm>),
    SameAs(Vec<usize>, Vec<usize>),
}

fn compile(c: &Concept, syms: &SymbolSet) -> CTerm {
    let name_idx = |n: &str| syms.concepts.iter().position(|s| s == n).unwrap();
    let role_idx = |n: &str| syms.roles.iter().position(|s| s == n).unwrap();
    let attr_idx = |n: &str| syms.attributes.iter().position(|s| s == n).unwrap();
    match c {
        Concept::Top => CTerm::Top,
        Concept::Name(n) => CTerm::Name(name_idx(n)),
        Concept::AtLeast(n, r) => CTerm::AtLeast(*n, role_idx(r)),
        Concept::AtMost(n, r) => CTerm::AtMost(*n, role_idx(r)),
        Concept::And(parts) => CTerm::And(parts.iter().map(|p| compile(p, syms)).collect()),
        Concept::All(p, body) => match p {
            RoleOrAttribute::Role(r) => {
                CTerm::AllRole(role_idx(r), Box::new(compile(body, syms)))
            }
            RoleOrAttribute::Attribute(a) => {
                CTerm::AllAttr(attr_idx(a), Box::new(compile(body, syms)))
            }
        },
        Concept::SameAs(u, v) => CTerm::SameAs(
            u.iter().map(attr_idx).collect(),
            v.iter().map(attr_idx).collect(),
        ),
    }
}

/// All attribute function tables over a domain of size `m`, encoded as
/// `[i8; m]` with −1 for “undefined”. Total mode omits the undefined value.
fn attr_tables(m: usize, mode: Semantics) -> Vec<Vec<i8>> {
    let choices: Vec<i8> = match mode {
        Semantics::Partial => (-1..m as i8).collect(),
        Semantics::Total => (0..m as i8).collect(),
    };
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for t in &out {
            for &c in &choices {
                let mut t2 = t.clone();
                t2.push(c);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

struct Tables<'a> {
    m: usize,
    names: &'a [u64],
    roles: &'a [u64],
    attrs: &'a [u64],
    attr_lut: &'a [Vec<i8>],
}

impl Tables<'_> {
    fn name_holds(&self, idx: usize, d: usize) -> bool {
        self.names[idx] & (1 << d) != 0
    }

    fn role_holds(&self, idx: usize, d: usize, e: usize) -> bool {
        self.roles[idx] & (1 << (d * self.m + e)) != 0
    }

    fn attr_image(&self, idx: usize, d: usize) -> Option<usize> {
        let v = self.attr_lut[self.attrs[idx] as usize][d];
        (v >= 0).then_some(v as usize)
    }
}

fn eval_compiled(t: &CTerm, tab: &Tables, d: usize) -> bool {
    match t {
        CTerm::Top => true,
        CTerm::Name(i) => tab.name_holds(*i, d),
        CTerm::AtLeast(n, r) => {
            (0..tab.m).filter(|&e| tab.role_holds(*r, d, e)).count() >= *n as usize
        }
        CTerm::AtMost(n, r) => {
            (0..tab.m).filter(|&e| tab.role_holds(*r, d, e)).count() <= *n as usize
        }
        CTerm::And(parts) => parts.iter().all(|p| eval_compiled(p, tab, d)),
        CTerm::AllRole(r, body) => (0..tab.m)
            .filter(|&e| tab.role_holds(*r, d, e))
            .all(|e| eval_compiled(body, tab, e)),
        CTerm::AllAttr(a, body) => match tab.attr_image(*a, d) {
            Some(e) => eval_compiled(body, tab, e),
            None => true,
        },
        CTerm::SameAs(u, v) => {
            let walk = |chain: &[usize]| -> Option<usize> {
                let mut at = d;
                for &a in chain {
                    at = tab.attr_image(a, at)?;
                }
                Some(at)
            };
            match (walk(u), walk(v)) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            }
        }
    }
}

fn reconstruct(
    tab: &Tables,
    names: &[&str],
    roles: &[&str],
    attrs: &[&str],
    mode: Semantics,
) -> Interpretation {
    let m = tab.m;
    let concepts = names
        .iter()
        .enumerate()
        .map(|(i, n)| {
            (
                n.to_string(),
                (0..m).filter(|&d| tab.name_holds(i, d)).collect(),
            )
        })
        .collect();
    let role_ext = roles
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let mut rel = BTreeSet::new();
            for d in 0..m {
                for e in 0..m {
                    if tab.role_holds(i, d, e) {
                        rel.insert((d, e));
                    }
                }
            }
            (n.to_string(), rel)
        })
        .collect();
    let attr_ext = attrs
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let mut f = BTreeMap::new();
            for d in 0..m {
                if let Some(e) = tab.attr_image(i, d) {
                    f.insert(d, e);
                }
            }
            (n.to_string(), f)
        })
        .collect();
    Interpretation {
        domain_size: m,
        mode,
        concepts,
        roles: role_ext,
        attrs: attr_ext,
    }
}
