//! Shared generators for the integration suites: seeded random concepts,
//! same-as concepts, graphs, and interpretations.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use classic_core::interp::Interpretation;
use classic_core::{symbols_of, Concept, DescriptionGraph, NodeLabel, Semantics, SymbolSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small vocabulary for random concept generation.
#[derive(Clone)]
pub struct Profile {
    pub names: Vec<&'static str>,
    pub roles: Vec<&'static str>,
    pub attrs: Vec<&'static str>,
}

impl Profile {
    pub fn tiny_with_role() -> Profile {
        Profile {
            names: vec!["A"],
            roles: vec!["r"],
            attrs: vec!["f"],
        }
    }

    pub fn tiny_two_attrs() -> Profile {
        Profile {
            names: vec!["A"],
            roles: vec![],
            attrs: vec!["f", "g"],
        }
    }

    pub fn medium() -> Profile {
        Profile {
            names: vec!["A", "B"],
            roles: vec!["r"],
            attrs: vec!["f", "g"],
        }
    }
}

pub fn random_chain(rng: &mut ChaCha8Rng, attrs: &[&str], max_len: usize) -> Vec<String> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| attrs[rng.gen_range(0..attrs.len())].to_string())
        .collect()
}

/// A random CLASSIC⁻ concept of bounded value-restriction depth.
pub fn random_concept(rng: &mut ChaCha8Rng, profile: &Profile, depth: usize) -> Concept {
    let mut choices: Vec<u32> = vec![0, 1]; // Top, SameAs
    if !profile.names.is_empty() {
        choices.push(2);
    }
    if !profile.roles.is_empty() {
        choices.extend([3, 4]);
    }
    choices.push(5); // And
    if depth > 0 {
        choices.push(6); // All
    }
    match choices[rng.gen_range(0..choices.len())] {
        0 => Concept::Top,
        1 => {
            if profile.attrs.is_empty() {
                Concept::Top
            } else {
                Concept::SameAs(
                    classic_core::AttrChain(random_chain(rng, &profile.attrs, 2)),
                    classic_core::AttrChain(random_chain(rng, &profile.attrs, 2)),
                )
            }
        }
        2 => Concept::Name(profile.names[rng.gen_range(0..profile.names.len())].to_string()),
        3 => Concept::AtLeast(
            rng.gen_range(0..=3),
            profile.roles[rng.gen_range(0..profile.roles.len())].to_string(),
        ),
        4 => Concept::AtMost(
            rng.gen_range(0..=3),
            profile.roles[rng.gen_range(0..profile.roles.len())].to_string(),
        ),
        5 => {
            let n = rng.gen_range(2..=3);
            Concept::And(
                (0..n)
                    .map(|_| random_concept(rng, profile, depth.saturating_sub(1)))
                    .collect(),
            )
        }
        _ => {
            let body = random_concept(rng, profile, depth - 1);
            let use_attr =
                profile.roles.is_empty() || (!profile.attrs.is_empty() && rng.gen_bool(0.5));
            if use_attr {
                Concept::all_attr(profile.attrs[rng.gen_range(0..profile.attrs.len())], body)
            } else {
                Concept::all_role(profile.roles[rng.gen_range(0..profile.roles.len())], body)
            }
        }
    }
}

/// A weakened variant of `c`: more likely to be subsumed by it.
pub fn weaken(rng: &mut ChaCha8Rng, c: &Concept) -> Concept {
    match c {
        Concept::And(parts) if parts.len() > 1 => {
            // Keep a random nonempty subset of conjuncts.
            let keep: Vec<Concept> = parts
                .iter()
                .filter(|_| rng.gen_bool(0.6))
                .cloned()
                .collect();
            if keep.is_empty() {
                parts[rng.gen_range(0..parts.len())].clone()
            } else {
                Concept::and(keep)
            }
        }
        Concept::AtLeast(n, r) => Concept::AtLeast(n.saturating_sub(1), r.clone()),
        Concept::AtMost(n, r) => Concept::AtMost(n + 1, r.clone()),
        Concept::All(p, body) => Concept::All(p.clone(), Box::new(weaken(rng, body))),
        _ => {
            if rng.gen_bool(0.3) {
                Concept::Top
            } else {
                c.clone()
            }
        }
    }
}

/// A random same-as-fragment concept.
pub fn random_s_concept(
    rng: &mut ChaCha8Rng,
    attrs: &[&str],
    max_conjuncts: usize,
    max_chain: usize,
) -> Concept {
    let n = rng.gen_range(1..=max_conjuncts);
    Concept::and(
        (0..n)
            .map(|_| {
                Concept::SameAs(
                    classic_core::AttrChain(random_chain(rng, attrs, max_chain)),
                    classic_core::AttrChain(random_chain(rng, attrs, max_chain)),
                )
            })
            .collect(),
    )
}

/// A random interpretation over the symbols of the given concepts.
pub fn random_interpretation(
    rng: &mut ChaCha8Rng,
    syms: &SymbolSet,
    domain_size: usize,
    mode: Semantics,
) -> Interpretation {
    let mut concepts = BTreeMap::new();
    for n in &syms.concepts {
        let ext: BTreeSet<usize> = (0..domain_size).filter(|_| rng.gen_bool(0.5)).collect();
        concepts.insert(n.clone(), ext);
    }
    let mut roles = BTreeMap::new();
    for r in &syms.roles {
        let mut rel = BTreeSet::new();
        for d in 0..domain_size {
            for e in 0..domain_size {
                if rng.gen_bool(0.4) {
                    rel.insert((d, e));
                }
            }
        }
        roles.insert(r.clone(), rel);
    }
    let mut attrs = BTreeMap::new();
    for a in &syms.attributes {
        let mut f = BTreeMap::new();
        for d in 0..domain_size {
            let defined = mode == Semantics::Total || rng.gen_bool(0.7);
            if defined {
                f.insert(d, rng.gen_range(0..domain_size));
            }
        }
        attrs.insert(a.clone(), f);
    }
    let i = Interpretation {
        domain_size,
        mode,
        concepts,
        roles,
        attrs,
    };
    i.validate().expect("generated interpretation is valid");
    i
}

/// Symbols of a slice of concepts.
pub fn joint_symbols(cs: &[&Concept]) -> SymbolSet {
    symbols_of(cs.iter().copied())
}

/// A random connected description graph built directly: random atoms,
/// random a-edges over a spanning skeleton, occasionally a nested r-edge.
pub fn random_connected_graph(
    rng: &mut ChaCha8Rng,
    profile: &Profile,
    max_nodes: usize,
    redge_depth: usize,
) -> DescriptionGraph {
    use classic_core::{Atom, Max, REdge, RoleOrAttribute};
    let n_nodes = rng.gen_range(1..=max_nodes);
    let random_label = |rng: &mut ChaCha8Rng| {
        let mut atoms = vec![Atom::Top];
        for name in &profile.names {
            if rng.gen_bool(0.3) {
                atoms.push(Atom::Name(name.to_string()));
            }
        }
        NodeLabel::with_atoms(atoms)
    };
    let first = random_label(rng);
    let mut g = DescriptionGraph::single(first);
    let mut nodes = vec![g.root()];
    for _ in 1..n_nodes {
        let label = random_label(rng);
        let id = g.add_node(label);
        let from = nodes[rng.gen_range(0..nodes.len())];
        let attr = profile.attrs[rng.gen_range(0..profile.attrs.len())];
        g.add_edge(from, attr, id);
        nodes.push(id);
    }
    // A few extra edges, possibly creating cycles or nondeterminism.
    let extras = rng.gen_range(0..=n_nodes);
    for _ in 0..extras {
        let from = nodes[rng.gen_range(0..nodes.len())];
        let to = nodes[rng.gen_range(0..nodes.len())];
        let attr = profile.attrs[rng.gen_range(0..profile.attrs.len())];
        g.add_edge(from, attr, to);
    }
    // Occasionally hang an r-edge off a node.
    if redge_depth > 0 && rng.gen_bool(0.6) {
        let at = nodes[rng.gen_range(0..nodes.len())];
        let nested = if rng.gen_bool(0.5) {
            random_connected_graph(rng, profile, 2, redge_depth - 1)
        } else {
            DescriptionGraph::from_concept(&random_concept(rng, profile, 1))
        };
        let redge = if !profile.roles.is_empty() && rng.gen_bool(0.6) {
            let min = rng.gen_range(0..=2);
            let max = if rng.gen_bool(0.5) {
                Max::Inf
            } else {
                Max::Fin(rng.gen_range(0..=3))
            };
            REdge {
                name: RoleOrAttribute::Role(
                    profile.roles[rng.gen_range(0..profile.roles.len())].to_string(),
                ),
                min,
                max,
                graph: nested,
            }
        } else {
            REdge {
                name: RoleOrAttribute::Attribute(
                    profile.attrs[rng.gen_range(0..profile.attrs.len())].to_string(),
                ),
                min: 0,
                max: Max::Fin(rng.gen_range(0..=1)),
                graph: nested,
            }
        };
        let label = g.label(at).clone();
        if let NodeLabel::Node { atoms, mut redges } = label {
            redges.push(redge);
            g.set_label(at, NodeLabel::Node { atoms, redges });
        }
    }
    g
}
