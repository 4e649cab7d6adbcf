//! Structural subsumption.
//!
//! Subsumption `C ⊑ D` is decided by normalizing the subsumee into its
//! canonical description graph and matching the subsumer against it
//! structurally. The subsumer is never normalized. Canonical graphs are
//! deterministic, so the same-as case reduces to walking each chain one
//! edge at a time.
//!
//! Under total attributes (the same-as fragment), the same-as case relaxes:
//! it is enough that some common suffix can be peeled off both chains with
//! the remaining prefixes meeting at one node, because total attributes
//! extend any equality along further attributes.

use crate::canonical::canonicalize;
use crate::concept::{Concept, RoleOrAttribute};
use crate::graph::{DescriptionGraph, Max, NodeId};
use crate::Semantics;

/// A total-attribute operation was applied outside the same-as fragment.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("total-attribute reasoning needs conjunctions of same-as equalities; `{0}` is outside that fragment")]
pub struct NotSFragment(pub String);

/// The canonical description graph of a concept.
pub fn canonical_graph(c: &Concept) -> DescriptionGraph {
    canonicalize(DescriptionGraph::from_concept(c))
}

/// `c ⊑ d` under partial-attribute semantics.
pub fn subsumes(c: &Concept, d: &Concept) -> bool {
    subsumes_graph(d, &canonical_graph(c))
}

/// Match a subsumer against a canonical graph (partial attributes).
pub fn subsumes_graph(d: &Concept, g: &DescriptionGraph) -> bool {
    alg1(d, g, g.root())
}

fn alg1(d: &Concept, g: &DescriptionGraph, at: NodeId) -> bool {
    if g.label(at).is_incoherent() {
        return true;
    }
    match d {
        Concept::Top => atoms_contain(g, at, &crate::graph::Atom::Top),
        Concept::Name(n) => atoms_contain(g, at, &crate::graph::Atom::Name(n.clone())),
        Concept::AtLeast(n, r) => {
            *n == 0
                || g.label(at)
                    .redges()
                    .iter()
                    .any(|e| e.name.name() == r && e.min >= *n)
        }
        Concept::AtMost(n, r) => g
            .label(at)
            .redges()
            .iter()
            .any(|e| e.name.name() == r && e.max <= Max::Fin(*n)),
        Concept::SameAs(u, v) => {
            match (g.walk(at, &u.0), g.walk(at, &v.0)) {
                (Some(x), Some(y)) => x == y,
                _ => false,
            }
        }
        Concept::All(p, body) => {
            let by_redge = g
                .label(at)
                .redges()
                .iter()
                .filter(|e| e.name.name() == p.name())
                .any(|e| alg1(body, &e.graph, e.graph.root()));
            if by_redge {
                return true;
            }
            if let RoleOrAttribute::Attribute(a) = p {
                if let Some(next) = g.successor(at, a) {
                    if alg1(body, g, next) {
                        return true;
                    }
                }
            }
            // ∀p.C is vacuous when C is itself vacuous.
            let top = DescriptionGraph::top();
            alg1(body, &top, top.root())
        }
        Concept::And(parts) => parts.iter().all(|p| alg1(p, g, at)),
    }
}

fn atoms_contain(g: &DescriptionGraph, at: NodeId, atom: &crate::graph::Atom) -> bool {
    g.label(at)
        .atoms()
        .is_some_and(|atoms| atoms.contains(atom))
}

/// `c ⊑ₜ d` under total-attribute semantics. Both concepts must lie in the
/// same-as fragment (⊤ is admitted as the empty conjunction).
pub fn subsumes_total(c: &Concept, d: &Concept) -> Result<bool, NotSFragment> {
    check_s(c)?;
    check_s(d)?;
    Ok(subsumes_total_graph(d, &canonical_graph(c)))
}

fn check_s(c: &Concept) -> Result<(), NotSFragment> {
    if c.in_s_fragment_or_top() {
        Ok(())
    } else {
        Err(NotSFragment(c.to_string()))
    }
}

/// Match a same-as-fragment subsumer against a canonical same-as graph
/// (total attributes).
///
/// # Panics
///
/// Panics if `d` is outside the same-as fragment; use
/// [`subsumes_total`] for checked input.
pub fn subsumes_total_graph(d: &Concept, g: &DescriptionGraph) -> bool {
    match d {
        Concept::Top => true,
        Concept::SameAs(u, v) => {
            // Longest common suffix first; any factorization v'u / w'u with
            // the prefixes meeting at one node suffices.
            let max_suffix = u.len().min(v.len());
            for k in (0..=max_suffix).rev() {
                if u.0[u.len() - k..] != v.0[v.len() - k..] {
                    continue;
                }
                let x = g.walk(g.root(), &u.0[..u.len() - k]);
                let y = g.walk(g.root(), &v.0[..v.len() - k]);
                if let (Some(x), Some(y)) = (x, y) {
                    if x == y {
                        return true;
                    }
                }
            }
            false
        }
        Concept::And(parts) => parts.iter().all(|p| subsumes_total_graph(p, g)),
        _ => panic!("subsumer outside the same-as fragment: {d}"),
    }
}

/// Is `c` inconsistent (empty in every interpretation)?
pub fn is_inconsistent(c: &Concept) -> bool {
    canonical_graph(c).is_incoherent()
}

/// Mutual subsumption in the given semantics.
pub fn equivalent(c: &Concept, d: &Concept, sem: Semantics) -> Result<bool, NotSFragment> {
    match sem {
        Semantics::Partial => Ok(subsumes(c, d) && subsumes(d, c)),
        Semantics::Total => Ok(subsumes_total(c, d)? && subsumes_total(d, c)?),
    }
}
