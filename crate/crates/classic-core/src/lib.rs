//! Reasoning for the CLASSIC⁻ description logic.
//!
//! CLASSIC⁻ concept descriptions are built from concept names, ⊤, number
//! restrictions on roles, conjunction, value restrictions, and same-as
//! equalities between attribute chains. Attributes are functional roles and
//! can be read in two ways: as *partial* functions (an attribute may have no
//! value) or as *total* functions (an attribute always has a value). The two
//! readings agree on subsumption complexity but diverge sharply for least
//! common subsumers, and this crate implements both sides of the story:
//!
//! * [`concept`], [`signature`], [`parser`] — the term language, a concrete
//!   s-expression syntax, and fragment classification.
//! * [`graph`] — description graphs (rooted multigraphs with attribute edges
//!   and nested restriction edges), translation to and from concepts.
//! * [`canonical`] — normalization of description graphs to a deterministic
//!   canonical form.
//! * [`subsume`] — structural subsumption over canonical graphs, for partial
//!   attributes (full CLASSIC⁻) and total attributes (the same-as fragment).
//! * [`product`] — least common subsumers under partial attributes via graph
//!   products; always exist, polynomial for two inputs.
//! * [`automata`] — path-language automata over the attribute alphabet:
//!   intersection, first-letter restriction, infiniteness, enumeration.
//! * [`lcs_total`] — the total-attribute lcs: a polynomial existence test and
//!   the (worst-case exponential) construction when it exists.
//! * [`interp`] — a brute-force finite-model evaluator and countermodel
//!   search, used as an independent semantic oracle in tests and exposed via
//!   the CLI.

pub mod automata;
pub mod canonical;
pub mod concept;
pub mod graph;
pub mod interp;
pub mod lcs_total;
pub mod parser;
pub mod product;
pub mod signature;
pub mod subsume;

pub use concept::{print_concept, symbols_of, AttrChain, Concept, RoleOrAttribute, SymbolSet};
pub use graph::{Atom, DescriptionGraph, Max, NodeId, NodeLabel, REdge};
pub use signature::{Signature, SymbolKind};

/// How attributes are interpreted: as partial or as total functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Partial,
    Total,
}

impl std::fmt::Display for Semantics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Semantics::Partial => write!(f, "partial"),
            Semantics::Total => write!(f, "total"),
        }
    }
}
