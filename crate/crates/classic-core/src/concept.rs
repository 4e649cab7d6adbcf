//! Concept descriptions: the term language of CLASSIC⁻.
//!
//! Terms are immutable trees. Attribute number restrictions never appear in
//! a term: the parser and the builders desugar them eagerly, so `AtLeast` and
//! `AtMost` always carry role names. The `BOTTOM` keyword is likewise sugar
//! for an inconsistent pair of number restrictions on a reserved role.

use std::collections::BTreeSet;
use std::fmt;

use crate::signature::BOTTOM_ROLE;

/// A chain of attribute names. The empty chain is ε, the identity path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AttrChain(pub Vec<String>);

impl AttrChain {
    pub fn new<I, S>(attrs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        AttrChain(attrs.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        AttrChain(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|s| s.as_str())
    }
}

impl fmt::Display for AttrChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// The name under a value restriction, tagged with its declared kind.
/// The tag is what lets translation and evaluation treat `∀r.C` for a role
/// and `∀a.C` for an attribute differently without consulting a signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RoleOrAttribute {
    Role(String),
    Attribute(String),
}

impl RoleOrAttribute {
    pub fn name(&self) -> &str {
        match self {
            RoleOrAttribute::Role(n) | RoleOrAttribute::Attribute(n) => n,
        }
    }

    pub fn is_attribute(&self) -> bool {
        matches!(self, RoleOrAttribute::Attribute(_))
    }
}

/// A CLASSIC⁻ concept description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Concept {
    /// A concept name.
    Name(String),
    /// ⊤, the universal concept.
    Top,
    /// `(at-least n r)` for a role `r`.
    AtLeast(u32, String),
    /// `(at-most n r)` for a role `r`.
    AtMost(u32, String),
    /// Conjunction; the list is never empty.
    And(Vec<Concept>),
    /// `(all p C)` for a role or attribute `p`.
    All(RoleOrAttribute, Box<Concept>),
    /// `(same-as u v)`: both chains defined and agreeing.
    SameAs(AttrChain, AttrChain),
}

impl Concept {
    /// The inconsistent concept, as sugar over the reserved bottom role.
    pub fn bottom() -> Concept {
        Concept::And(vec![
            Concept::AtLeast(1, BOTTOM_ROLE.to_string()),
            Concept::AtMost(0, BOTTOM_ROLE.to_string()),
        ])
    }

    /// Does this term match the bottom sugar exactly?
    pub fn is_bottom(&self) -> bool {
        match self {
            Concept::And(parts) => {
                parts.len() == 2
                    && matches!(&parts[0], Concept::AtLeast(1, r) if r == BOTTOM_ROLE)
                    && matches!(&parts[1], Concept::AtMost(0, r) if r == BOTTOM_ROLE)
            }
            _ => false,
        }
    }

    /// Conjunction that flattens the trivial cases: empty becomes ⊤ and a
    /// single conjunct is returned as-is.
    pub fn and(mut parts: Vec<Concept>) -> Concept {
        match parts.len() {
            0 => Concept::Top,
            1 => parts.pop().unwrap(),
            _ => Concept::And(parts),
        }
    }

    pub fn same_as<I, J, S, T>(u: I, v: J) -> Concept
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        Concept::SameAs(AttrChain::new(u), AttrChain::new(v))
    }

    pub fn all_role(role: &str, body: Concept) -> Concept {
        Concept::All(RoleOrAttribute::Role(role.to_string()), Box::new(body))
    }

    pub fn all_attr(attr: &str, body: Concept) -> Concept {
        Concept::All(RoleOrAttribute::Attribute(attr.to_string()), Box::new(body))
    }

    /// `∀a₁…aₖ.C` as nested value restrictions over attributes; `k = 0`
    /// yields `C` itself.
    pub fn all_attr_chain(chain: &[String], body: Concept) -> Concept {
        chain.iter().rev().fold(body, |acc, a| Concept::all_attr(a, acc))
    }

    /// True iff the term is built from conjunction and same-as alone.
    pub fn in_s_fragment(&self) -> bool {
        match self {
            Concept::SameAs(_, _) => true,
            Concept::And(parts) => parts.iter().all(Concept::in_s_fragment),
            _ => false,
        }
    }

    /// Like [`in_s_fragment`](Self::in_s_fragment) but admitting ⊤, the
    /// empty conjunction. Total-attribute reasoning accepts this superset.
    pub fn in_s_fragment_or_top(&self) -> bool {
        match self {
            Concept::Top | Concept::SameAs(_, _) => true,
            Concept::And(parts) => parts.iter().all(Concept::in_s_fragment_or_top),
            _ => false,
        }
    }

    fn collect_symbols(&self, out: &mut SymbolSet) {
        match self {
            Concept::Name(n) => {
                out.concepts.insert(n.clone());
            }
            Concept::Top => {}
            Concept::AtLeast(_, r) | Concept::AtMost(_, r) => {
                out.roles.insert(r.clone());
            }
            Concept::And(parts) => {
                for p in parts {
                    p.collect_symbols(out);
                }
            }
            Concept::All(p, body) => {
                match p {
                    RoleOrAttribute::Role(r) => {
                        out.roles.insert(r.clone());
                    }
                    RoleOrAttribute::Attribute(a) => {
                        out.attributes.insert(a.clone());
                    }
                }
                body.collect_symbols(out);
            }
            Concept::SameAs(u, v) => {
                for a in u.iter().chain(v.iter()) {
                    out.attributes.insert(a.to_string());
                }
            }
        }
    }

    /// Attribute names occurring anywhere in the term.
    pub fn attributes(&self) -> BTreeSet<String> {
        symbols_of([self]).attributes
    }
}

/// The identifiers occurring in a set of concepts, split by kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolSet {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
    pub attributes: BTreeSet<String>,
}

/// Collect all identifiers of the given concepts.
pub fn symbols_of<'a, I>(concepts: I) -> SymbolSet
where
    I: IntoIterator<Item = &'a Concept>,
{
    let mut out = SymbolSet::default();
    for c in concepts {
        c.collect_symbols(&mut out);
    }
    out
}

/// Render a concept in the concrete syntax. The output re-parses to a
/// structurally identical term under the same signature.
pub fn print_concept(c: &Concept) -> String {
    c.to_string()
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            return write!(f, "BOTTOM");
        }
        match self {
            Concept::Name(n) => write!(f, "{n}"),
            Concept::Top => write!(f, "TOP"),
            Concept::AtLeast(n, r) => write!(f, "(at-least {n} {r})"),
            Concept::AtMost(n, r) => write!(f, "(at-most {n} {r})"),
            Concept::And(parts) => {
                write!(f, "(and")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
            Concept::All(p, body) => write!(f, "(all {} {})", p.name(), body),
            Concept::SameAs(u, v) => write!(f, "(same-as {u} {v})"),
        }
    }
}
