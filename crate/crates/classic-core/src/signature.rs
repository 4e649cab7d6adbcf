//! Signatures partition identifiers into concept names, role names, and
//! attribute names. All three sets are pairwise disjoint, and every
//! identifier in a parsed concept must be declared in exactly one of them.

use std::collections::BTreeSet;

/// Reserved role used to desugar the `BOTTOM` keyword into the inconsistent
/// conjunction `(at-least 1 %bot) ⊓ (at-most 0 %bot)`. The `%` prefix keeps
/// it out of the user identifier space.
pub const BOTTOM_ROLE: &str = "%bot";

/// Kind of a declared identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Concept,
    Role,
    Attribute,
}

impl std::fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SymbolKind::Concept => write!(f, "concept"),
            SymbolKind::Role => write!(f, "role"),
            SymbolKind::Attribute => write!(f, "attribute"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("`{name}` is already declared as a {kind}")]
    AlreadyDeclared { name: String, kind: SymbolKind },
}

/// Disjoint sets of concept, role, and attribute names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    concepts: BTreeSet<String>,
    roles: BTreeSet<String>,
    attributes: BTreeSet<String>,
}

impl Default for Signature {
    fn default() -> Self {
        Self::new()
    }
}

impl Signature {
    /// An empty signature. The reserved bottom role is always present.
    pub fn new() -> Self {
        let mut roles = BTreeSet::new();
        roles.insert(BOTTOM_ROLE.to_string());
        Signature {
            concepts: BTreeSet::new(),
            roles,
            attributes: BTreeSet::new(),
        }
    }

    pub fn declare_concept(&mut self, name: &str) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        self.concepts.insert(name.to_string());
        Ok(())
    }

    pub fn declare_role(&mut self, name: &str) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        self.roles.insert(name.to_string());
        Ok(())
    }

    pub fn declare_attribute(&mut self, name: &str) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        self.attributes.insert(name.to_string());
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<(), SignatureError> {
        match self.kind_of(name) {
            None => Ok(()),
            Some(kind) => Err(SignatureError::AlreadyDeclared {
                name: name.to_string(),
                kind,
            }),
        }
    }

    /// The kind `name` was declared with, if any.
    pub fn kind_of(&self, name: &str) -> Option<SymbolKind> {
        if self.concepts.contains(name) {
            Some(SymbolKind::Concept)
        } else if self.roles.contains(name) {
            Some(SymbolKind::Role)
        } else if self.attributes.contains(name) {
            Some(SymbolKind::Attribute)
        } else {
            None
        }
    }

    pub fn is_concept(&self, name: &str) -> bool {
        self.concepts.contains(name)
    }

    pub fn is_role(&self, name: &str) -> bool {
        self.roles.contains(name)
    }

    pub fn is_attribute(&self, name: &str) -> bool {
        self.attributes.contains(name)
    }

    pub fn concepts(&self) -> impl Iterator<Item = &str> {
        self.concepts.iter().map(|s| s.as_str())
    }

    pub fn roles(&self) -> impl Iterator<Item = &str> {
        self.roles.iter().map(|s| s.as_str())
    }

    pub fn attributes(&self) -> impl Iterator<Item = &str> {
        self.attributes.iter().map(|s| s.as_str())
    }
}
