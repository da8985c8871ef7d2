//! The resolved, immutable code model.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

pub const DEFAULT_PACKAGE: &str = "<default>";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    pub package: String,
    pub name: String,
}

impl ClassId {
    pub fn new(package: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            package: package.into(),
            name: name.into(),
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.package == DEFAULT_PACKAGE {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}.{}", self.package, self.name)
        }
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A method identified by its owning class and `name(ParamTypes)` signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MethodRef {
    pub class: ClassId,
    pub signature: String,
}

impl MethodRef {
    pub fn new(class: ClassId, signature: impl Into<String>) -> Self {
        Self {
            class,
            signature: signature.into(),
        }
    }

    pub fn name(&self) -> &str {
        self.signature.split('(').next().unwrap_or(&self.signature)
    }
}

impl fmt::Display for MethodRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.class, self.signature)
    }
}

impl Serialize for MethodRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Visibility {
    Public,
    Protected,
    Package,
    Private,
}

/// A type reference that either names a class in the model or something outside it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reference<T> {
    Internal(T),
    External(String),
}

impl<T: fmt::Display> fmt::Display for Reference<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reference::Internal(t) => write!(f, "{t}"),
            Reference::External(name) => write!(f, "external:{name}"),
        }
    }
}

impl<T: fmt::Display> Serialize for Reference<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub type CallTarget = Reference<MethodRef>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDecl {
    pub name: String,
    pub type_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamDecl {
    pub name: String,
    pub type_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDecl {
    pub id: MethodRef,
    pub name: String,
    pub params: Vec<ParamDecl>,
    pub visibility: Visibility,
    pub is_static: bool,
    pub is_abstract: bool,
    pub is_constructor: bool,
    pub line: usize,
    pub sloc: usize,
    pub decision_points: usize,
    /// Body tokens with identifiers canonicalized to `ID`.
    pub body_tokens: Vec<String>,
    /// Declared fields of the owning class read or written, with occurrence counts.
    pub own_field_accesses: BTreeMap<String, usize>,
    /// Occurrences of members reached through the implicit or explicit `this`/`super`
    /// receiver or a receiver typed as the owning class or one of its ancestors.
    pub own_member_accesses: usize,
    /// Member accesses through receivers typed as other model classes.
    pub foreign_accesses: BTreeMap<ClassId, BTreeMap<String, usize>>,
    pub calls: BTreeSet<CallTarget>,
    pub feature_tags: BTreeSet<String>,
}

impl MethodDecl {
    pub fn qualified_name(&self) -> String {
        self.id.to_string()
    }

    /// Total foreign access occurrences per foreign class.
    pub fn foreign_access_counts(&self) -> BTreeMap<&ClassId, usize> {
        self.foreign_accesses
            .iter()
            .map(|(c, members)| (c, members.values().sum()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecl {
    pub id: ClassId,
    pub file: String,
    pub line: usize,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    pub supertype: Option<Reference<ClassId>>,
    pub interfaces: Vec<Reference<ClassId>>,
    /// Model classes referenced anywhere in the class; never contains `id`.
    pub dependencies: BTreeSet<ClassId>,
    pub external_dependencies: BTreeSet<String>,
    /// Calls made from field initializers.
    pub initializer_calls: BTreeSet<CallTarget>,
}

impl ClassDecl {
    pub fn internal_supertype(&self) -> Option<&ClassId> {
        match &self.supertype {
            Some(Reference::Internal(c)) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Package {
    pub name: String,
    pub classes: Vec<ClassDecl>,
}

/// Packages sorted by name, classes sorted by name within each package.
///
/// Packages emptied by a simulated move are kept so the move can be undone;
/// package-level metrics only look at packages that hold classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CodeModel {
    pub packages: Vec<Package>,
    pub entry_points: BTreeSet<MethodRef>,
}

impl CodeModel {
    pub fn classes(&self) -> impl Iterator<Item = &ClassDecl> {
        self.packages.iter().flat_map(|p| p.classes.iter())
    }

    pub fn methods(&self) -> impl Iterator<Item = (&ClassDecl, &MethodDecl)> {
        self.classes().flat_map(|c| c.methods.iter().map(move |m| (c, m)))
    }

    pub fn non_empty_packages(&self) -> impl Iterator<Item = &Package> {
        self.packages.iter().filter(|p| !p.classes.is_empty())
    }

    pub fn package(&self, name: &str) -> Option<&Package> {
        self.packages.iter().find(|p| p.name == name)
    }

    pub fn class(&self, id: &ClassId) -> Option<&ClassDecl> {
        self.package(&id.package)?
            .classes
            .iter()
            .find(|c| c.id.name == id.name)
    }

    pub fn method(&self, id: &MethodRef) -> Option<&MethodDecl> {
        self.class(&id.class)?
            .methods
            .iter()
            .find(|m| m.id.signature == id.signature)
    }

    pub fn method_count(&self) -> usize {
        self.classes().map(|c| c.methods.len()).sum()
    }

    pub fn is_entry_point(&self, id: &MethodRef) -> bool {
        self.entry_points.contains(id)
    }

    pub fn is_empty(&self) -> bool {
        self.packages.is_empty()
    }

    /// Distinct methods and initializers calling each internal method, excluding self-calls.
    pub fn incoming_references(&self) -> BTreeMap<MethodRef, usize> {
        let mut incoming: BTreeMap<MethodRef, usize> = self
            .methods()
            .map(|(_, m)| (m.id.clone(), 0))
            .collect();
        for class in self.classes() {
            for m in &class.methods {
                for call in &m.calls {
                    if let Reference::Internal(target) = call {
                        if *target != m.id {
                            if let Some(n) = incoming.get_mut(target) {
                                *n += 1;
                            }
                        }
                    }
                }
            }
            let init_targets: BTreeSet<_> = class
                .initializer_calls
                .iter()
                .filter_map(|c| match c {
                    Reference::Internal(t) => Some(t),
                    _ => None,
                })
                .collect();
            for target in init_targets {
                if let Some(n) = incoming.get_mut(target) {
                    *n += 1;
                }
            }
        }
        incoming
    }
}
