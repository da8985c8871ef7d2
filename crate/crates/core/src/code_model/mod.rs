//! Source ingestion: lexing, parsing and name resolution into a [`CodeModel`].

mod annotations;
pub mod ast;
mod build;
pub mod lexer;
pub mod lines;
mod model;
pub mod parser;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use lines::{classify_lines, line_statistics, LineKind, LineStats};
pub use model::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{file}:{line}: syntax error: expected {expected}")]
    Syntax { file: String, line: usize, expected: String },
    #[error("duplicate definition of {0}")]
    DuplicateDefinition(String),
    #[error("{file}:{line}: malformed @feature annotation, expected @feature(\"NAME\")")]
    MalformedAnnotation { file: String, line: usize },
}

/// One source file of the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceUnit {
    /// Path relative to the corpus root, `/`-separated.
    pub path: String,
    pub text: String,
}

impl SourceUnit {
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            text: text.into(),
        }
    }

    pub fn raw_lines(&self) -> impl Iterator<Item = &str> {
        self.text.split_inclusive('\n')
    }

    /// Declared package, or [`DEFAULT_PACKAGE`] when absent or unreadable.
    pub fn package_name(&self) -> String {
        let Ok(lexed) = lexer::tokenize(&self.text) else {
            return DEFAULT_PACKAGE.to_string();
        };
        let toks = &lexed.tokens;
        if !toks.first().is_some_and(|t| t.is("package")) {
            return DEFAULT_PACKAGE.to_string();
        }
        toks[1..]
            .iter()
            .take_while(|t| !t.is(";"))
            .map(|t| t.text.as_str())
            .collect()
    }
}

/// Parse and resolve a corpus. Deterministic and independent of input order.
pub fn parse_source(files: &[SourceUnit]) -> Result<CodeModel, ModelError> {
    let parsed = build::parse_all(files)?;
    build::build_model(&parsed)
}

/// Feature tags per qualified method name, read from `@feature("NAME")` comments.
pub type FeatureFragment = BTreeMap<String, BTreeSet<String>>;

pub fn extract_feature_tags(files: &[SourceUnit]) -> Result<FeatureFragment, ModelError> {
    let mut out = FeatureFragment::new();
    for file in build::parse_all(files)? {
        for ((ci, mi), tags) in &file.tags {
            let class = &file.ast.classes[*ci];
            let id = MethodRef::new(ClassId::new(file.package.as_str(), class.name.as_str()), class.methods[*mi].signature());
            out.entry(id.to_string()).or_default().extend(tags.iter().cloned());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
