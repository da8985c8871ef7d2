//! Corpus discovery and content digest.

use std::path::Path;

use sha2::{Digest, Sha256};
use walkdir::WalkDir;

use super::CliError;
use crate::code_model::SourceUnit;

/// Every `.java` file under `root`, with `/`-separated relative paths, sorted by path.
pub fn discover(root: &Path) -> Result<Vec<SourceUnit>, CliError> {
    if !root.is_dir() {
        return Err(CliError::Io(format!("{}: not a directory", root.display())));
    }
    let mut units = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| CliError::Io(e.to_string()))?;
        let path = entry.path();
        if !entry.file_type().is_file() || path.extension().is_none_or(|e| e != "java") {
            continue;
        }
        let rel = path.strip_prefix(root).unwrap_or(path);
        let rel: Vec<String> = rel.components().map(|c| c.as_os_str().to_string_lossy().into_owned()).collect();
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        units.push(SourceUnit::new(rel.join("/"), text));
    }
    units.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(units)
}

/// SHA-256 over every `(path, contents)` pair in path order, hex encoded.
pub fn digest(units: &[SourceUnit]) -> String {
    let mut h = Sha256::new();
    for u in units {
        h.update((u.path.len() as u64).to_le_bytes());
        h.update(u.path.as_bytes());
        h.update((u.text.len() as u64).to_le_bytes());
        h.update(u.text.as_bytes());
    }
    hex::encode(h.finalize())
}
