//! `@feature("NAME")` annotations carried in comments above method declarations.

use std::collections::BTreeMap;

use super::lexer::Comment;
use super::lines::LineKind;

const MARKER: &str = "@feature";

/// Feature names declared on each line, keyed by 1-based line number.
///
/// Fails with the offending line when an `@feature` marker is not followed by
/// `("NAME")` with a non-empty name.
pub fn scan(comments: &[Comment]) -> Result<BTreeMap<usize, Vec<String>>, usize> {
    let mut out: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for comment in comments {
        let text = comment.text.as_str();
        let mut rest = text;
        while let Some(at) = rest.find(MARKER) {
            let after = &rest[at + MARKER.len()..];
            if after
                .chars()
                .next()
                .is_some_and(|c| c.is_alphanumeric() || c == '_')
            {
                // Some other word, e.g. `@featured`.
                rest = after;
                continue;
            }
            let (name, tail) = quoted_argument(after).ok_or(comment.line)?;
            out.entry(comment.line).or_default().push(name.to_string());
            rest = tail;
        }
    }
    Ok(out)
}

fn quoted_argument(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start().strip_prefix('(')?.trim_start().strip_prefix('"')?;
    let end = s.find('"')?;
    let name = &s[..end];
    let tail = s[end + 1..].trim_start().strip_prefix(')')?;
    if name.trim().is_empty() {
        return None;
    }
    Some((name, tail))
}

/// Features attached to a declaration starting on `start_line`: every annotation on
/// the unbroken run of comment-only lines directly above it.
pub fn attached_to(
    start_line: usize,
    line_kinds: &[LineKind],
    by_line: &BTreeMap<usize, Vec<String>>,
) -> Vec<String> {
    let mut tags = Vec::new();
    let mut line = start_line;
    while line > 1 && line_kinds.get(line - 2) == Some(&LineKind::Comment) {
        line -= 1;
        if let Some(names) = by_line.get(&line) {
            tags.extend(names.iter().cloned());
        }
    }
    tags
}
