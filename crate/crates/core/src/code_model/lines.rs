//! Physical line classification and corpus line statistics.

use serde::Serialize;

use super::SourceUnit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineKind {
    Code,
    Comment,
    Whitespace,
}

/// Classify every line of `text`.
///
/// A line is whitespace when it holds only blanks or tabs, comment when all of
/// its non-blank content is comment (including lines inside a block comment),
/// and code otherwise. A line with code and a trailing comment is code.
pub fn classify_lines(text: &str) -> Vec<LineKind> {
    let mut in_block = false;
    text.lines()
        .map(|line| {
            let (kind, still_in_block) = classify_one(line, in_block);
            in_block = still_in_block;
            kind
        })
        .collect()
}

fn classify_one(line: &str, mut in_block: bool) -> (LineKind, bool) {
    if line.chars().all(|c| c == ' ' || c == '\t' || c == '\r' || c == '\u{feff}') {
        return (LineKind::Whitespace, in_block);
    }
    let chars: Vec<char> = line.chars().collect();
    let mut has_code = false;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if in_block {
            if c == '*' && chars.get(i + 1) == Some(&'/') {
                in_block = false;
                i += 2;
            } else {
                i += 1;
            }
            continue;
        }
        match c {
            '/' if chars.get(i + 1) == Some(&'/') => break,
            '/' if chars.get(i + 1) == Some(&'*') => {
                in_block = true;
                i += 2;
            }
            '"' | '\'' => {
                has_code = true;
                i += 1;
                while i < chars.len() && chars[i] != c {
                    if chars[i] == '\\' {
                        i += 1;
                    }
                    i += 1;
                }
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            _ => {
                has_code = true;
                i += 1;
            }
        }
    }
    let kind = if has_code {
        LineKind::Code
    } else {
        LineKind::Comment
    };
    (kind, in_block)
}

/// Aggregate line statistics over a corpus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineStats {
    pub total_files: usize,
    pub total_lines: usize,
    pub code_lines: usize,
    pub comment_lines: usize,
    pub whitespace_lines: usize,
    pub avg_line_length: usize,
    pub code_to_comment_plus_ws: f64,
    pub code_to_comment: f64,
    pub code_to_ws: f64,
    pub code_to_total: f64,
    pub code_lines_per_file: f64,
    pub comment_lines_per_file: f64,
    pub whitespace_lines_per_file: f64,
}

/// `num / den` rounded to two decimals; a zero denominator yields 0.
pub fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        round2(num as f64 / den as f64)
    }
}

pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

pub fn line_statistics(files: &[SourceUnit]) -> LineStats {
    let mut code = 0;
    let mut comment = 0;
    let mut ws = 0;
    let mut chars = 0usize;
    for file in files {
        for (text, kind) in file.text.lines().zip(classify_lines(&file.text)) {
            chars += text.chars().count();
            match kind {
                LineKind::Code => code += 1,
                LineKind::Comment => comment += 1,
                LineKind::Whitespace => ws += 1,
            }
        }
    }
    let total = code + comment + ws;
    let n = files.len();
    let avg_line_length = if total == 0 {
        0
    } else {
        (chars as f64 / total as f64).round() as usize
    };
    LineStats {
        total_files: n,
        total_lines: total,
        code_lines: code,
        comment_lines: comment,
        whitespace_lines: ws,
        avg_line_length,
        code_to_comment_plus_ws: ratio(code, comment + ws),
        code_to_comment: ratio(code, comment),
        code_to_ws: ratio(code, ws),
        code_to_total: ratio(code, total),
        code_lines_per_file: ratio(code, n),
        comment_lines_per_file: ratio(comment, n),
        whitespace_lines_per_file: ratio(ws, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LineKind::*;

    #[test]
    fn classification_rules() {
        let src = "int a;\n\t \n// note\n/* open\n\n still */\nint b; // trailing\n/* x */ int c;\nString s = \"// not a comment\";";
        assert_eq!(
            classify_lines(src),
            [Code, Whitespace, Comment, Comment, Whitespace, Comment, Code, Code, Code]
        );
    }

    #[test]
    fn block_comment_state_ignores_string_contents() {
        let src = "String s = \"/*\";\nint x;";
        assert_eq!(classify_lines(src), [Code, Code]);
    }

    #[test]
    fn three_blank_lines() {
        let stats = line_statistics(&[SourceUnit::new("a.java", "\n\n\n")]);
        assert_eq!(stats.code_lines, 0);
        assert_eq!(stats.whitespace_lines, 3);
        assert_eq!(stats.code_to_comment_plus_ws, 0.0);
        assert_eq!(stats.code_to_comment, 0.0);
        assert_eq!(stats.code_to_ws, 0.0);
        assert_eq!(stats.code_to_total, 0.0);
    }

    #[test]
    fn empty_input_is_all_zero() {
        let stats = line_statistics(&[]);
        assert_eq!(stats.total_lines, 0);
        assert_eq!(stats.avg_line_length, 0);
        assert_eq!(stats.code_lines_per_file, 0.0);
    }

    #[test]
    fn mixed_ten_line_file() {
        // 5 code, 3 comment, 2 blank, counted by hand.
        let src = "class A {\n// c1\n  int x;\n\n  /* c2\n     c3 */\n  void f() {\n  }\n\n}\n";
        let stats = line_statistics(&[SourceUnit::new("A.java", src)]);
        assert_eq!(stats.total_lines, 10);
        assert_eq!((stats.code_lines, stats.comment_lines, stats.whitespace_lines), (5, 3, 2));
        assert_eq!(stats.code_to_comment, 1.67);
        assert_eq!(stats.code_to_total, 0.50);
    }

    #[test]
    fn crlf_is_not_counted_as_content() {
        let stats = line_statistics(&[SourceUnit::new("a.java", "ab\r\ncd\r\n")]);
        assert_eq!(stats.avg_line_length, 2);
        assert_eq!(stats.total_lines, 2);
    }
}
