//! Post-generation identifier renaming.
//!
//! Rules are `old new` pairs, one per line; `#` starts a comment. Each rule
//! replaces whole identifiers outside double-quoted string literals, so the
//! names and descriptors handed to JNI stay intact.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenameError {
    #[error("line {line}: rename rule needs exactly two identifiers")]
    BadRule { line: usize },
    #[error("line {line}: {name} is renamed more than once")]
    OverlappingRename { line: usize, name: String },
}

pub type RenameRules = BTreeMap<String, String>;

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c == '_' || c.is_ascii_alphabetic())
        && chars.all(|c| c == '_' || c.is_ascii_alphanumeric())
}

pub fn parse_rename_rules(text: &str) -> Result<RenameRules, RenameError> {
    let mut rules = RenameRules::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or_default().trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let [old, new] = words[..] else {
            return Err(RenameError::BadRule { line });
        };
        if !is_identifier(old) || !is_identifier(new) {
            return Err(RenameError::BadRule { line });
        }
        if rules.insert(old.to_owned(), new.to_owned()).is_some() {
            return Err(RenameError::OverlappingRename {
                line,
                name: old.to_owned(),
            });
        }
    }
    Ok(rules)
}

/// Byte ranges of double-quoted literals, quotes included.
pub fn quoted_spans(text: &str) -> Vec<(usize, usize)> {
    let bytes = text.as_bytes();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\'' => {
                // Skip character literals such as '"'.
                i += 1;
                while i < bytes.len() && bytes[i] != b'\'' {
                    i += if bytes[i] == b'\\' { 2 } else { 1 };
                }
                i += 1;
            }
            b'"' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += if bytes[i] == b'\\' { 2 } else { 1 };
                }
                i = (i + 1).min(bytes.len());
                spans.push((start, i));
            }
            _ => i += 1,
        }
    }
    spans
}

/// Applies `rules` to every identifier outside quoted spans.
pub fn filter_rename(text: &str, rules: &RenameRules) -> String {
    if rules.is_empty() {
        return text.to_owned();
    }
    let spans = quoted_spans(text);
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for &(start, end) in spans.iter().chain(std::iter::once(&(text.len(), text.len()))) {
        rename_segment(&text[cursor..start], rules, &mut out);
        out.push_str(&text[start..end]);
        cursor = end;
    }
    out
}

fn rename_segment(segment: &str, rules: &RenameRules, out: &mut String) {
    let bytes = segment.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'_' || c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i] == b'_' || bytes[i].is_ascii_alphanumeric()) {
                i += 1;
            }
            let word = &segment[start..i];
            out.push_str(rules.get(word).map(String::as_str).unwrap_or(word));
        } else if c.is_ascii_digit() {
            // Numeric literals such as 0x1F are not identifiers.
            let start = i;
            while i < bytes.len() && (bytes[i] == b'_' || bytes[i].is_ascii_alphanumeric()) {
                i += 1;
            }
            out.push_str(&segment[start..i]);
        } else {
            let ch = segment[i..].chars().next().expect("in bounds");
            out.push(ch);
            i += ch.len_utf8();
        }
    }
}
