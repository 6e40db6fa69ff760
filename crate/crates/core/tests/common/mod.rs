#![allow(dead_code)]

pub mod props;

use std::path::{Path, PathBuf};

use cwj_gen::cachesim::{count, parse_script, simulate, CallTrace, Mode};
use cwj_gen::classfile::TypeUniverse;
use cwj_gen::cli::{generate, load_universe};
use cwj_gen::codegen::{EmitText, RenameRules};
use cwj_gen::options::{GenOptions, VisibilityThreshold};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn fixture_universe() -> TypeUniverse {
    load_universe(&[fixtures_dir()]).expect("fixtures load")
}

pub fn options(classes: &[&str], f: impl FnOnce(&mut GenOptions)) -> GenOptions {
    let mut o = GenOptions {
        classes: classes.iter().map(|s| (*s).to_owned()).collect(),
        recursive: true,
        ..GenOptions::default()
    };
    f(&mut o);
    o
}

/// Headers for the Object, DataOutput, ObjectOutput and Boolean universe,
/// generated with private members admitted.
pub fn golden_universe_headers() -> Vec<EmitText> {
    let o = options(&["java.lang.Boolean", "java.io.ObjectOutput"], |o| {
        o.visibility = VisibilityThreshold::Private
    });
    generate(&fixture_universe(), &o, &RenameRules::new()).expect("generation succeeds")
}

/// C++ tokens, without comments, preprocessor lines or `inline`.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for line in text.lines() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let line = line.split("//").next().unwrap_or_default();
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word != "inline" {
                    out.push(word);
                }
            } else if c == '"' {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += if chars[i] == '\\' { 2 } else { 1 };
                }
                i += 1;
                out.push(chars[start..i.min(chars.len())].iter().collect());
            } else if c == ':' && chars.get(i + 1) == Some(&':') {
                out.push("::".to_owned());
                i += 2;
            } else {
                out.push(c.to_string());
                i += 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassDecl {
    /// From `template` or `class` through the opening brace, exclusive.
    pub head: Vec<String>,
    /// One token list per member declaration, without the `;`.
    pub members: Vec<Vec<String>>,
}

/// Class definitions (not forward declarations) and top-level typedefs.
pub fn declarations(tokens: &[String]) -> (Vec<ClassDecl>, Vec<Vec<String>>) {
    let mut classes = Vec::new();
    let mut typedefs = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i] == "typedef" {
            let end = (i..tokens.len()).find(|&j| tokens[j] == ";").unwrap_or(tokens.len());
            typedefs.push(tokens[i..end].to_vec());
            i = end + 1;
            continue;
        }
        if tokens[i] != "class" {
            i += 1;
            continue;
        }
        let mut start = i;
        if i >= 5 && tokens[i - 1] == ">" {
            if let Some(t) = (0..i).rev().take(8).find(|&j| tokens[j] == "template") {
                start = t;
            }
        }
        let Some(open) = (i..tokens.len()).find(|&j| tokens[j] == "{" || tokens[j] == ";") else {
            break;
        };
        if tokens[open] == ";" {
            i = open + 1;
            continue;
        }
        let mut depth = 0;
        let mut members = Vec::new();
        let mut current = Vec::new();
        let mut j = open + 1;
        while j < tokens.len() {
            match tokens[j].as_str() {
                "{" => depth += 1,
                "}" if depth == 0 => break,
                "}" => depth -= 1,
                ";" if depth == 0 => {
                    members.push(std::mem::take(&mut current));
                    j += 1;
                    continue;
                }
                _ => {}
            }
            current.push(tokens[j].clone());
            j += 1;
        }
        classes.push(ClassDecl {
            head: tokens[start..open].to_vec(),
            members,
        });
        i = j + 1;
    }
    (classes, typedefs)
}

/// Drops parameter names: in each parenthesized, comma-separated
/// parameter of two or more tokens, a trailing identifier following a type
/// token is a name.
pub fn strip_param_names(member: &[String]) -> Vec<String> {
    let ident = |t: &str| t.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_');
    let mut out: Vec<String> = Vec::new();
    let mut depth = 0;
    let mut param_len = 0;
    for (k, t) in member.iter().enumerate() {
        let next = member.get(k + 1).map(String::as_str);
        match t.as_str() {
            "(" => {
                depth += 1;
                param_len = 0;
                out.push(t.clone());
                continue;
            }
            ")" => depth -= 1,
            "," if depth > 0 => {
                param_len = 0;
                out.push(t.clone());
                continue;
            }
            _ => {}
        }
        let ends_param = matches!(next, Some(",") | Some(")"));
        let prev_is_type = out
            .last()
            .is_some_and(|p| ident(p) || p == "*" || p == ">" || p == "&");
        if depth > 0 && ends_param && param_len >= 1 && ident(t) && prev_is_type && t != "const" {
            continue;
        }
        if depth > 0 {
            param_len += 1;
        }
        out.push(t.clone());
    }
    out
}

/// Checks a golden transcription against generated headers: every golden
/// class head must exist exactly, its members must appear in order among
/// the generated members (parameter names aside), and every golden typedef
/// must be emitted.
pub fn check_golden(golden: &str, generated: &[EmitText]) -> Result<(), String> {
    let mut gen_classes = Vec::new();
    let mut gen_typedefs = Vec::new();
    for f in generated {
        let (c, t) = declarations(&tokenize(&f.body));
        gen_classes.extend(c);
        gen_typedefs.extend(t);
    }
    let (classes, typedefs) = declarations(&tokenize(golden));
    for want in &classes {
        let got = gen_classes
            .iter()
            .find(|c| c.head == want.head)
            .ok_or_else(|| format!("no class with head `{}`", want.head.join(" ")))?;
        let got_members: Vec<Vec<String>> = got.members.iter().map(|m| strip_param_names(m)).collect();
        let mut from = 0;
        for m in &want.members {
            let m = strip_param_names(m);
            match got_members[from..].iter().position(|g| *g == m) {
                Some(p) => from += p + 1,
                None => {
                    return Err(format!(
                        "`{}`: member `{}` missing or out of order",
                        want.head.join(" "),
                        m.join(" ")
                    ))
                }
            }
        }
    }
    for t in &typedefs {
        if !gen_typedefs.contains(t) {
            return Err(format!("typedef `{}` not emitted", t.join(" ")));
        }
    }
    Ok(())
}

pub const GOLDEN_FILES: [&str; 6] = [
    "object_output_types.hpp",
    "boolean_wrappers.hpp",
    "boolean_arrays.hpp",
    "object_is_same.hpp",
    "object_array_convenience.hpp",
    "boolean_reflection.hpp",
];

pub fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).expect("golden file")
}

/// `(lookup function, member name, descriptor)` for each literal ID lookup
/// in a header.
pub fn emitted_lookups(header: &str) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for lookup in ["GetFieldID", "GetStaticFieldID", "GetMethodID", "GetStaticMethodID"] {
        let pat = format!("{lookup}(");
        let mut rest = header;
        while let Some(p) = rest.find(&pat) {
            rest = &rest[p + pat.len()..];
            let call = &rest[..rest.find('\n').unwrap_or(rest.len())];
            let parts: Vec<&str> = call.split('"').collect();
            if parts.len() >= 5 {
                out.push((lookup.to_owned(), parts[1].to_owned(), parts[3].to_owned()));
            }
        }
    }
    out
}

pub fn bar_script(mode: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(format!("bar-{mode}.script"))).expect("script")
}

pub fn run_bar(mode: Mode, script: &str, iterations: usize) -> CallTrace {
    let script = parse_script(&bar_script(script)).expect("script parses");
    simulate(&fixture_universe(), &script, mode, iterations).expect("simulation succeeds")
}

/// The calls each steady-state iteration of the wrapped Bar loop makes.
pub fn expected_steady_calls() -> Vec<(&'static str, usize)> {
    vec![
        ("CallStaticObjectMethod", 1),
        ("CallVoidMethod", 2),
        ("GetIntField", 1),
        ("GetObjectArrayElement", 1),
        ("NewObject", 1),
    ]
}

pub fn counts_match(trace: &[cwj_gen::cachesim::Charge], expected: &[(&str, usize)]) -> bool {
    let c = count(trace);
    c.len() == expected.len() && expected.iter().all(|(f, n)| c.get(*f) == Some(n))
}
