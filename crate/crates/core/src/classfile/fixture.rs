//! Textual class fixtures.
//!
//! A fixture document describes classes and interfaces the way a class file
//! would, without needing a Java compiler:
//!
//! ```text
//! document   ::= { blank | comment | type }
//! comment    ::= '#' text-to-end-of-line
//! type       ::= header '{' NEWLINE { member NEWLINE } '}'
//! header     ::= { modifier } ( 'class' | 'interface' ) NAME
//!                [ 'extends' NAME { ',' NAME } ] [ 'implements' NAME { ',' NAME } ]
//! member     ::= { modifier } MEMBER-NAME DESCRIPTOR
//! modifier   ::= 'public' | 'protected' | 'private' | 'static' | 'final'
//!              | 'abstract' | 'native' | 'synchronized' | 'transient' | 'volatile'
//! ```
//!
//! `NAME` is a dotted qualified name. A member whose descriptor starts with
//! `(` is a method; `<init>` methods are constructors. Member order is
//! declaration order.
//!
//! Java's implicit modifiers apply: a class without `extends` extends
//! `java.lang.Object`; interfaces are abstract; interface fields are
//! `public static final` and interface methods `public abstract` unless
//! declared `static` or `private`. A class may extend at most one class.
//!
//! ```text
//! public final class java.lang.Boolean implements java.io.Serializable {
//!     public static final TRUE Ljava/lang/Boolean;
//!     public <init> (Z)V
//!     public booleanValue ()Z
//! }
//! ```

use thiserror::Error;

use super::model::{
    JavaConstructor, JavaField, JavaMethod, JavaTypeModel, TypeKind, Visibility, OBJECT,
};
use crate::jvmtypes::{parse_field_descriptor, parse_method_descriptor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fixture line {line}: {message}")]
pub struct FixtureSyntax {
    pub line: usize,
    pub message: String,
}

#[derive(Default)]
struct Modifiers {
    visibility: Option<Visibility>,
    is_static: bool,
    is_final: bool,
    is_abstract: bool,
    is_native: bool,
}

fn parse_modifiers<'a>(
    tokens: &mut std::iter::Peekable<impl Iterator<Item = &'a str>>,
    line: usize,
) -> Result<Modifiers, FixtureSyntax> {
    let mut m = Modifiers::default();
    while let Some(&tok) = tokens.peek() {
        let vis = match tok {
            "public" => Some(Visibility::Public),
            "protected" => Some(Visibility::Protected),
            "private" => Some(Visibility::Private),
            "static" => {
                m.is_static = true;
                None
            }
            "final" => {
                m.is_final = true;
                None
            }
            "abstract" => {
                m.is_abstract = true;
                None
            }
            "native" => {
                m.is_native = true;
                None
            }
            "synchronized" | "transient" | "volatile" => None,
            _ => break,
        };
        if let Some(v) = vis {
            if m.visibility.replace(v).is_some() {
                return Err(FixtureSyntax {
                    line,
                    message: "more than one visibility modifier".into(),
                });
            }
        }
        tokens.next();
    }
    Ok(m)
}

fn is_qualified_name(s: &str) -> bool {
    !s.is_empty()
        && s.split('.').all(|part| {
            let mut chars = part.chars();
            matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_' || c == '$')
                && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
        })
}

fn parse_name_list(text: &str, line: usize) -> Result<Vec<String>, FixtureSyntax> {
    text.split(',')
        .map(str::trim)
        .map(|name| {
            if is_qualified_name(name) {
                Ok(name.to_owned())
            } else {
                Err(FixtureSyntax {
                    line,
                    message: format!("bad type name {name:?}"),
                })
            }
        })
        .collect()
}

fn parse_header(text: &str, line: usize) -> Result<JavaTypeModel, FixtureSyntax> {
    let err = |message: String| FixtureSyntax { line, message };
    let body = text
        .strip_suffix('{')
        .ok_or_else(|| err("type header must end with '{'".into()))?;
    let mut tokens = body.split_whitespace().peekable();
    let mods = parse_modifiers(&mut tokens, line)?;
    let kind = match tokens.next() {
        Some("class") => TypeKind::Class,
        Some("interface") => TypeKind::Interface,
        other => {
            return Err(err(format!(
                "expected 'class' or 'interface', found {other:?}"
            )))
        }
    };
    let name = tokens
        .next()
        .filter(|n| is_qualified_name(n))
        .ok_or_else(|| err("missing or malformed type name".into()))?
        .to_owned();

    let mut extends: Option<Vec<String>> = None;
    let mut implements: Option<Vec<String>> = None;
    let rest: Vec<&str> = tokens.collect();
    let rest = rest.join(" ");
    let mut words = rest.split_whitespace().peekable();
    while let Some(keyword) = words.next() {
        let slot = match keyword {
            "extends" => &mut extends,
            "implements" => &mut implements,
            other => return Err(err(format!("unexpected {other:?} in header"))),
        };
        if slot.is_some() {
            return Err(err(format!("repeated '{keyword}' clause")));
        }
        let mut list = Vec::new();
        while let Some(&w) = words.peek() {
            if w == "extends" || w == "implements" {
                break;
            }
            list.push(w);
            words.next();
        }
        let names = parse_name_list(&list.join(" "), line)?;
        *slot = Some(names);
    }
    let mut extends = extends.unwrap_or_default();
    let implements = implements.unwrap_or_default();

    let (superclass, direct_interfaces) = match kind {
        TypeKind::Class => {
            if extends.len() > 1 {
                return Err(err(format!("class {name} extends more than one class")));
            }
            let superclass = match extends.pop() {
                Some(s) => Some(s),
                None if name == OBJECT => None,
                None => Some(OBJECT.to_owned()),
            };
            if name == OBJECT && superclass.is_some() {
                return Err(err("java.lang.Object cannot extend anything".into()));
            }
            (superclass, implements)
        }
        TypeKind::Interface => {
            if !implements.is_empty() {
                return Err(err(format!("interface {name} cannot implement")));
            }
            (None, extends)
        }
    };
    if mods.is_native || mods.is_static {
        return Err(err("invalid modifier on a top-level type".into()));
    }
    Ok(JavaTypeModel {
        qualified_name: name,
        kind,
        is_final: mods.is_final,
        is_abstract: mods.is_abstract || kind == TypeKind::Interface,
        superclass,
        direct_interfaces,
        fields: Vec::new(),
        methods: Vec::new(),
        constructors: Vec::new(),
    })
}

fn parse_member(
    text: &str,
    line: usize,
    model: &mut JavaTypeModel,
    next_index: &mut usize,
) -> Result<(), FixtureSyntax> {
    let err = |message: String| FixtureSyntax { line, message };
    let mut tokens = text.split_whitespace().peekable();
    let mods = parse_modifiers(&mut tokens, line)?;
    let rest: Vec<&str> = tokens.collect();
    let [name, descriptor] = rest[..] else {
        return Err(err(format!("expected 'NAME DESCRIPTOR', found {text:?}")));
    };
    let in_interface = model.is_interface();
    let default_visibility = if in_interface {
        Visibility::Public
    } else {
        Visibility::Package
    };
    let visibility = mods.visibility.unwrap_or(default_visibility);
    if descriptor.starts_with('(') {
        let descriptor = parse_method_descriptor(descriptor).map_err(|e| err(e.to_string()))?;
        let declaration_index = *next_index;
        *next_index += 1;
        if name == "<init>" {
            if in_interface {
                return Err(err("interfaces have no constructors".into()));
            }
            if !descriptor.ret.is_void() {
                return Err(err("constructor must return void".into()));
            }
            model.constructors.push(JavaConstructor {
                descriptor,
                visibility,
                declaration_index,
            });
        } else {
            let is_abstract = mods.is_abstract
                || (in_interface && !mods.is_static && visibility != Visibility::Private);
            model.methods.push(JavaMethod {
                name: name.to_owned(),
                descriptor,
                is_static: mods.is_static,
                is_final: mods.is_final,
                is_abstract,
                is_native: mods.is_native,
                visibility,
                declaration_index,
            });
        }
    } else {
        let descriptor = parse_field_descriptor(descriptor).map_err(|e| err(e.to_string()))?;
        model.fields.push(JavaField {
            name: name.to_owned(),
            descriptor,
            is_static: mods.is_static || in_interface,
            is_final: mods.is_final || in_interface,
            visibility,
        });
    }
    Ok(())
}

/// Parses a fixture document into models, in document order.
pub fn load_fixture_model(text: &str) -> Result<Vec<JavaTypeModel>, FixtureSyntax> {
    let mut models = Vec::new();
    let mut open: Option<(JavaTypeModel, usize)> = None;
    let mut next_index = 0;
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match open.as_mut() {
            None => {
                open = Some((parse_header(content, line)?, line));
                next_index = 0;
            }
            Some(_) if content == "}" => {
                let (model, _) = open.take().expect("checked above");
                model
                    .check_invariants()
                    .map_err(|message| FixtureSyntax { line, message })?;
                models.push(model);
            }
            Some((model, _)) => parse_member(content, line, model, &mut next_index)?,
        }
    }
    if let Some((model, line)) = open {
        return Err(FixtureSyntax {
            line,
            message: format!("unterminated body of {}", model.qualified_name),
        });
    }
    Ok(models)
}
