//! Simulator scripts.
//!
//! One event per line; `#` starts a comment. Lines before an `iteration`
//! line run once as setup, lines after it form the loop body. Without an
//! `iteration` line the whole script is the body.
//!
//! ```text
//! new <class> <ctor-descriptor>          construct through the wrapper
//! call <class> <method> <descriptor>     invoke a method wrapper
//! get <class> <field>                    field getter
//! set <class> <field>                    field setter
//! jtype <var> <class>                    make a Jtype (local reference)
//! jget <var> <field>                     field getter through the Jtype
//! array-get <element> <dim>              GetElement on an array jtype
//! array-set <element> <dim>              SetElement
//! array-length <element> <dim>           GetLength
//! array-new <element> <dim>              New
//! cast <class>                           JNICAST to the class's jtype
//! init <class>                           native(JNIEnv*,jjava_lang_Class)
//! release <class>                        native with a null class
//! jni <Function> [args...]               a raw JNI call
//! ```
//!
//! `<element>` is a Java primitive keyword or a qualified class name.

use thiserror::Error;

use crate::jvmtypes::{parse_method_descriptor, PrimitiveKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("script line {line}: {message}")]
pub struct ScriptSyntax {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrayElement {
    Primitive(PrimitiveKind),
    Class(String),
}

impl ArrayElement {
    pub fn parse(text: &str) -> Self {
        PrimitiveKind::VALUES
            .into_iter()
            .find(|k| k.java_name() == text)
            .map(ArrayElement::Primitive)
            .unwrap_or_else(|| ArrayElement::Class(text.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayOp {
    Get,
    Set,
    Length,
    New,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    New {
        class: String,
        descriptor: String,
    },
    Call {
        class: String,
        name: String,
        descriptor: String,
    },
    Get {
        class: String,
        field: String,
    },
    Set {
        class: String,
        field: String,
    },
    Jtype {
        var: String,
        class: String,
    },
    JGet {
        var: String,
        field: String,
    },
    Array {
        op: ArrayOp,
        element: ArrayElement,
        dimension: u8,
    },
    Cast {
        class: String,
    },
    Init {
        class: String,
    },
    Release {
        class: String,
    },
    Jni {
        function: String,
        args: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub line: usize,
    pub event: Event,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub setup: Vec<ScriptLine>,
    pub body: Vec<ScriptLine>,
}

fn parse_event(words: &[&str], line: usize) -> Result<Event, ScriptSyntax> {
    let err = |message: &str| ScriptSyntax {
        line,
        message: message.to_owned(),
    };
    let arity = |n: usize| {
        if words.len() == n + 1 {
            Ok(())
        } else {
            Err(err(&format!("{} takes {n} operands", words[0])))
        }
    };
    let s = |i: usize| words[i].to_owned();
    let array = |op| -> Result<Event, ScriptSyntax> {
        arity(2)?;
        let dimension: u8 = words[2]
            .parse()
            .ok()
            .filter(|d| (1..=255).contains(d))
            .ok_or_else(|| err("array dimension must be 1 to 255"))?;
        Ok(Event::Array {
            op,
            element: ArrayElement::parse(words[1]),
            dimension,
        })
    };
    Ok(match words[0] {
        "new" => {
            arity(2)?;
            parse_method_descriptor(words[2]).map_err(|e| err(&e.to_string()))?;
            Event::New {
                class: s(1),
                descriptor: s(2),
            }
        }
        "call" => {
            arity(3)?;
            parse_method_descriptor(words[3]).map_err(|e| err(&e.to_string()))?;
            Event::Call {
                class: s(1),
                name: s(2),
                descriptor: s(3),
            }
        }
        "get" => {
            arity(2)?;
            Event::Get {
                class: s(1),
                field: s(2),
            }
        }
        "set" => {
            arity(2)?;
            Event::Set {
                class: s(1),
                field: s(2),
            }
        }
        "jtype" => {
            arity(2)?;
            Event::Jtype {
                var: s(1),
                class: s(2),
            }
        }
        "jget" => {
            arity(2)?;
            Event::JGet {
                var: s(1),
                field: s(2),
            }
        }
        "array-get" => array(ArrayOp::Get)?,
        "array-set" => array(ArrayOp::Set)?,
        "array-length" => array(ArrayOp::Length)?,
        "array-new" => array(ArrayOp::New)?,
        "cast" => {
            arity(1)?;
            Event::Cast { class: s(1) }
        }
        "init" => {
            arity(1)?;
            Event::Init { class: s(1) }
        }
        "release" => {
            arity(1)?;
            Event::Release { class: s(1) }
        }
        "jni" => {
            if words.len() < 2 {
                return Err(err("jni needs a function name"));
            }
            Event::Jni {
                function: s(1),
                args: words[2..].iter().map(|w| (*w).to_owned()).collect(),
            }
        }
        other => return Err(err(&format!("unknown event {other}"))),
    })
}

pub fn parse_script(text: &str) -> Result<Script, ScriptSyntax> {
    let mut setup = Vec::new();
    let mut body = Vec::new();
    let mut seen_marker = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or_default();
        let words: Vec<&str> = content.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        if words == ["iteration"] {
            if seen_marker {
                return Err(ScriptSyntax {
                    line,
                    message: "only one iteration line is allowed".to_owned(),
                });
            }
            seen_marker = true;
            setup.append(&mut body);
            continue;
        }
        body.push(ScriptLine {
            line,
            event: parse_event(&words, line)?,
        });
    }
    Ok(Script { setup, body })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setup_and_body() {
        let s = parse_script("init Bar\n# loop\niteration\ncall a.B m ()V\narray-get int 1\n").unwrap();
        assert_eq!(s.setup.len(), 1);
        assert_eq!(s.body.len(), 2);
        assert_eq!(
            s.body[1].event,
            Event::Array {
                op: ArrayOp::Get,
                element: ArrayElement::Primitive(PrimitiveKind::Int),
                dimension: 1
            }
        );
    }

    #[test]
    fn no_marker_means_all_body() {
        let s = parse_script("jni FindClass java/lang/Object\n").unwrap();
        assert!(s.setup.is_empty());
        assert_eq!(s.body.len(), 1);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_script("\nbogus x\n").unwrap_err().line, 2);
        assert_eq!(parse_script("call a.B m\n").unwrap_err().line, 1);
        assert_eq!(parse_script("call a.B m (V\n").unwrap_err().line, 1);
        assert_eq!(parse_script("array-new int 0\n").unwrap_err().line, 1);
        assert_eq!(parse_script("iteration\niteration\n").unwrap_err().line, 2);
    }
}
