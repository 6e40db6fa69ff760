//! Field and method descriptors.
//!
//! ```text
//! FieldDescriptor  ::= BaseType | 'L' ClassName ';' | '[' FieldDescriptor
//! BaseType         ::= 'B' | 'C' | 'D' | 'F' | 'I' | 'J' | 'S' | 'Z'
//! MethodDescriptor ::= '(' FieldDescriptor* ')' ( FieldDescriptor | 'V' )
//! ```
//!
//! Class names are held in dotted form (`java.lang.String`); the slashed
//! internal form only exists in descriptor text.

use std::fmt;

use thiserror::Error;

/// The JVM refuses array types with more than 255 dimensions.
pub const MAX_ARRAY_DIMENSIONS: u8 = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad descriptor {text:?} at offset {offset}: {reason}")]
pub struct BadDescriptor {
    pub text: String,
    pub offset: usize,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimitiveKind {
    Boolean,
    Byte,
    Char,
    Short,
    Int,
    Long,
    Float,
    Double,
    Void,
}

impl PrimitiveKind {
    /// Every primitive except `void`, in JNI declaration order.
    pub const VALUES: [PrimitiveKind; 8] = [
        PrimitiveKind::Boolean,
        PrimitiveKind::Byte,
        PrimitiveKind::Char,
        PrimitiveKind::Short,
        PrimitiveKind::Int,
        PrimitiveKind::Long,
        PrimitiveKind::Float,
        PrimitiveKind::Double,
    ];

    pub fn descriptor_char(self) -> char {
        match self {
            PrimitiveKind::Boolean => 'Z',
            PrimitiveKind::Byte => 'B',
            PrimitiveKind::Char => 'C',
            PrimitiveKind::Short => 'S',
            PrimitiveKind::Int => 'I',
            PrimitiveKind::Long => 'J',
            PrimitiveKind::Float => 'F',
            PrimitiveKind::Double => 'D',
            PrimitiveKind::Void => 'V',
        }
    }

    fn from_descriptor_char(c: u8) -> Option<Self> {
        Some(match c {
            b'Z' => PrimitiveKind::Boolean,
            b'B' => PrimitiveKind::Byte,
            b'C' => PrimitiveKind::Char,
            b'S' => PrimitiveKind::Short,
            b'I' => PrimitiveKind::Int,
            b'J' => PrimitiveKind::Long,
            b'F' => PrimitiveKind::Float,
            b'D' => PrimitiveKind::Double,
            b'V' => PrimitiveKind::Void,
            _ => return None,
        })
    }

    /// Java keyword spelling (`int`, `boolean`, ...).
    pub fn java_name(self) -> &'static str {
        match self {
            PrimitiveKind::Boolean => "boolean",
            PrimitiveKind::Byte => "byte",
            PrimitiveKind::Char => "char",
            PrimitiveKind::Short => "short",
            PrimitiveKind::Int => "int",
            PrimitiveKind::Long => "long",
            PrimitiveKind::Float => "float",
            PrimitiveKind::Double => "double",
            PrimitiveKind::Void => "void",
        }
    }

    /// Capitalised form used inside JNI function names (`CallIntMethod`).
    pub fn jni_family(self) -> &'static str {
        match self {
            PrimitiveKind::Boolean => "Boolean",
            PrimitiveKind::Byte => "Byte",
            PrimitiveKind::Char => "Char",
            PrimitiveKind::Short => "Short",
            PrimitiveKind::Int => "Int",
            PrimitiveKind::Long => "Long",
            PrimitiveKind::Float => "Float",
            PrimitiveKind::Double => "Double",
            PrimitiveKind::Void => "Void",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeDescriptor {
    Primitive(PrimitiveKind),
    /// Dotted qualified name.
    Class(String),
    /// `element` is never itself an array; `dimension >= 1`.
    Array {
        element: Box<TypeDescriptor>,
        dimension: u8,
    },
}

impl TypeDescriptor {
    pub fn class(name: impl Into<String>) -> Self {
        TypeDescriptor::Class(name.into())
    }

    /// Wraps `element` in `dimension` more array levels, flattening nested
    /// arrays so the invariant on `element` holds.
    pub fn array_of(element: TypeDescriptor, dimension: u8) -> Self {
        assert!(dimension >= 1, "array dimension must be at least 1");
        match element {
            TypeDescriptor::Array {
                element,
                dimension: inner,
            } => TypeDescriptor::Array {
                element,
                dimension: inner + dimension,
            },
            other => TypeDescriptor::Array {
                element: Box::new(other),
                dimension,
            },
        }
    }

    pub fn is_void(&self) -> bool {
        matches!(self, TypeDescriptor::Primitive(PrimitiveKind::Void))
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self, TypeDescriptor::Primitive(_))
    }

    pub fn is_reference(&self) -> bool {
        !self.is_primitive()
    }

    /// The class named by this type or by its array element, if any.
    pub fn referenced_class(&self) -> Option<&str> {
        match self {
            TypeDescriptor::Class(name) => Some(name),
            TypeDescriptor::Array { element, .. } => element.referenced_class(),
            TypeDescriptor::Primitive(_) => None,
        }
    }

    /// One array level removed; `None` for non-arrays.
    pub fn component(&self) -> Option<TypeDescriptor> {
        match self {
            TypeDescriptor::Array { element, dimension } if *dimension > 1 => {
                Some(TypeDescriptor::Array {
                    element: element.clone(),
                    dimension: dimension - 1,
                })
            }
            TypeDescriptor::Array { element, .. } => Some((**element).clone()),
            _ => None,
        }
    }

    /// Internal (slashed) name as `FindClass` expects it: `java/lang/String`
    /// for classes, the descriptor itself for arrays.
    pub fn find_class_name(&self) -> String {
        match self {
            TypeDescriptor::Class(name) => name.replace('.', "/"),
            other => other.to_string(),
        }
    }

    fn write_to(&self, out: &mut String) {
        match self {
            TypeDescriptor::Primitive(kind) => out.push(kind.descriptor_char()),
            TypeDescriptor::Class(name) => {
                out.push('L');
                out.extend(name.chars().map(|c| if c == '.' { '/' } else { c }));
                out.push(';');
            }
            TypeDescriptor::Array { element, dimension } => {
                for _ in 0..*dimension {
                    out.push('[');
                }
                element.write_to(out);
            }
        }
    }
}

impl fmt::Display for TypeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MethodDescriptor {
    pub params: Vec<TypeDescriptor>,
    pub ret: TypeDescriptor,
}

impl MethodDescriptor {
    pub fn new(params: Vec<TypeDescriptor>, ret: TypeDescriptor) -> Self {
        debug_assert!(params.iter().all(|p| !p.is_void()));
        MethodDescriptor { params, ret }
    }

    /// The text between the parentheses.
    pub fn params_text(&self) -> String {
        let mut s = String::new();
        for p in &self.params {
            p.write_to(&mut s);
        }
        s
    }
}

impl fmt::Display for MethodDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}){}", self.params_text(), self.ret)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, reason: &'static str) -> BadDescriptor {
        BadDescriptor {
            text: self.text.to_owned(),
            offset: self.pos,
            reason,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn field(&mut self, allow_void: bool) -> Result<TypeDescriptor, BadDescriptor> {
        let mut dimension = 0u32;
        while self.peek() == Some(b'[') {
            dimension += 1;
            self.pos += 1;
        }
        if dimension > u32::from(MAX_ARRAY_DIMENSIONS) {
            return Err(self.err("more than 255 array dimensions"));
        }
        let c = self.peek().ok_or_else(|| self.err("unexpected end"))?;
        let element = if c == b'L' {
            let start = self.pos + 1;
            let end = self.text[start..]
                .find(';')
                .map(|i| start + i)
                .ok_or_else(|| self.err("unterminated class name"))?;
            let name = &self.text[start..end];
            if name.is_empty()
                || name.starts_with('/')
                || name.ends_with('/')
                || name.contains("//")
                || name.contains(['.', '[', '<', '>'])
            {
                return Err(self.err("malformed class name"));
            }
            self.pos = end + 1;
            TypeDescriptor::Class(name.replace('/', "."))
        } else {
            let kind = PrimitiveKind::from_descriptor_char(c)
                .ok_or_else(|| self.err("unknown type character"))?;
            if kind == PrimitiveKind::Void && (dimension > 0 || !allow_void) {
                return Err(self.err("void is only legal as a return type"));
            }
            self.pos += 1;
            TypeDescriptor::Primitive(kind)
        };
        Ok(if dimension == 0 {
            element
        } else {
            TypeDescriptor::Array {
                element: Box::new(element),
                dimension: dimension as u8,
            }
        })
    }

    fn finish(&self) -> Result<(), BadDescriptor> {
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.err("trailing characters"))
        }
    }
}

pub fn parse_field_descriptor(text: &str) -> Result<TypeDescriptor, BadDescriptor> {
    let mut cur = Cursor { text, pos: 0 };
    let ty = cur.field(false)?;
    cur.finish()?;
    Ok(ty)
}

pub fn parse_method_descriptor(text: &str) -> Result<MethodDescriptor, BadDescriptor> {
    let mut cur = Cursor { text, pos: 0 };
    if cur.peek() != Some(b'(') {
        return Err(cur.err("expected '('"));
    }
    cur.pos += 1;
    let mut params = Vec::new();
    loop {
        match cur.peek() {
            Some(b')') => {
                cur.pos += 1;
                break;
            }
            Some(_) => params.push(cur.field(false)?),
            None => return Err(cur.err("unterminated parameter list")),
        }
    }
    let ret = cur.field(true)?;
    cur.finish()?;
    Ok(MethodDescriptor { params, ret })
}
