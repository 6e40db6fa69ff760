//! Serializes a type model back into a minimal class file: constant pool,
//! flags, supertypes, and member tables. Method bodies are not emitted.

use std::collections::HashMap;

use super::lift::{
    visibility_flags, ACC_ABSTRACT, ACC_FINAL, ACC_INTERFACE, ACC_NATIVE, ACC_PUBLIC, ACC_STATIC,
    ACC_SUPER,
};
use super::model::{JavaTypeModel, OBJECT};
use super::raw::MAGIC;

/// Encodes a string as modified UTF-8.
pub fn encode_modified_utf8(s: &str) -> Vec<u8> {
    let mut out = Vec::with_capacity(s.len());
    for unit in s.encode_utf16() {
        match unit {
            0x0001..=0x007f => out.push(unit as u8),
            0x0000 | 0x0080..=0x07ff => {
                out.push(0xc0 | (unit >> 6) as u8);
                out.push(0x80 | (unit & 0x3f) as u8);
            }
            _ => {
                out.push(0xe0 | (unit >> 12) as u8);
                out.push(0x80 | ((unit >> 6) & 0x3f) as u8);
                out.push(0x80 | (unit & 0x3f) as u8);
            }
        }
    }
    out
}

#[derive(Default)]
struct Pool {
    bytes: Vec<u8>,
    count: u16,
    utf8: HashMap<String, u16>,
    classes: HashMap<String, u16>,
}

impl Pool {
    fn utf8(&mut self, s: &str) -> u16 {
        if let Some(&i) = self.utf8.get(s) {
            return i;
        }
        let encoded = encode_modified_utf8(s);
        self.bytes.push(1);
        self.bytes
            .extend_from_slice(&(encoded.len() as u16).to_be_bytes());
        self.bytes.extend_from_slice(&encoded);
        self.count += 1;
        self.utf8.insert(s.to_owned(), self.count);
        self.count
    }

    fn class(&mut self, dotted: &str) -> u16 {
        if let Some(&i) = self.classes.get(dotted) {
            return i;
        }
        let name = self.utf8(&dotted.replace('.', "/"));
        self.bytes.push(7);
        self.bytes.extend_from_slice(&name.to_be_bytes());
        self.count += 1;
        self.classes.insert(dotted.to_owned(), self.count);
        self.count
    }
}

fn put_u16(out: &mut Vec<u8>, v: u16) {
    out.extend_from_slice(&v.to_be_bytes());
}

/// Writes a version-52 class file for `model`.
///
/// Constructors and methods are merged into one method table in
/// `declaration_index` order. Interfaces record `java.lang.Object` as their
/// super class, as compilers do.
pub fn write_class_file(model: &JavaTypeModel) -> Vec<u8> {
    let mut pool = Pool::default();
    let this_class = pool.class(&model.qualified_name);
    let super_class = match (&model.superclass, model.is_interface()) {
        (_, true) => pool.class(OBJECT),
        (Some(s), false) => pool.class(s),
        (None, false) => 0,
    };
    let interfaces: Vec<u16> = model
        .direct_interfaces
        .iter()
        .map(|i| pool.class(i))
        .collect();

    let mut body = Vec::new();
    let mut flags = ACC_PUBLIC;
    if model.is_interface() {
        flags |= ACC_INTERFACE | ACC_ABSTRACT;
    } else {
        flags |= ACC_SUPER;
        if model.is_abstract {
            flags |= ACC_ABSTRACT;
        }
    }
    if model.is_final {
        flags |= ACC_FINAL;
    }
    put_u16(&mut body, flags);
    put_u16(&mut body, this_class);
    put_u16(&mut body, super_class);
    put_u16(&mut body, interfaces.len() as u16);
    for i in interfaces {
        put_u16(&mut body, i);
    }

    put_u16(&mut body, model.fields.len() as u16);
    for f in &model.fields {
        let mut flags = visibility_flags(f.visibility);
        if f.is_static {
            flags |= ACC_STATIC;
        }
        if f.is_final {
            flags |= ACC_FINAL;
        }
        put_u16(&mut body, flags);
        put_u16(&mut body, pool.utf8(&f.name));
        put_u16(&mut body, pool.utf8(&f.descriptor.to_string()));
        put_u16(&mut body, 0);
    }

    let mut table: Vec<(usize, u16, String, String)> = model
        .constructors
        .iter()
        .map(|c| {
            (
                c.declaration_index,
                visibility_flags(c.visibility),
                "<init>".to_owned(),
                c.descriptor.to_string(),
            )
        })
        .chain(model.methods.iter().map(|m| {
            let mut flags = visibility_flags(m.visibility);
            for (set, bit) in [
                (m.is_static, ACC_STATIC),
                (m.is_final, ACC_FINAL),
                (m.is_abstract, ACC_ABSTRACT),
                (m.is_native, ACC_NATIVE),
            ] {
                if set {
                    flags |= bit;
                }
            }
            (
                m.declaration_index,
                flags,
                m.name.clone(),
                m.descriptor.to_string(),
            )
        }))
        .collect();
    table.sort_by_key(|entry| entry.0);
    put_u16(&mut body, table.len() as u16);
    for (_, flags, name, descriptor) in &table {
        put_u16(&mut body, *flags);
        put_u16(&mut body, pool.utf8(name));
        put_u16(&mut body, pool.utf8(descriptor));
        put_u16(&mut body, 0);
    }
    put_u16(&mut body, 0);

    let mut out = Vec::with_capacity(10 + pool.bytes.len() + body.len());
    out.extend_from_slice(&MAGIC.to_be_bytes());
    put_u16(&mut out, 0);
    put_u16(&mut out, 52);
    put_u16(&mut out, pool.count + 1);
    out.extend_from_slice(&pool.bytes);
    out.extend_from_slice(&body);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfile::{
        decode_modified_utf8, lift_type_model, load_fixture_model, parse_class_file,
    };

    #[test]
    fn mutf8_round_trip() {
        for s in ["", "abc", "\0", "\u{3a9}", "\u{1d11e}x", "\u{ffff}"] {
            assert_eq!(
                decode_modified_utf8(&encode_modified_utf8(s)).as_deref(),
                Some(s)
            );
        }
        assert_eq!(encode_modified_utf8("\0"), [0xc0, 0x80]);
    }

    #[test]
    fn model_round_trip() {
        let models = load_fixture_model(
            "public final class p.C extends p.B implements p.I {\n\
             private static final K J\n  public <init> (I)V\n  protected native f ([[Lp/C;)Lp/B;\n\
             \n}\n\
             public interface p.I extends p.J {\n  m ()V\n  static s ()I\n}\n",
        )
        .unwrap();
        for m in models {
            let bytes = write_class_file(&m);
            let raw = parse_class_file(&bytes).unwrap();
            assert_eq!(lift_type_model(&raw).unwrap(), m);
        }
    }
}
