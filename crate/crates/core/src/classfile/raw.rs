//! Byte-level class file reader.
//!
//! Only the constant-pool entries needed for names, descriptors and the
//! type hierarchy are interpreted; every other entry is decoded far enough
//! to be skipped and validated for length. Attributes are kept as opaque
//! byte blobs.

use log::warn;
use thiserror::Error;

pub const MAGIC: u32 = 0xCAFE_BABE;
/// JDK 1.1 through Java 8.
pub const SUPPORTED_MAJOR: std::ops::RangeInclusive<u16> = 45..=52;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassFileError {
    #[error("bad magic {0:#010x}")]
    BadMagic(u32),
    #[error("truncated class file: needed {needed} bytes at offset {offset}")]
    Truncated { offset: usize, needed: usize },
    #[error("bad constant pool entry #{index}: {reason}")]
    BadConstantPool { index: u16, reason: String },
    #[error("constant pool entry #{index} is not valid modified UTF-8")]
    BadUtf8 { index: u16 },
    #[error("{0} trailing bytes after class file")]
    TrailingBytes(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstantPoolEntry {
    Utf8(String),
    Integer(i32),
    Float(u32),
    Long(i64),
    Double(u64),
    Class {
        name_index: u16,
    },
    String {
        string_index: u16,
    },
    FieldRef {
        class_index: u16,
        name_and_type_index: u16,
    },
    MethodRef {
        class_index: u16,
        name_and_type_index: u16,
    },
    InterfaceMethodRef {
        class_index: u16,
        name_and_type_index: u16,
    },
    NameAndType {
        name_index: u16,
        descriptor_index: u16,
    },
    MethodHandle {
        reference_kind: u8,
        reference_index: u16,
    },
    MethodType {
        descriptor_index: u16,
    },
    Dynamic {
        bootstrap_method_attr_index: u16,
        name_and_type_index: u16,
    },
    InvokeDynamic {
        bootstrap_method_attr_index: u16,
        name_and_type_index: u16,
    },
    Module {
        name_index: u16,
    },
    Package {
        name_index: u16,
    },
    /// Slot 0, and the slot after every Long/Double.
    Unusable,
}

impl ConstantPoolEntry {
    fn tag_name(&self) -> &'static str {
        match self {
            ConstantPoolEntry::Utf8(_) => "Utf8",
            ConstantPoolEntry::Integer(_) => "Integer",
            ConstantPoolEntry::Float(_) => "Float",
            ConstantPoolEntry::Long(_) => "Long",
            ConstantPoolEntry::Double(_) => "Double",
            ConstantPoolEntry::Class { .. } => "Class",
            ConstantPoolEntry::String { .. } => "String",
            ConstantPoolEntry::FieldRef { .. } => "Fieldref",
            ConstantPoolEntry::MethodRef { .. } => "Methodref",
            ConstantPoolEntry::InterfaceMethodRef { .. } => "InterfaceMethodref",
            ConstantPoolEntry::NameAndType { .. } => "NameAndType",
            ConstantPoolEntry::MethodHandle { .. } => "MethodHandle",
            ConstantPoolEntry::MethodType { .. } => "MethodType",
            ConstantPoolEntry::Dynamic { .. } => "Dynamic",
            ConstantPoolEntry::InvokeDynamic { .. } => "InvokeDynamic",
            ConstantPoolEntry::Module { .. } => "Module",
            ConstantPoolEntry::Package { .. } => "Package",
            ConstantPoolEntry::Unusable => "unusable slot",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAttribute {
    pub name_index: u16,
    pub data: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMember {
    pub access_flags: u16,
    pub name_index: u16,
    pub descriptor_index: u16,
    pub attributes: Vec<RawAttribute>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawClassFile {
    pub magic: u32,
    pub minor_version: u16,
    pub major_version: u16,
    /// Indexed exactly like the on-disk pool: entry 0 is `Unusable`.
    pub constant_pool: Vec<ConstantPoolEntry>,
    pub access_flags: u16,
    pub this_class: u16,
    pub super_class: u16,
    pub interfaces: Vec<u16>,
    pub fields: Vec<RawMember>,
    pub methods: Vec<RawMember>,
    pub attributes: Vec<RawAttribute>,
}

impl RawClassFile {
    pub fn entry(&self, index: u16) -> Result<&ConstantPoolEntry, ClassFileError> {
        match self.constant_pool.get(usize::from(index)) {
            Some(ConstantPoolEntry::Unusable) | None => Err(ClassFileError::BadConstantPool {
                index,
                reason: format!(
                    "index out of range (pool size {})",
                    self.constant_pool.len()
                ),
            }),
            Some(e) => Ok(e),
        }
    }

    pub fn utf8(&self, index: u16) -> Result<&str, ClassFileError> {
        match self.entry(index)? {
            ConstantPoolEntry::Utf8(s) => Ok(s),
            other => Err(tag_mismatch(index, "Utf8", other)),
        }
    }

    /// Internal (slashed) name of a Class entry.
    pub fn class_name(&self, index: u16) -> Result<&str, ClassFileError> {
        match self.entry(index)? {
            ConstantPoolEntry::Class { name_index } => self.utf8(*name_index),
            other => Err(tag_mismatch(index, "Class", other)),
        }
    }
}

fn tag_mismatch(index: u16, expected: &str, found: &ConstantPoolEntry) -> ClassFileError {
    ClassFileError::BadConstantPool {
        index,
        reason: format!("expected {expected}, found {}", found.tag_name()),
    }
}

/// Decodes the JVM's modified UTF-8: no raw NUL bytes, NUL as `C0 80`, and
/// supplementary characters as CESU-8 surrogate pairs.
pub fn decode_modified_utf8(bytes: &[u8]) -> Option<String> {
    let mut units: Vec<u16> = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let cont = |k: usize| bytes.get(i + k).copied().filter(|c| c & 0xC0 == 0x80);
        match b {
            0x01..=0x7F => {
                units.push(u16::from(b));
                i += 1;
            }
            0xC0..=0xDF => {
                let c1 = cont(1)?;
                let v = (u16::from(b & 0x1F) << 6) | u16::from(c1 & 0x3F);
                // Overlong forms are only legal for NUL.
                if v < 0x80 && v != 0 {
                    return None;
                }
                units.push(v);
                i += 2;
            }
            0xE0..=0xEF => {
                let c1 = cont(1)?;
                let c2 = cont(2)?;
                let v = (u16::from(b & 0x0F) << 12)
                    | (u16::from(c1 & 0x3F) << 6)
                    | u16::from(c2 & 0x3F);
                if v < 0x800 {
                    return None;
                }
                units.push(v);
                i += 3;
            }
            _ => return None,
        }
    }
    String::from_utf16(&units).ok()
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ClassFileError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        match end {
            Some(end) => {
                let s = &self.bytes[self.pos..end];
                self.pos = end;
                Ok(s)
            }
            None => Err(ClassFileError::Truncated {
                offset: self.pos,
                needed: n,
            }),
        }
    }

    fn u8(&mut self) -> Result<u8, ClassFileError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, ClassFileError> {
        let b = self.take(2)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32, ClassFileError> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn u64(&mut self) -> Result<u64, ClassFileError> {
        Ok((u64::from(self.u32()?) << 32) | u64::from(self.u32()?))
    }

    fn attributes(&mut self) -> Result<Vec<RawAttribute>, ClassFileError> {
        let count = self.u16()?;
        let mut out = Vec::with_capacity(usize::from(count).min(64));
        for _ in 0..count {
            let name_index = self.u16()?;
            let len = self.u32()? as usize;
            out.push(RawAttribute {
                name_index,
                data: self.take(len)?.to_vec(),
            });
        }
        Ok(out)
    }

    fn members(&mut self) -> Result<Vec<RawMember>, ClassFileError> {
        let count = self.u16()?;
        let mut out = Vec::with_capacity(usize::from(count).min(256));
        for _ in 0..count {
            out.push(RawMember {
                access_flags: self.u16()?,
                name_index: self.u16()?,
                descriptor_index: self.u16()?,
                attributes: self.attributes()?,
            });
        }
        Ok(out)
    }

    fn constant_pool(&mut self) -> Result<Vec<ConstantPoolEntry>, ClassFileError> {
        let count = self.u16()?;
        let mut pool = Vec::with_capacity(usize::from(count));
        pool.push(ConstantPoolEntry::Unusable);
        while pool.len() < usize::from(count) {
            let index = pool.len() as u16;
            let tag = self.u8()?;
            let entry = match tag {
                1 => {
                    let len = usize::from(self.u16()?);
                    let bytes = self.take(len)?;
                    let s = decode_modified_utf8(bytes).ok_or(ClassFileError::BadUtf8 { index })?;
                    ConstantPoolEntry::Utf8(s)
                }
                3 => ConstantPoolEntry::Integer(self.u32()? as i32),
                4 => ConstantPoolEntry::Float(self.u32()?),
                5 => ConstantPoolEntry::Long(self.u64()? as i64),
                6 => ConstantPoolEntry::Double(self.u64()?),
                7 => ConstantPoolEntry::Class {
                    name_index: self.u16()?,
                },
                8 => ConstantPoolEntry::String {
                    string_index: self.u16()?,
                },
                9 => ConstantPoolEntry::FieldRef {
                    class_index: self.u16()?,
                    name_and_type_index: self.u16()?,
                },
                10 => ConstantPoolEntry::MethodRef {
                    class_index: self.u16()?,
                    name_and_type_index: self.u16()?,
                },
                11 => ConstantPoolEntry::InterfaceMethodRef {
                    class_index: self.u16()?,
                    name_and_type_index: self.u16()?,
                },
                12 => ConstantPoolEntry::NameAndType {
                    name_index: self.u16()?,
                    descriptor_index: self.u16()?,
                },
                15 => ConstantPoolEntry::MethodHandle {
                    reference_kind: self.u8()?,
                    reference_index: self.u16()?,
                },
                16 => ConstantPoolEntry::MethodType {
                    descriptor_index: self.u16()?,
                },
                17 => ConstantPoolEntry::Dynamic {
                    bootstrap_method_attr_index: self.u16()?,
                    name_and_type_index: self.u16()?,
                },
                18 => ConstantPoolEntry::InvokeDynamic {
                    bootstrap_method_attr_index: self.u16()?,
                    name_and_type_index: self.u16()?,
                },
                19 => ConstantPoolEntry::Module {
                    name_index: self.u16()?,
                },
                20 => ConstantPoolEntry::Package {
                    name_index: self.u16()?,
                },
                other => {
                    return Err(ClassFileError::BadConstantPool {
                        index,
                        reason: format!("unknown tag {other}"),
                    })
                }
            };
            let wide = matches!(
                entry,
                ConstantPoolEntry::Long(_) | ConstantPoolEntry::Double(_)
            );
            pool.push(entry);
            if wide {
                if pool.len() >= usize::from(count) {
                    return Err(ClassFileError::BadConstantPool {
                        index,
                        reason: "8-byte constant occupies the last pool slot".into(),
                    });
                }
                pool.push(ConstantPoolEntry::Unusable);
            }
        }
        Ok(pool)
    }
}

/// Parses a complete class file. Trailing bytes are rejected.
pub fn parse_class_file(bytes: &[u8]) -> Result<RawClassFile, ClassFileError> {
    let mut r = Reader { bytes, pos: 0 };
    let magic = r.u32()?;
    if magic != MAGIC {
        return Err(ClassFileError::BadMagic(magic));
    }
    let minor_version = r.u16()?;
    let major_version = r.u16()?;
    if !SUPPORTED_MAJOR.contains(&major_version) {
        warn!(
            "class file version {major_version}.{minor_version} is outside 45..52; parsing anyway"
        );
    }
    let constant_pool = r.constant_pool()?;
    let access_flags = r.u16()?;
    let this_class = r.u16()?;
    let super_class = r.u16()?;
    let interface_count = r.u16()?;
    let interfaces = (0..interface_count)
        .map(|_| r.u16())
        .collect::<Result<Vec<_>, _>>()?;
    let fields = r.members()?;
    let methods = r.members()?;
    let attributes = r.attributes()?;
    if r.pos != bytes.len() {
        return Err(ClassFileError::TrailingBytes(bytes.len() - r.pos));
    }
    let raw = RawClassFile {
        magic,
        minor_version,
        major_version,
        constant_pool,
        access_flags,
        this_class,
        super_class,
        interfaces,
        fields,
        methods,
        attributes,
    };
    validate(&raw)?;
    Ok(raw)
}

/// Checks every pool index the file uses for range and tag.
fn validate(raw: &RawClassFile) -> Result<(), ClassFileError> {
    for entry in &raw.constant_pool {
        match *entry {
            ConstantPoolEntry::Class { name_index }
            | ConstantPoolEntry::Module { name_index }
            | ConstantPoolEntry::Package { name_index } => {
                raw.utf8(name_index)?;
            }
            ConstantPoolEntry::String { string_index } => {
                raw.utf8(string_index)?;
            }
            ConstantPoolEntry::MethodType { descriptor_index } => {
                raw.utf8(descriptor_index)?;
            }
            ConstantPoolEntry::NameAndType {
                name_index,
                descriptor_index,
            } => {
                raw.utf8(name_index)?;
                raw.utf8(descriptor_index)?;
            }
            ConstantPoolEntry::FieldRef {
                class_index,
                name_and_type_index,
            }
            | ConstantPoolEntry::MethodRef {
                class_index,
                name_and_type_index,
            }
            | ConstantPoolEntry::InterfaceMethodRef {
                class_index,
                name_and_type_index,
            } => {
                raw.class_name(class_index)?;
                match raw.entry(name_and_type_index)? {
                    ConstantPoolEntry::NameAndType { .. } => {}
                    other => return Err(tag_mismatch(name_and_type_index, "NameAndType", other)),
                }
            }
            ConstantPoolEntry::Dynamic {
                name_and_type_index,
                ..
            }
            | ConstantPoolEntry::InvokeDynamic {
                name_and_type_index,
                ..
            } => match raw.entry(name_and_type_index)? {
                ConstantPoolEntry::NameAndType { .. } => {}
                other => return Err(tag_mismatch(name_and_type_index, "NameAndType", other)),
            },
            ConstantPoolEntry::MethodHandle {
                reference_index, ..
            } => {
                raw.entry(reference_index)?;
            }
            _ => {}
        }
    }
    raw.class_name(raw.this_class)?;
    if raw.super_class != 0 {
        raw.class_name(raw.super_class)?;
    }
    for &i in &raw.interfaces {
        raw.class_name(i)?;
    }
    for m in raw.fields.iter().chain(&raw.methods) {
        raw.utf8(m.name_index)?;
        raw.utf8(m.descriptor_index)?;
        for a in &m.attributes {
            raw.utf8(a.name_index)?;
        }
    }
    for a in &raw.attributes {
        raw.utf8(a.name_index)?;
    }
    Ok(())
}
