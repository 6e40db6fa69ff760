use thiserror::Error;

use super::model::{JavaConstructor, JavaField, JavaMethod, JavaTypeModel, TypeKind, Visibility};
use super::raw::{ClassFileError, RawClassFile};
use crate::jvmtypes::{parse_field_descriptor, parse_method_descriptor, BadDescriptor};

pub const ACC_PUBLIC: u16 = 0x0001;
pub const ACC_PRIVATE: u16 = 0x0002;
pub const ACC_PROTECTED: u16 = 0x0004;
pub const ACC_STATIC: u16 = 0x0008;
pub const ACC_FINAL: u16 = 0x0010;
pub const ACC_SUPER: u16 = 0x0020;
pub const ACC_NATIVE: u16 = 0x0100;
pub const ACC_INTERFACE: u16 = 0x0200;
pub const ACC_ABSTRACT: u16 = 0x0400;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(transparent)]
    BadDescriptor(#[from] BadDescriptor),
    #[error(transparent)]
    ClassFile(#[from] ClassFileError),
    #[error("invalid type model: {0}")]
    InvalidModel(String),
}

pub fn visibility_from_flags(flags: u16) -> Visibility {
    if flags & ACC_PUBLIC != 0 {
        Visibility::Public
    } else if flags & ACC_PROTECTED != 0 {
        Visibility::Protected
    } else if flags & ACC_PRIVATE != 0 {
        Visibility::Private
    } else {
        Visibility::Package
    }
}

pub fn visibility_flags(v: Visibility) -> u16 {
    match v {
        Visibility::Public => ACC_PUBLIC,
        Visibility::Protected => ACC_PROTECTED,
        Visibility::Package => 0,
        Visibility::Private => ACC_PRIVATE,
    }
}

fn dotted(internal: &str) -> String {
    internal.replace('/', ".")
}

/// Resolves pool references into the semantic model. `<init>` methods
/// become constructors; `<clinit>` is dropped.
pub fn lift_type_model(raw: &RawClassFile) -> Result<JavaTypeModel, LiftError> {
    let is_interface = raw.access_flags & ACC_INTERFACE != 0;
    let qualified_name = dotted(raw.class_name(raw.this_class)?);
    let superclass = if is_interface || raw.super_class == 0 {
        None
    } else {
        Some(dotted(raw.class_name(raw.super_class)?))
    };
    let direct_interfaces = raw
        .interfaces
        .iter()
        .map(|&i| raw.class_name(i).map(dotted))
        .collect::<Result<Vec<_>, _>>()?;

    let mut fields = Vec::with_capacity(raw.fields.len());
    for f in &raw.fields {
        fields.push(JavaField {
            name: raw.utf8(f.name_index)?.to_owned(),
            descriptor: parse_field_descriptor(raw.utf8(f.descriptor_index)?)?,
            is_static: f.access_flags & ACC_STATIC != 0,
            is_final: f.access_flags & ACC_FINAL != 0,
            visibility: visibility_from_flags(f.access_flags),
        });
    }

    let mut methods = Vec::new();
    let mut constructors = Vec::new();
    for (declaration_index, m) in raw.methods.iter().enumerate() {
        let name = raw.utf8(m.name_index)?;
        let descriptor = parse_method_descriptor(raw.utf8(m.descriptor_index)?)?;
        let visibility = visibility_from_flags(m.access_flags);
        match name {
            "<clinit>" => {}
            "<init>" => constructors.push(JavaConstructor {
                descriptor,
                visibility,
                declaration_index,
            }),
            _ => methods.push(JavaMethod {
                name: name.to_owned(),
                descriptor,
                is_static: m.access_flags & ACC_STATIC != 0,
                is_final: m.access_flags & ACC_FINAL != 0,
                is_abstract: m.access_flags & ACC_ABSTRACT != 0,
                is_native: m.access_flags & ACC_NATIVE != 0,
                visibility,
                declaration_index,
            }),
        }
    }

    let model = JavaTypeModel {
        qualified_name,
        kind: if is_interface {
            TypeKind::Interface
        } else {
            TypeKind::Class
        },
        is_final: raw.access_flags & ACC_FINAL != 0,
        is_abstract: raw.access_flags & ACC_ABSTRACT != 0,
        superclass,
        direct_interfaces,
        fields,
        methods,
        constructors,
    };
    model.check_invariants().map_err(LiftError::InvalidModel)?;
    Ok(model)
}
