//! JVM type grammar and C++ name manufacturing.

mod descriptor;
mod naming;

pub use descriptor::{
    parse_field_descriptor, parse_method_descriptor, BadDescriptor, MethodDescriptor,
    PrimitiveKind, TypeDescriptor, MAX_ARRAY_DIMENSIONS,
};
pub use naming::{
    array_alias, array_family_name, array_instance, big_jtype_name, cwj_type_name,
    encode_java_identifier, header_name, jni_primitive_name, jtype_name, native_symbol_name,
    simple_name, CwjName,
};
