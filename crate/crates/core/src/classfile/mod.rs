//! Class-file input: the raw binary format, the semantic type model, and a
//! textual fixture format that produces the same model.

mod fixture;
mod lift;
mod model;
mod raw;
mod writer;

pub use fixture::{load_fixture_model, FixtureSyntax};
pub use lift::{
    lift_type_model, visibility_flags, visibility_from_flags, LiftError, ACC_ABSTRACT, ACC_FINAL,
    ACC_INTERFACE, ACC_NATIVE, ACC_PRIVATE, ACC_PROTECTED, ACC_PUBLIC, ACC_STATIC, ACC_SUPER,
};
pub use model::{
    JavaConstructor, JavaField, JavaMethod, JavaTypeModel, TypeKind, TypeUniverse, Visibility,
    CLASS, CLONEABLE, OBJECT,
};
pub use raw::{
    decode_modified_utf8, parse_class_file, ClassFileError, ConstantPoolEntry, RawAttribute,
    RawClassFile, RawMember, MAGIC, SUPPORTED_MAJOR,
};
pub use writer::{encode_modified_utf8, write_class_file};

/// Reads a class file from bytes straight into a type model.
pub fn read_type_model(bytes: &[u8]) -> Result<JavaTypeModel, LiftError> {
    lift_type_model(&parse_class_file(bytes)?)
}
