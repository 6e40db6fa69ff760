//! Name manufacturing: JNI identifier escaping, jtype/Jtype names, array
//! template names and `Java_` native symbols.

use std::fmt::Write;

use super::descriptor::{MethodDescriptor, PrimitiveKind, TypeDescriptor};

/// Applies the JNI escape table to a qualified name or descriptor fragment.
///
/// `.` and `/` become `_`; `_`, `;` and `[` become `_1`, `_2`, `_3`; ASCII
/// letters and digits pass through; everything else becomes `_0xxxx` per
/// UTF-16 code unit, lowercase hex.
pub fn encode_java_identifier(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for c in name.chars() {
        match c {
            '.' | '/' => out.push('_'),
            '_' => out.push_str("_1"),
            ';' => out.push_str("_2"),
            '[' => out.push_str("_3"),
            c if c.is_ascii_alphanumeric() => out.push(c),
            c => {
                let mut units = [0u16; 2];
                for unit in c.encode_utf16(&mut units) {
                    let _ = write!(out, "_0{unit:04x}");
                }
            }
        }
    }
    out
}

/// `j` + encoded name: the lightweight wrapper's class name.
pub fn jtype_name(qualified_name: &str) -> String {
    format!("j{}", encode_java_identifier(qualified_name))
}

/// `J` + encoded name: the heavyweight wrapper's class name.
pub fn big_jtype_name(qualified_name: &str) -> String {
    format!("J{}", encode_java_identifier(qualified_name))
}

/// Generated header file for a class, e.g. `jjava_lang_String.h`.
pub fn header_name(qualified_name: &str) -> String {
    format!("{}.h", jtype_name(qualified_name))
}

/// The unqualified class name; constructors wrap under this name.
pub fn simple_name(qualified_name: &str) -> &str {
    qualified_name
        .rsplit_once('.')
        .map_or(qualified_name, |(_, simple)| simple)
}

/// JNI's C type name for a primitive (`jint`), or `void`.
pub fn jni_primitive_name(kind: PrimitiveKind) -> &'static str {
    match kind {
        PrimitiveKind::Boolean => "jboolean",
        PrimitiveKind::Byte => "jbyte",
        PrimitiveKind::Char => "jchar",
        PrimitiveKind::Short => "jshort",
        PrimitiveKind::Int => "jint",
        PrimitiveKind::Long => "jlong",
        PrimitiveKind::Float => "jfloat",
        PrimitiveKind::Double => "jdouble",
        PrimitiveKind::Void => "void",
    }
}

/// Template family for arrays of `element`: `jjava_lang_BooleanARRAYD`,
/// `jintARRAYD`.
pub fn array_family_name(element: &TypeDescriptor) -> String {
    match element {
        TypeDescriptor::Primitive(kind) => format!("{}ARRAYD", jni_primitive_name(*kind)),
        TypeDescriptor::Class(name) => format!("{}ARRAYD", jtype_name(name)),
        TypeDescriptor::Array { element, .. } => array_family_name(element),
    }
}

/// `family< n >` with the spacing the generated headers use.
pub fn array_instance(family: &str, dimension: impl std::fmt::Display) -> String {
    format!("{family}< {dimension} >")
}

/// Typedef alias for dimension 1 or 2.
///
/// Primitive one-dimensional arrays take a `1` suffix since JNI itself
/// already defines `jintArray` and friends.
pub fn array_alias(element: &TypeDescriptor, dimension: u8) -> Option<String> {
    let base = match element {
        TypeDescriptor::Primitive(kind) => jni_primitive_name(*kind).to_owned(),
        TypeDescriptor::Class(name) => jtype_name(name),
        TypeDescriptor::Array { .. } => return None,
    };
    match (dimension, element.is_primitive()) {
        (1, true) => Some(format!("{base}Array1")),
        (1, false) => Some(format!("{base}Array")),
        (2, _) => Some(format!("{base}ArrayArray")),
        _ => None,
    }
}

/// C++ names a Java type maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwjName {
    /// Type expression used in generated signatures: `jint`,
    /// `jjava_lang_Integer`, `jintArray1`, `jjava_lang_BooleanARRAYD< 3 >`.
    pub jtype_name: String,
    /// Heavyweight wrapper; only class and interface types have one.
    pub big_jtype_name: Option<String>,
    /// True when the type has no typedef alias (dimension above 2).
    pub is_template: bool,
    pub template_dimension: Option<u8>,
    /// Array template family, for arrays of any dimension.
    pub array_family: Option<String>,
}

pub fn cwj_type_name(d: &TypeDescriptor) -> CwjName {
    match d {
        TypeDescriptor::Primitive(kind) => CwjName {
            jtype_name: jni_primitive_name(*kind).to_owned(),
            big_jtype_name: None,
            is_template: false,
            template_dimension: None,
            array_family: None,
        },
        TypeDescriptor::Class(name) => CwjName {
            jtype_name: jtype_name(name),
            big_jtype_name: Some(big_jtype_name(name)),
            is_template: false,
            template_dimension: None,
            array_family: None,
        },
        TypeDescriptor::Array { element, dimension } => {
            let family = array_family_name(element);
            let (name, is_template) = match array_alias(element, *dimension) {
                Some(alias) => (alias, false),
                None => (array_instance(&family, dimension), true),
            };
            CwjName {
                jtype_name: name,
                big_jtype_name: None,
                is_template,
                template_dimension: Some(*dimension),
                array_family: Some(family),
            }
        }
    }
}

/// `Java_<class>_<method>`, with `__<params>` appended for overloaded
/// natives.
pub fn native_symbol_name(
    class_name: &str,
    method_name: &str,
    overloaded: bool,
    descriptor: &MethodDescriptor,
) -> String {
    let mut s = format!(
        "Java_{}_{}",
        encode_java_identifier(class_name),
        encode_java_identifier(method_name)
    );
    if overloaded {
        s.push_str("__");
        s.push_str(&encode_java_identifier(&descriptor.params_text()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jvmtypes::parse_method_descriptor;

    #[test]
    fn encoding_examples() {
        assert_eq!(
            encode_java_identifier("java.util.BitSet"),
            "java_util_BitSet"
        );
        assert_eq!(jtype_name("java.util.BitSet"), "jjava_util_BitSet");
        assert_eq!(encode_java_identifier("a.b_c.D"), "a_b_1c_D");
        // U+03A9 GREEK CAPITAL LETTER OMEGA
        assert_eq!(encode_java_identifier("p.\u{3a9}x"), "p__003a9x");
        assert_eq!(encode_java_identifier("A$B"), "A_00024B");
        // supplementary plane: one escape per surrogate
        assert_eq!(encode_java_identifier("\u{1d11e}"), "_0d834_0dd1e");
    }

    #[test]
    fn table_one_names() {
        let int = TypeDescriptor::Primitive(PrimitiveKind::Int);
        assert_eq!(cwj_type_name(&int).jtype_name, "jint");
        assert_eq!(
            cwj_type_name(&TypeDescriptor::array_of(int.clone(), 1)).jtype_name,
            "jintArray1"
        );
        assert_eq!(
            cwj_type_name(&TypeDescriptor::array_of(int.clone(), 2)).jtype_name,
            "jintArrayArray"
        );
        let integer = TypeDescriptor::class("java.lang.Integer");
        assert_eq!(
            cwj_type_name(&TypeDescriptor::array_of(integer, 1)).jtype_name,
            "jjava_lang_IntegerArray"
        );
        let void = TypeDescriptor::Primitive(PrimitiveKind::Void);
        assert_eq!(cwj_type_name(&void).jtype_name, "void");
    }

    #[test]
    fn array_templates() {
        let boolean = TypeDescriptor::class("java.lang.Boolean");
        let two = cwj_type_name(&TypeDescriptor::array_of(boolean.clone(), 2));
        assert_eq!(two.jtype_name, "jjava_lang_BooleanArrayArray");
        assert_eq!(
            two.array_family.as_deref(),
            Some("jjava_lang_BooleanARRAYD")
        );
        assert!(!two.is_template);
        let three = cwj_type_name(&TypeDescriptor::array_of(boolean, 3));
        assert_eq!(three.jtype_name, "jjava_lang_BooleanARRAYD< 3 >");
        assert!(three.is_template);
        assert_eq!(three.template_dimension, Some(3));
        let ints = cwj_type_name(&TypeDescriptor::array_of(
            TypeDescriptor::Primitive(PrimitiveKind::Int),
            4,
        ));
        assert_eq!(ints.jtype_name, "jintARRAYD< 4 >");
    }

    #[test]
    fn class_names_differ_only_in_first_char() {
        let n = cwj_type_name(&TypeDescriptor::class("java.io.DataOutput"));
        assert_eq!(n.jtype_name, "jjava_io_DataOutput");
        assert_eq!(n.big_jtype_name.as_deref(), Some("Jjava_io_DataOutput"));
    }

    #[test]
    fn native_symbols() {
        let main = parse_method_descriptor("([Ljava/lang/String;)V").unwrap();
        assert_eq!(
            native_symbol_name("Bar", "main", false, &main),
            "Java_Bar_main"
        );
        let init = parse_method_descriptor("()V").unwrap();
        assert_eq!(
            native_symbol_name("Bar", "nativeInit", false, &init),
            "Java_Bar_nativeInit"
        );
        let f = parse_method_descriptor("(I)V").unwrap();
        assert_eq!(native_symbol_name("p.C", "f", true, &f), "Java_p_C_f__I");
        assert_eq!(
            native_symbol_name("Bar", "main", true, &main),
            "Java_Bar_main___3Ljava_lang_String_2"
        );
    }

    #[test]
    fn headers_and_simple_names() {
        assert_eq!(header_name("java.lang.String"), "jjava_lang_String.h");
        assert_eq!(simple_name("java.util.BitSet"), "BitSet");
        assert_eq!(simple_name("Bar"), "Bar");
    }
}
