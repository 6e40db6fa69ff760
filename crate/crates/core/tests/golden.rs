mod common;

use common::*;

use cwj_gen::jvmtypes::{parse_field_descriptor, parse_method_descriptor};

fn check(name: &str) {
    let headers = golden_universe_headers();
    if let Err(e) = check_golden(&read_golden(name), &headers) {
        panic!("{name}: {e}");
    }
}

#[test]
fn object_and_output_interfaces_bases_and_converters() {
    check("object_output_types.hpp");
}

#[test]
fn boolean_wrapper_set() {
    check("boolean_wrappers.hpp");
}

#[test]
fn boolean_array_template_and_typedefs() {
    check("boolean_arrays.hpp");
}

#[test]
fn object_is_same() {
    check("object_is_same.hpp");
}

#[test]
fn object_array_convenience_members() {
    check("object_array_convenience.hpp");
}

#[test]
fn boolean_reflection_members() {
    check("boolean_reflection.hpp");
}

#[test]
fn one_getter_per_final_field() {
    let headers = golden_universe_headers();
    let boolean = headers
        .iter()
        .find(|h| h.header_name == "jjava_lang_Boolean.h")
        .unwrap();
    let (classes, _) = declarations(&tokenize(&boolean.body));
    let jtype = classes
        .iter()
        .find(|c| c.head == ["class", "jjava_lang_Boolean", ":", "public", "jjava_lang_Object"])
        .unwrap();
    for field in ["TRUE", "FALSE", "TYPE", "serialVersionUID"] {
        let n = jtype
            .members
            .iter()
            .filter(|m| m.contains(&field.to_owned()) && !m.contains(&"jfieldID".to_owned()))
            .count();
        assert_eq!(n, 1, "{field}");
    }
    let value = jtype
        .members
        .iter()
        .filter(|m| m.contains(&"value".to_owned()) && !m.contains(&"jfieldID".to_owned()))
        .count();
    assert_eq!(value, 2);
}

#[test]
fn mismatches_are_reported() {
    let headers = golden_universe_headers();
    let swapped = read_golden("boolean_reflection.hpp").replace("Boolean_2", "Boolean_3");
    assert!(check_golden(&swapped, &headers).is_err());
    let bad_base = "class jjava_io_DataOutput:public jjava_io_Serializable{\n};\n";
    assert!(check_golden(bad_base, &headers).is_err());
    let reordered = "class jjava_lang_Object{\n    public:jjava_lang_Object(jobject);\n    public:operator jobject();\n};\n";
    assert!(check_golden(reordered, &headers).is_err());
}

#[test]
fn emitted_descriptors_reparse_to_their_members() {
    let universe = fixture_universe();
    let mut checked = 0;
    for h in golden_universe_headers() {
        let Some(model) = universe
            .iter()
            .find(|m| cwj_gen::jvmtypes::header_name(&m.qualified_name) == h.header_name)
        else {
            continue;
        };
        for (lookup, name, desc) in emitted_lookups(&h.body) {
            let found = if lookup.contains("Field") {
                let d = parse_field_descriptor(&desc).unwrap();
                model.fields.iter().any(|f| f.name == name && f.descriptor == d)
            } else if name == "<init>" {
                let d = parse_method_descriptor(&desc).unwrap();
                model.constructors.iter().any(|c| c.descriptor == d)
            } else {
                let d = parse_method_descriptor(&desc).unwrap();
                model.methods.iter().any(|m| m.name == name && m.descriptor == d)
            };
            assert!(found, "{}: {lookup} {name} {desc}", h.header_name);
            checked += 1;
        }
    }
    assert!(checked > 50, "{checked}");
}
