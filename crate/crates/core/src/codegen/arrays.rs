//! Array jtype templates.
//!
//! Every element type gets `template<unsigned int n> class <F>`, with `<F>< 0 >`
//! declared but never defined and `<F>< 1 >` specialized on the element
//! jtype. Members are declared in the class and defined after the element's
//! cache struct, in the definition section of the same header.

use std::fmt::Write as _;

use crate::jvmtypes::{
    array_alias, array_family_name, array_instance, jni_primitive_name, PrimitiveKind,
    TypeDescriptor,
};

use super::plan::ClassPlan;
use super::vocab::array_primitives;

const OBJECT_JTYPE: &str = "jjava_lang_Object";
const CLONEABLE_JTYPE: &str = "jjava_lang_Cloneable";
const OBJECT_CACHE: &str = "jjava_lang_Object_cwj_";
const OBJECT_FAMILY: &str = "jjava_lang_ObjectARRAYD";

/// Generated text for one or more array families.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArrayEmit {
    pub decl: String,
    pub def: String,
}

impl ArrayEmit {
    fn append(&mut self, other: ArrayEmit) {
        self.decl.push_str(&other.decl);
        self.def.push_str(&other.def);
    }
}

enum Element {
    Class {
        jtype: String,
    },
    Primitive(PrimitiveKind),
}

struct Family {
    name: String,
    alias1: String,
    alias2: String,
    element: Element,
    /// Cache struct whose `arrays` list resets this family's class refs.
    registry: String,
    /// Conversion targets of the primary template, in terms of `n`.
    conversions: Vec<String>,
    /// Conversion targets of the dimension-one specialization.
    conversions1: Vec<String>,
}

struct Member<'a> {
    is_static: bool,
    ret: String,
    name: String,
    params: &'a str,
    is_const: bool,
    init: &'a str,
    body: String,
}

struct ClassWriter<'a> {
    decl: String,
    def: String,
    template_prefix: &'a str,
    qualifier: String,
}

impl ClassWriter<'_> {
    fn member(&mut self, m: Member) {
        let ret_sp = if m.ret.is_empty() {
            String::new()
        } else {
            format!("{} ", m.ret)
        };
        let konst = if m.is_const { "const" } else { "" };
        let _ = writeln!(
            self.decl,
            "    public:inline {}{ret_sp}{}({}){konst};",
            if m.is_static { "static " } else { "" },
            m.name,
            m.params
        );
        let _ = writeln!(
            self.def,
            "{}inline {ret_sp}{}{}({}){konst}{}{{\n{}}}",
            self.template_prefix, self.qualifier, m.name, m.params, m.init, m.body
        );
    }
}

fn check(line: &str) -> String {
    format!("    {line}\n    CWJ_CHECK(e);\n")
}

fn emit_family(f: &Family) -> ArrayEmit {
    let mut out = ArrayEmit::default();
    let name = &f.name;
    let cache = format!("{name}_cwj_");
    let _ = writeln!(
        out.def,
        "template<unsigned int n>\nstruct {cache}{{\n    static jclass cls;\n    static cwj::ArrayRefNode node;\n}};\n\
         template<unsigned int n>\njclass {cache}<n>::cls=0;\n\
         template<unsigned int n>\ncwj::ArrayRefNode {cache}<n>::node={{0,0,false}};"
    );

    for dim1 in [false, true] {
        let n = if dim1 { "1" } else { "n" };
        let me = array_instance(name, n);
        let lower = if dim1 {
            match &f.element {
                Element::Class { jtype } => jtype.clone(),
                Element::Primitive(k) => jni_primitive_name(*k).to_owned(),
            }
        } else {
            array_instance(name, "n-1")
        };
        let mut w = ClassWriter {
            decl: String::new(),
            def: String::new(),
            template_prefix: if dim1 { "" } else { "template<unsigned int n>\n" },
            qualifier: format!("{me}::"),
        };
        if dim1 {
            let _ = writeln!(
                w.decl,
                "template<> class {};\ntemplate<>\nclass {me}:public {OBJECT_JTYPE}{{",
                array_instance(name, 0)
            );
        } else {
            let _ = writeln!(
                w.decl,
                "template<unsigned int n>\nclass {name}:public {OBJECT_JTYPE}{{"
            );
        }
        w.decl.push_str("    // construction\n");
        let conversions = if dim1 { &f.conversions1 } else { &f.conversions };
        for target in conversions {
            w.member(Member {
                is_static: false,
                ret: String::new(),
                name: format!("operator {target}"),
                params: "",
                is_const: true,
                init: "",
                body: format!("    return {target}(cwj_ref);\n"),
            });
        }
        w.member(Member {
            is_static: false,
            ret: String::new(),
            name: name.clone(),
            params: "",
            is_const: false,
            init: ":jjava_lang_Object()",
            body: String::new(),
        });
        w.member(Member {
            is_static: false,
            ret: String::new(),
            name: name.clone(),
            params: "jobject o",
            is_const: false,
            init: ":jjava_lang_Object(o)",
            body: String::new(),
        });
        let raw = match (&f.element, dim1) {
            (Element::Primitive(k), true) => format!("{}Array", jni_primitive_name(*k)),
            _ => "jobjectArray".to_owned(),
        };
        w.member(Member {
            is_static: false,
            ret: String::new(),
            name: format!("operator {raw}"),
            params: "",
            is_const: true,
            init: "",
            body: format!("    return static_cast<{raw}>(cwj_ref);\n"),
        });

        w.decl.push_str("    // class reference\n");
        let compute = match (&f.element, dim1) {
            (Element::Primitive(k), true) => format!(
                "        jclass c=e->FindClass(\"[{}\");\n        CWJ_CHECK(e);\n",
                k.descriptor_char()
            ),
            _ => {
                let lower_class = format!("{lower}::cwj_class(e)");
                format!(
                    "        jobjectArray a=e->NewObjectArray(0,{lower_class},0);\n        CWJ_CHECK(e);\n\
                     \x20       jclass c=e->GetObjectClass(a);\n"
                )
            }
        };
        w.member(Member {
            is_static: true,
            ret: "jclass".into(),
            name: "cwj_class".into(),
            params: "JNIEnv* e",
            is_const: false,
            init: "",
            body: format!(
                "    typedef {cache}< {n} > cache;\n    if(!cache::cls){{\n{compute}\
                 \x20       cache::cls=static_cast<jclass>(e->NewWeakGlobalRef(c));\n\
                 \x20       cwj::register_array_ref({}<0>::arrays,cache::node,cache::cls);\n    }}\n    return cache::cls;\n",
                f.registry
            ),
        });

        w.decl.push_str("    // convenience\n");
        w.member(Member {
            is_static: false,
            ret: "jsize".into(),
            name: "GetLength".into(),
            params: "JNIEnv* e",
            is_const: true,
            init: "",
            body: format!(
                "{}    return r;\n",
                check("jsize r=e->GetArrayLength(static_cast<jarray>(cwj_ref));")
            ),
        });
        match (&f.element, dim1) {
            (Element::Primitive(k), true) => primitive_one(&mut w, *k, &me),
            _ => {
                w.member(Member {
                    is_static: false,
                    ret: lower.clone(),
                    name: "GetElement".into(),
                    params: "JNIEnv* e,jsize index",
                    is_const: true,
                    init: "",
                    body: format!(
                        "{}    return {lower}(r);\n",
                        check("jobject r=e->GetObjectArrayElement(static_cast<jobjectArray>(cwj_ref),index);")
                    ),
                });
                let value_param = format!("JNIEnv* e,jsize index,{lower} value");
                w.member(Member {
                    is_static: false,
                    ret: "void".into(),
                    name: "SetElement".into(),
                    params: &value_param,
                    is_const: false,
                    init: "",
                    body: check(
                        "e->SetObjectArrayElement(static_cast<jobjectArray>(cwj_ref),index,static_cast<jobject>(value));",
                    ),
                });
                let new_param = format!("JNIEnv* e,jsize length,{lower} initialElement");
                w.member(Member {
                    is_static: true,
                    ret: me.clone(),
                    name: "New".into(),
                    params: &new_param,
                    is_const: false,
                    init: "",
                    body: format!(
                        "{}    return {me}(r);\n",
                        check(&format!(
                            "jobjectArray r=e->NewObjectArray(length,{lower}::cwj_class(e),static_cast<jobject>(initialElement));"
                        ))
                    ),
                });
            }
        }
        w.decl.push_str("};\n");
        out.decl.push_str(&w.decl);
        out.def.push_str(&w.def);
    }
    let _ = writeln!(
        out.decl,
        "typedef {} {};\ntypedef {} {};",
        array_instance(name, 1),
        f.alias1,
        array_instance(name, 2),
        f.alias2
    );
    out
}

fn primitive_one(w: &mut ClassWriter, k: PrimitiveKind, me: &str) {
    let t = jni_primitive_name(k);
    let fam = k.jni_family();
    let arr = format!("static_cast<{t}Array>(cwj_ref)");
    let region_get = format!("JNIEnv* e,jsize start,jsize len,{t}* buf");
    w.member(Member {
        is_static: false,
        ret: "void".into(),
        name: "GetRegion".into(),
        params: &region_get,
        is_const: true,
        init: "",
        body: check(&format!("e->Get{fam}ArrayRegion({arr},start,len,buf);")),
    });
    let region_set = format!("JNIEnv* e,jsize start,jsize len,const {t}* buf");
    w.member(Member {
        is_static: false,
        ret: "void".into(),
        name: "SetRegion".into(),
        params: &region_set,
        is_const: false,
        init: "",
        body: check(&format!("e->Set{fam}ArrayRegion({arr},start,len,buf);")),
    });
    w.member(Member {
        is_static: false,
        ret: format!("{t}*"),
        name: "GetElements".into(),
        params: "JNIEnv* e,jboolean* isCopy",
        is_const: true,
        init: "",
        body: format!(
            "{}    return r;\n",
            check(&format!("{t}* r=e->Get{fam}ArrayElements({arr},isCopy);"))
        ),
    });
    let release = format!("JNIEnv* e,{t}* elems,jint mode");
    w.member(Member {
        is_static: false,
        ret: "void".into(),
        name: "ReleaseElements".into(),
        params: &release,
        is_const: true,
        init: "",
        body: format!("    e->Release{fam}ArrayElements({arr},elems,mode);\n"),
    });
    w.member(Member {
        is_static: false,
        ret: t.into(),
        name: "GetElement".into(),
        params: "JNIEnv* e,jsize index",
        is_const: true,
        init: "",
        body: format!(
            "    {t} r=0;\n{}    return r;\n",
            check(&format!("e->Get{fam}ArrayRegion({arr},index,1,&r);"))
        ),
    });
    let set = format!("JNIEnv* e,jsize index,{t} value");
    w.member(Member {
        is_static: false,
        ret: "void".into(),
        name: "SetElement".into(),
        params: &set,
        is_const: false,
        init: "",
        body: check(&format!("e->Set{fam}ArrayRegion({arr},index,1,&value);")),
    });
    w.member(Member {
        is_static: true,
        ret: me.into(),
        name: "New".into(),
        params: "JNIEnv* e,jsize length",
        is_const: false,
        init: "",
        body: format!(
            "{}    return {me}(r);\n",
            check(&format!("{t}Array r=e->New{fam}Array(length);"))
        ),
    });
}

/// The array family of a class or interface.
pub fn emit_class_array(plan: &ClassPlan) -> ArrayEmit {
    let a = &plan.array;
    let with_cloneable = |dim: &str| {
        let mut v: Vec<String> = a
            .conversions
            .iter()
            .map(|fam| array_instance(fam, dim))
            .collect();
        v.push(CLONEABLE_JTYPE.to_owned());
        v
    };
    emit_family(&Family {
        name: a.family.clone(),
        alias1: a.alias1.clone(),
        alias2: a.alias2.clone(),
        element: Element::Class {
            jtype: a.element_jtype.clone(),
        },
        registry: plan.cache_struct.clone(),
        conversions: with_cloneable("n"),
        conversions1: with_cloneable("1"),
    })
}

/// The eight primitive array families, emitted with Object.
pub fn emit_primitive_arrays() -> ArrayEmit {
    let mut out = ArrayEmit::default();
    for k in array_primitives() {
        let element = TypeDescriptor::Primitive(k);
        out.append(emit_family(&Family {
            name: array_family_name(&element),
            alias1: array_alias(&element, 1).expect("dimension 1 alias"),
            alias2: array_alias(&element, 2).expect("dimension 2 alias"),
            element: Element::Primitive(k),
            registry: OBJECT_CACHE.to_owned(),
            conversions: vec![
                array_instance(OBJECT_FAMILY, "n-1"),
                CLONEABLE_JTYPE.to_owned(),
            ],
            conversions1: vec![CLONEABLE_JTYPE.to_owned()],
        }));
    }
    out
}
