//! Header text for a planned class.
//!
//! A header has a declaration section and a definition section. The first
//! header a translation unit includes opens a declaration phase in which
//! nested includes contribute only their declarations; its definition
//! section then pulls every needed header again, now for definitions. This
//! lets mutually referring classes see each other's complete jtypes before
//! any inline body is compiled.

use std::fmt::Write as _;

use super::arrays::{emit_class_array, emit_primitive_arrays};
use super::plan::{Cascade, ClassPlan, DirectNative, IdSlot, Param, WrapperMember, WrapperRole};
use super::rename::quoted_spans;
use crate::typemodel::{ClashTag, MemberKind};

/// One generated file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitText {
    pub header_name: String,
    pub body: String,
}

impl EmitText {
    /// Spans renaming must not touch: JNI names and descriptors.
    pub fn protected_spans(&self) -> Vec<(usize, usize)> {
        quoted_spans(&self.body)
    }
}

fn guard(plan: &ClassPlan) -> String {
    plan.jtype.clone()
}

fn tag_type(clash: ClashTag) -> Option<&'static str> {
    match clash {
        ClashTag::None => None,
        ClashTag::Field => Some("CwjFieldTag"),
        ClashTag::Method => Some("CwjMethodTag"),
    }
}

/// `(JNIEnv*,jboolean)` style parameter list for in-class declarations.
fn decl_params(w: &WrapperMember) -> String {
    let mut v: Vec<&str> = tag_type(w.clash).into_iter().collect();
    v.push("JNIEnv*");
    v.extend(w.params.iter().map(|p| p.ty.as_str()));
    v.join(",")
}

/// Named parameter list for out-of-class definitions.
fn def_params(w: &WrapperMember) -> String {
    let mut v: Vec<String> = tag_type(w.clash).map(str::to_owned).into_iter().collect();
    v.push("JNIEnv* e".to_owned());
    v.extend(w.params.iter().enumerate().map(|(i, p)| format!("{} a{i}", p.ty)));
    v.join(",")
}

/// Arguments forwarding the named parameters unchanged.
fn forward_args(w: &WrapperMember) -> String {
    let mut v: Vec<String> = tag_type(w.clash).map(|t| format!("{t}()")).into_iter().collect();
    v.push("e".to_owned());
    v.extend((0..w.params.len()).map(|i| format!("a{i}")));
    v.join(",")
}

/// Arguments as passed through JNI's variadic calls.
fn jni_args(params: &[Param]) -> String {
    params
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if p.descriptor.is_reference() {
                format!(",static_cast<jobject>(a{i})")
            } else {
                format!(",a{i}")
            }
        })
        .collect()
}

fn ret_type(w: &WrapperMember) -> &str {
    if w.ret.is_void() {
        "void"
    } else {
        &w.ret.ty
    }
}

fn decl_line(w: &WrapperMember) -> String {
    format!(
        "    public:inline {}{} {}({});\n",
        if w.is_static { "static " } else { "" },
        ret_type(w),
        w.name,
        decl_params(w)
    )
}

fn slot_expr(slot: IdSlot) -> String {
    match slot {
        IdSlot::Field(i) => format!("cache::fid[{i}]"),
        IdSlot::Method(i) => format!("cache::mid[{i}]"),
    }
}

/// Lazily looks up the member's ID against the cached class reference.
fn fetch_id(plan: &ClassPlan, slot: IdSlot, indent: &str) -> String {
    let info = plan.id_info(slot);
    let id = slot_expr(slot);
    format!(
        "{indent}if(!{id}){{\n{indent}    {id}=e->{}(cache::clazz(e),\"{}\",\"{}\");\n{indent}    CWJ_CHECK(e);\n{indent}}}\n",
        info.lookup, info.java_name, info.descriptor
    )
}

fn call_and_return(ret: &Param, call: &str) -> String {
    if ret.is_void() {
        format!("    {call};\n    CWJ_CHECK(e);\n")
    } else if ret.descriptor.is_reference() {
        format!("    jobject r={call};\n    CWJ_CHECK(e);\n    return {}(r);\n", ret.ty)
    } else {
        format!("    {} r={call};\n    CWJ_CHECK(e);\n    return r;\n", ret.ty)
    }
}

fn wrapper_body(plan: &ClassPlan, w: &WrapperMember) -> String {
    let id = slot_expr(w.slot);
    let mut body = format!("    typedef {}<0> cache;\n", plan.cache_struct);
    if let Some(k) = w.static_value {
        let sv = &plan.static_values[k];
        let _ = write!(body, "    if(!cache::sv{k}_set){{\n{}", fetch_id(plan, w.slot, "        "));
        if sv.is_object {
            let _ = write!(
                body,
                "        jobject v=e->{}(cache::clazz(e),{id});\n        CWJ_CHECK(e);\n        cache::sv{k}=e->NewWeakGlobalRef(v);\n",
                sv.invoke
            );
        } else {
            let _ = write!(
                body,
                "        cache::sv{k}=e->{}(cache::clazz(e),{id});\n        CWJ_CHECK(e);\n",
                sv.invoke
            );
        }
        let _ = write!(body, "        cache::sv{k}_set=true;\n    }}\n");
        if sv.is_object {
            let _ = writeln!(body, "    return {}(cache::sv{k});", w.ret.ty);
        } else {
            let _ = writeln!(body, "    return cache::sv{k};");
        }
        return body;
    }
    body.push_str(&fetch_id(plan, w.slot, "    "));
    let args = jni_args(&w.params);
    let call = match (w.role, w.kind) {
        (WrapperRole::Constructor, _) => format!("e->NewObject(cache::clazz(e),{id}{args})"),
        (WrapperRole::Getter, _) if w.is_static => {
            format!("e->{}(cache::clazz(e),{id})", w.invoke)
        }
        (WrapperRole::Getter, _) => format!("e->{}(cwj_ref,{id})", w.invoke),
        (WrapperRole::Setter, _) if w.is_static => {
            format!("e->{}(cache::clazz(e),{id}{args})", w.invoke)
        }
        (WrapperRole::Setter, _) => format!("e->{}(cwj_ref,{id}{args})", w.invoke),
        (WrapperRole::Method, MemberKind::StaticMethod) => {
            format!("e->{}(cache::clazz(e),{id}{args})", w.invoke)
        }
        (WrapperRole::Method, MemberKind::NonpolymorphicMethod) => {
            format!("e->{}(cwj_ref,cache::clazz(e),{id}{args})", w.invoke)
        }
        (WrapperRole::Method, _) => format!("e->{}(cwj_ref,{id}{args})", w.invoke),
    };
    body.push_str(&call_and_return(&w.ret, &call));
    body
}

fn is_object(plan: &ClassPlan) -> bool {
    plan.is_object
}

fn emit_jtype_decl(plan: &ClassPlan, out: &mut String) {
    let j = &plan.jtype;
    match &plan.jtype_base {
        Some(base) => {
            let _ = writeln!(out, "class {j}:public {base}{{");
        }
        None => {
            let _ = writeln!(out, "class {j}{{");
        }
    }
    out.push_str("    // construction\n");
    for c in &plan.jtype_conversions {
        let _ = writeln!(out, "    public:inline operator {c}()const;");
    }
    if is_object(plan) {
        out.push_str("    public:inline operator jobject();\n    public:inline operator jobject()const;\n");
    }
    if let Some(raw) = plan.raw_conversion {
        let _ = writeln!(out, "    public:inline operator {raw}()const;");
    }
    let _ = writeln!(out, "    public:inline {j}();\n    public:inline {j}(jobject);");
    if let Some(big) = &plan.big_jtype {
        let _ = writeln!(out, "    public:inline {big} operator++(int);");
    }
    if plan.is_wrapped() {
        let conv = convenience(plan);
        if !conv.is_empty() {
            out.push_str("    // convenience\n");
            for c in &conv {
                let _ = writeln!(out, "    public:inline {};", c.decl);
            }
        }
        if !plan.wrappers.is_empty() {
            out.push_str("    // wrapped members\n");
            for w in &plan.wrappers {
                out.push_str(&decl_line(w));
            }
        }
        out.push_str("    // reflection\n    public:inline static jjava_lang_Class native(JNIEnv*);\n");
        for r in &plan.reflection {
            let t = match r.slot {
                IdSlot::Field(_) => "jfieldID",
                IdSlot::Method(_) => "jmethodID",
            };
            let _ = writeln!(out, "    public:inline static {t} {}(JNIEnv*,JNIEnv*);", r.name);
        }
    }
    out.push_str("    // class reference\n    public:inline static jclass cwj_class(JNIEnv*);\n");
    if plan.is_wrapped() {
        out.push_str("    public:static void native(JNIEnv*,jjava_lang_Class);\n");
    }
    if !plan.natives.is_empty() {
        out.push_str("    // direct natives\n");
        for n in &plan.natives {
            let _ = writeln!(
                out,
                "    public:inline {}{} {}({});",
                if n.is_static { "static " } else { "" },
                if n.ret.is_void() { "void" } else { &n.ret.ty },
                n.name,
                native_decl_params(n)
            );
        }
    }
    if is_object(plan) {
        out.push_str("    protected:jobject cwj_ref;\n");
    }
    out.push_str("};\n");
}

struct Convenience {
    decl: String,
    def: String,
}

fn convenience(plan: &ClassPlan) -> Vec<Convenience> {
    let j = &plan.jtype;
    let c = |decl: &str, def: &str| Convenience {
        decl: decl.to_owned(),
        def: def.to_owned(),
    };
    match plan.qualified_name.as_str() {
        "java.lang.Object" => vec![
            c(
                "jboolean IsSame(JNIEnv*,jjava_lang_Object)",
                &format!("inline jboolean {j}::IsSame(JNIEnv* e,jjava_lang_Object o){{\n    jboolean r=e->IsSameObject(cwj_ref,static_cast<jobject>(o));\n    CWJ_CHECK(e);\n    return r;\n}}\n"),
            ),
            c(
                "jboolean IsInstanceOf(JNIEnv*,jjava_lang_Class)",
                &format!("inline jboolean {j}::IsInstanceOf(JNIEnv* e,jjava_lang_Class c){{\n    jboolean r=e->IsInstanceOf(cwj_ref,static_cast<jclass>(c));\n    CWJ_CHECK(e);\n    return r;\n}}\n"),
            ),
        ],
        "java.lang.String" => vec![
            c(
                "static jjava_lang_String NewUTF(JNIEnv*,const char*)",
                &format!("inline jjava_lang_String {j}::NewUTF(JNIEnv* e,const char* s){{\n    jstring r=e->NewStringUTF(s);\n    CWJ_CHECK(e);\n    return jjava_lang_String(r);\n}}\n"),
            ),
            c(
                "jsize GetLength(JNIEnv*)const",
                &format!("inline jsize {j}::GetLength(JNIEnv* e)const{{\n    jsize r=e->GetStringLength(static_cast<jstring>(cwj_ref));\n    CWJ_CHECK(e);\n    return r;\n}}\n"),
            ),
            c(
                "jsize GetUTFLength(JNIEnv*)const",
                &format!("inline jsize {j}::GetUTFLength(JNIEnv* e)const{{\n    jsize r=e->GetStringUTFLength(static_cast<jstring>(cwj_ref));\n    CWJ_CHECK(e);\n    return r;\n}}\n"),
            ),
            c(
                "const char* GetUTFChars(JNIEnv*,jboolean*)const",
                &format!("inline const char* {j}::GetUTFChars(JNIEnv* e,jboolean* isCopy)const{{\n    const char* r=e->GetStringUTFChars(static_cast<jstring>(cwj_ref),isCopy);\n    CWJ_CHECK(e);\n    return r;\n}}\n"),
            ),
            c(
                "void ReleaseUTFChars(JNIEnv*,const char*)const",
                &format!("inline void {j}::ReleaseUTFChars(JNIEnv* e,const char* chars)const{{\n    e->ReleaseStringUTFChars(static_cast<jstring>(cwj_ref),chars);\n}}\n"),
            ),
        ],
        "java.lang.Class" => vec![
            c(
                "jjava_lang_Class GetSuperclass(JNIEnv*)const",
                &format!("inline jjava_lang_Class {j}::GetSuperclass(JNIEnv* e)const{{\n    jclass r=e->GetSuperclass(static_cast<jclass>(cwj_ref));\n    CWJ_CHECK(e);\n    return jjava_lang_Class(r);\n}}\n"),
            ),
            c(
                "jboolean IsAssignableFrom(JNIEnv*,jjava_lang_Class)const",
                &format!("inline jboolean {j}::IsAssignableFrom(JNIEnv* e,jjava_lang_Class c)const{{\n    jboolean r=e->IsAssignableFrom(static_cast<jclass>(cwj_ref),static_cast<jclass>(c));\n    CWJ_CHECK(e);\n    return r;\n}}\n"),
            ),
            c(
                "static jjava_lang_Class Find(JNIEnv*,const char*)",
                &format!("inline jjava_lang_Class {j}::Find(JNIEnv* e,const char* name){{\n    jclass r=e->FindClass(name);\n    CWJ_CHECK(e);\n    return jjava_lang_Class(r);\n}}\n"),
            ),
        ],
        "java.lang.Throwable" => vec![c(
            "jint Throw(JNIEnv*)const",
            &format!("inline jint {j}::Throw(JNIEnv* e)const{{\n    return e->Throw(static_cast<jthrowable>(cwj_ref));\n}}\n"),
        )],
        _ => Vec::new(),
    }
}

fn native_decl_params(n: &DirectNative) -> String {
    std::iter::once("JNIEnv&")
        .chain(n.params.iter().map(|p| p.ty.as_str()))
        .collect::<Vec<_>>()
        .join(",")
}

fn emit_big_decl(plan: &ClassPlan, big: &str, out: &mut String) {
    let j = &plan.jtype;
    if plan.big_bases.is_empty() {
        let _ = writeln!(out, "class {big}{{");
    } else {
        let bases: Vec<String> = plan
            .big_bases
            .iter()
            .map(|b| format!("public virtual {b}"))
            .collect();
        let _ = writeln!(out, "class {big}:{}{{", bases.join(","));
    }
    out.push_str("    // construction\n");
    if is_object(plan) {
        let _ = writeln!(out, "    public:inline operator {j}();");
    }
    let _ = writeln!(out, "    public:inline operator {j}()const;");
    for c in &plan.big_conversions {
        let _ = writeln!(out, "    public:inline operator {c}()const;");
    }
    let _ = writeln!(out, "    public:inline {big}({j});\n    protected:inline {big}();");
    if !plan.wrappers.is_empty() {
        out.push_str("    // wrapped members\n");
        for w in &plan.wrappers {
            out.push_str(&decl_line(w));
        }
    }
    if !plan.instance_caches.is_empty() {
        out.push_str("    // cached finals\n");
        let _ = writeln!(
            out,
            "    private:{} cwj_valid[{}];",
            word_type(plan),
            plan.validity_words()
        );
        for (k, c) in plan.instance_caches.iter().enumerate() {
            let _ = writeln!(out, "    private:{} cwj_fv{k};", c.ty);
        }
    }
    if is_object(plan) {
        let _ = writeln!(out, "    protected:{j} cwj_j;");
    }
    out.push_str("};\n");
}

fn word_type(plan: &ClassPlan) -> &'static str {
    if plan.word_bits > 32 {
        "unsigned long long"
    } else {
        "unsigned int"
    }
}

fn word_one(plan: &ClassPlan) -> &'static str {
    if plan.word_bits > 32 {
        "1ull"
    } else {
        "1u"
    }
}

fn emit_cache_struct(plan: &ClassPlan, out: &mut String) {
    let s = &plan.cache_struct;
    let nf = plan.field_ids.len();
    let nm = plan.method_ids.len();
    let _ = writeln!(out, "template<int D>\nstruct {s}{{");
    out.push_str("    static jclass cls;\n    static cwj::ArrayRefNode* arrays;\n");
    if nf > 0 {
        let _ = writeln!(out, "    static jfieldID fid[{nf}];");
    }
    if nm > 0 {
        let _ = writeln!(out, "    static jmethodID mid[{nm}];");
    }
    for (k, sv) in plan.static_values.iter().enumerate() {
        let _ = writeln!(out, "    static {} sv{k};\n    static bool sv{k}_set;", sv.storage);
    }
    out.push_str("    static jclass clazz(JNIEnv* e);\n    static void init(JNIEnv* e,jclass nc);\n};\n");
    let _ = writeln!(out, "template<int D>\njclass {s}<D>::cls=0;");
    let _ = writeln!(out, "template<int D>\ncwj::ArrayRefNode* {s}<D>::arrays=0;");
    if nf > 0 {
        let _ = writeln!(out, "template<int D>\njfieldID {s}<D>::fid[{nf}]={{}};");
    }
    if nm > 0 {
        let _ = writeln!(out, "template<int D>\njmethodID {s}<D>::mid[{nm}]={{}};");
    }
    for (k, sv) in plan.static_values.iter().enumerate() {
        let _ = writeln!(
            out,
            "template<int D>\n{} {s}<D>::sv{k}=0;\ntemplate<int D>\nbool {s}<D>::sv{k}_set=false;",
            sv.storage
        );
    }
    let _ = writeln!(
        out,
        "template<int D>\njclass {s}<D>::clazz(JNIEnv* e){{\n    if(!cls){{\n        jclass c=e->FindClass(\"{}\");\n        CWJ_CHECK(e);\n        cls=static_cast<jclass>(e->NewWeakGlobalRef(c));\n    }}\n    return cls;\n}}",
        plan.find_class_name
    );

    let _ = writeln!(out, "template<int D>\nvoid {s}<D>::init(JNIEnv* e,jclass nc){{");
    out.push_str("    if(cls){\n        e->DeleteWeakGlobalRef(cls);\n        cls=0;\n    }\n");
    for (k, sv) in plan.static_values.iter().enumerate() {
        if sv.is_object {
            let _ = writeln!(
                out,
                "    if(sv{k}){{\n        e->DeleteWeakGlobalRef(sv{k});\n        sv{k}=0;\n    }}"
            );
        }
        let _ = writeln!(out, "    sv{k}_set=false;");
    }
    if nf > 0 {
        let _ = writeln!(out, "    for(int i=0;i<{nf};++i){{\n        fid[i]=0;\n    }}");
    }
    if nm > 0 {
        let _ = writeln!(out, "    for(int i=0;i<{nm};++i){{\n        mid[i]=0;\n    }}");
    }
    out.push_str("    cwj::reset_array_refs(e,arrays);\n    if(!nc){\n        return;\n    }\n");
    out.push_str("    cls=static_cast<jclass>(e->NewWeakGlobalRef(nc));\n");
    for (i, info) in plan.field_ids.iter().enumerate() {
        let _ = writeln!(
            out,
            "    fid[{i}]=e->{}(cls,\"{}\",\"{}\");\n    CWJ_CHECK(e);",
            info.lookup, info.java_name, info.descriptor
        );
    }
    for (i, info) in plan.method_ids.iter().enumerate() {
        let _ = writeln!(
            out,
            "    mid[{i}]=e->{}(cls,\"{}\",\"{}\");\n    CWJ_CHECK(e);",
            info.lookup, info.java_name, info.descriptor
        );
    }
    for (k, sv) in plan.static_values.iter().enumerate() {
        let f = sv.field_slot;
        if sv.is_object {
            let _ = writeln!(
                out,
                "    {{\n        jobject v=e->{}(cls,fid[{f}]);\n        CWJ_CHECK(e);\n        sv{k}=e->NewWeakGlobalRef(v);\n    }}",
                sv.invoke
            );
        } else {
            let _ = writeln!(out, "    sv{k}=e->{}(cls,fid[{f}]);\n    CWJ_CHECK(e);", sv.invoke);
        }
        let _ = writeln!(out, "    sv{k}_set=true;");
    }
    out.push_str("}\n");
}

fn emit_jtype_defs(plan: &ClassPlan, out: &mut String) {
    let j = &plan.jtype;
    let cache = format!("{}<0>", plan.cache_struct);
    for c in &plan.jtype_conversions {
        let _ = writeln!(out, "inline {j}::operator {c}()const{{\n    return {c}(cwj_ref);\n}}");
    }
    if is_object(plan) {
        let _ = writeln!(
            out,
            "inline {j}::operator jobject(){{\n    return cwj_ref;\n}}\ninline {j}::operator jobject()const{{\n    return cwj_ref;\n}}"
        );
        let _ = writeln!(
            out,
            "inline {j}::{j}():cwj_ref(0){{\n}}\ninline {j}::{j}(jobject o):cwj_ref(o){{\n}}"
        );
    } else {
        let base = plan.jtype_base.as_deref().expect("non-Object jtypes have a base");
        let _ = writeln!(
            out,
            "inline {j}::{j}():{base}(){{\n}}\ninline {j}::{j}(jobject o):{base}(o){{\n}}"
        );
    }
    if let Some(raw) = plan.raw_conversion {
        let _ = writeln!(
            out,
            "inline {j}::operator {raw}()const{{\n    return static_cast<{raw}>(cwj_ref);\n}}"
        );
    }
    if let Some(big) = &plan.big_jtype {
        let _ = writeln!(out, "inline {big} {j}::operator++(int){{\n    return {big}(*this);\n}}");
    }
    if plan.is_wrapped() {
        for c in convenience(plan) {
            out.push_str(&c.def);
        }
        for w in &plan.wrappers {
            let _ = writeln!(
                out,
                "inline {} {j}::{}({}){{\n{}}}",
                ret_type(w),
                w.name,
                def_params(w),
                wrapper_body(plan, w)
            );
        }
        let _ = writeln!(
            out,
            "inline jjava_lang_Class {j}::native(JNIEnv* e){{\n    return jjava_lang_Class({cache}::clazz(e));\n}}"
        );
        for r in &plan.reflection {
            let t = match r.slot {
                IdSlot::Field(_) => "jfieldID",
                IdSlot::Method(_) => "jmethodID",
            };
            let _ = writeln!(
                out,
                "inline {t} {j}::{}(JNIEnv* e,JNIEnv*){{\n    typedef {cache} cache;\n{}    return {};\n}}",
                r.name,
                fetch_id(plan, r.slot, "    "),
                slot_expr(r.slot)
            );
        }
    }
    let _ = writeln!(
        out,
        "inline jclass {j}::cwj_class(JNIEnv* e){{\n    return {cache}::clazz(e);\n}}"
    );
    if plan.is_wrapped() {
        let _ = writeln!(
            out,
            "inline void {j}::native(JNIEnv* e,jjava_lang_Class c){{\n    jclass nc=static_cast<jclass>(c);\n    {cache}::init(e,nc);"
        );
        match &plan.cascade {
            Cascade::None => {}
            Cascade::Superclass(sup) => {
                let _ = writeln!(
                    out,
                    "    if(nc){{\n        jclass sc=e->GetSuperclass(nc);\n        CWJ_CHECK(e);\n        {sup}::native(e,jjava_lang_Class(sc));\n    }}"
                );
            }
            Cascade::Object => {
                let _ = writeln!(
                    out,
                    "    if(nc){{\n        jclass sc=e->FindClass(\"java/lang/Object\");\n        CWJ_CHECK(e);\n        jjava_lang_Object::native(e,jjava_lang_Class(sc));\n    }}"
                );
            }
        }
        out.push_str("}\n");
    }
    for n in &plan.natives {
        emit_direct_native(plan, n, out);
    }
}

fn emit_direct_native(plan: &ClassPlan, n: &DirectNative, out: &mut String) {
    let j = &plan.jtype;
    let receiver = if n.is_static {
        "cwj_class(&e)".to_owned()
    } else {
        "cwj_ref".to_owned()
    };
    let mut args = vec!["&e".to_owned(), receiver];
    for (i, (p, c)) in n.params.iter().zip(&n.c_params).enumerate() {
        args.push(if p.descriptor.is_reference() {
            format!("static_cast<{c}>(a{i})")
        } else {
            format!("a{i}")
        });
    }
    let params: Vec<String> = std::iter::once("JNIEnv& e".to_owned())
        .chain(n.params.iter().enumerate().map(|(i, p)| format!("{} a{i}", p.ty)))
        .collect();
    let call = format!("{}({})", n.symbol, args.join(","));
    let ret = if n.ret.is_void() { "void" } else { &n.ret.ty };
    let body = if n.ret.is_void() {
        format!("    {call};\n    CWJ_CHECK(&e);\n")
    } else if n.ret.descriptor.is_reference() {
        format!("    {} r={call};\n    CWJ_CHECK(&e);\n    return {}(r);\n", n.c_ret, n.ret.ty)
    } else {
        format!("    {} r={call};\n    CWJ_CHECK(&e);\n    return r;\n", n.c_ret)
    };
    let _ = writeln!(out, "inline {ret} {j}::{}({}){{\n{body}}}", n.name, params.join(","));
}

fn native_prototypes(plan: &ClassPlan, out: &mut String) {
    for n in &plan.natives {
        let receiver = if n.is_static { "jclass" } else { "jobject" };
        let params: Vec<&str> = ["JNIEnv*", receiver]
            .into_iter()
            .chain(n.c_params.iter().map(String::as_str))
            .collect();
        let _ = writeln!(
            out,
            "extern \"C\" JNIEXPORT {} JNICALL {}({});",
            n.c_ret,
            n.symbol,
            params.join(",")
        );
    }
}

fn emit_big_defs(plan: &ClassPlan, big: &str, out: &mut String) {
    let j = &plan.jtype;
    if is_object(plan) {
        let _ = writeln!(
            out,
            "inline {big}::operator {j}(){{\n    return cwj_j;\n}}\ninline {big}::operator {j}()const{{\n    return cwj_j;\n}}"
        );
        let _ = writeln!(
            out,
            "inline {big}::{big}({j} x):cwj_j(x){{\n}}\ninline {big}::{big}():cwj_j(){{\n}}"
        );
    } else {
        let _ = writeln!(
            out,
            "inline {big}::operator {j}()const{{\n    return {j}(static_cast<jobject>(cwj_j));\n}}"
        );
        let zero = if plan.instance_caches.is_empty() {
            String::new()
        } else {
            format!(
                "    for(int i=0;i<{};++i){{\n        cwj_valid[i]=0;\n    }}\n",
                plan.validity_words()
            )
        };
        let _ = writeln!(
            out,
            "inline {big}::{big}({j} x):Jjava_lang_Object(x){{\n{zero}}}\ninline {big}::{big}(){{\n{zero}}}"
        );
    }
    for c in &plan.big_conversions {
        let _ = writeln!(
            out,
            "inline {big}::operator {c}()const{{\n    return {c}(static_cast<jobject>(cwj_j));\n}}"
        );
    }
    for (wi, w) in plan.wrappers.iter().enumerate() {
        let call = if w.is_static {
            format!("{j}::{}({})", w.name, forward_args(w))
        } else {
            format!("static_cast<{j}>(*this).{}({})", w.name, forward_args(w))
        };
        let cached = plan
            .instance_caches
            .iter()
            .position(|c| c.wrapper == wi);
        let body = match cached {
            Some(k) => {
                let word = k / plan.word_bits as usize;
                let bit = k % plan.word_bits as usize;
                let one = word_one(plan);
                format!(
                    "    if(cwj_valid[{word}]&({one}<<{bit})){{\n        return cwj_fv{k};\n    }}\n    {} v={call};\n\
                     \x20   if(CWJ_IS_LOCAL_REF(static_cast<jobject>(cwj_j))){{\n        cwj_fv{k}=v;\n        cwj_valid[{word}]|=({one}<<{bit});\n    }}\n    return v;\n",
                    w.ret.ty
                )
            }
            None if w.ret.is_void() => format!("    {call};\n"),
            None => format!("    return {call};\n"),
        };
        let _ = writeln!(
            out,
            "inline {} {big}::{}({}){{\n{body}}}",
            ret_type(w),
            w.name,
            def_params(w)
        );
    }
}

/// The complete header for `plan`.
pub fn emit_header(plan: &ClassPlan) -> EmitText {
    let g = guard(plan);
    let mut out = String::new();
    let _ = writeln!(out, "// {} generated by cwj-gen\n", plan.header);
    let _ = writeln!(
        out,
        "#if !defined(CWJ_DECL_PHASE)\n#define CWJ_DECL_PHASE\n#define CWJ_OUTER_{g}\n#endif\n"
    );

    let _ = writeln!(out, "#if !defined(CWJ_DECL_{g})\n#define CWJ_DECL_{g}");
    for inc in &plan.decl_includes {
        let _ = writeln!(out, "#include \"{inc}\"");
    }
    out.push('\n');
    for f in &plan.forward_classes {
        let _ = writeln!(out, "class {f};");
    }
    if let Some(big) = &plan.big_jtype {
        let _ = writeln!(out, "class {big};");
    }
    for a in &plan.forward_arrays {
        let _ = writeln!(
            out,
            "template<unsigned int n> class {};\ntypedef {}< 1 > {};\ntypedef {}< 2 > {};",
            a.family, a.family, a.alias1, a.family, a.alias2
        );
    }
    out.push('\n');
    emit_jtype_decl(plan, &mut out);
    out.push('\n');
    if let Some(big) = &plan.big_jtype {
        emit_big_decl(plan, big, &mut out);
        out.push('\n');
    }
    let own_arrays = emit_class_array(plan);
    let primitive_arrays = is_object(plan).then(emit_primitive_arrays);
    out.push_str(&own_arrays.decl);
    if let Some(p) = &primitive_arrays {
        out.push_str(&p.decl);
    }
    out.push_str("#endif\n\n");

    let _ = writeln!(
        out,
        "#if defined(CWJ_OUTER_{g})\n#undef CWJ_OUTER_{g}\n#undef CWJ_DECL_PHASE\n#endif\n"
    );

    let _ = writeln!(
        out,
        "#if !defined(CWJ_DECL_PHASE) && !defined(CWJ_DEF_{g})\n#define CWJ_DEF_{g}"
    );
    for inc in &plan.def_includes {
        let _ = writeln!(out, "#include \"{inc}\"");
    }
    out.push('\n');
    emit_cache_struct(plan, &mut out);
    native_prototypes(plan, &mut out);
    emit_jtype_defs(plan, &mut out);
    if let Some(big) = &plan.big_jtype {
        emit_big_defs(plan, big, &mut out);
    }
    out.push_str(&own_arrays.def);
    if let Some(p) = &primitive_arrays {
        out.push_str(&p.def);
    }
    out.push_str("#endif\n");

    EmitText {
        header_name: plan.header.clone(),
        body: out,
    }
}
