//! The JNI vocabulary generated code may use, and the static support
//! header every generated header includes.

use crate::jvmtypes::{PrimitiveKind, TypeDescriptor};

/// Every JNI function a generated header may call through `JNIEnv`.
pub const JNI_FUNCTIONS: &[&str] = &[
    "FindClass", "GetSuperclass", "IsAssignableFrom", "Throw", "ExceptionCheck",
    "NewWeakGlobalRef", "DeleteWeakGlobalRef", "IsSameObject", "NewObject", "GetObjectClass",
    "IsInstanceOf", "GetMethodID", "GetFieldID", "GetStaticMethodID", "GetStaticFieldID",
    "CallObjectMethod", "CallBooleanMethod", "CallByteMethod", "CallCharMethod",
    "CallShortMethod", "CallIntMethod", "CallLongMethod", "CallFloatMethod", "CallDoubleMethod",
    "CallVoidMethod", "CallNonvirtualObjectMethod", "CallNonvirtualBooleanMethod",
    "CallNonvirtualByteMethod", "CallNonvirtualCharMethod", "CallNonvirtualShortMethod",
    "CallNonvirtualIntMethod", "CallNonvirtualLongMethod", "CallNonvirtualFloatMethod",
    "CallNonvirtualDoubleMethod", "CallNonvirtualVoidMethod", "GetObjectField",
    "SetObjectField", "GetBooleanField", "SetBooleanField", "GetByteField", "SetByteField",
    "GetCharField", "SetCharField", "GetShortField", "SetShortField", "GetIntField",
    "SetIntField", "GetLongField", "SetLongField", "GetFloatField", "SetFloatField",
    "GetDoubleField", "SetDoubleField", "CallStaticObjectMethod", "CallStaticBooleanMethod",
    "CallStaticByteMethod", "CallStaticCharMethod", "CallStaticShortMethod",
    "CallStaticIntMethod", "CallStaticLongMethod", "CallStaticFloatMethod",
    "CallStaticDoubleMethod", "CallStaticVoidMethod", "GetStaticObjectField",
    "SetStaticObjectField", "GetStaticBooleanField", "SetStaticBooleanField",
    "GetStaticByteField", "SetStaticByteField", "GetStaticCharField", "SetStaticCharField",
    "GetStaticShortField", "SetStaticShortField", "GetStaticIntField", "SetStaticIntField",
    "GetStaticLongField", "SetStaticLongField", "GetStaticFloatField", "SetStaticFloatField",
    "GetStaticDoubleField", "SetStaticDoubleField", "NewStringUTF", "GetStringLength",
    "GetStringUTFLength", "GetStringUTFChars", "ReleaseStringUTFChars", "GetArrayLength",
    "NewObjectArray", "GetObjectArrayElement", "SetObjectArrayElement", "NewBooleanArray",
    "NewByteArray", "NewCharArray", "NewShortArray", "NewIntArray", "NewLongArray",
    "NewFloatArray", "NewDoubleArray", "GetBooleanArrayElements", "ReleaseBooleanArrayElements",
    "GetByteArrayElements", "ReleaseByteArrayElements", "GetCharArrayElements",
    "ReleaseCharArrayElements", "GetShortArrayElements", "ReleaseShortArrayElements",
    "GetIntArrayElements", "ReleaseIntArrayElements", "GetLongArrayElements",
    "ReleaseLongArrayElements", "GetFloatArrayElements", "ReleaseFloatArrayElements",
    "GetDoubleArrayElements", "ReleaseDoubleArrayElements", "GetBooleanArrayRegion",
    "SetBooleanArrayRegion", "GetByteArrayRegion", "SetByteArrayRegion", "GetCharArrayRegion",
    "SetCharArrayRegion", "GetShortArrayRegion", "SetShortArrayRegion", "GetIntArrayRegion",
    "SetIntArrayRegion", "GetLongArrayRegion", "SetLongArrayRegion", "GetFloatArrayRegion",
    "SetFloatArrayRegion", "GetDoubleArrayRegion", "SetDoubleArrayRegion",
];

/// JNI types and macros generated code may name.
pub const JNI_TYPES: &[&str] = &[
    "JNIEnv", "JNIEXPORT", "JNICALL", "jobject", "jclass", "jstring", "jthrowable", "jarray",
    "jobjectArray", "jbooleanArray", "jbyteArray", "jcharArray", "jshortArray", "jintArray",
    "jlongArray", "jfloatArray", "jdoubleArray", "jfieldID", "jmethodID", "jsize", "jboolean",
    "jbyte", "jchar", "jshort", "jint", "jlong", "jfloat", "jdouble",
];

pub fn is_jni_function(name: &str) -> bool {
    JNI_FUNCTIONS.contains(&name)
}

/// The `<Type>` infix of JNI's typed function families: `Int`, `Object`,
/// `Void`.
pub fn family(d: &TypeDescriptor) -> &'static str {
    match d {
        TypeDescriptor::Primitive(k) => k.jni_family(),
        _ => "Object",
    }
}

/// JNI's raw C type for a value of `d`, as javah declares native
/// functions: `jstring`, `jclass` and `jthrowable` for those classes,
/// typed arrays for one-dimensional primitive arrays, `jobjectArray` for
/// other arrays.
pub fn jni_c_type(d: &TypeDescriptor) -> String {
    match d {
        TypeDescriptor::Primitive(k) => crate::jvmtypes::jni_primitive_name(*k).to_owned(),
        TypeDescriptor::Class(name) => match name.as_str() {
            "java.lang.String" => "jstring",
            "java.lang.Class" => "jclass",
            "java.lang.Throwable" => "jthrowable",
            _ => "jobject",
        }
        .to_owned(),
        TypeDescriptor::Array { element, dimension } => match (element.as_ref(), dimension) {
            (TypeDescriptor::Primitive(k), 1) => format!("{}Array", crate::jvmtypes::jni_primitive_name(*k)),
            _ => "jobjectArray".to_owned(),
        },
    }
}

/// Primitive kinds that have array types, in JNI order.
pub fn array_primitives() -> impl Iterator<Item = PrimitiveKind> {
    PrimitiveKind::VALUES.into_iter()
}

pub const SUPPORT_HEADER_NAME: &str = "cwj.h";

/// Static support header: the error type, the check macro, `JNICAST`, the
/// clash tags and the array class-reference registration list.
pub const SUPPORT_HEADER: &str = r#"#ifndef CWJ_H
#define CWJ_H

#include <jni.h>
#include <cstddef>

// Thrown when a JNI call leaves an exception pending.
class JNIFailure{};

#define CWJ_CHECK(e) do{if((e)->ExceptionCheck()){throw JNIFailure();}}while(0)

// Whether o is a local reference. JNI does not specify this; the default
// suits implementations that hand out positive local and negative global
// handles.
#ifndef CWJ_IS_LOCAL_REF
#define CWJ_IS_LOCAL_REF(o) (reinterpret_cast<std::ptrdiff_t>(o)>0)
#endif

// Leading parameters that tell apart a field wrapper and a method wrapper
// of the same name.
struct CwjFieldTag{};
struct CwjMethodTag{};

namespace cwj{

struct ArrayRefNode{
    jclass* ref;
    ArrayRefNode* next;
    bool linked;
};

inline void register_array_ref(ArrayRefNode*& head,ArrayRefNode& node,jclass& ref){
    if(!node.linked){
        node.ref=&ref;
        node.next=head;
        node.linked=true;
        head=&node;
    }
}

inline void reset_array_refs(JNIEnv* e,ArrayRefNode* head){
    for(ArrayRefNode* p=head;p;p=p->next){
        if(*p->ref){
            e->DeleteWeakGlobalRef(*p->ref);
            *p->ref=0;
        }
    }
}

template<class T>
inline T checked_cast(JNIEnv* e,jobject o){
    if(!o){
        return T();
    }
    jboolean ok=e->IsInstanceOf(o,T::cwj_class(e));
    CWJ_CHECK(e);
    return ok?T(o):T();
}

}

// Checked downcast: a null-state t unless o is an instance of t's class.
#define JNICAST(e,o,t) (::cwj::checked_cast< t >((e),static_cast<jobject>(o)))

#endif
"#;
