use crate::classfile::{TypeKind, TypeUniverse, Visibility, CLASS, CLONEABLE, OBJECT};
use crate::jvmtypes::{
    array_alias, array_family_name, big_jtype_name, cwj_type_name, encode_java_identifier,
    header_name, jtype_name, native_symbol_name, simple_name, TypeDescriptor,
};
use crate::options::GenOptions;
use crate::typemodel::{
    admitted_member_types, base_types, cached_instance_field_count, is_placeholder, plan_members, ClashTag,
    FieldCache, Generation, MemberKind, MemberRef, ResolvedType,
};

use super::vocab::{family, jni_c_type};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    /// C++ type expression.
    pub ty: String,
    pub descriptor: TypeDescriptor,
}

impl Param {
    fn of(d: &TypeDescriptor) -> Self {
        Param {
            ty: cwj_type_name(d).jtype_name,
            descriptor: d.clone(),
        }
    }

    pub fn is_void(&self) -> bool {
        self.descriptor.is_void()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdSlot {
    Field(usize),
    Method(usize),
}

/// One cached field or method ID and how to look it up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdSlotInfo {
    pub java_name: String,
    pub descriptor: String,
    pub lookup: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrapperRole {
    Constructor,
    Getter,
    Setter,
    Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrapperMember {
    pub member: MemberRef,
    pub name: String,
    pub role: WrapperRole,
    pub kind: MemberKind,
    pub is_static: bool,
    pub clash: ClashTag,
    pub params: Vec<Param>,
    pub ret: Param,
    pub slot: IdSlot,
    /// The JNI function the body calls once IDs are at hand.
    pub invoke: String,
    pub cache: FieldCache,
    pub static_value: Option<usize>,
    pub instance_cache: Option<usize>,
    pub visibility: Visibility,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionMember {
    pub name: String,
    pub slot: IdSlot,
}

/// A cached final static field value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticValue {
    pub field_slot: usize,
    pub invoke: String,
    /// Storage type in the cache struct: a JNI primitive or `jobject`.
    pub storage: String,
    pub is_object: bool,
}

/// A final instance field cached in the Jtype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceCache {
    pub ty: String,
    /// Index of the getter in `wrappers`.
    pub wrapper: usize,
}

/// Convenience entry calling a native method's `Java_` function directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectNative {
    pub name: String,
    pub is_static: bool,
    pub params: Vec<Param>,
    pub ret: Param,
    pub symbol: String,
    pub c_params: Vec<String>,
    pub c_ret: String,
}

/// Where `native(JNIEnv*,jjava_lang_Class)` continues after caching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cascade {
    None,
    Superclass(String),
    /// Interfaces have no superclass; they continue with Object's jtype.
    Object,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayPlan {
    pub family: String,
    pub element: TypeDescriptor,
    pub element_jtype: String,
    /// Families of the element's supertypes, converted to at equal
    /// dimension.
    pub conversions: Vec<String>,
    pub alias1: String,
    pub alias2: String,
}

impl ArrayPlan {
    pub fn for_element(element: TypeDescriptor, conversions: Vec<String>) -> Self {
        ArrayPlan {
            family: array_family_name(&element),
            element_jtype: cwj_type_name(&element).jtype_name,
            alias1: array_alias(&element, 1).expect("dimension 1 has an alias"),
            alias2: array_alias(&element, 2).expect("dimension 2 has an alias"),
            element,
            conversions,
        }
    }
}

/// Forward declaration of another class's array template and aliases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayForward {
    pub family: String,
    pub alias1: String,
    pub alias2: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPlan {
    pub qualified_name: String,
    /// Slashed name for `FindClass`.
    pub find_class_name: String,
    pub simple_name: String,
    pub jtype: String,
    /// Absent for thin and placeholder classes.
    pub big_jtype: Option<String>,
    /// Template struct holding the class's static caches.
    pub cache_struct: String,
    pub header: String,
    pub kind: TypeKind,
    pub is_object: bool,
    pub generation: Generation,
    pub placeholder: bool,
    pub jtype_base: Option<String>,
    pub jtype_conversions: Vec<String>,
    /// Conversion to a raw JNI type beyond `jobject`, e.g. `jclass`.
    pub raw_conversion: Option<&'static str>,
    pub big_bases: Vec<String>,
    pub big_conversions: Vec<String>,
    pub wrappers: Vec<WrapperMember>,
    pub reflection: Vec<ReflectionMember>,
    pub field_ids: Vec<IdSlotInfo>,
    pub method_ids: Vec<IdSlotInfo>,
    pub static_values: Vec<StaticValue>,
    pub instance_caches: Vec<InstanceCache>,
    pub word_bits: u32,
    pub natives: Vec<DirectNative>,
    pub array: ArrayPlan,
    pub cascade: Cascade,
    pub decl_includes: Vec<String>,
    pub def_includes: Vec<String>,
    pub forward_classes: Vec<String>,
    pub forward_arrays: Vec<ArrayForward>,
}

impl ClassPlan {
    pub fn is_thin(&self) -> bool {
        self.generation == Generation::Thin
    }

    /// Whether members beyond the bare jtype are generated.
    pub fn is_wrapped(&self) -> bool {
        !self.is_thin() && !self.placeholder
    }

    pub fn id_info(&self, slot: IdSlot) -> &IdSlotInfo {
        match slot {
            IdSlot::Field(i) => &self.field_ids[i],
            IdSlot::Method(i) => &self.method_ids[i],
        }
    }

    pub fn validity_words(&self) -> usize {
        self.instance_caches.len().div_ceil(self.word_bits as usize)
    }

    pub fn wrapper(&self, java_name: &str, role: WrapperRole) -> Option<&WrapperMember> {
        self.wrappers
            .iter()
            .find(|w| w.role == role && self.id_info(w.slot).java_name == java_name)
    }
}

fn field_invoke(is_static: bool, setter: bool, d: &TypeDescriptor) -> String {
    format!(
        "{}{}{}Field",
        if setter { "Set" } else { "Get" },
        if is_static { "Static" } else { "" },
        family(d)
    )
}

fn method_invoke(kind: MemberKind, ret: &TypeDescriptor) -> String {
    let infix = match kind {
        MemberKind::StaticMethod => "Static",
        MemberKind::NonpolymorphicMethod => "Nonvirtual",
        _ => "",
    };
    format!("Call{infix}{}Method", family(ret))
}

/// Plans one class's header.
pub fn plan_class(
    universe: &TypeUniverse,
    resolved: &ResolvedType,
    generation: Generation,
    options: &GenOptions,
) -> ClassPlan {
    let model = &resolved.model;
    let name = model.qualified_name.as_str();
    let forced = &options.forced_placeholders;
    let placeholder = resolved.is_placeholder;
    let wrapped = generation == Generation::Full && !placeholder;
    let jtype = jtype_name(name);
    let is_object = name == OBJECT;

    let jtype_base = if is_object {
        None
    } else {
        Some(jtype_name(
            model.superclass.as_deref().unwrap_or(OBJECT),
        ))
    };
    let jtype_conversions = resolved
        .superinterface_closure
        .iter()
        .map(|i| jtype_name(i))
        .collect();

    let mut big_bases = Vec::new();
    let mut big_conversions = Vec::new();
    if wrapped && !is_object {
        for s in model.direct_supertypes() {
            let b = big_jtype_name(s);
            if !is_placeholder(universe, s, forced) && !big_bases.contains(&b) {
                big_bases.push(b);
            }
        }
        let object = big_jtype_name(OBJECT);
        if !big_bases.contains(&object) {
            big_bases.push(object);
        }
        big_conversions = resolved
            .superinterface_closure
            .iter()
            .filter(|i| is_placeholder(universe, i, forced))
            .map(|i| jtype_name(i))
            .collect();
    }

    let mut wrappers = Vec::new();
    let mut reflection = Vec::new();
    let mut field_ids = Vec::new();
    let mut method_ids = Vec::new();
    let mut static_values = Vec::new();
    let mut instance_cache_fields = Vec::new();
    if wrapped {
        let members = plan_members(universe, model, options);
        let mut fields = Vec::new();
        let mut ctors = Vec::new();
        let mut methods = Vec::new();
        for info in &members {
            match info.member {
                MemberRef::Field(i) => {
                    let f = &model.fields[i];
                    let slot = IdSlot::Field(field_ids.len());
                    field_ids.push(IdSlotInfo {
                        java_name: f.name.clone(),
                        descriptor: f.descriptor.to_string(),
                        lookup: if f.is_static {
                            "GetStaticFieldID"
                        } else {
                            "GetFieldID"
                        },
                    });
                    reflection.push(ReflectionMember {
                        name: info.reflection_name.clone(),
                        slot,
                    });
                    let static_value = match info.cache_class {
                        FieldCache::StaticFinalPrimitive | FieldCache::StaticFinalObject => {
                            let is_object = info.cache_class == FieldCache::StaticFinalObject;
                            static_values.push(StaticValue {
                                field_slot: field_ids.len() - 1,
                                invoke: field_invoke(true, false, &f.descriptor),
                                storage: if is_object {
                                    "jobject".to_owned()
                                } else {
                                    cwj_type_name(&f.descriptor).jtype_name
                                },
                                is_object,
                            });
                            Some(static_values.len() - 1)
                        }
                        _ => None,
                    };
                    let getter = WrapperMember {
                        member: info.member,
                        name: f.name.clone(),
                        role: WrapperRole::Getter,
                        kind: info.kind,
                        is_static: f.is_static,
                        clash: info.clash,
                        params: Vec::new(),
                        ret: Param::of(&f.descriptor),
                        slot,
                        invoke: field_invoke(f.is_static, false, &f.descriptor),
                        cache: info.cache_class,
                        static_value,
                        instance_cache: None,
                        visibility: f.visibility,
                    };
                    if info.cache_class == FieldCache::InstanceFinal {
                        instance_cache_fields.push(fields.len());
                    }
                    fields.push(getter);
                    if !f.is_final {
                        fields.push(WrapperMember {
                            role: WrapperRole::Setter,
                            params: vec![Param::of(&f.descriptor)],
                            ret: Param::of(&TypeDescriptor::Primitive(
                                crate::jvmtypes::PrimitiveKind::Void,
                            )),
                            invoke: field_invoke(f.is_static, true, &f.descriptor),
                            cache: FieldCache::None,
                            static_value: None,
                            member: info.member,
                            name: f.name.clone(),
                            kind: info.kind,
                            is_static: f.is_static,
                            clash: info.clash,
                            slot,
                            instance_cache: None,
                            visibility: f.visibility,
                        });
                    }
                }
                MemberRef::Constructor(i) => {
                    let c = &model.constructors[i];
                    let slot = IdSlot::Method(method_ids.len());
                    method_ids.push(IdSlotInfo {
                        java_name: "<init>".to_owned(),
                        descriptor: c.descriptor.to_string(),
                        lookup: "GetMethodID",
                    });
                    reflection.push(ReflectionMember {
                        name: info.reflection_name.clone(),
                        slot,
                    });
                    ctors.push(WrapperMember {
                        member: info.member,
                        name: simple_name(name).to_owned(),
                        role: WrapperRole::Constructor,
                        kind: MemberKind::Constructor,
                        is_static: true,
                        clash: info.clash,
                        params: c.descriptor.params.iter().map(Param::of).collect(),
                        ret: Param::of(&TypeDescriptor::class(name)),
                        slot,
                        invoke: "NewObject".to_owned(),
                        cache: FieldCache::None,
                        static_value: None,
                        instance_cache: None,
                        visibility: c.visibility,
                    });
                }
                MemberRef::Method(i) => {
                    let m = &model.methods[i];
                    let slot = IdSlot::Method(method_ids.len());
                    method_ids.push(IdSlotInfo {
                        java_name: m.name.clone(),
                        descriptor: m.descriptor.to_string(),
                        lookup: if m.is_static {
                            "GetStaticMethodID"
                        } else {
                            "GetMethodID"
                        },
                    });
                    reflection.push(ReflectionMember {
                        name: info.reflection_name.clone(),
                        slot,
                    });
                    methods.push(WrapperMember {
                        member: info.member,
                        name: m.name.clone(),
                        role: WrapperRole::Method,
                        kind: info.kind,
                        is_static: m.is_static,
                        clash: info.clash,
                        params: m.descriptor.params.iter().map(Param::of).collect(),
                        ret: Param::of(&m.descriptor.ret),
                        slot,
                        invoke: method_invoke(info.kind, &m.descriptor.ret),
                        cache: FieldCache::None,
                        static_value: None,
                        instance_cache: None,
                        visibility: m.visibility,
                    });
                }
            }
        }
        // Instance-final bits follow declaration order; the getters are
        // then regrouped by visibility.
        for (bit, &idx) in instance_cache_fields.iter().enumerate() {
            fields[idx].instance_cache = Some(bit);
        }
        for group in [&mut fields, &mut ctors, &mut methods] {
            group.sort_by_key(|w| w.visibility);
        }
        wrappers.extend(fields);
        wrappers.extend(ctors);
        wrappers.extend(methods);
    }
    let mut instance_caches: Vec<(usize, InstanceCache)> = wrappers
        .iter()
        .enumerate()
        .filter_map(|(i, w)| {
            w.instance_cache.map(|bit| {
                (
                    bit,
                    InstanceCache {
                        ty: w.ret.ty.clone(),
                        wrapper: i,
                    },
                )
            })
        })
        .collect();
    instance_caches.sort_by_key(|(bit, _)| *bit);
    let instance_caches: Vec<InstanceCache> =
        instance_caches.into_iter().map(|(_, c)| c).collect();
    debug_assert!(
        instance_caches.is_empty() || cached_instance_field_count(model, options).is_some()
    );

    let natives = if wrapped && options.direct_native {
        plan_direct_natives(model, &wrappers)
    } else {
        Vec::new()
    };

    let array = ArrayPlan::for_element(
        TypeDescriptor::class(name),
        resolved
            .all_supertypes()
            .map(|s| array_family_name(&TypeDescriptor::class(s)))
            .collect(),
    );

    let cascade = if is_object {
        Cascade::None
    } else if model.is_interface() {
        Cascade::Object
    } else {
        Cascade::Superclass(jtype_name(model.superclass.as_deref().unwrap_or(OBJECT)))
    };

    let member_types = if wrapped {
        admitted_member_types(model, options)
    } else {
        Default::default()
    };
    let mut decl_includes = vec![super::vocab::SUPPORT_HEADER_NAME.to_owned()];
    let bases = base_types(model);
    decl_includes.extend(bases.iter().map(|b| header_name(b)));
    let mut def_includes: Vec<String> = bases.iter().map(|b| header_name(b)).collect();
    def_includes.extend(member_types.iter().map(|m| header_name(m)));
    if wrapped && name != CLASS {
        def_includes.push(header_name(CLASS));
    }
    if name != CLONEABLE {
        def_includes.push(header_name(CLONEABLE));
    }
    dedup_in_order(&mut def_includes);

    let mut forward_classes: Vec<String> = member_types.iter().map(|m| jtype_name(m)).collect();
    if wrapped && name != CLASS {
        forward_classes.push(jtype_name(CLASS));
    }
    if name != CLONEABLE {
        forward_classes.push(jtype_name(CLONEABLE));
    }
    dedup_in_order(&mut forward_classes);

    let mut array_elements: Vec<String> = vec![name.to_owned()];
    if wrapped {
        let mut seen = |d: &TypeDescriptor| {
            if let TypeDescriptor::Array { element, .. } = d {
                if let TypeDescriptor::Class(c) = element.as_ref() {
                    array_elements.push(c.clone());
                }
            }
        };
        for w in &wrappers {
            w.params.iter().for_each(|p| seen(&p.descriptor));
            seen(&w.ret.descriptor);
        }
    }
    dedup_in_order(&mut array_elements);
    let forward_arrays = array_elements
        .iter()
        .map(|c| {
            let element = TypeDescriptor::class(c.as_str());
            ArrayForward {
                family: array_family_name(&element),
                alias1: array_alias(&element, 1).expect("dimension 1 alias"),
                alias2: array_alias(&element, 2).expect("dimension 2 alias"),
            }
        })
        .collect();

    ClassPlan {
        qualified_name: name.to_owned(),
        find_class_name: TypeDescriptor::class(name).find_class_name(),
        simple_name: simple_name(name).to_owned(),
        big_jtype: wrapped.then(|| big_jtype_name(name)),
        cache_struct: format!("j{}_cwj_", encode_java_identifier(name)),
        header: header_name(name),
        kind: model.kind,
        is_object,
        generation,
        placeholder,
        jtype_base,
        jtype_conversions,
        raw_conversion: match name {
            "java.lang.Class" => Some("jclass"),
            "java.lang.String" => Some("jstring"),
            "java.lang.Throwable" => Some("jthrowable"),
            _ => None,
        },
        big_bases,
        big_conversions,
        wrappers,
        reflection,
        field_ids,
        method_ids,
        static_values,
        instance_caches,
        word_bits: options.word_width.max(1),
        natives,
        array,
        cascade,
        decl_includes,
        def_includes,
        forward_classes,
        forward_arrays,
        jtype,
    }
}

fn dedup_in_order(v: &mut Vec<String>) {
    let mut seen = std::collections::BTreeSet::new();
    v.retain(|s| seen.insert(s.clone()));
}

fn plan_direct_natives(
    model: &crate::classfile::JavaTypeModel,
    wrappers: &[WrapperMember],
) -> Vec<DirectNative> {
    wrappers
        .iter()
        .filter_map(|w| match w.member {
            MemberRef::Method(i) if model.methods[i].is_native => Some((w, &model.methods[i])),
            _ => None,
        })
        .map(|(w, m)| {
            let overloaded = model
                .methods
                .iter()
                .filter(|o| o.is_native && o.name == m.name)
                .count()
                > 1;
            DirectNative {
                name: w.name.clone(),
                is_static: m.is_static,
                params: w.params.clone(),
                ret: w.ret.clone(),
                symbol: native_symbol_name(&model.qualified_name, &m.name, overloaded, &m.descriptor),
                c_params: m.descriptor.params.iter().map(jni_c_type).collect(),
                c_ret: jni_c_type(&m.descriptor.ret),
            }
        })
        .collect()
}
