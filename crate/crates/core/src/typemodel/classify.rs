use std::collections::{BTreeMap, BTreeSet};

use crate::classfile::{JavaMethod, JavaTypeModel, TypeUniverse, Visibility};
use crate::jvmtypes::simple_name;
use crate::options::GenOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MemberRef {
    Field(usize),
    Constructor(usize),
    Method(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodKind {
    Static,
    Polymorphic,
    Nonpolymorphic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MemberKind {
    Constructor,
    StaticField,
    InstanceField,
    StaticMethod,
    PolymorphicMethod,
    NonpolymorphicMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldCache {
    None,
    StaticFinalPrimitive,
    StaticFinalObject,
    InstanceFinal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClashTag {
    None,
    Field,
    Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberPlanInfo {
    pub member: MemberRef,
    pub kind: MemberKind,
    pub cache_class: FieldCache,
    pub reflection_name: String,
    pub clash: ClashTag,
}

/// Whether some supertype declares an instance method `m` would override.
fn overrides(universe: &TypeUniverse, declaring: &JavaTypeModel, m: &JavaMethod) -> bool {
    let mut stack: Vec<&str> = declaring.direct_supertypes().collect();
    let mut seen = BTreeSet::new();
    while let Some(name) = stack.pop() {
        if !seen.insert(name) {
            continue;
        }
        let Some(sup) = universe.get(name) else {
            continue;
        };
        let found = sup.methods.iter().any(|s| {
            !s.is_static
                && !s.is_private()
                && s.name == m.name
                && s.descriptor.params == m.descriptor.params
        });
        if found {
            return true;
        }
        stack.extend(sup.direct_supertypes());
    }
    false
}

pub fn classify_method(
    universe: &TypeUniverse,
    declaring: &JavaTypeModel,
    method: &JavaMethod,
) -> MethodKind {
    if method.is_static {
        MethodKind::Static
    } else if method.is_private() {
        MethodKind::Nonpolymorphic
    } else if declaring.is_interface() || declaring.is_abstract || overrides(universe, declaring, method) {
        MethodKind::Polymorphic
    } else if method.is_final || declaring.is_final {
        MethodKind::Nonpolymorphic
    } else {
        MethodKind::Polymorphic
    }
}

/// Number of final instance fields a class caches, or `None` when the
/// class would need more validity words than allowed.
pub fn cached_instance_field_count(model: &JavaTypeModel, options: &GenOptions) -> Option<usize> {
    if !options.cache_final_instance {
        return None;
    }
    let count = model
        .fields
        .iter()
        .filter(|f| !f.is_static && f.is_final && options.visibility.admits(f.visibility))
        .count();
    let capacity = options.word_width as usize * options.max_validity_words as usize;
    (count <= capacity).then_some(count)
}

pub fn classify_field_cache(
    _universe: &TypeUniverse,
    declaring: &JavaTypeModel,
    field: &crate::classfile::JavaField,
    options: &GenOptions,
) -> FieldCache {
    match (field.is_final, field.is_static) {
        (false, _) => FieldCache::None,
        (true, true) if field.descriptor.is_primitive() => FieldCache::StaticFinalPrimitive,
        (true, true) => FieldCache::StaticFinalObject,
        (true, false) => match cached_instance_field_count(declaring, options) {
            Some(_) => FieldCache::InstanceFinal,
            None => FieldCache::None,
        },
    }
}

/// Fields in declaration order, then constructors and methods in
/// method-table order.
pub fn declaration_order(model: &JavaTypeModel) -> Vec<MemberRef> {
    let mut invocables: Vec<(usize, MemberRef)> = model
        .constructors
        .iter()
        .enumerate()
        .map(|(i, c)| (c.declaration_index, MemberRef::Constructor(i)))
        .chain(
            model
                .methods
                .iter()
                .enumerate()
                .map(|(i, m)| (m.declaration_index, MemberRef::Method(i))),
        )
        .collect();
    invocables.sort();
    (0..model.fields.len())
        .map(MemberRef::Field)
        .chain(invocables.into_iter().map(|(_, r)| r))
        .collect()
}

pub fn member_name(model: &JavaTypeModel, member: MemberRef) -> &str {
    match member {
        MemberRef::Field(i) => &model.fields[i].name,
        MemberRef::Constructor(_) => simple_name(&model.qualified_name),
        MemberRef::Method(i) => &model.methods[i].name,
    }
}

pub fn member_visibility(model: &JavaTypeModel, member: MemberRef) -> Visibility {
    match member {
        MemberRef::Field(i) => model.fields[i].visibility,
        MemberRef::Constructor(i) => model.constructors[i].visibility,
        MemberRef::Method(i) => model.methods[i].visibility,
    }
}

/// Reflection member names in declaration order. The first member with a
/// given name keeps it; later ones take the lowest free `_k`, k ≥ 2, that
/// is neither taken nor some member's bare name.
pub fn assign_reflection_suffixes(model: &JavaTypeModel) -> Vec<(MemberRef, String)> {
    let order = declaration_order(model);
    let bare: BTreeSet<&str> = order.iter().map(|&r| member_name(model, r)).collect();
    let mut taken = BTreeSet::new();
    let mut out = Vec::with_capacity(order.len());
    for r in order {
        let base = member_name(model, r);
        let name = if taken.contains(base) {
            (2..)
                .map(|k| format!("{base}_{k}"))
                .find(|c| !taken.contains(c) && !bare.contains(c.as_str()))
                .expect("unbounded search")
        } else {
            base.to_owned()
        };
        taken.insert(name.clone());
        out.push((r, name));
    }
    out
}

/// Names shared between a field and a method (or the constructors' simple
/// name); their wrappers need tag parameters to overload.
pub fn detect_field_method_clash(model: &JavaTypeModel) -> BTreeSet<String> {
    let mut kinds: BTreeMap<&str, u8> = BTreeMap::new();
    for f in &model.fields {
        *kinds.entry(&f.name).or_default() |= 1;
    }
    for m in &model.methods {
        *kinds.entry(&m.name).or_default() |= 2;
    }
    if !model.constructors.is_empty() {
        *kinds.entry(simple_name(&model.qualified_name)).or_default() |= 4;
    }
    kinds
        .into_iter()
        .filter(|(_, bits)| bits.count_ones() > 1)
        .map(|(name, _)| name.to_owned())
        .collect()
}

/// Classification of every member the options admit, in declaration order.
pub fn plan_members(
    universe: &TypeUniverse,
    model: &JavaTypeModel,
    options: &GenOptions,
) -> Vec<MemberPlanInfo> {
    let clashes = detect_field_method_clash(model);
    assign_reflection_suffixes(model)
        .into_iter()
        .filter(|&(r, _)| options.visibility.admits(member_visibility(model, r)))
        .map(|(member, reflection_name)| {
            let clashing = clashes.contains(member_name(model, member));
            let (kind, cache_class, clash) = match member {
                MemberRef::Field(i) => {
                    let f = &model.fields[i];
                    let kind = if f.is_static {
                        MemberKind::StaticField
                    } else {
                        MemberKind::InstanceField
                    };
                    let tag = if clashing {
                        ClashTag::Field
                    } else {
                        ClashTag::None
                    };
                    (kind, classify_field_cache(universe, model, f, options), tag)
                }
                MemberRef::Constructor(_) => {
                    (MemberKind::Constructor, FieldCache::None, ClashTag::None)
                }
                MemberRef::Method(i) => {
                    let kind = match classify_method(universe, model, &model.methods[i]) {
                        MethodKind::Static => MemberKind::StaticMethod,
                        MethodKind::Polymorphic => MemberKind::PolymorphicMethod,
                        MethodKind::Nonpolymorphic => MemberKind::NonpolymorphicMethod,
                    };
                    let tag = if clashing {
                        ClashTag::Method
                    } else {
                        ClashTag::None
                    };
                    (kind, FieldCache::None, tag)
                }
            };
            MemberPlanInfo {
                member,
                kind,
                cache_class,
                reflection_name,
                clash,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfile::load_fixture_model;
    use crate::options::VisibilityThreshold;

    fn parse(text: &str) -> (TypeUniverse, Vec<JavaTypeModel>) {
        let models = load_fixture_model(text).unwrap();
        (TypeUniverse::from_models(models.clone()), models)
    }

    const OBJECT: &str = "public class java.lang.Object {\n public <init> ()V\n \
                          public equals (Ljava/lang/Object;)Z\n public hashCode ()I\n}\n";

    #[test]
    fn method_kinds() {
        let (u, m) = parse(&format!(
            "{OBJECT}public final class p.F {{\n public equals (Ljava/lang/Object;)Z\n \
             public other ()V\n private hidden ()V\n public static s ()V\n}}\n\
             public class p.O {{\n public f ()V\n public final g ()V\n}}\n\
             public interface p.I {{\n write (I)V\n}}\n\
             public abstract class p.A {{\n public final h ()V\n}}\n"
        ));
        let kind = |t: usize, i: usize| classify_method(&u, &m[t], &m[t].methods[i]);
        assert_eq!(kind(1, 0), MethodKind::Polymorphic);
        assert_eq!(kind(1, 1), MethodKind::Nonpolymorphic);
        assert_eq!(kind(1, 2), MethodKind::Nonpolymorphic);
        assert_eq!(kind(1, 3), MethodKind::Static);
        assert_eq!(kind(2, 0), MethodKind::Polymorphic);
        assert_eq!(kind(2, 1), MethodKind::Nonpolymorphic);
        assert_eq!(kind(3, 0), MethodKind::Polymorphic);
        assert_eq!(kind(4, 0), MethodKind::Polymorphic);
    }

    #[test]
    fn field_caches() {
        let mut fields = String::new();
        for i in 0..33 {
            fields.push_str(&format!(" final f{i} I\n"));
        }
        let (u, m) = parse(&format!(
            "{OBJECT}class p.Many {{\n{fields}}}\nclass p.Few {{\n final x I\n \
             static final K J\n static final O Ljava/lang/Object;\n y I\n}}\n"
        ));
        let mut opts = GenOptions::all_members();
        let few = &m[2];
        let cache = |f: usize, o: &GenOptions| classify_field_cache(&u, few, &few.fields[f], o);
        assert_eq!(cache(0, &opts), FieldCache::None);
        assert_eq!(cache(1, &opts), FieldCache::StaticFinalPrimitive);
        assert_eq!(cache(2, &opts), FieldCache::StaticFinalObject);
        assert_eq!(cache(3, &opts), FieldCache::None);
        opts.cache_final_instance = true;
        assert_eq!(cache(0, &opts), FieldCache::InstanceFinal);
        let many = &m[1];
        assert_eq!(
            classify_field_cache(&u, many, &many.fields[0], &opts),
            FieldCache::None
        );
        opts.max_validity_words = 2;
        assert_eq!(
            classify_field_cache(&u, many, &many.fields[0], &opts),
            FieldCache::InstanceFinal
        );
    }

    #[test]
    fn suffixes() {
        let (_, m) = parse(
            "class p.C {\n f_2 I\n f ()V\n f (I)V\n f (J)V\n <init> ()V\n g ()V\n <init> (I)V\n}\n",
        );
        let names: Vec<String> = assign_reflection_suffixes(&m[0])
            .into_iter()
            .map(|(_, n)| n)
            .collect();
        assert_eq!(names, ["f_2", "f", "f_3", "f_4", "C", "g", "C_2"]);
    }

    #[test]
    fn clashes() {
        let (_, m) =
            parse("class p.C {\n size I\n size ()I\n other I\n <init> ()V\n}\nclass p.E {\n}\n");
        assert_eq!(
            detect_field_method_clash(&m[0]),
            BTreeSet::from(["size".to_owned()])
        );
        assert!(detect_field_method_clash(&m[1]).is_empty());
    }

    #[test]
    fn visibility_filtering() {
        let (u, m) = parse("class p.C {\n private a I\n protected b I\n c I\n public d I\n}\n");
        let names = |v| {
            let opts = GenOptions {
                visibility: v,
                ..GenOptions::default()
            };
            plan_members(&u, &m[0], &opts)
                .into_iter()
                .map(|p| p.reflection_name)
                .collect::<Vec<_>>()
        };
        assert_eq!(names(VisibilityThreshold::Public), ["d"]);
        assert_eq!(names(VisibilityThreshold::Protected), ["b", "d"]);
        assert_eq!(names(VisibilityThreshold::Private), ["a", "b", "c", "d"]);
    }
}
