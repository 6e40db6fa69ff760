use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::classify::{declaration_order, member_visibility, MemberRef};
use super::resolve::TypeModelError;
use crate::classfile::{JavaTypeModel, TypeUniverse, CLASS, CLONEABLE, OBJECT};
use crate::jvmtypes::TypeDescriptor;
use crate::options::GenOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generation {
    /// jtype, array templates and class reference only.
    Thin,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureEntry {
    pub name: String,
    pub generation: Generation,
}

/// Classes named in the signatures of members the options admit.
pub fn admitted_member_types(model: &JavaTypeModel, options: &GenOptions) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut add = |d: &TypeDescriptor| {
        if let Some(n) = d.referenced_class() {
            if n != model.qualified_name {
                out.insert(n.to_owned());
            }
        }
    };
    for r in declaration_order(model) {
        if !options.visibility.admits(member_visibility(model, r)) {
            continue;
        }
        match r {
            MemberRef::Field(i) => add(&model.fields[i].descriptor),
            MemberRef::Constructor(i) => model.constructors[i]
                .descriptor
                .params
                .iter()
                .for_each(&mut add),
            MemberRef::Method(i) => {
                let d = &model.methods[i].descriptor;
                d.params.iter().for_each(&mut add);
                add(&d.ret);
            }
        }
    }
    out
}

/// Types whose jtypes a type's jtype derives from or converts to directly:
/// its direct supertypes, plus Object for interfaces.
pub fn base_types(model: &JavaTypeModel) -> Vec<String> {
    let mut v: Vec<String> = model.direct_supertypes().map(str::to_owned).collect();
    if model.is_interface() && !v.iter().any(|s| s == OBJECT) {
        v.insert(0, OBJECT.to_owned());
    }
    v
}

/// Headers a class's own header refers to, with the generation each needs.
///
/// Supertypes share the class's generation. A full class also needs its
/// member types (thin) and `java.lang.Class` for its reflection members.
/// Every class but Cloneable needs Cloneable for array conversions.
pub fn direct_dependencies(
    model: &JavaTypeModel,
    generation: Generation,
    options: &GenOptions,
) -> Vec<(String, Generation)> {
    let mut deps: Vec<(String, Generation)> = base_types(model)
        .into_iter()
        .map(|s| (s, generation))
        .collect();
    if generation == Generation::Full {
        deps.extend(
            admitted_member_types(model, options)
                .into_iter()
                .map(|n| (n, Generation::Thin)),
        );
        if model.qualified_name != CLASS {
            deps.push((CLASS.to_owned(), Generation::Thin));
        }
    }
    if model.qualified_name != CLONEABLE {
        deps.push((CLONEABLE.to_owned(), Generation::Thin));
    }
    let mut seen = BTreeSet::new();
    deps.retain(|(n, _)| n != &model.qualified_name && seen.insert(n.clone()));
    deps
}

/// Everything a generation run over `roots` touches, supertypes before
/// subtypes and otherwise by name.
pub fn dependency_closure(
    universe: &TypeUniverse,
    roots: &[String],
    options: &GenOptions,
) -> Result<Vec<ClosureEntry>, TypeModelError> {
    let root_generation = if options.thin {
        Generation::Thin
    } else {
        Generation::Full
    };
    let mut marks: BTreeMap<String, Generation> = BTreeMap::new();
    let mut queue: VecDeque<(String, Generation, String)> = roots
        .iter()
        .map(|r| (r.clone(), root_generation, r.clone()))
        .collect();
    while let Some((name, generation, needed_by)) = queue.pop_front() {
        match marks.get(&name) {
            Some(&g) if g >= generation => continue,
            _ => {}
        }
        let model = universe
            .get(&name)
            .ok_or_else(|| TypeModelError::Unresolved {
                name: name.clone(),
                needed_by: needed_by.clone(),
            })?;
        marks.insert(name.clone(), generation);
        for (dep, g) in direct_dependencies(model, generation, options) {
            queue.push_back((dep, g, name.clone()));
        }
    }

    // Kahn's algorithm over supertype edges, ready set ordered by name.
    let mut pending: BTreeMap<&str, usize> = BTreeMap::new();
    let mut subtypes: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for name in marks.keys() {
        let model = universe.get(name).expect("marked types exist");
        let supers: BTreeSet<&str> = base_types(model)
            .iter()
            .filter_map(|s| marks.get_key_value(s.as_str()).map(|(k, _)| k.as_str()))
            .filter(|s| *s != name)
            .collect();
        pending.insert(name, supers.len());
        for s in supers {
            subtypes.entry(s).or_default().push(name);
        }
    }
    let mut ready: BTreeSet<&str> = pending
        .iter()
        .filter(|(_, &n)| n == 0)
        .map(|(&k, _)| k)
        .collect();
    let mut order = Vec::with_capacity(marks.len());
    while let Some(next) = ready.pop_first() {
        order.push(ClosureEntry {
            name: next.to_owned(),
            generation: marks[next],
        });
        for &sub in subtypes.get(next).map(Vec::as_slice).unwrap_or_default() {
            let n = pending.get_mut(sub).expect("every subtype is pending");
            *n -= 1;
            if *n == 0 {
                ready.insert(sub);
            }
        }
    }
    // A supertype cycle is malformed input; keep whatever remains by name
    // so the run still terminates.
    for (name, &n) in &pending {
        if n > 0 {
            order.push(ClosureEntry {
                name: (*name).to_owned(),
                generation: marks[*name],
            });
        }
    }
    Ok(order)
}
