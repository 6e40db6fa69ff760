use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::classfile::{JavaTypeModel, TypeUniverse, OBJECT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeModelError {
    #[error("unresolved type {name} (needed by {needed_by})")]
    Unresolved { name: String, needed_by: String },
}

fn lookup<'u>(
    universe: &'u TypeUniverse,
    name: &str,
    needed_by: &str,
) -> Result<&'u JavaTypeModel, TypeModelError> {
    universe
        .get(name)
        .ok_or_else(|| TypeModelError::Unresolved {
            name: name.to_owned(),
            needed_by: needed_by.to_owned(),
        })
}

/// A type together with its computed hierarchy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedType {
    pub model: JavaTypeModel,
    /// Superclasses, nearest first. Interfaces get `[java.lang.Object]`.
    pub superclass_chain: Vec<String>,
    /// Every direct and indirect superinterface, each once.
    pub superinterface_closure: Vec<String>,
    pub is_placeholder: bool,
}

impl ResolvedType {
    pub fn name(&self) -> &str {
        &self.model.qualified_name
    }

    /// Superclass chain followed by the interface closure.
    pub fn all_supertypes(&self) -> impl Iterator<Item = &str> {
        self.superclass_chain
            .iter()
            .chain(&self.superinterface_closure)
            .map(String::as_str)
    }
}

/// Superinterfaces of `name`: its own direct interfaces breadth-first,
/// then whatever the superclass contributes, without repeats.
pub fn superinterface_closure(
    universe: &TypeUniverse,
    name: &str,
) -> Result<Vec<String>, TypeModelError> {
    let model = lookup(universe, name, name)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<(String, String)> = model
        .direct_interfaces
        .iter()
        .map(|i| (i.clone(), name.to_owned()))
        .collect();
    while let Some((iface, from)) = queue.pop_front() {
        if !seen.insert(iface.clone()) {
            continue;
        }
        let m = lookup(universe, &iface, &from)?;
        queue.extend(
            m.direct_interfaces
                .iter()
                .map(|i| (i.clone(), iface.clone())),
        );
        out.push(iface);
    }
    if let Some(sup) = &model.superclass {
        for iface in superinterface_closure(universe, sup)? {
            if seen.insert(iface.clone()) {
                out.push(iface);
            }
        }
    }
    Ok(out)
}

pub fn superclass_chain(
    universe: &TypeUniverse,
    name: &str,
) -> Result<Vec<String>, TypeModelError> {
    let model = lookup(universe, name, name)?;
    if model.is_interface() {
        return Ok(vec![OBJECT.to_owned()]);
    }
    let mut chain = Vec::new();
    let mut current = model;
    while let Some(sup) = &current.superclass {
        if chain.contains(sup) || *sup == model.qualified_name {
            break;
        }
        let next = lookup(universe, sup, &current.qualified_name)?;
        chain.push(sup.clone());
        current = next;
    }
    Ok(chain)
}

/// True for interfaces without fields or methods whose superinterfaces are
/// all placeholders too, and for anything listed in `forced`.
pub fn is_placeholder(universe: &TypeUniverse, name: &str, forced: &[String]) -> bool {
    if forced.iter().any(|f| f == name) {
        return true;
    }
    let mut stack = vec![name];
    let mut seen = BTreeSet::new();
    while let Some(n) = stack.pop() {
        if !seen.insert(n) {
            continue;
        }
        match universe.get(n) {
            Some(m) if m.is_interface() && m.fields.is_empty() && m.methods.is_empty() => {
                stack.extend(m.direct_interfaces.iter().map(String::as_str));
            }
            _ => return false,
        }
    }
    true
}

pub fn resolve(universe: &TypeUniverse, name: &str) -> Result<ResolvedType, TypeModelError> {
    resolve_with(universe, name, &[])
}

pub fn resolve_with(
    universe: &TypeUniverse,
    name: &str,
    forced_placeholders: &[String],
) -> Result<ResolvedType, TypeModelError> {
    let model = lookup(universe, name, name)?.clone();
    let superclass_chain = superclass_chain(universe, name)?;
    let superinterface_closure = superinterface_closure(universe, name)?;
    Ok(ResolvedType {
        is_placeholder: model.is_interface() && is_placeholder(universe, name, forced_placeholders),
        model,
        superclass_chain,
        superinterface_closure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfile::load_fixture_model;

    fn universe(text: &str) -> TypeUniverse {
        TypeUniverse::from_models(load_fixture_model(text).unwrap())
    }

    const BASE: &str = "class java.lang.Object {\n}\n";

    #[test]
    fn object_is_bare() {
        let u = universe(BASE);
        let r = resolve(&u, OBJECT).unwrap();
        assert!(r.superclass_chain.is_empty());
        assert!(r.superinterface_closure.is_empty());
    }

    #[test]
    fn diamond_is_deduplicated() {
        let u = universe(&format!(
            "{BASE}interface p.A {{\n m ()V\n}}\ninterface p.B extends p.A {{\n}}\n\
             interface p.C extends p.A {{\n}}\nclass p.D implements p.B, p.C {{\n}}\n"
        ));
        let r = resolve(&u, "p.D").unwrap();
        assert_eq!(r.superinterface_closure, vec!["p.B", "p.C", "p.A"]);
        assert_eq!(r.superclass_chain, vec![OBJECT]);
    }

    #[test]
    fn interfaces_chain_to_object() {
        let u = universe(&format!(
            "{BASE}interface java.io.DataOutput {{\n write (I)V\n}}\n\
             interface java.io.ObjectOutput extends java.io.DataOutput {{\n}}\n"
        ));
        let r = resolve(&u, "java.io.ObjectOutput").unwrap();
        assert_eq!(r.superclass_chain, vec![OBJECT]);
        assert_eq!(r.superinterface_closure, vec!["java.io.DataOutput"]);
        assert!(!r.is_placeholder);
    }

    #[test]
    fn missing_supertype_is_named() {
        let u = universe(&format!("{BASE}class p.X extends p.Gone {{\n}}\n"));
        assert_eq!(
            resolve(&u, "p.X").unwrap_err(),
            TypeModelError::Unresolved {
                name: "p.Gone".into(),
                needed_by: "p.X".into()
            }
        );
    }

    #[test]
    fn placeholders() {
        let u = universe(&format!(
            "{BASE}interface java.lang.Cloneable {{\n}}\ninterface p.Marker extends java.lang.Cloneable {{\n}}\n\
             interface p.Real {{\n f ()V\n}}\ninterface p.OnReal extends p.Real {{\n}}\n"
        ));
        assert!(is_placeholder(&u, "java.lang.Cloneable", &[]));
        assert!(is_placeholder(&u, "p.Marker", &[]));
        assert!(!is_placeholder(&u, "p.Real", &[]));
        assert!(!is_placeholder(&u, "p.OnReal", &[]));
        assert!(is_placeholder(&u, "p.Real", &["p.Real".into()]));
        assert!(!is_placeholder(&u, OBJECT, &[]));
    }
}
