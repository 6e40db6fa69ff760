use std::collections::{BTreeMap, BTreeSet};

use crate::jvmtypes::{MethodDescriptor, TypeDescriptor};

pub const OBJECT: &str = "java.lang.Object";
pub const CLASS: &str = "java.lang.Class";
pub const CLONEABLE: &str = "java.lang.Cloneable";

/// Member access level, ordered from most to least visible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Visibility {
    Public,
    Protected,
    Package,
    Private,
}

impl Visibility {
    pub fn keyword(self) -> Option<&'static str> {
        match self {
            Visibility::Public => Some("public"),
            Visibility::Protected => Some("protected"),
            Visibility::Package => None,
            Visibility::Private => Some("private"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeKind {
    Class,
    Interface,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JavaField {
    pub name: String,
    pub descriptor: TypeDescriptor,
    pub is_static: bool,
    pub is_final: bool,
    pub visibility: Visibility,
}

impl JavaField {
    pub fn is_private(&self) -> bool {
        self.visibility == Visibility::Private
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JavaMethod {
    pub name: String,
    pub descriptor: MethodDescriptor,
    pub is_static: bool,
    pub is_final: bool,
    pub is_abstract: bool,
    pub is_native: bool,
    pub visibility: Visibility,
    /// Position in the class file's method table (constructors included).
    pub declaration_index: usize,
}

impl JavaMethod {
    pub fn is_private(&self) -> bool {
        self.visibility == Visibility::Private
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JavaConstructor {
    pub descriptor: MethodDescriptor,
    pub visibility: Visibility,
    pub declaration_index: usize,
}

/// A class or interface as the generator sees it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JavaTypeModel {
    /// Dotted name, e.g. `java.lang.Boolean`.
    pub qualified_name: String,
    pub kind: TypeKind,
    pub is_final: bool,
    pub is_abstract: bool,
    pub superclass: Option<String>,
    pub direct_interfaces: Vec<String>,
    pub fields: Vec<JavaField>,
    pub methods: Vec<JavaMethod>,
    pub constructors: Vec<JavaConstructor>,
}

impl JavaTypeModel {
    pub fn is_interface(&self) -> bool {
        self.kind == TypeKind::Interface
    }

    /// Superclass (if any) followed by direct interfaces.
    pub fn direct_supertypes(&self) -> impl Iterator<Item = &str> {
        self.superclass
            .iter()
            .chain(self.direct_interfaces.iter())
            .map(String::as_str)
    }

    /// Classes named anywhere in field types or method/constructor
    /// signatures, excluding this type itself. Sorted and de-duplicated.
    pub fn member_types(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut add = |d: &TypeDescriptor| {
            if let Some(name) = d.referenced_class() {
                if name != self.qualified_name {
                    out.insert(name.to_owned());
                }
            }
        };
        for f in &self.fields {
            add(&f.descriptor);
        }
        for m in &self.methods {
            m.descriptor.params.iter().for_each(&mut add);
            add(&m.descriptor.ret);
        }
        for c in &self.constructors {
            c.descriptor.params.iter().for_each(&mut add);
        }
        out
    }

    /// Checks the structural invariants every model must satisfy.
    pub fn check_invariants(&self) -> Result<(), String> {
        let is_object = self.qualified_name == OBJECT;
        match (&self.superclass, self.kind) {
            (Some(_), _) if is_object => return Err("java.lang.Object has a superclass".into()),
            (None, TypeKind::Class) if !is_object => {
                return Err(format!("class {} has no superclass", self.qualified_name))
            }
            (Some(_), TypeKind::Interface) => {
                return Err(format!(
                    "interface {} has a superclass",
                    self.qualified_name
                ))
            }
            _ => {}
        }
        if self.is_interface() && !self.constructors.is_empty() {
            return Err(format!(
                "interface {} declares constructors",
                self.qualified_name
            ));
        }
        let mut seen = BTreeSet::new();
        for idx in self
            .methods
            .iter()
            .map(|m| m.declaration_index)
            .chain(self.constructors.iter().map(|c| c.declaration_index))
        {
            if !seen.insert(idx) {
                return Err(format!("duplicate declaration index {idx}"));
            }
        }
        Ok(())
    }
}

/// Every known type, keyed by qualified name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeUniverse {
    types: BTreeMap<String, JavaTypeModel>,
}

impl TypeUniverse {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_models(models: impl IntoIterator<Item = JavaTypeModel>) -> Self {
        let mut u = Self::new();
        for m in models {
            u.insert(m);
        }
        u
    }

    /// Adds or replaces a model; returns the previous one under that name.
    pub fn insert(&mut self, model: JavaTypeModel) -> Option<JavaTypeModel> {
        self.types.insert(model.qualified_name.clone(), model)
    }

    pub fn get(&self, name: &str) -> Option<&JavaTypeModel> {
        self.types.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.types.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &JavaTypeModel> {
        self.types.values()
    }

    /// Names referenced as supertypes or member types that no model defines.
    pub fn unresolved_names(&self) -> BTreeSet<String> {
        let mut missing = BTreeSet::new();
        for m in self.types.values() {
            for name in m
                .direct_supertypes()
                .map(str::to_owned)
                .chain(m.member_types())
            {
                if !self.types.contains_key(&name) {
                    missing.insert(name);
                }
            }
        }
        missing
    }
}
