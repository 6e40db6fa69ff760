use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::classfile::{TypeUniverse, OBJECT};
use crate::codegen::{family, is_jni_function, plan_class, Cascade, ClassPlan, IdSlot, WrapperMember, WrapperRole};
use crate::jvmtypes::{array_family_name, TypeDescriptor};
use crate::options::GenOptions;
use crate::typemodel::{resolve, Generation, TypeModelError};

use super::script::{ArrayElement, ArrayOp, Event, Script, ScriptLine, ScriptSyntax};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Plain JNI: every use looks up its class and ID again.
    Raw,
    /// Wrapper caches filled on first use.
    Lazy,
    /// Wrapper caches filled by `native(JNIEnv*,jjava_lang_Class)`.
    Eager,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "raw" => Ok(Mode::Raw),
            "lazy" => Ok(Mode::Lazy),
            "eager" => Ok(Mode::Eager),
            _ => Err(format!("unknown mode {s}")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Raw => "raw",
            Mode::Lazy => "lazy",
            Mode::Eager => "eager",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    /// A `jni` script line.
    Raw,
    /// The call doing the work the user asked for.
    Invoke,
    /// Filling a class, ID or static value cache on demand.
    CacheLookup,
    /// Computing an array class reference.
    ArrayRecompute,
    /// Work done by `native(JNIEnv*,jjava_lang_Class)`.
    Init,
    /// Dropping cached references.
    Release,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Charge {
    pub function: String,
    pub category: Category,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error(transparent)]
    Syntax(#[from] ScriptSyntax),
    #[error("line {line}: unknown class {class}")]
    UnknownClass { line: usize, class: String },
    #[error("line {line}: {class} has no wrapped member {member}")]
    UnknownMember {
        line: usize,
        class: String,
        member: String,
    },
    #[error("line {line}: {function} is not a JNI function")]
    UnknownFunction { line: usize, function: String },
    #[error("line {line}: unknown Jtype variable {var}")]
    UnknownVariable { line: usize, var: String },
    #[error("line {line}: {class} is used in eager mode before init")]
    EagerWithoutInit { line: usize, class: String },
    #[error("traces differ in shape: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CallTrace {
    pub mode: Mode,
    pub setup: Vec<Charge>,
    pub iterations: Vec<Vec<Charge>>,
}

#[derive(Debug, Default)]
struct ClassCache {
    cls: bool,
    fid: Vec<bool>,
    mid: Vec<bool>,
    /// Per static value: whether it is set.
    sv: Vec<bool>,
    ever_initialized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ArrayKey {
    family: String,
    dimension: u8,
}

#[derive(Debug)]
struct JVar {
    class: String,
    valid: BTreeSet<usize>,
}

struct Sim<'u> {
    universe: &'u TypeUniverse,
    options: GenOptions,
    mode: Mode,
    plans: BTreeMap<String, ClassPlan>,
    caches: BTreeMap<String, ClassCache>,
    arrays: BTreeSet<ArrayKey>,
    /// Array class references registered with each class, by qualified name.
    registries: BTreeMap<String, BTreeSet<ArrayKey>>,
    vars: BTreeMap<String, JVar>,
    out: Vec<Charge>,
    line: usize,
}

impl<'u> Sim<'u> {
    fn charge(&mut self, function: &str, category: Category) {
        self.out.push(Charge {
            function: function.to_owned(),
            category,
        });
    }

    fn plan(&mut self, class: &str) -> Result<&ClassPlan, SimError> {
        if !self.plans.contains_key(class) {
            let resolved = resolve(self.universe, class).map_err(|e| match e {
                TypeModelError::Unresolved { name, .. } => SimError::UnknownClass {
                    line: self.line,
                    class: name,
                },
            })?;
            let plan = plan_class(self.universe, &resolved, Generation::Full, &self.options);
            self.caches.insert(
                class.to_owned(),
                ClassCache {
                    fid: vec![false; plan.field_ids.len()],
                    mid: vec![false; plan.method_ids.len()],
                    sv: vec![false; plan.static_values.len()],
                    ..ClassCache::default()
                },
            );
            self.plans.insert(class.to_owned(), plan);
        }
        Ok(&self.plans[class])
    }

    fn cache(&mut self, class: &str) -> &mut ClassCache {
        self.caches.get_mut(class).expect("planned before use")
    }

    fn require_eager(&mut self, class: &str) -> Result<(), SimError> {
        if self.mode == Mode::Eager && !self.cache(class).ever_initialized {
            return Err(SimError::EagerWithoutInit {
                line: self.line,
                class: class.to_owned(),
            });
        }
        Ok(())
    }

    fn clazz(&mut self, class: &str) -> Result<(), SimError> {
        self.plan(class)?;
        if !self.cache(class).cls {
            self.require_eager(class)?;
            self.charge("FindClass", Category::CacheLookup);
            self.charge("NewWeakGlobalRef", Category::CacheLookup);
            self.cache(class).cls = true;
        }
        Ok(())
    }

    fn fetch_id(&mut self, class: &str, slot: IdSlot) -> Result<(), SimError> {
        let present = match slot {
            IdSlot::Field(i) => self.cache(class).fid[i],
            IdSlot::Method(i) => self.cache(class).mid[i],
        };
        if present {
            return Ok(());
        }
        self.require_eager(class)?;
        self.clazz(class)?;
        let lookup = self.plans[class].id_info(slot).lookup;
        self.charge(lookup, Category::CacheLookup);
        match slot {
            IdSlot::Field(i) => self.cache(class).fid[i] = true,
            IdSlot::Method(i) => self.cache(class).mid[i] = true,
        }
        Ok(())
    }

    /// Finds the wrapper for a member, looking through supertypes the way
    /// C++ name lookup reaches inherited members.
    fn find_wrapper(
        &mut self,
        class: &str,
        name: &str,
        role: WrapperRole,
        descriptor: Option<&str>,
    ) -> Result<(String, WrapperMember), SimError> {
        let resolved = resolve(self.universe, class).map_err(|_| SimError::UnknownClass {
            line: self.line,
            class: class.to_owned(),
        })?;
        let mut candidates = vec![class.to_owned()];
        if role != WrapperRole::Constructor {
            candidates.extend(resolved.all_supertypes().map(str::to_owned));
        }
        for c in candidates {
            let plan = self.plan(&c)?;
            let found = plan.wrappers.iter().find(|w| {
                let info = plan.id_info(w.slot);
                w.role == role
                    && info.java_name == name
                    && descriptor.is_none_or(|d| info.descriptor == d)
            });
            if let Some(w) = found {
                return Ok((c, w.clone()));
            }
        }
        Err(SimError::UnknownMember {
            line: self.line,
            class: class.to_owned(),
            member: match descriptor {
                Some(d) => format!("{name}{d}"),
                None => name.to_owned(),
            },
        })
    }

    fn raw_use(&mut self, class: &str, w: &WrapperMember) {
        let lookup = self.plans[class].id_info(w.slot).lookup;
        self.charge("FindClass", Category::CacheLookup);
        self.charge(lookup, Category::CacheLookup);
        let invoke = match w.role {
            WrapperRole::Constructor => "NewObject",
            _ => &w.invoke,
        };
        self.charge(invoke, Category::Invoke);
    }

    fn use_wrapper(&mut self, class: &str, w: &WrapperMember) -> Result<(), SimError> {
        if self.mode == Mode::Raw {
            self.raw_use(class, w);
            return Ok(());
        }
        if let (Some(k), WrapperRole::Getter) = (w.static_value, w.role) {
            if !self.cache(class).sv[k] {
                self.fetch_id(class, w.slot)?;
                let sv = self.plans[class].static_values[k].clone();
                self.charge(&sv.invoke, Category::CacheLookup);
                if sv.is_object {
                    self.charge("NewWeakGlobalRef", Category::CacheLookup);
                }
                self.cache(class).sv[k] = true;
            }
            return Ok(());
        }
        self.fetch_id(class, w.slot)?;
        self.clazz(class)?;
        let invoke = match w.role {
            WrapperRole::Constructor => "NewObject",
            _ => &w.invoke,
        };
        self.charge(invoke, Category::Invoke);
        Ok(())
    }

    /// `native(JNIEnv*,jjava_lang_Class)`; a release passes a null class.
    fn native(&mut self, class: &str, release: bool) -> Result<(), SimError> {
        let plan = self.plan(class)?;
        if !plan.is_wrapped() {
            return Err(SimError::UnknownMember {
                line: self.line,
                class: class.to_owned(),
                member: "native".to_owned(),
            });
        }
        let plan = plan.clone();
        if self.cache(class).cls {
            self.charge("DeleteWeakGlobalRef", Category::Release);
        }
        for (k, sv) in plan.static_values.iter().enumerate() {
            if sv.is_object && self.cache(class).sv[k] {
                self.charge("DeleteWeakGlobalRef", Category::Release);
            }
        }
        let registered = self.registries.get(class).cloned().unwrap_or_default();
        for key in registered {
            if self.arrays.remove(&key) {
                self.charge("DeleteWeakGlobalRef", Category::Release);
            }
        }
        let cache = self.cache(class);
        cache.cls = false;
        cache.fid.fill(false);
        cache.mid.fill(false);
        cache.sv.fill(false);
        if release {
            return Ok(());
        }
        self.charge("NewWeakGlobalRef", Category::Init);
        for info in plan.field_ids.iter().chain(&plan.method_ids) {
            self.charge(info.lookup, Category::Init);
        }
        for sv in &plan.static_values {
            self.charge(&sv.invoke, Category::Init);
            if sv.is_object {
                self.charge("NewWeakGlobalRef", Category::Init);
            }
        }
        let cache = self.cache(class);
        cache.cls = true;
        cache.fid.fill(true);
        cache.mid.fill(true);
        cache.sv.fill(true);
        cache.ever_initialized = true;
        match plan.cascade {
            Cascade::None => Ok(()),
            Cascade::Superclass(_) => {
                self.charge("GetSuperclass", Category::Init);
                let sup = self.universe.get(class).and_then(|m| m.superclass.clone());
                self.native(sup.as_deref().unwrap_or(OBJECT), false)
            }
            Cascade::Object => {
                self.charge("FindClass", Category::Init);
                self.native(OBJECT, false)
            }
        }
    }

    fn array_key(&mut self, element: &ArrayElement, dimension: u8) -> Result<(ArrayKey, String), SimError> {
        match element {
            ArrayElement::Primitive(k) => Ok((
                ArrayKey {
                    family: array_family_name(&TypeDescriptor::Primitive(*k)),
                    dimension,
                },
                OBJECT.to_owned(),
            )),
            ArrayElement::Class(c) => {
                self.plan(c)?;
                Ok((
                    ArrayKey {
                        family: array_family_name(&TypeDescriptor::class(c.clone())),
                        dimension,
                    },
                    c.clone(),
                ))
            }
        }
    }

    /// `cwj_class` of the element type at `dimension`; 0 is the element class.
    fn element_class(&mut self, element: &ArrayElement, dimension: u8) -> Result<(), SimError> {
        if dimension == 0 {
            return match element {
                ArrayElement::Class(c) => self.clazz(c),
                ArrayElement::Primitive(_) => Ok(()),
            };
        }
        let (key, registry) = self.array_key(element, dimension)?;
        if self.arrays.contains(&key) {
            return Ok(());
        }
        match (element, dimension) {
            (ArrayElement::Primitive(_), 1) => {
                self.charge("FindClass", Category::ArrayRecompute);
            }
            _ => {
                self.element_class(element, dimension - 1)?;
                self.charge("NewObjectArray", Category::ArrayRecompute);
                self.charge("GetObjectClass", Category::ArrayRecompute);
            }
        }
        self.charge("NewWeakGlobalRef", Category::ArrayRecompute);
        self.arrays.insert(key.clone());
        self.registries.entry(registry).or_default().insert(key);
        Ok(())
    }

    fn array(&mut self, op: ArrayOp, element: &ArrayElement, dimension: u8) -> Result<(), SimError> {
        let primitive = match element {
            ArrayElement::Primitive(k) if dimension == 1 => Some(family(&TypeDescriptor::Primitive(*k))),
            _ => None,
        };
        if let ArrayElement::Class(c) = element {
            self.plan(c)?;
        }
        let f = match (op, primitive) {
            (ArrayOp::Get, Some(p)) => format!("Get{p}ArrayRegion"),
            (ArrayOp::Get, None) => "GetObjectArrayElement".to_owned(),
            (ArrayOp::Set, Some(p)) => format!("Set{p}ArrayRegion"),
            (ArrayOp::Set, None) => "SetObjectArrayElement".to_owned(),
            (ArrayOp::Length, _) => "GetArrayLength".to_owned(),
            (ArrayOp::New, Some(p)) => format!("New{p}Array"),
            (ArrayOp::New, None) => {
                if self.mode == Mode::Raw {
                    self.charge("FindClass", Category::CacheLookup);
                } else {
                    self.element_class(element, dimension - 1)?;
                }
                "NewObjectArray".to_owned()
            }
        };
        self.charge(&f, Category::Invoke);
        Ok(())
    }

    fn step(&mut self, line: &ScriptLine) -> Result<(), SimError> {
        self.line = line.line;
        match &line.event {
            Event::New { class, descriptor } => {
                let (c, w) = self.find_wrapper(class, "<init>", WrapperRole::Constructor, Some(descriptor))?;
                self.use_wrapper(&c, &w)
            }
            Event::Call {
                class,
                name,
                descriptor,
            } => {
                let (c, w) = self.find_wrapper(class, name, WrapperRole::Method, Some(descriptor))?;
                self.use_wrapper(&c, &w)
            }
            Event::Get { class, field } => {
                let (c, w) = self.find_wrapper(class, field, WrapperRole::Getter, None)?;
                self.use_wrapper(&c, &w)
            }
            Event::Set { class, field } => {
                let (c, w) = self.find_wrapper(class, field, WrapperRole::Setter, None)?;
                self.use_wrapper(&c, &w)
            }
            Event::Jtype { var, class } => {
                self.plan(class)?;
                self.vars.insert(
                    var.clone(),
                    JVar {
                        class: class.clone(),
                        valid: BTreeSet::new(),
                    },
                );
                Ok(())
            }
            Event::JGet { var, field } => {
                let class = self
                    .vars
                    .get(var)
                    .map(|v| v.class.clone())
                    .ok_or_else(|| SimError::UnknownVariable {
                        line: self.line,
                        var: var.clone(),
                    })?;
                let (c, w) = self.find_wrapper(&class, field, WrapperRole::Getter, None)?;
                let cached = if self.mode != Mode::Raw && self.options.cache_final_instance && c == class {
                    w.instance_cache
                } else {
                    None
                };
                match cached {
                    Some(k) if self.vars[var].valid.contains(&k) => Ok(()),
                    Some(k) => {
                        self.use_wrapper(&c, &w)?;
                        self.vars.get_mut(var).expect("checked above").valid.insert(k);
                        Ok(())
                    }
                    None => self.use_wrapper(&c, &w),
                }
            }
            Event::Array {
                op,
                element,
                dimension,
            } => self.array(*op, element, *dimension),
            Event::Cast { class } => {
                self.plan(class)?;
                if self.mode == Mode::Raw {
                    self.charge("FindClass", Category::CacheLookup);
                } else {
                    self.clazz(class)?;
                }
                self.charge("IsInstanceOf", Category::Invoke);
                Ok(())
            }
            Event::Init { class } | Event::Release { class } => {
                let release = matches!(line.event, Event::Release { .. });
                self.plan(class)?;
                if self.mode == Mode::Raw {
                    return Ok(());
                }
                self.native(class, release)
            }
            Event::Jni { function, .. } => {
                if !is_jni_function(function) {
                    return Err(SimError::UnknownFunction {
                        line: self.line,
                        function: function.clone(),
                    });
                }
                self.charge(function, Category::Raw);
                Ok(())
            }
        }
    }

    fn run(&mut self, lines: &[ScriptLine]) -> Result<Vec<Charge>, SimError> {
        for l in lines {
            self.step(l)?;
        }
        Ok(std::mem::take(&mut self.out))
    }
}

/// Options the simulator plans classes with: every member wrapped and
/// final instance fields cached.
pub fn simulation_options() -> GenOptions {
    GenOptions {
        cache_final_instance: true,
        ..GenOptions::all_members()
    }
}

pub fn simulate(
    universe: &TypeUniverse,
    script: &Script,
    mode: Mode,
    iterations: usize,
) -> Result<CallTrace, SimError> {
    simulate_with(universe, script, mode, iterations, &simulation_options())
}

pub fn simulate_with(
    universe: &TypeUniverse,
    script: &Script,
    mode: Mode,
    iterations: usize,
    options: &GenOptions,
) -> Result<CallTrace, SimError> {
    let mut sim = Sim {
        universe,
        options: options.clone(),
        mode,
        plans: BTreeMap::new(),
        caches: BTreeMap::new(),
        arrays: BTreeSet::new(),
        registries: BTreeMap::new(),
        vars: BTreeMap::new(),
        out: Vec::new(),
        line: 0,
    };
    let setup = sim.run(&script.setup)?;
    let iterations = (0..iterations)
        .map(|_| sim.run(&script.body))
        .collect::<Result<_, _>>()?;
    Ok(CallTrace {
        mode,
        setup,
        iterations,
    })
}
