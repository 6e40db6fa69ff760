//! Hierarchy resolution and member classification. Everything codegen
//! decides about a member is decided here.

mod classify;
mod closure;
mod resolve;

pub use classify::{
    assign_reflection_suffixes, cached_instance_field_count, classify_field_cache, classify_method,
    declaration_order, detect_field_method_clash, member_name, member_visibility, plan_members,
    ClashTag, FieldCache, MemberKind, MemberPlanInfo, MemberRef, MethodKind,
};
pub use closure::{
    admitted_member_types, base_types, dependency_closure, direct_dependencies, ClosureEntry, Generation,
};
pub use resolve::{
    is_placeholder, resolve, resolve_with, superclass_chain, superinterface_closure, ResolvedType,
    TypeModelError,
};
