use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use cwj_gen::cachesim::{count_category, diff_traces, parse_script, simulate, CallTrace, Category, Mode};
use cwj_gen::classfile::TypeUniverse;
use cwj_gen::jvmtypes::{parse_field_descriptor, MethodDescriptor, PrimitiveKind, TypeDescriptor};

pub fn identifier() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => "[A-Za-z][A-Za-z0-9_$]{0,8}",
        1 => "[a-zé_$][a-z0-9_éΩ中]{0,5}",
    ]
}

pub fn qualified_name() -> impl Strategy<Value = String> {
    prop::collection::vec(identifier(), 1..4).prop_map(|parts| parts.join("."))
}

pub fn primitive() -> impl Strategy<Value = PrimitiveKind> {
    prop::sample::select(PrimitiveKind::VALUES.to_vec())
}

/// Field types with up to four array dimensions.
pub fn value_type() -> impl Strategy<Value = TypeDescriptor> {
    let element = prop_oneof![
        primitive().prop_map(TypeDescriptor::Primitive),
        qualified_name().prop_map(TypeDescriptor::Class),
    ];
    (element, 0u8..=4).prop_map(|(e, d)| if d == 0 { e } else { TypeDescriptor::array_of(e, d) })
}

pub fn method_descriptor() -> impl Strategy<Value = MethodDescriptor> {
    let ret = prop_oneof![
        1 => Just(TypeDescriptor::Primitive(PrimitiveKind::Void)),
        4 => value_type(),
    ];
    (prop::collection::vec(value_type(), 0..5), ret).prop_map(|(p, r)| MethodDescriptor::new(p, r))
}

pub fn descriptor_round_trip(d: &TypeDescriptor) -> Result<(), String> {
    let text = d.to_string();
    match parse_field_descriptor(&text) {
        Ok(back) if back == *d => Ok(()),
        other => Err(format!("{text}: {other:?}")),
    }
}

/// Lines valid in every mode once the `INIT` classes are initialized.
pub const POOL: &[&str] = &[
    "new java.util.BitSet ()V",
    "call java.lang.Integer valueOf (Ljava/lang/String;)Ljava/lang/Integer;",
    "get java.lang.Integer value",
    "call java.util.BitSet set (I)V",
    "get java.lang.System out",
    "call java.io.PrintStream println (Ljava/lang/Object;)V",
    "call java.lang.Boolean booleanValue ()Z",
    "get java.lang.Boolean TRUE",
    "set java.lang.Boolean value",
    "call java.lang.Object hashCode ()I",
    "call java.lang.String length ()I",
    "call java.io.PrintStream hashCode ()I",
    "new java.lang.String ([C)V",
    "array-get java.lang.String 1",
    "array-set java.lang.Boolean 2",
    "array-length int 1",
    "array-get int 1",
    "array-get int 2",
    "array-new int 1",
    "array-new int 3",
    "array-new java.lang.Boolean 1",
    "array-new java.lang.Boolean 3",
    "array-new java.lang.Object 2",
    "cast java.lang.Boolean",
    "cast java.lang.String",
    "jtype v java.lang.Integer\njget v value",
    "jni GetObjectClass",
];

pub const INIT: &str = "init java.util.BitSet\ninit java.lang.Integer\ninit java.lang.System\ninit java.io.PrintStream\ninit java.lang.Boolean\ninit java.lang.String\n";

pub fn body() -> impl Strategy<Value = Vec<&'static str>> {
    prop::collection::vec(prop::sample::select(POOL), 1..12)
}

pub fn run(u: &TypeUniverse, text: &str, mode: Mode, iterations: usize) -> CallTrace {
    simulate(u, &parse_script(text).expect("script parses"), mode, iterations).expect("simulation succeeds")
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Later lazy iterations charge no lookup and repeat exactly.
pub fn lazy_idempotent(u: &TypeUniverse, lines: &[&str]) -> Result<(), String> {
    let t = run(u, &lines.join("\n"), Mode::Lazy, 3);
    for it in &t.iterations[1..] {
        ensure(
            count_category(it, Category::CacheLookup) == 0 && count_category(it, Category::ArrayRecompute) == 0,
            || format!("{lines:?}: lookup charged after the first iteration"),
        )?;
    }
    ensure(t.iterations[1] == t.iterations[2], || format!("{lines:?}: iterations differ"))
}

/// After native-init no class, ID or static value lookup is charged, and
/// the calls made equal a warmed-up lazy run's.
pub fn eager_complete(u: &TypeUniverse, lines: &[&str]) -> Result<(), String> {
    let t = run(u, &format!("{INIT}iteration\n{}", lines.join("\n")), Mode::Eager, 2);
    for it in &t.iterations {
        ensure(
            count_category(it, Category::CacheLookup) == 0 && count_category(it, Category::Init) == 0,
            || format!("{lines:?}: cache charge after init"),
        )?;
    }
    let lazy = run(u, &lines.join("\n"), Mode::Lazy, 2);
    ensure(t.steady() == lazy.steady(), || format!("{lines:?}: steady states differ"))
}

/// Re-initializing a class drops its array class references; the next
/// array use recomputes each lower dimension exactly once.
pub fn recompute_once(u: &TypeUniverse, lines: &[&str], dimension: u8, repeats: usize) -> Result<(), String> {
    let mut text = lines.join("\n");
    text.push_str("\ninit java.lang.Boolean\n");
    for _ in 0..repeats {
        text.push_str(&format!("array-new java.lang.Boolean {dimension}\n"));
    }
    let t = run(u, &text, Mode::Lazy, 2);
    for it in &t.iterations {
        let start = it
            .iter()
            .rposition(|c| c.category == Category::Init)
            .map_or(0, |p| p + 1);
        let after = &it[start..];
        let recomputed = after
            .iter()
            .filter(|c| c.category == Category::ArrayRecompute && c.function == "NewObjectArray")
            .count();
        ensure(
            recomputed == dimension as usize - 1
                && count_category(after, Category::ArrayRecompute) == 3 * (dimension as usize - 1),
            || format!("{lines:?} dim {dimension}: {recomputed} recomputations"),
        )?;
    }
    Ok(())
}

pub fn boolean_not_final(u: &TypeUniverse) -> TypeUniverse {
    let mut u = u.clone();
    let mut b = u.get("java.lang.Boolean").expect("fixture").clone();
    b.is_final = false;
    for m in &mut b.methods {
        m.is_final = false;
    }
    u.insert(b);
    u
}

/// Making Boolean's methods polymorphic renames the call family only.
pub fn polymorphism_invariant(u: &TypeUniverse, lines: &[&str], mode: Mode) -> Result<(), String> {
    let text = lines.join("\n");
    let a = run(u, &text, mode, 2);
    let b = run(&boolean_not_final(u), &text, mode, 2);
    let norm = |t: &CallTrace| -> Vec<Vec<String>> {
        t.iterations
            .iter()
            .map(|it| it.iter().map(|c| c.function.replace("CallNonvirtual", "Call")).collect())
            .collect()
    };
    ensure(a.totals() == b.totals() && norm(&a) == norm(&b), || format!("{lines:?}: counts differ"))
}

/// A checked cast costs one IsInstanceOf once its class is cached.
pub fn cast_adds_one(u: &TypeUniverse, lines: &[&str], at: usize) -> Result<(), String> {
    let mut with_cast = lines.to_vec();
    with_cast.insert(at.min(lines.len()), "cast java.lang.Integer");
    let a = run(u, &lines.join("\n"), Mode::Lazy, 2);
    let b = run(u, &with_cast.join("\n"), Mode::Lazy, 2);
    let d = diff_traces(&a, &b).map_err(|e| e.to_string())?;
    let steady = d.iterations.last().expect("two iterations");
    ensure(
        steady.deltas.len() == 1 && steady.deltas.get("IsInstanceOf") == Some(&1),
        || format!("{lines:?}: {:?}", steady.deltas),
    )
}

/// Runs `check` over `cases` generated values, returning the first failure.
pub fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), String>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, |v| check(v).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())
}
