//! One PASS/FAIL line per acceptance criterion.
//!
//! The lines go to stdout even when the harness captures test output.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use common::props::*;
use common::*;
use cwj_gen::cachesim::{count, diff_traces, Mode};
use cwj_gen::cli::{execute, parse_args};
use cwj_gen::jvmtypes::{array_alias, jtype_name, parse_field_descriptor, parse_method_descriptor, PrimitiveKind, TypeDescriptor};

struct Outcome {
    name: &'static str,
    result: Result<String, String>,
    elapsed: Duration,
    /// Whether the criterion can be met at all here.
    attainable: bool,
}

fn timed(name: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let mut result = f();
    let elapsed = start.elapsed();
    if let (Ok(_), Some(limit)) = (&result, limit) {
        if elapsed > limit {
            result = Err(format!("took {elapsed:?}, limit {limit:?}"));
        }
    }
    Outcome {
        name,
        result,
        elapsed,
        attainable: true,
    }
}

fn golden_structure() -> Result<String, String> {
    let headers = golden_universe_headers();
    for g in GOLDEN_FILES {
        check_golden(&read_golden(g), &headers).map_err(|e| format!("{g}: {e}"))?;
    }
    Ok(format!("{} transcriptions match", GOLDEN_FILES.len()))
}

fn call_counts() -> Result<String, String> {
    let raw = run_bar(Mode::Raw, "raw", 3);
    let lazy = run_bar(Mode::Lazy, "lazy", 3);
    let eager = run_bar(Mode::Eager, "eager", 3);
    if raw.totals() != [17, 17, 17] {
        return Err(format!("raw totals {:?}", raw.totals()));
    }
    for t in [&lazy, &eager] {
        if !counts_match(t.steady().unwrap(), &expected_steady_calls()) {
            return Err(format!("{} steady state {:?}", t.mode, count(t.steady().unwrap())));
        }
    }
    let reduction = diff_traces(&raw, &lazy).map_err(|e| e.to_string())?.iterations[2].reduction();
    if reduction < 11 {
        return Err(format!("reduction {reduction}"));
    }
    Ok(format!(
        "raw 17/iteration, wrapped steady state 6, reduction {reduction}"
    ))
}

fn descriptor_round_trip_criterion() -> Result<String, String> {
    run_property(10_000, value_type(), |d| descriptor_round_trip(&d))?;
    let universe = fixture_universe();
    let mut checked = 0;
    for h in golden_universe_headers() {
        let Some(model) = universe.iter().find(|m| cwj_gen::jvmtypes::header_name(&m.qualified_name) == h.header_name) else {
            continue;
        };
        for (lookup, name, desc) in emitted_lookups(&h.body) {
            let ok = if lookup.contains("Field") {
                parse_field_descriptor(&desc).is_ok_and(|d| model.fields.iter().any(|f| f.name == name && f.descriptor == d))
            } else {
                parse_method_descriptor(&desc).is_ok_and(|d| {
                    if name == "<init>" {
                        model.constructors.iter().any(|c| c.descriptor == d)
                    } else {
                        model.methods.iter().any(|m| m.name == name && m.descriptor == d)
                    }
                })
            };
            if !ok {
                return Err(format!("{}: {name} {desc} does not re-parse to a member", h.header_name));
            }
            checked += 1;
        }
    }
    Ok(format!("10000 random descriptors, {checked} emitted descriptors"))
}

fn name_encoding() -> Result<String, String> {
    let mut runner = TestRunner::deterministic();
    let mut names = BTreeSet::new();
    while names.len() < 10_000 {
        names.insert(qualified_name().new_tree(&mut runner).map_err(|e| e.to_string())?.current());
    }
    let encoded: BTreeSet<String> = names.iter().map(|n| jtype_name(n)).collect();
    if encoded.len() != names.len() {
        return Err(format!("{} names, {} encodings", names.len(), encoded.len()));
    }
    let int = TypeDescriptor::Primitive(PrimitiveKind::Int);
    let table = [
        (array_alias(&int, 1), "jintArray1"),
        (array_alias(&int, 2), "jintArrayArray"),
        (array_alias(&TypeDescriptor::class("java.lang.Integer"), 1), "jjava_lang_IntegerArray"),
    ];
    for (got, want) in table {
        if got.as_deref() != Some(want) {
            return Err(format!("{got:?} instead of {want}"));
        }
    }
    Ok("10000 names injective, alias table exact".to_owned())
}

fn state_machine() -> Result<String, String> {
    let u = fixture_universe();
    run_property(500, body(), |lines| lazy_idempotent(&u, &lines))?;
    run_property(500, body(), |lines| eager_complete(&u, &lines))?;
    run_property(500, (body(), 2u8..6, 2usize..5), |(lines, d, r)| recompute_once(&u, &lines, d, r))?;
    Ok("3 properties x 500 scripts".to_owned())
}

fn cli_determinism() -> Result<String, String> {
    let roots = "Bar java.lang.String java.lang.Integer java.util.BitSet java.lang.System java.io.PrintStream";
    let fx = fixtures_dir();
    let snapshot = |flags: &str| -> Result<Vec<(String, Vec<u8>)>, String> {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let cmd = format!("-d {} -classpath {} {flags}", dir.path().display(), fx.display());
        let args: Vec<String> = cmd.split_whitespace().map(str::to_owned).collect();
        execute(&parse_args(&args).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
            .map_err(|e| e.to_string())?
            .map(|e| {
                let p = e.unwrap().path();
                (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
            })
            .collect();
        files.sort();
        Ok(files)
    };
    let a = snapshot(&format!("-r {roots}"))?;
    let b = snapshot(&format!("-r {roots}"))?;
    if a != b {
        return Err("two -r runs differ".to_owned());
    }
    for (name, body) in snapshot("-thin -r java.lang.Boolean")? {
        let text = String::from_utf8_lossy(&body);
        if name != "cwj.h" && (text.contains("JNIEnv*,JNIEnv*") || text.contains("class J") || text.contains("booleanValue")) {
            return Err(format!("{name} has wrapper or Jtype text"));
        }
    }
    Ok(format!("{} files byte-identical; thin output clean", a.len()))
}

#[test]
fn acceptance() {
    let second = Some(Duration::from_secs(1));
    let mut outcomes = vec![
        timed("golden declaration structure", second, golden_structure),
        timed("call-count reproduction", second, call_counts),
        timed("descriptor round trip", None, descriptor_round_trip_criterion),
        timed("name-encoding properties", None, name_encoding),
        timed("caching state-machine properties", None, state_machine),
        timed("CLI determinism and -thin", None, cli_determinism),
    ];
    outcomes.push(Outcome {
        name: "CPU-time results",
        result: Err("not reproducible: needs the original JVM, compiler and hardware; \
                     the call-count and state-machine lines substitute"
            .to_owned()),
        elapsed: Duration::ZERO,
        attainable: false,
    });
    // Straight to stdout so the lines survive the test harness's capture.
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(b"\n");
    for o in &outcomes {
        let line = match &o.result {
            Ok(detail) => format!("PASS  {}: {detail} ({:.2?})\n", o.name, o.elapsed),
            Err(why) => format!("FAIL  {}: {why} ({:.2?})\n", o.name, o.elapsed),
        };
        let _ = out.write_all(line.as_bytes());
    }
    drop(out);
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| o.attainable && o.result.is_err())
        .map(|o| o.name)
        .collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
