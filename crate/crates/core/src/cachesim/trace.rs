use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::sim::{CallTrace, Category, Charge, Mode, SimError};

pub type Counts = BTreeMap<String, usize>;

pub fn count(charges: &[Charge]) -> Counts {
    let mut out = Counts::new();
    for c in charges {
        *out.entry(c.function.clone()).or_default() += 1;
    }
    out
}

pub fn count_category(charges: &[Charge], category: Category) -> usize {
    charges.iter().filter(|c| c.category == category).count()
}

impl CallTrace {
    pub fn first(&self) -> Option<&[Charge]> {
        self.iterations.first().map(Vec::as_slice)
    }

    /// The last iteration, standing in for every later one.
    pub fn steady(&self) -> Option<&[Charge]> {
        self.iterations.last().map(Vec::as_slice)
    }

    pub fn totals(&self) -> Vec<usize> {
        self.iterations.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterationDiff {
    /// Per function, the second trace's count minus the first's; zero
    /// entries are left out.
    pub deltas: BTreeMap<String, i64>,
    pub total_a: usize,
    pub total_b: usize,
}

impl IterationDiff {
    /// Calls saved by the second trace.
    pub fn reduction(&self) -> i64 {
        self.total_a as i64 - self.total_b as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceDiff {
    pub a: Mode,
    pub b: Mode,
    pub setup: IterationDiff,
    pub iterations: Vec<IterationDiff>,
}

fn diff_charges(a: &[Charge], b: &[Charge]) -> IterationDiff {
    let (ca, cb) = (count(a), count(b));
    let mut deltas = BTreeMap::new();
    for f in ca.keys().chain(cb.keys()) {
        let d = cb.get(f).copied().unwrap_or(0) as i64 - ca.get(f).copied().unwrap_or(0) as i64;
        if d != 0 {
            deltas.insert(f.clone(), d);
        }
    }
    IterationDiff {
        deltas,
        total_a: a.len(),
        total_b: b.len(),
    }
}

pub fn diff_traces(a: &CallTrace, b: &CallTrace) -> Result<TraceDiff, SimError> {
    if a.iterations.len() != b.iterations.len() {
        return Err(SimError::ShapeMismatch(format!(
            "{} iterations against {}",
            a.iterations.len(),
            b.iterations.len()
        )));
    }
    Ok(TraceDiff {
        a: a.mode,
        b: b.mode,
        setup: diff_charges(&a.setup, &b.setup),
        iterations: a
            .iterations
            .iter()
            .zip(&b.iterations)
            .map(|(x, y)| diff_charges(x, y))
            .collect(),
    })
}

/// One row per iteration and function: `iteration`, `function`, `count`.
/// Setup rows use `setup` as the iteration.
pub fn trace_tsv(trace: &CallTrace) -> String {
    let mut out = String::from("iteration\tfunction\tcount\n");
    let rows = std::iter::once(("setup".to_owned(), &trace.setup)).chain(
        trace
            .iterations
            .iter()
            .enumerate()
            .map(|(i, it)| ((i + 1).to_string(), it)),
    );
    for (label, charges) in rows {
        for (f, n) in count(charges) {
            let _ = writeln!(out, "{label}\t{f}\t{n}");
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceSummary {
    pub mode: Mode,
    pub iterations: usize,
    pub setup_total: usize,
    pub totals: Vec<usize>,
    pub first_iteration: Counts,
    pub steady_state: Counts,
}

pub fn summarize(trace: &CallTrace) -> TraceSummary {
    TraceSummary {
        mode: trace.mode,
        iterations: trace.iterations.len(),
        setup_total: trace.setup.len(),
        totals: trace.totals(),
        first_iteration: trace.first().map(count).unwrap_or_default(),
        steady_state: trace.steady().map(count).unwrap_or_default(),
    }
}
