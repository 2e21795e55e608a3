//! Benchmark rows: one per instance and algorithm.

use std::time::Instant;

use serde::Serialize;

use bracketopt::exact::{brute_force, BruteForceOptions};
use bracketopt::{solve, Algorithm, Instance, Value};

use crate::{AlgorithmChoice, CliError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance_id: String,
    pub n: usize,
    pub kind: &'static str,
    pub algorithm: String,
    pub value: Value,
    pub optimum: Option<Value>,
    pub ratio_num: Option<i64>,
    pub ratio_den: Option<i64>,
    pub wall_ms: Option<f64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `value / optimum` in lowest terms with a positive denominator. Both zero
/// counts as 1/1; a zero optimum otherwise leaves `value/0`.
pub fn ratio(value: Value, optimum: Value) -> (i64, i64) {
    match (value, optimum) {
        (0, 0) => (1, 1),
        (v, 0) => (v, 0),
        (v, o) => {
            let g = gcd(v, o);
            let sign = o.signum();
            (sign * v / g, sign * o / g)
        }
    }
}

/// Rows for one instance, in the order of `algorithms`. The optimum comes
/// from brute force when the instance is within its cap.
pub fn bench_instance(
    id: &str,
    instance: &Instance,
    algorithms: &[AlgorithmChoice],
    brute: BruteForceOptions,
    timing: bool,
) -> Result<Vec<BenchRow>, CliError> {
    let mut optimum = None;
    let mut rows = Vec::with_capacity(algorithms.len());
    for choice in algorithms {
        let start = Instant::now();
        let res = solve(instance, choice.0, brute)
            .map_err(|e| CliError::Usage(format!("{id}, algorithm {choice}: {e}")))?;
        let elapsed = start.elapsed();
        if res.algorithm == Algorithm::Brute {
            optimum = Some(res.value);
        }
        rows.push(BenchRow {
            instance_id: id.to_string(),
            n: instance.n(),
            kind: instance.kind().as_str(),
            algorithm: choice.to_string(),
            value: res.value,
            optimum: None,
            ratio_num: None,
            ratio_den: None,
            wall_ms: timing.then(|| (elapsed.as_secs_f64() * 1e6).round() / 1e3),
        });
    }
    if optimum.is_none() && instance.n() <= brute.cap {
        optimum = Some(brute_force(instance, brute)?.value);
    }
    if let Some(opt) = optimum {
        for row in &mut rows {
            let (num, den) = ratio(row.value, opt);
            row.optimum = Some(opt);
            row.ratio_num = Some(num);
            row.ratio_den = Some(den);
        }
    }
    Ok(rows)
}
