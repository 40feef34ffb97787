//! Timing harness for key generation, signing and verification across
//! parameter sets and hash backends.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hash::{CountingBackend, HashBackend};
use crate::params::ParamSet;
use crate::sphincs::Scheme;

pub const CSV_HEADER: &str = "paramset,backend,operation,iterations,median_ms,mean_ms,stddev_ms,hash_calls";

/// Length of the message signed in every benchmark run.
pub const MESSAGE_LEN: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Keygen,
    Sign,
    Verify,
}

impl Operation {
    pub const ALL: [Operation; 3] = [Operation::Keygen, Operation::Sign, Operation::Verify];

    pub fn as_str(self) -> &'static str {
        match self {
            Operation::Keygen => "keygen",
            Operation::Sign => "sign",
            Operation::Verify => "verify",
        }
    }
}

/// One row of the report. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub paramset: String,
    pub backend: String,
    pub operation: Operation,
    pub iterations: u32,
    pub median_ms: f64,
    pub mean_ms: f64,
    pub stddev_ms: f64,
    /// Digest invocations of one execution.
    pub hash_calls: u64,
}

/// Median, mean and sample standard deviation.
pub fn summarize(samples_ms: &[f64]) -> (f64, f64, f64) {
    let mut s = samples_ms.to_vec();
    s.sort_by(f64::total_cmp);
    let len = s.len();
    let median = if len % 2 == 1 {
        s[len / 2]
    } else {
        (s[len / 2 - 1] + s[len / 2]) / 2.0
    };
    let mean = s.iter().sum::<f64>() / len as f64;
    let var = if len > 1 {
        s.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (len - 1) as f64
    } else {
        0.0
    };
    (median, mean, var.sqrt())
}

/// Inputs shared by every backend for one parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchInputs {
    pub entropy: Vec<u8>,
    pub message: Vec<u8>,
}

/// Key-generation entropy and message used for `p` under `seed`.
pub fn bench_inputs(p: &ParamSet, seed: u64) -> BenchInputs {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entropy = vec![0u8; 3 * p.n];
    let mut message = vec![0u8; MESSAGE_LEN];
    rng.fill_bytes(&mut entropy);
    rng.fill_bytes(&mut message);
    BenchInputs { entropy, message }
}

fn time_ms(mut f: impl FnMut() -> Result<()>) -> Result<f64> {
    let start = Instant::now();
    f()?;
    Ok(start.elapsed().as_secs_f64() * 1e3)
}

fn bench_one(p: &'static ParamSet, backend: &Arc<dyn HashBackend>, iterations: u32, input: &BenchInputs) -> Result<Vec<BenchRecord>> {
    let counting = Arc::new(CountingBackend::new(backend.clone()));
    let counted = Scheme::new(p, counting.clone())?;
    let plain = Scheme::new(p, backend.clone())?;

    // The counted run doubles as the warm-up and produces the inputs for
    // the later operations.
    counting.reset();
    let (sk, pk) = counted.keygen(&input.entropy)?;
    let keygen_calls = counting.calls();
    counting.reset();
    let sig = counted.sign(&sk, &input.message, None)?.to_bytes();
    let sign_calls = counting.calls();
    counting.reset();
    if !counted.verify(&pk, &input.message, &sig)? {
        return Err(Error::Bench(format!("{} / {}: warm-up signature did not verify", p.name, backend.id())));
    }
    let verify_calls = counting.calls();

    let mut records = Vec::with_capacity(3);
    for op in Operation::ALL {
        let mut samples = Vec::with_capacity(iterations as usize);
        for _ in 0..iterations {
            samples.push(match op {
                Operation::Keygen => time_ms(|| plain.keygen(&input.entropy).map(drop))?,
                Operation::Sign => time_ms(|| plain.sign(&sk, &input.message, None).map(drop))?,
                Operation::Verify => time_ms(|| plain.verify(&pk, &input.message, &sig).map(drop))?,
            });
        }
        let (median_ms, mean_ms, stddev_ms) = summarize(&samples);
        records.push(BenchRecord {
            paramset: p.name.to_string(),
            backend: backend.id().to_string(),
            operation: op,
            iterations,
            median_ms,
            mean_ms,
            stddev_ms,
            hash_calls: match op {
                Operation::Keygen => keygen_calls,
                Operation::Sign => sign_calls,
                Operation::Verify => verify_calls,
            },
        });
    }
    Ok(records)
}

/// Times every operation for each parameter set and backend. Inputs are
/// derived from `seed` per parameter set, so all backends see the same
/// entropy and message. Operations run on the calling thread.
pub fn run_bench(paramsets: &[&'static ParamSet], backends: &[Arc<dyn HashBackend>], iterations: u32, seed: u64) -> Result<Vec<BenchRecord>> {
    run_bench_with_progress(paramsets, backends, iterations, seed, |_| {})
}

/// [`run_bench`] reporting each finished record as it arrives.
pub fn run_bench_with_progress(
    paramsets: &[&'static ParamSet],
    backends: &[Arc<dyn HashBackend>],
    iterations: u32,
    seed: u64,
    mut progress: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>> {
    if iterations < 3 {
        return Err(Error::Bench(format!("need at least 3 iterations, got {iterations}")));
    }
    if paramsets.is_empty() || backends.is_empty() {
        return Err(Error::Bench("no parameter sets or backends selected".into()));
    }
    let mut out = Vec::new();
    for &p in paramsets {
        let input = bench_inputs(p, seed);
        for b in backends {
            for r in bench_one(p, b, iterations, &input)? {
                progress(&r);
                out.push(r);
            }
        }
    }
    Ok(out)
}

pub fn to_csv(records: &[BenchRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| Error::Bench(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Bench(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Bench(e.to_string()))
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd
        .headers()
        .map_err(|e| Error::Bench(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Bench(format!("unexpected CSV header: {}", header.join(","))));
    }
    rd.deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Bench(e.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub csv: String,
    pub markdown: String,
}

fn median_of<'a>(records: &'a [BenchRecord], set: &str, op: Operation, backend: &str) -> Option<&'a BenchRecord> {
    records
        .iter()
        .find(|r| r.paramset == set && r.operation == op && r.backend == backend)
}

/// `streebog / sha256` to three decimals.
pub fn format_ratio(streebog_ms: f64, sha256_ms: f64) -> String {
    format!("{:.3}", streebog_ms / sha256_ms)
}

/// CSV of all records plus a Markdown table comparing the two backends per
/// parameter set and operation.
pub fn render_report(records: &[BenchRecord]) -> Result<Report> {
    if records.is_empty() {
        return Err(Error::Bench("no records to report".into()));
    }
    let csv = to_csv(records)?;

    let mut keys: Vec<(&str, Operation)> = Vec::new();
    for r in records {
        if !keys.contains(&(r.paramset.as_str(), r.operation)) {
            keys.push((r.paramset.as_str(), r.operation));
        }
    }
    let mut md = String::new();
    md.push_str("| paramset | operation | streebog256 median (ms) | sha256 median (ms) | streebog/sha256 | hash_calls |\n");
    md.push_str("|---|---|---:|---:|---:|---|\n");
    let cell = |r: Option<&BenchRecord>| r.map_or("n/a".to_string(), |r| format!("{:.3}", r.median_ms));
    for (set, op) in keys {
        let s = median_of(records, set, op, "streebog256");
        let h = median_of(records, set, op, "sha256");
        let ratio = match (s, h) {
            (Some(s), Some(h)) => format_ratio(s.median_ms, h.median_ms),
            _ => "n/a".into(),
        };
        let calls = match (s, h) {
            (Some(s), Some(h)) if s.hash_calls == h.hash_calls => s.hash_calls.to_string(),
            (Some(s), Some(h)) => format!("{} / {}", s.hash_calls, h.hash_calls),
            (Some(r), None) | (None, Some(r)) => r.hash_calls.to_string(),
            (None, None) => records
                .iter()
                .find(|r| r.paramset == set && r.operation == op)
                .map_or(String::new(), |r| r.hash_calls.to_string()),
        };
        let _ = writeln!(md, "| {set} | {} | {} | {} | {ratio} | {calls} |", op.as_str(), cell(s), cell(h));
    }
    Ok(Report { csv, markdown: md })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash;
    use crate::params::{SPHINCS_128F, TOY};

    fn both() -> Vec<Arc<dyn HashBackend>> {
        vec![hash::backend("streebog256").unwrap(), hash::backend("sha256").unwrap()]
    }

    fn record(backend: &str, op: Operation, median: f64) -> BenchRecord {
        BenchRecord {
            paramset: "toy".into(),
            backend: backend.into(),
            operation: op,
            iterations: 3,
            median_ms: median,
            mean_ms: median * 1.1,
            stddev_ms: 0.25,
            hash_calls: 42,
        }
    }

    #[test]
    fn summary_statistics() {
        assert_eq!(summarize(&[3.0, 1.0, 2.0]), (2.0, 2.0, 1.0));
        let (median, mean, sd) = summarize(&[1.0, 2.0, 3.0, 10.0]);
        assert_eq!(median, 2.5);
        assert_eq!(mean, 4.0);
        assert!((sd - 4.0824829).abs() < 1e-6);
    }

    #[test]
    fn toy_records_shape_and_counts() {
        let records = run_bench(&[&TOY], &both(), 5, 7).unwrap();
        assert_eq!(records.len(), 6);
        for r in &records {
            assert_eq!(r.iterations, 5);
            assert!(r.median_ms > 0.0 && r.mean_ms > 0.0 && r.stddev_ms >= 0.0);
        }
        for op in [Operation::Keygen, Operation::Sign] {
            let calls: Vec<u64> = records.iter().filter(|r| r.operation == op).map(|r| r.hash_calls).collect();
            assert_eq!(calls[0], calls[1]);
        }
        let get = |op| records.iter().find(|r| r.operation == op).unwrap().hash_calls;
        assert_eq!(get(Operation::Keygen), 8846);
        assert_eq!(get(Operation::Sign), 18413);
        assert!(get(Operation::Verify) < get(Operation::Sign));
    }

    #[test]
    fn rejects_bad_configuration() {
        assert!(run_bench(&[&TOY], &both(), 2, 0).is_err());
        assert!(run_bench(&[], &both(), 3, 0).is_err());
        assert!(run_bench(&[&TOY], &[], 3, 0).is_err());
    }

    #[test]
    fn sign_counts_match_across_backends_128f() {
        let records = run_bench(&[&SPHINCS_128F], &both(), 3, 1).unwrap();
        let sign: Vec<_> = records.iter().filter(|r| r.operation == Operation::Sign).collect();
        assert_eq!(sign[0].hash_calls, sign[1].hash_calls);
        let verify: Vec<_> = records.iter().filter(|r| r.operation == Operation::Verify).collect();
        assert!(verify[0].hash_calls < sign[0].hash_calls);
    }

    #[test]
    fn single_record_csv() {
        let rep = render_report(&[record("sha256", Operation::Sign, 1.5)]).unwrap();
        let lines: Vec<&str> = rep.csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(rep.markdown.contains("| toy | sign | n/a | 1.500 | n/a | 42 |"));
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(format_ratio(2.0, 3.0), "0.667");
        assert_eq!(format_ratio(1.0, 1.0), "1.000");
        let rep = render_report(&[
            record("streebog256", Operation::Verify, 7.0),
            record("sha256", Operation::Verify, 4.0),
        ])
        .unwrap();
        assert!(rep.markdown.contains("| toy | verify | 7.000 | 4.000 | 1.750 | 42 |"), "{}", rep.markdown);
    }

    #[test]
    fn empty_report_is_error() {
        assert!(matches!(render_report(&[]), Err(Error::Bench(_))));
    }

    #[test]
    fn csv_round_trip() {
        let records = vec![
            record("streebog256", Operation::Keygen, 0.1 + 0.2),
            record("sha256", Operation::Sign, 1e-9),
            record("sha256", Operation::Verify, 123456.789),
        ];
        let text = to_csv(&records).unwrap();
        assert_eq!(parse_csv(&text).unwrap(), records);
        assert!(parse_csv("a,b\n1,2\n").is_err());
    }
}
